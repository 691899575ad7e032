//! Expression grammar for polynomials and operators: integer and rational
//! constants, variable identifiers, `+ - * / ^` and parentheses; operator
//! expressions additionally accept `d<var>` symbols for ∂-variables.
//! Implicit multiplication is not part of the grammar.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::BigInt;

use crate::error::{Error, Result};
use crate::polyring::{DiffBlock, Monomial, Polynomial, VariableRing, WeylOperator};
use crate::scalars::{FieldContext, Rat, RationalFunction, Scalar};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut column = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        match c {
            '\n' => {
                chars.next();
                line += 1;
                column = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                column += 1;
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                        column += 1;
                    } else {
                        break;
                    }
                }
                let v = digits.parse::<BigInt>().map_err(|_| Error::Parse {
                    line: l,
                    column: col,
                    message: format!("invalid integer literal `{digits}`"),
                })?;
                out.push(Spanned {
                    tok: Tok::Int(v),
                    line: l,
                    column: col,
                });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        name.push(d);
                        chars.next();
                        column += 1;
                    } else {
                        break;
                    }
                }
                out.push(Spanned {
                    tok: Tok::Ident(name),
                    line: l,
                    column: col,
                });
            }
            _ => {
                let tok = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    other => {
                        return Err(Error::Parse {
                            line: l,
                            column: col,
                            message: format!("unexpected character `{other}`"),
                        })
                    }
                };
                chars.next();
                column += 1;
                out.push(Spanned {
                    tok,
                    line: l,
                    column: col,
                });
            }
        }
    }
    Ok(out)
}

/// A parsed value: commuting ∂-monomials with rational-function
/// coefficients. Plain polynomials are the ∂-free special case.
#[derive(Clone, Debug)]
struct OpValue {
    terms: BTreeMap<Monomial, RationalFunction>,
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    ring: &'a Arc<VariableRing>,
    allow_partials: bool,
}

impl<'a> Parser<'a> {
    fn error_here(&self, message: impl Into<String>) -> Error {
        match self.toks.get(self.pos.min(self.toks.len().saturating_sub(1))) {
            Some(t) => Error::Parse {
                line: t.line,
                column: t.column,
                message: message.into(),
            },
            None => Error::Parse {
                line: 1,
                column: 1,
                message: message.into(),
            },
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        match self.next() {
            Some(t) if t == tok => Ok(()),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.error_here(format!("expected {tok:?}")))
            }
        }
    }

    fn zero(&self) -> OpValue {
        OpValue {
            terms: BTreeMap::new(),
        }
    }

    fn constant(&self, r: Rat) -> OpValue {
        let mut terms = BTreeMap::new();
        let rf = RationalFunction::from_rational(self.ring.clone(), r.clone());
        if !rf.is_zero() {
            terms.insert(Monomial::one(self.ring.num_vars()), rf);
        }
        OpValue { terms }
    }

    fn add(&self, a: &OpValue, b: &OpValue) -> OpValue {
        let mut terms = a.terms.clone();
        for (m, c) in &b.terms {
            let entry = match terms.remove(m) {
                Some(existing) => existing.add(c),
                None => c.clone(),
            };
            if !entry.is_zero() {
                terms.insert(m.clone(), entry);
            }
        }
        OpValue { terms }
    }

    fn neg(&self, a: &OpValue) -> OpValue {
        OpValue {
            terms: a.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    fn mul(&self, a: &OpValue, b: &OpValue) -> OpValue {
        let mut out = self.zero();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                let entry = match out.terms.remove(&m) {
                    Some(existing) => existing.add(&c),
                    None => c,
                };
                if !entry.is_zero() {
                    out.terms.insert(m, entry);
                }
            }
        }
        out
    }

    fn div(&self, a: &OpValue, b: &OpValue) -> Result<OpValue> {
        if b.terms.is_empty() {
            return Err(self.error_here("division by zero"));
        }
        if b.terms.len() != 1 || !b.terms.keys().next().unwrap().is_one() {
            return Err(self.error_here("cannot divide by an expression involving ∂-symbols"));
        }
        let d = b.terms.values().next().unwrap();
        let inv = d.inv().map_err(|_| self.error_here("division by zero"))?;
        Ok(OpValue {
            terms: a
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.mul(&inv)))
                .collect(),
        })
    }

    fn pow(&self, a: &OpValue, e: u32) -> OpValue {
        let mut acc = self.constant(Rat::from(BigInt::from(1)));
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    fn atom_ident(&mut self, name: String) -> Result<OpValue> {
        let n = self.ring.num_vars();
        if let Some(idx) = self.ring.index_of(&name) {
            let mut terms = BTreeMap::new();
            let var = Polynomial::variable(self.ring.clone(), FieldContext::Rationals, idx);
            terms.insert(Monomial::one(n), RationalFunction::from_poly(var));
            return Ok(OpValue { terms });
        }
        if self.allow_partials {
            if let Some(rest) = name.strip_prefix('d') {
                if let Some(idx) = self.ring.index_of(rest) {
                    let mut terms = BTreeMap::new();
                    terms.insert(
                        Monomial::var(n, idx),
                        RationalFunction::from_rational(
                            self.ring.clone(),
                            Rat::from(BigInt::from(1)),
                        ),
                    );
                    return Ok(OpValue { terms });
                }
            }
        }
        Err(Error::UnknownVariable(name))
    }

    fn parse_expr(&mut self) -> Result<OpValue> {
        let mut acc = self.parse_term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    let rhs = self.parse_term()?;
                    acc = self.add(&acc, &rhs);
                }
                Some(Tok::Minus) => {
                    self.next();
                    let rhs = self.parse_term()?;
                    let neg = self.neg(&rhs);
                    acc = self.add(&acc, &neg);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<OpValue> {
        let mut acc = self.parse_unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    let rhs = self.parse_unary()?;
                    acc = self.mul(&acc, &rhs);
                }
                Some(Tok::Slash) => {
                    self.next();
                    let rhs = self.parse_unary()?;
                    acc = self.div(&acc, &rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_unary(&mut self) -> Result<OpValue> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.next();
            let v = self.parse_unary()?;
            return Ok(self.neg(&v));
        }
        self.parse_power()
    }

    fn parse_power(&mut self) -> Result<OpValue> {
        let base = self.parse_atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.next();
            match self.next() {
                Some(Tok::Int(e)) => {
                    let e = u32::try_from(e).map_err(|_| {
                        self.error_here("exponent must be a non-negative integer")
                    })?;
                    return Ok(self.pow(&base, e));
                }
                _ => {
                    self.pos = self.pos.saturating_sub(1);
                    return Err(self.error_here("exponent must be a non-negative integer"));
                }
            }
        }
        Ok(base)
    }

    fn parse_atom(&mut self) -> Result<OpValue> {
        match self.next() {
            Some(Tok::Int(v)) => Ok(self.constant(Rat::from(v))),
            Some(Tok::Ident(name)) => self.atom_ident(name),
            Some(Tok::LParen) => {
                let inner = self.parse_expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.error_here("expected a number, variable or parenthesis"))
            }
        }
    }
}

fn parse_value(text: &str, ring: &Arc<VariableRing>, allow_partials: bool) -> Result<OpValue> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "empty expression".into(),
        });
    }
    let mut parser = Parser {
        toks,
        pos: 0,
        ring,
        allow_partials,
    };
    let v = parser.parse_expr()?;
    if parser.pos != parser.toks.len() {
        return Err(parser.error_here("trailing input after expression"));
    }
    Ok(v)
}

/// Parse a polynomial over the rationals. Division is only allowed when it
/// cancels to a constant denominator.
pub fn parse_polynomial(text: &str, ring: &Arc<VariableRing>) -> Result<Polynomial> {
    let v = parse_value(text, ring, false)?;
    let mut out = Polynomial::zero(ring.clone(), FieldContext::Rationals);
    for (m, c) in &v.terms {
        debug_assert!(m.is_one(), "no ∂-symbols in polynomial context");
        if !c.is_polynomial() {
            return Err(Error::InvalidInput(format!(
                "`{text}` is not a polynomial: denominator {}",
                c.den()
            )));
        }
        out = out.add(c.num());
    }
    Ok(out)
}

/// Parse a differential operator in canonical commuting form (coefficients
/// left of the ∂-monomials).
pub fn parse_operator(text: &str, ring: &Arc<VariableRing>) -> Result<WeylOperator> {
    let v = parse_value(text, ring, true)?;
    let all_polynomial = v.terms.values().all(RationalFunction::is_polynomial);
    if all_polynomial {
        let mut op = WeylOperator::zero(ring.clone(), FieldContext::Rationals, DiffBlock::All);
        for (m, c) in &v.terms {
            op.add_term(m.clone(), c.num().clone());
        }
        return Ok(op);
    }
    let ctx = FieldContext::RationalFunctions(ring.clone());
    let mut op = WeylOperator::zero(ring.clone(), ctx.clone(), DiffBlock::All);
    for (m, c) in &v.terms {
        op.add_term(m.clone(), coefficient_poly(ring, c));
    }
    Ok(op)
}

/// Split a rational function into a coefficient polynomial: dependent
/// monomials become keys, the independent part joins the scalar.
fn coefficient_poly(ring: &Arc<VariableRing>, rf: &RationalFunction) -> Polynomial {
    let n = ring.num_vars();
    let ctx = FieldContext::RationalFunctions(ring.clone());
    let mut out = Polynomial::zero(ring.clone(), ctx);
    for (m, c) in rf.num().terms() {
        let mut t_exps = vec![0u16; n];
        let mut x_exps = vec![0u16; n];
        for (i, &e) in m.exponents().iter().enumerate() {
            if ring.is_independent(i) {
                t_exps[i] = e;
            } else {
                x_exps[i] = e;
            }
        }
        let t_num = Polynomial::monomial_term(
            ring.clone(),
            FieldContext::Rationals,
            Monomial::from_exponents(t_exps),
            c.clone(),
        );
        let scalar = RationalFunction::new(t_num, rf.den().clone())
            .expect("denominator is nonzero");
        out.add_term(Monomial::from_exponents(x_exps), Scalar::RatFn(scalar));
    }
    out
}
