use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalars::{FieldContext, QuotientContext, Scalar};

use super::gcd::grevlex_cmp;
use super::render::{join_terms, monomial_string, poly_coeff_term, scalar_term, Term};
use super::{Monomial, Polynomial, VariableRing};

/// Which variable block an operator's ∂-monomials may involve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiffBlock {
    /// All ring variables (zero-dimensional setting).
    All,
    /// Only the dependent block (positive-dimensional setting).
    Dependent,
}

/// A differential operator Σ c_α ∂^α in canonical form: coefficients on
/// the left, stored as polynomials (residue-field coefficients keep their
/// reduced representative). `ctx` records the coefficient domain.
#[derive(Clone, Debug)]
pub struct WeylOperator {
    ring: Arc<VariableRing>,
    ctx: FieldContext,
    block: DiffBlock,
    terms: BTreeMap<Monomial, Polynomial>,
}

impl PartialEq for WeylOperator {
    fn eq(&self, other: &Self) -> bool {
        self.ring.compatible(&other.ring) && self.terms == other.terms
    }
}

impl WeylOperator {
    pub fn zero(ring: Arc<VariableRing>, ctx: FieldContext, block: DiffBlock) -> Self {
        WeylOperator {
            ring,
            ctx,
            block,
            terms: BTreeMap::new(),
        }
    }

    /// The identity operator `1`.
    pub fn one(ring: Arc<VariableRing>, ctx: FieldContext, block: DiffBlock) -> Self {
        let coeff_ctx = coefficient_ctx(&ctx);
        let mut op = Self::zero(ring.clone(), ctx, block);
        op.add_term(
            Monomial::one(ring.num_vars()),
            Polynomial::one(ring, coeff_ctx),
        );
        op
    }

    pub fn from_terms<I>(
        ring: Arc<VariableRing>,
        ctx: FieldContext,
        block: DiffBlock,
        iter: I,
    ) -> Self
    where
        I: IntoIterator<Item = (Monomial, Polynomial)>,
    {
        let mut op = Self::zero(ring, ctx, block);
        for (m, c) in iter {
            op.add_term(m, c);
        }
        op
    }

    pub fn ring(&self) -> &Arc<VariableRing> {
        &self.ring
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn block(&self) -> DiffBlock {
        self.block
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.is_one() && c.is_one())
                .unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Polynomial)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&Polynomial> {
        self.terms.get(m)
    }

    /// Maximal total degree of the stored ∂-monomials.
    pub fn d_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, dmon: Monomial, coeff: Polynomial) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.remove(&dmon) {
            None => {
                self.terms.insert(dmon, coeff);
            }
            Some(existing) => {
                let sum = existing.add(&coeff);
                if !sum.is_zero() {
                    self.terms.insert(dmon, sum);
                }
            }
        }
    }

    pub fn add(&self, other: &WeylOperator) -> WeylOperator {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> WeylOperator {
        let terms = self
            .terms
            .iter()
            .map(|(m, p)| (m.clone(), p.mul_scalar(c)))
            .filter(|(_, p)| !p.is_zero())
            .collect();
        WeylOperator {
            ring: self.ring.clone(),
            ctx: self.ctx.clone(),
            block: self.block,
            terms,
        }
    }

    pub fn map_coefficients<F>(&self, ctx: FieldContext, mut f: F) -> WeylOperator
    where
        F: FnMut(&Polynomial) -> Polynomial,
    {
        let terms = self
            .terms
            .iter()
            .map(|(m, p)| (m.clone(), f(p)))
            .filter(|(_, p)| !p.is_zero())
            .collect();
        WeylOperator {
            ring: self.ring.clone(),
            ctx,
            block: self.block,
            terms,
        }
    }

    /// The natural action `D • f`: each ∂^α differentiates, then the
    /// coefficient multiplies. Rational and rational-function coefficient
    /// domains mix by promoting to rational functions.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        self.ring.check_compatible(f.ring())?;
        let coeff_ctx = coefficient_ctx(&self.ctx);
        let (target_ctx, promote_f, promote_c) = unify_ctx(&coeff_ctx, f.ctx())?;
        let f = if promote_f { promote_to_ratfn(f) } else { f.clone() };
        let mut out = Polynomial::zero(f.ring().clone(), target_ctx);
        for (alpha, c) in &self.terms {
            let df = f.derivative_monomial(alpha);
            if df.is_zero() {
                continue;
            }
            let c = if promote_c { promote_to_ratfn(c) } else { c.clone() };
            out = out.add(&c.mul(&df));
        }
        Ok(out)
    }

    /// The pairing ⟨D, f⟩: the image of `D • f` in the residue field.
    pub fn pairing(&self, f: &Polynomial, ctx: &FieldContext) -> Result<Scalar> {
        let q = match ctx {
            FieldContext::Quotient(q) => q,
            _ => {
                return Err(Error::ContextMismatch(
                    "pairing targets a residue-field context".into(),
                ))
            }
        };
        let applied = self.apply(f)?;
        if !applied.ctx().compatible(q.ambient()) {
            return Err(Error::ContextMismatch(format!(
                "pairing value lives over {}, residue field is over {}",
                applied.ctx().describe(),
                q.ambient().describe()
            )));
        }
        Ok(Scalar::Quotient(QuotientContext::reduce(q, &applied)))
    }

    /// Noncommutative Weyl product normalized to coefficients-left form
    /// via ∂^α·c = Σ_{γ≤α} binom(α,γ)(∂^γ•c)∂^{α−γ}.
    pub fn weyl_mul(&self, other: &WeylOperator) -> Result<WeylOperator> {
        self.ring.check_compatible(other.ring())?;
        let coeff_ctx = coefficient_ctx(&self.ctx);
        let other_ctx = coefficient_ctx(&other.ctx);
        let (_, promote_other, promote_self) = unify_ctx(&coeff_ctx, &other_ctx)?;
        let ctx = if promote_other || promote_self {
            ratfn_ctx(&self.ring)
        } else {
            self.ctx.clone()
        };
        let block = if self.block == other.block {
            self.block
        } else {
            DiffBlock::All
        };
        let mut out = WeylOperator::zero(self.ring.clone(), ctx, block);
        for (alpha, c) in &self.terms {
            let c = if promote_self { promote_to_ratfn(c) } else { c.clone() };
            for (beta, d) in &other.terms {
                let d = if promote_other { promote_to_ratfn(d) } else { d.clone() };
                for gamma in sub_exponents(alpha) {
                    let dgamma_d = d.derivative_monomial(&gamma);
                    if dgamma_d.is_zero() {
                        continue;
                    }
                    let binom = multi_binomial(alpha, &gamma);
                    let coeff = c.mul(&dgamma_d).mul_u32(binom);
                    let rest = gamma.quotient_into(alpha).unwrap();
                    out.add_term(rest.mul(beta), coeff);
                }
            }
        }
        Ok(out)
    }

    /// Evaluate every coefficient at a point, dropping terms with modulus
    /// below `tol`.
    pub fn specialize(&self, coords: &[Complex64], tol: f64) -> Result<SpecializedOperator> {
        if coords.len() != self.ring.num_vars() {
            return Err(Error::ContextMismatch(format!(
                "point has {} coordinates, ring has {} variables",
                coords.len(),
                self.ring.num_vars()
            )));
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let v = c.eval_complex(coords, tol)?;
            if v.norm() >= tol {
                terms.insert(m.clone(), v);
            }
        }
        Ok(SpecializedOperator {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// Terms in canonical print order (grevlex descending).
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Polynomial)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|(a, _), (b, _)| grevlex_cmp(b, a));
        t
    }
}

/// Constant-coefficient operator: a Noetherian operator specialized at a
/// witness point.
#[derive(Clone, Debug)]
pub struct SpecializedOperator {
    ring: Arc<VariableRing>,
    terms: BTreeMap<Monomial, Complex64>,
}

impl SpecializedOperator {
    pub fn new(ring: Arc<VariableRing>) -> Self {
        SpecializedOperator {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn ring(&self) -> &Arc<VariableRing> {
        &self.ring
    }

    pub fn insert(&mut self, m: Monomial, v: Complex64) {
        if v != Complex64::new(0.0, 0.0) {
            self.terms.insert(m, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Complex64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<Complex64> {
        self.terms.get(m).copied()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn d_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// (D • f)(p) for a polynomial with exact coefficients.
    pub fn apply_at(&self, f: &Polynomial, coords: &[Complex64], tol: f64) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let df = f.derivative_monomial(m);
            acc += c * df.eval_complex(coords, tol)?;
        }
        Ok(acc)
    }
}

impl PartialEq for SpecializedOperator {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

pub(crate) fn coefficient_ctx(ctx: &FieldContext) -> FieldContext {
    match ctx {
        FieldContext::Quotient(q) => q.ambient().clone(),
        other => other.clone(),
    }
}

fn ratfn_ctx(ring: &Arc<VariableRing>) -> FieldContext {
    FieldContext::RationalFunctions(ring.clone())
}

/// Decide the target context for mixing two exact coefficient domains.
/// Returns (target, promote_right, promote_left).
fn unify_ctx(left: &FieldContext, right: &FieldContext) -> Result<(FieldContext, bool, bool)> {
    if left.compatible(right) {
        return Ok((left.clone(), false, false));
    }
    match (left, right) {
        (FieldContext::RationalFunctions(_), FieldContext::Rationals) => {
            Ok((left.clone(), true, false))
        }
        (FieldContext::Rationals, FieldContext::RationalFunctions(_)) => {
            Ok((right.clone(), false, true))
        }
        _ => Err(Error::ContextMismatch(format!(
            "cannot mix {} and {}",
            left.describe(),
            right.describe()
        ))),
    }
}

/// Promote rational coefficients to rational-function constants.
pub fn promote_to_ratfn(p: &Polynomial) -> Polynomial {
    match p.ctx() {
        FieldContext::RationalFunctions(_) => p.clone(),
        FieldContext::Rationals => {
            let ring = p.ring().clone();
            let ctx = FieldContext::RationalFunctions(ring.clone());
            p.map_scalars(ctx, |c| match c {
                Scalar::Rational(r) => Scalar::RatFn(
                    crate::scalars::RationalFunction::from_rational(ring.clone(), r.clone()),
                ),
                other => other.clone(),
            })
        }
        _ => panic!("promotion applies to exact coefficients"),
    }
}

/// All γ with γ ≤ α componentwise.
fn sub_exponents(alpha: &Monomial) -> Vec<Monomial> {
    let mut out = vec![Vec::new()];
    for &e in alpha.exponents() {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for prefix in &out {
            for g in 0..=e {
                let mut v = prefix.clone();
                v.push(g);
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter().map(Monomial::from_exponents).collect()
}

fn multi_binomial(alpha: &Monomial, gamma: &Monomial) -> u32 {
    alpha
        .exponents()
        .iter()
        .zip(gamma.exponents())
        .map(|(&a, &g)| binomial(a as u64, g as u64))
        .product::<u64>() as u32
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

impl std::fmt::Display for WeylOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let terms = self
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| poly_coeff_term(c, &monomial_string(m, &self.ring, "d")))
            .collect();
        write!(f, "{}", join_terms(terms))
    }
}

impl std::fmt::Display for SpecializedOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut sorted: Vec<_> = self.terms.iter().collect();
        sorted.sort_by(|(a, _), (b, _)| grevlex_cmp(b, a));
        let terms: Vec<Term> = sorted
            .into_iter()
            .map(|(m, c)| {
                scalar_term(
                    &Scalar::Complex(*c),
                    &monomial_string(m, &self.ring, "d"),
                )
            })
            .collect();
        write!(f, "{}", join_terms(terms))
    }
}
