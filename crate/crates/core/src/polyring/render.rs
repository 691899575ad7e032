//! Canonical text rendering. Polynomials and operators print their terms
//! in graded-reverse-lexicographic descending order; the output parses
//! back to a structurally identical object.

use num::Signed;

use crate::scalars::Scalar;

use super::gcd::grevlex_cmp;
use super::{Monomial, Polynomial, VariableRing};

/// `x1^2*x2` -- empty string for the constant monomial.
pub fn monomial_string(m: &Monomial, ring: &VariableRing, prefix: &str) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if e == 1 {
            parts.push(format!("{prefix}{}", ring.name(i)));
        } else {
            parts.push(format!("{prefix}{}^{e}", ring.name(i)));
        }
    }
    parts.join("*")
}

/// One rendered term, split into its sign and unsigned body.
pub(crate) struct Term {
    pub negative: bool,
    pub body: String,
}

fn rational_term(r: &num::BigRational, monomial: &str) -> Term {
    let negative = r.is_negative();
    let a = r.abs();
    let coeff = if a.denom() == &num::BigInt::from(1) {
        format!("{}", a.numer())
    } else {
        format!("{}/{}", a.numer(), a.denom())
    };
    let body = if monomial.is_empty() {
        coeff
    } else if a == num::BigRational::from(num::BigInt::from(1)) {
        monomial.to_string()
    } else {
        format!("{coeff}*{monomial}")
    };
    Term { negative, body }
}

/// True when `p` renders as a bare variable power (safe as a denominator
/// without parentheses).
fn is_plain_power(p: &Polynomial) -> bool {
    if p.num_terms() != 1 {
        return false;
    }
    let (m, c) = p.terms().next().unwrap();
    c.is_one() && m.support().len() == 1
}

fn wrap_unless_plain(p: &Polynomial) -> String {
    let s = polynomial_string(p);
    if is_plain_power(p) {
        s
    } else {
        format!("({s})")
    }
}

/// Render `scalar * monomial` (monomial may be empty).
pub(crate) fn scalar_term(c: &Scalar, monomial: &str) -> Term {
    match c {
        Scalar::Rational(r) => rational_term(r, monomial),
        Scalar::RatFn(f) => {
            if f.is_polynomial() {
                return poly_coeff_term(f.num(), monomial);
            }
            // pull the sign of the leading numerator coefficient out front
            let negative = super::gcd::leading_term_grevlex(f.num())
                .map(|(_, c)| matches!(&c, Scalar::Rational(r) if r.is_negative()))
                .unwrap_or(false);
            let num = if negative { f.num().neg() } else { f.num().clone() };
            let den = f.den();
            let num_str = if num.num_terms() > 1 {
                format!("({})", polynomial_string(&num))
            } else {
                polynomial_string(&num)
            };
            let body_frac = format!("({}/{})", num_str, wrap_unless_plain(den));
            let body = if monomial.is_empty() {
                body_frac
            } else {
                format!("{body_frac}*{monomial}")
            };
            Term { negative, body }
        }
        Scalar::Quotient(q) => poly_coeff_term(q.representative(), monomial),
        Scalar::Complex(z) => {
            let (negative, s) = complex_string(z);
            let body = if monomial.is_empty() {
                s
            } else if s == "1" {
                monomial.to_string()
            } else {
                format!("{s}*{monomial}")
            };
            Term { negative, body }
        }
    }
}

/// Render a polynomial-valued coefficient in front of a monomial, merging
/// single terms into the product and parenthesizing sums.
pub(crate) fn poly_coeff_term(p: &Polynomial, monomial: &str) -> Term {
    if p.is_zero() {
        return Term {
            negative: false,
            body: "0".into(),
        };
    }
    if p.num_terms() == 1 {
        let (m, c) = p.terms().next().unwrap();
        let ms = monomial_string(m, p.ring(), "");
        let combined = match (ms.is_empty(), monomial.is_empty()) {
            (true, _) => monomial.to_string(),
            (false, true) => ms,
            (false, false) => format!("{ms}*{monomial}"),
        };
        return scalar_term(c, &combined);
    }
    let body = if monomial.is_empty() {
        format!("({})", polynomial_string(p))
    } else {
        format!("({})*{monomial}", polynomial_string(p))
    };
    Term {
        negative: false,
        body,
    }
}

fn complex_string(z: &num_complex::Complex64) -> (bool, String) {
    if z.im == 0.0 {
        (z.re < 0.0, format!("{}", z.re.abs()))
    } else if z.re == 0.0 {
        (z.im < 0.0, format!("{}i", z.im.abs()))
    } else {
        // a+bi as a unit; sign stays inside the parentheses
        let op = if z.im < 0.0 { "-" } else { "+" };
        (false, format!("({}{op}{}i)", z.re, z.im.abs()))
    }
}

pub(crate) fn join_terms(terms: Vec<Term>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        if i == 0 {
            if t.negative {
                out.push('-');
            }
        } else if t.negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&t.body);
    }
    out
}

pub fn polynomial_string(p: &Polynomial) -> String {
    let mut terms: Vec<(&Monomial, &Scalar)> = p.terms().collect();
    terms.sort_by(|(a, _), (b, _)| grevlex_cmp(b, a));
    join_terms(
        terms
            .into_iter()
            .map(|(m, c)| scalar_term(c, &monomial_string(m, p.ring(), "")))
            .collect(),
    )
}

impl std::fmt::Display for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", polynomial_string(self))
    }
}
