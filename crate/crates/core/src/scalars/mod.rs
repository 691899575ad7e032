//! The tower of scalar fields the rest of the crate is generic over:
//! exact rationals, rational functions in the independent variables,
//! residue fields of maximal ideals, and tolerance-aware complex floats.

mod quotient;
mod ratfn;

pub use quotient::{QuotientContext, QuotientElement};
pub use ratfn::RationalFunction;

use std::sync::Arc;

use num::{BigInt, BigRational, One, ToPrimitive, Zero};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::polyring::VariableRing;

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

/// A scalar value in one of the supported field kinds.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Rational(Rat),
    RatFn(RationalFunction),
    Quotient(QuotientElement),
    Complex(Complex64),
}

impl Scalar {
    pub fn from_i64(ctx: &FieldContext, v: i64) -> Scalar {
        ctx.from_rational(rat_int(v))
    }

    /// Structural zero test; tolerance-aware zero testing lives on
    /// [`FieldContext::is_zero`].
    pub fn is_structural_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::RatFn(f) => f.is_zero(),
            Scalar::Quotient(q) => q.is_zero(),
            Scalar::Complex(c) => c.re == 0.0 && c.im == 0.0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::RatFn(f) => f.is_one(),
            Scalar::Quotient(q) => q.is_one(),
            Scalar::Complex(c) => *c == Complex64::new(1.0, 0.0),
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Scalar::Rational(_) => "rational",
            Scalar::RatFn(_) => "rational function",
            Scalar::Quotient(_) => "residue-field element",
            Scalar::Complex(_) => "complex",
        }
    }

    fn mismatch(&self, other: &Scalar) -> ! {
        panic!(
            "scalar kind mismatch: {} vs {}",
            self.kind(),
            other.kind()
        )
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::RatFn(a), Scalar::RatFn(b)) => Scalar::RatFn(a.add(b)),
            (Scalar::Quotient(a), Scalar::Quotient(b)) => Scalar::Quotient(a.add(b)),
            (Scalar::Complex(a), Scalar::Complex(b)) => Scalar::Complex(a + b),
            _ => self.mismatch(other),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::RatFn(a), Scalar::RatFn(b)) => Scalar::RatFn(a.mul(b)),
            (Scalar::Quotient(a), Scalar::Quotient(b)) => Scalar::Quotient(a.mul(b)),
            (Scalar::Complex(a), Scalar::Complex(b)) => Scalar::Complex(a * b),
            _ => self.mismatch(other),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::RatFn(a) => Scalar::RatFn(a.neg()),
            Scalar::Quotient(a) => Scalar::Quotient(a.neg()),
            Scalar::Complex(a) => Scalar::Complex(-a),
        }
    }

    pub fn mul_u32(&self, k: u32) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(a * BigInt::from(k)),
            Scalar::RatFn(a) => Scalar::RatFn(a.mul_u32(k)),
            Scalar::Quotient(a) => Scalar::Quotient(a.mul_u32(k)),
            Scalar::Complex(a) => Scalar::Complex(a * k as f64),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_structural_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::RatFn(a) => Scalar::RatFn(a.inv()?),
            Scalar::Quotient(a) => Scalar::Quotient(a.inv()?),
            Scalar::Complex(a) => Scalar::Complex(a.inv()),
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = match self {
            Scalar::Rational(_) => Scalar::Rational(Rat::one()),
            Scalar::RatFn(a) => Scalar::RatFn(a.one_like()),
            Scalar::Quotient(a) => Scalar::Quotient(a.one_like()),
            Scalar::Complex(_) => Scalar::Complex(Complex64::new(1.0, 0.0)),
        };
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Numerical value at a point (coordinates in ring order). Rational
    /// functions evaluate numerator and denominator; residue-field elements
    /// are representatives and must be evaluated at the polynomial level.
    pub fn eval_complex(&self, coords: &[Complex64], den_tol: f64) -> Result<Complex64> {
        match self {
            Scalar::Rational(r) => Ok(Complex64::new(
                r.to_f64().ok_or_else(|| Error::NonFinite("rational out of f64 range".into()))?,
                0.0,
            )),
            Scalar::RatFn(f) => f.eval_complex(coords, den_tol),
            Scalar::Quotient(_) => Err(Error::InvalidInput(
                "residue-field elements evaluate through their representative".into(),
            )),
            Scalar::Complex(c) => Ok(*c),
        }
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            Scalar::Rational(r) => Some(r),
            _ => None,
        }
    }
}

/// Runtime description of the active scalar field.
#[derive(Clone, Debug)]
pub enum FieldContext {
    /// Exact rational numbers.
    Rationals,
    /// Rational functions whose variables are the ring's independent block.
    RationalFunctions(Arc<VariableRing>),
    /// Residue field of a maximal ideal, with a reduced Gröbner basis and
    /// finite quotient monomial basis.
    Quotient(Arc<QuotientContext>),
    /// Double-precision complex numbers with a zero-test tolerance.
    ApproxComplex { tolerance: f64 },
}

pub const DEFAULT_TOLERANCE: f64 = 1e-8;

impl FieldContext {
    pub fn approx_complex() -> Self {
        FieldContext::ApproxComplex {
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, FieldContext::ApproxComplex { .. })
    }

    pub fn tolerance(&self) -> Option<f64> {
        match self {
            FieldContext::ApproxComplex { tolerance } => Some(*tolerance),
            _ => None,
        }
    }

    pub fn quotient(&self) -> Option<&Arc<QuotientContext>> {
        match self {
            FieldContext::Quotient(q) => Some(q),
            _ => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldContext::Rationals => Scalar::Rational(Rat::zero()),
            FieldContext::RationalFunctions(ring) => {
                Scalar::RatFn(RationalFunction::from_rational(ring.clone(), Rat::zero()))
            }
            FieldContext::Quotient(q) => {
                Scalar::Quotient(QuotientContext::from_rational(q, Rat::zero()))
            }
            FieldContext::ApproxComplex { .. } => Scalar::Complex(Complex64::new(0.0, 0.0)),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_rational(Rat::one())
    }

    pub fn from_rational(&self, r: Rat) -> Scalar {
        match self {
            FieldContext::Rationals => Scalar::Rational(r),
            FieldContext::RationalFunctions(ring) => {
                Scalar::RatFn(RationalFunction::from_rational(ring.clone(), r))
            }
            FieldContext::Quotient(q) => {
                Scalar::Quotient(QuotientContext::from_rational(q, r))
            }
            FieldContext::ApproxComplex { .. } => Scalar::Complex(Complex64::new(
                r.to_f64().unwrap_or(f64::NAN),
                0.0,
            )),
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (FieldContext::Rationals, Scalar::Rational(_)) => true,
            (FieldContext::RationalFunctions(ring), Scalar::RatFn(f)) => {
                ring.compatible(f.ring())
            }
            (FieldContext::Quotient(q), Scalar::Quotient(e)) => Arc::ptr_eq(q, e.context()),
            (FieldContext::ApproxComplex { .. }, Scalar::Complex(_)) => true,
            _ => false,
        }
    }

    pub fn compatible(&self, other: &FieldContext) -> bool {
        match (self, other) {
            (FieldContext::Rationals, FieldContext::Rationals) => true,
            (FieldContext::RationalFunctions(a), FieldContext::RationalFunctions(b)) => {
                a.compatible(b)
            }
            (FieldContext::Quotient(a), FieldContext::Quotient(b)) => {
                Arc::ptr_eq(a, b) || a == b
            }
            (FieldContext::ApproxComplex { .. }, FieldContext::ApproxComplex { .. }) => true,
            _ => false,
        }
    }

    fn check(&self, s: &Scalar) -> Result<()> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::ContextMismatch(format!(
                "{} scalar does not belong to {}",
                s.kind(),
                self.describe()
            )))
        }
    }

    fn check_finite(&self, s: Scalar) -> Result<Scalar> {
        if let Scalar::Complex(c) = &s {
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::NonFinite("complex arithmetic".into()));
            }
        }
        Ok(s)
    }

    pub fn describe(&self) -> String {
        match self {
            FieldContext::Rationals => "QQ".into(),
            FieldContext::RationalFunctions(ring) => {
                let ts: Vec<&str> = ring
                    .independent()
                    .iter()
                    .map(|&i| ring.name(i))
                    .collect();
                format!("QQ({})", ts.join(","))
            }
            FieldContext::Quotient(q) => q.describe(),
            FieldContext::ApproxComplex { tolerance } => format!("CC(tol={tolerance:e})"),
        }
    }

    pub fn field_add(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        self.check(a)?;
        self.check(b)?;
        self.check_finite(a.add(b))
    }

    pub fn field_sub(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        self.check(a)?;
        self.check(b)?;
        self.check_finite(a.sub(b))
    }

    pub fn field_mul(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        self.check(a)?;
        self.check(b)?;
        self.check_finite(a.mul(b))
    }

    pub fn field_neg(&self, a: &Scalar) -> Result<Scalar> {
        self.check(a)?;
        Ok(a.neg())
    }

    pub fn field_inv(&self, a: &Scalar) -> Result<Scalar> {
        self.check(a)?;
        if self.is_zero(a)? {
            return Err(Error::DivisionByZero);
        }
        self.check_finite(a.inv()?)
    }

    pub fn field_div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        let ib = self.field_inv(b)?;
        self.field_mul(a, &ib)
    }

    /// Zero test: structural in exact contexts, `|a| ≤ tolerance` in the
    /// approximate-complex context.
    pub fn is_zero(&self, a: &Scalar) -> Result<bool> {
        self.check(a)?;
        Ok(match (self, a) {
            (FieldContext::ApproxComplex { tolerance }, Scalar::Complex(c)) => {
                c.norm() <= *tolerance
            }
            _ => a.is_structural_zero(),
        })
    }
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.compatible(other)
    }
}

/// Best-effort small-denominator rationalization: returns the rational of
/// denominator at most `max_den` within `tol·(1+|x|)` of `x` when one
/// exists, otherwise the exact binary expansion of `x`.
pub fn rationalize(x: f64, max_den: u64, tol: f64) -> Rat {
    let exact = Rat::from_float(x).unwrap_or_else(Rat::zero);
    if x == 0.0 {
        return exact;
    }
    // continued-fraction convergents
    let target = x.abs();
    let mut a = target;
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    for _ in 0..64 {
        let ai = a.floor();
        if !ai.is_finite() || ai.abs() > 1e18 {
            break;
        }
        let ai_int = BigInt::from(ai as i64);
        let p2 = &ai_int * &p1 + &p0;
        let q2 = &ai_int * &q1 + &q0;
        if q2 > BigInt::from(max_den) {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let cand = Rat::new(p1.clone(), q1.clone());
        let err = (cand.to_f64().unwrap_or(f64::INFINITY) - target).abs();
        if err <= tol * (1.0 + target) {
            let signed = if x < 0.0 { -cand } else { cand };
            return signed;
        }
        let frac = a - ai;
        if frac.abs() < f64::EPSILON * a.abs().max(1.0) {
            break;
        }
        a = 1.0 / frac;
    }
    exact
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl std::fmt::Display for Scalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::RatFn(rf) => write!(f, "{rf}"),
            Scalar::Quotient(q) => write!(f, "{q}"),
            Scalar::Complex(c) => {
                if c.im == 0.0 {
                    write!(f, "{:.17e}", c.re)
                } else if c.im.is_sign_negative() {
                    write!(f, "{:.17e}{:.17e}i", c.re, c.im)
                } else {
                    write!(f, "{:.17e}+{:.17e}i", c.re, c.im)
                }
            }
        }
    }
}
