use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::polyring::gcd::{make_monic, poly_div_exact, poly_gcd};
use crate::polyring::{Polynomial, VariableRing};

use super::{FieldContext, Rat, Scalar};

/// A reduced fraction of polynomials with rational coefficients. The
/// denominator is nonzero with grevlex leading coefficient 1, and
/// `gcd(num, den) = 1`; this normalization runs on every construction so
/// equality is structural.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    /// Normalize an arbitrary fraction with nonzero denominator.
    fn reduced(num: Polynomial, den: Polynomial) -> Self {
        debug_assert!(!den.is_zero());
        let ring = num.ring().clone();
        let ctx = num.ctx().clone();
        if num.is_zero() {
            return RationalFunction {
                num,
                den: Polynomial::one(ring, ctx),
            };
        }
        if let Some(c) = den.as_constant() {
            let inv = c.inv().expect("nonzero constant denominator");
            return RationalFunction {
                num: num.mul_scalar(&inv),
                den: Polynomial::one(ring, ctx),
            };
        }
        let g = poly_gcd(&num, &den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                poly_div_exact(&num, &g).expect("gcd divides numerator"),
                poly_div_exact(&den, &g).expect("gcd divides denominator"),
            )
        };
        if let Some(c) = den.as_constant() {
            let inv = c.inv().expect("nonzero constant denominator");
            num = num.mul_scalar(&inv);
            den = Polynomial::one(ring, ctx);
        } else {
            let monic = make_monic(&den);
            // make_monic scales by the inverse leading coefficient; apply
            // the same factor to the numerator
            let lc = den
                .leading_term(&crate::groebner::MonomialOrder::grevlex(
                    den.ring().num_vars(),
                ))
                .map(|(_, c)| c);
            if let Some(lc) = lc {
                let inv = lc.inv().expect("nonzero leading coefficient");
                num = num.mul_scalar(&inv);
            }
            den = monic;
        }
        RationalFunction { num, den }
    }

    pub fn from_poly(num: Polynomial) -> Self {
        let den = Polynomial::one(num.ring().clone(), num.ctx().clone());
        RationalFunction { num, den }
    }

    pub fn from_rational(ring: Arc<VariableRing>, r: Rat) -> Self {
        let num = Polynomial::constant(ring.clone(), FieldContext::Rationals, Scalar::Rational(r));
        Self::from_poly(num)
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn ring(&self) -> &Arc<VariableRing> {
        self.num.ring()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn one_like(&self) -> Self {
        Self::from_poly(Polynomial::one(self.ring().clone(), self.num.ctx().clone()))
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.add(&other.num));
        }
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::reduced(num, den)
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return RationalFunction {
                num: Polynomial::zero(self.ring().clone(), self.num.ctx().clone()),
                den: Polynomial::one(self.ring().clone(), self.num.ctx().clone()),
            };
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.mul(&other.num));
        }
        // cross-reduce before multiplying to keep the gcds small
        let g1 = poly_gcd(&self.num, &other.den);
        let g2 = poly_gcd(&other.num, &self.den);
        let n1 = poly_div_exact(&self.num, &g1).expect("gcd divides");
        let d2 = poly_div_exact(&other.den, &g1).expect("gcd divides");
        let n2 = poly_div_exact(&other.num, &g2).expect("gcd divides");
        let d1 = poly_div_exact(&self.den, &g2).expect("gcd divides");
        Self::reduced(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn mul_u32(&self, k: u32) -> Self {
        RationalFunction {
            num: self.num.mul_u32(k),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn eval_complex(&self, coords: &[Complex64], den_tol: f64) -> Result<Complex64> {
        let d = self.den.eval_complex(coords, den_tol)?;
        if d.norm() <= den_tol {
            return Err(Error::DenominatorVanishes(format!("{}", self.den)));
        }
        let n = self.num.eval_complex(coords, den_tol)?;
        Ok(n / d)
    }
}

impl std::fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
