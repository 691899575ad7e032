use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalars::{FieldContext, Scalar};

use super::{Monomial, VariableRing};

/// Sparse multivariate polynomial: monomial → nonzero scalar coefficient.
/// Coefficients all live in one [`FieldContext`].
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<VariableRing>,
    ctx: FieldContext,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring.compatible(&other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: Arc<VariableRing>, ctx: FieldContext) -> Self {
        Polynomial {
            ring,
            ctx,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: Arc<VariableRing>, ctx: FieldContext) -> Self {
        let one = ctx.one();
        Self::constant(ring, ctx, one)
    }

    pub fn constant(ring: Arc<VariableRing>, ctx: FieldContext, value: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_structural_zero() {
            terms.insert(Monomial::one(ring.num_vars()), value);
        }
        Polynomial { ring, ctx, terms }
    }

    pub fn monomial_term(
        ring: Arc<VariableRing>,
        ctx: FieldContext,
        monomial: Monomial,
        coeff: Scalar,
    ) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_structural_zero() {
            terms.insert(monomial, coeff);
        }
        Polynomial { ring, ctx, terms }
    }

    pub fn variable(ring: Arc<VariableRing>, ctx: FieldContext, index: usize) -> Self {
        let n = ring.num_vars();
        Self::monomial_term(ring, ctx.clone(), Monomial::var(n, index), ctx.one())
    }

    pub fn from_terms<I>(ring: Arc<VariableRing>, ctx: FieldContext, iter: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut p = Self::zero(ring, ctx);
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<VariableRing> {
        &self.ring
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    /// Re-tag with a ring sharing the same variable names (e.g. after the
    /// independent split has been computed).
    pub fn with_ring(&self, ring: Arc<VariableRing>) -> Self {
        assert!(self.ring.compatible(&ring), "incompatible ring re-tag");
        Polynomial {
            ring,
            ctx: self.ctx.clone(),
            terms: self.terms.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// The polynomial as a scalar when it is constant (including zero).
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(self.ctx.zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                if m.is_one() {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }

    /// Indices of variables appearing with positive exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        let n = self.ring.num_vars();
        let mut seen = vec![false; n];
        for m in self.terms.keys() {
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    seen[i] = true;
                }
            }
        }
        (0..n).filter(|&i| seen[i]).collect()
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_structural_zero() {
            return;
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(existing) => {
                let sum = existing.add(&c);
                if !sum.is_structural_zero() {
                    self.terms.insert(m, sum);
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.neg()))
            .collect();
        Polynomial {
            ring: self.ring.clone(),
            ctx: self.ctx.clone(),
            terms,
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.ring.clone(), self.ctx.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }

    pub fn mul_scalar(&self, c: &Scalar) -> Polynomial {
        if c.is_structural_zero() {
            return Polynomial::zero(self.ring.clone(), self.ctx.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), a.mul(c)))
            .filter(|(_, a)| !a.is_structural_zero())
            .collect();
        Polynomial {
            ring: self.ring.clone(),
            ctx: self.ctx.clone(),
            terms,
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(a, c)| (a.mul(m), c.clone()))
            .collect();
        Polynomial {
            ring: self.ring.clone(),
            ctx: self.ctx.clone(),
            terms,
        }
    }

    pub fn mul_u32(&self, k: u32) -> Polynomial {
        if k == 0 {
            return Polynomial::zero(self.ring.clone(), self.ctx.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.mul_u32(k)))
            .collect();
        Polynomial {
            ring: self.ring.clone(),
            ctx: self.ctx.clone(),
            terms,
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one(self.ring.clone(), self.ctx.clone());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Formal partial derivative with respect to variable `index`.
    pub fn partial_derivative(&self, index: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.ring.clone(), self.ctx.clone());
        for (m, c) in &self.terms {
            let e = m.exponent(index);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[index] -= 1;
            out.add_term(Monomial::from_exponents(exps), c.mul_u32(e as u32));
        }
        out
    }

    /// Iterated derivative `∂^α` for a full exponent vector.
    pub fn derivative_monomial(&self, alpha: &Monomial) -> Polynomial {
        let mut out = self.clone();
        for (i, &e) in alpha.exponents().iter().enumerate() {
            for _ in 0..e {
                out = out.partial_derivative(i);
                if out.is_zero() {
                    return out;
                }
            }
        }
        out
    }

    /// Numerical evaluation at a complex point given by coordinates in ring
    /// order. Rational-function scalars evaluate their numerator and
    /// denominator; a denominator with modulus below `den_tol` is an error.
    pub fn eval_complex(&self, coords: &[Complex64], den_tol: f64) -> Result<Complex64> {
        if coords.len() != self.ring.num_vars() {
            return Err(Error::ContextMismatch(format!(
                "point has {} coordinates, ring has {} variables",
                coords.len(),
                self.ring.num_vars()
            )));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut v = c.eval_complex(coords, den_tol)?;
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    v *= coords[i];
                }
            }
            acc += v;
        }
        if !acc.re.is_finite() || !acc.im.is_finite() {
            return Err(Error::NonFinite("polynomial evaluation".into()));
        }
        Ok(acc)
    }

    /// Map every coefficient through `f`, dropping structural zeros.
    pub fn map_scalars<F>(&self, ctx: FieldContext, mut f: F) -> Polynomial
    where
        F: FnMut(&Scalar) -> Scalar,
    {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), f(c)))
            .filter(|(_, c)| !c.is_structural_zero())
            .collect();
        Polynomial {
            ring: self.ring.clone(),
            ctx,
            terms,
        }
    }
}
