use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{normal_form, GroebnerBasis};
use crate::polyring::{Monomial, Polynomial};

use super::{FieldContext, Rat, Scalar};

/// Cap on the quotient monomial basis; exceeding it means the supplied
/// ideal was not zero-dimensional over its coefficient field.
const QUOTIENT_BASIS_CAP: usize = 10_000;

/// The residue field κ(P) of a maximal ideal P, described by a reduced
/// Gröbner basis with a finite quotient monomial basis over the ambient
/// coefficient field.
#[derive(Debug)]
pub struct QuotientContext {
    gb: GroebnerBasis,
    ambient: FieldContext,
    basis: Vec<Monomial>,
    one_index: usize,
}

impl PartialEq for QuotientContext {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.gb == other.gb
    }
}

impl QuotientContext {
    /// Build the residue-field context from a reduced Gröbner basis of P.
    /// The ambient context is the basis' coefficient context.
    pub fn new(gb: GroebnerBasis) -> Result<Arc<Self>> {
        if gb.is_unit() {
            return Err(Error::EmptyVariety);
        }
        let ambient = gb.ctx().clone();
        if !ambient.is_exact() {
            return Err(Error::InvalidInput(
                "residue fields require exact coefficients".into(),
            ));
        }
        let basis = gb.quotient_basis(QUOTIENT_BASIS_CAP)?;
        let one_index = basis
            .iter()
            .position(Monomial::is_one)
            .expect("1 is a standard monomial of a proper ideal");
        Ok(Arc::new(QuotientContext {
            gb,
            ambient,
            basis,
            one_index,
        }))
    }

    pub fn gb(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn ambient(&self) -> &FieldContext {
        &self.ambient
    }

    /// The quotient monomial basis (standard monomials) in listing order.
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn degree(&self) -> usize {
        self.basis.len()
    }

    pub fn describe(&self) -> String {
        format!(
            "kappa({})",
            self.gb
                .generators()
                .iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        )
    }

    pub fn from_rational(ctx: &Arc<Self>, r: Rat) -> QuotientElement {
        let rep = Polynomial::constant(
            ctx.gb.ring().clone(),
            ctx.ambient.clone(),
            ctx.ambient.from_rational(r),
        );
        QuotientElement {
            rep,
            ctx: ctx.clone(),
        }
    }

    /// Canonical representative: the normal form modulo the basis.
    pub fn reduce(ctx: &Arc<Self>, p: &Polynomial) -> QuotientElement {
        QuotientElement {
            rep: normal_form(p, &ctx.gb),
            ctx: ctx.clone(),
        }
    }

    /// Coordinates of an element over the quotient monomial basis.
    pub fn coordinates(&self, e: &QuotientElement) -> Vec<Scalar> {
        let mut coords = vec![self.ambient.zero(); self.basis.len()];
        for (m, c) in e.rep.terms() {
            let idx = self
                .basis
                .iter()
                .position(|b| b == m)
                .expect("representative is supported on standard monomials");
            coords[idx] = c.clone();
        }
        coords
    }
}

/// An element of κ(P): its fully reduced representative plus the shared
/// context. Elements are equal exactly when representatives coincide.
#[derive(Clone, Debug)]
pub struct QuotientElement {
    rep: Polynomial,
    ctx: Arc<QuotientContext>,
}

impl PartialEq for QuotientElement {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep
    }
}

impl QuotientElement {
    pub fn representative(&self) -> &Polynomial {
        &self.rep
    }

    pub fn context(&self) -> &Arc<QuotientContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rep.is_one()
    }

    pub fn one_like(&self) -> Self {
        QuotientContext::from_rational(&self.ctx, Rat::from(num::BigInt::from(1)))
    }

    pub fn add(&self, other: &Self) -> Self {
        // normal forms are linear, so the sum of representatives is reduced
        QuotientElement {
            rep: self.rep.add(&other.rep),
            ctx: self.ctx.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        QuotientElement {
            rep: self.rep.neg(),
            ctx: self.ctx.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        QuotientContext::reduce(&self.ctx, &self.rep.mul(&other.rep))
    }

    pub fn mul_u32(&self, k: u32) -> Self {
        QuotientElement {
            rep: self.rep.mul_u32(k),
            ctx: self.ctx.clone(),
        }
    }

    pub fn mul_ambient(&self, c: &Scalar) -> Self {
        QuotientElement {
            rep: self.rep.mul_scalar(c),
            ctx: self.ctx.clone(),
        }
    }

    /// Invert by solving `M·v = e₁` where `M` is the multiplication-by-self
    /// matrix on the quotient monomial basis. A singular matrix means the
    /// element is a zero divisor: the supplied ideal was not maximal.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ctx = &self.ctx;
        let m = ctx.basis().len();
        // columns: coordinates of self·b_j
        let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(m);
        for b in ctx.basis() {
            let prod = QuotientContext::reduce(ctx, &self.rep.mul_monomial(b));
            cols.push(ctx.coordinates(&prod));
        }
        // rhs = e_{one}
        let mut rhs = vec![ctx.ambient.zero(); m];
        rhs[ctx.one_index] = ctx.ambient.one();
        let v = solve_dense(&cols, rhs, &ctx.ambient).ok_or_else(|| {
            Error::NotInvertible(format!(
                "{} is a zero divisor modulo {}",
                self.rep,
                ctx.describe()
            ))
        })?;
        let mut rep = Polynomial::zero(self.rep.ring().clone(), ctx.ambient.clone());
        for (b, c) in ctx.basis().iter().zip(v) {
            rep.add_term(b.clone(), c);
        }
        Ok(QuotientElement {
            rep,
            ctx: ctx.clone(),
        })
    }
}

/// Solve `A·v = rhs` for square `A` given by columns, by Gaussian
/// elimination with first-nonzero pivoting. Returns `None` when singular.
fn solve_dense(cols: &[Vec<Scalar>], rhs: Vec<Scalar>, ambient: &FieldContext) -> Option<Vec<Scalar>> {
    let n = rhs.len();
    // rows of the augmented system
    let mut a: Vec<Vec<Scalar>> = (0..n)
        .map(|r| (0..n).map(|c| cols[c][r].clone()).collect())
        .collect();
    let mut b = rhs;
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    for col in 0..n {
        let pivot_row = (0..n).find(|&r| !used[r] && !a[r][col].is_structural_zero());
        let Some(pr) = pivot_row else { continue };
        used[pr] = true;
        pivot_of_col[col] = Some(pr);
        let inv = a[pr][col].inv().ok()?;
        for c in 0..n {
            a[pr][c] = a[pr][c].mul(&inv);
        }
        b[pr] = b[pr].mul(&inv);
        for r in 0..n {
            if r != pr && !a[r][col].is_structural_zero() {
                let factor = a[r][col].clone();
                for c in 0..n {
                    let delta = factor.mul(&a[pr][c]);
                    a[r][c] = a[r][c].sub(&delta);
                }
                let delta = factor.mul(&b[pr]);
                b[r] = b[r].sub(&delta);
            }
        }
    }
    let mut v = vec![ambient.zero(); n];
    for col in 0..n {
        match pivot_of_col[col] {
            Some(pr) => v[col] = b[pr].clone(),
            None => return None, // singular
        }
    }
    Some(v)
}

impl std::fmt::Display for QuotientElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.rep)
    }
}
