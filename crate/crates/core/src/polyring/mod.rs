//! Sparse multivariate polynomials, Weyl-algebra operators, the
//! differentiation action and the induced pairing into image rings.

pub(crate) mod gcd;
mod poly;
mod render;
mod weyl;

pub use gcd::{make_monic, poly_div_exact, poly_gcd, poly_lcm};
pub use poly::Polynomial;
pub use render::{monomial_string, polynomial_string};
pub use weyl::{promote_to_ratfn, DiffBlock, SpecializedOperator, WeylOperator};

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An ordered list of variable names together with the (possibly empty)
/// block of independent variables. All polynomials, operators and field
/// contexts reference a shared `Arc<VariableRing>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableRing {
    names: Vec<String>,
    /// Sorted indices of the independent variables (the `t` block).
    independent: Vec<usize>,
}

impl VariableRing {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Arc<Self> {
        Arc::new(VariableRing {
            names: names.into_iter().map(Into::into).collect(),
            independent: Vec::new(),
        })
    }

    pub fn with_independent(&self, independent: &[usize]) -> Arc<Self> {
        let mut independent = independent.to_vec();
        independent.sort_unstable();
        independent.dedup();
        assert!(
            independent.iter().all(|&i| i < self.names.len()),
            "independent index out of range"
        );
        Arc::new(VariableRing {
            names: self.names.clone(),
            independent,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Indices of the independent (`t`) block, sorted ascending.
    pub fn independent(&self) -> &[usize] {
        &self.independent
    }

    /// Indices of the dependent (`x`) block, sorted ascending. When no
    /// split has been declared every variable is dependent.
    pub fn dependent(&self) -> Vec<usize> {
        (0..self.names.len())
            .filter(|i| !self.independent.contains(i))
            .collect()
    }

    pub fn is_independent(&self, i: usize) -> bool {
        self.independent.contains(&i)
    }

    /// Two rings are compatible when they name the same variables in the
    /// same order; the independent split is advisory metadata.
    pub fn compatible(&self, other: &VariableRing) -> bool {
        self.names == other.names
    }

    pub fn check_compatible(&self, other: &VariableRing) -> Result<()> {
        if self.compatible(other) {
            Ok(())
        } else {
            Err(Error::ContextMismatch(format!(
                "rings [{}] and [{}] differ",
                self.names.join(","),
                other.names.join(",")
            )))
        }
    }
}

impl fmt::Display for VariableRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names.join(","))
    }
}

/// Exponent vector of a monomial; the length always equals the ambient
/// ring's variable count. The derived `Ord` is a storage order only, the
/// mathematically meaningful comparisons live in [`crate::groebner::MonomialOrder`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    pub fn var(num_vars: usize, index: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exponents: Vec<u16>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.0[i]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_into(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(
                other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// True when every variable in the support belongs to `vars`.
    pub fn supported_on(&self, vars: &[usize]) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, &e)| e == 0 || vars.contains(&i))
    }
}

/// Enumerate all monomials over the given variable subset with total degree
/// at most `max_degree`, in the listing order used for Macaulay matrix
/// columns: degree ascending, within a degree block the variable earlier in
/// `vars` carries the higher exponent first.
pub fn monomials_up_to_degree(
    num_vars: usize,
    vars: &[usize],
    max_degree: u32,
) -> Vec<Monomial> {
    let mut out = Vec::new();
    for d in 0..=max_degree {
        let mut block = Vec::new();
        enumerate_degree(num_vars, vars, d, 0, &mut vec![0u16; num_vars], &mut block);
        out.extend(block);
    }
    out
}

fn enumerate_degree(
    num_vars: usize,
    vars: &[usize],
    remaining: u32,
    pos: usize,
    current: &mut Vec<u16>,
    out: &mut Vec<Monomial>,
) {
    if pos == vars.len() {
        if remaining == 0 {
            out.push(Monomial::from_exponents(current.clone()));
        }
        return;
    }
    if pos + 1 == vars.len() {
        current[vars[pos]] = remaining as u16;
        out.push(Monomial::from_exponents(current.clone()));
        current[vars[pos]] = 0;
        return;
    }
    for e in (0..=remaining).rev() {
        current[vars[pos]] = e as u16;
        enumerate_degree(num_vars, vars, remaining - e, pos + 1, current, out);
    }
    current[vars[pos]] = 0;
    let _ = num_vars;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_enumeration_order() {
        // two variables, degree ≤ 2: 1, a, b, a², ab, b²
        let mons = monomials_up_to_degree(2, &[0, 1], 2);
        let exps: Vec<Vec<u16>> = mons.iter().map(|m| m.exponents().to_vec()).collect();
        assert_eq!(
            exps,
            vec![
                vec![0, 0],
                vec![1, 0],
                vec![0, 1],
                vec![2, 0],
                vec![1, 1],
                vec![0, 2]
            ]
        );
    }

    #[test]
    fn monomial_enumeration_subset() {
        // three variables but only the last two active
        let mons = monomials_up_to_degree(3, &[1, 2], 1);
        let exps: Vec<Vec<u16>> = mons.iter().map(|m| m.exponents().to_vec()).collect();
        assert_eq!(exps, vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn monomial_division() {
        let a = Monomial::from_exponents(vec![2, 1]);
        let b = Monomial::from_exponents(vec![3, 1]);
        assert!(a.divides(&b));
        assert_eq!(a.quotient_into(&b), Some(Monomial::from_exponents(vec![1, 0])));
        assert_eq!(b.quotient_into(&a), None);
    }
}
