//! User-facing workflows: the probabilistic membership test, per-component
//! numerical primary decomposition, coordinate-change transport of
//! operator sets, and the ideal obtained by applying operators to
//! generators.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::{One, Zero};
use num_complex::Complex64;

use crate::dualspace::NoetherianOperatorSet;
use crate::error::{Error, Result};
use crate::groebner::MonomialOrder;
use crate::numericops::{numerical_noetherian_operators, NumericOptions, WitnessPoint};
use crate::polyring::{DiffBlock, Monomial, Polynomial, VariableRing, WeylOperator};
use crate::scalars::{FieldContext, Rat, Scalar};

/// One irreducible component: its witness points, optionally its exact
/// prime, and the computed operator set (or the failure that prevented it).
#[derive(Clone, Debug)]
pub struct ComponentDescription {
    pub id: String,
    pub points: Vec<WitnessPoint>,
    pub operators: Option<NoetherianOperatorSet>,
    pub prime: Option<Vec<Polynomial>>,
    pub error: Option<String>,
}

/// Evaluate (D • f)(p) together with the magnitude of the evaluation, used
/// to scale the zero test.
pub fn operator_value_at(
    op: &WeylOperator,
    f: &Polynomial,
    coords: &[Complex64],
    tol: f64,
) -> Result<(Complex64, f64)> {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut scale = 0.0_f64;
    for (alpha, coeff) in op.terms() {
        let df = f.derivative_monomial(alpha);
        if df.is_zero() {
            continue;
        }
        let c = coeff.eval_complex(coords, tol)?;
        let v = df.eval_complex(coords, tol)?;
        acc += c * v;
        scale += (c * v).norm();
    }
    Ok((acc, scale))
}

/// Probabilistic ideal-membership test: for each component, evaluate every
/// operator applied to `f` at `trials` witness points; `f` is declared a
/// member when all values vanish to tolerance. The aggregate is the AND
/// over components, valid when the ideal has no embedded components.
pub fn membership_test(
    f: &Polynomial,
    components: &[ComponentDescription],
    trials: usize,
    tol: f64,
) -> Result<(Vec<bool>, bool)> {
    let mut per_component = Vec::with_capacity(components.len());
    for comp in components {
        let set = comp.operators.as_ref().ok_or_else(|| {
            Error::InvalidInput(format!("component {} has no operator set", comp.id))
        })?;
        if comp.points.len() < trials {
            return Err(Error::NeedMorePoints(format!(
                "component {} has {} points, {trials} requested",
                comp.id,
                comp.points.len()
            )));
        }
        let mut member = true;
        'points: for p in comp.points.iter().take(trials) {
            for op in &set.operators {
                let (value, scale) = operator_value_at(op, f, &p.coords, tol)?;
                if value.norm() > tol * (1.0 + scale) {
                    member = false;
                    break 'points;
                }
            }
        }
        per_component.push(member);
    }
    let aggregate = per_component.iter().all(|&m| m);
    Ok((per_component, aggregate))
}

/// Numerical primary decomposition for unmixed ideals, with the numerical
/// irreducible decomposition consumed as input: witness points grouped by
/// component. Per-component failures are recorded, not propagated.
pub fn numerical_primary_decomposition(
    generators: &[Polynomial],
    witness: &[WitnessPoint],
    order: &MonomialOrder,
    opts: &NumericOptions,
) -> Result<Vec<ComponentDescription>> {
    let mut groups: BTreeMap<String, Vec<WitnessPoint>> = BTreeMap::new();
    for p in witness {
        let id = p.component.clone().unwrap_or_else(|| "0".into());
        groups.entry(id).or_default().push(p.clone());
    }
    if groups.is_empty() {
        return Err(Error::NeedMorePoints("no witness points supplied".into()));
    }
    let mut out = Vec::new();
    for (id, points) in groups {
        match numerical_noetherian_operators(generators, &points, order, opts) {
            Ok(set) => out.push(ComponentDescription {
                id,
                points,
                operators: Some(set),
                prime: None,
                error: None,
            }),
            Err(e) => out.push(ComponentDescription {
                id,
                points,
                operators: None,
                prime: None,
                error: Some(e.to_string()),
            }),
        }
    }
    Ok(out)
}

/// An invertible linear change of coordinates x ↦ Ax.
#[derive(Clone, Debug)]
pub struct LinearChange {
    matrix: Vec<Vec<Rat>>,
    inverse: Vec<Vec<Rat>>,
}

impl LinearChange {
    pub fn new(matrix: Vec<Vec<Rat>>) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidInput("change matrix must be square".into()));
        }
        let inverse = invert_rational(&matrix).ok_or(Error::SingularChange)?;
        Ok(LinearChange { matrix, inverse })
    }

    pub fn identity(n: usize) -> Self {
        let mut m = vec![vec![Rat::zero(); n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = Rat::one();
        }
        LinearChange {
            matrix: m.clone(),
            inverse: m,
        }
    }

    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<Rat>] {
        &self.matrix
    }

    /// The inverse change of coordinates.
    pub fn inverse_change(&self) -> LinearChange {
        LinearChange {
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
        }
    }

    /// φ(f): substitute each variable x_i by the linear form (Ax)_i.
    pub fn apply_to_polynomial(&self, f: &Polynomial) -> Result<Polynomial> {
        let ring = f.ring().clone();
        let n = ring.num_vars();
        if n != self.size() {
            return Err(Error::ContextMismatch(format!(
                "matrix is {}×{0}, ring has {n} variables",
                self.size()
            )));
        }
        if !matches!(f.ctx(), FieldContext::Rationals) {
            return Err(Error::ContextMismatch(
                "coordinate changes act on rational-coefficient polynomials".into(),
            ));
        }
        let images: Vec<Polynomial> = (0..n)
            .map(|i| linear_form(&ring, &self.matrix[i]))
            .collect();
        let mut out = Polynomial::zero(ring.clone(), FieldContext::Rationals);
        for (m, c) in f.terms() {
            let mut term = Polynomial::constant(
                ring.clone(),
                FieldContext::Rationals,
                c.clone(),
            );
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[i].pow(e as u32));
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// ψ(∂_j) = Σ_k (A⁻¹)_{kj} ∂_k as a constant-coefficient operator.
    fn partial_image(&self, ring: &Arc<VariableRing>, j: usize) -> Vec<(usize, Rat)> {
        let _ = ring;
        (0..self.size())
            .filter(|&k| !self.inverse[k][j].is_zero())
            .map(|k| (k, self.inverse[k][j].clone()))
            .collect()
    }
}

fn linear_form(ring: &Arc<VariableRing>, row: &[Rat]) -> Polynomial {
    let n = ring.num_vars();
    let mut p = Polynomial::zero(ring.clone(), FieldContext::Rationals);
    for (j, c) in row.iter().enumerate() {
        if !c.is_zero() {
            p.add_term(Monomial::var(n, j), Scalar::Rational(c.clone()));
        }
    }
    p
}

fn invert_rational(matrix: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = matrix.len();
    let mut a: Vec<Vec<Rat>> = matrix.to_vec();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let d = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &d;
            inv[col][j] = &inv[col][j] / &d;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for j in 0..n {
                    let t = &factor * &a[col][j];
                    a[r][j] = &a[r][j] - &t;
                    let t = &factor * &inv[col][j];
                    inv[r][j] = &inv[r][j] - &t;
                }
            }
        }
    }
    Some(inv)
}

/// Transport an operator set through x ↦ Ax: coefficients pick up x ← Ax
/// and ∂-monomials expand through (A⁻¹)ᵀ∂. The result is a Noetherian
/// operator set for the transformed ideal.
pub fn transform_operators(
    set: &NoetherianOperatorSet,
    change: &LinearChange,
) -> Result<NoetherianOperatorSet> {
    let ring = set.ring.clone();
    let n = ring.num_vars();
    if n != change.size() {
        return Err(Error::ContextMismatch(format!(
            "matrix is {}×{0}, ring has {n} variables",
            change.size()
        )));
    }
    let mut operators = Vec::with_capacity(set.operators.len());
    for op in &set.operators {
        if !matches!(op.ctx(), FieldContext::Rationals) {
            return Err(Error::InvalidInput(
                "coordinate transport needs polynomial coefficients; lift the set first".into(),
            ));
        }
        let mut image = WeylOperator::zero(ring.clone(), FieldContext::Rationals, DiffBlock::All);
        for (alpha, coeff) in op.terms() {
            let new_coeff = change.apply_to_polynomial(coeff)?;
            // expand Π_j (Σ_k (A⁻¹)_{kj} ∂_k)^{α_j} over commuting symbols
            let mut expansion: BTreeMap<Monomial, Rat> = BTreeMap::new();
            expansion.insert(Monomial::one(n), Rat::one());
            for (j, &e) in alpha.exponents().iter().enumerate() {
                let image_j = change.partial_image(&ring, j);
                for _ in 0..e {
                    let mut next: BTreeMap<Monomial, Rat> = BTreeMap::new();
                    for (mon, c) in &expansion {
                        for (k, ck) in &image_j {
                            let m2 = mon.mul(&Monomial::var(n, *k));
                            let c2 = c * ck;
                            next.entry(m2)
                                .and_modify(|acc| *acc += &c2)
                                .or_insert(c2);
                        }
                    }
                    next.retain(|_, c| !c.is_zero());
                    expansion = next;
                }
            }
            for (dmon, c) in expansion {
                image.add_term(dmon, new_coeff.mul_scalar(&Scalar::Rational(c)));
            }
        }
        operators.push(image);
    }
    let map_polys = |ps: &[Polynomial]| -> Result<Vec<Polynomial>> {
        ps.iter().map(|p| change.apply_to_polynomial(p)).collect()
    };
    Ok(NoetherianOperatorSet {
        operators,
        prime: map_polys(&set.prime)?,
        ideal: map_polys(&set.ideal)?,
        independent: set.independent.clone(),
        ring,
    })
}

/// N(G) = { D • g : D ∈ N, g ∈ G } with zero entries dropped; always
/// contained in the radical of the ideal generated by G.
pub fn apply_to_generators(
    set: &NoetherianOperatorSet,
    generators: &[Polynomial],
) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    for op in &set.operators {
        for g in generators {
            let h = op.apply(g)?;
            if !h.is_zero() {
                out.push(h);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dualspace::{noetherian_operators, SymbolicOptions};
    use crate::frontend::parse_polynomial;
    use crate::scalars::rat;

    fn txy() -> Arc<VariableRing> {
        VariableRing::new(vec!["t", "x", "y"]).with_independent(&[0])
    }

    fn axis_point(t: f64) -> WitnessPoint {
        WitnessPoint::new(
            vec![
                Complex64::new(t, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
            ],
            None,
        )
    }

    fn xty_component() -> (ComponentDescription, Arc<VariableRing>) {
        let ring = txy();
        let ideal = vec![
            parse_polynomial("x^2 - t*y", &ring).unwrap(),
            parse_polynomial("y^2", &ring).unwrap(),
        ];
        let prime = vec![
            parse_polynomial("x", &ring).unwrap(),
            parse_polynomial("y", &ring).unwrap(),
        ];
        let set = noetherian_operators(
            &ideal,
            &prime,
            &MonomialOrder::dmonomial(3),
            &SymbolicOptions::default(),
        )
        .unwrap();
        (
            ComponentDescription {
                id: "0".into(),
                points: (1..=5).map(|t| axis_point(t as f64)).collect(),
                operators: Some(set),
                prime: None,
                error: None,
            },
            ring,
        )
    }

    #[test]
    fn membership_accepts_generator() {
        let (comp, ring) = xty_component();
        let f = parse_polynomial("x^2 - t*y", &ring).unwrap();
        let (per, agg) = membership_test(&f, &[comp], 3, 1e-8).unwrap();
        assert_eq!(per, vec![true]);
        assert!(agg);
    }

    #[test]
    fn membership_rejects_radical_element() {
        let (comp, ring) = xty_component();
        // y is in the radical but not in the ideal
        let f = parse_polynomial("y", &ring).unwrap();
        let (per, agg) = membership_test(&f, &[comp], 3, 1e-8).unwrap();
        assert_eq!(per, vec![false]);
        assert!(!agg);
    }

    #[test]
    fn membership_accepts_zero() {
        let (comp, ring) = xty_component();
        let f = Polynomial::zero(ring, FieldContext::Rationals);
        let (_, agg) = membership_test(&f, &[comp], 3, 1e-8).unwrap();
        assert!(agg);
    }

    #[test]
    fn membership_needs_enough_points() {
        let (mut comp, ring) = xty_component();
        comp.points.truncate(2);
        let f = parse_polynomial("y", &ring).unwrap();
        assert!(matches!(
            membership_test(&f, &[comp], 3, 1e-8),
            Err(Error::NeedMorePoints(_))
        ));
    }

    #[test]
    fn decomposition_of_single_component() {
        let ring = txy();
        let ideal = vec![
            parse_polynomial("x^2 - t*y", &ring).unwrap(),
            parse_polynomial("y^2", &ring).unwrap(),
        ];
        let points: Vec<WitnessPoint> = (1..=10).map(|t| axis_point(t as f64)).collect();
        let comps = numerical_primary_decomposition(
            &ideal,
            &points,
            &MonomialOrder::dmonomial(3),
            &NumericOptions::default(),
        )
        .unwrap();
        assert_eq!(comps.len(), 1);
        let set = comps[0].operators.as_ref().unwrap();
        assert_eq!(set.multiplicity(), 4);
    }

    #[test]
    fn identity_transform_is_noop() {
        let (comp, _ring) = xty_component();
        let set = comp.operators.unwrap();
        let change = LinearChange::identity(3);
        let moved = transform_operators(&set, &change).unwrap();
        assert_eq!(moved.operators, set.operators);
    }

    #[test]
    fn swap_transform_on_thick_line() {
        let ring = VariableRing::new(vec!["x", "y"]);
        let ideal = vec![parse_polynomial("(x+y+1)^2", &ring).unwrap()];
        let prime = vec![parse_polynomial("x+y+1", &ring).unwrap()];
        let set = noetherian_operators(
            &ideal,
            &prime,
            &MonomialOrder::dmonomial(2),
            &SymbolicOptions::default(),
        )
        .unwrap();
        let swap = LinearChange::new(vec![
            vec![rat(0, 1), rat(1, 1)],
            vec![rat(1, 1), rat(0, 1)],
        ])
        .unwrap();
        let moved = transform_operators(&set, &swap).unwrap();
        let rendered: Vec<String> = moved.operators.iter().map(|o| o.to_string()).collect();
        assert_eq!(rendered, vec!["1", "dy"]);
        // the ideal is symmetric under the swap
        assert_eq!(moved.ideal[0], set.ideal[0]);
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let res = LinearChange::new(vec![
            vec![rat(1, 1), rat(2, 1)],
            vec![rat(2, 1), rat(4, 1)],
        ]);
        assert!(matches!(res, Err(Error::SingularChange)));
    }

    #[test]
    fn apply_operators_to_generators() {
        let ring = VariableRing::new(vec!["x", "y", "z"]);
        let g = parse_polynomial("(x*y - z^2)^2", &ring).unwrap();
        let one = crate::frontend::parse_operator("1", &ring).unwrap();
        let dy = crate::frontend::parse_operator("dy", &ring).unwrap();
        let set = NoetherianOperatorSet {
            operators: vec![one, dy],
            prime: vec![],
            ideal: vec![g.clone()],
            independent: vec![],
            ring: ring.clone(),
        };
        let ng = apply_to_generators(&set, &[g.clone()]).unwrap();
        assert_eq!(ng.len(), 2);
        assert_eq!(ng[0], g);
        let expected = parse_polynomial("2*x*(x*y - z^2)", &ring).unwrap();
        assert_eq!(ng[1], expected);
    }

    #[test]
    fn apply_identity_returns_generators() {
        let ring = VariableRing::new(vec!["x"]);
        let g = parse_polynomial("x^3 - x", &ring).unwrap();
        let one = crate::frontend::parse_operator("1", &ring).unwrap();
        let set = NoetherianOperatorSet {
            operators: vec![one],
            prime: vec![],
            ideal: vec![g.clone()],
            independent: vec![],
            ring: ring.clone(),
        };
        assert_eq!(apply_to_generators(&set, &[g.clone()]).unwrap(), vec![g]);
        // zero generators vanish from the output
        let zero = Polynomial::zero(ring.clone(), FieldContext::Rationals);
        assert!(apply_to_generators(&set, &[zero]).unwrap().is_empty());
    }
}
