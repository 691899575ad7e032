//! Symbolic computation of Noetherian operators: truncated local dual
//! spaces via Macaulay matrices over the residue field, the
//! zero-dimensional algorithm, its positive-dimensional reduction through
//! the fraction field of the independent block, and operator lifting.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{
    buchberger, extend_polynomial, extend_to_fraction_field, normal_form, GroebnerBasis,
    MonomialOrder,
};
use crate::linalg::{exact_kernel, reduced_column_echelon, LabeledMatrix};
use crate::polyring::{
    monomials_up_to_degree, poly_div_exact, poly_gcd, poly_lcm, DiffBlock, Monomial, Polynomial,
    VariableRing, WeylOperator,
};
use crate::scalars::{FieldContext, QuotientContext, Scalar};

/// Default cap on the ∂-degree loop; growth past this signals a prime that
/// is not minimal over the ideal.
pub const DEFAULT_D_MAX: u32 = 20;

#[derive(Clone, Debug)]
pub struct SymbolicOptions {
    pub d_max: u32,
    /// Override for the independent set; `None` selects it from the
    /// leading-term ideal of the prime.
    pub independent: Option<Vec<usize>>,
    /// Ring-side order used for the Gröbner bases.
    pub ring_order: crate::groebner::OrderKind,
}

impl Default for SymbolicOptions {
    fn default() -> Self {
        SymbolicOptions {
            d_max: DEFAULT_D_MAX,
            independent: None,
            ring_order: crate::groebner::OrderKind::GrevLex,
        }
    }
}

/// An echelon-normalized basis of the local dual space, with operators
/// over the residue field.
#[derive(Clone, Debug)]
pub struct DualSpaceBasis {
    pub operators: Vec<WeylOperator>,
    pub qctx: Arc<QuotientContext>,
    pub degree_reached: u32,
    pub matrices: Vec<LabeledMatrix>,
}

impl DualSpaceBasis {
    pub fn multiplicity(&self) -> usize {
        self.operators.len()
    }
}

/// A set of Noetherian operators for the P-primary component of an ideal.
#[derive(Clone, Debug)]
pub struct NoetherianOperatorSet {
    pub operators: Vec<WeylOperator>,
    pub prime: Vec<Polynomial>,
    pub ideal: Vec<Polynomial>,
    pub independent: Vec<usize>,
    pub ring: Arc<VariableRing>,
}

impl NoetherianOperatorSet {
    pub fn multiplicity(&self) -> usize {
        self.operators.len()
    }
}

/// The variables the quotient ring is built over: everything for a
/// zero-dimensional context over the rationals, the dependent block over a
/// rational-function field.
pub fn active_vars(qctx: &QuotientContext) -> Vec<usize> {
    match qctx.ambient() {
        FieldContext::RationalFunctions(_) => qctx.gb().ring().dependent(),
        _ => (0..qctx.gb().ring().num_vars()).collect(),
    }
}

/// The degree-d Macaulay matrix: rows indexed by multiplied generators
/// x^α·f_i with |α| < d, columns by ∂-monomials ∂^β with |β| ≤ d sorted
/// ascending under the order, entries ⟨∂^β, x^α f_i⟩ in the residue field.
pub fn macaulay_matrix(
    generators: &[Polynomial],
    d: u32,
    qctx: &Arc<QuotientContext>,
    order: &MonomialOrder,
) -> Result<LabeledMatrix> {
    if d < 1 {
        return Err(Error::InvalidInput("macaulay matrix needs degree ≥ 1".into()));
    }
    let ring = qctx.gb().ring().clone();
    let n = ring.num_vars();
    let active = active_vars(qctx);
    let mut cols = monomials_up_to_degree(n, &active, d);
    order.sort(&mut cols);
    let mut multipliers = monomials_up_to_degree(n, &active, d.saturating_sub(1));
    order.sort(&mut multipliers);

    let ctx = FieldContext::Quotient(qctx.clone());
    let mut row_labels = Vec::new();
    let mut entries = Vec::new();
    for alpha in &multipliers {
        for f in generators {
            f.ring().check_compatible(&ring)?;
            if !f.ctx().compatible(qctx.ambient()) {
                return Err(Error::ContextMismatch(format!(
                    "generator coefficients live over {}, residue field over {}",
                    f.ctx().describe(),
                    qctx.ambient().describe()
                )));
            }
            let row_poly = f.mul_monomial(alpha);
            let mut row = Vec::with_capacity(cols.len());
            for beta in &cols {
                let derived = row_poly.derivative_monomial(beta);
                row.push(Scalar::Quotient(QuotientContext::reduce(qctx, &derived)));
            }
            row_labels.push(row_poly.to_string());
            entries.push(row);
        }
    }
    Ok(LabeledMatrix {
        ctx,
        row_labels,
        col_labels: cols,
        entries,
    })
}

/// Noetherian operators in dimension zero: grow the Macaulay matrix degree
/// until the kernel dimension stabilizes, then echelon-normalize the
/// kernel and read operators off the column labels. By locality of dual
/// spaces this computes the P-primary component's operators even when the
/// input ideal is not primary.
pub fn noetherian_operators_zero(
    generators: &[Polynomial],
    qctx: &Arc<QuotientContext>,
    order: &MonomialOrder,
    d_max: u32,
) -> Result<DualSpaceBasis> {
    for f in generators {
        if !qctx.gb().contains(f) {
            return Err(Error::PrimeNotMinimal(format!(
                "generator {f} is not contained in the prime"
            )));
        }
    }
    let mut prev_dim = 0usize;
    let mut matrices = Vec::new();
    for d in 1..=d_max {
        let matrix = macaulay_matrix(generators, d, qctx, order)?;
        let kernel = exact_kernel(&matrix)?;
        let dim = kernel.dim();
        matrices.push(matrix);
        if dim == prev_dim {
            let echelon = reduced_column_echelon(&kernel, order)?;
            let block = match qctx.ambient() {
                FieldContext::RationalFunctions(_) => DiffBlock::Dependent,
                _ => DiffBlock::All,
            };
            let ctx = FieldContext::Quotient(qctx.clone());
            let mut operators = Vec::new();
            for v in &echelon.vectors {
                let mut op = WeylOperator::zero(qctx.gb().ring().clone(), ctx.clone(), block);
                for (label, coeff) in echelon.col_labels.iter().zip(v) {
                    if let Scalar::Quotient(q) = coeff {
                        if !q.is_zero() {
                            op.add_term(label.clone(), q.representative().clone());
                        }
                    }
                }
                operators.push(op);
            }
            return Ok(DualSpaceBasis {
                operators,
                qctx: qctx.clone(),
                degree_reached: d,
                matrices,
            });
        }
        prev_dim = dim;
    }
    Err(Error::NoStabilization(d_max as usize))
}

/// Clear rational-function denominators from an operator and divide out
/// the polynomial content, producing coefficients in the polynomial ring.
pub fn lift_operator(op: &WeylOperator) -> Result<WeylOperator> {
    let ring = op.ring().clone();
    // collect denominators, verifying they only involve independent variables
    let mut lcm = Polynomial::one(ring.clone(), FieldContext::Rationals);
    let mut all_polynomial = true;
    for (_, coeff) in op.terms() {
        for (_, s) in coeff.terms() {
            match s {
                Scalar::Rational(_) => {}
                Scalar::RatFn(rf) => {
                    if !rf.is_polynomial() {
                        all_polynomial = false;
                        let den = rf.den();
                        let bad = den
                            .support_vars()
                            .into_iter()
                            .find(|&v| !ring.is_independent(v));
                        if let Some(v) = bad {
                            return Err(Error::NotLiftable(format!(
                                "denominator {den} involves the dependent variable {}",
                                ring.name(v)
                            )));
                        }
                        lcm = poly_lcm(&lcm, den);
                    }
                }
                _ => {
                    return Err(Error::NotLiftable(
                        "operator coefficients must be rational functions".into(),
                    ))
                }
            }
        }
    }
    let _ = all_polynomial;

    // flatten each coefficient to a polynomial over the rationals
    let mut flattened: Vec<(Monomial, Polynomial)> = Vec::new();
    for (dmon, coeff) in op.terms() {
        let mut flat = Polynomial::zero(ring.clone(), FieldContext::Rationals);
        for (xmon, s) in coeff.terms() {
            let scaled = match s {
                Scalar::Rational(r) => Polynomial::constant(
                    ring.clone(),
                    FieldContext::Rationals,
                    Scalar::Rational(r.clone()),
                )
                .mul(&lcm),
                Scalar::RatFn(rf) => {
                    let q = poly_div_exact(&lcm, rf.den()).expect("lcm divisible by denominator");
                    rf.num().mul(&q)
                }
                _ => unreachable!("checked above"),
            };
            flat = flat.add(&scaled.mul_monomial(xmon));
        }
        flattened.push((dmon.clone(), flat));
    }

    // divide by the gcd of the coefficients
    let mut content = Polynomial::zero(ring.clone(), FieldContext::Rationals);
    for (_, c) in &flattened {
        content = poly_gcd(&content, c);
        if content.is_one() {
            break;
        }
    }
    if !content.is_one() && !content.is_zero() {
        for (_, c) in flattened.iter_mut() {
            *c = poly_div_exact(c, &content).expect("content divides");
        }
    }
    // normalize the rational content: integral primitive coefficients
    let mut num_gcd = num::BigInt::from(0);
    let mut den_lcm = num::BigInt::from(1);
    for (_, c) in &flattened {
        for (_, s) in c.terms() {
            if let Scalar::Rational(r) = s {
                num_gcd = num::Integer::gcd(&num_gcd, r.numer());
                den_lcm = num::Integer::lcm(&den_lcm, r.denom());
            }
        }
    }
    if num_gcd != num::BigInt::from(0) {
        let scale = Scalar::Rational(crate::scalars::Rat::new(den_lcm, num_gcd));
        for (_, c) in flattened.iter_mut() {
            *c = c.mul_scalar(&scale);
        }
    }

    let lifted = WeylOperator::from_terms(
        ring.clone(),
        FieldContext::Rationals,
        op.block(),
        flattened,
    );
    // keep the print-leading coefficient positive
    if let Some((_, coeff)) = lifted.sorted_terms().first() {
        if let Some((_, lead)) = crate::polyring::gcd::leading_term_grevlex(coeff) {
            if let Scalar::Rational(r) = lead {
                if r < crate::scalars::Rat::from(num::BigInt::from(0)) {
                    return Ok(lifted.scale(&Scalar::Rational(crate::scalars::rat_int(-1))));
                }
            }
        }
    }
    Ok(lifted)
}

/// Symbolic Noetherian operators for the P-primary component of an ideal
/// of any dimension: select independent variables from the prime, extend
/// to the fraction field, run the zero-dimensional algorithm, and lift.
pub fn noetherian_operators(
    ideal: &[Polynomial],
    prime: &[Polynomial],
    order: &MonomialOrder,
    opts: &SymbolicOptions,
) -> Result<NoetherianOperatorSet> {
    noetherian_operators_with_basis(ideal, prime, order, opts).map(|(set, _)| set)
}

/// As [`noetherian_operators`], also returning the dual-space basis with
/// its Macaulay matrices for inspection.
pub fn noetherian_operators_with_basis(
    ideal: &[Polynomial],
    prime: &[Polynomial],
    order: &MonomialOrder,
    opts: &SymbolicOptions,
) -> Result<(NoetherianOperatorSet, DualSpaceBasis)> {
    let first = ideal
        .first()
        .ok_or_else(|| Error::InvalidInput("empty ideal".into()))?;
    let base_ring = first.ring().clone();
    let ring_order = MonomialOrder::of_kind(opts.ring_order, base_ring.num_vars());
    let prime_gb = buchberger(prime, ring_order)?;
    let (dim, independent) = match &opts.independent {
        Some(vars) => (vars.len(), vars.clone()),
        None => prime_gb.dimension_and_independent_set()?,
    };

    if dim == 0 {
        let qctx = QuotientContext::new(prime_gb)?;
        let basis = noetherian_operators_zero(ideal, &qctx, order, opts.d_max)?;
        let operators = basis
            .operators
            .iter()
            .map(|op| {
                op.map_coefficients(FieldContext::Rationals, |c| c.clone())
            })
            .collect();
        let set = NoetherianOperatorSet {
            operators,
            prime: prime.to_vec(),
            ideal: ideal.to_vec(),
            independent: Vec::new(),
            ring: base_ring,
        };
        return Ok((set, basis));
    }

    let prime_s = extend_to_fraction_field(prime, &independent)?;
    let ring_s = prime_s.ring().clone();
    let qctx = QuotientContext::new(prime_s)?;
    let ideal_s: Vec<Polynomial> = ideal
        .iter()
        .map(|g| extend_polynomial(g, &ring_s))
        .collect::<Result<_>>()?;
    let basis = noetherian_operators_zero(&ideal_s, &qctx, order, opts.d_max)?;
    let operators: Vec<WeylOperator> = basis
        .operators
        .iter()
        .map(|op| {
            // representative coefficients live over K(t); reinterpret and lift
            let pre = op.map_coefficients(
                FieldContext::RationalFunctions(ring_s.clone()),
                |c| c.clone(),
            );
            lift_operator(&pre)
        })
        .collect::<Result<_>>()?;
    let set = NoetherianOperatorSet {
        operators,
        prime: prime.to_vec(),
        ideal: ideal.to_vec(),
        independent,
        ring: ring_s,
    };
    Ok((set, basis))
}

/// Generators of I + P^(d+1), used by the truncation identity
/// dim D^{(d)}[I] = dim D[I + P^{d+1}].
pub fn add_prime_power(
    ideal: &[Polynomial],
    prime: &[Polynomial],
    d_plus_one: u32,
) -> Vec<Polynomial> {
    let mut out = ideal.to_vec();
    let mut power: Vec<Polynomial> = prime.to_vec();
    for _ in 1..d_plus_one {
        let mut next = Vec::new();
        for a in &power {
            for b in prime {
                next.push(a.mul(b));
            }
        }
        power = dedup_polys(next);
    }
    out.extend(power);
    out
}

fn dedup_polys(polys: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = Vec::new();
    for p in polys {
        if !out.iter().any(|q| q == &p) {
            out.push(p);
        }
    }
    out
}

/// Verify the defining property on a batch of sample polynomials: f ∈ I
/// (by normal form against a basis of I) exactly when every operator maps
/// f into the prime. Returns the number of (member, nonmember) samples.
pub fn check_defining_property(
    set: &NoetherianOperatorSet,
    ideal_gb: &GroebnerBasis,
    prime_gb: &GroebnerBasis,
    samples: &[Polynomial],
) -> Result<(usize, usize)> {
    let mut members = 0;
    let mut nonmembers = 0;
    for f in samples {
        let in_ideal = normal_form(f, ideal_gb).is_zero();
        let mut annihilated = true;
        for op in &set.operators {
            let applied = op.apply(f)?;
            let reduced = match applied.ctx() {
                FieldContext::Rationals => normal_form(&applied, prime_gb),
                _ => {
                    return Err(Error::ContextMismatch(
                        "defining-property check expects lifted operators".into(),
                    ))
                }
            };
            if !reduced.is_zero() {
                annihilated = false;
                break;
            }
        }
        if in_ideal != annihilated {
            return Err(Error::InvalidInput(format!(
                "defining property failed on {f}: membership {in_ideal}, annihilated {annihilated}"
            )));
        }
        if in_ideal {
            members += 1;
        } else {
            nonmembers += 1;
        }
    }
    Ok((members, nonmembers))
}
