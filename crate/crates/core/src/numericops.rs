//! Numerical pipeline: specialized Noetherian operators at witness points,
//! multivariate rational-function interpolation, and the assembly of
//! numerically computed operator sets.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;

use crate::dualspace::NoetherianOperatorSet;
use crate::error::{Error, Result};
use crate::groebner::MonomialOrder;
use crate::linalg::{numeric_kernel, reduced_column_echelon, KernelBasis, LabeledMatrix};
use crate::polyring::{
    monomials_up_to_degree, DiffBlock, Monomial, Polynomial, SpecializedOperator, VariableRing,
    WeylOperator,
};
use crate::scalars::{rationalize, FieldContext, RationalFunction, Scalar, DEFAULT_TOLERANCE};

/// A numeric point on one irreducible component of the variety.
#[derive(Clone, Debug)]
pub struct WitnessPoint {
    pub coords: Vec<Complex64>,
    pub component: Option<String>,
    pub residual: f64,
}

impl WitnessPoint {
    pub fn new(coords: Vec<Complex64>, component: Option<String>) -> Self {
        WitnessPoint {
            coords,
            component,
            residual: 0.0,
        }
    }

    /// Attach the residual max |f_i(p)| against the given generators and
    /// fail when the point is off the variety.
    pub fn validated(
        mut self,
        generators: &[Polynomial],
        point_tol: f64,
    ) -> Result<WitnessPoint> {
        let mut worst = 0.0_f64;
        for f in generators {
            let v = f.eval_complex(&self.coords, DEFAULT_TOLERANCE)?;
            worst = worst.max(v.norm());
        }
        self.residual = worst;
        if worst > point_tol {
            return Err(Error::NotOnVariety(worst));
        }
        Ok(self)
    }
}

#[derive(Clone, Debug)]
pub struct NumericOptions {
    /// Relative singular-value threshold for numeric kernels and the
    /// coefficient drop tolerance.
    pub tol: f64,
    /// Residual tolerance for the point-on-variety check.
    pub point_tol: f64,
    /// Cap on the Macaulay ∂-degree loop.
    pub d_max: u32,
    /// Cap on the interpolation ansatz degree.
    pub interp_d_max: u32,
}

impl Default for NumericOptions {
    fn default() -> Self {
        NumericOptions {
            tol: DEFAULT_TOLERANCE,
            point_tol: 1e-6,
            d_max: 20,
            interp_d_max: 10,
        }
    }
}

/// Shared symbolic tables for specializing one ideal at many points: the
/// derivative polynomials of the Macaulay rows only depend on the degree.
pub struct SpecializationEngine {
    generators: Vec<Polynomial>,
    ring: Arc<VariableRing>,
    order: MonomialOrder,
    tables: BTreeMap<u32, DegreeTable>,
}

struct DegreeTable {
    cols: Vec<Monomial>,
    row_labels: Vec<String>,
    /// derivative polynomials per row and column
    rows: Vec<Vec<Polynomial>>,
}

impl SpecializationEngine {
    pub fn new(generators: &[Polynomial], order: MonomialOrder) -> Result<Self> {
        let first = generators
            .first()
            .ok_or_else(|| Error::InvalidInput("empty ideal".into()))?;
        Ok(SpecializationEngine {
            generators: generators.to_vec(),
            ring: first.ring().clone(),
            order,
            tables: BTreeMap::new(),
        })
    }

    pub fn ring(&self) -> &Arc<VariableRing> {
        &self.ring
    }

    fn table(&mut self, d: u32) -> &DegreeTable {
        let ring = self.ring.clone();
        let n = ring.num_vars();
        let order = self.order.clone();
        let generators = self.generators.clone();
        self.tables.entry(d).or_insert_with(|| {
            let all_vars: Vec<usize> = (0..n).collect();
            let dependent = ring.dependent();
            let mut cols = monomials_up_to_degree(n, &dependent, d);
            order.sort(&mut cols);
            // multipliers range over every variable, including the
            // independent block
            let mut multipliers = monomials_up_to_degree(n, &all_vars, d.saturating_sub(1));
            order.sort(&mut multipliers);
            let mut row_labels = Vec::new();
            let mut rows = Vec::new();
            for alpha in &multipliers {
                for f in &generators {
                    let row_poly = f.mul_monomial(alpha);
                    let derived: Vec<Polynomial> = cols
                        .iter()
                        .map(|beta| row_poly.derivative_monomial(beta))
                        .collect();
                    row_labels.push(row_poly.to_string());
                    rows.push(derived);
                }
            }
            DegreeTable {
                cols,
                row_labels,
                rows,
            }
        })
    }

    /// The numeric Macaulay matrix at one point.
    pub fn matrix_at(
        &mut self,
        d: u32,
        point: &WitnessPoint,
        tol: f64,
    ) -> Result<LabeledMatrix> {
        let table = self.table(d);
        let mut entries = Vec::with_capacity(table.rows.len());
        for row in &table.rows {
            let mut out = Vec::with_capacity(row.len());
            for p in row {
                out.push(Scalar::Complex(p.eval_complex(&point.coords, tol)?));
            }
            entries.push(out);
        }
        Ok(LabeledMatrix {
            ctx: FieldContext::ApproxComplex { tolerance: tol },
            row_labels: table.row_labels.clone(),
            col_labels: table.cols.clone(),
            entries,
        })
    }

    /// Specialized Noetherian operators at one witness point: grow the
    /// degree until the numeric kernel dimension stabilizes, then
    /// echelon-normalize.
    pub fn operators_at_point(
        &mut self,
        point: &WitnessPoint,
        opts: &NumericOptions,
    ) -> Result<Vec<SpecializedOperator>> {
        let point = point
            .clone()
            .validated(&self.generators, opts.point_tol)?;
        let mut prev_dim = 0usize;
        for d in 1..=opts.d_max {
            let matrix = self.matrix_at(d, &point, opts.tol)?;
            let kernel = numeric_kernel(&matrix, opts.tol)?;
            if kernel.dim() == prev_dim {
                let echelon = reduced_column_echelon(&kernel, &self.order)?;
                return Ok(specialized_from_kernel(&echelon, &self.ring));
            }
            prev_dim = kernel.dim();
        }
        Err(Error::NoStabilization(opts.d_max as usize))
    }
}

fn specialized_from_kernel(
    kernel: &KernelBasis,
    ring: &Arc<VariableRing>,
) -> Vec<SpecializedOperator> {
    kernel
        .vectors
        .iter()
        .map(|v| {
            let mut op = SpecializedOperator::new(ring.clone());
            for (label, s) in kernel.col_labels.iter().zip(v) {
                if let Scalar::Complex(z) = s {
                    op.insert(label.clone(), *z);
                }
            }
            op
        })
        .collect()
}

/// Re-normalize a set of specialized operators to the canonical echelon
/// basis of their span; used to compare operator sets that were produced
/// through different routes.
pub fn echelon_normalize_specialized(
    ops: &[SpecializedOperator],
    order: &MonomialOrder,
    tol: f64,
) -> Result<Vec<SpecializedOperator>> {
    if ops.is_empty() {
        return Ok(Vec::new());
    }
    let ring = ops[0].ring().clone();
    let mut support: Vec<Monomial> = Vec::new();
    for op in ops {
        for (m, _) in op.terms() {
            if !support.contains(m) {
                support.push(m.clone());
            }
        }
    }
    order.sort(&mut support);
    let vectors: Vec<Vec<Scalar>> = ops
        .iter()
        .map(|op| {
            support
                .iter()
                .map(|m| Scalar::Complex(op.coeff(m).unwrap_or(Complex64::new(0.0, 0.0))))
                .collect()
        })
        .collect();
    let kernel = KernelBasis {
        ctx: FieldContext::ApproxComplex { tolerance: tol },
        col_labels: support,
        vectors,
        echelon: false,
    };
    let echelon = reduced_column_echelon(&kernel, order)?;
    Ok(specialized_from_kernel(&echelon, &ring))
}

/// Entry point matching Algorithm 3 for a single point.
pub fn noetherian_operators_at_point(
    generators: &[Polynomial],
    point: &WitnessPoint,
    order: &MonomialOrder,
    opts: &NumericOptions,
) -> Result<Vec<SpecializedOperator>> {
    let mut engine = SpecializationEngine::new(generators, order.clone())?;
    engine.operators_at_point(point, opts)
}

/// A rational-function coefficient recovered by interpolation, with the
/// worst relative error over the held-out validation points.
#[derive(Clone, Debug)]
pub struct InterpolatedCoefficient {
    pub numerator: Polynomial,
    pub denominator: Polynomial,
    pub residual: f64,
}

impl InterpolatedCoefficient {
    pub fn to_ratfn(&self) -> Result<RationalFunction> {
        RationalFunction::new(self.numerator.clone(), self.denominator.clone())
    }
}

/// The interpolation ansatz: explicit numerator and denominator monomial
/// supports.
#[derive(Clone, Debug)]
pub struct InterpolationAnsatz {
    pub ring: Arc<VariableRing>,
    pub numerator_monomials: Vec<Monomial>,
    pub denominator_monomials: Vec<Monomial>,
}

impl InterpolationAnsatz {
    /// Degree-d ansatz: numerator monomials in every variable, denominator
    /// monomials in the independent block only.
    pub fn degree(ring: &Arc<VariableRing>, d: u32) -> Self {
        let n = ring.num_vars();
        let all: Vec<usize> = (0..n).collect();
        let indep = ring.independent().to_vec();
        InterpolationAnsatz {
            ring: ring.clone(),
            numerator_monomials: monomials_up_to_degree(n, &all, d),
            denominator_monomials: monomials_up_to_degree(n, &indep, d),
        }
    }

    pub fn size(&self) -> usize {
        self.numerator_monomials.len() + self.denominator_monomials.len()
    }
}

fn eval_monomial(m: &Monomial, coords: &[Complex64]) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for (i, &e) in m.exponents().iter().enumerate() {
        for _ in 0..e {
            acc *= coords[i];
        }
    }
    acc
}

/// Evaluate Σ c_j·m_j at a point, also returning Σ |c_j·m_j| as a scale
/// for vanishing checks.
fn eval_combo(
    monomials: &[Monomial],
    coeffs: &[Complex64],
    coords: &[Complex64],
) -> (Complex64, f64) {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    for (m, c) in monomials.iter().zip(coeffs) {
        let term = c * eval_monomial(m, coords);
        acc += term;
        scale += term.norm();
    }
    (acc, scale)
}

/// Multivariate rational-function interpolation: find f/g with the given
/// monomial supports matching the sampled values. Kernel columns whose
/// numerator or denominator vanishes at the validation points are
/// discarded; the survivor is validated against every sample before being
/// rationalized.
pub fn rational_interpolation(
    points: &[WitnessPoint],
    values: &[Complex64],
    ansatz: &InterpolationAnsatz,
    validation: &[(WitnessPoint, Complex64)],
    opts: &NumericOptions,
) -> Result<InterpolatedCoefficient> {
    if points.len() != values.len() {
        return Err(Error::InvalidInput(
            "point and value counts differ".into(),
        ));
    }
    if points.len() < ansatz.size() {
        return Err(Error::NeedMorePoints(format!(
            "{} interpolation rows for {} unknowns",
            points.len(),
            ansatz.size()
        )));
    }
    if validation.is_empty() {
        return Err(Error::NeedMorePoints(
            "rational interpolation reserves validation points".into(),
        ));
    }

    let nn = ansatz.numerator_monomials.len();
    let nd = ansatz.denominator_monomials.len();
    let mut entries = Vec::with_capacity(points.len());
    for (p, v) in points.iter().zip(values) {
        let mut row = Vec::with_capacity(nn + nd);
        for m in &ansatz.numerator_monomials {
            row.push(Scalar::Complex(eval_monomial(m, &p.coords)));
        }
        for m in &ansatz.denominator_monomials {
            row.push(Scalar::Complex(-v * eval_monomial(m, &p.coords)));
        }
        entries.push(row);
    }
    let col_labels: Vec<Monomial> = ansatz
        .numerator_monomials
        .iter()
        .chain(&ansatz.denominator_monomials)
        .cloned()
        .collect();
    let matrix = LabeledMatrix {
        ctx: FieldContext::ApproxComplex { tolerance: opts.tol },
        row_labels: points.iter().map(|p| format!("{:?}", p.coords)).collect(),
        col_labels,
        entries,
    };
    let kernel = numeric_kernel(&matrix, opts.tol)?;
    // reduce the kernel to its canonical echelon basis, scanning the
    // denominator block first: monomials vanishing identically on the
    // component then separate into their own basis vectors, which the
    // vanishing filter below discards
    let scan: Vec<usize> = (0..nn + nd).rev().collect();
    let reduced = crate::linalg::rcef_core(
        kernel.vectors.clone(),
        nn + nd,
        &kernel.ctx,
        &scan,
    )?;
    'columns: for (_, v) in &reduced {
        let coeffs: Vec<Complex64> = v
            .iter()
            .map(|s| match s {
                Scalar::Complex(z) => *z,
                _ => unreachable!("numeric kernel"),
            })
            .collect();
        let (fc, gc) = coeffs.split_at(nn);
        // discard candidates vanishing at the generic check points
        for (vp, _) in validation {
            let (fv, fs) = eval_combo(&ansatz.numerator_monomials, fc, &vp.coords);
            let (gv, gs) = eval_combo(&ansatz.denominator_monomials, gc, &vp.coords);
            if fv.norm() <= opts.tol * (1.0 + fs) || gv.norm() <= opts.tol * (1.0 + gs) {
                continue 'columns;
            }
        }
        // normalize on the largest denominator coefficient
        let pivot = gc
            .iter()
            .enumerate()
            .max_by(|(_, a), (_, b)| a.norm().total_cmp(&b.norm()))
            .map(|(i, _)| i)
            .unwrap();
        if gc[pivot].norm() == 0.0 {
            continue 'columns;
        }
        let inv = gc[pivot].inv();
        let fc: Vec<Complex64> = fc.iter().map(|z| z * inv).collect();
        let gc: Vec<Complex64> = gc.iter().map(|z| z * inv).collect();

        // fidelity at every interpolation and validation point
        let mut residual = 0.0_f64;
        let mut ok = true;
        let all_checks = points
            .iter()
            .zip(values.iter())
            .chain(validation.iter().map(|(p, v)| (p, v)));
        for (p, val) in all_checks {
            let (fv, _) = eval_combo(&ansatz.numerator_monomials, &fc, &p.coords);
            let (gv, gs) = eval_combo(&ansatz.denominator_monomials, &gc, &p.coords);
            if gv.norm() <= opts.tol * (1.0 + gs) {
                ok = false;
                break;
            }
            let err = (fv / gv - val).norm() / (1.0 + val.norm());
            residual = residual.max(err);
            if err > 1e-6 {
                ok = false;
                break;
            }
        }
        if !ok {
            continue 'columns;
        }

        match rationalize_pair(ansatz, &fc, &gc, opts) {
            Ok((num, den)) => {
                return Ok(InterpolatedCoefficient {
                    numerator: num,
                    denominator: den,
                    residual,
                })
            }
            Err(_) => continue 'columns,
        }
    }
    Err(Error::InterpolationFailed(format!(
        "no kernel column of the {}-unknown ansatz survived the vanishing checks",
        ansatz.size()
    )))
}

fn rationalize_pair(
    ansatz: &InterpolationAnsatz,
    fc: &[Complex64],
    gc: &[Complex64],
    opts: &NumericOptions,
) -> Result<(Polynomial, Polynomial)> {
    let ring = ansatz.ring.clone();
    let build = |mons: &[Monomial], cs: &[Complex64]| -> Result<Polynomial> {
        let mut p = Polynomial::zero(ring.clone(), FieldContext::Rationals);
        for (m, z) in mons.iter().zip(cs) {
            if z.norm() <= opts.tol {
                continue;
            }
            if z.im.abs() > opts.tol * (1.0 + z.norm()) {
                return Err(Error::InterpolationFailed(format!(
                    "coefficient {z} is not real up to tolerance"
                )));
            }
            p.add_term(m.clone(), Scalar::Rational(rationalize(z.re, 1_000_000, 1e-6)));
        }
        Ok(p)
    };
    Ok((
        build(&ansatz.numerator_monomials, fc)?,
        build(&ansatz.denominator_monomials, gc)?,
    ))
}

/// Numerically computed Noetherian operators: run the specialization at
/// every point, match terms across points by ∂-monomial, and interpolate
/// each coefficient with an escalating ansatz degree.
pub fn numerical_noetherian_operators(
    generators: &[Polynomial],
    points: &[WitnessPoint],
    order: &MonomialOrder,
    opts: &NumericOptions,
) -> Result<NoetherianOperatorSet> {
    numerical_noetherian_operators_with_residuals(generators, points, order, opts)
        .map(|(set, _)| set)
}

/// As [`numerical_noetherian_operators`], also returning per-operator maps
/// from the rendered ∂-monomial to the interpolation residual.
pub fn numerical_noetherian_operators_with_residuals(
    generators: &[Polynomial],
    points: &[WitnessPoint],
    order: &MonomialOrder,
    opts: &NumericOptions,
) -> Result<(NoetherianOperatorSet, Vec<std::collections::BTreeMap<String, f64>>)> {
    if points.len() < 3 {
        return Err(Error::NeedMorePoints(
            "need at least one interpolation point plus two validation points".into(),
        ));
    }
    let mut engine = SpecializationEngine::new(generators, order.clone())?;
    let ring = engine.ring().clone();

    let mut specializations = Vec::with_capacity(points.len());
    for p in points {
        specializations.push(engine.operators_at_point(p, opts)?);
    }
    let count = specializations[0].len();
    for (i, s) in specializations.iter().enumerate() {
        if s.len() != count {
            return Err(Error::InconsistentSpecializations(format!(
                "point 0 yields {count} operators, point {i} yields {}",
                s.len()
            )));
        }
    }

    // split: last two points are held out for validation
    let n_interp = points.len() - 2;
    let (interp_points, validation_points) = points.split_at(n_interp);

    let mut operators = Vec::with_capacity(count);
    let mut residuals = Vec::with_capacity(count);
    for k in 0..count {
        // union of ∂-supports across points; a term absent at a point
        // contributes the value 0 there
        let mut support: Vec<Monomial> = Vec::new();
        for s in &specializations {
            for (m, _) in s[k].terms() {
                if !support.contains(m) {
                    support.push(m.clone());
                }
            }
        }
        order.sort(&mut support);
        let mut op = WeylOperator::zero(
            ring.clone(),
            FieldContext::RationalFunctions(ring.clone()),
            DiffBlock::Dependent,
        );
        let mut op_residuals = std::collections::BTreeMap::new();
        for dmon in &support {
            let all_values: Vec<Complex64> = specializations
                .iter()
                .map(|s| s[k].coeff(dmon).unwrap_or(Complex64::new(0.0, 0.0)))
                .collect();
            let interp_values = &all_values[..n_interp];
            let validation: Vec<(WitnessPoint, Complex64)> = validation_points
                .iter()
                .cloned()
                .zip(all_values[n_interp..].iter().copied())
                .collect();

            let coeff = interpolate_term(
                &ring,
                interp_points,
                interp_values,
                &validation,
                opts,
            )?;
            let rf = coeff.to_ratfn()?;
            let poly = ratfn_coefficient_poly(&ring, &rf)?;
            op_residuals.insert(
                crate::polyring::monomial_string(dmon, &ring, "d"),
                coeff.residual,
            );
            op.add_term(dmon.clone(), poly);
        }
        operators.push(op);
        residuals.push(op_residuals);
    }
    let set = NoetherianOperatorSet {
        operators,
        prime: Vec::new(),
        ideal: generators.to_vec(),
        independent: ring.independent().to_vec(),
        ring,
    };
    Ok((set, residuals))
}

fn interpolate_term(
    ring: &Arc<VariableRing>,
    points: &[WitnessPoint],
    values: &[Complex64],
    validation: &[(WitnessPoint, Complex64)],
    opts: &NumericOptions,
) -> Result<InterpolatedCoefficient> {
    let mut last_err = None;
    for d in 0..=opts.interp_d_max {
        let ansatz = InterpolationAnsatz::degree(ring, d);
        if points.len() < ansatz.size() {
            break;
        }
        match rational_interpolation(points, values, &ansatz, validation, opts) {
            Ok(c) => return Ok(c),
            Err(e @ Error::InterpolationFailed(_)) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap_or_else(|| {
        Error::InterpolationFailed("ansatz degree cap exhausted or not enough points".into())
    }))
}

/// Turn f/g (numerator over t and x, denominator over t) into the
/// coefficient polynomial Σ_β (f_β(t)/g)·x^β of a Weyl operator.
fn ratfn_coefficient_poly(
    ring: &Arc<VariableRing>,
    rf: &RationalFunction,
) -> Result<Polynomial> {
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
        let coeff = RationalFunction::new(t_num, rf.den().clone())?;
        out.add_term(
            Monomial::from_exponents(x_exps),
            Scalar::RatFn(coeff),
        );
    }
    Ok(out)
}
