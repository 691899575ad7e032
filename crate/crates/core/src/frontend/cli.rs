//! CLI wiring: one subcommand per workflow, text output on stdout, JSON
//! documents behind `--out`, machine-readable errors on stderr.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::driver::{
    apply_to_generators, membership_test, numerical_primary_decomposition, transform_operators,
    ComponentDescription, LinearChange,
};
use crate::dualspace::{NoetherianOperatorSet, SymbolicOptions, DEFAULT_D_MAX};
use crate::error::{Error, Result};
use crate::groebner::{MonomialOrder, OrderKind};
use crate::linalg::LabeledMatrix;
use crate::numericops::{
    numerical_noetherian_operators_with_residuals, InterpolationAnsatz, NumericOptions,
    SpecializationEngine, WitnessPoint,
};
use crate::polyring::{Polynomial, VariableRing};
use crate::scalars::{rat, Rat};

use super::json::{
    components_document, operator_document, to_json_string, write_json, AtPointDoc,
    AtPointResult, CoeffJson, ComponentsDoc, ErrorDoc, OperatorDoc, PointJson, PointsDoc,
    RingDoc, SCHEMA_VERSION,
};
use super::parse::{parse_operator, parse_polynomial};
use super::problem::ProblemFile;

#[derive(Parser)]
#[command(
    name = "noethops",
    about = "Noetherian-operator representations of primary ideals",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Output JSON document path
    #[arg(long)]
    out: Option<PathBuf>,
    /// Numerical tolerance (relative singular-value threshold)
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Cap on the Macaulay ∂-degree loop
    #[arg(long, default_value_t = DEFAULT_D_MAX)]
    dmax: u32,
    /// Ring-side monomial order: grevlex, grlex or lex
    #[arg(long, default_value = "grevlex")]
    order: String,
    /// Comma-separated independent variables (overrides auto-detection)
    #[arg(long)]
    indep: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Symbolic Noetherian operators for the P-primary component
    Symbolic {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long)]
        prime: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
        /// Dump the final Macaulay matrix as CSV
        #[arg(long)]
        dump_matrix: Option<PathBuf>,
    },
    /// Specialized operators at each witness point
    AtPoint {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long)]
        points: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Standalone rational-function interpolation over sampled values
    Interpolate {
        #[arg(long)]
        points: PathBuf,
        /// Comma-separated values (rationals or floats), one per point
        #[arg(long)]
        values: String,
        /// Ansatz degree cap
        #[arg(long, default_value_t = 10)]
        degree: u32,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Noetherian operators via specialization and interpolation
    Numeric {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long)]
        points: PathBuf,
        /// Cap on the interpolation ansatz degree
        #[arg(long, default_value_t = 10)]
        interp_dmax: u32,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Per-component numerical primary decomposition over grouped points
    Decompose {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long)]
        points: PathBuf,
        #[arg(long, default_value_t = 10)]
        interp_dmax: u32,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Probabilistic ideal-membership test against component operators
    Member {
        /// Operator document (single set or components)
        #[arg(long)]
        ops: PathBuf,
        #[arg(long)]
        points: PathBuf,
        /// Polynomial expression to test
        #[arg(long)]
        poly: String,
        /// Witness points evaluated per component
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Transport operators through a linear change of coordinates
    Transform {
        #[arg(long)]
        ops: PathBuf,
        /// JSON file {"matrix": [["1","0"],["0","1"]]}
        #[arg(long)]
        matrix: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Apply every operator to every generator (the ideal N(G))
    Apply {
        #[arg(long)]
        ops: PathBuf,
        #[arg(long)]
        ideal: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
    },
}

/// Classified CLI failure: usage errors exit 2, domain errors exit 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) => CliError::Usage(e.to_string()),
            other => CliError::Domain(other),
        }
    }
}

/// Run the CLI; returns the process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return 2;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            2
        }
        Err(CliError::Domain(e)) => {
            let doc = ErrorDoc::from_error(&e);
            match to_json_string(&doc) {
                Ok(s) => eprint!("{s}"),
                Err(_) => eprintln!("{e}"),
            }
            1
        }
    }
}

fn dispatch(cli: Cli) -> std::result::Result<(), CliError> {
    match cli.command {
        Command::Symbolic {
            ideal,
            prime,
            common,
            dump_matrix,
        } => cmd_symbolic(&ideal, &prime, &common, dump_matrix.as_deref()),
        Command::AtPoint {
            ideal,
            points,
            common,
        } => cmd_at_point(&ideal, &points, &common),
        Command::Interpolate {
            points,
            values,
            degree,
            common,
        } => cmd_interpolate(&points, &values, degree, &common),
        Command::Numeric {
            ideal,
            points,
            interp_dmax,
            common,
        } => cmd_numeric(&ideal, &points, interp_dmax, &common),
        Command::Decompose {
            ideal,
            points,
            interp_dmax,
            common,
        } => cmd_decompose(&ideal, &points, interp_dmax, &common),
        Command::Member {
            ops,
            points,
            poly,
            trials,
            common,
        } => cmd_member(&ops, &points, &poly, trials, &common),
        Command::Transform {
            ops,
            matrix,
            common,
        } => cmd_transform(&ops, &matrix, &common),
        Command::Apply { ops, ideal, common } => cmd_apply(&ops, &ideal, &common),
    }
}

fn load_file(path: &Path) -> std::result::Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn order_kind(common: &CommonOpts) -> std::result::Result<OrderKind, CliError> {
    OrderKind::parse(&common.order)
        .ok_or_else(|| CliError::Usage(format!("unknown order `{}`", common.order)))
}

fn parse_indep(
    flag: &Option<String>,
    ring: &Arc<VariableRing>,
) -> std::result::Result<Option<Vec<usize>>, CliError> {
    let Some(s) = flag else { return Ok(None) };
    let mut idx = Vec::new();
    for name in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match ring.index_of(name) {
            Some(i) => idx.push(i),
            None => return Err(CliError::Usage(format!("unknown variable `{name}`"))),
        }
    }
    idx.sort_unstable();
    idx.dedup();
    Ok(Some(idx))
}

/// Load an ideal file, resolving the independent split from the flag, the
/// file declaration, or (for numeric workflows) the ideal's own
/// leading-term ideal.
fn load_ideal(
    path: &Path,
    common: &CommonOpts,
    auto_split: bool,
) -> std::result::Result<(Arc<VariableRing>, Vec<Polynomial>), CliError> {
    let text = load_file(path)?;
    let pf = ProblemFile::from_str(&text, None)?;
    let indep = match parse_indep(&common.indep, &pf.ring)? {
        Some(idx) => Some(idx),
        None => pf.declared_independent.clone(),
    };
    let indep = match (indep, auto_split) {
        (Some(idx), _) => idx,
        (None, false) => Vec::new(),
        (None, true) => {
            let kind = order_kind(common)?;
            let order = MonomialOrder::of_kind(kind, pf.ring.num_vars());
            let gb = crate::groebner::buchberger(&pf.generators, order).map_err(Error::from)?;
            let (_, indep) = gb.dimension_and_independent_set().map_err(Error::from)?;
            indep
        }
    };
    let ring = pf.ring.with_independent(&indep);
    let gens: Vec<Polynomial> = pf.generators.iter().map(|g| g.with_ring(ring.clone())).collect();
    Ok((ring, gens))
}

fn write_optional_json<T: Serialize>(
    out: &Option<PathBuf>,
    value: &T,
) -> std::result::Result<(), CliError> {
    if let Some(path) = out {
        write_json(path, value)?;
    }
    Ok(())
}

fn cmd_symbolic(
    ideal_path: &Path,
    prime_path: &Path,
    common: &CommonOpts,
    dump_matrix: Option<&Path>,
) -> std::result::Result<(), CliError> {
    let ideal_text = load_file(ideal_path)?;
    let prime_text = load_file(prime_path)?;
    let ideal_pf = ProblemFile::from_str(&ideal_text, None)?;
    let prime_pf = ProblemFile::from_str(&prime_text, Some(&ideal_pf.ring))?;
    let indep = match parse_indep(&common.indep, &ideal_pf.ring)? {
        Some(idx) => Some(idx),
        None => ideal_pf
            .declared_independent
            .clone()
            .or(prime_pf.declared_independent.clone()),
    };
    let opts = SymbolicOptions {
        d_max: common.dmax,
        independent: indep,
        ring_order: order_kind(common)?,
    };
    let order = MonomialOrder::dmonomial(ideal_pf.ring.num_vars());
    let (set, basis) = crate::dualspace::noetherian_operators_with_basis(
        &ideal_pf.generators,
        &prime_pf.generators,
        &order,
        &opts,
    )?;
    for op in &set.operators {
        println!("{op}");
    }
    if let Some(path) = dump_matrix {
        if let Some(matrix) = basis.matrices.last() {
            std::fs::write(path, matrix_csv(matrix)).map_err(Error::from)?;
        }
    }
    let doc = operator_document(&set, false, None);
    write_optional_json(&common.out, &doc)
}

fn matrix_csv(matrix: &LabeledMatrix) -> String {
    let mut out = String::new();
    out.push_str("row");
    for c in &matrix.col_labels {
        out.push(',');
        out.push('"');
        out.push_str(&crate::polyring::monomial_string(
            c,
            matrix_ring(matrix),
            "d",
        ));
        out.push('"');
    }
    out.push('\n');
    for (label, row) in matrix.row_labels.iter().zip(&matrix.entries) {
        out.push('"');
        out.push_str(label);
        out.push('"');
        for e in row {
            out.push(',');
            out.push('"');
            out.push_str(&e.to_string());
            out.push('"');
        }
        out.push('\n');
    }
    out
}

fn matrix_ring(matrix: &LabeledMatrix) -> &VariableRing {
    match &matrix.ctx {
        crate::scalars::FieldContext::Quotient(q) => q.gb().ring(),
        _ => panic!("matrix dump targets symbolic matrices"),
    }
}





fn ring_doc(ring: &Arc<VariableRing>) -> RingDoc {
    RingDoc {
        variables: ring.names().to_vec(),
        independent: ring
            .independent()
            .iter()
            .map(|&i| ring.name(i).to_string())
            .collect(),
    }
}

fn cmd_at_point(
    ideal_path: &Path,
    points_path: &Path,
    common: &CommonOpts,
) -> std::result::Result<(), CliError> {
    let (ring, gens) = load_ideal(ideal_path, common, true)?;
    let points_doc = PointsDoc::load(points_path).map_err(usage_if_io)?;
    let points = points_doc.to_witness_points(&ring)?;
    if points.is_empty() {
        return Err(CliError::Usage("points file has no points".into()));
    }
    let opts = NumericOptions {
        tol: common.tol,
        d_max: common.dmax,
        ..NumericOptions::default()
    };
    let order = MonomialOrder::dmonomial(ring.num_vars());
    let mut engine = SpecializationEngine::new(&gens, order)?;
    let mut results = Vec::new();
    for p in &points {
        let ops = engine.operators_at_point(p, &opts)?;
        println!("point {}:", format_point(p));
        for op in &ops {
            println!("  {op}");
        }
        let coefficients = ops
            .iter()
            .map(|o| {
                o.terms()
                    .map(|(m, v)| CoeffJson {
                        dmonomial: crate::polyring::monomial_string(m, &ring, "d"),
                        value: [v.re, v.im],
                    })
                    .collect()
            })
            .collect();
        results.push(AtPointResult {
            point: PointJson {
                coords: p.coords.iter().map(|z| [z.re, z.im]).collect(),
                component: p.component.clone(),
            },
            multiplicity: ops.len(),
            operators: ops.iter().map(|o| o.to_string()).collect(),
            coefficients,
        });
    }
    let doc = AtPointDoc {
        schema: SCHEMA_VERSION,
        ring: ring_doc(&ring),
        numeric: true,
        results,
    };
    write_optional_json(&common.out, &doc)
}

fn format_point(p: &WitnessPoint) -> String {
    let parts: Vec<String> = p
        .coords
        .iter()
        .map(|z| {
            if z.im == 0.0 {
                format!("{}", z.re)
            } else {
                format!("{}+{}i", z.re, z.im)
            }
        })
        .collect();
    format!("({})", parts.join(", "))
}

fn usage_if_io(e: Error) -> CliError {
    CliError::from(e)
}

#[derive(Serialize, Deserialize)]
struct InterpolateDoc {
    schema: u32,
    numerator: String,
    denominator: String,
    residual: f64,
}

fn cmd_interpolate(
    points_path: &Path,
    values: &str,
    degree: u32,
    common: &CommonOpts,
) -> std::result::Result<(), CliError> {
    let points_doc = PointsDoc::load(points_path).map_err(usage_if_io)?;
    let ring = VariableRing::new(points_doc.variables.clone());
    let indep = parse_indep(&common.indep, &ring)?.unwrap_or_default();
    let ring = ring.with_independent(&indep);
    let points = points_doc.to_witness_points(&ring)?;
    let values: Vec<Complex64> = values
        .split(',')
        .map(|s| parse_value_literal(s.trim()))
        .collect::<std::result::Result<_, CliError>>()?;
    if values.len() != points.len() {
        return Err(CliError::Usage(format!(
            "{} values for {} points",
            values.len(),
            points.len()
        )));
    }
    if points.len() < 3 {
        return Err(CliError::Usage(
            "need at least 3 points (two are reserved for validation)".into(),
        ));
    }
    let n_interp = points.len() - 2;
    let validation: Vec<(WitnessPoint, Complex64)> = points[n_interp..]
        .iter()
        .cloned()
        .zip(values[n_interp..].iter().copied())
        .collect();
    let opts = NumericOptions {
        tol: common.tol,
        ..NumericOptions::default()
    };
    let mut last: Option<Error> = None;
    for d in 0..=degree {
        let ansatz = InterpolationAnsatz::degree(&ring, d);
        if n_interp < ansatz.size() {
            break;
        }
        match crate::numericops::rational_interpolation(
            &points[..n_interp],
            &values[..n_interp],
            &ansatz,
            &validation,
            &opts,
        ) {
            Ok(coeff) => {
                println!("({})/({})", coeff.numerator, coeff.denominator);
                let doc = InterpolateDoc {
                    schema: SCHEMA_VERSION,
                    numerator: coeff.numerator.to_string(),
                    denominator: coeff.denominator.to_string(),
                    residual: coeff.residual,
                };
                return write_optional_json(&common.out, &doc);
            }
            Err(e @ Error::InterpolationFailed(_)) => last = Some(e),
            Err(e) => return Err(e.into()),
        }
    }
    Err(CliError::Domain(last.unwrap_or_else(|| {
        Error::InterpolationFailed("degree cap exhausted".into())
    })))
}

fn parse_value_literal(s: &str) -> std::result::Result<Complex64, CliError> {
    if let Some((n, d)) = s.split_once('/') {
        let n: f64 = n
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad value `{s}`")))?;
        let d: f64 = d
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad value `{s}`")))?;
        return Ok(Complex64::new(n / d, 0.0));
    }
    s.parse::<f64>()
        .map(|v| Complex64::new(v, 0.0))
        .map_err(|_| CliError::Usage(format!("bad value `{s}`")))
}

fn cmd_numeric(
    ideal_path: &Path,
    points_path: &Path,
    interp_dmax: u32,
    common: &CommonOpts,
) -> std::result::Result<(), CliError> {
    let (ring, gens) = load_ideal(ideal_path, common, true)?;
    let points_doc = PointsDoc::load(points_path).map_err(usage_if_io)?;
    let points = points_doc.to_witness_points(&ring)?;
    let opts = NumericOptions {
        tol: common.tol,
        d_max: common.dmax,
        interp_d_max: interp_dmax,
        ..NumericOptions::default()
    };
    let order = MonomialOrder::dmonomial(ring.num_vars());
    let (set, residuals) =
        numerical_noetherian_operators_with_residuals(&gens, &points, &order, &opts)?;
    for op in &set.operators {
        println!("{op}");
    }
    let doc = operator_document(&set, true, Some(residuals));
    write_optional_json(&common.out, &doc)
}

fn cmd_decompose(
    ideal_path: &Path,
    points_path: &Path,
    interp_dmax: u32,
    common: &CommonOpts,
) -> std::result::Result<(), CliError> {
    let (ring, gens) = load_ideal(ideal_path, common, true)?;
    let points_doc = PointsDoc::load(points_path).map_err(usage_if_io)?;
    let points = points_doc.to_witness_points(&ring)?;
    let opts = NumericOptions {
        tol: common.tol,
        d_max: common.dmax,
        interp_d_max: interp_dmax,
        ..NumericOptions::default()
    };
    let order = MonomialOrder::dmonomial(ring.num_vars());
    let components = numerical_primary_decomposition(&gens, &points, &order, &opts)?;
    for c in &components {
        match (&c.operators, &c.error) {
            (Some(set), _) => {
                println!("component {} ({} points):", c.id, c.points.len());
                for op in &set.operators {
                    println!("  {op}");
                }
            }
            (None, Some(e)) => println!("component {}: failed: {e}", c.id),
            (None, None) => {}
        }
    }
    let doc = components_document(&components);
    write_optional_json(&common.out, &doc)
}

#[derive(Serialize, Deserialize)]
struct MemberDoc {
    schema: u32,
    polynomial: String,
    per_component: BTreeMap<String, bool>,
    aggregate: bool,
}

fn cmd_member(
    ops_path: &Path,
    points_path: &Path,
    poly: &str,
    trials: usize,
    common: &CommonOpts,
) -> std::result::Result<(), CliError> {
    let (ring, sets) = load_operator_docs(ops_path)?;
    let points_doc = PointsDoc::load(points_path).map_err(usage_if_io)?;
    let points = points_doc.to_witness_points(&ring)?;
    let f = parse_polynomial(poly, &ring)?;
    let mut components = Vec::new();
    for (id, set) in sets {
        let comp_points: Vec<WitnessPoint> = points
            .iter()
            .filter(|p| match (&p.component, &id) {
                (Some(pid), Some(cid)) => pid == cid,
                _ => true,
            })
            .cloned()
            .collect();
        components.push(ComponentDescription {
            id: id.unwrap_or_else(|| "0".into()),
            points: comp_points,
            operators: Some(set),
            prime: None,
            error: None,
        });
    }
    println!("assumption: the ideal has no embedded components (isolated primes only)");
    let (per_component, aggregate) = membership_test(&f, &components, trials, common.tol)?;
    let mut map = BTreeMap::new();
    for (c, m) in components.iter().zip(&per_component) {
        println!(
            "component {}: {}",
            c.id,
            if *m { "member" } else { "non-member" }
        );
        map.insert(c.id.clone(), *m);
    }
    println!("aggregate: {}", if aggregate { "member" } else { "non-member" });
    let doc = MemberDoc {
        schema: SCHEMA_VERSION,
        polynomial: poly.to_string(),
        per_component: map,
        aggregate,
    };
    write_optional_json(&common.out, &doc)
}

/// Load one OperatorDoc or a ComponentsDoc; returns the shared ring and
/// the parsed sets tagged with component ids.
#[allow(clippy::type_complexity)]
fn load_operator_docs(
    path: &Path,
) -> std::result::Result<(Arc<VariableRing>, Vec<(Option<String>, NoetherianOperatorSet)>), CliError>
{
    let text = load_file(path)?;
    let docs: Vec<OperatorDoc> = match serde_json::from_str::<ComponentsDoc>(&text) {
        Ok(cd) => cd.components,
        Err(_) => vec![serde_json::from_str::<OperatorDoc>(&text).map_err(Error::from)?],
    };
    let first = docs
        .first()
        .ok_or_else(|| CliError::Usage("operator document has no components".into()))?;
    let base = VariableRing::new(first.ring.variables.clone());
    let indep: Vec<usize> = first
        .ring
        .independent
        .iter()
        .filter_map(|n| base.index_of(n))
        .collect();
    let ring = base.with_independent(&indep);
    let mut out = Vec::new();
    for doc in &docs {
        if doc.ring.variables != ring.names() {
            return Err(CliError::Usage(
                "component documents disagree on the ring".into(),
            ));
        }
        let operators = doc
            .operators
            .iter()
            .map(|s| parse_operator(s, &ring))
            .collect::<Result<Vec<_>>>()?;
        let prime = match &doc.prime {
            Some(ps) => ps
                .iter()
                .map(|s| parse_polynomial(s, &ring))
                .collect::<Result<Vec<_>>>()?,
            None => Vec::new(),
        };
        out.push((
            doc.component.clone(),
            NoetherianOperatorSet {
                operators,
                prime,
                ideal: Vec::new(),
                independent: ring.independent().to_vec(),
                ring: ring.clone(),
            },
        ));
    }
    Ok((ring, out))
}

#[derive(Deserialize)]
struct MatrixFile {
    matrix: Vec<Vec<serde_json::Value>>,
}

fn cmd_transform(
    ops_path: &Path,
    matrix_path: &Path,
    common: &CommonOpts,
) -> std::result::Result<(), CliError> {
    let (_ring, mut sets) = load_operator_docs(ops_path)?;
    if sets.len() != 1 {
        return Err(CliError::Usage(
            "transform expects a single operator set".into(),
        ));
    }
    let (_, set) = sets.remove(0);
    let text = load_file(matrix_path)?;
    let mf: MatrixFile = serde_json::from_str(&text).map_err(Error::from)?;
    let matrix: Vec<Vec<Rat>> = mf
        .matrix
        .iter()
        .map(|row| row.iter().map(parse_rat_value).collect())
        .collect::<std::result::Result<_, CliError>>()?;
    let change = LinearChange::new(matrix)?;
    let transformed = transform_operators(&set, &change)?;
    for op in &transformed.operators {
        println!("{op}");
    }
    let doc = operator_document(&transformed, false, None);
    write_optional_json(&common.out, &doc)
}

fn parse_rat_value(v: &serde_json::Value) -> std::result::Result<Rat, CliError> {
    match v {
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(rat(i, 1))
            } else {
                Err(CliError::Usage(format!(
                    "matrix entries must be integers or rational strings, got {n}"
                )))
            }
        }
        serde_json::Value::String(s) => {
            let s = s.trim();
            if let Some((a, b)) = s.split_once('/') {
                let a: i64 = a
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad rational `{s}`")))?;
                let b: i64 = b
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad rational `{s}`")))?;
                Ok(rat(a, b))
            } else {
                let a: i64 = s
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad rational `{s}`")))?;
                Ok(rat(a, 1))
            }
        }
        other => Err(CliError::Usage(format!("bad matrix entry {other}"))),
    }
}

#[derive(Serialize, Deserialize)]
struct ApplyDoc {
    schema: u32,
    polynomials: Vec<String>,
}

fn cmd_apply(
    ops_path: &Path,
    ideal_path: &Path,
    common: &CommonOpts,
) -> std::result::Result<(), CliError> {
    let (ring, mut sets) = load_operator_docs(ops_path)?;
    if sets.len() != 1 {
        return Err(CliError::Usage("apply expects a single operator set".into()));
    }
    let (_, set) = sets.remove(0);
    let text = load_file(ideal_path)?;
    let pf = ProblemFile::from_str(&text, Some(&ring))?;
    let gens: Vec<Polynomial> = pf
        .generators
        .iter()
        .map(|g| g.with_ring(ring.clone()))
        .collect();
    let result = apply_to_generators(&set, &gens)?;
    for p in &result {
        println!("{p}");
    }
    let doc = ApplyDoc {
        schema: SCHEMA_VERSION,
        polynomials: result.iter().map(|p| p.to_string()).collect(),
    };
    write_optional_json(&common.out, &doc)
}
