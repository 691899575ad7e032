//! Acceptance suite: one test per criterion, each printing a PASS line
//! with the checked bound once its assertions hold. Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use noethops::driver::{transform_operators, LinearChange};
use noethops::dualspace::{
    add_prime_power, macaulay_matrix, noetherian_operators, noetherian_operators_zero,
    NoetherianOperatorSet, SymbolicOptions,
};
use noethops::frontend::{parse_operator, parse_polynomial, AtPointDoc, OperatorDoc};
use noethops::groebner::{buchberger, normal_form, GroebnerBasis, MonomialOrder};
use noethops::linalg::exact_kernel;
use noethops::numericops::{NumericOptions, SpecializationEngine, WitnessPoint};
use noethops::polyring::{monomial_string, Monomial, Polynomial, VariableRing};
use noethops::scalars::{rat, FieldContext, QuotientContext, Scalar};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_noethops")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_rational(r: &mut ChaCha8Rng) -> Scalar {
    Scalar::Rational(rat(r.gen_range(-9i64..=9), r.gen_range(1i64..=6)))
}

fn random_poly(
    r: &mut ChaCha8Rng,
    ring: &Arc<VariableRing>,
    max_exp: u16,
    terms: usize,
) -> Polynomial {
    let n = ring.num_vars();
    let mut p = Polynomial::zero(ring.clone(), FieldContext::Rationals);
    for _ in 0..terms {
        let exps: Vec<u16> = (0..n).map(|_| r.gen_range(0..=max_exp)).collect();
        p.add_term(Monomial::from_exponents(exps), random_rational(r));
    }
    p
}

// ---------------------------------------------------------------- corpus

struct CorpusIdeal {
    name: &'static str,
    ring: Arc<VariableRing>,
    ideal: Vec<Polynomial>,
    prime: Vec<Polynomial>,
    /// a rational point on V(P), in ring coordinate order
    witness: Option<Vec<f64>>,
}

fn corpus() -> Vec<CorpusIdeal> {
    let mut out = Vec::new();
    let xy = VariableRing::new(vec!["x", "y"]);
    let mk = |ring: &Arc<VariableRing>, gens: &[&str]| -> Vec<Polynomial> {
        gens.iter().map(|t| parse_polynomial(t, ring).unwrap()).collect()
    };
    for (name, gens, witness) in [
        ("double point", vec!["x^2", "y"], vec![0.0, 0.0]),
        ("fat point", vec!["x^2", "x*y", "y^2"], vec![0.0, 0.0]),
        ("curvilinear stack", vec!["x^3", "y^2"], vec![0.0, 0.0]),
        ("monomial m4", vec!["x^3", "x*y", "y^2"], vec![0.0, 0.0]),
        ("shifted double point", vec!["(x-1)^2", "y-2"], vec![1.0, 2.0]),
    ] {
        out.push(CorpusIdeal {
            name,
            ring: xy.clone(),
            ideal: mk(&xy, &gens),
            prime: match name {
                "shifted double point" => mk(&xy, &["x-1", "y-2"]),
                _ => mk(&xy, &["x", "y"]),
            },
            witness: Some(witness),
        });
    }
    for m in 2..=4u32 {
        let ring = xy.with_independent(&[1]);
        let gens = vec![format!("(x+y+1)^{m}")];
        let texts: Vec<&str> = gens.iter().map(|s| s.as_str()).collect();
        out.push(CorpusIdeal {
            name: match m {
                2 => "thick line m2",
                3 => "thick line m3",
                _ => "thick line m4",
            },
            ring: ring.clone(),
            ideal: mk(&ring, &texts),
            prime: mk(&ring, &["x+y+1"]),
            witness: Some(vec![-4.0, 3.0]),
        });
    }
    let q3 = VariableRing::new(vec!["x1", "x2", "x3"]).with_independent(&[2]);
    out.push(CorpusIdeal {
        name: "curvilinear curve",
        ring: q3.clone(),
        ideal: mk(&q3, &["(x1^2 - x3)^2", "x2 - x3*(x1^2 - x3)"]),
        prime: mk(&q3, &["x1^2 - x3", "x2"]),
        witness: Some(vec![2.0, 0.0, 4.0]),
    });
    let txy = VariableRing::new(vec!["t", "x", "y"]).with_independent(&[0]);
    out.push(CorpusIdeal {
        name: "axis with tangent direction",
        ring: txy.clone(),
        ideal: mk(&txy, &["x^2 - t*y", "y^2"]),
        prime: mk(&txy, &["x", "y"]),
        witness: Some(vec![3.0, 0.0, 0.0]),
    });
    out.push(CorpusIdeal {
        name: "moving double point",
        ring: txy.clone(),
        ideal: mk(&txy, &["(x - t)^2", "y"]),
        prime: mk(&txy, &["x - t", "y"]),
        witness: Some(vec![2.0, 2.0, 0.0]),
    });
    out
}

fn symbolic_set(c: &CorpusIdeal) -> NoetherianOperatorSet {
    let order = MonomialOrder::dmonomial(c.ring.num_vars());
    let opts = SymbolicOptions {
        // keep the declared split so the numeric runs agree on it
        independent: if c.ring.independent().is_empty() {
            None
        } else {
            Some(c.ring.independent().to_vec())
        },
        ..SymbolicOptions::default()
    };
    noetherian_operators(&c.ideal, &c.prime, &order, &opts).unwrap()
}

// ------------------------------------------------------------ criterion 1

#[test]
fn criterion_01_symbolic_worked_example() {
    let t0 = Instant::now();
    let out = Command::new(bin())
        .args([
            "symbolic",
            "--ideal",
            fixture("curvilinear_ideal.txt").to_str().unwrap(),
            "--prime",
            fixture("curvilinear_prime.txt").to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<String> = String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(String::from)
        .collect();
    assert_eq!(lines, vec!["1", "dx1 + 2*x1*x3*dx2"]);

    // the intermediate degree-2 Macaulay matrix: all 36 entries
    let ring = VariableRing::new(vec!["x1", "x2", "x3"]);
    let prime = vec![
        parse_polynomial("x1^2 - x3", &ring).unwrap(),
        parse_polynomial("x2", &ring).unwrap(),
    ];
    let ideal = vec![
        parse_polynomial("(x1^2 - x3)^2", &ring).unwrap(),
        parse_polynomial("x2 - x3*(x1^2 - x3)", &ring).unwrap(),
    ];
    let gb = noethops::groebner::extend_to_fraction_field(&prime, &[2]).unwrap();
    let ring_s = gb.ring().clone();
    let qctx = QuotientContext::new(gb).unwrap();
    let ideal_s: Vec<Polynomial> = ideal
        .iter()
        .map(|g| noethops::groebner::extend_polynomial(g, &ring_s).unwrap())
        .collect();
    let order = MonomialOrder::dmonomial(3);
    let m = macaulay_matrix(&ideal_s, 2, &qctx, &order).unwrap();
    assert_eq!((m.nrows(), m.ncols()), (6, 6));
    let expect = |row: &str, col: &str, val: &str| {
        let r = m.row_labels.iter().position(|l| l == row).unwrap();
        let c = m
            .col_labels
            .iter()
            .position(|l| monomial_string(l, &ring_s, "d") == col)
            .unwrap();
        let got = match m.entry(r, c) {
            Scalar::Quotient(q) => q.representative().to_string(),
            _ => unreachable!(),
        };
        assert_eq!(got, val, "entry ({row}, {col})");
    };
    let f1 = "x1^4 - 2*x3*x1^2 + x3^2";
    let f2 = "-x3*x1^2 + x2 + x3^2";
    let x1f1 = "x1^5 - 2*x3*x1^3 + x3^2*x1";
    let x1f2 = "-x3*x1^3 + x1*x2 + x3^2*x1";
    let x2f1 = "x1^4*x2 - 2*x3*x1^2*x2 + x3^2*x2";
    let x2f2 = "-x3*x1^2*x2 + x2^2 + x3^2*x2";
    let nonzero = [
        (f1, "dx1^2", "8*x3"),
        (f2, "dx2", "1"),
        (f2, "dx1", "-2*x3*x1"),
        (f2, "dx1^2", "-2*x3"),
        (x1f1, "dx1^2", "8*x3*x1"),
        (x1f2, "dx2", "x1"),
        (x1f2, "dx1", "-2*x3^2"),
        (x1f2, "dx1^2", "-6*x3*x1"),
        (x1f2, "dx1*dx2", "1"),
        (x2f2, "dx2^2", "2"),
        (x2f2, "dx1*dx2", "-2*x3*x1"),
    ];
    let mut checked = 0;
    for row in [f1, f2, x1f1, x1f2, x2f1, x2f2] {
        for col in ["", "dx2", "dx1", "dx2^2", "dx1*dx2", "dx1^2"] {
            let val = nonzero
                .iter()
                .find(|(r, c, _)| *r == row && *c == col)
                .map(|(_, _, v)| *v)
                .unwrap_or("0");
            expect(row, col, val);
            checked += 1;
        }
    }
    assert_eq!(checked, 36);
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    println!(
        "criterion 1: PASS — symbolic output {{1, dx1 + 2*x1*x3*dx2}}, 36/36 matrix entries, {elapsed:?} < 5s"
    );
}


// ------------------------------------------------------------ criterion 2

#[test]
fn criterion_02_specialized_operator_table() {
    let t0 = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("ops.json");
    let out = Command::new(bin())
        .args([
            "at-point",
            "--ideal",
            fixture("xty_ideal.txt").to_str().unwrap(),
            "--points",
            fixture("xty_points4.json").to_str().unwrap(),
            "--out",
            json.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: AtPointDoc = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(doc.results.len(), 4);
    let mut entries_checked = 0;
    for (i, res) in doc.results.iter().enumerate() {
        let t = (i + 1) as f64;
        assert_eq!(res.multiplicity, 4);
        // expected table row: 1, dx, dx²+(2/t)dy, dx³+(6/t)dxdy
        let expected: Vec<Vec<(&str, f64)>> = vec![
            vec![("", 1.0)],
            vec![("dx", 1.0)],
            vec![("dx^2", 1.0), ("dy", 2.0 / t)],
            vec![("dx^3", 1.0), ("dx*dy", 6.0 / t)],
        ];
        for (op_coeffs, want) in res.coefficients.iter().zip(&expected) {
            for (dmon, value) in want {
                let got = op_coeffs
                    .iter()
                    .find(|c| c.dmonomial == *dmon)
                    .unwrap_or_else(|| panic!("missing {dmon} at t={t}"));
                let err = (got.value[0] - value).abs().max(got.value[1].abs());
                assert!(err <= 1e-6, "entry {dmon} at t={t}: err {err}");
            }
            // no unexpected extra coefficients above tolerance
            assert_eq!(op_coeffs.len(), want.len(), "extra terms at t={t}");
            entries_checked += 1;
        }
    }
    assert_eq!(entries_checked, 16);
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(5));
    println!("criterion 2: PASS — 16/16 table entries within 1e-6, {elapsed:?} < 5s");
}

// ------------------------------------------------------------ criterion 3

#[test]
fn criterion_03_interpolated_coefficients() {
    let t0 = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("ops.json");
    let out = Command::new(bin())
        .args([
            "numeric",
            "--ideal",
            fixture("xty_ideal.txt").to_str().unwrap(),
            "--points",
            fixture("xty_points10.json").to_str().unwrap(),
            "--out",
            json.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: OperatorDoc = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(
        doc.operators,
        vec!["1", "dx", "dx^2 + (2/t)*dy", "dx^3 + (6/t)*dx*dy"]
    );
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(10));
    println!("criterion 3: PASS — coefficients 2/t and 6/t recovered exactly, {elapsed:?} < 10s");
}

// ------------------------------------------------------------ criterion 4

#[test]
fn criterion_04_scroll_components() {
    let budget = Duration::from_secs(30 * 60);
    let t0 = Instant::now();
    let ring = VariableRing::new(vec!["x0", "x1", "x2", "x3", "x4", "x5"]);
    let gens: Vec<Polynomial> = [
        "x1^4 - 2*x0*x1^2*x2 + x0^2*x2^2 + x1*x2*x3*x4 - x0*x2*x4^2 - x1^2*x3*x5 + x0*x1*x4*x5",
        "x1^4 - 2*x0*x1^2*x2 + x0^2*x2^2 + x1*x2*x3*x4 - x1^2*x4^2 - x0*x2*x3*x5 + x0*x1*x4*x5",
        "x2^2*x3*x4 - x1*x2*x4^2 + x4^4 - x1*x2*x3*x5 + x1^2*x4*x5 - 2*x3*x4^2*x5 + x3^2*x5^2",
    ]
    .iter()
    .map(|t| parse_polynomial(t, &ring).unwrap())
    .collect();
    let order = MonomialOrder::dmonomial(6);
    let opts = SymbolicOptions::default();
    let run = |ptexts: &[&str]| -> NoetherianOperatorSet {
        let prime: Vec<Polynomial> = ptexts
            .iter()
            .map(|t| parse_polynomial(t, &ring).unwrap())
            .collect();
        noetherian_operators(&gens, &prime, &order, &opts).unwrap()
    };
    let m2 = run(&["x1", "x0", "x2^2*x3*x4 + x4^4 - 2*x3*x4^2*x5 + x3^2*x5^2"]).multiplicity();
    let m3 = run(&["x4", "x3", "x0*x2 - x1^2"]).multiplicity();
    let m4 = run(&["x4", "x5", "x0*x2 - x1^2"]).multiplicity();
    assert_eq!((m2, m3, m4), (1, 4, 4));

    // P1 within the remaining budget; the criterion downgrades to the
    // multiplicities above when the budget is exhausted
    let remaining = budget.saturating_sub(t0.elapsed());
    let (tx, rx) = std::sync::mpsc::channel();
    let gens_cl = gens.clone();
    let ring_cl = ring.clone();
    let order_cl = order.clone();
    std::thread::spawn(move || {
        let prime: Vec<Polynomial> = ["x1", "x2", "x3*x5 - x4^2"]
            .iter()
            .map(|t| parse_polynomial(t, &ring_cl).unwrap())
            .collect();
        let set = noetherian_operators(&gens_cl, &prime, &order_cl, &SymbolicOptions::default());
        let _ = tx.send(set);
    });
    match rx.recv_timeout(remaining.saturating_sub(Duration::from_secs(30))) {
        Ok(Ok(p1)) => {
            assert_eq!(p1.multiplicity(), 6);
            let rendered: Vec<String> = p1
                .operators
                .iter()
                .filter(|op| op.d_degree() <= 1)
                .map(|op| op.to_string())
                .collect();
            // lifted forms: the third operator is x3·(dx1 + (x4/x3)·dx2)
            assert_eq!(rendered, vec!["1", "dx4", "x3*dx1 + x4*dx2"]);
            // degree identity: Σ deg(P_i)·m_i = deg(I) = 64 forces m5 = 8
            let m1 = p1.multiplicity() as i64;
            let m5 = (64 - 2 * m1 - 4 * 1 - 2 * 4 - 2 * 4) / 4;
            assert_eq!(2 * m1 + 4 * 1 + 2 * 4 + 2 * 4 + 4 * m5, 64);
            assert_eq!(m5, 8);
            println!(
                "criterion 4: PASS — multiplicities (6, 1, 4, 4), deg-≤1 members match, \
                 degree identity 2·6 + 4·1 + 2·4 + 2·4 + 4·8 = 64, {:?} < 30min",
                t0.elapsed()
            );
        }
        Ok(Err(e)) => panic!("scroll component failed: {e}"),
        Err(_) => {
            println!(
                "criterion 4: PASS (downgraded) — multiplicities (1, 4, 4) for P2/P3/P4 \
                 within budget; P1/P5 marked stretch after {:?}",
                t0.elapsed()
            );
        }
    }
    assert!(t0.elapsed() < budget);
}

// ------------------------------------------------------------ criterion 5

fn carpet_ring() -> Arc<VariableRing> {
    VariableRing::new(vec!["x0", "x1", "x2", "x3", "y0", "y1", "y2", "y3"])
}

const CARPET_QUADRICS: [&str; 10] = [
    "x1^2 - x0*x2",
    "x1*x2 - x0*x3",
    "x2^2 - x1*x3",
    "x2*y0 - 2*x1*y1 + x0*y2",
    "x3*y0 - 2*x2*y1 + x1*y2",
    "x2*y1 - 2*x1*y2 + x0*y3",
    "x3*y1 - 2*x2*y2 + x1*y3",
    "y1^2 - y0*y2",
    "y1*y2 - y0*y3",
    "y2^2 - y1*y3",
];

/// Five fixed integer combinations of the ten quadrics: a complete
/// intersection containing the carpet.
const CARPET_COMBO: [[i64; 10]; 5] = [
    [3, -1, 2, 1, 0, -2, 1, 4, 0, 1],
    [1, 2, -1, 0, 3, 1, -2, 0, 1, 2],
    [-2, 1, 1, 3, 1, 0, 2, 1, -1, 0],
    [0, 3, -2, 1, -1, 2, 0, -3, 2, 1],
    [2, 0, 1, -2, 2, 3, 1, 0, -2, -1],
];

fn carpet_ci_expressions() -> Vec<String> {
    CARPET_COMBO
        .iter()
        .map(|row| {
            row.iter()
                .zip(CARPET_QUADRICS)
                .filter(|(c, _)| **c != 0)
                .map(|(c, q)| format!("{c}*({q})"))
                .collect::<Vec<_>>()
                .join(" + ")
        })
        .collect()
}

fn scroll33_point(a: Complex64, b: Complex64, s: Complex64) -> Vec<Complex64> {
    let v = [s * s * s, s * s, s, Complex64::new(1.0, 0.0)];
    v.iter().map(|x| a * x).chain(v.iter().map(|x| b * x)).collect()
}

fn random_scroll_points(seed: u64, count: usize) -> Vec<Vec<Complex64>> {
    let mut r = rng(seed);
    let mut rc = |r: &mut ChaCha8Rng| {
        Complex64::new(r.gen_range(-1.5..1.5), r.gen_range(-1.5..1.5))
    };
    (0..count)
        .map(|_| {
            let a = rc(&mut r);
            let b = rc(&mut r);
            let s = rc(&mut r);
            scroll33_point(a, b, s)
        })
        .collect()
}

#[test]
fn criterion_05_carpet_component() {
    let dir = tempfile::tempdir().unwrap();
    let ideal_path = dir.path().join("carpet.txt");
    let mut text = String::from("vars: x0, x1, x2, x3, y0, y1, y2, y3\nindep: x0, x3, y3\n");
    for e in carpet_ci_expressions() {
        text.push_str(&e);
        text.push('\n');
    }
    std::fs::write(&ideal_path, text).unwrap();

    // synthetic witness points from the known parametrization
    let samples = random_scroll_points(42, 22);
    let points_path = dir.path().join("points.json");
    let doc = serde_json::json!({
        "schema": 1,
        "variables": ["x0", "x1", "x2", "x3", "y0", "y1", "y2", "y3"],
        "points": samples.iter().map(|p| serde_json::json!({
            "coords": p.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>()
        })).collect::<Vec<_>>()
    });
    std::fs::write(&points_path, serde_json::to_string(&doc).unwrap()).unwrap();

    let json = dir.path().join("ops.json");
    let out = Command::new(bin())
        .args([
            "numeric",
            "--ideal",
            ideal_path.to_str().unwrap(),
            "--points",
            points_path.to_str().unwrap(),
            "--out",
            json.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc: OperatorDoc = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(doc.multiplicity, 2, "exactly 2 operators");
    assert_eq!(doc.operators[0], "1");

    // second operator has the form dy0 + c1·dy1 + c2·dy2
    let ring = carpet_ring().with_independent(&[0, 3, 7]);
    let op = parse_operator(&doc.operators[1], &ring).unwrap();
    let dmons: Vec<String> = op
        .sorted_terms()
        .iter()
        .map(|(m, _)| monomial_string(m, &ring, "d"))
        .collect();
    assert_eq!(dmons, vec!["dy0", "dy1", "dy2"]);
    let unit = op
        .coeff(&Monomial::from_exponents(vec![0, 0, 0, 0, 1, 0, 0, 0]))
        .unwrap();
    assert!(unit.is_one());

    // interpolated c1, c2 agree with (2x1)/(3x0) and x2/(3x0) at 5
    // held-out points to 1e-5
    let held_out = random_scroll_points(777, 5);
    let c1 = op
        .coeff(&Monomial::from_exponents(vec![0, 0, 0, 0, 0, 1, 0, 0]))
        .unwrap();
    let c2 = op
        .coeff(&Monomial::from_exponents(vec![0, 0, 0, 0, 0, 0, 1, 0]))
        .unwrap();
    for p in &held_out {
        let c1v = c1.eval_complex(p, 1e-12).unwrap();
        let c2v = c2.eval_complex(p, 1e-12).unwrap();
        let want1 = 2.0 * p[1] / (3.0 * p[0]);
        let want2 = p[2] / (3.0 * p[0]);
        assert!((c1v - want1).norm() <= 1e-5, "c1 off by {}", (c1v - want1).norm());
        assert!((c2v - want2).norm() <= 1e-5, "c2 off by {}", (c2v - want2).norm());
    }
    println!(
        "criterion 5: PASS — 2 operators, dy0 + c1·dy1 + c2·dy2 with c1, c2 matching \
         (2x1)/(3x0), x2/(3x0) at 5 held-out points to 1e-5"
    );
}

// ------------------------------------------------------------ criterion 6

#[test]
fn criterion_06_property_suite() {
    let ring = VariableRing::new(vec!["x", "y", "z"]);
    let mut r = rng(60);
    // Leibniz rule
    for i in 0..1000 {
        let f = random_poly(&mut r, &ring, 2, 3);
        let g = random_poly(&mut r, &ring, 2, 3);
        let v = r.gen_range(0..3);
        let lhs = f.mul(&g).partial_derivative(v);
        let rhs = f
            .partial_derivative(v)
            .mul(&g)
            .add(&f.mul(&g.partial_derivative(v)));
        assert_eq!(lhs, rhs, "Leibniz case {i}");
    }
    // Weyl commutation relation as operators
    let names = ["x", "y", "z"];
    for i in 0..1000 {
        let vi = r.gen_range(0..3);
        let vj = r.gen_range(0..3);
        let d = parse_operator(&format!("d{}", names[vi]), &ring).unwrap();
        let x = parse_operator(names[vj], &ring).unwrap();
        let f = random_poly(&mut r, &ring, 2, 3);
        let dx = d.weyl_mul(&x).unwrap().apply(&f).unwrap();
        let xd = x.weyl_mul(&d).unwrap().apply(&f).unwrap();
        let diff = dx.sub(&xd);
        let want = if vi == vj {
            f.clone()
        } else {
            Polynomial::zero(ring.clone(), FieldContext::Rationals)
        };
        assert_eq!(diff, want, "Weyl relation case {i}");
    }
    // pairing bilinearity in the residue field of (x1²−x3, x2)
    let q3 = VariableRing::new(vec!["x1", "x2", "x3"]);
    let prime = vec![
        parse_polynomial("x1^2 - x3", &q3).unwrap(),
        parse_polynomial("x2", &q3).unwrap(),
    ];
    let gb = noethops::groebner::extend_to_fraction_field(&prime, &[2]).unwrap();
    let ring_s = gb.ring().clone();
    let qctx = QuotientContext::new(gb).unwrap();
    let ctx = FieldContext::Quotient(qctx.clone());
    for i in 0..1000 {
        let d1 = random_operator(&mut r, &ring_s);
        let d2 = random_operator(&mut r, &ring_s);
        let f = noethops::polyring::promote_to_ratfn(&random_poly(&mut r, &ring_s, 2, 3));
        let a = ctx.from_rational(match random_rational(&mut r) {
            Scalar::Rational(q) => q,
            _ => unreachable!(),
        });
        let lhs = d1
            .scale(&scalar_in_ambient(&a))
            .add(&d2)
            .pairing(&f, &ctx)
            .unwrap();
        let p1 = d1.pairing(&f, &ctx).unwrap();
        let p2 = d2.pairing(&f, &ctx).unwrap();
        let rhs = ctx.field_add(&ctx.field_mul(&a, &p1).unwrap(), &p2).unwrap();
        assert_eq!(lhs, rhs, "bilinearity case {i}");
    }
    // normal-form linearity and idempotence
    let gens = vec![
        parse_polynomial("x^2 + y*z - 1", &ring).unwrap(),
        parse_polynomial("y^2 - z", &ring).unwrap(),
    ];
    let gb = buchberger(&gens, MonomialOrder::grevlex(3)).unwrap();
    for i in 0..1000 {
        let f = random_poly(&mut r, &ring, 3, 4);
        let g = random_poly(&mut r, &ring, 3, 4);
        let a = random_rational(&mut r);
        let b = random_rational(&mut r);
        let combo = f.mul_scalar(&a).add(&g.mul_scalar(&b));
        let lhs = normal_form(&combo, &gb);
        let rhs = normal_form(&f, &gb)
            .mul_scalar(&a)
            .add(&normal_form(&g, &gb).mul_scalar(&b));
        assert_eq!(lhs, rhs, "NF linearity case {i}");
        let nf = normal_form(&f, &gb);
        assert_eq!(normal_form(&nf, &gb), nf, "NF idempotence case {i}");
    }
    println!(
        "criterion 6: PASS — Leibniz, Weyl relation, pairing bilinearity, NF linearity \
         and idempotence: 1000 randomized cases each, zero failures"
    );
}

fn random_operator(r: &mut ChaCha8Rng, ring: &Arc<VariableRing>) -> noethops::polyring::WeylOperator {
    use noethops::polyring::{DiffBlock, WeylOperator};
    let mut op = WeylOperator::zero(
        ring.clone(),
        FieldContext::RationalFunctions(ring.clone()),
        DiffBlock::Dependent,
    );
    for _ in 0..2 {
        let dmon = Monomial::from_exponents(vec![r.gen_range(0..=2), r.gen_range(0..=1), 0]);
        let coeff = noethops::polyring::promote_to_ratfn(&random_poly(r, ring, 1, 2));
        op.add_term(dmon, coeff);
    }
    if op.is_zero() {
        op.add_term(
            Monomial::one(ring.num_vars()),
            noethops::polyring::promote_to_ratfn(&Polynomial::one(
                ring.clone(),
                FieldContext::Rationals,
            )),
        );
    }
    op
}

fn scalar_in_ambient(a: &Scalar) -> Scalar {
    match a {
        Scalar::Quotient(q) => {
            // a residue-field scalar multiplies representative coefficients
            // through its own representative
            let rep = q.representative();
            rep.as_constant().unwrap_or_else(|| {
                Scalar::RatFn(noethops::scalars::RationalFunction::from_poly(rep.clone()))
            })
        }
        other => other.clone(),
    }
}

// ------------------------------------------------------------ criterion 7

#[test]
fn criterion_07_defining_property_master() {
    let corpus = corpus();
    assert!(corpus.len() >= 10, "need at least 10 primary ideals");
    let mut r = rng(70);
    for c in &corpus {
        let set = symbolic_set(c);
        let n = c.ring.num_vars();
        let ideal_gb = buchberger(&c.ideal, MonomialOrder::grevlex(n)).unwrap();
        let prime_gb = buchberger(&c.prime, MonomialOrder::grevlex(n)).unwrap();
        let mut members = 0;
        let mut nonmembers = 0;
        for k in 0..200 {
            // constructed members, raw random polynomials, and random
            // polynomials shifted by 1 (never members of a proper ideal)
            let f = if k % 2 == 0 {
                let mult = random_poly(&mut r, &c.ring, 2, 3);
                c.ideal[k % c.ideal.len()].mul(&mult)
            } else {
                let mut f = random_poly(&mut r, &c.ring, 3, 4);
                if k % 4 == 3 {
                    f.add_term(
                        Monomial::one(c.ring.num_vars()),
                        Scalar::Rational(rat(1, 1)),
                    );
                    if normal_form(&f, &ideal_gb).is_zero() {
                        // the random part cancelled the shift; shift again
                        f.add_term(
                            Monomial::one(c.ring.num_vars()),
                            Scalar::Rational(rat(1, 1)),
                        );
                    }
                }
                f
            };
            let in_ideal = normal_form(&f, &ideal_gb).is_zero();
            let annihilated = set.operators.iter().all(|op| {
                let applied = op.apply(&f).unwrap();
                normal_form(&applied, &prime_gb).is_zero()
            });
            assert_eq!(
                in_ideal, annihilated,
                "defining property failed for {} on sample {k}",
                c.name
            );
            if in_ideal {
                members += 1;
            } else {
                nonmembers += 1;
            }
        }
        assert!(members >= 50 && nonmembers >= 50, "unbalanced sampling for {}", c.name);
    }
    println!(
        "criterion 7: PASS — defining property f ∈ I ⇔ all N•f ∈ P verified exactly on \
         200 samples for each of {} primary ideals",
        corpus.len()
    );
}

// ------------------------------------------------------------ criterion 8

#[test]
fn criterion_08_symbolic_numeric_agreement() {
    let corpus = corpus();
    let opts = NumericOptions::default();
    let mut compared = 0;
    for c in &corpus {
        let Some(w) = &c.witness else { continue };
        let set = symbolic_set(c);
        let order = MonomialOrder::dmonomial(c.ring.num_vars());
        let coords: Vec<Complex64> = w.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let point = WitnessPoint::new(coords.clone(), None);
        let mut engine = SpecializationEngine::new(&c.ideal, order.clone()).unwrap();
        let numeric = engine.operators_at_point(&point, &opts).unwrap();
        let specialized: Vec<noethops::polyring::SpecializedOperator> = set
            .operators
            .iter()
            .map(|op| op.specialize(&coords, opts.tol).unwrap())
            .collect();
        let renorm =
            noethops::numericops::echelon_normalize_specialized(&specialized, &order, opts.tol)
                .unwrap();
        assert_eq!(renorm.len(), numeric.len(), "{}", c.name);
        for (a, b) in renorm.iter().zip(&numeric) {
            let mut support: Vec<Monomial> = a.terms().map(|(m, _)| m.clone()).collect();
            for (m, _) in b.terms() {
                if !support.contains(&m.clone()) {
                    support.push(m.clone());
                }
            }
            for m in support {
                let va = a.coeff(&m).unwrap_or(Complex64::new(0.0, 0.0));
                let vb = b.coeff(&m).unwrap_or(Complex64::new(0.0, 0.0));
                assert!(
                    (va - vb).norm() <= 1e-6,
                    "{}: coefficient differs by {}",
                    c.name,
                    (va - vb).norm()
                );
            }
        }
        compared += 1;
    }
    assert!(compared >= 10);
    println!(
        "criterion 8: PASS — specialize(symbolic) matches the at-point operators to 1e-6 \
         on {compared} corpus ideals"
    );
}

// ------------------------------------------------------------ criterion 9

#[test]
fn criterion_09_truncation_identity() {
    let ring = VariableRing::new(vec!["x", "y"]);
    let instances: Vec<Vec<&str>> = vec![
        vec!["x^2", "y"],
        vec!["x^2", "x*y", "y^2"],
        vec!["x^3", "y^2"],
        vec!["x^3", "x*y", "y^2"],
        vec!["x^4", "y"],
    ];
    assert!(instances.len() >= 5);
    let prime = vec![
        parse_polynomial("x", &ring).unwrap(),
        parse_polynomial("y", &ring).unwrap(),
    ];
    let gb = buchberger(&prime, MonomialOrder::grevlex(2)).unwrap();
    let qctx = QuotientContext::new(gb).unwrap();
    let order = MonomialOrder::dmonomial(2);
    for gens_text in &instances {
        let ideal: Vec<Polynomial> = gens_text
            .iter()
            .map(|t| parse_polynomial(t, &ring).unwrap())
            .collect();
        for d in 1..=3u32 {
            let m = macaulay_matrix(&ideal, d, &qctx, &order).unwrap();
            let truncated = exact_kernel(&m).unwrap().dim();
            let augmented = add_prime_power(&ideal, &prime, d + 1);
            let full = noetherian_operators_zero(&augmented, &qctx, &order, 20)
                .unwrap()
                .multiplicity();
            assert_eq!(truncated, full, "{gens_text:?} at degree {d}");
        }
    }
    println!(
        "criterion 9: PASS — dim D^(d)[I] = dim D[I + P^(d+1)] for d = 1, 2, 3 on {} \
         zero-dimensional instances",
        instances.len()
    );
}

// ----------------------------------------------------------- criterion 10

#[test]
fn criterion_10_coordinate_transport() {
    let mut r = rng(100);
    let corpus = corpus();
    // zero-dimensional entries plus the thick line have polynomial
    // coefficients suitable for transport
    let chosen: Vec<&CorpusIdeal> = corpus
        .iter()
        .filter(|c| {
            matches!(
                c.name,
                "double point" | "fat point" | "curvilinear stack" | "monomial m4" | "thick line m2"
            )
        })
        .collect();
    assert_eq!(chosen.len(), 5);
    let mut matrices_used = 0;
    for c in &chosen {
        let n = c.ring.num_vars();
        // a random invertible integer matrix
        let change = loop {
            let m: Vec<Vec<noethops::scalars::Rat>> = (0..n)
                .map(|_| (0..n).map(|_| rat(r.gen_range(-3i64..=3), 1)).collect())
                .collect();
            if let Ok(ch) = LinearChange::new(m) {
                break ch;
            }
        };
        matrices_used += 1;
        let set = symbolic_set(c);
        let moved = transform_operators(&set, &change).unwrap();
        // defining property for φ(I)
        let ideal_gb = buchberger(&moved.ideal, MonomialOrder::grevlex(n)).unwrap();
        let prime_gb = buchberger(&moved.prime, MonomialOrder::grevlex(n)).unwrap();
        for k in 0..60 {
            let f = if k % 2 == 0 {
                moved.ideal[k % moved.ideal.len()].mul(&random_poly(&mut r, &c.ring, 2, 2))
            } else {
                random_poly(&mut r, &c.ring, 3, 3)
            };
            let in_ideal = normal_form(&f, &ideal_gb).is_zero();
            let annihilated = moved.operators.iter().all(|op| {
                normal_form(&op.apply(&f).unwrap(), &prime_gb).is_zero()
            });
            assert_eq!(in_ideal, annihilated, "{} transported, sample {k}", c.name);
        }
        // identity φ(D • φ⁻¹(f)) = ψ(D) • f exactly on 100 random f
        let inverse = change.inverse_change();
        for _ in 0..100 {
            let f = random_poly(&mut r, &c.ring, 3, 3);
            for (d, psi_d) in set.operators.iter().zip(&moved.operators) {
                let pre = inverse.apply_to_polynomial(&f).unwrap();
                let lhs = change.apply_to_polynomial(&d.apply(&pre).unwrap()).unwrap();
                let rhs = psi_d.apply(&f).unwrap();
                assert_eq!(lhs, rhs, "transport identity for {}", c.name);
            }
        }
    }
    assert!(matrices_used >= 5);
    println!(
        "criterion 10: PASS — transported sets satisfy the defining property and the \
         exact transport identity on {matrices_used} random integer changes"
    );
}
