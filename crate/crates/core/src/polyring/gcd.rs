//! Exact gcd, lcm and exact-division helpers for polynomials with rational
//! coefficients. Used by rational-function normalization and operator
//! lifting; everything here is deterministic.

use std::cmp::Ordering;

use crate::scalars::Scalar;

use super::{Monomial, Polynomial};

/// Graded reverse lexicographic comparison with identity variable
/// significance; the fixed order used internally for leading terms in
/// division and normalization.
pub(crate) fn grevlex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for (ea, eb) in a.exponents().iter().zip(b.exponents()).rev() {
        match ea.cmp(eb) {
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
            Ordering::Equal => {}
        }
    }
    Ordering::Equal
}

pub(crate) fn leading_term_grevlex(p: &Polynomial) -> Option<(Monomial, Scalar)> {
    p.terms()
        .max_by(|(ma, _), (mb, _)| grevlex_cmp(ma, mb))
        .map(|(m, c)| (m.clone(), c.clone()))
}

/// Scale so the grevlex leading coefficient is 1. Zero stays zero.
pub fn make_monic(p: &Polynomial) -> Polynomial {
    match leading_term_grevlex(p) {
        None => p.clone(),
        Some((_, lc)) => {
            let inv = lc.inv().expect("nonzero leading coefficient");
            p.mul_scalar(&inv)
        }
    }
}

/// Exact division `f / d`; returns `None` when the division leaves a
/// remainder. Both inputs must share ring and context.
pub fn poly_div_exact(f: &Polynomial, d: &Polynomial) -> Option<Polynomial> {
    assert!(!d.is_zero(), "division by the zero polynomial");
    let mut rem = f.clone();
    let mut quot = Polynomial::zero(f.ring().clone(), f.ctx().clone());
    let (dm, dc) = leading_term_grevlex(d).unwrap();
    while !rem.is_zero() {
        let (rm, rc) = leading_term_grevlex(&rem).unwrap();
        let qm = dm.quotient_into(&rm)?;
        let qc = rc.div(&dc).ok()?;
        let step = Polynomial::monomial_term(f.ring().clone(), f.ctx().clone(), qm, qc);
        rem = rem.sub(&step.mul(d));
        quot = quot.add(&step);
    }
    Some(quot)
}

/// Entrywise-minimum monomial over all terms (the monomial content).
fn monomial_content(p: &Polynomial) -> Monomial {
    let n = p.ring().num_vars();
    let mut min = vec![u16::MAX; n];
    for (m, _) in p.terms() {
        for (i, &e) in m.exponents().iter().enumerate() {
            min[i] = min[i].min(e);
        }
    }
    Monomial::from_exponents(min.iter().map(|&e| if e == u16::MAX { 0 } else { e }).collect())
}

fn divide_monomial(p: &Polynomial, m: &Monomial) -> Polynomial {
    if m.is_one() {
        return p.clone();
    }
    Polynomial::from_terms(
        p.ring().clone(),
        p.ctx().clone(),
        p.terms().map(|(a, c)| {
            (
                m.quotient_into(a).expect("monomial content divides"),
                c.clone(),
            )
        }),
    )
}

fn degree_in(p: &Polynomial, v: usize) -> u16 {
    p.terms().map(|(m, _)| m.exponent(v)).max().unwrap_or(0)
}

/// Coefficient of `v^k` viewed as a polynomial in the remaining variables.
fn coefficient_in(p: &Polynomial, v: usize, k: u16) -> Polynomial {
    Polynomial::from_terms(
        p.ring().clone(),
        p.ctx().clone(),
        p.terms().filter(|(m, _)| m.exponent(v) == k).map(|(m, c)| {
            let mut exps = m.exponents().to_vec();
            exps[v] = 0;
            (Monomial::from_exponents(exps), c.clone())
        }),
    )
}

/// gcd of the `v`-coefficients.
fn content_in(p: &Polynomial, v: usize) -> Polynomial {
    let mut acc = Polynomial::zero(p.ring().clone(), p.ctx().clone());
    for k in 0..=degree_in(p, v) {
        let c = coefficient_in(p, v, k);
        if c.is_zero() {
            continue;
        }
        acc = poly_gcd(&acc, &c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn var_poly(p: &Polynomial, v: usize, e: u16) -> Polynomial {
    let n = p.ring().num_vars();
    let mut exps = vec![0u16; n];
    exps[v] = e;
    Polynomial::monomial_term(
        p.ring().clone(),
        p.ctx().clone(),
        Monomial::from_exponents(exps),
        p.ctx().one(),
    )
}

/// Pseudo-remainder of `a` by `b` viewed as univariate in `v`
/// (each reduction step scales by the leading `v`-coefficient of `b`).
fn pseudo_rem(a: &Polynomial, b: &Polynomial, v: usize) -> Polynomial {
    let db = degree_in(b, v);
    let lc_b = coefficient_in(b, v, db);
    let mut r = a.clone();
    loop {
        if r.is_zero() {
            return r;
        }
        let dr = degree_in(&r, v);
        if dr < db {
            return r;
        }
        let lc_r = coefficient_in(&r, v, dr);
        // r ← lc_b·r − lc_r·v^{dr−db}·b
        let shift = var_poly(&r, v, dr - db);
        r = r.mul(&lc_b).sub(&lc_r.mul(&shift).mul(b));
    }
}

/// Integer coefficient vector (ascending in v) scaled primitive.
fn int_coeffs(p: &Polynomial, v: usize) -> Vec<num::BigInt> {
    use num::{BigInt, Integer, One, Zero};
    let d = degree_in(p, v) as usize;
    let mut den_lcm = BigInt::one();
    for (_, s) in p.terms() {
        if let Scalar::Rational(r) = s {
            den_lcm = den_lcm.lcm(r.denom());
        }
    }
    let mut out = vec![BigInt::zero(); d + 1];
    for (m, s) in p.terms() {
        if let Scalar::Rational(r) = s {
            let scaled = r * num::BigRational::from(den_lcm.clone());
            out[m.exponent(v) as usize] += scaled.to_integer();
        }
    }
    strip_int_content(&mut out);
    out
}

fn strip_int_content(cs: &mut [num::BigInt]) {
    use num::{BigInt, Integer, Zero};
    let mut g = BigInt::zero();
    for c in cs.iter() {
        g = g.gcd(c);
    }
    if !g.is_zero() && g != BigInt::from(1) {
        for c in cs.iter_mut() {
            *c = &*c / &g;
        }
    }
}

fn int_deg(cs: &[num::BigInt]) -> Option<usize> {
    use num::Zero;
    cs.iter().rposition(|c| !c.is_zero())
}

/// Primitive pseudo-remainder sequence over the integers.
fn univariate_gcd(f: &Polynomial, g: &Polynomial, v: usize) -> Polynomial {
    use num::Zero;
    let mut a = int_coeffs(f, v);
    let mut b = int_coeffs(g, v);
    if int_deg(&a) < int_deg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let Some(db) = int_deg(&b) else { break };
        let Some(mut da) = int_deg(&a) else {
            std::mem::swap(&mut a, &mut b);
            break;
        };
        if da < db {
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        // r = prem(a, b)
        let lc_b = b[db].clone();
        let mut r = a.clone();
        while let Some(dr) = int_deg(&r) {
            if dr < db {
                break;
            }
            let lc_r = r[dr].clone();
            for c in r.iter_mut() {
                *c = &*c * &lc_b;
            }
            for k in 0..=db {
                let t = &lc_r * &b[k];
                r[dr - db + k] = &r[dr - db + k] - &t;
            }
            da = dr;
        }
        let _ = da;
        strip_int_content(&mut r);
        a = b;
        b = r;
    }
    // rebuild as a monic polynomial in v
    let ring = f.ring().clone();
    let ctx = f.ctx().clone();
    let mut p = Polynomial::zero(ring.clone(), ctx.clone());
    let Some(da) = int_deg(&a) else {
        return p;
    };
    let n = ring.num_vars();
    let lead = num::BigRational::from(a[da].clone());
    for (k, c) in a.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut exps = vec![0u16; n];
        exps[v] = k as u16;
        let coeff = num::BigRational::from(c.clone()) / lead.clone();
        p.add_term(Monomial::from_exponents(exps), Scalar::Rational(coeff));
    }
    p
}

fn primitive_part(p: &Polynomial, v: usize) -> Polynomial {
    let c = content_in(p, v);
    let p = if c.is_one() {
        p.clone()
    } else {
        poly_div_exact(p, &c).expect("content divides")
    };
    // strip the rational content too, keeping coefficients small
    strip_rational_content(&p)
}

/// Divide by the gcd of numerators over the lcm of denominators.
pub(crate) fn strip_rational_content(p: &Polynomial) -> Polynomial {
    use num::{BigInt, Integer, One, Zero};
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for (_, s) in p.terms() {
        if let Scalar::Rational(r) = s {
            num_gcd = num_gcd.gcd(r.numer());
            den_lcm = den_lcm.lcm(r.denom());
        } else {
            return p.clone();
        }
    }
    if num_gcd.is_zero() {
        return p.clone();
    }
    let scale = Scalar::Rational(num::BigRational::new(den_lcm, num_gcd));
    p.mul_scalar(&scale)
}

fn gcd_core(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let one = Polynomial::one(f.ring().clone(), f.ctx().clone());
    if f.total_degree() == 0 || g.total_degree() == 0 {
        return one;
    }
    let sf = f.support_vars();
    let sg = g.support_vars();
    // variable appearing in only one input contributes through the content
    let v = *sf
        .iter()
        .chain(sg.iter())
        .min()
        .expect("non-constant inputs");
    if !sf.contains(&v) {
        return gcd_core(f, &content_in(g, v));
    }
    if !sg.contains(&v) {
        return gcd_core(&content_in(f, v), g);
    }
    if sf == vec![v] && sg == vec![v] {
        return univariate_gcd(f, g, v);
    }
    let cf = content_in(f, v);
    let cg = content_in(g, v);
    let c = poly_gcd(&cf, &cg);
    let fp = poly_div_exact(f, &cf).expect("content divides");
    let gp = poly_div_exact(g, &cg).expect("content divides");
    let (mut a, mut b) = if degree_in(&fp, v) >= degree_in(&gp, v) {
        (fp, gp)
    } else {
        (gp, fp)
    };
    let result = loop {
        let r = pseudo_rem(&a, &b, v);
        if r.is_zero() {
            break primitive_part(&b, v);
        }
        if degree_in(&r, v) == 0 {
            break one;
        }
        a = b;
        b = primitive_part(&r, v);
    };
    c.mul(&result)
}

/// gcd over the rationals, normalized so the grevlex leading coefficient
/// is 1. `gcd(0, g)` is the monic normalization of `g`.
pub fn poly_gcd(f: &Polynomial, g: &Polynomial) -> Polynomial {
    if f.is_zero() {
        return make_monic(g);
    }
    if g.is_zero() {
        return make_monic(f);
    }
    if f == g {
        return make_monic(f);
    }
    let mf = monomial_content(f);
    let mg = monomial_content(g);
    let mc = mf.gcd(&mg);
    let fr = divide_monomial(f, &mf);
    let gr = divide_monomial(g, &mg);
    let core = gcd_core(&fr, &gr);
    make_monic(&core.mul_monomial(&mc))
}

/// lcm over the rationals, normalized monic.
pub fn poly_lcm(f: &Polynomial, g: &Polynomial) -> Polynomial {
    if f.is_zero() || g.is_zero() {
        return Polynomial::zero(f.ring().clone(), f.ctx().clone());
    }
    let d = poly_gcd(f, g);
    let q = poly_div_exact(f, &d).expect("gcd divides");
    make_monic(&q.mul(g))
}
