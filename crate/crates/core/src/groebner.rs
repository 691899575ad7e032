//! Buchberger engine: reduced Gröbner bases, normal forms, dimension and
//! independent-variable selection, and extension to the fraction field of
//! the independent block.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polyring::{Monomial, Polynomial, VariableRing};
use crate::scalars::{FieldContext, RationalFunction, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    GrevLex,
    GrLex,
    Lex,
}

impl OrderKind {
    pub fn parse(name: &str) -> Option<OrderKind> {
        match name.to_ascii_lowercase().as_str() {
            "grevlex" => Some(OrderKind::GrevLex),
            "grlex" => Some(OrderKind::GrLex),
            "lex" => Some(OrderKind::Lex),
            _ => None,
        }
    }
}

/// A monomial order: one of the three standard kinds together with a
/// variable significance permutation (`perm[0]` is the most significant
/// variable index). Total, multiplicative, and with 1 minimal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    perm: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, perm: Vec<usize>) -> Self {
        MonomialOrder { kind, perm }
    }

    pub fn grevlex(num_vars: usize) -> Self {
        MonomialOrder::new(OrderKind::GrevLex, (0..num_vars).collect())
    }

    pub fn grlex(num_vars: usize) -> Self {
        MonomialOrder::new(OrderKind::GrLex, (0..num_vars).collect())
    }

    pub fn lex(num_vars: usize) -> Self {
        MonomialOrder::new(OrderKind::Lex, (0..num_vars).collect())
    }

    pub fn of_kind(kind: OrderKind, num_vars: usize) -> Self {
        MonomialOrder::new(kind, (0..num_vars).collect())
    }

    /// The default order on ∂-monomials: graded lexicographic with the
    /// earlier variable more significant, so 1 is minimal and within a
    /// degree block ∂x1 dominates ∂x2. Echelon pivots sit at the largest
    /// support monomial under this order.
    pub fn dmonomial(num_vars: usize) -> Self {
        MonomialOrder::grlex(num_vars)
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lex => self.lex_cmp(a, b),
            OrderKind::GrLex => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| self.lex_cmp(a, b)),
            OrderKind::GrevLex => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| self.revlex_tie(a, b)),
        }
    }

    fn lex_cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for &v in &self.perm {
            match a.exponent(v).cmp(&b.exponent(v)) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    fn revlex_tie(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for &v in self.perm.iter().rev() {
            match a.exponent(v).cmp(&b.exponent(v)) {
                Ordering::Equal => {}
                // smaller exponent in the least significant position wins
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }

    pub fn sort(&self, monomials: &mut [Monomial]) {
        monomials.sort_by(|a, b| self.cmp(a, b));
    }
}

impl Polynomial {
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(Monomial, Scalar)> {
        self.terms()
            .max_by(|(ma, _), (mb, _)| order.cmp(ma, mb))
            .map(|(m, c)| (m.clone(), c.clone()))
    }

    pub fn leading_monomial(&self, order: &MonomialOrder) -> Option<Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    /// Scale so the leading coefficient under `order` is 1.
    pub fn monic(&self, order: &MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, lc)) => self.mul_scalar(&lc.inv().expect("nonzero leading coefficient")),
        }
    }
}

/// A reduced Gröbner basis: monic generators, no leading term divides any
/// term of another generator, sorted by leading monomial.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis {
    gens: Vec<Polynomial>,
    lts: Vec<Monomial>,
    order: MonomialOrder,
    ring: Arc<VariableRing>,
    ctx: FieldContext,
}

impl GroebnerBasis {
    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.lts
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn ring(&self) -> &Arc<VariableRing> {
        &self.ring
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// The unit ideal (1 ∈ I).
    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        normal_form(f, self).is_zero()
    }

    /// Dimension of the ideal together with the lexicographically smallest
    /// maximal set of variables algebraically independent modulo the ideal,
    /// read off the leading-term ideal: a variable subset is independent
    /// exactly when no leading term is supported on it.
    pub fn dimension_and_independent_set(&self) -> Result<(usize, Vec<usize>)> {
        if self.is_unit() {
            return Err(Error::EmptyVariety);
        }
        let active: Vec<usize> = match &self.ctx {
            FieldContext::RationalFunctions(_) => self.ring.dependent(),
            _ => (0..self.ring.num_vars()).collect(),
        };
        for size in (0..=active.len()).rev() {
            let mut found: Option<Vec<usize>> = None;
            combinations(&active, size, &mut |subset| {
                if found.is_none() && self.is_independent_subset(subset) {
                    found = Some(subset.to_vec());
                }
            });
            if let Some(set) = found {
                return Ok((size, set));
            }
        }
        unreachable!("the empty set is always independent for a proper ideal")
    }

    fn is_independent_subset(&self, subset: &[usize]) -> bool {
        !self.lts.iter().any(|lt| lt.supported_on(subset))
    }

    /// Standard monomials (not divisible by any leading term) over the
    /// active variable block, sorted in the ∂-listing order. Errors when
    /// the count exceeds `cap`, signalling a non-zero-dimensional ideal.
    pub fn quotient_basis(&self, cap: usize) -> Result<Vec<Monomial>> {
        if self.is_unit() {
            return Err(Error::EmptyVariety);
        }
        let n = self.ring.num_vars();
        let active: Vec<usize> = match &self.ctx {
            FieldContext::RationalFunctions(_) => self.ring.dependent(),
            _ => (0..n).collect(),
        };
        let mut seen = std::collections::BTreeSet::new();
        let mut queue = vec![Monomial::one(n)];
        while let Some(m) = queue.pop() {
            if seen.contains(&m) {
                continue;
            }
            if self.lts.iter().any(|lt| lt.divides(&m)) {
                continue;
            }
            seen.insert(m.clone());
            if seen.len() > cap {
                return Err(Error::IndependentSetInvalid(format!(
                    "quotient has more than {cap} standard monomials; \
                     the extension is not zero-dimensional"
                )));
            }
            for &v in &active {
                queue.push(m.mul(&Monomial::var(n, v)));
            }
        }
        let mut basis: Vec<Monomial> = seen.into_iter().collect();
        let listing = MonomialOrder::dmonomial(n);
        listing.sort(&mut basis);
        Ok(basis)
    }
}

fn combinations(items: &[usize], size: usize, visit: &mut dyn FnMut(&[usize])) {
    fn rec(
        items: &[usize],
        size: usize,
        start: usize,
        current: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if current.len() == size {
            visit(current);
            return;
        }
        let needed = size - current.len();
        for i in start..=items.len().saturating_sub(needed) {
            current.push(items[i]);
            rec(items, size, i + 1, current, visit);
            current.pop();
        }
    }
    rec(items, size, 0, &mut Vec::new(), visit);
}

/// The unique remainder of `f` under multivariate division by the basis;
/// `normal_form(f, G) = 0` iff `f` lies in the ideal.
pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Polynomial {
    assert!(
        gb.ctx.compatible(f.ctx()),
        "normal form requires matching coefficient contexts"
    );
    let mut work = f.clone();
    let mut rem = Polynomial::zero(f.ring().clone(), f.ctx().clone());
    'outer: while !work.is_zero() {
        let (m, c) = work.leading_term(&gb.order).unwrap();
        for (g, lt) in gb.gens.iter().zip(&gb.lts) {
            if let Some(q) = lt.quotient_into(&m) {
                // generators are monic: subtract c·q·g
                let step = g.mul_monomial(&q).mul_scalar(&c);
                work = work.sub(&step);
                continue 'outer;
            }
        }
        rem.add_term(m.clone(), c.clone());
        let single = Polynomial::monomial_term(f.ring().clone(), f.ctx().clone(), m, c);
        work = work.sub(&single);
    }
    rem
}

/// Buchberger's algorithm with normal pair selection and the coprime-pair
/// criterion, followed by interreduction to the reduced basis.
pub fn buchberger(generators: &[Polynomial], order: MonomialOrder) -> Result<GroebnerBasis> {
    let nonzero: Vec<&Polynomial> = generators.iter().filter(|g| !g.is_zero()).collect();
    let (ring, ctx) = match nonzero.first() {
        Some(g) => (g.ring().clone(), g.ctx().clone()),
        None => {
            let g = generators.first().ok_or_else(|| {
                Error::InvalidInput("buchberger requires at least one polynomial".into())
            })?;
            (g.ring().clone(), g.ctx().clone())
        }
    };
    if !ctx.is_exact() {
        return Err(Error::InvalidInput(
            "Gröbner bases require an exact coefficient context".into(),
        ));
    }
    for g in &nonzero {
        g.ring().check_compatible(&ring)?;
        if !ctx.compatible(g.ctx()) {
            return Err(Error::ContextMismatch(
                "generators live in different coefficient contexts".into(),
            ));
        }
    }

    let mut basis: Vec<Polynomial> = Vec::new();
    let mut lts: Vec<Monomial> = Vec::new();
    for g in nonzero {
        let m = g.monic(&order);
        lts.push(m.leading_monomial(&order).unwrap());
        basis.push(m);
    }

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push((j, i));
        }
    }

    while !pairs.is_empty() {
        // normal selection: smallest lcm under the order
        let mut best = 0;
        let mut best_lcm = lts[pairs[0].0].lcm(&lts[pairs[0].1]);
        for (k, (i, j)) in pairs.iter().enumerate().skip(1) {
            let lcm = lts[*i].lcm(&lts[*j]);
            if order.cmp(&lcm, &best_lcm) == Ordering::Less {
                best = k;
                best_lcm = lcm;
            }
        }
        let (i, j) = pairs.swap_remove(best);
        let lcm = lts[i].lcm(&lts[j]);
        if lts[i].gcd(&lts[j]).is_one() {
            continue; // coprime leading terms: S-polynomial reduces to zero
        }
        let qi = lts[i].quotient_into(&lcm).unwrap();
        let qj = lts[j].quotient_into(&lcm).unwrap();
        let spoly = basis[i].mul_monomial(&qi).sub(&basis[j].mul_monomial(&qj));
        let snapshot = GroebnerBasis {
            gens: basis.clone(),
            lts: lts.clone(),
            order: order.clone(),
            ring: ring.clone(),
            ctx: ctx.clone(),
        };
        let r = normal_form(&spoly, &snapshot);
        if !r.is_zero() {
            let r = r.monic(&order);
            let lt = r.leading_monomial(&order).unwrap();
            for k in 0..basis.len() {
                pairs.push((k, basis.len()));
            }
            basis.push(r);
            lts.push(lt);
        }
    }

    // minimal basis: drop generators whose leading term is divisible by
    // another remaining leading term
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if i != j
                && keep[j]
                && keep[i]
                && lts[j].divides(&lts[i])
                && !(lts[i] == lts[j] && j > i)
            {
                keep[i] = false;
            }
        }
    }
    let mut minimal: Vec<Polynomial> = basis
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(g, _)| g)
        .collect();

    // tail-reduce each generator against the others
    let mut reduced: Vec<Polynomial> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        if others.is_empty() {
            reduced.push(minimal[i].clone());
            continue;
        }
        let other_lts: Vec<Monomial> = others
            .iter()
            .map(|g| g.leading_monomial(&order).unwrap())
            .collect();
        let snapshot = GroebnerBasis {
            gens: others,
            lts: other_lts,
            order: order.clone(),
            ring: ring.clone(),
            ctx: ctx.clone(),
        };
        reduced.push(normal_form(&minimal[i], &snapshot).monic(&order));
    }
    minimal = reduced;
    minimal.sort_by(|a, b| {
        order.cmp(
            &a.leading_monomial(&order).unwrap(),
            &b.leading_monomial(&order).unwrap(),
        )
    });
    let lts = minimal
        .iter()
        .map(|g| g.leading_monomial(&order).unwrap())
        .collect();
    Ok(GroebnerBasis {
        gens: minimal,
        lts,
        order,
        ring,
        ctx,
    })
}

/// Re-read a polynomial over `K[t,x]` as a polynomial in the dependent
/// variables with rational-function coefficients in the independent block.
/// The target ring must carry the split.
pub fn extend_polynomial(p: &Polynomial, ring: &Arc<VariableRing>) -> Result<Polynomial> {
    p.ring().check_compatible(ring)?;
    match p.ctx() {
        FieldContext::Rationals => {}
        _ => {
            return Err(Error::ContextMismatch(
                "extension starts from rational coefficients".into(),
            ))
        }
    }
    let ctx = FieldContext::RationalFunctions(ring.clone());
    let n = ring.num_vars();
    let mut out = Polynomial::zero(ring.clone(), ctx.clone());
    for (m, c) in p.terms() {
        let mut t_exps = vec![0u16; n];
        let mut x_exps = vec![0u16; n];
        for (i, &e) in m.exponents().iter().enumerate() {
            if ring.is_independent(i) {
                t_exps[i] = e;
            } else {
                x_exps[i] = e;
            }
        }
        let t_mon = Monomial::from_exponents(t_exps);
        let num = Polynomial::monomial_term(
            ring.clone(),
            FieldContext::Rationals,
            t_mon,
            c.clone(),
        );
        let coeff = Scalar::RatFn(RationalFunction::from_poly(num));
        out.add_term(Monomial::from_exponents(x_exps), coeff);
    }
    Ok(out)
}

/// Extension of an ideal to `S = K(t)[x]`: the generators are re-read with
/// the independent block moved into the coefficient field and a reduced
/// Gröbner basis over `K(t)` is computed. The result must be
/// zero-dimensional; an empty independent set returns the basis over `K`
/// unchanged.
pub fn extend_to_fraction_field(
    generators: &[Polynomial],
    independent: &[usize],
) -> Result<GroebnerBasis> {
    let first = generators
        .first()
        .ok_or_else(|| Error::InvalidInput("no generators".into()))?;
    let base_ring = first.ring().clone();
    if independent.is_empty() {
        let order = MonomialOrder::grevlex(base_ring.num_vars());
        let gb = buchberger(generators, order)?;
        let (dim, _) = gb.dimension_and_independent_set()?;
        if dim != 0 {
            return Err(Error::IndependentSetInvalid(format!(
                "ideal has dimension {dim} but the independent set is empty"
            )));
        }
        return Ok(gb);
    }
    let ring = base_ring.with_independent(independent);
    let extended: Vec<Polynomial> = generators
        .iter()
        .map(|g| extend_polynomial(g, &ring))
        .collect::<Result<_>>()?;
    let order = MonomialOrder::grevlex(ring.num_vars());
    let gb = buchberger(&extended, order)?;
    if gb.is_unit() {
        return Err(Error::IndependentSetInvalid(
            "extension is the unit ideal".into(),
        ));
    }
    let (dim, _) = gb.dimension_and_independent_set()?;
    if dim != 0 {
        return Err(Error::IndependentSetInvalid(format!(
            "extension has dimension {dim}; the chosen independent set is not maximal"
        )));
    }
    Ok(gb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_polynomial;

    fn q3() -> Arc<VariableRing> {
        VariableRing::new(vec!["x1", "x2", "x3"])
    }

    #[test]
    fn already_reduced_basis_is_unchanged() {
        let ring = q3();
        let p1 = parse_polynomial("x1^2 - x3", &ring).unwrap();
        let p2 = parse_polynomial("x2", &ring).unwrap();
        let gb = extend_to_fraction_field(&[p1, p2], &[2]).unwrap();
        let ring_s = gb.ring().clone();
        let gens: Vec<String> = gb.generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(gens, vec!["x2", "x1^2 - x3"]);
        assert_eq!(gb.ring().independent(), &[2]);
        let _ = ring_s;
    }

    #[test]
    fn unit_ideal_reduces_to_one() {
        let ring = VariableRing::new(vec!["x"]);
        let a = parse_polynomial("x", &ring).unwrap();
        let b = parse_polynomial("x + 1", &ring).unwrap();
        let gb = buchberger(&[a, b], MonomialOrder::grevlex(1)).unwrap();
        assert!(gb.is_unit());
        assert!(matches!(
            gb.dimension_and_independent_set(),
            Err(crate::error::Error::EmptyVariety)
        ));
    }

    #[test]
    fn principal_ideal_is_monic_generator() {
        let ring = VariableRing::new(vec!["x", "y"]);
        let p = parse_polynomial("2*(x+y+1)^2", &ring).unwrap();
        let gb = buchberger(&[p], MonomialOrder::grevlex(2)).unwrap();
        assert_eq!(gb.generators().len(), 1);
        let expected = parse_polynomial("(x+y+1)^2", &ring).unwrap();
        assert_eq!(gb.generators()[0], expected);
    }

    #[test]
    fn normal_form_single_step() {
        let ring = q3();
        let p1 = parse_polynomial("x1^2 - x3", &ring).unwrap();
        let p2 = parse_polynomial("x2", &ring).unwrap();
        let gb = buchberger(&[p1.clone(), p2.clone()], MonomialOrder::grevlex(3)).unwrap();
        let f = parse_polynomial("x1^2", &ring).unwrap();
        assert_eq!(normal_form(&f, &gb), parse_polynomial("x3", &ring).unwrap());
        // generators reduce to zero
        assert!(normal_form(&p1, &gb).is_zero());
        assert!(normal_form(&p2, &gb).is_zero());
        // 1 is its own normal form modulo a proper ideal
        let one = parse_polynomial("1", &ring).unwrap();
        assert_eq!(normal_form(&one, &gb), one);
    }

    #[test]
    fn dimension_of_curvilinear_example() {
        let ring = q3();
        let q1 = parse_polynomial("(x1^2 - x3)^2", &ring).unwrap();
        let q2 = parse_polynomial("x2 - x3*(x1^2 - x3)", &ring).unwrap();
        let gb = buchberger(&[q1, q2], MonomialOrder::grevlex(3)).unwrap();
        let (dim, indep) = gb.dimension_and_independent_set().unwrap();
        assert_eq!(dim, 1);
        assert_eq!(indep, vec![2]);
    }

    #[test]
    fn dimension_of_t_line() {
        let ring = VariableRing::new(vec!["t", "x", "y"]);
        let f1 = parse_polynomial("x^2 - t*y", &ring).unwrap();
        let f2 = parse_polynomial("y^2", &ring).unwrap();
        let gb = buchberger(&[f1, f2], MonomialOrder::grevlex(3)).unwrap();
        let (dim, indep) = gb.dimension_and_independent_set().unwrap();
        assert_eq!(dim, 1);
        assert_eq!(indep, vec![0]);
    }

    #[test]
    fn zero_dimensional_ideal_has_empty_independent_set() {
        let ring = VariableRing::new(vec!["x", "y"]);
        let f1 = parse_polynomial("x^2 - 1", &ring).unwrap();
        let f2 = parse_polynomial("y^3", &ring).unwrap();
        let gb = buchberger(&[f1, f2], MonomialOrder::grevlex(2)).unwrap();
        let (dim, indep) = gb.dimension_and_independent_set().unwrap();
        assert_eq!(dim, 0);
        assert!(indep.is_empty());
        assert_eq!(gb.quotient_basis(100).unwrap().len(), 6);
    }

    #[test]
    fn extension_quotient_dimension_four() {
        let ring = VariableRing::new(vec!["t", "x", "y"]);
        let f1 = parse_polynomial("x^2 - t*y", &ring).unwrap();
        let f2 = parse_polynomial("y^2", &ring).unwrap();
        let gb = extend_to_fraction_field(&[f1, f2], &[0]).unwrap();
        let basis = gb.quotient_basis(100).unwrap();
        // standard monomials {1, x, y, xy} under leading terms {x², y²}
        assert_eq!(basis.len(), 4);
        let rendered: Vec<String> = basis
            .iter()
            .map(|m| crate::polyring::monomial_string(m, gb.ring(), ""))
            .collect();
        assert_eq!(rendered, vec!["", "y", "x", "x*y"]);
    }

    #[test]
    fn extension_of_curvilinear_example() {
        let ring = q3();
        let q1 = parse_polynomial("(x1^2 - x3)^2", &ring).unwrap();
        let q2 = parse_polynomial("x2 - x3*(x1^2 - x3)", &ring).unwrap();
        let gb = extend_to_fraction_field(&[q1, q2], &[2]).unwrap();
        // deg(PS) = 2 times multiplicity 2
        assert_eq!(gb.quotient_basis(100).unwrap().len(), 4);
    }

    #[test]
    fn zero_dimensional_input_with_empty_set_is_unchanged() {
        let ring = VariableRing::new(vec!["x", "y"]);
        let f1 = parse_polynomial("x^2 - 1", &ring).unwrap();
        let f2 = parse_polynomial("y", &ring).unwrap();
        let gb = extend_to_fraction_field(&[f1.clone(), f2.clone()], &[]).unwrap();
        let direct = buchberger(&[f1, f2], MonomialOrder::grevlex(2)).unwrap();
        assert_eq!(gb.generators(), direct.generators());
    }

    #[test]
    fn invalid_independent_set_is_rejected() {
        let ring = VariableRing::new(vec!["t", "x", "y"]);
        let f1 = parse_polynomial("x^2 - t*y", &ring).unwrap();
        let f2 = parse_polynomial("y^2", &ring).unwrap();
        // {t, x} is too large: the extension is not zero-dimensional...
        // in fact x is algebraic, so the extension becomes the unit ideal
        let res = extend_to_fraction_field(&[f1, f2], &[0, 1]);
        assert!(matches!(
            res,
            Err(crate::error::Error::IndependentSetInvalid(_))
        ));
    }

    #[test]
    fn zero_ideal_returns_empty_basis() {
        let ring = VariableRing::new(vec!["x"]);
        let z = Polynomial::zero(ring.clone(), FieldContext::Rationals);
        let gb = buchberger(&[z], MonomialOrder::grevlex(1)).unwrap();
        assert!(gb.is_empty());
    }
}
