//! Buchberger's algorithm with the Gebauer–Möller pair update (which applies
//! both of Buchberger's criteria) and the normal selection strategy.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use super::monomial::{Monomial, MonomialOrder};
use super::Polynomial;
use crate::error::{Error, Result};
use crate::field::Field;

/// Default number of pair reductions before a computation gives up.
pub const DEFAULT_PAIR_BUDGET: u64 = 2_000_000;

/// Resource limits for a single Gröbner computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_pairs: u64,
    pub max_time: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_pairs: DEFAULT_PAIR_BUDGET, max_time: None }
    }
}

impl Budget {
    pub fn pairs(max_pairs: u64) -> Self {
        Budget { max_pairs, max_time: None }
    }
}

#[derive(Clone, Debug)]
pub struct Ideal<K: Field> {
    pub generators: Vec<Polynomial<K>>,
    pub order: MonomialOrder,
}

impl<K: Field> Ideal<K> {
    pub fn new(generators: Vec<Polynomial<K>>, order: MonomialOrder) -> Self {
        Ideal { generators, order }
    }

    pub fn grevlex(generators: Vec<Polynomial<K>>) -> Self {
        Ideal { generators, order: MonomialOrder::GrevLex }
    }
}

/// A reduced Gröbner basis: monic elements, no leading monomial divides
/// another, every element fully reduced against the rest. Elements are sorted
/// by increasing leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<K: Field> {
    field: K,
    nvars: usize,
    order: MonomialOrder,
    basis: Vec<Polynomial<K>>,
    leads: Vec<Monomial>,
    pairs_reduced: u64,
}

/// Terms sorted descending in a chosen order.
type Terms<K> = Vec<(Monomial, <K as Field>::Elem)>;

fn sort_terms<K: Field>(p: &Polynomial<K>, order: MonomialOrder) -> Terms<K> {
    let mut t: Terms<K> = p.terms().to_vec();
    if order != MonomialOrder::GrevLex {
        t.sort_by(|a, b| b.0.cmp_by(&a.0, order));
    }
    t
}

/// `a - c·m·b` for term lists sorted in `order`.
fn sub_scaled<K: Field>(f: &K, a: &[(Monomial, K::Elem)], c: &K::Elem, m: &Monomial, b: &[(Monomial, K::Elem)], order: MonomialOrder) -> Terms<K> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut bj: Option<(Monomial, K::Elem)> = b.first().map(|(bm, bc)| (bm.mul(m), f.mul(bc, c)));
    while i < a.len() || bj.is_some() {
        match (&a.get(i), &bj) {
            (Some((am, ac)), Some((bm, bc))) => match am.cmp_by(bm, order) {
                Ordering::Greater => {
                    out.push((am.clone(), ac.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((bm.clone(), f.neg(bc)));
                    j += 1;
                    bj = b.get(j).map(|(bm, bc)| (bm.mul(m), f.mul(bc, c)));
                }
                Ordering::Equal => {
                    let v = f.sub(ac, bc);
                    if !f.is_zero(&v) {
                        out.push((am.clone(), v));
                    }
                    i += 1;
                    j += 1;
                    bj = b.get(j).map(|(bm, bc)| (bm.mul(m), f.mul(bc, c)));
                }
            },
            (Some((am, ac)), None) => {
                out.push((am.clone(), ac.clone()));
                i += 1;
            }
            (None, Some((bm, bc))) => {
                out.push((bm.clone(), f.neg(bc)));
                j += 1;
                bj = b.get(j).map(|(bm, bc)| (bm.mul(m), f.mul(bc, c)));
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

fn make_monic<K: Field>(f: &K, t: &mut Terms<K>) {
    if let Some((_, c)) = t.first() {
        if !f.is_one(c) {
            let inv = f.inv(c).expect("nonzero");
            for (_, v) in t.iter_mut() {
                *v = f.mul(v, &inv);
            }
        }
    }
}

/// Full reduction of `p` by monic `basis` (only entries flagged `active`).
fn reduce_full<K: Field>(f: &K, p: Terms<K>, basis: &[Terms<K>], active: &[bool], order: MonomialOrder) -> Terms<K> {
    let mut rem = p;
    let mut out: Terms<K> = Vec::new();
    let mut start = 0usize;
    // `rem[start..]` is still to be examined; `out` holds irreducible terms.
    while start < rem.len() {
        let (m, c) = rem[start].clone();
        let div = basis
            .iter()
            .enumerate()
            .find(|(k, g)| active[*k] && g[0].0.divides(&m));
        match div {
            Some((_, g)) => {
                let q = g[0].0.quotient_of(&m);
                // subtract c·q·g from the unexamined tail (g is monic)
                let tail = &rem[start..];
                let next = sub_scaled(f, tail, &c, &q, g, order);
                rem = next;
                start = 0;
            }
            None => {
                out.push((m, c));
                start += 1;
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

pub fn groebner<K: Field>(ideal: &Ideal<K>, budget: &Budget) -> Result<GroebnerBasis<K>> {
    let order = ideal.order;
    let gens: Vec<&Polynomial<K>> = ideal.generators.iter().filter(|g| !g.is_zero()).collect();
    let (field, nvars) = match ideal.generators.first() {
        Some(g) => (g.field().clone(), g.nvars()),
        None => return Err(Error::Invalid("ideal needs at least one generator for its context".into())),
    };
    for g in &ideal.generators {
        g.check_compatible(ideal.generators.first().unwrap())?;
    }
    let f = &field;
    let start = Instant::now();
    let mut polys: Vec<Terms<K>> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut reduced_pairs: u64 = 0;

    let insert = |h: Terms<K>, polys: &mut Vec<Terms<K>>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>| {
        let hl = h[0].0.clone();
        let hidx = polys.len();
        // Gebauer–Möller: new pairs (g, h)
        let mut cands: Vec<Pair> = (0..polys.len())
            .filter(|&k| active[k])
            .map(|k| Pair { i: k, j: hidx, lcm: polys[k][0].0.lcm(&hl) })
            .collect();
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p) = if cands.is_empty() { None } else { Some(cands.remove(0)) } {
            let coprime = polys[p.i][0].0.coprime(&hl);
            let dominated = cands.iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push(p);
            }
        }
        let new_pairs: Vec<Pair> = kept.into_iter().filter(|p| !polys[p.i][0].0.coprime(&hl)).collect();
        // drop old pairs made redundant by h (chain criterion)
        pairs.retain(|p| {
            if !hl.divides(&p.lcm) {
                return true;
            }
            let l1 = polys[p.i][0].0.lcm(&hl);
            let l2 = polys[p.j][0].0.lcm(&hl);
            l1 == p.lcm || l2 == p.lcm
        });
        pairs.extend(new_pairs);
        for k in 0..polys.len() {
            if active[k] && hl.divides(&polys[k][0].0) {
                active[k] = false;
            }
        }
        polys.push(h);
        active.push(true);
    };

    for g in gens {
        let t = sort_terms(g, order);
        let mut r = reduce_full(f, t, &polys, &active, order);
        if r.is_empty() {
            continue;
        }
        make_monic(f, &mut r);
        insert(r, &mut polys, &mut active, &mut pairs);
    }

    while !pairs.is_empty() {
        // normal selection: smallest lcm
        let mut best = 0;
        for k in 1..pairs.len() {
            if pairs[k].lcm.cmp_by(&pairs[best].lcm, order) == Ordering::Less {
                best = k;
            }
        }
        let p = pairs.swap_remove(best);
        reduced_pairs += 1;
        if reduced_pairs > budget.max_pairs {
            return Err(Error::BudgetExceeded(reduced_pairs - 1));
        }
        if let Some(limit) = budget.max_time {
            if reduced_pairs % 16 == 0 && start.elapsed() > limit {
                return Err(Error::BudgetExceeded(reduced_pairs));
            }
        }
        let (gi, gj) = (&polys[p.i], &polys[p.j]);
        let qi = gi[0].0.quotient_of(&p.lcm);
        let qj = gj[0].0.quotient_of(&p.lcm);
        let one = f.one();
        // s = qi·gi − qj·gj, both monic
        let si: Terms<K> = gi.iter().skip(1).map(|(m, c)| (m.mul(&qi), c.clone())).collect();
        let s = sub_scaled(f, &si, &one, &qj, &gj[1..], order);
        let mut h = reduce_full(f, s, &polys, &active, order);
        if h.is_empty() {
            continue;
        }
        make_monic(f, &mut h);
        insert(h, &mut polys, &mut active, &mut pairs);
    }

    // minimal basis, then interreduce
    let mut minimal: Vec<Terms<K>> = Vec::new();
    let mut idx: Vec<usize> = (0..polys.len()).filter(|&k| active[k]).collect();
    idx.sort_by(|&a, &b| polys[a][0].0.cmp_by(&polys[b][0].0, order));
    for &k in &idx {
        let lm = &polys[k][0].0;
        if !minimal.iter().any(|g| g[0].0.divides(lm)) {
            minimal.push(polys[k].clone());
        }
    }
    let mut reduced: Vec<Terms<K>> = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let mut flags = vec![true; minimal.len()];
        flags[k] = false;
        let head = minimal[k][0].clone();
        let tail = reduce_full(f, minimal[k][1..].to_vec(), &minimal, &flags, order);
        let mut t = vec![head];
        t.extend(tail);
        reduced.push(t);
    }
    let leads: Vec<Monomial> = reduced.iter().map(|t| t[0].0.clone()).collect();
    let basis: Vec<Polynomial<K>> = reduced.into_iter().map(|t| Polynomial::from_terms(f, nvars, t)).collect();
    Ok(GroebnerBasis { field, nvars, order, basis, leads, pairs_reduced: reduced_pairs })
}

impl<K: Field> GroebnerBasis<K> {
    pub fn basis(&self) -> &[Polynomial<K>] {
        &self.basis
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leads
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn pairs_reduced(&self) -> u64 {
        self.pairs_reduced
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.leads.iter().any(|m| m.is_one())
    }

    /// Normal form of `p` modulo the basis.
    pub fn normal_form(&self, p: &Polynomial<K>) -> Polynomial<K> {
        let basis: Vec<Terms<K>> = self.basis.iter().map(|g| sort_terms(g, self.order)).collect();
        let flags = vec![true; basis.len()];
        let t = reduce_full(&self.field, sort_terms(p, self.order), &basis, &flags, self.order);
        Polynomial::from_terms(&self.field, self.nvars, t)
    }

    pub fn contains(&self, p: &Polynomial<K>) -> bool {
        self.normal_form(p).is_zero()
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.leads.iter().any(|l| l.divides(m))
    }

    /// Exponent bounds if every variable has a pure power among the leading
    /// monomials; `None` otherwise.
    fn pure_power_bounds(&self) -> Option<Vec<u16>> {
        let mut bounds = vec![u16::MAX; self.nvars];
        for m in &self.leads {
            let support: Vec<usize> = (0..self.nvars).filter(|&i| m.exp(i) > 0).collect();
            if support.len() == 1 {
                let i = support[0];
                bounds[i] = bounds[i].min(m.exp(i));
            }
        }
        if bounds.iter().any(|&b| b == u16::MAX) {
            None
        } else {
            Some(bounds)
        }
    }

    /// All standard monomials, or `InfiniteDimensional`.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>> {
        if self.is_unit_ideal() {
            return Ok(Vec::new());
        }
        let bounds = self.pure_power_bounds().ok_or(Error::InfiniteDimensional)?;
        let mut out = Vec::new();
        let mut cur = vec![0u16; self.nvars];
        self.enumerate(0, &bounds, &mut cur, &mut out);
        out.sort_by(|a, b| a.cmp_by(b, self.order));
        Ok(out)
    }

    fn enumerate(&self, i: usize, bounds: &[u16], cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i == self.nvars {
            out.push(Monomial::from_exps(cur));
            return;
        }
        for e in 0..bounds[i] {
            cur[i] = e;
            // prune: a partial exponent vector already divisible stays divisible
            let partial = Monomial::from_exps(cur);
            if !self.is_standard(&partial) {
                break;
            }
            self.enumerate(i + 1, bounds, cur, out);
        }
        cur[i] = 0;
    }
}

/// Dimension of the quotient algebra (number of standard monomials).
pub fn quotient_dimension<K: Field>(g: &GroebnerBasis<K>) -> Result<usize> {
    g.standard_monomials().map(|v| v.len())
}

/// The S-polynomial of two polynomials in a given order (for checks).
pub fn s_polynomial<K: Field>(a: &Polynomial<K>, b: &Polynomial<K>, order: MonomialOrder) -> Polynomial<K> {
    let f = a.field();
    let (la, ca) = a.lead_by(order).expect("nonzero").clone();
    let (lb, cb) = b.lead_by(order).expect("nonzero").clone();
    let l = la.lcm(&lb);
    let ta = a.mul_term(&la.quotient_of(&l), &f.inv(&ca).unwrap());
    let tb = b.mul_term(&lb.quotient_of(&l), &f.inv(&cb).unwrap());
    ta.sub(&tb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::parse_poly;

    fn q(s: &str, v: &[&str]) -> Polynomial<Rationals> {
        parse_poly(s, v, &Rationals).unwrap()
    }

    #[test]
    fn circle_and_line() {
        let v = ["x", "y"];
        let id = Ideal::grevlex(vec![q("x - y", &v), q("x^2 + y^2 - 1", &v)]);
        let g = groebner(&id, &Budget::default()).unwrap();
        let half = Rationals.from_ratio(1, 2).unwrap();
        let expected_tail = Polynomial::var(&Rationals, 2, 1).pow(2).sub(&Polynomial::constant(&Rationals, 2, half));
        assert_eq!(g.basis().len(), 2);
        assert!(g.basis().contains(&q("x - y", &v)));
        assert!(g.basis().contains(&expected_tail));
        assert_eq!(quotient_dimension(&g).unwrap(), 2);
    }

    #[test]
    fn monomial_ideal_and_unit() {
        let v = ["x", "y"];
        let g = groebner(&Ideal::grevlex(vec![q("x^2", &v), q("y^3", &v)]), &Budget::default()).unwrap();
        assert_eq!(g.basis().len(), 2);
        assert_eq!(quotient_dimension(&g).unwrap(), 6);
        let u = groebner(&Ideal::grevlex(vec![q("1", &v)]), &Budget::default()).unwrap();
        assert_eq!(u.basis(), &[q("1", &v)]);
        assert_eq!(quotient_dimension(&u).unwrap(), 0);
    }

    #[test]
    fn point_and_line_quotients() {
        let v = ["x", "y"];
        let g = groebner(&Ideal::grevlex(vec![q("x", &v), q("y", &v)]), &Budget::default()).unwrap();
        assert_eq!(quotient_dimension(&g).unwrap(), 1);
        let g = groebner(&Ideal::grevlex(vec![q("x", &v)]), &Budget::default()).unwrap();
        assert_eq!(quotient_dimension(&g), Err(Error::InfiniteDimensional));
    }

    #[test]
    fn lex_elimination() {
        let v = ["x", "y"];
        let id = Ideal::new(vec![q("x^2 + y^2 - 1", &v), q("x - y^2", &v)], MonomialOrder::Lex);
        let g = groebner(&id, &Budget::default()).unwrap();
        // the smallest element lives in y alone: y^4 + y^2 - 1
        assert_eq!(g.basis()[0], q("y^4 + y^2 - 1", &v));
    }

    #[test]
    fn budget_is_reported() {
        let f = PrimeField::new(10007).unwrap();
        let v = ["x", "y", "z"];
        let gens = vec![
            parse_poly("x^3 + y^2*z + 3", &v, &f).unwrap(),
            parse_poly("y^3 + x*z^2 + 5*x", &v, &f).unwrap(),
            parse_poly("z^3 + x^2*y + 7*y", &v, &f).unwrap(),
        ];
        let r = groebner(&Ideal::grevlex(gens), &Budget::pairs(2));
        assert!(matches!(r, Err(Error::BudgetExceeded(_))));
    }
}
