//! Seeded randomized checks of the polynomial and intersection-theory
//! engines. Each check runs a fixed number of cases from one seed.

use hypred::chow::{BundleClass, Scene};
use hypred::poly::groebner::s_polynomial;
use hypred::poly::{
    determinant_bareiss, determinant_cofactor, groebner, quotient_dimension, random_homogeneous,
    Budget, Ideal, Monomial, PolyMatrix, SplitMix64,
};
use hypred::{Field, Polynomial, PrimeField, Rationals};
use serde::Serialize;

pub const CASES: usize = 100;

#[derive(Clone, Debug, Serialize)]
pub struct PropertyCheck {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    /// First failing case, when any.
    pub first_failure: Option<String>,
}

impl PropertyCheck {
    pub fn pass(&self) -> bool {
        self.failures == 0 && self.cases >= CASES
    }
}

fn run(name: &str, seed: u64, mut case: impl FnMut(usize, &mut SplitMix64) -> Result<(), String>) -> PropertyCheck {
    let mut rng = SplitMix64::new(seed);
    let mut failures = 0;
    let mut first_failure = None;
    for i in 0..CASES {
        let mut r = rng.fork();
        if let Err(msg) = case(i, &mut r) {
            failures += 1;
            first_failure.get_or_insert_with(|| format!("case {i}: {msg}"));
        }
    }
    PropertyCheck { name: name.to_string(), cases: CASES, failures, first_failure }
}

fn below(rng: &mut SplitMix64, n: u64) -> u64 {
    rng.next_u64() % n
}

/// A random polynomial of degree at most `deg`, dense in each component.
fn random_poly<K: Field>(field: &K, nvars: usize, deg: u32, rng: &mut SplitMix64) -> Polynomial<K> {
    (0..=deg).fold(Polynomial::zero(field, nvars), |acc, d| acc.add(&random_homogeneous(field, nvars, d, rng)))
}

/// A sparse random polynomial with small integer coefficients.
fn sparse_poly<K: Field>(field: &K, nvars: usize, rng: &mut SplitMix64) -> Polynomial<K> {
    let nterms = below(rng, 5) as usize;
    let terms = (0..nterms)
        .map(|_| {
            let exps: Vec<u16> = (0..nvars).map(|_| below(rng, 3) as u16).collect();
            (Monomial::from_exps(&exps), field.from_i64(below(rng, 19) as i64 - 9))
        })
        .collect();
    Polynomial::from_terms(field, nvars, terms)
}

fn ring_axioms_over<K: Field>(field: &K, rng: &mut SplitMix64) -> Result<(), String> {
    let n = 1 + below(rng, 3) as usize;
    let a = sparse_poly(field, n, rng);
    let b = sparse_poly(field, n, rng);
    let c = sparse_poly(field, n, rng);
    let one = Polynomial::one(field, n);
    let zero = Polynomial::zero(field, n);
    let checks = [
        ("additive associativity", a.add(&b).add(&c) == a.add(&b.add(&c))),
        ("additive commutativity", a.add(&b) == b.add(&a)),
        ("additive inverse", a.add(&a.neg()) == zero),
        ("multiplicative associativity", a.mul(&b).mul(&c) == a.mul(&b.mul(&c))),
        ("multiplicative commutativity", a.mul(&b) == b.mul(&a)),
        ("distributivity", a.mul(&b.add(&c)) == a.mul(&b).add(&a.mul(&c))),
        ("unit", a.mul(&one) == a),
        ("subtraction", a.sub(&b).add(&b) == a),
    ];
    match checks.iter().find(|(_, ok)| !ok) {
        Some((law, _)) => Err(format!("{law} fails for a = {a}, b = {b}, c = {c}")),
        None => Ok(()),
    }
}

pub fn ring_axioms(seed: u64, prime: u64) -> PropertyCheck {
    let fp = PrimeField::new(prime).expect("validated prime");
    run("poly ring axioms", seed, |i, rng| {
        if i % 2 == 0 {
            ring_axioms_over(&fp, rng)
        } else {
            ring_axioms_over(&Rationals, rng)
        }
    })
}

pub fn determinant_strategies(seed: u64, prime: u64) -> PropertyCheck {
    let fp = PrimeField::new(prime).expect("validated prime");
    run("determinant strategies agree", seed, |_, rng| {
        let n = 1 + below(rng, 4) as usize;
        let nvars = 1 + below(rng, 3) as usize;
        let m: PolyMatrix<PrimeField> =
            (0..n).map(|_| (0..n).map(|_| random_poly(&fp, nvars, below(rng, 3) as u32, rng)).collect()).collect();
        let a = determinant_cofactor(&m).map_err(|e| e.to_string())?;
        let b = determinant_bareiss(&m).map_err(|e| e.to_string())?;
        if a == b {
            Ok(())
        } else {
            Err(format!("{n}×{n}: cofactor {a} vs Bareiss {b}"))
        }
    })
}

pub fn s_polynomials_reduce(seed: u64, prime: u64) -> PropertyCheck {
    let fp = PrimeField::new(prime).expect("validated prime");
    run("S-polynomials reduce to zero", seed, |_, rng| {
        let nvars = 2 + below(rng, 2) as usize;
        let ngens = 2 + below(rng, 2) as usize;
        let gens: Vec<_> = (0..ngens).map(|_| random_poly(&fp, nvars, 1 + below(rng, 2) as u32, rng)).collect();
        let ideal = Ideal::grevlex(gens.clone());
        let gb = groebner(&ideal, &Budget::default()).map_err(|e| e.to_string())?;
        for g in &gens {
            if !gb.normal_form(g).is_zero() {
                return Err(format!("generator {g} does not reduce to zero"));
            }
        }
        let basis = gb.basis();
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let s = s_polynomial(&basis[i], &basis[j], gb.order());
                if !gb.normal_form(&s).is_zero() {
                    return Err(format!("S({i},{j}) has nonzero normal form"));
                }
            }
        }
        Ok(())
    })
}

/// Count monomials outside the leading-term ideal inside the box cut out by
/// the pure powers among the leading monomials.
fn staircase_count(leads: &[Monomial], nvars: usize) -> Option<usize> {
    let mut bounds = vec![None; nvars];
    for m in leads {
        let support: Vec<usize> = (0..nvars).filter(|&i| m.exp(i) > 0).collect();
        if let [i] = support[..] {
            let e = m.exp(i) as usize;
            bounds[i] = Some(bounds[i].map_or(e, |b: usize| b.min(e)));
        }
    }
    let bounds: Vec<usize> = bounds.into_iter().collect::<Option<_>>()?;
    let mut count = 0;
    let mut exps = vec![0usize; nvars];
    loop {
        let m = Monomial::from_exps(&exps.iter().map(|&e| e as u16).collect::<Vec<_>>());
        if !leads.iter().any(|l| l.divides(&m)) {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == nvars {
                return Some(count);
            }
            exps[k] += 1;
            if exps[k] < bounds[k] {
                break;
            }
            exps[k] = 0;
            k += 1;
        }
    }
}

pub fn quotient_dimension_vs_staircase(seed: u64, prime: u64) -> PropertyCheck {
    let fp = PrimeField::new(prime).expect("validated prime");
    run("quotient dimension matches staircase and Bezout", seed, |_, rng| {
        let nvars = 2 + below(rng, 2) as usize;
        let degrees: Vec<u32> = (0..nvars).map(|_| 1 + below(rng, 3) as u32).collect();
        let gens: Vec<_> = degrees.iter().map(|&d| random_poly(&fp, nvars, d, rng)).collect();
        let gb = groebner(&Ideal::grevlex(gens), &Budget::default()).map_err(|e| e.to_string())?;
        let dim = quotient_dimension(&gb).map_err(|e| e.to_string())?;
        let brute = staircase_count(gb.leading_monomials(), nvars).ok_or("staircase is not bounded")?;
        let bezout: u32 = degrees.iter().product();
        if dim != brute {
            return Err(format!("quotient dimension {dim} but staircase box count {brute}"));
        }
        if dim != bezout as usize {
            return Err(format!("degrees {degrees:?}: quotient dimension {dim}, Bezout bound {bezout}"));
        }
        Ok(())
    })
}

/// Flag varieties over a point used by the intersection-theory checks.
fn random_flag(rng: &mut SplitMix64) -> (Vec<usize>, Scene) {
    let n = 2 + below(rng, 3) as usize;
    let mut ranks = Vec::new();
    let mut left = n;
    while left > 0 {
        let r = 1 + below(rng, left as u64) as usize;
        ranks.push(r);
        left -= r;
    }
    if ranks.len() == 1 {
        ranks = vec![1, n - 1];
    }
    let pt = Scene::point();
    let scene = Scene::flag_bundle(&pt, &pt.trivial(n as i64), &ranks).expect("flag variety");
    (ranks, scene)
}

fn random_bundle(x: &Scene, rng: &mut SplitMix64) -> Result<BundleClass, String> {
    let names = x.bundle_names();
    let mut e = x.trivial(below(rng, 2) as i64);
    for _ in 0..1 + below(rng, 2) {
        let mut b = x.bundle(&names[below(rng, names.len() as u64) as usize]).map_err(|e| e.to_string())?;
        if below(rng, 2) == 0 {
            b = b.dual();
        }
        e = e.add(&b).map_err(|e| e.to_string())?;
    }
    Ok(e)
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn whitney(seed: u64) -> PropertyCheck {
    run("chow Whitney formula and λ-ranks", seed, |_, rng| {
        let (_, x) = random_flag(rng);
        let e = random_bundle(&x, rng)?;
        let f = random_bundle(&x, rng)?;
        let sum = e.add(&f).map_err(|e| e.to_string())?;
        let product = e.total_chern().mul(&f.total_chern()).map_err(|e| e.to_string())?;
        if sum.total_chern() != product {
            return Err("c(E ⊕ F) differs from c(E)c(F)".into());
        }
        let t = e.tensor(&f).map_err(|e| e.to_string())?;
        if t.ch() != e.ch().mul(&f.ch()).map_err(|e| e.to_string())? {
            return Err("ch(E ⊗ F) differs from ch(E)ch(F)".into());
        }
        let r = e.rank();
        for k in 0..=r.min(4) {
            let w = e.wedge(k as u32).map_err(|e| e.to_string())?;
            if w.rank() != binomial(r, k) {
                return Err(format!("rank of Λ^{k} of a rank {r} bundle is {}", w.rank()));
            }
        }
        let dual = e.dual();
        for i in 0..=x.dim() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            if dual.chern(i) != e.chern(i).scale_i64(sign) {
                return Err(format!("c_{i}(E^∨) is not (−1)^{i} c_{i}(E)"));
            }
        }
        Ok(())
    })
}

pub fn normalization_and_euler(seed: u64) -> PropertyCheck {
    run("chow normalization and Euler numbers", seed, |i, rng| {
        if i % 2 == 0 {
            let n = 1 + below(rng, 6) as u32;
            let p = Scene::projective_space(n).map_err(|e| e.to_string())?;
            let h = p.class("h").map_err(|e| e.to_string())?;
            let top = p.integral_int(&h.pow(n)).map_err(|e| e.to_string())?;
            let euler = p.euler().map_err(|e| e.to_string())?;
            if top != 1 || euler != n as i64 + 1 {
                return Err(format!("P^{n}: ∫h^n = {top}, e = {euler}"));
            }
            return Ok(());
        }
        let (ranks, x) = random_flag(rng);
        let n: usize = ranks.iter().sum();
        let expected = ranks.iter().fold(factorial(n), |acc, &r| acc / factorial(r));
        let euler = x.euler().map_err(|e| e.to_string())?;
        let chi = x.chi_sheaf(&x.trivial(1)).map_err(|e| e.to_string())?;
        if euler != expected || chi != 1 {
            return Err(format!("flags {ranks:?}: e = {euler} (expected {expected}), χ(O) = {chi}"));
        }
        Ok(())
    })
}

/// Euler numbers of the classical homogeneous spaces.
pub fn classical_euler_numbers() -> Vec<(String, i64, i64)> {
    let pt = Scene::point();
    let mut out = Vec::new();
    for n in 1..=4u32 {
        let p = Scene::projective_space(n).expect("projective space");
        out.push((format!("P^{n}"), p.euler().expect("euler"), n as i64 + 1));
    }
    for (label, n, ranks, expected) in
        [("Gr(2,4)", 4, vec![2, 2], 6), ("Fl_3", 3, vec![1, 1, 1], 6), ("Fl(1,2;5)", 5, vec![1, 1, 3], 20)]
    {
        let x = Scene::flag_bundle(&pt, &pt.trivial(n), &ranks).expect("flag variety");
        out.push((label.to_string(), x.euler().expect("euler"), expected));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn staircase_of_pure_powers() {
        let leads = [Monomial::from_exps(&[2, 0]), Monomial::from_exps(&[0, 3])];
        assert_eq!(staircase_count(&leads, 2), Some(6));
        assert_eq!(staircase_count(&[Monomial::from_exps(&[1, 1])], 2), None);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 4), 0);
    }
}
