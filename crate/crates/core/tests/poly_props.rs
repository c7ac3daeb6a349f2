use hypred::poly::groebner::s_polynomial;
use hypred::poly::matrix::mat_mul;
use hypred::poly::{
    determinant_bareiss, determinant_cofactor, groebner, parse_poly, quotient_dimension, random_homogeneous,
    squarefree_part, Budget, Ideal, Monomial, PolyMatrix, SplitMix64,
};
use hypred::{Field, Polynomial, PrimeField, Rationals};
use proptest::prelude::*;

const P: u64 = 10007;
const NAMES: [&str; 3] = ["x0", "x1", "x2"];

fn fp() -> PrimeField {
    PrimeField::new(P).unwrap()
}

fn terms() -> impl Strategy<Value = Vec<([u16; 3], i64)>> {
    prop::collection::vec(([0u16..4, 0u16..4, 0u16..4], -20i64..20), 0..6)
}

fn build<K: Field>(field: &K, t: &[([u16; 3], i64)]) -> Polynomial<K> {
    Polynomial::from_terms(field, 3, t.iter().map(|(e, c)| (Monomial::from_exps(e), field.from_i64(*c))).collect())
}

fn dense<K: Field>(field: &K, nvars: usize, deg: u32, rng: &mut SplitMix64) -> Polynomial<K> {
    (0..=deg).fold(Polynomial::zero(field, nvars), |acc, d| acc.add(&random_homogeneous(field, nvars, d, rng)))
}

fn matrix(n: usize, seed: u64) -> PolyMatrix<PrimeField> {
    let f = fp();
    let mut rng = SplitMix64::new(seed);
    (0..n).map(|_| (0..n).map(|_| dense(&f, 2, (rng.next_u64() % 3) as u32, &mut rng)).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms_over_fp(a in terms(), b in terms(), c in terms()) {
        let f = fp();
        let (a, b, c) = (build(&f, &a), build(&f, &b), build(&f, &c));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn ring_axioms_over_q(a in terms(), b in terms(), c in terms()) {
        let (a, b, c) = (build(&Rationals, &a), build(&Rationals, &b), build(&Rationals, &c));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&Polynomial::one(&Rationals, 3)), a.clone());
        prop_assert_eq!(a.sub(&b).add(&b), a);
    }

    #[test]
    fn grammar_round_trip(a in terms()) {
        let f = fp();
        let p = build(&f, &a);
        let text = p.to_grammar_string(&NAMES).unwrap();
        prop_assert_eq!(parse_poly(&text, &NAMES, &f).unwrap(), p);
    }

    #[test]
    fn evaluation_is_a_ring_map(a in terms(), b in terms(), pt in [0u64..P, 0u64..P, 0u64..P]) {
        let f = fp();
        let (a, b) = (build(&f, &a), build(&f, &b));
        prop_assert_eq!(a.mul(&b).evaluate(&pt), f.mul(&a.evaluate(&pt), &b.evaluate(&pt)));
        prop_assert_eq!(a.add(&b).evaluate(&pt), f.add(&a.evaluate(&pt), &b.evaluate(&pt)));
    }

    #[test]
    fn determinant_strategies_agree(n in 1usize..5, seed in any::<u64>()) {
        let m = matrix(n, seed);
        prop_assert_eq!(determinant_cofactor(&m).unwrap(), determinant_bareiss(&m).unwrap());
    }

    #[test]
    fn determinant_is_multiplicative(n in 1usize..4, s1 in any::<u64>(), s2 in any::<u64>()) {
        let (a, b) = (matrix(n, s1), matrix(n, s2));
        let lhs = determinant_bareiss(&mat_mul(&a, &b)).unwrap();
        let rhs = determinant_bareiss(&a).unwrap().mul(&determinant_bareiss(&b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn groebner_bases_are_closed_under_s_polynomials(seed in any::<u64>(), ngens in 2usize..4) {
        let f = fp();
        let mut rng = SplitMix64::new(seed);
        let gens: Vec<_> = (0..ngens).map(|_| dense(&f, 3, 1 + (rng.next_u64() % 2) as u32, &mut rng)).collect();
        let gb = groebner(&Ideal::grevlex(gens.clone()), &Budget::default()).unwrap();
        for g in &gens {
            prop_assert!(gb.normal_form(g).is_zero());
        }
        let basis = gb.basis();
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                prop_assert!(gb.normal_form(&s_polynomial(&basis[i], &basis[j], gb.order())).is_zero());
            }
        }
    }

    #[test]
    fn quotient_dimension_is_the_bezout_number(seed in any::<u64>(), nvars in 2usize..4) {
        let f = fp();
        let mut rng = SplitMix64::new(seed);
        let degrees: Vec<u32> = (0..nvars).map(|_| 1 + (rng.next_u64() % 3) as u32).collect();
        let gens: Vec<_> = degrees.iter().map(|&d| dense(&f, nvars, d, &mut rng)).collect();
        let gb = groebner(&Ideal::grevlex(gens), &Budget::default()).unwrap();
        let bezout: u32 = degrees.iter().product();
        prop_assert_eq!(quotient_dimension(&gb).unwrap(), bezout as usize);
    }

    #[test]
    fn squarefree_part_forgets_multiplicity(seed in any::<u64>()) {
        let f = fp();
        let mut rng = SplitMix64::new(seed);
        let a = dense(&f, 3, 1 + (rng.next_u64() % 2) as u32, &mut rng);
        let b = dense(&f, 3, 1, &mut rng);
        let budget = Budget::default();
        let once = squarefree_part(&a.mul(&b), &budget).unwrap();
        let repeated = squarefree_part(&a.mul(&a).mul(&b), &budget).unwrap();
        prop_assert!(once.proportional(&repeated));
    }
}
