use hypred::poly::{random_homogeneous, Budget, SplitMix64};
use hypred::quadbundle::families::family_rng;
use hypred::quadbundle::{
    count_singular_points, discriminant, extend_c4, extend_gm21, generate, verify_reduction_invariance, BaseSpec,
    C4Data, FamilyName, FormFile, GradedQuadraticForm, Gm21Data, IsotropicDirection, NodeStatus, Violation,
};
use hypred::{Polynomial, PrimeField};
use proptest::prelude::*;

fn fp() -> PrimeField {
    PrimeField::new(10007).unwrap()
}

/// A random split form on `Pⁿ` with summand degrees in `[-1, 1]`.
fn random_split_form(seed: u64) -> GradedQuadraticForm<PrimeField> {
    let f = fp();
    let mut rng = SplitMix64::new(seed);
    let n = 2 + (rng.next_u64() % 2) as usize;
    let r = 2 + (rng.next_u64() % 3) as usize;
    let degrees: Vec<i64> = (0..r).map(|_| (rng.next_u64() % 3) as i64 - 1).collect();
    let twist = 2 * degrees.iter().max().unwrap() + (rng.next_u64() % 2) as i64;
    let mut entries = vec![vec![Polynomial::zero(&f, n + 1); r]; r];
    for i in 0..r {
        for j in i..r {
            let d = (twist - degrees[i] - degrees[j]) as u32;
            let p = random_homogeneous(&f, n + 1, d, &mut rng);
            entries[i][j] = p.clone();
            entries[j][i] = p;
        }
    }
    GradedQuadraticForm::new(&f, BaseSpec::ProjSpace { n }, degrees, twist, entries, Vec::new())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn discriminant_degree_formula(seed in any::<u64>()) {
        let q = random_split_form(seed);
        prop_assert!(q.validate().is_empty());
        let d = discriminant(&q, &Budget::default()).unwrap();
        let expected = q.size() as i64 * q.twist - 2 * q.degrees.iter().sum::<i64>();
        prop_assert_eq!(d.degree, expected);
        let g = d.global.unwrap();
        prop_assert!(g.is_zero() || g.is_homogeneous(None) == Some(expected));
    }

    #[test]
    fn form_files_round_trip(seed in any::<u64>()) {
        let q = random_split_form(seed);
        let text = FormFile::from_form(&q).unwrap().to_json();
        prop_assert_eq!(FormFile::parse(&text).unwrap().build(&fp()).unwrap(), q);
    }

    #[test]
    fn perturbed_entries_are_rejected(seed in any::<u64>()) {
        let mut q = random_split_form(seed);
        let f = fp();
        let r = q.size();
        let i = (seed % r as u64) as usize;
        let j = ((seed >> 8) % r as u64) as usize;
        let extra = Polynomial::var(&f, q.nvars(), 0).pow((q.entry_degree(i, j) + 1) as u32);
        q.entries[i][j] = q.entries[i][j].add(&extra);
        let v = q.validate();
        let flagged = v.iter().any(|x| matches!(x, Violation::DegreePattern { .. } | Violation::Asymmetric { .. }));
        prop_assert!(flagged);
    }

    #[test]
    fn node_counts_are_invariant_under_coordinate_permutations(seed in 1u64..1_000_000) {
        let f = fp();
        let budget = Budget::default();
        let g = generate(FamilyName::C4, seed, &f).unwrap();
        let eq = discriminant(&g.form, &budget).unwrap().global.unwrap();
        let base = count_singular_points(&eq, None, &budget).unwrap();
        let mut rng = SplitMix64::new(seed);
        let mut perm: Vec<usize> = (0..4).collect();
        for i in (1..4).rev() {
            perm.swap(i, (rng.next_u64() % (i as u64 + 1)) as usize);
        }
        let permuted = count_singular_points(&eq.permute_vars(&perm), None, &budget).unwrap();
        prop_assert_eq!(base.status, permuted.status);
        prop_assert_eq!(base.reduced, permuted.reduced);
        prop_assert_eq!(base.hessian_checks.len(), permuted.hessian_checks.len());
        prop_assert!(matches!(base.status, NodeStatus::Finite(16)));
    }

    #[test]
    fn c4_extensions_reduce_invariantly(seed in any::<u64>()) {
        let f = fp();
        let mut rng = SplitMix64::new(seed);
        let d = C4Data::random(&f, &mut rng);
        let y = extend_c4(&f, &d.q0, &d.q1, &d.q2, &d.l1, &d.l2, &d.l3).unwrap();
        let up = IsotropicDirection::coordinate(&y, 4);
        let down = IsotropicDirection::coordinate(&y, 0);
        let r = verify_reduction_invariance(&y, &up, &down, &Budget::default()).unwrap();
        prop_assert!(r.pass);
        prop_assert_eq!(r.isotropic_mod_divisor(), Some(true));
    }

    #[test]
    fn gm21_extensions_reduce_invariantly(seed in any::<u64>()) {
        let f = fp();
        let mut rng = family_rng(FamilyName::YGm21K335, seed, 0);
        let Some(d) = Gm21Data::random(&f, &mut rng) else { return Ok(()) };
        let y = extend_gm21(&f, &d.ell, &d.phi, &d.a, &d.l1, &d.l2).unwrap();
        let e3 = IsotropicDirection::coordinate(&y, 2);
        let e5 = IsotropicDirection::coordinate(&y, 4);
        let r = verify_reduction_invariance(&y, &e3, &e5, &Budget::default()).unwrap();
        prop_assert!(r.pass);
        prop_assert!(r.divisor.proportional(&d.l1));
    }
}
