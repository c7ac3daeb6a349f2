use hypred::chow::{BundleClass, ChowClass, Scene};
use hypred::poly::SplitMix64;
use proptest::prelude::*;

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// `χ(Pⁿ, O(k)) = (k+1)(k+2)…(k+n)/n!` for every integer `k`.
fn chi_line(n: i64, k: i64) -> i64 {
    (1..=n).fold(1i128, |acc, i| acc * (k + i) as i128) as i64 / factorial(n as usize)
}

fn flag(ranks: &[usize]) -> Scene {
    let pt = Scene::point();
    let n: usize = ranks.iter().sum();
    Scene::flag_bundle(&pt, &pt.trivial(n as i64), ranks).unwrap()
}

fn ranks_strategy() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..3, 2..4).prop_filter("at most five", |r| r.iter().sum::<usize>() <= 5)
}

fn random_bundle(x: &Scene, rng: &mut SplitMix64) -> BundleClass {
    let names = x.bundle_names();
    let mut e = x.trivial((rng.next_u64() % 2) as i64);
    for _ in 0..1 + rng.next_u64() % 2 {
        let mut b = x.bundle(&names[(rng.next_u64() % names.len() as u64) as usize]).unwrap();
        if rng.next_u64() % 2 == 0 {
            b = b.dual();
        }
        e = e.add(&b).unwrap();
    }
    e
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn split_bundles_on_projective_space(n in 1u32..5, twists in prop::collection::vec(-3i64..4, 1..4)) {
        let p = Scene::projective_space(n).unwrap();
        let h = p.class("h").unwrap();
        let mut e = p.trivial(0);
        let mut expected = ChowClass::one(p.ring());
        for &a in &twists {
            e = e.add(&BundleClass::line(&h.scale_i64(a))).unwrap();
            expected = expected.mul(&ChowClass::one(p.ring()).add(&h.scale_i64(a)).unwrap()).unwrap();
        }
        prop_assert_eq!(e.total_chern(), expected);
        prop_assert_eq!(e.rank(), twists.len() as i64);
    }

    #[test]
    fn riemann_roch_for_line_bundles(n in 1u32..6, k in -6i64..7) {
        let p = Scene::projective_space(n).unwrap();
        let h = p.class("h").unwrap();
        let chi = p.chi_sheaf(&BundleClass::line(&h.scale_i64(k))).unwrap();
        prop_assert_eq!(chi, chi_line(n as i64, k));
    }

    #[test]
    fn whitney_and_multiplicativity(ranks in ranks_strategy(), seed in any::<u64>()) {
        let x = flag(&ranks);
        let mut rng = SplitMix64::new(seed);
        let e = random_bundle(&x, &mut rng);
        let f = random_bundle(&x, &mut rng);
        prop_assert_eq!(e.add(&f).unwrap().total_chern(), e.total_chern().mul(&f.total_chern()).unwrap());
        prop_assert_eq!(e.tensor(&f).unwrap().ch(), e.ch().mul(&f.ch()).unwrap());
        prop_assert_eq!(e.dual().dual(), e.clone());
        let r = e.rank();
        for k in 0..=r.min(3) {
            prop_assert_eq!(e.wedge(k as u32).unwrap().rank(), binomial(r, k));
            prop_assert_eq!(e.sym(k as u32).unwrap().rank(), binomial(r + k - 1, k));
        }
    }

    #[test]
    fn flag_varieties_have_multinomial_euler_numbers(ranks in ranks_strategy()) {
        let x = flag(&ranks);
        let n: usize = ranks.iter().sum();
        let expected = ranks.iter().fold(factorial(n), |acc, &r| acc / factorial(r));
        prop_assert_eq!(x.euler().unwrap(), expected);
        prop_assert_eq!(x.chi_sheaf(&x.trivial(1)).unwrap(), 1);
        let dim: usize = (0..ranks.len()).flat_map(|i| (i + 1..ranks.len()).map(move |j| (i, j))).map(|(i, j)| ranks[i] * ranks[j]).sum();
        prop_assert_eq!(x.dim() as usize, dim);
    }
}

#[test]
fn classical_euler_numbers() {
    for n in 1..=5u32 {
        assert_eq!(Scene::projective_space(n).unwrap().euler().unwrap(), n as i64 + 1);
    }
    assert_eq!(flag(&[2, 2]).euler().unwrap(), 6);
    assert_eq!(flag(&[1, 1, 1]).euler().unwrap(), 6);
    assert_eq!(flag(&[1, 1, 3]).euler().unwrap(), 20);
}
