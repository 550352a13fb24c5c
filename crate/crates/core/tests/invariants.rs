mod common;

use num_bigint::BigUint;
use proptest::prelude::*;
use rand::Rng;
use reflexff::census::{CountMode, Coset};
use reflexff::search::{sample_space, SearchParams};

use common::*;

fn space_strategy() -> impl Strategy<Value = (u64, u64)> {
    (prop_oneof![Just(2u64), Just(3u64)], any::<u64>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn closure_contains_space_and_is_idempotent((q, seed) in space_strategy()) {
        let s = mixed_space(&mut rng(seed), q, 4, 3);
        let c = s.reflexive_closure();
        for f in s.basis() {
            prop_assert!(c.contains(f).unwrap());
            prop_assert!(s.in_closure(f).unwrap());
        }
        prop_assert!(c.is_reflexive());
        prop_assert_eq!(c.closure_dim(), c.dim());
        prop_assert_eq!(s.is_reflexive(), c.dim() == s.dim());
    }

    #[test]
    fn closure_witness_is_a_genuine_extension((q, seed) in space_strategy()) {
        let s = mixed_space(&mut rng(seed), q, 4, 3);
        match s.closure_witness() {
            None => prop_assert!(s.is_reflexive()),
            Some(g) => {
                prop_assert!(!s.contains(&g).unwrap());
                prop_assert!(s.closure_violation(&g).unwrap().is_none());
                let t = s.extend(&g).unwrap();
                prop_assert_eq!(t.dim(), s.dim() + 1);
                prop_assert!(t.is_lld());
            }
        }
    }

    #[test]
    fn rank_bound_on_non_reflexive((q, seed) in space_strategy()) {
        let s = mixed_space(&mut rng(seed), q, 4, 3);
        if !s.is_reflexive() {
            let (mrk, w) = s.mrk().unwrap();
            prop_assert!(mrk <= 2 * s.dim() - 2);
            prop_assert_eq!(s.combination(&w).unwrap().rank(), mrk);
        }
    }

    #[test]
    fn rank_distribution_counts_projective_points((q, seed) in space_strategy()) {
        let s = mixed_space(&mut rng(seed), q, 3, 3);
        let dist = s.rank_distribution().unwrap();
        let total: u64 = dist.values().sum();
        let expected = (q.pow(s.dim() as u32) - 1) / (q - 1);
        prop_assert_eq!(total, expected);
        prop_assert_eq!(*dist.keys().next().unwrap(), s.mrk().unwrap().0);
    }

    #[test]
    fn invariance_under_equivalence((q, seed) in space_strategy()) {
        let mut r = rng(seed);
        let s = mixed_space(&mut r, q, 3, 3);
        let t = transformed(&mut r, &s, 1, 0);
        prop_assert_eq!(t.is_reflexive(), s.is_reflexive());
        prop_assert_eq!(t.closure_dim(), s.closure_dim());
        prop_assert_eq!(t.mrk().unwrap().0, s.mrk().unwrap().0);
        prop_assert_eq!(t.canonical(), t.canonical().canonical());
    }

    #[test]
    fn formula_matches_brute_on_cosets((q, seed) in space_strategy()) {
        let mut r = rng(seed);
        let s = mixed_space(&mut r, q, 3, 2);
        let c = s.reflexive_closure();
        if c.dim() > s.dim() {
            let g = loop {
                let coeffs: Vec<u32> = (0..c.dim()).map(|_| r.gen_range(0..q as u32)).collect();
                let g = c.combination(&coeffs).unwrap();
                if !s.contains(&g).unwrap() {
                    break g;
                }
            };
            let t = Coset::new(&s, &g).unwrap();
            let formula = t.incidence_count(CountMode::Formula).unwrap();
            prop_assert_eq!(&formula, &t.incidence_count(CountMode::Brute).unwrap());
            let floor = BigUint::from(q).pow(s.dim() as u32) + BigUint::from(q).pow(s.dim_u() as u32) - 1u32;
            prop_assert!(formula >= floor);
            prop_assert!(t.uncovered_points().is_empty());
        }
    }

    #[test]
    fn sampled_spaces_are_reproducible(seed in any::<u64>(), index in 0u64..1000) {
        let params = SearchParams::random(&gf(3), 3, 3, 2, 1000, seed);
        let a = sample_space(&params, index);
        let b = sample_space(&params, index);
        prop_assert_eq!(a.dim(), 2);
        prop_assert_eq!(a, b);
    }
}
