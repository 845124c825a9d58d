mod common;

use std::sync::Arc;

use num_bigint::BigUint;
use proptest::prelude::*;
use superirr::counting::{gauss_s1, s1_enumeration, tower_for};
use superirr::poly::{factor_degree_multiset, is_irreducible, squarefree_decomposition};
use superirr::superirr::{test_2_superirr, test_2_superirr_roots, test_weak_k_naive, NaiveOptions};
use superirr::{Field, Poly};

const ODD_ORDERS: [u64; 5] = [3, 5, 7, 9, 25];
const ORDERS: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

fn field(q: u64, e: u32) -> Arc<Field> {
    tower_for(q, e).unwrap().top().clone()
}

fn poly_strategy(orders: &'static [u64], max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::sample::select(orders).prop_flat_map(move |q| {
        prop::collection::vec(0..q, 0..=max_deg + 1)
            .prop_map(move |c| Poly::new(field(q, 1), c).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, rng_algorithm: prop::test_runner::RngAlgorithm::ChaCha, rng_seed: prop::test_runner::RngSeed::Fixed(common::seed()), failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn character_is_multiplicative(qi in 0..ODD_ORDERS.len(), e in 1u32..=3, a in any::<u64>(), b in any::<u64>()) {
        let f = field(ODD_ORDERS[qi], e);
        let (a, b) = (a % f.order(), b % f.order());
        let lhs = f.quadratic_character(f.mul(a, b)).unwrap();
        let rhs = f.quadratic_character(a).unwrap() * f.quadratic_character(b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn field_inverse_and_distributivity(qi in 0..ORDERS.len(), e in 1u32..=3, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let f = field(ORDERS[qi], e);
        let (a, b, c) = (a % f.order(), b % f.order(), c % f.order());
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn divrem_round_trip(f in poly_strategy(&ORDERS, 8), g in poly_strategy(&ORDERS, 4)) {
        let g = Poly::new(f.field().clone(), g.coeffs().iter().map(|&c| c % f.field().order()).collect()).unwrap();
        prop_assume!(!g.is_zero());
        let (quo, rem) = f.divrem(&g).unwrap();
        prop_assert_eq!(quo.mul(&g).unwrap().add(&rem).unwrap(), f);
        prop_assert!(rem.degree().unwrap_or(0) < g.degree().unwrap().max(1));
    }

    #[test]
    fn text_round_trip(f in poly_strategy(&ORDERS, 6)) {
        prop_assert_eq!(Poly::parse(f.field(), &f.to_text()).unwrap(), f);
    }

    #[test]
    fn factor_degrees_sum_to_degree(f in poly_strategy(&ORDERS, 7)) {
        prop_assume!(f.degree().unwrap_or(0) >= 1);
        let m = factor_degree_multiset(&f).unwrap();
        prop_assert_eq!(m.total_degree(), f.degree().unwrap());
        prop_assert_eq!(m.is_irreducible(), is_irreducible(&f).unwrap());
        let monic = f.monic().unwrap();
        let product = squarefree_decomposition(&monic)
            .unwrap()
            .into_iter()
            .fold(Poly::one(f.field()), |acc, (g, e)| acc.mul(&g.pow(e as u32)).unwrap());
        prop_assert_eq!(product, monic);
    }

    #[test]
    fn root_test_agrees_with_exhaustive(qi in 0..3usize, idx in any::<u64>()) {
        let q = [3u64, 5, 7][qi];
        let fld = field(q, 1);
        let irreducibles: Vec<Poly> = superirr::poly::enumerate_monic_irreducible(&fld, 4).unwrap().collect();
        let f = &irreducibles[(idx % irreducibles.len() as u64) as usize];
        let roots = test_2_superirr_roots(f).unwrap().holds;
        prop_assert_eq!(roots, test_weak_k_naive(f, 2, NaiveOptions::default()).unwrap().holds);
        prop_assert_eq!(roots, test_2_superirr(f).unwrap().holds);
    }
}

#[test]
fn gauss_equals_enumeration_small() {
    for q in ORDERS {
        for d in 1..=4u32 {
            if q.pow(d) > 20_000 {
                continue;
            }
            assert_eq!(
                gauss_s1(q, d).unwrap(),
                BigUint::from(s1_enumeration(q, d).unwrap()),
                "({q},{d})"
            );
        }
    }
}

#[test]
fn seeded_highk_divisibility() {
    let mut rng = common::rng(11);
    for _ in 0..50 {
        use rand::Rng;
        let fld = common::random_field(&mut rng, &ORDERS);
        let d = rng.gen_range(2..=4);
        let f = common::random_irreducible(&mut rng, &fld, d);
        let g = superirr::superirr::witness_highk(&f, d + rng.gen_range(0..3)).unwrap();
        assert!(f.compose(&g).unwrap().rem(&f).unwrap().is_zero(), "f={f}");
    }
}
