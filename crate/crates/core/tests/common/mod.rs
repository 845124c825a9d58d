#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use superirr::poly::{is_irreducible, monic_at, monic_count};
use superirr::{Field, Poly};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Seed from `SUPERIRR_SEED`, otherwise the fixed default.
pub fn seed() -> u64 {
    std::env::var("SUPERIRR_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed());
    r.set_stream(stream);
    r
}

pub fn random_monic(rng: &mut ChaCha8Rng, field: &Arc<Field>, d: usize) -> Poly {
    let n = monic_count(field, d).unwrap();
    monic_at(field, d, rng.gen_range(0..n))
}

pub fn random_irreducible(rng: &mut ChaCha8Rng, field: &Arc<Field>, d: usize) -> Poly {
    loop {
        let f = random_monic(rng, field, d);
        if is_irreducible(&f).unwrap() {
            return f;
        }
    }
}

/// Random polynomial of degree exactly `k` (leading coefficient nonzero).
pub fn random_of_degree(rng: &mut ChaCha8Rng, field: &Arc<Field>, k: usize) -> Poly {
    let q = field.order();
    let mut coeffs: Vec<u64> = (0..k).map(|_| rng.gen_range(0..q)).collect();
    coeffs.push(rng.gen_range(1..q));
    Poly::new(Arc::clone(field), coeffs).unwrap()
}

/// Random prime-power field order from `orders`.
pub fn random_field(rng: &mut ChaCha8Rng, orders: &[u64]) -> Arc<Field> {
    let q = orders[rng.gen_range(0..orders.len())];
    superirr::counting::tower_for(q, 1).unwrap().mid().clone()
}
