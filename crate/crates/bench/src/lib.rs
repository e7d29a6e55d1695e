//! Inputs shared by the criterion benches.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skeinfill::selftest::{random_element, random_matrix};
use skeinfill::{Matrix, TorusElement};

pub fn elements(n: usize, terms: usize, bound: i64) -> Vec<TorusElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    (0..n).map(|_| random_element(&mut rng, terms, bound)).collect()
}

pub fn matrices(count: usize, n: usize, span: i64) -> Vec<Matrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    (0..count).map(|_| random_matrix(&mut rng, n, span)).collect()
}
