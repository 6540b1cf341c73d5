//! Seeded rational samples for parameter scans.
//!
//! Every scan derives its own stream from `SEED` and a tag, so adding a scan
//! never shifts the samples of another.

use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalars::{Bindings, Rational};

pub const SEED: u64 = 0x5EED_2E3A;

/// Samples with a numerator or denominator above this bound are rejected.
pub const BOUND: i64 = 40;

/// Gives up after this many draws per requested sample.
const ATTEMPTS_PER_SAMPLE: usize = 400;

fn fnv1a(tag: &str) -> u64 {
    tag.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

pub fn rng_for(tag: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ fnv1a(tag))
}

/// `p/q` with `p ∈ [−60, 60]`, `q ∈ [1, 60]`, reduced, redrawn until both
/// parts are within [`BOUND`].
pub fn sample_rational(rng: &mut impl Rng) -> Rational {
    let bound = BigInt::from(BOUND);
    loop {
        let p: i64 = rng.random_range(-60..=60);
        let q: i64 = rng.random_range(1..=60);
        let r = Rational::new(p.into(), q.into());
        if r.numer().abs() <= bound && *r.denom() <= bound {
            return r;
        }
    }
}

/// Up to `count` distinct bindings of `params` accepted by `accept`.
///
/// With no parameters the single empty binding is returned. Fewer than
/// `count` samples come back only if `accept` rejects almost everything.
pub fn sample_bindings(
    params: &[String],
    count: usize,
    tag: &str,
    accept: impl Fn(&Bindings) -> bool,
) -> Vec<Bindings> {
    if params.is_empty() {
        let b = Bindings::new();
        return if accept(&b) { vec![b] } else { vec![] };
    }
    let mut rng = rng_for(tag);
    let mut out: Vec<Bindings> = Vec::with_capacity(count);
    for _ in 0..count * ATTEMPTS_PER_SAMPLE {
        if out.len() == count {
            break;
        }
        let b = Bindings::from_pairs(params.iter().map(|p| (p.clone(), sample_rational(&mut rng))));
        if accept(&b) && !out.contains(&b) {
            out.push(b);
        }
    }
    out
}
