//! Random fixtures for the acceptance checks.
//!
//! Every generator takes a caller-owned RNG so that a run is reproducible
//! from its seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use riordan::{RiordanArray, Series};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small integer coefficients `c_0, ..., c_len-1` with `c_0` drawn from
/// `first` and the rest from `-span..=span`.
pub fn small_coeffs(rng: &mut impl Rng, first: &[i64], len: usize, span: i64) -> Vec<i64> {
    let mut c = vec![*first.choose(rng).expect("non-empty choice")];
    c.extend((1..len).map(|_| rng.gen_range(-span..=span)));
    c
}

/// A polynomial `d` with `d(0) != 0`.
pub fn random_d(rng: &mut impl Rng, order: usize) -> Series {
    Series::from_ints(order, &small_coeffs(rng, &[1, -1, 2, -2, 3], 5, 3))
}

/// A polynomial `h` with `h(0) = 0` and `h'(0) != 0`.
pub fn random_h(rng: &mut impl Rng, order: usize) -> Series {
    let mut c = vec![0];
    c.extend(small_coeffs(rng, &[1, -1, 2], 4, 2));
    Series::from_ints(order, &c)
}

pub fn random_array(rng: &mut impl Rng, order: usize) -> RiordanArray {
    RiordanArray::new(random_d(rng, order), random_h(rng, order)).expect("valid by construction")
}

/// `R(d, t)` with a random polynomial `d`.
pub fn random_appell(rng: &mut impl Rng, order: usize) -> RiordanArray {
    let d = Series::from_ints(order, &small_coeffs(rng, &[1, -1, 2, 3], 7, 4));
    RiordanArray::new(d, Series::t(order)).expect("valid by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_reproducible() {
        let a = random_array(&mut rng(7), 12);
        let b = random_array(&mut rng(7), 12);
        assert_eq!(a, b);
        assert_eq!(random_appell(&mut rng(3), 8).h(), &Series::t(8));
    }
}
