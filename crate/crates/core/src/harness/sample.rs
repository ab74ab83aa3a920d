//! Random ring elements and rejection sampling into `S` and `Ŝ`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng as _;
use rand_chacha::ChaCha8Rng;

use crate::birational::HatParams;
use crate::domain::{is_in_s, is_in_s_hat};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{Ring, RingDescriptor, RingElem};

/// Consecutive rejections after which a sampler gives up.
pub const MAX_REJECTIONS: u64 = 10_000;

/// Bound on sampled fraction numerators (in absolute value) and denominators.
pub const FRACTION_BOUND: i64 = 100;

/// Uniform residues, uniform-entry blocks, or bounded-height fractions.
pub fn random_elem(ring: &Arc<RingDescriptor>, rng: &mut ChaCha8Rng) -> RingElem {
    match &**ring {
        RingDescriptor::Fraction => {
            let num = rng.random_range(-FRACTION_BOUND..=FRACTION_BOUND);
            let den = rng.random_range(1..=FRACTION_BOUND);
            RingElem::fraction(BigRational::new(BigInt::from(num), BigInt::from(den)))
        }
        RingDescriptor::ModP { modulus } => {
            RingElem::residue(ring, rng.random_range(0..*modulus)).expect("mod-p ring")
        }
        RingDescriptor::BlockMatrix { block_size, inner } => {
            let entries = (0..block_size * block_size)
                .map(|_| random_elem(inner, rng))
                .collect();
            RingElem::block(ring, entries).expect("entries from the inner ring")
        }
    }
}

/// A random unit, by rejection.
pub fn random_unit(
    ring: &Arc<RingDescriptor>,
    rng: &mut ChaCha8Rng,
    rejections: &mut u64,
) -> Result<RingElem> {
    sample_until(rng, rejections, |rng| random_elem(ring, rng), Ring::is_unit)
}

/// A random non-unit. Zero in a field; in a block ring, a block whose last
/// row is an inner-ring left multiple of its first row.
pub fn random_singular(ring: &Arc<RingDescriptor>, rng: &mut ChaCha8Rng) -> RingElem {
    match &**ring {
        RingDescriptor::BlockMatrix { block_size, inner } if *block_size >= 2 => {
            let k = *block_size;
            let mut entries: Vec<RingElem> = (0..k * k).map(|_| random_elem(inner, rng)).collect();
            let lambda = random_elem(inner, rng);
            for col in 0..k {
                entries[(k - 1) * k + col] = lambda.mul(&entries[col]);
            }
            RingElem::block(ring, entries).expect("entries from the inner ring")
        }
        RingDescriptor::BlockMatrix { inner, .. } => {
            RingElem::block(ring, vec![random_singular(inner, rng)]).expect("1x1 block")
        }
        _ => RingElem::zero(ring),
    }
}

pub fn random_matrix(
    ring: &Arc<RingDescriptor>,
    n: usize,
    rng: &mut ChaCha8Rng,
) -> Matrix<RingElem> {
    Matrix::from_fn(n, |_, _| random_elem(ring, rng))
}

pub fn random_hat(ring: &Arc<RingDescriptor>, rng: &mut ChaCha8Rng) -> HatParams<RingElem> {
    HatParams {
        a: random_elem(ring, rng),
        b: random_elem(ring, rng),
        c: random_elem(ring, rng),
        d: random_elem(ring, rng),
    }
}

/// Draws until `accept` holds, adding each rejection to `rejections`.
pub fn sample_until<T>(
    rng: &mut ChaCha8Rng,
    rejections: &mut u64,
    mut draw: impl FnMut(&mut ChaCha8Rng) -> T,
    accept: impl Fn(&T) -> bool,
) -> Result<T> {
    for _ in 0..=MAX_REJECTIONS {
        let x = draw(rng);
        if accept(&x) {
            return Ok(x);
        }
        *rejections += 1;
    }
    Err(Error::SamplingExhausted(MAX_REJECTIONS))
}

/// A 3×3 matrix in `S`.
pub fn sample_in_s(
    ring: &Arc<RingDescriptor>,
    rng: &mut ChaCha8Rng,
    rejections: &mut u64,
) -> Result<Matrix<RingElem>> {
    sample_until(rng, rejections, |rng| random_matrix(ring, 3, rng), is_in_s)
}

/// Hatted parameters in `Ŝ`.
pub fn sample_in_s_hat(
    ring: &Arc<RingDescriptor>,
    rng: &mut ChaCha8Rng,
    rejections: &mut u64,
) -> Result<HatParams<RingElem>> {
    sample_until(rng, rejections, |rng| random_hat(ring, rng), is_in_s_hat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use rand::SeedableRng;

    #[test]
    fn fractions_respect_bounds() {
        let q = Arc::new(RingDescriptor::fraction());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let x = random_elem(&q, &mut rng);
            let f = x.as_fraction().unwrap();
            assert!(f.numer().abs() <= BigInt::from(100));
            assert!(f.denom() <= &BigInt::from(100));
        }
    }

    #[test]
    fn singular_blocks_are_not_units() {
        let r = Arc::new(RingDescriptor::default_verification());
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            assert!(!random_singular(&r, &mut rng).is_unit());
        }
    }

    #[test]
    fn mod_101_members_need_few_rejections() {
        let r = Arc::new(RingDescriptor::mod_p(101).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut rejections = 0;
        for _ in 0..50 {
            sample_in_s(&r, &mut rng, &mut rejections).unwrap();
        }
        assert!(rejections < 50 * 10, "{rejections} rejections");
    }

    #[test]
    fn mod_2_exhausts() {
        let r = Arc::new(RingDescriptor::mod_p(2).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut rejections = 0;
        assert_eq!(
            sample_in_s_hat(&r, &mut rng, &mut rejections),
            Err(Error::SamplingExhausted(MAX_REJECTIONS))
        );
    }
}
