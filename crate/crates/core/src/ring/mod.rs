//! Unital associative rings with partial inversion.
//!
//! Ring elements carry their own context (modulus, block size), so the
//! zero and one of a ring are reached through an existing element rather
//! than through a context-free constructor.

mod conjugacy;
mod descriptor;
mod elem;
mod modp;
mod rational;

pub use descriptor::{RingDescriptor, MAX_BLOCK_DEPTH};
pub use elem::RingElem;
pub use modp::is_prime;

use std::fmt;

use crate::error::{Error, Result};

pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;

    /// The image of an integer under the unique ring map from the integers.
    fn int_like(&self, n: i64) -> Self {
        let one = self.one_like();
        let mut acc = self.zero_like();
        let mut base = if n < 0 { one.neg() } else { one };
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.add(&base);
            }
            base = base.add(&base);
            k >>= 1;
        }
        acc
    }

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    /// Two-sided inverse, or `NotInvertible`.
    fn inv(&self) -> Result<Self>;

    fn is_unit(&self) -> bool {
        self.inv().is_ok()
    }

    fn is_commutative(&self) -> bool;

    /// True when both elements live in the same ring.
    fn same_ring(&self, other: &Self) -> bool;

    /// Short human-readable ring name used in mismatch errors.
    fn ring_name(&self) -> String;

    /// Finds a unit `g` with `g⁻¹ p g = q` for every pair, if one can be found.
    /// `self` only supplies the ring. A returned `g` always satisfies every pair.
    fn solve_conjugator(&self, pairs: &[(Self, Self)]) -> Option<Self>;
}

fn check_same<T: Ring>(x: &T, y: &T) -> Result<()> {
    if x.same_ring(y) {
        Ok(())
    } else {
        Err(Error::DescriptorMismatch {
            left: x.ring_name(),
            right: y.ring_name(),
        })
    }
}

pub fn checked_add<T: Ring>(x: &T, y: &T) -> Result<T> {
    check_same(x, y)?;
    Ok(x.add(y))
}

pub fn checked_sub<T: Ring>(x: &T, y: &T) -> Result<T> {
    check_same(x, y)?;
    Ok(x.sub(y))
}

pub fn checked_mul<T: Ring>(x: &T, y: &T) -> Result<T> {
    check_same(x, y)?;
    Ok(x.mul(y))
}

/// Left-to-right product `f[0]·f[1]·…`. Panics on an empty slice.
pub fn product<T: Ring>(factors: &[&T]) -> T {
    let (first, rest) = factors.split_first().expect("empty product");
    rest.iter().fold((*first).clone(), |acc, f| acc.mul(f))
}

/// Inverse whose failure names the element.
pub fn inv_named<T: Ring>(x: &T, label: &str) -> Result<T> {
    x.inv().map_err(|_| Error::not_invertible(label))
}

/// `x⁻¹ · y · x`.
pub fn conjugate<T: Ring>(y: &T, x: &T) -> Result<T> {
    let xi = x.inv()?;
    Ok(xi.mul(y).mul(x))
}
