use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Ring;
use crate::error::{Error, Result};

impl Ring for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }

    fn one_like(&self) -> Self {
        BigRational::one()
    }

    fn int_like(&self, n: i64) -> Self {
        BigRational::from_integer(n.into())
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }

    fn inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::not_invertible("0"))
        } else {
            Ok(self.recip())
        }
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn same_ring(&self, _: &Self) -> bool {
        true
    }

    fn ring_name(&self) -> String {
        "Q".into()
    }

    fn solve_conjugator(&self, pairs: &[(Self, Self)]) -> Option<Self> {
        pairs.iter().all(|(p, q)| p == q).then(BigRational::one)
    }
}
