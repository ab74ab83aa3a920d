//! Plain commutative evaluation over the rationals, independent of the
//! library's ring trait, Gauss-Jordan routine and closed formulas.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;
pub type M3 = [[Q; 3]; 3];

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn hat(p: &[Q; 4]) -> M3 {
    let one = Q::one();
    [
        [one.clone(), one.clone(), one.clone()],
        [one.clone(), p[0].clone(), p[1].clone()],
        [one.clone(), p[2].clone(), p[3].clone()],
    ]
}

pub fn params(m: &M3) -> [Q; 4] {
    [
        m[1][1].clone(),
        m[1][2].clone(),
        m[2][1].clone(),
        m[2][2].clone(),
    ]
}

/// Inverse by the adjugate, `None` when the determinant vanishes.
pub fn inverse(m: &M3) -> Option<M3> {
    let c = |r0: usize, r1: usize, c0: usize, c1: usize| {
        &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0]
    };
    let cof = [
        [c(1, 2, 1, 2), -c(1, 2, 0, 2), c(1, 2, 0, 1)],
        [-c(0, 2, 1, 2), c(0, 2, 0, 2), -c(0, 2, 0, 1)],
        [c(0, 1, 1, 2), -c(0, 1, 0, 2), c(0, 1, 0, 1)],
    ];
    let det = &m[0][0] * &cof[0][0] + &m[0][1] * &cof[0][1] + &m[0][2] * &cof[0][2];
    if det.is_zero() {
        return None;
    }
    Some(std::array::from_fn(|j| {
        std::array::from_fn(|k| &cof[k][j] / &det)
    }))
}

pub fn j2(m: &M3) -> Option<M3> {
    if m.iter().flatten().any(Zero::is_zero) {
        return None;
    }
    Some(std::array::from_fn(|j| {
        std::array::from_fn(|k| m[k][j].recip())
    }))
}

/// Row and column scaling to a matrix with ones in row and column 1.
pub fn normalise(m: &M3) -> Option<M3> {
    if m.iter().flatten().any(Zero::is_zero) {
        return None;
    }
    Some(std::array::from_fn(|j| {
        std::array::from_fn(|k| &m[0][0] * &m[j][k] / (&m[j][0] * &m[0][k]))
    }))
}

pub fn phi(p: &[Q; 4]) -> Option<[Q; 4]> {
    Some(params(&j2(&normalise(&inverse(&hat(p))?)?)?))
}

pub fn phi_inv(p: &[Q; 4]) -> Option<[Q; 4]> {
    Some(params(&normalise(&inverse(&j2(&hat(p))?)?)?))
}

pub fn psi(p: &[Q; 4]) -> Option<[Q; 4]> {
    let t = |x: &[Q; 4]| -> Option<[Q; 4]> {
        if x.iter().any(Zero::is_zero) {
            return None;
        }
        Some([x[0].recip(), x[2].recip(), x[1].recip(), x[3].recip()])
    };
    t(&phi(&t(p)?)?)
}
