//! The involutions `J₁`, `J₂`, their composite `J`, the normalisations
//! `Λᴸ`/`Λᴿ`, and the four-parameter maps `Φ`, `Φ⁻¹`, `Ψ` on hatted
//! 3×3 matrices together with their conjugating elements.

mod closed;
mod maps;
mod phi;
mod witness;

pub use closed::{nu, omega, phi2_closed, phi_closed, phi_inv_closed, psi_closed, zeta, zeta_alt};
pub use maps::{j, j1, j2, j_2x2_closed, j_inverse, lambda_l, lambda_r, normalize_with_witness};
pub use phi::{phi, phi2, phi3_witness, phi_inv, psi};
pub use witness::{equiv_witness, DiagPair, EquivWitness, WitnessKind};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::Ring;

/// The hatted matrix `[[1,1,1],[1,a,b],[1,c,d]]` by its four free entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HatParams<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

/// The three non-trivial permutations of `(a, b, c, d)` coming from
/// swapping the last two rows and/or columns of a hatted matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KleinPerm {
    Identity,
    /// `(b, a, d, c)`
    SwapColumns,
    /// `(c, d, a, b)`
    SwapRows,
    /// `(d, c, b, a)`
    SwapBoth,
}

impl KleinPerm {
    /// Order matches the entries `a, b, c, d`: entry `x` of a Klein-covariant
    /// map is entry `a` of the map applied to the permuted quadruple.
    pub const ALL: [KleinPerm; 4] = [
        KleinPerm::Identity,
        KleinPerm::SwapColumns,
        KleinPerm::SwapRows,
        KleinPerm::SwapBoth,
    ];
}

impl<T: Ring> HatParams<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Result<Self> {
        for x in [&b, &c, &d] {
            if !a.same_ring(x) {
                return Err(Error::DescriptorMismatch {
                    left: a.ring_name(),
                    right: x.ring_name(),
                });
            }
        }
        Ok(HatParams { a, b, c, d })
    }

    pub fn from_array([a, b, c, d]: [T; 4]) -> Result<Self> {
        Self::new(a, b, c, d)
    }

    pub fn to_array(&self) -> [T; 4] {
        [
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.d.clone(),
        ]
    }

    pub fn entries(&self) -> [&T; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn to_matrix(&self) -> Matrix<T> {
        let one = self.a.one_like();
        Matrix::from_fn(3, |j, k| match (j, k) {
            (1, 1) => self.a.clone(),
            (1, 2) => self.b.clone(),
            (2, 1) => self.c.clone(),
            (2, 2) => self.d.clone(),
            _ => one.clone(),
        })
    }

    /// Reads the free entries of a hatted 3×3 matrix.
    pub fn from_matrix(m: &Matrix<T>) -> Result<Self> {
        if m.n() != 3 {
            return Err(Error::DimensionMismatch {
                left: 3,
                right: m.n(),
            });
        }
        if !m.is_hatted() {
            return Err(Error::Malformed(
                "first row and column of a hatted matrix must be ones".into(),
            ));
        }
        Ok(HatParams {
            a: m.get(1, 1).clone(),
            b: m.get(1, 2).clone(),
            c: m.get(2, 1).clone(),
            d: m.get(2, 2).clone(),
        })
    }

    pub fn permuted(&self, p: KleinPerm) -> Self {
        let [a, b, c, d] = self.to_array();
        match p {
            KleinPerm::Identity => HatParams { a, b, c, d },
            KleinPerm::SwapColumns => HatParams {
                a: b,
                b: a,
                c: d,
                d: c,
            },
            KleinPerm::SwapRows => HatParams {
                a: c,
                b: d,
                c: a,
                d: b,
            },
            KleinPerm::SwapBoth => HatParams {
                a: d,
                b: c,
                c: b,
                d: a,
            },
        }
    }

    /// Entrywise `x⁻¹ · e · x`.
    pub fn conjugated_by(&self, x: &T) -> Result<Self> {
        let xi = x.inv()?;
        let f = |e: &T| xi.mul(e).mul(x);
        Ok(HatParams {
            a: f(&self.a),
            b: f(&self.b),
            c: f(&self.c),
            d: f(&self.d),
        })
    }

    /// Parameters of `J₂` of the hatted matrix: `(a⁻¹, c⁻¹, b⁻¹, d⁻¹)`.
    pub fn j2(&self) -> Result<Self> {
        Ok(HatParams {
            a: self.a.inv().map_err(|_| Error::not_invertible("a"))?,
            b: self.c.inv().map_err(|_| Error::not_invertible("c"))?,
            c: self.b.inv().map_err(|_| Error::not_invertible("b"))?,
            d: self.d.inv().map_err(|_| Error::not_invertible("d"))?,
        })
    }

    pub fn map(&self, mut f: impl FnMut(&T) -> T) -> Self {
        HatParams {
            a: f(&self.a),
            b: f(&self.b),
            c: f(&self.c),
            d: f(&self.d),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingElem;

    fn hp(a: i64, b: i64, c: i64, d: i64) -> HatParams<RingElem> {
        let e = |n| RingElem::ratio(n, 1);
        HatParams::new(e(a), e(b), e(c), e(d)).unwrap()
    }

    #[test]
    fn matrix_round_trip() {
        let p = hp(2, 3, 5, 7);
        let m = p.to_matrix();
        assert!(m.is_hatted());
        assert_eq!(HatParams::from_matrix(&m).unwrap(), p);
        assert!(HatParams::from_matrix(&m.transpose().map(|x| x.add(x))).is_err());
    }

    #[test]
    fn klein_permutations() {
        let p = hp(1, 2, 3, 4);
        assert_eq!(p.permuted(KleinPerm::SwapColumns), hp(2, 1, 4, 3));
        assert_eq!(p.permuted(KleinPerm::SwapRows), hp(3, 4, 1, 2));
        assert_eq!(p.permuted(KleinPerm::SwapBoth), hp(4, 3, 2, 1));
        for k in KleinPerm::ALL {
            assert_eq!(p.permuted(k).permuted(k), p);
        }
    }

    #[test]
    fn j2_parameters_transpose() {
        let p = hp(2, 3, 5, 7);
        let m = j2(&p.to_matrix()).unwrap();
        assert_eq!(HatParams::from_matrix(&m).unwrap(), p.j2().unwrap());
    }
}
