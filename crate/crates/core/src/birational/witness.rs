use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::Ring;

/// Invertible diagonals acting by `M ↦ D₁⁻¹ M D₂`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagPair<T> {
    pub left: Vec<T>,
    pub right: Vec<T>,
}

impl<T: Ring> DiagPair<T> {
    pub fn new(left: Vec<T>, right: Vec<T>) -> Result<Self> {
        if left.len() != right.len() || left.is_empty() {
            return Err(Error::DimensionMismatch {
                left: left.len(),
                right: right.len(),
            });
        }
        for (i, x) in left.iter().chain(&right).enumerate() {
            if !x.is_unit() {
                return Err(Error::not_invertible(format!("diagonal entry {i}")));
            }
        }
        Ok(DiagPair { left, right })
    }

    pub fn identity_like(n: usize, like: &T) -> Self {
        let one = like.one_like();
        DiagPair {
            left: vec![one.clone(); n],
            right: vec![one; n],
        }
    }

    pub fn n(&self) -> usize {
        self.left.len()
    }

    pub fn apply(&self, m: &Matrix<T>) -> Result<Matrix<T>> {
        if m.n() != self.n() {
            return Err(Error::DimensionMismatch {
                left: self.n(),
                right: m.n(),
            });
        }
        let left_inv = self
            .left
            .iter()
            .map(Ring::inv)
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_fn(m.n(), |j, k| {
            left_inv[j].mul(m.get(j, k)).mul(&self.right[k])
        }))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    DiagPair,
    /// `D₁ = D₂ = xI`, i.e. `B = x⁻¹ A x` entrywise.
    CentralConjugation,
}

/// A checked proof that `B = D₁⁻¹ A D₂`.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivWitness<T> {
    pub pair: DiagPair<T>,
    /// Set when both diagonals are the same scalar `x`.
    pub conjugator: Option<T>,
}

impl<T: Ring> EquivWitness<T> {
    pub fn kind(&self) -> WitnessKind {
        if self.conjugator.is_some() {
            WitnessKind::CentralConjugation
        } else {
            WitnessKind::DiagPair
        }
    }

    /// Applies the witness to `a`; equals `b` for the pair it was found for.
    pub fn apply(&self, a: &Matrix<T>) -> Result<Matrix<T>> {
        self.pair.apply(a)
    }
}

/// Searches for diagonal units with `B = D₁⁻¹ A D₂`.
///
/// Writing `g` for the first entry of `D₁`, row 1 and column 1 force
/// `yₖ = a₁ₖ⁻¹ g b₁ₖ` and `xⱼ = aⱼ₁ y₁ bⱼ₁⁻¹`, and the remaining equations
/// reduce to `g⁻¹ Λᴸ(A)ⱼₖ g = Λᴸ(B)ⱼₖ`. Over a commutative ring `g = 1`;
/// otherwise `g` comes from [`Ring::solve_conjugator`], with `g = 1` tried
/// first. Every equation is re-checked, so a returned witness is valid.
///
/// Both matrices must have unit entries.
pub fn equiv_witness<T: Ring>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Option<EquivWitness<T>>> {
    let n = a.n();
    if b.n() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: b.n(),
        });
    }
    if !a.sample_entry().same_ring(b.sample_entry()) {
        return Err(Error::DescriptorMismatch {
            left: a.sample_entry().ring_name(),
            right: b.sample_entry().ring_name(),
        });
    }
    let ai = a
        .hadamard_inverse()
        .map_err(|e| Error::PreconditionViolated(format!("first matrix: {e}")))?;
    let bi = b
        .hadamard_inverse()
        .map_err(|e| Error::PreconditionViolated(format!("second matrix: {e}")))?;

    let norm = |m: &Matrix<T>, mi: &Matrix<T>, j: usize, k: usize| {
        m.get(0, 0)
            .mul(mi.get(j, 0))
            .mul(m.get(j, k))
            .mul(mi.get(0, k))
    };
    let pairs: Vec<(T, T)> = (1..n)
        .flat_map(|j| (1..n).map(move |k| (j, k)))
        .map(|(j, k)| (norm(a, &ai, j, k), norm(b, &bi, j, k)))
        .collect();
    let Some(g) = a.sample_entry().solve_conjugator(&pairs) else {
        return Ok(None);
    };

    let right: Vec<T> = (0..n)
        .map(|k| ai.get(0, k).mul(&g).mul(b.get(0, k)))
        .collect();
    let left: Vec<T> = (0..n)
        .map(|j| a.get(j, 0).mul(&right[0]).mul(bi.get(j, 0)))
        .collect();
    if left.iter().chain(&right).any(|x| !x.is_unit()) {
        return Ok(None);
    }
    let pair = DiagPair { left, right };
    if pair.apply(a)? != *b {
        return Ok(None);
    }
    let central = pair.left.iter().chain(&pair.right).all(|x| *x == g);
    Ok(Some(EquivWitness {
        pair,
        conjugator: central.then_some(g),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{RingDescriptor, RingElem};
    use std::sync::Arc;

    fn m2f101() -> Arc<RingDescriptor> {
        Arc::new(RingDescriptor::default_verification())
    }

    fn blk(ring: &Arc<RingDescriptor>, v: [i64; 4]) -> RingElem {
        let RingDescriptor::BlockMatrix { inner, .. } = &**ring else {
            panic!()
        };
        RingElem::block(
            ring,
            v.iter().map(|&x| RingElem::integer(inner, x)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn self_equivalence_is_identity() {
        let r = m2f101();
        let a = Matrix::from_fn(3, |j, k| {
            blk(&r, [1 + j as i64, 2, 3 + k as i64, 5 + (j * k) as i64])
        });
        let w = equiv_witness(&a, &a).unwrap().unwrap();
        assert!(w.pair.left.iter().chain(&w.pair.right).all(Ring::is_one));
        assert_eq!(w.kind(), WitnessKind::CentralConjugation);
    }

    #[test]
    fn recovers_noncentral_conjugation_of_hatted() {
        let r = m2f101();
        let one = RingElem::one(&r);
        let a = Matrix::from_fn(3, |j, k| {
            if j == 0 || k == 0 {
                one.clone()
            } else {
                blk(&r, [2 + j as i64, 7, 11 * k as i64, 3])
            }
        });
        let x = blk(&r, [4, 9, 1, 6]);
        let xi = x.inv().unwrap();
        let b = a.map(|e| xi.mul(e).mul(&x));
        let w = equiv_witness(&a, &b)
            .unwrap()
            .expect("conjugate matrices are equivalent");
        assert_eq!(w.kind(), WitnessKind::CentralConjugation);
        assert_eq!(w.apply(&a).unwrap(), b);
    }

    #[test]
    fn perturbed_entry_is_absent() {
        let e = |n| RingElem::ratio(n, 1);
        let a = Matrix::from_rows(vec![
            vec![e(2), e(3), e(5)],
            vec![e(7), e(11), e(13)],
            vec![e(17), e(19), e(23)],
        ])
        .unwrap();
        let mut rows = a.rows();
        rows[2][2] = e(29);
        let b = Matrix::from_rows(rows).unwrap();
        assert!(equiv_witness(&a, &b).unwrap().is_none());
    }

    #[test]
    fn diag_scaling_is_recovered_over_q() {
        let e = |n| RingElem::ratio(n, 1);
        let a = Matrix::from_rows(vec![
            vec![e(2), e(3), e(5)],
            vec![e(7), e(11), e(13)],
            vec![e(17), e(19), e(23)],
        ])
        .unwrap();
        let pair = DiagPair::new(vec![e(3), e(-2), e(5)], vec![e(7), e(1), e(-4)]).unwrap();
        let b = pair.apply(&a).unwrap();
        let w = equiv_witness(&a, &b).unwrap().unwrap();
        assert_eq!(w.apply(&a).unwrap(), b);
        assert_eq!(w.kind(), WitnessKind::DiagPair);
        assert!(w.pair.left[0].is_one());
    }

    #[test]
    fn zero_entry_is_a_precondition_error() {
        let e = |n| RingElem::ratio(n, 1);
        let a = Matrix::from_rows(vec![vec![e(1), e(0)], vec![e(1), e(1)]]).unwrap();
        assert!(matches!(
            equiv_witness(&a, &a),
            Err(Error::PreconditionViolated(_))
        ));
    }
}
