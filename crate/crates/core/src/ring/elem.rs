use std::fmt;
use std::sync::{Arc, LazyLock};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::modp::{add_mod, mul_mod, pow_mod, reduce_i64, sub_mod};
use super::{Ring, RingDescriptor};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

static FRACTION: LazyLock<Arc<RingDescriptor>> =
    LazyLock::new(|| Arc::new(RingDescriptor::Fraction));

/// An element of a ring chosen at run time.
///
/// Fractions are always reduced with a positive denominator, residues lie
/// in `[0, p)`, and block entries are stored row-major. Equality is exact.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingElem {
    ring: Arc<RingDescriptor>,
    value: Value,
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Value {
    Frac(BigRational),
    Residue(u64),
    Block(Vec<RingElem>),
}

impl RingElem {
    pub fn fraction(q: BigRational) -> Self {
        RingElem {
            ring: FRACTION.clone(),
            value: Value::Frac(q),
        }
    }

    /// `num/den`; panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::fraction(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn integer(ring: &Arc<RingDescriptor>, n: i64) -> Self {
        match &**ring {
            RingDescriptor::Fraction => Self::fraction(BigRational::from_integer(n.into())),
            RingDescriptor::ModP { modulus } => RingElem {
                ring: ring.clone(),
                value: Value::Residue(reduce_i64(n, *modulus)),
            },
            RingDescriptor::BlockMatrix { block_size, inner } => {
                let k = *block_size;
                let zero = RingElem::integer(inner, 0);
                let diag = RingElem::integer(inner, n);
                let entries = (0..k * k)
                    .map(|i| {
                        if i / k == i % k {
                            diag.clone()
                        } else {
                            zero.clone()
                        }
                    })
                    .collect();
                RingElem {
                    ring: ring.clone(),
                    value: Value::Block(entries),
                }
            }
        }
    }

    pub fn zero(ring: &Arc<RingDescriptor>) -> Self {
        Self::integer(ring, 0)
    }

    pub fn one(ring: &Arc<RingDescriptor>) -> Self {
        Self::integer(ring, 1)
    }

    /// A residue; `value` is reduced mod p.
    pub fn residue(ring: &Arc<RingDescriptor>, value: u64) -> Result<Self> {
        match &**ring {
            RingDescriptor::ModP { modulus } => Ok(RingElem {
                ring: ring.clone(),
                value: Value::Residue(value % modulus),
            }),
            other => Err(Error::Malformed(format!("{other} is not a residue ring"))),
        }
    }

    /// A block element from `k*k` row-major entries of the inner ring.
    pub fn block(ring: &Arc<RingDescriptor>, entries: Vec<RingElem>) -> Result<Self> {
        let RingDescriptor::BlockMatrix { block_size, inner } = &**ring else {
            return Err(Error::Malformed(format!(
                "{ring} is not a block-matrix ring"
            )));
        };
        if entries.len() != block_size * block_size {
            return Err(Error::DimensionMismatch {
                left: block_size * block_size,
                right: entries.len(),
            });
        }
        if let Some(bad) = entries.iter().find(|e| *e.ring != **inner) {
            return Err(Error::DescriptorMismatch {
                left: inner.to_string(),
                right: bad.ring.to_string(),
            });
        }
        Ok(RingElem {
            ring: ring.clone(),
            value: Value::Block(entries),
        })
    }

    pub fn descriptor(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn descriptor_arc(&self) -> &Arc<RingDescriptor> {
        &self.ring
    }

    pub fn as_fraction(&self) -> Option<&BigRational> {
        match &self.value {
            Value::Frac(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match self.value {
            Value::Residue(r) => Some(r),
            _ => None,
        }
    }

    /// Row-major block entries.
    pub fn block_entries(&self) -> Option<&[RingElem]> {
        match &self.value {
            Value::Block(e) => Some(e),
            _ => None,
        }
    }

    fn modulus(&self) -> u64 {
        match *self.ring {
            RingDescriptor::ModP { modulus } => modulus,
            _ => unreachable!("residue outside a mod-p ring"),
        }
    }

    fn assert_same(&self, other: &Self) {
        assert!(
            self.same_ring(other),
            "ring mismatch: {} vs {}",
            self.ring,
            other.ring
        );
    }

    fn with_value(&self, value: Value) -> Self {
        RingElem {
            ring: self.ring.clone(),
            value,
        }
    }

    fn zip_block(&self, other: &Self, f: impl Fn(&RingElem, &RingElem) -> RingElem) -> Self {
        let (Value::Block(x), Value::Block(y)) = (&self.value, &other.value) else {
            unreachable!()
        };
        self.with_value(Value::Block(
            x.iter().zip(y).map(|(a, b)| f(a, b)).collect(),
        ))
    }

    fn block_size(&self) -> usize {
        match *self.ring {
            RingDescriptor::BlockMatrix { block_size, .. } => block_size,
            _ => 1,
        }
    }
}

impl Ring for RingElem {
    fn zero_like(&self) -> Self {
        RingElem::zero(&self.ring)
    }

    fn one_like(&self) -> Self {
        RingElem::one(&self.ring)
    }

    fn int_like(&self, n: i64) -> Self {
        RingElem::integer(&self.ring, n)
    }

    fn add(&self, rhs: &Self) -> Self {
        self.assert_same(rhs);
        match (&self.value, &rhs.value) {
            (Value::Frac(a), Value::Frac(b)) => self.with_value(Value::Frac(a + b)),
            (Value::Residue(a), Value::Residue(b)) => {
                self.with_value(Value::Residue(add_mod(*a, *b, self.modulus())))
            }
            _ => self.zip_block(rhs, |a, b| a.add(b)),
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.assert_same(rhs);
        match (&self.value, &rhs.value) {
            (Value::Frac(a), Value::Frac(b)) => self.with_value(Value::Frac(a - b)),
            (Value::Residue(a), Value::Residue(b)) => {
                self.with_value(Value::Residue(sub_mod(*a, *b, self.modulus())))
            }
            _ => self.zip_block(rhs, |a, b| a.sub(b)),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.assert_same(rhs);
        match (&self.value, &rhs.value) {
            (Value::Frac(a), Value::Frac(b)) => self.with_value(Value::Frac(a * b)),
            (Value::Residue(a), Value::Residue(b)) => {
                self.with_value(Value::Residue(mul_mod(*a, *b, self.modulus())))
            }
            (Value::Block(x), Value::Block(y)) => {
                let k = self.block_size();
                let mut out = Vec::with_capacity(k * k);
                for r in 0..k {
                    for c in 0..k {
                        let mut acc = x[r * k].mul(&y[c]);
                        for i in 1..k {
                            acc = acc.add(&x[r * k + i].mul(&y[i * k + c]));
                        }
                        out.push(acc);
                    }
                }
                self.with_value(Value::Block(out))
            }
            _ => unreachable!(),
        }
    }

    fn neg(&self) -> Self {
        match &self.value {
            Value::Frac(a) => self.with_value(Value::Frac(-a)),
            Value::Residue(a) => self.with_value(Value::Residue(sub_mod(0, *a, self.modulus()))),
            Value::Block(x) => self.with_value(Value::Block(x.iter().map(Ring::neg).collect())),
        }
    }

    fn is_zero(&self) -> bool {
        match &self.value {
            Value::Frac(a) => a.is_zero(),
            Value::Residue(a) => *a == 0,
            Value::Block(x) => x.iter().all(Ring::is_zero),
        }
    }

    fn is_one(&self) -> bool {
        match &self.value {
            Value::Frac(a) => a.is_one(),
            Value::Residue(a) => *a == 1,
            Value::Block(x) => {
                let k = self.block_size();
                x.iter().enumerate().all(|(i, e)| {
                    if i / k == i % k {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            }
        }
    }

    fn inv(&self) -> Result<Self> {
        match &self.value {
            Value::Frac(a) => {
                if a.is_zero() {
                    Err(Error::not_invertible("0"))
                } else {
                    Ok(self.with_value(Value::Frac(a.recip())))
                }
            }
            Value::Residue(a) => {
                if *a == 0 {
                    Err(Error::not_invertible("0"))
                } else {
                    let p = self.modulus();
                    Ok(self.with_value(Value::Residue(pow_mod(*a, p - 2, p))))
                }
            }
            Value::Block(x) => {
                let k = self.block_size();
                let inverse = Matrix::new(k, x.clone())?
                    .inverse()
                    .map_err(|_| Error::not_invertible(format!("singular block {self}")))?;
                Ok(self.with_value(Value::Block(inverse.into_entries())))
            }
        }
    }

    fn is_commutative(&self) -> bool {
        self.ring.is_commutative()
    }

    fn same_ring(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring
    }

    fn ring_name(&self) -> String {
        self.ring.to_string()
    }

    fn solve_conjugator(&self, pairs: &[(Self, Self)]) -> Option<Self> {
        super::conjugacy::solve(self, pairs)
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Frac(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Value::Residue(r) => write!(f, "{r}"),
            Value::Block(x) => {
                let k = self.block_size();
                f.write_str("[")?;
                for r in 0..k {
                    if r > 0 {
                        f.write_str(", ")?;
                    }
                    f.write_str("[")?;
                    for c in 0..k {
                        if c > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{}", x[r * k + c])?;
                    }
                    f.write_str("]")?;
                }
                f.write_str("]")
            }
        }
    }
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> Arc<RingDescriptor> {
        Arc::new(RingDescriptor::mod_p(7).unwrap())
    }

    fn m2f7() -> Arc<RingDescriptor> {
        Arc::new(RingDescriptor::block_matrix(2, RingDescriptor::mod_p(7).unwrap()).unwrap())
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
    fn fraction_addition() {
        assert_eq!(
            RingElem::ratio(1, 3).add(&RingElem::ratio(1, 6)),
            RingElem::ratio(1, 2)
        );
        assert_eq!(RingElem::ratio(2, -4).to_string(), "-1/2");
    }

    #[test]
    fn residue_product_and_inverse() {
        let r = f7();
        let three = RingElem::integer(&r, 3);
        let five = RingElem::integer(&r, 5);
        assert!(three.mul(&five).is_one());
        assert_eq!(three.inv().unwrap(), five);
        assert_eq!(RingElem::integer(&r, -1).as_residue(), Some(6));
    }

    #[test]
    fn unipotent_blocks() {
        let r = m2f7();
        let u = blk(&r, [1, 1, 0, 1]);
        let v = blk(&r, [1, 6, 0, 1]);
        assert!(u.mul(&v).is_one());
        assert_eq!(u.inv().unwrap(), blk(&r, [1, -1, 0, 1]));
    }

    #[test]
    fn non_units() {
        assert!(matches!(
            RingElem::ratio(0, 1).inv(),
            Err(Error::NotInvertible { .. })
        ));
        assert!(RingElem::zero(&f7()).inv().is_err());
        assert!(blk(&m2f7(), [1, 2, 2, 4]).inv().is_err());
        assert!(RingElem::ratio(1, 1).inv().unwrap().is_one());
    }

    #[test]
    fn blocks_do_not_commute() {
        let r = m2f7();
        let x = blk(&r, [1, 1, 0, 1]);
        let y = blk(&r, [1, 0, 1, 1]);
        assert_ne!(x.mul(&y), y.mul(&x));
    }

    #[test]
    fn block_construction_checks_entries() {
        let r = m2f7();
        let bad = vec![RingElem::ratio(1, 1); 4];
        assert!(matches!(
            RingElem::block(&r, bad),
            Err(Error::DescriptorMismatch { .. })
        ));
        let short = vec![RingElem::integer(&f7(), 1); 3];
        assert!(matches!(
            RingElem::block(&r, short),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn checked_ops_reject_mixed_rings() {
        let a = RingElem::ratio(1, 2);
        let b = RingElem::integer(&f7(), 3);
        assert!(matches!(
            crate::ring::checked_add(&a, &b),
            Err(Error::DescriptorMismatch { .. })
        ));
        assert!(crate::ring::checked_mul(&a, &a).is_ok());
    }
}
