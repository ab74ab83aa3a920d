use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::modp::is_prime;
use crate::error::{Error, Result};

/// Maximum nesting of block-matrix rings.
pub const MAX_BLOCK_DEPTH: usize = 2;

/// Which concrete ring a [`RingElem`](super::RingElem) belongs to.
///
/// Construct through [`RingDescriptor::mod_p`] and
/// [`RingDescriptor::block_matrix`] so that the modulus is prime and the
/// nesting depth stays within [`MAX_BLOCK_DEPTH`]. Deserialization goes
/// through the same checks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDescriptor", into = "RawDescriptor")]
pub enum RingDescriptor {
    Fraction,
    ModP {
        modulus: u64,
    },
    BlockMatrix {
        block_size: usize,
        inner: Arc<RingDescriptor>,
    },
}

impl RingDescriptor {
    pub fn fraction() -> Self {
        RingDescriptor::Fraction
    }

    pub fn mod_p(modulus: u64) -> Result<Self> {
        if !is_prime(modulus) {
            return Err(Error::InvalidDescriptor(format!(
                "modulus {modulus} is not prime"
            )));
        }
        Ok(RingDescriptor::ModP { modulus })
    }

    pub fn block_matrix(block_size: usize, inner: RingDescriptor) -> Result<Self> {
        if block_size == 0 {
            return Err(Error::InvalidDescriptor(
                "block_size must be at least 1".into(),
            ));
        }
        if inner.block_depth() + 1 > MAX_BLOCK_DEPTH {
            return Err(Error::InvalidDescriptor(format!(
                "block-matrix nesting deeper than {MAX_BLOCK_DEPTH}"
            )));
        }
        Ok(RingDescriptor::BlockMatrix {
            block_size,
            inner: Arc::new(inner),
        })
    }

    /// Block k=2 over F_101.
    pub fn default_verification() -> Self {
        RingDescriptor::block_matrix(2, RingDescriptor::ModP { modulus: 101 })
            .expect("valid default ring")
    }

    pub fn block_depth(&self) -> usize {
        match self {
            RingDescriptor::BlockMatrix { inner, .. } => 1 + inner.block_depth(),
            _ => 0,
        }
    }

    pub fn is_commutative(&self) -> bool {
        match self {
            RingDescriptor::Fraction | RingDescriptor::ModP { .. } => true,
            RingDescriptor::BlockMatrix { block_size, inner } => {
                *block_size == 1 && inner.is_commutative()
            }
        }
    }

    /// The field at the bottom of any block nesting.
    pub fn base_field(&self) -> &RingDescriptor {
        match self {
            RingDescriptor::BlockMatrix { inner, .. } => inner.base_field(),
            base => base,
        }
    }

    /// Dimension of the ring as a vector space over its base field.
    pub fn base_dimension(&self) -> usize {
        match self {
            RingDescriptor::BlockMatrix { block_size, inner } => {
                block_size * block_size * inner.base_dimension()
            }
            _ => 1,
        }
    }

    /// Size of the ring as a matrix algebra over the base field.
    pub(crate) fn matrix_size(&self) -> usize {
        match self {
            RingDescriptor::BlockMatrix { block_size, inner } => block_size * inner.matrix_size(),
            _ => 1,
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Fraction => f.write_str("Q"),
            RingDescriptor::ModP { modulus } => write!(f, "F_{modulus}"),
            RingDescriptor::BlockMatrix { block_size, inner } => {
                write!(f, "M_{block_size}({inner})")
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind")]
enum RawDescriptor {
    #[serde(rename = "fraction")]
    Fraction,
    #[serde(rename = "mod-p")]
    ModP { modulus: u64 },
    #[serde(rename = "block-matrix")]
    BlockMatrix {
        block_size: usize,
        inner: Box<RingDescriptor>,
    },
}

impl TryFrom<RawDescriptor> for RingDescriptor {
    type Error = Error;

    fn try_from(raw: RawDescriptor) -> Result<Self> {
        match raw {
            RawDescriptor::Fraction => Ok(RingDescriptor::Fraction),
            RawDescriptor::ModP { modulus } => RingDescriptor::mod_p(modulus),
            RawDescriptor::BlockMatrix { block_size, inner } => {
                RingDescriptor::block_matrix(block_size, *inner)
            }
        }
    }
}

impl From<RingDescriptor> for RawDescriptor {
    fn from(d: RingDescriptor) -> Self {
        match d {
            RingDescriptor::Fraction => RawDescriptor::Fraction,
            RingDescriptor::ModP { modulus } => RawDescriptor::ModP { modulus },
            RingDescriptor::BlockMatrix { block_size, inner } => RawDescriptor::BlockMatrix {
                block_size,
                inner: Box::new((*inner).clone()),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutativity_by_kind() {
        let f7 = RingDescriptor::mod_p(7).unwrap();
        assert!(RingDescriptor::fraction().is_commutative());
        assert!(f7.is_commutative());
        assert!(!RingDescriptor::block_matrix(2, f7)
            .unwrap()
            .is_commutative());
        assert!(RingDescriptor::block_matrix(1, RingDescriptor::Fraction)
            .unwrap()
            .is_commutative());
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(matches!(
            RingDescriptor::mod_p(91),
            Err(Error::InvalidDescriptor(_))
        ));
        assert!(RingDescriptor::mod_p(1).is_err());
        assert!(RingDescriptor::mod_p(0).is_err());
    }

    #[test]
    fn nesting_capped_at_two() {
        let f = RingDescriptor::mod_p(5).unwrap();
        let one = RingDescriptor::block_matrix(2, f).unwrap();
        let two = RingDescriptor::block_matrix(2, one).unwrap();
        assert_eq!(two.block_depth(), 2);
        assert!(RingDescriptor::block_matrix(2, two).is_err());
        assert!(RingDescriptor::block_matrix(0, RingDescriptor::Fraction).is_err());
    }

    #[test]
    fn json_encoding() {
        let d = RingDescriptor::default_verification();
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(
            s,
            r#"{"kind":"block-matrix","block_size":2,"inner":{"kind":"mod-p","modulus":101}}"#
        );
        let back: RingDescriptor = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
        assert_eq!(
            serde_json::to_string(&RingDescriptor::Fraction).unwrap(),
            r#"{"kind":"fraction"}"#
        );
    }

    #[test]
    fn json_validates() {
        assert!(
            serde_json::from_str::<RingDescriptor>(r#"{"kind":"mod-p","modulus":100}"#).is_err()
        );
        let deep = r#"{"kind":"block-matrix","block_size":2,"inner":
            {"kind":"block-matrix","block_size":2,"inner":
            {"kind":"block-matrix","block_size":2,"inner":{"kind":"fraction"}}}}"#;
        assert!(serde_json::from_str::<RingDescriptor>(deep).is_err());
    }
}
