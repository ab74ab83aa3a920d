//! Definitional `Φ`, `Φ⁻¹`, `Ψ`, built from `J₁`, `J₂` and `Λ`.

use super::{j1, j2, lambda_l, lambda_r, omega, HatParams};
use crate::domain::require_s_hat;
use crate::error::{Error, Result};
use crate::ring::Ring;

/// `Φ(A) = J₂(Λᴸ(A⁻¹))`.
pub fn phi<T: Ring>(p: &HatParams<T>) -> Result<HatParams<T>> {
    require_s_hat(p)?;
    let inv = j1(&p.to_matrix())?;
    HatParams::from_matrix(&j2(&lambda_l(&inv)?)?)
}

/// `Φ⁻¹(A) = Λᴿ(J₁(J₂(A)))`.
pub fn phi_inv<T: Ring>(p: &HatParams<T>) -> Result<HatParams<T>> {
    require_s_hat(p)?;
    let h = j2(&p.to_matrix())?;
    HatParams::from_matrix(&lambda_r(&j1(&h)?)?)
}

/// `Ψ = J₂ ∘ Φ ∘ J₂`.
pub fn psi<T: Ring>(p: &HatParams<T>) -> Result<HatParams<T>> {
    require_s_hat(p)?;
    phi(&p.j2()?)?.j2()
}

/// `Φ ∘ Φ`.
pub fn phi2<T: Ring>(p: &HatParams<T>) -> Result<HatParams<T>> {
    phi(&phi(p)?)
}

/// The element `x = ω(Φ(A))` with `Φ³(A) = x⁻¹ A x`, checked against the
/// definitional third iterate.
pub fn phi3_witness<T: Ring>(p: &HatParams<T>) -> Result<T> {
    let first = phi(p)?;
    let x = omega(&first)?;
    let third = phi(&phi(&first)?)?;
    let conj = p.conjugated_by(&x)?;
    if third != conj {
        return Err(Error::VerificationFailed(format!(
            "phi^3(A) = {third:?} but x^-1 A x = {conj:?}"
        )));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::birational::{phi_closed, phi_inv_closed, psi_closed};
    use crate::ring::RingElem;

    fn hp(v: [i64; 4]) -> HatParams<RingElem> {
        HatParams::from_array(v.map(|n| RingElem::ratio(n, 1))).unwrap()
    }

    #[test]
    fn phi_and_inverse_round_trip_over_q() {
        let p = hp([2, 3, 5, 7]);
        let f = phi(&p).unwrap();
        assert_eq!(phi_closed(&p).unwrap(), f);
        assert_eq!(phi_inv(&f).unwrap(), p);
        assert_eq!(phi_inv_closed(&p).unwrap(), phi_inv(&p).unwrap());
        assert_eq!(psi_closed(&p).unwrap(), psi(&p).unwrap());
    }

    #[test]
    fn phi_cubed_is_identity_over_q() {
        let p = hp([2, 3, 5, 7]);
        assert_eq!(phi(&phi2(&p).unwrap()).unwrap(), p);
        assert!(phi3_witness(&p).is_ok());
    }

    #[test]
    fn all_ones_is_outside_the_domain() {
        match phi(&hp([1, 1, 1, 1])) {
            Err(Error::DomainViolation(label)) => assert_eq!(label, "a-1"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
