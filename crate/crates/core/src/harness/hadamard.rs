//! The triple Hadamard-product identities for iterates of `Φ`.

use crate::birational::{phi, phi2, phi_inv, HatParams};
use crate::domain::require_s_hat;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::Ring;

fn triple<T: Ring>(x: &Matrix<T>, y: &Matrix<T>, z: &Matrix<T>) -> Result<Matrix<T>> {
    x.hadamard(y)?.hadamard(z)
}

/// `Φ⁰ ⋆ Φ¹ ⋆ Φ² = Φ⁰ ⋆ Φ¹ ⋆ Φ⁻¹ = 1` over a commutative ring.
pub fn check_hadamard_commutative<T: Ring>(p: &HatParams<T>) -> Result<bool> {
    if !p.a.is_commutative() {
        return Err(Error::PreconditionViolated(format!(
            "{} is not commutative",
            p.a.ring_name()
        )));
    }
    require_s_hat(p)?;
    let p0 = p.to_matrix();
    let p1 = phi(p)?.to_matrix();
    let p2 = phi2(p)?.to_matrix();
    let pm = phi_inv(p)?.to_matrix();
    Ok(triple(&p0, &p1, &p2)?.is_all_ones() && triple(&p0, &p1, &pm)?.is_all_ones())
}

/// Factor names in the order the identity is stated.
pub const M_SUBSET_FACTORS: [&str; 3] = ["phi0", "phi-1", "phi1"];

/// Orders of the three factors, as indices into [`M_SUBSET_FACTORS`];
/// the first entry is the stated order.
pub const M_SUBSET_ORDERS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

pub fn order_label(order: [usize; 3]) -> String {
    order.map(|i| M_SUBSET_FACTORS[i]).join("*")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MSubsetOutcome {
    /// `Φ` maps the point back into the `(a, b, b, a)` family.
    pub closure: bool,
    /// Whether each order in [`M_SUBSET_ORDERS`] gives the all-ones matrix.
    pub orders: [bool; 6],
}

impl MSubsetOutcome {
    pub fn stated_order_holds(&self) -> bool {
        self.orders[0]
    }
}

/// Evaluates `Φ⁰ ⋆ Φ⁻¹ ⋆ Φ¹` on the point `(a, b, b, a)` in every factor
/// order, together with closure of that family under `Φ`.
pub fn check_hadamard_m_subset<T: Ring>(a: &T, b: &T) -> Result<MSubsetOutcome> {
    let p = HatParams::new(a.clone(), b.clone(), b.clone(), a.clone())?;
    require_s_hat(&p)?;
    let image = phi(&p)?;
    let closure = image.a == image.d && image.b == image.c;
    let factors = [p.to_matrix(), phi_inv(&p)?.to_matrix(), image.to_matrix()];
    let mut orders = [false; 6];
    for (slot, order) in orders.iter_mut().zip(M_SUBSET_ORDERS) {
        let [x, y, z] = order.map(|i| &factors[i]);
        *slot = triple(x, y, z)?.is_all_ones();
    }
    Ok(MSubsetOutcome { closure, orders })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{RingDescriptor, RingElem};
    use std::sync::Arc;

    fn q(n: i64) -> RingElem {
        RingElem::ratio(n, 1)
    }

    #[test]
    fn commutative_identity_at_2357() {
        let p = HatParams::new(q(2), q(3), q(5), q(7)).unwrap();
        assert!(check_hadamard_commutative(&p).unwrap());
    }

    #[test]
    fn noncommutative_ring_is_gated() {
        let r = Arc::new(RingDescriptor::default_verification());
        let one = RingElem::one(&r);
        let p = HatParams::new(one.clone(), one.clone(), one.clone(), one).unwrap();
        assert!(matches!(
            check_hadamard_commutative(&p),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn m_subset_over_q() {
        let out = check_hadamard_m_subset(&q(2), &q(3)).unwrap();
        assert!(out.closure);
        assert_eq!(out.orders, [true; 6]);
        assert!(matches!(
            check_hadamard_m_subset(&q(2), &q(2)),
            Err(Error::DomainViolation(_))
        ));
        assert_eq!(order_label(M_SUBSET_ORDERS[0]), "phi0*phi-1*phi1");
    }
}
