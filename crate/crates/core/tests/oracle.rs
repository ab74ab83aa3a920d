//! Library results over the rationals against the adjugate-based oracle.

mod common;

use common::{q, Q};
use ncbirational::birational::{
    nu, omega, phi, phi2_closed, phi_closed, phi_inv, phi_inv_closed, psi, psi_closed, zeta,
    HatParams,
};
use ncbirational::ring::RingElem;
use ncbirational::{QHat, QMatrix};
use proptest::prelude::*;

fn lib(p: &[Q; 4]) -> HatParams<RingElem> {
    HatParams::from_array(p.clone().map(RingElem::fraction)).unwrap()
}

fn plain(p: &HatParams<RingElem>) -> [Q; 4] {
    p.to_array().map(|x| x.as_fraction().unwrap().clone())
}

#[test]
fn oracle_reproduces_hand_values() {
    let p = [q(2, 1), q(3, 1), q(5, 1), q(7, 1)];
    assert_eq!(common::phi(&p).unwrap()[0], q(-4, 3));
    assert_eq!(common::phi_inv(&p).unwrap()[0], q(-3, 8));
    assert_eq!(common::psi(&p).unwrap()[0], q(-3, 8));
    let f = common::phi(&p).unwrap();
    assert_eq!(common::phi(&f).unwrap()[0], q(-3, 8));
}

#[test]
fn worked_vector() {
    let p = lib(&[q(2, 1), q(3, 1), q(5, 1), q(7, 1)]);
    assert_eq!(phi_closed(&p).unwrap().a, RingElem::ratio(-4, 3));
    assert_eq!(phi_inv_closed(&p).unwrap().a, RingElem::ratio(-3, 8));
    assert_eq!(psi_closed(&p).unwrap().a, RingElem::ratio(-3, 8));
    assert_eq!(phi2_closed(&p).unwrap().a, RingElem::ratio(-3, 8));
    assert_eq!(zeta(&p).unwrap(), RingElem::ratio(1, 1));
    assert_eq!(nu(&p).unwrap(), RingElem::ratio(22, 1));
    assert_eq!(omega(&p).unwrap(), RingElem::ratio(22, 1));
}

#[test]
fn generic_aliases_agree_with_dynamic_elements() {
    let p: QHat = HatParams::new(q(2, 1), q(-3, 4), q(5, 3), q(7, 2)).unwrap();
    let m: QMatrix = p.to_matrix();
    assert!(m.is_hatted());
    let dynamic = phi(&lib(&p.to_array())).unwrap();
    assert_eq!(
        phi(&p).unwrap().to_array().to_vec(),
        plain(&dynamic).to_vec()
    );
}

fn small_q() -> impl Strategy<Value = Q> {
    (-30i64..=30, 1i64..=30).prop_map(|(n, d)| q(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn maps_match_oracle(v in proptest::array::uniform4(small_q())) {
        let p = lib(&v);
        prop_assume!(ncbirational::domain::is_in_s_hat(&p));
        prop_assert_eq!(plain(&phi(&p).unwrap()), common::phi(&v).unwrap());
        prop_assert_eq!(plain(&phi_closed(&p).unwrap()), common::phi(&v).unwrap());
        prop_assert_eq!(plain(&phi_inv(&p).unwrap()), common::phi_inv(&v).unwrap());
        prop_assert_eq!(plain(&psi(&p).unwrap()), common::psi(&v).unwrap());
        let f = common::phi(&v).unwrap();
        prop_assert_eq!(plain(&phi2_closed(&p).unwrap()), common::phi(&f).unwrap());
    }
}
