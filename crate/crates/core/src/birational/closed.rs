//! Closed-form expressions for `Φ`, `Φ⁻¹`, `Ψ`, `Φ²` and the conjugating
//! elements `ζ`, `ν`, `ω`. Each entry is evaluated directly from
//! `(a, b, c, d)` without going through 3×3 inverses.

use super::{HatParams, KleinPerm};
use crate::error::{Error, Result};
use crate::ring::{inv_named, product, Ring};

const ENTRY_NAMES: [&str; 4] = ["a", "b", "c", "d"];

fn tagged<T>(r: Result<T>, entry: &str) -> Result<T> {
    r.map_err(|e| match e {
        Error::NotInvertible { what, stage } => Error::NotInvertible {
            what: format!("{what} (entry {entry})"),
            stage,
        },
        other => other,
    })
}

/// Builds a map whose entry `x` is `f` evaluated on the Klein-permuted
/// quadruple that moves `x` into position `a`.
fn klein_covariant<T: Ring>(
    p: &HatParams<T>,
    f: impl Fn(&HatParams<T>) -> Result<T>,
) -> Result<HatParams<T>> {
    let [a, b, c, d] = KleinPerm::ALL.map(|perm| f(&p.permuted(perm)));
    let [na, nb, nc, nd] = ENTRY_NAMES;
    Ok(HatParams {
        a: tagged(a, na)?,
        b: tagged(b, nb)?,
        c: tagged(c, nc)?,
        d: tagged(d, nd)?,
    })
}

fn one<T: Ring>(p: &HatParams<T>) -> T {
    p.a.one_like()
}

/// `db⁻¹ - ca⁻¹`, `db⁻¹ - 1` and the inverses used by several formulas.
struct Shared<T> {
    ai: T,
    bi: T,
    db: T,
}

impl<T: Ring> Shared<T> {
    fn new(p: &HatParams<T>) -> Result<Self> {
        let ai = inv_named(&p.a, "a")?;
        let bi = inv_named(&p.b, "b")?;
        let db = p.d.mul(&bi);
        Ok(Shared { ai, bi, db })
    }

    fn core(&self, p: &HatParams<T>) -> T {
        self.db.sub(&p.c.mul(&self.ai))
    }
}

/// `Φ` in closed form.
pub fn phi_closed<T: Ring>(p: &HatParams<T>) -> Result<HatParams<T>> {
    let one = one(p);
    let s = Shared::new(p)?;
    let x = inv_named(&s.core(p), "db^-1-ca^-1")?;
    let right_a = s.db.sub(&one);
    let right_b = p.c.mul(&s.ai).sub(&one);
    let dc = p.d.sub(&p.c);
    let ba = p.b.sub(&p.a);
    let d1 = inv_named(&p.d.sub(&one), "d-1")?;
    let c1 = inv_named(&p.c.sub(&one), "c-1")?;
    let b1 = inv_named(&p.b.sub(&one), "b-1")?;
    let a1 = inv_named(&p.a.sub(&one), "a-1")?;
    Ok(HatParams {
        a: product(&[&d1, &dc, &s.ai, &x, &right_a]),
        b: product(&[&c1, &dc, &s.bi, &x, &right_b]),
        c: product(&[&b1, &ba, &s.ai, &x, &right_a]),
        d: product(&[&a1, &ba, &s.bi, &x, &right_b]),
    })
}

fn phi_inv_entry<T: Ring>(p: &HatParams<T>) -> Result<T> {
    let one = one(p);
    let s = Shared::new(p)?;
    let dc = inv_named(&p.d.sub(&p.c), "d-c")?;
    let tail = inv_named(&s.db.sub(&one), "db^-1-1")?;
    Ok(product(&[&p.d.sub(&one), &dc, &s.core(p), &tail]))
}

fn psi_entry<T: Ring>(p: &HatParams<T>) -> Result<T> {
    let one = one(p);
    let s = Shared::new(p)?;
    let dc = inv_named(&p.d.sub(&p.c), "d-c")?;
    let tail = inv_named(&s.db.sub(&one), "db^-1-1")?;
    Ok(product(&[&dc, &s.core(p), &tail, &p.d.sub(&one)]))
}

/// `Φ⁻¹` in closed form.
pub fn phi_inv_closed<T: Ring>(p: &HatParams<T>) -> Result<HatParams<T>> {
    klein_covariant(p, phi_inv_entry)
}

/// `Ψ` in closed form.
pub fn psi_closed<T: Ring>(p: &HatParams<T>) -> Result<HatParams<T>> {
    klein_covariant(p, psi_entry)
}

/// `Φ²` in closed form: each entry is the matching `Ψ` entry conjugated by
/// `ζ` of the same permuted quadruple.
pub fn phi2_closed<T: Ring>(p: &HatParams<T>) -> Result<HatParams<T>> {
    klein_covariant(p, |q| {
        let z = zeta(q)?;
        let zi = inv_named(&z, "zeta")?;
        Ok(product(&[&zi, &psi_entry(q)?, &z]))
    })
}

/// `ζ = (d-c)⁻¹(c-1) - (b-a)⁻¹(a-1)`.
pub fn zeta<T: Ring>(p: &HatParams<T>) -> Result<T> {
    let one = one(p);
    let dc = inv_named(&p.d.sub(&p.c), "d-c")?;
    let ba = inv_named(&p.b.sub(&p.a), "b-a")?;
    Ok(dc.mul(&p.c.sub(&one)).sub(&ba.mul(&p.a.sub(&one))))
}

/// The second expression for `ζ`: `(d-c)⁻¹(d-1) - (b-a)⁻¹(b-1)`.
pub fn zeta_alt<T: Ring>(p: &HatParams<T>) -> Result<T> {
    let one = one(p);
    let dc = inv_named(&p.d.sub(&p.c), "d-c")?;
    let ba = inv_named(&p.b.sub(&p.a), "b-a")?;
    Ok(dc.mul(&p.d.sub(&one)).sub(&ba.mul(&p.b.sub(&one))))
}

/// `ν = [d(d-b)⁻¹ - c(c-a)⁻¹]⁻¹ [d(d-b)⁻¹(b-1) - c(c-a)⁻¹(a-1)]`.
pub fn nu<T: Ring>(p: &HatParams<T>) -> Result<T> {
    let one = one(p);
    let u = p.d.mul(&inv_named(&p.d.sub(&p.b), "d-b")?);
    let v = p.c.mul(&inv_named(&p.c.sub(&p.a), "c-a")?);
    let head = inv_named(&u.sub(&v), "d(d-b)^-1-c(c-a)^-1")?;
    let tail = u.mul(&p.b.sub(&one)).sub(&v.mul(&p.a.sub(&one)));
    let n = head.mul(&tail);
    inv_named(&n, "nu")?;
    Ok(n)
}

/// `ω = ν ζ`.
pub fn omega<T: Ring>(p: &HatParams<T>) -> Result<T> {
    let w = nu(p)?.mul(&zeta(p)?);
    inv_named(&w, "omega")?;
    Ok(w)
}
