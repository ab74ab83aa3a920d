//! Membership in the domains `S` (3×3 matrices) and `Ŝ` (hatted matrices),
//! and the check that `J` keeps `S` inside itself.

use crate::birational::{j, j2, j_inverse, HatParams};
use crate::error::{Error, Result};
use crate::matrix::{inverse_2x2_hadamard, Matrix};
use crate::ring::Ring;

/// Elements whose invertibility defines `Ŝ`, in checking order.
pub const HAT_CHECKLIST: [&str; 15] = [
    "a",
    "b",
    "c",
    "d",
    "a-1",
    "b-1",
    "c-1",
    "d-1",
    "d-c",
    "d-b",
    "c-a",
    "b-a",
    "db^-1-ca^-1",
    "(d-c)^-1(c-1)-(b-a)^-1(a-1)",
    "(c-1)(d-c)^-1d-(a-1)(b-a)^-1b",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementStatus {
    Unit,
    NonUnit,
    /// Not computable because an ingredient is not invertible.
    Blocked {
        by: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChecklistEntry {
    pub label: String,
    pub status: ElementStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomainReport {
    pub member: bool,
    pub failing_element: Option<String>,
    pub checklist: Vec<ChecklistEntry>,
}

impl DomainReport {
    fn from_checklist(checklist: Vec<ChecklistEntry>) -> Self {
        let failing_element = checklist
            .iter()
            .find(|e| e.status != ElementStatus::Unit)
            .map(|e| e.label.clone());
        DomainReport {
            member: failing_element.is_none(),
            failing_element,
            checklist,
        }
    }
}

struct Checklist<T> {
    inverses: Vec<Option<T>>,
    entries: Vec<ChecklistEntry>,
}

impl<T: Ring> Checklist<T> {
    fn new() -> Self {
        Checklist {
            inverses: Vec::new(),
            entries: Vec::new(),
        }
    }

    fn push(&mut self, label: &str, value: T) {
        let inv = value.inv().ok();
        let status = if inv.is_some() {
            ElementStatus::Unit
        } else {
            ElementStatus::NonUnit
        };
        self.inverses.push(inv);
        self.entries.push(ChecklistEntry {
            label: label.to_string(),
            status,
        });
    }

    fn blocked(&mut self, label: &str, by: usize) {
        self.inverses.push(None);
        self.entries.push(ChecklistEntry {
            label: label.to_string(),
            status: ElementStatus::Blocked {
                by: self.entries[by].label.clone(),
            },
        });
    }

    /// Inverses of the listed earlier elements, or the index of the first missing one.
    fn need(&self, idx: &[usize]) -> std::result::Result<Vec<T>, usize> {
        idx.iter()
            .map(|&i| self.inverses[i].clone().ok_or(i))
            .collect()
    }
}

/// Evaluates the `Ŝ` checklist on every element, recording blocked ones.
pub fn in_s_hat<T: Ring>(p: &HatParams<T>) -> DomainReport {
    let one = p.a.one_like();
    let HatParams { a, b, c, d } = p;
    let mut cl = Checklist::new();
    for (label, v) in HAT_CHECKLIST.iter().zip([
        a.clone(),
        b.clone(),
        c.clone(),
        d.clone(),
        a.sub(&one),
        b.sub(&one),
        c.sub(&one),
        d.sub(&one),
        d.sub(c),
        d.sub(b),
        c.sub(a),
        b.sub(a),
    ]) {
        cl.push(label, v);
    }
    // indices: a=0 b=1 d-c=8 b-a=11
    match cl.need(&[1, 0]) {
        Ok(inv) => cl.push(HAT_CHECKLIST[12], d.mul(&inv[0]).sub(&c.mul(&inv[1]))),
        Err(i) => cl.blocked(HAT_CHECKLIST[12], i),
    }
    match cl.need(&[8, 11]) {
        Ok(inv) => {
            let (dc, ba) = (&inv[0], &inv[1]);
            cl.push(
                HAT_CHECKLIST[13],
                dc.mul(&c.sub(&one)).sub(&ba.mul(&a.sub(&one))),
            );
            cl.push(
                HAT_CHECKLIST[14],
                c.sub(&one).mul(dc).mul(d).sub(&a.sub(&one).mul(ba).mul(b)),
            );
        }
        Err(i) => {
            cl.blocked(HAT_CHECKLIST[13], i);
            cl.blocked(HAT_CHECKLIST[14], i);
        }
    }
    DomainReport::from_checklist(cl.entries)
}

/// First checklist element that is not invertible, stopping early.
pub fn first_s_hat_failure<T: Ring>(p: &HatParams<T>) -> Option<&'static str> {
    let one = p.a.one_like();
    let HatParams { a, b, c, d } = p;
    let simple = [
        a.clone(),
        b.clone(),
        c.clone(),
        d.clone(),
        a.sub(&one),
        b.sub(&one),
        c.sub(&one),
        d.sub(&one),
    ];
    for (label, v) in HAT_CHECKLIST.iter().zip(&simple) {
        if !v.is_unit() {
            return Some(label);
        }
    }
    let mut diffs = Vec::with_capacity(4);
    for (label, v) in HAT_CHECKLIST[8..12]
        .iter()
        .zip([d.sub(c), d.sub(b), c.sub(a), b.sub(a)])
    {
        match v.inv() {
            Ok(i) => diffs.push(i),
            Err(_) => return Some(label),
        }
    }
    let (ai, bi) = (a.inv().ok()?, b.inv().ok()?);
    let (dc, ba) = (&diffs[0], &diffs[3]);
    let rest = [
        d.mul(&bi).sub(&c.mul(&ai)),
        dc.mul(&c.sub(&one)).sub(&ba.mul(&a.sub(&one))),
        c.sub(&one).mul(dc).mul(d).sub(&a.sub(&one).mul(ba).mul(b)),
    ];
    for (label, v) in HAT_CHECKLIST[12..].iter().zip(&rest) {
        if !v.is_unit() {
            return Some(label);
        }
    }
    None
}

pub fn is_in_s_hat<T: Ring>(p: &HatParams<T>) -> bool {
    first_s_hat_failure(p).is_none()
}

/// `Ok` when `p ∈ Ŝ`, otherwise `DomainViolation` naming the first failure.
pub fn require_s_hat<T: Ring>(p: &HatParams<T>) -> Result<()> {
    match first_s_hat_failure(p) {
        None => Ok(()),
        Some(label) => Err(Error::DomainViolation(label.to_string())),
    }
}

fn square_invertible<T: Ring>(m: &Matrix<T>) -> bool {
    match m.n() {
        1 => m.get(0, 0).is_unit(),
        2 if m.is_hadamard_invertible() => inverse_2x2_hadamard(m).is_ok() || m.is_invertible(),
        _ => m.is_invertible(),
    }
}

/// Membership of a 3×3 matrix in `S`: every square submatrix is invertible
/// and so is `J₂(M)`.
pub fn in_s<T: Ring>(m: &Matrix<T>) -> Result<DomainReport> {
    if m.n() != 3 {
        return Err(Error::DimensionMismatch {
            left: 3,
            right: m.n(),
        });
    }
    let mut checklist = Vec::new();
    let mut first_bad_entry = None;
    for sub in m.square_submatrices() {
        let ok = square_invertible(&sub.matrix);
        if !ok && sub.matrix.n() == 1 && first_bad_entry.is_none() {
            first_bad_entry = Some(sub.label());
        }
        checklist.push(ChecklistEntry {
            label: sub.label(),
            status: if ok {
                ElementStatus::Unit
            } else {
                ElementStatus::NonUnit
            },
        });
    }
    let status = match first_bad_entry {
        Some(by) => ElementStatus::Blocked { by },
        None if j2(m)?.is_invertible() => ElementStatus::Unit,
        None => ElementStatus::NonUnit,
    };
    checklist.push(ChecklistEntry {
        label: "J2(M)".into(),
        status,
    });
    Ok(DomainReport::from_checklist(checklist))
}

pub fn is_in_s<T: Ring>(m: &Matrix<T>) -> bool {
    m.n() == 3
        && m.square_submatrices()
            .iter()
            .all(|s| square_invertible(&s.matrix))
        && j2(m).is_ok_and(|h| h.is_invertible())
}

/// The orbit `J^k(M)` for `k = 1..=depth` and `k = -1..=-depth`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfinementTrace<T> {
    pub forward: Vec<Matrix<T>>,
    pub backward: Vec<Matrix<T>>,
}

/// Checks that the `J`-orbit of `M ∈ S` stays in `S` for `depth` steps in
/// both directions and that `J` and `J⁻¹` undo each other along the way.
pub fn check_confinement<T: Ring>(m: &Matrix<T>, depth: usize) -> Result<ConfinementTrace<T>> {
    let start = in_s(m)?;
    if !start.member {
        return Err(Error::PreconditionViolated(format!(
            "M is not in S: {} is not invertible",
            start.failing_element.unwrap_or_default()
        )));
    }
    Ok(ConfinementTrace {
        forward: walk(m, depth, j, j_inverse, "")?,
        backward: walk(m, depth, j_inverse, j, "-")?,
    })
}

type Step<T> = fn(&Matrix<T>) -> Result<Matrix<T>>;

fn walk<T: Ring>(
    m: &Matrix<T>,
    depth: usize,
    step: Step<T>,
    back: Step<T>,
    sign: &str,
) -> Result<Vec<Matrix<T>>> {
    let mut orbit = Vec::with_capacity(depth);
    let mut cur = m.clone();
    for k in 1..=depth {
        let next = step(&cur)
            .map_err(|e| Error::VerificationFailed(format!("J^{sign}{k}(M) undefined: {e}")))?;
        let report = in_s(&next)?;
        if !report.member {
            return Err(Error::VerificationFailed(format!(
                "J^{sign}{k}(M) left S: {} is not invertible",
                report.failing_element.unwrap_or_default()
            )));
        }
        if back(&next).ok().as_ref() != Some(&cur) {
            return Err(Error::VerificationFailed(format!(
                "J and its inverse disagree at step {sign}{k}"
            )));
        }
        orbit.push(next.clone());
        cur = next;
    }
    Ok(orbit)
}
