//! Dense square matrices over a [`Ring`].

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{inv_named, product, Ring};

/// An `n×n` row-major matrix whose entries share one ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    n: usize,
    entries: Vec<T>,
}

/// A square submatrix with the (sorted) rows and columns it was cut from.
#[derive(Clone, Debug, PartialEq)]
pub struct Submatrix<T> {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub matrix: Matrix<T>,
}

impl<T> Submatrix<T> {
    /// e.g. `rows{0,2}cols{1,2}`.
    pub fn label(&self) -> String {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        format!("rows{{{}}}cols{{{}}}", join(&self.rows), join(&self.cols))
    }
}

/// `s, t, u, v` of the inverse of `[[a-1, b-1], [c-1, d-1]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct BorderedInverseParts<T> {
    pub s: T,
    pub t: T,
    pub u: T,
    pub v: T,
}

impl<T: Ring> Matrix<T> {
    pub fn new(n: usize, entries: Vec<T>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Malformed(
                "matrix dimension must be at least 1".into(),
            ));
        }
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                left: n * n,
                right: entries.len(),
            });
        }
        if let Some(bad) = entries.iter().find(|e| !e.same_ring(&entries[0])) {
            return Err(Error::DescriptorMismatch {
                left: entries[0].ring_name(),
                right: bad.ring_name(),
            });
        }
        Ok(Matrix { n, entries })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                left: n,
                right: bad.len(),
            });
        }
        Matrix::new(n, rows.into_iter().flatten().collect())
    }

    /// Builds from an index function; entries must come from one ring.
    pub(crate) fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let entries = (0..n * n).map(|i| f(i / n, i % n)).collect();
        Matrix { n, entries }
    }

    pub fn identity_like(n: usize, like: &T) -> Self {
        let (zero, one) = (like.zero_like(), like.one_like());
        Self::from_fn(n, |j, k| if j == k { one.clone() } else { zero.clone() })
    }

    /// The all-ones matrix, unit of the Hadamard product.
    pub fn ones_like(n: usize, like: &T) -> Self {
        let one = like.one_like();
        Self::from_fn(n, |_, _| one.clone())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, j: usize, k: usize) -> &T {
        &self.entries[j * self.n + k]
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<T> {
        self.entries
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.entries.chunks(self.n).map(<[T]>::to_vec).collect()
    }

    /// Any entry; used to reach the ring's constants.
    pub fn sample_entry(&self) -> &T {
        &self.entries[0]
    }

    pub fn map(&self, f: impl FnMut(&T) -> T) -> Self {
        Matrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    fn check_compatible(&self, rhs: &Self) -> Result<()> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: rhs.n,
            });
        }
        if !self.entries[0].same_ring(&rhs.entries[0]) {
            return Err(Error::DescriptorMismatch {
                left: self.entries[0].ring_name(),
                right: rhs.entries[0].ring_name(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_compatible(rhs)?;
        Ok(self.mul_unchecked(rhs))
    }

    pub(crate) fn mul_unchecked(&self, rhs: &Self) -> Self {
        let n = self.n;
        Self::from_fn(n, |j, k| {
            let mut acc = self.get(j, 0).mul(rhs.get(0, k));
            for i in 1..n {
                acc = acc.add(&self.get(j, i).mul(rhs.get(i, k)));
            }
            acc
        })
    }

    /// Entrywise product; the left factor's entry multiplies on the left.
    pub fn hadamard(&self, rhs: &Self) -> Result<Self> {
        self.check_compatible(rhs)?;
        Ok(Matrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.mul(b))
                .collect(),
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |j, k| self.get(k, j).clone())
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, e)| {
            if i / self.n == i % self.n {
                e.is_one()
            } else {
                e.is_zero()
            }
        })
    }

    pub fn is_all_ones(&self) -> bool {
        self.entries.iter().all(Ring::is_one)
    }

    /// True when every entry is a unit.
    pub fn is_hadamard_invertible(&self) -> bool {
        self.entries.iter().all(Ring::is_unit)
    }

    /// First row and first column all ones.
    pub fn is_hatted(&self) -> bool {
        (0..self.n).all(|i| self.get(0, i).is_one() && self.get(i, 0).is_one())
    }

    /// Gauss-Jordan elimination with row operations applied from the left.
    ///
    /// In each column the first row (from the current one down) whose entry
    /// is a unit becomes the pivot. The result is checked on both sides
    /// before it is returned.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let like = &self.entries[0];
        let (zero, one) = (like.zero_like(), like.one_like());
        let mut work: Vec<Vec<T>> = (0..n)
            .map(|j| {
                let mut row = self.entries[j * n..(j + 1) * n].to_vec();
                row.extend((0..n).map(|k| if j == k { one.clone() } else { zero.clone() }));
                row
            })
            .collect();

        for col in 0..n {
            let pivot = (col..n).find_map(|r| work[r][col].inv().ok().map(|inv| (r, inv)));
            let Some((r, pivot_inv)) = pivot else {
                return Err(Error::not_invertible(format!(
                    "matrix (no unit pivot in column {col})"
                )));
            };
            work.swap(col, r);
            work[col] = work[col].iter().map(|x| pivot_inv.mul(x)).collect();
            for row in 0..n {
                if row == col || work[row][col].is_zero() {
                    continue;
                }
                let factor = work[row][col].clone();
                let (pivot_row, target) = if row < col {
                    let (lo, hi) = work.split_at_mut(col);
                    (&hi[0], &mut lo[row])
                } else {
                    let (lo, hi) = work.split_at_mut(row);
                    (&lo[col], &mut hi[0])
                };
                for (x, p) in target.iter_mut().zip(pivot_row) {
                    *x = x.sub(&factor.mul(p));
                }
            }
        }

        let inverse = Matrix {
            n,
            entries: work
                .into_iter()
                .flat_map(|row| row.into_iter().skip(n))
                .collect(),
        };
        if self.mul_unchecked(&inverse).is_identity() && inverse.mul_unchecked(self).is_identity() {
            Ok(inverse)
        } else {
            Err(Error::not_invertible("matrix (two-sided check failed)"))
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse().is_ok()
    }

    /// Matrix of entrywise inverses; fails naming the first non-unit entry.
    pub fn hadamard_inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for (i, e) in self.entries.iter().enumerate() {
            entries.push(inv_named(e, &format!("entry ({}, {})", i / n, i % n))?);
        }
        Ok(Matrix { n, entries })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        assert_eq!(rows.len(), cols.len(), "submatrix must be square");
        Self::from_fn(rows.len(), |j, k| self.get(rows[j], cols[k]).clone())
    }

    /// Every `k×k` submatrix for `1 ≤ k ≤ n`, by size and then
    /// lexicographically by (row set, column set).
    pub fn square_submatrices(&self) -> Vec<Submatrix<T>> {
        let mut out = Vec::new();
        for k in 1..=self.n {
            let sets = combinations(self.n, k);
            for rows in &sets {
                for cols in &sets {
                    out.push(Submatrix {
                        rows: rows.clone(),
                        cols: cols.clone(),
                        matrix: self.submatrix(rows, cols),
                    });
                }
            }
        }
        out
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Inverse of a 2×2 matrix with unit entries by the closed formula
/// `[[(a-bd⁻¹c)⁻¹, (c-db⁻¹a)⁻¹], [(b-ac⁻¹d)⁻¹, (d-ca⁻¹b)⁻¹]]`.
///
/// Requires `a, b, c, d` and `db⁻¹ - ca⁻¹` to be units.
pub fn inverse_2x2_hadamard<T: Ring>(m: &Matrix<T>) -> Result<Matrix<T>> {
    if m.n() != 2 {
        return Err(Error::DimensionMismatch {
            left: 2,
            right: m.n(),
        });
    }
    let (a, b, c, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
    let pre = |x: &T, label: &str| {
        x.inv()
            .map_err(|_| Error::PreconditionViolated(format!("{label} is not invertible")))
    };
    let ai = pre(a, "a")?;
    let bi = pre(b, "b")?;
    let ci = pre(c, "c")?;
    let di = pre(d, "d")?;
    pre(&d.mul(&bi).sub(&c.mul(&ai)), "db^-1-ca^-1")?;

    let s = inv_named(&a.sub(&product(&[b, &di, c])), "a-bd^-1c")?;
    let t = inv_named(&c.sub(&product(&[d, &bi, a])), "c-db^-1a")?;
    let u = inv_named(&b.sub(&product(&[a, &ci, d])), "b-ac^-1d")?;
    let v = inv_named(&d.sub(&product(&[c, &ai, b])), "d-ca^-1b")?;
    Matrix::new(2, vec![s, t, u, v])
}

/// Inverse of the bordered matrix `[[1,1,1],[1,a,b],[1,c,d]]`.
///
/// `s, t, u, v` invert `[[a-1, b-1], [c-1, d-1]]` and are assembled as
///
/// ```text
/// 1+s+t+u+v   -s-u   -t-v
///   -s-t        s      t
///   -u-v        u      v
/// ```
pub fn inverse_hatted_3x3<T: Ring>(
    a: &T,
    b: &T,
    c: &T,
    d: &T,
) -> Result<(Matrix<T>, BorderedInverseParts<T>)> {
    let one = a.one_like();
    let pre = |x: &T, label: &str| {
        x.inv()
            .map_err(|_| Error::PreconditionViolated(format!("{label} is not invertible")))
    };
    let (a1, b1, c1, d1) = (a.sub(&one), b.sub(&one), c.sub(&one), d.sub(&one));
    let a1i = pre(&a1, "a-1")?;
    let b1i = pre(&b1, "b-1")?;
    let c1i = pre(&c1, "c-1")?;
    let d1i = pre(&d1, "d-1")?;
    pre(
        &d1.mul(&b1i).sub(&c1.mul(&a1i)),
        "(d-1)(b-1)^-1-(c-1)(a-1)^-1",
    )?;

    let s = inv_named(
        &a1.sub(&product(&[&b1, &d1i, &c1])),
        "(a-1)-(b-1)(d-1)^-1(c-1)",
    )?;
    let t = inv_named(
        &c1.sub(&product(&[&d1, &b1i, &a1])),
        "(c-1)-(d-1)(b-1)^-1(a-1)",
    )?;
    let u = inv_named(
        &b1.sub(&product(&[&a1, &c1i, &d1])),
        "(b-1)-(a-1)(c-1)^-1(d-1)",
    )?;
    let v = inv_named(
        &d1.sub(&product(&[&c1, &a1i, &b1])),
        "(d-1)-(c-1)(a-1)^-1(b-1)",
    )?;

    let corner = one.add(&s).add(&t).add(&u).add(&v);
    let entries = vec![
        corner,
        s.add(&u).neg(),
        t.add(&v).neg(),
        s.add(&t).neg(),
        s.clone(),
        t.clone(),
        u.add(&v).neg(),
        u.clone(),
        v.clone(),
    ];
    Ok((
        Matrix::new(3, entries)?,
        BorderedInverseParts { s, t, u, v },
    ))
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (j, row) in self.entries.chunks(self.n).enumerate() {
            if j > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (k, e) in row.iter().enumerate() {
                if k > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.chunks(self.n)).finish()
    }
}
