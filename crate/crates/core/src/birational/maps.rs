use super::witness::DiagPair;
use crate::error::{Error, Result, Stage};
use crate::matrix::Matrix;
use crate::ring::{inv_named, product, Ring};

/// `J₁(M) = M⁻¹`.
pub fn j1<T: Ring>(m: &Matrix<T>) -> Result<Matrix<T>> {
    m.inverse()
}

/// `J₂(M)ⱼₖ = (Mₖⱼ)⁻¹`, the transposed Hadamard inverse.
pub fn j2<T: Ring>(m: &Matrix<T>) -> Result<Matrix<T>> {
    let n = m.n();
    let mut entries = Vec::with_capacity(n * n);
    for j in 0..n {
        for k in 0..n {
            entries.push(inv_named(m.get(k, j), &format!("entry ({k}, {j})"))?);
        }
    }
    Matrix::new(n, entries)
}

/// `J = J₂ ∘ J₁` on its natural domain.
pub fn j<T: Ring>(m: &Matrix<T>) -> Result<Matrix<T>> {
    let inv = j1(m).map_err(|e| e.at_stage(Stage::J1))?;
    j2(&inv).map_err(|e| e.at_stage(Stage::J2))
}

/// `J⁻¹ = J₁ ∘ J₂` on its natural domain.
pub fn j_inverse<T: Ring>(m: &Matrix<T>) -> Result<Matrix<T>> {
    let h = j2(m).map_err(|e| e.at_stage(Stage::J2))?;
    j1(&h).map_err(|e| e.at_stage(Stage::J1))
}

/// `J` on 2×2 matrices in closed form:
/// `[[a-bd⁻¹c, b-ac⁻¹d], [c-db⁻¹a, d-ca⁻¹b]]`.
pub fn j_2x2_closed<T: Ring>(m: &Matrix<T>) -> Result<Matrix<T>> {
    if m.n() != 2 {
        return Err(Error::DimensionMismatch {
            left: 2,
            right: m.n(),
        });
    }
    let (a, b, c, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
    let ai = inv_named(a, "a")?;
    let bi = inv_named(b, "b")?;
    let ci = inv_named(c, "c")?;
    let di = inv_named(d, "d")?;
    Matrix::new(
        2,
        vec![
            a.sub(&product(&[b, &di, c])),
            b.sub(&product(&[a, &ci, d])),
            c.sub(&product(&[d, &bi, a])),
            d.sub(&product(&[c, &ai, b])),
        ],
    )
}

fn entry_inverses<T: Ring>(a: &Matrix<T>) -> Result<Matrix<T>> {
    a.hadamard_inverse()
}

/// `Λᴸ(A)ⱼₖ = a₁₁ aⱼ₁⁻¹ aⱼₖ a₁ₖ⁻¹`.
pub fn lambda_l<T: Ring>(a: &Matrix<T>) -> Result<Matrix<T>> {
    let inv = entry_inverses(a)?;
    let n = a.n();
    Ok(Matrix::from_fn(n, |j, k| {
        product(&[a.get(0, 0), inv.get(j, 0), a.get(j, k), inv.get(0, k)])
    }))
}

/// `Λᴿ(A)ⱼₖ = aⱼ₁⁻¹ aⱼₖ a₁ₖ⁻¹ a₁₁`.
pub fn lambda_r<T: Ring>(a: &Matrix<T>) -> Result<Matrix<T>> {
    let inv = entry_inverses(a)?;
    let n = a.n();
    Ok(Matrix::from_fn(n, |j, k| {
        product(&[inv.get(j, 0), a.get(j, k), inv.get(0, k), a.get(0, 0)])
    }))
}

/// `Λᴸ(A)` together with the diagonal pair carrying `A` onto it:
/// `D₂ = diag(a₁ₖ⁻¹)`, `D₁ = diag(aₖ₁a₁₁⁻¹)`, so `D₁` starts with 1.
pub fn normalize_with_witness<T: Ring>(a: &Matrix<T>) -> Result<(Matrix<T>, DiagPair<T>)> {
    let inv = entry_inverses(a)?;
    let n = a.n();
    let right: Vec<T> = (0..n).map(|k| inv.get(0, k).clone()).collect();
    let left: Vec<T> = (0..n).map(|k| a.get(k, 0).mul(inv.get(0, 0))).collect();
    let pair = DiagPair::new(left, right)?;
    let normal = lambda_l(a)?;
    if pair.apply(a)? != normal {
        return Err(Error::VerificationFailed(
            "normalising pair does not reproduce the normal form".into(),
        ));
    }
    Ok((normal, pair))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingElem;

    fn qi(rows: &[&[i64]]) -> Matrix<RingElem> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| RingElem::ratio(n, 1)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn j2_examples() {
        let ones = qi(&[&[1, 1], &[1, 1]]);
        assert_eq!(j2(&ones).unwrap(), ones);
        let m = qi(&[&[2, 1], &[1, 2]]);
        let expected = Matrix::from_rows(vec![
            vec![RingElem::ratio(1, 2), RingElem::ratio(1, 1)],
            vec![RingElem::ratio(1, 1), RingElem::ratio(1, 2)],
        ])
        .unwrap();
        assert_eq!(j2(&m).unwrap(), expected);
        let asym = qi(&[&[2, 3], &[5, 7]]);
        assert_eq!(j2(&j2(&asym).unwrap()).unwrap(), asym);
        match j2(&qi(&[&[1, 0], &[1, 1]])) {
            Err(Error::NotInvertible { what, .. }) => assert_eq!(what, "entry (0, 1)"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn j_two_by_two_worked_example() {
        let a = qi(&[&[2, 1], &[1, 1]]);
        let expected = Matrix::from_rows(vec![
            vec![RingElem::ratio(1, 1), RingElem::ratio(-1, 1)],
            vec![RingElem::ratio(-1, 1), RingElem::ratio(1, 2)],
        ])
        .unwrap();
        assert_eq!(j(&a).unwrap(), expected);
        assert_eq!(j_2x2_closed(&a).unwrap(), expected);
        assert_eq!(j_inverse(&j(&a).unwrap()).unwrap(), a);
    }

    #[test]
    fn j_stage_tags() {
        match j(&qi(&[&[1, 1], &[1, 1]])) {
            Err(Error::NotInvertible { stage, .. }) => assert_eq!(stage, Some(Stage::J1)),
            other => panic!("unexpected {other:?}"),
        }
        // invertible, but the inverse has a zero entry
        match j(&qi(&[&[1, 0], &[1, 1]])) {
            Err(Error::NotInvertible { stage, .. }) => assert_eq!(stage, Some(Stage::J2)),
            other => panic!("unexpected {other:?}"),
        }
        match j_inverse(&qi(&[&[1, 0], &[1, 1]])) {
            Err(Error::NotInvertible { stage, .. }) => assert_eq!(stage, Some(Stage::J2)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn lambda_worked_example() {
        let a = qi(&[&[2, 2, 2], &[2, 4, 6], &[2, 10, 14]]);
        let hat = qi(&[&[1, 1, 1], &[1, 2, 3], &[1, 5, 7]]);
        assert_eq!(lambda_l(&a).unwrap(), hat);
        assert_eq!(lambda_l(&hat).unwrap(), hat);
        assert_eq!(lambda_r(&hat).unwrap(), hat);

        let (normal, pair) = normalize_with_witness(&a).unwrap();
        assert_eq!(normal, hat);
        assert_eq!(pair.left, vec![RingElem::ratio(1, 1); 3]);
        assert_eq!(pair.right, vec![RingElem::ratio(1, 2); 3]);

        let (normal, pair) = normalize_with_witness(&hat).unwrap();
        assert_eq!(normal, hat);
        assert!(pair.left.iter().chain(&pair.right).all(Ring::is_one));
    }
}
