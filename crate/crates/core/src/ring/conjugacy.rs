//! Simultaneous conjugacy `g⁻¹ p g = q` over rings that are matrix
//! algebras over a field.
//!
//! `p g = g q` is linear in `g` over the base field, so the candidates form
//! the kernel of a linear map. A unit is then searched for inside that
//! kernel: first `1`, then each kernel basis vector, then a bounded grid of
//! combinations. The determinant restricted to the kernel is a polynomial of
//! degree at most the matrix size, so a grid with more points per axis than
//! that degree hits a unit whenever one exists (as long as the base field
//! has that many distinct small integers).

use std::sync::Arc;

use super::{Ring, RingDescriptor, RingElem};

const GRID_LIMIT: usize = 20_000;

pub(super) fn solve(ctx: &RingElem, pairs: &[(RingElem, RingElem)]) -> Option<RingElem> {
    let one = ctx.one_like();
    if pairs.iter().all(|(p, q)| p == q) {
        return Some(one);
    }
    if ctx.descriptor().is_commutative() {
        return None;
    }
    let ring = ctx.descriptor_arc().clone();
    let dim = ring.base_dimension();
    let basis: Vec<RingElem> = (0..dim).map(|i| unit_vector(&ring, dim, i)).collect();

    // Columns of the linear map g ↦ (p g − g q) over all pairs.
    let mut rows: Vec<Vec<RingElem>> = Vec::new();
    for (p, q) in pairs {
        let images: Vec<Vec<RingElem>> = basis
            .iter()
            .map(|e| coords(&p.mul(e).sub(&e.mul(q))))
            .collect();
        for r in 0..dim {
            rows.push(images.iter().map(|col| col[r].clone()).collect());
        }
    }
    let kernel = kernel_basis(rows, dim);
    if kernel.is_empty() {
        return None;
    }
    let candidates: Vec<RingElem> = kernel.iter().map(|v| from_coords(&ring, v)).collect();

    let accept = |g: &RingElem| -> bool {
        match g.inv() {
            Ok(gi) => pairs.iter().all(|(p, q)| gi.mul(p).mul(g) == *q),
            Err(_) => false,
        }
    };
    if accept(&one) {
        return Some(one);
    }
    if let Some(g) = candidates.iter().find(|g| accept(g)) {
        return Some(g.clone());
    }

    let axis = ring.matrix_size() + 1;
    let r = candidates.len();
    let total = (axis as u128).checked_pow(r as u32).unwrap_or(u128::MAX);
    let budget = total.min(GRID_LIMIT as u128) as usize;
    let zero = ctx.zero_like();
    let mut digits = vec![0usize; r];
    for _ in 0..budget {
        // advance the mixed-radix counter first so the all-zero point is skipped
        let mut i = 0;
        loop {
            if i == r {
                return None;
            }
            digits[i] += 1;
            if digits[i] < axis {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        let g = digits
            .iter()
            .zip(&candidates)
            .filter(|(d, _)| **d > 0)
            .fold(zero.clone(), |acc, (d, v)| {
                acc.add(&v.mul(&ctx.int_like(*d as i64)))
            });
        if accept(&g) {
            return Some(g);
        }
    }
    None
}

/// Coordinates over the base field, row-major and depth-first.
fn coords(x: &RingElem) -> Vec<RingElem> {
    match x.block_entries() {
        Some(entries) => entries.iter().flat_map(coords).collect(),
        None => vec![x.clone()],
    }
}

fn from_coords(ring: &Arc<RingDescriptor>, c: &[RingElem]) -> RingElem {
    match &**ring {
        RingDescriptor::BlockMatrix { block_size, inner } => {
            let step = inner.base_dimension();
            let entries = (0..block_size * block_size)
                .map(|i| from_coords(inner, &c[i * step..(i + 1) * step]))
                .collect();
            RingElem::block(ring, entries).expect("coordinates of the right shape")
        }
        _ => c[0].clone(),
    }
}

fn unit_vector(ring: &Arc<RingDescriptor>, dim: usize, i: usize) -> RingElem {
    let base = Arc::new(ring.base_field().clone());
    let c: Vec<RingElem> = (0..dim)
        .map(|j| RingElem::integer(&base, i64::from(i == j)))
        .collect();
    from_coords(ring, &c)
}

/// Null space of a matrix over a field, by reduced row echelon form.
fn kernel_basis(mut rows: Vec<Vec<RingElem>>, cols: usize) -> Vec<Vec<RingElem>> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][c].inv().expect("nonzero field element");
        rows[rank] = rows[rank].iter().map(|x| inv.mul(x)).collect();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = rows[r][c].clone();
                let pivot_row = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot_row) {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        pivots.push(c);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    let Some(template) = rows.first().and_then(|r| r.first()).cloned() else {
        return Vec::new();
    };
    let zero = template.zero_like();
    let one = template.one_like();
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![zero.clone(); cols];
            v[free] = one.clone();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = rows[row][free].neg();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2(p: u64) -> Arc<RingDescriptor> {
        Arc::new(RingDescriptor::block_matrix(2, RingDescriptor::mod_p(p).unwrap()).unwrap())
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
    fn recovers_a_conjugating_unit() {
        let r = m2(101);
        let x = blk(&r, [3, 7, 2, 9]);
        let xi = x.inv().unwrap();
        let ps = [blk(&r, [1, 2, 3, 4]), blk(&r, [5, 0, 1, 1])];
        let pairs: Vec<_> = ps.iter().map(|p| (p.clone(), xi.mul(p).mul(&x))).collect();
        let g = solve(&x, &pairs).expect("conjugator exists");
        for (p, q) in &pairs {
            assert_eq!(g.inv().unwrap().mul(p).mul(&g), *q);
        }
    }

    #[test]
    fn identity_when_already_equal() {
        let r = m2(7);
        let p = blk(&r, [1, 2, 3, 4]);
        assert!(solve(&p, &[(p.clone(), p.clone())]).unwrap().is_one());
    }

    #[test]
    fn no_conjugator_between_different_traces() {
        let r = m2(101);
        let p = blk(&r, [1, 0, 0, 2]);
        let q = blk(&r, [1, 0, 0, 3]);
        assert!(solve(&p, &[(p.clone(), q)]).is_none());
    }

    #[test]
    fn kernel_of_small_system() {
        let f = Arc::new(RingDescriptor::mod_p(7).unwrap());
        let e = |n| RingElem::integer(&f, n);
        // x + 2y + 3z = 0
        let k = kernel_basis(vec![vec![e(1), e(2), e(3)]], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s = e(1).mul(&v[0]).add(&e(2).mul(&v[1])).add(&e(3).mul(&v[2]));
            assert!(s.is_zero());
        }
    }
}
