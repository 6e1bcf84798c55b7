//! Rational Gaussian elimination: ranks, null spaces, canonical subspace
//! bases and orthogonal projections.

use super::{make_primitive, orient, to_rat, Int, IntVec, Rat, RatVec};
use num_traits::{One, Zero};

/// Reduced row echelon form of `rows` (each of length `ncols`). Returns the
/// nonzero rows and their pivot columns.
pub fn rref(rows: &[RatVec], ncols: usize) -> (Vec<RatVec>, Vec<usize>) {
    let mut m: Vec<RatVec> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        if !inv.is_one() {
            for x in m[row].iter_mut() {
                *x *= &inv;
            }
        }
        let pivot_row = m[row].clone();
        for (i, r) in m.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (x, y) in r.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    (m, pivots)
}

fn int_rows(rows: &[IntVec]) -> Vec<RatVec> {
    rows.iter().map(|r| to_rat(r)).collect()
}

pub fn rank(rows: &[IntVec]) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    rref(&int_rows(rows), first.len()).1.len()
}

/// Primitive integer basis of `{x : row . x = 0 for every row}`; one vector
/// per free column of the reduced echelon form, so the result is canonical.
pub fn nullspace(rows: &[IntVec], ncols: usize) -> Vec<IntVec> {
    let (r, pivots) = rref(&int_rows(rows), ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v: RatVec = vec![Rat::zero(); ncols];
        v[free] = Rat::one();
        for (row, &pc) in r.iter().zip(&pivots) {
            v[pc] = -row[free].clone();
        }
        basis.push(orient(super::clear_denominators(&v)));
    }
    basis.into_iter().map(make_primitive).collect()
}

/// Canonical basis of the span of `vectors`: reduced echelon rows scaled to
/// primitive integer vectors. Depends only on the subspace.
pub fn canonical_subspace(vectors: &[IntVec], dim: usize) -> Vec<IntVec> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let (r, _) = rref(&int_rows(vectors), dim);
    r.iter()
        .map(|row| make_primitive(super::clear_denominators(row)))
        .collect()
}

pub fn orthogonal_complement(vectors: &[IntVec], dim: usize) -> Vec<IntVec> {
    if vectors.is_empty() {
        return (0..dim).map(|i| super::unit_vec(dim, i)).collect();
    }
    canonical_subspace(&nullspace(vectors, dim), dim)
}

/// Solves `sum_i c_i basis[i] = v` for linearly independent `basis`.
/// Returns `None` when `v` is not in the span.
pub fn solve_in_basis(basis: &[IntVec], v: &[Rat]) -> Option<RatVec> {
    let dim = v.len();
    let k = basis.len();
    // Augmented system, one row per coordinate: [b_0[j] .. b_{k-1}[j] | v[j]].
    let rows: Vec<RatVec> = (0..dim)
        .map(|j| {
            let mut row: RatVec = basis.iter().map(|b| Rat::from_integer(b[j].clone())).collect();
            row.push(v[j].clone());
            row
        })
        .collect();
    let (r, pivots) = rref(&rows, k + 1);
    if pivots.contains(&k) {
        return None;
    }
    let mut c = vec![Rat::zero(); k];
    for (row, &pc) in r.iter().zip(&pivots) {
        c[pc] = row[k].clone();
    }
    Some(c)
}

pub fn in_span(v: &[Int], basis: &[IntVec]) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let mut rows = basis.to_vec();
    let before = rank(&rows);
    rows.push(v.to_vec());
    rank(&rows) == before
}

/// Orthogonal projection of `v` onto the complement of `span(basis)`.
pub fn project_off(v: &[Int], basis: &[IntVec]) -> RatVec {
    let vr = to_rat(v);
    if basis.is_empty() {
        return vr;
    }
    let k = basis.len();
    // Gram system G c = B v.
    let mut rows: Vec<RatVec> = Vec::with_capacity(k);
    for i in 0..k {
        let mut row: RatVec = (0..k)
            .map(|j| Rat::from_integer(super::dot(&basis[i], &basis[j])))
            .collect();
        row.push(Rat::from_integer(super::dot(&basis[i], v)));
        rows.push(row);
    }
    let (r, pivots) = rref(&rows, k + 1);
    let mut c = vec![Rat::zero(); k];
    for (row, &pc) in r.iter().zip(&pivots) {
        if pc < k {
            c[pc] = row[k].clone();
        }
    }
    let mut out = vr;
    for (ci, b) in c.iter().zip(basis) {
        if ci.is_zero() {
            continue;
        }
        for (x, y) in out.iter_mut().zip(b) {
            *x -= ci * Rat::from_integer(y.clone());
        }
    }
    out
}
