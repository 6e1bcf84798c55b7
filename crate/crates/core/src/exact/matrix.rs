//! Dense integer matrices and the column-style Hermite normal form.

use super::{Int, IntVec};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Int::one();
        }
        m
    }

    /// Builds a matrix from its rows; every row must have length `cols`.
    pub fn from_rows(rows: &[IntVec], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend(r.iter().cloned());
        }
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<IntVec> = rows.iter().map(|r| super::ivec(r)).collect();
        Self::from_rows(&rows, cols)
    }

    /// Builds a matrix whose columns are `cols`, each of length `rows`.
    pub fn from_columns(columns: &[IntVec], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for i in 0..rows {
                m.data[i * m.cols + j] = c[i].clone();
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    fn get_mut(&mut self, i: usize, j: usize) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> IntVec {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn rows(&self) -> Vec<IntVec> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn column(&self, j: usize) -> IntVec {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.get_mut(j, i) = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Int]) -> IntVec {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| super::dot(&self.data[i * self.cols..(i + 1) * self.cols], v))
            .collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        *out.get_mut(i, j) += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn rank(&self) -> usize {
        super::rank(&self.rows())
    }

    /// Determinant of a square matrix by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m.get(i, k).is_zero()) else {
                    return Int::zero();
                };
                for j in 0..n {
                    m.data.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    *m.get_mut(i, j) = v;
                }
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1)
    }

    fn combine_columns(&mut self, a: usize, b: usize, coeffs: [&Int; 4]) {
        // (col_a, col_b) <- (p col_a + q col_b, r col_a + s col_b)
        let [p, q, r, s] = coeffs;
        for i in 0..self.rows {
            let x = self.get(i, a).clone();
            let y = self.get(i, b).clone();
            *self.get_mut(i, a) = p * &x + q * &y;
            *self.get_mut(i, b) = r * &x + s * &y;
        }
    }

    fn negate_column(&mut self, a: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, a).clone();
            *self.get_mut(i, a) = v;
        }
    }

    /// `col_a -= q * col_b`
    fn sub_column(&mut self, a: usize, b: usize, q: &Int) {
        for i in 0..self.rows {
            let v = self.get(i, b) * q;
            *self.get_mut(i, a) -= v;
        }
    }
}

/// Column Hermite normal form `H = M U` with `U` unimodular.
///
/// Pivots sit at `(pivot_rows[k], k)` with positive pivot entries and the
/// entries to their left reduced into `[0, pivot)`. Columns `rank..n` of `H`
/// are zero, so the matching columns of `U` form a basis of `ker(M)` over Z.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hnf {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub pivot_rows: Vec<usize>,
}

impl Hnf {
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }

    /// Integer basis of the kernel.
    pub fn kernel(&self) -> Vec<IntVec> {
        (self.rank()..self.u.ncols()).map(|j| self.u.column(j)).collect()
    }

    /// Basis of the lattice spanned by the columns of `M`.
    pub fn image_basis(&self) -> Vec<IntVec> {
        (0..self.rank()).map(|j| self.h.column(j)).collect()
    }
}

pub fn hermite_normal_form(m: &IntMatrix) -> Hnf {
    let n = m.ncols();
    let mut h = m.clone();
    let mut u = IntMatrix::identity(n);
    let mut pivot_rows = Vec::new();
    let mut col = 0;
    for i in 0..m.nrows() {
        if col == n {
            break;
        }
        for j in col + 1..n {
            if h.get(i, j).is_zero() {
                continue;
            }
            let a = h.get(i, col).clone();
            let b = h.get(i, j).clone();
            let eg = a.extended_gcd(&b);
            let (g, x, y) = if eg.gcd.is_negative() {
                (-eg.gcd, -eg.x, -eg.y)
            } else {
                (eg.gcd, eg.x, eg.y)
            };
            let r = -(&b / &g);
            let s = &a / &g;
            // new col = x*col + y*j, new j = r*col + s*j; det = x*s - y*r = 1
            h.combine_columns(col, j, [&x, &y, &r, &s]);
            u.combine_columns(col, j, [&x, &y, &r, &s]);
        }
        if h.get(i, col).is_zero() {
            continue;
        }
        if h.get(i, col).is_negative() {
            h.negate_column(col);
            u.negate_column(col);
        }
        let p = h.get(i, col).clone();
        for j in 0..col {
            let q = h.get(i, j).div_floor(&p);
            if !q.is_zero() {
                h.sub_column(j, col, &q);
                u.sub_column(j, col, &q);
            }
        }
        pivot_rows.push(i);
        col += 1;
    }
    Hnf { h, u, pivot_rows }
}

/// Some `nu` in Z^n with `pi nu = chi`, or `None` if no integral solution
/// exists.
pub fn integral_preimage(pi: &IntMatrix, chi: &[Int]) -> Option<IntVec> {
    assert_eq!(chi.len(), pi.nrows(), "target length mismatch");
    let hnf = hermite_normal_form(pi);
    let rank = hnf.rank();
    let mut y: IntVec = vec![Int::zero(); pi.ncols()];
    let mut k = 0;
    for i in 0..pi.nrows() {
        let known: Int = (0..k.min(rank)).map(|j| hnf.h.get(i, j) * &y[j]).sum();
        if k < rank && hnf.pivot_rows[k] == i {
            let rest = &chi[i] - known;
            let (q, r) = rest.div_rem(hnf.h.get(i, k));
            if !r.is_zero() {
                return None;
            }
            y[k] = q;
            k += 1;
        } else if known != chi[i] {
            return None;
        }
    }
    Some(hnf.u.mul_vec(&y))
}

/// Basis (as vectors) of the lattice generated by `generators` in Z^dim.
pub fn lattice_basis(generators: &[IntVec], dim: usize) -> Vec<IntVec> {
    if generators.is_empty() {
        return Vec::new();
    }
    let m = IntMatrix::from_columns(generators, dim);
    hermite_normal_form(&m).image_basis()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ivec;
    use proptest::prelude::*;

    fn check_hnf(m: &IntMatrix) -> Hnf {
        let hnf = hermite_normal_form(m);
        assert_eq!(m.mul(&hnf.u), hnf.h);
        assert_eq!(hnf.u.determinant().abs(), Int::one());
        hnf
    }

    #[test]
    fn hnf_of_weight_row() {
        let m = IntMatrix::from_i64(&[&[1, 1, 2]]);
        let hnf = check_hnf(&m);
        assert_eq!(hnf.h, IntMatrix::from_i64(&[&[1, 0, 0]]));
        let kernel = hnf.kernel();
        for expected in [ivec(&[-1, 1, 0]), ivec(&[-2, 0, 1])] {
            let c = crate::exact::solve_in_basis(&kernel, &crate::exact::to_rat(&expected))
                .expect("in kernel span");
            assert!(crate::exact::is_integral(&c));
        }
        assert_eq!(kernel.len(), 2);
    }

    #[test]
    fn hnf_of_identity() {
        let m = IntMatrix::identity(3);
        let hnf = check_hnf(&m);
        assert_eq!(hnf.h, IntMatrix::identity(3));
        assert_eq!(hnf.u, IntMatrix::identity(3));
    }

    #[test]
    fn hnf_of_mixed_signs() {
        let m = IntMatrix::from_i64(&[&[2, -3]]);
        let hnf = check_hnf(&m);
        assert_eq!(hnf.h, IntMatrix::from_i64(&[&[1, 0]]));
        let k = hnf.kernel();
        assert_eq!(k.len(), 1);
        let k = crate::exact::orient(k[0].clone());
        assert_eq!(k, ivec(&[3, 2]));
    }

    #[test]
    fn hnf_of_zero_matrix() {
        let m = IntMatrix::zeros(2, 3);
        let hnf = check_hnf(&m);
        assert!(hnf.h.is_zero());
        assert_eq!(hnf.u, IntMatrix::identity(3));
    }

    #[test]
    fn preimage_examples() {
        let pi = IntMatrix::from_i64(&[&[1, 1, 2]]);
        let nu = integral_preimage(&pi, &ivec(&[3])).unwrap();
        assert_eq!(pi.mul_vec(&nu), ivec(&[3]));
        assert_eq!(integral_preimage(&pi, &ivec(&[0])).unwrap(), ivec(&[0, 0, 0]));
        let pi = IntMatrix::from_i64(&[&[2, 0]]);
        assert_eq!(integral_preimage(&pi, &ivec(&[1])), None);
    }

    fn matrix_strategy() -> impl Strategy<Value = IntMatrix> {
        (1usize..4, 1usize..7).prop_flat_map(|(r, c)| {
            prop::collection::vec(-5i64..=5, r * c).prop_map(move |vals| {
                let rows: Vec<IntVec> = vals.chunks(c).map(ivec).collect();
                IntMatrix::from_rows(&rows, c)
            })
        })
    }

    proptest! {
        #[test]
        fn hnf_is_unimodular_factorization(m in matrix_strategy()) {
            let hnf = check_hnf(&m);
            prop_assert_eq!(hnf.rank(), m.rank());
            for k in hnf.kernel() {
                prop_assert!(crate::exact::is_zero(&m.mul_vec(&k)));
            }
        }

        #[test]
        fn preimage_is_exact_or_certified(
            m in matrix_strategy(),
            target in prop::collection::vec(-7i64..=7, 3),
        ) {
            let chi: IntVec = ivec(&target[..m.nrows()]);
            match integral_preimage(&m, &chi) {
                Some(nu) => prop_assert_eq!(m.mul_vec(&nu), chi),
                None => {
                    // Certify: the HNF triangular system has no integral solution.
                    let hnf = hermite_normal_form(&m);
                    let y = crate::exact::solve_in_basis(
                        &hnf.image_basis(),
                        &crate::exact::to_rat(&chi),
                    );
                    if let Some(y) = y {
                        prop_assert!(!crate::exact::is_integral(&y));
                    }
                }
            }
        }
    }
}
