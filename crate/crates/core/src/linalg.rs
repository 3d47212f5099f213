//! Exact Gaussian elimination over field scalars: inversion, multi-column
//! solves, and kernel bases. Shared by unit testing in algebras and the
//! Vandermonde extraction.

use crate::scalars::Scalar;

/// Row-major dense matrix of scalars.
#[derive(Debug, Clone)]
pub(crate) struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Scalar>,
}

impl Mat {
    pub fn new(rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(rows * cols, data.len());
        Mat { rows, cols, data }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Reduces `m` to reduced row echelon form in place; returns the pivot
/// columns. Scalars must form a field.
pub(crate) fn rref(m: &mut Mat) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&i| !m.at(i, col).is_zero()) else {
            continue;
        };
        m.swap_rows(row, p);
        let inv = m.at(row, col).invert().expect("nonzero field element");
        for j in col..m.cols {
            let v = m.at(row, j).mul(&inv).expect("same ring");
            m.set(row, j, v);
        }
        for i in 0..m.rows {
            if i != row && !m.at(i, col).is_zero() {
                let factor = m.at(i, col).clone();
                for j in col..m.cols {
                    let v = m
                        .at(i, j)
                        .sub(&factor.mul(m.at(row, j)).expect("same ring"))
                        .expect("same ring");
                    m.set(i, j, v);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Inverse of a square matrix, or None if singular.
pub(crate) fn invert(n: usize, a: &[Scalar], one: &Scalar, zero: &Scalar) -> Option<Vec<Scalar>> {
    let mut aug = Mat::new(
        n,
        2 * n,
        (0..n)
            .flat_map(|i| {
                let left = a[i * n..(i + 1) * n].to_vec();
                let right: Vec<Scalar> = (0..n)
                    .map(|j| if i == j { one.clone() } else { zero.clone() })
                    .collect();
                left.into_iter().chain(right)
            })
            .collect(),
    );
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            out.push(aug.at(i, n + j).clone());
        }
    }
    Some(out)
}

/// Solves A·X = B for X where A is n×n and B is n×m; None if A is singular.
pub(crate) fn solve(
    n: usize,
    m: usize,
    a: &[Scalar],
    b: &[Scalar],
) -> Option<Vec<Scalar>> {
    let mut aug = Mat::new(
        n,
        n + m,
        (0..n)
            .flat_map(|i| {
                a[i * n..(i + 1) * n]
                    .iter()
                    .cloned()
                    .chain(b[i * m..(i + 1) * m].iter().cloned())
            })
            .collect(),
    );
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let mut out = Vec::with_capacity(n * m);
    for i in 0..n {
        for j in 0..m {
            out.push(aug.at(i, n + j).clone());
        }
    }
    Some(out)
}

/// Basis of the right kernel {x : A·x = 0} of an r×c matrix.
pub(crate) fn kernel_basis(
    rows: usize,
    cols: usize,
    a: &[Scalar],
    one: &Scalar,
    zero: &Scalar,
) -> Vec<Vec<Scalar>> {
    let mut m = Mat::new(rows, cols, a.to_vec());
    let pivots = rref(&mut m);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_set.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![zero.clone(); cols];
        v[f] = one.clone();
        for (row, &p) in pivots.iter().enumerate() {
            // x_p = -sum over free columns of entry * x_f
            v[p] = m.at(row, f).neg();
        }
        basis.push(v);
    }
    basis
}
