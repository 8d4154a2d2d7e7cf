//! Dense complex matrices and LU factorization with partial pivoting.
//!
//! Elimination skips rows whose multiplier is exactly zero and stops each
//! row update at the pivot row's last nonzero, so banded finite-difference
//! systems factor in near-linear time while collocation systems take the
//! usual `O(N³)`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Pivots below this magnitude mark the matrix numerically singular.
pub const PIVOT_FLOOR: f64 = 1e-300;

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Complex64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

pub fn norm_inf(x: &[Complex64]) -> f64 {
    x.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// Packed LU factors `PA = LU` with unit lower triangle.
#[derive(Debug, Clone)]
pub struct LuFactors {
    lu: CMatrix,
    perm: Vec<usize>,
    /// Smallest and largest pivot magnitude, for conditioning diagnostics.
    pub pivot_range: (f64, f64),
}

pub fn lu_factor(matrix: &CMatrix) -> Result<LuFactors> {
    let n = matrix.rows();
    if n != matrix.cols() {
        return Err(Error::Singular(format!("matrix is {}x{}, not square", n, matrix.cols())));
    }
    let mut lu = matrix.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut pivot_range = (f64::INFINITY, 0.0_f64);
    let zero = Complex64::new(0.0, 0.0);
    // One past the last nonzero column of each row; only grows under updates.
    let mut extent: Vec<usize> =
        (0..n).map(|i| lu.row(i).iter().rposition(|v| *v != zero).map_or(0, |j| j + 1)).collect();
    for k in 0..n {
        let (p, pmag) = (k..n)
            .map(|i| (i, lu[(i, k)].norm()))
            .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if !(pmag >= PIVOT_FLOOR) {
            return Err(Error::Singular(format!(
                "pivot {pmag:e} in column {k} is below {PIVOT_FLOOR:e}; pivots so far span [{:e}, {:e}]",
                pivot_range.0, pivot_range.1
            )));
        }
        pivot_range = (pivot_range.0.min(pmag), pivot_range.1.max(pmag));
        if p != k {
            for j in 0..n {
                lu.data.swap(k * n + j, p * n + j);
            }
            perm.swap(k, p);
            extent.swap(k, p);
        }
        let pivot = lu[(k, k)];
        let end = extent[k];
        let (upper, lower) = lu.data.split_at_mut((k + 1) * n);
        let pivot_row = &upper[k * n..];
        for (row, row_end) in lower.chunks_exact_mut(n).zip(&mut extent[k + 1..]) {
            if row[k] == zero {
                continue;
            }
            let factor = row[k] / pivot;
            row[k] = factor;
            for (a, b) in row[k + 1..end].iter_mut().zip(&pivot_row[k + 1..end]) {
                *a -= factor * b;
            }
            *row_end = (*row_end).max(end);
        }
    }
    Ok(LuFactors { lu, perm, pivot_range })
}

impl LuFactors {
    pub fn solve(&self, rhs: &[Complex64]) -> Vec<Complex64> {
        let n = self.lu.rows();
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| rhs[p]).collect();
        for i in 0..n {
            let row = self.lu.row(i);
            let s: Complex64 = row[..i].iter().zip(&x[..i]).map(|(a, b)| a * b).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let row = self.lu.row(i);
            let s: Complex64 = row[i + 1..].iter().zip(&x[i + 1..]).map(|(a, b)| a * b).sum();
            x[i] = (x[i] - s) / row[i];
        }
        x
    }
}

/// Solves `Ax = b` and returns `x` with the scaled residual
/// `‖Ax - b‖∞ / (‖A‖∞ ‖x‖∞)`.
pub fn solve_dense(matrix: &CMatrix, rhs: &[Complex64]) -> Result<(Vec<Complex64>, f64)> {
    let factors = lu_factor(matrix)?;
    let x = factors.solve(rhs);
    let ax = matrix.mul_vec(&x);
    let res = ax.iter().zip(rhs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    let scale = matrix.norm_inf() * norm_inf(&x);
    let rel = if scale > 0.0 { res / scale } else { res };
    Ok((x, rel))
}
