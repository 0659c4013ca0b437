//! Dense row-major matrices over a [`Scalar`] and the few routines the
//! pipeline needs: products, Gauss-Jordan inversion and a power-iteration
//! operator norm.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::par;
use crate::scalar::{Real, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl<T: Scalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let cols = other.cols;
        let rows: Vec<Vec<T>> = par::map_range(self.rows, |r| {
            let mut out = vec![T::zero(); cols];
            for (k, a) in self.row(r).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (o, b) in out.iter_mut().zip(other.row(k)) {
                    if !b.is_zero() {
                        o.mul_add_assign(a, b);
                    }
                }
            }
            out
        });
        Mat { rows: self.rows, cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = T::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc.mul_add_assign(a, b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &T) -> Self {
        let data = self.data.iter().map(|a| a.clone() * s).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn add_scaled_assign(&mut self, other: &Self, s: &T) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                a.mul_add_assign(b, s);
            }
        }
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn trace(&self) -> T {
        let mut t = T::zero();
        for i in 0..self.rows.min(self.cols) {
            t += &self[(i, i)];
        }
        t
    }

    /// Largest absolute entry, in `f64`.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max)
    }

    /// Largest absolute entrywise difference, in `f64`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a.clone() - b).to_f64().abs())
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Inverse by Gauss-Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Mismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = if T::EXACT {
                (col..n).find(|&r| !a[(r, col)].is_zero())
            } else {
                (col..n)
                    .filter(|&r| !a[(r, col)].is_zero())
                    .max_by(|&x, &y| {
                        a[(x, col)]
                            .abs()
                            .partial_cmp(&a[(y, col)].abs())
                            .unwrap_or(std::cmp::Ordering::Equal)
                    })
            }
            .ok_or(Error::Singular)?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a[(col, col)].recip();
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                a.sub_row_multiple(r, col, &f);
                inv.sub_row_multiple(r, col, &f);
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: &T) {
        for c in 0..self.cols {
            self[(r, c)] *= s;
        }
    }

    /// `row[target] -= f * row[source]`.
    fn sub_row_multiple(&mut self, target: usize, source: usize, f: &T) {
        for c in 0..self.cols {
            let v = self[(source, c)].clone();
            if !v.is_zero() {
                let delta = v * f;
                self[(target, c)] -= &delta;
            }
        }
    }

    pub fn to_real(&self) -> Mat<Real> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(Scalar::to_real).collect() }
    }

    /// Largest singular value, by power iteration on `AᵀA` with at most
    /// `10·dim` steps and relative tolerance `1e-12`.
    pub fn op_norm(&self) -> Real {
        op_norm_real(&self.to_real())
    }
}

/// Euclidean norm of a vector.
pub fn vec_norm<T: Scalar>(v: &[T]) -> Result<T> {
    let mut s = T::zero();
    for x in v {
        s.mul_add_assign(x, x);
    }
    s.sqrt()
}

fn op_norm_real(a: &Mat<Real>) -> Real {
    let n = a.cols();
    if n == 0 || a.rows() == 0 || a.is_zero() {
        return Real::zero();
    }
    let at = a.transpose();
    // Deterministic start vector with no special alignment.
    let mut v: Vec<Real> = (0..n).map(|i| Real::new(1.0 + ((i * 7919) % 97) as f64 / 97.0)).collect();
    normalize(&mut v);
    let mut estimate = Real::zero();
    let max_iter = (10 * n).max(50);
    for _ in 0..max_iter {
        let w = at.mul_vec(&a.mul_vec(&v));
        let lambda = vec_norm(&w).expect("norm of real vector");
        if lambda.is_zero() {
            return Real::zero();
        }
        v = w.into_iter().map(|x| x / &lambda).collect();
        let diff = (lambda.clone() - &estimate).abs().to_f64();
        estimate = lambda;
        if diff <= 1e-12 * estimate.to_f64() {
            break;
        }
    }
    estimate.sqrt().expect("nonnegative")
}

fn normalize(v: &mut [Real]) {
    let n = vec_norm(v).expect("norm of real vector");
    for x in v.iter_mut() {
        *x = x.clone() / &n;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;

    #[test]
    fn exact_inverse_roundtrip() {
        let m = Mat::from_rows(vec![
            vec![Exact::from_i64(2), Exact::from_i64(3)],
            vec![Exact::from_i64(3), Exact::from_i64(9)],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(2));
    }

    #[test]
    fn singular_detected() {
        let m = Mat::from_rows(vec![
            vec![Exact::from_i64(1), Exact::from_i64(2)],
            vec![Exact::from_i64(2), Exact::from_i64(4)],
        ]);
        assert!(matches!(m.inverse(), Err(Error::Singular)));
    }

    #[test]
    fn op_norm_of_diagonal() {
        let m = Mat::from_rows(vec![
            vec![Real::new(3.0), Real::new(0.0)],
            vec![Real::new(0.0), Real::new(-5.0)],
        ]);
        assert!((m.op_norm().to_f64() - 5.0).abs() < 1e-10);
    }

    #[test]
    fn op_norm_rank_one() {
        // u vᵀ has norm |u||v|.
        let m = Mat::from_fn(3, 2, |r, c| Real::new(((r + 1) * (c + 2)) as f64));
        let expected = (14f64).sqrt() * (13f64).sqrt();
        assert!((m.op_norm().to_f64() - expected).abs() < 1e-9);
    }
}
