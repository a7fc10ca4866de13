//! Small dense complex matrices and a Hermitian eigenvalue routine.

use std::ops::{Index, IndexMut};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<T: Real> {
    n: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![Complex::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for j in 0..n {
            m[(j, j)] = Complex::one();
        }
        m
    }

    /// `(1/√2) [[1, 1], [1, -1]]`.
    pub fn hadamard() -> Self {
        let h = T::one() / T::lit(2.0).sqrt();
        Self::from_rows(vec![
            vec![Complex::new(h, T::zero()), Complex::new(h, T::zero())],
            vec![Complex::new(h, T::zero()), Complex::new(-h, T::zero())],
        ])
        .expect("2×2")
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Complex<T>) -> Self {
        Self { n, data: (0..n * n).map(|i| f(i / n, i % n)).collect() }
    }

    pub fn from_rows(rows: Vec<Vec<Complex<T>>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, actual: row.len() });
            }
            data.extend(row);
        }
        Ok(Self { n, data })
    }

    /// Builds from separate real and imaginary parts.
    pub fn from_parts(re: &[Vec<T>], im: &[Vec<T>]) -> Result<Self> {
        if re.len() != im.len() {
            return Err(Error::DimensionMismatch { expected: re.len(), actual: im.len() });
        }
        let rows = re
            .iter()
            .zip(im)
            .map(|(r, i)| {
                if r.len() != i.len() {
                    return Err(Error::DimensionMismatch { expected: r.len(), actual: i.len() });
                }
                Ok(r.iter().zip(i).map(|(&a, &b)| Complex::new(a, b)).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<Complex<T>>> {
        self.data.chunks(self.n).map(<[Complex<T>]>::to_vec).collect()
    }

    pub fn re_parts(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.n).map(|r| r.iter().map(|c| c.re).collect()).collect()
    }

    pub fn im_parts(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.n).map(|r| r.iter().map(|c| c.im).collect()).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |j, k| self[(k, j)].conj())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "matmul dimension mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for j in 0..n {
            for l in 0..n {
                let a = self[(j, l)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..n {
                    out[(j, k)] += a * other[(l, k)];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_fn(self.n, |j, k| self[(j, k)] + other[(j, k)])
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.n).fold(Complex::zero(), |acc, j| acc + self[(j, j)])
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.data.iter().zip(&other.data).fold(T::zero(), |m, (a, b)| m.max((*a - *b).norm()))
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }

    pub fn is_unitary(&self, tol: T) -> bool {
        self.adjoint().matmul(self).max_abs_diff(&Self::identity(self.n)) <= tol
    }

    /// Eigenvalues of a Hermitian matrix in ascending order.
    ///
    /// `H = A + iB` is embedded as the real symmetric `[[A, -B], [B, A]]`,
    /// whose spectrum is that of `H` with every eigenvalue doubled.
    pub fn hermitian_eigenvalues(&self) -> Vec<T> {
        let n = self.n;
        let m = 2 * n;
        let mut s = vec![T::zero(); m * m];
        for j in 0..n {
            for k in 0..n {
                let c = self[(j, k)];
                s[j * m + k] = c.re;
                s[(j + n) * m + k + n] = c.re;
                s[j * m + k + n] = -c.im;
                s[(j + n) * m + k] = c.im;
            }
        }
        let mut eig = jacobi_eigenvalues(m, s);
        eig.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
        eig.into_iter().step_by(2).collect()
    }
}

impl<T: Real> Index<(usize, usize)> for CMatrix<T> {
    type Output = Complex<T>;

    fn index(&self, (j, k): (usize, usize)) -> &Complex<T> {
        &self.data[j * self.n + k]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for CMatrix<T> {
    fn index_mut(&mut self, (j, k): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[j * self.n + k]
    }
}

/// Cyclic Jacobi rotations on a real symmetric row-major matrix.
fn jacobi_eigenvalues<T: Real>(m: usize, mut a: Vec<T>) -> Vec<T> {
    let two = T::lit(2.0);
    for _sweep in 0..100 {
        let off: T = (0..m)
            .flat_map(|p| (0..m).filter(move |&q| q != p).map(move |q| (p, q)))
            .fold(T::zero(), |acc, (p, q)| acc + a[p * m + q] * a[p * m + q]);
        if off <= T::epsilon() * T::epsilon() {
            break;
        }
        for p in 0..m {
            for q in p + 1..m {
                let apq = a[p * m + q];
                if apq.abs() <= T::min_positive_value() {
                    continue;
                }
                let theta = (a[q * m + q] - a[p * m + p]) / (two * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..m {
                    let akp = a[k * m + p];
                    let akq = a[k * m + q];
                    a[k * m + p] = c * akp - s * akq;
                    a[k * m + q] = s * akp + c * akq;
                }
                for k in 0..m {
                    let apk = a[p * m + k];
                    let aqk = a[q * m + k];
                    a[p * m + k] = c * apk - s * aqk;
                    a[q * m + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..m).map(|j| a[j * m + j]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn hadamard_is_unitary_and_involutive() {
        let h = CMatrix::<f64>::hadamard();
        assert!(h.is_unitary(1e-12));
        assert!(h.matmul(&h).max_abs_diff(&CMatrix::identity(2)) < 1e-12);
    }

    #[test]
    fn eigenvalues_of_known_matrices() {
        // Pauli Y has eigenvalues ±1.
        let y = CMatrix::from_rows(vec![vec![c(0.0, 0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), c(0.0, 0.0)]]).unwrap();
        let eig = y.hermitian_eigenvalues();
        assert!((eig[0] + 1.0).abs() < 1e-12 && (eig[1] - 1.0).abs() < 1e-12);

        let d = CMatrix::from_fn(3, |j, k| if j == k { c(j as f64, 0.0) } else { c(0.0, 0.0) });
        let eig = d.hermitian_eigenvalues();
        assert!(eig.iter().zip([0.0, 1.0, 2.0]).all(|(a, b)| (a - b).abs() < 1e-12));

        let ones = CMatrix::from_fn(3, |_, _| c(1.0 / 3.0, 0.0));
        let eig = ones.hermitian_eigenvalues();
        assert!(eig[0].abs() < 1e-12 && eig[1].abs() < 1e-12 && (eig[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigenvalues_in_single_precision() {
        let h = CMatrix::<f32>::hadamard();
        let eig = h.hermitian_eigenvalues();
        assert!((eig[0] + 1.0).abs() < 1e-5 && (eig[1] - 1.0).abs() < 1e-5);
    }

    #[test]
    fn from_parts_checks_shapes() {
        assert!(CMatrix::<f64>::from_parts(&[vec![1.0]], &[vec![0.0, 1.0]]).is_err());
        assert!(CMatrix::<f64>::from_rows(vec![vec![c(1.0, 0.0), c(0.0, 0.0)]]).is_err());
    }
}
