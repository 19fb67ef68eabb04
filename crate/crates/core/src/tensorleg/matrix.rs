//! Dense complex matrices in row-major storage.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// A dense complex matrix with row-major entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Builds a matrix from row-major entries. Panics when the length does not match.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        Self { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Self::from_fn(r, c, |i, j| C64::new(rows[i][j], 0.0))
    }

    pub fn diagonal(entries: &[C64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    /// Matrix unit `E_ij` of size `n`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = ONE;
        m
    }

    /// Permutation matrix sending basis vector `j` to `perm[j]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let mut m = Self::zeros(perm.len(), perm.len());
        for (j, &i) in perm.iter().enumerate() {
            m[(i, j)] = ONE;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<C64> {
        self.data
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn from_columns(rows: usize, columns: &[Vec<C64>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length does not match row count");
            for (i, &v) in col.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, s: C64, other: &Self) {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in add_scaled");
        if s == ZERO {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    /// Matrix product. Zero entries of the left factor are skipped, which keeps
    /// products of permutation-like operators cheap.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions do not match");
        let n = other.cols;
        let mut out = vec![ZERO; self.rows * n];
        for i in 0..self.rows {
            let out_row = &mut out[i * n..(i + 1) * n];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let b_row = &other.data[k * n..(k + 1) * n];
                for (o, b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Self { rows: self.rows, cols: n, data: out }
    }

    pub fn matvec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len(), "vector length does not match");
        (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// Product of a sequence of matrices, left to right.
    pub fn product(factors: &[&Self]) -> Self {
        let (first, rest) = factors.split_first().expect("empty product");
        rest.iter().fold((*first).clone(), |acc, m| acc.matmul(m))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Hilbert-Schmidt inner product `tr(self* other)`.
    pub fn hs_inner(&self, other: &Self) -> C64 {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in inner product");
        self.data.iter().zip(&other.data).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Kronecker product in row-major leg order.
    pub fn kron(&self, other: &Self) -> Self {
        let (r1, c1) = self.shape();
        let (r2, c2) = other.shape();
        let cols = c1 * c2;
        let mut out = vec![ZERO; r1 * r2 * cols];
        for i in 0..r1 {
            for j in 0..c1 {
                let a = self[(i, j)];
                if a == ZERO {
                    continue;
                }
                for k in 0..r2 {
                    let row = (i * r2 + k) * cols + j * c2;
                    for l in 0..c2 {
                        out[row + l] = a * other.data[k * c2 + l];
                    }
                }
            }
        }
        Self { rows: r1 * r2, cols, data: out }
    }

    /// `‖self* self − 1‖_F / ‖1‖_F` together with the same quantity for `self self*`.
    pub fn unitarity_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let id = Self::identity(self.rows);
        let a = relative_residual(&self.adjoint().matmul(self), &id);
        let b = relative_residual(&self.matmul(&self.adjoint()), &id);
        a.max(b)
    }

    /// Row-major vectorisation.
    pub fn vectorize(&self) -> Vec<C64> {
        self.data.clone()
    }

    pub fn reshape(&self, rows: usize, cols: usize) -> Self {
        assert_eq!(rows * cols, self.data.len(), "reshape changes entry count");
        Self { rows, cols, data: self.data.clone() }
    }
}

/// Relative Frobenius residual `‖a − b‖ / max(‖a‖, ‖b‖)`, zero when both vanish.
pub fn relative_residual(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    let diff: f64 = a.data.iter().zip(&b.data).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt();
    let scale = a.frobenius_norm().max(b.frobenius_norm());
    if scale == 0.0 {
        0.0
    } else {
        diff / scale
    }
}

/// `‖a − b‖ / max(‖a‖, ‖b‖, scale)`, for comparisons where both sides may
/// legitimately vanish, such as products of orthogonal basis elements.
pub fn scaled_residual(a: &ComplexMatrix, b: &ComplexMatrix, scale: f64) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    let diff: f64 = a.data.iter().zip(&b.data).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt();
    let s = a.frobenius_norm().max(b.frobenius_norm()).max(scale);
    if s == 0.0 {
        0.0
    } else {
        diff / s
    }
}

/// Relative residual between coefficient vectors, same convention as [`relative_residual`].
pub fn relative_residual_vec(a: &[C64], b: &[C64]) -> f64 {
    scaled_residual_vec(a, b, 0.0)
}

/// [`scaled_residual`] for coefficient vectors.
pub fn scaled_residual_vec(a: &[C64], b: &[C64], scale: f64) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let diff: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt();
    let na = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let nb = b.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let scale = na.max(nb).max(scale);
    if scale == 0.0 {
        0.0
    } else {
        diff / scale
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in addition");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        ComplexMatrix { rows: self.rows, cols: self.cols, data }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in subtraction");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        ComplexMatrix { rows: self.rows, cols: self.cols, data }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

// ---------------------------------------------------------------------------
// JSON form: {"rows": n, "cols": m, "data": [[re, im], ...]}
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    data: Vec<[f64; 2]>,
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MatrixRepr { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| [z.re, z.im]).collect() }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(deserializer)?;
        if repr.data.len() != repr.rows * repr.cols {
            return Err(D::Error::custom(format!(
                "matrix declares {}x{} but carries {} entries",
                repr.rows,
                repr.cols,
                repr.data.len()
            )));
        }
        if repr.data.iter().any(|[re, im]| !re.is_finite() || !im.is_finite()) {
            return Err(D::Error::custom("matrix entries must be finite"));
        }
        let data = repr.data.into_iter().map(|[re, im]| C64::new(re, im)).collect();
        Ok(ComplexMatrix { rows: repr.rows, cols: repr.cols, data })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn kron_of_diagonals_is_diagonal_of_products() {
        let a = ComplexMatrix::diagonal(&[c(1.0), c(2.0)]);
        let b = ComplexMatrix::diagonal(&[c(3.0), c(4.0)]);
        let k = a.kron(&b);
        assert_eq!(k, ComplexMatrix::diagonal(&[c(3.0), c(4.0), c(6.0), c(8.0)]));
    }

    #[test]
    fn matmul_matches_naive_triple_loop() {
        let a = ComplexMatrix::from_fn(3, 4, |i, j| C64::new(i as f64 - j as f64, (i * j) as f64 * 0.5));
        let b = ComplexMatrix::from_fn(4, 2, |i, j| C64::new((i + 2 * j) as f64, -(i as f64)));
        let got = a.matmul(&b);
        for i in 0..3 {
            for j in 0..2 {
                let want: C64 = (0..4).map(|k| a[(i, k)] * b[(k, j)]).sum();
                assert!((got[(i, j)] - want).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn json_round_trip_preserves_entries() {
        let m = ComplexMatrix::from_fn(2, 3, |i, j| C64::new(i as f64, j as f64 - 0.25));
        let text = serde_json::to_string(&m).unwrap();
        assert!(text.starts_with("{\"rows\":2,\"cols\":3,\"data\":[[0.0,-0.25]"));
        let back: ComplexMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn json_rejects_wrong_entry_count() {
        let text = r#"{"rows":2,"cols":2,"data":[[1,0],[0,0],[0,0]]}"#;
        assert!(serde_json::from_str::<ComplexMatrix>(text).is_err());
    }

    #[test]
    fn permutation_matrix_is_unitary() {
        let p = ComplexMatrix::permutation(&[2, 0, 1]);
        assert!(p.unitarity_residual() < 1e-15);
        assert_eq!(p[(2, 0)], ONE);
    }
}
