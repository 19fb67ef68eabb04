//! Linear spans of operators with orthonormal bases, and coefficient tensors
//! over tensor products of such spans.
//!
//! Bases are orthonormal for the Hilbert-Schmidt inner product `tr(x* y)`, so
//! coefficients are plain inner products and tensor products of bases stay
//! orthonormal.

use crate::tensorleg::{column_space, relative_residual, slice_leg, ComplexMatrix, Functional, LegSpace, C64, ONE, ZERO};

/// Subspace of `B(C^dim)` with a canonical orthonormal basis.
#[derive(Clone, Debug)]
pub struct OperatorSpan {
    dim: usize,
    basis: Vec<ComplexMatrix>,
}

impl OperatorSpan {
    /// Orthonormal basis of the span of `elements`.
    ///
    /// The rank is fixed by an SVD with cutoff `rel_cutoff * σ_max`. The basis is
    /// then read off by pivoted Gram-Schmidt on the projections of the matrix
    /// units, so it depends only on the span and not on the spanning set.
    pub fn from_spanning_set(dim: usize, elements: &[ComplexMatrix], rel_cutoff: f64) -> Self {
        let big = dim * dim;
        let columns: Vec<Vec<C64>> = elements.iter().map(|e| e.vectorize()).collect();
        let stacked = ComplexMatrix::from_columns(big, &columns);
        let range = column_space(&stacked, rel_cutoff);
        let rank = range.len();
        // residuals start as the projector columns P e_m = Σ_k u_k conj(u_k[m])
        let mut residuals: Vec<Vec<C64>> = (0..big)
            .map(|m| {
                let mut v = vec![ZERO; big];
                for u in &range {
                    let w = u[m].conj();
                    if w != ZERO {
                        for (vi, ui) in v.iter_mut().zip(u) {
                            *vi += w * ui;
                        }
                    }
                }
                v
            })
            .collect();
        let mut basis = Vec::with_capacity(rank);
        let mut used = vec![false; big];
        for _ in 0..rank {
            let norms: Vec<f64> = residuals.iter().map(|v| norm(v)).collect();
            let max = norms.iter().zip(&used).filter(|(_, &u)| !u).map(|(n, _)| *n).fold(0.0, f64::max);
            let pick = (0..big).find(|&m| !used[m] && norms[m] >= max * (1.0 - 1e-9)).expect("rank exceeds available pivots");
            used[pick] = true;
            let q: Vec<C64> = residuals[pick].iter().map(|z| chop(z / norms[pick])).collect();
            for (m, r) in residuals.iter_mut().enumerate() {
                if used[m] {
                    continue;
                }
                let overlap: C64 = q.iter().zip(r.iter()).map(|(a, b)| a.conj() * b).sum();
                for (ri, qi) in r.iter_mut().zip(&q) {
                    *ri -= overlap * qi;
                }
            }
            basis.push(ComplexMatrix::from_vec(dim, dim, q));
        }
        Self { dim, basis }
    }

    /// Wraps a basis that is already orthonormal. Returns `None` when it is not, within `tol`.
    pub fn from_orthonormal(dim: usize, basis: Vec<ComplexMatrix>, tol: f64) -> Option<Self> {
        if basis.iter().any(|b| b.shape() != (dim, dim)) {
            return None;
        }
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let want = if i == j { ONE } else { ZERO };
                if (a.hs_inner(b) - want).norm() > tol {
                    return None;
                }
            }
        }
        Some(Self { dim, basis })
    }

    /// All of `B(C^dim)` with the matrix units `E_ij` in row-major order.
    pub fn matrix_units(dim: usize) -> Self {
        let basis = (0..dim * dim).map(|k| ComplexMatrix::unit(dim, k / dim, k % dim)).collect();
        Self { dim, basis }
    }

    /// The scalars `C·1`.
    pub fn scalars(dim: usize) -> Self {
        let s = 1.0 / (dim as f64).sqrt();
        Self { dim, basis: vec![ComplexMatrix::identity(dim).scale_real(s)] }
    }

    /// Hilbert space dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of basis elements.
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[ComplexMatrix] {
        &self.basis
    }

    pub fn coefficients(&self, x: &ComplexMatrix) -> Vec<C64> {
        self.basis.iter().map(|b| b.hs_inner(x)).collect()
    }

    pub fn element(&self, coeffs: &[C64]) -> ComplexMatrix {
        assert_eq!(coeffs.len(), self.basis.len(), "coefficient count does not match basis");
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            out.add_scaled(*c, b);
        }
        out
    }

    pub fn projection(&self, x: &ComplexMatrix) -> ComplexMatrix {
        self.element(&self.coefficients(x))
    }

    /// Relative distance of `x` from the span.
    pub fn residual(&self, x: &ComplexMatrix) -> f64 {
        relative_residual(x, &self.projection(x))
    }

    /// Coefficient matrix whose columns expand `xs`.
    pub fn coefficient_matrix(&self, xs: &[ComplexMatrix]) -> ComplexMatrix {
        let cols: Vec<Vec<C64>> = xs.iter().map(|x| self.coefficients(x)).collect();
        ComplexMatrix::from_columns(self.len(), &cols)
    }

    /// Coefficients of the identity operator.
    pub fn unit_coefficients(&self) -> Vec<C64> {
        self.coefficients(&ComplexMatrix::identity(self.dim))
    }

    /// Largest residual of the basis of `other` against this span.
    pub fn contains_residual(&self, other: &OperatorSpan) -> f64 {
        other.basis.iter().map(|b| self.residual(b)).fold(0.0, f64::max)
    }

    /// Block-diagonal direct sum acting on `C^dim ⊕ C^other.dim`.
    pub fn direct_sum(&self, other: &OperatorSpan) -> OperatorSpan {
        let n = self.dim + other.dim;
        let mut basis = Vec::with_capacity(self.len() + other.len());
        for b in &self.basis {
            basis.push(block_diag(b, &ComplexMatrix::zeros(other.dim, other.dim)));
        }
        for b in &other.basis {
            basis.push(block_diag(&ComplexMatrix::zeros(self.dim, self.dim), b));
        }
        OperatorSpan { dim: n, basis }
    }
}

pub fn block_diag(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let n = a.rows() + b.rows();
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            out[(i, j)] = a[(i, j)];
        }
    }
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            out[(a.rows() + i, a.cols() + j)] = b[(i, j)];
        }
    }
    out
}

/// Drops rounding noise so canonical bases have exact zeros.
fn chop(z: C64) -> C64 {
    let re = if z.re.abs() < 1e-14 { 0.0 } else { z.re };
    let im = if z.im.abs() < 1e-14 { 0.0 } else { z.im };
    C64::new(re, im)
}

fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Expands an operator on `H1 ⊗ H2` in the product basis of two spans.
/// Returns the `n1 × n2` coefficient matrix and the relative residual of the expansion.
pub fn expand_pair(t: &ComplexMatrix, left: &OperatorSpan, right: &OperatorSpan) -> (ComplexMatrix, f64) {
    let space = LegSpace::new([left.dim, right.dim]);
    let mut coeffs = ComplexMatrix::zeros(left.len(), right.len());
    for (j, y) in right.basis.iter().enumerate() {
        let s = slice_leg(t, &space, 2, &Functional::pairing(y)).expect("operator matches the product space");
        for (i, x) in left.basis.iter().enumerate() {
            coeffs[(i, j)] = x.hs_inner(&s);
        }
    }
    let residual = relative_residual(t, &assemble_pair(&coeffs, left, right));
    (coeffs, residual)
}

/// Inverse of [`expand_pair`].
pub fn assemble_pair(coeffs: &ComplexMatrix, left: &OperatorSpan, right: &OperatorSpan) -> ComplexMatrix {
    let n = left.dim * right.dim;
    let mut out = ComplexMatrix::zeros(n, n);
    for (i, x) in left.basis.iter().enumerate() {
        let row: Vec<C64> = (0..right.len()).map(|j| coeffs[(i, j)]).collect();
        if row.iter().all(|z| *z == ZERO) {
            continue;
        }
        out.add_scaled(ONE, &x.kron(&right.element(&row)));
    }
    out
}

/// Slices of an operator on `H1 ⊗ H2` along the second leg: `t = Σ_j s_j ⊗ y_j`
/// whenever the second leg of `t` lies in the span. Returns the slices and the residual.
pub fn split_second_leg(t: &ComplexMatrix, first_dim: usize, right: &OperatorSpan) -> (Vec<ComplexMatrix>, f64) {
    let space = LegSpace::new([first_dim, right.dim]);
    let slices: Vec<ComplexMatrix> = right
        .basis
        .iter()
        .map(|y| slice_leg(t, &space, 2, &Functional::pairing(y)).expect("operator matches the product space"))
        .collect();
    let n = first_dim * right.dim;
    let mut rebuilt = ComplexMatrix::zeros(n, n);
    for (s, y) in slices.iter().zip(&right.basis) {
        rebuilt.add_scaled(ONE, &s.kron(y));
    }
    (slices, relative_residual(t, &rebuilt))
}

/// Slices along the first leg: `t = Σ_i x_i ⊗ s_i`.
pub fn split_first_leg(t: &ComplexMatrix, left: &OperatorSpan, second_dim: usize) -> (Vec<ComplexMatrix>, f64) {
    let space = LegSpace::new([left.dim, second_dim]);
    let slices: Vec<ComplexMatrix> = left
        .basis
        .iter()
        .map(|x| slice_leg(t, &space, 1, &Functional::pairing(x)).expect("operator matches the product space"))
        .collect();
    let n = left.dim * second_dim;
    let mut rebuilt = ComplexMatrix::zeros(n, n);
    for (s, x) in slices.iter().zip(&left.basis) {
        rebuilt.add_scaled(ONE, &x.kron(s));
    }
    (slices, relative_residual(t, &rebuilt))
}

/// Coefficients over a tensor product of spans, flattened row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffTensor {
    pub dims: Vec<usize>,
    pub data: Vec<C64>,
}

impl CoeffTensor {
    pub fn new(dims: Vec<usize>, data: Vec<C64>) -> Self {
        assert_eq!(dims.iter().product::<usize>(), data.len(), "tensor shape does not match data");
        Self { dims, data }
    }

    /// Column `col` of a coefficient matrix, read with the given factor dims.
    pub fn from_column(m: &ComplexMatrix, col: usize, dims: Vec<usize>) -> Self {
        Self::new(dims, m.column(col))
    }

    /// Applies a linear map to factor `k`. The map has `dims[k]` columns and
    /// `out_dims.iter().product()` rows; the factor is replaced by `out_dims`.
    pub fn map_factor(&self, k: usize, map: &ComplexMatrix, out_dims: &[usize]) -> CoeffTensor {
        let n = self.dims[k];
        let m: usize = out_dims.iter().product();
        assert_eq!(map.cols(), n, "map domain does not match tensor factor");
        assert_eq!(map.rows(), m, "map codomain does not match output dims");
        let before: usize = self.dims[..k].iter().product();
        let after: usize = self.dims[k + 1..].iter().product();
        let mut out = vec![ZERO; before * m * after];
        for b in 0..before {
            for i in 0..n {
                for a in 0..after {
                    let v = self.data[(b * n + i) * after + a];
                    if v == ZERO {
                        continue;
                    }
                    for r in 0..m {
                        let w = map[(r, i)];
                        if w != ZERO {
                            out[(b * m + r) * after + a] += w * v;
                        }
                    }
                }
            }
        }
        let mut dims = self.dims[..k].to_vec();
        dims.extend_from_slice(out_dims);
        dims.extend_from_slice(&self.dims[k + 1..]);
        CoeffTensor { dims, data: out }
    }

    pub fn residual(&self, other: &CoeffTensor) -> f64 {
        if self.dims != other.dims {
            return f64::INFINITY;
        }
        crate::tensorleg::relative_residual_vec(&self.data, &other.data)
    }

    /// Residual against `other`, measured relative to at least `scale`.
    pub fn scaled_residual(&self, other: &CoeffTensor, scale: f64) -> f64 {
        if self.dims != other.dims {
            return f64::INFINITY;
        }
        crate::tensorleg::scaled_residual_vec(&self.data, &other.data, scale)
    }
}
