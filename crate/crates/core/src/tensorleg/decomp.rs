//! SVD-based rank, nullspace and least-squares helpers backed by faer.

use faer::Mat;

use super::matrix::{ComplexMatrix, C64, ZERO};

fn to_mat(m: &ComplexMatrix) -> Mat<C64> {
    Mat::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

fn from_mat(m: faer::MatRef<'_, C64>) -> ComplexMatrix {
    ComplexMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Singular value decomposition `m = u diag(s) v_t`, singular values nonincreasing.
/// Thin unless `full` is set, in which case `v_t` is square.
pub struct Svd {
    pub u: ComplexMatrix,
    pub singular_values: Vec<f64>,
    pub v_t: ComplexMatrix,
}

fn decompose(m: &ComplexMatrix, full: bool) -> Svd {
    if m.rows() == 0 || m.cols() == 0 {
        return Svd { u: ComplexMatrix::zeros(m.rows(), 0), singular_values: Vec::new(), v_t: ComplexMatrix::zeros(0, m.cols()) };
    }
    let a = to_mat(m);
    let dec = if full { a.svd() } else { a.thin_svd() }.expect("svd converges");
    let s = dec.S().column_vector();
    Svd { u: from_mat(dec.U()), singular_values: (0..s.nrows()).map(|i| s[i].re).collect(), v_t: from_mat(dec.V()).adjoint() }
}

/// Thin SVD.
pub fn svd(m: &ComplexMatrix) -> Svd {
    decompose(m, false)
}

/// Singular values in nonincreasing order.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    if m.rows() == 0 || m.cols() == 0 {
        return Vec::new();
    }
    to_mat(m).singular_values().expect("svd converges")
}

/// Number of singular values above `rel_cutoff * σ_max`.
pub fn rank(m: &ComplexMatrix, rel_cutoff: f64) -> usize {
    let s = singular_values(m);
    let max = s.first().copied().unwrap_or(0.0);
    if max == 0.0 {
        return 0;
    }
    s.iter().filter(|&&x| x > rel_cutoff * max).count()
}

/// Drops identically zero rows, which leaves the kernel unchanged.
fn drop_zero_rows(m: &ComplexMatrix) -> ComplexMatrix {
    let keep: Vec<usize> = (0..m.rows()).filter(|&i| (0..m.cols()).any(|j| m[(i, j)] != ZERO)).collect();
    if keep.len() == m.rows() {
        return m.clone();
    }
    ComplexMatrix::from_fn(keep.len(), m.cols(), |i, j| m[(keep[i], j)])
}

/// Orthonormal basis of the kernel, using singular values below `rel_cutoff * σ_max`.
/// Each vector is normalised so that its largest-modulus entry is real and positive.
pub fn nullspace(m: &ComplexMatrix, rel_cutoff: f64) -> Vec<Vec<C64>> {
    let n = m.cols();
    if n == 0 {
        return Vec::new();
    }
    let compact = drop_zero_rows(m);
    if compact.rows() == 0 {
        return (0..n).map(|j| (0..n).map(|i| if i == j { C64::new(1.0, 0.0) } else { ZERO }).collect()).collect();
    }
    let dec = decompose(&compact, compact.rows() < n);
    let max = dec.singular_values.first().copied().unwrap_or(0.0);
    let mut out = Vec::new();
    for k in 0..n {
        let s = dec.singular_values.get(k).copied().unwrap_or(0.0);
        if max == 0.0 || s <= rel_cutoff * max {
            let v: Vec<C64> = (0..n).map(|j| dec.v_t[(k, j)].conj()).collect();
            out.push(fix_phase(v));
        }
    }
    out
}

/// Orthonormal basis of the column space.
pub fn column_space(m: &ComplexMatrix, rel_cutoff: f64) -> Vec<Vec<C64>> {
    let dec = svd(m);
    let max = dec.singular_values.iter().copied().fold(0.0, f64::max);
    if max == 0.0 {
        return Vec::new();
    }
    dec.singular_values.iter().enumerate().filter(|(_, &s)| s > rel_cutoff * max).map(|(k, _)| dec.u.column(k)).collect()
}

/// Minimum-norm least-squares solution of `a x = b` with singular values
/// below `rel_cutoff * σ_max` discarded.
pub fn solve_least_squares(a: &ComplexMatrix, b: &ComplexMatrix, rel_cutoff: f64) -> ComplexMatrix {
    assert_eq!(a.rows(), b.rows(), "right-hand side has wrong row count");
    let dec = svd(a);
    let max = dec.singular_values.iter().copied().fold(0.0, f64::max);
    let k = dec.singular_values.len();
    // x = V diag(1/s) U* b
    let ub = dec.u.adjoint().matmul(b);
    let mut scaled = ComplexMatrix::zeros(k, b.cols());
    for i in 0..k {
        let s = dec.singular_values[i];
        if max > 0.0 && s > rel_cutoff * max {
            for j in 0..b.cols() {
                scaled[(i, j)] = ub[(i, j)] / s;
            }
        }
    }
    dec.v_t.adjoint().matmul(&scaled)
}

/// Unitary factor of the polar decomposition and the smallest singular value.
pub fn polar_unitary(m: &ComplexMatrix) -> (ComplexMatrix, f64) {
    let dec = svd(m);
    let min = dec.singular_values.iter().copied().fold(f64::INFINITY, f64::min);
    (dec.u.matmul(&dec.v_t), min)
}

fn fix_phase(mut v: Vec<C64>) -> Vec<C64> {
    let pivot = v.iter().copied().fold(ZERO, |best, z| if z.norm() > best.norm() * (1.0 + 1e-9) { z } else { best });
    if pivot.norm() > 0.0 {
        let phase = pivot.conj() / pivot.norm();
        for z in &mut v {
            *z *= phase;
        }
    }
    v
}


#[cfg(test)]
mod degenerate {
    use super::*;
    use crate::tensorleg::relative_residual;

    #[test]
    fn svd_reconstructs_matrices_with_repeated_singular_values() {
        // diagonal-support columns with an eightfold singular value
        let m = ComplexMatrix::from_fn(64, 64, |i, j| {
            let (p, q) = (i / 8, i % 8);
            if p == q && (j % 8 == 0) {
                C64::new(((p * 8 + j / 8) % 3) as f64 - 1.0, 0.0)
            } else {
                ZERO
            }
        });
        let dec = svd(&m);
        let s = ComplexMatrix::diagonal(&dec.singular_values.iter().map(|x| C64::new(*x, 0.0)).collect::<Vec<_>>());
        let back = ComplexMatrix::product(&[&dec.u, &s, &dec.v_t]);
        assert!(relative_residual(&back, &m) < 1e-13);
    }
}
