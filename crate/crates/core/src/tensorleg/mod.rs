//! Leg-numbering calculus for operators on finite tensor products.
//!
//! Legs are numbered from 1. Multi-indices are flattened row-major, so the
//! first leg is the most significant digit, matching [`ComplexMatrix::kron`].

mod decomp;
mod matrix;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use decomp::{column_space, nullspace, polar_unitary, rank, singular_values, solve_least_squares, svd, Svd};
pub use matrix::{relative_residual, relative_residual_vec, scaled_residual, scaled_residual_vec, ComplexMatrix, C64, ONE, ZERO};

/// Ordered list of Hilbert space dimensions, one per leg.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegSpace {
    pub dims: Vec<usize>,
}

impl LegSpace {
    pub fn new(dims: impl Into<Vec<usize>>) -> Self {
        Self { dims: dims.into() }
    }

    pub fn total(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn legs(&self) -> usize {
        self.dims.len()
    }

    fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dims.len()];
        for k in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.dims[k + 1];
        }
        strides
    }

    /// Flat offsets of all multi-indices over `legs` (0-based, in the given order).
    fn offsets(&self, legs: &[usize]) -> Vec<usize> {
        let strides = self.strides();
        let mut offs = vec![0usize];
        for &leg in legs {
            let mut next = Vec::with_capacity(offs.len() * self.dims[leg]);
            for &o in &offs {
                for i in 0..self.dims[leg] {
                    next.push(o + i * strides[leg]);
                }
            }
            offs = next;
        }
        offs
    }

    fn check_square(&self, m: &ComplexMatrix, what: &str) -> Result<()> {
        let n = self.total();
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "{what} is {}x{} but the leg space {:?} has total dimension {n}",
                m.rows(),
                m.cols(),
                self.dims
            )));
        }
        Ok(())
    }

    /// Converts 1-based legs to 0-based ones, rejecting repeats and out-of-range values.
    fn zero_based(&self, legs: &[usize]) -> Result<Vec<usize>> {
        let mut seen = vec![false; self.dims.len()];
        let mut out = Vec::with_capacity(legs.len());
        for &leg in legs {
            if leg == 0 || leg > self.dims.len() {
                return Err(Error::InvalidLegs(format!("leg {leg} outside 1..={}", self.dims.len())));
            }
            if seen[leg - 1] {
                return Err(Error::InvalidLegs(format!("leg {leg} repeated")));
            }
            seen[leg - 1] = true;
            out.push(leg - 1);
        }
        Ok(out)
    }

    fn complement(&self, legs: &[usize]) -> Vec<usize> {
        (0..self.dims.len()).filter(|k| !legs.contains(k)).collect()
    }
}

/// Normal functional `x ↦ tr(density · x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Functional {
    pub density: ComplexMatrix,
}

impl Functional {
    pub fn new(density: ComplexMatrix) -> Self {
        Self { density }
    }

    /// Functional reading off the `(i, j)` matrix entry.
    pub fn entry(dim: usize, i: usize, j: usize) -> Self {
        Self { density: ComplexMatrix::unit(dim, j, i) }
    }

    /// Functional `x ↦ tr(a* x)`, the Hilbert-Schmidt pairing with `a`.
    pub fn pairing(a: &ComplexMatrix) -> Self {
        Self { density: a.adjoint() }
    }

    pub fn value(&self, x: &ComplexMatrix) -> C64 {
        self.density.matmul(x).trace()
    }
}

/// Kronecker product.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kron(b)
}

/// Kronecker product of several factors, left to right.
pub fn kron_all(factors: &[&ComplexMatrix]) -> ComplexMatrix {
    let (first, rest) = factors.split_first().expect("empty Kronecker product");
    rest.iter().fold((*first).clone(), |acc, m| acc.kron(m))
}

/// Places `x` on the listed legs (in order) and the identity elsewhere.
pub fn embed_on_legs(x: &ComplexMatrix, space: &LegSpace, legs: &[usize]) -> Result<ComplexMatrix> {
    let legs = space.zero_based(legs)?;
    let sub: usize = legs.iter().map(|&l| space.dims[l]).product();
    if x.rows() != sub || x.cols() != sub {
        return Err(Error::DimensionMismatch(format!(
            "operator is {}x{} but legs {:?} have dimension {sub}",
            x.rows(),
            x.cols(),
            legs.iter().map(|l| l + 1).collect::<Vec<_>>()
        )));
    }
    let inner = space.offsets(&legs);
    let outer = space.offsets(&space.complement(&legs));
    let mut out = ComplexMatrix::zeros(space.total(), space.total());
    for i in 0..sub {
        for j in 0..sub {
            let v = x[(i, j)];
            if v == ZERO {
                continue;
            }
            for &o in &outer {
                out[(inner[i] + o, inner[j] + o)] = v;
            }
        }
    }
    Ok(out)
}

/// Reorders tensor factors: old leg `k` moves to position `perm[k-1]` (both 1-based).
/// Returns the conjugated operator and the reordered leg space.
pub fn permute_legs(t: &ComplexMatrix, space: &LegSpace, perm: &[usize]) -> Result<(ComplexMatrix, LegSpace)> {
    space.check_square(t, "operator")?;
    if perm.len() != space.legs() {
        return Err(Error::InvalidLegs(format!("permutation has {} entries for {} legs", perm.len(), space.legs())));
    }
    let targets = space.zero_based(perm)?;
    let mut new_dims = vec![0; space.legs()];
    for (k, &p) in targets.iter().enumerate() {
        new_dims[p] = space.dims[k];
    }
    let new_space = LegSpace::new(new_dims);
    let new_strides = new_space.strides();
    let mut map = vec![0usize];
    for (k, &p) in targets.iter().enumerate() {
        let mut next = Vec::with_capacity(map.len() * space.dims[k]);
        for &m in &map {
            for i in 0..space.dims[k] {
                next.push(m + i * new_strides[p]);
            }
        }
        map = next;
    }
    let n = space.total();
    let mut out = ComplexMatrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            let v = t[(r, c)];
            if v != ZERO {
                out[(map[r], map[c])] = v;
            }
        }
    }
    Ok((out, new_space))
}

/// Applies `ω` to one leg, leaving an operator on the remaining legs in order.
pub fn slice_leg(t: &ComplexMatrix, space: &LegSpace, leg: usize, omega: &Functional) -> Result<ComplexMatrix> {
    space.check_square(t, "operator")?;
    let leg = space.zero_based(&[leg])?[0];
    let d = space.dims[leg];
    if omega.density.shape() != (d, d) {
        return Err(Error::DimensionMismatch(format!(
            "functional density is {}x{} but leg {} has dimension {d}",
            omega.density.rows(),
            omega.density.cols(),
            leg + 1
        )));
    }
    let stride = space.strides()[leg];
    let rest = space.offsets(&space.complement(&[leg]));
    let m = rest.len();
    let mut out = ComplexMatrix::zeros(m, m);
    for i in 0..d {
        for j in 0..d {
            // tr(ρ x) = Σ ρ_ji x_ij
            let w = omega.density[(j, i)];
            if w == ZERO {
                continue;
            }
            for (r, &ro) in rest.iter().enumerate() {
                let row = ro + i * stride;
                for (c, &co) in rest.iter().enumerate() {
                    let v = t[(row, co + j * stride)];
                    if v != ZERO {
                        out[(r, c)] += w * v;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Result of [`extract_trivial_legs`].
#[derive(Clone, Debug, PartialEq)]
pub struct Extraction {
    /// Least-squares factor on the remaining legs, in their original order.
    pub factor: ComplexMatrix,
    /// `‖t − f ⊗ 1‖ / ‖t‖`.
    pub residual: f64,
    /// Whether the residual is within the requested tolerance.
    pub certified: bool,
    pub tolerance: f64,
}

impl Extraction {
    /// The factor and residual, or [`Error::ExtractionFailure`] when not certified.
    pub fn require(self) -> Result<(ComplexMatrix, f64)> {
        if self.certified {
            Ok((self.factor, self.residual))
        } else {
            Err(Error::ExtractionFailure { residual: self.residual, tolerance: self.tolerance })
        }
    }
}

/// Least-squares factor `f` on the non-trivial legs with `t ≈ f ⊗ 1`. The
/// factor is the normalized partial trace over the trivial legs, which is the
/// Frobenius-optimal choice.
pub fn extract_trivial_legs(t: &ComplexMatrix, space: &LegSpace, trivial: &[usize], tol: f64) -> Result<Extraction> {
    space.check_square(t, "operator")?;
    let trivial0 = space.zero_based(trivial)?;
    let keep = space.complement(&trivial0);
    let keep_off = space.offsets(&keep);
    let triv_off = space.offsets(&trivial0);
    let k = keep_off.len();
    let m = triv_off.len() as f64;
    let mut f = ComplexMatrix::zeros(k, k);
    for r in 0..k {
        for c in 0..k {
            let s: C64 = triv_off.iter().map(|&o| t[(keep_off[r] + o, keep_off[c] + o)]).sum();
            f[(r, c)] = s / m;
        }
    }
    let keep_legs: Vec<usize> = keep.iter().map(|l| l + 1).collect();
    let rebuilt = embed_on_legs(&f, space, &keep_legs)?;
    let norm = t.frobenius_norm();
    let residual = if norm == 0.0 { 0.0 } else { (t - &rebuilt).frobenius_norm() / norm };
    Ok(Extraction { factor: f, residual, certified: residual <= tol, tolerance: tol })
}

/// Solution space of `w (a ⊗ 1) = (1 ⊗ b) w` over pairs of operators on a `dim`-dimensional space.
#[derive(Clone, Debug)]
pub struct IntertwinerSpace {
    pub dimension: usize,
    pub basis: Vec<(ComplexMatrix, ComplexMatrix)>,
}

/// Computes the intertwiner pairs by an SVD nullspace of the stacked linear system.
pub fn intertwiner_space(w: &ComplexMatrix, dim: usize, rel_cutoff: f64) -> Result<IntertwinerSpace> {
    let space = LegSpace::new([dim, dim]);
    space.check_square(w, "unitary")?;
    let n = dim * dim;
    let mut columns = Vec::with_capacity(2 * n);
    let id = ComplexMatrix::identity(dim);
    for p in 0..dim {
        for q in 0..dim {
            let e = ComplexMatrix::unit(dim, p, q);
            columns.push(w.matmul(&e.kron(&id)).vectorize());
        }
    }
    for p in 0..dim {
        for q in 0..dim {
            let e = ComplexMatrix::unit(dim, p, q);
            columns.push(id.kron(&e).matmul(w).scale_real(-1.0).vectorize());
        }
    }
    let system = ComplexMatrix::from_columns(n * n, &columns);
    let null = nullspace(&system, rel_cutoff);
    let basis = null
        .into_iter()
        .map(|v| {
            let a = ComplexMatrix::from_vec(dim, dim, v[..n].to_vec());
            let b = ComplexMatrix::from_vec(dim, dim, v[n..].to_vec());
            (a, b)
        })
        .collect::<Vec<_>>();
    Ok(IntertwinerSpace { dimension: basis.len(), basis })
}
