//! Finite quantum groups generated by a multiplicative unitary `W` on `H ⊗ H`.
//!
//! The algebra `C` is the span of the slices `(ω ⊗ id)W` and its dual `Ĉ` the
//! span of `(id ⊗ ω)W`. Comultiplications are `Δ_C(x) = W(x ⊗ 1)W*` and
//! `Δ_Ĉ(y) = ΣW*(1 ⊗ y)WΣ`, where `Σ` is the flip.

use std::sync::Arc;

use crate::bicharacter::{check_bicharacter, Bicharacter};
use crate::error::{Error, Result};
use crate::span::{expand_pair, CoeffTensor, OperatorSpan};
use crate::tensorleg::{
    embed_on_legs, nullspace, polar_unitary, relative_residual, scaled_residual, solve_least_squares, ComplexMatrix, LegSpace,
    C64,
};
use crate::tolerance::Tolerances;

/// Shared handle; quantum groups are immutable once built.
pub type QuantumGroup = Arc<FiniteQuantumGroup>;

/// Residuals recorded while building a quantum group.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BuildResiduals {
    pub unitarity: f64,
    pub pentagon: f64,
    pub closure_c: f64,
    pub closure_chat: f64,
    pub range_c: f64,
    pub range_chat: f64,
    pub coassociativity_c: f64,
    pub coassociativity_chat: f64,
}

#[derive(Clone, Debug)]
pub struct FiniteQuantumGroup {
    dim: usize,
    w: ComplexMatrix,
    alg_c: OperatorSpan,
    alg_chat: OperatorSpan,
    delta_c: ComplexMatrix,
    delta_c_ops: Vec<ComplexMatrix>,
    delta_chat: ComplexMatrix,
    delta_chat_ops: Vec<ComplexMatrix>,
    kac_r: std::result::Result<ComplexMatrix, String>,
    kac_r_hat: std::result::Result<ComplexMatrix, String>,
    residuals: BuildResiduals,
}

/// Unitary `W̃` tied to `W` by `(x⊗y|W|z⊗u) = (z̄⊗y|W̃|x̄⊗u)`, and its unitarity residual.
#[derive(Clone, Debug)]
pub struct ManageabilityWitness {
    pub w_tilde: ComplexMatrix,
    pub residual: f64,
}

/// Which tensor factor carries the scalar in `Δ_C(c) ∈ C ⊗ 1` or `1 ⊗ C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvariantSide {
    Left,
    Right,
}

impl FiniteQuantumGroup {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn w(&self) -> &ComplexMatrix {
        &self.w
    }

    pub fn alg_c(&self) -> &OperatorSpan {
        &self.alg_c
    }

    pub fn alg_chat(&self) -> &OperatorSpan {
        &self.alg_chat
    }

    /// Coefficient matrix of `Δ_C`, rows indexed by `i * n + j` for `x_i ⊗ x_j`.
    pub fn delta_c(&self) -> &ComplexMatrix {
        &self.delta_c
    }

    /// `Δ_C` of each basis element, as operators on `H ⊗ H`.
    pub fn delta_c_ops(&self) -> &[ComplexMatrix] {
        &self.delta_c_ops
    }

    pub fn delta_chat(&self) -> &ComplexMatrix {
        &self.delta_chat
    }

    pub fn delta_chat_ops(&self) -> &[ComplexMatrix] {
        &self.delta_chat_ops
    }

    /// Unitary antipode of `C` as a coefficient matrix, when `C` is of Kac type.
    pub fn kac_r(&self) -> Option<&ComplexMatrix> {
        self.kac_r.as_ref().ok()
    }

    /// Unitary antipode of `Ĉ` as a coefficient matrix, when of Kac type.
    pub fn kac_r_hat(&self) -> Option<&ComplexMatrix> {
        self.kac_r_hat.as_ref().ok()
    }

    pub fn residuals(&self) -> &BuildResiduals {
        &self.residuals
    }

    /// `Δ_C(x) = W(x ⊗ 1)W*` for any operator `x` on `H`.
    pub fn comultiply(&self, x: &ComplexMatrix) -> ComplexMatrix {
        comultiply_with(&self.w, x)
    }

    /// `Δ_Ĉ(y) = ΣW*(1 ⊗ y)WΣ`.
    pub fn comultiply_hat(&self, y: &ComplexMatrix) -> ComplexMatrix {
        comultiply_hat_with(&self.w, y)
    }

    /// Quantum groups are equal exactly when their multiplicative unitaries are.
    pub fn same_as(&self, other: &FiniteQuantumGroup) -> bool {
        std::ptr::eq(self, other) || self.w == other.w
    }
}

/// Flip `Σ(ξ ⊗ η) = η ⊗ ξ` on `C^a ⊗ C^b`.
pub fn flip(a: usize, b: usize) -> ComplexMatrix {
    let perm: Vec<usize> = (0..a * b).map(|k| (k % b) * a + k / b).collect();
    ComplexMatrix::permutation(&perm)
}

fn comultiply_with(w: &ComplexMatrix, x: &ComplexMatrix) -> ComplexMatrix {
    let d = x.rows();
    w.matmul(&x.kron(&ComplexMatrix::identity(d))).matmul(&w.adjoint())
}

fn comultiply_hat_with(w: &ComplexMatrix, y: &ComplexMatrix) -> ComplexMatrix {
    let d = y.rows();
    let s = flip(d, d);
    ComplexMatrix::product(&[&s, &w.adjoint(), &ComplexMatrix::identity(d).kron(y), w, &s])
}

fn hilbert_dim(w: &ComplexMatrix) -> Result<usize> {
    if !w.is_square() {
        return Err(Error::DimensionMismatch(format!("W is {}x{}, not square", w.rows(), w.cols())));
    }
    let n = w.rows();
    let d = (n as f64).sqrt().round() as usize;
    if d * d != n || d == 0 {
        return Err(Error::DimensionMismatch(format!("W has size {n}, which is not a square dimension")));
    }
    Ok(d)
}

/// Relative residual of `W_23 W_12 = W_12 W_13 W_23` on `H ⊗ H ⊗ H`.
pub fn pentagon_residual(w: &ComplexMatrix) -> Result<f64> {
    let d = hilbert_dim(w)?;
    let space = LegSpace::new([d, d, d]);
    let w12 = embed_on_legs(w, &space, &[1, 2])?;
    let w13 = embed_on_legs(w, &space, &[1, 3])?;
    let w23 = embed_on_legs(w, &space, &[2, 3])?;
    let lhs = w23.matmul(&w12);
    let rhs = ComplexMatrix::product(&[&w12, &w13, &w23]);
    Ok(relative_residual(&lhs, &rhs))
}

/// Operators `(ω_pq ⊗ id)W` for all matrix-entry functionals on the first leg.
pub fn second_leg_slices(w: &ComplexMatrix, d: usize) -> Vec<ComplexMatrix> {
    let mut out = Vec::with_capacity(d * d);
    for p in 0..d {
        for q in 0..d {
            out.push(ComplexMatrix::from_fn(d, d, |r, s| w[(p * d + r, q * d + s)]));
        }
    }
    out
}

/// Operators `(id ⊗ ω_rs)W` for all matrix-entry functionals on the second leg.
pub fn first_leg_slices(w: &ComplexMatrix, d: usize) -> Vec<ComplexMatrix> {
    let mut out = Vec::with_capacity(d * d);
    for r in 0..d {
        for s in 0..d {
            out.push(ComplexMatrix::from_fn(d, d, |p, q| w[(p * d + r, q * d + s)]));
        }
    }
    out
}

/// Largest membership residual among products, adjoints and the unit.
fn closure_residual(span: &OperatorSpan) -> f64 {
    let mut worst = span.residual(&ComplexMatrix::identity(span.dim()));
    for a in span.basis() {
        worst = worst.max(span.residual(&a.adjoint()));
        for b in span.basis() {
            let p = a.matmul(b);
            worst = worst.max(scaled_residual(&p, &span.projection(&p), a.frobenius_norm() * b.frobenius_norm()));
        }
    }
    worst
}

/// Coefficient matrix and operator images of a comultiplication on a span.
fn comultiplication(
    span: &OperatorSpan,
    apply: impl Fn(&ComplexMatrix) -> ComplexMatrix,
) -> (ComplexMatrix, Vec<ComplexMatrix>, f64) {
    let n = span.len();
    let mut coeffs = ComplexMatrix::zeros(n * n, n);
    let mut ops = Vec::with_capacity(n);
    let mut worst: f64 = 0.0;
    for (k, x) in span.basis().iter().enumerate() {
        let img = apply(x);
        let (c, res) = expand_pair(&img, span, span);
        worst = worst.max(res);
        for i in 0..n {
            for j in 0..n {
                coeffs[(i * n + j, k)] = c[(i, j)];
            }
        }
        ops.push(img);
    }
    (coeffs, ops, worst)
}

/// `(Δ ⊗ id)Δ = (id ⊗ Δ)Δ` on every basis element, in coefficient space.
pub fn coassociativity_residual(delta: &ComplexMatrix, n: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for k in 0..n {
        let t = CoeffTensor::from_column(delta, k, vec![n, n]);
        let left = t.map_factor(0, delta, &[n, n]);
        let right = t.map_factor(1, delta, &[n, n]);
        worst = worst.max(left.residual(&right));
    }
    worst
}

/// Linear map sending each slice in `from` to the matching slice in `to`,
/// checked to be an involutive *-anti-automorphism of the span.
fn kac_antipode(
    span: &OperatorSpan,
    from: &[ComplexMatrix],
    to: &[ComplexMatrix],
    tol: &Tolerances,
) -> std::result::Result<ComplexMatrix, String> {
    let range = to.iter().map(|t| span.residual(t)).fold(0.0, f64::max);
    if range > tol.membership {
        return Err(format!("slices of W* leave the algebra (residual {range:.3e})"));
    }
    let s = span.coefficient_matrix(from);
    let t = span.coefficient_matrix(to);
    // K S = T  <=>  S* K* = T*
    let k = solve_least_squares(&s.adjoint(), &t.adjoint(), tol.rank).adjoint();
    let fit = relative_residual(&k.matmul(&s), &t);
    if fit > tol.equation {
        return Err(format!("antipode is not well defined on slices (residual {fit:.3e})"));
    }
    let n = span.len();
    let involution = relative_residual(&k.matmul(&k), &ComplexMatrix::identity(n));
    if involution > tol.equation {
        return Err(format!("antipode is not involutive (residual {involution:.3e})"));
    }
    let apply = |x: &ComplexMatrix| span.element(&k.matvec(&span.coefficients(x)));
    let images: Vec<ComplexMatrix> = span.basis().iter().map(apply).collect();
    let mut worst: f64 = 0.0;
    for (i, a) in span.basis().iter().enumerate() {
        worst = worst.max(relative_residual(&apply(&a.adjoint()), &images[i].adjoint()));
        for (j, b) in span.basis().iter().enumerate() {
            let scale = images[i].frobenius_norm() * images[j].frobenius_norm();
            worst = worst.max(scaled_residual(&apply(&a.matmul(b)), &images[j].matmul(&images[i]), scale));
        }
    }
    if worst > tol.equation {
        return Err(format!("antipode is not a *-anti-automorphism (residual {worst:.3e})"));
    }
    Ok(k)
}

/// Validates `w` and builds the quantum group it generates.
pub fn build_from_unitary(w: ComplexMatrix, tol: &Tolerances) -> Result<QuantumGroup> {
    let d = hilbert_dim(&w)?;
    let unitarity = w.unitarity_residual();
    if unitarity > tol.exact {
        return Err(Error::NotUnitary(unitarity));
    }
    let pentagon = pentagon_residual(&w)?;
    if pentagon > tol.exact {
        return Err(Error::PentagonViolation(pentagon));
    }
    let c_slices = second_leg_slices(&w, d);
    let chat_slices = first_leg_slices(&w, d);
    let alg_c = OperatorSpan::from_spanning_set(d, &c_slices, tol.rank);
    let alg_chat = OperatorSpan::from_spanning_set(d, &chat_slices, tol.rank);

    let closure_c = closure_residual(&alg_c);
    if closure_c > tol.membership {
        return Err(Error::AlgebraNotClosed { what: "C is not a unital *-algebra".into(), residual: closure_c });
    }
    let closure_chat = closure_residual(&alg_chat);
    if closure_chat > tol.membership {
        return Err(Error::AlgebraNotClosed { what: "Ĉ is not a unital *-algebra".into(), residual: closure_chat });
    }

    let (delta_c, delta_c_ops, range_c) = comultiplication(&alg_c, |x| comultiply_with(&w, x));
    if range_c > tol.membership {
        return Err(Error::AlgebraNotClosed { what: "Δ_C leaves C ⊗ C".into(), residual: range_c });
    }
    let (delta_chat, delta_chat_ops, range_chat) = comultiplication(&alg_chat, |y| comultiply_hat_with(&w, y));
    if range_chat > tol.membership {
        return Err(Error::AlgebraNotClosed { what: "Δ_Ĉ leaves Ĉ ⊗ Ĉ".into(), residual: range_chat });
    }
    let coassociativity_c = coassociativity_residual(&delta_c, alg_c.len());
    let coassociativity_chat = coassociativity_residual(&delta_chat, alg_chat.len());
    let coassoc = coassociativity_c.max(coassociativity_chat);
    if coassoc > tol.equation {
        return Err(Error::AlgebraNotClosed { what: "comultiplication is not coassociative".into(), residual: coassoc });
    }

    let w_star = w.adjoint();
    let kac_r = kac_antipode(&alg_c, &c_slices, &second_leg_slices(&w_star, d), tol);
    let kac_r_hat = kac_antipode(&alg_chat, &first_leg_slices(&w_star, d), &chat_slices, tol);

    Ok(Arc::new(FiniteQuantumGroup {
        dim: d,
        w,
        alg_c,
        alg_chat,
        delta_c,
        delta_c_ops,
        delta_chat,
        delta_chat_ops,
        kac_r,
        kac_r_hat,
        residuals: BuildResiduals {
            unitarity,
            pentagon,
            closure_c,
            closure_chat,
            range_c,
            range_chat,
            coassociativity_c,
            coassociativity_chat,
        },
    }))
}

/// Partial transpose of `W` on the first leg, checked for unitarity.
pub fn manageability_witness(qg: &FiniteQuantumGroup, tol: &Tolerances) -> Result<ManageabilityWitness> {
    let w_tilde = partial_transpose_first(&qg.w, qg.dim);
    let residual = w_tilde.unitarity_residual();
    if residual > tol.exact {
        return Err(Error::NotManageable(residual));
    }
    Ok(ManageabilityWitness { w_tilde, residual })
}

fn partial_transpose_first(w: &ComplexMatrix, d: usize) -> ComplexMatrix {
    // W̃[(k, j), (i, l)] = W[(i, j), (k, l)]
    ComplexMatrix::from_fn(d * d, d * d, |r, c| {
        let (k, j) = (r / d, r % d);
        let (i, l) = (c / d, c % d);
        w[(i * d + j, k * d + l)]
    })
}

/// Dual quantum group, generated by `Ŵ = ΣW*Σ`.
pub fn dual_qg(qg: &FiniteQuantumGroup, tol: &Tolerances) -> Result<QuantumGroup> {
    build_from_unitary(dual_unitary(&qg.w, qg.dim), tol)
}

pub fn dual_unitary(w: &ComplexMatrix, d: usize) -> ComplexMatrix {
    let s = flip(d, d);
    ComplexMatrix::product(&[&s, &w.adjoint(), &s])
}

/// Unitary antipode of `C` as a coefficient matrix on `alg_c`.
pub fn unitary_antipode(qg: &FiniteQuantumGroup) -> Result<ComplexMatrix> {
    qg.kac_r.clone().map_err(Error::NotKacType)
}

/// Applies the unitary antipode of `C` to an element of `C`.
pub fn apply_antipode(qg: &FiniteQuantumGroup, x: &ComplexMatrix) -> Result<ComplexMatrix> {
    let k = unitary_antipode(qg)?;
    Ok(qg.alg_c.element(&k.matvec(&qg.alg_c.coefficients(x))))
}

/// Dimension of `{c ∈ C : Δ_C(c) ∈ C ⊗ 1}` (or `1 ⊗ C`).
pub fn invariant_dimension(qg: &FiniteQuantumGroup, side: InvariantSide, tol: &Tolerances) -> usize {
    let n = qg.alg_c.len();
    let unit = qg.alg_c.unit_coefficients();
    // unknowns (α, β): Δ(Σ α_k x_k) − (Σ β_k x_k) ⊗ 1 = 0
    let mut system = ComplexMatrix::zeros(n * n, 2 * n);
    for k in 0..n {
        for r in 0..n * n {
            system[(r, k)] = qg.delta_c[(r, k)];
        }
        for m in 0..n {
            let (i, j, c) = match side {
                InvariantSide::Left => (k, m, unit[m]),
                InvariantSide::Right => (m, k, unit[m]),
            };
            system[(i * n + j, n + k)] -= c;
        }
    }
    nullspace(&system, tol.rank).len()
}

/// A quantum group with the same algebra as `qg` and the flipped comultiplication
/// `ΣΔ_CΣ`, generated by `(u ⊗ u) W̄ (u ⊗ u)*` where `u` is a unitary with
/// `R(x) = u xᵀ u*` for the unitary antipode `R`.
pub fn coopposite(qg: &FiniteQuantumGroup, tol: &Tolerances) -> Result<QuantumGroup> {
    let k = unitary_antipode(qg)?;
    let d = qg.dim;
    let span = &qg.alg_c;
    // u xᵀ − R(x) u = 0 for every basis element x, linear in vec(u)
    let mut rows: Vec<ComplexMatrix> = Vec::new();
    for (i, x) in span.basis().iter().enumerate() {
        let rx = span.element(&k.column(i));
        let xt = x.transpose();
        let mut block = ComplexMatrix::zeros(d * d, d * d);
        for p in 0..d {
            for q in 0..d {
                let e = ComplexMatrix::unit(d, p, q);
                let img = &e.matmul(&xt) - &rx.matmul(&e);
                for (r, v) in img.data().iter().enumerate() {
                    block[(r, p * d + q)] = *v;
                }
            }
        }
        rows.push(block);
    }
    let mut system = ComplexMatrix::zeros(d * d * rows.len(), d * d);
    for (b, block) in rows.iter().enumerate() {
        for r in 0..d * d {
            for c in 0..d * d {
                system[(b * d * d + r, c)] = block[(r, c)];
            }
        }
    }
    let null = nullspace(&system, tol.rank);
    if null.is_empty() {
        return Err(Error::NotKacType("no operator intertwines the transpose with the antipode".into()));
    }
    for attempt in 0..4 {
        // project a fixed dense matrix onto the solution space; the projection is basis independent
        let probe: Vec<C64> = (0..d * d)
            .map(|m| {
                let t = (m as f64 + 1.0) * (0.61 + 0.17 * attempt as f64);
                C64::new(t.sin() + 1.5, (1.3 * t).cos())
            })
            .collect();
        let mut u = vec![C64::new(0.0, 0.0); d * d];
        for v in &null {
            let overlap: C64 = v.iter().zip(&probe).map(|(a, b)| a.conj() * b).sum();
            for (ui, vi) in u.iter_mut().zip(v) {
                *ui += overlap * vi;
            }
        }
        let (unitary, smin) = polar_unitary(&ComplexMatrix::from_vec(d, d, u));
        if smin < 1e-6 {
            continue;
        }
        let uu = unitary.kron(&unitary);
        let w_cop = ComplexMatrix::product(&[&uu, &qg.w.conj(), &uu.adjoint()]);
        let cop = build_from_unitary(w_cop, tol)?;
        let sigma = flip(d, d);
        let mut worst = qg.alg_c.contains_residual(&cop.alg_c).max(cop.alg_c.contains_residual(&qg.alg_c));
        for x in qg.alg_c.basis() {
            let want = ComplexMatrix::product(&[&sigma, &qg.comultiply(x), &sigma]);
            worst = worst.max(relative_residual(&cop.comultiply(x), &want));
        }
        if worst > tol.equation {
            return Err(Error::NotKacType(format!("coopposite comultiplication mismatch (residual {worst:.3e})")));
        }
        return Ok(cop);
    }
    Err(Error::NotKacType("no invertible intertwiner of the transpose with the antipode".into()))
}

/// The conjugate quantum group `C̄` generated by `W̄ = (W*)^{T⊗T}`, together with
/// the bicharacter `W̃` from `C̄` to the coopposite of `C`.
pub fn transpose_qg(qg: &QuantumGroup, tol: &Tolerances) -> Result<(QuantumGroup, Bicharacter)> {
    let witness = manageability_witness(qg, tol)?;
    let conj = build_from_unitary(qg.w.conj(), tol)?;
    let cop = coopposite(qg, tol)?;
    let bichar = check_bicharacter(witness.w_tilde, &conj, &cop, tol)?;
    Ok((conj, bichar))
}
