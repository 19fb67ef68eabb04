//! Coactions `γ : D → D ⊗ C` on matrix algebras, their induction along right
//! homomorphisms, and the pushforward of unitary corepresentations.

use crate::bicharacter::{compose, Bicharacter};
use crate::checks::Checks;
use crate::error::{Error, Result};
use crate::homviews::{
    apply_on_basis, bicharacter_from_right, check_right_hom, density_deficit, injectivity_deficit, star_hom_checks, HopfHom,
    RightQGHom,
};
use crate::qgroup::QuantumGroup;
use crate::span::{assemble_pair, expand_pair, split_second_leg, CoeffTensor, OperatorSpan};
use crate::tensorleg::{embed_on_legs, rank, relative_residual, solve_least_squares, ComplexMatrix, LegSpace, ONE};
use crate::tolerance::Tolerances;

/// A validated coaction of `qg` on the algebra `d`.
#[derive(Clone, Debug)]
pub struct Coaction {
    d: OperatorSpan,
    qg: QuantumGroup,
    gamma: ComplexMatrix,
    images: Vec<ComplexMatrix>,
    checks: Checks,
}

impl Coaction {
    pub fn algebra(&self) -> &OperatorSpan {
        &self.d
    }

    pub fn qg(&self) -> &QuantumGroup {
        &self.qg
    }

    /// Coefficient matrix, rows indexed by `i * n_C + j` for `d_i ⊗ c_j`.
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.gamma
    }

    pub fn images(&self) -> &[ComplexMatrix] {
        &self.images
    }

    pub fn checks(&self) -> &Checks {
        &self.checks
    }

    pub fn apply(&self, x: &ComplexMatrix) -> ComplexMatrix {
        apply_on_basis(&self.d, &self.images, x)
    }
}

/// Validates `gamma` as a coaction of `c` on `d`.
pub fn check_coaction(gamma: ComplexMatrix, d: &OperatorSpan, c: &QuantumGroup, tol: &Tolerances) -> Result<Coaction> {
    let checks = coaction_checks(&gamma, d, c, tol)?;
    if let Some(f) = checks.first_failure() {
        return Err(Error::CoactionViolation { condition: f.name.clone(), residual: f.residual });
    }
    let images = images(&gamma, d, c);
    Ok(Coaction { d: d.clone(), qg: c.clone(), gamma, images, checks })
}

fn images(gamma: &ComplexMatrix, d: &OperatorSpan, c: &QuantumGroup) -> Vec<ComplexMatrix> {
    (0..gamma.cols())
        .map(|k| assemble_pair(&ComplexMatrix::from_vec(d.len(), c.alg_c().len(), gamma.column(k)), d, c.alg_c()))
        .collect()
}

/// Every coaction condition, without deciding pass or fail.
pub fn coaction_checks(gamma: &ComplexMatrix, d: &OperatorSpan, c: &QuantumGroup, tol: &Tolerances) -> Result<Checks> {
    let (nd, nc) = (d.len(), c.alg_c().len());
    if gamma.shape() != (nd * nc, nd) {
        return Err(Error::DimensionMismatch(format!(
            "coaction coefficient matrix is {}x{}, expected {}x{nd}",
            gamma.rows(),
            gamma.cols(),
            nd * nc
        )));
    }
    let imgs = images(gamma, d, c);
    let mut checks = Checks::default();
    star_hom_checks(d, &imgs, tol, &mut checks);
    checks.push("injective", injectivity_deficit(gamma, tol), 0.0);
    let mut coassoc: f64 = 0.0;
    for k in 0..nd {
        let t = CoeffTensor::from_column(gamma, k, vec![nd, nc]);
        coassoc = coassoc.max(t.map_factor(0, gamma, &[nd, nc]).residual(&t.map_factor(1, c.delta_c(), &[nc, nc])));
    }
    checks.push("coassociative", coassoc, tol.equation);
    let one = ComplexMatrix::identity(d.dim());
    let products = imgs.iter().flat_map(|img| c.alg_c().basis().iter().map(|cj| img.matmul(&one.kron(cj))).collect::<Vec<_>>());
    checks.push("podles-density", density_deficit(products, d, c.alg_c(), tol), 0.0);
    Ok(checks)
}

/// Coefficients of an operator-valued map on the basis of `d`, expanded in `d ⊗ C`.
pub fn coaction_from_operators(
    d: &OperatorSpan,
    c: &QuantumGroup,
    map: impl Fn(&ComplexMatrix) -> ComplexMatrix,
    tol: &Tolerances,
) -> Result<Coaction> {
    let mut cols = Vec::with_capacity(d.len());
    let mut range: f64 = 0.0;
    for x in d.basis() {
        let (coeffs, res) = expand_pair(&map(x), d, c.alg_c());
        range = range.max(res);
        cols.push(coeffs.into_data());
    }
    if range > tol.membership {
        return Err(Error::RangeViolation(range));
    }
    check_coaction(ComplexMatrix::from_columns(d.len() * c.alg_c().len(), &cols), d, c, tol)
}

/// `Δ_C` as a coaction of `C` on itself.
pub fn comultiplication_coaction(c: &QuantumGroup, tol: &Tolerances) -> Result<Coaction> {
    check_coaction(c.delta_c().clone(), c.alg_c(), c, tol)
}

/// `γ(d) = d ⊗ 1`.
pub fn trivial_coaction(d: &OperatorSpan, c: &QuantumGroup, tol: &Tolerances) -> Result<Coaction> {
    let unit = c.alg_c().unit_coefficients();
    let (nd, nc) = (d.len(), c.alg_c().len());
    let mut gamma = ComplexMatrix::zeros(nd * nc, nd);
    for i in 0..nd {
        for (j, u) in unit.iter().enumerate() {
            gamma[(i * nc + j, i)] = *u;
        }
    }
    check_coaction(gamma, d, c, tol)
}

/// `Δ_C ⊕ Δ_C` on `C ⊕ C`, block-diagonal on `H_C ⊕ H_C`.
pub fn direct_sum_coaction(c: &QuantumGroup, tol: &Tolerances) -> Result<Coaction> {
    let nc = c.alg_c().len();
    let d = c.alg_c().direct_sum(c.alg_c());
    let mut gamma = ComplexMatrix::zeros(2 * nc * nc, 2 * nc);
    for k in 0..nc {
        for i in 0..nc {
            for j in 0..nc {
                let v = c.delta_c()[(i * nc + j, k)];
                gamma[(i * nc + j, k)] = v;
                gamma[((nc + i) * nc + j, nc + k)] = v;
            }
        }
    }
    check_coaction(gamma, &d, c, tol)
}

/// The coordinate projections `C ⊕ C → C` as coefficient matrices.
pub fn direct_sum_projections(nc: usize) -> [ComplexMatrix; 2] {
    let first = ComplexMatrix::from_fn(nc, 2 * nc, |i, j| if i == j { ONE } else { crate::tensorleg::ZERO });
    let second = ComplexMatrix::from_fn(nc, 2 * nc, |i, j| if i + nc == j { ONE } else { crate::tensorleg::ZERO });
    [first, second]
}

/// `m ⊗ x ↦ m ⊗ Δ_C(x)` on `B(C^k) ⊗ C`.
pub fn amplified_coaction(k: usize, c: &QuantumGroup, tol: &Tolerances) -> Result<Coaction> {
    let units = OperatorSpan::matrix_units(k);
    let elements: Vec<ComplexMatrix> =
        units.basis().iter().flat_map(|m| c.alg_c().basis().iter().map(move |x| m.kron(x))).collect();
    let d = OperatorSpan::from_orthonormal(k * c.dim(), elements, tol.exact)
        .ok_or_else(|| Error::Format("amplified algebra basis is not orthonormal".into()))?;
    let space = LegSpace::new([k, c.dim(), c.dim()]);
    coaction_from_operators(
        &d,
        c,
        |x| {
            // x on C^k ⊗ H_C; the comultiplication acts on the second leg
            let w23 = embed_on_legs(c.w(), &space, &[2, 3]).expect("legs fit");
            let lifted = embed_on_legs(x, &space, &[1, 2]).expect("legs fit");
            ComplexMatrix::product(&[&w23, &lifted, &w23.adjoint()])
        },
        tol,
    )
}

/// Residual of `(π ⊗ id)γ_src = γ_dst π` for a linear map `π : D_src → D_dst` given by coefficients.
pub fn equivariance_residual(pi: &ComplexMatrix, src: &Coaction, dst: &Coaction) -> Result<f64> {
    let (ns, nt) = (src.d.len(), dst.d.len());
    let nc = src.qg.alg_c().len();
    if pi.shape() != (nt, ns) || !src.qg.same_as(&dst.qg) {
        return Err(Error::DimensionMismatch("equivariance map does not connect the coactions".into()));
    }
    let rhs = dst.gamma.matmul(pi);
    // π may annihilate basis elements, so both sides are measured against ‖π‖ ‖γ_src(d_k)‖
    let pi_norm = pi.frobenius_norm();
    let mut worst: f64 = 0.0;
    for k in 0..ns {
        let col = CoeffTensor::from_column(&src.gamma, k, vec![ns, nc]);
        let scale = pi_norm * col.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let lhs = col.map_factor(0, pi, &[nt]);
        worst = worst.max(lhs.scaled_residual(&CoeffTensor::from_column(&rhs, k, vec![nt, nc]), scale));
    }
    Ok(worst)
}

// ---------------------------------------------------------------------------
// induction
// ---------------------------------------------------------------------------

/// Induced coaction with the residual of its defining linear solve.
#[derive(Clone, Debug)]
pub struct Induced {
    pub coaction: Coaction,
    pub solve_residual: f64,
    /// Rank deficit of `γ ⊗ id_A`; zero means the solution is unique.
    pub rank_deficit: usize,
}

/// Solves `(γ ⊗ id_A)α(d) = (id_D ⊗ Δ_R)γ(d)` for the coaction `α` of `A` on `D`.
pub fn induce_coaction(gamma: &Coaction, dr: &RightQGHom, tol: &Tolerances) -> Result<Coaction> {
    Ok(induce_coaction_detailed(gamma, dr, tol)?.coaction)
}

pub fn induce_coaction_detailed(gamma: &Coaction, dr: &RightQGHom, tol: &Tolerances) -> Result<Induced> {
    if !gamma.qg.same_as(dr.source()) {
        return Err(Error::SourceTargetMismatch("coaction and right homomorphism act through different quantum groups".into()));
    }
    let a = dr.target();
    let (nd, nc, na) = (gamma.d.len(), gamma.qg.alg_c().len(), a.alg_c().len());
    // γ ⊗ id_A is γ ⊗ I on row-major coefficients, so its pseudoinverse acts blockwise:
    // stack the (id ⊗ Δ_R)γ(d_k), reshaped to (D⊗C) × A, as column blocks.
    let mut rhs = ComplexMatrix::zeros(nd * nc, nd * na);
    for k in 0..nd {
        let t = CoeffTensor::from_column(&gamma.gamma, k, vec![nd, nc]).map_factor(1, dr.matrix(), &[nc, na]);
        for row in 0..nd * nc {
            for l in 0..na {
                rhs[(row, k * na + l)] = t.data[row * na + l];
            }
        }
    }
    let rank_deficit = nd - rank(&gamma.gamma, tol.rank);
    let x = solve_least_squares(&gamma.gamma, &rhs, tol.rank);
    let solve_residual = relative_residual(&gamma.gamma.matmul(&x), &rhs);
    if solve_residual > tol.equation || rank_deficit != 0 {
        return Err(Error::SolveFailure(format!("residual {solve_residual:.3e}, rank deficit {rank_deficit}")));
    }
    let mut alpha = ComplexMatrix::zeros(nd * na, nd);
    for k in 0..nd {
        for i in 0..nd {
            for l in 0..na {
                alpha[(i * na + l, k)] = x[(i, k * na + l)];
            }
        }
    }
    let mut coaction = check_coaction(alpha, &gamma.d, a, tol)?;
    coaction.checks.0.insert(0, crate::checks::Check::new("solve", solve_residual, tol.equation));
    Ok(Induced { coaction, solve_residual, rank_deficit })
}

/// Outcome of comparing `F_b ∘ F_a` with `F_γ`.
#[derive(Clone, Debug)]
pub struct FunctorComposition {
    /// The right homomorphism `γ : C → C ⊗ B` read off by induction.
    pub composite: RightQGHom,
    /// Largest coefficient residual between the two inductions over the test coactions.
    pub induction_residual: f64,
    /// Residual between the bicharacter of `γ` and the composed bicharacter.
    pub bicharacter_residual: f64,
}

impl FunctorComposition {
    pub fn residual(&self) -> f64 {
        self.induction_residual.max(self.bicharacter_residual)
    }
}

/// Builds `γ` by inducing the coaction `Δ_R^a` of `A` on `C` along `b` and checks
/// `F_b ∘ F_a = F_γ` on `coactions`, and that `γ` carries the composed bicharacter.
pub fn compose_functors_check(
    a: &RightQGHom,
    b: &RightQGHom,
    coactions: &[Coaction],
    tol: &Tolerances,
) -> Result<FunctorComposition> {
    let c = a.source();
    let as_coaction = check_coaction(a.matrix().clone(), c.alg_c(), a.target(), tol)?;
    let gamma = induce_coaction(&as_coaction, b, tol)?;
    let composite = check_right_hom(c, b.target(), gamma.gamma.clone(), tol)?;

    let mut induction_residual: f64 = 0.0;
    for delta in coactions {
        let twice = induce_coaction(&induce_coaction(delta, a, tol)?, b, tol)?;
        let once = induce_coaction(delta, &composite, tol)?;
        induction_residual = induction_residual.max(relative_residual(&twice.gamma, &once.gamma));
    }

    let via_hom = bicharacter_from_right(&composite, tol)?;
    let composed = compose(&bicharacter_from_right(a, tol)?, &bicharacter_from_right(b, tol)?, tol)?;
    let bicharacter_residual = relative_residual(via_hom.v(), composed.v());
    Ok(FunctorComposition { composite, induction_residual, bicharacter_residual })
}

/// Residual of `γ = (id_C ⊗ f) ∘ a` for the composite of `a` with the right
/// homomorphism of a Hopf *-homomorphism `f`.
pub fn hopf_composite_residual(composite: &RightQGHom, a: &RightQGHom, f: &HopfHom) -> f64 {
    let nc = a.source().alg_c().len();
    let (na, nb) = (f.source().alg_c().len(), f.target().alg_c().len());
    let mut worst: f64 = 0.0;
    for k in 0..nc {
        let pushed = CoeffTensor::from_column(a.matrix(), k, vec![nc, na]).map_factor(1, f.matrix(), &[nb]);
        worst = worst.max(pushed.residual(&CoeffTensor::from_column(composite.matrix(), k, vec![nc, nb])));
    }
    worst
}

// ---------------------------------------------------------------------------
// corepresentations
// ---------------------------------------------------------------------------

/// A unitary `X` on `H ⊗ H_C` with `(id ⊗ Δ_C)X = X_12 X_13`.
#[derive(Clone, Debug)]
pub struct Corepresentation {
    qg: QuantumGroup,
    x: ComplexMatrix,
    space_dim: usize,
    checks: Checks,
}

impl Corepresentation {
    pub fn qg(&self) -> &QuantumGroup {
        &self.qg
    }

    pub fn x(&self) -> &ComplexMatrix {
        &self.x
    }

    /// Dimension of `H`.
    pub fn space_dim(&self) -> usize {
        self.space_dim
    }

    pub fn checks(&self) -> &Checks {
        &self.checks
    }
}

pub fn check_corepresentation(x: ComplexMatrix, c: &QuantumGroup, tol: &Tolerances) -> Result<Corepresentation> {
    let dc = c.dim();
    if !x.is_square() || x.rows() % dc != 0 {
        return Err(Error::DimensionMismatch(format!("{}x{} operator is not on H ⊗ H_C", x.rows(), x.cols())));
    }
    let h = x.rows() / dc;
    let mut checks = Checks::default();
    checks.push("unitarity", x.unitarity_residual(), tol.exact);
    let (slices, membership) = split_second_leg(&x, h, c.alg_c());
    checks.push("membership", membership, tol.membership);
    let n = h * dc * dc;
    let mut lhs = ComplexMatrix::zeros(n, n);
    for (s, d) in slices.iter().zip(c.delta_c_ops()) {
        lhs.add_scaled(ONE, &s.kron(d));
    }
    let space = LegSpace::new([h, dc, dc]);
    let rhs = embed_on_legs(&x, &space, &[1, 2])?.matmul(&embed_on_legs(&x, &space, &[1, 3])?);
    checks.push("corepresentation", relative_residual(&lhs, &rhs), tol.equation);
    if let Some(f) = checks.first_failure() {
        return Err(Error::CoactionViolation { condition: f.name.clone(), residual: f.residual });
    }
    Ok(Corepresentation { qg: c.clone(), x, space_dim: h, checks })
}

/// `γ(k) = X(k ⊗ 1)X*` on `B(H)`.
pub fn adjoint_coaction(x: &Corepresentation, tol: &Tolerances) -> Result<Coaction> {
    let d = OperatorSpan::matrix_units(x.space_dim);
    let one = ComplexMatrix::identity(x.qg.dim());
    let x_star = x.x.adjoint();
    coaction_from_operators(&d, &x.qg, |k| ComplexMatrix::product(&[&x.x, &k.kron(&one), &x_star]), tol)
}

/// The coactions exercised by the induction tests: `Δ_C`, a trivial coaction on
/// `B(C^2)`, `Ad W` on `B(H_C)`, `Δ_C ⊕ Δ_C` and `id ⊗ Δ_C` on `B(C^2) ⊗ C`.
pub fn standard_coactions(c: &QuantumGroup, tol: &Tolerances) -> Result<Vec<(&'static str, Coaction)>> {
    let regular = check_corepresentation(c.w().clone(), c, tol)?;
    Ok(vec![
        ("comultiplication", comultiplication_coaction(c, tol)?),
        ("trivial", trivial_coaction(&OperatorSpan::matrix_units(2), c, tol)?),
        ("adjoint-regular", adjoint_coaction(&regular, tol)?),
        ("direct-sum", direct_sum_coaction(c, tol)?),
        ("amplified", amplified_coaction(2, c, tol)?),
    ])
}

/// Residuals recorded while pushing a corepresentation forward.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PushforwardResiduals {
    pub solve: f64,
    /// `α(E_cc) = E_cc ⊗ 1` for the corner projection.
    pub corner: f64,
    /// `α(k) = (Y ⊕ 1)(k ⊗ 1)(Y ⊕ 1)*` on the basis of `B(H ⊕ C)`.
    pub implementation: f64,
}

/// Pushes `x` forward along `v`: induces `Ad(X ⊕ 1)` on `B(H ⊕ C)` along the
/// right homomorphism of `v` and reads `Y` off the corner column.
pub fn pushforward_corep(
    x: &Corepresentation,
    v: &Bicharacter,
    tol: &Tolerances,
) -> Result<(Corepresentation, PushforwardResiduals)> {
    if !x.qg.same_as(v.source()) {
        return Err(Error::SourceTargetMismatch("corepresentation is not over the bicharacter's source".into()));
    }
    let c = &x.qg;
    let a = v.target();
    let h = x.space_dim;
    let corner = h;
    let (dc, da) = (c.dim(), a.dim());
    let extended = extend_by_trivial(&x.x, h, dc);
    let ext_corep = check_corepresentation(extended, c, tol)?;
    let gamma = adjoint_coaction(&ext_corep, tol)?;
    let dr = crate::homviews::right_from_bicharacter(v, tol)?;
    let induced = induce_coaction_detailed(&gamma, &dr, tol)?;
    let alpha = &induced.coaction;

    // α(E_{p,c}) = (Y ⊕ 1)(E_{p,c} ⊗ 1), so its (·, (c, η)) block holds Y[·, (p, η)]
    let mut y = ComplexMatrix::zeros(h * da, h * da);
    for p in 0..h {
        let img = alpha.apply(&ComplexMatrix::unit(h + 1, p, corner));
        for pp in 0..h {
            for ep in 0..da {
                for e in 0..da {
                    y[(pp * da + ep, p * da + e)] = img[(pp * da + ep, corner * da + e)];
                }
            }
        }
    }
    let corner_img = alpha.apply(&ComplexMatrix::unit(h + 1, corner, corner));
    let corner_res =
        relative_residual(&corner_img, &ComplexMatrix::unit(h + 1, corner, corner).kron(&ComplexMatrix::identity(da)));
    let y_ext = extend_by_trivial(&y, h, da);
    let y_ext_star = y_ext.adjoint();
    let one = ComplexMatrix::identity(da);
    let mut implementation: f64 = 0.0;
    for (k, img) in alpha.d.basis().iter().zip(&alpha.images) {
        implementation =
            implementation.max(relative_residual(img, &ComplexMatrix::product(&[&y_ext, &k.kron(&one), &y_ext_star])));
    }
    let residuals = PushforwardResiduals { solve: induced.solve_residual, corner: corner_res, implementation };
    if corner_res > tol.equation || implementation > tol.equation {
        return Err(Error::RecoveryFailure(format!(
            "corner residual {corner_res:.3e}, implementation residual {implementation:.3e}"
        )));
    }
    let pushed = check_corepresentation(y, a, tol).map_err(|e| match e {
        Error::CoactionViolation { condition, residual } => {
            Error::RecoveryFailure(format!("{condition} residual {residual:.3e}"))
        }
        other => other,
    })?;
    Ok((pushed, residuals))
}

/// `X ⊕ 1` on `(H ⊕ C) ⊗ K`, where `X` acts on `H ⊗ K` and `dim H = h`.
fn extend_by_trivial(x: &ComplexMatrix, h: usize, k: usize) -> ComplexMatrix {
    let n = (h + 1) * k;
    let mut out = ComplexMatrix::zeros(n, n);
    for r in 0..h * k {
        for c in 0..h * k {
            out[(r, c)] = x[(r, c)];
        }
    }
    for e in 0..k {
        out[(h * k + e, h * k + e)] = ONE;
    }
    out
}
