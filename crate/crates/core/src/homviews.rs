//! Equivalent descriptions of a quantum group homomorphism `C → Â`:
//! Hopf *-homomorphisms, right homomorphisms `Δ_R : C → C ⊗ A` and left
//! homomorphisms `Δ_L : C → A ⊗ C`, each convertible to and from a bicharacter.
//!
//! Maps are stored as coefficient matrices relative to the orthonormal algebra
//! bases of the quantum groups involved, alongside the operators they produce.

use crate::bicharacter::{check_bicharacter, Bicharacter};
use crate::checks::Checks;
use crate::error::{Error, Result};
use crate::qgroup::{flip, unitary_antipode, QuantumGroup};
use crate::span::{assemble_pair, expand_pair, split_first_leg, split_second_leg, CoeffTensor, OperatorSpan};
use crate::tensorleg::{
    embed_on_legs, extract_trivial_legs, rank, relative_residual, scaled_residual, ComplexMatrix, LegSpace, ONE,
};
use crate::tolerance::Tolerances;

// ---------------------------------------------------------------------------
// shared map checks
// ---------------------------------------------------------------------------

/// Operator images `Σ_k coeff_k(x) image_k` of a linear map given on a basis.
pub(crate) fn apply_on_basis(domain: &OperatorSpan, images: &[ComplexMatrix], x: &ComplexMatrix) -> ComplexMatrix {
    let coeffs = domain.coefficients(x);
    let (r, c) = images[0].shape();
    let mut out = ComplexMatrix::zeros(r, c);
    for (k, img) in coeffs.iter().zip(images) {
        out.add_scaled(*k, img);
    }
    out
}

/// Multiplicativity, *-preservation and unitality of a map given by basis images.
pub(crate) fn star_hom_checks(domain: &OperatorSpan, images: &[ComplexMatrix], tol: &Tolerances, checks: &mut Checks) {
    let basis = domain.basis();
    let mut mult: f64 = 0.0;
    let mut star: f64 = 0.0;
    for (i, a) in basis.iter().enumerate() {
        star = star.max(relative_residual(&apply_on_basis(domain, images, &a.adjoint()), &images[i].adjoint()));
        for (j, b) in basis.iter().enumerate() {
            let lhs = apply_on_basis(domain, images, &a.matmul(b));
            let scale = images[i].frobenius_norm() * images[j].frobenius_norm();
            mult = mult.max(scaled_residual(&lhs, &images[i].matmul(&images[j]), scale));
        }
    }
    let unit_img = apply_on_basis(domain, images, &ComplexMatrix::identity(domain.dim()));
    let unit = relative_residual(&unit_img, &ComplexMatrix::identity(unit_img.rows()));
    checks.push("multiplicative", mult, tol.equation);
    checks.push("star-preserving", star, tol.exact.max(tol.equation));
    checks.push("unital", unit, tol.exact.max(tol.equation));
}

/// Rank deficit of a coefficient matrix with `n` columns.
pub(crate) fn injectivity_deficit(coeffs: &ComplexMatrix, tol: &Tolerances) -> f64 {
    (coeffs.cols() - rank(coeffs, tol.rank)) as f64
}

/// Rank deficit of the products `image_i · factor_j` inside `left ⊗ right`,
/// where the target dimension is `left.len() * right.len()`.
pub(crate) fn density_deficit(
    products: impl Iterator<Item = ComplexMatrix>,
    left: &OperatorSpan,
    right: &OperatorSpan,
    tol: &Tolerances,
) -> f64 {
    let n = left.len() * right.len();
    let cols: Vec<Vec<_>> = products.map(|p| expand_pair(&p, left, right).0.into_data()).collect();
    let m = ComplexMatrix::from_columns(n, &cols);
    (n - rank(&m, tol.rank)) as f64
}

fn coefficient_columns(images: &[ComplexMatrix], left: &OperatorSpan, right: &OperatorSpan) -> (ComplexMatrix, f64) {
    let mut cols = Vec::with_capacity(images.len());
    let mut worst: f64 = 0.0;
    for img in images {
        let (c, res) = expand_pair(img, left, right);
        worst = worst.max(res);
        cols.push(c.into_data());
    }
    (ComplexMatrix::from_columns(left.len() * right.len(), &cols), worst)
}

fn images_from_coefficients(coeffs: &ComplexMatrix, left: &OperatorSpan, right: &OperatorSpan) -> Vec<ComplexMatrix> {
    (0..coeffs.cols())
        .map(|k| {
            let m = ComplexMatrix::from_vec(left.len(), right.len(), coeffs.column(k));
            assemble_pair(&m, left, right)
        })
        .collect()
}

fn shape_check(coeffs: &ComplexMatrix, rows: usize, cols: usize, what: &str) -> Result<()> {
    if coeffs.shape() != (rows, cols) {
        return Err(Error::DimensionMismatch(format!(
            "{what} coefficient matrix is {}x{}, expected {rows}x{cols}",
            coeffs.rows(),
            coeffs.cols()
        )));
    }
    Ok(())
}

fn fail_on(checks: &Checks, make: impl Fn(String, f64) -> Error) -> Result<()> {
    match checks.first_failure() {
        Some(c) => Err(make(c.name.clone(), c.residual)),
        None => Ok(()),
    }
}

// ---------------------------------------------------------------------------
// Hopf *-homomorphisms
// ---------------------------------------------------------------------------

/// A Hopf *-homomorphism `f : C → A` with `Δ_A ∘ f = (f ⊗ f) ∘ Δ_C`.
#[derive(Clone, Debug)]
pub struct HopfHom {
    source: QuantumGroup,
    target: QuantumGroup,
    map: ComplexMatrix,
    images: Vec<ComplexMatrix>,
    checks: Checks,
}

impl HopfHom {
    pub fn source(&self) -> &QuantumGroup {
        &self.source
    }

    pub fn target(&self) -> &QuantumGroup {
        &self.target
    }

    /// Coefficient matrix, `n_A × n_C`.
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.map
    }

    /// `f(x_k)` for the basis of `C`.
    pub fn images(&self) -> &[ComplexMatrix] {
        &self.images
    }

    pub fn checks(&self) -> &Checks {
        &self.checks
    }

    pub fn apply(&self, x: &ComplexMatrix) -> ComplexMatrix {
        apply_on_basis(self.source.alg_c(), &self.images, x)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &HopfHom, tol: &Tolerances) -> Result<HopfHom> {
        if !self.target.same_as(&next.source) {
            return Err(Error::SourceTargetMismatch("Hopf homomorphisms are not composable".into()));
        }
        check_hopf_hom(&self.source, &next.target, next.map.matmul(&self.map), tol)
    }
}

/// Validates a coefficient matrix as a Hopf *-homomorphism `c → a`.
pub fn check_hopf_hom(c: &QuantumGroup, a: &QuantumGroup, map: ComplexMatrix, tol: &Tolerances) -> Result<HopfHom> {
    let (images, checks) = hopf_parts(c, a, &map, tol)?;
    fail_on(&checks, |condition, residual| Error::HopfHomViolation { condition, residual })?;
    Ok(HopfHom { source: c.clone(), target: a.clone(), map, images, checks })
}

/// Every Hopf *-homomorphism residual of `map`, failing only on a shape mismatch.
pub fn hopf_hom_checks(c: &QuantumGroup, a: &QuantumGroup, map: &ComplexMatrix, tol: &Tolerances) -> Result<Checks> {
    Ok(hopf_parts(c, a, map, tol)?.1)
}

fn hopf_parts(c: &QuantumGroup, a: &QuantumGroup, map: &ComplexMatrix, tol: &Tolerances) -> Result<(Vec<ComplexMatrix>, Checks)> {
    let (nc, na) = (c.alg_c().len(), a.alg_c().len());
    shape_check(map, na, nc, "Hopf homomorphism")?;
    let images: Vec<ComplexMatrix> = (0..nc).map(|k| a.alg_c().element(&map.column(k))).collect();
    let mut checks = Checks::default();
    star_hom_checks(c.alg_c(), &images, tol, &mut checks);
    // Δ_A f = (f ⊗ f) Δ_C on coefficients
    let mut comult: f64 = 0.0;
    for k in 0..nc {
        let lhs = CoeffTensor::from_column(&a.delta_c().matmul(map), k, vec![na, na]);
        let rhs = CoeffTensor::from_column(c.delta_c(), k, vec![nc, nc]).map_factor(0, map, &[na]).map_factor(1, map, &[na]);
        comult = comult.max(lhs.residual(&rhs));
    }
    checks.push("comultiplication", comult, tol.equation);
    Ok((images, checks))
}

/// Residual of `(f̂ ⊗ id)(W^A) = (id ⊗ f)(W^C)` for `f : C → A` and `f̂ : Â → Ĉ`.
pub fn dual_hopf_relation(f: &HopfHom, fhat: &HopfHom) -> Result<f64> {
    let (c, a) = (&f.source, &f.target);
    if fhat.source.dim() != a.dim() || fhat.target.dim() != c.dim() {
        return Err(Error::SourceTargetMismatch("dual homomorphism acts on the wrong Hilbert spaces".into()));
    }
    let (a_slices, split_a) = split_first_leg(a.w(), fhat.source.alg_c(), a.dim());
    let n = c.dim() * a.dim();
    let mut lhs = ComplexMatrix::zeros(n, n);
    for (img, s) in fhat.images.iter().zip(&a_slices) {
        lhs.add_scaled(ONE, &img.kron(s));
    }
    let (c_slices, split_c) = split_second_leg(c.w(), c.dim(), c.alg_c());
    let mut rhs = ComplexMatrix::zeros(n, n);
    for (s, img) in c_slices.iter().zip(&f.images) {
        rhs.add_scaled(ONE, &s.kron(img));
    }
    Ok(relative_residual(&lhs, &rhs).max(split_a).max(split_c))
}

// ---------------------------------------------------------------------------
// right homomorphisms
// ---------------------------------------------------------------------------

/// A right quantum group homomorphism `Δ_R : C → C ⊗ A`.
#[derive(Clone, Debug)]
pub struct RightQGHom {
    source: QuantumGroup,
    target: QuantumGroup,
    delta_r: ComplexMatrix,
    images: Vec<ComplexMatrix>,
    checks: Checks,
}

impl RightQGHom {
    pub fn source(&self) -> &QuantumGroup {
        &self.source
    }

    pub fn target(&self) -> &QuantumGroup {
        &self.target
    }

    /// Coefficient matrix, rows indexed by `i * n_A + j` for `x_i ⊗ a_j`.
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.delta_r
    }

    pub fn images(&self) -> &[ComplexMatrix] {
        &self.images
    }

    pub fn checks(&self) -> &Checks {
        &self.checks
    }

    pub fn apply(&self, x: &ComplexMatrix) -> ComplexMatrix {
        apply_on_basis(self.source.alg_c(), &self.images, x)
    }
}

fn right_checks(
    c: &QuantumGroup,
    a: &QuantumGroup,
    delta_r: &ComplexMatrix,
    images: &[ComplexMatrix],
    tol: &Tolerances,
) -> Checks {
    let (nc, na) = (c.alg_c().len(), a.alg_c().len());
    let mut checks = Checks::default();
    star_hom_checks(c.alg_c(), images, tol, &mut checks);
    let mut left_square: f64 = 0.0;
    let mut right_square: f64 = 0.0;
    for k in 0..nc {
        let dr = CoeffTensor::from_column(delta_r, k, vec![nc, na]);
        let dc = CoeffTensor::from_column(c.delta_c(), k, vec![nc, nc]);
        // (Δ_C ⊗ id)Δ_R = (id ⊗ Δ_R)Δ_C
        left_square = left_square.max(dr.map_factor(0, c.delta_c(), &[nc, nc]).residual(&dc.map_factor(1, delta_r, &[nc, na])));
        // (id ⊗ Δ_A)Δ_R = (Δ_R ⊗ id)Δ_R
        right_square = right_square.max(dr.map_factor(1, a.delta_c(), &[na, na]).residual(&dr.map_factor(0, delta_r, &[nc, na])));
    }
    checks.push("coproduct-square", left_square, tol.equation);
    checks.push("action-square", right_square, tol.equation);
    checks.push("injective", injectivity_deficit(delta_r, tol), 0.0);
    let products = images
        .iter()
        .flat_map(|img| a.alg_c().basis().iter().map(move |aj| img.matmul(&ComplexMatrix::identity(c.dim()).kron(aj))));
    checks.push("podles-density", density_deficit(products, c.alg_c(), a.alg_c(), tol), 0.0);
    // (id ⊗ Δ_R)(W) = W_12 V_13 is checked by the bicharacter conversion
    checks
}

/// Validates a coefficient matrix as a right homomorphism `c → c ⊗ a`.
pub fn check_right_hom(c: &QuantumGroup, a: &QuantumGroup, delta_r: ComplexMatrix, tol: &Tolerances) -> Result<RightQGHom> {
    let (nc, na) = (c.alg_c().len(), a.alg_c().len());
    shape_check(&delta_r, nc * na, nc, "right homomorphism")?;
    let images = images_from_coefficients(&delta_r, c.alg_c(), a.alg_c());
    let checks = right_checks(c, a, &delta_r, &images, tol);
    fail_on(&checks, |condition, residual| Error::HomViolation { condition, residual })?;
    Ok(RightQGHom { source: c.clone(), target: a.clone(), delta_r, images, checks })
}

/// Every right homomorphism residual of `delta_r`, failing only on a shape mismatch.
pub fn right_hom_checks(c: &QuantumGroup, a: &QuantumGroup, delta_r: &ComplexMatrix, tol: &Tolerances) -> Result<Checks> {
    shape_check(delta_r, c.alg_c().len() * a.alg_c().len(), c.alg_c().len(), "right homomorphism")?;
    Ok(right_checks(c, a, delta_r, &images_from_coefficients(delta_r, c.alg_c(), a.alg_c()), tol))
}

/// `Δ_R(x) = V(x ⊗ 1)V*`.
pub fn right_from_bicharacter(v: &Bicharacter, tol: &Tolerances) -> Result<RightQGHom> {
    let (c, a) = (v.source(), v.target());
    let one = ComplexMatrix::identity(a.dim());
    let v_star = v.v().adjoint();
    let raw: Vec<ComplexMatrix> =
        c.alg_c().basis().iter().map(|x| ComplexMatrix::product(&[v.v(), &x.kron(&one), &v_star])).collect();
    let (delta_r, range) = coefficient_columns(&raw, c.alg_c(), a.alg_c());
    if range > tol.membership {
        return Err(Error::RangeViolation(range));
    }
    let mut checks = Checks::default();
    checks.push("range", range, tol.membership);
    checks.extend(right_checks(c, a, &delta_r, &raw, tol));
    fail_on(&checks, |condition, residual| Error::HomViolation { condition, residual })?;
    Ok(RightQGHom { source: c.clone(), target: a.clone(), delta_r, images: raw, checks })
}

/// Inverse of [`right_from_bicharacter`]: `V_13 = W_12* (id ⊗ Δ_R)(W)`.
pub fn bicharacter_from_right(dr: &RightQGHom, tol: &Tolerances) -> Result<Bicharacter> {
    Ok(bicharacter_from_right_with_residual(dr, tol)?.0)
}

/// [`bicharacter_from_right`] together with the leg-extraction residual.
pub fn bicharacter_from_right_with_residual(dr: &RightQGHom, tol: &Tolerances) -> Result<(Bicharacter, f64)> {
    let (c, a) = (&dr.source, &dr.target);
    let (slices, _) = split_second_leg(c.w(), c.dim(), c.alg_c());
    let space = LegSpace::new([c.dim(), c.dim(), a.dim()]);
    let mut lifted = ComplexMatrix::zeros(space.total(), space.total());
    for (s, img) in slices.iter().zip(&dr.images) {
        lifted.add_scaled(ONE, &s.kron(img));
    }
    let w12 = embed_on_legs(c.w(), &space, &[1, 2])?;
    let (v, residual) = extract_trivial_legs(&w12.adjoint().matmul(&lifted), &space, &[2], tol.equation)?.require()?;
    Ok((check_bicharacter(v, c, a, tol)?, residual))
}

/// Residual of `(id ⊗ Δ_R)(W) = W_12 V_13`.
pub fn right_leg_equation(dr: &RightQGHom, v: &Bicharacter) -> Result<f64> {
    let (c, a) = (&dr.source, &dr.target);
    let (slices, _) = split_second_leg(c.w(), c.dim(), c.alg_c());
    let space = LegSpace::new([c.dim(), c.dim(), a.dim()]);
    let mut lifted = ComplexMatrix::zeros(space.total(), space.total());
    for (s, img) in slices.iter().zip(&dr.images) {
        lifted.add_scaled(ONE, &s.kron(img));
    }
    let rhs = embed_on_legs(c.w(), &space, &[1, 2])?.matmul(&embed_on_legs(v.v(), &space, &[1, 3])?);
    Ok(relative_residual(&lifted, &rhs))
}

// ---------------------------------------------------------------------------
// left homomorphisms
// ---------------------------------------------------------------------------

/// A left quantum group homomorphism `Δ_L : C → A ⊗ C`.
#[derive(Clone, Debug)]
pub struct LeftQGHom {
    source: QuantumGroup,
    target: QuantumGroup,
    delta_l: ComplexMatrix,
    images: Vec<ComplexMatrix>,
    checks: Checks,
}

impl LeftQGHom {
    pub fn source(&self) -> &QuantumGroup {
        &self.source
    }

    pub fn target(&self) -> &QuantumGroup {
        &self.target
    }

    /// Coefficient matrix, rows indexed by `i * n_C + j` for `a_i ⊗ x_j`.
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.delta_l
    }

    pub fn images(&self) -> &[ComplexMatrix] {
        &self.images
    }

    pub fn checks(&self) -> &Checks {
        &self.checks
    }

    pub fn apply(&self, x: &ComplexMatrix) -> ComplexMatrix {
        apply_on_basis(self.source.alg_c(), &self.images, x)
    }
}

fn left_checks(
    c: &QuantumGroup,
    a: &QuantumGroup,
    delta_l: &ComplexMatrix,
    images: &[ComplexMatrix],
    tol: &Tolerances,
) -> Checks {
    let (nc, na) = (c.alg_c().len(), a.alg_c().len());
    let mut checks = Checks::default();
    star_hom_checks(c.alg_c(), images, tol, &mut checks);
    let mut coproduct: f64 = 0.0;
    let mut action: f64 = 0.0;
    for k in 0..nc {
        let dl = CoeffTensor::from_column(delta_l, k, vec![na, nc]);
        let dc = CoeffTensor::from_column(c.delta_c(), k, vec![nc, nc]);
        // (id_A ⊗ Δ_C)Δ_L = (Δ_L ⊗ id_C)Δ_C
        coproduct = coproduct.max(dl.map_factor(1, c.delta_c(), &[nc, nc]).residual(&dc.map_factor(0, delta_l, &[na, nc])));
        // (Δ_A ⊗ id_C)Δ_L = (id_A ⊗ Δ_L)Δ_L
        action = action.max(dl.map_factor(0, a.delta_c(), &[na, na]).residual(&dl.map_factor(1, delta_l, &[na, nc])));
    }
    checks.push("coproduct-square", coproduct, tol.equation);
    checks.push("action-square", action, tol.equation);
    checks.push("injective", injectivity_deficit(delta_l, tol), 0.0);
    let products = images
        .iter()
        .flat_map(|img| a.alg_c().basis().iter().map(move |aj| aj.kron(&ComplexMatrix::identity(c.dim())).matmul(img)));
    checks.push("podles-density", density_deficit(products, a.alg_c(), c.alg_c(), tol), 0.0);
    checks
}

/// Validates a coefficient matrix as a left homomorphism `c → a ⊗ c`.
pub fn check_left_hom(c: &QuantumGroup, a: &QuantumGroup, delta_l: ComplexMatrix, tol: &Tolerances) -> Result<LeftQGHom> {
    let (nc, na) = (c.alg_c().len(), a.alg_c().len());
    shape_check(&delta_l, na * nc, nc, "left homomorphism")?;
    let images = images_from_coefficients(&delta_l, a.alg_c(), c.alg_c());
    let checks = left_checks(c, a, &delta_l, &images, tol);
    fail_on(&checks, |condition, residual| Error::HomViolation { condition, residual })?;
    Ok(LeftQGHom { source: c.clone(), target: a.clone(), delta_l, images, checks })
}

/// Every left homomorphism residual of `delta_l`, failing only on a shape mismatch.
pub fn left_hom_checks(c: &QuantumGroup, a: &QuantumGroup, delta_l: &ComplexMatrix, tol: &Tolerances) -> Result<Checks> {
    shape_check(delta_l, a.alg_c().len() * c.alg_c().len(), c.alg_c().len(), "left homomorphism")?;
    Ok(left_checks(c, a, delta_l, &images_from_coefficients(delta_l, a.alg_c(), c.alg_c()), tol))
}

/// `Δ_L(x) = (R_A ⊗ R_C)(V̂*(1 ⊗ R_C(x))V̂)` with `V̂ = ΣV*Σ`; needs both unitary antipodes.
pub fn left_from_bicharacter(v: &Bicharacter, tol: &Tolerances) -> Result<LeftQGHom> {
    let (c, a) = (v.source(), v.target());
    let r_c = unitary_antipode(c)?;
    let r_a = unitary_antipode(a)?;
    let (dc, da) = (c.dim(), a.dim());
    let vhat = ComplexMatrix::product(&[&flip(dc, da), &v.v().adjoint(), &flip(da, dc)]);
    let vhat_star = vhat.adjoint();
    let one = ComplexMatrix::identity(da);
    let (nc, na) = (c.alg_c().len(), a.alg_c().len());
    let mut delta_l = ComplexMatrix::zeros(na * nc, nc);
    let mut range: f64 = 0.0;
    for k in 0..nc {
        let rx = c.alg_c().element(&r_c.column(k));
        let inner = ComplexMatrix::product(&[&vhat_star, &one.kron(&rx), &vhat]);
        let (coeffs, res) = expand_pair(&inner, a.alg_c(), c.alg_c());
        range = range.max(res);
        let moved = ComplexMatrix::product(&[&r_a, &coeffs, &r_c.transpose()]);
        for (r, val) in moved.data().iter().enumerate() {
            delta_l[(r, k)] = *val;
        }
    }
    if range > tol.membership {
        return Err(Error::RangeViolation(range));
    }
    let images = images_from_coefficients(&delta_l, a.alg_c(), c.alg_c());
    let mut checks = Checks::default();
    checks.push("range", range, tol.membership);
    checks.extend(left_checks(c, a, &delta_l, &images, tol));
    checks.push("leg-equation", left_leg_equation_raw(c, a, &images, v.v())?, tol.equation);
    fail_on(&checks, |condition, residual| Error::HomViolation { condition, residual })?;
    Ok(LeftQGHom { source: c.clone(), target: a.clone(), delta_l, images, checks })
}

fn lift_left(c: &QuantumGroup, a: &QuantumGroup, images: &[ComplexMatrix]) -> (ComplexMatrix, LegSpace) {
    let (slices, _) = split_second_leg(c.w(), c.dim(), c.alg_c());
    let space = LegSpace::new([c.dim(), a.dim(), c.dim()]);
    let mut lifted = ComplexMatrix::zeros(space.total(), space.total());
    for (s, img) in slices.iter().zip(images) {
        lifted.add_scaled(ONE, &s.kron(img));
    }
    (lifted, space)
}

fn left_leg_equation_raw(c: &QuantumGroup, a: &QuantumGroup, images: &[ComplexMatrix], v: &ComplexMatrix) -> Result<f64> {
    let (lifted, space) = lift_left(c, a, images);
    let rhs = embed_on_legs(v, &space, &[1, 2])?.matmul(&embed_on_legs(c.w(), &space, &[1, 3])?);
    Ok(relative_residual(&lifted, &rhs))
}

/// Residual of `(id ⊗ Δ_L)(W) = V_12 W_13`.
pub fn left_leg_equation(dl: &LeftQGHom, v: &Bicharacter) -> Result<f64> {
    left_leg_equation_raw(&dl.source, &dl.target, &dl.images, v.v())
}

/// Inverse of [`left_from_bicharacter`]: `V_12 = (id ⊗ Δ_L)(W) W_13*`.
pub fn bicharacter_from_left(dl: &LeftQGHom, tol: &Tolerances) -> Result<Bicharacter> {
    Ok(bicharacter_from_left_with_residual(dl, tol)?.0)
}

/// [`bicharacter_from_left`] together with the leg-extraction residual.
pub fn bicharacter_from_left_with_residual(dl: &LeftQGHom, tol: &Tolerances) -> Result<(Bicharacter, f64)> {
    let (c, a) = (&dl.source, &dl.target);
    let (lifted, space) = lift_left(c, a, &dl.images);
    let w13 = embed_on_legs(c.w(), &space, &[1, 3])?;
    let (v, residual) = extract_trivial_legs(&lifted.matmul(&w13.adjoint()), &space, &[3], tol.equation)?.require()?;
    Ok((check_bicharacter(v, c, a, tol)?, residual))
}

/// Outcome of comparing a left and a right homomorphism with a common source.
#[derive(Clone, Debug, PartialEq)]
pub struct Compatibility {
    /// `(id_A ⊗ Δ_R)Δ_L = (Δ_L ⊗ id_B)Δ_R`, which always holds.
    pub square: f64,
    /// `(id_C ⊗ Δ_L)Δ_C = (Δ_R ⊗ id_C)Δ_C`, when both maps have the same target.
    pub cross: Option<f64>,
    /// Whether the cross equation holds, i.e. both maps come from one bicharacter.
    pub same_bicharacter: bool,
}

pub fn check_left_right_compatibility(dl: &LeftQGHom, dr: &RightQGHom, tol: &Tolerances) -> Result<Compatibility> {
    if !dl.source.same_as(&dr.source) {
        return Err(Error::SourceTargetMismatch("left and right homomorphisms have different sources".into()));
    }
    let c = &dl.source;
    let nc = c.alg_c().len();
    let na = dl.target.alg_c().len();
    let nb = dr.target.alg_c().len();
    let mut square: f64 = 0.0;
    for k in 0..nc {
        let l = CoeffTensor::from_column(&dl.delta_l, k, vec![na, nc]);
        let r = CoeffTensor::from_column(&dr.delta_r, k, vec![nc, nb]);
        square = square.max(l.map_factor(1, &dr.delta_r, &[nc, nb]).residual(&r.map_factor(0, &dl.delta_l, &[na, nc])));
    }
    let cross = if dl.target.same_as(&dr.target) {
        let mut worst: f64 = 0.0;
        for k in 0..nc {
            let dc = CoeffTensor::from_column(c.delta_c(), k, vec![nc, nc]);
            worst = worst.max(dc.map_factor(1, &dl.delta_l, &[na, nc]).residual(&dc.map_factor(0, &dr.delta_r, &[nc, na])));
        }
        Some(worst)
    } else {
        None
    };
    let same_bicharacter = cross.is_some_and(|r| r <= tol.equation);
    Ok(Compatibility { square, cross, same_bicharacter })
}
