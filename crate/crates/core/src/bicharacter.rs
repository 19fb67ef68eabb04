//! Bicharacters: unitaries `V` on `H_C ⊗ H_A` that stand for quantum group
//! homomorphisms from `C` to `Â`.
//!
//! A unitary is accepted when it satisfies both operator equations
//!
//! * `V_23 W^C_12 = W^C_12 V_13 V_23` on `H_C ⊗ H_C ⊗ H_A`
//! * `W^A_23 V_12 = V_12 V_13 W^A_23` on `H_C ⊗ H_A ⊗ H_A`
//!
//! and, evaluated independently through coefficient expansions, the abstract ones
//! `(Δ_Ĉ ⊗ id)V = V_23 V_13`, `(id ⊗ Δ_A)V = V_12 V_13` with `V ∈ Ĉ ⊗ A`.

use crate::error::{Error, Result};
use crate::homviews::HopfHom;
use crate::qgroup::{dual_qg, dual_unitary, flip, QuantumGroup};
use crate::span::{assemble_pair, expand_pair, split_second_leg};
use crate::tensorleg::{embed_on_legs, extract_trivial_legs, relative_residual, ComplexMatrix, LegSpace, ONE};
use crate::tolerance::Tolerances;

/// Residuals of every bicharacter condition.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BicharacterResiduals {
    pub unitarity: f64,
    /// `V_23 W^C_12 = W^C_12 V_13 V_23`
    pub operator_source: f64,
    /// `W^A_23 V_12 = V_12 V_13 W^A_23`
    pub operator_target: f64,
    /// Distance of `V` from `Ĉ ⊗ A`.
    pub membership: f64,
    /// `(Δ_Ĉ ⊗ id)V = V_23 V_13`
    pub abstract_source: f64,
    /// `(id ⊗ Δ_A)V = V_12 V_13`
    pub abstract_target: f64,
}

impl BicharacterResiduals {
    /// Verdict of the operator formulation.
    pub fn operator_pass(&self, tol: &Tolerances) -> bool {
        self.unitarity <= tol.exact && self.operator_source <= tol.equation && self.operator_target <= tol.equation
    }

    /// Verdict of the abstract formulation.
    pub fn abstract_pass(&self, tol: &Tolerances) -> bool {
        self.unitarity <= tol.exact
            && self.membership <= tol.membership
            && self.abstract_source <= tol.equation
            && self.abstract_target <= tol.equation
    }

    /// Named residuals with their thresholds, in checking order.
    pub fn entries(&self, tol: &Tolerances) -> Vec<(&'static str, f64, f64)> {
        vec![
            ("unitarity", self.unitarity, tol.exact),
            ("operator-source", self.operator_source, tol.equation),
            ("operator-target", self.operator_target, tol.equation),
            ("membership", self.membership, tol.membership),
            ("abstract-source", self.abstract_source, tol.equation),
            ("abstract-target", self.abstract_target, tol.equation),
        ]
    }

    fn first_failure(&self, tol: &Tolerances) -> Option<(&'static str, f64)> {
        self.entries(tol).into_iter().find(|(_, r, t)| !(r <= t)).map(|(n, r, _)| (n, r))
    }
}

/// A verified bicharacter from `source` to `target`.
#[derive(Clone, Debug)]
pub struct Bicharacter {
    source: QuantumGroup,
    target: QuantumGroup,
    v: ComplexMatrix,
    residuals: BicharacterResiduals,
}

impl Bicharacter {
    pub fn source(&self) -> &QuantumGroup {
        &self.source
    }

    pub fn target(&self) -> &QuantumGroup {
        &self.target
    }

    pub fn v(&self) -> &ComplexMatrix {
        &self.v
    }

    pub fn residuals(&self) -> &BicharacterResiduals {
        &self.residuals
    }
}

/// Evaluates every bicharacter condition without deciding pass or fail.
pub fn bicharacter_residuals(v: &ComplexMatrix, c: &QuantumGroup, a: &QuantumGroup) -> Result<BicharacterResiduals> {
    let (dc, da) = (c.dim(), a.dim());
    if v.shape() != (dc * da, dc * da) {
        return Err(Error::DimensionMismatch(format!("V is {}x{} but H_C ⊗ H_A has dimension {}", v.rows(), v.cols(), dc * da)));
    }
    let unitarity = v.unitarity_residual();

    let cca = LegSpace::new([dc, dc, da]);
    let w12 = embed_on_legs(c.w(), &cca, &[1, 2])?;
    let v13 = embed_on_legs(v, &cca, &[1, 3])?;
    let v23 = embed_on_legs(v, &cca, &[2, 3])?;
    let operator_source = relative_residual(&v23.matmul(&w12), &ComplexMatrix::product(&[&w12, &v13, &v23]));
    let abstract_rhs_source = v23.matmul(&v13);

    let caa = LegSpace::new([dc, da, da]);
    let wa23 = embed_on_legs(a.w(), &caa, &[2, 3])?;
    let v12 = embed_on_legs(v, &caa, &[1, 2])?;
    let v13b = embed_on_legs(v, &caa, &[1, 3])?;
    let operator_target = relative_residual(&wa23.matmul(&v12), &ComplexMatrix::product(&[&v12, &v13b, &wa23]));
    let abstract_rhs_target = v12.matmul(&v13b);

    // abstract route: expand V in Ĉ ⊗ A and push the comultiplications through the coefficients
    let chat = c.alg_chat();
    let alg_a = a.alg_c();
    let (coeffs, membership) = expand_pair(v, chat, alg_a);

    let mut lhs_source = ComplexMatrix::zeros(dc * dc * da, dc * dc * da);
    for (j, aj) in alg_a.basis().iter().enumerate() {
        let mut z = ComplexMatrix::zeros(dc * dc, dc * dc);
        for (i, dy) in c.delta_chat_ops().iter().enumerate() {
            z.add_scaled(coeffs[(i, j)], dy);
        }
        lhs_source.add_scaled(ONE, &z.kron(aj));
    }
    let abstract_source = relative_residual(&lhs_source, &abstract_rhs_source);

    let mut lhs_target = ComplexMatrix::zeros(dc * da * da, dc * da * da);
    for (i, yi) in chat.basis().iter().enumerate() {
        let mut z = ComplexMatrix::zeros(da * da, da * da);
        for (j, da_op) in a.delta_c_ops().iter().enumerate() {
            z.add_scaled(coeffs[(i, j)], da_op);
        }
        lhs_target.add_scaled(ONE, &yi.kron(&z));
    }
    let abstract_target = relative_residual(&lhs_target, &abstract_rhs_target);

    Ok(BicharacterResiduals { unitarity, operator_source, operator_target, membership, abstract_source, abstract_target })
}

/// Verifies `v` as a bicharacter from `c` to `a`.
pub fn check_bicharacter(v: ComplexMatrix, c: &QuantumGroup, a: &QuantumGroup, tol: &Tolerances) -> Result<Bicharacter> {
    let residuals = bicharacter_residuals(&v, c, a)?;
    if let Some((equation, residual)) = residuals.first_failure(tol) {
        return Err(Error::BicharacterViolation { equation: equation.to_string(), residual });
    }
    Ok(Bicharacter { source: c.clone(), target: a.clone(), v, residuals })
}

/// The identity arrow, carried by `W^C`.
pub fn identity(c: &QuantumGroup, tol: &Tolerances) -> Result<Bicharacter> {
    check_bicharacter(c.w().clone(), c, c, tol)
}

/// Composite `C → B` of `C → A` and `A → B`, read off from
/// `(V^CA_12)* V^AB_23 V^CA_12 (V^AB_23)* = V^CB_13`.
pub fn compose(vca: &Bicharacter, vab: &Bicharacter, tol: &Tolerances) -> Result<Bicharacter> {
    Ok(compose_with_residual(vca, vab, tol)?.0)
}

/// [`compose`] together with the leg-extraction residual.
pub fn compose_with_residual(vca: &Bicharacter, vab: &Bicharacter, tol: &Tolerances) -> Result<(Bicharacter, f64)> {
    if !vca.target.same_as(&vab.source) {
        return Err(Error::SourceTargetMismatch("target of the first bicharacter is not the source of the second".into()));
    }
    let space = LegSpace::new([vca.source.dim(), vca.target.dim(), vab.target.dim()]);
    let x12 = embed_on_legs(&vca.v, &space, &[1, 2])?;
    let y23 = embed_on_legs(&vab.v, &space, &[2, 3])?;
    let product = ComplexMatrix::product(&[&x12.adjoint(), &y23, &x12, &y23.adjoint()]);
    let (v, residual) = extract_trivial_legs(&product, &space, &[2], tol.equation)?.require()?;
    let composite = check_bicharacter(v, &vca.source, &vab.target, tol)?;
    Ok((composite, residual))
}

/// Bicharacter `(id ⊗ f)(W^C)` of a Hopf *-homomorphism `f : C → A`.
pub fn from_hopf_hom(f: &HopfHom, tol: &Tolerances) -> Result<Bicharacter> {
    let c = f.source();
    let (slices, _) = split_second_leg(c.w(), c.dim(), c.alg_c());
    let n = c.dim() * f.target().dim();
    let mut v = ComplexMatrix::zeros(n, n);
    for (s, img) in slices.iter().zip(f.images()) {
        v.add_scaled(ONE, &s.kron(img));
    }
    check_bicharacter(v, c, f.target(), tol)
}

/// Dual bicharacter `ΣV*Σ` from `Â` to `Ĉ`.
pub fn dual_bicharacter(v: &Bicharacter, tol: &Tolerances) -> Result<Bicharacter> {
    let source = dual_qg(&v.target, tol)?;
    let target = dual_qg(&v.source, tol)?;
    dual_bicharacter_with(v, &source, &target, tol)
}

/// [`dual_bicharacter`] with the dual quantum groups supplied, for callers that
/// dualize many bicharacters between the same quantum groups.
pub fn dual_bicharacter_with(
    v: &Bicharacter,
    target_hat: &QuantumGroup,
    source_hat: &QuantumGroup,
    tol: &Tolerances,
) -> Result<Bicharacter> {
    let (dc, da) = (v.source.dim(), v.target.dim());
    if target_hat.w() != &dual_unitary(v.target.w(), da) || source_hat.w() != &dual_unitary(v.source.w(), dc) {
        return Err(Error::SourceTargetMismatch("supplied quantum groups are not the duals".into()));
    }
    let vhat = ComplexMatrix::product(&[&flip(dc, da), &v.v.adjoint(), &flip(da, dc)]);
    check_bicharacter(vhat, target_hat, source_hat, tol)
}

/// Residual of `(R_Ĉ ⊗ R_A)(V) = V` for the unitary antipodes.
pub fn check_r_invariance(v: &Bicharacter) -> Result<f64> {
    let r_hat = v.source.kac_r_hat().ok_or_else(|| Error::NotKacType("source dual has no unitary antipode".into()))?;
    let r_a = v.target.kac_r().ok_or_else(|| Error::NotKacType("target has no unitary antipode".into()))?;
    let chat = v.source.alg_chat();
    let alg_a = v.target.alg_c();
    let (coeffs, _) = expand_pair(&v.v, chat, alg_a);
    let moved = ComplexMatrix::product(&[r_hat, &coeffs, &r_a.transpose()]);
    Ok(relative_residual(&assemble_pair(&moved, chat, alg_a), &v.v))
}
