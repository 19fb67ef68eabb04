//! Finite groups given by Cayley tables, and the quantum groups they generate.
//!
//! In the function-algebra picture `C0(G)` acts on `ℓ²(G)` by multiplication and
//! is generated by `W(δ_a ⊗ δ_b) = δ_{ab⁻¹} ⊗ δ_b`, that is `(Wξ)(s, t) = ξ(st, t)`.
//! The group-algebra picture `C*(G)` is its dual.

use std::collections::VecDeque;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homviews::{check_hopf_hom, HopfHom};
use crate::qgroup::{build_from_unitary, dual_qg, QuantumGroup};
use crate::tensorleg::{relative_residual, ComplexMatrix, C64};
use crate::tolerance::Tolerances;

/// A finite group with elements `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
}

/// JSON form: `{"order": n, "table": [[...], ...]}` with 0-based entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

/// Which quantum group a finite group is turned into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Picture {
    /// Functions on the group, `C0(G)`.
    C0,
    /// The group algebra `C*(G)`.
    Cstar,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn spec(&self) -> GroupSpec {
        GroupSpec { order: self.order, table: self.table.clone() }
    }

    pub fn is_abelian(&self) -> bool {
        self.non_commuting_pair().is_none()
    }

    fn non_commuting_pair(&self) -> Option<(usize, usize)> {
        (0..self.order).flat_map(|a| (0..self.order).map(move |b| (a, b))).find(|&(a, b)| self.table[a][b] != self.table[b][a])
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Subgroup generated by `gens`, as a membership mask.
    fn generated(&self, gens: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Greedy generating set: repeatedly adds the smallest element not yet generated.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut seen = self.generated(&gens);
        while let Some(next) = (0..self.order).find(|&x| !seen[x]) {
            gens.push(next);
            seen = self.generated(&gens);
        }
        gens
    }

    /// Right translation `δ_b ↦ δ_{bg}`. These span the group algebra in the dual picture.
    pub fn right_shift(&self, g: usize) -> ComplexMatrix {
        let perm: Vec<usize> = (0..self.order).map(|b| self.mul(b, g)).collect();
        ComplexMatrix::permutation(&perm)
    }

    /// `ρ_b : δ_a ↦ δ_{ab⁻¹}`, the first-leg factor of the function-algebra unitary.
    pub fn inverse_right_shift(&self, b: usize) -> ComplexMatrix {
        self.right_shift(self.inv(b))
    }
}

/// Validates a Cayley table.
pub fn build_group(table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
    let n = table.len();
    if n == 0 {
        return Err(Error::NotAGroup("empty table".into()));
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotAGroup(format!("row {i} has {} entries, expected {n}", row.len())));
        }
        if let Some(&bad) = row.iter().find(|&&x| x >= n) {
            return Err(Error::NotAGroup(format!("entry {bad} in row {i} is out of range")));
        }
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
    let mut inverse = vec![0; n];
    for x in 0..n {
        inverse[x] = (0..n)
            .find(|&y| table[x][y] == identity && table[y][x] == identity)
            .ok_or_else(|| Error::NotAGroup(format!("element {x} has no inverse")))?;
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(Error::NotAGroup(format!("not associative: ({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                }
            }
        }
    }
    Ok(FiniteGroup { order: n, table, inverse, identity })
}

pub fn build_group_from_spec(spec: &GroupSpec) -> Result<FiniteGroup> {
    if spec.order != spec.table.len() {
        return Err(Error::NotAGroup(format!("declared order {} but table has {} rows", spec.order, spec.table.len())));
    }
    build_group(spec.table.clone())
}

fn from_law(n: usize, law: impl Fn(usize, usize) -> usize) -> FiniteGroup {
    let table = (0..n).map(|a| (0..n).map(|b| law(a, b)).collect()).collect();
    build_group(table).expect("construction yields a group")
}

pub fn trivial() -> FiniteGroup {
    from_law(1, |_, _| 0)
}

/// `Z_n` with addition mod `n`.
pub fn cyclic(n: usize) -> FiniteGroup {
    from_law(n, |a, b| (a + b) % n)
}

/// `G × H` with `(g, h)` stored at index `g * |H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let m = h.order;
    from_law(g.order * m, |x, y| g.mul(x / m, y / m) * m + h.mul(x % m, y % m))
}

/// `S_3` as permutations of `{0, 1, 2}` in lexicographic order, `(στ)(x) = σ(τ(x))`.
pub fn symmetric3() -> FiniteGroup {
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    from_law(6, |a, b| {
        let comp = [perms[a][perms[b][0]], perms[a][perms[b][1]], perms[a][perms[b][2]]];
        perms.iter().position(|p| *p == comp).expect("closed under composition")
    })
}

/// Dihedral group of order 8 with `r^k s^e` stored at `k + 4e`.
pub fn dihedral4() -> FiniteGroup {
    from_law(8, |x, y| {
        let (a, e) = (x % 4, x / 4);
        let (b, f) = (y % 4, y / 4);
        let k = if e == 0 { (a + b) % 4 } else { (a + 4 - b) % 4 };
        k + 4 * ((e + f) % 2)
    })
}

/// Quaternion group `{±1, ±i, ±j, ±k}` with `±u` stored at `2u` and `2u + 1`.
pub fn quaternion() -> FiniteGroup {
    // unit products: (sign flip, unit) for u·v with units 1, i, j, k = 0..4
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    from_law(8, |x, y| {
        let (u, s) = (x / 2, x % 2);
        let (v, t) = (y / 2, y % 2);
        let (flip, w) = UNIT[u][v];
        2 * w + (s + t + flip) % 2
    })
}

/// The shipped corpus of groups of order at most 8, with file stems.
pub fn corpus() -> Vec<(&'static str, FiniteGroup)> {
    let z2 = cyclic(2);
    vec![
        ("z2", z2.clone()),
        ("z3", cyclic(3)),
        ("z4", cyclic(4)),
        ("z2xz2", direct_product(&z2, &z2)),
        ("z5", cyclic(5)),
        ("z6", cyclic(6)),
        ("s3", symmetric3()),
        ("z7", cyclic(7)),
        ("z8", cyclic(8)),
        ("z4xz2", direct_product(&cyclic(4), &z2)),
        ("z2xz2xz2", direct_product(&direct_product(&z2, &z2), &z2)),
        ("d4", dihedral4()),
        ("q8", quaternion()),
    ]
}

/// A homomorphism between finite groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: FiniteGroup,
    target: FiniteGroup,
    map: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: FiniteGroup, target: FiniteGroup, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order {
            return Err(Error::InvalidGroupHom(format!("map has {} entries for a group of order {}", map.len(), source.order)));
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= target.order) {
            return Err(Error::InvalidGroupHom(format!("image {bad} outside the target")));
        }
        for a in 0..source.order {
            for b in 0..source.order {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::InvalidGroupHom(format!("φ({a}·{b}) ≠ φ({a})·φ({b})")));
                }
            }
        }
        Ok(Self { source, target, map })
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, g: usize) -> usize {
        self.map[g]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GroupHom) -> Result<GroupHom> {
        if self.target != next.source {
            return Err(Error::InvalidGroupHom("composition of non-composable homomorphisms".into()));
        }
        let map = self.map.iter().map(|&x| next.map[x]).collect();
        GroupHom::new(self.source.clone(), next.target.clone(), map)
    }

    pub fn identity(g: &FiniteGroup) -> GroupHom {
        GroupHom { source: g.clone(), target: g.clone(), map: (0..g.order).collect() }
    }
}

/// Every homomorphism `g → h`, enumerated by images of the greedy generators.
pub fn all_homs(g: &FiniteGroup, h: &FiniteGroup) -> Vec<GroupHom> {
    let gens = g.generators();
    let mut out = Vec::new();
    let mut images = vec![0usize; gens.len()];
    loop {
        if let Some(map) = extend_on_generators(g, h, &gens, &images) {
            if let Ok(hom) = GroupHom::new(g.clone(), h.clone(), map) {
                out.push(hom);
            }
        }
        // odometer over images, first generator fastest
        let mut k = 0;
        while k < images.len() {
            images[k] += 1;
            if images[k] < h.order {
                break;
            }
            images[k] = 0;
            k += 1;
        }
        if k == images.len() {
            break;
        }
    }
    out
}

fn extend_on_generators(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order];
    map[g.identity] = h.identity;
    let mut queue = VecDeque::from([g.identity]);
    while let Some(x) = queue.pop_front() {
        for (&s, &img) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let want = h.mul(map[x], img);
            if map[y] == usize::MAX {
                map[y] = want;
                queue.push_back(y);
            } else if map[y] != want {
                return None;
            }
        }
    }
    Some(map)
}

/// Multiplicative unitary of `C0(G)`: `W(δ_a ⊗ δ_b) = δ_{ab⁻¹} ⊗ δ_b`.
pub fn function_algebra_unitary(g: &FiniteGroup) -> ComplexMatrix {
    let n = g.order;
    let perm: Vec<usize> = (0..n * n)
        .map(|k| {
            let (a, b) = (k / n, k % n);
            g.mul(a, g.inv(b)) * n + b
        })
        .collect();
    ComplexMatrix::permutation(&perm)
}

/// Quantum group of a finite group in the chosen picture.
pub fn qg_from_group(g: &FiniteGroup, picture: Picture, tol: &Tolerances) -> Result<QuantumGroup> {
    let c0 = build_from_unitary(function_algebra_unitary(g), tol)?;
    match picture {
        Picture::C0 => Ok(c0),
        Picture::Cstar => dual_qg(&c0, tol),
    }
}

/// Hopf *-homomorphism induced by `φ : G → H`: the pullback `C0(H) → C0(G)`,
/// `δ_h ↦ Σ_{φ(g)=h} δ_g`, or the pushforward `C*(G) → C*(H)` on group elements.
pub fn hom_to_hopf(phi: &GroupHom, picture: Picture, tol: &Tolerances) -> Result<HopfHom> {
    let qg_g = qg_from_group(&phi.source, picture, tol)?;
    let qg_h = qg_from_group(&phi.target, picture, tol)?;
    hom_to_hopf_between(phi, picture, &qg_g, &qg_h, tol)
}

/// [`hom_to_hopf`] with already-built quantum groups of the source and target groups.
pub fn hom_to_hopf_between(
    phi: &GroupHom,
    picture: Picture,
    qg_source_group: &QuantumGroup,
    qg_target_group: &QuantumGroup,
    tol: &Tolerances,
) -> Result<HopfHom> {
    let (g, h) = (&phi.source, &phi.target);
    match picture {
        Picture::C0 => {
            // operator-level pullback on diagonal operators of ℓ²(H)
            let apply = |x: &ComplexMatrix| {
                ComplexMatrix::diagonal(&(0..g.order).map(|a| x[(phi.map[a], phi.map[a])]).collect::<Vec<_>>())
            };
            let (src, dst) = (qg_target_group, qg_source_group);
            let images: Vec<ComplexMatrix> = src.alg_c().basis().iter().map(apply).collect();
            let matrix = dst.alg_c().coefficient_matrix(&images);
            check_hopf_hom(src, dst, matrix, tol)
        }
        Picture::Cstar => {
            // x = Σ_g c_g T_g with T_g: δ_b ↦ δ_{bg}; the T_g have disjoint supports
            let apply = |x: &ComplexMatrix| {
                let mut out = ComplexMatrix::zeros(h.order, h.order);
                for a in 0..g.order {
                    let coeff = x[(a, g.identity)];
                    out.add_scaled(coeff, &h.right_shift(phi.map[a]));
                }
                out
            };
            let (src, dst) = (qg_source_group, qg_target_group);
            let images: Vec<ComplexMatrix> = src.alg_c().basis().iter().map(apply).collect();
            let matrix = dst.alg_c().coefficient_matrix(&images);
            check_hopf_hom(src, dst, matrix, tol)
        }
    }
}

/// Character table isomorphism `C*(G) ≅ C0(Ĝ)` for an abelian group.
#[derive(Clone, Debug)]
pub struct FourierWitness {
    /// The character group, indexed like the rows of `transform`.
    pub dual_group: FiniteGroup,
    /// `characters[χ][g] = χ(g)`.
    pub characters: Vec<Vec<C64>>,
    /// `F[χ, g] = χ(g) / √|G|`.
    pub transform: ComplexMatrix,
    /// Largest of: unitarity of `F`, diagonalisation of every `T_g`, and
    /// `(F ⊗ F) W^{C*(G)} (F ⊗ F)* = W^{C0(Ĝ)}`.
    pub residual: f64,
}

/// All characters of an abelian group, ordered by exponents on the greedy generators.
pub fn characters(g: &FiniteGroup) -> Result<Vec<Vec<C64>>> {
    if let Some((a, b)) = g.non_commuting_pair() {
        return Err(Error::NotAbelian(a, b));
    }
    let gens = g.generators();
    let orders: Vec<usize> = gens.iter().map(|&s| g.element_order(s)).collect();
    let mut out = Vec::new();
    let mut exps = vec![0usize; gens.len()];
    loop {
        let images: Vec<C64> =
            exps.iter().zip(&orders).map(|(&m, &o)| C64::from_polar(1.0, 2.0 * PI * m as f64 / o as f64)).collect();
        if let Some(chi) = extend_character(g, &gens, &images) {
            out.push(chi);
        }
        let mut k = 0;
        while k < exps.len() {
            exps[k] += 1;
            if exps[k] < orders[k] {
                break;
            }
            exps[k] = 0;
            k += 1;
        }
        if k == exps.len() {
            break;
        }
    }
    Ok(out)
}

fn extend_character(g: &FiniteGroup, gens: &[usize], images: &[C64]) -> Option<Vec<C64>> {
    let mut chi: Vec<Option<C64>> = vec![None; g.order];
    chi[g.identity] = Some(C64::new(1.0, 0.0));
    let mut queue = VecDeque::from([g.identity]);
    while let Some(x) = queue.pop_front() {
        for (&s, &img) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let want = chi[x].expect("visited") * img;
            match chi[y] {
                None => {
                    chi[y] = Some(want);
                    queue.push_back(y);
                }
                Some(have) if (have - want).norm() > 1e-9 => return None,
                Some(_) => {}
            }
        }
    }
    let chi: Vec<C64> = chi.into_iter().map(|c| c.expect("generators generate")).collect();
    let hom = (0..g.order).all(|a| (0..g.order).all(|b| (chi[g.mul(a, b)] - chi[a] * chi[b]).norm() < 1e-9));
    hom.then_some(chi)
}

/// Fourier transform carrying the group-algebra picture of `G` to the
/// function-algebra picture of its character group.
pub fn fourier_dual_witness(g: &FiniteGroup, tol: &Tolerances) -> Result<FourierWitness> {
    let chars = characters(g)?;
    let n = g.order;
    if chars.len() != n {
        return Err(Error::NotAbelian(0, 0));
    }
    let find = |values: &[C64]| {
        chars.iter().position(|c| c.iter().zip(values).all(|(a, b)| (a - b).norm() < 1e-9)).expect("characters form a group")
    };
    let table: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).map(|b| find(&chars[a].iter().zip(&chars[b]).map(|(x, y)| x * y).collect::<Vec<_>>())).collect())
        .collect();
    let dual_group = build_group(table)?;
    let scale = 1.0 / (n as f64).sqrt();
    let transform = ComplexMatrix::from_fn(n, n, |chi, x| chars[chi][x] * scale);

    let mut residual = transform.unitarity_residual();
    let f_star = transform.adjoint();
    for x in 0..n {
        let diag = ComplexMatrix::diagonal(&(0..n).map(|chi| chars[chi][x]).collect::<Vec<_>>());
        let got = ComplexMatrix::product(&[&transform, &g.right_shift(x), &f_star]);
        residual = residual.max(relative_residual(&got, &diag));
    }
    let cstar = qg_from_group(g, Picture::Cstar, tol)?;
    let ff = transform.kron(&transform);
    let conjugated = ComplexMatrix::product(&[&ff, cstar.w(), &ff.adjoint()]);
    residual = residual.max(relative_residual(&conjugated, &function_algebra_unitary(&dual_group)));
    Ok(FourierWitness { dual_group, characters: chars, transform, residual })
}
