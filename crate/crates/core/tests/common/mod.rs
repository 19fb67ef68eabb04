//! Brute-force oracles written directly from Cayley tables, independent of the
//! library's slicing, span and conversion machinery.

#![allow(dead_code)]

use pentagon_core::groups::{all_homs, corpus, FiniteGroup, GroupHom};
use pentagon_core::{ComplexMatrix, C64};

pub fn one() -> C64 {
    C64::new(1.0, 0.0)
}

pub fn group(name: &str) -> FiniteGroup {
    corpus().into_iter().find(|(n, _)| *n == name).unwrap_or_else(|| panic!("no corpus group {name}")).1
}

pub fn hom(source: &FiniteGroup, target: &FiniteGroup, map: &[usize]) -> GroupHom {
    GroupHom::new(source.clone(), target.clone(), map.to_vec()).expect("valid homomorphism")
}

/// The quotient `Z4 → Z2` and the inclusion `Z2 → Z4`.
pub fn q_and_i() -> (GroupHom, GroupHom) {
    let (z2, z4) = (group("z2"), group("z4"));
    (hom(&z4, &z2, &[0, 1, 0, 1]), hom(&z2, &z4, &[0, 2]))
}

fn inv(g: &FiniteGroup, a: usize) -> usize {
    (0..g.order()).find(|&b| g.table()[a][b] == g.identity()).unwrap()
}

fn mul(g: &FiniteGroup, a: usize, b: usize) -> usize {
    g.table()[a][b]
}

/// Operator sending each basis vector `δ_j` to `δ_{f(j)}`.
pub fn basis_map(n: usize, f: impl Fn(usize) -> usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        m[(f(j), j)] = one();
    }
    m
}

/// `T_g δ_b = δ_{bg}`.
pub fn shift(g: &FiniteGroup, x: usize) -> ComplexMatrix {
    basis_map(g.order(), |b| mul(g, b, x))
}

pub fn delta(n: usize, a: usize) -> ComplexMatrix {
    ComplexMatrix::unit(n, a, a)
}

/// `W(δ_a ⊗ δ_b) = δ_{ab⁻¹} ⊗ δ_b`.
pub fn c0_w(g: &FiniteGroup) -> ComplexMatrix {
    let n = g.order();
    basis_map(n * n, |k| {
        let (a, b) = (k / n, k % n);
        mul(g, a, inv(g, b)) * n + b
    })
}

/// `Ŵ = Σ_a E_aa ⊗ T_a`.
pub fn cstar_w(g: &FiniteGroup) -> ComplexMatrix {
    let n = g.order();
    let mut w = ComplexMatrix::zeros(n * n, n * n);
    for a in 0..n {
        w.add_scaled(one(), &delta(n, a).kron(&shift(g, a)));
    }
    w
}

/// Bicharacter `C0(H) → C0(G)` of `φ : G → H`: `V(δ_a ⊗ δ_g) = δ_{aφ(g)⁻¹} ⊗ δ_g`.
pub fn c0_v(phi: &GroupHom) -> ComplexMatrix {
    let (g, h) = (phi.source(), phi.target());
    let (ng, nh) = (g.order(), h.order());
    basis_map(nh * ng, |k| {
        let (a, x) = (k / ng, k % ng);
        mul(h, a, inv(h, phi.map()[x])) * ng + x
    })
}

/// Bicharacter `C*(G) → C*(H)` of `φ : G → H`: `V(δ_a ⊗ δ_h) = δ_a ⊗ δ_{hφ(a)}`.
pub fn cstar_v(phi: &GroupHom) -> ComplexMatrix {
    let (g, h) = (phi.source(), phi.target());
    let (ng, nh) = (g.order(), h.order());
    basis_map(ng * nh, |k| {
        let (a, y) = (k / nh, k % nh);
        a * nh + mul(h, y, phi.map()[a])
    })
}

/// `Σ_{h1 φ(g) = h} E_{h1 h1} ⊗ E_gg`, the right homomorphism of `c0_v(φ)` on `δ_h`.
pub fn c0_delta_r(phi: &GroupHom, h0: usize) -> ComplexMatrix {
    let (g, h) = (phi.source(), phi.target());
    let mut out = ComplexMatrix::zeros(h.order() * g.order(), h.order() * g.order());
    for h1 in 0..h.order() {
        for x in 0..g.order() {
            if mul(h, h1, phi.map()[x]) == h0 {
                out.add_scaled(one(), &delta(h.order(), h1).kron(&delta(g.order(), x)));
            }
        }
    }
    out
}

/// `Σ_{φ(g) h2 = h} E_gg ⊗ E_{h2 h2}`, the left homomorphism of `c0_v(φ)` on `δ_h`.
pub fn c0_delta_l(phi: &GroupHom, h0: usize) -> ComplexMatrix {
    let (g, h) = (phi.source(), phi.target());
    let mut out = ComplexMatrix::zeros(g.order() * h.order(), g.order() * h.order());
    for x in 0..g.order() {
        for h2 in 0..h.order() {
            if mul(h, phi.map()[x], h2) == h0 {
                out.add_scaled(one(), &delta(g.order(), x).kron(&delta(h.order(), h2)));
            }
        }
    }
    out
}

/// All homomorphisms between every ordered pair of the named groups.
pub fn homs_among(names: &[&str]) -> Vec<GroupHom> {
    let groups: Vec<FiniteGroup> = names.iter().map(|n| group(n)).collect();
    let mut out = Vec::new();
    for g in &groups {
        for h in &groups {
            out.extend(all_homs(g, h));
        }
    }
    out
}

/// Deterministic pseudo-random complex matrix.
pub fn sample(rows: usize, cols: usize, seed: u64) -> ComplexMatrix {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
    };
    ComplexMatrix::from_fn(rows, cols, |_, _| C64::new(next(), next()))
}
