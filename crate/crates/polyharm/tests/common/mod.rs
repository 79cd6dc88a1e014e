//! Shared oracles and fixtures for the integration tests.
#![allow(dead_code)]

use num_traits::Zero;
use polyharm::linalg::Matrix;
use polyharm::scalar::{q, qf, Q};
use polyharm::specsolve::{build_w0, WModel};
use polyharm::symcalc::{Dir, Family, FamilySymbol, Form, PolyAtom, SpectralAtom};

/// The unique element of `ker Δ^{d+1}` on the graded model whose layer 0 equals `w_0` and
/// whose layers `t ≥ 1` have vanishing last coordinate, found by one dense solve.
pub fn kernel_oracle(k: i64, m: u32, branch: Dir, d: u32) -> Option<Vec<Vec<Q>>> {
    let model = WModel::new(k, m, branch);
    let w0 = build_w0(k, m, branch).ok()?.layers.remove(0);
    let n = m as usize + 1;
    let size = n * (d as usize + 1);
    let power = model.block_matrix(d).pow(d + 1);
    let mut rows = power.to_rows();
    let mut rhs = vec![Q::zero(); size];
    for (i, x) in w0.iter().enumerate() {
        let mut row = vec![Q::zero(); size];
        row[i] = q(1);
        rows.push(row);
        rhs.push(x.clone());
    }
    for t in 1..=d as usize {
        let mut row = vec![Q::zero(); size];
        row[t * n + n - 1] = q(1);
        rows.push(row);
        rhs.push(Q::zero());
    }
    let system = Matrix::from_rows(rows);
    if system.rank() != size {
        return None;
    }
    let sol = system.solve(&rhs)?;
    Some(sol.chunks(n).map(<[Q]>::to_vec).collect())
}

/// The Eisenstein family in the base weight, at the point where its eigenvalue vanishes.
pub fn eisenstein(k: i64) -> FamilySymbol {
    FamilySymbol::new(Family::Eisenstein, k, 1)
}

fn atom(family: Family, weight: i64, point: Q, laurent: i64) -> SpectralAtom {
    SpectralAtom::new(family, weight, point, laurent)
}

/// At least fifty single-term forms `𝔢_{r,m−r} ⊗ c_j` spread over several families and weights.
pub fn atom_grid() -> Vec<Form> {
    let mut spectral = Vec::new();
    for w in -4..=4i64 {
        for p in [q(0), q(2), qf(1, 2), q(1 - w)] {
            for j in [0, 2] {
                spectral.push(atom(Family::Eisenstein, w, p.clone(), j));
            }
        }
        for index in [-2i64, 1] {
            let sigma = qf(w.abs() + 2, 2);
            spectral.push(atom(Family::Poincare { index }, w, sigma, 1));
        }
    }
    let polys = [(0u32, 0u32), (1, 0), (1, 1), (2, 1), (3, 0), (3, 2)];
    let mut out = Vec::new();
    for (i, a) in spectral.into_iter().enumerate() {
        let (m, r) = polys[i % polys.len()];
        let poly = PolyAtom::new(m, r).expect("valid");
        let f = Form::tensor(poly, &Form::spectral(a)).expect("trivial polynomial part");
        if !f.is_empty() {
            out.push(f);
        }
    }
    out
}

/// Forms with `Δ f = 0` built from harmonic pieces of weight `k ≤ 0`.
pub fn harmonic_grid() -> Vec<Form> {
    let mut out = Vec::new();
    for k in -4..=0i64 {
        let m = (-k) as u32;
        out.push(Form::e_atom(m, m).expect("valid"));
        out.push(Form::spectral(FamilySymbol::new(Family::Eisenstein, k, 1).atom(0)));
        if k < 0 {
            out.push(Form::spectral(FamilySymbol::new(Family::Eisenstein, k, -1).atom(0)));
        }
        for index in [-1i64, -3, 2] {
            out.push(Form::spectral(FamilySymbol::new(Family::Poincare { index }, k, 1).atom(0)));
            out.push(Form::spectral(FamilySymbol::new(Family::Poincare { index }, k, -1).atom(0)));
        }
    }
    out.retain(|f| !f.is_empty());
    out
}

use polyharm::scalar::Scalar;
use polyharm::symcalc::{flip, is_zero, laplace, lower, lower_pow, mirror, raise, raise_pow};

fn scaled(f: &Form, c: i64) -> Form {
    f.scale(&Scalar::int(c))
}

fn same(a: &Form, b: &Form) -> bool {
    is_zero(&a.sub(b).expect("same weight"))
}

/// `Δ L^r = L^r (Δ − r(k−r−1))` and `Δ R^r = R^r (Δ + r(k+r−1))`.
pub fn laplace_commutators_hold(f: &Form, r: u32) -> bool {
    let k = f.weight();
    let ri = r as i64;
    let lowered = lower_pow(&laplace(f).sub(&scaled(f, ri * (k - ri - 1))).unwrap(), r);
    let raised = raise_pow(&laplace(f).add(&scaled(f, ri * (k + ri - 1))).unwrap(), r);
    same(&laplace(&lower_pow(f, r)), &lowered) && same(&laplace(&raise_pow(f, r)), &raised)
}

/// `R L^r = −L^{r−1}(Δ − (r−1)(k−r))` and `L R^r = −R^{r−1}(Δ + r(k+r−1))` for `r ≥ 1`.
pub fn iterated_commutators_hold(f: &Form, r: u32) -> bool {
    assert!(r >= 1);
    let k = f.weight();
    let ri = r as i64;
    let lhs_l = raise(&lower_pow(f, r));
    let rhs_l = scaled(&lower_pow(&laplace(f).sub(&scaled(f, (ri - 1) * (k - ri))).unwrap(), r - 1), -1);
    let lhs_r = lower(&raise_pow(f, r));
    let rhs_r = scaled(&raise_pow(&laplace(f).add(&scaled(f, ri * (k + ri - 1))).unwrap(), r - 1), -1);
    same(&lhs_l, &rhs_l) && same(&lhs_r, &rhs_r)
}

/// `Δ(𝔢 g)` computed directly and by the product rule with the known action on `𝔢`.
pub fn product_rule_holds(poly: PolyAtom, g: &Form) -> bool {
    let direct = laplace(&Form::tensor(poly, g).unwrap());
    let m = poly.m as i64;
    let r = poly.r as i64;
    let eigen = -(r + 1) * (m - r);
    let mut expected = Form::tensor(poly, &laplace(g)).unwrap();
    expected = expected.add(&scaled(&Form::tensor(poly, g).unwrap(), eigen)).unwrap();
    // (R 𝔢)(L g) with R 𝔢_{r} = 𝔢_{r−1}
    if let Some(up) = poly.raise() {
        expected = expected.sub(&Form::tensor(up, &lower(g)).unwrap()).unwrap();
    }
    // (L 𝔢)(R g) with L 𝔢_{r} = (r+1)(m−r) 𝔢_{r+1}
    if let Some((down, c)) = poly.lower() {
        let term = Form::tensor(down, &raise(g)).unwrap().scale(&Scalar::rational(c));
        expected = expected.sub(&term).unwrap();
    }
    same(&direct, &expected)
}

/// `L F Δ = −(k−2)(k−1) F L` and, for `k ≤ −2`, `−k(k+1) R F = F R (Δ + k)`.
pub fn flip_commutators_hold(f: &Form) -> bool {
    let k = f.weight();
    let first = same(
        &lower(&flip(&laplace(f)).unwrap()),
        &scaled(&flip(&lower(f)).unwrap(), -(k - 2) * (k - 1)),
    );
    if k > -2 {
        return first;
    }
    let shifted = laplace(f).add(&scaled(f, k)).unwrap();
    first && same(&scaled(&raise(&flip(f).unwrap()), -k * (k + 1)), &flip(&raise(&shifted)).unwrap())
}

pub fn flip_commutes_with_laplace(f: &Form) -> bool {
    same(&laplace(&flip(f).unwrap()), &flip(&laplace(f)).unwrap())
}

pub fn mirror_is_involution(f: &Form) -> bool {
    same(&mirror(&mirror(f).unwrap()).unwrap(), f)
}
