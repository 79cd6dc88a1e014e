//! The graded model `W_d = scalars[T]/T^{d+1} ⊗ V` with `V = span(v_0..v_m)`, on which the
//! Laplace operator acts by `A + T B + T² C`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{qvec, Matrix};
use crate::scalar::{factorial, q, Scalar, Q};
use crate::symcalc::{Dir, FamilySymbol, Form, PolyAtom};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WModel {
    pub k: i64,
    pub m: u32,
    pub branch: Dir,
    pub a: Matrix,
    pub b: Matrix,
    pub c: Matrix,
}

impl WModel {
    /// Column `r` of each matrix is the image of `v_r`.
    pub fn new(k: i64, m: u32, branch: Dir) -> Self {
        let n = m as usize + 1;
        let mi = m as i64;
        let (mut a, mut b, mut c) = (Matrix::zeros(n, n), Matrix::zeros(n, n), Matrix::zeros(n, n));
        for r in 0..n {
            let ri = r as i64;
            match branch {
                Dir::L => {
                    a[(r, r)] = q((mi - ri) * (mi - 2 * ri - k));
                    if r > 0 {
                        a[(r - 1, r)] = q(-1);
                    }
                    if r + 1 < n {
                        let up = (ri + 1) * (mi - ri);
                        a[(r + 1, r)] = q(up * (mi - ri - 1) * (mi - ri - k));
                        b[(r + 1, r)] = q(up * (1 - k));
                        c[(r + 1, r)] = q(-up);
                    }
                    b[(r, r)] = q(1 - k);
                    c[(r, r)] = q(-1);
                }
                Dir::R => {
                    a[(r, r)] = q(-(ri * (mi - 2 * ri - k) + mi));
                    if r > 0 {
                        a[(r - 1, r)] = q(ri * (ri - 1 + k));
                        b[(r - 1, r)] = q(1 - k);
                        c[(r - 1, r)] = q(-1);
                    }
                    if r + 1 < n {
                        a[(r + 1, r)] = q(-(ri + 1) * (mi - ri));
                    }
                    b[(r, r)] = q(1 - k);
                    c[(r, r)] = q(-1);
                }
            }
        }
        Self { k, m, branch, a, b, c }
    }

    pub fn dim(&self) -> usize {
        self.m as usize + 1
    }

    /// `(Δ w)_t = A w_t + B w_{t−1} + C w_{t−2}`.
    pub fn laplace(&self, layers: &[Vec<Q>]) -> Vec<Vec<Q>> {
        let n = self.dim();
        (0..layers.len())
            .map(|t| {
                let mut out = self.a.apply(&layers[t]);
                for (shift, mat) in [(1, &self.b), (2, &self.c)] {
                    if t >= shift {
                        for (o, x) in out.iter_mut().zip(mat.apply(&layers[t - shift])) {
                            *o += x;
                        }
                    }
                }
                debug_assert_eq!(out.len(), n);
                out
            })
            .collect()
    }

    /// The block lower-triangular matrix of Δ on `W_d`, layer-major.
    pub fn block_matrix(&self, d: u32) -> Matrix {
        let n = self.dim();
        let size = n * (d as usize + 1);
        let mut out = Matrix::zeros(size, size);
        for t in 0..=d as usize {
            for (shift, mat) in [(0, &self.a), (1, &self.b), (2, &self.c)] {
                if t < shift {
                    continue;
                }
                for i in 0..n {
                    for j in 0..n {
                        out[(t * n + i, (t - shift) * n + j)] = mat[(i, j)].clone();
                    }
                }
            }
        }
        out
    }

    fn solvable(&self) -> bool {
        let k = self.k;
        let m = self.m as i64;
        match self.branch {
            Dir::L => k <= 0 || k - m > 1,
            Dir::R => k > 1 || k + m < 1,
        }
    }
}

/// Solver output: layer `t` holds the coefficient of `T^t`. The multipliers `μ_u` record
/// `Δ w = Σ_u μ_u T^u w`, so that `Δ^d w = μ_1^d T^d w_0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedVector {
    pub k: i64,
    pub m: u32,
    pub branch: Dir,
    pub d: u32,
    #[serde(with = "layers_serde")]
    pub layers: Vec<Vec<Q>>,
    #[serde(with = "qvec")]
    pub multipliers: Vec<Q>,
}

mod layers_serde {
    use super::*;
    use crate::scalar::{fmt_q, parse_q};
    use serde::{de, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Vec<Q>], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|l| l.iter().map(fmt_q).collect::<Vec<_>>()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Q>>, D::Error> {
        Vec::<Vec<String>>::deserialize(d)?
            .iter()
            .map(|l| {
                l.iter()
                    .map(|t| parse_q(t).ok_or_else(|| de::Error::custom(format!("bad rational {t:?}"))))
                    .collect()
            })
            .collect()
    }
}

impl GradedVector {
    pub fn model(&self) -> WModel {
        WModel::new(self.k, self.m, self.branch)
    }

    /// Rescaled so that `Δ^d` of the emitted form is exactly the emitted `w_0`.
    pub fn normalized(&self) -> GradedVector {
        if self.d == 0 {
            return self.clone();
        }
        let lambda = self.multipliers[0].pow(self.d as i32);
        let inv = lambda.recip();
        let mut out = self.clone();
        for layer in &mut out.layers {
            for x in layer.iter_mut() {
                *x = &*x * &inv;
            }
        }
        out
    }
}

fn pochhammer(a: i64, n: i64) -> Q {
    (0..n).map(|i| q(a + i)).fold(Q::one(), |acc, x| acc * x)
}

/// The depth-zero coefficient vector for `𝔢 ⊗ L^{m−r} f` or `𝔢 ⊗ R^r f`.
pub fn build_w0(k: i64, m: u32, branch: Dir) -> Result<GradedVector, Error> {
    let mi = m as i64;
    let fact = |n: i64| factorial(n as u64);
    let coeffs: Vec<Q> = (0..=mi)
        .map(|r| match branch {
            Dir::L if mi >= k => {
                if r <= mi.min(mi - k) {
                    (fact(mi - r) * fact(mi - r - k)).recip()
                } else {
                    Q::zero()
                }
            }
            Dir::L => (fact(mi - r) * pochhammer(1 - k, mi - r)).recip(),
            Dir::R if mi > -k => {
                if r >= 0.max(1 - k) {
                    (fact(mi - r) * fact(r + k - 1)).recip()
                } else {
                    Q::zero()
                }
            }
            Dir::R => (fact(mi - r) * pochhammer(k, r)).recip(),
        })
        .collect();
    let model = WModel::new(k, m, branch);
    if !model.a.apply(&coeffs).iter().all(Zero::is_zero) {
        return Err(Error::Precondition(format!(
            "no depth zero vector for k = {k}, m = {m}, branch {branch:?}"
        )));
    }
    Ok(GradedVector { k, m, branch, d: 0, layers: vec![coeffs], multipliers: Vec::new() })
}

/// Iteratively extends `w_0` to a generalized eigenvector of depth `d`.
///
/// Layer `t ≥ 1` solves `A v − μ_t w_0 = Σ_{u<t} μ_u w_{t−u} − B w_{t−1} − C w_{t−2}`
/// with the gauge `v_m = 0`.
pub fn solve_wd(k: i64, m: u32, branch: Dir, d: u32) -> Result<GradedVector, Error> {
    let model = WModel::new(k, m, branch);
    if !model.solvable() {
        return Err(Error::Precondition(format!(
            "solver needs k ≤ 0 or k − m > 1 (L), k > 1 or k + m < 1 (R); got k = {k}, m = {m}, {branch:?}"
        )));
    }
    let w0 = build_w0(k, m, branch)?.layers.remove(0);
    let n = model.dim();
    let mut system = Matrix::zeros(n + 1, n + 1);
    for i in 0..n {
        for j in 0..n {
            system[(i, j)] = model.a[(i, j)].clone();
        }
        system[(i, n)] = -w0[i].clone();
    }
    system[(n, n - 1)] = Q::one();

    let mut layers = vec![w0];
    let mut multipliers: Vec<Q> = Vec::new();
    for t in 1..=d as usize {
        let mut rhs = vec![Q::zero(); n];
        for (u, mu) in multipliers.iter().enumerate() {
            for (x, y) in rhs.iter_mut().zip(&layers[t - 1 - u]) {
                *x += mu * y;
            }
        }
        for (x, y) in rhs.iter_mut().zip(model.b.apply(&layers[t - 1])) {
            *x -= y;
        }
        if t >= 2 {
            for (x, y) in rhs.iter_mut().zip(model.c.apply(&layers[t - 2])) {
                *x -= y;
            }
        }
        rhs.push(Q::zero());
        let sol = system
            .solve(&rhs)
            .ok_or_else(|| Error::Singular(format!("layer {t} has no solution")))?;
        let mu = sol[n].clone();
        if t == 1 && mu.is_zero() {
            return Err(Error::Singular("first multiplier vanishes".into()));
        }
        layers.push(sol[..n].to_vec());
        multipliers.push(mu);
    }
    Ok(GradedVector { k, m, branch, d, layers, multipliers })
}

/// Turns a graded vector into a form using the derivatives of `family` at `s = 0`.
pub fn emit_form(w: &GradedVector, family: &FamilySymbol) -> Result<Form, Error> {
    if family.base_weight != w.k {
        return Err(Error::WeightMismatch { expected: w.k, found: family.base_weight });
    }
    let mi = w.m as i64;
    let weight = match w.branch {
        Dir::L => w.k - mi,
        Dir::R => w.k + mi,
    };
    let mut out = Form::zero(weight);
    let sign = family.sign();
    for (t, layer) in w.layers.iter().enumerate() {
        let j = w.d as i64 - t as i64;
        let eps = if sign < 0 && j % 2 == 1 { -Q::one() } else { Q::one() };
        for (r, x) in layer.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let power = match w.branch {
                Dir::L => w.m - r as u32,
                Dir::R => r as u32,
            };
            let atom = family.atom(j).with_pending(w.branch, power);
            let poly = PolyAtom { m: w.m, r: r as u32 };
            out.push(poly, atom, Scalar::rational(x * &eps))?;
        }
    }
    Ok(out)
}
