//! Finite fragments of Harish-Chandra modules and their quiver representations.
//!
//! A fragment of level `l` consists of spaces `M_p` for `p = −l−1, −l+1, …, l+1`, raising
//! maps `xs[i]: M_{p_i} → M_{p_{i+1}}` and lowering maps `ys[i]: M_{p_{i+1}} → M_{p_i}`.
//! For `l ≥ 1` the first and last maps are the endpoint maps `X_−, X_+` and `Y_−, Y_+`.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::build::QuiverRep;
use crate::linalg::Matrix;
use crate::scalar::{q, qf, Q};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HCFragment {
    pub l: u32,
    pub xs: Vec<Matrix>,
    pub ys: Vec<Matrix>,
}

/// Maps `(T, X_∗, I)` from the first description to the second.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoWitness {
    pub t: Matrix,
    pub x_star: Matrix,
    pub identity: Matrix,
    /// Coefficients of `p` in the monomial basis, constant term first.
    pub poly: Vec<String>,
}

impl HCFragment {
    pub fn gamma(&self) -> i64 {
        let l = self.l as i64;
        l * l - 1
    }

    pub fn validate(&self) -> Result<(), Error> {
        let n = self.l as usize + 1;
        if self.xs.len() != n || self.ys.len() != n {
            return Err(Error::Domain(format!("level {} needs {n} raising and {n} lowering maps", self.l)));
        }
        let mut dims = vec![self.xs[0].cols()];
        for (i, x) in self.xs.iter().enumerate() {
            if x.cols() != dims[i] {
                return Err(Error::Domain(format!("raising map {i} has wrong source dimension")));
            }
            dims.push(x.rows());
        }
        for (i, y) in self.ys.iter().enumerate() {
            if y.rows() != dims[i] || y.cols() != dims[i + 1] {
                return Err(Error::Domain(format!("lowering map {i} has wrong shape")));
            }
        }
        for i in 1..self.l as usize {
            if self.xs[i].inverse().is_none() || self.ys[i].inverse().is_none() {
                return Err(Error::Singular(format!("interior map {i} is not invertible")));
            }
        }
        Ok(())
    }

    /// `X_∗ = X_{l−1} ⋯ X_1`.
    pub fn x_star(&self) -> Matrix {
        let n = self.xs[0].rows();
        self.xs[1..self.l as usize].iter().fold(Matrix::identity(n), |acc, x| x * &acc)
    }

    /// `Y_∗ = Y_1 ⋯ Y_{l−1}`.
    pub fn y_star(&self) -> Matrix {
        let n = self.xs[0].rows();
        self.ys[1..self.l as usize].iter().fold(Matrix::identity(n), |acc, y| &acc * y)
    }

    fn x_minus(&self) -> &Matrix {
        &self.xs[0]
    }
    fn y_minus(&self) -> &Matrix {
        &self.ys[0]
    }
    fn x_plus(&self) -> &Matrix {
        &self.xs[self.l as usize]
    }
    fn y_plus(&self) -> &Matrix {
        &self.ys[self.l as usize]
    }

    /// Casimir on `M_{−l−1}` and `M_{−l+1}`: `γ + 4 Y_− X_−` and `γ + 4 X_− Y_−`.
    pub fn casimirs(&self) -> (Matrix, Matrix) {
        let g = q(self.gamma());
        let c0 = &Matrix::identity(self.x_minus().cols()).scale(&g) + &(self.y_minus() * self.x_minus()).scale(&q(4));
        let c1 = &Matrix::identity(self.x_minus().rows()).scale(&g) + &(self.x_minus() * self.y_minus()).scale(&q(4));
        (c0, c1)
    }
}

fn require_relation(rep: QuiverRep) -> Result<QuiverRep, Error> {
    rep.validate()?;
    Ok(rep)
}

pub fn hc_to_quiver(frag: &HCFragment) -> Result<QuiverRep, Error> {
    frag.validate()?;
    if frag.l == 0 {
        let z_minus = frag.xs[0].clone();
        let z_plus = frag.ys[0].clone();
        return require_relation(QuiverRep::Cyclic {
            dims: [z_minus.cols(), z_minus.rows()],
            a_plus: z_minus,
            a_minus: z_plus,
        });
    }
    let x_star = frag.x_star();
    let x_star_inv = x_star.inverse().ok_or_else(|| Error::Singular("X_∗ is not invertible".into()))?;
    require_relation(QuiverRep::Gelfand {
        dims: [frag.x_minus().cols(), frag.x_minus().rows(), frag.x_plus().rows()],
        a_minus: frag.x_minus().clone(),
        b_minus: frag.y_minus().clone(),
        a_plus: &x_star_inv * frag.y_plus(),
        b_plus: frag.x_plus() * &x_star,
    })
}

/// The representation on `(M_{−l−1}, M_{l−1}, M_{l+1})`.
pub fn second_description(frag: &HCFragment) -> Result<QuiverRep, Error> {
    frag.validate()?;
    if frag.l == 0 {
        return Err(Error::Domain("the second description needs level ≥ 1".into()));
    }
    let y_star = frag.y_star();
    let y_star_inv = y_star.inverse().ok_or_else(|| Error::Singular("Y_∗ is not invertible".into()))?;
    require_relation(QuiverRep::Gelfand {
        dims: [frag.x_minus().cols(), frag.x_plus().cols(), frag.x_plus().rows()],
        a_minus: &y_star_inv * frag.x_minus(),
        b_minus: frag.y_minus() * &y_star,
        a_plus: frag.y_plus().clone(),
        b_plus: frag.x_plus().clone(),
    })
}

fn eval_poly(coeffs: &[Q], c: &Matrix) -> Matrix {
    let n = c.rows();
    let mut acc = Matrix::zeros(n, n);
    for a in coeffs.iter().rev() {
        acc = &(&acc * c) + &Matrix::identity(n).scale(a);
    }
    acc
}

/// Writes `Y_∗ X_∗ = p(C_1)` with `deg p ≤ l − 1`, sets `T = p(C_0)` and checks that
/// `(T, X_∗, I)` intertwines the two descriptions.
pub fn iso_two_descriptions(frag: &HCFragment) -> Result<IsoWitness, Error> {
    let first = hc_to_quiver(frag)?;
    let second = second_description(frag)?;
    let (c0, c1) = frag.casimirs();
    let target = &frag.y_star() * &frag.x_star();
    let n = c1.rows();
    let degree = frag.l as usize;
    let mut powers = vec![Matrix::identity(n)];
    for j in 1..degree {
        powers.push(&powers[j - 1] * &c1);
    }
    let system = Matrix::from_fn(n * n, degree, |e, j| powers[j][(e / n, e % n)].clone());
    let rhs: Vec<Q> = (0..n * n).map(|e| target[(e / n, e % n)].clone()).collect();
    let coeffs = system
        .solve(&rhs)
        .ok_or_else(|| Error::Singular("Y_∗ X_∗ is not a polynomial in the Casimir".into()))?;
    let t = eval_poly(&coeffs, &c0);
    if t.inverse().is_none() {
        return Err(Error::Verification("T is not invertible".into()));
    }
    let x_star = frag.x_star();
    let plus_dim = frag.x_plus().rows();
    let identity = Matrix::identity(plus_dim);
    let maps = [&t, &x_star, &identity];
    for ((s, tgt, m1), (_, _, m2)) in first.arrows().into_iter().zip(second.arrows()) {
        if &(maps[tgt] * m1) != &(m2 * maps[s]) {
            return Err(Error::Verification(format!("square for arrow {s}→{tgt} does not commute")));
        }
    }
    Ok(IsoWitness { t, x_star, identity, poly: coeffs.iter().map(crate::scalar::fmt_q).collect() })
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| q(rng.gen_range(-3..=3)));
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// A random fragment of level `l` on `n`-dimensional spaces whose Casimir is `γ` plus a
/// nilpotent part at every weight, so all consistency identities hold exactly.
pub fn random_consistent_fragment(l: u32, n: usize, seed: u64) -> HCFragment {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gamma = q(l as i64 * l as i64 - 1);
    let strict = Matrix::from_fn(n, n, |i, j| if j > i { q(rng.gen_range(-3..=3)) } else { Q::zero() });
    let conj = random_invertible(&mut rng, n);
    let nil = &(&conj * &strict) * &conj.inverse().expect("invertible");
    let id = Matrix::identity(n);
    let quarter = qf(1, 4);
    let weight = |i: usize| -(l as i64) - 1 + 2 * i as i64;

    if l == 0 {
        // Only the composites need to be nilpotent.
        let y = random_invertible(&mut rng, n);
        let x = &nil * &y.inverse().expect("invertible");
        return HCFragment { l, xs: vec![x], ys: vec![y] };
    }

    let mut casimir = &id.scale(&gamma) + &nil;
    let y_minus = random_invertible(&mut rng, n);
    let x_minus = &nil.scale(&quarter) * &y_minus.inverse().expect("invertible");
    let mut xs = vec![x_minus];
    let mut ys = vec![y_minus];
    for i in 1..l as usize {
        let x = random_invertible(&mut rng, n);
        let x_inv = x.inverse().expect("invertible");
        casimir = &(&x * &casimir) * &x_inv;
        let p = weight(i);
        let shifted = &casimir - &id.scale(&q(p * p + 2 * p));
        ys.push(&x_inv * &shifted.scale(&quarter));
        xs.push(x);
    }
    let x_plus = random_invertible(&mut rng, n);
    let top_nil = &casimir - &id.scale(&gamma);
    let y_plus = &top_nil.scale(&quarter) * &x_plus.inverse().expect("invertible");
    xs.push(x_plus);
    ys.push(y_plus);
    HCFragment { l, xs, ys }
}
