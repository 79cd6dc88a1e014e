//! Maaß operators by central differences, and exact Wirtinger calculus on 𝔢-basis monomials.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::series::EvalConfig;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FdOp {
    L,
    R,
    Laplace,
}

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// First and second partial derivatives in `x` and `y`.
struct Partials {
    value: Complex64,
    dx: Complex64,
    dy: Complex64,
    dxx: Complex64,
    dyy: Complex64,
}

fn partials_at_step(f: &dyn Fn(Complex64) -> Complex64, tau: Complex64, h: f64, center: Complex64) -> Partials {
    let xp = f(tau + h);
    let xm = f(tau - h);
    let yp = f(tau + I * h);
    let ym = f(tau - I * h);
    Partials {
        value: center,
        dx: (xp - xm) / (2.0 * h),
        dy: (yp - ym) / (2.0 * h),
        dxx: (xp - center * 2.0 + xm) / (h * h),
        dyy: (yp - center * 2.0 + ym) / (h * h),
    }
}

fn partials(f: &dyn Fn(Complex64) -> Complex64, tau: Complex64, cfg: &EvalConfig) -> Result<Partials, Error> {
    let h = cfg.fd_step;
    if h < 1e-10 || tau.im <= 2.0 * h {
        return Err(Error::Domain(format!("finite-difference step {h} unusable at y = {}", tau.im)));
    }
    let center = f(tau);
    let coarse = partials_at_step(f, tau, h, center);
    if !cfg.richardson {
        return Ok(coarse);
    }
    let fine = partials_at_step(f, tau, h / 2.0, center);
    let extrapolate = |a: Complex64, b: Complex64| (b * 4.0 - a) / 3.0;
    Ok(Partials {
        value: center,
        dx: extrapolate(coarse.dx, fine.dx),
        dy: extrapolate(coarse.dy, fine.dy),
        dxx: extrapolate(coarse.dxx, fine.dxx),
        dyy: extrapolate(coarse.dyy, fine.dyy),
    })
}

/// Applies `L_k`, `R_k` or `Δ_k` to `f` at `τ`.
pub fn fd_operator(
    op: FdOp,
    k: i64,
    f: &dyn Fn(Complex64) -> Complex64,
    tau: Complex64,
    cfg: &EvalConfig,
) -> Result<Complex64, Error> {
    let p = partials(f, tau, cfg)?;
    let y = tau.im;
    let k = k as f64;
    let d_tau = (p.dx - I * p.dy) / 2.0;
    let d_tau_bar = (p.dx + I * p.dy) / 2.0;
    Ok(match op {
        FdOp::L => -I * 2.0 * y * y * d_tau_bar,
        FdOp::R => I * 2.0 * d_tau + p.value * (k / y),
        FdOp::Laplace => -(p.dxx + p.dyy) * (y * y) + I * k * y * (p.dx + I * p.dy),
    })
}

/// `coeff · y^a (X − τ)^b (X − τ̄)^c`.
#[derive(Clone, Copy, Debug)]
pub struct Monomial {
    pub coeff: Complex64,
    pub y_exp: i64,
    pub hol_exp: i64,
    pub antihol_exp: i64,
}

/// Sums of [`Monomial`]s, closed under the Maaß operators.
#[derive(Clone, Debug, Default)]
pub struct MonomialSum(pub Vec<Monomial>);

impl MonomialSum {
    /// `𝔢_{r,m−r} = (−1)^{m−r}/r! · y^{r−m} (X−τ)^r (X−τ̄)^{m−r}`, zero outside `0 ≤ r ≤ m`.
    pub fn basis(m: i64, r: i64) -> Self {
        if r < 0 || r > m {
            return Self::default();
        }
        let fact: f64 = (1..=r).map(|i| i as f64).product();
        let sign = if (m - r) % 2 == 0 { 1.0 } else { -1.0 };
        Self(vec![Monomial {
            coeff: Complex64::new(sign / fact, 0.0),
            y_exp: r - m,
            hol_exp: r,
            antihol_exp: m - r,
        }])
    }

    pub fn scale(mut self, c: Complex64) -> Self {
        for t in &mut self.0 {
            t.coeff *= c;
        }
        self
    }

    pub fn eval(&self, tau: Complex64, big_x: Complex64) -> Complex64 {
        self.0
            .iter()
            .map(|t| {
                t.coeff
                    * tau.im.powi(t.y_exp as i32)
                    * (big_x - tau).powi(t.hol_exp as i32)
                    * (big_x - tau.conj()).powi(t.antihol_exp as i32)
            })
            .sum()
    }

    /// `∂_τ` using `∂_τ y = 1/(2i)`.
    fn d_tau(&self) -> Self {
        let mut out = Vec::new();
        for t in &self.0 {
            if t.y_exp != 0 {
                out.push(Monomial { coeff: t.coeff * t.y_exp as f64 / (I * 2.0), y_exp: t.y_exp - 1, ..*t });
            }
            if t.hol_exp != 0 {
                out.push(Monomial { coeff: -t.coeff * t.hol_exp as f64, hol_exp: t.hol_exp - 1, ..*t });
            }
        }
        Self(out)
    }

    /// `∂_τ̄` using `∂_τ̄ y = −1/(2i)`.
    fn d_tau_bar(&self) -> Self {
        let mut out = Vec::new();
        for t in &self.0 {
            if t.y_exp != 0 {
                out.push(Monomial { coeff: -t.coeff * t.y_exp as f64 / (I * 2.0), y_exp: t.y_exp - 1, ..*t });
            }
            if t.antihol_exp != 0 {
                out.push(Monomial { coeff: -t.coeff * t.antihol_exp as f64, antihol_exp: t.antihol_exp - 1, ..*t });
            }
        }
        Self(out)
    }

    fn times_y(mut self, e: i64) -> Self {
        for t in &mut self.0 {
            t.y_exp += e;
        }
        self
    }

    pub fn lower(&self) -> Self {
        self.d_tau_bar().times_y(2).scale(-I * 2.0)
    }

    pub fn raise(&self, k: i64) -> Self {
        let mut out = self.d_tau().scale(I * 2.0);
        out.0.extend(self.clone().times_y(-1).scale(Complex64::new(k as f64, 0.0)).0);
        out
    }

    pub fn laplace(&self, k: i64) -> Self {
        self.lower().raise(k - 2).scale(Complex64::new(-1.0, 0.0))
    }
}
