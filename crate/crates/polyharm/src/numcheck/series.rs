//! Truncated coset sums over `Γ_∞ \ SL_2(Z)`.

use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    /// Largest `|c|` and `|d|` in the coset sum.
    pub truncation: u32,
    pub fd_step: f64,
    pub richardson: bool,
    pub tolerance: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self { truncation: 400, fd_step: 1e-2, richardson: true, tolerance: 1e-5 }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if self.truncation < 1 {
            return Err(Error::Domain("truncation must be at least 1".into()));
        }
        if !(self.fd_step > 0.0) {
            return Err(Error::Domain("finite-difference step must be positive".into()));
        }
        Ok(())
    }
}

/// `τ = x + iy` and the spectral parameter `s`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplePoint {
    pub x: f64,
    pub y: f64,
    pub s_re: f64,
    #[serde(default)]
    pub s_im: f64,
}

impl SamplePoint {
    pub fn new(x: f64, y: f64, s: f64) -> Self {
        Self { x, y, s_re: s, s_im: 0.0 }
    }

    pub fn tau(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub fn s(&self) -> Complex64 {
        Complex64::new(self.s_re, self.s_im)
    }

    /// Absolute convergence of the weight-`k` sum needs `Re(s) > 1 − k/2`.
    pub fn check_region(&self, k: i64) -> Result<(), Error> {
        if !(self.y > 0.0) {
            return Err(Error::Domain(format!("τ must lie in the upper half plane, got y = {}", self.y)));
        }
        if self.s_re <= 1.0 - k as f64 / 2.0 {
            return Err(Error::Domain(format!(
                "Re(s) = {} outside the convergence region Re(s) > {} for weight {k}",
                self.s_re,
                1.0 - k as f64 / 2.0
            )));
        }
        Ok(())
    }
}

/// Coset representatives `(c, d)` with `c > 0`, or the identity, in the fixed summation order.
fn coset_sum(n: u32, term: impl Fn(i64, i64) -> Complex64 + Sync) -> Complex64 {
    let n = n as i64;
    let rows: Vec<Complex64> = (1..=n)
        .into_par_iter()
        .map(|c| {
            let mut acc = Complex64::new(0.0, 0.0);
            for ad in 0..=n {
                let ds: &[i64] = if ad == 0 { &[0] } else { &[ad, -ad] };
                for &d in ds {
                    if c.gcd(&d) == 1 {
                        acc += term(c, d);
                    }
                }
            }
            acc
        })
        .collect();
    rows.into_iter().fold(term(0, 1), |acc, x| acc + x)
}

/// `(cτ+d)^{−k} (y / |cτ+d|²)^s`.
fn slash_term(k: i64, s: Complex64, tau: Complex64, c: i64, d: i64) -> Complex64 {
    let z = tau * c as f64 + d as f64;
    let log_ratio = tau.im.ln() - z.norm_sqr().ln();
    (s * log_ratio).exp() * z.powi(-(k as i32))
}

/// The truncated weight-`k` Eisenstein series `Σ y^s |_k γ`.
pub fn eval_eisenstein(k: i64, s: Complex64, tau: Complex64, cfg: &EvalConfig) -> Result<Complex64, Error> {
    cfg.validate()?;
    SamplePoint { x: tau.re, y: tau.im, s_re: s.re, s_im: s.im }.check_region(k)?;
    Ok(coset_sum(cfg.truncation, |c, d| slash_term(k, s, tau, c, d)))
}

/// Upper bound for the omitted part of the coset sum at truncation `N`.
///
/// Uses `|cτ+d|² ≥ λ (c² + d²)` with `λ` the smaller eigenvalue of the quadratic form and
/// compares the tail with an integral over half an annulus.
pub fn truncation_estimate(k: i64, s: Complex64, tau: Complex64, n: u32) -> f64 {
    let (x, y) = (tau.re, tau.im);
    let trace = x * x + y * y + 1.0;
    let disc = ((x * x + y * y - 1.0).powi(2) + 4.0 * x * x).sqrt();
    let lambda = (trace - disc) / 2.0;
    let decay = k as f64 + 2.0 * s.re;
    let r0 = (n as f64 - 1.0).max(1.0);
    y.powf(s.re) * lambda.powf(-decay / 2.0) * std::f64::consts::PI * r0.powf(2.0 - decay) / (decay - 2.0)
}

/// Richardson extrapolation in the truncation from `N` and `2N`, assuming a tail of order
/// `N^{2 − k − 2 Re(s)}`.
pub fn eval_eisenstein_extrapolated(k: i64, s: Complex64, tau: Complex64, cfg: &EvalConfig) -> Result<Complex64, Error> {
    let coarse = eval_eisenstein(k, s, tau, cfg)?;
    let fine = eval_eisenstein(k, s, tau, &EvalConfig { truncation: 2 * cfg.truncation, ..*cfg })?;
    let ratio = 2f64.powf(k as f64 + 2.0 * s.re - 2.0);
    Ok(fine + (fine - coarse) / (ratio - 1.0))
}

/// Kronecker symbol `(a/n)`.
pub fn kronecker(a: i64, n: i64) -> i32 {
    if n == 0 {
        return if a.abs() == 1 { 1 } else { 0 };
    }
    let mut result = 1;
    let mut n = n;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let mut twos = 0;
    while n % 2 == 0 {
        n /= 2;
        twos += 1;
    }
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
    }
    // Jacobi symbol (a/n) for odd positive n.
    let mut a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

fn is_prime(n: i64) -> bool {
    n >= 2 && (2..).take_while(|p| p * p <= n).all(|p| n % p != 0)
}

/// The character weight of the coset `(c, d)` for the odd quadratic character of conductor `D`.
pub fn character_weight(disc: i64, c: i64, d: i64) -> Complex64 {
    if c.gcd(&disc) == 1 {
        Complex64::new(0.0, -(disc as f64).sqrt()) * kronecker(-disc, c) as f64
    } else {
        // `a ≡ d^{−1}` modulo `D` and the symbol is real.
        Complex64::new(kronecker(-disc, d) as f64, 0.0)
    }
}

/// Weight-one Eisenstein series twisted by the odd quadratic character attached to `−D`.
///
/// Convergence is only guarded conservatively, by `Re(s) > 1`.
pub fn eval_character_eisenstein(disc: i64, s: Complex64, tau: Complex64, cfg: &EvalConfig) -> Result<Complex64, Error> {
    cfg.validate()?;
    if !is_prime(disc) || disc % 4 != 3 {
        return Err(Error::Domain(format!("{disc} is not a prime with −{disc} a fundamental discriminant")));
    }
    if !(tau.im > 0.0) || s.re <= 1.0 {
        return Err(Error::Domain(format!("twisted series evaluated outside Re(s) > 1 (s = {s})")));
    }
    Ok(coset_sum(cfg.truncation, |c, d| character_weight(disc, c, d) * slash_term(1, s, tau, c, d)))
}
