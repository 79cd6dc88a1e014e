//! Pointwise residuals of the operator identities satisfied by the coset sums.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fd::{fd_operator, FdOp, MonomialSum};
use super::series::{eval_character_eisenstein, eval_eisenstein, EvalConfig, SamplePoint};
use crate::Error;

/// Tolerance used for the algebraic 𝔢-basis identities.
pub const BASIS_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Identity {
    /// `Δ_k E_k(τ,s) = s(1−k−s) E_k(τ,s)`
    Laplace,
    /// `L_k E_k(τ,s) = s E_{k−2}(τ,s+1)`
    Lowering,
    /// `R_k E_k(τ,s) = (s+k) E_{k+2}(τ,s−1)`
    Raising,
    /// `y^k conj(E_k(τ, s̄)) = E_{−k}(τ,s+k)`
    Conjugation,
    /// `Δ_1 E_D(τ,s) = −s² E_D(τ,s)` for the twisted weight-one series.
    IncoherentLaplace { disc: i64 },
    /// `L 𝔢_{r,m−r} = (r+1)(m−r) 𝔢_{r+1,m−r−1}` at the polynomial variable `X`.
    BasisLowering { m: i64, r: i64, x_re: f64, x_im: f64 },
    /// `R 𝔢_{r,m−r} = 𝔢_{r−1,m−r+1}`
    BasisRaising { m: i64, r: i64, x_re: f64, x_im: f64 },
    /// `Δ 𝔢_{r,m−r} = −(r+1)(m−r) 𝔢_{r,m−r}`
    BasisLaplace { m: i64, r: i64, x_re: f64, x_im: f64 },
}

/// A weight together with a sample point. Basis identities take their weight from `m − 2r`
/// and ignore `k` and `s`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub k: i64,
    #[serde(flatten)]
    pub point: SamplePoint,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub identity: Identity,
    pub point: Sample,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub entries: Vec<Residual>,
    pub passed: bool,
}

impl Report {
    pub fn new(entries: Vec<Residual>) -> Self {
        let passed = entries.iter().all(|e| e.pass);
        Self { entries, passed }
    }

    pub fn worst(&self) -> f64 {
        self.entries.iter().map(|e| e.residual).fold(0.0, f64::max)
    }
}

fn relative(lhs: Complex64, rhs: Complex64) -> f64 {
    let scale = lhs.norm().max(rhs.norm()).max(f64::MIN_POSITIVE);
    (lhs - rhs).norm() / scale
}

fn sides(identity: Identity, sample: &Sample, cfg: &EvalConfig) -> Result<(Complex64, Complex64), Error> {
    let tau = sample.point.tau();
    let s = sample.point.s();
    let k = sample.k;
    let one = Complex64::new(1.0, 0.0);
    let series = |w: i64, sp: Complex64| move |t: Complex64| eval_eisenstein(w, sp, t, cfg).unwrap_or(Complex64::new(f64::NAN, 0.0));
    let basis = |m: i64, r: i64, x_re: f64, x_im: f64| (MonomialSum::basis(m, r), m - 2 * r, Complex64::new(x_re, x_im));
    match identity {
        Identity::Laplace | Identity::Lowering | Identity::Raising | Identity::Conjugation => {
            sample.point.check_region(k)?;
        }
        _ => {}
    }
    Ok(match identity {
        Identity::Laplace => {
            let lhs = fd_operator(FdOp::Laplace, k, &series(k, s), tau, cfg)?;
            (lhs, s * (one * (1 - k) as f64 - s) * eval_eisenstein(k, s, tau, cfg)?)
        }
        Identity::Lowering => {
            let lhs = fd_operator(FdOp::L, k, &series(k, s), tau, cfg)?;
            (lhs, s * eval_eisenstein(k - 2, s + 1.0, tau, cfg)?)
        }
        Identity::Raising => {
            let lhs = fd_operator(FdOp::R, k, &series(k, s), tau, cfg)?;
            (lhs, (s + k as f64) * eval_eisenstein(k + 2, s - 1.0, tau, cfg)?)
        }
        Identity::Conjugation => {
            let lhs = eval_eisenstein(k, s.conj(), tau, cfg)?.conj() * tau.im.powi(k as i32);
            (lhs, eval_eisenstein(-k, s + k as f64, tau, cfg)?)
        }
        Identity::IncoherentLaplace { disc } => {
            let value = eval_character_eisenstein(disc, s, tau, cfg)?;
            let f = |t: Complex64| eval_character_eisenstein(disc, s, t, cfg).unwrap_or(Complex64::new(f64::NAN, 0.0));
            (fd_operator(FdOp::Laplace, 1, &f, tau, cfg)?, -s * s * value)
        }
        Identity::BasisLowering { m, r, x_re, x_im } => {
            let (e, _, x) = basis(m, r, x_re, x_im);
            let rhs = MonomialSum::basis(m, r + 1).scale(Complex64::new(((r + 1) * (m - r)) as f64, 0.0));
            (e.lower().eval(tau, x), rhs.eval(tau, x))
        }
        Identity::BasisRaising { m, r, x_re, x_im } => {
            let (e, w, x) = basis(m, r, x_re, x_im);
            (e.raise(w).eval(tau, x), MonomialSum::basis(m, r - 1).eval(tau, x))
        }
        Identity::BasisLaplace { m, r, x_re, x_im } => {
            let (e, w, x) = basis(m, r, x_re, x_im);
            let rhs = e.clone().scale(Complex64::new(-((r + 1) * (m - r)) as f64, 0.0));
            (e.laplace(w).eval(tau, x), rhs.eval(tau, x))
        }
    })
}

fn residual_of(identity: Identity, sample: &Sample, cfg: &EvalConfig) -> Result<Residual, Error> {
    let (lhs, rhs) = sides(identity, sample, cfg)?;
    let tolerance = match identity {
        Identity::BasisLowering { .. } | Identity::BasisRaising { .. } | Identity::BasisLaplace { .. } => {
            BASIS_TOLERANCE
        }
        _ => cfg.tolerance,
    };
    // Both sides vanishing is an exact match.
    let residual = if lhs.norm() == 0.0 && rhs.norm() == 0.0 { 0.0 } else { relative(lhs, rhs) };
    Ok(Residual { identity, point: *sample, residual, tolerance, pass: residual < tolerance })
}

/// Residuals of one identity at each sample, computed in parallel and reported in input order.
pub fn verify_identity(identity: Identity, samples: &[Sample], cfg: &EvalConfig) -> Result<Report, Error> {
    cfg.validate()?;
    let entries = samples.par_iter().map(|s| residual_of(identity, s, cfg)).collect::<Result<Vec<_>, _>>()?;
    Ok(Report::new(entries))
}

/// Checks a list of `(identity, sample)` pairs.
pub fn verify_pairs(pairs: &[(Identity, Sample)], cfg: &EvalConfig) -> Result<Report, Error> {
    cfg.validate()?;
    let entries = pairs.par_iter().map(|(i, s)| residual_of(*i, s, cfg)).collect::<Result<Vec<_>, _>>()?;
    Ok(Report::new(entries))
}

fn sample(k: i64, x: f64, y: f64, s_re: f64, s_im: f64) -> Sample {
    Sample { k, point: SamplePoint { x, y, s_re, s_im } }
}

/// Twelve points inside the convergence region, three for each of the weights −2, 0, 2, 4.
pub fn default_samples() -> Vec<Sample> {
    vec![
        sample(-2, 0.1, 0.9, 3.2, 0.0),
        sample(-2, -0.3, 1.2, 2.6, 0.4),
        sample(-2, 0.45, 0.8, 3.5, 0.0),
        sample(0, 0.15, 1.0, 2.0, 0.0),
        sample(0, 0.1, 0.8, 2.5, 0.0),
        sample(0, -0.25, 1.3, 2.2, 0.5),
        sample(2, 0.2, 1.0, 1.5, 0.0),
        sample(2, -0.4, 0.9, 2.0, 0.0),
        sample(2, 0.05, 1.5, 1.3, -0.3),
        sample(4, -0.15, 1.0, 1.0, 0.0),
        sample(4, 0.3, 0.85, 0.8, 0.0),
        sample(4, -0.1, 1.1, 1.2, 0.2),
    ]
}

pub fn eisenstein_pairs() -> Vec<(Identity, Sample)> {
    let ids = [Identity::Laplace, Identity::Lowering, Identity::Raising, Identity::Conjugation];
    ids.iter().flat_map(|&i| default_samples().into_iter().map(move |s| (i, s))).collect()
}

pub fn incoherent_pairs() -> Vec<(Identity, Sample)> {
    let points = [sample(1, 0.1, 1.0, 1.5, 0.0), sample(1, -0.2, 0.9, 2.0, 0.3), sample(1, 0.35, 1.2, 1.8, 0.0)];
    [3, 7]
        .iter()
        .flat_map(|&disc| points.iter().map(move |s| (Identity::IncoherentLaplace { disc }, *s)))
        .collect()
}

pub fn basis_pairs() -> Vec<(Identity, Sample)> {
    let taus = [sample(0, 1.0 / 3.0, 1.0, 0.0, 0.0), sample(0, -0.7, 0.4, 0.0, 0.0), sample(0, 0.2, 2.5, 0.0, 0.0)];
    let xs = [(2.0, 0.0), (-0.5, 1.5)];
    let mut out = Vec::new();
    for m in 0..=4 {
        for r in 0..=m {
            for (i, t) in taus.iter().enumerate() {
                let (x_re, x_im) = xs[i % xs.len()];
                out.push((Identity::BasisLowering { m, r, x_re, x_im }, *t));
                out.push((Identity::BasisRaising { m, r, x_re, x_im }, *t));
                out.push((Identity::BasisLaplace { m, r, x_re, x_im }, *t));
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Eisenstein,
    Incoherent,
    Basis,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "eisenstein" => Ok(Suite::Eisenstein),
            "incoherent" => Ok(Suite::Incoherent),
            "basis" => Ok(Suite::Basis),
            "all" => Ok(Suite::All),
            _ => Err(Error::Parse(format!("unknown suite {s:?}"))),
        }
    }
}

pub fn run_suite(suite: Suite, cfg: &EvalConfig) -> Result<Report, Error> {
    let pairs = match suite {
        Suite::Eisenstein => eisenstein_pairs(),
        Suite::Incoherent => incoherent_pairs(),
        Suite::Basis => basis_pairs(),
        Suite::All => [eisenstein_pairs(), incoherent_pairs(), basis_pairs()].concat(),
    };
    verify_pairs(&pairs, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_identities_are_tight() {
        let report = run_suite(Suite::Basis, &EvalConfig::default()).unwrap();
        assert!(report.passed, "worst {}", report.worst());
    }

    #[test]
    fn region_is_enforced() {
        let bad = [sample(0, 0.0, 1.0, 0.5, 0.0)];
        assert!(verify_identity(Identity::Laplace, &bad, &EvalConfig::default()).is_err());
    }
}
