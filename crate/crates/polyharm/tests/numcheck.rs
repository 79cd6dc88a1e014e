use num_complex::Complex64;
use polyharm::numcheck::*;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn cfg(n: u32) -> EvalConfig {
    EvalConfig { truncation: n, ..Default::default() }
}

/// `1 + 240 Σ σ_3(n) q^n` at `τ = i`.
fn e4_at_i_from_q_series() -> f64 {
    let q = (-2.0 * std::f64::consts::PI).exp();
    let sigma3 = |n: u64| (1..=n).filter(|d| n % d == 0).map(|d| (d * d * d) as f64).sum::<f64>();
    1.0 + 240.0 * (1..=12).map(|n| sigma3(n) * q.powi(n as i32)).sum::<f64>()
}

#[test]
fn holomorphic_weight_four_at_i() {
    let oracle = e4_at_i_from_q_series();
    let tau = c(0.0, 1.0);
    let plain = eval_eisenstein(4, c(0.0, 0.0), tau, &cfg(400)).unwrap();
    assert!((plain.re - oracle).abs() < 1e-4 && plain.im.abs() < 1e-9, "{plain} vs {oracle}");
    let sharp = eval_eisenstein_extrapolated(4, c(0.0, 0.0), tau, &cfg(200)).unwrap();
    assert!((sharp.re - oracle).abs() < 1e-6, "{sharp} vs {oracle}");
}

#[test]
fn self_convergence_under_doubling() {
    let (s, tau) = (c(2.0, 0.0), c(0.0, 1.0));
    let a = eval_eisenstein_extrapolated(0, s, tau, &cfg(200)).unwrap();
    let b = eval_eisenstein_extrapolated(0, s, tau, &cfg(400)).unwrap();
    assert!((a - b).norm() < 1e-6, "{a} vs {b}");
    for (k, s, tau) in [(0, c(2.0, 0.0), c(0.0, 1.0)), (2, c(1.5, 0.3), c(0.2, 0.9)), (-2, c(3.0, 0.0), c(-0.4, 1.2))] {
        let coarse = eval_eisenstein(k, s, tau, &cfg(100)).unwrap();
        let fine = eval_eisenstein(k, s, tau, &cfg(200)).unwrap();
        assert!((fine - coarse).norm() <= truncation_estimate(k, s, tau, 100), "k={k}");
    }
}

#[test]
fn region_violations() {
    assert!(eval_eisenstein(0, c(1.0, 0.0), c(0.0, 1.0), &cfg(10)).is_err());
    assert!(eval_eisenstein(4, c(-1.5, 0.0), c(0.0, 1.0), &cfg(10)).is_err());
    assert!(eval_eisenstein(0, c(2.0, 0.0), c(0.0, -1.0), &cfg(10)).is_err());
    assert!(eval_character_eisenstein(3, c(0.9, 0.0), c(0.0, 1.0), &cfg(10)).is_err());
    assert!(eval_character_eisenstein(5, c(2.0, 0.0), c(0.0, 1.0), &cfg(10)).is_err());
    assert!(EvalConfig { truncation: 0, ..Default::default() }.validate().is_err());
}

fn euler_criterion(a: i64, p: i64) -> i32 {
    let mut acc = 1i64;
    let base = a.rem_euclid(p);
    for _ in 0..(p - 1) / 2 {
        acc = acc * base % p;
    }
    match acc {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

#[test]
fn kronecker_matches_euler_criterion() {
    let primes = (3..200i64).filter(|n| (2..*n).take_while(|p| p * p <= *n).all(|p| n % p != 0));
    for p in primes {
        for disc in [3, 7, 11, 19, 23] {
            assert_eq!(kronecker(-disc, p), euler_criterion(-disc, p), "(-{disc}/{p})");
        }
    }
    assert_eq!(kronecker(-3, 2), -1);
    assert_eq!(kronecker(-7, 2), 1);
}

#[test]
fn identity_coset_weights() {
    assert_eq!(character_weight(3, 0, 1), c(1.0, 0.0));
    // gcd(D, c) = 1 uses the symbol in c, scaled by −i√D.
    let w = character_weight(7, 2, 1);
    assert!((w - c(0.0, -(7f64).sqrt())).norm() < 1e-15);
    // D | c uses the symbol in d.
    assert_eq!(character_weight(3, 3, 2), c(-1.0, 0.0));
}

#[test]
fn finite_difference_orders() {
    let s = 1.7;
    let f = |t: Complex64| c(t.im.powf(s), 0.0) * (c(0.0, 1.0) * t.re).exp();
    let tau = c(0.3, 1.1);
    // Δ_0 (y^s e^{ix}) = (s(1−s) + y²) y^s e^{ix}
    let exact = f(tau) * (s * (1.0 - s) + tau.im * tau.im);
    let err = |h: f64, richardson: bool| {
        let cfg = EvalConfig { fd_step: h, richardson, ..Default::default() };
        (fd_operator(FdOp::Laplace, 0, &f, tau, &cfg).unwrap() - exact).norm()
    };
    let plain = err(0.1, false) / err(0.05, false);
    assert!((3.5..4.5).contains(&plain), "ratio {plain}");
    let rich = err(0.2, true) / err(0.1, true);
    assert!((12.0..20.0).contains(&rich), "ratio {rich}");
}

#[test]
fn raising_power_of_y() {
    let s = 2.3;
    let f = |t: Complex64| c(t.im.powf(s), 0.0);
    let tau = c(-0.2, 0.7);
    let got = fd_operator(FdOp::R, 0, &f, tau, &EvalConfig::default()).unwrap();
    let want = s * tau.im.powf(s - 1.0);
    assert!((got - c(want, 0.0)).norm() < 1e-8, "{got}");
    let lowered = fd_operator(FdOp::L, 0, &f, tau, &EvalConfig::default()).unwrap();
    assert!((lowered - c(s * tau.im.powf(s + 1.0), 0.0)).norm() < 1e-8, "{lowered}");
}

fn one(identity: Identity, k: i64, x: f64, y: f64, s: f64, n: u32) -> Residual {
    let sample = Sample { k, point: SamplePoint::new(x, y, s) };
    verify_identity(identity, &[sample], &cfg(n)).unwrap().entries.remove(0)
}

#[test]
fn documented_residuals() {
    assert!(one(Identity::Laplace, 4, 0.0, 1.0, 1.0, 400).residual < 1e-5);
    assert!(one(Identity::Lowering, 0, 0.1, 0.8, 2.5, 400).residual < 1e-5);
    let basis = Identity::BasisLaplace { m: 3, r: 1, x_re: 2.0, x_im: 0.0 };
    assert!(one(basis, 0, 1.0 / 3.0, 1.0, 0.0, 1).residual < 1e-12);
}

#[test]
fn small_suites_pass() {
    let cfg = EvalConfig { truncation: 60, ..Default::default() };
    for suite in [Suite::Eisenstein, Suite::Incoherent, Suite::Basis] {
        let report = run_suite(suite, &cfg).unwrap();
        assert!(report.passed, "{suite:?} worst {}", report.worst());
        assert!(!report.entries.is_empty());
    }
}

#[test]
fn report_json_shape() {
    let report = run_suite(Suite::Basis, &EvalConfig::default()).unwrap();
    let value: serde_json::Value = serde_json::to_value(&report).unwrap();
    let entry = &value["entries"][0];
    for key in ["identity", "point", "residual", "tolerance", "pass"] {
        assert!(entry.get(key).is_some(), "missing {key}");
    }
    let back: Report = serde_json::from_value(value).unwrap();
    assert_eq!(back, report);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kronecker_multiplicative(a in prop_oneof![Just(-3i64), Just(-7), Just(-11), Just(-19)], m in 1i64..200, n in 1i64..200) {
        prop_assert_eq!(kronecker(a, m * n), kronecker(a, m) * kronecker(a, n));
    }

    #[test]
    fn basis_identities_anywhere(m in 0i64..=5, r in 0i64..=5, x in -1.0f64..1.0, y in 0.3f64..3.0, big_x in -2.0f64..2.0) {
        let r = r.min(m);
        for identity in [
            Identity::BasisLowering { m, r, x_re: big_x, x_im: 0.5 },
            Identity::BasisRaising { m, r, x_re: big_x, x_im: 0.5 },
            Identity::BasisLaplace { m, r, x_re: big_x, x_im: 0.5 },
        ] {
            let res = one(identity, 0, x, y, 0.0, 1);
            prop_assert!(res.pass, "{:?} {}", identity, res.residual);
        }
    }
}
