//! End-to-end acceptance run. Prints one line per criterion and fails if any criterion fails.

#[path = "../../polyharm/tests/common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use polyharm::classify::{classify_many, expected_dimension_vector, BkCase, ReprCase};
use polyharm::numcheck::{run_suite, EvalConfig, Identity, Suite};
use polyharm::quiverrep::{
    build_cyclic_module, classify_cyclic, endomorphism_top_dimension, hc_to_quiver, invariants_of,
    iso_two_descriptions, random_consistent_fragment, second_description, CyclicCase, CyclicClass, NodeType, Quiver,
    QuiverRep,
};
use polyharm::scalar::{factorial, q, qf, Q, Scalar};
use polyharm::specsolve::{
    build_w0, construct_case, emit_form, preimage_constant_weight, preimage_incoherent, solve_wd, CaseParams,
};
use polyharm::symcalc::display::displayed_coefficients;
use polyharm::symcalc::{flip, is_zero, laplace, laplace_pow, Dir, Family, FamilySymbol, Form, PolyAtom, SpectralAtom};

const GOLDEN_BK: &str = "1/72 e_{0,3} L^3 E^{(2)}_{0,0} + 1/8 e_{1,2} L^2 E^{(2)}_{0,0} + 1/2 e_{2,1} L^1 E^{(2)}_{0,0} \
+ 1/2 e_{3,0} E^{(2)}_{0,0} + 11/216 e_{0,3} L^3 E^{(1)}_{0,0} + 3/8 e_{1,2} L^2 E^{(1)}_{0,0} + e_{2,1} L^1 E^{(1)}_{0,0}";
const GOLDEN_POINTS: &str = "1/2 e_{3,0} E^{(2)}_{0,0} + 1/18 e_{0,3} E^{(1)}_{-6,3} + 1/4 e_{1,2} E^{(1)}_{-4,2} \
+ e_{2,1} E^{(1)}_{-2,1} + 5/27 e_{0,3} E^{(0)}_{-6,3} + 5/8 e_{1,2} E^{(0)}_{-4,2} + e_{2,1} E^{(0)}_{-2,1}";

fn run_cli(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_polyharm")).args(args).output().expect("binary runs");
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

fn golden() {
    assert_eq!(run_cli(&["construct", "--case", "Ia", "--k", "-3", "--d", "2"]), GOLDEN_BK);
    let json = run_cli(&["--json", "construct", "--case", "Ia", "--k", "-3", "--d", "2"]);
    let path = std::env::temp_dir().join(format!("polyharm-acceptance-{}.json", std::process::id()));
    std::fs::write(&path, json).unwrap();
    let expanded = run_cli(&["expand", "--in", path.to_str().unwrap()]);
    let _ = std::fs::remove_file(&path);
    assert_eq!(expanded, GOLDEN_POINTS);
}

fn preimages(branch: Dir, ks: std::ops::RangeInclusive<i64>) {
    for k in ks {
        let family = common::eisenstein(k);
        for m in 0..=4 {
            let top = emit_form(&build_w0(k, m, branch).unwrap(), &family).unwrap();
            assert!(laplace(&top).is_empty(), "k={k} m={m}");
            for d in 0..=3 {
                let f = emit_form(&solve_wd(k, m, branch, d).unwrap().normalized(), &family).unwrap();
                let diff = laplace_pow(&f, d).sub(&top).unwrap();
                assert!(is_zero(&diff), "k={k} m={m} {branch:?} d={d}");
            }
        }
    }
}

fn oracle_equivalence() {
    for (branch, ks) in [(Dir::L, -6..=0), (Dir::R, 2..=6)] {
        for k in ks {
            for m in 0..=4 {
                for d in 0..=3 {
                    let w = solve_wd(k, m, branch, d).unwrap();
                    let oracle = common::kernel_oracle(k, m, branch, d).expect("unique kernel element");
                    assert_eq!(w.layers, oracle, "k={k} m={m} {branch:?} d={d}");
                }
            }
        }
    }
}

fn constant_weight() {
    for k in -3..=4i64 {
        let families = if k == 1 {
            vec![FamilySymbol::new(Family::Poincare { index: -1 }, 1, 1)]
        } else {
            vec![common::eisenstein(k), FamilySymbol::new(Family::Poincare { index: -2 }, k, 1)]
        };
        for family in families {
            for d in 0..=3u32 {
                let want = if k == 1 {
                    let sign = if d % 2 == 0 { Q::one() } else { -Q::one() };
                    sign / Q::from_integer(factorial(2 * d as u64).to_integer())
                } else {
                    (Q::from_integer(factorial(d as u64).to_integer()) * q(1 - k).pow(d as i32)).recip()
                };
                let f = preimage_constant_weight(d, &family);
                assert_eq!(displayed_coefficients(&f), vec![Scalar::rational(want)], "k={k} d={d}");
                assert_eq!(laplace_pow(&f, d), Form::spectral(family.atom(0)), "k={k} d={d}");
            }
        }
    }
    assert_eq!(displayed_coefficients(&preimage_incoherent(3, 2)), vec![Scalar::rational(qf(1, 120))]);
}

fn classification() {
    let params = CaseParams::default();
    let (mut forms, mut expected) = (Vec::new(), Vec::new());
    for label in BkCase::ALL {
        let ks: Vec<i64> = match label {
            BkCase::Ia | BkCase::Ib | BkCase::Ic | BkCase::Id => (-4..=0).collect(),
            BkCase::IIa | BkCase::IIb => vec![1],
            _ => (2..=5).collect(),
        };
        let depths = if label == BkCase::IIId { 1..=2 } else { 0..=2 };
        for k in ks {
            if label == BkCase::IIId {
                assert!(construct_case(label, k, 0, &params).is_err());
            }
            for d in depths.clone() {
                forms.push(construct_case(label, k, d, &params).unwrap());
                expected.push((label, k, d));
            }
        }
    }
    for (got, (label, k, d)) in classify_many(&forms).into_iter().zip(expected) {
        let got = got.unwrap();
        assert_eq!((got.bk, got.depth, got.context.k), (label, d, k), "{label} k={k} d={d}");
    }
    let mut images: Vec<ReprCase> = BkCase::ALL.iter().map(|b| b.repr()).collect();
    images.sort();
    images.dedup();
    assert_eq!(images.len(), BkCase::ALL.len());
    assert!(ReprCase::ALL.iter().all(|r| r.bk().repr() == *r));
}

/// Single-term forms of weight at most zero, where the flip operator is defined.
fn non_positive_grid() -> Vec<Form> {
    let polys = [(0u32, 0u32), (1, 0), (1, 1), (2, 1), (3, 0), (3, 2)];
    let mut out = Vec::new();
    for w in -8..=0i64 {
        for p in [q(0), qf(1, 2), q(2), q(1 - w)] {
            for j in 0..=2 {
                let (m, r) = polys[out.len() % polys.len()];
                let spectral = Form::spectral(SpectralAtom::new(Family::Eisenstein, w, p.clone(), j));
                let f = Form::tensor(PolyAtom::new(m, r).unwrap(), &spectral).unwrap();
                if !f.is_empty() && f.weight() <= 0 {
                    out.push(f);
                }
            }
        }
    }
    out
}

/// Spectral atoms with a trivial polynomial part, for the two-path product rule.
fn spectral_grid() -> Vec<Form> {
    let mut out = Vec::new();
    for w in -4..=4i64 {
        for p in [q(0), qf(1, 2), q(2), q(1 - w)] {
            for j in 0..=2 {
                out.push(Form::spectral(SpectralAtom::new(Family::Eisenstein, w, p.clone(), j)));
            }
        }
        let sigma = qf(w.abs() + 2, 2);
        out.push(Form::spectral(SpectralAtom::new(Family::Poincare { index: -2 }, w, sigma, 1)));
    }
    out.retain(|f| !f.is_empty());
    out
}

fn symbolic_identities() {
    let grid = common::atom_grid();
    assert!(grid.len() >= 50);
    for f in &grid {
        for r in 0..=2 {
            assert!(common::laplace_commutators_hold(f, r));
        }
        for r in 1..=2 {
            assert!(common::iterated_commutators_hold(f, r));
        }
        assert!(common::mirror_is_involution(f));
    }
    let non_positive = non_positive_grid();
    assert!(non_positive.len() >= 50, "{}", non_positive.len());
    for f in &non_positive {
        assert!(common::flip_commutators_hold(f));
        assert!(common::flip_commutes_with_laplace(f));
    }
    let spectral = spectral_grid();
    assert!(spectral.len() >= 50, "{}", spectral.len());
    let polys = [(0u32, 0u32), (1, 0), (1, 1), (2, 1), (3, 0), (3, 2), (4, 2)];
    for (i, g) in spectral.iter().enumerate() {
        let (m, r) = polys[i % polys.len()];
        assert!(common::product_rule_holds(PolyAtom::new(m, r).unwrap(), g));
    }
    for m in 0..=6u32 {
        let e = Form::e_atom(m, m).unwrap();
        let sign = if m % 2 == 0 { 1 } else { -1 };
        assert_eq!(flip(&e).unwrap(), e.scale(&Scalar::int(sign)));
    }
    let harmonic = common::harmonic_grid();
    for f in &harmonic {
        assert_eq!(flip(&flip(f).unwrap()).unwrap(), *f);
    }
}

fn quiver_suite() {
    use CyclicCase::*;
    use NodeType::*;
    let labelled = [
        (Quiver::Gelfand, Star, A, ReprCase::GIa),
        (Quiver::Gelfand, Star, B, ReprCase::GIb),
        (Quiver::Gelfand, Star, C, ReprCase::GIc),
        (Quiver::Gelfand, Star, D, ReprCase::GId),
        (Quiver::Gelfand, Plus, A, ReprCase::GIIa),
        (Quiver::Gelfand, Plus, B, ReprCase::GIIb),
        (Quiver::Gelfand, Plus, C, ReprCase::GIIc),
        (Quiver::Gelfand, Plus, D, ReprCase::GIId),
        (Quiver::Cyclic, Plus, A, ReprCase::CIa),
        (Quiver::Cyclic, Plus, B, ReprCase::CIb),
    ];
    for d in 0..=5u32 {
        let du = d as usize;
        let mut cases: Vec<(Quiver, NodeType, CyclicCase, Vec<usize>)> = Vec::new();
        for (quiver, node, case, repr) in labelled {
            if case == D && d == 0 && node == Plus {
                assert!(build_cyclic_module(quiver, node, case, d).is_err());
                assert!(build_cyclic_module(quiver, Minus, case, d).is_err());
                continue;
            }
            let dims = expected_dimension_vector(repr, d).unwrap();
            if node == Plus {
                cases.push((quiver, Minus, case, dims.iter().rev().copied().collect()));
            }
            cases.push((quiver, node, case, dims));
        }
        // Cyclic quiver, type −: (d+1, d) and (d+1, d+1).
        assert!(cases.contains(&(Quiver::Cyclic, Minus, A, vec![du + 1, du])));
        assert!(cases.contains(&(Quiver::Cyclic, Minus, B, vec![du + 1, du + 1])));
        for (quiver, node, case, dims) in cases {
            let rep = build_cyclic_module(quiver, node, case, d).unwrap();
            assert_eq!(classify_cyclic(&rep).unwrap(), CyclicClass { node, case, d });
            let inv = invariants_of(&rep).unwrap();
            assert_eq!(inv.dims, dims, "{quiver:?} {node:?} {case:?} d={d}");
            assert_eq!(inv.degrees[rep.vertex(node).unwrap()], du + 1);
            if let QuiverRep::Gelfand { a_minus, b_minus, a_plus, b_plus, .. } = &rep {
                assert_eq!(a_minus * b_minus, a_plus * b_plus);
            }
            assert_eq!(endomorphism_top_dimension(&rep), 1);
        }
    }
    for l in 1..=3u32 {
        for seed in 0..10u64 {
            let frag = random_consistent_fragment(l, 2, seed);
            let witness = iso_two_descriptions(&frag).unwrap();
            assert!(witness.t.inverse().is_some());
            let a = invariants_of(&hc_to_quiver(&frag).unwrap()).unwrap();
            let b = invariants_of(&second_description(&frag).unwrap()).unwrap();
            assert_eq!(a, b);
        }
    }
}

fn numeric_suite() {
    let report = run_suite(Suite::All, &EvalConfig::default()).unwrap();
    for identity in [Identity::Laplace, Identity::Lowering, Identity::Raising, Identity::Conjugation] {
        let n = report.entries.iter().filter(|e| e.identity == identity).count();
        assert!(n >= 12, "{identity:?} has {n} samples");
    }
    let worst = report.entries.iter().filter(|e| !e.pass).map(|e| (e.identity, e.residual)).next();
    assert!(report.passed, "first failure {worst:?}");
}

fn alternating_trace() {
    for m in 0..=6u32 {
        let mi = m as i64;
        for k in (2..=8).chain(-mi - 3..=-mi) {
            let w0 = build_w0(k, m, Dir::R).unwrap().layers.remove(0);
            let trace = w0.iter().enumerate().fold(Q::zero(), |acc, (r, c)| if r % 2 == 0 { acc + c } else { acc - c });
            assert!(!trace.is_zero(), "k={k} m={m}");
        }
    }
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn(), u64); 10] = [
        (1, "golden reproduction", golden, 1),
        (2, "preimage identity, lowering branch", || preimages(Dir::L, -6..=0), 60),
        (3, "preimage identity, raising branch", || preimages(Dir::R, 2..=6), 60),
        (4, "oracle equivalence", oracle_equivalence, 60),
        (5, "constant-weight preimages", constant_weight, 60),
        (6, "classification round trip", classification, 120),
        (7, "symbolic operator identities", symbolic_identities, 60),
        (8, "quiver suite", quiver_suite, 60),
        (9, "numeric suite", numeric_suite, 60),
        (10, "alternating trace", alternating_trace, 60),
    ];
    std::panic::set_hook(Box::new(|info| eprintln!("  {info}")));
    let mut failed = 0;
    for (n, name, check, budget) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check));
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(budget);
        let pass = outcome.is_ok() && in_time;
        let note = if outcome.is_ok() && !in_time { format!(", over the {budget} s budget") } else { String::new() };
        println!("criterion {n}: {} {name} ({:.2} s{note})", if pass { "PASS" } else { "FAIL" }, elapsed.as_secs_f64());
        if !pass {
            failed += 1;
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
