//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use padic_fuchs::{
    build_twist, cocycle_residual, induced_grid_permutation, run_suite, unitarity_residual, Budget,
    CheckReport, Level, RunConfig, Status, Suite, TwistMethod,
};

type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

struct Outcome {
    ok: bool,
    detail: String,
}

fn config(p: u64, n: u32, m: u32) -> RunConfig {
    RunConfig {
        p,
        n,
        m,
        seed: 2024,
        omit_timing: true,
        ..RunConfig::default()
    }
}

fn suites(levels: &[(u64, u32, u32)], names: &[Suite]) -> Outcome {
    let mut reports: Vec<CheckReport> = Vec::new();
    for &(p, n, m) in levels {
        for &s in names {
            match run_suite(&config(p, n, m), s) {
                Ok(r) => reports.extend(r),
                Err(e) => {
                    return Outcome {
                        ok: false,
                        detail: format!("{s} at ({p},{n},{m}): {e}"),
                    }
                }
            }
        }
    }
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| r.status != Status::Pass)
        .map(|r| {
            format!(
                "{}@({},{},{})",
                r.name, r.parameters.p, r.parameters.n, r.parameters.m
            )
        })
        .collect();
    let worst = reports
        .iter()
        .filter_map(|r| r.residual.filter(|_| r.tolerance > 0.0))
        .fold(0.0, f64::max);
    let exact_failures: usize = reports
        .iter()
        .filter(|r| r.tolerance == 0.0)
        .filter_map(|r| r.residual)
        .map(|v| v as usize)
        .sum();
    Outcome {
        ok: failed.is_empty(),
        detail: if failed.is_empty() {
            format!(
                "{} checks, worst float residual {worst:.2e}, exact failures {exact_failures}",
                reports.len()
            )
        } else {
            format!("not passing: {}", failed.join(", "))
        },
    }
}

fn unitarity() -> Outcome {
    let mut detail = Vec::new();
    let mut ok = true;
    for (p, n, m) in [(3, 1, 1), (5, 1, 1), (3, 2, 1)] {
        let start = Instant::now();
        let res = Level::new(p, n, m)
            .and_then(|l| build_twist(l, TwistMethod::Factorized, Budget::default()))
            .and_then(|f| unitarity_residual(&f));
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(r) => {
                ok &= r < 1e-10 && secs < 10.0;
                detail.push(format!("({p},{n},{m}) {r:.2e} in {secs:.2}s"));
            }
            Err(e) => {
                ok = false;
                detail.push(format!("({p},{n},{m}) error {e}"));
            }
        }
    }
    Outcome {
        ok,
        detail: detail.join("; "),
    }
}

fn cocycle() -> Outcome {
    let start = Instant::now();
    let res = Level::new(3, 1, 1)
        .and_then(|l| build_twist(l, TwistMethod::Direct, Budget::default()))
        .and_then(|f| cocycle_residual(&f, Budget::default()));
    let secs = start.elapsed().as_secs_f64();
    match res {
        Ok(r) => Outcome {
            ok: r < 1e-10 && secs < 60.0,
            detail: format!("(3,1,1) 729-dimensional residual {r:.2e} in {secs:.2}s"),
        },
        Err(e) => Outcome {
            ok: false,
            detail: e.to_string(),
        },
    }
}

fn permutation() -> Outcome {
    let mut detail = Vec::new();
    let mut ok = true;
    for (p, n, m) in [(3, 1, 1), (3, 1, 2), (5, 1, 1)] {
        match Level::new(p, n, m).and_then(|l| induced_grid_permutation(&l)) {
            Ok(perm) => detail.push(format!("({p},{n},{m}) {} cells bijective", perm.len())),
            Err(e) => {
                ok = false;
                detail.push(format!("({p},{n},{m}) {e}"));
            }
        }
    }
    let inverse = suites(&[(3, 1, 1), (3, 1, 2), (5, 1, 1)], &[Suite::XiPermutation]);
    Outcome {
        ok: ok && inverse.ok,
        detail: format!("{}; inverse: {}", detail.join(", "), inverse.detail),
    }
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("unitarity of F", Box::new(unitarity)),
        ("2-cocycle relation", Box::new(cocycle)),
        (
            "factorized vs direct construction of F",
            Box::new(|| suites(&[(3, 1, 1), (5, 1, 1)], &[Suite::TwistOracle])),
        ),
        (
            "Xi round trip, Jacobian, root admissibility",
            Box::new(|| {
                suites(
                    &[(3, 1, 1), (5, 1, 1), (3, 2, 1)],
                    &[Suite::XiRoundtrip, Suite::XiJacobian],
                )
            }),
        ),
        ("grid permutation induced by Xi", Box::new(permutation)),
        (
            "quantization isometry and covariance",
            Box::new(|| {
                suites(
                    &[(3, 1, 1), (5, 1, 1), (3, 1, 2)],
                    &[Suite::OmegaIsometry, Suite::Covariance],
                )
            }),
        ),
        (
            "star product agreement, associativity, equivariance",
            Box::new(|| {
                suites(
                    &[(3, 1, 1), (5, 1, 1)],
                    &[Suite::StarAgreement, Suite::StarAssociativity],
                )
            }),
        ),
        (
            "harmonic-analysis exactness",
            Box::new(|| {
                suites(
                    &[(3, 1, 1), (5, 1, 1), (3, 2, 1), (3, 1, 2)],
                    &[Suite::Substitution, Suite::Plancherel],
                )
            }),
        ),
        (
            "exact p-adic identities",
            Box::new(|| {
                suites(
                    &[(3, 1, 1), (5, 1, 1), (3, 2, 1), (7, 2, 1)],
                    &[Suite::PadicIdentities],
                )
            }),
        ),
    ];
    let mut all = true;
    for (i, (what, run)) in criteria.iter().enumerate() {
        let out = run();
        all &= out.ok;
        let tag = if out.ok { "PASS" } else { "FAIL" };
        println!("[{tag}] criterion {}: {what}: {}", i + 1, out.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
