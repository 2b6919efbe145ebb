//! Acceptance criteria. Runs as a plain binary (`harness = false`) printing
//! one PASS/FAIL line per criterion; exits nonzero if any criterion fails.
//!
//! Figure parameters (sigma = 3, s in [1, 100]) are illustrative choices.

use std::process::Command;
use std::time::Instant;

use borrow_risk::estimators::EstimatorKind;
use borrow_risk::gauss::cdf;
use borrow_risk::montecarlo::simulate_risk;
use borrow_risk::risk::{
    grid, joint_risk_one_term, joint_risk_two_term, optimal_s, risk_joint_closed, risk_marginal,
    risk_ratio, Coefficients, Spacing,
};
use borrow_risk::{AnalystConfig, NatureConfig};

const SEED: u64 = 20_240_601;
const WORKERS: usize = 4;
const MC_N: u64 = 1_000_000;
const Z_TOL: f64 = 3.5;

fn nature(sigma: f64) -> NatureConfig {
    NatureConfig::new(sigma).unwrap()
}

fn analyst(s: f64) -> AnalystConfig {
    AnalystConfig::permissive(s).unwrap()
}

fn joint(s: f64, sigma: f64) -> f64 {
    risk_joint_closed(&analyst(s), &nature(sigma)).value.value()
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c1_marginal_closed_form() -> Outcome {
    let r = risk_marginal().value();
    check(
        (r - 0.308_537_538_7).abs() <= 1e-9,
        format!("risk_marginal = {r:.16}"),
    )
}

fn c2_two_forms_agree() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for s in [0.25, 0.5, 1.0, 2.0, 3.0, 5.0, 10.0, 100.0] {
        for sigma in [1.0, 2.0, 3.0, 10.0] {
            let c = Coefficients::from_scale(s).unwrap();
            worst =
                worst.max((joint_risk_two_term(&c, sigma) - joint_risk_one_term(&c, sigma)).abs());
        }
    }
    check(
        worst <= 1e-12,
        format!(
            "max |two-term - one-term| = {worst:e} over 8x4 grid in {:?}",
            start.elapsed()
        ),
    )
}

fn c3_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut lines = Vec::new();
    for s in [1.0, 2.0, 3.0] {
        for sigma in [1.0, 2.0, 3.0] {
            let mc = simulate_risk(
                EstimatorKind::JointXY,
                &analyst(s),
                &nature(sigma),
                MC_N,
                SEED,
                WORKERS,
            )
            .unwrap();
            let z = mc.z_score(joint(s, sigma));
            worst = worst.max(z.abs());
            lines.push(format!("(s={s},sigma={sigma}) z={z:+.2}"));
        }
    }
    for sigma in [1.0, 2.0, 3.0] {
        let mc = simulate_risk(
            EstimatorKind::MarginalY,
            &analyst(1.0),
            &nature(sigma),
            MC_N,
            SEED,
            WORKERS,
        )
        .unwrap();
        let z = mc.z_score(risk_marginal().value());
        worst = worst.max(z.abs());
        lines.push(format!("(marginal,sigma={sigma}) z={z:+.2}"));
    }
    check(
        worst <= Z_TOL,
        format!(
            "max |z| = {worst:.3} <= {Z_TOL}; {} in {:?}",
            lines.join(" "),
            start.elapsed()
        ),
    )
}

fn c4_limit() -> Outcome {
    let m = risk_marginal().value();
    let worst = [1.0, 2.0, 3.0, 10.0]
        .iter()
        .map(|&sigma| (joint(1e6, sigma) - m).abs())
        .fold(0.0, f64::max);
    check(
        worst < 1e-6,
        format!("max |R_joint(1e6, sigma) - Phi(-1/2)| = {worst:e}"),
    )
}

fn c5_amplification() -> Outcome {
    let r = risk_ratio(&analyst(1.0), &nature(3.0));
    check(
        (r - 1.2183).abs() <= 1e-3 && r > 1.0,
        format!("ratio(s=1, sigma=3) = {r:.10}"),
    )
}

fn c6_correct_specification() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for sigma in [1.0, 2.0, 3.0] {
        let g = grid(1.0, 10.0, 400, Spacing::Log).unwrap();
        let best = optimal_s(&nature(sigma), 1.0, 10.0, 400).unwrap();
        let i = g.iter().position(|&s| s == best).unwrap();
        let step = [
            i.checked_sub(1).map(|j| g[i] - g[j]),
            g.get(i + 1).map(|n| n - g[i]),
        ]
        .into_iter()
        .flatten()
        .fold(0.0, f64::max);
        let within = (best - sigma).abs() <= step;
        let beats = joint(sigma, sigma) < risk_marginal().value();
        ok &= within && beats;
        parts.push(format!(
            "sigma={sigma}: argmin s={best:.5} (step {step:.5})"
        ));
    }
    check(ok, parts.join("; "))
}

fn c7_asymmetry() -> Outcome {
    let m = risk_marginal().value();
    let cost = joint(1.0, 3.0) - m;
    let gain = m - joint(3.0, 3.0);
    check(
        (cost - 0.0674).abs() < 5e-4 && (gain - 0.0095).abs() < 5e-4 && cost > 5.0 * gain,
        format!(
            "cost = {cost:.6}, gain = {gain:.6}, cost/gain = {:.3}",
            cost / gain
        ),
    )
}

fn c8_safe_when_sigma_one() -> Outcome {
    let g = grid(1.0, 100.0, 200, Spacing::Log).unwrap();
    let worst = g
        .iter()
        .map(|&s| risk_ratio(&analyst(s), &nature(1.0)))
        .fold(f64::NEG_INFINITY, f64::max);
    check(
        worst <= 1.0,
        format!("max ratio over s in [1, 100] at sigma=1 is {worst:.12}"),
    )
}

fn c9_reproducibility() -> Outcome {
    let args = [
        "sweep", "--sigma", "3", "--s-min", "1", "--s-max", "100", "--points", "200", "--log",
    ];
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_borrow-risk"))
            .args(args)
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    let csv_same = a.status.success() && a.stdout == b.stdout && !a.stdout.is_empty();

    let sim = || {
        simulate_risk(
            EstimatorKind::JointXY,
            &analyst(1.5),
            &nature(3.0),
            200_000,
            SEED,
            WORKERS,
        )
        .unwrap()
    };
    let (r1, r2) = (sim(), sim());
    check(
        csv_same && r1 == r2,
        format!(
            "sweep CSV identical: {csv_same} ({} bytes); simulate estimates {} / {}",
            a.stdout.len(),
            r1.estimate.value(),
            r2.estimate.value()
        ),
    )
}

/// erf from the all-positive series, independent of the library's scheme.
fn erf_series(x: f64) -> f64 {
    let two_x2 = 2.0 * x * x;
    let (mut term, mut sum, mut n) = (x, x, 0u32);
    loop {
        n += 1;
        term *= two_x2 / f64::from(2 * n + 1);
        sum += term;
        if term <= sum * 1e-18 {
            break;
        }
    }
    2.0 / std::f64::consts::PI.sqrt() * (-x * x).exp() * sum
}

fn cdf_oracle(z: f64) -> f64 {
    let e = erf_series(z.abs() / std::f64::consts::SQRT_2);
    if z >= 0.0 {
        0.5 * (1.0 + e)
    } else {
        0.5 * (1.0 - e)
    }
}

fn c10_numerics() -> Outcome {
    let zs: Vec<f64> = (-800..=800).map(|i| f64::from(i) * 0.01).collect();
    let values: Vec<f64> = zs.iter().map(|&z| cdf(z).unwrap().value()).collect();
    let sym = zs
        .iter()
        .map(|&z| (cdf(z).unwrap().value() + cdf(-z).unwrap().value() - 1.0).abs())
        .fold(0.0, f64::max);
    let monotone = values.windows(2).all(|w| w[0] <= w[1]);
    let oracle = zs
        .iter()
        .zip(&values)
        .map(|(&z, &v)| (v - cdf_oracle(z)).abs())
        .fold(0.0, f64::max);
    check(
        sym <= 1e-14 && monotone && oracle <= 1e-12,
        format!("symmetry {sym:e}, monotone {monotone}, oracle max error {oracle:e}"),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 marginal risk = Phi(-1/2)", c1_marginal_closed_form),
        ("2 two-term = one-term joint risk", c2_two_forms_agree),
        ("3 Monte Carlo oracle equivalence", c3_oracle_equivalence),
        ("4 s -> infinity limit", c4_limit),
        ("5 risk amplification at s < sigma", c5_amplification),
        ("6 argmin at s = sigma", c6_correct_specification),
        ("7 cost of under-specifying vs gain", c7_asymmetry),
        ("8 sigma = 1 never hurts", c8_safe_when_sigma_one),
        ("9 reproducibility", c9_reproducibility),
        ("10 normal CDF numerics", c10_numerics),
    ];
    let mut failed = 0;
    for (name, criterion) in criteria {
        match criterion() {
            Ok(detail) => println!("PASS  [{name}] {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  [{name}] {detail}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
