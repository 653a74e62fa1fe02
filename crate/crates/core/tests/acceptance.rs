//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use okamoto_core::dimension::{box_dimension_estimate_from, trichotomy_poly};
use okamoto_core::{
    a0_root, billingsley_divergence_witness, box_dimension_formula, classify_point,
    expand_rational, hata_yamaguti_check, hausdorff_frequency_dim, k_exact, k_exact_rational,
    k_series_digits, k_series_phi, okamoto_fe, okamoto_iterative_eval, okamoto_series,
    secant_slope, sigma_fuzz, takagi, walk_monte_carlo, DerivativeClass, ExactRational,
    FrequencyTriple, OkamotoParams, SeriesTruncation,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

struct Criterion {
    id: &'static str,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn r(n: i64, d: i64) -> ExactRational {
    ExactRational::ratio(n, d)
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn exact_k_values() -> Outcome {
    let cases = [
        (r(1, 3), r(1, 1)),
        (r(2, 3), r(-1, 1)),
        (r(1, 9), r(2, 3)),
        (r(0, 1), r(0, 1)),
        (r(1, 1), r(0, 1)),
        (r(1, 2), r(0, 1)),
    ];
    let mut bad = Vec::new();
    for (x, want) in &cases {
        // 1/2 is not a ternary rational; its exact value comes from the
        // periodic expansion 0.(1)₃.
        let got = if x.ternary_order().is_some() {
            k_exact(x)
        } else {
            k_exact_rational(x)
        };
        match got {
            Ok(got) if &got == want => {}
            Ok(got) => bad.push(format!("K({x}) = {got}, want {want}")),
            Err(e) => bad.push(format!("K({x}): {e}")),
        }
    }
    check(
        bad.is_empty(),
        if bad.is_empty() {
            "6 exact values, zero tolerance".into()
        } else {
            bad.join("; ")
        },
    )
}

/// Float rounding allowance on top of the analytic tail bounds.
const ROUNDING: f64 = 1e-12;

fn evaluator_agreement_tail_bounds() -> Outcome {
    let n = SeriesTruncation::TERNARY_TERMS;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst_ratio = 0.0f64;
    let mut failures = 0;
    for _ in 0..10_000 {
        let a: f64 = rng.random_range(0.1..=0.9);
        let x: f64 = rng.random_range(0.0..=1.0);
        let params = OkamotoParams::new(a).unwrap();
        let tail = SeriesTruncation::okamoto(a, n).tail_bound;
        let vals = [
            okamoto_iterative_eval(&params, n, x),
            okamoto_series(&params, &x, &SeriesTruncation::okamoto(a, n)),
            okamoto_fe(&params, x, n).unwrap(),
        ];
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let allowed = 2.0 * tail + ROUNDING;
            let d = (vals[i] - vals[j]).abs();
            worst_ratio = worst_ratio.max(d / allowed);
            if d > allowed {
                failures += 1;
            }
        }
    }
    check(
        failures == 0,
        format!(
            "10^4 (a,x), N=40: worst |diff|/(summed tail) = {worst_ratio:.3e}, {failures} failures"
        ),
    )
}

fn evaluator_agreement_1e9() -> Outcome {
    let n = SeriesTruncation::TERNARY_TERMS;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut worst, mut worst_at) = (0.0f64, (0.0, 0.0));
    let mut failures = 0;
    for _ in 0..10_000 {
        let a: f64 = rng.random_range(0.1..=0.9);
        let x: f64 = rng.random_range(0.0..=1.0);
        let params = OkamotoParams::new(a).unwrap();
        let vals = [
            okamoto_iterative_eval(&params, n, x),
            okamoto_series(&params, &x, &SeriesTruncation::okamoto(a, n)),
            okamoto_fe(&params, x, n).unwrap(),
        ];
        let d = [(0, 1), (0, 2), (1, 2)]
            .iter()
            .map(|&(i, j)| (vals[i] - vals[j]).abs())
            .fold(0.0, f64::max);
        if d > 1e-9 {
            failures += 1;
        }
        if d > worst {
            (worst, worst_at) = (d, (a, x));
        }
    }
    check(
        failures == 0,
        format!(
            "pairwise <= 1e-9 at N=40: max {worst:.3e} at a={:.4}, x={:.4}; {failures}/10^4 pairs exceed",
            worst_at.0, worst_at.1
        ),
    )
}

fn k_series_agreement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let n = SeriesTruncation::TERNARY_TERMS;
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let x: f64 = rng.random_range(0.0..=1.0);
        let d = (k_series_phi(x, &SeriesTruncation::k_phi(n))
            - k_series_digits(&x, &SeriesTruncation::k_digits(n)))
        .abs();
        worst = worst.max(d);
    }
    check(
        worst <= 1e-10,
        format!("max |phi form − digit form| = {worst:.3e}"),
    )
}

fn identity_and_symmetry() -> Outcome {
    let params = OkamotoParams::new(1.0 / 3.0).unwrap();
    let n = SeriesTruncation::TERNARY_TERMS;
    let (mut e_id, mut e_k, mut e_t) = (0.0f64, 0.0f64, 0.0f64);
    let grid = 10_000;
    for i in 0..=grid {
        let x = i as f64 / grid as f64;
        for f in [
            okamoto_series(&params, &x, &SeriesTruncation::okamoto(1.0 / 3.0, n)),
            okamoto_fe(&params, x, n).unwrap(),
            okamoto_iterative_eval(&params, n, x),
        ] {
            e_id = e_id.max((f - x).abs());
        }
        let kt = SeriesTruncation::k_phi(n);
        e_k = e_k.max((k_series_phi(x, &kt) + k_series_phi(1.0 - x, &kt)).abs());
        let tt = SeriesTruncation::takagi(SeriesTruncation::BINARY_TERMS);
        e_t = e_t.max((takagi(x, &tt) - takagi(1.0 - x, &tt)).abs());
    }
    check(
        e_id <= 1e-9 && e_k <= 1e-9 && e_t <= 1e-10,
        format!("|F_1/3 − x| = {e_id:.2e}, |K(x)+K(1−x)| = {e_k:.2e}, |T(x)−T(1−x)| = {e_t:.2e}"),
    )
}

fn hata_yamaguti() -> Outcome {
    let rep = hata_yamaguti_check(1e-6, 100).map_err(|e| e.to_string())?;
    check(
        rep.max_error <= 1e-3,
        format!(
            "max |dL/da − 2T| = {:.3e} at x = {:.4}",
            rep.max_error, rep.worst_x
        ),
    )
}

fn slope_identity() -> Outcome {
    let levels = 8u32;
    let count = 3i64.pow(levels);
    let mut checked = 0u64;
    for k in 0..=count {
        let x = expand_rational(&r(k, count)).map_err(|e| e.to_string())?;
        for n in 1..=levels {
            let s = secant_slope(&x, n).map_err(|e| e.to_string())?;
            let want = 3 * x.walk_value(n as u64);
            if s != want {
                return Err(format!("x = {k}/{count}, n = {n}: slope {s}, want {want}"));
            }
            checked += 1;
        }
        let w = billingsley_divergence_witness(&x, levels).map_err(|e| e.to_string())?;
        if let Some(d) = w.differences.iter().find(|d| **d != 3 && **d != -6) {
            return Err(format!("x = {k}/{count}: difference {d}"));
        }
    }
    Ok(format!(
        "{} points, {checked} slopes exact, differences in {{3, −6}}",
        count + 1
    ))
}

/// `W(n)` straight from long division, independent of `DigitSeq`.
fn brute_walk(p: u64, q: u64, n: u64) -> i64 {
    if p == q {
        return n as i64; // 0.222…
    }
    let mut rem = p;
    let mut w = 0i64;
    for _ in 0..n {
        let t = 3 * rem;
        let d = t / q;
        rem = t % q;
        w += if d == 1 { -2 } else { 1 };
    }
    w
}

fn classifier() -> Outcome {
    let named = [
        (r(0, 1), DerivativeClass::PlusInfinity),
        (r(1, 1), DerivativeClass::PlusInfinity),
        (r(1, 2), DerivativeClass::MinusInfinity),
        (r(1, 4), DerivativeClass::PlusInfinity),
    ];
    for (x, want) in &named {
        let got = classify_point(&expand_rational(x).unwrap());
        if got != *want {
            return Err(format!("{x}: {got:?}, want {want:?}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut compared, mut zero_drift) = (0, 0);
    for _ in 0..1000 {
        let q: u64 = rng.random_range(1..=64);
        let p: u64 = rng.random_range(0..=q);
        let seq = expand_rational(&r(p as i64, q as i64)).unwrap();
        let verdict = classify_point(&seq);
        if seq.period_drift() == 0 {
            zero_drift += 1;
            continue;
        }
        let w = brute_walk(p, q, 10_000);
        let want = if w > 0 {
            DerivativeClass::PlusInfinity
        } else {
            DerivativeClass::MinusInfinity
        };
        if verdict != want {
            return Err(format!("{p}/{q}: verdict {verdict:?} but W(10^4) = {w}"));
        }
        compared += 1;
    }
    Ok(format!(
        "4 named points; {compared} random rationals agree, {zero_drift} zero-drift skipped"
    ))
}

fn sigma_fuzz_bounds() -> Outcome {
    let rep = sigma_fuzz(10_000, 1).map_err(|e| e.to_string())?;
    check(
        rep.violations == 0,
        format!(
            "{} violations; cases generic/near-carry/adjacent = {}/{}/{}; max |Σ4| = {}{}",
            rep.violations,
            rep.generic_cases,
            rep.near_carry_cases,
            rep.adjacent_cases,
            rep.max_abs_sigma4,
            rep.first_violation
                .map(|v| format!("; first: {v}"))
                .unwrap_or_default()
        ),
    )
}

fn box_dimension() -> Outcome {
    let est = |a: ExactRational| box_dimension_estimate_from(&a, 8, 3).map(|b| b.fitted_dimension);
    let d23 = est(r(2, 3)).map_err(|e| e.to_string())?;
    let d13 = est(r(1, 3)).map_err(|e| e.to_string())?;
    let f23 = box_dimension_formula(2.0 / 3.0).unwrap();
    check(
        (d23 - f23).abs() <= 0.05 && (d13 - 1.0).abs() <= 0.05,
        format!("a=2/3: {d23:.4} vs {f23:.5}; a=1/3: {d13:.4} vs 1"),
    )
}

fn hausdorff() -> Outcome {
    let uniform = hausdorff_frequency_dim(&FrequencyTriple::symmetric(1.0 / 3.0).unwrap());
    if (uniform - 1.0).abs() > 1e-12 {
        return Err(format!("dim at 1/3 = {uniform}"));
    }
    // α_2 = −1/6 is not a probability, so the sequence starts at n = 3.
    if FrequencyTriple::symmetric(1.0 / 3.0 - 0.5).is_ok() {
        return Err("alpha = -1/6 accepted".into());
    }
    let dims: Vec<f64> = (3..=100)
        .map(|n| {
            hausdorff_frequency_dim(
                &FrequencyTriple::symmetric(1.0 / 3.0 - 1.0 / n as f64).unwrap(),
            )
        })
        .collect();
    let increasing = dims.windows(2).all(|w| w[0] < w[1]);
    let below = dims.iter().all(|&d| d < 1.0);
    check(
        increasing && below,
        format!(
            "dim(1/3) = {uniform}; n=3..100 increasing from {:.5} to {:.8}",
            dims[0],
            dims[dims.len() - 1]
        ),
    )
}

/// Exact probability that the walk changes sign (or touches 0) by step `n`.
/// Tracks the mass of paths that have not crossed yet, by value of `W`.
fn crossing_probability(n: usize) -> f64 {
    // pos[w] for W = w ≥ 1, neg[w] for W = −w ≤ −1.
    let mut pos = vec![0.0f64; n + 2];
    let mut neg = vec![0.0f64; 2 * n + 3];
    pos[1] = 2.0 / 3.0;
    neg[2] = 1.0 / 3.0;
    for _ in 1..n {
        let mut np = vec![0.0f64; n + 2];
        let mut nn = vec![0.0f64; 2 * n + 3];
        for w in 1..pos.len() {
            let m = pos[w];
            if m == 0.0 {
                continue;
            }
            if w + 1 < np.len() {
                np[w + 1] += m * 2.0 / 3.0;
            }
            if w > 2 {
                np[w - 2] += m / 3.0;
            }
        }
        for w in 1..neg.len() {
            let m = neg[w];
            if m == 0.0 {
                continue;
            }
            if w > 1 {
                nn[w - 1] += m * 2.0 / 3.0;
            }
            if w + 2 < nn.len() {
                nn[w + 2] += m / 3.0;
            }
        }
        pos = np;
        neg = nn;
    }
    1.0 - pos.iter().sum::<f64>() - neg.iter().sum::<f64>()
}

fn measure_zero() -> Outcome {
    let (samples, horizon, seed) = (10_000u64, 10_000u64, 7u64);
    let p = crossing_probability(horizon as usize);
    let threshold = p - 4.0 * (p * (1.0 - p) / samples as f64).sqrt();
    let a = walk_monte_carlo(samples, horizon, seed).map_err(|e| e.to_string())?;
    let b = walk_monte_carlo(samples, horizon, seed).map_err(|e| e.to_string())?;
    let identical = a.crossings == b.crossings
        && a.step_sum == b.step_sum
        && a.mean_step_estimate.to_bits() == b.mean_step_estimate.to_bits();
    let sigma = a.mean_step_std_error;
    let mean_ok = a.mean_step_estimate.abs() <= 3.0 * sigma;
    check(
        identical && mean_ok && a.crossing_fraction >= threshold,
        format!(
            "mean step {:.2e} (3σ = {:.2e}); crossing fraction {:.4} vs DP {p:.5}, threshold {threshold:.4}; rerun identical: {identical}",
            a.mean_step_estimate,
            3.0 * sigma,
            a.crossing_fraction
        ),
    )
}

fn a0() -> Outcome {
    let a0 = a0_root();
    let res = trichotomy_poly(a0).abs();
    check(
        (a0 - 0.5592).abs() < 1e-4
            && res < 1e-10
            && trichotomy_poly(0.5) < 0.0
            && trichotomy_poly(1.0) > 0.0,
        format!("a0 = {a0:.12}, residual {res:.1e}"),
    )
}

fn main() -> ExitCode {
    let s = Duration::from_secs;
    let criteria = [
        Criterion {
            id: "1",
            name: "exact K values",
            budget: s(1),
            run: exact_k_values,
        },
        Criterion {
            id: "2a",
            name: "F_a evaluators within summed tail bounds",
            budget: s(30),
            run: evaluator_agreement_tail_bounds,
        },
        Criterion {
            id: "2b",
            name: "F_a evaluators within 1e-9 at N=40",
            budget: s(30),
            run: evaluator_agreement_1e9,
        },
        Criterion {
            id: "2c",
            name: "K series forms agree",
            budget: s(30),
            run: k_series_agreement,
        },
        Criterion {
            id: "3",
            name: "identity and symmetry",
            budget: s(30),
            run: identity_and_symmetry,
        },
        Criterion {
            id: "4",
            name: "Hata-Yamaguti derivative",
            budget: s(10),
            run: hata_yamaguti,
        },
        Criterion {
            id: "5",
            name: "secant slope identity",
            budget: s(30),
            run: slope_identity,
        },
        Criterion {
            id: "6",
            name: "derivative classifier",
            budget: s(30),
            run: classifier,
        },
        Criterion {
            id: "7",
            name: "sigma decomposition fuzz",
            budget: s(60),
            run: sigma_fuzz_bounds,
        },
        Criterion {
            id: "8",
            name: "box dimension estimate",
            budget: s(60),
            run: box_dimension,
        },
        Criterion {
            id: "9",
            name: "frequency-set Hausdorff dimension",
            budget: s(30),
            run: hausdorff,
        },
        Criterion {
            id: "10",
            name: "walk Monte Carlo",
            budget: s(60),
            run: measure_zero,
        },
        Criterion {
            id: "11",
            name: "a0 root",
            budget: s(1),
            run: a0,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let took = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) => (took <= c.budget, d),
            Err(d) => (false, d),
        };
        let over = if took > c.budget { " over budget" } else { "" };
        println!(
            "{} [{}] {}: {} ({:.2}s / {}s{over})",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            detail,
            took.as_secs_f64(),
            c.budget.as_secs()
        );
        failed += usize::from(!ok);
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
