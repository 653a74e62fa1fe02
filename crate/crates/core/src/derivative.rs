//! Where does `K` have an infinite derivative?
//!
//! The answer is carried by the digit walk `W(n) = n − 3·I₁(n)`:
//! `K'(x) = ±∞` exactly when `W(n) → ±∞`. For an eventually periodic
//! expansion the walk moves by `L − 3m` per period (`L` the period length,
//! `m` the ones in it), so the sign of that drift decides the verdict.
//!
//! The module also exposes the two computations behind that statement:
//! the triadic secant slopes `3·W(n)` (whose steps of `+3` or `−6` rule
//! out a finite derivative everywhere), and the split of a right
//! difference quotient into four sums `Σ₁ + Σ₂ + Σ₃ + Σ₄` whose bounds
//! sandwich the quotient around `f(1, p − 1)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fractal::{k_exact, phi_exact};
use crate::rational::ExactRational;
use crate::ternary::{expand_rational, DigitSeq};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DerivativeClass {
    PlusInfinity,
    MinusInfinity,
    NoInfiniteDerivative,
}

/// Verdict from a limiting digit-1 frequency alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FrequencyVerdict {
    PlusInfinity,
    MinusInfinity,
    /// `p₁ = 1/3`: the frequency does not decide.
    Indeterminate,
}

impl FrequencyVerdict {
    pub fn as_class(self) -> Option<DerivativeClass> {
        match self {
            FrequencyVerdict::PlusInfinity => Some(DerivativeClass::PlusInfinity),
            FrequencyVerdict::MinusInfinity => Some(DerivativeClass::MinusInfinity),
            FrequencyVerdict::Indeterminate => None,
        }
    }
}

/// `W(1), …, W(horizon)` for one point.
#[derive(Debug, Clone, Serialize)]
pub struct WalkTrace {
    pub x: DigitSeq,
    pub horizon: u64,
    pub values: Vec<i64>,
    pub period_drift: i64,
}

impl WalkTrace {
    /// Every step is `+1` (digit 0 or 2) or `−2` (digit 1), starting from
    /// `W(0) = 0`.
    pub fn steps_valid(&self) -> bool {
        std::iter::once(0)
            .chain(self.values.iter().copied())
            .zip(self.values.iter())
            .all(|(prev, &next)| matches!(next - prev, 1 | -2))
    }
}

pub fn walk_trace(x: &DigitSeq, horizon: u64) -> WalkTrace {
    let mut values = Vec::with_capacity(horizon as usize);
    let mut w = 0i64;
    for k in 1..=horizon {
        w += if x.digit_at(k) == 1 { -2 } else { 1 };
        values.push(w);
    }
    WalkTrace {
        x: x.clone(),
        horizon,
        values,
        period_drift: x.period_drift(),
    }
}

/// Exact verdict for an eventually periodic expansion from the sign of the
/// per-period drift. Zero drift means the walk is eventually periodic and
/// therefore bounded, so there is no infinite derivative.
pub fn classify_point(x: &DigitSeq) -> DerivativeClass {
    match x.period_drift().signum() {
        1 => DerivativeClass::PlusInfinity,
        -1 => DerivativeClass::MinusInfinity,
        _ => DerivativeClass::NoInfiniteDerivative,
    }
}

/// Verdict from the limiting frequency of the digit 1.
pub fn classify_by_frequency_exact(p1: &ExactRational) -> Result<FrequencyVerdict> {
    if !p1.in_unit_interval() {
        return Err(Error::domain(format!("frequency {p1} is outside [0, 1]")));
    }
    let third = ExactRational::ratio(1, 3);
    Ok(match p1.cmp(&third) {
        std::cmp::Ordering::Less => FrequencyVerdict::PlusInfinity,
        std::cmp::Ordering::Greater => FrequencyVerdict::MinusInfinity,
        std::cmp::Ordering::Equal => FrequencyVerdict::Indeterminate,
    })
}

/// Float form of [`classify_by_frequency_exact`]. Values within one ulp of
/// `1/3` count as the boundary.
pub fn classify_by_frequency(p1: f64) -> Result<FrequencyVerdict> {
    if !(0.0..=1.0).contains(&p1) {
        return Err(Error::domain(format!("frequency {p1} is outside [0, 1]")));
    }
    let third = 1.0 / 3.0;
    Ok(if (p1 - third).abs() <= f64::EPSILON * third {
        FrequencyVerdict::Indeterminate
    } else if p1 < third {
        FrequencyVerdict::PlusInfinity
    } else {
        FrequencyVerdict::MinusInfinity
    })
}

/// Exact slope of `K` over the triadic interval `[u_n, u_n + 3^{-n}]` that
/// contains `x` (`u_n` is the `n`-digit truncation of `x`).
pub fn secant_slope(x: &DigitSeq, n: u32) -> Result<ExactRational> {
    if n == 0 {
        return Err(Error::domain("secant level must be at least 1"));
    }
    let u = x.truncate(n);
    let v = &u + &ExactRational::inv_pow3(n);
    Ok((k_exact(&v)? - k_exact(&u)?).mul_pow3(n))
}

/// Triadic secant slopes at levels `1..=n` and their consecutive
/// differences. Each difference is `+3` or `−6`, so the slopes never form a
/// Cauchy sequence and `K` has no finite derivative at `x`.
#[derive(Debug, Clone, Serialize)]
pub struct DivergenceWitness {
    pub slopes: Vec<ExactRational>,
    pub differences: Vec<ExactRational>,
    pub certified: bool,
}

pub fn billingsley_divergence_witness(x: &DigitSeq, n: u32) -> Result<DivergenceWitness> {
    if n < 2 {
        return Err(Error::domain("need at least two levels"));
    }
    let slopes = (1..=n)
        .map(|k| secant_slope(x, k))
        .collect::<Result<Vec<_>>>()?;
    // The level-0 slope is K(1) − K(0) = 0.
    let differences: Vec<ExactRational> = std::iter::once(ExactRational::zero())
        .chain(slopes.iter().cloned())
        .zip(slopes.iter())
        .map(|(prev, next)| next - &prev)
        .collect();
    let certified = differences.iter().all(|d| *d == 3 || *d == -6);
    Ok(DivergenceWitness {
        slopes,
        differences,
        certified,
    })
}

/// Which index regime the pair `(x, x + h)` falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaCase {
    /// `k₀ ≤ p − 3`
    Generic,
    /// `k₀ = p − 2`
    NearCarry,
    /// `k₀ = p − 1`
    Adjacent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaViolation {
    SumMismatch,
    Sigma1Weight,
    Sigma2Range,
    Sigma4Range,
    Sandwich,
}

/// `(K(x+h) − K(x))/h = Σ₁ + Σ₂ + Σ₃ + Σ₄` with `D_n = (Φ(3ⁿ(x+h)) − Φ(3ⁿx))/(3ⁿh)`:
///
/// * `Σ₁ = Σ_{n<k₀} D_n` (shared digits),
/// * `Σ₂ = D_{k₀}` (first differing digit),
/// * `Σ₃ = Σ_{k₀<n≤p−2} D_n` (carry run),
/// * `Σ₄ = Σ_{n≥max(p−1, k₀+1)} D_n` (scales finer than `h`).
#[derive(Debug, Clone, Serialize)]
pub struct SigmaDecomposition {
    pub x: ExactRational,
    pub h: ExactRational,
    /// `3^{-p} ≤ h < 3^{-p+1}`.
    pub p: u32,
    /// Length of the common digit prefix of `x` and `x + h`.
    pub k0: u32,
    pub sigma1: ExactRational,
    pub sigma2: ExactRational,
    pub sigma3: ExactRational,
    pub sigma4: ExactRational,
    pub quotient: ExactRational,
    pub case: SigmaCase,
    /// `f(1, p−1)`, or `f(1, p−2)` in the near-carry case.
    pub reference_weight: i64,
    sigma1_weight: i64,
}

impl SigmaDecomposition {
    /// Bounds `(lo, hi)` with `lo ≤ quotient ≤ hi` for this case.
    pub fn sandwich(&self) -> (i64, i64) {
        let w = self.reference_weight;
        match self.case {
            SigmaCase::Generic => (w - 27, w + 18),
            SigmaCase::NearCarry | SigmaCase::Adjacent => (w - 15, w + 12),
        }
    }

    pub fn violations(&self) -> Vec<SigmaViolation> {
        let mut out = Vec::new();
        let total = &(&(&self.sigma1 + &self.sigma2) + &self.sigma3) + &self.sigma4;
        if total != self.quotient {
            out.push(SigmaViolation::SumMismatch);
        }
        if self.sigma1 != self.sigma1_weight {
            out.push(SigmaViolation::Sigma1Weight);
        }
        if self.sigma2 < -6 || self.sigma2 > 3 {
            out.push(SigmaViolation::Sigma2Range);
        }
        if self.sigma4.abs() > 9 {
            out.push(SigmaViolation::Sigma4Range);
        }
        let (lo, hi) = self.sandwich();
        if self.quotient < lo || self.quotient > hi {
            out.push(SigmaViolation::Sandwich);
        }
        out
    }
}

fn d_term(x: &ExactRational, y: &ExactRational, h: &ExactRational, n: u32) -> ExactRational {
    (phi_exact(&y.mul_pow3(n)) - phi_exact(&x.mul_pow3(n))) / h.mul_pow3(n)
}

/// Splits the right difference quotient of `K` at a ternary rational `x`
/// with ternary-rational step `h`, `0 ≤ x < x + h < 1`.
///
/// All terms with `3ⁿx` and `3ⁿ(x+h)` integral vanish, so the infinite
/// `Σ₄` is a finite exact sum.
pub fn sigma_decompose(x: &ExactRational, h: &ExactRational) -> Result<SigmaDecomposition> {
    let y = x + h;
    if x.is_negative() || h.is_negative() || h.is_zero() || y >= ExactRational::one() {
        return Err(Error::domain(format!(
            "need 0 ≤ x < x + h < 1 (x = {x}, h = {h})"
        )));
    }
    let (mx, my) = match (x.ternary_order(), y.ternary_order()) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            return Err(Error::domain(format!(
                "x = {x} and h = {h} must be ternary rationals"
            )))
        }
    };
    let m = mx.max(my);

    let mut p = 1u32;
    while ExactRational::inv_pow3(p) > *h {
        p += 1;
    }

    let xs = expand_rational(x)?;
    let ys = expand_rational(&y)?;
    let mut k0 = 0u32;
    while xs.digit_at(k0 as u64 + 1) == ys.digit_at(k0 as u64 + 1) {
        k0 += 1;
    }

    let d: Vec<ExactRational> = (0..m).map(|n| d_term(x, &y, h, n)).collect();
    // D_n over lo..=hi; terms with n ≥ m vanish.
    let sum_range = |lo: u32, hi: u32| -> ExactRational {
        (lo..=hi)
            .take_while(|&n| n < m)
            .fold(ExactRational::zero(), |acc, n| acc + &d[n as usize])
    };
    let zero = ExactRational::zero;
    let sigma1 = if k0 == 0 {
        zero()
    } else {
        sum_range(0, k0 - 1)
    };
    let sigma2 = d.get(k0 as usize).cloned().unwrap_or_else(zero);
    let sigma3 = if k0 + 2 <= p {
        sum_range(k0 + 1, p - 2)
    } else {
        zero()
    };
    let sigma4 = sum_range((p - 1).max(k0 + 1), u32::MAX);

    let quotient = (k_exact(&y)? - k_exact(x)?) / h.clone();
    let case = match p - k0 {
        1 => SigmaCase::Adjacent,
        2 => SigmaCase::NearCarry,
        _ => SigmaCase::Generic,
    };
    let reference_weight = match case {
        SigmaCase::NearCarry => xs.weight_between(1, (p - 2) as u64),
        _ => xs.weight_between(1, (p - 1) as u64),
    };
    Ok(SigmaDecomposition {
        x: x.clone(),
        h: h.clone(),
        p,
        k0,
        sigma1,
        sigma2,
        sigma3,
        sigma4,
        quotient,
        case,
        reference_weight,
        sigma1_weight: xs.weight_between(1, k0 as u64),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SigmaFuzzReport {
    pub trials: u64,
    pub seed: u64,
    pub violations: u64,
    pub generic_cases: u64,
    pub near_carry_cases: u64,
    pub adjacent_cases: u64,
    pub max_abs_sigma4: f64,
    pub min_sandwich_slack: f64,
    pub first_violation: Option<String>,
}

/// Draws a random pair of ternary rationals `0 ≤ x < x + h < 1`.
///
/// Half of the draws build `x` from a random digit string ending in a run
/// of 2's and pick `h` just large enough to carry through part of the run,
/// which is what reaches the `k₀ ≤ p − 3` regime.
pub(crate) fn random_pair(rng: &mut impl Rng) -> (ExactRational, ExactRational) {
    loop {
        let order: u32 = rng.random_range(1..=12);
        let mut digits: Vec<u8> = (0..order).map(|_| rng.random_range(0..3)).collect();
        let h_order: u32;
        let h_num: i64;
        if rng.random_bool(0.5) {
            let run: u32 = rng.random_range(0..=order.min(6));
            let start = (order - run) as usize;
            digits[start..].iter_mut().for_each(|d| *d = 2);
            h_order = order + rng.random_range(0..=3);
            h_num = rng.random_range(1..=3);
        } else {
            h_order = rng.random_range(1..=14);
            h_num = rng.random_range(1..=3i64.pow(h_order.min(6)));
        }
        let x_num = digits.iter().fold(0i64, |acc, &d| 3 * acc + d as i64);
        let x = ExactRational::new(x_num, 3i64.pow(order)).expect("nonzero");
        let h = ExactRational::new(h_num, 3i64.pow(h_order)).expect("nonzero");
        if &x + &h < ExactRational::one() {
            return (x, h);
        }
    }
}

/// Runs [`sigma_decompose`] over `trials` random exact pairs and counts
/// pairs that break any of the bounds.
pub fn sigma_fuzz(trials: u64, seed: u64) -> Result<SigmaFuzzReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SigmaFuzzReport {
        trials,
        seed,
        violations: 0,
        generic_cases: 0,
        near_carry_cases: 0,
        adjacent_cases: 0,
        max_abs_sigma4: 0.0,
        min_sandwich_slack: f64::INFINITY,
        first_violation: None,
    };
    for _ in 0..trials {
        let (x, h) = random_pair(&mut rng);
        let dec = sigma_decompose(&x, &h)?;
        match dec.case {
            SigmaCase::Generic => report.generic_cases += 1,
            SigmaCase::NearCarry => report.near_carry_cases += 1,
            SigmaCase::Adjacent => report.adjacent_cases += 1,
        }
        report.max_abs_sigma4 = report.max_abs_sigma4.max(dec.sigma4.abs().to_f64());
        let (lo, hi) = dec.sandwich();
        let q = dec.quotient.to_f64();
        report.min_sandwich_slack = report
            .min_sandwich_slack
            .min((q - lo as f64).min(hi as f64 - q));
        let v = dec.violations();
        if !v.is_empty() {
            report.violations += 1;
            if report.first_violation.is_none() {
                report.first_violation = Some(format!("x = {x}, h = {h}: {v:?}"));
            }
        }
    }
    Ok(report)
}

/// JSON-facing summary of a classification.
#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub x: ExactRational,
    pub expansion: DigitSeq,
    pub drift: i64,
    pub verdict: DerivativeClass,
    pub walk_prefix: Vec<i64>,
}

impl ClassificationReport {
    pub fn new(x: &ExactRational, prefix: u64) -> Result<Self> {
        let expansion = expand_rational(x)?;
        let trace = walk_trace(&expansion, prefix);
        Ok(Self {
            x: x.clone(),
            drift: expansion.period_drift(),
            verdict: classify_point(&expansion),
            walk_prefix: trace.values,
            expansion,
        })
    }
}
