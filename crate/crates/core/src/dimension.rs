//! Dimension and measure experiments.
//!
//! Random streams come from ChaCha8 seeded with the user seed; path or
//! member `i` reads stream `i` of that key, so results do not depend on
//! scheduling when paths run in parallel.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fractal::okamoto_iterative;
use crate::rational::ExactRational;

/// Box-counting dimension of the graph of `F_a`:
/// 1 for `a ≤ 1/2`, `1 + log₃(4a − 1)` above.
pub fn box_dimension_formula(a: f64) -> Result<f64> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::domain(format!("a = {a} is outside (0, 1)")));
    }
    Ok(if a <= 0.5 {
        1.0
    } else {
        1.0 + (4.0 * a - 1.0).ln() / 3f64.ln()
    })
}

/// Box counts of the graph of `f_m` on the grids `3^{-j} × 3^{-j}`.
#[derive(Debug, Clone, Serialize)]
pub struct BoxCountResult {
    pub levels: Vec<u32>,
    /// Box side `3^{-j}` per level.
    pub scales: Vec<f64>,
    pub counts: Vec<u64>,
    /// First level used in the fit; the fit runs to the finest level.
    pub fit_from: u32,
    pub fitted_dimension: f64,
    /// Root-mean-square residual of the log-log fit.
    pub residual: f64,
}

impl BoxCountResult {
    /// Least-squares slope of `ln N_j` against `j ln 3` over `from..=to`.
    pub fn refit(&self, from: u32, to: u32) -> Result<(f64, f64)> {
        let pts: Vec<(f64, f64)> = self
            .levels
            .iter()
            .zip(&self.counts)
            .filter(|(&j, _)| j >= from && j <= to)
            .map(|(&j, &c)| (j as f64 * 3f64.ln(), (c as f64).ln()))
            .collect();
        if pts.len() < 2 {
            return Err(Error::domain(format!(
                "fit window {from}..={to} has fewer than two levels"
            )));
        }
        Ok(least_squares(&pts))
    }
}

/// Returns `(slope, rms residual)`.
fn least_squares(pts: &[(f64, f64)]) -> (f64, f64) {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let icept = my - slope * mx;
    let rss: f64 = pts
        .iter()
        .map(|p| (p.1 - icept - slope * p.0).powi(2))
        .sum();
    (slope, (rss / n).sqrt())
}

/// Default first fitted level: the two coarsest grids are left out.
pub const BOX_FIT_FROM: u32 = 3;

/// Counts the grid boxes met by the graph of `f_m` at every level
/// `j = 1..=m` and fits the dimension over `j ≥ 3`.
///
/// At `j ≤ m` every segment of `f_m` lies in a single column. The graph over
/// a column is connected, so it is covered by the rows spanning its range:
/// `⌈3^j·max⌉ − ⌊3^j·min⌋` boxes, and at least one.
pub fn box_dimension_estimate(a: &ExactRational, max_level: u32) -> Result<BoxCountResult> {
    box_dimension_estimate_from(a, max_level, BOX_FIT_FROM)
}

pub fn box_dimension_estimate_from(
    a: &ExactRational,
    max_level: u32,
    fit_from: u32,
) -> Result<BoxCountResult> {
    if max_level < 2 {
        return Err(Error::domain("box counting needs at least two levels"));
    }
    let fit_from = fit_from.clamp(1, max_level - 1);
    let graph = okamoto_iterative(a, max_level)?;
    let ys = graph.ordinates();
    let mut levels = Vec::new();
    let mut scales = Vec::new();
    let mut counts = Vec::new();
    for j in 1..=max_level {
        let to_i64 = |b: num_bigint::BigInt| i64::try_from(b).expect("row index fits i64");
        let (floors, ceils): (Vec<i64>, Vec<i64>) = ys
            .iter()
            .map(|y| {
                let s = y.mul_pow3(j);
                let ceil = -to_i64((-&s).floor());
                (to_i64(s.floor()), ceil)
            })
            .unzip();
        let per_column = 3usize.pow(max_level - j);
        let count: u64 = (0..ys.len() - 1)
            .step_by(per_column)
            .map(|start| {
                let col = start..=start + per_column;
                let lo = floors[col.clone()].iter().min().unwrap();
                let hi = ceils[col].iter().max().unwrap();
                (hi - lo).max(1) as u64
            })
            .sum();
        levels.push(j);
        scales.push(3f64.powi(-(j as i32)));
        counts.push(count);
    }
    let mut result = BoxCountResult {
        levels,
        scales,
        counts,
        fit_from,
        fitted_dimension: f64::NAN,
        residual: f64::NAN,
    };
    let (dim, res) = result.refit(fit_from, max_level)?;
    result.fitted_dimension = dim;
    result.residual = res;
    Ok(result)
}

/// Limiting digit proportions `(p₀, p₁, p₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrequencyTriple {
    pub p0: f64,
    pub p1: f64,
    pub p2: f64,
}

impl FrequencyTriple {
    pub fn new(p0: f64, p1: f64, p2: f64) -> Result<Self> {
        let ok = [p0, p1, p2].iter().all(|p| (0.0..=1.0).contains(p));
        if !ok || (p0 + p1 + p2 - 1.0).abs() > 1e-12 {
            return Err(Error::domain(format!(
                "({p0}, {p1}, {p2}) is not a probability vector"
            )));
        }
        Ok(Self { p0, p1, p2 })
    }

    /// `((1−α)/2, α, (1−α)/2)`.
    pub fn symmetric(alpha: f64) -> Result<Self> {
        let side = (1.0 - alpha) / 2.0;
        Self::new(side, alpha, side)
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.p0, self.p1, self.p2]
    }
}

/// Hausdorff dimension of the set of points whose ternary digits occur with
/// proportions `p`: the base-3 entropy `−Σ pᵢ log₃ pᵢ` (with `0 ln 0 = 0`).
pub fn hausdorff_frequency_dim(p: &FrequencyTriple) -> f64 {
    let h: f64 = p
        .as_array()
        .iter()
        .filter(|&&q| q > 0.0)
        .map(|&q| -q * q.ln())
        .sum();
    h / 3f64.ln()
}

#[derive(Debug, Clone, Serialize)]
pub struct WalkExperiment {
    pub sample_count: u64,
    pub horizon: u64,
    pub seed: u64,
    /// Paths whose walk changes sign (touching 0 counts) within the horizon.
    pub crossings: u64,
    pub crossing_fraction: f64,
    /// `Σ_paths W(horizon)`, i.e. the sum of all steps.
    pub step_sum: i64,
    pub mean_step_estimate: f64,
    /// Standard error of the mean step; a single step has variance 2.
    pub mean_step_std_error: f64,
}

/// One path of `W(n) = n − 3·I₁(n)` for uniformly random digits. Returns
/// `(crossed, W(horizon))`. A crossing is a pair of consecutive values with
/// `W(i)·W(i+1) ≤ 0`.
fn walk_path(seed: u64, path: u64, horizon: u64) -> (bool, i64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(path);
    let mut w = 0i64;
    let mut crossed = false;
    for i in 0..horizon {
        let next = if rng.random_range(0u8..3) == 1 {
            w - 2
        } else {
            w + 1
        };
        if i > 0 && w * next <= 0 {
            crossed = true;
        }
        w = next;
    }
    (crossed, w)
}

/// Monte Carlo of the digit walk over `samples` independent paths.
/// Paths run on the current rayon pool; output is identical for any pool
/// size.
pub fn walk_monte_carlo(samples: u64, horizon: u64, seed: u64) -> Result<WalkExperiment> {
    if samples == 0 || horizon == 0 {
        return Err(Error::domain("samples and horizon must be positive"));
    }
    let (crossings, step_sum) = (0..samples)
        .into_par_iter()
        .map(|i| {
            let (c, w) = walk_path(seed, i, horizon);
            (c as u64, w)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let steps = (samples * horizon) as f64;
    Ok(WalkExperiment {
        sample_count: samples,
        horizon,
        seed,
        crossings,
        crossing_fraction: crossings as f64 / samples as f64,
        step_sum,
        mean_step_estimate: step_sum as f64 / steps,
        mean_step_std_error: (2.0 / steps).sqrt(),
    })
}

/// `54a³ − 27a² − 1`.
pub fn trichotomy_poly(a: f64) -> f64 {
    a * a * (54.0 * a - 27.0) - 1.0
}

/// The real root `a₀ ≈ 0.5592` of `54a³ − 27a² = 1`, by bisection on
/// `(1/2, 1)` where the cubic goes from −1 to 26.
pub fn a0_root() -> f64 {
    let (mut lo, mut hi) = (0.5f64, 1.0f64);
    loop {
        let mid = 0.5 * (lo + hi);
        let f = trichotomy_poly(mid);
        if f.abs() < 1e-12 || mid <= lo || mid >= hi {
            return mid;
        }
        if f < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// `count` random digit strings of `length` digits, each digit drawn
/// independently with probabilities `p`.
pub fn frequency_set_members(
    p: &FrequencyTriple,
    count: usize,
    length: usize,
    seed: u64,
) -> Result<Vec<Vec<u8>>> {
    let dist = WeightedIndex::new(p.as_array())
        .map_err(|e| Error::domain(format!("bad frequency triple: {e}")))?;
    Ok((0..count)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            (0..length).map(|_| dist.sample(&mut rng) as u8).collect()
        })
        .collect())
}

/// Proportion of 1's in a digit string.
pub fn empirical_p1(digits: &[u8]) -> f64 {
    digits.iter().filter(|&&d| d == 1).count() as f64 / digits.len().max(1) as f64
}
