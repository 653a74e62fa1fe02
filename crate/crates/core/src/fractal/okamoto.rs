//! Okamoto's functions `F_a`.
//!
//! Three routes to the same function:
//!
//! * [`okamoto_iterative`]: the piecewise-linear approximants `f_n`, built
//!   by subdividing every segment into thirds whose interior breakpoints
//!   sit at fractions `a` and `1 − a` of the segment's rise. Exact in
//!   rational arithmetic. [`okamoto_iterative_eval`] evaluates `f_n` at a
//!   single float point by descending only the segment that contains it.
//! * [`okamoto_series`]: `Σ_n Π_{l<n} p(ε_l) · q(ε_n)` over the ternary
//!   digits.
//! * [`okamoto_fe`]: the three-branch functional equation unrolled.

use serde::Serialize;

use super::truncation::{contraction, SeriesTruncation};
use crate::error::{Error, Result};
use crate::rational::ExactRational;
use crate::ternary::TernaryDigits;

/// Point cap for [`okamoto_iterative`]: `3^12 + 1` ordinates.
pub const DEFAULT_MAX_POINTS: u128 = 531_442;

/// A parameter `a ∈ (0, 1)` of the family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OkamotoParams {
    a: f64,
}

impl OkamotoParams {
    pub fn new(a: f64) -> Result<Self> {
        if a > 0.0 && a < 1.0 {
            Ok(Self { a })
        } else {
            Err(Error::domain(format!("a = {a} is outside (0, 1)")))
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    /// Vertical contraction of the branch for digit `d`.
    pub fn p(&self, d: u8) -> f64 {
        match d {
            1 => 1.0 - 2.0 * self.a,
            _ => self.a,
        }
    }

    /// Vertical offset of the branch for digit `d`.
    pub fn q(&self, d: u8) -> f64 {
        match d {
            0 => 0.0,
            1 => self.a,
            _ => 1.0 - self.a,
        }
    }

    /// `r(a) = max(a, |1 − 2a|) < 1`.
    pub fn contraction(&self) -> f64 {
        contraction(self.a)
    }
}

/// The approximant `f_n`: ordinates at the breakpoints `k/3ⁿ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PiecewiseLinear {
    a: ExactRational,
    level: u32,
    ordinates: Vec<ExactRational>,
}

impl PiecewiseLinear {
    /// `f₀(x) = x`.
    pub fn identity(a: ExactRational) -> Self {
        Self {
            a,
            level: 0,
            ordinates: vec![ExactRational::zero(), ExactRational::one()],
        }
    }

    pub fn a(&self) -> &ExactRational {
        &self.a
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn ordinates(&self) -> &[ExactRational] {
        &self.ordinates
    }

    /// Breakpoint `k/3ⁿ`.
    pub fn breakpoint(&self, k: usize) -> ExactRational {
        ExactRational::new(k as i64, ExactRational::pow3_int(self.level)).expect("nonzero")
    }

    /// `f_{n+1}` from `f_n`.
    pub fn refine(&self) -> Self {
        let one_minus_a = ExactRational::one() - &self.a;
        let mut next = Vec::with_capacity(3 * (self.ordinates.len() - 1) + 1);
        for w in self.ordinates.windows(2) {
            let (lo, hi) = (&w[0], &w[1]);
            let rise = hi - lo;
            next.push(lo.clone());
            next.push(lo + &(&self.a * &rise));
            next.push(lo + &(&one_minus_a * &rise));
        }
        next.push(self.ordinates.last().expect("nonempty").clone());
        Self {
            a: self.a.clone(),
            level: self.level + 1,
            ordinates: next,
        }
    }

    /// Linear interpolation at a float `x ∈ [0, 1]`.
    pub fn eval(&self, x: f64) -> f64 {
        let segments = self.ordinates.len() - 1;
        let t = x.clamp(0.0, 1.0) * segments as f64;
        let k = (t.floor() as usize).min(segments - 1);
        let frac = t - k as f64;
        let lo = self.ordinates[k].to_f64();
        let hi = self.ordinates[k + 1].to_f64();
        lo + frac * (hi - lo)
    }

    /// Exact interpolation at a rational `x ∈ [0, 1]`.
    pub fn eval_exact(&self, x: &ExactRational) -> Result<ExactRational> {
        if !x.in_unit_interval() {
            return Err(Error::domain(format!("{x} is outside [0, 1]")));
        }
        let segments = self.ordinates.len() - 1;
        let t = x.mul_pow3(self.level);
        let k = t.floor();
        let k = usize::try_from(k).expect("within grid").min(segments - 1);
        let frac = t - ExactRational::from(k as i64);
        let lo = &self.ordinates[k];
        let hi = &self.ordinates[k + 1];
        Ok(lo + &(&frac * &(hi - lo)))
    }
}

/// `f_level` for a rational `a ∈ (0, 1)`, with the default point cap.
pub fn okamoto_iterative(a: &ExactRational, level: u32) -> Result<PiecewiseLinear> {
    okamoto_iterative_capped(a, level, DEFAULT_MAX_POINTS)
}

pub fn okamoto_iterative_capped(
    a: &ExactRational,
    level: u32,
    max_points: u128,
) -> Result<PiecewiseLinear> {
    if a.is_negative() || a.is_zero() || *a >= 1 {
        return Err(Error::domain(format!("a = {a} is outside (0, 1)")));
    }
    let needed = 3u128.checked_pow(level).map(|p| p + 1).unwrap_or(u128::MAX);
    if needed > max_points {
        return Err(Error::Resource {
            needed,
            cap: max_points,
        });
    }
    let mut f = PiecewiseLinear::identity(a.clone());
    for _ in 0..level {
        f = f.refine();
    }
    Ok(f)
}

/// `f_level(x)` without building the whole grid: follow the segment that
/// contains `x` through `level` subdivisions, then interpolate.
///
/// `|f_n(x) − F_a(x)| ≤ r(a)^n`.
pub fn okamoto_iterative_eval(params: &OkamotoParams, level: usize, x: f64) -> f64 {
    let a = params.a();
    let cuts = [0.0, a, 1.0 - a, 1.0];
    let (mut lo, mut hi) = (0.0, 1.0);
    let mut y = x.clamp(0.0, 1.0);
    for _ in 0..level {
        // Same digit rule as `TernaryDigits for f64`; y ends as the
        // position of x inside its level-n segment.
        let d = if y >= 1.0 {
            2
        } else {
            let t = 3.0 * y;
            let d = (t.floor() as usize).min(2);
            y = (t - d as f64).clamp(0.0, 1.0);
            d
        };
        let rise = hi - lo;
        (lo, hi) = (lo + cuts[d] * rise, lo + cuts[d + 1] * rise);
    }
    lo + y * (hi - lo)
}

/// Truncated digit series `Σ_{n=1}^{N} Π_{l<n} p(ε_l) q(ε_n)`.
pub fn okamoto_series<X: TernaryDigits + ?Sized>(
    params: &OkamotoParams,
    x: &X,
    trunc: &SeriesTruncation,
) -> f64 {
    // Nested form q(ε₁) + p(ε₁)(q(ε₂) + p(ε₂)(…)), summed from the inside
    // out: the small terms are added first and `F(1) = 1` comes out exact.
    let digits: Vec<u8> = x.ternary_digits().take(trunc.terms).collect();
    digits
        .iter()
        .rev()
        .fold(0.0, |acc, &d| params.q(d) + params.p(d) * acc)
}

/// Unrolls
/// `F(x) = aF(3x)` on `[0,1/3]`,
/// `(1−2a)F(3x−1) + a` on `[1/3,2/3]`,
/// `aF(3x−2) + 1 − a` on `[2/3,1]`
/// `depth` levels, closing with `F(y) ≈ y`. Error at most `r(a)^depth`.
pub fn okamoto_fe(params: &OkamotoParams, x: f64, depth: usize) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!(
            "okamoto_fe: x = {x} is outside [0, 1]"
        )));
    }
    let a = params.a();
    let (mut offset, mut scale, mut y) = (0.0, 1.0, x);
    for _ in 0..depth {
        if y <= 1.0 / 3.0 {
            scale *= a;
            y *= 3.0;
        } else if y <= 2.0 / 3.0 {
            offset += scale * a;
            scale *= 1.0 - 2.0 * a;
            y = 3.0 * y - 1.0;
        } else {
            offset += scale * (1.0 - a);
            scale *= a;
            y = 3.0 * y - 2.0;
        }
    }
    Ok(offset + scale * y)
}

/// Central difference `(F_{a+h}(x) − F_{a−h}(x)) / 2h` using the digit
/// series, optionally with one Richardson step `(4D(h/2) − D(h))/3`.
pub fn d_fa_da_fd(a: f64, x: f64, h: f64, richardson: bool) -> Result<f64> {
    if !(h > 0.0 && a - h > 0.0 && a + h < 1.0) {
        return Err(Error::domain(format!(
            "need 0 < a − h and a + h < 1 with h > 0 (a = {a}, h = {h})"
        )));
    }
    let central = |h: f64| -> Result<f64> {
        let up = OkamotoParams::new(a + h)?;
        let down = OkamotoParams::new(a - h)?;
        let n = SeriesTruncation::TERNARY_TERMS;
        let fu = okamoto_series(&up, &x, &SeriesTruncation::okamoto(a + h, n));
        let fd = okamoto_series(&down, &x, &SeriesTruncation::okamoto(a - h, n));
        Ok((fu - fd) / (2.0 * h))
    };
    if richardson {
        Ok((4.0 * central(h / 2.0)? - central(h)?) / 3.0)
    } else {
        central(h)
    }
}
