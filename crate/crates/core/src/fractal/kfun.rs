//! `K(x) = ∂F_a(x)/∂a` at `a = 1/3`.

use super::elementary::{big_phi, phi_exact};
use super::truncation::SeriesTruncation;
use crate::error::{Error, Result};
use crate::rational::ExactRational;
use crate::ternary::{expand_rational, TernaryDigits};

/// `sup |K| ≤ Σ 3^{-n} = 3/2`.
pub const K_SUP_BOUND: f64 = 1.5;

/// `Σ_{n<N} 3^{-n} Φ(3ⁿx)`.
///
/// `3ⁿ` is exact in `f64` up to `n = 33`, so each term carries one rounding
/// of `3ⁿx` whose effect after the `3^{-n}` weight is an ulp of `x`.
pub fn k_series_phi(x: f64, trunc: &SeriesTruncation) -> f64 {
    let mut pow = 1.0f64;
    let mut sum = 0.0;
    for _ in 0..trunc.terms {
        sum += big_phi(pow * x) / pow;
        pow *= 3.0;
    }
    sum
}

/// The partial sum `K_n(x) = Σ_{k=0}^{n} 3^{-k} Φ(3ᵏx)`.
pub fn k_partial_sum(x: f64, n: usize) -> f64 {
    k_series_phi(x, &SeriesTruncation::k_phi(n + 1))
}

/// Digit form `Σ_{n<N} 3^{-n} {s(ε_{n+1}) + (n − 3I₁(n)) ε_{n+1}}` with
/// `s = (0, 1, −1)`.
pub fn k_series_digits<X: TernaryDigits + ?Sized>(x: &X, trunc: &SeriesTruncation) -> f64 {
    const S: [i64; 3] = [0, 1, -1];
    let mut ones = 0i64;
    let mut weight = 1.0f64;
    let mut sum = 0.0;
    for (n, d) in x.ternary_digits().take(trunc.terms).enumerate() {
        let walk = n as i64 - 3 * ones;
        sum += (S[d as usize] + walk * d as i64) as f64 * weight;
        weight /= 3.0;
        if d == 1 {
            ones += 1;
        }
    }
    sum
}

/// Exact `K(k/3^m)`: the series has only `m` nonzero terms since `3ⁿx` is an
/// integer for `n ≥ m`.
pub fn k_exact(x: &ExactRational) -> Result<ExactRational> {
    if !x.in_unit_interval() {
        return Err(Error::domain(format!("k_exact: {x} is outside [0, 1]")));
    }
    let m = x
        .ternary_order()
        .ok_or_else(|| Error::domain(format!("k_exact: {x} is not a ternary rational")))?;
    let mut sum = ExactRational::zero();
    for n in 0..m {
        sum = sum + phi_exact(&x.mul_pow3(n)) * ExactRational::inv_pow3(n);
    }
    Ok(sum)
}

/// Exact `K(x)` for any rational `x ∈ [0, 1]`.
///
/// Along the digit orbit `x_{j+1} = 3x_j − ε_{j+1}` we have
/// `K(x_j) = Φ(x_j) + K(x_{j+1})/3`. Over one period `P` this closes into
/// `K(y) = A + 3^{-P} K(y)`, which is solved directly.
pub fn k_exact_rational(x: &ExactRational) -> Result<ExactRational> {
    if !x.in_unit_interval() {
        return Err(Error::domain(format!(
            "k_exact_rational: {x} is outside [0, 1]"
        )));
    }
    let seq = expand_rational(x)?;
    let step = |y: &ExactRational, d: u8| y.mul_pow3(1) - ExactRational::from(d as i64);
    // Partial sum of Φ(x_j)/3^j over the digits `ds`, starting at `y`.
    let run = |mut y: ExactRational, ds: &[u8]| {
        let mut sum = ExactRational::zero();
        for (j, &d) in ds.iter().enumerate() {
            sum = sum + phi_exact(&y) * ExactRational::inv_pow3(j as u32);
            y = step(&y, d);
        }
        (sum, y)
    };
    let (head, y) = run(x.clone(), seq.preperiod());
    let (cycle, back) = run(y.clone(), seq.period());
    debug_assert_eq!(back, y);
    let p = seq.period().len() as u32;
    let k_y = cycle / (ExactRational::one() - ExactRational::inv_pow3(p));
    Ok(head + k_y * ExactRational::inv_pow3(seq.preperiod().len() as u32))
}

/// Unrolls `K(x) = Φ(x) + K(ψ(x))/3` branchwise `depth` levels, closing with
/// `K ≈ 0`. Error at most `3^{-depth}·3/2`.
pub fn k_fe(x: f64, depth: usize) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("k_fe: x = {x} is outside [0, 1]")));
    }
    let (mut sum, mut scale, mut y) = (0.0, 1.0, x);
    for _ in 0..depth {
        if y <= 1.0 / 3.0 {
            sum += scale * 3.0 * y;
            y *= 3.0;
        } else if y <= 2.0 / 3.0 {
            sum += scale * 3.0 * (1.0 - 2.0 * y);
            y = 3.0 * y - 1.0;
        } else {
            sum += scale * 3.0 * (y - 1.0);
            y = 3.0 * y - 2.0;
        }
        scale /= 3.0;
    }
    Ok(sum)
}
