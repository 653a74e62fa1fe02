use super::elementary::tent_phi;
use super::truncation::SeriesTruncation;

/// Partial sum `Σ_{n<N} 2^{-n} φ(2ⁿx)` of Takagi's function.
///
/// Scaling by powers of two is exact in binary floating point, so the only
/// error besides the `2^{-N}` tail is the final summation rounding.
pub fn takagi(x: f64, trunc: &SeriesTruncation) -> f64 {
    let mut scale = 1.0;
    let mut sum = 0.0;
    for _ in 0..trunc.terms {
        sum += tent_phi(scale * x) / scale;
        scale *= 2.0;
    }
    sum
}
