use serde::Serialize;

use super::takagi::takagi;
use super::truncation::SeriesTruncation;
use crate::error::{Error, Result};

/// Lebesgue's singular function `L_a(x)`, unrolling
/// `L_a(x) = a·L_a(2x)` (x ≤ 1/2) and `(1−a)·L_a(2x−1) + a` (x > 1/2)
/// `depth` binary digits deep and closing with `L_a(y) ≈ y`.
///
/// Error is at most `max(a, 1−a)^depth`.
pub fn lebesgue_l(a: f64, x: f64, depth: usize) -> Result<f64> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::domain(format!(
            "lebesgue_l: a = {a} is outside (0, 1)"
        )));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!(
            "lebesgue_l: x = {x} is outside [0, 1]"
        )));
    }
    let (mut offset, mut scale, mut y) = (0.0, 1.0, x);
    for _ in 0..depth {
        if y <= 0.5 {
            scale *= a;
            y *= 2.0;
        } else {
            offset += scale * a;
            scale *= 1.0 - a;
            y = 2.0 * y - 1.0;
        }
    }
    Ok(offset + scale * y)
}

#[derive(Debug, Clone, Serialize)]
pub struct HataYamagutiReport {
    pub h: f64,
    pub points: usize,
    pub max_error: f64,
    pub worst_x: f64,
}

/// Compares the central difference `(L_{1/2+h} − L_{1/2−h})/(2h)` with
/// `2T(x)` on the grid `x_i = i/(points−1)`.
pub fn hata_yamaguti_check(h: f64, points: usize) -> Result<HataYamagutiReport> {
    if !(h > 0.0 && h < 0.5) {
        return Err(Error::domain(format!("step h = {h} must lie in (0, 1/2)")));
    }
    if points < 2 {
        return Err(Error::domain("need at least two grid points"));
    }
    let trunc = SeriesTruncation::takagi(SeriesTruncation::BINARY_TERMS);
    let depth = SeriesTruncation::BINARY_TERMS;
    let mut report = HataYamagutiReport {
        h,
        points,
        max_error: 0.0,
        worst_x: 0.0,
    };
    for i in 0..points {
        let x = i as f64 / (points - 1) as f64;
        let diff = (lebesgue_l(0.5 + h, x, depth)? - lebesgue_l(0.5 - h, x, depth)?) / (2.0 * h);
        let err = (diff - 2.0 * takagi(x, &trunc)).abs();
        if err > report.max_error {
            report.max_error = err;
            report.worst_x = x;
        }
    }
    Ok(report)
}
