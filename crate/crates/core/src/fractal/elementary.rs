use crate::error::{Error, Result};
use crate::rational::ExactRational;

const THIRD: f64 = 1.0 / 3.0;
const TWO_THIRDS: f64 = 2.0 / 3.0;

/// Distance from `x` to the nearest integer.
pub fn tent_phi(x: f64) -> f64 {
    (x - x.round()).abs()
}

/// The 1-periodic zigzag `Φ`: `3x` on `[0,1/3]`, `3(1−2x)` on `[1/3,2/3]`,
/// `3(x−1)` on `[2/3,1]`.
pub fn big_phi(x: f64) -> f64 {
    let y = x.rem_euclid(1.0);
    if y <= THIRD {
        3.0 * y
    } else if y <= TWO_THIRDS {
        3.0 * (1.0 - 2.0 * y)
    } else {
        3.0 * (y - 1.0)
    }
}

/// Exact `Φ` on rationals.
pub fn phi_exact(x: &ExactRational) -> ExactRational {
    let y = x.fract();
    let three = ExactRational::from(3);
    if y <= ExactRational::ratio(1, 3) {
        &three * &y
    } else if y <= ExactRational::ratio(2, 3) {
        three * (ExactRational::one() - ExactRational::from(2) * y)
    } else {
        three * (y - ExactRational::one())
    }
}

/// The ternary shift `ψ`, branchwise `3x`, `3x − 1`, `3x − 2` with the
/// first matching branch at shared endpoints (so `ψ(1/3) = 1`, `ψ(1) = 1`).
pub fn shift_psi(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("shift_psi: {x} is outside [0, 1]")));
    }
    Ok(shift_branch(x))
}

pub(crate) fn shift_branch(x: f64) -> f64 {
    if x <= THIRD {
        3.0 * x
    } else if x <= TWO_THIRDS {
        3.0 * x - 1.0
    } else {
        3.0 * x - 2.0
    }
}
