//! Evaluators for the self-affine functions.
//!
//! Every function has at least two independent routes (a series and a
//! functional-equation recursion, or a piecewise-linear construction) so the
//! routes can be checked against each other, and `K` additionally has an
//! exact rational path at ternary rationals.

mod elementary;
mod kfun;
mod lebesgue;
mod okamoto;
mod takagi;
mod truncation;
mod yamaguti_hata;

pub use elementary::{big_phi, phi_exact, shift_psi, tent_phi};
pub use kfun::{
    k_exact, k_exact_rational, k_fe, k_partial_sum, k_series_digits, k_series_phi, K_SUP_BOUND,
};
pub use lebesgue::{hata_yamaguti_check, lebesgue_l, HataYamagutiReport};
pub use okamoto::{
    d_fa_da_fd, okamoto_fe, okamoto_iterative, okamoto_iterative_capped, okamoto_iterative_eval,
    okamoto_series, OkamotoParams, PiecewiseLinear, DEFAULT_MAX_POINTS,
};
pub use takagi::takagi;
pub use truncation::SeriesTruncation;
pub use yamaguti_hata::YamagutiHata;
