//! Okamoto's one-parameter family of self-affine functions and the function
//! `K(x) = ∂F_a(x)/∂a` at `a = 1/3`.
//!
//! The crate is split into four layers:
//!
//! * [`rational`] and [`ternary`]: exact rationals and canonical, eventually
//!   periodic base-3 expansions with digit statistics.
//! * [`fractal`]: evaluators for Φ, ψ, Takagi's `T`, Lebesgue's `L_a`, the
//!   Okamoto functions `F_a` and `K`, each with an independent second route
//!   and an exact-rational path at ternary rationals.
//! * [`derivative`]: the digit-walk classification of points where `K` has an
//!   infinite derivative, secant-slope certificates of nowhere
//!   differentiability and the four-part split of a difference quotient.
//! * [`dimension`]: box-counting and entropy dimensions, the digit random
//!   walk Monte Carlo and the trichotomy boundary root `a₀`.

pub mod derivative;
pub mod dimension;
pub mod error;
pub mod fractal;
pub mod rational;
pub mod ternary;

pub use derivative::{
    billingsley_divergence_witness, classify_by_frequency, classify_by_frequency_exact,
    classify_point, secant_slope, sigma_decompose, sigma_fuzz, walk_trace, ClassificationReport,
    DerivativeClass, DivergenceWitness, FrequencyVerdict, SigmaCase, SigmaDecomposition,
    SigmaFuzzReport, SigmaViolation, WalkTrace,
};
pub use dimension::{
    a0_root, box_dimension_estimate, box_dimension_formula, frequency_set_members,
    hausdorff_frequency_dim, walk_monte_carlo, BoxCountResult, FrequencyTriple, WalkExperiment,
};
pub use error::{Error, Result};
pub use fractal::{
    big_phi, d_fa_da_fd, hata_yamaguti_check, k_exact, k_exact_rational, k_fe, k_partial_sum,
    k_series_digits, k_series_phi, lebesgue_l, okamoto_fe, okamoto_iterative,
    okamoto_iterative_eval, okamoto_series, shift_psi, takagi, tent_phi, HataYamagutiReport,
    OkamotoParams, PiecewiseLinear, SeriesTruncation, YamagutiHata,
};
pub use rational::ExactRational;
pub use ternary::{expand_rational, DigitSeq, DigitStats, TernaryDigits};
