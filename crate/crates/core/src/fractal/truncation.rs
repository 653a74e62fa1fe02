use serde::Serialize;

/// Number of retained terms of a series together with a proven bound on
/// the omitted remainder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesTruncation {
    pub terms: usize,
    pub tail_bound: f64,
}

impl SeriesTruncation {
    /// Default term count for base-3 series.
    pub const TERNARY_TERMS: usize = 40;
    /// Default term count for base-2 series.
    pub const BINARY_TERMS: usize = 50;

    /// `T(x) = Σ 2^{-n} φ(2ⁿx)`, `0 ≤ φ ≤ 1/2`: tail `2^{-N}`.
    pub fn takagi(terms: usize) -> Self {
        Self {
            terms,
            tail_bound: 0.5f64.powi(terms as i32),
        }
    }

    /// `K(x) = Σ 3^{-n} Φ(3ⁿx)`, `|Φ| ≤ 1`: tail `Σ_{n≥N} 3^{-n} = (3/2)·3^{-N}`.
    pub fn k_phi(terms: usize) -> Self {
        Self {
            terms,
            tail_bound: 1.5 * 3f64.powi(-(terms as i32)),
        }
    }

    /// Digit form of `K`: the `n`-th term is at most `(1 + 4n)·3^{-n}` in
    /// absolute value, so the tail is `Σ_{n≥N} (1+4n)3^{-n} = (6N + 9/2)·3^{-N}`.
    pub fn k_digits(terms: usize) -> Self {
        let n = terms as f64;
        Self {
            terms,
            tail_bound: (6.0 * n + 4.5) * 3f64.powi(-(terms as i32)),
        }
    }

    /// Okamoto series in `a`: after `N` terms the remainder is
    /// `Π_{l≤N} p(ε_l) · F_a(Tᴺx)` with `0 ≤ F_a ≤ 1`, hence at most `r(a)^N`.
    pub fn okamoto(a: f64, terms: usize) -> Self {
        Self {
            terms,
            tail_bound: contraction(a).powi(terms as i32),
        }
    }

    pub fn with_terms(self, terms: usize) -> Self {
        Self { terms, ..self }
    }
}

/// `r(a) = max(a, |1 − 2a|)`.
pub(crate) fn contraction(a: f64) -> f64 {
    a.max((1.0 - 2.0 * a).abs())
}
