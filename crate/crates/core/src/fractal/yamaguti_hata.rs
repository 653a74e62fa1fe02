use crate::error::{Error, Result};

/// The bounded solution `F(x) = Σ tⁿ g(ψ⁽ⁿ⁾(x))` of
/// `F(x) − t·F(ψ(x)) = g(x)` for `|t| < 1` and `|g| ≤ M`.
#[derive(Clone)]
pub struct YamagutiHata<G, P> {
    t: f64,
    g: G,
    g_bound: f64,
    psi: P,
}

impl<G, P> YamagutiHata<G, P>
where
    G: Fn(f64) -> f64,
    P: Fn(f64) -> f64,
{
    pub fn new(t: f64, g: G, g_bound: f64, psi: P) -> Result<Self> {
        if t.is_nan() || t.abs() >= 1.0 {
            return Err(Error::Contraction(t.abs()));
        }
        if !(g_bound >= 0.0 && g_bound.is_finite()) {
            return Err(Error::domain(format!(
                "bound on |g| must be finite, got {g_bound}"
            )));
        }
        Ok(Self { t, g, g_bound, psi })
    }

    /// `Σ_{n<N} tⁿ g(ψ⁽ⁿ⁾(x))`.
    pub fn solve(&self, x: f64, terms: usize) -> f64 {
        let (mut sum, mut weight, mut y) = (0.0, 1.0, x);
        for _ in 0..terms {
            sum += weight * (self.g)(y);
            weight *= self.t;
            y = (self.psi)(y);
        }
        sum
    }

    /// `M·|t|^N / (1 − |t|)`.
    pub fn tail_bound(&self, terms: usize) -> f64 {
        self.g_bound * self.t.abs().powi(terms as i32) / (1.0 - self.t.abs())
    }
}
