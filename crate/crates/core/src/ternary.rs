//! Canonical base-3 expansions of points in `[0, 1]`.
//!
//! Every rational in `[0, 1]` has an eventually periodic ternary expansion.
//! Where two expansions exist (ternary rationals), the one ending in all 0's
//! is kept, except for `x = 1`, which is stored as `0.222…₃`. Digit
//! positions are 1-based throughout: `digit_at(1)` is `ε₁`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::ExactRational;

/// Eventually periodic ternary expansion `0.(preperiod)(period)(period)…₃`
/// in canonical normal form.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DigitSeqRepr", into = "DigitSeqRepr")]
pub struct DigitSeq {
    preperiod: Vec<u8>,
    period: Vec<u8>,
    value: ExactRational,
}

#[derive(Serialize, Deserialize)]
struct DigitSeqRepr {
    preperiod: Vec<u8>,
    period: Vec<u8>,
}

impl TryFrom<DigitSeqRepr> for DigitSeq {
    type Error = Error;
    fn try_from(r: DigitSeqRepr) -> Result<Self> {
        DigitSeq::from_parts(&r.preperiod, &r.period)
    }
}

impl From<DigitSeq> for DigitSeqRepr {
    fn from(d: DigitSeq) -> Self {
        DigitSeqRepr {
            preperiod: d.preperiod,
            period: d.period,
        }
    }
}

/// Digit counts over positions `1..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DigitStats {
    pub n: u64,
    pub counts: [u64; 3],
}

/// Canonical ternary expansion of a rational `x ∈ [0, 1]`.
pub fn expand_rational(x: &ExactRational) -> Result<DigitSeq> {
    if !x.in_unit_interval() {
        return Err(Error::domain(format!("{x} is outside [0, 1]")));
    }
    if *x == 1 {
        return Ok(DigitSeq {
            preperiod: Vec::new(),
            period: vec![2],
            value: x.clone(),
        });
    }
    // Long division of p by q in base 3. Remainders are in [0, q), so the
    // first repeated remainder closes the minimal cycle.
    let q = x.denom().clone();
    let mut r = x.numer().clone();
    let mut seen: HashMap<BigInt, usize> = HashMap::new();
    let mut digits = Vec::new();
    loop {
        if let Some(&start) = seen.get(&r) {
            let period = digits.split_off(start);
            return Ok(DigitSeq {
                preperiod: digits,
                period,
                value: x.clone(),
            });
        }
        seen.insert(r.clone(), digits.len());
        let (d, rem) = (r * 3u8).div_rem(&q);
        digits.push(d.to_u8().expect("digit below 3"));
        r = rem;
    }
}

impl DigitSeq {
    /// Builds the canonical expansion for `0.(preperiod)(period)…₃`.
    ///
    /// Any digit string is accepted (including non-minimal periods and
    /// all-2 tails); the result is re-expanded into normal form.
    pub fn from_parts(preperiod: &[u8], period: &[u8]) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::domain("period must be nonempty"));
        }
        if let Some(&d) = preperiod.iter().chain(period).find(|&&d| d > 2) {
            return Err(Error::domain(format!("{d} is not a ternary digit")));
        }
        let as_int = |ds: &[u8]| ds.iter().fold(BigInt::zero(), |acc, &d| acc * 3u8 + d);
        let l = preperiod.len() as u32;
        let p = period.len() as u32;
        let pre = ExactRational::new(as_int(preperiod), ExactRational::pow3_int(l))?;
        let cyc = ExactRational::new(
            as_int(period),
            ExactRational::pow3_int(l) * (ExactRational::pow3_int(p) - 1),
        )?;
        expand_rational(&(pre + cyc))
    }

    pub fn from_rational(x: &ExactRational) -> Result<Self> {
        expand_rational(x)
    }

    pub fn preperiod(&self) -> &[u8] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u8] {
        &self.period
    }

    pub fn value(&self) -> &ExactRational {
        &self.value
    }

    /// Whether the expansion terminates (tail of 0's), i.e. `x` is `k/3^m`
    /// with `x < 1`.
    pub fn is_terminating(&self) -> bool {
        self.period == [0]
    }

    /// `ε_k`, with `k ≥ 1`. Panics on `k = 0`.
    pub fn digit_at(&self, k: u64) -> u8 {
        assert!(k >= 1, "digit positions are 1-based");
        let l = self.preperiod.len() as u64;
        if k <= l {
            self.preperiod[(k - 1) as usize]
        } else {
            self.period[((k - 1 - l) % self.period.len() as u64) as usize]
        }
    }

    /// Occurrences of digit `i` among positions `1..=n`.
    fn count_upto(&self, i: u8, n: u64) -> u64 {
        let l = self.preperiod.len() as u64;
        let in_pre = |upto: u64| {
            self.preperiod[..upto as usize]
                .iter()
                .filter(|&&d| d == i)
                .count() as u64
        };
        if n <= l {
            return in_pre(n);
        }
        let p = self.period.len() as u64;
        let rest = n - l;
        let per_cycle = self.period.iter().filter(|&&d| d == i).count() as u64;
        let partial = self.period[..(rest % p) as usize]
            .iter()
            .filter(|&&d| d == i)
            .count() as u64;
        in_pre(l) + (rest / p) * per_cycle + partial
    }

    /// `I_i(a, b) = #{j : a ≤ j ≤ b, ε_j = i}`.
    pub fn count_digit(&self, i: u8, a: u64, b: u64) -> Result<u64> {
        check_range(a, b)?;
        Ok(self.count_upto(i, b) - self.count_upto(i, a - 1))
    }

    /// `W(n) = n − 3·I₁(n)`.
    pub fn walk_value(&self, n: u64) -> i64 {
        n as i64 - 3 * self.count_upto(1, n) as i64
    }

    /// `f(a, b) = 3I₀(a,b) − 6I₁(a,b) + 3I₂(a,b)`.
    pub fn f_weight(&self, a: u64, b: u64) -> Result<i64> {
        check_range(a, b)?;
        Ok(self.weight_between(a, b))
    }

    /// `f(a, b)` with the empty range (`a > b`) weighing 0.
    pub(crate) fn weight_between(&self, a: u64, b: u64) -> i64 {
        if a > b {
            return 0;
        }
        let len = (b - a + 1) as i64;
        let ones = (self.count_upto(1, b) - self.count_upto(1, a.saturating_sub(1))) as i64;
        3 * (len - ones) - 6 * ones
    }

    pub fn stats(&self, n: u64) -> DigitStats {
        DigitStats {
            n,
            counts: [0, 1, 2].map(|i| self.count_upto(i, n)),
        }
    }

    /// Limiting digit frequencies `(p₀, p₁, p₂)`, read off the period block.
    pub fn digit_frequency(&self) -> [ExactRational; 3] {
        let len = self.period.len() as i64;
        [0u8, 1, 2].map(|i| {
            let c = self.period.iter().filter(|&&d| d == i).count() as i64;
            ExactRational::ratio(c, len)
        })
    }

    /// Change of `W` over one period: `L − 3m`.
    pub fn period_drift(&self) -> i64 {
        let ones = self.period.iter().filter(|&&d| d == 1).count() as i64;
        self.period.len() as i64 - 3 * ones
    }

    /// Truncation `Σ_{j≤n} ε_j 3^{-j}`.
    pub fn truncate(&self, n: u32) -> ExactRational {
        let num = (1..=n as u64).fold(BigInt::zero(), |acc, k| acc * 3u8 + self.digit_at(k));
        ExactRational::new(num, ExactRational::pow3_int(n)).expect("nonzero")
    }
}

fn check_range(a: u64, b: u64) -> Result<()> {
    if a == 0 || a > b {
        Err(Error::Range { a, b })
    } else {
        Ok(())
    }
}

impl std::fmt::Debug for DigitSeq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "0.")?;
        for d in &self.preperiod {
            write!(f, "{d}")?;
        }
        write!(f, "(")?;
        for d in &self.period {
            write!(f, "{d}")?;
        }
        write!(f, ")₃ = {}", self.value)
    }
}

/// Anything that yields the digit stream `ε₁, ε₂, …` of a point in `[0, 1]`.
pub trait TernaryDigits {
    fn ternary_digits(&self) -> impl Iterator<Item = u8> + '_;
}

impl TernaryDigits for DigitSeq {
    fn ternary_digits(&self) -> impl Iterator<Item = u8> + '_ {
        self.preperiod
            .iter()
            .copied()
            .chain(self.period.iter().copied().cycle())
    }
}

/// Digits of a float, by repeated `y ← 3y − ⌊3y⌋`. Values at or above 1
/// yield all 2's, matching the convention for `x = 1`. Past roughly 33
/// digits the stream reflects float rounding rather than the real number.
impl TernaryDigits for f64 {
    fn ternary_digits(&self) -> impl Iterator<Item = u8> + '_ {
        let mut y = self.clamp(0.0, 1.0);
        std::iter::from_fn(move || {
            if y >= 1.0 {
                return Some(2);
            }
            let t = 3.0 * y;
            let d = (t.floor() as u8).min(2);
            y = (t - d as f64).clamp(0.0, 1.0);
            Some(d)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> ExactRational {
        ExactRational::ratio(n, d)
    }

    fn seq(n: i64, d: i64) -> DigitSeq {
        expand_rational(&r(n, d)).unwrap()
    }

    #[test]
    fn expand_examples() {
        let third = seq(1, 3);
        assert_eq!(third.preperiod(), &[1]);
        assert_eq!(third.period(), &[0]);

        let one = seq(1, 1);
        assert!(one.preperiod().is_empty());
        assert_eq!(one.period(), &[2]);

        let quarter = seq(1, 4);
        assert!(quarter.preperiod().is_empty());
        assert_eq!(quarter.period(), &[0, 2]);

        let zero = seq(0, 1);
        assert!(zero.preperiod().is_empty());
        assert_eq!(zero.period(), &[0]);
    }

    #[test]
    fn expand_rejects_outside_unit_interval() {
        assert!(matches!(expand_rational(&r(4, 3)), Err(Error::Domain(_))));
        assert!(matches!(expand_rational(&r(-1, 5)), Err(Error::Domain(_))));
    }

    #[test]
    fn digit_at_examples() {
        assert_eq!(seq(1, 4).digit_at(1), 0);
        assert_eq!(seq(1, 4).digit_at(2), 2);
        assert_eq!(seq(1, 1).digit_at(7), 2);
    }

    #[test]
    fn count_digit_examples() {
        assert_eq!(seq(1, 2).count_digit(1, 1, 5).unwrap(), 5);
        assert_eq!(seq(0, 1).count_digit(1, 1, 100).unwrap(), 0);
        let five_ninths = seq(5, 9);
        assert_eq!(five_ninths.preperiod(), &[1, 2]);
        assert_eq!(five_ninths.count_digit(1, 1, 4).unwrap(), 1);
    }

    #[test]
    fn count_digit_range_errors() {
        let x = seq(1, 2);
        assert_eq!(x.count_digit(1, 3, 2), Err(Error::Range { a: 3, b: 2 }));
        assert_eq!(x.count_digit(1, 0, 2), Err(Error::Range { a: 0, b: 2 }));
        assert!(x.f_weight(5, 4).is_err());
    }

    #[test]
    fn walk_value_examples() {
        assert_eq!(seq(0, 1).walk_value(10), 10);
        assert_eq!(seq(1, 2).walk_value(4), -8);
        assert_eq!(seq(5, 9).walk_value(3), 0);
    }

    #[test]
    fn f_weight_examples() {
        for n in 1..30 {
            assert_eq!(seq(0, 1).f_weight(1, n).unwrap(), 3 * n as i64);
            assert_eq!(seq(1, 2).f_weight(1, n).unwrap(), -6 * n as i64);
        }
    }

    #[test]
    fn digit_frequency_examples() {
        assert_eq!(seq(1, 4).digit_frequency(), [r(1, 2), r(0, 1), r(1, 2)]);
        assert_eq!(seq(1, 2).digit_frequency(), [r(0, 1), r(1, 1), r(0, 1)]);
        assert_eq!(seq(0, 1).digit_frequency(), [r(1, 1), r(0, 1), r(0, 1)]);
    }

    #[test]
    fn from_parts_normalizes() {
        // 0.0222…₃ = 0.1₃
        let x = DigitSeq::from_parts(&[0], &[2]).unwrap();
        assert_eq!(x, seq(1, 3));
        assert_eq!(x.preperiod(), &[1]);
        // Non-minimal period collapses.
        let y = DigitSeq::from_parts(&[1, 1], &[0, 2, 0, 2]).unwrap();
        assert_eq!(y.period(), &[0, 2]);
        assert_eq!(y.preperiod(), &[1, 1]);
        // 0.222…₃ is 1.
        assert_eq!(DigitSeq::from_parts(&[], &[2]).unwrap(), seq(1, 1));
        assert!(DigitSeq::from_parts(&[3], &[0]).is_err());
        assert!(DigitSeq::from_parts(&[1], &[]).is_err());
    }

    #[test]
    fn json_shape() {
        let j = serde_json::to_string(&seq(5, 9)).unwrap();
        assert_eq!(j, r#"{"preperiod":[1,2],"period":[0]}"#);
        let back: DigitSeq = serde_json::from_str(r#"{"preperiod":[],"period":[0,2]}"#).unwrap();
        assert_eq!(back, seq(1, 4));
    }

    #[test]
    fn float_digits_track_simple_values() {
        let d: Vec<u8> = 0.5f64.ternary_digits().take(10).collect();
        assert_eq!(d, vec![1; 10]);
        let d: Vec<u8> = 1.0f64.ternary_digits().take(5).collect();
        assert_eq!(d, vec![2; 5]);
        let d: Vec<u8> = 0.0f64.ternary_digits().take(5).collect();
        assert_eq!(d, vec![0; 5]);
        let d: Vec<u8> = 0.25f64.ternary_digits().take(8).collect();
        assert_eq!(d, vec![0, 2, 0, 2, 0, 2, 0, 2]);
    }

    fn reconstruct(x: &DigitSeq) -> ExactRational {
        let whole = x.preperiod().len() + x.period().len();
        let head = x.truncate(whole as u32);
        // head + tail where tail repeats the period after `whole` digits:
        // x = pre/3^l + per/(3^l (3^p − 1)).
        let l = x.preperiod().len() as u32;
        let p = x.period().len() as u32;
        let per: BigInt = x.period().iter().fold(BigInt::zero(), |a, &d| a * 3u8 + d);
        let tail = ExactRational::new(
            per,
            ExactRational::pow3_int(l + p) * (ExactRational::pow3_int(p) - 1),
        )
        .unwrap();
        head + tail
    }

    proptest! {
        #[test]
        fn round_trip(q in 1i64..=10_000, num in 0i64..=10_000) {
            let p = num % (q + 1);
            let x = r(p, q);
            let s = expand_rational(&x).unwrap();
            prop_assert_eq!(reconstruct(&s), x.clone());
            // No all-2 tail except for 1.
            if x != 1 {
                prop_assert!(s.period() != [2]);
                prop_assert!(!s.period().iter().all(|&d| d == 2));
            }
            // Normal form: the last preperiod digit differs from the last period digit.
            if let (Some(a), Some(b)) = (s.preperiod().last(), s.period().last()) {
                prop_assert_ne!(a, b);
            }
        }

        #[test]
        fn weight_is_three_times_walk(q in 1i64..=2000, num in 0i64..=2000, n in 1u64..500) {
            let s = expand_rational(&r(num % (q + 1), q)).unwrap();
            prop_assert_eq!(s.f_weight(1, n).unwrap(), 3 * s.walk_value(n));
        }

        #[test]
        fn count_is_additive(q in 1i64..=2000, num in 0i64..=2000,
                             a in 1u64..50, gap in 0u64..50, rest in 1u64..50, i in 0u8..3) {
            let s = expand_rational(&r(num % (q + 1), q)).unwrap();
            let b = a + gap;
            let c = b + rest;
            prop_assert_eq!(
                s.count_digit(i, a, c).unwrap(),
                s.count_digit(i, a, b).unwrap() + s.count_digit(i, b + 1, c).unwrap()
            );
            let st = s.stats(c);
            prop_assert_eq!(st.counts.iter().sum::<u64>(), c);
        }

        #[test]
        fn counts_match_brute_force(q in 1i64..=500, num in 0i64..=500, a in 1u64..40, len in 0u64..60) {
            let s = expand_rational(&r(num % (q + 1), q)).unwrap();
            let b = a + len;
            let digits: Vec<u8> = s.ternary_digits().take(b as usize).collect();
            for i in 0..3u8 {
                let brute = digits[(a - 1) as usize..b as usize].iter().filter(|&&d| d == i).count() as u64;
                prop_assert_eq!(s.count_digit(i, a, b).unwrap(), brute);
            }
        }
    }
}
