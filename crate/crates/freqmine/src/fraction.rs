//! Exact non-negative rationals.
//!
//! Support thresholds and rule confidences are ratios of small integers, so
//! they are kept exact and compared by u128 cross-multiplication instead of
//! going through floating point.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct Fraction {
    num: u64,
    den: u64,
}

impl Fraction {
    /// Builds `num/den`. Panics if `den` is zero.
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0, "fraction denominator must be nonzero");
        Fraction { num, den }
    }

    /// Parses a plain decimal such as `0.25`, `.5`, `1`, or `0.0200`.
    pub fn parse_decimal(s: &str) -> Result<Self> {
        let bad = || Error::InvalidFraction(s.to_string());
        let s = s.trim();
        if s.is_empty() || s.chars().any(|c| !c.is_ascii_digit() && c != '.') {
            return Err(bad());
        }
        let (int_part, frac_part) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if frac_part.len() > 12 {
            return Err(bad());
        }
        let den = 10u64.pow(frac_part.len() as u32);
        let int: u64 = if int_part.is_empty() {
            0
        } else {
            int_part.parse().map_err(|_| bad())?
        };
        let frac: u64 = if frac_part.is_empty() {
            0
        } else {
            frac_part.parse().map_err(|_| bad())?
        };
        let num = int
            .checked_mul(den)
            .and_then(|v| v.checked_add(frac))
            .ok_or_else(bad)?;
        Ok(Fraction { num, den })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// ceil(self * n), computed in integers.
    pub fn ceil_mul(&self, n: u64) -> u64 {
        let p = self.num as u128 * n as u128;
        p.div_ceil(self.den as u128) as u64
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Decimal rendering with exactly four places, rounding half up.
    pub fn to_decimal_4dp(&self) -> String {
        let den = self.den as u128;
        let scaled = self.num as u128 * 10_000;
        let mut q = scaled / den;
        let r = scaled % den;
        if r * 2 >= den {
            q += 1;
        }
        format!("{}.{:04}", q / 10_000, q % 10_000)
    }
}

impl PartialEq for Fraction {
    fn eq(&self, other: &Self) -> bool {
        self.num as u128 * other.den as u128 == other.num as u128 * self.den as u128
    }
}

impl Eq for Fraction {}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}
