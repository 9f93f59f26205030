use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Nonnegative Bessel order held as an exact reduced fraction.
///
/// Sector orders such as `2k/3` and ball orders `l + (d - 2)/2` are rational;
/// keeping them exact means the integer shifts used by the recurrences never
/// accumulate rounding error in the order itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct BesselOrder {
    num: u64,
    den: u64,
}

impl BesselOrder {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::invalid("Bessel order denominator must be positive"));
        }
        let g = num.gcd(&den);
        Ok(Self {
            num: num / g,
            den: den / g,
        })
    }

    pub const fn integer(n: u64) -> Self {
        Self { num: n, den: 1 }
    }

    /// `twice / 2`, e.g. the ball order `l + (d - 2)/2` is `half_integer(2l + d - 2)`.
    pub fn half_integer(twice: u64) -> Self {
        Self::new(twice, 2).expect("denominator is nonzero")
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    /// `self + n`, exact.
    pub fn plus(&self, n: u64) -> Self {
        Self {
            num: self.num + n * self.den,
            den: self.den,
        }
    }

    /// `self - n` as a float, computed from the exact numerator so that the
    /// fractional remainder used by the recurrences carries no drift.
    pub(crate) fn minus_as_f64(&self, n: u64) -> f64 {
        (self.num as i128 - (n as i128) * (self.den as i128)) as f64 / self.den as f64
    }

    /// `floor(self + 1/2)`.
    pub(crate) fn round_half_up(&self) -> u64 {
        (2 * self.num + self.den) / (2 * self.den)
    }
}

impl fmt::Display for BesselOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl From<BesselOrder> for String {
    fn from(o: BesselOrder) -> Self {
        o.to_string()
    }
}

impl TryFrom<String> for BesselOrder {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Accepts `"3"`, `"2/3"` and terminating decimals such as `"1.25"` (read exactly).
impl FromStr for BesselOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::invalid(format!("cannot parse Bessel order {s:?}"));
        if let Some((n, d)) = s.split_once('/') {
            let n: u64 = n.trim().parse().map_err(|_| bad())?;
            let d: u64 = d.trim().parse().map_err(|_| bad())?;
            return Self::new(n, d);
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.len() > 18 || !frac.chars().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let int: u64 = if int.is_empty() {
                0
            } else {
                int.parse().map_err(|_| bad())?
            };
            let den = 10u64.pow(frac.len() as u32);
            let frac: u64 = if frac.is_empty() {
                0
            } else {
                frac.parse().map_err(|_| bad())?
            };
            let num = int
                .checked_mul(den)
                .and_then(|v| v.checked_add(frac))
                .ok_or_else(bad)?;
            return Self::new(num, den);
        }
        let n: u64 = s.parse().map_err(|_| bad())?;
        Ok(Self::integer(n))
    }
}
