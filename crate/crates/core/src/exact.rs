//! Exact arithmetic for rectangle spectra.
//!
//! A rectangle side is `sqrt(s) * pi^t` with `s` rational and `t` in {0, 1},
//! so every eigenvalue `pi^2 (q^2/a^2 + r^2/b^2)` has the form `R + S pi^2`
//! with rational `R`, `S`. Signs of such numbers are decided from rational
//! enclosures of `pi^2`.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const PI_DIGITS: &str =
    "3141592653589793238462643383279502884197169399375105820974944592307816406286";

/// `(lower, upper)` with `lower < pi^2 < upper`, from a 76-digit truncation of pi.
fn pi_sq_bounds() -> &'static (BigRational, BigRational) {
    static BOUNDS: OnceLock<(BigRational, BigRational)> = OnceLock::new();
    BOUNDS.get_or_init(|| {
        let digits: BigInt = PI_DIGITS.parse().expect("valid digits");
        let scale = BigInt::from(10u32).pow(PI_DIGITS.len() as u32 - 1);
        let lo = BigRational::new(digits.clone(), scale.clone());
        let hi = BigRational::new(digits + 1, scale);
        (&lo * &lo, &hi * &hi)
    })
}

/// Exact f64 to rational conversion.
pub fn rational_from_f64(v: f64) -> Result<BigRational> {
    BigRational::from_float(v).ok_or_else(|| Error::invalid(format!("{v} is not a finite number")))
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return Some(BigRational::one());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if !frac.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let int = if int.is_empty() { "0" } else { int };
        let num: BigInt = format!("{int}{frac}").parse().ok()?;
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        return Some(BigRational::new(num, den));
    }
    Some(BigRational::from_integer(s.parse().ok()?))
}

fn perfect_square_root(q: &BigRational) -> Option<BigRational> {
    let (n, d) = (q.numer(), q.denom());
    if n.is_negative() {
        return None;
    }
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
}

/// A length `sqrt(square) * pi^pi_power`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Side {
    square: BigRational,
    pi_power: u8,
}

impl Side {
    pub fn new(square: BigRational, with_pi: bool) -> Result<Self> {
        if !square.is_positive() {
            return Err(Error::invalid(format!(
                "side length must be positive, got sqrt({square})"
            )));
        }
        Ok(Self {
            square,
            pi_power: with_pi as u8,
        })
    }

    /// A rational length `num/den`.
    pub fn rational(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::invalid("side denominator must be nonzero"));
        }
        let r = BigRational::new(num.into(), den.into());
        if !r.is_positive() {
            return Err(Error::invalid(format!(
                "side length must be positive, got {r}"
            )));
        }
        Self::new(&r * &r, false)
    }

    /// `(num/den) * pi`.
    pub fn rational_pi(num: i64, den: i64) -> Result<Self> {
        let mut s = Self::rational(num, den)?;
        s.pi_power = 1;
        Ok(s)
    }

    /// The square of the side divided by `pi^(2t)`.
    pub fn square_coefficient(&self) -> &BigRational {
        &self.square
    }

    pub fn has_pi(&self) -> bool {
        self.pi_power == 1
    }

    /// The squared length as an exact `R + S pi^2`.
    pub fn square(&self) -> PiQuadratic {
        if self.has_pi() {
            PiQuadratic::new(BigRational::zero(), self.square.clone())
        } else {
            PiQuadratic::new(self.square.clone(), BigRational::zero())
        }
    }

    pub fn value(&self) -> f64 {
        let base = self.square.to_f64().unwrap_or(f64::NAN).sqrt();
        if self.has_pi() {
            base * PI
        } else {
            base
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pi = if self.has_pi() { "pi" } else { "" };
        match perfect_square_root(&self.square) {
            Some(r) => {
                let (n, d) = (r.numer(), r.denom());
                let n = if n.is_one() && self.has_pi() {
                    String::new()
                } else {
                    n.to_string()
                };
                if d.is_one() {
                    write!(f, "{n}{pi}")
                } else {
                    write!(f, "{n}{pi}/{d}")
                }
            }
            None => write!(f, "sqrt({}){pi}", self.square),
        }
    }
}

/// Accepts `2`, `3/2`, `1.25`, `pi`, `9pi/4`, `9/4*pi`, `sqrt(2)`, `sqrt(3/2)*pi`,
/// `4/sqrt(5)`, `3*sqrt(2)/2`.
impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid(format!("cannot parse side length {s:?}"));
        let compact: String = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '*')
            .collect();
        if compact.starts_with('-') || compact == "0" {
            return Err(Error::invalid(format!(
                "side length must be positive, got {s:?}"
            )));
        }
        let with_pi = compact.matches("pi").count();
        if with_pi > 1 {
            return Err(bad());
        }
        let rest = compact.replacen("pi", "", 1);
        let square = match rest.find("sqrt(") {
            Some(i) => {
                let close = rest[i..].find(')').map(|j| i + j).ok_or_else(bad)?;
                let inner = parse_rational(&rest[i + 5..close]).ok_or_else(bad)?;
                let (prefix, suffix) = (&rest[..i], &rest[close + 1..]);
                let mut sq = inner;
                if let Some(n) = prefix.strip_suffix('/') {
                    let n = parse_rational(n)
                        .filter(|n| n.is_positive())
                        .ok_or_else(bad)?;
                    if sq.is_zero() {
                        return Err(bad());
                    }
                    sq = &n * &n / sq;
                } else if !prefix.is_empty() {
                    let n = parse_rational(prefix)
                        .filter(|n| n.is_positive())
                        .ok_or_else(bad)?;
                    sq = &n * &n * sq;
                }
                if let Some(d) = suffix.strip_prefix('/') {
                    let d = parse_rational(d)
                        .filter(|d| d.is_positive())
                        .ok_or_else(bad)?;
                    sq /= &d * &d;
                } else if !suffix.is_empty() {
                    return Err(bad());
                }
                sq
            }
            None => {
                let r = parse_rational(&rest).ok_or_else(bad)?;
                if r.is_negative() {
                    return Err(bad());
                }
                &r * &r
            }
        };
        Self::new(square, with_pi == 1)
    }
}

impl From<Side> for String {
    fn from(s: Side) -> Self {
        s.to_string()
    }
}

impl TryFrom<String> for Side {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// An exact real `rational + pi_sq * pi^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiQuadratic {
    pub rational: BigRational,
    pub pi_sq: BigRational,
}

impl PiQuadratic {
    pub fn new(rational: BigRational, pi_sq: BigRational) -> Self {
        Self { rational, pi_sq }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn from_f64(v: f64) -> Result<Self> {
        Ok(Self::new(rational_from_f64(v)?, BigRational::zero()))
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.pi_sq.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.rational.to_f64().unwrap_or(f64::NAN);
        let s = self.pi_sq.to_f64().unwrap_or(f64::NAN);
        r + s * PI * PI
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(&self.rational * c, &self.pi_sq * c)
    }

    /// Sign of the value, or `None` if the pi^2 enclosure cannot separate it from zero.
    pub fn signum_exact(&self) -> Option<Ordering> {
        let zero = BigRational::zero();
        if self.pi_sq.is_zero() {
            return Some(self.rational.cmp(&zero));
        }
        let (lo, hi) = pi_sq_bounds();
        let (a, b) = (
            &self.rational + &self.pi_sq * lo,
            &self.rational + &self.pi_sq * hi,
        );
        let (min, max) = if a <= b { (a, b) } else { (b, a) };
        if min > zero {
            Some(Ordering::Greater)
        } else if max < zero {
            Some(Ordering::Less)
        } else if self.rational.is_zero() {
            // pi_sq != 0 here, and pi^2 > 0.
            Some(self.pi_sq.cmp(&zero))
        } else {
            None
        }
    }

    fn nonnegative_parts(&self) -> bool {
        !self.rational.is_negative() && !self.pi_sq.is_negative()
    }

    /// Decides `self` vs `other`, using floats when the two values are well
    /// separated and both have nonnegative parts (no cancellation in `to_f64`).
    pub fn compare(&self, other: &PiQuadratic) -> Option<Ordering> {
        if self.nonnegative_parts() && other.nonnegative_parts() {
            let (x, y) = (self.to_f64(), other.to_f64());
            if (x - y).abs() > 1e-12 * x.abs().max(y.abs()) {
                return x.partial_cmp(&y);
            }
        }
        (self - other).signum_exact()
    }

    /// Decides `self` vs the exact value of the float `t`.
    pub fn compare_f64(&self, t: f64) -> Option<Ordering> {
        if self.nonnegative_parts() {
            let x = self.to_f64();
            if (x - t).abs() > 1e-12 * x.abs().max(t.abs()) {
                return x.partial_cmp(&t);
            }
        }
        let t = rational_from_f64(t).ok()?;
        PiQuadratic::new(&self.rational - t, self.pi_sq.clone()).signum_exact()
    }
}

impl std::ops::Add for &PiQuadratic {
    type Output = PiQuadratic;
    fn add(self, o: &PiQuadratic) -> PiQuadratic {
        PiQuadratic::new(&self.rational + &o.rational, &self.pi_sq + &o.pi_sq)
    }
}

impl std::ops::Sub for &PiQuadratic {
    type Output = PiQuadratic;
    fn sub(self, o: &PiQuadratic) -> PiQuadratic {
        PiQuadratic::new(&self.rational - &o.rational, &self.pi_sq - &o.pi_sq)
    }
}

impl fmt::Display for PiQuadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.pi_sq.is_zero() {
            parts.push(if self.pi_sq.is_one() {
                "pi^2".to_string()
            } else {
                format!("{}*pi^2", self.pi_sq)
            });
        }
        if !self.rational.is_zero() || parts.is_empty() {
            parts.push(self.rational.to_string());
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn sides_parse_and_print_canonically() {
        for (text, canon) in [
            ("9pi/4", "9pi/4"),
            ("9/4*pi", "9pi/4"),
            ("pi", "pi"),
            ("2", "2"),
            ("1.5", "3/2"),
            ("sqrt(2)", "sqrt(2)"),
            ("sqrt(9/4)", "3/2"),
            ("sqrt(3/2) * pi", "sqrt(3/2)pi"),
        ] {
            let s: Side = text.parse().unwrap();
            assert_eq!(s.to_string(), canon, "{text}");
            assert_eq!(s.to_string().parse::<Side>().unwrap(), s);
        }
        assert!("-1".parse::<Side>().is_err());
        assert_eq!(
            "4/sqrt(5)".parse::<Side>().unwrap(),
            "sqrt(16/5)".parse::<Side>().unwrap()
        );
        assert_eq!(
            "3*sqrt(2)/2".parse::<Side>().unwrap(),
            "sqrt(9/2)".parse::<Side>().unwrap()
        );
        assert_eq!(
            "2 sqrt(2) pi".parse::<Side>().unwrap().to_string(),
            "sqrt(8)pi"
        );
        assert!("-4/sqrt(5)".parse::<Side>().is_err());
        assert!("sqrt(2)x".parse::<Side>().is_err());
        assert!("0".parse::<Side>().is_err());
        assert!("pipi".parse::<Side>().is_err());
        assert!("abc".parse::<Side>().is_err());
        let s: Side = "9pi/4".parse().unwrap();
        assert!((s.value() - 9.0 * PI / 4.0).abs() < 1e-15);
    }

    #[test]
    fn decides_signs_near_pi_squared() {
        // 987/100 < pi^2 < 9870/1000 + 1e-4
        let a = PiQuadratic::new(q(-987, 100), q(1, 1));
        assert_eq!(a.signum_exact(), Some(Ordering::Less));
        let b = PiQuadratic::new(q(-98696, 10000), q(1, 1));
        assert_eq!(b.signum_exact(), Some(Ordering::Greater));
        assert_eq!(
            PiQuadratic::new(q(0, 1), q(-3, 1)).signum_exact(),
            Some(Ordering::Less)
        );
    }

    #[test]
    fn equal_values_compare_equal() {
        // pi^2 + 16/81 written two ways
        let a = PiQuadratic::new(q(16, 81), q(1, 1));
        let b = &PiQuadratic::new(q(8, 81), q(1, 2)) + &PiQuadratic::new(q(8, 81), q(1, 2));
        assert_eq!(a.compare(&b), Some(Ordering::Equal));
        assert!((a.to_f64() - 10.067135265).abs() < 1e-8);
    }

    #[test]
    fn compares_against_floats_exactly() {
        let two_pi_sq = PiQuadratic::new(q(0, 1), q(2, 1));
        let t = 2.0 * PI * PI;
        let res = two_pi_sq.compare_f64(t).unwrap();
        // t is the float nearest 2 pi^2, so the comparison must not be Equal.
        assert_ne!(res, Ordering::Equal);
        assert_eq!(
            two_pi_sq.compare_f64(t * (1.0 + 1e-15)),
            Some(Ordering::Less)
        );
        assert_eq!(
            PiQuadratic::from_f64(0.1).unwrap().compare_f64(0.1),
            Some(Ordering::Equal)
        );
    }
}
