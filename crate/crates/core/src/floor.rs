//! Floors of real expressions with a high-precision recheck near integers.
//!
//! Every gap sequence in this crate is a floor of an irrational expression.
//! The f64 value decides the floor unless it lies within `1e-9` (relative) of
//! an integer; then the expression is recomputed at 320 bits. A recomputed
//! value within `2^-250` of the integer is taken to be that integer, which is
//! how exact cases such as `2 sqrt(k)` for square `4k` land on the right side.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_rational::BigRational;

const GUARD: f64 = 1e-9;
const BITS: usize = 320;
const SNAP_EXP: i32 = -250;
const RM: RoundingMode = RoundingMode::ToEven;

/// A 320-bit evaluation context handed to recheck closures.
pub(crate) struct Hp {
    cc: Consts,
}

impl Hp {
    fn new() -> Self {
        Self {
            cc: Consts::new().expect("astro-float constants cache"),
        }
    }

    pub fn f(&self, v: f64) -> BigFloat {
        BigFloat::from_f64(v, BITS)
    }

    pub fn int(&self, v: i64) -> BigFloat {
        BigFloat::from_i64(v, BITS)
    }

    pub fn ratio(&self, n: i64, d: i64) -> BigFloat {
        self.div(&self.int(n), &self.int(d))
    }

    pub fn big(&mut self, v: &BigInt) -> BigFloat {
        BigFloat::parse(&v.to_string(), Radix::Dec, BITS, RM, &mut self.cc)
    }

    pub fn rational(&mut self, q: &BigRational) -> BigFloat {
        let (n, d) = (self.big(q.numer()), self.big(q.denom()));
        self.div(&n, &d)
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(BITS, RM)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, BITS, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, BITS, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, BITS, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, BITS, RM)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(BITS, RM)
    }

    pub fn sin(&mut self, a: &BigFloat) -> BigFloat {
        a.sin(BITS, RM, &mut self.cc)
    }

    pub fn cos(&mut self, a: &BigFloat) -> BigFloat {
        a.cos(BITS, RM, &mut self.cc)
    }

    pub fn acos(&mut self, a: &BigFloat) -> BigFloat {
        a.acos(BITS, RM, &mut self.cc)
    }

    /// `x^(a/b)` for `x > 0`, `b >= 1`, by Newton on `y^b = x^a` from the
    /// f64 estimate. (astro-float's `pow` fails to return for some exact cases.)
    pub fn rational_power(&self, x: &BigFloat, a: i64, b: u32) -> BigFloat {
        assert!(b >= 1, "root index must be >= 1");
        if a == 0 {
            return self.int(1);
        }
        let base = self.powi(x, a.unsigned_abs() as usize);
        let base = if a < 0 {
            self.div(&self.int(1), &base)
        } else {
            base
        };
        if b == 1 {
            return base;
        }
        let seed = to_f64(x).powf(a as f64 / b as f64);
        let mut y = self.f(seed);
        let bb = self.int(b as i64);
        for _ in 0..8 {
            let yb1 = self.powi(&y, b as usize - 1);
            let step = self.div(&self.sub(&self.mul(&yb1, &y), &base), &self.mul(&bb, &yb1));
            y = self.sub(&y, &step);
        }
        y
    }

    pub fn powi(&self, a: &BigFloat, n: usize) -> BigFloat {
        a.powi(n, BITS, RM)
    }
}

fn to_f64(x: &BigFloat) -> f64 {
    x.to_string()
        .parse()
        .expect("BigFloat renders as a decimal")
}

/// `floor(x)` where `approx` is an f64 evaluation of `x` and `exact` evaluates
/// it again at 320 bits. `exact` only runs when `approx` is near an integer.
pub(crate) fn guarded_floor(approx: f64, exact: impl FnOnce(&mut Hp) -> BigFloat) -> i64 {
    assert!(approx.is_finite(), "floor argument {approx} is not finite");
    let n0 = approx.round();
    if (approx - n0).abs() > GUARD * approx.abs().max(1.0) {
        return approx.floor() as i64;
    }
    let mut hp = Hp::new();
    let v = exact(&mut hp);
    assert!(!v.is_nan(), "high-precision floor argument is NaN");
    let diff = hp.sub(&v, &hp.f(n0));
    let snap = BigFloat::from_f64(2f64.powi(SNAP_EXP), BITS);
    let n0 = n0 as i64;
    if diff.abs().cmp(&snap).is_some_and(|c| c < 0) || diff.is_positive() {
        n0
    } else {
        n0 - 1
    }
}

/// Same as [`guarded_floor`] for nonnegative results.
pub(crate) fn guarded_floor_u64(approx: f64, exact: impl FnOnce(&mut Hp) -> BigFloat) -> u64 {
    guarded_floor(approx, exact).max(0) as u64
}


#[cfg(test)]
mod power_tests {
    use super::*;

    #[test]
    fn rational_powers() {
        let h = Hp::new();
        for (x, a, b, want) in [
            (4i64, 1i64, 2u32, 2.0f64),
            (1, 1, 2, 1.0),
            (27, 2, 3, 9.0),
            (5, -1, 2, 0.4472135954999579),
        ] {
            let v = h.rational_power(&h.int(x), a, b);
            assert!((to_f64(&v) - want).abs() < 1e-15, "{x}^({a}/{b}) = {v}");
        }
        // exact to far beyond f64
        let r = h.rational_power(&h.int(4), 1, 2);
        let d = h.sub(&r, &h.int(2));
        assert!(d.is_zero() || d.exponent().unwrap_or(0) < -300);
    }
}
