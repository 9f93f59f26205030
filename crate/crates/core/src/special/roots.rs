//! Safeguarded Newton iteration on a sign-change bracket.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Interval `[lo, hi]` whose endpoint values have opposite signs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootBracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo_sign: i8,
    pub f_hi_sign: i8,
}

impl RootBracket {
    pub fn new(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Option<Self> {
        let (a, b) = (sign(f_lo), sign(f_hi));
        if lo < hi && a * b < 0 {
            Some(Self {
                lo,
                hi,
                f_lo_sign: a,
                f_hi_sign: b,
            })
        } else {
            None
        }
    }
}

pub(crate) fn sign(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

const REL_TOL: f64 = 1e-13;
const MAX_ITER: usize = 200;

/// Refines a root of `f` inside `bracket`. `fdf` returns `(f(x), f'(x))`.
///
/// A Newton step that would leave the current bracket, or that fails to halve
/// the bracket fast enough, is replaced by bisection.
pub fn refine_root<F>(bracket: RootBracket, mut fdf: F) -> Result<f64>
where
    F: FnMut(f64) -> Result<(f64, f64)>,
{
    let (mut xl, mut xh) = if bracket.f_lo_sign < 0 {
        (bracket.lo, bracket.hi)
    } else {
        (bracket.hi, bracket.lo)
    };
    let mut x = 0.5 * (bracket.lo + bracket.hi);
    let mut dx_old = (bracket.hi - bracket.lo).abs();
    let mut dx = dx_old;
    let (mut f, mut df) = fdf(x)?;
    for _ in 0..MAX_ITER {
        if f == 0.0 {
            return Ok(x);
        }
        let newton_leaves = ((x - xh) * df - f) * ((x - xl) * df - f) > 0.0;
        let too_slow = (2.0 * f).abs() > (dx_old * df).abs();
        dx_old = dx;
        if newton_leaves || too_slow || df == 0.0 {
            dx = 0.5 * (xh - xl);
            x = xl + dx;
        } else {
            dx = f / df;
            x -= dx;
        }
        if dx.abs() <= REL_TOL * x.abs() || (xh - xl).abs() <= REL_TOL * x.abs() {
            return Ok(x);
        }
        let next = fdf(x)?;
        f = next.0;
        df = next.1;
        if f < 0.0 {
            xl = x;
        } else {
            xh = x;
        }
    }
    Err(Error::NoConvergence {
        function: "refine_root",
        iterations: MAX_ITER,
        x,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let b = RootBracket::new(1.0, 2.0, -1.0, 2.0).unwrap();
        let r = refine_root(b, |x| Ok((x * x - 2.0, 2.0 * x))).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn survives_bad_derivative() {
        // A derivative scaled by 1e-6 sends every Newton step out of the bracket.
        let b = RootBracket::new(0.0, 3.0, -1.0, 1.0).unwrap();
        let r = refine_root(b, |x| Ok((-x.cos(), x.sin() * 1e-6))).unwrap();
        assert!((r - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_brackets() {
        assert!(RootBracket::new(0.0, 1.0, 1.0, 2.0).is_none());
        assert!(RootBracket::new(1.0, 0.0, -1.0, 2.0).is_none());
    }
}
