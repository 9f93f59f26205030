//! Zeros of `J_nu`, `J'_nu` and of the mixed condition `x J'_nu(x) - s J_nu(x)`
//! that defines Neumann modes of the `d`-ball (`s = (d - 2)/2`).

use serde::{Deserialize, Serialize};

use super::bessel::{bessel_j, bessel_jy};
use super::order::BesselOrder;
use super::roots::{refine_root, sign, RootBracket};
use crate::error::{Error, Result};

/// Consecutive zeros of `J_nu` are more than `pi - 0.2` apart, so this step
/// cannot jump over a pair.
const SCAN_STEP: f64 = 0.5;

fn j_fdf(order: BesselOrder) -> impl FnMut(f64) -> Result<(f64, f64)> {
    move |x| {
        let v = bessel_jy(order, x)?;
        Ok((v.j, v.jp))
    }
}

/// Scans `J_nu` upward from `x = nu` (below the first zero, where `J_nu > 0`)
/// and refines every sign change. Stops once `count` zeros are found or the
/// scan passes `xmax`; the first zero above `xmax` is included.
fn scan_j_zeros(order: BesselOrder, count: Option<usize>, xmax: f64) -> Result<Vec<f64>> {
    let mut zeros = Vec::new();
    let mut x_prev = order.value();
    let mut f_prev = bessel_j(order, x_prev)?;
    if f_prev == 0.0 {
        x_prev = x_prev.max(1e-3);
        f_prev = bessel_j(order, x_prev)?;
    }
    let done = |zeros: &Vec<f64>| match count {
        Some(c) => zeros.len() >= c,
        None => zeros.last().is_some_and(|&z| z >= xmax),
    };
    let mut x = x_prev;
    while !done(&zeros) {
        x += SCAN_STEP;
        let f = bessel_j(order, x)?;
        // A sample that lands exactly on a zero is skipped; the next bracket
        // starts from the last nonzero sample and still straddles it.
        if sign(f) == 0 {
            continue;
        }
        if let Some(b) = RootBracket::new(x_prev, x, f_prev, f) {
            zeros.push(refine_root(b, j_fdf(order))?);
        }
        f_prev = f;
        x_prev = x;
    }
    Ok(zeros)
}

/// `k`-th positive zero of `J_nu`.
pub fn bessel_j_zero(order: BesselOrder, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::invalid("zero index k must be >= 1"));
    }
    Ok(scan_j_zeros(order, Some(k), f64::INFINITY)?[k - 1])
}

/// All positive zeros of `J_nu` strictly below `xmax`, ascending.
pub fn bessel_j_zeros_below(order: BesselOrder, xmax: f64) -> Result<Vec<f64>> {
    if order.value() >= xmax {
        return Ok(Vec::new());
    }
    let mut z = scan_j_zeros(order, None, xmax)?;
    z.retain(|&v| v < xmax);
    Ok(z)
}

/// Roots of `g(x) = x J'_nu(x) - s J_nu(x)` with `0 <= s <= nu`, counting
/// `x = 0` first when `nu == s`.
///
/// For `nu == s`, `g = -x J_{nu+1}`. Otherwise `g > 0` at `sqrt(nu^2 - s^2)`,
/// and `g` alternates in sign at the zeros of `J_nu`, which gives one root in
/// each of `(sqrt(nu^2 - s^2), j_{nu,1})`, `(j_{nu,1}, j_{nu,2})`, ...
struct MixedCondition {
    order: BesselOrder,
    s: f64,
}

impl MixedCondition {
    fn degenerate(&self) -> bool {
        self.order.value() == self.s
    }

    fn fdf(&self) -> impl FnMut(f64) -> Result<(f64, f64)> + '_ {
        let nu = self.order.value();
        move |x| {
            let v = bessel_jy(self.order, x)?;
            let g = x * v.jp - self.s * v.j;
            let dg = -(x - nu * nu / x) * v.j - self.s * v.jp;
            Ok((g, dg))
        }
    }

    fn root_in(&self, lo: f64, hi: f64, k: usize) -> Result<f64> {
        let mut fdf = self.fdf();
        let (g_lo, _) = fdf(lo)?;
        let (g_hi, _) = fdf(hi)?;
        let bracket =
            RootBracket::new(lo, hi, g_lo, g_hi).ok_or_else(|| Error::BracketNotFound {
                what: format!(
                    "root {k} of x J'_{}(x) - {} J_{}(x) in ({lo}, {hi})",
                    self.order, self.s, self.order
                ),
                ceiling: hi,
            })?;
        refine_root(bracket, fdf)
    }

    fn lower_start(&self) -> f64 {
        let nu = self.order.value();
        (nu * nu - self.s * self.s).sqrt()
    }

    fn kth(&self, k: usize) -> Result<f64> {
        if k == 0 {
            return Err(Error::invalid("root index k must be >= 1"));
        }
        if self.degenerate() {
            return if k == 1 {
                Ok(0.0)
            } else {
                bessel_j_zero(self.order.plus(1), k - 1)
            };
        }
        let jz = scan_j_zeros(self.order, Some(k), f64::INFINITY)?;
        let lo = if k == 1 {
            self.lower_start()
        } else {
            jz[k - 2]
        };
        self.root_in(lo, jz[k - 1], k)
    }

    fn below(&self, xmax: f64) -> Result<Vec<f64>> {
        if self.degenerate() {
            let mut out = vec![0.0];
            out.extend(bessel_j_zeros_below(self.order.plus(1), xmax)?);
            return Ok(out);
        }
        let mut lo = self.lower_start();
        if lo >= xmax {
            return Ok(Vec::new());
        }
        let jz = scan_j_zeros(self.order, None, xmax)?;
        let mut out = Vec::with_capacity(jz.len());
        for (i, &hi) in jz.iter().enumerate() {
            if lo >= xmax {
                break;
            }
            let r = self.root_in(lo, hi, i + 1)?;
            if r < xmax {
                out.push(r);
            }
            lo = hi;
        }
        Ok(out)
    }
}

fn ball_condition(dim: u32, l: u32) -> Result<MixedCondition> {
    if dim < 2 {
        return Err(Error::invalid(format!(
            "ball dimension must be >= 2, got {dim}"
        )));
    }
    let twice = 2 * l as u64 + dim as u64 - 2;
    Ok(MixedCondition {
        order: BesselOrder::half_integer(twice),
        s: (dim as f64 - 2.0) / 2.0,
    })
}

/// `k`-th zero of `J'_nu`, with `j'_{0,1} = 0` for the constant mode.
pub fn bessel_jprime_zero(order: BesselOrder, k: usize) -> Result<f64> {
    MixedCondition { order, s: 0.0 }.kth(k)
}

/// All zeros of `J'_nu` below `xmax` under the same convention.
pub fn bessel_jprime_zeros_below(order: BesselOrder, xmax: f64) -> Result<Vec<f64>> {
    MixedCondition { order, s: 0.0 }.below(xmax)
}

/// `k`-th nonnegative root of `x J'_nu(x) - (d - 2)/2 J_nu(x)`, `nu = l + (d - 2)/2`.
/// Its square is a Neumann eigenvalue of the unit `d`-ball.
pub fn ball_neumann_radial_root(dim: u32, l: u32, k: usize) -> Result<f64> {
    ball_condition(dim, l)?.kth(k)
}

/// All roots of the same condition below `xmax`.
pub fn ball_neumann_radial_roots_below(dim: u32, l: u32, xmax: f64) -> Result<Vec<f64>> {
    ball_condition(dim, l)?.below(xmax)
}

/// Closed-form enclosure `[lower, upper]` of the first nonzero Neumann
/// eigenvalue `mu_{d,l}` of the unit `d`-ball in angular order `l >= 1`,
/// written in terms of `j = j_{d/2 + l - 1, 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NeumannBounds {
    pub lower: f64,
    pub upper: f64,
}

impl NeumannBounds {
    pub fn contains(&self, v: f64) -> bool {
        self.lower <= v && v <= self.upper
    }
}

pub fn neumann_first_bounds(d: u32, l: u32) -> Result<NeumannBounds> {
    if d < 2 || l < 1 {
        return Err(Error::invalid(format!(
            "bounds need d >= 2 and l >= 1, got d = {d}, l = {l}"
        )));
    }
    let inapplicable = |reason: String| Error::BoundInapplicable { d, l, reason };
    let order = BesselOrder::half_integer(2 * l as u64 + d as u64 - 2);
    let j = bessel_j_zero(order, 1)?;
    let j2 = j * j;
    let (df, lf) = (d as f64, l as f64);
    let m = df + 2.0 * lf;

    let lower = (df + 4.0 * lf + 4.0 - ((df + 4.0).powi(2) + 32.0 * lf).sqrt()) / (2.0 * m) * j2;

    let denom = 2.0 * (j2 - 2.0 * m);
    if denom <= 0.0 {
        return Err(inapplicable(format!(
            "denominator 2(j^2 - 2(d + 2l)) = {denom} is not positive"
        )));
    }
    let radicand = j2 * j2 / (m * m) + lf * (-j2 / (df / 2.0 + lf) + lf + 8.0);
    if radicand < 0.0 {
        return Err(inapplicable(format!(
            "square-root argument {radicand} is negative"
        )));
    }
    let upper = j2 / denom * (j2 + m * (lf - radicand.sqrt()));
    if lower > upper {
        return Err(inapplicable(format!(
            "lower bound {lower} exceeds upper bound {upper}"
        )));
    }
    Ok(NeumannBounds { lower, upper })
}
