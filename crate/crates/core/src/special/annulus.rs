//! Radial modes of the annulus `1 < r < rho` via Bessel cross products.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::bessel::{bessel_jy, second_derivative};
use super::order::BesselOrder;
use super::roots::{refine_root, sign, RootBracket};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CrossKind {
    /// `J(x) Y(rho x) - J(rho x) Y(x)`
    Dirichlet,
    /// `J'(x) Y'(rho x) - J'(rho x) Y'(x)`
    Neumann,
}

struct CrossProduct {
    order: BesselOrder,
    ratio: f64,
    kind: CrossKind,
}

impl CrossProduct {
    fn new(order: BesselOrder, ratio: f64, kind: CrossKind) -> Result<Self> {
        if !ratio.is_finite() || ratio <= 1.0 {
            return Err(Error::invalid(format!(
                "annulus ratio must be finite and > 1, got {ratio}"
            )));
        }
        Ok(Self { order, ratio, kind })
    }

    fn fdf(&self, x: f64) -> Result<(f64, f64)> {
        let rho = self.ratio;
        let nu = self.order.value();
        let a = bessel_jy(self.order, x)?;
        let b = bessel_jy(self.order, rho * x)?;
        Ok(match self.kind {
            CrossKind::Dirichlet => {
                let f = a.j * b.y - b.j * a.y;
                let df = a.jp * b.y + rho * a.j * b.yp - rho * b.jp * a.y - b.j * a.yp;
                (f, df)
            }
            CrossKind::Neumann => {
                let ajpp = second_derivative(nu, x, a.j, a.jp);
                let aypp = second_derivative(nu, x, a.y, a.yp);
                let bjpp = second_derivative(nu, rho * x, b.j, b.jp);
                let bypp = second_derivative(nu, rho * x, b.y, b.yp);
                let f = a.jp * b.yp - b.jp * a.yp;
                let df = ajpp * b.yp + rho * a.jp * bypp - rho * bjpp * a.yp - b.jp * aypp;
                (f, df)
            }
        })
    }

    /// Every root exceeds `nu / rho`: the radial Rayleigh quotient contains
    /// `nu^2 / r^2 >= nu^2 / rho^2`.
    fn start(&self) -> f64 {
        let lower = self.order.value() / self.ratio;
        if lower > 0.0 {
            lower
        } else {
            1e-2 / self.ratio
        }
    }

    fn step(&self) -> f64 {
        (PI / (4.0 * (self.ratio - 1.0))).min(0.5)
    }

    /// Upper bound on the `k`-th root by comparison with the Dirichlet problem
    /// on `[1, rho]` with the potential replaced by its maximum `nu^2`, plus slack.
    fn ceiling(&self, k: usize) -> f64 {
        let nu = self.order.value();
        let w = PI / (self.ratio - 1.0);
        (nu * nu + ((k + 1) as f64 * w).powi(2)).sqrt() + w + 1.0
    }

    /// Scans upward and refines roots until `stop` says enough.
    fn scan(&self, limit: f64, mut stop: impl FnMut(&[f64], f64) -> bool) -> Result<Vec<f64>> {
        let h = self.step();
        let mut roots = Vec::new();
        let mut x_prev = self.start();
        let mut f_prev = self.fdf(x_prev)?.0;
        let mut x = x_prev;
        while !stop(&roots, x) {
            if x > limit {
                return Err(Error::BracketNotFound {
                    what: format!(
                        "{:?} annulus cross-product root of order {} (ratio {}), found {}",
                        self.kind,
                        self.order,
                        self.ratio,
                        roots.len()
                    ),
                    ceiling: limit,
                });
            }
            x += h;
            let f = self.fdf(x)?.0;
            if sign(f) == 0 {
                continue;
            }
            if sign(f_prev) == 0 {
                f_prev = f;
                x_prev = x;
                continue;
            }
            if let Some(b) = RootBracket::new(x_prev, x, f_prev, f) {
                roots.push(refine_root(b, |t| self.fdf(t))?);
            }
            f_prev = f;
            x_prev = x;
        }
        Ok(roots)
    }
}

/// `k`-th positive root of the annulus cross product for inner radius 1 and
/// outer radius `ratio`.
pub fn annulus_cross_zero(
    order: BesselOrder,
    ratio: f64,
    k: usize,
    kind: CrossKind,
) -> Result<f64> {
    if k == 0 {
        return Err(Error::invalid("root index k must be >= 1"));
    }
    let cp = CrossProduct::new(order, ratio, kind)?;
    let roots = cp.scan(cp.ceiling(k), |r, _| r.len() >= k)?;
    Ok(roots[k - 1])
}

/// All positive cross-product roots strictly below `xmax`.
pub fn annulus_cross_zeros_below(
    order: BesselOrder,
    ratio: f64,
    kind: CrossKind,
    xmax: f64,
) -> Result<Vec<f64>> {
    let cp = CrossProduct::new(order, ratio, kind)?;
    if cp.start() >= xmax {
        return Ok(Vec::new());
    }
    let mut roots = cp.scan(f64::INFINITY, |_, x| x >= xmax)?;
    roots.retain(|&r| r < xmax);
    Ok(roots)
}
