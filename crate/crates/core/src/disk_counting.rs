//! Counting bounds for the unit disk in the wavenumber variable `lambda`
//! (so eigenvalues are compared with `lambda^2`).

use std::f64::consts::PI;

use astro_float::BigFloat;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::floor::{guarded_floor_u64, Hp};

/// `H(m, lambda) = (sqrt(lambda^2 - m^2) - m acos(m / lambda)) / pi`.
pub fn band_height(m: f64, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::domain(
            "band_height",
            format!("lambda must be finite and > 0, got {lambda}"),
        ));
    }
    if !(0.0..=lambda).contains(&m) {
        return Err(Error::domain(
            "band_height",
            format!("m = {m} outside [0, {lambda}]"),
        ));
    }
    let r = (m / lambda).min(1.0);
    Ok(((lambda - m) * (lambda + m)).sqrt().max(0.0) / PI - m * r.acos() / PI)
}

fn hp_band_height(h: &mut Hp, m: f64, lambda: f64) -> BigFloat {
    let pi = h.pi();
    let (m, l) = (h.f(m), h.f(lambda));
    let root = h.sqrt(&h.sub(&h.mul(&l, &l), &h.mul(&m, &m)));
    let angle = h.acos(&h.div(&m, &l));
    h.div(&h.sub(&root, &h.mul(&m, &angle)), &pi)
}

/// `floor(H(m, lambda) + shift)` with `shift` in quarters.
fn band_floor(m: f64, lambda: f64, quarters: i64) -> u64 {
    let approx = band_height(m, lambda).expect("m in range") + quarters as f64 / 4.0;
    guarded_floor_u64(approx, |h| {
        let v = hp_band_height(h, m, lambda);
        h.add(&v, &h.ratio(quarters, 4))
    })
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda.is_finite() && lambda >= 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "lambda must be finite and >= 0, got {lambda}"
        )))
    }
}

fn p2(lambda: f64, quarters: i64) -> Result<u64> {
    check_lambda(lambda)?;
    if lambda == 0.0 {
        return Ok(guarded_floor_u64(quarters as f64 / 4.0, |h| {
            h.ratio(quarters, 4)
        }));
    }
    let head = guarded_floor_u64(lambda / PI + quarters as f64 / 4.0, |h| {
        let pi = h.pi();
        h.add(&h.div(&h.f(lambda), &pi), &h.ratio(quarters, 4))
    });
    let bands: u64 = (1..=lambda.floor() as u64)
        .map(|m| band_floor(m as f64, lambda, quarters))
        .sum();
    Ok(head + 2 * bands)
}

/// `floor(lambda/pi + 1/4) + 2 sum_{m=1}^{floor(lambda)} floor(H(m, lambda) + 1/4)`.
pub fn p2_dirichlet(lambda: f64) -> Result<u64> {
    p2(lambda, 1)
}

/// `floor(lambda/pi + 3/4) + 2 sum_{m=1}^{floor(lambda)} floor(H(m, lambda) + 3/4)`.
pub fn p2_neumann(lambda: f64) -> Result<u64> {
    p2(lambda, 3)
}

/// One band slope `-1/(2n)` and its coefficient
/// `(2/pi) (sin(pi/2n) - (pi/2n) cos(pi/2n))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BandTerm {
    pub n: u64,
    pub coefficient: f64,
}

impl BandTerm {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("band index n must be >= 1"));
        }
        let x = PI / (2.0 * n as f64);
        // sin x - x cos x loses digits for small x; use the series there.
        let s = if x < 1e-2 {
            let x2 = x * x;
            x * x2 * (1.0 / 3.0 - x2 * (1.0 / 30.0 - x2 * (1.0 / 840.0 - x2 / 45360.0)))
        } else {
            x.sin() - x * x.cos()
        };
        Ok(BandTerm {
            n,
            coefficient: 2.0 / PI * s,
        })
    }

    fn hp_coefficient(&self, h: &mut Hp) -> BigFloat {
        let pi = h.pi();
        let x = h.div(&pi, &h.int(2 * self.n as i64));
        let (sin, cos) = (h.sin(&x), h.cos(&x));
        let s = h.sub(&sin, &h.mul(&x, &cos));
        h.div(&h.mul(&h.int(2), &s), &pi)
    }

    /// `floor(coefficient * scale + 1/4)`, where `hp_scale` recomputes `scale`.
    fn floor_term(&self, scale: f64, hp_scale: impl Fn(&mut Hp) -> BigFloat) -> u64 {
        guarded_floor_u64(self.coefficient * scale + 0.25, |h| {
            let c = self.hp_coefficient(h);
            let s = hp_scale(h);
            h.add(&h.mul(&c, &s), &h.ratio(1, 4))
        })
    }
}

/// `sum_{n >= 1} 2 coefficient_n = sum (4/pi)(sin(pi/2n) - (pi/2n) cos(pi/2n))`,
/// summed to `n = terms` plus the `pi^2 / (6 n^2)` tail estimate.
pub fn band_coefficient_sum(terms: u64) -> f64 {
    let head: f64 = (1..=terms)
        .map(|n| 2.0 * BandTerm::new(n).expect("n >= 1").coefficient)
        .sum();
    // 2 c_n ~ pi^2 / (6 n^3), and sum_{n > N} n^-3 ~ 1 / (2 N^2)
    let t = terms as f64 + 0.5;
    head + PI * PI / (12.0 * t * t)
}

/// Lower bounds on twice the number of band crossings at integer abscissas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandCrossings {
    /// `2 floor(lambda/pi + 1/4)`.
    pub single: u64,
    /// `2 sum_n floor((lambda/pi)(sin(pi/2n) - (pi/2n) cos(pi/2n)) + 1/4)`.
    pub multi: u64,
    /// Number of nonzero terms in `multi`.
    pub terms: u64,
}

/// Sums `2 floor(c_n scale + 1/4)` until the first zero term.
fn band_sum(scale: f64, hp_scale: impl Fn(&mut Hp) -> BigFloat) -> (u64, u64) {
    let mut total = 0;
    let mut n = 1;
    loop {
        let t = BandTerm::new(n)
            .expect("n >= 1")
            .floor_term(scale, &hp_scale);
        if t == 0 {
            return (2 * total, n - 1);
        }
        total += t;
        n += 1;
    }
}

pub fn band_crossings_lower(lambda: f64) -> Result<BandCrossings> {
    check_lambda(lambda)?;
    // (lambda/pi)(sin - x cos) = (lambda/2) coefficient
    let hp_half = |h: &mut Hp| h.div(&h.f(lambda), &h.int(2));
    let (multi, terms) = band_sum(lambda / 2.0, hp_half);
    let single = 2 * BandTerm::new(1)?.floor_term(lambda / 2.0, hp_half);
    Ok(BandCrossings {
        single,
        multi,
        terms,
    })
}

/// `2 floor(2 sqrt(k) / pi + 1/4)`.
pub fn p_disk_theorem33(k: u64) -> u64 {
    let approx = 2.0 * (k as f64).sqrt() / PI + 0.25;
    2 * guarded_floor_u64(approx, |h| {
        let pi = h.pi();
        let s = h.mul(&h.int(2), &h.sqrt(&h.int(k as i64)));
        h.add(&h.div(&s, &pi), &h.ratio(1, 4))
    })
}

/// `2 sum_n floor((2/pi)(sin(pi/2n) - (pi/2n) cos(pi/2n)) sqrt(k) + 1/4)`,
/// stopping at the first zero term.
pub fn p_disk_theorem34(k: u64) -> u64 {
    band_sum((k as f64).sqrt(), |h| h.sqrt(&h.int(k as i64))).0
}
