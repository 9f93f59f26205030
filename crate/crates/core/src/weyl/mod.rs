//! Two-term Weyl coefficients, the margin `g(n, k, p)`, gap sequences and
//! residual diagnostics.

mod gap;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

pub use gap::{
    large_n_ratio, p_lipschitz, p_planar, p_rectangle, p_rectangle_universal, p_sphere2, p_weyl,
    weyl_gap_coefficient, GapSequence,
};

use crate::error::{Error, Result};
use crate::spectra::{Bc, DomainSpec, Spectrum};

/// `ln omega_n`, from `omega_{2m} = pi^m / m!` and
/// `omega_{2m+1} = 2 m! (4 pi)^m / (2m+1)!`.
pub fn ln_unit_ball_volume(n: u32) -> f64 {
    let ln_fact = |m: u32| (2..=m).map(|i| (i as f64).ln()).sum::<f64>();
    let m = n / 2;
    if n.is_multiple_of(2) {
        m as f64 * PI.ln() - ln_fact(m)
    } else {
        2f64.ln() + ln_fact(m) + m as f64 * (4.0 * PI).ln() - ln_fact(n)
    }
}

/// Volume of the unit ball in `R^n`; `omega_0 = 1`.
pub fn unit_ball_volume(n: u32) -> f64 {
    ln_unit_ball_volume(n).exp()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeylCoefficients {
    pub n: u32,
    pub c0: f64,
    pub c1: f64,
    pub omega_n: f64,
    pub omega_n_minus_1: f64,
}

impl WeylCoefficients {
    /// `c0 k^(2/n) + c1 k^(1/n)` for Dirichlet, `-` for Neumann.
    pub fn main_term(&self, bc: Bc, k: f64) -> f64 {
        let t = k.powf(1.0 / self.n as f64);
        match bc {
            Bc::Dirichlet => self.c0 * t * t + self.c1 * t,
            Bc::Neumann => self.c0 * t * t - self.c1 * t,
        }
    }
}

/// `c0 = 4 pi^2 / (omega_n |Omega|)^(2/n)`,
/// `c1 = 2 pi^2 omega_{n-1} |d Omega| / (n (omega_n |Omega|)^(1 + 1/n))`.
pub fn weyl_coefficients(domain: &DomainSpec) -> WeylCoefficients {
    let n = domain.dimension();
    let nf = n as f64;
    let omega_n = unit_ball_volume(n);
    let omega_n_minus_1 = unit_ball_volume(n - 1);
    let w = omega_n * domain.volume();
    WeylCoefficients {
        n,
        c0: 4.0 * PI * PI / w.powf(2.0 / nf),
        c1: 2.0 * PI * PI * omega_n_minus_1 * domain.boundary_measure()
            / (nf * w.powf(1.0 + 1.0 / nf)),
        omega_n,
        omega_n_minus_1,
    }
}

/// `g(n, k, p) = -c0 x^2 + c1 x + c0 k^(2/n) + c1 k^(1/n)` at `x = (k + p)^(1/n)`:
/// the main-term part of `lambda_k - mu_{k+p}`.
pub fn gap_margin(n: u32, k: u64, p: u64, c0: f64, c1: f64) -> Result<f64> {
    if n == 0 || k == 0 {
        return Err(Error::invalid(format!(
            "gap_margin needs n >= 1 and k >= 1, got n = {n}, k = {k}"
        )));
    }
    let e = 1.0 / n as f64;
    let x = ((k + p) as f64).powf(e);
    let y = (k as f64).powf(e);
    Ok(c0 * (y - x) * (y + x) + c1 * (x + y))
}

/// `(c1/c0 + k^(1/n))^n - k`, the real `p` at which `g` changes sign.
pub fn gap_threshold(n: u32, k: u64, c0: f64, c1: f64) -> f64 {
    (c1 / c0 + (k as f64).powf(1.0 / n as f64)).powi(n as i32) - k as f64
}

/// `|d Omega| - n |Omega|^(1 - 1/n) omega_n^(1/n)`, nonnegative, zero for balls.
pub fn isoperimetric_excess(domain: &DomainSpec) -> f64 {
    let n = domain.dimension() as f64;
    domain.boundary_measure()
        - n * domain.volume().powf(1.0 - 1.0 / n)
            * unit_ball_volume(domain.dimension()).powf(1.0 / n)
}

/// `(value_k - c0 k^(2/n) -+ c1 k^(1/n)) / k^(1/n)` over the complete part
/// of the spectrum, sign by boundary condition. Entry `i` is rank `i + 1`.
pub fn weyl_residuals(spectrum: &Spectrum, coeffs: &WeylCoefficients) -> Vec<f64> {
    let e = 1.0 / coeffs.n as f64;
    spectrum.entries[..spectrum.guaranteed_count]
        .iter()
        .enumerate()
        .map(|(i, ev)| {
            let k = (i + 1) as f64;
            (ev.value - coeffs.main_term(spectrum.bc, k)) / k.powf(e)
        })
        .collect()
}

/// Median of `|values|` over the window of `width` entries centred on `index`
/// (clipped to the slice).
pub fn windowed_abs_median(values: &[f64], index: usize, width: usize) -> Option<f64> {
    if values.is_empty() || index >= values.len() {
        return None;
    }
    let half = width / 2;
    let lo = index.saturating_sub(half);
    let hi = (index + half + 1).min(values.len());
    let mut w: Vec<f64> = values[lo..hi].iter().map(|v| v.abs()).collect();
    w.sort_by(f64::total_cmp);
    let m = w.len();
    Some(if m % 2 == 1 {
        w[m / 2]
    } else {
        (w[m / 2 - 1] + w[m / 2]) / 2.0
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_volumes() {
        assert!((unit_ball_volume(0) - 1.0).abs() < 1e-15);
        assert!((unit_ball_volume(1) - 2.0).abs() < 1e-14);
        assert!((unit_ball_volume(2) - PI).abs() < 1e-14);
        assert!((unit_ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-14);
        assert!((unit_ball_volume(4) - PI * PI / 2.0).abs() < 1e-14);
        assert!((unit_ball_volume(5) - 8.0 * PI * PI / 15.0).abs() < 1e-14);
        // finite and tiny at n = 1000
        let v = ln_unit_ball_volume(1000);
        assert!(v.is_finite() && v < -2000.0);
    }

    #[test]
    fn disk_and_square_coefficients() {
        let d = weyl_coefficients(&DomainSpec::unit_disk());
        // omega_2 |D| = pi^2, so c0 = 4
        assert!((d.c0 - 4.0).abs() < 1e-13);
        assert!((d.c1 / d.c0 - 1.0).abs() < 1e-14);
        let s = weyl_coefficients(&DomainSpec::unit_square());
        assert!((s.c0 - 4.0 * PI).abs() < 1e-13);
        // 2 pi^2 * 2 * 4 / (2 pi^(3/2)) = 8 sqrt(pi)
        assert!((s.c1 - 8.0 * PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn doubling_lengths_quarters_both() {
        for (u, b) in [
            (
                DomainSpec::ball(3, 1.0).unwrap(),
                DomainSpec::ball(3, 2.0).unwrap(),
            ),
            (
                DomainSpec::ball(6, 1.0).unwrap(),
                DomainSpec::ball(6, 2.0).unwrap(),
            ),
            (
                DomainSpec::reference_sector(),
                DomainSpec::annular_sector(2.0, 4.0, "3pi/2".parse().unwrap()).unwrap(),
            ),
        ] {
            let (cu, cb) = (weyl_coefficients(&u), weyl_coefficients(&b));
            assert!((cb.c0 * 4.0 / cu.c0 - 1.0).abs() < 1e-13);
            assert!((cb.c1 * 4.0 / cu.c1 - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn margin_vanishes_at_threshold() {
        for n in [2, 3, 5] {
            for k in [1u64, 10, 1000] {
                let (c0, c1) = (4.0, 1.7);
                assert!(gap_margin(n, k, 0, c0, c1).unwrap() > 0.0);
                let t = gap_threshold(n, k, c0, c1);
                let x = (k as f64).powf(1.0 / n as f64) + c1 / c0;
                let g = -c0 * x * x
                    + c1 * x
                    + c0 * (k as f64).powf(2.0 / n as f64)
                    + c1 * (k as f64).powf(1.0 / n as f64);
                assert!(g.abs() < 1e-9 * (c0 * x * x));
                let below = t.floor() as u64;
                assert!(gap_margin(n, k, below, c0, c1).unwrap() >= 0.0);
                assert!(gap_margin(n, k, below + 1, c0, c1).unwrap() < 0.0);
            }
        }
    }

    #[test]
    fn disk_margin_at_weyl_gap_is_bounded() {
        let d = weyl_coefficients(&DomainSpec::unit_disk());
        for k in [100u64, 10_000, 1_000_000] {
            let p = p_weyl(2, k).unwrap();
            let g = gap_margin(2, k, p, d.c0, d.c1).unwrap();
            assert!(g.abs() <= 8.0 * PI, "k = {k}: g = {g}");
        }
    }

    #[test]
    fn isoperimetric_equality_only_for_round_domains() {
        assert!(isoperimetric_excess(&DomainSpec::unit_disk()).abs() < 1e-12);
        assert!(isoperimetric_excess(&DomainSpec::ball(5, 3.0).unwrap()).abs() < 1e-10);
        assert!(isoperimetric_excess(&DomainSpec::unit_square()) > 0.1);
        assert!(isoperimetric_excess(&DomainSpec::reference_sector()) > 0.1);
    }

    #[test]
    fn window_median() {
        let v = [-5.0, 1.0, 2.0, -3.0, 4.0];
        assert_eq!(windowed_abs_median(&v, 2, 3), Some(2.0));
        assert_eq!(windowed_abs_median(&v, 0, 3), Some(3.0));
        assert_eq!(windowed_abs_median(&v, 9, 3), None);
    }
}
