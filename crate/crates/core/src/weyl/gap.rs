//! Closed-form gap sequences `p(k)`.

use std::f64::consts::{E, PI};
use std::fmt;

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::ln_unit_ball_volume;
use crate::disk_counting::{p_disk_theorem33, p_disk_theorem34};
use crate::error::{Error, Result};
use crate::exact::Side;
use crate::floor::{guarded_floor_u64, Hp};

fn hp_factorial(h: &Hp, m: u32) -> BigFloat {
    (2..=m as i64).fold(h.int(1), |acc, i| h.mul(&acc, &h.int(i)))
}

fn hp_unit_ball_volume(h: &mut Hp, n: u32) -> BigFloat {
    let m = n / 2;
    let pi = h.pi();
    if n.is_multiple_of(2) {
        let num = h.powi(&pi, m as usize);
        h.div(&num, &hp_factorial(h, m))
    } else {
        let four_pi = h.mul(&h.int(4), &pi);
        let num = h.mul(
            &h.mul(&h.int(2), &hp_factorial(h, m)),
            &h.powi(&four_pi, m as usize),
        );
        h.div(&num, &hp_factorial(h, n))
    }
}

fn check_k(k: u64) -> Result<()> {
    if k == 0 {
        return Err(Error::invalid("gap sequences are indexed from k = 1"));
    }
    Ok(())
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "{name} must be finite and > 0, got {v}"
        )))
    }
}

/// `n omega_{n-1} / (2 omega_n^(1 - 2/n))`.
pub fn weyl_gap_coefficient(n: u32) -> f64 {
    let nf = n as f64;
    (nf.ln() + ln_unit_ball_volume(n - 1) - 2f64.ln() - (1.0 - 2.0 / nf) * ln_unit_ball_volume(n))
        .exp()
}

/// `floor(n omega_{n-1} / (2 omega_n^(1 - 2/n)) k^(1 - 1/n))`.
pub fn p_weyl(n: u32, k: u64) -> Result<u64> {
    check_k(k)?;
    if n < 2 {
        return Err(Error::invalid(format!("p_weyl needs n >= 2, got {n}")));
    }
    let nf = n as f64;
    let approx = weyl_gap_coefficient(n) * (k as f64).powf(1.0 - 1.0 / nf);
    Ok(guarded_floor_u64(approx, |h| {
        let wn = hp_unit_ball_volume(h, n);
        let wm = hp_unit_ball_volume(h, n - 1);
        let ni = n as i64;
        let wp = h.rational_power(&wn, ni - 2, n);
        let denom = h.mul(&h.int(2), &wp);
        let coef = h.div(&h.mul(&h.int(ni), &wm), &denom);
        let kk = h.int(k as i64);
        let kp = h.rational_power(&kk, ni - 1, n);
        h.mul(&coef, &kp)
    }))
}

/// `floor(P sqrt(k / (pi A)))`.
pub fn p_rectangle(perimeter: f64, area: f64, k: u64) -> Result<u64> {
    check_k(k)?;
    check_positive("perimeter", perimeter)?;
    check_positive("area", area)?;
    let approx = perimeter * (k as f64 / (PI * area)).sqrt();
    Ok(guarded_floor_u64(approx, |h| {
        let pi = h.pi();
        let q = h.div(&h.int(k as i64), &h.mul(&pi, &h.f(area)));
        h.mul(&h.f(perimeter), &h.sqrt(&q))
    }))
}

/// `floor(4 sqrt(k / pi))`.
pub fn p_rectangle_universal(k: u64) -> Result<u64> {
    p_rectangle(4.0, 1.0, k)
}

/// `floor(alpha P sqrt(k) / sqrt(pi A)) + 1`, `0 < alpha < 1`.
pub fn p_planar(alpha: f64, perimeter: f64, area: f64, k: u64) -> Result<u64> {
    check_k(k)?;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    check_positive("perimeter", perimeter)?;
    check_positive("area", area)?;
    let approx = alpha * perimeter * (k as f64).sqrt() / (PI * area).sqrt();
    Ok(guarded_floor_u64(approx, |h| {
        let pi = h.pi();
        let num = h.mul(
            &h.mul(&h.f(alpha), &h.f(perimeter)),
            &h.sqrt(&h.int(k as i64)),
        );
        h.div(&num, &h.sqrt(&h.mul(&pi, &h.f(area))))
    }) + 1)
}

/// `floor(1 - A/(4 pi) + 2 sqrt(1 - A/(4 pi)) sqrt(k))`, `0 < A < 4 pi`.
pub fn p_sphere2(area: f64, k: u64) -> Result<u64> {
    check_k(k)?;
    if !(area > 0.0 && area < 4.0 * PI) {
        return Err(Error::invalid(format!(
            "spherical domain area must lie in (0, 4pi), got {area}"
        )));
    }
    let t = 1.0 - area / (4.0 * PI);
    let approx = t + 2.0 * t.sqrt() * (k as f64).sqrt();
    Ok(guarded_floor_u64(approx, |h| {
        let pi = h.pi();
        let t = h.sub(&h.int(1), &h.div(&h.f(area), &h.mul(&h.int(4), &pi)));
        let s = h.mul(&h.mul(&h.int(2), &h.sqrt(&t)), &h.sqrt(&h.int(k as i64)));
        h.add(&t, &s)
    }))
}

/// `floor(C k^(1 - 3/n))` with a caller-supplied `C > 0`.
pub fn p_lipschitz(c: f64, n: u32, k: u64) -> Result<u64> {
    check_k(k)?;
    check_positive("constant", c)?;
    if n == 0 {
        return Err(Error::invalid("dimension must be >= 1"));
    }
    let ni = n as i64;
    let approx = c * (k as f64).powf(1.0 - 3.0 / n as f64);
    Ok(guarded_floor_u64(approx, |h| {
        let kk = h.int(k as i64);
        let p = h.rational_power(&kk, ni - 3, n);
        h.mul(&h.f(c), &p)
    }))
}

/// `floor(c sqrt(k))` for `c = sqrt(q) pi^t`; exact integer arithmetic when `t = 0`.
pub fn p_constant_sqrt(c: &Side, k: u64) -> Result<u64> {
    check_k(k)?;
    let qk = c.square_coefficient() * BigRational::from_integer(BigInt::from(k));
    if !c.has_pi() {
        // floor(sqrt(x)) = isqrt(floor(x)) for x >= 0
        return qk
            .floor()
            .to_integer()
            .sqrt()
            .to_u64()
            .ok_or_else(|| Error::invalid("gap overflows u64"));
    }
    let approx = c.value() * (k as f64).sqrt();
    Ok(guarded_floor_u64(approx, |h| {
        let pi = h.pi();
        let r = h.rational(&qk);
        h.mul(&h.sqrt(&r), &pi)
    }))
}

/// A rule `k -> p(k)` for inequalities `lambda_k >= mu_{k + p(k)}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GapSequence {
    WeylAsymptotic {
        n: u32,
    },
    TwoDimPlanar {
        alpha: f64,
        perimeter: f64,
        area: f64,
    },
    RectanglePerimeter {
        perimeter: f64,
        area: f64,
    },
    RectangleUniversal,
    DiskBand33,
    DiskBand34,
    Sphere2 {
        area: f64,
    },
    /// `floor(c sqrt(k))`, `c` held exactly as `sqrt(q) pi^t`.
    ConstantSqrt {
        c: Side,
    },
    FixedOffset {
        m: u64,
    },
    LipschitzPower {
        c: f64,
        n: u32,
    },
    /// Another sequence plus a constant.
    Shifted {
        base: Box<GapSequence>,
        by: u64,
    },
}

impl GapSequence {
    pub fn evaluate(&self, k: u64) -> Result<u64> {
        check_k(k)?;
        match self {
            GapSequence::WeylAsymptotic { n } => p_weyl(*n, k),
            GapSequence::TwoDimPlanar {
                alpha,
                perimeter,
                area,
            } => p_planar(*alpha, *perimeter, *area, k),
            GapSequence::RectanglePerimeter { perimeter, area } => {
                p_rectangle(*perimeter, *area, k)
            }
            GapSequence::RectangleUniversal => p_rectangle_universal(k),
            GapSequence::DiskBand33 => Ok(p_disk_theorem33(k)),
            GapSequence::DiskBand34 => Ok(p_disk_theorem34(k)),
            GapSequence::Sphere2 { area } => p_sphere2(*area, k),
            GapSequence::ConstantSqrt { c } => p_constant_sqrt(c, k),
            GapSequence::FixedOffset { m } => Ok(*m),
            GapSequence::LipschitzPower { c, n } => p_lipschitz(*c, *n, k),
            GapSequence::Shifted { base, by } => Ok(base.evaluate(k)? + by),
        }
    }

    /// `floor(c sqrt(k))`.
    pub fn constant_sqrt(c: Side) -> Self {
        GapSequence::ConstantSqrt { c }
    }

    /// Checks parameters by evaluating at `k = 1`.
    pub fn validate(&self) -> Result<()> {
        self.evaluate(1).map(|_| ())
    }

    /// `floor(P sqrt(k/(pi A)))` for a rectangle with sides `a`, `b`.
    pub fn rectangle(a: f64, b: f64) -> Self {
        GapSequence::RectanglePerimeter {
            perimeter: 2.0 * (a + b),
            area: a * b,
        }
    }
}

impl fmt::Display for GapSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GapSequence::WeylAsymptotic { n } => write!(f, "weyl(n={n})"),
            GapSequence::TwoDimPlanar {
                alpha,
                perimeter,
                area,
            } => {
                write!(f, "planar(alpha={alpha}, P={perimeter}, A={area})")
            }
            GapSequence::RectanglePerimeter { perimeter, area } => {
                write!(f, "rectangle(P={perimeter}, A={area})")
            }
            GapSequence::RectangleUniversal => f.write_str("rectangle-universal"),
            GapSequence::DiskBand33 => f.write_str("disk-single-band"),
            GapSequence::DiskBand34 => f.write_str("disk-multi-band"),
            GapSequence::Sphere2 { area } => write!(f, "sphere2(A={area})"),
            GapSequence::ConstantSqrt { c } => write!(f, "floor({c} sqrt(k))"),
            GapSequence::FixedOffset { m } => write!(f, "offset({m})"),
            GapSequence::LipschitzPower { c, n } => write!(f, "lipschitz(C={c}, n={n})"),
            GapSequence::Shifted { base, by } => write!(f, "{base} + {by}"),
        }
    }
}

/// `weyl_gap_coefficient(n) / (e sqrt(pi n / 2))`.
pub fn large_n_ratio(n: u32) -> f64 {
    weyl_gap_coefficient(n) / (E * (PI * n as f64 / 2.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planar_weyl_is_two_sqrt_k() {
        assert!((weyl_gap_coefficient(2) - 2.0).abs() < 1e-14);
        for k in 1..=2000u64 {
            let want = (1..).take_while(|m| m * m <= 4 * k).last().unwrap();
            assert_eq!(p_weyl(2, k).unwrap(), want, "k = {k}");
        }
    }

    #[test]
    fn universal_rectangle_coefficient() {
        assert_eq!(p_rectangle_universal(1).unwrap(), 2);
        for k in [1u64, 7, 100, 12345] {
            assert_eq!(
                p_rectangle(4.0 * 3f64.sqrt(), 3.0, k).unwrap(),
                p_rectangle_universal(k).unwrap()
            );
        }
    }

    #[test]
    fn large_dimension_ratio() {
        assert!((large_n_ratio(200) - 1.0).abs() < 0.1);
    }

    #[test]
    fn sequences_are_nondecreasing() {
        let fleet = [
            GapSequence::WeylAsymptotic { n: 3 },
            GapSequence::TwoDimPlanar {
                alpha: 0.5,
                perimeter: 5.0,
                area: 1.5,
            },
            GapSequence::rectangle(1.0, 2.0),
            GapSequence::RectangleUniversal,
            GapSequence::DiskBand33,
            GapSequence::DiskBand34,
            GapSequence::Sphere2 { area: 2.0 },
            GapSequence::constant_sqrt("1.665221".parse().unwrap()),
            GapSequence::constant_sqrt("sqrt(2)pi/3".parse().unwrap()),
            GapSequence::LipschitzPower { c: 0.7, n: 5 },
        ];
        for s in &fleet {
            let mut prev = 0;
            for k in 1..=10_000 {
                let p = s.evaluate(k).unwrap();
                assert!(p >= prev, "{s} decreases at k = {k}");
                prev = p;
            }
        }
    }

    #[test]
    fn exact_constant_sqrt() {
        let c: Side = "4/sqrt(5)".parse().unwrap();
        assert_eq!(p_constant_sqrt(&c, 5).unwrap(), 4);
        assert_eq!(p_constant_sqrt(&c, 4).unwrap(), 3);
        let two: Side = "2".parse().unwrap();
        for k in 1..500u64 {
            assert_eq!(p_constant_sqrt(&two, k).unwrap(), (4 * k).isqrt());
        }
        let pi: Side = "pi".parse().unwrap();
        assert_eq!(p_constant_sqrt(&pi, 4).unwrap(), 6);
    }

    #[test]
    fn parameter_validation() {
        assert!(GapSequence::TwoDimPlanar {
            alpha: 1.0,
            perimeter: 1.0,
            area: 1.0
        }
        .validate()
        .is_err());
        assert!(GapSequence::Sphere2 { area: 13.0 }.validate().is_err());
        assert!(GapSequence::LipschitzPower { c: -1.0, n: 4 }
            .validate()
            .is_err());
        assert!(GapSequence::FixedOffset { m: 1 }.evaluate(0).is_err());
    }

    #[test]
    fn serde_shape() {
        let s = GapSequence::Shifted {
            base: Box::new(GapSequence::constant_sqrt("4/sqrt(5)".parse().unwrap())),
            by: 1,
        };
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(serde_json::from_str::<GapSequence>(&text).unwrap(), s);
        assert!(
            serde_json::from_str::<GapSequence>(r#"{"kind":"fixed_offset","m":1,"x":0}"#).is_err()
        );
    }
}
