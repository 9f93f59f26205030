use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Side;
use crate::weyl::unit_ball_volume;

/// An opening angle `(num/den) * pi` with `0 < angle <= 2 pi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SectorAngle {
    num: u64,
    den: u64,
}

impl SectorAngle {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 || num > 2 * den {
            return Err(Error::invalid(format!(
                "sector angle must lie in (0, 2pi], got {num}pi/{den}"
            )));
        }
        let g = num.gcd(&den);
        Ok(Self {
            num: num / g,
            den: den / g,
        })
    }

    /// Numerator and denominator of `angle / pi`.
    pub fn over_pi(&self) -> (u64, u64) {
        (self.num, self.den)
    }

    pub fn radians(&self) -> f64 {
        self.num as f64 / self.den as f64 * PI
    }
}

impl fmt::Display for SectorAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = if self.num == 1 {
            String::new()
        } else {
            self.num.to_string()
        };
        if self.den == 1 {
            write!(f, "{n}pi")
        } else {
            write!(f, "{n}pi/{}", self.den)
        }
    }
}

/// Accepts `3pi/2`, `3/2pi`, `3/2*pi`, `pi`, `2pi`.
impl FromStr for SectorAngle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::invalid(format!(
                "sector angle must be a rational multiple of pi, got {s:?}"
            ))
        };
        let compact: String = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '*')
            .collect();
        if compact.matches("pi").count() != 1 {
            return Err(bad());
        }
        let rest = compact.replacen("pi", "", 1);
        let (n, d) = match rest.split_once('/') {
            Some((n, d)) => (n, d),
            None => (rest.as_str(), "1"),
        };
        let n: u64 = if n.is_empty() {
            1
        } else {
            n.parse().map_err(|_| bad())?
        };
        let d: u64 = d.parse().map_err(|_| bad())?;
        Self::new(n, d)
    }
}

impl From<SectorAngle> for String {
    fn from(a: SectorAngle) -> Self {
        a.to_string()
    }
}

impl TryFrom<String> for SectorAngle {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// A model domain with closed-form spectra.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DomainSpec {
    Rectangle {
        a: Side,
        b: Side,
    },
    Disk {
        radius: f64,
    },
    Ball {
        dim: u32,
        radius: f64,
    },
    AnnularSector {
        r_in: f64,
        r_out: f64,
        angle: SectorAngle,
    },
}

fn positive_length(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "{name} must be a finite positive length, got {v}"
        )))
    }
}

impl DomainSpec {
    pub fn rectangle(a: Side, b: Side) -> Self {
        DomainSpec::Rectangle { a, b }
    }

    pub fn unit_square() -> Self {
        let one = Side::rational(1, 1).expect("1 is a valid side");
        DomainSpec::Rectangle {
            a: one.clone(),
            b: one,
        }
    }

    pub fn disk(radius: f64) -> Result<Self> {
        positive_length("disk radius", radius)?;
        Ok(DomainSpec::Disk { radius })
    }

    pub fn unit_disk() -> Self {
        DomainSpec::Disk { radius: 1.0 }
    }

    pub fn ball(dim: u32, radius: f64) -> Result<Self> {
        if dim < 2 {
            return Err(Error::invalid(format!(
                "ball dimension must be >= 2, got {dim}"
            )));
        }
        positive_length("ball radius", radius)?;
        Ok(DomainSpec::Ball { dim, radius })
    }

    pub fn annular_sector(r_in: f64, r_out: f64, angle: SectorAngle) -> Result<Self> {
        positive_length("inner radius", r_in)?;
        positive_length("outer radius", r_out)?;
        if r_in >= r_out {
            return Err(Error::invalid(format!(
                "inner radius {r_in} must be below outer radius {r_out}"
            )));
        }
        Ok(DomainSpec::AnnularSector { r_in, r_out, angle })
    }

    /// `{(r, theta): 1 < r < 2, 0 < theta < 3pi/2}`.
    pub fn reference_sector() -> Self {
        DomainSpec::AnnularSector {
            r_in: 1.0,
            r_out: 2.0,
            angle: SectorAngle::new(3, 2).expect("3pi/2 is a valid angle"),
        }
    }

    /// Re-checks the invariants, for values built directly or deserialized.
    pub fn validate(&self) -> Result<()> {
        match self {
            DomainSpec::Rectangle { .. } => Ok(()),
            DomainSpec::Disk { radius } => DomainSpec::disk(*radius).map(|_| ()),
            DomainSpec::Ball { dim, radius } => DomainSpec::ball(*dim, *radius).map(|_| ()),
            DomainSpec::AnnularSector { r_in, r_out, angle } => {
                SectorAngle::new(angle.num, angle.den)?;
                DomainSpec::annular_sector(*r_in, *r_out, *angle).map(|_| ())
            }
        }
    }

    pub fn dimension(&self) -> u32 {
        match self {
            DomainSpec::Ball { dim, .. } => *dim,
            _ => 2,
        }
    }

    pub fn volume(&self) -> f64 {
        match self {
            DomainSpec::Rectangle { a, b } => a.value() * b.value(),
            DomainSpec::Disk { radius } => PI * radius * radius,
            DomainSpec::Ball { dim, radius } => unit_ball_volume(*dim) * radius.powi(*dim as i32),
            DomainSpec::AnnularSector { r_in, r_out, angle } => {
                angle.radians() * (r_out * r_out - r_in * r_in) / 2.0
            }
        }
    }

    pub fn boundary_measure(&self) -> f64 {
        match self {
            DomainSpec::Rectangle { a, b } => 2.0 * (a.value() + b.value()),
            DomainSpec::Disk { radius } => 2.0 * PI * radius,
            DomainSpec::Ball { dim, radius } => {
                *dim as f64 * unit_ball_volume(*dim) * radius.powi(*dim as i32 - 1)
            }
            DomainSpec::AnnularSector { r_in, r_out, angle } => {
                angle.radians() * (r_in + r_out) + 2.0 * (r_out - r_in)
            }
        }
    }

    /// Whether the domain is a disk or ball, the equality case of the
    /// isoperimetric inequality.
    pub fn is_round(&self) -> bool {
        matches!(self, DomainSpec::Disk { .. } | DomainSpec::Ball { .. })
    }
}

impl fmt::Display for DomainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainSpec::Rectangle { a, b } => write!(f, "rectangle {a} x {b}"),
            DomainSpec::Disk { radius } => write!(f, "disk of radius {radius}"),
            DomainSpec::Ball { dim, radius } => write!(f, "{dim}-ball of radius {radius}"),
            DomainSpec::AnnularSector { r_in, r_out, angle } => {
                write!(
                    f,
                    "annular sector {r_in} < r < {r_out}, 0 < theta < {angle}"
                )
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles_parse() {
        assert_eq!(
            "3pi/2".parse::<SectorAngle>().unwrap(),
            SectorAngle::new(3, 2).unwrap()
        );
        assert_eq!(
            "3/2*pi".parse::<SectorAngle>().unwrap(),
            SectorAngle::new(3, 2).unwrap()
        );
        assert_eq!("pi".parse::<SectorAngle>().unwrap().to_string(), "pi");
        assert_eq!("4pi/2".parse::<SectorAngle>().unwrap().to_string(), "2pi");
        assert!("3pi".parse::<SectorAngle>().is_err());
        assert!("1.5".parse::<SectorAngle>().is_err());
    }

    #[test]
    fn geometric_functionals() {
        let s = DomainSpec::reference_sector();
        assert!((s.volume() - 9.0 * PI / 4.0).abs() < 1e-14);
        assert!((s.boundary_measure() - (9.0 * PI / 2.0 + 2.0)).abs() < 1e-14);
        let b = DomainSpec::ball(3, 2.0).unwrap();
        assert!((b.volume() - 4.0 / 3.0 * PI * 8.0).abs() < 1e-12);
        assert!((b.boundary_measure() - 4.0 * PI * 4.0).abs() < 1e-12);
        let r = DomainSpec::rectangle("9pi/4".parse().unwrap(), "1".parse().unwrap());
        assert!((r.volume() - 9.0 * PI / 4.0).abs() < 1e-14);
    }

    #[test]
    fn validation() {
        assert!(DomainSpec::disk(-1.0).is_err());
        assert!(DomainSpec::ball(1, 1.0).is_err());
        assert!(DomainSpec::annular_sector(2.0, 1.0, SectorAngle::new(1, 1).unwrap()).is_err());
        assert!(SectorAngle::new(5, 2).is_err());
    }

    #[test]
    fn serde_round_trip_is_strict() {
        let d = DomainSpec::reference_sector();
        let text = serde_json::to_string(&d).unwrap();
        assert_eq!(serde_json::from_str::<DomainSpec>(&text).unwrap(), d);
        assert!(
            serde_json::from_str::<DomainSpec>(r#"{"kind":"disk","radius":1,"extra":2}"#).is_err()
        );
    }
}
