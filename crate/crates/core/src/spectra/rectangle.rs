//! Rectangle spectra `pi^2 (q^2/a^2 + r^2/b^2)` by exact lattice enumeration.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{rank, Bc, DomainSpec, Eigenvalue, ModeDescriptor, Spectrum, SpectrumLimits};
use crate::error::{Error, Result};
use crate::exact::{PiQuadratic, Side};

/// `pi^2 / side^2` as an exact `R + S pi^2`.
fn axis_step(side: &Side) -> PiQuadratic {
    let inv = side.square_coefficient().recip();
    if side.has_pi() {
        PiQuadratic::new(inv, BigRational::zero())
    } else {
        PiQuadratic::new(BigRational::zero(), inv)
    }
}

/// A threshold known exactly, with its float value for the fast path.
struct Level {
    approx: f64,
    exact: PiQuadratic,
}

impl Level {
    fn from_f64(v: f64) -> Result<Self> {
        Ok(Level {
            approx: v,
            exact: PiQuadratic::from_f64(v)?,
        })
    }

    fn from_exact(v: &PiQuadratic) -> Self {
        Level {
            approx: v.to_f64(),
            exact: v.clone(),
        }
    }

    /// Whether `x` (with float value `fx`) is strictly below the level.
    fn above(&self, fx: f64, x: impl FnOnce() -> PiQuadratic) -> bool {
        let t = self.approx;
        if (fx - t).abs() > 1e-12 * fx.abs().max(t.abs()) {
            return fx < t;
        }
        x().compare(&self.exact) == Some(Ordering::Less)
    }
}

struct Lattice {
    step_a: PiQuadratic,
    step_b: PiQuadratic,
    fa: f64,
    fb: f64,
    first: u64,
}

impl Lattice {
    fn new(a: &Side, b: &Side, bc: Bc) -> Self {
        let (step_a, step_b) = (axis_step(a), axis_step(b));
        Lattice {
            fa: step_a.to_f64(),
            fb: step_b.to_f64(),
            step_a,
            step_b,
            first: match bc {
                Bc::Dirichlet => 1,
                Bc::Neumann => 0,
            },
        }
    }

    fn exact(&self, q: u64, r: u64) -> PiQuadratic {
        let q2 = BigRational::from_integer(BigInt::from(q) * q);
        let r2 = BigRational::from_integer(BigInt::from(r) * r);
        &self.step_a.scale(&q2) + &self.step_b.scale(&r2)
    }

    fn approx(&self, q: u64, r: u64) -> f64 {
        (q * q) as f64 * self.fa + (r * r) as f64 * self.fb
    }

    /// Whether `value(q, r) < level`, exactly.
    fn below(&self, q: u64, r: u64, level: &Level) -> bool {
        level.above(self.approx(q, r), || self.exact(q, r))
    }

    /// Number of `r >= first` with `value(q, r) < lambda`.
    fn row_count(&self, q: u64, lambda: &Level) -> u64 {
        let rest = (lambda.approx - (q * q) as f64 * self.fa) / self.fb;
        let mut r = if rest > 0.0 {
            rest.sqrt().floor() as u64
        } else {
            0
        };
        // The float estimate is off by at most one in either direction; settle exactly.
        while r > 0 && !self.below(q, r, lambda) {
            r -= 1;
        }
        while self.below(q, r + 1, lambda) {
            r += 1;
        }
        if r == 0 && !(self.first == 0 && self.below(q, 0, lambda)) {
            return 0;
        }
        r + 1 - self.first
    }

    /// Number of rows `q >= first` that contain at least one point below `lambda`.
    fn rows(&self, lambda: &Level) -> u64 {
        let mut q = (lambda.approx / self.fa).max(0.0).sqrt().floor() as u64;
        let r0 = self.first;
        while q > 0 && !self.below(q, r0, lambda) {
            q -= 1;
        }
        while self.below(q + 1, r0, lambda) {
            q += 1;
        }
        if q < self.first || !self.below(q, r0, lambda) {
            return 0;
        }
        q + 1 - self.first
    }
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

pub(super) fn below(
    a: &Side,
    b: &Side,
    bc: Bc,
    lambda: f64,
    limits: &SpectrumLimits,
) -> Result<Vec<Eigenvalue>> {
    let lat = Lattice::new(a, b, bc);
    let level = Level::from_f64(lambda)?;
    let lambda = &level;
    let rows = lat.rows(lambda);
    let mut counts = Vec::with_capacity(rows as usize);
    let mut total = 0u64;
    for i in 0..rows {
        let c = lat.row_count(lat.first + i, lambda);
        total += c + 1;
        if total > limits.max_points {
            return Err(Error::ResourceLimit(format!(
                "rectangle enumeration below {} scans more than {} lattice points",
                lambda.approx, limits.max_points
            )));
        }
        counts.push(c);
    }
    let mut out = Vec::with_capacity(total as usize);
    for (i, &c) in counts.iter().enumerate() {
        let q = lat.first + i as u64;
        for r in lat.first..lat.first + c {
            let exact = lat.exact(q, r);
            out.push(Eigenvalue {
                value: exact.to_f64(),
                mode: ModeDescriptor::Lattice { q, r },
                bc,
                exact: Some(exact),
            });
        }
    }
    rank(&mut out);
    Ok(out)
}

/// The first `count` eigenvalues of the `a x b` rectangle.
pub fn rectangle_spectrum(a: &Side, b: &Side, bc: Bc, count: usize) -> Result<Spectrum> {
    super::spectrum(&DomainSpec::rectangle(a.clone(), b.clone()), bc, count)
}

/// `#{k : lambda_k < lambda}`, exact.
pub fn rectangle_counting(a: &Side, b: &Side, bc: Bc, lambda: f64) -> Result<u64> {
    check_lambda(lambda)?;
    Ok(count(a, b, bc, &Level::from_f64(lambda)?))
}

/// The same count at an exact threshold `R + S pi^2`.
pub fn rectangle_counting_exact(a: &Side, b: &Side, bc: Bc, lambda: &PiQuadratic) -> Result<u64> {
    if lambda.signum_exact() == Some(Ordering::Less) {
        return Err(Error::invalid(format!("lambda must be >= 0, got {lambda}")));
    }
    Ok(count(a, b, bc, &Level::from_exact(lambda)))
}

fn count(a: &Side, b: &Side, bc: Bc, level: &Level) -> u64 {
    let lat = Lattice::new(a, b, bc);
    (0..lat.rows(level))
        .map(|i| lat.row_count(lat.first + i, level))
        .sum()
}

/// `1 + #{q >= 1 : pi^2 q^2/a^2 < lambda} + #{r >= 1 : pi^2 r^2/b^2 < lambda}`,
/// the floor form `1 + floor(a sqrt(lambda)/pi) + floor(b sqrt(lambda)/pi)` read
/// with the same strict inequality as the counting functions. Checked against
/// `N_N(lambda) - N_D(lambda)`; a mismatch is an error.
pub fn rectangle_gap_identity(a: &Side, b: &Side, lambda: f64) -> Result<u64> {
    check_lambda(lambda)?;
    if lambda == 0.0 {
        return Err(Error::invalid("the gap identity needs lambda > 0"));
    }
    let level = Level::from_f64(lambda)?;
    let lat = Lattice::new(a, b, Bc::Dirichlet);
    let identity =
        1 + lat.on_axis(&lat.step_a, lat.fa, &level) + lat.on_axis(&lat.step_b, lat.fb, &level);
    let difference = count(a, b, Bc::Neumann, &level) - count(a, b, Bc::Dirichlet, &level);
    if identity != difference {
        return Err(Error::IdentityViolation {
            lambda,
            identity,
            difference,
        });
    }
    Ok(identity)
}

impl Lattice {
    /// `#{m >= 1 : m^2 step < level}` along one axis.
    fn on_axis(&self, step: &PiQuadratic, f: f64, level: &Level) -> u64 {
        let lt = |m: u64| {
            level.above((m * m) as f64 * f, || {
                step.scale(&BigRational::from_integer(BigInt::from(m) * m))
            })
        };
        let mut m = (level.approx / f).sqrt().floor() as u64;
        while m > 0 && !lt(m) {
            m -= 1;
        }
        while lt(m + 1) {
            m += 1;
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;

    fn side(s: &str) -> Side {
        s.parse().unwrap()
    }

    fn brute(a: f64, b: f64, bc: Bc, lambda: f64, n: u64) -> u64 {
        let first = if bc == Bc::Dirichlet { 1 } else { 0 };
        let mut c = 0;
        for q in first..=n {
            for r in first..=n {
                if PI * PI * ((q * q) as f64 / (a * a) + (r * r) as f64 / (b * b)) < lambda {
                    c += 1;
                }
            }
        }
        c
    }

    #[test]
    fn square_ground_state_is_strict() {
        let one = side("1");
        let l = 2.0 * PI * PI;
        let exact = PiQuadratic::new(BigRational::zero(), BigRational::from_integer(2.into()));
        assert_eq!(
            rectangle_counting_exact(&one, &one, Bc::Dirichlet, &exact).unwrap(),
            0
        );
        assert_eq!(
            rectangle_counting(&one, &one, Bc::Dirichlet, l * (1.0 + 1e-15)).unwrap(),
            1
        );
        assert_eq!(
            rectangle_counting(&one, &one, Bc::Neumann, 1e-9).unwrap(),
            1
        );
        assert_eq!(rectangle_counting(&one, &one, Bc::Neumann, 0.0).unwrap(), 0);
    }

    #[test]
    fn gap_identity_small_cases() {
        let one = side("1");
        assert_eq!(rectangle_gap_identity(&one, &one, 10.0).unwrap(), 3);
        assert_eq!(rectangle_gap_identity(&one, &one, 1e-6).unwrap(), 1);
        let (a, b) = (side("2"), side("3"));
        let want =
            brute(2.0, 3.0, Bc::Neumann, 50.0, 20) - brute(2.0, 3.0, Bc::Dirichlet, 50.0, 20);
        assert_eq!(rectangle_gap_identity(&a, &b, 50.0).unwrap(), want);
    }

    #[test]
    fn counting_matches_brute_force() {
        for (sa, sb, fa, fb) in [
            ("1", "1", 1.0, 1.0),
            ("3/2", "sqrt(2)", 1.5, 2f64.sqrt()),
            ("9pi/4", "1", 9.0 * PI / 4.0, 1.0),
        ] {
            for &lambda in &[0.5, 10.0, 37.3, 120.0] {
                for bc in [Bc::Dirichlet, Bc::Neumann] {
                    let got = rectangle_counting(&side(sa), &side(sb), bc, lambda).unwrap();
                    assert_eq!(
                        got,
                        brute(fa, fb, bc, lambda, 40),
                        "{sa} x {sb}, {bc}, {lambda}"
                    );
                }
            }
        }
    }

    #[test]
    fn spectrum_ties_are_exact() {
        let one = side("1");
        let s = rectangle_spectrum(&one, &one, Bc::Dirichlet, 3).unwrap();
        assert_eq!(s.entries[1].mode, ModeDescriptor::Lattice { q: 1, r: 2 });
        assert_eq!(s.entries[2].mode, ModeDescriptor::Lattice { q: 2, r: 1 });
        let (x, y) = (
            s.entries[1].exact.as_ref().unwrap(),
            s.entries[2].exact.as_ref().unwrap(),
        );
        assert_eq!(x.compare(y), Some(Ordering::Equal));
    }
}
