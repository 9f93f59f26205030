//! Disk and ball spectra from Bessel zeros, one angular order at a time.

use rayon::prelude::*;

use super::{rank, Bc, DomainSpec, Eigenvalue, ModeDescriptor, Spectrum, SpectrumLimits};
use crate::error::{Error, Result};
use crate::special::{ball_neumann_radial_roots_below, bessel_j_zeros_below, BesselOrder};

fn binomial(n: u64, k: u64) -> Option<u128> {
    let k = k.min(n.checked_sub(k)?);
    let mut c: u128 = 1;
    for i in 0..k {
        c = c.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(c)
}

/// Dimension of the spherical harmonics of degree `l` in `dim` variables,
/// `C(dim + l - 1, l) - C(dim + l - 3, l - 2)`.
pub fn harmonic_multiplicity(dim: u32, l: u64) -> Result<u64> {
    if dim < 2 {
        return Err(Error::invalid(format!("dimension must be >= 2, got {dim}")));
    }
    let d = dim as u64;
    let overflow = || {
        Error::ResourceLimit(format!(
            "multiplicity of degree {l} in dimension {dim} overflows"
        ))
    };
    let total = binomial(d + l - 1, l).ok_or_else(overflow)?;
    let lower = if l >= 2 {
        binomial(d + l - 3, l - 2).ok_or_else(overflow)?
    } else {
        0
    };
    u64::try_from(total - lower).map_err(|_| overflow())
}

/// Radial roots (unit radius) of order `l` below `xmax`.
fn radial_roots(dim: u32, l: u64, bc: Bc, xmax: f64) -> Result<Vec<f64>> {
    match bc {
        Bc::Dirichlet => {
            let order = BesselOrder::half_integer(2 * l + dim as u64 - 2);
            bessel_j_zeros_below(order, xmax)
        }
        Bc::Neumann => ball_neumann_radial_roots_below(dim, l as u32, xmax),
    }
}

/// Largest angular order that can contribute below `x^2`: for Dirichlet
/// `j_{nu,1} > nu`, for Neumann the first root exceeds `sqrt(l (l + dim - 2))`.
fn max_order(dim: u32, bc: Bc, x: f64) -> u64 {
    let s = (dim as f64 - 2.0) / 2.0;
    let mut l = 0u64;
    let admits = |l: u64| {
        let lf = l as f64;
        match bc {
            Bc::Dirichlet => lf + s < x,
            Bc::Neumann => lf * (lf + dim as f64 - 2.0) < x * x,
        }
    };
    if !admits(0) {
        return 0;
    }
    while admits(l + 1) {
        l += 1;
    }
    l + 1
}

pub(super) fn below(
    dim: u32,
    radius: f64,
    bc: Bc,
    lambda: f64,
    limits: &SpectrumLimits,
) -> Result<Vec<Eigenvalue>> {
    let xmax = lambda.sqrt() * radius;
    let orders = max_order(dim, bc, xmax);
    let per_order: Vec<(u64, Vec<f64>, u64)> = (0..orders)
        .into_par_iter()
        .map(|l| {
            Ok((
                l,
                radial_roots(dim, l, bc, xmax)?,
                harmonic_multiplicity(dim, l)?,
            ))
        })
        .collect::<Result<_>>()?;
    let total: u64 = per_order.iter().map(|(_, r, m)| r.len() as u64 * m).sum();
    if total > limits.max_points {
        return Err(Error::ResourceLimit(format!(
            "{total} eigenvalues below {lambda} exceed the limit of {}",
            limits.max_points
        )));
    }
    let scale = 1.0 / (radius * radius);
    let mut out = Vec::with_capacity(total as usize);
    for (l, roots, mult) in per_order {
        for (i, x) in roots.iter().enumerate() {
            let value = x * x * scale;
            for copy in 0..mult {
                out.push(Eigenvalue {
                    value,
                    mode: ModeDescriptor::Radial {
                        l,
                        radial_index: i as u64 + 1,
                        copy,
                    },
                    bc,
                    exact: None,
                });
            }
        }
    }
    rank(&mut out);
    Ok(out)
}

/// First `count` eigenvalues of the unit disk.
pub fn disk_spectrum(bc: Bc, count: usize) -> Result<Spectrum> {
    super::spectrum(&DomainSpec::unit_disk(), bc, count)
}

/// First `count` eigenvalues of the unit ball in `dim` dimensions.
pub fn ball_spectrum(dim: u32, bc: Bc, count: usize) -> Result<Spectrum> {
    if dim == 2 {
        return disk_spectrum(bc, count);
    }
    super::spectrum(&DomainSpec::ball(dim, 1.0)?, bc, count)
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    #[test]
    fn multiplicities() {
        assert_eq!(harmonic_multiplicity(2, 0).unwrap(), 1);
        assert_eq!(harmonic_multiplicity(2, 5).unwrap(), 2);
        for l in 0..20 {
            assert_eq!(harmonic_multiplicity(3, l).unwrap(), 2 * l + 1);
        }
        assert_eq!(harmonic_multiplicity(4, 3).unwrap(), 16);
        assert_eq!(harmonic_multiplicity(8, 0).unwrap(), 1);
        assert_eq!(harmonic_multiplicity(8, 1).unwrap(), 8);
    }

    #[test]
    fn disk_leading_values() {
        let d = disk_spectrum(Bc::Dirichlet, 5).unwrap();
        assert!((d.value(1).unwrap() - 2.40482555769577289f64.powi(2)).abs() < 1e-11);
        assert!((d.value(5).unwrap().sqrt() - 5.1356223018406828).abs() < 1e-11);
        assert_eq!(
            d.entries[1].mode,
            ModeDescriptor::Radial {
                l: 1,
                radial_index: 1,
                copy: 0
            }
        );
        assert_eq!(
            d.entries[2].mode,
            ModeDescriptor::Radial {
                l: 1,
                radial_index: 1,
                copy: 1
            }
        );
        let n = disk_spectrum(Bc::Neumann, 9).unwrap();
        assert_eq!(n.value(1).unwrap(), 0.0);
        assert!((n.value(9).unwrap().sqrt() - 5.31755312608399411).abs() < 1e-11);
    }

    #[test]
    fn three_ball_ground_state_is_pi_squared() {
        let b = ball_spectrum(3, Bc::Dirichlet, 4).unwrap();
        assert!((b.value(1).unwrap() - std::f64::consts::PI.powi(2)).abs() < 1e-11);
        // l = 1 is threefold
        assert_eq!(b.value(2), b.value(4));
    }

    #[test]
    fn scaling_law() {
        let unit = super::super::spectrum(&DomainSpec::unit_disk(), Bc::Neumann, 40).unwrap();
        let big = super::super::spectrum(&DomainSpec::disk(2.5).unwrap(), Bc::Neumann, 40).unwrap();
        for (u, b) in unit.entries.iter().zip(&big.entries) {
            let want = u.value / 6.25;
            assert!((b.value - want).abs() <= 1e-12 * want.max(1e-300));
        }
        let scaled = unit.rescaled(2.5, DomainSpec::disk(2.5).unwrap());
        assert_eq!(scaled.values(), big.values());
    }
}
