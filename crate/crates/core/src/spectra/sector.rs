//! Annular sectors `r_in < r < r_out, 0 < theta < angle`.
//!
//! Separating variables gives angular factors `sin`/`cos(k pi theta / angle)`,
//! so the radial order is `nu = k pi / angle`, and radial modes are annulus
//! cross-product roots for the ratio `r_out / r_in`.

use rayon::prelude::*;

use super::{
    rank, Bc, DomainSpec, Eigenvalue, ModeDescriptor, SectorAngle, Spectrum, SpectrumLimits,
};
use crate::error::{Error, Result};
use crate::special::{annulus_cross_zeros_below, BesselOrder, CrossKind};

fn order(angle: SectorAngle, k: u64) -> Result<BesselOrder> {
    let (num, den) = angle.over_pi();
    BesselOrder::new(k * den, num)
}

pub(super) fn below(
    r_in: f64,
    r_out: f64,
    angle: SectorAngle,
    bc: Bc,
    lambda: f64,
    limits: &SpectrumLimits,
) -> Result<Vec<Eigenvalue>> {
    let rho = r_out / r_in;
    let xmax = lambda.sqrt() * r_in;
    let (kind, first) = match bc {
        Bc::Dirichlet => (CrossKind::Dirichlet, 1),
        Bc::Neumann => (CrossKind::Neumann, 0),
    };
    // every root of order nu exceeds nu / rho
    let mut last = first;
    while order(angle, last)?.value() / rho < xmax {
        last += 1;
    }
    let per_order: Vec<(u64, Vec<f64>)> = (first..last)
        .into_par_iter()
        .map(|k| {
            Ok((
                k,
                annulus_cross_zeros_below(order(angle, k)?, rho, kind, xmax)?,
            ))
        })
        .collect::<Result<_>>()?;
    let total: u64 = per_order.iter().map(|(_, r)| r.len() as u64).sum();
    if total > limits.max_points {
        return Err(Error::ResourceLimit(format!(
            "{total} sector eigenvalues below {lambda} exceed the limit of {}",
            limits.max_points
        )));
    }
    let scale = 1.0 / (r_in * r_in);
    let mut out = Vec::with_capacity(total as usize + 1);
    if bc == Bc::Neumann && lambda > 0.0 {
        out.push(Eigenvalue {
            value: 0.0,
            mode: ModeDescriptor::Radial {
                l: 0,
                radial_index: 1,
                copy: 0,
            },
            bc,
            exact: None,
        });
    }
    for (k, roots) in per_order {
        // the constant mode takes radial index 1 for k = 0
        let offset = if bc == Bc::Neumann && k == 0 { 2 } else { 1 };
        for (i, x) in roots.iter().enumerate() {
            out.push(Eigenvalue {
                value: x * x * scale,
                mode: ModeDescriptor::Radial {
                    l: k,
                    radial_index: i as u64 + offset,
                    copy: 0,
                },
                bc,
                exact: None,
            });
        }
    }
    rank(&mut out);
    Ok(out)
}

/// First `count` eigenvalues of `{1 < r < 2, 0 < theta < 3pi/2}`.
pub fn sector_spectrum(bc: Bc, count: usize) -> Result<Spectrum> {
    super::spectrum(&DomainSpec::reference_sector(), bc, count)
}

pub fn annular_sector_spectrum(
    r_in: f64,
    r_out: f64,
    angle: SectorAngle,
    bc: Bc,
    count: usize,
) -> Result<Spectrum> {
    super::spectrum(&DomainSpec::annular_sector(r_in, r_out, angle)?, bc, count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        let d = sector_spectrum(Bc::Dirichlet, 1).unwrap();
        assert!((d.value(1).unwrap() - 9.96001).abs() < 5e-5);
        let n = sector_spectrum(Bc::Neumann, 10).unwrap();
        let want = [
            0.0, 0.204718, 0.811126, 1.79721, 3.13054, 4.77455, 6.69575, 8.86914, 10.2181, 10.4649,
        ];
        for (k, w) in want.iter().enumerate() {
            let got = n.value(k + 1).unwrap();
            assert!((got - w).abs() < 5e-5, "mu_{} = {got}, want {w}", k + 1);
        }
    }

    #[test]
    fn half_disk_like_angle_has_integer_orders() {
        // angle pi: nu = k
        let s =
            annular_sector_spectrum(1.0, 3.0, SectorAngle::new(1, 1).unwrap(), Bc::Dirichlet, 6)
                .unwrap();
        for e in &s.entries {
            assert!(e.value > 0.0);
        }
        let first = s.value(1).unwrap().sqrt();
        let want = crate::special::annulus_cross_zero(
            BesselOrder::integer(1),
            3.0,
            1,
            CrossKind::Dirichlet,
        )
        .unwrap();
        assert!((first - want).abs() < 1e-12);
    }

    #[test]
    fn scaling_by_inner_radius() {
        let angle = SectorAngle::new(3, 2).unwrap();
        let unit = annular_sector_spectrum(1.0, 2.0, angle, Bc::Neumann, 20).unwrap();
        let big = annular_sector_spectrum(3.0, 6.0, angle, Bc::Neumann, 20).unwrap();
        for (u, b) in unit.entries.iter().zip(&big.entries) {
            assert!((b.value - u.value / 9.0).abs() <= 1e-12 * b.value.max(1e-300));
            assert_eq!(u.mode, b.mode);
        }
    }
}
