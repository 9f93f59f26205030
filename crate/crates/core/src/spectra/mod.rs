//! Dirichlet and Neumann spectra of rectangles, disks, balls and annular sectors.

mod domain;
mod radial;
mod rectangle;
mod sector;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use domain::{DomainSpec, SectorAngle};
pub use radial::{ball_spectrum, disk_spectrum, harmonic_multiplicity};
pub use rectangle::{
    rectangle_counting, rectangle_counting_exact, rectangle_gap_identity, rectangle_spectrum,
};
pub use sector::{annular_sector_spectrum, sector_spectrum};

use crate::error::{Error, Result};
use crate::exact::PiQuadratic;
use crate::weyl::weyl_coefficients;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bc {
    Dirichlet,
    Neumann,
}

impl Bc {
    pub fn as_str(&self) -> &'static str {
        match self {
            Bc::Dirichlet => "dirichlet",
            Bc::Neumann => "neumann",
        }
    }
}

impl fmt::Display for Bc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Bc {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "d" | "dirichlet" => Ok(Bc::Dirichlet),
            "n" | "neumann" => Ok(Bc::Neumann),
            _ => Err(Error::invalid(format!(
                "boundary condition must be d or n, got {s:?}"
            ))),
        }
    }
}

/// Quantum numbers of an eigenfunction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ModeDescriptor {
    /// `sin`/`cos(q pi x / a) sin`/`cos(r pi y / b)`.
    Lattice { q: u64, r: u64 },
    /// Angular order `l`, `radial_index`-th radial root, and which of the
    /// degenerate angular functions of order `l` this is.
    Radial {
        l: u64,
        radial_index: u64,
        copy: u64,
    },
}

impl ModeDescriptor {
    pub fn kind(&self) -> &'static str {
        match self {
            ModeDescriptor::Lattice { .. } => "lattice",
            ModeDescriptor::Radial { .. } => "radial",
        }
    }

    /// `(q, r, 0)` or `(l, radial_index, copy)`.
    pub fn fields(&self) -> (u64, u64, u64) {
        match *self {
            ModeDescriptor::Lattice { q, r } => (q, r, 0),
            ModeDescriptor::Radial {
                l,
                radial_index,
                copy,
            } => (l, radial_index, copy),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Eigenvalue {
    pub value: f64,
    pub mode: ModeDescriptor,
    pub bc: Bc,
    /// Exact value, present for rectangles.
    pub exact: Option<PiQuadratic>,
}

impl Eigenvalue {
    /// Order used in every spectrum: value (exactly when both are exact),
    /// then quantum numbers.
    pub(crate) fn rank_cmp(&self, other: &Eigenvalue) -> Ordering {
        let by_value = match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => a
                .compare(b)
                .unwrap_or_else(|| self.value.total_cmp(&other.value)),
            _ => self.value.total_cmp(&other.value),
        };
        by_value.then_with(|| self.mode.fields().cmp(&other.mode.fields()))
    }
}

/// Relative tolerance under which two transcendental eigenvalues are reported
/// as numerically tied.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// Rank-ordered eigenvalues; `entries[..guaranteed_count]` is complete.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub domain: DomainSpec,
    pub bc: Bc,
    pub entries: Vec<Eigenvalue>,
    pub guaranteed_count: usize,
    /// Every eigenvalue strictly below this is in `entries`.
    pub cutoff: f64,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The `k`-th eigenvalue, 1-based.
    pub fn get(&self, k: usize) -> Option<&Eigenvalue> {
        (k >= 1).then(|| self.entries.get(k - 1)).flatten()
    }

    pub fn value(&self, k: usize) -> Option<f64> {
        self.get(k).map(|e| e.value)
    }

    pub fn values(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.value).collect()
    }

    /// `#{k : value_k < lambda}`; an error unless `lambda <= cutoff`.
    pub fn count_below(&self, lambda: f64) -> Result<usize> {
        if lambda > self.cutoff {
            return Err(self.beyond(lambda));
        }
        Ok(self.entries.partition_point(|e| e.value < lambda))
    }

    /// `#{k : value_k <= lambda}`; an error unless `lambda < cutoff`.
    pub fn count_at_most(&self, lambda: f64) -> Result<usize> {
        if lambda >= self.cutoff {
            return Err(self.beyond(lambda));
        }
        Ok(self.entries.partition_point(|e| e.value <= lambda))
    }

    fn beyond(&self, lambda: f64) -> Error {
        Error::Incomplete(format!(
            "count at {lambda} needs eigenvalues beyond the complete range (below {})",
            self.cutoff
        ))
    }

    /// The spectrum after scaling every length by `factor`.
    pub fn rescaled(&self, factor: f64, domain: DomainSpec) -> Spectrum {
        let s = 1.0 / (factor * factor);
        Spectrum {
            domain,
            bc: self.bc,
            entries: self
                .entries
                .iter()
                .map(|e| Eigenvalue {
                    value: e.value * s,
                    exact: None,
                    ..e.clone()
                })
                .collect(),
            guaranteed_count: self.guaranteed_count,
            cutoff: self.cutoff * s,
        }
    }
}

/// Work limits for spectrum generation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpectrumLimits {
    /// Maximum lattice points scanned, or eigenvalues (with multiplicity)
    /// produced, for one enumeration.
    pub max_points: u64,
}

impl Default for SpectrumLimits {
    fn default() -> Self {
        Self {
            max_points: 10_000_000,
        }
    }
}

/// All eigenvalues strictly below `lambda`, ranked.
pub fn spectrum_below(domain: &DomainSpec, bc: Bc, lambda: f64) -> Result<Spectrum> {
    spectrum_below_with(domain, bc, lambda, &SpectrumLimits::default())
}

pub fn spectrum_below_with(
    domain: &DomainSpec,
    bc: Bc,
    lambda: f64,
    limits: &SpectrumLimits,
) -> Result<Spectrum> {
    domain.validate()?;
    if !lambda.is_finite() || lambda < 0.0 {
        return Err(Error::invalid(format!(
            "cutoff must be finite and >= 0, got {lambda}"
        )));
    }
    let entries = match domain {
        DomainSpec::Rectangle { a, b } => rectangle::below(a, b, bc, lambda, limits)?,
        DomainSpec::Disk { radius } => radial::below(2, *radius, bc, lambda, limits)?,
        DomainSpec::Ball { dim, radius } => radial::below(*dim, *radius, bc, lambda, limits)?,
        DomainSpec::AnnularSector { r_in, r_out, angle } => {
            sector::below(*r_in, *r_out, *angle, bc, lambda, limits)?
        }
    };
    Ok(Spectrum {
        domain: domain.clone(),
        bc,
        guaranteed_count: entries.len(),
        entries,
        cutoff: lambda,
    })
}

/// The first `count` eigenvalues, ranked.
pub fn spectrum(domain: &DomainSpec, bc: Bc, count: usize) -> Result<Spectrum> {
    spectrum_with(domain, bc, count, &SpectrumLimits::default())
}

/// The cutoff starts from the one-term Weyl estimate `c0 (1.5 count)^(2/n)`
/// and grows until at least `count` eigenvalues lie safely below it.
pub fn spectrum_with(
    domain: &DomainSpec,
    bc: Bc,
    count: usize,
    limits: &SpectrumLimits,
) -> Result<Spectrum> {
    if count == 0 {
        return Err(Error::invalid("spectrum count must be >= 1"));
    }
    if count as u64 > limits.max_points {
        return Err(Error::ResourceLimit(format!(
            "{count} eigenvalues requested, limit is {}",
            limits.max_points
        )));
    }
    domain.validate()?;
    let n = domain.dimension() as f64;
    let c0 = weyl_coefficients(domain).c0;
    let mut cutoff = c0 * (1.5 * count as f64).powf(2.0 / n);
    loop {
        let mut s = spectrum_below_with(domain, bc, cutoff, limits)?;
        if s.len() >= count && s.entries[count - 1].value < cutoff * (1.0 - 1e-9) {
            s.entries.truncate(count);
            s.guaranteed_count = count;
            s.cutoff = s.entries[count - 1].value;
            return Ok(s);
        }
        cutoff *= 1.5;
    }
}

/// Ranks `entries` in place.
pub(crate) fn rank(entries: &mut [Eigenvalue]) {
    entries.sort_by(|a, b| a.rank_cmp(b));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bc_parsing() {
        assert_eq!("d".parse::<Bc>().unwrap(), Bc::Dirichlet);
        assert_eq!("Neumann".parse::<Bc>().unwrap(), Bc::Neumann);
        assert!("robin".parse::<Bc>().is_err());
    }

    #[test]
    fn counts_respect_strictness() {
        let s = spectrum(&DomainSpec::unit_disk(), Bc::Dirichlet, 5).unwrap();
        let l1 = s.value(1).unwrap();
        assert_eq!(s.count_below(l1).unwrap(), 0);
        assert_eq!(s.count_at_most(l1).unwrap(), 1);
        assert!(s.count_below(s.value(5).unwrap()).is_ok());
        assert!(s.count_at_most(s.value(5).unwrap()).is_err());
    }

    #[test]
    fn rejects_zero_count_and_resource_excess() {
        assert!(spectrum(&DomainSpec::unit_disk(), Bc::Dirichlet, 0).is_err());
        let tight = SpectrumLimits { max_points: 100 };
        let err = spectrum_with(&DomainSpec::unit_square(), Bc::Neumann, 1000, &tight).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit(_)));
    }
}
