//! Checks of `lambda_k >= mu_{k + p(k)}` over ranges of `k`, coefficient
//! scans, and the concrete claims about the model domains.

mod claims;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use claims::{
    disk_sandwich, golden_claims, rectangle_claim_check, sector_claim_check, Claim, ClaimOptions,
    RectangleClaim, SandwichRow, SectorClaim, TableCheck,
};

use crate::error::{Error, Result};
use crate::exact::Side;
use crate::spectra::{
    spectrum_below_with, spectrum_with, Bc, DomainSpec, Eigenvalue, SpectrumLimits, TIE_TOLERANCE,
};
use crate::weyl::GapSequence;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Tie,
    /// Exact comparison could not separate the values.
    Indeterminate,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Tie => "tie",
            Verdict::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub k: u64,
    pub lambda_k: f64,
    pub mu_index: u64,
    pub mu_value: f64,
    /// `lambda_k - mu_index`.
    pub margin: f64,
    pub verdict: Verdict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KRange {
    pub start: u64,
    pub end: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub domain: DomainSpec,
    pub sequence: GapSequence,
    pub k_range: KRange,
    pub tie_tolerance: f64,
    pub records: Vec<Record>,
    /// Ascending.
    pub violations: Vec<u64>,
    /// `1 + max(violations)`, or 1. Empirical, limited to `k_range`.
    pub empirical_k_star: u64,
}

impl VerificationReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn ties(&self) -> Vec<u64> {
        self.records
            .iter()
            .filter(|r| r.verdict == Verdict::Tie)
            .map(|r| r.k)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    /// Relative tolerance for tie verdicts on transcendental spectra.
    pub tie_tolerance: f64,
    pub limits: SpectrumLimits,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            tie_tolerance: TIE_TOLERANCE,
            limits: SpectrumLimits::default(),
        }
    }
}

impl VerifyOptions {
    fn validate(&self) -> Result<()> {
        if self.tie_tolerance.is_finite() && self.tie_tolerance > 0.0 {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "tie tolerance must be > 0, got {}",
                self.tie_tolerance
            )))
        }
    }
}

/// Compares one Dirichlet and one Neumann eigenvalue: exactly when both are
/// exact, else with a relative tolerance.
pub fn judge(lambda: &Eigenvalue, mu: &Eigenvalue, tolerance: f64) -> Verdict {
    if let (Some(a), Some(b)) = (&lambda.exact, &mu.exact) {
        return match a.compare(b) {
            Some(Ordering::Greater) => Verdict::Holds,
            Some(Ordering::Equal) => Verdict::Tie,
            Some(Ordering::Less) => Verdict::Fails,
            None => Verdict::Indeterminate,
        };
    }
    let margin = lambda.value - mu.value;
    if margin.abs() <= tolerance * lambda.value.abs().max(mu.value.abs()) {
        Verdict::Tie
    } else if margin > 0.0 {
        Verdict::Holds
    } else {
        Verdict::Fails
    }
}

fn check_kmax(kmax: u64) -> Result<()> {
    if kmax == 0 {
        return Err(Error::invalid("kmax must be >= 1"));
    }
    Ok(())
}

pub fn verify_gap(
    domain: &DomainSpec,
    sequence: &GapSequence,
    kmax: u64,
) -> Result<VerificationReport> {
    verify_gap_with(domain, sequence, kmax, &VerifyOptions::default())
}

pub fn verify_gap_with(
    domain: &DomainSpec,
    sequence: &GapSequence,
    kmax: u64,
    options: &VerifyOptions,
) -> Result<VerificationReport> {
    check_kmax(kmax)?;
    options.validate()?;
    sequence.validate()?;
    let gaps: Vec<u64> = (1..=kmax)
        .into_par_iter()
        .map(|k| sequence.evaluate(k))
        .collect::<Result<_>>()?;
    let need = (1..=kmax)
        .zip(&gaps)
        .map(|(k, p)| k + p)
        .max()
        .expect("kmax >= 1");
    let dirichlet = spectrum_with(domain, Bc::Dirichlet, kmax as usize, &options.limits)?;
    let neumann = spectrum_with(domain, Bc::Neumann, need as usize, &options.limits)?;
    let records: Vec<Record> = (1..=kmax)
        .zip(&gaps)
        .map(|(k, &p)| {
            let l = dirichlet.get(k as usize).expect("complete to kmax");
            let m = neumann
                .get((k + p) as usize)
                .expect("complete to max k + p");
            Record {
                k,
                lambda_k: l.value,
                mu_index: k + p,
                mu_value: m.value,
                margin: l.value - m.value,
                verdict: judge(l, m, options.tie_tolerance),
            }
        })
        .collect();
    let violations: Vec<u64> = records
        .iter()
        .filter(|r| r.verdict == Verdict::Fails)
        .map(|r| r.k)
        .collect();
    Ok(VerificationReport {
        domain: domain.clone(),
        sequence: sequence.clone(),
        k_range: KRange {
            start: 1,
            end: kmax,
        },
        tie_tolerance: options.tie_tolerance,
        empirical_k_star: violations.last().map_or(1, |k| k + 1),
        violations,
        records,
    })
}

/// The single-band and multi-band disk sequences on the unit disk.
pub fn verify_disk_theorems(kmax: u64) -> Result<(VerificationReport, VerificationReport)> {
    let disk = DomainSpec::unit_disk();
    Ok((
        verify_gap(&disk, &GapSequence::DiskBand33, kmax)?,
        verify_gap(&disk, &GapSequence::DiskBand34, kmax)?,
    ))
}

/// `(k, lambda_k - mu_{k + floor(c sqrt(k))})` on the unit disk; `None`
/// means `c = 0`.
pub fn figure_difference_data(c: Option<&Side>, kmax: u64) -> Result<Vec<(u64, f64)>> {
    let seq = match c {
        Some(c) => GapSequence::constant_sqrt(c.clone()),
        None => GapSequence::FixedOffset { m: 0 },
    };
    let r = verify_gap(&DomainSpec::unit_disk(), &seq, kmax)?;
    Ok(r.records.iter().map(|x| (x.k, x.margin)).collect())
}

/// Result of the exact scan over `C -> floor(C sqrt(k))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientScan {
    pub kmax: u64,
    /// `min_k (pmax(k) + 1) / sqrt(k)`: every `C` below it gives no violation
    /// for `k <= kmax`, and `C` equal to it gives one at `limiting_k`.
    pub supremum: f64,
    pub limiting_k: u64,
    pub resolution: f64,
    /// Largest multiple of `resolution` strictly below `supremum`.
    pub grid_value: f64,
}

/// `C` admits no violation iff `floor(C sqrt(k)) <= pmax(k)` for every `k`,
/// where `pmax(k)` is the largest `p` with `lambda_k >= mu_{k+p}`, i.e. iff
/// `C < (pmax(k) + 1) / sqrt(k)`. So the breakpoints are enumerated exactly.
pub fn min_coefficient_scan(
    domain: &DomainSpec,
    kmax: u64,
    resolution: f64,
) -> Result<CoefficientScan> {
    min_coefficient_scan_with(domain, kmax, resolution, &VerifyOptions::default())
}

pub fn min_coefficient_scan_with(
    domain: &DomainSpec,
    kmax: u64,
    resolution: f64,
    options: &VerifyOptions,
) -> Result<CoefficientScan> {
    check_kmax(kmax)?;
    options.validate()?;
    if !(resolution.is_finite() && resolution > 0.0) {
        return Err(Error::invalid(format!(
            "resolution must be > 0, got {resolution}"
        )));
    }
    let dirichlet = spectrum_with(domain, Bc::Dirichlet, kmax as usize, &options.limits)?;
    let top = dirichlet.entries.last().expect("kmax >= 1").value;
    // every mu at or beyond this fails against every lambda_k, k <= kmax
    let mut cutoff = top * 1.1 + 1.0;
    let neumann = loop {
        let n = spectrum_below_with(domain, Bc::Neumann, cutoff, &options.limits)?;
        if n.entries.last().is_some_and(|m| {
            judge(
                dirichlet.entries.last().expect("kmax >= 1"),
                m,
                options.tie_tolerance,
            ) == Verdict::Fails
        }) {
            break n;
        }
        cutoff *= 1.5;
    };
    let mut best = (f64::INFINITY, 0);
    for (i, l) in dirichlet.entries.iter().enumerate() {
        let k = i as u64 + 1;
        let admitted = neumann
            .entries
            .partition_point(|m| judge(l, m, options.tie_tolerance) != Verdict::Fails)
            as u64;
        let pmax = admitted.saturating_sub(k);
        let bound = (pmax + 1) as f64 / (k as f64).sqrt();
        if bound < best.0 {
            best = (bound, k);
        }
    }
    let steps = (best.0 / resolution).ceil() - 1.0;
    Ok(CoefficientScan {
        kmax,
        supremum: best.0,
        limiting_k: best.1,
        resolution,
        grid_value: steps.max(0.0) * resolution,
    })
}

/// `verify_gap(ball(dim), WeylAsymptotic(dim), kmax)` for each dimension.
pub fn ball_conjecture_scan(dims: &[u32], kmax: u64) -> Result<BTreeMap<u32, VerificationReport>> {
    dims.iter()
        .map(|&d| {
            if !(3..=8).contains(&d) {
                return Err(Error::invalid(format!(
                    "ball scan dimensions must lie in [3, 8], got {d}"
                )));
            }
            let ball = DomainSpec::ball(d, 1.0)?;
            Ok((
                d,
                verify_gap(&ball, &GapSequence::WeylAsymptotic { n: d }, kmax)?,
            ))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational_from_f64;

    #[test]
    fn disk_two_sqrt_k_violations() {
        let r = verify_gap(
            &DomainSpec::unit_disk(),
            &GapSequence::constant_sqrt("2".parse().unwrap()),
            50,
        )
        .unwrap();
        assert_eq!(r.violations, vec![5, 8, 21, 27, 29, 34, 42, 49, 50]);
        assert_eq!(r.empirical_k_star, 51);
    }

    #[test]
    fn four_over_root_five_fails_at_five() {
        let c = "4/sqrt(5)".parse().unwrap();
        let r = verify_gap(&DomainSpec::unit_disk(), &GapSequence::constant_sqrt(c), 5).unwrap();
        assert_eq!(r.violations, vec![5]);
        assert_eq!(r.records[4].mu_index, 9);
    }

    #[test]
    fn rectangle_exact_tie() {
        let d = DomainSpec::rectangle("9pi/4".parse().unwrap(), "1".parse().unwrap());
        let r = verify_gap(&d, &GapSequence::FixedOffset { m: 9 }, 1).unwrap();
        assert_eq!(r.records[0].verdict, Verdict::Tie);
        assert!(r.holds());
    }

    #[test]
    fn scan_on_disk() {
        let s = min_coefficient_scan(&DomainSpec::unit_disk(), 50, 1e-6).unwrap();
        assert!(s.supremum >= 1.59092 && s.supremum < 4.0 / 5f64.sqrt());
        assert!(s.grid_value < s.supremum && s.supremum - s.grid_value <= 1e-6 + 1e-12);
        let exact = |c: f64| {
            GapSequence::constant_sqrt(Side::new(rational_from_f64(c * c).unwrap(), false).unwrap())
        };
        let at = verify_gap(
            &DomainSpec::unit_disk(),
            &exact(s.supremum * (1.0 + 1e-12)),
            50,
        )
        .unwrap();
        assert!(at.violations.contains(&s.limiting_k));
        let below = verify_gap(&DomainSpec::unit_disk(), &exact(s.grid_value), 50).unwrap();
        assert!(below.holds());
    }

    #[test]
    fn scan_is_finite_at_kmax_one() {
        let s = min_coefficient_scan(&DomainSpec::unit_square(), 1, 0.5).unwrap();
        assert!(s.supremum.is_finite() && s.supremum >= 1.0);
    }
}
