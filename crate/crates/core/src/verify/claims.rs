//! The concrete numerical claims about the model domains, each checked
//! against freshly computed spectra.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{
    ball_conjecture_scan, min_coefficient_scan, verify_disk_theorems, verify_gap, Verdict,
};
use crate::disk_counting::{band_coefficient_sum, p2_dirichlet, p2_neumann, p_disk_theorem34};
use crate::error::{Error, Result};
use crate::exact::{PiQuadratic, Side};
use crate::special::{
    ball_neumann_radial_root, bessel_j, bessel_j_deriv, bessel_j_zero, bessel_jprime_zero,
    neumann_first_bounds, BesselOrder,
};
use crate::spectra::{
    disk_spectrum, rectangle_spectrum, sector_spectrum, spectrum_below, Bc, DomainSpec, Spectrum,
};
use crate::weyl::{gap_margin, large_n_ratio, p_weyl, weyl_coefficients, GapSequence};

pub const SECTOR_LAMBDA1: f64 = 9.96001;
pub const SECTOR_NEUMANN: [f64; 10] = [
    0.0, 0.204718, 0.811126, 1.79721, 3.13054, 4.77455, 6.69575, 8.86914, 10.2181, 10.4649,
];
pub const RECTANGLE_NEUMANN: [f64; 10] = [
    0.0, 0.197531, 0.790123, 1.77778, 3.16049, 4.93827, 7.11111, 9.67901, 9.8696, 10.0671,
];
const QUOTED: f64 = 5e-5;

/// Computed values against a quoted table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableCheck {
    pub computed: Vec<f64>,
    pub quoted: Vec<f64>,
    pub tolerance: f64,
    pub passed: bool,
}

impl TableCheck {
    fn new(computed: Vec<f64>, quoted: &[f64], tolerance: f64) -> Self {
        let passed = computed.len() == quoted.len()
            && computed
                .iter()
                .zip(quoted)
                .all(|(c, q)| (c - q).abs() <= tolerance);
        TableCheck {
            computed,
            quoted: quoted.to_vec(),
            tolerance,
            passed,
        }
    }

    fn render(&self) -> String {
        let f = |v: &[f64]| {
            v.iter()
                .map(|x| format!("{x:.6}"))
                .collect::<Vec<_>>()
                .join(", ")
        };
        format!(
            "computed [{}] quoted [{}]",
            f(&self.computed),
            f(&self.quoted)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectorClaim {
    pub lambda1: f64,
    pub neumann: TableCheck,
    /// `#{k : mu_k < lambda_1}`.
    pub neumann_below_lambda1: usize,
}

/// `mu_8 < lambda_1 < mu_9` on the reference sector, and the Neumann table.
pub fn sector_claim_check() -> Result<SectorClaim> {
    let d = sector_spectrum(Bc::Dirichlet, 1)?;
    let n = sector_spectrum(Bc::Neumann, 10)?;
    let lambda1 = d.values()[0];
    let neumann = TableCheck::new(n.values(), &SECTOR_NEUMANN, QUOTED);
    let below = n.count_below(lambda1)?;
    let claim = SectorClaim {
        lambda1,
        neumann,
        neumann_below_lambda1: below,
    };
    if below != 8 || !claim.neumann.passed || (lambda1 - SECTOR_LAMBDA1).abs() > QUOTED {
        return Err(Error::ClaimFailed(format!(
            "sector: lambda_1 = {lambda1:.6}, {below} Neumann eigenvalues below it; {}",
            claim.neumann.render()
        )));
    }
    Ok(claim)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RectangleClaim {
    pub lambda1: f64,
    pub lambda1_exact: String,
    pub neumann: TableCheck,
    /// `lambda_1 = mu_10` exactly.
    pub exact_tie_at_10: bool,
}

fn side(s: &str) -> Side {
    s.parse().expect("valid constant")
}

fn rectangle_9pi4() -> (Side, Side) {
    (side("9pi/4"), side("1"))
}

/// `lambda_1 = pi^2 + 16/81 = mu_10` exactly on the `9pi/4 x 1` rectangle,
/// and its Neumann table.
pub fn rectangle_claim_check() -> Result<RectangleClaim> {
    let (a, b) = rectangle_9pi4();
    let d = rectangle_spectrum(&a, &b, Bc::Dirichlet, 1)?;
    let n = rectangle_spectrum(&a, &b, Bc::Neumann, 10)?;
    let want = PiQuadratic::new(
        BigRational::new(BigInt::from(16), BigInt::from(81)),
        BigRational::from_integer(BigInt::from(1)),
    );
    let l = d
        .get(1)
        .and_then(|e| e.exact.clone())
        .expect("rectangle eigenvalues are exact");
    let m10 = n
        .get(10)
        .and_then(|e| e.exact.clone())
        .expect("rectangle eigenvalues are exact");
    let m9 = n
        .get(9)
        .and_then(|e| e.exact.clone())
        .expect("rectangle eigenvalues are exact");
    let claim = RectangleClaim {
        lambda1: l.to_f64(),
        lambda1_exact: l.to_string(),
        neumann: TableCheck::new(n.values(), &RECTANGLE_NEUMANN, QUOTED),
        exact_tie_at_10: l.compare(&m10) == Some(Ordering::Equal)
            && m9.compare(&l) == Some(Ordering::Less),
    };
    if l.compare(&want) != Some(Ordering::Equal) || !claim.exact_tie_at_10 || !claim.neumann.passed
    {
        return Err(Error::ClaimFailed(format!(
            "rectangle 9pi/4 x 1: lambda_1 = {}, tie at 10: {}; {}",
            claim.lambda1_exact,
            claim.exact_tie_at_10,
            claim.neumann.render()
        )));
    }
    Ok(claim)
}

/// One row of the disk sandwich: counts `<= lambda^2` against the bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SandwichRow {
    pub lambda_index: usize,
    pub dirichlet_count: u64,
    pub p2_dirichlet: u64,
    pub p2_neumann: u64,
    pub neumann_count: u64,
}

fn count_at_most(s: &Spectrum, v: f64) -> Result<u64> {
    s.count_at_most(v).map(|c| c as u64)
}

/// `N_D(lambda) <= P2D(lambda)` and `P2N(lambda) <= N_N(lambda)` on the grid
/// `lambda = lambda_max i / points`, `i = 1..=points`, with
/// `N(lambda) = #{k : eigenvalue_k <= lambda^2}`.
pub fn disk_sandwich(points: usize, lambda_max: f64) -> Result<Vec<(f64, SandwichRow)>> {
    let top = lambda_max * lambda_max * 1.01 + 1.0;
    let d = spectrum_below(&DomainSpec::unit_disk(), Bc::Dirichlet, top)?;
    let n = spectrum_below(&DomainSpec::unit_disk(), Bc::Neumann, top)?;
    (1..=points)
        .map(|i| {
            let l = lambda_max * i as f64 / points as f64;
            Ok((
                l,
                SandwichRow {
                    lambda_index: i,
                    dirichlet_count: count_at_most(&d, l * l)?,
                    p2_dirichlet: p2_dirichlet(l)?,
                    p2_neumann: p2_neumann(l)?,
                    neumann_count: count_at_most(&n, l * l)?,
                },
            ))
        })
        .collect()
}

/// How far the harness runs its range-limited checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimOptions {
    /// Range for the disk band sequences and the difference series.
    pub kmax_2d: u64,
    /// Range for the ball scan.
    pub ball_kmax: u64,
}

impl Default for ClaimOptions {
    fn default() -> Self {
        Self {
            kmax_2d: 2000,
            ball_kmax: 100,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn claim(name: impl Into<String>, check: impl FnOnce() -> Result<(bool, String)>) -> Claim {
    let (passed, detail) = match check() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    Claim {
        name: name.into(),
        passed,
        detail,
    }
}

fn near(name: &str, got: f64, want: f64, tol: f64) -> Claim {
    claim(name, || {
        Ok((
            (got - want).abs() <= tol,
            format!("{got:.9} vs {want} (tolerance {tol:e})"),
        ))
    })
}

fn int(n: u64) -> BesselOrder {
    BesselOrder::integer(n)
}

/// Every quoted value and range-limited statement about the model domains.
pub fn golden_claims(options: &ClaimOptions) -> Vec<Claim> {
    let mut out = Vec::new();
    let kmax = options.kmax_2d;

    out.push(claim("J_2(5.13562) vanishes to 5e-6", || {
        let v = bessel_j(int(2), 5.13562)?;
        Ok((v.abs() <= 5e-6, format!("J_2 = {v:e}")))
    }));
    out.push(claim("J'_4(5.31755) vanishes to 5e-6", || {
        let v = bessel_j_deriv(int(4), 5.31755)?;
        Ok((v.abs() <= 5e-6, format!("J'_4 = {v:e}")))
    }));
    out.push(match bessel_j_zero(int(2), 1) {
        Ok(z) => near("j_{2,1} = 5.13562", z, 5.13562, 5e-6),
        Err(e) => claim("j_{2,1} = 5.13562", || Err(e)),
    });
    out.push(claim("j'_{0,1} = 0", || {
        let z = bessel_jprime_zero(int(0), 1)?;
        Ok((z == 0.0, format!("{z}")))
    }));
    out.push(match bessel_jprime_zero(int(4), 1) {
        Ok(z) => near("j'_{4,1} = 5.31755", z, 5.31755, 5e-6),
        Err(e) => claim("j'_{4,1} = 5.31755", || Err(e)),
    });
    out.push(match ball_neumann_radial_root(2, 4, 1) {
        Ok(z) => near(
            "planar Neumann radial root (l = 4, k = 1) = 5.31755",
            z,
            5.31755,
            5e-6,
        ),
        Err(e) => claim(
            "planar Neumann radial root (l = 4, k = 1) = 5.31755",
            || Err(e),
        ),
    });
    out.push(claim(
        "first Neumann bounds (d = 2, l = 4) contain 5.31755^2",
        || {
            let b = neumann_first_bounds(2, 4)?;
            let v = 5.31755f64.powi(2);
            Ok((
                b.contains(v),
                format!("[{:.6}, {:.6}] vs {v:.6}", b.lower, b.upper),
            ))
        },
    ));

    out.push(claim(
        "rectangle 9pi/4 x 1: lambda_1 = pi^2 + 16/81, tie with mu_10, Neumann table",
        || match rectangle_claim_check() {
            Ok(c) => Ok((
                true,
                format!(
                    "lambda_1 = {} = {:.6}; {}",
                    c.lambda1_exact,
                    c.lambda1,
                    c.neumann.render()
                ),
            )),
            Err(e) => Ok((false, e.to_string())),
        },
    ));
    out.push(claim(
        "disk: lambda_5 = j_{2,1}^2 with j_{2,1} = 5.13562",
        || {
            let v = disk_spectrum(Bc::Dirichlet, 5)?.values()[4].sqrt();
            Ok((
                (v - 5.13562).abs() <= 5e-6,
                format!("sqrt(lambda_5) = {v:.9}"),
            ))
        },
    ));
    out.push(claim(
        "disk: mu_9 = j'_{4,1}^2 with j'_{4,1} = 5.31755",
        || {
            let v = disk_spectrum(Bc::Neumann, 9)?.values()[8].sqrt();
            Ok(((v - 5.31755).abs() <= 5e-6, format!("sqrt(mu_9) = {v:.9}")))
        },
    ));
    out.push(claim(
        "sector: lambda_1 = 9.96001, Neumann table, mu_8 < lambda_1 < mu_9",
        || match sector_claim_check() {
            Ok(c) => Ok((
                true,
                format!("lambda_1 = {:.6}; {}", c.lambda1, c.neumann.render()),
            )),
            Err(e) => Ok((false, e.to_string())),
        },
    ));

    let disk = DomainSpec::unit_disk();
    out.push(claim(
        "disk floor(2 sqrt(k)), k <= 50: violations {5, 8, 21, 27, 29, 34, 42, 49, 50}",
        || {
            let r = verify_gap(&disk, &GapSequence::constant_sqrt(side("2")), 50)?;
            Ok((
                r.violations == [5, 8, 21, 27, 29, 34, 42, 49, 50],
                format!("violations {:?}", r.violations),
            ))
        },
    ));
    out.push(claim(
        "disk floor(4/sqrt(5) sqrt(k)): k = 5 fails against mu_9",
        || {
            let r = verify_gap(&disk, &GapSequence::constant_sqrt(side("4/sqrt(5)")), 5)?;
            let rec = &r.records[4];
            Ok((
                rec.verdict == Verdict::Fails && rec.mu_index == 9,
                format!("k = 5: mu_{} margin {:.6}", rec.mu_index, rec.margin),
            ))
        },
    ));
    out.push(claim(
        format!("disk single- and multi-band sequences hold for k <= {kmax}"),
        || {
            let (a, b) = verify_disk_theorems(kmax)?;
            Ok((
                a.holds() && b.holds(),
                format!("violations {:?} and {:?}", a.violations, b.violations),
            ))
        },
    ));
    out.push(claim(
        "difference series with C = 2 goes negative for k <= 50",
        || {
            let r = verify_gap(&disk, &GapSequence::constant_sqrt(side("2")), 50)?;
            let neg = r.records.iter().filter(|x| x.margin < 0.0).count();
            Ok((neg > 0, format!("{neg} negative values")))
        },
    ));
    out.push(claim(
        format!("difference series with C = 1.665221 stays nonnegative for k <= {kmax}"),
        || {
            let r = verify_gap(&disk, &GapSequence::constant_sqrt(side("1.665221")), kmax)?;
            let neg: Vec<u64> = r
                .records
                .iter()
                .filter(|x| x.margin < 0.0)
                .map(|x| x.k)
                .collect();
            Ok((neg.is_empty(), format!("negative at {neg:?}")))
        },
    ));
    out.push(near(
        "band coefficient sum = 1.59092",
        band_coefficient_sum(10_000),
        1.59092,
        1e-4,
    ));
    out.push(near(
        "multi-band p(k)/sqrt(k) at k = 10^6 near 1.59092",
        p_disk_theorem34(1_000_000) as f64 / 1000.0,
        1.59092,
        0.02,
    ));
    out.push(claim(
        "planar Weyl sequence is floor(2 sqrt(k)) for k <= 10^4",
        || {
            for k in 1..=10_000u64 {
                let want = (k * 4).isqrt();
                let got = p_weyl(2, k)?;
                if got != want {
                    return Ok((false, format!("k = {k}: {got} vs {want}")));
                }
            }
            Ok((true, "all equal".into()))
        },
    ));
    out.push(claim(
        "disk margin g(2, k, floor(2 sqrt(k))) stays bounded",
        || {
            let c = weyl_coefficients(&disk);
            let gs = [100u64, 10_000, 1_000_000]
                .iter()
                .map(|&k| gap_margin(2, k, p_weyl(2, k)?, c.c0, c.c1))
                .collect::<Result<Vec<f64>>>()?;
            Ok((
                gs.iter().all(|g| g.abs() <= 2.0 * c.c0),
                format!("g = {gs:?}"),
            ))
        },
    ));
    out.push(near(
        "large-n coefficient ratio at n = 200",
        large_n_ratio(200),
        1.0,
        0.1,
    ));

    out.push(claim(
        "coefficient scan, disk, k <= 50: C in [1.59092, 4/sqrt(5))",
        || {
            let s = min_coefficient_scan(&disk, 50, 1e-6)?;
            Ok((
                s.supremum >= 1.59092 && s.supremum < 4.0 / 5f64.sqrt(),
                format!("supremum {:.6} (limiting k = {})", s.supremum, s.limiting_k),
            ))
        },
    ));
    out.push(claim(
        "coefficient scan, unit square, k <= 100: C >= 4/sqrt(pi) - 1/sqrt(27)",
        || {
            let s = min_coefficient_scan(&DomainSpec::unit_square(), 100, 1e-6)?;
            let bound = 4.0 / PI.sqrt() - 1.0 / 27f64.sqrt();
            Ok((
                s.supremum >= bound,
                format!("supremum {:.6} vs {bound:.6}", s.supremum),
            ))
        },
    ));

    let bk = options.ball_kmax;
    match ball_conjecture_scan(&[3, 4, 5, 6, 7, 8], bk) {
        Ok(scan) => {
            for d in [3u32, 4] {
                let v = &scan[&d].violations;
                out.push(claim(
                    format!("ball d = {d}: Weyl sequence violated for some k <= {bk}"),
                    || Ok((!v.is_empty(), format!("violations {v:?}"))),
                ));
            }
            out.push(claim(
                format!("balls d = 5..8: no violations for k <= {bk} (range-limited)"),
                || {
                    let found: Vec<(u32, Vec<u64>)> = (5..=8)
                        .map(|d| (d, scan[&d].violations.clone()))
                        .filter(|(_, v)| !v.is_empty())
                        .collect();
                    Ok((found.is_empty(), format!("violations {found:?}")))
                },
            ));
        }
        Err(e) => out.push(claim("ball scan", || Err(e))),
    }

    out.push(claim(
        "disk sandwich N_D <= P2D and P2N <= N_N on 200 points in (0, 8]",
        || {
            let rows = disk_sandwich(200, 8.0)?;
            let bad: Vec<f64> = rows
                .iter()
                .filter(|(_, r)| {
                    r.dirichlet_count > r.p2_dirichlet || r.p2_neumann > r.neumann_count
                })
                .map(|(l, _)| *l)
                .collect();
            Ok((bad.is_empty(), format!("failing at lambda {bad:?}")))
        },
    ));
    out
}
