//! Argument parsing and command execution for the `dngap` binary.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use dngap::disk_counting::{band_crossings_lower, band_height, p2_dirichlet, p2_neumann};
use dngap::exact::Side;
use dngap::io::{self, float, Format};
use dngap::special::{bessel_jy, BesselOrder};
use dngap::spectra::{spectrum_with, Bc, DomainSpec, SectorAngle, SpectrumLimits, TIE_TOLERANCE};
use dngap::verify::{
    ball_conjecture_scan, figure_difference_data, golden_claims, min_coefficient_scan_with,
    verify_gap_with, ClaimOptions, VerifyOptions,
};
use dngap::weyl::{weyl_coefficients, weyl_residuals, GapSequence};

/// Environment variable holding the default worker count.
pub const THREADS_ENV: &str = "DNGAP_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "dngap",
    version,
    about = "Dirichlet and Neumann spectra of model domains and gap inequalities"
)]
struct Cli {
    #[command(subcommand)]
    command: RawCommand,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: FormatArg,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Worker threads; defaults to $DNGAP_THREADS, then to the core count.
    #[arg(long, global = true, env = THREADS_ENV, value_parser = clap::value_parser!(u32).range(1..=4096))]
    threads: Option<u32>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DomainKind {
    Rect,
    Disk,
    Ball,
    Sector,
}

#[derive(Args, Debug)]
struct DomainArgs {
    #[arg(long, value_enum)]
    domain: DomainKind,
    /// Rectangle side, e.g. `1`, `3/2`, `sqrt(2)`, `9pi/4`.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<Side>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<Side>,
    /// Disk or ball radius (default 1).
    #[arg(long, allow_hyphen_values = true, value_parser = positive)]
    radius: Option<f64>,
    /// Ball dimension.
    #[arg(long)]
    dim: Option<u32>,
    /// Sector inner radius (default 1).
    #[arg(long, allow_hyphen_values = true, value_parser = positive)]
    r_in: Option<f64>,
    /// Sector outer radius (default 2).
    #[arg(long, allow_hyphen_values = true, value_parser = positive)]
    r_out: Option<f64>,
    /// Sector opening angle as a multiple of pi (default 3pi/2).
    #[arg(long, allow_hyphen_values = true)]
    angle: Option<SectorAngle>,
}

#[derive(Args, Debug)]
struct ToleranceArgs {
    /// Relative tolerance for tie verdicts on transcendental spectra.
    #[arg(long, allow_hyphen_values = true, default_value_t = TIE_TOLERANCE, value_parser = positive)]
    tie_tolerance: f64,
    /// Cap on lattice points or eigenvalues produced by one enumeration.
    #[arg(long, default_value_t = SpectrumLimits::default().max_points, value_parser = clap::value_parser!(u64).range(1..))]
    max_points: u64,
}

#[derive(Subcommand, Debug)]
enum RawCommand {
    /// First eigenvalues of a domain.
    Spectrum {
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long)]
        bc: Bc,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[arg(long, default_value_t = SpectrumLimits::default().max_points, value_parser = clap::value_parser!(u64).range(1..))]
        max_points: u64,
    },
    /// Bessel function debugging.
    Special {
        #[command(subcommand)]
        command: SpecialCommand,
    },
    /// Band profile and counting bounds for the unit disk at wavenumber lambda.
    DiskCounting {
        #[arg(long, allow_hyphen_values = true, value_parser = positive)]
        lambda: f64,
        /// Number of H-profile samples on [0, lambda].
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..=100_000))]
        samples: u64,
    },
    /// Weyl main terms and residuals.
    Weyl {
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        kmax: u64,
    },
    /// Check lambda_k >= mu_{k + p(k)} for k <= kmax.
    Verify {
        #[command(flatten)]
        domain: DomainArgs,
        /// `weyl`, `rectangle`, `rectangle-universal`, `disk-single-band`,
        /// `disk-multi-band`, `sqrt:C`, `offset:M`, `planar:ALPHA`,
        /// `lipschitz:C`, or a JSON sequence object.
        #[arg(long)]
        sequence: String,
        /// Add a constant to the sequence.
        #[arg(long, default_value_t = 0)]
        plus: u64,
        #[arg(long, default_value_t = 2000, value_parser = clap::value_parser!(u64).range(1..))]
        kmax: u64,
        #[command(flatten)]
        tolerances: ToleranceArgs,
    },
    /// `lambda_k - mu_{k + floor(C sqrt k)}` on the unit disk.
    FigureData {
        /// Exact coefficient, e.g. `2`, `1665221/1000000`, `4/sqrt(5)`; omitted means 0.
        #[arg(long, allow_hyphen_values = true)]
        c: Option<Side>,
        #[arg(long, default_value_t = 2000, value_parser = clap::value_parser!(u64).range(1..))]
        kmax: u64,
    },
    /// Largest C with floor(C sqrt k) admissible for k <= kmax.
    ScanCoefficient {
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        kmax: u64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1e-6, value_parser = positive)]
        resolution: f64,
        #[command(flatten)]
        tolerances: ToleranceArgs,
    },
    /// Weyl sequence on unit balls.
    ScanBall {
        #[arg(long, value_delimiter = ',', default_values_t = [3u32, 4, 5, 6, 7, 8], value_parser = clap::value_parser!(u32).range(3..=8))]
        dims: Vec<u32>,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        ball_kmax: u64,
    },
    /// Run every golden claim; exits nonzero if any fails.
    CheckPaper {
        #[arg(long, default_value_t = 2000, value_parser = clap::value_parser!(u64).range(1..))]
        kmax_2d: u64,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        ball_kmax: u64,
    },
}

#[derive(Subcommand, Debug)]
enum SpecialCommand {
    /// J, J', Y, Y' at each x.
    Eval {
        /// Nonnegative rational order, e.g. `2`, `2/3`, `0.5`.
        #[arg(long)]
        order: BesselOrder,
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',', required = true, value_parser = positive)]
        x: Vec<f64>,
    },
}

fn positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("must be finite and > 0, got {s}"))
    }
}

/// A fully validated invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub threads: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Spectrum {
        domain: DomainSpec,
        bc: Bc,
        count: usize,
        limits: SpectrumLimits,
    },
    SpecialEval {
        order: BesselOrder,
        x: Vec<f64>,
    },
    DiskCounting {
        lambda: f64,
        samples: u64,
    },
    Weyl {
        domain: DomainSpec,
        kmax: u64,
    },
    Verify {
        domain: DomainSpec,
        sequence: GapSequence,
        kmax: u64,
        options: VerifyOptions,
    },
    FigureData {
        c: Option<Side>,
        kmax: u64,
    },
    ScanCoefficient {
        domain: DomainSpec,
        kmax: u64,
        resolution: f64,
        options: VerifyOptions,
    },
    ScanBall {
        dims: Vec<u32>,
        kmax: u64,
    },
    CheckPaper(ClaimOptions),
}

fn usage(kind: ErrorKind, msg: impl std::fmt::Display) -> clap::Error {
    use clap::CommandFactory;
    Cli::command().error(kind, msg)
}

impl DomainArgs {
    fn resolve(&self) -> Result<DomainSpec, clap::Error> {
        let given = [
            ("--a", self.a.is_some()),
            ("--b", self.b.is_some()),
            ("--radius", self.radius.is_some()),
            ("--dim", self.dim.is_some()),
            ("--r-in", self.r_in.is_some()),
            ("--r-out", self.r_out.is_some()),
            ("--angle", self.angle.is_some()),
        ];
        let allowed: &[&str] = match self.domain {
            DomainKind::Rect => &["--a", "--b"],
            DomainKind::Disk => &["--radius"],
            DomainKind::Ball => &["--radius", "--dim"],
            DomainKind::Sector => &["--r-in", "--r-out", "--angle"],
        };
        if let Some((flag, _)) = given.iter().find(|(f, set)| *set && !allowed.contains(f)) {
            return Err(usage(
                ErrorKind::ArgumentConflict,
                format!("{flag} does not apply to --domain {:?}", self.domain).to_lowercase(),
            ));
        }
        let invalid = |e: dngap::Error| usage(ErrorKind::ValueValidation, e);
        match self.domain {
            DomainKind::Rect => match (&self.a, &self.b) {
                (Some(a), Some(b)) => Ok(DomainSpec::rectangle(a.clone(), b.clone())),
                _ => Err(usage(
                    ErrorKind::MissingRequiredArgument,
                    "--domain rect needs --a and --b",
                )),
            },
            DomainKind::Disk => DomainSpec::disk(self.radius.unwrap_or(1.0)).map_err(invalid),
            DomainKind::Ball => {
                let dim = self.dim.ok_or_else(|| {
                    usage(
                        ErrorKind::MissingRequiredArgument,
                        "--domain ball needs --dim",
                    )
                })?;
                let r = self.radius.unwrap_or(1.0);
                if dim == 2 {
                    DomainSpec::disk(r).map_err(invalid)
                } else {
                    DomainSpec::ball(dim, r).map_err(invalid)
                }
            }
            DomainKind::Sector => DomainSpec::annular_sector(
                self.r_in.unwrap_or(1.0),
                self.r_out.unwrap_or(2.0),
                self.angle
                    .unwrap_or(SectorAngle::new(3, 2).expect("3pi/2 is valid")),
            )
            .map_err(invalid),
        }
    }
}

impl ToleranceArgs {
    fn options(&self) -> VerifyOptions {
        VerifyOptions {
            tie_tolerance: self.tie_tolerance,
            limits: SpectrumLimits {
                max_points: self.max_points,
            },
        }
    }
}

fn parse_sequence(text: &str, domain: &DomainSpec) -> Result<GapSequence, clap::Error> {
    let bad = |msg: String| {
        usage(
            ErrorKind::ValueValidation,
            format!("--sequence {text:?}: {msg}"),
        )
    };
    let text = text.trim();
    if text.starts_with('{') {
        return serde_json_sequence(text).map_err(bad);
    }
    let (name, arg) = match text.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (text, None),
    };
    let need = || arg.ok_or_else(|| bad(format!("{name} needs a value after ':'")));
    let num = |s: &str| positive(s).map_err(&bad);
    let seq = match name {
        "weyl" => GapSequence::WeylAsymptotic {
            n: domain.dimension(),
        },
        "rectangle" => match domain {
            DomainSpec::Rectangle { a, b } => GapSequence::rectangle(a.value(), b.value()),
            _ => return Err(bad("needs --domain rect".into())),
        },
        "rectangle-universal" => GapSequence::RectangleUniversal,
        "disk-single-band" => GapSequence::DiskBand33,
        "disk-multi-band" => GapSequence::DiskBand34,
        "sqrt" => GapSequence::constant_sqrt(
            need()?
                .parse()
                .map_err(|e: dngap::Error| bad(e.to_string()))?,
        ),
        "offset" => GapSequence::FixedOffset {
            m: need()?.parse().map_err(|e| bad(format!("{e}")))?,
        },
        "planar" => GapSequence::TwoDimPlanar {
            alpha: num(need()?)?,
            perimeter: domain.boundary_measure(),
            area: domain.volume(),
        },
        "lipschitz" => GapSequence::LipschitzPower {
            c: num(need()?)?,
            n: domain.dimension(),
        },
        _ => return Err(bad("unknown sequence".into())),
    };
    if arg.is_some() && !matches!(name, "sqrt" | "offset" | "planar" | "lipschitz") {
        return Err(bad(format!("{name} takes no value")));
    }
    seq.validate().map_err(|e| bad(e.to_string()))?;
    Ok(seq)
}

fn serde_json_sequence(text: &str) -> Result<GapSequence, String> {
    let seq: GapSequence = io::parse_json(text).map_err(|e| e.to_string())?;
    seq.validate().map_err(|e| e.to_string())?;
    Ok(seq)
}

/// Parses and validates a full argument vector, program name first.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    let command = match cli.command {
        RawCommand::Spectrum {
            domain,
            bc,
            count,
            max_points,
        } => Command::Spectrum {
            domain: domain.resolve()?,
            bc,
            count: usize::try_from(count)
                .map_err(|_| usage(ErrorKind::ValueValidation, "--count too large"))?,
            limits: SpectrumLimits { max_points },
        },
        RawCommand::Special {
            command: SpecialCommand::Eval { order, x },
        } => Command::SpecialEval { order, x },
        RawCommand::DiskCounting { lambda, samples } => Command::DiskCounting { lambda, samples },
        RawCommand::Weyl { domain, kmax } => Command::Weyl {
            domain: domain.resolve()?,
            kmax,
        },
        RawCommand::Verify {
            domain,
            sequence,
            plus,
            kmax,
            tolerances,
        } => {
            let domain = domain.resolve()?;
            let mut sequence = parse_sequence(&sequence, &domain)?;
            if plus > 0 {
                sequence = GapSequence::Shifted {
                    base: Box::new(sequence),
                    by: plus,
                };
            }
            Command::Verify {
                domain,
                sequence,
                kmax,
                options: tolerances.options(),
            }
        }
        RawCommand::FigureData { c, kmax } => Command::FigureData { c, kmax },
        RawCommand::ScanCoefficient {
            domain,
            kmax,
            resolution,
            tolerances,
        } => Command::ScanCoefficient {
            domain: domain.resolve()?,
            kmax,
            resolution,
            options: tolerances.options(),
        },
        RawCommand::ScanBall {
            mut dims,
            ball_kmax,
        } => {
            dims.sort_unstable();
            dims.dedup();
            Command::ScanBall {
                dims,
                kmax: ball_kmax,
            }
        }
        RawCommand::CheckPaper { kmax_2d, ball_kmax } => {
            Command::CheckPaper(ClaimOptions { kmax_2d, ball_kmax })
        }
    };
    Ok(RunConfig {
        command,
        format: match cli.format {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        },
        output: cli.output,
        threads: cli.threads.map(|t| t as usize),
    })
}

/// Why a run ended unsuccessfully.
#[derive(Debug)]
pub enum RunError {
    Failed(dngap::Error),
    /// Output was written, but some golden claims failed.
    ClaimsFailed {
        failed: usize,
        total: usize,
    },
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Failed(e) => write!(f, "{e}"),
            RunError::ClaimsFailed { failed, total } => {
                write!(f, "{failed} of {total} claims failed")
            }
        }
    }
}

impl From<dngap::Error> for RunError {
    fn from(e: dngap::Error) -> Self {
        RunError::Failed(e)
    }
}

#[derive(Serialize)]
struct WeylRow {
    k: u64,
    lambda_k: f64,
    mu_k: f64,
    main_dirichlet: f64,
    main_neumann: f64,
    residual_dirichlet: f64,
    residual_neumann: f64,
}

#[derive(Serialize)]
struct SpecialRow {
    nu: f64,
    x: f64,
    j: f64,
    jp: f64,
    y: f64,
    yp: f64,
}

#[derive(Serialize)]
struct DiskCountingDoc {
    lambda: f64,
    profile: Vec<(f64, f64)>,
    p2_dirichlet: u64,
    p2_neumann: u64,
    single_band_lower: u64,
    multi_band_lower: u64,
    band_terms: u64,
}

#[derive(Serialize)]
struct BallRow<'a> {
    dim: u32,
    report: &'a dngap::verify::VerificationReport,
}

fn emit_rows<T: Serialize>(
    format: Format,
    header: &[&str],
    rows: &[T],
    render: impl Fn(&T) -> Vec<String>,
    sink: &mut dyn Write,
) -> dngap::Result<()> {
    match format {
        Format::Json => io::write_json(&rows, sink),
        Format::Csv => io::write_table(header, &rows.iter().map(render).collect::<Vec<_>>(), sink),
    }
}

/// Executes a validated configuration.
pub fn run(config: &RunConfig) -> Result<(), RunError> {
    let out = config.output.as_deref();
    let format = config.format;
    match &config.command {
        Command::Spectrum {
            domain,
            bc,
            count,
            limits,
        } => {
            let s = spectrum_with(domain, *bc, *count, limits)?;
            io::with_sink(out, |w| io::write_spectrum(&s, format, w))?;
        }
        Command::SpecialEval { order, x } => {
            let rows = x
                .iter()
                .map(|&x| {
                    let v = bessel_jy(*order, x)?;
                    Ok(SpecialRow {
                        nu: order.value(),
                        x,
                        j: v.j,
                        jp: v.jp,
                        y: v.y,
                        yp: v.yp,
                    })
                })
                .collect::<dngap::Result<Vec<_>>>()?;
            io::with_sink(out, |w| {
                emit_rows(
                    format,
                    &["nu", "x", "j", "jp", "y", "yp"],
                    &rows,
                    |r| [r.nu, r.x, r.j, r.jp, r.y, r.yp].map(float).to_vec(),
                    w,
                )
            })?;
        }
        Command::DiskCounting { lambda, samples } => {
            let l = *lambda;
            let profile = (0..=*samples)
                .map(|i| {
                    let m = l * i as f64 / *samples as f64;
                    Ok((m, band_height(m, l)?))
                })
                .collect::<dngap::Result<Vec<_>>>()?;
            let c = band_crossings_lower(l)?;
            let doc = DiskCountingDoc {
                lambda: l,
                profile,
                p2_dirichlet: p2_dirichlet(l)?,
                p2_neumann: p2_neumann(l)?,
                single_band_lower: c.single,
                multi_band_lower: c.multi,
                band_terms: c.terms,
            };
            io::with_sink(out, |w| match format {
                Format::Json => io::write_json(&doc, w),
                Format::Csv => {
                    let mut rows: Vec<Vec<String>> = doc
                        .profile
                        .iter()
                        .map(|(m, h)| vec!["H".into(), float(*m), float(*h)])
                        .collect();
                    for (name, v) in [
                        ("p2_dirichlet", doc.p2_dirichlet),
                        ("p2_neumann", doc.p2_neumann),
                        ("single_band_lower", doc.single_band_lower),
                        ("multi_band_lower", doc.multi_band_lower),
                        ("band_terms", doc.band_terms),
                    ] {
                        rows.push(vec![name.into(), String::new(), v.to_string()]);
                    }
                    io::write_table(&["quantity", "m", "value"], &rows, w)
                }
            })?;
        }
        Command::Weyl { domain, kmax } => {
            let c = weyl_coefficients(domain);
            let limits = SpectrumLimits::default();
            let d = spectrum_with(domain, Bc::Dirichlet, *kmax as usize, &limits)?;
            let n = spectrum_with(domain, Bc::Neumann, *kmax as usize, &limits)?;
            let (rd, rn) = (weyl_residuals(&d, &c), weyl_residuals(&n, &c));
            let rows: Vec<WeylRow> = (0..*kmax as usize)
                .map(|i| {
                    let k = i as f64 + 1.0;
                    WeylRow {
                        k: i as u64 + 1,
                        lambda_k: d.entries[i].value,
                        mu_k: n.entries[i].value,
                        main_dirichlet: c.main_term(Bc::Dirichlet, k),
                        main_neumann: c.main_term(Bc::Neumann, k),
                        residual_dirichlet: rd[i],
                        residual_neumann: rn[i],
                    }
                })
                .collect();
            io::with_sink(out, |w| {
                emit_rows(
                    format,
                    &[
                        "k",
                        "lambda_k",
                        "mu_k",
                        "main_dirichlet",
                        "main_neumann",
                        "residual_dirichlet",
                        "residual_neumann",
                    ],
                    &rows,
                    |r| {
                        let mut v = vec![r.k.to_string()];
                        v.extend(
                            [
                                r.lambda_k,
                                r.mu_k,
                                r.main_dirichlet,
                                r.main_neumann,
                                r.residual_dirichlet,
                                r.residual_neumann,
                            ]
                            .map(float),
                        );
                        v
                    },
                    w,
                )
            })?;
        }
        Command::Verify {
            domain,
            sequence,
            kmax,
            options,
        } => {
            let r = verify_gap_with(domain, sequence, *kmax, options)?;
            io::with_sink(out, |w| io::write_report(&r, format, w))?;
        }
        Command::FigureData { c, kmax } => {
            let data = figure_difference_data(c.as_ref(), *kmax)?;
            io::with_sink(out, |w| io::write_difference_data(&data, format, w))?;
        }
        Command::ScanCoefficient {
            domain,
            kmax,
            resolution,
            options,
        } => {
            let s = min_coefficient_scan_with(domain, *kmax, *resolution, options)?;
            io::with_sink(out, |w| io::write_scan(&s, format, w))?;
        }
        Command::ScanBall { dims, kmax } => {
            let scan = ball_conjecture_scan(dims, *kmax)?;
            let rows: Vec<BallRow> = scan
                .iter()
                .map(|(d, r)| BallRow { dim: *d, report: r })
                .collect();
            io::with_sink(out, |w| {
                emit_rows(
                    format,
                    &[
                        "dim",
                        "kmax",
                        "violation_count",
                        "violations",
                        "empirical_k_star",
                    ],
                    &rows,
                    |r| {
                        let v: Vec<String> =
                            r.report.violations.iter().map(|k| k.to_string()).collect();
                        vec![
                            r.dim.to_string(),
                            r.report.k_range.end.to_string(),
                            v.len().to_string(),
                            v.join(" "),
                            r.report.empirical_k_star.to_string(),
                        ]
                    },
                    w,
                )
            })?;
        }
        Command::CheckPaper(options) => {
            let claims = golden_claims(options);
            let failed = claims.iter().filter(|c| !c.passed).count();
            io::with_sink(out, |w| match format {
                Format::Json => io::write_json(&claims, w),
                Format::Csv => {
                    for c in &claims {
                        let tag = if c.passed { "PASS" } else { "FAIL" };
                        writeln!(w, "{tag} {}: {}", c.name, c.detail)?;
                    }
                    writeln!(
                        w,
                        "{} of {} claims passed",
                        claims.len() - failed,
                        claims.len()
                    )?;
                    Ok(())
                }
            })?;
            if failed > 0 {
                return Err(RunError::ClaimsFailed {
                    failed,
                    total: claims.len(),
                });
            }
        }
    }
    Ok(())
}
