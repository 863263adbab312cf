use std::ffi::OsString;
use std::path::PathBuf;

use arclen::sweeps::Schedule;
use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, PartialEq, Parser)]
#[command(
    name = "arclen",
    version,
    about = "Curvature-corrected arc-length studies on analytic surfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Command {
    /// Check the truncation order of the normal-curvature correction.
    VerifyTheorem(VerifyTheoremArgs),
    /// Estimate Gaussian curvature of the symmetric 4-triangle sphere star.
    SphereStar(SphereStarArgs),
    /// Audit areas and error bounds of one Schwarz lantern.
    Lantern(LanternArgs),
    /// Run a convergence sweep.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SurfaceKind {
    Sphere,
    Cylinder,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct VerifyTheoremArgs {
    #[arg(long, value_enum)]
    pub surface: SurfaceKind,
    #[arg(long, default_value_t = 1.0, value_parser = positive_real)]
    pub radius: f64,
    /// Launch angle in radians, measured from the first chart direction
    /// (sphere: colatitude, cylinder: circumferential).
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true, value_parser = finite_real)]
    pub direction_angle: f64,
    /// Geodesic lengths to probe, comma separated.
    #[arg(long, required = true, value_delimiter = ',', value_parser = positive_real)]
    pub scales: Vec<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct SphereStarArgs {
    #[arg(long, required = true, value_delimiter = ',', value_parser = unit_interval)]
    pub xbars: Vec<f64>,
    #[arg(long)]
    pub corrected: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct LanternArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(3..))]
    pub n: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub m: u64,
    #[arg(long)]
    pub corrected: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Study {
    LanternSchedule,
    SphereStar,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub study: Study,
    /// `m-const:M`, `m-eq-n`, `m-eq-n2` or `m-eq-n3` (lantern-schedule only).
    #[arg(long, value_parser = parse_schedule)]
    pub schedule: Option<Schedule>,
    /// Ascending N values (lantern-schedule only).
    #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u64).range(3..))]
    pub ns: Vec<u64>,
    /// Star sizes in (0, 1) (sphere-star only).
    #[arg(long, value_delimiter = ',', value_parser = unit_interval)]
    pub xbars: Vec<f64>,
    #[arg(long)]
    pub corrected: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

impl Command {
    pub fn output(&self) -> &OutputArgs {
        match self {
            Command::VerifyTheorem(a) => &a.output,
            Command::SphereStar(a) => &a.output,
            Command::Lantern(a) => &a.output,
            Command::Sweep(a) => &a.output,
        }
    }
}

fn finite_real(s: &str) -> Result<f64, String> {
    let x: f64 = s.trim().parse().map_err(|e| format!("`{s}`: {e}"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

fn positive_real(s: &str) -> Result<f64, String> {
    let x = finite_real(s)?;
    if x > 0.0 {
        Ok(x)
    } else {
        Err(format!("`{s}` must be positive"))
    }
}

fn unit_interval(s: &str) -> Result<f64, String> {
    let x = finite_real(s)?;
    if x > 0.0 && x < 1.0 {
        Ok(x)
    } else {
        Err(format!("`{s}` must lie strictly between 0 and 1"))
    }
}

fn parse_schedule(s: &str) -> Result<Schedule, String> {
    s.parse().map_err(|e: arclen::Error| e.to_string())
}

/// Parses and validates a full argument vector (program name first).
pub fn parse<I, T>(argv: I) -> Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    validate(&cli)?;
    Ok(cli)
}

fn validate(cli: &Cli) -> Result<(), clap::Error> {
    let usage = |kind, msg: &str| Err(Cli::command().error(kind, msg));
    if let Command::Sweep(a) = &cli.command {
        match a.study {
            Study::LanternSchedule => {
                if a.schedule.is_none() {
                    return usage(
                        ErrorKind::MissingRequiredArgument,
                        "--schedule is required for --study lantern-schedule",
                    );
                }
                if a.ns.is_empty() {
                    return usage(
                        ErrorKind::MissingRequiredArgument,
                        "--ns is required for --study lantern-schedule",
                    );
                }
                if a.ns.windows(2).any(|w| w[0] >= w[1]) {
                    return usage(ErrorKind::ValueValidation, "--ns must be strictly ascending");
                }
                if !a.xbars.is_empty() {
                    return usage(
                        ErrorKind::ArgumentConflict,
                        "--xbars only applies to --study sphere-star",
                    );
                }
            }
            Study::SphereStar => {
                if a.xbars.is_empty() {
                    return usage(
                        ErrorKind::MissingRequiredArgument,
                        "--xbars is required for --study sphere-star",
                    );
                }
                if a.schedule.is_some() || !a.ns.is_empty() {
                    return usage(
                        ErrorKind::ArgumentConflict,
                        "--schedule and --ns only apply to --study lantern-schedule",
                    );
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argv(s: &str) -> Vec<String> {
        std::iter::once("arclen".to_string())
            .chain(s.split_whitespace().map(String::from))
            .collect()
    }

    #[test]
    fn lantern_command() {
        let cli = parse(argv("lantern --n 8 --m 4 --corrected --format csv")).unwrap();
        let Command::Lantern(a) = cli.command else {
            panic!("wrong subcommand")
        };
        assert_eq!((a.n, a.m, a.corrected, a.output.format), (8, 4, true, Format::Csv));
        assert!(a.output.output.is_none());
    }

    #[test]
    fn lantern_validation() {
        let err = parse(argv("lantern --n 2 --m 1")).unwrap_err();
        assert_eq!(err.kind(), ErrorKind::ValueValidation);
        assert!(parse(argv("lantern --n 3 --m 0")).is_err());
        assert!(parse(argv("lantern --n 8 --m 4 --bogus")).is_err());
    }

    #[test]
    fn verify_theorem_ladder() {
        let cli = parse(argv("verify-theorem --surface sphere --scales 0.4,0.2,0.1,0.05")).unwrap();
        let Command::VerifyTheorem(a) = cli.command else {
            panic!("wrong subcommand")
        };
        assert_eq!(a.scales, vec![0.4, 0.2, 0.1, 0.05]);
        assert_eq!(a.surface, SurfaceKind::Sphere);
        assert_eq!(a.radius, 1.0);
        let cli =
            parse(argv("verify-theorem --surface cylinder --direction-angle -0.5 --scales 0.1,0.2,0.4"))
                .unwrap();
        let Command::VerifyTheorem(a) = cli.command else {
            panic!("wrong subcommand")
        };
        assert_eq!(a.direction_angle, -0.5);
        assert!(parse(argv("verify-theorem --surface sphere --scales 0.4,-0.2")).is_err());
        assert!(parse(argv("verify-theorem --surface torus --scales 0.4")).is_err());
    }

    #[test]
    fn sweep_requirements() {
        assert!(parse(argv("sweep --study lantern-schedule --ns 8,16,32")).is_err());
        assert!(parse(argv("sweep --study lantern-schedule --schedule m-eq-n --ns 16,8")).is_err());
        assert!(parse(argv("sweep --study sphere-star")).is_err());
        assert!(parse(argv("sweep --study lantern-schedule --schedule m-const:0 --ns 8,16")).is_err());
        let cli = parse(argv("sweep --study lantern-schedule --schedule m-const:2 --ns 8,16,32")).unwrap();
        let Command::Sweep(a) = cli.command else {
            panic!("wrong subcommand")
        };
        assert_eq!(a.schedule, Some(Schedule::MConst(2)));
        assert!(parse(argv("sweep --study sphere-star --xbars 0.1,0.2 --corrected")).is_ok());
        assert!(parse(argv("sphere-star --xbars 0.5,1.0")).is_err());
    }
}
