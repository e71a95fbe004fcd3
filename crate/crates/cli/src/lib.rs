//! Command-line front end for the `solidangle` library.
//!
//! The binary is a thin wrapper around [`run`]; everything here writes to a
//! caller-supplied sink so it can be exercised from tests.

use std::f64::consts::PI;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;
use solidangle::montecarlo::{CapIntersection, GENERATOR};
use solidangle::random::random_star_polygon;
use solidangle::{
    cones_intersection_with, curve_solid_angle, estimate_parallel, polygon_solid_angle, polygon_solid_angle_naive,
    CircleCurve, ConePair, LadderConfig, QuadratureConfig, SphericalPolygon, UnitVector, Vec3, FULL_SPHERE,
};

#[derive(Debug, Parser)]
#[command(
    name = "solidangle",
    version,
    about = "Solid angles of polygonal, curved and circular cones"
)]
pub struct Cli {
    /// Read all angle arguments in degrees instead of radians.
    #[arg(long, global = true)]
    pub degrees: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solid angle of the polygonal cone whose edge directions are listed in FILE.
    Polycone {
        /// One direction per line as three reals; `#` starts a comment line.
        file: PathBuf,
    },
    /// Solid angle of the intersection of two circular cones.
    Intersect {
        #[arg(long, allow_hyphen_values = true)]
        theta1: f64,
        #[arg(long, allow_hyphen_values = true)]
        theta2: f64,
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        /// Also print both cone solid angles and their union.
        #[arg(long)]
        verbose: bool,
    },
    /// Sweep the inter-axis angle over [0, π] and print CSV.
    Sweep {
        #[arg(long, allow_hyphen_values = true)]
        theta1: f64,
        #[arg(long, allow_hyphen_values = true)]
        theta2: f64,
        #[arg(long, default_value_t = 64)]
        steps: usize,
        #[arg(long, default_value_t = 1_000_000)]
        mc_samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Time the product formula against the per-vertex arctangent sum.
    Bench {
        #[arg(long, default_value_t = 100_000)]
        vertices: usize,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Integrate the circular cone of half-angle THETA by quadrature.
    CurveCircle {
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Compute(#[from] solidangle::Error),

    #[error("writing output: {0}")]
    Output(#[source] io::Error),
}

impl CliError {
    /// 0 success, 2 usage/input/domain errors, 3 numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Compute(solidangle::Error::QuadratureNonConvergence { .. }) => 3,
            _ => 2,
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Output(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Plain decimal with 13 significant digits (scientific below 1e-4).
///
/// Output never depends on the process locale.
pub fn format_value(x: f64) -> String {
    if x == 0.0 {
        return "0.000000000000".to_owned();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    if magnitude < -4 {
        return format!("{x:.12e}");
    }
    let decimals = (12 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Parses a polygon file: one direction per non-comment line.
pub fn parse_polygon(text: &str) -> CliResult<Vec<UnitVector>> {
    let mut vertices = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(CliError::Parse {
                line,
                message: format!("expected 3 numbers, found {} fields in {content:?}", fields.len()),
            });
        }
        let mut xyz = [0.0; 3];
        for (slot, field) in xyz.iter_mut().zip(&fields) {
            *slot = field.parse().map_err(|_| CliError::Parse {
                line,
                message: format!("{field:?} is not a number"),
            })?;
        }
        let v = UnitVector::from_direction(Vec3::from(xyz)).map_err(|e| CliError::Parse {
            line,
            message: e.to_string(),
        })?;
        vertices.push(v);
    }
    Ok(vertices)
}

pub fn read_polygon(path: &Path) -> CliResult<SphericalPolygon> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    let vertices = parse_polygon(&text)?;
    Ok(SphericalPolygon::new(vertices)?)
}

/// One row of the α-sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub alpha: f64,
    pub omega_exact: f64,
    pub omega_linear: f64,
    pub omega_mc: f64,
    pub mc_stderr: f64,
}

pub const SWEEP_HEADER: &str = "alpha,omega_exact,omega_linear,omega_mc,mc_stderr";

impl SweepRow {
    pub fn to_csv(&self) -> String {
        [
            self.alpha,
            self.omega_exact,
            self.omega_linear,
            self.omega_mc,
            self.mc_stderr,
        ]
        .map(format_value)
        .join(",")
    }
}

fn cap(theta: f64) -> f64 {
    FULL_SPHERE * (0.5 * theta).sin().powi(2)
}

/// Straight line between the touching configurations: full containment at
/// α = |θ₁ − θ₂| and the far-side tangency, constant outside.
///
/// The far tangency is at α = θ₁ + θ₂ with value 0, or, when the caps cannot
/// separate (θ₁ + θ₂ > π), at α = 2π − θ₁ − θ₂ with value Ω₁ + Ω₂ − 4π.
pub fn linear_approximation(theta1: f64, theta2: f64, alpha: f64) -> f64 {
    let (o1, o2) = (cap(theta1), cap(theta2));
    let (a0, y0) = ((theta1 - theta2).abs(), o1.min(o2));
    let (a1, y1) = if theta1 + theta2 <= PI {
        (theta1 + theta2, 0.0)
    } else {
        (2.0 * PI - theta1 - theta2, o1 + o2 - FULL_SPHERE)
    };
    if alpha <= a0 || a1 <= a0 {
        y0
    } else if alpha >= a1 {
        y1
    } else {
        y0 + (y1 - y0) * (alpha - a0) / (a1 - a0)
    }
}

pub fn sweep_rows(
    theta1: f64,
    theta2: f64,
    steps: usize,
    mc_samples: u64,
    seed: u64,
    threads: usize,
) -> CliResult<Vec<SweepRow>> {
    if steps < 2 {
        return Err(CliError::Usage(format!("--steps must be at least 2, got {steps}")));
    }
    ConePair::new(theta1, theta2, 0.0)?;
    (0..steps)
        .map(|k| {
            let alpha = if k + 1 == steps {
                PI
            } else {
                PI * k as f64 / (steps - 1) as f64
            };
            let pair = ConePair::new(theta1, theta2, alpha)?;
            let exact = cones_intersection_with(&pair, &LadderConfig::default())?.omega.value();
            let mc = estimate_parallel(
                &CapIntersection::from_pair(&pair),
                mc_samples,
                seed.wrapping_add(k as u64),
                threads,
            )?;
            Ok(SweepRow {
                alpha,
                omega_exact: exact,
                omega_linear: linear_approximation(theta1, theta2, alpha),
                omega_mc: mc.omega_hat,
                mc_stderr: mc.stderr,
            })
        })
        .collect()
}

/// Timings from [`bench`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchReport {
    pub vertices: usize,
    pub reps: usize,
    pub product_seconds: f64,
    pub naive_seconds: f64,
    pub difference: f64,
    pub product_seconds_doubled: f64,
}

impl BenchReport {
    pub fn doubling_ratio(&self) -> f64 {
        self.product_seconds_doubled / self.product_seconds
    }
}

fn seconds_per_call(reps: usize, mut f: impl FnMut() -> f64) -> (f64, f64) {
    let mut value = f();
    let start = Instant::now();
    for _ in 0..reps {
        value = std::hint::black_box(f());
    }
    (start.elapsed().as_secs_f64() / reps as f64, value)
}

pub fn bench(vertices: usize, reps: usize, seed: u64) -> CliResult<BenchReport> {
    if vertices < 3 {
        return Err(CliError::Usage(format!(
            "--vertices must be at least 3, got {vertices}"
        )));
    }
    if reps == 0 {
        return Err(CliError::Usage("--reps must be positive".to_owned()));
    }
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let polygon = random_star_polygon(&mut rng, vertices, 0.3, 1.2);
    let doubled = random_star_polygon(&mut rng, 2 * vertices, 0.3, 1.2);
    let (product_seconds, fast) = seconds_per_call(reps, || polygon_solid_angle(&polygon).value());
    let (naive_seconds, slow) = seconds_per_call(reps, || polygon_solid_angle_naive(&polygon).value());
    let (product_seconds_doubled, _) = seconds_per_call(reps, || polygon_solid_angle(&doubled).value());
    Ok(BenchReport {
        vertices,
        reps,
        product_seconds,
        naive_seconds,
        difference: (fast - slow).abs(),
        product_seconds_doubled,
    })
}

fn angle(value: f64, degrees: bool) -> f64 {
    if degrees {
        value.to_radians()
    } else {
        value
    }
}

/// Executes a parsed command line, writing results to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult<()> {
    let deg = cli.degrees;
    match cli.command {
        Command::Polycone { ref file } => {
            let polygon = read_polygon(file)?;
            writeln!(out, "{}", format_value(polygon_solid_angle(&polygon).value()))?;
        }
        Command::Intersect {
            theta1,
            theta2,
            alpha,
            verbose,
        } => {
            let pair = ConePair::new(angle(theta1, deg), angle(theta2, deg), angle(alpha, deg))?;
            let omega = cones_intersection_with(&pair, &LadderConfig::default())?.omega.value();
            if verbose {
                let (o1, o2) = (pair.omega1(), pair.omega2());
                writeln!(out, "intersection {}", format_value(omega))?;
                writeln!(out, "omega1 {}", format_value(o1))?;
                writeln!(out, "omega2 {}", format_value(o2))?;
                writeln!(out, "union {}", format_value((o1 + o2 - omega).min(FULL_SPHERE)))?;
            } else {
                writeln!(out, "{}", format_value(omega))?;
            }
        }
        Command::Sweep {
            theta1,
            theta2,
            steps,
            mc_samples,
            seed,
            threads,
        } => {
            let rows = sweep_rows(angle(theta1, deg), angle(theta2, deg), steps, mc_samples, seed, threads)?;
            eprintln!("# generator: {GENERATOR}; seed {seed}; threads {}", threads.max(1));
            writeln!(out, "{SWEEP_HEADER}")?;
            for row in rows {
                writeln!(out, "{}", row.to_csv())?;
            }
        }
        Command::Bench { vertices, reps, seed } => {
            let r = bench(vertices, reps, seed)?;
            writeln!(out, "vertices {}", r.vertices)?;
            writeln!(out, "reps {}", r.reps)?;
            writeln!(out, "product_seconds_per_call {:.6e}", r.product_seconds)?;
            writeln!(out, "naive_seconds_per_call {:.6e}", r.naive_seconds)?;
            writeln!(out, "speedup {:.3}", r.naive_seconds / r.product_seconds)?;
            writeln!(out, "difference {:.3e}", r.difference)?;
            writeln!(out, "product_seconds_per_call_2n {:.6e}", r.product_seconds_doubled)?;
            writeln!(out, "doubling_ratio {:.3}", r.doubling_ratio())?;
        }
        Command::CurveCircle { theta, tol } => {
            let theta = angle(theta, deg);
            if !(theta > 0.0 && theta < PI) {
                return Err(solidangle::Error::Domain {
                    name: "theta",
                    value: theta,
                    domain: "(0, π)",
                }
                .into());
            }
            if tol.is_nan() || tol <= 0.0 {
                return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
            }
            let quad = QuadratureConfig {
                tolerance: tol,
                ..QuadratureConfig::default()
            };
            let omega = curve_solid_angle(&CircleCurve::new(theta), &quad)?;
            writeln!(out, "{}", format_value(omega.value()))?;
        }
    }
    Ok(())
}
