//! `isow`: generate, classify and verify linear Weingarten surfaces of
//! revolution in isotropic 3-space.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parameter error.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod spec;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use isoweingarten::mesh::{self, DEFAULT_PRECISION};
use isoweingarten::verify::{self, Suite, Tolerances};
use isoweingarten::{classify, CurvatureConvention, Error};

use spec::{parse_number, Range, Relation, Samples, SurfaceSpec};

#[derive(Parser)]
#[command(name = "isow", version, about = "Linear Weingarten surfaces of revolution in isotropic 3-space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Obj,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    Paper,
    Half,
}

impl From<Convention> for CurvatureConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Paper => CurvatureConvention::Paper,
            Convention::Half => CurvatureConvention::Half,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Tessellate a surface and write an OBJ mesh or a curvature CSV.
    Generate {
        /// case-i:m0,C,branch | case-ii:m0,c3 | case-iii:m0,n0,C,branch | paraboloid:A,B,C,D | profile-file:path
        #[arg(long, allow_hyphen_values = true)]
        spec: String,
        /// lo,hi (default 0.1,3)
        #[arg(long, allow_hyphen_values = true)]
        u_range: Option<String>,
        /// lo,hi (default 0,2pi with the right end left open)
        #[arg(long, allow_hyphen_values = true)]
        v_range: Option<String>,
        #[arg(long, default_value = "65x129")]
        samples: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "obj")]
        format: Format,
        /// Decimal places written for every number.
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: usize,
        #[arg(long, value_enum, default_value = "paper")]
        convention: Convention,
    },
    /// List the families that can satisfy K = m0*H + n0.
    Classify {
        #[arg(allow_hyphen_values = true)]
        m0: String,
        #[arg(allow_hyphen_values = true)]
        n0: String,
    },
    /// Print K, H and the Weingarten Jacobian at one point.
    Curvature {
        #[arg(long, allow_hyphen_values = true)]
        spec: String,
        #[arg(allow_hyphen_values = true)]
        u: String,
        #[arg(allow_hyphen_values = true)]
        v: String,
        #[arg(long, allow_hyphen_values = true)]
        u_range: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        v_range: Option<String>,
        #[arg(long, value_enum, default_value = "paper")]
        convention: Convention,
    },
    /// Run a seeded property suite: residual | jacobian | invariance | integrator | all.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        tol_residual: Option<f64>,
        #[arg(long)]
        tol_relation: Option<f64>,
        #[arg(long)]
        tol_jacobian: Option<f64>,
        #[arg(long)]
        tol_distance: Option<f64>,
        #[arg(long)]
        tol_invariance: Option<f64>,
        #[arg(long)]
        tol_integrator: Option<f64>,
    },
}

enum Failure {
    Usage(Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn opt_range(s: Option<String>) -> Result<Option<Range>, Error> {
    s.map(|s| s.parse()).transpose()
}

/// Shortest decimal that survives 12 significant digits.
fn short(x: f64) -> String {
    let r: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    if r == 0.0 {
        "0".to_string()
    } else if r.abs() < 1e-4 || r.abs() >= 1e15 {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

fn run(cmd: Command) -> Result<(), Failure> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cmd {
        Command::Generate { spec, u_range, v_range, samples, out: path, format, precision, convention } => {
            let spec: SurfaceSpec = spec.parse()?;
            let samples: Samples = samples.parse()?;
            let u = opt_range(u_range)?.unwrap_or(spec::DEFAULT_U);
            let built = spec::build(&spec, Some(u), opt_range(v_range)?)?;
            let mesh = mesh::tessellate(&built.surface, samples.nu, samples.nv, convention.into())?;
            let file = File::create(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            match format {
                Format::Obj => mesh::write_obj(&mesh, precision, &mut w)?,
                Format::Csv => mesh::write_curvature_csv(&mesh, precision, &mut w)?,
            }
            w.flush().map_err(Error::from)?;
            print_relation(&mut out, &built.relation)?;
            let d = built.surface.domain();
            writeln!(
                out,
                "wrote {} vertices, {} triangles over u in [{}, {}] to {}",
                mesh.vertices.len(),
                mesh.triangles.len(),
                short(d.u.lo),
                short(d.u.hi),
                path.display()
            )
            .map_err(Error::from)?;
        }
        Command::Classify { m0, n0 } => {
            let c = classify(parse_number(&m0)?, parse_number(&n0)?)?;
            let tags: Vec<String> = c.tags.iter().map(|t| t.to_string()).collect();
            writeln!(out, "{}", if tags.is_empty() { "(none)".to_string() } else { tags.join(" ") })
                .map_err(Error::from)?;
            for note in &c.notes {
                writeln!(out, "  {note}").map_err(Error::from)?;
            }
        }
        Command::Curvature { spec, u, v, u_range, v_range, convention } => {
            let spec: SurfaceSpec = spec.parse()?;
            let (u, v) = (parse_number(&u)?, parse_number(&v)?);
            let built = spec::build(&spec, opt_range(u_range)?, opt_range(v_range)?)?;
            let s = &built.surface;
            let conv = convention.into();
            let (k, h) = s.curvatures(u, v, conv)?;
            let jac = match s.weingarten_jacobian(u, v, isoweingarten::numeric::fd::jacobian_step(u), conv) {
                Ok(j) => short(j),
                Err(_) => "n/a".to_string(),
            };
            writeln!(out, "K={} H={} jac={jac}", short(k), short(h)).map_err(Error::from)?;
        }
        Command::Verify {
            suite,
            seed,
            tol_residual,
            tol_relation,
            tol_jacobian,
            tol_distance,
            tol_invariance,
            tol_integrator,
        } => {
            let suite: Suite = suite.parse()?;
            let d = Tolerances::default();
            let tol = Tolerances {
                residual: tol_residual.unwrap_or(d.residual),
                relation: tol_relation.unwrap_or(d.relation),
                jacobian: tol_jacobian.unwrap_or(d.jacobian),
                distance: tol_distance.unwrap_or(d.distance),
                invariance: tol_invariance.unwrap_or(d.invariance),
                integrator: tol_integrator.unwrap_or(d.integrator),
            };
            let reports = verify::run(suite, seed, &tol);
            for r in &reports {
                writeln!(out, "{r}").map_err(Error::from)?;
            }
            if reports.iter().any(|r| !r.passed()) {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

fn print_relation(out: &mut impl Write, r: &Relation) -> Result<(), Error> {
    match *r {
        Relation::Exact { tag, m0, n0 } => {
            writeln!(out, "case {tag}")?;
            writeln!(out, "K=m0*H+n0 with m0={} n0={}", short(m0), short(n0))?;
        }
        Relation::Fitted { tag, m0, n0, max_dev } => {
            writeln!(out, "case {}", tag.map_or("unclassified".to_string(), |t| t.to_string()))?;
            writeln!(out, "fitted K=m0*H+n0 with m0={} n0={} max_dev={}", short(m0), short(n0), short(max_dev))?;
        }
    }
    Ok(())
}
