//! Command-line front end for `foamhom`.

pub mod corpus;
pub mod json;

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use foamhom::arith::GaussianPolynomial;
use foamhom::complex::{euler_characteristic, ChainComplex, CubeContext, Mode};
use foamhom::diagram::LinkDiagram;
use foamhom::homology::{homology_at, Coefficients, Homology, HomologyError, Strategy};
use foamhom::moves::{apply, candidates, MoveError};
use foamhom::oracle::verify_mirror_relation;
use foamhom::reduce::simplify;
use foamhom::state::{jones, quantum_sl2};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Validation(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Validation(m) | CliError::Internal(m) => m,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "foamhom", version, about = "Foam-based sl(2) link homology over Z[i]")]
pub struct Cli {
    /// Worker threads for cube construction (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CoeffArg {
    Zi,
    Qi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Faithful,
    Khovanov,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Faithful => Mode::Faithful,
            ModeArg::Khovanov => Mode::KhovanovStyle,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Jones polynomial in q (t = q^2).
    Jones {
        pd: String,
        /// Divide by q + q^-1.
        #[arg(long)]
        normalized: bool,
    },
    /// Homology table as JSON.
    Homology {
        pd: String,
        #[arg(long, default_value_t = 0)]
        a: i64,
        #[arg(long, value_enum, default_value = "zi")]
        coeff: CoeffArg,
        /// Simplify over Z[i][a] before specialising.
        #[arg(long)]
        reduce: bool,
        #[arg(long, value_enum, default_value = "faithful")]
        mode: ModeArg,
    },
    /// Compares the graded Euler characteristic with the quantum sl(2) polynomial.
    EulerCheck {
        pd: String,
        #[arg(long, value_enum, default_value = "faithful")]
        mode: ModeArg,
    },
    /// Evaluates a closed foam given as JSON.
    EvalFoam { file: String },
    /// Compares homology with the independent Khovanov computation of the mirror.
    CheckMirror { pd: String },
    /// Applies Reidemeister rewrites and compares homology tables at a = 0.
    ReidTest {
        pd: String,
        /// Number of rewrites to try; 0 tries every applicable one.
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Generators and differentials as JSON.
    DumpComplex {
        pd: String,
        #[arg(long)]
        reduce: bool,
        #[arg(long, value_enum, default_value = "faithful")]
        mode: ModeArg,
    },
}

/// Builds the complex with edge maps computed on the rayon pool.
pub fn build_complex_parallel(d: &LinkDiagram, mode: Mode) -> Result<ChainComplex<GaussianPolynomial>, CliError> {
    let internal = |e: foamhom::complex::ComplexError| CliError::Internal(e.to_string());
    let ctx = CubeContext::new(d, mode).map_err(|e| CliError::Validation(e.to_string()))?;
    let edges = ctx
        .edge_list()
        .par_iter()
        .map(|&(s, c)| ctx.edge(s, c))
        .collect::<Result<Vec<_>, _>>()
        .map_err(internal)?;
    Ok(ctx.into_cube(edges).complex())
}

fn checked_complex(d: &LinkDiagram, mode: Mode) -> Result<ChainComplex<GaussianPolynomial>, CliError> {
    let c = build_complex_parallel(d, mode)?;
    if let Err(h) = c.verify_d_squared() {
        return Err(CliError::Internal(format!("d^2 != 0 leaving degree {}", h)));
    }
    if let Err((h, r, col)) = c.verify_homogeneous() {
        return Err(CliError::Internal(format!("inhomogeneous entry ({}, {}) leaving degree {}", r, col, h)));
    }
    Ok(c)
}

/// Homology of a diagram; with `reduce` the complex is simplified over
/// `Z[i][a]` first.
pub fn compute_homology(
    d: &LinkDiagram,
    a: i64,
    coeff: Coefficients,
    reduce: bool,
    mode: Mode,
) -> Result<Homology, CliError> {
    let c = checked_complex(d, mode)?;
    let (c, strategy) = if reduce { (simplify(c).0, Strategy::Eliminate) } else { (c, Strategy::Direct) };
    homology_at(&c, a, coeff, strategy).map_err(|e| match e {
        HomologyError::BadSpecialisation(_) | HomologyError::IntegralAtOne => CliError::Usage(e.to_string()),
    })
}

fn coefficients(c: CoeffArg) -> Coefficients {
    match c {
        CoeffArg::Zi => Coefficients::GaussianIntegers,
        CoeffArg::Qi => Coefficients::GaussianRationals,
    }
}

/// Output of one invocation.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    if let Some(n) = cli.threads {
        // A pool may already exist when called repeatedly in one process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let mut stderr = String::new();
    match execute(cli.command, &mut stderr) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr },
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message());
            Outcome { code: e.exit_code(), stdout: String::new(), stderr }
        }
    }
}

fn execute(cmd: Command, stderr: &mut String) -> Result<(i32, String), CliError> {
    match cmd {
        Command::Jones { pd, normalized } => {
            let d = corpus::resolve(&pd)?;
            Ok((EXIT_OK, format!("{}\n", jones(&d, normalized))))
        }
        Command::Homology { pd, a, coeff, reduce, mode } => {
            let d = corpus::resolve(&pd)?;
            let h = compute_homology(&d, a, coefficients(coeff), reduce, mode.into())?;
            if h.groups.values().any(|g| !g.torsion.is_empty()) {
                stderr.push_str("note: torsion is listed by invariant factors over Z[i]; 2 = -i(1+i)^2\n");
            }
            Ok((EXIT_OK, json::homology_table(&h) + "\n"))
        }
        Command::EulerCheck { pd, mode } => {
            let d = corpus::resolve(&pd)?;
            let c = checked_complex(&d, mode.into())?;
            let chi = euler_characteristic(&c);
            let p = quantum_sl2(&d);
            let out = format!("euler: {}\nsl2:   {}\n", chi, p);
            if chi == p {
                Ok((EXIT_OK, out + "ok\n"))
            } else {
                Ok((EXIT_INTERNAL, out + "mismatch\n"))
            }
        }
        Command::EvalFoam { file } => {
            let text = std::fs::read_to_string(&file).map_err(|e| CliError::Validation(format!("{}: {}", file, e)))?;
            let foam = json::parse_foam(&text)?;
            Ok((EXIT_OK, format!("{}\n", foamhom::foamval::evaluate_foam(&foam))))
        }
        Command::CheckMirror { pd } => {
            let d = corpus::resolve(&pd)?;
            match verify_mirror_relation(&d).map_err(|e| CliError::Internal(e.to_string()))? {
                Ok(n) => Ok((EXIT_OK, format!("pass ({} bidegrees compared)\n", n))),
                Err(m) => Ok((
                    EXIT_INTERNAL,
                    format!("fail at ({},{}): ours {} vs oracle {}\n", m.h, m.q, json::group(&m.ours), json::group(&m.theirs)),
                )),
            }
        }
        Command::ReidTest { pd, count, seed } => {
            let d = corpus::resolve(&pd)?;
            let (ok, lines) = reidemeister_test(&d, count, seed)?;
            Ok((if ok { EXIT_OK } else { EXIT_INTERNAL }, lines))
        }
        Command::DumpComplex { pd, reduce, mode } => {
            let d = corpus::resolve(&pd)?;
            let c = checked_complex(&d, mode.into())?;
            let c = if reduce { simplify(c).0 } else { c };
            Ok((EXIT_OK, json::complex(&c) + "\n"))
        }
    }
}

/// Applies up to `count` rewrites (all when `count == 0`) chosen by `seed`,
/// comparing integral homology at `a = 0` with that of `d`.
pub fn reidemeister_test(d: &LinkDiagram, count: usize, seed: u64) -> Result<(bool, String), CliError> {
    let base = compute_homology(d, 0, Coefficients::GaussianIntegers, true, Mode::Faithful)?;
    let mut moves = candidates(d);
    if count > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        moves.shuffle(&mut rng);
    }
    let mut out = String::new();
    let mut all_ok = true;
    let mut done = 0;
    for mv in moves {
        if count > 0 && done == count {
            break;
        }
        let e = match apply(d, mv) {
            Ok(e) => e,
            Err(MoveError::Orientation) => continue,
            Err(err) => return Err(CliError::Internal(format!("{:?}: {}", mv, err))),
        };
        let h = compute_homology(&e, 0, Coefficients::GaussianIntegers, true, Mode::Faithful)?;
        let ok = h == base;
        all_ok &= ok;
        done += 1;
        let _ = writeln!(out, "{} {:?} {}", if ok { "same" } else { "DIFFERENT" }, mv, e.to_pd_string());
    }
    let _ = writeln!(out, "{} of {} rewrites preserve homology", out.lines().filter(|l| l.starts_with("same")).count(), done);
    Ok((all_ok, out))
}
