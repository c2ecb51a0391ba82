//! The `kripke` command-line front end.
//!
//! Exit codes: 0 success, 1 a checked property or ledger row failed,
//! 2 usage or input error. Errors go to stderr as `CODE: message`.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra::{parse_equation, FiniteBao};
use crate::corpus::{self, FamilySpec};
use crate::correspondents::{
    check_5n, check_chain, check_e52_upto, check_in, check_un, check_widstar, frame_props, segerberg_classify,
};
use crate::error::Error;
use crate::formula::{parse, parse_unchecked, Signature};
use crate::frames::{Frame, Model};
use crate::semantics::{satisfies, truth_set, valid_at_point, valid_on_frame, DEFAULT_BUDGET};

#[derive(Debug, Parser)]
#[command(name = "kripke", version, about = "Finite Kripke frames, modal axioms and their frame conditions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Parse a formula and print its normal form.
    Parse {
        formula: String,
        /// Comma-separated modality names to check against.
        #[arg(long)]
        sig: Option<String>,
    },
    /// Evaluate a formula in a model, at one world or everywhere.
    Check {
        #[arg(short = 'm', long = "model")]
        model: PathBuf,
        #[arg(short = 'f', long)]
        formula: String,
        #[arg(short = 'w', long)]
        world: Option<String>,
    },
    /// Frame validity by exhaustive valuation search.
    Valid {
        #[arg(short = 'F', long = "frame")]
        frame: PathBuf,
        #[arg(short = 'f', long)]
        formula: String,
        /// Validity at this world only.
        #[arg(short = 'w', long)]
        world: Option<String>,
        #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
    },
    /// Check a first-order frame condition directly.
    Corr {
        #[arg(short = 'F', long = "frame")]
        frame: PathBuf,
        #[arg(long, value_enum)]
        cond: Cond,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Modality (defaults to the first in the signature).
        #[arg(short = 'm', long = "modality")]
        modality: Option<String>,
        /// The boxed-inside modality of U_n (defaults to `-m`).
        #[arg(long)]
        black: Option<String>,
        /// Root world for `segerberg`.
        #[arg(short = 'w', long)]
        world: Option<String>,
    },
    /// Antichain or achronal width of a set of worlds.
    Width {
        #[arg(short = 'F', long = "frame")]
        frame: PathBuf,
        #[arg(short = 'm', long = "modality")]
        modality: String,
        /// Comma-separated world names (defaults to all worlds).
        #[arg(long)]
        set: Option<String>,
        #[arg(long)]
        achronal: bool,
    },
    /// Generate a family frame (as JSON) or a named formula.
    Gen {
        #[arg(long, conflicts_with = "formula", required_unless_present = "formula")]
        family: Option<String>,
        #[arg(long)]
        formula: Option<String>,
        /// Comma-separated integer parameters.
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long, default_value = "d")]
        sig: String,
        #[arg(long, requires = "family")]
        out: Option<PathBuf>,
    },
    /// Complex algebras, ultrafilter frames and equations.
    Dual {
        #[arg(short = 'F', long = "frame", conflicts_with = "algebra", required_unless_present = "algebra")]
        frame: Option<PathBuf>,
        #[arg(short = 'A', long = "algebra")]
        algebra: Option<PathBuf>,
        /// `complex` or `roundtrip` with -F; `frame`, `sigma` or `eq` with -A.
        action: String,
        /// The equation `lhs = rhs` for `eq`.
        equation: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
    },
    /// Recompute the claim ledger.
    Reproduce {
        #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Cond {
    #[value(name = "5n")]
    FiveN,
    E52,
    Un,
    In,
    Chain,
    Widstar,
    Props,
    Segerberg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

enum Failure {
    Io(String),
    Model(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Model(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Outcome = std::result::Result<bool, Failure>;

/// Runs one invocation; `args[0]` is the program name. Returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                0
            } else {
                let _ = write!(err, "{}", e.render());
                2
            };
        }
    };
    match dispatch(cli.cmd, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "E_IO: {msg}");
            2
        }
        Err(Failure::Model(e)) => {
            let _ = writeln!(err, "{}: {e}", e.code());
            2
        }
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_frame(path: &Path) -> std::result::Result<Frame, Failure> {
    Ok(Frame::from_json_str(&read(path)?)?)
}

fn list(text: &str) -> Vec<String> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect()
}

fn params(text: &str) -> std::result::Result<Vec<usize>, Failure> {
    list(text)
        .iter()
        .map(|p| p.parse().map_err(|_| Error::BadParameter(format!("`{p}` is not a natural number")).into()))
        .collect()
}

fn dispatch(cmd: Cmd, out: &mut dyn Write) -> Outcome {
    match cmd {
        Cmd::Parse { formula, sig } => {
            let phi = match sig {
                Some(s) => parse(&formula, &Signature::new(list(&s))?)?,
                None => parse_unchecked(&formula)?,
            };
            writeln!(out, "{phi}")?;
            Ok(true)
        }
        Cmd::Check { model, formula, world } => {
            let m = Model::from_json_str(&read(&model)?)?;
            let phi = parse(&formula, m.frame.sig())?;
            match world {
                Some(w) => {
                    let b = satisfies(&m, &w, &phi)?;
                    writeln!(out, "{}", if b { "TRUE" } else { "FALSE" })?;
                    Ok(b)
                }
                None => {
                    let s = truth_set(&m, &phi)?;
                    writeln!(out, "{{{}}}", m.frame.names_of(&s).join(","))?;
                    Ok(s.count() == m.frame.len())
                }
            }
        }
        Cmd::Valid {
            frame,
            formula,
            world,
            budget,
        } => {
            let fr = load_frame(&frame)?;
            let phi = parse(&formula, fr.sig())?;
            let v = match world {
                Some(w) => valid_at_point(&fr, &w, &phi, budget)?,
                None => valid_on_frame(&fr, &phi, budget)?,
            };
            match &v.witness {
                None => writeln!(out, "VALID")?,
                Some(w) => writeln!(out, "INVALID {}", w.describe(&fr))?,
            }
            Ok(v.valid)
        }
        Cmd::Corr {
            frame,
            cond,
            n,
            modality,
            black,
            world,
        } => {
            let fr = load_frame(&frame)?;
            let m = modality.unwrap_or_else(|| fr.sig().names()[0].clone());
            let report = match cond {
                Cond::FiveN => check_5n(&fr, n, &m)?,
                Cond::E52 => check_e52_upto(&fr, &m, n)?,
                Cond::Un => check_un(&fr, n, &m, black.as_deref().unwrap_or(&m))?,
                Cond::In => check_in(&fr, n, &m)?,
                Cond::Chain => check_chain(&fr, &m)?,
                Cond::Widstar => check_widstar(&fr, n, &m)?,
                Cond::Props => {
                    let p = frame_props(&fr, &m)?;
                    writeln!(
                        out,
                        "reflexive={} transitive={} symmetric={}",
                        p.reflexive, p.transitive, p.symmetric
                    )?;
                    return Ok(true);
                }
                Cond::Segerberg => {
                    let w = world.unwrap_or_else(|| fr.world_name(0).to_string());
                    writeln!(out, "{}", segerberg_classify(&fr, &w, &m)?)?;
                    return Ok(true);
                }
            };
            writeln!(out, "{report}")?;
            Ok(report.holds)
        }
        Cmd::Width {
            frame,
            modality,
            set,
            achronal,
        } => {
            let fr = load_frame(&frame)?;
            let s = match set {
                Some(names) => fr.set_of(&list(&names))?,
                None => fr.all_worlds(),
            };
            let w = if achronal {
                fr.achronal_width(&modality, &s)?
            } else {
                fr.antichain_width(&modality, &s)?
            };
            writeln!(out, "{w}")?;
            Ok(true)
        }
        Cmd::Gen {
            family,
            formula,
            params: p,
            sig,
            out: path,
        } => {
            let p = params(&p)?;
            if let Some(name) = family {
                let fr = corpus::gen_frame(&FamilySpec::from_name(&name, &p)?)?;
                let json = fr.to_json();
                match path {
                    Some(path) => std::fs::write(&path, json + "\n")
                        .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
                    None => writeln!(out, "{json}")?,
                }
            } else if let Some(name) = formula {
                for phi in corpus::formulas::gen_formula(&name, &p, &Signature::new(list(&sig))?)? {
                    writeln!(out, "{phi}")?;
                }
            }
            Ok(true)
        }
        Cmd::Dual {
            frame,
            algebra,
            action,
            equation,
            budget,
        } => {
            if let Some(path) = frame {
                let fr = load_frame(&path)?;
                let a = FiniteBao::complex_algebra(&fr);
                return match action.as_str() {
                    "complex" => {
                        writeln!(out, "{}", a.to_json())?;
                        Ok(true)
                    }
                    "roundtrip" => {
                        let iso = a.ultrafilter_frame().isomorphism(&fr).is_some();
                        writeln!(out, "{}", if iso { "ISOMORPHIC" } else { "NOT ISOMORPHIC" })?;
                        Ok(iso)
                    }
                    other => Err(Error::BadParameter(format!("unknown frame action `{other}`")).into()),
                };
            }
            let path = algebra.expect("clap requires -F or -A");
            let a = FiniteBao::from_json_str(&read(&path)?)?;
            match action.as_str() {
                "frame" => writeln!(out, "{}", a.ultrafilter_frame().to_json())?,
                "sigma" => writeln!(out, "{}", a.canonical_extension().to_json())?,
                "eq" => {
                    let (lhs, rhs) = parse_equation(&equation.join(" "))?;
                    let v = a.validates_equation(&lhs, &rhs, budget)?;
                    match v.witness {
                        None => writeln!(out, "HOLDS")?,
                        Some(w) => {
                            let parts: Vec<String> = w
                                .iter()
                                .map(|(k, s)| {
                                    let names: Vec<&str> = s.iter().map(|i| a.atoms()[i].as_str()).collect();
                                    format!("v{k}={{{}}}", names.join(","))
                                })
                                .collect();
                            writeln!(out, "FAILS {}", parts.join(" "))?;
                        }
                    }
                    return Ok(v.holds);
                }
                other => return Err(Error::BadParameter(format!("unknown algebra action `{other}`")).into()),
            }
            Ok(true)
        }
        Cmd::Reproduce { budget, format } => {
            let claims = corpus::reproduce_claims(budget);
            match format {
                Format::Tsv => write!(out, "{}", corpus::ledger_tsv(&claims))?,
                Format::Json => writeln!(out, "{}", corpus::ledger_json(&claims))?,
            }
            Ok(claims.iter().all(|c| c.passed()))
        }
    }
}
