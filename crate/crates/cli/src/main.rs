//! `dgl`: batch driver for radical quivers, dg Leavitt algebras, the singular
//! Yoneda oracle and cohomology.
//!
//! Exit codes: 0 when every law holds, 1 on a law failure, 2 on bad input.

mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use report::Output;

#[derive(Parser, Debug)]
#[command(
    name = "dgl",
    version,
    about = "dg Leavitt algebras of finite-dimensional quiver algebras"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Field for quiver files without a `field:` line (`Q` or `Fp <prime>`).
    #[arg(long, global = true, env = "DGL_FIELD", default_value = "Q")]
    field: String,

    /// Longest path considered while completing the relations.
    #[arg(long, global = true, default_value_t = 16, value_parser = clap::value_parser!(u64).range(2..))]
    max_word_length: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum AlgebraKind {
    /// The dg Leavitt algebra `L(Q̃°)`.
    Leavitt,
    /// The tensor algebra `T_E(J*)` on the ghost arrows of `Q̃`.
    Tensor,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ElementAlgebra {
    Leavitt,
    Cohn,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the structural laws, the associativity of μ and the Yoneda oracle.
    Check {
        /// Quiver file or radical quiver JSON.
        input: PathBuf,
        /// Random trials per law.
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        /// Seed for every randomized suite.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Largest filtration (ghost length) of random oracle inputs.
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        max_filtration: u64,
        /// Largest level (real length) of random oracle inputs.
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        max_level: u64,
    },
    /// Print the radical quiver with its structure constants λ.
    RadicalQuiver {
        /// Quiver file or radical quiver JSON.
        input: PathBuf,
    },
    /// Print the dg Leavitt presentation of `L(Q̃°)`.
    Leavitt {
        /// Quiver file or radical quiver JSON.
        input: PathBuf,
    },
    /// Normal form of an element.
    NormalForm {
        /// Quiver file or radical quiver JSON.
        input: PathBuf,
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Compute in `L(Q̃°)` (normal forms) or in the Cohn algebra `C(Q̃)`.
        #[arg(long, value_enum, default_value_t = ElementAlgebra::Leavitt)]
        algebra: ElementAlgebra,
    },
    /// Product of two elements.
    Mul {
        /// Quiver file or radical quiver JSON.
        input: PathBuf,
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
        /// Compute in `L(Q̃°)` (normal forms) or in the Cohn algebra `C(Q̃)`.
        #[arg(long, value_enum, default_value_t = ElementAlgebra::Leavitt)]
        algebra: ElementAlgebra,
    },
    /// Differential of an element.
    Diff {
        /// Quiver file or radical quiver JSON.
        input: PathBuf,
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Compute in `L(Q̃°)` (normal forms) or in the Cohn algebra `C(Q̃)`.
        #[arg(long, value_enum, default_value_t = ElementAlgebra::Leavitt)]
        algebra: ElementAlgebra,
    },
    /// Cohomology dimensions per degree.
    Cohomology {
        /// Quiver file or radical quiver JSON.
        input: PathBuf,
        /// Inclusive degree range `a:b`.
        #[arg(long, default_value = "0:3", allow_hyphen_values = true)]
        degrees: String,
        /// Highest truncation level of `L(Q̃°)` examined.
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
        max_level: u64,
        /// Consecutive isomorphisms required to call a degree stable.
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        window: u64,
        /// Complex whose cohomology is computed.
        #[arg(long, value_enum, default_value_t = AlgebraKind::Leavitt)]
        algebra: AlgebraKind,
    },
    /// Randomized comparison of `L(Q̃°)` with the singular Yoneda model.
    Oracle {
        /// Quiver file or radical quiver JSON.
        input: PathBuf,
        /// Random trials per law.
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        /// Seed for every randomized suite.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Largest filtration (ghost length) of random oracle inputs.
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        max_filtration: u64,
        /// Largest level (real length) of random oracle inputs.
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        max_level: u64,
        /// Deliberately break one sign (e.g. `flip-compose`), to test the oracle itself.
        #[arg(long)]
        mutate: Option<String>,
    },
}

/// The command line as typed, for replaying failures.
fn replay_line() -> String {
    let mut parts = vec!["dgl".to_string()];
    for a in std::env::args().skip(1) {
        let plain = !a.is_empty() && a.chars().all(|c| c.is_ascii_alphanumeric() || "-_./:=,+".contains(c));
        parts.push(if plain {
            a
        } else {
            format!("'{}'", a.replace('\'', r"'\''"))
        });
    }
    parts.join(" ")
}

fn run(cli: Cli) -> Result<Output, String> {
    let field = input::parse_field(&cli.field)?;
    let max_len = cli.max_word_length as usize;
    let load = |p: &PathBuf| input::load(p, field, max_len);
    match cli.command {
        Command::Check {
            input,
            trials,
            seed,
            max_filtration,
            max_level,
        } => {
            let rq = load(&input)?;
            let cfg = dgl_core::singular_yoneda::OracleConfig {
                trials: trials as usize,
                seed,
                max_filtration: max_filtration as usize,
                max_level: max_level as usize,
            };
            Ok(report::check(&input, &rq, &cfg))
        }
        Command::RadicalQuiver { input } => Ok(report::radical(&load(&input)?)),
        Command::Leavitt { input } => Ok(report::leavitt(&load(&input)?)),
        Command::NormalForm { input, expr, algebra } => {
            report::element(&load(&input)?, algebra, report::ElementOp::NormalForm(&expr))
        }
        Command::Mul {
            input,
            left,
            right,
            algebra,
        } => report::element(&load(&input)?, algebra, report::ElementOp::Mul(&left, &right)),
        Command::Diff { input, expr, algebra } => {
            report::element(&load(&input)?, algebra, report::ElementOp::Diff(&expr))
        }
        Command::Cohomology {
            input,
            degrees,
            max_level,
            window,
            algebra,
        } => {
            let (lo, hi) = parse_degrees(&degrees)?;
            let rq = load(&input)?;
            report::cohomology(&rq, algebra, lo, hi, max_level as usize, window as usize)
        }
        Command::Oracle {
            input,
            trials,
            seed,
            max_filtration,
            max_level,
            mutate,
        } => {
            let mutation = mutate.map(|m| m.parse()).transpose()?;
            let rq = load(&input)?;
            let cfg = dgl_core::singular_yoneda::OracleConfig {
                trials: trials as usize,
                seed,
                max_filtration: max_filtration as usize,
                max_level: max_level as usize,
            };
            Ok(report::oracle(&input, &rq, &cfg, mutation))
        }
    }
}

fn parse_degrees(text: &str) -> Result<(i64, i64), String> {
    let (a, b) = text
        .split_once(':')
        .ok_or_else(|| format!("degree range `{text}` must look like a:b"))?;
    let parse = |s: &str| s.trim().parse::<i64>().map_err(|_| format!("bad degree `{s}`"));
    let (lo, hi) = (parse(a)?, parse(b)?);
    if lo > hi {
        return Err(format!("empty degree range `{text}`"));
    }
    Ok((lo, hi))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(mut out) => {
            if out.code == 1 {
                out.set_replay(replay_line());
            }
            out.print(json);
            ExitCode::from(out.code)
        }
        Err(msg) => {
            if json {
                println!("{}", serde_json::json!({ "error": msg }));
            }
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
