//! The command-line front end: validation, normalization, translation,
//! equivalence checking, law suites, decomposition and Graphviz export.
//!
//! Exit codes: 0 on success, 1 when a law suite finds a counterexample or
//! an equivalence check answers no, 2 on parse, type or validation errors.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::comb::interpret;
use crate::decompose::{command_of, decomposition};
use crate::error::{Error, Result};
use crate::laws::run_suites;
use crate::monad::{flatten, is_two_level};
use crate::mu::mu_normal_form;
use crate::operad::{SelfAlgebra, TreeModel};
use crate::parse::{
    parse_comb_file, parse_mu_file, parse_tree_file, print_comb_file, print_mu_file,
    print_tree_file,
};
use crate::rewrite::normal_form_trace;
use crate::translate::{comb_to_mu, mu_equiv, phi, translate_command};

/// Exit status for a counterexample or a negative equivalence answer.
const EXIT_COUNTEREXAMPLE: i32 = 1;
/// Exit status for parse, type and validation errors.
const EXIT_INVALID: i32 = 2;

#[derive(Parser)]
#[command(name = "cyclop", version, about = "A workbench for unrooted decorated trees and their calculus of commands")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a tree file and classify it; non-trees report their defect.
    Validate { file: PathBuf },
    /// Eliminate the special corollas of a tree file.
    Nf {
        file: PathBuf,
        /// Print each contraction step.
        #[arg(long)]
        trace: bool,
    },
    /// Reduce a command file to its normal form.
    MuNf { file: PathBuf },
    /// Print the canonical representative of a tree's class.
    AlphaCanon { file: PathBuf },
    /// Evaluate a composition script (a combinator over let-bound trees).
    Compose { file: PathBuf },
    /// Open the corolla brackets of a two-level tree file.
    Flatten { file: PathBuf },
    /// Translate between the command, combinator and tree languages.
    Translate {
        #[arg(long, value_parser = ["mu", "comb"])]
        from: String,
        #[arg(long, value_parser = ["mu", "comb", "tree"])]
        to: String,
        file: PathBuf,
    },
    /// Evaluate a command or combinator file to its tree class.
    Eval {
        #[arg(long, default_value = "mu", value_parser = ["mu", "comb"])]
        from: String,
        file: PathBuf,
    },
    /// Decide whether two command files denote the same class.
    Equiv { a: PathBuf, b: PathBuf },
    /// Split a tree at a corolla into its head and plucked pieces.
    Decompose {
        file: PathBuf,
        /// Zero-based corolla index.
        #[arg(long)]
        at: usize,
    },
    /// Extract the normal-form command denoting a tree, headed at a corolla.
    CommandOf {
        file: PathBuf,
        #[arg(long)]
        at: usize,
    },
    /// Run seeded law suites.
    Laws {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Size bound; defaults to $CYCLOP_LAWS_BOUND or 4.
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Instances per law.
        #[arg(long, default_value_t = 100)]
        instances: usize,
        /// Emit the report as JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Export a tree file as Graphviz.
    Dot {
        file: PathBuf,
        #[arg(short)]
        o: PathBuf,
    },
}

pub fn run(args: impl Iterator<Item = String>) -> i32 {
    let mut argv = vec!["cyclop".to_string()];
    argv.extend(args);
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are successful exits.
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INVALID
        }
    }
}

fn read(file: &PathBuf) -> Result<String> {
    std::fs::read_to_string(file)
        .map_err(|e| Error::Validation(format!("cannot read {}: {e}", file.display())))
}

fn dispatch(cmd: Cmd) -> Result<i32> {
    match cmd {
        Cmd::Validate { file } => {
            let (_, t) = parse_tree_file(&read(&file)?)?;
            let kind = t.classify();
            println!("{kind}");
            if kind.is_tree() {
                println!(
                    "free variables: {}",
                    crate::var::format_set(&t.free_vars())
                );
                Ok(0)
            } else {
                Ok(EXIT_INVALID)
            }
        }
        Cmd::Nf { file, trace } => {
            let (_, t) = parse_tree_file(&read(&file)?)?;
            if !t.classify().is_tree() {
                return Err(Error::Validation(format!("not a tree: {}", t.classify())));
            }
            let (nf, steps) = normal_form_trace(&t)?;
            if trace {
                for (i, (redex, stage)) in steps.iter().enumerate() {
                    println!("step {}: {redex}", i + 1);
                    println!("  {stage}");
                }
            }
            print!("{}", print_tree_file(&nf));
            Ok(0)
        }
        Cmd::MuNf { file } => {
            let (_, c) = parse_mu_file(&read(&file)?)?;
            let nf = mu_normal_form(&c)?;
            if nf.unit_command {
                println!("// unit command");
            }
            print!("{}", print_mu_file(&nf.command));
            Ok(0)
        }
        Cmd::AlphaCanon { file } => {
            let (_, t) = parse_tree_file(&read(&file)?)?;
            let class = t.canonicalize()?;
            print!("{}", print_tree_file(class.representative()));
            Ok(0)
        }
        Cmd::Compose { file } => {
            let (_, comb) = parse_comb_file(&read(&file)?)?;
            let class = interpret(&comb, &SelfAlgebra)?;
            print!("{}", print_tree_file(class.representative()));
            Ok(0)
        }
        Cmd::Flatten { file } => {
            let (_, t) = parse_tree_file(&read(&file)?)?;
            if !is_two_level(&t) {
                return Err(Error::Type(
                    "flattening needs every ordinary corolla decorated by a let-bound tree".into(),
                ));
            }
            print!("{}", print_tree_file(&flatten(&t)?));
            Ok(0)
        }
        Cmd::Translate { from, to, file } => {
            let text = read(&file)?;
            match (from.as_str(), to.as_str()) {
                ("mu", "mu") => {
                    let (_, c) = parse_mu_file(&text)?;
                    print!("{}", print_mu_file(&c));
                }
                ("mu", "comb") => {
                    let (_, c) = parse_mu_file(&text)?;
                    print!("{}", print_comb_file(&translate_command(&c)?));
                }
                ("mu", "tree") => {
                    let (_, c) = parse_mu_file(&text)?;
                    print!("{}", print_tree_file(phi(&c)?.representative()));
                }
                ("comb", "mu") => {
                    let (_, c) = parse_comb_file(&text)?;
                    print!("{}", print_mu_file(&comb_to_mu(&c)?));
                }
                ("comb", "comb") => {
                    let (_, c) = parse_comb_file(&text)?;
                    print!("{}", print_comb_file(&c));
                }
                ("comb", "tree") => {
                    let (_, c) = parse_comb_file(&text)?;
                    print!(
                        "{}",
                        print_tree_file(interpret(&c, &TreeModel)?.representative())
                    );
                }
                _ => unreachable!("clap validated the language names"),
            }
            Ok(0)
        }
        Cmd::Eval { from, file } => {
            let text = read(&file)?;
            let class = match from.as_str() {
                "mu" => phi(&parse_mu_file(&text)?.1)?,
                _ => interpret(&parse_comb_file(&text)?.1, &TreeModel)?,
            };
            print!("{}", print_tree_file(class.representative()));
            Ok(0)
        }
        Cmd::Equiv { a, b } => {
            let (_, ca) = parse_mu_file(&read(&a)?)?;
            let (_, cb) = parse_mu_file(&read(&b)?)?;
            if mu_equiv(&ca, &cb)? {
                println!("equivalent");
                Ok(0)
            } else {
                println!("not equivalent");
                Ok(EXIT_COUNTEREXAMPLE)
            }
        }
        Cmd::Decompose { file, at } => {
            let (_, t) = parse_tree_file(&read(&file)?)?;
            let parts = decomposition(&t, at)?;
            println!("head:");
            print!("{}", print_tree_file(&parts.head));
            for (v, piece) in &parts.pieces {
                println!("piece at {v} (entry {}):", piece.entry);
                print!("{}", print_tree_file(&piece.subtree));
            }
            Ok(0)
        }
        Cmd::CommandOf { file, at } => {
            let (_, t) = parse_tree_file(&read(&file)?)?;
            print!("{}", print_mu_file(&command_of(&t, at)?));
            Ok(0)
        }
        Cmd::Laws { suite, bound, seed, instances, json } => {
            let bound = bound
                .or_else(|| {
                    std::env::var("CYCLOP_LAWS_BOUND")
                        .ok()
                        .and_then(|s| s.parse().ok())
                })
                .unwrap_or(4);
            let reports = run_suites(&suite, bound, instances, seed)?;
            let mut failed = false;
            for report in &reports {
                if json {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(report)
                            .map_err(|e| Error::Internal(e.to_string()))?
                    );
                } else {
                    print!("{}", report.render_text());
                }
                failed |= !report.passed();
            }
            Ok(if failed { EXIT_COUNTEREXAMPLE } else { 0 })
        }
        Cmd::Dot { file, o } => {
            let (_, t) = parse_tree_file(&read(&file)?)?;
            std::fs::write(&o, crate::dot::to_dot(&t))
                .map_err(|e| Error::Validation(format!("cannot write {}: {e}", o.display())))?;
            Ok(0)
        }
    }
}
