use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fano_bigness::certify::{build_class, evaluate_model};
use fano_bigness::enumerative::{all_counts, CurveDG};
use fano_bigness::models::{validate, ModelError, Registry};
use fano_bigness::report::{build_table, check_corollary, check_threshold, render, Format};

/// Bigness certificates for tangent bundles of Fano threefolds of Picard number 2.
#[derive(Parser)]
#[command(name = "fano-bigness", version)]
struct Cli {
    /// JSON array of model records that replace or extend the built-in registry.
    #[arg(long, global = true, value_name = "PATH")]
    models: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify every model and print the table.
    Table {
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
    },
    /// Verify one model and print its certificate.
    Check {
        id: String,
        #[arg(long)]
        subcase: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Print the classes a model's certificate uses for one family tag.
    Class {
        #[arg(long)]
        model: String,
        #[arg(long)]
        family: String,
    },
    /// Enumerative counts for a space curve of degree d and genus g.
    Enum {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        g: i64,
    },
    /// Check every model's invariants.
    Validate,
}

const FAIL: u8 = 1;
const USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

type Outcome = Result<(), (u8, String)>;

fn load(path: Option<&PathBuf>) -> Result<Registry, (u8, String)> {
    match path {
        None => Ok(Registry::builtin().clone()),
        Some(p) => Registry::with_override_file(p).map_err(|e| match e {
            ModelError::Invalid { .. } => (FAIL, e.to_string()),
            _ => (USAGE, e.to_string()),
        }),
    }
}

fn run(cli: Cli) -> Outcome {
    let registry = load(cli.models.as_ref())?;
    let fail = |e: &dyn std::fmt::Display| (FAIL, e.to_string());
    match cli.command {
        Command::Table { format } => {
            let rows = build_table(&registry).map_err(|e| fail(&e))?;
            check_threshold(&rows).map_err(|e| fail(&e))?;
            check_corollary(&rows).map_err(|e| fail(&e))?;
            print!("{}", render(&rows, format));
        }
        Command::Check { id, subcase, json } => {
            let m = registry.get(&id, subcase.as_deref()).map_err(|e| (USAGE, e.to_string()))?;
            let v = evaluate_model(m).map_err(|e| fail(&format!("{}: {e}", m.label())))?;
            if json {
                println!("{}", serde_json::to_string_pretty(&v).expect("verdict serializes"));
            } else {
                println!("{} {} ({}, anchor {})", m.label(), v.value(), m.recipe.kind(), v.anchor());
                println!("{}", m.description);
            }
            if v.value() != m.expected_verdict {
                return Err(fail(&format!("{} verified {} but {} was expected", m.label(), v.value(), m.expected_verdict)));
            }
        }
        Command::Class { model, family } => {
            let m = registry.get(&model, None).map_err(|e| (USAGE, e.to_string()))?;
            let mut refs: Vec<_> = Vec::new();
            for r in m.recipe.class_refs().into_iter().filter(|r| r.tag() == family) {
                if !refs.contains(&r) {
                    refs.push(r);
                }
            }
            if refs.is_empty() {
                let tags: Vec<&str> = m.recipe.class_refs().iter().map(|r| r.tag()).collect();
                return Err((USAGE, format!("{} has no {family} class; available: {}", m.label(), tags.join(", "))));
            }
            for r in refs {
                let b = build_class(m, r).map_err(|e| fail(&e))?;
                println!("{family}: {}", b.class);
                println!("{}", serde_json::to_string(&b.class).expect("class serializes"));
            }
        }
        Command::Enum { d, g } => {
            let c = CurveDG::new(d, g).map_err(|e| (USAGE, e.to_string()))?;
            println!("{}", serde_json::to_string_pretty(&all_counts(c)).expect("counts serialize"));
        }
        Command::Validate => {
            let mut bad = 0;
            for m in registry.models() {
                for v in validate(m) {
                    println!("{}: {v}", m.label());
                    bad += 1;
                }
            }
            if bad > 0 {
                return Err((FAIL, format!("{bad} violations")));
            }
            println!("{} models valid", registry.models().len());
        }
    }
    Ok(())
}
