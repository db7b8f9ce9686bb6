use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use igm_cli::commands::{run, Command, Options, RunError, SCHEMA};
use igm_cli::corpus::{self, Outcome};
use serde_json::json;

#[derive(Parser)]
#[command(name = "igm", version, about = "Monoids of IG-type: torsion, primes and maximal orders")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    report: Format,
    /// Exit with status 1 unless the command establishes this property
    /// (torsion-free, torsion, maximal-order, not-maximal-order, ybe,
    /// witness, cover, bijective, valid).
    #[arg(long, global = true)]
    expect: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the presentation, the action and the cocycle.
    Validate { file: PathBuf },
    /// Decide whether the group of fractions is torsion-free.
    Torsion {
        file: PathBuf,
        /// Box radius for the finite normal subgroup search.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Primes of S of the given height.
    Primes {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        height: usize,
    },
    /// Decide whether S is a maximal order.
    MaximalOrder { file: PathBuf },
    /// Check the braid relation and non-degeneracy of an I-type relation set.
    Ybe { file: PathBuf },
    /// Derive the permutations and the group of an I-type relation set.
    Sigma {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        degree: usize,
    },
    /// Build and verify the cover by a monoid of I-type.
    Cover {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        degree: usize,
    },
    /// Search an element outside S stabilizing an ideal.
    Witness {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        bound: usize,
    },
    /// Run the bundled examples against their golden reports.
    Corpus {
        #[arg(long)]
        dir: Option<PathBuf>,
        /// Rewrite the golden reports.
        #[arg(long)]
        bless: bool,
    },
}

fn fail(value: serde_json::Value) -> ExitCode {
    eprintln!("{value}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut opts = Options::default();
    let (command, file) = match cli.command {
        Cmd::Validate { file } => (Command::Validate, file),
        Cmd::Torsion { file, bound } => {
            opts.bound = bound;
            (Command::Torsion, file)
        }
        Cmd::Primes { file, height } => {
            opts.height = height;
            (Command::Primes, file)
        }
        Cmd::MaximalOrder { file } => (Command::MaximalOrder, file),
        Cmd::Ybe { file } => (Command::Ybe, file),
        Cmd::Sigma { file, degree } => {
            opts.degree = degree;
            (Command::Sigma, file)
        }
        Cmd::Cover { file, degree } => {
            opts.degree = degree;
            (Command::Cover, file)
        }
        Cmd::Witness { file, bound } => {
            opts.bound = Some(bound);
            (Command::Witness, file)
        }
        Cmd::Corpus { dir, bless } => return corpus_command(dir, bless, cli.report),
    };
    let name = file.file_name().map_or_else(|| file.display().to_string(), |n| n.to_string_lossy().into_owned());
    let text = match std::fs::read_to_string(&file) {
        Ok(t) => t,
        Err(e) => {
            let kind = "io";
            return fail(json!({ "schema": SCHEMA, "input": name, "error": { "kind": kind, "line": null, "message": e.to_string() } }));
        }
    };
    let report = match run(command, &name, &text, &opts) {
        Ok(r) => r,
        Err(e @ RunError::Document(_)) | Err(e @ RunError::WrongKind { .. }) => return fail(e.json(&name)),
    };
    match cli.report {
        Format::Json => print!("{}", report.pretty_json()),
        Format::Text => print!("{}", report.text()),
    }
    match cli.expect {
        None => ExitCode::SUCCESS,
        Some(p) => match report.properties.get(p.as_str()) {
            Some(true) => ExitCode::SUCCESS,
            Some(false) => ExitCode::from(1),
            None => fail(json!({
                "schema": SCHEMA,
                "input": name,
                "error": { "kind": "unknown-property", "line": null, "message": format!("`{}` does not decide `{p}`", command.name()) },
            })),
        },
    }
}

fn corpus_command(dir: Option<PathBuf>, bless: bool, format: Format) -> ExitCode {
    let dir = dir.unwrap_or_else(corpus::default_dir);
    let results = match corpus::check(&dir, bless) {
        Ok(r) => r,
        Err(e) => {
            return fail(json!({ "schema": SCHEMA, "error": { "kind": "corpus", "line": null, "message": e.to_string() } }))
        }
    };
    let ok = results.iter().all(|(_, o)| matches!(o, Outcome::Pass | Outcome::Blessed));
    let status = |o: &Outcome| match o {
        Outcome::Pass => "pass".to_string(),
        Outcome::Blessed => "blessed".to_string(),
        Outcome::Mismatch => "mismatch".to_string(),
        Outcome::MissingGolden => "missing golden".to_string(),
        Outcome::Failed(m) => format!("failed: {m}"),
    };
    match format {
        Format::Json => {
            let entries: Vec<_> = results
                .iter()
                .map(|(e, o)| json!({ "entry": e.label(), "golden": e.golden_name(), "status": status(o) }))
                .collect();
            let body = json!({ "schema": SCHEMA, "command": "corpus", "passed": ok, "entries": entries });
            println!("{}", serde_json::to_string_pretty(&body).expect("serializable"));
        }
        Format::Text => {
            let width = results.iter().map(|(e, _)| e.label().len()).max().unwrap_or(0);
            for (e, o) in &results {
                println!("{:<width$}  {}", e.label(), status(o));
            }
        }
    }
    if ok { ExitCode::SUCCESS } else { ExitCode::from(1) }
}
