//! The bundled examples and their golden reports.

use std::fs;
use std::path::{Path, PathBuf};

use crate::commands::{run, Command, Options};

/// Directory of the corpus shipped with the crate.
pub fn default_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub file: String,
    pub command: Command,
    pub options: Options,
    pub flags: Vec<String>,
}

impl Entry {
    /// `and.primes-height-1.json` for `and.igm primes --height 1`.
    pub fn golden_name(&self) -> String {
        let stem = self.file.rsplit_once('.').map_or(self.file.as_str(), |(s, _)| s);
        let mut parts = vec![self.command.name().to_string()];
        parts.extend(self.flags.iter().map(|f| f.trim_start_matches('-').to_string()));
        format!("{stem}.{}.json", parts.join("-"))
    }

    pub fn label(&self) -> String {
        let mut s = format!("{} {}", self.file, self.command.name());
        for f in &self.flags {
            s.push(' ');
            s.push_str(f);
        }
        s
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("manifest line {line}: {message}")]
    Manifest { line: usize, message: String },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

fn io(path: &Path) -> impl FnOnce(std::io::Error) -> CorpusError + '_ {
    move |source| CorpusError::Io { path: path.display().to_string(), source }
}

pub fn manifest(dir: &Path) -> Result<Vec<Entry>, CorpusError> {
    let path = dir.join("manifest.txt");
    let text = fs::read_to_string(&path).map_err(io(&path))?;
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |message: String| CorpusError::Manifest { line: i + 1, message };
        let words: Vec<&str> = line.split_whitespace().collect();
        if words.len() < 2 {
            return Err(bad("expected a file and a command".into()));
        }
        let command = Command::from_name(words[1]).ok_or_else(|| bad(format!("unknown command `{}`", words[1])))?;
        let mut options = Options::default();
        let flags = &words[2..];
        if !flags.len().is_multiple_of(2) {
            return Err(bad("flags come in pairs".into()));
        }
        for pair in flags.chunks(2) {
            let n: usize = pair[1].parse().map_err(|_| bad(format!("`{}` is not a number", pair[1])))?;
            match pair[0] {
                "--height" => options.height = n,
                "--bound" => options.bound = Some(n),
                "--degree" => options.degree = n,
                f => return Err(bad(format!("unknown flag `{f}`"))),
            }
        }
        out.push(Entry { file: words[0].into(), command, options, flags: flags.iter().map(|s| s.to_string()).collect() });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Mismatch,
    MissingGolden,
    Blessed,
    Failed(String),
}

/// Evaluates every entry (concurrently) and compares or rewrites the
/// golden reports. Results come back in manifest order.
pub fn check(dir: &Path, bless: bool) -> Result<Vec<(Entry, Outcome)>, CorpusError> {
    let entries = manifest(dir)?;
    let outcomes: Vec<Outcome> = std::thread::scope(|scope| {
        let handles: Vec<_> = entries.iter().map(|e| scope.spawn(move || evaluate(dir, e, bless))).collect();
        handles.into_iter().map(|h| h.join().unwrap_or_else(|_| Outcome::Failed("panicked".into()))).collect()
    });
    Ok(entries.into_iter().zip(outcomes).collect())
}

fn evaluate(dir: &Path, e: &Entry, bless: bool) -> Outcome {
    let input = dir.join(&e.file);
    let text = match fs::read_to_string(&input) {
        Ok(t) => t,
        Err(err) => return Outcome::Failed(format!("{}: {err}", input.display())),
    };
    let report = match run(e.command, &e.file, &text, &e.options) {
        Ok(r) => r.pretty_json(),
        Err(err) => return Outcome::Failed(err.to_string()),
    };
    let golden = dir.join("golden").join(e.golden_name());
    if bless {
        return match fs::write(&golden, report) {
            Ok(()) => Outcome::Blessed,
            Err(err) => Outcome::Failed(format!("{}: {err}", golden.display())),
        };
    }
    match fs::read_to_string(&golden) {
        Ok(expected) if expected == report => Outcome::Pass,
        Ok(_) => Outcome::Mismatch,
        Err(_) => Outcome::MissingGolden,
    }
}
