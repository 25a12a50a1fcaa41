//! Session files and command execution for the `carpet-jder` binary.
//!
//! A session file names a ring `R_n(K, J)`, optional maps and derivation
//! tables, and a `[run]` section. See [`config`] for the syntax and
//! `docs/json-schema.md` for the JSON reports.

pub mod commands;
pub mod config;
pub mod session;

use std::path::{Path, PathBuf};

use carpet_jder::classify::SolverBounds;
use serde_json::{json, Value};

pub use commands::{Action, Outcome, EXIT_FAILED, EXIT_OK, EXIT_USAGE};
pub use config::{parse_config, Command, Format, ParseError, SessionConfig};
pub use session::Session;

/// Command-line settings that override the `[run]` section.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub format: Option<Format>,
    pub max_unknowns: Option<usize>,
    pub max_equations: Option<usize>,
    pub seed: Option<u64>,
}

/// Run `action` (or the file's own command) on the session in `text`.
pub fn run_text(text: &str, source: &str, action: Option<Action>, o: &Overrides) -> (Outcome, Format) {
    let config = match parse_config(text) {
        Ok(c) => c,
        Err(e) => {
            let name = action.map_or("run", Action::name);
            let out = commands::error_outcome(name, EXIT_USAGE, "parse", format!("{source}:{e}"), Value::Null);
            return (out, o.format.unwrap_or_default());
        }
    };
    let format = o.format.or(config.run.format).unwrap_or_default();
    let action = match action.or(config.run.command.map(Action::Session)) {
        Some(a) => a,
        None => {
            let out = commands::error_outcome("run", EXIT_USAGE, "input", format!("{source}: no command given"), Value::Null);
            return (out, format);
        }
    };
    let defaults = SolverBounds::default();
    let bounds = SolverBounds {
        max_unknowns: o.max_unknowns.or(config.run.max_unknowns).unwrap_or(defaults.max_unknowns),
        max_equations: o.max_equations.or(config.run.max_equations).unwrap_or(defaults.max_equations),
    };
    let out = match Session::new(config) {
        Ok(s) => commands::execute(action, &s, bounds, o.seed.unwrap_or(0)),
        Err(e) => commands::failure_outcome(action.name(), commands::Failure::Input(e)),
    };
    (out, format)
}

pub fn run_file(path: &Path, action: Option<Action>, o: &Overrides) -> (Outcome, Format) {
    match std::fs::read_to_string(path) {
        Ok(text) => run_text(&text, &path.display().to_string(), action, o),
        Err(e) => {
            let name = action.map_or("run", Action::name);
            let msg = format!("cannot read {}: {e}", path.display());
            (commands::error_outcome(name, EXIT_USAGE, "io", msg, Value::Null), o.format.unwrap_or_default())
        }
    }
}

/// Run every `*.cfg` file in `dir` with its own command and compare the exit
/// code against the file's `expect` (default 0).
pub fn run_corpus(dir: &Path, o: &Overrides) -> Outcome {
    let mut files: Vec<PathBuf> = match std::fs::read_dir(dir) {
        Ok(entries) => entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "cfg"))
            .collect(),
        Err(e) => {
            let msg = format!("cannot read {}: {e}", dir.display());
            return commands::error_outcome("corpus", EXIT_USAGE, "io", msg, Value::Null);
        }
    };
    files.sort();
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut all = true;
    for path in &files {
        let expected = std::fs::read_to_string(path)
            .ok()
            .and_then(|t| parse_config(&t).ok())
            .and_then(|c| c.run.expect)
            .unwrap_or(EXIT_OK);
        let inner = Overrides { format: None, ..o.clone() };
        let (out, _) = run_file(path, None, &inner);
        let ok = out.code == expected;
        all &= ok;
        let name = path.file_name().map_or_else(String::new, |n| n.to_string_lossy().into_owned());
        text.push_str(&format!(
            "{} {name} (exit {}, expected {expected})\n",
            if ok { "PASS" } else { "FAIL" },
            out.code
        ));
        rows.push(json!({ "file": name, "exit": out.code, "expected": expected, "ok": ok }));
    }
    text.push_str(&format!("corpus: {} files, {}\n", files.len(), if all { "all as expected" } else { "mismatches" }));
    Outcome {
        code: if all { EXIT_OK } else { EXIT_FAILED },
        json: json!({ "command": "corpus", "files": rows, "verdict": all }),
        text,
    }
}

/// The report as it is printed.
pub fn render(out: &Outcome, format: Format) -> String {
    match format {
        Format::Text => out.text.clone(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&out.json).expect("reports serialize");
            s.push('\n');
            s
        }
    }
}
