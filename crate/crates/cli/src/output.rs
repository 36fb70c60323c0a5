use std::path::Path;
use std::process::ExitCode;

use serde_json::Value;

/// Process exit statuses. Most questions here are only semi-decidable, so
/// "no" and "don't know" are kept apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Affirmative = 0,
    Negative = 1,
    Inconclusive = 2,
    Usage = 64,
}

impl From<Exit> for ExitCode {
    fn from(e: Exit) -> Self {
        ExitCode::from(e as u8)
    }
}

pub struct Report {
    pub exit: Exit,
    pub json: Value,
    /// When set, `--json` prints these one per line instead of `json`.
    pub json_lines: Option<Vec<Value>>,
    pub text: String,
    /// Witness file written by `--out` in place of the JSON report.
    pub artifact: Option<String>,
}

impl Report {
    pub fn new(exit: Exit, json: Value, text: String) -> Self {
        Report {
            exit,
            json,
            json_lines: None,
            text,
            artifact: None,
        }
    }

    pub fn with_artifact(mut self, artifact: Option<String>) -> Self {
        self.artifact = artifact;
        self
    }

    pub fn emit(self, json: bool, out: Option<&Path>) -> ExitCode {
        if json {
            match &self.json_lines {
                Some(lines) => {
                    for line in lines {
                        println!("{line}");
                    }
                }
                None => println!("{}", pretty(&self.json)),
            }
        } else {
            print!("{}", self.text);
            if !self.text.ends_with('\n') {
                println!();
            }
        }
        if let Some(path) = out {
            let contents = self
                .artifact
                .clone()
                .unwrap_or_else(|| format!("{}\n", pretty(&self.json)));
            if let Err(e) = std::fs::write(path, contents) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return Exit::Usage.into();
            }
        }
        self.exit.into()
    }
}

pub fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

pub struct Failure {
    pub exit: Exit,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            exit: Exit::Usage,
            message: message.into(),
        }
    }

    pub fn emit(self) -> ExitCode {
        eprintln!("error: {}", self.message);
        self.exit.into()
    }
}
