//! Command-line front end.
//!
//! [`run`] parses arguments and returns the exit code together with what
//! should go to stdout and stderr, so the whole interface can be tested
//! without spawning a process.
//!
//! Exit codes: 0 success or `true`, 1 a mathematical negative (`false`,
//! `none`, a failed extraction, a verification violation), 2 usage errors,
//! 3 domain errors.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::garside::normal_form;
use crate::jacquemard::{extract, Outcome};
use crate::oracle::{Oracle, OracleBounds};
use crate::palindrome::{decompose_with, is_palindromic_braid, square, DecomposeOptions};
use crate::par::Exec;
use crate::permutations::make_delta;
use crate::verify::{run_suite, Suite};
use crate::words::BraidWord;
use crate::{braid_equal, BraidError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Uniqueness,
    Locality,
    Corollaries,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Uniqueness => Suite::Uniqueness,
            SuiteArg::Locality => Suite::Locality,
            SuiteArg::Corollaries => Suite::Corollaries,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "braidkit", version, about = "Braid words, Garside normal forms and palindromic decompositions")]
#[command(allow_negative_numbers = true)]
pub struct CliConfig {
    /// Number of strands.
    #[arg(short = 'n', long = "strands", global = true)]
    pub strands: Option<usize>,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Oracle word-length bound; also the range of `verify`.
    #[arg(long = "max-len", global = true)]
    pub max_len: Option<usize>,

    /// Oracle strand bound.
    #[arg(long = "max-strands", global = true, default_value_t = 5)]
    pub max_strands: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Left-canonical form `D^k | [w1][w2]...`.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Equality in the braid group.
    Equal {
        #[arg(allow_hyphen_values = true)]
        u: String,
        #[arg(allow_hyphen_values = true)]
        v: String,
    },
    Reverse {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// `w·rev(w)`.
    Square {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// The Garside element.
    Delta,
    IsPalindromic {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Find `v` with `v·rev(v)` equal to the given braid.
    Decompose {
        #[arg(allow_hyphen_values = true)]
        word: String,
        /// Search Δ-shifts around inf/2 instead of trusting the parity test.
        #[arg(long)]
        no_shortcut: bool,
    },
    /// Rewrite a positive word so that it starts with the given generator.
    Extract {
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(short = 'g', long = "generator")]
        generator: usize,
    },
    /// Brute-force equality of positive words, with a rewriting certificate.
    OracleCheck {
        #[arg(allow_hyphen_values = true)]
        u: String,
        #[arg(allow_hyphen_values = true)]
        v: String,
    },
    /// Run an exhaustive verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        /// Run sweeps on one thread.
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutput {
    fn ok(code: i32, stdout: String) -> Self {
        CliOutput {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl Into<String>) -> Self {
        CliOutput {
            code: 2,
            stdout: String::new(),
            stderr: msg.into(),
        }
    }

    fn domain(err: BraidError) -> Self {
        CliOutput {
            code: 3,
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        }
    }
}

pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                CliOutput::usage(rendered)
            } else {
                CliOutput::ok(0, rendered)
            };
        }
    };
    match dispatch(&config) {
        Ok(out) => out,
        Err(Failure::Usage(msg)) => CliOutput::usage(format!("error: {msg}\n")),
        Err(Failure::Domain(e)) => CliOutput::domain(e),
    }
}

enum Failure {
    Usage(String),
    Domain(BraidError),
}

impl From<BraidError> for Failure {
    fn from(e: BraidError) -> Self {
        Failure::Domain(e)
    }
}

fn line(s: impl std::fmt::Display) -> String {
    format!("{s}\n")
}

fn bool_output(value: bool, format: Format, key: &str) -> CliOutput {
    let text = match format {
        Format::Text => line(value),
        Format::Json => line(json!({ key: value })),
    };
    CliOutput::ok(if value { 0 } else { 1 }, text)
}

fn word_output(w: &BraidWord, format: Format) -> String {
    match format {
        Format::Text => line(w),
        Format::Json => line(serde_json::to_string(w).unwrap()),
    }
}

fn dispatch(cfg: &CliConfig) -> Result<CliOutput, Failure> {
    let strands = || {
        cfg.strands
            .ok_or_else(|| Failure::Usage("--strands/-n is required".into()))
    };
    let word = |text: &str| -> Result<BraidWord, Failure> { Ok(BraidWord::parse(text, strands()?)?) };
    let fmt = cfg.format;

    let out = match &cfg.command {
        Command::Normalize { word: w } => {
            let nf = normal_form(&word(w)?);
            let text = match fmt {
                Format::Text => line(&nf),
                Format::Json => line(serde_json::to_string(&nf).unwrap()),
            };
            CliOutput::ok(0, text)
        }
        Command::Equal { u, v } => bool_output(braid_equal(&word(u)?, &word(v)?)?, fmt, "equal"),
        Command::Reverse { word: w } => CliOutput::ok(0, word_output(&word(w)?.reverse(), fmt)),
        Command::Square { word: w } => CliOutput::ok(0, word_output(&square(&word(w)?), fmt)),
        Command::Delta => {
            let d = make_delta(strands()?)?;
            CliOutput::ok(0, word_output(d.word(), fmt))
        }
        Command::IsPalindromic { word: w } => {
            bool_output(is_palindromic_braid(&word(w)?), fmt, "palindromic")
        }
        Command::Decompose { word: w, no_shortcut } => {
            let opts = DecomposeOptions {
                inf_shortcut: !no_shortcut,
            };
            match decompose_with(&word(w)?, opts)? {
                Some(d) => {
                    let text = match fmt {
                        Format::Text => format!("{}\n{}\n", d.root, d.root_normal_form),
                        Format::Json => line(json!({
                            "decomposable": true,
                            "root": d.root.to_signed(),
                            "root_nf": d.root_normal_form,
                        })),
                    };
                    CliOutput::ok(0, text)
                }
                None => {
                    let text = match fmt {
                        Format::Text => line("none"),
                        Format::Json => line(json!({ "decomposable": false })),
                    };
                    CliOutput::ok(1, text)
                }
            }
        }
        Command::Extract { word: w, generator } => {
            let r = extract(&word(w)?, *generator)?;
            let success = r.is_success();
            let text = match (fmt, &r.outcome) {
                (Format::Text, Outcome::Success(out)) => format!("{out}\n{}", r.trace),
                (Format::Text, Outcome::Failure) => line("false"),
                (Format::Json, Outcome::Success(out)) => line(json!({
                    "success": true,
                    "word": out.to_signed(),
                    "trace": r.trace.steps().iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                })),
                (Format::Json, Outcome::Failure) => line(json!({ "success": false })),
            };
            CliOutput::ok(if success { 0 } else { 1 }, text)
        }
        Command::OracleCheck { u, v } => {
            let oracle = Oracle::new(OracleBounds {
                max_len: cfg.max_len.unwrap_or(OracleBounds::default().max_len),
                max_strands: cfg.max_strands,
            });
            let cert = oracle.certificate(&word(u)?, &word(v)?)?;
            let text = match (fmt, &cert) {
                (Format::Text, Some(t)) => format!("true\n{t}"),
                (Format::Text, None) => line("false"),
                (Format::Json, c) => line(json!({
                    "equal": c.is_some(),
                    "certificate": c.as_ref().map(|t| {
                        t.steps().iter().map(|s| s.to_string()).collect::<Vec<_>>()
                    }),
                })),
            };
            CliOutput::ok(if cert.is_some() { 0 } else { 1 }, text)
        }
        Command::Verify { suite, sequential } => {
            let n = strands()?;
            if n < 2 {
                return Err(BraidError::TooFewStrands(n).into());
            }
            let max_len = cfg
                .max_len
                .ok_or_else(|| Failure::Usage("verify needs --max-len".into()))?;
            let exec = if *sequential { Exec::Sequential } else { Exec::Parallel };
            let report = run_suite((*suite).into(), n, max_len, exec);
            let text = match fmt {
                Format::Text => line(&report),
                Format::Json => line(json!({
                    "suite": report.name,
                    "checked": report.checked,
                    "violations": report.violations,
                })),
            };
            CliOutput::ok(if report.passed() { 0 } else { 1 }, text)
        }
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> CliOutput {
        run(std::iter::once("braidkit").chain(args.iter().copied()))
    }

    #[test]
    fn normalize_worked_example() {
        let out = cli(&["normalize", "1 3 3 3 3 1", "-n", "4"]);
        assert_eq!(out.code, 0);
        assert_eq!(out.stdout, "D^0 | [1 3][1 3][3][3]\n");
    }

    #[test]
    fn equality_and_palindromes() {
        assert_eq!(cli(&["equal", "1 2 1", "2 1 2", "-n", "3"]).stdout, "true\n");
        let out = cli(&["equal", "1", "2", "-n", "3"]);
        assert_eq!((out.code, out.stdout.as_str()), (1, "false\n"));
        assert_eq!(cli(&["is-palindromic", "1 3", "-n", "4"]).code, 0);
        assert_eq!(cli(&["is-palindromic", "1 2", "-n", "3"]).code, 1);
    }

    #[test]
    fn decompose_outputs() {
        let out = cli(&["decompose", "1 3", "-n", "4"]);
        assert_eq!((out.code, out.stdout.as_str()), (1, "none\n"));
        let out = cli(&["decompose", "1 3 3 3 3 1", "-n", "4", "--format", "json"]);
        assert_eq!(out.code, 0);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["decomposable"], true);
        let root: Vec<i64> = serde_json::from_value(v["root"].clone()).unwrap();
        let root = BraidWord::from_signed(4, &root).unwrap();
        assert!(braid_equal(&root, &BraidWord::positive(4, &[1, 3, 3]).unwrap()).unwrap());
        let out = cli(&["decompose", "-1 -1", "-n", "3", "--no-shortcut"]);
        assert_eq!(out.code, 0, "{out:?}");
    }

    #[test]
    fn words_out() {
        assert_eq!(cli(&["reverse", "1 -2 3", "-n", "4"]).stdout, "3 -2 1\n");
        assert_eq!(cli(&["square", "1 3", "-n", "4"]).stdout, "1 3 3 1\n");
        assert_eq!(cli(&["delta", "-n", "4"]).stdout, "1 2 3 1 2 1\n");
        assert_eq!(
            cli(&["delta", "-n", "3", "--format", "json"]).stdout,
            "{\"n\":3,\"letters\":[1,2,1]}\n"
        );
        assert_eq!(cli(&["reverse", "-1", "-n", "3"]).stdout, "-1\n");
        assert_eq!(cli(&["reverse", "", "-n", "3"]).stdout, "\n");
    }

    #[test]
    fn extract_outputs() {
        let out = cli(&["extract", "2 1 2", "-g", "1", "-n", "3"]);
        assert_eq!((out.code, out.stdout.as_str()), (0, "1 2 1\nT@0\n"));
        let out = cli(&["extract", "1 2", "-g", "2", "-n", "3"]);
        assert_eq!((out.code, out.stdout.as_str()), (1, "false\n"));
        let out = cli(&["extract", "3 1", "-g", "1", "-n", "4", "--format", "json"]);
        assert_eq!(out.stdout, "{\"success\":true,\"trace\":[\"C@0\"],\"word\":[1,3]}\n");
    }

    #[test]
    fn oracle_check_outputs() {
        let out = cli(&["oracle-check", "1 2 1", "2 1 2", "-n", "3"]);
        assert_eq!((out.code, out.stdout.as_str()), (0, "true\nT@0\n"));
        let out = cli(&["oracle-check", "1 2", "2 1", "-n", "3"]);
        assert_eq!(out.code, 1);
        let out = cli(&["oracle-check", "1 2 1 2", "1 2 1 2", "-n", "3", "--max-len", "3"]);
        assert_eq!(out.code, 3);
        assert!(out.stderr.contains("bound exceeded"));
    }

    #[test]
    fn verify_runs() {
        let out = cli(&["verify", "--suite", "locality", "--strands", "3", "--max-len", "3"]);
        assert_eq!(out.code, 0, "{out:?}");
        assert!(out.stdout.contains("violations 0"));
        let out = cli(&["verify", "--suite", "uniqueness", "-n", "3", "--max-len", "3", "--format", "json"]);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["violations"].as_array().unwrap().len(), 0);
        assert_eq!(cli(&["verify", "--suite", "locality", "-n", "3"]).code, 2);
    }

    #[test]
    fn error_codes() {
        assert_eq!(cli(&["normalize", "1 2"]).code, 2);
        assert_eq!(cli(&["frobnicate"]).code, 2);
        let out = cli(&["normalize", "4", "-n", "4"]);
        assert_eq!(out.code, 3);
        assert!(out.stderr.contains("\"4\""));
        assert_eq!(cli(&["normalize", "0", "-n", "4"]).code, 3);
        assert_eq!(cli(&["normalize", "a", "-n", "4"]).code, 3);
        assert_eq!(cli(&["extract", "1 -2", "-g", "1", "-n", "3"]).code, 3);
        assert_eq!(cli(&["delta", "-n", "1"]).code, 3);
        assert_eq!(cli(&["--help"]).code, 0);
    }

    #[test]
    fn text_and_json_agree() {
        for w in ["1 3 3 3 3 1", "-1 2 -3 2", "", "2 2 -1"] {
            let text = cli(&["normalize", w, "-n", "4"]).stdout;
            let json = cli(&["normalize", w, "-n", "4", "--format", "json"]).stdout;
            let a = crate::LeftCanonicalForm::parse(text.trim_end(), 4).unwrap();
            let b: crate::LeftCanonicalForm = serde_json::from_str(&json).unwrap();
            assert_eq!(a, b);
        }
    }
}
