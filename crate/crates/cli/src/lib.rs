//! `logw` command-line front end. [`dispatch`] runs one invocation and returns its exit
//! code and output, so tests can drive it without spawning a process.

mod args;
mod commands;
mod render;

use clap::error::ErrorKind;
use clap::Parser;
use logw_core::Error;

pub use args::{Cli, Format};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }
}

/// Output of a command that ran to completion; `verified = false` maps to exit code 1.
pub(crate) struct Report {
    pub body: String,
    pub verified: bool,
}

/// Usage problems found after parsing, such as a malformed `--lambda`.
#[derive(Debug)]
pub(crate) struct Usage(pub String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

pub fn dispatch<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text },
            };
        }
    };
    match commands::run(&cli) {
        Ok(Report { body, verified }) => Outcome {
            code: if verified { EXIT_OK } else { EXIT_MISMATCH },
            stdout: body,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e:#}\n"),
        },
    }
}

fn exit_code(e: &anyhow::Error) -> i32 {
    if e.downcast_ref::<Usage>().is_some() {
        return EXIT_USAGE;
    }
    match e.downcast_ref::<Error>() {
        Some(Error::ResourceCap { .. }) => EXIT_CAP,
        Some(
            Error::Argument(_)
            | Error::UnsupportedType { .. }
            | Error::UnsupportedSector(_)
            | Error::OrderMismatch { .. },
        ) => EXIT_USAGE,
        Some(Error::NotDivisible(_) | Error::Internal(_)) => EXIT_MISMATCH,
        None => EXIT_USAGE,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_kinds_map_to_exit_codes() {
        let cap = Error::ResourceCap { what: "Fock basis", needed: 9, cap: 1 };
        assert_eq!(exit_code(&cap.into()), EXIT_CAP);
        assert_eq!(exit_code(&Error::Argument("x".into()).into()), EXIT_USAGE);
        assert_eq!(exit_code(&Error::Internal("x".into()).into()), EXIT_MISMATCH);
        assert_eq!(exit_code(&anyhow::Error::from(Usage("x".into())).context("while parsing")), EXIT_USAGE);
        let wrapped = anyhow::Error::from(Error::NotDivisible("z".into())).context("rhs");
        assert_eq!(exit_code(&wrapped), EXIT_MISMATCH);
    }
}
