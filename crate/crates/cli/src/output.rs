//! Output plumbing. Every command renders its full result to one string;
//! `write_output` then emits it to a file or stdout in a single call, so
//! failures cannot leave partial files behind.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{CliError, CliResult};

/// Version tag carried as the first line of every CSV file.
pub const CSV_SCHEMA_COMMENT: &str = "# qreact-csv v1";

/// Shortest round-trip decimal form; identical inputs give identical text.
pub fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

/// Optional value rendered as an empty CSV field when absent.
pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

pub fn write_output(path: Option<&Path>, content: &str) -> CliResult<()> {
    match path {
        Some(path) => fs::write(path, content).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(content.as_bytes())
                .and_then(|_| lock.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_round_trips() {
        for &x in &[0.0, 1.0, 0.05, 1.0 / 3.0, 2.0_f64.sqrt(), 1e-12] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(fmt_opt(None), "");
    }
}
