use std::fmt::{self, Display, Write as _};
use std::path::Path;

use sha2::{Digest, Sha256};

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Resource(String),
}

impl Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) | Failure::Resource(m) => f.write_str(m),
        }
    }
}

impl From<trop_core::Error> for Failure {
    fn from(e: trop_core::Error) -> Self {
        if e.is_resource_limit() {
            Failure::Resource(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

/// `key value` lines, led by the version and the digest of every input.
pub struct Report {
    lines: String,
    pub verdict: bool,
}

impl Report {
    pub fn new() -> Self {
        let mut lines = String::new();
        writeln!(lines, "version {}", env!("CARGO_PKG_VERSION")).unwrap();
        Report {
            lines,
            verdict: true,
        }
    }

    pub fn digest(&mut self, bytes: &[u8]) {
        let hex: String = Sha256::digest(bytes)
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect();
        self.line("input_digest", format_args!("sha256:{hex}"));
    }

    pub fn line(&mut self, key: &str, value: impl Display) {
        writeln!(self.lines, "{key} {value}").unwrap();
    }

    pub fn text(&self) -> &str {
        &self.lines
    }
}

/// Reads a file and records its digest.
pub fn read_input(report: &mut Report, path: &Path) -> Result<String, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    report.digest(text.as_bytes());
    Ok(text)
}

pub fn write_output(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}
