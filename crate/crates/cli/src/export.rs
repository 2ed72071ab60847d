//! CSV and JSON writers plus the content hash stamped into metadata.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::config::RunConfig;
use crate::CliError;

/// Shortest round-trip decimal; empty for undefined values.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x}")
    } else {
        String::new()
    }
}

/// Git-style object hash: SHA-256 over `"blob <len>\0"` followed by the bytes.
pub fn content_hash(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(format!("blob {}\0", bytes.len()).as_bytes());
    hasher.update(bytes);
    hex::encode(hasher.finalize())
}

/// Collects the files a command writes, in write order.
#[derive(Debug, Default)]
pub struct Artifacts {
    dir: PathBuf,
    pub written: Vec<PathBuf>,
}

impl Artifacts {
    pub fn new(dir: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
        Ok(Self {
            dir: dir.to_path_buf(),
            written: Vec::new(),
        })
    }

    fn write(&mut self, name: &str, bytes: &[u8]) -> Result<(), CliError> {
        let path = self.dir.join(name);
        fs::write(&path, bytes).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
        self.written.push(path);
        Ok(())
    }

    /// RFC 4180 CSV with a header row; headers carry units in brackets.
    pub fn csv(&mut self, name: &str, header: &[&str], rows: &[Vec<String>]) -> Result<(), CliError> {
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::CRLF)
            .from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Io(format!("{name}: {e}"));
        writer.write_record(header).map_err(io)?;
        for row in rows {
            writer.write_record(row).map_err(io)?;
        }
        let bytes = writer.into_inner().map_err(|e| CliError::Io(format!("{name}: {e}")))?;
        self.write(name, &bytes)
    }

    pub fn json(&mut self, name: &str, value: &Value) -> Result<(), CliError> {
        let mut bytes = serde_json::to_vec_pretty(value).map_err(|e| CliError::Io(format!("{name}: {e}")))?;
        bytes.push(b'\n');
        self.write(name, &bytes)
    }

    pub fn svg(&mut self, name: &str, document: &str) -> Result<(), CliError> {
        self.write(name, document.as_bytes())
    }
}

/// Metadata block shared by every JSON output: the resolved config and its hash.
pub fn metadata(command: &str, config: &RunConfig, results: impl Serialize) -> Result<Value, CliError> {
    let config_bytes = serde_json::to_vec(config).map_err(|e| CliError::Io(e.to_string()))?;
    let results = serde_json::to_value(results).map_err(|e| CliError::Io(e.to_string()))?;
    Ok(json!({
        "tool": "slideocam",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "config": config,
        "config_hash": content_hash(&config_bytes),
        "results": results,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_matches_git_object_format() {
        // SHA-256 of b"blob 6\0hello\n", as a sha256 git repository stores it
        assert_eq!(
            content_hash(b"hello\n"),
            "2cf8d83d9ee29543b34a87727421fdecb7e3f3a183d337639025de576db9ebb4"
        );
    }

    #[test]
    fn csv_quotes_per_rfc_4180() {
        let dir = std::env::temp_dir().join(format!("slideocam-export-{}", std::process::id()));
        let mut out = Artifacts::new(&dir).unwrap();
        out.csv("t.csv", &["a [mm]", "b"], &[vec!["1".into(), "x,\"y\"".into()]])
            .unwrap();
        let text = fs::read_to_string(dir.join("t.csv")).unwrap();
        assert_eq!(text, "a [mm],b\r\n1,\"x,\"\"y\"\"\"\r\n");
        fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn numbers_round_trip() {
        assert_eq!(num(0.1), "0.1");
        assert_eq!(num(f64::NAN), "");
        let x = 653.8312345678901;
        assert_eq!(num(x).parse::<f64>().unwrap(), x);
    }
}
