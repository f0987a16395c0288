//! Verdict envelope, digests and all-or-nothing file output.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const VERDICT_SCHEMA: &str = "qcover-verdict-v1";

#[derive(Debug, thiserror::Error)]
#[error("cannot write {path}: {source}")]
pub struct WriteError {
    pub path: String,
    #[source]
    pub source: std::io::Error,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// What a command produced. Nothing is written or printed until the whole
/// outcome exists.
pub struct Outcome {
    pub command: Value,
    pub input: Option<Value>,
    pub result: Value,
    pub text: String,
    pub exit_code: i32,
    pub files: Vec<(PathBuf, Vec<u8>)>,
}

impl Outcome {
    pub fn envelope(&self, elapsed_ms: Option<u128>) -> Value {
        let mut v = json!({
            "schema": VERDICT_SCHEMA,
            "command": self.command,
            "result": self.result,
        });
        if let Some(i) = &self.input {
            v["input"] = i.clone();
        }
        if let Some(ms) = elapsed_ms {
            v["timing"] = json!({ "elapsed_ms": ms as u64 });
        }
        v
    }
}

fn staging_path(target: &Path) -> PathBuf {
    let name = target.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    target.with_file_name(format!(".{name}.partial-{}", std::process::id()))
}

/// Every file is staged next to its target and renamed only once all of
/// them were written; on failure the staged files are removed.
pub fn write_all_or_nothing(files: &[(PathBuf, Vec<u8>)]) -> Result<(), WriteError> {
    let mut staged: Vec<(PathBuf, &Path)> = Vec::new();
    let cleanup = |staged: &[(PathBuf, &Path)]| {
        for (tmp, _) in staged {
            let _ = fs::remove_file(tmp);
        }
    };
    for (target, bytes) in files {
        let tmp = staging_path(target);
        let res = fs::File::create(&tmp).and_then(|mut f| {
            f.write_all(bytes)?;
            f.sync_all()
        });
        if let Err(e) = res {
            let _ = fs::remove_file(&tmp);
            cleanup(&staged);
            return Err(WriteError {
                path: target.display().to_string(),
                source: e,
            });
        }
        staged.push((tmp, target));
    }
    for (i, (tmp, target)) in staged.iter().enumerate() {
        if let Err(e) = fs::rename(tmp, target) {
            cleanup(&staged[i..]);
            return Err(WriteError {
                path: target.display().to_string(),
                source: e,
            });
        }
    }
    Ok(())
}
