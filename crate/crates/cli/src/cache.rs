use std::fs;
use std::io::ErrorKind;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::report::Report;

/// JSON results on disk, one file per distinct request.
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(dir).map_err(|source| CliError::Cache {
            path: dir.to_path_buf(),
            source,
        })?;
        if !dir.is_dir() {
            return Err(CliError::Cache {
                path: dir.to_path_buf(),
                source: ErrorKind::NotADirectory.into(),
            });
        }
        Ok(Cache { dir: dir.to_path_buf() })
    }

    /// `<command>-<first 16 hex digits of sha256(key)>.json`.
    pub fn path(&self, command: &str, key: &str) -> PathBuf {
        let digest = Sha256::digest(key.as_bytes());
        let hex: String = digest.iter().take(8).map(|b| format!("{b:02x}")).collect();
        self.dir.join(format!("{command}-{hex}.json"))
    }

    pub fn load(&self, command: &str, key: &str) -> Result<Option<Report>, CliError> {
        let path = self.path(command, key);
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == ErrorKind::NotFound => return Ok(None),
            Err(source) => return Err(CliError::Cache { path, source }),
        };
        let r: Report = serde_json::from_slice(&bytes).map_err(|source| CliError::CacheFormat { path, source })?;
        Ok((r.command == command).then_some(r))
    }

    pub fn store(&self, command: &str, key: &str, r: &Report) -> Result<(), CliError> {
        let path = self.path(command, key);
        let mut s = serde_json::to_string_pretty(r).expect("report serializes");
        s.push('\n');
        // write then rename so a reader never sees half a file
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, s)
            .and_then(|_| fs::rename(&tmp, &path))
            .map_err(|source| CliError::Cache { path, source })
    }
}
