//! On-disk result cache: one JSON file per job, named by the SHA-256 of the
//! job key. Entries store the key itself so a hash collision or a damaged
//! file reads as a miss.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::job::Output;

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    output: Output,
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        let digest = Sha256::digest(key.as_bytes());
        let name: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        self.dir.join(format!("{name}.json"))
    }

    /// `None` on a miss, an unreadable file or a damaged entry.
    pub fn lookup(&self, key: &str) -> Option<Output> {
        let text = fs::read_to_string(self.path_for(key)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        (entry.key == key).then_some(entry.output)
    }

    /// Writes to a temporary file in the cache directory, then renames it over the entry.
    pub fn store(&self, key: &str, output: &Output) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let mut stored = output.clone();
        stored.time_ms = None;
        let entry = Entry {
            key: key.to_string(),
            output: stored,
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer(&mut tmp, &entry)?;
        tmp.write_all(b"\n")?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path_for(key)).map_err(|e| e.error)?;
        Ok(())
    }
}
