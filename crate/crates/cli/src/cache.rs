//! Persistent JSON-lines store of count records.
//!
//! A record is reused only when its `(q, d, k, method)` matches and its moduli
//! text equals the moduli the current build would use; anything else is
//! recomputed.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use superirr::counting::{record_moduli, CountMethod, CountRecord};

pub struct Cache {
    path: PathBuf,
    file: File,
}

impl Cache {
    /// Opens (creating if needed) and exclusively locks the cache file for
    /// the lifetime of the handle.
    pub fn open(path: &Path) -> Result<Self> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        }
        let file = OpenOptions::new()
            .read(true)
            .append(true)
            .create(true)
            .open(path)
            .with_context(|| format!("opening cache {}", path.display()))?;
        file.lock()
            .with_context(|| format!("locking cache {}", path.display()))?;
        Ok(Cache {
            path: path.to_path_buf(),
            file,
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// All parseable records; malformed lines are skipped.
    pub fn records(&mut self) -> Result<Vec<CountRecord>> {
        self.file.seek(SeekFrom::Start(0))?;
        let mut out = Vec::new();
        for line in BufReader::new(&self.file).lines() {
            let line = line?;
            if let Ok(rec) = serde_json::from_str::<CountRecord>(&line) {
                out.push(rec);
            }
        }
        Ok(out)
    }

    /// Latest stored record for the key whose moduli still match.
    pub fn lookup(
        &mut self,
        q: u64,
        d: u32,
        k: u32,
        method: CountMethod,
    ) -> Result<Option<CountRecord>> {
        let current = record_moduli(q, d, method)?;
        Ok(self.records()?.into_iter().rev().find(|r| {
            r.q == q && r.d == d && r.k == k && r.method == method && r.moduli == current
        }))
    }

    pub fn store(&mut self, record: &CountRecord) -> Result<()> {
        let line = serde_json::to_string(record)?;
        writeln!(self.file, "{line}")?;
        self.file.flush()?;
        Ok(())
    }
}

impl Drop for Cache {
    fn drop(&mut self) {
        let _ = self.file.unlock();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use superirr::counting::s2_formula;

    #[test]
    fn stale_moduli_are_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let mut rec = s2_formula(3, 4).unwrap();
        {
            let mut cache = Cache::open(&path).unwrap();
            rec.moduli = vec!["mid:[0,1]".into(), "top:[1,1,1]".into()];
            cache.store(&rec).unwrap();
            assert!(cache
                .lookup(3, 4, 2, CountMethod::Formula)
                .unwrap()
                .is_none());
        }
        let fresh = s2_formula(3, 4).unwrap();
        let mut cache = Cache::open(&path).unwrap();
        cache.store(&fresh).unwrap();
        assert_eq!(
            cache.lookup(3, 4, 2, CountMethod::Formula).unwrap(),
            Some(fresh)
        );
        assert_eq!(cache.records().unwrap().len(), 2);
    }
}
