//! Resolutions on disk, one file per key, named by the SHA-256 of the key.
//!
//! A file is a checksum line followed by the body. Anything that fails the
//! checksum is removed and treated as a miss.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use linkage_core::ResolutionCache;
use sha2::{Digest, Sha256};

pub const ENV_VAR: &str = "LINKAGE_LAB_CACHE";

pub struct DiskCache {
    dir: PathBuf,
    hits: AtomicUsize,
    misses: AtomicUsize,
}

fn digest(s: &str) -> String {
    hex::encode(Sha256::digest(s.as_bytes()))
}

impl DiskCache {
    pub fn open(dir: impl Into<PathBuf>) -> std::io::Result<DiskCache> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(DiskCache {
            dir,
            hits: AtomicUsize::new(0),
            misses: AtomicUsize::new(0),
        })
    }

    /// `--cache-dir` wins over the environment; neither means no cache.
    pub fn resolve_dir(flag: Option<&Path>) -> Option<PathBuf> {
        flag.map(Path::to_path_buf).or_else(|| {
            std::env::var_os(ENV_VAR)
                .filter(|v| !v.is_empty())
                .map(PathBuf::from)
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{}.res", digest(key)))
    }

    pub fn hits(&self) -> usize {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> usize {
        self.misses.load(Ordering::Relaxed)
    }

    fn read(&self, key: &str) -> Option<String> {
        let path = self.path_for(key);
        let text = fs::read_to_string(&path).ok()?;
        let valid = text
            .split_once('\n')
            .filter(|(sum, body)| *sum == digest(&format!("{key}\n{body}")))
            .map(|(_, body)| body.to_string());
        if valid.is_none() {
            eprintln!("warning: discarding corrupt cache entry {}", path.display());
            let _ = fs::remove_file(&path);
        }
        valid
    }
}

impl ResolutionCache for DiskCache {
    fn get(&self, key: &str) -> Option<String> {
        let v = self.read(key);
        let counter = if v.is_some() {
            &self.hits
        } else {
            &self.misses
        };
        counter.fetch_add(1, Ordering::Relaxed);
        v
    }

    fn put(&self, key: &str, value: &str) {
        let path = self.path_for(key);
        if path.exists() {
            return;
        }
        // unique temp name, then an atomic rename; concurrent writers race harmlessly
        let tmp = self.dir.join(format!(
            ".{}.{}.{:?}.tmp",
            digest(key),
            std::process::id(),
            std::thread::current().id()
        ));
        let sum = digest(&format!("{key}\n{value}"));
        let written = fs::File::create(&tmp).and_then(|mut f| {
            write!(f, "{sum}\n{value}")?;
            f.sync_all()
        });
        match written.and_then(|_| fs::rename(&tmp, &path)) {
            Ok(()) => {}
            Err(e) => {
                let _ = fs::remove_file(&tmp);
                eprintln!(
                    "warning: could not write cache entry {}: {e}",
                    path.display()
                );
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn put_get_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let c = DiskCache::open(dir.path()).unwrap();
        assert_eq!(c.get("k"), None);
        c.put("k", "body\nline2");
        c.put("k", "ignored");
        assert_eq!(c.get("k").as_deref(), Some("body\nline2"));
        assert_eq!((c.hits(), c.misses()), (1, 1));

        let path = c.path_for("k");
        let text = fs::read_to_string(&path).unwrap();
        fs::write(&path, text.replace("line2", "line3")).unwrap();
        assert_eq!(c.get("k"), None);
        assert!(!path.exists());
        c.put("k", "fresh");
        assert_eq!(c.get("k").as_deref(), Some("fresh"));
    }

    #[test]
    fn keys_do_not_collide() {
        let dir = tempfile::tempdir().unwrap();
        let c = DiskCache::open(dir.path()).unwrap();
        c.put("a", "1");
        c.put("b", "2");
        assert_eq!(c.get("a").as_deref(), Some("1"));
        assert_eq!(c.get("b").as_deref(), Some("2"));
        // a file moved under another key's name fails the checksum
        fs::copy(c.path_for("a"), c.path_for("b")).unwrap();
        assert_eq!(c.get("b"), None);
    }
}
