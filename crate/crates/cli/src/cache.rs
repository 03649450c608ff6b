//! Content-addressed cache. An entry is a one-line JSON header followed by
//! the payload bytes; the header records the SHA-256 of both the key and the
//! payload, so a torn or edited file is detected on read.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const CODE_VERSION: &str = concat!("wcob-", env!("CARGO_PKG_VERSION"));

const EXTENSION: &str = "entry";
const QUARANTINE: &str = "quarantine";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub key: Value,
    pub key_sha256: String,
    pub payload_sha256: String,
    pub payload_len: usize,
    pub version: String,
    pub created_unix: u64,
}

/// One file of the cache directory as seen by `cache inspect`.
#[derive(Clone, Debug, Serialize)]
pub struct EntryStatus {
    pub file: String,
    pub bytes: u64,
    pub status: String,
    pub key: Option<Value>,
    pub version: Option<String>,
}

pub enum Lookup {
    Hit(Vec<u8>),
    Miss,
    /// The entry failed verification and was moved aside.
    Quarantined(String),
}

pub struct Cache {
    dir: PathBuf,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// The entry name of a key: the hash of its canonical JSON and the code
/// version.
pub fn key_hash(key: &Value) -> String {
    key_hash_for_version(key, CODE_VERSION)
}

impl Cache {
    pub fn open(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).with_context(|| format!("creating cache directory {}", dir.display()))?;
        Ok(Self { dir: dir.to_path_buf() })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, hash: &str) -> PathBuf {
        self.dir.join(format!("{hash}.{EXTENSION}"))
    }

    pub fn get(&self, key: &Value) -> Result<Lookup> {
        let hash = key_hash(key);
        let path = self.path(&hash);
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Lookup::Miss),
            Err(e) => return Err(e).with_context(|| format!("reading {}", path.display())),
        };
        match verify(&bytes, Some(&hash)) {
            Ok((_, payload)) => Ok(Lookup::Hit(payload.to_vec())),
            Err(reason) => {
                self.quarantine(&path)?;
                Ok(Lookup::Quarantined(format!("{}: {reason}", path.display())))
            }
        }
    }

    /// Writes to a temporary file in the cache directory, then renames it
    /// over the entry.
    pub fn put(&self, key: &Value, payload: &[u8]) -> Result<()> {
        let hash = key_hash(key);
        let header = Header {
            key: key.clone(),
            key_sha256: hash.clone(),
            payload_sha256: sha256_hex(payload),
            payload_len: payload.len(),
            version: CODE_VERSION.to_string(),
            created_unix: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer(&mut tmp, &header)?;
        tmp.write_all(b"\n")?;
        tmp.write_all(payload)?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path(&hash)).map_err(|e| anyhow!("installing cache entry: {e}"))?;
        Ok(())
    }

    fn quarantine(&self, path: &Path) -> Result<()> {
        let dir = self.dir.join(QUARANTINE);
        fs::create_dir_all(&dir)?;
        let name = path.file_name().ok_or_else(|| anyhow!("entry without a file name"))?;
        fs::rename(path, dir.join(name))?;
        Ok(())
    }

    fn entries(&self) -> Result<Vec<PathBuf>> {
        let mut out: Vec<PathBuf> = fs::read_dir(&self.dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == EXTENSION))
            .collect();
        out.sort();
        Ok(out)
    }

    pub fn inspect(&self) -> Result<Vec<EntryStatus>> {
        let mut out = Vec::new();
        for path in self.entries()? {
            let bytes = fs::read(&path)?;
            let stem = path.file_stem().and_then(|s| s.to_str()).map(str::to_string);
            let (status, header) = match verify(&bytes, stem.as_deref()) {
                Ok((h, _)) if h.version != CODE_VERSION => ("stale".to_string(), Some(h)),
                Ok((h, _)) => ("ok".to_string(), Some(h)),
                Err(e) => (format!("corrupt: {e}"), None),
            };
            out.push(EntryStatus {
                file: path.file_name().unwrap_or_default().to_string_lossy().into_owned(),
                bytes: bytes.len() as u64,
                status,
                key: header.as_ref().map(|h| h.key.clone()),
                version: header.map(|h| h.version),
            });
        }
        Ok(out)
    }

    /// Removes corrupt and stale entries, the quarantine, and with `all`
    /// every entry. Returns the removed file names.
    pub fn gc(&self, all: bool) -> Result<Vec<String>> {
        let mut removed = Vec::new();
        for e in self.inspect()? {
            if all || e.status != "ok" {
                fs::remove_file(self.dir.join(&e.file))?;
                removed.push(e.file);
            }
        }
        let q = self.dir.join(QUARANTINE);
        if q.is_dir() {
            let mut names: Vec<String> = fs::read_dir(&q)?
                .filter_map(|e| e.ok())
                .map(|e| format!("{QUARANTINE}/{}", e.file_name().to_string_lossy()))
                .collect();
            names.sort();
            fs::remove_dir_all(&q)?;
            removed.extend(names);
        }
        Ok(removed)
    }
}

/// Splits an entry into header and payload and checks both hashes.
fn verify<'a>(bytes: &'a [u8], expected_key: Option<&str>) -> Result<(Header, &'a [u8])> {
    let split = bytes.iter().position(|&b| b == b'\n').ok_or_else(|| anyhow!("no header line"))?;
    let header: Header = serde_json::from_slice(&bytes[..split]).context("unreadable header")?;
    let payload = &bytes[split + 1..];
    if payload.len() != header.payload_len {
        bail!("payload has {} bytes, header says {}", payload.len(), header.payload_len);
    }
    if sha256_hex(payload) != header.payload_sha256 {
        bail!("payload hash mismatch");
    }
    if key_hash_for_version(&header.key, &header.version) != header.key_sha256 {
        bail!("key hash mismatch");
    }
    if let Some(k) = expected_key {
        if k != header.key_sha256 {
            bail!("entry is filed under the wrong key");
        }
    }
    Ok((header, payload))
}

fn key_hash_for_version(key: &Value, version: &str) -> String {
    let canonical = serde_json::to_string(&serde_json::json!({ "key": key, "version": version }))
        .expect("a JSON value serializes");
    sha256_hex(canonical.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::open(dir.path()).unwrap();
        let key = json!({"a": 1});
        assert!(matches!(c.get(&key).unwrap(), Lookup::Miss));
        c.put(&key, b"payload").unwrap();
        match c.get(&key).unwrap() {
            Lookup::Hit(p) => assert_eq!(p, b"payload"),
            _ => panic!("expected a hit"),
        }
        assert_eq!(c.inspect().unwrap()[0].status, "ok");
    }

    #[test]
    fn corruption_is_quarantined() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::open(dir.path()).unwrap();
        let key = json!(["k"]);
        c.put(&key, b"0123456789").unwrap();
        let path = c.path(&key_hash(&key));
        let mut bytes = fs::read(&path).unwrap();
        let n = bytes.len();
        bytes[n - 1] = b'x';
        fs::write(&path, bytes).unwrap();
        assert!(matches!(c.get(&key).unwrap(), Lookup::Quarantined(_)));
        assert!(!path.exists());
        assert!(dir.path().join(QUARANTINE).is_dir());
        assert_eq!(c.gc(false).unwrap().len(), 1);
    }

    #[test]
    fn hash_depends_on_key() {
        assert_ne!(key_hash(&json!(1)), key_hash(&json!(2)));
        assert_eq!(key_hash(&json!({"x": [1, 2]})), key_hash(&json!({"x": [1, 2]})));
    }
}
