use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::Result;

/// Bump to invalidate every stored entry.
pub const CACHE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Entry<T> {
    version: u32,
    key: String,
    value: T,
}

/// Results stored as JSON files named by the hash of what produced them.
#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: impl AsRef<Path>) -> Result<Cache> {
        fs::create_dir_all(dir.as_ref())?;
        Ok(Cache { dir: dir.as_ref().to_path_buf() })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Hash of the cache version, a kind tag and the serialized
    /// construction subtree.
    pub fn key(kind: &str, subtree: &impl Serialize) -> Result<String> {
        let mut h = Sha256::new();
        h.update(CACHE_VERSION.to_le_bytes());
        h.update(kind.as_bytes());
        h.update([0]);
        h.update(serde_json::to_vec(subtree)?);
        Ok(hex::encode(h.finalize()))
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Unreadable, stale or mismatched entries count as misses.
    pub fn get<T: DeserializeOwned>(&self, key: &str) -> Option<T> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let entry: Entry<T> = serde_json::from_str(&text).ok()?;
        (entry.version == CACHE_VERSION && entry.key == key).then_some(entry.value)
    }

    pub fn put<T: Serialize>(&self, key: &str, value: &T) -> Result<()> {
        let entry = Entry { version: CACHE_VERSION, key: key.to_string(), value };
        let tmp = self.dir.join(format!("{key}.tmp"));
        fs::write(&tmp, serde_json::to_vec_pretty(&entry)?)?;
        fs::rename(tmp, self.path(key))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_version_guard() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let key = Cache::key("demo", &vec![1, 2, 3]).unwrap();
        assert_eq!(key.len(), 64);
        assert_ne!(key, Cache::key("demo", &vec![1, 2]).unwrap());
        assert_ne!(key, Cache::key("other", &vec![1, 2, 3]).unwrap());
        assert_eq!(cache.get::<String>(&key), None);
        cache.put(&key, &"value".to_string()).unwrap();
        assert_eq!(cache.get::<String>(&key).as_deref(), Some("value"));
        // An entry written by another version is ignored.
        let stale = serde_json::json!({ "version": CACHE_VERSION + 1, "key": key, "value": "old" });
        fs::write(cache.path(&key), stale.to_string()).unwrap();
        assert_eq!(cache.get::<String>(&key), None);
    }
}
