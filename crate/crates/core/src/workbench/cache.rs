use std::fs;
use std::path::{Path, PathBuf};

use log::warn;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::params::SqrtQ;
use crate::plane_curves::{hermitian_fermat, CurveModel};
use crate::point_count::{count_projective_points_capped, nonsingular_count_capped, CountReport, NonsingularCount};
use crate::quotient::{burnside_quotient_count, BurnsideReport};

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Serialize, Deserialize)]
struct Envelope {
    key: String,
    digest: String,
    payload: String,
}

/// Content-addressed store of reports. Entries whose key or digest do not
/// check out are discarded and recomputed.
#[derive(Clone, Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    /// A cache in `dir`, or a disabled one when `dir` is None or cannot be
    /// created.
    pub fn open(dir: Option<&Path>) -> Self {
        let dir = dir.and_then(|d| match fs::create_dir_all(d) {
            Ok(()) => Some(d.to_path_buf()),
            Err(e) => {
                warn!("cache directory {} unusable ({e}); continuing without cache", d.display());
                None
            }
        });
        Cache { dir }
    }

    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    pub fn is_enabled(&self) -> bool {
        self.dir.is_some()
    }

    /// Key of a point count: the hash of the model serialization and k.
    pub fn count_key(kind: &str, model: &CurveModel, k: u32) -> String {
        sha256_hex(format!("{kind}\n{}\n{k}", model.to_json()).as_bytes())
    }

    /// Key of a Burnside count: the Hermitian model it twists and d.
    pub fn burnside_key(s: SqrtQ, d: u64) -> Result<String> {
        let h = hermitian_fermat(s, &s.field_q()?)?;
        Ok(sha256_hex(format!("burnside\n{}\n{d}", h.to_json()).as_bytes()))
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    pub fn get<T: DeserializeOwned>(&self, key: &str) -> Option<T> {
        let path = self.path(key)?;
        let text = fs::read_to_string(&path).ok()?;
        let value = serde_json::from_str::<Envelope>(&text)
            .ok()
            .filter(|e| e.key == key && e.digest == sha256_hex(e.payload.as_bytes()))
            .and_then(|e| serde_json::from_str(&e.payload).ok());
        if value.is_none() {
            warn!("discarding corrupt cache entry {}", path.display());
            let _ = fs::remove_file(&path);
        }
        value
    }

    pub fn put<T: Serialize>(&self, key: &str, value: &T) {
        let Some(path) = self.path(key) else { return };
        let write = || -> Result<()> {
            let payload = serde_json::to_string(value)?;
            let env = Envelope {
                key: key.to_string(),
                digest: sha256_hex(payload.as_bytes()),
                payload,
            };
            let tmp = path.with_extension("tmp");
            fs::write(&tmp, serde_json::to_string(&env)?)?;
            fs::rename(&tmp, &path)?;
            Ok(())
        };
        if let Err(e) = write() {
            warn!("cache write to {} failed: {e}", path.display());
        }
    }

    fn fetch<T: Serialize + DeserializeOwned>(&self, key: &str, compute: impl FnOnce() -> Result<T>) -> Result<T> {
        if let Some(v) = self.get(key) {
            return Ok(v);
        }
        let v = compute()?;
        self.put(key, &v);
        Ok(v)
    }

    pub fn count(&self, model: &CurveModel, k: u32, cap: u64) -> Result<CountReport> {
        self.fetch(&Self::count_key("count", model, k), || count_projective_points_capped(model, k, cap))
    }

    pub fn nonsingular(&self, model: &CurveModel, k: u32, cap: u64) -> Result<NonsingularCount> {
        self.fetch(&Self::count_key("nonsingular", model, k), || {
            nonsingular_count_capped(model, k, cap)
        })
    }

    pub fn burnside(&self, s: SqrtQ, d: u64, lift_cap: u64) -> Result<BurnsideReport> {
        self.fetch(&Self::burnside_key(s, d)?, || burnside_quotient_count(s, d, lift_cap))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane_curves::hermitian_canonical;

    fn model(s: u64) -> CurveModel {
        let s = SqrtQ::new(s).unwrap();
        hermitian_canonical(s, &s.field_q().unwrap()).unwrap()
    }

    #[test]
    fn round_trip_and_keys() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(Some(dir.path()));
        let m = model(3);
        let r = cache.count(&m, 1, 1 << 20).unwrap();
        let key = Cache::count_key("count", &m, 1);
        assert_eq!(cache.get::<CountReport>(&key), Some(r));
        assert_ne!(key, Cache::count_key("count", &m, 2));
        assert_ne!(key, Cache::count_key("count", &model(2), 1));
    }

    #[test]
    fn corruption_is_recomputed() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(Some(dir.path()));
        let m = model(3);
        let r = cache.count(&m, 1, 1 << 20).unwrap();
        let key = Cache::count_key("count", &m, 1);
        let path = dir.path().join(format!("{key}.json"));
        let text = fs::read_to_string(&path).unwrap().replace("28", "29");
        fs::write(&path, text).unwrap();
        assert_eq!(cache.get::<CountReport>(&key), None);
        assert!(!path.exists());
        assert_eq!(cache.count(&m, 1, 1 << 20).unwrap(), r);
    }

    #[test]
    fn unusable_directory_disables() {
        let file = tempfile::NamedTempFile::new().unwrap();
        let cache = Cache::open(Some(&file.path().join("sub")));
        assert!(!cache.is_enabled());
        assert_eq!(cache.count(&model(2), 1, 1 << 20).unwrap().total, 9);
    }
}
