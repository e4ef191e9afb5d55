//! On-disk store for built interpolation polynomials.
//!
//! One JSON file per polynomial, named by the SHA-256 of its key. Files are
//! written atomically; unreadable or mismatched records are ignored and
//! rebuilt.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use log::warn;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::composition::Composition;
use crate::error::Result;
use crate::expansion::ParamsKind;
use crate::macdonald::PolyStore;
use crate::poly::LaurentPoly;
use crate::qt::QTScalar;
use crate::serial::{poly_terms_from_json, poly_terms_json};

const VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Record {
    version: u32,
    key: String,
    eta: Vec<u32>,
    terms: Value,
}

/// Disk-backed [`PolyStore`] for `E*_eta` at one parameter orientation.
#[derive(Clone, Debug)]
pub struct DiskStore {
    dir: PathBuf,
    params: ParamsKind,
}

impl DiskStore {
    pub fn open(dir: impl Into<PathBuf>, params: ParamsKind) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(DiskStore { dir, params })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn key(&self, eta: &Composition) -> String {
        format!("pieri|v{VERSION}|Estar|{}|{eta}", self.params)
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{}.json", hex::encode(Sha256::digest(key.as_bytes()))))
    }

    fn read(&self, eta: &Composition) -> Option<LaurentPoly<QTScalar>> {
        let key = self.key(eta);
        let path = self.path(&key);
        let text = fs::read_to_string(&path).ok()?;
        let parsed = serde_json::from_str::<Record>(&text)
            .ok()
            .filter(|r| r.version == VERSION && r.key == key && r.eta == eta.parts())
            .and_then(|r| poly_terms_from_json(eta.n(), &r.terms).ok());
        if parsed.is_none() {
            warn!("ignoring corrupt cache record {}", path.display());
        }
        parsed
    }

    fn write(&self, eta: &Composition, poly: &LaurentPoly<QTScalar>) -> Result<()> {
        let key = self.key(eta);
        let rec =
            Record { version: VERSION, key: key.clone(), eta: eta.parts().to_vec(), terms: poly_terms_json(poly) };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer(&mut tmp, &rec).map_err(std::io::Error::from)?;
        tmp.flush()?;
        tmp.persist(self.path(&key)).map_err(|e| e.error)?;
        Ok(())
    }
}

impl PolyStore<QTScalar> for DiskStore {
    fn load(&self, eta: &Composition) -> Option<LaurentPoly<QTScalar>> {
        self.read(eta)
    }

    fn save(&self, eta: &Composition, poly: &LaurentPoly<QTScalar>) {
        if let Err(e) = self.write(eta, poly) {
            warn!("could not cache {eta}: {e}");
        }
    }
}

fn is_record(path: &Path) -> bool {
    let stem_ok = path
        .file_stem()
        .and_then(|s| s.to_str())
        .is_some_and(|s| s.len() == 64 && s.bytes().all(|b| b.is_ascii_hexdigit()));
    stem_ok && path.extension().is_some_and(|e| e == "json")
}

fn records(dir: &Path) -> Result<Vec<PathBuf>> {
    if !dir.exists() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for entry in fs::read_dir(dir)? {
        let path = entry?.path();
        if is_record(&path) {
            out.push(path);
        }
    }
    Ok(out)
}

/// Number of records and their total size in bytes.
pub fn stats(dir: &Path) -> Result<(usize, u64)> {
    let files = records(dir)?;
    let mut bytes = 0;
    for f in &files {
        bytes += fs::metadata(f)?.len();
    }
    Ok((files.len(), bytes))
}

/// Removes every record; other files are left alone. Returns the count removed.
pub fn clear(dir: &Path) -> Result<usize> {
    let files = records(dir)?;
    for f in &files {
        fs::remove_file(f)?;
    }
    Ok(files.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::macdonald::Macdonald;
    use crate::qt::Params;
    use std::sync::Arc;

    #[test]
    fn store_round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let store = DiskStore::open(dir.path(), ParamsKind::Std).unwrap();
        let eta: Composition = "1,0".parse().unwrap();
        let m = Macdonald::new(Params::symbolic()).with_store(Arc::new(store.clone()));
        let built = m.estar(&eta).unwrap();
        assert_eq!(store.load(&eta).as_ref(), Some(&*built));
        let (count, bytes) = stats(dir.path()).unwrap();
        assert!(count >= 2 && bytes > 0);

        let path = store.path(&store.key(&eta));
        fs::write(&path, "{not json").unwrap();
        assert!(store.load(&eta).is_none());
        let fresh = Macdonald::new(Params::symbolic()).with_store(Arc::new(store.clone()));
        assert_eq!(fresh.estar(&eta).unwrap(), built);

        fs::write(dir.path().join("keep.txt"), "x").unwrap();
        assert_eq!(clear(dir.path()).unwrap(), count);
        assert!(dir.path().join("keep.txt").exists());
    }

    #[test]
    fn orientations_do_not_collide() {
        let dir = tempfile::tempdir().unwrap();
        let a = DiskStore::open(dir.path(), ParamsKind::Std).unwrap();
        let b = DiskStore::open(dir.path(), ParamsKind::Inv).unwrap();
        let eta: Composition = "0,1".parse().unwrap();
        assert_ne!(a.path(&a.key(&eta)), b.path(&b.key(&eta)));
    }
}
