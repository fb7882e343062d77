//! Line-oriented point-count cache: `<variety hash> <degree> <count>` per
//! line. Regenerated entries must agree with what is already stored;
//! a mismatch aborts with a corruption error.

use super::variety::{count_points, Budget, Variety};
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Debug, Default)]
pub struct PointCountCache {
    path: Option<PathBuf>,
    entries: BTreeMap<(String, u64), u64>,
}

impl PointCountCache {
    /// In-memory cache without a backing file.
    pub fn in_memory() -> Self {
        PointCountCache::default()
    }

    pub fn open(path: &Path) -> Result<Self> {
        let mut entries = BTreeMap::new();
        if path.exists() {
            let text = std::fs::read_to_string(path)?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let mut it = line.split_whitespace();
                let (Some(h), Some(d), Some(n)) = (it.next(), it.next(), it.next()) else {
                    return Err(Error::CorruptCache(format!("line {}: expected 3 fields", lineno + 1)));
                };
                let d: u64 = d
                    .parse()
                    .map_err(|_| Error::CorruptCache(format!("line {}: bad degree", lineno + 1)))?;
                let n: u64 = n
                    .parse()
                    .map_err(|_| Error::CorruptCache(format!("line {}: bad count", lineno + 1)))?;
                let key = (h.to_string(), d);
                if let Some(&prev) = entries.get(&key) {
                    if prev != n {
                        return Err(Error::CorruptCache(format!(
                            "conflicting entries for {} degree {}: {} vs {}",
                            h, d, prev, n
                        )));
                    }
                }
                entries.insert(key, n);
            }
        }
        Ok(PointCountCache { path: Some(path.to_path_buf()), entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Cached point count: a hit is returned as-is, a miss is computed,
    /// recorded, and persisted. A recomputation that disagrees with a stored
    /// value is a corruption error.
    pub fn count_points(&mut self, v: &Variety, d: u64, budget: &Budget) -> Result<u64> {
        let key = (v.content_hash(), d);
        if let Some(&n) = self.entries.get(&key) {
            return Ok(n);
        }
        let n = count_points(v, d, budget)?;
        self.record(key, n)?;
        Ok(n)
    }

    /// Recompute even on a hit, checking agreement with the stored value.
    pub fn verify_entry(&mut self, v: &Variety, d: u64, budget: &Budget) -> Result<u64> {
        let key = (v.content_hash(), d);
        let n = count_points(v, d, budget)?;
        if let Some(&prev) = self.entries.get(&key) {
            if prev != n {
                return Err(Error::CorruptCache(format!(
                    "cache holds {} for {} degree {}, recomputed {}",
                    prev, key.0, d, n
                )));
            }
            return Ok(n);
        }
        self.record(key, n)?;
        Ok(n)
    }

    fn record(&mut self, key: (String, u64), n: u64) -> Result<()> {
        if let Some(&prev) = self.entries.get(&key) {
            if prev != n {
                return Err(Error::CorruptCache(format!(
                    "cache holds {} for {} degree {}, recomputed {}",
                    prev, key.0, key.1, n
                )));
            }
            return Ok(());
        }
        if let Some(path) = &self.path {
            let mut f = std::fs::OpenOptions::new().create(true).append(true).open(path)?;
            writeln!(f, "{} {} {}", key.0, key.1, n)?;
        }
        self.entries.insert(key, n);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffgeom::{Ambient, FiniteField, Variety};

    fn p1() -> Variety {
        let f = FiniteField::prime(2).unwrap();
        Variety::new(f, Ambient::Projective(1), vec!["a".into(), "b".into()], vec![], vec![]).unwrap()
    }

    #[test]
    fn round_trip_on_disk() {
        let dir = std::env::temp_dir().join(format!("lfunc-cache-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("counts.txt");
        let _ = std::fs::remove_file(&path);
        let v = p1();
        {
            let mut c = PointCountCache::open(&path).unwrap();
            assert_eq!(c.count_points(&v, 3, &Budget::default()).unwrap(), 9);
        }
        {
            let mut c = PointCountCache::open(&path).unwrap();
            assert_eq!(c.len(), 1);
            assert_eq!(c.count_points(&v, 3, &Budget::default()).unwrap(), 9);
            assert_eq!(c.verify_entry(&v, 3, &Budget::default()).unwrap(), 9);
        }
        std::fs::remove_file(&path).unwrap();
    }

    #[test]
    fn tampered_entry_is_a_corruption_error() {
        let dir = std::env::temp_dir().join(format!("lfunc-cache-tamper-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("counts.txt");
        let v = p1();
        std::fs::write(&path, format!("{} 3 1234\n", v.content_hash())).unwrap();
        let mut c = PointCountCache::open(&path).unwrap();
        assert!(matches!(
            c.verify_entry(&v, 3, &Budget::default()),
            Err(Error::CorruptCache(_))
        ));
        std::fs::remove_file(&path).unwrap();
    }
}
