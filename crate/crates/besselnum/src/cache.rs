//! Append-only JSONL cache of computed moments.
//!
//! One record per line:
//! `{"kind":"IKM","a":1,"b":4,"n":1,"u":null,"digits":60,"value":"…"}`.
//! On load, the record with the most digits wins for each
//! `(kind, a, b, n, u)`; a hit needs at least the requested digits.

use crate::moment::{compute_moment, from_decimal, to_decimal, MomentKey, MomentKind};
use crate::{BesselError, Result};
use parking_lot::Mutex;
use rug::Float;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

/// Environment variable overriding the default cache location.
pub const CACHE_ENV: &str = "BWV_CACHE";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub kind: MomentKind,
    pub a: u32,
    pub b: u32,
    pub n: u32,
    pub u: Option<String>,
    pub digits: u32,
    pub value: String,
}

type Slot = (MomentKind, u32, u32, u32, Option<String>);

fn slot(key: &MomentKey) -> Slot {
    (key.kind, key.a, key.b, key.n, key.u_string())
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CacheStats {
    pub path: String,
    pub entries: usize,
    pub lines: usize,
    pub malformed: usize,
    pub by_kind: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CacheVerify {
    pub checked: usize,
    pub mismatched: Vec<String>,
    pub malformed: usize,
}

pub struct MomentCache {
    path: PathBuf,
    map: Mutex<HashMap<Slot, (u32, String)>>,
    writer: Mutex<Option<File>>,
    lines: usize,
    malformed: usize,
    persist: bool,
}

impl MomentCache {
    /// `$BWV_CACHE`, else `$HOME/.cache/bwv/moments.jsonl`, else a file in
    /// the temporary directory.
    pub fn default_path() -> PathBuf {
        if let Some(p) = std::env::var_os(CACHE_ENV) {
            return PathBuf::from(p);
        }
        match std::env::var_os("HOME") {
            Some(h) => Path::new(&h)
                .join(".cache")
                .join("bwv")
                .join("moments.jsonl"),
            None => std::env::temp_dir().join("bwv-moments.jsonl"),
        }
    }

    /// Open (or create lazily) the cache at `path`.
    pub fn open(path: impl Into<PathBuf>) -> Result<Self> {
        let path = path.into();
        let mut map = HashMap::new();
        let (mut lines, mut malformed) = (0, 0);
        if path.exists() {
            let f = File::open(&path)
                .map_err(|e| BesselError::Cache(format!("{}: {e}", path.display())))?;
            for line in BufReader::new(f).lines() {
                let line = line.map_err(|e| BesselError::Cache(e.to_string()))?;
                if line.trim().is_empty() {
                    continue;
                }
                lines += 1;
                match serde_json::from_str::<CacheRecord>(&line) {
                    Ok(r) if Float::parse(&r.value).is_ok() => {
                        let s: Slot = (r.kind, r.a, r.b, r.n, r.u);
                        let better = map
                            .get(&s)
                            .is_none_or(|(d, _): &(u32, String)| r.digits > *d);
                        if better {
                            map.insert(s, (r.digits, r.value));
                        }
                    }
                    _ => malformed += 1,
                }
            }
        }
        Ok(MomentCache {
            path,
            map: Mutex::new(map),
            writer: Mutex::new(None),
            lines,
            malformed,
            persist: true,
        })
    }

    /// A process-local cache that never touches the file system.
    pub fn in_memory() -> Self {
        MomentCache {
            path: PathBuf::new(),
            map: Mutex::new(HashMap::new()),
            writer: Mutex::new(None),
            lines: 0,
            malformed: 0,
            persist: false,
        }
    }

    pub fn is_persistent(&self) -> bool {
        self.persist
    }

    pub fn open_default() -> Result<Self> {
        Self::open(Self::default_path())
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.map.lock().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Cached value at the key's precision, if present with enough digits.
    pub fn get(&self, key: &MomentKey) -> Option<Float> {
        let map = self.map.lock();
        let (d, v) = map.get(&slot(key))?;
        if *d < key.digits {
            return None;
        }
        let x = from_decimal(v, *d).ok()?;
        // Round to the requested digits exactly as a fresh computation would.
        from_decimal(&to_decimal(&x, key.digits), key.digits).ok()
    }

    /// Store a computed value (write-through).
    pub fn put(&self, key: &MomentKey, value: &Float) -> Result<()> {
        let rec = CacheRecord {
            kind: key.kind,
            a: key.a,
            b: key.b,
            n: key.n,
            u: key.u_string(),
            digits: key.digits,
            value: to_decimal(value, key.digits),
        };
        {
            let mut map = self.map.lock();
            let s = slot(key);
            if map.get(&s).is_some_and(|(d, _)| *d >= key.digits) {
                return Ok(());
            }
            map.insert(s, (rec.digits, rec.value.clone()));
        }
        if !self.persist {
            return Ok(());
        }
        let mut w = self.writer.lock();
        if w.is_none() {
            if let Some(dir) = self.path.parent() {
                std::fs::create_dir_all(dir).map_err(|e| BesselError::Cache(e.to_string()))?;
            }
            let f = OpenOptions::new()
                .create(true)
                .append(true)
                .open(&self.path)
                .map_err(|e| BesselError::Cache(format!("{}: {e}", self.path.display())))?;
            *w = Some(f);
        }
        let line = serde_json::to_string(&rec).map_err(|e| BesselError::Cache(e.to_string()))?;
        let f = w.as_mut().expect("opened above");
        writeln!(f, "{line}").map_err(|e| BesselError::Cache(e.to_string()))?;
        Ok(())
    }

    /// Cached value, or compute and store it.
    pub fn get_or_compute(&self, key: &MomentKey) -> Result<Float> {
        if let Some(v) = self.get(key) {
            return Ok(v);
        }
        let v = compute_moment(key)?;
        self.put(key, &v)?;
        Ok(v)
    }

    pub fn stats(&self) -> CacheStats {
        let map = self.map.lock();
        let mut by_kind = BTreeMap::new();
        for (k, ..) in map.keys() {
            *by_kind.entry(k.name().to_string()).or_insert(0) += 1;
        }
        CacheStats {
            path: self.path.display().to_string(),
            entries: map.len(),
            lines: self.lines,
            malformed: self.malformed,
            by_kind,
        }
    }

    /// Recompute up to `limit` entries (cheapest first) and compare them
    /// with the stored strings.
    pub fn verify(&self, limit: usize) -> CacheVerify {
        let mut entries: Vec<(Slot, u32, String)> = self
            .map
            .lock()
            .iter()
            .map(|(s, (d, v))| (s.clone(), *d, v.clone()))
            .collect();
        entries.sort_by_key(|(s, d, _)| (*d, s.clone()));
        let mut out = CacheVerify {
            malformed: self.malformed,
            ..Default::default()
        };
        for ((kind, a, b, n, u), digits, value) in entries.into_iter().take(limit) {
            let u = match u.as_deref().map(MomentKey::parse_u).transpose() {
                Ok(u) => u,
                Err(_) => {
                    out.malformed += 1;
                    continue;
                }
            };
            let key = MomentKey::new(kind, a, b, n, u, digits);
            out.checked += 1;
            match compute_moment(&key) {
                Ok(v) if to_decimal(&v, digits) == value => {}
                _ => out.mismatched.push(key.to_string()),
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_through_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.jsonl");
        let key = MomentKey::on_shell(1, 3, 1, 25);
        let fresh = {
            let c = MomentCache::open(&path).unwrap();
            assert!(c.get(&key).is_none());
            c.get_or_compute(&key).unwrap()
        };
        let c = MomentCache::open(&path).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.get(&key).unwrap(), fresh);
        // Fewer digits are served from the stored record, identically to a fresh run.
        let low = MomentKey::on_shell(1, 3, 1, 15);
        assert_eq!(c.get(&low).unwrap(), compute_moment(&low).unwrap());
        // More digits miss.
        assert!(c.get(&MomentKey::on_shell(1, 3, 1, 40)).is_none());
        let v = c.verify(10);
        assert_eq!((v.checked, v.mismatched.len()), (1, 0));
    }

    #[test]
    fn malformed_lines_are_counted() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.jsonl");
        std::fs::write(&path, "not json\n{\"kind\":\"IKM\",\"a\":1,\"b\":2,\"n\":1,\"u\":null,\"digits\":5,\"value\":\"0.60459978800\"}\n").unwrap();
        let c = MomentCache::open(&path).unwrap();
        let s = c.stats();
        assert_eq!((s.entries, s.lines, s.malformed), (1, 2, 1));
    }
}
