//! On-disk JSON cache of Weingarten tables.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::partition::Partition;
use super::weingarten::{fixed_table, generic_table, tau_zero_table, CosetAlgebra, TauMode, WeingartenTable};
use crate::coeff::JsonCoeff;
use crate::error::{Error, Result};
use crate::rational::{format_q, parse_q, Q};
use crate::ratfunc::RatFunc;

pub const CACHE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Entry {
    partition: Partition,
    value: serde_json::Value,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    k: usize,
    mode: String,
    tau: Option<String>,
    pseudo: bool,
    entries: Vec<Entry>,
}

fn mode_parts(mode: &TauMode) -> (&'static str, Option<String>) {
    match mode {
        TauMode::Generic => ("generic", None),
        TauMode::Fixed(t) => ("fixed", Some(format_q(t))),
        TauMode::Zero => ("zero", None),
    }
}

pub fn to_json<V: JsonCoeff>(table: &WeingartenTable<V>) -> serde_json::Value {
    let (mode, tau) = mode_parts(&table.mode);
    let file = CacheFile {
        version: CACHE_VERSION,
        k: table.k,
        mode: mode.to_string(),
        tau,
        pseudo: table.pseudo,
        entries: table
            .partitions
            .iter()
            .zip(&table.values)
            .map(|(p, v)| Entry { partition: p.clone(), value: v.to_json() })
            .collect(),
    };
    serde_json::to_value(file).expect("serialisable")
}

pub fn from_json<V: JsonCoeff>(v: &serde_json::Value) -> Result<WeingartenTable<V>> {
    let file: CacheFile = serde_json::from_value(v.clone())?;
    if file.version != CACHE_VERSION {
        return Err(Error::Cache(format!("cache version {} != {CACHE_VERSION}", file.version)));
    }
    let mode = match (file.mode.as_str(), file.tau) {
        ("generic", None) => TauMode::Generic,
        ("zero", None) => TauMode::Zero,
        ("fixed", Some(t)) => TauMode::Fixed(parse_q(&t)?),
        (m, _) => return Err(Error::Cache(format!("unknown mode {m:?}"))),
    };
    let mut partitions = Vec::new();
    let mut values = Vec::new();
    for e in file.entries {
        if e.partition.size() != file.k {
            return Err(Error::Cache(format!("partition {} does not match k = {}", e.partition, file.k)));
        }
        partitions.push(e.partition);
        values.push(V::from_json(&e.value)?);
    }
    Ok(WeingartenTable { k: file.k, mode, pseudo: file.pseudo, partitions, values })
}

/// Directory of cached tables, one JSON file per `(k, mode)`.
pub struct WeingartenCache {
    dir: Option<PathBuf>,
}

impl WeingartenCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        WeingartenCache { dir: Some(dir.into()) }
    }

    /// A cache that never touches the disk.
    pub fn in_memory() -> Self {
        WeingartenCache { dir: None }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn path(&self, k: usize, mode: &TauMode) -> Option<PathBuf> {
        let (m, tau) = mode_parts(mode);
        let tag = tau.map(|t| format!("-{}", t.replace('/', "_").replace('-', "m"))).unwrap_or_default();
        self.dir.as_ref().map(|d| d.join(format!("weingarten-k{k}-{m}{tag}.json")))
    }

    /// A missing file is a miss; a file that exists but does not hold the
    /// requested table is reported as corrupt.
    fn load<V: JsonCoeff>(&self, k: usize, mode: &TauMode) -> Result<Option<WeingartenTable<V>>> {
        let Some(path) = self.path(k, mode) else { return Ok(None) };
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let corrupt = |why: String| Error::Cache(format!("{}: {why}", path.display()));
        let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| corrupt(e.to_string()))?;
        let t: WeingartenTable<V> = from_json(&v).map_err(|e| corrupt(e.to_string()))?;
        if t.k != k || &t.mode != mode || t.partitions != Partition::all(k) {
            return Err(corrupt(format!("holds k = {} mode {} instead of k = {k} mode {mode}", t.k, t.mode)));
        }
        Ok(Some(t))
    }

    fn store<V: JsonCoeff>(&self, table: &WeingartenTable<V>) -> Result<()> {
        let Some(path) = self.path(table.k, &table.mode) else { return Ok(()) };
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_string(&to_json(table))?)?;
        fs::rename(tmp, path)?;
        Ok(())
    }

    pub fn generic(&self, k: usize) -> Result<WeingartenTable<RatFunc>> {
        if let Some(t) = self.load(k, &TauMode::Generic)? {
            return Ok(t);
        }
        let t = generic_table(&CosetAlgebra::new(k)?)?;
        self.store(&t)?;
        Ok(t)
    }

    pub fn fixed(&self, k: usize, tau: &Q) -> Result<WeingartenTable<Q>> {
        let mode = TauMode::Fixed(tau.clone());
        if let Some(t) = self.load(k, &mode)? {
            return Ok(t);
        }
        let t = fixed_table(&CosetAlgebra::new(k)?, tau)?;
        self.store(&t)?;
        Ok(t)
    }

    pub fn tau_zero(&self, k: usize) -> Result<WeingartenTable<Q>> {
        if let Some(t) = self.load(k, &TauMode::Zero)? {
            return Ok(t);
        }
        let t = tau_zero_table(&CosetAlgebra::new(k)?)?;
        self.store(&t)?;
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    #[test]
    fn disk_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = WeingartenCache::new(dir.path());
        let a = cache.fixed(3, &qr(-1, 2)).unwrap();
        let files: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
        assert_eq!(files.len(), 1);
        let b = cache.fixed(3, &qr(-1, 2)).unwrap();
        assert_eq!(a, b);
        let g = cache.generic(3).unwrap();
        assert_eq!(from_json::<RatFunc>(&to_json(&g)).unwrap(), g);
    }

    #[test]
    fn rejects_wrong_version() {
        let t = tau_zero_table(&CosetAlgebra::new(2).unwrap()).unwrap();
        let mut v = to_json(&t);
        v["version"] = serde_json::json!(99);
        assert!(from_json::<Q>(&v).is_err());
    }

    #[test]
    fn corrupt_file_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        let cache = WeingartenCache::new(dir.path());
        cache.tau_zero(2).unwrap();
        let path = fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
        fs::write(&path, "{\"version\": 1").unwrap();
        assert!(matches!(cache.tau_zero(2), Err(Error::Cache(_))));
    }
}
