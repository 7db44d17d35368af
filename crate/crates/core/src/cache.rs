//! On-disk store for solved universal series.
//!
//! An entry is keyed by the reference tuples, the q-order, the s-window and
//! the specialization seed. Loading compares the stored key field by field
//! and re-hashes the payload, so an entry written for other parameters or
//! edited by hand is reported as stale and recomputed, never reused.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exact::{Coeff, YCoeff};
use crate::instanton::{self, Genus, InstantonRequest};
use crate::monopole::{self, MonopoleRequest};
use crate::series::TruncatedSeries;
use crate::universal::UniversalSeries;

pub const CACHE_ENV: &str = "VERLINDE_CACHE_DIR";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    pub family: String,
    pub tuples: String,
    pub q_order: usize,
    pub s_window: i64,
    pub eps: String,
}

impl CacheKey {
    pub fn instanton<G: Genus>(genus: &G, req: &InstantonRequest) -> Self {
        let labels: Vec<String> = instanton::reference_tuples().iter().map(|t| t.label()).collect();
        CacheKey {
            family: format!("instanton-{}", genus.name()),
            tuples: tuple_hash(&labels),
            q_order: req.order,
            s_window: req.s_window,
            eps: format!("line-seed-{}", req.seed),
        }
    }

    pub fn monopole(req: &MonopoleRequest) -> Self {
        let labels: Vec<String> = monopole::reference_tuples().iter().map(|t| t.label()).collect();
        CacheKey {
            family: "monopole".into(),
            tuples: tuple_hash(&labels),
            q_order: req.order,
            s_window: 0,
            eps: format!("line-seed-{}", req.seed),
        }
    }

    fn file_name(&self) -> String {
        let id = sha256_hex(serde_json::to_string(self).expect("key serializes").as_bytes());
        format!("{}-{}.json", self.family, &id[..16])
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn tuple_hash(labels: &[String]) -> String {
    sha256_hex(labels.join("\n").as_bytes())
}

/// A universal solve together with the series it was extracted from.
#[derive(Debug, Clone, PartialEq)]
pub struct Entry<C: Coeff> {
    pub vectors: Vec<Vec<i64>>,
    pub logs: Vec<TruncatedSeries<C>>,
    pub inputs: Vec<TruncatedSeries<C>>,
}

impl<C: Coeff> Entry<C> {
    pub fn new(u: &UniversalSeries<C>, inputs: Vec<TruncatedSeries<C>>) -> Self {
        Entry { vectors: u.vectors.clone(), logs: u.logs.clone(), inputs }
    }

    pub fn universal(&self) -> UniversalSeries<C> {
        UniversalSeries { vectors: self.vectors.clone(), logs: self.logs.clone() }
    }

    fn payload(&self) -> Value {
        json!({
            "vectors": self.vectors.iter().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "logs": self.logs.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
            "inputs": self.inputs.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
        })
    }

    fn from_payload(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("cache entry: {}", m));
        let list = |k: &str| v[k].as_array().ok_or_else(|| bad(k));
        let vectors = list("vectors")?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| bad("vector"))?
                    .iter()
                    .map(|x| x.as_str().and_then(|s| s.parse().ok()).ok_or_else(|| bad("vector entry")))
                    .collect()
            })
            .collect::<Result<_>>()?;
        let series = |k: &str| list(k)?.iter().map(TruncatedSeries::from_json).collect::<Result<Vec<_>>>();
        Ok(Entry { vectors, logs: series("logs")?, inputs: series("inputs")? })
    }
}

#[derive(Debug)]
pub enum Lookup<C: Coeff> {
    Hit(Entry<C>),
    Miss,
    /// A file exists at the key's path but does not belong to the key.
    Stale(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Hit,
    Computed,
    Recomputed,
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// `$VERLINDE_CACHE_DIR`, else `$HOME/.cache/verlinde`, else a
    /// directory under the system temp dir.
    pub fn from_env() -> Self {
        if let Some(d) = std::env::var_os(CACHE_ENV).filter(|d| !d.is_empty()) {
            return Cache::at(d);
        }
        match std::env::var_os("HOME").filter(|h| !h.is_empty()) {
            Some(h) => Cache::at(Path::new(&h).join(".cache").join("verlinde")),
            None => Cache::at(std::env::temp_dir().join("verlinde-cache")),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(key.file_name())
    }

    pub fn load<C: Coeff>(&self, key: &CacheKey) -> Result<Lookup<C>> {
        let path = self.path_for(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Lookup::Miss),
            Err(e) => return Err(e.into()),
        };
        let doc: Value = match serde_json::from_str(&text) {
            Ok(v) => v,
            Err(e) => return Ok(Lookup::Stale(format!("unreadable: {}", e))),
        };
        match serde_json::from_value::<CacheKey>(doc["key"].clone()) {
            Ok(k) if &k == key => {}
            Ok(k) => return Ok(Lookup::Stale(format!("written for {:?}", k))),
            Err(_) => return Ok(Lookup::Stale("missing key".into())),
        }
        let payload = &doc["payload"];
        if doc["checksum"].as_str() != Some(&checksum(key, payload)) {
            return Ok(Lookup::Stale("checksum mismatch".into()));
        }
        match Entry::from_payload(payload) {
            Ok(e) => Ok(Lookup::Hit(e)),
            Err(e) => Ok(Lookup::Stale(e.to_string())),
        }
    }

    /// Writes the entry atomically; the bytes depend only on key and entry.
    pub fn store<C: Coeff>(&self, key: &CacheKey, entry: &Entry<C>) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let payload = entry.payload();
        let doc = json!({ "checksum": checksum(key, &payload), "key": key, "payload": payload });
        let mut text = serde_json::to_string_pretty(&doc)?;
        text.push('\n');
        let path = self.path_for(key);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, text)?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }

    /// Returns the cached entry for `key` or computes and stores it.
    pub fn get_or_compute<C: Coeff>(
        &self,
        key: &CacheKey,
        compute: impl FnOnce() -> Result<Entry<C>>,
    ) -> Result<(Entry<C>, Status)> {
        let status = match self.load(key)? {
            Lookup::Hit(e) => return Ok((e, Status::Hit)),
            Lookup::Miss => Status::Computed,
            Lookup::Stale(_) => Status::Recomputed,
        };
        let e = compute()?;
        self.store(key, &e)?;
        Ok((e, status))
    }
}

fn checksum(key: &CacheKey, payload: &Value) -> String {
    let body = json!({ "key": key, "payload": payload });
    sha256_hex(body.to_string().as_bytes())
}

/// Universal instanton series, through the cache when one is given.
pub fn universal_a<G: Genus>(cache: Option<&Cache>, genus: &G, req: &InstantonRequest) -> Result<(Entry<G::Out>, Status)> {
    let compute = || instanton::solve_universal_a(genus, req).map(|(u, zs)| Entry::new(&u, zs));
    match cache {
        Some(c) => c.get_or_compute(&CacheKey::instanton(genus, req), compute),
        None => Ok((compute()?, Status::Computed)),
    }
}

/// Universal monopole series, through the cache when one is given.
pub fn universal_b(cache: Option<&Cache>, req: &MonopoleRequest) -> Result<(Entry<YCoeff>, Status)> {
    let compute = || monopole::solve_universal_b(req).map(|(u, zs)| Entry::new(&u, zs));
    match cache {
        Some(c) => c.get_or_compute(&CacheKey::monopole(req), compute),
        None => Ok((compute()?, Status::Computed)),
    }
}
