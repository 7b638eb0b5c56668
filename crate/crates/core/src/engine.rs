//! Evaluation context: configuration, fault injection, memo tables and the
//! pluggable resolution cache.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::algebra::HilbertSeries;
use crate::error::Result;
use crate::module::Module;
use crate::resolution::{resolve, Resolution};
use crate::ring::Budget;

/// Test-only defects that let the harness prove it can detect falsehood.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Faults {
    pub skip_transpose_minimalization: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Config {
    /// Ext/Tor vanishing bound; `None` means `2(n + 1)` for the ring at hand.
    pub bound: Option<usize>,
    pub budget: Budget,
    pub seed: u64,
    pub iso_attempts: usize,
    /// Keep only probe primes of height at most this; `None` keeps every variable-subset prime.
    pub max_probe_height: Option<usize>,
    #[serde(skip_serializing_if = "is_default_faults")]
    pub faults: Faults,
}

fn is_default_faults(f: &Faults) -> bool {
    *f == Faults::default()
}

impl Default for Config {
    fn default() -> Self {
        Config {
            bound: None,
            budget: Budget::default(),
            seed: 0x5eed,
            iso_attempts: 24,
            max_probe_height: None,
            faults: Faults::default(),
        }
    }
}

/// Persistent store for resolutions, keyed by mathematical content.
pub trait ResolutionCache: Send + Sync {
    fn get(&self, key: &str) -> Option<String>;
    fn put(&self, key: &str, value: &str);
}

/// In-process cache; mostly useful for tests and as a reference implementation.
#[derive(Default)]
pub struct MemoryCache {
    map: Mutex<HashMap<String, String>>,
    hits: Mutex<usize>,
}

impl MemoryCache {
    pub fn hits(&self) -> usize {
        *self.hits.lock().unwrap()
    }

    pub fn len(&self) -> usize {
        self.map.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl ResolutionCache for MemoryCache {
    fn get(&self, key: &str) -> Option<String> {
        let v = self.map.lock().unwrap().get(key).cloned();
        if v.is_some() {
            *self.hits.lock().unwrap() += 1;
        }
        v
    }

    fn put(&self, key: &str, value: &str) {
        self.map
            .lock()
            .unwrap()
            .entry(key.to_string())
            .or_insert_with(|| value.to_string());
    }
}

#[derive(Default)]
struct Memo {
    modules: HashMap<String, Module>,
    resolutions: HashMap<String, Arc<Resolution>>,
    series: HashMap<String, HilbertSeries>,
    flags: HashMap<String, bool>,
}

pub struct Engine {
    pub config: Config,
    cache: Option<Arc<dyn ResolutionCache>>,
    memo: Mutex<Memo>,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(Config::default())
    }
}

impl Engine {
    pub fn new(config: Config) -> Engine {
        Engine {
            config,
            cache: None,
            memo: Mutex::new(Memo::default()),
        }
    }

    pub fn with_cache(config: Config, cache: Arc<dyn ResolutionCache>) -> Engine {
        Engine {
            config,
            cache: Some(cache),
            memo: Mutex::new(Memo::default()),
        }
    }

    pub fn faults(&self) -> Faults {
        self.config.faults
    }

    /// The probe primes used for "at every prime" statements over `ring`.
    pub fn probe_primes(&self, ring: &crate::ring::Ring) -> Vec<crate::invariants::ProbePrime> {
        let mut ps = crate::invariants::probe_primes(ring);
        if let Some(h) = self.config.max_probe_height {
            ps.retain(|p| p.height() <= h);
        }
        ps
    }

    /// Vanishing bound for a ring with `n` variables.
    pub fn bound_for(&self, n: usize) -> usize {
        self.config.bound.unwrap_or(2 * (n + 1))
    }

    pub(crate) fn memo_module(
        &self,
        key: &str,
        f: impl FnOnce() -> Result<Module>,
    ) -> Result<Module> {
        if let Some(m) = self.memo.lock().unwrap().modules.get(key) {
            return Ok(m.clone());
        }
        let m = f()?;
        self.memo
            .lock()
            .unwrap()
            .modules
            .entry(key.to_string())
            .or_insert(m.clone());
        Ok(m)
    }

    pub(crate) fn memo_series(
        &self,
        key: &str,
        f: impl FnOnce() -> Result<HilbertSeries>,
    ) -> Result<HilbertSeries> {
        if let Some(m) = self.memo.lock().unwrap().series.get(key) {
            return Ok(m.clone());
        }
        let m = f()?;
        self.memo
            .lock()
            .unwrap()
            .series
            .insert(key.to_string(), m.clone());
        Ok(m)
    }

    pub(crate) fn memo_flag(&self, key: &str, f: impl FnOnce() -> Result<bool>) -> Result<bool> {
        if let Some(m) = self.memo.lock().unwrap().flags.get(key) {
            return Ok(*m);
        }
        let m = f()?;
        self.memo.lock().unwrap().flags.insert(key.to_string(), m);
        Ok(m)
    }

    /// Minimal graded free resolution of `m` through homological degree `len`.
    pub fn resolution(&self, m: &Module, len: usize) -> Result<Arc<Resolution>> {
        let min = m.minimal()?;
        let key = min.key()?;
        let prefix = {
            let memo = self.memo.lock().unwrap();
            match memo.resolutions.get(&key) {
                Some(r) if r.length() >= len || r.complete => return Ok(r.clone()),
                Some(r) => Some(r.clone()),
                None => None,
            }
        };
        let cache_key = format!("{key}|len={len}");
        if let Some(cache) = &self.cache {
            if let Some(text) = cache.get(&cache_key) {
                if let Some(r) = Resolution::from_text(&text, min.ring().field()) {
                    if r.degrees.first().map(|d| d.as_slice()) == Some(min.gens()) {
                        let r = Arc::new(r);
                        self.store_resolution(&key, &r);
                        return Ok(r);
                    }
                }
            }
        }
        let r = Arc::new(resolve(&min, len, prefix.as_deref())?);
        if let Some(cache) = &self.cache {
            cache.put(&cache_key, &r.to_text());
        }
        self.store_resolution(&key, &r);
        Ok(r)
    }

    fn store_resolution(&self, key: &str, r: &Arc<Resolution>) {
        let mut memo = self.memo.lock().unwrap();
        let replace = match memo.resolutions.get(key) {
            Some(old) => r.length() > old.length() || (r.complete && !old.complete),
            None => true,
        };
        if replace {
            memo.resolutions.insert(key.to_string(), r.clone());
        }
    }
}

impl Engine {
    pub fn is_isomorphic(&self, m: &Module, n: &Module) -> Result<crate::iso::IsoVerdict> {
        crate::iso::is_isomorphic(m, n, self.config.seed, self.config.iso_attempts)
    }
}
