//! On-disk cache of stage reports, keyed by stage, fixtures and options.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::path::PathBuf;

use crate::stages::{Stage, StageReport, Status};

pub const ENV: &str = "MU_CURVES_CACHE_DIR";

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: PathBuf) -> Cache {
        Cache { dir }
    }

    /// The cache named by the environment, if any.
    pub fn from_env() -> Option<Cache> {
        std::env::var_os(ENV).filter(|v| !v.is_empty()).map(|v| Cache::new(v.into()))
    }

    fn path(&self, stage: Stage, key: u64) -> PathBuf {
        self.dir.join(format!("{stage}-{key:016x}.json"))
    }

    pub fn load(&self, stage: Stage, key: u64) -> Option<StageReport> {
        let text = std::fs::read_to_string(self.path(stage, key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    /// Stores verified and mismatched reports; errors are recomputed.
    pub fn store(&self, stage: Stage, key: u64, r: &StageReport) -> std::io::Result<()> {
        if !matches!(r.status, Status::Verified | Status::Mismatch) {
            return Ok(());
        }
        std::fs::create_dir_all(&self.dir)?;
        let tmp = self.dir.join(format!(".{stage}-{key:016x}.tmp"));
        std::fs::write(&tmp, serde_json::to_string(r).expect("report serializes"))?;
        std::fs::rename(tmp, self.path(stage, key))
    }
}

pub fn key(stage: Stage, fixtures: &str, options: &str) -> u64 {
    let mut h = DefaultHasher::new();
    env!("CARGO_PKG_VERSION").hash(&mut h);
    stage.name().hash(&mut h);
    fixtures.hash(&mut h);
    options.hash(&mut h);
    h.finish()
}
