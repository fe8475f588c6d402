//! One JSON file per computed weight block, named by a content hash.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::combinatorics::Partition;
use crate::decompose::{engine_version, BlockCache};
use crate::presentations::{BlockDims, FunctorSpec};
use crate::tensorspace::Convention;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub spec: FunctorSpec,
    pub weight: Partition,
    pub convention: Convention,
    pub ambient_dim: usize,
    pub rank: usize,
    pub quotient_dim: usize,
    pub engine_version_hash: String,
}

pub struct DiskCache {
    dir: PathBuf,
    version: String,
}

impl DiskCache {
    pub fn open(dir: &Path) -> std::io::Result<Self> {
        std::fs::create_dir_all(dir)?;
        Ok(DiskCache {
            dir: dir.to_path_buf(),
            version: engine_version(),
        })
    }

    pub fn path_for(&self, spec: &FunctorSpec, weight: &Partition, convention: Convention) -> PathBuf {
        let key = serde_json::to_string(&(spec, weight, convention)).expect("serializable key");
        let mut h = Sha256::new();
        h.update(key.as_bytes());
        h.update(self.version.as_bytes());
        self.dir.join(format!("{}.json", hex::encode(h.finalize())))
    }
}

impl BlockCache for DiskCache {
    fn get(&self, spec: &FunctorSpec, weight: &Partition, convention: Convention) -> Option<BlockDims> {
        let text = std::fs::read_to_string(self.path_for(spec, weight, convention)).ok()?;
        let r: CacheRecord = serde_json::from_str(&text).ok()?;
        let valid = r.engine_version_hash == self.version
            && r.spec == *spec
            && r.weight == *weight
            && r.convention == convention
            && r.rank + r.quotient_dim == r.ambient_dim;
        valid.then_some(BlockDims {
            ambient: r.ambient_dim,
            rank: r.rank,
            quotient: r.quotient_dim,
        })
    }

    fn put(&self, spec: &FunctorSpec, weight: &Partition, convention: Convention, dims: BlockDims) {
        let record = CacheRecord {
            spec: *spec,
            weight: weight.clone(),
            convention,
            ambient_dim: dims.ambient,
            rank: dims.rank,
            quotient_dim: dims.quotient,
            engine_version_hash: self.version.clone(),
        };
        let path = self.path_for(spec, weight, convention);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        let body = serde_json::to_string_pretty(&record).expect("serializable record");
        // a failed write only costs a recomputation
        if std::fs::write(&tmp, body).is_ok() {
            let _ = std::fs::rename(&tmp, &path);
        }
    }
}
