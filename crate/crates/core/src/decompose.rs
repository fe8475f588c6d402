//! GL-irreducible decompositions from per-weight quotient dimensions.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::combinatorics::{
    self, kostka, orbit_size, partitions_of, weyl_dim, CombinatoricsError, Partition,
};
use crate::hopf::HopfKind;
use crate::presentations::{self, BlockDims, Functor, FunctorSpec, PresentationError};
use crate::tensorspace::Convention;

/// Bumped whenever a relation builder changes meaning; invalidates disk caches.
const RELATION_REVISION: &str = "relations-3";

#[derive(Debug, Error)]
pub enum DecomposeError {
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Combinatorics(#[from] CombinatoricsError),
    #[error("negative multiplicity {mult} at {partition} for {spec} in degree {degree}\n{table}")]
    NegativeMultiplicity {
        spec: FunctorSpec,
        degree: u32,
        partition: Partition,
        mult: i64,
        table: String,
    },
    #[error("dimension reconstruction failed for {spec} in degree {degree} with {m} variables: weights sum to {weights}, characters give {characters}")]
    Reconstruction {
        spec: FunctorSpec,
        degree: u32,
        m: usize,
        weights: u64,
        characters: u64,
    },
    #[error("no bound formula applies to {0}")]
    SpecMismatch(FunctorSpec),
    #[error("worker pool: {0}")]
    Pool(String),
}

/// Hash identifying the engine build; cache records from other versions are ignored.
pub fn engine_version() -> String {
    let mut h = Sha256::new();
    h.update(env!("CARGO_PKG_NAME"));
    h.update(env!("CARGO_PKG_VERSION"));
    h.update(RELATION_REVISION);
    let digest = h.finalize();
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

/// Persistent storage for weight-block results.
pub trait BlockCache: Send + Sync {
    fn get(&self, spec: &FunctorSpec, weight: &Partition, convention: Convention) -> Option<BlockDims>;
    fn put(&self, spec: &FunctorSpec, weight: &Partition, convention: Convention, dims: BlockDims);
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub spec: FunctorSpec,
    pub degree: u32,
    pub row_bound: usize,
    pub entries: BTreeMap<Partition, u64>,
    /// Quotient dimension at every dominant weight used.
    pub weight_dims: BTreeMap<Partition, usize>,
    /// Total dimension with `m` variables, for `m` the row bound and one more.
    pub total_dims: BTreeMap<usize, u64>,
}

impl Decomposition {
    pub fn mult(&self, p: &Partition) -> u64 {
        self.entries.get(p).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_entries(&self.entries))
    }
}

/// `2[31^2]+[2^21]`, or `0` when empty.
pub fn format_entries(entries: &BTreeMap<Partition, u64>) -> String {
    if entries.is_empty() {
        return "0".into();
    }
    entries
        .iter()
        .map(|(p, m)| if *m == 1 { p.to_string() } else { format!("{m}{p}") })
        .collect::<Vec<_>>()
        .join("+")
}

/// Number of rows any irreducible summand can have.
pub fn row_bound(spec: &FunctorSpec, degree: u32) -> usize {
    match spec.hopf {
        HopfKind::Sym => spec.rank as usize,
        HopfKind::Tensor => degree.max(1) as usize,
    }
}

type MemoKey = (FunctorSpec, Partition);

pub struct Engine {
    convention: Convention,
    jobs: usize,
    memo: Mutex<HashMap<MemoKey, BlockDims>>,
    cache: Option<Arc<dyn BlockCache>>,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(Convention::RightAction)
    }
}

impl Engine {
    pub fn new(convention: Convention) -> Self {
        Engine {
            convention,
            jobs: 1,
            memo: Mutex::new(HashMap::new()),
            cache: None,
        }
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }

    pub fn with_cache(mut self, cache: Arc<dyn BlockCache>) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    /// Dimensions of the weight block whose sorted nonzero entries are `weight`.
    pub fn block(&self, spec: &FunctorSpec, weight: &Partition) -> Result<BlockDims, DecomposeError> {
        let key = (*spec, weight.clone());
        if let Some(d) = self.memo.lock().unwrap().get(&key) {
            return Ok(*d);
        }
        if let Some(d) = self.cache.as_ref().and_then(|c| c.get(spec, weight, self.convention)) {
            self.memo.lock().unwrap().insert(key, d);
            return Ok(d);
        }
        let w = weight.to_weight(weight.len().max(1));
        let d = presentations::quotient_dim(spec, &w, self.convention)?;
        if let Some(c) = &self.cache {
            c.put(spec, weight, self.convention, d);
        }
        self.memo.lock().unwrap().insert(key, d);
        Ok(d)
    }

    fn blocks(
        &self,
        spec: &FunctorSpec,
        weights: &[Partition],
    ) -> Result<BTreeMap<Partition, usize>, DecomposeError> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .map_err(|e| DecomposeError::Pool(e.to_string()))?;
        let dims: Vec<(Partition, usize)> = pool.install(|| {
            weights
                .par_iter()
                .map(|p| self.block(spec, p).map(|d| (p.clone(), d.quotient)))
                .collect::<Result<_, _>>()
        })?;
        Ok(dims.into_iter().collect())
    }

    pub fn decompose(&self, spec: &FunctorSpec, degree: u32) -> Result<Decomposition, DecomposeError> {
        let m = row_bound(spec, degree);
        let mut dec = Decomposition {
            spec: *spec,
            degree,
            row_bound: m,
            entries: BTreeMap::new(),
            weight_dims: BTreeMap::new(),
            total_dims: BTreeMap::new(),
        };
        if degree == 0 {
            dec.total_dims.insert(m, 0);
            dec.total_dims.insert(m + 1, 0);
            return Ok(dec);
        }
        let parity_ok = match spec.parity {
            None => true,
            Some(presentations::Parity::Even) => degree.is_multiple_of(2),
            Some(presentations::Parity::Odd) => degree % 2 == 1,
        };
        if !parity_ok {
            return Err(PresentationError::ParityMismatch {
                parity: spec.parity.unwrap(),
                degree,
            }
            .into());
        }
        let dominant = partitions_of(degree, m + 1);
        let dims = self.blocks(spec, &dominant)?;

        let mut mults: BTreeMap<Partition, i64> = BTreeMap::new();
        for lambda in dominant.iter().filter(|p| p.len() <= m) {
            let mu = lambda.to_weight(m);
            let mut v = dims[lambda] as i64;
            for (kappa, mk) in &mults {
                v -= mk * kostka(kappa, &mu)? as i64;
            }
            if v < 0 {
                return Err(DecomposeError::NegativeMultiplicity {
                    spec: *spec,
                    degree,
                    partition: lambda.clone(),
                    mult: v,
                    table: dims
                        .iter()
                        .map(|(p, d)| format!("  {p}: {d}"))
                        .collect::<Vec<_>>()
                        .join("\n"),
                });
            }
            if v > 0 {
                mults.insert(lambda.clone(), v);
            }
        }
        dec.entries = mults.into_iter().map(|(p, v)| (p, v as u64)).collect();
        dec.weight_dims = dims;

        for mm in [m, m + 1] {
            let weights: u64 = dec
                .weight_dims
                .iter()
                .filter(|(p, _)| p.len() <= mm)
                .map(|(p, d)| orbit_size(p, mm) * *d as u64)
                .sum();
            let characters: u64 = dec.entries.iter().map(|(p, k)| k * weyl_dim(p, mm)).sum();
            if weights != characters {
                return Err(DecomposeError::Reconstruction {
                    spec: *spec,
                    degree,
                    m: mm,
                    weights,
                    characters,
                });
            }
            dec.total_dims.insert(mm, weights);
        }
        Ok(dec)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Equal,
    #[serde(rename = ">")]
    Greater,
    #[serde(rename = "VIOLATION")]
    Violation,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Equal => write!(f, "="),
            Relation::Greater => write!(f, ">"),
            Relation::Violation => write!(f, "VIOLATION"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRow {
    pub partition: Partition,
    pub computed: u64,
    pub bound: u64,
    pub relation: Relation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub spec: FunctorSpec,
    pub degree: u32,
    /// Name of the formula compared against.
    pub formula: String,
    /// Whether the formula is an exact value rather than a lower bound.
    pub exact: bool,
    pub rows: Vec<BoundRow>,
}

impl BoundsReport {
    pub fn violations(&self) -> usize {
        self.rows.iter().filter(|r| r.relation == Relation::Violation).count()
    }

    pub fn all_equal(&self) -> bool {
        self.rows.iter().all(|r| r.relation == Relation::Equal)
    }
}

/// Compare a Sym(V) decomposition of rank 2 or 3 with its closed-form
/// multiplicities, partition by partition.
pub fn verify_bounds(dec: &Decomposition) -> Result<BoundsReport, DecomposeError> {
    let spec = dec.spec;
    if spec.hopf != HopfKind::Sym || spec.rank < 2 {
        return Err(DecomposeError::SpecMismatch(spec));
    }
    let (formula, exact) = match (spec.rank, spec.functor) {
        (2, Functor::HH) => ("rank2", true),
        (2, Functor::Omega) => ("omega2", true),
        (3, Functor::HH) => ("rank3", false),
        (3, Functor::Omega) => ("iota", false),
        _ => return Err(DecomposeError::SpecMismatch(spec)),
    };
    let closed: BTreeMap<Partition, u64> = if formula == "omega2" {
        combinatorics::omega2_closed_form(dec.degree).into_iter().collect()
    } else {
        BTreeMap::new()
    };
    let mut rows = Vec::new();
    for p in partitions_of(dec.degree, spec.rank as usize) {
        let (a, b, c) = (p.part(0), p.part(1), p.part(2));
        let bound = match formula {
            "rank2" => combinatorics::rank2_bound(a, b)?,
            "omega2" => closed.get(&p).copied().unwrap_or(0),
            "rank3" => combinatorics::rank3_bound(a, b, c)?,
            _ => combinatorics::iota_bound(a, b, c)?,
        };
        let computed = dec.mult(&p);
        let relation = if computed < bound || (exact && computed != bound) {
            Relation::Violation
        } else if computed == bound {
            Relation::Equal
        } else {
            Relation::Greater
        };
        rows.push(BoundRow {
            partition: p,
            computed,
            bound,
            relation,
        });
    }
    Ok(BoundsReport {
        spec,
        degree: dec.degree,
        formula: formula.into(),
        exact,
        rows,
    })
}
