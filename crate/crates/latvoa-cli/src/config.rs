//! JSON configuration: lattice, cocycle, optional λ data and named submonoids.

use std::collections::BTreeMap;
use std::path::Path;

use latvoa::fock::{LambdaData, Space};
use latvoa::lattice::{Cocycle, Lattice, SubMonoid, DEFAULT_SEARCH_BOUND};
use latvoa::Q;
use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::CliError;

/// A rational given either as a JSON integer or as a string like `"-3/4"`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum RationalSpec {
    Int(i64),
    Text(String),
}

impl RationalSpec {
    pub fn value(&self) -> Result<Q, CliError> {
        match self {
            RationalSpec::Int(n) => Ok(latvoa::q(*n)),
            RationalSpec::Text(s) => crate::expr::parse_rational(s).ok_or_else(|| CliError::Config(format!("bad rational {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct LambdaSpec {
    pub pairings: Vec<RationalSpec>,
    pub norm: RationalSpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MonoidSpec {
    Split {
        #[serde(default)]
        free: Vec<Vec<i64>>,
        #[serde(default)]
        nonneg: Vec<Vec<i64>>,
    },
    Generated {
        generators: Vec<Vec<i64>>,
        #[serde(default)]
        bound: Option<u32>,
    },
    Semigroup {
        #[serde(default)]
        free: Vec<Vec<i64>>,
        #[serde(default)]
        positive: Vec<Vec<i64>>,
    },
    Union {
        parts: Vec<MonoidSpec>,
    },
}

impl MonoidSpec {
    pub fn build(&self) -> SubMonoid {
        match self {
            MonoidSpec::Split { free, nonneg } => SubMonoid::split(free.clone(), nonneg.clone()),
            MonoidSpec::Generated { generators, bound } => {
                SubMonoid::Generated { generators: generators.clone(), bound: bound.unwrap_or(DEFAULT_SEARCH_BOUND) }
            }
            MonoidSpec::Semigroup { free, positive } => SubMonoid::Semigroup { free: free.clone(), positive: positive.clone() },
            MonoidSpec::Union { parts } => SubMonoid::Union(parts.iter().map(MonoidSpec::build).collect()),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub rank: usize,
    pub gram: Vec<Vec<i64>>,
    pub basis_names: Vec<String>,
    pub cocycle: Vec<Vec<i8>>,
    #[serde(default)]
    pub lambda: Option<LambdaSpec>,
    #[serde(default)]
    pub submonoids: BTreeMap<String, MonoidSpec>,
}

/// A validated configuration together with its digest.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub config: Config,
    pub space: Space,
    pub digest: String,
}

impl Loaded {
    pub fn from_bytes(bytes: &[u8]) -> Result<Self, CliError> {
        let config: Config = serde_json::from_slice(bytes).map_err(|e| CliError::Config(e.to_string()))?;
        if config.gram.len() != config.rank || config.basis_names.len() != config.rank {
            return Err(CliError::Config(format!("rank {} does not match gram/basis_names", config.rank)));
        }
        let lattice = Lattice::new(config.gram.clone(), config.basis_names.clone()).map_err(|e| CliError::Config(e.to_string()))?;
        let cocycle = Cocycle::new(config.cocycle.clone()).map_err(|e| CliError::Config(e.to_string()))?;
        let lambda = match &config.lambda {
            None => None,
            Some(l) => Some(LambdaData {
                pairings: l.pairings.iter().map(RationalSpec::value).collect::<Result<_, _>>()?,
                norm: l.norm.value()?,
            }),
        };
        let space = Space::new(lattice, cocycle, lambda).map_err(|e| CliError::Config(e.to_string()))?;
        let digest = hex::encode(Sha256::digest(bytes));
        Ok(Loaded { config, space, digest })
    }

    pub fn from_path(path: &Path) -> Result<Self, CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::from_bytes(&bytes)
    }

    /// A named submonoid; `full` is always available.
    pub fn monoid(&self, name: &str) -> Result<SubMonoid, CliError> {
        if let Some(m) = self.config.submonoids.get(name) {
            return Ok(m.build());
        }
        match name {
            "full" => Ok(SubMonoid::full(self.config.rank)),
            _ => Err(CliError::Config(format!("unknown submonoid {name:?}"))),
        }
    }

    /// `N` when the lattice is `Zα` with `(α|α) = 2N`.
    pub fn rank_one_n(&self) -> Option<i64> {
        (self.config.rank == 1 && self.config.gram[0][0] > 0 && self.config.gram[0][0] % 2 == 0).then(|| self.config.gram[0][0] / 2)
    }

    pub fn is_a2(&self) -> bool {
        self.config.gram == vec![vec![2, -1], vec![-1, 2]]
    }
}
