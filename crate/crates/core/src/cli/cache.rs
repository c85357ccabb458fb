//! On-disk basis cache: one checksummed JSON document per `(n, m, space)`.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::monogenics::{orthonormal_harmonic_basis, orthonormal_monogenic_basis, q_basis_on_sphere, BasisSet, SpaceTag};
use crate::polynomials::{MVPolynomial, PolynomialRecord};

pub const CACHE_FORMAT: u32 = 1;

/// Environment variable that overrides `--cache-dir`.
pub const CACHE_ENV: &str = "DIRAC_SPHERE_CACHE";

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
struct CacheBody {
    format: u32,
    n: usize,
    m: usize,
    space: String,
    orthonormal: bool,
    quad_degree: Option<usize>,
    omega_multiplied: bool,
    elements: Vec<PolynomialRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CacheDocument {
    #[serde(flatten)]
    body: CacheBody,
    checksum: String,
}

fn checksum(body: &CacheBody) -> Result<String> {
    let canonical = serde_json::to_string(body)?;
    Ok(hex::encode(Sha256::digest(canonical.as_bytes())))
}

/// Serialized cache document for a basis.
pub fn encode_basis(basis: &BasisSet) -> Result<String> {
    let body = CacheBody {
        format: CACHE_FORMAT,
        n: basis.n(),
        m: basis.m(),
        space: basis.space().name().to_string(),
        orthonormal: basis.is_orthonormal(),
        quad_degree: basis.quadrature_degree(),
        omega_multiplied: basis.is_omega_multiplied(),
        elements: basis.stored().iter().map(MVPolynomial::to_record).collect(),
    };
    let checksum = checksum(&body)?;
    let mut text = serde_json::to_string_pretty(&CacheDocument { body, checksum })?;
    text.push('\n');
    Ok(text)
}

/// Parses and checks a cache document; `path` only labels errors.
pub fn decode_basis(text: &str, path: &Path) -> Result<BasisSet> {
    let integrity = |reason: String| Error::Integrity {
        path: path.to_path_buf(),
        reason,
    };
    let doc: CacheDocument = serde_json::from_str(text).map_err(|e| integrity(format!("unreadable document: {e}")))?;
    if doc.body.format != CACHE_FORMAT {
        return Err(integrity(format!("unsupported format {}", doc.body.format)));
    }
    let expected = checksum(&doc.body)?;
    if expected != doc.checksum {
        return Err(integrity(format!("checksum mismatch: stored {}, computed {expected}", doc.checksum)));
    }
    let space = SpaceTag::parse(&doc.body.space).ok_or_else(|| integrity(format!("unknown space {:?}", doc.body.space)))?;
    let dim = doc.body.n + 1;
    let elements = doc
        .body
        .elements
        .iter()
        .map(|r| MVPolynomial::from_record(dim, r))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| integrity(e.to_string()))?;
    BasisSet::from_parts(
        doc.body.n,
        doc.body.m,
        space,
        elements,
        doc.body.omega_multiplied,
        doc.body.orthonormal,
        doc.body.quad_degree,
    )
    .map_err(|e| integrity(e.to_string()))
}

/// A cache directory.
#[derive(Debug, Clone)]
pub struct BasisCache {
    dir: PathBuf,
}

impl BasisCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, n: usize, m: usize, space: SpaceTag) -> PathBuf {
        self.dir.join(format!("n{n}_m{m}_{}.json", space.name()))
    }

    /// `Ok(None)` when no entry exists.
    pub fn load(&self, n: usize, m: usize, space: SpaceTag) -> Result<Option<BasisSet>> {
        let path = self.path(n, m, space);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(source) => return Err(Error::Io { path, source }),
        };
        let basis = decode_basis(&text, &path)?;
        if basis.n() != n || basis.m() != m || basis.space() != space {
            return Err(Error::Integrity {
                path,
                reason: format!(
                    "entry describes n={} m={} space={}",
                    basis.n(),
                    basis.m(),
                    basis.space().name()
                ),
            });
        }
        Ok(Some(basis))
    }

    pub fn store(&self, basis: &BasisSet) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir).map_err(|source| Error::Io {
            path: self.dir.clone(),
            source,
        })?;
        let path = self.path(basis.n(), basis.m(), basis.space());
        fs::write(&path, encode_basis(basis)?).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        })?;
        Ok(path)
    }
}

/// Orthonormal `H_m`, `P_m` and `Q_m` bases, memoized in memory and, when a
/// cache is configured, on disk.
#[derive(Debug, Default)]
pub struct BasisProvider {
    cache: Option<BasisCache>,
    memo: RefCell<BTreeMap<(usize, usize, SpaceTag), BasisSet>>,
    hits: RefCell<usize>,
}

impl BasisProvider {
    pub fn new(cache: Option<BasisCache>) -> Self {
        Self {
            cache,
            memo: RefCell::default(),
            hits: RefCell::new(0),
        }
    }

    pub fn cache(&self) -> Option<&BasisCache> {
        self.cache.as_ref()
    }

    /// Number of bases read back from disk so far.
    pub fn disk_hits(&self) -> usize {
        *self.hits.borrow()
    }

    pub fn get(&self, n: usize, m: usize, space: SpaceTag) -> Result<BasisSet> {
        if let Some(b) = self.memo.borrow().get(&(n, m, space)) {
            return Ok(b.clone());
        }
        let basis = match self.from_disk(n, m, space)? {
            Some(b) => b,
            None => {
                let b = match space {
                    SpaceTag::H => orthonormal_harmonic_basis(n, m)?,
                    SpaceTag::P => orthonormal_monogenic_basis(n, m)?,
                    SpaceTag::Q => q_basis_on_sphere(&self.get(n, m, SpaceTag::P)?)?,
                };
                if let Some(cache) = &self.cache {
                    cache.store(&b)?;
                }
                b
            }
        };
        self.memo.borrow_mut().insert((n, m, space), basis.clone());
        Ok(basis)
    }

    fn from_disk(&self, n: usize, m: usize, space: SpaceTag) -> Result<Option<BasisSet>> {
        let Some(cache) = &self.cache else {
            return Ok(None);
        };
        let found = cache.load(n, m, space)?;
        if found.is_some() {
            *self.hits.borrow_mut() += 1;
            eprintln!("cache hit: {}", cache.path(n, m, space).display());
        }
        Ok(found)
    }

    pub fn harmonic(&self, n: usize, m: usize) -> Result<BasisSet> {
        self.get(n, m, SpaceTag::H)
    }

    pub fn monogenic(&self, n: usize, m: usize) -> Result<BasisSet> {
        self.get(n, m, SpaceTag::P)
    }

    pub fn harmonic_range(&self, n: usize, m_max: usize) -> Result<Vec<BasisSet>> {
        (0..=m_max).map(|m| self.harmonic(n, m)).collect()
    }

    pub fn monogenic_range(&self, n: usize, m_max: usize) -> Result<Vec<BasisSet>> {
        (0..=m_max).map(|m| self.monogenic(n, m)).collect()
    }
}
