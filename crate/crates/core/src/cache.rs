//! On-disk cache of series residues keyed by the operator's content hash.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::diffop::{solve_series_residues, ResidueTarget, SeriesModulus, ThetaOperator, TruncatedSeries};
use crate::error::{Error, Result};

/// Environment variable overriding the cache directory.
pub const CACHE_DIR_ENV: &str = "FROBCY_CACHE_DIR";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheHeader {
    pub operator_hash: String,
    pub p: u64,
    #[serde(rename = "K")]
    pub k: u32,
    #[serde(rename = "N")]
    pub n: usize,
    /// sha256 of the residues joined by commas.
    pub checksum: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct CacheFile {
    header: CacheHeader,
    residues: Vec<String>,
}

/// Directory of cached series.
#[derive(Clone, Debug)]
pub struct SeriesCache {
    dir: PathBuf,
}

fn checksum(residues: &[String]) -> String {
    let mut h = Sha256::new();
    for (i, r) in residues.iter().enumerate() {
        if i > 0 {
            h.update(b",");
        }
        h.update(r.as_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

impl SeriesCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        SeriesCache { dir: dir.into() }
    }

    /// `$FROBCY_CACHE_DIR`, else `$XDG_CACHE_HOME/frobcy`, else `~/.cache/frobcy`.
    pub fn from_env() -> Option<Self> {
        if let Some(d) = std::env::var_os(CACHE_DIR_ENV) {
            return Some(Self::new(d));
        }
        if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
            return Some(Self::new(PathBuf::from(d).join("frobcy")));
        }
        std::env::var_os("HOME").map(|h| Self::new(PathBuf::from(h).join(".cache").join("frobcy")))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, op: &ThetaOperator, p: u64, k: u32, n: usize) -> PathBuf {
        self.dir.join(format!("{}-{p}-{k}-{n}.json", op.content_hash()))
    }

    /// Reads a cached series. `Ok(None)` on a miss, `CorruptCache` if the
    /// file exists but does not check out.
    pub fn load(&self, op: &ThetaOperator, p: u64, k: u32, n: usize) -> Result<Option<TruncatedSeries>> {
        let path = self.path_for(op, p, k, n);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let corrupt = |why: &str| Error::CorruptCache(format!("{}: {why}", path.display()));
        let file: CacheFile = serde_json::from_str(&text).map_err(|e| corrupt(&e.to_string()))?;
        let h = &file.header;
        if h.operator_hash != op.content_hash() || h.p != p || h.k != k || h.n != n {
            return Err(corrupt("header does not match the request"));
        }
        if file.residues.len() != n + 1 || checksum(&file.residues) != h.checksum {
            return Err(corrupt("residues do not match the checksum"));
        }
        let coeffs = file
            .residues
            .iter()
            .map(|r| r.parse::<BigInt>().map_err(|e| corrupt(&e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Some(TruncatedSeries {
            modulus: SeriesModulus::Padic { prime: p, cap: k },
            coeffs,
            guaranteed: k,
            source: op.name().to_string(),
        }))
    }

    /// Writes through a temporary file and a rename.
    pub fn store(&self, op: &ThetaOperator, series: &TruncatedSeries) -> Result<PathBuf> {
        let SeriesModulus::Padic { prime, cap } = series.modulus else {
            return Err(Error::Unknown("only residue series are cached".into()));
        };
        fs::create_dir_all(&self.dir)?;
        let residues: Vec<String> = series.coeffs.iter().map(|c| c.to_string()).collect();
        let file = CacheFile {
            header: CacheHeader {
                operator_hash: op.content_hash(),
                p: prime,
                k: cap,
                n: series.degree(),
                checksum: checksum(&residues),
            },
            residues,
        };
        let path = self.path_for(op, prime, cap, series.degree());
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(serde_json::to_string(&file)?.as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(&path).map_err(|e| Error::Io(e.to_string()))?;
        Ok(path)
    }

    /// Residues `c_0..c_N mod p^K` of the holomorphic solution, from the
    /// cache when possible. Corrupt entries are recomputed and overwritten.
    pub fn series(&self, op: &ThetaOperator, p: u64, k: u32, n: usize) -> Result<TruncatedSeries> {
        Ok(self
            .series_many(
                op,
                &[ResidueTarget {
                    prime: p,
                    cap: k,
                    degree: n,
                }],
            )?
            .pop()
            .expect("one target"))
    }

    /// Like [`SeriesCache::series`] for several targets; misses are computed
    /// in a single recurrence pass.
    pub fn series_many(&self, op: &ThetaOperator, targets: &[ResidueTarget]) -> Result<Vec<TruncatedSeries>> {
        let mut out: Vec<Option<TruncatedSeries>> = targets
            .iter()
            .map(|t| self.load(op, t.prime, t.cap, t.degree).ok().flatten())
            .collect();
        let missing: Vec<ResidueTarget> = targets
            .iter()
            .zip(&out)
            .filter(|(_, s)| s.is_none())
            .map(|(t, _)| *t)
            .collect();
        if !missing.is_empty() {
            let mut fresh = solve_series_residues(op, &missing)?.into_iter();
            for slot in out.iter_mut().filter(|s| s.is_none()) {
                let s = fresh.next().expect("one series per miss");
                self.store(op, &s)?;
                *slot = Some(s);
            }
        }
        Ok(out.into_iter().map(|s| s.expect("filled")).collect())
    }
}
