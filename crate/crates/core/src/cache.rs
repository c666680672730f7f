//! Disk persistence for context caches, with an audit mode.
//!
//! One JSON file per (N, d) pair under `<cache-dir>/<N>_<d>/cache.json`,
//! carrying a schema version. Loading is best-effort: a missing file is an
//! empty cache, a version mismatch is an error. Audit mode recomputes every
//! cached entry from scratch and demands bit-exact agreement.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::matrix::MatrixIdx;
use crate::schur::{MonomialWord, SchurContext};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct ConvRow {
    a: MatrixIdx,
    c: MatrixIdx,
    entries: Vec<(MatrixIdx, LaurentPoly)>,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    schema_version: u32,
    n: usize,
    d: u32,
    dexp: Vec<(MatrixIdx, usize)>,
    conv_rows: Vec<ConvRow>,
    monomials: Vec<(MatrixIdx, MonomialWord)>,
}

fn cache_path(dir: &Path, n: usize, d: u32) -> PathBuf {
    dir.join(format!("{n}_{d}")).join("cache.json")
}

impl SchurContext {
    /// Write the current cache contents to disk.
    pub fn save_cache(&self, dir: &Path) -> Result<()> {
        let caches = self.caches.lock().unwrap();
        let file = CacheFile {
            schema_version: SCHEMA_VERSION,
            n: self.n(),
            d: self.d(),
            dexp: {
                let mut v: Vec<_> = caches.dexp.iter().map(|(a, &e)| (a.clone(), e)).collect();
                v.sort();
                v
            },
            conv_rows: {
                let mut v: Vec<_> = caches
                    .conv_rows
                    .iter()
                    .map(|((a, c), row)| ConvRow {
                        a: a.clone(),
                        c: c.clone(),
                        entries: row.iter().map(|(b, g)| (b.clone(), g.clone())).collect(),
                    })
                    .collect();
                v.sort_by(|x, y| (&x.a, &x.c).cmp(&(&y.a, &y.c)));
                v
            },
            monomials: {
                let mut v: Vec<_> = caches
                    .monomials
                    .iter()
                    .map(|(a, w)| (a.clone(), w.clone()))
                    .collect();
                v.sort_by(|x, y| x.0.cmp(&y.0));
                v
            },
        };
        let path = cache_path(dir, self.n(), self.d());
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)
                .map_err(|e| Error::capability(format!("cache dir: {e}")))?;
        }
        let body = serde_json::to_string_pretty(&file)
            .map_err(|e| Error::consistency(format!("cache serialize: {e}")))?;
        fs::write(&path, body).map_err(|e| Error::capability(format!("cache write: {e}")))?;
        Ok(())
    }

    /// Load cache contents from disk, if present.
    pub fn load_cache(&self, dir: &Path) -> Result<bool> {
        let path = cache_path(dir, self.n(), self.d());
        if !path.exists() {
            return Ok(false);
        }
        let body =
            fs::read_to_string(&path).map_err(|e| Error::capability(format!("cache read: {e}")))?;
        let file: CacheFile = serde_json::from_str(&body)
            .map_err(|e| Error::consistency(format!("cache parse: {e}")))?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(Error::consistency(format!(
                "cache schema version {} != expected {}",
                file.schema_version, SCHEMA_VERSION
            )));
        }
        if file.n != self.n() || file.d != self.d() {
            return Err(Error::consistency("cache is for a different (N, d)".to_string()));
        }
        let mut caches = self.caches.lock().unwrap();
        for (a, e) in file.dexp {
            caches.dexp.insert(a, e);
        }
        for row in file.conv_rows {
            let map: BTreeMap<MatrixIdx, LaurentPoly> = row.entries.into_iter().collect();
            caches.conv_rows.insert((row.a, row.c), map);
        }
        for (a, w) in file.monomials {
            caches.monomials.insert(a, w);
        }
        Ok(true)
    }

    /// Recompute every cached value from scratch and compare bit-exactly.
    /// Returns the number of audited entries.
    pub fn audit_cache(&self) -> Result<usize> {
        let snapshot = {
            let caches = self.caches.lock().unwrap();
            (
                caches.dexp.clone(),
                caches.conv_rows.clone(),
                caches.monomials.clone(),
            )
        };
        let fresh = SchurContext::with_config(
            self.n(),
            self.d(),
            self.primes().to_vec(),
            self.budget(),
        )?;
        let mut audited = 0usize;
        for (a, expect) in &snapshot.0 {
            let got = fresh.d_exponent(a)?;
            if got != *expect {
                return Err(Error::consistency(format!(
                    "audit: d-exponent of {a:?} recomputes to {got}, cached {expect}"
                )));
            }
            audited += 1;
        }
        for ((a, c), expect) in &snapshot.1 {
            // recompute the row through the public product path
            for (b, g) in expect {
                let prod = fresh.basis_mult(a, b)?;
                let da = fresh.d_exponent(a)? as i64;
                let db = fresh.d_exponent(b)? as i64;
                let dc = fresh.d_exponent(c)? as i64;
                let expect_coeff = g.double_exponents().shift(dc - da - db);
                if prod.coeff(c) != expect_coeff {
                    return Err(Error::consistency(format!(
                        "audit: structure constant ({a:?},{b:?};{c:?}) mismatch"
                    )));
                }
                audited += 1;
            }
        }
        for (a, w) in &snapshot.2 {
            let got = fresh.monomial_word(a)?;
            if &got != w {
                return Err(Error::consistency(format!(
                    "audit: monomial word for {a:?} changed"
                )));
            }
            audited += 1;
        }
        Ok(audited)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flagcount::FlagType;
    use crate::matrix::ProfileMatrix;

    #[test]
    fn cache_round_trip_and_audit() {
        let dir = std::env::temp_dir().join(format!("qschur-cache-test-{}", std::process::id()));
        let ctx = SchurContext::new(1, 2).unwrap();
        let nu = FlagType::new(vec![1], 2).unwrap();
        // populate: one block's worth of products and monomials
        let labels = ProfileMatrix::with_margins(&nu.increments(), &nu.increments());
        for a in &labels {
            for b in &labels {
                ctx.basis_mult(a, b).unwrap();
            }
            ctx.monomial_word(a).unwrap();
        }
        ctx.save_cache(&dir).unwrap();

        let ctx2 = SchurContext::new(1, 2).unwrap();
        assert!(ctx2.load_cache(&dir).unwrap());
        assert!(ctx2.audit_cache().unwrap() > 0);
        // loaded caches reproduce the same products
        for a in &labels {
            for b in &labels {
                assert_eq!(ctx.basis_mult(a, b).unwrap(), ctx2.basis_mult(a, b).unwrap());
            }
        }
        let _ = std::fs::remove_dir_all(&dir);
    }
}
