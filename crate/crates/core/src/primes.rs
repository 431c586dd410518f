//! Prime generation and the on-disk prime cache.
//!
//! Primes are produced by a bit-packed odd-only sieve of Eratosthenes; no
//! analytic prime counting is attempted. The cache file layout is
//!
//! ```text
//! magic   8 bytes   "PRIMES01"
//! limit   8 bytes   little-endian u64, inclusive sieve bound
//! count   8 bytes   little-endian u64, number of primes that follow
//! primes  count * 8 bytes, little-endian u64, ascending
//! ```
//!
//! Cache files are rewritten atomically (temp file + rename) under an
//! exclusive advisory lock; readers take a shared lock.

use std::fs::{self, File, OpenOptions};
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::{Error, Result};

const CACHE_MAGIC: &[u8; 8] = b"PRIMES01";

/// Rough memory budget for a single prime generation call.
///
/// A sieve to `limit` needs `limit / 16` bytes of bitmap plus about
/// `8 * 1.3 * limit / ln(limit)` bytes for the collected primes. One GiB
/// caps `limit` near 2e9, comfortably past every supported workload.
pub const MEMORY_BUDGET_BYTES: u64 = 1 << 30;

/// All primes up to an inclusive limit, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// Primes not exceeding `bound` (a prefix of the table).
    pub fn primes_up_to(&self, bound: u64) -> &[u64] {
        let cut = self.primes.partition_point(|&p| p <= bound);
        &self.primes[..cut]
    }

    /// Reinterpret a table read from a larger cache as one with a smaller
    /// limit. Returns `None` if the cache does not reach `limit`.
    pub fn shrink_to(&self, limit: u64) -> Option<PrimeTable> {
        if limit > self.limit {
            return None;
        }
        Some(PrimeTable {
            limit,
            primes: self.primes_up_to(limit).to_vec(),
        })
    }
}

fn estimated_bytes(limit: u64) -> u64 {
    let bitmap = limit / 16 + 16;
    let count = if limit < 10 {
        8
    } else {
        (1.3 * limit as f64 / (limit as f64).ln()) as u64
    };
    bitmap + 8 * count
}

/// Generate exactly the primes `p ≤ limit`, ascending.
pub fn generate_primes(limit: u64) -> Result<PrimeTable> {
    if estimated_bytes(limit) > MEMORY_BUDGET_BYTES {
        return Err(Error::ResourceLimit(format!(
            "prime sieve to {limit} needs ~{} bytes, budget is {}",
            estimated_bytes(limit),
            MEMORY_BUDGET_BYTES
        )));
    }
    if limit < 2 {
        return Ok(PrimeTable {
            limit,
            primes: Vec::new(),
        });
    }

    // Odd-only bitmap: bit i represents 2i + 3. A set bit marks a composite.
    let n_odd = if limit < 3 {
        0
    } else {
        ((limit - 3) / 2 + 1) as usize
    };
    let mut composite = vec![0u64; n_odd / 64 + 1];
    let is_set = |bits: &[u64], i: usize| bits[i >> 6] & (1 << (i & 63)) != 0;

    let root = limit.isqrt();
    let mut p = 3u64;
    while p <= root {
        let idx = ((p - 3) / 2) as usize;
        if !is_set(&composite, idx) {
            let mut m = p * p;
            while m <= limit {
                let j = ((m - 3) / 2) as usize;
                composite[j >> 6] |= 1 << (j & 63);
                m += 2 * p;
            }
        }
        p += 2;
    }

    let mut primes = Vec::with_capacity(estimated_bytes(limit) as usize / 8);
    primes.push(2);
    for i in 0..n_odd {
        if !is_set(&composite, i) {
            primes.push(2 * i as u64 + 3);
        }
    }
    Ok(PrimeTable { limit, primes })
}

/// Write a prime table to `path` atomically (temp file + rename), holding an
/// exclusive advisory lock on the destination for the duration.
pub fn write_cache(path: &Path, table: &PrimeTable) -> Result<()> {
    let ctx = |e: std::io::Error| Error::Io {
        path: path.display().to_string(),
        source: e,
    };

    // The lock file is the destination itself so concurrent writers serialize.
    let lock = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(ctx)?;
    lock.lock().map_err(ctx)?;

    let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
    let result = (|| -> std::io::Result<()> {
        let mut w = BufWriter::new(File::create(&tmp)?);
        w.write_all(CACHE_MAGIC)?;
        w.write_all(&table.limit.to_le_bytes())?;
        w.write_all(&(table.primes.len() as u64).to_le_bytes())?;
        for &p in &table.primes {
            w.write_all(&p.to_le_bytes())?;
        }
        w.flush()?;
        fs::rename(&tmp, path)?;
        Ok(())
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result.map_err(ctx)
}

/// Read a prime table back from a cache file.
pub fn read_cache(path: &Path) -> Result<PrimeTable> {
    let ctx = |e: std::io::Error| Error::Io {
        path: path.display().to_string(),
        source: e,
    };
    let file = File::open(path).map_err(ctx)?;
    file.lock_shared().map_err(ctx)?;
    let mut r = BufReader::new(file);

    let mut word = [0u8; 8];
    r.read_exact(&mut word).map_err(ctx)?;
    if &word != CACHE_MAGIC {
        return Err(Error::Format(format!(
            "{}: bad magic {:?}",
            path.display(),
            word
        )));
    }
    r.read_exact(&mut word).map_err(ctx)?;
    let limit = u64::from_le_bytes(word);
    r.read_exact(&mut word).map_err(ctx)?;
    let count = u64::from_le_bytes(word);
    if count > MEMORY_BUDGET_BYTES / 8 {
        return Err(Error::Format(format!(
            "{}: implausible prime count {count}",
            path.display()
        )));
    }

    let mut primes = Vec::with_capacity(count as usize);
    let mut prev = 0u64;
    for _ in 0..count {
        r.read_exact(&mut word).map_err(ctx)?;
        let p = u64::from_le_bytes(word);
        if p <= prev || p > limit {
            return Err(Error::Format(format!(
                "{}: primes not ascending or beyond limit",
                path.display()
            )));
        }
        primes.push(p);
        prev = p;
    }
    Ok(PrimeTable { limit, primes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_tables() {
        assert_eq!(generate_primes(10).unwrap().primes(), &[2, 3, 5, 7]);
        assert_eq!(generate_primes(1).unwrap().primes(), &[] as &[u64]);
        assert_eq!(generate_primes(0).unwrap().primes(), &[] as &[u64]);
        assert_eq!(generate_primes(2).unwrap().primes(), &[2]);
        assert_eq!(generate_primes(3).unwrap().primes(), &[2, 3]);
    }

    #[test]
    fn counts_match_pi() {
        // pi(10^k) reference values
        assert_eq!(generate_primes(100).unwrap().len(), 25);
        assert_eq!(generate_primes(10_000).unwrap().len(), 1229);
        assert_eq!(generate_primes(1_000_000).unwrap().len(), 78_498);
    }

    #[test]
    fn budget_is_enforced() {
        match generate_primes(u64::MAX) {
            Err(Error::ResourceLimit(_)) => {}
            other => panic!("expected resource limit, got {other:?}"),
        }
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("nuclear-prime-cache-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("primes.bin");
        let table = generate_primes(10_000).unwrap();
        write_cache(&path, &table).unwrap();
        let back = read_cache(&path).unwrap();
        assert_eq!(table, back);
        let small = back.shrink_to(100).unwrap();
        assert_eq!(small.len(), 25);
        assert_eq!(small.limit(), 100);
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn cache_rejects_garbage() {
        let dir = std::env::temp_dir().join(format!("nuclear-prime-bad-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("primes.bin");
        fs::write(&path, b"NOTPRIME____").unwrap();
        assert!(matches!(read_cache(&path), Err(Error::Format(_))));
        fs::remove_dir_all(&dir).unwrap();
    }
}
