//! Prime cache handling for the CLI.
//!
//! A single `primes.bin` in the cache directory holds the largest table
//! generated so far; smaller requests reuse it, larger requests regenerate
//! and atomically replace it.

use std::path::Path;

use nuclear_core::primes::{self, PrimeTable};

/// Load a table covering `limit` from `dir/primes.bin`, regenerating and
/// rewriting the cache when it is missing, stale, or too small.
pub fn load_or_generate(limit: u64, dir: Option<&Path>) -> nuclear_core::Result<PrimeTable> {
    let Some(dir) = dir else {
        return primes::generate_primes(limit);
    };
    std::fs::create_dir_all(dir).map_err(|e| nuclear_core::Error::Io {
        path: dir.display().to_string(),
        source: e,
    })?;
    let path = dir.join("primes.bin");
    if path.exists() {
        match primes::read_cache(&path) {
            Ok(table) if table.limit() >= limit => {
                return Ok(table.shrink_to(limit).expect("limit checked"));
            }
            Ok(_) => {}
            Err(err) => {
                eprintln!("nuclear: ignoring unreadable prime cache: {err}");
            }
        }
    }
    let table = primes::generate_primes(limit)?;
    primes::write_cache(&path, &table)?;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cache_cycle() {
        let dir = std::env::temp_dir().join(format!("nuclear-cli-cache-{}", std::process::id()));
        let table = load_or_generate(10_000, Some(&dir)).unwrap();
        assert_eq!(table.len(), 1229);
        assert!(dir.join("primes.bin").exists());
        // smaller request is served from the existing file
        let small = load_or_generate(100, Some(&dir)).unwrap();
        assert_eq!(small.len(), 25);
        // larger request regenerates
        let big = load_or_generate(20_000, Some(&dir)).unwrap();
        assert!(big.limit() >= 20_000);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
