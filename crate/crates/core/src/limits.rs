//! Process-wide cap on combinatorial enumerations (Weyl groups, subset sums,
//! Borel graphs, block scans).

use crate::error::{Error, Result};
use std::sync::atomic::{AtomicU64, Ordering};

pub const DEFAULT_LIMIT: u64 = 5_000_000;
pub const ENV_VAR: &str = "SUPERBBW_LIMIT";

static LIMIT: AtomicU64 = AtomicU64::new(DEFAULT_LIMIT);

pub fn enumeration_limit() -> u64 {
    LIMIT.load(Ordering::Relaxed)
}

pub fn set_enumeration_limit(limit: u64) {
    LIMIT.store(limit.max(1), Ordering::Relaxed);
}

/// Reads `SUPERBBW_LIMIT` if present. Returns the value that was applied.
pub fn apply_env_limit() -> Result<Option<u64>> {
    match std::env::var(ENV_VAR) {
        Ok(raw) => {
            let value: u64 = raw.trim().parse().map_err(|_| {
                Error::parse(
                    0,
                    format!("{ENV_VAR} must be a positive integer, got {raw:?}"),
                )
            })?;
            set_enumeration_limit(value);
            Ok(Some(value))
        }
        Err(_) => Ok(None),
    }
}

/// Fails with `LimitExceeded` if `needed` exceeds the current cap.
pub fn check(what: &str, needed: u128) -> Result<()> {
    let limit = enumeration_limit() as u128;
    if needed > limit {
        return Err(Error::LimitExceeded {
            what: what.to_string(),
            needed,
            limit,
        });
    }
    Ok(())
}
