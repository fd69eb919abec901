//! Count-report cache: content-hash keyed JSON files, written atomically.
//!
//! The key covers the normalized spec, k, quantity, method and budget, so a
//! budget change never serves stale partial results.

use std::path::{Path, PathBuf};

use dualfun::counting::CountReport;
use dualfun::exhaust::EnumLimits;
use sha2::{Digest, Sha256};

use crate::CliError;

pub const ENV_CACHE_DIR: &str = "DUALFUN_CACHE_DIR";

pub fn key(spec: &str, k: u32, quantity: &str, method: &str, limits: &EnumLimits) -> String {
    let payload = format!("{spec}|{k}|{quantity}|{method}|{}", limits.budget);
    let digest = Sha256::digest(payload.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn resolve_dir(flag: Option<&Path>) -> Option<PathBuf> {
    flag.map(Path::to_path_buf)
        .or_else(|| std::env::var_os(ENV_CACHE_DIR).map(PathBuf::from))
}

pub fn read(flag: Option<&Path>, key: &str) -> Option<CountReport> {
    let path = resolve_dir(flag)?.join(format!("{key}.json"));
    let bytes = std::fs::read(path).ok()?;
    serde_json::from_slice(&bytes).ok()
}

pub fn write(flag: Option<&Path>, key: &str, report: &CountReport) -> Result<(), CliError> {
    let Some(dir) = resolve_dir(flag) else {
        return Ok(());
    };
    let io = |e: std::io::Error| CliError {
        code: "io_error".into(),
        message: format!("cache write failed: {e}"),
    };
    std::fs::create_dir_all(&dir).map_err(io)?;
    let tmp = dir.join(format!(".{key}.tmp"));
    let final_path = dir.join(format!("{key}.json"));
    let bytes = serde_json::to_vec_pretty(report).expect("serializable");
    std::fs::write(&tmp, bytes).map_err(io)?;
    std::fs::rename(&tmp, &final_path).map_err(io)?;
    Ok(())
}
