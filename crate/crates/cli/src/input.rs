use std::fs;

use dold_zeta_core::series::rational::serde_bigint_vec;
use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::CliError;

/// Reads `arg` as inline JSON, or from a file when it starts with `@`.
pub fn read_json<T: DeserializeOwned>(flag: &str, arg: &str) -> Result<T, CliError> {
    let (text, origin) = match arg.strip_prefix('@') {
        Some(path) => (
            fs::read_to_string(path).map_err(|e| CliError::Usage(format!("--{flag}: cannot read {path}: {e}")))?,
            path.to_string(),
        ),
        None => (arg.to_string(), "inline input".to_string()),
    };
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("--{flag} ({origin}): {e}")))
}

#[derive(Deserialize)]
struct Ints(#[serde(with = "serde_bigint_vec")] Vec<BigInt>);

/// A JSON array of integers (numbers, or strings for large values).
pub fn read_ints(flag: &str, arg: &str) -> Result<Vec<BigInt>, CliError> {
    read_json::<Ints>(flag, arg).map(|i| i.0)
}
