//! Flat `key = value` configuration files.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};

/// One `key = value` pair per line; blank lines and `#` comments skipped.
/// Keys are lowercased; a repeated key is an error.
pub fn parse_key_values(text: &str, origin: &Path) -> Result<BTreeMap<String, (usize, String)>> {
    let mut out = BTreeMap::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::parse(origin, idx + 1, "expected `key = value`"))?;
        let key = key.trim().to_ascii_lowercase().replace('-', "_");
        if key.is_empty() {
            return Err(Error::parse(origin, idx + 1, "empty key"));
        }
        if out
            .insert(key.clone(), (idx + 1, value.trim().to_owned()))
            .is_some()
        {
            return Err(Error::parse(
                origin,
                idx + 1,
                format!("duplicate key `{key}`"),
            ));
        }
    }
    Ok(out)
}

pub fn load_key_values(path: &Path) -> Result<BTreeMap<String, (usize, String)>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_key_values(&text, path)
}
