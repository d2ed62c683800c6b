//! Parameter files and command-line overrides.
//!
//! A configuration file is flat TOML whose keys are the [`Parameters`] field
//! names. Overrides are `key=value` strings with the value in TOML syntax;
//! dashes in keys are accepted in place of underscores.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::Parameters;

fn parse_override(spec: &str) -> Result<(String, toml::Value)> {
    let (key, value) = spec
        .split_once('=')
        .ok_or_else(|| Error::InvalidConfig(format!("override `{spec}` is not key=value")))?;
    let key = key.trim().replace('-', "_");
    if key.is_empty() {
        return Err(Error::InvalidConfig(format!("override `{spec}` has an empty key")));
    }
    let mut table: toml::Table = format!("v = {}", value.trim())
        .parse()
        .map_err(|e| Error::InvalidConfig(format!("override `{spec}`: {e}")))?;
    let value = table.remove("v").expect("parsed table has the key");
    Ok((key, value))
}

/// Parameters from an optional file plus overrides, validated. When the
/// personal share is not given explicitly it follows the public and business
/// shares.
pub fn load_parameters(file: Option<&Path>, overrides: &[String]) -> Result<Parameters> {
    let mut table = match file {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|source| Error::Io {
                path: path.to_path_buf(),
                source,
            })?;
            text.parse::<toml::Table>()
                .map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))?
        }
        None => toml::Table::new(),
    };
    for spec in overrides {
        let (key, value) = parse_override(spec)?;
        table.insert(key, value);
    }
    let explicit_personal = table.contains_key("personal_share");
    let mut params: Parameters = toml::Value::Table(table)
        .try_into()
        .map_err(|e: toml::de::Error| Error::InvalidConfig(e.message().to_string()))?;
    if !explicit_personal {
        params.personal_share = params.derived_personal_share();
    }
    params.validate()?;
    Ok(params)
}
