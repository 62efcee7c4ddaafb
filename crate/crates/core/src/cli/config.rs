//! Optional `key = value` settings file mirroring the command-line flags.
//!
//! Keys are flag names without the leading dashes. Blank lines and lines
//! starting with `#` are ignored. List-valued keys (`partition`,
//! `relations`) take comma-separated values. Flags given on the command
//! line win over the file.

use std::collections::HashMap;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

const KNOWN_KEYS: &[&str] = &[
    "r",
    "eta",
    "eta-min",
    "eta-max",
    "eta-steps",
    "lossy-mode",
    "partition",
    "relations",
    "samples",
    "seed",
    "output",
    "precision",
    "records",
    "measurements",
];

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Config {
    values: HashMap<String, String>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = HashMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Parse(format!("config line {}: expected key = value", i + 1))
            })?;
            let key = key.trim();
            if !KNOWN_KEYS.contains(&key) {
                return Err(Error::Parse(format!(
                    "config line {}: unknown key {key:?}",
                    i + 1
                )));
            }
            values.insert(key.to_string(), value.trim().to_string());
        }
        Ok(Config { values })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Config::parse(&std::fs::read_to_string(path)?)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.values
            .get(key)
            .map(|raw| {
                raw.parse()
                    .map_err(|_| Error::Parse(format!("config key {key:?}: cannot parse {raw:?}")))
            })
            .transpose()
    }

    pub fn list(&self, key: &str) -> Vec<String> {
        self.values
            .get(key)
            .map(|raw| {
                raw.split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(String::from)
                    .collect()
            })
            .unwrap_or_default()
    }

    /// The flag value if given, else the file value.
    pub fn resolve<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>> {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.get(key),
        }
    }

    /// Flag values if any were given, else the file's list.
    pub fn resolve_list(&self, flag: &[String], key: &str) -> Vec<String> {
        if flag.is_empty() {
            self.list(key)
        } else {
            flag.to_vec()
        }
    }
}
