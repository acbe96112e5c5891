//! Plain `key = value` configuration files.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::str::FromStr;

use dgc_core::WorkLimit;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing key `{0}`")]
    Missing(String),
    #[error("key `{key}`: cannot parse `{value}`")]
    Invalid { key: String, value: String },
    #[error("unknown key `{0}`")]
    Unknown(String),
}

/// Keys in file order are not preserved; later duplicates are rejected.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KeyValues {
    entries: BTreeMap<String, String>,
}

impl KeyValues {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(ConfigError::Syntax { line: i + 1, msg: "expected `key = value`".into() });
            };
            let k = k.trim().to_string();
            if k.is_empty() {
                return Err(ConfigError::Syntax { line: i + 1, msg: "empty key".into() });
            }
            if entries.insert(k.clone(), v.trim().to_string()).is_some() {
                return Err(ConfigError::Syntax { line: i + 1, msg: format!("duplicate key `{k}`") });
            }
        }
        Ok(KeyValues { entries })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn require(&self, key: &str) -> Result<&str, ConfigError> {
        self.get(key).ok_or_else(|| ConfigError::Missing(key.into()))
    }

    pub fn parse_value<T: FromStr>(&self, key: &str) -> Result<Option<T>, ConfigError> {
        self.get(key)
            .map(|v| v.parse().map_err(|_| ConfigError::Invalid { key: key.into(), value: v.into() }))
            .transpose()
    }

    /// Comma-separated list; an empty value is an empty list.
    pub fn parse_list<T: FromStr>(&self, key: &str) -> Result<Option<Vec<T>>, ConfigError> {
        self.get(key)
            .map(|v| {
                v.split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse().map_err(|_| ConfigError::Invalid { key: key.into(), value: v.into() }))
                    .collect()
            })
            .transpose()
    }

    /// `a..b` (inclusive) or a single value.
    pub fn parse_range(&self, key: &str) -> Result<Option<RangeInclusive<u32>>, ConfigError> {
        let Some(v) = self.get(key) else { return Ok(None) };
        let bad = || ConfigError::Invalid { key: key.into(), value: v.into() };
        let (a, b) = match v.split_once("..") {
            Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().trim_start_matches('=').parse().map_err(|_| bad())?),
            None => {
                let x = v.parse().map_err(|_| bad())?;
                (x, x)
            }
        };
        if a > b {
            return Err(bad());
        }
        Ok(Some(a..=b))
    }

    /// Fails on keys outside `allowed`.
    pub fn check_keys(&self, allowed: &[&str]) -> Result<(), ConfigError> {
        match self.keys().find(|k| !allowed.contains(k)) {
            Some(k) => Err(ConfigError::Unknown(k.into())),
            None => Ok(()),
        }
    }
}

/// Enumeration budget, overridden by `DGC_WORK_LIMIT` when set.
pub fn work_limit_from_env() -> Result<WorkLimit, ConfigError> {
    match std::env::var("DGC_WORK_LIMIT") {
        Ok(v) => v
            .trim()
            .replace('_', "")
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite() && *x >= 1.0)
            .map(|x| WorkLimit(x as u128))
            .ok_or(ConfigError::Invalid { key: "DGC_WORK_LIMIT".into(), value: v }),
        Err(_) => Ok(WorkLimit::default()),
    }
}
