//! Frozen aggregate values, stored as `name = value` lines.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::config::{ConfigError, KeyValues};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RegressionFile {
    pub header: Vec<String>,
    pub values: BTreeMap<String, f64>,
}

impl RegressionFile {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let kv = KeyValues::parse(text)?;
        let mut values = BTreeMap::new();
        for k in kv.keys() {
            values.insert(k.to_string(), kv.parse_value::<f64>(k)?.expect("present"));
        }
        let header = text.lines().take_while(|l| l.starts_with('#')).map(str::to_string).collect();
        Ok(RegressionFile { header, values })
    }

    /// Shortest round-trip formatting, so a reparse is bit-identical.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for h in &self.header {
            out.push_str(h);
            out.push('\n');
        }
        for (k, v) in &self.values {
            let _ = writeln!(out, "{k} = {v:?}");
        }
        out
    }

    pub fn with_prefix<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = (&'a str, f64)> + 'a {
        self.values
            .iter()
            .filter_map(move |(k, &v)| k.strip_prefix(prefix).and_then(|r| r.strip_prefix('.')).map(|r| (r, v)))
    }

    pub fn set_prefix(&mut self, prefix: &str, values: &BTreeMap<String, f64>) {
        self.values.retain(|k, _| !k.starts_with(&format!("{prefix}.")));
        for (k, &v) in values {
            self.values.insert(format!("{prefix}.{k}"), v);
        }
    }
}
