use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::point_count::DEFAULT_ENUMERATION_CAP;
use crate::quotient::DEFAULT_LIFT_CAP;

/// Environment variable that overrides the cache directory.
pub const CACHE_DIR_ENV: &str = "MAXCURVE_CACHE_DIR";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Table,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "table" => Ok(OutputFormat::Table),
            other => Err(Error::InvalidArgument(format!("unknown output format {other:?}"))),
        }
    }
}

/// Settings shared by every command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    /// Largest field size q^k that is enumerated point by point.
    pub enumeration_cap: u64,
    /// Largest lift order s for Lang solutions over F_{q^s}.
    pub lift_cap: u64,
    /// Series truncation order; None uses each check's own default.
    pub truncation: Option<usize>,
    pub workers: usize,
    pub cache_dir: Option<PathBuf>,
    pub format: OutputFormat,
    /// Include wall-clock timings in reports. Off makes output byte-stable.
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            lift_cap: DEFAULT_LIFT_CAP,
            truncation: None,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            cache_dir: None,
            format: OutputFormat::Json,
            timings: true,
        }
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("{key} = {value:?} is not a valid number")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(Error::InvalidArgument(format!("{key} = {value:?} is not a boolean"))),
    }
}

impl RunConfig {
    /// Sets one key; the keys are the field names.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key.trim() {
            "enumeration_cap" => self.enumeration_cap = parse_num(key, value)?,
            "lift_cap" => self.lift_cap = parse_num(key, value)?,
            "truncation" => self.truncation = Some(parse_num(key, value)?),
            "workers" => self.workers = parse_num(key, value)?,
            "cache_dir" => self.cache_dir = (!value.is_empty()).then(|| PathBuf::from(value)),
            "format" => self.format = value.parse()?,
            "timings" => self.timings = parse_bool(key, value)?,
            other => return Err(Error::InvalidArgument(format!("unknown configuration key {other:?}"))),
        }
        Ok(())
    }

    /// Applies a `key=value` assignment.
    pub fn apply(&mut self, assignment: &str) -> Result<()> {
        let (k, v) = assignment
            .split_once('=')
            .ok_or_else(|| Error::InvalidArgument(format!("expected key=value, got {assignment:?}")))?;
        self.set(k, v)
    }

    /// Applies every `key=value` line of `text`; blank lines and lines
    /// starting with `#` are skipped.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            self.apply(line)
                .map_err(|e| Error::InvalidArgument(format!("line {}: {e}", i + 1)))?;
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let mut c = RunConfig::default();
        c.apply_text(&std::fs::read_to_string(path)?)?;
        c.validate()?;
        Ok(c)
    }

    /// Takes the cache directory from the environment when set.
    pub fn with_env_cache_dir(mut self) -> Self {
        if let Some(dir) = std::env::var_os(CACHE_DIR_ENV).filter(|d| !d.is_empty()) {
            self.cache_dir = Some(PathBuf::from(dir));
        }
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.enumeration_cap == 0 || self.lift_cap == 0 || self.truncation == Some(0) {
            return Err(Error::InvalidArgument("caps must be positive".into()));
        }
        if self.workers == 0 {
            return Err(Error::InvalidArgument("worker count must be at least 1".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_key_value_text() {
        let mut c = RunConfig::default();
        c.apply_text("# comment\nlift_cap = 7\n\nformat=csv\nworkers=2\ncache_dir=/tmp/x\ntimings=no\n")
            .unwrap();
        assert_eq!(c.lift_cap, 7);
        assert_eq!(c.format, OutputFormat::Csv);
        assert_eq!(c.workers, 2);
        assert_eq!(c.cache_dir, Some(PathBuf::from("/tmp/x")));
        assert!(!c.timings);
        c.validate().unwrap();
    }

    #[test]
    fn rejects_bad_input() {
        let mut c = RunConfig::default();
        assert!(c.apply("nope=1").is_err());
        assert!(c.apply("lift_cap").is_err());
        assert!(c.apply("format=xml").is_err());
        assert!(c.apply_text("workers=two").is_err());
        c.workers = 0;
        assert!(c.validate().is_err());
        c.workers = 1;
        c.lift_cap = 0;
        assert!(c.validate().is_err());
    }
}
