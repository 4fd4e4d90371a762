//! Sweep configuration: defaults, `key=value` config files, and flag
//! overrides, applied in that order.

use crate::testfn::TestFunctionId;
use std::path::{Path, PathBuf};
use thiserror::Error;

/// Configuration problems; they all map to process exit code 2.
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {source}")]
    FileRead {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("config line {line}: expected 'key = value', got '{got}'")]
    MalformedLine { line: usize, got: String },
    #[error("config line {line}: unknown key '{key}'")]
    UnknownKey { line: usize, key: String },
    #[error("config line {line}: invalid value '{value}' for key '{key}': {reason}")]
    InvalidValue {
        line: usize,
        key: String,
        value: String,
        reason: String,
    },
    #[error("derivative order {k} is not supported: built-in test functions carry closed forms up to order 2")]
    UnsupportedOrder { k: usize },
    #[error("invalid sweep range: {context}")]
    InvalidRange { context: &'static str },
}

/// Fully resolved sweep settings.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    /// First grid order of the sweep.
    pub n_start: usize,
    /// Last grid order (inclusive).
    pub n_end: usize,
    /// Grid-order increment.
    pub n_step: usize,
    /// Derivative order of the Hermite data.
    pub k: usize,
    /// Number of evaluation points for error statistics.
    pub eval_grid_size: usize,
    /// Test functions to sweep, in the order given.
    pub functions: Vec<TestFunctionId>,
    /// Also fit the value-only baseline on the doubled grid.
    pub baseline: bool,
    /// Solve through the equilibrated factorization.
    pub equilibrate: bool,
    /// Directory all output files are written into.
    pub out_dir: PathBuf,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            n_start: 100,
            n_end: 1000,
            n_step: 50,
            k: 1,
            eval_grid_size: 132,
            functions: TestFunctionId::ALL.to_vec(),
            baseline: false,
            equilibrate: true,
            out_dir: PathBuf::from("."),
        }
    }
}

impl SweepConfig {
    /// The grid orders of the sweep, ascending.
    pub fn grid_orders(&self) -> Vec<usize> {
        (self.n_start..=self.n_end).step_by(self.n_step).collect()
    }

    /// Applies defaults, then the config file, then the flags, and
    /// validates the result.
    pub fn resolve(
        file: Option<&ConfigOverrides>,
        flags: &ConfigOverrides,
    ) -> Result<SweepConfig, ConfigError> {
        Self::resolve_from(SweepConfig::default(), file, flags)
    }

    /// Like [`SweepConfig::resolve`] with an explicit base configuration, for
    /// subcommands whose natural defaults differ from the error sweep's.
    pub fn resolve_from(
        base: SweepConfig,
        file: Option<&ConfigOverrides>,
        flags: &ConfigOverrides,
    ) -> Result<SweepConfig, ConfigError> {
        let mut config = base;
        if let Some(file) = file {
            file.apply(&mut config);
        }
        flags.apply(&mut config);
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<(), ConfigError> {
        if self.n_step == 0 {
            return Err(ConfigError::InvalidRange {
                context: "the grid-order step must be at least 1",
            });
        }
        if self.n_start > self.n_end {
            return Err(ConfigError::InvalidRange {
                context: "the sweep start must not exceed the sweep end",
            });
        }
        if self.eval_grid_size < 2 {
            return Err(ConfigError::InvalidRange {
                context: "the evaluation grid needs at least two points",
            });
        }
        if self.k > 2 {
            return Err(ConfigError::UnsupportedOrder { k: self.k });
        }
        if self.functions.is_empty() {
            return Err(ConfigError::InvalidRange {
                context: "at least one test function must be selected",
            });
        }
        Ok(())
    }
}

/// Partial settings from one source; `None` means "not specified here".
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigOverrides {
    pub n_start: Option<usize>,
    pub n_end: Option<usize>,
    pub n_step: Option<usize>,
    pub k: Option<usize>,
    pub eval_grid_size: Option<usize>,
    pub functions: Option<Vec<TestFunctionId>>,
    pub baseline: Option<bool>,
    pub equilibrate: Option<bool>,
    pub out_dir: Option<PathBuf>,
}

impl ConfigOverrides {
    fn apply(&self, config: &mut SweepConfig) {
        if let Some(v) = self.n_start {
            config.n_start = v;
        }
        if let Some(v) = self.n_end {
            config.n_end = v;
        }
        if let Some(v) = self.n_step {
            config.n_step = v;
        }
        if let Some(v) = self.k {
            config.k = v;
        }
        if let Some(v) = self.eval_grid_size {
            config.eval_grid_size = v;
        }
        if let Some(v) = &self.functions {
            config.functions = v.clone();
        }
        if let Some(v) = self.baseline {
            config.baseline = v;
        }
        if let Some(v) = self.equilibrate {
            config.equilibrate = v;
        }
        if let Some(v) = &self.out_dir {
            config.out_dir = v.clone();
        }
    }
}

fn parse_value<T: std::str::FromStr>(
    line: usize,
    key: &str,
    value: &str,
    reason: &str,
) -> Result<T, ConfigError> {
    value.parse().map_err(|_| ConfigError::InvalidValue {
        line,
        key: key.to_string(),
        value: value.to_string(),
        reason: reason.to_string(),
    })
}

fn parse_functions(line: usize, value: &str) -> Result<Vec<TestFunctionId>, ConfigError> {
    value
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<TestFunctionId>()
                .map_err(|reason| ConfigError::InvalidValue {
                    line,
                    key: "functions".to_string(),
                    value: value.to_string(),
                    reason,
                })
        })
        .collect()
}

/// Parses a `key = value` config file. `#` starts a comment line and blank
/// lines are skipped. Environment variables are never consulted.
pub fn parse_config_file(path: &Path) -> Result<ConfigOverrides, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::FileRead {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config_text(&text)
}

fn parse_config_text(text: &str) -> Result<ConfigOverrides, ConfigError> {
    let mut out = ConfigOverrides::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (key, value) = trimmed.split_once('=').ok_or(ConfigError::MalformedLine {
            line,
            got: trimmed.to_string(),
        })?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "n-start" => out.n_start = Some(parse_value(line, key, value, "expected an integer")?),
            "n-end" => out.n_end = Some(parse_value(line, key, value, "expected an integer")?),
            "n-step" => out.n_step = Some(parse_value(line, key, value, "expected an integer")?),
            "k" => out.k = Some(parse_value(line, key, value, "expected an integer")?),
            "grid-size" => {
                out.eval_grid_size = Some(parse_value(line, key, value, "expected an integer")?)
            }
            "functions" => out.functions = Some(parse_functions(line, value)?),
            "baseline" => {
                out.baseline = Some(parse_value(line, key, value, "expected true or false")?)
            }
            "no-equilibrate" => {
                let no: bool = parse_value(line, key, value, "expected true or false")?;
                out.equilibrate = Some(!no);
            }
            "out-dir" => out.out_dir = Some(PathBuf::from(value)),
            other => {
                return Err(ConfigError::UnknownKey {
                    line,
                    key: other.to_string(),
                })
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_the_reference_sweep() {
        let config = SweepConfig::default();
        assert_eq!(
            (config.n_start, config.n_end, config.n_step),
            (100, 1000, 50)
        );
        assert_eq!(config.k, 1);
        assert_eq!(config.eval_grid_size, 132);
        assert_eq!(config.functions.len(), 4);
        assert!(!config.baseline);
        assert!(config.equilibrate);
        assert_eq!(config.grid_orders().len(), 19);
    }

    #[test]
    fn config_file_parses_all_keys_comments_and_blanks() {
        let text = "\
# sweep shape
n-start = 50
n-end=200

n-step = 25
k = 2
grid-size = 64
functions = f1, f3
baseline = true
no-equilibrate = true
out-dir = results/run1
";
        let parsed = parse_config_text(text).unwrap();
        assert_eq!(parsed.n_start, Some(50));
        assert_eq!(parsed.n_end, Some(200));
        assert_eq!(parsed.n_step, Some(25));
        assert_eq!(parsed.k, Some(2));
        assert_eq!(parsed.eval_grid_size, Some(64));
        assert_eq!(
            parsed.functions,
            Some(vec![TestFunctionId::F1, TestFunctionId::F3])
        );
        assert_eq!(parsed.baseline, Some(true));
        assert_eq!(parsed.equilibrate, Some(false));
        assert_eq!(parsed.out_dir, Some(PathBuf::from("results/run1")));
    }

    #[test]
    fn flags_override_the_file_which_overrides_defaults() {
        let file = ConfigOverrides {
            n_end: Some(300),
            k: Some(2),
            ..ConfigOverrides::default()
        };
        let flags = ConfigOverrides {
            k: Some(0),
            ..ConfigOverrides::default()
        };
        let config = SweepConfig::resolve(Some(&file), &flags).unwrap();
        assert_eq!(config.n_start, 100);
        assert_eq!(config.n_end, 300);
        assert_eq!(config.k, 0);
    }

    #[test]
    fn unknown_keys_and_malformed_lines_are_rejected() {
        assert!(matches!(
            parse_config_text("n-begin = 5").unwrap_err(),
            ConfigError::UnknownKey { line: 1, .. }
        ));
        assert!(matches!(
            parse_config_text("n-start 5").unwrap_err(),
            ConfigError::MalformedLine { line: 1, .. }
        ));
        assert!(matches!(
            parse_config_text("n-start = five").unwrap_err(),
            ConfigError::InvalidValue { line: 1, .. }
        ));
        assert!(matches!(
            parse_config_text("functions = f1,f9").unwrap_err(),
            ConfigError::InvalidValue { line: 1, .. }
        ));
    }

    #[test]
    fn validation_rejects_unsupported_settings() {
        let k7 = ConfigOverrides {
            k: Some(7),
            ..ConfigOverrides::default()
        };
        assert!(matches!(
            SweepConfig::resolve(None, &k7).unwrap_err(),
            ConfigError::UnsupportedOrder { k: 7 }
        ));
        let zero_step = ConfigOverrides {
            n_step: Some(0),
            ..ConfigOverrides::default()
        };
        assert!(matches!(
            SweepConfig::resolve(None, &zero_step).unwrap_err(),
            ConfigError::InvalidRange { .. }
        ));
        let backwards = ConfigOverrides {
            n_start: Some(500),
            n_end: Some(100),
            ..ConfigOverrides::default()
        };
        assert!(matches!(
            SweepConfig::resolve(None, &backwards).unwrap_err(),
            ConfigError::InvalidRange { .. }
        ));
        let no_functions = ConfigOverrides {
            functions: Some(vec![]),
            ..ConfigOverrides::default()
        };
        assert!(matches!(
            SweepConfig::resolve(None, &no_functions).unwrap_err(),
            ConfigError::InvalidRange { .. }
        ));
    }
}
