use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;

use super::CliError;
use crate::taper::TaperSpec;

/// Invalid or unknown configuration entry.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub key: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(key: &str, message: impl Into<String>) -> Self {
        ConfigError {
            key: key.to_string(),
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid value for `{}`: {}", self.key, self.message)
    }
}

/// Keys accepted in config files and as flags.
pub const KEYS: &[&str] = &[
    "lambda",
    "b0",
    "x",
    "grid",
    "radius",
    "taper",
    "out",
    "resolution",
    "n",
    "spacing",
    "sigmas",
    "preset",
    "field",
    "lambda_max",
    "lambda_step",
    "kappa",
    "suite",
];

/// Expands a preset name into default settings.
pub type PresetFn = dyn Fn(&str) -> Option<Vec<(&'static str, String)>>;

/// Raw `key → value` settings with precedence flags > config file > preset,
/// plus an echo of every value actually read.
#[derive(Debug, Clone, Default)]
pub struct RunConfig {
    values: BTreeMap<String, String>,
    echo: BTreeMap<String, String>,
}

/// Parses `key=value` lines; `#` starts a comment.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, ConfigError> {
    let mut out = BTreeMap::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| ConfigError::new(line, "expected key=value"))?;
        let key = key.trim().replace('-', "_");
        if !KEYS.contains(&key.as_str()) {
            return Err(ConfigError::new(&key, "unknown key"));
        }
        out.insert(key, value.trim().to_string());
    }
    Ok(out)
}

impl RunConfig {
    /// Merges flags over an optional config file. A `preset` value, from
    /// either source, expands through `presets` beneath both.
    pub fn load(
        flags: &[(&'static str, Option<String>)],
        config: Option<&Path>,
        presets: &PresetFn,
    ) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        if let Some(path) = config {
            let text = fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.to_path_buf(),
                source,
            })?;
            values = parse_config_text(&text)?;
        }
        for (key, value) in flags {
            if let Some(v) = value {
                values.insert(key.to_string(), v.clone());
            }
        }
        if let Some(name) = values.get("preset").cloned() {
            let expansion =
                presets(&name).ok_or_else(|| ConfigError::new("preset", format!("unknown preset `{name}`")))?;
            for (key, value) in expansion {
                values.entry(key.to_string()).or_insert(value);
            }
        }
        Ok(RunConfig {
            values,
            echo: BTreeMap::new(),
        })
    }

    pub fn from_pairs(pairs: &[(&str, &str)]) -> Self {
        RunConfig {
            values: pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
            echo: BTreeMap::new(),
        }
    }

    fn raw(&mut self, key: &str, default: &str) -> String {
        let v = self.values.get(key).cloned().unwrap_or_else(|| default.to_string());
        self.echo.insert(key.to_string(), v.clone());
        v
    }

    pub fn is_set(&self, key: &str) -> bool {
        self.values.contains_key(key)
    }

    pub fn f64(
        &mut self,
        key: &str,
        default: f64,
        check: impl Fn(f64) -> Result<(), String>,
    ) -> Result<f64, ConfigError> {
        let raw = self.raw(key, &default.to_string());
        let v: f64 = raw
            .parse()
            .map_err(|_| ConfigError::new(key, format!("`{raw}` is not a number")))?;
        if !v.is_finite() {
            return Err(ConfigError::new(key, "must be finite"));
        }
        check(v).map_err(|m| ConfigError::new(key, m))?;
        Ok(v)
    }

    pub fn optional_f64(
        &mut self,
        key: &str,
        check: impl Fn(f64) -> Result<(), String>,
    ) -> Result<Option<f64>, ConfigError> {
        if self.is_set(key) {
            self.f64(key, 0.0, check).map(Some)
        } else {
            Ok(None)
        }
    }

    pub fn usize(&mut self, key: &str, default: usize, min: usize) -> Result<usize, ConfigError> {
        let raw = self.raw(key, &default.to_string());
        let v: usize = raw
            .parse()
            .map_err(|_| ConfigError::new(key, format!("`{raw}` is not a non-negative integer")))?;
        if v < min {
            return Err(ConfigError::new(key, format!("must be at least {min}")));
        }
        Ok(v)
    }

    pub fn optional_usize(&mut self, key: &str, min: usize) -> Result<Option<usize>, ConfigError> {
        if self.is_set(key) {
            self.usize(key, min, min).map(Some)
        } else {
            Ok(None)
        }
    }

    /// `re,im`.
    pub fn complex(&mut self, key: &str, default: Complex64) -> Result<Complex64, ConfigError> {
        let raw = self.raw(key, &format!("{},{}", default.re, default.im));
        let (re, im) = raw
            .split_once(',')
            .ok_or_else(|| ConfigError::new(key, "expected re,im"))?;
        let parse = |s: &str| -> Result<f64, ConfigError> {
            s.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| ConfigError::new(key, format!("`{}` is not a finite number", s.trim())))
        };
        Ok(Complex64::new(parse(re)?, parse(im)?))
    }

    /// `NxM`.
    pub fn grid(&mut self, key: &str, default: (usize, usize)) -> Result<(usize, usize), ConfigError> {
        let raw = self.raw(key, &format!("{}x{}", default.0, default.1));
        let (a, b) = raw
            .split_once(['x', 'X'])
            .ok_or_else(|| ConfigError::new(key, "expected NxM"))?;
        let parse = |s: &str| -> Result<usize, ConfigError> {
            s.trim()
                .parse::<usize>()
                .ok()
                .filter(|v| *v >= 2)
                .ok_or_else(|| ConfigError::new(key, "both sizes must be integers ≥ 2"))
        };
        Ok((parse(a)?, parse(b)?))
    }

    pub fn taper(&mut self, key: &str, default: &str) -> Result<TaperSpec, ConfigError> {
        let raw = self.raw(key, default);
        raw.parse::<TaperSpec>()
            .map_err(|e| ConfigError::new(key, e.to_string()))
    }

    /// Comma-separated reals.
    pub fn list_f64(&mut self, key: &str, default: &str) -> Result<Vec<f64>, ConfigError> {
        let raw = self.raw(key, default);
        raw.split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| ConfigError::new(key, format!("`{}` is not a finite number", s.trim())))
            })
            .collect()
    }

    pub fn string(&mut self, key: &str, default: &str) -> String {
        self.raw(key, default)
    }

    pub fn path(&mut self, key: &str, default: &str) -> PathBuf {
        PathBuf::from(self.raw(key, default))
    }

    /// `key=value` for every setting read so far, sorted by key.
    pub fn echo(&self) -> Vec<String> {
        self.echo.iter().map(|(k, v)| format!("{k}={v}")).collect()
    }
}

pub fn positive(v: f64) -> Result<(), String> {
    if v > 0.0 {
        Ok(())
    } else {
        Err("must be positive".into())
    }
}

pub fn any(_: f64) -> Result<(), String> {
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_text_parsing() {
        let m = parse_config_text("# comment\nlambda = 2.5\nlambda-max=6 # trailing\n\n").unwrap();
        assert_eq!(m["lambda"], "2.5");
        assert_eq!(m["lambda_max"], "6");
        assert_eq!(parse_config_text("bogus=1").unwrap_err().key, "bogus");
        assert!(parse_config_text("lambda").is_err());
    }

    #[test]
    fn typed_getters_name_the_key() {
        let mut c = RunConfig::from_pairs(&[
            ("x", "0.1,-0.2"),
            ("grid", "20x32"),
            ("radius", "-1"),
            ("lambda", "abc"),
        ]);
        assert_eq!(
            c.complex("x", Complex64::new(0.0, 0.0)).unwrap(),
            Complex64::new(0.1, -0.2)
        );
        assert_eq!(c.grid("grid", (2, 2)).unwrap(), (20, 32));
        assert_eq!(c.f64("radius", 4.0, positive).unwrap_err().key, "radius");
        assert_eq!(c.f64("lambda", 1.0, any).unwrap_err().key, "lambda");
        assert_eq!(c.f64("b0", 0.5, any).unwrap(), 0.5);
        assert_eq!(
            c.echo(),
            vec!["b0=0.5", "grid=20x32", "lambda=abc", "radius=-1", "x=0.1,-0.2"]
        );
    }
}
