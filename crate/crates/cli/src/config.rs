//! Run configuration: a flat JSON object, overlaid by command-line flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid config {path}: {source}")]
    Parse {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("no command given (pass a subcommand or set \"command\" in the config file)")]
    MissingCommand,
    #[error("{command} requires `{key}`")]
    Missing { command: &'static str, key: &'static str },
    #[error("`{key}` does not apply to {command}")]
    NotApplicable { command: &'static str, key: String },
    #[error("`{key}` must be {bound} (got {value})")]
    Bound {
        key: &'static str,
        bound: &'static str,
        value: i64,
    },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    VerifyIdentities,
    Scroll,
    Hqf,
    Classify,
    Conormal,
    Plucker,
    OracleCompare,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::VerifyIdentities => "verify-identities",
            CommandKind::Scroll => "scroll",
            CommandKind::Hqf => "hqf",
            CommandKind::Classify => "classify",
            CommandKind::Conormal => "conormal",
            CommandKind::Plucker => "plucker",
            CommandKind::OracleCompare => "oracle-compare",
        }
    }

    fn keys(self) -> &'static [&'static str] {
        match self {
            CommandKind::VerifyIdentities => &["m_max", "hqf_bound", "hqf_g_max", "search_bound"],
            CommandKind::Scroll => &["m", "r", "preset"],
            CommandKind::Hqf => &["n", "g", "e", "b"],
            CommandKind::Classify => &["n", "defect", "picard_rank_one"],
            CommandKind::Conormal => &["ambient", "m"],
            CommandKind::Plucker => &["degree"],
            CommandKind::OracleCompare => &["m", "r"],
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    /// `Y = P^m`, `E = O(1)^m`
    Projective,
}

const GLOBAL_KEYS: &[&str] = &["command", "output", "format", "n_max", "strict"];

/// Every recognised key, all optional. Also the config file schema.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub command: Option<CommandKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strict: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preset: Option<Preset>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defect: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub picard_rank_one: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ambient: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_max: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hqf_bound: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hqf_g_max: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search_bound: Option<i64>,
}

macro_rules! overlay_fields {
    ($base:ident, $top:ident; $($f:ident),*) => {
        Settings { $($f: $top.$f.or($base.$f)),* }
    };
}

impl Settings {
    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.to_owned(),
            source,
        })?;
        Self::from_json(&text).map_err(|source| ConfigError::Parse {
            path: path.to_owned(),
            source,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Values set in `top` win.
    pub fn overlay(self, top: Settings) -> Settings {
        let base = self;
        overlay_fields!(base, top; command, output, format, n_max, strict, m, r, preset, n, g, e, b,
            defect, picard_rank_one, ambient, degree, m_max, hqf_bound, hqf_g_max, search_bound)
    }

    fn present_keys(&self) -> Vec<String> {
        match serde_json::to_value(self) {
            Ok(Value::Object(map)) => map.keys().cloned().collect(),
            _ => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepBounds {
    pub n_max: u32,
    pub m_max: u32,
    pub hqf_bound: i64,
    pub hqf_g_max: i64,
    pub search_bound: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    VerifyIdentities(SweepBounds),
    Scroll { m: i64, r: i64, preset: Option<Preset> },
    Hqf { n: i64, g: i64, e: i64, b: i64 },
    Classify { n: i64, defect: i64, picard_rank_one: bool },
    Conormal { ambient: i64, m: i64 },
    Plucker { degree: i64 },
    OracleCompare { n_max: u32, pair: Option<(i64, i64)> },
}

impl Command {
    pub fn kind(&self) -> CommandKind {
        match self {
            Command::VerifyIdentities(_) => CommandKind::VerifyIdentities,
            Command::Scroll { .. } => CommandKind::Scroll,
            Command::Hqf { .. } => CommandKind::Hqf,
            Command::Classify { .. } => CommandKind::Classify,
            Command::Conormal { .. } => CommandKind::Conormal,
            Command::Plucker { .. } => CommandKind::Plucker,
            Command::OracleCompare { .. } => CommandKind::OracleCompare,
        }
    }

    /// Resolved parameters, for echoing in reports.
    pub fn parameters(&self) -> BTreeMap<String, Value> {
        let mut p = BTreeMap::new();
        let mut put = |k: &str, v: Value| {
            p.insert(k.to_string(), v);
        };
        match *self {
            Command::VerifyIdentities(b) => {
                put("n_max", b.n_max.into());
                put("m_max", b.m_max.into());
                put("hqf_bound", b.hqf_bound.into());
                put("hqf_g_max", b.hqf_g_max.into());
                put("search_bound", b.search_bound.into());
            }
            Command::Scroll { m, r, preset } => {
                put("m", m.into());
                put("r", r.into());
                if let Some(Preset::Projective) = preset {
                    put("preset", "projective".into());
                }
            }
            Command::Hqf { n, g, e, b } => {
                put("n", n.into());
                put("g", g.into());
                put("e", e.into());
                put("b", b.into());
            }
            Command::Classify { n, defect, picard_rank_one } => {
                put("n", n.into());
                put("defect", defect.into());
                put("picard_rank_one", picard_rank_one.into());
            }
            Command::Conormal { ambient, m } => {
                put("ambient", ambient.into());
                put("m", m.into());
            }
            Command::Plucker { degree } => put("degree", degree.into()),
            Command::OracleCompare { n_max, pair } => match pair {
                Some((m, r)) => {
                    put("m", m.into());
                    put("r", r.into());
                }
                None => put("n_max", n_max.into()),
            },
        }
        p
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub strict: bool,
    pub output: Option<PathBuf>,
    pub format: Format,
}

pub const DEFAULT_N_MAX: i64 = 8;
pub const DEFAULT_M_MAX: i64 = 6;
pub const DEFAULT_HQF_BOUND: i64 = 10;
pub const DEFAULT_HQF_G_MAX: i64 = 3;
pub const DEFAULT_SEARCH_BOUND: i64 = 10_000;

fn positive(key: &'static str, value: i64) -> Result<i64, ConfigError> {
    if value >= 1 {
        Ok(value)
    } else {
        Err(ConfigError::Bound { key, bound: "positive", value })
    }
}

fn small(key: &'static str, value: i64, max: i64) -> Result<u32, ConfigError> {
    let v = positive(key, value)?;
    if v > max {
        return Err(ConfigError::Bound { key, bound: "at most the supported maximum", value });
    }
    Ok(v as u32)
}

impl RunConfig {
    pub fn resolve(s: Settings) -> Result<Self, ConfigError> {
        let kind = s.command.ok_or(ConfigError::MissingCommand)?;
        let name = kind.name();
        for key in s.present_keys() {
            if !GLOBAL_KEYS.contains(&key.as_str()) && !kind.keys().contains(&key.as_str()) {
                return Err(ConfigError::NotApplicable { command: name, key });
            }
        }
        let need = |key: &'static str, v: Option<i64>| v.ok_or(ConfigError::Missing { command: name, key });
        let n_max = small("n_max", s.n_max.unwrap_or(DEFAULT_N_MAX), 16)?;
        let command = match kind {
            CommandKind::VerifyIdentities => Command::VerifyIdentities(SweepBounds {
                n_max,
                m_max: small("m_max", s.m_max.unwrap_or(DEFAULT_M_MAX), 10)?,
                hqf_bound: positive("hqf_bound", s.hqf_bound.unwrap_or(DEFAULT_HQF_BOUND))?,
                hqf_g_max: match s.hqf_g_max.unwrap_or(DEFAULT_HQF_G_MAX) {
                    v if v >= 0 => v,
                    v => return Err(ConfigError::Bound { key: "hqf_g_max", bound: "nonnegative", value: v }),
                },
                search_bound: positive("search_bound", s.search_bound.unwrap_or(DEFAULT_SEARCH_BOUND))?,
            }),
            CommandKind::Scroll => Command::Scroll {
                m: need("m", s.m)?,
                r: need("r", s.r)?,
                preset: s.preset,
            },
            CommandKind::Hqf => Command::Hqf {
                n: need("n", s.n)?,
                g: need("g", s.g)?,
                e: need("e", s.e)?,
                b: need("b", s.b)?,
            },
            CommandKind::Classify => Command::Classify {
                n: need("n", s.n)?,
                defect: need("defect", s.defect)?,
                picard_rank_one: s.picard_rank_one.unwrap_or(false),
            },
            CommandKind::Conormal => Command::Conormal {
                ambient: need("ambient", s.ambient)?,
                m: need("m", s.m)?,
            },
            CommandKind::Plucker => Command::Plucker {
                degree: need("degree", s.degree)?,
            },
            CommandKind::OracleCompare => {
                let pair = match (s.m, s.r) {
                    (Some(m), Some(r)) => Some((m, r)),
                    (None, None) => None,
                    _ => return Err(ConfigError::Invalid("oracle-compare takes both `m` and `r` or neither".into())),
                };
                Command::OracleCompare { n_max, pair }
            }
        };
        Ok(RunConfig {
            command,
            strict: s.strict.unwrap_or(false),
            output: s.output,
            format: s.format.unwrap_or_default(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let file = Settings::from_json(r#"{"command": "plucker", "degree": 3, "strict": true}"#).unwrap();
        let flags = Settings {
            degree: Some(5),
            ..Settings::default()
        };
        let merged = file.overlay(flags);
        assert_eq!(merged.degree, Some(5));
        assert_eq!(merged.strict, Some(true));
        let cfg = RunConfig::resolve(merged).unwrap();
        assert_eq!(cfg.command, Command::Plucker { degree: 5 });
        assert!(cfg.strict);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(Settings::from_json(r#"{"command": "plucker", "degre": 3}"#).is_err());
    }

    #[test]
    fn inapplicable_keys_rejected() {
        let s = Settings::from_json(r#"{"command": "plucker", "degree": 3, "m": 2}"#).unwrap();
        assert!(matches!(RunConfig::resolve(s), Err(ConfigError::NotApplicable { .. })));
    }

    #[test]
    fn bounds_checked() {
        let s = Settings::from_json(r#"{"command": "verify-identities", "n_max": 0}"#).unwrap();
        assert!(matches!(RunConfig::resolve(s), Err(ConfigError::Bound { key: "n_max", .. })));
        let s = Settings::from_json(r#"{"command": "verify-identities", "search_bound": -3}"#).unwrap();
        assert!(RunConfig::resolve(s).is_err());
    }

    #[test]
    fn defaults() {
        let s = Settings::from_json(r#"{"command": "verify-identities"}"#).unwrap();
        let cfg = RunConfig::resolve(s).unwrap();
        assert_eq!(
            cfg.command,
            Command::VerifyIdentities(SweepBounds {
                n_max: 8,
                m_max: 6,
                hqf_bound: 10,
                hqf_g_max: 3,
                search_bound: 10_000,
            })
        );
        assert_eq!(cfg.format, Format::Text);
    }

    #[test]
    fn missing_parameters() {
        let s = Settings::from_json(r#"{"command": "hqf", "n": 4}"#).unwrap();
        assert!(matches!(RunConfig::resolve(s), Err(ConfigError::Missing { key: "g", .. })));
        assert!(matches!(RunConfig::resolve(Settings::default()), Err(ConfigError::MissingCommand)));
    }
}
