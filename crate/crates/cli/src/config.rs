//! JSON configuration files.
//!
//! ```json
//! {"kind": "linear", "r": 2, "field": {"prime": 101},
//!  "subspaces": [{"points": [[1, 0, 0]]}, {"points": [["1/2", 1, 0]]}]}
//! ```

use std::fmt;

use ga_cox_core::scalar::parse_rational;
use ga_cox_core::{BlowupModel, ConfigKind, ConfigSpec, Error as CoreError, Field};
use num_rational::BigRational;
use serde::Deserialize;
use serde_json::value::RawValue;

/// A configuration problem, located by 1-based line when possible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Document<'a> {
    #[serde(borrow)]
    kind: &'a RawValue,
    #[serde(borrow, default)]
    n: Option<&'a RawValue>,
    #[serde(borrow, default)]
    r: Option<&'a RawValue>,
    #[serde(borrow, default)]
    subspaces: Option<&'a RawValue>,
    #[serde(borrow, default)]
    field: Option<&'a RawValue>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Subspace<'a> {
    #[serde(borrow)]
    points: Vec<Vec<&'a RawValue>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PrimeField {
    prime: u64,
}

/// A parsed configuration together with the source lines of its parts.
#[derive(Debug, Clone)]
pub struct LoadedConfig {
    pub spec: ConfigSpec,
    kind_line: usize,
    size_line: usize,
    subspace_lines: Vec<usize>,
}

struct Source<'a> {
    text: &'a str,
}

impl<'a> Source<'a> {
    fn line_of(&self, raw: &RawValue) -> usize {
        let offset = raw.get().as_ptr() as usize - self.text.as_ptr() as usize;
        1 + self.text[..offset].bytes().filter(|&b| b == b'\n').count()
    }

    fn err(&self, raw: &RawValue, message: impl Into<String>) -> ConfigError {
        ConfigError {
            line: Some(self.line_of(raw)),
            message: message.into(),
        }
    }

    fn parse<T: serde::Deserialize<'a>>(
        &self,
        raw: &'a RawValue,
        what: &str,
    ) -> Result<T, ConfigError> {
        serde_json::from_str(raw.get()).map_err(|e| self.err(raw, format!("{what}: {e}")))
    }
}

fn json_error(e: &serde_json::Error) -> ConfigError {
    ConfigError {
        line: (e.line() > 0).then_some(e.line()),
        message: format!("malformed document: {e}"),
    }
}

/// Parses `"Q"`, `"F_p"` or a bare prime `p`.
pub fn parse_field(text: &str) -> Result<Field, String> {
    let t = text.trim();
    if t == "Q" {
        return Ok(Field::Rational);
    }
    let digits = t.strip_prefix("F_").unwrap_or(t);
    let p: u64 = digits
        .parse()
        .map_err(|_| format!("field must be Q, F_p or a prime p, got {text:?}"))?;
    Field::prime(p).map_err(|e| e.to_string())
}

fn parse_coordinate(src: &Source<'_>, raw: &RawValue) -> Result<BigRational, ConfigError> {
    let text = raw.get();
    let body = if let Some(s) = text.strip_prefix('"') {
        s.strip_suffix('"').unwrap_or(s)
    } else if text.bytes().all(|b| b == b'-' || b.is_ascii_digit()) {
        text
    } else {
        return Err(src.err(
            raw,
            format!("coordinate {text} must be an integer or a rational string \"p/q\""),
        ));
    };
    parse_rational(body).map_err(|e| src.err(raw, e.to_string()))
}

/// Parses a configuration document without building the model.
pub fn parse_config(text: &str) -> Result<LoadedConfig, ConfigError> {
    let src = Source { text };
    let doc: Document<'_> = serde_json::from_str(text).map_err(|e| json_error(&e))?;
    let kind_line = src.line_of(doc.kind);
    let kind: String = src.parse(doc.kind, "kind")?;
    let field = match doc.field {
        None => Field::Rational,
        Some(raw) => {
            if raw.get().starts_with('"') {
                let name: String = src.parse(raw, "field")?;
                if name != "Q" {
                    return Err(src.err(
                        raw,
                        format!("field must be \"Q\" or {{\"prime\": p}}, got {name:?}"),
                    ));
                }
                Field::Rational
            } else {
                let pf: PrimeField = src.parse(raw, "field")?;
                Field::prime(pf.prime).map_err(|e| src.err(raw, e.to_string()))?
            }
        }
    };
    let unexpected = |raw: Option<&RawValue>, key: &str| match raw {
        Some(raw) => Err(src.err(
            raw,
            format!("key \"{key}\" does not apply to kind \"{kind}\""),
        )),
        None => Ok(()),
    };
    match kind.as_str() {
        "m0n" => {
            unexpected(doc.r, "r")?;
            unexpected(doc.subspaces, "subspaces")?;
            let raw = doc
                .n
                .ok_or_else(|| src.err(doc.kind, "kind \"m0n\" requires an integer \"n\""))?;
            let n: usize = src.parse(raw, "n")?;
            Ok(LoadedConfig {
                spec: ConfigSpec::m0n(n, field),
                kind_line,
                size_line: src.line_of(raw),
                subspace_lines: Vec::new(),
            })
        }
        "linear" => {
            unexpected(doc.n, "n")?;
            let raw_r = doc
                .r
                .ok_or_else(|| src.err(doc.kind, "kind \"linear\" requires an integer \"r\""))?;
            let r: usize = src.parse(raw_r, "r")?;
            let raw_subs = doc
                .subspaces
                .ok_or_else(|| src.err(doc.kind, "kind \"linear\" requires \"subspaces\""))?;
            let items: Vec<&RawValue> = src.parse(raw_subs, "subspaces")?;
            let mut subspaces = Vec::with_capacity(items.len());
            let mut subspace_lines = Vec::with_capacity(items.len());
            for item in items {
                subspace_lines.push(src.line_of(item));
                let sub: Subspace<'_> = src.parse(item, "subspace")?;
                let points = sub
                    .points
                    .iter()
                    .map(|p| p.iter().map(|c| parse_coordinate(&src, c)).collect())
                    .collect::<Result<Vec<Vec<_>>, _>>()?;
                subspaces.push(points);
            }
            Ok(LoadedConfig {
                spec: ConfigSpec {
                    kind: ConfigKind::Linear { r, subspaces },
                    field,
                },
                kind_line,
                size_line: src.line_of(raw_r),
                subspace_lines,
            })
        }
        other => Err(src.err(
            doc.kind,
            format!("kind must be \"m0n\" or \"linear\", got {other:?}"),
        )),
    }
}

impl LoadedConfig {
    /// Builds the model, attaching source lines to validation errors.
    pub fn build(&self) -> Result<BlowupModel, ConfigError> {
        self.spec.build().map_err(|e| {
            let line = match &e {
                CoreError::InvalidSubspace { index, .. } => {
                    self.subspace_lines.get(*index).copied()
                }
                CoreError::InvalidConfig(_) => Some(self.size_line),
                _ => Some(self.kind_line),
            };
            ConfigError {
                line,
                message: e.to_string(),
            }
        })
    }
}
