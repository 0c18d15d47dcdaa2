//! Experiment descriptors: the JSON files consumed by `dqsim run`.

use std::fmt;
use std::str::FromStr;

use dqsim::linalg::{OracleTable, OracleTableError};
use dqsim::{FieldError, FieldSpec};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DescriptorError {
    #[error("invalid descriptor JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Oracle(#[from] OracleTableError),
    #[error("unknown oracle generator {0:?}")]
    UnknownGenerator(String),
    #[error("{0} requires {1}")]
    Missing(Algorithm, &'static str),
    #[error("{algorithm} needs {needed}, got {field}")]
    WrongField {
        algorithm: Algorithm,
        needed: &'static str,
        field: FieldSpec,
    },
    #[error("arity {n} exceeds the limit {max} (set DQSIM_MAX_N to raise it)")]
    ArityTooLarge { n: usize, max: usize },
    #[error("oracle arity {table} disagrees with n = {declared}")]
    ArityMismatch { table: usize, declared: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "grover")]
    Grover,
    #[serde(rename = "dj")]
    DeutschJozsa,
    #[serde(rename = "usat-modal")]
    UniqueSatModal,
    #[serde(rename = "usat-discrete")]
    UniqueSatDiscrete,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Grover => "grover",
            Algorithm::DeutschJozsa => "dj",
            Algorithm::UniqueSatModal => "usat-modal",
            Algorithm::UniqueSatDiscrete => "usat-discrete",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

/// Inline truth table, `{"n": k, "outputs": [0, 1, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InlineTable {
    pub n: usize,
    pub outputs: Vec<u64>,
}

/// Named oracle families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    /// True only at the given input.
    UniqueSat(usize),
    ConstantFalse,
    ConstantTrue,
    /// `parity(x & mask)`.
    Balanced(usize),
}

impl FromStr for Generator {
    type Err = DescriptorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || DescriptorError::UnknownGenerator(s.to_string());
        let arg = |prefix: &str| -> Option<Result<usize, DescriptorError>> {
            let inner = s.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
            Some(inner.trim().parse().map_err(|_| unknown()))
        };
        match s {
            "constant-false" | "unsat" => return Ok(Generator::ConstantFalse),
            "constant-true" => return Ok(Generator::ConstantTrue),
            _ => {}
        }
        if let Some(k) = arg("unique-sat") {
            return Ok(Generator::UniqueSat(k?));
        }
        if let Some(mask) = arg("balanced") {
            return Ok(Generator::Balanced(mask?));
        }
        Err(unknown())
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::UniqueSat(k) => write!(f, "unique-sat({k})"),
            Generator::ConstantFalse => f.write_str("constant-false"),
            Generator::ConstantTrue => f.write_str("constant-true"),
            Generator::Balanced(mask) => write!(f, "balanced({mask})"),
        }
    }
}

impl Generator {
    pub fn build(&self, n: usize) -> Result<OracleTable, OracleTableError> {
        match *self {
            Generator::UniqueSat(k) => OracleTable::unique_sat(n, Some(k)),
            Generator::ConstantFalse => OracleTable::constant(n, false),
            Generator::ConstantTrue => OracleTable::constant(n, true),
            Generator::Balanced(mask) => {
                let size = 1usize.checked_shl(n as u32).unwrap_or(0);
                if mask == 0 || mask >= size {
                    return Err(OracleTableError::OutOfRange { index: mask, size });
                }
                OracleTable::parity(n, mask)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OracleSource {
    Table(InlineTable),
    Generator(String),
}

/// One experiment to run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentDescriptor {
    pub algorithm: Algorithm,
    pub p: u64,
    pub degree: u64,
    /// Oracle arity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Grover database size.
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub database_size: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSource>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marked: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iterations: Option<u64>,
    #[serde(default)]
    pub format: OutputFormat,
}

impl ExperimentDescriptor {
    pub fn parse(json: &str) -> Result<Self, DescriptorError> {
        Ok(serde_json::from_str(json)?)
    }

    pub fn emit(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptor serializes")
    }

    pub fn field(&self) -> Result<FieldSpec, DescriptorError> {
        let field = FieldSpec::new(self.p, self.degree)?;
        let (ok, needed) = match self.algorithm {
            Algorithm::UniqueSatModal => (field.p() == 2 && field.degree() == 1, "F_2"),
            _ => (field.degree() == 2, "a degree-2 field"),
        };
        if !ok {
            return Err(DescriptorError::WrongField {
                algorithm: self.algorithm,
                needed,
                field,
            });
        }
        Ok(field)
    }

    /// Materializes the oracle table for oracle-driven algorithms.
    pub fn oracle_table(&self) -> Result<OracleTable, DescriptorError> {
        let source = self
            .oracle
            .as_ref()
            .ok_or(DescriptorError::Missing(self.algorithm, "\"oracle\""))?;
        match source {
            OracleSource::Table(t) => {
                if let Some(n) = self.n {
                    if n != t.n {
                        return Err(DescriptorError::ArityMismatch {
                            table: t.n,
                            declared: n,
                        });
                    }
                }
                let raw = serde_json::json!({ "n": t.n, "outputs": t.outputs });
                Ok(serde_json::from_value(raw)?)
            }
            OracleSource::Generator(name) => {
                let n = self
                    .n
                    .ok_or(DescriptorError::Missing(self.algorithm, "\"n\" with a generator oracle"))?;
                let max = dqsim::limits::max_arity();
                if n > max {
                    return Err(DescriptorError::ArityTooLarge { n, max });
                }
                Ok(name.parse::<Generator>()?.build(n)?)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_parse_and_print() {
        for s in ["unique-sat(5)", "constant-true", "constant-false", "balanced(3)"] {
            assert_eq!(s.parse::<Generator>().unwrap().to_string(), s);
        }
        assert_eq!("unsat".parse::<Generator>().unwrap(), Generator::ConstantFalse);
        assert!("unique-sat(x)".parse::<Generator>().is_err());
        assert!("bogus".parse::<Generator>().is_err());
        assert!(Generator::Balanced(0).build(2).is_err());
    }

    #[test]
    fn descriptor_field_checks() {
        let d = ExperimentDescriptor::parse(
            r#"{"algorithm":"usat-modal","p":3,"degree":2,"n":2,"oracle":"unsat"}"#,
        )
        .unwrap();
        assert!(matches!(d.field(), Err(DescriptorError::WrongField { .. })));
        let d = ExperimentDescriptor::parse(r#"{"algorithm":"dj","p":5,"degree":2,"n":2}"#).unwrap();
        assert!(matches!(d.field(), Err(DescriptorError::Field(FieldError::BadResidue(5)))));
        assert!(matches!(d.oracle_table(), Err(DescriptorError::Missing(..))));
    }

    #[test]
    fn inline_tables() {
        let d = ExperimentDescriptor::parse(
            r#"{"algorithm":"usat-modal","p":2,"degree":1,"oracle":{"n":1,"outputs":[0,1]}}"#,
        )
        .unwrap();
        assert_eq!(d.oracle_table().unwrap().satisfying(), [1]);
        let bad = ExperimentDescriptor::parse(
            r#"{"algorithm":"usat-modal","p":2,"degree":1,"n":2,"oracle":{"n":1,"outputs":[0,1]}}"#,
        )
        .unwrap();
        assert!(matches!(bad.oracle_table(), Err(DescriptorError::ArityMismatch { .. })));
        assert!(ExperimentDescriptor::parse(r#"{"algorithm":"nope","p":2,"degree":1}"#).is_err());
    }
}
