//! Reading and validating inputs, and the digest that identifies them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use polyarith::json::{GroupSpec, GroupSpecJson, LieAlgebraJson, MatrixJson};
use polyarith::lie::{LieAlgebra, DEFAULT_MAX_DIM};
use polyarith::linalg::{IntegerMatrix, RationalMatrix};
use polyarith::{Error, ErrorKind};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const MAX_DIM_VAR: &str = "POLYARITH_MAX_DIM";

#[derive(Debug)]
pub enum CliError {
    Io { path: String, message: String },
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io { path, message } => write!(f, "cannot read {path}: {message}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    fn kind(&self) -> ErrorKind {
        match self {
            CliError::Io { .. } => ErrorKind::Malformed,
            CliError::Core(e) => e.kind(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self.kind() {
            ErrorKind::Malformed => 1,
            ErrorKind::Precondition => 2,
            ErrorKind::Internal => 3,
        }
    }

    pub fn to_json(&self) -> Value {
        let kind = match self.kind() {
            ErrorKind::Malformed => "malformed",
            ErrorKind::Precondition => "precondition",
            ErrorKind::Internal => "internal",
        };
        let mut out = json!({ "kind": kind, "exit_code": self.exit_code(), "message": self.to_string() });
        if let CliError::Core(Error::Schema { pointer, .. }) = self {
            out["pointer"] = json!(pointer);
        }
        out
    }
}

/// Everything a command read, in order, for the report digest.
#[derive(Debug, Default)]
pub struct Inputs {
    parts: Vec<(String, Vec<u8>)>,
}

impl Inputs {
    /// SHA-256 over the length-prefixed `(name, bytes)` pairs.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        for (name, bytes) in &self.parts {
            h.update((name.len() as u64).to_le_bytes());
            h.update(name.as_bytes());
            h.update((bytes.len() as u64).to_le_bytes());
            h.update(bytes);
        }
        format!("{:x}", h.finalize())
    }

    pub fn text<'a>(&mut self, name: &str, value: &'a str) -> &'a str {
        self.parts.push((name.to_string(), value.as_bytes().to_vec()));
        value
    }

    pub fn integer(&mut self, name: &str, value: &str) -> Result<BigInt, CliError> {
        self.text(name, value);
        BigInt::from_str(value.trim()).map_err(|_| Error::Parse(format!("{name} = {value:?} as an integer")).into())
    }

    fn file(&mut self, path: &str) -> Result<String, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io { path: path.to_string(), message: e.to_string() })?;
        self.parts.push(("file".into(), text.as_bytes().to_vec()));
        Ok(text)
    }

    pub fn group_spec(&mut self, path: &str) -> Result<GroupSpec, CliError> {
        let raw: GroupSpecJson = parse(&self.file(path)?)?;
        Ok(raw.to_spec()?)
    }

    pub fn rational_matrix(&mut self, path: &str) -> Result<RationalMatrix, CliError> {
        let raw: MatrixJson = parse(&self.file(path)?)?;
        Ok(raw.to_rational("")?)
    }

    pub fn integer_matrix(&mut self, path: &str) -> Result<IntegerMatrix, CliError> {
        let raw: MatrixJson = parse(&self.file(path)?)?;
        Ok(raw.to_integer("")?)
    }

    pub fn matrix_list(&mut self, path: &str) -> Result<Vec<RationalMatrix>, CliError> {
        let raw: Vec<MatrixJson> = parse(&self.file(path)?)?;
        Ok(raw.iter().enumerate().map(|(i, m)| m.to_rational(&format!("/{i}"))).collect::<Result<_, _>>()?)
    }

    pub fn lie_algebra(&mut self, path: &str) -> Result<LieAlgebra, CliError> {
        let raw: LieAlgebraJson = parse(&self.file(path)?)?;
        Ok(raw.to_algebra()?)
    }
}

/// Deserializes, reporting the failing location as a JSON pointer.
pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T, Error> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let pointer: String = e
            .path()
            .iter()
            .filter_map(|s| match s {
                serde_path_to_error::Segment::Seq { index } => Some(format!("/{index}")),
                serde_path_to_error::Segment::Map { key } => Some(format!("/{}", key.replace('~', "~0").replace('/', "~1"))),
                serde_path_to_error::Segment::Enum { variant } => Some(format!("/{variant}")),
                serde_path_to_error::Segment::Unknown => None,
            })
            .collect();
        Error::Schema { pointer, message: e.inner().to_string() }
    })?;
    de.end().map_err(|e| Error::Schema { pointer: String::new(), message: e.to_string() })?;
    Ok(value)
}

/// Dimension cap for Koszul complexes, overridable through the environment.
pub fn dimension_cap() -> Result<usize, CliError> {
    match std::env::var(MAX_DIM_VAR) {
        Err(_) => Ok(DEFAULT_MAX_DIM),
        Ok(v) => v.trim().parse().map_err(|_| Error::Parse(format!("{MAX_DIM_VAR}={v:?}")).into()),
    }
}
