use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use skewq_core::SignMatrix;

/// Contents of an input file: `{"n": 4, "neg_pairs": [[1, 3], [2, 3]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputSpec {
    pub n: usize,
    pub neg_pairs: Vec<[usize; 2]>,
}

#[derive(Debug)]
pub enum InputError {
    Io(std::io::Error),
    /// Malformed JSON, with serde's line and column.
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    /// Well-formed JSON that violates an invariant of the format.
    Field {
        field: String,
        message: String,
    },
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Io(e) => write!(f, "cannot read input: {e}"),
            InputError::Syntax { line, column, message } => {
                write!(f, "line {line}, column {column}: {message}")
            }
            InputError::Field { field, message } => write!(f, "field `{field}`: {message}"),
        }
    }
}

impl std::error::Error for InputError {}

fn field(field: impl Into<String>, message: impl Into<String>) -> InputError {
    InputError::Field {
        field: field.into(),
        message: message.into(),
    }
}

impl InputSpec {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        let spec: InputSpec = serde_json::from_str(text).map_err(|e| InputError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn read(path: &Path) -> Result<Self, InputError> {
        Self::parse(&std::fs::read_to_string(path).map_err(InputError::Io)?)
    }

    pub fn validate(&self) -> Result<(), InputError> {
        if self.n == 0 {
            return Err(field("n", "must be positive"));
        }
        let mut seen = BTreeSet::new();
        for (k, &[i, j]) in self.neg_pairs.iter().enumerate() {
            let at = format!("neg_pairs[{k}]");
            if i == j {
                return Err(field(at, format!("diagonal pair [{i},{j}]")));
            }
            if i == 0 || j == 0 || i > self.n || j > self.n {
                return Err(field(at, format!("index out of range 1..={}", self.n)));
            }
            if i > j {
                return Err(field(at, format!("pair must be ascending, got [{i},{j}]")));
            }
            if !seen.insert((i, j)) {
                return Err(field(at, format!("duplicate pair [{i},{j}]")));
            }
        }
        Ok(())
    }

    pub fn sign_matrix(&self) -> skewq_core::Result<SignMatrix> {
        SignMatrix::from_neg_pairs(self.n, self.neg_pairs.iter().map(|&[i, j]| (i, j)))
    }
}
