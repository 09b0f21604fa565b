//! JSON matrix files: `{"n": 2, "field": "Q", "entries": [["1", "2"], ["3", "4"]]}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub n: usize,
    pub field: String,
    pub entries: Vec<Vec<String>>,
}

impl MatrixFile {
    pub fn from_matrix(a: &SquareMatrix) -> Self {
        MatrixFile {
            n: a.n(),
            field: a.field().tag().to_string(),
            entries: a.rows().iter().map(|r| r.iter().map(Scalar::to_string).collect()).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<SquareMatrix> {
        let field = Field::from_tag(&self.field)?;
        if self.entries.len() != self.n || self.entries.iter().any(|r| r.len() != self.n) {
            return Err(Error::Input(format!("entries are not {0}x{0}", self.n)));
        }
        let mut values = Vec::with_capacity(self.n * self.n);
        for text in self.entries.iter().flatten() {
            if field == Field::Rational && text.contains('i') {
                return Err(Error::Input(format!("{text:?} is not in Q")));
            }
            values.push(text.parse::<Scalar>()?);
        }
        SquareMatrix::new(self.n, field, values)
    }
}

pub fn parse_matrix(json: &str) -> Result<SquareMatrix> {
    let file: MatrixFile = serde_json::from_str(json).map_err(|e| Error::Input(e.to_string()))?;
    file.to_matrix()
}

pub fn read_matrix(path: &std::path::Path) -> Result<SquareMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    parse_matrix(&text)
}
