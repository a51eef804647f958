//! Wire formats: code files and trellis files as JSON.
//!
//! The code file keeps the generator rows exactly as given, because the
//! product and BCJR constructions depend on the literal rows, not just the
//! row space.

use serde::{Deserialize, Serialize};

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::field::{FieldMatrix, PrimeField};
use crate::trellis::LinearTrellis;

/// `{"p": .., "n": .., "generators": [[..], ..]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CodeFile {
    pub p: u64,
    pub n: usize,
    pub generators: Vec<Vec<i64>>,
}

impl CodeFile {
    pub fn from_code(code: &LinearCode) -> Self {
        let gen = code.generator();
        let generators = (0..gen.rows())
            .map(|i| gen.row(i).iter().map(|&x| i64::from(x)).collect())
            .collect();
        Self { p: code.field().modulus(), n: code.len(), generators }
    }

    /// The generator rows exactly as stored in the file.
    pub fn raw_matrix(&self) -> Result<FieldMatrix> {
        let field = PrimeField::new(self.p)?;
        let m = FieldMatrix::from_rows(field, &self.generators)?;
        if m.cols() != self.n {
            return Err(Error::Parse(format!(
                "generator rows have width {}, file declares n = {}",
                m.cols(),
                self.n
            )));
        }
        Ok(m)
    }

    pub fn to_code(&self) -> Result<LinearCode> {
        LinearCode::from_matrix(&self.raw_matrix()?)
    }

    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrellisSection {
    pub ambient_in: usize,
    pub ambient_out: usize,
    pub state_basis: Vec<Vec<i64>>,
    pub transitions: Vec<Vec<i64>>,
}

/// `{"p": .., "n": .., "sections": [..]}`; section i carries the state
/// space at time i and the transitions from time i to i+1.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrellisFile {
    pub p: u64,
    pub n: usize,
    pub sections: Vec<TrellisSection>,
}

impl TrellisFile {
    pub fn from_trellis(t: &LinearTrellis) -> Self {
        let n = t.depth();
        let dump = |m: &FieldMatrix| -> Vec<Vec<i64>> {
            (0..m.rows())
                .map(|i| m.row(i).iter().map(|&x| i64::from(x)).collect())
                .collect()
        };
        let sections = (0..n)
            .map(|i| TrellisSection {
                ambient_in: t.ambient_dim(i),
                ambient_out: t.ambient_dim(i + 1),
                state_basis: dump(t.state_space(i)),
                transitions: dump(t.transition_space(i)),
            })
            .collect();
        Self { p: t.field().modulus(), n, sections }
    }

    pub fn to_trellis(&self) -> Result<LinearTrellis> {
        let field = PrimeField::new(self.p)?;
        if self.sections.len() != self.n || self.n == 0 {
            return Err(Error::Parse("section count differs from declared depth".into()));
        }
        let ambient: Vec<usize> = self.sections.iter().map(|s| s.ambient_in).collect();
        for (i, s) in self.sections.iter().enumerate() {
            if s.ambient_out != ambient[(i + 1) % self.n] {
                return Err(Error::Parse(format!(
                    "section {i} ambient_out disagrees with the next section"
                )));
            }
        }
        let mut states = Vec::with_capacity(self.n);
        let mut transitions = Vec::with_capacity(self.n);
        for (i, s) in self.sections.iter().enumerate() {
            let width_s = ambient[i];
            let width_t = ambient[i] + 1 + ambient[(i + 1) % self.n];
            let sm = parse_matrix(field, &s.state_basis, width_s)?;
            let tm = parse_matrix(field, &s.transitions, width_t)?;
            states.push(sm);
            transitions.push(tm);
        }
        LinearTrellis::new(field, ambient, states, transitions)
    }

    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn parse_matrix(field: PrimeField, rows: &[Vec<i64>], width: usize) -> Result<FieldMatrix> {
    if rows.is_empty() {
        return Ok(FieldMatrix::zeros(field, 0, width));
    }
    let m = FieldMatrix::from_rows(field, rows)?;
    if m.cols() != width {
        return Err(Error::Parse(format!("matrix width {} differs from {width}", m.cols())));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::ProductTrellis;
    use crate::fixtures;

    #[test]
    fn code_file_round_trip() {
        let code = fixtures::binary_6_3().code();
        let file = CodeFile::from_code(&code);
        let json = serde_json::to_string(&file).unwrap();
        let back = CodeFile::parse(&json).unwrap().to_code().unwrap();
        assert_eq!(back, code);
    }

    #[test]
    fn trellis_file_round_trip() {
        let fx = fixtures::binary_3_2();
        let t = ProductTrellis::new(fx.gens.clone(), fx.spans.clone()).unwrap().into_base();
        let file = TrellisFile::from_trellis(&t);
        let json = serde_json::to_string(&file).unwrap();
        let back = TrellisFile::parse(&json).unwrap().to_trellis().unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn malformed_files_are_parse_errors() {
        assert!(matches!(CodeFile::parse("{"), Err(Error::Parse(_))));
        let bad = CodeFile { p: 2, n: 4, generators: vec![vec![1, 0, 1]] };
        assert!(matches!(bad.raw_matrix(), Err(Error::Parse(_))));
    }
}
