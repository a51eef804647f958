//! Bundled worked examples with frozen intermediate matrices.
//!
//! Six small codes over GF(2) and GF(3) exercise every construction in the
//! crate. The expected state-space matrices, dual transition spaces and
//! dual characteristic data are frozen here and double as ground truth for
//! the verification suites and the acceptance tests. The same codes ship as
//! JSON files under `fixtures/` for use with the command line tool.

use crate::code::LinearCode;
use crate::field::{FieldMatrix, PrimeField};
use crate::span::{Span, SpanList};

pub const BINARY_5_3_JSON: &str = include_str!("../fixtures/binary_5_3.json");
pub const SELFDUAL_4_2_JSON: &str = include_str!("../fixtures/selfdual_4_2.json");
pub const TERNARY_4_2_JSON: &str = include_str!("../fixtures/ternary_4_2.json");
pub const BINARY_3_2_JSON: &str = include_str!("../fixtures/binary_3_2.json");
pub const BINARY_6_3_JSON: &str = include_str!("../fixtures/binary_6_3.json");
pub const HAMMING_8_4_JSON: &str = include_str!("../fixtures/hamming_8_4.json");

fn gf(p: u64) -> PrimeField {
    PrimeField::new(p).expect("fixture modulus")
}

fn fm(p: u64, rows: &[&[i64]]) -> FieldMatrix {
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
    FieldMatrix::from_rows(gf(p), &rows).expect("fixture matrix")
}

fn spans(n: usize, pairs: &[(usize, usize)]) -> SpanList {
    pairs.iter().map(|&(a, b)| Span::new(a, b, n).expect("fixture span")).collect()
}

/// A `[5,3]` binary code whose BCJR trellis with span list
/// [(1,3],(3,0],(2,1]] matches its product trellis but is not a
/// KV-trellis; its local dual is not reduced.
pub struct Binary53 {
    pub gens: FieldMatrix,
    pub check: FieldMatrix,
    pub spans: SpanList,
    /// State-space matrices N_0..N_4 of the BCJR trellis.
    pub states: Vec<FieldMatrix>,
    /// Transition spaces of the local dual (standard pairing on F_2^2),
    /// one generator matrix per section.
    pub local_dual_sections: Vec<FieldMatrix>,
    /// ECP of the BCJR dual; section 4 drops from 3 to 2 dimensions
    /// compared with the local dual.
    pub bcjr_dual_ecp: Vec<usize>,
    pub local_dual_ecp: Vec<usize>,
}

impl Binary53 {
    pub fn code(&self) -> LinearCode {
        LinearCode::from_matrix(&self.gens).expect("fixture code")
    }
}

pub fn binary_5_3() -> Binary53 {
    Binary53 {
        gens: fm(2, &[&[0, 1, 1, 1, 0], &[1, 0, 0, 1, 0], &[0, 1, 1, 0, 1]]),
        check: fm(2, &[&[1, 0, 1, 1, 1], &[0, 1, 1, 0, 0]]),
        spans: spans(5, &[(1, 3), (3, 0), (2, 1)]),
        states: vec![
            fm(2, &[&[0, 0], &[1, 0], &[0, 1]]),
            fm(2, &[&[0, 0], &[0, 0], &[0, 1]]),
            fm(2, &[&[0, 1], &[0, 0], &[0, 0]]),
            fm(2, &[&[1, 0], &[0, 0], &[1, 1]]),
            fm(2, &[&[0, 0], &[1, 0], &[1, 1]]),
        ],
        local_dual_sections: vec![
            fm(2, &[&[1, 0, 1, 0, 0], &[0, 1, 0, 0, 1]]),
            fm(2, &[&[0, 1, 1, 0, 1]]),
            fm(2, &[&[0, 0, 1, 1, 0], &[0, 1, 0, 1, 1]]),
            fm(2, &[&[1, 0, 1, 1, 0], &[0, 1, 0, 0, 1]]),
            fm(2, &[&[1, 0, 0, 1, 1], &[0, 1, 0, 0, 1], &[0, 1, 1, 0, 0]]),
        ],
        bcjr_dual_ecp: vec![2, 1, 2, 2, 2],
        local_dual_ecp: vec![2, 1, 2, 2, 3],
    }
}

/// The self-dual `[4,2]` binary code together with a characteristic pair
/// that is not lexicographically first, the state matrices of the
/// all-generator BCJR trellis, and the dual characteristic data produced
/// from it.
pub struct Selfdual42 {
    pub gens: FieldMatrix,
    /// Characteristic matrix with rows ordered so row l has span ending
    /// at l.
    pub x: FieldMatrix,
    pub spans: SpanList,
    /// N_0..N_3 of the BCJR trellis built from all four rows of `x`,
    /// with the printed generator matrix as check matrix.
    pub states: Vec<FieldMatrix>,
    /// Dual state vectors v_0..v_3 of the dual construction.
    pub v: Vec<Vec<u8>>,
    /// Dual characteristic matrix, row m having span (m, a_m].
    pub y: FieldMatrix,
    pub hat_spans: SpanList,
    /// Cycles of the local duals: row m is (w_{m,0}|c^m_0|...|w_{m,0}).
    pub dual_cycles: FieldMatrix,
}

impl Selfdual42 {
    pub fn code(&self) -> LinearCode {
        LinearCode::from_matrix(&self.gens).expect("fixture code")
    }
}

pub fn selfdual_4_2() -> Selfdual42 {
    Selfdual42 {
        gens: fm(2, &[&[1, 1, 1, 1], &[0, 1, 1, 0]]),
        x: fm(2, &[&[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, 1, 0], &[1, 1, 1, 1]]),
        spans: spans(4, &[(3, 0), (2, 1), (1, 2), (0, 3)]),
        states: vec![
            fm(2, &[&[1, 0], &[1, 1], &[0, 0], &[0, 0]]),
            fm(2, &[&[0, 0], &[1, 1], &[0, 0], &[1, 0]]),
            fm(2, &[&[0, 0], &[0, 0], &[1, 1], &[0, 1]]),
            fm(2, &[&[0, 0], &[1, 1], &[0, 0], &[1, 0]]),
        ],
        v: vec![vec![1, 1], vec![0, 1], vec![1, 0], vec![1, 1]],
        y: fm(2, &[&[1, 0, 0, 1], &[0, 1, 1, 0], &[1, 1, 1, 1], &[1, 0, 0, 1]]),
        hat_spans: spans(4, &[(0, 3), (1, 2), (2, 1), (3, 0)]),
        dual_cycles: fm(2, &[
            &[0, 0, 1, 1, 1, 0, 1, 1, 0, 1, 1, 1, 0, 0],
            &[0, 0, 0, 0, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0],
            &[1, 0, 1, 1, 0, 1, 0, 0, 1, 1, 0, 1, 1, 0],
            &[1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1],
        ]),
    }
}

/// A `[4,2]` code over GF(3) with two normalized dual characteristic
/// matrices that satisfy the dual rank condition, only one of which pairs
/// KV-trellises with their duals.
pub struct Ternary42 {
    pub gens: FieldMatrix,
    pub check: FieldMatrix,
    /// Normalized (and lexicographically first) characteristic matrix,
    /// rows ordered by span start.
    pub x: FieldMatrix,
    pub spans: SpanList,
    /// The dual characteristic matrix produced by the construction.
    pub y1: FieldMatrix,
    /// A different normalized dual characteristic matrix; same span list.
    pub y2: FieldMatrix,
    /// Span list for the rows of `y1` and `y2` as given.
    pub y_spans: SpanList,
}

impl Ternary42 {
    pub fn code(&self) -> LinearCode {
        LinearCode::from_matrix(&self.gens).expect("fixture code")
    }
}

pub fn ternary_4_2() -> Ternary42 {
    Ternary42 {
        gens: fm(3, &[&[1, 2, 0, 0], &[0, 0, 1, 1]]),
        check: fm(3, &[&[1, 1, 0, 0], &[0, 0, 1, 2]]),
        x: fm(3, &[&[1, 2, 0, 0], &[2, 1, 0, 0], &[0, 0, 1, 1], &[1, 2, 1, 1]]),
        spans: spans(4, &[(0, 1), (1, 0), (2, 3), (3, 2)]),
        y1: fm(3, &[&[1, 1, 1, 2], &[1, 1, 0, 0], &[0, 0, 2, 1], &[0, 0, 1, 2]]),
        y2: fm(3, &[&[1, 1, 2, 1], &[1, 1, 0, 0], &[0, 0, 2, 1], &[0, 0, 1, 2]]),
        y_spans: spans(4, &[(1, 0), (0, 1), (3, 2), (2, 3)]),
    }
}

/// A `[3,2]` binary code whose product trellis with span list [(1,2],(0,2]]
/// is conventional but not proper; its local dual is not reduced.
pub struct Binary32 {
    pub gens: FieldMatrix,
    pub spans: SpanList,
    /// Transition spaces of the local dual (standard pairing on F_2^2).
    pub local_dual_sections: Vec<FieldMatrix>,
    pub product_scp: Vec<usize>,
    pub product_ecp: Vec<usize>,
    pub local_dual_scp: Vec<usize>,
    pub local_dual_ecp: Vec<usize>,
}

impl Binary32 {
    pub fn code(&self) -> LinearCode {
        LinearCode::from_matrix(&self.gens).expect("fixture code")
    }
}

pub fn binary_3_2() -> Binary32 {
    Binary32 {
        gens: fm(2, &[&[0, 1, 1], &[1, 0, 1]]),
        spans: spans(3, &[(1, 2), (0, 2)]),
        local_dual_sections: vec![
            fm(2, &[&[0, 0, 1, 0, 1]]),
            fm(2, &[&[0, 0, 1, 1, 0], &[0, 1, 0, 0, 1]]),
            fm(2, &[&[1, 1, 1, 0, 0]]),
        ],
        product_scp: vec![0, 1, 2],
        product_ecp: vec![1, 2, 2],
        local_dual_scp: vec![0, 1, 2],
        local_dual_ecp: vec![1, 2, 1],
    }
}

/// A `[6,3]` binary code whose BCJR trellis is isomorphic to the product
/// trellis without being a KV-trellis; its BCJR dual nevertheless
/// coincides with the local dual.
pub struct Binary63 {
    pub gens: FieldMatrix,
    pub check: FieldMatrix,
    pub spans: SpanList,
    pub displacement: FieldMatrix,
    /// Span list for the rows of the check matrix under which the BCJR
    /// trellis of the dual code equals the BCJR dual.
    pub dual_spans: SpanList,
    pub scp: Vec<usize>,
    pub ecp: Vec<usize>,
    pub dual_ecp: Vec<usize>,
}

impl Binary63 {
    pub fn code(&self) -> LinearCode {
        LinearCode::from_matrix(&self.gens).expect("fixture code")
    }
}

pub fn binary_6_3() -> Binary63 {
    Binary63 {
        gens: fm(2, &[
            &[0, 1, 1, 1, 1, 1],
            &[0, 0, 1, 1, 1, 0],
            &[1, 1, 0, 1, 0, 1],
        ]),
        check: fm(2, &[
            &[0, 0, 1, 0, 1, 0],
            &[1, 0, 0, 1, 1, 0],
            &[1, 1, 1, 1, 0, 1],
        ]),
        spans: spans(6, &[(1, 5), (2, 4), (3, 1)]),
        displacement: fm(2, &[&[0, 0, 0], &[0, 0, 0], &[0, 1, 0]]),
        dual_spans: spans(6, &[(2, 4), (3, 0), (0, 5)]),
        scp: vec![1, 1, 1, 2, 3, 2],
        ecp: vec![1, 2, 2, 3, 3, 2],
        dual_ecp: vec![2, 1, 2, 3, 3, 2],
    }
}

/// The extended `[8,4,4]` Hamming code with its lexicographically first
/// characteristic matrix. The pair (X, X) violates the dual rank
/// condition on the two recorded row selections.
pub struct Hamming84 {
    pub gens: FieldMatrix,
    /// Lexicographically first characteristic matrix, rows ordered so row
    /// l has span ending at l.
    pub x: FieldMatrix,
    pub spans: SpanList,
    /// Spans of four linearly independent rows of `x`.
    pub independent_spans: SpanList,
    /// Spans of four linearly dependent rows of `x` (rank 3); these are
    /// the complements left by reversing `independent_spans`.
    pub dependent_spans: SpanList,
}

impl Hamming84 {
    pub fn code(&self) -> LinearCode {
        LinearCode::from_matrix(&self.gens).expect("fixture code")
    }
}

pub fn hamming_8_4() -> Hamming84 {
    Hamming84 {
        gens: fm(2, &[
            &[1, 0, 1, 0, 1, 1, 0, 0],
            &[0, 1, 1, 1, 1, 0, 0, 0],
            &[0, 0, 1, 0, 1, 0, 1, 1],
            &[0, 0, 0, 1, 1, 1, 1, 0],
        ]),
        x: fm(2, &[
            &[1, 0, 0, 0, 0, 1, 1, 1],
            &[1, 1, 0, 0, 1, 0, 1, 0],
            &[1, 1, 1, 0, 0, 0, 0, 1],
            &[1, 0, 1, 1, 0, 0, 1, 0],
            &[0, 1, 1, 1, 1, 0, 0, 0],
            &[1, 0, 1, 0, 1, 1, 0, 0],
            &[0, 0, 0, 1, 1, 1, 1, 0],
            &[0, 0, 1, 0, 1, 0, 1, 1],
        ]),
        spans: spans(8, &[(5, 0), (4, 1), (7, 2), (6, 3), (1, 4), (0, 5), (3, 6), (2, 7)]),
        independent_spans: spans(8, &[(4, 1), (7, 2), (6, 3), (3, 6)]),
        dependent_spans: spans(8, &[(5, 0), (4, 1), (7, 2), (0, 5)]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::CodeFile;

    #[test]
    fn json_fixtures_agree_with_embedded_matrices() {
        let cases: Vec<(&str, FieldMatrix)> = vec![
            (BINARY_5_3_JSON, binary_5_3().gens),
            (SELFDUAL_4_2_JSON, selfdual_4_2().gens),
            (TERNARY_4_2_JSON, ternary_4_2().gens),
            (BINARY_3_2_JSON, binary_3_2().gens),
            (BINARY_6_3_JSON, binary_6_3().gens),
            (HAMMING_8_4_JSON, hamming_8_4().gens),
        ];
        for (json, gens) in cases {
            let file: CodeFile = serde_json::from_str(json).unwrap();
            assert_eq!(file.raw_matrix().unwrap(), gens);
        }
    }

    #[test]
    fn fixture_codes_are_orthogonal_pairs() {
        let b53 = binary_5_3();
        assert!(b53.gens.mul(&b53.check.transpose()).unwrap().is_zero());
        let b63 = binary_6_3();
        assert!(b63.gens.mul(&b63.check.transpose()).unwrap().is_zero());
        let t42 = ternary_4_2();
        assert!(t42.gens.mul(&t42.check.transpose()).unwrap().is_zero());
        let sd = selfdual_4_2();
        assert!(sd.gens.mul(&sd.gens.transpose()).unwrap().is_zero());
        let h = hamming_8_4();
        assert!(h.gens.mul(&h.gens.transpose()).unwrap().is_zero());
    }
}
