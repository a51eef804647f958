//! Trellis constructions from generators with spans.
//!
//! The product trellis keeps one binary indicator per generator and time;
//! the BCJR trellis tracks the running state matrices `N_0 = D`,
//! `N_i = N_{i-1} + G_{i-1}^T H_{i-1}`, whose l-th rows are the states the
//! cycle of generator l passes through. Both are exposed with their raw
//! row-aligned matrices because the dualization procedures index rows by
//! generator.

use std::fmt::Write as _;

use crate::code::CharacteristicPair;
use crate::error::{Error, Result};
use crate::field::{FieldMatrix, PrimeField};
use crate::span::{Span, SpanList};
use crate::trellis::LinearTrellis;

/// The trellis of a single generator with a span: states are scalar
/// multiples of the indicator of `(a,b]`.
pub fn elementary_trellis(field: PrimeField, c: &[u8], span: Span) -> Result<LinearTrellis> {
    let gens = FieldMatrix::from_row(field, c);
    Ok(ProductTrellis::new(gens, vec![span])?.into_base())
}

/// Product of the elementary trellises of each row of a generator matrix.
#[derive(Clone, Debug)]
pub struct ProductTrellis {
    base: LinearTrellis,
    gens: FieldMatrix,
    spans: SpanList,
}

impl ProductTrellis {
    pub fn new(gens: FieldMatrix, spans: SpanList) -> Result<Self> {
        let n = gens.cols();
        let r = gens.rows();
        if spans.len() != r {
            return Err(Error::Dimension("one span per generator row".into()));
        }
        for (l, span) in spans.iter().enumerate() {
            if span.axis() != n {
                return Err(Error::AxisMismatch(span.axis(), n));
            }
            if gens.row_is_zero(l) {
                return Err(Error::ZeroRow(l));
            }
            if !span.is_span_of(gens.row(l)) {
                return Err(Error::InvalidSpan { row: l, span: span.to_string() });
            }
        }
        let field = gens.field();
        let indicators: Vec<FieldMatrix> =
            (0..n).map(|j| indicator_matrix(field, &spans, j)).collect();
        let mut transitions = Vec::with_capacity(n);
        for j in 0..n {
            let col = FieldMatrix::from_row(field, &gens.column(j)).transpose();
            let next = &indicators[(j + 1) % n];
            transitions.push(FieldMatrix::hstack(&[&indicators[j], &col, next])?);
        }
        let base = LinearTrellis::new(field, vec![r; n], indicators, transitions)?;
        Ok(Self { base, gens, spans })
    }

    pub fn base(&self) -> &LinearTrellis {
        &self.base
    }

    pub fn into_base(self) -> LinearTrellis {
        self.base
    }

    pub fn generators(&self) -> &FieldMatrix {
        &self.gens
    }

    pub fn spans(&self) -> &SpanList {
        &self.spans
    }

    /// The diagonal indicator matrix M_j.
    pub fn indicator(&self, j: usize) -> &FieldMatrix {
        self.base.state_space(j)
    }

    /// Aligned text `(M_0|G_0^T|M_1|...|M_0)` for eyeball diffing.
    pub fn staggered_display(&self) -> String {
        let n = self.base.depth();
        let blocks: Vec<FieldMatrix> = (0..=n).map(|j| self.indicator(j).clone()).collect();
        staggered(&blocks, &self.gens)
    }
}

fn indicator_matrix(field: PrimeField, spans: &[Span], j: usize) -> FieldMatrix {
    let r = spans.len();
    let mut m = FieldMatrix::zeros(field, r, r);
    for (l, span) in spans.iter().enumerate() {
        if span.contains(j) {
            m.set(l, l, 1);
        }
    }
    m
}

/// Displacement matrix for a span list: row l is the tail sum
/// `sum_{j=a_l}^{n-1} g_{lj} H_j`, the circular past of generator l.
pub fn displacement_from_spans(
    gens: &FieldMatrix,
    check: &FieldMatrix,
    spans: &[Span],
) -> Result<FieldMatrix> {
    let n = gens.cols();
    if check.cols() != n {
        return Err(Error::Dimension("check matrix width".into()));
    }
    if !gens.mul(&check.transpose())?.is_zero() {
        return Err(Error::NotOrthogonal);
    }
    if spans.len() != gens.rows() {
        return Err(Error::Dimension("one span per generator row".into()));
    }
    let field = gens.field();
    let m = check.rows();
    let mut d = FieldMatrix::zeros(field, gens.rows(), m);
    for (l, span) in spans.iter().enumerate() {
        if span.axis() != n {
            return Err(Error::AxisMismatch(span.axis(), n));
        }
        if !span.is_span_of(gens.row(l)) {
            return Err(Error::InvalidSpan { row: l, span: span.to_string() });
        }
        for j in span.start()..n {
            let g = gens.get(l, j);
            if g == 0 {
                continue;
            }
            for t in 0..m {
                let v = field.add(d.get(l, t), field.mul(g, check.get(t, j)));
                d.set(l, t, v);
            }
        }
    }
    Ok(d)
}

/// A BCJR trellis `T_(G,H,D)` with its raw row-aligned state matrices.
#[derive(Clone, Debug)]
pub struct BcjrTrellis {
    base: LinearTrellis,
    gens: FieldMatrix,
    check: FieldMatrix,
    displacement: FieldMatrix,
    states: Vec<FieldMatrix>,
    spans: Option<SpanList>,
}

impl BcjrTrellis {
    /// Builds `T_(G,H,D)` from an arbitrary displacement matrix. Requires
    /// `G H^T = 0`, which is exactly what closes the state recursion.
    pub fn new(gens: FieldMatrix, check: FieldMatrix, displacement: FieldMatrix) -> Result<Self> {
        let field = gens.field();
        let n = gens.cols();
        let r = gens.rows();
        let m = check.rows();
        if check.cols() != n {
            return Err(Error::Dimension("check matrix width".into()));
        }
        if displacement.rows() != r || displacement.cols() != m {
            return Err(Error::Dimension("displacement shape".into()));
        }
        if !gens.mul(&check.transpose())?.is_zero() {
            return Err(Error::NotOrthogonal);
        }
        let mut states = Vec::with_capacity(n + 1);
        states.push(displacement.clone());
        for j in 0..n {
            let step = FieldMatrix::outer(field, &gens.column(j), &check.column(j));
            states.push(states[j].add(&step)?);
        }
        debug_assert_eq!(states[n], states[0]);
        states.pop();

        let mut transitions = Vec::with_capacity(n);
        for j in 0..n {
            let col = FieldMatrix::from_row(field, &gens.column(j)).transpose();
            let next = &states[(j + 1) % n];
            transitions.push(FieldMatrix::hstack(&[&states[j], &col, next])?);
        }
        let base = LinearTrellis::new(field, vec![m; n], states.clone(), transitions)?;
        Ok(Self { base, gens, check, displacement, states, spans: None })
    }

    /// Builds the BCJR trellis of a span list, with the displacement given
    /// by the tail sums.
    pub fn from_spans(gens: FieldMatrix, check: FieldMatrix, spans: SpanList) -> Result<Self> {
        let d = displacement_from_spans(&gens, &check, &spans)?;
        let mut t = Self::new(gens, check, d)?;
        t.spans = Some(spans);
        Ok(t)
    }

    pub fn base(&self) -> &LinearTrellis {
        &self.base
    }

    pub fn into_base(self) -> LinearTrellis {
        self.base
    }

    pub fn generators(&self) -> &FieldMatrix {
        &self.gens
    }

    pub fn check(&self) -> &FieldMatrix {
        &self.check
    }

    pub fn displacement(&self) -> &FieldMatrix {
        &self.displacement
    }

    pub fn spans(&self) -> Option<&SpanList> {
        self.spans.as_ref()
    }

    /// State matrix N_j, with `j = n` wrapping to N_0.
    pub fn state_matrix(&self, j: usize) -> &FieldMatrix {
        &self.states[j % self.states.len()]
    }

    pub fn state_matrices(&self) -> &[FieldMatrix] {
        &self.states
    }

    pub fn depth(&self) -> usize {
        self.base.depth()
    }

    /// BCJR trellis of the cyclically shifted generators and checks; the
    /// new state matrices are the old ones advanced by `steps`.
    pub fn shift(&self, steps: usize) -> Result<BcjrTrellis> {
        let n = self.depth();
        let s = steps % n;
        let mut t = Self::new(
            shift_columns(&self.gens, s),
            shift_columns(&self.check, s),
            self.states[s].clone(),
        )?;
        if let Some(spans) = &self.spans {
            t.spans = Some(spans.iter().map(|sp| sp.shifted_left(s)).collect());
        }
        Ok(t)
    }

    /// Aligned text `(N_0|G_0^T|N_1|...|N_0)` matching the usual staggered
    /// presentation.
    pub fn staggered_display(&self) -> String {
        let mut blocks: Vec<FieldMatrix> = self.states.clone();
        blocks.push(self.states[0].clone());
        staggered(&blocks, &self.gens)
    }
}

fn shift_columns(m: &FieldMatrix, steps: usize) -> FieldMatrix {
    let n = m.cols();
    let mut out = FieldMatrix::zeros(m.field(), m.rows(), n);
    for i in 0..m.rows() {
        for j in 0..n {
            out.set(i, j, m.get(i, (j + steps) % n));
        }
    }
    out
}

fn staggered(blocks: &[FieldMatrix], gens: &FieldMatrix) -> String {
    let rows = gens.rows();
    let n = gens.cols();
    let mut out = String::new();
    for l in 0..rows {
        let mut parts: Vec<String> = Vec::new();
        for j in 0..=n {
            let b = &blocks[j];
            let row: Vec<String> = (0..b.cols()).map(|c| b.get(l, c).to_string()).collect();
            parts.push(row.join(" "));
            if j < n {
                parts.push(gens.get(l, j).to_string());
            }
        }
        let _ = writeln!(out, "{}", parts.join(" | "));
    }
    out
}

/// BCJR trellis of `k` linearly independent characteristic generators.
///
/// Checks the structural consequences of the selection: rows of `N_j`
/// vanish off their spans, the surviving rows are linearly independent,
/// and the profile agrees with the corresponding product trellis.
pub fn kv_trellis(
    pair: &CharacteristicPair,
    check: &FieldMatrix,
    selection: &[usize],
) -> Result<BcjrTrellis> {
    let k = pair.dim();
    if selection.len() != k {
        return Err(Error::BadSelectionSize { expected: k, got: selection.len() });
    }
    let gens = pair.matrix().select_rows(selection);
    if gens.rank() != k {
        return Err(Error::RankDeficient);
    }
    let spans: SpanList = selection.iter().map(|&l| pair.spans()[l]).collect();
    let trellis = BcjrTrellis::from_spans(gens.clone(), check.clone(), spans.clone())?;

    let n = pair.len();
    for j in 0..n {
        let nj = trellis.state_matrix(j);
        let active: Vec<usize> = (0..k).filter(|&l| spans[l].contains(j)).collect();
        for l in 0..k {
            if !spans[l].contains(j) && !nj.row_is_zero(l) {
                return Err(Error::VerificationFailed(format!(
                    "row {l} of N_{j} is nonzero outside its span"
                )));
            }
        }
        let live = nj.select_rows(&active);
        if live.rank() != active.len() {
            return Err(Error::VerificationFailed(format!(
                "active rows of N_{j} are linearly dependent"
            )));
        }
    }
    let product = ProductTrellis::new(gens, spans)?;
    if trellis.base().complexity() != product.base().complexity() {
        return Err(Error::VerificationFailed(
            "BCJR and product profiles differ on a characteristic selection".into(),
        ));
    }
    Ok(trellis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::GeneratorPolicy;
    use crate::fixtures;

    fn gf2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    #[test]
    fn elementary_trellis_profiles() {
        let t = elementary_trellis(gf2(), &[0, 1, 1, 1, 0], Span::new(1, 3, 5).unwrap()).unwrap();
        let c = t.complexity();
        assert_eq!(c.scp, vec![0, 0, 1, 1, 0]);
        assert_eq!(c.ecp, vec![0, 1, 1, 1, 0]);
        let code = t.edge_label_code();
        assert_eq!(code.dim(), 1);
        assert!(code.contains(&[0, 1, 1, 1, 0]));

        // Conventional span: V_0 is trivial.
        let conv = elementary_trellis(gf2(), &[1, 1, 1, 1], Span::new(0, 3, 4).unwrap()).unwrap();
        assert_eq!(conv.state_dim(0), 0);

        // Circular span (4,0]: only V_0 is nontrivial.
        let circ = elementary_trellis(gf2(), &[1, 0, 0, 0, 1], Span::new(4, 0, 5).unwrap()).unwrap();
        assert_eq!(circ.complexity().scp, vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn product_trellis_of_the_binary_3_2_code() {
        let fx = fixtures::binary_3_2();
        let t = ProductTrellis::new(fx.gens.clone(), fx.spans.clone()).unwrap();
        let c = t.base().complexity();
        assert_eq!(c.scp, fx.product_scp);
        assert_eq!(c.ecp, fx.product_ecp);
        assert_eq!(t.indicator(0), &FieldMatrix::zeros(gf2(), 2, 2));
        let expected = "\
0 0 | 0 | 0 0 | 1 | 1 0 | 1 | 0 0
0 0 | 1 | 0 1 | 0 | 0 1 | 1 | 0 0
";
        assert_eq!(t.staggered_display(), expected);
    }

    #[test]
    fn single_row_product_equals_elementary() {
        let span = Span::new(1, 3, 5).unwrap();
        let gens = FieldMatrix::from_rows(gf2(), &[vec![0, 1, 1, 1, 0]]).unwrap();
        let product = ProductTrellis::new(gens, vec![span]).unwrap().into_base();
        let elem = elementary_trellis(gf2(), &[0, 1, 1, 1, 0], span).unwrap();
        assert_eq!(product, elem);
    }

    #[test]
    fn product_rejects_zero_rows_and_bad_spans() {
        let gens = FieldMatrix::from_rows(gf2(), &[vec![0, 0, 0]]).unwrap();
        assert_eq!(
            ProductTrellis::new(gens, vec![Span::new(0, 1, 3).unwrap()]).unwrap_err(),
            Error::ZeroRow(0)
        );
        let gens = FieldMatrix::from_rows(gf2(), &[vec![1, 1, 0]]).unwrap();
        assert!(matches!(
            ProductTrellis::new(gens, vec![Span::new(1, 2, 3).unwrap()]).unwrap_err(),
            Error::InvalidSpan { row: 0, .. }
        ));
    }

    #[test]
    fn displacement_of_the_reference_codes() {
        let fx = fixtures::binary_5_3();
        let d = displacement_from_spans(&fx.gens, &fx.check, &fx.spans).unwrap();
        assert_eq!(d, fx.states[0]);

        let b6 = fixtures::binary_6_3();
        let d6 = displacement_from_spans(&b6.gens, &b6.check, &b6.spans).unwrap();
        assert_eq!(d6, b6.displacement);
    }

    #[test]
    fn conventional_spans_give_zero_displacement() {
        // For a conventional span the tail sum runs over the whole support
        // of the row, so it collapses to a row of G H^T.
        let code = fixtures::binary_5_3().code();
        let gens = code.generator().clone();
        let n = gens.cols();
        let spans: SpanList = (0..gens.rows())
            .map(|l| {
                let row = gens.row(l);
                let a = row.iter().position(|&x| x != 0).unwrap();
                let b = row.iter().rposition(|&x| x != 0).unwrap();
                Span::new(a, b, n).unwrap()
            })
            .collect();
        let d = displacement_from_spans(&gens, code.check(), &spans).unwrap();
        assert!(d.is_zero());
        // Zero displacement gives a conventional trellis: V_0 is trivial.
        let bcjr = BcjrTrellis::from_spans(gens, code.check().clone(), spans).unwrap();
        assert_eq!(bcjr.base().state_dim(0), 0);
    }

    #[test]
    fn bcjr_state_matrices_match_the_reference(){
        let fx = fixtures::binary_5_3();
        let t = BcjrTrellis::from_spans(fx.gens.clone(), fx.check.clone(), fx.spans.clone())
            .unwrap();
        assert_eq!(t.state_matrices(), &fx.states[..]);

        let sd = fixtures::selfdual_4_2();
        let ts = BcjrTrellis::from_spans(sd.x.clone(), sd.gens.clone(), sd.spans.clone()).unwrap();
        assert_eq!(ts.state_matrices(), &sd.states[..]);
    }

    #[test]
    fn rejects_non_orthogonal_pairs() {
        let gens = FieldMatrix::from_rows(gf2(), &[vec![1, 0, 0]]).unwrap();
        let check = FieldMatrix::from_rows(gf2(), &[vec![1, 1, 0]]).unwrap();
        let d = FieldMatrix::zeros(gf2(), 1, 1);
        assert_eq!(BcjrTrellis::new(gens, check, d).unwrap_err(), Error::NotOrthogonal);
    }

    #[test]
    fn shift_advances_the_state_matrices() {
        let fx = fixtures::binary_5_3();
        let t = BcjrTrellis::from_spans(fx.gens.clone(), fx.check.clone(), fx.spans.clone())
            .unwrap();
        assert_eq!(t.shift(0).unwrap().state_matrices(), t.state_matrices());
        assert_eq!(t.shift(5).unwrap().state_matrices(), t.state_matrices());
        let shifted = t.shift(1).unwrap();
        assert_eq!(shifted.state_matrix(0), &fx.states[1]);
        for j in 0..5 {
            assert_eq!(shifted.state_matrix(j), t.state_matrix(j + 1));
        }
        // Shifting with a span list agrees with rebuilding from the
        // shifted span list.
        let rebuilt = BcjrTrellis::from_spans(
            shifted.generators().clone(),
            shifted.check().clone(),
            shifted.spans().unwrap().clone(),
        )
        .unwrap();
        assert_eq!(rebuilt.state_matrices(), shifted.state_matrices());
    }

    #[test]
    fn kv_selection_rules() {
        let sd = fixtures::selfdual_4_2();
        let code = sd.code();
        let pair = CharacteristicPair::from_parts(code.clone(), sd.x.clone(), sd.spans.clone())
            .unwrap();
        let check = code.check().clone();
        // Rows 1 and 2 (0-indexed) are the two copies of 0110.
        assert_eq!(kv_trellis(&pair, &check, &[1, 2]).unwrap_err(), Error::RankDeficient);
        assert!(matches!(
            kv_trellis(&pair, &check, &[0]).unwrap_err(),
            Error::BadSelectionSize { expected: 2, got: 1 }
        ));
        let mut profiles = Vec::new();
        for sel in [[0, 1], [0, 2], [0, 3], [1, 3], [2, 3]] {
            let t = kv_trellis(&pair, &check, &sel).unwrap();
            profiles.push(t.base().complexity());
        }
        // The five KV-trellises are pairwise non-isomorphic; their
        // profiles already distinguish them.
        for i in 0..profiles.len() {
            for j in i + 1..profiles.len() {
                assert_ne!(profiles[i], profiles[j]);
            }
        }
    }

    #[test]
    fn state_rows_vanish_off_their_spans() {
        let code = fixtures::binary_6_3().code();
        let pair = code.characteristic_pair(GeneratorPolicy::LexFirst).unwrap();
        let check = code.check().clone();
        let t = kv_trellis(&pair, &check, &[0, 1, 2]).unwrap();
        let spans = t.spans().unwrap().clone();
        for j in 0..t.depth() {
            for (l, span) in spans.iter().enumerate() {
                assert_eq!(t.state_matrix(j).row_is_zero(l), !span.contains(j));
            }
        }
    }

    #[test]
    fn product_profiles_follow_the_counting_formula() {
        // With distinct start and end points: s_j counts covering spans,
        // e_j is s_j plus one exactly at start points, equivalently
        // s_{j+1} plus one exactly at end points.
        let fx = fixtures::binary_5_3();
        let t = ProductTrellis::new(fx.gens.clone(), fx.spans.clone()).unwrap();
        let c = t.base().complexity();
        let n = 5;
        for j in 0..n {
            let covering = fx.spans.iter().filter(|s| s.contains(j)).count();
            assert_eq!(c.scp[j], covering);
            let is_start = fx.spans.iter().any(|s| s.start() == j);
            let is_end = fx.spans.iter().any(|s| s.end() == j);
            assert_eq!(c.ecp[j], c.scp[j] + usize::from(is_start));
            assert_eq!(c.ecp[j], c.scp[(j + 1) % n] + usize::from(is_end));
        }
    }

    #[test]
    fn any_displacement_represents_the_code() {
        // The edge-label code of T_(G,H,D) is ker H^T for every D, not
        // only the span-list displacement.
        let code = fixtures::binary_5_3().code();
        let gens = code.generator().clone();
        let check = code.check().clone();
        let f = code.field();
        for seed in 0..4u8 {
            let mut d = FieldMatrix::zeros(f, gens.rows(), check.rows());
            for r in 0..d.rows() {
                for c in 0..d.cols() {
                    d.set(r, c, (seed.wrapping_mul(7).wrapping_add((r * 2 + c) as u8)) % 2);
                }
            }
            let t = BcjrTrellis::new(gens.clone(), check.clone(), d).unwrap();
            assert!(t.base().edge_label_code().generator().row_space_eq(&gens));
        }
    }

    #[test]
    fn staggered_display_matches_the_printed_layout() {
        let fx = fixtures::binary_5_3();
        let t = BcjrTrellis::from_spans(fx.gens.clone(), fx.check.clone(), fx.spans.clone())
            .unwrap();
        let expected = "\
0 0 | 0 | 0 0 | 1 | 0 1 | 1 | 1 0 | 1 | 0 0 | 0 | 0 0
1 0 | 1 | 0 0 | 0 | 0 0 | 0 | 0 0 | 1 | 1 0 | 0 | 1 0
0 1 | 0 | 0 1 | 1 | 0 0 | 1 | 1 1 | 0 | 1 1 | 1 | 0 1
";
        assert_eq!(t.staggered_display(), expected);
    }
}
