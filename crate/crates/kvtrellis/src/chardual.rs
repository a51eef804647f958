//! The duality procedure for characteristic matrices.
//!
//! Starting from a characteristic pair (X, T) of a code C = ker H^T, the
//! construction builds one dual characteristic generator per time index:
//! omit the generator whose span ends at m from the all-generator BCJR
//! trellis, solve the omitted column against the remaining state matrix to
//! get a dual state vector v_m, and read off the dual codeword c^m = v_m H
//! with span (m, a_m] and c^m_m = 1. Collecting the c^m gives a
//! characteristic pair (Y, T̂) of the dual code such that complementary
//! selections of rows of X and Y produce KV-trellises that are dual to each
//! other, with matching BCJR presentations related by transposition.
//!
//! Every claimed identity is verified eagerly while constructing; a
//! verification failure indicates a bug against a proved statement, never
//! acceptable silent output.

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::code::CharacteristicPair;
use crate::construct::{displacement_from_spans, BcjrTrellis, ProductTrellis};
use crate::dual::{local_dual, StatePairing};
use crate::error::{Error, Result};
use crate::field::FieldMatrix;
use crate::span::{Span, SpanList};
use crate::trellis::LinearTrellis;
use crate::Budget;

/// Output of the dual-characteristic-matrix construction.
#[derive(Clone, Debug)]
pub struct DualCharResult {
    /// The pair (Y, T̂) of the dual code; row m of Y has span (m, a_m].
    pair: CharacteristicPair,
    /// Dual state vectors v_m, one per omitted generator.
    v: Vec<Vec<u8>>,
    /// The primal characteristic matrix, rows sorted so row l has span
    /// ending at l.
    x_sorted: FieldMatrix,
    spans_sorted: SpanList,
    /// Maps sorted row positions back to the caller's row order.
    user_order: Vec<usize>,
    /// The check matrix used for the construction.
    check: FieldMatrix,
}

impl DualCharResult {
    pub fn dual_pair(&self) -> &CharacteristicPair {
        &self.pair
    }

    pub fn dual_matrix(&self) -> &FieldMatrix {
        self.pair.matrix()
    }

    pub fn dual_spans(&self) -> &SpanList {
        self.pair.spans()
    }

    pub fn dual_states(&self) -> &[Vec<u8>] {
        &self.v
    }

    pub fn primal_matrix_by_end(&self) -> &FieldMatrix {
        &self.x_sorted
    }

    pub fn primal_spans_by_end(&self) -> &SpanList {
        &self.spans_sorted
    }

    pub fn user_order(&self) -> &[usize] {
        &self.user_order
    }

    pub fn check(&self) -> &FieldMatrix {
        &self.check
    }

    fn n(&self) -> usize {
        self.spans_sorted.len()
    }

    fn k(&self) -> usize {
        self.x_sorted.rows() - self.check.rows()
    }
}

/// Runs the construction for a characteristic pair of `C = ker check^T`.
///
/// `check` must be a full-row-rank parity check matrix of the pair's code;
/// the resulting matrix Y does not depend on which one is chosen, though
/// the dual state vectors do.
pub fn dual_characteristic_pair(
    pair: &CharacteristicPair,
    check: &FieldMatrix,
) -> Result<DualCharResult> {
    let code = pair.code();
    let n = code.len();
    let field = code.field();
    if !code.has_full_support() || !code.dual_has_full_support() {
        return Err(Error::SupportError);
    }
    if check.cols() != n
        || check.rows() != n - code.dim()
        || check.rank() != n - code.dim()
        || !code.generator().mul(&check.transpose())?.is_zero()
    {
        return Err(Error::NotOrthogonal);
    }

    let (sorted, user_order) = pair.sorted_by_end();
    let x = sorted.matrix().clone();
    let spans = sorted.spans().clone();
    let full = BcjrTrellis::from_spans(x.clone(), check.clone(), spans.clone())?;

    let mut v = Vec::with_capacity(n);
    let mut dual_rows = Vec::with_capacity(n);
    let mut dual_spans = Vec::with_capacity(n);
    for m in 0..n {
        let hat_span = spans[m].reverse(); // (m, a_m]
        let column: Vec<u8> = {
            let col = x.column(m);
            (0..n).filter(|&l| l != m).map(|l| col[l]).collect()
        };
        let n_next = full.state_matrix(m + 1).without_row(m);
        let vm = n_next.solve_unique(&column).map_err(|_| Error::NoUniqueSolution(m))?;
        let cm = check.transpose().mul_vec(&vm);

        // The dual codeword is normalized at m and has exact span (m, a_m].
        if cm[m] != 1 || !hat_span.is_span_of(&cm) {
            return Err(Error::VerificationFailed(format!(
                "dual generator {m} misses its span or normalization"
            )));
        }
        // The dual state vanishes against every state matrix off the span.
        for j in 0..n {
            let nj = full.state_matrix(j).without_row(m);
            let prod = nj.mul_vec(&vm);
            if !hat_span.contains(j) && prod.iter().any(|&x| x != 0) {
                return Err(Error::VerificationFailed(format!(
                    "dual state {m} does not annihilate N_{j}"
                )));
            }
        }
        // Cycle identity: N_j w_j^T + X_j c_j - N_{j+1} w_{j+1}^T = 0.
        let zero = vec![0u8; vm.len()];
        for j in 0..n {
            let w_here = if hat_span.contains(j) { &vm } else { &zero };
            let w_next = if hat_span.contains((j + 1) % n) { &vm } else { &zero };
            let nj = full.state_matrix(j).without_row(m);
            let njn = full.state_matrix(j + 1).without_row(m);
            let xcol: Vec<u8> = {
                let col = x.column(j);
                (0..n).filter(|&l| l != m).map(|l| col[l]).collect()
            };
            let lhs = nj.mul_vec(w_here);
            let rhs = njn.mul_vec(w_next);
            let ok = (0..n - 1).all(|r| {
                let mid = field.mul(xcol[r], cm[j]);
                field.add(lhs[r], mid) == rhs[r]
            });
            if !ok {
                return Err(Error::VerificationFailed(format!(
                    "cycle identity fails for generator {m} at section {j}"
                )));
            }
        }

        v.push(vm);
        dual_rows.push(cm);
        dual_spans.push(hat_span);
    }

    let y = FieldMatrix::from_residue_rows(field, &dual_rows, n);
    let dual_pair = CharacteristicPair::from_parts(code.dual(), y, dual_spans)
        .map_err(|e| Error::VerificationFailed(format!("dual pair invalid: {e}")))?;
    Ok(DualCharResult {
        pair: dual_pair,
        v,
        x_sorted: x,
        spans_sorted: spans,
        user_order,
        check: check.clone(),
    })
}

/// Complementary selections: k primal generators indexed by span end, and
/// the n-k dual generators whose spans are not the reversals of the
/// selected ones.
#[derive(Clone, Debug)]
pub struct DualSelection {
    /// Selected span end points, ascending.
    pub ends: Vec<usize>,
    /// Complementary dual span start points, ascending.
    pub complement: Vec<usize>,
    pub x_sel: FieldMatrix,
    pub spans: SpanList,
    pub y_sel: FieldMatrix,
    pub hat_spans: SpanList,
}

pub fn dual_selection(res: &DualCharResult, ends: &[usize]) -> Result<DualSelection> {
    let n = res.n();
    let k = res.k();
    let mut sel: Vec<usize> = ends.to_vec();
    sel.sort_unstable();
    sel.dedup();
    if sel.len() != k || ends.len() != k {
        return Err(Error::BadSelectionSize { expected: k, got: ends.len() });
    }
    if sel.iter().any(|&l| l >= n) {
        return Err(Error::Dimension("selection index out of range".into()));
    }
    let complement: Vec<usize> = (0..n).filter(|m| !sel.contains(m)).collect();
    Ok(DualSelection {
        x_sel: res.x_sorted.select_rows(&sel),
        spans: sel.iter().map(|&l| res.spans_sorted[l]).collect(),
        y_sel: res.pair.matrix().select_rows(&complement),
        hat_spans: complement.iter().map(|&m| res.pair.spans()[m]).collect(),
        ends: sel,
        complement,
    })
}

/// Per-selection outcome of the three-way rank equivalence.
#[derive(Clone, Debug, Serialize)]
pub struct RankEquivalenceEntry {
    pub ends: Vec<usize>,
    pub x_full_rank: bool,
    pub v_independent: bool,
    pub y_full_rank: bool,
}

impl RankEquivalenceEntry {
    pub fn consistent(&self) -> bool {
        self.x_full_rank == self.v_independent && self.v_independent == self.y_full_rank
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RankEquivalenceReport {
    pub entries: Vec<RankEquivalenceEntry>,
    pub equivalent: bool,
    pub full_rank_selections: usize,
}

/// Checks `rk X̃ = k <=> {v_m} independent <=> rk Ỹ = n-k` over all
/// selections of k span ends. A violation falsifies the construction and
/// must abort any caller.
pub fn verify_rank_equivalence(res: &DualCharResult) -> Result<RankEquivalenceReport> {
    let n = res.n();
    let k = res.k();
    let field = res.check.field();
    let mut entries = Vec::new();
    for ends in (0..n).combinations(k) {
        let sel = dual_selection(res, &ends)?;
        let vmat = FieldMatrix::from_residue_rows(
            field,
            &sel.complement.iter().map(|&m| res.v[m].clone()).collect::<Vec<_>>(),
            n - k,
        );
        entries.push(RankEquivalenceEntry {
            x_full_rank: sel.x_sel.rank() == k,
            v_independent: vmat.rank() == n - k,
            y_full_rank: sel.y_sel.rank() == n - k,
            ends,
        });
    }
    let equivalent = entries.iter().all(RankEquivalenceEntry::consistent);
    let full_rank_selections = entries.iter().filter(|e| e.x_full_rank).count();
    Ok(RankEquivalenceReport { entries, equivalent, full_rank_selections })
}

/// Outcome of pairing a full-rank selection with its dual KV-trellis.
#[derive(Clone, Debug)]
pub struct DualKvReport {
    /// rk Ñ_j = rk P_j = rk Ñ_j P_j^T for every section.
    pub pairing_nondegenerate: bool,
    /// The assembled dual trellis equals the local dual under the pairing.
    pub equals_local_dual: bool,
    /// Witness for the isomorphism with the product trellis of (Ỹ, Ŝ).
    pub product_witness: crate::trellis::Isomorphism,
    /// Shared state complexity profile of the paired trellises.
    pub scp: Vec<usize>,
}

/// Builds the KV-trellis of a full-rank selection and its dual trellis
/// from the complementary dual generators, and proves they are dual: the
/// dual transition spaces `im(P_j | Ỹ_j^T | P_{j+1})` equal the local dual
/// of the primal trellis under the non-degenerate pairing carried by the
/// P_j matrices, and the result is isomorphic to the product trellis of
/// the selected dual generators.
pub fn dual_kv_pair(
    res: &DualCharResult,
    sel: &DualSelection,
    budget: &Budget,
) -> Result<(BcjrTrellis, LinearTrellis, DualKvReport)> {
    let n = res.n();
    let k = res.k();
    let field = res.check.field();
    if sel.x_sel.rank() != k {
        return Err(Error::RankDeficient);
    }
    let primal =
        BcjrTrellis::from_spans(sel.x_sel.clone(), res.check.clone(), sel.spans.clone())?;

    // Row m of P_j is v_m on the dual span (m, a_m], zero elsewhere.
    let p_mats: Vec<FieldMatrix> = (0..n)
        .map(|j| {
            let rows: Vec<Vec<u8>> = sel
                .complement
                .iter()
                .map(|&m| {
                    if res.pair.spans()[m].contains(j) {
                        res.v[m].clone()
                    } else {
                        vec![0u8; n - k]
                    }
                })
                .collect();
            FieldMatrix::from_residue_rows(field, &rows, n - k)
        })
        .collect();

    for j in 0..n {
        let nj = primal.state_matrix(j);
        let pj = &p_mats[j];
        let gram = nj.mul(&pj.transpose())?;
        let s = nj.rank();
        if pj.rank() != s || gram.rank() != s {
            return Err(Error::DualityFailed(j));
        }
    }

    // Dual transitions (P_j | Ỹ_j^T | P_{j+1}).
    let mut transitions = Vec::with_capacity(n);
    for j in 0..n {
        let col = FieldMatrix::from_row(field, &sel.y_sel.column(j)).transpose();
        transitions.push(FieldMatrix::hstack(&[&p_mats[j], &col, &p_mats[(j + 1) % n]])?);
    }
    let dual_trellis =
        LinearTrellis::new(field, vec![n - k; n], p_mats.clone(), transitions)?;

    // Under this pairing the local dual must coincide literally.
    let pairing = StatePairing::new(
        p_mats.clone(),
        (0..n).map(|_| FieldMatrix::identity(field, n - k)).collect(),
    );
    let local = local_dual(primal.base(), &pairing)?;
    for j in 0..n {
        if !local.transition_space(j).row_space_eq(dual_trellis.transition_space(j)) {
            return Err(Error::DualityFailed(j));
        }
    }

    let product = ProductTrellis::new(sel.y_sel.clone(), sel.hat_spans.clone())?;
    let witness = dual_trellis
        .is_isomorphic_with(product.base(), budget)?
        .ok_or(Error::DualityFailed(n))?;

    let scp = primal.base().complexity().scp;
    if dual_trellis.complexity().scp != scp {
        return Err(Error::VerificationFailed("dual trellis changes the SCP".into()));
    }
    let report = DualKvReport {
        pairing_nondegenerate: true,
        equals_local_dual: true,
        product_witness: witness,
        scp,
    };
    Ok((primal, dual_trellis, report))
}

/// Displacement symmetry of the matched BCJR presentations.
#[derive(Clone, Debug, Serialize)]
pub struct SymmetryReport {
    pub displacement: Vec<Vec<u8>>,
    pub dual_displacement: Vec<Vec<u8>>,
    pub states_transposed: bool,
}

/// Checks that the BCJR trellis of the selected dual generators, with the
/// selected primal generators as its check matrix, is exactly the BCJR
/// dual of the primal presentation: `D' = D^T` and all state matrices
/// transpose.
pub fn verify_bcjr_symmetry(sel: &DualSelection) -> Result<SymmetryReport> {
    let d = displacement_from_spans(&sel.x_sel, &sel.y_sel, &sel.spans)?;
    let d_dual = displacement_from_spans(&sel.y_sel, &sel.x_sel, &sel.hat_spans)?;
    if d_dual != d.transpose() {
        return Err(Error::SymmetryFailed);
    }
    let primal = BcjrTrellis::new(sel.x_sel.clone(), sel.y_sel.clone(), d)?;
    let dual = BcjrTrellis::new(sel.y_sel.clone(), sel.x_sel.clone(), d_dual)?;
    let n = primal.depth();
    let states_transposed =
        (0..n).all(|j| *dual.state_matrix(j) == primal.state_matrix(j).transpose());
    if !states_transposed {
        return Err(Error::SymmetryFailed);
    }
    Ok(SymmetryReport {
        displacement: dump(primal.displacement()),
        dual_displacement: dump(dual.displacement()),
        states_transposed,
    })
}

fn dump(m: &FieldMatrix) -> Vec<Vec<u8>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// Verdict for one selection inside the end-to-end suite.
#[derive(Clone, Debug, Serialize)]
pub struct SelectionVerdict {
    pub ends: Vec<usize>,
    pub full_rank: bool,
    pub duality_ok: bool,
    pub symmetry_ok: bool,
    pub scp_equal: bool,
    pub error: Option<String>,
}

impl SelectionVerdict {
    pub fn passed(&self) -> bool {
        !self.full_rank || (self.duality_ok && self.symmetry_ok && self.scp_equal)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub p: u64,
    pub n: usize,
    pub k: usize,
    /// The dual span list equals the reversed primal span list, as
    /// recomputed independently by the greedy scan on the dual code.
    pub reversed_spans_ok: bool,
    pub rank_equivalence: RankEquivalenceReport,
    pub selections: Vec<SelectionVerdict>,
    pub passed: bool,
}

/// End-to-end run for one code: characteristic pair, dual construction,
/// rank equivalence over all selections, and for every full-rank selection
/// the dual KV pairing, displacement symmetry and SCP agreement.
pub fn kv_conjecture_suite(
    code: &crate::code::LinearCode,
    policy: crate::code::GeneratorPolicy,
    budget: &Budget,
) -> Result<ConjectureReport> {
    let pair = code.characteristic_pair_with(policy, budget)?;
    let res = dual_characteristic_pair(&pair, code.check())?;

    let mut greedy_dual = code.dual().characteristic_spans()?;
    let mut reversed: SpanList = pair.spans().iter().map(Span::reverse).collect();
    greedy_dual.sort();
    reversed.sort();
    let reversed_spans_ok = greedy_dual == reversed;

    let rank_equivalence = verify_rank_equivalence(&res)?;
    if !rank_equivalence.equivalent {
        return Err(Error::VerificationFailed(
            "dual rank equivalence violated; construction defect".into(),
        ));
    }

    let n = code.len();
    let k = code.dim();
    let combos: Vec<Vec<usize>> = (0..n).combinations(k).collect();
    let selections: Vec<SelectionVerdict> = combos
        .par_iter()
        .map(|ends| {
            let sel = match dual_selection(&res, ends) {
                Ok(s) => s,
                Err(e) => {
                    return SelectionVerdict {
                        ends: ends.clone(),
                        full_rank: false,
                        duality_ok: false,
                        symmetry_ok: false,
                        scp_equal: false,
                        error: Some(e.to_string()),
                    }
                }
            };
            let full_rank = sel.x_sel.rank() == k;
            if !full_rank {
                return SelectionVerdict {
                    ends: ends.clone(),
                    full_rank,
                    duality_ok: false,
                    symmetry_ok: false,
                    scp_equal: false,
                    error: None,
                };
            }
            let (duality_ok, scp_equal, mut error) = match dual_kv_pair(&res, &sel, budget) {
                Ok((primal, dual, report)) => {
                    let scp_equal = primal.base().complexity().scp == report.scp
                        && dual.complexity().scp == report.scp;
                    (report.equals_local_dual, scp_equal, None)
                }
                Err(e) => (false, false, Some(e.to_string())),
            };
            let symmetry_ok = match verify_bcjr_symmetry(&sel) {
                Ok(_) => true,
                Err(e) => {
                    error.get_or_insert_with(|| e.to_string());
                    false
                }
            };
            SelectionVerdict { ends: ends.clone(), full_rank, duality_ok, symmetry_ok, scp_equal, error }
        })
        .collect();

    let passed = reversed_spans_ok
        && rank_equivalence.equivalent
        && selections.iter().all(SelectionVerdict::passed)
        && selections.iter().any(|s| s.full_rank);
    Ok(ConjectureReport {
        p: code.field().modulus(),
        n,
        k,
        reversed_spans_ok,
        rank_equivalence,
        selections,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::GeneratorPolicy;
    use crate::fixtures;

    fn selfdual_result() -> DualCharResult {
        let fx = fixtures::selfdual_4_2();
        let code = fx.code();
        let pair =
            CharacteristicPair::from_parts(code, fx.x.clone(), fx.spans.clone()).unwrap();
        // Use the printed generator matrix as the check matrix, matching
        // the layout of the frozen state matrices.
        dual_characteristic_pair(&pair, &fx.gens).unwrap()
    }

    #[test]
    fn dual_construction_on_the_selfdual_code() {
        let fx = fixtures::selfdual_4_2();
        let res = selfdual_result();
        assert_eq!(res.dual_states(), &fx.v[..]);
        assert_eq!(res.dual_matrix(), &fx.y);
        assert_eq!(*res.dual_spans(), fx.hat_spans);
        // Self-duality is not respected: Y differs from X.
        assert_ne!(res.dual_matrix(), &fx.x);
    }

    #[test]
    fn dual_construction_is_independent_of_the_check_matrix() {
        let fx = fixtures::selfdual_4_2();
        let code = fx.code();
        let pair =
            CharacteristicPair::from_parts(code.clone(), fx.x.clone(), fx.spans.clone()).unwrap();
        let res = dual_characteristic_pair(&pair, code.check()).unwrap();
        assert_eq!(res.dual_matrix(), &fx.y);
    }

    #[test]
    fn ternary_construction_produces_y1_not_y2() {
        let fx = fixtures::ternary_4_2();
        let code = fx.code();
        let pair =
            CharacteristicPair::from_parts(code, fx.x.clone(), fx.spans.clone()).unwrap();
        let res = dual_characteristic_pair(&pair, &fx.check).unwrap();
        // Compare (span -> row) maps; the printed listing uses another order.
        for (idx, span) in fx.y_spans.iter().enumerate() {
            let m = span.start();
            assert_eq!(
                res.dual_matrix().row(m),
                fx.y1.row(idx),
                "row with span {span} differs"
            );
            assert_eq!(res.dual_spans()[m], *span);
        }
        // Y2 differs from the construction in the row with span (1,0].
        assert_ne!(res.dual_matrix().row(1), fx.y2.row(0));
    }

    #[test]
    fn dual_cycles_lie_in_the_local_duals_of_the_leave_one_out_trellises() {
        let fx = fixtures::selfdual_4_2();
        let res = selfdual_result();
        let n = 4;
        for m in 0..n {
            let keep: Vec<usize> = (0..n).filter(|&l| l != m).collect();
            let x_m = res.primal_matrix_by_end().select_rows(&keep);
            let spans_m: SpanList = keep.iter().map(|&l| res.primal_spans_by_end()[l]).collect();
            let tm = BcjrTrellis::from_spans(x_m, fx.gens.clone(), spans_m).unwrap();
            // The m-th dual cycle satisfies the sign-inverted pairing
            // against every transition generator.
            let cycle = fx.dual_cycles.row(m);
            let f = tm.base().field();
            for j in 0..n {
                let w_here = &cycle[3 * j..3 * j + 2];
                let label = cycle[3 * j + 2];
                let w_next = &cycle[3 * (j + 1)..3 * (j + 1) + 2];
                let nj = tm.state_matrix(j);
                let njn = tm.state_matrix(j + 1);
                let xcol = tm.generators().column(j);
                for r in 0..3 {
                    let a = dot(f, nj.row(r), w_here);
                    let b = f.mul(xcol[r], label);
                    let c = dot(f, njn.row(r), w_next);
                    assert_eq!(f.add(a, b), c, "m={m} j={j} r={r}");
                }
            }
        }
    }

    fn dot(f: crate::field::PrimeField, a: &[u8], b: &[u8]) -> u8 {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
    }

    #[test]
    fn rank_equivalence_holds_for_the_constructed_pair() {
        let res = selfdual_result();
        let report = verify_rank_equivalence(&res).unwrap();
        assert_eq!(report.entries.len(), 6);
        assert!(report.equivalent);
        assert_eq!(report.full_rank_selections, 5);
    }

    #[test]
    fn selection_shapes() {
        let res = selfdual_result();
        let sel = dual_selection(&res, &[2, 3]).unwrap();
        assert_eq!(sel.complement, vec![0, 1]);
        assert_eq!(
            sel.hat_spans,
            vec![Span::new(0, 3, 4).unwrap(), Span::new(1, 2, 4).unwrap()]
        );
        assert!(matches!(
            dual_selection(&res, &[1]),
            Err(Error::BadSelectionSize { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn dual_kv_pairs_verify_for_all_full_rank_selections() {
        let res = selfdual_result();
        let budget = Budget::default();
        for ends in (0..4usize).combinations(2) {
            let sel = dual_selection(&res, &ends).unwrap();
            if sel.x_sel.rank() != 2 {
                continue;
            }
            let (primal, dual, report) = dual_kv_pair(&res, &sel, &budget).unwrap();
            assert!(report.product_witness.verify(
                &dual,
                ProductTrellis::new(sel.y_sel.clone(), sel.hat_spans.clone())
                    .unwrap()
                    .base()
            ));
            assert_eq!(primal.base().complexity().scp, dual.complexity().scp);
            verify_bcjr_symmetry(&sel).unwrap();
        }
    }

    #[test]
    fn symmetry_fails_for_the_second_ternary_dual_matrix() {
        let fx = fixtures::ternary_4_2();
        // Dual selection taking the primal rows with spans ending at 2 and
        // 3, paired against rows of Y2 instead of the constructed Y1.
        let code = fx.code();
        let pair =
            CharacteristicPair::from_parts(code.clone(), fx.x.clone(), fx.spans.clone()).unwrap();
        let res = dual_characteristic_pair(&pair, &fx.check).unwrap();
        let sel = dual_selection(&res, &[2, 3]).unwrap();
        // Substitute the Y2 rows with the same spans (0,1] and (1,0].
        let y2_rows = FieldMatrix::from_residue_rows(
            code.field(),
            &[fx.y2.row(1).to_vec(), fx.y2.row(0).to_vec()],
            4,
        );
        let tampered = DualSelection {
            ends: sel.ends.clone(),
            complement: sel.complement.clone(),
            x_sel: sel.x_sel.clone(),
            spans: sel.spans.clone(),
            y_sel: y2_rows,
            hat_spans: sel.hat_spans.clone(),
        };
        assert!(verify_bcjr_symmetry(&sel).is_ok());
        assert_eq!(verify_bcjr_symmetry(&tampered).unwrap_err(), Error::SymmetryFailed);
    }

    #[test]
    fn conjecture_suite_passes_on_the_bundled_codes() {
        let budget = Budget::default();
        for code in [
            fixtures::selfdual_4_2().code(),
            fixtures::ternary_4_2().code(),
        ] {
            let report = kv_conjecture_suite(&code, GeneratorPolicy::LexFirst, &budget).unwrap();
            assert!(report.passed, "{report:?}");
        }
    }

    #[test]
    fn suite_runs_on_random_codes() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let budget = Budget::default();
        let code = crate::code::random_full_support_code(&mut rng, 2, 6, 3, 200).unwrap();
        let report = kv_conjecture_suite(&code, GeneratorPolicy::LexFirst, &budget).unwrap();
        assert!(report.passed);
    }

    #[test]
    fn rejects_checks_that_do_not_match_the_code() {
        let fx = fixtures::selfdual_4_2();
        let other = fixtures::ternary_4_2();
        let pair = CharacteristicPair::from_parts(fx.code(), fx.x.clone(), fx.spans.clone())
            .unwrap();
        assert!(dual_characteristic_pair(&pair, &other.check).is_err());
    }
}
