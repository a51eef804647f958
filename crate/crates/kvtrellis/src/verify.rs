//! Verification suites over the bundled examples and random codes.
//!
//! These back the command line `verify` subcommand. The `examples` suite
//! replays the bundled worked examples against their frozen matrices; the
//! `properties` suite checks the structural identities (shortest spans,
//! reversed dual spans, state-row patterns, trivial state intersections)
//! on the bundled codes plus seeded random ones.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chardual::{dual_characteristic_pair, kv_conjecture_suite};
use crate::code::{random_full_support_code, GeneratorPolicy, LinearCode};
use crate::construct::{displacement_from_spans, kv_trellis, BcjrTrellis, ProductTrellis};
use crate::dual::{bcjr_dual, check_subtrellis_dual, local_dual, StatePairing};
use crate::error::Result;
use crate::field::FieldMatrix;
use crate::fixtures;
use crate::span::{Span, SpanList};
use crate::Budget;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl SuiteReport {
    fn collect(suite: &str, checks: Vec<(String, std::result::Result<(), String>)>) -> Self {
        let checks: Vec<CheckResult> = checks
            .into_iter()
            .map(|(name, outcome)| CheckResult {
                name,
                passed: outcome.is_ok(),
                detail: outcome.err().unwrap_or_default(),
            })
            .collect();
        let passed = checks.iter().all(|c| c.passed);
        Self { suite: suite.into(), checks, passed }
    }
}

fn check(ok: bool, msg: &str) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

/// Replays the bundled worked examples against their frozen data.
pub fn examples_suite(budget: &Budget) -> SuiteReport {
    let mut checks: Vec<(String, std::result::Result<(), String>)> = Vec::new();
    let mut push = |name: &str, outcome: std::result::Result<(), String>| {
        checks.push((name.to_string(), outcome));
    };

    push("binary_5_3 bcjr state matrices", (|| {
        let fx = fixtures::binary_5_3();
        let t = BcjrTrellis::from_spans(fx.gens.clone(), fx.check.clone(), fx.spans.clone())
            .map_err(|e| e.to_string())?;
        check(t.state_matrices() == &fx.states[..], "state matrices differ")
    })());

    push("binary_5_3 product profile matches bcjr and is isomorphic", (|| {
        let fx = fixtures::binary_5_3();
        let bcjr = BcjrTrellis::from_spans(fx.gens.clone(), fx.check.clone(), fx.spans.clone())
            .map_err(|e| e.to_string())?;
        let product = ProductTrellis::new(fx.gens.clone(), fx.spans.clone())
            .map_err(|e| e.to_string())?;
        check(
            bcjr.base().complexity() == product.base().complexity()
                && bcjr
                    .base()
                    .is_isomorphic_with(product.base(), budget)
                    .map_err(|e| e.to_string())?
                    .is_some()
                && bcjr.base().is_one_to_one(),
            "product and BCJR trellises disagree",
        )
    })());

    push("binary_5_3 local dual sections and reducedness", (|| {
        let fx = fixtures::binary_5_3();
        let t = BcjrTrellis::from_spans(fx.gens.clone(), fx.check.clone(), fx.spans.clone())
            .map_err(|e| e.to_string())?;
        let dual = local_dual(t.base(), &StatePairing::standard(t.base()))
            .map_err(|e| e.to_string())?;
        for (j, expected) in fx.local_dual_sections.iter().enumerate() {
            if !dual.transition_space(j).row_space_eq(expected) {
                return Err(format!("dual section {j} differs"));
            }
        }
        check(!dual.is_reduced(), "dual unexpectedly reduced")?;
        let report = check_subtrellis_dual(&t).map_err(|e| e.to_string())?;
        check(
            report.is_subtrellis() && report.gaps == vec![0, 0, 0, 0, 1],
            "subtrellis gaps differ",
        )
    })());

    push("binary_5_3 state intersection counterexample", (|| {
        let fx = fixtures::binary_5_3();
        let t = BcjrTrellis::from_spans(fx.gens.clone(), fx.check.clone(), fx.spans.clone())
            .map_err(|e| e.to_string())?;
        let mut common = t.state_matrix(0).row_basis();
        for j in 1..5 {
            common = common
                .row_space_intersection(t.state_matrix(j))
                .map_err(|e| e.to_string())?;
        }
        check(
            common.rows() > 0 && common.row_space_contains(&[0, 1]),
            "(0,1) should survive in every state space",
        )
    })());

    push("binary_3_2 product and local dual profiles", (|| {
        let fx = fixtures::binary_3_2();
        let t = ProductTrellis::new(fx.gens.clone(), fx.spans.clone())
            .map_err(|e| e.to_string())?;
        let c = t.base().complexity();
        check(c.scp == fx.product_scp && c.ecp == fx.product_ecp, "product profile differs")?;
        check(t.base().is_reduced() && !t.base().is_biproper(), "properness flags differ")?;
        let dual = local_dual(t.base(), &StatePairing::standard(t.base()))
            .map_err(|e| e.to_string())?;
        let d = dual.complexity();
        check(
            d.scp == fx.local_dual_scp && d.ecp == fx.local_dual_ecp,
            "dual profile differs",
        )?;
        for (j, expected) in fx.local_dual_sections.iter().enumerate() {
            if !dual.transition_space(j).row_space_eq(expected) {
                return Err(format!("dual section {j} differs"));
            }
        }
        check(!dual.is_reduced(), "dual unexpectedly reduced")
    })());

    push("selfdual_4_2 all-generator state matrices", (|| {
        let fx = fixtures::selfdual_4_2();
        let t = BcjrTrellis::from_spans(fx.x.clone(), fx.gens.clone(), fx.spans.clone())
            .map_err(|e| e.to_string())?;
        check(t.state_matrices() == &fx.states[..], "state matrices differ")?;
        check(!t.base().is_one_to_one(), "all-generator trellis should not be one-to-one")
    })());

    push("selfdual_4_2 dual characteristic construction", (|| {
        let fx = fixtures::selfdual_4_2();
        let pair = crate::code::CharacteristicPair::from_parts(
            fx.code(),
            fx.x.clone(),
            fx.spans.clone(),
        )
        .map_err(|e| e.to_string())?;
        let res = dual_characteristic_pair(&pair, &fx.gens).map_err(|e| e.to_string())?;
        check(
            res.dual_states() == &fx.v[..]
                && res.dual_matrix() == &fx.y
                && *res.dual_spans() == fx.hat_spans,
            "dual construction differs from the frozen data",
        )
    })());

    push("selfdual_4_2 naive self-pairing violates the rank condition", (|| {
        let fx = fixtures::selfdual_4_2();
        // Rows with spans ending at 0 and 3 are independent, but the
        // complementary rows (two copies of 0110) are not.
        let x_sel = fx.x.select_rows(&[0, 3]);
        let y_sel = fx.x.select_rows(&[1, 2]);
        check(x_sel.rank() == 2 && y_sel.rank() == 1, "expected rank pattern 2 vs 1")
    })());

    push("ternary_4_2 span list, count, and dual matrix", (|| {
        let fx = fixtures::ternary_4_2();
        let code = fx.code();
        let greedy = code
            .characteristic_pair_with(GeneratorPolicy::Normalized, budget)
            .map_err(|e| e.to_string())?;
        check(*greedy.spans() == fx.spans, "span list differs")?;
        let count = code
            .count_characteristic_matrices_with(true, budget)
            .map_err(|e| e.to_string())?;
        check(count == 9, "normalized matrix count differs")?;
        let pair = crate::code::CharacteristicPair::from_parts(
            code.clone(),
            fx.x.clone(),
            fx.spans.clone(),
        )
        .map_err(|e| e.to_string())?;
        let res = dual_characteristic_pair(&pair, &fx.check).map_err(|e| e.to_string())?;
        for (idx, span) in fx.y_spans.iter().enumerate() {
            if res.dual_matrix().row(span.start()) != fx.y1.row(idx) {
                return Err(format!("dual row with span {span} differs"));
            }
        }
        check(res.dual_matrix().row(1) != fx.y2.row(0), "construction produced the wrong matrix")
    })());

    push("binary_6_3 displacement and dual coincidence", (|| {
        let fx = fixtures::binary_6_3();
        let t = BcjrTrellis::from_spans(fx.gens.clone(), fx.check.clone(), fx.spans.clone())
            .map_err(|e| e.to_string())?;
        check(*t.displacement() == fx.displacement, "displacement differs")?;
        let c = t.base().complexity();
        check(c.scp == fx.scp && c.ecp == fx.ecp, "profile differs")?;
        let dual = bcjr_dual(&t).map_err(|e| e.to_string())?;
        check(*dual.displacement() == fx.displacement.transpose(), "dual displacement differs")?;
        let rebuilt = BcjrTrellis::from_spans(
            fx.check.clone(),
            fx.gens.clone(),
            fx.dual_spans.clone(),
        )
        .map_err(|e| e.to_string())?;
        check(
            rebuilt.displacement() == dual.displacement()
                && rebuilt.state_matrices() == dual.state_matrices(),
            "dual span-list presentation differs",
        )?;
        let report = check_subtrellis_dual(&t).map_err(|e| e.to_string())?;
        check(
            report.is_equal() && report.bcjr_ecp == fx.dual_ecp,
            "duals do not coincide",
        )
    })());

    push("hamming_8_4 lex-first matrix and rank counterexample", (|| {
        let fx = fixtures::hamming_8_4();
        let code = fx.code();
        let pair = code
            .characteristic_pair_with(GeneratorPolicy::LexFirst, budget)
            .map_err(|e| e.to_string())?;
        let (by_end, _) = pair.sorted_by_end();
        check(by_end.matrix() == &fx.x, "lex-first matrix differs")?;
        check(*by_end.spans() == fx.spans, "span list differs")?;
        let pick = |wanted: &SpanList| -> FieldMatrix {
            let rows: Vec<usize> = wanted.iter().map(|s| s.end()).collect();
            fx.x.select_rows(&rows)
        };
        check(
            pick(&fx.independent_spans).rank() == 4 && pick(&fx.dependent_spans).rank() == 3,
            "rank pattern of the self-pairing differs",
        )
    })());

    SuiteReport::collect("examples", checks)
}

/// Structural identities checked on a list of codes.
fn property_checks(
    tag: &str,
    code: &LinearCode,
    budget: &Budget,
    checks: &mut Vec<(String, std::result::Result<(), String>)>,
) {
    let name = |s: &str| format!("{tag}: {s}");

    let pair = match code.characteristic_pair_with(GeneratorPolicy::LexFirst, budget) {
        Ok(p) => p,
        Err(e) => {
            checks.push((name("characteristic pair"), Err(e.to_string())));
            return;
        }
    };
    let n = code.len();
    let k = code.dim();

    checks.push((name("spans cover each index n-k times"), {
        let ok = (0..n).all(|j| pair.spans().iter().filter(|s| s.contains(j)).count() == n - k);
        check(ok, "coverage count differs")
    }));

    checks.push((name("characteristic spans are shortest"), (|| {
        let words = code.codewords(budget.enumeration).map_err(|e| e.to_string())?;
        for c in words.iter().filter(|c| c.iter().any(|&x| x != 0)) {
            for span in crate::span::spans_of_vector(c).map_err(|e| e.to_string())? {
                let char_span = pair.spans()[..]
                    .iter()
                    .find(|s| s.start() == span.start())
                    .ok_or("missing start point")?;
                if char_span.len() > span.len() {
                    return Err(format!("{char_span} is longer than {span}"));
                }
            }
        }
        Ok(())
    })()));

    checks.push((name("dual span list is the reversal"), (|| {
        let mut dual_spans = code.dual().characteristic_spans().map_err(|e| e.to_string())?;
        let mut reversed: SpanList = pair.spans().iter().map(Span::reverse).collect();
        dual_spans.sort();
        reversed.sort();
        check(dual_spans == reversed, "dual span list differs from the reversal")
    })()));

    checks.push((name("end-point greedy agrees"), (|| {
        let mut by_end = code.characteristic_spans_by_end().map_err(|e| e.to_string())?;
        let mut by_start = pair.spans().clone();
        by_end.sort();
        by_start.sort();
        check(by_end == by_start, "scans disagree")
    })()));

    // One KV-trellis: the first full-rank selection in enumeration order.
    let selection = {
        use itertools::Itertools;
        (0..n)
            .combinations(k)
            .find(|sel| pair.matrix().select_rows(sel).rank() == k)
    };
    let Some(selection) = selection else {
        checks.push((name("kv selection"), Err("no full-rank selection".into())));
        return;
    };
    let trellis = match kv_trellis(&pair, code.check(), &selection) {
        Ok(t) => t,
        Err(e) => {
            checks.push((name("kv trellis"), Err(e.to_string())));
            return;
        }
    };

    checks.push((name("check columns meet state spaces only at span ends"), (|| {
        let spans: Vec<Span> = selection.iter().map(|&l| pair.spans()[l]).collect();
        let gens = trellis.generators();
        for j in 0..n {
            let h_j = code.check_column(j);
            let nj = trellis.state_matrix(j);
            let hit = nj.row_space_contains(&h_j);
            match spans.iter().position(|s| s.end() == j) {
                Some(l) => {
                    if !hit {
                        return Err(format!("H_{j} missing from im N_{j}"));
                    }
                    let f = code.field();
                    let coeff = f.neg(f.inv(gens.get(l, j)));
                    let expected: Vec<u8> =
                        nj.row(l).iter().map(|&x| f.mul(coeff, x)).collect();
                    if expected != h_j {
                        return Err(format!("H_{j} is not the scaled state row {l}"));
                    }
                }
                None => {
                    if hit {
                        return Err(format!("H_{j} unexpectedly inside im N_{j}"));
                    }
                }
            }
        }
        Ok(())
    })()));

    checks.push((name("state spaces intersect trivially"), (|| {
        let mut common = trellis.state_matrix(0).row_basis();
        for j in 1..n {
            common = common
                .row_space_intersection(trellis.state_matrix(j))
                .map_err(|e| e.to_string())?;
        }
        check(common.rows() == 0, "nontrivial intersection on a characteristic selection")
    })()));

    checks.push((name("kv duals coincide"), (|| {
        let report = crate::dual::verify_kv_duality(&pair, code.check(), &selection, budget)
            .map_err(|e| e.to_string())?;
        check(report.duals_coincide(), "local and BCJR duals differ")
    })()));
}

/// Identity checks over the bundled codes plus seeded random ones.
pub fn properties_suite(seed: u64, random_codes: usize, budget: &Budget) -> SuiteReport {
    let mut checks: Vec<(String, std::result::Result<(), String>)> = Vec::new();
    for (tag, code) in [
        ("binary_5_3", fixtures::binary_5_3().code()),
        ("selfdual_4_2", fixtures::selfdual_4_2().code()),
        ("ternary_4_2", fixtures::ternary_4_2().code()),
        ("binary_6_3", fixtures::binary_6_3().code()),
        ("hamming_8_4", fixtures::hamming_8_4().code()),
    ] {
        property_checks(tag, &code, budget, &mut checks);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut produced = 0;
    while produced < random_codes {
        let p = if produced % 2 == 0 { 2 } else { 3 };
        let n = 4 + (produced % 5);
        let k = 2 + (produced % (n - 3).max(1)).min(n - 3);
        if let Some(code) = random_full_support_code(&mut rng, p, n, k.max(2), 500) {
            property_checks(&format!("random_{produced}_p{p}_n{n}"), &code, budget, &mut checks);
            produced += 1;
        } else {
            produced += 1; // skip impossible shapes rather than loop forever
        }
    }
    SuiteReport::collect("properties", checks)
}

/// End-to-end dual-construction run for one code, as a suite report.
pub fn conjecture_suite_report(
    code: &LinearCode,
    policy: GeneratorPolicy,
    budget: &Budget,
) -> Result<SuiteReport> {
    let report = kv_conjecture_suite(code, policy, budget)?;
    let mut checks = vec![
        (
            "dual span list reversal".to_string(),
            check(report.reversed_spans_ok, "dual span list is not the reversal"),
        ),
        (
            "dual rank equivalence".to_string(),
            check(report.rank_equivalence.equivalent, "rank equivalence violated"),
        ),
    ];
    for sel in &report.selections {
        let label = format!("selection {:?}", sel.ends);
        let outcome = if sel.passed() {
            Ok(())
        } else {
            Err(sel.error.clone().unwrap_or_else(|| "duality or symmetry failed".into()))
        };
        checks.push((label, outcome));
    }
    Ok(SuiteReport::collect("kv-conjecture", checks))
}

/// Sanity check used by the CLI on explicit trellis input: displacement
/// symmetry of a matched pair of span lists, as in the worked `[6,3]`
/// example.
pub fn displacement_transpose_check(
    gens: &FieldMatrix,
    check_m: &FieldMatrix,
    spans: &SpanList,
    dual_spans: &SpanList,
) -> Result<bool> {
    let d = displacement_from_spans(gens, check_m, spans)?;
    let dd = displacement_from_spans(check_m, gens, dual_spans)?;
    Ok(dd == d.transpose())
}
