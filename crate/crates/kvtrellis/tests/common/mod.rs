//! Shared test support: an exhaustive cycle-enumeration oracle that walks
//! explicit vertices and edges, independent of the linear matching system
//! used by the library, plus corpus builders.

use std::collections::{BTreeSet, HashMap};

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use kvtrellis::code::random_full_support_code;
use kvtrellis::{LinearCode, LinearTrellis};

type Adjacency = HashMap<Vec<u8>, Vec<(u8, Vec<u8>)>>;

/// All edge-label sequences of cycles, found by depth-first search over the
/// materialized vertex and edge sets.
pub fn dfs_label_sequences(t: &LinearTrellis, budget: u64) -> BTreeSet<Vec<u8>> {
    let n = t.depth();
    let mut edges: Vec<Adjacency> = vec![HashMap::new(); n];
    for (i, section) in edges.iter_mut().enumerate() {
        for (s, a, e) in t.enumerate_edges(i, budget).expect("oracle budget") {
            section.entry(s).or_default().push((a, e));
        }
    }
    let mut out = BTreeSet::new();
    let starts = t.enumerate_states(0, budget).expect("oracle budget");
    let mut labels = vec![0u8; n];
    for v0 in &starts {
        walk(&edges, v0, v0, 0, &mut labels, &mut out);
    }
    out
}

fn walk(
    edges: &[Adjacency],
    origin: &[u8],
    here: &[u8],
    depth: usize,
    labels: &mut Vec<u8>,
    out: &mut BTreeSet<Vec<u8>>,
) {
    if depth == edges.len() {
        if here == origin {
            out.insert(labels.clone());
        }
        return;
    }
    let Some(step) = edges[depth].get(here) else {
        return;
    };
    for (a, next) in step {
        labels[depth] = *a;
        walk(edges, origin, next, depth + 1, labels, out);
    }
}

/// The label set predicted by the linear-algebra path, as a comparable set.
pub fn label_set_from_code(t: &LinearTrellis, budget: u64) -> BTreeSet<Vec<u8>> {
    t.edge_label_code()
        .generator()
        .row_space_elements(budget)
        .expect("oracle budget")
        .into_iter()
        .collect()
}

/// Deterministic corpus of random codes with both supports full:
/// `q` in {2,3}, lengths up to 8.
pub fn random_code_corpus(seed: u64, count: usize) -> Vec<LinearCode> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut shape = 0usize;
    while out.len() < count {
        let p = if shape % 2 == 0 { 2 } else { 3 };
        let n = 4 + shape % 5;
        let k = 2 + shape % (n - 3).max(1);
        shape += 1;
        if let Some(code) = random_full_support_code(&mut rng, p, n, k, 500) {
            out.push(code);
        }
    }
    out
}
