//! The sectional linear trellis data model.
//!
//! A trellis of depth `n` keeps, per time `i`, a generator matrix for the
//! state space `V_i` (a subspace of an ambient coordinate space) and a
//! generator matrix for the transition space `E_i`, whose rows are
//! concatenations `[state at i | label | state at i+1]`. All structural
//! questions — label code, complexity, properness, reducedness — are
//! answered with exact linear algebra on these generators; explicit vertex
//! and edge sets are only materialized for DOT export.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{checked_pow, FieldMatrix, PrimeField};
use crate::iso;
use crate::Budget;

use serde::Serialize;

/// An explicit edge: start state, label, end state.
pub type Edge = (Vec<u8>, u8, Vec<u8>);

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearTrellis {
    field: PrimeField,
    depth: usize,
    ambient: Vec<usize>,
    states: Vec<FieldMatrix>,
    transitions: Vec<FieldMatrix>,
}

/// Per-time state and transition space dimensions.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ComplexityProfile {
    pub scp: Vec<usize>,
    pub ecp: Vec<usize>,
}

impl LinearTrellis {
    /// Validates shapes and the containment of each transition space's
    /// state blocks in the adjacent state spaces.
    pub fn new(
        field: PrimeField,
        ambient: Vec<usize>,
        states: Vec<FieldMatrix>,
        transitions: Vec<FieldMatrix>,
    ) -> Result<Self> {
        let depth = ambient.len();
        if depth == 0 || states.len() != depth || transitions.len() != depth {
            return Err(Error::Dimension("trellis needs one section per time index".into()));
        }
        for i in 0..depth {
            let next = (i + 1) % depth;
            if states[i].cols() != ambient[i] {
                return Err(Error::Dimension(format!("state basis {i} width")));
            }
            if transitions[i].cols() != ambient[i] + 1 + ambient[next] {
                return Err(Error::Dimension(format!("transition matrix {i} width")));
            }
            let (start, _, end) = split_cols(ambient[i], ambient[next]);
            let starts = transitions[i].select_cols(&start);
            let ends = transitions[i].select_cols(&end);
            for r in 0..transitions[i].rows() {
                if !states[i].row_space_contains(starts.row(r)) {
                    return Err(Error::Dimension(format!("edge {r} at time {i} starts outside V_{i}")));
                }
                if !states[next].row_space_contains(ends.row(r)) {
                    return Err(Error::Dimension(format!("edge {r} at time {i} ends outside V_{next}")));
                }
            }
        }
        Ok(Self { field, depth, ambient, states, transitions })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn ambient_dim(&self, i: usize) -> usize {
        self.ambient[i % self.depth]
    }

    /// Generator matrix of `V_i`; rows may be linearly dependent.
    pub fn state_space(&self, i: usize) -> &FieldMatrix {
        &self.states[i % self.depth]
    }

    /// Generator matrix of `E_i`.
    pub fn transition_space(&self, i: usize) -> &FieldMatrix {
        &self.transitions[i % self.depth]
    }

    pub fn state_dim(&self, i: usize) -> usize {
        self.states[i % self.depth].rank()
    }

    pub fn transition_dim(&self, i: usize) -> usize {
        self.transitions[i % self.depth].rank()
    }

    pub fn complexity(&self) -> ComplexityProfile {
        ComplexityProfile {
            scp: (0..self.depth).map(|i| self.state_dim(i)).collect(),
            ecp: (0..self.depth).map(|i| self.transition_dim(i)).collect(),
        }
    }

    fn state_offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.depth + 1);
        let mut acc = 0;
        for &a in &self.ambient {
            off.push(acc);
            acc += a;
        }
        off.push(acc);
        off
    }

    /// Echelon basis of the label code: all state-and-label sequences
    /// `(v_0, ..., v_{n-1}, c)` realized by cycles. Computed by matching
    /// the end block of each section with the start block of the next.
    pub fn label_code(&self) -> FieldMatrix {
        let n = self.depth;
        let widths: Vec<usize> = (0..n).map(|i| self.transitions[i].rows()).collect();
        let unknowns: usize = widths.iter().sum();
        let mut unknown_off = Vec::with_capacity(n);
        let mut acc = 0;
        for &w in &widths {
            unknown_off.push(acc);
            acc += w;
        }
        let eq_off = self.state_offsets();
        let eq_total = eq_off[n];
        let f = self.field;

        // One row per unknown coefficient. The equation block at time t
        // states "end block of section t-1 equals start block of section
        // t", so section i's end block lands in block i+1 and its start
        // block, negated, in block i. One section may hit the same block
        // twice when n = 1, hence the accumulating adds.
        let mut system = FieldMatrix::zeros(f, unknowns, eq_total);
        for i in 0..n {
            let next = (i + 1) % n;
            let t = &self.transitions[i];
            let (start, _, end) = split_cols(self.ambient[i], self.ambient[next]);
            for r in 0..t.rows() {
                let u = unknown_off[i] + r;
                for (c, &col) in end.iter().enumerate() {
                    let dst = eq_off[next] + c;
                    let v = f.add(system.get(u, dst), t.get(r, col));
                    system.set(u, dst, v);
                }
                for (c, &col) in start.iter().enumerate() {
                    let dst = eq_off[i] + c;
                    let v = f.sub(system.get(u, dst), t.get(r, col));
                    system.set(u, dst, v);
                }
            }
        }

        let kernel = system.left_kernel();
        let out_cols = eq_total + n;
        let mut rows = Vec::with_capacity(kernel.rows());
        for kr in 0..kernel.rows() {
            let x = kernel.row(kr);
            let mut out = vec![0u8; out_cols];
            for i in 0..n {
                let next = (i + 1) % n;
                let t = &self.transitions[i];
                let alpha = &x[unknown_off[i]..unknown_off[i] + t.rows()];
                let edge = t.vec_mul(alpha);
                let (start, label, _) = split_cols(self.ambient[i], self.ambient[next]);
                for (c, &col) in start.iter().enumerate() {
                    out[eq_off[i] + c] = edge[col];
                }
                out[eq_total + i] = edge[label];
            }
            rows.push(out);
        }
        FieldMatrix::from_residue_rows(f, &rows, out_cols).row_basis()
    }

    /// Projection of the label code onto the label coordinates, as a code.
    pub fn edge_label_code(&self) -> crate::code::LinearCode {
        let label = self.label_code();
        let base = self.state_offsets()[self.depth];
        let cols: Vec<usize> = (base..base + self.depth).collect();
        crate::code::LinearCode::from_matrix_lenient(&label.select_cols(&cols))
    }

    /// Injectivity of the cycle-to-labels projection.
    pub fn is_one_to_one(&self) -> bool {
        let label = self.label_code();
        let base = self.state_offsets()[self.depth];
        let cols: Vec<usize> = (base..base + self.depth).collect();
        label.select_cols(&cols).rank() == label.rows()
    }

    /// Linear biproperness criterion: an edge with zero start state and
    /// zero label must be the zero edge, and symmetrically for end states.
    pub fn is_biproper(&self) -> bool {
        for i in 0..self.depth {
            let next = (i + 1) % self.depth;
            let t = &self.transitions[i];
            let (start, label, end) = split_cols(self.ambient[i], self.ambient[next]);
            let mut head = start.clone();
            head.push(label);
            let mut tail = vec![label];
            tail.extend(end.iter().copied());
            let fwd = t.select_cols(&head).left_kernel();
            if !fwd.mul(&t.select_cols(&end)).expect("shape").is_zero() {
                return false;
            }
            let bwd = t.select_cols(&tail).left_kernel();
            if !bwd.mul(&t.select_cols(&start)).expect("shape").is_zero() {
                return false;
            }
        }
        true
    }

    fn section_projection(&self, label: &FieldMatrix, i: usize) -> (FieldMatrix, FieldMatrix) {
        let n = self.depth;
        let next = (i + 1) % n;
        let off = self.state_offsets();
        let state_cols: Vec<usize> = (off[i]..off[i] + self.ambient[i]).collect();
        let mut section_cols = state_cols.clone();
        section_cols.push(off[n] + i);
        section_cols.extend(off[next]..off[next] + self.ambient[next]);
        (label.select_cols(&state_cols), label.select_cols(&section_cols))
    }

    /// Whether every state and every edge lies on a cycle, in the linear
    /// sense: the label code projects onto each state and transition space.
    pub fn is_reduced(&self) -> bool {
        let label = self.label_code();
        for i in 0..self.depth {
            let (vproj, eproj) = self.section_projection(&label, i);
            if !vproj.row_space_eq(&self.states[i]) || !eproj.row_space_eq(&self.transitions[i]) {
                return false;
            }
        }
        true
    }

    /// Replaces each state and transition space by the projection of the
    /// label code onto it. Keeps ambient coordinates, so subtrellis
    /// relations stay literal containments.
    pub fn reduce(&self) -> LinearTrellis {
        let label = self.label_code();
        let mut states = Vec::with_capacity(self.depth);
        let mut transitions = Vec::with_capacity(self.depth);
        for i in 0..self.depth {
            let (vproj, eproj) = self.section_projection(&label, i);
            states.push(vproj.row_basis());
            transitions.push(eproj.row_basis());
        }
        Self {
            field: self.field,
            depth: self.depth,
            ambient: self.ambient.clone(),
            states,
            transitions,
        }
    }

    /// State-space and transition-space equality per section (row spaces,
    /// not literal matrices).
    pub fn equal_as_subspaces(&self, other: &LinearTrellis) -> bool {
        self.field == other.field
            && self.depth == other.depth
            && self.ambient == other.ambient
            && (0..self.depth).all(|i| {
                self.states[i].row_space_eq(&other.states[i])
                    && self.transitions[i].row_space_eq(&other.transitions[i])
            })
    }

    pub fn is_isomorphic(&self, other: &LinearTrellis) -> Result<Option<Isomorphism>> {
        self.is_isomorphic_with(other, &Budget::default())
    }

    /// Searches for per-time linear bijections carrying this trellis's
    /// transition spaces onto `other`'s. Returns the deterministic first
    /// witness in coefficient enumeration order, or `None`.
    pub fn is_isomorphic_with(
        &self,
        other: &LinearTrellis,
        budget: &Budget,
    ) -> Result<Option<Isomorphism>> {
        iso::find_isomorphism(self, other, budget)
    }

    /// Explicit state vectors of `V_i`, in deterministic order.
    pub fn enumerate_states(&self, i: usize, budget: u64) -> Result<Vec<Vec<u8>>> {
        self.states[i % self.depth].row_space_elements(budget)
    }

    /// Explicit edges `(start, label, end)` of `E_i`.
    pub fn enumerate_edges(&self, i: usize, budget: u64) -> Result<Vec<Edge>> {
        let n = self.depth;
        let next = (i + 1) % n;
        let (start, label, end) = split_cols(self.ambient[i % n], self.ambient[next]);
        let triples = self.transitions[i % n].row_space_elements(budget)?;
        Ok(triples
            .into_iter()
            .map(|t| {
                let s: Vec<u8> = start.iter().map(|&c| t[c]).collect();
                let e: Vec<u8> = end.iter().map(|&c| t[c]).collect();
                (s, t[label], e)
            })
            .collect())
    }

    pub fn export_dot(&self) -> Result<String> {
        self.export_dot_with(&Budget::default())
    }

    /// DOT digraph with vertices `t{i}_{statevector}`; edges with label
    /// zero are dashed, nonzero labels solid, mirroring the usual trellis
    /// drawings.
    pub fn export_dot_with(&self, budget: &Budget) -> Result<String> {
        let p = self.field.modulus();
        for i in 0..self.depth {
            let s = self.state_dim(i) as u32;
            let e = self.transition_dim(i) as u32;
            if checked_pow(p, s).filter(|&t| t <= budget.graph_states).is_none()
                || checked_pow(p, e).filter(|&t| t <= budget.graph_states).is_none()
            {
                return Err(Error::TooLarge(format!("section {i} of the DOT export")));
            }
        }
        let name = |i: usize, v: &[u8]| -> String {
            let digits: String = v.iter().map(|d| d.to_string()).collect();
            format!("t{i}_{digits}")
        };
        let mut out = String::from("digraph trellis {\n  rankdir=LR;\n");
        for i in 0..self.depth {
            for v in self.enumerate_states(i, budget.graph_states)? {
                out.push_str(&format!("  \"{}\";\n", name(i, &v)));
            }
        }
        for i in 0..self.depth {
            let next = (i + 1) % self.depth;
            for (s, a, e) in self.enumerate_edges(i, budget.graph_states)? {
                let style = if a == 0 { ", style=dashed" } else { "" };
                out.push_str(&format!(
                    "  \"{}\" -> \"{}\" [label=\"{}\"{}];\n",
                    name(i, &s),
                    name(next, &e),
                    a,
                    style
                ));
            }
        }
        out.push_str("}\n");
        Ok(out)
    }
}

pub(crate) fn split_cols(amb_in: usize, amb_out: usize) -> (Vec<usize>, usize, Vec<usize>) {
    let start: Vec<usize> = (0..amb_in).collect();
    let label = amb_in;
    let end: Vec<usize> = (amb_in + 1..amb_in + 1 + amb_out).collect();
    (start, label, end)
}

/// A witness for trellis isomorphism: invertible coordinate maps between
/// the echelon state bases of the two trellises, one per time index.
#[derive(Clone, Debug)]
pub struct Isomorphism {
    pub maps: Vec<FieldMatrix>,
    pub from_bases: Vec<FieldMatrix>,
    pub to_bases: Vec<FieldMatrix>,
}

impl Isomorphism {
    /// Image of a state of the source trellis at time `i`.
    pub fn apply_state(&self, i: usize, v: &[u8]) -> Result<Vec<u8>> {
        let coords = coords_in_basis(&self.from_bases[i], v)?;
        Ok(self.to_bases[i].vec_mul(&self.maps[i].vec_mul(&coords)))
    }

    /// Checks that the maps are invertible and carry each transition
    /// space of `from` onto the one of `to`.
    pub fn verify(&self, from: &LinearTrellis, to: &LinearTrellis) -> bool {
        let n = from.depth();
        if to.depth() != n || self.maps.len() != n {
            return false;
        }
        for i in 0..n {
            let s = from.state_dim(i);
            if to.state_dim(i) != s || self.maps[i].rows() != s || self.maps[i].rank() != s {
                return false;
            }
        }
        for i in 0..n {
            let next = (i + 1) % n;
            let t = from.transition_space(i);
            let (start, label, end) = split_cols(from.ambient_dim(i), from.ambient_dim(next));
            let mut mapped = Vec::new();
            for r in 0..t.rows() {
                let row = t.row(r);
                let sv: Vec<u8> = start.iter().map(|&c| row[c]).collect();
                let ev: Vec<u8> = end.iter().map(|&c| row[c]).collect();
                let (Ok(ms), Ok(me)) = (self.apply_state(i, &sv), self.apply_state(next, &ev))
                else {
                    return false;
                };
                let mut out = ms;
                out.push(row[label]);
                out.extend(me);
                mapped.push(out);
            }
            let width = to.ambient_dim(i) + 1 + to.ambient_dim(next);
            let mapped = FieldMatrix::from_residue_rows(from.field(), &mapped, width);
            if !mapped.row_space_eq(to.transition_space(i)) {
                return false;
            }
        }
        true
    }
}

/// Coefficients of `v` with respect to a full-row-rank basis matrix.
pub(crate) fn coords_in_basis(basis: &FieldMatrix, v: &[u8]) -> Result<Vec<u8>> {
    basis.transpose().solve_unique(v)
}

impl fmt::Display for ComplexityProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "scp={:?} ecp={:?}", self.scp, self.ecp)
    }
}
