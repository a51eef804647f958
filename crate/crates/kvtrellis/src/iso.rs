//! Trellis isomorphism search.
//!
//! The per-time maps are unknown invertible matrices in echelon-basis
//! coordinates. The condition "every mapped edge of section i lies in the
//! target's section i" is linear in the unknown entries, jointly over all
//! sections, so the search solves one affine system and then enumerates its
//! solution space in a fixed coefficient order, keeping the first point
//! whose blocks are all invertible. Profiles are compared first; an
//! inconsistent system or an exhausted enumeration means "not isomorphic".

use crate::error::{Error, Result};
use crate::field::{checked_pow, increment, FieldMatrix};
use crate::trellis::{coords_in_basis, split_cols, Isomorphism, LinearTrellis};
use crate::Budget;

/// Transition generators expressed in state-basis coordinates:
/// rows `(alpha | label | beta)` of width `s_i + 1 + s_{i+1}`.
fn transitions_in_coords(
    t: &LinearTrellis,
    bases: &[FieldMatrix],
    i: usize,
) -> Result<FieldMatrix> {
    let n = t.depth();
    let next = (i + 1) % n;
    let tr = t.transition_space(i);
    let (start, label, end) = split_cols(t.ambient_dim(i), t.ambient_dim(next));
    let mut rows = Vec::with_capacity(tr.rows());
    for r in 0..tr.rows() {
        let row = tr.row(r);
        let sv: Vec<u8> = start.iter().map(|&c| row[c]).collect();
        let ev: Vec<u8> = end.iter().map(|&c| row[c]).collect();
        let mut out = coords_in_basis(&bases[i], &sv)?;
        out.push(row[label]);
        out.extend(coords_in_basis(&bases[next], &ev)?);
        rows.push(out);
    }
    let width = bases[i].rows() + 1 + bases[next].rows();
    Ok(FieldMatrix::from_residue_rows(t.field(), &rows, width))
}

pub fn find_isomorphism(
    from: &LinearTrellis,
    to: &LinearTrellis,
    budget: &Budget,
) -> Result<Option<Isomorphism>> {
    if from.field() != to.field() || from.depth() != to.depth() {
        return Ok(None);
    }
    let n = from.depth();
    let profile = from.complexity();
    if profile != to.complexity() {
        return Ok(None);
    }
    let dims = profile.scp;
    if let Some(&max) = dims.iter().max() {
        if max > budget.iso_state_dim {
            return Err(Error::SearchBudgetExceeded(format!(
                "state dimension {max} exceeds the configured bound {}",
                budget.iso_state_dim
            )));
        }
    }
    let f = from.field();
    let p = f.modulus();

    let from_bases: Vec<FieldMatrix> = (0..n).map(|i| from.state_space(i).row_basis()).collect();
    let to_bases: Vec<FieldMatrix> = (0..n).map(|i| to.state_space(i).row_basis()).collect();

    // Unknowns: the entries of each map, row-major, blocks in time order.
    let mut offsets = Vec::with_capacity(n + 1);
    let mut acc = 0;
    for &d in &dims {
        offsets.push(acc);
        acc += d * d;
    }
    offsets.push(acc);
    let unknowns = acc;

    // Constraints: mapped generator orthogonal to every annihilator row of
    // the target section.
    let mut eq_rows: Vec<Vec<u8>> = Vec::new();
    let mut rhs: Vec<u8> = Vec::new();
    for i in 0..n {
        let next = (i + 1) % n;
        let gens = transitions_in_coords(from, &from_bases, i)?;
        let ann = transitions_in_coords(to, &to_bases, i)?.right_annihilator();
        let (s_i, s_next) = (dims[i], dims[next]);
        for g in 0..gens.rows() {
            let grow = gens.row(g);
            let (alpha, a, beta) = (&grow[..s_i], grow[s_i], &grow[s_i + 1..]);
            for r in 0..ann.rows() {
                let arow = ann.row(r);
                let (u, tcoef, z) = (&arow[..s_i], arow[s_i], &arow[s_i + 1..]);
                let mut eq = vec![0u8; unknowns];
                for (x, &ax) in alpha.iter().enumerate() {
                    for (y, &uy) in u.iter().enumerate() {
                        let idx = offsets[i] + x * s_i + y;
                        eq[idx] = f.add(eq[idx], f.mul(ax, uy));
                    }
                }
                for (x, &bx) in beta.iter().enumerate() {
                    for (y, &zy) in z.iter().enumerate() {
                        let idx = offsets[next] + x * s_next + y;
                        eq[idx] = f.add(eq[idx], f.mul(bx, zy));
                    }
                }
                eq_rows.push(eq);
                rhs.push(f.neg(f.mul(a, tcoef)));
            }
        }
    }

    let system = FieldMatrix::from_residue_rows(f, &eq_rows, unknowns);
    let rhs_col = FieldMatrix::from_row(f, &rhs).transpose();
    let aug = FieldMatrix::hstack(&[&system, &rhs_col])?;
    let (red, pivots) = aug.rref();
    if pivots.contains(&unknowns) {
        return Ok(None); // inconsistent: no linear map works at all
    }
    let mut particular = vec![0u8; unknowns];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = red.get(r, unknowns);
    }
    let homogeneous = system.right_annihilator();
    let free = homogeneous.rows();
    if checked_pow(p, free as u32).filter(|&t| t <= budget.enumeration).is_none() {
        return Err(Error::SearchBudgetExceeded(format!(
            "{p}^{free} candidate solutions"
        )));
    }

    let mut coeffs = vec![0u8; free];
    loop {
        let mut x = particular.clone();
        for (t, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                for (xi, &hi) in x.iter_mut().zip(homogeneous.row(t)) {
                    *xi = f.add(*xi, f.mul(c, hi));
                }
            }
        }
        let maps: Vec<FieldMatrix> = (0..n)
            .map(|i| {
                let d = dims[i];
                let mut m = FieldMatrix::zeros(f, d, d);
                for r in 0..d {
                    for c in 0..d {
                        m.set(r, c, x[offsets[i] + r * d + c]);
                    }
                }
                m
            })
            .collect();
        if maps.iter().enumerate().all(|(i, m)| m.rank() == dims[i]) {
            let iso = Isomorphism {
                maps,
                from_bases: from_bases.clone(),
                to_bases: to_bases.clone(),
            };
            debug_assert!(iso.verify(from, to));
            return Ok(Some(iso));
        }
        if !increment(&mut coeffs, p as u8) {
            return Ok(None);
        }
    }
}
