//! Exact dense linear algebra over prime fields GF(p).
//!
//! Everything downstream (codes, trellises, dualization) reduces to rank,
//! kernel and solvability questions about small dense matrices, so this
//! module keeps the whole toolbox in one place: reduced row echelon form,
//! left kernels, annihilators, generalized inverses and row-space
//! arithmetic. Every basis returned by this module is in reduced echelon
//! form, so outputs are canonical and can be compared entry for entry.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime field GF(p) with a small modulus.
///
/// Elements are residues stored as `u8`, so `p` must fit in a byte.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct PrimeField {
    p: u16,
}

impl PrimeField {
    /// Constructs GF(p), checking that `p` is prime.
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p > 251 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p: p as u16 })
    }

    pub fn modulus(&self) -> u64 {
        u64::from(self.p)
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        ((u16::from(a) + u16::from(b)) % self.p) as u8
    }

    pub fn sub(&self, a: u8, b: u8) -> u8 {
        ((u16::from(a) + self.p - u16::from(b)) % self.p) as u8
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        ((u32::from(a) * u32::from(b)) % u32::from(self.p)) as u8
    }

    pub fn neg(&self, a: u8) -> u8 {
        self.sub(0, a)
    }

    /// Multiplicative inverse of a nonzero element, via a^(p-2).
    pub fn inv(&self, a: u8) -> u8 {
        assert!(a != 0, "zero has no inverse");
        let mut acc: u8 = 1;
        let mut base = a % (self.p as u8);
        let mut e = u32::from(self.p) - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Reduces an arbitrary signed integer to a residue in [0, p).
    pub fn reduce(&self, x: i64) -> u8 {
        x.rem_euclid(i64::from(self.p)) as u8
    }

    /// All field elements, in the order 0, 1, ..., p-1.
    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.p as u8
    }

    fn check_same(&self, other: &PrimeField) -> Result<()> {
        if self != other {
            return Err(Error::FieldMismatch(self.modulus(), other.modulus()));
        }
        Ok(())
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A dense matrix over GF(p), stored row-major.
///
/// Rows and columns may be zero; empty matrices behave consistently in all
/// rank and kernel computations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<u8>,
}

impl FieldMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self { field, rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from explicit rows; entries are reduced modulo p.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged row lengths".into()));
        }
        let entries = rows.iter().flatten().map(|&x| field.reduce(x)).collect();
        Ok(Self { field, rows: r, cols: c, entries })
    }

    /// Builds a single-row matrix from a residue vector.
    pub fn from_row(field: PrimeField, row: &[u8]) -> Self {
        Self { field, rows: 1, cols: row.len(), entries: row.to_vec() }
    }

    /// Builds a matrix whose rows are the given residue vectors.
    pub fn from_residue_rows(field: PrimeField, rows: &[Vec<u8>], cols: usize) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == cols));
        let entries = rows.iter().flatten().copied().collect();
        Self { field, rows: rows.len(), cols, entries }
    }

    /// Rank one matrix u^T * v.
    pub fn outer(field: PrimeField, u: &[u8], v: &[u8]) -> Self {
        let mut m = Self::zeros(field, u.len(), v.len());
        for (i, &ui) in u.iter().enumerate() {
            for (j, &vj) in v.iter().enumerate() {
                m.set(i, j, field.mul(ui, vj));
            }
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u8> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.row(i).iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Horizontal concatenation `[self | others...]`.
    pub fn hstack(parts: &[&FieldMatrix]) -> Result<Self> {
        let field = parts[0].field;
        let rows = parts[0].rows;
        for p in parts {
            field.check_same(&p.field)?;
            if p.rows != rows {
                return Err(Error::Dimension("hstack: row counts differ".into()));
            }
        }
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut m = Self::zeros(field, rows, cols);
        for i in 0..rows {
            let mut off = 0;
            for p in parts {
                for j in 0..p.cols {
                    m.set(i, off + j, p.get(i, j));
                }
                off += p.cols;
            }
        }
        Ok(m)
    }

    /// Vertical concatenation.
    pub fn vstack(parts: &[&FieldMatrix]) -> Result<Self> {
        let field = parts[0].field;
        let cols = parts[0].cols;
        for p in parts {
            field.check_same(&p.field)?;
            if p.cols != cols {
                return Err(Error::Dimension("vstack: column counts differ".into()));
            }
        }
        let rows = parts.iter().map(|p| p.rows).sum();
        let entries = parts.iter().flat_map(|p| p.entries.iter().copied()).collect();
        Ok(Self { field, rows, cols, entries })
    }

    pub fn select_rows(&self, indices: &[usize]) -> Self {
        let mut m = Self::zeros(self.field, indices.len(), self.cols);
        for (i, &src) in indices.iter().enumerate() {
            for j in 0..self.cols {
                m.set(i, j, self.get(src, j));
            }
        }
        m
    }

    pub fn select_cols(&self, indices: &[usize]) -> Self {
        let mut m = Self::zeros(self.field, self.rows, indices.len());
        for i in 0..self.rows {
            for (j, &src) in indices.iter().enumerate() {
                m.set(i, j, self.get(i, src));
            }
        }
        m
    }

    pub fn without_row(&self, i: usize) -> Self {
        let keep: Vec<usize> = (0..self.rows).filter(|&r| r != i).collect();
        self.select_rows(&keep)
    }

    fn take_rows(&self, count: usize) -> Self {
        self.select_rows(&(0..count).collect::<Vec<_>>())
    }

    pub fn add(&self, rhs: &FieldMatrix) -> Result<Self> {
        self.field.check_same(&rhs.field)?;
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Dimension("add: shapes differ".into()));
        }
        let mut m = self.clone();
        for (a, &b) in m.entries.iter_mut().zip(rhs.entries.iter()) {
            *a = self.field.add(*a, b);
        }
        Ok(m)
    }

    pub fn mul(&self, rhs: &FieldMatrix) -> Result<Self> {
        self.field.check_same(&rhs.field)?;
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "mul: {}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let f = self.field;
        let mut m = Self::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = f.add(m.get(i, j), f.mul(a, rhs.get(l, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(m)
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[u8]) -> Vec<u8> {
        debug_assert_eq!(v.len(), self.rows);
        let f = self.field;
        let mut out = vec![0u8; self.cols];
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            for j in 0..self.cols {
                out[j] = f.add(out[j], f.mul(vi, self.get(i, j)));
            }
        }
        out
    }

    /// Matrix times column vector, returned as a plain vector.
    pub fn mul_vec(&self, v: &[u8]) -> Vec<u8> {
        debug_assert_eq!(v.len(), self.cols);
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u8;
                for j in 0..self.cols {
                    acc = f.add(acc, f.mul(self.get(i, j), v[j]));
                }
                acc
            })
            .collect()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    /// Reduced row echelon form with pivots restricted to the first
    /// `pivot_cols` columns. Row operations act on the full width, which is
    /// what makes augmented-matrix tricks (kernel, solving, op tracking)
    /// work.
    fn rref_limited(&self, pivot_cols: usize) -> (FieldMatrix, Vec<usize>) {
        let mut m = self.clone();
        let f = m.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_cols.min(m.cols) {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c));
            for j in 0..m.cols {
                m.set(r, j, f.mul(inv, m.get(r, j)));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Reduced row echelon form and the pivot column indices.
    pub fn rref(&self) -> (FieldMatrix, Vec<usize>) {
        self.rref_limited(self.cols)
    }

    /// Dimension of the row space.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical (reduced echelon) basis of the row space.
    pub fn row_basis(&self) -> FieldMatrix {
        let (m, pivots) = self.rref();
        m.take_rows(pivots.len())
    }

    /// Canonical basis of the left kernel {x : x * self = 0}.
    pub fn left_kernel(&self) -> FieldMatrix {
        let id = Self::identity(self.field, self.rows);
        let aug = Self::hstack(&[self, &id]).expect("hstack of equal-height matrices");
        let (red, pivots) = aug.rref_limited(self.cols);
        let tail: Vec<usize> = (self.cols..self.cols + self.rows).collect();
        let kernel_rows: Vec<usize> = (pivots.len()..self.rows).collect();
        red.select_rows(&kernel_rows).select_cols(&tail).row_basis()
    }

    /// Canonical basis of {y : self * y^T = 0}, as rows.
    pub fn right_annihilator(&self) -> FieldMatrix {
        self.transpose().left_kernel()
    }

    /// Solves `self * v^T = b` for the unique row vector `v`.
    ///
    /// Fails with [`Error::NoSolution`] if `b` is outside the column space
    /// and with [`Error::NotUnique`] if the column rank is deficient.
    pub fn solve_unique(&self, b: &[u8]) -> Result<Vec<u8>> {
        if b.len() != self.rows {
            return Err(Error::Dimension("solve_unique: rhs length".into()));
        }
        let bcol = FieldMatrix::from_row(self.field, b).transpose();
        let aug = Self::hstack(&[self, &bcol])?;
        let (red, pivots) = aug.rref_limited(self.cols);
        for i in pivots.len()..self.rows {
            if red.get(i, self.cols) != 0 {
                return Err(Error::NoSolution);
            }
        }
        if pivots.len() < self.cols {
            return Err(Error::NotUnique);
        }
        let mut v = vec![0u8; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = red.get(r, self.cols);
        }
        Ok(v)
    }

    /// A generalized inverse F with `self * F * self = self`.
    pub fn generalized_inverse(&self) -> FieldMatrix {
        let id = Self::identity(self.field, self.rows);
        let aug = Self::hstack(&[self, &id]).expect("hstack of equal-height matrices");
        let (red, pivots) = aug.rref_limited(self.cols);
        let s = pivots.len();
        let tail: Vec<usize> = (self.cols..self.cols + self.rows).collect();
        let e_top = red.take_rows(s).select_cols(&tail);
        let mut rplus = FieldMatrix::zeros(self.field, self.cols, s);
        for (t, &c) in pivots.iter().enumerate() {
            rplus.set(c, t, 1);
        }
        rplus.mul(&e_top).expect("shape checked")
    }

    pub fn row_space_contains(&self, v: &[u8]) -> bool {
        if v.len() != self.cols {
            return false;
        }
        let stacked = Self::vstack(&[self, &Self::from_row(self.field, v)]).expect("widths equal");
        stacked.rank() == self.rank()
    }

    /// Row-space equality, tested via mutual containment of ranks.
    pub fn row_space_eq(&self, other: &FieldMatrix) -> bool {
        if self.field != other.field || self.cols != other.cols {
            return false;
        }
        let ra = self.rank();
        let rb = other.rank();
        if ra != rb {
            return false;
        }
        Self::vstack(&[self, other]).map(|s| s.rank() == ra).unwrap_or(false)
    }

    /// Canonical basis of the intersection of two row spaces.
    pub fn row_space_intersection(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        self.field.check_same(&other.field)?;
        if self.cols != other.cols {
            return Err(Error::Dimension("intersection: widths differ".into()));
        }
        // x*A + y*B = 0  =>  x*A = -(y*B) lies in both row spaces.
        let stacked = Self::vstack(&[self, other])?;
        let kernel = stacked.left_kernel();
        let mut members = Vec::new();
        for i in 0..kernel.rows() {
            let x = &kernel.row(i)[..self.rows];
            members.push(self.vec_mul(x));
        }
        Ok(Self::from_residue_rows(self.field, &members, self.cols).row_basis())
    }

    /// All elements of the row space, in deterministic counting order over
    /// echelon-basis coefficients. Errors if p^rank exceeds `budget`.
    pub fn row_space_elements(&self, budget: u64) -> Result<Vec<Vec<u8>>> {
        let basis = self.row_basis();
        let d = basis.rows();
        let p = self.field.modulus();
        let total = checked_pow(p, d as u32)
            .filter(|&t| t <= budget)
            .ok_or_else(|| Error::TooLarge(format!("{p}^{d} row-space elements")))?;
        let mut out = Vec::with_capacity(total as usize);
        let mut coeffs = vec![0u8; d];
        loop {
            out.push(basis.vec_mul(&coeffs));
            if !increment(&mut coeffs, p as u8) {
                break;
            }
        }
        Ok(out)
    }

    /// Fixture text format: a `p rows cols` header line, then one line of
    /// space-separated residues per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.field.modulus(), self.rows, self.cols);
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(u8::to_string).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let head: Vec<u64> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header token {t}"))))
            .collect::<Result<_>>()?;
        if head.len() != 3 {
            return Err(Error::Parse("matrix header must be `p rows cols`".into()));
        }
        let field = PrimeField::new(head[0])?;
        let (rows, cols) = (head[1] as usize, head[2] as usize);
        let mut data = Vec::with_capacity(rows);
        for line in lines.take(rows) {
            let row: Vec<i64> = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad entry {t}"))))
                .collect::<Result<_>>()?;
            if row.len() != cols {
                return Err(Error::Parse("row width differs from header".into()));
            }
            data.push(row);
        }
        if data.len() != rows {
            return Err(Error::Parse("fewer rows than header declares".into()));
        }
        Self::from_rows(field, &data)
    }
}

/// Increments a base-p counter in place; returns false on wrap-around.
pub(crate) fn increment(digits: &mut [u8], p: u8) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < p {
            return true;
        }
        *d = 0;
    }
    false
}

pub(crate) fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

impl fmt::Display for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(u8::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GF({}) {}x{}", self.field.modulus(), self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}
