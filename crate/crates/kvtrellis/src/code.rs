//! Linear block codes, their duals, and characteristic pairs.
//!
//! A code is held as a canonical echelon generator matrix together with an
//! echelon parity-check matrix. The characteristic machinery implements the
//! greedy shortest-span scan: for every start point `a` the unique shortest
//! span `(a, b_a]` over all nonzero codewords, realized by a generator
//! chosen by a deterministic policy. Span existence is decided by subcode
//! rank comparisons; full codeword enumeration is only used to pick
//! generators and as a test oracle.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{checked_pow, FieldMatrix, PrimeField};
use crate::span::{Span, SpanList};
use crate::Budget;

/// How the generator realizing each characteristic span is chosen.
///
/// The span list is determined by the code, but several codewords may share
/// a span, so the matrix itself is not unique.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum GeneratorPolicy {
    /// Lexicographically smallest codeword with the exact span, coordinates
    /// read cyclically starting at the span's start point.
    LexFirst,
    /// First codeword found in enumeration order, rescaled to have
    /// coordinate 1 at the span's start point.
    Normalized,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearCode {
    field: PrimeField,
    n: usize,
    gen: FieldMatrix,
    check: FieldMatrix,
    support: Vec<bool>,
    dual_support: Vec<bool>,
}

impl LinearCode {
    /// Builds a code from arbitrary generator rows. The stored generator is
    /// the echelon basis of the row space; the check matrix is the echelon
    /// basis of the dual.
    pub fn from_generator(p: u64, rows: &[Vec<i64>]) -> Result<Self> {
        let field = PrimeField::new(p)?;
        let m = FieldMatrix::from_rows(field, rows)?;
        if m.rows() == 0 || m.cols() == 0 || m.is_zero() {
            return Err(Error::ZeroCode);
        }
        Ok(Self::from_matrix_lenient(&m))
    }

    /// Same as [`LinearCode::from_generator`] but starting from a matrix.
    pub fn from_matrix(m: &FieldMatrix) -> Result<Self> {
        if m.rows() == 0 || m.cols() == 0 || m.is_zero() {
            return Err(Error::ZeroCode);
        }
        Ok(Self::from_matrix_lenient(m))
    }

    /// Internal constructor that tolerates the zero code (k = 0), which
    /// arises as the dual of the full space and as an edge-label code.
    pub(crate) fn from_matrix_lenient(m: &FieldMatrix) -> Self {
        let gen = m.row_basis();
        let check = gen.transpose().left_kernel();
        let n = m.cols();
        let support = (0..n).map(|j| gen.column(j).iter().any(|&x| x != 0)).collect();
        let dual_support = (0..n).map(|j| check.column(j).iter().any(|&x| x != 0)).collect();
        Self { field: m.field(), n, gen, check, support, dual_support }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Block length n.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.gen.rows()
    }

    /// Whether this is the zero code (dimension 0).
    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Canonical full-row-rank generator matrix (echelon form).
    pub fn generator(&self) -> &FieldMatrix {
        &self.gen
    }

    /// Canonical full-row-rank parity check matrix (echelon form).
    pub fn check(&self) -> &FieldMatrix {
        &self.check
    }

    /// Swaps the roles of the generator and check matrices.
    pub fn dual(&self) -> LinearCode {
        Self {
            field: self.field,
            n: self.n,
            gen: self.check.clone(),
            check: self.gen.clone(),
            support: self.dual_support.clone(),
            dual_support: self.support.clone(),
        }
    }

    pub fn has_full_support(&self) -> bool {
        self.support.iter().all(|&s| s)
    }

    pub fn dual_has_full_support(&self) -> bool {
        self.dual_support.iter().all(|&s| s)
    }

    pub fn contains(&self, word: &[u8]) -> bool {
        word.len() == self.n && self.gen.row_space_contains(word)
    }

    /// All codewords, deterministically ordered.
    pub fn codewords(&self, budget: u64) -> Result<Vec<Vec<u8>>> {
        self.gen.row_space_elements(budget)
    }

    /// The code sigma^a(C) with all generator columns rotated left by `a`.
    pub fn cyclic_shift(&self, steps: usize) -> LinearCode {
        let s = steps % self.n.max(1);
        let mut shifted = FieldMatrix::zeros(self.field, self.gen.rows(), self.n);
        for i in 0..self.gen.rows() {
            for j in 0..self.n {
                shifted.set(i, j, self.gen.get(i, (j + s) % self.n));
            }
        }
        Self::from_matrix_lenient(&shifted)
    }

    /// Column `j` of the check matrix as a row vector (the `H_j` of the
    /// BCJR recursion).
    pub fn check_column(&self, j: usize) -> Vec<u8> {
        self.check.column(j)
    }

    /// Echelon basis, embedded in F^n, of the subcode supported on the
    /// given closed set of positions.
    pub fn subcode_supported_on(&self, positions: &[usize]) -> FieldMatrix {
        let stacked = FieldMatrix::from_residue_rows(
            self.field,
            &positions.iter().map(|&j| self.check_column(j)).collect::<Vec<_>>(),
            self.check.rows(),
        );
        let local = stacked.left_kernel();
        let mut embedded = FieldMatrix::zeros(self.field, local.rows(), self.n);
        for i in 0..local.rows() {
            for (t, &j) in positions.iter().enumerate() {
                embedded.set(i, j, local.get(i, t));
            }
        }
        embedded.row_basis()
    }

    /// Whether some codeword has exact span `(a,b]`, decided by comparing
    /// subcode dimensions with and without the endpoints.
    fn exact_span_exists(&self, span: Span) -> bool {
        let closed = span.closed_positions();
        let full = self.subcode_supported_on(&closed).rows();
        let without_start: Vec<usize> =
            closed.iter().copied().filter(|&j| j != span.start()).collect();
        let without_end: Vec<usize> =
            closed.iter().copied().filter(|&j| j != span.end()).collect();
        let d_a = self.subcode_supported_on(&without_start).rows();
        let d_b = self.subcode_supported_on(&without_end).rows();
        d_a < full && d_b < full
    }

    /// The minimum-length span over all spans of nonzero codewords that
    /// start at `a`, scanned in increasing circular length.
    pub fn shortest_span_from(&self, a: usize) -> Result<Span> {
        if !self.support[a] {
            return Err(Error::UnsupportedPosition(a));
        }
        if !self.has_full_support() || !self.dual_has_full_support() {
            return Err(Error::SupportError);
        }
        for len in 1..self.n {
            let span = Span::new(a, (a + len) % self.n, self.n)?;
            if self.exact_span_exists(span) {
                return Ok(span);
            }
        }
        Err(Error::UnsupportedPosition(a))
    }

    /// Characteristic span list, one span per start point `a = 0..n-1`.
    pub fn characteristic_spans(&self) -> Result<SpanList> {
        (0..self.n).map(|a| self.shortest_span_from(a)).collect()
    }

    /// Characteristic span list found by screening end points instead of
    /// start points; as a set it agrees with the start-point scan.
    pub fn characteristic_spans_by_end(&self) -> Result<SpanList> {
        if !self.has_full_support() || !self.dual_has_full_support() {
            return Err(Error::SupportError);
        }
        let mut out = Vec::with_capacity(self.n);
        'ends: for b in 0..self.n {
            for len in 1..self.n {
                let span = Span::new((b + self.n - len) % self.n, b, self.n)?;
                if self.exact_span_exists(span) {
                    out.push(span);
                    continue 'ends;
                }
            }
            return Err(Error::UnsupportedPosition(b));
        }
        Ok(out)
    }

    /// Codewords with exact span `span`, in enumeration order.
    fn exact_span_codewords(&self, span: Span, budget: u64) -> Result<Vec<Vec<u8>>> {
        let sub = self.subcode_supported_on(&span.closed_positions());
        let words = sub.row_space_elements(budget)?;
        Ok(words
            .into_iter()
            .filter(|c| c[span.start()] != 0 && c[span.end()] != 0)
            .collect())
    }

    fn pick_generator(&self, span: Span, policy: GeneratorPolicy, budget: u64) -> Result<Vec<u8>> {
        let candidates = self.exact_span_codewords(span, budget)?;
        match policy {
            GeneratorPolicy::LexFirst => candidates
                .into_iter()
                .min_by_key(|c| cyclic_reading(c, span.start()))
                .ok_or(Error::UnsupportedPosition(span.start())),
            GeneratorPolicy::Normalized => {
                let first = candidates
                    .into_iter()
                    .next()
                    .ok_or(Error::UnsupportedPosition(span.start()))?;
                let inv = self.field.inv(first[span.start()]);
                Ok(first.iter().map(|&x| self.field.mul(inv, x)).collect())
            }
        }
    }

    pub fn characteristic_pair(&self, policy: GeneratorPolicy) -> Result<CharacteristicPair> {
        self.characteristic_pair_with(policy, &Budget::default())
    }

    /// Characteristic pair with rows ordered by span start point.
    pub fn characteristic_pair_with(
        &self,
        policy: GeneratorPolicy,
        budget: &Budget,
    ) -> Result<CharacteristicPair> {
        let spans = self.characteristic_spans()?;
        let rows: Vec<Vec<u8>> = spans
            .iter()
            .map(|&s| self.pick_generator(s, policy, budget.enumeration))
            .collect::<Result<_>>()?;
        let matrix = FieldMatrix::from_residue_rows(self.field, &rows, self.n);
        CharacteristicPair::from_parts(self.clone(), matrix, spans)
    }

    pub fn count_characteristic_matrices(&self, normalized: bool) -> Result<u128> {
        self.count_characteristic_matrices_with(normalized, &Budget::default())
    }

    /// Number of distinct characteristic matrices with this code's span
    /// list. The generator choices are independent across spans, so the
    /// count is a product of per-span counts.
    pub fn count_characteristic_matrices_with(
        &self,
        normalized: bool,
        budget: &Budget,
    ) -> Result<u128> {
        let p = self.field.modulus();
        if checked_pow(p, self.dim() as u32).filter(|&t| t <= budget.enumeration).is_none() {
            return Err(Error::TooLarge(format!("{p}^{} codewords", self.dim())));
        }
        let mut count: u128 = 1;
        for span in self.characteristic_spans()? {
            let mut c = self.exact_span_codewords(span, budget.enumeration)?.len() as u128;
            if normalized {
                debug_assert_eq!(c % (p as u128 - 1), 0);
                c /= p as u128 - 1;
            }
            count = count.checked_mul(c).ok_or_else(|| Error::TooLarge("count overflow".into()))?;
        }
        Ok(count)
    }
}

/// Coordinates of `c` read cyclically starting at `from`.
fn cyclic_reading(c: &[u8], from: usize) -> Vec<u8> {
    let n = c.len();
    (0..n).map(|d| c[(from + d) % n]).collect()
}

/// Samples a random `[n,k]` code over GF(p) whose code and dual code both
/// have full support; `None` if no sample passes within `tries` attempts.
pub fn random_full_support_code<R: Rng + ?Sized>(
    rng: &mut R,
    p: u64,
    n: usize,
    k: usize,
    tries: usize,
) -> Option<LinearCode> {
    let field = PrimeField::new(p).ok()?;
    for _ in 0..tries {
        let rows: Vec<Vec<i64>> = (0..k)
            .map(|_| (0..n).map(|_| rng.gen_range(0..p) as i64).collect())
            .collect();
        let Ok(code) = LinearCode::from_generator(field.modulus(), &rows) else {
            continue;
        };
        if code.dim() == k && code.has_full_support() && code.dual_has_full_support() {
            return Some(code);
        }
    }
    None
}

/// A characteristic matrix `X` with its span list.
///
/// Clauses checked at construction: the rows generate the code, each span
/// is a span of its row, start points and end points are each pairwise
/// distinct, and every time index is covered by exactly `n - k` spans.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CharacteristicPair {
    code: LinearCode,
    matrix: FieldMatrix,
    spans: SpanList,
}

impl CharacteristicPair {
    pub fn from_parts(code: LinearCode, matrix: FieldMatrix, spans: SpanList) -> Result<Self> {
        let n = code.len();
        if matrix.rows() != n || matrix.cols() != n || spans.len() != n {
            return Err(Error::NotCharacteristic(format!(
                "need an {n}x{n} matrix with {n} spans"
            )));
        }
        if spans.iter().any(|s| s.axis() != n) {
            return Err(Error::NotCharacteristic("span axis differs from code length".into()));
        }
        if !matrix.row_space_eq(code.generator()) {
            return Err(Error::NotCharacteristic("rows do not generate the code".into()));
        }
        for (l, span) in spans.iter().enumerate() {
            if !span.is_span_of(matrix.row(l)) {
                return Err(Error::NotCharacteristic(format!("{span} is not a span of row {l}")));
            }
        }
        let mut starts: Vec<usize> = spans.iter().map(Span::start).collect();
        let mut ends: Vec<usize> = spans.iter().map(Span::end).collect();
        starts.sort_unstable();
        starts.dedup();
        ends.sort_unstable();
        ends.dedup();
        if starts.len() != n || ends.len() != n {
            return Err(Error::NotCharacteristic("start or end points collide".into()));
        }
        let slack = n - code.dim();
        for j in 0..n {
            let cover = spans.iter().filter(|s| s.contains(j)).count();
            if cover != slack {
                return Err(Error::NotCharacteristic(format!(
                    "index {j} lies in {cover} spans, expected {slack}"
                )));
            }
        }
        Ok(Self { code, matrix, spans })
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn matrix(&self) -> &FieldMatrix {
        &self.matrix
    }

    pub fn spans(&self) -> &SpanList {
        &self.spans
    }

    pub fn len(&self) -> usize {
        self.spans.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spans.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.code.dim()
    }

    /// Rows permuted so that row `l` has span ending at `l`. The second
    /// component maps new positions back to original row indices.
    pub fn sorted_by_end(&self) -> (CharacteristicPair, Vec<usize>) {
        let n = self.len();
        let mut perm = vec![0usize; n];
        for (idx, span) in self.spans.iter().enumerate() {
            perm[span.end()] = idx;
        }
        let matrix = self.matrix.select_rows(&perm);
        let spans = perm.iter().map(|&i| self.spans[i]).collect();
        let sorted = Self { code: self.code.clone(), matrix, spans };
        (sorted, perm)
    }

    /// Rows permuted so that row `a` has span starting at `a`.
    pub fn sorted_by_start(&self) -> (CharacteristicPair, Vec<usize>) {
        let n = self.len();
        let mut perm = vec![0usize; n];
        for (idx, span) in self.spans.iter().enumerate() {
            perm[span.start()] = idx;
        }
        let matrix = self.matrix.select_rows(&perm);
        let spans = perm.iter().map(|&i| self.spans[i]).collect();
        let sorted = Self { code: self.code.clone(), matrix, spans };
        (sorted, perm)
    }
}
