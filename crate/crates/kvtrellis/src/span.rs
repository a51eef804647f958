//! Circular half-open intervals on the time axis {0, ..., n-1}.
//!
//! A span `(a,b]` is the set `[a,b] \ {a}`, wrapping around when `a > b`.
//! Spans carry their own axis length `n`, so accidentally mixing spans of
//! codes with different lengths fails loudly instead of silently wrapping.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Span {
    a: usize,
    b: usize,
    n: usize,
}

/// One span per matrix row.
pub type SpanList = Vec<Span>;

impl Span {
    pub fn new(a: usize, b: usize, n: usize) -> Result<Self> {
        if n == 0 || a >= n || b >= n {
            return Err(Error::Dimension(format!("span ({a},{b}] out of range for axis {n}")));
        }
        Ok(Self { a, b, n })
    }

    pub fn start(&self) -> usize {
        self.a
    }

    pub fn end(&self) -> usize {
        self.b
    }

    pub fn axis(&self) -> usize {
        self.n
    }

    /// `(a,a]` is the empty interval.
    pub fn is_empty(&self) -> bool {
        self.a == self.b
    }

    pub fn is_conventional(&self) -> bool {
        self.a <= self.b
    }

    /// Membership of `j` in the half-open interval `(a,b]`.
    pub fn contains(&self, j: usize) -> bool {
        debug_assert!(j < self.n);
        if self.a == self.b {
            return false;
        }
        if self.a < self.b {
            self.a < j && j <= self.b
        } else {
            j > self.a || j <= self.b
        }
    }

    /// Membership of `j` in the closed interval `[a,b]`.
    pub fn closed_contains(&self, j: usize) -> bool {
        j == self.a || self.contains(j)
    }

    /// Number of elements of `(a,b]`.
    pub fn len(&self) -> usize {
        (self.b + self.n - self.a) % self.n
    }

    /// The complement `I \ (a,b] = (b,a]`, defined for nonempty spans.
    pub fn complement(&self) -> Result<Span> {
        if self.is_empty() {
            return Err(Error::EmptySpan(self.a));
        }
        Ok(Span { a: self.b, b: self.a, n: self.n })
    }

    /// The reversed span `(b,a]`. Same mapping as [`Span::complement`] but
    /// total: the empty span is its own reversal.
    pub fn reverse(&self) -> Span {
        Span { a: self.b, b: self.a, n: self.n }
    }

    /// Span translated by a cyclic left shift of `steps` positions.
    pub fn shifted_left(&self, steps: usize) -> Span {
        let s = steps % self.n;
        Span {
            a: (self.a + self.n - s) % self.n,
            b: (self.b + self.n - s) % self.n,
            n: self.n,
        }
    }

    /// Positions of `(a,b]` in cyclic order starting after `a`.
    pub fn positions(&self) -> Vec<usize> {
        (1..=self.len()).map(|d| (self.a + d) % self.n).collect()
    }

    /// Positions of `[a,b]` in cyclic order starting at `a`.
    pub fn closed_positions(&self) -> Vec<usize> {
        let mut out = vec![self.a];
        out.extend(self.positions());
        out
    }

    /// Whether `(a,b]` is a span of the vector `c`: the endpoints carry
    /// nonzero entries and `[a,b]` contains the support.
    pub fn is_span_of(&self, c: &[u8]) -> bool {
        if c.len() != self.n || c[self.a] == 0 || c[self.b] == 0 {
            return false;
        }
        c.iter().enumerate().all(|(j, &cj)| cj == 0 || self.closed_contains(j))
    }

    pub fn display_with_axis(&self) -> String {
        format!("({},{}]/{}", self.a, self.b, self.n)
    }

    /// Parses `(a,b]` with the axis length given separately.
    pub fn parse(text: &str, n: usize) -> Result<Span> {
        let t = text.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("span must look like (a,b]: {t}")))?;
        let mut parts = inner.splitn(2, ',');
        let a = parts
            .next()
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad span start in {t}")))?;
        let b = parts
            .next()
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad span end in {t}")))?;
        Span::new(a, b, n)
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}]", self.a, self.b)
    }
}

impl fmt::Debug for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with_axis())
    }
}

/// All spans of a nonzero vector, sorted by (start, end).
pub fn spans_of_vector(c: &[u8]) -> Result<Vec<Span>> {
    let n = c.len();
    if c.iter().all(|&x| x == 0) {
        return Err(Error::ZeroVector);
    }
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let s = Span { a, b, n };
            if s.is_span_of(c) {
                out.push(s);
            }
        }
    }
    Ok(out)
}

/// Parses a comma-separated span list such as `(1,3],(3,0],(2,1]`.
pub fn parse_span_list(text: &str, n: usize) -> Result<SpanList> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let close = rest
            .find(']')
            .ok_or_else(|| Error::Parse(format!("unterminated span in {text}")))?;
        out.push(Span::parse(&rest[..=close], n)?);
        rest = rest[close + 1..].trim_start_matches(',').trim();
    }
    if out.is_empty() {
        return Err(Error::Parse("empty span list".into()));
    }
    Ok(out)
}
