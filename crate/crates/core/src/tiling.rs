//! Gap sequences, parts, interval tilings, and the tiling verifier.
//!
//! The verifier is the single trusted check in the crate: every tiling the
//! construction emits, and every tiling the search oracle finds, is passed
//! through [`verify_tiling`] before it is handed to a caller.

use std::fmt;

use crate::error::{Error, Result};

/// A nondecreasing sequence of positive gaps.
///
/// Any permutation of the same gaps describes the same sequence, so the
/// constructor sorts its input.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GapSequence(Vec<i64>);

impl GapSequence {
    pub fn new(gaps: impl Into<Vec<i64>>) -> Result<Self> {
        let mut gaps = gaps.into();
        if gaps.is_empty() {
            return Err(Error::InvalidInput("gap sequence is empty".into()));
        }
        if let Some(g) = gaps.iter().find(|&&g| g < 1) {
            return Err(Error::InvalidInput(format!("gap {g} is not positive")));
        }
        gaps.sort_unstable();
        Ok(GapSequence(gaps))
    }

    pub fn gaps(&self) -> &[i64] {
        &self.0
    }

    /// Number of elements in a part with this gap sequence.
    pub fn part_size(&self) -> usize {
        self.0.len() + 1
    }

    /// Distance from the least to the greatest element of a part.
    pub fn span(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for GapSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// A finite set of integers, stored strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Part(Vec<i64>);

impl Part {
    /// Builds a part from elements in any order. Repeated elements are rejected.
    pub fn new(elements: impl Into<Vec<i64>>) -> Result<Self> {
        let mut elements = elements.into();
        elements.sort_unstable();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidPart(format!("element {} repeated", w[0])));
        }
        Ok(Part(elements))
    }

    pub fn elements(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min(&self) -> Option<i64> {
        self.0.first().copied()
    }

    /// Returns the part moved by `offset`.
    pub fn shifted(&self, offset: i64) -> Part {
        Part(self.0.iter().map(|x| x + offset).collect())
    }
}

/// Sorted multiset of consecutive differences of `part`.
pub fn gap_multiset(part: &Part) -> Result<Vec<i64>> {
    if part.len() < 2 {
        return Err(Error::InvalidPart(format!(
            "a part needs at least 2 elements, got {}",
            part.len()
        )));
    }
    let mut gaps: Vec<i64> = part.0.windows(2).map(|w| w[1] - w[0]).collect();
    gaps.sort_unstable();
    Ok(gaps)
}

/// A candidate partition of the interval `lo..=hi` into parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tiling {
    pub lo: i64,
    pub hi: i64,
    pub parts: Vec<Part>,
}

impl Tiling {
    pub fn new(lo: i64, hi: i64, mut parts: Vec<Part>) -> Self {
        parts.sort_unstable_by_key(|p| p.min());
        Tiling { lo, hi, parts }
    }

    /// Number of integers in the interval, or `None` if `hi < lo`.
    pub fn interval_len(&self) -> Option<u64> {
        let len = i128::from(self.hi) - i128::from(self.lo) + 1;
        u64::try_from(len).ok().filter(|&n| n > 0)
    }
}

/// Outcome of a verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<R> {
    Accept,
    Reject(R),
}

impl<R> Verdict<R> {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }

    pub fn rejection(&self) -> Option<&R> {
        match self {
            Verdict::Accept => None,
            Verdict::Reject(r) => Some(r),
        }
    }
}

/// The tiling conditions, in the order they are checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TilingViolation {
    Disjointness,
    Coverage,
    GapMultiset,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TilingRejection {
    pub violation: TilingViolation,
    pub witness: i64,
    pub detail: String,
}

impl fmt::Display for TilingRejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.violation {
            TilingViolation::Disjointness => "disjointness",
            TilingViolation::Coverage => "coverage",
            TilingViolation::GapMultiset => "gap multiset",
        };
        write!(f, "{what} violated at {}: {}", self.witness, self.detail)
    }
}

fn reject(violation: TilingViolation, witness: i64, detail: String) -> Verdict<TilingRejection> {
    Verdict::Reject(TilingRejection {
        violation,
        witness,
        detail,
    })
}

/// Checks that `tiling` partitions its interval into parts with gap multiset `gaps`.
///
/// Conditions are checked in the order disjointness, coverage, gap multiset,
/// and the first failure is reported with a witness element.
pub fn verify_tiling(tiling: &Tiling, gaps: &GapSequence) -> Verdict<TilingRejection> {
    let mut all: Vec<i64> = tiling.parts.iter().flat_map(|p| p.0.iter().copied()).collect();
    all.sort_unstable();

    if let Some(w) = all.windows(2).find(|w| w[0] == w[1]) {
        return reject(
            TilingViolation::Disjointness,
            w[0],
            format!("{} belongs to more than one part", w[0]),
        );
    }

    let Some(len) = tiling.interval_len() else {
        return reject(
            TilingViolation::Coverage,
            tiling.lo,
            format!("empty interval [{}, {}]", tiling.lo, tiling.hi),
        );
    };
    // Length is compared before any element arithmetic so that huge
    // intervals cannot overflow the walk below.
    for (i, &x) in all.iter().enumerate() {
        if i as u64 >= len {
            return reject(TilingViolation::Coverage, x, format!("{x} lies outside the interval"));
        }
        let expected = tiling.lo + i as i64;
        if x < expected {
            return reject(TilingViolation::Coverage, x, format!("{x} lies outside the interval"));
        }
        if x > expected {
            return reject(
                TilingViolation::Coverage,
                expected,
                format!("{expected} is not covered"),
            );
        }
    }
    if (all.len() as u64) < len {
        let hole = tiling.lo + all.len() as i64;
        return reject(TilingViolation::Coverage, hole, format!("{hole} is not covered"));
    }

    for part in &tiling.parts {
        let witness = part.min().unwrap_or(tiling.lo);
        match gap_multiset(part) {
            Ok(g) if g == gaps.0 => {}
            Ok(g) => {
                return reject(
                    TilingViolation::GapMultiset,
                    witness,
                    format!("part starting at {witness} has gaps {g:?}, expected {:?}", gaps.0),
                )
            }
            Err(e) => return reject(TilingViolation::GapMultiset, witness, e.to_string()),
        }
    }
    Verdict::Accept
}
