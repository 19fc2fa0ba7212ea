//! Classes of Severi-Brauer schemes.
//!
//! For a Brauer class of index `r` on a base `S`, every Severi-Brauer scheme
//! `P(E)` with `rk E = d` has class `P * (1 + L^r + L^2r + ... + L^{d-r})`
//! for a reduced class `P` depending only on the Brauer class and `S`. A
//! short exact sequence `0 -> E1 -> E2 -> E3 -> 0` of twisted bundles of
//! ranks `r1, r3` gives `[P(E2)] = [P(E1)] + L^r1 [P(E3)]`.
//!
//! The Brauer class itself is not modelled; callers supply `(P, r, d)`.

use thiserror::Error;

use crate::ring::{geometric_ladder, RingElement, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SbError {
    #[error("index {r} does not divide rank {d}")]
    IndexMismatch { r: u32, d: u32 },
    #[error("{0} is not divisible by the index ladder")]
    NotDivisible(String),
}

impl SbError {
    pub fn name(&self) -> &'static str {
        match self {
            SbError::IndexMismatch { .. } => "IndexMismatch",
            SbError::NotDivisible(_) => "NotDivisible",
        }
    }
}

/// Reduced class, index and rank of a Severi-Brauer scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SbClassData {
    reduced: RingElement,
    index: u32,
    rank: u32,
}

impl SbClassData {
    pub fn new(reduced: RingElement, index: u32, rank: u32) -> Result<Self, SbError> {
        check_index(index, rank)?;
        Ok(SbClassData { reduced, index, rank })
    }

    pub fn reduced(&self) -> &RingElement {
        &self.reduced
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// Relative dimension of the scheme over its base.
    pub fn fiber_dimension(&self) -> u32 {
        self.rank - 1
    }
}

fn check_index(r: u32, d: u32) -> Result<(), SbError> {
    if r == 0 || d == 0 || !d.is_multiple_of(r) {
        return Err(SbError::IndexMismatch { r, d });
    }
    Ok(())
}

/// `1 + L^r + ... + L^{d-r}`.
pub fn index_ladder(r: u32, d: u32) -> Result<RingElement, SbError> {
    check_index(r, d)?;
    Ok(geometric_ladder(r, d / r))
}

/// `P * (1 + L^r + ... + L^{d-r})`.
pub fn sb_isotypic_class(c: &SbClassData) -> RingElement {
    c.reduced() * &geometric_ladder(c.index, c.rank / c.index)
}

/// Recovers `P` from `[P(E)] = P * (1 + L^r + ... + L^{d-r})` by exact
/// division in the `L`-grading.
pub fn sb_reduced_class(full: &RingElement, r: u32, d: u32) -> Result<RingElement, SbError> {
    let ladder = index_ladder(r, d)?;
    full.div_exact_lefschetz(&ladder).map_err(|e| match e {
        RingError::NotDivisible { dividend, .. } => SbError::NotDivisible(dividend),
        other => unreachable!("ladder is monic in L: {other}"),
    })
}

/// Class of the middle term of a short exact sequence, and whether the two
/// orders of the filtration agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationClass {
    pub class: RingElement,
    pub symmetric: bool,
}

/// `c1 + L^r1 c3`, flagging whether it equals `c3 + L^r3 c1`.
///
/// The two expressions agree for genuine twisted bundles; for arbitrary
/// symbolic inputs the flag is a consistency check.
pub fn sb_filtration_class(c1: &RingElement, r1: u32, c3: &RingElement, r3: u32) -> FiltrationClass {
    let forward = c1 + &c3.shift_lefschetz(r1);
    let backward = c3 + &c1.shift_lefschetz(r3);
    FiltrationClass {
        symmetric: forward == backward,
        class: forward,
    }
}
