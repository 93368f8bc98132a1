//! Ordered sequences: membership in `os^k`, the interleaving relation `≼`,
//! the boundary maps `f` and `g`, and the cyclic shift `σ`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kupisch::KupischSeries;

pub type Coord = i64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdSeqError {
    #[error("sequences of different lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("canonicalization needs a cyclic series")]
    AcyclicContext,
}

/// A tuple of integers, intended to be strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OrdSeq(Vec<Coord>);

impl OrdSeq {
    pub fn new(coords: Vec<Coord>) -> Self {
        OrdSeq(coords)
    }

    pub fn coords(&self) -> &[Coord] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Coord {
        self.0[0]
    }

    pub fn last(&self) -> Coord {
        self.0[self.0.len() - 1]
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }

    /// Adds `t` to every coordinate.
    pub fn translate(&self, t: Coord) -> OrdSeq {
        OrdSeq(self.0.iter().map(|c| c + t).collect())
    }

    /// Adds one to coordinate `i` (0-based), i.e. `x + e_{i+1}`.
    pub fn bump(&self, i: usize) -> OrdSeq {
        let mut v = self.0.clone();
        v[i] += 1;
        OrdSeq(v)
    }
}

impl From<Vec<Coord>> for OrdSeq {
    fn from(v: Vec<Coord>) -> Self {
        OrdSeq(v)
    }
}

impl fmt::Display for OrdSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Membership `x ∈ os^k`: strictly increasing and `x_k − x_1 + 1 ≤ ℓ_{x_k−k+1} + k − 1`.
pub fn member(x: &OrdSeq, series: &KupischSeries) -> bool {
    let k = x.len() as Coord;
    if k == 0 || !x.is_strictly_increasing() {
        return false;
    }
    let ell = series.ell(x.last() - k + 1);
    ell >= 1 && x.last() - x.first() < ell + k - 1
}

/// `x ≼ y`: `x_1 ≤ y_1 < x_2 ≤ y_2 < … < x_k ≤ y_k`.
pub fn precedes(x: &OrdSeq, y: &OrdSeq) -> Result<bool, OrdSeqError> {
    if x.len() != y.len() {
        return Err(OrdSeqError::LengthMismatch(x.len(), y.len()));
    }
    Ok(precedes_unchecked(x.coords(), y.coords()))
}

pub(crate) fn precedes_unchecked(x: &[Coord], y: &[Coord]) -> bool {
    let k = x.len();
    (0..k).all(|i| x[i] <= y[i] && (i + 1 == k || y[i] < x[i + 1]))
}

/// Every member of `os^k`: lexicographic for acyclic series, one representative
/// per σ-orbit (with `x_1 ∈ [1, m]`) for cyclic series.
pub fn enumerate(series: &KupischSeries, k: usize) -> Vec<OrdSeq> {
    if k == 0 {
        return Vec::new();
    }
    let m = series.width() as Coord;
    let ell = series.ell_max() as Coord;
    let k_c = k as Coord;
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(k);
    for x1 in 1..=m {
        // x_k − x_1 + 1 ≤ ℓ + k − 1 bounds the span.
        let max_last = x1 + ell + k_c - 2;
        buf.clear();
        buf.push(x1);
        extend(&mut buf, k, max_last, series, &mut out);
    }
    out.sort();
    out
}

fn extend(buf: &mut Vec<Coord>, k: usize, max_last: Coord, series: &KupischSeries, out: &mut Vec<OrdSeq>) {
    if buf.len() == k {
        let x = OrdSeq(buf.clone());
        if member(&x, series) {
            out.push(x);
        }
        return;
    }
    let remaining = (k - buf.len()) as Coord;
    let lo = buf[buf.len() - 1] + 1;
    for c in lo..=max_last - remaining + 1 {
        buf.push(c);
        extend(buf, k, max_last, series, out);
        buf.pop();
    }
}

/// `f(i) = min{x_1 : (x_1, …, i) ∈ os^{d+1}}`.
pub fn f_map(i: Coord, series: &KupischSeries, d: usize) -> Option<Coord> {
    let dd = d as Coord;
    let ell = series.ell(i - dd);
    if ell < 1 {
        return None;
    }
    // Membership only depends on the first and last coordinates once d
    // intermediate values fit, so the minimum is attained at the span bound.
    let f = i - ell - dd + 1;
    if series.is_cyclic() {
        Some(f)
    } else {
        Some(f.max(1))
    }
}

/// `g(i) = max{x_{d+1} : (i, …, x_{d+1}) ∈ os^{d+1}}`.
pub fn g_map(i: Coord, series: &KupischSeries, d: usize) -> Option<Coord> {
    let dd = d as Coord;
    let ell = series.ell_max() as Coord;
    let lo = i + dd;
    let hi = i + ell + dd - 1;
    (lo..=hi).rev().find(|&y| {
        let e = series.ell(y - dd);
        e >= 1 && y - i < e + dd && (series.is_cyclic() || i >= 1)
    })
}

/// Cyclic canonical form: representative with `x_1 ∈ [1, m]` and the exponent `j`
/// such that `x = σ^j(rep)`.
pub fn canonicalize(x: &OrdSeq, series: &KupischSeries) -> Result<(OrdSeq, Coord), OrdSeqError> {
    if !series.is_cyclic() {
        return Err(OrdSeqError::AcyclicContext);
    }
    let m = series.width() as Coord;
    let j = (x.first() - 1).div_euclid(m);
    Ok((x.translate(-j * m), j))
}

/// `σ^j(x) = x + j·(m, …, m)`.
pub fn shift(x: &OrdSeq, series: &KupischSeries, j: Coord) -> OrdSeq {
    x.translate(j * series.width() as Coord)
}
