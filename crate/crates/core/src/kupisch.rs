//! Kupisch series: validation, shape classification, gluing and degluing.
//!
//! A Kupisch series `(ℓ_1, …, ℓ_m)` determines a d-Nakayama algebra for every
//! `d ≥ 1`. Acyclic series start with `ℓ_1 = 1`; cyclic series have every
//! entry at least 2 and are stored in their lexicographically smallest
//! rotation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ordseq::OrdSeq;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KupischError {
    #[error("empty Kupisch series")]
    Empty,
    #[error("growth violation at position {0}: entry exceeds predecessor + 1")]
    GrowthViolation(usize),
    #[error("acyclic series is not connected (ℓ_1 must be 1 and later entries at least 2)")]
    NotConnected,
    #[error("cyclic series entry at position {0} is smaller than 2")]
    EntryTooSmall(usize),
    #[error("operation needs an acyclic series")]
    CyclicInput,
    #[error("operation needs a cyclic series")]
    AcyclicInput,
    #[error("series has no self-deglue point")]
    NoSelfDegluePoint,
    #[error("series is not piecewise homogeneous (obstruction window at position {0:?})")]
    NotDecomposable(Option<usize>),
    #[error("cannot parse Kupisch series: {0}")]
    Parse(String),
}

/// A validated Kupisch series.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSeries", into = "RawSeries")]
pub struct KupischSeries {
    entries: Vec<u32>,
    cyclic: bool,
}

#[derive(Serialize, Deserialize)]
struct RawSeries {
    series: Vec<u32>,
    cyclic: bool,
}

impl TryFrom<RawSeries> for KupischSeries {
    type Error = KupischError;
    fn try_from(raw: RawSeries) -> Result<Self, Self::Error> {
        KupischSeries::new(raw.series, raw.cyclic)
    }
}

impl From<KupischSeries> for RawSeries {
    fn from(s: KupischSeries) -> Self {
        RawSeries { series: s.entries, cyclic: s.cyclic }
    }
}

/// Validates `entries` as a Kupisch series; cyclic input is rotated into canonical form.
pub fn validate(entries: &[u32], cyclic: bool) -> Result<KupischSeries, KupischError> {
    KupischSeries::new(entries.to_vec(), cyclic)
}

impl KupischSeries {
    pub fn new(entries: Vec<u32>, cyclic: bool) -> Result<Self, KupischError> {
        let m = entries.len();
        if m == 0 {
            return Err(KupischError::Empty);
        }
        if cyclic {
            if let Some(i) = entries.iter().position(|&e| e < 2) {
                return Err(KupischError::EntryTooSmall(i + 1));
            }
            for i in 0..m {
                let prev = entries[(i + m - 1) % m];
                if entries[i] > prev + 1 {
                    return Err(KupischError::GrowthViolation(i + 1));
                }
            }
            let entries = minimal_rotation(&entries);
            Ok(KupischSeries { entries, cyclic })
        } else {
            if entries[0] != 1 {
                return Err(KupischError::NotConnected);
            }
            for i in 1..m {
                if entries[i] > entries[i - 1] + 1 {
                    return Err(KupischError::GrowthViolation(i + 1));
                }
                if entries[i] < 2 {
                    return Err(KupischError::NotConnected);
                }
            }
            Ok(KupischSeries { entries, cyclic })
        }
    }

    /// The homogeneous acyclic series `A_{ℓ,m} = (1, 2, …, ℓ, ℓ, …, ℓ)` of width `m`.
    pub fn acyclic_homogeneous(ell: u32, m: usize) -> Result<Self, KupischError> {
        let entries = (1..=m as u32).map(|i| i.min(ell)).collect();
        Self::new(entries, false)
    }

    /// The homogeneous cyclic series `(ℓ, …, ℓ)` of width `m`.
    pub fn cyclic_homogeneous(ell: u32, m: usize) -> Result<Self, KupischError> {
        Self::new(vec![ell; m], true)
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic
    }

    pub fn width(&self) -> usize {
        self.entries.len()
    }

    /// Largest entry ℓ.
    pub fn ell_max(&self) -> u32 {
        *self.entries.iter().max().expect("nonempty")
    }

    /// ℓ_i for any integer i (1-based): zero outside `[1, m]` when acyclic, periodic when cyclic.
    pub fn ell(&self, i: i64) -> i64 {
        let m = self.entries.len() as i64;
        if self.cyclic {
            self.entries[(i - 1).rem_euclid(m) as usize] as i64
        } else if (1..=m).contains(&i) {
            self.entries[(i - 1) as usize] as i64
        } else {
            0
        }
    }

    /// True for `(1,2,…,ℓ,ℓ,…,ℓ)` (acyclic) or a constant series (cyclic).
    pub fn is_homogeneous(&self) -> bool {
        let ell = self.ell_max();
        if self.cyclic {
            self.entries.iter().all(|&e| e == ell)
        } else {
            self.entries.iter().enumerate().all(|(i, &e)| e == (i as u32 + 1).min(ell))
        }
    }

    /// Self-injective d-Nakayama algebras are exactly the cyclic homogeneous ones.
    pub fn is_self_injective(&self) -> bool {
        self.cyclic && self.is_homogeneous()
    }
}

fn minimal_rotation(entries: &[u32]) -> Vec<u32> {
    let m = entries.len();
    (0..m).map(|r| entries[r..].iter().chain(&entries[..r]).copied().collect::<Vec<_>>()).min().expect("nonempty")
}

impl fmt::Display for KupischSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cyclic {
            write!(f, "~")?;
        }
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for KupischSeries {
    type Err = KupischError;

    /// Parses `"1,2,3"` (acyclic) or `"~5,5,5"` (cyclic).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (cyclic, body) = match s.strip_prefix('~') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let entries = body
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|e| KupischError::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(entries, cyclic)
    }
}

/// Sink-source gluing `a Δ b`: `(1, …, ℓ_m)` followed by `(2, …, ℓ_n)`.
pub fn glue(a: &KupischSeries, b: &KupischSeries) -> Result<KupischSeries, KupischError> {
    if a.cyclic || b.cyclic {
        return Err(KupischError::CyclicInput);
    }
    let mut entries = a.entries.clone();
    entries.extend_from_slice(&b.entries[1..]);
    KupischSeries::new(entries, false)
}

/// Which of the two shape obstructions matched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ObstructionPattern {
    /// `2 < ℓ_{j-1} = ℓ_j < ℓ_{j+1}`.
    Plateau,
    /// `ℓ_j > ℓ_{j+1} > 2`.
    Descent,
}

/// First window matching an obstruction pattern.
///
/// The returned position is the 1-based index of the first entry of the window
/// (`ℓ_{j-1}` for [`ObstructionPattern::Plateau`], `ℓ_j` for
/// [`ObstructionPattern::Descent`]). Cyclic series are scanned with wrap-around.
pub fn find_obstruction(s: &KupischSeries) -> Option<(usize, ObstructionPattern)> {
    let m = s.width();
    let windows = if s.cyclic { m } else { m.saturating_sub(1) };
    for start in 0..windows {
        let a = s.ell(start as i64 + 1);
        let b = s.ell(start as i64 + 2);
        if b > 0 && a > b && b > 2 {
            return Some((start + 1, ObstructionPattern::Descent));
        }
        let c = s.ell(start as i64 + 3);
        let in_range = s.cyclic || start + 2 < m;
        if in_range && a > 2 && a == b && b < c {
            return Some((start + 1, ObstructionPattern::Plateau));
        }
    }
    None
}

/// Result of [`deglue_all`]: homogeneous pieces and the bridge simples joining them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Degluing {
    pub pieces: Vec<KupischSeries>,
    /// Bridge `S_i = (1+Σm_k, …, d+1+Σm_k)` between piece `i` and piece `i+1`.
    pub bridges: Vec<OrdSeq>,
}

/// Positions `p` (1-based) after which the series splits.
///
/// A split after `p` needs `ℓ_{p+1} = 2` and `p ≥ 2`, and is taken when either
/// `ℓ_p > 2` (a run of twos begins after a higher entry) or `ℓ_{p+2} > 2`
/// (the last two of a run starts a rising piece). Runs of twos stay whole.
fn deglue_points(s: &KupischSeries) -> Vec<usize> {
    let m = s.width() as i64;
    (2..m)
        .filter(|&p| s.ell(p + 1) == 2 && (s.ell(p) > 2 || (p + 2 <= m && s.ell(p + 2) > 2)))
        .map(|p| p as usize)
        .collect()
}

/// Splits an acyclic series into homogeneous pieces at every deglue point.
///
/// With `finer = Some(n)`, pieces `(1,2,…,2)` whose width minus one is divisible
/// by `n` are further cut into pieces of width `n + 1`.
pub fn deglue_all(s: &KupischSeries, d: usize, finer: Option<usize>) -> Result<Degluing, KupischError> {
    if s.cyclic {
        return Err(KupischError::CyclicInput);
    }
    if let Some((j, _)) = find_obstruction(s) {
        return Err(KupischError::NotDecomposable(Some(j)));
    }
    let mut cuts = deglue_points(s);
    cuts.push(s.width());
    let mut pieces = Vec::new();
    let mut start = 1usize;
    for &cut in &cuts {
        let mut entries = vec![1u32];
        entries.extend_from_slice(&s.entries[start..cut]);
        let piece = KupischSeries::new(entries, false)?;
        if !piece.is_homogeneous() {
            return Err(KupischError::NotDecomposable(None));
        }
        match finer {
            Some(n) if n >= 1 && piece.ell_max() == 2 && (piece.width() - 1) % n == 0 && piece.width() - 1 > n => {
                for _ in 0..(piece.width() - 1) / n {
                    pieces.push(KupischSeries::acyclic_homogeneous(2, n + 1)?);
                }
            }
            _ => pieces.push(piece),
        }
        start = cut;
    }
    let mut bridges = Vec::new();
    let mut offset = 0i64;
    for piece in &pieces[..pieces.len() - 1] {
        offset += piece.width() as i64 - 1;
        bridges.push(OrdSeq::new((0..=d as i64).map(|k| 1 + offset + k).collect()));
    }
    Ok(Degluing { pieces, bridges })
}

/// Self-gluing `(1, ℓ_2, …, ℓ_m) ↦ (ℓ_m, ℓ_2, …, ℓ_{m-1})` (cyclic).
pub fn self_glue(s: &KupischSeries) -> Result<KupischSeries, KupischError> {
    if s.cyclic {
        return Err(KupischError::CyclicInput);
    }
    let m = s.width();
    if m < 2 {
        return Err(KupischError::NotConnected);
    }
    let mut entries = vec![s.entries[m - 1]];
    entries.extend_from_slice(&s.entries[1..m - 1]);
    KupischSeries::new(entries, true)
}

/// Positions `p` (1-based, canonical rotation) with `ℓ_p = 2` and `ℓ_{p-1} ≠ 2`.
pub fn self_deglue_points(s: &KupischSeries) -> Vec<usize> {
    let m = s.width() as i64;
    (1..=m).filter(|&p| s.ell(p) == 2 && s.ell(p - 1) != 2).map(|p| p as usize).collect()
}

/// Self-degluing at point `p`: `(1, ℓ_p, ℓ_{p+1}, …, ℓ_{p-1})`, of width `m + 1`.
pub fn self_deglue_at(s: &KupischSeries, p: usize) -> Result<KupischSeries, KupischError> {
    if !s.cyclic {
        return Err(KupischError::AcyclicInput);
    }
    if !self_deglue_points(s).contains(&p) {
        return Err(KupischError::NoSelfDegluePoint);
    }
    let m = s.width() as i64;
    let mut entries = vec![1u32];
    entries.extend((0..m).map(|k| s.ell(p as i64 + k) as u32));
    KupischSeries::new(entries, false)
}

/// Self-degluing at the first self-deglue point of the canonical rotation.
pub fn self_deglue(s: &KupischSeries) -> Result<KupischSeries, KupischError> {
    if !s.cyclic {
        return Err(KupischError::AcyclicInput);
    }
    let p = *self_deglue_points(s).first().ok_or(KupischError::NoSelfDegluePoint)?;
    self_deglue_at(s, p)
}

/// Shape classification of a series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeriesShape {
    AcyclicHomogeneous { ell: u32, m: usize },
    CyclicHomogeneous { ell: u32, m: usize },
    AcyclicDecomposable { pieces: Vec<KupischSeries> },
    CyclicDecomposable { pieces: Vec<KupischSeries> },
    Obstructed { j: usize, pattern: ObstructionPattern },
}

pub fn classify_shape(s: &KupischSeries) -> SeriesShape {
    if let Some((j, pattern)) = find_obstruction(s) {
        return SeriesShape::Obstructed { j, pattern };
    }
    let (ell, m) = (s.ell_max(), s.width());
    if s.is_homogeneous() {
        return if s.cyclic {
            SeriesShape::CyclicHomogeneous { ell, m }
        } else {
            SeriesShape::AcyclicHomogeneous { ell, m }
        };
    }
    // Without obstructions, every non-homogeneous series decomposes.
    if s.cyclic {
        let opened = self_deglue(s).expect("unobstructed non-homogeneous cyclic series has a self-deglue point");
        let pieces = deglue_all(&opened, 1, None).expect("unobstructed series decomposes").pieces;
        SeriesShape::CyclicDecomposable { pieces }
    } else {
        let pieces = deglue_all(s, 1, None).expect("unobstructed series decomposes").pieces;
        SeriesShape::AcyclicDecomposable { pieces }
    }
}
