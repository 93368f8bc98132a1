//! Combinatorial model of the distinguished d𝐙-cluster-tilting subcategory `M`
//! of a d-Nakayama algebra: the interval modules `M(x)`, `x ∈ os^{d+1}`.
//!
//! Modules are right modules: `M(x)` has its top at the vertex
//! `(x_2−1, …, x_{d+1}−1)` and its socle at `(x_1, …, x_d)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kupisch::KupischSeries;
use crate::ordseq::{self, precedes_unchecked, Coord, OrdSeq};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModcatError {
    #[error("d must be at least 1")]
    ZeroD,
    #[error("{0} is not a module index of this algebra")]
    InvalidIndex(OrdSeq),
    #[error("M{0} is projective")]
    IsProjective(OrdSeq),
}

/// Result of a stable operator: either a module index or zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StableIndex {
    Zero,
    Module(OrdSeq),
}

impl StableIndex {
    pub fn module(&self) -> Option<&OrdSeq> {
        match self {
            StableIndex::Zero => None,
            StableIndex::Module(x) => Some(x),
        }
    }

    pub fn into_module(self) -> Option<OrdSeq> {
        match self {
            StableIndex::Zero => None,
            StableIndex::Module(x) => Some(x),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, StableIndex::Zero)
    }
}

/// The d-Nakayama algebra `A^d_ℓ` together with its subcategory `M`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DNakayama {
    series: KupischSeries,
    d: usize,
}

impl DNakayama {
    pub fn new(series: KupischSeries, d: usize) -> Result<Self, ModcatError> {
        if d == 0 {
            return Err(ModcatError::ZeroD);
        }
        Ok(DNakayama { series, d })
    }

    pub fn series(&self) -> &KupischSeries {
        &self.series
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn is_cyclic(&self) -> bool {
        self.series.is_cyclic()
    }

    /// Width `m` of the series.
    pub fn m(&self) -> Coord {
        self.series.width() as Coord
    }

    /// Canonical representative (identity for acyclic series).
    pub fn canon(&self, x: &OrdSeq) -> OrdSeq {
        if self.is_cyclic() {
            ordseq::canonicalize(x, &self.series).expect("cyclic").0
        } else {
            x.clone()
        }
    }

    /// Checks that `x` is a module index and returns its canonical form.
    pub fn index(&self, x: &OrdSeq) -> Result<OrdSeq, ModcatError> {
        if x.len() == self.d + 1 && ordseq::member(x, &self.series) {
            Ok(self.canon(x))
        } else {
            Err(ModcatError::InvalidIndex(x.clone()))
        }
    }

    pub fn is_module(&self, x: &OrdSeq) -> bool {
        x.len() == self.d + 1 && ordseq::member(x, &self.series)
    }

    /// All indecomposables of `M`, in lexicographic order.
    pub fn modules(&self) -> Vec<OrdSeq> {
        ordseq::enumerate(&self.series, self.d + 1)
    }

    /// Vertices of the quiver `Q^d`.
    pub fn vertices(&self) -> Vec<OrdSeq> {
        ordseq::enumerate(&self.series, self.d)
    }

    pub fn f(&self, i: Coord) -> Option<Coord> {
        ordseq::f_map(i, &self.series, self.d)
    }

    pub fn g(&self, i: Coord) -> Option<Coord> {
        ordseq::g_map(i, &self.series, self.d)
    }

    pub fn is_projective(&self, x: &OrdSeq) -> bool {
        self.f(x.last()) == Some(x.first())
    }

    pub fn is_injective(&self, x: &OrdSeq) -> bool {
        self.g(x.first()) == Some(x.last())
    }

    pub fn is_simple(&self, x: &OrdSeq) -> bool {
        x.coords().windows(2).all(|w| w[1] == w[0] + 1)
    }

    pub fn projectives(&self) -> Vec<OrdSeq> {
        self.modules().into_iter().filter(|x| self.is_projective(x)).collect()
    }

    pub fn injectives(&self) -> Vec<OrdSeq> {
        self.modules().into_iter().filter(|x| self.is_injective(x)).collect()
    }

    /// Top vertex `(x_2−1, …, x_{d+1}−1)`, canonicalized.
    pub fn top_vertex(&self, x: &OrdSeq) -> OrdSeq {
        let c = x.coords();
        let v = OrdSeq::new(c[1..].iter().map(|t| t - 1).collect());
        if self.is_cyclic() {
            ordseq::canonicalize(&v, &self.series).expect("cyclic").0
        } else {
            v
        }
    }

    /// Support of `M(x)` in the universal cover: `z_i ∈ [x_i, x_{i+1} − 1]`, `z ∈ os^d`.
    pub fn cover_support(&self, x: &OrdSeq) -> Vec<OrdSeq> {
        let c = x.coords();
        let d = self.d;
        let mut out = Vec::new();
        let mut buf = Vec::with_capacity(d);
        fn rec(c: &[Coord], d: usize, buf: &mut Vec<Coord>, out: &mut Vec<OrdSeq>, series: &KupischSeries) {
            let i = buf.len();
            if i == d {
                let z = OrdSeq::new(buf.clone());
                if ordseq::member(&z, series) {
                    out.push(z);
                }
                return;
            }
            for zi in c[i]..c[i + 1] {
                buf.push(zi);
                rec(c, d, buf, out, series);
                buf.pop();
            }
        }
        rec(c, d, &mut buf, &mut out, &self.series);
        out
    }

    /// Dimension vector of `M(x)` on vertex representatives.
    pub fn support(&self, x: &OrdSeq) -> BTreeMap<OrdSeq, usize> {
        let mut out = BTreeMap::new();
        for z in self.cover_support(x) {
            *out.entry(self.canon_vertex(&z)).or_insert(0) += 1;
        }
        out
    }

    pub fn canon_vertex(&self, z: &OrdSeq) -> OrdSeq {
        if self.is_cyclic() {
            ordseq::canonicalize(z, &self.series).expect("cyclic").0
        } else {
            z.clone()
        }
    }

    /// Bound on the σ-shifts that can occur in Hom and Ext computations.
    fn shift_window(&self) -> Coord {
        let span = self.series.ell_max() as Coord + self.d as Coord;
        (span + self.m() - 1) / self.m() + 1
    }

    /// Shifts `j` (in `[lo, hi]`) with `pred(σ^j(y))`, asserting the guard shifts miss.
    fn scan_shifts(&self, lo: Coord, hi: Coord, pred: impl Fn(&[Coord]) -> bool, y: &OrdSeq) -> Vec<Coord> {
        let m = self.m();
        let mut buf = y.coords().to_vec();
        let mut hits = Vec::new();
        for j in lo - 1..=hi + 1 {
            for (b, v) in buf.iter_mut().zip(y.coords()) {
                *b = v + j * m;
            }
            if pred(&buf) {
                assert!(j >= lo && j <= hi, "σ-shift {j} outside the proven window [{lo}, {hi}]");
                hits.push(j);
            }
        }
        hits
    }

    /// Basis of `Hom(M(x), M(y))`: shift exponents `j` with `x ≼ σ^j(y)`.
    pub fn hom_basis(&self, x: &OrdSeq, y: &OrdSeq) -> Vec<Coord> {
        if !self.is_cyclic() {
            return if precedes_unchecked(x.coords(), y.coords()) { vec![0] } else { Vec::new() };
        }
        let x = self.canon(x);
        let y = self.canon(y);
        let w = self.shift_window();
        self.scan_shifts(-w, w, |sy| precedes_unchecked(x.coords(), sy), &y)
    }

    fn stable(&self, x: OrdSeq) -> StableIndex {
        StableIndex::Module(self.canon(&x))
    }

    /// `Ω^d M(x) = M(f(x_{d+1}), x_1, …, x_d)`.
    pub fn syzygy(&self, x: &OrdSeq) -> StableIndex {
        if self.is_projective(x) {
            return StableIndex::Zero;
        }
        let f = self.f(x.last()).expect("module index has f");
        let mut v = vec![f];
        v.extend_from_slice(&x.coords()[..self.d]);
        self.stable(OrdSeq::new(v))
    }

    /// `Ω^{-d} M(x) = M(x_2, …, x_{d+1}, g(x_1))`.
    pub fn cosyzygy(&self, x: &OrdSeq) -> StableIndex {
        if self.is_injective(x) {
            return StableIndex::Zero;
        }
        let g = self.g(x.first()).expect("module index has g");
        let mut v = x.coords()[1..].to_vec();
        v.push(g);
        self.stable(OrdSeq::new(v))
    }

    /// `τ_d M(x) = M(x − (1, …, 1))`.
    pub fn tau(&self, x: &OrdSeq) -> StableIndex {
        if self.is_projective(x) {
            StableIndex::Zero
        } else {
            self.stable(x.translate(-1))
        }
    }

    /// `τ_d^- M(x) = M(x + (1, …, 1))`.
    pub fn tau_inv(&self, x: &OrdSeq) -> StableIndex {
        if self.is_injective(x) {
            StableIndex::Zero
        } else {
            self.stable(x.translate(1))
        }
    }

    /// `(Ω^d)^k`.
    pub fn syzygy_pow(&self, x: &OrdSeq, k: usize) -> StableIndex {
        let mut cur = StableIndex::Module(x.clone());
        for _ in 0..k {
            cur = match cur {
                StableIndex::Zero => return StableIndex::Zero,
                StableIndex::Module(y) => self.syzygy(&y),
            };
        }
        cur
    }

    /// `(Ω^{-d})^k`.
    pub fn cosyzygy_pow(&self, x: &OrdSeq, k: usize) -> StableIndex {
        let mut cur = StableIndex::Module(x.clone());
        for _ in 0..k {
            cur = match cur {
                StableIndex::Zero => return StableIndex::Zero,
                StableIndex::Module(y) => self.cosyzygy(&y),
            };
        }
        cur
    }

    /// `τ_{nd} = τ_d Ω^{(n−1)d}`.
    pub fn tau_nd(&self, x: &OrdSeq, n: usize) -> StableIndex {
        assert!(n >= 1, "n must be positive");
        match self.syzygy_pow(x, n - 1) {
            StableIndex::Zero => StableIndex::Zero,
            StableIndex::Module(y) => self.tau(&y),
        }
    }

    /// `τ_{nd}^- = τ_d^- Ω^{-(n−1)d}`.
    pub fn tau_nd_inv(&self, x: &OrdSeq, n: usize) -> StableIndex {
        assert!(n >= 1, "n must be positive");
        match self.cosyzygy_pow(x, n - 1) {
            StableIndex::Zero => StableIndex::Zero,
            StableIndex::Module(y) => self.tau_inv(&y),
        }
    }

    /// Projective resolution `0 → Ω^d M(x) → P^d → … → P^1 → M(x) → 0` with
    /// `P^i = M(f(x_{d+1}), x_1, …, x̂_i, …, x_{d+1})`.
    pub fn proj_resolution(&self, x: &OrdSeq) -> Result<(Vec<OrdSeq>, StableIndex), ModcatError> {
        if self.is_projective(x) {
            return Err(ModcatError::IsProjective(x.clone()));
        }
        let f = self.f(x.last()).expect("module index has f");
        let c = x.coords();
        let terms = (0..self.d)
            .filter_map(|i| {
                let mut v = vec![f];
                v.extend(c.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &t)| t));
                let p = OrdSeq::new(v);
                self.is_module(&p).then(|| self.canon(&p))
            })
            .collect();
        Ok((terms, self.syzygy(x)))
    }

    /// `dim Ext^{kd}(M(y), M(x))`.
    ///
    /// With `y' = Ω^{(k−1)d} y` non-projective, a basis of `Ext^d(M(y'), M(x))` is
    /// given by the shifts `j` with `σ^j x ≼ τ_d(y')` and `(σ^j x)_1 ≥ f(y'_{d+1})`.
    /// The second condition excludes morphisms `M(σ^j x) → τ_d M(y')` that factor
    /// through an injective module.
    pub fn ext_kd_dim(&self, y: &OrdSeq, x: &OrdSeq, k: usize) -> usize {
        assert!(k >= 1, "k must be positive");
        let Some(yp) = self.syzygy_pow(y, k - 1).into_module() else {
            return 0;
        };
        self.ext_d_from(&yp, x)
    }

    /// `dim Ext^d(M(y), M(x))` for a module index `y`.
    pub fn ext_d_from(&self, y: &OrdSeq, x: &OrdSeq) -> usize {
        if self.is_projective(y) {
            return 0;
        }
        let f0 = self.f(y.last()).expect("module index has f");
        let t = y.translate(-1);
        let ok = |sx: &[Coord]| sx[0] >= f0 && precedes_unchecked(sx, t.coords());
        if !self.is_cyclic() {
            return usize::from(ok(x.coords()));
        }
        let x = self.canon(x);
        let base = (t.first() - x.first()).div_euclid(self.m());
        let w = self.shift_window();
        self.scan_shifts(base - w, base + w, ok, &x).len()
    }

    /// The Auslander–Reiten quiver of `M`: arrow morphisms found by brute-force
    /// factorization over all of `ind M`.
    pub fn ar_quiver(&self) -> ArQuiver {
        let nodes = self.modules();
        let w = self.shift_window();
        let m = self.m();
        let mut edges = Vec::new();
        for (a, x) in nodes.iter().enumerate() {
            for (b, y) in nodes.iter().enumerate() {
                for j in self.hom_basis(x, y) {
                    if a == b && j == 0 {
                        continue;
                    }
                    let sy = y.translate(j * m);
                    let factors = nodes.iter().enumerate().any(|(c, z)| {
                        let shifts: Vec<Coord> =
                            if self.is_cyclic() { (-w - 1..=j + w + 1).collect() } else { vec![0] };
                        shifts.into_iter().any(|j1| {
                            if (c == a && j1 == 0) || (c == b && j1 == j) {
                                return false;
                            }
                            let sz = z.translate(j1 * m);
                            precedes_unchecked(x.coords(), sz.coords()) && precedes_unchecked(sz.coords(), sy.coords())
                        })
                    });
                    if !factors {
                        edges.push(ArEdge { from: a, to: b, shift: j });
                    }
                }
            }
        }
        ArQuiver { nodes, edges }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArEdge {
    pub from: usize,
    pub to: usize,
    /// σ-shift of the target (always 0 for acyclic series).
    pub shift: Coord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArQuiver {
    pub nodes: Vec<OrdSeq>,
    pub edges: Vec<ArEdge>,
}

impl ArQuiver {
    fn label(x: &OrdSeq) -> String {
        x.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
    }

    /// Graphviz rendering; nodes in `highlight` get a fill colour.
    pub fn to_dot(&self, highlight: &[OrdSeq]) -> String {
        let mut s = String::from("digraph ar_quiver {\n  rankdir=LR;\n");
        for x in &self.nodes {
            let l = Self::label(x);
            if highlight.contains(x) {
                let _ = writeln!(s, "  \"{l}\" [label=\"{l}\", style=filled, fillcolor=\"lightcoral\"];");
            } else {
                let _ = writeln!(s, "  \"{l}\" [label=\"{l}\"];");
            }
        }
        for e in &self.edges {
            let _ =
                writeln!(s, "  \"{}\" -> \"{}\";", Self::label(&self.nodes[e.from]), Self::label(&self.nodes[e.to]));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "nodes": self.nodes,
            "edges": self.edges.iter().map(|e| serde_json::json!({
                "from": self.nodes[e.from],
                "to": self.nodes[e.to],
                "shift": e.shift,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Global dimension of `A^d_{ℓ,m}`: with `q = ⌊(m−1)/(ℓ+d−1)⌋` it is `d(d+1)q`
/// when `(ℓ+d−1) | (m−1)` and `d((d+1)q + r)` otherwise, where `r = 1` if the
/// remainder is below `ℓ` and `r = remainder − ℓ + 2` otherwise.
pub fn gldim_formula(ell: u64, m: u64, d: u64) -> u64 {
    assert!(ell >= 2 && m >= ell, "formula needs ℓ ≥ 2 and m ≥ ℓ");
    let p = ell + d - 1;
    let q = (m - 1) / p;
    let rem = m - 1 - q * p;
    if rem == 0 {
        d * (d + 1) * q
    } else {
        let r = if rem < ell { 1 } else { rem - ell + 2 };
        d * ((d + 1) * q + r)
    }
}
