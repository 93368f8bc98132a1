//! Independent verifier: builds a d-Nakayama algebra as a bound quiver algebra
//! (paths modulo relations, by exact elimination), builds the interval modules
//! `M(x)` as explicit representations, and computes Hom, Ext, minimal
//! resolutions and global dimension by linear algebra.
//!
//! Paths are handled in the opposite quiver (arrows `x + e_i → x`) so that
//! projectives `Hom(v, −)` have their top at `v`. Cyclic algebras are built on
//! the orbit quiver; paths are lifted to the universal cover starting at the
//! canonical representative of their source.

use std::collections::HashMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::finalg::{BasisElem, FinAlg, FinAlgError, Module};
use crate::kupisch::KupischSeries;
use crate::linalg::{self, Matrix, Rref, Q};
use crate::ordseq::{self, precedes_unchecked, Coord, OrdSeq};

pub const DEFAULT_CAP: usize = 500;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("d must be at least 1")]
    ZeroD,
    #[error("quiver has {size} vertices, above the cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("paths from {0} did not terminate below the length cap")]
    PathLengthCap(OrdSeq),
    #[error("product of basis paths is not a single basis path")]
    NonMonomial,
    #[error("{0} is not a module index")]
    InvalidIndex(OrdSeq),
    #[error(transparent)]
    FinAlg(#[from] FinAlgError),
}

/// Arrow `a_i(x): x → x + e_i` of the quiver `Q^d` (cyclic: target in the cover).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverArrow {
    pub source: OrdSeq,
    /// 0-based coordinate index `i`.
    pub direction: usize,
    pub target: OrdSeq,
}

/// A relation starting at `start`: a signed sum of paths given as direction sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub start: OrdSeq,
    pub terms: Vec<(i64, Vec<usize>)>,
}

#[derive(Debug, Clone)]
pub struct BoundQuiver {
    pub vertices: Vec<OrdSeq>,
    pub arrows: Vec<QuiverArrow>,
    pub relations: Vec<Relation>,
}

/// A path class of the opposite quiver: source object, endpoint in the cover
/// and a representative sequence of directions.
#[derive(Debug, Clone)]
struct PathClass {
    end: OrdSeq,
    rep: Vec<usize>,
}

/// `(class, direction)` to a combination of classes one level up.
type Reduction = HashMap<(usize, usize), Vec<(usize, Q)>>;

/// Per-source level data: classes and the reduction of every candidate
/// `(class at level L−1, direction)` to a combination of classes at level `L`.
struct SourcePaths {
    levels: Vec<Vec<PathClass>>,
    reduce: Vec<Reduction>,
}

pub struct Oracle {
    series: KupischSeries,
    d: usize,
    quiver: BoundQuiver,
    alg: FinAlg,
    vertex_index: HashMap<OrdSeq, usize>,
    /// Displacement `end − source` of every basis element (zero for identities).
    displacement: Vec<Vec<Coord>>,
}

/// Minimal projective resolution: `tops[k]` is the top of the `k`-th projective
/// term (multiplicity per vertex) and `syzygies[k]` the kernel `Ω^{k+1} M`.
#[derive(Debug, Clone)]
pub struct Resolution {
    pub tops: Vec<Vec<usize>>,
    pub syzygies: Vec<Module>,
}

impl Resolution {
    /// `Ω^k M` for `k ≥ 1`, zero past the end of the resolution.
    pub fn syzygy(&self, k: usize) -> Option<&Module> {
        self.syzygies.get(k - 1)
    }
}

impl Oracle {
    pub fn build(series: &KupischSeries, d: usize) -> Result<Self, OracleError> {
        Self::build_with_cap(series, d, DEFAULT_CAP)
    }

    pub fn build_with_cap(series: &KupischSeries, d: usize, cap: usize) -> Result<Self, OracleError> {
        if d == 0 {
            return Err(OracleError::ZeroD);
        }
        let vertices = ordseq::enumerate(series, d);
        if vertices.len() > cap {
            return Err(OracleError::CapExceeded { size: vertices.len(), cap });
        }
        let vertex_index: HashMap<OrdSeq, usize> = vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let quiver = Self::build_quiver(series, d, &vertices);

        let mut paths = Vec::with_capacity(vertices.len());
        for u in &vertices {
            paths.push(Self::source_paths(series, d, u)?);
        }

        // Global basis: identities first, then classes at level ≥ 1 per source.
        let n = vertices.len();
        let mut displacement: Vec<Vec<Coord>> = vec![vec![0; d]; n];
        let mut non_identity = Vec::new();
        let mut global: Vec<Vec<Vec<usize>>> = Vec::with_capacity(n);
        let canon = |z: &OrdSeq| Self::canon_with(series, z);
        for (s, u) in vertices.iter().enumerate() {
            let mut per_level = vec![vec![s]];
            for level in paths[s].levels.iter().skip(1) {
                let mut ids = Vec::with_capacity(level.len());
                for class in level {
                    let tgt = vertex_index[&canon(&class.end)];
                    ids.push(n + non_identity.len());
                    let tag = format!("{u}:{}", class.rep.iter().map(|i| (i + 1).to_string()).collect::<String>());
                    non_identity.push(BasisElem { src: s, tgt, tag });
                    displacement.push(class.end.coords().iter().zip(u.coords()).map(|(a, b)| a - b).collect());
                }
                per_level.push(ids);
            }
            global.push(per_level);
        }

        let mut products = HashMap::new();
        for s in 0..n {
            for (lp, level) in paths[s].levels.iter().enumerate().skip(1) {
                for (cp, class) in level.iter().enumerate() {
                    let t = vertex_index[&canon(&class.end)];
                    for (lq, qlevel) in paths[t].levels.iter().enumerate().skip(1) {
                        for (cq, qclass) in qlevel.iter().enumerate() {
                            if let Some((l, c)) = Self::extend(&paths[s], lp, cp, &qclass.rep)? {
                                products.insert((global[s][lp][cp] - n, global[t][lq][cq] - n), global[s][l][c] - n);
                            }
                        }
                    }
                }
            }
        }
        let objects = vertices.iter().map(|v| v.to_string()).collect();
        let alg = FinAlg::new(objects, non_identity, products)?;
        Ok(Oracle { series: series.clone(), d, quiver, alg, vertex_index, displacement })
    }

    fn canon_with(series: &KupischSeries, z: &OrdSeq) -> OrdSeq {
        if series.is_cyclic() {
            ordseq::canonicalize(z, series).expect("cyclic").0
        } else {
            z.clone()
        }
    }

    fn is_vertex(series: &KupischSeries, d: usize, z: &OrdSeq) -> bool {
        z.len() == d && ordseq::member(z, series)
    }

    fn build_quiver(series: &KupischSeries, d: usize, vertices: &[OrdSeq]) -> BoundQuiver {
        let mut arrows = Vec::new();
        let mut relations = Vec::new();
        for x in vertices {
            for i in 0..d {
                let t = x.bump(i);
                if Self::is_vertex(series, d, &t) {
                    arrows.push(QuiverArrow { source: x.clone(), direction: i, target: t });
                }
            }
            if d == 1 {
                // Paths of length ℓ ending at u are zero; recorded at their start.
                let u = x.first();
                let ell = series.ell(u) as usize;
                let start = OrdSeq::new(vec![u - ell as Coord]);
                if Self::is_vertex(series, d, &start) || series.is_cyclic() {
                    relations.push(Relation { start, terms: vec![(1, vec![0; ell])] });
                }
                continue;
            }
            for i in 0..d {
                for j in i + 1..d {
                    let y = x.bump(i).bump(j);
                    if !Self::is_vertex(series, d, &y) {
                        continue;
                    }
                    let mut terms = Vec::new();
                    if Self::is_vertex(series, d, &x.bump(j)) {
                        terms.push((1, vec![j, i]));
                    }
                    if Self::is_vertex(series, d, &x.bump(i)) {
                        terms.push((-1, vec![i, j]));
                    }
                    relations.push(Relation { start: x.clone(), terms });
                }
            }
        }
        BoundQuiver { vertices: vertices.to_vec(), arrows, relations }
    }

    /// Path classes from `u` in the opposite quiver, level by level.
    fn source_paths(series: &KupischSeries, d: usize, u: &OrdSeq) -> Result<SourcePaths, OracleError> {
        let ell_u = series.ell(u.last()) as usize;
        let cap = series.ell_max() as usize * (d + 1) * series.width() + 1;
        let mut levels = vec![vec![PathClass { end: u.clone(), rep: Vec::new() }]];
        let mut reduce: Vec<Reduction> = vec![HashMap::new()];
        loop {
            let l = levels.len();
            if l > cap {
                return Err(OracleError::PathLengthCap(u.clone()));
            }
            let prev = &levels[l - 1];
            let mut candidates: Vec<(usize, usize, OrdSeq)> = Vec::new();
            let mut cand_index: HashMap<(usize, usize), usize> = HashMap::new();
            for (c, class) in prev.iter().enumerate() {
                for i in 0..d {
                    let mut e = class.end.coords().to_vec();
                    e[i] -= 1;
                    let e = OrdSeq::new(e);
                    if Self::is_vertex(series, d, &e) {
                        cand_index.insert((c, i), candidates.len());
                        candidates.push((c, i, e));
                    }
                }
            }
            if candidates.is_empty() {
                break;
            }
            let k = candidates.len();
            let mut rows: Vec<Vec<Q>> = Vec::new();
            if d == 1 {
                if l >= ell_u {
                    for r in 0..k {
                        let mut row = vec![Q::zero(); k];
                        row[r] = Q::one();
                        rows.push(row);
                    }
                }
            } else if l >= 2 {
                for (c2, class) in levels[l - 2].iter().enumerate() {
                    let y = &class.end;
                    for i in 0..d {
                        for j in i + 1..d {
                            let mut target = y.coords().to_vec();
                            target[i] -= 1;
                            target[j] -= 1;
                            if !Self::is_vertex(series, d, &OrdSeq::new(target)) {
                                continue;
                            }
                            let mut row = vec![Q::zero(); k];
                            for (sign, first, second) in [(1i128, i, j), (-1, j, i)] {
                                let Some(red) = reduce[l - 1].get(&(c2, first)) else { continue };
                                for (cls, coeff) in red {
                                    let col = cand_index[&(*cls, second)];
                                    let v = linalg::mul(coeff, &Q::from_integer(sign));
                                    row[col] = linalg::add(&row[col], &v);
                                }
                            }
                            if row.iter().any(|v| !v.is_zero()) {
                                rows.push(row);
                            }
                        }
                    }
                }
            }
            let rref = Rref::new(rows, k);
            let free = rref.free_columns();
            let class_of: HashMap<usize, usize> = free.iter().enumerate().map(|(ci, &f)| (f, ci)).collect();
            let mut red_level = HashMap::with_capacity(k);
            for (col, (c, i, _)) in candidates.iter().enumerate() {
                let v = if let Some(&ci) = class_of.get(&col) {
                    vec![(ci, Q::one())]
                } else {
                    let r = rref.pivots.iter().position(|&p| p == col).expect("pivot column");
                    free.iter()
                        .filter(|&&f| !rref.rows[r][f].is_zero())
                        .map(|&f| (class_of[&f], -rref.rows[r][f]))
                        .collect()
                };
                red_level.insert((*c, *i), v);
            }
            let classes: Vec<PathClass> = free
                .iter()
                .map(|&f| {
                    let (c, i, e) = &candidates[f];
                    let mut rep = levels[l - 1][*c].rep.clone();
                    rep.push(*i);
                    PathClass { end: e.clone(), rep }
                })
                .collect();
            if classes.is_empty() {
                break;
            }
            levels.push(classes);
            reduce.push(red_level);
        }
        Ok(SourcePaths { levels, reduce })
    }

    /// Extends class `(level, class)` by the directions `rep`; returns the
    /// resulting basis class or `None` for zero.
    fn extend(
        paths: &SourcePaths,
        level: usize,
        class: usize,
        rep: &[usize],
    ) -> Result<Option<(usize, usize)>, OracleError> {
        let mut state: Vec<(usize, Q)> = vec![(class, Q::one())];
        let mut l = level;
        for &dir in rep {
            l += 1;
            let Some(red) = paths.reduce.get(l) else { return Ok(None) };
            let mut next: HashMap<usize, Q> = HashMap::new();
            for (c, coeff) in &state {
                if let Some(v) = red.get(&(*c, dir)) {
                    for (ci, x) in v {
                        let e = next.entry(*ci).or_insert_with(Q::zero);
                        *e = linalg::add(e, &linalg::mul(coeff, x));
                    }
                }
            }
            state = next.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            if state.is_empty() {
                return Ok(None);
            }
        }
        match state.as_slice() {
            [(c, v)] if v.is_one() => Ok(Some((l, *c))),
            _ => Err(OracleError::NonMonomial),
        }
    }

    pub fn series(&self) -> &KupischSeries {
        &self.series
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn quiver(&self) -> &BoundQuiver {
        &self.quiver
    }

    pub fn algebra(&self) -> &FinAlg {
        &self.alg
    }

    pub fn vertex(&self, v: &OrdSeq) -> Option<usize> {
        self.vertex_index.get(v).copied()
    }

    /// The representation `M(x)`: one basis vector per cover vertex of the
    /// support, every path between support vertices acting as the identity.
    pub fn build_module(&self, x: &OrdSeq) -> Result<Module, OracleError> {
        if x.len() != self.d + 1 || !ordseq::member(x, &self.series) {
            return Err(OracleError::InvalidIndex(x.clone()));
        }
        let x = Self::canon_with(&self.series, x);
        let lo = &x.coords()[..self.d];
        let hi: Vec<Coord> = x.coords()[1..].iter().map(|c| c - 1).collect();
        // Every support vertex lies in the box [x_1, x_{d+1} − 1]^d.
        let mut support = Vec::new();
        let mut buf = vec![0; self.d];
        box_points(x.first(), x.last() - 1, 0, &mut buf, &mut |z| {
            if precedes_unchecked(lo, z)
                && precedes_unchecked(z, &hi)
                && Self::is_vertex(&self.series, self.d, &OrdSeq::new(z.to_vec()))
            {
                support.push(OrdSeq::new(z.to_vec()));
            }
        });
        let n = self.alg.num_objects();
        let mut dims = vec![0; n];
        let mut local: HashMap<OrdSeq, (usize, usize)> = HashMap::new();
        for z in &support {
            let o = self.vertex_index[&Self::canon_with(&self.series, z)];
            local.insert(z.clone(), (o, dims[o]));
            dims[o] += 1;
        }
        let mut action: HashMap<usize, Matrix> = HashMap::new();
        for b in n..self.alg.dim() {
            let e = &self.alg.basis()[b];
            if dims[e.src] == 0 || dims[e.tgt] == 0 {
                continue;
            }
            let src_rep = &self.quiver.vertices[e.src];
            for z in &support {
                let (o, col) = local[z];
                if o != e.src {
                    continue;
                }
                let shift = z.first() - src_rep.first();
                let w = OrdSeq::new(
                    src_rep.coords().iter().zip(&self.displacement[b]).map(|(s, dd)| s + dd + shift).collect(),
                );
                if let Some(&(_, row)) = local.get(&w) {
                    action.entry(b).or_insert_with(|| Matrix::zeros(dims[e.tgt], dims[e.src])).set(row, col, Q::one());
                }
            }
        }
        let m = Module::new(&self.alg, dims, action);
        assert!(m.respects_mult(&self.alg), "relations must vanish on M{x}");
        Ok(m)
    }

    pub fn projective(&self, v: &OrdSeq) -> Option<Module> {
        self.vertex(v).map(|e| self.alg.projective(e))
    }

    pub fn hom_dim(&self, m: &Module, n: &Module) -> usize {
        self.alg.hom_dim(m, n)
    }

    /// Minimal projective resolution up to `length` terms (stops at zero kernel).
    pub fn min_proj_resolution(&self, m: &Module, length: usize) -> Resolution {
        let mut tops = Vec::new();
        let mut syzygies = Vec::new();
        let mut cur = m.clone();
        for _ in 0..length {
            if cur.is_zero() {
                break;
            }
            let cover = self.alg.proj_cover_and_syzygy(&cur).expect("nonzero module");
            debug_assert_eq!(cover.cover_dims.iter().sum::<usize>(), cur.dim() + cover.kernel.dim());
            tops.push(cover.tops);
            cur = cover.kernel;
            syzygies.push(cur.clone());
            if cur.is_zero() {
                break;
            }
        }
        Resolution { tops, syzygies }
    }

    /// `dim Ext^i(M, N)` from a resolution of `M` with at least `i` terms:
    /// `hom(Ω^i M, N) − hom(P_{i−1}, N) + hom(Ω^{i−1} M, N)`.
    pub fn ext_from_resolution(&self, m: &Module, res: &Resolution, n: &Module, i: usize) -> usize {
        assert!(i >= 1, "Ext index must be positive");
        let Some(top) = res.tops.get(i - 1) else { return 0 };
        let prev = if i == 1 { m } else { res.syzygy(i - 1).expect("resolution term") };
        let omega = res.syzygy(i).expect("resolution term");
        let hom_p: usize = top.iter().zip(n.dims()).map(|(t, dn)| t * dn).sum();
        self.hom_dim(omega, n) + self.hom_dim(prev, n) - hom_p
    }

    pub fn ext_dim(&self, m: &Module, n: &Module, i: usize) -> usize {
        let res = self.min_proj_resolution(m, i);
        self.ext_from_resolution(m, &res, n, i)
    }

    pub fn gldim(&self, bound: usize) -> Result<usize, OracleError> {
        Ok(self.alg.gldim(bound)?)
    }
}

fn box_points(lo: Coord, hi: Coord, i: usize, buf: &mut Vec<Coord>, f: &mut impl FnMut(&[Coord])) {
    if i == buf.len() {
        f(buf);
        return;
    }
    let start = if i == 0 { lo } else { buf[i - 1] + 1 };
    for v in start..=hi {
        buf[i] = v;
        box_points(lo, hi, i + 1, buf, f);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(v: &[Coord]) -> OrdSeq {
        OrdSeq::new(v.to_vec())
    }

    #[test]
    fn small_sizes() {
        let a = Oracle::build(&KupischSeries::acyclic_homogeneous(3, 8).unwrap(), 2).unwrap();
        assert_eq!(a.quiver().vertices.len(), 21);
        let c = Oracle::build(&KupischSeries::cyclic_homogeneous(5, 3).unwrap(), 2).unwrap();
        assert_eq!(c.quiver().vertices.len(), 15);
        let one = Oracle::build(&KupischSeries::new(vec![1], false).unwrap(), 1).unwrap();
        assert_eq!(one.quiver().vertices.len(), 1);
        assert!(one.quiver().arrows.is_empty());
        assert_eq!(
            Oracle::build_with_cap(&KupischSeries::acyclic_homogeneous(3, 8).unwrap(), 2, 10).err(),
            Some(OracleError::CapExceeded { size: 21, cap: 10 })
        );
    }

    #[test]
    fn modules_and_projectives() {
        let a = Oracle::build(&KupischSeries::acyclic_homogeneous(3, 8).unwrap(), 2).unwrap();
        assert!(a.algebra().is_associative());
        let m = a.build_module(&o(&[1, 2, 4])).unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(m.dims()[a.vertex(&o(&[1, 2])).unwrap()], 1);
        assert_eq!(m.dims()[a.vertex(&o(&[1, 3])).unwrap()], 1);
        assert_eq!(a.build_module(&o(&[4, 5, 6])).unwrap().dim(), 1);
        let p = a.build_module(&o(&[1, 3, 5])).unwrap();
        let q = a.projective(&o(&[2, 4])).unwrap();
        assert_eq!(p.dims(), q.dims());
        assert_eq!(a.hom_dim(&p, &q), 1);
        assert_eq!(a.hom_dim(&q, &p), 1);
    }

    #[test]
    fn ext_and_gldim_examples() {
        let a = Oracle::build(&KupischSeries::acyclic_homogeneous(3, 8).unwrap(), 2).unwrap();
        let y = a.build_module(&o(&[2, 3, 4])).unwrap();
        let x = a.build_module(&o(&[1, 2, 3])).unwrap();
        assert_eq!(a.ext_dim(&y, &x, 2), 1);
        assert_eq!(a.ext_dim(&y, &x, 1), 0);
        assert_eq!(a.gldim(12), Ok(10));
        let c = Oracle::build(&KupischSeries::cyclic_homogeneous(5, 3).unwrap(), 2).unwrap();
        assert_eq!(c.gldim(8), Err(OracleError::FinAlg(FinAlgError::ExceedsBound(8))));
    }

    #[test]
    fn d1_nakayama_projective_lengths() {
        let s = KupischSeries::new(vec![1, 2, 3, 3, 2], false).unwrap();
        let a = Oracle::build(&s, 1).unwrap();
        for (u, ell) in s.entries().iter().enumerate() {
            assert_eq!(a.projective(&o(&[u as Coord + 1])).unwrap().dim(), *ell as usize);
        }
        let c = Oracle::build(&KupischSeries::cyclic_homogeneous(4, 1).unwrap(), 1).unwrap();
        assert_eq!(c.algebra().dim(), 4);
        assert_eq!(c.build_module(&o(&[1, 5])).unwrap().dim(), 4);
    }

    #[test]
    fn resolution_of_346() {
        let a = Oracle::build(&KupischSeries::acyclic_homogeneous(3, 8).unwrap(), 2).unwrap();
        let m = a.build_module(&o(&[3, 4, 6])).unwrap();
        let res = a.min_proj_resolution(&m, 2);
        let top = |v: &[Coord]| a.vertex(&o(v)).unwrap();
        assert_eq!(res.tops[0].iter().sum::<usize>(), 1);
        assert_eq!(res.tops[0][top(&[3, 5])], 1);
        assert_eq!(res.tops[1][top(&[2, 5])], 1);
        let omega = a.build_module(&o(&[2, 3, 4])).unwrap();
        assert_eq!(res.syzygy(2).unwrap().dims(), omega.dims());
    }
}
