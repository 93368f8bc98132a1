//! Basic finite-dimensional algebras over the rationals given by structure
//! constants, their modules, minimal projective covers and global dimension.
//!
//! An algebra is presented as a finite category: objects are the primitive
//! idempotents, basis elements are morphisms `src → tgt`, and the product of
//! two basis elements is another basis element or zero. `mul(a, b)` means
//! "first `a`, then `b`". Modules are covariant: `M(b): M_src → M_tgt`, and the
//! indecomposable projective at `e` is `Hom(e, −)`, spanned by the basis
//! elements with source `e`.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::linalg::{self, rank_fraction_free, Matrix, Rref, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FinAlgError {
    #[error("basis element {0} refers to an object out of range")]
    ObjectOutOfRange(usize),
    #[error("product of basis elements {0} and {1} has inconsistent endpoints")]
    BadProduct(usize, usize),
    #[error("the zero module has no projective cover")]
    ZeroModule,
    #[error("global dimension exceeds {0}")]
    ExceedsBound(usize),
}

/// A basis morphism `src → tgt` with a free-form tag for display.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisElem {
    pub src: usize,
    pub tgt: usize,
    pub tag: String,
}

#[derive(Debug, Clone)]
pub struct FinAlg {
    objects: Vec<String>,
    /// Identities first (index = object), then the non-identity elements.
    basis: Vec<BasisElem>,
    mult: HashMap<(usize, usize), usize>,
    from: Vec<Vec<usize>>,
    arrows: Vec<usize>,
    arrows_from: Vec<Vec<usize>>,
    arrows_to: Vec<Vec<usize>>,
}

impl FinAlg {
    /// Builds an algebra from its objects, the non-identity basis elements and
    /// their nonzero products (indices into `non_identity`). Identities are
    /// added automatically at indices `0..objects.len()`.
    pub fn new(
        objects: Vec<String>,
        non_identity: Vec<BasisElem>,
        products: HashMap<(usize, usize), usize>,
    ) -> Result<Self, FinAlgError> {
        let n = objects.len();
        for (i, b) in non_identity.iter().enumerate() {
            if b.src >= n || b.tgt >= n {
                return Err(FinAlgError::ObjectOutOfRange(i + n));
            }
        }
        let mut basis: Vec<BasisElem> =
            objects.iter().enumerate().map(|(o, l)| BasisElem { src: o, tgt: o, tag: format!("id[{l}]") }).collect();
        basis.extend(non_identity);
        let mut mult = HashMap::with_capacity(products.len());
        for ((a, b), c) in products {
            let (a, b, c) = (a + n, b + n, c + n);
            let ok = [a, b, c].iter().all(|&i| i < basis.len())
                && basis[a].tgt == basis[b].src
                && basis[c].src == basis[a].src
                && basis[c].tgt == basis[b].tgt;
            if !ok {
                return Err(FinAlgError::BadProduct(a, b));
            }
            mult.insert((a, b), c);
        }
        let mut from = vec![Vec::new(); n];
        for (i, b) in basis.iter().enumerate() {
            from[b.src].push(i);
        }
        let mut is_product = vec![false; basis.len()];
        for &c in mult.values() {
            is_product[c] = true;
        }
        let arrows: Vec<usize> = (n..basis.len()).filter(|&i| !is_product[i]).collect();
        let mut arrows_from = vec![Vec::new(); n];
        let mut arrows_to = vec![Vec::new(); n];
        for &a in &arrows {
            arrows_from[basis[a].src].push(a);
            arrows_to[basis[a].tgt].push(a);
        }
        Ok(FinAlg { objects, basis, mult, from, arrows, arrows_from, arrows_to })
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn basis(&self) -> &[BasisElem] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_identity(&self, b: usize) -> bool {
        b < self.objects.len()
    }

    /// Basis elements with source `e`.
    pub fn from(&self, e: usize) -> &[usize] {
        &self.from[e]
    }

    /// Non-identity basis elements that are not products of two non-identities.
    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn arrows_from(&self, e: usize) -> &[usize] {
        &self.arrows_from[e]
    }

    pub fn arrows_to(&self, e: usize) -> &[usize] {
        &self.arrows_to[e]
    }

    /// `a` followed by `b`, or `None` for zero (including non-composable pairs).
    pub fn mul(&self, a: usize, b: usize) -> Option<usize> {
        if self.basis[a].tgt != self.basis[b].src {
            return None;
        }
        if self.is_identity(a) {
            return Some(b);
        }
        if self.is_identity(b) {
            return Some(a);
        }
        self.mult.get(&(a, b)).copied()
    }

    /// Exhaustive associativity check over all composable triples.
    pub fn is_associative(&self) -> bool {
        (0..self.dim()).into_par_iter().all(|a| {
            self.from[self.basis[a].tgt].iter().all(|&b| {
                self.from[self.basis[b].tgt].iter().all(|&c| {
                    let left = self.mul(a, b).and_then(|ab| self.mul(ab, c));
                    let right = self.mul(b, c).and_then(|bc| self.mul(a, bc));
                    left == right
                })
            })
        })
    }

    /// Smallest `N` with `rad^N = 0`, or `None` if the radical is not nilpotent.
    pub fn radical_nilpotency_index(&self) -> Option<usize> {
        let n = self.num_objects();
        if self.mult.keys().any(|&(a, b)| a < n || b < n) || self.mult.values().any(|&c| c < n) {
            return None;
        }
        let mut depth = vec![0usize; self.dim()];
        for d in depth.iter_mut().skip(n) {
            *d = 1;
        }
        for _ in 0..=self.dim() {
            let mut changed = false;
            for (&(a, b), &c) in &self.mult {
                let v = depth[a] + depth[b];
                if v > depth[c] {
                    depth[c] = v;
                    changed = true;
                }
            }
            if !changed {
                return Some(depth.iter().copied().max().unwrap_or(0) + 1);
            }
        }
        None
    }

    /// The indecomposable projective `Hom(e, −)`.
    pub fn projective(&self, e: usize) -> Module {
        let n = self.num_objects();
        let mut index: Vec<HashMap<usize, usize>> = vec![HashMap::new(); n];
        let mut dims = vec![0; n];
        for &p in &self.from[e] {
            let t = self.basis[p].tgt;
            index[t].insert(p, dims[t]);
            dims[t] += 1;
        }
        let mut action = HashMap::new();
        for b in n..self.dim() {
            let (s, t) = (self.basis[b].src, self.basis[b].tgt);
            if dims[s] == 0 || dims[t] == 0 {
                continue;
            }
            let mut mat = Matrix::zeros(dims[t], dims[s]);
            for (&p, &col) in &index[s] {
                if let Some(q) = self.mul(p, b) {
                    mat.set(index[t][&q], col, Q::one());
                }
            }
            if !mat.is_zero() {
                action.insert(b, mat);
            }
        }
        Module { dims, action }
    }

    /// The simple module at `e`.
    pub fn simple(&self, e: usize) -> Module {
        let mut dims = vec![0; self.num_objects()];
        dims[e] = 1;
        Module { dims, action: HashMap::new() }
    }

    /// Generators of the top of `m`: one vector per basis element of
    /// `m_t / Σ im m(a)` over arrows `a` into `t`.
    pub fn top_generators(&self, m: &Module) -> Vec<(usize, Vec<Q>)> {
        let mut gens = Vec::new();
        for t in 0..self.num_objects() {
            let dt = m.dims[t];
            if dt == 0 {
                continue;
            }
            let mut rows = Vec::new();
            for &a in &self.arrows_to[t] {
                if let Some(mat) = m.action.get(&a) {
                    for c in 0..mat.cols() {
                        let col: Vec<Q> = (0..dt).map(|r| *mat.get(r, c)).collect();
                        if col.iter().any(|v| !v.is_zero()) {
                            rows.push(col);
                        }
                    }
                }
            }
            for f in Rref::new(rows, dt).free_columns() {
                let mut v = vec![Q::zero(); dt];
                v[f] = Q::one();
                gens.push((t, v));
            }
        }
        gens
    }

    /// Minimal projective cover of `m` and its kernel.
    pub fn proj_cover_and_syzygy(&self, m: &Module) -> Result<Cover, FinAlgError> {
        if m.is_zero() {
            return Err(FinAlgError::ZeroModule);
        }
        let n = self.num_objects();
        let gens = self.top_generators(m);
        let mut tops = vec![0; n];
        // Basis of the cover at each object: (generator, basis element from its object).
        let mut cover_basis: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (g, (e, _)) in gens.iter().enumerate() {
            tops[*e] += 1;
            for &p in &self.from[*e] {
                cover_basis[self.basis[p].tgt].push((g, p));
            }
        }
        let cover_dims: Vec<usize> = cover_basis.iter().map(Vec::len).collect();
        let index: Vec<HashMap<(usize, usize), usize>> =
            cover_basis.iter().map(|b| b.iter().enumerate().map(|(i, &k)| (k, i)).collect()).collect();

        let mut ker_basis: Vec<Vec<Vec<Q>>> = Vec::with_capacity(n);
        let mut ker_free: Vec<Vec<usize>> = Vec::with_capacity(n);
        for o in 0..n {
            let cols: Vec<Vec<Q>> = cover_basis[o].iter().map(|&(g, p)| m.apply(self, p, &gens[g].1)).collect();
            let pi = Matrix::from_columns(&cols, m.dims[o]);
            let rows: Vec<Vec<Q>> = (0..pi.rows()).map(|r| pi.row(r).to_vec()).collect();
            let rref = Rref::new(rows, cover_dims[o]);
            ker_free.push(rref.free_columns());
            ker_basis.push(rref.nullspace());
        }
        let dims: Vec<usize> = ker_basis.iter().map(Vec::len).collect();
        let mut action = HashMap::new();
        for b in n..self.dim() {
            let (s, t) = (self.basis[b].src, self.basis[b].tgt);
            if dims[s] == 0 || dims[t] == 0 {
                continue;
            }
            let mut mat = Matrix::zeros(dims[t], dims[s]);
            for (col, k) in ker_basis[s].iter().enumerate() {
                let mut image = vec![Q::zero(); cover_dims[t]];
                for (i, c) in k.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let (g, p) = cover_basis[s][i];
                    if let Some(q) = self.mul(p, b) {
                        let j = index[t][&(g, q)];
                        image[j] = linalg::add(&image[j], c);
                    }
                }
                for (row, &f) in ker_free[t].iter().enumerate() {
                    if !image[f].is_zero() {
                        mat.set(row, col, image[f]);
                    }
                }
            }
            if !mat.is_zero() {
                action.insert(b, mat);
            }
        }
        Ok(Cover { tops, cover_dims, kernel: Module { dims, action } })
    }

    /// Projective dimension of `m`, or `None` if it exceeds `bound`.
    pub fn proj_dim(&self, m: &Module, bound: usize) -> Option<usize> {
        if m.is_zero() {
            return Some(0);
        }
        let mut cur = m.clone();
        for k in 0..=bound {
            let cover = self.proj_cover_and_syzygy(&cur).expect("nonzero module");
            if cover.kernel.is_zero() {
                return Some(k);
            }
            cur = cover.kernel;
        }
        None
    }

    /// Global dimension, the maximum projective dimension of the simples.
    pub fn gldim(&self, bound: usize) -> Result<usize, FinAlgError> {
        let pds: Vec<Option<usize>> =
            (0..self.num_objects()).into_par_iter().map(|e| self.proj_dim(&self.simple(e), bound)).collect();
        pds.into_iter().try_fold(0, |acc, pd| pd.map(|p| acc.max(p)).ok_or(FinAlgError::ExceedsBound(bound)))
    }

    /// `dim Hom(m, n)`, solving `n(a) φ_s = φ_t m(a)` over all arrows `a: s → t`.
    #[allow(clippy::needless_range_loop)]
    pub fn hom_dim(&self, m: &Module, n: &Module) -> usize {
        let objs = self.num_objects();
        let mut offset = vec![usize::MAX; objs];
        let mut unknowns = 0;
        for o in 0..objs {
            if m.dims[o] > 0 && n.dims[o] > 0 {
                offset[o] = unknowns;
                unknowns += m.dims[o] * n.dims[o];
            }
        }
        if unknowns == 0 {
            return 0;
        }
        // φ_o is stored row-major: entry (r, c) ↦ offset + r·dim m_o + c.
        let var = |o: usize, r: usize, c: usize| offset[o] + r * m.dims[o] + c;
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for s in 0..objs {
            if m.dims[s] == 0 {
                continue;
            }
            for &a in &self.arrows_from[s] {
                let t = self.basis[a].tgt;
                if n.dims[t] == 0 {
                    continue;
                }
                let na = n.action.get(&a);
                let ma = m.action.get(&a);
                if na.is_none() && ma.is_none() {
                    continue;
                }
                // Entry (r, c) of n(a) φ_s − φ_t m(a), r < dim n_t, c < dim m_s.
                for r in 0..n.dims[t] {
                    for c in 0..m.dims[s] {
                        let mut row = vec![Q::zero(); unknowns];
                        if let (Some(na), true) = (na, offset[s] != usize::MAX) {
                            for k in 0..n.dims[s] {
                                let v = na.get(r, k);
                                if !v.is_zero() {
                                    row[var(s, k, c)] = linalg::add(&row[var(s, k, c)], v);
                                }
                            }
                        }
                        if let (Some(ma), true) = (ma, offset[t] != usize::MAX) {
                            for k in 0..m.dims[t] {
                                let v = ma.get(k, c);
                                if !v.is_zero() {
                                    row[var(t, r, k)] = linalg::sub(&row[var(t, r, k)], v);
                                }
                            }
                        }
                        if row.iter().any(|v| !v.is_zero()) {
                            rows.push(row);
                        }
                    }
                }
            }
        }
        unknowns - rank_fraction_free(rows, unknowns)
    }
}

/// A minimal projective cover `⊕ P_e^{tops[e]} → m` and its kernel.
#[derive(Debug, Clone)]
pub struct Cover {
    pub tops: Vec<usize>,
    pub cover_dims: Vec<usize>,
    pub kernel: Module,
}

/// A finite-dimensional module: a vector space per object and a matrix
/// `dims[tgt] × dims[src]` per non-identity basis element (absent means zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Module {
    dims: Vec<usize>,
    action: HashMap<usize, Matrix>,
}

impl Module {
    /// Builds a module, checking matrix shapes against the algebra.
    pub fn new(alg: &FinAlg, dims: Vec<usize>, action: HashMap<usize, Matrix>) -> Module {
        assert_eq!(dims.len(), alg.num_objects(), "one dimension per object");
        for (&b, mat) in &action {
            assert!(!alg.is_identity(b), "identities act as identity implicitly");
            let e = &alg.basis[b];
            assert_eq!((mat.rows(), mat.cols()), (dims[e.tgt], dims[e.src]), "action shape of basis element {b}");
        }
        let action = action.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        Module { dims, action }
    }

    pub fn zero(alg: &FinAlg) -> Module {
        Module { dims: vec![0; alg.num_objects()], action: HashMap::new() }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Matrix of basis element `b`, with the identity convention for identities.
    pub fn matrix(&self, alg: &FinAlg, b: usize) -> Matrix {
        let e = &alg.basis[b];
        if alg.is_identity(b) {
            return Matrix::identity(self.dims[e.src]);
        }
        self.action.get(&b).cloned().unwrap_or_else(|| Matrix::zeros(self.dims[e.tgt], self.dims[e.src]))
    }

    /// `m(b) v`.
    pub fn apply(&self, alg: &FinAlg, b: usize, v: &[Q]) -> Vec<Q> {
        if alg.is_identity(b) {
            return v.to_vec();
        }
        match self.action.get(&b) {
            Some(mat) => mat.mul_vec(v),
            None => vec![Q::zero(); self.dims[alg.basis[b].tgt]],
        }
    }

    /// Checks `m(b) m(a) = m(ab)` (or zero) for all composable basis pairs.
    pub fn respects_mult(&self, alg: &FinAlg) -> bool {
        let n = alg.num_objects();
        (n..alg.dim()).all(|a| {
            let t = alg.basis[a].tgt;
            if self.dims[alg.basis[a].src] == 0 {
                return true;
            }
            alg.from[t].iter().filter(|&&b| b >= n).all(|&b| {
                let lhs = self.matrix(alg, b).mul(&self.matrix(alg, a));
                match alg.mul(a, b) {
                    Some(c) => lhs == self.matrix(alg, c),
                    None => lhs.is_zero(),
                }
            })
        })
    }
}
