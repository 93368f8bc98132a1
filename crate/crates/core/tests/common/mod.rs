#![allow(dead_code)]

use nakct::kupisch::KupischSeries;
use nakct::modcat::{DNakayama, StableIndex};
use nakct::oracle::Oracle;
use nakct::ordseq::OrdSeq;
use rayon::prelude::*;

/// All acyclic Kupisch series of the given width with entries at most `max_ell`.
pub fn acyclic_series(width: usize, max_ell: u32) -> Vec<KupischSeries> {
    fn rec(cur: &mut Vec<u32>, width: usize, max_ell: u32, out: &mut Vec<KupischSeries>) {
        if cur.len() == width {
            out.push(KupischSeries::new(cur.clone(), false).unwrap());
            return;
        }
        let prev = *cur.last().unwrap();
        for e in 2..=(prev + 1).min(max_ell) {
            cur.push(e);
            rec(cur, width, max_ell, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if width == 1 {
        out.push(KupischSeries::new(vec![1], false).unwrap());
        return out;
    }
    rec(&mut vec![1], width, max_ell, &mut out);
    out
}

/// All cyclic Kupisch series (canonical rotations, deduplicated).
pub fn cyclic_series(width: usize, max_ell: u32) -> Vec<KupischSeries> {
    let mut out: Vec<KupischSeries> = Vec::new();
    let mut cur = vec![2u32; width];
    loop {
        if let Ok(s) = KupischSeries::new(cur.clone(), true) {
            if !out.contains(&s) {
                out.push(s);
            }
        }
        let mut i = 0;
        loop {
            if i == width {
                return out;
            }
            if cur[i] < max_ell {
                cur[i] += 1;
                break;
            }
            cur[i] = 2;
            i += 1;
        }
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub struct Compared {
    pub homs: usize,
    pub exts: usize,
    pub resolutions: usize,
}

/// Compares the combinatorial module calculus with the oracle on one instance.
/// Checks supports, all Hom dimensions, Ext^{kd} for 1 ≤ k ≤ `max_k`, vanishing
/// of Ext^i for d ∤ i, and the first d terms of minimal resolutions.
pub fn compare_instance(series: &KupischSeries, d: usize, max_k: usize) -> Result<Compared, String> {
    let alg = DNakayama::new(series.clone(), d).unwrap();
    let oracle = Oracle::build(series, d).map_err(|e| format!("{series} d={d}: {e}"))?;
    let mods = alg.modules();
    let reps: Vec<_> = mods.iter().map(|x| oracle.build_module(x).unwrap()).collect();
    for (x, m) in mods.iter().zip(&reps) {
        let support = alg.support(x);
        for (v, mult) in &support {
            if m.dims()[oracle.vertex(v).unwrap()] != *mult {
                return Err(format!("{series} d={d}: support of {x} differs at {v}"));
            }
        }
        if m.dim() != support.values().sum::<usize>() {
            return Err(format!("{series} d={d}: dimension of {x} differs"));
        }
    }
    let max_i = max_k * d;
    let results: Vec<Result<Compared, String>> = mods
        .par_iter()
        .enumerate()
        .map(|(iy, y)| {
            let my = &reps[iy];
            let res = oracle.min_proj_resolution(my, max_i);
            let mut c = Compared::default();
            // Resolution terms.
            if !alg.is_projective(y) {
                let (terms, omega) = alg.proj_resolution(y).unwrap();
                for k in 0..d {
                    let expected: Vec<OrdSeq> =
                        if k < terms.len() { vec![alg.top_vertex(&terms[k])] } else { Vec::new() };
                    let got: Vec<OrdSeq> = res
                        .tops
                        .get(k)
                        .map(|t| {
                            t.iter()
                                .enumerate()
                                .flat_map(|(o, &n)| std::iter::repeat_n(oracle.quiver().vertices[o].clone(), n))
                                .collect()
                        })
                        .unwrap_or_default();
                    if got != expected {
                        return Err(format!("{series} d={d}: resolution of {y} step {k}: {got:?} vs {expected:?}"));
                    }
                }
                let om = res.syzygy(d).map(|m| m.dims().to_vec());
                let expected = match &omega {
                    StableIndex::Zero => None,
                    StableIndex::Module(z) => Some(oracle.build_module(z).unwrap().dims().to_vec()),
                };
                let om = om.filter(|v| v.iter().any(|&n| n > 0));
                if om != expected {
                    return Err(format!("{series} d={d}: Ω^d of {y} differs"));
                }
                c.resolutions += 1;
            }
            for (ix, x) in mods.iter().enumerate() {
                let mx = &reps[ix];
                let h = oracle.hom_dim(my, mx);
                if h != alg.hom_basis(y, x).len() {
                    return Err(format!("{series} d={d}: hom({y},{x}) oracle {h} vs {}", alg.hom_basis(y, x).len()));
                }
                c.homs += 1;
                for i in 1..=max_i {
                    let e = oracle.ext_from_resolution(my, &res, mx, i);
                    let expected = if i % d == 0 { alg.ext_kd_dim(y, x, i / d) } else { 0 };
                    if e != expected {
                        return Err(format!("{series} d={d}: Ext^{i}({y},{x}) oracle {e} vs {expected}"));
                    }
                    c.exts += 1;
                }
            }
            Ok(c)
        })
        .collect();
    let mut total = Compared::default();
    for r in results {
        let c = r?;
        total.homs += c.homs;
        total.exts += c.exts;
        total.resolutions += c.resolutions;
    }
    Ok(total)
}
