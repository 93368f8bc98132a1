//! Oracle sweep for `nakct verify`.

use std::collections::BTreeSet;

use nakct::kupisch::KupischSeries;
use nakct::modcat::DNakayama;
use nakct::oracle::{Oracle, OracleError, DEFAULT_CAP};
use rayon::prelude::*;
use serde::Serialize;

const MAX_REPORTED: usize = 20;

#[derive(Debug, Default, Serialize)]
pub struct Report {
    pub instances: usize,
    pub hom_checks: usize,
    pub ext_checks: usize,
    pub mismatch_count: usize,
    pub mismatches: Vec<String>,
    pub skipped: Vec<String>,
}

fn acyclic(width: usize, max_ell: u32) -> Vec<KupischSeries> {
    fn rec(cur: &mut Vec<u32>, width: usize, max_ell: u32, out: &mut Vec<KupischSeries>) {
        if cur.len() == width {
            out.extend(KupischSeries::new(cur.clone(), false).ok());
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
    rec(&mut vec![1], width, max_ell, &mut out);
    out
}

fn cyclic(width: usize, max_ell: u32) -> Vec<KupischSeries> {
    if max_ell < 2 {
        return Vec::new();
    }
    let mut out = BTreeSet::new();
    let mut cur = vec![2u32; width];
    loop {
        out.extend(KupischSeries::new(cur.clone(), true).ok());
        let Some(i) = cur.iter().position(|&e| e < max_ell) else {
            return out.into_iter().collect();
        };
        cur[..i].fill(2);
        cur[i] += 1;
    }
}

struct Counts {
    homs: usize,
    exts: usize,
    mismatches: Vec<String>,
}

fn compare(series: &KupischSeries, d: usize, max_k: usize, cap: usize) -> Result<Counts, OracleError> {
    let alg = DNakayama::new(series.clone(), d).expect("d ≥ 1");
    let oracle = Oracle::build_with_cap(series, d, cap)?;
    let mods = alg.modules();
    let reps = mods.iter().map(|x| oracle.build_module(x)).collect::<Result<Vec<_>, _>>()?;
    let max_i = max_k * d;
    let mut c = Counts { homs: 0, exts: 0, mismatches: Vec::new() };
    for (y, my) in mods.iter().zip(&reps) {
        let res = oracle.min_proj_resolution(my, max_i);
        for (x, mx) in mods.iter().zip(&reps) {
            let (got, want) = (oracle.hom_dim(my, mx), alg.hom_basis(y, x).len());
            if got != want {
                c.mismatches.push(format!("{series} d={d}: Hom({y},{x}) oracle {got}, formula {want}"));
            }
            c.homs += 1;
            for i in 1..=max_i {
                let got = oracle.ext_from_resolution(my, &res, mx, i);
                let want = if i % d == 0 { alg.ext_kd_dim(y, x, i / d) } else { 0 };
                if got != want {
                    c.mismatches.push(format!("{series} d={d}: Ext^{i}({y},{x}) oracle {got}, formula {want}"));
                }
                c.exts += 1;
            }
        }
    }
    Ok(c)
}

pub fn sweep(max_width: usize, max_ell: u32, max_d: usize, max_k: usize) -> Report {
    let cap = std::env::var("NAKCT_CAP").ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_CAP);
    let mut instances = Vec::new();
    for w in 1..=max_width {
        for s in acyclic(w, max_ell).into_iter().chain(cyclic(w, max_ell)) {
            instances.extend((1..=max_d).map(|d| (s.clone(), d)));
        }
    }
    let results: Vec<_> = instances.par_iter().map(|(s, d)| (s, d, compare(s, *d, max_k, cap))).collect();
    let mut report = Report { instances: instances.len(), ..Report::default() };
    for (s, d, r) in results {
        match r {
            Ok(c) => {
                report.hom_checks += c.homs;
                report.ext_checks += c.exts;
                report.mismatches.extend(c.mismatches);
            }
            Err(e) => report.skipped.push(format!("{s} d={d}: {e}")),
        }
    }
    report.mismatch_count = report.mismatches.len();
    report.mismatches.truncate(MAX_REPORTED);
    report
}
