//! Acceptance criteria. Each criterion prints one PASS/FAIL line; the process
//! exits non-zero if any criterion fails. All comparisons are exact integer
//! equalities (tolerance 0).

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use common::{acyclic_series, compare_instance, cyclic_series};
use nakct::cluster::{check_full, classify, search, search_with, ModuleSet, SearchMode, SearchOptions};
use nakct::kupisch::KupischSeries;
use nakct::modcat::{gldim_formula, DNakayama, StableIndex};
use nakct::oracle::Oracle;
use nakct::ordseq::OrdSeq;
use rayon::prelude::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn o(v: &[i64]) -> OrdSeq {
    OrdSeq::new(v.to_vec())
}

fn glued_example() -> Outcome {
    let alg = DNakayama::new("1,2,3,3,3,3,3,3,2,2,2,2,2".parse().unwrap(), 2).unwrap();
    let mut hits = Vec::new();
    for n in 2..=10 {
        let found = search(&alg, n).map_err(|e| e.to_string())?;
        if !found.is_empty() {
            hits.push((n, found));
        }
    }
    let [(5, found)] = hits.as_slice() else {
        return Err(format!("results at n = {:?}", hits.iter().map(|(n, _)| *n).collect::<Vec<_>>()));
    };
    if found.len() != 1 {
        return Err(format!("{} results at n = 5", found.len()));
    }
    let class = classify(&alg, 5);
    if class.subcategory.as_ref() != Some(&found[0]) {
        return Err("search result differs from classify".into());
    }
    Ok(format!("unique result at n=5 with {} modules, equal to classify", found[0].len()))
}

fn selfinjective_example() -> Outcome {
    let alg = DNakayama::new("~5,5,5".parse().unwrap(), 2).unwrap();
    let proj = alg.projectives();
    if proj.len() != 15 {
        return Err(format!("{} projectives", proj.len()));
    }
    let orbits = [[1, 2, 3], [1, 5, 6], [1, 2, 6], [1, 2, 4], [2, 5, 6], [1, 3, 6]];
    let want = ModuleSet::new(&alg, proj.into_iter().chain(orbits.iter().map(|v| o(v)))).unwrap();
    let found = search(&alg, 3).map_err(|e| e.to_string())?;
    if !found.contains(&want) {
        return Err(format!("expected set not among {} results", found.len()));
    }
    if !check_full(&want, 3).accepted {
        return Err("check_full rejects the expected set".into());
    }
    Ok(format!("expected set among {} results, check_full accepts", found.len()))
}

fn gldim_formula_matches_oracle() -> Outcome {
    let cases: Vec<(u32, usize, usize)> =
        (2..=5u32).flat_map(|l| (l as usize..=10).flat_map(move |m| (1..=2).map(move |d| (l, m, d)))).collect();
    let bad: Vec<String> = cases
        .par_iter()
        .filter_map(|&(l, m, d)| {
            let want = gldim_formula(l as u64, m as u64, d as u64) as usize;
            let s = KupischSeries::acyclic_homogeneous(l, m).unwrap();
            let got = Oracle::build(&s, d)
                .map_err(|e| e.to_string())
                .and_then(|or| or.gldim(want + 2).map_err(|e| e.to_string()));
            (got != Ok(want)).then(|| format!("ℓ={l} m={m} d={d}: formula {want}, oracle {got:?}"))
        })
        .collect();
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }
    let spot = |l, m| Oracle::build(&KupischSeries::acyclic_homogeneous(l, m).unwrap(), 2).unwrap().gldim(12);
    if spot(3, 8) != Ok(10) || spot(2, 6) != Ok(10) {
        return Err("spot values differ from 10".into());
    }
    Ok(format!("{} instances equal, gldim(A²_(3,8)) = gldim(A²_(2,6)) = 10", cases.len()))
}

fn formula_vs_oracle() -> Outcome {
    let mut instances = Vec::new();
    for w in 1..=7 {
        for s in acyclic_series(w, 4) {
            instances.extend((1..=2).map(|d| (s.clone(), d)));
        }
    }
    for w in 1..=4 {
        for s in cyclic_series(w, 5) {
            instances.extend((1..=2).map(|d| (s.clone(), d)));
        }
    }
    instances.push((KupischSeries::acyclic_homogeneous(3, 8).unwrap(), 2));
    instances.push(("1,2,3,3,3,3,3,3,2,2,2,2,2".parse().unwrap(), 2));
    instances.retain(|(s, d)| DNakayama::new(s.clone(), *d).unwrap().modules().len() <= 300);
    let results: Vec<Result<common::Compared, String>> =
        instances.par_iter().map(|(s, d)| compare_instance(s, *d, 4).map_err(|e| format!("{s} d={d}: {e}"))).collect();
    let mut totals = (0, 0, 0);
    for r in results {
        let c = r?;
        totals = (totals.0 + c.homs, totals.1 + c.exts, totals.2 + c.resolutions);
    }
    Ok(format!(
        "{} instances: {} hom, {} ext, {} resolution comparisons equal",
        instances.len(),
        totals.0,
        totals.1,
        totals.2
    ))
}

fn classification_sweep() -> Outcome {
    let mut cases = Vec::new();
    for w in 1..=8 {
        for s in acyclic_series(w, 4) {
            for d in 1..=2 {
                for n in 2..=6 {
                    cases.push((s.clone(), d, n));
                }
            }
        }
    }
    let partial = SearchOptions { mode: SearchMode::PartialOnly, ..SearchOptions::default() };
    let bad: Vec<String> = cases
        .par_iter()
        .filter_map(|(s, d, n)| {
            let alg = DNakayama::new(s.clone(), *d).unwrap();
            let full = match search(&alg, *n) {
                Ok(v) => v,
                Err(e) => return Some(format!("{s} d={d} n={n}: {e}")),
            };
            let class = classify(&alg, *n);
            let agree = match (&class.exists, &class.subcategory) {
                (Some(true), Some(c)) => full.as_slice() == std::slice::from_ref(c),
                (Some(false), None) => full.is_empty(),
                _ => false,
            };
            if !agree {
                return Some(format!("{s} d={d} n={n}: search {} results, classify {:?}", full.len(), class.exists));
            }
            match search_with(&alg, *n, &partial) {
                Ok(p) if p == full => None,
                Ok(p) => Some(format!("{s} d={d} n={n}: partial-only gives {} results", p.len())),
                Err(e) => Some(format!("{s} d={d} n={n}: partial-only {e}")),
            }
        })
        .collect();
    if !bad.is_empty() {
        return Err(format!("{} mismatches, first: {}", bad.len(), bad[0]));
    }
    Ok(format!("{} (series, d, n) cases agree", cases.len()))
}

fn selfinjective_necessity() -> Outcome {
    let mut cases = Vec::new();
    for l in 2..=5u32 {
        for m in 1..=6 {
            for d in 1..=2 {
                cases.push((l, m, d));
            }
        }
    }
    let bad: Vec<String> = cases
        .par_iter()
        .flat_map_iter(|&(l, m, d)| {
            let alg = DNakayama::new(KupischSeries::cyclic_homogeneous(l, m).unwrap(), d).unwrap();
            let mut bad = Vec::new();
            for n in 2..=6 {
                match search(&alg, n) {
                    Ok(found) if !found.is_empty() && !(m % n == 0 && (l as usize - 2).is_multiple_of(n)) => {
                        bad.push(format!("ℓ={l} m={m} d={d} n={n}: {} results", found.len()))
                    }
                    Ok(_) => {}
                    Err(e) => bad.push(format!("ℓ={l} m={m} d={d} n={n}: {e}")),
                }
            }
            for x in alg.modules().into_iter().filter(|x| !alg.is_projective(x)) {
                let mut t = StableIndex::Module(x.clone());
                for _ in 0..(l as usize + d - 1) {
                    t = t.module().map_or(StableIndex::Zero, |y| alg.tau(y));
                }
                if t != alg.syzygy_pow(&x, d + 1) {
                    bad.push(format!(
                        "ℓ={l} m={m} d={d}: τ_d^(ℓ+d−1) {x} = {t:?}, Ω^(d(d+1)) {x} = {:?}",
                        alg.syzygy_pow(&x, d + 1)
                    ));
                }
                let mut u = StableIndex::Module(x.clone());
                for _ in 0..(l as usize + d - 1) {
                    u = u.module().map_or(StableIndex::Zero, |y| alg.tau_inv(y));
                }
                if u != alg.cosyzygy_pow(&x, d + 1) {
                    bad.push(format!("ℓ={l} m={m} d={d}: τ_d^(−(ℓ+d−1)) {x} ≠ Ω^(−d(d+1)) {x}"));
                }
            }
            bad
        })
        .collect();
    if !bad.is_empty() {
        return Err(format!("{} violations, first: {}", bad.len(), bad[0]));
    }
    Ok(format!("{} algebras: necessity holds, τ_d^(ℓ+d−1) = Ω^(d(d+1)) and τ_d^(−(ℓ+d−1)) = Ω^(−d(d+1))", cases.len()))
}

fn d1_regression() -> Outcome {
    let mut checked = 0;
    for m in 2..=12 {
        let mut e = vec![1u32];
        e.extend(std::iter::repeat_n(2, m - 1));
        let alg = DNakayama::new(KupischSeries::new(e, false).unwrap(), 1).unwrap();
        for n in 2..=m {
            let class = classify(&alg, n);
            let rule = (m - 1) % n == 0;
            if class.exists != Some(rule) {
                return Err(format!("m={m} n={n}: classify {:?}, rule {rule}", class.exists));
            }
            if let Some(c) = class.subcategory {
                let mut want: BTreeSet<OrdSeq> = alg.projectives().into_iter().chain(alg.injectives()).collect();
                let mut cur = StableIndex::Module(o(&[1, 2]));
                while let StableIndex::Module(x) = cur {
                    cur = alg.tau_nd_inv(&x, n);
                    want.insert(x);
                }
                if c.modules() != want.into_iter().collect::<Vec<_>>().as_slice() {
                    return Err(format!("m={m} n={n}: subcategory differs from the τ_n^(−k) M(1,2) chain"));
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (m, n) cases match (m−1) mod n = 0"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("glued example: unique 10Z-CT subcategory", glued_example),
        ("self-injective ~5,5,5 example", selfinjective_example),
        ("global dimension formula vs oracle", gldim_formula_matches_oracle),
        ("module calculus vs oracle", formula_vs_oracle),
        ("acyclic classification sweep", classification_sweep),
        ("self-injective necessity", selfinjective_necessity),
        ("d=1 linear regression", d1_regression),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {}: PASS [{name}] {msg} ({secs:.1}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL [{name}] {msg} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
