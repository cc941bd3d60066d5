//! Acceptance sweep, criteria 1-10. Prints one PASS/FAIL line per criterion.
//!
//! Two criteria fail on the closed forms themselves, not on the code: the
//! F4, p = 3 entry of the H^2(u, k) table misses a class, and 57 entries of
//! the gamma_w case table violate the defining property of gamma_w. Those
//! lines print FAIL. The process exits non-zero when any criterion fails in
//! a way other than exactly these.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use frobcoh::chevalley::Chevalley;
use frobcoh::classify::{Classifier, CohClass};
use frobcoh::cohomology::{ce_cohomology, h1_table, h1_u_ustar, h1_u_ustar_table, h2_table, kostant_check, Coeff};
use frobcoh::crosscheck::{b1_bridge, crosscheck, cube};
use frobcoh::gamma::gamma_w_table_check;
use frobcoh::gate::PrimeGate;
use frobcoh::induction::{good_filtration_factors, weights_below_minus_one};
use frobcoh::par::Mode;
use frobcoh::rootsums::{catalog, claimed_empty, check_p_multiple, enumerate, lemma_threshold, CatalogDiff, Form};
use frobcoh::{RootSystem, TChar, Weight};

struct Outcome {
    pass: bool,
    detail: String,
    /// set when the failure is the documented one
    known: bool,
}

fn systems(labels: &[&str]) -> Vec<(RootSystem, Chevalley)> {
    labels
        .iter()
        .map(|t| {
            let rs = RootSystem::parse(t).unwrap();
            let ch = Chevalley::new(&rs).unwrap();
            (rs, ch)
        })
        .collect()
}

fn range(f: char, lo: usize, hi: usize) -> Vec<String> {
    (lo..=hi).map(|n| format!("{f}{n}")).collect()
}

fn labels(parts: &[Vec<String>]) -> Vec<String> {
    parts.concat()
}

fn strs(v: &[String]) -> Vec<&str> {
    v.iter().map(|s| s.as_str()).collect()
}

const MODE: Mode = Mode::Rayon;

fn c1() -> Outcome {
    let l = labels(&[range('A', 1, 6), range('B', 2, 6), range('C', 3, 6), range('D', 4, 6), vec!["E6".into(), "F4".into(), "G2".into()]]);
    let mut bad = Vec::new();
    let mut n = 0;
    let mut slowest = 0f64;
    for (rs, ch) in systems(&strs(&l)) {
        for p in [3u64, 5, 7, 11] {
            let t = Instant::now();
            let h = ce_cohomology(&rs, &ch, p, 1, Coeff::Trivial, MODE).unwrap();
            slowest = slowest.max(t.elapsed().as_secs_f64());
            n += 1;
            let simple: TChar = (0..rs.rank()).map(|i| (rs.simple_root(i), 1)).collect();
            // only G2 at p = 3 has a class beyond the simple roots
            let exceptional = rs.label() == "G2" && p == 3;
            if h != h1_table(&rs, p) || (h == simple) == exceptional {
                bad.push(format!("{} p={p}", rs.label()));
            }
        }
    }
    let pass = bad.is_empty() && slowest < 1.0;
    Outcome { pass, detail: format!("{n} cases, slowest {slowest:.4}s, mismatches {bad:?}"), known: false }
}

fn c2() -> Outcome {
    let l = labels(&[range('A', 2, 5), range('B', 2, 4), range('C', 3, 4), vec!["D4".into(), "F4".into(), "G2".into()]]);
    let mut bad = Vec::new();
    let mut n = 0;
    let mut slowest = 0f64;
    for (rs, ch) in systems(&strs(&l)) {
        for p in [3u64, 5, 7] {
            let t = Instant::now();
            let h = ce_cohomology(&rs, &ch, p, 2, Coeff::Trivial, MODE).unwrap();
            slowest = slowest.max(t.elapsed().as_secs_f64());
            n += 1;
            let want = h2_table(&rs, p);
            if h != want {
                bad.push((rs.label().to_string(), p, h.excess_over(&want), want.excess_over(&h)));
            }
        }
    }
    let detail = format!(
        "{n} cases, slowest {slowest:.4}s, mismatches: {}",
        if bad.is_empty() {
            "none".to_string()
        } else {
            bad.iter().map(|(t, p, ex, de)| format!("{t} p={p} extra {ex} missing {de}")).collect::<Vec<_>>().join("; ")
        }
    );
    // F4 at p = 3 carries one class beyond the table, at a1+2a2+3a3+3a4
    let f4 = RootSystem::parse("F4").unwrap();
    let known = bad.len() == 1 && {
        let (t, p, ex, de) = &bad[0];
        t == "F4" && *p == 3 && de.is_empty() && *ex == [(f4.root_lattice_to_omega(&[1, 2, 3, 3]), 1)].into_iter().collect()
    };
    Outcome { pass: bad.is_empty() && slowest < 10.0, detail, known }
}

fn c3() -> Outcome {
    let l = labels(&[range('A', 1, 4), range('B', 2, 4), range('C', 3, 4), vec!["D4".into(), "F4".into(), "G2".into()]]);
    let failures: BTreeSet<(&str, u64)> = [("A4", 3), ("D4", 3), ("G2", 3), ("B4", 3), ("B4", 5), ("F4", 3), ("F4", 5)].into_iter().collect();
    let t = Instant::now();
    let mut admitted = 0;
    let mut bad = Vec::new();
    for (rs, ch) in systems(&strs(&l)) {
        for p in [3u64, 5, 7, 11, 13] {
            let label = rs.label().to_string();
            let expect_excess = failures.contains(&(label.as_str(), p));
            if !PrimeGate::Kostant.admits(&rs, p) && !expect_excess {
                continue;
            }
            if rs.num_positive() < 3 {
                // no degree 3 at all; both sides vanish
                admitted += 1;
                continue;
            }
            let rep = kostant_check(&rs, &ch, p, 3, MODE).unwrap();
            if expect_excess {
                if rep.excess.is_empty() {
                    bad.push(format!("{label} p={p}: no extra classes"));
                }
            } else {
                admitted += 1;
                if !rep.matches() {
                    bad.push(format!("{label} p={p}: extra {} missing {}", rep.excess, rep.deficit));
                }
            }
        }
    }
    let secs = t.elapsed().as_secs_f64();
    Outcome {
        pass: bad.is_empty() && secs < 120.0,
        detail: format!("{admitted} admitted cases match, {} failure points show extra classes, {secs:.2}s, problems {bad:?}", failures.len()),
        known: false,
    }
}

fn c4() -> Outcome {
    let l = labels(&[range('A', 1, 4), range('B', 2, 4), range('C', 3, 4), vec!["D4".into(), "F4".into(), "G2".into()]]);
    let t = Instant::now();
    let mut n = 0;
    let mut bad = Vec::new();
    for (rs, ch) in systems(&strs(&l)) {
        for p in [5u64, 7, 11, 13] {
            if !PrimeGate::Standard.admits(&rs, p) {
                continue;
            }
            n += 1;
            if h1_u_ustar(&rs, &ch, p, MODE).unwrap() != h1_u_ustar_table(&rs) {
                bad.push(format!("{} p={p}", rs.label()));
            }
        }
    }
    let secs = t.elapsed().as_secs_f64();
    Outcome { pass: bad.is_empty() && secs < 60.0, detail: format!("{n} cases, {secs:.2}s, mismatches {bad:?}"), known: false }
}

fn c5() -> Outcome {
    let l = labels(&[
        range('A', 1, 7),
        range('B', 2, 6),
        range('C', 3, 6),
        range('D', 4, 6),
        vec!["E6".into(), "E7".into(), "E8".into(), "F4".into(), "G2".into()],
    ]);
    let t = Instant::now();
    let mut bad = Vec::new();
    let mut catalogs = 0;
    let mut empties = 0;
    let mut data = Vec::new();
    let mut c_counts = Vec::new();
    for t in &l {
        let rs = RootSystem::parse(t).unwrap();
        for p in [5u64, 7, 11, 13, 17] {
            if !check_p_multiple(&rs, p).is_empty() {
                bad.push(format!("{t} p={p}: p-multiple solutions"));
            }
            for form in [Form::TwoRoot, Form::Triple, Form::Simple] {
                let found = enumerate(&rs, p, form, MODE);
                if claimed_empty(&rs, form, p) {
                    empties += 1;
                    if !found.is_empty() {
                        bad.push(format!("{t} p={p} {form}: {} solutions where none are claimed", found.len()));
                    }
                }
                match catalog(&rs, form, p) {
                    Some(exp) => {
                        catalogs += 1;
                        let d = CatalogDiff::new(&found, &exp);
                        if !d.is_empty() {
                            bad.push(format!("{t} p={p} {form}: {} missing, {} extra", d.missing.len(), d.extra.len()));
                        }
                    }
                    None if !claimed_empty(&rs, form, p) && p <= lemma_threshold(&rs) => data.push(format!("{t}/{p}/{form}={}", found.len())),
                    None => {}
                }
                if form == Form::Triple && p == 5 && t.starts_with('C') {
                    c_counts.push(format!("{t}:{}", found.len()));
                }
            }
        }
    }
    let a4 = RootSystem::parse("A4").unwrap();
    let two = enumerate(&a4, 5, Form::Simple, MODE).len();
    if two != 2 {
        bad.push(format!("A4 p=5 simple: {two} solutions"));
    }
    let secs = t.elapsed().as_secs_f64();
    Outcome {
        pass: bad.is_empty() && secs < 300.0,
        detail: format!(
            "{catalogs} catalog comparisons exact, {empties} claimed-empty cases empty, C_n triple counts at p=5 {c_counts:?}, A4 simple {two}, below-threshold data {data:?}, {secs:.1}s, problems {bad:?}"
        ),
        known: false,
    }
}

fn c6() -> Outcome {
    let l = labels(&[range('A', 2, 6), range('B', 2, 6), range('C', 3, 6), range('D', 4, 6), vec!["E6".into(), "F4".into(), "G2".into()]]);
    let t = Instant::now();
    let mut rows = 0;
    let mut mism = Vec::new();
    let mut table_not_restricted = 0;
    for lab in &l {
        let rs = RootSystem::parse(lab).unwrap();
        for p in [3u64, 5, 7, 11, 13] {
            let rep = gamma_w_table_check(&rs, p);
            rows += rep.rows.len();
            for r in rep.mismatches() {
                table_not_restricted += usize::from(!r.table_restricted);
                mism.push(format!("{lab} p={p} {:?} {}: computed {} table {}", r.word, r.label(), r.computed, r.table));
            }
        }
    }
    let secs = t.elapsed().as_secs_f64();
    // the computed value is the unique one with w.0 + p gamma in X_1; each
    // disagreeing table value fails that property itself
    let known = mism.len() == 57 && table_not_restricted == 57;
    Outcome {
        pass: mism.is_empty() && secs < 60.0,
        detail: format!(
            "{rows} rows, {} disagree with the table ({table_not_restricted} of those table values are not restricted), {secs:.1}s: {}",
            mism.len(),
            mism.join("; ")
        ),
        known,
    }
}

fn c7() -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    let mut n = 0;
    for (lab, p) in [("A2", 5u64), ("B2", 5), ("A3", 5), ("B3", 7), ("C3", 5)] {
        let rs = RootSystem::parse(lab).unwrap();
        let (k, m) = b1_bridge(&rs, p, false, MODE).unwrap();
        n += k;
        if !m.is_empty() {
            bad.push(format!("{lab} p={p}: {m:?}"));
        }
    }
    let secs = t.elapsed().as_secs_f64();
    Outcome { pass: bad.is_empty() && secs < 600.0, detail: format!("{n} restricted weights, {secs:.2}s, mismatches {bad:?}"), known: false }
}

fn c8() -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    let mut n = 0;
    for (lab, p, r) in [("A1", 5u64, 1u32), ("A1", 5, 2), ("A2", 5, 1), ("B2", 5, 1)] {
        let rs = RootSystem::parse(lab).unwrap();
        let rep = crosscheck(&rs, p, r, false, MODE).unwrap();
        n += rep.checked;
        bad.extend(rep.discrepancies.iter().map(|d| format!("{lab} r={r}: {d}")));
    }
    let secs = t.elapsed().as_secs_f64();
    Outcome { pass: bad.is_empty() && secs < 1200.0, detail: format!("{n} comparisons, {secs:.2}s, discrepancies {bad:?}"), known: false }
}

fn c9() -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    let mut parts = Vec::new();
    for (lab, p) in [("A2", 5u64), ("B3", 7)] {
        let rs = RootSystem::parse(lab).unwrap();
        let c = Classifier::new(&rs, p, false).unwrap();
        let bound = 2 * (p as i64).pow(3);
        let rep = c.scan_box(bound, 8, 6).unwrap();
        parts.push(format!("{lab} p={p}: {} weights hit, max dim H^3(B) {}", rep.hit, rep.max_b_dim));
        if !rep.conflicts.is_empty() {
            bad.push(format!("{lab}: {} case conflicts, first {:?}", rep.conflicts.len(), rep.conflicts[0]));
        }
        if !rep.unstable.is_empty() {
            bad.push(format!("{lab}: {} weights do not stabilize, first {}", rep.unstable.len(), rep.unstable[0]));
        }
        if rep.max_b_dim != 2 {
            bad.push(format!("{lab}: max dim {}", rep.max_b_dim));
        }
    }
    let secs = t.elapsed().as_secs_f64();
    Outcome { pass: bad.is_empty() && secs < 600.0, detail: format!("{}, {secs:.1}s, problems {bad:?}", parts.join("; ")), known: false }
}

fn c10() -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    let mut parts = Vec::new();
    for (lab, p) in [("A2", 5u64), ("B3", 7)] {
        let rs = RootSystem::parse(lab).unwrap();
        let n = rs.rank();
        let c = Classifier::new(&rs, p, false).unwrap();
        let bound = 2 * (p as i64).pow(3);
        let pi = p as i64;
        let mut dom: BTreeMap<(u32, Weight), CohClass> = BTreeMap::new();
        // r = 1: nonzero classes come from restricted lambda_0 plus p lambda_1
        for l0 in cube(n, 0, pi - 1) {
            let k = c.classify_h3_b1_any(&l0).unwrap();
            if k.class == CohClass::Zero {
                continue;
            }
            for l1 in cube(n, 0, (bound - pi + 1) / pi) {
                let l = l0.add(&l1.scale(pi));
                if l.max_abs() <= bound {
                    dom.insert((1, l), CohClass::Zero);
                }
            }
        }
        for r in 2..=4 {
            c.br_instances(bound, r, |l, k| {
                if l.is_dominant() {
                    dom.insert((r, l), k.class);
                }
            })
            .unwrap();
        }
        let mut below = 0;
        for ((r, l), _) in &dom {
            match good_filtration_factors(&c, l, *r) {
                Ok(f) => {
                    if f.total_dim != f.factor_dim_sum(&rs).unwrap() {
                        bad.push(format!("{lab} r={r} {l}: total dimension"));
                    }
                    if *r > 1 && !f.dropped.is_empty() {
                        below += 1;
                    }
                }
                Err(e) => bad.push(format!("{lab} r={r} {l}: {e}")),
            }
        }
        let informational = dom.iter().filter(|((r, _), k)| *r > 1 && !weights_below_minus_one(&rs, k).is_empty()).count();
        parts.push(format!(
            "{lab} p={p}: {} dominant (lambda, r) with nonzero H^3, {below} with dropped factors, {informational} with a u* weight pairing below -1",
            dom.len()
        ));
    }
    let secs = t.elapsed().as_secs_f64();
    Outcome { pass: bad.is_empty() && secs < 300.0, detail: format!("{}, {secs:.1}s, problems {bad:?}", parts.join("; ")), known: false }
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 10] = [(1, c1), (2, c2), (3, c3), (4, c4), (5, c5), (6, c6), (7, c7), (8, c8), (9, c9), (10, c10)];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut unexpected = Vec::new();
    for (k, f) in criteria {
        if !filter.is_empty() && !filter.iter().any(|x| x == &k.to_string()) {
            continue;
        }
        let o = f();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {k}: {verdict}: {}", o.detail);
        if !o.pass && !o.known {
            unexpected.push(k);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
