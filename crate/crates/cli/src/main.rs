//! `frobcoh`: tables and cross-checks for low-degree cohomology of Borel
//! subgroups, their Frobenius kernels and the nilradical.

mod out;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use frobcoh::chevalley::Chevalley;
use frobcoh::classify::{Classified, Classifier, CohClass};
use frobcoh::cohomology::{ce_cohomology, h3_u1_char, kostant_check, Coeff};
use frobcoh::crosscheck::{b1_bridge, crosscheck, cube};
use frobcoh::expr::parse_weight;
use frobcoh::gamma::gamma_w_table_check;
use frobcoh::induction::{filtration_of, good_filtration_factors, GoodFiltration};
use frobcoh::par::{with_threads, Mode};
use frobcoh::rootsums::{catalog, enumerate, CatalogDiff, Form};
use frobcoh::rootsys::restricted_decompose;
use frobcoh::{Error, RootSystem, Weight};
use serde_json::{json, Value};

use out::{emit, omega, tchar, weight_text, Doc, Format};

#[derive(Parser)]
#[command(name = "frobcoh", version, about = "Low-degree cohomology of B, B_r, U_1 and u", propagate_version = true)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// output format
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// worker threads (0: one per core)
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// run every data-parallel loop on the calling thread
    #[arg(long, global = true)]
    sequential: bool,
    /// accept primes outside the admissible range and report every case that fires
    #[arg(long, global = true)]
    force: bool,
}

#[derive(Args, Clone)]
struct Sys {
    /// root system, e.g. `B3`, or a family letter together with --rank
    #[arg(long = "type")]
    ty: String,
    #[arg(long)]
    rank: Option<usize>,
    /// one prime or a comma-separated list
    #[arg(long, value_delimiter = ',', required = true)]
    p: Vec<u64>,
}

/// `3` or an inclusive range `2..4`
#[derive(Clone, Copy, Debug)]
struct Range(u32, u32);

impl std::str::FromStr for Range {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("`{t}` is not a non-negative integer"));
        let r = match s.split_once("..") {
            Some((a, b)) => Range(num(a)?, num(b.trim_start_matches('='))?),
            None => {
                let v = num(s)?;
                Range(v, v)
            }
        };
        if r.0 > r.1 {
            return Err(format!("empty range `{s}`"));
        }
        Ok(r)
    }
}

impl Range {
    fn iter(self) -> std::ops::RangeInclusive<u32> {
        self.0..=self.1
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CoeffArg {
    K,
    Ustar,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Kostant,
}

#[derive(Subcommand)]
enum Cmd {
    /// cohomology tables
    Coho {
        #[command(subcommand)]
        which: Coho,
    },
    /// solutions of the root-sum equations, compared with the known catalogs
    Rootsum {
        #[command(flatten)]
        sys: Sys,
        /// p-multiple, two-root, triple or simple (default: all)
        #[arg(long)]
        form: Option<String>,
    },
    /// gamma_w for every w of length 3, with the case table value
    Gamma {
        #[command(flatten)]
        sys: Sys,
    },
    /// closed forms against the brute-force Ext oracle
    Crosscheck {
        #[command(flatten)]
        sys: Sys,
        #[arg(long, default_value = "1")]
        r: Range,
        /// compare H^3(B_1, -) with the u-cohomology assembly instead
        #[arg(long)]
        bridge: bool,
    },
}

#[derive(Subcommand)]
enum Coho {
    /// H^n(u, k) or H^n(u, u*)
    U {
        #[command(flatten)]
        sys: Sys,
        #[arg(long = "deg", default_value = "0..3")]
        deg: Range,
        #[arg(long, value_enum, default_value = "k")]
        coeff: CoeffArg,
        #[arg(long, value_enum)]
        check: Option<Check>,
    },
    /// H^3(U_1, k) as a T-module
    U1 {
        #[command(flatten)]
        sys: Sys,
    },
    /// H^n(B_1, lambda), n <= 3; without --lambda, every restricted weight with a nonzero answer
    B1 {
        #[command(flatten)]
        sys: Sys,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long = "deg", default_value = "3")]
        deg: Range,
    },
    /// H^3(B_r, lambda), r >= 2; with --box, scan [-box, box]^n for case overlaps and stabilization
    Br {
        #[command(flatten)]
        sys: Sys,
        #[arg(long, default_value = "2")]
        r: Range,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long = "box")]
        bound: Option<i64>,
    },
    /// dim H^3(B, lambda); with --box, scan [-box, box]^n
    B {
        #[command(flatten)]
        sys: Sys,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long = "box")]
        bound: Option<i64>,
    },
    /// good-filtration factors of H^3(G_r, H^0(lambda))^(-r) for dominant lambda
    Gr {
        #[command(flatten)]
        sys: Sys,
        #[arg(long, default_value = "2")]
        r: Range,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long = "box")]
        bound: Option<i64>,
    },
}

struct Ctx {
    mode: Mode,
    force: bool,
}

type Run = Result<Vec<Doc>, Error>;

fn system(sys: &Sys) -> Result<RootSystem, Error> {
    let label = match sys.rank {
        Some(n) if sys.ty.len() == 1 => format!("{}{n}", sys.ty),
        Some(n) => {
            let rs = RootSystem::parse(&sys.ty)?;
            if rs.rank() != n {
                return Err(Error::InvalidInput(format!("--type {} has rank {}, not {n}", sys.ty, rs.rank())));
            }
            sys.ty.clone()
        }
        None => sys.ty.clone(),
    };
    RootSystem::parse(&label)
}

fn lambda_of(rs: &RootSystem, p: u64, s: &Option<String>) -> Result<Option<Weight>, Error> {
    s.as_deref().map(|s| parse_weight(rs, p, s)).transpose()
}

fn need_lambda_or_box(lambda: &Option<String>, bound: Option<i64>) -> Result<(), Error> {
    match (lambda, bound) {
        (None, None) => Err(Error::InvalidInput("give --lambda or --box".into())),
        (Some(_), Some(_)) => Err(Error::InvalidInput("--lambda and --box exclude each other".into())),
        (_, Some(b)) if b < 0 => Err(Error::InvalidInput("--box must be non-negative".into())),
        _ => Ok(()),
    }
}

fn class_json(rs: &RootSystem, c: &Classified) -> Value {
    let mut v = serde_json::to_value(c.class.to_user(rs)).expect("class serializes");
    v["dim"] = json!(c.class.dim(rs));
    v["label"] = json!(c.label);
    v
}

fn class_row(rs: &RootSystem, l: &Weight, c: &Classified) -> Vec<String> {
    vec![weight_text(rs, &rs.weight_to_user(l)), c.class.to_user(rs).to_string(), c.class.dim(rs).to_string(), c.label.clone()]
}

fn coho_u(ctx: &Ctx, rs: &RootSystem, p: u64, deg: Range, coeff: CoeffArg, check: Option<Check>) -> Run {
    let ch = Chevalley::new(rs)?;
    let mut docs = Vec::new();
    for n in deg.iter() {
        let n = n as usize;
        let mut doc = Doc::new(p, vec!["weight", "mult"]).degree(n);
        if n > rs.num_positive() {
            // no cochains above the top degree
            doc.result = match check {
                Some(_) => json!({"weights": [], "check": {"name": "kostant", "verdict": "match", "excess": [], "deficit": []}}),
                None => json!({"weights": []}),
            };
            docs.push(doc);
            continue;
        }
        match (coeff, check) {
            (CoeffArg::K, Some(Check::Kostant)) => {
                let rep = kostant_check(rs, &ch, p, n, ctx.mode)?;
                let (w, rows) = tchar(rs, &rep.computed);
                let (ex, _) = tchar(rs, &rep.excess);
                let (de, _) = tchar(rs, &rep.deficit);
                let verdict = if rep.matches() { "match" } else { "mismatch" };
                doc.result = json!({"weights": w, "check": {"name": "kostant", "verdict": verdict, "excess": ex, "deficit": de}});
                doc.header = vec!["weight", "mult", "kostant"];
                doc.rows = rows
                    .into_iter()
                    .zip(rep.computed.iter())
                    .map(|(mut row, (w, m))| {
                        let expected = rep.predicted.get(w);
                        row.push(if expected == *m { "ok".into() } else { format!("expected {expected}") });
                        row
                    })
                    .collect();
                for (w, m) in rep.deficit.iter() {
                    doc.rows.push(vec![weight_text(rs, &rs.weight_to_user(w)), "0".into(), format!("expected {m}")]);
                }
                doc.failed = !rep.matches();
            }
            (c, _) => {
                let coeff = if c == CoeffArg::K { Coeff::Trivial } else { Coeff::UStar };
                let t = ce_cohomology(rs, &ch, p, n, coeff, ctx.mode)?;
                let (w, rows) = tchar(rs, &t);
                doc.result = json!({"weights": w});
                doc.rows = rows;
            }
        }
        docs.push(doc);
    }
    Ok(docs)
}

fn coho_u1(ctx: &Ctx, rs: &RootSystem, p: u64) -> Run {
    let ch = Chevalley::new(rs)?;
    let t = h3_u1_char(rs, &ch, p, ctx.mode)?;
    let mut doc = Doc::new(p, vec!["weight", "mult"]).degree(3);
    let (w, rows) = tchar(rs, &t);
    doc.result = json!({"weights": w});
    doc.rows = rows;
    Ok(vec![doc])
}

fn b1_at(c: &Classifier, l: &Weight, n: usize) -> Result<Classified, Error> {
    if n == 3 {
        return c.classify_h3_b1_any(l);
    }
    let (l0, l1) = restricted_decompose(l, c.p() as i64);
    let k = c.low_degree_b1(&l0, n)?;
    Ok(Classified { class: k.class.shifted(&l1), label: k.label })
}

fn coho_b1(ctx: &Ctx, rs: &RootSystem, p: u64, lambda: &Option<String>, deg: Range) -> Run {
    let c = Classifier::new(rs, p, ctx.force)?;
    if deg.1 > 3 {
        return Err(Error::DegreeOutOfRange(deg.1 as usize));
    }
    let header = vec!["lambda", "class", "dim", "case"];
    let mut docs = Vec::new();
    for n in deg.iter() {
        let n = n as usize;
        let mut doc = Doc::new(p, header.clone()).r(1).degree(n);
        match lambda_of(rs, p, lambda)? {
            Some(l) => {
                let k = if ctx.force && n == 3 {
                    // every case that fires, in case several do
                    let (l0, l1) = restricted_decompose(&l, p as i64);
                    let hits = c.h3_b1_matches(&l0)?;
                    if hits.len() > 1 {
                        doc.result = json!({"lambda": omega(&rs.weight_to_user(&l)), "cases": hits.iter().map(|h| class_json(rs, &Classified { class: h.class.shifted(&l1), label: h.label.clone() })).collect::<Vec<_>>()});
                        doc.rows = hits.iter().map(|h| class_row(rs, &l, &Classified { class: h.class.shifted(&l1), label: h.label.clone() })).collect();
                        docs.push(doc);
                        continue;
                    }
                    b1_at(&c, &l, n)?
                } else {
                    b1_at(&c, &l, n)?
                };
                doc.result = class_json(rs, &k);
                doc.rows.push(class_row(rs, &l, &k));
            }
            None => {
                let mut list = Vec::new();
                for l in cube(rs.rank(), 0, p as i64 - 1) {
                    let hits: Vec<Classified> = if n == 3 && ctx.force { c.h3_b1_matches(&l)? } else { vec![b1_at(&c, &l, n)?] };
                    for k in hits.into_iter().filter(|k| k.class != CohClass::Zero) {
                        let mut v = class_json(rs, &k);
                        v["lambda"] = omega(&rs.weight_to_user(&l));
                        list.push(v);
                        doc.rows.push(class_row(rs, &l, &k));
                    }
                }
                doc.result = json!({"nonzero": list});
            }
        }
        docs.push(doc);
    }
    Ok(docs)
}

fn scan_doc(c: &Classifier, rs: &RootSystem, p: u64, bound: i64, r_max: u32) -> Run {
    if r_max < 2 {
        return Err(Error::InvalidInput("the scan needs r >= 2".into()));
    }
    let rep = c.scan_box(bound, r_max, r_max.min(6))?;
    let mut doc = Doc::new(p, vec!["item", "value"]).r(r_max).degree(3);
    let conflicts: Vec<Value> = rep
        .conflicts
        .iter()
        .map(|(l, r, d)| json!({"lambda": omega(&rs.weight_to_user(l)), "r": r, "cases": d}))
        .collect();
    let unstable: Vec<Value> = rep.unstable.iter().map(|l| omega(&rs.weight_to_user(l))).collect();
    doc.result = json!({
        "box": bound,
        "hit": rep.hit,
        "conflicts": conflicts,
        "unstable": unstable,
        "max_b_dim": rep.max_b_dim,
        "b_cases": rep.b_cases.iter().map(|(k, n)| json!({"label": k, "count": n})).collect::<Vec<_>>(),
    });
    doc.rows.push(vec!["box".into(), bound.to_string()]);
    doc.rows.push(vec!["weights hit".into(), rep.hit.to_string()]);
    doc.rows.push(vec!["case conflicts".into(), rep.conflicts.len().to_string()]);
    doc.rows.push(vec!["not stabilized by r = 6".into(), rep.unstable.len().to_string()]);
    doc.rows.push(vec!["max dim H^3(B, lambda)".into(), rep.max_b_dim.to_string()]);
    for (k, n) in &rep.b_cases {
        doc.rows.push(vec![k.clone(), n.to_string()]);
    }
    for (l, r, d) in rep.conflicts.iter().take(20) {
        doc.rows.push(vec![format!("conflict at {} r={r}", rs.weight_to_user(l)), d.clone()]);
    }
    doc.failed = !rep.passes();
    Ok(vec![doc])
}

fn coho_br(ctx: &Ctx, rs: &RootSystem, p: u64, rr: Range, lambda: &Option<String>, bound: Option<i64>) -> Run {
    need_lambda_or_box(lambda, bound)?;
    let c = Classifier::new(rs, p, ctx.force)?;
    if let Some(b) = bound {
        return scan_doc(&c, rs, p, b, rr.1);
    }
    let l = lambda_of(rs, p, lambda)?.expect("checked");
    let mut docs = Vec::new();
    for r in rr.iter() {
        let mut doc = Doc::new(p, vec!["lambda", "class", "dim", "case"]).r(r).degree(3);
        let hits = if ctx.force { c.h3_br_matches(&l, r)? } else { vec![c.classify_h3_br(&l, r)?] };
        let hits: Vec<Classified> = if hits.is_empty() { vec![c.classify_h3_br(&l, r)?] } else { hits };
        doc.result = if hits.len() == 1 { class_json(rs, &hits[0]) } else { json!({"cases": hits.iter().map(|h| class_json(rs, h)).collect::<Vec<_>>()}) };
        doc.rows = hits.iter().map(|h| class_row(rs, &l, h)).collect();
        docs.push(doc);
    }
    Ok(docs)
}

fn coho_b(ctx: &Ctx, rs: &RootSystem, p: u64, lambda: &Option<String>, bound: Option<i64>) -> Run {
    need_lambda_or_box(lambda, bound)?;
    let c = Classifier::new(rs, p, ctx.force)?;
    if let Some(b) = bound {
        let mut docs = scan_doc(&c, rs, p, b, 8)?;
        docs[0].r = None;
        return Ok(docs);
    }
    let l = lambda_of(rs, p, lambda)?.expect("checked");
    let mut doc = Doc::new(p, vec!["lambda", "dim", "case"]).degree(3);
    let hits = if ctx.force { c.h3_b_matches(&l)? } else { Vec::new() };
    if hits.len() > 1 {
        doc.result = json!({"cases": hits.iter().map(|(s, d)| json!({"dim": d, "label": s})).collect::<Vec<_>>()});
        doc.rows = hits.iter().map(|(s, d)| vec![weight_text(rs, &rs.weight_to_user(&l)), d.to_string(), s.clone()]).collect();
    } else {
        let (d, s) = c.classify_h3_b(&l)?;
        doc.result = json!({"dim": d, "label": s});
        doc.rows.push(vec![weight_text(rs, &rs.weight_to_user(&l)), d.to_string(), s]);
    }
    Ok(vec![doc])
}

fn filtration_json(rs: &RootSystem, f: &GoodFiltration) -> Value {
    let factors: Vec<Value> = f
        .factors
        .iter()
        .map(|(mu, m)| {
            let d = frobcoh::induction::weyl_dim(rs, mu).expect("factors are dominant");
            json!({"omega": omega(&rs.weight_to_user(mu)), "mult": m, "dim": d.to_string()})
        })
        .collect();
    let dropped: Vec<Value> = f.dropped.iter().map(|w| omega(&rs.weight_to_user(w))).collect();
    json!({"factors": factors, "dropped": dropped, "total_dim": f.total_dim.to_string()})
}

fn coho_gr(ctx: &Ctx, rs: &RootSystem, p: u64, rr: Range, lambda: &Option<String>, bound: Option<i64>) -> Run {
    need_lambda_or_box(lambda, bound)?;
    let c = Classifier::new(rs, p, ctx.force)?;
    let mut docs = Vec::new();
    for r in rr.iter() {
        if r == 0 {
            return Err(Error::InvalidInput("r must be at least 1".into()));
        }
        let mut doc = Doc::new(p, vec!["lambda", "H^0 factor", "mult", "dim"]).r(r).degree(3);
        if let Some(b) = bound {
            if r < 2 {
                return Err(Error::InvalidInput("the box scan needs r >= 2".into()));
            }
            let mut seen = Vec::new();
            c.br_instances(b, r, |l, _| {
                if l.is_dominant() {
                    seen.push(l);
                }
            })?;
            seen.sort();
            seen.dedup();
            let mut violations = Vec::new();
            let mut nonzero = 0usize;
            for l in &seen {
                let k = c.classify_h3_br(l, r)?;
                match filtration_of(rs, &k.class) {
                    Ok(f) => {
                        if f.total_dim != f.factor_dim_sum(rs)? {
                            violations.push(format!("{}: total dimension", rs.weight_to_user(l)));
                        }
                        nonzero += usize::from(!f.factors.is_empty());
                    }
                    Err(e) => violations.push(format!("{}: {e}", rs.weight_to_user(l))),
                }
            }
            doc.header = vec!["item", "value"];
            doc.rows.push(vec!["dominant weights with nonzero H^3(B_r)".into(), seen.len().to_string()]);
            doc.rows.push(vec!["with a nonzero filtration".into(), nonzero.to_string()]);
            doc.rows.push(vec!["violations".into(), violations.len().to_string()]);
            for v in &violations {
                doc.rows.push(vec!["violation".into(), v.clone()]);
            }
            doc.result = json!({"box": b, "dominant_hits": seen.len(), "nonzero": nonzero, "violations": violations});
            doc.failed = !violations.is_empty();
        } else {
            let l = lambda_of(rs, p, lambda)?.expect("checked");
            let f = good_filtration_factors(&c, &l, r)?;
            doc.result = filtration_json(rs, &f);
            let lt = weight_text(rs, &rs.weight_to_user(&l));
            for (mu, m) in &f.factors {
                let d = frobcoh::induction::weyl_dim(rs, mu)?;
                doc.rows.push(vec![lt.clone(), rs.weight_to_user(mu).to_string(), m.to_string(), d.to_string()]);
            }
        }
        docs.push(doc);
    }
    Ok(docs)
}

fn rootsum(ctx: &Ctx, rs: &RootSystem, p: u64, form: &Option<String>) -> Run {
    if !frobcoh::gate::is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not a prime")));
    }
    let forms = match form {
        Some(s) => vec![Form::parse(s).ok_or_else(|| Error::InvalidInput(format!("unknown form `{s}`")))?],
        None => Form::ALL.to_vec(),
    };
    let mut docs = Vec::new();
    for f in forms {
        let found = enumerate(rs, p, f, ctx.mode);
        let mut doc = Doc::new(p, vec!["form", "solution", "catalog"]);
        let expected = catalog(rs, f, p);
        let diff = expected.as_ref().map(|e| CatalogDiff::new(&found, e));
        let verdict = match &diff {
            None => "none",
            Some(d) if d.is_empty() => "match",
            Some(_) => "mismatch",
        };
        let render = |s: &frobcoh::rootsums::RootSumSolution| s.to_user(rs).render(rs, p);
        doc.result = json!({
            "form": f.name(),
            "solutions": found.iter().map(|s| json!({"text": render(s), "solution": s.to_user(rs)})).collect::<Vec<_>>(),
            "catalog": verdict,
            "missing": diff.as_ref().map(|d| d.missing.iter().map(render).collect::<Vec<_>>()),
            "extra": diff.as_ref().map(|d| d.extra.iter().map(render).collect::<Vec<_>>()),
        });
        for s in &found {
            doc.rows.push(vec![f.name().into(), render(s), verdict.into()]);
        }
        if let Some(d) = &diff {
            for s in &d.missing {
                doc.rows.push(vec![f.name().into(), render(s), "missing".into()]);
            }
            doc.failed = !d.is_empty();
        }
        if found.is_empty() && diff.as_ref().is_none_or(|d| d.missing.is_empty()) {
            doc.rows.push(vec![f.name().into(), "(no solutions)".into(), verdict.into()]);
        }
        docs.push(doc);
    }
    Ok(docs)
}

fn gamma(rs: &RootSystem, p: u64) -> Run {
    if !frobcoh::gate::is_prime(p) || p < 3 {
        return Err(Error::InvalidInput(format!("gamma_w needs a prime p >= 3, got {p}")));
    }
    let rep = gamma_w_table_check(rs, p);
    let mut doc = Doc::new(p, vec!["w", "gamma_w", "table", "case", "verdict"]);
    let word = |w: &[usize]| w.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join(" ");
    let mut rows = Vec::new();
    for row in &rep.rows {
        let verdict = if row.matches() {
            "match".to_string()
        } else if row.table_restricted {
            "mismatch".to_string()
        } else {
            "mismatch (table value not restricted)".to_string()
        };
        rows.push(json!({
            "word": row.word,
            "gamma": omega(&row.computed),
            "table": omega(&row.table),
            "case": row.label(),
            "match": row.matches(),
        }));
        doc.rows.push(vec![word(&row.word), row.computed.to_string(), row.table.to_string(), row.label(), verdict]);
    }
    doc.result = json!({"rows": rows, "mismatches": rep.mismatches().len()});
    doc.failed = !rep.passes();
    Ok(vec![doc])
}

fn cross(ctx: &Ctx, rs: &RootSystem, p: u64, rr: Range, bridge: bool) -> Run {
    let mut docs = Vec::new();
    if bridge {
        let (n, bad) = b1_bridge(rs, p, ctx.force, ctx.mode)?;
        let mut doc = Doc::new(p, vec!["lambda0", "closed form", "u-cohomology"]).r(1).degree(3);
        doc.result = json!({"checked": n, "mismatches": bad});
        doc.rows = bad.iter().map(|b| vec![b.lambda0.to_string(), b.classified.to_string(), b.computed.to_string()]).collect();
        doc.failed = !bad.is_empty();
        return Ok(vec![doc]);
    }
    for r in rr.iter() {
        let rep = crosscheck(rs, p, r, ctx.force, ctx.mode)?;
        let mut doc = Doc::new(p, vec!["item", "value"]).r(r);
        doc.rows.push(vec!["comparisons".into(), rep.checked.to_string()]);
        doc.rows.push(vec!["discrepancies".into(), rep.discrepancies.len().to_string()]);
        for d in &rep.discrepancies {
            doc.rows.push(vec!["discrepancy".into(), d.clone()]);
        }
        doc.failed = !rep.passes();
        doc.result = serde_json::to_value(&rep).expect("report serializes");
        docs.push(doc);
    }
    Ok(docs)
}

fn run(cli: &Cli) -> Result<(RootSystem, Vec<Doc>), Error> {
    let ctx = Ctx { mode: if cli.sequential { Mode::Sequential } else { Mode::Rayon }, force: cli.force };
    let sys = match &cli.cmd {
        Cmd::Coho { which } => match which {
            Coho::U { sys, .. } | Coho::U1 { sys } | Coho::B1 { sys, .. } | Coho::Br { sys, .. } | Coho::B { sys, .. } | Coho::Gr { sys, .. } => sys,
        },
        Cmd::Rootsum { sys, .. } | Cmd::Gamma { sys } | Cmd::Crosscheck { sys, .. } => sys,
    };
    let rs = system(sys)?;
    let mut primes = sys.p.clone();
    primes.sort();
    primes.dedup();
    let mut docs = Vec::new();
    for &p in &primes {
        let d = match &cli.cmd {
            Cmd::Coho { which } => match which {
                Coho::U { deg, coeff, check, .. } => {
                    if check.is_some() && *coeff == CoeffArg::Ustar {
                        return Err(Error::InvalidInput("--check kostant applies to trivial coefficients".into()));
                    }
                    coho_u(&ctx, &rs, p, *deg, *coeff, *check)?
                }
                Coho::U1 { .. } => coho_u1(&ctx, &rs, p)?,
                Coho::B1 { lambda, deg, .. } => coho_b1(&ctx, &rs, p, lambda, *deg)?,
                Coho::Br { r, lambda, bound, .. } => coho_br(&ctx, &rs, p, *r, lambda, *bound)?,
                Coho::B { lambda, bound, .. } => coho_b(&ctx, &rs, p, lambda, *bound)?,
                Coho::Gr { r, lambda, bound, .. } => coho_gr(&ctx, &rs, p, *r, lambda, *bound)?,
            },
            Cmd::Rootsum { form, .. } => rootsum(&ctx, &rs, p, form)?,
            Cmd::Gamma { .. } => gamma(&rs, p)?,
            Cmd::Crosscheck { r, bridge, .. } => cross(&ctx, &rs, p, *r, *bridge)?,
        };
        docs.extend(d);
    }
    Ok((rs, docs))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = with_threads(cli.threads, || run(&cli));
    match result {
        Ok((rs, docs)) => {
            if let Err(e) = emit(&rs, &docs, cli.format) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if docs.iter().any(|d| d.failed) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InternalInconsistency(_) | Error::FiltrationViolation(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
