//! Closed-form descriptions of H^n(B_1, lambda) for n <= 3, H^3(B_r, lambda)
//! for r >= 2 and dim H^3(B, lambda), each phrased as a finite list of weight
//! patterns which are matched by exact divisibility.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gamma::gamma_any;
use crate::gate::PrimeGate;
use crate::rootsys::{elements_of_length, RootSystem, WeylElement};
use crate::weight::{TChar, Weight};

/// A B/B_r-module of the shape occurring in degree 3, up to the twist.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "tag")]
pub enum CohClass {
    Zero,
    /// m copies of nu^(r)
    Line {
        nu: Weight,
        #[serde(rename = "twist")]
        r: u32,
        mult: u8,
    },
    /// (u* (x) nu)^(r)
    UStarTensor {
        nu: Weight,
        #[serde(rename = "twist")]
        r: u32,
    },
}

impl CohClass {
    pub fn line(nu: Weight, r: u32) -> Self {
        CohClass::Line { nu, r, mult: 1 }
    }

    pub fn dim(&self, rs: &RootSystem) -> u64 {
        match self {
            CohClass::Zero => 0,
            CohClass::Line { mult, .. } => *mult as u64,
            CohClass::UStarTensor { .. } => rs.num_positive() as u64,
        }
    }

    /// T-character: p^r nu for a line, p^r (beta + nu) over positive roots
    /// beta for u* (x) nu.
    pub fn character(&self, rs: &RootSystem, p: u64) -> TChar {
        match self {
            CohClass::Zero => TChar::new(),
            CohClass::Line { nu, r, mult } => [(nu.scale(pow(p, *r)), *mult as u64)].into_iter().collect(),
            CohClass::UStarTensor { nu, r } => {
                let q = pow(p, *r);
                let mut t = TChar::new();
                for i in 0..rs.num_positive() {
                    t.add(rs.root_omega(i).add(nu).scale(q), 1);
                }
                t
            }
        }
    }

    /// Dimension of the B-fixed points. A line contributes only when it is
    /// trivial; the B-socle of u* (x) nu is spanned by the simple-root weight
    /// vectors, so it contributes one dimension exactly when -nu is simple.
    pub fn invariant_dim(&self, rs: &RootSystem) -> u64 {
        match self {
            CohClass::Zero => 0,
            CohClass::Line { nu, mult, .. } => if nu.is_zero() { *mult as u64 } else { 0 },
            CohClass::UStarTensor { nu, .. } => {
                let neg = nu.neg();
                u64::from((0..rs.rank()).any(|i| rs.simple_root(i) == neg))
            }
        }
    }

    /// Twist by p lambda_1 as for lambda = lambda_0 + p lambda_1 (r = 1 only).
    pub fn shifted(&self, lambda1: &Weight) -> Self {
        match self {
            CohClass::Zero => CohClass::Zero,
            CohClass::Line { nu, r, mult } => CohClass::Line { nu: nu.add(lambda1), r: *r, mult: *mult },
            CohClass::UStarTensor { nu, r } => CohClass::UStarTensor { nu: nu.add(lambda1), r: *r },
        }
    }

    pub fn to_user(&self, rs: &RootSystem) -> Self {
        match self {
            CohClass::Zero => CohClass::Zero,
            CohClass::Line { nu, r, mult } => CohClass::Line { nu: rs.weight_to_user(nu), r: *r, mult: *mult },
            CohClass::UStarTensor { nu, r } => CohClass::UStarTensor { nu: rs.weight_to_user(nu), r: *r },
        }
    }
}

impl fmt::Display for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CohClass::Zero => write!(f, "0"),
            CohClass::Line { nu, r, mult: 1 } => write!(f, "{nu}^({r})"),
            CohClass::Line { nu, r, mult } => write!(f, "{mult} x {nu}^({r})"),
            CohClass::UStarTensor { nu, r } => write!(f, "(u* (x) {nu})^({r})"),
        }
    }
}

fn pow(p: u64, e: u32) -> i64 {
    (p as i64).pow(e)
}

/// A classification together with the case of the closed form that fired.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Classified {
    pub class: CohClass,
    pub label: String,
}

impl Classified {
    fn zero(label: &str) -> Self {
        Classified { class: CohClass::Zero, label: label.to_string() }
    }
}

/// The part of lambda other than p^r nu, and what it produces.
#[derive(Debug, Clone)]
pub struct Pattern {
    /// case number in the closed form, 1-based
    pub family: u8,
    pub shift: Weight,
    /// 0 for u* (x) nu, else the multiplicity of nu
    pub mult: u8,
}

/// Matches weights against the closed forms for one root system and prime.
pub struct Classifier<'a> {
    rs: &'a RootSystem,
    p: u64,
    force: bool,
    /// w.0 for l(w) = 2, 3
    dot2: Vec<Weight>,
    dot3: Vec<(WeylElement, Weight)>,
    /// restricted weights with a non-zero H^3(B_1, -)
    b1: HashMap<Weight, Vec<Classified>>,
}

impl<'a> Classifier<'a> {
    /// Fails with a prime-gate error unless `force` is set.
    pub fn new(rs: &'a RootSystem, p: u64, force: bool) -> Result<Self> {
        if !crate::gate::is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not a prime")));
        }
        if !force {
            PrimeGate::Standard.check(rs, p)?;
        }
        let zero = Weight::zero(rs.rank());
        let dot2 = elements_of_length(rs, 2).iter().map(|w| rs.dot_action(w, &zero)).collect();
        let dot3: Vec<(WeylElement, Weight)> =
            elements_of_length(rs, 3).into_iter().map(|w| {
                let d = rs.dot_action(&w, &zero);
                (w, d)
            }).collect();
        let mut b1: HashMap<Weight, Vec<Classified>> = HashMap::new();
        let pi = p as i64;
        for (w, d) in &dot3 {
            let g = gamma_any(rs, w, p).gamma;
            b1.entry(d.add(&g.scale(pi))).or_default().push(Classified {
                class: CohClass::line(g, 1),
                label: "B1 case 1".into(),
            });
        }
        for a in 0..rs.rank() {
            let om = rs.fundamental(a);
            b1.entry(om.scale(pi).sub(&rs.simple_root(a))).or_default().push(Classified {
                class: CohClass::UStarTensor { nu: om, r: 1 },
                label: "B1 case 2".into(),
            });
        }
        Ok(Classifier { rs, p, force, dot2, dot3, b1 })
    }

    pub fn root_system(&self) -> &RootSystem {
        self.rs
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    fn restricted(&self, l: &Weight) -> Result<()> {
        if l.rank() != self.rs.rank() {
            return Err(Error::InvalidInput(format!("weight {l} has the wrong rank")));
        }
        if !l.0.iter().all(|&c| (0..self.p as i64).contains(&c)) {
            return Err(Error::InvalidInput(format!("weight {l} is not restricted for p = {}", self.p)));
        }
        Ok(())
    }

    fn unique(&self, mut hits: Vec<Classified>, what: &str, otherwise: &str) -> Result<Classified> {
        hits.sort();
        hits.dedup_by(|a, b| a.class == b.class);
        match hits.len() {
            0 => Ok(Classified::zero(otherwise)),
            1 => Ok(hits.pop().unwrap()),
            _ if self.force => Ok(hits.swap_remove(0)),
            _ => Err(Error::InternalInconsistency(format!(
                "{what}: several cases fire: {}",
                hits.iter().map(|h| format!("{} -> {}", h.label, h.class)).collect::<Vec<_>>().join("; ")
            ))),
        }
    }

    /// H^n(B_1, lambda_0) for n = 0, 1, 2 and restricted lambda_0.
    pub fn low_degree_b1(&self, l0: &Weight, n: usize) -> Result<Classified> {
        self.restricted(l0)?;
        let rs = self.rs;
        let pi = self.p as i64;
        let label = format!("B1 degree {n}");
        let mut hits = Vec::new();
        match n {
            0 => {
                if l0.is_zero() {
                    hits.push(CohClass::line(l0.clone(), 1));
                }
            }
            1 => {
                for a in 0..rs.rank() {
                    let om = rs.fundamental(a);
                    if *l0 == om.scale(pi).sub(&rs.simple_root(a)) {
                        hits.push(CohClass::line(om, 1));
                    }
                }
            }
            2 => {
                if l0.is_zero() {
                    hits.push(CohClass::UStarTensor { nu: l0.clone(), r: 1 });
                }
                for d in &self.dot2 {
                    if let Some(g) = l0.sub(d).div_exact(pi) {
                        hits.push(CohClass::line(g, 1));
                    }
                }
            }
            _ => return Err(Error::DegreeOutOfRange(n)),
        }
        let hits = hits.into_iter().map(|class| Classified { class, label: label.clone() }).collect();
        self.unique(hits, &format!("H^{n}(B_1, {l0})"), &label)
    }

    /// Every case of H^3(B_1, lambda_0) that fires, for restricted lambda_0.
    pub fn h3_b1_matches(&self, l0: &Weight) -> Result<Vec<Classified>> {
        self.restricted(l0)?;
        Ok(self.b1.get(l0).cloned().unwrap_or_default())
    }

    /// H^3(B_1, lambda_0) for restricted lambda_0.
    pub fn classify_h3_b1(&self, l0: &Weight) -> Result<Classified> {
        let hits = self.h3_b1_matches(l0)?;
        self.unique(hits, &format!("H^3(B_1, {l0})"), "B1 otherwise")
    }

    /// H^3(B_1, lambda) for any lambda, via lambda = lambda_0 + p lambda_1.
    pub fn classify_h3_b1_any(&self, l: &Weight) -> Result<Classified> {
        let (l0, l1) = crate::rootsys::restricted_decompose(l, self.p as i64);
        let c = self.classify_h3_b1(&l0)?;
        Ok(Classified { class: c.class.shifted(&l1), label: c.label })
    }

    fn simple(&self, a: usize) -> Weight {
        self.rs.simple_root(a)
    }

    /// The eleven shapes of H^3(B_r, lambda), r >= 2, without the p^r nu.
    pub fn br_patterns(&self, r: u32) -> Vec<Pattern> {
        let rs = self.rs;
        let n = rs.rank();
        let q = |e: u32| pow(self.p, e);
        let mut v = Vec::new();
        let mut push = |family: u8, shift: Weight, mult: u8| v.push(Pattern { family, shift, mult });
        let adjacent = |a: usize, b: usize| rs.adjacent(a, b);
        for l in 0..r {
            for a in 0..n {
                push(1, self.simple(a).scale(-q(l)), 0);
            }
            for (_, d) in &self.dot3 {
                push(2, d.scale(q(l)), 1);
            }
        }
        for m in 0..r {
            for l in 0..m {
                for a in 0..n {
                    for d in &self.dot2 {
                        push(3, d.scale(q(l)).sub(&self.simple(a).scale(q(m))), 1);
                        push(4, d.scale(q(m)).sub(&self.simple(a).scale(q(l))), 1);
                    }
                }
            }
        }
        for l in 1..r {
            for a in 0..n {
                for b in 0..n {
                    push(5, self.simple(b).scale(-q(l)).sub(&self.simple(a)), 1);
                }
            }
        }
        for m in 1..r {
            for l in 1..m {
                for a in 0..n {
                    for b in 0..n {
                        push(6, self.simple(b).scale(-q(m)).sub(&self.simple(a).scale(q(l))), 2);
                    }
                }
            }
        }
        for k in 0..r {
            for m in 0..k {
                for l in 0..m {
                    for a in 0..n {
                        for b in 0..n {
                            for c in 0..n {
                                let s = self.simple(c).scale(q(k)).add(&self.simple(b).scale(q(m))).add(&self.simple(a).scale(q(l)));
                                push(7, s.neg(), 1);
                            }
                        }
                    }
                }
            }
        }
        for l in 1..r {
            for a in 0..n {
                for b in a + 1..n {
                    let s = self.simple(a).add(&self.simple(b)).scale(-q(l));
                    if adjacent(a, b) {
                        push(10, s, 1);
                    } else {
                        push(8, s, 2);
                    }
                }
                push(9, self.simple(a).scale(-2 * q(l)), 1);
            }
            for a in 0..n {
                for b in 0..n {
                    if adjacent(a, b) {
                        let d = rs.dot_word(&[a, b], &Weight::zero(n));
                        push(11, d.scale(q(l)), 1);
                    }
                }
            }
        }
        v
    }

    fn check_r(&self, r: u32) -> Result<()> {
        if r < 2 {
            return Err(Error::InvalidInput("the B_r closed form needs r >= 2".into()));
        }
        if (self.p as f64).powi(r as i32) > 1e15 {
            return Err(Error::Overflow(format!("p^r with p = {}, r = {r}", self.p)));
        }
        Ok(())
    }

    /// Every case of H^3(B_r, lambda) that fires.
    pub fn h3_br_matches(&self, l: &Weight, r: u32) -> Result<Vec<Classified>> {
        self.check_r(r)?;
        if l.rank() != self.rs.rank() {
            return Err(Error::InvalidInput(format!("weight {l} has the wrong rank")));
        }
        let q = pow(self.p, r);
        let mut hits: Vec<Classified> = self
            .br_patterns(r)
            .iter()
            .filter_map(|pat| {
                let nu = l.sub(&pat.shift).div_exact(q)?;
                Some(Classified { class: br_class(pat, nu, r), label: format!("Br case {}", pat.family) })
            })
            .collect();
        hits.sort();
        hits.dedup();
        Ok(hits)
    }

    pub fn classify_h3_br(&self, l: &Weight, r: u32) -> Result<Classified> {
        let hits = self.h3_br_matches(l, r)?;
        self.unique(hits, &format!("H^3(B_{r}, {l})"), "Br otherwise")
    }

    /// The ten shapes of H^3(B, lambda) with every exponent at most `e_max`,
    /// as (case, weight, dimension).
    pub fn b_patterns(&self, e_max: u32) -> Vec<(u8, Weight, u64)> {
        let rs = self.rs;
        let n = rs.rank();
        let q = |e: u32| pow(self.p, e);
        let mut v = Vec::new();
        let top = e_max + 1;
        for l in 0..top {
            for (_, d) in &self.dot3 {
                v.push((1, d.scale(q(l)), 1));
            }
        }
        for m in 0..top {
            for l in 0..m {
                for a in 0..n {
                    for d in &self.dot2 {
                        v.push((2, d.scale(q(l)).sub(&self.simple(a).scale(q(m))), 1));
                        v.push((3, d.scale(q(m)).sub(&self.simple(a).scale(q(l))), 1));
                    }
                }
            }
        }
        for l in 1..top {
            for a in 0..n {
                for b in 0..n {
                    v.push((4, self.simple(b).scale(-q(l)).sub(&self.simple(a)), 1));
                }
            }
        }
        for m in 1..top {
            for l in 1..m {
                for a in 0..n {
                    for b in 0..n {
                        v.push((5, self.simple(b).scale(-q(m)).sub(&self.simple(a).scale(q(l))), 2));
                    }
                }
            }
        }
        for k in 0..top {
            for m in 0..k {
                for l in 0..m {
                    for a in 0..n {
                        for b in 0..n {
                            for c in 0..n {
                                let s = self.simple(c).scale(q(k)).add(&self.simple(b).scale(q(m))).add(&self.simple(a).scale(q(l)));
                                v.push((6, s.neg(), 1));
                            }
                        }
                    }
                }
            }
        }
        for l in 1..top {
            for a in 0..n {
                for b in a + 1..n {
                    let s = self.simple(a).add(&self.simple(b)).scale(-q(l));
                    if rs.adjacent(a, b) {
                        v.push((8, s, 1));
                    } else {
                        v.push((7, s, 2));
                    }
                }
                v.push((9, self.simple(a).scale(-2 * q(l)), 1));
            }
            for a in 0..n {
                for b in 0..n {
                    if rs.adjacent(a, b) {
                        v.push((10, rs.dot_word(&[a, b], &Weight::zero(n)).scale(q(l)), 1));
                    }
                }
            }
        }
        v
    }

    /// Largest exponent that can occur in a pattern equal to a weight of
    /// this size: every pattern with top exponent e has a coordinate of
    /// absolute value at least p^e.
    pub fn exponent_bound(&self, max_abs: i64) -> u32 {
        let mut e = 0;
        let mut q = self.p as i64;
        while q <= max_abs.max(1) {
            e += 1;
            q = q.saturating_mul(self.p as i64);
        }
        e + 1
    }

    /// Every case of dim H^3(B, lambda) that fires, as (label, dimension).
    pub fn h3_b_matches(&self, l: &Weight) -> Result<Vec<(String, u64)>> {
        if l.rank() != self.rs.rank() {
            return Err(Error::InvalidInput(format!("weight {l} has the wrong rank")));
        }
        if l.is_zero() {
            return Ok(Vec::new());
        }
        let e = self.exponent_bound(l.max_abs());
        if (self.p as f64).powi(e as i32 + 1) > 1e15 {
            return Err(Error::Overflow(format!("weight {l} is too large")));
        }
        let mut hits: Vec<(String, u64)> =
            self.b_patterns(e).into_iter().filter(|(_, w, _)| w == l).map(|(f, _, d)| (format!("B case {f}"), d)).collect();
        hits.sort();
        hits.dedup();
        Ok(hits)
    }

    /// dim H^3(B, lambda) and the case that fired.
    pub fn classify_h3_b(&self, l: &Weight) -> Result<(u64, String)> {
        let mut hits = self.h3_b_matches(l)?;
        hits.dedup_by(|a, b| a.1 == b.1);
        match hits.len() {
            0 => Ok((0, "B otherwise".into())),
            1 => Ok((hits[0].1, hits[0].0.clone())),
            _ if self.force => Ok((hits[0].1, hits[0].0.clone())),
            _ => Err(Error::InternalInconsistency(format!(
                "dim H^3(B, {l}): cases disagree: {}",
                hits.iter().map(|(s, d)| format!("{s} -> {d}")).collect::<Vec<_>>().join("; ")
            ))),
        }
    }
}

pub fn br_class(pat: &Pattern, nu: Weight, r: u32) -> CohClass {
    if pat.mult == 0 {
        CohClass::UStarTensor { nu, r }
    } else {
        CohClass::Line { nu, r, mult: pat.mult }
    }
}

/// Outcome of matching every weight of a coordinate box.
#[derive(Debug, Clone, Default, Serialize)]
pub struct BoxReport {
    /// weights where some case fires, for some r or for B
    pub hit: usize,
    /// (weight, r or 0 for B, description) where cases with different
    /// outputs fire together
    pub conflicts: Vec<(Weight, u32, String)>,
    /// weights where no r0 <= `r0_max` gives agreement from r0 to `r_max`
    pub unstable: Vec<Weight>,
    pub max_b_dim: u64,
    /// histogram of the B cases
    pub b_cases: Vec<(String, usize)>,
}

impl BoxReport {
    pub fn passes(&self) -> bool {
        self.conflicts.is_empty() && self.unstable.is_empty()
    }
}

#[derive(Default)]
struct Hits {
    br: Vec<Vec<Classified>>,
    b: Vec<(u8, u64)>,
}

fn push_box(lo: &[i64], hi: &[i64], mut f: impl FnMut(&[i64])) {
    let n = lo.len();
    if lo.iter().zip(hi).any(|(a, b)| a > b) {
        return;
    }
    let mut cur = lo.to_vec();
    loop {
        f(&cur);
        let mut i = 0;
        while i < n {
            cur[i] += 1;
            if cur[i] <= hi[i] {
                break;
            }
            cur[i] = lo[i];
            i += 1;
        }
        if i == n {
            return;
        }
    }
}

impl<'a> Classifier<'a> {
    /// Every (lambda, case) of H^3(B_r, -) with lambda in [-bound, bound]^n.
    /// Weights not visited have H^3(B_r, lambda) = 0.
    pub fn br_instances(&self, bound: i64, r: u32, mut f: impl FnMut(Weight, Classified)) -> Result<()> {
        self.check_r(r)?;
        let q = pow(self.p, r);
        for pat in self.br_patterns(r) {
            let lo: Vec<i64> = pat.shift.0.iter().map(|&s| (-bound - s).div_euclid(q) + i64::from((-bound - s).rem_euclid(q) != 0)).collect();
            let hi: Vec<i64> = pat.shift.0.iter().map(|&s| (bound - s).div_euclid(q)).collect();
            push_box(&lo, &hi, |nu| {
                let nu = Weight(nu.to_vec());
                let l = pat.shift.add(&nu.scale(q));
                f(l, Classified { class: br_class(&pat, nu, r), label: format!("Br case {}", pat.family) });
            });
        }
        Ok(())
    }

    /// Scan [-bound, bound]^n: case disjointness for B_r (2 <= r <= r_max)
    /// and for B, and agreement of the B-fixed dimension of H^3(B_r, lambda)
    /// with dim H^3(B, lambda) from some r0 <= r0_max up to r_max.
    pub fn scan_box(&self, bound: i64, r_max: u32, r0_max: u32) -> Result<BoxReport> {
        for r in 2..=r_max {
            self.check_r(r)?;
        }
        let mut hits: HashMap<Weight, Hits> = HashMap::new();
        let slots = (r_max - 1) as usize;
        for r in 2..=r_max {
            self.br_instances(bound, r, |l, c| {
                let h = hits.entry(l).or_default();
                if h.br.is_empty() {
                    h.br = vec![Vec::new(); slots];
                }
                h.br[(r - 2) as usize].push(c);
            })?;
        }
        for (f, w, d) in self.b_patterns(self.exponent_bound(bound)) {
            if w.max_abs() <= bound {
                hits.entry(w).or_default().b.push((f, d));
            }
        }
        let mut rep = BoxReport { hit: hits.len(), ..Default::default() };
        let mut cases: HashMap<String, usize> = HashMap::new();
        let mut keys: Vec<&Weight> = hits.keys().collect();
        keys.sort();
        for l in keys {
            let h = &hits[l];
            let mut inv = vec![0u64; slots];
            for (k, list) in h.br.iter().enumerate() {
                let mut classes: Vec<&CohClass> = list.iter().map(|c| &c.class).collect();
                classes.sort();
                classes.dedup();
                if classes.len() > 1 {
                    let desc = list.iter().map(|c| format!("{} -> {}", c.label, c.class)).collect::<Vec<_>>().join("; ");
                    rep.conflicts.push((l.clone(), k as u32 + 2, desc));
                }
                inv[k] = classes.first().map_or(0, |c| c.invariant_dim(self.rs));
            }
            let mut dims: Vec<u64> = h.b.iter().map(|x| x.1).collect();
            dims.sort();
            dims.dedup();
            if dims.len() > 1 {
                let desc = h.b.iter().map(|(f, d)| format!("B case {f} -> {d}")).collect::<Vec<_>>().join("; ");
                rep.conflicts.push((l.clone(), 0, desc));
            }
            let dim_b = dims.first().copied().unwrap_or(0);
            if let Some(&(f, _)) = h.b.first() {
                *cases.entry(format!("B case {f}")).or_default() += 1;
            }
            rep.max_b_dim = rep.max_b_dim.max(dim_b);
            let inv_at = |r: u32| if h.br.is_empty() { 0 } else { inv[(r - 2) as usize] };
            let stable = (2..=r0_max.min(r_max)).any(|r0| (r0..=r_max).all(|r| inv_at(r) == dim_b));
            if !stable {
                rep.unstable.push(l.clone());
            }
        }
        let mut cases: Vec<(String, usize)> = cases.into_iter().collect();
        cases.sort();
        rep.b_cases = cases;
        Ok(rep)
    }
}

/// H^0(B_r, lambda): nonzero exactly when lambda is in p^r X(T).
pub fn h0_br(l: &Weight, p: u64, r: u32) -> CohClass {
    match l.div_exact(pow(p, r)) {
        Some(nu) => CohClass::line(nu, r),
        None => CohClass::Zero,
    }
}
