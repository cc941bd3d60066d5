//! Independent cross-check: Ext over the restricted enveloping algebra u(u)
//! (or the distribution algebra of U_r for A1), computed from a minimal free
//! resolution of the trivial module. Nothing here touches the
//! Chevalley-Eilenberg complex.

use std::collections::{BTreeMap, HashMap};

use crate::chevalley::Chevalley;
use crate::cohomology::Grade;
use crate::error::{Error, Result};
use crate::linalg::{reduce, Echelon, FpMatrix};
use crate::rootsys::{Family, RootSystem};
use crate::weight::{TChar, Weight};

type Vector = Vec<(usize, u64)>;

fn grade_add(a: &Grade, b: &Grade) -> Grade {
    let mut g = *a;
    for (x, y) in g.iter_mut().zip(b) {
        *x += y;
    }
    g
}

fn height(g: &Grade) -> i32 {
    g.iter().sum()
}

/// A finite-dimensional graded algebra with PBW basis x^e, 0 <= e_i < p,
/// described by left multiplication by each variable.
pub struct TruncatedAlgebra {
    p: u64,
    nvars: usize,
    var_grade: Vec<Grade>,
    dim: usize,
    /// lmul[i][b] = x_i * (basis element b)
    lmul: Vec<Vec<Vector>>,
    grade: Vec<Grade>,
    exps: Vec<Vec<u32>>,
}

impl TruncatedAlgebra {
    fn decode(p: u64, nvars: usize, mut idx: usize) -> Vec<u32> {
        (0..nvars)
            .map(|_| {
                let e = (idx as u64 % p) as u32;
                idx /= p as usize;
                e
            })
            .collect()
    }

    fn encode(p: u64, e: &[u32]) -> usize {
        e.iter().rev().fold(0usize, |acc, &x| acc * p as usize + x as usize)
    }

    fn skeleton(p: u64, var_grade: Vec<Grade>) -> Result<Self> {
        let nvars = var_grade.len();
        let dim = (p as usize)
            .checked_pow(nvars as u32)
            .filter(|&d| d <= 1 << 16)
            .ok_or_else(|| Error::ScopeExceeded(format!("algebra of dimension {p}^{nvars}")))?;
        let exps: Vec<Vec<u32>> = (0..dim).map(|i| Self::decode(p, nvars, i)).collect();
        let grade = exps
            .iter()
            .map(|e| {
                let mut g = [0i32; 8];
                for (i, &k) in e.iter().enumerate() {
                    for (x, y) in g.iter_mut().zip(&var_grade[i]) {
                        *x += k as i32 * y;
                    }
                }
                g
            })
            .collect();
        Ok(TruncatedAlgebra { p, nvars, var_grade, dim, lmul: Vec::new(), grade, exps })
    }

    /// k[x_0..x_{r-1}]/(x_i^p) with x_i of weight p^i alpha: the
    /// distribution algebra of the r-th Frobenius kernel of G_a.
    pub fn divided_powers(p: u64, r: usize) -> Result<Self> {
        let var_grade = (0..r)
            .map(|i| {
                let mut g = [0i32; 8];
                g[0] = p.pow(i as u32) as i32;
                g
            })
            .collect();
        let mut alg = Self::skeleton(p, var_grade)?;
        alg.lmul = (0..r)
            .map(|i| {
                (0..alg.dim)
                    .map(|b| {
                        let mut e = alg.exps[b].clone();
                        e[i] += 1;
                        if e[i] as u64 == p {
                            Vec::new()
                        } else {
                            vec![(Self::encode(p, &e), 1)]
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(alg)
    }

    /// u(u) for the nilradical spanned by negative root vectors, with
    /// PBW order the height order of the roots.
    pub fn restricted_enveloping(rs: &RootSystem, ch: &Chevalley, p: u64) -> Result<Self> {
        let m = rs.num_positive();
        let var_grade = (0..m)
            .map(|i| {
                let mut g = [0i32; 8];
                for (x, &y) in g.iter_mut().zip(rs.root(i)) {
                    *x = y as i32;
                }
                g
            })
            .collect();
        let mut alg = Self::skeleton(p, var_grade)?;
        let mut memo: HashMap<(usize, usize), Vector> = HashMap::new();
        let mut lmul = vec![vec![Vec::new(); alg.dim]; m];
        for (g, row) in lmul.iter_mut().enumerate() {
            for (b, slot) in row.iter_mut().enumerate() {
                *slot = alg.straighten(ch, g, b, &mut memo);
            }
        }
        alg.lmul = lmul;
        Ok(alg)
    }

    /// x_g * x^e by commuting x_g past smaller variables.
    fn straighten(&self, ch: &Chevalley, g: usize, b: usize, memo: &mut HashMap<(usize, usize), Vector>) -> Vector {
        if let Some(v) = memo.get(&(g, b)) {
            return v.clone();
        }
        let p = self.p;
        let e = &self.exps[b];
        let first = e.iter().position(|&x| x > 0);
        let out = match first {
            Some(j) if j < g => {
                let mut rest = e.clone();
                rest[j] -= 1;
                let rest_idx = Self::encode(p, &rest);
                let mut acc: BTreeMap<usize, u64> = BTreeMap::new();
                // x_j (x_g x^rest), every term of which starts at index >= j
                for (t, c) in self.straighten(ch, g, rest_idx, memo) {
                    let mut f = self.exps[t].clone();
                    f[j] += 1;
                    if (f[j] as u64) < p {
                        let k = acc.entry(Self::encode(p, &f)).or_insert(0);
                        *k = (*k + c) % p;
                    }
                }
                // [x_g, x_j] x^rest
                if let Some((s, n)) = ch.bracket(g, j) {
                    let n = reduce(n, p);
                    if n != 0 {
                        for (t, c) in self.straighten(ch, s, rest_idx, memo) {
                            let k = acc.entry(t).or_insert(0);
                            *k = (*k + n * c) % p;
                        }
                    }
                }
                acc.into_iter().filter(|&(_, c)| c != 0).collect()
            }
            _ => {
                let mut f = e.clone();
                f[g] += 1;
                if f[g] as u64 == p {
                    Vec::new()
                } else {
                    vec![(Self::encode(p, &f), 1)]
                }
            }
        };
        memo.insert((g, b), out.clone());
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grade(&self, b: usize) -> &Grade {
        &self.grade[b]
    }

    fn apply_var(&self, i: usize, v: &Vector) -> Vector {
        let p = self.p;
        let mut acc: BTreeMap<usize, u64> = BTreeMap::new();
        for &(b, c) in v {
            for &(t, d) in &self.lmul[i][b] {
                let k = acc.entry(t).or_insert(0);
                *k = (*k + c * d) % p;
            }
        }
        acc.into_iter().filter(|&(_, c)| c != 0).collect()
    }

    /// (basis element a) * v
    pub fn left_mul(&self, a: usize, v: &Vector) -> Vector {
        let mut w = v.clone();
        for i in (0..self.nvars).rev() {
            for _ in 0..self.exps[a][i] {
                w = self.apply_var(i, &w);
                if w.is_empty() {
                    return w;
                }
            }
        }
        w
    }

    pub fn var_grade(&self, i: usize) -> &Grade {
        &self.var_grade[i]
    }

    pub fn num_vars(&self) -> usize {
        self.nvars
    }

    pub fn exponents(&self, a: usize) -> &[u32] {
        &self.exps[a]
    }

    /// Check associativity on all triples of variables against a basis element.
    pub fn check_associative(&self) -> bool {
        let m = self.nvars;
        for b in 0..self.dim {
            let unit = vec![(b, 1u64)];
            for i in 0..m {
                for j in 0..m {
                    // (x_i x_j) as an element, times b, equals x_i (x_j b)
                    let xj = self.encode_var(j);
                    let xixj = self.apply_var(i, &vec![(xj, 1)]);
                    let mut lhs: BTreeMap<usize, u64> = BTreeMap::new();
                    for (t, c) in xixj {
                        for (u, d) in self.left_mul(t, &unit) {
                            let k = lhs.entry(u).or_insert(0);
                            *k = (*k + c * d) % self.p;
                        }
                    }
                    lhs.retain(|_, c| *c != 0);
                    let rhs = self.apply_var(i, &self.apply_var(j, &unit));
                    if lhs.into_iter().collect::<Vector>() != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn encode_var(&self, j: usize) -> usize {
        let mut e = vec![0u32; self.nvars];
        e[j] = 1;
        Self::encode(self.p, &e)
    }
}

/// A finite-dimensional module: weights of a basis and the action of each
/// algebra variable.
pub struct Module {
    grade: Vec<Grade>,
    act: Vec<Vec<Vector>>,
}

impl Module {
    pub fn trivial(nvars: usize) -> Self {
        Module { grade: vec![[0; 8]], act: vec![vec![Vec::new()]; nvars] }
    }

    /// u* with x_{-a} phi_b = -N_{-a,-c} phi_c where a + c = b.
    pub fn coadjoint(rs: &RootSystem, ch: &Chevalley, p: u64) -> Self {
        let m = rs.num_positive();
        let grade = (0..m)
            .map(|i| {
                let mut g = [0i32; 8];
                for (x, &y) in g.iter_mut().zip(rs.root(i)) {
                    *x = y as i32;
                }
                g
            })
            .collect();
        let mut act = vec![vec![Vec::new(); m]; m];
        for a in 0..m {
            for c in 0..m {
                if let Some((b, n)) = ch.bracket(a, c) {
                    let v = reduce(-n, p);
                    if v != 0 {
                        act[a][b].push((c, v));
                    }
                }
            }
        }
        Module { grade, act }
    }

    fn act_var(&self, i: usize, v: &Vector, p: u64) -> Vector {
        let mut acc: BTreeMap<usize, u64> = BTreeMap::new();
        for &(b, c) in v {
            for &(t, d) in &self.act[i][b] {
                let k = acc.entry(t).or_insert(0);
                *k = (*k + c * d) % p;
            }
        }
        acc.into_iter().filter(|&(_, c)| c != 0).collect()
    }

    fn act_mono(&self, alg: &TruncatedAlgebra, a: usize, v: &Vector) -> Vector {
        let mut w = v.clone();
        for i in (0..alg.num_vars()).rev() {
            for _ in 0..alg.exponents(a)[i] {
                w = self.act_var(i, &w, alg.p);
                if w.is_empty() {
                    return w;
                }
            }
        }
        w
    }
}

struct Generator {
    grade: Grade,
    /// boundary in the previous free module: ((generator, basis element), coefficient)
    image: Vec<((usize, usize), u64)>,
}

/// Minimal free resolution of the trivial module, built weight by weight.
pub struct Resolution<'a> {
    alg: &'a TruncatedAlgebra,
    gens: Vec<Vec<Generator>>,
    by_grade: HashMap<Grade, Vec<usize>>,
}

impl<'a> Resolution<'a> {
    pub fn new(alg: &'a TruncatedAlgebra, top: usize) -> Self {
        let mut by_grade: HashMap<Grade, Vec<usize>> = HashMap::new();
        for b in 0..alg.dim() {
            by_grade.entry(*alg.grade(b)).or_default().push(b);
        }
        let mut res = Resolution { alg, gens: Vec::new(), by_grade };
        res.gens.push(vec![Generator { grade: [0; 8], image: Vec::new() }]);
        for s in 1..=top {
            let next = res.next_stage(s);
            res.gens.push(next);
        }
        res
    }

    /// Basis of the weight-mu part of the free module on gens[s].
    fn free_basis(&self, s: usize, mu: &Grade) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (gi, g) in self.gens[s].iter().enumerate() {
            let mut rest = *mu;
            for (x, y) in rest.iter_mut().zip(&g.grade) {
                *x -= y;
            }
            if let Some(bs) = self.by_grade.get(&rest) {
                out.extend(bs.iter().map(|&b| (gi, b)));
            }
        }
        out
    }

    /// a * (image of generator gi of stage s)
    fn act_on_image(&self, s: usize, gi: usize, a: usize) -> Vec<((usize, usize), u64)> {
        let p = self.alg.p;
        let mut acc: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for &((h, b), c) in &self.gens[s][gi].image {
            for (t, d) in self.alg.left_mul(a, &vec![(b, 1)]) {
                let k = acc.entry((h, t)).or_insert(0);
                *k = (*k + c * d) % p;
            }
        }
        acc.into_iter().filter(|&(_, c)| c != 0).collect()
    }

    fn next_stage(&self, s: usize) -> Vec<Generator> {
        let p = self.alg.p;
        // every weight of the free module at stage s - 1
        let mut grades: Vec<Grade> = self.gens[s - 1]
            .iter()
            .flat_map(|g| self.by_grade.keys().map(move |k| grade_add(&g.grade, k)))
            .collect();
        grades.sort_by_key(|g| (height(g), *g));
        grades.dedup();
        let mut new: Vec<Generator> = Vec::new();
        for mu in grades {
            let basis = self.free_basis(s - 1, &mu);
            if basis.is_empty() {
                continue;
            }
            let index: HashMap<(usize, usize), usize> = basis.iter().enumerate().map(|(i, x)| (*x, i)).collect();
            // cycles at weight mu
            let kernel: Vec<Vec<u64>> = if s == 1 {
                if height(&mu) == 0 {
                    Vec::new()
                } else {
                    (0..basis.len()).map(|i| (0..basis.len()).map(|j| u64::from(i == j)).collect()).collect()
                }
            } else {
                let target = self.free_basis(s - 2, &mu);
                let tindex: HashMap<(usize, usize), usize> =
                    target.iter().enumerate().map(|(i, x)| (*x, i)).collect();
                let mut m = FpMatrix::zeros(target.len(), basis.len(), p);
                for (col, &(gi, a)) in basis.iter().enumerate() {
                    for ((h, t), c) in self.act_on_image(s - 1, gi, a) {
                        m.add_entry(tindex[&(h, t)], col, c as i64);
                    }
                }
                m.kernel()
            };
            if kernel.is_empty() {
                continue;
            }
            // boundaries of generators already chosen
            let mut span = Echelon::new(basis.len(), p);
            for g in &new {
                let mut rest = mu;
                for (x, y) in rest.iter_mut().zip(&g.grade) {
                    *x -= y;
                }
                if let Some(bs) = self.by_grade.get(&rest) {
                    for &a in bs {
                        let mut v = vec![0u64; basis.len()];
                        let mut acc: BTreeMap<(usize, usize), u64> = BTreeMap::new();
                        for &((h, b), c) in &g.image {
                            for (t, d) in self.alg.left_mul(a, &vec![(b, 1)]) {
                                let k = acc.entry((h, t)).or_insert(0);
                                *k = (*k + c * d) % p;
                            }
                        }
                        for (key, c) in acc {
                            v[index[&key]] = c;
                        }
                        span.insert(&v);
                    }
                }
            }
            for z in kernel {
                if span.insert(&z) {
                    let image = z
                        .iter()
                        .enumerate()
                        .filter(|&(_, &c)| c != 0)
                        .map(|(i, &c)| (basis[i], c))
                        .collect();
                    new.push(Generator { grade: mu, image });
                }
            }
        }
        new
    }

    /// Ext^s(k, k) by weight (generators of the minimal resolution).
    pub fn ext_trivial(&self, s: usize) -> Vec<Grade> {
        let mut v: Vec<Grade> = self.gens[s].iter().map(|g| g.grade).collect();
        v.sort();
        v
    }

    /// Ext^s(k, M) by weight, from Hom_A(P, M) = Hom(V, M).
    pub fn ext_module(&self, module: &Module, s: usize) -> BTreeMap<Grade, u64> {
        let p = self.alg.p;
        // cochains at stage t: pairs (generator of stage t, basis vector of M)
        let cochains = |t: usize| -> HashMap<Grade, Vec<(usize, usize)>> {
            let mut out: HashMap<Grade, Vec<(usize, usize)>> = HashMap::new();
            for (gi, g) in self.gens[t].iter().enumerate() {
                for (mi, mg) in module.grade.iter().enumerate() {
                    out.entry(grade_add(&g.grade, mg)).or_default().push((gi, mi));
                }
            }
            out
        };
        // delta: Hom(V_t, M) -> Hom(V_{t+1}, M), (delta f)(v) = sum c a . f(g)
        let delta_rank = |t: usize, src: &[(usize, usize)], dst: &[(usize, usize)]| -> usize {
            if src.is_empty() || dst.is_empty() {
                return 0;
            }
            let dindex: HashMap<(usize, usize), usize> = dst.iter().enumerate().map(|(i, x)| (*x, i)).collect();
            let mut mat = FpMatrix::zeros(dst.len(), src.len(), p);
            for (col, &(g, mi)) in src.iter().enumerate() {
                for (vi, v) in self.gens[t + 1].iter().enumerate() {
                    for &((h, a), c) in &v.image {
                        if h != g {
                            continue;
                        }
                        for (mt, d) in module.act_mono(self.alg, a, &vec![(mi, 1)]) {
                            if let Some(&row) = dindex.get(&(vi, mt)) {
                                mat.add_entry(row, col, (c * d % p) as i64);
                            }
                        }
                    }
                }
            }
            mat.rank()
        };
        let cur = cochains(s);
        let prev = if s > 0 { cochains(s - 1) } else { HashMap::new() };
        let next = if s + 1 < self.gens.len() { Some(cochains(s + 1)) } else { None };
        let next = next.expect("resolution must extend one stage past the requested degree");
        let mut out = BTreeMap::new();
        let empty = Vec::new();
        for (g, cells) in &cur {
            let out_rank = delta_rank(s, cells, next.get(g).unwrap_or(&empty));
            let in_rank = match prev.get(g) {
                Some(src) => delta_rank(s - 1, src, cells),
                None => 0,
            };
            let d = (cells.len() - out_rank - in_rank) as u64;
            if d > 0 {
                out.insert(*g, d);
            }
        }
        out
    }
}

/// Which algebra the oracle may be run on.
fn check_envelope(rs: &RootSystem, p: u64, r: usize, n: usize) -> Result<()> {
    let (f, rank) = rs.canonical();
    let ok_type = match (f, rank) {
        (Family::A, 1) => (1..=3).contains(&r),
        (Family::A, 2) | (Family::B, 2) => r == 1,
        _ => false,
    };
    if !ok_type || p > 5 || !crate::gate::is_prime(p) || n > 3 {
        return Err(Error::ScopeExceeded(format!("{} with p = {p}, r = {r}, degree {n}", rs.label())));
    }
    Ok(())
}

/// Ext over the distribution algebra of U_r, kept alive for repeated queries.
pub struct Oracle {
    rs: RootSystem,
    p: u64,
    r: usize,
    alg: TruncatedAlgebra,
    ch: Chevalley,
}

impl Oracle {
    pub fn new(rs: &RootSystem, p: u64, r: usize) -> Result<Self> {
        check_envelope(rs, p, r, 0)?;
        let ch = Chevalley::new(rs)?;
        let alg = if r == 1 {
            TruncatedAlgebra::restricted_enveloping(rs, &ch, p)?
        } else {
            TruncatedAlgebra::divided_powers(p, r)?
        };
        Ok(Oracle { rs: rs.clone(), p, r, alg, ch })
    }

    pub fn algebra(&self) -> &TruncatedAlgebra {
        &self.alg
    }

    fn to_weight(&self, g: &Grade) -> Weight {
        let m: Vec<i64> = g[..self.rs.rank()].iter().map(|&x| x as i64).collect();
        self.rs.root_lattice_to_omega(&m)
    }

    /// H^n(U_r, k) for n <= top, as characters.
    pub fn trivial_ext(&self, top: usize) -> Result<Vec<TChar>> {
        check_envelope(&self.rs, self.p, self.r, top)?;
        let res = Resolution::new(&self.alg, top);
        Ok((0..=top)
            .map(|s| res.ext_trivial(s).iter().map(|g| (self.to_weight(g), 1)).collect())
            .collect())
    }

    /// H^n(U_1, u*).
    pub fn coadjoint_ext(&self, n: usize) -> Result<TChar> {
        check_envelope(&self.rs, self.p, self.r, n)?;
        if self.r != 1 {
            return Err(Error::ScopeExceeded("coadjoint coefficients need r = 1".into()));
        }
        let res = Resolution::new(&self.alg, n + 1);
        let module = Module::coadjoint(&self.rs, &self.ch, self.p);
        Ok(res.ext_module(&module, n).iter().map(|(g, d)| (self.to_weight(g), *d)).collect())
    }
}

/// H^n(U_r, M) for M = k or u*.
pub fn restricted_ext(rs: &RootSystem, p: u64, r: usize, n: usize, coeff: crate::cohomology::Coeff) -> Result<TChar> {
    let o = Oracle::new(rs, p, r)?;
    match coeff {
        crate::cohomology::Coeff::Trivial => Ok(o.trivial_ext(n)?.pop().unwrap()),
        crate::cohomology::Coeff::UStar => o.coadjoint_ext(n),
    }
}

/// Weights of H^n(B_r, lambda) = (H^n(U_r, k) (x) lambda)^{T_r}, given H^n(U_r, k).
pub fn select_invariants(u_char: &TChar, lambda: &Weight, p: u64, r: usize) -> TChar {
    let q = (p as i64).pow(r as u32);
    u_char
        .iter()
        .filter_map(|(w, m)| {
            let s = w.add(lambda);
            s.divisible_by(q).then_some((s, *m))
        })
        .collect()
}

pub fn br_cohomology_oracle(rs: &RootSystem, p: u64, r: usize, n: usize, lambda: &Weight) -> Result<TChar> {
    let o = Oracle::new(rs, p, r)?;
    let h = o.trivial_ext(n)?;
    Ok(select_invariants(&h[n], lambda, p, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::Coeff;

    #[test]
    fn truncated_polynomial_ext() {
        // Ext over k[x]/(x^p): one class in each degree, weights alpha, p alpha, ...
        let rs = RootSystem::parse("A1").unwrap();
        let o = Oracle::new(&rs, 5, 1).unwrap();
        let h = o.trivial_ext(3).unwrap();
        let weights: Vec<Vec<Weight>> = h.iter().map(|t| t.iter().map(|(w, _)| w.clone()).collect()).collect();
        assert_eq!(weights, vec![vec![Weight(vec![0])], vec![Weight(vec![2])], vec![Weight(vec![10])], vec![Weight(vec![12])]]);
    }

    #[test]
    fn a1_frobenius_example() {
        let rs = RootSystem::parse("A1").unwrap();
        // s.0 + p omega = 3 omega
        let t = br_cohomology_oracle(&rs, 5, 1, 3, &Weight(vec![3])).unwrap();
        assert_eq!(t.dim(), 1);
    }

    #[test]
    fn associativity() {
        for t in ["A2", "B2"] {
            let rs = RootSystem::parse(t).unwrap();
            let ch = Chevalley::new(&rs).unwrap();
            for p in [3u64, 5] {
                let alg = TruncatedAlgebra::restricted_enveloping(&rs, &ch, p).unwrap();
                assert!(alg.check_associative(), "{t} p={p}");
            }
        }
    }

    #[test]
    fn envelope() {
        let g2 = RootSystem::parse("G2").unwrap();
        assert!(matches!(Oracle::new(&g2, 5, 1), Err(Error::ScopeExceeded(_))));
        let a2 = RootSystem::parse("A2").unwrap();
        assert!(matches!(restricted_ext(&a2, 7, 1, 1, Coeff::Trivial), Err(Error::ScopeExceeded(_))));
    }
}
