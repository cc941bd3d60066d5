//! Root systems of simple Lie algebras in Bourbaki numbering, Weyl group
//! enumeration by length, and the dot action.

use std::collections::HashMap;
use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::weight::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    label: String,
    /// user simple-root index -> internal index (non-identity only for C2)
    user_to_internal: Vec<usize>,
    cartan: Vec<Vec<i64>>,
    /// (alpha_i, alpha_i)/2 with short roots normalised to 1
    half_norm: Vec<i64>,
    pos: Vec<Vec<i64>>,
    pos_omega: Vec<Weight>,
    pos_half_norm: Vec<i64>,
    index: HashMap<Vec<i64>, usize>,
    cartan_inv: Vec<Vec<Ratio<i64>>>,
    coxeter: i64,
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)
    }
}

fn cartan_matrix(family: Family, n: usize) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let link = |c: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match family {
        Family::A => {
            for i in 0..n - 1 {
                link(&mut c, i, i + 1);
            }
        }
        Family::B | Family::C => {
            for i in 0..n - 1 {
                link(&mut c, i, i + 1);
            }
            // alpha_n short in B, long in C
            if family == Family::B {
                c[n - 2][n - 1] = -2;
            } else {
                c[n - 1][n - 2] = -2;
            }
        }
        Family::D => {
            for i in 0..n - 2 {
                link(&mut c, i, i + 1);
            }
            link(&mut c, n - 3, n - 1);
        }
        Family::E => {
            link(&mut c, 0, 2);
            link(&mut c, 1, 3);
            for i in 2..n - 1 {
                link(&mut c, i, i + 1);
            }
        }
        Family::F => {
            link(&mut c, 0, 1);
            link(&mut c, 1, 2);
            link(&mut c, 2, 3);
            c[1][2] = -2;
        }
        Family::G => {
            link(&mut c, 0, 1);
            c[1][0] = -3;
        }
    }
    c
}

fn half_norms(family: Family, n: usize) -> Vec<i64> {
    match family {
        Family::A | Family::D | Family::E => vec![1; n],
        Family::B => (0..n).map(|i| if i + 1 < n { 2 } else { 1 }).collect(),
        Family::C => (0..n).map(|i| if i + 1 < n { 1 } else { 2 }).collect(),
        Family::F => vec![2, 2, 1, 1],
        Family::G => vec![1, 3],
    }
}

fn invert_rational(c: &[Vec<i64>]) -> Vec<Vec<Ratio<i64>>> {
    let n = c.len();
    let mut a: Vec<Vec<Ratio<i64>>> = (0..n)
        .map(|i| {
            let mut row: Vec<Ratio<i64>> = c[i].iter().map(|&x| Ratio::from_integer(x)).collect();
            row.extend((0..n).map(|j| Ratio::from_integer(i64::from(i == j))));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| a[r][col] != Ratio::from_integer(0))
            .expect("Cartan matrix is invertible");
        a.swap(col, piv);
        let inv = Ratio::from_integer(1) / a[col][col];
        for x in a[col].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != col && a[r][col] != Ratio::from_integer(0) {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// Parse labels such as `A2`, `b3`, `E_8`.
pub fn parse_label(s: &str) -> Result<(Family, usize)> {
    let t: String = s.trim().chars().filter(|c| *c != '_').collect();
    let mut chars = t.chars();
    let fam = match chars.next().map(|c| c.to_ascii_uppercase()) {
        Some('A') => Family::A,
        Some('B') => Family::B,
        Some('C') => Family::C,
        Some('D') => Family::D,
        Some('E') => Family::E,
        Some('F') => Family::F,
        Some('G') => Family::G,
        _ => return Err(Error::InvalidType(s.to_string())),
    };
    let rank: usize = chars
        .as_str()
        .parse()
        .map_err(|_| Error::InvalidType(s.to_string()))?;
    Ok((fam, rank))
}

impl RootSystem {
    pub fn parse(label: &str) -> Result<Self> {
        let (f, n) = parse_label(label)?;
        Self::new(f, n)
    }

    /// Build the root system of the given type. `C2` is realised as `B2`
    /// with the simple roots swapped; the label is kept for reporting.
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        // masks over positive roots are u128
        if !ok || rank > 8 {
            return Err(Error::InvalidType(format!("{}{}", family.letter(), rank)));
        }
        let label = format!("{}{}", family.letter(), rank);
        let (family, user_to_internal) = if family == Family::C && rank == 2 {
            (Family::B, vec![1, 0])
        } else {
            (family, (0..rank).collect())
        };
        let cartan = cartan_matrix(family, rank);
        let half_norm = half_norms(family, rank);
        let mut rs = RootSystem {
            family,
            rank,
            label,
            user_to_internal,
            cartan_inv: invert_rational(&cartan),
            cartan,
            half_norm,
            pos: Vec::new(),
            pos_omega: Vec::new(),
            pos_half_norm: Vec::new(),
            index: HashMap::new(),
            coxeter: 0,
        };
        rs.generate_positive_roots();
        rs.coxeter = rs.compute_coxeter();
        Ok(rs)
    }

    fn generate_positive_roots(&mut self) {
        let n = self.rank;
        let mut layer: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        let mut all: Vec<Vec<i64>> = Vec::new();
        let mut seen: std::collections::HashSet<Vec<i64>> = layer.iter().cloned().collect();
        while !layer.is_empty() {
            all.extend(layer.iter().cloned());
            let mut next = Vec::new();
            for beta in &layer {
                for i in 0..n {
                    let pairing: i64 = (0..n).map(|j| beta[j] * self.cartan[j][i]).sum();
                    // length of the alpha_i-string below beta
                    let mut down = 0;
                    let mut probe = beta.clone();
                    loop {
                        probe[i] -= 1;
                        if probe.iter().all(|&x| x >= 0) && seen.contains(&probe) {
                            down += 1;
                        } else {
                            break;
                        }
                    }
                    if down - pairing > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if seen.insert(up.clone()) {
                            next.push(up);
                        }
                    }
                }
            }
            layer = next;
        }
        // height, then lexicographically descending so simple roots come in index order
        all.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        self.index = all.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        self.pos_omega = all.iter().map(|r| self.root_lattice_to_omega(r)).collect();
        self.pos_half_norm = all.iter().map(|r| self.norm_sq_root(r) / 2).collect();
        self.pos = all;
    }

    fn compute_coxeter(&self) -> i64 {
        // highest short root, paired with rho
        let short = *self.pos_half_norm.iter().min().unwrap();
        let idx = (0..self.pos.len())
            .filter(|&i| self.pos_half_norm[i] == short)
            .max_by_key(|&i| self.height(i))
            .unwrap();
        let rho = self.rho();
        self.coroot_pairing(&rho, idx) + 1
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn coxeter_number(&self) -> i64 {
        self.coxeter
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn num_positive(&self) -> usize {
        self.pos.len()
    }

    /// Positive roots in simple-root coordinates, ordered by height.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.pos
    }

    pub fn root(&self, idx: usize) -> &[i64] {
        &self.pos[idx]
    }

    pub fn root_omega(&self, idx: usize) -> &Weight {
        &self.pos_omega[idx]
    }

    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn height(&self, idx: usize) -> i64 {
        self.pos[idx].iter().sum()
    }

    pub fn is_simple(&self, idx: usize) -> bool {
        idx < self.rank
    }

    pub fn root_half_norm(&self, idx: usize) -> i64 {
        self.pos_half_norm[idx]
    }

    /// (x, x) for x in simple-root coordinates, short roots having norm 2.
    pub fn norm_sq_root(&self, x: &[i64]) -> i64 {
        self.inner_root(x, x)
    }

    pub fn inner_root(&self, x: &[i64], y: &[i64]) -> i64 {
        let n = self.rank;
        let mut s = 0;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += x[i] * y[j] * self.half_norm[j] * self.cartan[i][j];
            }
        }
        s
    }

    pub fn simple_half_norm(&self, i: usize) -> i64 {
        self.half_norm[i]
    }

    pub fn root_lattice_to_omega(&self, m: &[i64]) -> Weight {
        let n = self.rank;
        Weight((0..n).map(|j| (0..n).map(|i| m[i] * self.cartan[i][j]).sum()).collect())
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        Weight(self.cartan[i].clone())
    }

    pub fn fundamental(&self, i: usize) -> Weight {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        Weight(v)
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank])
    }

    /// Simple-root coordinates of a weight, as exact rationals.
    pub fn pi_coords(&self, w: &Weight) -> Vec<Ratio<i64>> {
        let n = self.rank;
        (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| Ratio::from_integer(w.0[i]) * self.cartan_inv[i][j])
                    .sum()
            })
            .collect()
    }

    /// Simple-root coordinates if the weight lies in the root lattice.
    pub fn root_coords(&self, w: &Weight) -> Option<Vec<i64>> {
        self.pi_coords(w)
            .into_iter()
            .map(|r| if r.is_integer() { Some(r.to_integer()) } else { None })
            .collect()
    }

    pub fn in_root_lattice(&self, w: &Weight) -> bool {
        self.root_coords(w).is_some()
    }

    /// <lambda, beta^vee> for a positive root.
    pub fn coroot_pairing(&self, w: &Weight, idx: usize) -> i64 {
        let m = &self.pos[idx];
        let s: i64 = (0..self.rank).map(|i| m[i] * self.half_norm[i] * w.0[i]).sum();
        debug_assert_eq!(s % self.pos_half_norm[idx], 0);
        s / self.pos_half_norm[idx]
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.cartan[i][j] != 0
    }

    pub fn neighbours(&self, i: usize) -> Vec<usize> {
        (0..self.rank).filter(|&j| self.adjacent(i, j)).collect()
    }

    /// Index of alpha + beta among positive roots, if it is one.
    pub fn sum_index(&self, a: usize, b: usize) -> Option<usize> {
        let s: Vec<i64> = self.pos[a].iter().zip(&self.pos[b]).map(|(x, y)| x + y).collect();
        self.root_index(&s)
    }

    /// Convert a weight given in the user's simple-root numbering.
    pub fn weight_from_user(&self, w: &Weight) -> Weight {
        let mut v = vec![0; self.rank];
        for (u, &i) in self.user_to_internal.iter().enumerate() {
            v[i] = w.0[u];
        }
        Weight(v)
    }

    pub fn weight_to_user(&self, w: &Weight) -> Weight {
        Weight(self.user_to_internal.iter().map(|&i| w.0[i]).collect())
    }

    pub fn index_from_user(&self, u: usize) -> usize {
        self.user_to_internal[u]
    }

    pub fn index_to_user(&self, i: usize) -> usize {
        self.user_to_internal.iter().position(|&x| x == i).unwrap()
    }

    /// Identity of the canonical system, ignoring the user label.
    pub fn canonical(&self) -> (Family, usize) {
        (self.family, self.rank)
    }

    /// Labels of the form `C2` keep the user's numbering.
    pub fn user_family(&self) -> Family {
        parse_label(&self.label).map(|x| x.0).unwrap_or(self.family)
    }

    fn reflect_omega(&self, i: usize, w: &mut [i64]) {
        let c = w[i];
        if c != 0 {
            for (j, x) in w.iter_mut().enumerate() {
                *x -= c * self.cartan[i][j];
            }
        }
    }

    /// s_i acting on a weight.
    pub fn reflect(&self, i: usize, w: &Weight) -> Weight {
        let mut v = w.0.clone();
        self.reflect_omega(i, &mut v);
        Weight(v)
    }

    /// Product of simple reflections (leftmost acts last) applied to `w`.
    pub fn apply_word(&self, word: &[usize], w: &Weight) -> Weight {
        let mut v = w.0.clone();
        for &i in word.iter().rev() {
            self.reflect_omega(i, &mut v);
        }
        Weight(v)
    }

    /// w . lambda = w(lambda + rho) - rho
    pub fn dot_word(&self, word: &[usize], w: &Weight) -> Weight {
        let rho = self.rho();
        self.apply_word(word, &w.add(&rho)).sub(&rho)
    }

    pub fn dot_action(&self, elt: &WeylElement, w: &Weight) -> Weight {
        self.dot_word(&elt.word, w)
    }

    /// Action on simple-root coordinates.
    pub fn apply_word_root(&self, word: &[usize], m: &[i64]) -> Vec<i64> {
        let mut v = m.to_vec();
        for &i in word.iter().rev() {
            let pairing: i64 = (0..self.rank).map(|j| v[j] * self.cartan[j][i]).sum();
            v[i] -= pairing;
        }
        v
    }
}

/// Write lambda = lambda0 + p lambda1 with lambda0 restricted.
pub fn restricted_decompose(w: &Weight, p: i64) -> (Weight, Weight) {
    let l0 = w.rem(p);
    let l1 = Weight(w.0.iter().zip(&l0.0).map(|(a, b)| (a - b) / p).collect());
    (l0, l1)
}

/// A Weyl group element with a canonical (lexicographically least) reduced word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    pub word: Vec<usize>,
    /// action on fundamental-weight coordinates, row-major
    omega: Vec<i64>,
    /// action on simple-root coordinates, row-major
    roots: Vec<i64>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let mut id = vec![0; rank * rank];
        for i in 0..rank {
            id[i * rank + i] = 1;
        }
        WeylElement { word: Vec::new(), omega: id.clone(), roots: id }
    }

    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Self {
        let mut e = WeylElement::identity(rs.rank());
        for &i in word {
            e = e.times_simple(rs, i);
        }
        e
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// The action matrix on weights; equal matrices mean equal elements.
    pub fn matrix(&self) -> &[i64] {
        &self.omega
    }

    /// w s_i
    pub fn times_simple(&self, rs: &RootSystem, i: usize) -> Self {
        let n = rs.rank();
        let c = rs.cartan();
        let mut omega = self.omega.clone();
        for r in 0..n {
            let shift: i64 = (0..n).map(|j| self.omega[r * n + j] * c[i][j]).sum();
            omega[r * n + i] -= shift;
        }
        let mut roots = self.roots.clone();
        for r in 0..n {
            let col_i = self.roots[r * n + i];
            for k in 0..n {
                roots[r * n + k] -= col_i * c[k][i];
            }
        }
        let mut word = self.word.clone();
        word.push(i);
        WeylElement { word, omega, roots }
    }

    /// w(alpha_i) in simple-root coordinates.
    pub fn image_of_simple(&self, n: usize, i: usize) -> Vec<i64> {
        (0..n).map(|r| self.roots[r * n + i]).collect()
    }

    pub fn apply_root(&self, n: usize, m: &[i64]) -> Vec<i64> {
        (0..n).map(|r| (0..n).map(|k| self.roots[r * n + k] * m[k]).sum()).collect()
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self, rs: &RootSystem) -> usize {
        let n = rs.rank();
        rs.positive_roots()
            .iter()
            .filter(|b| self.apply_root(n, b).iter().any(|&x| x < 0))
            .count()
    }
}

/// All elements of length exactly `len`, each with its lex-least reduced word,
/// in lexicographic order of those words.
pub fn elements_of_length(rs: &RootSystem, len: usize) -> Vec<WeylElement> {
    let n = rs.rank();
    let mut level = vec![WeylElement::identity(n)];
    for _ in 0..len {
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut next = Vec::new();
        for w in &level {
            for i in 0..n {
                if w.image_of_simple(n, i).iter().all(|&x| x >= 0) {
                    let e = w.times_simple(rs, i);
                    if seen.insert(e.omega.clone(), ()).is_none() {
                        next.push(e);
                    }
                }
            }
        }
        level = next;
    }
    level
}

/// Every reduced word of every element of length `len`, grouped by element in
/// the order of [`elements_of_length`].
pub fn reduced_words(rs: &RootSystem, len: usize) -> Vec<(WeylElement, Vec<Vec<usize>>)> {
    let elts = elements_of_length(rs, len);
    let pos: HashMap<Vec<i64>, usize> =
        elts.iter().enumerate().map(|(i, e)| (e.omega.clone(), i)).collect();
    let mut words: Vec<Vec<Vec<usize>>> = vec![Vec::new(); elts.len()];
    let n = rs.rank();
    let mut stack: Vec<WeylElement> = vec![WeylElement::identity(n)];
    while let Some(w) = stack.pop() {
        if w.len() == len {
            if let Some(&k) = pos.get(&w.omega) {
                words[k].push(w.word.clone());
            }
            continue;
        }
        for i in 0..n {
            if w.image_of_simple(n, i).iter().all(|&x| x >= 0) {
                stack.push(w.times_simple(rs, i));
            }
        }
    }
    for ws in words.iter_mut() {
        ws.sort();
    }
    elts.into_iter().zip(words).collect()
}

/// -w.0 expressed in simple-root coordinates.
pub fn minus_dot_zero_root(rs: &RootSystem, w: &WeylElement) -> Vec<i64> {
    let d = rs.dot_action(w, &Weight::zero(rs.rank())).neg();
    rs.root_coords(&d).expect("w.0 lies in the root lattice")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poincare_coeff(exps: &[usize], k: usize) -> usize {
        let mut poly = vec![1usize];
        for &e in exps {
            let mut next = vec![0; poly.len() + e];
            for (i, &c) in poly.iter().enumerate() {
                for j in 0..=e {
                    next[i + j] += c;
                }
            }
            poly = next;
        }
        poly.get(k).copied().unwrap_or(0)
    }

    fn exponents(f: Family, n: usize) -> Vec<usize> {
        match f {
            Family::A => (1..=n).collect(),
            Family::B | Family::C => (1..=n).map(|i| 2 * i - 1).collect(),
            Family::D => {
                let mut v: Vec<usize> = (1..n).map(|i| 2 * i - 1).collect();
                v.push(n - 1);
                v
            }
            Family::E => match n {
                6 => vec![1, 4, 5, 7, 8, 11],
                7 => vec![1, 5, 7, 9, 11, 13, 17],
                _ => vec![1, 7, 11, 13, 17, 19, 23, 29],
            },
            Family::F => vec![1, 5, 7, 11],
            Family::G => vec![1, 5],
        }
    }

    fn all_types() -> Vec<(Family, usize)> {
        let mut v = Vec::new();
        for n in 1..=7 {
            v.push((Family::A, n));
        }
        for n in 2..=6 {
            v.push((Family::B, n));
            v.push((Family::C, n));
        }
        for n in 4..=6 {
            v.push((Family::D, n));
        }
        v.extend([(Family::E, 6), (Family::E, 7), (Family::E, 8), (Family::F, 4), (Family::G, 2)]);
        v
    }

    #[test]
    fn root_counts_and_coxeter() {
        for (f, n) in all_types() {
            let rs = RootSystem::new(f, n).unwrap();
            let h = rs.coxeter_number();
            assert_eq!(2 * rs.num_positive() as i64, h * n as i64, "{f:?}{n}");
        }
        assert_eq!(RootSystem::parse("B3").unwrap().coxeter_number(), 6);
        assert_eq!(RootSystem::parse("E8").unwrap().coxeter_number(), 30);
        assert_eq!(RootSystem::parse("G2").unwrap().coxeter_number(), 6);
    }

    #[test]
    fn small_cases() {
        let a1 = RootSystem::parse("A1").unwrap();
        assert_eq!(a1.positive_roots(), &[vec![1]]);
        assert_eq!(a1.rho(), Weight(vec![1]));
        let b2 = RootSystem::parse("B2").unwrap();
        assert_eq!(b2.positive_roots(), &[vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2]]);
        assert!(matches!(RootSystem::parse("D3"), Err(Error::InvalidType(_))));
        assert!(matches!(RootSystem::parse("E9"), Err(Error::InvalidType(_))));
        let c2 = RootSystem::parse("C2").unwrap();
        assert_eq!(c2.canonical(), (Family::B, 2));
        assert_eq!(c2.label(), "C2");
    }

    #[test]
    fn dot_action_examples() {
        let a2 = RootSystem::parse("A2").unwrap();
        let w = WeylElement::from_word(&a2, &[0, 1, 0]);
        assert_eq!(minus_dot_zero_root(&a2, &w), vec![2, 2]);
    }

    #[test]
    fn length_counts_match_poincare() {
        for (f, n) in all_types() {
            let rs = RootSystem::new(f, n).unwrap();
            let ex = exponents(rs.family(), n);
            for k in 0..=4 {
                let els = elements_of_length(&rs, k);
                assert_eq!(els.len(), poincare_coeff(&ex, k), "{f:?}{n} length {k}");
                for e in &els {
                    assert_eq!(e.length(&rs), k);
                }
            }
        }
        let a3 = RootSystem::parse("A3").unwrap();
        assert_eq!(elements_of_length(&a3, 3).len(), 6);
        let a1 = RootSystem::parse("A1").unwrap();
        assert!(elements_of_length(&a1, 2).is_empty());
    }

    #[test]
    fn minus_dot_zero_is_inversion_sum() {
        for (f, n) in all_types() {
            let rs = RootSystem::new(f, n).unwrap();
            for k in 1..=3 {
                for e in elements_of_length(&rs, k) {
                    // sum of positive roots made negative by w^{-1}
                    let rev: Vec<usize> = e.word.iter().rev().copied().collect();
                    let inv = WeylElement::from_word(&rs, &rev);
                    let mut s = vec![0; n];
                    for b in rs.positive_roots() {
                        if inv.apply_root(n, b).iter().any(|&x| x < 0) {
                            for (x, y) in s.iter_mut().zip(b) {
                                *x += y;
                            }
                        }
                    }
                    assert_eq!(minus_dot_zero_root(&rs, &e), s);
                    // telescoping: beta_1 + s_1(beta_2) + s_1 s_2(beta_3) + ...
                    let mut t = vec![0; n];
                    for j in 0..e.word.len() {
                        let mut unit = vec![0; n];
                        unit[e.word[j]] = 1;
                        let term = rs.apply_word_root(&e.word[..j], &unit);
                        assert!(term.iter().all(|&x| x >= 0));
                        for (x, y) in t.iter_mut().zip(&term) {
                            *x += y;
                        }
                    }
                    assert_eq!(t, s);
                }
            }
        }
    }

    #[test]
    fn restricted_decomposition() {
        assert_eq!(restricted_decompose(&Weight(vec![-2]), 5), (Weight(vec![3]), Weight(vec![-1])));
    }

    #[test]
    fn reduced_words_of_length_three() {
        let a2 = RootSystem::parse("A2").unwrap();
        let rw = reduced_words(&a2, 3);
        assert_eq!(rw.len(), 1);
        assert_eq!(rw[0].1, vec![vec![0, 1, 0], vec![1, 0, 1]]);
    }
}
