//! Chevalley-Eilenberg cohomology of the nilradical, computed one weight
//! block at a time, together with the closed-form characters it is checked
//! against.

use std::collections::HashMap;

use crate::chevalley::Chevalley;
use crate::error::{Error, Result};
use crate::gate::PrimeGate;
use crate::linalg::FpMatrix;
use crate::par::Mode;
use crate::rootsys::{elements_of_length, minus_dot_zero_root, Family, RootSystem, WeylElement};
use crate::weight::{TChar, Weight};

/// Coefficient module.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coeff {
    Trivial,
    /// the coadjoint module u*
    UStar,
}

/// Root-lattice grade, padded to rank 8.
pub type Grade = [i32; 8];

const NO_COEFF: u8 = u8::MAX;

/// A basis cochain: wedge of the dual root vectors in `mask` (increasing
/// order), tensored with `phi_coeff` when the coefficients are u*.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Cell {
    mask: u128,
    coeff: u8,
}

pub struct CeComplex<'a> {
    rs: &'a RootSystem,
    p: u64,
    coeff: Coeff,
    grades: Vec<Grade>,
    /// for each c: (a, b, -N_{-a,-b}) with a < b, a + b = c
    d1: Vec<Vec<(usize, usize, i64)>>,
    /// for each beta: (a, c, coefficient of phi_c in x_{-a} . phi_beta)
    coadj: Vec<Vec<(usize, usize, i64)>>,
    mode: Mode,
}

fn below(mask: u128, a: usize) -> u32 {
    (mask & ((1u128 << a) - 1)).count_ones()
}

fn sign(k: u32) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

impl<'a> CeComplex<'a> {
    pub fn new(rs: &'a RootSystem, ch: &Chevalley, p: u64, coeff: Coeff, mode: Mode) -> Self {
        let m = rs.num_positive();
        let grades = (0..m)
            .map(|i| {
                let mut g = [0i32; 8];
                for (x, &y) in g.iter_mut().zip(rs.root(i)) {
                    *x = y as i32;
                }
                g
            })
            .collect();
        let mut d1 = vec![Vec::new(); m];
        let mut coadj = vec![Vec::new(); m];
        for a in 0..m {
            for b in 0..m {
                if let Some((c, n)) = ch.bracket(a, b) {
                    if a < b {
                        d1[c].push((a, b, -n));
                    }
                    // x_{-a} . phi_c = -phi_c([x_{-a}, -]) picks x_{-b}
                    coadj[c].push((a, b, -n));
                }
            }
        }
        CeComplex { rs, p, coeff, grades, d1, coadj, mode }
    }

    fn cell_grade(&self, c: &Cell) -> Grade {
        let mut g = [0i32; 8];
        let mut mask = c.mask;
        while mask != 0 {
            let i = mask.trailing_zeros() as usize;
            for k in 0..8 {
                g[k] += self.grades[i][k];
            }
            mask &= mask - 1;
        }
        if c.coeff != NO_COEFF {
            for k in 0..8 {
                g[k] += self.grades[c.coeff as usize][k];
            }
        }
        g
    }

    /// Basis of C^n grouped by grade.
    fn basis(&self, n: usize) -> HashMap<Grade, Vec<Cell>> {
        let m = self.rs.num_positive();
        let mut out: HashMap<Grade, Vec<Cell>> = HashMap::new();
        if n > m {
            return out;
        }
        let mut idx: Vec<usize> = (0..n).collect();
        loop {
            let mask = idx.iter().fold(0u128, |acc, &i| acc | (1u128 << i));
            match self.coeff {
                Coeff::Trivial => {
                    let c = Cell { mask, coeff: NO_COEFF };
                    out.entry(self.cell_grade(&c)).or_default().push(c);
                }
                Coeff::UStar => {
                    for b in 0..m {
                        let c = Cell { mask, coeff: b as u8 };
                        out.entry(self.cell_grade(&c)).or_default().push(c);
                    }
                }
            }
            // next combination
            let mut k = n;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if idx[k] < m - n + k {
                    idx[k] += 1;
                    for j in k + 1..n {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    /// d(cell) as (cell, integral coefficient) terms.
    fn differential(&self, c: &Cell, out: &mut Vec<(Cell, i64)>) {
        out.clear();
        let mut rest = c.mask;
        let mut j = 0u32;
        while rest != 0 {
            let s = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let r = c.mask & !(1u128 << s);
            for &(a, b, v) in &self.d1[s] {
                if r & (1u128 << a) != 0 || r & (1u128 << b) != 0 {
                    continue;
                }
                // phi_a ^ phi_b ^ phi_R, the 2-form commuting past phi_{s_1..s_{j-1}}
                let rb = r | (1u128 << b);
                let sg = sign(j) * sign(below(r, b)) * sign(below(rb, a));
                out.push((Cell { mask: rb | (1u128 << a), coeff: c.coeff }, sg * v));
            }
            j += 1;
        }
        if c.coeff != NO_COEFF {
            for &(a, cc, v) in &self.coadj[c.coeff as usize] {
                if c.mask & (1u128 << a) != 0 {
                    continue;
                }
                let sg = sign(below(c.mask, a));
                out.push((Cell { mask: c.mask | (1u128 << a), coeff: cc as u8 }, sg * v));
            }
        }
    }

    fn block_matrix(&self, src: &[Cell], dst: &[Cell]) -> FpMatrix {
        let index: HashMap<Cell, usize> = dst.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let mut m = FpMatrix::zeros(dst.len(), src.len(), self.p);
        let mut buf = Vec::new();
        for (col, c) in src.iter().enumerate() {
            self.differential(c, &mut buf);
            for (t, v) in &buf {
                let row = *index.get(t).expect("image stays in its weight block");
                m.add_entry(row, col, *v);
            }
        }
        m
    }

    fn grade_to_weight(&self, g: &Grade) -> Weight {
        let n = self.rs.rank();
        let m: Vec<i64> = g[..n].iter().map(|&x| x as i64).collect();
        self.rs.root_lattice_to_omega(&m)
    }

    /// H^n as a T-character.
    pub fn cohomology(&self, n: usize) -> TChar {
        let prev = if n == 0 { HashMap::new() } else { self.basis(n - 1) };
        let cur = self.basis(n);
        let next = self.basis(n + 1);
        let mut grades: Vec<&Grade> = cur.keys().collect();
        grades.sort();
        let empty: Vec<Cell> = Vec::new();
        let dims = self.mode.map(&grades, |g| {
            let cells = &cur[*g];
            let out = self.block_matrix(cells, next.get(*g).unwrap_or(&empty)).rank();
            let inc = match prev.get(*g) {
                Some(src) => self.block_matrix(src, cells).rank(),
                None => 0,
            };
            (cells.len() - out - inc) as u64
        });
        grades
            .into_iter()
            .zip(dims)
            .map(|(g, d)| (self.grade_to_weight(g), d))
            .collect()
    }

    /// Check d o d = 0 on degree n over the integers.
    pub fn square_is_zero(&self, n: usize) -> bool {
        let mut buf = Vec::new();
        let mut buf2 = Vec::new();
        for cells in self.basis(n).values() {
            for c in cells {
                self.differential(c, &mut buf);
                let mut acc: HashMap<Cell, i64> = HashMap::new();
                for (t, v) in &buf {
                    self.differential(t, &mut buf2);
                    for (u, w) in &buf2 {
                        *acc.entry(*u).or_default() += v * w;
                    }
                }
                if acc.values().any(|&x| x != 0) {
                    return false;
                }
            }
        }
        true
    }
}

/// H^n(u, M) for M = k or u*, over F_p.
pub fn ce_cohomology(rs: &RootSystem, ch: &Chevalley, p: u64, n: usize, coeff: Coeff, mode: Mode) -> Result<TChar> {
    if n > rs.num_positive() {
        return Err(Error::DegreeOutOfRange(n));
    }
    if !crate::gate::is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    Ok(CeComplex::new(rs, ch, p, coeff, mode).cohomology(n))
}

/// The weights -w.0 over elements of length n.
pub fn kostant_char(rs: &RootSystem, n: usize) -> TChar {
    elements_of_length(rs, n)
        .iter()
        .map(|w| (rs.dot_action(w, &Weight::zero(rs.rank())).neg(), 1))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KostantReport {
    pub computed: TChar,
    pub predicted: TChar,
    /// classes beyond the prediction
    pub excess: TChar,
    /// predicted classes that are missing
    pub deficit: TChar,
}

impl KostantReport {
    pub fn matches(&self) -> bool {
        self.excess.is_empty() && self.deficit.is_empty()
    }
}

pub fn kostant_check(rs: &RootSystem, ch: &Chevalley, p: u64, n: usize, mode: Mode) -> Result<KostantReport> {
    let computed = ce_cohomology(rs, ch, p, n, Coeff::Trivial, mode)?;
    let predicted = kostant_char(rs, n);
    Ok(KostantReport {
        excess: computed.excess_over(&predicted),
        deficit: predicted.excess_over(&computed),
        computed,
        predicted,
    })
}

pub fn h1_u_ustar(rs: &RootSystem, ch: &Chevalley, p: u64, mode: Mode) -> Result<TChar> {
    ce_cohomology(rs, ch, p, 1, Coeff::UStar, mode)
}

fn omega_of(rs: &RootSystem, m: &[i64]) -> Weight {
    rs.root_lattice_to_omega(m)
}

/// Closed form for H^1(u, k): the simple roots, plus 3a1 + a2 for G2 at p = 3.
pub fn h1_table(rs: &RootSystem, p: u64) -> TChar {
    let mut t: TChar = (0..rs.rank()).map(|i| (rs.simple_root(i), 1)).collect();
    if rs.family() == Family::G && p == 3 {
        t.add(omega_of(rs, &[3, 1]), 1);
    }
    t
}

/// Closed form for H^2(u, k), p >= 3.
pub fn h2_table(rs: &RootSystem, p: u64) -> TChar {
    let mut t = kostant_char(rs, 2);
    if p != 3 {
        return t;
    }
    let n = rs.rank();
    let at = |pairs: &[(usize, i64)]| {
        let mut m = vec![0i64; n];
        for &(i, c) in pairs {
            m[i - 1] = c;
        }
        omega_of(rs, &m)
    };
    match rs.user_family() {
        Family::B if n >= 3 => t.add(at(&[(n - 2, 1), (n - 1, 2), (n, 3)]), 1),
        Family::C if n >= 3 => t.add(at(&[(n - 2, 1), (n - 1, 3), (n, 1)]), 1),
        Family::F => {
            t.add(at(&[(1, 1), (2, 2), (3, 3)]), 1);
            t.add(at(&[(2, 1), (3, 3), (4, 1)]), 1);
        }
        Family::G => {
            for m in [[3, 1], [3, 3], [6, 3], [4, 2]] {
                t.add(omega_of(rs, &m), 1);
            }
        }
        _ => {}
    }
    t
}

/// Closed form for H^1(u, u*).
pub fn h1_u_ustar_table(rs: &RootSystem) -> TChar {
    let n = rs.rank();
    let mut t = TChar::new();
    for a in 0..n {
        t.add(rs.simple_root(a).scale(2), 1);
        for b in a + 1..n {
            let s = rs.simple_root(a).add(&rs.simple_root(b));
            if rs.sum_index(a, b).is_some() {
                t.add(s, 1);
            } else {
                t.add(s, 2);
            }
        }
        for b in 0..n {
            if a != b && rs.sum_index(a, b).is_some() {
                let w = WeylElement::from_word(rs, &[a, b]);
                t.add(rs.dot_action(&w, &Weight::zero(n)).neg(), 1);
            }
        }
    }
    t
}

/// H^3(U_1, k) = H^3(u, k) + (u*)^(1) (x) H^1(u, k), with both pieces computed.
pub fn h3_u1_char(rs: &RootSystem, ch: &Chevalley, p: u64, mode: Mode) -> Result<TChar> {
    PrimeGate::RestrictedSplit.check(rs, p)?;
    let h3 = if rs.num_positive() >= 3 {
        ce_cohomology(rs, ch, p, 3, Coeff::Trivial, mode)?
    } else {
        TChar::new()
    };
    let h1 = ce_cohomology(rs, ch, p, 1, Coeff::Trivial, mode)?;
    let mut out = h3;
    for b in 0..rs.num_positive() {
        let tw = rs.root_omega(b).scale(p as i64);
        for (w, m) in h1.iter() {
            out.add(tw.add(w), *m);
        }
    }
    Ok(out)
}

/// -w.0 as root coordinates for every element of length n.
pub fn minus_dot_zero_roots(rs: &RootSystem, n: usize) -> Vec<Vec<i64>> {
    elements_of_length(rs, n).iter().map(|w| minus_dot_zero_root(rs, w)).collect()
}
