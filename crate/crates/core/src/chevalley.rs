//! Integral structure constants of a Chevalley basis, and the dual
//! differential on the nilradical spanned by negative root vectors.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::linalg::reduce;
use crate::rootsys::RootSystem;

/// A root together with its sign.
type Signed = (usize, i64);

#[derive(Debug, Clone)]
pub struct Chevalley {
    /// N[a][b] for positive roots a, b with a + b a root, else 0
    npos: Vec<Vec<i64>>,
    sum: Vec<Vec<Option<usize>>>,
    half_norm: Vec<i64>,
}

impl Chevalley {
    /// Structure constants with every extraspecial sign +1.
    pub fn new(rs: &RootSystem) -> Result<Self> {
        Self::with_signs(rs, &vec![1; rs.num_positive()])
    }

    /// Structure constants with the sign of the extraspecial pair of each
    /// non-simple root `xi` taken from `signs[xi]`.
    pub fn with_signs(rs: &RootSystem, signs: &[i64]) -> Result<Self> {
        let m = rs.num_positive();
        let mut sum = vec![vec![None; m]; m];
        for a in 0..m {
            for b in 0..m {
                sum[a][b] = rs.sum_index(a, b);
            }
        }
        let mut ch = Chevalley {
            npos: vec![vec![0; m]; m],
            sum,
            half_norm: (0..m).map(|i| rs.root_half_norm(i)).collect(),
        };
        for xi in rs.num_positive().min(rs.rank())..m {
            let pairs: Vec<(usize, usize)> = (0..xi)
                .flat_map(|a| (a + 1..xi).map(move |b| (a, b)))
                .filter(|&(a, b)| ch.sum[a][b] == Some(xi))
                .collect();
            let (alpha, beta) = pairs[0];
            let q = string_below(rs, alpha, beta) + 1;
            let n_ab = signs[xi].signum() * q;
            ch.set(alpha, beta, n_ab);
            let norm_xi = 2 * rs.root_half_norm(xi);
            for &(x1, e1) in &pairs[1..] {
                let mut acc = Ratio::from_integer(0i64);
                let neg_a = (alpha, -1);
                let neg_b = (beta, -1);
                if let Some(d) = ch.signed_sum((e1, 1), neg_a) {
                    acc += ch.nval((e1, 1), neg_a) * ch.nval((x1, 1), neg_b)
                        / Ratio::from_integer(2 * ch.half_norm[d.0]);
                }
                if let Some(d) = ch.signed_sum((x1, 1), neg_a) {
                    acc += ch.nval(neg_a, (x1, 1)) * ch.nval((e1, 1), neg_b)
                        / Ratio::from_integer(2 * ch.half_norm[d.0]);
                }
                let val = acc * Ratio::from_integer(norm_xi) / Ratio::from_integer(n_ab);
                if !val.is_integer() {
                    return Err(Error::InternalInconsistency(format!(
                        "non-integral structure constant for roots {x1},{e1}"
                    )));
                }
                ch.set(x1, e1, val.to_integer());
            }
        }
        ch.verify(rs)?;
        Ok(ch)
    }

    fn set(&mut self, a: usize, b: usize, v: i64) {
        self.npos[a][b] = v;
        self.npos[b][a] = -v;
    }

    fn signed_sum(&self, a: Signed, b: Signed) -> Option<Signed> {
        match (a.1 > 0, b.1 > 0) {
            (true, true) => self.sum[a.0][b.0].map(|c| (c, 1)),
            (false, false) => self.sum[a.0][b.0].map(|c| (c, -1)),
            _ => {
                let (p, n) = if a.1 > 0 { (a.0, b.0) } else { (b.0, a.0) };
                // p - n is positive when n + (p - n) = p, negative when p + (n - p) = n
                if let Some(d) = (0..self.sum.len()).find(|&d| self.sum[n][d] == Some(p)) {
                    Some((d, 1))
                } else {
                    (0..self.sum.len()).find(|&d| self.sum[p][d] == Some(n)).map(|d| (d, -1))
                }
            }
        }
    }

    fn norm(&self, a: Signed) -> Ratio<i64> {
        Ratio::from_integer(2 * self.half_norm[a.0])
    }

    /// N_{a,b} for signed roots, using the known positive constants.
    fn nval(&self, a: Signed, b: Signed) -> Ratio<i64> {
        let t = self.signed_sum(a, b).expect("sum is a root");
        match (a.1 > 0, b.1 > 0) {
            (true, true) => Ratio::from_integer(self.npos[a.0][b.0]),
            (false, false) => -self.nval((a.0, 1), (b.0, 1)),
            (true, false) => {
                let u = (t.0, -t.1);
                if t.1 > 0 {
                    self.norm(u) / self.norm(a) * self.nval(b, u)
                } else {
                    self.norm(u) / self.norm(b) * self.nval(u, a)
                }
            }
            (false, true) => -self.nval(b, a),
        }
    }

    fn verify(&self, rs: &RootSystem) -> Result<()> {
        let m = self.npos.len();
        for a in 0..m {
            for b in 0..m {
                if let Some(_c) = self.sum[a][b] {
                    let want = string_below(rs, a, b) + 1;
                    if self.npos[a][b].abs() != want {
                        return Err(Error::InternalInconsistency(format!(
                            "|N({a},{b})| = {} but string length gives {want}",
                            self.npos[a][b]
                        )));
                    }
                }
            }
        }
        // Jacobi on the positive nilradical
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let mut tot: std::collections::BTreeMap<usize, i64> = Default::default();
                    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                        if let Some(yz) = self.sum[y][z] {
                            if let Some(r) = self.sum[x][yz] {
                                *tot.entry(r).or_default() += self.npos[y][z] * self.npos[x][yz];
                            }
                        }
                    }
                    if tot.values().any(|&v| v != 0) {
                        return Err(Error::InternalInconsistency(format!(
                            "Jacobi identity fails on roots {a},{b},{c}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// [x_{-a}, x_{-b}] = N x_{-c} in the nilradical of negative root vectors.
    pub fn bracket(&self, a: usize, b: usize) -> Option<(usize, i64)> {
        self.sum[a][b].map(|c| (c, -self.npos[a][b]))
    }

    pub fn num_positive(&self) -> usize {
        self.npos.len()
    }

    /// Pairs (a, b), a < b, whose sum is `c`.
    pub fn splittings(&self, c: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let m = self.npos.len();
        (0..m).flat_map(move |a| (a + 1..m).filter(move |&b| self.sum[a][b] == Some(c)).map(move |b| (a, b)))
    }
}

/// Largest i with b - i a a root (of either sign).
fn string_below(rs: &RootSystem, a: usize, b: usize) -> i64 {
    let ra = rs.root(a);
    let mut v: Vec<i64> = rs.root(b).to_vec();
    let mut i = 0;
    loop {
        for (x, y) in v.iter_mut().zip(ra) {
            *x -= y;
        }
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        if rs.root_index(&v).is_some() || rs.root_index(&neg).is_some() {
            i += 1;
        } else {
            return i;
        }
    }
}

/// d1(phi_c) = -sum N_{-a,-b} phi_a ^ phi_b over a < b with a + b = c,
/// reduced mod p with zero terms dropped.
pub fn d1(ch: &Chevalley, c: usize, p: u64) -> Vec<((usize, usize), u64)> {
    ch.splittings(c)
        .filter_map(|(a, b)| {
            let (_, n) = ch.bracket(a, b).unwrap();
            let v = reduce(-n, p);
            (v != 0).then_some(((a, b), v))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(rs: &RootSystem, v: &[i64]) -> usize {
        rs.root_index(v).unwrap()
    }

    #[test]
    fn all_types_build() {
        for t in ["A1", "A2", "A5", "B2", "B3", "B6", "C3", "C6", "D4", "D6", "E6", "E7", "E8", "F4", "G2"] {
            let rs = RootSystem::parse(t).unwrap();
            Chevalley::new(&rs).unwrap_or_else(|e| panic!("{t}: {e}"));
        }
    }

    #[test]
    fn random_extraspecial_signs_still_consistent() {
        for t in ["B3", "F4", "G2", "D5"] {
            let rs = RootSystem::parse(t).unwrap();
            let signs: Vec<i64> = (0..rs.num_positive()).map(|i| if i % 3 == 1 { -1 } else { 1 }).collect();
            Chevalley::with_signs(&rs, &signs).unwrap();
        }
    }

    #[test]
    fn magnitudes() {
        let a2 = RootSystem::parse("A2").unwrap();
        let ch = Chevalley::new(&a2).unwrap();
        assert_eq!(ch.bracket(0, 1).unwrap().1.abs(), 1);
        let b2 = RootSystem::parse("B2").unwrap();
        let ch = Chevalley::new(&b2).unwrap();
        let (c, n) = ch.bracket(1, idx(&b2, &[1, 1])).unwrap();
        assert_eq!(c, idx(&b2, &[1, 2]));
        assert_eq!(n.abs(), 2);
    }

    #[test]
    fn b3_differential() {
        let rs = RootSystem::parse("B3").unwrap();
        let ch = Chevalley::new(&rs).unwrap();
        let d = d1(&ch, idx(&rs, &[0, 1, 2]), 7);
        assert_eq!(d.len(), 1);
        let ((a, b), v) = d[0];
        assert_eq!((a, b), (idx(&rs, &[0, 0, 1]), idx(&rs, &[0, 1, 1])));
        assert!(v == 2 || v == 5);
        let d = d1(&ch, idx(&rs, &[1, 1, 2]), 7);
        let mut mags: Vec<u64> = d.iter().map(|&(_, v)| v.min(7 - v)).collect();
        mags.sort();
        assert_eq!(mags, vec![1, 2]);
    }

    #[test]
    fn g2_drops_at_three() {
        let rs = RootSystem::parse("G2").unwrap();
        let ch = Chevalley::new(&rs).unwrap();
        assert!(d1(&ch, idx(&rs, &[3, 1]), 3).is_empty());
        assert_eq!(d1(&ch, idx(&rs, &[3, 1]), 5).len(), 1);
    }
}
