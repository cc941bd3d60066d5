//! Closed forms against brute force: the Ext oracle for B_1 and rank-one
//! B_r, and the Chevalley-Eilenberg computation for the B_1 bridge.

use serde::Serialize;

use crate::chevalley::Chevalley;
use crate::classify::{h0_br, Classifier};
use crate::cohomology::{ce_cohomology, h3_u1_char, Coeff};
use crate::error::{Error, Result};
use crate::oracle::{select_invariants, Oracle};
use crate::par::Mode;
use crate::rootsys::RootSystem;
use crate::weight::{TChar, Weight};

#[derive(Debug, Clone, Default, Serialize)]
pub struct CrossReport {
    /// number of (weight, degree) comparisons
    pub checked: usize,
    pub discrepancies: Vec<String>,
}

impl CrossReport {
    pub fn passes(&self) -> bool {
        self.discrepancies.is_empty()
    }

    fn compare(&mut self, what: impl FnOnce() -> String, got: &TChar, want: &TChar) {
        self.checked += 1;
        if got != want {
            self.discrepancies.push(format!("{}: closed form {:?}, brute force {:?}", what(), got, want));
        }
    }
}

/// All integer vectors in [lo, hi]^n, in lexicographic order.
pub fn cube(n: usize, lo: i64, hi: i64) -> Vec<Weight> {
    let mut out = vec![Weight(Vec::new())];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (lo..=hi).map(move |c| {
                    let mut v = w.0.clone();
                    v.push(c);
                    Weight(v)
                })
            })
            .collect();
    }
    out
}

/// Oracle against the classifiers.
///
/// r = 1: every restricted lambda_0 in degrees 0-3, then H^n(U_1, k) for
/// n <= 3 against the Chevalley-Eilenberg assembly and, in rank >= 2,
/// H^1(U_1, u*) against H^1(u, u*).
/// r >= 2 (rank one): every lambda in [-2p^2, 2p^2] in degrees 0 and 3.
pub fn crosscheck(rs: &RootSystem, p: u64, r: u32, force: bool, mode: Mode) -> Result<CrossReport> {
    if r == 0 {
        return Err(Error::InvalidInput("r must be at least 1".into()));
    }
    let c = Classifier::new(rs, p, force)?;
    let oracle = Oracle::new(rs, p, r as usize)?;
    let h = oracle.trivial_ext(3)?;
    let mut rep = CrossReport::default();
    let n = rs.rank();
    let pi = p as i64;
    if r == 1 {
        let lambdas = cube(n, 0, pi - 1);
        for l in &lambdas {
            for d in 0..=3 {
                let got = if d == 3 { c.classify_h3_b1(l) } else { c.low_degree_b1(l, d) }?;
                let want = select_invariants(&h[d], l, p, 1);
                rep.compare(|| format!("H^{d}(B_1, {}) [{}]", rs.weight_to_user(l), got.label), &got.class.character(rs, p), &want);
            }
        }
        let ch = Chevalley::new(rs)?;
        for d in 0..=2 {
            let ce = if d <= rs.num_positive() { ce_cohomology(rs, &ch, p, d, Coeff::Trivial, mode)? } else { TChar::new() };
            let mut want = TChar::new();
            // H^d(U_1, k) = sum over 2i + j = d of S^i(u*)^(1) (x) H^j(u, k)
            let ce_lower = if d == 2 { Some(ce_cohomology(rs, &ch, p, 0, Coeff::Trivial, mode)?) } else { None };
            for (w, m) in ce.iter() {
                want.add(w.clone(), *m);
            }
            if let Some(h0) = ce_lower {
                for b in 0..rs.num_positive() {
                    for (w, m) in h0.iter() {
                        want.add(rs.root_omega(b).scale(pi).add(w), *m);
                    }
                }
            }
            rep.compare(|| format!("H^{d}(U_1, k)"), &h[d], &want);
        }
        let want = h3_u1_char(rs, &ch, p, mode)?;
        rep.compare(|| "H^3(U_1, k)".into(), &h[3], &want);
        if n >= 2 {
            let got = oracle.coadjoint_ext(1)?;
            let want = ce_cohomology(rs, &ch, p, 1, Coeff::UStar, mode)?;
            rep.compare(|| "H^1(U_1, u*) against H^1(u, u*)".into(), &got, &want);
        }
    } else {
        let b = 2 * pi * pi;
        for l in cube(n, -b, b) {
            let got = c.classify_h3_br(&l, r)?;
            let want = select_invariants(&h[3], &l, p, r as usize);
            rep.compare(|| format!("H^3(B_{r}, {}) [{}]", rs.weight_to_user(&l), got.label), &got.class.character(rs, p), &want);
            let want0 = select_invariants(&h[0], &l, p, r as usize);
            rep.compare(|| format!("H^0(B_{r}, {})", rs.weight_to_user(&l)), &h0_br(&l, p, r).character(rs, p), &want0);
        }
    }
    Ok(rep)
}

/// One restricted weight where the two B_1 dimensions differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BridgeMismatch {
    pub lambda0: Weight,
    pub classified: u64,
    pub computed: u64,
}

/// dim H^3(B_1, lambda_0) from the closed form against the T_1-invariants of
/// H^3(U_1, k) (x) lambda_0 with H^3(U_1, k) assembled from H^3(u, k) and
/// (u*)^(1) (x) H^1(u, k), over all of X_1(T).
pub fn b1_bridge(rs: &RootSystem, p: u64, force: bool, mode: Mode) -> Result<(usize, Vec<BridgeMismatch>)> {
    let c = Classifier::new(rs, p, force)?;
    let ch = Chevalley::new(rs)?;
    let u1 = h3_u1_char(rs, &ch, p, mode)?;
    let lambdas = cube(rs.rank(), 0, p as i64 - 1);
    let dims = mode.map(&lambdas, |l| -> Result<(u64, u64)> {
        let cl = c.classify_h3_b1(l)?.class.dim(rs);
        Ok((cl, select_invariants(&u1, l, p, 1).dim()))
    });
    let mut bad = Vec::new();
    for (l, d) in lambdas.iter().zip(dims) {
        let (classified, computed) = d?;
        if classified != computed {
            bad.push(BridgeMismatch { lambda0: rs.weight_to_user(l), classified, computed });
        }
    }
    Ok((lambdas.len(), bad))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_r1() {
        let rs = RootSystem::parse("A2").unwrap();
        let rep = crosscheck(&rs, 5, 1, false, Mode::Rayon).unwrap();
        assert!(rep.passes(), "{:?}", rep.discrepancies);
        assert_eq!(rep.checked, 25 * 4 + 3 + 1 + 1);
    }

    #[test]
    fn bridge_a2() {
        let rs = RootSystem::parse("A2").unwrap();
        let (n, bad) = b1_bridge(&rs, 5, false, Mode::Rayon).unwrap();
        assert_eq!(n, 25);
        assert!(bad.is_empty(), "{bad:?}");
    }
}
