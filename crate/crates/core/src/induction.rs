//! Good-filtration factors of H^3(G_r, H^0(lambda))^(-r), read off the
//! closed form for H^3(B_r, lambda).

use num_bigint::BigUint;
use serde::Serialize;

use crate::classify::{Classifier, CohClass};
use crate::error::{Error, Result};
use crate::rootsys::RootSystem;
use crate::weight::Weight;

/// Weyl's dimension formula.
pub fn weyl_dim(rs: &RootSystem, nu: &Weight) -> Result<BigUint> {
    if !nu.is_dominant() {
        return Err(Error::NotDominant(nu.to_string()));
    }
    let rho = rs.rho();
    let shifted = nu.add(&rho);
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for i in 0..rs.num_positive() {
        num *= rs.coroot_pairing(&shifted, i) as u64;
        den *= rs.coroot_pairing(&rho, i) as u64;
    }
    debug_assert!((&num % &den) == BigUint::from(0u32));
    Ok(num / den)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoodFiltration {
    /// dominant mu with the number of H^0(mu) sections, sorted
    pub factors: Vec<(Weight, u64)>,
    /// non-dominant weights of the B_r-cohomology, in the order they were
    /// met (height order for u* (x) nu): singular ones contribute nothing,
    /// the others cancel against a dominant term
    pub dropped: Vec<Weight>,
    #[serde(serialize_with = "big_as_string")]
    pub total_dim: BigUint,
}

fn big_as_string<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl GoodFiltration {
    /// Recompute the total dimension from the factors.
    pub fn factor_dim_sum(&self, rs: &RootSystem) -> Result<BigUint> {
        let mut t = BigUint::from(0u32);
        for (mu, m) in &self.factors {
            t += weyl_dim(rs, mu)? * *m;
        }
        Ok(t)
    }
}

/// Condition on a one-dimensional factor mu: <mu, alpha^vee> >= -1 for
/// every simple alpha. Under it no higher derived induction survives, both
/// for mu and for u* (x) mu.
fn admissible(mu: &Weight) -> Result<()> {
    if mu.0.iter().any(|&c| c < -1) {
        return Err(Error::FiltrationViolation(format!("{mu} pairs below -1 with a simple coroot")));
    }
    Ok(())
}

/// Euler characteristic of a weight: the dominant w.mu with the sign of w,
/// or None when mu + rho is singular.
pub fn euler(rs: &RootSystem, mu: &Weight) -> Option<(Weight, i64)> {
    let mut mu = mu.clone();
    let mut sign = 1;
    loop {
        match (0..rs.rank()).find(|&i| mu.0[i] < 0) {
            None => return Some((mu, sign)),
            Some(i) if mu.0[i] == -1 => return None,
            Some(i) => {
                mu = mu.sub(&rs.simple_root(i).scale(mu.0[i] + 1));
                sign = -sign;
            }
        }
    }
}

/// Factors H^0(mu) of ind_B^G(H^3(B_r, lambda)^(-r)) for dominant lambda,
/// for a class already computed. For u* (x) nu the factors come from the
/// Euler characteristic over the weights beta + nu, which is the character
/// once higher induction vanishes; every multiplicity must come out
/// non-negative.
pub fn filtration_of(rs: &RootSystem, class: &CohClass) -> Result<GoodFiltration> {
    let mut signed: std::collections::BTreeMap<Weight, i64> = Default::default();
    let mut dropped = Vec::new();
    match class {
        CohClass::Zero => {}
        CohClass::Line { nu, mult, .. } => {
            admissible(nu)?;
            if nu.is_dominant() {
                signed.insert(nu.clone(), *mult as i64);
            } else {
                dropped.push(nu.clone());
            }
        }
        CohClass::UStarTensor { nu, .. } => {
            admissible(nu)?;
            // positive roots are stored in height order
            for i in 0..rs.num_positive() {
                let mu = rs.root_omega(i).add(nu);
                if let Some((d, sg)) = euler(rs, &mu) {
                    *signed.entry(d).or_default() += sg;
                }
                if !mu.is_dominant() {
                    dropped.push(mu);
                }
            }
        }
    }
    let mut factors = Vec::new();
    for (mu, m) in signed {
        if m < 0 {
            return Err(Error::FiltrationViolation(format!("H^0({mu}) would occur with multiplicity {m}")));
        }
        if m > 0 {
            factors.push((mu, m as u64));
        }
    }
    let mut f = GoodFiltration { factors, dropped, total_dim: BigUint::from(0u32) };
    f.total_dim = f.factor_dim_sum(rs)?;
    Ok(f)
}

/// Non-dominant weights beta + nu of a u* (x) nu class that pair below -1
/// with some simple coroot. Such weights are harmless for the filtration,
/// which only needs the condition on nu, but they are where a weight-by-weight
/// reading of that condition breaks down.
pub fn weights_below_minus_one(rs: &RootSystem, class: &CohClass) -> Vec<Weight> {
    match class {
        CohClass::UStarTensor { nu, .. } => (0..rs.num_positive())
            .map(|i| rs.root_omega(i).add(nu))
            .filter(|mu| mu.0.iter().any(|&c| c < -1))
            .collect(),
        _ => Vec::new(),
    }
}

/// r = 1 goes through H^3(B_1, -), r >= 2 through the B_r closed form.
pub fn good_filtration_factors(c: &Classifier, lambda: &Weight, r: u32) -> Result<GoodFiltration> {
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let class = if r == 1 { c.classify_h3_b1_any(lambda)?.class } else { c.classify_h3_br(lambda, r)?.class };
    filtration_of(c.root_system(), &class)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims() {
        let a1 = RootSystem::parse("A1").unwrap();
        for m in 0..20 {
            assert_eq!(weyl_dim(&a1, &Weight(vec![m])).unwrap(), BigUint::from(m as u64 + 1));
        }
        let a2 = RootSystem::parse("A2").unwrap();
        assert_eq!(weyl_dim(&a2, &a2.rho()).unwrap(), BigUint::from(8u32));
        assert_eq!(weyl_dim(&a2, &Weight(vec![0, 0])).unwrap(), BigUint::from(1u32));
        let g2 = RootSystem::parse("G2").unwrap();
        // the two fundamental modules of G2 have dimensions 7 and 14
        let mut d: Vec<BigUint> = (0..2).map(|i| weyl_dim(&g2, &g2.fundamental(i)).unwrap()).collect();
        d.sort();
        assert_eq!(d, vec![BigUint::from(7u32), BigUint::from(14u32)]);
        let e8 = RootSystem::parse("E8").unwrap();
        let mut d: Vec<BigUint> = (0..8).map(|i| weyl_dim(&e8, &e8.fundamental(i)).unwrap()).collect();
        d.sort();
        assert_eq!(d[0], BigUint::from(248u32));
        assert!(matches!(weyl_dim(&a2, &Weight(vec![-1, 0])), Err(Error::NotDominant(_))));
    }

    #[test]
    fn regular_twist_keeps_every_root() {
        let rs = RootSystem::parse("A2").unwrap();
        let c = Classifier::new(&rs, 5, false).unwrap();
        let nu = rs.rho();
        let lambda = nu.scale(25).sub(&rs.simple_root(0));
        let f = good_filtration_factors(&c, &lambda, 2).unwrap();
        assert!(f.dropped.is_empty());
        assert_eq!(f.factors.iter().map(|x| x.1).sum::<u64>(), 3);
    }

    #[test]
    fn length_three_line() {
        let rs = RootSystem::parse("B3").unwrap();
        let c = Classifier::new(&rs, 7, false).unwrap();
        let w = crate::rootsys::elements_of_length(&rs, 3).remove(0);
        let nu = Weight(vec![1, 1, 2]);
        let lambda = nu.scale(49).add(&rs.dot_action(&w, &Weight::zero(3)).scale(7));
        let f = good_filtration_factors(&c, &lambda, 2).unwrap();
        assert_eq!(f.factors, vec![(nu, 1)]);
        assert!(good_filtration_factors(&c, &Weight(vec![1, 0, 0]), 2).unwrap().factors.is_empty());
    }

    #[test]
    fn short_root_pairing_below_minus_one() {
        // u* (x) omega_2 in B3: alpha_2 + omega_2 pairs -2 with alpha_3^vee,
        // and contributes nothing since it pairs -1 with alpha_1^vee
        let rs = RootSystem::parse("B3").unwrap();
        let c = Classifier::new(&rs, 7, false).unwrap();
        let l = Weight(vec![1, 47, 2]);
        let k = c.classify_h3_br(&l, 2).unwrap().class;
        assert_eq!(k, CohClass::UStarTensor { nu: rs.fundamental(1), r: 2 });
        let f = filtration_of(&rs, &k).unwrap();
        let a2 = rs.simple_root(1).add(&rs.fundamental(1));
        assert_eq!(a2, Weight(vec![-1, 3, -2]));
        assert!(f.dropped.contains(&a2));
        assert_eq!(euler(&rs, &a2), None);
        assert_eq!(f.total_dim, f.factor_dim_sum(&rs).unwrap());
    }

    #[test]
    fn euler_signs() {
        let a1 = RootSystem::parse("A1").unwrap();
        assert_eq!(euler(&a1, &Weight(vec![-1])), None);
        assert_eq!(euler(&a1, &Weight(vec![-3])), Some((Weight(vec![1]), -1)));
        assert_eq!(euler(&a1, &Weight(vec![4])), Some((Weight(vec![4]), 1)));
    }
}
