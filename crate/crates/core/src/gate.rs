//! Admissibility of a prime for the various closed-form results.

use crate::error::{Error, Result};
use crate::rootsys::{Family, RootSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimeGate {
    /// Standing hypothesis for the B_r computations.
    Standard,
    /// Range of the Kostant-type description of H^*(u, k) in degree 3.
    Kostant,
    /// Range of the splitting of H^3(U_1, k).
    RestrictedSplit,
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl PrimeGate {
    pub fn admits(self, rs: &RootSystem, p: u64) -> bool {
        self.reason(rs, p).is_none()
    }

    pub fn check(self, rs: &RootSystem, p: u64) -> Result<()> {
        match self.reason(rs, p) {
            None => Ok(()),
            Some(reason) => Err(Error::PrimeGate { system: rs.label().to_string(), p, reason }),
        }
    }

    fn reason(self, rs: &RootSystem, p: u64) -> Option<String> {
        if !is_prime(p) {
            return Some("not a prime".into());
        }
        let (f, n) = rs.canonical();
        let min = match self {
            PrimeGate::Standard | PrimeGate::RestrictedSplit => match (f, n) {
                (Family::B, n) if n >= 3 => 7,
                (Family::F, _) | (Family::G, _) => 7,
                _ => 5,
            },
            PrimeGate::Kostant => match (f, n) {
                (Family::A, n) if n <= 3 => 3,
                (Family::B, 2) => 3,
                (Family::B, n) if n >= 4 => 7,
                (Family::F, _) => 7,
                _ => 5,
            },
        };
        if p < min {
            return Some(format!("requires p >= {min}"));
        }
        if self == PrimeGate::Standard {
            if (f, n, p) == (Family::A, 4, 5) {
                return Some("p = 5 is excluded for A4".into());
            }
            if (f, n, p) == (Family::A, 6, 7) {
                return Some("p = 7 is excluded for A6".into());
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_gate() {
        let r = |s: &str| RootSystem::parse(s).unwrap();
        assert!(PrimeGate::Standard.admits(&r("A2"), 5));
        assert!(!PrimeGate::Standard.admits(&r("A2"), 3));
        assert!(!PrimeGate::Standard.admits(&r("A4"), 5));
        assert!(PrimeGate::Standard.admits(&r("A4"), 7));
        assert!(!PrimeGate::Standard.admits(&r("A6"), 7));
        assert!(PrimeGate::Standard.admits(&r("B2"), 5));
        assert!(!PrimeGate::Standard.admits(&r("B3"), 5));
        assert!(PrimeGate::Standard.admits(&r("G2"), 7));
        assert!(!PrimeGate::Standard.admits(&r("C3"), 9));
        assert!(PrimeGate::Kostant.admits(&r("B2"), 3));
        assert!(!PrimeGate::Kostant.admits(&r("B4"), 5));
        assert!(PrimeGate::Kostant.admits(&r("B3"), 5));
    }
}
