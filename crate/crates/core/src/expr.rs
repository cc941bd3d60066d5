//! Weight input: either comma-separated fundamental-weight coordinates
//! (`1,-3,0`) or a small expression language for p-adic shapes, e.g.
//! `p^2*w.0(s1 s2 s1) - p*a2` or `-7b-a`.
//!
//! Atoms: `aN` (simple root), `wN` (fundamental weight), `rho`,
//! `w.0(sI sJ ...)` (dot action on 0), and the bare letters `a`..`h` for the
//! first eight simple roots. Scalars: integers, `p`, `^`. Products may be
//! written by juxtaposition (`7b`, `2p^2a1`). Indices are 1-based in the
//! user's numbering; the result is in internal coordinates.

use crate::error::{Error, Result};
use crate::rootsys::RootSystem;
use crate::weight::Weight;

#[derive(Debug, Clone)]
enum Val {
    Scalar(i64),
    Weight(Weight),
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
    rs: &'a RootSystem,
    p: i64,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn overflow() -> Error {
    Error::Overflow("weight expression".into())
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        let t = std::str::from_utf8(&self.s[start..self.i]).unwrap();
        t.parse().map_err(|_| bad(format!("expected a number at position {start}")))
    }

    fn index(&mut self) -> Result<usize> {
        let k = self.int()?;
        if k < 1 || k as usize > self.rs.rank() {
            return Err(bad(format!("index {k} out of range 1..={}", self.rs.rank())));
        }
        Ok(self.rs.index_from_user(k as usize - 1))
    }

    fn expr(&mut self) -> Result<Val> {
        let mut acc: Option<Val> = None;
        loop {
            let neg = if self.eat(b'-') {
                true
            } else {
                let plus = self.eat(b'+');
                if !plus && acc.is_some() {
                    break;
                }
                false
            };
            let mut t = self.term()?;
            if neg {
                t = mul(Val::Scalar(-1), t)?;
            }
            acc = Some(match acc {
                None => t,
                Some(a) => add(a, t)?,
            });
            if self.peek().is_none() || self.peek() == Some(b')') {
                break;
            }
        }
        acc.ok_or_else(|| bad("empty expression"))
    }

    fn term(&mut self) -> Result<Val> {
        let mut v = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.i += 1;
                    v = mul(v, self.factor()?)?;
                }
                Some(c) if c.is_ascii_alphanumeric() || c == b'(' => v = mul(v, self.factor()?)?,
                _ => return Ok(v),
            }
        }
    }

    fn factor(&mut self) -> Result<Val> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.int()?;
            return match base {
                Val::Scalar(b) => b.checked_pow(e as u32).map(Val::Scalar).ok_or_else(overflow),
                Val::Weight(_) => Err(bad("only scalars can be raised to a power")),
            };
        }
        Ok(base)
    }

    fn word(&mut self) -> Result<Vec<usize>> {
        if !self.eat(b'(') {
            return Err(bad("expected `(` after `w.0`"));
        }
        let mut w = Vec::new();
        while !self.eat(b')') {
            if !self.eat(b's') {
                return Err(bad("expected `sN` in a Weyl word"));
            }
            w.push(self.index()?);
        }
        Ok(w)
    }

    fn atom(&mut self) -> Result<Val> {
        let c = self.peek().ok_or_else(|| bad("unexpected end of expression"))?;
        let rest = &self.s[self.i..];
        if c == b'(' {
            self.i += 1;
            let v = self.expr()?;
            if !self.eat(b')') {
                return Err(bad("missing `)`"));
            }
            return Ok(v);
        }
        if c.is_ascii_digit() {
            return Ok(Val::Scalar(self.int()?));
        }
        let n = self.rs.rank();
        if rest.starts_with(b"rho") {
            self.i += 3;
            return Ok(Val::Weight(self.rs.rho()));
        }
        if rest.starts_with(b"w.0") {
            self.i += 3;
            let w = self.word()?;
            return Ok(Val::Weight(self.rs.dot_word(&w, &Weight::zero(n))));
        }
        let digit_next = rest.get(1).is_some_and(|d| d.is_ascii_digit());
        self.i += 1;
        match c {
            b'p' => Ok(Val::Scalar(self.p)),
            b'a' if digit_next => {
                let k = self.index()?;
                Ok(Val::Weight(self.rs.simple_root(k)))
            }
            b'w' if digit_next => {
                let k = self.index()?;
                Ok(Val::Weight(self.rs.fundamental(k)))
            }
            b'a'..=b'h' => {
                let k = (c - b'a') as usize;
                if k >= n {
                    return Err(bad(format!("`{}` names a simple root beyond rank {n}", c as char)));
                }
                Ok(Val::Weight(self.rs.simple_root(self.rs.index_from_user(k))))
            }
            _ => Err(bad(format!("unexpected `{}` at position {}", c as char, self.i - 1))),
        }
    }
}

fn mul(a: Val, b: Val) -> Result<Val> {
    match (a, b) {
        (Val::Scalar(x), Val::Scalar(y)) => x.checked_mul(y).map(Val::Scalar).ok_or_else(overflow),
        (Val::Scalar(x), Val::Weight(w)) | (Val::Weight(w), Val::Scalar(x)) => {
            let mut out = Vec::with_capacity(w.0.len());
            for c in w.0 {
                out.push(c.checked_mul(x).ok_or_else(overflow)?);
            }
            Ok(Val::Weight(Weight(out)))
        }
        _ => Err(bad("cannot multiply two weights")),
    }
}

fn add(a: Val, b: Val) -> Result<Val> {
    match (a, b) {
        (Val::Scalar(x), Val::Scalar(y)) => x.checked_add(y).map(Val::Scalar).ok_or_else(overflow),
        (Val::Weight(v), Val::Weight(w)) => {
            let mut out = Vec::with_capacity(v.0.len());
            for (x, y) in v.0.iter().zip(&w.0) {
                out.push(x.checked_add(*y).ok_or_else(overflow)?);
            }
            Ok(Val::Weight(Weight(out)))
        }
        _ => Err(bad("cannot add a number to a weight")),
    }
}

/// Parse a weight for `rs` at the prime `p`; returns internal coordinates.
pub fn parse_weight(rs: &RootSystem, p: u64, s: &str) -> Result<Weight> {
    let s = s.trim();
    let n = rs.rank();
    let literal = s.contains(',') || (n == 1 && s.trim_start_matches('-').chars().all(|c| c.is_ascii_digit()) && !s.is_empty());
    if literal {
        let coords: Vec<i64> = s
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| bad(format!("`{t}` is not an integer"))))
            .collect::<Result<_>>()?;
        if coords.len() != n {
            return Err(bad(format!("expected {n} coordinates, got {}", coords.len())));
        }
        return Ok(rs.weight_from_user(&Weight(coords)));
    }
    let mut ps = Parser { s: s.as_bytes(), i: 0, rs, p: p as i64 };
    let v = ps.expr()?;
    if ps.peek().is_some() {
        return Err(bad(format!("unexpected trailing input at position {}", ps.i)));
    }
    match v {
        Val::Weight(w) => Ok(w),
        Val::Scalar(0) => Ok(Weight::zero(n)),
        Val::Scalar(_) => Err(bad("expression is a number, not a weight")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        let b3 = RootSystem::parse("B3").unwrap();
        let a = b3.simple_root(0);
        let b = b3.simple_root(1);
        assert_eq!(parse_weight(&b3, 7, "-7b-a").unwrap(), b.scale(-7).sub(&a));
        assert_eq!(parse_weight(&b3, 7, "-p*a2 - a1").unwrap(), b.scale(-7).sub(&a));
        assert_eq!(parse_weight(&b3, 7, "1,-3,0").unwrap(), Weight(vec![1, -3, 0]));
        assert_eq!(parse_weight(&b3, 7, "2w1 + rho").unwrap(), Weight(vec![3, 1, 1]));
        let a2 = RootSystem::parse("A2").unwrap();
        let w = a2.dot_word(&[0, 1, 0], &Weight::zero(2));
        assert_eq!(w, Weight(vec![-2, -2]));
        assert_eq!(
            parse_weight(&a2, 5, "p^2*w.0(s1 s2 s1) - p*a2").unwrap(),
            w.scale(25).sub(&a2.simple_root(1).scale(5))
        );
        assert_eq!(parse_weight(&a2, 5, "0").unwrap(), Weight(vec![0, 0]));
        let a1 = RootSystem::parse("A1").unwrap();
        assert_eq!(parse_weight(&a1, 5, "-3").unwrap(), Weight(vec![-3]));
    }

    #[test]
    fn user_numbering_for_c2() {
        let c2 = RootSystem::parse("C2").unwrap();
        let w = parse_weight(&c2, 5, "a1").unwrap();
        assert_eq!(c2.weight_to_user(&w), Weight(vec![2, -1]));
        assert_eq!(c2.weight_to_user(&parse_weight(&c2, 5, "3,4").unwrap()), Weight(vec![3, 4]));
    }

    #[test]
    fn errors() {
        let a2 = RootSystem::parse("A2").unwrap();
        for s in ["", "a3", "a1*a2", "1+a1", "3", "c", "1,2,3", "w.0(s1", "p^", "a1 a2", "x"] {
            assert!(parse_weight(&a2, 5, s).is_err(), "{s}");
        }
    }
}
