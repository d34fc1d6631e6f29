use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{VertexSet, MAX_VERTICES};

pub const MAX_VARS: usize = MAX_VERTICES;

/// Exponent vector in `n ≤ MAX_VARS` variables. Unused slots stay zero so
/// derived equality and hashing only see the live prefix.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    n: u8,
    e: [u8; MAX_VARS],
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        assert!(n <= MAX_VARS, "too many variables");
        Monomial {
            n: n as u8,
            e: [0; MAX_VARS],
        }
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::CapExceeded {
                what: "variable count",
                value: exps.len(),
                limit: MAX_VARS,
            });
        }
        let mut m = Monomial::one(exps.len());
        for (slot, &x) in m.e.iter_mut().zip(exps) {
            *slot = u8::try_from(x).map_err(|_| Error::CapExceeded {
                what: "exponent",
                value: x as usize,
                limit: u8::MAX as usize,
            })?;
        }
        Ok(m)
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut m = Monomial::one(n);
        m.e[i] = 1;
        m
    }

    /// `x_U`, the squarefree monomial on `U`.
    pub fn squarefree(n: usize, u: VertexSet) -> Self {
        let mut m = Monomial::one(n);
        for i in u.iter() {
            m.e[i] = 1;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn exponents(&self) -> &[u8] {
        &self.e[..self.n as usize]
    }

    pub fn get(&self, i: usize) -> u32 {
        self.e[i] as u32
    }

    pub fn set(&mut self, i: usize, value: u8) {
        assert!(i < self.n());
        self.e[i] = value;
    }

    pub fn degree(&self) -> u32 {
        self.exponents().iter().map(|&x| x as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.e.iter().all(|&x| x == 0)
    }

    pub fn support(&self) -> VertexSet {
        (0..self.n()).filter(|&i| self.e[i] > 0).collect()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.e.iter().zip(&other.e).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for (a, b) in m.e.iter_mut().zip(&other.e) {
            *a = (*a).max(*b);
        }
        m
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for (a, b) in m.e.iter_mut().zip(&other.e) {
            *a = (*a).min(*b);
        }
        m
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for (a, b) in m.e.iter_mut().zip(&other.e) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        m
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut m = *self;
        for (a, b) in m.e.iter_mut().zip(&other.e) {
            *a = a.checked_sub(*b)?;
        }
        Some(m)
    }

    /// `self / gcd(self, f)`, the colon generator.
    pub fn colon(&self, f: &Monomial) -> Monomial {
        let mut m = *self;
        for (a, b) in m.e.iter_mut().zip(&f.e) {
            *a = a.saturating_sub(*b);
        }
        m
    }

    /// Parses `x0^2*x1`, `x0^2x1`, `1`, or a JSON exponent list.
    pub fn parse(text: &str, n: usize) -> Result<Monomial> {
        let t = text.trim();
        if t.starts_with('[') {
            let exps: Vec<u32> = serde_json::from_str(t)?;
            if exps.len() != n {
                return Err(Error::AmbientMismatch(exps.len(), n));
            }
            return Monomial::from_exponents(&exps);
        }
        let mut m = Monomial::one(n);
        if t == "1" {
            return Ok(m);
        }
        let bad = || Error::Parse(format!("bad monomial `{text}`"));
        for factor in t.split(['*', ' ']).filter(|s| !s.is_empty()) {
            // allow juxtaposed factors such as x0x1^2
            for piece in factor.split('x').skip(1) {
                let (var, exp) = match piece.split_once('^') {
                    Some((v, e)) => (v, e.parse::<u8>().map_err(|_| bad())?),
                    None => (piece, 1),
                };
                let i: usize = var.parse().map_err(|_| bad())?;
                if i >= n {
                    return Err(Error::VertexOutOfRange { vertex: i, n });
                }
                m.e[i] = m.e[i].checked_add(exp).ok_or_else(bad)?;
            }
            if !factor.starts_with('x') {
                return Err(bad());
            }
        }
        Ok(m)
    }
}

/// Graded order; within a degree, larger exponent vectors first
/// (`x0^2 < x0x1 < x1^2`).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then(self.degree().cmp(&other.degree()))
            .then_with(|| other.e.cmp(&self.e))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &x) in self.exponents().iter().enumerate() {
            if x == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{i}")?;
            if x > 1 {
                write!(f, "^{x}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Monomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.exponents())
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(d)?;
        Monomial::from_exponents(&v).map_err(serde::de::Error::custom)
    }
}
