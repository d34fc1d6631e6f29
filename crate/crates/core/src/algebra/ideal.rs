use std::fmt;

use serde::{Deserialize, Serialize};

use super::monomial::{Monomial, MAX_VARS};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Limits on ordinary and symbolic power computations.
pub const MAX_POWER: u32 = 6;
pub const MAX_POWER_VARS: usize = 14;

/// Monomial ideal stored by its minimal generators in canonical order.
/// The zero ideal has no generators; the unit ideal is `(1)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

#[derive(Deserialize)]
struct IdealJson {
    n: usize,
    gens: Vec<Monomial>,
}

impl<'de> Deserialize<'de> for MonomialIdeal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = IdealJson::deserialize(d)?;
        MonomialIdeal::minimalize(raw.n, raw.gens).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn check_power_caps(n: usize, r: u32) -> Result<()> {
    if r == 0 {
        return Err(Error::ZeroPower);
    }
    if r > MAX_POWER {
        return Err(Error::CapExceeded {
            what: "power",
            value: r as usize,
            limit: MAX_POWER as usize,
        });
    }
    if n > MAX_POWER_VARS {
        return Err(Error::CapExceeded {
            what: "variables for a power",
            value: n,
            limit: MAX_POWER_VARS,
        });
    }
    Ok(())
}

impl MonomialIdeal {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_VARS);
        MonomialIdeal { n, gens: Vec::new() }
    }

    pub fn unit(n: usize) -> Self {
        MonomialIdeal {
            n,
            gens: vec![Monomial::one(n)],
        }
    }

    pub fn edge_ideal(g: &Graph) -> Self {
        let gens = g
            .edges()
            .iter()
            .map(|&(u, v)| Monomial::var(g.n(), u).mul(&Monomial::var(g.n(), v)))
            .collect();
        Self::minimalize(g.n(), gens).expect("edge monomials share the ambient ring")
    }

    /// `(x_i : i ∈ vars)`.
    pub fn prime(n: usize, vars: impl IntoIterator<Item = usize>) -> Self {
        let gens = vars.into_iter().map(|i| Monomial::var(n, i)).collect();
        Self::minimalize(n, gens).expect("variables share the ambient ring")
    }

    pub fn minimalize(n: usize, mut gens: Vec<Monomial>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.n() != n) {
            return Err(Error::AmbientMismatch(g.n(), n));
        }
        gens.sort_unstable();
        gens.dedup();
        let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
        for g in gens {
            // kept generators have degree ≤ deg g, so only they can divide g
            if !kept.iter().any(|k| k.divides(&g)) {
                kept.push(g);
            }
        }
        Ok(MonomialIdeal { n, gens: kept })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        m.n() == self.n && self.gens.iter().any(|g| g.divides(m))
    }

    pub fn is_subset(&self, other: &MonomialIdeal) -> bool {
        self.n == other.n && self.gens.iter().all(|g| other.contains(g))
    }

    fn check_ambient(&self, other: &MonomialIdeal) -> Result<()> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ambient(other)?;
        let gens = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a.mul(b)))
            .collect();
        Self::minimalize(self.n, gens)
    }

    /// `I^r` for `r ≥ 1`.
    pub fn power(&self, r: u32) -> Result<MonomialIdeal> {
        check_power_caps(self.n, r)?;
        let mut acc = self.clone();
        for _ in 1..r {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ambient(other)?;
        let gens = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a.lcm(b)))
            .collect();
        Self::minimalize(self.n, gens)
    }

    /// `(I : f)`.
    pub fn colon(&self, f: &Monomial) -> Result<MonomialIdeal> {
        if f.n() != self.n {
            return Err(Error::AmbientMismatch(f.n(), self.n));
        }
        let gens = self.gens.iter().map(|g| g.colon(f)).collect();
        Self::minimalize(self.n, gens)
    }

    /// `(I, f)`.
    pub fn add_generator(&self, f: Monomial) -> Result<MonomialIdeal> {
        if f.n() != self.n {
            return Err(Error::AmbientMismatch(f.n(), self.n));
        }
        let mut gens = self.gens.clone();
        gens.push(f);
        Self::minimalize(self.n, gens)
    }

    /// `(I, x_v)`.
    pub fn add_variable_gen(&self, v: usize) -> Result<MonomialIdeal> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        self.add_generator(Monomial::var(self.n, v))
    }

    /// Same generators viewed in a ring with `extra` more variables.
    pub fn extend_ambient(&self, n: usize) -> Result<MonomialIdeal> {
        if n < self.n || n > MAX_VARS {
            return Err(Error::AmbientMismatch(self.n, n));
        }
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut e: Vec<u32> = g.exponents().iter().map(|&x| x as u32).collect();
                e.resize(n, 0);
                Monomial::from_exponents(&e)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MonomialIdeal { n, gens })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("ideal serializes")
    }

    pub fn from_json(s: &str) -> Result<MonomialIdeal> {
        Ok(serde_json::from_str(s)?)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonomialIdeal[n={}]{}", self.n, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::minimalize(n, gens.iter().map(|g| m(g)).collect()).unwrap()
    }

    #[test]
    fn edge_ideals() {
        let c3 = MonomialIdeal::edge_ideal(&Graph::cycle(3));
        assert_eq!(c3, ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]));
        assert_eq!(c3.len(), 3);
        assert_eq!(
            MonomialIdeal::edge_ideal(&Graph::complete(2)),
            ideal(2, &[&[1, 1]])
        );
        assert!(MonomialIdeal::edge_ideal(&Graph::empty(3)).is_zero());
    }

    #[test]
    fn minimalize_examples() {
        assert_eq!(ideal(2, &[&[1, 1], &[2, 1]]).gens(), &[m(&[1, 1])]);
        assert!(ideal(2, &[]).is_zero());
        assert!(ideal(2, &[&[0, 0], &[1, 0]]).is_unit());
        assert!(MonomialIdeal::minimalize(2, vec![m(&[1, 0, 0])]).is_err());
    }

    #[test]
    fn power_examples() {
        assert_eq!(ideal(2, &[&[1, 1]]).power(3).unwrap(), ideal(2, &[&[3, 3]]));
        let i = MonomialIdeal::edge_ideal(&Graph::cycle(3));
        let sq = i.power(2).unwrap();
        let expected = ideal(
            3,
            &[&[2, 2, 0], &[0, 2, 2], &[2, 0, 2], &[2, 1, 1], &[1, 2, 1], &[1, 1, 2]],
        );
        assert_eq!(sq, expected);
        assert_eq!(i.power(1).unwrap(), i);
        assert!(matches!(i.power(0), Err(Error::ZeroPower)));
        assert!(i.power(7).is_err());
        let big = MonomialIdeal::edge_ideal(&Graph::cycle(15));
        assert!(big.power(2).is_err());
    }

    #[test]
    fn membership_examples() {
        let i = MonomialIdeal::edge_ideal(&Graph::cycle(3));
        assert!(!i.power(2).unwrap().contains(&m(&[1, 1, 1])));
        assert!(!MonomialIdeal::zero(3).contains(&Monomial::one(3)));
        assert!(MonomialIdeal::unit(3).contains(&Monomial::one(3)));
    }

    #[test]
    fn intersect_examples() {
        assert_eq!(
            ideal(3, &[&[1, 0, 0]]).intersect(&ideal(3, &[&[0, 1, 0]])).unwrap(),
            ideal(3, &[&[1, 1, 0]])
        );
        let i = MonomialIdeal::edge_ideal(&Graph::cycle(4));
        assert_eq!(i.intersect(&MonomialIdeal::unit(4)).unwrap(), i);
        assert_eq!(
            ideal(3, &[&[1, 1, 0]]).intersect(&ideal(3, &[&[0, 1, 1]])).unwrap(),
            ideal(3, &[&[1, 1, 1]])
        );
        assert!(i.intersect(&MonomialIdeal::zero(4)).unwrap().is_zero());
    }

    #[test]
    fn colon_and_add_examples() {
        assert_eq!(
            ideal(2, &[&[1, 1]]).colon(&m(&[1, 0])).unwrap(),
            ideal(2, &[&[0, 1]])
        );
        let i = MonomialIdeal::edge_ideal(&Graph::cycle(3));
        assert_eq!(i.colon(&Monomial::one(3)).unwrap(), i);
        assert!(i.colon(&m(&[1, 1, 0])).unwrap().is_unit());
        assert_eq!(
            ideal(2, &[&[1, 1]]).add_variable_gen(0).unwrap(),
            ideal(2, &[&[1, 0]])
        );
        assert_eq!(
            MonomialIdeal::zero(3).add_variable_gen(2).unwrap(),
            ideal(3, &[&[0, 0, 1]])
        );
        assert_eq!(
            i.add_variable_gen(0).unwrap(),
            ideal(3, &[&[1, 0, 0], &[0, 1, 1]])
        );
        assert!(i.add_variable_gen(3).is_err());
    }

    #[test]
    fn json_round_trip() {
        let i = MonomialIdeal::edge_ideal(&Graph::path(3));
        let s = i.to_json();
        assert_eq!(s, r#"{"n":3,"gens":[[1,1,0],[0,1,1]]}"#);
        assert_eq!(MonomialIdeal::from_json(&s).unwrap(), i);
        // non-minimal input is normalized on read
        let j = MonomialIdeal::from_json(r#"{"n":2,"gens":[[2,1],[1,1]]}"#).unwrap();
        assert_eq!(j.gens(), &[m(&[1, 1])]);
    }
}
