use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicI64, Ordering};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use super::complex::SimplicialComplex;
use super::field::Field;
use super::packed;
use crate::algebra::{Monomial, MonomialIdeal};
use crate::error::{Error, Result};

pub const DEFAULT_LATTICE_CAP: usize = 200_000;

#[derive(Clone, Debug)]
pub struct EngineConfig {
    pub field: Field,
    pub lattice_cap: usize,
    pub deadline: Option<Instant>,
    /// Process lattice elements in a shuffled order (determinism checks).
    pub shuffle_seed: Option<u64>,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            field: Field::default(),
            lattice_cap: DEFAULT_LATTICE_CAP,
            deadline: None,
            shuffle_seed: None,
        }
    }
}

impl EngineConfig {
    pub fn with_field(field: Field) -> Self {
        EngineConfig {
            field,
            ..Self::default()
        }
    }

    pub fn with_timeout(mut self, t: Duration) -> Self {
        self.deadline = Some(Instant::now() + t);
        self
    }

    fn check_deadline(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::Timeout),
            _ => Ok(()),
        }
    }
}

fn require_proper(i: &MonomialIdeal) -> Result<()> {
    if i.is_zero() || i.is_unit() {
        return Err(Error::Precondition("ideal must be proper and nonzero".into()));
    }
    Ok(())
}

/// Join-closure of the generators, sorted canonically.
pub fn lcm_lattice(i: &MonomialIdeal, cfg: &EngineConfig) -> Result<Vec<Monomial>> {
    require_proper(i)?;
    let mut out = if packed::fits(i.gens()) {
        let gens: Vec<u128> = i.gens().iter().map(packed::pack).collect();
        closure(&gens, packed::lcm, cfg)?
            .into_iter()
            .map(|p| packed::unpack(p, i.n()))
            .collect()
    } else {
        closure(i.gens(), |a: Monomial, b: Monomial| a.lcm(&b), cfg)?
    };
    out.sort_unstable();
    Ok(out)
}

fn closure<T: Copy + Eq + std::hash::Hash>(
    gens: &[T],
    join: impl Fn(T, T) -> T,
    cfg: &EngineConfig,
) -> Result<Vec<T>> {
    let mut seen: FxHashSet<T> = gens.iter().copied().collect();
    let mut work: Vec<T> = gens.to_vec();
    let mut steps = 0usize;
    while let Some(m) = work.pop() {
        steps += 1;
        if steps.is_multiple_of(4096) {
            cfg.check_deadline()?;
        }
        for &g in gens {
            let l = join(m, g);
            if l != m && seen.insert(l) {
                if seen.len() > cfg.lattice_cap {
                    return Err(Error::CapExceeded {
                        what: "lcm lattice",
                        value: seen.len(),
                        limit: cfg.lattice_cap,
                    });
                }
                work.push(l);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// `K^m(I)`: squarefree `τ ⊆ supp(m)` with `m / x^τ ∈ I`. Its facets are
/// the maximal sets `{j : g_j < m_j}` over generators `g | m`.
pub fn upper_koszul(i: &MonomialIdeal, m: &Monomial) -> Result<SimplicialComplex> {
    if m.n() != i.n() {
        return Err(Error::AmbientMismatch(m.n(), i.n()));
    }
    if !i.contains(m) {
        return Err(Error::NotInIdeal);
    }
    Ok(KoszulBuilder::new(i.gens()).complex(m))
}

/// Builds `K^m` for many `m`, scanning packed generators when they fit.
struct KoszulBuilder<'a> {
    gens: &'a [Monomial],
    packed: Option<Vec<u128>>,
}

impl<'a> KoszulBuilder<'a> {
    fn new(gens: &'a [Monomial]) -> Self {
        let packed = packed::fits(gens).then(|| gens.iter().map(packed::pack).collect());
        KoszulBuilder { gens, packed }
    }

    fn complex(&self, m: &Monomial) -> SimplicialComplex {
        let n = m.n();
        let faces: Vec<u32> = match &self.packed {
            Some(gens) => {
                let pm = packed::pack(m);
                gens.iter()
                    .filter(|&&g| packed::divides(g, pm))
                    .map(|&g| packed::lt_lanes(g, pm, n))
                    .collect()
            }
            None => self
                .gens
                .iter()
                .filter(|g| g.divides(m))
                .map(|g| (0..n).filter(|&j| g.get(j) < m.get(j)).fold(0u32, |a, j| a | 1 << j))
                .collect(),
        };
        SimplicialComplex::from_faces(m.support(), faces)
    }
}

/// Multigraded Betti numbers of `I` over a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub field: Field,
    /// `(i, m) → β_{i,m}(I)`, nonzero entries only.
    pub fine: BTreeMap<(usize, Monomial), usize>,
}

impl BettiTable {
    /// `(i, j) → β_{i,j}(I)`.
    pub fn coarse(&self) -> BTreeMap<(usize, u32), usize> {
        let mut out = BTreeMap::new();
        for (&(i, m), &b) in &self.fine {
            *out.entry((i, m.degree())).or_insert(0) += b;
        }
        out
    }

    pub fn total(&self, i: usize) -> usize {
        self.fine.iter().filter(|((k, _), _)| *k == i).map(|(_, b)| b).sum()
    }

    /// `reg(I) = max{ j - i }`.
    pub fn regularity_of_ideal(&self) -> Option<i64> {
        self.fine.keys().map(|&(i, m)| m.degree() as i64 - i as i64).max()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let fine: Vec<_> = self
            .fine
            .iter()
            .map(|(&(i, m), &b)| serde_json::json!([i, m, b]))
            .collect();
        let coarse: Vec<_> = self
            .coarse()
            .iter()
            .map(|(&(i, j), &b)| serde_json::json!([i, j, b]))
            .collect();
        serde_json::json!({
            "char": self.field.characteristic(),
            "fine": fine,
            "coarse": coarse,
        })
    }
}

pub fn betti_table(i: &MonomialIdeal, cfg: &EngineConfig) -> Result<BettiTable> {
    let lattice = lcm_lattice(i, cfg)?;
    let builder = KoszulBuilder::new(i.gens());
    let entries: Vec<Vec<((usize, Monomial), usize)>> = lattice
        .par_iter()
        .map(|m| {
            cfg.check_deadline()?;
            let k = builder.complex(m);
            let dims = k.reduced_homology_dims(cfg.field)?;
            Ok(dims
                .iter()
                .enumerate()
                .filter(|(_, &d)| d > 0)
                .map(|(idx, &d)| ((idx, *m), d))
                .collect())
        })
        .collect::<Result<_>>()?;
    let table = BettiTable {
        field: cfg.field,
        fine: entries.into_iter().flatten().collect(),
    };
    // β_{0,m} = 1 exactly on the minimal generators
    let zeroth: Vec<Monomial> = table.fine.keys().filter(|(k, _)| *k == 0).map(|&(_, m)| m).collect();
    if zeroth != i.gens() || table.fine.iter().any(|(&(k, _), &b)| k == 0 && b != 1) {
        return Err(Error::InternalValidation("zeroth Betti numbers disagree with the generators".into()));
    }
    Ok(table)
}

/// `reg(S/I)`, with `-∞` for the unit ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Regularity {
    MinusInfinity,
    Value(i64),
}

impl Regularity {
    pub fn value(self) -> Option<i64> {
        match self {
            Regularity::Value(v) => Some(v),
            Regularity::MinusInfinity => None,
        }
    }

    /// Adds an integer; `-∞` absorbs.
    pub fn plus(self, d: i64) -> Regularity {
        match self {
            Regularity::Value(v) => Regularity::Value(v + d),
            r => r,
        }
    }

}

impl fmt::Display for Regularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regularity::Value(v) => write!(f, "{v}"),
            Regularity::MinusInfinity => write!(f, "-inf"),
        }
    }
}

/// `-∞` absorbs.
impl std::ops::Add for Regularity {
    type Output = Regularity;

    fn add(self, other: Regularity) -> Regularity {
        match (self, other) {
            (Regularity::Value(a), Regularity::Value(b)) => Regularity::Value(a + b),
            _ => Regularity::MinusInfinity,
        }
    }
}

impl Serialize for Regularity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Regularity::Value(v) => s.serialize_i64(*v),
            Regularity::MinusInfinity => s.serialize_str("-inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Regularity {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(Regularity::Value(v)),
            Raw::Str(s) if s == "-inf" => Ok(Regularity::MinusInfinity),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("bad regularity `{s}`"))),
        }
    }
}

/// The multidegree and homological index realizing `reg(I)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityWitness {
    pub multidegree: Monomial,
    pub homological_index: usize,
}

pub fn regularity_quotient(i: &MonomialIdeal, cfg: &EngineConfig) -> Result<Regularity> {
    Ok(regularity_with_witness(i, cfg)?.0)
}

/// `reg(S/I) = max_m (deg m − 1 − k_m) − 1`, where `k_m` is the lowest
/// nonzero reduced homology degree of `K^m(I)`. Each multidegree only needs
/// homology below the level that would beat the running maximum.
pub fn regularity_with_witness(
    i: &MonomialIdeal,
    cfg: &EngineConfig,
) -> Result<(Regularity, Option<RegularityWitness>)> {
    if i.is_zero() {
        return Ok((Regularity::Value(0), None));
    }
    if i.is_unit() {
        return Ok((Regularity::MinusInfinity, None));
    }
    let mut lattice = lcm_lattice(i, cfg)?;
    // generators give reg(I) ≥ their degree
    let top_gen = i.gens().iter().max_by_key(|g| g.degree()).copied().expect("nonzero");
    let best = AtomicI64::new(top_gen.degree() as i64);
    match cfg.shuffle_seed {
        Some(seed) => lattice.shuffle(&mut ChaCha8Rng::seed_from_u64(seed)),
        None => lattice.sort_unstable_by_key(|m| std::cmp::Reverse(m.degree())),
    }
    let builder = KoszulBuilder::new(i.gens());
    let failed = AtomicBool::new(false);
    let hits: Vec<(i64, Monomial, usize)> = lattice
        .par_iter()
        .map(|m| -> Result<Option<(i64, Monomial, usize)>> {
            if failed.load(Ordering::Relaxed) {
                return Ok(None);
            }
            cfg.check_deadline().inspect_err(|_| failed.store(true, Ordering::Relaxed))?;
            let deg = m.degree() as i64;
            let cur = best.load(Ordering::Relaxed);
            // value deg − 1 − k beats cur only when k < deg − 1 − cur
            let kmax = deg - 2 - cur;
            if kmax < 0 {
                return Ok(None);
            }
            let k = builder.complex(m);
            if k.facets() == [0] {
                return Ok(None); // a minimal generator, already counted
            }
            let k = k.strong_collapse();
            if k.facets().len() == 1 {
                return Ok(None); // a cone
            }
            let low = k
                .lowest_homology(cfg.field, kmax as i32)
                .inspect_err(|_| failed.store(true, Ordering::Relaxed))?;
            Ok(low.map(|j| {
                let v = deg - 1 - j as i64;
                best.fetch_max(v, Ordering::Relaxed);
                (v, *m, (j + 1) as usize)
            }))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let reg_i = best.load(Ordering::Relaxed);
    // among recorded multidegrees attaining the max, report the least
    let witness = hits
        .iter()
        .filter(|h| h.0 == reg_i)
        .min_by_key(|h| h.1)
        .map(|&(_, m, i)| RegularityWitness {
            multidegree: m,
            homological_index: i,
        })
        .unwrap_or(RegularityWitness {
            multidegree: top_gen,
            homological_index: 0,
        });
    Ok((Regularity::Value(reg_i - 1), Some(witness)))
}
