use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_PRIME: u32 = 32003;

/// Coefficient field for homology: `GF(p)` or the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Field {
    Prime(u32),
    Rational,
}

impl Default for Field {
    fn default() -> Self {
        Field::Prime(DEFAULT_PRIME)
    }
}

impl Field {
    pub fn prime(p: u32) -> Result<Field> {
        if p < 2 || (2..).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    /// 0 for the rationals.
    pub fn characteristic(self) -> u32 {
        match self {
            Field::Prime(p) => p,
            Field::Rational => 0,
        }
    }

    /// Rank of a matrix over this field. Columns are sparse `(row, value)`
    /// lists with distinct rows; values are small signed integers.
    pub fn rank(self, nrows: usize, cols: &[Vec<(u32, i32)>]) -> usize {
        match self {
            Field::Prime(p) => rank_mod_p(cols, p),
            Field::Rational => rank_rational(nrows, cols),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "GF({p})"),
            Field::Rational => write!(f, "QQ"),
        }
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Column reduction keyed on the lowest (largest-index) nonzero row.
fn rank_mod_p(cols: &[Vec<(u32, i32)>], p: u32) -> usize {
    let p = p as u64;
    let mut pivots: HashMap<u32, Vec<(u32, u64)>> = HashMap::new();
    let mut rank = 0;
    for col in cols {
        let mut c: Vec<(u32, u64)> = col
            .iter()
            .map(|&(r, v)| (r, (v as i64).rem_euclid(p as i64) as u64))
            .filter(|&(_, v)| v != 0)
            .collect();
        c.sort_unstable_by_key(|&(r, _)| r);
        while let Some(&(low, val)) = c.last() {
            match pivots.get(&low) {
                Some(pc) => c = axpy(&c, pc, p - val, p),
                None => {
                    let inv = inv_mod(val, p);
                    for e in &mut c {
                        e.1 = e.1 * inv % p;
                    }
                    pivots.insert(low, c);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// `a + k·b` over sorted sparse vectors.
fn axpy(a: &[(u32, u64)], b: &[(u32, u64)], k: u64, p: u64) -> Vec<(u32, u64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            out.push((b[j].0, k * b[j].1 % p));
            j += 1;
        } else {
            let v = (a[i].1 + k * b[j].1) % p;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Fraction-free (Bareiss) elimination over the integers.
fn rank_rational(nrows: usize, cols: &[Vec<(u32, i32)>]) -> usize {
    let ncols = cols.len();
    if nrows == 0 || ncols == 0 {
        return 0;
    }
    let mut m = vec![vec![BigInt::zero(); ncols]; nrows];
    for (c, col) in cols.iter().enumerate() {
        for &(r, v) in col {
            m[r as usize][c] = BigInt::from(v);
        }
    }
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..nrows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        for r in rank + 1..nrows {
            if m[r][c].is_zero() {
                continue;
            }
            for k in c + 1..ncols {
                let v = (&m[rank][c] * &m[r][k] - &m[r][c] * &m[rank][k]) / &prev;
                m[r][k] = v;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}
