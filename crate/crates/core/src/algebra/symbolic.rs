use super::ideal::{check_power_caps, MonomialIdeal};
use super::monomial::Monomial;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::invariants::minimal_vertex_covers;

/// `I(G)^(r)` as the ideal of monomials with weight at least `r` on every
/// minimal vertex cover. Generators are enumerated directly in `[0, r]^n`:
/// raising an exponent past `r` never helps any cover constraint.
pub fn symbolic_power_edge(g: &Graph, r: u32) -> Result<MonomialIdeal> {
    check_power_caps(g.n(), r)?;
    let n = g.n();
    if g.edge_count() == 0 {
        return Ok(MonomialIdeal::zero(n));
    }
    let covers: Vec<u32> = minimal_vertex_covers(g)?
        .covers
        .iter()
        .map(|c| c.bits())
        .collect();
    let mut search = BoxSearch {
        n,
        r: r as i32,
        covers_of: (0..n)
            .map(|i| (0..covers.len()).filter(|&c| covers[c] >> i & 1 == 1).collect())
            .collect(),
        // rest[c][i] = |C ∩ {i, …, n-1}|
        rest: covers
            .iter()
            .map(|&c| (0..=n).map(|i| (c >> i).count_ones() as i32).collect())
            .collect(),
        sums: vec![0; covers.len()],
        cur: Monomial::one(n),
        out: Vec::new(),
    };
    search.dfs(0);
    let out = std::mem::take(&mut search.out);
    MonomialIdeal::minimalize(n, out)
}

struct BoxSearch {
    n: usize,
    r: i32,
    covers_of: Vec<Vec<usize>>,
    rest: Vec<Vec<i32>>,
    sums: Vec<i32>,
    cur: Monomial,
    out: Vec<Monomial>,
}

impl BoxSearch {
    fn dfs(&mut self, i: usize) {
        if i == self.n {
            // every exponent must be needed by some tight cover
            let minimal = (0..self.n).all(|j| {
                self.cur.get(j) == 0 || self.covers_of[j].iter().any(|&c| self.sums[c] == self.r)
            });
            if minimal {
                self.out.push(self.cur);
            }
            return;
        }
        let upper = self.covers_of[i]
            .iter()
            .map(|&c| (self.r - self.sums[c]).max(0))
            .max()
            .unwrap_or(0);
        for v in 0..=upper {
            let feasible = self.covers_of[i]
                .iter()
                .all(|&c| self.sums[c] + v + self.r * self.rest[c][i + 1] >= self.r);
            if feasible {
                for &c in &self.covers_of[i] {
                    self.sums[c] += v;
                }
                self.cur.set(i, v as u8);
                self.dfs(i + 1);
                for &c in &self.covers_of[i] {
                    self.sums[c] -= v;
                }
            }
        }
        self.cur.set(i, 0);
    }
}

/// Second path: `⋂_C (x_i : i ∈ C)^r` by repeated intersection.
pub fn symbolic_power_by_intersection(g: &Graph, r: u32) -> Result<MonomialIdeal> {
    check_power_caps(g.n(), r)?;
    if g.edge_count() == 0 {
        return Ok(MonomialIdeal::zero(g.n()));
    }
    let mut acc = MonomialIdeal::unit(g.n());
    for c in minimal_vertex_covers(g)?.covers {
        let p = MonomialIdeal::prime(g.n(), c.iter()).power(r)?;
        acc = acc.intersect(&p)?;
    }
    Ok(acc)
}

/// Cover-weight test, independent of any generator list.
pub fn symbolic_membership(g: &Graph, m: &Monomial, r: u32) -> Result<bool> {
    if r == 0 {
        return Err(Error::ZeroPower);
    }
    if m.n() != g.n() {
        return Err(Error::AmbientMismatch(m.n(), g.n()));
    }
    Ok(minimal_vertex_covers(g)?
        .covers
        .iter()
        .all(|c| c.iter().map(|i| m.get(i)).sum::<u32>() >= r))
}
