use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet, MAX_VERTICES};

/// Every minimal vertex cover, sorted by sorted vertex list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexCoverList {
    pub covers: Vec<VertexSet>,
}

impl VertexCoverList {
    pub fn validate(&self, g: &Graph) -> std::result::Result<(), String> {
        for (i, &c) in self.covers.iter().enumerate() {
            if !is_vertex_cover(g, c) {
                return Err(format!("{c:?} misses an edge"));
            }
            if let Some(v) = c.iter().find(|&v| is_vertex_cover(g, c.without(v))) {
                return Err(format!("{c:?} stays a cover without {v}"));
            }
            if i > 0 && cover_key(self.covers[i - 1]) >= cover_key(c) {
                return Err("covers are not strictly sorted".into());
            }
        }
        Ok(())
    }
}

fn cover_key(c: VertexSet) -> Vec<usize> {
    c.to_vec()
}

pub fn is_vertex_cover(g: &Graph, c: VertexSet) -> bool {
    g.edges()
        .iter()
        .all(|&(u, v)| c.contains(u) || c.contains(v))
}

/// Complements of the maximal independent sets, found by Bron–Kerbosch
/// with pivoting on `G^c`.
pub fn minimal_vertex_covers(g: &Graph) -> Result<VertexCoverList> {
    if g.n() > MAX_VERTICES {
        return Err(Error::CapExceeded {
            what: "vertex count",
            value: g.n(),
            limit: MAX_VERTICES,
        });
    }
    let comp = g.complement();
    let mut independents = Vec::new();
    bron_kerbosch(&comp, VertexSet::EMPTY, g.vertices(), VertexSet::EMPTY, &mut independents);
    let mut covers: Vec<VertexSet> = independents
        .into_iter()
        .map(|s| g.vertices().difference(s))
        .collect();
    covers.sort_by_cached_key(|&c| cover_key(c));
    Ok(VertexCoverList { covers })
}

fn bron_kerbosch(g: &Graph, r: VertexSet, mut p: VertexSet, mut x: VertexSet, out: &mut Vec<VertexSet>) {
    if p.is_empty() && x.is_empty() {
        out.push(r);
        return;
    }
    let pivot = p
        .union(x)
        .iter()
        .max_by_key(|&u| g.adj(u).intersection(p).len())
        .unwrap();
    for v in p.difference(g.adj(pivot)).iter() {
        let nb = g.adj(v);
        bron_kerbosch(g, r.with(v), p.intersection(nb), x.intersection(nb), out);
        p.remove(v);
        x.insert(v);
    }
}
