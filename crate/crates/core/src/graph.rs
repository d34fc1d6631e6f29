//! Finite simple graphs on dense vertex labels `0..n`.
//!
//! Vertex subsets are bitsets over a `u32`, which caps graphs at
//! [`MAX_VERTICES`] vertices. Every algorithm downstream is exponential, so
//! the cap is enforced by the constructors rather than discovered later.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 24;

/// Subset of `0..n` stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u32) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 32 {
            VertexSet(u32::MAX)
        } else {
            VertexSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn contains(self, v: usize) -> bool {
        v < 32 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1 << v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if let Some(&bad) = v.iter().find(|&&x| x >= MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!("vertex {bad} out of range")));
        }
        Ok(v.into_iter().collect())
    }
}

pub struct VertexIter(u32);

impl Iterator for VertexIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for VertexIter {}

/// A finite simple graph. Equality ignores display names.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    edges: Vec<(usize, usize)>,
    names: Option<Vec<String>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl Graph {
    /// Builds a graph, collapsing duplicate pairs.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::CapExceeded {
                what: "vertex count",
                value: n,
                limit: MAX_VERTICES,
            });
        }
        let mut adj = vec![VertexSet::EMPTY; n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Self::from_adjacency(adj))
    }

    fn from_adjacency(adj: Vec<VertexSet>) -> Self {
        let n = adj.len();
        let mut edges = Vec::new();
        for (u, nb) in adj.iter().enumerate() {
            for v in nb.iter().filter(|&v| v > u) {
                edges.push((u, v));
            }
        }
        Graph {
            n,
            adj,
            edges,
            names: None,
        }
    }

    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        Self::from_adjacency(vec![VertexSet::EMPTY; n])
    }

    pub fn complete(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        let full = VertexSet::full(n);
        Self::from_adjacency((0..n).map(|v| full.without(v)).collect())
    }

    pub fn cycle(n: usize) -> Self {
        assert!((3..=MAX_VERTICES).contains(&n));
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn path(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        Self::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    /// `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Self {
        Self::new(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n {
            return Err(Error::Precondition(format!(
                "{} names for {} vertices",
                names.len(),
                self.n
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Canonical edge list: `(min, max)` pairs in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    /// Open neighbourhood; panics when `u` is out of range.
    pub fn adj(&self, u: usize) -> VertexSet {
        self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    fn check_vertex(&self, u: usize) -> Result<()> {
        if u >= self.n {
            Err(Error::VertexOutOfRange {
                vertex: u,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    fn check_set(&self, s: VertexSet) -> Result<()> {
        match s.difference(self.vertices()).min() {
            Some(v) => Err(Error::VertexOutOfRange { vertex: v, n: self.n }),
            None => Ok(()),
        }
    }

    /// `N(u)` or, when `closed`, `N[u]`.
    pub fn neighborhood(&self, u: usize, closed: bool) -> Result<VertexSet> {
        self.check_vertex(u)?;
        let nb = self.adj[u];
        Ok(if closed { nb.with(u) } else { nb })
    }

    pub fn closed_neighborhood(&self, u: usize) -> VertexSet {
        self.adj[u].with(u)
    }

    /// Induced subgraph on `keep`, relabelled densely in increasing order.
    /// The returned map sends new labels to old ones.
    pub fn induced_subgraph(&self, keep: VertexSet) -> Result<(Graph, Vec<usize>)> {
        self.check_set(keep)?;
        let old: Vec<usize> = keep.iter().collect();
        let mut new_of = vec![usize::MAX; self.n];
        for (i, &v) in old.iter().enumerate() {
            new_of[v] = i;
        }
        let adj = old
            .iter()
            .map(|&v| {
                self.adj[v]
                    .intersection(keep)
                    .iter()
                    .map(|w| new_of[w])
                    .collect()
            })
            .collect();
        let mut g = Self::from_adjacency(adj);
        if let Some(names) = &self.names {
            g.names = Some(old.iter().map(|&v| names[v].clone()).collect());
        }
        Ok((g, old))
    }

    /// `G \ U`, with the relabelling map from new to old labels.
    pub fn delete_vertices(&self, remove: VertexSet) -> Result<(Graph, Vec<usize>)> {
        self.check_set(remove)?;
        self.induced_subgraph(self.vertices().difference(remove))
    }

    pub fn complement(&self) -> Graph {
        let full = self.vertices();
        let mut g = Self::from_adjacency(
            (0..self.n)
                .map(|v| full.difference(self.adj[v]).without(v))
                .collect(),
        );
        g.names = self.names.clone();
        g
    }

    /// Vertex-disjoint union; `other`'s labels are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let shift = self.n;
        Graph::new(
            self.n + other.n,
            self.edges
                .iter()
                .copied()
                .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift))),
        )
    }

    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| s.without(v).is_subset(self.adj[v]))
    }

    pub fn is_independent(&self, s: VertexSet) -> bool {
        s.iter().all(|v| self.adj[v].intersection(s).is_empty())
    }

    /// True when the neighbours of `v` form a clique.
    pub fn is_simplicial(&self, v: usize) -> Result<bool> {
        self.check_vertex(v)?;
        Ok(self.is_clique(self.adj[v]))
    }

    /// Components ordered by their least vertex.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::EMPTY;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen.contains(s) {
                continue;
            }
            let comp = self.component_of(s, self.vertices());
            seen = seen.union(comp);
            out.push(comp);
        }
        out
    }

    /// Vertices reachable from `s` inside `within`.
    pub fn component_of(&self, s: usize, within: VertexSet) -> VertexSet {
        let mut comp = VertexSet::singleton(s);
        let mut frontier = comp;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier.iter() {
                next = next.union(self.adj[v]);
            }
            frontier = next.intersection(within).difference(comp);
            comp = comp.union(frontier);
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.component_of(0, self.vertices()) == self.vertices()
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        Graph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v]))).unwrap()
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson {
            n: self.n,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
            names: self.names.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GraphJson::deserialize(d)?;
        let g = Graph::new(raw.n, raw.edges.into_iter().map(|[u, v]| (u, v)))
            .map_err(serde::de::Error::custom)?;
        match raw.names {
            Some(names) => g.with_names(names).map_err(serde::de::Error::custom),
            None => Ok(g),
        }
    }
}

impl Graph {
    /// Text format: first line `n`, then one `u v` pair per line.
    pub fn parse_text(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("missing vertex count".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("vertex count: {e}")))?;
        let mut edges = Vec::new();
        for line in lines {
            let mut it = line.split_whitespace().map(str::parse::<usize>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(u)), Some(Ok(v)), None) => edges.push((u, v)),
                _ => return Err(Error::Parse(format!("bad edge line `{line}`"))),
            }
        }
        Graph::new(n, edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for (u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Graph> {
        Ok(serde_json::from_str(text)?)
    }

    /// Accepts either format, sniffing on the first non-blank character.
    pub fn parse_any(text: &str) -> Result<Graph> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::parse_text(text)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn build_and_canonicalize() {
        let g = Graph::new(3, [(1, 0), (2, 1), (0, 2), (0, 1)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(g, Graph::complete(3));
        assert_eq!(Graph::new(1, []).unwrap().edge_count(), 0);
        let c5 = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(c5, Graph::cycle(5));
    }

    #[test]
    fn build_errors() {
        assert!(matches!(
            Graph::new(3, [(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
        assert!(matches!(Graph::new(3, [(1, 1)]), Err(Error::LoopEdge(1))));
        assert!(matches!(
            Graph::new(25, []),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn neighborhoods() {
        let c3 = Graph::complete(3);
        assert_eq!(c3.neighborhood(0, false).unwrap(), set(&[1, 2]));
        assert_eq!(c3.neighborhood(0, true).unwrap(), set(&[0, 1, 2]));
        assert!(Graph::empty(1).neighborhood(0, false).unwrap().is_empty());
        assert!(c3.neighborhood(3, false).is_err());
    }

    #[test]
    fn deletion_and_induced() {
        let (p4, map) = Graph::cycle(5).delete_vertices(set(&[0])).unwrap();
        assert_eq!(p4, Graph::path(4));
        assert_eq!(map, vec![1, 2, 3, 4]);
        assert_eq!(
            Graph::complete(3).delete_vertices(VertexSet::EMPTY).unwrap().0,
            Graph::complete(3)
        );
        assert_eq!(
            Graph::complete(3).delete_vertices(set(&[0, 1, 2])).unwrap().0.n(),
            0
        );
        assert_eq!(
            Graph::cycle(5).induced_subgraph(set(&[0, 1, 2])).unwrap().0,
            Graph::path(3)
        );
        assert_eq!(
            Graph::complete(4).induced_subgraph(set(&[0, 2, 3])).unwrap().0,
            Graph::complete(3)
        );
        assert_eq!(
            Graph::cycle(4).induced_subgraph(set(&[0, 2])).unwrap().0,
            Graph::empty(2)
        );
    }

    #[test]
    fn complement_and_union() {
        let two_k2 = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        // C_4 labelled 0-1-2-3-0 has complement {02, 13}
        assert_eq!(
            Graph::cycle(4).complement(),
            Graph::new(4, [(0, 2), (1, 3)]).unwrap()
        );
        assert_eq!(Graph::complete(5).complement(), Graph::empty(5));
        let k2 = Graph::complete(2);
        assert_eq!(k2.disjoint_union(&k2).unwrap(), two_k2);
        let g = Graph::cycle(5);
        assert_eq!(g.disjoint_union(&Graph::empty(0)).unwrap(), g);
        let u = Graph::cycle(8).disjoint_union(&Graph::cycle(10)).unwrap();
        assert_eq!(u.n(), 18);
        assert_eq!(u.connected_components().len(), 2);
    }

    #[test]
    fn simplicial_vertices() {
        assert!((0..3).all(|v| Graph::complete(3).is_simplicial(v).unwrap()));
        assert!((0..4).all(|v| !Graph::cycle(4).is_simplicial(v).unwrap()));
        assert!(Graph::path(3).is_simplicial(0).unwrap());
        assert!(Graph::path(3).is_simplicial(9).is_err());
    }

    #[test]
    fn components() {
        let two_k2 = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(two_k2.connected_components(), vec![set(&[0, 1]), set(&[2, 3])]);
        assert_eq!(Graph::cycle(5).connected_components(), vec![set(&[0, 1, 2, 3, 4])]);
        assert_eq!(
            Graph::empty(3).connected_components(),
            vec![set(&[0]), set(&[1]), set(&[2])]
        );
    }

    #[test]
    fn text_and_json_formats() {
        let g = Graph::cycle(4);
        let text = g.to_text();
        assert_eq!(text, "4\n0 1\n0 3\n1 2\n2 3\n");
        assert_eq!(Graph::parse_text(&text).unwrap(), g);
        let json = g.to_json();
        assert_eq!(json, r#"{"n":4,"edges":[[0,1],[0,3],[1,2],[2,3]]}"#);
        assert_eq!(Graph::from_json(&json).unwrap(), g);
        let named = Graph::from_json(r#"{"n":2,"edges":[[1,0]],"names":["a","b"]}"#).unwrap();
        assert_eq!(named.to_json(), r#"{"n":2,"edges":[[0,1]],"names":["a","b"]}"#);
        assert!(Graph::parse_text("3\n0 5\n").is_err());
        assert!(Graph::parse_text("x").is_err());
    }
}
