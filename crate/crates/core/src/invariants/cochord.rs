//! Exact co-chordal cover number.
//!
//! A set of edges `P ⊆ E(G)` lies in some co-chordal subgraph of `G` exactly
//! when `G^c` has a chordal supergraph avoiding every edge of `P` (a chordal
//! sandwich). Covers may overlap, so `cochord(G)` is the least `k` for which
//! `E(G)` splits into `k` such extendable classes. The search deepens `k`
//! from `ν(G)`, seeds a maximum induced matching into distinct classes (two
//! edges inducing `2K_2` can never share a co-chordal subgraph) and assigns
//! the remaining edges by backtracking.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};
use crate::invariants::chordal::is_cochordal;
use crate::invariants::matching::induced_matching_number;

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoChordalCover {
    pub parts: Vec<Vec<(usize, usize)>>,
}

impl CoChordalCover {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let mut covered = HashSet::new();
        for (i, part) in self.parts.iter().enumerate() {
            if let Some(&(u, v)) = part.iter().find(|&&(u, v)| !g.has_edge(u, v)) {
                return Err(format!("part {i}: ({u},{v}) is not an edge"));
            }
            if !part_is_cochordal(g.n(), part) {
                return Err(format!("part {i} is not co-chordal"));
            }
            covered.extend(part.iter().map(|&(u, v)| (u.min(v), u.max(v))));
        }
        if let Some(e) = g.edges().iter().find(|e| !covered.contains(e)) {
            return Err(format!("edge {e:?} is not covered"));
        }
        Ok(())
    }
}

/// Co-chordality of the subgraph spanned by `edges`. Vertices outside the
/// edges become universal in the complement and do not affect chordality.
pub fn part_is_cochordal(n: usize, edges: &[(usize, usize)]) -> bool {
    match Graph::new(n, edges.iter().copied()) {
        Ok(h) => is_cochordal(&h),
        Err(_) => false,
    }
}

/// Result of the exact search. `lower == upper` unless the node budget ran out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochordResult {
    pub lower: usize,
    pub upper: usize,
    /// A cover of size `upper`.
    pub cover: CoChordalCover,
    pub nodes: u64,
}

impl CochordResult {
    pub fn exact(&self) -> Option<usize> {
        (self.lower == self.upper).then_some(self.upper)
    }
}

/// Chordal sandwich search over elimination states. The elimination graph
/// after removing a set `S` depends only on `S`, so failed states are memoised.
struct Sandwich<'a> {
    comp_adj: &'a [VertexSet],
    full: VertexSet,
    forbid: Vec<VertexSet>,
    dead: HashSet<u32>,
    order: Vec<usize>,
}

impl Sandwich<'_> {
    /// Current neighbourhoods of the remaining vertices after eliminating `s`.
    fn neighborhoods(&self, s: VertexSet) -> Vec<VertexSet> {
        let n = self.comp_adj.len();
        let rest = self.full.difference(s);
        let mut comp_nb = vec![VertexSet::EMPTY; n];
        let mut seen = VertexSet::EMPTY;
        for root in s.iter() {
            if seen.contains(root) {
                continue;
            }
            let mut comp = VertexSet::singleton(root);
            let mut frontier = comp;
            let mut nb = VertexSet::EMPTY;
            while !frontier.is_empty() {
                let mut next = VertexSet::EMPTY;
                for v in frontier.iter() {
                    next = next.union(self.comp_adj[v]);
                }
                nb = nb.union(next.intersection(rest));
                frontier = next.intersection(s).difference(comp);
                comp = comp.union(frontier);
            }
            seen = seen.union(comp);
            for v in comp.iter() {
                comp_nb[v] = nb;
            }
        }
        let mut out = vec![VertexSet::EMPTY; n];
        for v in rest.iter() {
            let mut nb = self.comp_adj[v].intersection(rest);
            for c in self.comp_adj[v].intersection(s).iter() {
                nb = nb.union(comp_nb[c]);
            }
            out[v] = nb.without(v);
        }
        out
    }

    fn fill_is_allowed(&self, nb: VertexSet) -> bool {
        nb.iter().all(|a| self.forbid[a].intersection(nb).is_empty())
    }

    fn run(&mut self, s: VertexSet) -> bool {
        let rest = self.full.difference(s);
        if rest.len() <= 1 {
            self.order.extend(rest.iter());
            return true;
        }
        if self.dead.contains(&s.bits()) {
            return false;
        }
        let nbs = self.neighborhoods(s);
        let simplicial = rest.iter().find(|&v| {
            let nb = nbs[v];
            nb.iter().all(|a| nb.without(a).is_subset(nbs[a]))
        });
        let candidates: Vec<usize> = match simplicial {
            // eliminating a simplicial vertex adds no fill and never hurts
            Some(v) => vec![v],
            None => rest.iter().filter(|&v| self.fill_is_allowed(nbs[v])).collect(),
        };
        for v in candidates {
            self.order.push(v);
            if self.run(s.with(v)) {
                return true;
            }
            self.order.pop();
        }
        self.dead.insert(s.bits());
        false
    }
}

/// Edge indices of a co-chordal subgraph of `g` containing every edge in
/// `part`, or `None` when no such subgraph exists.
fn extend_to_cochordal(g: &Graph, comp_adj: &[VertexSet], part: &[usize]) -> Option<Vec<bool>> {
    let n = g.n();
    let mut forbid = vec![VertexSet::EMPTY; n];
    for &i in part {
        let (u, v) = g.edges()[i];
        forbid[u].insert(v);
        forbid[v].insert(u);
    }
    let mut sw = Sandwich {
        comp_adj,
        full: g.vertices(),
        forbid,
        dead: HashSet::new(),
        order: Vec::with_capacity(n),
    };
    if !sw.run(VertexSet::EMPTY) {
        return None;
    }
    // replay the order: every pair that becomes adjacent is in the triangulation
    let mut in_h = vec![true; g.edge_count()];
    let mut s = VertexSet::EMPTY;
    let index_of = |u: usize, v: usize| g.edges().binary_search(&(u.min(v), u.max(v))).ok();
    for &v in &sw.order {
        let nbs = sw.neighborhoods(s);
        let nb = nbs[v];
        for a in nb.iter() {
            for b in nb.iter().filter(|&b| b > a) {
                if let Some(i) = index_of(a, b) {
                    in_h[i] = false;
                }
            }
        }
        s.insert(v);
    }
    debug_assert!(part.iter().all(|&i| in_h[i]));
    Some(in_h)
}

struct Class {
    edges: Vec<usize>,
    witness: Vec<bool>,
}

struct CoverSearch<'a> {
    g: &'a Graph,
    comp_adj: Vec<VertexSet>,
    /// `conflict[i][j]`: edges `i` and `j` induce `2K_2`.
    conflict: Vec<Vec<bool>>,
    order: Vec<usize>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl<'a> CoverSearch<'a> {
    fn new(g: &'a Graph, budget: u64) -> Self {
        let comp = g.complement();
        let comp_adj = (0..g.n()).map(|v| comp.adj(v)).collect();
        let edges = g.edges();
        let m = edges.len();
        let mut conflict = vec![vec![false; m]; m];
        for i in 0..m {
            for j in i + 1..m {
                let (a, b) = edges[i];
                let (c, d) = edges[j];
                let support = VertexSet::from_iter([a, b, c, d]);
                let induced_2k2 = support.len() == 4
                    && !g.has_edge(a, c)
                    && !g.has_edge(a, d)
                    && !g.has_edge(b, c)
                    && !g.has_edge(b, d);
                conflict[i][j] = induced_2k2;
                conflict[j][i] = induced_2k2;
            }
        }
        CoverSearch {
            g,
            comp_adj,
            conflict,
            order: Vec::new(),
            nodes: 0,
            budget,
            exhausted: false,
        }
    }

    fn try_add(&self, class: &Class, e: usize) -> Option<Vec<bool>> {
        if class.edges.iter().any(|&f| self.conflict[e][f]) {
            return None;
        }
        if class.witness[e] {
            return Some(class.witness.clone());
        }
        let mut part = class.edges.clone();
        part.push(e);
        extend_to_cochordal(self.g, &self.comp_adj, &part)
    }

    fn empty_class(&self) -> Class {
        Class {
            edges: Vec::new(),
            witness: vec![false; self.g.edge_count()],
        }
    }

    fn assign(&mut self, i: usize, classes: &mut Vec<Class>, k: usize) -> bool {
        if i == self.order.len() {
            return true;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return false;
        }
        let e = self.order[i];
        // classes already covering `e` first
        let mut slots: Vec<usize> = (0..classes.len()).collect();
        slots.sort_by_key(|&c| !classes[c].witness[e]);
        if classes.len() < k {
            slots.push(classes.len());
        }
        for c in slots {
            if c == classes.len() {
                classes.push(self.empty_class());
            }
            if let Some(w) = self.try_add(&classes[c], e) {
                let saved = std::mem::replace(&mut classes[c].witness, w);
                classes[c].edges.push(e);
                if self.assign(i + 1, classes, k) {
                    return true;
                }
                classes[c].edges.pop();
                classes[c].witness = saved;
            }
            if classes[c].edges.is_empty() {
                classes.pop();
            }
            if self.exhausted {
                return false;
            }
        }
        false
    }

    fn greedy(&self) -> Vec<Class> {
        let mut classes: Vec<Class> = Vec::new();
        for &e in &self.order {
            let mut placed = false;
            for class in classes.iter_mut() {
                if let Some(w) = self.try_add(class, e) {
                    class.witness = w;
                    class.edges.push(e);
                    placed = true;
                    break;
                }
            }
            if !placed {
                let mut class = self.empty_class();
                class.witness = self.try_add(&class, e).expect("single edges are co-chordal");
                class.edges.push(e);
                classes.push(class);
            }
        }
        classes
    }

    fn to_cover(&self, classes: &[Class]) -> CoChordalCover {
        CoChordalCover {
            parts: classes
                .iter()
                .map(|c| {
                    (0..self.g.edge_count())
                        .filter(|&i| c.witness[i])
                        .map(|i| self.g.edges()[i])
                        .collect()
                })
                .collect(),
        }
    }
}

/// Exact `cochord(G)` within `budget` search nodes, with a witness cover.
pub fn cochordal_cover_number(g: &Graph, budget: u64) -> CochordResult {
    if g.edge_count() == 0 {
        return CochordResult {
            lower: 0,
            upper: 0,
            cover: CoChordalCover { parts: Vec::new() },
            nodes: 0,
        };
    }
    let (nu, matching) = induced_matching_number(g);
    let mut search = CoverSearch::new(g, budget);
    let seeds: Vec<usize> = matching
        .edges
        .iter()
        .map(|e| g.edges().binary_search(e).unwrap())
        .collect();
    let mut rest: Vec<usize> = (0..g.edge_count()).filter(|i| !seeds.contains(i)).collect();
    rest.sort_by_key(|&i| {
        let conflicts = search.conflict[i].iter().filter(|&&c| c).count();
        (std::cmp::Reverse(conflicts), i)
    });
    search.order = seeds.iter().copied().chain(rest).collect();

    let greedy = search.greedy();
    let upper = greedy.len();
    let mut best_cover = search.to_cover(&greedy);
    let mut lower = nu;
    while lower < upper {
        let mut classes = Vec::new();
        if search.assign(0, &mut classes, lower) {
            best_cover = search.to_cover(&classes);
            return CochordResult {
                lower,
                upper: lower,
                cover: best_cover,
                nodes: search.nodes,
            };
        }
        if search.exhausted {
            return CochordResult {
                lower,
                upper,
                cover: best_cover,
                nodes: search.nodes,
            };
        }
        lower += 1;
    }
    best_cover.parts.retain(|p| !p.is_empty());
    CochordResult {
        lower: upper,
        upper,
        cover: best_cover,
        nodes: search.nodes,
    }
}
