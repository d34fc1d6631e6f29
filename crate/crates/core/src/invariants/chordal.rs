use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet, MAX_VERTICES};

/// A perfect elimination order: `ordering[0]` is eliminated first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationOrder {
    pub ordering: Vec<usize>,
}

impl EliminationOrder {
    pub fn validate(&self, g: &Graph) -> std::result::Result<(), String> {
        let mut sorted = self.ordering.clone();
        sorted.sort_unstable();
        if sorted != (0..g.n()).collect::<Vec<_>>() {
            return Err("ordering is not a permutation of the vertices".into());
        }
        let mut remaining = g.vertices();
        for &v in &self.ordering {
            remaining.remove(v);
            if !g.is_clique(g.adj(v).intersection(remaining)) {
                return Err(format!("vertex {v} is not simplicial when eliminated"));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Chordality {
    Chordal(EliminationOrder),
    /// An induced cycle of length at least four, in cyclic order.
    NotChordal { cycle: Vec<usize> },
}

impl Chordality {
    pub fn is_chordal(&self) -> bool {
        matches!(self, Chordality::Chordal(_))
    }
}

/// Checks that `cycle` is an induced cycle of `g` with at least `min_len` vertices.
pub fn validate_induced_cycle(g: &Graph, cycle: &[usize], min_len: usize) -> std::result::Result<(), String> {
    let k = cycle.len();
    if k < min_len.max(3) {
        return Err(format!("cycle of length {k} is too short"));
    }
    let support: VertexSet = cycle.iter().copied().collect();
    if support.len() != k {
        return Err("cycle repeats a vertex".into());
    }
    for i in 0..k {
        let (a, b) = (cycle[i], cycle[(i + 1) % k]);
        if !g.has_edge(a, b) {
            return Err(format!("({a},{b}) is not an edge"));
        }
    }
    let (h, _) = g.induced_subgraph(support).map_err(|e| e.to_string())?;
    if h.edge_count() != k {
        return Err("cycle has a chord".into());
    }
    Ok(())
}

/// Maximum cardinality search; the reverse visit order is a perfect
/// elimination order exactly when the graph is chordal.
fn mcs_elimination_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut visited = VertexSet::EMPTY;
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !visited.contains(v))
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .unwrap();
        visited.insert(v);
        order.push(v);
        for w in g.adj(v).difference(visited).iter() {
            weight[w] += 1;
        }
    }
    order.reverse();
    order
}

/// Finds an induced cycle of length ≥ 4, if one exists.
fn find_chordless_cycle(g: &Graph) -> Option<Vec<usize>> {
    for v in 0..g.n() {
        let nb = g.adj(v);
        for a in nb.iter() {
            for b in nb.iter().filter(|&b| b > a && !g.has_edge(a, b)) {
                let allowed = g
                    .vertices()
                    .difference(g.closed_neighborhood(v))
                    .with(a)
                    .with(b);
                if let Some(path) = shortest_path(g, a, b, allowed) {
                    let mut cycle = vec![v];
                    cycle.extend(path);
                    return Some(cycle);
                }
            }
        }
    }
    None
}

/// BFS path from `s` to `t` using only vertices in `allowed`.
pub(crate) fn shortest_path(g: &Graph, s: usize, t: usize, allowed: VertexSet) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; g.n()];
    let mut seen = VertexSet::singleton(s);
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        if u == t {
            let mut path = vec![t];
            let mut x = t;
            while x != s {
                x = parent[x];
                path.push(x);
            }
            path.reverse();
            return Some(path);
        }
        for w in g.adj(u).intersection(allowed).difference(seen).iter() {
            seen.insert(w);
            parent[w] = u;
            queue.push_back(w);
        }
    }
    None
}

pub fn is_chordal(g: &Graph) -> Chordality {
    let order = EliminationOrder {
        ordering: mcs_elimination_order(g),
    };
    if order.validate(g).is_ok() {
        return Chordality::Chordal(order);
    }
    let cycle = find_chordless_cycle(g).expect("a graph without a perfect elimination order has a hole");
    Chordality::NotChordal { cycle }
}

/// `G^c` is chordal.
pub fn is_cochordal(g: &Graph) -> bool {
    is_chordal(&g.complement()).is_chordal()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Bipartiteness {
    Bipartite { left: VertexSet, right: VertexSet },
    NotBipartite { odd_cycle: Vec<usize> },
}

impl Bipartiteness {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartiteness::Bipartite { .. })
    }
}

/// BFS 2-colouring with a bipartition or an odd cycle.
pub fn is_bipartite(g: &Graph) -> Bipartiteness {
    let n = g.n();
    let mut color = vec![u8::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    for root in 0..n {
        if color[root] != u8::MAX {
            continue;
        }
        color[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for w in g.adj(u).iter() {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[u];
                    parent[w] = u;
                    depth[w] = depth[u] + 1;
                    queue.push_back(w);
                } else if color[w] == color[u] {
                    // walk both tree paths up to the common ancestor
                    let (mut a, mut b) = (u, w);
                    let (mut left, mut right) = (vec![a], vec![b]);
                    while a != b {
                        if depth[a] >= depth[b] {
                            a = parent[a];
                            left.push(a);
                        } else {
                            b = parent[b];
                            right.push(b);
                        }
                    }
                    right.pop();
                    right.reverse();
                    left.extend(right);
                    return Bipartiteness::NotBipartite { odd_cycle: left };
                }
            }
        }
    }
    let left: VertexSet = (0..n).filter(|&v| color[v] == 0).collect();
    Bipartiteness::Bipartite {
        left,
        right: g.vertices().difference(left),
    }
}

/// Finds an induced cycle with at least `min_len` vertices by exhaustive
/// induced-path search rooted at the cycle's least vertex.
pub fn find_long_hole(g: &Graph, min_len: usize) -> Option<Vec<usize>> {
    fn extend(g: &Graph, path: &mut Vec<usize>, interior_adj: VertexSet, min_len: usize) -> bool {
        let s = path[0];
        let last = *path.last().unwrap();
        let above = VertexSet::from_bits(!((1u32 << (s + 1)) - 1));
        let on_path: VertexSet = path.iter().copied().collect();
        for w in g.adj(last).intersection(above).difference(on_path).iter() {
            if path.len() >= 2 && interior_adj.contains(w) {
                continue;
            }
            if path.len() >= 2 && g.has_edge(s, w) {
                if path.len() + 1 >= min_len {
                    path.push(w);
                    return true;
                }
                continue;
            }
            // vertices strictly inside the path may not touch later vertices
            let next_interior = if path.len() >= 2 {
                interior_adj.union(g.adj(last))
            } else {
                interior_adj
            };
            path.push(w);
            if extend(g, path, next_interior, min_len) {
                return true;
            }
            path.pop();
        }
        false
    }
    for s in 0..g.n() {
        let mut path = vec![s];
        if extend(g, &mut path, VertexSet::EMPTY, min_len) {
            return Some(path);
        }
    }
    None
}

/// Neither `G` nor `G^c` has an induced cycle of length ≥ 5.
pub fn is_weakly_chordal(g: &Graph) -> Result<bool> {
    if g.n() > MAX_VERTICES {
        return Err(Error::CapExceeded {
            what: "vertex count",
            value: g.n(),
            limit: MAX_VERTICES,
        });
    }
    Ok(find_long_hole(g, 5).is_none() && find_long_hole(&g.complement(), 5).is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        (0u32..1 << pairs.len()).map(move |mask| {
            Graph::new(
                n,
                (0..pairs.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| pairs[i]),
            )
            .unwrap()
        })
    }

    /// Independent oracle: does any vertex subset of size ≥ k induce a cycle?
    fn has_induced_cycle_brute(g: &Graph, k: usize) -> bool {
        (0u32..1 << g.n()).any(|mask| {
            let s = VertexSet::from_bits(mask);
            if s.len() < k {
                return false;
            }
            let (h, _) = g.induced_subgraph(s).unwrap();
            h.is_connected() && (0..h.n()).all(|v| h.degree(v) == 2)
        })
    }

    #[test]
    fn spec_examples() {
        assert!(is_chordal(&Graph::complete(4)).is_chordal());
        match is_chordal(&Graph::cycle(4)) {
            Chordality::NotChordal { cycle } => {
                assert_eq!(cycle.len(), 4);
                validate_induced_cycle(&Graph::cycle(4), &cycle, 4).unwrap();
            }
            other => panic!("{other:?}"),
        }
        let tree = Graph::new(6, [(0, 1), (0, 2), (2, 3), (2, 4), (4, 5)]).unwrap();
        assert!(is_chordal(&tree).is_chordal());

        assert!(is_cochordal(&Graph::cycle(4)));
        assert!(!is_cochordal(&Graph::new(4, [(0, 1), (2, 3)]).unwrap()));
        assert!(is_cochordal(&Graph::complete(5)));

        assert!(is_bipartite(&Graph::cycle(8)).is_bipartite());
        match is_bipartite(&Graph::cycle(5)) {
            Bipartiteness::NotBipartite { odd_cycle } => {
                assert_eq!(odd_cycle.len() % 2, 1);
                validate_induced_cycle(&Graph::cycle(5), &odd_cycle, 3).unwrap();
            }
            other => panic!("{other:?}"),
        }
        assert!(is_bipartite(&tree).is_bipartite());

        assert!(is_weakly_chordal(&Graph::cycle(4)).unwrap());
        assert!(!is_weakly_chordal(&Graph::cycle(5)).unwrap());
        assert!(!is_weakly_chordal(&Graph::cycle(8)).unwrap());
    }

    #[test]
    fn chordality_matches_exhaustive_search() {
        for n in 1..=6 {
            for g in all_graphs(n) {
                let verdict = is_chordal(&g);
                assert_eq!(verdict.is_chordal(), !has_induced_cycle_brute(&g, 4), "{g:?}");
                match verdict {
                    Chordality::Chordal(order) => order.validate(&g).unwrap(),
                    Chordality::NotChordal { cycle } => validate_induced_cycle(&g, &cycle, 4).unwrap(),
                }
            }
        }
    }

    #[test]
    fn long_holes_match_exhaustive_search() {
        for g in all_graphs(6) {
            let found = find_long_hole(&g, 5);
            assert_eq!(found.is_some(), has_induced_cycle_brute(&g, 5), "{g:?}");
            if let Some(c) = found {
                validate_induced_cycle(&g, &c, 5).unwrap();
            }
        }
    }

    #[test]
    fn odd_cycle_witnesses_are_cycles() {
        for g in all_graphs(5) {
            match is_bipartite(&g) {
                Bipartiteness::Bipartite { left, right } => {
                    assert!(g.is_independent(left) && g.is_independent(right));
                    assert_eq!(left.union(right), g.vertices());
                }
                Bipartiteness::NotBipartite { odd_cycle } => {
                    let k = odd_cycle.len();
                    assert_eq!(k % 2, 1);
                    for i in 0..k {
                        assert!(g.has_edge(odd_cycle[i], odd_cycle[(i + 1) % k]));
                    }
                }
            }
        }
    }
}
