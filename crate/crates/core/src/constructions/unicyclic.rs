use serde::{Deserialize, Serialize};

use super::ht::{attach_HT, HtSpec};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::invariants::{is_chordal, validate_induced_cycle};

/// A cycle with chordal pieces `G_j` glued at cycle vertices `y_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnicyclicDecomposition {
    /// Cycle vertices in walk order, starting from the least label.
    pub cycle: Vec<usize>,
    pub attach_points: Vec<usize>,
    /// `V(G_j)`, attach point included.
    pub parts: Vec<VertexSet>,
    /// `Γ(G) = ⋃_j N_{G_j}(y_j)`.
    pub gamma: VertexSet,
    /// `V(G_j) ∖ Γ(G) ∖ {y_j}`.
    pub h_parts: Vec<VertexSet>,
}

impl UnicyclicDecomposition {
    pub fn cycle_set(&self) -> VertexSet {
        self.cycle.iter().copied().collect()
    }

    /// Rechecks `Γ(G)` and the splitting `G ∖ Γ(G) = C_n ∐ (∐ H_j)`.
    pub fn validate(&self, g: &Graph) -> std::result::Result<(), String> {
        let c = self.cycle_set();
        if self.cycle.len() == 3 {
            if !g.is_clique(c) {
                return Err("cycle is not a triangle".into());
            }
        } else {
            validate_induced_cycle(g, &self.cycle, 4)?;
        }
        let mut gamma = VertexSet::EMPTY;
        for (&y, &part) in self.attach_points.iter().zip(&self.parts) {
            if !part.contains(y) || part.intersection(c) != VertexSet::singleton(y) {
                return Err(format!("part at {y} meets the cycle elsewhere"));
            }
            let (sub, _) = g.induced_subgraph(part).map_err(|e| e.to_string())?;
            if !is_chordal(&sub).is_chordal() {
                return Err(format!("part at {y} is not chordal"));
            }
            gamma = gamma.union(g.adj(y).intersection(part));
        }
        if gamma != self.gamma {
            return Err("gamma does not match the parts".into());
        }
        let rest = g.vertices().difference(gamma);
        let mut pieces = vec![c];
        for (&y, &part) in self.attach_points.iter().zip(&self.parts) {
            pieces.push(part.difference(gamma).without(y));
        }
        if pieces[1..] != self.h_parts[..] {
            return Err("h parts do not match".into());
        }
        let covered = pieces.iter().fold(VertexSet::EMPTY, |a, &p| a.union(p));
        if covered != rest {
            return Err("pieces do not exhaust G minus gamma".into());
        }
        for (i, &a) in pieces.iter().enumerate() {
            for &b in &pieces[i + 1..] {
                if a.iter().any(|u| !g.adj(u).intersection(b).is_empty()) {
                    return Err("pieces of G minus gamma are joined by an edge".into());
                }
            }
        }
        Ok(())
    }
}

/// Decomposes a connected graph made of one cycle with chordal pieces hung
/// on it. With `|E| = |V|` the cycle is found by leaf stripping; otherwise
/// simplicial vertices are peeled, which isolates any cycle of length at
/// least four. A triangle core with extra cliques is ambiguous from the graph
/// alone; use [`decompose_unicyclic_ht`] there.
pub fn decompose_unicyclic(g: &Graph) -> Result<UnicyclicDecomposition> {
    if !g.is_connected() || g.n() < 3 {
        return Err(Error::NotUnicyclic("graph is not connected".into()));
    }
    let core = if g.edge_count() == g.n() {
        strip(g, |h, v, alive| h.adj(v).intersection(alive).len() <= 1)
    } else {
        strip(g, |h, v, alive| h.is_clique(h.adj(v).intersection(alive)))
    };
    let (sub, back) = g.induced_subgraph(core)?;
    if sub.n() < 3 || sub.edge_count() != sub.n() || (0..sub.n()).any(|v| sub.degree(v) != 2) || !sub.is_connected() {
        return Err(Error::NotUnicyclic(format!(
            "core {:?} is not a single cycle",
            core.to_vec()
        )));
    }
    let cycle: Vec<usize> = walk_cycle(&sub).into_iter().map(|v| back[v]).collect();
    finish(g, cycle)
}

/// Same decomposition with the cycle read off the base of an `H_T` spec.
pub fn decompose_unicyclic_ht(spec: &HtSpec) -> Result<UnicyclicDecomposition> {
    let h = &spec.base;
    if !h.is_connected() || h.edge_count() != h.n() {
        return Err(Error::NotUnicyclic("base is not connected unicyclic".into()));
    }
    let core = strip(h, |h, v, alive| h.adj(v).intersection(alive).len() <= 1);
    let (sub, back) = h.induced_subgraph(core)?;
    let cycle: Vec<usize> = walk_cycle(&sub).into_iter().map(|v| back[v]).collect();
    finish(&attach_HT(spec)?.graph, cycle)
}

fn strip(g: &Graph, removable: impl Fn(&Graph, usize, VertexSet) -> bool) -> VertexSet {
    let mut alive = g.vertices();
    loop {
        let Some(v) = alive.iter().find(|&v| removable(g, v, alive)) else {
            return alive;
        };
        alive.remove(v);
        if alive.len() < 3 {
            return alive;
        }
    }
}

fn walk_cycle(c: &Graph) -> Vec<usize> {
    let start = 0;
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = c.adj(start).min().expect("cycle vertex has neighbours");
    while cur != start {
        order.push(cur);
        let next = c.adj(cur).without(prev).min().expect("degree two");
        prev = cur;
        cur = next;
    }
    order
}

fn finish(g: &Graph, cycle: Vec<usize>) -> Result<UnicyclicDecomposition> {
    let cset: VertexSet = cycle.iter().copied().collect();
    let k = cycle.len();
    let cycle_edge = |u: usize, v: usize| {
        (0..k).any(|i| {
            let (a, b) = (cycle[i], cycle[(i + 1) % k]);
            (a, b) == (u, v) || (b, a) == (u, v)
        })
    };
    let rest = Graph::new(
        g.n(),
        g.edges().iter().copied().filter(|&(u, v)| !cycle_edge(u, v)),
    )?;
    let mut attach_points = Vec::new();
    let mut parts = Vec::new();
    for &y in &cycle {
        let part = rest.component_of(y, g.vertices());
        if part.len() < 2 {
            continue;
        }
        if part.intersection(cset) != VertexSet::singleton(y) {
            return Err(Error::NotUnicyclic(format!(
                "piece at {y} reaches another cycle vertex"
            )));
        }
        let (sub, _) = g.induced_subgraph(part)?;
        if !is_chordal(&sub).is_chordal() {
            return Err(Error::PartNotChordal(y));
        }
        attach_points.push(y);
        parts.push(part);
    }
    let gamma = attach_points
        .iter()
        .zip(&parts)
        .fold(VertexSet::EMPTY, |acc, (&y, &p)| acc.union(g.adj(y).intersection(p)));
    let h_parts = attach_points
        .iter()
        .zip(&parts)
        .map(|(&y, &p)| p.difference(gamma).without(y))
        .collect();
    let d = UnicyclicDecomposition {
        cycle,
        attach_points,
        parts,
        gamma,
        h_parts,
    };
    d.validate(g).map_err(Error::InternalValidation)?;
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_cycle() {
        let d = decompose_unicyclic(&Graph::cycle(5)).unwrap();
        assert_eq!(d.cycle, vec![0, 1, 2, 3, 4]);
        assert!(d.parts.is_empty());
        assert!(d.gamma.is_empty());
    }

    #[test]
    fn triangle_glued_on_pentagon() {
        let spec = HtSpec::new(Graph::cycle(5), vec![(0, vec![3])]).unwrap();
        let g = attach_HT(&spec).unwrap().graph;
        let d = decompose_unicyclic(&g).unwrap();
        assert_eq!(d.cycle, vec![0, 1, 2, 3, 4]);
        assert_eq!(d.attach_points, vec![0]);
        assert_eq!(d.gamma, [5, 6].into_iter().collect());
        assert_eq!(d.h_parts, vec![VertexSet::EMPTY]);
        assert_eq!(decompose_unicyclic_ht(&spec).unwrap(), d);
    }

    #[test]
    fn pendant_on_triangle() {
        let g = Graph::new(4, [(0, 1), (1, 2), (0, 2), (0, 3)]).unwrap();
        let d = decompose_unicyclic(&g).unwrap();
        assert_eq!(d.cycle.len(), 3);
        assert_eq!(d.gamma, VertexSet::singleton(3));
    }

    #[test]
    fn tree_hanging_off_a_cycle() {
        // C_6 with a path 0-6-7-8 and a whisker at 3
        let g = Graph::new(
            10,
            [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (0, 6), (6, 7), (7, 8), (3, 9)],
        )
        .unwrap();
        let d = decompose_unicyclic(&g).unwrap();
        assert_eq!(d.attach_points, vec![0, 3]);
        assert_eq!(d.gamma, [6, 9].into_iter().collect());
        assert_eq!(d.h_parts[0], [7, 8].into_iter().collect());
    }

    #[test]
    fn triangle_core_with_cliques_uses_the_base() {
        let spec = HtSpec::new(Graph::cycle(3), vec![(0, vec![3])]).unwrap();
        let g = attach_HT(&spec).unwrap().graph;
        assert!(decompose_unicyclic(&g).is_err());
        let d = decompose_unicyclic_ht(&spec).unwrap();
        assert_eq!(d.cycle, vec![0, 1, 2]);
        assert_eq!(d.gamma, [3, 4].into_iter().collect());
    }

    #[test]
    fn rejects_other_shapes() {
        assert!(decompose_unicyclic(&Graph::path(4)).is_err());
        let two_cycles = Graph::new(7, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5), (5, 6), (6, 3)]).unwrap();
        assert!(decompose_unicyclic(&two_cycles).is_err());
    }
}
