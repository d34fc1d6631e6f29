use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchingKind {
    Plain,
    Induced,
}

/// Witness for `mat(G)` or `ν(G)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingCertificate {
    pub kind: MatchingKind,
    pub edges: Vec<(usize, usize)>,
}

impl MatchingCertificate {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn support(&self) -> VertexSet {
        self.edges.iter().flat_map(|&(u, v)| [u, v]).collect()
    }

    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let mut seen = VertexSet::EMPTY;
        for &(u, v) in &self.edges {
            if !g.has_edge(u, v) {
                return Err(format!("({u},{v}) is not an edge"));
            }
            if seen.contains(u) || seen.contains(v) {
                return Err(format!("({u},{v}) shares a vertex with another edge"));
            }
            seen = seen.with(u).with(v);
        }
        if self.kind == MatchingKind::Induced {
            // the support must induce exactly the matching edges
            let (h, _) = g.induced_subgraph(seen).map_err(|e| e.to_string())?;
            if h.edge_count() != self.edges.len() {
                return Err("matching is not induced".into());
            }
        }
        Ok(())
    }
}

/// Edges sorted by degree sum, ties by canonical order.
fn search_order(g: &Graph) -> Vec<(usize, usize)> {
    let mut edges = g.edges().to_vec();
    edges.sort_by_key(|&(u, v)| g.degree(u) + g.degree(v));
    edges
}

struct Search<'a> {
    g: &'a Graph,
    edges: Vec<(usize, usize)>,
    induced: bool,
    current: Vec<(usize, usize)>,
    best: Vec<(usize, usize)>,
}

impl Search<'_> {
    fn upper_bound(&self, from: usize, blocked: VertexSet) -> usize {
        let mut count = 0;
        let mut free = VertexSet::EMPTY;
        for &(u, v) in &self.edges[from..] {
            if !blocked.contains(u) && !blocked.contains(v) {
                count += 1;
                free = free.with(u).with(v);
            }
        }
        count.min(free.len() / 2)
    }

    fn run(&mut self, from: usize, blocked: VertexSet) {
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        if self.current.len() + self.upper_bound(from, blocked) <= self.best.len() {
            return;
        }
        for i in from..self.edges.len() {
            let (u, v) = self.edges[i];
            if blocked.contains(u) || blocked.contains(v) {
                continue;
            }
            let newly = if self.induced {
                self.g.closed_neighborhood(u).union(self.g.closed_neighborhood(v))
            } else {
                VertexSet::singleton(u).with(v)
            };
            self.current.push((u, v));
            self.run(i + 1, blocked.union(newly));
            self.current.pop();
            if self.current.len() + self.upper_bound(i + 1, blocked) <= self.best.len() {
                return;
            }
        }
    }
}

fn maximum(g: &Graph, induced: bool) -> MatchingCertificate {
    let mut s = Search {
        g,
        edges: search_order(g),
        induced,
        current: Vec::new(),
        best: Vec::new(),
    };
    s.run(0, VertexSet::EMPTY);
    let mut edges = s.best;
    edges.sort_unstable();
    MatchingCertificate {
        kind: if induced {
            MatchingKind::Induced
        } else {
            MatchingKind::Plain
        },
        edges,
    }
}

/// `mat(G)` with a maximum matching.
pub fn matching_number(g: &Graph) -> (usize, MatchingCertificate) {
    let cert = maximum(g, false);
    (cert.len(), cert)
}

/// `ν(G)` with a maximum induced matching.
pub fn induced_matching_number(g: &Graph) -> (usize, MatchingCertificate) {
    let cert = maximum(g, true);
    (cert.len(), cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Largest valid subset over all edge subsets.
    fn brute(g: &Graph, induced: bool) -> usize {
        let m = g.edge_count();
        let kind = if induced {
            MatchingKind::Induced
        } else {
            MatchingKind::Plain
        };
        (0u32..1 << m)
            .filter_map(|mask| {
                let cert = MatchingCertificate {
                    kind,
                    edges: (0..m)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| g.edges()[i])
                        .collect(),
                };
                cert.validate(g).ok().map(|_| cert.len())
            })
            .max()
            .unwrap()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(matching_number(&Graph::complete(2)).0, 1);
        assert_eq!(brute(&Graph::cycle(5), false), 2);
        assert_eq!(matching_number(&Graph::cycle(5)).0, 2);
        assert_eq!(brute(&Graph::complete(4), false), 2);
        assert_eq!(matching_number(&Graph::complete(4)).0, 2);

        let two_k2 = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let (nu, cert) = induced_matching_number(&two_k2);
        assert_eq!(nu, 2);
        assert_eq!(cert.edges, vec![(0, 1), (2, 3)]);
        assert_eq!(brute(&Graph::cycle(5), true), 1);
        assert_eq!(induced_matching_number(&Graph::cycle(5)).0, 1);
        assert_eq!(induced_matching_number(&Graph::empty(4)).0, 0);
    }

    #[test]
    fn validator_rejects_bad_witnesses() {
        let c4 = Graph::cycle(4);
        let cert = MatchingCertificate {
            kind: MatchingKind::Induced,
            edges: vec![(0, 1), (2, 3)],
        };
        assert!(cert.validate(&c4).is_err());
        let cert = MatchingCertificate {
            kind: MatchingKind::Plain,
            edges: vec![(0, 1), (1, 2)],
        };
        assert!(cert.validate(&c4).is_err());
        let cert = MatchingCertificate {
            kind: MatchingKind::Plain,
            edges: vec![(0, 2)],
        };
        assert!(cert.validate(&c4).is_err());
    }

    #[test]
    fn agrees_with_subset_enumeration() {
        // every labelled graph on 5 vertices
        let pairs: Vec<(usize, usize)> = (0..5)
            .flat_map(|u| (u + 1..5).map(move |v| (u, v)))
            .collect();
        for mask in 0u32..1 << pairs.len() {
            let g = Graph::new(
                5,
                (0..pairs.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| pairs[i]),
            )
            .unwrap();
            let (m, mc) = matching_number(&g);
            let (nu, nc) = induced_matching_number(&g);
            mc.validate(&g).unwrap();
            nc.validate(&g).unwrap();
            assert_eq!(m, brute(&g, false), "{g:?}");
            assert_eq!(nu, brute(&g, true), "{g:?}");
        }
    }
}
