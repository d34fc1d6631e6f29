//! Exact graph invariants and class predicates, each with a checkable witness.

pub mod chordal;
pub mod cochord;
pub mod covers;
pub mod matching;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};

pub use chordal::{
    find_long_hole, is_bipartite, is_chordal, is_cochordal, is_weakly_chordal, validate_induced_cycle,
    Bipartiteness, Chordality, EliminationOrder,
};
pub use cochord::{cochordal_cover_number, CoChordalCover, CochordResult, DEFAULT_NODE_BUDGET};
pub use covers::{is_vertex_cover, minimal_vertex_covers, VertexCoverList};
pub use matching::{induced_matching_number, matching_number, MatchingCertificate, MatchingKind};

/// `ν(G) = mat(G)`.
pub fn is_cameron_walker(g: &Graph) -> bool {
    induced_matching_number(g).0 == matching_number(g).0
}

/// Serialized form of every witness type; validators re-read the same JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Matching { edges: Vec<(usize, usize)> },
    InducedMatching { edges: Vec<(usize, usize)> },
    CochordalCover { parts: Vec<Vec<(usize, usize)>> },
    EliminationOrder { ordering: Vec<usize> },
    InducedCycle { cycle: Vec<usize> },
    Bipartition { left: VertexSet, right: VertexSet },
    OddCycle { cycle: Vec<usize> },
    MinimalVertexCovers { covers: Vec<VertexSet> },
}

impl From<MatchingCertificate> for Certificate {
    fn from(c: MatchingCertificate) -> Self {
        match c.kind {
            MatchingKind::Plain => Certificate::Matching { edges: c.edges },
            MatchingKind::Induced => Certificate::InducedMatching { edges: c.edges },
        }
    }
}

impl From<CoChordalCover> for Certificate {
    fn from(c: CoChordalCover) -> Self {
        Certificate::CochordalCover { parts: c.parts }
    }
}

impl From<Chordality> for Certificate {
    fn from(c: Chordality) -> Self {
        match c {
            Chordality::Chordal(o) => Certificate::EliminationOrder { ordering: o.ordering },
            Chordality::NotChordal { cycle } => Certificate::InducedCycle { cycle },
        }
    }
}

impl From<Bipartiteness> for Certificate {
    fn from(b: Bipartiteness) -> Self {
        match b {
            Bipartiteness::Bipartite { left, right } => Certificate::Bipartition { left, right },
            Bipartiteness::NotBipartite { odd_cycle } => Certificate::OddCycle { cycle: odd_cycle },
        }
    }
}

impl From<VertexCoverList> for Certificate {
    fn from(c: VertexCoverList) -> Self {
        Certificate::MinimalVertexCovers { covers: c.covers }
    }
}

impl Certificate {
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        match self {
            Certificate::Matching { edges } => MatchingCertificate {
                kind: MatchingKind::Plain,
                edges: edges.clone(),
            }
            .validate(g),
            Certificate::InducedMatching { edges } => MatchingCertificate {
                kind: MatchingKind::Induced,
                edges: edges.clone(),
            }
            .validate(g),
            Certificate::CochordalCover { parts } => CoChordalCover { parts: parts.clone() }.validate(g),
            Certificate::EliminationOrder { ordering } => EliminationOrder {
                ordering: ordering.clone(),
            }
            .validate(g),
            Certificate::InducedCycle { cycle } => validate_induced_cycle(g, cycle, 4),
            Certificate::Bipartition { left, right } => {
                if left.intersection(*right).is_empty()
                    && left.union(*right) == g.vertices()
                    && g.is_independent(*left)
                    && g.is_independent(*right)
                {
                    Ok(())
                } else {
                    Err("not a bipartition into independent sets".into())
                }
            }
            Certificate::OddCycle { cycle } => {
                let k = cycle.len();
                let distinct: VertexSet = cycle.iter().copied().collect();
                if k % 2 == 1
                    && distinct.len() == k
                    && (0..k).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % k]))
                {
                    Ok(())
                } else {
                    Err("not an odd cycle".into())
                }
            }
            Certificate::MinimalVertexCovers { covers } => {
                let list = VertexCoverList { covers: covers.clone() };
                list.validate(g)?;
                let all = minimal_vertex_covers(g).map_err(|e| e.to_string())?;
                if all.covers.len() != covers.len() {
                    return Err("cover list is incomplete".into());
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cameron_walker_examples() {
        assert!(is_cameron_walker(&Graph::new(4, [(0, 1), (2, 3)]).unwrap()));
        assert!(!is_cameron_walker(&Graph::cycle(5)));
        assert!(is_cameron_walker(&Graph::star(3)));
    }

    #[test]
    fn certificates_round_trip_through_json() {
        let g = Graph::cycle(6);
        let certs: Vec<Certificate> = vec![
            matching_number(&g).1.into(),
            induced_matching_number(&g).1.into(),
            cochordal_cover_number(&g, DEFAULT_NODE_BUDGET).cover.into(),
            is_chordal(&g).into(),
            is_bipartite(&g).into(),
            is_bipartite(&Graph::cycle(5)).into(),
            minimal_vertex_covers(&g).unwrap().into(),
        ];
        for cert in certs {
            let json = serde_json::to_string(&cert).unwrap();
            assert!(json.contains("\"kind\""));
            let back: Certificate = serde_json::from_str(&json).unwrap();
            assert_eq!(back, cert);
            let target = if matches!(back, Certificate::OddCycle { .. }) {
                Graph::cycle(5)
            } else {
                g.clone()
            };
            back.validate(&target).unwrap();
        }
        let bad: Certificate = serde_json::from_str(r#"{"kind":"induced_matching","edges":[[0,1],[2,3]]}"#).unwrap();
        assert!(bad.validate(&Graph::cycle(4)).is_err());
    }
}
