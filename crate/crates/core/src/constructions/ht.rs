use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet, MAX_VERTICES};
use crate::invariants::{is_bipartite, is_vertex_cover, matching_number, CoChordalCover};

/// `K(x)`: complete graphs glued at one centre vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StarOfCliquesSpec {
    pub clique_sizes: Vec<usize>,
}

impl StarOfCliquesSpec {
    pub fn new(clique_sizes: Vec<usize>) -> Result<Self> {
        let spec = StarOfCliquesSpec { clique_sizes };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.clique_sizes.is_empty() {
            return Err(Error::InvalidCliqueSize(0));
        }
        match self.clique_sizes.iter().find(|&&k| k < 2) {
            Some(&k) => Err(Error::InvalidCliqueSize(k)),
            None => Ok(()),
        }
    }

    pub fn vertex_count(&self) -> usize {
        1 + self.clique_sizes.iter().map(|k| k - 1).sum::<usize>()
    }

    /// Every clique is an edge.
    pub fn is_star_graph(&self) -> bool {
        self.clique_sizes.iter().all(|&k| k == 2)
    }

    pub fn is_star_complete(&self) -> bool {
        self.clique_sizes.iter().any(|&k| k >= 3)
    }
}

/// Builds `K(x)` with centre 0 and cliques laid out in order.
pub fn build_star_of_cliques(spec: &StarOfCliquesSpec) -> Result<(Graph, usize)> {
    spec.validate()?;
    let n = spec.vertex_count();
    if n > MAX_VERTICES {
        return Err(Error::CapExceeded {
            what: "vertex count",
            value: n,
            limit: MAX_VERTICES,
        });
    }
    let mut edges = Vec::new();
    let mut next = 1;
    for &k in &spec.clique_sizes {
        let members: Vec<usize> = std::iter::once(0).chain(next..next + k - 1).collect();
        for (a, &u) in members.iter().enumerate() {
            for &v in &members[a + 1..] {
                edges.push((u, v));
            }
        }
        next += k - 1;
    }
    Ok((Graph::new(n, edges)?, 0))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attachment {
    pub vertex: usize,
    pub cliques: StarOfCliquesSpec,
}

/// `H_T`: a base graph with a star of cliques glued at each vertex of `T`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HtSpec {
    pub base: Graph,
    #[serde(default)]
    pub attachments: Vec<Attachment>,
}

/// Vertex layout of a built `H_T`. Base vertices keep their labels; new
/// vertices follow in attachment order, cliques in listed order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HtGraph {
    pub graph: Graph,
    /// `cliques[j][k]`: vertex set (centre included) of clique `k` of attachment `j`.
    pub cliques: Vec<Vec<VertexSet>>,
}

impl HtSpec {
    pub fn new(base: Graph, attachments: Vec<(usize, Vec<usize>)>) -> Result<Self> {
        let spec = HtSpec {
            base,
            attachments: attachments
                .into_iter()
                .map(|(vertex, sizes)| {
                    Ok(Attachment {
                        vertex,
                        cliques: StarOfCliquesSpec::new(sizes)?,
                    })
                })
                .collect::<Result<_>>()?,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = VertexSet::EMPTY;
        for a in &self.attachments {
            if a.vertex >= self.base.n() {
                return Err(Error::VertexOutOfRange {
                    vertex: a.vertex,
                    n: self.base.n(),
                });
            }
            if seen.contains(a.vertex) {
                return Err(Error::DuplicateAttachment(a.vertex));
            }
            seen.insert(a.vertex);
            a.cliques.validate()?;
        }
        let total = self.vertex_count();
        if total > MAX_VERTICES {
            return Err(Error::CapExceeded {
                what: "vertex count",
                value: total,
                limit: MAX_VERTICES,
            });
        }
        Ok(())
    }

    pub fn t(&self) -> VertexSet {
        self.attachments.iter().map(|a| a.vertex).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.base.n()
            + self
                .attachments
                .iter()
                .map(|a| a.cliques.vertex_count() - 1)
                .sum::<usize>()
    }

    /// Number of star-graph attachments.
    pub fn p(&self) -> usize {
        self.attachments.iter().filter(|a| a.cliques.is_star_graph()).count()
    }

    pub fn q(&self) -> usize {
        self.attachments.len()
    }

    pub fn kappa(&self) -> usize {
        self.attachments
            .iter()
            .filter(|a| a.cliques.is_star_complete())
            .map(|a| a.cliques.vertex_count())
            .sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }

    pub fn from_json(s: &str) -> Result<HtSpec> {
        let spec: HtSpec = serde_json::from_str(s)?;
        spec.validate()?;
        Ok(spec)
    }
}

pub fn kappa(spec: &HtSpec) -> usize {
    spec.kappa()
}

#[allow(non_snake_case)]
pub fn attach_HT(spec: &HtSpec) -> Result<HtGraph> {
    spec.validate()?;
    let mut edges: Vec<(usize, usize)> = spec.base.edges().to_vec();
    let mut next = spec.base.n();
    let mut cliques = Vec::with_capacity(spec.attachments.len());
    for a in &spec.attachments {
        let mut mine = Vec::new();
        for &k in &a.cliques.clique_sizes {
            let members: VertexSet = std::iter::once(a.vertex).chain(next..next + k - 1).collect();
            for u in members.iter() {
                for v in members.iter().filter(|&v| v > u) {
                    edges.push((u, v));
                }
            }
            next += k - 1;
            mine.push(members);
        }
        cliques.push(mine);
    }
    let mut graph = Graph::new(next, edges)?;
    if let Some(names) = spec.base.names() {
        let mut all = names.to_vec();
        all.extend((spec.base.n()..next).map(|v| format!("a{v}")));
        graph = graph.with_names(all)?;
    }
    Ok(HtGraph { graph, cliques })
}

/// Which branch of the constructive cover applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HtCoverCase {
    /// All attachments are star graphs.
    AllStar,
    /// All attachments are star complete.
    AllStarComplete,
    Mixed,
}

/// Explicit co-chordal cover of `H_T` with `|cover| = ν(H_T)`, for bipartite
/// `H` and `T` a vertex cover of `H`.
///
/// `T1` (star attachments) is covered through a maximum matching `M` of
/// `H[T1]`: each matched pair contributes the double star of all edges at
/// either end, each unmatched vertex its own star. `T2` contributes one part
/// per clique of size at least three, together with the centre's other
/// edges. Both kinds of part are split graphs. Since `H[T1]` is bipartite,
/// `|T1| - |M| = α(H[T1])`, and an independent set of `H[T1]` (one whisker
/// each) plus one non-centre edge per big clique is an induced matching of
/// the same size.
#[allow(non_snake_case)]
pub fn construct_cochordal_cover_HT(spec: &HtSpec) -> Result<(CoChordalCover, HtCoverCase)> {
    spec.validate()?;
    let h = &spec.base;
    if !is_bipartite(h).is_bipartite() {
        return Err(Error::Precondition("base graph is not bipartite".into()));
    }
    if !is_vertex_cover(h, spec.t()) {
        return Err(Error::Precondition("T is not a vertex cover of the base".into()));
    }
    let built = attach_HT(spec)?;
    let g = &built.graph;
    let case = match (spec.p(), spec.q()) {
        (p, q) if p == q => HtCoverCase::AllStar,
        (0, _) => HtCoverCase::AllStarComplete,
        _ => HtCoverCase::Mixed,
    };

    let star_at = |x: usize| -> Vec<(usize, usize)> {
        g.adj(x).iter().map(|u| (x.min(u), x.max(u))).collect()
    };

    let t1: VertexSet = spec
        .attachments
        .iter()
        .filter(|a| a.cliques.is_star_graph())
        .map(|a| a.vertex)
        .collect();
    let (core, back) = h.induced_subgraph(t1)?;
    let (_, m) = matching_number(&core);
    let mut parts: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut matched = VertexSet::EMPTY;
    for &(a, b) in &m.edges {
        let (x, y) = (back[a], back[b]);
        matched.insert(x);
        matched.insert(y);
        let mut part = star_at(x);
        part.extend(star_at(y).into_iter().filter(|&e| e != (x.min(y), x.max(y))));
        parts.push(part);
    }
    for x in t1.difference(matched).iter() {
        parts.push(star_at(x));
    }

    for (a, cl) in spec.attachments.iter().zip(&built.cliques) {
        if !a.cliques.is_star_complete() {
            continue;
        }
        let x = a.vertex;
        for (k, &members) in cl.iter().enumerate() {
            if a.cliques.clique_sizes[k] < 3 {
                continue;
            }
            let mut part: Vec<(usize, usize)> = g
                .edges()
                .iter()
                .copied()
                .filter(|&(u, v)| members.contains(u) && members.contains(v))
                .collect();
            part.extend(star_at(x).into_iter().filter(|&(u, v)| {
                let other = if u == x { v } else { u };
                !members.contains(other)
            }));
            parts.push(part);
        }
    }
    for part in &mut parts {
        part.sort_unstable();
        part.dedup();
    }
    let cover = CoChordalCover { parts };
    cover
        .validate(g)
        .map_err(|e| Error::InternalValidation(format!("constructed cover: {e}")))?;
    Ok((cover, case))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{cochordal_cover_number, induced_matching_number, DEFAULT_NODE_BUDGET};

    #[test]
    fn star_of_cliques_examples() {
        let (g, c) = build_star_of_cliques(&StarOfCliquesSpec::new(vec![2]).unwrap()).unwrap();
        assert_eq!((g, c), (Graph::complete(2), 0));
        let (g, c) = build_star_of_cliques(&StarOfCliquesSpec::new(vec![2, 2]).unwrap()).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.degree(c), 2);
        let spec = StarOfCliquesSpec::new(vec![3, 2]).unwrap();
        let (g, c) = build_star_of_cliques(&spec).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.degree(c), 3);
        assert!(spec.is_star_complete() && !spec.is_star_graph());
        assert!(StarOfCliquesSpec::new(vec![1]).is_err());
        assert!(StarOfCliquesSpec::new(vec![]).is_err());
    }

    pub(crate) fn figure_spec() -> HtSpec {
        HtSpec::new(
            Graph::cycle(5),
            vec![(0, vec![2]), (2, vec![3, 5]), (3, vec![2, 2, 2]), (4, vec![2, 4])],
        )
        .unwrap()
    }

    #[test]
    fn figure_kappa() {
        let spec = figure_spec();
        assert_eq!(spec.attachments[1].cliques.vertex_count(), 7);
        assert_eq!(spec.attachments[3].cliques.vertex_count(), 5);
        assert_eq!(kappa(&spec), 12);
        assert_eq!((spec.p(), spec.q()), (2, 4));
        let built = attach_HT(&spec).unwrap();
        assert_eq!(built.graph.n(), 5 + 1 + 6 + 3 + 4);
        let (sub, _) = built.graph.induced_subgraph(VertexSet::full(5)).unwrap();
        assert_eq!(sub, Graph::cycle(5));
    }

    #[test]
    fn kappa_examples() {
        let s = HtSpec::new(Graph::path(3), vec![(0, vec![2, 2]), (2, vec![2])]).unwrap();
        assert_eq!(s.kappa(), 0);
        let s = HtSpec::new(Graph::path(3), vec![(1, vec![3])]).unwrap();
        assert_eq!(s.kappa(), 3);
        assert!(HtSpec::new(Graph::path(3), vec![(1, vec![3]), (1, vec![2])]).is_err());
    }

    #[test]
    fn empty_t_keeps_base() {
        let spec = HtSpec::new(Graph::cycle(6), vec![]).unwrap();
        assert_eq!(attach_HT(&spec).unwrap().graph, Graph::cycle(6));
    }

    #[test]
    fn decagon_with_triangle() {
        let spec = HtSpec::new(Graph::cycle(10), vec![(0, vec![3])]).unwrap();
        let g = attach_HT(&spec).unwrap().graph;
        assert_eq!(g.n(), 12);
        assert_eq!(g.edge_count(), 13);
    }

    #[test]
    fn json_shape() {
        let spec = HtSpec::new(Graph::path(2), vec![(0, vec![3])]).unwrap();
        let s = spec.to_json();
        assert_eq!(s, r#"{"base":{"n":2,"edges":[[0,1]]},"attachments":[{"vertex":0,"cliques":[3]}]}"#);
        assert_eq!(HtSpec::from_json(&s).unwrap(), spec);
    }

    fn check_cover(spec: &HtSpec, expect_case: HtCoverCase, expect: usize) {
        let (cover, case) = construct_cochordal_cover_HT(spec).unwrap();
        let g = attach_HT(spec).unwrap().graph;
        assert_eq!(case, expect_case);
        assert_eq!(cover.len(), expect);
        assert_eq!(induced_matching_number(&g).0, expect);
        assert_eq!(cochordal_cover_number(&g, DEFAULT_NODE_BUDGET).exact(), Some(expect));
    }

    #[test]
    fn constructive_cover_examples() {
        check_cover(
            &HtSpec::new(Graph::path(2), vec![(0, vec![3])]).unwrap(),
            HtCoverCase::AllStarComplete,
            1,
        );
        check_cover(
            &HtSpec::new(Graph::path(3), vec![(1, vec![2])]).unwrap(),
            HtCoverCase::AllStar,
            1,
        );
        check_cover(
            &HtSpec::new(Graph::path(3), vec![(0, vec![2]), (2, vec![3])]).unwrap(),
            HtCoverCase::Mixed,
            2,
        );
        // star vertices at both ends, a star-complete vertex in between
        check_cover(
            &HtSpec::new(Graph::path(4), vec![(0, vec![2]), (3, vec![2]), (1, vec![3, 2])]).unwrap(),
            HtCoverCase::Mixed,
            3,
        );
    }

    #[test]
    fn constructive_cover_rejects_bad_input() {
        let odd = HtSpec::new(Graph::cycle(5), vec![(0, vec![2])]).unwrap();
        assert!(matches!(construct_cochordal_cover_HT(&odd), Err(Error::Precondition(_))));
        let uncovered = HtSpec::new(Graph::path(3), vec![(0, vec![2])]).unwrap();
        assert!(construct_cochordal_cover_HT(&uncovered).is_err());
    }
}
