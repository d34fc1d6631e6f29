use serde::{Deserialize, Serialize};

use super::engine::{regularity_quotient, EngineConfig, Regularity};
use crate::algebra::{symbolic_power_edge, MonomialIdeal};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Which ideal attached to `G` a regularity refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "r", rename_all = "snake_case")]
pub enum PowerSpec {
    Plain,
    Ordinary(u32),
    Symbolic(u32),
}

impl PowerSpec {
    pub fn ideal(self, g: &Graph) -> Result<MonomialIdeal> {
        match self {
            PowerSpec::Plain => Ok(MonomialIdeal::edge_ideal(g)),
            PowerSpec::Ordinary(r) => MonomialIdeal::edge_ideal(g).power(r),
            PowerSpec::Symbolic(r) => symbolic_power_edge(g, r),
        }
    }
}

/// `reg(S/I)` for the chosen ideal of `G`, computed directly.
pub fn regularity_of_graph(g: &Graph, spec: PowerSpec, cfg: &EngineConfig) -> Result<Regularity> {
    regularity_quotient(&spec.ideal(g)?, cfg)
}

/// Symbolic-power regularities of `G_1 ∐ G_2` from those of the pieces:
/// `h(s) = max` over `n ∈ [1, s-1]`, `m ∈ [1, s]` of
/// `f1(s-n) + f2(n) + 1` and `f1(s-m+1) + f2(m)`.
/// Inputs and output are indexed by `s - 1`.
pub fn fold_symbolic(f1: &[Regularity], f2: &[Regularity]) -> Vec<Regularity> {
    let len = f1.len().min(f2.len());
    (1..=len)
        .map(|s| {
            let a = (1..s).map(|n| (f1[s - n - 1] + f2[n - 1]).plus(1));
            let b = (1..=s).map(|m| f1[s - m] + f2[m - 1]);
            a.chain(b).max().expect("s ≥ 1")
        })
        .collect()
}

/// Regularity computed component by component. Plain ideals add up over
/// components; symbolic powers fold with [`fold_symbolic`]; ordinary powers
/// are computed on the whole graph.
pub fn regularity_additive(g: &Graph, spec: PowerSpec, cfg: &EngineConfig) -> Result<Regularity> {
    let comps: Vec<Graph> = g
        .connected_components()
        .into_iter()
        .filter(|c| c.len() > 1)
        .map(|c| g.induced_subgraph(c).map(|(h, _)| h))
        .collect::<Result<_>>()?;
    match spec {
        PowerSpec::Ordinary(_) => regularity_of_graph(g, spec, cfg),
        PowerSpec::Plain => {
            let mut total = Regularity::Value(0);
            for c in &comps {
                total = total + regularity_of_graph(c, PowerSpec::Plain, cfg)?;
            }
            Ok(total)
        }
        PowerSpec::Symbolic(r) => {
            if r == 0 {
                return Err(Error::ZeroPower);
            }
            Ok(symbolic_profile(&comps, r, cfg)?
                .last()
                .copied()
                .unwrap_or(Regularity::Value(0)))
        }
    }
}

/// `[reg(S/I(G)^(s)) : s = 1..=r]` for the disjoint union of `comps`.
pub fn symbolic_profile(comps: &[Graph], r: u32, cfg: &EngineConfig) -> Result<Vec<Regularity>> {
    let mut acc: Option<Vec<Regularity>> = None;
    for c in comps {
        let f: Vec<Regularity> = (1..=r)
            .map(|s| regularity_of_graph(c, PowerSpec::Symbolic(s), cfg))
            .collect::<Result<_>>()?;
        acc = Some(match acc {
            None => f,
            Some(prev) => fold_symbolic(&prev, &f),
        });
    }
    Ok(acc.unwrap_or_else(|| vec![Regularity::Value(0); r as usize]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Regularity> {
        xs.iter().map(|&x| Regularity::Value(x)).collect()
    }

    #[test]
    fn fold_by_hand() {
        // s = 1 adds; s = 2: max(f1(1)+f2(1)+1, f1(2)+f2(1), f1(1)+f2(2))
        assert_eq!(fold_symbolic(&v(&[1, 3]), &v(&[2, 4])), v(&[3, 5]));
        assert_eq!(fold_symbolic(&v(&[3, 4, 6]), &v(&[3, 5, 7])), v(&[6, 8, 10]));
    }

    #[test]
    fn plain_is_componentwise_sum() {
        let g = Graph::cycle(5).disjoint_union(&Graph::path(4)).unwrap();
        let cfg = EngineConfig::default();
        let direct = regularity_of_graph(&g, PowerSpec::Plain, &cfg).unwrap();
        assert_eq!(regularity_additive(&g, PowerSpec::Plain, &cfg).unwrap(), direct);
        assert_eq!(direct, Regularity::Value(3));
    }

    #[test]
    fn symbolic_fold_matches_direct() {
        let cfg = EngineConfig::default();
        let g = Graph::cycle(3).disjoint_union(&Graph::complete(2)).unwrap();
        let g = g.disjoint_union(&Graph::empty(1)).unwrap();
        for r in 1..=3 {
            let direct = regularity_of_graph(&g, PowerSpec::Symbolic(r), &cfg).unwrap();
            let folded = regularity_additive(&g, PowerSpec::Symbolic(r), &cfg).unwrap();
            assert_eq!(folded, direct, "r={r}");
        }
    }

    #[test]
    fn single_component_is_direct() {
        let cfg = EngineConfig::default();
        let g = Graph::cycle(5);
        assert_eq!(
            regularity_additive(&g, PowerSpec::Symbolic(2), &cfg).unwrap(),
            regularity_of_graph(&g, PowerSpec::Symbolic(2), &cfg).unwrap()
        );
    }

    #[test]
    fn spec_json() {
        assert_eq!(
            serde_json::to_string(&PowerSpec::Symbolic(2)).unwrap(),
            r#"{"kind":"symbolic","r":2}"#
        );
        assert_eq!(serde_json::to_string(&PowerSpec::Plain).unwrap(), r#"{"kind":"plain"}"#);
    }
}
