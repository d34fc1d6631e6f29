use std::collections::BTreeMap;

use eil_core::algebra::{symbolic_membership, symbolic_power_by_intersection, symbolic_power_edge};
use eil_core::harness::{check_rmk_colon_bound, HarnessConfig};
use eil_core::invariants::{cochordal_cover_number, induced_matching_number, DEFAULT_NODE_BUDGET};
use eil_core::resolution::{betti_table, lcm_lattice, regularity_of_graph, regularity_quotient};
use eil_core::{EngineConfig, Field, Graph, Monomial, MonomialIdeal, PowerSpec, Regularity, VertexSet};
use proptest::prelude::*;

fn graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (1..n).flat_map(|j| (0..j).map(move |i| (i, j)));
            Graph::new(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

fn ideal(n: usize, max_exp: u32, max_gens: usize) -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec(prop::collection::vec(0..=max_exp, n), 1..=max_gens).prop_map(move |gens| {
        let gens = gens.iter().map(|e| Monomial::from_exponents(e).unwrap()).collect();
        MonomialIdeal::minimalize(n, gens).unwrap()
    })
    .prop_filter("proper ideal", |i| !i.is_unit())
}

fn covers_oracle(g: &Graph) -> Vec<u32> {
    let all: Vec<u32> = (0u32..1 << g.n())
        .filter(|&c| g.edges().iter().all(|&(u, v)| c >> u & 1 == 1 || c >> v & 1 == 1))
        .collect();
    all.iter().copied().filter(|&c| !all.iter().any(|&d| d != c && d & c == d)).collect()
}

// --- independent multigraded Betti oracle over GF(32003) ----------------------

const P: u64 = 32003;

fn rank_mod_p(mut rows: Vec<Vec<u64>>) -> usize {
    let mut rank = 0;
    let ncols = rows.first().map_or(0, Vec::len);
    for c in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = (0..P).find(|&x| x * rows[rank][c] % P == 1).unwrap();
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c] * inv % P;
                let pivot = rows[rank].clone();
                for (x, p) in rows[r].iter_mut().zip(pivot) {
                    *x = (*x + P * P - f * p % P) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `β_{i,m}(I) = dim H̃_{i-1}(K^m)`, with `K^m` the squarefree `F ⊆ supp m`
/// such that `m / x^F ∈ I`.
fn betti_oracle(i: &MonomialIdeal) -> BTreeMap<(usize, Vec<u32>), usize> {
    let n = i.n();
    let top: Vec<u32> = (0..n).map(|j| i.gens().iter().map(|g| g.get(j)).max().unwrap_or(0)).collect();
    let mut out = BTreeMap::new();
    let mut e = vec![0u32; n];
    loop {
        let faces: Vec<u32> = (0u32..1 << n)
            .filter(|&f| (0..n).all(|j| f >> j & 1 == 0 || e[j] > 0))
            .filter(|&f| {
                let q: Vec<u32> = (0..n).map(|j| e[j] - (f >> j & 1)).collect();
                i.contains(&Monomial::from_exponents(&q).unwrap())
            })
            .collect();
        if !faces.is_empty() {
            let by_dim = |k: i32| -> Vec<u32> { faces.iter().copied().filter(|f| f.count_ones() as i32 == k + 1).collect() };
            let boundary = |k: i32| -> usize {
                let (hi, lo) = (by_dim(k), by_dim(k - 1));
                if hi.is_empty() || lo.is_empty() {
                    return 0;
                }
                let rows = hi
                    .iter()
                    .map(|&f| {
                        let mut row = vec![0u64; lo.len()];
                        for (pos, v) in (0..n).filter(|&v| f >> v & 1 == 1).enumerate() {
                            let idx = lo.iter().position(|&g| g == f & !(1 << v)).unwrap();
                            row[idx] = if pos % 2 == 0 { 1 } else { P - 1 };
                        }
                        row
                    })
                    .collect();
                rank_mod_p(rows)
            };
            for k in -1..n as i32 {
                let h = by_dim(k).len() - boundary(k) - boundary(k + 1);
                if h > 0 {
                    out.insert(((k + 1) as usize, e.clone()), h);
                }
            }
        }
        // next exponent vector in the box
        let mut j = 0;
        while j < n && e[j] == top[j] {
            e[j] = 0;
            j += 1;
        }
        if j == n {
            break;
        }
        e[j] += 1;
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symbolic_paths_agree(g in graph(2, 7), r in 1u32..=3) {
        prop_assert_eq!(symbolic_power_edge(&g, r).unwrap(), symbolic_power_by_intersection(&g, r).unwrap());
    }

    #[test]
    fn membership_matches_cover_weights(g in graph(2, 7), r in 1u32..=3, e in prop::collection::vec(0u32..=3, 7)) {
        let m = Monomial::from_exponents(&e[..g.n()]).unwrap();
        let oracle = covers_oracle(&g)
            .iter()
            .all(|&c| (0..g.n()).filter(|&v| c >> v & 1 == 1).map(|v| e[v]).sum::<u32>() >= r);
        prop_assert_eq!(symbolic_membership(&g, &m, r).unwrap(), oracle);
        prop_assert_eq!(symbolic_power_edge(&g, r).unwrap().contains(&m), oracle);
    }

    #[test]
    fn powers_nest(g in graph(2, 6), r in 2u32..=3) {
        let i = MonomialIdeal::edge_ideal(&g);
        let sym = symbolic_power_edge(&g, r).unwrap();
        prop_assert!(i.power(r).unwrap().is_subset(&sym));
        prop_assert!(sym.is_subset(&symbolic_power_edge(&g, r - 1).unwrap()));
    }

    #[test]
    fn betti_table_matches_oracle(i in ideal(4, 2, 4)) {
        let table = betti_table(&i, &EngineConfig::default()).unwrap();
        let got: BTreeMap<(usize, Vec<u32>), usize> = table
            .fine
            .iter()
            .map(|(&(k, m), &b)| ((k, (0..4).map(|j| m.get(j)).collect()), b))
            .collect();
        prop_assert_eq!(got, betti_oracle(&i));
    }

    #[test]
    fn betti_support_in_lcm_lattice(i in ideal(5, 2, 5)) {
        let lattice = lcm_lattice(&i, &EngineConfig::default()).unwrap();
        for (_, m) in betti_table(&i, &EngineConfig::default()).unwrap().fine.keys() {
            prop_assert!(lattice.contains(m));
        }
    }

    #[test]
    fn fields_agree(g in graph(2, 6), spec in prop_oneof![
        Just(PowerSpec::Plain), Just(PowerSpec::Ordinary(2)), Just(PowerSpec::Symbolic(2))
    ]) {
        let gf = regularity_of_graph(&g, spec, &EngineConfig::default()).unwrap();
        let q = regularity_of_graph(&g, spec, &EngineConfig::with_field(Field::Rational)).unwrap();
        prop_assert_eq!(gf, q);
    }

    #[test]
    fn shuffled_lattice_order_is_irrelevant(i in ideal(5, 3, 6), seed in any::<u64>()) {
        let plain = regularity_quotient(&i, &EngineConfig::default()).unwrap();
        let cfg = EngineConfig { shuffle_seed: Some(seed), ..EngineConfig::default() };
        prop_assert_eq!(regularity_quotient(&i, &cfg).unwrap(), plain);
    }

    #[test]
    fn induced_matching_and_cochord_sandwich(g in graph(2, 8)) {
        prop_assume!(!g.edges().is_empty());
        let reg = regularity_of_graph(&g, PowerSpec::Plain, &EngineConfig::default()).unwrap();
        let Regularity::Value(reg) = reg else { panic!("nonzero ideal") };
        let (nu, _) = induced_matching_number(&g);
        let co = cochordal_cover_number(&g, DEFAULT_NODE_BUDGET);
        prop_assert!(nu as i64 <= reg);
        prop_assert!(reg <= co.upper as i64);
    }

    #[test]
    fn induced_subgraphs_do_not_raise_regularity(g in graph(2, 7), keep in any::<u32>()) {
        let keep: VertexSet = (0..g.n()).filter(|&v| keep >> v & 1 == 1).collect();
        let (h, _) = g.induced_subgraph(keep).unwrap();
        let cfg = EngineConfig::default();
        let rg = regularity_of_graph(&g, PowerSpec::Plain, &cfg).unwrap();
        let rh = regularity_of_graph(&h, PowerSpec::Plain, &cfg).unwrap();
        prop_assert!(rh <= rg);
    }

    #[test]
    fn colon_bound_holds(g in graph(2, 6), r in 1u32..=2, symbolic in any::<bool>(), e in prop::collection::vec(0u32..=2, 6)) {
        let f = Monomial::from_exponents(&e[..g.n()]).unwrap();
        let spec = if symbolic { PowerSpec::Symbolic(r) } else { PowerSpec::Ordinary(r) };
        let c = check_rmk_colon_bound(&g, spec, &f, &HarnessConfig::default());
        prop_assert!(!c.verdict.is_fail(), "{:?}", c);
    }

    #[test]
    fn ideal_json_round_trip(i in ideal(6, 3, 6)) {
        prop_assert_eq!(MonomialIdeal::from_json(&i.to_json()).unwrap(), i);
    }
}

#[test]
fn fold_matches_direct_on_small_unions() {
    let hc = HarnessConfig::default();
    for (a, b) in [(Graph::cycle(5), Graph::cycle(5)), (Graph::cycle(4), Graph::cycle(5)), (Graph::path(4), Graph::cycle(3))] {
        let c = eil_core::harness::check_prop_regsum(&a, &b, 3, &hc);
        assert!(c.verdict.is_pass(), "{c:?}");
        assert_eq!(c.evidence["direct"], c.evidence["folded"]);
    }
}
