use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::constructions::HtSpec;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::invariants::{is_bipartite, is_cameron_walker, is_vertex_cover, is_weakly_chordal};

/// Largest order for exhaustive enumeration.
pub const MAX_EXHAUSTIVE: usize = 8;
/// Sampling attempts per requested instance before giving up.
const ATTEMPTS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaseFamily {
    Bipartite,
    WeaklyChordalBipartite,
    Unicyclic,
}

/// How the attachment set `T` is drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TMode {
    Any,
    NonEmpty,
    VertexCover,
    Empty,
}

fn default_min_n() -> usize {
    1
}

fn default_min_base() -> usize {
    3
}

fn default_max_base() -> usize {
    8
}

fn default_max_total() -> usize {
    12
}

fn default_t() -> TMode {
    TMode::Any
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CorpusSpec {
    /// Connected graphs up to isomorphism with `min_n ≤ |V| ≤ max_n`.
    AllConnected {
        #[serde(default = "default_min_n")]
        min_n: usize,
        max_n: usize,
    },
    RandomHt {
        base: BaseFamily,
        #[serde(default = "default_t")]
        t: TMode,
        #[serde(default = "default_min_base")]
        min_base: usize,
        #[serde(default = "default_max_base")]
        max_base: usize,
        #[serde(default = "default_max_total")]
        max_total: usize,
        count: usize,
        seed: u64,
    },
    /// Unicyclic base with nonempty `T`.
    RandomUnicyclicHt {
        #[serde(default = "default_min_base")]
        min_base: usize,
        #[serde(default = "default_max_base")]
        max_base: usize,
        #[serde(default = "default_max_total")]
        max_total: usize,
        count: usize,
        seed: u64,
    },
    CameronWalker {
        #[serde(default = "default_min_n")]
        min_n: usize,
        max_n: usize,
        count: usize,
        seed: u64,
    },
    Named {
        name: String,
    },
}

impl CorpusSpec {
    /// Replaces the seed of a random generator; other kinds are returned unchanged.
    pub fn with_seed(mut self, s: u64) -> Self {
        match &mut self {
            CorpusSpec::RandomHt { seed, .. }
            | CorpusSpec::RandomUnicyclicHt { seed, .. }
            | CorpusSpec::CameronWalker { seed, .. } => *seed = s,
            CorpusSpec::AllConnected { .. } | CorpusSpec::Named { .. } => {}
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub label: String,
    pub graph: Graph,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ht: Option<HtSpec>,
}

impl Instance {
    pub fn plain(label: impl Into<String>, graph: Graph) -> Self {
        Instance {
            label: label.into(),
            graph,
            ht: None,
        }
    }

    pub fn from_ht(label: impl Into<String>, spec: HtSpec) -> Result<Self> {
        let graph = crate::constructions::attach_HT(&spec)?.graph;
        Ok(Instance {
            label: label.into(),
            graph,
            ht: Some(spec),
        })
    }
}

pub const NAMED: &[&str] = &["cycle-union", "kappa-figure", "c10-k3"];

pub fn generate_corpus(spec: &CorpusSpec) -> Result<Vec<Instance>> {
    match spec {
        CorpusSpec::AllConnected { min_n, max_n } => {
            if *max_n > MAX_EXHAUSTIVE {
                return Err(Error::CapExceeded {
                    what: "exhaustive order",
                    value: *max_n,
                    limit: MAX_EXHAUSTIVE,
                });
            }
            Ok(connected_graphs(*min_n, *max_n)
                .into_iter()
                .enumerate()
                .map(|(i, g)| Instance::plain(format!("conn{}-{i}", g.n()), g))
                .collect())
        }
        CorpusSpec::RandomHt {
            base,
            t,
            min_base,
            max_base,
            max_total,
            count,
            seed,
        } => random_ht(*base, *t, *min_base, *max_base, *max_total, *count, *seed),
        CorpusSpec::RandomUnicyclicHt {
            min_base,
            max_base,
            max_total,
            count,
            seed,
        } => random_ht(
            BaseFamily::Unicyclic,
            TMode::NonEmpty,
            *min_base,
            *max_base,
            *max_total,
            *count,
            *seed,
        ),
        CorpusSpec::CameronWalker {
            min_n,
            max_n,
            count,
            seed,
        } => cameron_walker(*min_n, *max_n, *count, *seed),
        CorpusSpec::Named { name } => named(name),
    }
}

fn check_bounds(lo: usize, hi: usize, cap: usize) -> Result<()> {
    if lo > hi || lo == 0 {
        return Err(Error::Precondition(format!("bad size range {lo}..={hi}")));
    }
    if hi > cap {
        return Err(Error::CapExceeded {
            what: "corpus size bound",
            value: hi,
            limit: cap,
        });
    }
    Ok(())
}

fn named(name: &str) -> Result<Vec<Instance>> {
    let c10k3 = || HtSpec::new(Graph::cycle(10), vec![(0, vec![3])]);
    match name {
        // too large for one vertex set, so the components are listed
        "cycle-union" => Ok(vec![
            Instance::plain("C8#1", Graph::cycle(8)),
            Instance::plain("C8#2", Graph::cycle(8)),
            Instance::plain("C10", Graph::cycle(10)),
            Instance::from_ht("C10(K3)", c10k3()?)?,
        ]),
        "c10-k3" => Ok(vec![Instance::from_ht("C10(K3)", c10k3()?)?]),
        "kappa-figure" => Ok(vec![Instance::from_ht(
            "C5 with four attachments",
            HtSpec::new(
                Graph::cycle(5),
                vec![(0, vec![2]), (2, vec![3, 5]), (3, vec![2, 2, 2]), (4, vec![2, 4])],
            )?,
        )?]),
        other => Err(Error::Precondition(format!(
            "unknown named corpus {other:?}; known: {}",
            NAMED.join(", ")
        ))),
    }
}

// --- exhaustive enumeration --------------------------------------------------

fn pair_index(i: usize, j: usize) -> usize {
    // pairs (i, j), i < j, ordered by j then i
    j * (j - 1) / 2 + i
}

fn encode(g: &Graph, order: &[usize]) -> u64 {
    // order[k] = old vertex placed at position k
    let mut pos = vec![0; g.n()];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    g.edges().iter().fold(0u64, |acc, &(u, v)| {
        let (a, b) = (pos[u].min(pos[v]), pos[u].max(pos[v]));
        acc | 1 << pair_index(a, b)
    })
}

fn decode(n: usize, code: u64) -> Graph {
    let edges = (1..n).flat_map(|j| (0..j).map(move |i| (i, j)));
    Graph::new(n, edges.filter(|&(i, j)| code >> pair_index(i, j) & 1 == 1)).expect("valid code")
}

/// Isomorphism-invariant code for graphs on at most eight vertices: the
/// least edge encoding over orderings compatible with a degree refinement.
pub fn canonical_code(g: &Graph) -> u64 {
    assert!(g.n() <= MAX_EXHAUSTIVE, "canonical form supports at most {MAX_EXHAUSTIVE} vertices");
    let n = g.n();
    let inv: Vec<(usize, Vec<usize>)> = (0..n)
        .map(|v| {
            let mut nd: Vec<usize> = g.adj(v).iter().map(|u| g.degree(u)).collect();
            nd.sort_unstable();
            (g.degree(v), nd)
        })
        .collect();
    let mut verts: Vec<usize> = (0..n).collect();
    verts.sort_by(|&a, &b| inv[a].cmp(&inv[b]));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for v in verts {
        match cells.last_mut() {
            Some(c) if inv[c[0]] == inv[v] => c.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut best = u64::MAX;
    let mut order = Vec::with_capacity(n);
    permute_cells(g, &mut cells, 0, 0, &mut order, &mut best);
    best
}

fn permute_cells(g: &Graph, cells: &mut [Vec<usize>], ci: usize, k: usize, order: &mut Vec<usize>, best: &mut u64) {
    if ci == cells.len() {
        *best = (*best).min(encode(g, order));
        return;
    }
    if k == cells[ci].len() {
        permute_cells(g, cells, ci + 1, 0, order, best);
        return;
    }
    for i in k..cells[ci].len() {
        cells[ci].swap(k, i);
        order.push(cells[ci][k]);
        permute_cells(g, cells, ci, k + 1, order, best);
        order.pop();
        cells[ci].swap(k, i);
    }
}

/// All graphs on `n` vertices up to isomorphism, as sorted canonical codes.
fn all_graphs(n: usize) -> Vec<u64> {
    if n <= 1 {
        return vec![0];
    }
    let mut out = BTreeSet::new();
    for code in all_graphs(n - 1) {
        let small = decode(n - 1, code);
        for nbrs in 0u32..1 << (n - 1) {
            let edges = small
                .edges()
                .iter()
                .copied()
                .chain(VertexSet::from_bits(nbrs).iter().map(|u| (u, n - 1)));
            out.insert(canonical_code(&Graph::new(n, edges).expect("in range")));
        }
    }
    out.into_iter().collect()
}

/// Connected graphs up to isomorphism, ordered by size then canonical code.
pub fn connected_graphs(min_n: usize, max_n: usize) -> Vec<Graph> {
    (min_n.max(1)..=max_n)
        .flat_map(|n| all_graphs(n).into_iter().map(move |c| decode(n, c)))
        .filter(|g| g.is_connected())
        .collect()
}

// --- random H_T ---------------------------------------------------------------

fn random_bipartite(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    loop {
        let a = rng.gen_range(1..n);
        let edges: Vec<(usize, usize)> = (0..a)
            .flat_map(|i| (a..n).map(move |j| (i, j)))
            .filter(|_| rng.gen_bool(0.5))
            .collect();
        let g = Graph::new(n, edges).expect("in range");
        if g.is_connected() {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(rng);
            return g.permute(&perm);
        }
    }
}

fn random_unicyclic(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let c = rng.gen_range(3..=n);
    let mut edges: Vec<(usize, usize)> = (0..c).map(|i| (i, (i + 1) % c)).collect();
    for v in c..n {
        edges.push((rng.gen_range(0..v), v));
    }
    Graph::new(n, edges).expect("in range")
}

fn random_t(rng: &mut ChaCha8Rng, base: &Graph, mode: TMode) -> VertexSet {
    let n = base.n();
    let mut t: VertexSet = (0..n).filter(|_| rng.gen_bool(0.35)).collect();
    match mode {
        TMode::Empty => VertexSet::EMPTY,
        TMode::Any => t,
        TMode::NonEmpty => {
            if t.is_empty() {
                t.insert(rng.gen_range(0..n));
            }
            t
        }
        TMode::VertexCover => {
            let mut edges = base.edges().to_vec();
            edges.shuffle(rng);
            for (u, v) in edges {
                if !t.contains(u) && !t.contains(v) {
                    t.insert(if rng.gen_bool(0.5) { u } else { v });
                }
            }
            t
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn random_ht(
    family: BaseFamily,
    mode: TMode,
    min_base: usize,
    max_base: usize,
    max_total: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<Instance>> {
    check_bounds(min_base.max(2), max_base, crate::graph::MAX_VERTICES)?;
    check_bounds(max_base, max_total, crate::graph::MAX_VERTICES)?;
    let min_base = match family {
        BaseFamily::Unicyclic => min_base.max(3),
        _ => min_base.max(2),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        if attempts > ATTEMPTS * count.max(1) {
            return Err(Error::Precondition("corpus sampler ran out of attempts".into()));
        }
        let n = rng.gen_range(min_base..=max_base);
        let base = match family {
            BaseFamily::Unicyclic => random_unicyclic(&mut rng, n),
            _ => random_bipartite(&mut rng, n),
        };
        if family == BaseFamily::WeaklyChordalBipartite && !is_weakly_chordal(&base)? {
            continue;
        }
        let t = random_t(&mut rng, &base, mode);
        let mut budget = max_total - n;
        let mut attachments = Vec::new();
        let mut ok = true;
        for v in t.iter() {
            let mut sizes = Vec::new();
            for _ in 0..rng.gen_range(1..=2) {
                let k = rng.gen_range(2..=4usize);
                if k - 1 <= budget {
                    budget -= k - 1;
                    sizes.push(k);
                }
            }
            if sizes.is_empty() {
                ok = false;
                break;
            }
            attachments.push((v, sizes));
        }
        if !ok {
            continue;
        }
        let spec = HtSpec::new(base, attachments)?;
        debug_assert!(mode != TMode::VertexCover || is_vertex_cover(&spec.base, spec.t()));
        debug_assert!(family == BaseFamily::Unicyclic || is_bipartite(&spec.base).is_bipartite());
        let label = format!("ht-{}-{}", seed, out.len());
        out.push(Instance::from_ht(label, spec)?);
    }
    Ok(out)
}

// --- Cameron–Walker -----------------------------------------------------------

/// Samples from the known connected shapes (star, triangles sharing a
/// vertex, bipartite core with pendant edges and triangles) and keeps only
/// graphs that pass the `ν = mat` test.
fn cameron_walker(min_n: usize, max_n: usize, count: usize, seed: u64) -> Result<Vec<Instance>> {
    check_bounds(min_n.max(2), max_n, crate::graph::MAX_VERTICES)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        if attempts > ATTEMPTS * count.max(1) {
            return Err(Error::Precondition("corpus sampler ran out of attempts".into()));
        }
        let g = match rng.gen_range(0..4) {
            0 => Graph::star(rng.gen_range(1..max_n.max(2))),
            1 => {
                let k = rng.gen_range(1..=(max_n.saturating_sub(1) / 2).max(1));
                let edges = (0..k).flat_map(|i| [(0, 2 * i + 1), (0, 2 * i + 2), (2 * i + 1, 2 * i + 2)]);
                Graph::new(2 * k + 1, edges)?
            }
            _ => match cw_core(&mut rng, max_n) {
                Some(g) => g,
                None => continue,
            },
        };
        if g.n() < min_n || g.n() > max_n || !g.is_connected() || !is_cameron_walker(&g) {
            continue;
        }
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut rng);
        out.push(Instance::plain(format!("cw-{}-{}", seed, out.len()), g.permute(&perm)));
    }
    Ok(out)
}

fn cw_core(rng: &mut ChaCha8Rng, max_n: usize) -> Option<Graph> {
    let a = rng.gen_range(1..=3usize);
    let b = rng.gen_range(1..=3usize);
    let mut edges: Vec<(usize, usize)> = (0..a)
        .flat_map(|i| (a..a + b).map(move |j| (i, j)))
        .filter(|_| rng.gen_bool(0.6))
        .collect();
    let mut next = a + b;
    for i in 0..a {
        for _ in 0..rng.gen_range(1..=2) {
            edges.push((i, next));
            next += 1;
        }
    }
    for j in a..a + b {
        for _ in 0..rng.gen_range(0..=1) {
            edges.extend([(j, next), (j, next + 1), (next, next + 1)]);
            next += 2;
        }
    }
    if next > max_n {
        return None;
    }
    Graph::new(next, edges).ok()
}
