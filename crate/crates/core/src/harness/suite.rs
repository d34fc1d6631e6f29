use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::checks::*;
use super::corpus::{generate_corpus, BaseFamily, CorpusSpec, Instance, TMode};
use super::{threads_from_env, HarnessConfig, TheoremCheck, TheoremId};
use crate::constructions::HtSpec;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::invariants::{cochordal_cover_number, induced_matching_number};
use crate::resolution::{symbolic_profile, Field, PowerSpec, Regularity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Goldens,
    SmallExhaustive,
    Svv,
    PowerBounds,
    BipartiteHt,
    NuCochord,
    Unicyclic,
    UnicyclicBare,
    Colon,
    Engine,
    SymbolicPaths,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Goldens,
        Suite::SmallExhaustive,
        Suite::Svv,
        Suite::PowerBounds,
        Suite::BipartiteHt,
        Suite::NuCochord,
        Suite::Unicyclic,
        Suite::UnicyclicBare,
        Suite::Colon,
        Suite::Engine,
        Suite::SymbolicPaths,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Goldens => "goldens",
            Suite::SmallExhaustive => "small-exhaustive",
            Suite::Svv => "svv",
            Suite::PowerBounds => "power-bounds",
            Suite::BipartiteHt => "bipartite-ht",
            Suite::NuCochord => "nu-cochord",
            Suite::Unicyclic => "unicyclic",
            Suite::UnicyclicBare => "unicyclic-bare",
            Suite::Colon => "colon",
            Suite::Engine => "engine",
            Suite::SymbolicPaths => "symbolic-paths",
        }
    }

    pub fn parse(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }

    pub fn default_r_max(self) -> u32 {
        match self {
            Suite::Goldens | Suite::Svv | Suite::Colon | Suite::SymbolicPaths => 3,
            _ => 2,
        }
    }

    /// Corpora used when none is given.
    pub fn default_corpora(self) -> Vec<CorpusSpec> {
        let ht = |base, t, count, seed| CorpusSpec::RandomHt {
            base,
            t,
            min_base: 3,
            max_base: 8,
            max_total: 12,
            count,
            seed,
        };
        let uni = |count, seed| CorpusSpec::RandomUnicyclicHt {
            min_base: 3,
            max_base: 8,
            max_total: 12,
            count,
            seed,
        };
        match self {
            Suite::Goldens => vec![],
            Suite::SmallExhaustive => vec![CorpusSpec::AllConnected { min_n: 2, max_n: 6 }],
            Suite::Svv | Suite::PowerBounds => vec![CorpusSpec::AllConnected { min_n: 2, max_n: 7 }],
            Suite::SymbolicPaths => vec![CorpusSpec::AllConnected { min_n: 2, max_n: 6 }],
            Suite::Engine => vec![CorpusSpec::AllConnected { min_n: 2, max_n: 7 }],
            Suite::BipartiteHt => vec![ht(BaseFamily::Bipartite, TMode::Any, 30, 5)],
            Suite::NuCochord => vec![
                ht(BaseFamily::WeaklyChordalBipartite, TMode::Any, 50, 1),
                CorpusSpec::CameronWalker {
                    min_n: 2,
                    max_n: 12,
                    count: 50,
                    seed: 2,
                },
                ht(BaseFamily::Bipartite, TMode::VertexCover, 50, 3),
            ],
            Suite::Unicyclic => vec![uni(50, 11)],
            Suite::UnicyclicBare => vec![ht(BaseFamily::Unicyclic, TMode::Empty, 20, 13)],
            Suite::Colon => vec![uni(20, 11), ht(BaseFamily::Bipartite, TMode::Any, 20, 3)],
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub caps_hit: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: Suite,
    pub field: Field,
    pub r_max: u32,
    pub lattice_cap: usize,
    pub corpora: Vec<CorpusSpec>,
    pub instances: usize,
    pub summary: Summary,
    pub checks: Vec<TheoremCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Report {
    /// 0 with no failures and no skips, 1 on any failure, 3 when only
    /// skips stand in the way (0 if `skips_ok`).
    pub fn exit_code(&self, skips_ok: bool) -> i32 {
        if self.summary.fail > 0 {
            1
        } else if self.summary.skipped > 0 && !skips_ok {
            3
        } else {
            0
        }
    }

    /// The report without wall-clock fields, byte-stable across runs.
    pub fn canonical(&self) -> Report {
        let mut r = self.clone();
        r.elapsed_ms = None;
        for c in &mut r.checks {
            c.elapsed_ms = None;
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn failures(&self) -> impl Iterator<Item = &TheoremCheck> {
        self.checks.iter().filter(|c| c.verdict.is_fail())
    }
}

fn summarize(checks: &[TheoremCheck]) -> Summary {
    let mut s = Summary {
        total: checks.len(),
        ..Summary::default()
    };
    for c in checks {
        match &c.verdict {
            super::Verdict::Pass => s.pass += 1,
            super::Verdict::Fail { .. } => s.fail += 1,
            super::Verdict::Skipped { reason } => {
                s.skipped += 1;
                if reason.starts_with("cap:") {
                    s.caps_hit += 1;
                }
            }
        }
    }
    s
}

type Job<'a> = Box<dyn Fn() -> Vec<TheoremCheck> + Send + Sync + 'a>;

/// Runs one suite over the given corpora (or the suite's defaults).
/// Instances run in parallel; results keep job order.
pub fn run_suite(suite: Suite, corpora: Option<Vec<CorpusSpec>>, r_max: Option<u32>, hc: &HarnessConfig) -> Result<Report> {
    let started = Instant::now();
    let corpora = corpora.unwrap_or_else(|| suite.default_corpora());
    let r_max = r_max.unwrap_or(suite.default_r_max());
    let mut instances: Vec<Instance> = Vec::new();
    for c in &corpora {
        instances.extend(generate_corpus(c)?);
    }
    let jobs = jobs_for(suite, &instances, r_max, hc);
    let exec = || -> Vec<TheoremCheck> { jobs.par_iter().flat_map_iter(|j| j()).collect() };
    let checks = match threads_from_env() {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Precondition(e.to_string()))?
            .install(exec),
        None => exec(),
    };
    Ok(Report {
        suite,
        field: hc.field,
        r_max,
        lattice_cap: hc.lattice_cap,
        corpora,
        instances: instances.len(),
        summary: summarize(&checks),
        checks,
        elapsed_ms: Some(started.elapsed().as_millis() as u64),
    })
}

fn jobs_for<'a>(suite: Suite, insts: &'a [Instance], r_max: u32, hc: &'a HarnessConfig) -> Vec<Job<'a>> {
    let mut jobs: Vec<Job<'a>> = Vec::new();
    match suite {
        Suite::Goldens => jobs.push(Box::new(move || goldens(hc))),
        Suite::SmallExhaustive => {
            for i in insts {
                let g = &i.graph;
                jobs.push(Box::new(move || {
                    vec![
                        check_power_bounds(g, r_max, hc),
                        check_lower_symbolic(g, r_max, hc),
                        check_svv(g, r_max, hc),
                    ]
                }));
            }
        }
        Suite::Svv => {
            for i in insts {
                jobs.push(Box::new(move || vec![check_svv(&i.graph, r_max, hc)]));
            }
        }
        Suite::PowerBounds => {
            for i in insts {
                let g = &i.graph;
                jobs.push(Box::new(move || vec![check_power_bounds(g, r_max, hc), check_lower_symbolic(g, r_max, hc)]));
            }
        }
        Suite::BipartiteHt => {
            for i in insts {
                let spec = ht_or_bare(i);
                jobs.push(Box::new(move || {
                    vec![check_thm_bipartite_ht(&spec, r_max, hc), check_cor_cochord_ht(&spec, r_max, hc)]
                }));
            }
        }
        Suite::NuCochord => {
            for i in insts {
                jobs.push(Box::new(move || {
                    let mut out: Vec<TheoremCheck> = (1..=3)
                        .filter(|&c| nu_cochord_case_holds(i, c).unwrap_or(false))
                        .map(|c| check_prop_nu_cochord(i, c, hc))
                        .collect();
                    out.push(check_cor_equalities(i, r_max, hc));
                    out
                }));
            }
        }
        Suite::Unicyclic => {
            for i in insts {
                let spec = ht_or_bare(i);
                jobs.push(Box::new(move || {
                    let mut out = vec![check_thm_unicyclic_reg(&spec, hc)];
                    out.extend(check_main_unicyclic(&spec, r_max, hc));
                    out
                }));
            }
        }
        Suite::UnicyclicBare => {
            for i in insts {
                jobs.push(Box::new(move || vec![check_unicyclic_bare(&i.graph, r_max, hc)]));
            }
        }
        Suite::Colon => {
            for i in insts {
                let g = &i.graph;
                for (x, a, b) in colon_instances(g) {
                    jobs.push(Box::new(move || {
                        (1..=r_max).map(|r| check_colon_lemma(g, x, a, b, r, hc)).collect()
                    }));
                }
                // the split bound needs regularities; keep it to smaller graphs
                if let Some((x, _, _)) = colon_instances(g).first().copied().filter(|_| g.n() <= 9) {
                    jobs.push(Box::new(move || vec![check_lemma_tech(g, x, g.closed_neighborhood(x), 2, hc)]));
                }
            }
        }
        Suite::Engine => {
            jobs.push(Box::new(move || vec![check_homology_conventions(hc)]));
            for i in insts {
                let g = &i.graph;
                jobs.push(Box::new(move || {
                    let mut out = vec![check_engine(g, PowerSpec::Plain, hc)];
                    if g.n() <= 5 {
                        out.push(check_engine(g, PowerSpec::Ordinary(2), hc));
                        out.push(check_engine(g, PowerSpec::Symbolic(2), hc));
                    }
                    out
                }));
            }
        }
        Suite::SymbolicPaths => {
            for i in insts {
                let g = &i.graph;
                jobs.push(Box::new(move || (1..=r_max).map(|r| check_symbolic_paths(g, r, hc)).collect()));
            }
        }
    }
    jobs
}

fn ht_or_bare(i: &Instance) -> HtSpec {
    i.ht.clone().unwrap_or_else(|| HtSpec {
        base: i.graph.clone(),
        attachments: Vec::new(),
    })
}

/// Reference values for the four-component cycle union and its pieces.
pub fn goldens(hc: &HarnessConfig) -> Vec<TheoremCheck> {
    let mut hc = hc.clone();
    // C10(K3) at s = 3 has about 2.3 million lcm-lattice elements
    hc.lattice_cap = hc.lattice_cap.max(3_000_000);
    let hc = &hc;
    let c8 = Graph::cycle(8);
    let c10 = Graph::cycle(10);
    let c10k3_spec = HtSpec::new(Graph::cycle(10), vec![(0, vec![3])]).expect("valid spec");
    let c10k3 = crate::constructions::attach_HT(&c10k3_spec).expect("buildable").graph;
    let mut out = Vec::new();

    let golden = |label: &str, g: &Graph, ht: Option<&HtSpec>, f: &dyn Fn(&mut Rec) -> Result<()>| {
        run(Rec::new(TheoremId::Golden, label, g, ht, None), |rec| f(rec))
    };
    let eq = |rec: &mut Rec, what: &str, got: Regularity, want: i64| {
        rec.ev(what, got);
        rec.relation(format!("{what} = {want}"), None, got, want, got == Regularity::Value(want));
    };

    out.push(golden("reg(S/I(C8))", &c8, None, &|rec| {
        eq(rec, "reg", RegCache::new(&c8, hc).get(PowerSpec::Plain)?, 3);
        Ok(())
    }));
    out.push(golden("reg(S/I(C10))", &c10, None, &|rec| {
        eq(rec, "reg", RegCache::new(&c10, hc).get(PowerSpec::Plain)?, 3);
        Ok(())
    }));
    out.push(golden("C10(K3) invariants", &c10k3, Some(&c10k3_spec), &|rec| {
        let nu = induced_matching_number(&c10k3).0;
        let cc = cochordal_cover_number(&c10k3, hc.cochord_budget);
        rec.ev("nu", nu);
        rec.ev("cochord", cc.exact());
        rec.relation("nu = 4", None, nu, 4, nu == 4);
        rec.relation("cochord = 4", None, cc.exact(), 4, cc.exact() == Some(4));
        let mut regs = RegCache::new(&c10k3, hc);
        eq(rec, "reg", regs.get(PowerSpec::Plain)?, 4);
        eq(rec, "reg_symbolic_2", regs.get(PowerSpec::Symbolic(2))?, 6);
        Ok(())
    }));
    let comps = [c8.clone(), c8.clone(), c10.clone(), c10k3.clone()];
    let union = Graph::empty(0);
    let mut total = Ok(Regularity::Value(0));
    out.push(run(Rec::new(TheoremId::Golden, "componentwise reg of the union", &union, None, None).with_components(&comps), |rec| {
        let mut t = Regularity::Value(0);
        for g in &comps {
            t = t + RegCache::new(g, hc).get(PowerSpec::Plain)?;
        }
        total = Ok(t);
        eq(rec, "reg", t, 13);
        Ok(())
    }));
    let profile = symbolic_profile(&comps, 3, &hc.engine());
    out.push(run(Rec::new(TheoremId::Golden, "symbolic reg of the union", &union, None, Some(3)).with_components(&comps), |rec| {
        let profile = profile.as_ref().map_err(clone_err)?;
        rec.ev("profile", profile);
        for (r, want) in [(2u32, 13i64), (3, 15)] {
            let got = profile[r as usize - 1];
            rec.relation(format!("reg(S/I^({r})) = 2r+9 = {want}"), Some(r), got, want, got == Regularity::Value(want));
        }
        Ok(())
    }));
    // the bipartite-base bound on the union, through the fold
    out.push(run(Rec::new(TheoremId::ThmBipartiteHt, "union via fold", &union, None, Some(3)).with_components(&comps), |rec| {
        let profile = profile.as_ref().map_err(clone_err)?;
        let reg = total.as_ref().map_err(clone_err)?.value().unwrap_or(0);
        rec.ev("reg", reg);
        rec.ev("profile", profile);
        let mut strict = Vec::new();
        for (r, &v) in (1u32..).zip(profile) {
            let bound = Regularity::Value(2 * r as i64 + reg - 2);
            if v < bound {
                strict.push(r);
            }
            rec.relation("reg(S/I^(r)) <= 2r+reg(S/I)-2", Some(r), v, bound, v <= bound);
        }
        rec.ev("strict_at", strict);
        Ok(())
    }));
    let fig = HtSpec::new(
        Graph::cycle(5),
        vec![(0, vec![2]), (2, vec![3, 5]), (3, vec![2, 2, 2]), (4, vec![2, 4])],
    )
    .expect("valid spec");
    out.push(golden("kappa figure", &fig.base, Some(&fig), &|rec| {
        let sizes: Vec<usize> = fig.attachments.iter().map(|a| a.cliques.vertex_count()).collect();
        rec.ev("attachment_sizes", &sizes);
        rec.relation("kappa = 12", None, fig.kappa(), 12, fig.kappa() == 12);
        rec.relation("|V(K(x3))| = 7", None, sizes[1], 7, sizes[1] == 7);
        rec.relation("|V(K(x5))| = 5", None, sizes[3], 5, sizes[3] == 5);
        Ok(())
    }));
    out.push(check_thm_bipartite_ht(&c10k3_spec, 2, hc));
    for g in [&c8, &c10] {
        let bare = HtSpec {
            base: g.clone(),
            attachments: Vec::new(),
        };
        out.push(check_thm_bipartite_ht(&bare, 2, hc));
    }
    out
}
