use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use serde::Serialize;

use super::{skip_reason, Counterexample, HarnessConfig, Instance, TheoremCheck, TheoremId, Verdict};
use crate::algebra::{symbolic_membership, symbolic_power_by_intersection, symbolic_power_edge, Monomial, MonomialIdeal, MAX_POWER_VARS};
use crate::constructions::{construct_cochordal_cover_HT, decompose_unicyclic_ht, HtSpec};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::invariants::{
    cochordal_cover_number, induced_matching_number, is_bipartite, is_cameron_walker, is_vertex_cover,
    is_weakly_chordal, Bipartiteness,
};
use crate::resolution::{
    betti_table, fold_symbolic, regularity_quotient, EngineConfig, Field, PowerSpec, Regularity, SimplicialComplex,
};

/// Accumulates evidence and the first violated relation of one check.
pub(crate) struct Rec {
    check: TheoremCheck,
    started: Instant,
}

impl Rec {
    pub(crate) fn new(theorem: TheoremId, label: impl Into<String>, graph: &Graph, ht: Option<&HtSpec>, r_max: Option<u32>) -> Self {
        Rec {
            check: TheoremCheck {
                theorem,
                label: label.into(),
                graph: graph.clone(),
                ht: ht.cloned(),
                components: Vec::new(),
                r_max,
                verdict: Verdict::Pass,
                evidence: BTreeMap::new(),
                elapsed_ms: None,
            },
            started: Instant::now(),
        }
    }

    pub(crate) fn ev(&mut self, key: impl Into<String>, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("evidence serializes");
        self.check.evidence.insert(key.into(), v);
    }

    /// Records `lhs <relation> rhs`; the first false one becomes the verdict.
    pub(crate) fn relation(&mut self, relation: impl Into<String>, r: Option<u32>, lhs: impl Serialize, rhs: impl Serialize, holds: bool) {
        if holds || self.check.verdict.is_fail() {
            return;
        }
        self.check.verdict = Verdict::Fail {
            counterexample: Box::new(Counterexample {
                graph: self.check.graph.clone(),
                ht: self.check.ht.clone(),
                components: self.check.components.clone(),
                r,
                relation: relation.into(),
                lhs: serde_json::to_value(lhs).expect("serializes"),
                rhs: serde_json::to_value(rhs).expect("serializes"),
            }),
        };
    }

    pub(crate) fn with_components(mut self, comps: &[Graph]) -> Self {
        self.check.components = comps.to_vec();
        self
    }

    pub(crate) fn skip(&mut self, reason: impl Into<String>) {
        if !self.check.verdict.is_fail() {
            self.check.verdict = Verdict::Skipped { reason: reason.into() };
        }
    }

    pub(crate) fn finish(mut self) -> TheoremCheck {
        self.check.elapsed_ms = Some(self.started.elapsed().as_millis() as u64);
        self.check
    }

    /// Folds an engine error into the verdict.
    pub(crate) fn absorb(&mut self, e: Error) {
        match skip_reason(&e) {
            Some(reason) => self.skip(reason),
            None => self.relation("computation completes", None, e.to_string(), "ok", false),
        }
    }
}

/// Runs `body`, turning errors into skips or failures.
pub(crate) fn run(mut rec: Rec, body: impl FnOnce(&mut Rec) -> Result<()>) -> TheoremCheck {
    if let Err(e) = body(&mut rec) {
        rec.absorb(e);
    }
    rec.finish()
}

/// Memoized `reg(S/·)` for the ideals attached to one graph.
pub struct RegCache<'a> {
    g: &'a Graph,
    cfg: EngineConfig,
    memo: HashMap<PowerSpec, Regularity>,
}

impl<'a> RegCache<'a> {
    pub fn new(g: &'a Graph, hc: &HarnessConfig) -> Self {
        RegCache {
            g,
            cfg: hc.engine(),
            memo: HashMap::new(),
        }
    }

    pub fn get(&mut self, spec: PowerSpec) -> Result<Regularity> {
        if let Some(&r) = self.memo.get(&spec) {
            return Ok(r);
        }
        let r = regularity_quotient(&spec.ideal(self.g)?, &self.cfg)?;
        self.memo.insert(spec, r);
        Ok(r)
    }

    pub fn plain(&mut self) -> Result<i64> {
        self.get(PowerSpec::Plain)?
            .value()
            .ok_or_else(|| Error::InternalValidation("edge ideal has -inf regularity".into()))
    }
}

fn linear(r: u32, c: i64) -> i64 {
    2 * r as i64 + c - 2
}

fn lin(r: u32, c: i64) -> Regularity {
    Regularity::Value(linear(r, c))
}

fn need_edges(rec: &mut Rec, g: &Graph) -> bool {
    if g.edge_count() == 0 {
        rec.skip("precondition: graph has no edges");
        return false;
    }
    true
}

fn ht_label(spec: &HtSpec) -> String {
    let parts: Vec<String> = spec
        .attachments
        .iter()
        .map(|a| format!("{}:{:?}", a.vertex, a.cliques.clique_sizes))
        .collect();
    format!("H(n={}, m={})[{}]", spec.base.n(), spec.base.edge_count(), parts.join(" "))
}

/// Exact cochord, or the search bounds when the budget ran out.
fn cochord_bounds(g: &Graph, hc: &HarnessConfig, rec: &mut Rec) -> (usize, usize) {
    let res = cochordal_cover_number(g, hc.cochord_budget);
    rec.ev("cochord_lower", res.lower);
    rec.ev("cochord_upper", res.upper);
    rec.ev("cochord_exact", res.exact().is_some());
    (res.lower, res.upper)
}

/// `2r + ν − 2 ≤ reg(S/I^r) ≤ 2r + cochord − 2` for `r ≤ r_max`. With an
/// inexact cochord the upper side is verified only when it holds with the
/// search's lower bound, and skipped otherwise.
pub fn check_power_bounds(g: &Graph, r_max: u32, hc: &HarnessConfig) -> TheoremCheck {
    let rec = Rec::new(TheoremId::PowerBounds, format!("{g:?}"), g, None, Some(r_max));
    run(rec, |rec| {
        if !need_edges(rec, g) {
            return Ok(());
        }
        let nu = induced_matching_number(g).0 as i64;
        rec.ev("nu", nu);
        let (lo, hi) = cochord_bounds(g, hc, rec);
        let mut regs = RegCache::new(g, hc);
        let mut undecided = false;
        for r in 1..=r_max {
            let reg = regs.get(PowerSpec::Ordinary(r))?;
            rec.ev(format!("reg_power_{r}"), reg);
            rec.relation("2r+nu-2 <= reg(S/I^r)", Some(r), lin(r, nu), reg, lin(r, nu) <= reg);
            if reg <= lin(r, lo as i64) {
                continue;
            }
            if lo == hi {
                rec.relation("reg(S/I^r) <= 2r+cochord-2", Some(r), reg, lin(r, hi as i64), false);
            } else {
                undecided = true;
            }
        }
        if undecided {
            rec.skip("cap: cochord search budget exhausted");
        }
        Ok(())
    })
}

/// `2r + ν − 2 ≤ reg(S/I^(r))`.
pub fn check_lower_symbolic(g: &Graph, r_max: u32, hc: &HarnessConfig) -> TheoremCheck {
    let rec = Rec::new(TheoremId::LowerSymbolic, format!("{g:?}"), g, None, Some(r_max));
    run(rec, |rec| {
        if !need_edges(rec, g) {
            return Ok(());
        }
        let nu = induced_matching_number(g).0 as i64;
        rec.ev("nu", nu);
        let mut regs = RegCache::new(g, hc);
        for r in 1..=r_max {
            let reg = regs.get(PowerSpec::Symbolic(r))?;
            rec.ev(format!("reg_symbolic_{r}"), reg);
            rec.relation("2r+nu-2 <= reg(S/I^(r))", Some(r), lin(r, nu), reg, lin(r, nu) <= reg);
        }
        Ok(())
    })
}

fn base_is_bipartite(rec: &mut Rec, spec: &HtSpec) -> bool {
    if !is_bipartite(&spec.base).is_bipartite() {
        rec.skip("precondition: base graph is not bipartite");
        return false;
    }
    true
}

/// `reg(S/I(G)^(r)) ≤ 2r + reg(S/I(G)) − 2` for `G = H_T`, `H` bipartite.
/// With `T = ∅` the same bound is also checked for ordinary powers.
pub fn check_thm_bipartite_ht(spec: &HtSpec, r_max: u32, hc: &HarnessConfig) -> TheoremCheck {
    let g = match crate::constructions::attach_HT(spec) {
        Ok(b) => b.graph,
        Err(e) => return skipped_build(TheoremId::ThmBipartiteHt, spec, e),
    };
    let rec = Rec::new(TheoremId::ThmBipartiteHt, ht_label(spec), &g, Some(spec), Some(r_max));
    run(rec, |rec| {
        if !need_edges(rec, &g) || !base_is_bipartite(rec, spec) {
            return Ok(());
        }
        let mut regs = RegCache::new(&g, hc);
        let reg1 = regs.plain()?;
        rec.ev("reg", reg1);
        rec.ev("kappa", spec.kappa());
        for r in 1..=r_max {
            let sym = regs.get(PowerSpec::Symbolic(r))?;
            rec.ev(format!("reg_symbolic_{r}"), sym);
            rec.relation("reg(S/I^(r)) <= 2r+reg(S/I)-2", Some(r), sym, lin(r, reg1), sym <= lin(r, reg1));
            if spec.attachments.is_empty() {
                let ord = regs.get(PowerSpec::Ordinary(r))?;
                rec.ev(format!("reg_power_{r}"), ord);
                rec.relation("reg(S/I^r) <= 2r+reg(S/I)-2", Some(r), ord, lin(r, reg1), ord <= lin(r, reg1));
            }
        }
        Ok(())
    })
}

/// `reg(S/I(G)^(r)) ≤ 2r + cochord(G) − 2` under the same hypotheses.
pub fn check_cor_cochord_ht(spec: &HtSpec, r_max: u32, hc: &HarnessConfig) -> TheoremCheck {
    let g = match crate::constructions::attach_HT(spec) {
        Ok(b) => b.graph,
        Err(e) => return skipped_build(TheoremId::CorCochordHt, spec, e),
    };
    let rec = Rec::new(TheoremId::CorCochordHt, ht_label(spec), &g, Some(spec), Some(r_max));
    run(rec, |rec| {
        if !need_edges(rec, &g) || !base_is_bipartite(rec, spec) {
            return Ok(());
        }
        let (lo, hi) = cochord_bounds(&g, hc, rec);
        let mut regs = RegCache::new(&g, hc);
        let mut undecided = false;
        for r in 1..=r_max {
            let sym = regs.get(PowerSpec::Symbolic(r))?;
            rec.ev(format!("reg_symbolic_{r}"), sym);
            if sym <= lin(r, lo as i64) {
                continue;
            }
            if lo == hi {
                rec.relation("reg(S/I^(r)) <= 2r+cochord-2", Some(r), sym, lin(r, hi as i64), false);
            } else {
                undecided = true;
            }
        }
        if undecided {
            rec.skip("cap: cochord search budget exhausted");
        }
        Ok(())
    })
}

fn skipped_build(id: TheoremId, spec: &HtSpec, e: Error) -> TheoremCheck {
    let mut rec = Rec::new(id, "unbuildable spec", &spec.base, Some(spec), None);
    rec.absorb(e);
    rec.finish()
}

/// Which hypothesis of the `ν = cochord` statement an instance satisfies.
pub fn nu_cochord_case_holds(inst: &Instance, case: u8) -> Result<bool> {
    Ok(match (case, &inst.ht) {
        (1, Some(ht)) => is_bipartite(&ht.base).is_bipartite() && is_weakly_chordal(&ht.base)?,
        (1, None) => is_bipartite(&inst.graph).is_bipartite() && is_weakly_chordal(&inst.graph)?,
        (2, _) => is_cameron_walker(&inst.graph),
        (3, Some(ht)) => is_bipartite(&ht.base).is_bipartite() && is_vertex_cover(&ht.base, ht.t()),
        // T = ∅ covers only an edgeless base
        (3, None) => false,
        _ => false,
    })
}

/// `ν(G) = cochord(G)` under case 1, 2 or 3; case 3 also checks the
/// explicit cover.
pub fn check_prop_nu_cochord(inst: &Instance, case: u8, hc: &HarnessConfig) -> TheoremCheck {
    let g = &inst.graph;
    let rec = Rec::new(TheoremId::PropNuCochord(case), inst.label.clone(), g, inst.ht.as_ref(), None);
    run(rec, |rec| {
        if !need_edges(rec, g) {
            return Ok(());
        }
        if !(1..=3).contains(&case) {
            return Err(Error::Precondition(format!("unknown case {case}")));
        }
        if !nu_cochord_case_holds(inst, case)? {
            rec.skip(format!("precondition: instance is outside case {case}"));
            return Ok(());
        }
        let nu = induced_matching_number(g).0;
        rec.ev("nu", nu);
        let (lo, hi) = cochord_bounds(g, hc, rec);
        rec.relation("nu <= cochord lower bound", None, nu, lo, nu <= lo);
        if lo != hi && hi != nu {
            rec.skip("cap: cochord search budget exhausted");
        } else {
            rec.relation("nu = cochord", None, nu, hi, nu == hi);
        }
        if case == 3 {
            let spec = inst.ht.clone().unwrap_or_else(|| HtSpec {
                base: g.clone(),
                attachments: Vec::new(),
            });
            let (cover, branch) = construct_cochordal_cover_HT(&spec)?;
            rec.ev("construction_branch", branch);
            rec.ev("construction_size", cover.len());
            let valid = cover.validate(g);
            rec.relation("constructed cover validates", None, format!("{valid:?}"), "Ok(())", valid.is_ok());
            rec.relation("constructed cover size = nu", None, cover.len(), nu, cover.len() == nu);
        }
        Ok(())
    })
}

/// `reg(S/I^(r)) = reg(S/I^r) = 2r + ν − 2` on the classes where `ν = cochord`.
pub fn check_cor_equalities(inst: &Instance, r_max: u32, hc: &HarnessConfig) -> TheoremCheck {
    let g = &inst.graph;
    let rec = Rec::new(TheoremId::CorCamwal, inst.label.clone(), g, inst.ht.as_ref(), Some(r_max));
    run(rec, |rec| {
        if !need_edges(rec, g) {
            return Ok(());
        }
        let mut cases = Vec::new();
        for c in 1..=3u8 {
            if nu_cochord_case_holds(inst, c)? {
                cases.push(c);
            }
        }
        rec.ev("cases", &cases);
        if cases.is_empty() {
            rec.skip("precondition: instance is in none of the three classes");
            return Ok(());
        }
        let nu = induced_matching_number(g).0 as i64;
        rec.ev("nu", nu);
        let mut regs = RegCache::new(g, hc);
        for r in 1..=r_max {
            let ord = regs.get(PowerSpec::Ordinary(r))?;
            let sym = regs.get(PowerSpec::Symbolic(r))?;
            rec.ev(format!("reg_power_{r}"), ord);
            rec.ev(format!("reg_symbolic_{r}"), sym);
            rec.relation("reg(S/I^(r)) = reg(S/I^r)", Some(r), sym, ord, sym == ord);
            rec.relation("reg(S/I^r) = 2r+nu-2", Some(r), ord, lin(r, nu), ord == lin(r, nu));
        }
        Ok(())
    })
}

/// `ν ≤ reg ≤ ν + 1`, with equality when the cycle length is `0, 1 mod 3`
/// or when `ν(G ∖ Γ) < ν`.
pub fn check_thm_unicyclic_reg(spec: &HtSpec, hc: &HarnessConfig) -> TheoremCheck {
    let g = match crate::constructions::attach_HT(spec) {
        Ok(b) => b.graph,
        Err(e) => return skipped_build(TheoremId::ThmUnicyclicReg, spec, e),
    };
    let rec = Rec::new(TheoremId::ThmUnicyclicReg, ht_label(spec), &g, Some(spec), None);
    run(rec, |rec| {
        let d = decompose_unicyclic_ht(spec)?;
        let valid = d.validate(&g);
        rec.relation("decomposition validates", None, format!("{valid:?}"), "Ok(())", valid.is_ok());
        let n = d.cycle.len();
        let nu = induced_matching_number(&g).0 as i64;
        let (rest, _) = g.delete_vertices(d.gamma)?;
        let nu_rest = induced_matching_number(&rest).0 as i64;
        let reg = RegCache::new(&g, hc).plain()?;
        rec.ev("cycle_length", n);
        rec.ev("gamma", d.gamma);
        rec.ev("nu", nu);
        rec.ev("nu_minus_gamma", nu_rest);
        rec.ev("reg", reg);
        rec.relation("nu <= reg", None, nu, reg, nu <= reg);
        rec.relation("reg <= nu+1", None, reg, nu + 1, reg <= nu + 1);
        let case = if n % 3 != 2 {
            Some(1)
        } else if nu_rest < nu {
            Some(2)
        } else {
            None
        };
        rec.ev("equality_case", case);
        if case.is_some() {
            rec.relation("reg = nu", None, reg, nu, reg == nu);
        }
        Ok(())
    })
}

fn base_unicyclic(spec: &HtSpec) -> bool {
    spec.base.is_connected() && spec.base.edge_count() == spec.base.n()
}

/// The two upper bounds for unicyclic `H_T` and, for `T ≠ ∅`, the equality
/// `reg(S/I^(r)) = reg(S/I^r) = 2r + reg(S/I) − 2`. Returns the ordinary
/// bound, the symbolic bound and the equality, in that order.
pub fn check_main_unicyclic(spec: &HtSpec, r_max: u32, hc: &HarnessConfig) -> Vec<TheoremCheck> {
    let ids = [TheoremId::PropOrdUni, TheoremId::PropSymUni, TheoremId::ThmMainUni];
    let g = match crate::constructions::attach_HT(spec) {
        Ok(b) => b.graph,
        Err(e) => return ids.map(|id| skipped_build(id, spec, clone_err(&e))).to_vec(),
    };
    let label = ht_label(spec);
    let mut recs = ids.map(|id| Rec::new(id, label.clone(), &g, Some(spec), Some(r_max)));
    if !base_unicyclic(spec) {
        for rec in &mut recs {
            rec.skip("precondition: base is not connected unicyclic");
        }
        return recs.map(Rec::finish).to_vec();
    }
    if spec.attachments.is_empty() {
        recs[2].skip("precondition: T is empty");
    }
    let mut regs = RegCache::new(&g, hc);
    let reg1 = match regs.plain() {
        Ok(v) => v,
        Err(e) => {
            for rec in &mut recs {
                rec.absorb(clone_err(&e));
            }
            return recs.map(Rec::finish).to_vec();
        }
    };
    for rec in &mut recs {
        rec.ev("reg", reg1);
    }
    let [ord_rec, sym_rec, main_rec] = &mut recs;
    for r in 1..=r_max {
        let bound = lin(r, reg1);
        let ord = regs.get(PowerSpec::Ordinary(r));
        let sym = regs.get(PowerSpec::Symbolic(r));
        match &ord {
            Ok(v) => {
                ord_rec.ev(format!("reg_power_{r}"), v);
                ord_rec.relation("reg(S/I^r) <= 2r+reg(S/I)-2", Some(r), v, bound, *v <= bound);
            }
            Err(e) => ord_rec.absorb(clone_err(e)),
        }
        match &sym {
            Ok(v) => {
                sym_rec.ev(format!("reg_symbolic_{r}"), v);
                sym_rec.relation("reg(S/I^(r)) <= 2r+reg(S/I)-2", Some(r), v, bound, *v <= bound);
            }
            Err(e) => sym_rec.absorb(clone_err(e)),
        }
        if spec.attachments.is_empty() {
            continue;
        }
        match (&ord, &sym) {
            (Ok(o), Ok(s)) => {
                main_rec.ev(format!("reg_power_{r}"), o);
                main_rec.ev(format!("reg_symbolic_{r}"), s);
                main_rec.relation("reg(S/I^(r)) = reg(S/I^r)", Some(r), s, o, s == o);
                main_rec.relation("reg(S/I^r) = 2r+reg(S/I)-2", Some(r), o, bound, *o == bound);
            }
            (Err(e), _) | (_, Err(e)) => main_rec.absorb(clone_err(e)),
        }
    }
    recs.map(Rec::finish).to_vec()
}

/// Unicyclic graph without attachments: `reg(S/I^(r)) = reg(S/I^r) = 2r + reg(S/I) − 2`.
pub fn check_unicyclic_bare(g: &Graph, r_max: u32, hc: &HarnessConfig) -> TheoremCheck {
    let rec = Rec::new(TheoremId::UnicyclicBare, format!("{g:?}"), g, None, Some(r_max));
    run(rec, |rec| {
        if !g.is_connected() || g.edge_count() != g.n() {
            rec.skip("precondition: graph is not connected unicyclic");
            return Ok(());
        }
        let mut regs = RegCache::new(g, hc);
        let reg1 = regs.plain()?;
        rec.ev("reg", reg1);
        for r in 1..=r_max {
            let ord = regs.get(PowerSpec::Ordinary(r))?;
            let sym = regs.get(PowerSpec::Symbolic(r))?;
            rec.ev(format!("reg_power_{r}"), ord);
            rec.ev(format!("reg_symbolic_{r}"), sym);
            rec.relation("reg(S/I^(r)) = reg(S/I^r)", Some(r), sym, ord, sym == ord);
            rec.relation("reg(S/I^r) = 2r+reg(S/I)-2", Some(r), ord, lin(r, reg1), ord == lin(r, reg1));
        }
        Ok(())
    })
}

/// Bipartite graphs have `I^r = I^(r)` for `r ≤ r_max`. A non-bipartite
/// graph must show a monomial in `I^(r) ∖ I^r` for some `r`; the product
/// over an odd cycle `C_{2k+1}` lies in `I^(k+1) ∖ I^{k+1}` and is checked by
/// membership even when `k + 1 > r_max`.
pub fn check_svv(g: &Graph, r_max: u32, _hc: &HarnessConfig) -> TheoremCheck {
    let rec = Rec::new(TheoremId::SvvBipartite, format!("{g:?}"), g, None, Some(r_max));
    run(rec, |rec| {
        if !need_edges(rec, g) {
            return Ok(());
        }
        let i = MonomialIdeal::edge_ideal(g);
        let bip = is_bipartite(g);
        rec.ev("bipartite", bip.is_bipartite());
        let mut first_unequal = None;
        for r in 1..=r_max {
            let ord = i.power(r)?;
            let sym = symbolic_power_edge(g, r)?;
            rec.ev(format!("equal_{r}"), ord == sym);
            if bip.is_bipartite() {
                rec.relation("I^r = I^(r)", Some(r), ord.len(), sym.len(), ord == sym);
            } else if first_unequal.is_none() && ord != sym {
                let w = *sym
                    .gens()
                    .iter()
                    .find(|m| !ord.contains(m))
                    .ok_or_else(|| Error::InternalValidation("unequal ideals without a witness".into()))?;
                let sym_ok = symbolic_membership(g, &w, r)?;
                rec.relation("witness in I^(r)", Some(r), w, "member", sym_ok);
                first_unequal = Some(r);
                rec.ev("first_unequal_r", r);
                rec.ev("witness", w);
            }
        }
        if let Bipartiteness::NotBipartite { odd_cycle } = bip {
            let k = (odd_cycle.len() / 2) as u32;
            let w = Monomial::squarefree(g.n(), odd_cycle.iter().copied().collect());
            let sym_ok = symbolic_membership(g, &w, k + 1)?;
            // deg x_C = 2k+1 < 2(k+1), so it is never in I^{k+1}
            let ord_ok = w.degree() < 2 * (k + 1);
            rec.ev("odd_cycle", &odd_cycle);
            rec.ev("cycle_witness", w);
            rec.ev("cycle_witness_r", k + 1);
            rec.relation("odd-cycle product in I^(k+1)", Some(k + 1), w, "member", sym_ok);
            rec.relation("odd-cycle product not in I^{k+1}", Some(k + 1), w, "non-member", ord_ok);
            if k < r_max {
                rec.relation("I^{k+1} != I^(k+1)", Some(k + 1), first_unequal, k + 1, first_unequal.is_some());
            }
        }
        Ok(())
    })
}

/// `G ∖ A` on the same vertex labels: edges meeting `A` are dropped.
pub fn remove_vertices_keep_labels(g: &Graph, a: VertexSet) -> Graph {
    Graph::new(
        g.n(),
        g.edges().iter().copied().filter(|&(u, v)| !a.contains(u) && !a.contains(v)),
    )
    .expect("subgraph of a valid graph")
}

/// Every `(x, A, B)` with `x` simplicial of positive degree, `x ∈ B`, and
/// `A ⊔ B = N_G[x]`.
pub fn colon_instances(g: &Graph) -> Vec<(usize, VertexSet, VertexSet)> {
    let mut out = Vec::new();
    for x in 0..g.n() {
        if g.degree(x) == 0 || !g.is_simplicial(x).unwrap_or(false) {
            continue;
        }
        let nb = g.adj(x);
        let others = nb.to_vec();
        for mask in 0u32..1 << others.len() {
            let a: VertexSet = others.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
            let b = nb.difference(a).with(x);
            out.push((x, a, b));
        }
    }
    out
}

/// `(I(G∖A)^(r) : x_B) = I(G∖A)^(r−|B|+1)`, or the unit ideal once
/// `|B| ≥ r + 1`, for `x` simplicial in `G ∖ A` with closed neighbourhood `B`.
pub fn check_colon_lemma(g: &Graph, x: usize, a: VertexSet, b: VertexSet, r: u32, _hc: &HarnessConfig) -> TheoremCheck {
    let label = format!("x={x} A={:?} B={:?} r={r}", a.to_vec(), b.to_vec());
    let rec = Rec::new(TheoremId::ColonLemma, label, g, None, Some(r));
    run(rec, |rec| {
        let h = remove_vertices_keep_labels(g, a);
        let pre = b.contains(x)
            && a.intersection(b).is_empty()
            && h.is_simplicial(x)?
            && h.closed_neighborhood(x) == b;
        if !pre {
            rec.skip("precondition: x is not simplicial in G-A with N[x] = B");
            return Ok(());
        }
        if h.n() > MAX_POWER_VARS {
            return Err(Error::CapExceeded {
                what: "variables for powers",
                value: h.n(),
                limit: MAX_POWER_VARS,
            });
        }
        rec.ev("A", a);
        rec.ev("B", b);
        let colon = symbolic_power_edge(&h, r)?.colon(&Monomial::squarefree(h.n(), b))?;
        let k = b.len() as u32;
        let expected = if k > r {
            MonomialIdeal::unit(h.n())
        } else {
            symbolic_power_edge(&h, r - k + 1)?
        };
        rec.ev("colon", &colon);
        rec.relation("(I(G-A)^(r) : x_B) = I(G-A)^(r-|B|+1)", Some(r), &colon, &expected, colon == expected);
        Ok(())
    })
}

/// The colon-splitting upper bound: for `x` simplicial and
/// `x ∈ W ⊆ N_G[x]`, `reg(S/I^(r))` is at most the maximum of
/// `reg(S/I(G∖x)^(r))` and `reg(S/(I(G∖A)^(r) : x_B)) + |B|` over
/// `A ⊔ B = W`, `x ∈ B`.
pub fn check_lemma_tech(g: &Graph, x: usize, w: VertexSet, r: u32, hc: &HarnessConfig) -> TheoremCheck {
    let label = format!("x={x} W={:?} r={r}", w.to_vec());
    let rec = Rec::new(TheoremId::LemmaTech, label, g, None, Some(r));
    run(rec, |rec| {
        let pre = r >= 2 && w.contains(x) && w.is_subset(g.closed_neighborhood(x)) && g.is_simplicial(x)?;
        if !pre {
            rec.skip("precondition: need r >= 2, x simplicial, x in W within N[x]");
            return Ok(());
        }
        let cfg = hc.engine();
        let lhs = regularity_quotient(&symbolic_power_edge(g, r)?, &cfg)?;
        let del = remove_vertices_keep_labels(g, VertexSet::singleton(x));
        let mut rhs = regularity_quotient(&symbolic_power_edge(&del, r)?, &cfg)?;
        let mut terms = vec![rhs];
        let rest = w.without(x).to_vec();
        for mask in 0u32..1 << rest.len() {
            let a: VertexSet = rest.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
            let b = w.difference(a);
            let h = remove_vertices_keep_labels(g, a);
            let colon = symbolic_power_edge(&h, r)?.colon(&Monomial::squarefree(g.n(), b))?;
            let t = regularity_quotient(&colon, &cfg)?.plus(b.len() as i64);
            terms.push(t);
            rhs = rhs.max(t);
        }
        rec.ev("lhs", lhs);
        rec.ev("terms", &terms);
        rec.relation("reg(S/I^(r)) <= max of split terms", Some(r), lhs, rhs, lhs <= rhs);
        Ok(())
    })
}

/// Componentwise bound for disjoint unions: with `ρ_i` the least constant
/// such that `reg(S/I(G_i)^(s)) ≤ 2s + ρ_i − 2` for `s ≤ r_max`, the union
/// obeys `2s + ρ_1 + ρ_2 − 2`. The union is computed directly when small
/// enough, and the direct values are compared with the fold.
pub fn check_prop_regsum(g1: &Graph, g2: &Graph, r_max: u32, hc: &HarnessConfig) -> TheoremCheck {
    let joined = g1.disjoint_union(g2);
    let shown = joined.as_ref().unwrap_or(g1);
    let rec = Rec::new(TheoremId::PropRegsum, format!("{g1:?} + {g2:?}"), shown, None, Some(r_max));
    run(rec, |rec| {
        let joined = joined?;
        if g1.edge_count() == 0 || g2.edge_count() == 0 {
            rec.skip("precondition: both parts need edges");
            return Ok(());
        }
        let cfg = hc.engine();
        let profile = |g: &Graph| -> Result<Vec<Regularity>> {
            (1..=r_max)
                .map(|s| regularity_quotient(&symbolic_power_edge(g, s)?, &cfg))
                .collect()
        };
        let rho = |f: &[Regularity]| -> i64 {
            f.iter()
                .enumerate()
                .filter_map(|(i, v)| v.value().map(|v| v - 2 * (i as i64 + 1) + 2))
                .max()
                .unwrap_or(0)
        };
        let (f1, f2) = (profile(g1)?, profile(g2)?);
        let (rho1, rho2) = (rho(&f1), rho(&f2));
        let folded = fold_symbolic(&f1, &f2);
        rec.ev("profile_1", &f1);
        rec.ev("profile_2", &f2);
        rec.ev("rho", [rho1, rho2]);
        rec.ev("folded", &folded);
        let union: Vec<Regularity> = if joined.n() <= MAX_POWER_VARS {
            let direct = profile(&joined)?;
            rec.ev("direct", &direct);
            for (s, (d, f)) in (1..).zip(direct.iter().zip(&folded)) {
                rec.relation("direct = fold", Some(s), d, f, d == f);
            }
            direct
        } else {
            rec.ev("method", "fold");
            folded
        };
        for (s, v) in (1..).zip(&union) {
            let bound = lin(s, rho1 + rho2);
            rec.relation("reg(S/I^(s)) <= 2s+rho1+rho2-2", Some(s), v, bound, *v <= bound);
        }
        Ok(())
    })
}

/// `reg(S/I) ≤ max{reg(S/(I : f)) + deg f, reg(S/(I, f))}` for a monomial `f`.
pub fn check_rmk_colon_bound(g: &Graph, spec: PowerSpec, f: &Monomial, hc: &HarnessConfig) -> TheoremCheck {
    let rec = Rec::new(TheoremId::RmkColonBound, format!("{spec:?} f={f}"), g, None, None);
    run(rec, |rec| {
        if f.degree() == 0 {
            rec.skip("precondition: f must have positive degree");
            return Ok(());
        }
        let cfg = hc.engine();
        let i = spec.ideal(g)?;
        let lhs = regularity_quotient(&i, &cfg)?;
        let by_colon = regularity_quotient(&i.colon(f)?, &cfg)?.plus(f.degree() as i64);
        let by_sum = regularity_quotient(&i.add_generator(*f)?, &cfg)?;
        rec.ev("f", f);
        rec.ev("reg", lhs);
        rec.ev("colon_term", by_colon);
        rec.ev("sum_term", by_sum);
        let rhs = by_colon.max(by_sum);
        rec.relation("reg(S/I) <= max(reg(S/(I:f))+d, reg(S/(I,f)))", None, lhs, rhs, lhs <= rhs);
        Ok(())
    })
}

/// Box search and iterated intersection give the same `I^(r)`, and every
/// generator passes the cover-weight membership test.
pub fn check_symbolic_paths(g: &Graph, r: u32, _hc: &HarnessConfig) -> TheoremCheck {
    let rec = Rec::new(TheoremId::SymbolicPaths, format!("{g:?}"), g, None, Some(r));
    run(rec, |rec| {
        if !need_edges(rec, g) {
            return Ok(());
        }
        let boxed = symbolic_power_edge(g, r)?;
        let inter = symbolic_power_by_intersection(g, r)?;
        rec.ev("generators", boxed.len());
        rec.relation("box = intersection", Some(r), &boxed, &inter, boxed == inter);
        for m in boxed.gens() {
            rec.relation("generator passes membership", Some(r), m, "member", symbolic_membership(g, m, r)?);
        }
        Ok(())
    })
}

/// Betti table self-check plus agreement of `reg(S/I)` over `GF(32003)`
/// and the rationals.
pub fn check_engine(g: &Graph, spec: PowerSpec, hc: &HarnessConfig) -> TheoremCheck {
    let rec = Rec::new(TheoremId::Engine, format!("{spec:?}"), g, None, None);
    run(rec, |rec| {
        if !need_edges(rec, g) {
            return Ok(());
        }
        let i = spec.ideal(g)?;
        let cfg = hc.engine();
        // betti_table itself rejects a wrong zeroth row
        let table = betti_table(&i, &cfg)?;
        let zeroth = table.total(0);
        rec.relation("beta_0 counts generators", None, zeroth, i.len(), zeroth == i.len());
        let from_table = table.regularity_of_ideal().map(|v| Regularity::Value(v - 1));
        let mut q = cfg.clone();
        q.field = Field::Rational;
        let mut p = cfg;
        p.field = Field::default();
        let (rp, rq) = (regularity_quotient(&i, &p)?, regularity_quotient(&i, &q)?);
        rec.ev("reg_gf", rp);
        rec.ev("reg_q", rq);
        rec.relation("GF(32003) = QQ", None, rp, rq, rp == rq);
        if hc.field == Field::default() {
            rec.relation("table regularity = pruned regularity", None, from_table, Some(rp), from_table == Some(rp));
        }
        Ok(())
    })
}

/// Reduced homology of the hollow triangle, a point, and the empty complex.
pub fn check_homology_conventions(hc: &HarnessConfig) -> TheoremCheck {
    let rec = Rec::new(TheoremId::Engine, "homology conventions", &Graph::empty(3), None, None);
    run(rec, |rec| {
        let ground = VertexSet::full(3);
        let cases = [
            ("hollow triangle", SimplicialComplex::from_faces(ground, [0b011, 0b110, 0b101]), vec![0, 0, 1]),
            ("point", SimplicialComplex::from_faces(ground, [0b001]), vec![0, 0]),
            ("empty complex", SimplicialComplex::empty(ground), vec![1]),
        ];
        for (name, cx, want) in cases {
            let got = cx.reduced_homology_dims(hc.field)?;
            rec.ev(name, &got);
            rec.relation(format!("reduced homology of {name}"), None, &got, &want, got == want);
        }
        Ok(())
    })
}

/// `Error` is not `Clone`; keep the message and category.
pub(crate) fn clone_err(e: &Error) -> Error {
    match e {
        Error::CapExceeded { what, value, limit } => Error::CapExceeded {
            what,
            value: *value,
            limit: *limit,
        },
        Error::Timeout => Error::Timeout,
        Error::Precondition(_) | Error::NotUnicyclic(_) | Error::PartNotChordal(_) => {
            Error::Precondition(e.to_string())
        }
        other => Error::InternalValidation(other.to_string()),
    }
}
