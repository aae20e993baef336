//! Empirical checks of the theory's results on single nets, and the
//! evidence table over the persistent-equivalence properties.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::fairness::{
    fairness_classify, pe_probe_matrix, search_persistent_equivalent_lasso, FiniteRegime, Lasso, LassoSearch,
    PeBounds, PeMatrix, Tier, TierEvidence,
};
use crate::limits::Limits;
use crate::lts::{build_rg, lts_properties, persistence_check, Lts};
use crate::net::{classify_structure, Net, Run, TransId};
use crate::patterns::{builtin_pattern, derive_nondc_embedding, find_embedding};
use crate::sequences::{
    complete_diamond, parikh, perm_class, persistent_parikh_equivalent, sequence_persistence, spe_check,
    FiringSequence, SpeMode,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    EcMain,
    DcMain,
    CfPersistent,
    PermImpliesParikh,
    DiamondCompletion,
    PersistenceFactorisation,
    SpeImpliesFpeProbe,
    Determinism,
}

impl TheoremId {
    pub const ALL: [TheoremId; 8] = [
        TheoremId::EcMain,
        TheoremId::DcMain,
        TheoremId::CfPersistent,
        TheoremId::PermImpliesParikh,
        TheoremId::DiamondCompletion,
        TheoremId::PersistenceFactorisation,
        TheoremId::SpeImpliesFpeProbe,
        TheoremId::Determinism,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::EcMain => "EC-main",
            TheoremId::DcMain => "DC-main",
            TheoremId::CfPersistent => "CF-persistent",
            TheoremId::PermImpliesParikh => "perm-implies-parikh",
            TheoremId::DiamondCompletion => "diamond-completion",
            TheoremId::PersistenceFactorisation => "persistence-factorisation",
            TheoremId::SpeImpliesFpeProbe => "spe-implies-fpe-probe",
            TheoremId::Determinism => "determinism",
        }
    }
}

impl TheoremId {
    /// Generator constraint under which the premises usually hold.
    pub fn default_constraint(self) -> &'static str {
        match self {
            TheoremId::EcMain => "EC",
            TheoremId::DcMain | TheoremId::DiamondCompletion => "pure",
            TheoremId::CfPersistent => "CF",
            _ => "none",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Unknown { kind: "theorem", name: s.into() })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabBounds {
    /// Longest finite sequence enumerated.
    pub seq_len: usize,
    pub max_prefix: usize,
    pub max_cycle: usize,
    pub depth: usize,
    /// Reachability graphs larger than this are skipped.
    pub rg_states: usize,
    /// Cap on the sequences sampled per net by the sequence-level checks.
    pub samples: usize,
}

impl Default for LabBounds {
    fn default() -> Self {
        LabBounds { seq_len: 10, max_prefix: 4, max_cycle: 10, depth: 8, rg_states: 2_000, samples: 64 }
    }
}

/// A counterexample to a checked statement, with the net to replay it on.
#[derive(Debug, Clone)]
pub struct Violation {
    pub instance: String,
    pub detail: String,
    pub net: Net,
}

#[derive(Debug, Clone)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub instances: usize,
    pub confirmations: usize,
    /// Instances whose premise failed or that exceeded a bound.
    pub skipped: Vec<String>,
    pub violations: Vec<Violation>,
    /// Evidence against statements that are not theorems (bounded searches
    /// that came up empty).
    pub refutations: Vec<String>,
    pub notes: Vec<String>,
    pub bounds: LabBounds,
    /// Filled in by callers that can read a clock.
    pub elapsed_ms: Option<u128>,
}

impl TheoremReport {
    pub fn new(theorem: TheoremId, bounds: LabBounds) -> Self {
        TheoremReport {
            theorem,
            instances: 0,
            confirmations: 0,
            skipped: Vec::new(),
            violations: Vec::new(),
            refutations: Vec::new(),
            notes: Vec::new(),
            bounds,
            elapsed_ms: None,
        }
    }

    pub fn merge(&mut self, other: TheoremReport) {
        self.instances += other.instances;
        self.confirmations += other.confirmations;
        self.skipped.extend(other.skipped);
        self.violations.extend(other.violations);
        self.refutations.extend(other.refutations);
        self.notes.extend(other.notes);
        if let Some(ms) = other.elapsed_ms {
            self.elapsed_ms = Some(self.elapsed_ms.unwrap_or(0) + ms);
        }
    }
}

enum Outcome {
    Confirmed,
    Skipped(String),
    Violated(String),
}

/// All firing sequences from the initial marking up to `len`, length then
/// lexicographic, at most `cap`.
fn sequences_up_to(net: &Net, len: usize, cap: usize) -> Result<Vec<FiringSequence>> {
    let mut out = Vec::new();
    let mut level = alloc::vec![(FiringSequence::default(), net.initial_marking().clone())];
    for _ in 0..len {
        let mut next = Vec::new();
        for (w, m) in &level {
            for t in net.enabled_set(m) {
                let mut v = w.clone();
                v.push(t);
                out.push(v.clone());
                if out.len() >= cap {
                    return Ok(out);
                }
                next.push((v, net.fire_unchecked(m, t)?));
            }
        }
        level = next;
    }
    Ok(out)
}

fn bounded_rg(net: &Net, bounds: &LabBounds) -> Result<core::result::Result<Lts, String>> {
    let (rg, report) = build_rg(net, bounds.rg_states)?;
    if report.bounded() {
        Ok(Ok(rg))
    } else {
        Ok(Err(format!("reachability graph exceeds {} states", bounds.rg_states)))
    }
}

/// BFS-tree path to every state (states are numbered in discovery order).
fn tree_paths(rg: &Lts) -> Vec<FiringSequence> {
    let mut paths: Vec<Option<FiringSequence>> = alloc::vec![None; rg.state_count()];
    paths[rg.initial()] = Some(FiringSequence::default());
    for s in 0..rg.state_count() {
        let Some(p) = paths[s].clone() else { continue };
        for &(l, t) in rg.out(s) {
            if paths[t].is_none() {
                let mut q = p.clone();
                q.push(TransId(l));
                paths[t] = Some(q);
            }
        }
    }
    paths.into_iter().map(|p| p.unwrap_or_default()).collect()
}

/// First `(state, t, u)` in state order with `t` disabling `u`.
fn disabling_witness(rg: &Lts) -> Option<(usize, usize, usize)> {
    (0..rg.state_count()).find_map(|s| {
        rg.out(s).iter().find_map(|&(t, k)| {
            rg.out(s).iter().find(|&&(u, _)| u != t && !rg.enables(k, u)).map(|&(u, _)| (s, t, u))
        })
    })
}

fn determinism(net: &Net, b: &LabBounds) -> Result<Outcome> {
    let rg = match bounded_rg(net, b)? {
        Ok(rg) => rg,
        Err(why) => return Ok(Outcome::Skipped(why)),
    };
    let r = lts_properties(&rg);
    Ok(if r.forward_deterministic && r.backward_deterministic {
        Outcome::Confirmed
    } else {
        Outcome::Violated("reachability graph is not deterministic".into())
    })
}

fn cf_persistent(net: &Net, b: &LabBounds) -> Result<Outcome> {
    if !classify_structure(net).choice_free.holds() {
        return Ok(Outcome::Skipped("not choice-free".into()));
    }
    let rg = match bounded_rg(net, b)? {
        Ok(rg) => rg,
        Err(why) => return Ok(Outcome::Skipped(why)),
    };
    Ok(match disabling_witness(&rg) {
        None => Outcome::Confirmed,
        Some((s, t, u)) => Outcome::Violated(format!(
            "at {} firing `{}` disables `{}`",
            rg.state_name(s),
            rg.label_name(t),
            rg.label_name(u)
        )),
    })
}

fn perm_implies_parikh(net: &Net, b: &LabBounds, limits: &Limits) -> Result<Outcome> {
    let m0 = net.initial_marking();
    let n = net.transition_count();
    for seq in sequences_up_to(net, b.seq_len.min(6), b.samples)? {
        let psi = parikh(&seq, n);
        let end = net.fire_sequence(m0, &seq)?;
        let class = match perm_class(net, m0, &seq, limits) {
            Ok(c) => c,
            Err(Error::ResourceExceeded(why)) => return Ok(Outcome::Skipped(why)),
            Err(e) => return Err(e),
        };
        for other in class {
            if parikh(&other, n) != psi || net.fire_sequence(m0, &other)? != end {
                return Ok(Outcome::Violated(format!(
                    "`{}` and `{}` are permutation equivalent with different Parikh vectors or endpoints",
                    net.show_word(&seq),
                    net.show_word(&other)
                )));
            }
        }
    }
    Ok(Outcome::Confirmed)
}

fn persistence_factorisation(net: &Net, b: &LabBounds) -> Result<Outcome> {
    let m0 = net.initial_marking();
    for seq in sequences_up_to(net, b.seq_len.min(6), b.samples)? {
        let whole = sequence_persistence(net, m0, &seq)?.persistent;
        for k in 0..=seq.len() {
            let (alpha, beta) = (FiringSequence(seq[..k].to_vec()), FiringSequence(seq[k..].to_vec()));
            let mid = net.fire_sequence(m0, &alpha)?;
            let split = sequence_persistence(net, m0, &alpha)?.persistent
                && sequence_persistence(net, &mid, &beta)?.persistent;
            if split != whole {
                return Ok(Outcome::Violated(format!(
                    "`{}` split after {k} letters: whole {whole}, parts {split}",
                    net.show_word(&seq)
                )));
            }
        }
    }
    Ok(Outcome::Confirmed)
}

fn pure_plain(net: &Net) -> bool {
    let r = classify_structure(net);
    r.pure.holds() && r.plain.holds()
}

fn diamond_completion(net: &Net, b: &LabBounds) -> Result<Outcome> {
    if !pure_plain(net) {
        return Ok(Outcome::Skipped("not pure and plain".into()));
    }
    let rg = match bounded_rg(net, b)? {
        Ok(rg) => rg,
        Err(why) => return Ok(Outcome::Skipped(why)),
    };
    let markings = rg.payload().expect("markings");
    for s in 0..rg.state_count() {
        for &(y, s2) in rg.out(s) {
            for &(x, _) in rg.out(s) {
                if x == y || !rg.enables(s2, x) {
                    continue;
                }
                match complete_diamond(net, &markings[s], TransId(y), TransId(x)) {
                    Ok(_) => {}
                    Err(Error::InvariantBroken(why)) => return Ok(Outcome::Violated(why)),
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(Outcome::Confirmed)
}

fn ec_main(net: &Net, b: &LabBounds, limits: &Limits) -> Result<Outcome> {
    if !classify_structure(net).equal_conflict.holds() {
        return Ok(Outcome::Skipped("not equal-conflict".into()));
    }
    let rg = match bounded_rg(net, b)? {
        Ok(rg) => rg,
        Err(why) => return Ok(Outcome::Skipped(why)),
    };
    let Some((s, a1, a2)) = disabling_witness(&rg) else {
        return Ok(Outcome::Confirmed);
    };
    // Contrapositive: δ·a1 must lack a persistent Parikh equivalent.
    let mut seq = tree_paths(&rg).swap_remove(s);
    seq.push(TransId(a1));
    let psi = parikh(&seq, net.transition_count());
    match persistent_parikh_equivalent(net, net.initial_marking(), &psi, limits) {
        Ok(None) => Ok(Outcome::Confirmed),
        Ok(Some(w)) => Ok(Outcome::Violated(format!(
            "nonpersistent (`{}` disables `{}` at {}) yet `{}` is a persistent Parikh equivalent of `{}`",
            rg.label_name(a1),
            rg.label_name(a2),
            rg.state_name(s),
            net.show_word(&w),
            net.show_word(&seq)
        ))),
        Err(Error::ResourceExceeded(why)) => Ok(Outcome::Skipped(why)),
        Err(e) => Err(e),
    }
}

fn dc_main(net: &Net, b: &LabBounds, limits: &Limits, notes: &mut Vec<String>) -> Result<Outcome> {
    if !pure_plain(net) {
        return Ok(Outcome::Skipped("not pure and plain".into()));
    }
    let rg = match bounded_rg(net, b)? {
        Ok(rg) => rg,
        Err(why) => return Ok(Outcome::Skipped(why)),
    };
    if persistence_check(&rg).persistent {
        return Ok(Outcome::Skipped("persistent".into()));
    }
    // On an acyclic graph the longest path bounds every firing sequence,
    // so the check below is exhaustive.
    let (bound, exact) = match longest_path(&rg) {
        Some(l) => (l, true),
        None => (b.seq_len, false),
    };
    let lim = Limits { max_states: b.rg_states, ..*limits };
    match spe_check(net, bound, SpeMode::Parikh, &lim) {
        Ok(v) if !v.holds() => return Ok(Outcome::Skipped(format!("tilde-SPE refuted within length {bound}"))),
        Ok(_) => {}
        Err(Error::ResourceExceeded(why)) => return Ok(Outcome::Skipped(why)),
        Err(e) => return Err(e),
    }
    let scope = if exact { String::from("for every firing sequence") } else { format!("up to length {bound}") };
    let dc = classify_structure(net).dissymmetric_choice.holds();
    match derive_nondc_embedding(net, bound, limits.class_guard, &lim) {
        Ok(_) if !dc => Ok(Outcome::Confirmed),
        Ok(_) => Ok(Outcome::Violated("derived a non-DC embedding, yet the net is DC".into())),
        Err(Error::NoWitness(why)) => {
            let found = find_embedding(&builtin_pattern("nonDC")?, &rg).is_some();
            notes.push(format!("{}: constructive replay stopped ({why}); pattern search found={found}", net.name()));
            if dc {
                Ok(Outcome::Violated(format!(
                    "pure, plain, nonpersistent, tilde-SPE holds {scope}, yet the net is DC \
                     (nonDC embedded: {found}; {why})"
                )))
            } else {
                Ok(Outcome::Confirmed)
            }
        }
        Err(Error::ResourceExceeded(why)) => Ok(Outcome::Skipped(why)),
        Err(e @ Error::InvariantBroken(_)) => Ok(Outcome::Violated(format!("{e}"))),
        Err(e) => Err(e),
    }
}

/// Length of the longest path from the initial state, or `None` when a
/// cycle is reachable.
pub fn longest_path(rg: &Lts) -> Option<usize> {
    let n = rg.state_count();
    let mut indeg = alloc::vec![0usize; n];
    for &(_, _, t) in rg.edges() {
        indeg[t] += 1;
    }
    let mut queue: Vec<usize> = (0..n).filter(|&s| indeg[s] == 0).collect();
    let mut depth = alloc::vec![0usize; n];
    let mut seen = 0;
    while let Some(s) = queue.pop() {
        seen += 1;
        for &(_, t) in rg.out(s) {
            depth[t] = depth[t].max(depth[s] + 1);
            indeg[t] -= 1;
            if indeg[t] == 0 {
                queue.push(t);
            }
        }
    }
    (seen == n).then(|| depth.into_iter().max().unwrap_or(0))
}

/// Lassos read off the reachability graph: a BFS-tree prefix to a state
/// and a simple cycle through it, at most `limit` of them.
pub fn lasso_probes(rg: &Lts, max_prefix: usize, max_cycle: usize, limit: usize) -> Vec<Lasso> {
    let paths = tree_paths(rg);
    let mut out = Vec::new();
    for s in 0..rg.state_count() {
        if paths[s].len() > max_prefix {
            continue;
        }
        // Depth-first over simple cycles through `s`.
        let mut stack: Vec<(usize, Vec<TransId>, Vec<usize>)> = alloc::vec![(s, Vec::new(), alloc::vec![s])];
        while let Some((at, word, visited)) = stack.pop() {
            for &(l, t) in rg.out(at).iter().rev() {
                let mut w = word.clone();
                w.push(TransId(l));
                if t == s {
                    out.push(Lasso { prefix: paths[s].clone(), cycle: FiringSequence(w) });
                    if out.len() >= limit {
                        return out;
                    }
                } else if !visited.contains(&t) && w.len() < max_cycle {
                    let mut v = visited.clone();
                    v.push(t);
                    stack.push((t, w, v));
                }
            }
        }
    }
    out
}

/// The strongly fair members of [`lasso_probes`].
pub fn fair_lasso_probes(net: &Net, rg: &Lts, max_prefix: usize, max_cycle: usize, limit: usize) -> Result<Vec<Lasso>> {
    let mut out = Vec::new();
    for l in lasso_probes(rg, max_prefix, max_cycle, usize::MAX) {
        if fairness_classify(net, &Run::Lasso(l.clone()), FiniteRegime::default())?.strongly_fair {
            out.push(l);
            if out.len() >= limit {
                break;
            }
        }
    }
    Ok(out)
}

fn spe_implies_fpe(net: &Net, b: &LabBounds, limits: &Limits, refutations: &mut Vec<String>) -> Result<Outcome> {
    if !classify_structure(net).plain.holds() {
        return Ok(Outcome::Skipped("fairness probes need a plain net".into()));
    }
    let rg = match bounded_rg(net, b)? {
        Ok(rg) => rg,
        Err(why) => return Ok(Outcome::Skipped(why)),
    };
    let bound = b.seq_len.min(rg.state_count() + 1);
    match spe_check(net, bound, SpeMode::Permutation, limits) {
        Ok(v) if !v.holds() => return Ok(Outcome::Skipped(format!("SPE refuted at length {bound}"))),
        Ok(_) => {}
        Err(Error::ResourceExceeded(why)) => return Ok(Outcome::Skipped(why)),
        Err(e) => return Err(e),
    }
    for l in fair_lasso_probes(net, &rg, b.max_prefix, b.max_cycle, 8)? {
        match search_persistent_equivalent_lasso(net, &l, b.max_prefix, b.max_cycle, b.depth, limits)? {
            LassoSearch::Found(_) => {}
            LassoSearch::NoneWithinBounds => refutations.push(format!(
                "{}: fair lasso ({} ; {}) has no persistent equivalent within bounds",
                net.name(),
                net.show_word(&l.prefix),
                net.show_word(&l.cycle)
            )),
        }
    }
    Ok(Outcome::Confirmed)
}

/// Checks one statement on one net. A failed premise is a skip, never a
/// violation.
pub fn check_theorem(id: TheoremId, net: &Net, bounds: &LabBounds, limits: &Limits) -> Result<TheoremReport> {
    let mut report = TheoremReport::new(id, *bounds);
    report.instances = 1;
    let outcome = match id {
        TheoremId::EcMain => ec_main(net, bounds, limits)?,
        TheoremId::DcMain => dc_main(net, bounds, limits, &mut report.notes)?,
        TheoremId::CfPersistent => cf_persistent(net, bounds)?,
        TheoremId::PermImpliesParikh => perm_implies_parikh(net, bounds, limits)?,
        TheoremId::DiamondCompletion => diamond_completion(net, bounds)?,
        TheoremId::PersistenceFactorisation => persistence_factorisation(net, bounds)?,
        TheoremId::SpeImpliesFpeProbe => spe_implies_fpe(net, bounds, limits, &mut report.refutations)?,
        TheoremId::Determinism => determinism(net, bounds)?,
    };
    match outcome {
        Outcome::Confirmed => report.confirmations = 1,
        Outcome::Skipped(why) => report.skipped.push(format!("{}: {why}", net.name())),
        Outcome::Violated(detail) => {
            report.violations.push(Violation { instance: net.name().into(), detail, net: net.clone() })
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeProperty {
    Ape,
    Jpe,
    Fpe,
    Spe,
}

impl fmt::Display for PeProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PeProperty::Ape => "APE",
            PeProperty::Jpe => "JPE",
            PeProperty::Fpe => "FPE",
            PeProperty::Spe => "SPE",
        })
    }
}

/// The implications that hold under the maximal-finite-is-fair regime.
pub const TRUE_IMPLICATIONS: [(PeProperty, PeProperty); 3] =
    [(PeProperty::Ape, PeProperty::Jpe), (PeProperty::Ape, PeProperty::Spe), (PeProperty::Jpe, PeProperty::Fpe)];

#[derive(Debug, Clone)]
pub struct ImplicationMatrix {
    pub matrix: PeMatrix,
    pub evidence: [(PeProperty, TierEvidence); 4],
    pub violations: Vec<String>,
}

impl ImplicationMatrix {
    pub fn get(&self, p: PeProperty) -> TierEvidence {
        self.evidence.iter().find(|(q, _)| *q == p).expect("all four").1
    }
}

/// The evidence table for one net and its probes, checked against the true
/// implications. A refuted SPE also refutes APE: its counterexample is a
/// run without a persistent equivalent.
pub fn implication_matrix(net: &Net, probes: &[Run], bounds: PeBounds, limits: &Limits) -> Result<ImplicationMatrix> {
    let matrix = pe_probe_matrix(net, probes, bounds, limits)?;
    let spe = if matrix.spe.holds() { TierEvidence::NotRefuted } else { TierEvidence::Refuted { definitive: true } };
    let ape = match (matrix.evidence(Tier::All), spe) {
        (TierEvidence::Refuted { definitive: true }, _) | (_, TierEvidence::Refuted { definitive: true }) => {
            TierEvidence::Refuted { definitive: true }
        }
        (e, _) => e,
    };
    let evidence = [
        (PeProperty::Ape, ape),
        (PeProperty::Jpe, matrix.evidence(Tier::Just)),
        (PeProperty::Fpe, matrix.evidence(Tier::Fair)),
        (PeProperty::Spe, spe),
    ];
    let status = |p: PeProperty| evidence.iter().find(|(q, _)| *q == p).expect("all four").1;
    let violations = TRUE_IMPLICATIONS
        .iter()
        .filter(|(a, b)| {
            status(*a) == TierEvidence::NotRefuted && status(*b) == TierEvidence::Refuted { definitive: true }
        })
        .map(|(a, b)| format!("{a} holds on the evidence but {b} is refuted"))
        .collect();
    Ok(ImplicationMatrix { matrix, evidence, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testnets::*;

    fn run(id: TheoremId, net: &Net) -> TheoremReport {
        check_theorem(id, net, &LabBounds::default(), &Limits::default()).unwrap()
    }

    #[test]
    fn names_round_trip() {
        for t in TheoremId::ALL {
            assert_eq!(t.name().parse::<TheoremId>().unwrap(), t);
        }
        assert!("nope".parse::<TheoremId>().is_err());
    }

    #[test]
    fn dc_main_on_fig1() {
        let r = run(TheoremId::DcMain, &fig1());
        assert_eq!((r.confirmations, r.violations.len()), (1, 0), "{:?}", r.skipped);
    }

    #[test]
    fn ec_main_on_fig4_variant() {
        // fig4 is EC and nonpersistent: a and b compete for p0.
        let r = run(TheoremId::EcMain, &fig4());
        assert_eq!(r.confirmations, 1);
    }

    #[test]
    fn premises_skip() {
        let r = run(TheoremId::CfPersistent, &fig1());
        assert_eq!(r.skipped.len(), 1);
        let r = run(TheoremId::DiamondCompletion, &fig13());
        assert_eq!(r.skipped.len(), 1);
    }

    #[test]
    fn fig14_fpe_probe_is_refuted() {
        let r = run(TheoremId::SpeImpliesFpeProbe, &fig14());
        assert!(r.violations.is_empty());
        assert!(!r.refutations.is_empty());
    }

    #[test]
    fn corpus_nets_have_no_violations() {
        for net in [fig1(), fig4(), fig5(), fig6(), fig8(), fig10(), fig12(), fig16()] {
            for id in TheoremId::ALL {
                if id == TheoremId::SpeImpliesFpeProbe {
                    continue;
                }
                let r = run(id, &net);
                assert!(r.violations.is_empty(), "{id} on {}: {:?}", net.name(), r.violations[0].detail);
            }
        }
    }

    #[test]
    fn matrices() {
        let n = fig5();
        let l = Lasso { prefix: FiringSequence::default(), cycle: n.word("a c b c").unwrap() };
        let m = implication_matrix(&n, &[Run::Lasso(l)], PeBounds::default(), &Limits::default()).unwrap();
        assert!(m.evidence.iter().all(|(_, e)| *e == TierEvidence::NotRefuted));

        let n = fig6();
        let l = Lasso { prefix: n.word("y").unwrap(), cycle: n.word("x a c").unwrap() };
        let m = implication_matrix(&n, &[Run::Lasso(l)], PeBounds::default(), &Limits::default()).unwrap();
        assert_eq!(m.get(PeProperty::Spe), TierEvidence::NotRefuted);
        assert_eq!(m.get(PeProperty::Jpe), TierEvidence::Refuted { definitive: false });
        assert_eq!(m.get(PeProperty::Fpe), TierEvidence::NotRefuted);
        assert!(m.violations.is_empty());
    }
}
