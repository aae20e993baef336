//! Eventually periodic runs, the fairness spectrum, persistence of infinite
//! runs, and bounded evidence for the persistent-equivalence properties.
//!
//! A validated lasso re-enters its cycle-entry marking after every lap, so
//! each step of the infinite run happens in one of finitely many contexts
//! that all occur in the first unrolling. Fairness and persistence are
//! therefore decided on `prefix · cycle`.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::net::{classify_structure, ops::concurrently_enabled_plain, Marking, Net, Run, TransId};
use crate::sequences::{
    parikh, persistence_of_trace, persistent_parikh_equivalents, persistent_perm_equivalent, sequence_persistence,
    spe_check, walk_class, FiringSequence, ParikhVector, SeqPersistenceVerdict, SpeMode, SpeVerdict,
};

/// `prefix · cycle^ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lasso {
    pub prefix: FiringSequence,
    pub cycle: FiringSequence,
}

impl Lasso {
    pub fn new(prefix: FiringSequence, cycle: FiringSequence) -> Self {
        Lasso { prefix, cycle }
    }

    /// The first `len` letters of the infinite run.
    pub fn unroll(&self, len: usize) -> FiringSequence {
        let mut out: Vec<TransId> = self.prefix.iter().copied().take(len).collect();
        if !self.cycle.is_empty() {
            while out.len() < len {
                let need = len - out.len();
                out.extend(self.cycle.iter().copied().take(need));
            }
        }
        FiringSequence(out)
    }

    /// `prefix · cycle`.
    pub fn one_lap(&self) -> FiringSequence {
        self.prefix.concat(&self.cycle)
    }
}

/// Checks that the cycle is nonempty, both parts are firable and the
/// cycle returns to its entry marking, which is returned.
pub fn validate_lasso(net: &Net, lasso: &Lasso) -> Result<Marking> {
    net.check_behavioural()?;
    if lasso.cycle.is_empty() {
        return Err(Error::input("lasso cycle is empty"));
    }
    let m0 = net.initial_marking();
    let entry = net
        .fire_sequence(m0, &lasso.prefix)
        .map_err(|e| Error::input(format!("lasso prefix is not firable: {e}")))?;
    let back = net
        .fire_sequence(&entry, &lasso.cycle)
        .map_err(|e| Error::input(format!("lasso cycle is not firable: {e}")))?;
    if back != entry {
        return Err(Error::input(format!(
            "cycle `{}` leads from {entry} to {back} instead of returning",
            net.show_word(&lasso.cycle)
        )));
    }
    Ok(entry)
}

/// How finite runs are judged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FiniteRegime {
    /// A finite run is fair only if it ends in a deadlock.
    #[default]
    MaximalFiniteIsFair,
    /// Every finite run is fair.
    FiniteIsFair,
}

/// What a run does to one transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Neglect {
    FiredInfinitely,
    EventuallyNeverEnabled,
    /// Enabled infinitely often and fired finitely often, but not
    /// continuously enabled.
    IntermittentlyNeglected,
    /// Eventually enabled at every step and never fired.
    ContinuouslyNeglected,
    /// Continuously neglected and concurrently enabled with every step.
    ConstantlyNeglected,
    /// The finite run stops at a marking enabling the transition.
    EnabledAtEnd,
}

impl fmt::Display for Neglect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Neglect::FiredInfinitely => "fired-infinitely",
            Neglect::EventuallyNeverEnabled => "eventually-never-enabled",
            Neglect::IntermittentlyNeglected => "intermittently-neglected",
            Neglect::ContinuouslyNeglected => "continuously-neglected",
            Neglect::ConstantlyNeglected => "constantly-neglected",
            Neglect::EnabledAtEnd => "enabled-at-end",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FairnessReport {
    pub strongly_fair: bool,
    /// Also called just.
    pub weakly_fair: bool,
    pub progress: bool,
    pub finite_regime: FiniteRegime,
    /// Indexed by transition.
    pub neglected: Vec<Neglect>,
}

/// Classifies a run on the fairness spectrum.
///
/// Deciding progress needs concurrent enabling, which is defined for plain
/// nets; a non-plain net is rejected only when that question arises.
pub fn fairness_classify(net: &Net, run: &Run, finite_regime: FiniteRegime) -> Result<FairnessReport> {
    match run {
        Run::Finite(seq) => {
            let end = net.fire_sequence(net.initial_marking(), seq)?;
            let neglected: Vec<Neglect> = net
                .transitions()
                .map(|t| if net.is_enabled(&end, t) { Neglect::EnabledAtEnd } else { Neglect::EventuallyNeverEnabled })
                .collect();
            let fair = match finite_regime {
                FiniteRegime::MaximalFiniteIsFair => net.is_deadlock(&end),
                FiniteRegime::FiniteIsFair => true,
            };
            Ok(FairnessReport { strongly_fair: fair, weakly_fair: fair, progress: fair, finite_regime, neglected })
        }
        Run::Lasso(l) => {
            let entry = validate_lasso(net, l)?;
            let laps = net.trace(&entry, &l.cycle)?;
            let sources = &laps[..l.cycle.len()];
            let mut neglected = Vec::with_capacity(net.transition_count());
            let mut plain = None;
            for t in net.transitions() {
                let kind = if l.cycle.contains(&t) {
                    Neglect::FiredInfinitely
                } else if !sources.iter().any(|m| net.is_enabled(m, t)) {
                    Neglect::EventuallyNeverEnabled
                } else if !sources.iter().all(|m| net.is_enabled(m, t)) {
                    Neglect::IntermittentlyNeglected
                } else {
                    let is_plain = *plain.get_or_insert_with(|| classify_structure(net).plain.holds());
                    if !is_plain {
                        return Err(Error::unsupported(format!(
                            "`{}` is continuously neglected; progress needs concurrent enabling, defined for plain nets",
                            net.transition_name(t)
                        )));
                    }
                    let constant = sources
                        .iter()
                        .zip(l.cycle.iter())
                        .all(|(m, &u)| concurrently_enabled_plain(net, m, u, t));
                    if constant {
                        Neglect::ConstantlyNeglected
                    } else {
                        Neglect::ContinuouslyNeglected
                    }
                };
                neglected.push(kind);
            }
            let strongly_fair = neglected
                .iter()
                .all(|k| matches!(k, Neglect::FiredInfinitely | Neglect::EventuallyNeverEnabled));
            let weakly_fair = !neglected
                .iter()
                .any(|k| matches!(k, Neglect::ContinuouslyNeglected | Neglect::ConstantlyNeglected));
            let progress = !neglected.contains(&Neglect::ConstantlyNeglected);
            Ok(FairnessReport { strongly_fair, weakly_fair, progress, finite_regime, neglected })
        }
    }
}

/// Persistence of the infinite run, decided on one unrolling.
pub fn lasso_persistence(net: &Net, lasso: &Lasso) -> Result<SeqPersistenceVerdict> {
    validate_lasso(net, lasso)?;
    sequence_persistence(net, net.initial_marking(), &lasso.one_lap())
}

/// Per transition: `None` for infinitely many occurrences, else the count.
pub fn parikh_signature(lasso: &Lasso, transitions: usize) -> Vec<Option<u32>> {
    let p = parikh(&lasso.prefix, transitions);
    (0..transitions)
        .map(|t| if lasso.cycle.contains(&TransId(t)) { None } else { Some(p.0[t]) })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LassoEquivalence {
    /// Every prefix up to the depth can be matched both ways.
    EquivalentAtDepth,
    /// `definitive` holds when the infinite Parikh signatures differ;
    /// otherwise some prefix could not be matched inside the window.
    NotEquivalent { definitive: bool },
    /// A permutation class outgrew the guard.
    Unknown,
}

impl fmt::Display for LassoEquivalence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LassoEquivalence::EquivalentAtDepth => f.write_str("equivalent-at-depth"),
            LassoEquivalence::NotEquivalent { definitive: true } => f.write_str("not-equivalent"),
            LassoEquivalence::NotEquivalent { definitive: false } => f.write_str("not-equivalent-within-window"),
            LassoEquivalence::Unknown => f.write_str("unknown"),
        }
    }
}

enum Match {
    Yes,
    No,
    Guard,
}

/// Moves the first remaining occurrence of each target letter forward by
/// valid adjacent swaps. Sound but incomplete.
fn greedy_match(net: &Net, m0: &Marking, word: &[TransId], target: &[TransId]) -> bool {
    let mut w = word.to_vec();
    for (k, &goal) in target.iter().enumerate() {
        let Some(j) = (k..w.len()).find(|&j| w[j] == goal) else { return false };
        let mut pos = j;
        while pos > k {
            let Ok(before) = net.fire_sequence(m0, &FiringSequence(w[..pos - 1].to_vec())) else { return false };
            let (x, y) = (w[pos - 1], w[pos]);
            if !net.is_enabled(&before, y) {
                return false;
            }
            let Ok(mid) = net.fire_unchecked(&before, y) else { return false };
            if !net.is_enabled(&mid, x) {
                return false;
            }
            w.swap(pos - 1, pos);
            pos -= 1;
        }
    }
    true
}

fn prefix_reachable(net: &Net, m0: &Marking, word: &[TransId], target: &[TransId], guard: usize) -> Match {
    if word.len() < target.len() {
        return Match::No;
    }
    if word[..target.len()] == *target || greedy_match(net, m0, word, target) {
        return Match::Yes;
    }
    match walk_class(net, m0, word, guard, |w, _| w[..target.len()] == *target) {
        Ok(Some(_)) => Match::Yes,
        Ok(None) => Match::No,
        Err(_) => Match::Guard,
    }
}

/// The infinite clause of permutation equivalence, checked at finite
/// resolution: for each `n ≤ depth`, a permutation of the first `n + window`
/// letters of one run must start with the first `n` letters of the other.
pub fn lasso_equiv_at_depth(
    net: &Net,
    l1: &Lasso,
    l2: &Lasso,
    depth: usize,
    window: usize,
    limits: &Limits,
) -> Result<LassoEquivalence> {
    validate_lasso(net, l1)?;
    validate_lasso(net, l2)?;
    let n_t = net.transition_count();
    if parikh_signature(l1, n_t) != parikh_signature(l2, n_t) {
        return Ok(LassoEquivalence::NotEquivalent { definitive: true });
    }
    let m0 = net.initial_marking();
    let mut unknown = false;
    for n in 0..=depth {
        for (a, b) in [(l1, l2), (l2, l1)] {
            let word = a.unroll(n + window);
            let target = b.unroll(n);
            match prefix_reachable(net, m0, &word, &target, limits.class_guard) {
                Match::Yes => {}
                Match::No => return Ok(LassoEquivalence::NotEquivalent { definitive: false }),
                Match::Guard => unknown = true,
            }
        }
    }
    Ok(if unknown { LassoEquivalence::Unknown } else { LassoEquivalence::EquivalentAtDepth })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LassoSearch {
    Found(Lasso),
    /// Evidence only: larger bounds might still find one.
    NoneWithinBounds,
}

/// Looks for a persistent lasso equivalent to `lasso`. Candidate cycles have
/// Parikh vectors that are positive multiples of the input cycle's, and
/// candidate prefixes agree with the input on letters outside the cycle.
pub fn search_persistent_equivalent_lasso(
    net: &Net,
    lasso: &Lasso,
    max_prefix: usize,
    max_cycle: usize,
    depth: usize,
    limits: &Limits,
) -> Result<LassoSearch> {
    validate_lasso(net, lasso)?;
    if lasso_persistence(net, lasso)?.persistent {
        return Ok(LassoSearch::Found(lasso.clone()));
    }
    let n_t = net.transition_count();
    let cyc = parikh(&lasso.cycle, n_t);
    let in_cycle: Vec<bool> = (0..n_t).map(|t| cyc.0[t] > 0).collect();
    let fixed = parikh(&lasso.prefix, n_t);
    let laps = max_cycle / lasso.cycle.len();
    let m0 = net.initial_marking().clone();

    // Breadth-first over persistent prefixes, so shorter prefixes win.
    let mut queue = VecDeque::new();
    queue.push_back((Vec::<TransId>::new(), m0, ParikhVector::zero(n_t)));
    while let Some((prefix, m, psi)) = queue.pop_front() {
        let settled = (0..n_t).all(|t| in_cycle[t] || psi.0[t] == fixed.0[t]);
        if settled {
            for k in 1..=laps {
                let target = ParikhVector(cyc.0.iter().map(|&c| c * k as u32).collect());
                let cycles = match persistent_parikh_equivalents(net, &m, &target, 64, limits) {
                    Ok(c) => c,
                    Err(Error::ResourceExceeded(_)) => continue,
                    Err(e) => return Err(e),
                };
                for cycle in cycles {
                    let cand = Lasso { prefix: FiringSequence(prefix.clone()), cycle };
                    let window = 2 * cand.cycle.len().max(lasso.cycle.len());
                    if lasso_equiv_at_depth(net, &cand, lasso, depth, window, limits)?
                        == LassoEquivalence::EquivalentAtDepth
                    {
                        return Ok(LassoSearch::Found(cand));
                    }
                }
            }
        }
        if prefix.len() == max_prefix {
            continue;
        }
        for t in net.transitions() {
            if !in_cycle[t.0] && psi.0[t.0] >= fixed.0[t.0] {
                continue;
            }
            if !net.is_enabled(&m, t) {
                continue;
            }
            let next = net.fire_unchecked(&m, t)?;
            let trace = [m.clone(), next.clone()];
            if !persistence_of_trace(net, &[t], &trace).persistent {
                continue;
            }
            let mut p = prefix.clone();
            p.push(t);
            let mut q = psi.clone();
            q.0[t.0] += 1;
            queue.push_back((p, next, q));
        }
    }
    Ok(LassoSearch::NoneWithinBounds)
}

/// Bounds for the probe matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeBounds {
    pub spe_bound: usize,
    pub max_prefix: usize,
    pub max_cycle: usize,
    pub depth: usize,
}

impl Default for PeBounds {
    fn default() -> Self {
        PeBounds { spe_bound: 6, max_prefix: 4, max_cycle: 10, depth: 8 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProbeOutcome {
    Found(Run),
    /// The finite permutation class was exhausted.
    NoneExists,
    NoneWithinBounds,
}

impl ProbeOutcome {
    pub fn found(&self) -> bool {
        matches!(self, ProbeOutcome::Found(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeRow {
    pub run: Run,
    pub fairness: FairnessReport,
    pub persistent: bool,
    pub equivalent: ProbeOutcome,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tier {
    /// Fair runs (FPE).
    Fair,
    /// Just runs (JPE).
    Just,
    /// All runs (APE).
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TierEvidence {
    NotRefuted,
    /// Some probe in the tier has no persistent equivalent; `definitive`
    /// when that probe is finite.
    Refuted { definitive: bool },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeMatrix {
    pub spe: SpeVerdict,
    pub spe_parikh: SpeVerdict,
    pub probes: Vec<ProbeRow>,
    pub bounds: PeBounds,
}

impl PeMatrix {
    pub fn tier(&self, tier: Tier) -> impl Iterator<Item = &ProbeRow> {
        self.probes.iter().filter(move |r| match tier {
            Tier::Fair => r.fairness.strongly_fair,
            Tier::Just => r.fairness.weakly_fair,
            Tier::All => true,
        })
    }

    pub fn evidence(&self, tier: Tier) -> TierEvidence {
        let mut out = TierEvidence::NotRefuted;
        for r in self.tier(tier) {
            match r.equivalent {
                ProbeOutcome::NoneExists => return TierEvidence::Refuted { definitive: true },
                ProbeOutcome::NoneWithinBounds => out = TierEvidence::Refuted { definitive: false },
                ProbeOutcome::Found(_) => {}
            }
        }
        out
    }
}

/// Runs both SPE deciders and, for each probe, its fairness tiers and a
/// search for a persistent permutation equivalent.
pub fn pe_probe_matrix(net: &Net, probes: &[Run], bounds: PeBounds, limits: &Limits) -> Result<PeMatrix> {
    let spe = spe_check(net, bounds.spe_bound, SpeMode::Permutation, limits)?;
    let spe_parikh = spe_check(net, bounds.spe_bound, SpeMode::Parikh, limits)?;
    let mut rows = Vec::with_capacity(probes.len());
    for run in probes {
        let fairness = fairness_classify(net, run, FiniteRegime::MaximalFiniteIsFair)?;
        let (persistent, equivalent) = match run {
            Run::Finite(seq) => {
                let m0 = net.initial_marking();
                let persistent = sequence_persistence(net, m0, seq)?.persistent;
                let eq = match persistent_perm_equivalent(net, m0, seq, limits) {
                    Ok(Some(s)) => ProbeOutcome::Found(Run::Finite(s)),
                    Ok(None) => ProbeOutcome::NoneExists,
                    Err(Error::ResourceExceeded(_)) => ProbeOutcome::NoneWithinBounds,
                    Err(e) => return Err(e),
                };
                (persistent, eq)
            }
            Run::Lasso(l) => {
                let persistent = lasso_persistence(net, l)?.persistent;
                let eq = match search_persistent_equivalent_lasso(
                    net,
                    l,
                    bounds.max_prefix,
                    bounds.max_cycle,
                    bounds.depth,
                    limits,
                )? {
                    LassoSearch::Found(c) => ProbeOutcome::Found(Run::Lasso(c)),
                    LassoSearch::NoneWithinBounds => ProbeOutcome::NoneWithinBounds,
                };
                (persistent, eq)
            }
        };
        rows.push(ProbeRow { run: run.clone(), fairness, persistent, equivalent });
    }
    Ok(PeMatrix { spe, spe_parikh, probes: rows, bounds })
}

/// Firing sequences of length at most `max_len` ending in a deadlock, in
/// length-lexicographic order, at most `limit` of them.
pub fn maximal_finite_runs(net: &Net, max_len: usize, limit: usize) -> Result<Vec<FiringSequence>> {
    net.check_behavioural()?;
    let mut out = Vec::new();
    let mut level = alloc::vec![(FiringSequence::default(), net.initial_marking().clone())];
    for len in 0..=max_len {
        let mut next = Vec::new();
        for (w, m) in level {
            if net.is_deadlock(&m) {
                out.push(w);
                if out.len() >= limit {
                    return Ok(out);
                }
                continue;
            }
            if len == max_len {
                continue;
            }
            for t in net.enabled_set(&m) {
                let mut v = w.clone();
                v.push(t);
                next.push((v, net.fire_unchecked(&m, t)?));
            }
        }
        level = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::{disjoint_sum, project_sequence, Side};
    use crate::testnets::*;

    fn lasso(n: &Net, prefix: &str, cycle: &str) -> Lasso {
        Lasso { prefix: n.word(prefix).unwrap(), cycle: n.word(cycle).unwrap() }
    }

    #[test]
    fn validation() {
        let f6 = fig6();
        let entry = validate_lasso(&f6, &lasso(&f6, "y", "x a c")).unwrap();
        assert_eq!(entry, f6.fire_sequence(f6.initial_marking(), &f6.word("y").unwrap()).unwrap());
        let f14 = fig14();
        validate_lasso(&f14, &lasso(&f14, "y", "x a1 a2 b c")).unwrap();
        let f1 = fig1();
        assert!(matches!(validate_lasso(&f1, &lasso(&f1, "", "c")), Err(Error::Input(_))));
        assert!(validate_lasso(&f1, &lasso(&f1, "", "")).is_err());
    }

    #[test]
    fn fig6_unfair_towards_b() {
        let n = fig6();
        let r = fairness_classify(&n, &Run::Lasso(lasso(&n, "y", "x a c")), FiniteRegime::default()).unwrap();
        assert!(!r.strongly_fair);
        let b = n.transition("b").unwrap();
        assert_eq!(r.neglected[b.0], Neglect::IntermittentlyNeglected);
        assert!(r.weakly_fair && r.progress);
    }

    #[test]
    fn fig14_run_is_fair() {
        let n = fig14();
        let r = fairness_classify(&n, &Run::Lasso(lasso(&n, "y", "x a1 a2 b c")), FiniteRegime::default()).unwrap();
        assert!(r.strongly_fair && r.weakly_fair && r.progress);
    }

    #[test]
    fn fig15_progress() {
        let sum = disjoint_sum(&a_star(), &b_only());
        let run = Run::Lasso(lasso(&sum, "", "a"));
        let r = fairness_classify(&sum, &run, FiniteRegime::default()).unwrap();
        assert_eq!((r.strongly_fair, r.weakly_fair, r.progress), (false, false, false));
        let c = fig15_choice();
        let r = fairness_classify(&c, &Run::Lasso(lasso(&c, "", "a")), FiniteRegime::default()).unwrap();
        assert_eq!((r.strongly_fair, r.weakly_fair, r.progress), (false, false, true));
    }

    #[test]
    fn fig15_projections_under_both_regimes() {
        let sum = disjoint_sum(&a_star(), &b_only());
        let run = Run::Lasso(lasso(&sum, "", "a"));
        let fair_parts = |regime| {
            [Side::Left, Side::Right].map(|side| {
                let (c, _) = sum.component(side).unwrap();
                let p = project_sequence(&sum, &run, side).unwrap();
                fairness_classify(&c, &p, regime).unwrap().strongly_fair
            })
        };
        assert_eq!(fair_parts(FiniteRegime::FiniteIsFair), [true, true]);
        assert_eq!(fair_parts(FiniteRegime::MaximalFiniteIsFair), [true, false]);
    }

    #[test]
    fn finite_regimes() {
        let n = fig1();
        let full = Run::Finite(n.word("c a d").unwrap());
        let part = Run::Finite(n.word("c").unwrap());
        assert!(fairness_classify(&n, &full, FiniteRegime::MaximalFiniteIsFair).unwrap().strongly_fair);
        assert!(!fairness_classify(&n, &part, FiniteRegime::MaximalFiniteIsFair).unwrap().progress);
        assert!(fairness_classify(&n, &part, FiniteRegime::FiniteIsFair).unwrap().strongly_fair);
    }

    #[test]
    fn non_plain_progress_rejected() {
        let n = fig2_loop();
        let run = Run::Lasso(lasso(&n, "", "a"));
        assert!(matches!(
            fairness_classify(&n, &run, FiniteRegime::default()),
            Err(Error::UnsupportedClass(_))
        ));
    }

    #[test]
    fn persistence_of_lassos() {
        let f5 = fig5();
        assert!(lasso_persistence(&f5, &lasso(&f5, "", "a c b c")).unwrap().persistent);
        let f14 = fig14();
        let v = lasso_persistence(&f14, &lasso(&f14, "y", "x a1 a2 b c")).unwrap();
        assert!(!v.persistent);
        assert_eq!(v.disabled_transition, Some(f14.transition("b").unwrap()));
        let f8 = fig8();
        assert!(!lasso_persistence(&f8, &lasso(&f8, "", "c d a e")).unwrap().persistent);
    }

    #[test]
    fn equivalence_at_depth() {
        let n = fig7_left();
        let l = Limits::default();
        let (ab, ba) = (lasso(&n, "", "a b"), lasso(&n, "", "b a"));
        assert_eq!(lasso_equiv_at_depth(&n, &ab, &ba, 10, 4, &l).unwrap(), LassoEquivalence::EquivalentAtDepth);
        assert_eq!(lasso_equiv_at_depth(&n, &ab, &ab, 10, 4, &l).unwrap(), LassoEquivalence::EquivalentAtDepth);
        let (a, b) = (lasso(&n, "", "a"), lasso(&n, "", "b"));
        assert_eq!(
            lasso_equiv_at_depth(&n, &a, &b, 10, 4, &l).unwrap(),
            LassoEquivalence::NotEquivalent { definitive: true }
        );
    }

    #[test]
    fn fig8_finds_cade() {
        let n = fig8();
        let l = lasso(&n, "", "c d a e");
        let got = search_persistent_equivalent_lasso(&n, &l, 4, 8, 16, &Limits::default()).unwrap();
        assert_eq!(got, LassoSearch::Found(lasso(&n, "", "c a d e")));
    }

    #[test]
    fn fig14_has_no_persistent_equivalent() {
        let n = fig14();
        let l = lasso(&n, "y", "x a1 a2 b c");
        let got = search_persistent_equivalent_lasso(&n, &l, 4, 10, 8, &Limits::default()).unwrap();
        assert_eq!(got, LassoSearch::NoneWithinBounds);
    }

    #[test]
    fn persistent_input_is_its_own_witness() {
        let n = fig5();
        let l = lasso(&n, "", "a c b c");
        assert_eq!(search_persistent_equivalent_lasso(&n, &l, 2, 4, 4, &Limits::default()).unwrap(), LassoSearch::Found(l));
    }

    #[test]
    fn matrix_fig6() {
        let n = fig6();
        let probe = Run::Lasso(lasso(&n, "y", "x a c"));
        let m = pe_probe_matrix(&n, &[probe], PeBounds::default(), &Limits::default()).unwrap();
        assert!(m.spe.holds() && m.spe_parikh.holds());
        assert_eq!(m.evidence(Tier::Fair), TierEvidence::NotRefuted);
        assert_eq!(m.evidence(Tier::All), TierEvidence::Refuted { definitive: false });
    }

    #[test]
    fn matrix_fig14() {
        let n = fig14();
        let probe = Run::Lasso(lasso(&n, "y", "x a1 a2 b c"));
        let m = pe_probe_matrix(&n, &[probe], PeBounds::default(), &Limits::default()).unwrap();
        assert!(m.spe.holds());
        assert_eq!(m.evidence(Tier::Fair), TierEvidence::Refuted { definitive: false });
    }

    #[test]
    fn matrix_fig10() {
        let n = fig10();
        let runs: Vec<Run> = maximal_finite_runs(&n, 10, 200).unwrap().into_iter().map(Run::Finite).collect();
        assert!(!runs.is_empty());
        let bounds = PeBounds { spe_bound: 3, ..PeBounds::default() };
        let m = pe_probe_matrix(&n, &runs, bounds, &Limits::default()).unwrap();
        assert_eq!(m.spe.counterexample, Some(n.word("y b").unwrap()));
        assert_eq!(m.evidence(Tier::Fair), TierEvidence::NotRefuted);
    }
}
