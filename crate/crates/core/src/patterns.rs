//! Patterns with mandatory and excluded arcs, embedding search, and the
//! constructive derivation of a non-DC pattern from a nonpersistent state.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::lts::{build_rg, persistence_check, Lts};
use crate::net::{classify_structure, Marking, Net, TransId};
use crate::sequences::{
    parikh, persistent_parikh_equivalents, spe_check, unify_parikh_equivalent, FiringSequence, SpeMode,
};

/// `(S, →, T, D)`: states, labels, mandatory arcs and excluded `(state, label)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    name: String,
    states: Vec<String>,
    labels: Vec<String>,
    arcs: Vec<(usize, usize, usize)>,
    exclusions: Vec<(usize, usize)>,
}

impl Pattern {
    pub fn new(
        name: &str,
        states: Vec<String>,
        labels: Vec<String>,
        arcs: Vec<(usize, usize, usize)>,
        exclusions: Vec<(usize, usize)>,
    ) -> Result<Pattern> {
        for (i, s) in states.iter().enumerate() {
            if states[..i].contains(s) {
                return Err(Error::Duplicate(s.clone()));
            }
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Duplicate(l.clone()));
            }
        }
        let ns = states.len();
        let nl = labels.len();
        if arcs.iter().any(|&(s, l, t)| s >= ns || t >= ns || l >= nl) {
            return Err(Error::input("pattern arc refers to an undeclared state or label"));
        }
        if exclusions.iter().any(|&(s, l)| s >= ns || l >= nl) {
            return Err(Error::input("pattern exclusion refers to an undeclared state or label"));
        }
        for (i, a) in arcs.iter().enumerate() {
            if arcs[..i].contains(a) {
                return Err(Error::Duplicate(format!("arc {} {} {}", states[a.0], labels[a.1], states[a.2])));
            }
        }
        for (i, x) in exclusions.iter().enumerate() {
            if exclusions[..i].contains(x) {
                return Err(Error::Duplicate(format!("exclude {} {}", states[x.0], labels[x.1])));
            }
        }
        Ok(Pattern { name: name.to_string(), states, labels, arcs, exclusions })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn arcs(&self) -> &[(usize, usize, usize)] {
        &self.arcs
    }

    pub fn exclusions(&self) -> &[(usize, usize)] {
        &self.exclusions
    }
}

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// The two patterns from the theory: `nonpers` (a proper conflict) and
/// `nonDC` (two one-sided enablings plus a conflict).
pub fn builtin_pattern(name: &str) -> Result<Pattern> {
    match name {
        "nonpers" => Pattern::new(
            "nonpers",
            strings(&["1", "2", "3"]),
            strings(&["a", "b"]),
            alloc::vec![(0, 0, 1), (0, 1, 2)],
            alloc::vec![(1, 1)],
        ),
        "nonDC" => Pattern::new(
            "nonDC",
            strings(&["s1", "s2", "s3", "s4", "s5", "s6", "s7"]),
            strings(&["a", "b"]),
            alloc::vec![(0, 0, 2), (1, 1, 4), (3, 0, 5), (3, 1, 6)],
            alloc::vec![(0, 1), (1, 0), (5, 1), (6, 0)],
        ),
        other => Err(Error::Unknown { kind: "pattern", name: other.to_string() }),
    }
}

/// `f = f1 ∪ f2`: pattern state → LTS state, pattern label → LTS label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Embedding {
    pub state_map: Vec<usize>,
    pub label_map: Vec<usize>,
}

impl Embedding {
    /// Pairs of pattern states sent to the same LTS state.
    pub fn fusions(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.state_map.len() {
            for j in i + 1..self.state_map.len() {
                if self.state_map[i] == self.state_map[j] {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

fn has_edge(lts: &Lts, s: usize, l: usize, t: usize) -> bool {
    lts.out(s).binary_search(&(l, t)).is_ok()
}

/// Checks mandatory arcs, excluded arcs and label injectivity.
pub fn validate_embedding(p: &Pattern, lts: &Lts, e: &Embedding) -> core::result::Result<(), String> {
    if e.state_map.len() != p.states.len() || e.label_map.len() != p.labels.len() {
        return Err("embedding does not cover the pattern".into());
    }
    if e.state_map.iter().any(|&s| s >= lts.state_count()) || e.label_map.iter().any(|&l| l >= lts.labels().len()) {
        return Err("embedding leaves the LTS".into());
    }
    for i in 0..e.label_map.len() {
        if e.label_map[..i].contains(&e.label_map[i]) {
            return Err(format!("labels fused onto `{}`", lts.label_name(e.label_map[i])));
        }
    }
    for &(s, l, t) in &p.arcs {
        if !has_edge(lts, e.state_map[s], e.label_map[l], e.state_map[t]) {
            return Err(format!("mandatory arc {} {} {} is missing", p.states[s], p.labels[l], p.states[t]));
        }
    }
    for &(s, l) in &p.exclusions {
        if lts.enables(e.state_map[s], e.label_map[l]) {
            return Err(format!("excluded arc {} {} is present", p.states[s], p.labels[l]));
        }
    }
    Ok(())
}

struct Search<'a> {
    p: &'a Pattern,
    lts: &'a Lts,
    label_order: Vec<usize>,
    state_order: Vec<usize>,
    f1: Vec<Option<usize>>,
    f2: Vec<Option<usize>>,
    found: Vec<Embedding>,
    limit: usize,
}

impl Search<'_> {
    fn labels(&mut self, k: usize) {
        if self.found.len() >= self.limit {
            return;
        }
        if k == self.label_order.len() {
            self.states(0);
            return;
        }
        let pl = self.label_order[k];
        for l in 0..self.lts.labels().len() {
            if self.f2.contains(&Some(l)) {
                continue;
            }
            self.f2[pl] = Some(l);
            self.labels(k + 1);
            self.f2[pl] = None;
            if self.found.len() >= self.limit {
                return;
            }
        }
    }

    fn consistent(&self, ps: usize) -> bool {
        let f1 = &self.f1;
        let f2 = |l: usize| self.f2[l].expect("labels are assigned first");
        let Some(s) = f1[ps] else { return true };
        for &(a, l, b) in &self.p.arcs {
            if a != ps && b != ps {
                continue;
            }
            if let (Some(x), Some(y)) = (f1[a], f1[b]) {
                if !has_edge(self.lts, x, f2(l), y) {
                    return false;
                }
            }
        }
        self.p.exclusions.iter().all(|&(a, l)| a != ps || !self.lts.enables(s, f2(l)))
    }

    fn candidates(&self, ps: usize) -> Vec<usize> {
        let f2 = |l: usize| self.f2[l].expect("labels are assigned first");
        for &(a, l, b) in &self.p.arcs {
            if b == ps {
                if let Some(x) = self.f1[a] {
                    let lab = f2(l);
                    return self.lts.out(x).iter().filter(|&&(m, _)| m == lab).map(|&(_, t)| t).collect();
                }
            }
        }
        (0..self.lts.state_count()).collect()
    }

    fn states(&mut self, k: usize) {
        if self.found.len() >= self.limit {
            return;
        }
        if k == self.state_order.len() {
            self.found.push(Embedding {
                state_map: self.f1.iter().map(|x| x.expect("complete")).collect(),
                label_map: self.f2.iter().map(|x| x.expect("complete")).collect(),
            });
            return;
        }
        let ps = self.state_order[k];
        for s in self.candidates(ps) {
            self.f1[ps] = Some(s);
            if self.consistent(ps) {
                self.states(k + 1);
            }
            self.f1[ps] = None;
            if self.found.len() >= self.limit {
                return;
            }
        }
    }
}

/// Up to `limit` embeddings in canonical search order: labels first, in
/// declaration order, then states, most constrained first, ties by
/// declaration order.
pub fn all_embeddings(p: &Pattern, lts: &Lts, limit: usize) -> Vec<Embedding> {
    let mut state_weight = alloc::vec![0usize; p.states.len()];
    for &(s, _, t) in &p.arcs {
        state_weight[s] += 2;
        state_weight[t] += 1;
    }
    for &(s, _) in &p.exclusions {
        state_weight[s] += 1;
    }
    // Labels keep declaration order so that a pattern whose labels are named
    // like the LTS's is first tried with the identity.
    let label_order: Vec<usize> = (0..p.labels.len()).collect();
    // Sources of arcs come before their targets so targets draw candidates
    // from the successor lists.
    let mut state_order: Vec<usize> = (0..p.states.len()).collect();
    state_order.sort_by_key(|&s| (core::cmp::Reverse(state_weight[s]), s));
    let mut search = Search {
        p,
        lts,
        label_order,
        state_order,
        f1: alloc::vec![None; p.states.len()],
        f2: alloc::vec![None; p.labels.len()],
        found: Vec::new(),
        limit,
    };
    if p.labels.len() <= lts.labels().len() {
        search.labels(0);
    }
    search.found
}

/// The canonically first embedding of `p` into `lts`, if any.
pub fn find_embedding(p: &Pattern, lts: &Lts) -> Option<Embedding> {
    all_embeddings(p, lts, 1).into_iter().next()
}

/// What an embedded built-in pattern says about a net whose reachability
/// graph the LTS is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Consequence {
    NotPersistent,
    NotDissymmetricChoice,
}

impl fmt::Display for Consequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Consequence::NotPersistent => "net nonpersistent",
            Consequence::NotDissymmetricChoice => "net not DC",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recognition {
    pub found: bool,
    pub embedding: Option<Embedding>,
    /// Present only when the pattern was found; absence proves nothing.
    pub consequence: Option<Consequence>,
}

/// Looks for a built-in pattern. The caller guarantees `lts` is (isomorphic
/// to) the reachability graph of a net.
pub fn recognize(lts: &Lts, name: &str) -> Result<Recognition> {
    let p = builtin_pattern(name)?;
    let consequence = match name {
        "nonpers" => Consequence::NotPersistent,
        _ => Consequence::NotDissymmetricChoice,
    };
    let embedding = find_embedding(&p, lts);
    Ok(Recognition { found: embedding.is_some(), consequence: embedding.as_ref().map(|_| consequence), embedding })
}

/// Every object built while deriving a non-DC embedding. State fields are
/// indices into `rg`.
#[derive(Debug, Clone)]
pub struct NonDcDerivation {
    pub rg: Lts,
    pub embedding: Embedding,
    pub delta: FiringSequence,
    pub a: TransId,
    pub b: TransId,
    pub x: TransId,
    pub y: TransId,
    pub m: usize,
    pub m1: usize,
    pub m2: usize,
    pub j1: usize,
    pub j2: usize,
    pub k1: usize,
    pub k2: usize,
}

impl NonDcDerivation {
    /// The inequalities that hold for every derived embedding in a pure
    /// plain net, each as `(description, holds)`.
    pub fn near_injectivity(&self) -> [(&'static str, bool); 12] {
        let (m, m1, m2, j1, j2, k1, k2) = (self.m, self.m1, self.m2, self.j1, self.j2, self.k1, self.k2);
        [
            ("M != M1", m != m1),
            ("J1 != K1", j1 != k1),
            ("J1 != M", j1 != m),
            ("K1 != M1", k1 != m1),
            ("M != K1", m != k1),
            ("J1 != M1", j1 != m1),
            ("M != M2", m != m2),
            ("J2 != K2", j2 != k2),
            ("J2 != M", j2 != m),
            ("K2 != M2", k2 != m2),
            ("M != K2", m != k2),
            ("J2 != M2", j2 != m2),
        ]
    }
}

struct Side {
    corner_word: FiringSequence,
    k: Marking,
    j: Marking,
    last: TransId,
}

/// One half of the construction: a persistent sequence to the corner
/// reached by `δ leg`, and the unifying marking `J`.
fn derive_side(
    net: &Net,
    delta: &FiringSequence,
    leg: TransId,
    other: TransId,
    search_bound: usize,
    limits: &Limits,
    stuck: &mut Vec<String>,
) -> Result<Option<Side>> {
    let m0 = net.initial_marking();
    let mut dl = delta.clone();
    dl.push(leg);
    let target = parikh(&dl, net.transition_count());
    let budget = Limits { class_guard: search_bound, ..*limits };
    let witnesses = persistent_parikh_equivalents(net, m0, &target, 16, &budget).map_err(|e| match e {
        Error::ResourceExceeded(msg) => Error::ResourceExceeded(format!(
            "{msg} while looking for a persistent equivalent of `{}`",
            net.show_word(&dl)
        )),
        other => other,
    })?;
    if witnesses.is_empty() {
        return Err(Error::Precondition(format!(
            "`{}` has no persistent Parikh equivalent, so the tilde-SPE property fails",
            net.show_word(&dl)
        )));
    }
    let mut ends_in_other = 0;
    let total = witnesses.len();
    for w in witnesses {
        let last = *w.last().expect("nonempty");
        if last == leg {
            continue;
        }
        // With the other leg last, the corner state may still enable it and
        // the pattern's exclusions cannot be met.
        if last == other {
            ends_in_other += 1;
            continue;
        }
        let k = net.fire_sequence(m0, &FiringSequence(w[..w.len() - 1].to_vec()))?;
        for (alpha, beta) in [(&w, &dl), (&dl, &w)] {
            match unify_parikh_equivalent(net, alpha, beta, false, limits) {
                Ok(u) => return Ok(Some(Side { corner_word: w.clone(), k, j: u.j, last })),
                Err(Error::NoWitness(_)) | Err(Error::Precondition(_)) => continue,
                Err(e) => return Err(e),
            }
        }
    }
    if ends_in_other == total {
        stuck.push(format!(
            "every persistent equivalent of `{}` ends with `{}`",
            net.show_word(&dl),
            net.transition_name(other)
        ));
    }
    Ok(None)
}

/// Replays the constructive argument that a pure, plain, nonpersistent net
/// with the tilde-SPE property embeds `nonDC` in its reachability graph.
///
/// `spe_bound` bounds the tilde-SPE pre-check; `search_bound` is the node
/// budget of each persistent-equivalent search.
pub fn derive_nondc_embedding(
    net: &Net,
    spe_bound: usize,
    search_bound: usize,
    limits: &Limits,
) -> Result<NonDcDerivation> {
    let r = classify_structure(net);
    if !r.plain.holds() || !r.pure.holds() {
        return Err(Error::unsupported("the derivation needs a pure and plain net"));
    }
    let (rg, report) = build_rg(net, limits.max_states)?;
    if !report.bounded() {
        return Err(Error::ResourceExceeded(format!(
            "reachability graph exceeds {} states",
            report.cutoff
        )));
    }
    if persistence_check(&rg).persistent {
        return Err(Error::Precondition(format!("net `{}` is persistent", net.name())));
    }
    let spe = spe_check(net, spe_bound, SpeMode::Parikh, limits)?;
    if let Some(cx) = spe.counterexample {
        return Err(Error::Precondition(format!(
            "tilde-SPE is refuted by `{}`",
            net.show_word(&cx)
        )));
    }

    let markings = rg.payload().expect("reachability graphs carry markings");
    let index: HashMap<&Marking, usize> = markings.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let state_of = |m: &Marking| {
        index
            .get(m)
            .copied()
            .ok_or_else(|| Error::InvariantBroken(format!("marking {m} is not in the reachability graph")))
    };

    // BFS tree: states are numbered in discovery order, so the parent of
    // each state is the source of its first incoming edge.
    let mut parent: Vec<Option<(usize, usize)>> = alloc::vec![None; rg.state_count()];
    for &(s, l, t) in rg.edges() {
        if t != rg.initial() && parent[t].is_none() && s < t {
            parent[t] = Some((s, l));
        }
    }
    let path_to = |mut s: usize| {
        let mut w = Vec::new();
        while let Some((p, l)) = parent[s] {
            w.push(TransId(l));
            s = p;
        }
        w.reverse();
        FiringSequence(w)
    };
    let dist = rg.distances();
    let conflict = |s: usize| -> Vec<(TransId, TransId)> {
        let mut pairs = Vec::new();
        for &(a, s1) in rg.out(s) {
            for &(b, s2) in rg.out(s) {
                if a < b && !rg.enables(s1, b) && !rg.enables(s2, a) {
                    pairs.push((TransId(a), TransId(b)));
                }
            }
        }
        pairs
    };
    let nonpersistent: Vec<usize> = (0..rg.state_count())
        .filter(|&s| {
            rg.out(s).iter().any(|&(a, s1)| rg.out(s).iter().any(|&(b, _)| a != b && !rg.enables(s1, b)))
        })
        .collect();
    let nearest = nonpersistent.iter().filter_map(|&s| dist[s]).min().expect("nonpersistent graph");
    let pattern = builtin_pattern("nonDC")?;
    let mut stuck = Vec::new();

    for &m in nonpersistent.iter().filter(|&&s| dist[s] == Some(nearest)) {
        let delta = path_to(m);
        for (a, b) in conflict(m) {
            let Some(lower) = derive_side(net, &delta, a, b, search_bound, limits, &mut stuck)? else { continue };
            let Some(upper) = derive_side(net, &delta, b, a, search_bound, limits, &mut stuck)? else { continue };
            let m1 = rg.succ(m, a.0).expect("leg a");
            let m2 = rg.succ(m, b.0).expect("leg b");
            let (j1, j2) = (state_of(&lower.j)?, state_of(&upper.j)?);
            let (k1, k2) = (state_of(&lower.k)?, state_of(&upper.k)?);
            let embedding = Embedding { state_map: alloc::vec![j1, j2, k1, m, k2, m1, m2], label_map: alloc::vec![a.0, b.0] };
            validate_embedding(&pattern, &rg, &embedding).map_err(|why| {
                Error::InvariantBroken(format!(
                    "derived embedding is invalid ({why}); lower witness `{}`, upper witness `{}`",
                    net.show_word(&lower.corner_word),
                    net.show_word(&upper.corner_word)
                ))
            })?;
            let d = NonDcDerivation {
                rg: rg.clone(),
                embedding,
                delta,
                a,
                b,
                x: lower.last,
                y: upper.last,
                m,
                m1,
                m2,
                j1,
                j2,
                k1,
                k2,
            };
            if let Some((what, _)) = d.near_injectivity().iter().find(|(_, ok)| !ok) {
                return Err(Error::InvariantBroken(format!("derived embedding violates {what}")));
            }
            return Ok(d);
        }
    }
    if !stuck.is_empty() {
        return Err(Error::NoWitness(stuck.join("; ")));
    }
    Err(Error::NoWitness(format!(
        "no nearest nonpersistent marking of `{}` yielded a unifiable pair of persistent witnesses",
        net.name()
    )))
}
