//! Labelled transition systems, reachability graphs and their properties.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::error::{Error, Result};
use crate::net::{Marking, Net};

/// `(S, →, T, s0)` with dense state and label indices. Reachability graphs
/// additionally carry the marking of every state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lts {
    name: String,
    states: Vec<String>,
    labels: Vec<String>,
    edges: Vec<(usize, usize, usize)>,
    initial: usize,
    payload: Option<Vec<Marking>>,
    out: Vec<Vec<(usize, usize)>>,
}

impl Lts {
    /// Validates and indexes an LTS. Duplicate edges are rejected.
    pub fn new(
        name: &str,
        states: Vec<String>,
        labels: Vec<String>,
        edges: Vec<(usize, usize, usize)>,
        initial: usize,
        payload: Option<Vec<Marking>>,
    ) -> Result<Lts> {
        if initial >= states.len() {
            return Err(Error::input("initial state is not declared"));
        }
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
        let mut out = alloc::vec![Vec::new(); states.len()];
        for &(s, l, t) in &edges {
            if s >= states.len() || t >= states.len() || l >= labels.len() {
                return Err(Error::input("edge refers to an undeclared state or label"));
            }
            if out[s].contains(&(l, t)) {
                return Err(Error::Duplicate(format!("edge {} {} {}", states[s], labels[l], states[t])));
            }
            out[s].push((l, t));
        }
        for o in &mut out {
            o.sort_unstable();
        }
        if let Some(p) = &payload {
            if p.len() != states.len() {
                return Err(Error::input("payload length differs from the state count"));
            }
            let mut seen: HashMap<&Marking, usize> = HashMap::new();
            for (i, m) in p.iter().enumerate() {
                if let Some(j) = seen.insert(m, i) {
                    return Err(Error::input(format!("states {} and {} carry the same marking", states[j], states[i])));
                }
            }
        }
        Ok(Lts { name: name.to_string(), states, labels, edges, initial, payload, out })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn payload(&self) -> Option<&[Marking]> {
        self.payload.as_deref()
    }

    pub fn state_name(&self, s: usize) -> &str {
        &self.states[s]
    }

    pub fn label_name(&self, l: usize) -> &str {
        &self.labels[l]
    }

    pub fn state(&self, name: &str) -> Result<usize> {
        self.states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::Unknown { kind: "state", name: name.to_string() })
    }

    pub fn label(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == name)
    }

    /// Outgoing `(label, target)` pairs of `s`, sorted.
    pub fn out(&self, s: usize) -> &[(usize, usize)] {
        &self.out[s]
    }

    /// First `l`-successor of `s`.
    pub fn succ(&self, s: usize, l: usize) -> Option<usize> {
        self.out[s].iter().find(|&&(x, _)| x == l).map(|&(_, t)| t)
    }

    pub fn enables(&self, s: usize, l: usize) -> bool {
        self.out[s].iter().any(|&(x, _)| x == l)
    }

    /// Labels occurring on at least one edge, in label order.
    pub fn used_labels(&self) -> Vec<usize> {
        let mut used = alloc::vec![false; self.labels.len()];
        for &(_, l, _) in &self.edges {
            used[l] = true;
        }
        (0..self.labels.len()).filter(|&l| used[l]).collect()
    }

    /// Breadth-first distances from the initial state (`None` if unreachable).
    pub fn distances(&self) -> Vec<Option<usize>> {
        let mut dist = alloc::vec![None; self.states.len()];
        let mut queue = VecDeque::new();
        dist[self.initial] = Some(0);
        queue.push_back(self.initial);
        while let Some(s) = queue.pop_front() {
            let d = dist[s].expect("queued states have a distance");
            for &(_, t) in &self.out[s] {
                if dist[t].is_none() {
                    dist[t] = Some(d + 1);
                    queue.push_back(t);
                }
            }
        }
        dist
    }
}

/// Whether reachability-graph construction finished below the budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundedness {
    Bounded,
    CutoffReached,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub status: Boundedness,
    /// Largest token count seen on each place among the explored markings.
    pub place_bounds: Vec<u32>,
    pub max_bound: u32,
    /// Only decided when the graph is complete.
    pub safe: Option<bool>,
    pub state_count: usize,
    pub edge_count: usize,
    pub cutoff: usize,
}

impl BoundReport {
    pub fn bounded(&self) -> bool {
        self.status == Boundedness::Bounded
    }
}

/// Breadth-first reachability graph from the initial marking, firing
/// transitions in declaration order. States are named `M0, M1, …` in
/// discovery order. Exploration stops once `max_states` states exist and a
/// further one is found; the report then says `CutoffReached`.
pub fn build_rg(net: &Net, max_states: usize) -> Result<(Lts, BoundReport)> {
    net.check_behavioural()?;
    if max_states == 0 {
        return Err(Error::input("max_states must be at least 1"));
    }
    let m0 = net.initial_marking().clone();
    let mut index: HashMap<Marking, usize> = HashMap::new();
    let mut markings = alloc::vec![m0.clone()];
    index.insert(m0, 0);
    let mut edges = Vec::new();
    let mut cutoff = false;
    let mut head = 0;
    'bfs: while head < markings.len() {
        let m = markings[head].clone();
        for t in net.transitions() {
            if !net.is_enabled(&m, t) {
                continue;
            }
            let next = net.fire_unchecked(&m, t)?;
            let target = match index.get(&next) {
                Some(&i) => i,
                None => {
                    if markings.len() >= max_states {
                        cutoff = true;
                        break 'bfs;
                    }
                    let i = markings.len();
                    index.insert(next.clone(), i);
                    markings.push(next);
                    i
                }
            };
            edges.push((head, t.0, target));
        }
        head += 1;
    }

    let mut place_bounds = alloc::vec![0u32; net.place_count()];
    for m in &markings {
        for (b, &v) in place_bounds.iter_mut().zip(&m.0) {
            *b = (*b).max(v);
        }
    }
    let max_bound = place_bounds.iter().copied().max().unwrap_or(0);
    let states = (0..markings.len()).map(|i| format!("M{i}")).collect();
    let report = BoundReport {
        status: if cutoff { Boundedness::CutoffReached } else { Boundedness::Bounded },
        place_bounds,
        max_bound,
        safe: if cutoff { None } else { Some(max_bound <= 1) },
        state_count: markings.len(),
        edge_count: edges.len(),
        cutoff: max_states,
    };
    let lts = Lts::new(
        &format!("RG({})", net.name()),
        states,
        net.transition_names().to_vec(),
        edges,
        0,
        Some(markings),
    )?;
    Ok((lts, report))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LtsReport {
    pub finite: bool,
    pub totally_reachable: bool,
    /// No state has two outgoing edges with the same label.
    pub forward_deterministic: bool,
    /// No state has two incoming edges with the same label from different states.
    pub backward_deterministic: bool,
    pub deterministic: bool,
    pub deadlocks: Vec<usize>,
}

/// Structural properties. Determinism is checked as per-state label
/// functionality in both directions; for reachability graphs this
/// coincides with the Parikh-vector formulation.
pub fn lts_properties(lts: &Lts) -> LtsReport {
    let totally_reachable = lts.distances().iter().all(Option::is_some);
    let forward = (0..lts.state_count()).all(|s| {
        let o = lts.out(s);
        o.windows(2).all(|w| w[0].0 != w[1].0)
    });
    let mut incoming: HashMap<(usize, usize), usize> = HashMap::new();
    let mut backward = true;
    for &(s, l, t) in lts.edges() {
        if let Some(&prev) = incoming.get(&(t, l)) {
            if prev != s {
                backward = false;
            }
        } else {
            incoming.insert((t, l), s);
        }
    }
    LtsReport {
        finite: true,
        totally_reachable,
        forward_deterministic: forward,
        backward_deterministic: backward,
        deterministic: forward && backward,
        deadlocks: (0..lts.state_count()).filter(|&s| lts.out(s).is_empty()).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PersistenceVerdict {
    pub persistent: bool,
    /// `(state, t, u)`: both enabled at `state`, `u` not enabled after `t`
    /// (or the two orders do not meet again).
    pub witness: Option<(usize, usize, usize)>,
}

/// Scans states in order and label pairs in label order for a pair that
/// cannot be completed to a diamond.
pub fn persistence_check(lts: &Lts) -> PersistenceVerdict {
    for s in 0..lts.state_count() {
        let out = lts.out(s);
        for &(t, s1) in out {
            for &(u, s2) in out {
                if t == u {
                    continue;
                }
                let closes = lts
                    .out(s1)
                    .iter()
                    .filter(|&&(l, _)| l == u)
                    .any(|&(_, r)| lts.out(s2).iter().any(|&(l, r2)| l == t && r2 == r));
                if !closes {
                    return PersistenceVerdict { persistent: false, witness: Some((s, t, u)) };
                }
            }
        }
    }
    PersistenceVerdict { persistent: true, witness: None }
}

/// Why two LTS are not isomorphic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mismatch {
    LabelSets { only_left: Vec<String>, only_right: Vec<String> },
    /// The synchronised traversal diverged at `state` (of the left LTS) on `label`.
    Divergence { state: usize, label: String },
    StateCount { left: usize, right: usize },
}

/// Isomorphism between deterministic, totally reachable LTS. Returns the
/// state bijection (left index → right index) or the first divergence.
/// Label sets are compared on labels that occur on edges.
pub fn isomorphic(l1: &Lts, l2: &Lts) -> Result<core::result::Result<Vec<usize>, Mismatch>> {
    for l in [l1, l2] {
        let r = lts_properties(l);
        if !r.forward_deterministic {
            return Err(Error::unsupported(format!("LTS `{}` is not deterministic", l.name())));
        }
        if !r.totally_reachable {
            return Err(Error::unsupported(format!("LTS `{}` is not totally reachable", l.name())));
        }
    }
    let names = |l: &Lts| {
        let mut v: Vec<String> = l.used_labels().into_iter().map(|i| l.labels[i].clone()).collect();
        v.sort();
        v
    };
    let (n1, n2) = (names(l1), names(l2));
    if n1 != n2 {
        return Ok(Err(Mismatch::LabelSets {
            only_left: n1.iter().filter(|x| !n2.contains(x)).cloned().collect(),
            only_right: n2.iter().filter(|x| !n1.contains(x)).cloned().collect(),
        }));
    }
    if l1.state_count() != l2.state_count() {
        return Ok(Err(Mismatch::StateCount { left: l1.state_count(), right: l2.state_count() }));
    }
    let pairs: Vec<(usize, usize, &String)> = n1
        .iter()
        .map(|name| (l1.label(name).expect("used label"), l2.label(name).expect("used label"), name))
        .collect();
    let mut fwd = alloc::vec![usize::MAX; l1.state_count()];
    let mut bwd = alloc::vec![usize::MAX; l2.state_count()];
    fwd[l1.initial()] = l2.initial();
    bwd[l2.initial()] = l1.initial();
    let mut queue = VecDeque::from([l1.initial()]);
    while let Some(s) = queue.pop_front() {
        let s2 = fwd[s];
        for &(a, b, name) in &pairs {
            let diverge = || Mismatch::Divergence { state: s, label: name.clone() };
            match (l1.succ(s, a), l2.succ(s2, b)) {
                (None, None) => {}
                (Some(t1), Some(t2)) => {
                    if fwd[t1] == usize::MAX && bwd[t2] == usize::MAX {
                        fwd[t1] = t2;
                        bwd[t2] = t1;
                        queue.push_back(t1);
                    } else if fwd[t1] != t2 || bwd[t2] != t1 {
                        return Ok(Err(diverge()));
                    }
                }
                _ => return Ok(Err(diverge())),
            }
        }
    }
    Ok(Ok(fwd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testnets::*;

    #[test]
    fn fig1_rg_metrics() {
        let (g, r) = build_rg(&fig1(), 1000).unwrap();
        assert_eq!((g.state_count(), g.edge_count()), (8, 10));
        assert_eq!(r.safe, Some(true));
        assert!(r.bounded());
        let p = lts_properties(&g);
        assert!(p.deterministic && p.totally_reachable);
        let names: Vec<&str> = p.deadlocks.iter().map(|&s| g.state_name(s)).collect();
        assert_eq!(names, ["M6", "M7"]);
    }

    #[test]
    fn fig1_bfs_markings() {
        let (g, _) = build_rg(&fig1(), 1000).unwrap();
        let expect = [
            [1, 1, 0, 1, 0],
            [0, 1, 1, 1, 0],
            [1, 0, 0, 1, 1],
            [0, 1, 0, 0, 0],
            [0, 0, 1, 1, 1],
            [1, 0, 0, 0, 0],
            [0, 0, 0, 0, 1],
            [0, 0, 1, 0, 0],
        ];
        for (m, e) in g.payload().unwrap().iter().zip(expect) {
            assert_eq!(m.0, e);
        }
    }

    #[test]
    fn fig14_two_bounded() {
        let n = fig14();
        let (_, r) = build_rg(&n, 1000).unwrap();
        assert!(r.bounded());
        assert_eq!(r.max_bound, 2);
        assert_eq!(r.safe, Some(false));
        let p = n.place("p").unwrap();
        assert_eq!(r.place_bounds[p.0], 2);
        assert!(r.place_bounds.iter().enumerate().all(|(i, &b)| i == p.0 || b <= 1));
    }

    #[test]
    fn fig7_left_self_loops() {
        let (g, _) = build_rg(&fig7_left(), 1000).unwrap();
        assert_eq!((g.state_count(), g.edge_count()), (1, 2));
    }

    #[test]
    fn cutoff_is_reported() {
        let (_, r) = build_rg(&fig1(), 3).unwrap();
        assert_eq!(r.status, Boundedness::CutoffReached);
        assert_eq!(r.safe, None);
        assert!(r.state_count <= 3);
    }

    #[test]
    fn persistence_witnesses() {
        let (g, _) = build_rg(&fig1(), 1000).unwrap();
        let v = persistence_check(&g);
        let (s, t, u) = v.witness.unwrap();
        assert_eq!((g.state_name(s), g.label_name(t), g.label_name(u)), ("M4", "a", "b"));
        let (g5, _) = build_rg(&fig5(), 1000).unwrap();
        assert!(persistence_check(&g5).persistent);
        let (g6, _) = build_rg(&fig6(), 1000).unwrap();
        assert!(!persistence_check(&g6).persistent);
    }

    #[test]
    fn fig5_has_no_deadlock() {
        let (g, _) = build_rg(&fig5(), 1000).unwrap();
        assert_eq!(g.state_count(), 4);
        assert!(lts_properties(&g).deadlocks.is_empty());
    }

    #[test]
    fn single_state_deadlock() {
        let l = Lts::new("one", alloc::vec!["s".into()], Vec::new(), Vec::new(), 0, None).unwrap();
        assert_eq!(lts_properties(&l).deadlocks, [0]);
    }

    #[test]
    fn isomorphism_checks() {
        let (g1, _) = build_rg(&fig7_left(), 100).unwrap();
        let (g2, _) = build_rg(&fig7_right(), 100).unwrap();
        assert!(isomorphic(&g1, &g2).unwrap().is_ok());
        let (f1, _) = build_rg(&fig1(), 100).unwrap();
        let (f5, _) = build_rg(&fig5(), 100).unwrap();
        assert!(matches!(isomorphic(&f1, &f5).unwrap(), Err(Mismatch::LabelSets { .. })));
        assert_eq!(isomorphic(&f1, &f1).unwrap(), Ok((0..8).collect::<Vec<_>>()));
    }

    #[test]
    fn nondeterministic_input_is_unsupported() {
        let l = Lts::new(
            "nd",
            alloc::vec!["s".into(), "t".into(), "u".into()],
            alloc::vec!["a".into()],
            alloc::vec![(0, 0, 1), (0, 0, 2)],
            0,
            None,
        )
        .unwrap();
        assert!(matches!(isomorphic(&l, &l), Err(Error::UnsupportedClass(_))));
    }
}
