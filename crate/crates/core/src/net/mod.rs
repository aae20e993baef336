//! Place/transition nets, markings and the firing rule.

mod classes;
pub(crate) mod ops;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::sequences::FiringSequence;

pub use classes::{classify_structure, ClassReport, Flag, Witness};
pub use ops::{concurrently_enables, disjoint_sum, project_sequence, reverse_dual, Run, Side, SumTags};

/// Dense index of a place, assigned in declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlaceId(pub usize);

/// Dense index of a transition, assigned in declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TransId(pub usize);

/// Token vector indexed by place.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Marking(pub Vec<u32>);

impl Marking {
    pub fn zero(places: usize) -> Self {
        Marking(alloc::vec![0; places])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, p: PlaceId) -> u32 {
        self.0[p.0]
    }

    /// Pointwise `self ≤ other`.
    pub fn covered_by(&self, other: &Marking) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for Marking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// A marked place/transition net `(P, T, F, M0)`.
///
/// Arc weights are stored sparsely per transition, sorted by place index.
/// Nets are immutable once built; use [`NetBuilder`] to construct one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Net {
    name: String,
    places: Vec<String>,
    transitions: Vec<String>,
    pre: Vec<Vec<(PlaceId, u32)>>,
    post: Vec<Vec<(PlaceId, u32)>>,
    consumers: Vec<Vec<TransId>>,
    producers: Vec<Vec<TransId>>,
    initial: Marking,
    structural_only: bool,
    tags: Option<SumTags>,
}

impl Net {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn place_count(&self) -> usize {
        self.places.len()
    }

    pub fn transition_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn places(&self) -> impl Iterator<Item = PlaceId> + '_ {
        (0..self.places.len()).map(PlaceId)
    }

    pub fn transitions(&self) -> impl Iterator<Item = TransId> + '_ {
        (0..self.transitions.len()).map(TransId)
    }

    pub fn place_name(&self, p: PlaceId) -> &str {
        &self.places[p.0]
    }

    pub fn transition_name(&self, t: TransId) -> &str {
        &self.transitions[t.0]
    }

    pub fn place_names(&self) -> &[String] {
        &self.places
    }

    pub fn transition_names(&self) -> &[String] {
        &self.transitions
    }

    pub fn place(&self, name: &str) -> Result<PlaceId> {
        self.places
            .iter()
            .position(|p| p == name)
            .map(PlaceId)
            .ok_or_else(|| Error::Unknown { kind: "place", name: name.to_string() })
    }

    pub fn transition(&self, name: &str) -> Result<TransId> {
        self.transitions
            .iter()
            .position(|t| t == name)
            .map(TransId)
            .ok_or_else(|| Error::Unknown { kind: "transition", name: name.to_string() })
    }

    pub fn initial_marking(&self) -> &Marking {
        &self.initial
    }

    /// Set when the net came out of [`reverse_dual`]; such nets have no
    /// meaningful marking and behavioural operations refuse them.
    pub fn is_structural_only(&self) -> bool {
        self.structural_only
    }

    pub fn sum_tags(&self) -> Option<&SumTags> {
        self.tags.as_ref()
    }

    /// `F(., t)` as sorted `(place, weight)` pairs.
    pub fn pre(&self, t: TransId) -> &[(PlaceId, u32)] {
        &self.pre[t.0]
    }

    /// `F(t, .)` as sorted `(place, weight)` pairs.
    pub fn post(&self, t: TransId) -> &[(PlaceId, u32)] {
        &self.post[t.0]
    }

    /// `p•`, in transition order.
    pub fn consumers(&self, p: PlaceId) -> &[TransId] {
        &self.consumers[p.0]
    }

    /// `•p`, in transition order.
    pub fn producers(&self, p: PlaceId) -> &[TransId] {
        &self.producers[p.0]
    }

    pub fn pre_weight(&self, p: PlaceId, t: TransId) -> u32 {
        weight_in(&self.pre[t.0], p)
    }

    pub fn post_weight(&self, t: TransId, p: PlaceId) -> u32 {
        weight_in(&self.post[t.0], p)
    }

    pub fn arc_count(&self) -> usize {
        self.pre.iter().chain(&self.post).map(Vec::len).sum()
    }

    /// Preset `•t` as place ids.
    pub fn preset(&self, t: TransId) -> Vec<PlaceId> {
        self.pre[t.0].iter().map(|&(p, _)| p).collect()
    }

    /// Effect of firing `t` on place `p`.
    pub fn effect(&self, t: TransId, p: PlaceId) -> i64 {
        i64::from(self.post_weight(t, p)) - i64::from(self.pre_weight(p, t))
    }

    /// Same places, transitions and weights, ignoring name, marking and tags.
    pub fn same_structure(&self, other: &Net) -> bool {
        self.places == other.places
            && self.transitions == other.transitions
            && self.pre == other.pre
            && self.post == other.post
    }

    /// A copy of this net with a different initial marking.
    pub fn with_marking(&self, m: Marking) -> Result<Net> {
        self.check_marking(&m)?;
        let mut n = self.clone();
        n.initial = m;
        n.structural_only = false;
        Ok(n)
    }

    pub fn renamed(&self, name: &str) -> Net {
        let mut n = self.clone();
        n.name = name.to_string();
        n
    }

    fn check_transition(&self, t: TransId) -> Result<()> {
        if t.0 < self.transitions.len() {
            Ok(())
        } else {
            Err(Error::Unknown { kind: "transition", name: format!("#{}", t.0) })
        }
    }

    pub(crate) fn check_marking(&self, m: &Marking) -> Result<()> {
        if m.len() == self.places.len() {
            Ok(())
        } else {
            Err(Error::input(format!(
                "marking has {} entries, net `{}` has {} places",
                m.len(),
                self.name,
                self.places.len()
            )))
        }
    }

    pub(crate) fn check_behavioural(&self) -> Result<()> {
        if self.structural_only {
            Err(Error::input(format!(
                "net `{}` is structural only (a reverse dual) and has no firing semantics",
                self.name
            )))
        } else {
            Ok(())
        }
    }

    /// `∀p: m(p) ≥ F(p,t)`.
    pub fn enabled(&self, m: &Marking, t: TransId) -> Result<bool> {
        self.check_behavioural()?;
        self.check_transition(t)?;
        self.check_marking(m)?;
        Ok(self.is_enabled(m, t))
    }

    /// Unchecked variant of [`Net::enabled`]; panics on out-of-range ids.
    pub fn is_enabled(&self, m: &Marking, t: TransId) -> bool {
        self.pre[t.0].iter().all(|&(p, w)| m.0[p.0] >= w)
    }

    fn deficient(&self, m: &Marking, t: TransId) -> Option<(PlaceId, u32, u32)> {
        self.pre[t.0]
            .iter()
            .find(|&&(p, w)| m.0[p.0] < w)
            .map(|&(p, w)| (p, m.0[p.0], w))
    }

    /// Enabled transitions at `m`, in declaration order.
    pub fn enabled_set(&self, m: &Marking) -> Vec<TransId> {
        self.transitions().filter(|&t| self.is_enabled(m, t)).collect()
    }

    pub fn is_deadlock(&self, m: &Marking) -> bool {
        self.transitions().all(|t| !self.is_enabled(m, t))
    }

    /// Fires `t` at `m`.
    pub fn fire(&self, m: &Marking, t: TransId) -> Result<Marking> {
        self.check_behavioural()?;
        self.check_transition(t)?;
        self.check_marking(m)?;
        if let Some((p, have, need)) = self.deficient(m, t) {
            return Err(Error::NotEnabled {
                transition: self.transitions[t.0].clone(),
                place: self.places[p.0].clone(),
                have,
                need,
            });
        }
        self.fire_unchecked(m, t)
    }

    /// Fires an enabled transition without re-validating the inputs.
    pub fn fire_unchecked(&self, m: &Marking, t: TransId) -> Result<Marking> {
        let mut next = m.clone();
        for &(p, w) in &self.pre[t.0] {
            next.0[p.0] -= w;
        }
        for &(p, w) in &self.post[t.0] {
            next.0[p.0] = next.0[p.0].checked_add(w).ok_or_else(|| {
                Error::ResourceExceeded(format!("token count overflow on place `{}`", self.places[p.0]))
            })?;
        }
        Ok(next)
    }

    /// Fires `seq` left to right; the empty sequence returns `m`.
    pub fn fire_sequence(&self, m: &Marking, seq: &FiringSequence) -> Result<Marking> {
        self.check_behavioural()?;
        self.check_marking(m)?;
        let mut cur = m.clone();
        for (index, &t) in seq.iter().enumerate() {
            self.check_transition(t)?;
            if let Some((p, have, need)) = self.deficient(&cur, t) {
                return Err(Error::NotFirable {
                    index,
                    transition: self.transitions[t.0].clone(),
                    place: self.places[p.0].clone(),
                    have,
                    need,
                });
            }
            cur = self.fire_unchecked(&cur, t)?;
        }
        Ok(cur)
    }

    /// All markings visited by `seq`, starting with `m` itself.
    pub fn trace(&self, m: &Marking, seq: &FiringSequence) -> Result<Vec<Marking>> {
        self.check_behavioural()?;
        self.check_marking(m)?;
        let mut out = Vec::with_capacity(seq.len() + 1);
        out.push(m.clone());
        for (index, &t) in seq.iter().enumerate() {
            self.check_transition(t)?;
            let cur = out.last().expect("nonempty");
            if let Some((p, have, need)) = self.deficient(cur, t) {
                return Err(Error::NotFirable {
                    index,
                    transition: self.transitions[t.0].clone(),
                    place: self.places[p.0].clone(),
                    have,
                    need,
                });
            }
            let next = self.fire_unchecked(cur, t)?;
            out.push(next);
        }
        Ok(out)
    }

    /// Parses a whitespace-separated word of transition names.
    pub fn word(&self, text: &str) -> Result<FiringSequence> {
        text.split_whitespace()
            .map(|w| self.transition(w))
            .collect::<Result<Vec<_>>>()
            .map(FiringSequence::from)
    }

    /// Renders a sequence as space-separated names; ε for the empty word.
    pub fn show_word(&self, seq: &FiringSequence) -> String {
        if seq.is_empty() {
            return "ε".to_string();
        }
        let mut out = String::new();
        for (i, &t) in seq.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&self.transitions[t.0]);
        }
        out
    }

    /// Renders a marking as `(p:n, ...)` listing every place.
    pub fn show_marking(&self, m: &Marking) -> String {
        let mut out = String::from("(");
        for (i, v) in m.0.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            out.push_str(&format!("{}:{}", self.places[i], v));
        }
        out.push(')');
        out
    }
}

fn weight_in(arcs: &[(PlaceId, u32)], p: PlaceId) -> u32 {
    arcs.binary_search_by_key(&p, |&(q, _)| q).map(|i| arcs[i].1).unwrap_or(0)
}

/// Incremental constructor for [`Net`].
#[derive(Debug, Clone, Default)]
pub struct NetBuilder {
    name: String,
    places: Vec<String>,
    initial: Vec<u32>,
    transitions: Vec<String>,
    pre: Vec<Vec<(PlaceId, u32)>>,
    post: Vec<Vec<(PlaceId, u32)>>,
}

impl NetBuilder {
    pub fn new(name: &str) -> Self {
        NetBuilder { name: name.to_string(), ..Default::default() }
    }

    fn taken(&self, id: &str) -> bool {
        self.places.iter().any(|p| p == id) || self.transitions.iter().any(|t| t == id)
    }

    pub fn place(&mut self, id: &str, tokens: u32) -> Result<PlaceId> {
        if self.taken(id) {
            return Err(Error::Duplicate(id.to_string()));
        }
        self.places.push(id.to_string());
        self.initial.push(tokens);
        Ok(PlaceId(self.places.len() - 1))
    }

    pub fn transition(&mut self, id: &str) -> Result<TransId> {
        if self.taken(id) {
            return Err(Error::Duplicate(id.to_string()));
        }
        self.transitions.push(id.to_string());
        self.pre.push(Vec::new());
        self.post.push(Vec::new());
        Ok(TransId(self.transitions.len() - 1))
    }

    pub fn place_id(&self, id: &str) -> Option<PlaceId> {
        self.places.iter().position(|p| p == id).map(PlaceId)
    }

    pub fn transition_id(&self, id: &str) -> Option<TransId> {
        self.transitions.iter().position(|t| t == id).map(TransId)
    }

    /// Adds `F(p, t) = w`.
    pub fn input(&mut self, p: PlaceId, t: TransId, w: u32) -> Result<()> {
        let name = format!("{} -> {}", self.places[p.0], self.transitions[t.0]);
        insert_arc(&mut self.pre[t.0], p, w, name)
    }

    /// Adds `F(t, p) = w`.
    pub fn output(&mut self, t: TransId, p: PlaceId, w: u32) -> Result<()> {
        let name = format!("{} -> {}", self.transitions[t.0], self.places[p.0]);
        insert_arc(&mut self.post[t.0], p, w, name)
    }

    /// Adds an arc by identifier; the direction is read off the endpoint kinds.
    pub fn arc(&mut self, from: &str, to: &str, w: u32) -> Result<()> {
        match (self.place_id(from), self.transition_id(from)) {
            (Some(p), _) => {
                let t = self.transition_id(to).ok_or_else(|| unknown_endpoint(to, "transition"))?;
                self.input(p, t, w)
            }
            (_, Some(t)) => {
                let p = self.place_id(to).ok_or_else(|| unknown_endpoint(to, "place"))?;
                self.output(t, p, w)
            }
            _ => Err(Error::Unknown { kind: "node", name: from.to_string() }),
        }
    }

    pub fn build(self) -> Net {
        Net::assemble(self.name, self.places, self.transitions, self.pre, self.post, Marking(self.initial))
    }
}

fn unknown_endpoint(name: &str, kind: &'static str) -> Error {
    Error::Unknown { kind, name: name.to_string() }
}

fn insert_arc(arcs: &mut Vec<(PlaceId, u32)>, p: PlaceId, w: u32, name: String) -> Result<()> {
    if w == 0 {
        return Err(Error::input(format!("arc {name} has weight 0; omit the arc instead")));
    }
    match arcs.binary_search_by_key(&p, |&(q, _)| q) {
        Ok(_) => Err(Error::Duplicate(format!("arc {name}"))),
        Err(i) => {
            arcs.insert(i, (p, w));
            Ok(())
        }
    }
}

impl Net {
    pub(crate) fn assemble(
        name: String,
        places: Vec<String>,
        transitions: Vec<String>,
        pre: Vec<Vec<(PlaceId, u32)>>,
        post: Vec<Vec<(PlaceId, u32)>>,
        initial: Marking,
    ) -> Net {
        let mut consumers = alloc::vec![Vec::new(); places.len()];
        let mut producers = alloc::vec![Vec::new(); places.len()];
        for (t, arcs) in pre.iter().enumerate() {
            for &(p, _) in arcs {
                consumers[p.0].push(TransId(t));
            }
        }
        for (t, arcs) in post.iter().enumerate() {
            for &(p, _) in arcs {
                producers[p.0].push(TransId(t));
            }
        }
        Net {
            name,
            places,
            transitions,
            pre,
            post,
            consumers,
            producers,
            initial,
            structural_only: false,
            tags: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testnets::fig1;

    #[test]
    fn fig1_shape() {
        let n = fig1();
        assert_eq!(n.place_count(), 5);
        assert_eq!(n.transition_count(), 4);
        assert_eq!(n.arc_count(), 8);
        assert!(n.pre.iter().chain(&n.post).flatten().all(|&(_, w)| w == 1));
    }

    #[test]
    fn enabling_at_m0() {
        let n = fig1();
        let m0 = n.initial_marking();
        assert!(n.enabled(m0, n.transition("c").unwrap()).unwrap());
        assert!(!n.enabled(m0, n.transition("a").unwrap()).unwrap());
        let zero = Marking::zero(5);
        assert!(n.transitions().all(|t| !n.is_enabled(&zero, t)));
    }

    #[test]
    fn firing_c_gives_m1() {
        let n = fig1();
        let m1 = n.fire(n.initial_marking(), n.transition("c").unwrap()).unwrap();
        assert_eq!(m1, Marking(alloc::vec![0, 1, 1, 1, 0]));
    }

    #[test]
    fn firing_disabled_reports_place() {
        let n = fig1();
        let err = n.fire(n.initial_marking(), n.transition("a").unwrap()).unwrap_err();
        assert!(matches!(err, Error::NotEnabled { ref place, .. } if place == "p2"));
    }

    #[test]
    fn sequences_fold() {
        let n = fig1();
        let m0 = n.initial_marking();
        let m6 = Marking(alloc::vec![0, 0, 0, 0, 1]);
        assert_eq!(n.fire_sequence(m0, &n.word("c d a").unwrap()).unwrap(), m6);
        assert_eq!(n.fire_sequence(m0, &FiringSequence::default()).unwrap(), *m0);
        let err = n.fire_sequence(m0, &n.word("a").unwrap()).unwrap_err();
        assert!(matches!(err, Error::NotFirable { index: 0, .. }));
    }

    #[test]
    fn weighted_impure_firing() {
        let mut b = NetBuilder::new("confuse");
        let p = b.place("p", 2).unwrap();
        let _x = b.transition("x").unwrap();
        let y = b.transition("y").unwrap();
        b.arc("p", "x", 1).unwrap();
        b.arc("p", "y", 2).unwrap();
        b.arc("y", "p", 1).unwrap();
        let n = b.build();
        assert_eq!(n.fire(n.initial_marking(), y).unwrap().get(p), 1);
    }

    #[test]
    fn side_condition_loop_keeps_marking() {
        let mut b = NetBuilder::new("loop");
        b.place("p", 1).unwrap();
        b.transition("t").unwrap();
        b.arc("p", "t", 1).unwrap();
        b.arc("t", "p", 1).unwrap();
        let n = b.build();
        let m = n.initial_marking().clone();
        assert_eq!(n.fire(&m, TransId(0)).unwrap(), m);
    }

    #[test]
    fn builder_rejects_bad_input() {
        let mut b = NetBuilder::new("x");
        b.place("p", 0).unwrap();
        assert!(matches!(b.transition("p"), Err(Error::Duplicate(_))));
        b.transition("t").unwrap();
        assert!(b.arc("p", "t", 0).is_err());
        b.arc("p", "t", 1).unwrap();
        assert!(matches!(b.arc("p", "t", 2), Err(Error::Duplicate(_))));
        assert!(b.arc("q", "t", 1).is_err());
    }

    #[test]
    fn unknown_transition_is_an_input_error() {
        let n = fig1();
        assert!(n.enabled(n.initial_marking(), TransId(9)).is_err());
        assert!(n.transition("zz").is_err());
    }
}
