//! Finite firing sequences: Parikh vectors, persistence, permutation and
//! Parikh equivalence, the SPE deciders, diamond completion and
//! unification of Parikh-equivalent sequences.

mod diamond;
mod equiv;
mod spe;

use alloc::vec::Vec;
use core::ops::Deref;

use crate::error::Result;
use crate::net::{Marking, Net, TransId};

pub use diamond::{complete_diamond, nonpersistent_within, unify_parikh_equivalent, Diamond, Unification};
pub use equiv::{
    perm_class, perm_distance, perm_equivalent, persistent_parikh_equivalent, persistent_parikh_equivalents,
    persistent_perm_equivalent,
};
pub use spe::{spe_check, SpeMode, SpeStatus, SpeVerdict};
pub(crate) use equiv::walk_class;

/// A finite word over the transitions of a net.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FiringSequence(pub Vec<TransId>);

impl FiringSequence {
    pub fn push(&mut self, t: TransId) {
        self.0.push(t);
    }

    pub fn concat(&self, other: &FiringSequence) -> FiringSequence {
        let mut w = self.0.clone();
        w.extend_from_slice(&other.0);
        FiringSequence(w)
    }
}

impl From<Vec<TransId>> for FiringSequence {
    fn from(v: Vec<TransId>) -> Self {
        FiringSequence(v)
    }
}

impl Deref for FiringSequence {
    type Target = [TransId];
    fn deref(&self) -> &[TransId] {
        &self.0
    }
}

impl FromIterator<TransId> for FiringSequence {
    fn from_iter<I: IntoIterator<Item = TransId>>(iter: I) -> Self {
        FiringSequence(iter.into_iter().collect())
    }
}

/// Occurrence counts per transition, indexed densely.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ParikhVector(pub Vec<u32>);

impl ParikhVector {
    pub fn zero(transitions: usize) -> Self {
        ParikhVector(alloc::vec![0; transitions])
    }

    pub fn get(&self, t: TransId) -> u32 {
        self.0.get(t.0).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|&c| c as usize).sum()
    }

    /// `self - Ψ(t)`, or `None` if `t` does not occur.
    pub fn minus(&self, t: TransId) -> Option<ParikhVector> {
        let mut v = self.clone();
        let c = v.0.get_mut(t.0)?;
        *c = c.checked_sub(1)?;
        Some(v)
    }
}

/// Ψ(seq) over a net with `transitions` transitions.
pub fn parikh(seq: &FiringSequence, transitions: usize) -> ParikhVector {
    let width = seq.iter().map(|t| t.0 + 1).max().unwrap_or(0).max(transitions);
    let mut v = ParikhVector::zero(width);
    for t in seq.iter() {
        v.0[t.0] += 1;
    }
    v
}

/// Result of checking one sequence for persistence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqPersistenceVerdict {
    pub persistent: bool,
    /// Index of the first step that disables another transition.
    pub failing_index: Option<usize>,
    pub disabled_transition: Option<TransId>,
}

impl SeqPersistenceVerdict {
    pub(crate) fn persistent() -> Self {
        SeqPersistenceVerdict { persistent: true, failing_index: None, disabled_transition: None }
    }
}

/// First transition other than `t` that is enabled at `before` but not at `after`.
pub(crate) fn disabled_by_step(net: &Net, before: &Marking, t: TransId, after: &Marking) -> Option<TransId> {
    net.transitions()
        .find(|&u| u != t && net.is_enabled(before, u) && !net.is_enabled(after, u))
}

/// A step `m⟨t⟩` is persistent if it disables no other enabled transition.
pub fn step_is_persistent(net: &Net, m: &Marking, t: TransId) -> Result<bool> {
    let next = net.fire(m, t)?;
    Ok(disabled_by_step(net, m, t, &next).is_none())
}

/// Checks every step of `seq` fired from `m0`.
pub fn sequence_persistence(net: &Net, m0: &Marking, seq: &FiringSequence) -> Result<SeqPersistenceVerdict> {
    let trace = net.trace(m0, seq)?;
    Ok(persistence_of_trace(net, seq, &trace))
}

pub(crate) fn persistence_of_trace(net: &Net, seq: &[TransId], trace: &[Marking]) -> SeqPersistenceVerdict {
    for (i, &t) in seq.iter().enumerate() {
        if let Some(u) = disabled_by_step(net, &trace[i], t, &trace[i + 1]) {
            return SeqPersistenceVerdict {
                persistent: false,
                failing_index: Some(i),
                disabled_transition: Some(u),
            };
        }
    }
    SeqPersistenceVerdict::persistent()
}
