use alloc::format;
use alloc::vec::Vec;

use hashbrown::HashMap;

use super::{disabled_by_step, parikh, persistent_parikh_equivalent, persistent_perm_equivalent, FiringSequence};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::net::{Marking, Net, TransId};

/// Which equivalence the persistent witness must respect.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpeMode {
    /// Permutation equivalence.
    Permutation,
    /// Parikh equivalence (the tilde variant).
    Parikh,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpeStatus {
    /// No counterexample among the sequences up to the bound. Evidence only.
    HoldsUpToBound,
    /// A nonpersistent sequence without a persistent equivalent was found.
    Refuted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpeVerdict {
    pub mode: SpeMode,
    pub bound: usize,
    pub status: SpeStatus,
    pub counterexample: Option<FiringSequence>,
    /// Number of firing sequences enumerated (ε excluded).
    pub searched: usize,
}

impl SpeVerdict {
    pub fn holds(&self) -> bool {
        self.status == SpeStatus::HoldsUpToBound
    }
}

struct Entry {
    word: Vec<TransId>,
    marking: Marking,
    /// A persistent equivalent of `word` under the chosen mode, if known.
    witness: Option<Vec<TransId>>,
}

/// Enumerates the firing sequences from the initial marking of length at
/// most `bound`, shortest first and lexicographically within a length, and
/// asks for a persistent equivalent of each nonpersistent one. The first
/// sequence without one refutes the property.
///
/// A known persistent equivalent `π` of `σ` is reused for `σt` whenever the
/// step `t` is itself persistent: `πt` reaches the same marking and fires
/// the same step.
pub fn spe_check(net: &Net, bound: usize, mode: SpeMode, limits: &Limits) -> Result<SpeVerdict> {
    net.check_behavioural()?;
    if bound == 0 {
        return Err(Error::input("SPE bound must be at least 1"));
    }
    let n = net.transition_count();
    let m0 = net.initial_marking().clone();
    let mut level = alloc::vec![Entry { word: Vec::new(), marking: m0.clone(), witness: Some(Vec::new()) }];
    let mut parikh_seen: HashMap<Vec<u32>, bool> = HashMap::new();
    let mut searched = 0usize;

    for _ in 0..bound {
        let mut next_level = Vec::new();
        for e in &level {
            for t in net.transitions() {
                if !net.is_enabled(&e.marking, t) {
                    continue;
                }
                let next = net.fire_unchecked(&e.marking, t)?;
                let step_ok = disabled_by_step(net, &e.marking, t, &next).is_none();
                let mut word = e.word.clone();
                word.push(t);
                searched += 1;
                if searched > limits.max_sequences {
                    return Err(Error::ResourceExceeded(format!(
                        "more than {} firing sequences up to length {bound}",
                        limits.max_sequences
                    )));
                }
                let witness = match (&e.witness, step_ok) {
                    (Some(w), true) => {
                        let mut w = w.clone();
                        w.push(t);
                        Some(w)
                    }
                    _ => {
                        let seq = FiringSequence(word.clone());
                        let found = match mode {
                            SpeMode::Permutation => persistent_perm_equivalent(net, &m0, &seq, limits)?.map(|s| s.0),
                            SpeMode::Parikh => {
                                let psi = parikh(&seq, n);
                                match parikh_seen.get(&psi.0) {
                                    Some(false) => None,
                                    _ => {
                                        let r = persistent_parikh_equivalent(net, &m0, &psi, limits)?;
                                        parikh_seen.insert(psi.0, r.is_some());
                                        r.map(|s| s.0)
                                    }
                                }
                            }
                        };
                        if found.is_none() {
                            return Ok(SpeVerdict {
                                mode,
                                bound,
                                status: SpeStatus::Refuted,
                                counterexample: Some(seq),
                                searched,
                            });
                        }
                        found
                    }
                };
                next_level.push(Entry { word, marking: next, witness });
            }
        }
        if next_level.is_empty() {
            break;
        }
        level = next_level;
    }
    Ok(SpeVerdict { mode, bound, status: SpeStatus::HoldsUpToBound, counterexample: None, searched })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::sequence_persistence;
    use crate::testnets::*;

    #[test]
    fn fig1_holds() {
        let n = fig1();
        for mode in [SpeMode::Permutation, SpeMode::Parikh] {
            assert!(spe_check(&n, 8, mode, &Limits::default()).unwrap().holds());
        }
    }

    #[test]
    fn fig10_refuted_by_yb() {
        let n = fig10();
        let v = spe_check(&n, 2, SpeMode::Permutation, &Limits::default()).unwrap();
        assert_eq!(v.status, SpeStatus::Refuted);
        let cx = v.counterexample.unwrap();
        assert_eq!(cx, n.word("y b").unwrap());
        assert!(!sequence_persistence(&n, n.initial_marking(), &cx).unwrap().persistent);
    }

    #[test]
    fn fig14_holds_to_ten() {
        let n = fig14();
        assert!(spe_check(&n, 10, SpeMode::Permutation, &Limits::default()).unwrap().holds());
    }

    #[test]
    fn refutation_is_stable() {
        let n = fig10();
        for b in 2..6 {
            let v = spe_check(&n, b, SpeMode::Permutation, &Limits::default()).unwrap();
            assert_eq!(v.counterexample, Some(n.word("y b").unwrap()));
        }
    }

    #[test]
    fn zero_bound_rejected() {
        assert!(spe_check(&fig1(), 0, SpeMode::Parikh, &Limits::default()).is_err());
    }
}
