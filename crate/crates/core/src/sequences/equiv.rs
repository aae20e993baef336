use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec::Vec;

use hashbrown::HashSet;

use super::{disabled_by_step, parikh, persistence_of_trace, FiringSequence, ParikhVector};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::net::{Marking, Net, TransId};

fn trace_of(net: &Net, m0: &Marking, w: &[TransId]) -> Result<Vec<Marking>> {
    let mut out = Vec::with_capacity(w.len() + 1);
    out.push(m0.clone());
    for &t in w {
        let next = net.fire_unchecked(out.last().expect("nonempty"), t)?;
        out.push(next);
    }
    Ok(out)
}

/// Breadth-first walk over the ≡₀*-class of `start` (adjacent swaps that
/// stay firable). Neighbours are generated by ascending swap position, so
/// the visiting order is canonical. Returns the first word accepted by
/// `accept` together with its swap distance.
pub(crate) fn walk_class(
    net: &Net,
    m0: &Marking,
    start: &[TransId],
    guard: usize,
    mut accept: impl FnMut(&[TransId], &[Marking]) -> bool,
) -> Result<Option<(Vec<TransId>, usize)>> {
    let mut seen: HashSet<Vec<TransId>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.to_vec());
    queue.push_back((start.to_vec(), 0usize));
    while let Some((w, d)) = queue.pop_front() {
        let trace = trace_of(net, m0, &w)?;
        if accept(&w, &trace) {
            return Ok(Some((w, d)));
        }
        for i in 0..w.len().saturating_sub(1) {
            let (x, y) = (w[i], w[i + 1]);
            if x == y || !net.is_enabled(&trace[i], y) {
                continue;
            }
            let mid = net.fire_unchecked(&trace[i], y)?;
            if !net.is_enabled(&mid, x) {
                continue;
            }
            let mut v = w.clone();
            v.swap(i, i + 1);
            if seen.contains(&v) {
                continue;
            }
            if seen.len() >= guard {
                return Err(Error::ResourceExceeded(format!(
                    "permutation class exceeds the guard of {guard} words"
                )));
            }
            seen.insert(v.clone());
            queue.push_back((v, d + 1));
        }
    }
    Ok(None)
}

/// The whole ≡₀*-class of `seq`, in canonical breadth-first order.
pub fn perm_class(net: &Net, m0: &Marking, seq: &FiringSequence, limits: &Limits) -> Result<Vec<FiringSequence>> {
    net.fire_sequence(m0, seq)?;
    let mut out = Vec::new();
    walk_class(net, m0, seq, limits.class_guard, |w, _| {
        out.push(FiringSequence(w.to_vec()));
        false
    })?;
    Ok(out)
}

/// Minimum number of adjacent swaps turning `s1` into `s2`, or `None`
/// if they are not permutation equivalent.
pub fn perm_distance(
    net: &Net,
    m0: &Marking,
    s1: &FiringSequence,
    s2: &FiringSequence,
    limits: &Limits,
) -> Result<Option<usize>> {
    net.fire_sequence(m0, s1)?;
    net.fire_sequence(m0, s2)?;
    let n = net.transition_count();
    if s1.len() != s2.len() || parikh(s1, n) != parikh(s2, n) {
        return Ok(None);
    }
    Ok(walk_class(net, m0, s1, limits.class_guard, |w, _| w == &s2[..])?.map(|(_, d)| d))
}

/// `s1 ≡₀* s2` from `m0`. Unequal Parikh vectors short-circuit.
pub fn perm_equivalent(
    net: &Net,
    m0: &Marking,
    s1: &FiringSequence,
    s2: &FiringSequence,
    limits: &Limits,
) -> Result<bool> {
    Ok(perm_distance(net, m0, s1, s2, limits)?.is_some())
}

/// First persistent member of the ≡₀*-class of `seq`, or `None` when the
/// (finite) class has none.
pub fn persistent_perm_equivalent(
    net: &Net,
    m0: &Marking,
    seq: &FiringSequence,
    limits: &Limits,
) -> Result<Option<FiringSequence>> {
    net.fire_sequence(m0, seq)?;
    let hit = walk_class(net, m0, seq, limits.class_guard, |w, trace| {
        persistence_of_trace(net, w, trace).persistent
    })?;
    Ok(hit.map(|(w, _)| FiringSequence(w)))
}

struct ParikhSearch<'a> {
    net: &'a Net,
    dead: HashSet<Vec<u32>>,
    budget: usize,
    word: Vec<TransId>,
    found: Vec<FiringSequence>,
    want: usize,
}

impl ParikhSearch<'_> {
    /// Depth-first over persistent prefixes. The marking is a function of the
    /// consumed budget (determinism), so exhausted budgets are memoised.
    fn go(&mut self, m: &Marking, remaining: &mut Vec<u32>, left: usize) -> Result<bool> {
        if left == 0 {
            self.found.push(FiringSequence(self.word.clone()));
            return Ok(true);
        }
        if self.dead.contains(remaining) {
            return Ok(false);
        }
        if self.budget == 0 {
            return Err(Error::ResourceExceeded("Parikh-equivalent search budget exhausted".into()));
        }
        self.budget -= 1;
        let mut any = false;
        for t in self.net.transitions() {
            if remaining[t.0] == 0 || !self.net.is_enabled(m, t) {
                continue;
            }
            let next = self.net.fire_unchecked(m, t)?;
            if disabled_by_step(self.net, m, t, &next).is_some() {
                continue;
            }
            remaining[t.0] -= 1;
            self.word.push(t);
            let hit = self.go(&next, remaining, left - 1)?;
            self.word.pop();
            remaining[t.0] += 1;
            if hit {
                any = true;
                if self.found.len() >= self.want {
                    return Ok(true);
                }
            }
        }
        if !any {
            self.dead.insert(remaining.clone());
        }
        Ok(any)
    }
}

/// Up to `want` persistent sequences from `m0` with Parikh vector `target`,
/// in canonical depth-first order.
pub fn persistent_parikh_equivalents(
    net: &Net,
    m0: &Marking,
    target: &ParikhVector,
    want: usize,
    limits: &Limits,
) -> Result<Vec<FiringSequence>> {
    net.check_behavioural()?;
    net.check_marking(m0)?;
    let n = net.transition_count();
    if target.0.iter().skip(n).any(|&c| c > 0) {
        return Ok(Vec::new());
    }
    let mut remaining: Vec<u32> = (0..n).map(|i| target.0.get(i).copied().unwrap_or(0)).collect();
    let left = remaining.iter().map(|&c| c as usize).sum();
    let mut s = ParikhSearch {
        net,
        dead: HashSet::new(),
        budget: limits.class_guard,
        word: Vec::new(),
        found: Vec::new(),
        want: want.max(1),
    };
    s.go(m0, &mut remaining, left)?;
    Ok(s.found)
}

/// First persistent sequence from `m0` with Parikh vector `target`, or
/// `None` if there is none.
pub fn persistent_parikh_equivalent(
    net: &Net,
    m0: &Marking,
    target: &ParikhVector,
    limits: &Limits,
) -> Result<Option<FiringSequence>> {
    Ok(persistent_parikh_equivalents(net, m0, target, 1, limits)?.into_iter().next())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::sequence_persistence;
    use crate::testnets::*;

    #[test]
    fn fig1_class_of_dca() {
        let n = fig1();
        let m0 = n.initial_marking();
        let l = Limits::default();
        let d = perm_distance(&n, m0, &n.word("d c a").unwrap(), &n.word("c a d").unwrap(), &l).unwrap();
        assert_eq!(d, Some(2));
        let class = perm_class(&n, m0, &n.word("c d a").unwrap(), &l).unwrap();
        assert_eq!(class.len(), 3);
    }

    #[test]
    fn fig12_parikh_equal_but_not_equivalent() {
        let n = fig12();
        let m0 = n.initial_marking();
        let (abc, cba) = (n.word("a b c").unwrap(), n.word("c b a").unwrap());
        assert_eq!(parikh(&abc, 3), parikh(&cba, 3));
        assert!(!perm_equivalent(&n, m0, &abc, &cba, &Limits::default()).unwrap());
        assert!(perm_equivalent(&n, m0, &abc, &abc, &Limits::default()).unwrap());
    }

    #[test]
    fn persistent_permutation_of_cda() {
        let n = fig1();
        let l = Limits::default();
        let got = persistent_perm_equivalent(&n, n.initial_marking(), &n.word("c d a").unwrap(), &l).unwrap();
        assert_eq!(got, Some(n.word("c a d").unwrap()));
        let cad = n.word("c a d").unwrap();
        assert_eq!(persistent_perm_equivalent(&n, n.initial_marking(), &cad, &l).unwrap(), Some(cad));
    }

    #[test]
    fn no_persistent_permutation_from_m1() {
        let n = fig1();
        let m1 = n.fire(n.initial_marking(), n.transition("c").unwrap()).unwrap();
        let got = persistent_perm_equivalent(&n, &m1, &n.word("d b").unwrap(), &Limits::default()).unwrap();
        assert_eq!(got, None);
    }

    #[test]
    fn parikh_search() {
        let n = fig1();
        let l = Limits::default();
        let target = parikh(&n.word("c d a").unwrap(), 4);
        let got = persistent_parikh_equivalent(&n, n.initial_marking(), &target, &l).unwrap();
        assert_eq!(got, Some(n.word("c a d").unwrap()));

        let f10 = fig10();
        let yb = parikh(&f10.word("y b").unwrap(), f10.transition_count());
        assert_eq!(persistent_parikh_equivalent(&f10, f10.initial_marking(), &yb, &l).unwrap(), None);
    }

    #[test]
    fn fig6_reorders_y_to_the_end() {
        let n = fig6();
        let l = Limits::default();
        for reps in 1..=3 {
            let mut w = alloc::string::String::from("y");
            for _ in 0..reps {
                w.push_str(" x a c");
            }
            let target = parikh(&n.word(&w).unwrap(), n.transition_count());
            let got = persistent_parikh_equivalent(&n, n.initial_marking(), &target, &l).unwrap().unwrap();
            assert!(sequence_persistence(&n, n.initial_marking(), &got).unwrap().persistent);
            assert_eq!(parikh(&got, n.transition_count()), target);
            assert_eq!(*got.last().unwrap(), n.transition("y").unwrap());
        }
    }

    #[test]
    fn guard_is_enforced() {
        let n = fig7_right();
        let w = n.word("a b a b a b a b").unwrap();
        let l = Limits { class_guard: 3, ..Limits::default() };
        assert!(matches!(perm_class(&n, n.initial_marking(), &w, &l), Err(Error::ResourceExceeded(_))));
    }
}
