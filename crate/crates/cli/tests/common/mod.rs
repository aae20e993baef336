//! Brute-force reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use persinet_core::lab::{gen_random_net, GenConfig};
use persinet_core::lts::build_rg;
use persinet_core::sequences::{FiringSequence, SpeMode};
use persinet_core::{Net, TransId};

/// Every step fires, and no step disables another transition enabled before it.
pub fn persistent_run(net: &Net, w: &[TransId]) -> Option<bool> {
    let mut m = net.initial_marking().clone();
    let mut ok = true;
    for &t in w {
        if !net.is_enabled(&m, t) {
            return None;
        }
        let next = net.fire(&m, t).ok()?;
        for u in net.transitions() {
            if u != t && net.is_enabled(&m, u) && !net.is_enabled(&next, u) {
                ok = false;
            }
        }
        m = next;
    }
    Some(ok)
}

fn firable(net: &Net, w: &[TransId]) -> bool {
    persistent_run(net, w).is_some()
}

/// All firing sequences of length 1..=bound.
pub fn firing_sequences(net: &Net, bound: usize) -> Vec<Vec<TransId>> {
    let mut out = Vec::new();
    let mut level = vec![Vec::new()];
    for _ in 0..bound {
        let mut next = Vec::new();
        for w in &level {
            for t in net.transitions() {
                let mut v: Vec<TransId> = w.clone();
                v.push(t);
                if firable(net, &v) {
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// The class of `w` under swaps of adjacent letters that keep the sequence firable.
pub fn swap_class(net: &Net, w: &[TransId]) -> Vec<Vec<TransId>> {
    let mut seen: HashSet<Vec<TransId>> = HashSet::from([w.to_vec()]);
    let mut queue = VecDeque::from([w.to_vec()]);
    while let Some(v) = queue.pop_front() {
        for i in 0..v.len().saturating_sub(1) {
            let mut s = v.clone();
            s.swap(i, i + 1);
            if s != v && firable(net, &s) && seen.insert(s.clone()) {
                queue.push_back(s);
            }
        }
    }
    seen.into_iter().collect()
}

/// Every distinct rearrangement of `w`.
pub fn rearrangements(w: &[TransId]) -> BTreeSet<Vec<TransId>> {
    fn go(rest: &mut Vec<TransId>, cur: &mut Vec<TransId>, out: &mut BTreeSet<Vec<TransId>>) {
        if rest.is_empty() {
            out.insert(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let t = rest.remove(i);
            cur.push(t);
            go(rest, cur, out);
            cur.pop();
            rest.insert(i, t);
        }
    }
    let mut out = BTreeSet::new();
    go(&mut w.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// SPE up to `bound` by exhaustive search, without any reuse between sequences.
pub fn spe_oracle(net: &Net, bound: usize, mode: SpeMode) -> bool {
    firing_sequences(net, bound).iter().all(|w| match mode {
        SpeMode::Permutation => swap_class(net, w).iter().any(|v| persistent_run(net, v) == Some(true)),
        SpeMode::Parikh => rearrangements(w).iter().any(|v| persistent_run(net, v) == Some(true)),
    })
}

/// Length of the longest shortest path from the initial state.
pub fn rg_depth(net: &Net, max_states: usize) -> Option<(usize, usize)> {
    let (g, r) = build_rg(net, max_states).ok()?;
    if !r.bounded() {
        return None;
    }
    let mut dist = vec![usize::MAX; g.state_count()];
    dist[g.initial()] = 0;
    let mut queue = VecDeque::from([g.initial()]);
    while let Some(s) = queue.pop_front() {
        for &(a, _, b) in g.edges() {
            if a == s && dist[b] == usize::MAX {
                dist[b] = dist[s] + 1;
                queue.push_back(b);
            }
        }
    }
    Some((g.state_count(), dist.into_iter().max().unwrap_or(0)))
}

/// Small random nets used by the oracle comparison.
pub fn small_net(seed: u64) -> Option<Net> {
    let cfg = GenConfig { places: 3, transitions: 3, bounded_within: Some(9), seed, ..GenConfig::default() };
    gen_random_net(&cfg).ok()
}

pub fn word(w: &FiringSequence) -> Vec<TransId> {
    w.0.clone()
}
