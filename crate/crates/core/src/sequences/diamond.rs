use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use hashbrown::HashSet;

use super::{
    disabled_by_step, parikh, persistent_parikh_equivalents, sequence_persistence, FiringSequence, ParikhVector,
};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::net::{classify_structure, Marking, Net, TransId};

fn require_pure_plain(net: &Net) -> Result<()> {
    let r = classify_structure(net);
    if !r.plain.holds() {
        return Err(Error::unsupported(format!("net `{}` is not plain", net.name())));
    }
    if !r.pure.holds() {
        return Err(Error::unsupported(format!("net `{}` is not pure", net.name())));
    }
    Ok(())
}

/// The four corners of a completed diamond `m⟨y⟩m″⟨x⟩m̂`, `m⟨x⟩m′⟨y⟩m̂`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diamond {
    pub m_second: Marking,
    pub m_prime: Marking,
    pub m_hat: Marking,
}

/// Closes a 3/4-diamond in a pure plain net: given `m⟨y⟩m″⟨x⟩` and
/// `m⟨x⟩`, returns the corners and certifies `m⟨x⟩m′⟨y⟩m̂`.
pub fn complete_diamond(net: &Net, m: &Marking, y: TransId, x: TransId) -> Result<Diamond> {
    require_pure_plain(net)?;
    let m_second = net.fire(m, y)?;
    let m_hat = net.fire(&m_second, x)?;
    let m_prime = net.fire(m, x)?;
    let closing = net.fire(&m_prime, y).map_err(|e| {
        Error::InvariantBroken(format!(
            "diamond at {} with legs {}/{} does not close: {e}",
            net.show_marking(m),
            net.transition_name(y),
            net.transition_name(x)
        ))
    })?;
    if closing != m_hat {
        return Err(Error::InvariantBroken("diamond closes at a different marking".into()));
    }
    Ok(Diamond { m_second, m_prime, m_hat })
}

/// Breadth-first search for a reachable nonpersistent marking at distance
/// at most `depth`. Returns the path to the first one found together with
/// the offending pair `(t, u)`: `t` disables `u`.
pub fn nonpersistent_within(
    net: &Net,
    depth: usize,
    limits: &Limits,
) -> Result<Option<(FiringSequence, TransId, TransId)>> {
    net.check_behavioural()?;
    let m0 = net.initial_marking().clone();
    let mut seen: HashSet<Marking> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(m0.clone());
    queue.push_back((m0, Vec::new()));
    while let Some((m, path)) = queue.pop_front() {
        let enabled = net.enabled_set(&m);
        for &t in &enabled {
            let next = net.fire_unchecked(&m, t)?;
            if let Some(u) = disabled_by_step(net, &m, t, &next) {
                return Ok(Some((FiringSequence(path), t, u)));
            }
        }
        if path.len() >= depth {
            continue;
        }
        for &t in &enabled {
            let next = net.fire_unchecked(&m, t)?;
            if seen.insert(next.clone()) {
                if seen.len() > limits.max_states {
                    return Err(Error::ResourceExceeded(format!(
                        "more than {} markings within distance {depth}",
                        limits.max_states
                    )));
                }
                let mut p = path.clone();
                p.push(t);
                queue.push_back((next, p));
            }
        }
    }
    Ok(None)
}

/// Output of [`unify_parikh_equivalent`]: a persistent `σ` with
/// `M0⟨σ⟩J`, where `J` enables both last letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unification {
    pub sigma: FiringSequence,
    pub j: Marking,
}

fn first_after(w: &[TransId], from: usize, x: TransId) -> Option<usize> {
    (from..w.len()).find(|&i| w[i] == x)
}

/// Moves `w[k]` to position `m` by closing diamonds from right to left.
/// Every intermediate marking is re-derived from `m0`.
fn bubble_back(net: &Net, m0: &Marking, w: &mut [TransId], m: usize, k: usize) -> Result<()> {
    let x = w[k];
    let mut trace = net.trace(m0, &FiringSequence(w.to_vec()))?;
    for j in (m + 1..=k).rev() {
        let y = w[j - 1];
        let before = &trace[j - 1];
        if !net.is_enabled(before, x) {
            return Err(Error::Precondition(format!(
                "`{}` is not enabled at {} while moving it backwards; \
                 shorter sequences are not all persistent",
                net.transition_name(x),
                net.show_marking(before)
            )));
        }
        let d = complete_diamond(net, before, y, x)?;
        w.swap(j - 1, j);
        trace[j] = d.m_prime;
    }
    Ok(())
}

/// Given Parikh-equivalent `α`, `β` of equal length `n` whose last letters
/// differ, finds a persistent `σ` and `M0⟨σ⟩J` such that `J` enables both
/// last letters and `Ψ(σ a_n b_n) = Ψ(α)`.
///
/// The construction moves the first differing letter of `α` backwards in
/// `β` until the common prefix has length `n - 2`. When that letter only
/// reappears as the last letter of `β` the move would change `β`'s last
/// letter, so the symmetric move in `α` is tried; if that is blocked too,
/// `σ` is searched for directly among persistent sequences with the
/// required Parikh vector. The direct search can come up empty even when
/// all shorter sequences are persistent, which is reported as
/// [`Error::NoWitness`].
///
/// With `check_premises`, all sequences of length `n - 1` are first shown to
/// be persistent (exponential in general).
pub fn unify_parikh_equivalent(
    net: &Net,
    alpha: &FiringSequence,
    beta: &FiringSequence,
    check_premises: bool,
    limits: &Limits,
) -> Result<Unification> {
    require_pure_plain(net)?;
    let n = alpha.len();
    let nt = net.transition_count();
    if beta.len() != n {
        return Err(Error::input("sequences differ in length"));
    }
    if n < 2 || alpha[n - 1] == beta[n - 1] {
        return Err(Error::input("the last letters must differ"));
    }
    if parikh(alpha, nt) != parikh(beta, nt) {
        return Err(Error::input("the sequences are not Parikh equivalent"));
    }
    let m0 = net.initial_marking().clone();
    let end_a = net.fire_sequence(&m0, alpha)?;
    let end_b = net.fire_sequence(&m0, beta)?;
    if end_a != end_b {
        return Err(Error::InvariantBroken("Parikh-equivalent sequences reach different markings".into()));
    }
    if check_premises {
        if let Some((path, t, u)) = nonpersistent_within(net, n - 2, limits)? {
            return Err(Error::Precondition(format!(
                "a sequence of length at most {} is nonpersistent: after `{}`, `{}` disables `{}`",
                n - 1,
                net.show_word(&path),
                net.transition_name(t),
                net.transition_name(u)
            )));
        }
    }
    let (an, bn) = (alpha[n - 1], beta[n - 1]);
    let mut a = alpha.0.clone();
    let mut b = beta.0.clone();
    loop {
        let m = a.iter().zip(&b).take_while(|(x, y)| x == y).count();
        if m >= n - 2 {
            break;
        }
        let x = a[m];
        let k = first_after(&b, m + 1, x).ok_or_else(|| Error::InvariantBroken("letter vanished".into()))?;
        if k < n - 1 {
            bubble_back(net, &m0, &mut b, m, k)?;
            continue;
        }
        let y = b[m];
        let k2 = first_after(&a, m + 1, y).ok_or_else(|| Error::InvariantBroken("letter vanished".into()))?;
        if k2 < n - 1 {
            bubble_back(net, &m0, &mut a, m, k2)?;
            continue;
        }
        return direct_search(net, alpha, an, bn, limits);
    }
    let sigma = FiringSequence(a[..n - 2].to_vec());
    finish(net, &m0, sigma, an, bn, check_premises)
}

fn finish(net: &Net, m0: &Marking, sigma: FiringSequence, an: TransId, bn: TransId, checked: bool) -> Result<Unification> {
    let j = net.fire_sequence(m0, &sigma)?;
    let verdict = sequence_persistence(net, m0, &sigma)?;
    let fault = if !verdict.persistent {
        Some(String::from("σ is not persistent"))
    } else if !net.is_enabled(&j, an) || !net.is_enabled(&j, bn) {
        Some(String::from("J does not enable both last letters"))
    } else {
        None
    };
    match fault {
        None => Ok(Unification { sigma, j }),
        Some(msg) if checked => Err(Error::InvariantBroken(msg)),
        Some(msg) => Err(Error::Precondition(format!("{msg}; shorter sequences are not all persistent"))),
    }
}

fn direct_search(net: &Net, alpha: &FiringSequence, an: TransId, bn: TransId, limits: &Limits) -> Result<Unification> {
    let m0 = net.initial_marking();
    let target: ParikhVector = parikh(alpha, net.transition_count())
        .minus(an)
        .and_then(|v| v.minus(bn))
        .ok_or_else(|| Error::InvariantBroken("last letters missing from the Parikh vector".into()))?;
    for sigma in persistent_parikh_equivalents(net, m0, &target, 1, limits)? {
        let j = net.fire_sequence(m0, &sigma)?;
        if net.is_enabled(&j, an) && net.is_enabled(&j, bn) {
            return Ok(Unification { sigma, j });
        }
    }
    Err(Error::NoWitness(format!(
        "no persistent σ reaches a marking enabling both `{}` and `{}`",
        net.transition_name(an),
        net.transition_name(bn)
    )))
}
