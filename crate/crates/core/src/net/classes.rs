//! Structural choice classes: plain, pure, CF, FC, EC, DC, AC and D̃C.

use alloc::vec::Vec;

use super::{Net, PlaceId, TransId};

/// A structural fact falsifying one class predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    /// An arc of weight > 1.
    WeightedArc { place: PlaceId, transition: TransId, input: bool, weight: u32 },
    /// `t` both consumes from and produces onto `place`.
    SideCondition { place: PlaceId, transition: TransId },
    /// `place` has two distinct consumers.
    SharedPlace { place: PlaceId, first: TransId, second: TransId },
    /// Two transitions share `place` in their presets but fail the class condition.
    Conflict { first: TransId, second: TransId, place: PlaceId },
    /// Two places share `transition` in their postsets but fail the class condition.
    PlacePair { first: PlaceId, second: PlaceId, transition: TransId },
}

/// Outcome of one class predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flag {
    Holds,
    Fails(Witness),
    /// The predicate is only defined for plain nets.
    NotApplicable,
}

impl Flag {
    pub fn holds(&self) -> bool {
        matches!(self, Flag::Holds)
    }

    /// `None` when not applicable.
    pub fn value(&self) -> Option<bool> {
        match self {
            Flag::Holds => Some(true),
            Flag::Fails(_) => Some(false),
            Flag::NotApplicable => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Flag::Fails(w) => Some(w),
            _ => None,
        }
    }

    fn from(w: Option<Witness>) -> Flag {
        w.map_or(Flag::Holds, Flag::Fails)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport {
    pub plain: Flag,
    pub pure: Flag,
    pub choice_free: Flag,
    pub free_choice: Flag,
    pub equal_conflict: Flag,
    pub dissymmetric_choice: Flag,
    pub asymmetric_choice: Flag,
    pub dc_tilde: Flag,
}

impl ClassReport {
    /// Rows as `(short name, flag)` in report order.
    pub fn rows(&self) -> [(&'static str, &Flag); 8] {
        [
            ("plain", &self.plain),
            ("pure", &self.pure),
            ("CF", &self.choice_free),
            ("FC", &self.free_choice),
            ("EC", &self.equal_conflict),
            ("DC", &self.dissymmetric_choice),
            ("AC", &self.asymmetric_choice),
            ("DC~", &self.dc_tilde),
        ]
    }
}

fn subset<T: Ord>(a: &[T], b: &[T]) -> bool {
    let mut j = 0;
    for x in a {
        while j < b.len() && b[j] < *x {
            j += 1;
        }
        if j == b.len() || b[j] != *x {
            return false;
        }
        j += 1;
    }
    true
}

fn first_common<T: Ord + Copy>(a: &[T], b: &[T]) -> Option<T> {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => return Some(a[i]),
        }
    }
    None
}

fn plain_witness(net: &Net) -> Option<Witness> {
    for t in net.transitions() {
        for (arcs, input) in [(net.pre(t), true), (net.post(t), false)] {
            if let Some(&(place, weight)) = arcs.iter().find(|&&(_, w)| w > 1) {
                return Some(Witness::WeightedArc { place, transition: t, input, weight });
            }
        }
    }
    None
}

fn pure_witness(net: &Net) -> Option<Witness> {
    net.places().find_map(|p| {
        first_common(net.consumers(p), net.producers(p))
            .map(|t| Witness::SideCondition { place: p, transition: t })
    })
}

fn cf_witness(net: &Net) -> Option<Witness> {
    net.places().find_map(|p| match net.consumers(p) {
        [first, second, ..] => Some(Witness::SharedPlace { place: p, first: *first, second: *second }),
        _ => None,
    })
}

/// First unordered conflicting pair (t < t') violating `ok`.
fn conflict_witness(net: &Net, ok: impl Fn(TransId, TransId) -> bool) -> Option<Witness> {
    let presets: Vec<Vec<PlaceId>> = net.transitions().map(|t| net.preset(t)).collect();
    for t in net.transitions() {
        for u in net.transitions().skip(t.0 + 1) {
            if let Some(place) = first_common(&presets[t.0], &presets[u.0]) {
                if !ok(t, u) {
                    return Some(Witness::Conflict { first: t, second: u, place });
                }
            }
        }
    }
    None
}

/// First ordered place pair violating `ok` among pairs with a common consumer.
fn place_pair_witness(
    net: &Net,
    ordered: bool,
    ok: impl Fn(PlaceId, PlaceId) -> bool,
) -> Option<Witness> {
    for p in net.places() {
        for q in net.places() {
            if p == q || (!ordered && q < p) {
                continue;
            }
            if let Some(t) = first_common(net.consumers(p), net.consumers(q)) {
                if !ok(p, q) {
                    return Some(Witness::PlacePair { first: p, second: q, transition: t });
                }
            }
        }
    }
    None
}

/// Evaluates every class predicate and records a first witness for each
/// failing one. Witnesses are minimal in declaration order.
pub fn classify_structure(net: &Net) -> ClassReport {
    let plain_w = plain_witness(net);
    let plain = Flag::from(plain_w);
    let presets: Vec<Vec<PlaceId>> = net.transitions().map(|t| net.preset(t)).collect();

    let free_choice = match plain_w {
        Some(w) => Flag::Fails(w),
        None => Flag::from(conflict_witness(net, |t, u| presets[t.0] == presets[u.0])),
    };
    let equal_conflict = Flag::from(conflict_witness(net, |t, u| net.pre(t) == net.pre(u)));

    let (dissymmetric_choice, asymmetric_choice, dc_tilde) = if plain_w.is_some() {
        (Flag::NotApplicable, Flag::NotApplicable, Flag::NotApplicable)
    } else {
        let dc = conflict_witness(net, |t, u| {
            subset(&presets[t.0], &presets[u.0]) || subset(&presets[u.0], &presets[t.0])
        });
        let ac = place_pair_witness(net, false, |p, q| {
            subset(net.consumers(p), net.consumers(q)) || subset(net.consumers(q), net.consumers(p))
        });
        let dct = place_pair_witness(net, true, |p, q| {
            subset(net.consumers(p), net.consumers(q)) || subset(net.producers(q), net.producers(p))
        });
        (Flag::from(dc), Flag::from(ac), Flag::from(dct))
    };

    ClassReport {
        plain,
        pure: Flag::from(pure_witness(net)),
        choice_free: Flag::from(cf_witness(net)),
        free_choice,
        equal_conflict,
        dissymmetric_choice,
        asymmetric_choice,
        dc_tilde,
    }
}
