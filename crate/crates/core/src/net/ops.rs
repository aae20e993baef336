//! Net-level constructions: reverse dual, disjoint sum, projection, and
//! the concurrent-enabling test used by the progress notion.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{Marking, Net, PlaceId, TransId};
use crate::error::{Error, Result};
use crate::fairness::Lasso;
use crate::sequences::FiringSequence;

/// Exchanges places and transitions and reverses every arc.
///
/// The result has a zero marking and is flagged structural-only, so
/// behavioural operations reject it.
pub fn reverse_dual(net: &Net) -> Net {
    let np = net.transition_count();
    let nt = net.place_count();
    let mut pre = alloc::vec![Vec::new(); nt];
    let mut post = alloc::vec![Vec::new(); nt];
    // F'(x, y) = F(y, x): the new transition p consumes from t when p ∈ •t
    // and produces onto t when p ∈ t•.
    for t in net.transitions() {
        for &(p, w) in net.pre(t) {
            pre[p.0].push((PlaceId(t.0), w));
        }
        for &(p, w) in net.post(t) {
            post[p.0].push((PlaceId(t.0), w));
        }
    }
    let mut dual = Net::assemble(
        format!("rd({})", net.name()),
        net.transition_names().to_vec(),
        net.place_names().to_vec(),
        pre,
        post,
        Marking::zero(np),
    );
    dual.structural_only = true;
    dual
}

/// Which operand of a [`disjoint_sum`] an element came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Component tags recorded by [`disjoint_sum`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumTags {
    pub places: Vec<Side>,
    pub transitions: Vec<Side>,
}

fn fresh(name: &str, prefix: &str, taken: &dyn Fn(&str) -> bool) -> String {
    let mut out = format!("{prefix}{name}");
    while taken(&out) {
        out = format!("{prefix}{out}");
    }
    out
}

/// Places side by side. Identifiers occurring in both operands are
/// prefixed with `l.` and `r.`; all others keep their names.
pub fn disjoint_sum(n1: &Net, n2: &Net) -> Net {
    let names1: Vec<&String> = n1.place_names().iter().chain(n1.transition_names()).collect();
    let names2: Vec<&String> = n2.place_names().iter().chain(n2.transition_names()).collect();
    let clash1 = |s: &str| names2.iter().any(|x| *x == s);
    let clash2 = |s: &str| names1.iter().any(|x| *x == s);
    let all = |s: &str| names1.iter().chain(&names2).any(|x| *x == s);
    let rename1 = |s: &String| if clash1(s) { fresh(s, "l.", &all) } else { s.clone() };
    let rename2 = |s: &String| if clash2(s) { fresh(s, "r.", &all) } else { s.clone() };

    let places: Vec<String> = n1
        .place_names()
        .iter()
        .map(rename1)
        .chain(n2.place_names().iter().map(rename2))
        .collect();
    let transitions: Vec<String> = n1
        .transition_names()
        .iter()
        .map(rename1)
        .chain(n2.transition_names().iter().map(rename2))
        .collect();

    let off = n1.place_count();
    let shift = |arcs: &[(PlaceId, u32)]| arcs.iter().map(|&(p, w)| (PlaceId(p.0 + off), w)).collect::<Vec<_>>();
    let pre: Vec<_> = n1.pre.iter().cloned().chain(n2.pre.iter().map(|a| shift(a))).collect();
    let post: Vec<_> = n1.post.iter().cloned().chain(n2.post.iter().map(|a| shift(a))).collect();
    let mut m = n1.initial.0.clone();
    m.extend_from_slice(&n2.initial.0);

    let mut sum = Net::assemble(format!("{}+{}", n1.name(), n2.name()), places, transitions, pre, post, Marking(m));
    sum.structural_only = n1.structural_only || n2.structural_only;
    let tag = |a: usize, b: usize| {
        core::iter::repeat_n(Side::Left, a).chain(core::iter::repeat_n(Side::Right, b)).collect()
    };
    sum.tags = Some(SumTags {
        places: tag(n1.place_count(), n2.place_count()),
        transitions: tag(n1.transition_count(), n2.transition_count()),
    });
    sum
}

/// A finite run or an eventually periodic infinite one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Run {
    Finite(FiringSequence),
    Lasso(Lasso),
}

impl Net {
    /// The component of a sum net on `side`, as a stand-alone net whose
    /// identifiers are those of the sum.
    pub fn component(&self, side: Side) -> Result<(Net, Vec<Option<TransId>>)> {
        let tags = self.tags.as_ref().ok_or_else(|| Error::input("net is not a disjoint sum"))?;
        let mut place_map = alloc::vec![None; self.place_count()];
        let mut places = Vec::new();
        let mut m = Vec::new();
        for p in self.places() {
            if tags.places[p.0] == side {
                place_map[p.0] = Some(PlaceId(places.len()));
                places.push(self.place_name(p).to_string());
                m.push(self.initial.0[p.0]);
            }
        }
        let mut trans_map = alloc::vec![None; self.transition_count()];
        let (mut transitions, mut pre, mut post) = (Vec::new(), Vec::new(), Vec::new());
        let remap = |arcs: &[(PlaceId, u32)]| -> Vec<(PlaceId, u32)> {
            arcs.iter().filter_map(|&(p, w)| place_map[p.0].map(|q| (q, w))).collect()
        };
        for t in self.transitions() {
            if tags.transitions[t.0] == side {
                trans_map[t.0] = Some(TransId(transitions.len()));
                transitions.push(self.transition_name(t).to_string());
                pre.push(remap(self.pre(t)));
                post.push(remap(self.post(t)));
            }
        }
        let name = match side {
            Side::Left => format!("{}.left", self.name),
            Side::Right => format!("{}.right", self.name),
        };
        let mut c = Net::assemble(name, places, transitions, pre, post, Marking(m));
        c.structural_only = self.structural_only;
        Ok((c, trans_map))
    }
}

/// Erases the other component's transitions from `run`. The result is
/// expressed over the component net returned by [`Net::component`]; a
/// lasso whose cycle projects to ε becomes a finite run.
pub fn project_sequence(net: &Net, run: &Run, side: Side) -> Result<Run> {
    let (_, map) = net.component(side)?;
    let proj = |s: &FiringSequence| -> Result<FiringSequence> {
        s.iter()
            .map(|t| {
                map.get(t.0)
                    .copied()
                    .ok_or_else(|| Error::Unknown { kind: "transition", name: format!("#{}", t.0) })
            })
            .filter_map(|r| r.transpose())
            .collect::<Result<Vec<_>>>()
            .map(FiringSequence::from)
    };
    Ok(match run {
        Run::Finite(s) => Run::Finite(proj(s)?),
        Run::Lasso(l) => {
            let prefix = proj(&l.prefix)?;
            let cycle = proj(&l.cycle)?;
            if cycle.is_empty() {
                Run::Finite(prefix)
            } else {
                Run::Lasso(Lasso { prefix, cycle })
            }
        }
    })
}

/// `m` enables `t` and `u` concurrently: shared input places hold at least
/// two tokens and every other input place at least one. Plain nets only.
pub fn concurrently_enables(net: &Net, m: &Marking, t: TransId, u: TransId) -> Result<bool> {
    if net.pre.iter().chain(&net.post).flatten().any(|&(_, w)| w > 1) {
        return Err(Error::unsupported("concurrent enabling is defined for plain nets only"));
    }
    net.check_behavioural()?;
    net.check_transition(t)?;
    net.check_transition(u)?;
    net.check_marking(m)?;
    if t == u {
        return Err(Error::input(format!(
            "concurrent enabling needs two distinct transitions, got `{}` twice",
            net.transition_name(t)
        )));
    }
    Ok(concurrently_enabled_plain(net, m, t, u))
}

pub(crate) fn concurrently_enabled_plain(net: &Net, m: &Marking, t: TransId, u: TransId) -> bool {
    net.places().all(|p| {
        let need = net.pre_weight(p, t) + net.pre_weight(p, u);
        m.0[p.0] >= need
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::classify_structure;
    use crate::testnets::*;

    #[test]
    fn dual_is_an_involution() {
        for n in [fig1(), fig5(), fig16(), fig2()] {
            let dd = reverse_dual(&reverse_dual(&n));
            assert!(dd.same_structure(&n));
            assert!(reverse_dual(&n).is_structural_only());
        }
    }

    #[test]
    fn dual_swaps_ac_and_dc() {
        let r = classify_structure(&reverse_dual(&fig1()));
        assert!(r.dissymmetric_choice.holds());
        assert!(!r.asymmetric_choice.holds());
    }

    #[test]
    fn dual_rejects_firing() {
        let d = reverse_dual(&fig1());
        assert!(d.fire(d.initial_marking(), TransId(0)).is_err());
    }

    #[test]
    fn sum_renames_only_clashes() {
        let s = disjoint_sum(&a_star(), &b_only());
        assert_eq!(s.place_names(), &["l.p0".to_string(), "r.p0".to_string()]);
        assert_eq!(s.transition_names(), &["a".to_string(), "b".to_string()]);
        assert_eq!(s.initial_marking().0, alloc::vec![1, 1]);
    }

    #[test]
    fn sum_with_empty_net() {
        let empty = crate::net::NetBuilder::new("empty").build();
        let s = disjoint_sum(&fig1(), &empty);
        assert!(s.same_structure(&fig1()));
    }

    #[test]
    fn projection_of_sum_runs() {
        let s = disjoint_sum(&a_star(), &b_only());
        let a = s.transition("a").unwrap();
        let lasso = Run::Lasso(Lasso { prefix: FiringSequence::default(), cycle: FiringSequence::from(alloc::vec![a]) });
        assert_eq!(project_sequence(&s, &lasso, Side::Right).unwrap(), Run::Finite(FiringSequence::default()));
        match project_sequence(&s, &lasso, Side::Left).unwrap() {
            Run::Lasso(l) => assert_eq!(l.cycle.len(), 1),
            other => panic!("expected lasso, got {other:?}"),
        }
        let aa = Run::Finite(s.word("a a").unwrap());
        assert_eq!(project_sequence(&s, &aa, Side::Right).unwrap(), Run::Finite(FiringSequence::default()));
        assert!(project_sequence(&fig1(), &aa, Side::Left).is_err());
    }

    #[test]
    fn concurrency_on_fig1() {
        let n = fig1();
        let t = |s| n.transition(s).unwrap();
        assert!(concurrently_enables(&n, n.initial_marking(), t("c"), t("d")).unwrap());
        let m4 = Marking(alloc::vec![0, 0, 1, 1, 1]);
        assert!(!concurrently_enables(&n, &m4, t("a"), t("b")).unwrap());
        assert!(concurrently_enables(&n, &m4, t("a"), t("a")).is_err());
        assert!(matches!(
            concurrently_enables(&fig2(), fig2().initial_marking(), TransId(0), TransId(1)),
            Err(Error::UnsupportedClass(_))
        ));
    }

    #[test]
    fn sum_concurrency() {
        let s = disjoint_sum(&a_star(), &b_only());
        let (a, b) = (s.transition("a").unwrap(), s.transition("b").unwrap());
        assert!(concurrently_enables(&s, s.initial_marking(), a, b).unwrap());
    }
}
