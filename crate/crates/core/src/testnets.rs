//! The figure nets, built in code for unit tests.

use crate::net::{Net, NetBuilder};

fn build(name: &str, places: &[(&str, u32)], transitions: &[&str], arcs: &[(&str, &str, u32)]) -> Net {
    let mut b = NetBuilder::new(name);
    for &(p, m) in places {
        b.place(p, m).unwrap();
    }
    for &t in transitions {
        b.transition(t).unwrap();
    }
    for &(from, to, w) in arcs {
        b.arc(from, to, w).unwrap();
    }
    b.build()
}

pub fn fig1() -> Net {
    build(
        "fig1_basic",
        &[("p0", 1), ("p1", 1), ("p2", 0), ("p3", 1), ("p4", 0)],
        &["a", "b", "c", "d"],
        &[
            ("p0", "c", 1),
            ("p1", "d", 1),
            ("c", "p2", 1),
            ("d", "p4", 1),
            ("p2", "a", 1),
            ("p3", "a", 1),
            ("p3", "b", 1),
            ("p4", "b", 1),
        ],
    )
}

pub fn fig2() -> Net {
    build("fig2_confuse", &[("p", 2)], &["x", "y"], &[("p", "x", 1), ("p", "y", 2), ("y", "p", 1)])
}

/// A weighted self-loop `a` next to a plain consumer `b`.
pub fn fig2_loop() -> Net {
    build("weighted_loop", &[("p", 2)], &["a", "b"], &[("p", "a", 2), ("a", "p", 2), ("p", "b", 1)])
}

pub fn fig4() -> Net {
    build(
        "fig4_perslocal",
        &[("p0", 1), ("p1", 1)],
        &["a", "b", "c"],
        &[("p0", "a", 1), ("p0", "b", 1), ("p1", "c", 1)],
    )
}

pub fn fig5() -> Net {
    build(
        "fig5_acbc",
        &[("pab", 0), ("pabc", 0), ("p", 1), ("pba", 1)],
        &["a", "b", "c"],
        &[
            ("a", "pab", 1),
            ("pab", "b", 1),
            ("b", "pba", 1),
            ("pba", "a", 1),
            ("a", "pabc", 1),
            ("b", "pabc", 1),
            ("p", "a", 1),
            ("p", "b", 1),
            ("pabc", "c", 1),
            ("c", "p", 1),
        ],
    )
}

pub fn fig6() -> Net {
    build(
        "fig6_unfair",
        &[("p0", 1), ("p1", 0), ("p2", 1), ("p3", 1), ("p4", 0), ("p5", 0)],
        &["a", "b", "c", "x", "y"],
        &[
            ("x", "p1", 1),
            ("p1", "a", 1),
            ("a", "p2", 1),
            ("p2", "x", 1),
            ("a", "p4", 1),
            ("p4", "c", 1),
            ("c", "p3", 1),
            ("p3", "a", 1),
            ("p3", "b", 1),
            ("p0", "y", 1),
            ("y", "p5", 1),
            ("p5", "b", 1),
        ],
    )
}

pub fn fig7_left() -> Net {
    build("fig7_left", &[("p0", 1)], &["a", "b"], &[("p0", "a", 1), ("a", "p0", 1), ("p0", "b", 1), ("b", "p0", 1)])
}

pub fn fig7_right() -> Net {
    build(
        "fig7_right",
        &[("p0", 1), ("p1", 1)],
        &["a", "b"],
        &[("p0", "a", 1), ("a", "p0", 1), ("p1", "b", 1), ("b", "p1", 1)],
    )
}

pub fn fig8() -> Net {
    build(
        "fig8_variant",
        &[("p0", 1), ("p1", 1), ("p2", 0), ("p3", 1), ("p4", 0), ("p5", 0), ("p6", 0)],
        &["a", "b", "c", "d", "e", "f"],
        &[
            ("p0", "c", 1),
            ("p1", "d", 1),
            ("c", "p2", 1),
            ("d", "p4", 1),
            ("p2", "a", 1),
            ("p3", "a", 1),
            ("p3", "b", 1),
            ("p4", "b", 1),
            ("a", "p5", 1),
            ("b", "p6", 1),
            ("p5", "e", 1),
            ("p4", "e", 1),
            ("e", "p0", 1),
            ("e", "p1", 1),
            ("e", "p3", 1),
            ("p6", "f", 1),
            ("p2", "f", 1),
            ("f", "p0", 1),
            ("f", "p1", 1),
            ("f", "p3", 1),
        ],
    )
}

pub fn fig10() -> Net {
    build(
        "fig10_fpe_not_spe",
        &[("p1", 1), ("p2", 1), ("p3", 1), ("p4", 0), ("p5", 1), ("p6", 0), ("p7", 1), ("p8", 0)],
        &["a", "b", "c", "d", "x", "y", "z"],
        &[
            ("p1", "x", 1),
            ("x", "p4", 1),
            ("p2", "y", 1),
            ("y", "p6", 1),
            ("p3", "z", 1),
            ("z", "p8", 1),
            ("p4", "a", 1),
            ("p5", "a", 1),
            ("p5", "b", 1),
            ("p6", "b", 1),
            ("p6", "c", 1),
            ("p7", "c", 1),
            ("p7", "d", 1),
            ("p8", "d", 1),
        ],
    )
}

pub fn fig12() -> Net {
    build(
        "fig12_spar",
        &[("q0", 1), ("q1", 0), ("q2", 1), ("q3", 1), ("q4", 1)],
        &["a", "b", "c"],
        &[
            ("q0", "a", 1),
            ("q0", "c", 1),
            ("a", "q1", 1),
            ("c", "q1", 1),
            ("q1", "b", 1),
            ("q2", "b", 1),
            ("q3", "a", 1),
            ("q4", "c", 1),
            ("b", "q0", 1),
        ],
    )
}

pub fn fig13() -> Net {
    build("fig13_impure_diamond", &[("p0", 1)], &["x", "y"], &[("p0", "x", 1), ("p0", "y", 1), ("y", "p0", 1)])
}

pub fn fig14() -> Net {
    build(
        "fig14_counterexample",
        &[("p0", 0), ("p1", 0), ("p2", 0), ("p3", 0), ("p", 0), ("p5", 1), ("p6", 1), ("q", 1)],
        &["a1", "a2", "b", "c", "x", "y"],
        &[
            ("p0", "a1", 1),
            ("q", "a1", 1),
            ("a1", "p1", 1),
            ("p1", "a2", 1),
            ("a2", "p2", 1),
            ("a2", "p", 1),
            ("a2", "q", 1),
            ("p", "b", 1),
            ("q", "b", 1),
            ("b", "p3", 1),
            ("p2", "c", 1),
            ("p3", "c", 1),
            ("c", "p5", 1),
            ("c", "q", 1),
            ("x", "p0", 1),
            ("p5", "x", 1),
            ("p6", "y", 1),
            ("y", "p", 1),
        ],
    )
}

pub fn a_star() -> Net {
    build("fig15_a_star", &[("p0", 1)], &["a"], &[("p0", "a", 1), ("a", "p0", 1)])
}

pub fn b_only() -> Net {
    build("fig15_b", &[("p0", 1)], &["b"], &[("p0", "b", 1)])
}

pub fn fig15_choice() -> Net {
    build("fig15_choice", &[("p0", 1)], &["a", "b"], &[("p0", "a", 1), ("a", "p0", 1), ("p0", "b", 1)])
}

pub fn fig16() -> Net {
    build(
        "fig16_appendix",
        &[("1", 0), ("2", 0), ("3", 1), ("4", 0), ("5", 0)],
        &["a", "b", "c", "d", "e", "f"],
        &[
            ("1", "a", 1),
            ("a", "5", 1),
            ("5", "b", 1),
            ("b", "1", 1),
            ("3", "c", 1),
            ("c", "1", 1),
            ("c", "2", 1),
            ("1", "d", 1),
            ("2", "d", 1),
            ("d", "3", 1),
            ("3", "e", 1),
            ("e", "5", 1),
            ("e", "4", 1),
            ("5", "f", 1),
            ("4", "f", 1),
            ("f", "3", 1),
        ],
    )
}
