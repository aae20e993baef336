//! Graphviz export of LTS and reachability graphs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use persinet_core::patterns::{Embedding, Pattern};
use persinet_core::Lts;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\"").replace('\n', "\\n"))
}

/// Nodes in state order, edges in the graph's edge order. States and edges
/// in the image of `highlight` are drawn bold; excluded `(state, label)`
/// pairs are listed in the node's external label.
pub fn emit_dot(lts: &Lts, highlight: Option<(&Pattern, &Embedding)>) -> String {
    let mut bold_states = BTreeSet::new();
    let mut bold_edges = BTreeSet::new();
    let mut excluded: BTreeMap<usize, Vec<&str>> = BTreeMap::new();
    if let Some((p, e)) = highlight {
        bold_states.extend(e.state_map.iter().copied());
        for &(s, l, t) in p.arcs() {
            bold_edges.insert((e.state_map[s], e.label_map[l], e.state_map[t]));
        }
        for &(s, l) in p.exclusions() {
            excluded.entry(e.state_map[s]).or_default().push(lts.label_name(e.label_map[l]));
        }
    }

    let mut out = format!("digraph {} {{\n", quote(lts.name()));
    out.push_str("  rankdir=TB;\n  node [shape=ellipse];\n");
    out.push_str("  __start [shape=point];\n");
    writeln!(out, "  __start -> {};", quote(lts.state_name(lts.initial()))).unwrap();
    for s in 0..lts.state_count() {
        let name = lts.state_name(s);
        let mut label = name.to_string();
        if let Some(ms) = lts.payload() {
            write!(label, "\n{}", ms[s]).unwrap();
        }
        let mut attrs = vec![format!("label={}", quote(&label))];
        if bold_states.contains(&s) {
            attrs.push("style=bold".into());
            attrs.push("penwidth=2".into());
        }
        if let Some(ls) = excluded.get(&s) {
            attrs.push(format!("xlabel={}", quote(&format!("not {}", ls.join(", ")))));
        }
        writeln!(out, "  {} [{}];", quote(name), attrs.join(", ")).unwrap();
    }
    for &(s, l, t) in lts.edges() {
        let mut attrs = vec![format!("label={}", quote(lts.label_name(l)))];
        if bold_edges.contains(&(s, l, t)) {
            attrs.push("style=bold".into());
            attrs.push("penwidth=2".into());
        }
        writeln!(out, "  {} -> {} [{}];", quote(lts.state_name(s)), quote(lts.state_name(t)), attrs.join(", ")).unwrap();
    }
    out.push_str("}\n");
    out
}
