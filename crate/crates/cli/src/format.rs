//! Line-oriented text forms of nets, LTS, patterns and lassos.
//!
//! One declaration per line; `#` starts a comment. Errors carry the line
//! number of the first offending declaration.

use std::fmt::Write as _;

use persinet_core::fairness::{validate_lasso, Lasso};
use persinet_core::patterns::Pattern;
use persinet_core::{Error, Lts, Net, NetBuilder, Result};

fn at(line: usize, e: Error) -> Error {
    match e {
        Error::Input(msg) => Error::Input(format!("line {line}: {msg}")),
        Error::Duplicate(id) => Error::Input(format!("line {line}: duplicate identifier `{id}`")),
        Error::Unknown { kind, name } => Error::Input(format!("line {line}: unknown {kind} `{name}`")),
        other => other,
    }
}

fn bad(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Input(format!("line {line}: {msg}"))
}

/// Non-empty lines with comments stripped, split into words.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let code = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = code.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

fn nat(line: usize, word: &str, what: &str) -> Result<u32> {
    if word.starts_with('-') {
        return Err(bad(line, format!("{what} `{word}` is negative")));
    }
    word.parse().map_err(|_| bad(line, format!("{what} `{word}` is not a natural number")))
}

fn header<'a>(line: usize, words: &[&'a str], keyword: &str, seen: &mut bool) -> Result<&'a str> {
    if *seen {
        return Err(bad(line, format!("second `{keyword}` header")));
    }
    *seen = true;
    match words {
        [_, name] => Ok(name),
        _ => Err(bad(line, format!("expected `{keyword} <name>`"))),
    }
}

/// Parses the net grammar:
///
/// ```text
/// net <name>
/// place <id> [init <n>]
/// trans <id>
/// arc <id> -> <id> [<weight>]
/// ```
pub fn parse_net(text: &str) -> Result<Net> {
    let mut name = None;
    let mut seen = false;
    let mut places: Vec<(usize, String, u32)> = Vec::new();
    let mut transitions: Vec<(usize, String)> = Vec::new();
    let mut arcs: Vec<(usize, String, String, u32)> = Vec::new();
    for (n, w) in lines(text) {
        match w[0] {
            "net" => name = Some(header(n, &w, "net", &mut seen)?.to_string()),
            "place" => {
                let tokens = match w[..] {
                    [_, _] => 0,
                    [_, _, "init", k] => nat(n, k, "initial marking")?,
                    _ => return Err(bad(n, "expected `place <id> [init <n>]`")),
                };
                places.push((n, w[1].to_string(), tokens));
            }
            "trans" => match w[..] {
                [_, id] => transitions.push((n, id.to_string())),
                _ => return Err(bad(n, "expected `trans <id>`")),
            },
            "arc" => {
                let weight = match w[..] {
                    [_, _, "->", _] => 1,
                    [_, _, "->", _, k] => nat(n, k, "arc weight")?,
                    _ => return Err(bad(n, "expected `arc <id> -> <id> [<weight>]`")),
                };
                if weight == 0 {
                    return Err(bad(n, "arc weight must be at least 1; omit the arc instead"));
                }
                arcs.push((n, w[1].to_string(), w[3].to_string(), weight));
            }
            other => return Err(bad(n, format!("unknown declaration `{other}`"))),
        }
    }
    let name = name.ok_or_else(|| Error::Input("missing `net <name>` header".into()))?;
    let mut b = NetBuilder::new(&name);
    for (n, id, k) in places {
        b.place(&id, k).map_err(|e| at(n, e))?;
    }
    for (n, id) in transitions {
        b.transition(&id).map_err(|e| at(n, e))?;
    }
    for (n, from, to, w) in arcs {
        b.arc(&from, &to, w).map_err(|e| at(n, e))?;
    }
    Ok(b.build())
}

/// Canonical form: places, transitions, then each transition's input and
/// output arcs in place order. Weight and marking are omitted when 1 and 0.
pub fn print_net(net: &Net) -> String {
    let mut out = format!("net {}\n", net.name());
    let m0 = net.initial_marking();
    for p in net.places() {
        match m0.get(p) {
            0 => writeln!(out, "place {}", net.place_name(p)),
            k => writeln!(out, "place {} init {k}", net.place_name(p)),
        }
        .unwrap();
    }
    for t in net.transitions() {
        writeln!(out, "trans {}", net.transition_name(t)).unwrap();
    }
    let weight = |w: u32| if w == 1 { String::new() } else { format!(" {w}") };
    for t in net.transitions() {
        for &(p, w) in net.pre(t) {
            writeln!(out, "arc {} -> {}{}", net.place_name(p), net.transition_name(t), weight(w)).unwrap();
        }
        for &(p, w) in net.post(t) {
            writeln!(out, "arc {} -> {}{}", net.transition_name(t), net.place_name(p), weight(w)).unwrap();
        }
    }
    out
}

/// Shared reader for the LTS and pattern grammars. Labels may be declared
/// with `label <id>`; undeclared ones are added on first use.
struct Graph {
    name: Option<String>,
    states: Vec<String>,
    labels: Vec<String>,
    edges: Vec<(usize, usize, usize)>,
    initial: Option<(usize, String)>,
    excludes: Vec<(usize, String, String)>,
}

impl Graph {
    fn state(&self, line: usize, id: &str) -> Result<usize> {
        self.states.iter().position(|s| s == id).ok_or_else(|| bad(line, format!("unknown state `{id}`")))
    }

    fn label(&mut self, id: &str) -> usize {
        match self.labels.iter().position(|l| l == id) {
            Some(i) => i,
            None => {
                self.labels.push(id.to_string());
                self.labels.len() - 1
            }
        }
    }

    fn read(text: &str, keyword: &str, patterns: bool) -> Result<Graph> {
        let mut g = Graph {
            name: None,
            states: Vec::new(),
            labels: Vec::new(),
            edges: Vec::new(),
            initial: None,
            excludes: Vec::new(),
        };
        let mut seen = false;
        // Edges may mention states declared further down.
        let mut pending: Vec<(usize, String, String, String)> = Vec::new();
        for (n, w) in lines(text) {
            match (w[0], &w[1..]) {
                (k, _) if k == keyword => g.name = Some(header(n, &w, keyword, &mut seen)?.to_string()),
                ("state", [id]) => {
                    if g.states.iter().any(|s| s == id) {
                        return Err(bad(n, format!("duplicate state `{id}`")));
                    }
                    g.states.push(id.to_string());
                }
                ("label", [id]) => {
                    if g.labels.iter().any(|l| l == id) {
                        return Err(bad(n, format!("duplicate label `{id}`")));
                    }
                    g.labels.push(id.to_string());
                }
                ("initial", [id]) if !patterns => {
                    if g.initial.is_some() {
                        return Err(bad(n, "second `initial` declaration"));
                    }
                    g.initial = Some((n, id.to_string()));
                }
                ("edge", [s, l, t]) => pending.push((n, s.to_string(), l.to_string(), t.to_string())),
                ("exclude", [s, l]) if patterns => g.excludes.push((n, s.to_string(), l.to_string())),
                _ => return Err(bad(n, format!("unrecognised declaration `{}`", w.join(" ")))),
            }
        }
        if g.name.is_none() {
            return Err(Error::Input(format!("missing `{keyword} <name>` header")));
        }
        for (n, s, l, t) in pending {
            let (s, t) = (g.state(n, &s)?, g.state(n, &t)?);
            let l = g.label(&l);
            if g.edges.contains(&(s, l, t)) {
                return Err(bad(n, "duplicate edge"));
            }
            g.edges.push((s, l, t));
        }
        Ok(g)
    }
}

/// Parses `lts <name>` / `state <id>` / `initial <id>` /
/// `edge <id> <label> <id>`, plus optional `label <id>` declarations.
pub fn parse_lts(text: &str) -> Result<Lts> {
    let g = Graph::read(text, "lts", false)?;
    let (n, init) = g.initial.clone().ok_or_else(|| Error::Input("missing `initial <id>`".into()))?;
    let initial = g.state(n, &init)?;
    Lts::new(g.name.as_deref().unwrap(), g.states, g.labels, g.edges, initial, None)
}

fn print_graph(out: &mut String, states: &[String], initial: Option<usize>, labels: &[String], edges: &[(usize, usize, usize)]) {
    for s in states {
        writeln!(out, "state {s}").unwrap();
    }
    if let Some(i) = initial {
        writeln!(out, "initial {}", states[i]).unwrap();
    }
    for l in labels {
        writeln!(out, "label {l}").unwrap();
    }
    for &(s, l, t) in edges {
        writeln!(out, "edge {} {} {}", states[s], labels[l], states[t]).unwrap();
    }
}

/// Canonical form. Markings carried by reachability graphs are dropped.
pub fn print_lts(lts: &Lts) -> String {
    let mut out = format!("lts {}\n", lts.name().replace(char::is_whitespace, "_"));
    print_graph(&mut out, lts.states(), Some(lts.initial()), lts.labels(), lts.edges());
    out
}

/// The LTS grammar with `pattern <name>`, no initial state, and
/// `exclude <state> <label>` lines.
pub fn parse_pattern(text: &str) -> Result<Pattern> {
    let mut g = Graph::read(text, "pattern", true)?;
    let mut excl = Vec::new();
    for (n, s, l) in std::mem::take(&mut g.excludes) {
        let s = g.state(n, &s)?;
        let l = g.label(&l);
        excl.push((s, l));
    }
    Pattern::new(g.name.as_deref().unwrap(), g.states, g.labels, g.edges, excl)
}

pub fn print_pattern(p: &Pattern) -> String {
    let mut out = format!("pattern {}\n", p.name());
    print_graph(&mut out, p.states(), None, p.labels(), p.arcs());
    for &(s, l) in p.exclusions() {
        writeln!(out, "exclude {} {}", p.states()[s], p.labels()[l]).unwrap();
    }
    out
}

/// Parses `"<prefix> ; <cycle>"` and checks the lasso against `net`.
pub fn parse_lasso(text: &str, net: &Net) -> Result<Lasso> {
    let (prefix, cycle) =
        text.split_once(';').ok_or_else(|| Error::Input(format!("lasso `{text}` lacks the `;` separator")))?;
    let word = |w: &str| net.word(if w.trim() == "ε" { "" } else { w });
    let lasso = Lasso::new(word(prefix)?, word(cycle)?);
    validate_lasso(net, &lasso)?;
    Ok(lasso)
}

pub fn print_lasso(net: &Net, lasso: &Lasso) -> String {
    let cycle = net.show_word(&lasso.cycle);
    if lasso.prefix.is_empty() {
        format!("; {cycle}")
    } else {
        format!("{} ; {cycle}", net.show_word(&lasso.prefix))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TINY: &str = "# two places\nnet tiny\nplace p init 2\nplace q\ntrans t\narc p -> t 2\narc t -> q\n";

    #[test]
    fn net_round_trip() {
        let n = parse_net(TINY).unwrap();
        assert_eq!((n.place_count(), n.transition_count(), n.arc_count()), (2, 1, 2));
        let text = print_net(&n);
        assert_eq!(parse_net(&text).unwrap(), n);
        assert_eq!(print_net(&parse_net(&text).unwrap()), text);
    }

    #[test]
    fn net_errors_carry_line_numbers() {
        let e = parse_net("net x\nplace p\ntrans t\narc p -> t 0\n").unwrap_err();
        assert!(e.to_string().contains("line 4"), "{e}");
        let e = parse_net("net x\nplace p\nplace p\n").unwrap_err();
        assert!(e.to_string().contains("line 3") && e.to_string().contains("duplicate"), "{e}");
        let e = parse_net("net x\nplace p\narc p -> u\n").unwrap_err();
        assert!(e.to_string().contains("unknown"), "{e}");
        assert!(parse_net("net x\nplace p init -1\n").is_err());
        assert!(parse_net("place p\n").is_err());
        assert!(parse_net("net x\nfrob\n").is_err());
    }

    #[test]
    fn transitionless_net() {
        let n = parse_net("net idle\nplace p init 1\n").unwrap();
        let (rg, _) = persinet_core::lts::build_rg(&n, 10).unwrap();
        assert_eq!((rg.state_count(), rg.edge_count()), (1, 0));
    }

    #[test]
    fn lts_round_trip() {
        let text = "lts two\nstate s0\nstate s1\ninitial s0\nedge s0 x s1\nedge s1 y s0\n";
        let l = parse_lts(text).unwrap();
        assert_eq!((l.state_count(), l.edge_count(), l.labels().len()), (2, 2, 2));
        assert_eq!(parse_lts(&print_lts(&l)).unwrap(), l);
        assert!(parse_lts("lts x\nstate a\n").is_err());
        assert!(parse_lts("lts x\nstate a\ninitial a\nedge a x b\n").is_err());
    }

    #[test]
    fn pattern_round_trip() {
        for name in ["nonpers", "nonDC"] {
            let p = persinet_core::patterns::builtin_pattern(name).unwrap();
            assert_eq!(parse_pattern(&print_pattern(&p)).unwrap(), p);
        }
        assert!(parse_pattern("pattern p\nstate a\ninitial a\n").is_err());
    }

    #[test]
    fn lassos() {
        let n = parse_net("net loop\nplace p init 1\ntrans a\narc p -> a\narc a -> p\n").unwrap();
        let l = parse_lasso(" ; a", &n).unwrap();
        assert!(l.prefix.is_empty());
        assert_eq!(print_lasso(&n, &l), "; a");
        assert_eq!(parse_lasso(&print_lasso(&n, &l), &n).unwrap(), l);
        assert!(parse_lasso(" ; ", &n).is_err());
        assert!(parse_lasso("a", &n).is_err());
    }
}
