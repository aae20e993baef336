//! Subcommands. Each one produces a [`Report`]: plain text lines and the
//! same content as JSON for `--json`.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use persinet_core::fairness::{
    fairness_classify, lasso_persistence, maximal_finite_runs, pe_probe_matrix, search_persistent_equivalent_lasso,
    FiniteRegime, LassoSearch, PeBounds, ProbeOutcome, Tier, TierEvidence,
};
use persinet_core::lab::{check_theorem, gen_random_net, lasso_probes, ClassConstraint, GenConfig, LabBounds, TheoremId, TheoremReport};
use persinet_core::lts::{build_rg, lts_properties, persistence_check};
use persinet_core::net::{classify_structure, Witness};
use persinet_core::patterns::{builtin_pattern, derive_nondc_embedding, recognize, validate_embedding, Pattern};
use persinet_core::sequences::{parikh, perm_distance, sequence_persistence, spe_check, SpeMode};
use persinet_core::{Error, Limits, Lts, Net, Run};

use crate::corpus::{corpus_load, embedding_names, verify_entry, ENTRIES};
use crate::dot::emit_dot;
use crate::format::{parse_lasso, parse_lts, parse_net, parse_pattern, print_lasso, print_net};

/// Version tag of the `--json` dump.
pub const DUMP_FORMAT: &str = "persinet-report/1";

#[derive(Debug, Parser)]
#[command(name = "persinet", version, about = "Persistence, permutation equivalence and fairness of Petri nets")]
pub struct Cli {
    /// Print a JSON dump instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true, env = "PERSINET_MAX_STATES", default_value_t = Limits::DEFAULT_MAX_STATES)]
    pub max_states: usize,
    /// Node budget of permutation-class and equivalent searches.
    #[arg(long, global = true, env = "PERSINET_CLASS_GUARD", default_value_t = Limits::DEFAULT_CLASS_GUARD)]
    pub class_guard: usize,
    #[command(subcommand)]
    pub command: Command,
}

/// A net file, or the name of a corpus entry.
#[derive(Debug, Clone, Args)]
pub struct NetArg {
    pub net: String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Regime {
    Maximal,
    Finite,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structural classes and safeness.
    Classify(NetArg),
    /// Reachability graph metrics.
    Rg {
        #[command(flatten)]
        net: NetArg,
        /// Write the graph in DOT format.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Persistence of the reachability graph.
    Persistence(NetArg),
    /// Fire a sequence from the initial marking.
    Seq {
        #[command(flatten)]
        net: NetArg,
        #[arg(long)]
        run: String,
        #[arg(long)]
        persistence: bool,
        #[arg(long)]
        parikh: bool,
    },
    /// Permutation equivalence of two sequences.
    Equiv {
        #[command(flatten)]
        net: NetArg,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Bounded SPE check.
    Spe {
        #[command(flatten)]
        net: NetArg,
        #[arg(long)]
        bound: usize,
        /// Check the Parikh (tilde) variant.
        #[arg(long)]
        parikh: bool,
    },
    /// Pattern recognition in a reachability graph or LTS.
    Pattern {
        /// A net file, an LTS file, or a corpus entry.
        target: String,
        #[arg(long, conflicts_with = "file")]
        name: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        /// Replay the constructive nonDC derivation instead of searching.
        #[arg(long)]
        derive_nondc: bool,
        /// Write the graph with the embedding in bold.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Fairness and persistence of a lasso.
    Fairness {
        #[command(flatten)]
        net: NetArg,
        /// `"<prefix> ; <cycle>"`.
        #[arg(long)]
        lasso: String,
        #[arg(long, value_enum, default_value = "maximal")]
        regime: Regime,
        /// Search for a persistent permutation-equivalent lasso.
        #[arg(long)]
        search_equivalent: bool,
    },
    /// SPE/FPE/JPE/APE evidence from probe runs.
    PeMatrix {
        #[command(flatten)]
        net: NetArg,
        /// One run per line: a lasso `p ; c` or a finite word.
        #[arg(long)]
        probes: Option<PathBuf>,
    },
    /// Check the claims of the built-in corpus.
    VerifyCorpus { entries: Vec<String> },
    /// Check a theorem on seeded random nets.
    Explore {
        #[arg(long)]
        config: Option<PathBuf>,
        /// `A..B`, end exclusive.
        #[arg(long)]
        seeds: String,
        #[arg(long)]
        theorem: String,
        /// Class constraint, e.g. `"FC, pure"`. Defaults to the config
        /// file's, then to the theorem's usual one.
        #[arg(long)]
        class: Option<String>,
    },
}

#[derive(Debug, Default)]
pub struct Report {
    pub lines: Vec<String>,
    pub data: Value,
    /// Exit code for a computed verdict.
    pub code: i32,
}

impl Report {
    fn new(lines: Vec<String>, data: Value) -> Report {
        Report { lines, data, code: 0 }
    }

    pub fn render(&self, command: &str, as_json: bool) -> String {
        if as_json {
            let v = json!({ "format": DUMP_FORMAT, "command": command, "result": self.data });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("serialisable"))
        } else {
            let mut s = self.lines.join("\n");
            s.push('\n');
            s
        }
    }
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Classify(_) => "classify",
            Command::Rg { .. } => "rg",
            Command::Persistence(_) => "persistence",
            Command::Seq { .. } => "seq",
            Command::Equiv { .. } => "equiv",
            Command::Spe { .. } => "spe",
            Command::Pattern { .. } => "pattern",
            Command::Fairness { .. } => "fairness",
            Command::PeMatrix { .. } => "pe-matrix",
            Command::VerifyCorpus { .. } => "verify-corpus",
            Command::Explore { .. } => "explore",
        }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())).into())
}

/// Loads a net from a file, or from the corpus when no such file exists.
pub fn load_net(arg: &str) -> anyhow::Result<Net> {
    let path = Path::new(arg);
    if path.exists() {
        return parse_net(&read(path)?).with_context(|| arg.to_string());
    }
    corpus_load(arg).map(|e| e.net)
}

enum Target {
    Net(Net),
    Lts(Lts),
}

fn load_target(arg: &str) -> anyhow::Result<Target> {
    let path = Path::new(arg);
    if !path.exists() {
        let e = corpus_load(arg)?;
        return Ok(Target::Net(e.net));
    }
    let text = read(path)?;
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    if first.starts_with("lts") {
        Ok(Target::Lts(parse_lts(&text).with_context(|| arg.to_string())?))
    } else {
        Ok(Target::Net(parse_net(&text).with_context(|| arg.to_string())?))
    }
}

fn mark(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn show_witness(net: &Net, w: &Witness) -> String {
    let p = |x| net.place_name(x);
    let t = |x| net.transition_name(x);
    match *w {
        Witness::WeightedArc { place, transition, input, weight } => {
            if input {
                format!("arc {} -> {} has weight {weight}", p(place), t(transition))
            } else {
                format!("arc {} -> {} has weight {weight}", t(transition), p(place))
            }
        }
        Witness::SideCondition { place, transition } => format!("{} both consumes from and produces on {}", t(transition), p(place)),
        Witness::SharedPlace { place, first, second } => format!("place {} is shared by {} and {}", p(place), t(first), t(second)),
        Witness::Conflict { first, second, place } => format!("{} and {} share {}", t(first), t(second), p(place)),
        Witness::PlacePair { first, second, transition } => {
            format!("places {} and {} share output transition {}", p(first), p(second), t(transition))
        }
    }
}

fn classify(net: &Net, limits: &Limits) -> anyhow::Result<Report> {
    let r = classify_structure(net);
    let mut lines = vec![format!("net {}", net.name())];
    let mut data = serde_json::Map::new();
    for (name, flag) in r.rows() {
        let text = match flag.value() {
            None => "n/a (not plain)".to_string(),
            Some(v) => match flag.witness() {
                Some(w) => format!("{} ({})", mark(v), show_witness(net, w)),
                None => mark(v).to_string(),
            },
        };
        lines.push(format!("{name:<6} {text}"));
        data.insert(name.to_string(), json!(flag.value()));
    }
    let (_, report) = build_rg(net, limits.max_states)?;
    let safe = match report.safe {
        Some(s) => format!("{} ({} reachable markings)", mark(s), report.state_count),
        None => format!("unknown (more than {} reachable markings)", report.cutoff),
    };
    lines.push(format!("{:<6} {safe}", "safe"));
    data.insert("safe".into(), json!(report.safe));
    Ok(Report::new(lines, Value::Object(data)))
}

fn rg(net: &Net, dot: Option<&Path>, limits: &Limits) -> anyhow::Result<Report> {
    let (g, r) = build_rg(net, limits.max_states)?;
    let props = lts_properties(&g);
    let deadlocks: Vec<&str> = props.deadlocks.iter().map(|&s| g.state_name(s)).collect();
    let bounds: Vec<String> =
        net.places().map(|p| format!("{}:{}", net.place_name(p), r.place_bounds[p.0])).collect();
    let mut lines = vec![
        format!("states {}", r.state_count),
        format!("edges {}", r.edge_count),
        format!(
            "bounded {}",
            if r.bounded() { "yes".to_string() } else { format!("unknown (cut off at {} states)", r.cutoff) }
        ),
        format!("max bound {}", r.max_bound),
        format!("place bounds {}", bounds.join(" ")),
        format!("safe {}", r.safe.map_or("unknown", mark)),
        format!("deterministic {}", mark(props.deterministic)),
        format!("deadlocks {}", if deadlocks.is_empty() { "none".into() } else { deadlocks.join(" ") }),
    ];
    let ms = g.payload().expect("markings");
    for (s, m) in ms.iter().enumerate() {
        lines.push(format!("{} = {}", g.state_name(s), net.show_marking(m)));
    }
    if let Some(path) = dot {
        fs::write(path, emit_dot(&g, None)).with_context(|| path.display().to_string())?;
        lines.push(format!("wrote {}", path.display()));
    }
    let data = json!({
        "states": r.state_count,
        "edges": r.edge_count,
        "bounded": r.bounded(),
        "max_bound": r.max_bound,
        "place_bounds": r.place_bounds,
        "safe": r.safe,
        "deterministic": props.deterministic,
        "deadlocks": deadlocks,
        "markings": ms.iter().map(|m| m.0.clone()).collect::<Vec<_>>(),
    });
    let mut rep = Report::new(lines, data);
    if !r.bounded() {
        rep.code = 3;
    }
    Ok(rep)
}

fn persistence(net: &Net, limits: &Limits) -> anyhow::Result<Report> {
    let (g, r) = build_rg(net, limits.max_states)?;
    if !r.bounded() {
        return Err(Error::ResourceExceeded(format!("reachability graph exceeds {} states", r.cutoff)).into());
    }
    let v = persistence_check(&g);
    let mut lines = vec![format!("persistent {}", mark(v.persistent))];
    let mut data = json!({ "persistent": v.persistent });
    if let Some((s, t, u)) = v.witness {
        lines.push(format!("witness {}: {} disables {}", g.state_name(s), g.label_name(t), g.label_name(u)));
        data["witness"] = json!({ "state": g.state_name(s), "t": g.label_name(t), "u": g.label_name(u) });
    }
    Ok(Report::new(lines, data))
}

fn seq(net: &Net, run: &str, pers: bool, pk: bool) -> anyhow::Result<Report> {
    let w = net.word(run)?;
    let m = net.fire_sequence(net.initial_marking(), &w)?;
    let mut lines = vec![format!("reaches {}", net.show_marking(&m))];
    let mut data = json!({ "marking": m.0 });
    if pers {
        let v = sequence_persistence(net, net.initial_marking(), &w)?;
        match (v.failing_index, v.disabled_transition) {
            (Some(i), Some(u)) => lines.push(format!(
                "persistent no (step {i}, {}, disables {})",
                net.transition_name(w[i]),
                net.transition_name(u)
            )),
            _ => lines.push("persistent yes".into()),
        }
        data["persistent"] = json!(v.persistent);
        data["failing_index"] = json!(v.failing_index);
    }
    if pk {
        let v = parikh(&w, net.transition_count());
        let parts: Vec<String> = net.transitions().map(|t| format!("{}:{}", net.transition_name(t), v.get(t))).collect();
        lines.push(format!("parikh ({})", parts.join(", ")));
        data["parikh"] = json!(v.0);
    }
    Ok(Report::new(lines, data))
}

fn equiv(net: &Net, a: &str, b: &str, limits: &Limits) -> anyhow::Result<Report> {
    let (x, y) = (net.word(a)?, net.word(b)?);
    let k = net.transition_count();
    let same = parikh(&x, k) == parikh(&y, k);
    let d = perm_distance(net, net.initial_marking(), &x, &y, limits)?;
    let mut lines = vec![format!("equivalent {}", mark(d.is_some())), format!("parikh-equal {}", mark(same))];
    if let Some(d) = d {
        lines.push(format!("adjacent swaps {d}"));
    }
    Ok(Report::new(lines, json!({ "equivalent": d.is_some(), "parikh_equal": same, "swaps": d })))
}

fn spe(net: &Net, bound: usize, pk: bool, limits: &Limits) -> anyhow::Result<Report> {
    let mode = if pk { SpeMode::Parikh } else { SpeMode::Permutation };
    let v = spe_check(net, bound, mode, limits)?;
    let what = if pk { "tilde-SPE" } else { "SPE" };
    let status = if v.holds() { "holds up to bound" } else { "refuted" };
    let mut lines = vec![format!("{what} {status} (bound {bound}, {} sequences)", v.searched)];
    let cx = v.counterexample.as_ref().map(|w| net.show_word(w));
    if let Some(c) = &cx {
        lines.push(format!("counterexample {c}"));
    }
    Ok(Report::new(lines, json!({ "mode": what, "bound": bound, "holds": v.holds(), "counterexample": cx, "searched": v.searched })))
}

fn pattern(
    target: &str,
    name: Option<&str>,
    file: Option<&Path>,
    derive: bool,
    dot: Option<&Path>,
    limits: &Limits,
) -> anyhow::Result<Report> {
    let t = load_target(target)?;
    if derive {
        let Target::Net(net) = t else { bail!(Error::Input("--derive-nondc needs a net".into())) };
        let d = derive_nondc_embedding(&net, 8, limits.class_guard, limits)?;
        let p = builtin_pattern("nonDC")?;
        validate_embedding(&p, &d.rg, &d.embedding).map_err(Error::InvariantBroken)?;
        let names = embedding_names(&p, &d.rg, &d.embedding);
        let mut lines = vec![
            format!("delta {}", net.show_word(&d.delta)),
            format!(
                "conflict at {} between {} and {}",
                d.rg.state_name(d.m),
                net.transition_name(d.a),
                net.transition_name(d.b)
            ),
            format!("witness letters x={} y={}", net.transition_name(d.x), net.transition_name(d.y)),
        ];
        lines.push(format!("embedding {}", names.iter().map(|(k, v)| format!("{k}->{v}")).collect::<Vec<_>>().join(" ")));
        for (fact, ok) in d.near_injectivity() {
            lines.push(format!("  {fact}: {}", mark(ok)));
        }
        lines.push("consequence: net not DC".into());
        if let Some(path) = dot {
            fs::write(path, emit_dot(&d.rg, Some((&p, &d.embedding))))?;
        }
        let facts: serde_json::Map<String, Value> =
            d.near_injectivity().iter().map(|(f, ok)| (f.to_string(), json!(ok))).collect();
        return Ok(Report::new(lines, json!({ "embedding": names, "near_injectivity": facts })));
    }
    let lts = match t {
        Target::Net(n) => {
            let (g, r) = build_rg(&n, limits.max_states)?;
            if !r.bounded() {
                return Err(Error::ResourceExceeded(format!("reachability graph exceeds {} states", r.cutoff)).into());
            }
            g
        }
        Target::Lts(l) => l,
    };
    let (pat, found, embedding, consequence): (Pattern, bool, _, Option<String>) = match (name, file) {
        (Some(n), None) => {
            let r = recognize(&lts, n)?;
            (builtin_pattern(n)?, r.found, r.embedding, r.consequence.map(|c| c.to_string()))
        }
        (None, Some(f)) => {
            let p = parse_pattern(&read(f)?).with_context(|| f.display().to_string())?;
            let e = persinet_core::patterns::find_embedding(&p, &lts);
            (p, e.is_some(), e, None)
        }
        _ => bail!(Error::Input("give exactly one of --name and --file".into())),
    };
    let mut lines = vec![format!("pattern {} found {}", pat.name(), mark(found))];
    let names = embedding.as_ref().map(|e| embedding_names(&pat, &lts, e));
    if let Some(n) = &names {
        lines.push(format!("embedding {}", n.iter().map(|(k, v)| format!("{k}->{v}")).collect::<Vec<_>>().join(" ")));
    }
    if let Some(c) = &consequence {
        lines.push(format!("consequence: {c}"));
    }
    if let Some(path) = dot {
        let hl = embedding.as_ref().map(|e| (&pat, e));
        fs::write(path, emit_dot(&lts, hl))?;
    }
    Ok(Report::new(lines, json!({ "pattern": pat.name(), "found": found, "embedding": names, "consequence": consequence })))
}

fn fairness(net: &Net, lasso: &str, regime: Regime, search: bool, limits: &Limits) -> anyhow::Result<Report> {
    let l = parse_lasso(lasso, net)?;
    let regime = match regime {
        Regime::Maximal => FiniteRegime::MaximalFiniteIsFair,
        Regime::Finite => FiniteRegime::FiniteIsFair,
    };
    let f = fairness_classify(net, &Run::Lasso(l.clone()), regime)?;
    let p = lasso_persistence(net, &l)?;
    let mut lines = vec![
        format!("lasso {}", print_lasso(net, &l)),
        format!("strongly fair {}", mark(f.strongly_fair)),
        format!("weakly fair {}", mark(f.weakly_fair)),
        format!("progress {}", mark(f.progress)),
        format!("persistent {}", mark(p.persistent)),
    ];
    let mut neglect = serde_json::Map::new();
    for t in net.transitions() {
        let n = f.neglected[t.0].to_string();
        lines.push(format!("  {} {n}", net.transition_name(t)));
        neglect.insert(net.transition_name(t).to_string(), json!(n));
    }
    let mut data = json!({
        "strongly_fair": f.strongly_fair,
        "weakly_fair": f.weakly_fair,
        "progress": f.progress,
        "persistent": p.persistent,
        "neglected": neglect,
    });
    if search {
        let b = PeBounds::default();
        match search_persistent_equivalent_lasso(net, &l, b.max_prefix, b.max_cycle, b.depth, limits)? {
            LassoSearch::Found(e) => {
                lines.push(format!("persistent equivalent {}", print_lasso(net, &e)));
                data["equivalent"] = json!(print_lasso(net, &e));
            }
            LassoSearch::NoneWithinBounds => {
                lines.push(format!(
                    "persistent equivalent none within bounds (prefix {}, cycle {}, depth {})",
                    b.max_prefix, b.max_cycle, b.depth
                ));
                data["equivalent"] = Value::Null;
            }
        }
    }
    Ok(Report::new(lines, data))
}

fn evidence(e: TierEvidence) -> &'static str {
    match e {
        TierEvidence::NotRefuted => "not refuted",
        TierEvidence::Refuted { definitive: true } => "refuted",
        TierEvidence::Refuted { definitive: false } => "refuted within bounds",
    }
}

fn pe_matrix(net: &Net, probes: Option<&Path>, limits: &Limits) -> anyhow::Result<Report> {
    let runs: Vec<Run> = match probes {
        Some(path) => {
            let text = read(path)?;
            let mut runs = Vec::new();
            for (i, line) in text.lines().enumerate() {
                let line = line.split('#').next().unwrap_or("").trim();
                if line.is_empty() {
                    continue;
                }
                let run = if line.contains(';') {
                    parse_lasso(line, net).map(Run::Lasso)
                } else {
                    net.word(line).map(Run::Finite)
                };
                runs.push(run.map_err(|e| Error::Input(format!("{}:{}: {e}", path.display(), i + 1)))?);
            }
            runs
        }
        None => {
            let (g, _) = build_rg(net, limits.max_states)?;
            let mut runs: Vec<Run> = lasso_probes(&g, 4, 10, 16).into_iter().map(Run::Lasso).collect();
            runs.extend(maximal_finite_runs(net, 10, 16)?.into_iter().map(Run::Finite));
            runs
        }
    };
    let m = pe_probe_matrix(net, &runs, PeBounds::default(), limits)?;
    let show = |r: &Run| match r {
        Run::Finite(w) => net.show_word(w),
        Run::Lasso(l) => format!("({})", print_lasso(net, l)),
    };
    let mut lines = vec![
        format!("SPE {}", if m.spe.holds() { "holds up to bound" } else { "refuted" }),
        format!("tilde-SPE {}", if m.spe_parikh.holds() { "holds up to bound" } else { "refuted" }),
    ];
    for (name, tier) in [("FPE", Tier::Fair), ("JPE", Tier::Just), ("APE", Tier::All)] {
        lines.push(format!("{name} {}", evidence(m.evidence(tier))));
    }
    let mut rows = Vec::new();
    for row in &m.probes {
        let eq = match &row.equivalent {
            ProbeOutcome::Found(r) => format!("equivalent {}", show(r)),
            ProbeOutcome::NoneExists => "no persistent equivalent".into(),
            ProbeOutcome::NoneWithinBounds => "none within bounds".into(),
        };
        lines.push(format!(
            "  {} fair={} just={} persistent={} {eq}",
            show(&row.run),
            mark(row.fairness.strongly_fair),
            mark(row.fairness.weakly_fair),
            mark(row.persistent)
        ));
        rows.push(json!({ "run": show(&row.run), "fair": row.fairness.strongly_fair, "just": row.fairness.weakly_fair, "persistent": row.persistent, "equivalent": eq }));
    }
    let data = json!({
        "spe": m.spe.holds(),
        "spe_parikh": m.spe_parikh.holds(),
        "fpe": evidence(m.evidence(Tier::Fair)),
        "jpe": evidence(m.evidence(Tier::Just)),
        "ape": evidence(m.evidence(Tier::All)),
        "probes": rows,
    });
    Ok(Report::new(lines, data))
}

fn verify_corpus(entries: &[String], limits: &Limits) -> anyhow::Result<Report> {
    let names: Vec<&str> = if entries.is_empty() { ENTRIES.to_vec() } else { entries.iter().map(String::as_str).collect() };
    let results: Vec<anyhow::Result<(String, Vec<crate::corpus::Check>)>> = std::thread::scope(|s| {
        let handles: Vec<_> = names
            .iter()
            .map(|&n| s.spawn(move || corpus_load(n).and_then(|e| Ok((n.to_string(), verify_entry(&e, limits)?)))))
            .collect();
        handles.into_iter().map(|h| h.join().expect("verifier thread")).collect()
    });
    let mut lines = Vec::new();
    let mut data = Vec::new();
    let (mut pass, mut fail) = (0, 0);
    for r in results {
        let (name, checks) = r?;
        for c in checks {
            if c.ok {
                pass += 1;
            } else {
                fail += 1;
            }
            lines.push(format!("{} {name}: {} ({})", if c.ok { "PASS" } else { "FAIL" }, c.claim, c.detail));
            data.push(json!({ "entry": name, "claim": c.claim, "ok": c.ok, "detail": c.detail }));
        }
    }
    lines.push(format!("{pass} passed, {fail} failed"));
    let mut rep = Report::new(lines, json!({ "checks": data, "passed": pass, "failed": fail }));
    if fail > 0 {
        rep.code = 4;
    }
    Ok(rep)
}

/// `explore --config` file. Omitted keys keep the generator defaults.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExploreConfig {
    places: Option<usize>,
    transitions: Option<usize>,
    max_weight: Option<u32>,
    arc_density: Option<f64>,
    token_budget: Option<u32>,
    class_constraint: Option<String>,
    bounded_within: Option<usize>,
    #[serde(default)]
    bounds: BoundsConfig,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoundsConfig {
    seq_len: Option<usize>,
    max_prefix: Option<usize>,
    max_cycle: Option<usize>,
    depth: Option<usize>,
    rg_states: Option<usize>,
    samples: Option<usize>,
}

fn explore_setup(config: Option<&Path>, id: TheoremId, class: Option<&str>) -> anyhow::Result<(GenConfig, LabBounds)> {
    let mut g = GenConfig { class_constraint: ClassConstraint::parse(id.default_constraint())?, ..GenConfig::default() };
    let mut b = LabBounds::default();
    let Some(path) = config else {
        if let Some(c) = class {
            g.class_constraint = ClassConstraint::parse(c)?;
        }
        return Ok((g, b));
    };
    let c: ExploreConfig = toml::from_str(&read(path)?).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    g.places = c.places.unwrap_or(g.places);
    g.transitions = c.transitions.unwrap_or(g.transitions);
    g.max_weight = c.max_weight.unwrap_or(g.max_weight);
    g.arc_density = c.arc_density.unwrap_or(g.arc_density);
    g.token_budget = c.token_budget.unwrap_or(g.token_budget);
    if let Some(cc) = c.class_constraint {
        g.class_constraint = ClassConstraint::parse(&cc)?;
    }
    if c.bounded_within.is_some() {
        g.bounded_within = c.bounded_within;
    }
    let o = c.bounds;
    b.seq_len = o.seq_len.unwrap_or(b.seq_len);
    b.max_prefix = o.max_prefix.unwrap_or(b.max_prefix);
    b.max_cycle = o.max_cycle.unwrap_or(b.max_cycle);
    b.depth = o.depth.unwrap_or(b.depth);
    b.rg_states = o.rg_states.unwrap_or(b.rg_states);
    b.samples = o.samples.unwrap_or(b.samples);
    if let Some(c) = class {
        g.class_constraint = ClassConstraint::parse(c)?;
    }
    g.validate()?;
    Ok((g, b))
}

pub fn parse_seeds(text: &str) -> anyhow::Result<std::ops::Range<u64>> {
    let bad = || Error::Input(format!("seed range `{text}` is not of the form A..B"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let (a, b): (u64, u64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad().into());
    }
    Ok(a..b)
}

/// Runs `id` over the seeds and merges the reports.
pub fn explore_report(
    id: TheoremId,
    cfg: &GenConfig,
    bounds: &LabBounds,
    seeds: std::ops::Range<u64>,
    limits: &Limits,
) -> anyhow::Result<TheoremReport> {
    let start = Instant::now();
    let mut total = TheoremReport::new(id, *bounds);
    for seed in seeds {
        let net = match gen_random_net(&cfg.with_seed(seed)) {
            Ok(n) => n,
            Err(Error::ResourceExceeded(why)) => {
                total.instances += 1;
                total.skipped.push(format!("seed {seed}: {why}"));
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        total.merge(check_theorem(id, &net, bounds, limits)?);
    }
    total.elapsed_ms = Some(start.elapsed().as_millis());
    Ok(total)
}

fn explore(config: Option<&Path>, seeds: &str, theorem: &str, class: Option<&str>, limits: &Limits) -> anyhow::Result<Report> {
    let id: TheoremId = theorem.parse()?;
    let (cfg, bounds) = explore_setup(config, id, class)?;
    let r = explore_report(id, &cfg, &bounds, parse_seeds(seeds)?, limits)?;
    let mut lines = vec![
        format!("theorem {id}"),
        format!("instances {}", r.instances),
        format!("confirmed {}", r.confirmations),
        format!("skipped {}", r.skipped.len()),
        format!("violations {}", r.violations.len()),
        format!("refutations {}", r.refutations.len()),
        format!("elapsed {} ms", r.elapsed_ms.unwrap_or(0)),
    ];
    for v in &r.violations {
        lines.push(format!("violation {}: {}", v.instance, v.detail));
        lines.extend(print_net(&v.net).lines().map(|l| format!("    {l}")));
    }
    for n in r.refutations.iter().chain(&r.notes) {
        lines.push(format!("note {n}"));
    }
    let data = json!({
        "theorem": id.name(),
        "instances": r.instances,
        "confirmed": r.confirmations,
        "skipped": r.skipped,
        "violations": r.violations.iter().map(|v| json!({ "instance": v.instance, "detail": v.detail, "net": print_net(&v.net) })).collect::<Vec<_>>(),
        "refutations": r.refutations,
        "notes": r.notes,
        "elapsed_ms": r.elapsed_ms,
    });
    Ok(Report::new(lines, data))
}

pub fn run(cli: &Cli) -> anyhow::Result<Report> {
    let limits = Limits { max_states: cli.max_states, class_guard: cli.class_guard, ..Limits::default() };
    let l = &limits;
    match &cli.command {
        Command::Classify(n) => classify(&load_net(&n.net)?, l),
        Command::Rg { net, dot } => rg(&load_net(&net.net)?, dot.as_deref(), l),
        Command::Persistence(n) => persistence(&load_net(&n.net)?, l),
        Command::Seq { net, run, persistence, parikh } => seq(&load_net(&net.net)?, run, *persistence, *parikh),
        Command::Equiv { net, a, b } => equiv(&load_net(&net.net)?, a, b, l),
        Command::Spe { net, bound, parikh } => spe(&load_net(&net.net)?, *bound, *parikh, l),
        Command::Pattern { target, name, file, derive_nondc, dot } => {
            pattern(target, name.as_deref(), file.as_deref(), *derive_nondc, dot.as_deref(), l)
        }
        Command::Fairness { net, lasso, regime, search_equivalent } => {
            fairness(&load_net(&net.net)?, lasso, *regime, *search_equivalent, l)
        }
        Command::PeMatrix { net, probes } => pe_matrix(&load_net(&net.net)?, probes.as_deref(), l),
        Command::VerifyCorpus { entries } => verify_corpus(entries, l),
        Command::Explore { config, seeds, theorem, class } => explore(config.as_deref(), seeds, theorem, class.as_deref(), l),
    }
}

/// Exit class of an error: 3 for resource bounds, 4 for broken invariants,
/// 2 for everything else.
pub fn exit_code(e: &anyhow::Error) -> i32 {
    for cause in e.chain() {
        if let Some(err) = cause.downcast_ref::<Error>() {
            return match err {
                Error::ResourceExceeded(_) => 3,
                Error::InvariantBroken(_) => 4,
                _ => 2,
            };
        }
    }
    2
}
