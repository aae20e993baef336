//! The embedded figure corpus and its manifests.
//!
//! Every entry is a net document (and sometimes an LTS document) plus a
//! TOML manifest of machine-checkable claims. [`verify_entry`] runs each
//! claim through the analysis library.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context};
use serde::Deserialize;

use persinet_core::fairness::{
    fairness_classify, lasso_equiv_at_depth, lasso_persistence, maximal_finite_runs, pe_probe_matrix,
    search_persistent_equivalent_lasso, FiniteRegime, LassoEquivalence, LassoSearch, PeBounds, Tier, TierEvidence,
};
use persinet_core::lab::{check_theorem, LabBounds, TheoremId};
use persinet_core::lts::{build_rg, isomorphic, lts_properties, persistence_check};
use persinet_core::net::{classify_structure, concurrently_enables, disjoint_sum, project_sequence, reverse_dual, Side};
use persinet_core::patterns::{all_embeddings, builtin_pattern, derive_nondc_embedding, Embedding, Pattern};
use persinet_core::sequences::{
    complete_diamond, parikh, perm_distance, persistent_parikh_equivalent, persistent_perm_equivalent,
    sequence_persistence, spe_check, SpeMode,
};
use persinet_core::{Error, Limits, Lts, Marking, Net, Run};

use crate::format::{parse_lasso, parse_lts, parse_net, print_net};

macro_rules! doc {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../corpus/", $name)))),*]
    };
}

static DOCUMENTS: &[(&str, &str)] = doc!(
    "fig1_basic.net", "fig1_basic.toml", "ts1.lts",
    "fig2_confuse.net", "fig2_confuse.toml", "ts2.lts",
    "fig4_perslocal.net", "fig4_perslocal.toml",
    "fig5_acbc.net", "fig5_acbc.toml",
    "fig6_unfair.net", "fig6_unfair.toml",
    "fig7_left.net", "fig7_left.toml",
    "fig7_right.net", "fig7_right.toml",
    "fig8_variant.net", "fig8_variant.toml",
    "fig10_fpe_not_spe.net", "fig10_fpe_not_spe.toml",
    "fig12_spar.net", "fig12_spar.toml",
    "fig13_impure_diamond.net", "fig13_impure_diamond.toml",
    "fig14_counterexample.net", "fig14_counterexample.toml", "ts9.lts",
    "fig15_a_star.net", "fig15_a_star.toml",
    "fig15_b.net", "fig15_b.toml",
    "fig15_sum.net", "fig15_sum.toml",
    "fig15_choice.net", "fig15_choice.toml",
    "fig16_appendix.net", "fig16_appendix.toml",
);

pub const ENTRIES: &[&str] = &[
    "fig1_basic",
    "fig2_confuse",
    "fig4_perslocal",
    "fig5_acbc",
    "fig6_unfair",
    "fig7_left",
    "fig7_right",
    "fig8_variant",
    "fig10_fpe_not_spe",
    "fig12_spar",
    "fig13_impure_diamond",
    "fig14_counterexample",
    "fig15_a_star",
    "fig15_b",
    "fig15_sum",
    "fig15_choice",
    "fig16_appendix",
];

/// Raw text of an embedded document, e.g. `"ts1.lts"`.
pub fn document(file: &str) -> Option<&'static str> {
    DOCUMENTS.iter().find(|(n, _)| *n == file).map(|(_, t)| *t)
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub figure: String,
    pub net: String,
    pub lts: Option<String>,
    pub sum_of: Option<[String; 2]>,
    #[serde(default)]
    pub classes: BTreeMap<String, bool>,
    #[serde(default)]
    pub dual_classes: BTreeMap<String, bool>,
    pub rg: Option<RgClaim>,
    pub persistence: Option<PersistenceClaim>,
    #[serde(default)]
    pub reach: Vec<ReachClaim>,
    #[serde(default)]
    pub seq: Vec<SeqClaim>,
    #[serde(default)]
    pub concurrent: Vec<ConcurrentClaim>,
    #[serde(default)]
    pub equiv: Vec<EquivClaim>,
    #[serde(default)]
    pub persistent_equivalent: Vec<EquivalentClaim>,
    #[serde(default)]
    pub parikh_equivalent: Vec<EquivalentClaim>,
    #[serde(default)]
    pub spe: Vec<SpeClaim>,
    #[serde(default)]
    pub diamond: Vec<DiamondClaim>,
    #[serde(default)]
    pub lasso: Vec<LassoClaim>,
    #[serde(default)]
    pub lasso_equiv: Vec<LassoEquivClaim>,
    #[serde(default)]
    pub probe: Vec<ProbeClaim>,
    #[serde(default)]
    pub projection: Vec<ProjectionClaim>,
    #[serde(default)]
    pub pattern: Vec<PatternClaim>,
    pub derive_nondc: Option<DeriveClaim>,
    pub pe_matrix: Option<MatrixClaim>,
    #[serde(default)]
    pub theorem: Vec<TheoremClaim>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RgClaim {
    pub states: Option<usize>,
    pub edges: Option<usize>,
    pub deadlocks: Option<Vec<String>>,
    pub max_bound: Option<u32>,
    #[serde(default)]
    pub place_bounds: BTreeMap<String, u32>,
    pub safe: Option<bool>,
    pub isomorphic_to_lts: Option<bool>,
    pub isomorphic_to: Option<CrossClaim>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossClaim {
    pub entry: String,
    pub expect: bool,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PersistenceClaim {
    pub persistent: bool,
    /// `[state, t, u]`.
    pub witness: Option<[String; 3]>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReachClaim {
    pub word: String,
    /// Unlisted places hold no token.
    pub marking: Option<BTreeMap<String, u32>>,
    pub state: Option<String>,
    #[serde(default = "yes")]
    pub firable: bool,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeqClaim {
    pub word: String,
    pub persistent: bool,
    pub failing_index: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConcurrentClaim {
    pub state: String,
    pub pair: [String; 2],
    pub expect: bool,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquivClaim {
    pub a: String,
    pub b: String,
    pub equivalent: bool,
    pub max_swaps: Option<usize>,
    pub parikh_equal: Option<bool>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquivalentClaim {
    /// RG state to start from; the initial marking by default.
    pub from: Option<String>,
    pub word: String,
    /// The expected first witness. Absent together with `exists` means none.
    pub expect: Option<String>,
    pub exists: Option<bool>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpeClaim {
    pub bound: usize,
    #[serde(default)]
    pub parikh: bool,
    pub holds: bool,
    pub counterexample_in: Option<Vec<String>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiamondClaim {
    pub state: String,
    pub y: String,
    pub x: String,
    /// The closing RG state, or `"unsupported"`.
    pub expect: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LassoClaim {
    pub lasso: String,
    pub valid: Option<bool>,
    pub regime: Option<String>,
    pub persistent: Option<bool>,
    pub strongly_fair: Option<bool>,
    pub weakly_fair: Option<bool>,
    pub progress: Option<bool>,
    #[serde(default)]
    pub neglected: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LassoEquivClaim {
    pub a: String,
    pub b: String,
    pub depth: usize,
    pub equivalent: bool,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeClaim {
    pub lasso: String,
    /// `found` or `none-within-bounds`.
    pub outcome: String,
    pub equivalent: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectionClaim {
    pub lasso: String,
    pub side: String,
    pub regime: Option<String>,
    /// The projected finite word, when the projection is finite.
    pub expect: Option<String>,
    pub fair: Option<bool>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternClaim {
    pub name: String,
    /// `rg` or `lts`.
    pub target: String,
    pub found: bool,
    /// Pattern state or label → target state or label, for one embedding.
    pub includes: Option<BTreeMap<String, String>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeriveClaim {
    /// `valid`, `precondition` or `unsupported`.
    pub outcome: String,
    pub embedding: Option<BTreeMap<String, String>>,
    pub legs: Option<[String; 2]>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Probes {
    Lassos(Vec<String>),
    /// `"maximal-finite"`.
    Named(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixClaim {
    pub probes: Probes,
    pub spe_bound: Option<usize>,
    /// `holds` or `refuted`.
    pub spe: Option<String>,
    pub fair: Option<String>,
    pub just: Option<String>,
    pub all: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheoremClaim {
    pub id: String,
    /// `confirmed`, `skipped` or `violated`.
    pub outcome: String,
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub net: Net,
    pub lts: Option<Lts>,
    pub manifest: Manifest,
}

pub fn corpus_load(name: &str) -> anyhow::Result<CorpusEntry> {
    if !ENTRIES.contains(&name) {
        return Err(Error::Unknown { kind: "corpus entry", name: name.to_string() }.into());
    }
    let manifest: Manifest = toml::from_str(document(&format!("{name}.toml")).expect("manifest is embedded"))
        .with_context(|| format!("manifest of {name}"))?;
    let text = document(&manifest.net).ok_or_else(|| anyhow!("{name}: missing document {}", manifest.net))?;
    let mut net = parse_net(text).with_context(|| format!("{name}: {}", manifest.net))?;
    if let Some([l, r]) = &manifest.sum_of {
        // Built from its components so the sum keeps its side tags.
        let sum = disjoint_sum(&corpus_load(l)?.net, &corpus_load(r)?.net).renamed(name);
        if print_net(&sum) != print_net(&net) {
            bail!("{name}: document differs from the sum of {l} and {r}");
        }
        net = sum;
    }
    let lts = match &manifest.lts {
        Some(file) => {
            let text = document(file).ok_or_else(|| anyhow!("{name}: missing document {file}"))?;
            Some(parse_lts(text).with_context(|| format!("{name}: {file}"))?)
        }
        None => None,
    };
    Ok(CorpusEntry { name: name.to_string(), net, lts, manifest })
}

/// Outcome of one manifest claim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub claim: String,
    pub ok: bool,
    pub detail: String,
}

struct Checker {
    rg: Lts,
    limits: Limits,
    out: Vec<Check>,
}

impl Checker {
    fn record(&mut self, claim: String, result: anyhow::Result<(bool, String)>) {
        let (ok, detail) = result.unwrap_or_else(|e| (false, format!("error: {e:#}")));
        self.out.push(Check { claim, ok, detail });
    }

    fn expect<T: PartialEq + std::fmt::Debug>(&mut self, claim: String, want: T, got: anyhow::Result<T>) {
        let r = got.map(|g| (g == want, format!("expected {want:?}, got {g:?}")));
        self.record(claim, r);
    }

    fn state(&self, name: &str) -> anyhow::Result<&Marking> {
        let s = self.rg.state(name)?;
        Ok(&self.rg.payload().expect("markings")[s])
    }

    fn state_of(&self, m: &Marking) -> String {
        let ms = self.rg.payload().expect("markings");
        ms.iter().position(|x| x == m).map_or_else(|| m.to_string(), |i| self.rg.state_name(i).to_string())
    }
}

fn regime(r: &Option<String>) -> anyhow::Result<FiniteRegime> {
    match r.as_deref() {
        None | Some("maximal") => Ok(FiniteRegime::MaximalFiniteIsFair),
        Some("finite") => Ok(FiniteRegime::FiniteIsFair),
        Some(other) => bail!("unknown regime `{other}`"),
    }
}

fn evidence_name(e: TierEvidence) -> &'static str {
    match e {
        TierEvidence::NotRefuted => "not-refuted",
        TierEvidence::Refuted { definitive: true } => "refuted",
        TierEvidence::Refuted { definitive: false } => "refuted-within-bounds",
    }
}

/// Named map of an embedding: pattern state and label names → target names.
pub fn embedding_names(p: &Pattern, target: &Lts, e: &Embedding) -> BTreeMap<String, String> {
    let mut m = BTreeMap::new();
    for (i, &s) in e.state_map.iter().enumerate() {
        m.insert(p.states()[i].clone(), target.state_name(s).to_string());
    }
    for (i, &l) in e.label_map.iter().enumerate() {
        m.insert(p.labels()[i].clone(), target.label_name(l).to_string());
    }
    m
}

/// Runs every claim of `entry`'s manifest.
pub fn verify_entry(entry: &CorpusEntry, limits: &Limits) -> anyhow::Result<Vec<Check>> {
    let net = &entry.net;
    let man = &entry.manifest;
    let (rg, report) = build_rg(net, limits.max_states)?;
    let mut c = Checker { rg, limits: *limits, out: Vec::new() };

    let classes = classify_structure(net);
    for (key, &want) in &man.classes {
        let got = match key.as_str() {
            "safe" => Ok(report.safe == Some(true)),
            k => classes
                .rows()
                .iter()
                .find(|(n, _)| *n == k)
                .map(|(_, f)| f.holds())
                .ok_or_else(|| anyhow!("unknown class `{k}`")),
        };
        c.expect(format!("class {key}"), want, got);
    }
    if !man.dual_classes.is_empty() {
        let dual = classify_structure(&reverse_dual(net));
        for (key, &want) in &man.dual_classes {
            let got = dual.rows().iter().find(|(n, _)| n == key).map(|(_, f)| f.holds());
            c.expect(format!("reverse dual {key}"), want, got.ok_or_else(|| anyhow!("unknown class `{key}`")));
        }
    }

    if let Some(r) = &man.rg {
        if let Some(n) = r.states {
            c.expect("rg states".into(), n, Ok(c.rg.state_count()));
        }
        if let Some(n) = r.edges {
            c.expect("rg edges".into(), n, Ok(c.rg.edge_count()));
        }
        if let Some(d) = &r.deadlocks {
            let got: Vec<String> =
                lts_properties(&c.rg).deadlocks.iter().map(|&s| c.rg.state_name(s).to_string()).collect();
            c.expect("rg deadlocks".into(), d.clone(), Ok(got));
        }
        if let Some(k) = r.max_bound {
            c.expect("rg max bound".into(), k, Ok(report.max_bound));
        }
        for (p, &k) in &r.place_bounds {
            let got = net.place(p).map(|p| report.place_bounds[p.0]).map_err(Into::into);
            c.expect(format!("bound of {p}"), k, got);
        }
        if let Some(s) = r.safe {
            c.expect("rg safe".into(), Some(s), Ok(report.safe));
        }
        if let Some(want) = r.isomorphic_to_lts {
            let got = match &entry.lts {
                Some(l) => isomorphic(&c.rg, l).map(|r| r.is_ok()).map_err(Into::into),
                None => Err(anyhow!("entry has no LTS document")),
            };
            c.expect("rg isomorphic to LTS document".into(), want, got);
        }
        if let Some(x) = &r.isomorphic_to {
            let got = corpus_load(&x.entry).and_then(|other| {
                let (org, _) = build_rg(&other.net, limits.max_states)?;
                Ok(isomorphic(&c.rg, &org)?.is_ok())
            });
            c.expect(format!("rg isomorphic to RG({})", x.entry), x.expect, got);
        }
    }

    if let Some(p) = &man.persistence {
        let v = persistence_check(&c.rg);
        c.expect("persistent".into(), p.persistent, Ok(v.persistent));
        if let Some(w) = &p.witness {
            let got = v.witness.map(|(s, t, u)| {
                [c.rg.state_name(s).to_string(), c.rg.label_name(t).to_string(), c.rg.label_name(u).to_string()]
            });
            c.expect("persistence witness".into(), Some(w.clone()), Ok(got));
        }
    }

    for r in &man.reach {
        let claim = format!("reach `{}`", r.word);
        let got = net.word(&r.word).and_then(|w| net.fire_sequence(net.initial_marking(), &w));
        if !r.firable {
            c.expect(claim, false, Ok(got.is_ok()));
            continue;
        }
        let res = got.map_err(anyhow::Error::from).and_then(|m| {
            if let Some(want) = &r.marking {
                let mut expect = vec![0u32; net.place_count()];
                for (p, &k) in want {
                    expect[net.place(p)?.0] = k;
                }
                if expect != m.0 {
                    return Ok((false, format!("reached {}", net.show_marking(&m))));
                }
            }
            if let Some(s) = &r.state {
                let name = c.state_of(&m);
                if &name != s {
                    return Ok((false, format!("reached {name}")));
                }
            }
            Ok((true, c.state_of(&m)))
        });
        c.record(claim, res);
    }

    for s in &man.seq {
        let got = net
            .word(&s.word)
            .and_then(|w| sequence_persistence(net, net.initial_marking(), &w))
            .map(|v| (v.persistent, v.failing_index));
        let want = (s.persistent, if s.persistent { None } else { s.failing_index });
        let got = got.map(|(p, i)| (p, if s.failing_index.is_some() { i } else { None }));
        c.expect(format!("sequence `{}` persistence", s.word), want, got.map_err(Into::into));
    }

    for q in &man.concurrent {
        let got = (|| -> anyhow::Result<bool> {
            let m = c.state(&q.state)?;
            Ok(concurrently_enables(net, m, net.transition(&q.pair[0])?, net.transition(&q.pair[1])?)?)
        })();
        c.expect(format!("{} and {} concurrently enabled at {}", q.pair[0], q.pair[1], q.state), q.expect, got);
    }

    for e in &man.equiv {
        let res = (|| -> anyhow::Result<(bool, String)> {
            let (a, b) = (net.word(&e.a)?, net.word(&e.b)?);
            let d = perm_distance(net, net.initial_marking(), &a, &b, limits)?;
            let mut ok = d.is_some() == e.equivalent;
            if let (Some(max), Some(d)) = (e.max_swaps, d) {
                ok &= d <= max;
            }
            if let Some(pe) = e.parikh_equal {
                let k = net.transition_count();
                ok &= (parikh(&a, k) == parikh(&b, k)) == pe;
            }
            Ok((ok, format!("swap distance {d:?}")))
        })();
        c.record(format!("`{}` vs `{}`", e.a, e.b), res);
    }

    for (kind, claims) in [("permutation", &man.persistent_equivalent), ("Parikh", &man.parikh_equivalent)] {
        for e in claims.iter() {
            let res = (|| -> anyhow::Result<(bool, String)> {
                let m0 = match &e.from {
                    Some(s) => c.state(s)?.clone(),
                    None => net.initial_marking().clone(),
                };
                let w = net.word(&e.word)?;
                let got = if kind == "Parikh" {
                    persistent_parikh_equivalent(net, &m0, &parikh(&w, net.transition_count()), limits)?
                } else {
                    persistent_perm_equivalent(net, &m0, &w, limits)?
                };
                let shown = got.as_ref().map(|g| net.show_word(g));
                let ok = match (&e.expect, e.exists) {
                    (Some(x), _) => shown.as_deref() == Some(x.as_str()),
                    (None, Some(ex)) => shown.is_some() == ex,
                    (None, None) => shown.is_none(),
                };
                Ok((ok, format!("got {shown:?}")))
            })();
            c.record(format!("persistent {kind} equivalent of `{}`", e.word), res);
        }
    }

    for s in &man.spe {
        let mode = if s.parikh { SpeMode::Parikh } else { SpeMode::Permutation };
        let res = spe_check(net, s.bound, mode, limits).map_err(anyhow::Error::from).map(|v| {
            let cx = v.counterexample.as_ref().map(|w| net.show_word(w));
            let mut ok = v.holds() == s.holds;
            if let Some(set) = &s.counterexample_in {
                ok &= cx.as_ref().is_some_and(|w| set.contains(w));
            }
            (ok, format!("{:?} after {} sequences, counterexample {cx:?}", v.status, v.searched))
        });
        let name = if s.parikh { "tilde-SPE" } else { "SPE" };
        c.record(format!("{name} up to {}", s.bound), res);
    }

    for d in &man.diamond {
        let claim = format!("diamond at {} with y={}, x={}", d.state, d.y, d.x);
        let got = (|| -> anyhow::Result<String> {
            let m = c.state(&d.state)?;
            match complete_diamond(net, m, net.transition(&d.y)?, net.transition(&d.x)?) {
                Ok(dm) => Ok(c.state_of(&dm.m_hat)),
                Err(Error::UnsupportedClass(_)) => Ok("unsupported".into()),
                Err(e) => Err(e.into()),
            }
        })();
        c.expect(claim, d.expect.clone(), got);
    }

    for l in &man.lasso {
        let claim = format!("lasso ({})", l.lasso);
        let lasso = match parse_lasso(&l.lasso, net) {
            Ok(x) => x,
            Err(e) => {
                let ok = l.valid == Some(false);
                c.out.push(Check { claim, ok, detail: e.to_string() });
                continue;
            }
        };
        if l.valid == Some(false) {
            c.out.push(Check { claim, ok: false, detail: "lasso parsed although invalid expected".into() });
            continue;
        }
        let res = (|| -> anyhow::Result<(bool, String)> {
            let f = fairness_classify(net, &Run::Lasso(lasso.clone()), regime(&l.regime)?)?;
            let p = lasso_persistence(net, &lasso)?.persistent;
            let mut ok = true;
            ok &= l.persistent.is_none_or(|x| x == p);
            ok &= l.strongly_fair.is_none_or(|x| x == f.strongly_fair);
            ok &= l.weakly_fair.is_none_or(|x| x == f.weakly_fair);
            ok &= l.progress.is_none_or(|x| x == f.progress);
            for (t, want) in &l.neglected {
                ok &= f.neglected[net.transition(t)?.0].to_string() == *want;
            }
            Ok((
                ok,
                format!(
                    "persistent={p} strongly_fair={} weakly_fair={} progress={}",
                    f.strongly_fair, f.weakly_fair, f.progress
                ),
            ))
        })();
        c.record(claim, res);
    }

    for q in &man.lasso_equiv {
        let got = (|| -> anyhow::Result<bool> {
            let (a, b) = (parse_lasso(&q.a, net)?, parse_lasso(&q.b, net)?);
            let window = 2 * a.cycle.len().max(b.cycle.len());
            Ok(lasso_equiv_at_depth(net, &a, &b, q.depth, window, limits)? == LassoEquivalence::EquivalentAtDepth)
        })();
        c.expect(format!("({}) equivalent to ({}) at depth {}", q.a, q.b, q.depth), q.equivalent, got);
    }

    for p in &man.probe {
        let res = (|| -> anyhow::Result<(bool, String)> {
            let lasso = parse_lasso(&p.lasso, net)?;
            let b = PeBounds::default();
            let r = search_persistent_equivalent_lasso(net, &lasso, b.max_prefix, b.max_cycle, b.depth, limits)?;
            Ok(match (&r, p.outcome.as_str()) {
                (LassoSearch::Found(f), "found") => {
                    let ok = p.equivalent.as_ref().is_none_or(|e| parse_lasso(e, net).ok().as_ref() == Some(f));
                    (ok, format!("found ({})", crate::format::print_lasso(net, f)))
                }
                (LassoSearch::NoneWithinBounds, "none-within-bounds") => (true, "none within bounds".into()),
                (LassoSearch::Found(f), _) => (false, format!("found ({})", crate::format::print_lasso(net, f))),
                (LassoSearch::NoneWithinBounds, _) => (false, "none within bounds".into()),
            })
        })();
        c.record(format!("persistent equivalent of ({})", p.lasso), res);
    }

    for p in &man.projection {
        let res = (|| -> anyhow::Result<(bool, String)> {
            let side = match p.side.as_str() {
                "left" => Side::Left,
                "right" => Side::Right,
                other => bail!("unknown side `{other}`"),
            };
            let run = Run::Lasso(parse_lasso(&p.lasso, net)?);
            let proj = project_sequence(net, &run, side)?;
            let (comp, _) = net.component(side)?;
            let mut ok = true;
            let shown = match &proj {
                Run::Finite(w) if w.is_empty() => String::new(),
                Run::Finite(w) => comp.show_word(w),
                Run::Lasso(l) => format!("({})", crate::format::print_lasso(&comp, l)),
            };
            if let Some(e) = &p.expect {
                ok &= &shown == e;
            }
            if let Some(f) = p.fair {
                ok &= fairness_classify(&comp, &proj, regime(&p.regime)?)?.strongly_fair == f;
            }
            Ok((ok, format!("projection `{shown}`")))
        })();
        c.record(format!("projection of ({}) onto {}", p.lasso, p.side), res);
    }

    for p in &man.pattern {
        let res = (|| -> anyhow::Result<(bool, String)> {
            let pat = builtin_pattern(&p.name)?;
            let target = match p.target.as_str() {
                "rg" => &c.rg,
                "lts" => entry.lts.as_ref().ok_or_else(|| anyhow!("entry has no LTS document"))?,
                other => bail!("unknown target `{other}`"),
            };
            let all = all_embeddings(&pat, target, 10_000);
            let mut ok = all.is_empty() != p.found;
            if let Some(want) = &p.includes {
                ok &= all.iter().any(|e| embedding_names(&pat, target, e) == *want);
            }
            Ok((ok, format!("{} embeddings", all.len())))
        })();
        c.record(format!("pattern {} in {}", p.name, p.target), res);
    }

    if let Some(d) = &man.derive_nondc {
        let res = match derive_nondc_embedding(net, 8, limits.class_guard, limits) {
            Ok(der) => {
                let pat = builtin_pattern("nonDC")?;
                let names = embedding_names(&pat, &der.rg, &der.embedding);
                let mut ok = d.outcome == "valid" && der.near_injectivity().iter().all(|(_, ok)| *ok);
                if let Some(want) = &d.embedding {
                    ok &= names == *want;
                }
                if let Some([a, b]) = &d.legs {
                    ok &= net.transition_name(der.a) == a && net.transition_name(der.b) == b;
                }
                Ok((ok, format!("{names:?}")))
            }
            Err(Error::Precondition(m)) => Ok((d.outcome == "precondition", m)),
            Err(Error::UnsupportedClass(m)) => Ok((d.outcome == "unsupported", m)),
            Err(e) => Err(e.into()),
        };
        c.record("derive nonDC embedding".into(), res);
    }

    if let Some(m) = &man.pe_matrix {
        let res = (|| -> anyhow::Result<(bool, String)> {
            let probes: Vec<Run> = match &m.probes {
                Probes::Lassos(ls) => {
                    ls.iter().map(|l| parse_lasso(l, net).map(Run::Lasso)).collect::<Result<_, _>>()?
                }
                Probes::Named(n) if n == "maximal-finite" => {
                    maximal_finite_runs(net, 10, 200)?.into_iter().map(Run::Finite).collect()
                }
                Probes::Named(n) => bail!("unknown probe set `{n}`"),
            };
            let bounds = PeBounds { spe_bound: m.spe_bound.unwrap_or(PeBounds::default().spe_bound), ..PeBounds::default() };
            let mx = pe_probe_matrix(net, &probes, bounds, limits)?;
            let spe = if mx.spe.holds() { "holds" } else { "refuted" };
            let got = [
                ("spe", Some(spe)),
                ("fair", Some(evidence_name(mx.evidence(Tier::Fair)))),
                ("just", Some(evidence_name(mx.evidence(Tier::Just)))),
                ("all", Some(evidence_name(mx.evidence(Tier::All)))),
            ];
            let want = [("spe", &m.spe), ("fair", &m.fair), ("just", &m.just), ("all", &m.all)];
            let ok = want.iter().zip(&got).all(|((_, w), (_, g))| w.as_deref().is_none_or(|w| Some(w) == *g));
            Ok((ok, format!("{got:?}")))
        })();
        c.record("PE matrix".into(), res);
    }

    for t in &man.theorem {
        let res = (|| -> anyhow::Result<(bool, String)> {
            let id: TheoremId = t.id.parse()?;
            let r = check_theorem(id, net, &LabBounds::default(), &c.limits)?;
            let got = if !r.violations.is_empty() {
                "violated"
            } else if r.confirmations > 0 {
                "confirmed"
            } else {
                "skipped"
            };
            Ok((got == t.outcome, got.to_string()))
        })();
        c.record(format!("theorem {}", t.id), res);
    }

    Ok(c.out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_loads() {
        for name in ENTRIES {
            let e = corpus_load(name).unwrap();
            assert_eq!(e.net.name(), *name);
        }
        assert!(corpus_load("fig99").is_err());
    }

    #[test]
    fn spec_examples() {
        let fig8 = corpus_load("fig8_variant").unwrap();
        let names: Vec<&str> = fig8.net.transition_names().iter().map(String::as_str).collect();
        assert_eq!(names, ["a", "b", "c", "d", "e", "f"]);
        let fig1 = corpus_load("fig1_basic").unwrap();
        assert_eq!((fig1.net.place_count(), fig1.net.transition_count(), fig1.net.arc_count()), (5, 4, 8));
        let ts1 = fig1.lts.unwrap();
        assert_eq!((ts1.state_count(), ts1.edge_count(), ts1.state_name(ts1.initial())), (8, 10, "M0"));
    }
}
