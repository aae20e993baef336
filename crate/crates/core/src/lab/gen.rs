//! Seeded random nets with class constraints.
//!
//! Arcs are drawn independently with probability `arc_density`. FC and EC
//! are obtained by repair: transitions are grouped into conflict clusters
//! (connected through shared input places) and every member receives the
//! input vector of the first one. CF is repaired by keeping one consumer per
//! place. The remaining constraints are met by rejection.

use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lts::build_rg;
use crate::net::{classify_structure, Net, NetBuilder, PlaceId, TransId};

/// Attempts before generation gives up.
pub const REJECTION_BUDGET: usize = 2_000;

/// Conjoinable class constraints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClassConstraint {
    pub choice_free: bool,
    pub free_choice: bool,
    pub equal_conflict: bool,
    pub dissymmetric_choice: bool,
    pub asymmetric_choice: bool,
    pub pure: bool,
    /// Plain, pure and safe.
    pub pps: bool,
}

impl ClassConstraint {
    /// Parses a comma- or space-separated list such as `"FC, pure"`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut c = ClassConstraint::default();
        for item in text.split(|ch: char| ch == ',' || ch.is_whitespace()).filter(|s| !s.is_empty()) {
            match item {
                "none" => {}
                "CF" => c.choice_free = true,
                "FC" => c.free_choice = true,
                "EC" => c.equal_conflict = true,
                "DC" => c.dissymmetric_choice = true,
                "AC" => c.asymmetric_choice = true,
                "pure" => c.pure = true,
                "pps" => c.pps = true,
                other => return Err(Error::input(format!("unknown class constraint `{other}`"))),
            }
        }
        Ok(c)
    }

    fn needs_plain(&self) -> bool {
        self.free_choice || self.dissymmetric_choice || self.asymmetric_choice || self.pps
    }

    fn needs_pure(&self) -> bool {
        self.pure || self.pps
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    pub places: usize,
    pub transitions: usize,
    /// 1 for plain nets.
    pub max_weight: u32,
    pub arc_density: f64,
    pub token_budget: u32,
    pub class_constraint: ClassConstraint,
    /// When set, only nets whose reachability graph has at most this many
    /// states are accepted.
    pub bounded_within: Option<usize>,
    pub seed: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            places: 4,
            transitions: 4,
            max_weight: 1,
            arc_density: 0.35,
            token_budget: 3,
            class_constraint: ClassConstraint::default(),
            bounded_within: Some(200),
            seed: 0,
        }
    }
}

impl GenConfig {
    pub fn with_seed(&self, seed: u64) -> GenConfig {
        GenConfig { seed, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.places == 0 {
            return Err(Error::input("a random net needs at least one place"));
        }
        if !(0.0..=1.0).contains(&self.arc_density) {
            return Err(Error::input(format!("arc density {} is outside [0, 1]", self.arc_density)));
        }
        if self.max_weight == 0 {
            return Err(Error::input("max weight must be at least 1"));
        }
        let c = &self.class_constraint;
        if c.needs_plain() && self.max_weight > 1 {
            return Err(Error::input("FC, DC, AC and pps force plain nets: set max_weight to 1"));
        }
        if c.pps && self.token_budget as usize > self.places {
            return Err(Error::input("a safe net holds at most one token per place"));
        }
        Ok(())
    }
}

struct Draft {
    pre: Vec<Vec<u32>>,
    post: Vec<Vec<u32>>,
    tokens: Vec<u32>,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

impl Draft {
    fn draw(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Draft {
        let (np, nt) = (cfg.places, cfg.transitions);
        let weight = |rng: &mut ChaCha8Rng| rng.random_range(1..=cfg.max_weight);
        let mut pre = alloc::vec![alloc::vec![0u32; np]; nt];
        let mut post = alloc::vec![alloc::vec![0u32; np]; nt];
        for t in 0..nt {
            for p in 0..np {
                if rng.random_bool(cfg.arc_density) {
                    pre[t][p] = weight(rng);
                }
                if rng.random_bool(cfg.arc_density) {
                    post[t][p] = weight(rng);
                }
            }
            // Source transitions make almost every net unbounded.
            if pre[t].iter().all(|&w| w == 0) {
                let p = rng.random_range(0..np);
                pre[t][p] = weight(rng);
            }
        }
        let mut tokens = alloc::vec![0u32; np];
        for _ in 0..cfg.token_budget {
            let p = rng.random_range(0..np);
            if cfg.class_constraint.pps && tokens[p] > 0 {
                if let Some(q) = (0..np).find(|&q| tokens[q] == 0) {
                    tokens[q] = 1;
                }
                continue;
            }
            tokens[p] += 1;
        }
        Draft { pre, post, tokens }
    }

    fn make_pure(&mut self, rng: &mut ChaCha8Rng) {
        for t in 0..self.pre.len() {
            for p in 0..self.tokens.len() {
                if self.pre[t][p] > 0 && self.post[t][p] > 0 {
                    if rng.random_bool(0.5) && self.pre[t].iter().filter(|&&w| w > 0).count() > 1 {
                        self.pre[t][p] = 0;
                    } else {
                        self.post[t][p] = 0;
                    }
                }
            }
        }
    }

    fn make_choice_free(&mut self, rng: &mut ChaCha8Rng) {
        for p in 0..self.tokens.len() {
            let consumers: Vec<usize> = (0..self.pre.len()).filter(|&t| self.pre[t][p] > 0).collect();
            if consumers.len() > 1 {
                let keep = consumers[rng.random_range(0..consumers.len())];
                for t in consumers {
                    if t != keep {
                        self.pre[t][p] = 0;
                    }
                }
            }
        }
    }

    fn equalize_conflicts(&mut self) {
        let nt = self.pre.len();
        let mut parent: Vec<usize> = (0..nt).collect();
        for p in 0..self.tokens.len() {
            let mut first = None;
            for t in 0..nt {
                if self.pre[t][p] > 0 {
                    match first {
                        None => first = Some(t),
                        Some(f) => {
                            let (a, b) = (find(&mut parent, f), find(&mut parent, t));
                            parent[b] = a;
                        }
                    }
                }
            }
        }
        for t in 0..nt {
            let root = find(&mut parent, t);
            let leader = (0..nt).find(|&u| find(&mut parent, u) == root).expect("root is a member");
            if leader != t {
                self.pre[t] = self.pre[leader].clone();
            }
        }
    }

    fn build(&self, name: &str) -> Result<Net> {
        let mut b = NetBuilder::new(name);
        for (i, &m) in self.tokens.iter().enumerate() {
            b.place(&format!("p{i}"), m)?;
        }
        for t in 0..self.pre.len() {
            b.transition(&format!("t{t}"))?;
        }
        for t in 0..self.pre.len() {
            for p in 0..self.tokens.len() {
                if self.pre[t][p] > 0 {
                    b.input(PlaceId(p), TransId(t), self.pre[t][p])?;
                }
                if self.post[t][p] > 0 {
                    b.output(TransId(t), PlaceId(p), self.post[t][p])?;
                }
            }
        }
        Ok(b.build())
    }
}

fn accepted(net: &Net, cfg: &GenConfig) -> Result<bool> {
    let c = &cfg.class_constraint;
    let r = classify_structure(net);
    let ok = (!c.choice_free || r.choice_free.holds())
        && (!c.free_choice || r.free_choice.holds())
        && (!c.equal_conflict || r.equal_conflict.holds())
        && (!c.dissymmetric_choice || r.dissymmetric_choice.holds())
        && (!c.asymmetric_choice || r.asymmetric_choice.holds())
        && (!c.needs_pure() || r.pure.holds())
        && (!c.needs_plain() || r.plain.holds());
    if !ok {
        return Ok(false);
    }
    let limit = match (cfg.bounded_within, c.pps) {
        (Some(n), _) => n,
        (None, true) => crate::limits::Limits::DEFAULT_MAX_STATES,
        (None, false) => return Ok(true),
    };
    let (_, report) = build_rg(net, limit)?;
    Ok(report.bounded() && (!c.pps || report.safe == Some(true)))
}

/// Draws a net satisfying `cfg`. The same configuration always yields the
/// same net.
pub fn gen_random_net(cfg: &GenConfig) -> Result<Net> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let c = &cfg.class_constraint;
    let name = format!("rand{}", cfg.seed);
    for _ in 0..REJECTION_BUDGET {
        let mut d = Draft::draw(cfg, &mut rng);
        if c.needs_pure() {
            d.make_pure(&mut rng);
        }
        if c.choice_free {
            d.make_choice_free(&mut rng);
        }
        if c.free_choice || c.equal_conflict {
            d.equalize_conflicts();
            if c.needs_pure() {
                // Equalized presets can reintroduce side conditions.
                for t in 0..d.pre.len() {
                    for p in 0..d.tokens.len() {
                        if d.pre[t][p] > 0 {
                            d.post[t][p] = 0;
                        }
                    }
                }
            }
        }
        let net = d.build(&name)?;
        if accepted(&net, cfg)? {
            return Ok(net);
        }
    }
    Err(Error::ResourceExceeded(format!(
        "no net met the constraints within {REJECTION_BUDGET} attempts (seed {})",
        cfg.seed
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(constraint: &str, seed: u64) -> GenConfig {
        GenConfig { class_constraint: ClassConstraint::parse(constraint).unwrap(), seed, ..GenConfig::default() }
    }

    #[test]
    fn choice_free_by_construction() {
        let n = gen_random_net(&cfg("CF", 1)).unwrap();
        assert!(n.places().all(|p| n.consumers(p).len() <= 1));
    }

    #[test]
    fn free_choice_presets() {
        let n = gen_random_net(&cfg("FC", 2)).unwrap();
        for t in n.transitions() {
            for u in n.transitions() {
                if n.preset(t).iter().any(|p| n.preset(u).contains(p)) {
                    assert_eq!(n.preset(t), n.preset(u));
                }
            }
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let c = cfg("pure", 7);
        let (a, b) = (gen_random_net(&c).unwrap(), gen_random_net(&c).unwrap());
        assert!(a.same_structure(&b));
        assert_eq!(a.initial_marking(), b.initial_marking());
    }

    #[test]
    fn pps_nets_are_safe() {
        for seed in 0..5 {
            let n = gen_random_net(&cfg("pps", seed)).unwrap();
            let (_, r) = build_rg(&n, 1000).unwrap();
            assert_eq!(r.safe, Some(true));
        }
    }

    #[test]
    fn inconsistent_configs_rejected() {
        let bad = GenConfig { max_weight: 2, ..cfg("FC", 0) };
        assert!(gen_random_net(&bad).is_err());
        assert!(ClassConstraint::parse("XY").is_err());
        let dense = GenConfig { arc_density: 1.5, ..GenConfig::default() };
        assert!(dense.validate().is_err());
    }
}
