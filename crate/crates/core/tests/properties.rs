use persinet_core::fairness::{
    fairness_classify, lasso_equiv_at_depth, lasso_persistence, parikh_signature, FiniteRegime, Lasso,
    LassoEquivalence,
};
use persinet_core::lab::{check_theorem, gen_random_net, lasso_probes, ClassConstraint, GenConfig, LabBounds, TheoremId};
use persinet_core::lts::{build_rg, Lts};
use persinet_core::net::{classify_structure, disjoint_sum, project_sequence, Side};
use persinet_core::patterns::{all_embeddings, builtin_pattern, derive_nondc_embedding, validate_embedding, Pattern};
use persinet_core::sequences::{sequence_persistence, spe_check, SpeMode};
use persinet_core::{Error, Limits, Net, Run};
use proptest::prelude::*;

fn net(constraint: &str, seed: u64) -> Net {
    let cfg = GenConfig { class_constraint: ClassConstraint::parse(constraint).unwrap(), seed, ..GenConfig::default() };
    gen_random_net(&cfg).unwrap()
}

fn assert_clean(id: TheoremId, n: &Net) -> Result<(), TestCaseError> {
    let r = check_theorem(id, n, &LabBounds::default(), &Limits::default()).unwrap();
    prop_assert!(r.violations.is_empty(), "{id} on {}: {}", n.name(), r.violations[0].detail);
    Ok(())
}

fn lassos(n: &Net) -> Vec<Lasso> {
    let (rg, _) = build_rg(n, 200).unwrap();
    lasso_probes(&rg, 3, 4, 12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reachability_graphs_are_deterministic(seed in any::<u64>()) {
        assert_clean(TheoremId::Determinism, &net("none", seed))?;
    }

    #[test]
    fn choice_free_nets_are_persistent(seed in any::<u64>()) {
        assert_clean(TheoremId::CfPersistent, &net("CF", seed))?;
    }

    #[test]
    fn permutations_keep_parikh_vectors(seed in any::<u64>()) {
        assert_clean(TheoremId::PermImpliesParikh, &net("none", seed))?;
    }

    #[test]
    fn persistence_factorises(seed in any::<u64>()) {
        assert_clean(TheoremId::PersistenceFactorisation, &net("none", seed))?;
    }

    #[test]
    fn diamonds_complete_in_pure_plain_nets(seed in any::<u64>()) {
        assert_clean(TheoremId::DiamondCompletion, &net("pure", seed))?;
    }

    #[test]
    fn equal_conflict_nonpersistence_refutes_tilde_spe(seed in any::<u64>()) {
        assert_clean(TheoremId::EcMain, &net("EC", seed))?;
    }

    #[test]
    fn dissymmetric_choice_excludes_derived_pattern(seed in any::<u64>()) {
        let n = net("pure", seed);
        let r = check_theorem(TheoremId::DcMain, &n, &LabBounds::default(), &Limits::default()).unwrap();
        // The only violations seen are nets where every persistent witness
        // ends with the opposite leg; see `dc_counterexample` below.
        for v in &r.violations {
            prop_assert!(v.detail.contains("ends with"), "{}: {}", n.name(), v.detail);
        }
        match derive_nondc_embedding(&n, 4, 100_000, &Limits::default()) {
            Ok(d) => {
                prop_assert!(!classify_structure(&n).dissymmetric_choice.holds());
                let p = builtin_pattern("nonDC").unwrap();
                prop_assert!(validate_embedding(&p, &d.rg, &d.embedding).is_ok());
                prop_assert!(d.near_injectivity().iter().all(|(_, ok)| *ok));
            }
            Err(Error::Precondition(_)) | Err(Error::NoWitness(_)) | Err(Error::ResourceExceeded(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn fairness_tiers_are_nested(seed in any::<u64>()) {
        let n = net("none", seed);
        for l in lassos(&n) {
            let r = fairness_classify(&n, &Run::Lasso(l), FiniteRegime::default()).unwrap();
            prop_assert!(!r.strongly_fair || r.weakly_fair);
            prop_assert!(!r.weakly_fair || r.progress);
        }
    }

    #[test]
    fn lasso_persistence_matches_two_laps(seed in any::<u64>()) {
        let n = net("none", seed);
        for l in lassos(&n) {
            let one = lasso_persistence(&n, &l).unwrap().persistent;
            let two = l.prefix.concat(&l.cycle).concat(&l.cycle);
            let again = sequence_persistence(&n, n.initial_marking(), &two).unwrap().persistent;
            prop_assert_eq!(one, again);
        }
    }

    #[test]
    fn equivalent_lassos_share_signatures(seed in any::<u64>()) {
        let n = net("none", seed);
        let ls = lassos(&n);
        for a in &ls {
            for b in &ls {
                let v = lasso_equiv_at_depth(&n, a, b, 4, 4, &Limits::default()).unwrap();
                if v == LassoEquivalence::EquivalentAtDepth {
                    let k = n.transition_count();
                    prop_assert_eq!(parikh_signature(a, k), parikh_signature(b, k));
                }
            }
        }
    }

    #[test]
    fn sums_are_fair_iff_components_are(s1 in any::<u64>(), s2 in any::<u64>()) {
        let sum = disjoint_sum(&net("none", s1), &net("none", s2));
        for l in lassos(&sum) {
            let run = Run::Lasso(l);
            let whole = fairness_classify(&sum, &run, FiniteRegime::MaximalFiniteIsFair).unwrap().strongly_fair;
            let mut parts = true;
            for side in [Side::Left, Side::Right] {
                let (c, _) = sum.component(side).unwrap();
                let p = project_sequence(&sum, &run, side).unwrap();
                parts &= fairness_classify(&c, &p, FiniteRegime::MaximalFiniteIsFair).unwrap().strongly_fair;
            }
            prop_assert_eq!(whole, parts);
        }
    }
}

/// A DC net that is pure, plain and nonpersistent and still has the
/// tilde-SPE property. Its graph is acyclic, so the check is exhaustive.
/// The only persistent equivalent of `t1 t3 t0` is `t3 t0 t1`, which ends
/// with the competing leg `t1`.
#[test]
fn dc_counterexample() {
    let n = net("pure", 919);
    let r = classify_structure(&n);
    assert!(r.pure.holds() && r.plain.holds() && r.dissymmetric_choice.holds());
    let (rg, _) = build_rg(&n, 200).unwrap();
    assert_eq!(persinet_core::lab::longest_path(&rg), Some(3));
    assert!(!persinet_core::lts::persistence_check(&rg).persistent);
    for mode in [SpeMode::Parikh, SpeMode::Permutation] {
        assert!(spe_check(&n, 3, mode, &Limits::default()).unwrap().holds());
    }
    assert!(persinet_core::patterns::find_embedding(&builtin_pattern("nonDC").unwrap(), &rg).is_none());
    match derive_nondc_embedding(&n, 3, 100_000, &Limits::default()) {
        Err(Error::NoWitness(why)) => assert!(why.contains("`t1 t3 t0` ends with `t1`"), "{why}"),
        other => panic!("{:?}", other.map(|d| d.embedding)),
    }
    let t = check_theorem(TheoremId::DcMain, &n, &LabBounds::default(), &Limits::default()).unwrap();
    assert_eq!(t.violations.len(), 1);
}

fn small_lts(seed: u64) -> Lts {
    let cfg = GenConfig { places: 3, transitions: 3, bounded_within: Some(9), seed, ..GenConfig::default() };
    let n = gen_random_net(&cfg).unwrap();
    build_rg(&n, 9).unwrap().0
}

/// Every total map from pattern states and labels, filtered by the
/// embedding conditions.
fn brute_force(p: &Pattern, g: &Lts) -> Vec<(Vec<usize>, Vec<usize>)> {
    let (ns, nl) = (g.state_count(), g.labels().len());
    let mut out = Vec::new();
    let ps = p.states().len();
    let pl = p.labels().len();
    let total_s = ns.pow(ps as u32);
    let total_l = nl.pow(pl as u32);
    for ls in 0..total_l {
        let lm: Vec<usize> = (0..pl).map(|i| (ls / nl.pow(i as u32)) % nl).collect();
        for ss in 0..total_s {
            let sm: Vec<usize> = (0..ps).map(|i| (ss / ns.pow(i as u32)) % ns).collect();
            let e = persinet_core::patterns::Embedding { state_map: sm, label_map: lm.clone() };
            if validate_embedding(p, g, &e).is_ok() {
                out.push((e.state_map, e.label_map));
            }
        }
    }
    out.sort();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn embedding_search_is_complete(seed in any::<u64>()) {
        let g = small_lts(seed);
        let p = builtin_pattern("nonpers").unwrap();
        let mut found: Vec<(Vec<usize>, Vec<usize>)> =
            all_embeddings(&p, &g, usize::MAX).into_iter().map(|e| (e.state_map, e.label_map)).collect();
        found.sort();
        prop_assert_eq!(found, brute_force(&p, &g));
    }
}
