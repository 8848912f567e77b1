mod common;

use std::collections::{BTreeSet, HashSet, VecDeque};

use common::*;
use conetype::automorphism::*;
use conetype::graph::{Dfa, Multigraph, Word};
use conetype::language::geometric_minimization;
use conetype::perm::Permutation;
use conetype::tree_canon::{cone_ids, count_coloured_automorphisms, count_type_preserving_automorphisms};
use num_bigint::BigUint;
use proptest::prelude::*;

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

/// Root with a double edge into a state carrying one loop.
fn finite_example() -> MinimalDfa {
    let g = Multigraph::new(
        ["r", "s"],
        "r",
        [
            ("p".to_string(), "r".to_string(), "s".to_string()),
            ("q".to_string(), "r".to_string(), "s".to_string()),
            ("l".to_string(), "s".to_string(), "s".to_string()),
        ],
    )
    .unwrap();
    MinimalDfa::new(Dfa::new(g, ["x", "y"], &["x".into(), "y".into(), "x".into()]).unwrap()).unwrap()
}

#[test]
fn truncated_orders_of_the_fixtures() {
    let q = ex7min();
    assert_eq!(truncated_order(&q, 0).unwrap(), big(24));
    assert_eq!(truncated_order(&q, 1).unwrap(), big(384));
    let r = rose2();
    let orders: Vec<BigUint> = (0..3).map(|n| truncated_order(&r, n).unwrap()).collect();
    assert_eq!(orders, vec![big(2), big(8), big(128)]);
}

#[test]
fn truncated_orders_match_tree_automorphisms() {
    for base in [ex7min(), rose2(), ternary()] {
        let g = base.graph();
        let types = cone_ids(g, (g.num_states() + 1).pow(2));
        for n in 0..3 {
            let tree = base.truncated_cover(n + 1);
            let colour = |v: usize| types[tree.type_of[v]];
            let explicit = count_coloured_automorphisms(&tree, &colour);
            assert_eq!(truncated_order(&base, n).unwrap(), explicit);
            assert_eq!(count_type_preserving_automorphisms(g, n + 1), explicit);
        }
    }
}

#[test]
fn non_minimal_base_is_rejected() {
    assert_eq!(MinimalDfa::new(ex7()).unwrap_err().code(), "NotMinimal");
    assert_eq!(is_finite(ex7().graph()).unwrap_err().code(), "NotMinimal");
}

#[test]
fn finiteness_of_small_examples() {
    let q = ex7min();
    let report = is_finite(q.graph()).unwrap();
    assert!(!report.finite);
    assert_eq!(report.witnesses.len(), 1);

    let f = finite_example();
    let report = is_finite(f.graph()).unwrap();
    assert!(report.finite);
    // only the root double edge moves anything
    for n in 0..6 {
        assert_eq!(truncated_order(&f, n).unwrap(), big(2));
    }

    let t = ternary();
    assert!(!is_finite(t.graph()).unwrap().finite);
}

#[test]
fn generator_counts() {
    let q = ex7min();
    assert_eq!(enumerate_generators(&q, 0).unwrap().len(), 24);
    assert_eq!(enumerate_generators(&q, 1).unwrap().len(), 28);
    assert!(enumerate_generators(&finite_example(), 3).unwrap().len() == 1);
}

/// Closure of the generator images acting on the words of one level.
fn generated_order(base: &MinimalDfa, gens: &[Portrait], level: usize) -> usize {
    let words = base.level(level);
    let index = |w: &Word| words.binary_search(w).unwrap();
    let as_perm = |g: &Portrait| -> Vec<usize> { words.iter().map(|w| index(&g.act_word(w).unwrap())).collect() };
    let gens: Vec<Vec<usize>> = gens.iter().map(as_perm).collect();
    let id: Vec<usize> = (0..words.len()).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in &gens {
            let next: Vec<usize> = p.iter().map(|&i| g[i]).collect();
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen.len()
}

#[test]
fn generators_generate_the_level_groups() {
    for base in [ex7min(), rose2(), ternary()] {
        for n in 0..2 {
            let gens: Vec<Portrait> = enumerate_generators(&base, n)
                .unwrap()
                .iter()
                .map(|g| g.portrait(&base).unwrap())
                .collect();
            let order = truncated_order(&base, n).unwrap();
            assert_eq!(BigUint::from(generated_order(&base, &gens, n + 1)), order);
        }
    }
}

#[test]
fn paper_portrait_from_json() {
    let q = ex7min();
    let sigma = sigma_doc().to_portrait(&q).unwrap();
    let w = q.parse_word("a2 b2 b1 b2 b2 b2").unwrap();
    assert_eq!(q.format_word(&sigma.act_word(&w).unwrap()), "a1 b1 b1 b2 b1 b2");
    let back = PortraitDoc::from_json(&PortraitDoc::from_portrait(&sigma).to_json()).unwrap();
    assert_eq!(back.to_portrait(&q).unwrap(), sigma);
}

#[test]
fn every_form_round_trips_through_json() {
    let q = ex7min();
    let mut r = rng(5);
    for _ in 0..50 {
        let g = random_portrait(&mut r, &q, 3);
        let doc = PortraitDoc::from_portrait(&g);
        let back = PortraitDoc::from_json(&doc.to_json()).unwrap().to_portrait(&q).unwrap();
        assert!(back.equal_to_depth(&g, 5).unwrap());
    }
}

#[test]
fn block_violations_are_rejected() {
    let t = ternary();
    let doc = PortraitDoc::from_json(r#"{"kind":"finite","entries":[{"vertex":"","perm":[["a","c"]]}]}"#).unwrap();
    assert_eq!(doc.to_portrait(&t).unwrap_err().code(), "NotAdmissible");
    let doc = PortraitDoc::from_json(r#"{"kind":"cone","base":"c","assign":{"r":[["a","c"]]}}"#).unwrap();
    assert_eq!(doc.to_portrait(&t).unwrap_err().code(), "NotAdmissible");
    // the same entry read as a general portrait fails at level 2
    let doc = PortraitDoc::from_json(r#"{"kind":"finite","entries":[{"vertex":"","perm":[["a","c"]]}]}"#).unwrap();
    let check = check_general_portrait(&doc.to_general(&t).unwrap(), 6);
    assert!(!check.valid);
    assert_eq!(check.offending, Some(t.parse_word("a").unwrap()));
}

#[test]
fn pulled_back_example_portrait_is_valid() {
    let d = ex7();
    let ml = geometric_minimization(&d).unwrap();
    let sigma = sigma_doc().to_portrait(ml.quotient_dfa()).unwrap();
    let gp = ml.pull_back_portrait(&sigma, 6).unwrap();
    assert!(check_general_portrait(&gp, 6).valid);
    assert_eq!(d.format_word(&gp.act_word(&d.parse_word("baacdc").unwrap())), "aaaccd");

    // an injection leaving the out-letters of W
    let bad = PortraitDoc::from_json(r#"{"kind":"finite","entries":[{"vertex":"a","map":{"a":"b","c":"c"}}]}"#)
        .unwrap()
        .to_general(&d)
        .unwrap();
    let check = check_general_portrait(&bad, 6);
    assert_eq!(check.offending, Some(d.parse_word("a").unwrap()));
}

#[test]
fn basic_automorphisms_are_uniform_on_their_state() {
    let q = ex7min();
    let v = q.graph().state_index("W+X+Y+Z").unwrap();
    let swap = AdmissiblePermutation::from_cycles(&q, v, &[vec!["b1".into(), "b2".into()]]).unwrap();
    let g = basic_automorphism(&q, &swap).unwrap();
    for n in 1..5 {
        for w in q.level(n) {
            assert_eq!(g.local_permutation(&w).unwrap().perm, swap.perm);
        }
    }
    assert!(g.local_permutation(&Word::empty()).unwrap().is_identity());
}

#[test]
fn normalization_keeps_the_action() {
    let q = ex7min();
    let mut r = rng(9);
    for _ in 0..30 {
        let g = random_portrait(&mut r, &q, 3);
        let t = g.normalize_to_depth(4);
        assert!(t.portrait.equal_to_depth(&g, 5).unwrap());
        assert!(matches!(t.portrait.form(), Form::FiniteSupport(_)));
    }
}

#[test]
fn mismatched_bases() {
    let a = Portrait::identity(&ex7min());
    let b = Portrait::identity(&rose2());
    assert_eq!(a.compose(&b).unwrap_err().code(), "BaseMismatch");
}

fn check_laws(base: &MinimalDfa, seed: u64) -> std::result::Result<(), TestCaseError> {
    let mut r = rng(seed);
    let g = random_portrait(&mut r, base, 3);
    let h = random_portrait(&mut r, base, 3);
    let k = random_portrait(&mut r, base, 2);
    let n = (seed % 7) as usize;
    let Some(v) = random_word(&mut r, base, n) else { return Ok(()) };
    let gh = g.compose(&h).unwrap();
    prop_assert_eq!(gh.act_word(&v).unwrap(), g.act_word(&h.act_word(&v).unwrap()).unwrap());
    prop_assert_eq!(g.invert().act_word(&g.act_word(&v).unwrap()).unwrap(), v.clone());
    prop_assert_eq!(g.act_word(&g.invert().act_word(&v).unwrap()).unwrap(), v.clone());
    prop_assert_eq!(
        gh.compose(&k).unwrap().act_word(&v).unwrap(),
        g.compose(&h.compose(&k).unwrap()).unwrap().act_word(&v).unwrap()
    );
    prop_assert_eq!(gh.invert().act_word(&v).unwrap(), h.invert().compose(&g.invert()).unwrap().act_word(&v).unwrap());
    let lhs = gh.local_permutation(&v).unwrap().perm;
    let rhs = g.local_permutation(&h.act_word(&v).unwrap()).unwrap().perm.compose(&h.local_permutation(&v).unwrap().perm);
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn group_laws_on_the_example_quotient(seed in any::<u64>()) {
        check_laws(&ex7min(), seed)?;
    }

    #[test]
    fn group_laws_on_the_ternary_graph(seed in any::<u64>()) {
        check_laws(&ternary(), seed)?;
    }

    #[test]
    fn retractions_act_inside_their_cone(seed in any::<u64>()) {
        let q = ex7min();
        let mut r = rng(seed);
        let g = random_portrait(&mut r, &q, 2);
        let w = random_word(&mut r, &q, 1).unwrap();
        let rw = g.retract(&w).unwrap();
        let rl = g.retract_level(2);
        for v in q.level(4) {
            let inside = v.starts_with(&w);
            let expect = if inside { g.local_permutation(&v).unwrap() } else { AdmissiblePermutation::identity(&q, q.state_of(&v).unwrap()) };
            prop_assert_eq!(rw.local_permutation(&v).unwrap(), expect);
            for k in 0..4 {
                let p = v.prefix(k);
                let lp = rl.local_permutation(&p).unwrap();
                if k < 2 { prop_assert!(lp.is_identity()); } else { prop_assert_eq!(lp, g.local_permutation(&p).unwrap()); }
            }
        }
    }

    #[test]
    fn finite_portraits_permute_levels(seed in any::<u64>()) {
        for base in [ex7min(), rose2()] {
            let mut r = rng(seed);
            let g = random_finite_portrait(&mut r, &base, 4, 4);
            for n in 0..5 {
                let level = base.level(n);
                let image: BTreeSet<Word> = level.iter().map(|w| g.act_word(w).unwrap()).collect();
                prop_assert_eq!(image.len(), level.len());
                for w in &level {
                    let img = g.act_word(w).unwrap();
                    prop_assert_eq!(base.state_of(w).unwrap(), base.state_of(&img).unwrap());
                }
            }
        }
    }
}

#[test]
fn symmetric_group_elements_are_distinct() {
    let q = ex7min();
    let elems = admissible_perms(&q, q.root()).unwrap().elements();
    let set: BTreeSet<Permutation> = elems.iter().cloned().collect();
    assert_eq!(set.len(), 24);
}
