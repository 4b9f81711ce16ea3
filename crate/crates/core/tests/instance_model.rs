mod common;

use rankmax::{generate_random, parse_instance, serialize_instance, ApplicantId, Instance, StrictFullList};

#[test]
fn round_trip_thousand_seeds() {
    for seed in 0..1000 {
        let tie = [0.0, 0.2, 0.5][seed as usize % 3];
        let inst = common::instance(seed, 8, 8, 6, tie);
        let text = serialize_instance(&inst);
        assert_eq!(parse_instance(&text).unwrap(), inst, "seed {seed}");
        assert_eq!(serialize_instance(&parse_instance(&text).unwrap()), text);
    }
}

#[test]
fn generated_lists_are_gap_free_and_bounded() {
    for seed in 0..300 {
        let inst = generate_random(5, 6, 3, 0.3, seed).unwrap();
        for a in inst.applicant_ids() {
            let prefs = inst.preferences(a);
            assert!(prefs.len() <= 3);
            assert!(prefs.iter().all(|g| !g.is_empty()));
            assert!(prefs.iter().map(Vec::len).sum::<usize>() <= 6);
        }
    }
}

#[test]
fn remove_then_readd_restores() {
    for seed in 0..200 {
        let inst = common::instance(seed, 6, 6, 4, 0.2);
        let last = ApplicantId(inst.n_applicants() - 1);
        let name = inst.applicant_name(last).to_string();
        let list = inst.preferences(last).to_vec();
        let back = inst.remove_applicant(last).unwrap().add_applicant(&name, list).unwrap();
        assert_eq!(back, inst, "seed {seed}");
    }
}

#[test]
fn replace_with_own_strict_list_is_identity() {
    let inst = parse_instance("posts: p q r\na: q p r\nb: (p q)").unwrap();
    let a = inst.applicant("a").unwrap();
    let own = StrictFullList::new(&inst, a, inst.flattened_list(a)).unwrap();
    assert_eq!(inst.replace_preferences(&own).unwrap(), inst);
}

#[test]
fn replace_rejects_partial_lists() {
    let inst = parse_instance("a: p q r").unwrap();
    assert!(StrictFullList::from_names(&inst, "a", &["p", "q"]).is_err());
    assert!(StrictFullList::from_names(&inst, "a", &["p", "q", "q"]).is_err());
}

#[test]
fn mutations_keep_instances_valid() {
    for seed in 0..100 {
        let inst = common::instance(seed, 5, 5, 3, 0.3);
        let a = ApplicantId(0);
        let removed = inst.remove_applicant(a).unwrap();
        let reparsed: Instance = parse_instance(&serialize_instance(&removed)).unwrap();
        assert_eq!(reparsed.n_posts(), removed.n_posts());
        let full = StrictFullList::new(&inst, a, inst.posts_by_true_rank(a)).unwrap();
        let h = inst.replace_preferences(&full).unwrap();
        assert_eq!(h.preferences(a).len(), inst.n_posts());
    }
}

#[test]
fn single_applicant_removed_leaves_posts() {
    let inst = parse_instance("a: p q").unwrap();
    let g = inst.remove_applicant(ApplicantId(0)).unwrap();
    assert_eq!(g.n_applicants(), 0);
    assert_eq!(g.n_posts(), 2);
    assert_eq!(serialize_instance(&g), "posts: p q\n");
}
