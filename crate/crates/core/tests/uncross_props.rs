use proptest::prelude::*;
use tama_core::scalar::int;
use tama_core::uncross::*;

fn diagram(n: usize, max_m: u16) -> impl Strategy<Value = TamaDiagram> {
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    prop::collection::vec(0..=max_m, pairs.len()).prop_map(move |ms| {
        let entries: Vec<((usize, usize), u16)> = pairs.iter().copied().zip(ms).collect();
        TamaDiagram::from_multiplicities(n, &entries).unwrap()
    })
}

#[test]
fn closed_forms_match_definition() {
    for d in 0..=6 {
        for t in TamaDiagram::enumerate(4, d) {
            assert_eq!(is_uncrossable(&t), uncrossable_closed_form_n4(&t), "{t}");
        }
    }
    for d in 0..=5 {
        for t in TamaDiagram::enumerate(5, d) {
            assert_eq!(is_uncrossable(&t), uncrossable_closed_form_n5(&t), "{t}");
        }
    }
}

#[test]
fn uncrossable_counts() {
    let counts: Vec<usize> = (1..=5).map(|d| enumerate_uncrossable(4, d).unwrap().len()).collect();
    assert_eq!(counts, vec![6, 21, 56, 125, 246]);
    assert_eq!(enumerate_uncrossable(5, 4).unwrap().len(), 700);
    assert!(enumerate_uncrossable(6, 2).is_err());
}

#[test]
fn expansion_agrees_with_solver() {
    for d in 1..=3 {
        for t in TamaDiagram::enumerate(4, d) {
            let p = OPoly::monomial(t.clone(), int(1));
            assert_eq!(expand_to_ama_ext_by_solving(&p), Some(expand_to_ama_ext(&p)), "{t}");
        }
    }
}

#[test]
fn witnesses_separate_low_degrees() {
    // Up to degree 3 every uncrossable diagram has a witness no other one hits.
    for n in [4, 5] {
        for d in 1..=3 {
            let all = enumerate_uncrossable(n, d).unwrap();
            let expansions: Vec<_> = all.iter().map(|t| expand_to_ama_ext(&OPoly::monomial(t.clone(), int(1)))).collect();
            for (k, t) in all.iter().enumerate() {
                let ok = removable_chords(t).any(|c| {
                    let w = witness_diagram(t, c).unwrap();
                    expansions[k].contains_key(&w) && expansions.iter().enumerate().all(|(o, e)| o == k || !e.contains_key(&w))
                });
                assert!(ok, "{t}");
            }
        }
    }
}

#[test]
fn witness_choice_can_be_shared() {
    let t = TamaDiagram::from_multiplicities(4, &[((1, 4), 2), ((2, 3), 2)]).unwrap();
    let other = TamaDiagram::from_multiplicities(4, &[((1, 3), 1), ((1, 4), 1), ((2, 3), 1), ((2, 4), 1)]).unwrap();
    assert!(is_uncrossable(&t) && is_uncrossable(&other));
    let other_exp = expand_to_ama_ext(&OPoly::monomial(other, int(1)));
    for c in removable_chords(&t) {
        assert!(other_exp.contains_key(&witness_diagram(&t, c).unwrap()));
    }
}

#[test]
fn rules_certify_and_rewrite_terminates() {
    for n in [4, 5] {
        let rules = derive_rules(n).unwrap();
        assert!(rules.iter().all(|r| r.certify()));
        for t in TamaDiagram::enumerate(n, 4) {
            let p = OPoly::monomial(t.clone(), int(1));
            let out = rewrite_to_uncrossable(&p, &rules, DEFAULT_REWRITE_BUDGET).unwrap();
            assert!(out.result.terms().all(|(d, _)| is_uncrossable(d)), "{t}");
            assert!(out.steps.iter().all(|s| s.measure_after_max < s.measure_before));
            assert_eq!(expand_to_ama_ext(&out.result), expand_to_ama_ext(&p), "{t}");
        }
    }
}

#[test]
fn figure6_support_and_values() {
    let p = OPoly::product(4, int(1), &[(1, 3), (1, 3), (2, 4)]);
    let e = expand_to_ama_ext(&p);
    let support = figure6_support();
    assert_eq!(e.len(), 6);
    assert!(support.iter().all(|d| e.contains_key(d)));
    let half = tama_core::scalar::ratio(1, 2);
    assert_eq!(e[&support[2]], half);
}

#[test]
fn printed_relations_do_not_vanish() {
    for d in printed_vs_derived().unwrap() {
        assert!(d.derived_vanishes_in_gr, "{}", d.name);
        assert!(!d.printed_vanishes_in_gr, "{}", d.name);
    }
}

proptest! {
    #[test]
    fn product_is_commutative_and_graded(a in diagram(5, 2), b in diagram(5, 2)) {
        let ab = a.multiply(&b);
        prop_assert_eq!(&ab, &b.multiply(&a));
        prop_assert_eq!(ab.degree(), a.degree() + b.degree());
        prop_assert!(a.divides(&ab));
        prop_assert_eq!(a.quotient_of(&ab), b);
    }

    #[test]
    fn uncrossed_implies_uncrossable(a in diagram(5, 3)) {
        if is_uncrossed(&a) {
            prop_assert!(is_uncrossable(&a));
        }
        prop_assert_eq!(is_uncrossable(&a), uncrossable_closed_form_n5(&a));
    }

    #[test]
    fn opoly_product_matches_gr(a in diagram(4, 2), b in diagram(4, 1)) {
        let p = OPoly::monomial(a.clone(), int(2));
        let q = &OPoly::monomial(b.clone(), int(1)) - &OPoly::one(4);
        prop_assert_eq!((&p * &q).to_gr(), &p.to_gr() * &q.to_gr());
    }

    #[test]
    fn text_form_is_stable(a in diagram(4, 3)) {
        let s = a.to_string();
        prop_assert!(s.starts_with("T[n=4]:"));
        prop_assert_eq!(s.matches('^').count(), a.chords().len());
    }
}
