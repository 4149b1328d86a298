use super::*;
use proptest::prelude::*;

fn t(s: &str) -> Term {
    parse(s).expect(s)
}

#[test]
fn parse_basic_shapes() {
    assert_eq!(
        t("a.0 [] b.0"),
        Term::ext_choice(
            Term::prefix(Action::visible("a"), Term::Nil),
            Term::prefix(Action::visible("b"), Term::Nil)
        )
    );
    assert_eq!(
        t("a.bot \\/ 0"),
        Term::disj(Term::prefix(Action::visible("a"), Term::Bottom), Term::Nil)
    );
    assert_eq!(
        t("a.0 |[a]| a.b.0"),
        Term::par(
            Term::prefix(Action::visible("a"), Term::Nil),
            Term::prefix(
                Action::visible("a"),
                Term::prefix(Action::visible("b"), Term::Nil)
            ),
            ["a".to_string()].into_iter().collect()
        )
    );
}

#[test]
fn parse_precedence_and_associativity() {
    // prefix > par > [] > /\ > \/, all binary operators left-associative
    assert_eq!(t("a.0 [] b.0 [] c.0"), t("(a.0 [] b.0) [] c.0"));
    assert_eq!(t("a.0 \\/ b.0 /\\ c.0"), t("a.0 \\/ (b.0 /\\ c.0)"));
    assert_eq!(t("a.0 /\\ b.0 [] c.0"), t("a.0 /\\ (b.0 [] c.0)"));
    assert_eq!(t("a.0 [] b.0 |[]| c.0"), t("a.0 [] (b.0 |[]| c.0)"));
    assert_eq!(t("a.b.0"), Term::prefix(Action::visible("a"), t("b.0")));
    assert_eq!(t("tau.a.0 \\/ b.0"), Term::disj(t("tau.a.0"), t("b.0")));
}

#[test]
fn parse_errors_carry_position_and_expectations() {
    let err = parse("a.0 [] ").unwrap_err();
    assert_eq!((err.line, err.col), (1, 8));
    assert!(!err.expected.is_empty());

    let err = parse("a.0 )").unwrap_err();
    assert_eq!((err.line, err.col), (1, 5));

    let err = parse("a.0 |[tau]| b.0").unwrap_err();
    assert!(err.expected[0].contains("tau"), "{err}");

    assert!(parse("a").is_err(), "bare action is not a term");
    assert!(parse("A.0").is_err(), "actions are lowercase");
}

#[test]
fn format_examples() {
    assert_eq!(t("a.0 [] b.0").to_string(), "a.0 [] b.0");
    assert_eq!(
        Term::prefix(Action::Tau, Term::disj(Term::Nil, Term::Bottom)).to_string(),
        "tau.(0 \\/ bot)"
    );
    assert_eq!(Term::par(Term::Nil, Term::Nil, SyncSet::new()).to_string(), "0 |[]| 0");
    // minimal parentheses: right-nested trees need parens, left-nested don't
    assert_eq!(t("(a.0 [] b.0) [] c.0").to_string(), "a.0 [] b.0 [] c.0");
    assert_eq!(t("a.0 [] (b.0 [] c.0)").to_string(), "a.0 [] (b.0 [] c.0)");
}

#[test]
fn is_basic_examples() {
    assert!(t("a.0 [] b.0").is_basic());
    assert!(!Term::Bottom.is_basic());
    assert!(!t("a.0 /\\ a.0").is_basic());
    assert!(t("tau.0 \\/ a.0 |[a]| 0").is_basic());
    assert!(!t("a.(b.0 /\\ c.0)").is_basic());
}

#[test]
fn guarded_sum_views() {
    let s = t("(a.0 [] b.0) [] c.0").as_guarded_sum().unwrap();
    assert_eq!(
        s.summands,
        vec![
            ("a".to_string(), Term::Nil),
            ("b".to_string(), Term::Nil),
            ("c".to_string(), Term::Nil)
        ]
    );
    assert_eq!(Term::Nil.as_guarded_sum().unwrap().summands, vec![]);
    assert!(t("a.0 \\/ b.0").as_guarded_sum().is_none());
    assert!(t("tau.0").as_guarded_sum().is_none());
    assert!(t("0 [] a.0").as_guarded_sum().is_none(), "not a left-nested sum");
    assert!(t("a.0 [] (b.0 [] c.0)").as_guarded_sum().is_none());
}

#[test]
fn injectivity_and_prefix_sets() {
    let inj = GuardedSum::new(vec![("a".into(), Term::Nil), ("b".into(), Term::Nil)]);
    assert!(inj.is_injective_in_prefixes());
    let dup = GuardedSum::new(vec![("a".into(), Term::Nil), ("a".into(), t("b.0"))]);
    assert!(!dup.is_injective_in_prefixes());
    assert!(GuardedSum::default().is_injective_in_prefixes());

    assert_eq!(dup.prefix_set(), ["a".to_string()].into_iter().collect());
    assert_eq!(GuardedSum::default().prefix_set(), BTreeSet::new());
    assert_eq!(
        inj.prefix_set(),
        ["a".to_string(), "b".to_string()].into_iter().collect()
    );
}

#[test]
fn normal_form_examples() {
    assert!(Term::Nil.is_normal_form());
    assert!(t("a.(0 \\/ b.0)").is_normal_form());
    assert!(!t("a.0 [] a.b.0").is_normal_form(), "duplicate prefixes");
    assert!(!t("tau.a.0").is_normal_form(), "tau prefix");
    assert!(Term::Bottom.is_normal_form());
    assert!(!t("bot \\/ a.0").is_normal_form(), "bot is not a disjunct");
    assert!(!t("a.bot").is_normal_form());
    assert!(t("0 \\/ a.0").is_normal_form());
}

#[test]
fn term_json_round_trip() {
    for s in ["0", "bot", "a.0 |[a,b]| (b.0 /\\ tau.0)", "a.0 \\/ 0 [] b.c.0"] {
        let term = t(s);
        let js = serde_json::to_string(&json::TermJson::from(&term)).unwrap();
        let back: json::TermJson = serde_json::from_str(&js).unwrap();
        assert_eq!(Term::try_from(back).unwrap(), term);
    }
    let bad = r#"{"kind":"par","left":{"kind":"nil"},"right":{"kind":"nil"},"sync":["tau"]}"#;
    let parsed: json::TermJson = serde_json::from_str(bad).unwrap();
    assert!(Term::try_from(parsed).is_err());
}

pub(crate) fn arb_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![Just(Term::Nil), Just(Term::Bottom)];
    leaf.prop_recursive(5, 32, 3, |inner| {
        let action = prop_oneof![
            Just(Action::Tau),
            "[abc]".prop_map(Action::visible),
            Just(Action::visible("ab_1")),
        ];
        let sync = proptest::collection::btree_set("[abc]".prop_map(String::from), 0..3);
        prop_oneof![
            (action, inner.clone()).prop_map(|(a, t)| Term::prefix(a, t)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Term::ext_choice(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Term::conj(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Term::disj(l, r)),
            (inner.clone(), inner, sync).prop_map(|(l, r, s)| Term::par(l, r, s)),
        ]
    })
}

proptest! {
    #[test]
    fn parse_format_round_trip(term in arb_term()) {
        let printed = term.to_string();
        prop_assert_eq!(parse(&printed).unwrap(), term);
    }

    #[test]
    fn normal_form_terms_are_basic_or_bottom(term in arb_term()) {
        if term.is_normal_form() {
            prop_assert!(term.is_basic() || term == Term::Bottom);
        }
    }

    #[test]
    fn guarded_sum_round_trips_left_nested_folds(
        summands in proptest::collection::vec(("[abc]".prop_map(String::from), arb_term()), 0..5)
    ) {
        let sum = GuardedSum::new(summands);
        let view = sum.to_term().as_guarded_sum().unwrap();
        prop_assert_eq!(view, sum);
    }
}
