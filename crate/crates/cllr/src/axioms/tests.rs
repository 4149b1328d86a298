use super::*;
use crate::parse;
use crate::syntax::tests::arb_term;
use proptest::prelude::*;

fn t(s: &str) -> Term {
    parse(s).expect(s)
}

#[test]
fn match_di5() {
    let inst = match_axiom(AxiomName::DI5, Direction::L2R, &t("a.0"), &t("a.0 \\/ b.0")).unwrap();
    assert_eq!(inst.vars["x"], t("a.0"));
    assert_eq!(inst.vars["y"], t("b.0"));
    assert!(match_axiom(AxiomName::DI5, Direction::R2L, &t("a.0 \\/ b.0"), &t("a.0")).is_err());
}

#[test]
fn match_ds4_side_condition() {
    let err =
        match_axiom(AxiomName::DS4, Direction::L2R, &t("a.(bot \\/ 0)"), &t("a.bot [] a.0"))
            .unwrap_err();
    assert_eq!(err.kind, MatchErrorKind::SideCondition);

    match_axiom(AxiomName::DS4, Direction::L2R, &t("a.(b.0 \\/ 0)"), &t("a.b.0 [] a.0")).unwrap();
    assert!(
        match_axiom(AxiomName::DS4, Direction::L2R, &t("tau.(0 \\/ 0)"), &t("tau.0 [] tau.0"))
            .is_err(),
        "only visible prefixes"
    );
}

#[test]
fn match_ecc1() {
    let inst = match_axiom(AxiomName::ECC1, Direction::L2R, &t("a.0 /\\ b.0"), &t("bot")).unwrap();
    assert_eq!(inst.sums["ax"].summands.len(), 1);
    assert_eq!(inst.sums["by"].summands.len(), 1);
    let err =
        match_axiom(AxiomName::ECC1, Direction::L2R, &t("a.0 /\\ a.b.0"), &t("bot")).unwrap_err();
    assert_eq!(err.kind, MatchErrorKind::SideCondition, "equal prefix sets");
    // Equational: usable right-to-left as well.
    match_axiom(AxiomName::ECC1, Direction::R2L, &t("bot"), &t("a.0 /\\ b.0")).unwrap();
}

#[test]
fn match_ecc2_ecc3() {
    let zipped = t("a.(0 /\\ b.0) [] c.(0 /\\ 0)");
    let pair = t("(a.0 [] c.0) /\\ (a.b.0 [] c.0)");
    match_axiom(AxiomName::ECC2, Direction::L2R, &zipped, &pair).unwrap();
    match_axiom(AxiomName::ECC3, Direction::L2R, &pair, &zipped).unwrap();

    // Non-injective first sum: ECC3's side condition fails, ECC2 is fine.
    let zipped = t("a.(0 /\\ 0) [] a.(b.0 /\\ 0)");
    let pair = t("(a.0 [] a.b.0) /\\ (a.0 [] a.0)");
    match_axiom(AxiomName::ECC2, Direction::L2R, &zipped, &pair).unwrap();
    let err = match_axiom(AxiomName::ECC3, Direction::L2R, &pair, &zipped).unwrap_err();
    assert_eq!(err.kind, MatchErrorKind::SideCondition);

    // n = 0 instances use the literal term 0.
    match_axiom(AxiomName::ECC2, Direction::L2R, &t("0"), &t("0 /\\ 0")).unwrap();
    match_axiom(AxiomName::ECC3, Direction::L2R, &t("0 /\\ 0"), &t("0")).unwrap();
}

#[test]
fn match_exp_schemas() {
    let lhs = t("a.0 |[]| b.0");
    let rhs = t("(a.(0 |[]| b.0) [] b.(a.0 |[]| 0)) [] 0");
    match_axiom(AxiomName::EXP1, Direction::L2R, &lhs, &rhs).unwrap();
    match_axiom(AxiomName::EXP2, Direction::L2R, &rhs, &lhs).unwrap();

    // Sync-only expansion.
    let lhs = t("a.0 |[a]| a.b.0");
    let rhs = t("(0 [] 0) [] a.(0 |[a]| b.0)");
    match_axiom(AxiomName::EXP1, Direction::L2R, &lhs, &rhs).unwrap();

    // EXP2's side condition: continuations must be basic.
    let lhs = t("a.bot |[]| 0");
    let rhs = t("(a.(bot |[]| 0) [] 0) [] 0");
    match_axiom(AxiomName::EXP1, Direction::L2R, &lhs, &rhs).unwrap();
    let err = match_axiom(AxiomName::EXP2, Direction::L2R, &rhs, &lhs).unwrap_err();
    assert_eq!(err.kind, MatchErrorKind::SideCondition);
}

#[test]
fn check_proof_examples() {
    // REF
    let p = Proof::refl(t("a.0"));
    assert_eq!(check_proof(&p).unwrap(), (t("a.0"), t("a.0")));

    // TRANS of DI5 then DI1
    let p = Proof::trans(
        Proof::axiom(AxiomName::DI5, Direction::L2R, t("a.0"), t("a.0 \\/ b.0")),
        Proof::axiom(AxiomName::DI1, Direction::L2R, t("a.0 \\/ b.0"), t("b.0 \\/ a.0")),
    );
    assert_eq!(check_proof(&p).unwrap(), (t("a.0"), t("b.0 \\/ a.0")));

    // CONTEXT with a child whose claim does not match is rejected.
    let bad = Proof {
        lhs: t("a.0"),
        rhs: t("a.bot"),
        rule: Rule::Context {
            op: CtxOp::Prefix(Action::visible("a")),
            children: vec![std::sync::Arc::new(Proof::refl(t("0")))],
        },
    };
    let err = check_proof(&bad).unwrap_err();
    assert!(err.reason.contains("assemble"), "{err}");

    // A lying axiom leaf is rejected with its path.
    let bad = Proof {
        lhs: t("a.0"),
        rhs: t("b.0"),
        rule: Rule::Axiom { name: AxiomName::PR2, dir: Direction::L2R },
    };
    assert!(check_proof(&bad).is_err());
}

#[test]
fn reorder_examples() {
    let e = reorder_proof(&t("(a.0 [] b.0) [] c.0"), &t("a.0 [] (c.0 [] b.0)")).unwrap();
    check_proof(&e.leq).unwrap();
    check_proof(&e.geq).unwrap();
    assert_eq!(*e.lhs(), t("(a.0 [] b.0) [] c.0"));
    assert_eq!(*e.rhs(), t("a.0 [] (c.0 [] b.0)"));

    let e = reorder_proof(&t("a.0 \\/ b.0"), &t("b.0 \\/ a.0")).unwrap();
    check_proof(&e.leq).unwrap();

    assert!(reorder_proof(&t("a.0 [] b.0"), &t("a.0 [] a.0")).is_none());
    assert!(reorder_proof(&t("a.0 [] b.0"), &t("a.0 \\/ b.0")).is_none());
}

#[test]
fn proof_json_round_trips() {
    let e = reorder_proof(&t("(a.0 [] b.0) [] c.0"), &t("c.0 [] (b.0 [] a.0)")).unwrap();
    for encoded in [json::proof_to_json(&e.leq), json::proof_to_json_packed(&e.leq)] {
        let back = json::proof_from_json(&encoded).unwrap();
        check_proof(&back).unwrap();
        assert_eq!(back.lhs, e.leq.lhs);
        assert_eq!(back.rhs, e.leq.rhs);
    }
}

fn arb_axiom() -> impl Strategy<Value = AxiomName> {
    proptest::sample::select(ALL_AXIOMS.to_vec())
}

proptest! {
    // Equational axioms match in one direction iff they match in the
    // swapped one.
    #[test]
    fn equational_direction_duality(
        name in arb_axiom(),
        lhs in arb_term(),
        rhs in arb_term(),
    ) {
        if name.is_equational() {
            let fwd = match_axiom(name, Direction::L2R, &lhs, &rhs).is_ok();
            let bwd = match_axiom(name, Direction::R2L, &rhs, &lhs).is_ok();
            prop_assert_eq!(fwd, bwd);
        } else {
            prop_assert!(match_axiom(name, Direction::R2L, &lhs, &rhs).is_err());
        }
    }

    // A reorder proof exists exactly when the flattenings agree as
    // multisets; when it exists it checks with the right claim.
    #[test]
    fn reorder_iff_same_multiset(
        items in proptest::collection::vec(arb_term(), 1..5),
        shuffle in proptest::collection::vec(0usize..100, 0..8),
    ) {
        let src = AcOp::Choice.ln(&items);
        let mut permuted = items.clone();
        for (k, s) in shuffle.iter().enumerate() {
            let i = k % permuted.len();
            let j = s % permuted.len();
            permuted.swap(i, j);
        }
        let dst = AcOp::Choice.ln(&permuted);
        let e = reorder_proof(&src, &dst).expect("permutations always reorder");
        check_proof(&e.leq).unwrap();
        check_proof(&e.geq).unwrap();
        prop_assert_eq!(e.lhs(), &src);
        prop_assert_eq!(e.rhs(), &dst);

        // A genuinely different multiset must not reorder.
        let mut other = items.clone();
        other.push(Term::prefix(Action::visible("zz"), Term::Nil));
        let dst2 = AcOp::Choice.ln(&other);
        prop_assert!(reorder_proof(&src, &dst2).is_none());
    }
}
