//! Rewriting into canonical normal form with machine-checkable proofs.
//!
//! A normal form is either `bot` or a nonempty disjunction of guarded
//! sums, where every sum is injective in prefixes, `tau`-free, and has
//! normal continuations. On top of that shape this module fixes a
//! canonical representative: disjuncts and summands are sorted by the
//! term order and deduplicated, so normalization is idempotent and its
//! output deterministic.
//!
//! Every rewrite carries an [`EqProof`]: [`normalize`] returns a proof of
//! `t = nf(t)` whose two halves pass the checker. Conjunction distributes
//! over the disjuncts and is resolved per pair of sums (`bot` on
//! mismatched prefix sets, zip by action otherwise), choice of two sums
//! concatenates disjoint prefixes and merges shared ones through
//! `a.x [] a.y = a.(x \/ y)` (an equality here because normal
//! continuations are basic), and parallel composition expands by the
//! interleaving schema and recurses. Inconsistent summands collapse
//! eagerly: `a.bot` rewrites to `bot` and absorbs its whole sum.

use crate::axioms::derived::{dist_right_eq, merge_prefix_leq, DistOp};
use crate::axioms::{
    expansion_term, permute_ln, reassoc_to_ln, AcOp, AxiomName, CtxOp, Direction, EqProof, Proof,
};
use crate::syntax::{Action, GuardedSum, SyncSet, Term};
use std::collections::{BTreeSet, HashMap};

/// A canonical guarded sum: action-sorted, injective summands with normal
/// continuations. The empty sum is `0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct NfSum {
    summands: Vec<(String, NfTerm)>,
    term: Term,
}

impl NfSum {
    /// Builds a canonical sum; summands are sorted by action and must be
    /// injective.
    pub fn new(mut summands: Vec<(String, NfTerm)>) -> NfSum {
        summands.sort_by(|(a, _), (b, _)| a.cmp(b));
        let distinct: BTreeSet<&str> = summands.iter().map(|(a, _)| a.as_str()).collect();
        assert_eq!(distinct.len(), summands.len(), "summands must be injective in prefixes");
        let term = sum_term(&summands);
        NfSum { summands, term }
    }

    pub fn empty() -> NfSum {
        NfSum { summands: vec![], term: Term::Nil }
    }

    pub fn summands(&self) -> &[(String, NfTerm)] {
        &self.summands
    }

    pub fn term(&self) -> &Term {
        &self.term
    }

    pub fn prefix_set(&self) -> BTreeSet<String> {
        self.summands.iter().map(|(a, _)| a.clone()).collect()
    }
}

fn sum_term(summands: &[(String, NfTerm)]) -> Term {
    let mut it = summands
        .iter()
        .map(|(a, c)| Term::prefix(Action::visible(a.clone()), c.term().clone()));
    match it.next() {
        None => Term::Nil,
        Some(first) => it.fold(first, Term::ext_choice),
    }
}

/// A canonical nonempty disjunction of sums: sorted by the term order and
/// deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct NfTerm {
    disjuncts: Vec<NfSum>,
    term: Term,
}

impl NfTerm {
    pub fn new(mut disjuncts: Vec<NfSum>) -> NfTerm {
        assert!(!disjuncts.is_empty(), "a normal disjunction has at least one disjunct");
        disjuncts.sort_by(|a, b| a.term.cmp(&b.term));
        disjuncts.dedup_by(|a, b| a.term == b.term);
        let term = AcOp::Disj.ln(&disjuncts.iter().map(|d| d.term.clone()).collect::<Vec<_>>());
        NfTerm { disjuncts, term }
    }

    /// The normal form of `0`.
    pub fn nil() -> NfTerm {
        NfTerm::new(vec![NfSum::empty()])
    }

    pub fn singleton(sum: NfSum) -> NfTerm {
        NfTerm::new(vec![sum])
    }

    pub fn disjuncts(&self) -> &[NfSum] {
        &self.disjuncts
    }

    pub fn term(&self) -> &Term {
        &self.term
    }
}

/// Either `bot` or a canonical basic normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalForm {
    Bottom,
    Basic(NfTerm),
}

impl NormalForm {
    pub fn term(&self) -> Term {
        match self {
            NormalForm::Bottom => Term::Bottom,
            NormalForm::Basic(nf) => nf.term().clone(),
        }
    }

    pub fn as_basic(&self) -> Option<&NfTerm> {
        match self {
            NormalForm::Bottom => None,
            NormalForm::Basic(nf) => Some(nf),
        }
    }
}

/// `ln([lhs_i]) = ln([rhs_i])` from per-position equalities.
fn map_ln(op: AcOp, eqs: Vec<EqProof>) -> EqProof {
    let mut it = eqs.into_iter();
    let first = it.next().expect("nonempty");
    it.fold(first, |acc, e| EqProof::ctx(op.ctx_op(), vec![acc, e]))
}

/// Rewrites positions `i` and `i + 1` of a left-nested tree into one item
/// using `pair_eq : items[i] (+) items[i+1] = m`. Returns the new item
/// list and the tree-level proof.
fn collapse_pair_ln(op: AcOp, items: &[Term], i: usize, pair_eq: EqProof) -> (Vec<Term>, EqProof) {
    debug_assert_eq!(*pair_eq.lhs(), op.mk(items[i].clone(), items[i + 1].clone()));
    let merged = pair_eq.rhs().clone();
    let core = if i == 0 {
        pair_eq
    } else {
        let p = op.ln(&items[..i]);
        let (u, v) = (items[i].clone(), items[i + 1].clone());
        let assoc = EqProof::by_axiom(
            op.assoc(),
            op.mk(op.mk(p.clone(), u.clone()), v.clone()),
            op.mk(p.clone(), op.mk(u, v)),
        );
        let inner = EqProof::ctx(op.ctx_op(), vec![EqProof::refl(p), pair_eq]);
        EqProof::trans(assoc, inner)
    };
    let mut proof = core;
    for item in &items[i + 2..] {
        proof = EqProof::ctx(op.ctx_op(), vec![proof, EqProof::refl(item.clone())]);
    }
    let mut new_items = items[..i].to_vec();
    new_items.push(merged);
    new_items.extend(items[i + 2..].iter().cloned());
    debug_assert_eq!(*proof.rhs(), op.ln(&new_items));
    (new_items, proof)
}

/// Collapses adjacent duplicates via the idempotence axiom.
fn dedup_adjacent_ln(op: AcOp, items: &[Term]) -> (Vec<Term>, EqProof) {
    let mut items = items.to_vec();
    let mut steps = vec![EqProof::refl(op.ln(&items))];
    loop {
        let found = (0..items.len().saturating_sub(1)).find(|&i| items[i] == items[i + 1]);
        let Some(i) = found else { break };
        let x = items[i].clone();
        let pair = EqProof::by_axiom(op.idem(), op.mk(x.clone(), x.clone()), x);
        let (next, e) = collapse_pair_ln(op, &items, i, pair);
        items = next;
        steps.push(e);
    }
    (items, EqProof::trans_many(steps))
}

/// Canonical union of two normal disjunctions, with the proof
/// `x.term \/ y.term = union.term` (reordering plus idempotence).
pub(crate) fn union_disj(x: &NfTerm, y: &NfTerm) -> (NfTerm, EqProof) {
    let src = Term::disj(x.term().clone(), y.term().clone());
    let e1 = reassoc_to_ln(AcOp::Disj, &src);
    let flat = AcOp::Disj.flatten(&src);
    let mut sorted = flat.clone();
    sorted.sort();
    let e2 = permute_ln(AcOp::Disj, &flat, &sorted);
    let (_, e3) = dedup_adjacent_ln(AcOp::Disj, &sorted);
    let result = NfTerm::new(x.disjuncts.iter().chain(&y.disjuncts).cloned().collect::<Vec<_>>());
    let eq = EqProof::trans_many([e1, e2, e3]);
    debug_assert_eq!(eq.rhs(), result.term());
    (result, eq)
}

/// Assembles per-disjunct rewrites into a canonical disjunction. The
/// subject term is `ln([eqs[i].lhs])`; each `eqs[i]` rewrites one
/// disjunct into `parts[i]`. Inconsistent parts are pruned (or, when
/// everything collapses, the result is `bot`).
fn assemble_disjunction(eqs: Vec<EqProof>, parts: Vec<NormalForm>) -> (NormalForm, EqProof) {
    debug_assert_eq!(eqs.len(), parts.len());
    let e1 = map_ln(AcOp::Disj, eqs);
    let e2 = reassoc_to_ln(AcOp::Disj, e1.rhs());
    let leaves = AcOp::Disj.flatten(e1.rhs());
    let mut sums: Vec<(Term, NfSum)> = Vec::new();
    for part in &parts {
        if let NormalForm::Basic(nf) = part {
            for d in &nf.disjuncts {
                sums.push((d.term.clone(), d.clone()));
            }
        }
    }
    let bots = leaves.iter().filter(|t| matches!(t, Term::Bottom)).count();
    debug_assert_eq!(sums.len() + bots, leaves.len());

    if sums.is_empty() {
        // Everything collapsed; fold `bot \/ bot` away from the right.
        let mut steps = vec![EqProof::trans(e1, e2)];
        let mut n = leaves.len();
        while n > 1 {
            let rest = AcOp::Disj.ln(&vec![Term::Bottom; n - 1]);
            steps.push(EqProof::by_axiom(
                AxiomName::DI4,
                Term::disj(rest.clone(), Term::Bottom),
                rest,
            ));
            n -= 1;
        }
        return (NormalForm::Bottom, EqProof::trans_many(steps));
    }

    sums.sort_by(|(a, _), (b, _)| a.cmp(b));
    // Sorted sums first, inconsistent leaves at the tail where unit steps
    // remove them one by one.
    let mut arranged: Vec<Term> = sums.iter().map(|(t, _)| t.clone()).collect();
    arranged.extend(std::iter::repeat(Term::Bottom).take(bots));
    let e3 = permute_ln(AcOp::Disj, &leaves, &arranged);
    let mut steps = vec![EqProof::trans_many([e1, e2, e3])];
    for k in (sums.len()..arranged.len()).rev() {
        let rest = AcOp::Disj.ln(&arranged[..k]);
        steps.push(EqProof::by_axiom(
            AxiomName::DI4,
            Term::disj(rest.clone(), Term::Bottom),
            rest,
        ));
    }
    let sum_terms: Vec<Term> = sums.iter().map(|(t, _)| t.clone()).collect();
    let (_, e4) = dedup_adjacent_ln(AcOp::Disj, &sum_terms);
    steps.push(e4);
    let result = NfTerm::new(sums.into_iter().map(|(_, s)| s).collect());
    let eq = EqProof::trans_many(steps);
    debug_assert_eq!(eq.rhs(), result.term());
    (NormalForm::Basic(result), eq)
}

/// Distributes `x (*) y` over both disjunct lists, returning the sum pairs
/// in index order and the proof down to the flat disjunction of pairs.
fn full_distribute(op: &DistOp, x: &NfTerm, y: &NfTerm) -> (Vec<(NfSum, NfSum)>, EqProof) {
    let xs: Vec<Term> = x.disjuncts.iter().map(|d| d.term.clone()).collect();
    let ys: Vec<Term> = y.disjuncts.iter().map(|d| d.term.clone()).collect();
    let src = op.mk(x.term().clone(), y.term().clone());
    let swapped = op.mk(y.term().clone(), x.term().clone());
    let e1 = EqProof::by_axiom(op.comm_axiom(), src, swapped);
    let e2 = dist_right_eq(op, y.term(), &xs);
    let per_disjunct: Vec<EqProof> = xs
        .iter()
        .map(|xi| {
            let comm = EqProof::by_axiom(
                op.comm_axiom(),
                op.mk(y.term().clone(), xi.clone()),
                op.mk(xi.clone(), y.term().clone()),
            );
            EqProof::trans(comm, dist_right_eq(op, xi, &ys))
        })
        .collect();
    let e3 = map_ln(AcOp::Disj, per_disjunct);
    let e4 = reassoc_to_ln(AcOp::Disj, e3.rhs());
    let mut pairs = Vec::new();
    for dx in &x.disjuncts {
        for dy in &y.disjuncts {
            pairs.push((dx.clone(), dy.clone()));
        }
    }
    (pairs, EqProof::trans_many([e1, e2, e3, e4]))
}

/// Choice of two canonical sums: disjoint prefixes concatenate, shared
/// prefixes merge their continuations into a disjunction. Returns the
/// canonical sum and the proof `x.term [] y.term = result.term`.
pub fn choice_nf(x: &NfSum, y: &NfSum) -> (NfSum, EqProof) {
    let (tx, ty) = (x.term().clone(), y.term().clone());
    if x.summands.is_empty() {
        let src = Term::ext_choice(Term::Nil, ty.clone());
        if y.summands.is_empty() {
            return (NfSum::empty(), EqProof::by_axiom(AxiomName::EC4, src, Term::Nil));
        }
        let e1 = EqProof::by_axiom(AxiomName::EC1, src, Term::ext_choice(ty.clone(), Term::Nil));
        let e2 = EqProof::by_axiom(AxiomName::EC4, Term::ext_choice(ty.clone(), Term::Nil), ty);
        return (y.clone(), EqProof::trans(e1, e2));
    }
    if y.summands.is_empty() {
        let src = Term::ext_choice(tx.clone(), Term::Nil);
        return (x.clone(), EqProof::by_axiom(AxiomName::EC4, src, tx));
    }

    enum Group {
        Single(Term, (String, NfTerm)),
        /// Adjacent summand pair with its merge proof and the result.
        Merge(Term, Term, EqProof, (String, NfTerm)),
    }
    let item = |a: &str, c: &NfTerm| Term::prefix(Action::visible(a.to_string()), c.term().clone());
    let find = |s: &NfSum, a: &str| s.summands.iter().find(|(n, _)| n == a).map(|(_, c)| c.clone());
    let mut actions: Vec<String> = x
        .summands
        .iter()
        .chain(&y.summands)
        .map(|(a, _)| a.clone())
        .collect();
    actions.sort();
    actions.dedup();

    let mut groups = Vec::new();
    for a in &actions {
        match (find(x, a), find(y, a)) {
            (Some(cx), Some(cy)) => {
                let (merged, ue) = union_disj(&cx, &cy);
                let src = Term::ext_choice(item(a, &cx), item(a, &cy));
                let joined = Term::prefix(
                    Action::visible(a.clone()),
                    Term::disj(cx.term().clone(), cy.term().clone()),
                );
                // An equality, not just an inequality: the converse
                // distribution axiom applies because normal continuations
                // are basic terms.
                let e1 = EqProof::from_halves(
                    merge_prefix_leq(a, cx.term(), cy.term()),
                    Proof::axiom(AxiomName::DS4, Direction::L2R, joined.clone(), src.clone()),
                );
                let e2 = EqProof::ctx(CtxOp::Prefix(Action::visible(a.clone())), vec![ue]);
                groups.push(Group::Merge(
                    item(a, &cx),
                    item(a, &cy),
                    EqProof::trans(e1, e2),
                    (a.clone(), merged),
                ));
            }
            (Some(cx), None) => groups.push(Group::Single(item(a, &cx), (a.clone(), cx))),
            (None, Some(cy)) => groups.push(Group::Single(item(a, &cy), (a.clone(), cy))),
            (None, None) => unreachable!(),
        }
    }

    let src = Term::ext_choice(tx, ty);
    let e0 = reassoc_to_ln(AcOp::Choice, &src);
    let flat = AcOp::Choice.flatten(&src);
    let arranged: Vec<Term> = groups
        .iter()
        .flat_map(|g| match g {
            Group::Single(t, _) => vec![t.clone()],
            Group::Merge(a, b, _, _) => vec![a.clone(), b.clone()],
        })
        .collect();
    let e1 = permute_ln(AcOp::Choice, &flat, &arranged);
    let mut steps = vec![e0, e1];
    let mut items = arranged;
    let mut summands = Vec::new();
    // Every earlier group has collapsed to one item, so group k starts at
    // position k of the current list.
    for (k, g) in groups.into_iter().enumerate() {
        match g {
            Group::Single(_, s) => summands.push(s),
            Group::Merge(_, _, pair_eq, s) => {
                let (next, e) = collapse_pair_ln(AcOp::Choice, &items, k, pair_eq);
                items = next;
                steps.push(e);
                summands.push(s);
            }
        }
    }
    let result = NfSum::new(summands);
    let eq = EqProof::trans_many(steps);
    debug_assert_eq!(eq.rhs(), result.term());
    (result, eq)
}

/// Conjunction of two canonical sums: `bot` on mismatched prefix sets,
/// otherwise zip by action and recurse on the continuations, collapsing
/// any inconsistent summand.
fn conj_pair(x: &NfSum, y: &NfSum) -> (NormalForm, EqProof) {
    let src = Term::conj(x.term().clone(), y.term().clone());
    if x.prefix_set() != y.prefix_set() {
        return (NormalForm::Bottom, EqProof::by_axiom(AxiomName::ECC1, src, Term::Bottom));
    }
    if x.summands.is_empty() {
        return (
            NormalForm::Basic(NfTerm::nil()),
            EqProof::by_axiom(AxiomName::CO2, src, Term::Nil),
        );
    }
    // Equal prefix sets plus injectivity align the summands positionally.
    let zipped: Vec<(String, Term)> = x
        .summands
        .iter()
        .zip(&y.summands)
        .map(|((a, cx), (b, cy))| {
            debug_assert_eq!(a, b);
            (a.clone(), Term::conj(cx.term().clone(), cy.term().clone()))
        })
        .collect();
    let zipped_term = GuardedSum::new(zipped).to_term();
    let e1 = EqProof::from_halves(
        Proof::axiom(AxiomName::ECC3, Direction::L2R, src.clone(), zipped_term.clone()),
        Proof::axiom(AxiomName::ECC2, Direction::L2R, zipped_term, src),
    );

    let mut item_eqs = Vec::new();
    let mut conts = Vec::new();
    for ((a, cx), (_, cy)) in x.summands.iter().zip(&y.summands) {
        let (nf, ce) = conj_nf(cx, cy);
        item_eqs.push(EqProof::ctx(CtxOp::Prefix(Action::visible(a.clone())), vec![ce]));
        conts.push((a.clone(), nf));
    }
    let e2 = map_ln(AcOp::Choice, item_eqs);

    if conts.iter().any(|(_, nf)| matches!(nf, NormalForm::Bottom)) {
        // One dead branch poisons the whole sum.
        let items: Vec<Term> = conts
            .iter()
            .map(|(a, nf)| Term::prefix(Action::visible(a.clone()), nf.term()))
            .collect();
        let bot_eqs: Vec<EqProof> = conts
            .iter()
            .zip(&items)
            .map(|((_, nf), item)| match nf {
                NormalForm::Bottom => {
                    EqProof::by_axiom(AxiomName::PR1, item.clone(), Term::Bottom)
                }
                NormalForm::Basic(_) => EqProof::refl(item.clone()),
            })
            .collect();
        let e3 = map_ln(AcOp::Choice, bot_eqs);
        let collapsed: Vec<Term> = conts
            .iter()
            .zip(&items)
            .map(|((_, nf), item)| match nf {
                NormalForm::Bottom => Term::Bottom,
                NormalForm::Basic(_) => item.clone(),
            })
            .collect();
        let mut steps = vec![EqProof::trans_many([e1, e2, e3])];
        if collapsed.len() > 1 {
            // Put one bot last; a single absorption step ends it.
            let bot_pos = collapsed.iter().rposition(|t| matches!(t, Term::Bottom)).unwrap();
            let mut arranged = collapsed.clone();
            let bot = arranged.remove(bot_pos);
            arranged.push(bot);
            steps.push(permute_ln(AcOp::Choice, &collapsed, &arranged));
            let rest = AcOp::Choice.ln(&arranged[..arranged.len() - 1]);
            steps.push(EqProof::by_axiom(
                AxiomName::EC5,
                Term::ext_choice(rest, Term::Bottom),
                Term::Bottom,
            ));
        }
        return (NormalForm::Bottom, EqProof::trans_many(steps));
    }

    let summands: Vec<(String, NfTerm)> = conts
        .into_iter()
        .map(|(a, nf)| match nf {
            NormalForm::Basic(c) => (a, c),
            NormalForm::Bottom => unreachable!(),
        })
        .collect();
    let result = NfSum::new(summands);
    let eq = EqProof::trans(e1, e2);
    debug_assert_eq!(*eq.rhs(), result.term);
    (NormalForm::Basic(NfTerm::singleton(result)), eq)
}

/// Conjunction of two basic normal forms.
pub fn conj_nf(x: &NfTerm, y: &NfTerm) -> (NormalForm, EqProof) {
    let (pairs, e0) = full_distribute(&DistOp::Conj, x, y);
    let mut eqs = Vec::new();
    let mut parts = Vec::new();
    for (dx, dy) in &pairs {
        let (nf, e) = conj_pair(dx, dy);
        eqs.push(e);
        parts.push(nf);
    }
    let (nf, e1) = assemble_disjunction(eqs, parts);
    (nf, EqProof::trans(e0, e1))
}

/// Parallel composition of two canonical sums via the expansion schema.
fn par_pair(x: &NfSum, y: &NfSum, sync: &SyncSet) -> (NfSum, EqProof) {
    let src = Term::par(x.term().clone(), y.term().clone(), sync.clone());
    let as_view = |s: &NfSum| {
        GuardedSum::new(s.summands.iter().map(|(a, c)| (a.clone(), c.term().clone())).collect())
    };
    let expansion = expansion_term(&as_view(x), &as_view(y), sync);
    // Both directions hold: the converse schema's side condition is met
    // because normal continuations are basic.
    let e1 = EqProof::from_halves(
        Proof::axiom(AxiomName::EXP1, Direction::L2R, src.clone(), expansion.clone()),
        Proof::axiom(AxiomName::EXP2, Direction::L2R, expansion, src),
    );

    let x_whole = NfTerm::singleton(x.clone());
    let y_whole = NfTerm::singleton(y.clone());
    let omega1: Vec<(String, NfTerm, NfTerm)> = x
        .summands
        .iter()
        .filter(|(a, _)| !sync.contains(a))
        .map(|(a, c)| (a.clone(), c.clone(), y_whole.clone()))
        .collect();
    let omega2: Vec<(String, NfTerm, NfTerm)> = y
        .summands
        .iter()
        .filter(|(b, _)| !sync.contains(b))
        .map(|(b, c)| (b.clone(), x_whole.clone(), c.clone()))
        .collect();
    let mut omega3: Vec<(String, NfTerm, NfTerm)> = Vec::new();
    for (a, cx) in &x.summands {
        if !sync.contains(a) {
            continue;
        }
        for (b, cy) in &y.summands {
            if a == b {
                omega3.push((a.clone(), cx.clone(), cy.clone()));
            }
        }
    }

    // Normalize the continuations of one interleaving family.
    let family = |items: Vec<(String, NfTerm, NfTerm)>| -> (NfSum, EqProof) {
        if items.is_empty() {
            return (NfSum::empty(), EqProof::refl(Term::Nil));
        }
        let mut eqs = Vec::new();
        let mut summands = Vec::new();
        for (a, l, r) in items {
            let (nf, pe) = par_nf(&l, &r, sync);
            eqs.push(EqProof::ctx(CtxOp::Prefix(Action::visible(a.clone())), vec![pe]));
            summands.push((a, nf));
        }
        let eq = map_ln(AcOp::Choice, eqs);
        let sum = NfSum::new(summands);
        debug_assert_eq!(eq.rhs(), sum.term());
        (sum, eq)
    };

    let (s1, f1) = family(omega1);
    let (s2, f2) = family(omega2);
    let (s3, f3) = family(omega3);
    let e2 = EqProof::ctx(
        CtxOp::ExtChoice,
        vec![EqProof::ctx(CtxOp::ExtChoice, vec![f1, f2]), f3],
    );
    let (s12, m1) = choice_nf(&s1, &s2);
    let e3 = EqProof::ctx(CtxOp::ExtChoice, vec![m1, EqProof::refl(s3.term().clone())]);
    let (result, m2) = choice_nf(&s12, &s3);
    let eq = EqProof::trans_many([e1, e2, e3, m2]);
    debug_assert_eq!(eq.rhs(), result.term());
    (result, eq)
}

/// Parallel composition of two basic normal forms. Basic terms stay
/// consistent, so the result is never `bot`.
pub fn par_nf(x: &NfTerm, y: &NfTerm, sync: &SyncSet) -> (NfTerm, EqProof) {
    let (pairs, e0) = full_distribute(&DistOp::Par(sync.clone()), x, y);
    let mut eqs = Vec::new();
    let mut parts = Vec::new();
    for (dx, dy) in &pairs {
        let (sum, e) = par_pair(dx, dy, sync);
        eqs.push(e);
        parts.push(NormalForm::Basic(NfTerm::singleton(sum)));
    }
    let (nf, e1) = assemble_disjunction(eqs, parts);
    match nf {
        NormalForm::Basic(nf) => (nf, EqProof::trans(e0, e1)),
        NormalForm::Bottom => unreachable!("parallel composition of sums has no bot disjunct"),
    }
}

struct Normalizer {
    cache: HashMap<Term, (NormalForm, EqProof)>,
}

impl Normalizer {
    fn norm(&mut self, t: &Term) -> (NormalForm, EqProof) {
        if let Some(hit) = self.cache.get(t) {
            return hit.clone();
        }
        let out = self.norm_uncached(t);
        debug_assert_eq!(*out.1.lhs(), *t);
        debug_assert_eq!(*out.1.rhs(), out.0.term());
        self.cache.insert(t.clone(), out.clone());
        out
    }

    fn norm_uncached(&mut self, t: &Term) -> (NormalForm, EqProof) {
        match t {
            Term::Nil => (NormalForm::Basic(NfTerm::nil()), EqProof::refl(Term::Nil)),
            Term::Bottom => (NormalForm::Bottom, EqProof::refl(Term::Bottom)),
            Term::Prefix(a, body) => {
                let (nb, eb) = self.norm(body);
                let e1 = EqProof::ctx(CtxOp::Prefix(a.clone()), vec![eb]);
                match (&nb, a) {
                    (NormalForm::Bottom, Action::Visible(_)) => {
                        let e2 = EqProof::by_axiom(
                            AxiomName::PR1,
                            Term::prefix(a.clone(), Term::Bottom),
                            Term::Bottom,
                        );
                        (NormalForm::Bottom, EqProof::trans(e1, e2))
                    }
                    (_, Action::Tau) => {
                        let e2 = EqProof::by_axiom(
                            AxiomName::PR2,
                            Term::prefix(Action::Tau, nb.term()),
                            nb.term(),
                        );
                        (nb, EqProof::trans(e1, e2))
                    }
                    (NormalForm::Basic(nf), Action::Visible(name)) => {
                        let sum = NfSum::new(vec![(name.clone(), nf.clone())]);
                        let out = NfTerm::singleton(sum);
                        debug_assert_eq!(*e1.rhs(), *out.term());
                        (NormalForm::Basic(out), e1)
                    }
                }
            }
            Term::Disj(l, r) => {
                let (nl, el) = self.norm(l);
                let (nr, er) = self.norm(r);
                let e1 = EqProof::ctx(CtxOp::Disj, vec![el, er]);
                match (nl, nr) {
                    (NormalForm::Bottom, NormalForm::Bottom) => {
                        let e2 = EqProof::by_axiom(
                            AxiomName::DI4,
                            Term::disj(Term::Bottom, Term::Bottom),
                            Term::Bottom,
                        );
                        (NormalForm::Bottom, EqProof::trans(e1, e2))
                    }
                    (NormalForm::Bottom, NormalForm::Basic(nr)) => {
                        let swap = EqProof::by_axiom(
                            AxiomName::DI1,
                            Term::disj(Term::Bottom, nr.term().clone()),
                            Term::disj(nr.term().clone(), Term::Bottom),
                        );
                        let unit = EqProof::by_axiom(
                            AxiomName::DI4,
                            Term::disj(nr.term().clone(), Term::Bottom),
                            nr.term().clone(),
                        );
                        (NormalForm::Basic(nr), EqProof::trans_many([e1, swap, unit]))
                    }
                    (NormalForm::Basic(nl), NormalForm::Bottom) => {
                        let unit = EqProof::by_axiom(
                            AxiomName::DI4,
                            Term::disj(nl.term().clone(), Term::Bottom),
                            nl.term().clone(),
                        );
                        (NormalForm::Basic(nl), EqProof::trans(e1, unit))
                    }
                    (NormalForm::Basic(nl), NormalForm::Basic(nr)) => {
                        let (u, ue) = union_disj(&nl, &nr);
                        (NormalForm::Basic(u), EqProof::trans(e1, ue))
                    }
                }
            }
            Term::ExtChoice(l, r) => {
                let zero = |side: NormalForm, e1: EqProof, left_is_bot: bool, other: Term| {
                    let _ = side;
                    let mut steps = vec![e1];
                    if left_is_bot {
                        steps.push(EqProof::by_axiom(
                            AxiomName::EC1,
                            Term::ext_choice(Term::Bottom, other.clone()),
                            Term::ext_choice(other.clone(), Term::Bottom),
                        ));
                    }
                    steps.push(EqProof::by_axiom(
                        AxiomName::EC5,
                        Term::ext_choice(other, Term::Bottom),
                        Term::Bottom,
                    ));
                    (NormalForm::Bottom, EqProof::trans_many(steps))
                };
                let (nl, el) = self.norm(l);
                let (nr, er) = self.norm(r);
                let e1 = EqProof::ctx(CtxOp::ExtChoice, vec![el, er]);
                match (nl, nr) {
                    (NormalForm::Bottom, nr) => zero(nr.clone(), e1, true, nr.term()),
                    (nl, NormalForm::Bottom) => zero(nl.clone(), e1, false, nl.term()),
                    (NormalForm::Basic(nl), NormalForm::Basic(nr)) => {
                        let (pairs, e2) = full_distribute(&DistOp::Choice, &nl, &nr);
                        let mut eqs = Vec::new();
                        let mut parts = Vec::new();
                        for (dx, dy) in &pairs {
                            let (sum, e) = choice_nf(dx, dy);
                            eqs.push(e);
                            parts.push(NormalForm::Basic(NfTerm::singleton(sum)));
                        }
                        let (nf, e3) = assemble_disjunction(eqs, parts);
                        (nf, EqProof::trans_many([e1, e2, e3]))
                    }
                }
            }
            Term::Conj(l, r) => {
                let (nl, el) = self.norm(l);
                let (nr, er) = self.norm(r);
                let e1 = EqProof::ctx(CtxOp::Conj, vec![el, er]);
                match (nl, nr) {
                    (NormalForm::Bottom, nr) => {
                        let swap = EqProof::by_axiom(
                            AxiomName::CO1,
                            Term::conj(Term::Bottom, nr.term()),
                            Term::conj(nr.term(), Term::Bottom),
                        );
                        let zero = EqProof::by_axiom(
                            AxiomName::CO3,
                            Term::conj(nr.term(), Term::Bottom),
                            Term::Bottom,
                        );
                        (NormalForm::Bottom, EqProof::trans_many([e1, swap, zero]))
                    }
                    (nl, NormalForm::Bottom) => {
                        let zero = EqProof::by_axiom(
                            AxiomName::CO3,
                            Term::conj(nl.term(), Term::Bottom),
                            Term::Bottom,
                        );
                        (NormalForm::Bottom, EqProof::trans(e1, zero))
                    }
                    (NormalForm::Basic(nl), NormalForm::Basic(nr)) => {
                        let (nf, e2) = conj_nf(&nl, &nr);
                        (nf, EqProof::trans(e1, e2))
                    }
                }
            }
            Term::Par(l, r, sync) => {
                let (nl, el) = self.norm(l);
                let (nr, er) = self.norm(r);
                let e1 = EqProof::ctx(CtxOp::Par(sync.clone()), vec![el, er]);
                match (nl, nr) {
                    (NormalForm::Bottom, nr) => {
                        let swap = EqProof::by_axiom(
                            AxiomName::PA1,
                            Term::par(Term::Bottom, nr.term(), sync.clone()),
                            Term::par(nr.term(), Term::Bottom, sync.clone()),
                        );
                        let zero = EqProof::by_axiom(
                            AxiomName::PA2,
                            Term::par(nr.term(), Term::Bottom, sync.clone()),
                            Term::Bottom,
                        );
                        (NormalForm::Bottom, EqProof::trans_many([e1, swap, zero]))
                    }
                    (nl, NormalForm::Bottom) => {
                        let zero = EqProof::by_axiom(
                            AxiomName::PA2,
                            Term::par(nl.term(), Term::Bottom, sync.clone()),
                            Term::Bottom,
                        );
                        (NormalForm::Bottom, EqProof::trans(e1, zero))
                    }
                    (NormalForm::Basic(nl), NormalForm::Basic(nr)) => {
                        let (nf, e2) = par_nf(&nl, &nr, sync);
                        (NormalForm::Basic(nf), EqProof::trans(e1, e2))
                    }
                }
            }
        }
    }
}

/// Rewrites `t` into its canonical normal form, returning the proof of
/// `t = nf(t)`.
pub fn normalize(t: &Term) -> (NormalForm, EqProof) {
    Normalizer { cache: HashMap::new() }.norm(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::check_proof;
    use crate::parse;
    use crate::refinement::rs_equiv;

    fn t(s: &str) -> Term {
        parse(s).expect(s)
    }

    fn normalized(s: &str) -> Term {
        let term = t(s);
        let (nf, eq) = normalize(&term);
        assert_eq!(*eq.lhs(), term);
        assert_eq!(*eq.rhs(), nf.term());
        check_proof(&eq.leq).unwrap();
        check_proof(&eq.geq).unwrap();
        assert!(nf.term().is_normal_form(), "{} not in normal form", nf.term());
        assert!(
            rs_equiv(&term, &nf.term()).unwrap(),
            "{s} not equivalent to {}",
            nf.term()
        );
        nf.term()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalized("tau.a.0"), t("a.0"));
        assert_eq!(normalized("a.bot"), t("bot"));
        assert_eq!(normalized("a.0 /\\ b.0"), t("bot"));
        assert_eq!(normalized("a.0 [] a.b.0"), t("a.(0 \\/ b.0)"));
        assert_eq!(normalized("0"), t("0"));
        assert_eq!(normalized("bot"), t("bot"));
    }

    #[test]
    fn normalize_logical_cases() {
        assert_eq!(normalized("a.0 \\/ a.0"), t("a.0"));
        assert_eq!(normalized("bot \\/ a.0"), t("a.0"));
        assert_eq!(normalized("a.0 \\/ bot \\/ 0"), t("0 \\/ a.0"));
        assert_eq!(normalized("(a.0 \\/ b.0) /\\ a.0"), t("a.0"));
        assert_eq!(normalized("a.b.0 /\\ a.c.0"), t("bot"));
        assert_eq!(normalized("a.0 /\\ a.0"), t("a.0"));
        assert_eq!(normalized("tau.(a.0 \\/ b.0) [] c.0"), t("a.0 [] c.0 \\/ b.0 [] c.0"));
    }

    #[test]
    fn normalize_parallel_cases() {
        assert_eq!(normalized("a.0 |[]| b.0"), t("a.b.0 [] b.a.0"));
        assert_eq!(normalized("a.0 |[a]| a.0"), t("a.0"));
        assert_eq!(normalized("a.0 |[a]| b.0"), t("b.0"));
        assert_eq!(normalized("a.0 |[]| a.0"), t("a.a.0"));
        assert_eq!(normalized("a.0 |[a]| 0"), t("0"));
        assert_eq!(normalized("bot |[a]| a.0"), t("bot"));
    }

    #[test]
    fn choice_nf_examples() {
        let one = |s: &str| {
            let (nf, _) = normalize(&t(s));
            nf.as_basic().unwrap().disjuncts()[0].clone()
        };
        let (merged, eq) = choice_nf(&one("a.0"), &one("b.0"));
        assert_eq!(*merged.term(), t("a.0 [] b.0"));
        check_proof(&eq.leq).unwrap();

        let (merged, eq) = choice_nf(&one("a.0"), &one("a.b.0"));
        assert_eq!(*merged.term(), t("a.(0 \\/ b.0)"));
        check_proof(&eq.leq).unwrap();
        check_proof(&eq.geq).unwrap();

        let (merged, _) = choice_nf(&NfSum::empty(), &one("a.0"));
        assert_eq!(*merged.term(), t("a.0"));
    }

    #[test]
    fn conj_nf_examples() {
        let nf_of = |s: &str| normalize(&t(s)).0.as_basic().unwrap().clone();
        let (nf, eq) = conj_nf(&nf_of("a.0"), &nf_of("a.0"));
        assert_eq!(nf.term(), t("a.0"));
        check_proof(&eq.leq).unwrap();

        let (nf, _) = conj_nf(&nf_of("a.b.0"), &nf_of("a.c.0"));
        assert_eq!(nf.term(), t("bot"));

        let (nf, _) = conj_nf(&nf_of("a.0 \\/ b.0"), &nf_of("a.0"));
        assert_eq!(nf.term(), t("a.0"));
    }

    #[test]
    fn par_nf_examples() {
        let nf_of = |s: &str| normalize(&t(s)).0.as_basic().unwrap().clone();
        let sync: SyncSet = ["a".to_string()].into_iter().collect();
        let (nf, eq) = par_nf(&nf_of("a.0"), &nf_of("a.0"), &sync);
        assert_eq!(*nf.term(), t("a.0"));
        check_proof(&eq.leq).unwrap();

        let (nf, _) = par_nf(&nf_of("a.0"), &nf_of("b.0"), &SyncSet::new());
        assert_eq!(*nf.term(), t("a.b.0 [] b.a.0"));

        let (nf, _) = par_nf(&nf_of("a.0"), &nf_of("b.0"), &sync);
        assert_eq!(*nf.term(), t("b.0"));
    }

    #[test]
    fn normalization_is_idempotent() {
        for s in [
            "tau.(a.0 \\/ b.0) [] c.0",
            "(a.b.0 [] a.c.0) /\\ (a.b.0 [] a.b.0)",
            "a.0 |[a,b]| (b.0 \\/ a.tau.0)",
            "(a.(bot \\/ 0) [] b.0) |[b]| b.c.0",
        ] {
            let (nf, _) = normalize(&t(s));
            let (nf2, _) = normalize(&nf.term());
            assert_eq!(nf, nf2, "{s}");
        }
    }
}
