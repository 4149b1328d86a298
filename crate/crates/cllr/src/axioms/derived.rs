//! Proof builders for lemmas derived from the axioms: disjunct
//! introduction and elimination, the bottom chain, merging equal-action
//! prefixes, and distribution of a binary operator over disjunction.
//!
//! Everything here produces ordinary [`Proof`] values; nothing bypasses
//! the checker.

use super::{AcOp, AxiomName, CtxOp, Direction, EqProof, Proof};
use crate::syntax::{Action, SyncSet, Term};

/// `x <= x \/ y`.
pub fn leq_left_disj(x: &Term, y: &Term) -> Proof {
    Proof::axiom(AxiomName::DI5, Direction::L2R, x.clone(), Term::disj(x.clone(), y.clone()))
}

/// `y <= x \/ y`.
pub fn leq_right_disj(x: &Term, y: &Term) -> Proof {
    let yx = Term::disj(y.clone(), x.clone());
    let xy = Term::disj(x.clone(), y.clone());
    Proof::trans(
        Proof::axiom(AxiomName::DI5, Direction::L2R, y.clone(), yx.clone()),
        Proof::axiom(AxiomName::DI1, Direction::L2R, yx, xy),
    )
}

/// `bot <= t`.
pub fn bottom_leq(t: &Term) -> Proof {
    let bot_t = Term::disj(Term::Bottom, t.clone());
    let t_bot = Term::disj(t.clone(), Term::Bottom);
    Proof::trans_many([
        Proof::axiom(AxiomName::DI5, Direction::L2R, Term::Bottom, bot_t.clone()),
        Proof::axiom(AxiomName::DI1, Direction::L2R, bot_t, t_bot.clone()),
        Proof::axiom(AxiomName::DI4, Direction::L2R, t_bot, t.clone()),
    ])
}

/// `items[k] <= ln(items)` over disjunction.
pub fn leq_member_ln_disj(items: &[Term], k: usize) -> Proof {
    debug_assert!(k < items.len());
    if items.len() == 1 {
        return Proof::refl(items[0].clone());
    }
    let (last, init) = items.split_last().unwrap();
    let head = AcOp::Disj.ln(init);
    if k == items.len() - 1 {
        leq_right_disj(&head, last)
    } else {
        Proof::trans(leq_member_ln_disj(init, k), leq_left_disj(&head, last))
    }
}

/// `ln(items) <= target` over disjunction, given `items[i] <= target` for
/// every position.
pub fn ln_disj_leq(items: &[Term], target: &Term, mut proofs: Vec<Proof>) -> Proof {
    debug_assert_eq!(items.len(), proofs.len());
    if items.len() == 1 {
        return proofs.pop().unwrap();
    }
    let last_proof = proofs.pop().unwrap();
    let init = &items[..items.len() - 1];
    let init_proof = ln_disj_leq(init, target, proofs);
    let both = Proof::ctx(CtxOp::Disj, vec![init_proof, last_proof]);
    let collapse = Proof::axiom(
        AxiomName::DI3,
        Direction::L2R,
        Term::disj(target.clone(), target.clone()),
        target.clone(),
    );
    Proof::trans(both, collapse)
}

/// `a.t [] a.s <= a.(t \/ s)` for a visible action.
pub fn merge_prefix_leq(a: &str, t: &Term, s: &Term) -> Proof {
    let action = Action::visible(a.to_string());
    let ts = Term::disj(t.clone(), s.clone());
    let left = Proof::ctx(CtxOp::Prefix(action.clone()), vec![leq_left_disj(t, s)]);
    let right = Proof::ctx(CtxOp::Prefix(action.clone()), vec![leq_right_disj(t, s)]);
    let both = Proof::ctx(CtxOp::ExtChoice, vec![left, right]);
    let target = Term::prefix(action, ts);
    let collapse = Proof::axiom(
        AxiomName::EC3,
        Direction::L2R,
        Term::ext_choice(target.clone(), target.clone()),
        target,
    );
    Proof::trans(both, collapse)
}

/// Binary operators that distribute over disjunction on the right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistOp {
    Choice,
    Conj,
    Par(SyncSet),
}

impl DistOp {
    pub fn mk(&self, l: Term, r: Term) -> Term {
        match self {
            DistOp::Choice => Term::ext_choice(l, r),
            DistOp::Conj => Term::conj(l, r),
            DistOp::Par(a) => Term::par(l, r, a.clone()),
        }
    }

    pub fn comm_axiom(&self) -> AxiomName {
        match self {
            DistOp::Choice => AxiomName::EC1,
            DistOp::Conj => AxiomName::CO1,
            DistOp::Par(_) => AxiomName::PA1,
        }
    }

    pub fn dist_axiom(&self) -> AxiomName {
        match self {
            DistOp::Choice => AxiomName::DS1,
            DistOp::Conj => AxiomName::DS2,
            DistOp::Par(_) => AxiomName::DS3,
        }
    }

    pub fn ctx_op(&self) -> CtxOp {
        match self {
            DistOp::Choice => CtxOp::ExtChoice,
            DistOp::Conj => CtxOp::Conj,
            DistOp::Par(a) => CtxOp::Par(a.clone()),
        }
    }
}

/// `(t (*) s1) \/ (t (*) s2) <= t (*) (s1 \/ s2)`.
pub fn dist_right_converse(op: &DistOp, t: &Term, s1: &Term, s2: &Term) -> Proof {
    let s12 = Term::disj(s1.clone(), s2.clone());
    let b1 = Proof::ctx(op.ctx_op(), vec![Proof::refl(t.clone()), leq_left_disj(s1, s2)]);
    let b2 = Proof::ctx(op.ctx_op(), vec![Proof::refl(t.clone()), leq_right_disj(s1, s2)]);
    let both = Proof::ctx(CtxOp::Disj, vec![b1, b2]);
    let target = op.mk(t.clone(), s12);
    let collapse = Proof::axiom(
        AxiomName::DI3,
        Direction::L2R,
        Term::disj(target.clone(), target.clone()),
        target,
    );
    Proof::trans(both, collapse)
}

/// `t (*) ln(items) = ln([t (*) item, ...])`: the distribution axiom one
/// way, its converse lemma the other.
pub fn dist_right_eq(op: &DistOp, t: &Term, items: &[Term]) -> EqProof {
    debug_assert!(!items.is_empty());
    if items.len() == 1 {
        return EqProof::refl(op.mk(t.clone(), items[0].clone()));
    }
    let (last, init) = items.split_last().unwrap();
    let u = AcOp::Disj.ln(init);
    let src = op.mk(t.clone(), Term::disj(u.clone(), last.clone()));
    let split = Term::disj(op.mk(t.clone(), u.clone()), op.mk(t.clone(), last.clone()));
    let e1 = EqProof::from_halves(
        Proof::axiom(op.dist_axiom(), Direction::L2R, src, split.clone()),
        dist_right_converse(op, t, &u, last),
    );
    let rec = dist_right_eq(op, t, init);
    let e2 = EqProof::ctx(CtxOp::Disj, vec![rec, EqProof::refl(op.mk(t.clone(), last.clone()))]);
    EqProof::trans(e1, e2)
}
