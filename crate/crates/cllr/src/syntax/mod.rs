//! Term language of the finite CLL_R fragment.
//!
//! A [`Term`] is a closed, finite process expression built from nil, the
//! inconsistent process `bot`, action prefixing, external choice `[]`,
//! conjunction `/\`, disjunction `\/` and CSP-style parallel composition
//! `|[A]|` over a synchronisation set of visible actions. Terms double as
//! the states of the transition system in [`crate::semantics`].
//!
//! Terms are immutable values: children are shared behind [`Arc`], so
//! cloning is cheap and terms can be moved across threads freely. Equality
//! and hashing are structural. The derived [`Ord`] is the module-wide
//! canonical term order used for all deterministic output (constructor
//! tag first, then action names, then children lexicographically).

mod parse;
mod print;

pub use parse::{parse, ParseError};

use std::collections::BTreeSet;
use std::sync::Arc;

/// A transition label: the invisible action `tau` or a named visible action.
///
/// Visible names are nonempty lowercase identifiers; `tau` is reserved and
/// distinct from every visible action.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Action {
    Tau,
    Visible(String),
}

impl Action {
    pub fn visible(name: impl Into<String>) -> Self {
        let name = name.into();
        debug_assert!(name != "tau" && !name.is_empty());
        Action::Visible(name)
    }

    pub fn is_tau(&self) -> bool {
        matches!(self, Action::Tau)
    }

    pub fn name(&self) -> Option<&str> {
        match self {
            Action::Tau => None,
            Action::Visible(n) => Some(n),
        }
    }
}

impl std::fmt::Display for Action {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Action::Tau => f.write_str("tau"),
            Action::Visible(n) => f.write_str(n),
        }
    }
}

/// Synchronisation set of a parallel composition: visible action names only.
pub type SyncSet = BTreeSet<String>;

/// Abstract syntax of the finite CLL_R fragment.
///
/// All terms are finite trees and closed; there is no recursion binder in
/// this fragment.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    /// `0`, the process with no behaviour.
    Nil,
    /// `bot`, the inconsistent process.
    Bottom,
    /// `alpha.t`, action prefix.
    Prefix(Action, Arc<Term>),
    /// `t [] t`, external choice.
    ExtChoice(Arc<Term>, Arc<Term>),
    /// `t /\ t`, conjunction.
    Conj(Arc<Term>, Arc<Term>),
    /// `t \/ t`, disjunction.
    Disj(Arc<Term>, Arc<Term>),
    /// `t |[A]| t`, parallel composition synchronising on `A`.
    Par(Arc<Term>, Arc<Term>, SyncSet),
}

impl Term {
    pub fn nil() -> Term {
        Term::Nil
    }

    pub fn bottom() -> Term {
        Term::Bottom
    }

    pub fn prefix(action: Action, body: Term) -> Term {
        Term::Prefix(action, Arc::new(body))
    }

    pub fn ext_choice(left: Term, right: Term) -> Term {
        Term::ExtChoice(Arc::new(left), Arc::new(right))
    }

    pub fn conj(left: Term, right: Term) -> Term {
        Term::Conj(Arc::new(left), Arc::new(right))
    }

    pub fn disj(left: Term, right: Term) -> Term {
        Term::Disj(Arc::new(left), Arc::new(right))
    }

    pub fn par(left: Term, right: Term, sync: SyncSet) -> Term {
        debug_assert!(sync.iter().all(|a| a != "tau"));
        Term::Par(Arc::new(left), Arc::new(right), sync)
    }

    /// Number of operators in the term (prefixes and binary operators).
    pub fn size(&self) -> usize {
        match self {
            Term::Nil | Term::Bottom => 0,
            Term::Prefix(_, t) => 1 + t.size(),
            Term::ExtChoice(l, r) | Term::Conj(l, r) | Term::Disj(l, r) | Term::Par(l, r, _) => {
                1 + l.size() + r.size()
            }
        }
    }

    /// True iff the term is a basic process term: no `bot` and no
    /// conjunction anywhere. Basic terms are always consistent.
    pub fn is_basic(&self) -> bool {
        match self {
            Term::Nil => true,
            Term::Bottom => false,
            Term::Prefix(_, t) => t.is_basic(),
            Term::ExtChoice(l, r) | Term::Disj(l, r) | Term::Par(l, r, _) => {
                l.is_basic() && r.is_basic()
            }
            Term::Conj(_, _) => false,
        }
    }

    /// Reads the term as a general external choice of visible prefixes.
    ///
    /// Succeeds exactly on `0` (the empty sum), a single visible prefix, or
    /// a left-nested external choice whose leaves are visible prefixes, in
    /// which case the summands are returned in syntactic order.
    pub fn as_guarded_sum(&self) -> Option<GuardedSum> {
        fn collect(t: &Term, out: &mut Vec<(String, Term)>) -> bool {
            match t {
                Term::Prefix(Action::Visible(a), body) => {
                    out.push((a.clone(), (**body).clone()));
                    true
                }
                Term::ExtChoice(l, r) => {
                    // Left-nested reading: the right child is a single
                    // summand, the left child a nonempty sum.
                    collect(l, out)
                        && matches!(**r, Term::Prefix(Action::Visible(_), _))
                        && collect(r, out)
                }
                _ => false,
            }
        }
        if matches!(self, Term::Nil) {
            return Some(GuardedSum::default());
        }
        let mut summands = Vec::new();
        if collect(self, &mut summands) {
            Some(GuardedSum { summands })
        } else {
            None
        }
    }

    /// True iff the term is in normal form: `bot`, or a left-nested
    /// disjunction of prefix-injective, `tau`-free guarded sums whose
    /// continuations are recursively in normal form.
    pub fn is_normal_form(&self) -> bool {
        matches!(self, Term::Bottom) || is_nf_basic(self)
    }

    /// All strict and non-strict subterm positions, pre-order.
    pub fn subterms(&self) -> Vec<&Term> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            out.push(t);
            match t {
                Term::Nil | Term::Bottom => {}
                Term::Prefix(_, b) => stack.push(b),
                Term::ExtChoice(l, r) | Term::Conj(l, r) | Term::Disj(l, r) | Term::Par(l, r, _) => {
                    stack.push(r);
                    stack.push(l);
                }
            }
        }
        out
    }
}

fn is_nf_basic(t: &Term) -> bool {
    // Split a left-nested disjunction into its disjuncts; each disjunct
    // must itself be disjunction-free.
    let mut disjuncts = Vec::new();
    let mut cur = t;
    while let Term::Disj(l, r) = cur {
        if matches!(**r, Term::Disj(_, _)) {
            return false;
        }
        disjuncts.push(&**r);
        cur = l;
    }
    disjuncts.push(cur);
    disjuncts.iter().all(|d| match d.as_guarded_sum() {
        Some(s) => s.is_injective_in_prefixes() && s.summands.iter().all(|(_, c)| is_nf_basic(c)),
        None => false,
    })
}

/// A general external choice of visible prefixes, viewed as a summand list.
///
/// This is a view on [`Term`], not a distinct constructor: the empty list
/// denotes `0`, a singleton denotes the prefix itself and longer lists
/// denote the left-nested external choice of their entries.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct GuardedSum {
    pub summands: Vec<(String, Term)>,
}

impl GuardedSum {
    pub fn new(summands: Vec<(String, Term)>) -> Self {
        GuardedSum { summands }
    }

    /// True iff all summand actions are pairwise distinct.
    pub fn is_injective_in_prefixes(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.summands.iter().all(|(a, _)| seen.insert(a.clone()))
    }

    /// The set of summand actions.
    pub fn prefix_set(&self) -> BTreeSet<String> {
        self.summands.iter().map(|(a, _)| a.clone()).collect()
    }

    /// Rebuilds the left-nested external choice this list denotes.
    pub fn to_term(&self) -> Term {
        let mut it = self
            .summands
            .iter()
            .map(|(a, t)| Term::prefix(Action::visible(a.clone()), t.clone()));
        match it.next() {
            None => Term::Nil,
            Some(first) => it.fold(first, Term::ext_choice),
        }
    }
}

/// Builds the left-nested general external choice of `terms` (`0` if empty).
pub fn ext_choice_all(terms: impl IntoIterator<Item = Term>) -> Term {
    let mut it = terms.into_iter();
    match it.next() {
        None => Term::Nil,
        Some(first) => it.fold(first, Term::ext_choice),
    }
}

/// Builds the left-nested general disjunction of `terms`; requires at least one.
pub fn disj_all(terms: impl IntoIterator<Item = Term>) -> Term {
    let mut it = terms.into_iter();
    let first = it.next().expect("general disjunction needs at least one disjunct");
    it.fold(first, Term::disj)
}

/// JSON encoding of [`Term`]: constructors one-to-one, discriminated by `kind`.
pub mod json {
    use super::{Action, SyncSet, Term};
    use serde::{Deserialize, Serialize};

    #[derive(Serialize, Deserialize)]
    #[serde(tag = "kind", rename_all = "snake_case")]
    pub enum TermJson {
        Nil,
        Bottom,
        Prefix { action: String, body: Box<TermJson> },
        ExtChoice { left: Box<TermJson>, right: Box<TermJson> },
        Conj { left: Box<TermJson>, right: Box<TermJson> },
        Disj { left: Box<TermJson>, right: Box<TermJson> },
        Par { left: Box<TermJson>, right: Box<TermJson>, sync: Vec<String> },
    }

    impl From<&Term> for TermJson {
        fn from(t: &Term) -> TermJson {
            match t {
                Term::Nil => TermJson::Nil,
                Term::Bottom => TermJson::Bottom,
                Term::Prefix(a, b) => TermJson::Prefix {
                    action: a.to_string(),
                    body: Box::new(TermJson::from(&**b)),
                },
                Term::ExtChoice(l, r) => TermJson::ExtChoice {
                    left: Box::new(TermJson::from(&**l)),
                    right: Box::new(TermJson::from(&**r)),
                },
                Term::Conj(l, r) => TermJson::Conj {
                    left: Box::new(TermJson::from(&**l)),
                    right: Box::new(TermJson::from(&**r)),
                },
                Term::Disj(l, r) => TermJson::Disj {
                    left: Box::new(TermJson::from(&**l)),
                    right: Box::new(TermJson::from(&**r)),
                },
                Term::Par(l, r, sync) => TermJson::Par {
                    left: Box::new(TermJson::from(&**l)),
                    right: Box::new(TermJson::from(&**r)),
                    sync: sync.iter().cloned().collect(),
                },
            }
        }
    }

    impl TryFrom<TermJson> for Term {
        type Error = String;

        fn try_from(j: TermJson) -> Result<Term, String> {
            fn action(s: &str) -> Result<Action, String> {
                if s == "tau" {
                    Ok(Action::Tau)
                } else if s.is_empty() {
                    Err("empty action name".into())
                } else {
                    Ok(Action::Visible(s.to_string()))
                }
            }
            Ok(match j {
                TermJson::Nil => Term::Nil,
                TermJson::Bottom => Term::Bottom,
                TermJson::Prefix { action: a, body } => {
                    Term::prefix(action(&a)?, Term::try_from(*body)?)
                }
                TermJson::ExtChoice { left, right } => {
                    Term::ext_choice(Term::try_from(*left)?, Term::try_from(*right)?)
                }
                TermJson::Conj { left, right } => {
                    Term::conj(Term::try_from(*left)?, Term::try_from(*right)?)
                }
                TermJson::Disj { left, right } => {
                    Term::disj(Term::try_from(*left)?, Term::try_from(*right)?)
                }
                TermJson::Par { left, right, sync } => {
                    if sync.iter().any(|a| a == "tau") {
                        return Err("`tau` is not allowed in a sync set".into());
                    }
                    let set: SyncSet = sync.into_iter().collect();
                    Term::par(Term::try_from(*left)?, Term::try_from(*right)?, set)
                }
            })
        }
    }
}

#[cfg(test)]
pub(crate) mod tests;
