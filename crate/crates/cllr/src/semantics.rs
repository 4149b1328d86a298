//! Operational semantics: the transition relation, the inconsistency
//! predicate `F` and weak (inconsistency-avoiding) transitions.
//!
//! Transitions are computed by label stratification: the `tau`-transitions
//! of a term depend only on the `tau`-transitions of its subterms, so they
//! are produced by one structural pass; visible transitions then consult
//! the finished `tau`-sets to resolve the negative premises of the choice
//! and parallel rules. On the finite fragment this yields the unique
//! stable transition model directly.
//!
//! The predicate `F` marks unimplementable states. It is the least set
//! closed under: `bot` is inconsistent; a prefix is inconsistent iff its
//! body is; a disjunction is inconsistent when both disjuncts are; choice,
//! parallel and conjunction are inconsistent when either component is; a
//! stable conjunction whose conjuncts have distinct ready sets is
//! inconsistent; a conjunction is inconsistent when it has a transition
//! label all of whose targets are inconsistent, or when all its stable
//! internal descendants are. Because some of these rules refer to the
//! component terms of a state (which need not be reachable states
//! themselves), the fixpoint runs over the closure of the reachable graph
//! under immediate components.

use crate::syntax::{Action, Term};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::Arc;
use thiserror::Error;

/// Default bound on the number of stored states per LTS build.
pub const DEFAULT_STATE_BOUND: usize = 100_000;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LtsError {
    /// The reachable state space exceeded the configured bound.
    #[error("state bound exceeded: more than {bound} states reachable")]
    StateBound { bound: usize },
    /// A query named a term that is not a state of this LTS.
    #[error("unknown state: {0}")]
    UnknownState(String),
}

/// One-step transitions of a term under the stratified rules.
///
/// The result is sorted by label and target, so iteration order is
/// deterministic.
pub fn step(t: &Term) -> Vec<(Action, Term)> {
    let mut out: Vec<(Action, Term)> = tau_steps(t).into_iter().map(|q| (Action::Tau, q)).collect();
    for (a, q) in visible_steps(t) {
        out.push((Action::Visible(a), q));
    }
    out.sort();
    out.dedup();
    out
}

/// True iff the term has no outgoing `tau`-transition.
pub fn is_stable(t: &Term) -> bool {
    match t {
        Term::Nil | Term::Bottom => true,
        Term::Prefix(a, _) => !a.is_tau(),
        Term::Disj(_, _) => false,
        Term::ExtChoice(l, r) | Term::Conj(l, r) | Term::Par(l, r, _) => {
            is_stable(l) && is_stable(r)
        }
    }
}

fn tau_steps(t: &Term) -> Vec<Term> {
    match t {
        Term::Nil | Term::Bottom => vec![],
        Term::Prefix(Action::Tau, body) => vec![(**body).clone()],
        Term::Prefix(_, _) => vec![],
        // Internal moves of either operand preserve the composition.
        Term::ExtChoice(l, r) => compose_tau(l, r, |x, y| Term::ExtChoice(x, y)),
        Term::Conj(l, r) => compose_tau(l, r, |x, y| Term::Conj(x, y)),
        Term::Par(l, r, sync) => {
            compose_tau(l, r, |x, y| Term::Par(x, y, sync.clone()))
        }
        // Disjunction is internal choice.
        Term::Disj(l, r) => vec![(**l).clone(), (**r).clone()],
    }
}

fn compose_tau(
    l: &Arc<Term>,
    r: &Arc<Term>,
    mk: impl Fn(Arc<Term>, Arc<Term>) -> Term,
) -> Vec<Term> {
    let mut out = Vec::new();
    for l2 in tau_steps(l) {
        out.push(mk(Arc::new(l2), r.clone()));
    }
    for r2 in tau_steps(r) {
        out.push(mk(l.clone(), Arc::new(r2)));
    }
    out
}

fn visible_steps(t: &Term) -> Vec<(String, Term)> {
    match t {
        Term::Nil | Term::Bottom | Term::Disj(_, _) => vec![],
        Term::Prefix(Action::Tau, _) => vec![],
        Term::Prefix(Action::Visible(a), body) => vec![(a.clone(), (**body).clone())],
        Term::ExtChoice(l, r) => {
            // A side may resolve the choice only while the other side has
            // no pending internal move.
            let mut out = Vec::new();
            if is_stable(r) {
                out.extend(visible_steps(l));
            }
            if is_stable(l) {
                out.extend(visible_steps(r));
            }
            out
        }
        Term::Conj(l, r) => {
            // Conjunction is a synchronous product on visible actions.
            let rs = visible_steps(r);
            let mut out = Vec::new();
            for (a, l2) in visible_steps(l) {
                for (b, r2) in &rs {
                    if a == *b {
                        out.push((a.clone(), Term::conj(l2.clone(), r2.clone())));
                    }
                }
            }
            out
        }
        Term::Par(l, r, sync) => {
            let ls = visible_steps(l);
            let rs = visible_steps(r);
            let mut out = Vec::new();
            if is_stable(r) {
                for (a, l2) in &ls {
                    if !sync.contains(a) {
                        out.push((a.clone(), Term::Par(Arc::new(l2.clone()), r.clone(), sync.clone())));
                    }
                }
            }
            if is_stable(l) {
                for (a, r2) in &rs {
                    if !sync.contains(a) {
                        out.push((a.clone(), Term::Par(l.clone(), Arc::new(r2.clone()), sync.clone())));
                    }
                }
            }
            for (a, l2) in &ls {
                if sync.contains(a) {
                    for (b, r2) in &rs {
                        if a == b {
                            out.push((a.clone(), Term::par(l2.clone(), r2.clone(), sync.clone())));
                        }
                    }
                }
            }
            out
        }
    }
}

/// Internal graph over the closure of the reachable states under immediate
/// components. Indices into `terms` identify nodes.
struct Graph {
    terms: Vec<Term>,
    index: HashMap<Term, usize>,
    steps: Vec<Vec<(Action, usize)>>,
    stable: Vec<bool>,
    inconsistent: Vec<bool>,
}

impl Graph {
    fn build(root: &Term, bound: usize) -> Result<Graph, LtsError> {
        let mut terms = Vec::new();
        let mut index = HashMap::new();
        let mut queue = VecDeque::new();
        let add = |t: &Term, terms: &mut Vec<Term>, index: &mut HashMap<Term, usize>,
                       queue: &mut VecDeque<usize>|
         -> usize {
            if let Some(&i) = index.get(t) {
                return i;
            }
            let i = terms.len();
            terms.push(t.clone());
            index.insert(t.clone(), i);
            queue.push_back(i);
            i
        };
        add(root, &mut terms, &mut index, &mut queue);
        let mut steps: Vec<Option<Vec<(Action, usize)>>> = Vec::new();
        while let Some(i) = queue.pop_front() {
            if terms.len() > bound {
                return Err(LtsError::StateBound { bound });
            }
            if steps.len() <= i {
                steps.resize_with(terms.len(), || None);
            }
            let t = terms[i].clone();
            let succ: Vec<(Action, usize)> = step(&t)
                .into_iter()
                .map(|(a, q)| (a, add(&q, &mut terms, &mut index, &mut queue)))
                .collect();
            steps[i] = Some(succ);
            // Close under immediate components: the predicate rules refer
            // to the inconsistency and ready sets of component terms.
            match &t {
                Term::Nil | Term::Bottom => {}
                Term::Prefix(_, b) => {
                    add(b, &mut terms, &mut index, &mut queue);
                }
                Term::ExtChoice(l, r) | Term::Conj(l, r) | Term::Disj(l, r) | Term::Par(l, r, _) => {
                    add(l, &mut terms, &mut index, &mut queue);
                    add(r, &mut terms, &mut index, &mut queue);
                }
            }
        }
        let steps: Vec<Vec<(Action, usize)>> = steps.into_iter().map(Option::unwrap).collect();
        debug_assert_eq!(steps.len(), terms.len());
        let stable: Vec<bool> = terms.iter().map(is_stable).collect();
        let mut g = Graph { terms, index, steps, stable, inconsistent: vec![] };
        g.inconsistent = g.compute_inconsistent();
        Ok(g)
    }

    /// Stable descendants via internal steps, ignoring inconsistency.
    fn stable_tau_descendants(&self, from: usize) -> Vec<usize> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![from];
        let mut out = Vec::new();
        while let Some(i) = stack.pop() {
            if !seen.insert(i) {
                continue;
            }
            if self.stable[i] {
                out.push(i);
                continue;
            }
            for (a, j) in &self.steps[i] {
                if a.is_tau() {
                    stack.push(*j);
                }
            }
        }
        out
    }

    /// Least fixpoint of the predicate rules over the closed graph.
    fn compute_inconsistent(&self) -> Vec<bool> {
        let n = self.terms.len();
        let mut f = vec![false; n];
        loop {
            let mut changed = false;
            for i in 0..n {
                if f[i] {
                    continue;
                }
                if self.derives_inconsistent(i, &f) {
                    f[i] = true;
                    changed = true;
                }
            }
            if !changed {
                return f;
            }
        }
    }

    fn derives_inconsistent(&self, i: usize, f: &[bool]) -> bool {
        let idx = |t: &Term| self.index[t];
        match &self.terms[i] {
            Term::Nil => false,
            Term::Bottom => true,
            Term::Prefix(_, b) => f[idx(b)],
            Term::Disj(l, r) => f[idx(l)] && f[idx(r)],
            Term::ExtChoice(l, r) | Term::Par(l, r, _) => f[idx(l)] || f[idx(r)],
            Term::Conj(l, r) => {
                let (li, ri) = (idx(l), idx(r));
                if f[li] || f[ri] {
                    return true;
                }
                // Stable conjunction with mismatched ready sets.
                if self.stable[li] && self.stable[ri] {
                    let ready = |k: usize| -> BTreeSet<&Action> {
                        self.steps[k].iter().map(|(a, _)| a).collect()
                    };
                    if ready(li) != ready(ri) {
                        return true;
                    }
                }
                // Some enabled label with all its targets inconsistent.
                let mut by_label: BTreeMap<&Action, bool> = BTreeMap::new();
                for (a, j) in &self.steps[i] {
                    *by_label.entry(a).or_insert(true) &= f[*j];
                }
                if by_label.values().any(|all| *all) {
                    return true;
                }
                // All stable internal descendants inconsistent (vacuously
                // true with none; the finite fragment always has some).
                self.stable_tau_descendants(i).iter().all(|&j| f[j])
            }
        }
    }
}

/// The reachable transition system of a term, with stability flags, the
/// inconsistency set and precomputed weak-transition data.
///
/// States are terms under structural equality; state ids are BFS discovery
/// order from the root, so all derived output is deterministic.
#[derive(Debug, Clone)]
pub struct Lts {
    root: Term,
    states: Vec<Term>,
    index: HashMap<Term, usize>,
    transitions: Vec<Vec<(Action, usize)>>,
    stable: Vec<bool>,
    inconsistent: Vec<bool>,
    /// Inconsistency verdicts for auxiliary closure entries (component
    /// terms that are not reachable states).
    closure_inconsistent: HashMap<Term, bool>,
    /// For each state: the stable, inconsistency-avoiding internal
    /// descendants (endpoints included in the avoidance requirement).
    weak_eps: Vec<Vec<usize>>,
    /// For each stable consistent state: visible weak steps into stable
    /// consistent states.
    weak_act: Vec<BTreeMap<String, Vec<usize>>>,
}

impl Lts {
    /// Builds the LTS reachable from `root` with the default state bound.
    pub fn build(root: &Term) -> Result<Lts, LtsError> {
        Lts::build_bounded(root, DEFAULT_STATE_BOUND)
    }

    pub fn build_bounded(root: &Term, bound: usize) -> Result<Lts, LtsError> {
        let g = Graph::build(root, bound)?;
        // Reachable subset in BFS order.
        let mut order: Vec<usize> = Vec::new();
        let mut pos: HashMap<usize, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        let root_g = g.index[root];
        pos.insert(root_g, 0);
        order.push(root_g);
        queue.push_back(root_g);
        while let Some(i) = queue.pop_front() {
            for (_, j) in &g.steps[i] {
                if !pos.contains_key(j) {
                    pos.insert(*j, order.len());
                    order.push(*j);
                    queue.push_back(*j);
                }
            }
        }
        let states: Vec<Term> = order.iter().map(|&i| g.terms[i].clone()).collect();
        let index: HashMap<Term, usize> =
            states.iter().enumerate().map(|(k, t)| (t.clone(), k)).collect();
        let transitions: Vec<Vec<(Action, usize)>> = order
            .iter()
            .map(|&i| g.steps[i].iter().map(|(a, j)| (a.clone(), pos[j])).collect())
            .collect();
        let stable: Vec<bool> = order.iter().map(|&i| g.stable[i]).collect();
        let inconsistent: Vec<bool> = order.iter().map(|&i| g.inconsistent[i]).collect();
        let closure_inconsistent: HashMap<Term, bool> = g
            .terms
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), g.inconsistent[i]))
            .collect();

        let mut lts = Lts {
            root: root.clone(),
            states,
            index,
            transitions,
            stable,
            inconsistent,
            closure_inconsistent,
            weak_eps: vec![],
            weak_act: vec![],
        };
        lts.weak_eps = (0..lts.states.len()).map(|i| lts.weak_eps_ids(i)).collect();
        lts.weak_act = (0..lts.states.len()).map(|i| lts.weak_act_ids(i)).collect();
        Ok(lts)
    }

    pub fn root(&self) -> &Term {
        &self.root
    }

    pub fn states(&self) -> &[Term] {
        &self.states
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn state_id(&self, t: &Term) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn term_of(&self, id: usize) -> &Term {
        &self.states[id]
    }

    pub fn transitions_of(&self, id: usize) -> &[(Action, usize)] {
        &self.transitions[id]
    }

    /// All transitions as (source, label, target) triples in id order.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, &Action, usize)> {
        self.transitions
            .iter()
            .enumerate()
            .flat_map(|(i, ts)| ts.iter().map(move |(a, j)| (i, a, *j)))
    }

    pub fn is_stable_id(&self, id: usize) -> bool {
        self.stable[id]
    }

    pub fn is_inconsistent_id(&self, id: usize) -> bool {
        self.inconsistent[id]
    }

    /// Inconsistency of the root term.
    pub fn root_inconsistent(&self) -> bool {
        self.inconsistent[0]
    }

    /// Inconsistency verdict for any term recorded during the build: all
    /// reachable states plus the component closure used by the predicate
    /// rules.
    pub fn inconsistent_in_closure(&self, t: &Term) -> Option<bool> {
        self.closure_inconsistent.get(t).copied()
    }

    fn id_of(&self, t: &Term) -> Result<usize, LtsError> {
        self.state_id(t).ok_or_else(|| LtsError::UnknownState(t.to_string()))
    }

    /// The set of labels of outgoing transitions of `p`.
    pub fn ready_set(&self, p: &Term) -> Result<BTreeSet<Action>, LtsError> {
        let id = self.id_of(p)?;
        Ok(self.ready_set_id(id))
    }

    pub fn ready_set_id(&self, id: usize) -> BTreeSet<Action> {
        self.transitions[id].iter().map(|(a, _)| a.clone()).collect()
    }

    fn weak_eps_ids(&self, from: usize) -> Vec<usize> {
        if self.inconsistent[from] {
            return vec![];
        }
        let mut seen = BTreeSet::new();
        let mut stack = vec![from];
        let mut out = BTreeSet::new();
        while let Some(i) = stack.pop() {
            if !seen.insert(i) {
                continue;
            }
            if self.stable[i] {
                out.insert(i);
            }
            for (a, j) in &self.transitions[i] {
                if a.is_tau() && !self.inconsistent[*j] {
                    stack.push(*j);
                }
            }
        }
        out.into_iter().collect()
    }

    fn weak_act_ids(&self, from: usize) -> BTreeMap<String, Vec<usize>> {
        let mut out: BTreeMap<String, BTreeSet<usize>> = BTreeMap::new();
        if self.inconsistent[from] {
            return BTreeMap::new();
        }
        // Consistent internal closure of `from`, stable or not.
        let mut seen = BTreeSet::new();
        let mut stack = vec![from];
        while let Some(i) = stack.pop() {
            if !seen.insert(i) {
                continue;
            }
            for (a, j) in &self.transitions[i] {
                match a {
                    Action::Tau => {
                        if !self.inconsistent[*j] {
                            stack.push(*j);
                        }
                    }
                    Action::Visible(name) => {
                        if !self.inconsistent[*j] {
                            out.entry(name.clone())
                                .or_default()
                                .extend(self.weak_eps[*j].iter().copied());
                        }
                    }
                }
            }
        }
        out.into_iter().map(|(a, s)| (a, s.into_iter().collect())).collect()
    }

    /// Stable states reachable from `p` by an inconsistency-avoiding
    /// internal path; empty when `p` is inconsistent.
    pub fn weak_eps_stable(&self, p: &Term) -> Result<Vec<&Term>, LtsError> {
        let id = self.id_of(p)?;
        Ok(self.weak_eps[id].iter().map(|&i| &self.states[i]).collect())
    }

    pub fn weak_eps_stable_ids(&self, id: usize) -> &[usize] {
        &self.weak_eps[id]
    }

    /// Stable states reachable from `p` by an inconsistency-avoiding weak
    /// `a`-step.
    pub fn weak_act_stable(&self, p: &Term, a: &str) -> Result<Vec<&Term>, LtsError> {
        let id = self.id_of(p)?;
        Ok(self
            .weak_act[id]
            .get(a)
            .map(|v| v.iter().map(|&i| &self.states[i]).collect())
            .unwrap_or_default())
    }

    pub fn weak_act_stable_ids(&self, id: usize) -> &BTreeMap<String, Vec<usize>> {
        &self.weak_act[id]
    }

    /// JSON export of the reachable graph.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct StateJson {
            id: usize,
            term: String,
            stable: bool,
            inconsistent: bool,
        }
        #[derive(Serialize)]
        struct TransJson {
            from: usize,
            label: String,
            to: usize,
        }
        let states: Vec<StateJson> = (0..self.states.len())
            .map(|i| StateJson {
                id: i,
                term: self.states[i].to_string(),
                stable: self.stable[i],
                inconsistent: self.inconsistent[i],
            })
            .collect();
        let transitions: Vec<TransJson> = self
            .transitions()
            .map(|(i, a, j)| TransJson { from: i, label: a.to_string(), to: j })
            .collect();
        serde_json::json!({
            "root": 0,
            "states": states,
            "transitions": transitions,
        })
    }

    /// DOT export: inconsistent states get doubled peripheries, internal
    /// edges are dashed.
    pub fn to_dot(&self) -> String {
        use std::fmt::Write;
        let mut out = String::from("digraph lts {\n  rankdir=LR;\n  node [shape=ellipse];\n");
        for i in 0..self.states.len() {
            let label = self.states[i].to_string().replace('\\', "\\\\").replace('"', "\\\"");
            let mut attrs = format!("label=\"{label}\"");
            if self.inconsistent[i] {
                attrs.push_str(",peripheries=2");
            }
            writeln!(out, "  s{i} [{attrs}];").unwrap();
        }
        for (i, a, j) in self.transitions() {
            let style = if a.is_tau() { ",style=dashed" } else { "" };
            writeln!(out, "  s{i} -> s{j} [label=\"{a}\"{style}];").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// Least fixpoint of the inconsistency rules over a closed graph, given as
/// explicit state and transition sets.
///
/// The transition set must be complete for the given states: every state's
/// one-step transitions are present and stay inside the set. Component
/// terms of the states are closed over internally.
pub fn compute_f(
    states: &BTreeSet<Term>,
    transitions: &BTreeSet<(Term, Action, Term)>,
) -> BTreeSet<Term> {
    for (src, a, tgt) in transitions {
        debug_assert!(states.contains(src) && states.contains(tgt));
        debug_assert!(step(src).contains(&(a.clone(), tgt.clone())));
    }
    let mut out = BTreeSet::new();
    let mut done: BTreeSet<&Term> = BTreeSet::new();
    for t in states {
        if !done.insert(t) {
            continue;
        }
        let g = Graph::build(t, DEFAULT_STATE_BOUND).expect("state bound exceeded");
        for s in states {
            if let Some(&i) = g.index.get(s) {
                if g.inconsistent[i] {
                    out.insert(s.clone());
                }
                done.insert(s);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse;

    fn t(s: &str) -> Term {
        parse(s).expect(s)
    }

    fn steps_of(s: &str) -> BTreeSet<(Action, Term)> {
        step(&t(s)).into_iter().collect()
    }

    #[test]
    fn step_prefix() {
        assert_eq!(steps_of("a.0"), [(Action::visible("a"), Term::Nil)].into_iter().collect());
        assert_eq!(steps_of("tau.a.0"), [(Action::Tau, t("a.0"))].into_iter().collect());
        assert_eq!(steps_of("0"), BTreeSet::new());
        assert_eq!(steps_of("bot"), BTreeSet::new());
    }

    #[test]
    fn step_choice_gives_internal_moves_precedence() {
        // The disjunction on the left makes the whole choice unstable, so
        // the visible c-move of the right side is blocked.
        assert_eq!(
            steps_of("(a.0 \\/ b.0) [] c.0"),
            [
                (Action::Tau, t("a.0 [] c.0")),
                (Action::Tau, t("b.0 [] c.0")),
            ]
            .into_iter()
            .collect()
        );
        assert_eq!(
            steps_of("a.0 [] b.0"),
            [
                (Action::visible("a"), Term::Nil),
                (Action::visible("b"), Term::Nil),
            ]
            .into_iter()
            .collect()
        );
    }

    #[test]
    fn step_conjunction_is_synchronous_product() {
        // Left derivatives on a: {b.0, c.0}; right derivatives on a: {b.0}.
        assert_eq!(
            steps_of("(a.b.0 [] a.c.0) /\\ (a.b.0 [] a.b.0)"),
            [
                (Action::visible("a"), t("b.0 /\\ b.0")),
                (Action::visible("a"), t("c.0 /\\ b.0")),
            ]
            .into_iter()
            .collect()
        );
        assert_eq!(steps_of("a.0 /\\ b.0"), BTreeSet::new());
    }

    #[test]
    fn step_parallel_sync_and_interleave() {
        assert_eq!(
            steps_of("a.0 |[a]| a.b.0"),
            [(Action::visible("a"), t("0 |[a]| b.0"))].into_iter().collect()
        );
        assert_eq!(
            steps_of("a.0 |[]| b.0"),
            [
                (Action::visible("a"), t("0 |[]| b.0")),
                (Action::visible("b"), t("a.0 |[]| 0")),
            ]
            .into_iter()
            .collect()
        );
        // Sync action with no partner deadlocks.
        assert_eq!(steps_of("a.0 |[a]| 0"), BTreeSet::new());
    }

    #[test]
    fn build_lts_examples() {
        let l = Lts::build(&Term::Nil).unwrap();
        assert_eq!(l.state_count(), 1);
        assert_eq!(l.transitions().count(), 0);
        assert!(!l.root_inconsistent());

        let l = Lts::build(&Term::Bottom).unwrap();
        assert_eq!(l.state_count(), 1);
        assert!(l.root_inconsistent());

        let l = Lts::build(&t("a.bot")).unwrap();
        assert_eq!(l.state_count(), 2);
        assert_eq!(l.transitions().count(), 1);
        assert!(l.root_inconsistent());
        assert!(l.is_inconsistent_id(1));
    }

    #[test]
    fn state_bound_is_enforced() {
        let err = Lts::build_bounded(&t("a.0 |[]| b.0"), 2).unwrap_err();
        assert!(matches!(err, LtsError::StateBound { bound: 2 }));
    }

    #[test]
    fn inconsistency_examples() {
        // Mismatched ready sets of a stable conjunction.
        let states: BTreeSet<Term> = [t("c.0 /\\ b.0")].into_iter().collect();
        let f = compute_f(&states, &BTreeSet::new());
        assert!(f.contains(&t("c.0 /\\ b.0")));

        // The root of this conjunction stays consistent: one a-derivative
        // is consistent.
        let root = t("(a.b.0 [] a.c.0) /\\ (a.b.0 [] a.b.0)");
        let l = Lts::build(&root).unwrap();
        assert!(!l.root_inconsistent());
        assert!(l.inconsistent_in_closure(&t("c.0 /\\ b.0")).unwrap());
        assert!(!l.inconsistent_in_closure(&t("b.0 /\\ b.0")).unwrap());

        assert!(!Lts::build(&t("a.(bot \\/ 0)")).unwrap().root_inconsistent());
        assert!(Lts::build(&t("a.bot [] a.0")).unwrap().root_inconsistent());
    }

    #[test]
    fn ready_sets() {
        let l = Lts::build(&t("a.0 [] b.0")).unwrap();
        assert_eq!(
            l.ready_set(&t("a.0 [] b.0")).unwrap(),
            [Action::visible("a"), Action::visible("b")].into_iter().collect()
        );
        assert_eq!(l.ready_set(&Term::Nil).unwrap(), BTreeSet::new());
        assert!(l.ready_set(&t("c.0")).is_err());

        let l = Lts::build(&t("a.0 \\/ b.0")).unwrap();
        assert_eq!(
            l.ready_set(&t("a.0 \\/ b.0")).unwrap(),
            [Action::Tau].into_iter().collect()
        );
    }

    #[test]
    fn weak_eps_examples() {
        let l = Lts::build(&t("a.0 \\/ b.0")).unwrap();
        let ws: BTreeSet<&Term> = l.weak_eps_stable(&t("a.0 \\/ b.0")).unwrap().into_iter().collect();
        assert_eq!(ws, [&t("a.0"), &t("b.0")].into_iter().collect());

        let l = Lts::build(&Term::Bottom).unwrap();
        assert!(l.weak_eps_stable(&Term::Bottom).unwrap().is_empty());

        let l = Lts::build(&t("a.0")).unwrap();
        assert_eq!(l.weak_eps_stable(&t("a.0")).unwrap(), vec![&t("a.0")]);
    }

    #[test]
    fn weak_act_examples() {
        let l = Lts::build(&t("a.(b.0 \\/ c.0)")).unwrap();
        let ws: BTreeSet<&Term> =
            l.weak_act_stable(&t("a.(b.0 \\/ c.0)"), "a").unwrap().into_iter().collect();
        assert_eq!(ws, [&t("b.0"), &t("c.0")].into_iter().collect());

        let l = Lts::build(&t("a.bot")).unwrap();
        assert!(l.weak_act_stable(&t("a.bot"), "a").unwrap().is_empty());

        let l = Lts::build(&t("a.0")).unwrap();
        assert!(l.weak_act_stable(&t("a.0"), "b").unwrap().is_empty());
    }
}
