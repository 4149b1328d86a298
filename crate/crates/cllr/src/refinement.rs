//! The weak ready-simulation preorder between terms.
//!
//! `refines(p, q)` holds when every stable, inconsistency-avoiding internal
//! descendant of `p` is stably ready-simulated by one of `q`. A stable
//! ready simulation relation pairs stable states such that consistency is
//! preserved right-to-left, ready sets agree on consistent left states,
//! and weak visible steps of the left state are matched by the right one.
//!
//! The largest such relation over two transition systems is computed as a
//! greatest fixpoint: seed with every stable pair that satisfies the local
//! conditions, then delete pairs whose weak steps can no longer be
//! matched. Deletion is monotone, so the result does not depend on the
//! sweep order; determinism of the verdicts is asserted in tests.
//!
//! On a negative verdict a [`RefusalWitness`] is produced: a short trail
//! of weak steps on the left side leading to a pair that violates one of
//! the simulation clauses directly.

use crate::semantics::{Lts, LtsError};
use crate::syntax::{Action, Term};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// A set of state pairs witnessing stable ready simulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimRelation {
    pub pairs: BTreeSet<(Term, Term)>,
}

impl SimRelation {
    pub fn contains(&self, p: &Term, q: &Term) -> bool {
        self.pairs.contains(&(p.clone(), q.clone()))
    }

    /// Checks the simulation conditions pointwise over the member LTS
    /// data; returns the first violated clause.
    pub fn validate(&self, l1: &Lts, l2: &Lts) -> Result<(), String> {
        let look = |t: &Term| -> Result<(bool, bool, BTreeSet<Action>), String> {
            for l in [l1, l2] {
                if let Some(id) = l.state_id(t) {
                    return Ok((l.is_stable_id(id), l.is_inconsistent_id(id), l.ready_set_id(id)));
                }
            }
            Err(format!("pair member `{t}` is not a state of either LTS"))
        };
        let wact = |t: &Term, a: &str| -> Vec<Term> {
            for l in [l1, l2] {
                if l.state_id(t).is_some() {
                    return l.weak_act_stable(t, a).unwrap().into_iter().cloned().collect();
                }
            }
            vec![]
        };
        for (p, q) in &self.pairs {
            let (p_stable, p_inc, p_ready) = look(p)?;
            let (q_stable, q_inc, q_ready) = look(q)?;
            if !p_stable || !q_stable {
                return Err(format!("unstable pair ({p}, {q})"));
            }
            if !p_inc {
                if q_inc {
                    return Err(format!("consistency not preserved at ({p}, {q})"));
                }
                if p_ready != q_ready {
                    return Err(format!("ready sets differ at ({p}, {q})"));
                }
            }
            for a in p_ready.iter().filter_map(|a| a.name()) {
                for p2 in wact(p, a) {
                    if !wact(q, a).iter().any(|q2| self.contains(&p2, q2)) {
                        return Err(format!("unmatched weak {a}-step at ({p}, {q})"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Kind of simulation clause a refusal witness exhibits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WitnessKind {
    /// The left state is consistent but the right one is not.
    InconsistencyGap,
    /// The states are consistent but enable different action sets.
    ReadySetMismatch,
    /// The left state has a weak step the right state cannot take at all.
    UnmatchedWeakStep,
    /// The right term has no stable consistent descendant to match against.
    NoStableMatch,
}

/// One recorded weak step on the left-hand side of a failed query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakStep {
    pub source: Term,
    /// `None` encodes the internal (epsilon) step into a stable state.
    pub label: Option<String>,
    pub target: Term,
}

/// Explanation payload for a negative refinement verdict. Replaying the
/// trail against the two LTSs reconstructs the violated clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefusalWitness {
    pub kind: WitnessKind,
    pub path: Vec<WeakStep>,
    pub left: Term,
    pub right: Term,
    pub action: Option<String>,
}

impl RefusalWitness {
    /// Checks that every recorded step is a genuine weak step of the left
    /// LTS and that the final pair violates the stated clause.
    pub fn replay(&self, l1: &Lts, l2: &Lts) -> bool {
        let mut cur: Option<&Term> = None;
        for step in &self.path {
            if let Some(prev) = cur {
                if *prev != step.source {
                    return false;
                }
            }
            let targets: Vec<Term> = match &step.label {
                None => match l1.weak_eps_stable(&step.source) {
                    Ok(ts) => ts.into_iter().cloned().collect(),
                    Err(_) => return false,
                },
                Some(a) => match l1.weak_act_stable(&step.source, a) {
                    Ok(ts) => ts.into_iter().cloned().collect(),
                    Err(_) => return false,
                },
            };
            if !targets.contains(&step.target) {
                return false;
            }
            cur = Some(&step.target);
        }
        if let Some(last) = cur {
            if *last != self.left {
                return false;
            }
        }
        let stats = |l: &Lts, t: &Term| {
            l.state_id(t).map(|id| (l.is_inconsistent_id(id), l.ready_set_id(id)))
        };
        let left_in_l1 = stats(l1, &self.left);
        match self.kind {
            WitnessKind::InconsistencyGap => {
                let Some((li, _)) = left_in_l1 else { return false };
                let Some((ri, _)) = stats(l2, &self.right) else { return false };
                !li && ri
            }
            WitnessKind::ReadySetMismatch => {
                let Some((li, lr)) = left_in_l1 else { return false };
                let Some((ri, rr)) = stats(l2, &self.right) else { return false };
                !li && !ri && lr != rr
            }
            WitnessKind::UnmatchedWeakStep => {
                let Some(a) = &self.action else { return false };
                let lw = match l1.weak_act_stable(&self.left, a) {
                    Ok(ts) => ts,
                    Err(_) => return false,
                };
                let rw = match l2.weak_act_stable(&self.right, a) {
                    Ok(ts) => ts,
                    Err(_) => return false,
                };
                !lw.is_empty() && rw.is_empty()
            }
            WitnessKind::NoStableMatch => match l2.state_id(&self.right) {
                Some(_) => l2.weak_eps_stable(&self.right).unwrap().is_empty(),
                None => false,
            },
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let path: Vec<serde_json::Value> = self
            .path
            .iter()
            .map(|s| {
                serde_json::json!({
                    "from": s.source.to_string(),
                    "label": s.label.clone().unwrap_or_else(|| "eps".to_string()),
                    "to": s.target.to_string(),
                })
            })
            .collect();
        let mut detail = serde_json::json!({
            "left": self.left.to_string(),
            "right": self.right.to_string(),
        });
        if let Some(a) = &self.action {
            detail["action"] = serde_json::json!(a);
        }
        serde_json::json!({
            "kind": match self.kind {
                WitnessKind::InconsistencyGap => "InconsistencyGap",
                WitnessKind::ReadySetMismatch => "ReadySetMismatch",
                WitnessKind::UnmatchedWeakStep => "UnmatchedWeakStep",
                WitnessKind::NoStableMatch => "NoStableMatch",
            },
            "path": path,
            "detail": detail,
        })
    }
}

/// Outcome of a refinement query.
#[derive(Debug, Clone)]
pub struct Refinement {
    pub holds: bool,
    pub witness: Option<RefusalWitness>,
}

/// Merged view over the states of both LTSs, with the largest stable
/// ready simulation between them.
pub(crate) struct SimContext {
    /// Stable state data keyed by term: (inconsistent, ready set, weak act).
    info: HashMap<Term, StableInfo>,
    /// Surviving pairs, keyed by term pair.
    alive: BTreeSet<(Term, Term)>,
    /// Death records for deleted candidate pairs, in deletion order.
    reasons: HashMap<(Term, Term), Death>,
}

struct StableInfo {
    inconsistent: bool,
    ready: BTreeSet<Action>,
    weak_act: BTreeMap<String, Vec<Term>>,
}

#[derive(Clone)]
enum Death {
    /// Failed the local seed conditions.
    Local(WitnessKind),
    /// Deleted in round `stamp`: the weak `action`-step into `target` had
    /// no surviving match.
    Unmatched { stamp: usize, action: String, target: Term },
}

impl SimContext {
    pub(crate) fn new(ltss: &[&Lts]) -> SimContext {
        let mut info: HashMap<Term, StableInfo> = HashMap::new();
        for l in ltss {
            for id in 0..l.state_count() {
                if !l.is_stable_id(id) {
                    continue;
                }
                let term = l.term_of(id).clone();
                info.entry(term).or_insert_with(|| StableInfo {
                    inconsistent: l.is_inconsistent_id(id),
                    ready: l.ready_set_id(id),
                    weak_act: l
                        .weak_act_stable_ids(id)
                        .iter()
                        .map(|(a, ids)| {
                            (a.clone(), ids.iter().map(|&i| l.term_of(i).clone()).collect())
                        })
                        .collect(),
                });
            }
        }
        let mut ctx = SimContext { info, alive: BTreeSet::new(), reasons: HashMap::new() };
        ctx.run();
        ctx
    }

    fn run(&mut self) {
        // Seed with every stable pair satisfying the local clauses. Pairs
        // whose left state is inconsistent have no weak steps and are
        // never deleted.
        let terms: Vec<&Term> = {
            let mut v: Vec<&Term> = self.info.keys().collect();
            v.sort();
            v
        };
        let mut alive = BTreeSet::new();
        for &p in &terms {
            let pi = &self.info[p];
            for &q in &terms {
                let qi = &self.info[q];
                if pi.inconsistent {
                    alive.insert((p.clone(), q.clone()));
                } else if qi.inconsistent {
                    self.reasons.insert(
                        (p.clone(), q.clone()),
                        Death::Local(WitnessKind::InconsistencyGap),
                    );
                } else if pi.ready != qi.ready {
                    self.reasons.insert(
                        (p.clone(), q.clone()),
                        Death::Local(WitnessKind::ReadySetMismatch),
                    );
                } else {
                    alive.insert((p.clone(), q.clone()));
                }
            }
        }
        // Greatest fixpoint by repeated sweeps in canonical order.
        let mut stamp = 0;
        loop {
            let mut deleted = Vec::new();
            for (p, q) in &alive {
                if let Some((action, target)) = self.find_unmatched(p, q, &alive) {
                    stamp += 1;
                    deleted.push((p.clone(), q.clone()));
                    self.reasons.insert(
                        (p.clone(), q.clone()),
                        Death::Unmatched { stamp, action, target },
                    );
                }
            }
            if deleted.is_empty() {
                break;
            }
            for pair in deleted {
                alive.remove(&pair);
            }
        }
        self.alive = alive;
    }

    fn find_unmatched(
        &self,
        p: &Term,
        q: &Term,
        alive: &BTreeSet<(Term, Term)>,
    ) -> Option<(String, Term)> {
        let pi = &self.info[p];
        if pi.inconsistent {
            return None;
        }
        let qi = &self.info[q];
        for (a, targets) in &pi.weak_act {
            let q_targets = qi.weak_act.get(a);
            for p2 in targets {
                let matched = q_targets.map_or(false, |qs| {
                    qs.iter().any(|q2| alive.contains(&(p2.clone(), q2.clone())))
                });
                if !matched {
                    return Some((a.clone(), p2.clone()));
                }
            }
        }
        None
    }

    pub(crate) fn in_sim(&self, p: &Term, q: &Term) -> bool {
        self.alive.contains(&(p.clone(), q.clone()))
    }

    fn death(&self, p: &Term, q: &Term) -> Option<&Death> {
        self.reasons.get(&(p.clone(), q.clone()))
    }

    /// Stamp-ordered explanation chain for a dead pair.
    fn explain(&self, p: &Term, q: &Term, path: &mut Vec<WeakStep>) -> RefusalWitness {
        match self.death(p, q).cloned() {
            None | Some(Death::Local(WitnessKind::InconsistencyGap)) => RefusalWitness {
                kind: WitnessKind::InconsistencyGap,
                path: path.clone(),
                left: p.clone(),
                right: q.clone(),
                action: None,
            },
            Some(Death::Local(kind)) => RefusalWitness {
                kind,
                path: path.clone(),
                left: p.clone(),
                right: q.clone(),
                action: None,
            },
            Some(Death::Unmatched { action, target, .. }) => {
                path.push(WeakStep {
                    source: p.clone(),
                    label: Some(action.clone()),
                    target: target.clone(),
                });
                let candidates = self.info[q].weak_act.get(&action).cloned().unwrap_or_default();
                if candidates.is_empty() {
                    return RefusalWitness {
                        kind: WitnessKind::UnmatchedWeakStep,
                        path: path.clone(),
                        left: p.clone(),
                        right: q.clone(),
                        action: Some(action),
                    };
                }
                // Every candidate pair is dead; follow the earliest death
                // so the chain terminates and stays shallow.
                let next = candidates
                    .iter()
                    .min_by_key(|q2| match self.death(&target, q2) {
                        Some(Death::Local(_)) | None => (0, (*q2).clone()),
                        Some(Death::Unmatched { stamp, .. }) => (*stamp, (*q2).clone()),
                    })
                    .unwrap();
                self.explain(&target, next, path)
            }
        }
    }
}

/// The largest stable ready simulation over the union of the two state
/// spaces, restricted to stable states.
pub fn largest_stable_sim(l1: &Lts, l2: &Lts) -> SimRelation {
    let ctx = SimContext::new(&[l1, l2]);
    SimRelation { pairs: ctx.alive }
}

/// Decides whether `p` is stably ready-simulated by `q` (both must be
/// stable states of their LTSs).
pub fn stable_sim(l1: &Lts, l2: &Lts, p: &Term, q: &Term) -> bool {
    SimContext::new(&[l1, l2]).in_sim(p, q)
}

pub(crate) fn refines_in_ctx(ctx: &SimContext, l1: &Lts, l2: &Lts, p: &Term, q: &Term) -> Refinement {
    let p_stables: Vec<Term> =
        l1.weak_eps_stable(p).expect("root is a state").into_iter().cloned().collect();
    let q_stables: Vec<Term> =
        l2.weak_eps_stable(q).expect("root is a state").into_iter().cloned().collect();
    for p2 in &p_stables {
        if q_stables.iter().any(|q2| ctx.in_sim(p2, q2)) {
            continue;
        }
        let mut path = vec![WeakStep { source: p.clone(), label: None, target: p2.clone() }];
        if q_stables.is_empty() {
            return Refinement {
                holds: false,
                witness: Some(RefusalWitness {
                    kind: WitnessKind::NoStableMatch,
                    path,
                    left: p2.clone(),
                    right: q.clone(),
                    action: None,
                }),
            };
        }
        // All candidate pairs are dead; explain the earliest death.
        let q2 = q_stables
            .iter()
            .min_by_key(|q2| match ctx.death(p2, q2) {
                Some(Death::Local(_)) | None => (0, (*q2).clone()),
                Some(Death::Unmatched { stamp, .. }) => (*stamp, (*q2).clone()),
            })
            .unwrap();
        return Refinement { holds: false, witness: Some(ctx.explain(p2, q2, &mut path)) };
    }
    Refinement { holds: true, witness: None }
}

/// Refinement between prebuilt LTSs.
pub fn refines_lts(l1: &Lts, l2: &Lts) -> Refinement {
    let ctx = SimContext::new(&[l1, l2]);
    refines_in_ctx(&ctx, l1, l2, l1.root(), l2.root())
}

/// Decides the ready-simulation preorder between two terms.
pub fn refines(p: &Term, q: &Term) -> Result<Refinement, LtsError> {
    let l1 = Lts::build(p)?;
    let l2 = Lts::build(q)?;
    Ok(refines_lts(&l1, &l2))
}

/// Kernel of the preorder: refinement in both directions.
pub fn rs_equiv(p: &Term, q: &Term) -> Result<bool, LtsError> {
    let l1 = Lts::build(p)?;
    let l2 = Lts::build(q)?;
    let ctx = SimContext::new(&[&l1, &l2]);
    Ok(refines_in_ctx(&ctx, &l1, &l2, p, q).holds
        && refines_in_ctx(&ctx, &l2, &l1, q, p).holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse;

    fn t(s: &str) -> Term {
        parse(s).expect(s)
    }

    fn refines_ok(p: &str, q: &str) -> bool {
        refines(&t(p), &t(q)).unwrap().holds
    }

    #[test]
    fn identity_is_a_stable_simulation() {
        let l = Lts::build(&t("a.0")).unwrap();
        let sim = largest_stable_sim(&l, &l);
        assert!(sim.contains(&t("a.0"), &t("a.0")));
        assert!(sim.contains(&Term::Nil, &Term::Nil));
        sim.validate(&l, &l).unwrap();
    }

    #[test]
    fn ready_set_mismatch_is_excluded() {
        let l1 = Lts::build(&t("a.0")).unwrap();
        let l2 = Lts::build(&t("a.0 [] b.0")).unwrap();
        let sim = largest_stable_sim(&l1, &l2);
        assert!(!sim.contains(&t("a.0"), &t("a.0 [] b.0")));
        sim.validate(&l1, &l2).unwrap();
    }

    #[test]
    fn conjunction_projects_onto_components() {
        for (p, q) in [("a.0", "b.0"), ("a.b.0 [] c.0", "a.0"), ("0", "0")] {
            let conj = Term::conj(t(p), t(q));
            let l1 = Lts::build(&conj).unwrap();
            let l2 = Lts::build(&t(p)).unwrap();
            let sim = largest_stable_sim(&l1, &l2);
            assert!(sim.contains(&conj, &t(p)), "({p}) /\\ ({q}) vs {p}");
        }
    }

    #[test]
    fn refines_examples() {
        assert!(refines_ok("bot", "0"));
        assert!(refines_ok("bot", "a.bot [] a.0"));
        assert!(refines_ok("a.0", "a.0 \\/ b.0"));
        assert!(!refines_ok("a.(bot \\/ 0)", "a.bot [] a.0"));
        assert!(!refines_ok("tau.(a.0 \\/ b.0)", "tau.a.0 [] tau.b.0"));
    }

    #[test]
    fn rs_equiv_examples() {
        assert!(rs_equiv(&t("tau.a.0"), &t("a.0")).unwrap());
        assert!(rs_equiv(&t("a.0 [] b.0"), &t("b.0 [] a.0")).unwrap());
        assert!(!rs_equiv(&t("a.0"), &t("b.0")).unwrap());
    }

    #[test]
    fn witnesses_replay() {
        for (p, q) in [
            ("a.(bot \\/ 0)", "a.bot [] a.0"),
            ("tau.(a.0 \\/ b.0)", "tau.a.0 [] tau.b.0"),
            ("a.0", "b.0"),
            ("a.b.0", "a.c.0"),
            ("a.0", "bot"),
        ] {
            let l1 = Lts::build(&t(p)).unwrap();
            let l2 = Lts::build(&t(q)).unwrap();
            let r = refines_lts(&l1, &l2);
            assert!(!r.holds, "{p} vs {q}");
            let w = r.witness.expect("negative verdicts carry a witness");
            assert!(w.replay(&l1, &l2), "witness for {p} vs {q} must replay: {w:?}");
        }
    }

    #[test]
    fn largest_sim_is_itself_a_stable_ready_simulation() {
        for (p, q) in [
            ("a.(bot \\/ 0)", "a.bot [] a.0"),
            ("tau.(a.0 \\/ b.0) /\\ a.0", "a.b.0 |[b]| b.0"),
            ("a.0 \\/ (b.0 [] tau.c.0)", "bot \\/ tau.tau.a.0"),
        ] {
            let l1 = Lts::build(&t(p)).unwrap();
            let l2 = Lts::build(&t(q)).unwrap();
            largest_stable_sim(&l1, &l2).validate(&l1, &l2).unwrap();
        }
    }
}
