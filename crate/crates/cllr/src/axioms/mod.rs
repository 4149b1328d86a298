//! The inequational axiom system and its proof objects.
//!
//! A [`Proof`] is a derivation tree whose leaves are axiom instances or
//! reflexivity, and whose internal nodes compose claims by transitivity or
//! rewrite under a single operator layer (the congruence rule, with one
//! child per operand). Every node carries its claim `lhs <= rhs`;
//! [`check_proof`] validates the whole tree strictly and reports the first
//! offending node.
//!
//! Equational axioms are usable in both directions; the inequational ones
//! (`DI5`, `DS1`-`DS4`, `ECC2`, `ECC3`, `EXP1`, `EXP2`) only left to
//! right. The n-ary schemas (`ECC1`-`ECC3`, `EXP1`, `EXP2`) are matched
//! against the explicit left-nested grouping, with the summand lists part
//! of the instantiation; rearranging into that grouping is what
//! [`reorder_proof`] is for. An empty sum is the literal term `0`, a
//! singleton sum the prefix itself.

use crate::syntax::{ext_choice_all, Action, GuardedSum, SyncSet, Term};
use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;
use thiserror::Error;

/// Names of the axiom schemas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[allow(clippy::upper_case_acronyms)]
pub enum AxiomName {
    EC1, EC2, EC3, EC4, EC5,
    DI1, DI2, DI3, DI4, DI5,
    CO1, CO2, CO3,
    PR1, PR2,
    PA1, PA2,
    DS1, DS2, DS3, DS4,
    ECC1, ECC2, ECC3,
    EXP1, EXP2,
}

pub const ALL_AXIOMS: [AxiomName; 26] = [
    AxiomName::EC1, AxiomName::EC2, AxiomName::EC3, AxiomName::EC4, AxiomName::EC5,
    AxiomName::DI1, AxiomName::DI2, AxiomName::DI3, AxiomName::DI4, AxiomName::DI5,
    AxiomName::CO1, AxiomName::CO2, AxiomName::CO3,
    AxiomName::PR1, AxiomName::PR2,
    AxiomName::PA1, AxiomName::PA2,
    AxiomName::DS1, AxiomName::DS2, AxiomName::DS3, AxiomName::DS4,
    AxiomName::ECC1, AxiomName::ECC2, AxiomName::ECC3,
    AxiomName::EXP1, AxiomName::EXP2,
];

impl AxiomName {
    /// Equational axioms may be applied in both directions; the others
    /// only left to right.
    pub fn is_equational(self) -> bool {
        !matches!(
            self,
            AxiomName::DI5
                | AxiomName::DS1
                | AxiomName::DS2
                | AxiomName::DS3
                | AxiomName::DS4
                | AxiomName::ECC2
                | AxiomName::ECC3
                | AxiomName::EXP1
                | AxiomName::EXP2
        )
    }
}

impl std::fmt::Display for AxiomName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

impl std::str::FromStr for AxiomName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        ALL_AXIOMS
            .iter()
            .find(|a| a.to_string() == s)
            .copied()
            .ok_or_else(|| format!("unknown axiom `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    L2R,
    R2L,
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Direction::L2R => "L2R",
            Direction::R2L => "R2L",
        })
    }
}

/// Ground instantiation of an axiom schema: metavariable bindings,
/// summand lists for the n-ary schemas, and the sync set when the schema
/// mentions one.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Instantiation {
    pub vars: BTreeMap<String, Term>,
    pub sums: BTreeMap<String, GuardedSum>,
    pub sync: Option<SyncSet>,
}

impl Instantiation {
    fn var(mut self, name: &str, t: &Term) -> Self {
        self.vars.insert(name.to_string(), t.clone());
        self
    }

    fn sum(mut self, name: &str, s: GuardedSum) -> Self {
        self.sums.insert(name.to_string(), s);
        self
    }

    fn with_sync(mut self, a: &SyncSet) -> Self {
        self.sync = Some(a.clone());
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchErrorKind {
    /// The pair does not have the schema's shape.
    Shape,
    /// The shape matched but a side condition failed.
    SideCondition,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("{message}")]
pub struct MatchError {
    pub kind: MatchErrorKind,
    pub message: String,
}

fn shape(msg: impl Into<String>) -> MatchError {
    MatchError { kind: MatchErrorKind::Shape, message: msg.into() }
}

fn side(msg: impl Into<String>) -> MatchError {
    MatchError { kind: MatchErrorKind::SideCondition, message: msg.into() }
}

type MatchResult = Result<Instantiation, MatchError>;

fn as_choice(t: &Term) -> Option<(&Term, &Term)> {
    match t {
        Term::ExtChoice(l, r) => Some((l, r)),
        _ => None,
    }
}

fn as_conj(t: &Term) -> Option<(&Term, &Term)> {
    match t {
        Term::Conj(l, r) => Some((l, r)),
        _ => None,
    }
}

fn as_disj(t: &Term) -> Option<(&Term, &Term)> {
    match t {
        Term::Disj(l, r) => Some((l, r)),
        _ => None,
    }
}

fn as_par(t: &Term) -> Option<(&Term, &Term, &SyncSet)> {
    match t {
        Term::Par(l, r, a) => Some((l, r, a)),
        _ => None,
    }
}

/// The expanded side of the expansion schemas for `ls |[A]| rs`: the three
/// summand families (left interleavings, right interleavings,
/// synchronisations in index order) as the literal left-nested term
/// `((sum1 [] sum2) [] sum3)`.
pub fn expansion_term(ls: &GuardedSum, rs: &GuardedSum, sync: &SyncSet) -> Term {
    let lt = ls.to_term();
    let rt = rs.to_term();
    let omega1 = ls.summands.iter().filter(|(a, _)| !sync.contains(a)).map(|(a, x)| {
        Term::prefix(Action::visible(a.clone()), Term::par(x.clone(), rt.clone(), sync.clone()))
    });
    let omega2 = rs.summands.iter().filter(|(b, _)| !sync.contains(b)).map(|(b, y)| {
        Term::prefix(Action::visible(b.clone()), Term::par(lt.clone(), y.clone(), sync.clone()))
    });
    let mut omega3 = Vec::new();
    for (a, x) in &ls.summands {
        if !sync.contains(a) {
            continue;
        }
        for (b, y) in &rs.summands {
            if a == b {
                omega3.push(Term::prefix(
                    Action::visible(a.clone()),
                    Term::par(x.clone(), y.clone(), sync.clone()),
                ));
            }
        }
    }
    Term::ext_choice(
        Term::ext_choice(ext_choice_all(omega1), ext_choice_all(omega2)),
        ext_choice_all(omega3),
    )
}

/// Matches `(lhs, rhs)` against an axiom schema in the given direction,
/// returning the instantiation on success. Side conditions (`DS4`, `ECC1`,
/// `ECC3`, `EXP2`) are enforced and identified on failure.
pub fn match_axiom(name: AxiomName, dir: Direction, lhs: &Term, rhs: &Term) -> MatchResult {
    if dir == Direction::R2L {
        if !name.is_equational() {
            return Err(shape(format!("{name} is inequational and only applies left to right")));
        }
        return match_axiom(name, Direction::L2R, rhs, lhs);
    }
    let inst = Instantiation::default();
    let comm = |pair: Option<(&Term, &Term)>, pair2: Option<(&Term, &Term)>| -> MatchResult {
        let ((x, y), (y2, x2)) = pair.zip(pair2).ok_or_else(|| shape("operator mismatch"))?;
        if x == x2 && y == y2 {
            Ok(Instantiation::default().var("x", x).var("y", y))
        } else {
            Err(shape("operands are not swapped"))
        }
    };
    match name {
        AxiomName::EC1 => comm(as_choice(lhs), as_choice(rhs)),
        AxiomName::CO1 => comm(as_conj(lhs), as_conj(rhs)),
        AxiomName::DI1 => comm(as_disj(lhs), as_disj(rhs)),
        AxiomName::PA1 => {
            let (x, y, a) = as_par(lhs).ok_or_else(|| shape("expected a parallel composition"))?;
            let (y2, x2, a2) =
                as_par(rhs).ok_or_else(|| shape("expected a parallel composition"))?;
            if a != a2 {
                return Err(shape("sync sets differ"));
            }
            if x == x2 && y == y2 {
                Ok(inst.var("x", x).var("y", y).with_sync(a))
            } else {
                Err(shape("operands are not swapped"))
            }
        }
        AxiomName::EC2 => {
            // (x [] y) [] z = x [] (y [] z)
            let (xy, z) = as_choice(lhs).ok_or_else(|| shape("shape mismatch"))?;
            let (x, y) = as_choice(xy).ok_or_else(|| shape("shape mismatch"))?;
            let (x2, yz) = as_choice(rhs).ok_or_else(|| shape("shape mismatch"))?;
            let (y2, z2) = as_choice(yz).ok_or_else(|| shape("shape mismatch"))?;
            if x == x2 && y == y2 && z == z2 {
                Ok(inst.var("x", x).var("y", y).var("z", z))
            } else {
                Err(shape("operands do not correspond"))
            }
        }
        AxiomName::DI2 => {
            // x \/ (y \/ z) = (x \/ y) \/ z
            let (x, yz) = as_disj(lhs).ok_or_else(|| shape("shape mismatch"))?;
            let (y, z) = as_disj(yz).ok_or_else(|| shape("shape mismatch"))?;
            let (xy, z2) = as_disj(rhs).ok_or_else(|| shape("shape mismatch"))?;
            let (x2, y2) = as_disj(xy).ok_or_else(|| shape("shape mismatch"))?;
            if x == x2 && y == y2 && z == z2 {
                Ok(inst.var("x", x).var("y", y).var("z", z))
            } else {
                Err(shape("operands do not correspond"))
            }
        }
        AxiomName::EC3 | AxiomName::CO2 | AxiomName::DI3 => {
            let pair = match name {
                AxiomName::EC3 => as_choice(lhs),
                AxiomName::CO2 => as_conj(lhs),
                _ => as_disj(lhs),
            };
            let (x1, x2) = pair.ok_or_else(|| shape("operator mismatch"))?;
            if x1 == x2 && x1 == rhs {
                Ok(inst.var("x", x1))
            } else {
                Err(shape("not an idempotence instance"))
            }
        }
        AxiomName::EC4 => {
            let (x, zero) = as_choice(lhs).ok_or_else(|| shape("expected a choice"))?;
            if matches!(zero, Term::Nil) && x == rhs {
                Ok(inst.var("x", x))
            } else {
                Err(shape("not a unit instance"))
            }
        }
        AxiomName::DI4 => {
            let (x, bot) = as_disj(lhs).ok_or_else(|| shape("expected a disjunction"))?;
            if matches!(bot, Term::Bottom) && x == rhs {
                Ok(inst.var("x", x))
            } else {
                Err(shape("not a unit instance"))
            }
        }
        AxiomName::EC5 | AxiomName::CO3 => {
            let pair = if name == AxiomName::EC5 { as_choice(lhs) } else { as_conj(lhs) };
            let (x, bot) = pair.ok_or_else(|| shape("operator mismatch"))?;
            if matches!(bot, Term::Bottom) && matches!(rhs, Term::Bottom) {
                Ok(inst.var("x", x))
            } else {
                Err(shape("not a zero instance"))
            }
        }
        AxiomName::PA2 => {
            let (x, bot, a) =
                as_par(lhs).ok_or_else(|| shape("expected a parallel composition"))?;
            if matches!(bot, Term::Bottom) && matches!(rhs, Term::Bottom) {
                Ok(inst.var("x", x).with_sync(a))
            } else {
                Err(shape("not a zero instance"))
            }
        }
        AxiomName::PR1 => match lhs {
            Term::Prefix(Action::Visible(_), body)
                if matches!(**body, Term::Bottom) && matches!(rhs, Term::Bottom) =>
            {
                Ok(inst.var("x", &Term::Bottom))
            }
            _ => Err(shape("expected a visible prefix of bot")),
        },
        AxiomName::PR2 => match lhs {
            Term::Prefix(Action::Tau, body) if **body == *rhs => Ok(inst.var("x", rhs)),
            _ => Err(shape("expected a tau prefix of the right-hand side")),
        },
        AxiomName::DI5 => {
            let (x, y) = as_disj(rhs).ok_or_else(|| shape("right side must be a disjunction"))?;
            if x == lhs {
                Ok(inst.var("x", x).var("y", y))
            } else {
                Err(shape("left side must be the first disjunct"))
            }
        }
        AxiomName::DS1 | AxiomName::DS2 | AxiomName::DS3 => {
            let dec = |t: &Term| -> Option<(Term, Term, Option<SyncSet>)> {
                match (name, t) {
                    (AxiomName::DS1, Term::ExtChoice(l, r)) => {
                        Some(((**l).clone(), (**r).clone(), None))
                    }
                    (AxiomName::DS2, Term::Conj(l, r)) => {
                        Some(((**l).clone(), (**r).clone(), None))
                    }
                    (AxiomName::DS3, Term::Par(l, r, a)) => {
                        Some(((**l).clone(), (**r).clone(), Some(a.clone())))
                    }
                    _ => None,
                }
            };
            let (x, yz, a0) = dec(lhs).ok_or_else(|| shape("operator mismatch"))?;
            let (y, z) =
                as_disj(&yz).ok_or_else(|| shape("second operand must be a disjunction"))?;
            let (xy, xz) = as_disj(rhs).ok_or_else(|| shape("right side must be a disjunction"))?;
            let (x1, y1, a1) = dec(xy).ok_or_else(|| shape("operator mismatch"))?;
            let (x2, z1, a2) = dec(xz).ok_or_else(|| shape("operator mismatch"))?;
            if x1 == x && x2 == x && y1 == *y && z1 == *z && a1 == a0 && a2 == a0 {
                let mut i = inst.var("x", &x).var("y", y).var("z", z);
                i.sync = a0;
                Ok(i)
            } else {
                Err(shape("operands do not correspond"))
            }
        }
        AxiomName::DS4 => {
            // a.(x \/ y) <= a.x [] a.y, with x and y basic
            let (a, body) = match lhs {
                Term::Prefix(Action::Visible(a), body) => (a, &**body),
                _ => return Err(shape("left side must be a visible prefix")),
            };
            let (x, y) = as_disj(body).ok_or_else(|| shape("prefix body must be a disjunction"))?;
            let (ax, ay) = as_choice(rhs).ok_or_else(|| shape("right side must be a choice"))?;
            let ok = matches!(ax, Term::Prefix(Action::Visible(a2), x2) if a2 == a && **x2 == *x)
                && matches!(ay, Term::Prefix(Action::Visible(a2), y2) if a2 == a && **y2 == *y);
            if !ok {
                return Err(shape("operands do not correspond"));
            }
            if !x.is_basic() {
                return Err(side(format!("side condition: `{x}` is not a basic term")));
            }
            if !y.is_basic() {
                return Err(side(format!("side condition: `{y}` is not a basic term")));
            }
            Ok(inst.var("x", x).var("y", y))
        }
        AxiomName::ECC1 => {
            let (s, t) = as_conj(lhs).ok_or_else(|| shape("left side must be a conjunction"))?;
            let ls = s.as_guarded_sum().ok_or_else(|| shape("conjunct is not a guarded sum"))?;
            let rs = t.as_guarded_sum().ok_or_else(|| shape("conjunct is not a guarded sum"))?;
            if !matches!(rhs, Term::Bottom) {
                return Err(shape("right side must be bot"));
            }
            if ls.prefix_set() == rs.prefix_set() {
                return Err(side("side condition: prefix sets must differ"));
            }
            Ok(inst.sum("ax", ls).sum("by", rs))
        }
        AxiomName::ECC2 | AxiomName::ECC3 => {
            // sum of a_i.(x_i /\ y_i)  vs  (sum of a_i.x_i) /\ (sum of a_i.y_i)
            let (zipped, conj) = if name == AxiomName::ECC2 { (lhs, rhs) } else { (rhs, lhs) };
            let (s1, s2) = as_conj(conj).ok_or_else(|| shape("expected a conjunction of sums"))?;
            let xs = s1.as_guarded_sum().ok_or_else(|| shape("conjunct is not a guarded sum"))?;
            let ys = s2.as_guarded_sum().ok_or_else(|| shape("conjunct is not a guarded sum"))?;
            if xs.summands.len() != ys.summands.len()
                || xs.summands.iter().zip(&ys.summands).any(|((a, _), (b, _))| a != b)
            {
                return Err(shape("action sequences differ"));
            }
            let expect = GuardedSum::new(
                xs.summands
                    .iter()
                    .zip(&ys.summands)
                    .map(|((a, x), (_, y))| (a.clone(), Term::conj(x.clone(), y.clone())))
                    .collect(),
            );
            if expect.to_term() != *zipped {
                return Err(shape("zipped sum does not correspond"));
            }
            if name == AxiomName::ECC3 && !xs.is_injective_in_prefixes() {
                return Err(side("side condition: the first sum must be injective in prefixes"));
            }
            Ok(inst.sum("ax", xs).sum("ay", ys))
        }
        AxiomName::EXP1 | AxiomName::EXP2 => {
            let (par, expansion) = if name == AxiomName::EXP1 { (lhs, rhs) } else { (rhs, lhs) };
            let (l, r, a) = as_par(par).ok_or_else(|| shape("expected a parallel composition"))?;
            let ls = l.as_guarded_sum().ok_or_else(|| shape("operand is not a guarded sum"))?;
            let rs = r.as_guarded_sum().ok_or_else(|| shape("operand is not a guarded sum"))?;
            if expansion_term(&ls, &rs, a) != *expansion {
                return Err(shape("expansion does not correspond"));
            }
            if name == AxiomName::EXP2 {
                for (_, c) in ls.summands.iter().chain(&rs.summands) {
                    if !c.is_basic() {
                        return Err(side(format!(
                            "side condition: continuation `{c}` is not a basic term"
                        )));
                    }
                }
            }
            Ok(inst.sum("ax", ls).sum("by", rs).with_sync(a))
        }
    }
}

/// Operator layer rewritten by a congruence node; one child per operand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CtxOp {
    Prefix(Action),
    ExtChoice,
    Conj,
    Disj,
    Par(SyncSet),
}

impl CtxOp {
    pub fn arity(&self) -> usize {
        match self {
            CtxOp::Prefix(_) => 1,
            _ => 2,
        }
    }

    pub fn apply(&self, children: &[Term]) -> Term {
        match self {
            CtxOp::Prefix(a) => Term::prefix(a.clone(), children[0].clone()),
            CtxOp::ExtChoice => Term::ext_choice(children[0].clone(), children[1].clone()),
            CtxOp::Conj => Term::conj(children[0].clone(), children[1].clone()),
            CtxOp::Disj => Term::disj(children[0].clone(), children[1].clone()),
            CtxOp::Par(a) => Term::par(children[0].clone(), children[1].clone(), a.clone()),
        }
    }

    /// Derives the operator layer shared by two terms, with the paired
    /// operand claims.
    pub fn decompose(lhs: &Term, rhs: &Term) -> Option<(CtxOp, Vec<(Term, Term)>)> {
        match (lhs, rhs) {
            (Term::Prefix(a, x), Term::Prefix(b, y)) if a == b => {
                Some((CtxOp::Prefix(a.clone()), vec![((**x).clone(), (**y).clone())]))
            }
            (Term::ExtChoice(x1, y1), Term::ExtChoice(x2, y2)) => Some((
                CtxOp::ExtChoice,
                vec![((**x1).clone(), (**x2).clone()), ((**y1).clone(), (**y2).clone())],
            )),
            (Term::Conj(x1, y1), Term::Conj(x2, y2)) => Some((
                CtxOp::Conj,
                vec![((**x1).clone(), (**x2).clone()), ((**y1).clone(), (**y2).clone())],
            )),
            (Term::Disj(x1, y1), Term::Disj(x2, y2)) => Some((
                CtxOp::Disj,
                vec![((**x1).clone(), (**x2).clone()), ((**y1).clone(), (**y2).clone())],
            )),
            (Term::Par(x1, y1, a), Term::Par(x2, y2, b)) if a == b => Some((
                CtxOp::Par(a.clone()),
                vec![((**x1).clone(), (**x2).clone()), ((**y1).clone(), (**y2).clone())],
            )),
            _ => None,
        }
    }
}

/// How a proof node justifies its claim.
#[derive(Debug, Clone)]
pub enum Rule {
    /// `t <= t`.
    Refl,
    /// A ground instance of an axiom schema.
    Axiom { name: AxiomName, dir: Direction },
    /// Composition of `lhs <= mid` and `mid <= rhs`.
    Trans(Arc<Proof>, Arc<Proof>),
    /// Component-wise rewriting under one operator layer.
    Context { op: CtxOp, children: Vec<Arc<Proof>> },
}

/// A derivation node together with its claim.
#[derive(Debug, Clone)]
pub struct Proof {
    pub lhs: Term,
    pub rhs: Term,
    pub rule: Rule,
}

impl Proof {
    pub fn refl(t: Term) -> Proof {
        Proof { lhs: t.clone(), rhs: t, rule: Rule::Refl }
    }

    pub fn axiom(name: AxiomName, dir: Direction, lhs: Term, rhs: Term) -> Proof {
        debug_assert!(
            match_axiom(name, dir, &lhs, &rhs).is_ok(),
            "invalid axiom instance {name} {dir}: {lhs} <= {rhs}: {:?}",
            match_axiom(name, dir, &lhs, &rhs)
        );
        Proof { lhs, rhs, rule: Rule::Axiom { name, dir } }
    }

    pub fn trans(first: Proof, second: Proof) -> Proof {
        debug_assert_eq!(first.rhs, second.lhs, "claims do not compose");
        if matches!(first.rule, Rule::Refl) {
            return second;
        }
        if matches!(second.rule, Rule::Refl) {
            return first;
        }
        Proof {
            lhs: first.lhs.clone(),
            rhs: second.rhs.clone(),
            rule: Rule::Trans(Arc::new(first), Arc::new(second)),
        }
    }

    /// Folds a nonempty sequence of composable steps.
    pub fn trans_many(steps: impl IntoIterator<Item = Proof>) -> Proof {
        let mut acc: Option<Proof> = None;
        for step in steps {
            acc = Some(match acc {
                None => step,
                Some(p) => Proof::trans(p, step),
            });
        }
        acc.expect("at least one step")
    }

    pub fn ctx(op: CtxOp, children: Vec<Proof>) -> Proof {
        debug_assert_eq!(children.len(), op.arity());
        let lhs = op.apply(&children.iter().map(|c| c.lhs.clone()).collect::<Vec<_>>());
        let rhs = op.apply(&children.iter().map(|c| c.rhs.clone()).collect::<Vec<_>>());
        Proof {
            lhs,
            rhs,
            rule: Rule::Context { op, children: children.into_iter().map(Arc::new).collect() },
        }
    }

    /// Number of distinct nodes (shared subproofs counted once).
    pub fn node_count(&self) -> usize {
        fn walk(p: &Proof, seen: &mut HashSet<*const Proof>) -> usize {
            let mut n = 1;
            let children: Vec<&Arc<Proof>> = match &p.rule {
                Rule::Refl | Rule::Axiom { .. } => vec![],
                Rule::Trans(a, b) => vec![a, b],
                Rule::Context { children, .. } => children.iter().collect(),
            };
            for c in children {
                if seen.insert(Arc::as_ptr(c)) {
                    n += walk(c, seen);
                }
            }
            n
        }
        walk(self, &mut HashSet::new())
    }
}

/// Rejection verdict of the checker: the path of child indices from the
/// root to the offending node, and why it is invalid.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("invalid proof node at {path:?}: {reason}")]
pub struct ProofError {
    pub path: Vec<usize>,
    pub reason: String,
}

/// Validates every node of a proof: axiom leaves must match their schema,
/// reflexivity must be reflexive, and internal nodes' claims must compose.
/// Returns the root claim on acceptance.
pub fn check_proof(proof: &Proof) -> Result<(Term, Term), ProofError> {
    // Shared subproofs carry their claims, so each distinct node needs
    // checking only once.
    let mut seen: HashSet<*const Proof> = HashSet::new();
    let mut stack: Vec<(&Proof, Vec<usize>)> = vec![(proof, vec![])];
    while let Some((node, path)) = stack.pop() {
        let err = |reason: String| ProofError { path: path.clone(), reason };
        match &node.rule {
            Rule::Refl => {
                if node.lhs != node.rhs {
                    return Err(err(format!(
                        "reflexivity claims `{}` <= `{}`",
                        node.lhs, node.rhs
                    )));
                }
            }
            Rule::Axiom { name, dir } => {
                if let Err(e) = match_axiom(*name, *dir, &node.lhs, &node.rhs) {
                    return Err(err(format!(
                        "`{}` <= `{}` is not a {name} ({dir}) instance: {e}",
                        node.lhs, node.rhs
                    )));
                }
            }
            Rule::Trans(a, b) => {
                if a.lhs != node.lhs {
                    return Err(err("first premise does not start at the claim".into()));
                }
                if b.rhs != node.rhs {
                    return Err(err("second premise does not end at the claim".into()));
                }
                if a.rhs != b.lhs {
                    return Err(err(format!("premises do not compose: `{}` vs `{}`", a.rhs, b.lhs)));
                }
                for (i, c) in [a, b].into_iter().enumerate() {
                    if seen.insert(Arc::as_ptr(c)) {
                        let mut p = path.clone();
                        p.push(i);
                        stack.push((c, p));
                    }
                }
            }
            Rule::Context { op, children } => {
                if children.len() != op.arity() {
                    return Err(err(format!(
                        "operator of arity {} given {} children",
                        op.arity(),
                        children.len()
                    )));
                }
                let lhs = op.apply(&children.iter().map(|c| c.lhs.clone()).collect::<Vec<_>>());
                let rhs = op.apply(&children.iter().map(|c| c.rhs.clone()).collect::<Vec<_>>());
                if lhs != node.lhs || rhs != node.rhs {
                    return Err(err("child claims do not assemble to the node claim".into()));
                }
                for (i, c) in children.iter().enumerate() {
                    if seen.insert(Arc::as_ptr(c)) {
                        let mut p = path.clone();
                        p.push(i);
                        stack.push((c, p));
                    }
                }
            }
        }
    }
    Ok((proof.lhs.clone(), proof.rhs.clone()))
}

/// An equality `lhs = rhs` represented as its two inequality proofs.
#[derive(Debug, Clone)]
pub struct EqProof {
    pub leq: Proof,
    pub geq: Proof,
}

impl EqProof {
    pub fn lhs(&self) -> &Term {
        &self.leq.lhs
    }

    pub fn rhs(&self) -> &Term {
        &self.leq.rhs
    }

    pub fn refl(t: Term) -> EqProof {
        EqProof { leq: Proof::refl(t.clone()), geq: Proof::refl(t) }
    }

    /// Instance of an equational axiom, in whichever direction fits.
    pub fn by_axiom(name: AxiomName, lhs: Term, rhs: Term) -> EqProof {
        assert!(name.is_equational(), "{name} has no right-to-left direction");
        if match_axiom(name, Direction::L2R, &lhs, &rhs).is_ok() {
            EqProof {
                leq: Proof::axiom(name, Direction::L2R, lhs.clone(), rhs.clone()),
                geq: Proof::axiom(name, Direction::R2L, rhs, lhs),
            }
        } else {
            EqProof {
                leq: Proof::axiom(name, Direction::R2L, lhs.clone(), rhs.clone()),
                geq: Proof::axiom(name, Direction::L2R, rhs, lhs),
            }
        }
    }

    /// Pairs two independently derived inequalities into an equality.
    pub fn from_halves(leq: Proof, geq: Proof) -> EqProof {
        debug_assert_eq!(leq.lhs, geq.rhs);
        debug_assert_eq!(leq.rhs, geq.lhs);
        EqProof { leq, geq }
    }

    pub fn sym(self) -> EqProof {
        EqProof { leq: self.geq, geq: self.leq }
    }

    pub fn trans(first: EqProof, second: EqProof) -> EqProof {
        debug_assert_eq!(first.rhs(), second.lhs());
        if matches!(first.leq.rule, Rule::Refl) {
            return second;
        }
        if matches!(second.leq.rule, Rule::Refl) {
            return first;
        }
        EqProof {
            leq: Proof::trans(first.leq, second.leq),
            geq: Proof::trans(second.geq, first.geq),
        }
    }

    pub fn trans_many(steps: impl IntoIterator<Item = EqProof>) -> EqProof {
        let mut acc: Option<EqProof> = None;
        for s in steps {
            acc = Some(match acc {
                None => s,
                Some(p) => EqProof::trans(p, s),
            });
        }
        acc.expect("at least one step")
    }

    pub fn ctx(op: CtxOp, children: Vec<EqProof>) -> EqProof {
        if children.iter().all(|c| matches!(c.leq.rule, Rule::Refl)) {
            let terms: Vec<Term> = children.into_iter().map(|c| c.leq.lhs).collect();
            return EqProof::refl(op.apply(&terms));
        }
        let leqs: Vec<Proof> = children.iter().map(|c| c.leq.clone()).collect();
        let geqs: Vec<Proof> = children.into_iter().map(|c| c.geq).collect();
        EqProof { leq: Proof::ctx(op.clone(), leqs), geq: Proof::ctx(op, geqs) }
    }
}

/// The two associative-commutative operator groups reordering works in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AcOp {
    Choice,
    Disj,
}

impl AcOp {
    pub(crate) fn comm(self) -> AxiomName {
        match self {
            AcOp::Choice => AxiomName::EC1,
            AcOp::Disj => AxiomName::DI1,
        }
    }

    pub(crate) fn assoc(self) -> AxiomName {
        match self {
            AcOp::Choice => AxiomName::EC2,
            AcOp::Disj => AxiomName::DI2,
        }
    }

    pub(crate) fn idem(self) -> AxiomName {
        match self {
            AcOp::Choice => AxiomName::EC3,
            AcOp::Disj => AxiomName::DI3,
        }
    }

    pub(crate) fn ctx_op(self) -> CtxOp {
        match self {
            AcOp::Choice => CtxOp::ExtChoice,
            AcOp::Disj => CtxOp::Disj,
        }
    }

    pub(crate) fn mk(self, l: Term, r: Term) -> Term {
        match self {
            AcOp::Choice => Term::ext_choice(l, r),
            AcOp::Disj => Term::disj(l, r),
        }
    }

    fn split<'t>(self, t: &'t Term) -> Option<(&'t Term, &'t Term)> {
        match (self, t) {
            (AcOp::Choice, Term::ExtChoice(l, r)) => Some((l, r)),
            (AcOp::Disj, Term::Disj(l, r)) => Some((l, r)),
            _ => None,
        }
    }

    /// Maximal flattening of `t` over this operator.
    pub(crate) fn flatten(self, t: &Term) -> Vec<Term> {
        match self.split(t) {
            None => vec![t.clone()],
            Some((l, r)) => {
                let mut out = self.flatten(l);
                out.extend(self.flatten(r));
                out
            }
        }
    }

    /// Left-nested tree over a nonempty list.
    pub(crate) fn ln(self, items: &[Term]) -> Term {
        let mut it = items.iter().cloned();
        let first = it.next().expect("nonempty");
        it.fold(first, |acc, x| self.mk(acc, x))
    }
}

/// `t = ln(flatten(t))`: pure reassociation.
pub(crate) fn reassoc_to_ln(op: AcOp, t: &Term) -> EqProof {
    match op.split(t) {
        None => EqProof::refl(t.clone()),
        Some((l, r)) => {
            let el = reassoc_to_ln(op, l);
            let er = reassoc_to_ln(op, r);
            let la = op.flatten(l);
            let lb = op.flatten(r);
            let e = EqProof::ctx(op.ctx_op(), vec![el, er]);
            EqProof::trans(e, append_ln(op, &la, &lb))
        }
    }
}

/// `ln(la) (+) ln(lb) = ln(la ++ lb)` for nonempty `la`, `lb`.
fn append_ln(op: AcOp, la: &[Term], lb: &[Term]) -> EqProof {
    if lb.len() == 1 {
        let mut all = la.to_vec();
        all.extend(lb.iter().cloned());
        return EqProof::refl(op.ln(&all));
    }
    let (last, lb_init) = lb.split_last().unwrap();
    // ln(la) (+) (ln(lb') (+) z)  =  (ln(la) (+) ln(lb')) (+) z
    let x = op.ln(la);
    let y = op.ln(lb_init);
    let assoc = EqProof::by_axiom(
        op.assoc(),
        op.mk(x.clone(), op.mk(y.clone(), last.clone())),
        op.mk(op.mk(x, y), last.clone()),
    );
    let inner = append_ln(op, la, lb_init);
    let lifted = EqProof::ctx(op.ctx_op(), vec![inner, EqProof::refl(last.clone())]);
    EqProof::trans(assoc, lifted)
}

/// Swaps positions `i` and `i + 1` of a left-nested tree.
fn transpose_ln(op: AcOp, items: &[Term], i: usize) -> EqProof {
    let n = items.len();
    debug_assert!(i + 1 < n);
    let mut swapped = items.to_vec();
    swapped.swap(i, i + 1);
    let core = if i == 0 {
        EqProof::by_axiom(
            op.comm(),
            op.mk(items[0].clone(), items[1].clone()),
            op.mk(items[1].clone(), items[0].clone()),
        )
    } else {
        // ((P + x) + y) -> (P + (x + y)) -> (P + (y + x)) -> ((P + y) + x)
        let p = op.ln(&items[..i]);
        let (x, y) = (items[i].clone(), items[i + 1].clone());
        let s1 = EqProof::by_axiom(
            op.assoc(),
            op.mk(op.mk(p.clone(), x.clone()), y.clone()),
            op.mk(p.clone(), op.mk(x.clone(), y.clone())),
        );
        let s2 = EqProof::ctx(
            op.ctx_op(),
            vec![
                EqProof::refl(p.clone()),
                EqProof::by_axiom(
                    op.comm(),
                    op.mk(x.clone(), y.clone()),
                    op.mk(y.clone(), x.clone()),
                ),
            ],
        );
        let s3 = EqProof::by_axiom(
            op.assoc(),
            op.mk(p.clone(), op.mk(y.clone(), x.clone())),
            op.mk(op.mk(p, y), x),
        );
        EqProof::trans_many([s1, s2, s3])
    };
    // Rebuild the spine above position i + 1.
    let mut proof = core;
    for item in &items[i + 2..] {
        proof = EqProof::ctx(op.ctx_op(), vec![proof, EqProof::refl(item.clone())]);
    }
    debug_assert_eq!(*proof.lhs(), op.ln(items));
    debug_assert_eq!(*proof.rhs(), op.ln(&swapped));
    proof
}

/// `ln(from) = ln(to)` where `to` is a permutation of `from`; selection
/// sort by adjacent transpositions.
pub(crate) fn permute_ln(op: AcOp, from: &[Term], to: &[Term]) -> EqProof {
    let mut cur = from.to_vec();
    let mut steps = vec![EqProof::refl(op.ln(&cur))];
    for k in 0..to.len() {
        let j = (k..cur.len())
            .find(|&j| cur[j] == to[k])
            .expect("`to` must be a permutation of `from`");
        for idx in (k..j).rev() {
            steps.push(transpose_ln(op, &cur, idx));
            cur.swap(idx, idx + 1);
        }
    }
    debug_assert_eq!(cur, to);
    EqProof::trans_many(steps)
}

/// Rearrangement proof: when `dst` is a permutation or regrouping of the
/// maximal flattening of `src` over choice (or disjunction), returns the
/// equality proof built from the commutativity and associativity axioms
/// under congruence and transitivity; `None` otherwise.
pub fn reorder_proof(src: &Term, dst: &Term) -> Option<EqProof> {
    if src == dst {
        return Some(EqProof::refl(src.clone()));
    }
    let op = match (src, dst) {
        (Term::ExtChoice(_, _), Term::ExtChoice(_, _)) => AcOp::Choice,
        (Term::Disj(_, _), Term::Disj(_, _)) => AcOp::Disj,
        _ => return None,
    };
    let from = op.flatten(src);
    let to = op.flatten(dst);
    let mut a = from.clone();
    let mut b = to.clone();
    a.sort();
    b.sort();
    if a != b {
        return None;
    }
    let e1 = reassoc_to_ln(op, src);
    let e2 = permute_ln(op, &from, &to);
    let e3 = reassoc_to_ln(op, dst).sym();
    Some(EqProof::trans_many([e1, e2, e3]))
}

pub mod derived;
pub mod json;

#[cfg(test)]
mod tests;
