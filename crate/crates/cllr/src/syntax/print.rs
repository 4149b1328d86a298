//! Canonical printer: deterministic, minimal parentheses, inverse of the parser.

use super::Term;
use std::fmt;

// Binding strength, loosest first. A child is parenthesised when its own
// level is below what its position requires.
const DISJ: u8 = 0;
const CONJ: u8 = 1;
const CHOICE: u8 = 2;
const PAR: u8 = 3;
const PRE: u8 = 4;
const ATOM: u8 = 5;

fn level(t: &Term) -> u8 {
    match t {
        Term::Nil | Term::Bottom => ATOM,
        Term::Prefix(_, _) => PRE,
        Term::Par(_, _, _) => PAR,
        Term::ExtChoice(_, _) => CHOICE,
        Term::Conj(_, _) => CONJ,
        Term::Disj(_, _) => DISJ,
    }
}

fn write_at(t: &Term, min: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let lv = level(t);
    if lv < min {
        write!(f, "(")?;
        write_at(t, DISJ, f)?;
        return write!(f, ")");
    }
    match t {
        Term::Nil => write!(f, "0"),
        Term::Bottom => write!(f, "bot"),
        Term::Prefix(a, body) => {
            write!(f, "{a}.")?;
            write_at(body, PRE, f)
        }
        Term::Par(l, r, sync) => {
            // Left-associative: the right operand must bind tighter.
            write_at(l, PAR, f)?;
            let names: Vec<&str> = sync.iter().map(|s| s.as_str()).collect();
            write!(f, " |[{}]| ", names.join(","))?;
            write_at(r, PRE, f)
        }
        Term::ExtChoice(l, r) => {
            write_at(l, CHOICE, f)?;
            write!(f, " [] ")?;
            write_at(r, PAR, f)
        }
        Term::Conj(l, r) => {
            write_at(l, CONJ, f)?;
            write!(f, " /\\ ")?;
            write_at(r, CHOICE, f)
        }
        Term::Disj(l, r) => {
            write_at(l, DISJ, f)?;
            write!(f, " \\/ ")?;
            write_at(r, CONJ, f)
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_at(self, DISJ, f)
    }
}
