//! Recursive-descent parser for the concrete term syntax.
//!
//! Grammar (whitespace insensitive, operators loosest to tightest):
//!
//! ```text
//! term    := disj
//! disj    := conj ("\/" conj)*
//! conj    := choice ("/\" choice)*
//! choice  := par ("[]" par)*
//! par     := pre ("|[" actlist "]|" pre)*
//! pre     := action "." pre | atom
//! atom    := "0" | "bot" | "(" term ")"
//! action  := "tau" | [a-z][a-zA-Z0-9_]*
//! actlist := (action ("," action)*)?        -- "tau" forbidden
//! ```
//!
//! All binary operators are left-associative.

use super::{Action, SyncSet, Term};
use thiserror::Error;

/// Syntax error with source position and the token set that was expected.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("syntax error at {line}:{col}: expected {}, found {found}", .expected.join(" or "))]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub expected: Vec<String>,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Zero,
    Bot,
    Tau,
    Ident(String),
    Dot,
    LParen,
    RParen,
    Disj,    // \/
    Conj,    // /\
    Choice,  // []
    LPar,    // |[
    RPar,    // ]|
    Comma,
    Eof,
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Tok::Zero => "`0`",
            Tok::Bot => "`bot`",
            Tok::Tau => "`tau`",
            Tok::Ident(n) => return write!(f, "identifier `{n}`"),
            Tok::Dot => "`.`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::Disj => "`\\/`",
            Tok::Conj => "`/\\`",
            Tok::Choice => "`[]`",
            Tok::LPar => "`|[`",
            Tok::RPar => "`]|`",
            Tok::Comma => "`,`",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0, line: 1, col: 1 }
    }

    fn bump(&mut self) -> Option<u8> {
        let c = *self.src.get(self.pos)?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
        let mut out = Vec::new();
        loop {
            while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
                self.bump();
            }
            let (line, col) = (self.line, self.col);
            let Some(c) = self.peek() else {
                out.push((Tok::Eof, line, col));
                return Ok(out);
            };
            let tok = match c {
                b'0' => {
                    self.bump();
                    Tok::Zero
                }
                b'.' => {
                    self.bump();
                    Tok::Dot
                }
                b'(' => {
                    self.bump();
                    Tok::LParen
                }
                b')' => {
                    self.bump();
                    Tok::RParen
                }
                b',' => {
                    self.bump();
                    Tok::Comma
                }
                b'\\' => {
                    self.bump();
                    self.expect_char(b'/', "`\\/`")?;
                    Tok::Disj
                }
                b'/' => {
                    self.bump();
                    self.expect_char(b'\\', "`/\\`")?;
                    Tok::Conj
                }
                b'[' => {
                    self.bump();
                    self.expect_char(b']', "`[]`")?;
                    Tok::Choice
                }
                b'|' => {
                    self.bump();
                    self.expect_char(b'[', "`|[`")?;
                    Tok::LPar
                }
                b']' => {
                    self.bump();
                    self.expect_char(b'|', "`]|`")?;
                    Tok::RPar
                }
                c if c.is_ascii_lowercase() => {
                    let start = self.pos;
                    while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_')
                    {
                        self.bump();
                    }
                    let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    match name {
                        "bot" => Tok::Bot,
                        "tau" => Tok::Tau,
                        _ => Tok::Ident(name.to_string()),
                    }
                }
                other => {
                    return Err(ParseError {
                        line,
                        col,
                        expected: vec!["a term".into()],
                        found: format!("`{}`", other as char),
                    })
                }
            };
            out.push((tok, line, col));
        }
    }

    fn expect_char(&mut self, want: u8, tok: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            other => Err(ParseError {
                line: self.line,
                col: self.col,
                expected: vec![tok.into()],
                found: other
                    .map(|c| format!("`{}`", c as char))
                    .unwrap_or_else(|| "end of input".into()),
            }),
        }
    }
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let (tok, line, col) = &self.toks[self.pos];
        ParseError {
            line: *line,
            col: *col,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: tok.to_string(),
        }
    }

    fn expect(&mut self, want: Tok, desc: &str) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[desc]))
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        self.disj()
    }

    fn disj(&mut self) -> Result<Term, ParseError> {
        let mut t = self.conj()?;
        while *self.peek() == Tok::Disj {
            self.bump();
            t = Term::disj(t, self.conj()?);
        }
        Ok(t)
    }

    fn conj(&mut self) -> Result<Term, ParseError> {
        let mut t = self.choice()?;
        while *self.peek() == Tok::Conj {
            self.bump();
            t = Term::conj(t, self.choice()?);
        }
        Ok(t)
    }

    fn choice(&mut self) -> Result<Term, ParseError> {
        let mut t = self.par()?;
        while *self.peek() == Tok::Choice {
            self.bump();
            t = Term::ext_choice(t, self.par()?);
        }
        Ok(t)
    }

    fn par(&mut self) -> Result<Term, ParseError> {
        let mut t = self.pre()?;
        while *self.peek() == Tok::LPar {
            self.bump();
            let sync = self.actlist()?;
            self.expect(Tok::RPar, "`]|`")?;
            t = Term::par(t, self.pre()?, sync);
        }
        Ok(t)
    }

    fn actlist(&mut self) -> Result<SyncSet, ParseError> {
        let mut set = SyncSet::new();
        if *self.peek() == Tok::RPar {
            return Ok(set);
        }
        loop {
            match self.bump() {
                Tok::Ident(name) => {
                    set.insert(name);
                }
                Tok::Tau => {
                    self.pos -= 1;
                    return Err(self.error(&["a visible action (`tau` is not allowed here)"]));
                }
                _ => {
                    self.pos -= 1;
                    return Err(self.error(&["a visible action"]));
                }
            }
            if *self.peek() == Tok::Comma {
                self.bump();
            } else {
                return Ok(set);
            }
        }
    }

    fn pre(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Tau => {
                self.bump();
                self.expect(Tok::Dot, "`.`")?;
                Ok(Term::prefix(Action::Tau, self.pre()?))
            }
            Tok::Ident(name) => {
                self.bump();
                self.expect(Tok::Dot, "`.`")?;
                Ok(Term::prefix(Action::visible(name), self.pre()?))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Tok::Zero => {
                self.bump();
                Ok(Term::Nil)
            }
            Tok::Bot => {
                self.bump();
                Ok(Term::Bottom)
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            _ => Err(self.error(&["`0`", "`bot`", "`(`", "an action prefix"])),
        }
    }
}

/// Parses the concrete syntax into a [`Term`].
pub fn parse(input: &str) -> Result<Term, ParseError> {
    let toks = Lexer::new(input).tokens()?;
    let mut p = Parser { toks, pos: 0 };
    let t = p.term()?;
    p.expect(Tok::Eof, "end of input")?;
    Ok(t)
}
