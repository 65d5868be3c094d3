//! A small SMT-LIB subset for conjunctions of polynomial constraints over
//! the reals.

use std::fmt;

use levelcell::cells::{Constraint, Relation};
use levelcell::poly::{MPoly, Rat, Var};
use levelcell::realalg::{parse_rational, RealAlg};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("{pos}: syntax error: {message}")]
    Syntax { pos: Position, message: String },
    #[error("{pos}: {message}")]
    Semantic { pos: Position, message: String },
}

impl ParseError {
    pub fn position(&self) -> Position {
        match self {
            ParseError::Syntax { pos, .. } | ParseError::Semantic { pos, .. } => *pos,
        }
    }
}

/// A parsed problem: variables in declaration order give `x1, x2, ...`.
#[derive(Clone, Debug, Default)]
pub struct Problem {
    pub variables: Vec<String>,
    pub constraints: Vec<Constraint>,
    /// From `(set-info :sample (v1 v2 ...))`, where values may also be
    /// written `-3/4` or `1/8`.
    pub sample: Option<Vec<RealAlg>>,
}

impl Problem {
    /// Distinct nonconstant constraint polynomials, in order of appearance.
    pub fn polynomials(&self) -> Vec<MPoly> {
        let mut out: Vec<MPoly> = Vec::new();
        for c in &self.constraints {
            let p = c.polynomial();
            if !p.is_constant() && !out.contains(p) {
                out.push(p.clone());
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
enum Sexp {
    Atom(String, Position),
    List(Vec<Sexp>, Position),
}

impl Sexp {
    fn pos(&self) -> Position {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, p) => *p,
        }
    }
}

fn syntax(pos: Position, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { pos, message: message.into() }
}

fn semantic(pos: Position, message: impl Into<String>) -> ParseError {
    ParseError::Semantic { pos, message: message.into() }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    pos: Position,
}

impl Lexer<'_> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.column = 1;
        } else {
            self.pos.column += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c == ';' {
                while self.chars.peek().is_some_and(|&c| c != '\n') {
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn sexp(&mut self) -> Result<Option<Sexp>, ParseError> {
        self.skip_trivia();
        let start = self.pos;
        let Some(&c) = self.chars.peek() else {
            return Ok(None);
        };
        match c {
            '(' => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_trivia();
                    match self.chars.peek() {
                        None => return Err(syntax(start, "unclosed parenthesis")),
                        Some(')') => {
                            self.bump();
                            return Ok(Some(Sexp::List(items, start)));
                        }
                        Some(_) => items.push(self.sexp()?.expect("input remains")),
                    }
                }
            }
            ')' => Err(syntax(start, "unexpected ')'")),
            '|' => {
                self.bump();
                let mut s = String::new();
                loop {
                    match self.bump() {
                        None => return Err(syntax(start, "unterminated quoted symbol")),
                        Some('|') => return Ok(Some(Sexp::Atom(s, start))),
                        Some(c) => s.push(c),
                    }
                }
            }
            '"' => Err(syntax(start, "string literals are not supported")),
            _ => {
                let mut s = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    s.push(c);
                    self.bump();
                }
                Ok(Some(Sexp::Atom(s, start)))
            }
        }
    }
}

fn parse_sexps(text: &str) -> Result<Vec<Sexp>, ParseError> {
    let mut lexer = Lexer { chars: text.chars().peekable(), pos: Position { line: 1, column: 1 } };
    let mut out = Vec::new();
    while let Some(e) = lexer.sexp()? {
        out.push(e);
    }
    Ok(out)
}

/// Integer or decimal literal, leniently allowing a leading minus.
fn literal(s: &str) -> Option<Rat> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    let numeric =
        digits.starts_with(|c: char| c.is_ascii_digit()) && digits.chars().all(|c| c.is_ascii_digit() || c == '.');
    numeric.then(|| parse_rational(s).ok()).flatten()
}

struct Builder {
    problem: Problem,
}

impl Builder {
    fn var(&self, name: &str) -> Option<Var> {
        self.problem.variables.iter().position(|v| v == name).map(|k| Var(k + 1))
    }

    fn term(&self, e: &Sexp) -> Result<MPoly, ParseError> {
        match e {
            Sexp::Atom(a, pos) => {
                if let Some(r) = literal(a) {
                    return Ok(MPoly::constant(r));
                }
                self.var(a)
                    .map(MPoly::var)
                    .ok_or_else(|| semantic(*pos, format!("undeclared variable '{a}'")))
            }
            Sexp::List(items, pos) => {
                let (head, args) = match items.split_first() {
                    Some((Sexp::Atom(h, _), args)) => (h.as_str(), args),
                    _ => return Err(syntax(*pos, "expected an operator")),
                };
                if args.is_empty() {
                    return Err(syntax(*pos, format!("'{head}' needs arguments")));
                }
                let mut terms = args.iter().map(|a| self.term(a));
                let first = terms.next().expect("nonempty")?;
                match head {
                    "+" => terms.try_fold(first, |acc, t| Ok(&acc + &t?)),
                    "*" => terms.try_fold(first, |acc, t| Ok(&acc * &t?)),
                    "-" if args.len() == 1 => Ok(-first),
                    "-" => terms.try_fold(first, |acc, t| Ok(&acc - &t?)),
                    "/" => terms.zip(&args[1..]).try_fold(first, |acc, (t, arg)| {
                        let d = t?.constant_value().filter(|d| !d.is_zero());
                        let d = d.ok_or_else(|| semantic(arg.pos(), "division only by nonzero constants"))?;
                        Ok(acc.scale(&(Rat::one() / d)))
                    }),
                    "let" => Err(semantic(*pos, "'let' is not supported")),
                    "forall" | "exists" => Err(semantic(*pos, "quantifiers are not supported")),
                    f => Err(semantic(*pos, format!("unsupported function '{f}'"))),
                }
            }
        }
    }

    /// Conjuncts of an asserted formula.
    fn formula(&mut self, e: &Sexp, negated: bool) -> Result<(), ParseError> {
        let Sexp::List(items, pos) = e else {
            return match e {
                Sexp::Atom(a, pos) if a == "true" && !negated || a == "false" && negated => {
                    let _ = pos;
                    Ok(())
                }
                _ => Err(semantic(e.pos(), "expected a constraint")),
            };
        };
        let (head, args) = match items.split_first() {
            Some((Sexp::Atom(h, _), args)) => (h.as_str(), args),
            _ => return Err(syntax(*pos, "expected a relation")),
        };
        match head {
            "and" if !negated => args.iter().try_for_each(|a| self.formula(a, false)),
            "not" if args.len() == 1 => self.formula(&args[0], !negated),
            "or" | "and" | "=>" | "xor" | "ite" => {
                Err(semantic(*pos, format!("'{head}' is not supported; only conjunctions are")))
            }
            "let" => Err(semantic(*pos, "'let' is not supported")),
            "forall" | "exists" => Err(semantic(*pos, "quantifiers are not supported")),
            _ => {
                let rel: Relation = head.parse().map_err(|_| semantic(*pos, format!("unsupported relation '{head}'")))?;
                if args.len() != 2 {
                    return Err(semantic(*pos, format!("'{head}' expects two arguments")));
                }
                let rel = if negated { rel.negate() } else { rel };
                let p = &self.term(&args[0])? - &self.term(&args[1])?;
                self.problem.constraints.push(Constraint::poly(p, rel));
                Ok(())
            }
        }
    }

    fn sample(&mut self, e: &Sexp) -> Result<(), ParseError> {
        let Sexp::List(items, _) = e else {
            return Err(syntax(e.pos(), "expected a list of values"));
        };
        let values = items
            .iter()
            .map(|v| {
                if let Sexp::Atom(a, _) = v {
                    if let Ok(r) = parse_rational(a) {
                        return Ok(RealAlg::rational(r));
                    }
                }
                self.term(v)?
                    .constant_value()
                    .map(RealAlg::rational)
                    .ok_or_else(|| semantic(v.pos(), "sample values must be constants"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.problem.sample = Some(values);
        Ok(())
    }

    fn command(&mut self, e: &Sexp) -> Result<(), ParseError> {
        let Sexp::List(items, pos) = e else {
            return Err(syntax(e.pos(), "expected a command"));
        };
        let (head, args) = match items.split_first() {
            Some((Sexp::Atom(h, _), args)) => (h.as_str(), args),
            _ => return Err(syntax(*pos, "expected a command name")),
        };
        match (head, args) {
            ("set-logic", [Sexp::Atom(l, lpos)]) => match l.as_str() {
                "QF_NRA" | "QF_LRA" => Ok(()),
                _ => Err(semantic(*lpos, format!("unsupported logic '{l}'"))),
            },
            ("set-info", [Sexp::Atom(k, _), v]) if k == ":sample" => self.sample(v),
            ("set-info" | "set-option", _) => Ok(()),
            ("check-sat" | "exit" | "get-model" | "get-info", _) => Ok(()),
            ("declare-const", [Sexp::Atom(v, vpos), Sexp::Atom(sort, spos)])
            | ("declare-fun", [Sexp::Atom(v, vpos), Sexp::List(_, _), Sexp::Atom(sort, spos)]) => {
                if let ("declare-fun", [_, Sexp::List(params, ppos), _]) = (head, args) {
                    if !params.is_empty() {
                        return Err(semantic(*ppos, "only constants can be declared"));
                    }
                }
                if sort != "Real" {
                    return Err(semantic(*spos, format!("unsupported sort '{sort}'")));
                }
                if self.var(v).is_some() {
                    return Err(semantic(*vpos, format!("'{v}' is declared twice")));
                }
                self.problem.variables.push(v.clone());
                Ok(())
            }
            ("assert", [f]) => self.formula(f, false),
            ("declare-const" | "declare-fun" | "assert" | "set-logic", _) => {
                Err(syntax(*pos, format!("malformed '{head}'")))
            }
            _ => Err(semantic(*pos, format!("unsupported command '{head}'"))),
        }
    }
}

/// Parse a problem; positions in errors are 1-based line and column.
pub fn parse_problem(text: &str) -> Result<Problem, ParseError> {
    let mut b = Builder { problem: Problem::default() };
    for e in parse_sexps(text)? {
        b.command(&e)?;
    }
    if let Some(s) = &b.problem.sample {
        if s.len() != b.problem.variables.len() {
            return Err(semantic(
                Position { line: 1, column: 1 },
                format!("sample has {} values for {} variables", s.len(), b.problem.variables.len()),
            ));
        }
    }
    Ok(b.problem)
}
