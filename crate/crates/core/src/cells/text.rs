//! Parsing of the line-oriented cell format.

use std::str::FromStr;

use thiserror::Error;

use super::{CellDescription, IndexedRoot, SymbolicInterval};
use crate::poly::{parse_poly, parse_poly_with, MPoly, ParseError};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct CellParseError {
    pub line: usize,
    pub message: String,
}

struct Cursor<'a> {
    rest: &'a str,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        self.rest = self.rest.trim_start();
    }

    fn word(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let end = self.rest.find(char::is_whitespace).unwrap_or(self.rest.len());
        if end == 0 {
            return None;
        }
        let (w, r) = self.rest.split_at(end);
        self.rest = r;
        Some(w)
    }

    fn eat(&mut self, prefix: &str) -> bool {
        self.skip_ws();
        match self.rest.strip_prefix(prefix) {
            Some(r) => {
                self.rest = r;
                true
            }
            None => false,
        }
    }

    /// `(root "<poly>" <j>)`
    fn root(&mut self, names: &[String]) -> Result<IndexedRoot, String> {
        if !self.eat("(root") || !self.eat("\"") {
            return Err("expected (root \"<poly>\" <index>)".into());
        }
        let close = self.rest.find('"').ok_or("unterminated polynomial")?;
        let src = &self.rest[..close];
        self.rest = &self.rest[close + 1..];
        self.skip_ws();
        let end = self.rest.find(')').ok_or("missing ')'")?;
        let index: usize = self.rest[..end].trim().parse().map_err(|_| "bad root index")?;
        self.rest = &self.rest[end + 1..];
        let poly = parse_named(src, names).map_err(|e| format!("in polynomial: {e}"))?;
        if poly.is_constant() || index == 0 {
            return Err("indexed root needs a nonconstant polynomial and index >= 1".into());
        }
        Ok(IndexedRoot::new(poly, index))
    }

    fn bound(&mut self, names: &[String], inf: &str) -> Result<Option<IndexedRoot>, String> {
        if self.eat(inf) {
            Ok(None)
        } else {
            self.root(names).map(Some)
        }
    }
}

fn parse_named(src: &str, names: &[String]) -> Result<MPoly, ParseError> {
    if names.is_empty() {
        parse_poly(src)
    } else {
        parse_poly_with(src, names)
    }
}

impl CellDescription {
    /// Parse the format produced by `Display`, with variables named by
    /// `names` (default `x1, x2, ...` when empty).
    pub fn parse_with(src: &str, names: &[String]) -> Result<CellDescription, CellParseError> {
        let mut intervals = Vec::new();
        for (no, line) in src.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| CellParseError { line: no + 1, message };
            let mut cur = Cursor { rest: line };
            if cur.word() != Some("level") {
                return Err(err("expected 'level'".into()));
            }
            let level: usize = cur.word().and_then(|w| w.parse().ok()).ok_or_else(|| err("bad level".into()))?;
            if level != intervals.len() + 1 {
                return Err(err(format!("expected level {}", intervals.len() + 1)));
            }
            let iv = match cur.word() {
                Some("section") => SymbolicInterval::Section(cur.root(names).map_err(err)?),
                Some("sector") => {
                    let lower = cur.bound(names, "-inf").map_err(err)?;
                    let upper = cur.bound(names, "+inf").map_err(err)?;
                    SymbolicInterval::Sector { lower, upper }
                }
                _ => return Err(err("expected 'sector' or 'section'".into())),
            };
            if iv.roots().iter().any(|r| r.level() != level) {
                return Err(err("bound polynomial has the wrong level".into()));
            }
            cur.skip_ws();
            if !cur.rest.is_empty() {
                return Err(err(format!("trailing input '{}'", cur.rest)));
            }
            intervals.push(iv);
        }
        Ok(CellDescription { intervals })
    }
}

impl FromStr for CellDescription {
    type Err = CellParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CellDescription::parse_with(s, &[])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let src = "level 1 sector (root \"5*x1^2 - 2*x1 - 3\" 1) (root \"x1^2 - 1\" 2)\n\
                   level 2 sector (root \"x2^2 + x1^2 - 1\" 1) +inf\n\
                   level 3 section (root \"x3 - x1\" 1)\n";
        let cell: CellDescription = src.parse().unwrap();
        assert_eq!(cell.dim(), 3);
        assert_eq!(cell.to_string(), src);
        assert_eq!(cell.to_string().parse::<CellDescription>().unwrap(), cell);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = "level 1 sector -inf +inf\nlevel 3 sector -inf +inf".parse::<CellDescription>().unwrap_err();
        assert_eq!(e.line, 2);
        assert!("level 1 sector (root \"x2\" 1) +inf".parse::<CellDescription>().is_err());
    }
}
