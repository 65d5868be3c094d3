//! Parser for the textual form of properties.

use super::{Property, RootOrdering};
use crate::cells::{IndexedRoot, SymbolicInterval};
use crate::poly::{parse_poly, MPoly};
use crate::realalg::RealAlg;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<(), String> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(format!("expected '{tok}' at offset {}", self.pos))
        }
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let r = self.rest();
        let end = r.find(|c: char| !(c.is_ascii_alphanumeric() || c == '-' || c == '+')).unwrap_or(r.len());
        self.pos += end;
        &r[..end]
    }

    fn number(&mut self) -> Result<usize, String> {
        self.skip_ws();
        let r = self.rest();
        let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
        self.pos += end;
        r[..end].parse().map_err(|_| format!("expected a number at offset {}", self.pos))
    }

    fn quoted(&mut self) -> Result<&'a str, String> {
        self.expect("\"")?;
        let r = self.rest();
        let end = r.find('"').ok_or("unterminated string")?;
        self.pos += end + 1;
        Ok(&r[..end])
    }

    fn poly(&mut self) -> Result<MPoly, String> {
        let src = self.quoted()?;
        parse_poly(src).map_err(|e| e.to_string())
    }

    /// A parenthesized group, returned verbatim.
    fn group(&mut self) -> Result<&'a str, String> {
        self.skip_ws();
        let r = self.rest();
        let (mut depth, mut quoted) = (0usize, false);
        for (k, c) in r.char_indices() {
            match c {
                '"' => quoted = !quoted,
                '(' if !quoted => depth += 1,
                ')' if !quoted => {
                    depth -= 1;
                    if depth == 0 {
                        self.pos += k + 1;
                        return Ok(&r[..=k]);
                    }
                }
                _ => {}
            }
        }
        Err("unbalanced parentheses".into())
    }

    fn root(&mut self) -> Result<IndexedRoot, String> {
        self.expect("(root")?;
        let p = self.poly()?;
        let j = self.number()?;
        self.expect(")")?;
        if p.is_constant() || j == 0 {
            return Err("malformed indexed root".into());
        }
        Ok(IndexedRoot::new(p, j))
    }

    fn bound(&mut self, inf: &str) -> Result<Option<IndexedRoot>, String> {
        if self.eat(inf) {
            Ok(None)
        } else {
            self.root().map(Some)
        }
    }

    fn interval(&mut self) -> Result<SymbolicInterval, String> {
        match self.ident() {
            "section" => Ok(SymbolicInterval::Section(self.root()?)),
            "sector" => {
                let lower = self.bound("-inf")?;
                let upper = self.bound("+inf")?;
                Ok(SymbolicInterval::Sector { lower, upper })
            }
            w => Err(format!("expected an interval, found '{w}'")),
        }
    }

    fn tuple(&mut self) -> Result<Vec<RealAlg>, String> {
        self.expect("(")?;
        let mut out = Vec::new();
        if self.eat(")") {
            return Ok(out);
        }
        loop {
            self.skip_ws();
            let item = if self.rest().starts_with('(') {
                self.group()?
            } else {
                let r = self.rest();
                let end = r.find([',', ')']).ok_or("unterminated tuple")?;
                self.pos += end;
                &r[..end]
            };
            out.push(RealAlg::parse(item)?);
            if self.eat(")") {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    fn ordering(&mut self) -> Result<RootOrdering, String> {
        self.expect("[")?;
        let mut pairs = Vec::new();
        if !self.eat("]") {
            loop {
                let a = self.root()?;
                self.expect("<=")?;
                let b = self.root()?;
                pairs.push((a, b));
                if self.eat("]") {
                    break;
                }
                self.expect(",")?;
            }
        }
        RootOrdering::new(pairs).map_err(|e| e.to_string())
    }
}

pub(super) fn parse_property(src: &str) -> Result<Property, String> {
    let mut p = Parser { src, pos: 0 };
    let name = p.ident();
    p.expect("(")?;
    let prop = match name {
        "sample" => Property::Sample(p.tuple()?),
        "ordinv" => Property::OrdInv(p.poly()?),
        "sgninv" => Property::SgnInv(p.poly()?),
        "nonnull" => Property::NonNull(p.poly()?),
        "del" => Property::AnDel(p.poly()?),
        "ansub" => Property::AnSub(p.number()?),
        "connected" => Property::Connected(p.number()?),
        "repr" => {
            let iv = p.interval()?;
            p.expect(",")?;
            Property::Repr(iv, p.tuple()?)
        }
        "irord" => {
            let ord = p.ordering()?;
            p.expect(",")?;
            Property::IrOrd(ord, p.tuple()?)
        }
        "holds" => {
            let level = p.number()?;
            p.expect(",")?;
            Property::Holds(level, p.interval()?)
        }
        _ => return Err(format!("unknown property '{name}'")),
    };
    p.expect(")")?;
    p.skip_ws();
    if !p.rest().is_empty() {
        return Err(format!("trailing input '{}'", p.rest()));
    }
    Ok(prop)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use crate::realalg::isolate_real_roots;

    #[test]
    fn properties_roundtrip_through_text() {
        let sqrt2 = isolate_real_roots(&parse_poly("x1^2 - 2").unwrap())[1].clone();
        let s = vec![RealAlg::rational(rat(1, 8)), sqrt2];
        let r1 = IndexedRoot::new(parse_poly("x3 - x1").unwrap(), 1);
        let r2 = IndexedRoot::new(parse_poly("x3^2 + x2 - 1").unwrap(), 2);
        let ord = RootOrdering::new([(r1.clone(), r2.clone())]).unwrap();
        let props = vec![
            Property::Sample(s.clone()),
            Property::Sample(Vec::new()),
            Property::ordinv(&parse_poly("-4").unwrap()),
            Property::sgninv(&parse_poly("2*x1 - 6").unwrap()),
            Property::andel(&parse_poly("x2^2 - x1").unwrap()),
            Property::NonNull(parse_poly("x2*x1 + 1").unwrap()),
            Property::AnSub(3),
            Property::Connected(0),
            Property::Repr(SymbolicInterval::sector(Some(r1.clone()), None), s.clone()),
            Property::IrOrd(ord, s.clone()),
            Property::IrOrd(RootOrdering::default(), Vec::new()),
            Property::Holds(3, SymbolicInterval::Section(r2)),
            Property::Holds(1, SymbolicInterval::full()),
        ];
        for q in props {
            let text = q.to_string();
            let back: Property = text.parse().unwrap_or_else(|e| panic!("{text}: {e}"));
            assert_eq!(back, q, "{text}");
        }
        assert_eq!(Property::ordinv(&parse_poly("-4").unwrap()).to_string(), "ordinv(\"4\")");
    }

    #[test]
    fn malformed_properties_are_rejected() {
        for bad in ["sample((1, 2)", "ordinv(x1)", "frob(1)", "holds(1, sector)", "ansub(1) x"] {
            assert!(bad.parse::<Property>().is_err(), "{bad}");
        }
    }
}
