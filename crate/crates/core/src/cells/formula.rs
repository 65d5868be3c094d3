//! Polynomial constraints and extended constraints against indexed roots.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::IndexedRoot;
use crate::poly::{MPoly, Var};
use crate::realalg::{sign_at, RealAlg};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Lt,
    Le,
    Eq,
    Ne,
    Ge,
    Gt,
}

impl Relation {
    /// Whether `a rel b` holds given `a` compared to `b`.
    pub fn holds(self, ord: Ordering) -> bool {
        match self {
            Relation::Lt => ord == Ordering::Less,
            Relation::Le => ord != Ordering::Greater,
            Relation::Eq => ord == Ordering::Equal,
            Relation::Ne => ord != Ordering::Equal,
            Relation::Ge => ord != Ordering::Less,
            Relation::Gt => ord == Ordering::Greater,
        }
    }

    pub fn holds_sign(self, sign: i32) -> bool {
        self.holds(sign.cmp(&0))
    }

    pub fn negate(self) -> Relation {
        match self {
            Relation::Lt => Relation::Ge,
            Relation::Le => Relation::Gt,
            Relation::Eq => Relation::Ne,
            Relation::Ne => Relation::Eq,
            Relation::Ge => Relation::Lt,
            Relation::Gt => Relation::Le,
        }
    }

    /// The relation with operands swapped.
    pub fn flip(self) -> Relation {
        match self {
            Relation::Lt => Relation::Gt,
            Relation::Le => Relation::Ge,
            Relation::Ge => Relation::Le,
            Relation::Gt => Relation::Lt,
            r => r,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ne => "distinct",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        }
    }
}

impl FromStr for Relation {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "<" => Relation::Lt,
            "<=" => Relation::Le,
            "=" => Relation::Eq,
            "distinct" | "!=" => Relation::Ne,
            ">=" => Relation::Ge,
            ">" => Relation::Gt,
            _ => return Err(format!("unknown relation '{s}'")),
        })
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// `poly rel 0`, or `var rel bound` for an indexed root `bound` in `var`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Constraint {
    Poly { poly: MPoly, rel: Relation },
    Root { var: Var, rel: Relation, bound: IndexedRoot },
}

impl Constraint {
    pub fn poly(poly: MPoly, rel: Relation) -> Self {
        Constraint::Poly { poly, rel }
    }

    pub fn root(var: Var, rel: Relation, bound: IndexedRoot) -> Self {
        assert_eq!(bound.var(), var, "extended constraint must compare its root's variable");
        Constraint::Root { var, rel, bound }
    }

    pub fn level(&self) -> usize {
        match self {
            Constraint::Poly { poly, .. } => poly.level(),
            Constraint::Root { var, .. } => var.0,
        }
    }

    pub fn negate(&self) -> Constraint {
        match self {
            Constraint::Poly { poly, rel } => Constraint::Poly { poly: poly.clone(), rel: rel.negate() },
            Constraint::Root { var, rel, bound } => Constraint::Root { var: *var, rel: rel.negate(), bound: bound.clone() },
        }
    }

    /// The polynomial whose sign or roots decide the constraint.
    pub fn polynomial(&self) -> &MPoly {
        match self {
            Constraint::Poly { poly, .. } => poly,
            Constraint::Root { bound, .. } => &bound.poly,
        }
    }

    /// Truth at a point covering the constraint's level; `None` when the
    /// indexed root is undefined there.
    pub fn holds(&self, point: &[RealAlg]) -> Option<bool> {
        match self {
            Constraint::Poly { poly, rel } => Some(rel.holds_sign(sign_at(poly, point))),
            Constraint::Root { var, rel, bound } => {
                let v = bound.eval(point)?;
                Some(rel.holds(point[var.0 - 1].compare(&v)))
            }
        }
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> ConstraintDisplay<'a> {
        ConstraintDisplay { c: self, names: Some(names) }
    }
}

pub struct ConstraintDisplay<'a> {
    c: &'a Constraint,
    names: Option<&'a [String]>,
}

/// SMT-LIB style: `(<= x1^2 0)` prints the polynomial in infix form.
impl fmt::Display for ConstraintDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.c {
            Constraint::Poly { poly, rel } => match self.names {
                Some(n) => write!(f, "({rel} \"{}\" 0)", poly.display_with(n)),
                None => write!(f, "({rel} \"{poly}\" 0)"),
            },
            Constraint::Root { var, rel, bound } => {
                let name = self.names.and_then(|n| n.get(var.0 - 1).cloned()).unwrap_or_else(|| var.to_string());
                match self.names {
                    Some(n) => write!(f, "({rel} {name} {})", bound.display_with(n)),
                    None => write!(f, "({rel} {name} {bound})"),
                }
            }
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        ConstraintDisplay { c: self, names: None }.fmt(f)
    }
}
