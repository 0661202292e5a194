//! Formula syntax: the AST, derived connectives, printing and parsing.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use core::fmt;

mod parse;
mod scheme;

pub use parse::{parse, ParseError};
pub use scheme::{
    lem_axiom, Combinator, FamilyArity, LemForm, LemParams, SchemeError, SchemeFamily,
};

/// Name of the hole variable in one-place translation schemes.
pub const HOLE: &str = "_";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Const {
    One,
    Zero,
    Top,
    Bottom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UnOp {
    /// `~x`, expands to `x \ B`.
    NegB,
    /// `!x`, expands to `x \ 0`.
    NegZ,
    Box,
    Diamond,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BinOp {
    And,
    Or,
    Fuse,
    LeftRes,
    RightRes,
    /// `x -> y`, expands to `x \ y`.
    Arrow,
    /// `x + y`, expands to `~(~y * ~x)`.
    Oplus,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Var(String),
    Const(Const),
    Unary(UnOp, Box<Formula>),
    Binary(BinOp, Box<Formula>, Box<Formula>),
    /// `x^n`
    Power(Box<Formula>, u32),
    /// `[]_n x`
    BoxN(u32, Box<Formula>),
    /// `<>_n x`
    DiamondN(u32, Box<Formula>),
    /// `n.x`, the n-fold `+`
    Multiple(u32, Box<Formula>),
}

impl Formula {
    pub fn var(name: &str) -> Formula {
        Formula::Var(name.into())
    }
    pub fn one() -> Formula {
        Formula::Const(Const::One)
    }
    pub fn zero() -> Formula {
        Formula::Const(Const::Zero)
    }
    pub fn top() -> Formula {
        Formula::Const(Const::Top)
    }
    pub fn bottom() -> Formula {
        Formula::Const(Const::Bottom)
    }
    pub fn unary(op: UnOp, x: Formula) -> Formula {
        Formula::Unary(op, Box::new(x))
    }
    pub fn binary(op: BinOp, x: Formula, y: Formula) -> Formula {
        Formula::Binary(op, Box::new(x), Box::new(y))
    }
    pub fn negb(x: Formula) -> Formula {
        Self::unary(UnOp::NegB, x)
    }
    pub fn negz(x: Formula) -> Formula {
        Self::unary(UnOp::NegZ, x)
    }
    pub fn boxed(x: Formula) -> Formula {
        Self::unary(UnOp::Box, x)
    }
    pub fn diamond(x: Formula) -> Formula {
        Self::unary(UnOp::Diamond, x)
    }
    pub fn and(x: Formula, y: Formula) -> Formula {
        Self::binary(BinOp::And, x, y)
    }
    pub fn or(x: Formula, y: Formula) -> Formula {
        Self::binary(BinOp::Or, x, y)
    }
    pub fn fuse(x: Formula, y: Formula) -> Formula {
        Self::binary(BinOp::Fuse, x, y)
    }
    pub fn ldiv(x: Formula, y: Formula) -> Formula {
        Self::binary(BinOp::LeftRes, x, y)
    }
    pub fn rdiv(x: Formula, y: Formula) -> Formula {
        Self::binary(BinOp::RightRes, x, y)
    }
    pub fn imp(x: Formula, y: Formula) -> Formula {
        Self::binary(BinOp::Arrow, x, y)
    }
    pub fn oplus(x: Formula, y: Formula) -> Formula {
        Self::binary(BinOp::Oplus, x, y)
    }
    pub fn power(x: Formula, n: u32) -> Formula {
        Formula::Power(Box::new(x), n)
    }
    pub fn box_n(n: u32, x: Formula) -> Formula {
        Formula::BoxN(n, Box::new(x))
    }
    pub fn diamond_n(n: u32, x: Formula) -> Formula {
        Formula::DiamondN(n, Box::new(x))
    }
    pub fn multiple(n: u32, x: Formula) -> Formula {
        Formula::Multiple(n, Box::new(x))
    }
    /// `1 /\ x`
    pub fn unit_meet(x: Formula) -> Formula {
        Self::and(Self::one(), x)
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Var(v) => {
                out.insert(v.clone());
            }
            Formula::Const(_) => {}
            Formula::Binary(_, a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::Unary(_, a)
            | Formula::Power(a, _)
            | Formula::BoxN(_, a)
            | Formula::DiamondN(_, a)
            | Formula::Multiple(_, a) => a.collect_vars(out),
        }
    }

    /// Number of AST nodes, macros counted as one node.
    pub fn node_count(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Const(_) => 1,
            Formula::Binary(_, a, b) => 1 + a.node_count() + b.node_count(),
            Formula::Unary(_, a)
            | Formula::Power(a, _)
            | Formula::BoxN(_, a)
            | Formula::DiamondN(_, a)
            | Formula::Multiple(_, a) => 1 + a.node_count(),
        }
    }

    /// Number of `*` nodes.
    pub fn fusion_count(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Const(_) => 0,
            Formula::Binary(op, a, b) => {
                usize::from(*op == BinOp::Fuse) + a.fusion_count() + b.fusion_count()
            }
            Formula::Unary(_, a)
            | Formula::Power(a, _)
            | Formula::BoxN(_, a)
            | Formula::DiamondN(_, a)
            | Formula::Multiple(_, a) => a.fusion_count(),
        }
    }

    /// True when only variables, constants, `[] <>` and `/\ \/ * \ /` occur.
    pub fn is_plain(&self) -> bool {
        match self {
            Formula::Var(_) | Formula::Const(_) => true,
            Formula::Unary(UnOp::Box | UnOp::Diamond, a) => a.is_plain(),
            Formula::Binary(
                BinOp::And | BinOp::Or | BinOp::Fuse | BinOp::LeftRes | BinOp::RightRes,
                a,
                b,
            ) => a.is_plain() && b.is_plain(),
            _ => false,
        }
    }

    pub fn uses_arrow(&self) -> bool {
        match self {
            Formula::Var(_) | Formula::Const(_) => false,
            Formula::Binary(op, a, b) => *op == BinOp::Arrow || a.uses_arrow() || b.uses_arrow(),
            Formula::Unary(_, a)
            | Formula::Power(a, _)
            | Formula::BoxN(_, a)
            | Formula::DiamondN(_, a)
            | Formula::Multiple(_, a) => a.uses_arrow(),
        }
    }

    /// Rewrite every derived connective and macro into the plain signature.
    pub fn expand(&self) -> Formula {
        match self {
            Formula::Var(_) | Formula::Const(_) => self.clone(),
            Formula::Unary(op, a) => {
                let a = a.expand();
                match op {
                    UnOp::NegB => Formula::ldiv(a, Formula::bottom()),
                    UnOp::NegZ => Formula::ldiv(a, Formula::zero()),
                    UnOp::Box => Formula::boxed(a),
                    UnOp::Diamond => Formula::diamond(a),
                }
            }
            Formula::Binary(op, a, b) => {
                let (a, b) = (a.expand(), b.expand());
                match op {
                    BinOp::Arrow => Formula::ldiv(a, b),
                    BinOp::Oplus => expand_oplus(a, b),
                    _ => Formula::binary(*op, a, b),
                }
            }
            Formula::Power(a, n) => {
                let a = a.expand();
                if *n == 0 {
                    return Formula::one();
                }
                let mut acc = a.clone();
                for _ in 1..*n {
                    acc = Formula::fuse(acc, a.clone());
                }
                acc
            }
            Formula::BoxN(n, a) => iterate_modal(a.expand(), *n, BinOp::And, Formula::boxed),
            Formula::DiamondN(n, a) => iterate_modal(a.expand(), *n, BinOp::Or, Formula::diamond),
            Formula::Multiple(n, a) => {
                let a = a.expand();
                let mut acc = Formula::bottom();
                for _ in 0..*n {
                    acc = expand_oplus(a.clone(), acc);
                }
                acc
            }
        }
    }

    /// Simultaneous substitution of formulas for variables.
    pub fn substitute(&self, map: &BTreeMap<String, Formula>) -> Formula {
        match self {
            Formula::Var(v) => map.get(v).cloned().unwrap_or_else(|| self.clone()),
            Formula::Const(_) => self.clone(),
            Formula::Unary(op, a) => Formula::unary(*op, a.substitute(map)),
            Formula::Binary(op, a, b) => Formula::binary(*op, a.substitute(map), b.substitute(map)),
            Formula::Power(a, n) => Formula::power(a.substitute(map), *n),
            Formula::BoxN(n, a) => Formula::box_n(*n, a.substitute(map)),
            Formula::DiamondN(n, a) => Formula::diamond_n(*n, a.substitute(map)),
            Formula::Multiple(n, a) => Formula::multiple(*n, a.substitute(map)),
        }
    }

    pub fn substitute_var(&self, name: &str, by: &Formula) -> Formula {
        let mut map = BTreeMap::new();
        map.insert(String::from(name), by.clone());
        self.substitute(&map)
    }

    /// Plug `arg` into the hole `_` of a one-place scheme.
    pub fn fill_hole(&self, arg: &Formula) -> Formula {
        self.substitute_var(HOLE, arg)
    }
}

fn expand_oplus(a: Formula, b: Formula) -> Formula {
    let neg = |x| Formula::ldiv(x, Formula::bottom());
    neg(Formula::fuse(neg(b), neg(a)))
}

fn iterate_modal(a: Formula, n: u32, join: BinOp, op: fn(Formula) -> Formula) -> Formula {
    let mut acc = a.clone();
    let mut layer = a;
    for _ in 0..n {
        layer = op(layer);
        acc = Formula::binary(join, acc, layer.clone());
    }
    acc
}

impl Const {
    pub fn token(self) -> &'static str {
        match self {
            Const::One => "1",
            Const::Zero => "0",
            Const::Top => "T",
            Const::Bottom => "B",
        }
    }
}

impl BinOp {
    pub fn token(self) -> &'static str {
        match self {
            BinOp::And => "/\\",
            BinOp::Or => "\\/",
            BinOp::Fuse => "*",
            BinOp::LeftRes => "\\",
            BinOp::RightRes => "/",
            BinOp::Arrow => "->",
            BinOp::Oplus => "+",
        }
    }

    fn level(self) -> u8 {
        match self {
            BinOp::Arrow | BinOp::LeftRes | BinOp::RightRes => 0,
            BinOp::Or => 1,
            BinOp::And => 2,
            BinOp::Oplus => 3,
            BinOp::Fuse => 4,
        }
    }

    fn is_residual(self) -> bool {
        self.level() == 0
    }
}

const PREFIX_LEVEL: u8 = 5;
const POSTFIX_LEVEL: u8 = 6;
const ATOM_LEVEL: u8 = 7;

impl Formula {
    fn level(&self) -> u8 {
        match self {
            Formula::Var(_) | Formula::Const(_) => ATOM_LEVEL,
            Formula::Power(..) => POSTFIX_LEVEL,
            Formula::Unary(..) | Formula::BoxN(..) | Formula::DiamondN(..) | Formula::Multiple(..) => {
                PREFIX_LEVEL
            }
            Formula::Binary(op, ..) => op.level(),
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min_level: u8) -> fmt::Result {
        if self.level() < min_level {
            f.write_str("(")?;
            self.fmt_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Formula::Var(v) => f.write_str(v),
            Formula::Const(c) => f.write_str(c.token()),
            Formula::Unary(op, a) => {
                f.write_str(match op {
                    UnOp::NegB => "~",
                    UnOp::NegZ => "!",
                    UnOp::Box => "[]",
                    UnOp::Diamond => "<>",
                })?;
                a.fmt_prefix_operand(f)
            }
            Formula::BoxN(n, a) => {
                write!(f, "[]_{n} ")?;
                a.fmt_at(f, PREFIX_LEVEL)
            }
            Formula::DiamondN(n, a) => {
                write!(f, "<>_{n} ")?;
                a.fmt_at(f, PREFIX_LEVEL)
            }
            Formula::Multiple(n, a) => {
                write!(f, "{n}.")?;
                a.fmt_prefix_operand(f)
            }
            Formula::Power(a, n) => {
                a.fmt_at(f, POSTFIX_LEVEL)?;
                write!(f, "^{n}")
            }
            Formula::Binary(op, a, b) => {
                let lvl = op.level();
                if op.is_residual() {
                    a.fmt_at(f, 1)?;
                    write!(f, " {} ", op.token())?;
                    match &**b {
                        Formula::Binary(inner, ..) if inner == op => b.fmt_at(f, 0),
                        _ => b.fmt_at(f, 1),
                    }
                } else {
                    a.fmt_at(f, lvl)?;
                    write!(f, " {} ", op.token())?;
                    b.fmt_at(f, lvl + 1)
                }
            }
        }
    }

    /// Operand of `~ ! [] <> n.`: keep prefix chains readable without spaces.
    fn fmt_prefix_operand(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if matches!(self, Formula::BoxN(..) | Formula::DiamondN(..)) {
            f.write_str(" ")?;
        }
        self.fmt_at(f, PREFIX_LEVEL)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}
