use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{BinOp, Const, Formula, UnOp};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken(String),
    UnexpectedEnd,
    BadNumber,
    /// `\`, `/` and `->` chained without parentheses.
    MixedResiduals,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at position {}: ", self.position)?;
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::UnexpectedToken(t) => write!(f, "unexpected token {t}"),
            ParseErrorKind::UnexpectedEnd => f.write_str("unexpected end of input"),
            ParseErrorKind::BadNumber => f.write_str("number out of range"),
            ParseErrorKind::MixedResiduals => {
                f.write_str("ambiguous residual mixing; parenthesize `\\`, `/` and `->`")
            }
        }
    }
}

impl core::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Const(Const),
    LParen,
    RParen,
    Prefix(UnOp),
    BoxN(u32),
    DiamondN(u32),
    Mult(u32),
    Caret,
    Num(u32),
    Bin(BinOp),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Const(c) => write!(f, "`{}`", c.token()),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Prefix(UnOp::NegB) => f.write_str("`~`"),
            Tok::Prefix(UnOp::NegZ) => f.write_str("`!`"),
            Tok::Prefix(UnOp::Box) => f.write_str("`[]`"),
            Tok::Prefix(UnOp::Diamond) => f.write_str("`<>`"),
            Tok::BoxN(n) => write!(f, "`[]_{n}`"),
            Tok::DiamondN(n) => write!(f, "`<>_{n}`"),
            Tok::Mult(n) => write!(f, "`{n}.`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::Num(n) => write!(f, "`{n}`"),
            Tok::Bin(op) => write!(f, "`{}`", op.token()),
        }
    }
}

fn err(position: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { position, kind }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out: Vec<(usize, Tok)> = Vec::new();
    let mut i = 0;
    let number = |i: &mut usize| -> Result<u32, ParseError> {
        let start = *i;
        while *i < bytes.len() && bytes[*i].is_ascii_digit() {
            *i += 1;
        }
        text[start..*i].parse().map_err(|_| err(start, ParseErrorKind::BadNumber))
    };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let rest = &text[i..];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let tok = if rest.starts_with("->") {
            i += 2;
            Tok::Bin(BinOp::Arrow)
        } else if rest.starts_with("\\/") {
            i += 2;
            Tok::Bin(BinOp::Or)
        } else if rest.starts_with("/\\") {
            i += 2;
            Tok::Bin(BinOp::And)
        } else if rest.starts_with("[]") || rest.starts_with("<>") {
            let is_box = c == b'[';
            i += 2;
            if i + 1 < bytes.len() && bytes[i] == b'_' && bytes[i + 1].is_ascii_digit() {
                i += 1;
                let n = number(&mut i)?;
                if is_box {
                    Tok::BoxN(n)
                } else {
                    Tok::DiamondN(n)
                }
            } else if is_box {
                Tok::Prefix(UnOp::Box)
            } else {
                Tok::Prefix(UnOp::Diamond)
            }
        } else if c.is_ascii_digit() {
            let n = number(&mut i)?;
            if i < bytes.len() && bytes[i] == b'.' {
                i += 1;
                Tok::Mult(n)
            } else if matches!(out.last(), Some((_, Tok::Caret))) {
                Tok::Num(n)
            } else if &text[start..i] == "1" {
                Tok::Const(Const::One)
            } else if &text[start..i] == "0" {
                Tok::Const(Const::Zero)
            } else {
                return Err(err(start, ParseErrorKind::UnexpectedToken(text[start..i].into())));
            }
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            match &text[start..i] {
                "T" => Tok::Const(Const::Top),
                "B" => Tok::Const(Const::Bottom),
                name => Tok::Ident(name.into()),
            }
        } else {
            i += 1;
            match c {
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b'~' => Tok::Prefix(UnOp::NegB),
                b'!' => Tok::Prefix(UnOp::NegZ),
                b'^' => Tok::Caret,
                b'*' => Tok::Bin(BinOp::Fuse),
                b'+' => Tok::Bin(BinOp::Oplus),
                b'\\' => Tok::Bin(BinOp::LeftRes),
                b'/' => Tok::Bin(BinOp::RightRes),
                _ => {
                    let ch = rest.chars().next().unwrap_or('?');
                    return Err(err(start, ParseErrorKind::UnexpectedChar(ch)));
                }
            }
        };
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            Some(t) => err(self.offset(), ParseErrorKind::UnexpectedToken(alloc::format!("{t}"))),
            None => err(self.end, ParseErrorKind::UnexpectedEnd),
        }
    }

    /// Lowest tier. Returns the formula and, if its top node is an
    /// unparenthesized residual, that operator.
    fn residual(&mut self) -> Result<(Formula, Option<BinOp>), ParseError> {
        let lhs = self.join()?;
        let op = match self.peek() {
            Some(Tok::Bin(op)) if op.is_residual() => *op,
            _ => return Ok((lhs, None)),
        };
        self.pos += 1;
        let rhs_at = self.offset();
        let (rhs, rhs_op) = self.residual()?;
        if let Some(inner) = rhs_op {
            if inner != op {
                let at = self.mixed_position(rhs_at, inner).unwrap_or(rhs_at);
                return Err(err(at, ParseErrorKind::MixedResiduals));
            }
        }
        Ok((Formula::binary(op, lhs, rhs), Some(op)))
    }

    fn mixed_position(&self, from: usize, op: BinOp) -> Option<usize> {
        self.toks
            .iter()
            .find(|(o, t)| *o >= from && *t == Tok::Bin(op))
            .map(|(o, _)| *o)
    }

    fn left_assoc(
        &mut self,
        op: BinOp,
        next: fn(&mut Parser) -> Result<Formula, ParseError>,
    ) -> Result<Formula, ParseError> {
        let mut acc = next(self)?;
        while self.peek() == Some(&Tok::Bin(op)) {
            self.pos += 1;
            let rhs = next(self)?;
            acc = Formula::binary(op, acc, rhs);
        }
        Ok(acc)
    }

    fn join(&mut self) -> Result<Formula, ParseError> {
        self.left_assoc(BinOp::Or, Parser::meet)
    }

    fn meet(&mut self) -> Result<Formula, ParseError> {
        self.left_assoc(BinOp::And, Parser::oplus)
    }

    fn oplus(&mut self) -> Result<Formula, ParseError> {
        self.left_assoc(BinOp::Oplus, Parser::fuse)
    }

    fn fuse(&mut self) -> Result<Formula, ParseError> {
        self.left_assoc(BinOp::Fuse, Parser::prefix)
    }

    fn prefix(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Prefix(op)) => {
                let op = *op;
                self.pos += 1;
                Ok(Formula::unary(op, self.prefix()?))
            }
            Some(Tok::BoxN(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(Formula::box_n(n, self.prefix()?))
            }
            Some(Tok::DiamondN(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(Formula::diamond_n(n, self.prefix()?))
            }
            Some(Tok::Mult(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(Formula::multiple(n, self.prefix()?))
            }
            _ => self.postfix(),
        }
    }

    fn postfix(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.atom()?;
        while self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.bump() {
                Some(Tok::Num(n)) => acc = Formula::power(acc, n),
                _ => {
                    self.pos -= 1;
                    return Err(self.unexpected());
                }
            }
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Formula::Var(name))
            }
            Some(Tok::Const(c)) => {
                self.pos += 1;
                Ok(Formula::Const(c))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let (inner, _) = self.residual()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.unexpected());
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// Parse a formula.
///
/// Precedence from tightest: postfix `^n`; prefix `~ ! [] <> []_n <>_n n.`;
/// `*`; `+`; `/\`; `\/`; then `->`, `\`, `/` (right-associative, not mixable
/// without parentheses). `_` is the hole of a translation scheme.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len() };
    let (f, _) = p.residual()?;
    if p.pos < p.toks.len() {
        return Err(p.unexpected());
    }
    Ok(f)
}

impl core::str::FromStr for Formula {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
