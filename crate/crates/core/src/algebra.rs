//! Finite algebras as total operation tables over `0..n`.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::formula::{BinOp, Const, Formula, UnOp};

/// The operation symbols of the full substructural/modal signature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Meet,
    Join,
    Fusion,
    LeftRes,
    RightRes,
    One,
    Zero,
    Top,
    Bottom,
    Box,
    Diamond,
}

impl Symbol {
    pub const ALL: [Symbol; 11] = [
        Symbol::Meet,
        Symbol::Join,
        Symbol::Fusion,
        Symbol::LeftRes,
        Symbol::RightRes,
        Symbol::One,
        Symbol::Zero,
        Symbol::Top,
        Symbol::Bottom,
        Symbol::Box,
        Symbol::Diamond,
    ];

    pub fn arity(self) -> usize {
        match self {
            Symbol::One | Symbol::Zero | Symbol::Top | Symbol::Bottom => 0,
            Symbol::Box | Symbol::Diamond => 1,
            _ => 2,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Symbol::Meet => "/\\",
            Symbol::Join => "\\/",
            Symbol::Fusion => "*",
            Symbol::LeftRes => "\\",
            Symbol::RightRes => "/",
            Symbol::One => "1",
            Symbol::Zero => "0",
            Symbol::Top => "T",
            Symbol::Bottom => "B",
            Symbol::Box => "[]",
            Symbol::Diamond => "<>",
        }
    }

    pub fn from_token(token: &str) -> Option<Symbol> {
        Symbol::ALL.into_iter().find(|s| s.token() == token)
    }

    fn slot(self) -> usize {
        self as usize
    }

    pub fn of_const(c: Const) -> Symbol {
        match c {
            Const::One => Symbol::One,
            Const::Zero => Symbol::Zero,
            Const::Top => Symbol::Top,
            Const::Bottom => Symbol::Bottom,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// An ordered list of distinct symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    symbols: Vec<Symbol>,
}

impl Signature {
    pub fn new(symbols: &[Symbol]) -> Result<Signature, AlgebraError> {
        for (i, s) in symbols.iter().enumerate() {
            if symbols[..i].contains(s) {
                return Err(AlgebraError::DuplicateSymbol(*s));
            }
        }
        Ok(Signature { symbols: symbols.to_vec() })
    }

    /// `/\ \/ T B`
    pub fn lattice() -> Signature {
        Signature { symbols: vec![Symbol::Meet, Symbol::Join, Symbol::Top, Symbol::Bottom] }
    }

    /// `/\ \/ * \ / 1 0 T B`
    pub fn fl() -> Signature {
        Signature { symbols: Symbol::ALL[..9].to_vec() }
    }

    /// The FL signature plus `[]` and `<>`.
    pub fn modal() -> Signature {
        Signature { symbols: Symbol::ALL.to_vec() }
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.symbols.contains(&s)
    }

    pub fn contains_all(&self, other: &Signature) -> bool {
        other.symbols.iter().all(|s| self.contains(*s))
    }

    /// Same symbols, order ignored.
    pub fn same_symbols(&self, other: &Signature) -> bool {
        self.contains_all(other) && other.contains_all(self)
    }
}

/// Assignment of carrier elements to variable names.
pub type Valuation = BTreeMap<String, usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraError {
    EmptyCarrier,
    DuplicateSymbol(Symbol),
    MissingTable(Symbol),
    TableShape { symbol: Symbol, expected: usize, found: usize },
    EntryOutOfRange { symbol: Symbol, index: usize, value: usize },
    LabelCount { expected: usize, found: usize },
    UnknownSymbol(Symbol),
    UnboundVariable(String),
    ArrowNotCommutative,
    NotAPartialOrder { x: usize, y: usize },
    SignatureMismatch,
    NotCompatible { symbol: Symbol },
    PartitionSize { expected: usize, found: usize },
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::EmptyCarrier => f.write_str("carrier must be non-empty"),
            AlgebraError::DuplicateSymbol(s) => write!(f, "symbol `{s}` declared twice"),
            AlgebraError::MissingTable(s) => write!(f, "no table for symbol `{s}`"),
            AlgebraError::TableShape { symbol, expected, found } => {
                write!(f, "table `{symbol}` has {found} entries, expected {expected}")
            }
            AlgebraError::EntryOutOfRange { symbol, index, value } => {
                write!(f, "table `{symbol}` entry {index} is {value}, outside the carrier")
            }
            AlgebraError::LabelCount { expected, found } => {
                write!(f, "{found} labels given for {expected} elements")
            }
            AlgebraError::UnknownSymbol(s) => write!(f, "symbol `{s}` is not in the signature"),
            AlgebraError::UnboundVariable(v) => write!(f, "variable `{v}` has no value"),
            AlgebraError::ArrowNotCommutative => {
                f.write_str("`->` used in an algebra whose fusion is not commutative")
            }
            AlgebraError::NotAPartialOrder { x, y } => {
                write!(f, "meet does not induce a partial order (elements {x}, {y})")
            }
            AlgebraError::SignatureMismatch => f.write_str("signatures differ"),
            AlgebraError::NotCompatible { symbol } => {
                write!(f, "partition is not compatible with `{symbol}`")
            }
            AlgebraError::PartitionSize { expected, found } => {
                write!(f, "partition covers {found} elements, carrier has {expected}")
            }
        }
    }
}

impl core::error::Error for AlgebraError {}

/// A finite algebra: carrier `0..size`, one total table per symbol.
///
/// Binary tables are row-major (`x * size + y`), unary tables have `size`
/// entries and constants one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    name: String,
    size: usize,
    labels: Option<Vec<String>>,
    signature: Signature,
    tables: [Option<Vec<usize>>; 11],
}

fn table_len(symbol: Symbol, size: usize) -> usize {
    size.pow(symbol.arity() as u32)
}

impl FiniteAlgebra {
    pub fn new(
        name: &str,
        size: usize,
        signature: Signature,
        tables: Vec<(Symbol, Vec<usize>)>,
    ) -> Result<FiniteAlgebra, AlgebraError> {
        if size == 0 {
            return Err(AlgebraError::EmptyCarrier);
        }
        let mut slots: [Option<Vec<usize>>; 11] = Default::default();
        for (symbol, table) in tables {
            if !signature.contains(symbol) {
                return Err(AlgebraError::UnknownSymbol(symbol));
            }
            let expected = table_len(symbol, size);
            if table.len() != expected {
                return Err(AlgebraError::TableShape { symbol, expected, found: table.len() });
            }
            if let Some((index, &value)) = table.iter().enumerate().find(|(_, &v)| v >= size) {
                return Err(AlgebraError::EntryOutOfRange { symbol, index, value });
            }
            if slots[symbol.slot()].is_some() {
                return Err(AlgebraError::DuplicateSymbol(symbol));
            }
            slots[symbol.slot()] = Some(table);
        }
        for &s in signature.symbols() {
            if slots[s.slot()].is_none() {
                return Err(AlgebraError::MissingTable(s));
            }
        }
        Ok(FiniteAlgebra { name: name.into(), size, labels: None, signature, tables: slots })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<FiniteAlgebra, AlgebraError> {
        if labels.len() != self.size {
            return Err(AlgebraError::LabelCount { expected: self.size, found: labels.len() });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> FiniteAlgebra {
        self.labels = None;
        self
    }

    pub fn renamed(mut self, name: &str) -> FiniteAlgebra {
        self.name = name.into();
        self
    }

    /// Add or replace one table; a new symbol is appended to the signature.
    pub fn with_table(mut self, symbol: Symbol, table: Vec<usize>) -> Result<FiniteAlgebra, AlgebraError> {
        let expected = table_len(symbol, self.size);
        if table.len() != expected {
            return Err(AlgebraError::TableShape { symbol, expected, found: table.len() });
        }
        if let Some((index, &value)) = table.iter().enumerate().find(|(_, &v)| v >= self.size) {
            return Err(AlgebraError::EntryOutOfRange { symbol, index, value });
        }
        if !self.signature.contains(symbol) {
            self.signature.symbols.push(symbol);
        }
        self.tables[symbol.slot()] = Some(table);
        Ok(self)
    }

    /// Restrict to a subset of the signature.
    pub fn reduct(&self, signature: Signature) -> Result<FiniteAlgebra, AlgebraError> {
        let tables = signature
            .symbols()
            .iter()
            .map(|&s| self.table(s).map(|t| (s, t.to_vec())).ok_or(AlgebraError::MissingTable(s)))
            .collect::<Result<Vec<_>, _>>()?;
        let a = FiniteAlgebra::new(&self.name, self.size, signature, tables)?;
        Ok(FiniteAlgebra { labels: self.labels.clone(), ..a })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display label of an element, its index if unlabeled.
    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => format!("{x}"),
        }
    }

    pub fn has(&self, s: Symbol) -> bool {
        self.tables[s.slot()].is_some()
    }

    pub fn table(&self, s: Symbol) -> Option<&[usize]> {
        self.tables[s.slot()].as_deref()
    }

    fn t(&self, s: Symbol) -> &[usize] {
        match &self.tables[s.slot()] {
            Some(t) => t,
            None => panic!("algebra `{}` has no `{s}` table", self.name),
        }
    }

    pub fn constant(&self, s: Symbol) -> usize {
        self.t(s)[0]
    }

    pub fn unary(&self, s: Symbol, x: usize) -> usize {
        self.t(s)[x]
    }

    pub fn binary(&self, s: Symbol, x: usize, y: usize) -> usize {
        self.t(s)[x * self.size + y]
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.binary(Symbol::Meet, x, y)
    }
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.binary(Symbol::Join, x, y)
    }
    pub fn fuse(&self, x: usize, y: usize) -> usize {
        self.binary(Symbol::Fusion, x, y)
    }
    /// `x \ y`
    pub fn ldiv(&self, x: usize, y: usize) -> usize {
        self.binary(Symbol::LeftRes, x, y)
    }
    /// `x / y`
    pub fn rdiv(&self, x: usize, y: usize) -> usize {
        self.binary(Symbol::RightRes, x, y)
    }
    pub fn one(&self) -> usize {
        self.constant(Symbol::One)
    }
    pub fn zero(&self) -> usize {
        self.constant(Symbol::Zero)
    }
    pub fn top(&self) -> usize {
        self.constant(Symbol::Top)
    }
    pub fn bottom(&self) -> usize {
        self.constant(Symbol::Bottom)
    }
    pub fn boxed(&self, x: usize) -> usize {
        self.unary(Symbol::Box, x)
    }
    pub fn diamond(&self, x: usize) -> usize {
        self.unary(Symbol::Diamond, x)
    }
    /// `x \ B`
    pub fn neg(&self, x: usize) -> usize {
        self.ldiv(x, self.bottom())
    }

    /// `x <= y` read off the meet table.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.meet(x, y) == x
    }

    pub fn is_commutative(&self) -> bool {
        match self.table(Symbol::Fusion) {
            None => true,
            Some(_) => (0..self.size).all(|x| (0..x).all(|y| self.fuse(x, y) == self.fuse(y, x))),
        }
    }

    /// Apply a symbol to an argument list of the right arity.
    pub fn apply(&self, s: Symbol, args: &[usize]) -> usize {
        match args {
            [] => self.constant(s),
            [x] => self.unary(s, *x),
            [x, y] => self.binary(s, *x, *y),
            _ => unreachable!("no symbol has arity above 2"),
        }
    }

    /// The lattice order; errors if `/\` is not a semilattice operation.
    pub fn order_from_meet(&self) -> Result<OrderRelation, AlgebraError> {
        if !self.has(Symbol::Meet) {
            return Err(AlgebraError::MissingTable(Symbol::Meet));
        }
        let n = self.size;
        for x in 0..n {
            if self.meet(x, x) != x {
                return Err(AlgebraError::NotAPartialOrder { x, y: x });
            }
            for y in 0..n {
                if self.meet(x, y) != self.meet(y, x) {
                    return Err(AlgebraError::NotAPartialOrder { x, y });
                }
                for z in 0..n {
                    if self.meet(self.meet(x, y), z) != self.meet(x, self.meet(y, z)) {
                        return Err(AlgebraError::NotAPartialOrder { x, y });
                    }
                }
            }
        }
        let pairs = (0..n * n).map(|i| self.leq(i / n, i % n)).collect();
        Ok(OrderRelation { size: n, pairs })
    }

    /// Evaluate a formula; derived connectives are expanded first.
    pub fn evaluate(&self, phi: &Formula, v: &Valuation) -> Result<usize, AlgebraError> {
        let term = Term::compile(phi);
        self.check_term(&term)?;
        let args = term
            .vars()
            .iter()
            .map(|x| v.get(x).copied().ok_or_else(|| AlgebraError::UnboundVariable(x.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(&bad) = args.iter().find(|&&a| a >= self.size) {
            return Err(AlgebraError::EntryOutOfRange { symbol: Symbol::One, index: 0, value: bad });
        }
        Ok(self.eval_term(&term, &args))
    }

    /// Check that every symbol of a compiled term has a table here.
    pub fn check_term(&self, term: &Term) -> Result<(), AlgebraError> {
        if term.uses_arrow && !self.is_commutative() {
            return Err(AlgebraError::ArrowNotCommutative);
        }
        for node in &term.nodes {
            let s = match node {
                Node::Var(_) => continue,
                Node::Const(s) | Node::Unary(s, _) | Node::Binary(s, _, _) => *s,
            };
            if !self.has(s) {
                return Err(AlgebraError::UnknownSymbol(s));
            }
        }
        Ok(())
    }

    /// Evaluate a term checked with [`FiniteAlgebra::check_term`]; `args`
    /// holds the values of `term.vars()` in order.
    pub fn eval_term(&self, term: &Term, args: &[usize]) -> usize {
        let mut scratch = Vec::with_capacity(term.nodes.len());
        self.eval_term_with(term, args, &mut scratch)
    }

    /// As [`FiniteAlgebra::eval_term`] reusing a scratch buffer.
    pub fn eval_term_with(&self, term: &Term, args: &[usize], scratch: &mut Vec<usize>) -> usize {
        scratch.clear();
        for node in &term.nodes {
            let v = match *node {
                Node::Var(i) => args[i],
                Node::Const(s) => self.constant(s),
                Node::Unary(s, a) => self.unary(s, scratch[a]),
                Node::Binary(s, a, b) => self.binary(s, scratch[a], scratch[b]),
            };
            scratch.push(v);
        }
        *scratch.last().expect("terms are non-empty")
    }

    /// Componentwise product; `(a, b)` is element `a * |B| + b`.
    pub fn direct_product(&self, other: &FiniteAlgebra) -> Result<Product, AlgebraError> {
        if !self.signature.same_symbols(&other.signature) {
            return Err(AlgebraError::SignatureMismatch);
        }
        let (n, m) = (self.size, other.size);
        let size = n * m;
        let pair = |i: usize| (i / m, i % m);
        let mut tables = Vec::new();
        for &s in self.signature.symbols() {
            let t: Vec<usize> = match s.arity() {
                0 => vec![self.constant(s) * m + other.constant(s)],
                1 => (0..size)
                    .map(|i| {
                        let (a, b) = pair(i);
                        self.unary(s, a) * m + other.unary(s, b)
                    })
                    .collect(),
                _ => (0..size * size)
                    .map(|k| {
                        let ((a1, b1), (a2, b2)) = (pair(k / size), pair(k % size));
                        self.binary(s, a1, a2) * m + other.binary(s, b1, b2)
                    })
                    .collect(),
            };
            tables.push((s, t));
        }
        let name = format!("{}x{}", self.name, other.name);
        let mut algebra = FiniteAlgebra::new(&name, size, self.signature.clone(), tables)?;
        if self.labels.is_some() || other.labels.is_some() {
            let labels = (0..size)
                .map(|i| {
                    let (a, b) = pair(i);
                    format!("({},{})", self.label(a), other.label(b))
                })
                .collect();
            algebra = algebra.with_labels(labels)?;
        }
        Ok(Product {
            algebra,
            left: (0..size).map(|i| i / m).collect(),
            right: (0..size).map(|i| i % m).collect(),
        })
    }

    /// Whether `map` (indexed by this carrier) is a homomorphism into `other`.
    pub fn is_homomorphism(&self, other: &FiniteAlgebra, map: &[usize]) -> bool {
        let n = self.size;
        if map.len() != n || map.iter().any(|&y| y >= other.size) {
            return false;
        }
        self.signature.symbols().iter().all(|&s| {
            other.has(s)
                && match s.arity() {
                    0 => map[self.constant(s)] == other.constant(s),
                    1 => (0..n).all(|x| map[self.unary(s, x)] == other.unary(s, map[x])),
                    _ => (0..n).all(|x| {
                        (0..n).all(|y| map[self.binary(s, x, y)] == other.binary(s, map[x], map[y]))
                    }),
                }
        })
    }

    /// Relabel by a permutation: element `x` becomes `perm[x]`.
    pub fn permuted(&self, perm: &[usize]) -> FiniteAlgebra {
        let n = self.size;
        let mut inv = vec![0; n];
        for (x, &y) in perm.iter().enumerate() {
            inv[y] = x;
        }
        let mut out = self.clone();
        for &s in self.signature.symbols() {
            let t = match s.arity() {
                0 => vec![perm[self.constant(s)]],
                1 => (0..n).map(|y| perm[self.unary(s, inv[y])]).collect(),
                _ => (0..n * n).map(|k| perm[self.binary(s, inv[k / n], inv[k % n])]).collect(),
            };
            out.tables[s.slot()] = Some(t);
        }
        if let Some(labels) = &self.labels {
            out.labels = Some((0..n).map(|y| labels[inv[y]].clone()).collect());
        }
        out
    }

    /// Quotient by a partition given as a block index per element. The
    /// result's element `i` is block `i`; fails unless the partition is a
    /// congruence.
    pub fn quotient_by_blocks(&self, blocks: &[usize]) -> Result<FiniteAlgebra, AlgebraError> {
        let n = self.size;
        if blocks.len() != n {
            return Err(AlgebraError::PartitionSize { expected: n, found: blocks.len() });
        }
        let k = blocks.iter().max().map_or(0, |m| m + 1);
        let mut rep = vec![usize::MAX; k];
        for x in (0..n).rev() {
            rep[blocks[x]] = x;
        }
        for &s in self.signature.symbols() {
            let ok = match s.arity() {
                0 => true,
                1 => (0..n).all(|x| blocks[self.unary(s, x)] == blocks[self.unary(s, rep[blocks[x]])]),
                _ => (0..n).all(|x| {
                    (0..n).all(|y| {
                        blocks[self.binary(s, x, y)]
                            == blocks[self.binary(s, rep[blocks[x]], rep[blocks[y]])]
                    })
                }),
            };
            if !ok {
                return Err(AlgebraError::NotCompatible { symbol: s });
            }
        }
        let tables = self
            .signature
            .symbols()
            .iter()
            .map(|&s| {
                let t = match s.arity() {
                    0 => vec![blocks[self.constant(s)]],
                    1 => (0..k).map(|b| blocks[self.unary(s, rep[b])]).collect(),
                    _ => (0..k * k).map(|i| blocks[self.binary(s, rep[i / k], rep[i % k])]).collect(),
                };
                (s, t)
            })
            .collect();
        let mut q = FiniteAlgebra::new(&format!("{}/~", self.name), k, self.signature.clone(), tables)?;
        if self.labels.is_some() {
            let labels = (0..k)
                .map(|b| {
                    let members: Vec<String> =
                        (0..n).filter(|&x| blocks[x] == b).map(|x| self.label(x)).collect();
                    format!("[{}]", members.join(","))
                })
                .collect();
            q = q.with_labels(labels)?;
        }
        Ok(q)
    }
}

/// A direct product with its projections as index maps.
#[derive(Clone, Debug)]
pub struct Product {
    pub algebra: FiniteAlgebra,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

/// `x <= y` as an n-by-n boolean table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderRelation {
    size: usize,
    pairs: Vec<bool>,
}

impl OrderRelation {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.pairs[x * self.size + y]
    }

    pub fn is_partial_order(&self) -> bool {
        let n = self.size;
        (0..n).all(|x| self.leq(x, x))
            && (0..n).all(|x| (0..n).all(|y| x == y || !(self.leq(x, y) && self.leq(y, x))))
            && (0..n).all(|x| {
                (0..n).all(|y| (0..n).all(|z| !(self.leq(x, y) && self.leq(y, z)) || self.leq(x, z)))
            })
    }

    pub fn is_chain(&self) -> bool {
        (0..self.size).all(|x| (0..self.size).all(|y| self.leq(x, y) || self.leq(y, x)))
    }

    /// Elements in an order compatible with `<=` (smaller first).
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.size).collect();
        order.sort_by_key(|&x| (0..self.size).filter(|&y| self.leq(y, x)).count());
        order
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Node {
    Var(usize),
    Const(Symbol),
    Unary(Symbol, usize),
    Binary(Symbol, usize, usize),
}

/// A formula expanded to the plain signature and flattened for fast
/// repeated evaluation. Variables are numbered in sorted name order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    nodes: Vec<Node>,
    vars: Vec<String>,
    uses_arrow: bool,
}

impl Term {
    pub fn compile(phi: &Formula) -> Term {
        Self::compile_with_vars(phi, &phi.vars().into_iter().collect::<Vec<_>>())
    }

    /// Compile against a fixed variable order; `vars` must cover the formula.
    pub fn compile_with_vars(phi: &Formula, vars: &[String]) -> Term {
        let mut t = Term { nodes: Vec::new(), vars: vars.to_vec(), uses_arrow: phi.uses_arrow() };
        let plain = phi.expand();
        let mut memo = BTreeMap::new();
        t.push(&plain, &mut memo);
        t
    }

    fn push(&mut self, f: &Formula, memo: &mut BTreeMap<Formula, usize>) -> usize {
        if let Some(&i) = memo.get(f) {
            return i;
        }
        let node = match f {
            Formula::Var(v) => Node::Var(
                self.vars
                    .iter()
                    .position(|x| x == v)
                    .unwrap_or_else(|| panic!("variable `{v}` missing from the term's variable list")),
            ),
            Formula::Const(c) => Node::Const(Symbol::of_const(*c)),
            Formula::Unary(op, a) => {
                let a = self.push(a, memo);
                let s = match op {
                    UnOp::Box => Symbol::Box,
                    UnOp::Diamond => Symbol::Diamond,
                    UnOp::NegB | UnOp::NegZ => unreachable!("expanded away"),
                };
                Node::Unary(s, a)
            }
            Formula::Binary(op, a, b) => {
                let (a, b) = (self.push(a, memo), self.push(b, memo));
                let s = match op {
                    BinOp::And => Symbol::Meet,
                    BinOp::Or => Symbol::Join,
                    BinOp::Fuse => Symbol::Fusion,
                    BinOp::LeftRes => Symbol::LeftRes,
                    BinOp::RightRes => Symbol::RightRes,
                    BinOp::Arrow | BinOp::Oplus => unreachable!("expanded away"),
                };
                Node::Binary(s, a, b)
            }
            _ => unreachable!("macros are expanded before compilation"),
        };
        self.nodes.push(node);
        memo.insert(f.to_owned(), self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Symbols the term needs.
    pub fn symbols(&self) -> Vec<Symbol> {
        let mut out: Vec<Symbol> = Vec::new();
        for n in &self.nodes {
            if let Node::Const(s) | Node::Unary(s, _) | Node::Binary(s, _, _) = n {
                if !out.contains(s) {
                    out.push(*s);
                }
            }
        }
        out
    }
}

/// Iterate over all assignments of `0..n` to `k` slots, lexicographically.
pub fn for_each_assignment(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    let mut v = vec![0usize; k];
    if n == 0 && k > 0 {
        return true;
    }
    loop {
        if !f(&v) {
            return false;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            v[i] += 1;
            if v[i] < n {
                break;
            }
            v[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests;
