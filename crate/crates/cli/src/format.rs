//! The line-oriented `.alg` text format.
//!
//! ```text
//! algebra L3
//! size 3
//! labels 0 1/2 1
//! op /\ 2
//! table /\
//! 0 0 0
//! 0 1 1
//! 0 1 2
//! end
//! ```
//!
//! Blank lines and `#` comments are ignored. A file may hold several
//! algebras; each block must be closed by `end`.

use std::fmt::{self, Write as _};

use alg_core::algebra::{FiniteAlgebra, Signature, Symbol};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for FormatError {}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError { line, message: message.into() }
}

struct Block {
    start: usize,
    name: String,
    size: Option<usize>,
    labels: Option<Vec<String>>,
    ops: Vec<(Symbol, usize)>,
    tables: Vec<(Symbol, Vec<usize>)>,
    open: Option<(Symbol, Vec<usize>, usize)>,
}

impl Block {
    fn rows_expected(&self, symbol: Symbol) -> usize {
        let n = self.size.unwrap_or(0);
        match symbol.arity() {
            0 | 1 => 1,
            _ => n,
        }
    }

    fn close_table(&mut self, line: usize) -> Result<(), FormatError> {
        if let Some((symbol, entries, rows)) = self.open.take() {
            let want = self.rows_expected(symbol);
            if rows != want {
                return Err(err(line, format!("table `{symbol}` has {rows} rows, expected {want}")));
            }
            self.tables.push((symbol, entries));
        }
        Ok(())
    }

    fn finish(mut self, line: usize) -> Result<FiniteAlgebra, FormatError> {
        self.close_table(line)?;
        let size = self.size.ok_or_else(|| err(self.start, "missing `size`"))?;
        for (symbol, _) in &self.tables {
            if !self.ops.iter().any(|(s, _)| s == symbol) {
                return Err(err(line, format!("table for undeclared symbol `{symbol}`")));
            }
        }
        let symbols: Vec<Symbol> = self.ops.iter().map(|(s, _)| *s).collect();
        let signature = Signature::new(&symbols).map_err(|e| err(self.start, e.to_string()))?;
        let a = FiniteAlgebra::new(&self.name, size, signature, self.tables)
            .map_err(|e| err(self.start, format!("algebra `{}`: {e}", self.name)))?;
        match self.labels {
            Some(l) => a.with_labels(l).map_err(|e| err(self.start, e.to_string())),
            None => Ok(a),
        }
    }
}

fn symbol(line: usize, token: &str) -> Result<Symbol, FormatError> {
    Symbol::from_token(token).ok_or_else(|| err(line, format!("unknown symbol `{token}`")))
}

/// Parse every algebra in `text`.
pub fn parse_algebras(text: &str) -> Result<Vec<FiniteAlgebra>, FormatError> {
    let mut out = Vec::new();
    let mut block: Option<Block> = None;
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        last = ln;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut words = content.split_whitespace();
        let head = words.next().unwrap_or("");
        let Some(b) = block.as_mut() else {
            if head != "algebra" {
                return Err(err(ln, format!("expected `algebra`, found `{head}`")));
            }
            let name = content["algebra".len()..].trim();
            if name.is_empty() {
                return Err(err(ln, "algebra needs a name"));
            }
            block = Some(Block {
                start: ln,
                name: name.to_string(),
                size: None,
                labels: None,
                ops: Vec::new(),
                tables: Vec::new(),
                open: None,
            });
            continue;
        };
        let n = b.size.unwrap_or(0);
        if head.starts_with(|c: char| c.is_ascii_digit()) {
            if let Some((symbol, entries, rows)) = b.open.as_mut() {
                let width = if symbol.arity() == 0 { 1 } else { n };
                let row: Vec<usize> = content
                    .split_whitespace()
                    .map(|w| w.parse::<usize>().map_err(|_| err(ln, format!("bad entry `{w}`"))))
                    .collect::<Result<_, _>>()?;
                if row.len() != width {
                    return Err(err(ln, format!("row of table `{symbol}` has {} entries, expected {width}", row.len())));
                }
                entries.extend(row);
                *rows += 1;
                continue;
            }
        }
        b.close_table(ln)?;
        let rest: Vec<&str> = words.collect();
        match head {
            "size" => {
                if b.size.is_some() {
                    return Err(err(ln, "`size` given twice"));
                }
                let [n] = rest.as_slice() else { return Err(err(ln, "`size` takes one number")) };
                b.size = Some(n.parse().map_err(|_| err(ln, format!("bad size `{n}`")))?);
            }
            "labels" => b.labels = Some(rest.iter().map(|s| s.to_string()).collect()),
            "op" => {
                let [tok, arity] = rest.as_slice() else { return Err(err(ln, "`op` takes a symbol and an arity")) };
                let s = symbol(ln, tok)?;
                let k: usize = arity.parse().map_err(|_| err(ln, format!("bad arity `{arity}`")))?;
                if k != s.arity() {
                    return Err(err(ln, format!("symbol `{s}` has arity {}, not {k}", s.arity())));
                }
                if b.ops.iter().any(|(o, _)| *o == s) {
                    return Err(err(ln, format!("symbol `{s}` declared twice")));
                }
                b.ops.push((s, k));
            }
            "table" => {
                if b.size.is_none() {
                    return Err(err(ln, "`table` before `size`"));
                }
                let [tok] = rest.as_slice() else { return Err(err(ln, "`table` takes one symbol")) };
                let s = symbol(ln, tok)?;
                if b.tables.iter().any(|(o, _)| *o == s) {
                    return Err(err(ln, format!("second table for `{s}`")));
                }
                b.open = Some((s, Vec::new(), 0));
            }
            "end" => {
                let done = block.take().unwrap().finish(ln)?;
                out.push(done);
            }
            other => return Err(err(ln, format!("unexpected `{other}`"))),
        }
    }
    if let Some(b) = block {
        return Err(err(last.max(b.start), format!("algebra `{}` is not closed by `end`", b.name)));
    }
    Ok(out)
}

/// Render one algebra; parsing the result gives back an equal value.
pub fn write_algebra(a: &FiniteAlgebra) -> String {
    let mut s = String::new();
    let n = a.size();
    writeln!(s, "algebra {}", a.name()).unwrap();
    writeln!(s, "size {n}").unwrap();
    if let Some(labels) = a.labels() {
        writeln!(s, "labels {}", labels.join(" ")).unwrap();
    }
    for &sym in a.signature().symbols() {
        writeln!(s, "op {sym} {}", sym.arity()).unwrap();
    }
    for &sym in a.signature().symbols() {
        writeln!(s, "table {sym}").unwrap();
        let t = a.table(sym).unwrap();
        let width = if sym.arity() == 0 { 1 } else { n };
        for row in t.chunks(width) {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(s, "{}", cells.join(" ")).unwrap();
        }
    }
    s.push_str("end\n");
    s
}

pub fn write_algebras(algebras: &[FiniteAlgebra]) -> String {
    algebras.iter().map(write_algebra).collect::<Vec<_>>().join("\n")
}
