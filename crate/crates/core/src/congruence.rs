//! Congruences, congruence lattices, simplicity and semisimplicity.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{AlgebraError, FiniteAlgebra};

/// Default bound on carrier size for full lattice computations.
pub const DEFAULT_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CongruenceError {
    OutOfRange { x: usize, y: usize, size: usize },
    CapExceeded { size: usize, cap: usize },
    Algebra(AlgebraError),
}

impl fmt::Display for CongruenceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CongruenceError::OutOfRange { x, y, size } => {
                write!(f, "pair ({x},{y}) outside carrier of size {size}")
            }
            CongruenceError::CapExceeded { size, cap } => {
                write!(f, "carrier size {size} exceeds the cap {cap}")
            }
            CongruenceError::Algebra(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for CongruenceError {}

impl From<AlgebraError> for CongruenceError {
    fn from(e: AlgebraError) -> Self {
        CongruenceError::Algebra(e)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if two classes were merged.
    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi] = lo;
        true
    }
}

/// A partition of `0..n`, blocks numbered by first occurrence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    blocks: Vec<usize>,
}

impl Congruence {
    /// Canonicalize an arbitrary block labeling.
    pub fn from_labels(labels: &[usize]) -> Congruence {
        let mut seen = BTreeMap::new();
        let blocks = labels
            .iter()
            .map(|l| {
                let next = seen.len();
                *seen.entry(*l).or_insert(next)
            })
            .collect();
        Congruence { blocks }
    }

    pub fn identity(n: usize) -> Congruence {
        Congruence { blocks: (0..n).collect() }
    }

    pub fn total(n: usize) -> Congruence {
        Congruence { blocks: vec![0; n] }
    }

    pub fn size(&self) -> usize {
        self.blocks.len()
    }

    /// Block index of each element.
    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.blocks[x]
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.iter().max().map_or(0, |m| m + 1)
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.blocks[x] == self.blocks[y]
    }

    pub fn is_identity(&self) -> bool {
        self.num_blocks() == self.size()
    }

    pub fn is_total(&self) -> bool {
        self.num_blocks() <= 1
    }

    /// Blocks as sorted element lists.
    pub fn block_lists(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (x, &b) in self.blocks.iter().enumerate() {
            out[b].push(x);
        }
        out
    }

    /// Pairs `(x, y)`, `x < y`, linking each element to the least element
    /// of its block; their equivalence closure is this partition.
    pub fn spanning_pairs(&self) -> Vec<(usize, usize)> {
        let mut first = vec![usize::MAX; self.num_blocks()];
        let mut out = Vec::new();
        for (x, &b) in self.blocks.iter().enumerate() {
            if first[b] == usize::MAX {
                first[b] = x;
            } else {
                out.push((first[b], x));
            }
        }
        out
    }

    /// Every related pair `x < y`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        let mut out = Vec::new();
        for x in 0..n {
            for y in x + 1..n {
                if self.related(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Intersection.
    pub fn meet(&self, other: &Congruence) -> Congruence {
        let n = self.size();
        let labels: Vec<usize> = (0..n).map(|x| self.blocks[x] * n + other.blocks[x]).collect();
        Congruence::from_labels(&labels)
    }

    /// `self` is contained in `other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        let n = self.size();
        (0..n).all(|x| (0..n).all(|y| !self.related(x, y) || other.related(x, y)))
    }

    /// Exhaustive compatibility with every table of `a`.
    pub fn is_compatible(&self, a: &FiniteAlgebra) -> bool {
        let n = a.size();
        if self.size() != n {
            return false;
        }
        a.signature().symbols().iter().all(|&s| match s.arity() {
            0 => true,
            1 => self.pairs().iter().all(|&(x, y)| self.related(a.unary(s, x), a.unary(s, y))),
            _ => self.pairs().iter().all(|&(x, y)| {
                (0..n).all(|c| {
                    self.related(a.binary(s, x, c), a.binary(s, y, c))
                        && self.related(a.binary(s, c, x), a.binary(s, c, y))
                })
            }),
        })
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, block) in self.block_lists().iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str("{")?;
            for (j, x) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

/// Least congruence containing `pairs`.
pub fn congruence_generated(a: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Result<Congruence, CongruenceError> {
    let n = a.size();
    let mut uf = UnionFind::new(n);
    let mut work: Vec<(usize, usize)> = Vec::new();
    for &(x, y) in pairs {
        if x >= n || y >= n {
            return Err(CongruenceError::OutOfRange { x, y, size: n });
        }
        if uf.union(x, y) {
            work.push((x, y));
        }
    }
    let symbols = a.signature().symbols().to_vec();
    while let Some((x, y)) = work.pop() {
        let mut merge = |u: usize, v: usize, work: &mut Vec<(usize, usize)>| {
            if uf.union(u, v) {
                work.push((u, v));
            }
        };
        for &s in &symbols {
            match s.arity() {
                0 => {}
                1 => merge(a.unary(s, x), a.unary(s, y), &mut work),
                _ => {
                    for c in 0..n {
                        merge(a.binary(s, x, c), a.binary(s, y, c), &mut work);
                        merge(a.binary(s, c, x), a.binary(s, c, y), &mut work);
                    }
                }
            }
        }
    }
    let labels: Vec<usize> = (0..n).map(|x| uf.find(x)).collect();
    Ok(Congruence::from_labels(&labels))
}

/// Join in the congruence lattice, regenerated from the union of pairs.
pub fn congruence_join(a: &FiniteAlgebra, x: &Congruence, y: &Congruence) -> Result<Congruence, CongruenceError> {
    let mut pairs = x.spanning_pairs();
    pairs.extend(y.spanning_pairs());
    congruence_generated(a, &pairs)
}

/// All congruences with their meet and join tables.
#[derive(Clone, Debug)]
pub struct CongruenceLattice {
    congruences: Vec<Congruence>,
    meet: Vec<usize>,
    join: Vec<usize>,
}

impl CongruenceLattice {
    /// Ordered by decreasing number of blocks, then lexicographically, so
    /// the identity comes first and the total relation last.
    pub fn congruences(&self) -> &[Congruence] {
        &self.congruences
    }

    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }

    pub fn index_of(&self, c: &Congruence) -> Option<usize> {
        self.congruences.iter().position(|d| d == c)
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn total(&self) -> usize {
        self.congruences.len() - 1
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.len() + j]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i * self.len() + j]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.meet(i, j) == i
    }

    /// Maximal proper congruences.
    pub fn coatoms(&self) -> Vec<usize> {
        let top = self.total();
        (0..self.len())
            .filter(|&i| i != top && (0..self.len()).all(|j| j == i || j == top || !self.leq(i, j)))
            .collect()
    }
}

/// Every congruence of `a`: principal congruences closed under joins.
pub fn all_congruences(a: &FiniteAlgebra, cap: usize) -> Result<CongruenceLattice, CongruenceError> {
    let n = a.size();
    if n > cap {
        return Err(CongruenceError::CapExceeded { size: n, cap });
    }
    let mut found: BTreeMap<Congruence, ()> = BTreeMap::new();
    found.insert(Congruence::identity(n), ());
    let mut principal = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            let c = congruence_generated(a, &[(x, y)])?;
            if !found.contains_key(&c) {
                found.insert(c.clone(), ());
                principal.push(c);
            }
        }
    }
    let mut list: Vec<Congruence> = found.keys().cloned().collect();
    let mut frontier = principal.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for c in &frontier {
            for p in &principal {
                let j = congruence_join(a, c, p)?;
                if !found.contains_key(&j) {
                    found.insert(j.clone(), ());
                    list.push(j.clone());
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    list.sort_by(|x, y| y.num_blocks().cmp(&x.num_blocks()).then_with(|| x.cmp(y)));
    let m = list.len();
    let mut meet = vec![0; m * m];
    let mut join = vec![0; m * m];
    let index: BTreeMap<Congruence, usize> = list.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    for i in 0..m {
        for j in 0..m {
            meet[i * m + j] = index[&list[i].meet(&list[j])];
            join[i * m + j] = index[&congruence_join(a, &list[i], &list[j])?];
        }
    }
    Ok(CongruenceLattice { congruences: list, meet, join })
}

/// `|A| >= 2` and exactly two congruences.
pub fn is_simple(a: &FiniteAlgebra) -> Result<bool, CongruenceError> {
    if a.size() < 2 {
        return Ok(false);
    }
    let n = a.size();
    for x in 0..n {
        for y in x + 1..n {
            if !congruence_generated(a, &[(x, y)])?.is_total() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Outcome of the semisimplicity test with its certificate.
#[derive(Clone, Debug)]
pub struct SemisimpleReport {
    pub semisimple: bool,
    pub simple: bool,
    /// The maximal proper congruences.
    pub coatoms: Vec<Congruence>,
    /// Element `x` maps to its tuple of blocks, one per coatom quotient.
    pub embedding: Vec<Vec<usize>>,
}

impl SemisimpleReport {
    /// The coatom quotients.
    pub fn factors(&self, a: &FiniteAlgebra) -> Result<Vec<FiniteAlgebra>, AlgebraError> {
        self.coatoms.iter().map(|c| quotient(a, c)).collect()
    }

    pub fn embedding_is_injective(&self) -> bool {
        let mut seen = alloc::collections::BTreeSet::new();
        self.embedding.iter().all(|t| seen.insert(t.clone()))
    }
}

/// Semisimple iff the maximal proper congruences meet to the identity;
/// the trivial algebra counts as semisimple.
pub fn is_semisimple(a: &FiniteAlgebra, cap: usize) -> Result<SemisimpleReport, CongruenceError> {
    let lat = all_congruences(a, cap)?;
    let coatoms: Vec<Congruence> = lat.coatoms().into_iter().map(|i| lat.congruences()[i].clone()).collect();
    let n = a.size();
    let embedding: Vec<Vec<usize>> = (0..n).map(|x| coatoms.iter().map(|c| c.block_of(x)).collect()).collect();
    let meet = coatoms.iter().fold(Congruence::total(n), |acc, c| acc.meet(c));
    let semisimple = n == 1 || meet.is_identity();
    Ok(SemisimpleReport { semisimple, simple: n >= 2 && lat.len() == 2, coatoms, embedding })
}

/// Quotient algebra; its element `i` is block `i` of `theta`.
pub fn quotient(a: &FiniteAlgebra, theta: &Congruence) -> Result<FiniteAlgebra, AlgebraError> {
    a.quotient_by_blocks(theta.blocks())
}

#[cfg(test)]
mod tests;
