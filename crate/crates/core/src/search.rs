//! Exhaustive enumeration of small algebras up to isomorphism.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{AlgebraError, FiniteAlgebra, Signature, Symbol};
use crate::classes::{join_irreducibles, AlgebraClass, Law, Shape};

pub const LATTICE_CAP: usize = 7;
pub const RESIDUATED_CAP: usize = 6;
pub const MODAL_CAP: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchError {
    CapExceeded { size: usize, cap: usize },
    EmptySize,
    Algebra(AlgebraError),
}

impl fmt::Display for SearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchError::CapExceeded { size, cap } => write!(f, "size {size} exceeds the enumeration cap {cap}"),
            SearchError::EmptySize => f.write_str("size must be at least 1"),
            SearchError::Algebra(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for SearchError {}

impl From<AlgebraError> for SearchError {
    fn from(e: AlgebraError) -> Self {
        SearchError::Algebra(e)
    }
}

/// Canonical form: size, symbols and the least table sequence over the
/// relabelings allowed by the invariant colouring.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<usize>);

impl CanonicalForm {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Little-endian byte encoding, one byte per entry.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.0.iter().map(|&x| x as u8).collect()
    }
}

/// Isomorphism-invariant colouring by iterated refinement over all tables.
pub fn invariant_colours(a: &FiniteAlgebra) -> Vec<usize> {
    let n = a.size();
    let syms = a.signature().symbols();
    let mut colours: Vec<usize> = (0..n)
        .map(|x| {
            let mut c = 0;
            for (i, &s) in syms.iter().enumerate() {
                if s.arity() == 0 && a.constant(s) == x {
                    c |= 1 << i;
                }
            }
            c
        })
        .collect();
    colours = rank(&colours.iter().map(|&c| vec![c]).collect::<Vec<_>>());
    loop {
        let sigs: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                let mut sig = vec![colours[x]];
                for &s in syms {
                    match s.arity() {
                        1 => sig.push(colours[a.unary(s, x)]),
                        2 => {
                            let mut row: Vec<(usize, usize, usize)> = (0..n)
                                .map(|y| (colours[y], colours[a.binary(s, x, y)], colours[a.binary(s, y, x)]))
                                .collect();
                            row.sort_unstable();
                            for (p, q, r) in row {
                                sig.extend([p, q, r]);
                            }
                        }
                        _ => {}
                    }
                }
                sig
            })
            .collect();
        let next = rank(&sigs);
        let before = colours.iter().collect::<BTreeSet<_>>().len();
        let after = next.iter().collect::<BTreeSet<_>>().len();
        colours = next;
        if after == before {
            return colours;
        }
    }
}

fn rank<T: Ord + Clone>(sigs: &[T]) -> Vec<usize> {
    let distinct: Vec<T> = sigs.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    sigs.iter().map(|s| distinct.binary_search(s).unwrap_or(0)).collect()
}

fn encode(a: &FiniteAlgebra, perm: &[usize], inv: &[usize], out: &mut Vec<usize>) {
    let n = a.size();
    out.clear();
    out.push(n);
    for &s in a.signature().symbols() {
        out.push(s as usize);
        match s.arity() {
            0 => out.push(perm[a.constant(s)]),
            1 => out.extend((0..n).map(|y| perm[a.unary(s, inv[y])])),
            _ => out.extend((0..n * n).map(|k| perm[a.binary(s, inv[k / n], inv[k % n])])),
        }
    }
}

/// Least encoding over colour-preserving relabelings. Colour classes are
/// placed in colour order, so isomorphic algebras get equal forms.
pub fn canonical_form(a: &FiniteAlgebra) -> CanonicalForm {
    let n = a.size();
    let colours = invariant_colours(a);
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..n {
        classes.entry(colours[x]).or_default().push(x);
    }
    let mut slots = Vec::new();
    for members in classes.values() {
        let start = slots.len();
        for _ in members {
            slots.push(start);
        }
    }
    let classes: Vec<Vec<usize>> = classes.into_values().collect();
    let mut best: Option<Vec<usize>> = None;
    let mut perm = vec![0; n];
    let mut inv = vec![0; n];
    let mut buf = Vec::new();
    let mut class_perms: Vec<Vec<usize>> = classes.clone();
    loop {
        let mut pos = 0;
        for members in &class_perms {
            for &x in members {
                perm[x] = pos;
                inv[pos] = x;
                pos += 1;
            }
        }
        encode(a, &perm, &inv, &mut buf);
        if best.as_ref().is_none_or(|b| buf < *b) {
            best = Some(buf.clone());
        }
        if !advance(&mut class_perms) {
            break;
        }
    }
    CanonicalForm(best.unwrap_or_default())
}

/// Step a product of permutations like an odometer; false after the last.
fn advance(perms: &mut [Vec<usize>]) -> bool {
    for p in perms.iter_mut().rev() {
        if next_permutation(p) {
            return true;
        }
    }
    false
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        p.reverse();
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Backtracking search for an isomorphism, restricted by invariant colours.
pub fn find_isomorphism(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Option<Vec<usize>> {
    if a.size() != b.size() || !a.signature().same_symbols(b.signature()) {
        return None;
    }
    let n = a.size();
    let ca = invariant_colours(a);
    let cb = invariant_colours(b);
    let mut sa = ca.clone();
    let mut sb = cb.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    for &s in a.signature().symbols() {
        if s.arity() == 0 && ca[a.constant(s)] != cb[b.constant(s)] {
            return None;
        }
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend_iso(a, b, &ca, &cb, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn consistent(a: &FiniteAlgebra, b: &FiniteAlgebra, map: &[usize], x: usize) -> bool {
    let n = a.size();
    for &s in a.signature().symbols() {
        match s.arity() {
            0 => {
                let c = a.constant(s);
                if map[c] != usize::MAX && map[c] != b.constant(s) {
                    return false;
                }
            }
            1 => {
                let y = a.unary(s, x);
                if map[y] != usize::MAX && map[y] != b.unary(s, map[x]) {
                    return false;
                }
            }
            _ => {
                for z in 0..n {
                    if map[z] == usize::MAX {
                        continue;
                    }
                    for (l, r) in [(x, z), (z, x)] {
                        let v = a.binary(s, l, r);
                        if map[v] != usize::MAX && map[v] != b.binary(s, map[l], map[r]) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

fn extend_iso(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    ca: &[usize],
    cb: &[usize],
    x: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    let n = a.size();
    if x == n {
        return a.is_homomorphism(b, map);
    }
    for y in 0..n {
        if used[y] || cb[y] != ca[x] {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if consistent(a, b, map, x) && extend_iso(a, b, ca, cb, x + 1, map, used) {
            return true;
        }
        map[x] = usize::MAX;
        used[y] = false;
    }
    false
}

pub fn is_isomorphic(a: &FiniteAlgebra, b: &FiniteAlgebra) -> bool {
    find_isomorphism(a, b).is_some()
}

/// Algebras of one class, pairwise non-isomorphic.
#[derive(Clone, Debug)]
pub struct Catalog {
    class: String,
    size_bound: usize,
    entries: Vec<FiniteAlgebra>,
    index: BTreeMap<CanonicalForm, usize>,
}

impl Catalog {
    pub fn new(class: &str) -> Catalog {
        Catalog { class: class.into(), size_bound: 0, entries: Vec::new(), index: BTreeMap::new() }
    }

    pub fn class(&self) -> &str {
        &self.class
    }

    pub fn size_bound(&self) -> usize {
        self.size_bound
    }

    pub fn entries(&self) -> &[FiniteAlgebra] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, FiniteAlgebra> {
        self.entries.iter()
    }

    pub fn into_entries(self) -> Vec<FiniteAlgebra> {
        self.entries
    }

    /// Insert unless an isomorphic copy is present; true if inserted.
    pub fn insert(&mut self, a: FiniteAlgebra) -> bool {
        let key = canonical_form(&a);
        if self.index.contains_key(&key) {
            return false;
        }
        self.size_bound = self.size_bound.max(a.size());
        self.index.insert(key, self.entries.len());
        self.entries.push(a);
        true
    }

    pub fn find(&self, a: &FiniteAlgebra) -> Option<usize> {
        self.index.get(&canonical_form(a)).copied()
    }

    pub fn extend(&mut self, other: Catalog) {
        for a in other.entries {
            self.insert(a);
        }
    }

    /// Entries with the given carrier size.
    pub fn of_size(&self, n: usize) -> impl Iterator<Item = &FiniteAlgebra> {
        self.entries.iter().filter(move |a| a.size() == n)
    }

    pub fn filter(&self, class: &str, keep: impl Fn(&FiniteAlgebra) -> bool) -> Catalog {
        let mut out = Catalog::new(class);
        for a in self.entries.iter().filter(|a| keep(a)) {
            out.insert(a.clone());
        }
        out
    }
}

impl<'a> IntoIterator for &'a Catalog {
    type Item = &'a FiniteAlgebra;
    type IntoIter = core::slice::Iter<'a, FiniteAlgebra>;
    fn into_iter(self) -> Self::IntoIter {
        self.entries.iter()
    }
}

fn lattice_from_order(n: usize, leq: &[bool]) -> Option<FiniteAlgebra> {
    let le = |x: usize, y: usize| leq[x * n + y];
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            let lower: Vec<usize> = (0..n).filter(|&z| le(z, x) && le(z, y)).collect();
            let m = *lower.iter().find(|&&z| lower.iter().all(|&w| le(w, z)))?;
            let upper: Vec<usize> = (0..n).filter(|&z| le(x, z) && le(y, z)).collect();
            let j = *upper.iter().find(|&&z| upper.iter().all(|&w| le(z, w)))?;
            meet[x * n + y] = m;
            join[x * n + y] = j;
        }
    }
    FiniteAlgebra::new(
        &format!("lattice-{n}"),
        n,
        Signature::lattice(),
        vec![(Symbol::Meet, meet), (Symbol::Join, join), (Symbol::Top, vec![n - 1]), (Symbol::Bottom, vec![0])],
    )
    .ok()
}

/// All bounded lattices on `n` elements up to isomorphism. Element 0 is
/// the bottom, `n-1` the top, and the labelling is a linear extension.
pub fn enumerate_lattices(n: usize) -> Result<Vec<FiniteAlgebra>, SearchError> {
    if n == 0 {
        return Err(SearchError::EmptySize);
    }
    if n > LATTICE_CAP {
        return Err(SearchError::CapExceeded { size: n, cap: LATTICE_CAP });
    }
    if n <= 2 {
        let mut leq = vec![false; n * n];
        for x in 0..n {
            for y in x..n {
                leq[x * n + y] = true;
            }
        }
        return Ok(lattice_from_order(n, &leq).into_iter().collect());
    }
    let middle: Vec<(usize, usize)> =
        (1..n - 1).flat_map(|x| (x + 1..n - 1).map(move |y| (x, y))).collect();
    let mut catalog = Catalog::new("lattice");
    for mask in 0u32..(1 << middle.len()) {
        let mut leq = vec![false; n * n];
        for x in 0..n {
            leq[x * n + x] = true;
            leq[x] = true;
            leq[x * n + n - 1] = true;
        }
        for (bit, &(x, y)) in middle.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                leq[x * n + y] = true;
            }
        }
        let transitive = (0..n).all(|x| {
            (0..n).all(|y| !leq[x * n + y] || (0..n).all(|z| !leq[y * n + z] || leq[x * n + z]))
        });
        if !transitive {
            continue;
        }
        if let Some(l) = lattice_from_order(n, &leq) {
            catalog.insert(l);
        }
    }
    let mut out = catalog.into_entries();
    for (i, l) in out.iter_mut().enumerate() {
        *l = l.clone().renamed(&format!("lattice-{n}-{}", i + 1));
    }
    Ok(out)
}

/// Meet-irreducible elements: not the top and not a meet of two elements
/// strictly above.
pub fn meet_irreducibles(a: &FiniteAlgebra) -> Vec<usize> {
    let n = a.size();
    (0..n)
        .filter(|&m| {
            m != a.top() && !(0..n).any(|x| (0..n).any(|y| x != m && y != m && a.meet(x, y) == m))
        })
        .collect()
}

struct FusionSearch<'a> {
    lattice: &'a FiniteAlgebra,
    n: usize,
    leq: Vec<bool>,
    commutative: bool,
    table: Vec<usize>,
    cells: Vec<(usize, usize)>,
    found: Vec<Vec<usize>>,
}

const UNSET: usize = usize::MAX;

impl<'a> FusionSearch<'a> {
    fn le(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.n + y]
    }

    fn get(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y]
    }

    fn set(&mut self, x: usize, y: usize, v: usize) {
        let n = self.n;
        self.table[x * n + y] = v;
        if self.commutative {
            self.table[y * n + x] = v;
        }
    }

    fn admissible(&self, x: usize, y: usize) -> bool {
        let n = self.n;
        let v = self.get(x, y);
        let l = self.lattice;
        for x2 in 0..n {
            for y2 in 0..n {
                let w = self.get(x2, y2);
                if w == UNSET {
                    continue;
                }
                if self.le(x2, x) && self.le(y2, y) && !self.le(w, v) {
                    return false;
                }
                if self.le(x, x2) && self.le(y, y2) && !self.le(v, w) {
                    return false;
                }
            }
        }
        for a in 0..n {
            for z in 0..n {
                for w in 0..n {
                    let j = l.join(z, w);
                    let (p, q, r) = (self.get(a, z), self.get(a, w), self.get(a, j));
                    if p != UNSET && q != UNSET && r != UNSET && l.join(p, q) != r {
                        return false;
                    }
                    if !self.commutative {
                        let (p, q, r) = (self.get(z, a), self.get(w, a), self.get(j, a));
                        if p != UNSET && q != UNSET && r != UNSET && l.join(p, q) != r {
                            return false;
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.get(a, b);
                if ab == UNSET {
                    continue;
                }
                for c in 0..n {
                    let bc = self.get(b, c);
                    if bc == UNSET {
                        continue;
                    }
                    let (lhs, rhs) = (self.get(ab, c), self.get(a, bc));
                    if lhs != UNSET && rhs != UNSET && lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, k: usize) {
        if k == self.cells.len() {
            self.found.push(self.table.clone());
            return;
        }
        let (x, y) = self.cells[k];
        for v in 0..self.n {
            self.set(x, y, v);
            if self.admissible(x, y) {
                self.run(k + 1);
            }
        }
        self.set(x, y, UNSET);
    }
}

/// Residuated structures on a lattice: every associative, join-preserving
/// fusion with the given unit, bottom absorbing; residuals are maxima.
fn residuated_over(
    lattice: &FiniteAlgebra,
    commutative: bool,
    integral: bool,
) -> Result<Vec<FiniteAlgebra>, SearchError> {
    let n = lattice.size();
    let leq: Vec<bool> = (0..n * n).map(|k| lattice.leq(k / n, k % n)).collect();
    let units: Vec<usize> = if integral || n == 1 {
        vec![lattice.top()]
    } else {
        (0..n).filter(|&u| u != lattice.bottom()).collect()
    };
    let mut out = Vec::new();
    for u in units {
        let mut s = FusionSearch {
            lattice,
            n,
            leq: leq.clone(),
            commutative,
            table: vec![UNSET; n * n],
            cells: Vec::new(),
            found: Vec::new(),
        };
        let bot = lattice.bottom();
        for x in 0..n {
            s.table[x * n + u] = x;
            s.table[u * n + x] = x;
        }
        for x in 0..n {
            if x != u {
                s.table[x * n + bot] = bot;
                s.table[bot * n + x] = bot;
            }
        }
        if s.table[u * n + bot] != bot {
            continue;
        }
        for x in 0..n {
            for y in 0..n {
                if s.table[x * n + y] == UNSET && (!commutative || x <= y) {
                    s.cells.push((x, y));
                }
            }
        }
        let ok = (0..n).all(|x| (0..n).all(|y| s.get(x, y) == UNSET || s.admissible(x, y)));
        if !ok {
            continue;
        }
        s.run(0);
        for fusion in s.found {
            if let Some(a) = assemble_fl(lattice, fusion, u)? {
                out.push(a);
            }
        }
    }
    Ok(out)
}

/// Add residuals, unit and `0 = B` to a lattice with a fusion table.
fn assemble_fl(lattice: &FiniteAlgebra, fusion: Vec<usize>, unit: usize) -> Result<Option<FiniteAlgebra>, SearchError> {
    let n = lattice.size();
    let f = |x: usize, y: usize| fusion[x * n + y];
    let greatest = |pred: &dyn Fn(usize) -> bool| -> Option<usize> {
        let sols: Vec<usize> = (0..n).filter(|&y| pred(y)).collect();
        sols.iter().copied().find(|&m| sols.iter().all(|&y| lattice.leq(y, m)))
    };
    let mut ldiv = vec![0; n * n];
    let mut rdiv = vec![0; n * n];
    for x in 0..n {
        for z in 0..n {
            match greatest(&|y| lattice.leq(f(x, y), z)) {
                Some(m) => ldiv[x * n + z] = m,
                None => return Ok(None),
            }
        }
    }
    for z in 0..n {
        for y in 0..n {
            match greatest(&|x| lattice.leq(f(x, y), z)) {
                Some(m) => rdiv[z * n + y] = m,
                None => return Ok(None),
            }
        }
    }
    let a = FiniteAlgebra::new(
        lattice.name(),
        n,
        Signature::fl(),
        vec![
            (Symbol::Meet, lattice.table(Symbol::Meet).unwrap_or_default().to_vec()),
            (Symbol::Join, lattice.table(Symbol::Join).unwrap_or_default().to_vec()),
            (Symbol::Fusion, fusion),
            (Symbol::LeftRes, ldiv),
            (Symbol::RightRes, rdiv),
            (Symbol::One, vec![unit]),
            (Symbol::Zero, vec![lattice.bottom()]),
            (Symbol::Top, vec![lattice.top()]),
            (Symbol::Bottom, vec![lattice.bottom()]),
        ],
    )?;
    Ok(Some(a))
}

/// Heyting algebras of size `n`: distributive lattices with fusion = meet.
pub fn enumerate_heyting(n: usize) -> Result<Vec<FiniteAlgebra>, SearchError> {
    let mut out = Vec::new();
    for l in enumerate_lattices(n)? {
        let meet = l.table(Symbol::Meet).unwrap_or_default().to_vec();
        if let Some(a) = assemble_fl(&l, meet, l.top())? {
            let distributive = (0..n).all(|x| {
                (0..n).all(|y| (0..n).all(|z| a.meet(x, a.join(y, z)) == a.join(a.meet(x, y), a.meet(x, z))))
            });
            if distributive {
                out.push(a);
            }
        }
    }
    Ok(out)
}

fn extend_box(a: &FiniteAlgebra, mi: &[usize], values: &[usize]) -> Vec<usize> {
    (0..a.size())
        .map(|x| {
            mi.iter()
                .zip(values)
                .filter(|(&m, _)| a.leq(x, m))
                .fold(a.top(), |acc, (_, &v)| a.meet(acc, v))
        })
        .collect()
}

fn extend_diamond(a: &FiniteAlgebra, ji: &[usize], values: &[usize]) -> Vec<usize> {
    (0..a.size())
        .map(|x| {
            ji.iter()
                .zip(values)
                .filter(|(&j, _)| a.leq(j, x))
                .fold(a.bottom(), |acc, (_, &v)| a.join(acc, v))
        })
        .collect()
}

/// Every table obtained by choosing values on `gens` and extending.
fn operator_tables(
    a: &FiniteAlgebra,
    gens: &[usize],
    extend: fn(&FiniteAlgebra, &[usize], &[usize]) -> Vec<usize>,
) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    crate::algebra::for_each_assignment(a.size(), gens.len(), |vals| {
        out.insert(extend(a, gens, vals));
        true
    });
    out
}

fn laws_only(class: &AlgebraClass, sym: Symbol, other: Symbol) -> Vec<&Law> {
    class
        .laws()
        .iter()
        .filter(|l| {
            let s = l.symbols();
            s.contains(&sym) && !s.contains(&other)
        })
        .collect()
}

fn passes(laws: &[&Law], a: &FiniteAlgebra) -> bool {
    laws.iter().all(|l| l.first_failure(a).is_none())
}

fn modal_over(class: &AlgebraClass, base: &FiniteAlgebra, boolean: bool) -> Result<Vec<FiniteAlgebra>, SearchError> {
    let n = base.size();
    let identity: Vec<usize> = (0..n).collect();
    let mi = meet_irreducibles(base);
    let box_laws = laws_only(class, Symbol::Box, Symbol::Diamond);
    let mut boxes = Vec::new();
    for t in operator_tables(base, &mi, extend_box) {
        let probe = base.clone().with_table(Symbol::Box, t.clone())?.with_table(Symbol::Diamond, identity.clone())?;
        if passes(&box_laws, &probe) {
            boxes.push(t);
        }
    }
    let mut out = Vec::new();
    if boolean {
        for t in boxes {
            let a = crate::classes::with_boolean_box(base, t)?;
            if class.contains(&a) {
                out.push(a);
            }
        }
        return Ok(out);
    }
    let ji = join_irreducibles(base);
    let dia_laws = laws_only(class, Symbol::Diamond, Symbol::Box);
    let mut dias = Vec::new();
    for t in operator_tables(base, &ji, extend_diamond) {
        let probe = base.clone().with_table(Symbol::Box, identity.clone())?.with_table(Symbol::Diamond, t.clone())?;
        if passes(&dia_laws, &probe) {
            dias.push(t);
        }
    }
    for b in &boxes {
        for d in &dias {
            let a = base.clone().with_table(Symbol::Box, b.clone())?.with_table(Symbol::Diamond, d.clone())?;
            if class.contains(&a) {
                out.push(a);
            }
        }
    }
    Ok(out)
}

/// Enumeration cap for a class shape.
pub fn cap_for(class: &AlgebraClass) -> usize {
    match class.kind().shape() {
        Shape::Lattice => LATTICE_CAP,
        Shape::Residuated { .. } => RESIDUATED_CAP,
        Shape::BooleanModal => MODAL_CAP,
        Shape::HeytingModal => LATTICE_CAP,
    }
}

/// All members of `class` with exactly `n` elements, up to isomorphism.
pub fn enumerate_class(class: &AlgebraClass, n: usize) -> Result<Catalog, SearchError> {
    if n == 0 {
        return Err(SearchError::EmptySize);
    }
    let cap = cap_for(class);
    if n > cap {
        return Err(SearchError::CapExceeded { size: n, cap });
    }
    use crate::classes::ClassKind;
    let mut candidates = Vec::new();
    match class.kind().shape() {
        Shape::Lattice => candidates = enumerate_lattices(n)?,
        Shape::Residuated { commutative, integral } => {
            if matches!(class.kind(), ClassKind::Heyting | ClassKind::Boolean) {
                candidates = enumerate_heyting(n)?;
            } else {
                for l in enumerate_lattices(n)? {
                    candidates.extend(residuated_over(&l, commutative, integral)?);
                }
            }
        }
        Shape::BooleanModal => {
            if n.is_power_of_two() {
                let base = if n == 1 {
                    enumerate_heyting(1)?.remove(0)
                } else {
                    crate::classes::make_boolean(n.trailing_zeros() as usize)
                        .map_err(|_| SearchError::CapExceeded { size: n, cap })?
                        .without_labels()
                };
                candidates = modal_over(class, &base, true)?;
            }
        }
        Shape::HeytingModal => {
            for base in enumerate_heyting(n)? {
                candidates.extend(modal_over(class, &base, false)?);
            }
        }
    }
    let mut catalog = Catalog::new(&class.name());
    for a in candidates {
        if class.contains(&a) {
            catalog.insert(a);
        }
    }
    let token = class.name().replace(':', "-").replace('=', "");
    catalog.entries =
        catalog.entries.into_iter().enumerate().map(|(i, a)| a.renamed(&format!("{token}-{n}-{}", i + 1))).collect();
    catalog.size_bound = n;
    Ok(catalog)
}

/// All members of `class` with 1 to `max` elements.
pub fn catalog_up_to(class: &AlgebraClass, max: usize) -> Result<Catalog, SearchError> {
    catalog_of_sizes(class, 1..=max)
}

pub fn catalog_of_sizes(
    class: &AlgebraClass,
    sizes: impl IntoIterator<Item = usize>,
) -> Result<Catalog, SearchError> {
    let mut out = Catalog::new(&class.name());
    for n in sizes {
        let part = enumerate_class(class, n)?;
        out.extend(part);
        out.size_bound = out.size_bound.max(n);
    }
    Ok(out)
}
