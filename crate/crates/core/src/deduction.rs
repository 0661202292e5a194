//! Deductive filters through congruences, filter generation, matrix
//! consequence and antitheorems.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{for_each_assignment, AlgebraError, FiniteAlgebra, Symbol, Term};
use crate::bits::ElemSet;
use crate::congruence::{all_congruences, congruence_generated, Congruence, CongruenceError, DEFAULT_CAP};
use crate::formula::Formula;
use crate::verdict::Verdict;

/// How designation of `a` is read off a congruence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Translation {
    /// `a` is designated iff `a /\ 1` is related to `1`.
    Fl,
    /// `a` is designated iff `a` is related to `1`.
    Modal,
}

impl Translation {
    /// Modal when the algebra has `[]`, FL otherwise.
    pub fn for_algebra(a: &FiniteAlgebra) -> Translation {
        if a.has(Symbol::Box) {
            Translation::Modal
        } else {
            Translation::Fl
        }
    }

    pub fn required_symbols(self) -> &'static [Symbol] {
        match self {
            Translation::Fl => &[Symbol::Meet, Symbol::One],
            Translation::Modal => &[Symbol::One],
        }
    }

    fn check(self, a: &FiniteAlgebra) -> Result<(), AlgebraError> {
        match self.required_symbols().iter().find(|&&s| !a.has(s)) {
            Some(&s) => Err(AlgebraError::MissingTable(s)),
            None => Ok(()),
        }
    }

    /// The element paired with `1`.
    pub fn image(self, a: &FiniteAlgebra, x: usize) -> usize {
        match self {
            Translation::Fl => a.meet(x, a.one()),
            Translation::Modal => x,
        }
    }

    /// The filter belonging to `theta`.
    pub fn filter_of(self, a: &FiniteAlgebra, theta: &Congruence) -> ElemSet {
        let one = a.one();
        ElemSet::from_elems(a.size(), (0..a.size()).filter(|&x| theta.related(self.image(a, x), one)))
    }

    pub fn name(self) -> &'static str {
        match self {
            Translation::Fl => "fl",
            Translation::Modal => "modal",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeductionError {
    Congruence(CongruenceError),
    Algebra(AlgebraError),
    NotAFilter { matrix: usize },
    OutOfRange(usize),
}

impl fmt::Display for DeductionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeductionError::Congruence(e) => write!(f, "{e}"),
            DeductionError::Algebra(e) => write!(f, "{e}"),
            DeductionError::NotAFilter { matrix } => {
                write!(f, "designated set of matrix {matrix} is not a deductive filter")
            }
            DeductionError::OutOfRange(x) => write!(f, "element {x} outside the carrier"),
        }
    }
}

impl core::error::Error for DeductionError {}

impl From<CongruenceError> for DeductionError {
    fn from(e: CongruenceError) -> Self {
        DeductionError::Congruence(e)
    }
}

impl From<AlgebraError> for DeductionError {
    fn from(e: AlgebraError) -> Self {
        DeductionError::Algebra(e)
    }
}

/// A filter together with the congruence it was read from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeductiveFilter {
    pub set: ElemSet,
    pub source: Congruence,
}

impl DeductiveFilter {
    pub fn is_trivial(&self) -> bool {
        self.set.is_full()
    }
}

/// Images of all congruences, deduplicated, smallest first.
pub fn all_filters(a: &FiniteAlgebra, t: Translation, cap: usize) -> Result<Vec<DeductiveFilter>, DeductionError> {
    t.check(a)?;
    let lat = all_congruences(a, cap)?;
    let mut seen: BTreeMap<ElemSet, Congruence> = BTreeMap::new();
    for c in lat.congruences() {
        seen.entry(t.filter_of(a, c)).or_insert_with(|| c.clone());
    }
    let mut out: Vec<DeductiveFilter> = seen.into_iter().map(|(set, source)| DeductiveFilter { set, source }).collect();
    out.sort_by(|x, y| x.set.len().cmp(&y.set.len()).then_with(|| x.set.to_vec().cmp(&y.set.to_vec())));
    Ok(out)
}

/// The filter of the congruence generated by `{(t(x), 1) : x in X}`.
pub fn filter_generated(a: &FiniteAlgebra, t: Translation, xs: &ElemSet) -> Result<DeductiveFilter, DeductionError> {
    t.check(a)?;
    let one = a.one();
    let pairs: Vec<(usize, usize)> = xs.iter().map(|x| (t.image(a, x), one)).collect();
    let source = congruence_generated(a, &pairs)?;
    Ok(DeductiveFilter { set: t.filter_of(a, &source), source })
}

/// Designated elements of the least filter.
pub fn least_filter(a: &FiniteAlgebra, t: Translation) -> Result<ElemSet, DeductionError> {
    t.check(a)?;
    let n = a.size();
    Ok(ElemSet::from_elems(n, (0..n).filter(|&x| t.image(a, x) == a.one())))
}

/// All filters of one algebra with fast generation.
#[derive(Clone, Debug)]
pub struct FilterLattice<'a> {
    algebra: &'a FiniteAlgebra,
    translation: Translation,
    filters: Vec<DeductiveFilter>,
    index: BTreeMap<ElemSet, usize>,
}

impl<'a> FilterLattice<'a> {
    pub fn new(algebra: &'a FiniteAlgebra, translation: Translation) -> Result<Self, DeductionError> {
        Self::with_cap(algebra, translation, DEFAULT_CAP)
    }

    pub fn with_cap(algebra: &'a FiniteAlgebra, translation: Translation, cap: usize) -> Result<Self, DeductionError> {
        let filters = all_filters(algebra, translation, cap)?;
        let index = filters.iter().enumerate().map(|(i, f)| (f.set.clone(), i)).collect();
        Ok(FilterLattice { algebra, translation, filters, index })
    }

    pub fn algebra(&self) -> &'a FiniteAlgebra {
        self.algebra
    }

    pub fn translation(&self) -> Translation {
        self.translation
    }

    pub fn filters(&self) -> &[DeductiveFilter] {
        &self.filters
    }

    pub fn len(&self) -> usize {
        self.filters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.filters.is_empty()
    }

    pub fn set(&self, i: usize) -> &ElemSet {
        &self.filters[i].set
    }

    pub fn index_of(&self, set: &ElemSet) -> Option<usize> {
        self.index.get(set).copied()
    }

    pub fn least(&self) -> usize {
        0
    }

    pub fn is_trivial(&self, i: usize) -> bool {
        self.filters[i].set.is_full()
    }

    /// Least filter containing `xs`: the intersection of all filters that do.
    pub fn generated(&self, xs: &ElemSet) -> usize {
        let mut acc = ElemSet::full(self.algebra.size());
        for f in &self.filters {
            if xs.is_subset(&f.set) {
                acc = acc.intersection(&f.set);
            }
        }
        self.index[&acc]
    }

    /// Least filter containing filter `i` and the elements `xs`.
    pub fn generated_with(&self, i: usize, xs: impl IntoIterator<Item = usize>) -> usize {
        let mut s = self.filters[i].set.clone();
        for x in xs {
            s.insert(x);
        }
        self.generated(&s)
    }

    /// Maximal non-trivial filters.
    pub fn maximal(&self) -> Vec<usize> {
        let n = self.filters.len();
        (0..n)
            .filter(|&i| {
                !self.is_trivial(i)
                    && (0..n).all(|j| {
                        j == i || self.is_trivial(j) || !self.filters[i].set.is_subset(&self.filters[j].set)
                    })
            })
            .collect()
    }
}

/// An algebra with a designated filter.
#[derive(Clone, Debug)]
pub struct Matrix {
    pub algebra: FiniteAlgebra,
    pub filter: ElemSet,
}

impl Matrix {
    pub fn is_trivial(&self) -> bool {
        self.filter.is_full()
    }
}

/// A finite list of matrices.
#[derive(Clone, Debug, Default)]
pub struct MatrixFamily {
    matrices: Vec<Matrix>,
}

impl MatrixFamily {
    /// Each algebra with its least filter.
    pub fn least(algebras: &[FiniteAlgebra]) -> Result<MatrixFamily, DeductionError> {
        let matrices = algebras
            .iter()
            .map(|a| {
                let filter = least_filter(a, Translation::for_algebra(a))?;
                Ok(Matrix { algebra: a.clone(), filter })
            })
            .collect::<Result<_, DeductionError>>()?;
        Ok(MatrixFamily { matrices })
    }

    /// Each algebra with every one of its filters.
    pub fn all_filters(algebras: &[FiniteAlgebra], cap: usize) -> Result<MatrixFamily, DeductionError> {
        let mut matrices = Vec::new();
        for a in algebras {
            for f in all_filters(a, Translation::for_algebra(a), cap)? {
                matrices.push(Matrix { algebra: a.clone(), filter: f.set });
            }
        }
        Ok(MatrixFamily { matrices })
    }

    /// Explicit matrices; each designated set must be a deductive filter.
    pub fn new(matrices: Vec<Matrix>, cap: usize) -> Result<MatrixFamily, DeductionError> {
        for (i, m) in matrices.iter().enumerate() {
            let filters = all_filters(&m.algebra, Translation::for_algebra(&m.algebra), cap)?;
            if !filters.iter().any(|f| f.set == m.filter) {
                return Err(DeductionError::NotAFilter { matrix: i });
            }
        }
        Ok(MatrixFamily { matrices })
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    /// Largest carrier in the family.
    pub fn max_size(&self) -> usize {
        self.matrices.iter().map(|m| m.algebra.size()).max().unwrap_or(0)
    }
}

/// A matrix index and a valuation into it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Countermodel {
    pub matrix: usize,
    pub valuation: Vec<(String, usize)>,
}

fn compile_all(vars: &[String], fs: &[&Formula]) -> Vec<Term> {
    fs.iter().map(|f| Term::compile_with_vars(f, vars)).collect()
}

fn vars_of(fs: &[&Formula]) -> Vec<String> {
    let mut vs = BTreeSet::new();
    for f in fs {
        vs.extend(f.vars());
    }
    vs.into_iter().collect()
}

/// Every valuation that designates all of `gamma` designates `phi`.
pub fn consequence(m: &MatrixFamily, gamma: &[Formula], phi: &Formula) -> Result<Verdict<Countermodel>, DeductionError> {
    let all: Vec<&Formula> = gamma.iter().chain(core::iter::once(phi)).collect();
    let vars = vars_of(&all);
    let terms = compile_all(&vars, &all);
    let (goal, premises) = terms.split_last().expect("phi is present");
    for (i, mx) in m.matrices.iter().enumerate() {
        let a = &mx.algebra;
        for t in &terms {
            a.check_term(t)?;
        }
        let mut buf = Vec::new();
        let mut witness = None;
        for_each_assignment(a.size(), vars.len(), |args| {
            let designated = premises.iter().all(|t| mx.filter.contains(a.eval_term_with(t, args, &mut buf)));
            if designated && !mx.filter.contains(a.eval_term_with(goal, args, &mut buf)) {
                witness = Some(args.to_vec());
                return false;
            }
            true
        });
        if let Some(w) = witness {
            return Ok(Verdict::Fails(Countermodel { matrix: i, valuation: vars.iter().cloned().zip(w).collect() }));
        }
    }
    Ok(Verdict::Holds)
}

/// No valuation into a non-trivial matrix designates all of `gamma`.
pub fn is_antitheorem(m: &MatrixFamily, gamma: &[Formula]) -> Result<Verdict<Countermodel>, DeductionError> {
    let all: Vec<&Formula> = gamma.iter().collect();
    let vars = vars_of(&all);
    let terms = compile_all(&vars, &all);
    for (i, mx) in m.matrices.iter().enumerate() {
        if mx.is_trivial() {
            continue;
        }
        let a = &mx.algebra;
        for t in &terms {
            a.check_term(t)?;
        }
        let mut buf = Vec::new();
        let mut witness = None;
        for_each_assignment(a.size(), vars.len(), |args| {
            if terms.iter().all(|t| mx.filter.contains(a.eval_term_with(t, args, &mut buf))) {
                witness = Some(args.to_vec());
                return false;
            }
            true
        });
        if let Some(w) = witness {
            return Ok(Verdict::Fails(Countermodel { matrix: i, valuation: vars.iter().cloned().zip(w).collect() }));
        }
    }
    Ok(Verdict::Holds)
}

/// A variable name not occurring in any of the formulas.
pub fn fresh_variable(fs: &[Formula]) -> String {
    let used: BTreeSet<String> = fs.iter().flat_map(|f| f.vars()).collect();
    let mut i = 0usize;
    loop {
        let name = if i == 0 { String::from("p") } else { alloc::format!("p{i}") };
        if !used.contains(&name) {
            return name;
        }
        i += 1;
    }
}
