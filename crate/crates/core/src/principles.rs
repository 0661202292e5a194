//! Finite-model checks of inconsistency lemmas, deduction theorems, proof
//! by cases and the excluded middle, quantified over all deductive filters.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{for_each_assignment, AlgebraError, FiniteAlgebra, Term};
use crate::bits::ElemSet;
use crate::congruence::{is_semisimple, CongruenceError};
use crate::deduction::{consequence, Countermodel, DeductionError, FilterLattice, MatrixFamily, Translation};
use crate::formula::{lem_axiom, FamilyArity, Formula, LemForm, LemParams, SchemeError, SchemeFamily};
use crate::verdict::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Principle {
    Il,
    DualIl,
    SimpleIl,
    Ddt,
    Pcp,
}

impl Principle {
    pub fn name(self) -> &'static str {
        match self {
            Principle::Il => "il",
            Principle::DualIl => "dual-il",
            Principle::SimpleIl => "simple-il",
            Principle::Ddt => "ddt",
            Principle::Pcp => "pcp",
        }
    }

    fn arity(self) -> FamilyArity {
        match self {
            Principle::Il | Principle::DualIl | Principle::SimpleIl => FamilyArity::Unary,
            Principle::Ddt | Principle::Pcp => FamilyArity::Binary,
        }
    }
}

/// Which side of the equivalence broke.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureKind {
    /// A member lies in F but F with the element is consistent.
    MemberButConsistent,
    /// F with the element is inconsistent but no inspected member lies in F.
    InconsistentWithoutMember,
    /// The element is in F but F with some member is consistent.
    MemberOfFilterButConsistent,
    /// F with every inspected member is inconsistent, yet the element is not in F.
    RefutedButNotMember,
    /// A member set lies in F but `b` does not follow from F and `a`.
    MemberButNotDerivable,
    /// `b` follows from F and `a` but no inspected member set lies in F.
    DerivableWithoutMember,
    /// The join set generates a different filter from the intersection.
    CasesDiffer,
}

impl FailureKind {
    /// True when the failure depends on the bound of the family.
    pub fn is_bounded(self) -> bool {
        matches!(
            self,
            FailureKind::InconsistentWithoutMember
                | FailureKind::RefutedButNotMember
                | FailureKind::DerivableWithoutMember
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            FailureKind::MemberButConsistent => "member-but-consistent",
            FailureKind::InconsistentWithoutMember => "inconsistent-without-member",
            FailureKind::MemberOfFilterButConsistent => "member-of-filter-but-consistent",
            FailureKind::RefutedButNotMember => "refuted-but-not-member",
            FailureKind::MemberButNotDerivable => "member-but-not-derivable",
            FailureKind::DerivableWithoutMember => "derivable-without-member",
            FailureKind::CasesDiffer => "cases-differ",
        }
    }
}

/// A failing case: a filter, the elements plugged in, and the member index
/// responsible (1-based) where there is one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipleWitness {
    pub filter: ElemSet,
    pub elements: Vec<usize>,
    pub index: Option<usize>,
    pub kind: FailureKind,
}

impl fmt::Display for PrincipleWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "filter={} elements=", self.filter)?;
        for (i, x) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        if let Some(n) = self.index {
            write!(f, " index={n}")?;
        }
        write!(f, " kind={}", self.kind.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrincipleError {
    Deduction(DeductionError),
    Algebra(AlgebraError),
    Scheme(SchemeError),
    Congruence(CongruenceError),
    ArityMismatch { principle: Principle },
    NotGlobal,
}

impl fmt::Display for PrincipleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrincipleError::Deduction(e) => write!(f, "{e}"),
            PrincipleError::Algebra(e) => write!(f, "{e}"),
            PrincipleError::Scheme(e) => write!(f, "{e}"),
            PrincipleError::Congruence(e) => write!(f, "{e}"),
            PrincipleError::ArityMismatch { principle } => {
                write!(f, "family has the wrong arity for {}", principle.name())
            }
            PrincipleError::NotGlobal => f.write_str("proof by cases needs a one-member family"),
        }
    }
}

impl core::error::Error for PrincipleError {}

impl From<DeductionError> for PrincipleError {
    fn from(e: DeductionError) -> Self {
        PrincipleError::Deduction(e)
    }
}
impl From<AlgebraError> for PrincipleError {
    fn from(e: AlgebraError) -> Self {
        PrincipleError::Algebra(e)
    }
}
impl From<SchemeError> for PrincipleError {
    fn from(e: SchemeError) -> Self {
        PrincipleError::Scheme(e)
    }
}
impl From<CongruenceError> for PrincipleError {
    fn from(e: CongruenceError) -> Self {
        PrincipleError::Congruence(e)
    }
}

/// Values of each member set of a family at every argument tuple.
struct Evaluated {
    /// `sets[arg][n]` is the value set of member `n + 1`.
    sets: Vec<Vec<ElemSet>>,
}

impl Evaluated {
    fn new(a: &FiniteAlgebra, fam: &SchemeFamily) -> Result<Evaluated, PrincipleError> {
        let vars: Vec<String> = match fam.arity() {
            FamilyArity::Unary => vec!["p".into()],
            FamilyArity::Binary => vec!["p".into(), "q".into()],
        };
        let terms: Vec<Term> = fam.pool().iter().map(|f| Term::compile_with_vars(f, &vars)).collect();
        for t in &terms {
            a.check_term(t)?;
        }
        let n = a.size();
        let mut sets = Vec::new();
        let mut buf = Vec::new();
        for_each_assignment(n, vars.len(), |args| {
            let values: Vec<usize> = terms.iter().map(|t| a.eval_term_with(t, args, &mut buf)).collect();
            let per_member =
                fam.member_ids().iter().map(|m| ElemSet::from_elems(n, m.iter().map(|&i| values[i]))).collect();
            sets.push(per_member);
            true
        });
        Ok(Evaluated { sets })
    }

    fn at(&self, args: &[usize], size: usize) -> &[ElemSet] {
        let idx = args.iter().fold(0, |acc, &x| acc * size + x);
        &self.sets[idx]
    }
}

/// Collects the least definite and least bounded failure in scan order.
struct Scan {
    definite: Option<PrincipleWitness>,
    bounded: Option<PrincipleWitness>,
    exact: bool,
}

impl Scan {
    fn new(exact: bool) -> Scan {
        Scan { definite: None, bounded: None, exact }
    }

    fn record(&mut self, w: PrincipleWitness) {
        if w.kind.is_bounded() {
            if self.bounded.is_none() {
                self.bounded = Some(w);
            }
        } else if self.definite.is_none() {
            self.definite = Some(w);
        }
    }

    /// Whether scanning can stop.
    fn done(&self) -> bool {
        self.definite.is_some() || (self.exact && self.bounded.is_some())
    }

    fn finish(self) -> Verdict<PrincipleWitness> {
        if self.exact {
            match (self.definite, self.bounded) {
                (Some(w), None) | (None, Some(w)) => Verdict::Fails(w),
                (Some(d), Some(b)) => {
                    let key = |w: &PrincipleWitness| (w.filter.to_vec().len(), w.filter.to_vec(), w.elements.clone());
                    Verdict::Fails(if key(&b) < key(&d) { b } else { d })
                }
                (None, None) => Verdict::Holds,
            }
        } else {
            match self.definite {
                Some(w) => Verdict::Fails(w),
                None => Verdict::HoldsUpToBound,
            }
        }
    }
}

fn require(fam: &SchemeFamily, p: Principle) -> Result<(), PrincipleError> {
    if fam.arity() != p.arity() {
        return Err(PrincipleError::ArityMismatch { principle: p });
    }
    Ok(())
}

fn il_case(fl: &FilterLattice, ev: &Evaluated, f: usize, a: usize) -> Option<PrincipleWitness> {
    let n = fl.algebra().size();
    let set = fl.set(f);
    let trivial = fl.is_trivial(fl.generated_with(f, [a]));
    let members = ev.at(&[a], n);
    let found = members.iter().position(|m| m.is_subset(set));
    let witness = |kind, index| PrincipleWitness { filter: set.clone(), elements: vec![a], index, kind };
    match found {
        Some(i) if !trivial => Some(witness(FailureKind::MemberButConsistent, Some(i + 1))),
        None if trivial => Some(witness(FailureKind::InconsistentWithoutMember, None)),
        _ => None,
    }
}

fn dual_il_case(fl: &FilterLattice, ev: &Evaluated, f: usize, a: usize) -> Option<PrincipleWitness> {
    let n = fl.algebra().size();
    let set = fl.set(f);
    let members = ev.at(&[a], n);
    let consistent = members.iter().position(|m| !fl.is_trivial(fl.generated(&set.union(m))));
    let witness = |kind, index| PrincipleWitness { filter: set.clone(), elements: vec![a], index, kind };
    match (set.contains(a), consistent) {
        (true, Some(i)) => Some(witness(FailureKind::MemberOfFilterButConsistent, Some(i + 1))),
        (false, None) => Some(witness(FailureKind::RefutedButNotMember, None)),
        _ => None,
    }
}

fn ddt_case(fl: &FilterLattice, ev: &Evaluated, f: usize, a: usize, b: usize) -> Option<PrincipleWitness> {
    let n = fl.algebra().size();
    let set = fl.set(f);
    let derivable = fl.set(fl.generated_with(f, [a])).contains(b);
    let members = ev.at(&[a, b], n);
    let found = members.iter().position(|m| m.is_subset(set));
    let witness = |kind, index| PrincipleWitness { filter: set.clone(), elements: vec![a, b], index, kind };
    match found {
        Some(i) if !derivable => Some(witness(FailureKind::MemberButNotDerivable, Some(i + 1))),
        None if derivable => Some(witness(FailureKind::DerivableWithoutMember, None)),
        _ => None,
    }
}

fn pcp_case(fl: &FilterLattice, ev: &Evaluated, f: usize, a: usize, b: usize) -> Option<PrincipleWitness> {
    let n = fl.algebra().size();
    let set = fl.set(f);
    let joined = fl.generated(&set.union(&ev.at(&[a, b], n)[0]));
    let left = fl.set(fl.generated_with(f, [a]));
    let right = fl.set(fl.generated_with(f, [b]));
    if *fl.set(joined) != left.intersection(right) {
        Some(PrincipleWitness { filter: set.clone(), elements: vec![a, b], index: None, kind: FailureKind::CasesDiffer })
    } else {
        None
    }
}

fn scan_unary(
    fl: &FilterLattice,
    fam: &SchemeFamily,
    filters: &[usize],
    case: fn(&FilterLattice, &Evaluated, usize, usize) -> Option<PrincipleWitness>,
) -> Result<Verdict<PrincipleWitness>, PrincipleError> {
    let ev = Evaluated::new(fl.algebra(), fam)?;
    let mut scan = Scan::new(fam.is_exact_for(fl.algebra().size()));
    'outer: for &f in filters {
        for a in 0..fl.algebra().size() {
            if let Some(w) = case(fl, &ev, f, a) {
                scan.record(w);
                if scan.done() {
                    break 'outer;
                }
            }
        }
    }
    Ok(scan.finish())
}

fn scan_binary(
    fl: &FilterLattice,
    fam: &SchemeFamily,
    case: fn(&FilterLattice, &Evaluated, usize, usize, usize) -> Option<PrincipleWitness>,
) -> Result<Verdict<PrincipleWitness>, PrincipleError> {
    let ev = Evaluated::new(fl.algebra(), fam)?;
    let n = fl.algebra().size();
    let mut scan = Scan::new(fam.is_exact_for(n));
    'outer: for f in 0..fl.len() {
        for a in 0..n {
            for b in 0..n {
                if let Some(w) = case(fl, &ev, f, a, b) {
                    scan.record(w);
                    if scan.done() {
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(scan.finish())
}

/// For every filter F and element a: F with a is inconsistent iff some
/// member of `psi` at a lies in F.
pub fn check_il(fl: &FilterLattice, psi: &SchemeFamily) -> Result<Verdict<PrincipleWitness>, PrincipleError> {
    require(psi, Principle::Il)?;
    let all: Vec<usize> = (0..fl.len()).collect();
    scan_unary(fl, psi, &all, il_case)
}

/// For every filter F and element a: a is in F iff F with each member of
/// `psi` at a is inconsistent.
pub fn check_dual_il(fl: &FilterLattice, psi: &SchemeFamily) -> Result<Verdict<PrincipleWitness>, PrincipleError> {
    require(psi, Principle::DualIl)?;
    let all: Vec<usize> = (0..fl.len()).collect();
    scan_unary(fl, psi, &all, dual_il_case)
}

/// The inconsistency lemma restricted to maximal non-trivial filters.
pub fn check_simple_il(fl: &FilterLattice, psi: &SchemeFamily) -> Result<Verdict<PrincipleWitness>, PrincipleError> {
    require(psi, Principle::SimpleIl)?;
    scan_unary(fl, psi, &fl.maximal(), il_case)
}

/// For every filter F and elements a, b: b follows from F and a iff some
/// member set of `phi` at (a, b) lies in F.
pub fn check_ddt(fl: &FilterLattice, phi: &SchemeFamily) -> Result<Verdict<PrincipleWitness>, PrincipleError> {
    require(phi, Principle::Ddt)?;
    scan_binary(fl, phi, ddt_case)
}

/// For every filter F and elements a, b: F with the join set of (a, b)
/// generates the intersection of the filters generated with a and with b.
pub fn check_pcp(fl: &FilterLattice, join: &SchemeFamily) -> Result<Verdict<PrincipleWitness>, PrincipleError> {
    require(join, Principle::Pcp)?;
    if join.bound() != 1 {
        return Err(PrincipleError::NotGlobal);
    }
    scan_binary(fl, join, pcp_case)
}

/// Re-evaluate the single case a witness names; true if it still fails
/// in the way recorded.
pub fn replay(
    fl: &FilterLattice,
    principle: Principle,
    fam: &SchemeFamily,
    w: &PrincipleWitness,
) -> Result<bool, PrincipleError> {
    require(fam, principle)?;
    let Some(f) = fl.index_of(&w.filter) else { return Ok(false) };
    let n = fl.algebra().size();
    if w.elements.iter().any(|&x| x >= n) {
        return Ok(false);
    }
    let ev = Evaluated::new(fl.algebra(), fam)?;
    let again = match (principle, w.elements.as_slice()) {
        (Principle::Il | Principle::SimpleIl, [a]) => il_case(fl, &ev, f, *a),
        (Principle::DualIl, [a]) => dual_il_case(fl, &ev, f, *a),
        (Principle::Ddt, [a, b]) => ddt_case(fl, &ev, f, *a, *b),
        (Principle::Pcp, [a, b]) => pcp_case(fl, &ev, f, *a, *b),
        _ => None,
    };
    Ok(again.as_ref() == Some(w))
}

/// Whether every member of the family at any argument is implied by the
/// next one: F containing member n+1 contains member n. Only meaningful
/// for families read as "weaker with larger index".
pub fn is_monotone(fl: &FilterLattice, fam: &SchemeFamily) -> Result<bool, PrincipleError> {
    let ev = Evaluated::new(fl.algebra(), fam)?;
    let n = fl.algebra().size();
    let k = match fam.arity() {
        FamilyArity::Unary => 1,
        FamilyArity::Binary => 2,
    };
    let mut ok = true;
    for_each_assignment(n, k, |args| {
        let sets = ev.at(args, n);
        for f in 0..fl.len() {
            for i in 0..sets.len().saturating_sub(1) {
                if sets[i].is_subset(fl.set(f)) && !sets[i + 1].is_subset(fl.set(f)) {
                    ok = false;
                    return false;
                }
            }
        }
        true
    });
    Ok(ok)
}

/// Outcome of an excluded-middle axiom check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemAxiomReport {
    pub formula: Formula,
    pub valid: bool,
    /// Least valuation giving an undesignated value.
    pub witness: Option<Vec<(String, usize)>>,
}

/// Validity of the axiomatic excluded middle: the value is designated by
/// the least filter (at least 1 for FL, equal to 1 for modal algebras).
pub fn check_lem_axiom(a: &FiniteAlgebra, form: LemForm, params: LemParams) -> Result<LemAxiomReport, PrincipleError> {
    let formula = lem_axiom(form, params)?;
    let fam = MatrixFamily::least(core::slice::from_ref(a))?;
    let verdict = consequence(&fam, &[], &formula)?;
    Ok(LemAxiomReport { valid: verdict.is_holds(), witness: verdict.witness().map(|w| w.valuation.clone()), formula })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheckRow {
    pub name: String,
    pub size: usize,
    pub semisimple: bool,
    /// Least n in the range validating the axiom.
    pub lem_n: Option<u32>,
}

impl CrossCheckRow {
    pub fn agrees(&self) -> bool {
        self.semisimple == self.lem_n.is_some()
    }
}

/// Semisimplicity against the excluded-middle axiom for each algebra.
pub fn semisimple_vs_lem(
    algebras: &[FiniteAlgebra],
    form: LemForm,
    params: LemParams,
    ns: core::ops::RangeInclusive<u32>,
    cap: usize,
) -> Result<Vec<CrossCheckRow>, PrincipleError> {
    let mut rows = Vec::new();
    for a in algebras {
        let semisimple = is_semisimple(a, cap)?.semisimple;
        let mut lem_n = None;
        for n in ns.clone() {
            if check_lem_axiom(a, form, params.with_n(n))?.valid {
                lem_n = Some(n);
                break;
            }
        }
        rows.push(CrossCheckRow { name: a.name().into(), size: a.size(), semisimple, lem_n });
    }
    Ok(rows)
}

/// Plain validity of the rule over the family.
pub fn check_rule(m: &MatrixFamily, gamma: &[Formula], phi: &Formula) -> Result<Verdict<Countermodel>, PrincipleError> {
    Ok(consequence(m, gamma, phi)?)
}

/// A filter and valuation on which inconsistency of the conclusion does
/// not carry over to the premises.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntiWitness {
    pub algebra: usize,
    pub filter: ElemSet,
    pub valuation: Vec<(String, usize)>,
}

/// For every algebra of the family, every filter F and valuation v:
/// F with v(phi) inconsistent implies F with v[gamma] inconsistent.
pub fn antiadmissible(
    m: &MatrixFamily,
    gamma: &[Formula],
    phi: &Formula,
    cap: usize,
) -> Result<Verdict<AntiWitness>, PrincipleError> {
    let mut vars = alloc::collections::BTreeSet::new();
    for f in gamma.iter().chain(core::iter::once(phi)) {
        vars.extend(f.vars());
    }
    let vars: Vec<String> = vars.into_iter().collect();
    let goal = Term::compile_with_vars(phi, &vars);
    let premises: Vec<Term> = gamma.iter().map(|g| Term::compile_with_vars(g, &vars)).collect();
    let mut seen: Vec<&FiniteAlgebra> = Vec::new();
    for (i, mx) in m.matrices().iter().enumerate() {
        let a = &mx.algebra;
        if seen.contains(&a) {
            continue;
        }
        seen.push(a);
        a.check_term(&goal)?;
        for t in &premises {
            a.check_term(t)?;
        }
        let fl = FilterLattice::with_cap(a, Translation::for_algebra(a), cap)?;
        let mut buf = Vec::new();
        for f in 0..fl.len() {
            let mut witness = None;
            for_each_assignment(a.size(), vars.len(), |args| {
                let g = a.eval_term_with(&goal, args, &mut buf);
                if fl.is_trivial(fl.generated_with(f, [g])) {
                    let vs: Vec<usize> = premises.iter().map(|t| a.eval_term_with(t, args, &mut buf)).collect();
                    if !fl.is_trivial(fl.generated_with(f, vs)) {
                        witness = Some(args.to_vec());
                        return false;
                    }
                }
                true
            });
            if let Some(w) = witness {
                return Ok(Verdict::Fails(AntiWitness {
                    algebra: i,
                    filter: fl.set(f).clone(),
                    valuation: vars.iter().cloned().zip(w).collect(),
                }));
            }
        }
    }
    Ok(Verdict::Holds)
}

#[cfg(test)]
mod tests;
