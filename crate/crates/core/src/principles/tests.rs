use super::*;
use crate::algebra::Valuation;
use crate::classes::AlgebraClass;
use crate::deduction::filter_generated;
use crate::formula::{parse, Combinator, SchemeFamily};
use crate::search::catalog_up_to;
use crate::testutil::*;
use proptest::prelude::*;

fn lattice(a: &FiniteAlgebra) -> FilterLattice<'_> {
    FilterLattice::new(a, Translation::for_algebra(a)).unwrap()
}

fn fam(spec: &str, bound: usize) -> SchemeFamily {
    SchemeFamily::builtin(spec, bound).unwrap()
}

fn es(a: &FiniteAlgebra, xs: &[usize]) -> ElemSet {
    ElemSet::from_elems(a.size(), xs.iter().copied())
}

fn witness(a: &FiniteAlgebra, filter: &[usize], elements: &[usize], index: Option<usize>, kind: FailureKind) -> PrincipleWitness {
    PrincipleWitness { filter: es(a, filter), elements: elements.to_vec(), index, kind }
}

/// Independent rendering of every case: member values by formula
/// evaluation, consistency by direct filter generation.
struct Oracle<'a> {
    a: &'a FiniteAlgebra,
    t: Translation,
    filters: Vec<ElemSet>,
}

impl<'a> Oracle<'a> {
    fn new(a: &'a FiniteAlgebra) -> Oracle<'a> {
        let fl = lattice(a);
        Oracle { a, t: fl.translation(), filters: (0..fl.len()).map(|i| fl.set(i).clone()).collect() }
    }

    fn fg(&self, xs: &ElemSet) -> ElemSet {
        filter_generated(self.a, self.t, xs).unwrap().set
    }

    fn member(&self, fam: &SchemeFamily, n: usize, args: &[usize]) -> ElemSet {
        let mut v = Valuation::new();
        v.insert("p".into(), args[0]);
        if args.len() > 1 {
            v.insert("q".into(), args[1]);
        }
        ElemSet::from_elems(self.a.size(), fam.member(n).unwrap().into_iter().map(|f| self.a.evaluate(f, &v).unwrap()))
    }

    fn with(&self, f: &ElemSet, xs: &[usize]) -> ElemSet {
        let mut s = f.clone();
        for &x in xs {
            s.insert(x);
        }
        self.fg(&s)
    }

    /// Failing cases in scan order, each with its kind.
    fn failures(&self, p: Principle, fam: &SchemeFamily, only: Option<&[ElemSet]>) -> Vec<PrincipleWitness> {
        let n = self.a.size();
        let filters = only.map(|s| s.to_vec()).unwrap_or_else(|| self.filters.clone());
        let mut out = Vec::new();
        for f in &filters {
            let tuples: Vec<Vec<usize>> = match p {
                Principle::Ddt | Principle::Pcp => (0..n).flat_map(|a| (0..n).map(move |b| vec![a, b])).collect(),
                _ => (0..n).map(|a| vec![a]).collect(),
            };
            for args in tuples {
                let mk = |kind, index| PrincipleWitness { filter: f.clone(), elements: args.clone(), index, kind };
                let members: Vec<ElemSet> = (1..=fam.bound()).map(|i| self.member(fam, i, &args)).collect();
                let inside = members.iter().position(|m| m.is_subset(f)).map(|i| i + 1);
                match p {
                    Principle::Il | Principle::SimpleIl => {
                        let trivial = self.with(f, &args).is_full();
                        match inside {
                            Some(i) if !trivial => out.push(mk(FailureKind::MemberButConsistent, Some(i))),
                            None if trivial => out.push(mk(FailureKind::InconsistentWithoutMember, None)),
                            _ => {}
                        }
                    }
                    Principle::DualIl => {
                        let consistent = members.iter().position(|m| !self.fg(&f.union(m)).is_full());
                        match (f.contains(args[0]), consistent) {
                            (true, Some(i)) => out.push(mk(FailureKind::MemberOfFilterButConsistent, Some(i + 1))),
                            (false, None) => out.push(mk(FailureKind::RefutedButNotMember, None)),
                            _ => {}
                        }
                    }
                    Principle::Ddt => {
                        let derivable = self.with(f, &args[..1]).contains(args[1]);
                        match inside {
                            Some(i) if !derivable => out.push(mk(FailureKind::MemberButNotDerivable, Some(i))),
                            None if derivable => out.push(mk(FailureKind::DerivableWithoutMember, None)),
                            _ => {}
                        }
                    }
                    Principle::Pcp => {
                        let joined = self.fg(&f.union(&members[0]));
                        let cases = self.with(f, &args[..1]).intersection(&self.with(f, &args[1..]));
                        if joined != cases {
                            out.push(mk(FailureKind::CasesDiffer, None));
                        }
                    }
                }
            }
        }
        out
    }

    /// The verdict the failures imply for the family.
    fn verdict(&self, p: Principle, fam: &SchemeFamily, only: Option<&[ElemSet]>) -> Verdict<PrincipleWitness> {
        let fails = self.failures(p, fam, only);
        if fam.is_exact_for(self.a.size()) {
            fails.into_iter().next().map_or(Verdict::Holds, Verdict::Fails)
        } else {
            fails.into_iter().find(|w| !w.kind.is_bounded()).map_or(Verdict::HoldsUpToBound, Verdict::Fails)
        }
    }
}

fn run(p: Principle, fl: &FilterLattice, f: &SchemeFamily) -> Verdict<PrincipleWitness> {
    match p {
        Principle::Il => check_il(fl, f),
        Principle::DualIl => check_dual_il(fl, f),
        Principle::SimpleIl => check_simple_il(fl, f),
        Principle::Ddt => check_ddt(fl, f),
        Principle::Pcp => check_pcp(fl, f),
    }
    .unwrap()
}

#[test]
fn il_examples() {
    let l5 = luk(5);
    assert_eq!(check_il(&lattice(&l5), &fam("flew-il", 5)).unwrap(), Verdict::Holds);
    let g3 = godel(3);
    assert_eq!(check_il(&lattice(&g3), &fam("classical-il", 1)).unwrap(), Verdict::Holds);
    let l3 = luk(3);
    let v = check_il(&lattice(&l3), &fam("classical-il", 1)).unwrap();
    assert_eq!(v, Verdict::Fails(witness(&l3, &[2], &[1], None, FailureKind::InconsistentWithoutMember)));
    assert_eq!(check_il(&lattice(&l3), &fam("flew-il", 1)).unwrap(), Verdict::HoldsUpToBound);
}

#[test]
fn dual_il_examples() {
    let b2 = boolean(1);
    assert_eq!(check_dual_il(&lattice(&b2), &fam("classical-il", 1)).unwrap(), Verdict::Holds);
    let g3 = godel(3);
    let v = check_dual_il(&lattice(&g3), &fam("classical-il", 1)).unwrap();
    assert_eq!(v, Verdict::Fails(witness(&g3, &[2], &[1], None, FailureKind::RefutedButNotMember)));
    let l3 = luk(3);
    assert!(check_dual_il(&lattice(&l3), &fam("flew-il", 2)).unwrap().is_not_refuted());
    assert_eq!(check_dual_il(&lattice(&l3), &fam("flew-il", 3)).unwrap(), Verdict::Holds);
}

#[test]
fn ddt_examples() {
    let g3 = godel(3);
    assert_eq!(check_ddt(&lattice(&g3), &fam("imp-ddt", 1)).unwrap(), Verdict::Holds);
    let l3 = luk(3);
    let v = check_ddt(&lattice(&l3), &fam("imp-ddt", 1)).unwrap();
    assert_eq!(v, Verdict::Fails(witness(&l3, &[2], &[1, 0], None, FailureKind::DerivableWithoutMember)));
    assert!(check_ddt(&lattice(&l3), &fam("flew-ddt", 2)).unwrap().is_not_refuted());
    assert_eq!(check_ddt(&lattice(&l3), &fam("flew-ddt", 3)).unwrap(), Verdict::Holds);
}

#[test]
fn pcp_examples() {
    let g3 = godel(3);
    assert_eq!(check_pcp(&lattice(&g3), &fam("join-pcp", 1)).unwrap(), Verdict::Holds);
    let s4 = s4_four();
    let v = check_pcp(&lattice(&s4), &fam("join-pcp", 1)).unwrap();
    assert_eq!(v, Verdict::Fails(witness(&s4, &[3], &[1, 2], None, FailureKind::CasesDiffer)));
    assert_eq!(check_pcp(&lattice(&s4), &fam("s4-pcp", 1)).unwrap(), Verdict::Holds);
    assert_eq!(check_pcp(&lattice(&g3), &fam("flew-ddt", 2)).unwrap_err(), PrincipleError::NotGlobal);
}

#[test]
fn arity_is_checked() {
    let g3 = godel(3);
    let e = check_il(&lattice(&g3), &fam("imp-ddt", 1)).unwrap_err();
    assert_eq!(e, PrincipleError::ArityMismatch { principle: Principle::Il });
    assert!(check_ddt(&lattice(&g3), &fam("classical-il", 1)).is_err());
}

#[test]
fn derived_ddt_examples() {
    let classical = SchemeFamily::ddt_from_cil(&fam("classical-il", 1), Combinator::Fusion).unwrap();
    let b2 = boolean(1);
    for a in 0..2 {
        for b in 0..2 {
            let v: Valuation = [("p".to_string(), a), ("q".to_string(), b)].into_iter().collect();
            let lhs = b2.evaluate(classical.member(1).unwrap()[0], &v).unwrap();
            assert_eq!(lhs, b2.evaluate(&parse("p -> q").unwrap(), &v).unwrap());
        }
    }
    let boxed = SchemeFamily::ddt_from_cil(&fam("box-il:n=1", 1), Combinator::Meet).unwrap();
    assert_eq!(boxed.member(1).unwrap()[0].to_string(), "~ []_1 (p /\\ ~ []_1 q)");
    let s4 = s4_four();
    let psi = fam("box-il:n=1", 1);
    assert!(check_dual_il(&lattice(&s4), &psi).unwrap().is_fails());
    let v = check_ddt(&lattice(&s4), &boxed).unwrap();
    assert_eq!(v, Verdict::Fails(witness(&s4, &[3], &[3, 2], Some(1), FailureKind::MemberButNotDerivable)));
    let s5 = AlgebraClass::parse("s5").unwrap();
    let mut s5_seen = 0;
    for a in modal_samples().iter().filter(|a| s5.contains(a)) {
        let fl = lattice(a);
        assert!(check_il(&fl, &psi).unwrap().is_holds() && check_dual_il(&fl, &psi).unwrap().is_holds());
        assert_eq!(check_ddt(&fl, &boxed).unwrap(), Verdict::Holds, "{}", a.name());
        s5_seen += 1;
    }
    assert!(s5_seen >= 2);
    let l5 = luk(5);
    let derived = SchemeFamily::ddt_from_cil(&fam("flew-il", 5), Combinator::Fusion).unwrap();
    assert_eq!(check_ddt(&lattice(&l5), &derived).unwrap(), Verdict::Holds);
}

#[test]
fn lem_axiom_examples() {
    let l3 = luk(3);
    let r = check_lem_axiom(&l3, LemForm::Pcp, LemParams::Flew { n: 1 }).unwrap();
    assert!(!r.valid);
    assert_eq!(r.witness, Some(vec![("p".to_string(), 1)]));
    assert!(check_lem_axiom(&l3, LemForm::Pcp, LemParams::Flew { n: 2 }).unwrap().valid);
    let s4 = s4_four();
    let r = check_lem_axiom(&s4, LemForm::Cyclic, LemParams::Kn4 { n: 1 }).unwrap();
    assert!(!r.valid);
    assert_eq!(r.witness, Some(vec![("p".to_string(), 1)]));
}

#[test]
fn semisimplicity_against_excluded_middle() {
    let chains: Vec<_> = (2..=7).map(luk).collect();
    let rows = semisimple_vs_lem(&chains, LemForm::Pcp, LemParams::Flew { n: 1 }, 1..=6, 12).unwrap();
    for (k, row) in (2..=7).zip(&rows) {
        assert!(row.semisimple && row.agrees());
        assert_eq!(row.lem_n, Some(k - 1));
    }
    let heyting = catalog_up_to(&AlgebraClass::parse("heyting").unwrap(), 6).unwrap();
    let rows = semisimple_vs_lem(heyting.entries(), LemForm::Ddt, LemParams::Flew { n: 1 }, 1..=1, 12).unwrap();
    let boolean = AlgebraClass::parse("boolean").unwrap();
    for (a, row) in heyting.iter().zip(&rows) {
        assert!(row.agrees());
        assert_eq!(row.semisimple, boolean.contains(a));
    }
    let s4 = catalog_up_to(&AlgebraClass::parse("s4").unwrap(), 8).unwrap();
    let s5 = AlgebraClass::parse("s5").unwrap();
    for a in &s4 {
        assert_eq!(crate::congruence::is_semisimple(a, 12).unwrap().semisimple, s5.contains(a), "{}", a.name());
    }
}

#[test]
fn rule_examples() {
    let heyting = catalog_up_to(&AlgebraClass::parse("heyting").unwrap(), 5).unwrap();
    let m = MatrixFamily::least(heyting.entries()).unwrap();
    let f = |s: &str| parse(s).unwrap();
    assert!(antiadmissible(&m, &[f("~~p")], &f("p"), 12).unwrap().is_holds());
    assert!(antiadmissible(&m, &[f("p")], &f("p"), 12).unwrap().is_holds());
    assert!(check_rule(&m, &[f("~(p /\\ ~q)")], &f("~~(p -> q)")).unwrap().is_holds());
    assert!(check_rule(&m, &[f("~~p")], &f("p")).unwrap().is_fails());
    assert!(antiadmissible(&m, &[f("p")], &f("q"), 12).unwrap().is_fails());
}

#[test]
fn witnesses_render() {
    let l3 = luk(3);
    let w = witness(&l3, &[2], &[1, 0], Some(2), FailureKind::MemberButNotDerivable);
    assert_eq!(w.to_string(), "filter={2} elements=1,0 index=2 kind=member-but-not-derivable");
}

fn residuated_cases() -> Vec<(FiniteAlgebra, &'static str, usize)> {
    let mut out = Vec::new();
    for a in residuated_samples() {
        let n = a.size();
        for (spec, bounds) in [("classical-il", vec![1]), ("fle-il", vec![1, 2, n]), ("luk-il:k=2", vec![1])] {
            for b in bounds {
                out.push((a.clone(), spec, b));
            }
        }
        let integral = a.one() == a.top();
        if integral {
            out.push((a.clone(), "flew-il", n));
        }
    }
    out
}

fn modal_cases() -> Vec<(FiniteAlgebra, &'static str, usize)> {
    let mut out = Vec::new();
    for a in modal_samples() {
        for (spec, b) in [("ik-il", 1), ("ik-il", a.size()), ("s4-il", 1), ("box-il:n=2", 1), ("classical-il", 1)] {
            out.push((a.clone(), spec, b));
        }
    }
    out
}

fn binary_cases() -> Vec<(FiniteAlgebra, &'static str, usize)> {
    let mut out = Vec::new();
    for a in residuated_samples() {
        for (spec, b) in [("fle-ddt", 2), ("fle-ddt", a.size()), ("imp-ddt", 1), ("join-pcp", 1), ("fle-pcp", 1)] {
            out.push((a.clone(), spec, b));
        }
    }
    for a in modal_samples() {
        for (spec, b) in [("ik-ddt", 1), ("ik-ddt", a.size()), ("s4-ddt", 1), ("join-pcp", 1), ("s4-pcp", 1)] {
            out.push((a.clone(), spec, b));
        }
    }
    out
}

#[test]
fn unary_checks_match_oracle() {
    for (a, spec, b) in residuated_cases().into_iter().chain(modal_cases()) {
        let fl = lattice(&a);
        let f = fam(spec, b);
        let oracle = Oracle::new(&a);
        for p in [Principle::Il, Principle::DualIl] {
            let got = run(p, &fl, &f);
            assert_eq!(got, oracle.verdict(p, &f, None), "{} {spec} {b} {}", a.name(), p.name());
            if let Verdict::Fails(w) = &got {
                assert!(replay(&fl, p, &f, w).unwrap());
            }
        }
        let maximal: Vec<ElemSet> = fl.maximal().into_iter().map(|i| fl.set(i).clone()).collect();
        assert_eq!(run(Principle::SimpleIl, &fl, &f), oracle.verdict(Principle::Il, &f, Some(&maximal)));
    }
}

#[test]
fn binary_checks_match_oracle() {
    for (a, spec, b) in binary_cases() {
        let fl = lattice(&a);
        let f = fam(spec, b);
        let oracle = Oracle::new(&a);
        let p = if spec.ends_with("pcp") { Principle::Pcp } else { Principle::Ddt };
        let got = run(p, &fl, &f);
        assert_eq!(got, oracle.verdict(p, &f, None), "{} {spec} {b}", a.name());
        if let Verdict::Fails(w) = &got {
            assert!(replay(&fl, p, &f, w).unwrap());
            let mut other = w.clone();
            other.elements.reverse();
            if other != *w {
                assert_eq!(replay(&fl, p, &f, &other).unwrap(), oracle.failures(p, &f, None).contains(&other));
            }
        }
    }
}

#[test]
fn global_families_are_exact() {
    let g3 = godel(3);
    let fl = lattice(&g3);
    for spec in ["classical-il", "luk-il:k=2"] {
        assert_ne!(check_il(&fl, &fam(spec, 1)).unwrap(), Verdict::HoldsUpToBound);
    }
}

#[test]
fn il_and_dual_il_give_classical_il() {
    let flew = catalog_up_to(&AlgebraClass::parse("flew").unwrap(), 5).unwrap();
    let mut both = 0;
    for a in &flew {
        let fl = lattice(a);
        let psi = fam("flew-il", a.size());
        if !check_il(&fl, &psi).unwrap().is_holds() {
            continue;
        }
        let partners = [fam("classical-il", 1), fam("luk-il:k=2", 1), fam("luk-il:k=3", 1), fam("luk-il:k=4", 1)];
        if partners.iter().any(|q| check_dual_il(&fl, q).unwrap().is_holds()) {
            both += 1;
            assert!(check_dual_il(&fl, &psi).unwrap().is_holds(), "{}", a.name());
        }
    }
    assert!(both > 0);
}

#[test]
fn semisimple_iff_dual_il_under_il() {
    let mut cases: Vec<(FiniteAlgebra, SchemeFamily)> = Vec::new();
    for a in catalog_up_to(&AlgebraClass::parse("flew").unwrap(), 5).unwrap().into_entries() {
        let n = a.size();
        cases.push((a, fam("flew-il", n)));
    }
    for a in catalog_up_to(&AlgebraClass::parse("fle").unwrap(), 4).unwrap().into_entries() {
        let n = a.size();
        cases.push((a, fam("fle-il", n)));
    }
    for a in catalog_up_to(&AlgebraClass::parse("is4").unwrap(), 5).unwrap().into_entries() {
        let n = a.size();
        cases.push((a, fam("ik-il", n)));
    }
    let mut seen = [0usize; 2];
    for (a, psi) in &cases {
        let fl = lattice(a);
        assert!(check_il(&fl, psi).unwrap().is_holds(), "{}", a.name());
        let semisimple = crate::congruence::is_semisimple(a, 12).unwrap().semisimple;
        assert_eq!(semisimple, check_dual_il(&fl, psi).unwrap().is_holds(), "{}", a.name());
        seen[semisimple as usize] += 1;
    }
    assert!(seen[0] > 0 && seen[1] > 0);
}

#[test]
fn derived_ddt_is_sound_where_psi_is_classical() {
    let mut checked = 0;
    let algebras: Vec<FiniteAlgebra> = catalog_up_to(&AlgebraClass::parse("flew").unwrap(), 4)
        .unwrap()
        .into_entries()
        .into_iter()
        .chain((2..=6).map(luk))
        .collect();
    for a in &algebras {
        let fl = lattice(a);
        let psi = fam("flew-il", a.size().min(4));
        if !(check_il(&fl, &psi).unwrap().is_not_refuted() && check_dual_il(&fl, &psi).unwrap().is_not_refuted()) {
            continue;
        }
        checked += 1;
        let derived = SchemeFamily::ddt_from_cil(&psi, Combinator::Fusion).unwrap();
        let v = check_ddt(&fl, &derived).unwrap();
        assert!(!v.is_fails(), "{}: {:?}", a.name(), v);
        if psi.is_exact_for(a.size()) {
            assert!(v.is_holds());
        }
    }
    assert!(checked >= 5);
}

fn rule_formula() -> impl Strategy<Value = Formula> {
    let pool = ["p", "q", "~p", "~~p", "p -> q", "~(p /\\ ~q)", "p \\/ ~p", "~~(p -> q)", "p /\\ q", "~q -> ~p", "B"];
    prop::sample::select(pool.to_vec()).prop_map(|s| parse(s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn valid_rules_are_antiadmissible(gamma in prop::collection::vec(rule_formula(), 0..3), phi in rule_formula()) {
        let heyting = catalog_up_to(&AlgebraClass::parse("heyting").unwrap(), 5).unwrap();
        let m = MatrixFamily::least(heyting.entries()).unwrap();
        if check_rule(&m, &gamma, &phi).unwrap().is_holds() {
            prop_assert!(antiadmissible(&m, &gamma, &phi, 12).unwrap().is_holds());
        }
    }

    #[test]
    fn il_verdicts_are_monotone_in_the_bound(pick in 0usize..1000, b in 1usize..4) {
        let samples = residuated_samples();
        let a = &samples[pick % samples.len()];
        let fl = lattice(a);
        let small = check_il(&fl, &fam("fle-il", b)).unwrap();
        let large = check_il(&fl, &fam("fle-il", b + 1)).unwrap();
        prop_assert!(is_monotone(&fl, &fam("fle-il", b + 1)).unwrap());
        if large.is_fails() {
            prop_assert!(small.is_fails());
        }
    }
}
