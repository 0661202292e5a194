//! Acceptance suite: one line per criterion, non-zero exit on any failure.

use std::time::Instant;

use alg_core::algebra::FiniteAlgebra;
use alg_core::classes::{make_lukasiewicz_chain, AlgebraClass, ClassKind, ClassOptions, Law};
use alg_core::congruence::{is_semisimple, is_simple, DEFAULT_CAP};
use alg_core::deduction::{filter_generated, FilterLattice, MatrixFamily, Translation};
use alg_core::formula::{parse, Combinator, Formula, LemForm, LemParams, SchemeFamily};
use alg_core::glivenko::{
    glivenko_check, lukinfty_ddt_countermodel, multiple_ddt_family, random_formula, GlivenkoPair, Outcome,
};
use alg_core::principles::{antiadmissible, check_ddt, check_dual_il, check_il, check_lem_axiom, check_rule};
use alg_core::search::{catalog_of_sizes, catalog_up_to};
use alg_core::{Term, Verdict};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome_ = Result<String, String>;

fn class(kind: ClassKind) -> AlgebraClass {
    AlgebraClass::new(kind, ClassOptions::default())
}

fn f(text: &str) -> Formula {
    parse(text).expect("formula")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn semisimple(a: &FiniteAlgebra) -> bool {
    is_semisimple(a, DEFAULT_CAP).expect("congruences").semisimple
}

fn validates(a: &FiniteAlgebra, law: &Law) -> bool {
    law.first_failure(a).is_none()
}

fn pow(a: &FiniteAlgebra, x: usize, n: u32) -> usize {
    (0..n).fold(a.one(), |acc, _| a.fuse(acc, x))
}

fn criterion_1() -> Outcome_ {
    for k in 2..=7 {
        let a = make_lukasiewicz_chain(k).map_err(|e| e.to_string())?;
        ensure(is_simple(&a).unwrap(), || format!("L{k} is not simple"))?;
        for n in 1..=8u32 {
            let direct = (0..k).all(|x| a.join(x, a.neg(pow(&a, x, n))) == a.top());
            let via_axiom = check_lem_axiom(&a, LemForm::Pcp, LemParams::Flew { n }).unwrap().valid;
            let expected = n as usize >= k - 1;
            ensure(direct == expected && via_axiom == expected, || {
                format!("L{k}, n={n}: table {direct}, axiom {via_axiom}, expected {expected}")
            })?;
        }
    }
    let l3 = make_lukasiewicz_chain(3).unwrap();
    let lem1 = check_lem_axiom(&l3, LemForm::Pcp, LemParams::Flew { n: 1 }).unwrap();
    let lem2 = check_lem_axiom(&l3, LemForm::Pcp, LemParams::Flew { n: 2 }).unwrap();
    ensure(!lem1.valid && lem2.valid, || "L3 excluded middle at n=1,2".into())?;
    Ok("L2..L7 simple; x or ~x^n >= 1 iff n >= k-1 for n <= 8".into())
}

fn criterion_2(heyting: &[FiniteAlgebra]) -> Outcome_ {
    let lem = Law::eq("lem", "x \\/ ~x", "T");
    let mut boolean = 0;
    for a in heyting {
        let ss = semisimple(a);
        let b = validates(a, &lem);
        ensure(ss == b, || format!("{}: semisimple {ss}, excluded middle {b}", a.name()))?;
        boolean += usize::from(b);
    }
    Ok(format!("{} Heyting algebras up to 6, {boolean} semisimple, all Boolean", heyting.len()))
}

fn criterion_3() -> Outcome_ {
    let s4 = catalog_of_sizes(&class(ClassKind::S4), [2, 4, 8]).map_err(|e| e.to_string())?;
    let symmetry = Law::le("symmetry", "x", "[]<>x");
    let mut ss_count = 0;
    for a in &s4 {
        let ss = semisimple(a);
        let s5 = validates(a, &symmetry);
        ensure(ss == s5, || format!("{}: semisimple {ss}, x <= []<>x {s5}", a.name()))?;
        ss_count += usize::from(ss);
    }
    Ok(format!("{} S4 algebras on 2, 4, 8 elements, {ss_count} semisimple", s4.len()))
}

fn criterion_4() -> Outcome_ {
    let mut total = 0;
    for n in 1..=2u32 {
        let cat = catalog_up_to(&class(ClassKind::Flen(n)), 5).map_err(|e| e.to_string())?;
        let law = Law::le("lem", "1", &format!("(1 /\\ x) \\/ (1 /\\ ~(1 /\\ x)^{n})"));
        for a in &cat {
            let ss = semisimple(a);
            let lem = validates(a, &law);
            let axiom = check_lem_axiom(a, LemForm::Pcp, LemParams::Flen { n }).unwrap().valid;
            ensure(ss == lem && lem == axiom, || {
                format!("{} (n={n}): semisimple {ss}, equation {lem}, axiom {axiom}", a.name())
            })?;
        }
        total += cat.len();
    }
    Ok(format!("{total} FLe^n algebras up to 5 (n = 1, 2)"))
}

fn fg_oracle_agrees(a: &FiniteAlgebra) -> Result<(), String> {
    let t = Translation::for_algebra(a);
    let fl = FilterLattice::new(a, t).map_err(|e| e.to_string())?;
    for i in 0..fl.len() {
        for x in 0..a.size() {
            let mut set = fl.set(i).clone();
            set.insert(x);
            let direct = filter_generated(a, t, &set).map_err(|e| e.to_string())?;
            let lattice = fl.set(fl.generated_with(i, [x]));
            ensure(direct.set == *lattice, || format!("{}: Fg mismatch at filter {i}, element {x}", a.name()))?;
        }
    }
    Ok(())
}

fn criterion_5(flew5: &[FiniteAlgebra], heyting: &[FiniteAlgebra]) -> Outcome_ {
    for a in flew5 {
        fg_oracle_agrees(a)?;
        let fam = SchemeFamily::builtin("flew-il", a.size()).unwrap();
        let fl = FilterLattice::new(a, Translation::Fl).unwrap();
        let v = check_il(&fl, &fam).unwrap();
        ensure(v.is_holds(), || format!("{}: flew IL gives {}", a.name(), v.label()))?;
    }
    let classical = SchemeFamily::builtin("classical-il", 1).unwrap();
    for a in heyting {
        fg_oracle_agrees(a)?;
        let fl = FilterLattice::new(a, Translation::Fl).unwrap();
        let v = check_il(&fl, &classical).unwrap();
        ensure(v.is_holds(), || format!("{}: classical IL gives {}", a.name(), v.label()))?;
    }
    Ok(format!("{} FLew algebras up to 5 and {} Heyting algebras, all exact HOLDS", flew5.len(), heyting.len()))
}

fn criterion_6(flew: &[FiniteAlgebra]) -> Outcome_ {
    let mut ss_count = 0;
    for a in flew {
        let fam = SchemeFamily::builtin("flew-il", a.size()).unwrap();
        let fl = FilterLattice::new(a, Translation::Fl).unwrap();
        let v = check_dual_il(&fl, &fam).unwrap();
        ensure(!matches!(v, Verdict::HoldsUpToBound), || format!("{}: dual IL only up to bound", a.name()))?;
        let ss = semisimple(a);
        ensure(v.is_holds() == ss, || format!("{}: dual IL {}, semisimple {ss}", a.name(), v.label()))?;
        ss_count += usize::from(ss);
    }
    Ok(format!("{} FLew algebras up to 6, {ss_count} semisimple", flew.len()))
}

fn criterion_7() -> Outcome_ {
    let pair = GlivenkoPair::classical(6).map_err(|e| e.to_string())?;
    let curated: [(&str, bool); 13] = [
        ("((p -> q) -> p) -> p", true),
        ("p \\/ ~p", true),
        ("~~p -> p", true),
        ("(p -> q) \\/ (q -> p)", true),
        ("~(p /\\ q) -> ~p \\/ ~q", true),
        ("((p -> q) -> q) -> p \\/ q", true),
        ("(~p -> p) -> p", true),
        ("p -> q \\/ ~q", true),
        ("p -> p", true),
        ("p", false),
        ("p -> q", false),
        ("p \\/ q -> p", false),
        ("~~p", false),
    ];
    for (text, classical) in curated {
        let r = glivenko_check(&pair, &[], &f(text)).map_err(|e| e.to_string())?;
        ensure(r.outcome == Outcome::Match && r.strong.is_holds() == classical, || {
            format!("`{text}`: strong {}, weak {}", r.strong.label(), r.weak_label())
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(20240611);
    let mut exact = 0;
    let mut mismatches = 0;
    for _ in 0..500 {
        let phi = random_formula(&mut rng, 8, &["p", "q"]);
        let r = glivenko_check(&pair, &[], &phi).map_err(|e| e.to_string())?;
        exact += usize::from(r.exact_mismatch);
        mismatches += usize::from(r.outcome == Outcome::Mismatch);
    }
    ensure(exact == 0, || format!("{exact} exact mismatches in 500 samples"))?;
    Ok(format!("13 curated MATCH; 500 random: {exact} exact mismatches, {mismatches} mismatches"))
}

fn criterion_8() -> Outcome_ {
    let mipc = catalog_up_to(&class(ClassKind::Mipc), 6).map_err(|e| e.to_string())?;
    let ws5 = class(ClassKind::Ws5);
    let lhs = Term::compile(&f("~~[]x"));
    let rhs = Term::compile(&f("~[]~[]x"));
    for a in &mipc {
        for x in 0..a.size() {
            let (l, r) = (a.eval_term(&lhs, &[x]), a.eval_term(&rhs, &[x]));
            ensure(l == r, || format!("{}: ~~[]x = {l}, ~[]~[]x = {r} at x={x}", a.name()))?;
        }
        let ss = semisimple(a);
        let member = ws5.contains(a);
        ensure(ss == member, || format!("{}: semisimple {ss}, WS5 {member}", a.name()))?;
    }
    Ok(format!("{} monadic Heyting algebras up to 6", mipc.len()))
}

fn criterion_9() -> Outcome_ {
    let psi = SchemeFamily::builtin("flew-il", 5).unwrap();
    let derived = SchemeFamily::ddt_from_cil(&psi, Combinator::Fusion).map_err(|e| e.to_string())?;
    let l5 = make_lukasiewicz_chain(5).unwrap();
    let fl = FilterLattice::new(&l5, Translation::Fl).unwrap();
    let v = check_ddt(&fl, &derived).unwrap();
    ensure(v.is_holds(), || format!("derived family on L5: {}", v.label()))?;
    let multiple = multiple_ddt_family(5).map_err(|e| e.to_string())?;
    ensure(derived.bound() == multiple.bound(), || "member counts differ".into())?;
    let vars = vec!["p".to_string(), "q".to_string()];
    for k in 2..=7 {
        let a = make_lukasiewicz_chain(k).unwrap();
        let eval_pool = |fam: &SchemeFamily| -> Vec<Vec<usize>> {
            fam.pool()
                .iter()
                .map(|phi| {
                    let t = Term::compile_with_vars(phi, &vars);
                    (0..k * k).map(|i| a.eval_term(&t, &[i / k, i % k])).collect()
                })
                .collect()
        };
        let (dv, mv) = (eval_pool(&derived), eval_pool(&multiple));
        for (m, (d_ids, m_ids)) in derived.member_ids().iter().zip(multiple.member_ids()).enumerate() {
            ensure(d_ids.len() == m_ids.len(), || format!("member {} sizes differ", m + 1))?;
            for (&i, &j) in d_ids.iter().zip(m_ids) {
                ensure(dv[i] == mv[j], || {
                    format!("L{k}, member {}: `{}` vs `{}`", m + 1, derived.pool()[i], multiple.pool()[j])
                })?;
            }
        }
    }
    Ok(format!("{} members hold on L5; equal to n-fold sums on L2..L7", derived.bound()))
}

fn criterion_10() -> Outcome_ {
    let mut parts = Vec::new();
    for n in [1u32, 2, 3, 5] {
        let c = lukinfty_ddt_countermodel(n).map_err(|e| e.to_string())?;
        let v = &c.valuation;
        let n1 = BigRational::from_integer(BigInt::from(n + 1));
        let expected = BigRational::one() - &v.epsilon / &n1;
        ensure(c.passes(), || format!("n={n}: certificate fails"))?;
        ensure(c.conclusion == expected, || format!("n={n}: conclusion {} != {expected}", c.conclusion))?;
        ensure(v.q.windows(2).all(|w| w[0] <= w[1]), || format!("n={n}: q not monotone"))?;
        parts.push(format!("n={n}: eps={} v(p^n->q0)={}", v.epsilon, c.conclusion));
    }
    Ok(parts.join("; "))
}

fn criterion_11(heyting: &[FiniteAlgebra]) -> Outcome_ {
    let least = MatrixFamily::least(heyting).unwrap();
    let cases: [(&[&str], &str); 2] = [(&["~~p"], "p"), (&[], "p \\/ ~p")];
    for (gamma, phi) in cases {
        let g: Vec<Formula> = gamma.iter().map(|s| f(s)).collect();
        let anti = antiadmissible(&least, &g, &f(phi), DEFAULT_CAP).unwrap();
        ensure(anti.is_holds(), || format!("antiadmissible {gamma:?} |- {phi}: {}", anti.label()))?;
        let rule = check_rule(&least, &g, &f(phi)).unwrap();
        ensure(rule.is_fails(), || format!("rule {gamma:?} |- {phi} is valid"))?;
    }
    let bottom = antiadmissible(&least, &[], &f("B"), DEFAULT_CAP).unwrap();
    let w = bottom.witness().ok_or_else(|| "|- B is antiadmissible".to_string())?;
    let a = &heyting[w.algebra];
    let fl = FilterLattice::new(a, Translation::Fl).unwrap();
    let i = fl.index_of(&w.filter).ok_or("witness is not a filter")?;
    ensure(!fl.is_trivial(i), || "witness filter is trivial".into())?;
    Ok(format!("witness for |- B: {} filter {}", a.name(), w.filter))
}

fn main() {
    let start = Instant::now();
    let heyting = catalog_up_to(&class(ClassKind::Heyting), 6).expect("heyting catalog").into_entries();
    let flew6 = catalog_up_to(&class(ClassKind::Flew), 6).expect("flew catalog").into_entries();
    let flew5: Vec<FiniteAlgebra> = flew6.iter().filter(|a| a.size() <= 5).cloned().collect();
    println!("catalogs built in {:?}", start.elapsed());
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome_>)> = vec![
        ("Lukasiewicz chains", Box::new(criterion_1)),
        ("Heyting semisimple iff Boolean", Box::new(|| criterion_2(&heyting))),
        ("S4 semisimple iff S5", Box::new(criterion_3)),
        ("FLe^n semisimplicity equation", Box::new(criterion_4)),
        ("IL exactness", Box::new(|| criterion_5(&flew5, &heyting))),
        ("dual IL iff semisimple", Box::new(|| criterion_6(&flew6))),
        ("Glivenko suite", Box::new(criterion_7)),
        ("MIPC and WS5", Box::new(criterion_8)),
        ("DDT from classical IL", Box::new(criterion_9)),
        ("infinite-valued countermodel", Box::new(criterion_10)),
        ("antiadmissibility", Box::new(|| criterion_11(&heyting))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = run();
        let ms = t.elapsed().as_millis();
        match result {
            Ok(detail) => println!("PASS {:>2} {name} [{ms} ms]: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} [{ms} ms]: {why}", i + 1)
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
