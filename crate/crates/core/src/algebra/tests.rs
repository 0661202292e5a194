use super::*;
use crate::formula::parse;
use crate::search::is_isomorphic;
use crate::testutil::*;
use proptest::prelude::*;

fn val(pairs: &[(&str, usize)]) -> Valuation {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

#[test]
fn lukasiewicz_three_excluded_middle_of_square() {
    let a = luk(3);
    let phi = parse("x \\/ ~(x^2)").unwrap();
    assert_eq!(a.evaluate(&phi, &val(&[("x", 1)])).unwrap(), 2);
}

#[test]
fn unit_constant_ignores_valuation() {
    for a in all_samples() {
        let one = parse("1").unwrap();
        assert_eq!(a.evaluate(&one, &Valuation::new()).unwrap(), a.one());
    }
}

#[test]
fn heyting_double_negation() {
    let a = godel(3);
    let phi = parse("~~x").unwrap();
    assert_eq!(a.evaluate(&phi, &val(&[("x", 1)])).unwrap(), 2);
}

#[test]
fn evaluation_errors() {
    let a = luk(3);
    let e = a.evaluate(&parse("x /\\ y").unwrap(), &val(&[("x", 0)])).unwrap_err();
    assert_eq!(e, AlgebraError::UnboundVariable("y".into()));
    let e = a.evaluate(&parse("[]x").unwrap(), &val(&[("x", 0)])).unwrap_err();
    assert_eq!(e, AlgebraError::UnknownSymbol(Symbol::Box));
}

#[test]
fn boolean_four_order_is_a_diamond() {
    let a = boolean(2);
    let o = a.order_from_meet().unwrap();
    assert!(o.is_partial_order());
    assert!(!o.is_chain());
    assert!(!o.leq(1, 2) && !o.leq(2, 1));
    assert!(o.leq(0, 1) && o.leq(1, 3) && o.leq(0, 3));
}

#[test]
fn trivial_order() {
    let a = FiniteAlgebra::new("one", 1, Signature::lattice(), vec![
        (Symbol::Meet, vec![0]),
        (Symbol::Join, vec![0]),
        (Symbol::Top, vec![0]),
        (Symbol::Bottom, vec![0]),
    ])
    .unwrap();
    let o = a.order_from_meet().unwrap();
    assert_eq!(o.size(), 1);
    assert!(o.leq(0, 0));
}

#[test]
fn left_projection_meet_is_rejected() {
    let sig = Signature::new(&[Symbol::Meet]).unwrap();
    let a = FiniteAlgebra::new("proj", 2, sig, vec![(Symbol::Meet, vec![0, 0, 1, 1])]).unwrap();
    assert!(matches!(a.order_from_meet(), Err(AlgebraError::NotAPartialOrder { .. })));
}

#[test]
fn construction_errors() {
    let sig = Signature::lattice();
    assert_eq!(FiniteAlgebra::new("e", 0, sig.clone(), vec![]).unwrap_err(), AlgebraError::EmptyCarrier);
    let e = FiniteAlgebra::new("s", 2, sig.clone(), vec![(Symbol::Meet, vec![0, 0, 0])]).unwrap_err();
    assert_eq!(e, AlgebraError::TableShape { symbol: Symbol::Meet, expected: 4, found: 3 });
    let e = FiniteAlgebra::new("r", 2, sig.clone(), vec![(Symbol::Meet, vec![0, 0, 0, 2])]).unwrap_err();
    assert_eq!(e, AlgebraError::EntryOutOfRange { symbol: Symbol::Meet, index: 3, value: 2 });
    let e = FiniteAlgebra::new("m", 2, sig, vec![(Symbol::Meet, vec![0, 0, 0, 1])]).unwrap_err();
    assert!(matches!(e, AlgebraError::MissingTable(_)));
    assert!(Signature::new(&[Symbol::Meet, Symbol::Meet]).is_err());
}

#[test]
fn boolean_two_squared_is_boolean_four() {
    let p = boolean(1).direct_product(&boolean(1)).unwrap();
    assert_eq!(p.algebra.size(), 4);
    assert!(is_isomorphic(&p.algebra, &boolean(2)));
}

#[test]
fn product_with_trivial_factor() {
    for a in residuated_samples().iter().take(8) {
        let trivial = a.quotient_by_blocks(&vec![0; a.size()]).unwrap();
        let p = a.direct_product(&trivial).unwrap();
        assert!(is_isomorphic(&p.algebra, a));
    }
}

#[test]
fn lukasiewicz_three_times_boolean_two() {
    let p = luk(3).direct_product(&boolean(1)).unwrap().algebra;
    assert_eq!(p.size(), 6);
    assert!(crate::classes::AlgebraClass::parse("flew").unwrap().contains(&p));
    assert!(!p.order_from_meet().unwrap().is_chain());
}

#[test]
fn product_signature_mismatch() {
    assert_eq!(luk(3).direct_product(&s4_four()).unwrap_err(), AlgebraError::SignatureMismatch);
}

#[test]
fn heyting_chain_quotient_is_boolean_two() {
    let q = godel(3).quotient_by_blocks(&[0, 1, 1]).unwrap();
    assert!(is_isomorphic(&q, &boolean(1)));
}

#[test]
fn identity_and_total_quotients() {
    for a in all_samples() {
        let id: Vec<usize> = (0..a.size()).collect();
        assert!(is_isomorphic(&a.quotient_by_blocks(&id).unwrap(), &a));
        assert_eq!(a.quotient_by_blocks(&vec![0; a.size()]).unwrap().size(), 1);
    }
}

#[test]
fn incompatible_partition_is_rejected() {
    let e = luk(3).quotient_by_blocks(&[0, 1, 1]).unwrap_err();
    assert!(matches!(e, AlgebraError::NotCompatible { .. }));
    let e = luk(3).quotient_by_blocks(&[0, 1]).unwrap_err();
    assert_eq!(e, AlgebraError::PartitionSize { expected: 3, found: 2 });
}

#[test]
fn arrow_requires_commutative_fusion() {
    let fl = crate::classes::AlgebraClass::parse("fl").unwrap();
    let nc = crate::search::catalog_up_to(&fl, 4).unwrap().into_entries().into_iter().find(|a| !a.is_commutative());
    let a = nc.expect("a non-commutative FL-algebra of size at most 4");
    let e = a.evaluate(&parse("x -> y").unwrap(), &val(&[("x", 0), ("y", 0)])).unwrap_err();
    assert_eq!(e, AlgebraError::ArrowNotCommutative);
    assert!(a.evaluate(&parse("x \\ y").unwrap(), &val(&[("x", 0), ("y", 0)])).is_ok());
}

#[test]
fn permutation_is_an_isomorphism() {
    let a = godel(4);
    let perm = [2, 0, 3, 1];
    let b = a.permuted(&perm);
    assert!(a.is_homomorphism(&b, &perm));
    assert_eq!(b.label(2), "0");
}

#[test]
fn for_each_assignment_visits_all() {
    let mut seen = Vec::new();
    assert!(for_each_assignment(3, 2, |v| {
        seen.push(v.to_vec());
        true
    }));
    assert_eq!(seen.len(), 9);
    let mut count = 0;
    assert!(!for_each_assignment(3, 2, |_| {
        count += 1;
        count < 4
    }));
    assert_eq!(count, 4);
}

fn sample() -> impl Strategy<Value = FiniteAlgebra> {
    prop::sample::select(all_samples())
}

fn small_formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        prop_oneof![Just("x"), Just("y")].prop_map(Formula::var),
        Just(Formula::one()),
        Just(Formula::bottom()),
    ];
    leaf.prop_recursive(4, 20, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::negb),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::fuse(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::ldiv(a, b)),
            (inner.clone(), 0u32..3).prop_map(|(a, n)| Formula::power(a, n)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn evaluation_respects_substitution(
        a in prop::sample::select(residuated_samples().to_vec()),
        phi in small_formula(),
        psi in small_formula(),
        xs in prop::collection::vec(0usize..64, 2),
    ) {
        let v = val(&[("x", xs[0] % a.size()), ("y", xs[1] % a.size())]);
        let lhs = a.evaluate(&phi.substitute_var("x", &psi), &v).unwrap();
        let mut w = v.clone();
        w.insert("x".into(), a.evaluate(&psi, &v).unwrap());
        prop_assert_eq!(lhs, a.evaluate(&phi, &w).unwrap());
    }

    #[test]
    fn quotient_commutes_with_projection(
        a in prop::sample::select(residuated_samples().to_vec()),
        phi in small_formula(),
        pick in 0usize..1000,
        xs in prop::collection::vec(0usize..64, 2),
    ) {
        let cons = crate::congruence::all_congruences(&a, 12).unwrap();
        let theta = &cons.congruences()[pick % cons.len()];
        let q = a.quotient_by_blocks(theta.blocks()).unwrap();
        let v = val(&[("x", xs[0] % a.size()), ("y", xs[1] % a.size())]);
        let pv: Valuation = v.iter().map(|(k, &x)| (k.clone(), theta.block_of(x))).collect();
        prop_assert_eq!(theta.block_of(a.evaluate(&phi, &v).unwrap()), q.evaluate(&phi, &pv).unwrap());
    }

    #[test]
    fn product_projections_are_homomorphisms(a in sample(), b in sample()) {
        prop_assume!(a.signature().same_symbols(b.signature()));
        prop_assume!(a.size() * b.size() <= 36);
        let p = a.direct_product(&b).unwrap();
        prop_assert!(p.algebra.is_homomorphism(&a, &p.left));
        prop_assert!(p.algebra.is_homomorphism(&b, &p.right));
    }

    #[test]
    fn meet_order_agrees_with_join(a in sample()) {
        let o = a.order_from_meet().unwrap();
        prop_assert!(o.is_partial_order());
        for x in 0..a.size() {
            for y in 0..a.size() {
                prop_assert_eq!(o.leq(x, y), a.join(x, y) == y);
            }
        }
        let ext = o.linear_extension();
        for i in 0..ext.len() {
            for j in 0..i {
                prop_assert!(!o.leq(ext[i], ext[j]) || ext[i] == ext[j]);
            }
        }
    }

    #[test]
    fn random_permutations_preserve_structure(a in sample(), seed in any::<u64>()) {
        let n = a.size();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let b = a.permuted(&perm);
        prop_assert!(a.is_homomorphism(&b, &perm));
        prop_assert!(is_isomorphic(&a, &b));
    }
}
