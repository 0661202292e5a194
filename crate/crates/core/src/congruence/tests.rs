use super::*;
use crate::search::catalog_up_to;
use crate::testutil::*;
use alloc::collections::BTreeSet;
use proptest::prelude::*;

fn blocks(c: &Congruence) -> BTreeSet<Vec<usize>> {
    c.block_lists().into_iter().collect()
}

fn set(bs: &[&[usize]]) -> BTreeSet<Vec<usize>> {
    bs.iter().map(|b| b.to_vec()).collect()
}

#[test]
fn boolean_four_principal_congruence() {
    let c = congruence_generated(&boolean(2), &[(1, 3)]).unwrap();
    assert_eq!(blocks(&c), set(&[&[0, 2], &[1, 3]]));
}

#[test]
fn reflexive_pair_generates_identity() {
    for a in all_samples() {
        assert!(congruence_generated(&a, &[(0, 0)]).unwrap().is_identity());
        assert!(congruence_generated(&a, &[]).unwrap().is_identity());
    }
}

#[test]
fn heyting_chain_principal_congruence() {
    let c = congruence_generated(&godel(3), &[(1, 2)]).unwrap();
    assert_eq!(blocks(&c), set(&[&[0], &[1, 2]]));
}

#[test]
fn out_of_range_pair() {
    let e = congruence_generated(&luk(3), &[(0, 3)]).unwrap_err();
    assert_eq!(e, CongruenceError::OutOfRange { x: 0, y: 3, size: 3 });
}

#[test]
fn congruence_lattice_sizes() {
    assert_eq!(all_congruences(&luk(3), DEFAULT_CAP).unwrap().len(), 2);
    assert_eq!(all_congruences(&godel(3), DEFAULT_CAP).unwrap().len(), 3);
    let b4 = all_congruences(&boolean(2), DEFAULT_CAP).unwrap();
    assert_eq!(b4.len(), 4);
    assert_eq!(b4.coatoms().len(), 2);
}

#[test]
fn cap_is_enforced() {
    let e = all_congruences(&boolean(3), 6).unwrap_err();
    assert_eq!(e, CongruenceError::CapExceeded { size: 8, cap: 6 });
}

#[test]
fn lukasiewicz_chains_are_simple() {
    for k in 2..=7 {
        assert!(is_simple(&luk(k)).unwrap(), "L{k}");
    }
}

#[test]
fn semisimplicity_examples() {
    let r = is_semisimple(&godel(3), DEFAULT_CAP).unwrap();
    assert!(!r.semisimple);
    assert_eq!(r.coatoms.len(), 1);
    let r = is_semisimple(&boolean(2), DEFAULT_CAP).unwrap();
    assert!(r.semisimple && !r.simple);
    assert!(r.embedding_is_injective());
    let trivial = luk(3).quotient_by_blocks(&[0, 0, 0]).unwrap();
    let r = is_semisimple(&trivial, DEFAULT_CAP).unwrap();
    assert!(r.semisimple && !r.simple);
}

#[test]
fn congruences_match_brute_force() {
    for a in all_samples().iter().filter(|a| a.size() <= 6) {
        let got: BTreeSet<Vec<usize>> =
            all_congruences(a, DEFAULT_CAP).unwrap().congruences().iter().map(|c| c.blocks().to_vec()).collect();
        let want: BTreeSet<Vec<usize>> = all_partitions(a.size()).into_iter().filter(|p| compatible(a, p)).collect();
        assert_eq!(got, want, "{}", a.name());
    }
}

#[test]
fn lattice_is_closed_under_meet_and_join() {
    for a in all_samples().iter().filter(|a| a.size() <= 6) {
        let lat = all_congruences(a, DEFAULT_CAP).unwrap();
        assert!(lat.congruences()[lat.identity()].is_identity());
        assert!(lat.congruences()[lat.total()].is_total());
        for i in 0..lat.len() {
            for j in 0..lat.len() {
                let (x, y) = (&lat.congruences()[i], &lat.congruences()[j]);
                assert_eq!(&lat.congruences()[lat.meet(i, j)], &x.meet(y));
                let join = congruence_join(a, x, y).unwrap();
                assert_eq!(&lat.congruences()[lat.join(i, j)], &join);
                assert_eq!(lat.leq(i, j), x.refines(y));
            }
        }
    }
}

#[test]
fn coatom_quotients_are_simple() {
    for a in all_samples() {
        let r = is_semisimple(&a, DEFAULT_CAP).unwrap();
        for f in r.factors(&a).unwrap() {
            assert!(is_simple(&f).unwrap(), "{}", a.name());
        }
        assert_eq!(r.semisimple, a.size() == 1 || r.embedding_is_injective());
    }
}

#[test]
fn products_of_simple_algebras_are_semisimple() {
    let flew = catalog_up_to(&crate::classes::AlgebraClass::parse("flew").unwrap(), 4).unwrap();
    let simple: Vec<_> = flew.iter().filter(|a| is_simple(a).unwrap()).cloned().collect();
    assert!(simple.len() >= 3);
    for a in &simple {
        for b in &simple {
            if a.size() * b.size() <= 12 {
                let p = product(a, b);
                assert!(is_semisimple(&p, DEFAULT_CAP).unwrap().semisimple);
            }
        }
    }
}

proptest! {
    #[test]
    fn generated_congruence_is_least(
        a in prop::sample::select(all_samples().into_iter().filter(|a| a.size() <= 6).collect::<Vec<_>>()),
        raw in prop::collection::vec((0usize..64, 0usize..64), 0..3),
    ) {
        let n = a.size();
        let pairs: Vec<(usize, usize)> = raw.iter().map(|&(x, y)| (x % n, y % n)).collect();
        let c = congruence_generated(&a, &pairs).unwrap();
        prop_assert!(c.is_compatible(&a));
        prop_assert!(compatible(&a, c.blocks()));
        for &(x, y) in &pairs {
            prop_assert!(c.related(x, y));
        }
        for p in all_partitions(n) {
            if compatible(&a, &p) && pairs.iter().all(|&(x, y)| p[x] == p[y]) {
                prop_assert!(c.refines(&Congruence::from_labels(&p)));
            }
        }
    }
}
