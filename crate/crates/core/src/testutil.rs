use alloc::vec::Vec;
use std::sync::OnceLock;

use crate::algebra::FiniteAlgebra;
use crate::classes::{
    make_boolean, make_godel_chain, make_lukasiewicz_chain, make_monadic, with_boolean_box, AlgebraClass,
};
use crate::search::catalog_up_to;

pub fn luk(k: usize) -> FiniteAlgebra {
    make_lukasiewicz_chain(k).unwrap()
}

pub fn godel(k: usize) -> FiniteAlgebra {
    make_godel_chain(k).unwrap()
}

pub fn boolean(atoms: usize) -> FiniteAlgebra {
    make_boolean(atoms).unwrap()
}

/// Boolean-4 with `[]a = 0`, `[]b = b`.
pub fn s4_four() -> FiniteAlgebra {
    with_boolean_box(&boolean(2), alloc::vec![0, 0, 2, 3]).unwrap().renamed("S4-4")
}

pub fn product(a: &FiniteAlgebra, b: &FiniteAlgebra) -> FiniteAlgebra {
    a.direct_product(b).unwrap().algebra
}

/// Mixed bag of small residuated algebras, none larger than 6 elements.
pub fn residuated_samples() -> &'static [FiniteAlgebra] {
    static CELL: OnceLock<Vec<FiniteAlgebra>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut v = alloc::vec![luk(2), luk(3), luk(4), luk(5), luk(6), godel(3), godel(4), godel(5), boolean(2)];
        v.push(product(&luk(3), &boolean(1)));
        v.push(product(&godel(3), &boolean(1)));
        v.push(product(&godel(3), &luk(2)));
        let flew = AlgebraClass::parse("flew").unwrap();
        v.extend(catalog_up_to(&flew, 4).unwrap().into_entries());
        let fle = AlgebraClass::parse("fle").unwrap();
        v.extend(catalog_up_to(&fle, 3).unwrap().into_entries().into_iter().filter(|a| a.one() != a.top()));
        v
    })
}

/// Small modal algebras over Boolean and Heyting bases.
pub fn modal_samples() -> &'static [FiniteAlgebra] {
    static CELL: OnceLock<Vec<FiniteAlgebra>> = OnceLock::new();
    CELL.get_or_init(|| {
        let b4 = boolean(2);
        let mut v = alloc::vec![
            s4_four(),
            with_boolean_box(&b4, alloc::vec![0, 1, 2, 3]).unwrap(),
            with_boolean_box(&b4, alloc::vec![0, 0, 0, 3]).unwrap(),
            with_boolean_box(&boolean(1), alloc::vec![0, 1]).unwrap(),
        ];
        let g3 = godel(3);
        v.push(make_monadic(&g3, &[alloc::vec![1], alloc::vec![2]]).unwrap());
        v.push(make_monadic(&b4, &[alloc::vec![1, 2]]).unwrap());
        let s4 = AlgebraClass::parse("is4").unwrap();
        v.extend(catalog_up_to(&s4, 4).unwrap().into_entries());
        v
    })
}

pub fn all_samples() -> Vec<FiniteAlgebra> {
    residuated_samples().iter().chain(modal_samples()).cloned().collect()
}

/// Every partition of `0..n` as a restricted growth string.
pub fn all_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max {
            cur.push(b);
            go(i + 1, n, cur, if b == max { max + 1 } else { max }, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), 0, &mut out);
    out
}

/// Direct compatibility check of a block table against every table.
pub fn compatible(a: &FiniteAlgebra, blocks: &[usize]) -> bool {
    let n = a.size();
    a.signature().symbols().iter().all(|&s| match s.arity() {
        0 => true,
        1 => (0..n).all(|x| (0..n).all(|y| blocks[x] != blocks[y] || blocks[a.unary(s, x)] == blocks[a.unary(s, y)])),
        _ => (0..n).all(|x1| {
            (0..n).all(|x2| {
                blocks[x1] != blocks[x2]
                    || (0..n).all(|y| {
                        blocks[a.binary(s, x1, y)] == blocks[a.binary(s, x2, y)]
                            && blocks[a.binary(s, y, x1)] == blocks[a.binary(s, y, x2)]
                    })
            })
        }),
    })
}
