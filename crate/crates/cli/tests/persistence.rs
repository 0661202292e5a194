mod common;

use alg_cli::catalog::{canonical_hash, load_catalog, save_catalog, MANIFEST};
use alg_cli::format::{parse_algebras, write_algebra, write_algebras};
use alg_core::classes::{make_boolean, make_godel_chain, make_lukasiewicz_chain, make_monadic, AlgebraClass};
use alg_core::search::catalog_up_to;
use alg_core::FiniteAlgebra;
use common::*;

fn samples() -> Vec<FiniteAlgebra> {
    let mut v = vec![
        make_lukasiewicz_chain(5).unwrap(),
        make_godel_chain(4).unwrap(),
        make_boolean(2).unwrap(),
        make_monadic(&make_boolean(2).unwrap(), &[vec![1, 2]]).unwrap(),
    ];
    for class in ["lattice", "fle", "s4", "ikn4:n=1"] {
        v.extend(catalog_up_to(&AlgebraClass::parse(class).unwrap(), 4).unwrap().into_entries());
    }
    v
}

#[test]
fn write_parse_roundtrip() {
    let all = samples();
    for a in &all {
        let back = parse_algebras(&write_algebra(a)).unwrap();
        assert_eq!(back, vec![a.clone()], "{}", a.name());
    }
    assert_eq!(parse_algebras(&write_algebras(&all)).unwrap(), all);
}

#[test]
fn shipped_data_files_match_generators() {
    let l3 = parse_algebras(&std::fs::read_to_string(data("luk3.alg")).unwrap()).unwrap();
    assert_eq!(l3, vec![make_lukasiewicz_chain(3).unwrap()]);
    let g3 = parse_algebras(&std::fs::read_to_string(data("godel3.alg")).unwrap()).unwrap();
    assert_eq!(g3, vec![make_godel_chain(3).unwrap()]);
}

#[test]
fn comments_and_blank_lines() {
    let text = "# two-element lattice\n\nalgebra two # trailing\nsize 2\nop T 0\nop B 0\n\ntable T\n1\ntable B\n0\nend\n";
    let a = parse_algebras(text).unwrap();
    assert_eq!(a.len(), 1);
    assert_eq!((a[0].name(), a[0].top(), a[0].bottom()), ("two", 1, 0));
}

#[test]
fn malformed_inputs() {
    let head = "algebra x\nsize 2\nop [] 1\ntable []\n";
    let cases = [
        ("algebra x\nsize 2\nop T 0\ntable T\n1\n", 5, "not closed"),
        ("size 2\n", 1, "expected `algebra`"),
        ("algebra x\nsize 2\nop T 1\nend\n", 3, "arity"),
        ("algebra x\nsize 2\nop ?? 0\nend\n", 3, "unknown symbol"),
        ("algebra x\nsize 2\nop T 0\ntable T\n1 0\nend\n", 5, "entries"),
        ("algebra x\nsize 2\nop /\\ 2\ntable /\\\n0 0\nend\n", 6, "rows"),
        ("algebra x\nsize 2\nop T 0\ntable B\n0\nend\n", 6, "undeclared"),
        ("algebra x\nsize 2\nop T 0\nend\n", 1, "no table"),
        ("algebra x\nsize 2\nop T 0\ntable T\n5\nend\n", 1, "outside the carrier"),
        ("algebra x\nsize 2\nlabels a\nop T 0\ntable T\n1\nend\n", 1, "labels"),
        ("algebra x\nop T 0\ntable T\n1\nend\n", 3, "before `size`"),
    ];
    for (text, line, what) in cases {
        let e = parse_algebras(text).unwrap_err();
        assert_eq!(e.line, line, "{text:?}: {e}");
        assert!(e.message.contains(what), "{text:?}: {e}");
    }
    assert!(parse_algebras(&format!("{head}1 0\nend\n")).is_ok());
}

#[test]
fn catalog_roundtrip_reverifies_membership() {
    let dir = tempfile::tempdir().unwrap();
    for (class, max) in [("flew", 4), ("heyting", 5), ("s4", 4), ("mipc", 4), ("flen:n=2", 4)] {
        let c = AlgebraClass::parse(class).unwrap();
        let cat = catalog_up_to(&c, max).unwrap();
        let sub = dir.path().join(class.replace(':', "_"));
        save_catalog(&sub, &cat).unwrap();
        let back = load_catalog(&sub).unwrap();
        assert_eq!(back.class(), cat.class());
        assert_eq!(back.entries(), cat.entries(), "{class}");
        for a in back.iter() {
            assert!(c.check_membership(a).unwrap().verdict, "{}", a.name());
        }
    }
}

#[test]
fn enumerate_command_writes_loadable_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("cat");
    let out = alg(&["enumerate", "--class", "flew", "--size", "4", "--out", out_dir.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let manifest = std::fs::read_to_string(out_dir.join(MANIFEST)).unwrap();
    assert!(manifest.contains("class flew\n"));
    assert!(manifest.contains("count 4 7\n"));
    let cat = load_catalog(&out_dir).unwrap();
    assert_eq!(cat.len(), 11);
    let flew = AlgebraClass::parse("flew").unwrap();
    assert!(cat.iter().all(|a| flew.contains(a)));
    for a in cat.iter() {
        assert!(manifest.contains(&canonical_hash(a)));
    }
    let via_cli = alg(&["check", out_dir.to_str().unwrap(), "--class", "flew"]);
    assert_eq!(via_cli.code, 0);
    assert_eq!(via_cli.stdout.lines().count(), 11);
}

#[test]
fn tampered_catalog_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cat = catalog_up_to(&AlgebraClass::parse("flew").unwrap(), 3).unwrap();
    let files = save_catalog(dir.path(), &cat).unwrap();
    let victim = dir.path().join(&files[2]);
    let text = std::fs::read_to_string(&victim).unwrap();
    let g3 = write_algebra(&make_godel_chain(3).unwrap().renamed(cat.entries()[2].name()).without_labels());
    let l3 = write_algebra(&make_lukasiewicz_chain(3).unwrap().renamed(cat.entries()[2].name()).without_labels());
    let swapped = if text == g3 { l3 } else { g3 };
    std::fs::write(&victim, swapped).unwrap();
    let e = load_catalog(dir.path()).unwrap_err().to_string();
    assert!(e.contains("canonical hash"), "{e}");
    let out = alg(&["check", dir.path().to_str().unwrap(), "--class", "flew"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.starts_with("malformed file"));
}

#[test]
fn hashes_ignore_names_and_labels() {
    let a = make_lukasiewicz_chain(4).unwrap();
    let b = a.clone().renamed("other").without_labels();
    assert_eq!(canonical_hash(&a), canonical_hash(&b));
    assert_ne!(canonical_hash(&a), canonical_hash(&make_godel_chain(4).unwrap()));
}
