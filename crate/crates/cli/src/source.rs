//! Where algebras come from: files, catalog directories, named
//! generators, or bounded class enumerations.

use std::fs;
use std::path::Path;

use alg_core::algebra::FiniteAlgebra;
use alg_core::bits::ElemSet;
use alg_core::classes::{make_boolean, make_godel_chain, make_lukasiewicz_chain, AlgebraClass};
use alg_core::deduction::{Matrix, MatrixFamily};
use alg_core::search::catalog_up_to;

use crate::catalog::load_catalog;
use crate::error::CliError;
use crate::format::parse_algebras;

/// Algebras from a source, with a flag telling whether the list is the
/// whole intended class (false for size-bounded enumerations).
#[derive(Clone, Debug)]
pub struct Loaded {
    pub algebras: Vec<FiniteAlgebra>,
    pub complete: bool,
}

pub fn read_file(path: &Path) -> Result<Vec<FiniteAlgebra>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let algs = parse_algebras(&text).map_err(|e| CliError::format(path, e))?;
    if algs.is_empty() {
        return Err(CliError::Format { path: path.display().to_string(), line: 0, message: "no algebra in file".into() });
    }
    Ok(algs)
}

fn named(spec: &str) -> Option<Result<FiniteAlgebra, CliError>> {
    let num = |prefix: &str| spec.strip_prefix(prefix).and_then(|k| k.parse::<usize>().ok());
    if let Some(k) = num("luk").or_else(|| num("L")) {
        return Some(make_lukasiewicz_chain(k).map_err(CliError::from));
    }
    if let Some(k) = num("godel").or_else(|| num("G")) {
        return Some(make_godel_chain(k).map_err(CliError::from));
    }
    if let Some(n) = num("boolean").or_else(|| num("B")) {
        if !n.is_power_of_two() || n < 2 {
            return Some(Err(CliError::usage(format!("`{spec}`: Boolean algebras have 2^k elements"))));
        }
        return Some(make_boolean(n.trailing_zeros() as usize).map_err(CliError::from));
    }
    None
}

/// Split `class:opts` into the class token and an optional `max=N`.
fn class_with_max(spec: &str) -> Result<Option<(AlgebraClass, usize)>, CliError> {
    let (base, opts) = spec.split_once(':').unwrap_or((spec, ""));
    let mut max = None;
    let mut rest = Vec::new();
    for part in opts.split(',').filter(|p| !p.is_empty()) {
        match part.strip_prefix("max=") {
            Some(v) => max = Some(v.parse::<usize>().map_err(|_| CliError::usage(format!("bad size in `{spec}`")))?),
            None => rest.push(part),
        }
    }
    let Some(max) = max else { return Ok(None) };
    let token = if rest.is_empty() { base.to_string() } else { format!("{base}:{}", rest.join(",")) };
    Ok(Some((AlgebraClass::parse(&token)?, max)))
}

/// Resolve a source string. Existing paths win; then `luk3`, `godel4`,
/// `boolean4`; then `<class>:max=N`.
pub fn load(spec: &str) -> Result<Loaded, CliError> {
    let path = Path::new(spec);
    if path.is_dir() {
        return Ok(Loaded { algebras: load_catalog(path)?.into_entries(), complete: false });
    }
    if path.is_file() {
        return Ok(Loaded { algebras: read_file(path)?, complete: true });
    }
    if let Some(a) = named(spec) {
        return Ok(Loaded { algebras: vec![a?], complete: true });
    }
    if let Some((class, max)) = class_with_max(spec)? {
        return Ok(Loaded { algebras: catalog_up_to(&class, max)?.into_entries(), complete: false });
    }
    if spec.contains('/') || spec.ends_with(".alg") {
        return Err(CliError::Io { path: spec.into(), message: "no such file or directory".into() });
    }
    Err(CliError::usage(format!("`{spec}` is not a file, catalog directory, named algebra, or `<class>:max=N`")))
}

/// How matrices are formed from algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Designation {
    Least,
    All,
    /// The same explicit element set in every algebra.
    Named(Vec<usize>),
}

impl Designation {
    pub fn parse(text: &str) -> Result<Designation, CliError> {
        match text {
            "least" => Ok(Designation::Least),
            "all" => Ok(Designation::All),
            _ => {
                let inner = text
                    .strip_prefix('{')
                    .and_then(|t| t.strip_suffix('}'))
                    .ok_or_else(|| CliError::usage(format!("designation `{text}`: use least, all, or {{a,b,...}}")))?;
                let elems = inner
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| s.trim().parse::<usize>().map_err(|_| CliError::usage(format!("bad element `{s}`"))))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Designation::Named(elems))
            }
        }
    }

    pub fn family(&self, algebras: &[FiniteAlgebra], cap: usize) -> Result<MatrixFamily, CliError> {
        match self {
            Designation::Least => Ok(MatrixFamily::least(algebras)?),
            Designation::All => Ok(MatrixFamily::all_filters(algebras, cap)?),
            Designation::Named(elems) => {
                let mut ms = Vec::new();
                for a in algebras {
                    if let Some(&x) = elems.iter().find(|&&x| x >= a.size()) {
                        return Err(CliError::usage(format!("element {x} outside `{}`", a.name())));
                    }
                    ms.push(Matrix { algebra: a.clone(), filter: ElemSet::from_elems(a.size(), elems.iter().copied()) });
                }
                Ok(MatrixFamily::new(ms, cap)?)
            }
        }
    }
}
