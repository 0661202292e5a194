//! Catalog directories: one `.alg` file per entry plus `manifest.txt`.
//!
//! ```text
//! class flew
//! size-bound 4
//! count 3 2
//! entry flew-3-1.alg 3 5f1c...e0
//! ```
//!
//! The hash is the SHA-256 of the entry's canonical form, so a manifest
//! detects edited tables as well as relabelings that change the
//! isomorphism type.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use alg_core::algebra::FiniteAlgebra;
use alg_core::search::{canonical_form, Catalog};
use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::format::{parse_algebras, write_algebra};

pub const MANIFEST: &str = "manifest.txt";

pub fn canonical_hash(a: &FiniteAlgebra) -> String {
    hex::encode(Sha256::digest(canonical_form(a).to_bytes()))
}

fn file_name(a: &FiniteAlgebra, i: usize) -> String {
    let clean: String = a
        .name()
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect();
    format!("{:03}-{clean}.alg", i + 1)
}

pub fn manifest_text(catalog: &Catalog, files: &[String]) -> String {
    let mut s = String::new();
    writeln!(s, "# alg catalog manifest").unwrap();
    writeln!(s, "class {}", catalog.class()).unwrap();
    writeln!(s, "size-bound {}", catalog.size_bound()).unwrap();
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for a in catalog.iter() {
        *counts.entry(a.size()).or_default() += 1;
    }
    for (n, c) in counts {
        writeln!(s, "count {n} {c}").unwrap();
    }
    for (a, f) in catalog.iter().zip(files) {
        writeln!(s, "entry {f} {} {}", a.size(), canonical_hash(a)).unwrap();
    }
    s
}

/// Write the catalog into `dir`, creating it if needed. Returns the entry
/// file names.
pub fn save_catalog(dir: &Path, catalog: &Catalog) -> Result<Vec<String>, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let files: Vec<String> = catalog.iter().enumerate().map(|(i, a)| file_name(a, i)).collect();
    for (a, f) in catalog.iter().zip(&files) {
        let path = dir.join(f);
        fs::write(&path, write_algebra(a)).map_err(|e| CliError::io(&path, e))?;
    }
    let path = dir.join(MANIFEST);
    fs::write(&path, manifest_text(catalog, &files)).map_err(|e| CliError::io(&path, e))?;
    Ok(files)
}

/// Read a catalog directory, checking sizes, counts and hashes against
/// the manifest.
pub fn load_catalog(dir: &Path) -> Result<Catalog, CliError> {
    let mpath = dir.join(MANIFEST);
    let text = fs::read_to_string(&mpath).map_err(|e| CliError::io(&mpath, e))?;
    let bad = |line: usize, msg: String| CliError::Format { path: mpath.display().to_string(), line, message: msg };
    let mut class = None;
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        match words.as_slice() {
            ["class", c] => class = Some(c.to_string()),
            ["size-bound", _] => {}
            ["count", n, c] => {
                let n: usize = n.parse().map_err(|_| bad(ln, format!("bad size `{n}`")))?;
                let c: usize = c.parse().map_err(|_| bad(ln, format!("bad count `{c}`")))?;
                counts.insert(n, c);
            }
            ["entry", f, n, h] => {
                let n: usize = n.parse().map_err(|_| bad(ln, format!("bad size `{n}`")))?;
                entries.push((ln, f.to_string(), n, h.to_string()));
            }
            _ => return Err(bad(ln, format!("unexpected manifest line `{line}`"))),
        }
    }
    let class = class.ok_or_else(|| bad(1, "manifest has no `class` line".into()))?;
    let mut catalog = Catalog::new(&class);
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
    for (ln, f, n, h) in entries {
        let path = dir.join(&f);
        let body = fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
        let mut algs = parse_algebras(&body).map_err(|e| CliError::format(&path, e))?;
        if algs.len() != 1 {
            return Err(bad(ln, format!("`{f}` holds {} algebras, expected 1", algs.len())));
        }
        let a = algs.remove(0);
        if a.size() != n {
            return Err(bad(ln, format!("`{f}` has size {}, manifest says {n}", a.size())));
        }
        if canonical_hash(&a) != h {
            return Err(bad(ln, format!("`{f}` does not match its canonical hash")));
        }
        if !catalog.insert(a) {
            return Err(bad(ln, format!("`{f}` is isomorphic to an earlier entry")));
        }
        *seen.entry(n).or_default() += 1;
    }
    if seen != counts {
        return Err(bad(1, "per-size counts do not match the entries".into()));
    }
    Ok(catalog)
}
