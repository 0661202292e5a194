//! Equational and quasi-equational class definitions, membership checks,
//! and generators for the standard small algebras.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{for_each_assignment, AlgebraError, FiniteAlgebra, Signature, Symbol, Term};
use crate::formula::{parse, Formula};

/// `lhs = rhs` or `lhs <= rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawAtom {
    pub lhs: Formula,
    pub rhs: Formula,
    pub inequality: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LawKind {
    Equation,
    Inequality,
    Quasi,
}

/// `premises => conclusion`, universally quantified over its variables.
#[derive(Clone, Debug)]
pub struct Law {
    pub label: String,
    pub premises: Vec<LawAtom>,
    pub conclusion: LawAtom,
    vars: Vec<String>,
    terms: Vec<(Term, Term, bool)>,
}

impl Law {
    pub fn new(label: &str, premises: Vec<LawAtom>, conclusion: LawAtom) -> Law {
        let mut vars = alloc::collections::BTreeSet::new();
        for a in premises.iter().chain(core::iter::once(&conclusion)) {
            vars.extend(a.lhs.vars());
            vars.extend(a.rhs.vars());
        }
        let vars: Vec<String> = vars.into_iter().collect();
        let terms = premises
            .iter()
            .chain(core::iter::once(&conclusion))
            .map(|a| {
                (
                    Term::compile_with_vars(&a.lhs, &vars),
                    Term::compile_with_vars(&a.rhs, &vars),
                    a.inequality,
                )
            })
            .collect();
        Law { label: label.into(), premises, conclusion, vars, terms }
    }

    fn parsed(label: &str, premises: &[(&str, &str, &str)], conclusion: (&str, &str, &str)) -> Law {
        let atom = |(l, rel, r): (&str, &str, &str)| LawAtom {
            lhs: parse(l).unwrap_or_else(|e| panic!("law {label}: {e}")),
            rhs: parse(r).unwrap_or_else(|e| panic!("law {label}: {e}")),
            inequality: match rel {
                "<=" => true,
                "=" => false,
                _ => panic!("law {label}: bad relation {rel}"),
            },
        };
        Law::new(label, premises.iter().map(|&p| atom(p)).collect(), atom(conclusion))
    }

    pub fn eq(label: &str, lhs: &str, rhs: &str) -> Law {
        Self::parsed(label, &[], (lhs, "=", rhs))
    }

    pub fn le(label: &str, lhs: &str, rhs: &str) -> Law {
        Self::parsed(label, &[], (lhs, "<=", rhs))
    }

    pub fn quasi(label: &str, premise: (&str, &str, &str), conclusion: (&str, &str, &str)) -> Law {
        Self::parsed(label, &[premise], conclusion)
    }

    pub fn kind(&self) -> LawKind {
        match (self.premises.is_empty(), self.conclusion.inequality) {
            (false, _) => LawKind::Quasi,
            (true, true) => LawKind::Inequality,
            (true, false) => LawKind::Equation,
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Symbols the law needs.
    pub fn symbols(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        for (l, r, _) in &self.terms {
            for s in l.symbols().into_iter().chain(r.symbols()) {
                if !out.contains(&s) {
                    out.push(s);
                }
            }
        }
        out
    }

    fn atom_holds(a: &FiniteAlgebra, t: &(Term, Term, bool), args: &[usize], buf: &mut Vec<usize>) -> bool {
        let l = a.eval_term_with(&t.0, args, buf);
        let r = a.eval_term_with(&t.1, args, buf);
        if t.2 {
            a.leq(l, r)
        } else {
            l == r
        }
    }

    /// Least failing assignment (in variable order), if any. The algebra
    /// must carry every symbol of the law.
    pub fn first_failure(&self, a: &FiniteAlgebra) -> Option<Vec<usize>> {
        let mut buf = Vec::new();
        let mut witness = None;
        let (conclusion, premises) = self.terms.split_last().expect("a law has a conclusion");
        for_each_assignment(a.size(), self.vars.len(), |args| {
            let applies = premises.iter().all(|t| Self::atom_holds(a, t, args, &mut buf));
            if applies && !Self::atom_holds(a, conclusion, args, &mut buf) {
                witness = Some(args.to_vec());
                return false;
            }
            true
        });
        witness
    }
}

impl fmt::Display for LawAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs, if self.inequality { "<=" } else { "=" }, self.rhs)
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.premises {
            write!(f, "{p} => ")?;
        }
        write!(f, "{}", self.conclusion)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassKind {
    Lattice,
    Fl,
    Fle,
    Flew,
    Flen(u32),
    Flewn(u32),
    Heyting,
    Boolean,
    Bl,
    Mv,
    Modal,
    Kn4(u32),
    Kn45(u32),
    S4,
    S5,
    ModalHeyting,
    Ikn4(u32),
    Ikn45(u32),
    Is4,
    Mipc,
    Ws5,
}

/// Which kind of lattice-ordered structure a class lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Lattice,
    /// Residuated lattice; flags say whether fusion is commutative and
    /// whether the unit is the top.
    Residuated { commutative: bool, integral: bool },
    /// Modal operators over Boolean algebras, `<>` defined as `~[]~`.
    BooleanModal,
    /// Both operators over Heyting algebras.
    HeytingModal,
}

impl ClassKind {
    pub fn token(self) -> String {
        match self {
            ClassKind::Lattice => "lattice".into(),
            ClassKind::Fl => "fl".into(),
            ClassKind::Fle => "fle".into(),
            ClassKind::Flew => "flew".into(),
            ClassKind::Flen(n) => format!("flen:n={n}"),
            ClassKind::Flewn(n) => format!("flewn:n={n}"),
            ClassKind::Heyting => "heyting".into(),
            ClassKind::Boolean => "boolean".into(),
            ClassKind::Bl => "bl".into(),
            ClassKind::Mv => "mv".into(),
            ClassKind::Modal => "modal".into(),
            ClassKind::Kn4(n) => format!("kn4:n={n}"),
            ClassKind::Kn45(n) => format!("kn45:n={n}"),
            ClassKind::S4 => "s4".into(),
            ClassKind::S5 => "s5".into(),
            ClassKind::ModalHeyting => "modal-heyting".into(),
            ClassKind::Ikn4(n) => format!("ikn4:n={n}"),
            ClassKind::Ikn45(n) => format!("ikn45:n={n}"),
            ClassKind::Is4 => "is4".into(),
            ClassKind::Mipc => "mipc".into(),
            ClassKind::Ws5 => "ws5".into(),
        }
    }

    pub fn shape(self) -> Shape {
        use ClassKind::*;
        match self {
            Lattice => Shape::Lattice,
            Fl => Shape::Residuated { commutative: false, integral: false },
            Fle | Flen(_) => Shape::Residuated { commutative: true, integral: false },
            Flew | Flewn(_) | Heyting | Boolean | Bl | Mv => {
                Shape::Residuated { commutative: true, integral: true }
            }
            Modal | Kn4(_) | Kn45(_) | S4 | S5 => Shape::BooleanModal,
            ModalHeyting | Ikn4(_) | Ikn45(_) | Is4 | Mipc | Ws5 => Shape::HeytingModal,
        }
    }

    pub fn signature(self) -> Signature {
        match self.shape() {
            Shape::Lattice => Signature::lattice(),
            Shape::Residuated { .. } => Signature::fl(),
            Shape::BooleanModal | Shape::HeytingModal => Signature::modal(),
        }
    }
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassOptions {
    /// Add the dual `<>` laws to IKn.4 and IS4.
    pub dual_laws: bool,
    /// Leave out `<>x -> []y <= [](x -> y)` from the modal Heyting base.
    pub weak_modal_heyting: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassError {
    UnknownClass(String),
    BadParameter(String),
    SignatureMismatch { missing: Symbol },
}

impl fmt::Display for ClassError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassError::UnknownClass(c) => write!(f, "unknown class `{c}`"),
            ClassError::BadParameter(c) => write!(f, "bad class parameter in `{c}`"),
            ClassError::SignatureMismatch { missing } => {
                write!(f, "algebra lacks symbol `{missing}` required by the class")
            }
        }
    }
}

impl core::error::Error for ClassError {}

/// A named class with its defining laws.
#[derive(Clone, Debug)]
pub struct AlgebraClass {
    kind: ClassKind,
    options: ClassOptions,
    laws: Vec<Law>,
}

fn lattice_laws() -> Vec<Law> {
    vec![
        Law::eq("meet-idempotent", "x /\\ x", "x"),
        Law::eq("meet-commutative", "x /\\ y", "y /\\ x"),
        Law::eq("meet-associative", "(x /\\ y) /\\ z", "x /\\ (y /\\ z)"),
        Law::eq("join-idempotent", "x \\/ x", "x"),
        Law::eq("join-commutative", "x \\/ y", "y \\/ x"),
        Law::eq("join-associative", "(x \\/ y) \\/ z", "x \\/ (y \\/ z)"),
        Law::eq("absorption-meet", "x /\\ (x \\/ y)", "x"),
        Law::eq("absorption-join", "x \\/ (x /\\ y)", "x"),
        Law::eq("top", "x /\\ T", "x"),
        Law::eq("bottom", "x \\/ B", "x"),
    ]
}

fn fl_laws() -> Vec<Law> {
    let mut laws = lattice_laws();
    laws.extend([
        Law::eq("fusion-associative", "(x * y) * z", "x * (y * z)"),
        Law::eq("unit-left", "1 * x", "x"),
        Law::eq("unit-right", "x * 1", "x"),
        Law::quasi("residuation-1", ("x * y", "<=", "z"), ("y", "<=", "x \\ z")),
        Law::quasi("residuation-2", ("y", "<=", "x \\ z"), ("x", "<=", "z / y")),
        Law::quasi("residuation-3", ("x", "<=", "z / y"), ("x * y", "<=", "z")),
    ]);
    laws
}

fn heyting_laws() -> Vec<Law> {
    let mut laws = fl_laws();
    laws.extend([
        Law::eq("exchange", "x * y", "y * x"),
        Law::eq("integrality", "1", "T"),
        Law::le("contraction", "x", "x * x"),
    ]);
    laws
}

fn boolean_laws() -> Vec<Law> {
    let mut laws = heyting_laws();
    laws.push(Law::eq("excluded-middle", "x \\/ ~x", "T"));
    laws
}

fn modal_box_laws() -> Vec<Law> {
    vec![
        Law::eq("box-meet", "[](x /\\ y)", "[]x /\\ []y"),
        Law::eq("box-top", "[]T", "T"),
    ]
}

fn modal_heyting_laws(opts: ClassOptions) -> Vec<Law> {
    let mut laws = heyting_laws();
    laws.extend(modal_box_laws());
    laws.extend([
        Law::le("box-diamond", "[](x -> y)", "<>x -> <>y"),
        Law::eq("diamond-join", "<>(x \\/ y)", "<>x \\/ <>y"),
        Law::eq("diamond-bottom", "<>B", "B"),
    ]);
    if !opts.weak_modal_heyting {
        laws.push(Law::le("diamond-box", "<>x -> []y", "[](x -> y)"));
    }
    laws
}

fn weak_transitivity(n: u32) -> Law {
    Law::le("weak-transitivity", &format!("[]_{n} x"), &format!("[]_{} x", n + 1))
}

fn cyclicity(n: u32) -> Law {
    Law::eq("cyclicity", "1", &format!("x \\/ []_1 ~[]_{n} x"))
}

impl AlgebraClass {
    pub fn new(kind: ClassKind, options: ClassOptions) -> AlgebraClass {
        use ClassKind::*;
        let laws = match kind {
            Lattice => lattice_laws(),
            Fl => fl_laws(),
            Fle => {
                let mut l = fl_laws();
                l.push(Law::eq("exchange", "x * y", "y * x"));
                l
            }
            Flew => {
                let mut l = Self::new(Fle, options).laws;
                l.push(Law::eq("integrality", "1", "T"));
                l
            }
            Flen(n) | Flewn(n) => {
                let base = if matches!(kind, Flen(_)) { Fle } else { Flew };
                let mut l = Self::new(base, options).laws;
                l.push(Law::eq(
                    "n-contraction",
                    &format!("(1 /\\ x)^{}", n + 1),
                    &format!("(1 /\\ x)^{n}"),
                ));
                l
            }
            Heyting => heyting_laws(),
            Boolean => boolean_laws(),
            Bl => {
                let mut l = Self::new(Flew, options).laws;
                l.push(Law::eq("prelinearity", "(x -> y) \\/ (y -> x)", "1"));
                l.push(Law::eq("divisibility", "x /\\ y", "x * (x -> y)"));
                l
            }
            Mv => {
                let mut l = Self::new(Bl, options).laws;
                l.push(Law::eq("involution", "~~x", "x"));
                l
            }
            Modal => {
                let mut l = boolean_laws();
                l.extend(modal_box_laws());
                l.push(Law::eq("diamond-dual", "<>x", "~[]~x"));
                l
            }
            Kn4(n) => {
                let mut l = Self::new(Modal, options).laws;
                l.push(weak_transitivity(n));
                l
            }
            Kn45(n) => {
                let mut l = Self::new(Kn4(n), options).laws;
                l.push(cyclicity(n));
                l
            }
            S4 => {
                let mut l = Self::new(Modal, options).laws;
                l.push(Law::le("reflexivity", "[]x", "x"));
                l.push(Law::le("transitivity", "[]x", "[][]x"));
                l
            }
            S5 => {
                let mut l = Self::new(S4, options).laws;
                l.push(Law::le("symmetry", "x", "[]<>x"));
                l
            }
            ModalHeyting => modal_heyting_laws(options),
            Ikn4(n) => {
                let mut l = modal_heyting_laws(options);
                l.push(weak_transitivity(n));
                if options.dual_laws {
                    l.push(Law::le(
                        "dual-weak-transitivity",
                        &format!("<>_{} x", n + 1),
                        &format!("<>_{n} x"),
                    ));
                }
                l
            }
            Ikn45(n) => {
                let mut l = Self::new(Ikn4(n), options).laws;
                l.push(cyclicity(n));
                l
            }
            Is4 => {
                let mut l = modal_heyting_laws(options);
                l.push(Law::le("reflexivity", "[]x", "x"));
                l.push(Law::le("transitivity", "[]x", "[][]x"));
                if options.dual_laws {
                    l.push(Law::le("dual-reflexivity", "x", "<>x"));
                    l.push(Law::le("dual-transitivity", "<><>x", "<>x"));
                }
                l
            }
            Mipc => {
                let mut l = heyting_laws();
                l.extend(modal_box_laws());
                l.extend([
                    Law::le("box-deflationary", "[]x", "x"),
                    Law::eq("diamond-bottom", "<>B", "B"),
                    Law::le("diamond-inflationary", "x", "<>x"),
                    Law::eq("diamond-join", "<>(x \\/ y)", "<>x \\/ <>y"),
                    Law::eq("box-of-diamond", "[]<>x", "<>x"),
                    Law::eq("diamond-of-box", "<>[]x", "[]x"),
                    Law::eq("diamond-frobenius", "<>(<>x /\\ y)", "<>x /\\ <>y"),
                    Law::eq("box-implication", "[](<>x -> y)", "<>x -> []y"),
                ]);
                l
            }
            Ws5 => {
                let mut l = Self::new(Mipc, options).laws;
                l.push(Law::eq("weak-excluded-middle", "1", "[]x \\/ ~[]x"));
                l
            }
        };
        AlgebraClass { kind, options, laws }
    }

    /// Parse a class token such as `flew`, `flen:n=2` or `ikn4:n=1,dual`.
    pub fn parse(token: &str) -> Result<AlgebraClass, ClassError> {
        let (base, params) = match token.split_once(':') {
            Some((b, p)) => (b, p),
            None => (token, ""),
        };
        let mut n: Option<u32> = None;
        let mut options = ClassOptions::default();
        for part in params.split(',').filter(|p| !p.is_empty()) {
            match part.split_once('=') {
                Some(("n", v)) => {
                    n = Some(v.parse().map_err(|_| ClassError::BadParameter(token.into()))?)
                }
                None if part == "dual" => options.dual_laws = true,
                None if part == "weak" => options.weak_modal_heyting = true,
                _ => return Err(ClassError::BadParameter(token.into())),
            }
        }
        let need = || n.ok_or_else(|| ClassError::BadParameter(token.into()));
        use ClassKind::*;
        let kind = match base {
            "lattice" => Lattice,
            "fl" => Fl,
            "fle" => Fle,
            "flew" => Flew,
            "flen" => Flen(need()?),
            "flewn" => Flewn(need()?),
            "heyting" => Heyting,
            "boolean" => Boolean,
            "bl" => Bl,
            "mv" => Mv,
            "modal" => Modal,
            "kn4" => Kn4(need()?),
            "kn45" => Kn45(need()?),
            "s4" => S4,
            "s5" => S5,
            "modal-heyting" => ModalHeyting,
            "ikn4" => Ikn4(need()?),
            "ikn45" => Ikn45(need()?),
            "is4" => Is4,
            "mipc" => Mipc,
            "ws5" => Ws5,
            _ => return Err(ClassError::UnknownClass(token.into())),
        };
        let takes_n = matches!(kind, Flen(_) | Flewn(_) | Kn4(_) | Kn45(_) | Ikn4(_) | Ikn45(_));
        if n.is_some() && !takes_n {
            return Err(ClassError::BadParameter(token.into()));
        }
        Ok(AlgebraClass::new(kind, options))
    }

    pub fn kind(&self) -> ClassKind {
        self.kind
    }

    pub fn options(&self) -> ClassOptions {
        self.options
    }

    pub fn name(&self) -> String {
        self.kind.token()
    }

    pub fn signature(&self) -> Signature {
        self.kind.signature()
    }

    pub fn laws(&self) -> &[Law] {
        &self.laws
    }

    fn check_signature(&self, a: &FiniteAlgebra) -> Result<(), ClassError> {
        for law in &self.laws {
            for s in law.symbols() {
                if !a.has(s) {
                    return Err(ClassError::SignatureMismatch { missing: s });
                }
            }
        }
        Ok(())
    }

    /// Exhaustive check of every law; reports each failing law with its
    /// least failing valuation.
    pub fn check_membership(&self, a: &FiniteAlgebra) -> Result<ClassReport, ClassError> {
        self.check_signature(a)?;
        let mut failures = Vec::new();
        for law in &self.laws {
            if law.terms.iter().any(|(l, r, _)| a.check_term(l).is_err() || a.check_term(r).is_err()) {
                failures.push(LawFailure { label: law.label.clone(), valuation: Vec::new() });
                continue;
            }
            if let Some(w) = law.first_failure(a) {
                let valuation = law.vars.iter().cloned().zip(w).collect();
                failures.push(LawFailure { label: law.label.clone(), valuation });
            }
        }
        Ok(ClassReport { verdict: failures.is_empty(), failures })
    }

    /// Membership without collecting failures.
    pub fn contains(&self, a: &FiniteAlgebra) -> bool {
        self.check_signature(a).is_ok()
            && self.laws.iter().all(|law| {
                law.terms.iter().all(|(l, r, _)| a.check_term(l).is_ok() && a.check_term(r).is_ok())
                    && law.first_failure(a).is_none()
            })
    }
}

/// One failing law with the witness valuation (variable, element).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawFailure {
    pub label: String,
    pub valuation: Vec<(String, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassReport {
    pub verdict: bool,
    pub failures: Vec<LawFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorError {
    ChainTooShort(usize),
    NoAtoms,
    TooManyAtoms(usize),
    InvalidPartition(String),
    Algebra(AlgebraError),
}

impl fmt::Display for GeneratorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorError::ChainTooShort(k) => write!(f, "chain length {k} is below 2"),
            GeneratorError::NoAtoms => f.write_str("a Boolean algebra needs at least one atom"),
            GeneratorError::TooManyAtoms(k) => write!(f, "{k} atoms is too many"),
            GeneratorError::InvalidPartition(why) => write!(f, "invalid partition: {why}"),
            GeneratorError::Algebra(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for GeneratorError {}

impl From<AlgebraError> for GeneratorError {
    fn from(e: AlgebraError) -> Self {
        GeneratorError::Algebra(e)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn binary_table(n: usize, f: impl Fn(usize, usize) -> usize) -> Vec<usize> {
    (0..n * n).map(|k| f(k / n, k % n)).collect()
}

/// Integral commutative residuated chain on `0..k` from a fusion table;
/// residuals are the largest solutions.
fn fl_chain(name: &str, k: usize, fuse: impl Fn(usize, usize) -> usize) -> Result<FiniteAlgebra, AlgebraError> {
    let top = k - 1;
    let res = |x: usize, z: usize| (0..k).rev().find(|&y| fuse(x, y) <= z).unwrap_or(0);
    FiniteAlgebra::new(
        name,
        k,
        Signature::fl(),
        vec![
            (Symbol::Meet, binary_table(k, |x, y| x.min(y))),
            (Symbol::Join, binary_table(k, |x, y| x.max(y))),
            (Symbol::Fusion, binary_table(k, &fuse)),
            (Symbol::LeftRes, binary_table(k, res)),
            (Symbol::RightRes, binary_table(k, |z, y| res(y, z))),
            (Symbol::One, vec![top]),
            (Symbol::Zero, vec![0]),
            (Symbol::Top, vec![top]),
            (Symbol::Bottom, vec![0]),
        ],
    )
}

/// The k-element Lukasiewicz chain; element `i` stands for `i/(k-1)`.
pub fn make_lukasiewicz_chain(k: usize) -> Result<FiniteAlgebra, GeneratorError> {
    if k < 2 {
        return Err(GeneratorError::ChainTooShort(k));
    }
    let m = k - 1;
    let a = fl_chain(&format!("L{k}"), k, |x, y| (x + y).saturating_sub(m))?;
    let labels = (0..k)
        .map(|i| match i {
            0 => "0".to_string(),
            _ if i == m => "1".to_string(),
            _ => {
                let g = gcd(i, m);
                format!("{}/{}", i / g, m / g)
            }
        })
        .collect();
    Ok(a.with_labels(labels)?)
}

fn chain_labels(k: usize) -> Vec<String> {
    (0..k)
        .map(|i| match i {
            0 => "0".to_string(),
            _ if i == k - 1 => "1".to_string(),
            _ if k <= 28 => char::from(b'a' + (i - 1) as u8).to_string(),
            _ => format!("a{i}"),
        })
        .collect()
}

/// The k-element Goedel (Heyting) chain.
pub fn make_godel_chain(k: usize) -> Result<FiniteAlgebra, GeneratorError> {
    if k < 2 {
        return Err(GeneratorError::ChainTooShort(k));
    }
    let a = fl_chain(&format!("G{k}"), k, |x, y| x.min(y))?;
    Ok(a.with_labels(chain_labels(k))?)
}

/// The Boolean algebra of subsets of `atoms` atoms; element `m` is the
/// subset with bitmask `m`.
pub fn make_boolean(atoms: usize) -> Result<FiniteAlgebra, GeneratorError> {
    if atoms == 0 {
        return Err(GeneratorError::NoAtoms);
    }
    if atoms > 6 {
        return Err(GeneratorError::TooManyAtoms(atoms));
    }
    let n = 1usize << atoms;
    let full = n - 1;
    let a = FiniteAlgebra::new(
        &format!("Boolean{n}"),
        n,
        Signature::fl(),
        vec![
            (Symbol::Meet, binary_table(n, |x, y| x & y)),
            (Symbol::Join, binary_table(n, |x, y| x | y)),
            (Symbol::Fusion, binary_table(n, |x, y| x & y)),
            (Symbol::LeftRes, binary_table(n, |x, y| (!x & full) | y)),
            (Symbol::RightRes, binary_table(n, |y, x| (!x & full) | y)),
            (Symbol::One, vec![full]),
            (Symbol::Zero, vec![0]),
            (Symbol::Top, vec![full]),
            (Symbol::Bottom, vec![0]),
        ],
    )?;
    let labels = (0..n)
        .map(|m| match m {
            0 => "0".to_string(),
            _ if m == full => "1".to_string(),
            _ => (0..atoms)
                .filter(|i| m & (1 << i) != 0)
                .map(|i| char::from(b'a' + i as u8))
                .collect(),
        })
        .collect();
    Ok(a.with_labels(labels)?)
}

/// Boolean algebra with a given `[]` table and `<>x := ~[]~x`.
pub fn with_boolean_box(base: &FiniteAlgebra, boxes: Vec<usize>) -> Result<FiniteAlgebra, AlgebraError> {
    let dia: Vec<usize> = (0..base.size())
        .map(|x| {
            let nx = base.neg(x);
            let b = boxes.get(nx).copied().unwrap_or(0);
            base.neg(b.min(base.size() - 1))
        })
        .collect();
    base.clone().with_table(Symbol::Box, boxes)?.with_table(Symbol::Diamond, dia)
}

/// Join-irreducible elements of a lattice (non-bottom, not a join of two
/// strictly smaller elements).
pub fn join_irreducibles(a: &FiniteAlgebra) -> Vec<usize> {
    let n = a.size();
    (0..n)
        .filter(|&j| {
            j != a.bottom()
                && !(0..n).any(|x| (0..n).any(|y| x != j && y != j && a.join(x, y) == j))
        })
        .collect()
}

/// Monadic Heyting algebra over a finite Heyting algebra from a partition
/// of its join-irreducibles into clusters. The fixed elements are those
/// whose set of join-irreducibles below is a union of clusters; `[]x` is
/// the largest fixed element below `x`, `<>x` the least one above.
pub fn make_monadic(base: &FiniteAlgebra, clusters: &[Vec<usize>]) -> Result<FiniteAlgebra, GeneratorError> {
    let heyting = AlgebraClass::new(ClassKind::Heyting, ClassOptions::default());
    if !heyting.contains(base) {
        return Err(GeneratorError::InvalidPartition("base is not a Heyting algebra".into()));
    }
    let n = base.size();
    let ji = join_irreducibles(base);
    let mut cluster_of = vec![usize::MAX; n];
    for (c, block) in clusters.iter().enumerate() {
        if block.is_empty() {
            return Err(GeneratorError::InvalidPartition("empty cluster".into()));
        }
        for &j in block {
            if j >= n || !ji.contains(&j) {
                return Err(GeneratorError::InvalidPartition(format!("{j} is not join-irreducible")));
            }
            if cluster_of[j] != usize::MAX {
                return Err(GeneratorError::InvalidPartition(format!("{j} is in two clusters")));
            }
            cluster_of[j] = c;
        }
    }
    if let Some(&j) = ji.iter().find(|&&j| cluster_of[j] == usize::MAX) {
        return Err(GeneratorError::InvalidPartition(format!("{j} is in no cluster")));
    }
    let fixed: Vec<usize> = (0..n)
        .filter(|&x| {
            clusters.iter().all(|block| {
                let below = block.iter().filter(|&&j| base.leq(j, x)).count();
                below == 0 || below == block.len()
            })
        })
        .collect();
    let boxes: Vec<usize> = (0..n)
        .map(|x| fixed.iter().copied().filter(|&f| base.leq(f, x)).fold(base.bottom(), |acc, f| base.join(acc, f)))
        .collect();
    let dias: Vec<usize> = (0..n)
        .map(|x| fixed.iter().copied().filter(|&f| base.leq(x, f)).fold(base.top(), |acc, f| base.meet(acc, f)))
        .collect();
    let name = format!("{}-monadic", base.name());
    let m = base
        .clone()
        .renamed(&name)
        .with_table(Symbol::Box, boxes)?
        .with_table(Symbol::Diamond, dias)?;
    let mipc = AlgebraClass::new(ClassKind::Mipc, ClassOptions::default());
    let report = mipc.check_membership(&m).map_err(|e| GeneratorError::InvalidPartition(e.to_string()))?;
    if !report.verdict {
        let labels: Vec<&str> = report.failures.iter().map(|f| f.label.as_str()).collect();
        return Err(GeneratorError::InvalidPartition(format!(
            "clusters do not give a monadic algebra ({})",
            labels.join(", ")
        )));
    }
    Ok(m)
}
