//! Glivenko correspondences between pairs of finite model catalogs, the
//! local Glivenko form, and an exact countermodel for the DDT of the
//! infinitary Lukasiewicz logic.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::algebra::FiniteAlgebra;
use crate::classes::{make_boolean, make_lukasiewicz_chain, AlgebraClass, ClassKind, ClassOptions};
use crate::deduction::{consequence, Countermodel, DeductionError, MatrixFamily};
use crate::formula::{parse, BinOp, Const, FamilyArity, Formula, SchemeError, SchemeFamily, UnOp, HOLE};
use crate::search::{catalog_of_sizes, catalog_up_to, SearchError};
use crate::verdict::Verdict;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GlivenkoError {
    Deduction(DeductionError),
    Search(SearchError),
    Scheme(SchemeError),
    NoHole(Formula),
    NotSingleton { family: String },
    UnknownPair(String),
    NotLukasiewicz(String),
}

impl fmt::Display for GlivenkoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GlivenkoError::Deduction(e) => write!(f, "{e}"),
            GlivenkoError::Search(e) => write!(f, "{e}"),
            GlivenkoError::Scheme(e) => write!(f, "{e}"),
            GlivenkoError::NoHole(s) => write!(f, "translation scheme `{s}` has no hole `{HOLE}`"),
            GlivenkoError::NotSingleton { family } => {
                write!(f, "family `{family}` must be unary with one formula per member")
            }
            GlivenkoError::UnknownPair(name) => write!(f, "unknown Glivenko pair `{name}`"),
            GlivenkoError::NotLukasiewicz(what) => write!(f, "`{what}` has no value in the real unit interval"),
        }
    }
}

impl core::error::Error for GlivenkoError {}

impl From<DeductionError> for GlivenkoError {
    fn from(e: DeductionError) -> Self {
        GlivenkoError::Deduction(e)
    }
}
impl From<SearchError> for GlivenkoError {
    fn from(e: SearchError) -> Self {
        GlivenkoError::Search(e)
    }
}
impl From<SchemeError> for GlivenkoError {
    fn from(e: SchemeError) -> Self {
        GlivenkoError::Scheme(e)
    }
}

/// A weaker logic, a stronger one, and a one-hole translation scheme.
#[derive(Clone, Debug)]
pub struct GlivenkoPair {
    pub name: String,
    pub weak: MatrixFamily,
    pub strong: MatrixFamily,
    pub scheme: Formula,
    /// Whether a validity verdict on the strong side is complete.
    pub strong_exact: bool,
}

fn least_of(algebras: Vec<FiniteAlgebra>) -> Result<MatrixFamily, GlivenkoError> {
    Ok(MatrixFamily::least(&algebras)?)
}

fn class(kind: ClassKind) -> AlgebraClass {
    AlgebraClass::new(kind, ClassOptions::default())
}

fn scheme(text: &str) -> Formula {
    parse(text).unwrap_or_else(|e| panic!("built-in scheme `{text}`: {e}"))
}

impl GlivenkoPair {
    pub fn new(
        name: &str,
        weak: MatrixFamily,
        strong: MatrixFamily,
        scheme: Formula,
        strong_exact: bool,
    ) -> Result<GlivenkoPair, GlivenkoError> {
        if !scheme.vars().contains(HOLE) {
            return Err(GlivenkoError::NoHole(scheme));
        }
        Ok(GlivenkoPair { name: name.into(), weak, strong, scheme, strong_exact })
    }

    /// Heyting algebras up to `max` elements against Boolean-2 with `~~_`.
    pub fn classical(max: usize) -> Result<GlivenkoPair, GlivenkoError> {
        let weak = least_of(catalog_up_to(&class(ClassKind::Heyting), max)?.into_entries())?;
        let two = make_boolean(1).map_err(|_| GlivenkoError::UnknownPair("boolean2".into()))?;
        let strong = least_of(vec![two])?;
        Self::new("heyting/boolean", weak, strong, scheme("~~_"), true)
    }

    /// S4 against S5 on Boolean carriers up to `max` elements, `~[]~[]_`.
    pub fn s4_s5(max: usize) -> Result<GlivenkoPair, GlivenkoError> {
        let sizes: Vec<usize> = (1..=max).filter(|n| n.is_power_of_two() && *n > 1).collect();
        let weak = least_of(catalog_of_sizes(&class(ClassKind::S4), sizes.clone())?.into_entries())?;
        let strong = least_of(catalog_of_sizes(&class(ClassKind::S5), sizes)?.into_entries())?;
        Self::new("s4/s5", weak, strong, scheme("~[]~[]_"), false)
    }

    /// IKn.4 against its cyclic extension, `~[]_n ~[]_n _`.
    pub fn ikn4(n: u32, max: usize) -> Result<GlivenkoPair, GlivenkoError> {
        let weak = least_of(catalog_up_to(&class(ClassKind::Ikn4(n)), max)?.into_entries())?;
        let strong = least_of(catalog_up_to(&class(ClassKind::Ikn45(n)), max)?.into_entries())?;
        Self::new(&format!("ikn4/ikn45:n={n}"), weak, strong, scheme(&format!("~[]_{n} ~[]_{n} _")), false)
    }

    /// Monadic Heyting algebras against WS5, `~~[]_`.
    pub fn mipc_ws5(max: usize) -> Result<GlivenkoPair, GlivenkoError> {
        let weak = least_of(catalog_up_to(&class(ClassKind::Mipc), max)?.into_entries())?;
        let strong = least_of(catalog_up_to(&class(ClassKind::Ws5), max)?.into_entries())?;
        Self::new("mipc/ws5", weak, strong, scheme("~~[]_"), false)
    }

    /// BL chains against Lukasiewicz chains, `~~_`.
    pub fn bl_mv(max: usize) -> Result<GlivenkoPair, GlivenkoError> {
        let bl = catalog_up_to(&class(ClassKind::Bl), max)?;
        let chains: Vec<FiniteAlgebra> = bl
            .into_entries()
            .into_iter()
            .filter(|a| a.order_from_meet().is_ok_and(|o| o.is_chain()))
            .collect();
        let weak = least_of(chains)?;
        let luk: Vec<FiniteAlgebra> = (2..=max.max(2)).filter_map(|k| make_lukasiewicz_chain(k).ok()).collect();
        let strong = least_of(luk)?;
        Self::new("bl/mv", weak, strong, scheme("~~_"), false)
    }

    pub fn shipped_names() -> &'static [&'static str] {
        &["classical", "s4-s5", "ikn4:n=N", "mipc-ws5", "bl-mv"]
    }

    /// Look up a shipped pair by name.
    pub fn shipped(name: &str, max: usize) -> Result<GlivenkoPair, GlivenkoError> {
        match name {
            "classical" => Self::classical(max),
            "s4-s5" => Self::s4_s5(max),
            "mipc-ws5" => Self::mipc_ws5(max),
            "bl-mv" => Self::bl_mv(max),
            _ => match name.strip_prefix("ikn4:n=").and_then(|v| v.parse().ok()) {
                Some(n) => Self::ikn4(n, max),
                None => Err(GlivenkoError::UnknownPair(name.into())),
            },
        }
    }

    pub fn translate(&self, phi: &Formula) -> Formula {
        self.scheme.fill_hole(phi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Match,
    Mismatch,
}

impl Outcome {
    pub fn label(self) -> &'static str {
        match self {
            Outcome::Match => "MATCH",
            Outcome::Mismatch => "MISMATCH",
        }
    }
}

#[derive(Clone, Debug)]
pub struct GlivenkoReport {
    pub translated: Formula,
    pub strong: Verdict<Countermodel>,
    /// Never `Holds`: validity on the weak side is bounded by the catalog.
    pub weak: Verdict<Countermodel>,
    pub weak_size_bound: usize,
    pub outcome: Outcome,
    /// The strong side is exactly valid while the weak side has a
    /// countermodel.
    pub exact_mismatch: bool,
}

impl GlivenkoReport {
    /// `VALID-UP-TO-SIZE-N` for bounded weak validity, else the verdict.
    pub fn weak_label(&self) -> String {
        match &self.weak {
            Verdict::Fails(_) => "FAILS".into(),
            _ => format!("VALID-UP-TO-SIZE-{}", self.weak_size_bound),
        }
    }
}

fn bounded(v: Verdict<Countermodel>) -> Verdict<Countermodel> {
    match v {
        Verdict::Holds => Verdict::HoldsUpToBound,
        other => other,
    }
}

/// Compare consequence in the strong logic with consequence of the
/// translated conclusion in the weak one.
pub fn glivenko_check(pair: &GlivenkoPair, gamma: &[Formula], phi: &Formula) -> Result<GlivenkoReport, GlivenkoError> {
    let translated = pair.translate(phi);
    let mut strong = consequence(&pair.strong, gamma, phi)?;
    if !pair.strong_exact {
        strong = bounded(strong);
    }
    let weak = bounded(consequence(&pair.weak, gamma, &translated)?);
    let outcome = if strong.is_not_refuted() == weak.is_not_refuted() { Outcome::Match } else { Outcome::Mismatch };
    let exact_mismatch = strong.is_holds() && weak.is_fails();
    Ok(GlivenkoReport { translated, strong, weak, weak_size_bound: pair.weak.max_size(), outcome, exact_mismatch })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalRow {
    pub n: usize,
    /// Least k with the conclusion `J_k(I_n(phi))`, if any up to the bound.
    pub k: Option<usize>,
}

/// For each n up to `bound`, the least k up to `bound` with
/// gamma entailing `psi_k(psi_n(phi))` over the least filters of `algebras`.
pub fn local_glivenko_check(
    algebras: &[FiniteAlgebra],
    gamma: &[Formula],
    phi: &Formula,
    psi: &SchemeFamily,
    bound: usize,
) -> Result<Vec<LocalRow>, GlivenkoError> {
    let singleton = psi.arity() == FamilyArity::Unary && psi.member_ids().iter().all(|m| m.len() == 1);
    if !singleton {
        return Err(GlivenkoError::NotSingleton { family: psi.name().into() });
    }
    let bound = bound.min(psi.bound());
    let family = MatrixFamily::least(algebras)?;
    let mut rows = Vec::new();
    for n in 1..=bound {
        let inner = psi.expand(n, phi)?.remove(0);
        let mut found = None;
        for k in 1..=bound {
            let goal = psi.expand(k, &inner)?.remove(0);
            if consequence(&family, gamma, &goal)?.is_holds() {
                found = Some(k);
                break;
            }
        }
        rows.push(LocalRow { n, k: found });
    }
    Ok(rows)
}

/// Family whose member for a choice `f` is `{ f(i).(p -> q^i) : i <= N }`,
/// ordered like [`SchemeFamily::ddt_from_cil`].
pub fn multiple_ddt_family(bound: usize) -> Result<SchemeFamily, SchemeError> {
    let n = bound;
    let count = (n as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if count > 1 << 20 {
        return Err(SchemeError::TooLarge { members: count });
    }
    let (p, q) = (Formula::var("p"), Formula::var("q"));
    let mut members = Vec::new();
    let mut choice = vec![0usize; n];
    loop {
        let set = choice
            .iter()
            .enumerate()
            .map(|(i, &j)| Formula::multiple(j as u32 + 1, Formula::imp(p.clone(), Formula::power(q.clone(), i as u32 + 1))))
            .collect();
        members.push(set);
        let mut k = n;
        loop {
            if k == 0 {
                return SchemeFamily::new("multiple-ddt", FamilyArity::Binary, members, Some(bound));
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < n {
                break;
            }
            choice[k] = 0;
        }
    }
}

/// Random formula over `/\ \/ -> ~` with leaves among `vars` and `B`;
/// the node count is uniform in `1..=max_nodes`.
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, max_nodes: usize, vars: &[&str]) -> Formula {
    let size = rng.gen_range(1..=max_nodes.max(1));
    random_tree(rng, size, vars)
}

fn random_tree<R: Rng + ?Sized>(rng: &mut R, size: usize, vars: &[&str]) -> Formula {
    if size <= 1 {
        let k = rng.gen_range(0..=vars.len());
        return match vars.get(k) {
            Some(v) => Formula::var(v),
            None => Formula::bottom(),
        };
    }
    let unary = size == 2 || rng.gen_range(0..4) == 0;
    if unary {
        return Formula::negb(random_tree(rng, size - 1, vars));
    }
    let left = rng.gen_range(1..size - 1);
    let l = random_tree(rng, left, vars);
    let r = random_tree(rng, size - 1 - left, vars);
    match rng.gen_range(0..3) {
        0 => Formula::and(l, r),
        1 => Formula::or(l, r),
        _ => Formula::imp(l, r),
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn clamp01(x: BigRational) -> BigRational {
    if x < BigRational::zero() {
        BigRational::zero()
    } else if x > BigRational::one() {
        BigRational::one()
    } else {
        x
    }
}

/// `x . y` in the standard MV-algebra on [0,1].
pub fn luk_fuse(x: &BigRational, y: &BigRational) -> BigRational {
    clamp01(x + y - BigRational::one())
}

/// `x -> y` in the standard MV-algebra on [0,1].
pub fn luk_imp(x: &BigRational, y: &BigRational) -> BigRational {
    clamp01(BigRational::one() - x + y)
}

/// `x^k`, with `x^0 = 1`.
pub fn luk_pow(x: &BigRational, k: u32) -> BigRational {
    if k == 0 {
        return BigRational::one();
    }
    clamp01(BigRational::from_integer(BigInt::from(k)) * x - BigRational::from_integer(BigInt::from(k - 1)))
}

/// Value of a modality-free formula in the standard MV-algebra.
pub fn luk_evaluate(phi: &Formula, v: &BTreeMap<String, BigRational>) -> Result<BigRational, GlivenkoError> {
    eval_plain(&phi.expand(), v)
}

fn eval_plain(phi: &Formula, v: &BTreeMap<String, BigRational>) -> Result<BigRational, GlivenkoError> {
    Ok(match phi {
        Formula::Var(x) => v.get(x).cloned().ok_or_else(|| GlivenkoError::NotLukasiewicz(x.clone()))?,
        Formula::Const(Const::One | Const::Top) => BigRational::one(),
        Formula::Const(Const::Zero | Const::Bottom) => BigRational::zero(),
        Formula::Binary(op, x, y) => {
            let (a, b) = (eval_plain(x, v)?, eval_plain(y, v)?);
            match op {
                BinOp::And => a.min(b),
                BinOp::Or => a.max(b),
                BinOp::Fuse => luk_fuse(&a, &b),
                BinOp::LeftRes | BinOp::Arrow => luk_imp(&a, &b),
                BinOp::RightRes => luk_imp(&b, &a),
                BinOp::Oplus => clamp01(a + b),
            }
        }
        Formula::Unary(UnOp::NegB | UnOp::NegZ, x) => BigRational::one() - eval_plain(x, v)?,
        other => return Err(GlivenkoError::NotLukasiewicz(other.to_string())),
    })
}

/// The valuation refuting `p^n -> q0` from the detachment and negation
/// premises.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalValuation {
    pub n: u32,
    pub epsilon: BigRational,
    pub p: BigRational,
    /// `q[i]` for `i = 0..=i_max + 1`.
    pub q: Vec<BigRational>,
    /// Least `i` with `q[i] = 1`.
    pub i_max: usize,
}

impl RationalValuation {
    pub fn assignment(&self) -> BTreeMap<String, BigRational> {
        let mut m = BTreeMap::new();
        m.insert("p".to_string(), self.p.clone());
        for (i, q) in self.q.iter().enumerate() {
            m.insert(format!("q{i}"), q.clone());
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LukCertificate {
    pub valuation: RationalValuation,
    /// Value of `p^(i+1) -> (q(i+1) -> q(i))` for `i = 0..=i_max`.
    pub detachment: Vec<BigRational>,
    /// Value of `~q0 -> q(i)^i` for `i = 0..=i_max`.
    pub negation: Vec<BigRational>,
    /// Value of `p^n -> q0`.
    pub conclusion: BigRational,
}

impl LukCertificate {
    pub fn premises_hold(&self) -> bool {
        self.detachment.iter().chain(&self.negation).all(|x| x.is_one())
    }

    pub fn conclusion_fails(&self) -> bool {
        self.conclusion < BigRational::one()
    }

    pub fn passes(&self) -> bool {
        self.premises_hold() && self.conclusion_fails()
    }

    pub fn detachment_formula(i: usize) -> Formula {
        Formula::imp(
            Formula::power(Formula::var("p"), i as u32 + 1),
            Formula::imp(Formula::var(&format!("q{}", i + 1)), Formula::var(&format!("q{i}"))),
        )
    }

    pub fn negation_formula(i: usize) -> Formula {
        Formula::imp(Formula::negb(Formula::var("q0")), Formula::power(Formula::var(&format!("q{i}")), i as u32))
    }

    pub fn conclusion_formula(n: u32) -> Formula {
        Formula::imp(Formula::power(Formula::var("p"), n), Formula::var("q0"))
    }
}

fn ceil_sqrt(x: u64) -> u64 {
    let mut r = 0;
    while r * r < x {
        r += 1;
    }
    r
}

/// The valuation with `eps = 1/(1 + ceil(sqrt(2n)))`, `p = 1 - eps/(n+1)`
/// and `q_i = min(1, 1 - eps + (1 + ... + i) eps/(n+1))`, with every
/// premise and the conclusion evaluated exactly.
pub fn lukinfty_ddt_countermodel(n: u32) -> Result<LukCertificate, GlivenkoError> {
    let n = n.max(1);
    let root = ceil_sqrt(2 * u64::from(n)) as i64;
    let epsilon = rat(1, 1 + root);
    let n1 = i64::from(n) + 1;
    let p = BigRational::one() - &epsilon / BigRational::from_integer(BigInt::from(n1));
    let q_at = |i: i64| {
        let tri = i * (i + 1) / 2;
        let v = BigRational::one() - &epsilon + &epsilon * rat(tri, n1);
        v.min(BigRational::one())
    };
    let mut i_max = 0usize;
    while (i_max * (i_max + 1) / 2) < n1 as usize {
        i_max += 1;
    }
    let q: Vec<BigRational> = (0..=i_max as i64 + 1).map(q_at).collect();
    let valuation = RationalValuation { n, epsilon, p, q, i_max };
    let v = valuation.assignment();
    let mut detachment = Vec::new();
    let mut negation = Vec::new();
    for i in 0..=i_max {
        detachment.push(luk_evaluate(&LukCertificate::detachment_formula(i), &v)?);
        negation.push(luk_evaluate(&LukCertificate::negation_formula(i), &v)?);
    }
    let conclusion = luk_evaluate(&LukCertificate::conclusion_formula(n), &v)?;
    Ok(LukCertificate { valuation, detachment, negation, conclusion })
}
