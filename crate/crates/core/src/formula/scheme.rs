//! Indexed scheme families and the axiomatic forms of the excluded middle.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::Formula;

pub const P: &str = "p";
pub const Q: &str = "q";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyArity {
    /// Formulas in `p`.
    Unary,
    /// Formulas in `p` and `q`.
    Binary,
}

/// How a finite set of premises is merged into one formula before an
/// inconsistency family is applied to it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Combinator {
    Fusion,
    Meet,
}

impl Combinator {
    pub fn apply(self, x: Formula, y: Formula) -> Formula {
        match self {
            Combinator::Fusion => Formula::fuse(x, y),
            Combinator::Meet => Formula::and(x, y),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchemeError {
    UnknownFamily(String),
    BadParameter(String),
    IndexOutOfBound { index: usize, bound: usize },
    StrayVariable { family: String, var: String },
    ArityMismatch { family: String },
    ZeroBound,
    TooLarge { members: u128 },
    NoInstantiation { form: LemForm, params: LemParams },
}

impl fmt::Display for SchemeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemeError::UnknownFamily(n) => write!(f, "unknown scheme family `{n}`"),
            SchemeError::BadParameter(n) => write!(f, "bad family parameter in `{n}`"),
            SchemeError::IndexOutOfBound { index, bound } => {
                write!(f, "index {index} outside 1..={bound}")
            }
            SchemeError::StrayVariable { family, var } => {
                write!(f, "family `{family}` mentions non-distinguished variable `{var}`")
            }
            SchemeError::ArityMismatch { family } => {
                write!(f, "family `{family}` has the wrong number of distinguished variables")
            }
            SchemeError::ZeroBound => f.write_str("bound must be at least 1"),
            SchemeError::TooLarge { members } => {
                write!(f, "derived family would have {members} members")
            }
            SchemeError::NoInstantiation { form, params } => {
                write!(f, "no {form:?} form of the excluded middle registered for {params:?}")
            }
        }
    }
}

impl core::error::Error for SchemeError {}

/// A bounded indexed family of finite formula sets in the distinguished
/// variables `p` (and `q`). Member `n` (1-based) is a set of formulas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeFamily {
    name: String,
    arity: FamilyArity,
    pool: Vec<Formula>,
    members: Vec<Vec<usize>>,
    exact_for_size: Option<usize>,
}

const MAX_DERIVED_MEMBERS: u128 = 1 << 20;

impl SchemeFamily {
    /// Build a family from explicit member sets. `exact_for_size` is the
    /// largest carrier size on which a search through these members alone
    /// is complete; `Some(usize::MAX)` for global families, `None` if unknown.
    pub fn new(
        name: &str,
        arity: FamilyArity,
        members: Vec<Vec<Formula>>,
        exact_for_size: Option<usize>,
    ) -> Result<Self, SchemeError> {
        if members.is_empty() {
            return Err(SchemeError::ZeroBound);
        }
        let mut pool: Vec<Formula> = Vec::new();
        let mut index: BTreeMap<Formula, usize> = BTreeMap::new();
        let mut ids = Vec::with_capacity(members.len());
        for set in members {
            let mut m = Vec::new();
            for f in set {
                for v in f.vars() {
                    let ok = v == P || (arity == FamilyArity::Binary && v == Q);
                    if !ok {
                        return Err(SchemeError::StrayVariable { family: name.into(), var: v });
                    }
                }
                let id = *index.entry(f.clone()).or_insert_with(|| {
                    pool.push(f);
                    pool.len() - 1
                });
                if !m.contains(&id) {
                    m.push(id);
                }
            }
            ids.push(m);
        }
        Ok(SchemeFamily { name: name.into(), arity, pool, members: ids, exact_for_size })
    }

    /// A family with one member, valid at every bound.
    pub fn global(name: &str, arity: FamilyArity, set: Vec<Formula>) -> Result<Self, SchemeError> {
        Self::new(name, arity, alloc::vec![set], Some(usize::MAX))
    }

    /// Family whose n-th member is `gen(n)`, for n = 1..=bound. The value
    /// sequence of such a family is driven by a recurrence in n, so it has
    /// seen every value once `bound` reaches the carrier size.
    pub fn recurrent(
        name: &str,
        arity: FamilyArity,
        bound: usize,
        gen: impl Fn(u32) -> Formula,
    ) -> Result<Self, SchemeError> {
        if bound == 0 {
            return Err(SchemeError::ZeroBound);
        }
        let members = (1..=bound).map(|n| alloc::vec![gen(n as u32)]).collect();
        Self::new(name, arity, members, Some(bound))
    }

    /// Look up a built-in family, e.g. `flew-il`, `luk-il:k=2`, `box-pcp:n=1`.
    pub fn builtin(spec: &str, bound: usize) -> Result<Self, SchemeError> {
        use FamilyArity::{Binary, Unary};
        let (base, param) = split_param(spec)?;
        let p = || Formula::var(P);
        let q = || Formula::var(Q);
        let need = |key: &str| -> Result<u32, SchemeError> {
            match &param {
                Some((k, v)) if k == key => Ok(*v),
                _ => Err(SchemeError::BadParameter(spec.into())),
            }
        };
        let no_param = || -> Result<(), SchemeError> {
            match param {
                None => Ok(()),
                Some(_) => Err(SchemeError::BadParameter(spec.into())),
            }
        };
        let fam = match base {
            "classical-il" => {
                no_param()?;
                Self::global(spec, Unary, alloc::vec![Formula::negb(p())])?
            }
            "flew-il" => {
                no_param()?;
                Self::recurrent(spec, Unary, bound, |n| Formula::negb(Formula::power(p(), n)))?
            }
            "fle-il" => {
                no_param()?;
                Self::recurrent(spec, Unary, bound, |n| {
                    Formula::negb(Formula::power(Formula::unit_meet(p()), n))
                })?
            }
            "ik-il" => {
                no_param()?;
                Self::recurrent(spec, Unary, bound, |n| Formula::negb(Formula::box_n(n, p())))?
            }
            "s4-il" => {
                no_param()?;
                Self::global(spec, Unary, alloc::vec![Formula::negb(Formula::boxed(p()))])?
            }
            "box-il" => {
                let n = need("n")?;
                Self::global(spec, Unary, alloc::vec![Formula::negb(Formula::box_n(n, p()))])?
            }
            "luk-il" => {
                let k = need("k")?;
                Self::global(spec, Unary, alloc::vec![Formula::negb(Formula::power(p(), k))])?
            }
            "imp-ddt" => {
                no_param()?;
                Self::global(spec, Binary, alloc::vec![Formula::imp(p(), q())])?
            }
            "flew-ddt" => {
                no_param()?;
                Self::recurrent(spec, Binary, bound, |n| Formula::imp(Formula::power(p(), n), q()))?
            }
            "fle-ddt" => {
                no_param()?;
                Self::recurrent(spec, Binary, bound, |n| {
                    Formula::imp(Formula::power(Formula::unit_meet(p()), n), q())
                })?
            }
            "ik-ddt" => {
                no_param()?;
                Self::recurrent(spec, Binary, bound, |n| Formula::imp(Formula::box_n(n, p()), q()))?
            }
            "s4-ddt" => {
                no_param()?;
                Self::global(spec, Binary, alloc::vec![Formula::imp(Formula::boxed(p()), q())])?
            }
            "box-ddt" => {
                let n = need("n")?;
                Self::global(spec, Binary, alloc::vec![Formula::imp(Formula::box_n(n, p()), q())])?
            }
            "join-pcp" => {
                no_param()?;
                Self::global(spec, Binary, alloc::vec![Formula::or(p(), q())])?
            }
            "fle-pcp" => {
                no_param()?;
                let f = Formula::or(Formula::unit_meet(p()), Formula::unit_meet(q()));
                Self::global(spec, Binary, alloc::vec![f])?
            }
            "s4-pcp" => {
                no_param()?;
                let f = Formula::or(Formula::boxed(p()), Formula::boxed(q()));
                Self::global(spec, Binary, alloc::vec![f])?
            }
            "box-pcp" => {
                let n = need("n")?;
                let f = Formula::or(Formula::box_n(n, p()), Formula::box_n(n, q()));
                Self::global(spec, Binary, alloc::vec![f])?
            }
            _ => return Err(SchemeError::UnknownFamily(spec.into())),
        };
        Ok(fam)
    }

    /// Names accepted by [`SchemeFamily::builtin`].
    pub fn builtin_names() -> &'static [&'static str] {
        &[
            "classical-il", "flew-il", "fle-il", "ik-il", "s4-il", "box-il:n=N", "luk-il:k=K",
            "imp-ddt", "flew-ddt", "fle-ddt", "ik-ddt", "s4-ddt", "box-ddt:n=N", "join-pcp",
            "fle-pcp", "s4-pcp", "box-pcp:n=N",
        ]
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> FamilyArity {
        self.arity
    }

    /// Number of members.
    pub fn bound(&self) -> usize {
        self.members.len()
    }

    /// Distinct formulas across all members.
    pub fn pool(&self) -> &[Formula] {
        &self.pool
    }

    /// Member sets as indices into [`SchemeFamily::pool`].
    pub fn member_ids(&self) -> &[Vec<usize>] {
        &self.members
    }

    pub fn exact_for_size(&self) -> Option<usize> {
        self.exact_for_size
    }

    /// Whether a search through the members is complete on a carrier of
    /// the given size.
    pub fn is_exact_for(&self, size: usize) -> bool {
        self.exact_for_size.is_some_and(|s| size <= s)
    }

    pub fn is_global(&self) -> bool {
        self.exact_for_size == Some(usize::MAX)
    }

    /// Member `n` (1-based).
    pub fn member(&self, n: usize) -> Result<Vec<&Formula>, SchemeError> {
        if n == 0 || n > self.members.len() {
            return Err(SchemeError::IndexOutOfBound { index: n, bound: self.members.len() });
        }
        Ok(self.members[n - 1].iter().map(|&i| &self.pool[i]).collect())
    }

    /// Member `n` with `arg` substituted for `p`.
    pub fn expand(&self, n: usize, arg: &Formula) -> Result<Vec<Formula>, SchemeError> {
        if self.arity != FamilyArity::Unary {
            return Err(SchemeError::ArityMismatch { family: self.name.clone() });
        }
        Ok(self.member(n)?.into_iter().map(|f| f.substitute_var(P, arg)).collect())
    }

    /// Member `n` with `a` for `p` and `b` for `q`.
    pub fn expand2(&self, n: usize, a: &Formula, b: &Formula) -> Result<Vec<Formula>, SchemeError> {
        if self.arity != FamilyArity::Binary {
            return Err(SchemeError::ArityMismatch { family: self.name.clone() });
        }
        let mut map = BTreeMap::new();
        map.insert(P.to_string(), a.clone());
        map.insert(Q.to_string(), b.clone());
        Ok(self.member(n)?.into_iter().map(|f| f.substitute(&map)).collect())
    }

    /// Deduction family obtained from an inconsistency family: for every
    /// choice function `f` on indices, the member
    /// `{ I_f(n)(p . psi) : n <= N, psi in I_n(q) }`.
    /// Members are ordered by `f` read as a base-N numeral, first index
    /// most significant.
    pub fn ddt_from_cil(psi: &SchemeFamily, comb: Combinator) -> Result<SchemeFamily, SchemeError> {
        if psi.arity != FamilyArity::Unary {
            return Err(SchemeError::ArityMismatch { family: psi.name.clone() });
        }
        let n = psi.bound();
        let count = (n as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if count > MAX_DERIVED_MEMBERS {
            return Err(SchemeError::TooLarge { members: count });
        }
        let q = Formula::var(Q);
        let p = Formula::var(P);
        // cells[i][j]: formulas of member j+1 applied to p . psi for psi in I_{i+1}(q)
        let mut cells: Vec<Vec<Vec<Formula>>> = Vec::with_capacity(n);
        for i in 1..=n {
            let inner = psi.expand(i, &q)?;
            let mut row = Vec::with_capacity(n);
            for j in 1..=n {
                let mut set = Vec::new();
                for chi in &inner {
                    set.extend(psi.expand(j, &comb.apply(p.clone(), chi.clone()))?);
                }
                row.push(set);
            }
            cells.push(row);
        }
        let mut members = Vec::with_capacity(count as usize);
        let mut choice = alloc::vec![0usize; n];
        loop {
            let mut set = Vec::new();
            for (i, &j) in choice.iter().enumerate() {
                set.extend(cells[i][j].iter().cloned());
            }
            members.push(set);
            let mut k = n;
            loop {
                if k == 0 {
                    let name = format!("ddt-from({})", psi.name);
                    return Self::new(&name, FamilyArity::Binary, members, psi.exact_for_size);
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
}

fn split_param(spec: &str) -> Result<(&str, Option<(String, u32)>), SchemeError> {
    match spec.split_once(':') {
        None => Ok((spec, None)),
        Some((base, kv)) => {
            let (k, v) = kv.split_once('=').ok_or_else(|| SchemeError::BadParameter(spec.into()))?;
            let v = v.parse().map_err(|_| SchemeError::BadParameter(spec.into()))?;
            Ok((base, Some((k.into(), v))))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LemForm {
    /// `(p => q) => ((~p => q) => q)`
    Ddt,
    /// `p |_| ~p`
    Pcp,
    /// The cyclicity equation of the modal classes.
    Cyclic,
}

/// Class parameters that fix the connectives `=>`, `~` and `|_|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LemParams {
    /// `x => y = x^n -> y`, `~x = ~x^n`, `x |_| y = x \/ y`.
    Flew { n: u32 },
    /// `x => y = (1 /\ x)^n -> y`, `~x = ~(1 /\ x)^n`, `|_|` of the `1 /\ _` parts.
    Flen { n: u32 },
    /// `x => y = []_n x -> y`, `~x = ~[]_n x`, `x |_| y = []_n x \/ []_n y`.
    Ikn4 { n: u32 },
    /// As `Ikn4`, over Boolean modal algebras.
    Kn4 { n: u32 },
}

impl LemParams {
    pub fn n(self) -> u32 {
        match self {
            LemParams::Flew { n } | LemParams::Flen { n } | LemParams::Ikn4 { n } | LemParams::Kn4 { n } => n,
        }
    }

    pub fn with_n(self, n: u32) -> LemParams {
        match self {
            LemParams::Flew { .. } => LemParams::Flew { n },
            LemParams::Flen { .. } => LemParams::Flen { n },
            LemParams::Ikn4 { .. } => LemParams::Ikn4 { n },
            LemParams::Kn4 { .. } => LemParams::Kn4 { n },
        }
    }

    fn imp(self, x: Formula, y: Formula) -> Formula {
        Formula::imp(self.guard(x), y)
    }

    fn neg(self, x: Formula) -> Formula {
        Formula::negb(self.guard(x))
    }

    fn join(self, x: Formula, y: Formula) -> Formula {
        match self {
            LemParams::Flew { .. } => Formula::or(x, y),
            LemParams::Flen { .. } => Formula::or(Formula::unit_meet(x), Formula::unit_meet(y)),
            LemParams::Ikn4 { n } | LemParams::Kn4 { n } => {
                Formula::or(Formula::box_n(n, x), Formula::box_n(n, y))
            }
        }
    }

    fn guard(self, x: Formula) -> Formula {
        match self {
            LemParams::Flew { n } => Formula::power(x, n),
            LemParams::Flen { n } => Formula::power(Formula::unit_meet(x), n),
            LemParams::Ikn4 { n } | LemParams::Kn4 { n } => Formula::box_n(n, x),
        }
    }
}

/// The closed-form excluded-middle axiom for the given class parameters.
pub fn lem_axiom(form: LemForm, params: LemParams) -> Result<Formula, SchemeError> {
    let p = Formula::var(P);
    let q = Formula::var(Q);
    match form {
        LemForm::Pcp => Ok(params.join(p.clone(), params.neg(p))),
        LemForm::Ddt => {
            let inner = params.imp(params.imp(params.neg(p.clone()), q.clone()), q.clone());
            Ok(params.imp(params.imp(p, q), inner))
        }
        LemForm::Cyclic => match params {
            LemParams::Ikn4 { n } => Ok(Formula::or(
                p.clone(),
                Formula::box_n(1, Formula::negb(Formula::box_n(n, p))),
            )),
            LemParams::Kn4 { n } => {
                Ok(Formula::imp(p.clone(), Formula::boxed(Formula::diamond_n(n, p))))
            }
            _ => Err(SchemeError::NoInstantiation { form, params }),
        },
    }
}
