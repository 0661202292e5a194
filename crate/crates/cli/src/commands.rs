use std::ops::RangeInclusive;

use alg_core::algebra::FiniteAlgebra;
use alg_core::classes::{AlgebraClass, ClassError, Shape};
use alg_core::congruence::{all_congruences, is_semisimple};
use alg_core::deduction::{consequence, Countermodel, FilterLattice, MatrixFamily, Translation};
use alg_core::formula::{parse, Formula, LemForm, LemParams, SchemeFamily};
use alg_core::glivenko::{
    glivenko_check, local_glivenko_check, lukinfty_ddt_countermodel, random_formula, GlivenkoPair, GlivenkoReport,
    LukCertificate, Outcome,
};
use alg_core::principles::{
    antiadmissible, check_dual_il, check_ddt, check_il, check_lem_axiom, check_pcp, check_rule, check_simple_il,
    semisimple_vs_lem, Principle, PrincipleWitness,
};
use alg_core::search::{catalog_up_to, enumerate_class};
use alg_core::verdict::Verdict;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::catalog::{canonical_hash, save_catalog};
use crate::error::CliError;
use crate::format::write_algebras;
use crate::report::{valuation_text, Record, Status};
use crate::source::{self, Loaded};
use crate::{par_map, Command, IlVariant, LemFormArg, RunConfig};

type Out = Result<Vec<Record>, CliError>;

pub(crate) fn dispatch(cfg: &RunConfig, cmd: Command) -> Out {
    match cmd {
        Command::Check { file, class } => check(cfg, &file, &class),
        Command::Congruences { file } => congruences(cfg, &file),
        Command::Semisimple { file } => semisimple(cfg, &file),
        Command::Filters { file } => filters(cfg, &file),
        Command::Consequence { gamma, phi } => matrix_consequence(cfg, "consequence", &gamma, &phi),
        Command::IlCheck { file, family, bound, variant } => {
            let p = match variant {
                IlVariant::Il => Principle::Il,
                IlVariant::Dual => Principle::DualIl,
                IlVariant::Simple => Principle::SimpleIl,
            };
            principle(cfg, &file, p, &family, &bound)
        }
        Command::DdtCheck { file, family, bound } => principle(cfg, &file, Principle::Ddt, &family, &bound),
        Command::PcpCheck { file, family, bound } => principle(cfg, &file, Principle::Pcp, &family, &bound),
        Command::LemCheck { file, class, n, form } => lem_check(cfg, &file, &class, &n, form),
        Command::CrossCheck { class, n, form, max } => cross_check(cfg, &class, n.as_deref(), form, max),
        Command::Glivenko { pair, weak, strong, scheme, max, phi, gamma, sample, local, family, bound } => {
            if local {
                local_glivenko(cfg, weak.as_deref(), &gamma, phi.as_deref(), &family, bound)
            } else {
                let pair = glivenko_pair(pair.as_deref(), weak.as_deref(), strong.as_deref(), scheme.as_deref(), max)?;
                match (phi, sample) {
                    (Some(phi), None) => glivenko_one(&pair, &gamma, &phi),
                    (None, Some(k)) => glivenko_sample(cfg, &pair, &gamma, k),
                    _ => Err(CliError::usage("give exactly one of --phi and --sample")),
                }
            }
        }
        Command::LukCounterexample { n } => luk_counterexample(n),
        Command::Enumerate { class, size, exact, out } => enumerate(&class, size, exact, out.as_deref()),
        Command::RuleCheck { gamma, phi } => matrix_consequence(cfg, "rule", &gamma, &phi),
        Command::Antiadmissible { gamma, phi } => anti(cfg, &gamma, &phi),
    }
}

fn load(spec: &str) -> Result<Vec<FiniteAlgebra>, CliError> {
    Ok(source::load(spec)?.algebras)
}

fn catalog_source(cfg: &RunConfig) -> Result<&str, CliError> {
    cfg.catalog
        .as_deref()
        .ok_or_else(|| CliError::usage(format!("no catalog: pass --catalog or set {}", crate::CATALOG_ENV)))
}

fn formula(text: &str) -> Result<Formula, CliError> {
    Ok(parse(text)?)
}

/// Premises separated by `;`; an empty string is the empty list.
fn formulas(text: &str) -> Result<Vec<Formula>, CliError> {
    text.split(';').filter(|s| !s.trim().is_empty()).map(formula).collect()
}

fn prefix(algs: &[FiniteAlgebra], a: &FiniteAlgebra) -> String {
    if algs.len() > 1 {
        format!("{}: ", a.name())
    } else {
        String::new()
    }
}

fn check(cfg: &RunConfig, file: &str, class: &str) -> Out {
    let class = AlgebraClass::parse(class)?;
    let algs = load(file)?;
    let cname = class.name();
    let reports = par_map(cfg.jobs, &algs, |a| class.check_membership(a));
    let mut out = Vec::new();
    for (a, r) in algs.iter().zip(reports) {
        let name = a.name();
        match r {
            Err(ClassError::SignatureMismatch { missing }) => out.push(
                Record::new(Status::Fails, format!("{name}/signature"))
                    .field("missing", missing)
                    .line(format!("{name}: not in {cname}: no operation `{missing}`")),
            ),
            Err(e) => return Err(e.into()),
            Ok(r) if r.verdict => out.push(
                Record::new(Status::Holds, format!("{name}/{cname}")).line(format!("{name}: member of {cname}")),
            ),
            Ok(r) => {
                for f in r.failures {
                    out.push(
                        Record::new(Status::Fails, format!("{name}/{}", f.label))
                            .fields(f.valuation.clone())
                            .line(format!("{name}: law {} fails at {}", f.label, valuation_text(&f.valuation))),
                    );
                }
            }
        }
    }
    Ok(out)
}

fn congruences(cfg: &RunConfig, file: &str) -> Out {
    let algs = load(file)?;
    let mut out = Vec::new();
    for a in &algs {
        let lat = all_congruences(a, cfg.cap)?;
        let coatoms = lat.coatoms();
        let mut head = Record::new(Status::Info, format!("{}/congruences", a.name()))
            .field("count", lat.len())
            .line(format!("{}: {} congruences", a.name(), lat.len()));
        for (i, c) in lat.congruences().iter().enumerate() {
            let mut mark = Vec::new();
            if i == lat.identity() {
                mark.push("identity");
            }
            if i == lat.total() {
                mark.push("total");
            }
            if coatoms.contains(&i) {
                mark.push("maximal");
            }
            let mark = if mark.is_empty() { String::new() } else { format!(" ({})", mark.join(", ")) };
            head = head.line(format!("  [{i}] {c}{mark}"));
        }
        out.push(head);
        for (i, c) in lat.congruences().iter().enumerate() {
            out.push(
                Record::new(Status::Info, format!("{}/congruence", a.name()))
                    .field("index", i)
                    .field("blocks", c)
                    .field("maximal", coatoms.contains(&i)),
            );
        }
    }
    Ok(out)
}

fn semisimple(cfg: &RunConfig, file: &str) -> Out {
    let algs = load(file)?;
    let reports = par_map(cfg.jobs, &algs, |a| is_semisimple(a, cfg.cap));
    let mut out = Vec::new();
    for (a, r) in algs.iter().zip(reports) {
        let r = r?;
        let pre = prefix(&algs, a);
        let label = format!("{}/semisimple", a.name());
        if r.semisimple {
            let how = if r.simple {
                "simple".to_string()
            } else if a.size() == 1 {
                "trivial".to_string()
            } else {
                format!("subdirect product of {} simple quotients", r.coatoms.len())
            };
            out.push(
                Record::new(Status::Holds, label)
                    .field("simple", r.simple)
                    .field("maximal", r.coatoms.len())
                    .line(format!("{pre}semisimple: true ({how})")),
            );
        } else {
            let n = a.size();
            let pair = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).find(|&(x, y)| r.embedding[x] == r.embedding[y]);
            let mut rec = Record::new(Status::Fails, label).field("maximal", r.coatoms.len());
            let mut text = format!("{pre}semisimple: false");
            if let Some((x, y)) = pair {
                rec = rec.field("x", x).field("y", y);
                text.push_str(&format!(" ({x} and {y} are identified by every maximal congruence)"));
            }
            out.push(rec.line(text));
        }
    }
    Ok(out)
}

fn filters(cfg: &RunConfig, file: &str) -> Out {
    let algs = load(file)?;
    let mut out = Vec::new();
    for a in &algs {
        let t = Translation::for_algebra(a);
        let fl = FilterLattice::with_cap(a, t, cfg.cap)?;
        let mut head = Record::new(Status::Info, format!("{}/filters", a.name()))
            .field("count", fl.len())
            .field("translation", t.name())
            .line(format!("{}: {} deductive filters ({})", a.name(), fl.len(), t.name()));
        for i in 0..fl.len() {
            let mark = if fl.is_trivial(i) { " (trivial)" } else { "" };
            head = head.line(format!("  [{i}] {}{mark}", fl.set(i)));
        }
        out.push(head);
        for i in 0..fl.len() {
            out.push(
                Record::new(Status::Info, format!("{}/filter", a.name()))
                    .field("index", i)
                    .field("set", fl.set(i))
                    .field("trivial", fl.is_trivial(i)),
            );
        }
    }
    Ok(out)
}

fn countermodel_record(rec: Record, m: &MatrixFamily, w: &Countermodel) -> Record {
    let mx = &m.matrices()[w.matrix];
    rec.field("matrix", w.matrix)
        .field("algebra", mx.algebra.name())
        .field("filter", &mx.filter)
        .fields(w.valuation.clone())
        .line(format!(
            "  countermodel: {} designating {}, {}",
            mx.algebra.name(),
            mx.filter,
            valuation_text(&w.valuation)
        ))
}

fn matrix_consequence(cfg: &RunConfig, label: &str, gamma: &str, phi: &str) -> Out {
    let gamma = formulas(gamma)?;
    let phi = formula(phi)?;
    let algs = load(catalog_source(cfg)?)?;
    let m = cfg.designation.family(&algs, cfg.cap)?;
    let v = if label == "rule" { check_rule(&m, &gamma, &phi)? } else { consequence(&m, &gamma, &phi)? };
    let mut rec = Record::new(Status::of(&v), label)
        .field("matrices", m.len())
        .line(format!("{label} over {} matrices: {}", m.len(), v.label()));
    if let Verdict::Fails(w) = &v {
        rec = countermodel_record(rec, &m, w);
    }
    Ok(vec![rec])
}

fn parse_bound(text: &str, size: usize) -> Result<usize, CliError> {
    if text == "auto" {
        return Ok(size.max(1));
    }
    text.parse::<usize>()
        .ok()
        .filter(|&b| b >= 1)
        .ok_or_else(|| CliError::usage(format!("bound `{text}`: use a positive number or auto")))
}

pub fn witness_fields(rec: Record, w: &PrincipleWitness) -> Record {
    let mut rec = rec.field("filter", &w.filter).field("a", w.elements[0]);
    if let Some(&b) = w.elements.get(1) {
        rec = rec.field("b", b);
    }
    if let Some(i) = w.index {
        rec = rec.field("index", i);
    }
    rec.field("kind", w.kind.name())
}

fn principle(cfg: &RunConfig, file: &str, p: Principle, family: &str, bound: &str) -> Out {
    let algs = load(file)?;
    let results = par_map(cfg.jobs, &algs, |a| -> Result<(usize, Verdict<PrincipleWitness>), CliError> {
        let b = parse_bound(bound, a.size())?;
        let fam = SchemeFamily::builtin(family, b)?;
        let fl = FilterLattice::with_cap(a, Translation::for_algebra(a), cfg.cap)?;
        let v = match p {
            Principle::Il => check_il(&fl, &fam)?,
            Principle::DualIl => check_dual_il(&fl, &fam)?,
            Principle::SimpleIl => check_simple_il(&fl, &fam)?,
            Principle::Ddt => check_ddt(&fl, &fam)?,
            Principle::Pcp => check_pcp(&fl, &fam)?,
        };
        Ok((b, v))
    });
    let mut out = Vec::new();
    for (a, r) in algs.iter().zip(results) {
        let (b, v) = r?;
        let head = format!("{}: {} [{family}, bound {b}]", a.name(), p.name());
        let rec = Record::new(Status::of(&v), format!("{}/{}/{family}", a.name(), p.name())).field("bound", b);
        let rec = match &v {
            Verdict::Holds => rec.line(format!("{head}: HOLDS")),
            Verdict::HoldsUpToBound => rec.line(format!(
                "{head}: HOLDS-UP-TO-BOUND (no failure found; the bound is not exact for {} elements)",
                a.size()
            )),
            Verdict::Fails(w) => {
                let elems: Vec<String> = w.elements.iter().map(|x| x.to_string()).collect();
                let member = w.index.map(|i| format!(", member {i}")).unwrap_or_default();
                witness_fields(rec, w).line(format!(
                    "{head}: FAILS at filter {}, elements {} ({}{member})",
                    w.filter,
                    elems.join(", "),
                    w.kind.name()
                ))
            }
        };
        out.push(rec);
    }
    Ok(out)
}

pub fn parse_range(text: &str) -> Result<RangeInclusive<u32>, CliError> {
    let bad = || CliError::usage(format!("range `{text}`: use N, A..B or A..=B with 1 ≤ A ≤ B"));
    let num = |s: &str| s.trim().parse::<u32>().map_err(|_| bad());
    let (lo, hi) = if let Some((a, b)) = text.split_once("..=") {
        (num(a)?, num(b)?)
    } else if let Some((a, b)) = text.split_once("..") {
        (num(a)?, num(b)?)
    } else {
        let n = num(text)?;
        (n, n)
    };
    if lo == 0 || lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

pub fn lem_params(class: &AlgebraClass) -> Result<LemParams, CliError> {
    match class.kind().shape() {
        Shape::Residuated { integral: true, .. } => Ok(LemParams::Flew { n: 1 }),
        Shape::Residuated { integral: false, .. } => Ok(LemParams::Flen { n: 1 }),
        Shape::BooleanModal => Ok(LemParams::Kn4 { n: 1 }),
        Shape::HeytingModal => Ok(LemParams::Ikn4 { n: 1 }),
        Shape::Lattice => Err(CliError::usage(format!("class `{}` has no negation", class.name()))),
    }
}

pub fn lem_form(f: LemFormArg) -> LemForm {
    match f {
        LemFormArg::Pcp => LemForm::Pcp,
        LemFormArg::Ddt => LemForm::Ddt,
        LemFormArg::Cyclic => LemForm::Cyclic,
    }
}

fn lem_text(form: LemForm, params: LemParams) -> String {
    let modal = matches!(params, LemParams::Ikn4 { .. } | LemParams::Kn4 { .. });
    let rel = if modal { "= 1" } else { "≥ 1" };
    match (form, params) {
        (LemForm::Pcp, LemParams::Flew { .. }) => format!("x ∨ ¬xⁿ {rel}"),
        (LemForm::Pcp, LemParams::Flen { .. }) => format!("(1 ∧ x) ∨ ¬(1 ∧ x)ⁿ {rel}"),
        (LemForm::Pcp, _) => format!("□ₙx ∨ □ₙ¬□ₙx {rel}"),
        (LemForm::Ddt, _) => format!("(x ⇒ y) ⇒ ((¬x ⇒ y) ⇒ y) {rel}"),
        (LemForm::Cyclic, _) => format!("x ∨ □₁¬□ₙx {rel}"),
    }
}

fn lem_check(cfg: &RunConfig, file: &str, class: &str, n: &str, form: LemFormArg) -> Out {
    let class = AlgebraClass::parse(class)?;
    let params = lem_params(&class)?;
    let form = lem_form(form);
    let range = parse_range(n)?;
    let algs = load(file)?;
    let text = lem_text(form, params);
    let results = par_map(cfg.jobs, &algs, |a| -> Result<_, CliError> {
        let mut last = None;
        for k in range.clone() {
            let r = check_lem_axiom(a, form, params.with_n(k))?;
            if r.valid {
                return Ok((Some(k), r));
            }
            last = Some(r);
        }
        Ok((None, last.expect("range is non-empty")))
    });
    let (lo, hi) = (*range.start(), *range.end());
    let mut out = Vec::new();
    for (a, r) in algs.iter().zip(results) {
        let (found, report) = r?;
        let pre = prefix(&algs, a);
        let label = format!("{}/lem-{}", a.name(), format!("{form:?}").to_lowercase());
        match found {
            Some(k) => out.push(
                Record::new(Status::Holds, label)
                    .field("n", k)
                    .line(format!("{pre}n = {k} validates {text}: {}", report.formula)),
            ),
            None => {
                let w = report.witness.unwrap_or_default();
                let scope = if lo == 1 { format!("n ≤ {hi}") } else { format!("n in {lo}..{hi}") };
                out.push(
                    Record::new(Status::Fails, label)
                        .field("n", hi)
                        .fields(w.clone())
                        .line(format!("{pre}no {scope} validates {text}"))
                        .line(format!("  witness at n = {hi}: {} ({})", valuation_text(&w), report.formula)),
                );
            }
        }
    }
    Ok(out)
}

fn cross_check(cfg: &RunConfig, class: &str, n: Option<&str>, form: LemFormArg, max: usize) -> Out {
    let class = AlgebraClass::parse(class)?;
    let params = lem_params(&class)?;
    let form = lem_form(form);
    let algs = match &cfg.catalog {
        Some(s) => load(s)?,
        None => catalog_up_to(&class, max)?.into_entries(),
    };
    if let Some(a) = algs.iter().find(|a| !class.contains(a)) {
        return Err(CliError::usage(format!("catalog entry `{}` is not in {}", a.name(), class.name())));
    }
    let biggest = algs.iter().map(|a| a.size()).max().unwrap_or(1).max(1) as u32;
    let range = match n {
        Some(t) => parse_range(t)?,
        None => 1..=biggest,
    };
    let rows = par_map(cfg.jobs, &algs, |a| semisimple_vs_lem(core::slice::from_ref(a), form, params, range.clone(), cfg.cap));
    let text = lem_text(form, params);
    let mut out = Vec::new();
    let mut bad = 0;
    for r in rows {
        let row = r?.remove(0);
        let lem = row.lem_n.map(|k| k.to_string()).unwrap_or_else(|| "none".into());
        let status = if row.agrees() { Status::Holds } else { Status::Fails };
        if !row.agrees() {
            bad += 1;
        }
        out.push(
            Record::new(status, format!("{}/cross-check", row.name))
                .field("size", row.size)
                .field("semisimple", row.semisimple)
                .field("lem-n", &lem)
                .line(format!(
                    "{:<20} size {:>2}  semisimple {:<5}  least n {:<4}  {}",
                    row.name,
                    row.size,
                    row.semisimple,
                    lem,
                    if row.agrees() { "agree" } else { "DISAGREE" }
                )),
        );
    }
    out.push(
        Record::new(Status::Info, format!("cross-check/{}", class.name()))
            .field("algebras", algs.len())
            .field("disagreements", bad)
            .line(format!(
                "{} algebras in {}, axiom {text} for n in {}..{}: {bad} disagreements",
                algs.len(),
                class.name(),
                range.start(),
                range.end()
            )),
    );
    Ok(out)
}

fn glivenko_pair(
    pair: Option<&str>,
    weak: Option<&str>,
    strong: Option<&str>,
    scheme: Option<&str>,
    max: usize,
) -> Result<GlivenkoPair, CliError> {
    match (pair, weak, strong, scheme) {
        (Some(name), None, None, None) => Ok(GlivenkoPair::shipped(name, max)?),
        (None, Some(w), Some(s), Some(sc)) => {
            let weak: Loaded = source::load(w)?;
            let strong: Loaded = source::load(s)?;
            let name = format!("{w}/{s}");
            Ok(GlivenkoPair::new(
                &name,
                MatrixFamily::least(&weak.algebras)?,
                MatrixFamily::least(&strong.algebras)?,
                formula(sc)?,
                strong.complete,
            )?)
        }
        _ => Err(CliError::usage("give either --pair or all of --weak, --strong and --scheme")),
    }
}

fn side_countermodel(rec: Record, side: &str, m: &MatrixFamily, v: &Verdict<Countermodel>) -> Record {
    match v {
        Verdict::Fails(w) => {
            let mx = &m.matrices()[w.matrix];
            rec.line(format!("  {side} countermodel: {}, {}", mx.algebra.name(), valuation_text(&w.valuation)))
        }
        _ => rec,
    }
}

fn glivenko_record(r: &GlivenkoReport, label: &str) -> Record {
    let status = match r.outcome {
        Outcome::Match => Status::Holds,
        Outcome::Mismatch => Status::Fails,
    };
    let mut rec = Record::new(status, label)
        .field("strong", r.strong.label())
        .field("weak", r.weak_label())
        .field("exact-mismatch", r.exact_mismatch);
    if let (Outcome::Mismatch, Verdict::Fails(w)) = (r.outcome, &r.weak) {
        rec = rec.field("side", "weak").field("matrix", w.matrix).fields(w.valuation.clone());
    } else if let (Outcome::Mismatch, Verdict::Fails(w)) = (r.outcome, &r.strong) {
        rec = rec.field("side", "strong").field("matrix", w.matrix).fields(w.valuation.clone());
    }
    rec
}

fn glivenko_one(pair: &GlivenkoPair, gamma: &str, phi: &str) -> Out {
    let gamma = formulas(gamma)?;
    let phi = formula(phi)?;
    let r = glivenko_check(pair, &gamma, &phi)?;
    let rec = glivenko_record(&r, &format!("glivenko/{}", pair.name))
        .line(format!("pair: {}", pair.name))
        .line(format!("translated: {}", r.translated))
        .line(format!("strong: {}", r.strong.label()))
        .line(format!("weak: {}", r.weak_label()));
    let rec = side_countermodel(rec, "strong", &pair.strong, &r.strong);
    let rec = side_countermodel(rec, "weak", &pair.weak, &r.weak);
    Ok(vec![rec.line(r.outcome.label())])
}

/// Random formulas used by `glivenko --sample`, reproducible from the seed.
pub fn sample_formulas(seed: u64, count: usize) -> Vec<Formula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_formula(&mut rng, 8, &["p", "q"])).collect()
}

fn glivenko_sample(cfg: &RunConfig, pair: &GlivenkoPair, gamma: &str, count: usize) -> Out {
    let gamma = formulas(gamma)?;
    let phis = sample_formulas(cfg.seed, count);
    let reports = par_map(cfg.jobs, &phis, |phi| glivenko_check(pair, &gamma, phi));
    let mut out = vec![Record::new(Status::Info, "seed").field("value", cfg.seed).line(format!("seed: {}", cfg.seed))];
    let mut mismatches = 0;
    let mut exact = 0;
    for (i, (phi, r)) in phis.iter().zip(reports).enumerate() {
        let r = r?;
        if r.exact_mismatch {
            exact += 1;
        }
        if r.outcome == Outcome::Mismatch {
            mismatches += 1;
            out.push(
                glivenko_record(&r, &format!("glivenko/{}/sample", pair.name))
                    .field("sample", i)
                    .line(format!("MISMATCH on sample {i}: {phi} (strong {}, weak {})", r.strong.label(), r.weak_label())),
            );
        }
    }
    let status = if mismatches == 0 { Status::Holds } else { Status::Fails };
    out.push(
        Record::new(status, format!("glivenko/{}/summary", pair.name))
            .field("samples", count)
            .field("mismatches", mismatches)
            .field("exact-mismatches", exact)
            .line(format!("{count} sampled formulas, {mismatches} mismatches ({exact} exact)")),
    );
    Ok(out)
}

fn local_glivenko(cfg: &RunConfig, weak: Option<&str>, gamma: &str, phi: Option<&str>, family: &str, bound: usize) -> Out {
    let src = weak.or(cfg.catalog.as_deref()).ok_or_else(|| CliError::usage("local check needs --weak or a catalog"))?;
    let phi = formula(phi.ok_or_else(|| CliError::usage("local check needs --phi"))?)?;
    let gamma = formulas(gamma)?;
    let algs = load(src)?;
    let fam = SchemeFamily::builtin(family, bound)?;
    let rows = local_glivenko_check(&algs, &gamma, &phi, &fam, bound)?;
    let mut out = vec![Record::new(Status::Info, "local-glivenko")
        .field("family", family)
        .field("bound", bound)
        .line(format!("local Glivenko over {src} with {family}, indices up to {bound}"))];
    for r in rows {
        let (status, k) = match r.k {
            Some(k) => (Status::Holds, k.to_string()),
            None => (Status::Bounded, "NONE-UP-TO-BOUND".to_string()),
        };
        out.push(Record::new(status, "local-glivenko/row").field("n", r.n).field("k", &k).line(format!("n = {}: k = {k}", r.n)));
    }
    Ok(out)
}

fn luk_counterexample(n: u32) -> Out {
    if n == 0 {
        return Err(CliError::usage("--n must be at least 1"));
    }
    let c: LukCertificate = lukinfty_ddt_countermodel(n)?;
    let v = &c.valuation;
    let status = if c.passes() { Status::Holds } else { Status::Fails };
    let mut rec = Record::new(status, format!("luk-counterexample/n={n}"))
        .field("epsilon", &v.epsilon)
        .field("p", &v.p);
    for (i, q) in v.q.iter().enumerate() {
        rec = rec.field(&format!("q{i}"), q);
    }
    rec = rec.field("conclusion", &c.conclusion);
    rec = rec.line(format!("n = {n}")).line(format!("epsilon = {}", v.epsilon)).line(format!("p = {}", v.p));
    for (i, q) in v.q.iter().enumerate() {
        rec = rec.line(format!("q{i} = {q}"));
    }
    for i in 0..=v.i_max {
        rec = rec.line(format!("premise {} = {}", LukCertificate::detachment_formula(i), c.detachment[i]));
    }
    for i in 0..=v.i_max {
        rec = rec.line(format!("premise {} = {}", LukCertificate::negation_formula(i), c.negation[i]));
    }
    rec = rec.line(format!("conclusion {} = {}", LukCertificate::conclusion_formula(n), c.conclusion));
    let verdict = if c.passes() { "certificate PASSES" } else { "certificate FAILS" };
    Ok(vec![rec.line(verdict)])
}

fn enumerate(class: &str, size: usize, exact: bool, out_dir: Option<&std::path::Path>) -> Out {
    let class = AlgebraClass::parse(class)?;
    let catalog = if exact { enumerate_class(&class, size)? } else { catalog_up_to(&class, size)? };
    let mut out = Vec::new();
    let sizes: Vec<usize> = if exact { vec![size] } else { (1..=size).collect() };
    for &n in &sizes {
        let k = catalog.of_size(n).count();
        out.push(
            Record::new(Status::Info, format!("enumerate/{}", class.name()))
                .field("size", n)
                .field("count", k)
                .line(format!("size {n}: {k}")),
        );
    }
    match out_dir {
        Some(dir) => {
            let files = save_catalog(dir, &catalog)?;
            out.push(
                Record::new(Status::Info, "enumerate/written")
                    .field("entries", files.len())
                    .field("dir", dir.display())
                    .line(format!("wrote {} algebras and a manifest to {}", files.len(), dir.display())),
            );
        }
        None => {
            let mut rec = Record::new(Status::Info, "enumerate/algebras").field("entries", catalog.len());
            for line in write_algebras(catalog.entries()).lines() {
                rec = rec.line(line);
            }
            out.push(rec);
            for a in catalog.iter() {
                out.push(
                    Record::new(Status::Info, format!("enumerate/entry/{}", a.name()))
                        .field("size", a.size())
                        .field("hash", canonical_hash(a)),
                );
            }
        }
    }
    Ok(out)
}

fn anti(cfg: &RunConfig, gamma: &str, phi: &str) -> Out {
    let gamma = formulas(gamma)?;
    let phi = formula(phi)?;
    let algs = load(catalog_source(cfg)?)?;
    let m = cfg.designation.family(&algs, cfg.cap)?;
    let v = antiadmissible(&m, &gamma, &phi, cfg.cap)?;
    let mut rec = Record::new(Status::of(&v), "antiadmissible").line(format!(
        "antiadmissible over {} algebras: {}",
        algs.len(),
        v.label()
    ));
    if let Verdict::Fails(w) = &v {
        let a = &m.matrices()[w.algebra].algebra;
        rec = rec
            .field("matrix", w.algebra)
            .field("algebra", a.name())
            .field("filter", &w.filter)
            .fields(w.valuation.clone())
            .line(format!(
                "  witness: {} with filter {}, {}: the conclusion is inconsistent with the filter, the premises are not",
                a.name(),
                w.filter,
                valuation_text(&w.valuation)
            ));
    }
    Ok(vec![rec])
}
