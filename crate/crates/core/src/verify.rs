//! The verification harness: named checks run in a fixed order against one
//! [`Sl2Context`], collected into a [`Report`] that serializes byte-stably.

use std::cell::OnceCell;
use std::collections::BTreeSet;
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::brauer::explicit::brauer_character_sym_explicit;
use crate::brauer::{
    brauer_character_sym, conj_brauer, regular_character, BrauerBasis, BrauerFn, G0Vector,
};
use crate::classfn::{
    additive_characters, gelfand_graev, gelfand_graev_from, induced_trivial, inner_product,
    permutation_character_p1, steinberg, trivial, ClassFn,
};
use crate::context::Sl2Context;
use crate::curve::{
    canonical_brauer, canonical_brauer_explicit, count_points, genus_report, smoothness_check,
    CanonicalModel, CurveSpec,
};
use crate::cyclotomic::CycNum;
use crate::deligne_lusztig::{dl_characters, lefschetz_c, DlCharacter};
use crate::fields::{prime_power, Fq2, Mat2};
use crate::group::{unipotent_element, ElementKind};

/// Values of `q` verified without `allow_large`.
pub const DEFAULT_SUPPORTED: [u32; 8] = [2, 3, 4, 5, 7, 8, 9, 11];
/// Values that additionally need `allow_large`.
pub const LARGE_SUPPORTED: [u32; 2] = [13, 16];

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("q = {q} is not supported{hint}")]
    UnsupportedQ { q: u32, hint: &'static str },
    #[error("unknown check name {0:?}")]
    UnknownCheckName(String),
    #[error("empty check selection")]
    EmptySelection,
    #[error("could not build tables: {0}")]
    Setup(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckName {
    FieldSanity,
    GroupSanity,
    CurveGeometry,
    CurveMaximality,
    DlSuite,
    Structural,
    CanonicalDecomposition,
    LefschetzIdentity,
    DlReduction,
    GelfandGraevIdentity,
    GelfandGraevReduction,
    RegularRepresentation,
    CanonicalSelfDuality,
    BrauerCrossCheck,
}

impl CheckName {
    /// Every check, in report order.
    pub const ALL: [CheckName; 14] = [
        CheckName::FieldSanity,
        CheckName::GroupSanity,
        CheckName::CurveGeometry,
        CheckName::CurveMaximality,
        CheckName::DlSuite,
        CheckName::Structural,
        CheckName::CanonicalDecomposition,
        CheckName::LefschetzIdentity,
        CheckName::DlReduction,
        CheckName::GelfandGraevIdentity,
        CheckName::GelfandGraevReduction,
        CheckName::RegularRepresentation,
        CheckName::CanonicalSelfDuality,
        CheckName::BrauerCrossCheck,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::FieldSanity => "field-sanity",
            CheckName::GroupSanity => "group-sanity",
            CheckName::CurveGeometry => "curve-geometry",
            CheckName::CurveMaximality => "curve-maximality",
            CheckName::DlSuite => "dl-suite",
            CheckName::Structural => "structural",
            CheckName::CanonicalDecomposition => "canonical-decomposition",
            CheckName::LefschetzIdentity => "lefschetz-identity",
            CheckName::DlReduction => "dl-reduction",
            CheckName::GelfandGraevIdentity => "gelfand-graev-identity",
            CheckName::GelfandGraevReduction => "gelfand-graev-reduction",
            CheckName::RegularRepresentation => "regular-representation",
            CheckName::CanonicalSelfDuality => "canonical-self-duality",
            CheckName::BrauerCrossCheck => "brauer-cross-check",
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = VerifyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| VerifyError::UnknownCheckName(s.to_string()))
    }
}

/// Parses a comma-separated list such as `"dl-suite,structural"`.
pub fn parse_selection(list: &str) -> Result<BTreeSet<CheckName>, VerifyError> {
    let names: BTreeSet<CheckName> = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(CheckName::from_str)
        .collect::<Result<_, _>>()?;
    if names.is_empty() {
        return Err(VerifyError::EmptySelection);
    }
    Ok(names)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub details: Value,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub q: u32,
    pub p: u32,
    pub checks: Vec<CheckResult>,
    pub overall: Status,
    pub version: String,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.overall == Status::Pass
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn check(&self, name: CheckName) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name.as_str())
    }

    /// Zeroes the timings so two runs compare byte for byte.
    pub fn stabilize(&mut self) {
        for c in &mut self.checks {
            c.elapsed_ms = 0;
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Permit `q ∈ {13, 16}`.
    pub allow_large: bool,
    /// Run the explicit-matrix Brauer cross-check instead of skipping it.
    pub cross_check: bool,
    pub stable: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format {other:?} (expected json or text)")),
        }
    }
}

pub fn check_supported(q: u32, allow_large: bool) -> Result<(), VerifyError> {
    if DEFAULT_SUPPORTED.contains(&q) {
        return Ok(());
    }
    if LARGE_SUPPORTED.contains(&q) {
        return if allow_large {
            Ok(())
        } else {
            Err(VerifyError::UnsupportedQ { q, hint: " without --allow-large" })
        };
    }
    let hint = if prime_power(q).is_none() { " (not a prime power)" } else { " (too large)" };
    Err(VerifyError::UnsupportedQ { q, hint })
}

/// Runs the selected checks (all of them for `None`) in the fixed order of
/// [`CheckName::ALL`].
pub fn run_all(
    q: u32,
    selection: Option<&BTreeSet<CheckName>>,
    options: VerifyOptions,
) -> Result<Report, VerifyError> {
    check_supported(q, options.allow_large)?;
    if selection.is_some_and(|s| s.is_empty()) {
        return Err(VerifyError::EmptySelection);
    }
    let ctx = Sl2Context::new(q).map_err(|e| VerifyError::Setup(e.to_string()))?;
    let cache = Cache::new(&ctx);
    let mut checks = Vec::new();
    for name in CheckName::ALL {
        if selection.is_some_and(|s| !s.contains(&name)) {
            continue;
        }
        let start = Instant::now();
        let (status, details) = if name == CheckName::BrauerCrossCheck && !options.cross_check {
            (Status::Skipped, json!({ "reason": "enable with the cross-check option" }))
        } else {
            let (ok, details) = run_check(&cache, name);
            (if ok { Status::Pass } else { Status::Fail }, details)
        };
        let elapsed_ms = if options.stable { 0 } else { start.elapsed().as_millis() as u64 };
        checks.push(CheckResult { name: name.as_str().to_string(), status, details, elapsed_ms });
    }
    let overall = if checks.iter().any(|c| c.status == Status::Fail) {
        Status::Fail
    } else {
        Status::Pass
    };
    Ok(Report { q, p: ctx.p(), checks, overall, version: VERSION.to_string() })
}

/// Writes the report. JSON is pretty-printed with keys sorted at every level
/// and a trailing newline, so parsing and re-serializing reproduces it.
pub fn emit(report: &Report, format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Json => {
            let canonical = serde_json::to_value(report)?;
            serde_json::to_writer_pretty(&mut *out, &canonical)?;
            writeln!(out)
        }
        Format::Text => {
            writeln!(out, "drinfeld verify {}: q = {}, p = {}", report.version, report.q, report.p)?;
            for c in &report.checks {
                writeln!(out, "  {:<8} {:<26} {:>6} ms", c.status.to_string(), c.name, c.elapsed_ms)?;
                if c.status == Status::Fail {
                    writeln!(out, "           {}", c.details)?;
                }
            }
            writeln!(out, "overall: {}", report.overall)
        }
    }
}

/// Objects shared between checks, built on first use.
struct Cache<'a> {
    ctx: &'a Sl2Context,
    dl: OnceCell<Vec<DlCharacter>>,
    gg: OnceCell<(ClassFn, ClassFn)>,
    basis: OnceCell<Result<BrauerBasis, String>>,
    canonical: OnceCell<BrauerFn>,
}

impl<'a> Cache<'a> {
    fn new(ctx: &'a Sl2Context) -> Self {
        Cache {
            ctx,
            dl: OnceCell::new(),
            gg: OnceCell::new(),
            basis: OnceCell::new(),
            canonical: OnceCell::new(),
        }
    }

    fn dl(&self) -> &[DlCharacter] {
        self.dl.get_or_init(|| dl_characters(self.ctx))
    }

    fn gg(&self) -> &(ClassFn, ClassFn) {
        self.gg.get_or_init(|| {
            (
                gelfand_graev(self.ctx, 1).expect("index 1"),
                gelfand_graev(self.ctx, 2).expect("index 2"),
            )
        })
    }

    fn basis(&self) -> Result<&BrauerBasis, String> {
        self.basis
            .get_or_init(|| BrauerBasis::new(self.ctx).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn canonical(&self) -> &BrauerFn {
        self.canonical.get_or_init(|| canonical_brauer(self.ctx))
    }

    fn decompose(&self, chi: &ClassFn) -> Result<G0Vector, String> {
        self.basis()?.decomposition_map(self.ctx, chi).map_err(|e| e.to_string())
    }
}

fn run_check(cache: &Cache<'_>, name: CheckName) -> (bool, Value) {
    match name {
        CheckName::FieldSanity => field_sanity(cache.ctx),
        CheckName::GroupSanity => group_sanity(cache.ctx),
        CheckName::CurveGeometry => curve_geometry(cache.ctx),
        CheckName::CurveMaximality => curve_maximality(cache.ctx),
        CheckName::DlSuite => dl_suite(cache),
        CheckName::Structural => structural(cache),
        CheckName::CanonicalDecomposition => canonical_decomposition(cache),
        CheckName::LefschetzIdentity => lefschetz_identity(cache),
        CheckName::DlReduction => dl_reduction(cache),
        CheckName::GelfandGraevIdentity => gelfand_graev_identity(cache),
        CheckName::GelfandGraevReduction => gelfand_graev_reduction(cache),
        CheckName::RegularRepresentation => regular_representation(cache),
        CheckName::CanonicalSelfDuality => canonical_self_duality(cache),
        CheckName::BrauerCrossCheck => brauer_cross_check(cache),
    }
}

fn exact(values: &[CycNum]) -> Value {
    Value::Array(values.iter().map(|v| Value::String(v.to_string())).collect())
}

fn g0(v: &G0Vector) -> Value {
    json!(v.0)
}

fn outcome<T: Serialize>(r: &Result<T, String>) -> Value {
    match r {
        Ok(v) => json!(v),
        Err(e) => json!({ "error": e }),
    }
}

/// Collects named boolean facts; the check passes when all hold.
#[derive(Default)]
struct Facts {
    ok: bool,
    entries: serde_json::Map<String, Value>,
    failed: Vec<String>,
}

impl Facts {
    fn new() -> Self {
        Facts { ok: true, ..Default::default() }
    }

    fn record(&mut self, name: &str, holds: bool, detail: Value) {
        if !holds {
            self.ok = false;
            self.failed.push(name.to_string());
        }
        self.entries.insert(name.to_string(), detail);
    }

    fn compare<T: PartialEq + Serialize>(&mut self, name: &str, expected: T, computed: T) {
        let holds = expected == computed;
        self.record(name, holds, json!({ "expected": expected, "computed": computed }));
    }

    fn finish(mut self) -> (bool, Value) {
        if !self.failed.is_empty() {
            self.entries.insert("failed".into(), json!(self.failed));
        }
        (self.ok, Value::Object(self.entries))
    }
}

fn field_sanity(ctx: &Sl2Context) -> (bool, Value) {
    let f = &*ctx.tower;
    let q = f.q();
    let mut facts = Facts::new();
    facts.record("modulus", true, json!(f.modulus()));
    facts.compare("order_g2", Some(q * q - 1), f.order(f.generator()));
    facts.compare("order_g1", Some(q - 1), f.order(f.base_generator()));
    facts.compare("order_gamma", Some(q + 1), f.order(f.gamma()));
    facts.compare("norm_gamma", Fq2::ONE.0, f.norm(f.gamma()).0);
    facts.compare("base_field_size", q as usize, f.base_field().len());
    let frobenius_fixes = f.base_field().iter().all(|&x| f.frobenius(x) == x);
    facts.record("frobenius_fixes_base", frobenius_fixes, json!(frobenius_fixes));
    let mu = f.mu_subgroup();
    let mu_ok = mu.len() == (q + 1) as usize && mu.iter().all(|&t| f.pow(t, q as i64 + 1) == Fq2::ONE);
    facts.record("mu_subgroup", mu_ok, json!(mu.len()));
    facts.finish()
}

fn has_base_eigenvalue(ctx: &Sl2Context, g: &Mat2) -> bool {
    let f = &*ctx.tower;
    let tr = g.trace(f);
    f.base_field().iter().any(|&x| !x.is_zero() && f.add(x, f.inv(x).unwrap()) == tr)
}

fn group_sanity(ctx: &Sl2Context) -> (bool, Value) {
    let q = ctx.q() as usize;
    let order = q * q * q - q;
    let mut facts = Facts::new();
    facts.compare("group_order", order, ctx.group_order());
    let sizes: Vec<usize> = ctx.classes.iter().map(|c| c.size).collect();
    facts.compare("class_size_sum", order, sizes.iter().sum());
    let divides = sizes.iter().all(|s| order % s == 0);
    facts.record("class_sizes_divide_order", divides, json!(sizes));
    facts.compare("p_regular_classes", q, ctx.classes.p_regular().len());
    facts.compare(
        "subgroup_orders",
        [q, q * (q - 1), q - 1],
        [ctx.u.order(), ctx.b.order(), ctx.s.order()],
    );
    let closed = [&ctx.u, &ctx.b, &ctx.s, &ctx.torus.subgroup]
        .iter()
        .all(|s| s.is_closed(&ctx.group));
    facts.record("subgroups_closed", closed, json!(closed));
    let torus = &ctx.torus;
    facts.compare("torus_order", q + 1, torus.subgroup.order());
    let abelian = torus.labels.iter().all(|&x| {
        torus.labels.iter().all(|&y| ctx.group.mul(x, y) == ctx.group.mul(y, x))
    });
    facts.record("torus_abelian", abelian, json!(abelian));
    let anisotropic = torus.labels.iter().all(|&t| {
        ctx.group.is_central(t) || !has_base_eigenvalue(ctx, ctx.group.element(t))
    });
    facts.record("torus_not_split", anisotropic, json!(anisotropic));
    facts.finish()
}

/// `u(x)` and its transpose for `x` in an `F_p`-basis of `F_q`; these
/// generate `SL₂(F_q)`.
fn generators(ctx: &Sl2Context) -> Vec<usize> {
    let f = &*ctx.tower;
    let mut out = Vec::new();
    let mut x = Fq2::ONE;
    for _ in 0..f.m() {
        let u = unipotent_element(&ctx.group, x);
        out.push(u);
        out.push(ctx.group.index_of(&ctx.group.element(u).transpose()).expect("transpose"));
        x = f.mul(x, f.base_generator());
    }
    out
}

fn curve_geometry(ctx: &Sl2Context) -> (bool, Value) {
    let q = ctx.q();
    let mut facts = Facts::new();
    facts.compare("smooth", json!(true), outcome(&smoothness_check(q).map_err(|e| e.to_string())));
    facts.compare(
        "points_fq",
        json!(q as u64 + 1),
        outcome(&count_points(&ctx.tower, 1).map_err(|e| e.to_string())),
    );
    let plane = (q * (q - 1) / 2) as i64;
    match genus_report(&ctx.tower) {
        Ok(report) => facts.compare("genus_degree_formula", plane, report.plane),
        Err(e) => facts.record("genus_degree_formula", false, json!(e.to_string())),
    }
    facts.compare("canonical_dimension", plane, CanonicalModel::new(q).dim() as i64);
    let spec = CurveSpec::new(q).expect("prime power");
    let gens = generators(ctx);
    let invariant = gens.iter().all(|&g| spec.is_invariant_under(&ctx.tower, ctx.group.element(g)));
    facts.record("invariant_under_generators", invariant, json!({ "generators": gens.len() }));
    facts.finish()
}

fn curve_maximality(ctx: &Sl2Context) -> (bool, Value) {
    let q = ctx.q() as u64;
    let mut facts = Facts::new();
    match genus_report(&ctx.tower) {
        Ok(report) => {
            facts.compare("points_fq2", q * q * q + 1, report.points_fq2);
            facts.compare("genus_weil_route", Some(report.plane), report.weil);
        }
        Err(e) => facts.record("points_fq2", false, json!(e.to_string())),
    }
    facts.finish()
}

fn dl_suite(cache: &Cache<'_>) -> (bool, Value) {
    let ctx = cache.ctx;
    let q = ctx.q() as i64;
    let dl = cache.dl();
    let id = ctx.identity_class();
    let one = trivial(ctx);
    let mut facts = Facts::new();
    let degrees: Vec<Option<i64>> = dl.iter().map(|r| r.values.value(id).as_i64()).collect();
    facts.compare("degrees", vec![Some(1 - q); dl.len()], degrees);

    let mut bad_pairs = Vec::new();
    for a in dl {
        for b in dl {
            let expected = i64::from(a.j == b.j) + i64::from(a.j as i64 == q + 1 - b.j as i64);
            let got = inner_product(ctx, &a.values, &b.values).map(|v| v.as_i64());
            if got != Ok(Some(expected)) {
                bad_pairs.push(json!({ "j": a.j, "j2": b.j, "expected": expected, "computed": format!("{got:?}") }));
            }
        }
    }
    facts.record("orthogonality", bad_pairs.is_empty(), json!({ "mismatches": bad_pairs }));

    let against_trivial: Vec<Option<i64>> = dl
        .iter()
        .map(|r| inner_product(ctx, &r.values, &one).ok().and_then(|v| v.as_i64()))
        .collect();
    facts.compare("inner_product_with_trivial", vec![Some(0); dl.len()], against_trivial);

    let split: Vec<usize> = ctx.classes.find_kind(ElementKind::Split).collect();
    let nonzero: Vec<(u32, usize)> = dl
        .iter()
        .flat_map(|r| split.iter().filter(|&&c| !r.values.value(c).is_zero()).map(move |&c| (r.j, c)))
        .collect();
    facts.record(
        "split_regular_values_vanish",
        nonzero.is_empty(),
        json!({ "split_classes": split.len(), "nonzero": nonzero }),
    );
    facts.finish()
}

fn structural(cache: &Cache<'_>) -> (bool, Value) {
    let ctx = cache.ctx;
    let q = ctx.q() as usize;
    let mut facts = Facts::new();
    facts.compare("p_regular_classes", q, ctx.classes.p_regular().len());
    match cache.basis() {
        Ok(basis) => {
            let det = basis.determinant();
            facts.record("brauer_matrix_nonsingular", !det.is_zero(), json!(det.to_string()));
        }
        Err(e) => facts.record("brauer_matrix_nonsingular", false, json!(e)),
    }

    let (g1, g2) = cache.gg();
    let mut ordinary: Vec<(String, ClassFn)> = vec![
        ("trivial".into(), trivial(ctx)),
        ("steinberg".into(), steinberg(ctx)),
        ("perm_p1".into(), permutation_character_p1(ctx)),
        ("ind_u".into(), induced_trivial(ctx, &ctx.u)),
        ("ind_b".into(), induced_trivial(ctx, &ctx.b)),
        ("gamma1".into(), g1.clone()),
        ("gamma2".into(), g2.clone()),
        ("regular".into(), regular_character(ctx)),
    ];
    ordinary.extend(cache.dl().iter().map(|r| (format!("dl{}", r.j), r.values.clone())));
    let mut solves = serde_json::Map::new();
    let mut all_integral = true;
    for (name, chi) in &ordinary {
        match cache.decompose(chi) {
            Ok(v) => {
                solves.insert(name.clone(), g0(&v));
            }
            Err(e) => {
                all_integral = false;
                solves.insert(name.clone(), json!({ "error": e }));
            }
        }
    }
    facts.record("integral_decompositions", all_integral, Value::Object(solves));

    let (psi1, psi2) = additive_characters(ctx);
    let f = &*ctx.tower;
    let mut varying = Vec::new();
    for (i, psi, gamma) in [(1, &psi1, g1), (2, &psi2, g2)] {
        for &a in f.base_field().iter().filter(|a| !a.is_zero()) {
            if gelfand_graev_from(ctx, &psi.twisted(ctx, a)) != *gamma {
                varying.push(json!({ "gamma": i, "a": a.0 }));
            }
        }
    }
    facts.record("gelfand_graev_representative_independent", varying.is_empty(), json!(varying));

    let st = steinberg(ctx);
    let perm = permutation_character_p1(ctx);
    let norm = |f: &ClassFn| inner_product(ctx, f, f).ok().and_then(|v| v.as_i64());
    facts.compare("steinberg_norm", Some(1), norm(&st));
    facts.compare("perm_p1_norm", Some(2), norm(&perm));
    facts.finish()
}

fn canonical_decomposition(cache: &Cache<'_>) -> (bool, Value) {
    let q = cache.ctx.q() as usize;
    let mut expected = vec![1; q];
    expected[q - 1] = 0;
    let computed = cache
        .basis()
        .and_then(|b| b.decompose(cache.canonical()).map_err(|e| e.to_string()))
        .map(|v| v.0);
    let ok = computed.as_ref() == Ok(&expected);
    (ok, json!({ "expected": expected, "computed": outcome(&computed) }))
}

fn lefschetz_identity(cache: &Cache<'_>) -> (bool, Value) {
    let ctx = cache.ctx;
    let dl = cache.dl();
    let mut rows = Vec::new();
    let mut ok = true;
    for &c in ctx.classes.p_regular() {
        let rep = ctx.classes.get(c).representative;
        let lhs = lefschetz_c(ctx, rep).map_err(|e| e.to_string());
        let mut sum = ctx.cyclo.from_integer(2);
        for r in dl {
            sum += r.values.value(c);
        }
        let rhs = sum.as_i64();
        let holds = matches!((&lhs, rhs), (Ok(a), Some(b)) if *a == b);
        ok &= holds;
        rows.push(json!({
            "class": c,
            "lefschetz": outcome(&lhs),
            "two_plus_sum": rhs.map(Value::from).unwrap_or_else(|| json!(sum.to_string())),
        }));
    }
    (ok, json!({ "classes": rows }))
}

fn dl_reduction(cache: &Cache<'_>) -> (bool, Value) {
    let q = cache.ctx.q() as i64;
    let qs = q as usize;
    let mut expected: Vec<Vec<i64>> = (1..=q)
        .map(|i| (-&(&G0Vector::basis(qs, i - 2) + &G0Vector::basis(qs, q - i - 1))).0)
        .collect();
    let computed: Result<Vec<Vec<i64>>, String> =
        cache.dl().iter().map(|r| cache.decompose(&r.values).map(|v| v.0)).collect();
    let by_j = computed.clone();
    let ok = match computed {
        Ok(mut c) => {
            c.sort();
            expected.sort();
            c == expected
        }
        Err(_) => false,
    };
    (ok, json!({ "expected_multiset": expected, "computed_by_j": outcome(&by_j) }))
}

fn gelfand_graev_identity(cache: &Cache<'_>) -> (bool, Value) {
    let ctx = cache.ctx;
    let mut lhs = ClassFn::new(vec![ctx.cyclo.zero(); ctx.classes.len()]);
    for r in cache.dl() {
        lhs = &lhs + &r.values;
    }
    let (g1, g2) = cache.gg();
    let inner = &(&(&(g1 + g2) - &induced_trivial(ctx, &ctx.u)) - &induced_trivial(ctx, &ctx.b))
        + &trivial(ctx).scale_int(2);
    let rhs = -&inner;
    let ok = lhs.values() == rhs.values();
    (ok, json!({ "sum_dl": exact(lhs.values()), "induction_side": exact(rhs.values()) }))
}

fn gelfand_graev_reduction(cache: &Cache<'_>) -> (bool, Value) {
    let q = cache.ctx.q() as usize;
    let mut expected = vec![2; q];
    expected[0] = 1;
    expected[q - 1] = 1;
    let (g1, g2) = cache.gg();
    let d1 = cache.decompose(g1).map(|v| v.0);
    let d2 = cache.decompose(g2).map(|v| v.0);
    let ok = d1.as_ref() == Ok(&expected) && d2.as_ref() == Ok(&expected);
    (ok, json!({ "expected": expected, "gamma1": outcome(&d1), "gamma2": outcome(&d2) }))
}

fn regular_representation(cache: &Cache<'_>) -> (bool, Value) {
    let ctx = cache.ctx;
    let q = ctx.q() as i64;
    let reg = cache.decompose(&regular_character(ctx));
    let gamma = cache.decompose(&cache.gg().0).map(|v| v.scale(q));
    let ok = matches!((&reg, &gamma), (Ok(a), Ok(b)) if a == b);
    (
        ok,
        json!({
            "regular": outcome(&reg.map(|v| v.0)),
            "q_times_gamma1": outcome(&gamma.map(|v| v.0)),
        }),
    )
}

fn canonical_self_duality(cache: &Cache<'_>) -> (bool, Value) {
    let ctx = cache.ctx;
    let can = cache.canonical();
    let lhs = can + &conj_brauer(can);
    let mut sum = BrauerFn { values: vec![ctx.cyclo.zero(); ctx.classes.p_regular().len()] };
    for i in 0..ctx.q() - 1 {
        sum = &sum + &brauer_character_sym(ctx, i).expect("i < q");
    }
    let rhs = sum.scale_int(2);
    let ok = lhs == rhs;
    (ok, json!({ "canonical_plus_conjugate": exact(&lhs.values), "twice_sum": exact(&rhs.values) }))
}

fn brauer_cross_check(cache: &Cache<'_>) -> (bool, Value) {
    let ctx = cache.ctx;
    let mut facts = Facts::new();
    for i in 0..ctx.q() {
        let formula = brauer_character_sym(ctx, i).map(|f| f.values);
        let explicit = brauer_character_sym_explicit(ctx, i).map(|f| f.values);
        let holds = formula.is_ok() && formula == explicit;
        facts.record(
            &format!("sym{i}"),
            holds,
            json!({
                "formula": formula.as_deref().map(exact).unwrap_or(Value::Null),
                "explicit": explicit.as_deref().map(exact).unwrap_or(Value::Null),
            }),
        );
    }
    let explicit = canonical_brauer_explicit(ctx);
    let can = cache.canonical();
    facts.record(
        "canonical",
        explicit == *can,
        json!({ "formula": exact(&can.values), "explicit": exact(&explicit.values) }),
    );
    facts.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for c in CheckName::ALL {
            assert_eq!(c.as_str().parse::<CheckName>(), Ok(c));
        }
        assert_eq!(
            parse_selection("dl-suite, nope"),
            Err(VerifyError::UnknownCheckName("nope".into()))
        );
        assert_eq!(parse_selection(" , "), Err(VerifyError::EmptySelection));
    }

    #[test]
    fn unsupported() {
        assert!(matches!(run_all(1, None, VerifyOptions::default()), Err(VerifyError::UnsupportedQ { q: 1, .. })));
        assert!(matches!(run_all(6, None, VerifyOptions::default()), Err(VerifyError::UnsupportedQ { .. })));
        assert!(matches!(run_all(13, None, VerifyOptions::default()), Err(VerifyError::UnsupportedQ { .. })));
        assert!(check_supported(13, true).is_ok());
    }

    #[test]
    fn q2_all_pass() {
        let opts = VerifyOptions { cross_check: true, stable: true, ..Default::default() };
        let report = run_all(2, None, opts).unwrap();
        for c in &report.checks {
            assert_eq!(c.status, Status::Pass, "{}: {}", c.name, c.details);
        }
        assert!(report.passed());
        let theorem = report.check(CheckName::CanonicalDecomposition).unwrap();
        assert_eq!(theorem.details["computed"], json!([1, 0]));
    }

    #[test]
    fn q5_gelfand_graev_vector() {
        let sel = parse_selection("gelfand-graev-reduction").unwrap();
        let report = run_all(5, Some(&sel), VerifyOptions::default()).unwrap();
        assert_eq!(report.checks.len(), 1);
        assert_eq!(report.checks[0].details["gamma1"], json!([1, 2, 2, 2, 1]));
        assert!(report.passed());
    }

    #[test]
    fn skipped_cross_check_does_not_fail() {
        let sel = parse_selection("brauer-cross-check").unwrap();
        let report = run_all(3, Some(&sel), VerifyOptions::default()).unwrap();
        assert_eq!(report.checks[0].status, Status::Skipped);
        assert_eq!(report.overall, Status::Pass);
    }

    #[test]
    fn json_is_stable_and_round_trips() {
        let opts = VerifyOptions { stable: true, ..Default::default() };
        let sel = parse_selection("field-sanity,dl-suite,canonical-decomposition").unwrap();
        let mut a = Vec::new();
        let mut b = Vec::new();
        emit(&run_all(3, Some(&sel), opts).unwrap(), Format::Json, &mut a).unwrap();
        emit(&run_all(3, Some(&sel), opts).unwrap(), Format::Json, &mut b).unwrap();
        assert_eq!(a, b);
        let parsed: Report = serde_json::from_slice(&a).unwrap();
        let mut c = Vec::new();
        emit(&parsed, Format::Json, &mut c).unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn exit_codes() {
        let mut report = run_all(2, Some(&parse_selection("field-sanity").unwrap()), VerifyOptions::default()).unwrap();
        assert_eq!(report.exit_code(), 0);
        report.checks[0].status = Status::Fail;
        report.overall = Status::Fail;
        assert_eq!(report.exit_code(), 1);
    }
}
