//! Job files and report generation shared by the command-line tool and the
//! browser demo.
//!
//! A job is a JSON document, either
//!
//! ```json
//! {"kind": "lca", "modulus": 2, "n": 2, "matrix": [["0", "1"], ["X + X^-1", "0"]]}
//! ```
//!
//! or
//!
//! ```json
//! {"kind": "additive", "group": [4, 2], "radius": 0, "rules": {"0": [[0, 2], [1, 0]]}}
//! ```
//!
//! with an optional `"options"` object (`lhat_max`, `width`, `steps`,
//! `seed`, `format`). Missing offsets of an additive rule are zero.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::additive::{
    apply_additive, associated_lca, decide_additive, embed_config, primary_decompose, AdditiveRule,
    GroupConfig, GroupSpec, PrimaryComponent,
};
use crate::decider::{decide_lca, LcaRule, Verdict};
use crate::error::{Error, Result};
use crate::expansivity::is_expansive_poly;
use crate::matpoly::{invariant_factors, LaMatrix, TPoly};
use crate::modarith::{factor, Modulus};
use crate::oracle::{self, falsify, verify_window, OracleResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Structured,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "structured" => Ok(Format::Structured),
            _ => Err(Error::InvalidJob(format!("unknown format '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Decide,
    Charpoly,
    Invariants,
    Oracle,
    Embed,
    Crosscheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Decide => "decide",
            Command::Charpoly => "charpoly",
            Command::Invariants => "invariants",
            Command::Oracle => "oracle",
            Command::Embed => "embed",
            Command::Crosscheck => "crosscheck",
        }
    }
}

impl FromStr for Command {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [
            Command::Decide,
            Command::Charpoly,
            Command::Invariants,
            Command::Oracle,
            Command::Embed,
            Command::Crosscheck,
        ]
        .into_iter()
        .find(|c| c.name() == s)
        .ok_or_else(|| Error::InvalidJob(format!("unknown command '{s}'")))
    }
}

/// Options as written in a job file or on the command line; later sources
/// override earlier ones field by field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialOptions {
    pub lhat_max: Option<u32>,
    pub width: Option<u32>,
    pub steps: Option<u32>,
    pub seed: Option<u64>,
    pub format: Option<Format>,
}

impl PartialOptions {
    pub fn overridden_by(self, o: PartialOptions) -> PartialOptions {
        PartialOptions {
            lhat_max: o.lhat_max.or(self.lhat_max),
            width: o.width.or(self.width),
            steps: o.steps.or(self.steps),
            seed: o.seed.or(self.seed),
            format: o.format.or(self.format),
        }
    }

    pub fn resolve(self) -> Result<Options> {
        let opts = Options {
            lhat_max: self.lhat_max.unwrap_or(oracle::DEFAULT_LHAT_MAX),
            width: self.width.unwrap_or(oracle::DEFAULT_WIDTH),
            steps: self.steps.unwrap_or(oracle::DEFAULT_STEPS),
            seed: self.seed.unwrap_or(0),
            format: self.format.unwrap_or_default(),
        };
        for (name, v) in [("lhat_max", opts.lhat_max), ("width", opts.width), ("steps", opts.steps)] {
            if v == 0 {
                return Err(Error::InvalidJob(format!("{name} must be at least 1")));
            }
        }
        Ok(opts)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub lhat_max: u32,
    pub width: u32,
    pub steps: u32,
    pub seed: u64,
    pub format: Format,
}

impl Default for Options {
    fn default() -> Self {
        PartialOptions::default().resolve().unwrap()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JobKind {
    Lca(LcaRule),
    Additive(AdditiveRule),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobSpec {
    pub kind: JobKind,
    pub options: PartialOptions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Kind {
    Lca,
    Additive,
}

// Flat so that type errors keep their line and column.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawJob {
    kind: Kind,
    modulus: Option<u64>,
    n: Option<usize>,
    matrix: Option<Vec<Vec<String>>>,
    group: Option<Vec<u64>>,
    radius: Option<u32>,
    rules: Option<BTreeMap<String, Vec<Vec<i64>>>>,
    #[serde(default)]
    options: PartialOptions,
}

fn required<T>(v: Option<T>, kind: &str, field: &str) -> Result<T> {
    v.ok_or_else(|| Error::InvalidJob(format!("{kind} job is missing field '{field}'")))
}

fn forbid<T>(v: &Option<T>, kind: &str, field: &str) -> Result<()> {
    match v {
        Some(_) => Err(Error::InvalidJob(format!("field '{field}' does not apply to {kind} jobs"))),
        None => Ok(()),
    }
}

pub fn parse_job(text: &str) -> Result<JobSpec> {
    let raw: RawJob = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let options = raw.options;
    match raw.kind {
        Kind::Lca => {
            forbid(&raw.group, "lca", "group")?;
            forbid(&raw.radius, "lca", "radius")?;
            forbid(&raw.rules, "lca", "rules")?;
            let modulus = Modulus::new(required(raw.modulus, "lca", "modulus")?)?;
            let n = required(raw.n, "lca", "n")?;
            let matrix = required(raw.matrix, "lca", "matrix")?;
            if matrix.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: matrix.len() });
            }
            if let Some(row) = matrix.iter().find(|r| r.len() != n) {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            let matrix = LaMatrix::parse(&matrix, modulus)?;
            Ok(JobSpec { kind: JobKind::Lca(LcaRule::new(matrix)), options })
        }
        Kind::Additive => {
            forbid(&raw.modulus, "additive", "modulus")?;
            forbid(&raw.n, "additive", "n")?;
            forbid(&raw.matrix, "additive", "matrix")?;
            let group = GroupSpec::new(required(raw.group, "additive", "group")?)?;
            let radius = required(raw.radius, "additive", "radius")?;
            let endos = raw
                .rules
                .unwrap_or_default()
                .into_iter()
                .map(|(k, v)| {
                    let z = k
                        .trim()
                        .parse::<i64>()
                        .map_err(|_| Error::InvalidJob(format!("offset '{k}' is not an integer")))?;
                    Ok((z, v))
                })
                .collect::<Result<BTreeMap<_, _>>>()?;
            let rule = AdditiveRule::new(group, radius, endos)?;
            Ok(JobSpec { kind: JobKind::Additive(rule), options })
        }
    }
}

/// Output of [`run`]: the rendered document and the process exit code
/// (0 on success, 2 when a cross-check found an inconsistency).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub body: String,
    pub exit_code: i32,
}

struct Unit {
    label: String,
    rule: LcaRule,
}

fn units(job: &JobSpec) -> Vec<Unit> {
    match &job.kind {
        JobKind::Lca(rule) => vec![Unit { label: format!("Z/{}", rule.modulus), rule: rule.clone() }],
        JobKind::Additive(rule) => primary_decompose(rule.group())
            .into_iter()
            .map(|c| Unit { label: component_label(&c), rule: associated_lca(&c, rule) })
            .collect(),
    }
}

fn component_label(c: &PrimaryComponent) -> String {
    format!("p = {}, exponents {:?}", c.p, c.exponents)
}

fn rule_json(rule: &LcaRule) -> Value {
    json!({"modulus": rule.modulus, "n": rule.n, "radius": rule.radius, "matrix": rule.matrix})
}

fn text_rule(out: &mut String, rule: &LcaRule, indent: &str) {
    let _ = writeln!(out, "{indent}modulus: {}", rule.modulus);
    let _ = writeln!(out, "{indent}n: {}", rule.n);
    let _ = writeln!(out, "{indent}radius: {}", rule.radius);
    let _ = writeln!(out, "{indent}matrix:");
    for row in rule.matrix.rows() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{indent}  [{}]", cells.join(", "));
    }
}

fn text_verdict(out: &mut String, v: &Verdict, indent: &str) {
    for pv in &v.per_prime {
        let _ = writeln!(out, "{indent}prime {} (exponent {}):", pv.p, pv.k);
        let _ = writeln!(out, "{indent}  charpoly mod {}: {}", pv.p, pv.charpoly);
        match &pv.violation {
            None => {
                let _ = writeln!(out, "{indent}  expansive: true");
            }
            Some(why) => {
                let _ = writeln!(out, "{indent}  expansive: false ({why})");
            }
        }
        let _ = writeln!(out, "{indent}  surjective: {}", pv.surjective);
    }
}

fn oracle_text(r: &OracleResult, verifier: bool) -> String {
    match r {
        OracleResult::VerifiedExpansive { lhat } => format!("verified expansive (lhat = {lhat})"),
        OracleResult::RefutedByWitness { config, side, steps } => {
            format!("witness (bounded search): side {side}, {steps} steps, config {config}")
        }
        OracleResult::Inconclusive { budget } if verifier => {
            format!("inconclusive (windows checked up to lhat = {budget})")
        }
        OracleResult::Inconclusive { budget } => {
            format!("inconclusive (no witness among {budget} configurations)")
        }
    }
}

fn render(opts: &Options, structured: Value, text: String) -> String {
    match opts.format {
        Format::Text => text,
        Format::Structured => {
            let mut s = serde_json::to_string_pretty(&structured).expect("reports serialize");
            s.push('\n');
            s
        }
    }
}

pub fn run(cmd: Command, job: &JobSpec, opts: &Options) -> Result<Report> {
    let (value, text, exit_code) = match cmd {
        Command::Decide => run_decide(job),
        Command::Charpoly => run_charpoly(job),
        Command::Invariants => run_invariants(job)?,
        Command::Oracle => run_oracle(job, opts),
        Command::Embed => run_embed(job)?,
        Command::Crosscheck => run_crosscheck(job, opts)?,
    };
    Ok(Report { body: render(opts, value, text), exit_code })
}

type Rendered = (Value, String, i32);

fn run_decide(job: &JobSpec) -> Rendered {
    let mut t = String::new();
    match &job.kind {
        JobKind::Lca(rule) => {
            let v = decide_lca(rule);
            let _ = writeln!(t, "kind: lca");
            text_rule(&mut t, rule, "");
            text_verdict(&mut t, &v, "");
            let _ = writeln!(t, "positively_expansive: {}", v.positively_expansive);
            let value = json!({
                "command": "decide",
                "kind": "lca",
                "rule": rule_json(rule),
                "verdict": v,
            });
            (value, t, 0)
        }
        JobKind::Additive(rule) => {
            let v = decide_additive(rule);
            let _ = writeln!(t, "kind: additive");
            let _ = writeln!(t, "group: {:?}", rule.group().orders());
            for c in &v.components {
                let _ = writeln!(t, "component {}:", component_label(&c.component));
                let _ = writeln!(t, "  coordinates from factors {:?}", one_based(&c.component.members));
                text_rule(&mut t, &c.lca, "  ");
                text_verdict(&mut t, &c.verdict, "  ");
                let _ = writeln!(t, "  positively_expansive: {}", c.verdict.positively_expansive);
            }
            let _ = writeln!(t, "positively_expansive: {}", v.positively_expansive);
            let value = json!({
                "command": "decide",
                "kind": "additive",
                "group": rule.group().orders(),
                "verdict": v,
            });
            (value, t, 0)
        }
    }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn run_charpoly(job: &JobSpec) -> Rendered {
    let mut t = String::new();
    let mut docs = Vec::new();
    for u in units(job) {
        let full = u.rule.matrix.charpoly();
        let _ = writeln!(t, "{}:", u.label);
        let _ = writeln!(t, "  charpoly: {full}");
        let mut per_prime = Vec::new();
        for pk in factor(u.rule.modulus.get()).expect("modulus is at least 2") {
            let cp = u.rule.matrix.reduce_mod(pk.p).expect("prime divides modulus").charpoly();
            let _ = writeln!(t, "  charpoly mod {}: {cp}", pk.p);
            per_prime.push(json!({"p": pk.p, "charpoly": cp}));
        }
        docs.push(json!({"unit": u.label, "rule": rule_json(&u.rule), "charpoly": full, "per_prime": per_prime}));
    }
    (json!({"command": "charpoly", "units": docs}), t, 0)
}

struct PrimeFactors {
    p: u64,
    charpoly: TPoly<crate::laurent::LaurentPoly>,
    factors: Vec<String>,
    laurent: Option<Vec<TPoly<crate::laurent::LaurentPoly>>>,
    chain: bool,
    product_matches: bool,
}

fn prime_factors(rule: &LcaRule) -> Result<Vec<PrimeFactors>> {
    factor(rule.modulus.get())?
        .into_iter()
        .map(|pk| {
            let reduced = rule.matrix.reduce_mod(pk.p)?;
            let inv = invariant_factors(&reduced)?;
            let charpoly = reduced.charpoly();
            Ok(PrimeFactors {
                p: pk.p,
                factors: inv.factors().iter().map(ToString::to_string).collect(),
                laurent: inv.to_laurent(),
                chain: inv.is_divisibility_chain(),
                product_matches: inv.product() == charpoly.to_fractions()?,
                charpoly,
            })
        })
        .collect()
}

fn run_invariants(job: &JobSpec) -> Result<Rendered> {
    let mut t = String::new();
    let mut docs = Vec::new();
    for u in units(job) {
        let _ = writeln!(t, "{}:", u.label);
        let mut per_prime = Vec::new();
        for pf in prime_factors(&u.rule)? {
            let _ = writeln!(t, "  invariant factors mod {}:", pf.p);
            for f in &pf.factors {
                let _ = writeln!(t, "    {f}");
            }
            per_prime.push(json!({
                "p": pf.p,
                "factors": pf.factors,
                "divisibility_chain": pf.chain,
                "product_is_charpoly": pf.product_matches,
            }));
        }
        docs.push(json!({"unit": u.label, "per_prime": per_prime}));
    }
    Ok((json!({"command": "invariants", "units": docs}), t, 0))
}

fn run_oracle(job: &JobSpec, opts: &Options) -> Rendered {
    let mut t = String::new();
    let mut docs = Vec::new();
    let _ = writeln!(
        t,
        "budgets: lhat_max = {}, width = {}, steps = {}, seed = {}",
        opts.lhat_max, opts.width, opts.steps, opts.seed
    );
    for u in units(job) {
        let v = verify_window(&u.rule, opts.lhat_max);
        let f = falsify(&u.rule, opts.width, opts.steps, opts.seed);
        let _ = writeln!(t, "{}:", u.label);
        let _ = writeln!(t, "  verify_window: {}", oracle_text(&v, true));
        let _ = writeln!(t, "  falsify: {}", oracle_text(&f, false));
        docs.push(json!({"unit": u.label, "verify_window": v, "falsify": f}));
    }
    let value = json!({
        "command": "oracle",
        "budgets": {"lhat_max": opts.lhat_max, "width": opts.width, "steps": opts.steps, "seed": opts.seed},
        "units": docs,
    });
    (value, t, 0)
}

fn run_embed(job: &JobSpec) -> Result<Rendered> {
    let JobKind::Additive(rule) = &job.kind else {
        return Err(Error::InvalidJob("embed needs an additive job".into()));
    };
    let mut t = String::new();
    let mut docs = Vec::new();
    let n = rule.group().rank();
    let _ = writeln!(t, "group: {:?}", rule.group().orders());
    for c in primary_decompose(rule.group()) {
        let lca = associated_lca(&c, rule);
        let _ = writeln!(t, "component {}:", component_label(&c));
        let _ = writeln!(t, "  coordinates from factors {:?}", one_based(&c.members));
        let mut gens = Vec::new();
        for j in 0..n {
            let mut e = vec![0; n];
            e[j] = 1;
            let image = c.psi(&c.project(&e));
            let _ = writeln!(t, "  psi(e{}) = {:?}", j + 1, image);
            gens.push(json!({"generator": j + 1, "image": image}));
        }
        let _ = writeln!(t, "  associated rule over Z/{}:", lca.modulus);
        let mut offsets = BTreeMap::new();
        for &z in rule.endos().keys() {
            let a = lca.matrix.coefficient_matrix(-z);
            let _ = writeln!(t, "    A_{z} = {a:?}");
            offsets.insert(z.to_string(), a);
        }
        text_rule(&mut t, &lca, "    ");
        docs.push(json!({
            "p": c.p,
            "exponents": c.exponents,
            "factors": one_based(&c.members),
            "psi_generators": gens,
            "offset_matrices": offsets,
            "rule": rule_json(&lca),
        }));
    }
    Ok((json!({"command": "embed", "group": rule.group().orders(), "components": docs}), t, 0))
}

/// Samples finite configurations and checks `Psi(F(c)) = L(Psi(c))` on every
/// component.
fn commuting_failures(rule: &AdditiveRule, opts: &Options, samples: usize) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let orders = rule.group().orders().to_vec();
    let comps: Vec<(PrimaryComponent, LcaRule)> = primary_decompose(rule.group())
        .into_iter()
        .map(|c| {
            let l = associated_lca(&c, rule);
            (c, l)
        })
        .collect();
    (0..samples)
        .filter(|_| {
            let mut c = GroupConfig::new();
            for pos in 1 - opts.width as i64..=0 {
                c.set(pos, orders.iter().map(|&o| rng.gen_range(0..o)).collect());
            }
            let image = apply_additive(rule, &c);
            comps.iter().any(|(comp, lca)| {
                embed_config(comp, &image) != lca.matrix.apply(&embed_config(comp, &c)).expect("dimensions agree")
            })
        })
        .count()
}

fn oracle_issues(decided: bool, window: &OracleResult, witness: &OracleResult) -> Vec<String> {
    let mut issues = Vec::new();
    if matches!(window, OracleResult::VerifiedExpansive { .. }) && !decided {
        issues.push("window verifier proved expansivity but the decider says false".to_string());
    }
    if matches!(witness, OracleResult::RefutedByWitness { .. }) && decided {
        issues.push("falsifier found a witness but the decider says true".to_string());
    }
    issues
}

fn crosscheck_exit_code(issues: &[String]) -> i32 {
    if issues.is_empty() {
        0
    } else {
        2
    }
}

fn run_crosscheck(job: &JobSpec, opts: &Options) -> Result<Rendered> {
    let mut t = String::new();
    let mut issues: Vec<String> = Vec::new();
    let mut docs = Vec::new();
    let mut all_expansive = true;
    for u in units(job) {
        let verdict = decide_lca(&u.rule);
        all_expansive &= verdict.positively_expansive;
        let v = verify_window(&u.rule, opts.lhat_max);
        let f = falsify(&u.rule, opts.width, opts.steps, opts.seed);
        let mut local = oracle_issues(verdict.positively_expansive, &v, &f);
        let mut inv_docs = Vec::new();
        let mut inv_lines = Vec::new();
        for pf in prime_factors(&u.rule)? {
            let p = pf.p;
            inv_lines.push(format!("  invariant factors mod {p}: {}", pf.factors.join(", ")));
            if !pf.chain {
                local.push(format!("mod {p}: invariant factors do not form a divisibility chain"));
            }
            if !pf.product_matches {
                local.push(format!("mod {p}: product of invariant factors differs from charpoly"));
            }
            let by_factors = match &pf.laurent {
                None => {
                    local.push(format!("mod {p}: an invariant factor has a nontrivial denominator"));
                    None
                }
                Some(fs) => Some(fs.iter().map(|f| is_expansive_poly(f).map(|e| e.expansive)).collect::<Result<Vec<_>>>()?),
            };
            let whole = is_expansive_poly(&pf.charpoly)?.expansive;
            if let Some(by) = &by_factors {
                if by.iter().all(|&b| b) != whole {
                    local.push(format!("mod {p}: expansivity of charpoly disagrees with its invariant factors"));
                }
            }
            inv_docs.push(json!({"p": p, "factors": pf.factors, "factor_expansive": by_factors}));
        }
        let _ = writeln!(t, "{}:", u.label);
        let _ = writeln!(t, "  decider: {}", verdict.positively_expansive);
        let _ = writeln!(t, "  verify_window: {}", oracle_text(&v, true));
        let _ = writeln!(t, "  falsify: {}", oracle_text(&f, false));
        for line in &inv_lines {
            let _ = writeln!(t, "{line}");
        }
        for i in &local {
            let _ = writeln!(t, "  INCONSISTENT: {i}");
        }
        docs.push(json!({
            "unit": u.label,
            "positively_expansive": verdict.positively_expansive,
            "verify_window": v,
            "falsify": f,
            "invariants": inv_docs,
            "issues": local,
        }));
        issues.extend(local.into_iter().map(|i| format!("{}: {i}", u.label)));
    }
    let mut diagram = Value::Null;
    if let JobKind::Additive(rule) = &job.kind {
        let samples = 50;
        let failures = commuting_failures(rule, opts, samples);
        let _ = writeln!(t, "commuting diagram: {failures} failures in {samples} samples");
        if failures > 0 {
            issues.push(format!("commuting diagram failed on {failures} samples"));
        }
        diagram = json!({"samples": samples, "failures": failures});
    }
    let consistent = issues.is_empty();
    let _ = writeln!(t, "positively_expansive: {all_expansive}");
    let _ = writeln!(t, "consistent: {consistent}");
    let value = json!({
        "command": "crosscheck",
        "positively_expansive": all_expansive,
        "consistent": consistent,
        "units": docs,
        "commuting_diagram": diagram,
        "issues": issues,
    });
    Ok((value, t, crosscheck_exit_code(&issues)))
}
