use std::collections::BTreeMap;
use std::path::Path;

use serde_json::{json, Map, Value};
use z2alg_core::algebra::{
    annihilator, derive_angle, derive_bullet, find_right_units, ideal_closure, is_ideal, is_simple,
    module_action_from_annihilator, quotient_algebra, ActionSign, Algebra, AnnihilatorKind, AnyAlgebra,
    SimplicityOptions, SimplicityVerdict,
};
use z2alg_core::gallery::{self, ExampleRecipe};
use z2alg_core::identity::{check_identity, check_suite, lookup, CheckOptions, CheckReport, Class, IdentityDef};
use z2alg_core::linalg::{Subspace, Vector};
use z2alg_core::prover::{self, ProofStep};
use z2alg_core::{with_algebra, Error, Field, FieldDescriptor, PrimeField, Rationals, Result};

use crate::args::{Command, Global};
use crate::report::{CheckResult, RunReport, Status};

/// Whether failed results should turn into exit status 1.
pub enum Policy {
    Verify,
    Informational,
}

fn vector_json<K: Field>(alg: &Algebra<K>, v: &Vector<K>) -> Value {
    let mut m = Map::new();
    for (i, c) in v.support() {
        m.insert(alg.basis_names()[i].clone(), Value::String(c.to_string()));
    }
    Value::Object(m)
}

fn subspace_json<K: Field>(alg: &Algebra<K>, s: &Subspace<K>) -> Value {
    Value::Array(s.basis().iter().map(|v| vector_json(alg, v)).collect())
}

fn subspace_text<K: Field>(alg: &Algebra<K>, s: &Subspace<K>) -> String {
    let parts: Vec<String> = s.basis().iter().map(|v| alg.format_vector(v)).collect();
    format!("span{{{}}}", parts.join(", "))
}

fn parse_vectors<K: Field>(alg: &Algebra<K>, text: &str) -> Result<Vec<Vector<K>>> {
    let raw: Vec<BTreeMap<String, String>> = serde_json::from_str(text)?;
    let k = alg.field();
    raw.into_iter()
        .map(|m| {
            let mut v = alg.zero_vector();
            for (name, c) in m {
                let i = alg
                    .basis_index(&name)
                    .ok_or_else(|| Error::Schema(format!("unknown basis element {name:?}")))?;
                v.set(i, k.parse(&c)?);
            }
            Ok(v)
        })
        .collect()
}

fn check_json<K: Field>(alg: &Algebra<K>, r: &CheckReport<K>) -> Result<Value> {
    Ok(match &r.counterexample {
        None => json!({ "identity": r.identity, "holds": true, "assignments": r.assignments }),
        Some(ce) => {
            let assignment: Map<String, Value> = ce
                .variables
                .iter()
                .zip(&ce.assignment)
                .map(|(n, v)| (n.clone(), vector_json(alg, v)))
                .collect();
            json!({
                "identity": r.identity,
                "holds": false,
                "assignments": r.assignments,
                "form": ce.form,
                "assignment": assignment,
                "basis_indices": ce.basis_indices,
                "value": vector_json(alg, &ce.value),
                "rechecked": r.recheck(alg)?,
            })
        }
    })
}

fn check_result<K: Field>(alg: &Algebra<K>, name: String, r: &CheckReport<K>) -> Result<CheckResult> {
    Ok(CheckResult::pass_if(name, r.holds(), r.summary(alg)).with_data(check_json(alg, r)?))
}

fn push_suite<K: Field>(rep: &mut RunReport, alg: &Algebra<K>, prefix: &str, class: Class, opts: &CheckOptions) -> Result<bool> {
    let s = check_suite(alg, class, opts)?;
    for r in &s.reports {
        rep.push(check_result(alg, format!("{prefix}{}/{}", class.suite_name(), r.identity), r)?);
    }
    Ok(s.holds())
}

fn check_options(g: &Global) -> CheckOptions {
    CheckOptions::exhaustive().parallel(g.parallel)
}

fn load(path: &Path, g: &Global) -> Result<AnyAlgebra> {
    let alg = AnyAlgebra::load(path)?;
    match &g.field {
        Some(f) => {
            let target: FieldDescriptor = f.parse()?;
            if target == alg.descriptor() {
                Ok(alg)
            } else {
                alg.over(target)
            }
        }
        None => Ok(alg),
    }
}

fn save<K: Field>(rep: &mut RunReport, alg: &Algebra<K>, out: &Path) -> Result<()> {
    alg.save(out)?;
    rep.outputs.push(out.display().to_string());
    Ok(())
}

pub fn execute(command: &Command, g: &Global, rep: &mut RunReport) -> Result<Policy> {
    match command {
        Command::Check { algebra, names, identity_files, samples } => {
            let a = load(algebra, g)?;
            with_algebra!(&a, a => check(a, names, identity_files, *samples, g, rep))?;
        }
        Command::Derive { algebra, product, out } => {
            let a = load(algebra, g)?;
            with_algebra!(&a, a => derive(a, product, out, rep))?;
        }
        Command::Ann { algebra, kind } => {
            let a = load(algebra, g)?;
            let kind: AnnihilatorKind = kind.parse()?;
            with_algebra!(&a, a => ann(a, kind, rep))?;
        }
        Command::Quotient { algebra, ann, generators, out, checks } => {
            let a = load(algebra, g)?;
            with_algebra!(&a, a => quotient(a, ann.as_deref(), generators.as_deref(), out, checks, g, rep))?;
        }
        Command::Closure { algebra, generators } => {
            let a = load(algebra, g)?;
            with_algebra!(&a, a => closure(a, generators, g, rep))?;
        }
        Command::Simple { algebra, kind, expect } => {
            let a = load(algebra, g)?;
            let kind: AnnihilatorKind = kind.parse()?;
            with_algebra!(&a, a => simple(a, kind, expect.as_deref(), g, rep))?;
        }
        Command::Units { algebra } => {
            let a = load(algebra, g)?;
            with_algebra!(&a, a => units(a, rep))?;
        }
        Command::Prove { target } => prove(target, rep)?,
        Command::Example { name, params, out, list, all } => example(name.as_deref(), params, out.as_deref(), *list, all.as_deref(), g, rep)?,
        Command::Bimodule { algebra, kind, out } => {
            let a = load(algebra, g)?;
            let kind: AnnihilatorKind = kind.parse()?;
            with_algebra!(&a, a => bimodule(a, kind, out.as_deref(), g, rep))?;
        }
        Command::Classify { algebra } => {
            let a = load(algebra, g)?;
            with_algebra!(&a, a => classify(a, g, rep))?;
            return Ok(Policy::Informational);
        }
    }
    Ok(Policy::Verify)
}

fn check<K: Field>(
    alg: &Algebra<K>,
    names: &[String],
    files: &[std::path::PathBuf],
    samples: Option<usize>,
    g: &Global,
    rep: &mut RunReport,
) -> Result<()> {
    if names.is_empty() && files.is_empty() {
        return Err(Error::Schema("nothing to check: name a suite, an identity or an identity file".into()));
    }
    let opts = match samples {
        Some(n) => CheckOptions::random(n, g.seed),
        None => CheckOptions::exhaustive(),
    }
    .parallel(g.parallel);
    for name in names {
        match name.parse::<Class>() {
            Ok(class) => {
                push_suite(rep, alg, "", class, &opts)?;
            }
            Err(_) => {
                let r = check_identity(alg, &lookup(name)?, &opts)?;
                rep.push(check_result(alg, name.clone(), &r)?);
            }
        }
    }
    for f in files {
        let id = IdentityDef::from_json(&std::fs::read_to_string(f)?)?;
        let r = check_identity(alg, &id, &opts)?;
        rep.push(check_result(alg, id.name.clone(), &r)?);
    }
    Ok(())
}

fn derive<K: Field>(alg: &Algebra<K>, product: &str, out: &Path, rep: &mut RunReport) -> Result<()> {
    let d = if product == "bullet" { derive_bullet(alg)? } else { derive_angle(alg)? };
    save(rep, &d, out)?;
    rep.push(CheckResult::new("derived", Status::Info, format!("{} ({}-dim) from {}", d.name(), d.dim(), alg.name())));
    if let Some(p) = d.provenance() {
        for w in &p.warnings {
            rep.push(CheckResult::new("provenance", Status::Info, w.clone()));
        }
    }
    if product == "bullet" {
        match find_right_units(&d)? {
            Some(u) => rep.push(
                CheckResult::new(
                    "right-units",
                    Status::Info,
                    format!("{} + {}", d.format_vector(&u.particular), subspace_text(&d, &u.directions)),
                )
                .with_data(json!({ "particular": vector_json(&d, &u.particular), "directions": subspace_json(&d, &u.directions) })),
            ),
            None => rep.push(CheckResult::new("right-units", Status::Info, "none")),
        }
    }
    Ok(())
}

fn ann<K: Field>(alg: &Algebra<K>, kind: AnnihilatorKind, rep: &mut RunReport) -> Result<()> {
    let s = annihilator(alg, kind);
    rep.push(
        CheckResult::new("annihilator", Status::Info, format!("{kind} annihilator: dim {}, {}", s.dim(), subspace_text(alg, &s)))
            .with_data(json!({ "kind": kind, "dim": s.dim(), "basis": subspace_json(alg, &s) })),
    );
    let w = is_ideal(alg, &s)?;
    let detail = match &w {
        None => "annihilator is a two-sided ideal".to_string(),
        Some(w) => w.describe(alg),
    };
    rep.push(CheckResult::pass_if("is-ideal", w.is_none(), detail));
    Ok(())
}

fn quotient<K: Field>(
    alg: &Algebra<K>,
    ann: Option<&str>,
    generators: Option<&str>,
    out: &Path,
    checks: &[String],
    g: &Global,
    rep: &mut RunReport,
) -> Result<()> {
    let ideal = match (ann, generators) {
        (Some(kind), _) => annihilator(alg, kind.parse()?),
        (None, Some(text)) => ideal_closure(alg, &parse_vectors(alg, text)?, g.max_closure_iters)?,
        (None, None) => return Err(Error::Schema("quotient needs --ann or --generators".into())),
    };
    let q = quotient_algebra(alg, &ideal)?;
    save(rep, &q.algebra, out)?;
    let reps: Vec<&str> = q.representatives.iter().map(|&i| alg.basis_names()[i].as_str()).collect();
    rep.push(CheckResult::new(
        "quotient",
        Status::Info,
        format!("{}: dim {} by an ideal of dim {}, representatives [{}]", q.algebra.name(), q.algebra.dim(), ideal.dim(), reps.join(", ")),
    ));
    for c in checks {
        let class: Class = c.parse()?;
        push_suite(rep, &q.algebra, "quotient/", class, &check_options(g))?;
    }
    Ok(())
}

fn closure<K: Field>(alg: &Algebra<K>, generators: &str, g: &Global, rep: &mut RunReport) -> Result<()> {
    let s = ideal_closure(alg, &parse_vectors(alg, generators)?, g.max_closure_iters)?;
    rep.push(
        CheckResult::new("closure", Status::Info, format!("ideal of dim {}: {}", s.dim(), subspace_text(alg, &s)))
            .with_data(json!({ "dim": s.dim(), "basis": subspace_json(alg, &s) })),
    );
    Ok(())
}

fn simple<K: Field>(alg: &Algebra<K>, kind: AnnihilatorKind, expect: Option<&str>, g: &Global, rep: &mut RunReport) -> Result<()> {
    let opts = SimplicityOptions {
        max_enum: g.max_enum,
        random_trials: 64,
        seed: g.seed,
        max_closure_iters: g.max_closure_iters,
    };
    let v = is_simple(alg, kind, &opts)?;
    let (detail, data) = match &v {
        SimplicityVerdict::NotSimple { generator, witness } => (
            format!(
                "the ideal generated by {} is {} (dim {})",
                alg.format_vector(generator),
                subspace_text(alg, witness),
                witness.dim()
            ),
            json!({ "generator": vector_json(alg, generator), "witness": subspace_json(alg, witness) }),
        ),
        SimplicityVerdict::Simple { generators_checked } => {
            (format!("exhaustive over {generators_checked} projective generators"), json!({ "generators_checked": generators_checked }))
        }
        SimplicityVerdict::ProbablySimple { generators_checked } => (
            format!("no forbidden ideal among {generators_checked} generators; not a proof over an infinite field"),
            json!({ "generators_checked": generators_checked }),
        ),
        SimplicityVerdict::AnnihilatorZero => (format!("{kind} annihilator is zero"), Value::Null),
        SimplicityVerdict::AnnihilatorIsWholeAlgebra => (format!("{kind} annihilator is the whole algebra"), Value::Null),
    };
    let status = match expect {
        Some(e) if e.eq_ignore_ascii_case(v.label()) => Status::Pass,
        Some(_) => Status::Fail,
        None => Status::Info,
    };
    let mut data = data;
    if let Value::Object(m) = &mut data {
        m.insert("verdict".into(), Value::String(v.label().into()));
    } else {
        data = json!({ "verdict": v.label() });
    }
    rep.push(CheckResult::new("simplicity", status, format!("{}: {detail}", v.label())).with_data(data));
    if let SimplicityVerdict::NotSimple { witness, .. } = &v {
        let w = is_ideal(alg, witness)?;
        rep.push(CheckResult::pass_if(
            "witness-is-ideal",
            w.is_none(),
            w.map(|w| w.describe(alg)).unwrap_or_else(|| "witness is a two-sided ideal".into()),
        ));
    }
    Ok(())
}

fn units<K: Field>(alg: &Algebra<K>, rep: &mut RunReport) -> Result<()> {
    match find_right_units(alg)? {
        Some(u) => rep.push(
            CheckResult::new(
                "right-units",
                Status::Info,
                format!("{} + {}", alg.format_vector(&u.particular), subspace_text(alg, &u.directions)),
            )
            .with_data(json!({ "particular": vector_json(alg, &u.particular), "directions": subspace_json(alg, &u.directions) })),
        ),
        None => rep.push(CheckResult::new("right-units", Status::Info, "no right unit")),
    }
    Ok(())
}

fn prove(target: &str, rep: &mut RunReport) -> Result<()> {
    let report = prover::prove(target)?;
    for step in &report.steps {
        let data = serde_json::to_value(step)?;
        let r = match step {
            ProofStep::Expansion(e) => {
                let residue: Vec<String> = e.residue.iter().map(|m| format!("{}·{}", m.coeff, m.monomial)).collect();
                CheckResult::pass_if(
                    format!("{target}/{}", e.identity),
                    e.residue.is_empty(),
                    if residue.is_empty() { "residue 0".to_string() } else { format!("residue {}", residue.join(" + ")) },
                )
            }
            ProofStep::Congruence(c) => CheckResult::pass_if(
                format!("{target}/{}~{}", c.left, c.right),
                c.verdict == "equivalent",
                format!(
                    "{}{} modulo {} in multidegree {:?} (monomials {}, consequences {})",
                    c.verdict,
                    c.scalar.as_ref().map(|s| format!(" with scalar {s}")).unwrap_or_default(),
                    c.relations.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", "),
                    c.multidegree,
                    c.monomial_dim,
                    c.consequence_dim
                ),
            ),
        };
        rep.push(r.with_data(data));
    }
    for n in &report.notes {
        rep.push(CheckResult::new("note", Status::Info, n.clone()));
    }
    Ok(())
}

fn find_recipe(name: &str, params: &[usize]) -> Option<ExampleRecipe> {
    gallery::recipes().into_iter().find(|r| r.name == name && r.parameters == params)
}

fn verify_expectations<K: Field>(alg: &Algebra<K>, r: &ExampleRecipe, g: &Global, rep: &mut RunReport) -> Result<Vec<String>> {
    let opts = check_options(g);
    let mut flags = Vec::new();
    for &c in &r.expect_pass {
        let s = check_suite(alg, c, &opts)?;
        let detail = match s.first_failure() {
            None => format!("{} holds", c.label()),
            Some(f) => f.summary(alg),
        };
        if s.holds() && matches!(c, Class::Associative | Class::Alternative) {
            flags.push(c.label().to_string());
        }
        rep.push(CheckResult::pass_if(format!("expect/{}", c.suite_name()), s.holds(), detail));
    }
    for &c in &r.expect_fail {
        let s = check_suite(alg, c, &opts)?;
        let r = match s.first_failure() {
            Some(f) => {
                let ok = f.recheck(alg)?;
                CheckResult::pass_if(format!("expect-not/{}", c.suite_name()), ok, f.summary(alg)).with_data(check_json(alg, f)?)
            }
            None => CheckResult::new(format!("expect-not/{}", c.suite_name()), Status::Fail, format!("every {} identity holds", c.label())),
        };
        rep.push(r);
    }
    Ok(flags)
}

fn emit_example<K: Field>(k: &K, name: &str, params: &[usize], out: &Path, g: &Global, rep: &mut RunReport) -> Result<()> {
    let alg = gallery::build_example(k, name, params)?;
    let flags = match find_recipe(name, params) {
        Some(r) => verify_expectations(&alg, &r, g, rep)?,
        None => Vec::new(),
    };
    let alg = alg.with_flags(flags);
    rep.push(CheckResult::new(
        "example",
        Status::Info,
        format!("{} ({}-dim over {}), flags [{}]", alg.name(), alg.dim(), k.descriptor(), alg.flags().join(", ")),
    ));
    save(rep, &alg, out)
}

fn example(
    name: Option<&str>,
    params: &[usize],
    out: Option<&Path>,
    list: bool,
    all: Option<&Path>,
    g: &Global,
    rep: &mut RunReport,
) -> Result<()> {
    if list {
        for n in gallery::example_names() {
            let d = gallery::recipes().into_iter().find(|r| r.name == n).map(|r| r.description).unwrap_or_default();
            rep.push(CheckResult::new(n, Status::Info, d));
        }
        return Ok(());
    }
    if let Some(dir) = all {
        let m = gallery::gallery_manifest(dir, &check_options(g))?;
        for e in &m.entries {
            rep.push(CheckResult::new(
                e.file.clone(),
                Status::Pass,
                format!("{} ({}-dim over {}), expectations verified, sha256 {}", e.name, e.dim, e.field, e.sha256),
            ));
        }
        rep.outputs.push(dir.join("manifest.json").display().to_string());
        return Ok(());
    }
    let name = name.ok_or_else(|| Error::Schema("example needs a name, --list or --all".into()))?;
    let out = out.ok_or_else(|| Error::Schema("example needs --out".into()))?;
    let params: Vec<usize> = if name == "block-triangular" && params.is_empty() { vec![1, 1] } else { params.to_vec() };
    let field: FieldDescriptor = match &g.field {
        Some(f) => f.parse()?,
        None => FieldDescriptor::Rationals,
    };
    match field {
        FieldDescriptor::Rationals => emit_example(&Rationals, name, &params, out, g, rep),
        FieldDescriptor::PrimeField(p) => emit_example(&PrimeField::new(p)?, name, &params, out, g, rep),
    }
}

fn bimodule<K: Field>(alg: &Algebra<K>, kind: AnnihilatorKind, out: Option<&Path>, g: &Global, rep: &mut RunReport) -> Result<()> {
    let opts = check_options(g);
    let (pre, target) = match kind {
        AnnihilatorKind::Jordan => (Class::GeneralizedJordan, Class::Jordan),
        AnnihilatorKind::Malcev => (Class::GeneralizedMalcev, Class::Malcev),
    };
    if !push_suite(rep, alg, "precondition/", pre, &opts)? {
        return Ok(());
    }
    let c = module_action_from_annihilator(alg, kind)?;
    let sign = match c.sign {
        ActionSign::Symmetric => "x̄u = u·x̄",
        ActionSign::Antisymmetric => "x̄u = -u·x̄",
    };
    rep.push(CheckResult::new(
        "module",
        Status::Info,
        format!(
            "base {} (dim {}), space {} (dim {}), {sign}",
            c.action.base.name(),
            c.action.base.dim(),
            subspace_text(alg, &c.annihilator),
            c.action.space_dim
        ),
    ));
    if c.well_defined() {
        rep.push(CheckResult::new("well-defined", Status::Pass, "annihilator elements multiply to zero"));
    }
    for f in &c.findings {
        rep.push(CheckResult::new(
            "well-defined",
            Status::Fail,
            format!("({})·({}) = {}", alg.format_vector(&f.left), alg.format_vector(&f.right), alg.format_vector(&f.product)),
        ));
    }
    let ext = c.extension()?;
    push_suite(rep, &ext, "extension/", target, &opts)?;
    if let Some(out) = out {
        save(rep, &ext, out)?;
    }
    Ok(())
}

fn classify<K: Field>(alg: &Algebra<K>, g: &Global, rep: &mut RunReport) -> Result<()> {
    let opts = check_options(g);
    for s in z2alg_core::identity::classify(alg, &opts)? {
        let detail = match s.first_failure() {
            None => format!("{} ({} identities hold)", s.class.label(), s.reports.len()),
            Some(f) => format!("not {}: {}", s.class.label(), f.summary(alg)),
        };
        rep.push(CheckResult::pass_if(s.class.suite_name(), s.holds(), detail));
    }
    Ok(())
}

/// Exit status for an error: failed mathematical verification is 1,
/// everything else (input, schema, budget) is 2.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotAnIdeal(_) | Error::FlagViolation { .. } | Error::Expectation { .. } => 1,
        _ => 2,
    }
}
