//! One function per command. Each returns an [`Outcome`] carrying a JSON
//! report, a text rendering and the exit code.

use std::fmt::Write as _;
use std::sync::Arc;

use carpet_jder::classify::{
    decompose, decompose_n3, extremal_subgroup, solve_derivation_group, solve_jordan_group, theorem_check,
    DerivationGroup, SolverBounds, StageOutcome,
};
use carpet_jder::constructions::{
    build_a2, build_a3, build_almost_annihilator, build_annihilator, build_diagonal, build_extremal, build_inner,
    build_ring, A2Params, A3Params, AlmostAnnihilatorParams, AnnihilatorParams, ExtremalParams, RingDerivParams,
};
use carpet_jder::linalg::SubgroupBasis;
use carpet_jder::matrix::{MatrixElement, StructuralMatrixRing};
use carpet_jder::ring::AdditiveMap;
use carpet_jder::table::{Counterexample, DerivationTable};
use carpet_jder::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::config::{parse_elements, parse_matrix, Codomain, Command, Domain};
use crate::session::{element, InputError, Session};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// What a command produced.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub json: Value,
    pub text: String,
}

/// A command: one of the session commands, or the randomized self-check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Action {
    Session(Command),
    PropertyTest,
}

impl Action {
    pub fn name(self) -> &'static str {
        match self {
            Action::Session(c) => c.name(),
            Action::PropertyTest => "property-test",
        }
    }
}

pub(crate) enum Failure {
    Input(InputError),
    Core(Error),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

/// Exit code for a library error: 1 when the mathematics says no, 2 when the
/// input or the bounds rule the question out.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotJordan(_) | Error::StageFailure { .. } | Error::InvalidParams(_) => EXIT_FAILED,
        _ => EXIT_USAGE,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::NotJordan(_) => "not-jordan",
        Error::StageFailure { .. } => "stage-failure",
        Error::InvalidParams(_) => "invalid-parameters",
        Error::TwoTorsion { .. } => "two-torsion",
        Error::BoundExceeded(_) => "bound-exceeded",
        Error::DimensionTooSmall { .. } => "dimension-too-small",
        _ => "input",
    }
}

pub(crate) fn failure_outcome(command: &str, f: Failure) -> Outcome {
    match f {
        Failure::Input(e) => error_outcome(command, EXIT_USAGE, "input", e.to_string(), Value::Null),
        Failure::Core(e) => {
            let extra = match &e {
                Error::NotJordan(c) => json!({ "counterexample": counterexample_json(c) }),
                Error::TwoTorsion { witness } => json!({ "witness": witness.to_string() }),
                _ => Value::Null,
            };
            error_outcome(command, exit_code(&e), error_kind(&e), e.to_string(), extra)
        }
    }
}

pub(crate) fn error_outcome(command: &str, code: i32, kind: &str, message: String, extra: Value) -> Outcome {
    let mut error = json!({ "kind": kind, "message": message });
    if let Value::Object(m) = extra {
        error.as_object_mut().expect("object").extend(m);
    }
    Outcome {
        code,
        json: json!({ "command": command, "verdict": false, "error": error }),
        text: format!("{command}: error: {message}\n"),
    }
}

pub(crate) fn execute(action: Action, s: &Session, bounds: SolverBounds, seed: u64) -> Outcome {
    let result = match action {
        Action::Session(Command::Verify) => verify(s),
        Action::Session(Command::Solve) => solve(s, bounds),
        Action::Session(Command::Decompose) => run_decompose(s),
        Action::Session(Command::TheoremCheck) => run_theorem(s, bounds),
        Action::Session(Command::Build) => build(s),
        Action::Session(Command::Annihilator) => annihilator(s),
        Action::PropertyTest => property_test(s, bounds, seed),
    };
    result.unwrap_or_else(|f| failure_outcome(action.name(), f))
}

fn ring_json(s: &Session) -> Value {
    let r = &s.ring;
    json!({
        "coefficients": s.config.ring.to_string(),
        "ideal": r.ideal().basis().elements().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "n": r.size(),
        "order": r.order().to_string(),
    })
}

fn ring_line(s: &Session) -> String {
    let gens: Vec<String> = s.ring.ideal().basis().elements().iter().map(|x| x.to_string()).collect();
    format!(
        "ring: R_{}(K, J), K = {}, J = {}, |R| = {}\n",
        s.ring.size(),
        s.config.ring,
        if gens.is_empty() { "0".to_string() } else { format!("<{}>", gens.join(", ")) },
        s.ring.order()
    )
}

fn counterexample_json(c: &Counterexample) -> Value {
    json!({
        "u": c.u_matrix.to_string(),
        "v": c.v_matrix.to_string(),
        "lhs": c.lhs.to_string(),
        "rhs": c.rhs.to_string(),
    })
}

/// Nonzero images, in generator order.
fn table_json(t: &DerivationTable) -> Value {
    let r = t.ring();
    let rows: Vec<Value> = t
        .images()
        .iter()
        .enumerate()
        .filter(|(_, m)| !m.is_zero())
        .map(|(i, m)| json!({ "generator": r.generator(i).to_string(), "image": m.to_string() }))
        .collect();
    Value::Array(rows)
}

fn write_table(out: &mut String, indent: &str, t: &DerivationTable) {
    let r = t.ring();
    let mut any = false;
    for (i, m) in t.images().iter().enumerate().filter(|(_, m)| !m.is_zero()) {
        any = true;
        let _ = writeln!(out, "{indent}{} -> {m}", r.generator(i));
    }
    if !any {
        let _ = writeln!(out, "{indent}(zero)");
    }
}

fn map_json(m: &AdditiveMap) -> Value {
    let pairs: Vec<String> = m
        .domain()
        .basis()
        .elements()
        .iter()
        .zip(m.images())
        .map(|(x, y)| format!("{x} -> {y}"))
        .collect();
    json!(pairs)
}

fn map_text(m: &AdditiveMap) -> String {
    if m.is_zero() {
        return "0".into();
    }
    let pairs: Vec<String> = m
        .domain()
        .basis()
        .elements()
        .iter()
        .zip(m.images())
        .map(|(x, y)| format!("{x} -> {y}"))
        .collect();
    pairs.join(", ")
}

fn stages_json(stages: &[StageOutcome]) -> Value {
    Value::Array(
        stages
            .iter()
            .map(|s| json!({ "name": s.name, "ok": s.ok, "detail": s.detail }))
            .collect(),
    )
}

fn write_stages(out: &mut String, stages: &[StageOutcome]) {
    for s in stages {
        let _ = writeln!(out, "  {s}");
    }
}

fn verdict_line(ok: bool) -> &'static str {
    if ok {
        "verdict: PASS\n"
    } else {
        "verdict: FAIL\n"
    }
}

fn verify(s: &Session) -> Result<Outcome, Failure> {
    let (name, t) = s.run_table()?;
    let jordan = t.verify_jordan();
    let leibniz = t.verify_derivation();
    let check = |r: &Result<(), Counterexample>| match r {
        Ok(()) => json!({ "ok": true, "counterexample": null }),
        Err(c) => json!({ "ok": false, "counterexample": counterexample_json(c) }),
    };
    let verdict = jordan.is_ok();
    let mut text = ring_line(s);
    let _ = writeln!(text, "table: {name}");
    for (label, r) in [("jordan identity", &jordan), ("leibniz rule", &leibniz)] {
        match r {
            Ok(()) => {
                let _ = writeln!(text, "{label}: holds");
            }
            Err(c) => {
                let _ = writeln!(text, "{label}: fails at {c}");
            }
        }
    }
    text.push_str(verdict_line(verdict));
    Ok(Outcome {
        code: if verdict { EXIT_OK } else { EXIT_FAILED },
        json: json!({
            "command": "verify",
            "ring": ring_json(s),
            "table": name,
            "jordan": check(&jordan),
            "derivation": check(&leibniz),
            "verdict": verdict,
        }),
        text,
    })
}

fn group_json(g: &DerivationGroup) -> Value {
    Value::Array(g.tables().iter().map(table_json).collect())
}

fn solve(s: &Session, bounds: SolverBounds) -> Result<Outcome, Failure> {
    let r = &s.ring;
    let jder = solve_jordan_group(r, bounds)?;
    let der = solve_derivation_group(r, bounds)?;
    let (extremal, sum) = if r.size() >= 4 {
        let e = extremal_subgroup(r)?;
        let sum = der.sum(&e)?;
        (Some(e.order().to_string()), Some(sum.order().to_string()))
    } else {
        (None, None)
    };
    let index = jder.order() / der.order();
    let mut text = ring_line(s);
    let _ = writeln!(text, "|JDer| = {}", jder.order());
    let _ = writeln!(text, "|Der| = {}", der.order());
    if let (Some(e), Some(sum)) = (&extremal, &sum) {
        let _ = writeln!(text, "|Extremal| = {e}");
        let _ = writeln!(text, "|Der + Extremal| = {sum}");
    }
    let _ = writeln!(text, "[JDer : Der] = {index}");
    let _ = writeln!(text, "JDer basis: {} tables, Der basis: {} tables", jder.basis().generators().len(), der.basis().generators().len());
    Ok(Outcome {
        code: EXIT_OK,
        json: json!({
            "command": "solve",
            "ring": ring_json(s),
            "orders": {
                "jder": jder.order().to_string(),
                "der": der.order().to_string(),
                "extremal": extremal,
                "der_plus_extremal": sum,
            },
            "index": index.to_string(),
            "jder_basis": group_json(&jder),
            "der_basis": group_json(&der),
            "verdict": true,
        }),
        text,
    })
}

fn run_decompose(s: &Session) -> Result<Outcome, Failure> {
    let (name, t) = s.run_table()?;
    let r = &s.ring;
    let mut text = ring_line(s);
    let _ = writeln!(text, "table: {name}");
    if r.size() == 3 {
        let rep = decompose_n3(&t)?;
        let verdict = rep.reconstruction_ok && rep.stages.iter().all(|st| st.ok);
        write_stages(&mut text, &rep.stages);
        let parts = &rep.parts;
        write_parts(&mut text, parts);
        let a2 = &rep.a2_params;
        let _ = writeln!(text, "first family: alpha1 = {}; alpha2 = {}", map_text(&a2.alpha1), map_text(&a2.alpha2));
        let a3 = &rep.a3_params;
        let _ = writeln!(text, "second family:");
        for (label, m) in a3_maps(a3) {
            let _ = writeln!(text, "  {label} = {}", map_text(m));
        }
        if let Some(v) = &rep.a3_violation {
            let _ = writeln!(text, "  note: {v}");
        }
        let _ = writeln!(text, "reconstruction: {}", if rep.reconstruction_ok { "ok" } else { "failed" });
        text.push_str(verdict_line(verdict));
        let a3_json: serde_json::Map<String, Value> = a3_maps(a3).into_iter().map(|(k, m)| (k.to_string(), map_json(m))).collect();
        return Ok(Outcome {
            code: if verdict { EXIT_OK } else { EXIT_FAILED },
            json: json!({
                "command": "decompose",
                "ring": ring_json(s),
                "table": name,
                "stages": stages_json(&rep.stages),
                "parts": parts_json(parts),
                "first_family": { "alpha1": map_json(&a2.alpha1), "alpha2": map_json(&a2.alpha2) },
                "second_family": a3_json,
                "second_family_violation": rep.a3_violation.as_ref().map(|v| v.to_string()),
                "reconstruction_ok": rep.reconstruction_ok,
                "verdict": verdict,
            }),
            text,
        });
    }
    let rep = decompose(&t)?;
    let verdict = rep.reconstruction_ok && rep.stages.iter().all(|st| st.ok);
    write_stages(&mut text, &rep.stages);
    write_parts(&mut text, &rep.parts);
    let al = &rep.almost_params;
    let _ = writeln!(
        text,
        "almost-annihilator: alpha = {}; beta = {}; gamma = {}",
        map_text(&al.alpha),
        map_text(&al.beta),
        map_text(&al.gamma)
    );
    let ex = &rep.extremal_params;
    let _ = writeln!(
        text,
        "extremal: alpha = {}; beta = {}; gamma = {}",
        map_text(&ex.alpha),
        map_text(&ex.beta),
        map_text(&ex.gamma)
    );
    let _ = writeln!(text, "extremal table:");
    write_table(&mut text, "  ", &rep.extremal);
    let _ = writeln!(text, "reconstruction: {}", if rep.reconstruction_ok { "ok" } else { "failed" });
    text.push_str(verdict_line(verdict));
    Ok(Outcome {
        code: if verdict { EXIT_OK } else { EXIT_FAILED },
        json: json!({
            "command": "decompose",
            "ring": ring_json(s),
            "table": name,
            "stages": stages_json(&rep.stages),
            "parts": parts_json(&rep.parts),
            "almost_annihilator": {
                "alpha": map_json(&al.alpha),
                "beta": map_json(&al.beta),
                "gamma": map_json(&al.gamma),
            },
            "extremal": {
                "alpha": map_json(&ex.alpha),
                "beta": map_json(&ex.beta),
                "gamma": map_json(&ex.gamma),
            },
            "derivation_table": table_json(&rep.derivation()),
            "extremal_table": table_json(&rep.extremal),
            "reconstruction_ok": rep.reconstruction_ok,
            "verdict": verdict,
        }),
        text,
    })
}

fn a3_maps(p: &A3Params) -> [(&'static str, &AdditiveMap); 8] {
    [
        ("delta1", &p.delta[0]),
        ("delta2", &p.delta[1]),
        ("delta3", &p.delta[2]),
        ("beta1", &p.beta[0]),
        ("beta2", &p.beta[1]),
        ("beta3", &p.beta[2]),
        ("theta", &p.theta),
        ("gamma", &p.gamma),
    ]
}

fn parts_json(p: &carpet_jder::classify::DerivationParts) -> Value {
    json!({
        "diagonal": p.d.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "inner": { "a": p.a.to_string(), "b": p.b.to_string() },
        "annihilator": {
            "sigma_n": map_json(&p.sigma.sigma_n),
            "sigmas": p.sigma.sigmas.iter().map(map_json).collect::<Vec<_>>(),
        },
        "ring": map_json(&p.pi.pi),
    })
}

fn write_parts(out: &mut String, p: &carpet_jder::classify::DerivationParts) {
    let d: Vec<String> = p.d.iter().map(|x| x.to_string()).collect();
    let _ = writeln!(out, "diagonal: d = ({})", d.join(", "));
    let _ = writeln!(out, "inner: a = {}, b = {}", p.a, p.b);
    let _ = writeln!(out, "annihilator: sigma_n = {}", map_text(&p.sigma.sigma_n));
    for (i, m) in p.sigma.sigmas.iter().enumerate() {
        let _ = writeln!(out, "  sigma_{} = {}", i + 1, map_text(m));
    }
    let _ = writeln!(out, "ring: pi = {}", map_text(&p.pi.pi));
}

fn run_theorem(s: &Session, bounds: SolverBounds) -> Result<Outcome, Failure> {
    let rep = theorem_check(&s.ring, bounds)?;
    let mut text = ring_line(s);
    let _ = writeln!(text, "|JDer| = {}", rep.jder.order());
    let _ = writeln!(text, "|Der| = {}", rep.der.order());
    let _ = writeln!(text, "|Extremal| = {}", rep.extremal.order());
    let _ = writeln!(text, "|Der + Extremal| = {}", rep.der_plus_extremal.order());
    write_stages(&mut text, &rep.stages);
    text.push_str(verdict_line(rep.verdict));
    Ok(Outcome {
        code: if rep.verdict { EXIT_OK } else { EXIT_FAILED },
        json: json!({
            "command": "theorem-check",
            "ring": ring_json(s),
            "orders": {
                "jder": rep.jder.order().to_string(),
                "der": rep.der.order().to_string(),
                "extremal": rep.extremal.order().to_string(),
                "der_plus_extremal": rep.der_plus_extremal.order().to_string(),
            },
            "ratio": rep.ratio.to_string(),
            "stages": stages_json(&rep.stages),
            "verdict": rep.verdict,
        }),
        text,
    })
}

/// Parameter slots of each buildable family, as `(name, domain, codomain)`.
fn slots(family: &str, n: usize) -> Option<Vec<(String, Domain, Codomain)>> {
    use Codomain as C;
    use Domain as D;
    let named = |v: &[(&str, D, C)]| v.iter().map(|(a, d, c)| (a.to_string(), *d, *c)).collect::<Vec<_>>();
    Some(match family {
        "inner" | "diagonal" => vec![],
        "annihilator" => {
            let mut v = vec![("sigma_n".to_string(), D::J, C::Ann)];
            v.extend((1..n).map(|i| (format!("sigma_{i}"), D::K, C::Ann)));
            v
        }
        "ring" => named(&[("pi", D::K, C::K)]),
        "almost-annihilator" => named(&[("alpha", D::J, C::J), ("beta", D::J, C::J), ("gamma", D::J, C::K)]),
        "extremal" => named(&[("alpha", D::J, C::Ann), ("beta", D::J, C::Ann), ("gamma", D::J, C::Ann)]),
        "a2" => named(&[("alpha1", D::J, C::Ann), ("alpha2", D::J, C::Ann)]),
        "a3" => named(&[
            ("delta1", D::J, C::J),
            ("delta2", D::J, C::J),
            ("delta3", D::J, C::J),
            ("beta1", D::J, C::K),
            ("beta2", D::J, C::K),
            ("beta3", D::J, C::K),
            ("theta", D::J, C::K),
            ("gamma", D::J, C::K),
        ]),
        _ => return None,
    })
}

pub const FAMILIES: [&str; 8] = [
    "inner",
    "diagonal",
    "annihilator",
    "ring",
    "almost-annihilator",
    "extremal",
    "a2",
    "a3",
];

fn bare(msg: impl Into<String>) -> InputError {
    InputError { span: None, msg: msg.into() }
}

fn build_table(s: &Session, family: &str) -> Result<DerivationTable, Failure> {
    let r = &s.ring;
    let params = &s.config.run.params;
    let slots = slots(family, r.size())
        .ok_or_else(|| bare(format!("unknown family '{family}' (one of {})", FAMILIES.join(", "))))?;
    let literal_keys: &[&str] = match family {
        "inner" => &["a"],
        "diagonal" => &["d"],
        _ => &[],
    };
    for key in params.keys() {
        if !slots.iter().any(|(n, _, _)| n == key) && !literal_keys.contains(&key.as_str()) {
            return Err(bare(format!("family '{family}' has no parameter '{key}'")).into());
        }
    }
    let mut maps = std::collections::BTreeMap::new();
    for (name, dom, cod) in &slots {
        let m = match params.get(name) {
            Some(target) => s.map(target, *dom, *cod)?,
            None => s.map_zero(*dom, *cod)?,
        };
        maps.insert(name.clone(), m);
    }
    let mut take = |k: &str| maps.remove(k).expect("slot resolved");
    let lit_span = crate::config::Span { line: 0, col: 0 };
    let t = match family {
        "inner" => {
            let text = params.get("a").map_or("0", String::as_str);
            let lit = parse_matrix(text).map_err(|e| bare(format!("parameter a: {e}")))?;
            let a = s.matrix(&lit, lit_span)?;
            build_inner(r, &a)?
        }
        "diagonal" => {
            let d = match params.get("d") {
                Some(text) => parse_elements(text)
                    .map_err(|e| bare(format!("parameter d: {e}")))?
                    .iter()
                    .map(|lit| element(s.k(), lit, lit_span))
                    .collect::<Result<Vec<_>, _>>()?,
                None => vec![s.k().zero(); r.size()],
            };
            build_diagonal(r, &d)?
        }
        "annihilator" => {
            let sigma_n = take("sigma_n");
            let sigmas = (1..r.size()).map(|i| take(&format!("sigma_{i}"))).collect();
            build_annihilator(r, &AnnihilatorParams { sigma_n, sigmas })?
        }
        "ring" => build_ring(r, &RingDerivParams { pi: take("pi") })?,
        "almost-annihilator" => build_almost_annihilator(
            r,
            &AlmostAnnihilatorParams {
                alpha: take("alpha"),
                beta: take("beta"),
                gamma: take("gamma"),
            },
        )?,
        "extremal" => build_extremal(
            r,
            &ExtremalParams {
                alpha: take("alpha"),
                beta: take("beta"),
                gamma: take("gamma"),
            },
        )?,
        "a2" => build_a2(
            r,
            &A2Params {
                alpha1: take("alpha1"),
                alpha2: take("alpha2"),
            },
        )?,
        "a3" => build_a3(
            r,
            &A3Params {
                delta: [take("delta1"), take("delta2"), take("delta3")],
                beta: [take("beta1"), take("beta2"), take("beta3")],
                theta: take("theta"),
                gamma: take("gamma"),
            },
        )?,
        _ => unreachable!("family checked above"),
    };
    Ok(t)
}

/// A session file holding `t` as table `name`, set up to verify it.
pub fn emit_config(s: &Session, name: &str, t: &DerivationTable) -> String {
    let r = t.ring();
    let mut out = String::new();
    let gens: Vec<String> = r.ideal().basis().elements().iter().map(|x| x.to_string()).collect();
    let _ = writeln!(out, "[ring]\nconstruct = {}\n", s.config.ring);
    let _ = writeln!(out, "[ideal]\ngenerators = {}\n", gens.join(", "));
    let _ = writeln!(out, "[matrix_ring]\nn = {}\n", r.size());
    let _ = writeln!(out, "[table {name}]");
    // rows at a position must generate its entry ideal, so a position with
    // any nonzero image lists all of its generators
    let n = r.size();
    for (i, j) in (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))) {
        let range = r.generators_at(i, j);
        if t.images()[range.clone()].iter().all(MatrixElement::is_zero) {
            continue;
        }
        for idx in range {
            let (g, m) = (r.generator(idx), t.image(idx));
            let lit = if m.is_zero() { "0".to_string() } else { matrix_literal(r, m) };
            let _ = writeln!(out, "gen ({},{}) {} -> {lit}", g.row, g.col, g.value);
        }
    }
    let _ = writeln!(out, "\n[run]\ncommand = verify\ntable = {name}");
    out
}

fn matrix_literal(r: &StructuralMatrixRing, m: &MatrixElement) -> String {
    let n = r.size();
    (1..=n)
        .map(|i| (1..=n).map(|j| m.entry(i, j).to_string()).collect::<Vec<_>>().join(", "))
        .collect::<Vec<_>>()
        .join("; ")
}

fn build(s: &Session) -> Result<Outcome, Failure> {
    let family = s
        .config
        .run
        .family
        .clone()
        .ok_or_else(|| bare("build needs 'family = ...' in [run]"))?;
    let t = build_table(s, &family)?;
    let jordan = t.verify_jordan().is_ok();
    let leibniz = t.verify_derivation().is_ok();
    let config = emit_config(s, &family, &t);
    let mut text = String::new();
    let _ = writeln!(text, "# {family} table over {}", s.config.ring);
    let _ = writeln!(text, "# jordan identity: {}, leibniz rule: {}", holds(jordan), holds(leibniz));
    text.push_str(&config);
    Ok(Outcome {
        code: if jordan { EXIT_OK } else { EXIT_FAILED },
        json: json!({
            "command": "build",
            "ring": ring_json(s),
            "family": family,
            "table": table_json(&t),
            "jordan": jordan,
            "derivation": leibniz,
            "config": config,
            "verdict": jordan,
        }),
        text,
    })
}

fn holds(ok: bool) -> &'static str {
    if ok {
        "holds"
    } else {
        "fails"
    }
}

fn subgroup_matrices(r: &Arc<StructuralMatrixRing>, g: &SubgroupBasis) -> Vec<String> {
    g.generators().iter().map(|c| r.from_coordinates(c).to_string()).collect()
}

fn annihilator(s: &Session) -> Result<Outcome, Failure> {
    let r = &s.ring;
    let ann = r.ann_r()?;
    let formula = r.ann_formula()?;
    let equal = ann == formula;
    let mut text = ring_line(s);
    let _ = writeln!(text, "Ann(R): order {}", ann.order());
    for m in subgroup_matrices(r, &ann) {
        let _ = writeln!(text, "  {m}");
    }
    let _ = writeln!(text, "closed form: order {}", formula.order());
    let _ = writeln!(text, "agree: {}", if equal { "yes" } else { "no" });
    text.push_str(verdict_line(equal));
    Ok(Outcome {
        code: if equal { EXIT_OK } else { EXIT_FAILED },
        json: json!({
            "command": "annihilator",
            "ring": ring_json(s),
            "ann": { "order": ann.order().to_string(), "generators": subgroup_matrices(r, &ann) },
            "closed_form": { "order": formula.order().to_string(), "generators": subgroup_matrices(r, &formula) },
            "verdict": equal,
        }),
        text,
    })
}

const DEFAULT_SAMPLES: usize = 8;

/// Decompose random elements of `JDer` and check each reassembles.
fn property_test(s: &Session, bounds: SolverBounds, seed: u64) -> Result<Outcome, Failure> {
    let r = &s.ring;
    let samples = s.config.run.samples.unwrap_or(DEFAULT_SAMPLES);
    let jder = solve_jordan_group(r, bounds)?;
    let space = DerivationTable::table_space(r);
    let gens = jder.basis().generators();
    let torsion_free = r.coefficient_ring().is_two_torsion_free();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for i in 0..samples {
        let flat = gens.iter().fold(space.zero(), |acc, g| {
            let c = rng.gen_range(0..space.element_order(g)) as i64;
            space.add(&acc, &space.scale(g, c))
        });
        let t = DerivationTable::from_flat(r.clone(), &flat)?;
        let problem = if let Err(c) = t.verify_jordan() {
            Some(format!("not Jordan: {c}"))
        } else if !torsion_free || r.size() < 3 {
            None
        } else if r.size() == 3 {
            match decompose_n3(&t) {
                Ok(rep) if rep.reconstruction_ok => None,
                Ok(_) => Some("reconstruction failed".into()),
                Err(e) => Some(e.to_string()),
            }
        } else {
            match decompose(&t) {
                Ok(rep) if rep.reconstruction_ok => None,
                Ok(_) => Some("reconstruction failed".into()),
                Err(e) => Some(e.to_string()),
            }
        };
        if let Some(p) = problem {
            failures.push(json!({ "sample": i, "problem": p, "table": table_json(&t) }));
        }
    }
    let verdict = failures.is_empty();
    let mut text = ring_line(s);
    let _ = writeln!(text, "seed {seed}: {} of {samples} random Jordan derivations passed", samples - failures.len());
    for f in &failures {
        let _ = writeln!(text, "  sample {}: {}", f["sample"], f["problem"].as_str().unwrap_or_default());
    }
    text.push_str(verdict_line(verdict));
    Ok(Outcome {
        code: if verdict { EXIT_OK } else { EXIT_FAILED },
        json: json!({
            "command": "property-test",
            "ring": ring_json(s),
            "seed": seed,
            "samples": samples,
            "passed": samples - failures.len(),
            "failures": failures,
            "verdict": verdict,
        }),
        text,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;

    #[test]
    fn emitted_config_reproduces_the_table() {
        let text = "[ring]\nconstruct = product(zmod(9), zmod(9))\n[ideal]\ngenerators = (3,0), (0,3)\n[matrix_ring]\nn = 4\n\
                    [map a]\n(3,0) -> (3,0)\n(0,3) -> (0,6)\n[run]\ncommand = build\nfamily = extremal\nalpha = a\ngamma = a\n";
        let s = Session::new(parse_config(text).unwrap()).unwrap();
        let t = build_table(&s, "extremal").ok().unwrap();
        assert!(!t.is_zero());
        let back = Session::new(parse_config(&emit_config(&s, "extremal", &t)).unwrap()).unwrap();
        let (_, u) = back.run_table().unwrap();
        assert_eq!(u.images(), t.images());
    }

    #[test]
    fn every_family_has_slots() {
        for f in FAMILIES {
            assert!(slots(f, 4).is_some(), "{f}");
        }
        assert!(slots("quadratic", 4).is_none());
    }
}
