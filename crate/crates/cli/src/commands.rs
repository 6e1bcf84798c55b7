use crate::args::Command;
use crate::text;
use serde_json::{json, Value};
use torfan::check::{run_checks, CheckOptions};
use torfan::degeneration::{default_degrees, limit_data, limit_exists, same_limit, sigma_subdivision};
use torfan::exact::{self, IntVec};
use torfan::git::{git_decomposition, real_fiber_fan};
use torfan::hilbert::{integral_multiplier, is_integral};
use torfan::oracle::lambda_grid_oracle;
use torfan::pipeline::Analysis;
use torfan::polyhedral::fan_refines;
use torfan::report as js;
use torfan::{load_instance, ToricInstance};

pub enum Failure {
    /// Bad arguments: exit code 2.
    Usage(String),
    /// Anything the computation rejects, and unreadable input: exit code 1.
    Domain(String),
}

impl From<torfan::Error> for Failure {
    fn from(e: torfan::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

pub struct Report {
    pub json: Value,
    pub text: String,
    /// False when `check` found a failure; the report is still printed.
    pub ok: bool,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report { json, text, ok: true }
    }
}

fn dims(flag: &str, v: &IntVec, expected: usize) -> Result<(), Failure> {
    if v.len() == expected {
        Ok(())
    } else {
        Err(Failure::Usage(format!(
            "--{flag} has {} entries, the instance needs {expected}",
            v.len()
        )))
    }
}

fn load(cmd: &Command) -> Result<ToricInstance, Failure> {
    let common = cmd.common();
    let path = &common.instance;
    let doc = std::fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
    let inst = load_instance(&doc).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
    Ok(match common.budget {
        Some(b) => inst.with_budget(b),
        None => inst,
    })
}

fn header(inst: &ToricInstance) -> Value {
    json!({
        "name": inst.name(),
        "n": inst.n(),
        "r": inst.r(),
    })
}

pub fn run(cmd: &Command) -> Result<Report, Failure> {
    let inst = load(cmd)?;
    match cmd {
        Command::Validate { .. } => validate(inst),
        Command::Fiber { chi, .. } => {
            dims("chi", chi, inst.r())?;
            fiber(inst, chi)
        }
        Command::Integral { chi, .. } => {
            dims("chi", chi, inst.r())?;
            integral(inst, chi)
        }
        Command::GitFan { .. } => git_fan(inst),
        Command::HilbertFan {
            oracle, oracle_bound, ..
        } => hilbert_fan(inst, oracle.then_some(*oracle_bound)),
        Command::FamilyFan { .. } => family_fan(inst),
        Command::Limit { lambda, degrees, .. } => {
            dims("lambda", lambda, inst.n())?;
            for d in degrees {
                dims("degree", d, inst.r())?;
            }
            limit(inst, lambda, degrees)
        }
        Command::SameLimit { lambda1, lambda2, .. } => {
            dims("lambda1", lambda1, inst.n())?;
            dims("lambda2", lambda2, inst.n())?;
            same(inst, lambda1, lambda2)
        }
        Command::Subdivision { lambda, .. } => {
            dims("lambda", lambda, inst.n())?;
            subdivision(inst, lambda)
        }
        Command::Check { oracle_bound, .. } => check(inst, *oracle_bound),
    }
}

fn validate(inst: ToricInstance) -> Result<Report, Failure> {
    let positive = inst.is_positive_grading()?;
    let support = inst.support_cone();
    let mut j = header(&inst);
    let obj = j.as_object_mut().expect("object");
    obj.insert("valid".into(), json!(true));
    obj.insert("omega_kind".into(), json!(inst.omega().kind.to_string()));
    obj.insert("omega_cone".into(), js::cone(inst.omega_cone()));
    obj.insert("sigma_generators".into(), js::int_vecs(inst.sigma_generators()));
    obj.insert("sigma_cone".into(), js::cone(inst.sigma_cone()));
    obj.insert("support_cone".into(), js::cone(&support));
    obj.insert("positive_grading".into(), json!(positive));
    let text = text::validate(&inst, positive, &support);
    Ok(Report::ok(j, text))
}

fn fiber(inst: ToricInstance, chi: &IntVec) -> Result<Report, Failure> {
    let real = inst.fiber_polyhedron(chi)?;
    let hull = inst.integral_fiber_hull(chi)?;
    let j = json!({
        "instance": header(&inst),
        "chi": js::int_vec(chi),
        "empty": hull.is_empty(),
        "real_fiber": js::polyhedron(&real),
        "integral_hull": js::polyhedron(&hull),
    });
    let text = text::fiber(chi, &real, &hull);
    Ok(Report::ok(j, text))
}

fn integral(inst: ToricInstance, chi: &IntVec) -> Result<Report, Failure> {
    let integral = is_integral(&inst, chi)?;
    let multiplier = if exact::is_zero(chi) {
        None
    } else {
        Some(integral_multiplier(&inst, chi)?)
    };
    let j = json!({
        "chi": js::int_vec(chi),
        "integral": integral,
        "multiplier": multiplier.as_ref().map(js::int),
    });
    let text = format!(
        "chi = {}: {}; least integral multiple: {}\n",
        exact::fmt_vec(chi),
        if integral { "integral" } else { "not integral" },
        multiplier.map_or("-".to_string(), |m| m.to_string())
    );
    Ok(Report::ok(j, text))
}

fn git_fan(inst: ToricInstance) -> Result<Report, Failure> {
    let d = git_decomposition(&inst)?;
    let real = real_fiber_fan(&inst, &d)?;
    let j = json!({
        "instance": header(&inst),
        "chambers": js::chambers(&d),
        "chamber_fan": js::fan(&d.fan),
        "real_fiber_fan": js::real_fiber_fan(&real),
    });
    let text = format!("{}{}", text::chambers(&d), text::fan_line("C_R", &real.fan));
    Ok(Report::ok(j, text))
}

fn hilbert_fan(inst: ToricInstance, oracle: Option<u32>) -> Result<Report, Failure> {
    let a = Analysis::compute(inst)?;
    let refines = fan_refines(a.hilbert_fan(), a.real_fan());
    let strict = refines && a.hilbert_fan() != a.real_fan();
    let mut j = json!({
        "instance": header(&a.instance),
        "chambers": js::chambers(&a.chambers),
        "real_fiber_fan": js::real_fiber_fan(&a.real),
        "representatives": js::representatives(&a.hilbert.representatives),
        "classes": js::classes(&a.hilbert.classes),
        "state_polytope": js::polyhedron(&a.hilbert.state_polytope),
        "hilbert_fan": js::fan(a.hilbert_fan()),
        "refinement": {"refines_real_fiber_fan": refines, "strict": strict},
    });
    let mut text = text::hilbert(&a, refines, strict);
    let mut ok = true;
    if let Some(bound) = oracle {
        let r = lambda_grid_oracle(&a, bound)?;
        ok = r.passed();
        text.push_str(&text::oracle(&r));
        j.as_object_mut().expect("object").insert("oracle".into(), js::oracle(&r));
    }
    Ok(Report { json: j, text, ok })
}

fn family_fan(inst: ToricInstance) -> Result<Report, Failure> {
    let a = Analysis::compute(inst)?;
    let fam = a.family_fan()?;
    let j = json!({
        "instance": header(&a.instance),
        "hilbert_fan": js::fan(a.hilbert_fan()),
        "family_fan": js::fan(&fam),
    });
    let text = format!("{}{}", text::fan_line("C_H0", a.hilbert_fan()), text::fan_line("C_W0", &fam));
    Ok(Report::ok(j, text))
}

fn limit(inst: ToricInstance, lambda: &IntVec, degrees: &[IntVec]) -> Result<Report, Failure> {
    if !limit_exists(&inst, lambda)? {
        let j = json!({"lambda": js::int_vec(lambda), "exists": false});
        let text = format!("lambda = {}: no limit (outside the support cone)\n", exact::fmt_vec(lambda));
        return Ok(Report::ok(j, text));
    }
    let degrees = if degrees.is_empty() {
        let a = Analysis::compute(inst.clone())?;
        default_degrees(&a)
    } else {
        degrees.to_vec()
    };
    let d = limit_data(&inst, lambda, &degrees)?;
    let j = json!({"lambda": js::int_vec(lambda), "exists": true, "limit": js::limit_data(&d)});
    Ok(Report::ok(j, text::limit(&d)))
}

fn same(inst: ToricInstance, l1: &IntVec, l2: &IntVec) -> Result<Report, Failure> {
    let a = Analysis::compute(inst)?;
    let same = same_limit(&a, l1, l2)?;
    let fan = a.hilbert_fan();
    let cone = |l: &IntVec| fan.minimal_cone(l).map(|c| js::cone(&c)).unwrap_or(Value::Null);
    let j = json!({
        "lambda1": js::int_vec(l1),
        "lambda2": js::int_vec(l2),
        "same_limit": same,
        "cone1": cone(l1),
        "cone2": cone(l2),
    });
    let text = format!(
        "lambda1 = {}, lambda2 = {}: {}\n",
        exact::fmt_vec(l1),
        exact::fmt_vec(l2),
        if same { "same limit" } else { "different limits" }
    );
    Ok(Report::ok(j, text))
}

fn subdivision(inst: ToricInstance, lambda: &IntVec) -> Result<Report, Failure> {
    let f = sigma_subdivision(&inst, lambda)?;
    let j = json!({"lambda": js::int_vec(lambda), "subdivision": js::fan(&f)});
    let text = format!("lambda = {}\n{}", exact::fmt_vec(lambda), text::fan_table("subdivision", &f));
    Ok(Report::ok(j, text))
}

fn check(inst: ToricInstance, bound: u32) -> Result<Report, Failure> {
    let name = inst.name().unwrap_or("instance").to_string();
    let a = Analysis::compute(inst)?;
    let opts = CheckOptions {
        oracle_bound: bound,
        ..CheckOptions::default()
    };
    let (outcomes, oracle) = run_checks(&a, &opts);
    let ok = outcomes.iter().all(|o| o.passed);
    let j = json!({
        "instance": header(&a.instance),
        "passed": ok,
        "checks": outcomes
            .iter()
            .map(|o| json!({"name": o.name, "passed": o.passed, "detail": o.detail}))
            .collect::<Vec<_>>(),
        "oracle": oracle.as_ref().map(js::oracle),
    });
    Ok(Report {
        json: j,
        text: text::checks(&name, &outcomes),
        ok,
    })
}
