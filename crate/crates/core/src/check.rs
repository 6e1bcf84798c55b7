//! The invariant suite behind `torfan check`.

use crate::degeneration::{check_subdivision, face_key, limit_data_on, sigma_subdivision, DegreeSet, LimitData};
use crate::error::Result;
use crate::exact::{self, Int, IntVec};
use crate::oracle::{lambda_grid_oracle, OracleReport};
use crate::pipeline::Analysis;
use crate::polyhedral::{common_refinement, fan_refines, minkowski_sum, normal_fan, Fan};
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// Summary on success, first counterexample on failure.
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct CheckOptions {
    pub oracle_bound: u32,
    /// Characters with coordinates in `[-scan_bound, scan_bound]` are
    /// scanned for fiber fans not refined by the Hilbert fan.
    pub scan_bound: i64,
    /// Number of fiber classes whose first members, with their pairwise
    /// sums, form the degrees of the limit checks.
    pub degree_limit: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            oracle_bound: crate::oracle::DEFAULT_GRID_BOUND,
            scan_bound: 12,
            degree_limit: 12,
        }
    }
}

fn outcome(name: &'static str, r: Result<std::result::Result<String, String>>) -> CheckOutcome {
    match r {
        Ok(Ok(detail)) => CheckOutcome { name, passed: true, detail },
        Ok(Err(detail)) => CheckOutcome { name, passed: false, detail },
        Err(e) => CheckOutcome {
            name,
            passed: false,
            detail: e.to_string(),
        },
    }
}

type Verdict = Result<std::result::Result<String, String>>;

fn refines_real(a: &Analysis) -> Verdict {
    let (h, c) = (a.hilbert_fan(), a.real_fan());
    if !fan_refines(h, c) {
        return Ok(Err(format!("Hilbert fan ({} cones) does not refine C_R ({} cones)", h.len(), c.len())));
    }
    let kind = if h == c { "equal" } else { "strict" };
    Ok(Ok(format!("{} cones refine {} cones: {kind}", h.len(), c.len())))
}

fn class_fans(a: &Analysis) -> Verdict {
    let support = a.instance.support_cone();
    for c in &a.hilbert.classes {
        let chi = exact::fmt_vec(&c.members[0]);
        if c.fan.support() != &support {
            return Ok(Err(format!("normal fan of P_{chi} has a support other than the support cone")));
        }
        if !fan_refines(a.hilbert_fan(), &c.fan) {
            return Ok(Err(format!("Hilbert fan does not refine the normal fan of P_{chi}")));
        }
    }
    Ok(Ok(format!("{} classes", a.hilbert.classes.len())))
}

fn two_routes(a: &Analysis) -> Verdict {
    let mut fans: Vec<Fan> = a.hilbert.classes.iter().map(|c| c.fan.clone()).collect();
    fans.push(a.real.fan.clone());
    let r = common_refinement(&fans)?;
    if &r != a.hilbert_fan() {
        return Ok(Err(format!(
            "common refinement has {} cones, normal fan of the state polytope {}",
            r.len(),
            a.hilbert_fan().len()
        )));
    }
    Ok(Ok(format!("{} cones by both routes", r.len())))
}

fn stabilization(a: &Analysis) -> Verdict {
    let inst = &a.instance;
    let mut tested = 0;
    for ch in &a.hilbert.representatives.chambers {
        let base = ch
            .generators
            .iter()
            .fold(exact::zero_vec(inst.r()), |acc, g| exact::add(&acc, g));
        for (mu, c) in ch.generators.iter().zip(&ch.multipliers) {
            let step = exact::scale(mu, c);
            let chi = exact::add(&base, &exact::scale(&step, &Int::from(ch.vertex_count)));
            let p = inst.integral_fiber_hull(&chi)?;
            let sum = minkowski_sum(
                &inst.integral_fiber_hull(&exact::sub(&chi, &step))?,
                &inst.integral_fiber_hull(&step)?,
            )?;
            if p != sum {
                return Ok(Err(format!(
                    "P_{} differs from P_{} + P_{}",
                    exact::fmt_vec(&chi),
                    exact::fmt_vec(&exact::sub(&chi, &step)),
                    exact::fmt_vec(&step)
                )));
            }
            let next = inst.integral_fiber_hull(&exact::add(&chi, &step))?;
            if normal_fan(&p)? != normal_fan(&next)? {
                return Ok(Err(format!(
                    "P_{} and P_{} are not equivalent",
                    exact::fmt_vec(&chi),
                    exact::fmt_vec(&exact::add(&chi, &step))
                )));
            }
            tested += 1;
        }
    }
    Ok(Ok(format!("{tested} generators")))
}

fn box_points(r: usize, bound: i64) -> Vec<IntVec> {
    let mut out: Vec<IntVec> = vec![Vec::new()];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-bound..=bound).map(move |x| {
                    let mut q = p.clone();
                    q.push(Int::from(x));
                    q
                })
            })
            .collect();
    }
    out
}

fn finiteness(a: &Analysis, bound: i64) -> Verdict {
    let inst = &a.instance;
    let support = inst.support_cone();
    let mut tested = 0;
    for chi in box_points(inst.r(), bound) {
        if !inst.sigma_contains(&chi)? {
            continue;
        }
        let p = inst.integral_fiber_hull(&chi)?;
        let f = normal_fan(&p)?;
        if f.support() != &support {
            return Ok(Err(format!("normal fan of P_{} has another support", exact::fmt_vec(&chi))));
        }
        if !fan_refines(a.hilbert_fan(), &f) {
            return Ok(Err(format!(
                "normal fan of P_{} is not refined by the Hilbert fan",
                exact::fmt_vec(&chi)
            )));
        }
        tested += 1;
    }
    Ok(Ok(format!("{tested} characters")))
}

/// A few `lambda` per maximal cone: the interior points and a unit grid.
fn sample_lambdas(a: &Analysis) -> Vec<IntVec> {
    let support = a.instance.support_cone();
    let mut out: Vec<IntVec> = a.hilbert_fan().maximal_cones().iter().map(|c| c.interior_point()).collect();
    out.extend(box_points(a.instance.n(), 1).into_iter().filter(|l| support.contains(l)));
    out.sort();
    out.dedup();
    out
}

/// First members of the first `limit` classes, zero and their pairwise sums.
fn sample_degrees(a: &Analysis, limit: usize) -> Vec<IntVec> {
    let reps: Vec<IntVec> = a.hilbert.classes.iter().take(limit).map(|c| c.members[0].clone()).collect();
    let mut out = vec![exact::zero_vec(a.instance.r())];
    for (i, x) in reps.iter().enumerate() {
        out.push(x.clone());
        for y in &reps[i..] {
            out.push(exact::add(x, y));
        }
    }
    out.sort();
    out.dedup();
    out
}

fn subadditivity(a: &Analysis, set: &DegreeSet) -> Verdict {
    let lambdas = sample_lambdas(a);
    let mut pairs = 0;
    for l in &lambdas {
        let d = limit_data_on(&a.instance, l, set)?;
        pairs += d.degrees.len() * (d.degrees.len() + 1) / 2;
        if d.value(&exact::zero_vec(a.instance.r())).is_some_and(|v| !v.is_zero()) {
            return Ok(Err(format!("n_lambda(0) != 0 for {}", exact::fmt_vec(l))));
        }
    }
    Ok(Ok(format!("{} lambdas, {pairs} degree pairs", lambdas.len())))
}

fn row_space_invariance(a: &Analysis, set: &DegreeSet) -> Verdict {
    let faces = |d: &LimitData| d.min_faces.iter().map(face_key).collect::<Vec<_>>();
    for l in sample_lambdas(a) {
        let base = limit_data_on(&a.instance, &l, set)?;
        for row in a.instance.pi().rows() {
            let shifted = exact::add(&l, &row);
            let other = limit_data_on(&a.instance, &shifted, set)?;
            if faces(&base) != faces(&other) || base.vanishing_pairs != other.vanishing_pairs {
                return Ok(Err(format!(
                    "limits under {} and {} differ",
                    exact::fmt_vec(&l),
                    exact::fmt_vec(&shifted)
                )));
            }
        }
    }
    Ok(Ok("rows of pi".into()))
}

fn subdivisions(a: &Analysis, set: &DegreeSet) -> Verdict {
    let lambdas = sample_lambdas(a);
    for l in &lambdas {
        let f = sigma_subdivision(&a.instance, l)?;
        check_subdivision(&a.instance, l, &f, set)?;
    }
    Ok(Ok(format!("{} lambdas", lambdas.len())))
}

fn family(a: &Analysis) -> Verdict {
    let f = a.family_fan()?;
    Ok(Ok(format!("{} cones", f.len())))
}

fn oracle(a: &Analysis, bound: u32) -> (Verdict, Option<OracleReport>) {
    match lambda_grid_oracle(a, bound) {
        Ok(r) => {
            let v = if r.passed() {
                Ok(format!("{} lambdas, {} maximal cones hit", r.tested, r.maximal_cones_hit))
            } else {
                Err(format!(
                    "{} misclassified, first {}",
                    r.misclassified.len(),
                    exact::fmt_vec(&r.misclassified[0])
                ))
            };
            (Ok(v), Some(r))
        }
        Err(e) => (Err(e), None),
    }
}

/// Runs every check in a fixed order; failures do not stop later checks.
pub fn run_checks(a: &Analysis, opts: &CheckOptions) -> (Vec<CheckOutcome>, Option<OracleReport>) {
    let set = DegreeSet::new(&a.instance, &sample_degrees(a, opts.degree_limit));
    let with_set = |f: fn(&Analysis, &DegreeSet) -> Verdict| -> Verdict {
        match &set {
            Ok(s) => f(a, s),
            Err(e) => Err(e.clone()),
        }
    };
    let mut out = vec![
        outcome("hilbert fan refines fiber fan", refines_real(a)),
        outcome("fiber fans refined, same support", class_fans(a)),
        outcome("common refinement by two routes", two_routes(a)),
        outcome("stabilization", stabilization(a)),
        outcome("finitely many fiber fans", finiteness(a, opts.scan_bound)),
        outcome("subadditivity of n_lambda", with_set(subadditivity)),
        outcome("row space invariance", with_set(row_space_invariance)),
        outcome("subdivision linearity", with_set(subdivisions)),
        outcome("universal family fan", family(a)),
    ];
    let (v, report) = oracle(a, opts.oracle_bound);
    out.push(outcome("lambda grid oracle", v));
    (out, report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::load_instance;

    #[test]
    fn w112_and_m23_pass() {
        for doc in [
            r#"{"n": 3, "r": 1, "pi": [[1, 1, 2]],
                "omega": {"kind": "normal", "generators": [[1,0,0],[0,1,0],[0,0,1]]}}"#,
            r#"{"n": 2, "r": 1, "pi": [[2, -3]],
                "omega": {"kind": "normal", "generators": [[1,0],[0,1]]}}"#,
            r#"{"n": 2, "r": 2, "pi": [[1, 0], [0, 1]],
                "omega": {"kind": "normal", "generators": [[1,0],[0,1]]}}"#,
        ] {
            let a = Analysis::compute(load_instance(doc).unwrap()).unwrap();
            let opts = CheckOptions {
                oracle_bound: 3,
                ..CheckOptions::default()
            };
            let (outcomes, report) = run_checks(&a, &opts);
            for o in &outcomes {
                assert!(o.passed, "{}: {}", o.name, o.detail);
            }
            assert!(report.unwrap().passed());
        }
    }
}
