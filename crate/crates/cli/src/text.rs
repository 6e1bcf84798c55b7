//! Human-readable reports.

use std::fmt::Write;
use torfan::check::CheckOutcome;
use torfan::degeneration::LimitData;
use torfan::exact::{fmt_rat_vec, fmt_vec, IntVec};
use torfan::git::ChamberDecomposition;
use torfan::oracle::OracleReport;
use torfan::pipeline::Analysis;
use torfan::polyhedral::{Cone, Fan, Polyhedron};
use torfan::ToricInstance;

fn list(vs: &[IntVec]) -> String {
    if vs.is_empty() {
        return "-".into();
    }
    vs.iter().map(|v| fmt_vec(v)).collect::<Vec<_>>().join(" ")
}

fn cone(c: &Cone) -> String {
    let mut s = format!("rays {}", list(c.rays()));
    if !c.lineality().is_empty() {
        write!(s, "; lineality {}", list(c.lineality())).unwrap();
    }
    s
}

pub fn validate(inst: &ToricInstance, positive: bool, support: &Cone) -> String {
    let mut s = String::new();
    writeln!(s, "instance {}: n = {}, r = {}", inst.name().unwrap_or("-"), inst.n(), inst.r()).unwrap();
    writeln!(s, "Omega: {} ({})", cone(inst.omega_cone()), inst.omega().kind).unwrap();
    writeln!(s, "cone(Sigma): {}", cone(inst.sigma_cone())).unwrap();
    writeln!(s, "support cone: {}", cone(support)).unwrap();
    writeln!(s, "positive grading: {}", if positive { "yes" } else { "no" }).unwrap();
    s
}

fn polyhedron(p: &Polyhedron) -> String {
    if p.is_empty() {
        return "empty".into();
    }
    let mut s = p.vertices().iter().map(|v| fmt_rat_vec(v)).collect::<Vec<_>>().join(" ");
    if !p.rays().is_empty() {
        write!(s, " + rays {}", list(p.rays())).unwrap();
    }
    if !p.lineality().is_empty() {
        write!(s, " + lines {}", list(p.lineality())).unwrap();
    }
    s
}

pub fn fiber(chi: &IntVec, real: &Polyhedron, hull: &Polyhedron) -> String {
    let mut s = format!("chi = {}\n", fmt_vec(chi));
    if hull.is_empty() {
        writeln!(s, "empty fiber").unwrap();
    }
    writeln!(s, "P^R_chi: {}", polyhedron(real)).unwrap();
    writeln!(s, "P_chi:   {}", polyhedron(hull)).unwrap();
    s
}

pub fn chambers(d: &ChamberDecomposition) -> String {
    let mut s = format!("{} maximal chambers\n", d.len());
    writeln!(s, "{:>3}  {:<28} {:<12} l", "#", "cone", "witness").unwrap();
    for (i, c) in d.chambers.iter().enumerate() {
        writeln!(s, "{i:>3}  {:<28} {:<12} {}", cone(&c.cone), fmt_vec(&c.witness), c.vertex_count).unwrap();
    }
    s
}

pub fn fan_line(label: &str, f: &Fan) -> String {
    format!("{label}: {} maximal cones, {} rays, lineality dimension {}\n", f.len(), f.rays().len(), f.lineality().len())
}

pub fn fan_table(label: &str, f: &Fan) -> String {
    let mut s = fan_line(label, f);
    for c in f.maximal_cones() {
        writeln!(s, "  {}", cone(c)).unwrap();
    }
    s
}

pub fn hilbert(a: &Analysis, refines: bool, strict: bool) -> String {
    let mut s = chambers(&a.chambers);
    writeln!(s, "\nrepresentatives").unwrap();
    writeln!(s, "{:>3}  {:<14} {:<10} {:>4}  box", "#", "mu", "c", "l").unwrap();
    for ch in &a.hilbert.representatives.chambers {
        for (mu, c) in ch.generators.iter().zip(&ch.multipliers) {
            writeln!(
                s,
                "{:>3}  {:<14} {:<10} {:>4}  0 < d < {}",
                ch.chamber,
                fmt_vec(mu),
                c.to_string(),
                ch.vertex_count,
                c * ch.vertex_count
            )
            .unwrap();
        }
    }
    let all = a.hilbert.representatives.all();
    if all.is_empty() {
        writeln!(s, "no representatives: state polyhedron = P_R").unwrap();
    } else {
        let shown: Vec<IntVec> = all.iter().take(12).cloned().collect();
        let more = if all.len() > 12 { format!(" ... ({} in all)", all.len()) } else { String::new() };
        writeln!(s, "representatives: {}{more}", list(&shown)).unwrap();
        writeln!(s, "classes of equivalent fibers: {}", a.hilbert.classes.len()).unwrap();
    }
    writeln!(s).unwrap();
    s.push_str(&fan_line("C_R", a.real_fan()));
    s.push_str(&fan_line("C_H0", a.hilbert_fan()));
    let verdict = match (refines, strict) {
        (true, true) => "STRICT",
        (true, false) => "EQUAL",
        _ => "NO",
    };
    writeln!(
        s,
        "C_H0: {} maximal cones; refines C_R ({} cones): {verdict}",
        a.hilbert_fan().len(),
        a.real_fan().len()
    )
    .unwrap();
    s
}

pub fn oracle(r: &OracleReport) -> String {
    format!(
        "oracle (B = {}): {} lambdas, {} maximal cones hit, {} misclassified\n",
        r.bound,
        r.tested,
        r.maximal_cones_hit,
        r.misclassified.len()
    )
}

pub fn limit(d: &LimitData) -> String {
    let mut s = format!("lambda = {}: limit exists\n", fmt_vec(&d.lambda));
    writeln!(s, "{:<14} {:>8}  minimizing vertices", "chi", "n").unwrap();
    for ((chi, n), f) in d.degrees.iter().zip(&d.n_values).zip(&d.min_faces) {
        writeln!(s, "{:<14} {:>8}  {:?}", fmt_vec(chi), n.to_string(), f.vertices).unwrap();
    }
    let pairs: Vec<String> = d
        .vanishing_pairs
        .iter()
        .map(|&(i, j)| format!("{}*{}", fmt_vec(&d.degrees[i]), fmt_vec(&d.degrees[j])))
        .collect();
    writeln!(s, "vanishing products: {}", if pairs.is_empty() { "-".into() } else { pairs.join(" ") }).unwrap();
    s
}

pub fn checks(name: &str, outcomes: &[CheckOutcome]) -> String {
    let mut s = format!("checks on {name}\n");
    for o in outcomes {
        writeln!(s, "{}  {}: {}", if o.passed { "ok  " } else { "FAIL" }, o.name, o.detail).unwrap();
    }
    s
}
