//! Acceptance criteria 1-8. Runs as a plain binary so that every criterion
//! prints its verdict line; exits nonzero if any criterion fails.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};
use torfan::degeneration::{face_key, limit_exists, min_face_tuple, n_lambda, same_limit, FaceKey};
use torfan::exact::{ivec, rat, Int, IntVec, Rat};
use torfan::git::{real_side, ChamberLocation};
use torfan::hilbert::{integral_multiplier, is_integral};
use torfan::oracle::lambda_grid_oracle;
use torfan::pipeline::Analysis;
use torfan::polyhedral::{
    common_refinement, fan_refines, hull_of_points, integer_hull, minkowski_sum, minkowski_sum_all, normal_fan,
    Cone, Fan, Polyhedron, DEFAULT_BUDGET,
};
use torfan::{load_instance, ToricInstance};

/// Maximal cones of the w1347 Hilbert fan, fixed at the first run.
const W1347_MAXIMAL_CONES: usize = 51;

fn instance(name: &str) -> ToricInstance {
    let path = format!("{}/../../instances/{name}.json", env!("CARGO_MANIFEST_DIR"));
    let doc = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    load_instance(&doc).unwrap()
}

fn one(x: i64) -> IntVec {
    ivec(&[x])
}

fn criterion_1() -> String {
    let a = Analysis::compute(instance("w112")).unwrap();
    let (h, c) = (a.hilbert_fan(), a.real_fan());
    assert_eq!(h.len(), 4, "Hilbert fan maximal cones");
    assert_eq!(c.len(), 3, "fiber fan maximal cones");
    assert!(fan_refines(h, c));
    assert_ne!(h.len(), c.len());
    format!("C_H0 {} cones refines C_R {} cones, strict", h.len(), c.len())
}

fn criterion_2() -> String {
    let w = instance("w112");
    for chi in 0..=20 {
        assert_eq!(is_integral(&w, &one(chi)).unwrap(), chi % 2 == 0, "chi = {chi}");
    }
    assert_eq!(integral_multiplier(&w, &one(1)).unwrap(), Int::from(2));
    "integral iff even on 0..=20, multiplier(1) = 2".into()
}

fn criterion_3() -> String {
    let a = Analysis::compute(instance("w112")).unwrap();
    let reps = &a.hilbert.representatives;
    assert_eq!(reps.chambers.len(), 1);
    assert_eq!(reps.chambers[0].vertex_count, 3, "l(sigma)");
    assert_eq!(reps.chambers[0].multipliers, vec![Int::from(2)], "c");
    assert_eq!(reps.all(), (1..=5).map(one).collect::<Vec<_>>());
    let mut parts: Vec<Polyhedron> = (1..=5).map(|c| a.instance.integral_fiber_hull(&one(c)).unwrap()).collect();
    parts.push(a.real.polyhedron.clone());
    let by_sum = normal_fan(&minkowski_sum_all(&parts).unwrap()).unwrap();
    let fans: Vec<Fan> = parts.iter().map(|p| normal_fan(p).unwrap()).collect();
    let by_refinement = common_refinement(&fans).unwrap();
    assert_eq!(by_sum, by_refinement);
    assert_eq!(&by_sum, a.hilbert_fan());
    format!("l = 3, c = 2, reps 1..5, both routes give {} cones", by_sum.len())
}

fn criterion_4() -> String {
    let m = instance("m23");
    let (d, _) = real_side(&m).unwrap();
    let mut cones: Vec<Cone> = d.chambers.iter().map(|c| c.cone.clone()).collect();
    cones.sort();
    let mut expected = vec![
        Cone::from_generators(1, &[one(1)], &[]),
        Cone::from_generators(1, &[one(-1)], &[]),
    ];
    expected.sort();
    assert_eq!(cones, expected, "chambers");
    assert!(matches!(d.chamber_of(&m, &one(5)).unwrap(), ChamberLocation::Interior(_)));
    for chi in -30..=30i64 {
        let expected = if chi >= 0 { chi % 2 == 0 } else { chi % 3 == 0 };
        assert_eq!(is_integral(&m, &one(chi)).unwrap(), expected, "chi = {chi}");
    }
    let half = Cone::from_inequalities(2, &[ivec(&[3, 2])], &[]);
    assert_eq!(m.support_cone(), half);
    let mut points = 0;
    for l1 in -6..=6i64 {
        for l2 in -6..=6i64 {
            let l = ivec(&[l1, l2]);
            assert_eq!(limit_exists(&m, &l).unwrap(), 3 * l1 + 2 * l2 >= 0, "lambda = {l:?}");
            points += 1;
        }
    }
    format!("two chambers, integrality by 2 and 3 on -30..=30, {points} grid lambdas")
}

fn criterion_5() -> String {
    let w = instance("w112");
    let hull = |c: i64| w.integral_fiber_hull(&one(c)).unwrap();
    let p2 = hull(2);
    for chi in 6..=12 {
        let p = hull(chi);
        assert_eq!(p, minkowski_sum(&hull(chi - 2), &p2).unwrap(), "P_{chi} = P_{} + P_2", chi - 2);
        assert_eq!(normal_fan(&p).unwrap(), normal_fan(&hull(chi + 2)).unwrap(), "N(P_{chi}) = N(P_{})", chi + 2);
    }
    "chi = 6..=12".into()
}

fn random_in_support(rng: &mut ChaCha8Rng, inst: &ToricInstance, support: &Cone) -> IntVec {
    loop {
        let l: IntVec = (0..inst.n()).map(|_| Int::from(rng.gen_range(-6..=6i64))).collect();
        if support.contains(&l) {
            return l;
        }
    }
}

/// Minimizing faces on every representative fiber and on `P_R`.
fn all_rep_faces(parts: &[Polyhedron], lambda: &[Int]) -> Vec<FaceKey> {
    parts.iter().map(|p| face_key(&p.minimize(lambda).unwrap())).collect()
}

fn criterion_6() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut summary = Vec::new();
    for name in ["w112", "m23"] {
        let a = Analysis::compute(instance(name)).unwrap();
        let support = a.instance.support_cone();
        let mut parts: Vec<Polyhedron> = a
            .hilbert
            .representatives
            .all()
            .iter()
            .map(|chi| a.instance.integral_fiber_hull(chi).unwrap())
            .collect();
        parts.push(a.real.polyhedron.clone());
        let mut same = 0;
        for _ in 0..200 {
            let l1 = random_in_support(&mut rng, &a.instance, &support);
            let l2 = random_in_support(&mut rng, &a.instance, &support);
            let by_cone = same_limit(&a, &l1, &l2).unwrap();
            let by_faces = all_rep_faces(&parts, &l1) == all_rep_faces(&parts, &l2);
            assert_eq!(by_cone, by_faces, "{name}: {l1:?} vs {l2:?}");
            assert_eq!(by_faces, min_face_tuple(&a, &l1).unwrap() == min_face_tuple(&a, &l2).unwrap());
            same += usize::from(by_cone);
        }
        summary.push(format!("{name} 200 pairs ({same} same)"));
    }
    summary.join(", ")
}

fn random_vec(rng: &mut ChaCha8Rng, d: usize, b: i64) -> IntVec {
    (0..d).map(|_| Int::from(rng.gen_range(-b..=b))).collect()
}

fn oracle_dd(rng: &mut ChaCha8Rng) -> usize {
    for _ in 0..100 {
        let d = rng.gen_range(1..=4);
        let k = rng.gen_range(1..=6);
        let rays: Vec<IntVec> = (0..k).map(|_| random_vec(rng, d, 3)).collect();
        let lin: Vec<IntVec> = if rng.gen_bool(0.25) { vec![random_vec(rng, d, 2)] } else { Vec::new() };
        let c = Cone::from_generators(d, &rays, &lin);
        let back = Cone::from_inequalities(d, c.facets(), c.equations());
        assert_eq!(back, c, "generators {rays:?} lineality {lin:?}");
        assert_eq!(Cone::from_generators(d, c.rays(), c.lineality()), c);
        assert!(rays.iter().all(|r| c.contains(r)));
        assert!(c.rays().iter().all(|r| c.facets().iter().all(|f| !torfan::exact::dot(f, r).is_negative())));
    }
    100
}

fn oracle_hull(rng: &mut ChaCha8Rng) -> usize {
    for _ in 0..50 {
        let d = rng.gen_range(1..=3);
        let mut ineqs: Vec<(Vec<Rat>, Rat)> = Vec::new();
        for i in 0..d {
            let mut e = vec![Rat::zero(); d];
            e[i] = Rat::from(Int::from(1));
            ineqs.push((e.clone(), rat(-rng.gen_range(5..=17), 4)));
            e[i] = Rat::from(Int::from(-1));
            ineqs.push((e, rat(-rng.gen_range(5..=17), 4)));
        }
        for _ in 0..rng.gen_range(0..=3) {
            let a: Vec<Rat> = random_vec(rng, d, 3).iter().map(|x| Rat::from(x.clone())).collect();
            ineqs.push((a, rat(rng.gen_range(-12..=4), rng.gen_range(1..=3))));
        }
        let p = Polyhedron::from_inequalities(d, &ineqs, &[]);
        let mut points: Vec<IntVec> = vec![Vec::new()];
        for _ in 0..d {
            points = points
                .into_iter()
                .flat_map(|q| {
                    (-5..=5i64).map(move |x| {
                        let mut v = q.clone();
                        v.push(Int::from(x));
                        v
                    })
                })
                .collect();
        }
        let inside: Vec<IntVec> = points
            .into_iter()
            .filter(|x| p.contains_point(&torfan::exact::to_rat(x)))
            .collect();
        let brute = if inside.is_empty() {
            Polyhedron::empty(d)
        } else {
            hull_of_points(d, inside, &[], &[])
        };
        assert_eq!(integer_hull(&p, DEFAULT_BUDGET).unwrap(), brute, "{ineqs:?}");
    }
    50
}

fn oracle_minkowski(rng: &mut ChaCha8Rng) -> usize {
    for _ in 0..50 {
        let d = rng.gen_range(1..=3);
        let poly = |rng: &mut ChaCha8Rng| {
            let k = rng.gen_range(1..=5);
            let pts: Vec<IntVec> = (0..k).map(|_| random_vec(rng, d, 3)).collect();
            Polyhedron::from_points(d, &pts)
        };
        let p = poly(rng);
        let q = poly(rng);
        let lhs = normal_fan(&minkowski_sum(&p, &q).unwrap()).unwrap();
        let rhs = common_refinement(&[normal_fan(&p).unwrap(), normal_fan(&q).unwrap()]).unwrap();
        assert_eq!(lhs, rhs, "P = {p:?}, Q = {q:?}");
    }
    50
}

fn oracle_subadditivity(rng: &mut ChaCha8Rng) -> usize {
    let mut triples = 0;
    for name in ["w112", "m23"] {
        let inst = instance(name);
        let support = inst.support_cone();
        for _ in 0..40 {
            let l = random_in_support(rng, &inst, &support);
            let (x, y) = loop {
                let x = random_vec(rng, inst.r(), 8);
                let y = random_vec(rng, inst.r(), 8);
                if inst.sigma_contains(&x).unwrap() && inst.sigma_contains(&y).unwrap() {
                    break (x, y);
                }
            };
            let s = torfan::exact::add(&x, &y);
            let n = |c: &IntVec| n_lambda(&inst, &l, c).unwrap().0;
            assert!(n(&s) <= n(&x) + n(&y), "{name}: lambda {l:?}, chi {x:?} + {y:?}");
            triples += 1;
        }
    }
    triples
}

fn criterion_7() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let a = oracle_dd(&mut rng);
    let b = oracle_hull(&mut rng);
    let c = oracle_minkowski(&mut rng);
    let d = oracle_subadditivity(&mut rng);
    format!("DD {a}, hulls {b}, Minkowski {c}, subadditivity {d}: 0 failures")
}

fn criterion_8() -> String {
    let inst = instance("w1347");
    assert!(inst.is_positive_grading().unwrap());
    let a = Analysis::compute(inst).unwrap();
    let h = a.hilbert_fan();
    assert!(h.support().is_full_space());
    assert!(fan_refines(h, a.real_fan()));
    let r = lambda_grid_oracle(&a, 4).unwrap();
    assert!(r.passed(), "misclassified: {:?}", &r.misclassified[..r.misclassified.len().min(5)]);
    assert_eq!(h.len(), W1347_MAXIMAL_CONES, "pinned maximal-cone count");
    format!(
        "{} maximal cones, refines C_R ({} cones), oracle {} lambdas, 0 misclassified",
        h.len(),
        a.real_fan().len(),
        r.tested
    )
}

/// Name, body and time limit in seconds.
type Criterion = (&'static str, fn() -> String, u64);

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 W112 fan counts", criterion_1, 1),
        ("2 W112 integrality", criterion_2, 1),
        ("3 W112 representatives", criterion_3, 2),
        ("4 M23 mixed signs", criterion_4, 1),
        ("5 stabilization", criterion_5, 2),
        ("6 equal limits, sampled", criterion_6, 10),
        ("7 oracle suites", criterion_7, 30),
        ("8 w1347", criterion_8, 60),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run));
        let elapsed = start.elapsed();
        let limit = Duration::from_secs(limit);
        let line = match result {
            Ok(detail) if elapsed < limit => format!("PASS  criterion {name}: {detail} ({elapsed:.2?} < {limit:?})"),
            Ok(detail) => format!("FAIL  criterion {name}: {detail}; took {elapsed:.2?}, limit {limit:?}"),
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                format!("FAIL  criterion {name}: {msg} ({elapsed:.2?})")
            }
        };
        if line.starts_with("FAIL") {
            failed += 1;
        }
        println!("{line}");
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
