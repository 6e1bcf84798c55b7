//! One-parameter degenerations: the values `n_lambda(chi)`, the data of the
//! limit, equality of limits and the subdivision of `cone(Sigma)` on which
//! `N_lambda` is linear.

use crate::error::{Error, Result};
use crate::exact::{self, Int, IntVec, Rat};
use crate::instance::ToricInstance;
use crate::pipeline::Analysis;
use crate::polyhedral::{normal_fan, Fan, MinFace, Polyhedron};
use num_traits::{One, Zero};

/// The limit under `lambda` exists iff `lambda` is in the support cone.
pub fn limit_exists(inst: &ToricInstance, lambda: &[Int]) -> Result<bool> {
    inst.check_lambda(lambda)?;
    Ok(inst.support_cone().contains(lambda))
}

fn minimize_checked(p: &Polyhedron, lambda: &[Int]) -> Result<MinFace> {
    p.minimize(lambda).map_err(|ray| Error::Unbounded {
        lambda: exact::fmt_vec(lambda),
        ray: exact::fmt_vec(&ray),
    })
}

/// Vertex and ray indices of a minimizing face, without the value.
pub type FaceKey = (Vec<usize>, Vec<usize>);

pub fn face_key(m: &MinFace) -> FaceKey {
    (m.vertices.clone(), m.rays.clone())
}

/// `min <lambda, nu>` over the lattice points of the fiber over `chi`,
/// together with the face of `P_chi` where it is attained.
pub fn n_lambda(inst: &ToricInstance, lambda: &[Int], chi: &[Int]) -> Result<(Int, MinFace)> {
    inst.check_lambda(lambda)?;
    let p = inst.integral_fiber_hull(chi)?;
    if p.is_empty() {
        return Err(Error::EmptyFiber {
            chi: exact::fmt_vec(chi),
        });
    }
    lattice_minimum(&p, lambda)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitData {
    pub lambda: IntVec,
    /// Sorted, without repetition.
    pub degrees: Vec<IntVec>,
    pub n_values: Vec<Int>,
    pub min_faces: Vec<MinFace>,
    /// Pairs `(i, j)`, `i <= j`, of indices into `degrees` whose sum is in
    /// `degrees` and with `n(chi_i) + n(chi_j) > n(chi_i + chi_j)`.
    pub vanishing_pairs: Vec<(usize, usize)>,
}

impl LimitData {
    pub fn value(&self, chi: &[Int]) -> Option<&Int> {
        self.degrees
            .binary_search_by(|d| d.as_slice().cmp(chi))
            .ok()
            .map(|i| &self.n_values[i])
    }
}

/// Representatives of all chambers, their pairwise sums and zero.
pub fn default_degrees(analysis: &Analysis) -> Vec<IntVec> {
    let reps = analysis.hilbert.representatives.all();
    let mut out = vec![exact::zero_vec(analysis.instance.r())];
    for (i, a) in reps.iter().enumerate() {
        out.push(a.clone());
        for b in &reps[i..] {
            out.push(exact::add(a, b));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Degrees with their integral fibers, computed once and reused across
/// many `lambda`.
#[derive(Debug, Clone)]
pub struct DegreeSet {
    /// Sorted, without repetition.
    degrees: Vec<IntVec>,
    hulls: Vec<Polyhedron>,
}

impl DegreeSet {
    pub fn new(inst: &ToricInstance, degrees: &[IntVec]) -> Result<Self> {
        let mut degrees: Vec<IntVec> = degrees.to_vec();
        degrees.sort();
        degrees.dedup();
        let mut hulls = Vec::with_capacity(degrees.len());
        for chi in &degrees {
            inst.check_character(chi)?;
            let p = inst.integral_fiber_hull(chi)?;
            if p.is_empty() {
                return Err(Error::EmptyFiber {
                    chi: exact::fmt_vec(chi),
                });
            }
            hulls.push(p);
        }
        Ok(DegreeSet { degrees, hulls })
    }

    pub fn degrees(&self) -> &[IntVec] {
        &self.degrees
    }

    pub fn hull(&self, chi: &[Int]) -> Option<&Polyhedron> {
        self.index(chi).map(|i| &self.hulls[i])
    }

    fn index(&self, chi: &[Int]) -> Option<usize> {
        self.degrees.binary_search_by(|d| d.as_slice().cmp(chi)).ok()
    }
}

fn lattice_minimum(p: &Polyhedron, lambda: &[Int]) -> Result<(Int, MinFace)> {
    let m = minimize_checked(p, lambda)?;
    if !m.value.is_integer() {
        return Err(Error::invariant("minimum over a lattice polyhedron is not an integer"));
    }
    Ok((m.value.to_integer(), m))
}

fn outside_support(inst: &ToricInstance, lambda: &[Int]) -> Result<Error> {
    let ray = inst
        .fiber_polyhedron(&exact::zero_vec(inst.r()))?
        .minimize(lambda)
        .err()
        .unwrap_or_default();
    Ok(Error::Unbounded {
        lambda: exact::fmt_vec(lambda),
        ray: exact::fmt_vec(&ray),
    })
}

/// Values and minimizing faces on `degrees`, with the pairs of degrees whose
/// product vanishes in the limit. Checks `n(0) = 0` and subadditivity on
/// every pair whose sum is among the degrees.
pub fn limit_data(inst: &ToricInstance, lambda: &[Int], degrees: &[IntVec]) -> Result<LimitData> {
    inst.check_lambda(lambda)?;
    limit_data_on(inst, lambda, &DegreeSet::new(inst, degrees)?)
}

pub fn limit_data_on(inst: &ToricInstance, lambda: &[Int], set: &DegreeSet) -> Result<LimitData> {
    if !limit_exists(inst, lambda)? {
        return Err(outside_support(inst, lambda)?);
    }
    let degrees = set.degrees.clone();
    let mut n_values = Vec::with_capacity(degrees.len());
    let mut min_faces = Vec::with_capacity(degrees.len());
    for (chi, p) in degrees.iter().zip(&set.hulls) {
        let (v, m) = lattice_minimum(p, lambda)?;
        if exact::is_zero(chi) && !v.is_zero() {
            return Err(Error::invariant(format!("n_lambda(0) = {v} for lambda {}", exact::fmt_vec(lambda))));
        }
        n_values.push(v);
        min_faces.push(m);
    }
    let mut vanishing_pairs = Vec::new();
    for i in 0..degrees.len() {
        for j in i..degrees.len() {
            let s = exact::add(&degrees[i], &degrees[j]);
            let Some(k) = set.index(&s) else { continue };
            let lhs = &n_values[i] + &n_values[j];
            if n_values[k] > lhs {
                return Err(Error::invariant(format!(
                    "subadditivity fails for lambda {}: n({}) = {} > {lhs}",
                    exact::fmt_vec(lambda),
                    exact::fmt_vec(&s),
                    n_values[k]
                )));
            }
            if lhs > n_values[k] {
                vanishing_pairs.push((i, j));
            }
        }
    }
    Ok(LimitData {
        lambda: lambda.to_vec(),
        degrees,
        n_values,
        min_faces,
        vanishing_pairs,
    })
}

/// Minimizing faces of `lambda` on the class polyhedra and `P_R`.
pub fn min_face_tuple(analysis: &Analysis, lambda: &[Int]) -> Result<Vec<FaceKey>> {
    analysis
        .class_polyhedra()
        .into_iter()
        .map(|p| minimize_checked(p, lambda).map(|m| face_key(&m)))
        .collect()
}

/// The limits under `lambda1` and `lambda2` agree iff both lie in the
/// relative interior of one cone of the Hilbert fan. Cross-checked against
/// the minimizing faces on the representatives.
pub fn same_limit(analysis: &Analysis, lambda1: &[Int], lambda2: &[Int]) -> Result<bool> {
    let inst = &analysis.instance;
    for l in [lambda1, lambda2] {
        if !limit_exists(inst, l)? {
            return Err(Error::Unbounded {
                lambda: exact::fmt_vec(l),
                ray: "the support cone".into(),
            });
        }
    }
    let fan = analysis.hilbert_fan();
    let c1 = fan.minimal_cone(lambda1).ok_or_else(|| Error::invariant("lambda in the support but in no cone"))?;
    let c2 = fan.minimal_cone(lambda2).ok_or_else(|| Error::invariant("lambda in the support but in no cone"))?;
    let by_cone = c1 == c2;
    let by_faces = min_face_tuple(analysis, lambda1)? == min_face_tuple(analysis, lambda2)?;
    if by_cone != by_faces {
        return Err(Error::invariant(format!(
            "cone location and minimizing faces disagree on {} and {}",
            exact::fmt_vec(lambda1),
            exact::fmt_vec(lambda2)
        )));
    }
    Ok(by_cone)
}

/// `{y : (pi g) . y <= lambda . g for rays g of cone(Omega), (pi l) . y = lambda . l
/// for its lineality}`, the feasible region of the dual of the fiber program.
pub fn dual_region(inst: &ToricInstance, lambda: &[Int]) -> Polyhedron {
    let c = inst.omega_cone();
    let r = inst.r();
    let to = |v: &IntVec| -> Vec<Rat> { exact::to_rat(&inst.pi().mul_vec(v)) };
    let ineqs: Vec<(Vec<Rat>, Rat)> = c
        .rays()
        .iter()
        .map(|g| (exact::scale_rat(&to(g), &-Rat::one()), -Rat::from(exact::dot(lambda, g))))
        .collect();
    let eqs: Vec<(Vec<Rat>, Rat)> = c
        .lineality()
        .iter()
        .map(|l| (to(l), Rat::from(exact::dot(lambda, l))))
        .collect();
    Polyhedron::from_inequalities(r, &ineqs, &eqs)
}

/// Domains of linearity of `N_lambda(chi) = min <lambda, .>` over
/// `P^R_chi`. By duality `N_lambda` is the support function of the dual
/// region `D`, so the domains are the normal fan of `-D`.
pub fn sigma_subdivision(inst: &ToricInstance, lambda: &[Int]) -> Result<Fan> {
    if !limit_exists(inst, lambda)? {
        return Err(Error::Unbounded {
            lambda: exact::fmt_vec(lambda),
            ray: "the support cone".into(),
        });
    }
    let d = dual_region(inst, lambda);
    if d.is_empty() {
        return Err(Error::invariant("dual region empty for lambda in the support cone"));
    }
    let r = inst.r();
    let minus: Vec<IntVec> = (0..r).map(|i| exact::neg(&exact::unit_vec(r, i))).collect();
    let neg = d.linear_image(&exact::IntMatrix::from_rows(&minus, r));
    let fan = normal_fan(&neg)?;
    if fan.support() != inst.sigma_cone() {
        return Err(Error::invariant("subdivision support differs from cone(sigma)"));
    }
    Ok(fan)
}

/// Checks on the integral degrees of `set` that `n_lambda` is additive on
/// each cone of the subdivision, for pairs whose sum is also in `set`.
pub fn check_subdivision(inst: &ToricInstance, lambda: &[Int], fan: &Fan, set: &DegreeSet) -> Result<()> {
    let mut integral = Vec::new();
    for (chi, p) in set.degrees.iter().zip(&set.hulls) {
        if p == &inst.fiber_polyhedron(chi)? {
            integral.push((chi, lattice_minimum(p, lambda)?.0));
        }
    }
    for (i, (a, va)) in integral.iter().enumerate() {
        for (b, vb) in &integral[i..] {
            let Some(sum) = set.hull(&exact::add(a, b)) else { continue };
            if !fan.maximal_cones().iter().any(|c| c.contains(a) && c.contains(b)) {
                continue;
            }
            if lattice_minimum(sum, lambda)?.0 != va + vb {
                return Err(Error::invariant(format!(
                    "n_lambda not additive on {} and {} in one cone of the subdivision",
                    exact::fmt_vec(a),
                    exact::fmt_vec(b)
                )));
            }
        }
    }
    Ok(())
}
