//! The integral side: integral characters, representatives of the
//! equivalence classes of the fibers `P_chi`, the state polytope and the
//! Hilbert fan.

use crate::error::{Error, Result};
use crate::exact::{self, Int, IntVec, Rat, RatVec};
use crate::git::{ChamberDecomposition, RealFiberFan};
use crate::instance::{OmegaKind, ToricInstance};
use crate::polyhedral::{
    common_refinement_on_intersection, denominator_lcm, fan_refines, is_common_refinement, lattice_points,
    minkowski_sum, minkowski_sum_all, normal_fan, Cone, Fan, Polyhedron,
};
use num_traits::{One, Zero};
use rayon::prelude::*;
use std::collections::HashMap;

/// Largest multiplier tried for generated monoids.
pub const MULTIPLIER_CAP: u64 = 1_000;

/// `P_chi = P^R_chi`. For normal `Omega` this is also checked against the
/// criterion that every vertex of `P^R_chi` is a lattice point.
pub fn is_integral(inst: &ToricInstance, chi: &[Int]) -> Result<bool> {
    if !inst.sigma_contains(chi)? {
        return Err(Error::EmptyFiber {
            chi: exact::fmt_vec(chi),
        });
    }
    let real = inst.fiber_polyhedron(chi)?;
    let hull = inst.integral_fiber_hull(chi)?;
    let integral = real == hull;
    if inst.omega().kind == OmegaKind::Normal && integral != real.is_lattice() {
        return Err(Error::invariant(format!(
            "integrality of {} by hull comparison disagrees with the lattice-vertex criterion",
            exact::fmt_vec(chi)
        )));
    }
    Ok(integral)
}

/// The least `c >= 1` with `c mu` integral.
pub fn integral_multiplier(inst: &ToricInstance, mu: &[Int]) -> Result<Int> {
    inst.check_character(mu)?;
    if exact::is_zero(mu) {
        return Err(Error::ZeroVector);
    }
    if !inst.sigma_contains(mu)? {
        return Err(Error::EmptyFiber {
            chi: exact::fmt_vec(mu),
        });
    }
    match inst.omega().kind {
        OmegaKind::Normal => {
            let c = denominator_lcm(inst.fiber_polyhedron(mu)?.vertices());
            if !is_integral(inst, &exact::scale(mu, &c))? {
                return Err(Error::invariant(format!(
                    "{c} * {} is not integral although its real fiber has lattice vertices",
                    exact::fmt_vec(mu)
                )));
            }
            Ok(c)
        }
        OmegaKind::Generated => {
            for c in 1..=MULTIPLIER_CAP {
                let chi = exact::scale(mu, &Int::from(c));
                if inst.sigma_contains(&chi)? && is_integral(inst, &chi)? {
                    return Ok(Int::from(c));
                }
            }
            Err(Error::BudgetExceeded {
                budget: MULTIPLIER_CAP,
                context: format!("searching for an integral multiple of {}", exact::fmt_vec(mu)),
            })
        }
    }
}

/// Hilbert basis of the pointed cone `c` intersected with the lattice with
/// basis `lattice` (which must span `c`), sorted.
pub fn hilbert_basis_in_lattice(c: &Cone, lattice: &[IntVec], budget: u64) -> Result<Vec<IntVec>> {
    if !c.is_pointed() {
        return Err(Error::invariant("Hilbert basis of a cone with lineality"));
    }
    let k = lattice.len();
    // Generators in lattice coordinates.
    let gens: Vec<IntVec> = c
        .rays()
        .iter()
        .map(|r| {
            let coords = exact::solve_in_basis(lattice, &exact::to_rat(r))
                .ok_or_else(|| Error::invariant("cone ray outside the span of its lattice"))?;
            exact::primitive(&coords)
        })
        .collect::<Result<_>>()?;
    let local = Cone::from_generators(k, &gens, &[]);
    let zero = exact::zero_vec(k);
    let zonotope = gens.iter().try_fold(Polyhedron::from_points(k, std::slice::from_ref(&zero)), |z, g| {
        minkowski_sum(&z, &Polyhedron::from_points(k, &[zero.clone(), g.clone()]))
    })?;
    // A grading positive on the cone orders candidates so that every
    // proper summand is seen before the sum.
    let grading = local
        .facets()
        .iter()
        .fold(exact::zero_vec(k), |acc, f| exact::add(&acc, f));
    let mut candidates: Vec<IntVec> = lattice_points(&zonotope, budget)?
        .into_iter()
        .filter(|x| !exact::is_zero(x) && local.contains(x))
        .collect();
    candidates.sort_by_cached_key(|x| (exact::dot(&grading, x), x.clone()));
    let mut basis: Vec<IntVec> = Vec::new();
    for x in candidates {
        let reducible = basis.iter().any(|h| local.contains(&exact::sub(&x, h)));
        if !reducible {
            basis.push(x);
        }
    }
    let mut out: Vec<IntVec> = basis
        .iter()
        .map(|x| {
            x.iter()
                .zip(lattice)
                .fold(exact::zero_vec(c.ambient_dim()), |acc, (xi, b)| exact::add(&acc, &exact::scale(b, xi)))
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Hilbert basis of `c ∩ Z^d` for a pointed cone `c`.
pub fn hilbert_basis(c: &Cone, budget: u64) -> Result<Vec<IntVec>> {
    let d = c.ambient_dim();
    let lattice = span_lattice(c.equations(), d);
    hilbert_basis_in_lattice(c, &lattice, budget)
}

/// Basis of `Z^d ∩ {x : e . x = 0 for e in equations}`.
fn span_lattice(equations: &[IntVec], d: usize) -> Vec<IntVec> {
    if equations.is_empty() {
        (0..d).map(|i| exact::unit_vec(d, i)).collect()
    } else {
        exact::hermite_normal_form(&exact::IntMatrix::from_rows(equations, d)).kernel()
    }
}

/// Basis of the lattice `pi(Z^n ∩ span Omega)` containing `Sigma`.
pub fn character_lattice(inst: &ToricInstance) -> Vec<IntVec> {
    let within = span_lattice(inst.omega_cone().equations(), inst.n());
    let images: Vec<IntVec> = within.iter().map(|v| inst.pi().mul_vec(v)).collect();
    exact::lattice_basis(&images, inst.r())
}

/// Hilbert basis of the monoid `sigma ∩ Sigma` for a maximal chamber.
pub fn chamber_monoid_generators(
    inst: &ToricInstance,
    chambers: &ChamberDecomposition,
    chamber: usize,
) -> Result<Vec<IntVec>> {
    let c = &chambers.chamber(chamber)?.cone;
    if !c.is_pointed() {
        return Err(Error::NonPointedChamber { chamber });
    }
    let basis = hilbert_basis_in_lattice(c, &character_lattice(inst), inst.budget())?;
    for mu in &basis {
        if !inst.sigma_contains(mu)? {
            return Err(Error::NonSaturated {
                chamber,
                element: exact::fmt_vec(mu),
            });
        }
    }
    Ok(basis)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberRepresentatives {
    pub chamber: usize,
    pub generators: Vec<IntVec>,
    pub multipliers: Vec<Int>,
    pub vertex_count: usize,
    /// Characters `sum d_i mu_i` with `0 < d_i < l c_i`, sorted, without
    /// repetition.
    pub representatives: Vec<IntVec>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentativeSet {
    pub chambers: Vec<ChamberRepresentatives>,
}

impl RepresentativeSet {
    /// All representatives of all chambers, sorted, without repetition.
    pub fn all(&self) -> Vec<IntVec> {
        let mut v: Vec<IntVec> = self
            .chambers
            .iter()
            .flat_map(|c| c.representatives.iter().cloned())
            .collect();
        v.sort();
        v.dedup();
        v
    }
}

fn exponent_box(bounds: &[Int], budget: u64) -> Result<Vec<Vec<Int>>> {
    // Exponents d with 0 < d_i < bounds[i].
    let mut total = Int::one();
    for b in bounds {
        let count = if b > &Int::one() { b - Int::one() } else { Int::zero() };
        total *= count;
    }
    if total > Int::from(budget) {
        return Err(Error::BudgetExceeded {
            budget,
            context: "enumerating the representative box".into(),
        });
    }
    let mut out: Vec<Vec<Int>> = vec![Vec::new()];
    for b in bounds {
        let mut next = Vec::new();
        for prefix in &out {
            let mut d = Int::one();
            while &d < b {
                let mut v = prefix.clone();
                v.push(d.clone());
                next.push(v);
                d += 1;
            }
        }
        out = next;
    }
    Ok(out)
}

pub fn degree_representatives(inst: &ToricInstance, chambers: &ChamberDecomposition) -> Result<RepresentativeSet> {
    let per: Vec<ChamberRepresentatives> = (0..chambers.len())
        .map(|i| {
            let generators = chamber_monoid_generators(inst, chambers, i)?;
            let multipliers: Vec<Int> = generators
                .iter()
                .map(|mu| integral_multiplier(inst, mu))
                .collect::<Result<_>>()?;
            let l = chambers.chamber(i)?.vertex_count;
            let bounds: Vec<Int> = multipliers.iter().map(|c| c * Int::from(l)).collect();
            let mut reps: Vec<IntVec> = exponent_box(&bounds, inst.budget())?
                .into_iter()
                .map(|d| {
                    d.iter()
                        .zip(&generators)
                        .fold(exact::zero_vec(inst.r()), |acc, (di, mu)| exact::add(&acc, &exact::scale(mu, di)))
                })
                .collect();
            reps.sort();
            reps.dedup();
            Ok(ChamberRepresentatives {
                chamber: i,
                generators,
                multipliers,
                vertex_count: l,
                representatives: reps,
            })
        })
        .collect::<Result<_>>()?;
    Ok(RepresentativeSet { chambers: per })
}

/// Sum of polyhedra that share one normal fan: vertices add cone by cone.
fn sum_equivalent(members: &[&Polyhedron], fan: &Fan) -> Result<Polyhedron> {
    let first = members[0];
    if members.len() == 1 {
        return Ok(first.clone());
    }
    let d = first.ambient_dim();
    let mut vertices: Vec<RatVec> = Vec::with_capacity(fan.len());
    for cone in fan.maximal_cones() {
        let x = cone.interior_point();
        let mut v: RatVec = vec![Rat::zero(); d];
        for p in members {
            let m = p
                .minimize(&x)
                .map_err(|_| Error::invariant("interior functional of a normal cone is unbounded"))?;
            if m.vertices.len() != 1 {
                return Err(Error::invariant("interior functional of a normal cone has a tie"));
            }
            v = exact::add_rat(&v, &p.vertices()[m.vertices[0]]);
        }
        vertices.push(v);
    }
    Ok(Polyhedron::from_generators(d, &vertices, first.rays(), first.lineality()))
}

/// One integral fiber per representative, grouped by normal fan.
#[derive(Debug, Clone)]
pub struct FiberClass {
    /// Representatives in this class, sorted.
    pub members: Vec<IntVec>,
    pub fan: Fan,
    /// `P_chi` of the first member.
    pub polyhedron: Polyhedron,
    /// Minkowski sum of `P_chi` over all members.
    pub sum: Polyhedron,
}

/// Computes `P_chi` for every representative and groups them by normal fan.
/// Classes are ordered by their first member.
pub fn fiber_classes(inst: &ToricInstance, reps: &[IntVec]) -> Result<Vec<FiberClass>> {
    let fibers: Vec<(Polyhedron, Fan)> = reps
        .par_iter()
        .map(|chi| {
            let p = inst.integral_fiber_hull(chi)?;
            if p.is_empty() {
                return Err(Error::EmptyFiber {
                    chi: exact::fmt_vec(chi),
                });
            }
            let f = normal_fan(&p)?;
            Ok((p, f))
        })
        .collect::<Result<_>>()?;
    let mut index: HashMap<&Fan, usize> = HashMap::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, (_, f)) in fibers.iter().enumerate() {
        let g = *index.entry(f).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(i);
    }
    groups
        .into_par_iter()
        .map(|g| {
            let members: Vec<&Polyhedron> = g.iter().map(|&i| &fibers[i].0).collect();
            let fan = fibers[g[0]].1.clone();
            let sum = sum_equivalent(&members, &fan)?;
            Ok(FiberClass {
                members: g.iter().map(|&i| reps[i].clone()).collect(),
                fan,
                polyhedron: fibers[g[0]].0.clone(),
                sum,
            })
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct HilbertFan {
    pub representatives: RepresentativeSet,
    pub classes: Vec<FiberClass>,
    /// Minkowski sum of `P_chi` over all representatives, plus `P_R`.
    pub state_polytope: Polyhedron,
    pub fan: Fan,
}

/// The state polytope and Hilbert fan. The fan is checked to be the common
/// refinement of the fiber fans and `C_R`, to have the support cone of the
/// instance as support and the row space of `pi` inside every cone.
pub fn hilbert_fan(
    inst: &ToricInstance,
    chambers: &ChamberDecomposition,
    real: &RealFiberFan,
) -> Result<HilbertFan> {
    let representatives = degree_representatives(inst, chambers)?;
    let classes = fiber_classes(inst, &representatives.all())?;
    let mut summands: Vec<Polyhedron> = classes.iter().map(|c| c.sum.clone()).collect();
    summands.push(real.polyhedron.clone());
    let state_polytope = minkowski_sum_all(&summands)?;
    let fan = normal_fan(&state_polytope)?;

    let mut fans: Vec<Fan> = classes.iter().map(|c| c.fan.clone()).collect();
    fans.push(real.fan.clone());
    if !is_common_refinement(&fan, &fans) {
        return Err(Error::invariant(
            "normal fan of the state polytope is not the common refinement of the fiber normal fans",
        ));
    }
    if fan.support() != &inst.support_cone() {
        return Err(Error::invariant("Hilbert fan support differs from the support cone"));
    }
    for k in inst.pi().rows() {
        if !fan.maximal_cones().iter().all(|c| c.contains(&k) && c.contains(&exact::neg(&k))) {
            return Err(Error::invariant("a Hilbert fan cone does not contain the row space of pi"));
        }
    }
    if !fan_refines(&fan, &real.fan) {
        return Err(Error::invariant("Hilbert fan does not refine the fiber fan"));
    }
    Ok(HilbertFan {
        representatives,
        classes,
        state_polytope,
        fan,
    })
}

/// Just the state polytope.
pub fn state_polytope(inst: &ToricInstance, chambers: &ChamberDecomposition, real: &RealFiberFan) -> Result<Polyhedron> {
    Ok(hilbert_fan(inst, chambers, real)?.state_polytope)
}

/// Normal fan of `cone(Omega)` viewed as a polyhedron.
pub fn omega_normal_fan(inst: &ToricInstance) -> Result<Fan> {
    let c = inst.omega_cone();
    let n = inst.n();
    let p = Polyhedron::from_generators(n, &[vec![Rat::zero(); n]], c.rays(), c.lineality());
    normal_fan(&p)
}

/// Common refinement of the Hilbert fan and `N(cone(Omega))`, supported on
/// the intersection of their supports.
pub fn universal_family_fan(inst: &ToricInstance, hilbert: &Fan) -> Result<Fan> {
    let n_omega = omega_normal_fan(inst)?;
    let fam = common_refinement_on_intersection(&[hilbert.clone(), n_omega.clone()])?;
    let restrict = |f: &Fan| -> Result<Fan> {
        common_refinement_on_intersection(&[f.clone(), Fan::single(fam.support().clone())])
    };
    if !fan_refines(&fam, &restrict(hilbert)?) || !fan_refines(&fam, &restrict(&n_omega)?) {
        return Err(Error::invariant("universal family fan does not refine its inputs"));
    }
    Ok(fam)
}
