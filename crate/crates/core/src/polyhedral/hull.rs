//! Lattice points of rational polyhedra and integer hulls.
//!
//! Lattice points are enumerated in coordinates of the integer solution set
//! of the affine hull, `x = x0 + K t`, so lower-dimensional polytopes cost no
//! more than full-dimensional ones. All enumeration is charged against a
//! budget and fails with [`Error::BudgetExceeded`] rather than running away.

use super::polyhedron::{minkowski_sum, Polyhedron};
use crate::error::{Error, Result};
use crate::exact::{self, Int, IntMatrix, IntVec, Rat, RatVec};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    All,
    /// Only the two ends of each line segment in the last coordinate.
    Extremes,
    First,
}

/// A bounded polytope in `t`-coordinates, `{t : c . t >= beta}`, together
/// with the affine map back to the ambient space.
struct Lattice {
    x0: IntVec,
    basis: Vec<IntVec>,
    ineqs: Vec<(IntVec, Int)>,
    lo: IntVec,
    hi: IntVec,
}

fn floor_rat(x: &Rat) -> Int {
    x.floor().to_integer()
}

fn ceil_rat(x: &Rat) -> Int {
    x.ceil().to_integer()
}

impl Lattice {
    /// `None` when the affine hull of `p` has no lattice point.
    fn new(p: &Polyhedron) -> Option<Lattice> {
        assert!(p.is_bounded(), "lattice enumeration needs a polytope");
        let d = p.ambient_dim();
        let eqs = p.equations();
        let (x0, basis) = if eqs.is_empty() {
            (exact::zero_vec(d), (0..d).map(|i| exact::unit_vec(d, i)).collect())
        } else {
            let rows: Vec<IntVec> = eqs.iter().map(|(a, _)| a.clone()).collect();
            let a = IntMatrix::from_rows(&rows, d);
            let b: IntVec = eqs.iter().map(|(_, b)| b.clone()).collect();
            let x0 = exact::integral_preimage(&a, &b)?;
            (x0, exact::hermite_normal_form(&a).kernel())
        };
        let x0r = exact::to_rat(&x0);
        let k = basis.len();
        let ineqs: Vec<(IntVec, Int)> = p
            .inequalities()
            .into_iter()
            .map(|(a, b)| {
                let c: IntVec = basis.iter().map(|col| exact::dot(&a, col)).collect();
                let beta = &b - exact::dot(&a, &x0);
                (c, beta)
            })
            .collect();
        let tverts: Vec<RatVec> = p
            .vertices()
            .iter()
            .map(|v| {
                exact::solve_in_basis(&basis, &exact::sub_rat(v, &x0r))
                    .expect("vertex lies in the affine hull")
            })
            .collect();
        let lo = (0..k)
            .map(|j| ceil_rat(tverts.iter().map(|t| &t[j]).min().expect("a vertex")))
            .collect();
        let hi = (0..k)
            .map(|j| floor_rat(tverts.iter().map(|t| &t[j]).max().expect("a vertex")))
            .collect();
        Some(Lattice {
            x0,
            basis,
            ineqs,
            lo,
            hi,
        })
    }

    fn point(&self, t: &[Int]) -> IntVec {
        let mut x = self.x0.clone();
        for (tj, col) in t.iter().zip(&self.basis) {
            if !tj.is_zero() {
                for (xi, ci) in x.iter_mut().zip(col) {
                    *xi += tj * ci;
                }
            }
        }
        x
    }

    fn enumerate(&self, mode: Mode, budget: u64, context: &str) -> Result<Vec<IntVec>> {
        let k = self.basis.len();
        let mut out = Vec::new();
        if k == 0 {
            if self.ineqs.iter().all(|(_, beta)| !beta.is_positive()) {
                out.push(Vec::new());
            }
            return Ok(out);
        }
        let mut spent = 0u64;
        let mut t = self.lo.clone();
        self.walk(0, &mut t, mode, budget, &mut spent, context, &mut out)?;
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn walk(
        &self,
        j: usize,
        t: &mut IntVec,
        mode: Mode,
        budget: u64,
        spent: &mut u64,
        context: &str,
        out: &mut Vec<IntVec>,
    ) -> Result<()> {
        let k = t.len();
        if j + 1 < k {
            let mut v = self.lo[j].clone();
            while v <= self.hi[j] {
                *spent += 1;
                if *spent > budget {
                    return Err(Error::BudgetExceeded {
                        budget,
                        context: context.to_string(),
                    });
                }
                t[j] = v.clone();
                self.walk(j + 1, t, mode, budget, spent, context, out)?;
                if mode == Mode::First && !out.is_empty() {
                    return Ok(());
                }
                v += 1;
            }
            return Ok(());
        }
        // Last coordinate: the exact interval cut out by the inequalities.
        let mut lo = self.lo[j].clone();
        let mut hi = self.hi[j].clone();
        for (c, beta) in &self.ineqs {
            let s: Int = (0..j).fold(Int::zero(), |acc, i| {
                if c[i].is_zero() {
                    acc
                } else {
                    acc + &c[i] * &t[i]
                }
            });
            let rhs = beta - s;
            let cl = &c[j];
            if cl.is_positive() {
                let b = Integer::div_ceil(&rhs, cl);
                if b > lo {
                    lo = b;
                }
            } else if cl.is_negative() {
                let b = Integer::div_floor(&rhs, cl);
                if b < hi {
                    hi = b;
                }
            } else if rhs.is_positive() {
                return Ok(());
            }
            if lo > hi {
                return Ok(());
            }
        }
        let mut emit = |v: Int, out: &mut Vec<IntVec>| -> Result<()> {
            *spent += 1;
            if *spent > budget {
                return Err(Error::BudgetExceeded {
                    budget,
                    context: context.to_string(),
                });
            }
            t[j] = v;
            out.push(t.clone());
            Ok(())
        };
        match mode {
            Mode::First => emit(lo, out)?,
            Mode::Extremes => {
                let same = lo == hi;
                emit(lo, out)?;
                if !same {
                    emit(hi, out)?;
                }
            }
            Mode::All => {
                let mut v = lo;
                while v <= hi {
                    emit(v.clone(), out)?;
                    v += 1;
                }
            }
        }
        Ok(())
    }
}

/// All lattice points of a polytope, sorted.
pub fn lattice_points(p: &Polyhedron, budget: u64) -> Result<Vec<IntVec>> {
    if p.is_empty() {
        return Ok(Vec::new());
    }
    let Some(lat) = Lattice::new(p) else {
        return Ok(Vec::new());
    };
    let mut pts: Vec<IntVec> = lat
        .enumerate(Mode::All, budget, "enumerating lattice points")?
        .iter()
        .map(|t| lat.point(t))
        .collect();
    pts.sort();
    Ok(pts)
}

/// Some lattice point of a polytope, if there is one.
pub fn find_lattice_point(p: &Polyhedron, budget: u64) -> Result<Option<IntVec>> {
    if p.is_empty() {
        return Ok(None);
    }
    let Some(lat) = Lattice::new(p) else {
        return Ok(None);
    };
    let found = lat.enumerate(Mode::First, budget, "searching for a lattice point")?;
    Ok(found.first().map(|t| lat.point(t)))
}

/// Twice the signed area of the triangle `o, a, b`.
fn cross(o: &(Int, Int), a: &(Int, Int), b: &(Int, Int)) -> Int {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

/// Vertices of the convex hull of planar points (monotone chain).
fn planar_hull(mut pts: Vec<(Int, Int)>) -> Vec<(Int, Int)> {
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<(Int, Int)> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<(Int, Int)> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Keeps only the points that are vertices of the hull of their 2-dimensional
/// slice (last two coordinates, others fixed). Every vertex of the full hull
/// survives.
fn slice_filter(points: Vec<IntVec>) -> Vec<IntVec> {
    let Some(k) = points.first().map(Vec::len) else {
        return points;
    };
    if k < 2 {
        return points;
    }
    let mut slices: BTreeMap<IntVec, Vec<(Int, Int)>> = BTreeMap::new();
    for t in points {
        let (prefix, tail) = t.split_at(k - 2);
        slices
            .entry(prefix.to_vec())
            .or_default()
            .push((tail[0].clone(), tail[1].clone()));
    }
    let mut out = Vec::new();
    for (prefix, pts) in slices {
        for (a, b) in planar_hull(pts) {
            let mut t = prefix.clone();
            t.push(a);
            t.push(b);
            out.push(t);
        }
    }
    out
}

/// Sorts points far-from-centroid first, which lets the double description
/// discard most later points as interior.
fn order_for_hull(points: &mut [IntVec]) {
    let Some(d) = points.first().map(Vec::len) else {
        return;
    };
    let n = Int::from(points.len());
    let sum = points.iter().fold(exact::zero_vec(d), |acc, p| exact::add(&acc, p));
    let key = |p: &IntVec| -> Int {
        // |n p - sum|^2, the squared distance to the centroid scaled by n^2.
        p.iter()
            .zip(&sum)
            .map(|(x, s)| {
                let y = &n * x - s;
                &y * &y
            })
            .fold(Int::zero(), |a, b| a + b)
    };
    points.sort_by_cached_key(|p| (std::cmp::Reverse(key(p)), p.clone()));
}

/// Candidate lattice points containing every vertex of the hull of the
/// lattice points of a polytope.
fn hull_candidates(p: &Polyhedron, budget: u64) -> Result<Vec<IntVec>> {
    if p.is_empty() {
        return Ok(Vec::new());
    }
    let Some(lat) = Lattice::new(p) else {
        return Ok(Vec::new());
    };
    let ts = lat.enumerate(Mode::Extremes, budget, "computing an integer hull")?;
    let mut pts: Vec<IntVec> = slice_filter(ts).iter().map(|t| lat.point(t)).collect();
    order_for_hull(&mut pts);
    Ok(pts)
}

/// `Q + Z`: the vertex polytope plus the parallelepiped spanned by the
/// recession generators (lineality directions in both signs).
fn vertex_box(p: &Polyhedron) -> Result<Polyhedron> {
    let d = p.ambient_dim();
    let mut q = Polyhedron::from_generators(d, p.vertices(), &[], &[]);
    let mut gens: Vec<IntVec> = p.rays().to_vec();
    for l in p.lineality() {
        gens.push(l.clone());
        gens.push(exact::neg(l));
    }
    for g in gens {
        let seg = Polyhedron::from_points(d, &[exact::zero_vec(d), g]);
        q = minkowski_sum(&q, &seg)?;
    }
    Ok(q)
}

/// `conv(P ∩ Z^d)`. The recession cone is kept; the result is empty iff `P`
/// has no lattice point. The lineality space, if any, must be spanned by
/// lattice vectors (it always is for rational polyhedra).
pub fn integer_hull(p: &Polyhedron, budget: u64) -> Result<Polyhedron> {
    let d = p.ambient_dim();
    if p.is_empty() {
        return Ok(Polyhedron::empty(d));
    }
    if p.is_lattice() {
        return Ok(p.clone());
    }
    let q = if p.is_bounded() { p.clone() } else { vertex_box(p)? };
    let pts = hull_candidates(&q, budget)?;
    if pts.is_empty() {
        return Ok(Polyhedron::empty(d));
    }
    let pts: Vec<RatVec> = pts.iter().map(|x| exact::to_rat(x)).collect();
    Ok(Polyhedron::from_generators(d, &pts, p.rays(), p.lineality()))
}

/// Hull of an explicit finite point set plus a recession part.
pub fn hull_of_points(dim: usize, points: Vec<IntVec>, rays: &[IntVec], lineality: &[IntVec]) -> Polyhedron {
    let mut points = points;
    points.sort();
    points.dedup();
    order_for_hull(&mut points);
    let pts: Vec<RatVec> = points.iter().map(|x| exact::to_rat(x)).collect();
    Polyhedron::from_generators(dim, &pts, rays, lineality)
}

/// Whether `P` contains a lattice point.
pub fn has_lattice_point(p: &Polyhedron, budget: u64) -> Result<bool> {
    if p.is_empty() {
        return Ok(false);
    }
    if p.vertices().iter().any(|v| exact::is_integral(v)) {
        return Ok(true);
    }
    let q = if p.is_bounded() { p.clone() } else { vertex_box(p)? };
    Ok(find_lattice_point(&q, budget)?.is_some())
}

/// The smallest `k >= 1` with `k v` integral.
pub fn denominator_lcm(vertices: &[RatVec]) -> Int {
    vertices
        .iter()
        .fold(Int::one(), |acc, v| acc.lcm(&exact::lcm_denominators(v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{ivec, rat};
    use proptest::prelude::*;

    fn ge(a: &[i64], b: i64) -> (RatVec, Rat) {
        (exact::to_rat(&ivec(a)), rat(b, 1))
    }

    fn orthant_fiber(weights: &[i64], chi: i64) -> Polyhedron {
        let n = weights.len();
        let ineqs: Vec<(RatVec, Rat)> = (0..n)
            .map(|i| (exact::to_rat(&exact::unit_vec(n, i)), rat(0, 1)))
            .collect();
        Polyhedron::from_inequalities(n, &ineqs, &[ge(weights, chi)])
    }

    #[test]
    fn half_line_hull() {
        let p = orthant_fiber(&[2, -3], 3);
        let h = integer_hull(&p, DEFAULT_BUDGET).unwrap();
        assert_eq!(h.vertices(), &[exact::to_rat(&ivec(&[3, 1]))]);
        assert_eq!(h.rays(), &[ivec(&[3, 2])]);
    }

    #[test]
    fn lattice_polytope_is_its_own_hull() {
        let tri = Polyhedron::from_points(3, &[ivec(&[2, 0, 0]), ivec(&[0, 2, 0]), ivec(&[0, 0, 1])]);
        assert_eq!(integer_hull(&tri, DEFAULT_BUDGET).unwrap(), tri);
    }

    #[test]
    fn triangle_hull_is_quadrilateral() {
        let p = orthant_fiber(&[1, 1, 2], 3);
        assert_eq!(p.vertices().len(), 3);
        let h = integer_hull(&p, DEFAULT_BUDGET).unwrap();
        let expected = Polyhedron::from_points(
            3,
            &[ivec(&[3, 0, 0]), ivec(&[0, 3, 0]), ivec(&[1, 0, 1]), ivec(&[0, 1, 1])],
        );
        assert_eq!(h, expected);
    }

    #[test]
    fn lattice_free_polytope_has_empty_hull() {
        let p = orthant_fiber(&[2, 2], 1);
        assert!(!p.is_empty());
        assert!(integer_hull(&p, DEFAULT_BUDGET).unwrap().is_empty());
        assert!(!has_lattice_point(&p, DEFAULT_BUDGET).unwrap());
        let q = Polyhedron::from_inequalities(2, &[ge(&[2, 0], 1), ge(&[-2, 0], -1), ge(&[0, 1], 0), ge(&[0, -1], -3)], &[]);
        assert!(integer_hull(&q, DEFAULT_BUDGET).unwrap().is_empty());
    }

    #[test]
    fn unbounded_fiber_without_vertex_lattice_point() {
        // 2a - 3b = 1: the vertex (1/2, 0) is fractional but (2, 1) is a solution.
        let p = orthant_fiber(&[2, -3], 1);
        assert!(has_lattice_point(&p, DEFAULT_BUDGET).unwrap());
        let h = integer_hull(&p, DEFAULT_BUDGET).unwrap();
        assert_eq!(h.vertices(), &[exact::to_rat(&ivec(&[2, 1]))]);
    }

    #[test]
    fn counts_points_of_a_simplex() {
        let p = orthant_fiber(&[1, 1, 2], 4);
        // a + b + 2c = 4: c = 0 gives 5, c = 1 gives 3, c = 2 gives 1.
        assert_eq!(lattice_points(&p, DEFAULT_BUDGET).unwrap().len(), 9);
    }

    #[test]
    fn budget_is_enforced() {
        let p = orthant_fiber(&[1, 1, 1], 200);
        assert!(matches!(lattice_points(&p, 1000), Err(Error::BudgetExceeded { budget: 1000, .. })));
    }

    #[test]
    fn planar_hull_drops_collinear_points() {
        let pts: Vec<(Int, Int)> = [(0, 0), (1, 0), (2, 0), (2, 2), (0, 2), (1, 1)]
            .iter()
            .map(|&(a, b)| (Int::from(a), Int::from(b)))
            .collect();
        assert_eq!(planar_hull(pts).len(), 4);
    }

    fn bounded_polytope() -> impl Strategy<Value = (usize, Vec<(Vec<i64>, i64)>)> {
        (1usize..=3).prop_flat_map(|d| {
            let row = (prop::collection::vec(-3i64..=3, d), -4i64..=4);
            (Just(d), prop::collection::vec(row, 0..4))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn hull_matches_brute_force((d, extra) in bounded_polytope()) {
            // A box [-3, 3]^d cut by random half-spaces with rational offsets.
            let mut ineqs: Vec<(RatVec, Rat)> = Vec::new();
            for i in 0..d {
                let e = exact::to_rat(&exact::unit_vec(d, i));
                ineqs.push((e.clone(), rat(-3, 1)));
                ineqs.push((e.iter().map(|x| -x).collect(), rat(-3, 1)));
            }
            for (a, b) in &extra {
                ineqs.push((a.iter().map(|&x| rat(x, 1)).collect(), rat(*b, 2)));
            }
            let p = Polyhedron::from_inequalities(d, &ineqs, &[]);
            let h = integer_hull(&p, DEFAULT_BUDGET).unwrap();
            let all = lattice_points(&p, DEFAULT_BUDGET).unwrap();
            let brute = if all.is_empty() {
                Polyhedron::empty(d)
            } else {
                Polyhedron::from_points(d, &all)
            };
            prop_assert_eq!(&h, &brute);
            prop_assert!(p.contains(&h));
            prop_assert!(h.is_lattice());
        }
    }
}
