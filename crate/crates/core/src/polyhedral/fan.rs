use super::cone::Cone;
use super::polyhedron::Polyhedron;
use crate::error::{Error, Result};
use crate::exact::{dot, IntVec};
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use std::collections::BTreeSet;

/// A fan stored by its maximal cones, which all have the dimension of the
/// support and share one lineality space.
///
/// `rays` is the sorted union of the rays of the maximal cones and `cones`
/// lists, for each maximal cone, the indices of its rays.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fan {
    dim: usize,
    lineality: Vec<IntVec>,
    rays: Vec<IntVec>,
    cones: Vec<Vec<usize>>,
    maximal: Vec<Cone>,
    support: Cone,
}

impl Fan {
    /// Builds a fan from its maximal cones. Duplicates are removed and the
    /// cones are sorted.
    pub fn from_maximal_cones(dim: usize, cones: Vec<Cone>, support: Cone) -> Result<Fan> {
        let maximal: Vec<Cone> = cones.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let lineality = match maximal.first() {
            Some(c) => c.lineality().to_vec(),
            None => support.lineality().to_vec(),
        };
        for c in &maximal {
            if c.ambient_dim() != dim {
                return Err(Error::Dimension(format!("cone in R^{} inside a fan in R^{dim}", c.ambient_dim())));
            }
            if c.lineality() != lineality.as_slice() {
                return Err(Error::invariant("maximal cones of a fan have different lineality spaces"));
            }
            if c.dim() != support.dim() {
                return Err(Error::invariant("maximal cone is not full-dimensional in the support"));
            }
        }
        let rays: Vec<IntVec> = maximal
            .iter()
            .flat_map(|c| c.rays().iter().cloned())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let cones = maximal
            .iter()
            .map(|c| {
                c.rays()
                    .iter()
                    .map(|r| rays.binary_search(r).expect("ray collected above"))
                    .collect()
            })
            .collect();
        Ok(Fan {
            dim,
            lineality,
            rays,
            cones,
            maximal,
            support,
        })
    }

    /// The fan with the single maximal cone `c`.
    pub fn single(c: Cone) -> Fan {
        let dim = c.ambient_dim();
        Fan::from_maximal_cones(dim, vec![c.clone()], c).expect("a cone is a fan")
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn lineality(&self) -> &[IntVec] {
        &self.lineality
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    /// Ray-index lists of the maximal cones.
    pub fn cone_indices(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn maximal_cones(&self) -> &[Cone] {
        &self.maximal
    }

    pub fn len(&self) -> usize {
        self.maximal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maximal.is_empty()
    }

    pub fn support(&self) -> &Cone {
        &self.support
    }

    /// Index of the first maximal cone containing `x`.
    pub fn locate(&self, x: &[crate::exact::Int]) -> Option<usize> {
        self.maximal.iter().position(|c| c.contains(x))
    }

    /// Indices of the maximal cones whose interior contains `x`; at most one
    /// in a fan.
    pub fn locate_interior(&self, x: &[crate::exact::Int]) -> Option<usize> {
        self.maximal.iter().position(|c| c.relative_interior_contains(x))
    }

    /// The smallest cone of the fan containing `x`, if `x` is in the support.
    pub fn minimal_cone(&self, x: &[crate::exact::Int]) -> Option<Cone> {
        self.locate(x).map(|i| self.maximal[i].face_containing(x))
    }

    /// True iff every pair of maximal cones meets in a common face. Quadratic
    /// in the number of cones; meant for checks.
    pub fn is_proper(&self) -> bool {
        for (i, a) in self.maximal.iter().enumerate() {
            for b in &self.maximal[i + 1..] {
                let m = a.intersect(b);
                let p = m.interior_point();
                if a.face_containing(&p) != m || b.face_containing(&p) != m {
                    return false;
                }
            }
        }
        true
    }
}

/// Normal fan of a nonempty polyhedron, with functionals minimized on faces:
/// the cone at a vertex `v` is `{l : l(x - v) >= 0 for x in P}`.
pub fn normal_fan(p: &Polyhedron) -> Result<Fan> {
    let hom = p.homogenization().ok_or(Error::EmptyPolyhedron)?;
    let d = p.ambient_dim();
    let lin: Vec<IntVec> = hom.equations().iter().map(|e| e[1..].to_vec()).collect();
    let cones: Vec<Cone> = (0..p.vertices().len())
        .into_par_iter()
        .map(|i| {
            let h = p.vertex_ray(i);
            let gens: Vec<IntVec> = hom
                .facets()
                .iter()
                .filter(|f| dot(f, &h).is_zero())
                .map(|f| f[1..].to_vec())
                .collect();
            Cone::from_generators(d, &gens, &lin)
        })
        .collect();
    Fan::from_maximal_cones(d, cones, p.recession_cone().dual())
}

/// Cheap sufficient test that `a` and `b` have disjoint interiors: some facet
/// of `a` weakly separates them.
fn separated(a: &Cone, b: &Cone) -> bool {
    a.facets().iter().any(|f| {
        b.rays().iter().all(|r| !dot(f, r).is_positive()) && b.lineality().iter().all(|l| dot(f, l).is_zero())
    })
}

fn refine_pair(a: &Fan, b: &Fan, support: &Cone) -> Result<Fan> {
    let target = support.dim();
    let pairs: Vec<(usize, usize)> = (0..a.len())
        .flat_map(|i| (0..b.len()).map(move |j| (i, j)))
        .collect();
    let cones: Vec<Cone> = pairs
        .par_iter()
        .filter_map(|&(i, j)| {
            let (s, t) = (&a.maximal[i], &b.maximal[j]);
            if separated(s, t) || separated(t, s) {
                return None;
            }
            let mut c = s.intersect(t);
            if c.dim() != target {
                return None;
            }
            if !support.contains_cone(&c) {
                c = c.intersect(support);
                if c.dim() != target {
                    return None;
                }
            }
            Some(c)
        })
        .collect();
    Fan::from_maximal_cones(a.dim, cones, support.clone())
}

/// Coarsest common refinement of fans with a common support.
pub fn common_refinement(fans: &[Fan]) -> Result<Fan> {
    let (first, rest) = fans
        .split_first()
        .ok_or_else(|| Error::invariant("common refinement of an empty list of fans"))?;
    for (j, f) in rest.iter().enumerate() {
        if f.dim != first.dim {
            return Err(Error::Dimension(format!("fan 0 lives in R^{} and fan {} in R^{}", first.dim, j + 1, f.dim)));
        }
        if f.support != first.support {
            return Err(Error::MismatchedSupports { first: 0, second: j + 1 });
        }
    }
    let mut acc = first.clone();
    for f in rest {
        acc = refine_pair(&acc, f, &first.support)?;
    }
    Ok(acc)
}

/// Common refinement restricted to the intersection of the supports.
pub fn common_refinement_on_intersection(fans: &[Fan]) -> Result<Fan> {
    let (first, rest) = fans
        .split_first()
        .ok_or_else(|| Error::invariant("common refinement of an empty list of fans"))?;
    let support = rest.iter().fold(first.support.clone(), |s, f| s.intersect(&f.support));
    let mut acc = first.clone();
    for f in rest {
        acc = refine_pair(&acc, f, &support)?;
    }
    Ok(acc)
}

/// True iff the supports agree and every maximal cone of `c1` lies in a
/// maximal cone of `c2`.
pub fn fan_refines(c1: &Fan, c2: &Fan) -> bool {
    c1.dim == c2.dim
        && c1.support == c2.support
        && c1
            .maximal
            .par_iter()
            .all(|s| c2.maximal.iter().any(|t| t.contains_cone(s)))
}

/// True iff `h` equals the common refinement of `fans`, decided without
/// forming the refinement: `h` must refine every fan and each maximal cone
/// of `h` must be the intersection of the cones containing it.
pub fn is_common_refinement(h: &Fan, fans: &[Fan]) -> bool {
    if !fans.iter().all(|f| fan_refines(h, f)) {
        return false;
    }
    h.maximal.par_iter().all(|s| {
        let mut meet = h.support.clone();
        for f in fans {
            match f.maximal.iter().find(|t| t.contains_cone(s)) {
                Some(t) => meet = meet.intersect(t),
                None => return false,
            }
        }
        meet == *s
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{self, ivec, rat, RatVec};

    fn square() -> Polyhedron {
        Polyhedron::from_points(2, &[ivec(&[0, 0]), ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[1, 1])])
    }

    fn halves(normal: &[i64]) -> Fan {
        let a = ivec(normal);
        let neg = exact::neg(&a);
        Fan::from_maximal_cones(
            2,
            vec![Cone::from_inequalities(2, &[a], &[]), Cone::from_inequalities(2, &[neg], &[])],
            Cone::full_space(2),
        )
        .unwrap()
    }

    #[test]
    fn square_normal_fan_is_quadrants() {
        let f = normal_fan(&square()).unwrap();
        assert_eq!(f.len(), 4);
        assert!(f.lineality().is_empty());
        assert!(f.support().is_full_space());
        let q = Cone::from_generators(2, &[ivec(&[1, 0]), ivec(&[0, 1])], &[]);
        assert!(f.maximal_cones().contains(&q));
        assert!(f.is_proper());
    }

    #[test]
    fn segment_normal_fan() {
        let seg = Polyhedron::from_points(3, &[ivec(&[1, 0, 0]), ivec(&[0, 1, 0])]);
        let f = normal_fan(&seg).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.lineality().len(), 2);
        for c in f.maximal_cones() {
            assert!(c.contains(&ivec(&[1, 1, 0])) && c.contains(&ivec(&[-1, -1, 0])));
            assert!(c.contains(&ivec(&[0, 0, 1])) && c.contains(&ivec(&[0, 0, -1])));
        }
        // The minimizing vertex of l = (0, 1, 0) is (1, 0, 0).
        assert!(f.maximal_cones().contains(&Cone::from_inequalities(3, &[ivec(&[-1, 1, 0])], &[])));
    }

    #[test]
    fn triangle_fan_has_three_cones() {
        let tri = Polyhedron::from_points(3, &[ivec(&[2, 0, 0]), ivec(&[0, 2, 0]), ivec(&[0, 0, 1])]);
        let f = normal_fan(&tri).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f.lineality(), &[ivec(&[1, 1, 2])]);
    }

    #[test]
    fn unbounded_support_is_dual_of_recession() {
        let p = Polyhedron::from_generators(2, &[vec![rat(3, 2), rat(0, 1)] as RatVec], &[ivec(&[3, 2])], &[]);
        let f = normal_fan(&p).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.support(), &Cone::from_inequalities(2, &[ivec(&[3, 2])], &[]));
    }

    #[test]
    fn refinement_of_two_lines() {
        let x = halves(&[0, 1]);
        let y = halves(&[1, 0]);
        let r = common_refinement(&[x.clone(), y.clone()]).unwrap();
        assert_eq!(r, normal_fan(&square()).unwrap());
        assert_eq!(common_refinement(std::slice::from_ref(&x)).unwrap(), x);
        assert!(fan_refines(&r, &x));
        assert!(fan_refines(&x, &x));
        assert!(!fan_refines(&x, &y));
        assert!(is_common_refinement(&r, &[x.clone(), y.clone()]));
        assert!(!is_common_refinement(&x, &[x.clone(), y]));
    }

    #[test]
    fn mismatched_supports_name_the_pair() {
        let full = halves(&[0, 1]);
        let half = Fan::single(Cone::from_inequalities(2, &[ivec(&[0, 1])], &[]));
        assert_eq!(
            common_refinement(&[full.clone(), full, half]),
            Err(Error::MismatchedSupports { first: 0, second: 2 })
        );
    }

    #[test]
    fn minimal_cone_on_a_wall() {
        let f = normal_fan(&square()).unwrap();
        let c = f.minimal_cone(&ivec(&[3, 0])).unwrap();
        assert_eq!(c.rays(), &[ivec(&[1, 0])]);
        assert_eq!(f.minimal_cone(&ivec(&[0, 0])).unwrap(), Cone::origin(2));
    }
}
