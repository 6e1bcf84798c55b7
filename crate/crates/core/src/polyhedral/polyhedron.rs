use super::cone::Cone;
use crate::error::{Error, Result};
use crate::exact::{self, dot, dot_mixed, Int, IntMatrix, IntVec, Rat, RatVec};
use num_traits::{One, Signed, Zero};

/// A rational polyhedron, stored through its homogenization
/// `cl cone({(1, v) : v in P})` in R^(d+1). The empty polyhedron is a
/// value of its own.
///
/// Vertices are the canonical representatives of the minimal faces (with a
/// nontrivial lineality space they are taken orthogonal to it), sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polyhedron {
    dim: usize,
    hom: Option<Cone>,
    vertices: Vec<RatVec>,
    rays: Vec<IntVec>,
    lineality: Vec<IntVec>,
}

/// Minimizer of a linear functional over a polyhedron.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinFace {
    pub value: Rat,
    /// Indices into `vertices()` attaining the minimum.
    pub vertices: Vec<usize>,
    /// Indices into `rays()` on which the functional vanishes.
    pub rays: Vec<usize>,
}

fn homogenize_point(v: &[Rat]) -> IntVec {
    let mut h = Vec::with_capacity(v.len() + 1);
    h.push(Rat::one());
    h.extend(v.iter().cloned());
    exact::make_primitive(exact::clear_denominators(&h))
}

fn homogenize_direction(v: &[Int]) -> IntVec {
    let mut h = Vec::with_capacity(v.len() + 1);
    h.push(Int::zero());
    h.extend(v.iter().cloned());
    h
}

/// `a . x >= b` becomes `(-b, a) . (x0, x) >= 0`.
fn homogenize_constraint(a: &[Rat], b: &Rat) -> IntVec {
    let mut h = Vec::with_capacity(a.len() + 1);
    h.push(-b.clone());
    h.extend(a.iter().cloned());
    exact::make_primitive(exact::clear_denominators(&h))
}

impl Polyhedron {
    pub fn empty(dim: usize) -> Self {
        Self {
            dim,
            hom: None,
            vertices: Vec::new(),
            rays: Vec::new(),
            lineality: Vec::new(),
        }
    }

    pub fn point(v: &[Rat]) -> Self {
        Self::from_generators(v.len(), &[v.to_vec()], &[], &[])
    }

    pub fn from_points(dim: usize, points: &[IntVec]) -> Self {
        let pts: Vec<RatVec> = points.iter().map(|p| exact::to_rat(p)).collect();
        Self::from_generators(dim, &pts, &[], &[])
    }

    /// `conv(points) + cone(rays) + span(lineality)`. No points means empty.
    pub fn from_generators(dim: usize, points: &[RatVec], rays: &[IntVec], lineality: &[IntVec]) -> Self {
        if points.is_empty() {
            return Self::empty(dim);
        }
        let mut gens: Vec<IntVec> = points
            .iter()
            .map(|p| {
                assert_eq!(p.len(), dim, "point dimension mismatch");
                homogenize_point(p)
            })
            .collect();
        gens.extend(rays.iter().map(|r| homogenize_direction(r)));
        let lin: Vec<IntVec> = lineality.iter().map(|l| homogenize_direction(l)).collect();
        Self::from_cone(dim, Cone::from_generators(dim + 1, &gens, &lin))
    }

    /// `{x : a . x >= b for (a, b) in inequalities, a . x = b for (a, b) in
    /// equations}`.
    pub fn from_inequalities(dim: usize, inequalities: &[(RatVec, Rat)], equations: &[(RatVec, Rat)]) -> Self {
        let mut ineqs: Vec<IntVec> = inequalities
            .iter()
            .map(|(a, b)| {
                assert_eq!(a.len(), dim, "inequality dimension mismatch");
                homogenize_constraint(a, b)
            })
            .collect();
        ineqs.push(exact::unit_vec(dim + 1, 0));
        let eqs: Vec<IntVec> = equations.iter().map(|(a, b)| homogenize_constraint(a, b)).collect();
        Self::from_cone(dim, Cone::from_inequalities(dim + 1, &ineqs, &eqs))
    }

    pub fn from_int_inequalities(dim: usize, inequalities: &[(IntVec, Int)], equations: &[(IntVec, Int)]) -> Self {
        let conv = |rows: &[(IntVec, Int)]| -> Vec<(RatVec, Rat)> {
            rows.iter()
                .map(|(a, b)| (exact::to_rat(a), Rat::from_integer(b.clone())))
                .collect()
        };
        Self::from_inequalities(dim, &conv(inequalities), &conv(equations))
    }

    fn from_cone(dim: usize, hom: Cone) -> Self {
        let mut vertices = Vec::new();
        let mut rays = Vec::new();
        for r in hom.rays() {
            if r[0].is_positive() {
                let x0 = Rat::from_integer(r[0].clone());
                vertices.push(r[1..].iter().map(|x| Rat::from_integer(x.clone()) / &x0).collect::<RatVec>());
            } else {
                debug_assert!(r[0].is_zero());
                rays.push(exact::make_primitive(r[1..].to_vec()));
            }
        }
        if vertices.is_empty() {
            return Self::empty(dim);
        }
        vertices.sort();
        rays.sort();
        let lineality: Vec<IntVec> = hom.lineality().iter().map(|l| l[1..].to_vec()).collect();
        Self {
            dim,
            hom: Some(hom),
            vertices,
            rays,
            lineality,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.hom.is_none()
    }

    pub fn homogenization(&self) -> Option<&Cone> {
        self.hom.as_ref()
    }

    pub fn vertices(&self) -> &[RatVec] {
        &self.vertices
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn lineality(&self) -> &[IntVec] {
        &self.lineality
    }

    /// Dimension of the affine hull; `None` when empty.
    pub fn affine_dim(&self) -> Option<usize> {
        self.hom.as_ref().map(|c| c.dim() - 1)
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(|v| exact::is_integral(v))
    }

    /// Irredundant inequalities `(a, b)` meaning `a . x >= b`.
    pub fn inequalities(&self) -> Vec<(IntVec, Int)> {
        let Some(h) = &self.hom else {
            return Vec::new();
        };
        h.facets()
            .iter()
            .filter(|f| !exact::is_zero(&f[1..]))
            .map(|f| (f[1..].to_vec(), -f[0].clone()))
            .collect()
    }

    /// Equations `(a, b)` meaning `a . x = b` cutting out the affine hull.
    pub fn equations(&self) -> Vec<(IntVec, Int)> {
        let Some(h) = &self.hom else {
            return Vec::new();
        };
        h.equations().iter().map(|e| (e[1..].to_vec(), -e[0].clone())).collect()
    }

    pub fn recession_cone(&self) -> Cone {
        Cone::from_generators(self.dim, &self.rays, &self.lineality)
    }

    pub fn contains_point(&self, x: &[Rat]) -> bool {
        match &self.hom {
            None => false,
            Some(h) => h.contains(&homogenize_point(x)),
        }
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Polyhedron) -> bool {
        match (&self.hom, &other.hom) {
            (_, None) => true,
            (None, Some(_)) => false,
            (Some(a), Some(b)) => a.contains_cone(b),
        }
    }

    /// Homogeneous integer vector `(x0, x0 v)` of vertex `i`.
    pub(crate) fn vertex_ray(&self, i: usize) -> IntVec {
        homogenize_point(&self.vertices[i])
    }

    /// The minimum of `lambda` and the face on which it is attained, or the
    /// ray (or lineality direction) along which `lambda` is unbounded below.
    pub fn minimize(&self, lambda: &[Int]) -> Result<MinFace, IntVec> {
        assert!(!self.is_empty(), "minimize over the empty polyhedron");
        for r in &self.rays {
            if dot(lambda, r).is_negative() {
                return Err(r.clone());
            }
        }
        for l in &self.lineality {
            let s = dot(lambda, l);
            if !s.is_zero() {
                return Err(if s.is_negative() { l.clone() } else { exact::neg(l) });
            }
        }
        let values: Vec<Rat> = self.vertices.iter().map(|v| dot_mixed(lambda, v)).collect();
        let value = values.iter().min().cloned().expect("nonempty polyhedron has a vertex");
        let vertices = (0..values.len()).filter(|&i| values[i] == value).collect();
        let rays = (0..self.rays.len())
            .filter(|&i| dot(lambda, &self.rays[i]).is_zero())
            .collect();
        Ok(MinFace { value, vertices, rays })
    }

    /// Image under the linear map given by `m` (rows = output coordinates).
    pub fn linear_image(&self, m: &IntMatrix) -> Polyhedron {
        if self.is_empty() {
            return Self::empty(m.nrows());
        }
        let mr: Vec<Vec<Rat>> = m.rows().iter().map(|r| exact::to_rat(r)).collect();
        let points: Vec<RatVec> = self
            .vertices
            .iter()
            .map(|v| mr.iter().map(|row| exact::dot_rat(row, v)).collect())
            .collect();
        let rays: Vec<IntVec> = self.rays.iter().map(|r| m.mul_vec(r)).collect();
        let lin: Vec<IntVec> = self.lineality.iter().map(|l| m.mul_vec(l)).collect();
        Self::from_generators(m.nrows(), &points, &rays, &lin)
    }

    /// `c P` for a positive rational `c`.
    pub fn dilate(&self, c: &Rat) -> Polyhedron {
        assert!(c.is_positive(), "dilation factor must be positive");
        if self.is_empty() {
            return self.clone();
        }
        let pts: Vec<RatVec> = self.vertices.iter().map(|v| exact::scale_rat(v, c)).collect();
        Self::from_generators(self.dim, &pts, &self.rays, &self.lineality)
    }
}

/// Minkowski sum, computed from pairwise vertex sums and the union of
/// recession generators.
pub fn minkowski_sum(p: &Polyhedron, q: &Polyhedron) -> Result<Polyhedron> {
    if p.ambient_dim() != q.ambient_dim() {
        return Err(Error::Dimension(format!(
            "Minkowski sum of polyhedra in R^{} and R^{}",
            p.ambient_dim(),
            q.ambient_dim()
        )));
    }
    if p.is_empty() || q.is_empty() {
        return Err(Error::EmptyPolyhedron);
    }
    let mut points = Vec::with_capacity(p.vertices.len() * q.vertices.len());
    for v in &p.vertices {
        for w in &q.vertices {
            points.push(exact::add_rat(v, w));
        }
    }
    points.sort();
    points.dedup();
    let mut rays = p.rays.clone();
    rays.extend(q.rays.iter().cloned());
    let mut lin = p.lineality.clone();
    lin.extend(q.lineality.iter().cloned());
    Ok(Polyhedron::from_generators(p.dim, &points, &rays, &lin))
}

/// Minkowski sum of a nonempty list.
pub fn minkowski_sum_all(parts: &[Polyhedron]) -> Result<Polyhedron> {
    let (first, rest) = parts.split_first().ok_or(Error::EmptyPolyhedron)?;
    rest.iter().try_fold(first.clone(), |acc, p| minkowski_sum(&acc, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{ivec, rat};

    fn rv(v: &[(i64, i64)]) -> RatVec {
        v.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    fn ge(a: &[i64], b: i64) -> (RatVec, Rat) {
        (exact::to_rat(&ivec(a)), rat(b, 1))
    }

    #[test]
    fn triangle_fiber() {
        let p = Polyhedron::from_inequalities(
            3,
            &[ge(&[1, 0, 0], 0), ge(&[0, 1, 0], 0), ge(&[0, 0, 1], 0)],
            &[ge(&[1, 1, 2], 2)],
        );
        assert_eq!(
            p.vertices(),
            &[rv(&[(0, 1), (0, 1), (1, 1)]), rv(&[(0, 1), (2, 1), (0, 1)]), rv(&[(2, 1), (0, 1), (0, 1)])]
        );
        assert!(p.is_bounded());
        assert_eq!(p.affine_dim(), Some(2));
    }

    #[test]
    fn half_line_fiber() {
        let p = Polyhedron::from_inequalities(2, &[ge(&[1, 0], 0), ge(&[0, 1], 0)], &[ge(&[2, -3], 3)]);
        assert_eq!(p.vertices(), &[rv(&[(3, 2), (0, 1)])]);
        assert_eq!(p.rays(), &[ivec(&[3, 2])]);
    }

    #[test]
    fn contradictory_bounds_are_empty() {
        let p = Polyhedron::from_inequalities(1, &[ge(&[1], 1), ge(&[-1], 0)], &[]);
        assert!(p.is_empty());
    }

    #[test]
    fn unit_square_as_sum() {
        let a = Polyhedron::from_points(2, &[ivec(&[0, 0]), ivec(&[1, 0])]);
        let b = Polyhedron::from_points(2, &[ivec(&[0, 0]), ivec(&[0, 1])]);
        let s = minkowski_sum(&a, &b).unwrap();
        assert_eq!(s, Polyhedron::from_points(2, &[ivec(&[0, 0]), ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[1, 1])]));
        assert_eq!(s.vertices().len(), 4);
        let zero = Polyhedron::from_points(2, &[ivec(&[0, 0])]);
        assert_eq!(minkowski_sum(&s, &zero).unwrap(), s);
    }

    #[test]
    fn segment_plus_triangle() {
        let seg = Polyhedron::from_points(3, &[ivec(&[1, 0, 0]), ivec(&[0, 1, 0])]);
        let tri = Polyhedron::from_points(3, &[ivec(&[2, 0, 0]), ivec(&[0, 2, 0]), ivec(&[0, 0, 1])]);
        let s = minkowski_sum(&seg, &tri).unwrap();
        // Brute force: hull of all six pairwise sums, then drop the two
        // points in the relative interior of the edge from (3,0,0) to (0,3,0).
        let expected = Polyhedron::from_points(
            3,
            &[ivec(&[3, 0, 0]), ivec(&[0, 3, 0]), ivec(&[1, 0, 1]), ivec(&[0, 1, 1])],
        );
        assert_eq!(s, expected);
        assert_eq!(s.vertices().len(), 4);
    }

    #[test]
    fn empty_operand_rejected() {
        let e = Polyhedron::empty(2);
        let p = Polyhedron::from_points(2, &[ivec(&[0, 0])]);
        assert_eq!(minkowski_sum(&e, &p), Err(Error::EmptyPolyhedron));
    }

    #[test]
    fn minimize_reports_ties_and_unbounded_rays() {
        let seg = Polyhedron::from_points(3, &[ivec(&[1, 0, 0]), ivec(&[0, 1, 0])]);
        let m = seg.minimize(&ivec(&[1, 1, 1])).unwrap();
        assert_eq!(m.value, rat(1, 1));
        assert_eq!(m.vertices, vec![0, 1]);
        let p = Polyhedron::from_inequalities(2, &[ge(&[1, 0], 0), ge(&[0, 1], 0)], &[ge(&[2, -3], 3)]);
        assert_eq!(p.minimize(&ivec(&[-1, 0])), Err(ivec(&[3, 2])));
    }

    #[test]
    fn inequalities_round_trip() {
        let tri = Polyhedron::from_points(3, &[ivec(&[2, 0, 0]), ivec(&[0, 2, 0]), ivec(&[0, 0, 1])]);
        let ineqs: Vec<(RatVec, Rat)> = tri
            .inequalities()
            .into_iter()
            .map(|(a, b)| (exact::to_rat(&a), Rat::from_integer(b)))
            .collect();
        let eqs: Vec<(RatVec, Rat)> = tri
            .equations()
            .into_iter()
            .map(|(a, b)| (exact::to_rat(&a), Rat::from_integer(b)))
            .collect();
        assert_eq!(Polyhedron::from_inequalities(3, &ineqs, &eqs), tri);
    }
}
