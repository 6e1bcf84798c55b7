use super::dd::cone_generators;
use crate::exact::{self, dot, Int, IntVec, Rat};
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;

/// A rational polyhedral cone holding both representations in canonical
/// form.
///
/// * `lineality` and `equations` are primitive reduced-echelon bases of the
///   lineality space and of the orthogonal complement of the linear span.
/// * `rays` are the extreme rays modulo lineality, projected onto the
///   orthogonal complement of the lineality space, primitive and sorted.
/// * `facets` are the irredundant inequalities `f . x >= 0`, projected onto
///   the linear span, primitive and sorted.
///
/// Two cones are equal as sets iff they are equal as values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    dim: usize,
    rays: Vec<IntVec>,
    lineality: Vec<IntVec>,
    facets: Vec<IntVec>,
    equations: Vec<IntVec>,
}

/// Which representation [`dual_description`] starts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    GeneratorsToInequalities,
    InequalitiesToGenerators,
}

/// Recomputes `c` from one of its representations. The result is always
/// the same canonical value; this exists to exercise both conversion paths.
pub fn dual_description(c: &Cone, direction: Direction) -> Cone {
    match direction {
        Direction::GeneratorsToInequalities => Cone::from_generators(c.dim, &c.rays, &c.lineality),
        Direction::InequalitiesToGenerators => Cone::from_inequalities(c.dim, &c.facets, &c.equations),
    }
}

fn canonical_modulo(vectors: Vec<IntVec>, subspace: &[IntVec]) -> Vec<IntVec> {
    let set: BTreeSet<IntVec> = vectors
        .into_iter()
        .filter_map(|v| {
            let p = exact::project_off(&v, subspace);
            exact::primitive(&p).ok()
        })
        .collect();
    set.into_iter().collect()
}

impl Cone {
    /// The cone generated by `rays` and the linear span of `lineality`.
    pub fn from_generators(dim: usize, rays: &[IntVec], lineality: &[IntVec]) -> Self {
        check_dims(dim, rays);
        check_dims(dim, lineality);
        let (facets, equations) = cone_generators(dim, rays, lineality);
        let (rays, lineality) = cone_generators(dim, &facets, &equations);
        Self::canonical(dim, rays, lineality, facets, equations)
    }

    /// The cone `{x : f . x >= 0 for f in facets, e . x = 0 for e in equations}`.
    pub fn from_inequalities(dim: usize, inequalities: &[IntVec], equations: &[IntVec]) -> Self {
        check_dims(dim, inequalities);
        check_dims(dim, equations);
        let (rays, lineality) = cone_generators(dim, inequalities, equations);
        let (facets, equations) = cone_generators(dim, &rays, &lineality);
        Self::canonical(dim, rays, lineality, facets, equations)
    }

    /// Rational functionals are accepted by clearing denominators.
    pub fn from_rational_inequalities(dim: usize, inequalities: &[Vec<Rat>], equations: &[Vec<Rat>]) -> Self {
        let ineqs: Vec<IntVec> = inequalities.iter().map(|v| exact::clear_denominators(v)).collect();
        let eqs: Vec<IntVec> = equations.iter().map(|v| exact::clear_denominators(v)).collect();
        Self::from_inequalities(dim, &ineqs, &eqs)
    }

    fn canonical(
        dim: usize,
        rays: Vec<IntVec>,
        lineality: Vec<IntVec>,
        facets: Vec<IntVec>,
        equations: Vec<IntVec>,
    ) -> Self {
        let lineality = exact::canonical_subspace(&lineality, dim);
        let equations = exact::canonical_subspace(&equations, dim);
        let rays = canonical_modulo(rays, &lineality);
        let facets = canonical_modulo(facets, &equations);
        Self {
            dim,
            rays,
            lineality,
            facets,
            equations,
        }
    }

    pub fn full_space(dim: usize) -> Self {
        Self::from_inequalities(dim, &[], &[])
    }

    pub fn origin(dim: usize) -> Self {
        Self::from_generators(dim, &[], &[])
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn lineality(&self) -> &[IntVec] {
        &self.lineality
    }

    pub fn facets(&self) -> &[IntVec] {
        &self.facets
    }

    pub fn equations(&self) -> &[IntVec] {
        &self.equations
    }

    /// Dimension of the linear span.
    pub fn dim(&self) -> usize {
        self.dim - self.equations.len()
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn is_full_space(&self) -> bool {
        self.lineality.len() == self.dim
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        self.equations.iter().all(|e| dot(e, x).is_zero())
            && self.facets.iter().all(|f| !dot(f, x).is_negative())
    }

    pub fn contains_rational(&self, x: &[Rat]) -> bool {
        self.contains(&exact::clear_denominators(x))
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains(r))
            && other.lineality.iter().all(|l| self.contains(l) && self.contains(&exact::neg(l)))
    }

    /// True iff `x` lies in the relative interior.
    pub fn relative_interior_contains(&self, x: &[Int]) -> bool {
        self.equations.iter().all(|e| dot(e, x).is_zero())
            && self.facets.iter().all(|f| dot(f, x).is_positive())
    }

    /// A point of the relative interior: the sum of the extreme rays.
    pub fn interior_point(&self) -> IntVec {
        self.rays
            .iter()
            .fold(exact::zero_vec(self.dim), |acc, r| exact::add(&acc, r))
    }

    pub fn dual(&self) -> Cone {
        // Swapping the representations is exact: rays of the dual are the
        // facets and vice versa.
        Cone {
            dim: self.dim,
            rays: self.facets.clone(),
            lineality: self.equations.clone(),
            facets: self.rays.clone(),
            equations: self.lineality.clone(),
        }
    }

    pub fn intersect(&self, other: &Cone) -> Cone {
        assert_eq!(self.dim, other.dim, "ambient dimension mismatch");
        let mut ineqs = self.facets.clone();
        ineqs.extend(other.facets.iter().cloned());
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        Cone::from_inequalities(self.dim, &ineqs, &eqs)
    }

    /// The smallest face containing `x`, which must lie in the cone.
    pub fn face_containing(&self, x: &[Int]) -> Cone {
        debug_assert!(self.contains(x));
        let tight: Vec<IntVec> = self
            .facets
            .iter()
            .filter(|f| dot(f, x).is_zero())
            .cloned()
            .collect();
        if tight.is_empty() {
            return self.clone();
        }
        let mut eqs = self.equations.clone();
        eqs.extend(tight);
        Cone::from_inequalities(self.dim, &self.facets, &eqs)
    }

    /// Image under the linear map `x -> m x` given by its rows.
    pub fn image(&self, m: &crate::exact::IntMatrix) -> Cone {
        let rays: Vec<IntVec> = self.rays.iter().map(|r| m.mul_vec(r)).collect();
        let lin: Vec<IntVec> = self.lineality.iter().map(|l| m.mul_vec(l)).collect();
        Cone::from_generators(m.nrows(), &rays, &lin)
    }
}

fn check_dims(dim: usize, vs: &[IntVec]) {
    for v in vs {
        assert_eq!(v.len(), dim, "vector of length {} in a {dim}-dimensional cone", v.len());
    }
}

/// All faces of `c`, from the lineality space up to `c` itself, ordered by
/// dimension and then by ray set.
pub fn faces(c: &Cone) -> Vec<Cone> {
    let n = c.rays.len();
    let facet_sets: Vec<BTreeSet<usize>> = c
        .facets
        .iter()
        .map(|f| (0..n).filter(|&i| dot(f, &c.rays[i]).is_zero()).collect())
        .collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let all: Vec<usize> = (0..n).collect();
    let mut stack = vec![all.clone()];
    seen.insert(all);
    while let Some(current) = stack.pop() {
        for fs in &facet_sets {
            let next: Vec<usize> = current.iter().copied().filter(|i| fs.contains(i)).collect();
            if next.len() < current.len() && seen.insert(next.clone()) {
                stack.push(next);
            }
        }
    }
    let mut out: Vec<(usize, Vec<IntVec>, Cone)> = seen
        .into_iter()
        .map(|idx| {
            let rays: Vec<IntVec> = idx.iter().map(|&i| c.rays[i].clone()).collect();
            let face = Cone::from_generators(c.dim, &rays, &c.lineality);
            (face.dim(), face.rays.clone(), face)
        })
        .collect();
    out.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    out.into_iter().map(|(_, _, f)| f).collect()
}

/// True iff the two families span the same subspace.
pub fn same_span(a: &[IntVec], b: &[IntVec], dim: usize) -> bool {
    exact::canonical_subspace(a, dim) == exact::canonical_subspace(b, dim)
}
