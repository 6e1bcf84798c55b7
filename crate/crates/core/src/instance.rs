//! The problem datum: a projection `pi : Z^n -> Z^r` and a monoid `Omega`
//! in `Z^n`, plus the fiber-level primitives built on them.

use crate::error::{Error, Result};
use crate::exact::{self, Int, IntMatrix, IntVec, Rat};
use crate::polyhedral::{find_lattice_point, has_lattice_point, integer_hull, Cone, Polyhedron, DEFAULT_BUDGET};
use num_traits::{Signed, Zero};
use serde_json::Value;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OmegaKind {
    /// `Omega = cone(generators) ∩ Z^n`.
    Normal,
    /// `Omega` is the monoid generated by the given vectors.
    Generated,
}

impl fmt::Display for OmegaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OmegaKind::Normal => "normal",
            OmegaKind::Generated => "generated",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaSpec {
    pub kind: OmegaKind,
    pub generators: Vec<IntVec>,
    /// Declared lineality directions of `cone(Omega)`; `Omega` contains
    /// their integer span.
    pub lineality: Vec<IntVec>,
}

#[derive(Debug, Clone)]
pub struct ToricInstance {
    name: Option<String>,
    n: usize,
    r: usize,
    pi: IntMatrix,
    omega: OmegaSpec,
    omega_cone: Cone,
    sigma_gens: Vec<IntVec>,
    sigma_cone: Cone,
    budget: u64,
}

fn parse_int(v: &Value, path: &str) -> Result<Int> {
    match v {
        Value::Number(num) => {
            if let Some(i) = num.as_i64() {
                Ok(Int::from(i))
            } else if let Some(u) = num.as_u64() {
                Ok(Int::from(u))
            } else {
                Err(Error::schema(path, "expected an integer, found a non-integral number"))
            }
        }
        Value::String(s) => s
            .trim()
            .parse::<Int>()
            .map_err(|_| Error::schema(path, format!("expected an integer, found the string {s:?}"))),
        other => Err(Error::schema(path, format!("expected an integer, found {}", kind_of(other)))),
    }
}

fn kind_of(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "an array",
        Value::Object(_) => "an object",
    }
}

fn parse_usize(v: &Value, path: &str) -> Result<usize> {
    let i = parse_int(v, path)?;
    if i.is_negative() {
        return Err(Error::schema(path, "expected a nonnegative integer"));
    }
    usize::try_from(&i).map_err(|_| Error::schema(path, "integer too large"))
}

fn parse_vector(v: &Value, len: usize, path: &str) -> Result<IntVec> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::schema(path, format!("expected an array of integers, found {}", kind_of(v))))?;
    if arr.len() != len {
        return Err(Error::schema(path, format!("expected {len} entries, found {}", arr.len())));
    }
    arr.iter()
        .enumerate()
        .map(|(i, x)| parse_int(x, &format!("{path}[{i}]")))
        .collect()
}

fn parse_vectors(v: &Value, len: usize, path: &str) -> Result<Vec<IntVec>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::schema(path, format!("expected an array of vectors, found {}", kind_of(v))))?;
    arr.iter()
        .enumerate()
        .map(|(i, x)| parse_vector(x, len, &format!("{path}[{i}]")))
        .collect()
}

fn field<'a>(obj: &'a serde_json::Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::schema(if path.is_empty() { key.to_string() } else { format!("{path}.{key}") }, "missing field"))
}

fn reject_unknown(obj: &serde_json::Map<String, Value>, allowed: &[&str], path: &str) -> Result<()> {
    for k in obj.keys() {
        if !allowed.contains(&k.as_str()) {
            let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
            return Err(Error::schema(p, "unknown field"));
        }
    }
    Ok(())
}

/// Parses and validates an instance document.
pub fn load_instance(doc: &str) -> Result<ToricInstance> {
    let value: Value = serde_json::from_str(doc).map_err(|e| Error::schema("$", format!("invalid JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::schema("$", "expected a JSON object"))?;
    reject_unknown(obj, &["name", "description", "n", "r", "pi", "omega"], "")?;
    let name = match obj.get("name") {
        None => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(other) => return Err(Error::schema("name", format!("expected a string, found {}", kind_of(other)))),
    };
    let n = parse_usize(field(obj, "n", "")?, "n")?;
    if n == 0 {
        return Err(Error::schema("n", "must be positive"));
    }
    let r = parse_usize(field(obj, "r", "")?, "r")?;
    let pi_rows = parse_vectors(field(obj, "pi", "")?, n, "pi")?;
    if pi_rows.len() != r {
        return Err(Error::schema("pi", format!("expected {r} rows, found {}", pi_rows.len())));
    }
    let omega_v = field(obj, "omega", "")?;
    let omega_obj = omega_v
        .as_object()
        .ok_or_else(|| Error::schema("omega", format!("expected an object, found {}", kind_of(omega_v))))?;
    reject_unknown(omega_obj, &["kind", "generators", "lineality"], "omega")?;
    let kind = match field(omega_obj, "kind", "omega")? {
        Value::String(s) if s == "normal" => OmegaKind::Normal,
        Value::String(s) if s == "generated" => OmegaKind::Generated,
        other => {
            return Err(Error::schema(
                "omega.kind",
                format!("expected \"normal\" or \"generated\", found {other}"),
            ))
        }
    };
    let generators = parse_vectors(field(omega_obj, "generators", "omega")?, n, "omega.generators")?;
    let lineality = match omega_obj.get("lineality") {
        None => Vec::new(),
        Some(v) => parse_vectors(v, n, "omega.lineality")?,
    };
    let mut inst = ToricInstance::new(
        IntMatrix::from_rows(&pi_rows, n),
        OmegaSpec {
            kind,
            generators,
            lineality,
        },
    )?;
    inst.name = name;
    Ok(inst)
}

impl ToricInstance {
    pub fn new(pi: IntMatrix, omega: OmegaSpec) -> Result<Self> {
        let n = pi.ncols();
        let r = pi.nrows();
        let rank = pi.rank();
        if rank < r {
            return Err(Error::RankDeficient { rank, r });
        }
        if omega.generators.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        for (i, g) in omega.generators.iter().chain(&omega.lineality).enumerate() {
            if g.len() != n {
                return Err(Error::schema(format!("omega.generators[{i}]"), format!("expected {n} entries")));
            }
        }
        let omega_cone = Cone::from_generators(n, &omega.generators, &omega.lineality);
        if !omega.lineality.is_empty() || omega_cone.lineality_dim() > 0 {
            let declared = exact::canonical_subspace(&omega.lineality, n);
            if declared != omega_cone.lineality() {
                return Err(Error::UndeclaredLineality {
                    dim: omega_cone.lineality_dim() - declared.len(),
                });
            }
        }
        let sigma_gens: Vec<IntVec> = omega.generators.iter().map(|g| pi.mul_vec(g)).collect();
        let sigma_cone = omega_cone.image(&pi);
        Ok(ToricInstance {
            name: None,
            n,
            r,
            pi,
            omega,
            omega_cone,
            sigma_gens,
            sigma_cone,
            budget: DEFAULT_BUDGET,
        })
    }

    /// Enumeration budget used by hulls and membership searches.
    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget.max(1);
        self
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn pi(&self) -> &IntMatrix {
        &self.pi
    }

    pub fn omega(&self) -> &OmegaSpec {
        &self.omega
    }

    pub fn omega_cone(&self) -> &Cone {
        &self.omega_cone
    }

    pub fn sigma_generators(&self) -> &[IntVec] {
        &self.sigma_gens
    }

    pub fn sigma_cone(&self) -> &Cone {
        &self.sigma_cone
    }

    /// A lattice basis of `ker pi`.
    pub fn kernel(&self) -> Vec<IntVec> {
        exact::hermite_normal_form(&self.pi).kernel()
    }

    pub fn check_character(&self, chi: &[Int]) -> Result<()> {
        if chi.len() != self.r {
            return Err(Error::Dimension(format!(
                "character {} has {} coordinates, expected r = {}",
                exact::fmt_vec(chi),
                chi.len(),
                self.r
            )));
        }
        Ok(())
    }

    pub fn check_lambda(&self, lambda: &[Int]) -> Result<()> {
        if lambda.len() != self.n {
            return Err(Error::Dimension(format!(
                "one-parameter subgroup {} has {} coordinates, expected n = {}",
                exact::fmt_vec(lambda),
                lambda.len(),
                self.n
            )));
        }
        Ok(())
    }

    /// `pi^{-1}(chi) ∩ cone(Omega)`.
    pub fn fiber_polyhedron(&self, chi: &[Int]) -> Result<Polyhedron> {
        self.check_character(chi)?;
        let ineqs: Vec<(IntVec, Int)> = self
            .omega_cone
            .facets()
            .iter()
            .map(|f| (f.clone(), Int::zero()))
            .collect();
        let mut eqs: Vec<(IntVec, Int)> = self
            .omega_cone
            .equations()
            .iter()
            .map(|e| (e.clone(), Int::zero()))
            .collect();
        for (i, row) in self.pi.rows().into_iter().enumerate() {
            eqs.push((row, chi[i].clone()));
        }
        Ok(Polyhedron::from_int_inequalities(self.n, &ineqs, &eqs))
    }

    /// All generators of `Omega` as a monoid, lineality in both directions.
    fn monoid_generators(&self) -> Vec<IntVec> {
        let mut g = self.omega.generators.clone();
        for l in &self.omega.lineality {
            g.push(l.clone());
            g.push(exact::neg(l));
        }
        g
    }

    /// `{k >= 0 : M k = target}` for `M` the matrix with columns `cols`.
    fn multiplicity_polyhedron(cols: &[IntVec], target: &[Int]) -> Polyhedron {
        let m = cols.len();
        let ineqs: Vec<(IntVec, Int)> = (0..m).map(|i| (exact::unit_vec(m, i), Int::zero())).collect();
        let eqs: Vec<(IntVec, Int)> = (0..target.len())
            .map(|j| (cols.iter().map(|c| c[j].clone()).collect(), target[j].clone()))
            .collect();
        Polyhedron::from_int_inequalities(m, &ineqs, &eqs)
    }

    /// `P_chi = conv(pi^{-1}(chi) ∩ Omega)`; empty when the fiber has no point
    /// of `Omega`.
    pub fn integral_fiber_hull(&self, chi: &[Int]) -> Result<Polyhedron> {
        match self.omega.kind {
            OmegaKind::Normal => integer_hull(&self.fiber_polyhedron(chi)?, self.budget),
            OmegaKind::Generated => {
                self.check_character(chi)?;
                let g = self.monoid_generators();
                let images: Vec<IntVec> = g.iter().map(|x| self.pi.mul_vec(x)).collect();
                let k_hull = integer_hull(&Self::multiplicity_polyhedron(&images, chi), self.budget)?;
                Ok(k_hull.linear_image(&IntMatrix::from_columns(&g, self.n)))
            }
        }
    }

    /// Membership of `nu` in `Omega`.
    pub fn omega_contains(&self, nu: &[Int]) -> Result<bool> {
        if nu.len() != self.n {
            return Err(Error::Dimension(format!("vector of length {} in Z^{}", nu.len(), self.n)));
        }
        if !self.omega_cone.contains(nu) {
            return Ok(false);
        }
        match self.omega.kind {
            OmegaKind::Normal => Ok(true),
            OmegaKind::Generated => {
                let p = Self::multiplicity_polyhedron(&self.monoid_generators(), nu);
                Ok(find_lattice_point(&p, self.budget)?.is_some())
            }
        }
    }

    /// `chi ∈ Sigma`, i.e. the fiber over `chi` meets `Omega`.
    pub fn sigma_contains(&self, chi: &[Int]) -> Result<bool> {
        self.check_character(chi)?;
        if !self.sigma_cone.contains(chi) {
            return Ok(false);
        }
        match self.omega.kind {
            OmegaKind::Normal => has_lattice_point(&self.fiber_polyhedron(chi)?, self.budget),
            OmegaKind::Generated => {
                let images: Vec<IntVec> = self.monoid_generators().iter().map(|x| self.pi.mul_vec(x)).collect();
                has_lattice_point(&Self::multiplicity_polyhedron(&images, chi), self.budget)
            }
        }
    }

    /// `{lambda : <lambda, nu> >= 0 for nu in pi^{-1}(0) ∩ cone(Omega)}`.
    pub fn support_cone(&self) -> Cone {
        let zero = exact::zero_vec(self.r);
        let p0 = self.fiber_polyhedron(&zero).expect("zero has the right length");
        p0.recession_cone().dual()
    }

    /// The zero fiber is a point and `cone(Sigma)` is pointed.
    pub fn is_positive_grading(&self) -> Result<bool> {
        let p0 = self.fiber_polyhedron(&exact::zero_vec(self.r))?;
        let positive = p0.is_bounded() && self.sigma_cone.is_pointed();
        if positive != self.support_cone().is_full_space() {
            return Err(Error::invariant(
                "positive grading disagrees with completeness of the support cone",
            ));
        }
        Ok(positive)
    }

    /// The vertex count of `P^R_chi`, as a rational-free summary.
    pub fn fiber_vertex_count(&self, chi: &[Int]) -> Result<usize> {
        Ok(self.fiber_polyhedron(chi)?.vertices().len())
    }

    /// `pi(x)` for a rational point.
    pub fn project(&self, x: &[Rat]) -> Vec<Rat> {
        self.pi
            .rows()
            .iter()
            .map(|row| exact::dot_mixed(row, x))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{ivec, rat};

    pub(crate) const W112: &str = r#"{"n": 3, "r": 1, "pi": [[1, 1, 2]],
        "omega": {"kind": "normal", "generators": [[1,0,0],[0,1,0],[0,0,1]]}}"#;
    pub(crate) const M23: &str = r#"{"n": 2, "r": 1, "pi": [[2, -3]],
        "omega": {"kind": "normal", "generators": [[1,0],[0,1]]}}"#;

    fn pts(v: &[&[i64]]) -> Polyhedron {
        let p: Vec<IntVec> = v.iter().map(|x| ivec(x)).collect();
        Polyhedron::from_points(p[0].len(), &p)
    }

    #[test]
    fn loads_examples() {
        let w = load_instance(W112).unwrap();
        assert_eq!(w.sigma_cone(), &Cone::from_generators(1, &[ivec(&[1])], &[]));
        let m = load_instance(M23).unwrap();
        assert!(m.sigma_cone().is_full_space());
    }

    #[test]
    fn rejects_rank_deficient_pi() {
        let doc = r#"{"n": 2, "r": 2, "pi": [[1,1],[2,2]], "omega": {"kind": "normal", "generators": [[1,0],[0,1]]}}"#;
        assert_eq!(load_instance(doc).unwrap_err(), Error::RankDeficient { rank: 1, r: 2 });
    }

    #[test]
    fn schema_errors_carry_paths() {
        let doc = r#"{"n": 2, "r": 1, "pi": [[1,1]], "omega": {"kind": "normal", "generators": [[1,0],[0,"x"]]}}"#;
        match load_instance(doc).unwrap_err() {
            Error::Schema { path, .. } => assert_eq!(path, "omega.generators[1][1]"),
            e => panic!("unexpected error {e}"),
        }
        let doc = r#"{"n": 2, "r": 1, "pi": [[1,1]], "omega": {"kind": "normal", "generators": []}}"#;
        assert_eq!(load_instance(doc).unwrap_err(), Error::EmptyGenerators);
        let doc = r#"{"n": 2, "r": 1, "pi": [[1,1]], "omega": {"kind": "weird", "generators": [[1,0]]}}"#;
        assert!(matches!(load_instance(doc).unwrap_err(), Error::Schema { path, .. } if path == "omega.kind"));
        let doc = r#"{"n": 2, "r": 1, "pi": [[1,1]]}"#;
        assert!(matches!(load_instance(doc).unwrap_err(), Error::Schema { path, .. } if path == "omega"));
    }

    #[test]
    fn big_integers_as_strings() {
        let doc = r#"{"n": 1, "r": 1, "pi": [["123456789012345678901234567890"]],
            "omega": {"kind": "normal", "generators": [[1]]}}"#;
        let inst = load_instance(doc).unwrap();
        assert_eq!(inst.pi().get(0, 0).to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn undeclared_lineality_is_rejected() {
        let doc = r#"{"n": 2, "r": 1, "pi": [[1,0]], "omega": {"kind": "normal", "generators": [[1,0],[0,1],[0,-1]]}}"#;
        assert_eq!(load_instance(doc).unwrap_err(), Error::UndeclaredLineality { dim: 1 });
        let doc = r#"{"n": 2, "r": 1, "pi": [[1,0]], "omega": {"kind": "normal", "generators": [[1,0]], "lineality": [[0,1]]}}"#;
        let inst = load_instance(doc).unwrap();
        assert_eq!(inst.omega_cone().lineality(), &[ivec(&[0, 1])]);
        let p = inst.integral_fiber_hull(&ivec(&[2])).unwrap();
        assert_eq!(p.lineality(), &[ivec(&[0, 1])]);
    }

    #[test]
    fn fibers_of_w112() {
        let w = load_instance(W112).unwrap();
        assert_eq!(w.fiber_polyhedron(&ivec(&[2])).unwrap(), pts(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 1]]));
        assert_eq!(w.fiber_polyhedron(&ivec(&[0])).unwrap(), pts(&[&[0, 0, 0]]));
        assert_eq!(w.integral_fiber_hull(&ivec(&[1])).unwrap(), pts(&[&[1, 0, 0], &[0, 1, 0]]));
        assert_eq!(
            w.integral_fiber_hull(&ivec(&[3])).unwrap(),
            pts(&[&[3, 0, 0], &[0, 3, 0], &[1, 0, 1], &[0, 1, 1]])
        );
        assert_eq!(w.integral_fiber_hull(&ivec(&[0])).unwrap(), pts(&[&[0, 0, 0]]));
        assert!(w.fiber_polyhedron(&ivec(&[-1])).unwrap().is_empty());
    }

    #[test]
    fn fibers_of_m23() {
        let m = load_instance(M23).unwrap();
        let p = m.fiber_polyhedron(&ivec(&[3])).unwrap();
        assert_eq!(p.vertices(), &[vec![rat(3, 2), rat(0, 1)]]);
        assert_eq!(p.rays(), &[ivec(&[3, 2])]);
    }

    #[test]
    fn membership() {
        let w = load_instance(W112).unwrap();
        assert!(w.omega_contains(&ivec(&[1, 0, 1])).unwrap());
        assert!(!w.omega_contains(&ivec(&[-1, 0, 0])).unwrap());
        let doc = r#"{"n": 2, "r": 1, "pi": [[1,1]], "omega": {"kind": "generated", "generators": [[2,0],[0,3]]}}"#;
        let g = load_instance(doc).unwrap();
        assert!(!g.omega_contains(&ivec(&[1, 3])).unwrap());
        assert!(g.omega_contains(&ivec(&[4, 3])).unwrap());
        assert!(!g.sigma_contains(&ivec(&[1])).unwrap());
        assert!(g.sigma_contains(&ivec(&[5])).unwrap());
        // Only (2, 3) lies over 5.
        assert_eq!(g.integral_fiber_hull(&ivec(&[5])).unwrap(), pts(&[&[2, 3]]));
    }

    #[test]
    fn positivity_and_support() {
        let w = load_instance(W112).unwrap();
        assert!(w.is_positive_grading().unwrap());
        assert!(w.support_cone().is_full_space());
        let m = load_instance(M23).unwrap();
        assert!(!m.is_positive_grading().unwrap());
        assert_eq!(m.support_cone(), Cone::from_inequalities(2, &[ivec(&[3, 2])], &[]));
        let zero = r#"{"n": 2, "r": 1, "pi": [[0,0]], "omega": {"kind": "normal", "generators": [[1,0],[0,1]]}}"#;
        assert!(matches!(load_instance(zero), Err(Error::RankDeficient { rank: 0, r: 1 })));
        // The zero map to the trivial torus: the zero fiber is the orthant.
        let trivial = r#"{"n": 2, "r": 0, "pi": [], "omega": {"kind": "normal", "generators": [[1,0],[0,1]]}}"#;
        let trivial = load_instance(trivial).unwrap();
        assert!(!trivial.is_positive_grading().unwrap());
        assert_eq!(trivial.support_cone(), *trivial.omega_cone());
        let id = r#"{"n": 2, "r": 2, "pi": [[1,0],[0,1]], "omega": {"kind": "normal", "generators": [[1,0],[0,1]]}}"#;
        let id = load_instance(id).unwrap();
        assert!(id.support_cone().is_full_space());
        assert!(id.is_positive_grading().unwrap());
    }

    #[test]
    fn hull_inside_fiber_and_shared_recession() {
        let m = load_instance(M23).unwrap();
        let p0 = m.fiber_polyhedron(&ivec(&[0])).unwrap();
        for chi in -6..=6 {
            let chi = ivec(&[chi]);
            let real = m.fiber_polyhedron(&chi).unwrap();
            let hull = m.integral_fiber_hull(&chi).unwrap();
            assert!(real.contains(&hull));
            assert_eq!(hull.recession_cone(), p0.recession_cone());
            assert_eq!(real.recession_cone(), p0.recession_cone());
        }
    }
}
