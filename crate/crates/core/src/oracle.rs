//! Independent check of a Hilbert fan: integer `lambda` on a grid are
//! classified by the faces they minimize on the representative fibers, and
//! the classes are compared with the cones of the fan.

use crate::degeneration::{min_face_tuple, FaceKey};
use crate::error::Result;
use crate::exact::{Int, IntVec};
use crate::pipeline::Analysis;
use crate::polyhedral::Cone;
use std::collections::HashMap;

pub const DEFAULT_GRID_BOUND: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub bound: u32,
    /// Grid points in the support cone.
    pub tested: usize,
    /// Maximal cones whose interior contains a grid point.
    pub maximal_cones_hit: usize,
    /// Distinct cones (of any dimension) met by the grid.
    pub cones_hit: usize,
    /// Grid points whose minimizing faces disagree with their cone, sorted.
    pub misclassified: Vec<IntVec>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.misclassified.is_empty()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Location {
    Interior(usize),
    Face(Cone),
}

fn grid(n: usize, bound: u32) -> Vec<IntVec> {
    let b = i64::from(bound);
    let mut out: Vec<IntVec> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-b..=b).map(move |x| {
                    let mut q = p.clone();
                    q.push(Int::from(x));
                    q
                })
            })
            .collect();
    }
    out
}

/// Runs the grid `[-bound, bound]^n`. Two grid points must share their
/// minimizing faces exactly when they share their smallest cone of the fan.
pub fn lambda_grid_oracle(analysis: &Analysis, bound: u32) -> Result<OracleReport> {
    let fan = analysis.hilbert_fan();
    let support = analysis.instance.support_cone();
    let mut by_location: HashMap<Location, Vec<(IntVec, FaceKeys)>> = HashMap::new();
    let mut tested = 0;
    for lambda in grid(analysis.instance.n(), bound) {
        if !support.contains(&lambda) {
            continue;
        }
        tested += 1;
        let loc = match fan.locate_interior(&lambda) {
            Some(i) => Location::Interior(i),
            None => Location::Face(fan.minimal_cone(&lambda).expect("grid point in the support")),
        };
        let key = min_face_tuple(analysis, &lambda)?;
        by_location.entry(loc).or_default().push((lambda, key));
    }
    // A point is misclassified if its key differs from the first key of its
    // cone, or if that key also occurs in another cone.
    let mut owners: HashMap<&FaceKeys, usize> = HashMap::new();
    for points in by_location.values() {
        *owners.entry(&points[0].1).or_default() += 1;
    }
    let mut misclassified = Vec::new();
    for points in by_location.values() {
        let key = &points[0].1;
        for (lambda, own) in points {
            if own != key || owners[key] > 1 {
                misclassified.push(lambda.clone());
            }
        }
    }
    misclassified.sort();
    let maximal_cones_hit = by_location.keys().filter(|l| matches!(l, Location::Interior(_))).count();
    Ok(OracleReport {
        bound,
        tested,
        maximal_cones_hit,
        cones_hit: by_location.len(),
        misclassified,
    })
}

type FaceKeys = Vec<FaceKey>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::load_instance;

    #[test]
    fn w112_grid() {
        let w = load_instance(
            r#"{"n": 3, "r": 1, "pi": [[1, 1, 2]],
            "omega": {"kind": "normal", "generators": [[1,0,0],[0,1,0],[0,0,1]]}}"#,
        )
        .unwrap();
        let a = Analysis::compute(w).unwrap();
        let r = lambda_grid_oracle(&a, 3).unwrap();
        assert!(r.passed());
        assert_eq!(r.tested, 343);
        assert_eq!(r.maximal_cones_hit, 4);

        // The coarser fiber fan in place of the Hilbert fan is detected.
        let mut wrong = a.clone();
        wrong.hilbert.fan = a.real.fan.clone();
        assert!(!lambda_grid_oracle(&wrong, 3).unwrap().passed());
    }

    #[test]
    fn m23_grid() {
        let m = load_instance(
            r#"{"n": 2, "r": 1, "pi": [[2, -3]],
            "omega": {"kind": "normal", "generators": [[1,0],[0,1]]}}"#,
        )
        .unwrap();
        let a = Analysis::compute(m).unwrap();
        let r = lambda_grid_oracle(&a, 6).unwrap();
        assert!(r.passed());
        assert_eq!(r.maximal_cones_hit, 1);
        assert!(r.tested < 169);
    }
}
