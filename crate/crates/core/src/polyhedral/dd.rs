//! Double description method.
//!
//! [`cone_generators`] converts `{x : A x >= 0, E x = 0}` into extreme rays
//! plus a lineality basis. Running it on the dual system converts in the
//! other direction, so the same routine serves both representations.

use crate::exact::{self, dot, make_primitive, Int, IntVec};
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64).max(1)],
        }
    }

    /// `{0, .., k-1}` inside a set of capacity `len`.
    fn prefix(k: usize, len: usize) -> Self {
        let mut s = Self::new(len);
        for i in 0..k {
            s.insert(i);
        }
        s
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn intersection(&self, other: &Self) -> Self {
        Self {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    fn is_superset(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| b & !a == 0)
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct Ray {
    v: IntVec,
    zeros: BitSet,
}

/// Extreme rays and lineality basis of `{x in R^dim : a.x >= 0 for a in
/// ineqs, e.x = 0 for e in eqs}`.
///
/// Rays are primitive but not yet canonical (see `Cone` for that); the
/// lineality basis is primitive. Constraints are processed in the order
/// given, which only affects running time.
pub fn cone_generators(dim: usize, ineqs: &[IntVec], eqs: &[IntVec]) -> (Vec<IntVec>, Vec<IntVec>) {
    let mut lineality: Vec<IntVec> = if eqs.is_empty() {
        (0..dim).map(|i| exact::unit_vec(dim, i)).collect()
    } else {
        exact::nullspace(eqs, dim)
    };
    let ker_dim = lineality.len();
    let m = ineqs.len();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, a) in ineqs.iter().enumerate() {
        debug_assert_eq!(a.len(), dim);
        if exact::is_zero(a) {
            for r in rays.iter_mut() {
                r.zeros.insert(k);
            }
            continue;
        }

        // A lineality direction not annihilated by `a` becomes a ray.
        if let Some(pos) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lineality.swap_remove(pos);
            let mut s0 = dot(a, &l0);
            if s0.is_negative() {
                l0 = exact::neg(&l0);
                s0 = -s0;
            }
            for l in lineality.iter_mut() {
                let s = dot(a, l);
                if !s.is_zero() {
                    *l = make_primitive(exact::sub(&exact::scale(l, &s0), &exact::scale(&l0, &s)));
                }
            }
            for r in rays.iter_mut() {
                let s = dot(a, &r.v);
                if !s.is_zero() {
                    r.v = make_primitive(exact::sub(&exact::scale(&r.v, &s0), &exact::scale(&l0, &s)));
                }
                r.zeros.insert(k);
            }
            rays.push(Ray {
                v: l0,
                zeros: BitSet::prefix(k, m),
            });
            continue;
        }

        let values: Vec<Int> = rays.iter().map(|r| dot(a, &r.v)).collect();
        if values.iter().all(|s| !s.is_negative()) {
            for (r, s) in rays.iter_mut().zip(&values) {
                if s.is_zero() {
                    r.zeros.insert(k);
                }
            }
            continue;
        }

        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let negs: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        let pointed_dim = ker_dim - lineality.len();
        let min_common = pointed_dim.saturating_sub(2);

        let mut new_rays: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &n in &negs {
                let common = rays[p].zeros.intersection(&rays[n].zeros);
                if common.count() < min_common {
                    continue;
                }
                let adjacent = rays.iter().enumerate().all(|(i, r)| {
                    i == p || i == n || !r.zeros.is_superset(&common)
                });
                if !adjacent {
                    continue;
                }
                let sp = &values[p];
                let sn = -&values[n];
                let w = exact::add(&exact::scale(&rays[n].v, sp), &exact::scale(&rays[p].v, &sn));
                let mut zeros = common;
                zeros.insert(k);
                new_rays.push(Ray {
                    v: make_primitive(w),
                    zeros,
                });
            }
        }

        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + new_rays.len());
        for (r, s) in rays.into_iter().zip(&values) {
            if s.is_negative() {
                continue;
            }
            let mut r = r;
            if s.is_zero() {
                r.zeros.insert(k);
            }
            kept.push(r);
        }
        kept.extend(new_rays);
        rays = kept;
    }

    (rays.into_iter().map(|r| r.v).collect(), lineality)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ivec;

    fn sorted(mut v: Vec<IntVec>) -> Vec<IntVec> {
        v.sort();
        v
    }

    #[test]
    fn orthant() {
        let (rays, lin) = cone_generators(2, &[ivec(&[1, 0]), ivec(&[0, 1])], &[]);
        assert!(lin.is_empty());
        assert_eq!(sorted(rays), vec![ivec(&[0, 1]), ivec(&[1, 0])]);
    }

    #[test]
    fn half_plane_keeps_a_line() {
        let (rays, lin) = cone_generators(2, &[ivec(&[0, 1])], &[]);
        assert_eq!(rays, vec![ivec(&[0, 1])]);
        assert_eq!(lin.len(), 1);
        assert!(dot(&lin[0], &ivec(&[0, 1])).is_zero());
    }

    #[test]
    fn square_pyramid_rays() {
        // x3 >= |x1|, x3 >= |x2| has four extreme rays.
        let ineqs = vec![
            ivec(&[1, 0, 1]),
            ivec(&[-1, 0, 1]),
            ivec(&[0, 1, 1]),
            ivec(&[0, -1, 1]),
        ];
        let (rays, lin) = cone_generators(3, &ineqs, &[]);
        assert!(lin.is_empty());
        assert_eq!(
            sorted(rays),
            vec![ivec(&[-1, -1, 1]), ivec(&[-1, 1, 1]), ivec(&[1, -1, 1]), ivec(&[1, 1, 1])]
        );
    }

    #[test]
    fn infeasible_interior_collapses_to_zero() {
        let (rays, lin) = cone_generators(1, &[ivec(&[1]), ivec(&[-1])], &[]);
        assert!(rays.is_empty());
        assert!(lin.is_empty());
    }
}
