//! Exact scalars, vectors and lattice algorithms.
//!
//! Every coordinate in the crate is an arbitrary-precision integer or a
//! normalized rational. Nothing here rounds.

mod linalg;
mod matrix;

pub use linalg::{
    canonical_subspace, in_span, nullspace, orthogonal_complement, project_off, rank, rref,
    solve_in_basis,
};
pub use matrix::{hermite_normal_form, integral_preimage, lattice_basis, Hnf, IntMatrix};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt::Write as _;

pub type Int = BigInt;
pub type Rat = BigRational;
pub type IntVec = Vec<Int>;
pub type RatVec = Vec<Rat>;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

pub fn ivec(values: &[i64]) -> IntVec {
    values.iter().map(|&v| Int::from(v)).collect()
}

pub fn to_rat(v: &[Int]) -> RatVec {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

pub fn zero_vec(dim: usize) -> IntVec {
    vec![Int::zero(); dim]
}

pub fn unit_vec(dim: usize, i: usize) -> IntVec {
    let mut v = zero_vec(dim);
    v[i] = Int::one();
    v
}

pub fn is_zero(v: &[Int]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Int::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

/// `<a, b>` for integer `a` and rational `b`.
pub fn dot_mixed(a: &[Int], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() {
            acc += y * x;
        }
    }
    acc
}

pub fn add(a: &[Int], b: &[Int]) -> IntVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Int], b: &[Int]) -> IntVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg(a: &[Int]) -> IntVec {
    a.iter().map(|x| -x).collect()
}

pub fn scale(a: &[Int], c: &Int) -> IntVec {
    a.iter().map(|x| x * c).collect()
}

pub fn add_rat(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_rat(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_rat(a: &[Rat], c: &Rat) -> RatVec {
    a.iter().map(|x| x * c).collect()
}

pub fn gcd_all(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

pub fn lcm_denominators(v: &[Rat]) -> Int {
    v.iter().fold(Int::one(), |l, x| l.lcm(x.denom()))
}

/// Divides an integer vector by the gcd of its entries. The zero vector is
/// returned unchanged.
pub fn make_primitive(v: IntVec) -> IntVec {
    let g = gcd_all(&v);
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|x| x / &g).collect()
}

/// The integer vector with coprime entries on the ray through `v`.
pub fn primitive(v: &[Rat]) -> Result<IntVec> {
    if v.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector);
    }
    let l = lcm_denominators(v);
    let scaled: IntVec = v.iter().map(|x| (x * &l).to_integer()).collect();
    Ok(make_primitive(scaled))
}

/// Clears denominators of a rational vector, keeping the ray (not primitive).
pub fn clear_denominators(v: &[Rat]) -> IntVec {
    let l = lcm_denominators(v);
    v.iter().map(|x| (x * &l).to_integer()).collect()
}

pub fn is_integral(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_integer())
}

pub fn rat_to_int(v: &[Rat]) -> Option<IntVec> {
    if is_integral(v) {
        Some(v.iter().map(|x| x.to_integer()).collect())
    } else {
        None
    }
}

/// First nonzero coordinate is positive; the zero vector is left alone.
pub fn orient(v: IntVec) -> IntVec {
    match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => neg(&v),
        _ => v,
    }
}

pub fn fmt_vec(v: &[Int]) -> String {
    let mut s = String::from("(");
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{x}");
    }
    s.push(')');
    s
}

pub fn fmt_rat_vec(v: &[Rat]) -> String {
    let mut s = String::from("(");
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{x}");
    }
    s.push(')');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn primitive_examples() {
        let v = vec![rat(2, 1), rat(4, 1), rat(6, 1)];
        assert_eq!(primitive(&v).unwrap(), ivec(&[1, 2, 3]));
        let v = vec![rat(1, 2), rat(3, 2)];
        assert_eq!(primitive(&v).unwrap(), ivec(&[1, 3]));
        let v = vec![rat(-3, 1), rat(0, 1)];
        assert_eq!(primitive(&v).unwrap(), ivec(&[-1, 0]));
    }

    #[test]
    fn primitive_rejects_zero() {
        assert_eq!(primitive(&[rat(0, 1), rat(0, 5)]), Err(Error::ZeroVector));
    }

    proptest! {
        #[test]
        fn primitive_is_scale_invariant(
            v in prop::collection::vec(-20i64..20, 1..6),
            num in 1i64..30,
            den in 1i64..30,
        ) {
            prop_assume!(v.iter().any(|&x| x != 0));
            let base: RatVec = v.iter().map(|&x| rat(x, 1)).collect();
            let c = rat(num, den);
            let scaled = scale_rat(&base, &c);
            prop_assert_eq!(primitive(&scaled).unwrap(), primitive(&base).unwrap());
        }
    }
}
