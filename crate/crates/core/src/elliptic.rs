//! The rational elliptic surfaces `(x+y+z)(a·xy + b·yz + c·zx) = t·xyz`.
//!
//! A fibre over `t` is an elliptic curve once `abct·A(a,b,c,t) ≠ 0`, where
//! `A` is the product of `t − (√a ± √b ± √c)²` over the four sign pairs.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite_field::PrimeContext;
use crate::rational::Rational;

/// A point of the base line: a finite rational value or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum BasePoint {
    Finite(Rational),
    Infinity,
}

impl fmt::Display for BasePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasePoint::Finite(r) => write!(f, "{r}"),
            BasePoint::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EllipticFibre {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub t: BasePoint,
}

impl EllipticFibre {
    pub fn new(a: Rational, b: Rational, c: Rational, t: BasePoint) -> Result<Self> {
        if a.is_zero() || b.is_zero() || c.is_zero() {
            return Err(Error::InvalidParam("fibre coefficients must be nonzero".into()));
        }
        Ok(EllipticFibre { a, b, c, t })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FibreKind {
    I(u32),
    III,
    Smooth,
}

impl FibreKind {
    pub fn euler_contribution(&self) -> u32 {
        match self {
            FibreKind::I(n) => *n,
            FibreKind::III => 3,
            FibreKind::Smooth => 0,
        }
    }
}

impl fmt::Display for FibreKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FibreKind::I(n) => write!(f, "I_{n}"),
            FibreKind::III => write!(f, "III"),
            FibreKind::Smooth => write!(f, "smooth"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FibreType {
    pub kind: FibreKind,
    pub location: BasePoint,
}

impl fmt::Display for FibreType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.kind, self.location)
    }
}

/// `A(a,b,c,t) = Q² − 64abct` with `Q = a²+b²+c²+t² − 2Σ(pairwise products)`.
pub fn discriminant_product(a: Rational, b: Rational, c: Rational, t: Rational) -> Rational {
    let q = quadratic_form(a, b, c, t);
    q.square() - Rational::integer(64) * a * b * c * t
}

/// The same product evaluated directly from square roots of `a`, `b`, `c`.
pub fn discriminant_product_from_roots(ra: Rational, rb: Rational, rc: Rational, t: Rational) -> Rational {
    sign_pairs(ra, rb, rc).iter().fold(Rational::one(), |acc, &s| acc * (t - s.square()))
}

fn quadratic_form(a: Rational, b: Rational, c: Rational, t: Rational) -> Rational {
    let two = Rational::integer(2);
    a.square() + b.square() + c.square() + t.square() - two * (a * b + a * c + a * t + b * c + b * t + c * t)
}

fn sign_pairs(ra: Rational, rb: Rational, rc: Rational) -> [Rational; 4] {
    [ra + rb + rc, ra + rb - rc, ra - rb + rc, ra - rb - rc]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JInvariant {
    Finite(Rational),
    Infinity,
}

/// `j = (A + 16abct)³ / ((abct)² · A)`.
pub fn j_invariant(a: Rational, b: Rational, c: Rational, t: Rational) -> JInvariant {
    let big_a = discriminant_product(a, b, c, t);
    let abct = a * b * c * t;
    let den = abct.square() * big_a;
    if den.is_zero() {
        return JInvariant::Infinity;
    }
    let num = big_a + Rational::integer(16) * abct;
    JInvariant::Finite(num.pow(3) / den)
}

/// Coefficients `(c2, c1, c0)` of the monic cubic in `y² = x³ + c2·x² + c1·x + c0`.
///
/// The model is `y² = x((x + s)² − A/(64a⁴))` with `s = Q/(8a²)`, whose linear
/// coefficient simplifies to `bct/a³`.
pub fn weierstrass_model(a: Rational, b: Rational, c: Rational, t: Rational) -> [Rational; 3] {
    let s = quadratic_form(a, b, c, t) / (Rational::integer(8) * a.square());
    let lin = s.square() - discriminant_product(a, b, c, t) / (Rational::integer(64) * a.pow(4));
    [Rational::integer(2) * s, lin, Rational::zero()]
}

/// Discriminant `−4c2³c0 + c2²c1² + 18c2c1c0 − 4c1³ − 27c0²` of a monic cubic.
pub fn cubic_discriminant(coeffs: &[Rational; 3]) -> Rational {
    let [c2, c1, c0] = *coeffs;
    let k = |n: i128| Rational::integer(n);
    k(-4) * c2.pow(3) * c0 + c2.square() * c1.square() + k(18) * c2 * c1 * c0 - k(4) * c1.pow(3) - k(27) * c0.square()
}

/// j-invariant of `y² = x³ + c2·x² + c1·x + c0`.
pub fn j_from_weierstrass(coeffs: &[Rational; 3]) -> JInvariant {
    let [c2, c1, c0] = *coeffs;
    let k = |n: i128| Rational::integer(n);
    let b2 = k(4) * c2;
    let b4 = k(2) * c1;
    let b6 = k(4) * c0;
    let b8 = k(4) * c2 * c0 - c1.square();
    let c4 = b2.square() - k(24) * b4;
    let delta = -b2.square() * b8 - k(8) * b4.pow(3) - k(27) * b6.square() + k(9) * b2 * b4 * b6;
    if delta.is_zero() {
        JInvariant::Infinity
    } else {
        JInvariant::Finite(c4.pow(3) / delta)
    }
}

/// Singular fibres of the surface with coefficients `(ra², rb², rc²)`, given the roots.
///
/// Order: infinity, zero, then the remaining locations ascending.
pub fn classify_fibres(ra: Rational, rb: Rational, rc: Rational) -> Result<Vec<FibreType>> {
    if ra.is_zero() || rb.is_zero() || rc.is_zero() {
        return Err(Error::InvalidParam("fibre coefficients must be nonzero".into()));
    }
    let mut zero_hits = 0u32;
    let mut finite: Vec<(Rational, u32)> = Vec::new();
    for s in sign_pairs(ra, rb, rc) {
        let v = s.square();
        if v.is_zero() {
            zero_hits += 1;
            continue;
        }
        match finite.iter_mut().find(|(loc, _)| *loc == v) {
            Some(entry) => entry.1 += 1,
            None => finite.push((v, 1)),
        }
    }
    finite.sort();
    let mut out = vec![
        FibreType { kind: FibreKind::I(6), location: BasePoint::Infinity },
        FibreType {
            kind: if zero_hits > 0 { FibreKind::III } else { FibreKind::I(2) },
            location: BasePoint::Finite(Rational::zero()),
        },
    ];
    out.extend(finite.into_iter().map(|(loc, m)| FibreType { kind: FibreKind::I(m), location: BasePoint::Finite(loc) }));
    Ok(out)
}

pub fn euler_sum(fibres: &[FibreType]) -> u32 {
    fibres.iter().map(|f| f.kind.euler_contribution()).sum()
}

/// Projective `F_p`-points of `(x+y+z)(a·xy + b·yz + c·zx) = t·xyz`.
pub fn count_points_plane_cubic(ctx: &PrimeContext, a: i64, b: i64, c: i64, t: i64) -> u64 {
    let p = ctx.p();
    let (a, b, c, t) = (ctx.reduce(a), ctx.reduce(b), ctx.reduce(c), ctx.reduce(t));
    let eval = |x: u64, y: u64, z: u64| -> bool {
        let s = (x + y + z) % p;
        let q = (a * x % p * y + b * y % p * z + c * z % p * x) % p;
        let lhs = s * q % p;
        let rhs = t * x % p * y % p * z % p;
        lhs == rhs
    };
    let mut count = 0u64;
    for x in 0..p {
        for y in 0..p {
            if eval(x, y, 1) {
                count += 1;
            }
        }
    }
    for x in 0..p {
        if eval(x, 1, 0) {
            count += 1;
        }
    }
    if eval(1, 0, 0) {
        count += 1;
    }
    count
}

/// Projective points on the Weierstrass model of the fibre, reduced mod p.
pub fn count_points_weierstrass(ctx: &PrimeContext, a: i64, b: i64, c: i64, t: i64) -> Result<u64> {
    let r = |x: i64| Rational::integer(x as i128);
    let model = weierstrass_model(r(a), r(b), r(c), r(t));
    let p = ctx.p();
    let mut red = [0u64; 3];
    for (k, coeff) in model.iter().enumerate() {
        red[k] = coeff.mod_p(p).ok_or(Error::SingularFibre { p })?;
    }
    let mut count = 1u64;
    for x in 0..p {
        let f = (((x + red[0]) % p * x % p + red[1]) % p * x % p + red[2]) % p;
        count += (1 + ctx.chi(f) as i64) as u64;
    }
    Ok(count)
}

/// Whether the fibre reduces to a smooth curve: `p ∤ abct · A(a,b,c,t)`.
pub fn has_good_reduction(ctx: &PrimeContext, a: i64, b: i64, c: i64, t: i64) -> bool {
    let r = |x: i64| Rational::integer(x as i128);
    let big_a = discriminant_product(r(a), r(b), r(c), r(t));
    let abct = r(a) * r(b) * r(c) * r(t);
    matches!((abct * big_a).mod_p(ctx.p()), Some(v) if v != 0)
}

/// Frobenius trace `p + 1 − #E(F_p)` of a smooth fibre.
pub fn trace_ap(ctx: &PrimeContext, a: i64, b: i64, c: i64, t: i64) -> Result<i64> {
    if !has_good_reduction(ctx, a, b, c, t) {
        return Err(Error::SingularFibre { p: ctx.p() });
    }
    Ok(ctx.p() as i64 + 1 - count_points_plane_cubic(ctx, a, b, c, t) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i128) -> Rational {
        Rational::integer(n)
    }

    #[test]
    fn discriminant_values() {
        assert_eq!(discriminant_product(r(1), r(1), r(1), r(25)), r(221184));
        assert_eq!(discriminant_product(r(1), r(1), r(1), r(9)), r(0));
        assert_eq!(discriminant_product(r(1), r(4), r(4), r(1)), discriminant_product_from_roots(r(1), r(2), r(2), r(1)));
        assert_eq!(discriminant_product_from_roots(r(1), r(1), r(1), r(25)), r(16 * 24 * 24 * 24));
    }

    #[test]
    fn nonrigid_j_invariants() {
        let j = |a, b, c, t| match j_invariant(r(a), r(b), r(c), r(t)) {
            JInvariant::Finite(v) => v,
            JInvariant::Infinity => panic!("infinite j"),
        };
        let cube = |x: i128| x * x * x;
        assert_eq!(j(1, 1, 1, 25), Rational::new(cube(11) * cube(1259), 2 * 27 * 625));
        assert_eq!(j(1, 9, 9, 9), Rational::new(cube(11) * cube(13) * cube(23), 2 * 531441 * 5));
        assert_eq!(j(4, 4, 4, 16), Rational::new(cube(71), 16 * 27 * 5));
        assert_eq!(j_invariant(r(1), r(1), r(1), r(9)), JInvariant::Infinity);
        assert_eq!(j_invariant(r(1), r(1), r(1), r(0)), JInvariant::Infinity);
    }

    #[test]
    fn weierstrass_consistency() {
        let m = weierstrass_model(r(1), r(1), r(1), r(25));
        assert!(!cubic_discriminant(&m).is_zero());
        assert_eq!(j_from_weierstrass(&m), j_invariant(r(1), r(1), r(1), r(25)));
        assert!(cubic_discriminant(&weierstrass_model(r(1), r(1), r(1), r(9))).is_zero());
        let (a, b, c, t) = (Rational::new(3, 2), r(5), r(-7), Rational::new(11, 3));
        assert_eq!(j_from_weierstrass(&weierstrass_model(a, b, c, t)), j_invariant(a, b, c, t));
    }

    #[test]
    fn table_two_examples() {
        let show = |a, b, c| {
            classify_fibres(r(a), r(b), r(c)).unwrap().iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" ")
        };
        assert_eq!(show(1, 1, 1), "I_6@inf I_2@0 I_3@1 I_1@9");
        assert_eq!(show(1, 2, 2), "I_6@inf I_2@0 I_2@1 I_1@9 I_1@25");
        assert_eq!(show(1, 1, 2), "I_6@inf III@0 I_2@4 I_1@16");
        assert_eq!(show(3, 1, 1), "I_6@inf I_2@0 I_1@1 I_2@9 I_1@25");
        assert_eq!(show(5, 1, 1), "I_6@inf I_2@0 I_1@9 I_2@25 I_1@49");
    }

    #[test]
    fn b_p_samples() {
        let ctx = |p| PrimeContext::new(p).unwrap();
        assert_eq!(count_points_plane_cubic(&ctx(7), 1, 1, 1, 25), 12);
        assert_eq!(count_points_plane_cubic(&ctx(17), 1, 1, 1, 25), 12);
        assert_eq!(trace_ap(&ctx(19), 1, 1, 1, 25), Ok(-4));
        assert_eq!(trace_ap(&ctx(31), 1, 9, 9, 9), Ok(8));
        assert_eq!(trace_ap(&ctx(73), 1, 1, 1, 25), Ok(2));
        assert_eq!(trace_ap(&ctx(7), 1, 1, 1, 9), Err(Error::SingularFibre { p: 7 }));
    }

    #[test]
    fn two_models_agree() {
        for p in [5, 7, 11, 13] {
            let ctx = PrimeContext::new(p).unwrap();
            for (a, b, c, t) in [(1, 1, 1, 25), (1, 9, 9, 9), (4, 4, 4, 16), (2, 3, 5, 7), (1, 4, 9, 11)] {
                if !has_good_reduction(&ctx, a, b, c, t) {
                    continue;
                }
                assert_eq!(
                    count_points_plane_cubic(&ctx, a, b, c, t),
                    count_points_weierstrass(&ctx, a, b, c, t).unwrap(),
                    "{a} {b} {c} {t} mod {p}"
                );
            }
        }
    }
}
