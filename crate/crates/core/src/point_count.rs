//! Point counts of the resolved threefold over `F_p`.
//!
//! The count splits into the open torus, the toric boundary together with
//! the lines resolving its 30 nodes, and one quadric for each interior node.
//! Only the torus needs a character sum; everything else is a polynomial in p.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::elliptic;
use crate::error::{Error, Result};
use crate::finite_field::{self, PrimeContext};
use crate::geometry::{self, FamilyParam, NodeWitness};

/// Largest prime accepted by the O(p⁴) oracle.
pub const ORACLE_MAX_PRIME: u64 = 101;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountBreakdown {
    pub p: u64,
    /// `Σ_{x,y,z} (χ(D) + 1)` over the torus chart.
    pub torus_sum: i64,
    /// Points off the torus, `50p² + 10p + 20`.
    pub boundary: i64,
    /// Lines over the 30 boundary nodes, `30p`.
    pub boundary_resolution: i64,
    /// `−2(p² − 3p + 3)` from solutions the character sum miscounts.
    pub torus_correction: i64,
    /// Quadrics over the interior nodes, each adding `p(p + 1 + χ)`.
    pub interior_resolution: i64,
    /// `ρ(a_1,a_6) · (#E_{a_2,a_3,a_5,a_4} − 6)`.
    pub rho_correction: i64,
    pub total: i64,
}

pub fn closed_form_constant(p: u64) -> i64 {
    let p = p as i64;
    48 * p * p + 46 * p + 14
}

impl CountBreakdown {
    /// `#(X_a ∩ T)(F_p)`.
    pub fn torus_count(&self) -> i64 {
        self.torus_sum + self.torus_correction + self.rho_correction
    }

    pub fn recomposes(&self) -> bool {
        let pieces = self.boundary + self.boundary_resolution + self.torus_correction;
        pieces == closed_form_constant(self.p)
            && self.total == closed_form_constant(self.p) + self.torus_sum + self.interior_resolution + self.rho_correction
    }
}

fn check_units(ctx: &PrimeContext, a: &[i64; 6]) -> Result<[u64; 6]> {
    let mut out = [0u64; 6];
    for (i, &x) in a.iter().enumerate() {
        out[i] = ctx.reduce(x);
        if out[i] == 0 {
            return Err(Error::CoefficientVanishes { index: i + 1, value: x, p: ctx.p() });
        }
    }
    Ok(out)
}

fn torus_slice(ctx: &PrimeContext, a: &[u64; 6], x: u64, a4_over_z: &[u64]) -> i64 {
    let p = ctx.p();
    let inv = ctx.inverse_table();
    let chi = ctx.square_table();
    let [a1, a2, a3, _, a5, a6] = *a;
    let shift = (2 * p - a1 - a6) % p;
    let k = (p - 4 * a1 % p * a6 % p) % p;
    let bx = (a2 * inv[x as usize] as u64 + a5) % p;
    let mut sum = 0i64;
    for y in 1..p {
        let bxy = (bx + a3 * inv[y as usize] as u64) % p;
        let sxy = (1 + x + y) % p;
        let mut s = sxy;
        for z in 1..p {
            s += 1;
            if s >= p {
                s -= p;
            }
            let mut b = bxy + a4_over_z[z as usize];
            if b >= p {
                b -= p;
            }
            let v = (s * b + shift) % p;
            let d = (v * v + k) % p;
            sum += chi[d as usize] as i64 + 1;
        }
    }
    sum
}

/// `Σ_{x,y,z ∈ F_p^×} (χ(((1+x+y+z)(a_2/x + a_3/y + a_4/z + a_5) − a_1 − a_6)² − 4a_1a_6) + 1)`.
pub fn count_torus_sum(ctx: &PrimeContext, a: &[i64; 6]) -> Result<i64> {
    let red = check_units(ctx, a)?;
    let p = ctx.p();
    let a4_over_z: Vec<u64> =
        (0..p).map(|z| if z == 0 { 0 } else { red[3] * ctx.inverse_table()[z as usize] as u64 % p }).collect();
    Ok((1..p).map(|x| torus_slice(ctx, &red, x, &a4_over_z)).sum())
}

/// `ρ(a_1, a_6) · (#E_{a_2,a_3,a_5,a_4}(F_p) − 6)`.
pub fn rho_correction(ctx: &PrimeContext, a: &[i64; 6]) -> i64 {
    if ctx.reduce(a[0]) != ctx.reduce(a[5]) {
        return 0;
    }
    let e = elliptic::count_points_plane_cubic(ctx, a[1], a[2], a[4], a[3]) as i64;
    ctx.p() as i64 * (e - 6)
}

/// `#(X_a ∩ T)(F_p)` from the character sum.
pub fn torus_count(ctx: &PrimeContext, a: &[i64; 6]) -> Result<i64> {
    let p = ctx.p() as i64;
    Ok(count_torus_sum(ctx, a)? - 2 * (p * p - 3 * p + 3) + rho_correction(ctx, a))
}

/// Direct count of `(X_1:…:X_4:1)` in the torus on the defining equation; O(p⁴).
pub fn oracle_count_torus(ctx: &PrimeContext, a: &[i64; 6]) -> Result<i64> {
    let p = ctx.p();
    if p > ORACLE_MAX_PRIME {
        return Err(Error::PrimeTooLarge { p: p as i64, bound: ORACLE_MAX_PRIME as i64 });
    }
    let red = check_units(ctx, a)?;
    let inv = ctx.inverse_table();
    let mut count = 0i64;
    for x1 in 1..p {
        let t1 = red[0] * inv[x1 as usize] as u64 + red[4];
        for x2 in 1..p {
            let t2 = t1 + red[1] * inv[x2 as usize] as u64;
            for x3 in 1..p {
                let t3 = (t2 + red[2] * inv[x3 as usize] as u64) % p;
                for x4 in 1..p {
                    let s = (x1 + x2 + x3 + x4 + 1) % p;
                    let t = (t3 + red[3] * inv[x4 as usize] as u64) % p;
                    if s * t % p == red[5] {
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(count)
}

/// Points on the quadric replacing the node of witness `b`: `p² + 1 + p(1 + χ(b_1···b_5·Σb))`.
pub fn quadric_points(ctx: &PrimeContext, b: &NodeWitness) -> u64 {
    let p = ctx.p();
    let prod = b.six_tuple().iter().fold(1u64, |acc, &x| acc * ctx.reduce(x) % p);
    let chi = ctx.chi(prod) as i64;
    ((p * p + 1) as i64 + p as i64 * (1 + chi)) as u64
}

/// Whether the resolved count formula applies at this prime.
pub fn is_good_for_counting(ctx: &PrimeContext, a: &FamilyParam) -> bool {
    matches!(finite_field::bad_prime_indicator(ctx, a.coords()), Ok(false))
}

pub fn count_resolved(ctx: &PrimeContext, a: &FamilyParam, witness: Option<&NodeWitness>) -> Result<CountBreakdown> {
    let p = ctx.p();
    if !is_good_for_counting(ctx, a) {
        return Err(Error::BadPrime { p, family: a.to_string() });
    }
    let witness = match witness {
        Some(w) if geometry::phi(w) == *a => Some(*w),
        Some(w) => return Err(Error::InvalidWitness(format!("{:?} is not a witness for {a}", w.entries()))),
        None => geometry::find_witness(a)?,
    };
    let coords = a.coords();
    let pi = p as i64;
    let torus_sum = count_torus_sum(ctx, coords)?;
    let interior_resolution: i64 = witness
        .map(|w| {
            geometry::interior_nodes(&w)
                .iter()
                .map(|node| {
                    let c = NodeWitness::new(node.witness).expect("sign flips keep a witness");
                    quadric_points(ctx, &c) as i64 - 1
                })
                .sum()
        })
        .unwrap_or(0);
    let rho = rho_correction(ctx, coords);
    let boundary = 50 * pi * pi + 10 * pi + 20;
    let boundary_resolution = 30 * pi;
    let torus_correction = -2 * (pi * pi - 3 * pi + 3);
    let total = boundary + boundary_resolution + torus_sum + torus_correction + interior_resolution + rho;
    Ok(CountBreakdown {
        p,
        torus_sum,
        boundary,
        boundary_resolution,
        torus_correction,
        interior_resolution,
        rho_correction: rho,
        total,
    })
}

/// Resolved counts at several primes, fanned out over the worker pool in input order.
pub fn count_many(a: &FamilyParam, primes: &[u64]) -> Vec<Result<CountBreakdown>> {
    let one = |&p: &u64| -> Result<CountBreakdown> {
        let ctx = PrimeContext::new(p as i64)?;
        count_resolved(&ctx, a, None)
    };
    if crate::worker_count() > 1 {
        crate::with_workers(|| primes.par_iter().map(one).collect())
    } else {
        primes.iter().map(one).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: i64) -> PrimeContext {
        PrimeContext::new(p).unwrap()
    }

    fn fam(a: [i64; 6]) -> FamilyParam {
        FamilyParam::new(a).unwrap()
    }

    #[test]
    fn small_table_entries() {
        let total = |a, p| count_resolved(&ctx(p), &fam(a), None).unwrap().total;
        assert_eq!(total([1; 6], 7), 3720);
        assert_eq!(total([1, 1, 1, 1, 1, 9], 7), 3160);
        assert_eq!(total([1; 6], 73), 712920);
        assert_eq!(total([4, 4, 9, 1, 1, 1], 103), 1627156);
    }

    #[test]
    fn breakdown_recomposes() {
        for p in [7, 11, 13, 17] {
            let b = count_resolved(&ctx(p), &fam([1, 1, 1, 1, 1, 25]), None);
            if let Ok(b) = b {
                assert!(b.recomposes());
                assert_eq!(b.total % 2, 0);
            }
        }
    }

    #[test]
    fn oracle_matches_fast() {
        for (a, p) in [([1; 6], 7), ([1; 6], 11), ([1, 2, 3, 4, 5, 6], 7)] {
            assert_eq!(oracle_count_torus(&ctx(p), &a).unwrap(), torus_count(&ctx(p), &a).unwrap());
        }
        assert!(oracle_count_torus(&ctx(7), &[1, 1, 1, 1, 1, 7]).is_err());
    }

    #[test]
    fn quadric_examples() {
        let b = NodeWitness::new([1, 1, 1, -1, -1]).unwrap();
        assert_eq!(quadric_points(&ctx(7), &b), 64);
        let b = NodeWitness::new([1, 1, 1, 1, 1]).unwrap();
        assert_eq!(quadric_points(&ctx(7), &b), 50);
        assert_eq!(quadric_points(&ctx(11), &b), 144);
    }

    #[test]
    fn refuses_bad_primes() {
        assert!(matches!(count_resolved(&ctx(3), &fam([1; 6]), None), Err(Error::BadPrime { .. })));
        assert!(matches!(count_resolved(&ctx(5), &fam([1, 1, 1, 1, 1, 25]), None), Err(Error::BadPrime { .. })));
    }
}
