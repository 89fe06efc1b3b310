//! Arithmetic modulo an odd prime and in its quadratic extension.
//!
//! [`PrimeContext`] precomputes inverse and quadratic-character tables so the
//! point-counting loops never call a modular exponentiation. The quadratic
//! extension is only used to evaluate the bad-prime product over square roots
//! of the coefficients.

use crate::error::{Error, Result};

/// Largest prime accepted by [`PrimeContext::new`].
pub const MAX_PRIME: i64 = 1_000_000;

/// Lookup tables for arithmetic modulo a fixed odd prime.
#[derive(Debug, Clone)]
pub struct PrimeContext {
    p: u64,
    /// `inverse_table[x] = x^{-1} mod p`; entry 0 is unused and holds 0.
    inverse_table: Vec<u32>,
    /// Quadratic character of each residue: -1, 0 or +1.
    square_table: Vec<i8>,
}

pub fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc: u128 = 1 % m128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Odd primes in `[lo, hi]`, ascending.
pub fn odd_primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(3)..=hi).filter(|&n| is_prime(n as i64)).collect()
}

impl PrimeContext {
    pub fn new(p: i64) -> Result<Self> {
        if p < 3 || p % 2 == 0 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if p > MAX_PRIME {
            return Err(Error::PrimeTooLarge { p, bound: MAX_PRIME });
        }
        let pu = p as u64;
        let n = p as usize;
        let mut inverse_table = vec![0u32; n];
        inverse_table[1] = 1;
        for x in 2..n {
            // inv(x) = -(p / x) * inv(p mod x)
            let q = (n / x) as u64;
            let r = n % x;
            let v = (pu - q) * inverse_table[r] as u64 % pu;
            inverse_table[x] = v as u32;
        }
        let mut square_table = vec![-1i8; n];
        square_table[0] = 0;
        for x in 1..=(n / 2) {
            square_table[x * x % n] = 1;
        }
        Ok(PrimeContext { p: pu, inverse_table, square_table })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Canonical representative of `x` in `0..p`.
    #[inline]
    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn inv(&self, x: u64) -> Option<u64> {
        let x = x % self.p;
        (x != 0).then(|| self.inverse_table[x as usize] as u64)
    }

    pub fn inverse_table(&self) -> &[u32] {
        &self.inverse_table
    }

    pub fn square_table(&self) -> &[i8] {
        &self.square_table
    }

    /// The Kronecker symbol `(x/p)`.
    #[inline]
    pub fn kronecker(&self, x: i64) -> i8 {
        self.square_table[self.reduce(x) as usize]
    }

    #[inline]
    pub fn chi(&self, x: u64) -> i8 {
        self.square_table[(x % self.p) as usize]
    }

    /// Smaller square root of `x` mod p, if one exists.
    pub fn sqrt_mod_p(&self, x: i64) -> Option<u64> {
        let x = self.reduce(x);
        if x == 0 {
            return Some(0);
        }
        if self.square_table[x as usize] != 1 {
            return None;
        }
        let p = self.p;
        (1..=p / 2).find(|&r| r * r % p == x)
    }

    /// Smallest quadratic non-residue.
    pub fn least_non_square(&self) -> u64 {
        (2..self.p).find(|&x| self.square_table[x as usize] == -1).expect("odd prime has non-squares")
    }
}

/// `u + v·ω` in `F_p[ω]/(ω² − n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadExtElement {
    pub u: u64,
    pub v: u64,
}

impl QuadExtElement {
    pub fn in_base_field(&self) -> bool {
        self.v == 0
    }

    pub fn is_zero(&self) -> bool {
        self.u == 0 && self.v == 0
    }
}

/// The field `F_{p²}` presented with a chosen non-square `n`.
#[derive(Debug, Clone, Copy)]
pub struct QuadField {
    pub p: u64,
    pub n: u64,
}

impl QuadField {
    pub fn new(ctx: &PrimeContext, n: u64) -> Result<Self> {
        if ctx.chi(n) != -1 {
            return Err(Error::InvalidParam(format!("{n} is not a non-square mod {}", ctx.p())));
        }
        Ok(QuadField { p: ctx.p(), n: n % ctx.p() })
    }

    pub fn from_base(&self, x: u64) -> QuadExtElement {
        QuadExtElement { u: x % self.p, v: 0 }
    }

    pub fn zero(&self) -> QuadExtElement {
        QuadExtElement { u: 0, v: 0 }
    }

    pub fn one(&self) -> QuadExtElement {
        QuadExtElement { u: 1 % self.p, v: 0 }
    }

    pub fn add(&self, x: QuadExtElement, y: QuadExtElement) -> QuadExtElement {
        QuadExtElement { u: (x.u + y.u) % self.p, v: (x.v + y.v) % self.p }
    }

    pub fn neg(&self, x: QuadExtElement) -> QuadExtElement {
        QuadExtElement { u: (self.p - x.u) % self.p, v: (self.p - x.v) % self.p }
    }

    pub fn scale(&self, x: QuadExtElement, k: i64) -> QuadExtElement {
        let k = k.rem_euclid(self.p as i64) as u128;
        let p = self.p as u128;
        QuadExtElement { u: (x.u as u128 * k % p) as u64, v: (x.v as u128 * k % p) as u64 }
    }

    pub fn mul(&self, x: QuadExtElement, y: QuadExtElement) -> QuadExtElement {
        let p = self.p as u128;
        let (a, b, c, d) = (x.u as u128, x.v as u128, y.u as u128, y.v as u128);
        let u = (a * c + b * d % p * self.n as u128) % p;
        let v = (a * d + b * c) % p;
        QuadExtElement { u: u as u64, v: v as u64 }
    }

    /// A square root of the base-field element `s`, which always exists in `F_{p²}`.
    pub fn sqrt_base(&self, ctx: &PrimeContext, s: i64) -> QuadExtElement {
        let s = ctx.reduce(s);
        if let Some(r) = ctx.sqrt_mod_p(s as i64) {
            return QuadExtElement { u: r, v: 0 };
        }
        let n_inv = ctx.inv(self.n).expect("non-square is nonzero");
        let t = ctx.sqrt_mod_p((s as u128 * n_inv as u128 % self.p as u128) as i64).expect("s/n is a square");
        QuadExtElement { u: 0, v: t }
    }
}

/// Writes `x = m² · s` with `s` squarefree and carrying the sign of `x`.
pub fn square_class(x: i64) -> (i64, i64) {
    assert!(x != 0, "square class of zero");
    let sign = x.signum();
    let mut rest = x.unsigned_abs();
    let mut m: u64 = 1;
    let mut s: u64 = 1;
    let mut d: u64 = 2;
    while d * d <= rest {
        let mut e = 0;
        while rest.is_multiple_of(d) {
            rest /= d;
            e += 1;
        }
        m *= d.pow(e / 2);
        if e % 2 == 1 {
            s *= d;
        }
        d += 1;
    }
    s *= rest;
    (m as i64, sign * s as i64)
}

/// The 32 linear factors `Σ ε_i √a_i + √a_6`, grouped by square class.
///
/// Each factor is the list of integer coefficients of the distinct square
/// classes; a factor whose coefficients all vanish is zero over the integers.
#[derive(Debug, Clone)]
pub struct SignFactors {
    /// Distinct squarefree parts, in order of first appearance.
    pub classes: Vec<i64>,
    /// Per sign pattern, the coefficient of each class root.
    pub factors: Vec<Vec<i64>>,
}

impl SignFactors {
    pub fn new(a: &[i64; 6]) -> Self {
        let decomposed: Vec<(i64, i64)> = a.iter().map(|&x| square_class(x)).collect();
        let mut classes: Vec<i64> = Vec::new();
        let mut class_of = [0usize; 6];
        for (i, &(_, s)) in decomposed.iter().enumerate() {
            class_of[i] = match classes.iter().position(|&c| c == s) {
                Some(k) => k,
                None => {
                    classes.push(s);
                    classes.len() - 1
                }
            };
        }
        let factors = (0..32u32)
            .map(|mask| {
                let mut coeffs = vec![0i64; classes.len()];
                for i in 0..6 {
                    let sign = if i < 5 && mask >> i & 1 == 1 { -1 } else { 1 };
                    coeffs[class_of[i]] += sign * decomposed[i].0;
                }
                coeffs
            })
            .collect();
        SignFactors { classes, factors }
    }

    pub fn is_identically_zero(&self, k: usize) -> bool {
        self.factors[k].iter().all(|&c| c == 0)
    }

    pub fn excluded_count(&self) -> usize {
        (0..self.factors.len()).filter(|&k| self.is_identically_zero(k)).count()
    }
}

/// Product of the nonzero factors of F(a) in `F_{p²}`.
///
/// `n` selects the presentation of the extension and bit `k` of `flips`
/// negates the chosen root of the k-th square class.
pub fn nonzero_f_mod_p(ctx: &PrimeContext, a: &[i64; 6], n: u64, flips: u32) -> Result<QuadExtElement> {
    let field = QuadField::new(ctx, n)?;
    let sf = SignFactors::new(a);
    let roots: Vec<QuadExtElement> = sf
        .classes
        .iter()
        .enumerate()
        .map(|(k, &s)| {
            let r = field.sqrt_base(ctx, s);
            if flips >> k & 1 == 1 {
                field.neg(r)
            } else {
                r
            }
        })
        .collect();
    let mut acc = field.one();
    for (k, coeffs) in sf.factors.iter().enumerate() {
        if sf.is_identically_zero(k) {
            continue;
        }
        let mut term = field.zero();
        for (c, r) in coeffs.iter().zip(&roots) {
            term = field.add(term, field.scale(*r, *c));
        }
        acc = field.mul(acc, term);
    }
    Ok(acc)
}

/// Whether `p` divides `a_1···a_6 · F(a)`, using only the nonzero factors of F(a).
///
/// A coefficient divisible by `p` is reported as an error so callers can tell
/// it apart from a vanishing of F(a).
pub fn bad_prime_indicator(ctx: &PrimeContext, a: &[i64; 6]) -> Result<bool> {
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            return Err(Error::InvalidParam("zero coefficient".into()));
        }
        if ctx.reduce(x) == 0 {
            return Err(Error::CoefficientVanishes { index: i + 1, value: x, p: ctx.p() });
        }
    }
    let f = nonzero_f_mod_p(ctx, a, ctx.least_non_square(), 0)?;
    Ok(f.is_zero())
}

/// Bad-prime test for any prime, folding coefficient divisibility and p = 2 into `true`.
pub fn is_bad_prime(p: u64, a: &[i64; 6]) -> bool {
    if p == 2 {
        return true;
    }
    match PrimeContext::new(p as i64) {
        Ok(ctx) => !matches!(bad_prime_indicator(&ctx, a), Ok(false)),
        Err(_) => true,
    }
}
