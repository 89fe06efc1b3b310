//! q-expansion of `q · Π_{n≥1} (1−qⁿ)²(1−q²ⁿ)²(1−q³ⁿ)²(1−q⁶ⁿ)²`.
//!
//! Each factor `Π(1 − q^{dn})` is expanded by Euler's pentagonal number
//! theorem and multiplied into a dense accumulator.

use serde::{Deserialize, Serialize};

use crate::refdata;

pub const MAX_TERMS: usize = 100_000;

/// Sparse terms `(exponent, sign)` of `Π_{n≥1}(1 − q^{d·n})` up to `q^{limit}`.
fn pentagonal_terms(d: usize, limit: usize) -> Vec<(usize, i64)> {
    let mut out = vec![(0, 1)];
    let mut k: usize = 1;
    loop {
        let sign = if k % 2 == 1 { -1 } else { 1 };
        let e1 = d * (k * (3 * k - 1) / 2);
        let e2 = d * (k * (3 * k + 1) / 2);
        if e1 > limit {
            break;
        }
        out.push((e1, sign));
        if e2 <= limit {
            out.push((e2, sign));
        }
        k += 1;
    }
    out
}

fn multiply_sparse(dense: &[i128], sparse: &[(usize, i64)]) -> Vec<i128> {
    let mut out = vec![0i128; dense.len()];
    for &(e, s) in sparse {
        for i in 0..dense.len().saturating_sub(e) {
            out[i + e] += s as i128 * dense[i];
        }
    }
    out
}

/// Coefficients `c[n]` of `q^n` for `0 ≤ n ≤ n_max`.
pub fn eta_product_coefficients(n_max: usize) -> Vec<i64> {
    assert!(n_max <= MAX_TERMS, "at most {MAX_TERMS} terms");
    // The leading q shifts exponents by one, so the product is needed to q^{n_max − 1}.
    let len = n_max.max(1);
    let mut acc = vec![0i128; len];
    acc[0] = 1;
    for d in [1, 1, 2, 2, 3, 3, 6, 6] {
        acc = multiply_sparse(&acc, &pentagonal_terms(d, len - 1));
    }
    let mut out = vec![0i64; n_max + 1];
    for (i, v) in acc.iter().enumerate() {
        if i < n_max {
            out[i + 1] = i64::try_from(*v).expect("eta coefficient fits in 64 bits");
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaGate {
    pub passed: bool,
    pub failures: Vec<String>,
}

/// Checks the expansion against the published f6 prefix and the level 6 trace row.
pub fn eta_gate() -> EtaGate {
    let primes = refdata::TABLE4_PRIMES;
    let n_max = *primes.iter().max().expect("nonempty") as usize;
    let c = eta_product_coefficients(n_max);
    let mut failures = Vec::new();
    let prefix = refdata::qexp("f6").expect("f6 stored");
    for (i, &v) in prefix.iter().enumerate() {
        if c[i + 1] != v {
            failures.push(format!("q^{}: expansion {} vs published {v}", i + 1, c[i + 1]));
        }
    }
    for (&p, &t) in primes.iter().zip(refdata::TABLE4[0].iter()) {
        if c[p as usize] != t {
            failures.push(format!("p = {p}: expansion {} vs trace {t}", c[p as usize]));
        }
    }
    EtaGate { passed: failures.is_empty(), failures }
}
