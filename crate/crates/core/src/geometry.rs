//! Node combinatorics of the family `(X_1+…+X_5)(a_1/X_1+…+a_5/X_5) = a_6`.
//!
//! Every member has 30 nodes on the toric boundary. Members in the image of
//! `φ(b) = (b_1² : … : b_5² : (Σb)²)` acquire one interior node for each
//! subset of the `b_i` summing to zero.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::isqrt_exact;

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A projective six-tuple `(a_1 : … : a_6)` of nonzero integers, normalized so
/// that the entries are coprime and the first is positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyParam {
    a: [i64; 6],
}

impl FamilyParam {
    pub fn new(a: [i64; 6]) -> Result<Self> {
        if a.contains(&0) {
            return Err(Error::InvalidParam(format!("{a:?} has a zero entry")));
        }
        let g = a.iter().fold(0, |g, &x| gcd(g, x));
        let sign = a[0].signum();
        Ok(FamilyParam { a: a.map(|x| sign * x / g) })
    }

    /// Reads `a1:…:a6` or `a1,…,a6`; shorter lists are padded with trailing 1s.
    pub fn parse_shorthand(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split([',', ':']).map(str::trim).filter(|t| !t.is_empty()).collect();
        if parts.is_empty() || parts.len() > 6 {
            return Err(Error::InvalidParam(format!("expected up to six entries, got {s:?}")));
        }
        let mut a = [1i64; 6];
        for (slot, part) in a.iter_mut().zip(&parts) {
            *slot = part.parse().map_err(|_| Error::InvalidParam(format!("bad entry {part:?} in {s:?}")))?;
        }
        FamilyParam::new(a)
    }

    pub fn coords(&self) -> &[i64; 6] {
        &self.a
    }
}

impl fmt::Display for FamilyParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.a.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(":"))
    }
}

impl FromStr for FamilyParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let count = trimmed.split([',', ':']).filter(|t| !t.trim().is_empty()).count();
        if count != 6 {
            return Err(Error::InvalidParam(format!("expected six entries, got {s:?}")));
        }
        FamilyParam::parse_shorthand(trimmed)
    }
}

/// A projective integer five-tuple `b` with nonzero entries and nonzero sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NodeWitness {
    b: [i64; 5],
}

impl NodeWitness {
    pub fn new(b: [i64; 5]) -> Result<Self> {
        if b.contains(&0) {
            return Err(Error::InvalidWitness(format!("{b:?} has a zero entry")));
        }
        if b.iter().sum::<i64>() == 0 {
            return Err(Error::InvalidWitness(format!("{b:?} sums to zero")));
        }
        Ok(NodeWitness { b })
    }

    pub fn entries(&self) -> &[i64; 5] {
        &self.b
    }

    pub fn sum(&self) -> i64 {
        self.b.iter().sum()
    }

    /// `(b_1, …, b_5, Σb)`.
    pub fn six_tuple(&self) -> [i64; 6] {
        let b = self.b;
        [b[0], b[1], b[2], b[3], b[4], self.sum()]
    }
}

impl FromStr for NodeWitness {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = trimmed.split([',', ':']).map(str::trim).filter(|t| !t.is_empty()).collect();
        if parts.len() != 5 {
            return Err(Error::InvalidWitness(format!("expected five entries, got {s:?}")));
        }
        let mut b = [0i64; 5];
        for (slot, part) in b.iter_mut().zip(&parts) {
            *slot = part.parse().map_err(|_| Error::InvalidWitness(format!("bad entry {part:?}")))?;
        }
        NodeWitness::new(b)
    }
}

pub fn phi(b: &NodeWitness) -> FamilyParam {
    let s = b.six_tuple();
    FamilyParam::new(s.map(|x| x * x)).expect("witness entries are nonzero")
}

/// An interior node: a zero-sum subset `J` and the sign-flipped witness `c_J`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InteriorNode {
    /// 1-based indices in `J`.
    pub subset: Vec<usize>,
    pub witness: [i64; 5],
}

pub fn interior_nodes(b: &NodeWitness) -> Vec<InteriorNode> {
    let entries = b.entries();
    (0u32..32)
        .filter(|mask| (0..5).filter(|i| mask >> i & 1 == 1).map(|i| entries[i]).sum::<i64>() == 0)
        .map(|mask| {
            let subset = (0..5).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
            let mut witness = *entries;
            for (i, w) in witness.iter_mut().enumerate() {
                if mask >> i & 1 == 1 {
                    *w = -*w;
                }
            }
            InteriorNode { subset, witness }
        })
        .collect()
}

/// Integer witness `b` with `φ(b) = a`, if `a` is in the image over Q.
pub fn find_witness(a: &FamilyParam) -> Result<Option<NodeWitness>> {
    let mut roots = [0i64; 6];
    for (r, &x) in roots.iter_mut().zip(a.coords()) {
        match isqrt_exact(x as i128) {
            Some(v) => *r = v as i64,
            None => return Ok(None),
        }
    }
    for mask in 0u32..16 {
        let mut b = [roots[0], roots[1], roots[2], roots[3], roots[4]];
        for i in 0..4 {
            if mask >> i & 1 == 1 {
                b[i + 1] = -b[i + 1];
            }
        }
        let s: i64 = b.iter().sum();
        if s.abs() == roots[5] {
            let w = NodeWitness::new(b)?;
            if phi(&w) != *a {
                return Err(Error::WitnessSearch(a.to_string()));
            }
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn checked_witness(a: &FamilyParam, witness: Option<&NodeWitness>) -> Result<Option<NodeWitness>> {
    match witness {
        Some(w) if phi(w) == *a => Ok(Some(*w)),
        Some(w) => Err(Error::InvalidWitness(format!("φ({:?}) = {} differs from {a}", w.entries(), phi(w)))),
        None => find_witness(a),
    }
}

pub fn node_count(a: &FamilyParam, witness: Option<&NodeWitness>) -> Result<usize> {
    Ok(30 + checked_witness(a, witness)?.map_or(0, |w| interior_nodes(&w).len()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerNumbers {
    /// All nodes resolved by quadrics.
    pub big: i64,
    /// All nodes resolved by lines.
    pub small: i64,
    /// Boundary nodes small, interior nodes big.
    pub mixed: i64,
}

pub fn euler_numbers(node_count: usize) -> EulerNumbers {
    let s = node_count as i64;
    EulerNumbers { big: 20 + 4 * s, small: 20 + 2 * s, mixed: 80 + 4 * (s - 30) }
}

/// Linear conditions defining the parametrized subfamilies, on a candidate five-tuple.
#[derive(Debug, Clone, Copy)]
pub struct SubfamilyPattern {
    pub index: usize,
    pub dimension: usize,
    pub shape: &'static str,
    test: fn(&[i64; 5]) -> bool,
}

fn proportional(c: &[i64; 5], v: [i64; 5]) -> bool {
    (0..5).all(|i| c[i] * v[0] == v[i] * c[0])
}

pub const PATTERNS: [SubfamilyPattern; 15] = [
    SubfamilyPattern { index: 1, dimension: 4, shape: "(a:b:c:d:e)", test: |_| true },
    SubfamilyPattern { index: 2, dimension: 3, shape: "(a:-a:b:c:d)", test: |c| c[1] == -c[0] },
    SubfamilyPattern { index: 3, dimension: 3, shape: "(a:b:-a-b:c:d)", test: |c| c[0] + c[1] + c[2] == 0 },
    SubfamilyPattern { index: 4, dimension: 2, shape: "(a:-a:a:b:c)", test: |c| c[1] == -c[0] && c[2] == c[0] },
    SubfamilyPattern {
        index: 5,
        dimension: 2,
        shape: "(a:-a:b:a-b:c)",
        test: |c| c[1] == -c[0] && c[3] == c[0] - c[2],
    },
    SubfamilyPattern { index: 6, dimension: 2, shape: "(a:-a:b:-b:c)", test: |c| c[1] == -c[0] && c[3] == -c[2] },
    SubfamilyPattern {
        index: 7,
        dimension: 1,
        shape: "(a:a:a:-a:b)",
        test: |c| c[1] == c[0] && c[2] == c[0] && c[3] == -c[0],
    },
    SubfamilyPattern {
        index: 8,
        dimension: 1,
        shape: "(a:a:a:-2a:b)",
        test: |c| c[1] == c[0] && c[2] == c[0] && c[3] == -2 * c[0],
    },
    SubfamilyPattern {
        index: 9,
        dimension: 1,
        shape: "(a:a:b:-b:b-a)",
        test: |c| c[1] == c[0] && c[3] == -c[2] && c[4] == c[2] - c[0],
    },
    SubfamilyPattern {
        index: 10,
        dimension: 1,
        shape: "(a:a:b:b:-a-b)",
        test: |c| c[1] == c[0] && c[3] == c[2] && c[4] == -c[0] - c[2],
    },
    SubfamilyPattern {
        index: 11,
        dimension: 1,
        shape: "(a:a:-a:-a:b)",
        test: |c| c[1] == c[0] && c[2] == -c[0] && c[3] == -c[0],
    },
    SubfamilyPattern { index: 12, dimension: 0, shape: "(1:1:1:1:-1)", test: |c| proportional(c, [1, 1, 1, 1, -1]) },
    SubfamilyPattern { index: 13, dimension: 0, shape: "(1:1:1:2:-2)", test: |c| proportional(c, [1, 1, 1, 2, -2]) },
    SubfamilyPattern { index: 14, dimension: 0, shape: "(1:1:1:1:-2)", test: |c| proportional(c, [1, 1, 1, 1, -2]) },
    SubfamilyPattern { index: 15, dimension: 0, shape: "(1:1:1:-1:-1)", test: |c| proportional(c, [1, 1, 1, -1, -1]) },
];

pub fn pattern(index: usize) -> Option<&'static SubfamilyPattern> {
    PATTERNS.iter().find(|p| p.index == index)
}

pub fn subfamily_dimension(index: usize) -> usize {
    if index == 0 {
        5
    } else {
        pattern(index).map_or(5, |p| p.dimension)
    }
}

impl SubfamilyPattern {
    pub fn matches(&self, c: &[i64; 5]) -> bool {
        (self.test)(c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubfamilyLabel {
    pub index: usize,
    pub dimension: usize,
    pub node_count: usize,
    pub euler_big: i64,
    pub euler_mixed: i64,
    /// Present only when a projective small resolution exists.
    pub euler_small: Option<i64>,
}

fn permutations6() -> Vec<[usize; 6]> {
    let mut out = Vec::with_capacity(720);
    let mut perm = [0, 1, 2, 3, 4, 5];
    fn rec(k: usize, perm: &mut [usize; 6], out: &mut Vec<[usize; 6]>) {
        if k == 6 {
            out.push(*perm);
            return;
        }
        for i in k..6 {
            perm.swap(k, i);
            rec(k + 1, perm, out);
            perm.swap(k, i);
        }
    }
    rec(0, &mut perm, &mut out);
    out
}

/// Every five-tuple `c` with `φ(c)` a coordinate permutation of `φ(b)`.
///
/// These are the first five entries of the zero-sum signings of the absolute
/// six-tuple `|b_1|, …, |b_5|, |Σb|` in every order.
fn symmetric_witnesses(b: &NodeWitness) -> Vec<[i64; 5]> {
    let abs = b.six_tuple().map(i64::abs);
    let mut signed: Vec<[i64; 6]> = Vec::new();
    for mask in 0u32..64 {
        let v: [i64; 6] = std::array::from_fn(|i| if mask >> i & 1 == 1 { -abs[i] } else { abs[i] });
        if v.iter().sum::<i64>() == 0 && !signed.contains(&v) {
            signed.push(v);
        }
    }
    let mut out: Vec<[i64; 5]> = Vec::new();
    for perm in permutations6() {
        for v in &signed {
            let c = [v[perm[0]], v[perm[1]], v[perm[2]], v[perm[3]], v[perm[4]]];
            out.push(c);
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

pub fn classify_subfamily(b: &NodeWitness) -> Result<SubfamilyLabel> {
    let candidates = symmetric_witnesses(b);
    let best = PATTERNS
        .iter()
        .filter(|pat| candidates.iter().any(|c| pat.matches(c)))
        .min_by_key(|pat| (pat.dimension, pat.index))
        .ok_or_else(|| Error::NoPattern(format!("{:?}", b.entries())))?;
    let nodes = 30 + interior_nodes(b).len();
    let e = euler_numbers(nodes);
    Ok(SubfamilyLabel {
        index: best.index,
        dimension: best.dimension,
        node_count: nodes,
        euler_big: e.big,
        euler_mixed: e.mixed,
        euler_small: smooth_model_exists(b).then_some(e.small),
    })
}

/// Subfamily label of any family member; members outside the image of φ are in F_0.
pub fn classify_family(a: &FamilyParam) -> Result<SubfamilyLabel> {
    match find_witness(a)? {
        Some(w) => classify_subfamily(&w),
        None => {
            let e = euler_numbers(30);
            Ok(SubfamilyLabel {
                index: 0,
                dimension: 5,
                node_count: 30,
                euler_big: e.big,
                euler_mixed: e.mixed,
                euler_small: Some(e.small),
            })
        }
    }
}

/// A projective small resolution exists iff `|b_1|,…,|b_5|,|Σb|` is `x,x,y,y,z,z`
/// with `x ± y ± z ≠ 0`.
pub fn smooth_model_exists(b: &NodeWitness) -> bool {
    let mut abs = b.six_tuple().map(i64::abs);
    abs.sort_unstable();
    if abs[0] != abs[1] || abs[2] != abs[3] || abs[4] != abs[5] {
        return false;
    }
    let (x, y, z) = (abs[0], abs[2], abs[4]);
    [x + y + z, x + y - z, x - y + z, x - y - z].iter().all(|&s| s != 0)
}

pub fn smooth_model_exists_for(a: &FamilyParam) -> Result<bool> {
    Ok(find_witness(a)?.is_none_or(|w| smooth_model_exists(&w)))
}

/// Six-tuples for which no partition into two admissible triples exists.
pub const EXCEPTIONAL_SIX_TUPLES: [[i64; 6]; 2] = [[1, 1, 1, 1, 1, 2], [1, 1, 1, 1, 2, 3]];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct H12Value {
    pub h12: i64,
    /// True when the value came from the subfamily table rather than a partition.
    pub lookup: bool,
}

fn triple_degenerate(t: [i64; 3]) -> bool {
    [t[0] + t[1] + t[2], t[0] + t[1] - t[2], t[0] - t[1] + t[2], t[0] - t[1] - t[2]].contains(&0)
}

fn triple_squares(t: [i64; 3]) -> Vec<i64> {
    [t[0] + t[1] + t[2], t[0] + t[1] - t[2], t[0] - t[1] + t[2], t[0] - t[1] - t[2]].iter().map(|s| s * s).collect()
}

/// `5 + d − Σ_{s∈S'}(c_1(s) + c_2(s) − 1)` for one admissible partition.
fn schoen_value(first: [i64; 3], second: [i64; 3]) -> i64 {
    let s1 = triple_squares(first);
    let s2 = triple_squares(second);
    let mut shared: Vec<i64> = s1.iter().copied().filter(|v| *v != 0 && s2.contains(v)).collect();
    shared.sort_unstable();
    shared.dedup();
    let penalty: i64 = shared
        .iter()
        .map(|v| {
            let c1 = s1.iter().filter(|x| *x == v).count() as i64;
            let c2 = s2.iter().filter(|x| *x == v).count() as i64;
            c1 + c2 - 1
        })
        .sum();
    let mut q1 = first.map(|x| x * x);
    let mut q2 = second.map(|x| x * x);
    q1.sort_unstable();
    q2.sort_unstable();
    let d = i64::from(q1 == q2);
    5 + d - penalty
}

fn is_exceptional(six: &[i64; 6]) -> bool {
    let g = six.iter().fold(0, |g, &x| gcd(g, x));
    if g == 0 {
        return false;
    }
    let mut norm = six.map(|x| x.abs() / g);
    norm.sort_unstable();
    EXCEPTIONAL_SIX_TUPLES.contains(&norm)
}

/// h¹² of the fibre-product model from the six roots `(b_1, …, b_5, b_6)`.
pub fn h12_from_roots(six: [i64; 6]) -> Result<H12Value> {
    if six.contains(&0) {
        return Err(Error::InvalidWitness(format!("{six:?} has a zero entry")));
    }
    let mut values: Vec<i64> = Vec::new();
    for j in 1..6 {
        for k in (j + 1)..6 {
            let first = [six[0], six[j], six[k]];
            let rest: Vec<i64> = (1..6).filter(|&i| i != j && i != k).map(|i| six[i]).collect();
            let second = [rest[0], rest[1], rest[2]];
            if triple_degenerate(first) || triple_degenerate(second) {
                continue;
            }
            values.push(schoen_value(first, second));
        }
    }
    if values.is_empty() {
        if is_exceptional(&six) {
            let a = FamilyParam::new(six.map(|x| x * x))?;
            let label = classify_family(&a)?;
            return Ok(H12Value { h12: label.dimension as i64, lookup: true });
        }
        return Err(Error::WitnessSearch(format!("no admissible partition of {six:?}")));
    }
    let first = values[0];
    if values.iter().any(|&v| v != first) {
        values.sort_unstable();
        values.dedup();
        return Err(Error::PartitionConflict { tuple: format!("{six:?}"), values });
    }
    Ok(H12Value { h12: first, lookup: false })
}

pub fn h12_schoen(b: &NodeWitness) -> Result<H12Value> {
    h12_from_roots(b.six_tuple())
}

/// h¹² for any member: from the witness when `a` is in the image of φ, else 5.
pub fn h12_for_family(a: &FamilyParam) -> Result<H12Value> {
    match find_witness(a)? {
        Some(w) => h12_schoen(&w),
        None => Ok(H12Value { h12: 5, lookup: false }),
    }
}
