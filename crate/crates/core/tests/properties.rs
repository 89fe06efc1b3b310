use num::{BigInt, Zero};
use proptest::prelude::*;

use a4cy::elliptic::{self, JInvariant};
use a4cy::finite_field::{self, PrimeContext, SignFactors};
use a4cy::geometry::{self, FamilyParam, NodeWitness};
use a4cy::{point_count, Rational};

const PRIMES: [i64; 8] = [3, 5, 7, 11, 13, 17, 101, 1009];

fn prime() -> impl Strategy<Value = i64> {
    prop::sample::select(PRIMES.to_vec())
}

fn nonzero(range: i64) -> impl Strategy<Value = i64> {
    (1..=range, any::<bool>()).prop_map(|(v, neg)| if neg { -v } else { v })
}

fn param(range: i64) -> impl Strategy<Value = [i64; 6]> {
    prop::array::uniform6(nonzero(range))
}

fn six_permutation() -> impl Strategy<Value = [usize; 6]> {
    Just([0usize, 1, 2, 3, 4, 5]).prop_shuffle().prop_map(|v| [v[0], v[1], v[2], v[3], v[4], v[5]])
}

// Exact F(a) over the integers: with Q_0(x) = x and
// Q_k(x) = Q_{k-1}(x - √a_k) Q_{k-1}(x + √a_k) = A² − a_k B², where
// Q_{k-1}(x + √a_k) = A + √a_k B, the product over all signs is Q_5(√a_6),
// an even polynomial evaluated at a_6.
fn exact_f(a: &[i64; 6]) -> BigInt {
    let mut q: Vec<BigInt> = vec![BigInt::zero(), BigInt::from(1)];
    for &ak in &a[..5] {
        let ak = BigInt::from(ak);
        let n = q.len();
        let mut even = vec![BigInt::zero(); n];
        let mut odd = vec![BigInt::zero(); n];
        for (k, coeff) in q.iter().enumerate() {
            let mut binom = BigInt::from(1);
            let mut power = BigInt::from(1);
            for j in 0..=k {
                let term = coeff * &binom * &power;
                if j % 2 == 0 {
                    even[k - j] += term;
                } else {
                    odd[k - j] += term;
                }
                if j % 2 == 1 {
                    power *= &ak;
                }
                binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
            }
        }
        let mul = |x: &[BigInt], y: &[BigInt]| {
            let mut out = vec![BigInt::zero(); x.len() + y.len() - 1];
            for (i, u) in x.iter().enumerate() {
                for (j, v) in y.iter().enumerate() {
                    out[i + j] += u * v;
                }
            }
            out
        };
        let mut next = mul(&even, &even);
        for (i, v) in mul(&odd, &odd).into_iter().enumerate() {
            next[i] -= v * &ak;
        }
        while next.len() > 1 && next.last().is_some_and(Zero::is_zero) {
            next.pop();
        }
        q = next;
    }
    let a6 = BigInt::from(a[5]);
    let mut total = BigInt::zero();
    let mut power = BigInt::from(1);
    for (k, c) in q.iter().enumerate() {
        if k % 2 == 0 {
            total += c * &power;
            power *= &a6;
        } else {
            assert!(c.is_zero(), "odd coefficient in an even polynomial");
        }
    }
    total
}

fn mod_p(x: &BigInt, p: i64) -> u64 {
    let r = x % BigInt::from(p);
    let r = if r < BigInt::zero() { r + BigInt::from(p) } else { r };
    u64::try_from(r).unwrap()
}

fn non_squares(ctx: &PrimeContext, k: usize) -> Vec<u64> {
    (2..ctx.p()).filter(|&n| ctx.chi(n) == -1).take(k).collect()
}

#[test]
fn exact_f_known_values() {
    // For a = (1:…:1) the nonzero factors are ±2, ±4, ±6; one factor vanishes.
    assert!(exact_f(&[1; 6]).is_zero());
    assert!(!exact_f(&[1, 2, 3, 5, 7, 11]).is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn kronecker_is_multiplicative(p in prime(), x in -10_000i64..10_000, y in -10_000i64..10_000) {
        let ctx = PrimeContext::new(p).unwrap();
        prop_assert_eq!(ctx.kronecker(x * y), ctx.kronecker(x) * ctx.kronecker(y));
    }

    #[test]
    fn square_roots_exist_iff_residue(p in prime(), x in -10_000i64..10_000) {
        let ctx = PrimeContext::new(p).unwrap();
        let root = ctx.sqrt_mod_p(x);
        prop_assert_eq!(root.is_some(), ctx.kronecker(x) != -1);
        if let Some(r) = root {
            prop_assert_eq!(r * r % ctx.p(), ctx.reduce(x));
        }
    }

    #[test]
    fn f_independent_of_roots_and_extension(p in prop::sample::select(vec![7i64, 11, 13, 17, 101]), a in param(40)) {
        let ctx = PrimeContext::new(p).unwrap();
        prop_assume!(a.iter().all(|&x| ctx.reduce(x) != 0));
        let sf = SignFactors::new(&a);
        let exact = sf.excluded_count() == 0;
        let reference = finite_field::nonzero_f_mod_p(&ctx, &a, ctx.least_non_square(), 0).unwrap();
        prop_assert!(reference.in_base_field());
        for n in non_squares(&ctx, 3) {
            for flips in 0..(1u32 << sf.classes.len().min(4)) {
                let v = finite_field::nonzero_f_mod_p(&ctx, &a, n, flips).unwrap();
                prop_assert!(v.in_base_field());
                if exact {
                    prop_assert_eq!(v.u, reference.u);
                } else {
                    prop_assert_eq!(v.is_zero(), reference.is_zero());
                }
            }
        }
    }

    #[test]
    fn f_matches_exact_integer(p in prop::sample::select(vec![7i64, 11, 13, 101, 1009]), a in param(30)) {
        let ctx = PrimeContext::new(p).unwrap();
        prop_assume!(a.iter().all(|&x| ctx.reduce(x) != 0));
        let f = exact_f(&a);
        let sf = SignFactors::new(&a);
        if sf.excluded_count() == 0 {
            prop_assert!(!f.is_zero());
            let v = finite_field::nonzero_f_mod_p(&ctx, &a, ctx.least_non_square(), 0).unwrap();
            prop_assert_eq!(v.u, mod_p(&f, p));
            prop_assert_eq!(finite_field::bad_prime_indicator(&ctx, &a).unwrap(), mod_p(&f, p) == 0);
        } else {
            prop_assert!(f.is_zero());
        }
    }

    #[test]
    fn classification_invariant(b in prop::array::uniform5(nonzero(12)), perm in six_permutation(), k in 1i64..5, flip in any::<bool>()) {
        prop_assume!(b.iter().sum::<i64>() != 0);
        let w = NodeWitness::new(b).unwrap();
        let six = w.six_tuple();
        // First five entries of a zero-sum signing of the permuted tuple.
        let zero_sum = [six[0], six[1], six[2], six[3], six[4], -six[5]];
        let sign = if flip { -k } else { k };
        let c: [i64; 5] = std::array::from_fn(|i| sign * zero_sum[perm[i]]);
        prop_assume!(c.iter().sum::<i64>() != 0);
        let v = NodeWitness::new(c).unwrap();
        prop_assert_eq!(geometry::phi(&v), FamilyParam::new(std::array::from_fn(|i| zero_sum[perm[i]].pow(2))).unwrap());
        let (x, y) = (geometry::classify_subfamily(&w).unwrap(), geometry::classify_subfamily(&v).unwrap());
        prop_assert_eq!((x.index, x.node_count), (y.index, y.node_count));
        prop_assert_eq!(geometry::h12_schoen(&w).unwrap().h12, geometry::h12_schoen(&v).unwrap().h12);
    }

    #[test]
    fn interior_subsets_complement(b in prop::array::uniform5(nonzero(6))) {
        prop_assume!(b.iter().sum::<i64>() != 0);
        let w = NodeWitness::new(b).unwrap();
        let nodes = geometry::interior_nodes(&w);
        // The empty subset is the node at b itself.
        prop_assert!(nodes[0].subset.is_empty());
        for node in &nodes {
            prop_assert_eq!(node.subset.iter().map(|&i| b[i - 1]).sum::<i64>(), 0);
            prop_assert_eq!(node.witness.iter().sum::<i64>(), w.sum());
            let complement: Vec<usize> = (1..=5).filter(|i| !node.subset.contains(i)).collect();
            prop_assert!(!nodes.iter().any(|n| n.subset == complement));
        }
    }

    #[test]
    fn euler_relations(k in 0usize..=10) {
        let e = geometry::euler_numbers(30 + k);
        prop_assert_eq!(e.big, 140 + 4 * k as i64);
        prop_assert_eq!(e.big - e.mixed, 60);
        prop_assert_eq!(e.mixed - e.small, 2 * k as i64);
    }

    #[test]
    fn j_invariant_symmetries(a in nonzero(20), b in nonzero(20), c in nonzero(20), t in nonzero(30), s in 1i64..6) {
        let r = |x: i64| Rational::integer(x as i128);
        let j = elliptic::j_invariant(r(a), r(b), r(c), r(t));
        prop_assert_eq!(j, elliptic::j_invariant(r(b), r(c), r(a), r(t)));
        prop_assert_eq!(j, elliptic::j_invariant(r(b), r(a), r(c), r(t)));
        prop_assert_eq!(j, elliptic::j_invariant(r(s * a), r(s * b), r(s * c), r(s * t)));
        if let JInvariant::Finite(_) = j {
            prop_assert_eq!(j, elliptic::j_from_weierstrass(&elliptic::weierstrass_model(r(a), r(b), r(c), r(t))));
        }
    }

    #[test]
    fn hasse_bound(p in prop::sample::select(vec![5i64, 7, 11, 13, 17, 101, 1009]), a in nonzero(50), b in nonzero(50), c in nonzero(50), t in nonzero(50)) {
        let ctx = PrimeContext::new(p).unwrap();
        prop_assume!(elliptic::has_good_reduction(&ctx, a, b, c, t));
        let ap = elliptic::trace_ap(&ctx, a, b, c, t).unwrap();
        prop_assert!(ap * ap <= 4 * p);
        prop_assert_eq!(elliptic::count_points_plane_cubic(&ctx, a, b, c, t), elliptic::count_points_weierstrass(&ctx, a, b, c, t).unwrap());
    }

    #[test]
    fn torus_count_symmetries(p in prop::sample::select(vec![7i64, 11, 13]), a in param(30), perm in Just([0usize, 1, 2, 3, 4]).prop_shuffle()) {
        let ctx = PrimeContext::new(p).unwrap();
        prop_assume!(a.iter().all(|&x| ctx.reduce(x) != 0));
        let base = point_count::torus_count(&ctx, &a).unwrap();
        let permuted: [i64; 6] = std::array::from_fn(|i| if i < 5 { a[perm[i]] } else { a[5] });
        prop_assert_eq!(point_count::torus_count(&ctx, &permuted).unwrap(), base);
        let swapped = [a[5], a[1], a[2], a[3], a[4], a[0]];
        prop_assert_eq!(point_count::torus_count(&ctx, &swapped).unwrap(), base);
    }

    #[test]
    fn resolved_count_even_and_symmetric(p in prop::sample::select(vec![7i64, 11, 13, 17, 19]), a in param(25), perm in six_permutation()) {
        let ctx = PrimeContext::new(p).unwrap();
        let fam = FamilyParam::new(a).unwrap();
        prop_assume!(point_count::is_good_for_counting(&ctx, &fam));
        let b = point_count::count_resolved(&ctx, &fam, None).unwrap();
        prop_assert!(b.recomposes());
        prop_assert_eq!(b.total % 2, 0);
        let permuted = FamilyParam::new(std::array::from_fn(|i| a[perm[i]])).unwrap();
        prop_assert_eq!(point_count::count_resolved(&ctx, &permuted, None).unwrap().total, b.total);
    }
}

/// A member of pattern `index` built from free parameters.
fn pattern_instance(index: usize, x: i64, y: i64, z: i64, w: i64, v: i64) -> [i64; 5] {
    match index {
        1 => [x, y, z, w, v],
        2 => [x, -x, y, z, w],
        3 => [x, y, -x - y, z, w],
        4 => [x, -x, x, y, z],
        5 => [x, -x, y, x - y, z],
        6 => [x, -x, y, -y, z],
        7 => [x, x, x, -x, y],
        8 => [x, x, x, -2 * x, y],
        9 => [x, x, y, -y, y - x],
        10 => [x, x, y, y, -x - y],
        11 => [x, x, -x, -x, y],
        12 => [x, x, x, x, -x],
        13 => [x, x, x, 2 * x, -2 * x],
        14 => [x, x, x, x, -2 * x],
        15 => [x, x, x, -x, -x],
        _ => unreachable!(),
    }
}

#[test]
fn h12_equals_dimension_per_pattern() {
    use proptest::test_runner::{Config, TestRunner};
    for index in 1..=15usize {
        let mut runner = TestRunner::new(Config { cases: 20, ..Config::default() });
        let strategy = (nonzero(15), nonzero(15), nonzero(15), nonzero(15), nonzero(15));
        runner
            .run(&strategy, |(x, y, z, w, v)| {
                let b = pattern_instance(index, x, y, z, w, v);
                prop_assume!(b.iter().all(|&e| e != 0) && b.iter().sum::<i64>() != 0);
                let witness = NodeWitness::new(b).unwrap();
                let label = geometry::classify_subfamily(&witness).unwrap();
                prop_assert_eq!(geometry::h12_schoen(&witness).unwrap().h12, label.dimension as i64);
                Ok(())
            })
            .unwrap_or_else(|e| panic!("F_{index}: {e}"));
    }
}
