//! Intersection matrix of the 3-cycles swept out by elliptic surfaces `E^{ij}`.
//!
//! For each pair `i < j` with `a_i = a_j` the surface `E^{ij}` carries two
//! 3-cycles. Their pairwise intersections are built from the 2×2 blocks
//! `A = [[0,−2],[2,0]]`, `±B = ±[[0,1],[−1,0]]` and `0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::FamilyParam;

pub const BLOCK_A: [[i64; 2]; 2] = [[0, -2], [2, 0]];
pub const BLOCK_B: [[i64; 2]; 2] = [[0, 1], [-1, 0]];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceIndex {
    /// 1-based, `i < j`.
    pub i: usize,
    pub j: usize,
    pub admissible: bool,
}

impl SurfaceIndex {
    pub fn complement(&self) -> [usize; 3] {
        let rest: Vec<usize> = (1..=5).filter(|&x| x != self.i && x != self.j).collect();
        [rest[0], rest[1], rest[2]]
    }

    fn contains(&self, x: usize) -> bool {
        self.i == x || self.j == x
    }
}

/// Every pair with equal coefficients, flagged by `√a_k ± √a_l ± √a_m ± √a_6 ≠ 0`.
pub fn candidate_surfaces(a: &FamilyParam, roots: &[i64; 6]) -> Vec<SurfaceIndex> {
    let coords = a.coords();
    let mut out = Vec::new();
    for i in 1..=5 {
        for j in (i + 1)..=5 {
            if coords[i - 1] != coords[j - 1] {
                continue;
            }
            let mut s = SurfaceIndex { i, j, admissible: false };
            let [k, l, m] = s.complement();
            let r = |x: usize| roots[x - 1];
            s.admissible = (0u32..8).all(|mask| {
                let sg = |bit: u32| if mask >> bit & 1 == 1 { -1 } else { 1 };
                r(k) + sg(0) * r(l) + sg(1) * r(m) + sg(2) * roots[5] != 0
            });
            out.push(s);
        }
    }
    out
}

pub fn admissible_surfaces(a: &FamilyParam, roots: &[i64; 6]) -> Vec<SurfaceIndex> {
    candidate_surfaces(a, roots).into_iter().filter(|s| s.admissible).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlockSign {
    Plus,
    Minus,
    Disjoint,
    SelfBlock,
}

fn parity(perm: &[usize]) -> i64 {
    let mut inversions = 0;
    for x in 0..perm.len() {
        for y in (x + 1)..perm.len() {
            if perm[x] > perm[y] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Relative orientation of `E^{ij}` and `E^{ik}` from matching their sorted complements.
pub fn block_sign(first: &SurfaceIndex, second: &SurfaceIndex) -> BlockSign {
    if first.i == second.i && first.j == second.j {
        return BlockSign::SelfBlock;
    }
    let shared = [first.i, first.j].iter().filter(|&&x| second.contains(x)).count();
    if shared == 0 {
        return BlockSign::Disjoint;
    }
    let c1 = first.complement();
    let c2 = second.complement();
    let odd_one = *c2.iter().find(|x| !c1.contains(x)).expect("complements differ in one element");
    let perm: Vec<usize> = c1
        .iter()
        .map(|x| {
            let target = if c2.contains(x) { *x } else { odd_one };
            c2.iter().position(|y| *y == target).expect("target in complement")
        })
        .collect();
    if parity(&perm) == 1 {
        BlockSign::Plus
    } else {
        BlockSign::Minus
    }
}

/// Integer rank by fraction-free Gaussian elimination.
pub fn bareiss_rank(matrix: &[Vec<i64>]) -> usize {
    let rows = matrix.len();
    if rows == 0 {
        return 0;
    }
    let cols = matrix[0].len();
    let mut m: Vec<Vec<i128>> = matrix.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut rank = 0;
    let mut prev: i128 = 1;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in (rank + 1)..rows {
            for c in (col + 1)..cols {
                m[r][c] = (m[rank][col] * m[r][c] - m[r][col] * m[rank][c]) / prev;
            }
            m[r][col] = 0;
        }
        prev = m[rank][col];
        rank += 1;
    }
    rank
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WSpace {
    pub surfaces: Vec<SurfaceIndex>,
    pub matrix: Vec<Vec<i64>>,
    pub rank: usize,
    pub dim_w: usize,
    pub dim_v: usize,
    /// Disjoint pairs whose zero block is not guaranteed by `±√a_m ± √a_6 ∉ {0, 2√a_i, 2√a_k}`.
    pub side_condition_violations: Vec<String>,
}

fn disjoint_condition_holds(roots: &[i64; 6], first: &SurfaceIndex, second: &SurfaceIndex) -> bool {
    let m = (1..=5).find(|&x| !first.contains(x) && !second.contains(x)).expect("five indices");
    let rm = roots[m - 1];
    let r6 = roots[5];
    let forbidden = [0, 2 * roots[first.i - 1], 2 * roots[second.i - 1]];
    [rm + r6, rm - r6, -rm + r6, -rm - r6].iter().all(|v| !forbidden.contains(v) && !forbidden.contains(&-v))
}

pub fn block_matrix(surfaces: &[SurfaceIndex]) -> Vec<Vec<i64>> {
    let n = surfaces.len();
    let mut m = vec![vec![0i64; 2 * n]; 2 * n];
    for (x, s) in surfaces.iter().enumerate() {
        for (y, t) in surfaces.iter().enumerate() {
            let block = match block_sign(s, t) {
                BlockSign::SelfBlock => BLOCK_A,
                BlockSign::Plus => BLOCK_B,
                BlockSign::Minus => BLOCK_B.map(|row| row.map(|v| -v)),
                BlockSign::Disjoint => [[0, 0], [0, 0]],
            };
            for r in 0..2 {
                for c in 0..2 {
                    m[2 * x + r][2 * y + c] = block[r][c];
                }
            }
        }
    }
    m
}

pub fn build_and_rank(a: &FamilyParam, roots: &[i64; 6], h12: i64) -> Result<WSpace> {
    let surfaces = admissible_surfaces(a, roots);
    let mut violations = Vec::new();
    for (x, s) in surfaces.iter().enumerate() {
        for t in &surfaces[x + 1..] {
            if block_sign(s, t) == BlockSign::Disjoint && !disjoint_condition_holds(roots, s, t) {
                violations.push(format!("E^{}{} . E^{}{}", s.i, s.j, t.i, t.j));
            }
        }
    }
    let matrix = block_matrix(&surfaces);
    let rank = bareiss_rank(&matrix);
    let total = 2 + 2 * h12;
    if (rank as i64) > total {
        return Err(Error::Intersection(format!("rank {rank} exceeds b_3 = {total}")));
    }
    Ok(WSpace { surfaces, dim_w: rank, dim_v: (total - rank as i64) as usize, rank, matrix, side_condition_violations: violations })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(a: [i64; 6]) -> FamilyParam {
        FamilyParam::new(a).unwrap()
    }

    fn pair(i: usize, j: usize) -> SurfaceIndex {
        SurfaceIndex { i, j, admissible: true }
    }

    #[test]
    fn admissible_examples() {
        let pairs = |a, r| admissible_surfaces(&fam(a), &r).iter().map(|s| (s.i, s.j)).collect::<Vec<_>>();
        assert_eq!(pairs([1, 1, 1, 1, 1, 25], [1, 1, 1, 1, 1, 5]).len(), 10);
        assert_eq!(pairs([1, 1, 1, 9, 9, 9], [1, 1, 1, 3, 3, 3]), vec![(1, 2), (1, 3), (2, 3)]);
        assert_eq!(pairs([1, 1, 4, 4, 4, 16], [1, 1, 2, 2, 2, 4]), vec![(1, 2)]);
    }

    #[test]
    fn sign_examples() {
        assert_eq!(block_sign(&pair(1, 2), &pair(1, 4)), BlockSign::Minus);
        assert_eq!(block_sign(&pair(1, 2), &pair(1, 3)), BlockSign::Plus);
        assert_eq!(block_sign(&pair(1, 2), &pair(3, 4)), BlockSign::Disjoint);
        assert_eq!(block_sign(&pair(2, 5), &pair(2, 5)), BlockSign::SelfBlock);
    }

    #[test]
    fn ranks() {
        let w = build_and_rank(&fam([1, 1, 1, 1, 1, 25]), &[1, 1, 1, 1, 1, 5], 4).unwrap();
        assert_eq!((w.rank, w.dim_v), (8, 2));
        assert!(w.side_condition_violations.is_empty());
        let w = build_and_rank(&fam([1, 1, 1, 9, 9, 9]), &[1, 1, 1, 3, 3, 3], 2).unwrap();
        assert_eq!((w.rank, w.dim_v), (4, 2));
        let w = build_and_rank(&fam([1, 1, 4, 4, 4, 16]), &[1, 1, 2, 2, 2, 4], 1).unwrap();
        assert_eq!((w.rank, w.dim_v), (2, 2));
    }

    #[test]
    fn antisymmetric_even_rank() {
        let m = block_matrix(&admissible_surfaces(&fam([1, 1, 1, 1, 1, 25]), &[1, 1, 1, 1, 1, 5]));
        for (r, row) in m.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                assert_eq!(*v, -m[c][r]);
            }
        }
        assert_eq!(bareiss_rank(&m) % 2, 0);
    }

    #[test]
    fn bareiss_known_ranks() {
        assert_eq!(bareiss_rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(bareiss_rank(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(bareiss_rank(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]), 3);
    }
}
