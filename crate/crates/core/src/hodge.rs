//! Hodge numbers from the A4 root polytope and of the resolved threefolds.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{self, FamilyParam};

/// Lattice points of the dual polytope; its vertices have denominator 5, so the
/// count is recorded rather than enumerated.
pub const DUAL_LATTICE_POINTS: usize = 31;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeData {
    pub lattice_points_delta: usize,
    pub lattice_points_dual: usize,
    /// Interior points of codimension 1 and 2 faces; all vanish.
    pub interior_face_points: Vec<usize>,
}

impl PolytopeData {
    pub fn compute() -> Self {
        PolytopeData {
            lattice_points_delta: enumerate_delta_points().len(),
            lattice_points_dual: DUAL_LATTICE_POINTS,
            interior_face_points: vec![0, 0],
        }
    }
}

/// Integer points `x` with `Σx = 0`, `|x_i| ≤ 1` and `|x_i + x_j| ≤ 1` for `i ≠ j`:
/// the 20 roots `e_i − e_j` and the origin.
pub fn enumerate_delta_points() -> Vec<[i64; 5]> {
    let mut out = Vec::new();
    for code in 0..243u32 {
        let mut x = [0i64; 5];
        let mut c = code;
        for slot in x.iter_mut() {
            *slot = (c % 3) as i64 - 1;
            c /= 3;
        }
        if x.iter().sum::<i64>() != 0 {
            continue;
        }
        let ok = (0..5).all(|i| (i + 1..5).all(|j| (x[i] + x[j]).abs() <= 1));
        if ok {
            out.push(x);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatyrevHodge {
    pub h11: i64,
    pub h21: i64,
    pub euler: i64,
}

/// `h11 = l(Δ*) − 5` and `h21 = l(Δ) − 5`; no proper face carries interior points.
pub fn batyrev_hodge() -> BatyrevHodge {
    let data = PolytopeData::compute();
    let corrections: usize = data.interior_face_points.iter().sum();
    let h11 = (data.lattice_points_dual - 5 + corrections) as i64;
    let h21 = (data.lattice_points_delta - 5 + corrections) as i64;
    BatyrevHodge { h11, h21, euler: 2 * (h11 - h21) }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Resolution {
    Big,
    Mixed,
    Small,
}

impl std::str::FromStr for Resolution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "big" => Ok(Resolution::Big),
            "mixed" => Ok(Resolution::Mixed),
            "small" => Ok(Resolution::Small),
            _ => Err(Error::Usage(format!("unknown resolution {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeDiamond {
    /// `h[p][q] = h^{p,q}`.
    pub h: [[i64; 4]; 4],
    pub euler: i64,
}

impl HodgeDiamond {
    pub fn h11(&self) -> i64 {
        self.h[1][1]
    }

    pub fn h12(&self) -> i64 {
        self.h[1][2]
    }

    pub fn alternating_sum(&self) -> i64 {
        let mut total = 0;
        for p in 0..4 {
            for q in 0..4 {
                let sign = if (p + q) % 2 == 0 { 1 } else { -1 };
                total += sign * self.h[p][q];
            }
        }
        total
    }

    pub fn is_symmetric(&self) -> bool {
        (0..4).all(|p| (0..4).all(|q| self.h[p][q] == self.h[q][p] && self.h[p][q] == self.h[3 - p][3 - q]))
    }
}

pub fn hodge_diamond(node_count: usize, h12: i64, resolution: Resolution, small_available: bool) -> Result<HodgeDiamond> {
    if resolution == Resolution::Small && !small_available {
        return Err(Error::NoSmallResolution(format!("{node_count} nodes")));
    }
    let e = geometry::euler_numbers(node_count);
    let euler = match resolution {
        Resolution::Big => e.big,
        Resolution::Mixed => e.mixed,
        Resolution::Small => e.small,
    };
    let h11 = euler / 2 + h12;
    let mut h = [[0i64; 4]; 4];
    h[0][0] = 1;
    h[3][3] = 1;
    h[3][0] = 1;
    h[0][3] = 1;
    h[1][1] = h11;
    h[2][2] = h11;
    h[1][2] = h12;
    h[2][1] = h12;
    Ok(HodgeDiamond { h, euler })
}

/// Hodge diamond of a chosen resolution of `X_a`.
pub fn hodge_diamond_for(a: &FamilyParam, resolution: Resolution) -> Result<HodgeDiamond> {
    let nodes = geometry::node_count(a, None)?;
    let h12 = geometry::h12_for_family(a)?.h12;
    let small = geometry::smooth_model_exists_for(a)?;
    hodge_diamond(nodes, h12, resolution, small)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_points() {
        let pts = enumerate_delta_points();
        assert_eq!(pts.len(), 21);
        assert!(pts.contains(&[1, -1, 0, 0, 0]));
        assert!(pts.contains(&[0, 0, 0, 0, 0]));
        assert!(!pts.contains(&[1, 1, -1, -1, 0]));
    }

    #[test]
    fn batyrev_numbers() {
        let h = batyrev_hodge();
        assert_eq!((h.h11, h.h21, h.euler), (26, 16, 20));
        assert_eq!(h.euler, 2 * (h.h11 - h.h21));
        assert_eq!(h.h21, enumerate_delta_points().len() as i64 - 5);
    }

    #[test]
    fn diamonds() {
        let generic = hodge_diamond(30, 5, Resolution::Mixed, true).unwrap();
        assert_eq!((generic.h11(), generic.h12()), (45, 5));
        let x1 = hodge_diamond_for(&FamilyParam::new([1; 6]).unwrap(), Resolution::Mixed).unwrap();
        assert_eq!((x1.h11(), x1.h12()), (60, 0));
        let x25 = hodge_diamond_for(&FamilyParam::new([1, 1, 1, 1, 1, 25]).unwrap(), Resolution::Mixed).unwrap();
        assert_eq!((x25.h11(), x25.h12()), (46, 4));
        for d in [generic, x1, x25] {
            assert!(d.is_symmetric());
            assert_eq!(d.alternating_sum(), d.euler);
        }
        assert!(hodge_diamond_for(&FamilyParam::new([1, 1, 1, 1, 1, 9]).unwrap(), Resolution::Small).is_err());
        assert!(hodge_diamond_for(&FamilyParam::new([1; 6]).unwrap(), Resolution::Small).is_ok());
    }
}
