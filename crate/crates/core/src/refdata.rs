//! Reference data: published point counts, Frobenius traces, q-expansions and
//! the combinatorial tables the computations are checked against.
//!
//! Values are compiled in. [`fingerprint`] renders all of them canonically;
//! its SHA-256 is pinned in `refdata.sha256` so accidental edits fail a test.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::geometry::FamilyParam;
use crate::intersection::{BlockSign, SurfaceIndex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NamedFamily {
    pub name: &'static str,
    pub a: [i64; 6],
    /// Coordinate order used by the published count tables.
    pub table_order: [i64; 6],
    pub witness: [i64; 5],
    pub h11: i64,
    pub h12: i64,
    pub level: u64,
    pub form: &'static str,
    /// Bad primes as published.
    pub declared_bad: &'static [u64],
    /// Fibre `(a, b, c, t)` whose traces give `b_p` for the nonrigid families.
    pub bp_curve: Option<(i64, i64, i64, i64)>,
}

impl NamedFamily {
    pub fn param(&self) -> FamilyParam {
        FamilyParam::new(self.a).expect("named families are valid")
    }

    pub fn table_param(&self) -> FamilyParam {
        FamilyParam::new(self.table_order).expect("named families are valid")
    }

    pub fn is_rigid(&self) -> bool {
        self.h12 == 0
    }
}

pub const FAMILIES: [NamedFamily; 7] = [
    NamedFamily {
        name: "x1",
        a: [1, 1, 1, 1, 1, 1],
        table_order: [1, 1, 1, 1, 1, 1],
        witness: [1, 1, 1, -1, -1],
        h11: 60,
        h12: 0,
        level: 6,
        form: "f6",
        declared_bad: &[2, 3],
        bp_curve: None,
    },
    NamedFamily {
        name: "x9",
        a: [1, 1, 1, 1, 1, 9],
        table_order: [9, 1, 1, 1, 1, 1],
        witness: [1, 1, 1, 1, -1],
        h11: 50,
        h12: 0,
        level: 6,
        form: "f6",
        declared_bad: &[2, 3],
        bp_curve: None,
    },
    NamedFamily {
        name: "x11144",
        a: [1, 1, 1, 1, 4, 4],
        table_order: [4, 4, 1, 1, 1, 1],
        witness: [1, 1, 1, 1, -2],
        h11: 54,
        h12: 0,
        level: 12,
        form: "f12",
        declared_bad: &[2, 3, 5],
        bp_curve: None,
    },
    NamedFamily {
        name: "x11449",
        a: [1, 1, 1, 4, 4, 9],
        table_order: [4, 4, 9, 1, 1, 1],
        witness: [1, 1, 1, -2, 2],
        h11: 50,
        h12: 0,
        level: 60,
        form: "f60",
        declared_bad: &[2, 3, 5, 7],
        bp_curve: None,
    },
    NamedFamily {
        name: "x25",
        a: [1, 1, 1, 1, 1, 25],
        table_order: [25, 1, 1, 1, 1, 1],
        witness: [1, 1, 1, 1, 1],
        h11: 46,
        h12: 4,
        level: 30,
        form: "f30",
        declared_bad: &[2, 3, 5],
        bp_curve: Some((1, 1, 1, 25)),
    },
    NamedFamily {
        name: "x11999",
        a: [1, 1, 1, 9, 9, 9],
        table_order: [9, 9, 9, 1, 1, 1],
        witness: [1, 1, 1, 3, -3],
        h11: 48,
        h12: 2,
        level: 90,
        form: "f90",
        declared_bad: &[2, 3],
        bp_curve: Some((1, 9, 9, 9)),
    },
    NamedFamily {
        name: "x1444_16",
        a: [1, 1, 4, 4, 4, 16],
        table_order: [4, 4, 4, 16, 1, 1],
        witness: [1, 1, 2, 2, -2],
        h11: 49,
        h12: 1,
        level: 30,
        form: "f30'",
        declared_bad: &[2, 3, 5],
        bp_curve: Some((4, 4, 4, 16)),
    },
];

pub fn family(name: &str) -> Result<&'static NamedFamily> {
    FAMILIES.iter().find(|f| f.name == name).ok_or_else(|| Error::UnknownFamily(name.to_string()))
}

/// The named family whose parameter equals `a` up to coordinate permutation.
pub fn family_of(a: &FamilyParam) -> Option<&'static NamedFamily> {
    let mut key = *a.coords();
    key.sort_unstable();
    FAMILIES.iter().find(|f| {
        let mut k = f.a;
        k.sort_unstable();
        k == key
    })
}

/// Primes indexing the count-table rows, in published order.
pub const TABLE3_PRIMES: [u64; 17] = [7, 11, 13, 17, 19, 23, 29, 31, 41, 43, 53, 61, 71, 73, 103, 59, 37];

/// Point counts, one row per prime of [`TABLE3_PRIMES`], columns in [`FAMILIES`] order.
pub const TABLE3: [[i64; 7]; 17] = [
    [3720, 3160, 3360, 3172, 3000, 3092, 3120],
    [9240, 7920, 8424, 7956, 7464, 7680, 7848],
    [13080, 11260, 12036, 11368, 10500, 10940, 11088],
    [23400, 20340, 21420, 20112, 18540, 19464, 19920],
    [29640, 25840, 27480, 25840, 24720, 25352, 25416],
    [45120, 39600, 41904, 39840, 37560, 38796, 39144],
    [76560, 67860, 71604, 67584, 65100, 66408, 66984],
    [89400, 79480, 83376, 79528, 74664, 76760, 77880],
    [172200, 154980, 161820, 155172, 148884, 151632, 153744],
    [193080, 174160, 181224, 174400, 167640, 170636, 172656],
    [320400, 291780, 303012, 292392, 281580, 287112, 289512],
    [454440, 416620, 430788, 416500, 403884, 408836, 412608],
    [663840, 612720, 634320, 613032, 592944, 603720, 609168],
    [712920, 658900, 680700, 658684, 636180, 647660, 654048],
    [1735320, 1628200, 1671168, 1627156, 1586040, 1608716, 1616976],
    [418440, 383040, 397224, 383124, 367560, 375720, 378600],
    [134760, 120700, 126804, 121168, 114900, 118028, 119808],
];

/// Primes indexing the trace-table columns, in published order.
pub const TABLE4_PRIMES: [u64; 14] = [17, 19, 23, 29, 31, 41, 43, 53, 61, 71, 73, 103, 59, 37];

/// Traces on the two-dimensional piece, rows in [`FAMILIES`] order.
pub const TABLE4: [[i64; 14]; 7] = [
    [-126, 20, 168, 30, -88, 42, -52, 198, -538, 792, 218, 128, -660, 254],
    [-126, 20, 168, 30, -88, 42, -52, 198, -538, 792, 218, 128, -660, 254],
    [18, -100, 72, -234, -16, 90, 452, 414, 422, -360, 26, 8, -684, -226],
    [102, 20, -72, 306, -136, -150, -292, -414, -418, 480, 434, 1172, -744, -214],
    [42, -76, 0, 6, -232, 234, -412, 222, -490, 120, 746, -560, 660, 430],
    [-66, -100, -132, 90, 152, 438, 32, -222, 902, -432, 362, -1812, -420, 114],
    [-114, 140, 72, 210, 272, -198, -268, -78, 302, -768, -478, 640, 240, -260],
];

pub const TABLE4_LEVELS: [u64; 7] = [6, 6, 12, 60, 30, 90, 30];

/// `(p, count, trace)` for the family with bad reduction at 7, at the extra primes.
pub const TABLE5: [(u64, i64, i64); 23] = [
    (37, 121168, -214),
    (47, 216696, -72),
    (53, 292392, -414),
    (59, 383124, -744),
    (61, 416500, -418),
    (71, 613032, 480),
    (79, 807688, 1352),
    (83, 921000, -612),
    (101, 1546944, -1542),
    (103, 1627156, 1172),
    (107, 1800888, 1956),
    (109, 1896388, -1858),
    (113, 2086824, 174),
    (127, 2863252, -2068),
    (173, 6680856, 1962),
    (193, 9063196, -2038),
    (211, 11627272, 3260),
    (241, 16915444, -1822),
    (281, 26156796, -6654),
    (283, 26685544, -1756),
    (311, 34931928, -96),
    (179, 7345764, 576),
    (157, 5110360, -166),
];

/// Frobenius sets for bad primes {2,3,5} and {2,3,5,7}, before substitution.
pub const T235: [u64; 14] = [7, 11, 13, 17, 19, 23, 29, 31, 41, 43, 53, 61, 71, 73];
pub const T235_SUBSTITUTES: [(u64, u64); 3] = [(7, 103), (11, 59), (13, 37)];
pub const T2357: [u64; 31] = [
    11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 71, 73, 79, 83, 101, 103, 107, 109, 113, 127, 173, 193,
    211, 241, 281, 283, 311,
];
pub const T2357_SUBSTITUTES: [(u64, u64); 2] = [(11, 179), (13, 157)];

/// Leading q-expansion coefficients `a_1, a_2, …` as published.
pub const QEXP: [(&str, &[i64]); 7] = [
    ("f6", &[1, -2, -3, 4, 6, 6, -16, -8]),
    ("f12", &[1, 0, 3, 0, -18, 0, 8, 0, 9, 0, 36, 0, -10]),
    ("f60", &[1, 0, -3, 0, -5, 0, -28, 0, 9, 0, -24, 0, -70, 0, 15]),
    ("g30", &[1, -1, 1, 1, -1, -1, -4, -1, 1, 1, 0, 1]),
    ("f30", &[1, -2, 3, 4, 5, -6, 32, -8, 9]),
    ("f30'", &[1, 2, 3, 4, -5, 6, -4, 8, 9]),
    ("f90", &[1, -2, 0, 4, -5, 0, -4, -8, 0, 10, -12]),
];

pub fn qexp(name: &str) -> Option<&'static [i64]> {
    QEXP.iter().find(|(n, _)| *n == name).map(|(_, c)| *c)
}

/// Coefficient of `q^n` when the published prefix reaches it.
pub fn qexp_coefficient(name: &str, n: usize) -> Option<i64> {
    qexp(name).and_then(|c| c.get(n.checked_sub(1)?).copied())
}

/// `b_p` of the weight 2 level 30 form; primes sharing a column share a value.
pub const BP_TABLE: [(&[u64], i64); 14] = [
    (&[7, 103], -4),
    (&[11, 59], 0),
    (&[13, 37], 2),
    (&[17], 6),
    (&[19], -4),
    (&[23], 0),
    (&[29], -6),
    (&[31], 8),
    (&[41], -6),
    (&[43], -4),
    (&[53], -6),
    (&[61], -10),
    (&[71], 0),
    (&[73], 2),
];

pub fn bp(p: u64) -> Option<i64> {
    BP_TABLE.iter().find(|(ps, _)| ps.contains(&p)).map(|(_, b)| *b)
}

/// Subfamily census: index, shape, dimension, interior nodes, e(big), e(mixed), e(small).
/// `(index, shape, dimension, interior nodes, e_big, e_mixed, e_small)`.
pub type CensusRow = (usize, &'static str, usize, usize, i64, i64, Option<i64>);

pub const TABLE1: [CensusRow; 16] = [
    (0, "generic", 5, 0, 140, 80, Some(80)),
    (1, "(a:b:c:d:e)", 4, 1, 144, 84, None),
    (2, "(a:-a:b:c:d)", 3, 2, 148, 88, None),
    (3, "(a:b:-a-b:c:d)", 3, 2, 148, 88, None),
    (4, "(a:-a:a:b:c)", 2, 3, 152, 92, None),
    (5, "(a:-a:b:a-b:c)", 2, 3, 152, 92, None),
    (6, "(a:-a:b:-b:c)", 2, 4, 156, 96, Some(88)),
    (7, "(a:a:a:-a:b)", 1, 4, 156, 96, None),
    (8, "(a:a:a:-2a:b)", 1, 4, 156, 96, None),
    (9, "(a:a:b:-b:b-a)", 1, 4, 156, 96, None),
    (10, "(a:a:b:b:-a-b)", 1, 5, 160, 100, None),
    (11, "(a:a:-a:-a:b)", 1, 6, 164, 104, Some(92)),
    (12, "(1:1:1:1:-1)", 0, 5, 160, 100, None),
    (13, "(1:1:1:2:-2)", 0, 5, 160, 100, None),
    (14, "(1:1:1:1:-2)", 0, 7, 168, 108, None),
    (15, "(1:1:1:-1:-1)", 0, 10, 180, 120, Some(100)),
];

/// Block signs for `a = (1:1:1:1:1:t)`, rows and columns `E^{12}, E^{13}, …, E^{45}`.
/// `A` is the self-intersection block, `+`/`-` are `±B`, `0` is the zero block.
pub const COR_I_SIGN_TABLE: [&str; 10] = [
    "A+-++-+000",
    "+A+-+00-+0",
    "-+A+0+0-0+",
    "+-+A00+0-+",
    "++00A+-+-0",
    "-0+0+A++0-",
    "+00+-+A0+-",
    "0--0++0A++",
    "0+0--0++A+",
    "00++0--++A",
];

pub fn cor_i_pairs() -> Vec<SurfaceIndex> {
    let mut out = Vec::new();
    for i in 1..=5 {
        for j in (i + 1)..=5 {
            out.push(SurfaceIndex { i, j, admissible: true });
        }
    }
    out
}

pub fn cor_i_sign(row: usize, col: usize) -> BlockSign {
    match COR_I_SIGN_TABLE[row].as_bytes()[col] {
        b'A' => BlockSign::SelfBlock,
        b'+' => BlockSign::Plus,
        b'-' => BlockSign::Minus,
        _ => BlockSign::Disjoint,
    }
}

/// Traces at the published primes for a named family, merging both trace tables.
pub fn reference_traces(name: &str) -> Result<Vec<(u64, i64)>> {
    let idx = FAMILIES.iter().position(|f| f.name == name).ok_or_else(|| Error::UnknownFamily(name.into()))?;
    let mut out: Vec<(u64, i64)> = TABLE4_PRIMES.iter().copied().zip(TABLE4[idx].iter().copied()).collect();
    if name == "x11449" {
        for &(p, _, t) in TABLE5.iter() {
            if !out.iter().any(|(q, _)| *q == p) {
                out.push((p, t));
            }
        }
    }
    Ok(out)
}

/// Counts at the published primes for a named family, merging both count tables.
pub fn reference_counts(name: &str) -> Result<Vec<(u64, i64)>> {
    let idx = FAMILIES.iter().position(|f| f.name == name).ok_or_else(|| Error::UnknownFamily(name.into()))?;
    let mut out: Vec<(u64, i64)> = TABLE3_PRIMES.iter().copied().zip(TABLE3.iter().map(|row| row[idx])).collect();
    if name == "x11449" {
        for &(p, c, _) in TABLE5.iter() {
            if !out.iter().any(|(q, _)| *q == p) {
                out.push((p, c));
            }
        }
    }
    Ok(out)
}

/// Canonical text rendering of every embedded table.
pub fn fingerprint() -> String {
    let mut s = String::new();
    for f in FAMILIES.iter() {
        let _ = writeln!(
            s,
            "family {} {:?} {:?} {:?} {} {} {} {} {:?} {:?}",
            f.name, f.a, f.table_order, f.witness, f.h11, f.h12, f.level, f.form, f.declared_bad, f.bp_curve
        );
    }
    let _ = writeln!(s, "t3 {:?} {:?}", TABLE3_PRIMES, TABLE3);
    let _ = writeln!(s, "t4 {:?} {:?} {:?}", TABLE4_PRIMES, TABLE4, TABLE4_LEVELS);
    let _ = writeln!(s, "t5 {:?}", TABLE5);
    let _ = writeln!(s, "sets {:?} {:?} {:?} {:?}", T235, T235_SUBSTITUTES, T2357, T2357_SUBSTITUTES);
    let _ = writeln!(s, "qexp {:?}", QEXP);
    let _ = writeln!(s, "bp {:?}", BP_TABLE);
    let _ = writeln!(s, "t1 {:?}", TABLE1);
    let _ = writeln!(s, "cor {:?}", COR_I_SIGN_TABLE);
    s
}

pub fn checksum() -> String {
    let digest = Sha256::digest(fingerprint().as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

pub const PINNED_CHECKSUM: &str = include_str!("../refdata.sha256");

/// Text rendering of one reference table for the `tables` command.
pub fn render_table(which: u32) -> Result<String> {
    let mut s = String::new();
    match which {
        1 => {
            let _ = writeln!(s, "F_i\tshape\tdim\tnodes\te_big\te_mixed\te_small");
            for (i, shape, dim, k, eb, em, es) in TABLE1 {
                let small = es.map_or("-".to_string(), |v| v.to_string());
                let _ = writeln!(s, "F_{i}\t{shape}\t{dim}\t30+{k}\t{eb}\t{em}\t{small}");
            }
        }
        3 => {
            let names: Vec<&str> = FAMILIES.iter().map(|f| f.name).collect();
            let _ = writeln!(s, "p\t{}", names.join("\t"));
            for (p, row) in TABLE3_PRIMES.iter().zip(TABLE3.iter()) {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                let _ = writeln!(s, "{p}\t{}", cells.join("\t"));
            }
        }
        4 => {
            let primes: Vec<String> = TABLE4_PRIMES.iter().map(|p| p.to_string()).collect();
            let _ = writeln!(s, "family\t{}\tlevel", primes.join("\t"));
            for ((f, row), level) in FAMILIES.iter().zip(TABLE4.iter()).zip(TABLE4_LEVELS) {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                let _ = writeln!(s, "{}\t{}\t{level}", f.name, cells.join("\t"));
            }
        }
        5 => {
            let _ = writeln!(s, "p\tcount\ttrace");
            for (p, c, t) in TABLE5 {
                let _ = writeln!(s, "{p}\t{c}\t{t}");
            }
        }
        _ => return Err(Error::Usage(format!("no table {which}; choose 1, 3, 4 or 5"))),
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checksum_is_pinned() {
        assert_eq!(checksum(), PINNED_CHECKSUM.trim());
    }

    #[test]
    fn shapes() {
        assert_eq!(T2357.len(), 31);
        assert_eq!(TABLE5.len(), 23);
        assert_eq!(reference_traces("x11449").unwrap().len(), 31);
        assert!(family("x2").is_err());
        assert_eq!(bp(103), Some(-4));
        assert_eq!(qexp_coefficient("f6", 7), Some(-16));
        assert_eq!(qexp_coefficient("f6", 9), None);
    }

    #[test]
    fn table_rows_match_witnesses() {
        for f in FAMILIES.iter() {
            let w = crate::geometry::NodeWitness::new(f.witness).unwrap();
            assert_eq!(crate::geometry::phi(&w), f.param(), "{}", f.name);
            assert_eq!(family_of(&f.table_param()).map(|g| g.name), Some(f.name));
        }
    }

    #[test]
    fn overlapping_cells_agree() {
        let col = FAMILIES.iter().position(|f| f.name == "x11449").unwrap();
        for (p, count, trace) in TABLE5 {
            if let Some(r) = TABLE3_PRIMES.iter().position(|&q| q == p) {
                assert_eq!(TABLE3[r][col], count, "count at {p}");
            }
            if let Some(c) = TABLE4_PRIMES.iter().position(|&q| q == p) {
                assert_eq!(TABLE4[col][c], trace, "trace at {p}");
            }
        }
    }

    #[test]
    fn tables_render() {
        for t in [1, 3, 4, 5] {
            assert!(render_table(t).unwrap().lines().count() > 5);
        }
        assert!(render_table(2).is_err());
    }
}
