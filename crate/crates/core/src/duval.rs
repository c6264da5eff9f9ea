//! Du Val singularities, the six canonical covering cases at a non-Gorenstein
//! point, the invariants `c_p` and `delta_p`, and the catalog of singular rank
//! one Gorenstein log del Pezzo surfaces.

use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::base::{parse_q, q, qi, Rational};
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    D,
    E,
}

/// Rational double point `A_n` (n >= 1), `D_n` (n >= 4) or `E_6`, `E_7`, `E_8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DuValType {
    family: Family,
    index: u32,
}

impl DuValType {
    pub fn new(family: Family, index: u32) -> Result<Self> {
        let ok = match family {
            Family::A => index >= 1,
            Family::D => index >= 4,
            Family::E => (6..=8).contains(&index),
        };
        if !ok {
            return invalid(format!("{family:?}_{index} is not a Du Val type"));
        }
        Ok(DuValType { family, index })
    }

    pub fn a(n: u32) -> Result<Self> {
        Self::new(Family::A, n)
    }
    pub fn d(n: u32) -> Result<Self> {
        Self::new(Family::D, n)
    }
    pub fn e(n: u32) -> Result<Self> {
        Self::new(Family::E, n)
    }

    pub fn family(&self) -> Family {
        self.family
    }
    pub fn index(&self) -> u32 {
        self.index
    }

    /// Number of exceptional curves on the minimal resolution.
    pub fn curve_count(&self) -> u32 {
        self.index
    }

    /// Determinant of the negated intersection matrix (discriminant).
    pub fn discriminant(&self) -> u64 {
        match self.family {
            Family::A => self.index as u64 + 1,
            Family::D => 4,
            Family::E => 9 - self.index as u64,
        }
    }
}

impl fmt::Display for DuValType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}_{}", self.family, self.index)
    }
}

impl FromStr for DuValType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next() {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(Error::Parse(format!("bad Du Val type {s:?}"))),
        };
        let rest = chars.as_str().trim_start_matches('_');
        let index = rest
            .parse()
            .map_err(|_| Error::Parse(format!("bad Du Val index in {s:?}")))?;
        DuValType::new(family, index)
    }
}

/// Order of the local fundamental group (binary polyhedral group).
pub fn duval_order(t: DuValType) -> u64 {
    let n = t.index as u64;
    match (t.family, n) {
        (Family::A, _) => n + 1,
        (Family::D, _) => 4 * (n - 2),
        (Family::E, 6) => 24,
        (Family::E, 7) => 48,
        _ => 120,
    }
}

/// Euler number of the exceptional tree of rational curves.
pub fn exceptional_euler(t: DuValType) -> u64 {
    t.curve_count() as u64 + 1
}

/// How the index-`r` cover acts at a point of a Du Val surface inside a
/// threefold; `Gorenstein` covers index one (and `Smooth` a smooth point).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoverCase {
    Smooth,
    Gorenstein(DuValType),
    Case1 { r: u64, n: u64 },
    Case2 { n: u64 },
    Case3 { n: u64 },
    Case4,
    Case5 { n: u64 },
    Case6,
}

impl CoverCase {
    /// Builds a case from its number and parameters, enforcing the ranges.
    pub fn new(case_id: u8, r: Option<u64>, n: Option<u64>) -> Result<Self> {
        let need_n = |lo: u64| -> Result<u64> {
            match n {
                Some(n) if n >= lo => Ok(n),
                Some(n) => invalid(format!("case {case_id} needs n >= {lo}, got {n}")),
                None => invalid(format!("case {case_id} needs a parameter n")),
            }
        };
        let check_r = |want: u64| -> Result<()> {
            match r {
                Some(r) if r != want => invalid(format!("case {case_id} has r = {want}, got {r}")),
                _ => Ok(()),
            }
        };
        let c = match case_id {
            1 => {
                let r = r.ok_or_else(|| Error::InvalidInput("case 1 needs r".into()))?;
                if r < 2 {
                    return invalid("case 1 needs r >= 2");
                }
                CoverCase::Case1 { r, n: need_n(1)? }
            }
            2 => {
                check_r(4)?;
                CoverCase::Case2 { n: need_n(2)? }
            }
            3 => {
                check_r(2)?;
                CoverCase::Case3 { n: need_n(2)? }
            }
            4 => {
                check_r(3)?;
                CoverCase::Case4
            }
            5 => {
                check_r(2)?;
                CoverCase::Case5 { n: need_n(3)? }
            }
            6 => {
                check_r(2)?;
                CoverCase::Case6
            }
            _ => return invalid(format!("unknown covering case {case_id}")),
        };
        Ok(c)
    }

    pub fn case_id(&self) -> u8 {
        match self {
            CoverCase::Smooth | CoverCase::Gorenstein(_) => 0,
            CoverCase::Case1 { .. } => 1,
            CoverCase::Case2 { .. } => 2,
            CoverCase::Case3 { .. } => 3,
            CoverCase::Case4 => 4,
            CoverCase::Case5 { .. } => 5,
            CoverCase::Case6 => 6,
        }
    }

    /// Index of the threefold at the point.
    pub fn r(&self) -> u64 {
        match *self {
            CoverCase::Smooth | CoverCase::Gorenstein(_) => 1,
            CoverCase::Case1 { r, .. } => r,
            CoverCase::Case2 { .. } => 4,
            CoverCase::Case4 => 3,
            CoverCase::Case3 { .. } | CoverCase::Case5 { .. } | CoverCase::Case6 => 2,
        }
    }

    /// Du Val type of the surface at the point (`None` when smooth).
    pub fn base_type(&self) -> Option<DuValType> {
        let t = match *self {
            CoverCase::Smooth => return None,
            CoverCase::Gorenstein(t) => Ok(t),
            CoverCase::Case1 { r, n } => DuValType::a((r * n - 1) as u32),
            CoverCase::Case2 { n } => DuValType::d((2 * n + 1) as u32),
            CoverCase::Case3 { n } => DuValType::d((n + 2) as u32),
            CoverCase::Case4 => DuValType::e(6),
            CoverCase::Case5 { n } => DuValType::d((2 * n) as u32),
            CoverCase::Case6 => DuValType::e(7),
        };
        Some(t.expect("case ranges keep the type valid"))
    }

    /// Du Val type on the canonical cover (`None` when the cover is smooth).
    pub fn cover_type(&self) -> Option<DuValType> {
        let t = match *self {
            CoverCase::Smooth => return None,
            CoverCase::Gorenstein(t) => return Some(t),
            CoverCase::Case1 { n: 1, .. } => return None,
            CoverCase::Case1 { n, .. } => DuValType::a((n - 1) as u32),
            CoverCase::Case2 { n } => DuValType::a((2 * n - 2) as u32),
            CoverCase::Case3 { n } => DuValType::a((2 * n - 1) as u32),
            CoverCase::Case4 => DuValType::d(4),
            CoverCase::Case5 { n } => DuValType::d((n + 1) as u32),
            CoverCase::Case6 => DuValType::e(6),
        };
        Some(t.expect("case ranges keep the type valid"))
    }

    pub fn e_p(&self) -> u64 {
        self.base_type().map_or(1, exceptional_euler)
    }

    pub fn o_p(&self) -> u64 {
        self.base_type().map_or(1, duval_order)
    }
}

impl fmt::Display for CoverCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverCase::Smooth => write!(f, "smooth"),
            CoverCase::Gorenstein(t) => write!(f, "Gorenstein {t}"),
            CoverCase::Case1 { r, n } => write!(f, "(1) r={r} n={n}"),
            CoverCase::Case2 { n } => write!(f, "(2) n={n}"),
            CoverCase::Case3 { n } => write!(f, "(3) n={n}"),
            CoverCase::Case4 => write!(f, "(4)"),
            CoverCase::Case5 { n } => write!(f, "(5) n={n}"),
            CoverCase::Case6 => write!(f, "(6)"),
        }
    }
}

pub fn c_p(cover: &CoverCase) -> Rational {
    match *cover {
        CoverCase::Smooth | CoverCase::Gorenstein(_) => qi(0),
        CoverCase::Case1 { r, n } => qi(n as i64) * (qi(r as i64) - q(1, r as i64)),
        CoverCase::Case2 { n } => q(3 * (2 * n as i64 + 3), 4),
        CoverCase::Case3 { .. } => qi(3),
        CoverCase::Case4 => q(16, 3),
        CoverCase::Case5 { n } => q(3 * n as i64, 2),
        CoverCase::Case6 => q(9, 2),
    }
}

/// `delta_p = e_p - 1/o_p - c_p`.
pub fn delta_p(cover: &CoverCase) -> Rational {
    qi(cover.e_p() as i64) - q(1, cover.o_p() as i64) - c_p(cover)
}

/// Closed forms of the `delta_p` column as printed in the index >= 2 table.
pub fn delta_closed_form(cover: &CoverCase) -> Option<Rational> {
    let v = match *cover {
        CoverCase::Case1 { r, n } => {
            let (r, n) = (r as i64, n as i64);
            q(n * n - 1, r * n)
        }
        CoverCase::Case2 { n } => {
            let n = n as i64;
            q(n * (n - 1), 2 * n - 1)
        }
        CoverCase::Case3 { n } => {
            let n = n as i64;
            q(4 * n * n - 1, 4 * n)
        }
        CoverCase::Case4 => q(13, 8),
        CoverCase::Case5 { n } => {
            let n = n as i64;
            q(4 * n * n + 4 * n - 9, 8 * (n - 1))
        }
        CoverCase::Case6 => q(167, 48),
        CoverCase::Smooth | CoverCase::Gorenstein(_) => return None,
    };
    Some(v)
}

/// Closed forms of the `e_p` and `o_p` columns of the same table.
pub fn e_o_closed_form(cover: &CoverCase) -> Option<(u64, u64)> {
    Some(match *cover {
        CoverCase::Case1 { r, n } => (r * n, r * n),
        CoverCase::Case2 { n } => (2 * n + 2, 8 * n - 4),
        CoverCase::Case3 { n } => (n + 3, 4 * n),
        CoverCase::Case4 => (7, 24),
        CoverCase::Case5 { n } => (2 * n + 1, 8 * (n - 1)),
        CoverCase::Case6 => (8, 48),
        CoverCase::Smooth | CoverCase::Gorenstein(_) => return None,
    })
}

/// Row of the covering-case table, with every column computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DuValRecord {
    pub cover: CoverCase,
    pub e_p: u64,
    pub o_p: u64,
    pub c_p: Rational,
    pub delta_p: Rational,
}

impl DuValRecord {
    pub fn of(cover: CoverCase) -> Self {
        DuValRecord {
            cover,
            e_p: cover.e_p(),
            o_p: cover.o_p(),
            c_p: c_p(&cover),
            delta_p: delta_p(&cover),
        }
    }
}

/// Parametric grid used to regenerate the covering-case table.
pub fn table_i_grid(r_max: u64, n_max_case1: u64, n_max: u64) -> Vec<CoverCase> {
    let mut out = Vec::new();
    for r in 2..=r_max {
        for n in 1..=n_max_case1 {
            out.push(CoverCase::Case1 { r, n });
        }
    }
    for n in 2..=n_max {
        out.push(CoverCase::Case2 { n });
    }
    for n in 2..=n_max {
        out.push(CoverCase::Case3 { n });
    }
    out.push(CoverCase::Case4);
    for n in 3..=n_max {
        out.push(CoverCase::Case5 { n });
    }
    out.push(CoverCase::Case6);
    out
}

/// Singular rank one Gorenstein log del Pezzo surface: degree, singularities
/// and the orbifold Euler number of the surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelPezzoEntry {
    pub row: u32,
    pub degree: u32,
    pub singularities: Vec<DuValType>,
    pub e_orb: Rational,
}

/// `e_orb = e_top(S) - sum (1 - 1/o_p)` with `e_top(S) = 3`, the value for
/// any surface of Picard rank one with quotient singularities.
pub fn delpezzo_e_orb(sing: &[DuValType]) -> Rational {
    let mut e = qi(3);
    for t in sing {
        e -= Rational::one() - q(1, duval_order(*t) as i64);
    }
    e
}

/// Same quantity with `e_top(S)` read off the minimal resolution,
/// `12 - d - sum curve_count`. Agrees with [`delpezzo_e_orb`] exactly when
/// the singularities have `9 - d` exceptional curves in total.
pub fn delpezzo_e_orb_from_degree(degree: u32, sing: &[DuValType]) -> Rational {
    let curves: u32 = sing.iter().map(|t| t.curve_count()).sum();
    delpezzo_e_orb(sing) + qi(9 - degree as i64 - curves as i64)
}

/// Whether the resolution of a degree `d` surface with these singularities
/// has Picard rank `10 - d`, as rank one requires.
pub fn rank_one_consistent(degree: u32, sing: &[DuValType]) -> bool {
    sing.iter().map(|t| t.curve_count()).sum::<u32>() + degree == 9
}

/// Parses `"A5+A2+A1"`, `"2A3+A1"` or `"3A_2"`.
pub fn parse_singularities(s: &str) -> Result<Vec<DuValType>> {
    let mut out = Vec::new();
    for term in s.split('+') {
        let term = term.trim();
        let split = term
            .find(|c: char| !c.is_ascii_digit())
            .ok_or_else(|| Error::Parse(format!("bad singularity term {term:?}")))?;
        let count: usize = if split == 0 {
            1
        } else {
            term[..split]
                .parse()
                .map_err(|_| Error::Parse(format!("bad multiplicity in {term:?}")))?
        };
        let t: DuValType = term[split..].parse()?;
        out.extend(std::iter::repeat_n(t, count));
    }
    out.sort_by(|a, b| b.cmp(a));
    Ok(out)
}

/// Renders a singularity multiset as `2A3+A1`, largest type first.
pub fn format_singularities(sing: &[DuValType]) -> String {
    let mut sorted = sing.to_vec();
    sorted.sort_by(|a, b| {
        (b.family == Family::E, b.family == Family::D, b.index).cmp(&(
            a.family == Family::E,
            a.family == Family::D,
            a.index,
        ))
    });
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        let t = sorted[i];
        let name = format!("{:?}{}", t.family, t.index);
        parts.push(if j - i == 1 {
            name
        } else {
            format!("{}{}", j - i, name)
        });
        i = j;
    }
    parts.join("+")
}

/// Literal copy of the del Pezzo table: row, degree, singularities, e_orb.
pub const TABLE_IV_DATA: &str = include_str!("../data/table_iv.tsv");

/// Literal rows as stored, without recomputation.
pub fn table_iv_literal() -> Result<Vec<DelPezzoEntry>> {
    let mut rows = Vec::new();
    for line in TABLE_IV_DATA.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != 4 {
            return Err(Error::Parse(format!("table IV line {line:?}")));
        }
        let num = |s: &str| -> Result<u32> {
            s.parse()
                .map_err(|_| Error::Parse(format!("bad integer {s:?}")))
        };
        rows.push(DelPezzoEntry {
            row: num(f[0])?,
            degree: num(f[1])?,
            singularities: parse_singularities(f[2])?,
            e_orb: parse_q(f[3])?,
        });
    }
    Ok(rows)
}

/// The 27 entries with `e_orb` recomputed from degree and singularities.
pub fn delpezzo_catalog() -> Vec<DelPezzoEntry> {
    table_iv_literal()
        .expect("embedded table parses")
        .into_iter()
        .map(|mut e| {
            e.e_orb = delpezzo_e_orb(&e.singularities);
            e
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_euler() {
        assert_eq!(duval_order(DuValType::a(3).unwrap()), 4);
        assert_eq!(duval_order(DuValType::d(5).unwrap()), 12);
        assert_eq!(duval_order(DuValType::e(7).unwrap()), 48);
        assert_eq!(duval_order(DuValType::e(8).unwrap()), 120);
        assert_eq!(exceptional_euler(DuValType::a(5).unwrap()), 6);
        assert_eq!(exceptional_euler(DuValType::d(4).unwrap()), 5);
        assert_eq!(exceptional_euler(DuValType::e(8).unwrap()), 9);
        assert!(DuValType::d(3).is_err());
        assert!(DuValType::e(9).is_err());
        assert!(DuValType::a(0).is_err());
    }

    #[test]
    fn c_and_delta_examples() {
        let c1 = CoverCase::new(1, Some(3), Some(2)).unwrap();
        assert_eq!(c_p(&c1), q(16, 3));
        assert_eq!(delta_p(&c1), q(1, 2));
        assert_eq!(c_p(&CoverCase::Case4), q(16, 3));
        assert_eq!(delta_p(&CoverCase::Case4), q(13, 8));
        assert_eq!(
            delta_p(&CoverCase::new(1, Some(2), Some(1)).unwrap()),
            qi(0)
        );
        let g = CoverCase::Gorenstein(DuValType::a(1).unwrap());
        assert_eq!(c_p(&g), qi(0));
        assert_eq!(delta_p(&g), q(3, 2));
        assert_eq!(delta_p(&CoverCase::Smooth), qi(0));
    }

    #[test]
    fn case_ranges_are_enforced() {
        assert!(CoverCase::new(5, None, Some(2)).is_err());
        assert!(CoverCase::new(2, Some(2), Some(3)).is_err());
        assert!(CoverCase::new(1, Some(1), Some(3)).is_err());
        assert!(CoverCase::new(7, None, None).is_err());
        assert_eq!(CoverCase::new(2, None, Some(2)).unwrap().r(), 4);
    }

    #[test]
    fn cover_and_base_types() {
        let c = CoverCase::Case2 { n: 3 };
        assert_eq!(c.base_type(), Some(DuValType::d(7).unwrap()));
        assert_eq!(c.cover_type(), Some(DuValType::a(4).unwrap()));
        assert_eq!(CoverCase::Case1 { r: 5, n: 1 }.cover_type(), None);
        assert_eq!(
            CoverCase::Case6.cover_type(),
            Some(DuValType::e(6).unwrap())
        );
    }

    #[test]
    fn singularity_strings() {
        let s = parse_singularities("2A3+A1").unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(format_singularities(&s), "2A3+A1");
        let s = parse_singularities("A1+A2+A5").unwrap();
        assert_eq!(format_singularities(&s), "A5+A2+A1");
        assert_eq!(
            format_singularities(&parse_singularities("E7+A2").unwrap()),
            "E7+A2"
        );
        assert_eq!(
            format_singularities(&parse_singularities("D4+A3").unwrap()),
            "D4+A3"
        );
        assert!(parse_singularities("X3").is_err());
    }

    #[test]
    fn catalog_examples() {
        let cat = delpezzo_catalog();
        assert_eq!(cat.len(), 27);
        assert_eq!(cat[0].e_orb, q(5, 2));
        assert_eq!(cat[24].e_orb, q(1, 3));
        assert_eq!(cat[14].e_orb, q(241, 120));
    }

    #[test]
    fn degree_formula_and_rank() {
        for e in delpezzo_catalog() {
            let agree = delpezzo_e_orb_from_degree(e.degree, &e.singularities) == e.e_orb;
            assert_eq!(
                agree,
                rank_one_consistent(e.degree, &e.singularities),
                "row {}",
                e.row
            );
        }
        // E7+A2 carries nine curves, one more than degree one allows
        let bad: Vec<u32> = delpezzo_catalog()
            .into_iter()
            .filter(|e| !rank_one_consistent(e.degree, &e.singularities))
            .map(|e| e.row)
            .collect();
        assert_eq!(bad, vec![17]);
        let s = parse_singularities("E7+A2").unwrap();
        assert_eq!(delpezzo_e_orb(&s), q(65, 48));
        assert_eq!(delpezzo_e_orb_from_degree(1, &s), q(17, 48));
    }
}
