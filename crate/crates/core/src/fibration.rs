//! Bookkeeping for conic fibrations: records of the fibre types, the
//! orbifold budget of the special fibres and the degree constraints that
//! adjunction and Hurwitz impose on the horizontal boundary.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::base::{hurwitz_double_cover_euler, q, qi, Rational, StandardCoeff};
use crate::dualgraph::{FibreKind, FibreTypeLabel};
use crate::error::{Error, Result};

/// Shape of the coefficient-one horizontal part of the boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Profile {
    /// Two disjoint sections.
    TwoSections,
    /// One irreducible bisection.
    Bisection,
    /// One section, possibly with a half-coefficient bisection.
    SectionOnly,
}

impl Profile {
    pub fn allowed(&self) -> &'static [FibreKind] {
        match self {
            Profile::TwoSections => &[FibreKind::II1],
            Profile::Bisection => &[FibreKind::I2, FibreKind::II1, FibreKind::II3],
            Profile::SectionOnly => &[FibreKind::I1, FibreKind::I3],
        }
    }

    pub fn generic_kind(&self) -> FibreKind {
        match self {
            Profile::SectionOnly => FibreKind::I1,
            _ => FibreKind::II1,
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::TwoSections => "TWO_SECTIONS",
            Profile::Bisection => "BISECTION",
            Profile::SectionOnly => "SECTION_ONLY",
        })
    }
}

impl FromStr for Profile {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().replace('-', "_").as_str() {
            "TWO_SECTIONS" => Ok(Profile::TwoSections),
            "BISECTION" => Ok(Profile::Bisection),
            "SECTION_ONLY" => Ok(Profile::SectionOnly),
            _ => Err(Error::Parse(format!("unknown profile {s:?}"))),
        }
    }
}

/// Special fibres and the generic fibre of a conic fibration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypRecord {
    pub special: Vec<FibreTypeLabel>,
    pub generic: FibreTypeLabel,
}

impl TypRecord {
    pub fn new(special: Vec<FibreTypeLabel>, generic: FibreTypeLabel) -> Self {
        TypRecord { special, generic }
    }

    fn count(&self, kind: FibreKind) -> u64 {
        self.special.iter().filter(|l| l.kind() == kind).count() as u64
    }
}

impl fmt::Display for TypRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut groups: Vec<(FibreTypeLabel, usize)> = Vec::new();
        for l in &self.special {
            match groups.iter_mut().find(|(g, _)| g == l) {
                Some((_, n)) => *n += 1,
                None => groups.push((*l, 1)),
            }
        }
        let parts: Vec<String> = groups
            .iter()
            .map(|(l, n)| {
                if *n == 1 {
                    l.to_string()
                } else {
                    format!("{n}{l}")
                }
            })
            .collect();
        write!(f, "({}; {})", parts.join("+"), self.generic)
    }
}

/// Parses `(4(I-2)_1; (II-1)_1)`; the outer parentheses are optional and
/// an empty special part is allowed.
impl FromStr for TypRecord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad fibre record {s:?}"));
        let mut t = s.trim();
        if wrapped(t) {
            t = &t[1..t.len() - 1];
        }
        let (sp, gen) = t.split_once(';').ok_or_else(bad)?;
        let mut special = Vec::new();
        for term in sp.split('+').map(str::trim).filter(|x| !x.is_empty()) {
            let digits = term.chars().take_while(|c| c.is_ascii_digit()).count();
            let n: usize = if digits == 0 {
                1
            } else {
                term[..digits].parse().map_err(|_| bad())?
            };
            let l: FibreTypeLabel = term[digits..].parse()?;
            special.extend(std::iter::repeat_n(l, n));
        }
        Ok(TypRecord::new(special, gen.trim().parse()?))
    }
}

/// True when the first character is a parenthesis closed by the last one.
fn wrapped(t: &str) -> bool {
    if !t.starts_with('(') {
        return false;
    }
    let mut depth = 0;
    for (i, c) in t.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return i == t.len() - 1;
                }
            }
            _ => {}
        }
    }
    false
}

/// Orbifold defect `sum (1 - 1/o_p)` over the singular points of each
/// special fibre lying off the coefficient-one boundary.
pub fn boundary_budget(rec: &TypRecord, profile: Profile) -> Result<Rational> {
    let mut total = Rational::zero();
    for l in &rec.special {
        if !profile.allowed().contains(&l.kind()) {
            return Err(Error::Unsupported(format!(
                "{l} does not occur with {profile}"
            )));
        }
        total += match l.kind() {
            FibreKind::I2 => qi(1),
            FibreKind::I3 => q(1, 2),
            FibreKind::II3 => {
                let k = l.k().expect("II-3 carries k") as i64;
                q(4 * k - 1, 4 * k)
            }
            _ => qi(0),
        };
    }
    Ok(total)
}

/// Branch points of the bisection: the full bisection for [`Profile::Bisection`],
/// the half-coefficient one for [`Profile::SectionOnly`].
pub fn branch_count(rec: &TypRecord, profile: Profile) -> u64 {
    match profile {
        Profile::TwoSections => 0,
        Profile::Bisection => rec.count(FibreKind::I2) + rec.count(FibreKind::II3),
        Profile::SectionOnly => rec.count(FibreKind::I3),
    }
}

/// Topological Euler number of one coefficient-one horizontal curve over a
/// base of genus `g`.
pub fn horizontal_euler(rec: &TypRecord, profile: Profile, base_genus: u32) -> Result<i64> {
    let e_base = 2 - 2 * base_genus as i64;
    let branch = branch_count(rec, profile);
    match profile {
        Profile::Bisection if base_genus == 0 => hurwitz_double_cover_euler(branch),
        Profile::Bisection => {
            if branch % 2 == 1 {
                return Err(Error::Inconsistent(format!(
                    "a double cover cannot have {branch} branch points"
                )));
            }
            Ok(2 * e_base - branch as i64)
        }
        _ => Ok(e_base),
    }
}

/// Degree of the different on the coefficient-one horizontal curve (one of
/// the sections for [`Profile::TwoSections`]).
pub fn horizontal_degree(rec: &TypRecord, profile: Profile) -> Rational {
    rec.special
        .iter()
        .map(|l| {
            let c = l.b().value();
            match (profile, l.kind()) {
                (Profile::SectionOnly, FibreKind::I3) => l.b().half_shift(),
                (Profile::Bisection, FibreKind::II1) => qi(2) * c,
                _ => c,
            }
        })
        .sum()
}

/// Euler number of the reduced boundary: the horizontal curves plus every
/// fibre whose component has coefficient one.
pub fn floor_euler(rec: &TypRecord, profile: Profile, base_genus: u32) -> Result<i64> {
    let h = horizontal_euler(rec, profile, base_genus)?;
    let curves = if profile == Profile::TwoSections {
        2 * h
    } else {
        h
    };
    let meets = match profile {
        Profile::SectionOnly => 1,
        _ => 2,
    };
    let vertical = rec
        .special
        .iter()
        .filter(|l| l.b() == StandardCoeff::Infinity)
        .count() as i64;
    Ok(curves + vertical * (2 - meets))
}

/// Reasons `rec` is inconsistent with `profile` over a base of genus `g`;
/// empty when it passes.
pub fn typ_violations(rec: &TypRecord, profile: Profile, base_genus: u32) -> Vec<String> {
    let mut out = Vec::new();
    if rec.generic.kind() != profile.generic_kind() || rec.generic.b() != StandardCoeff::Finite(1) {
        out.push(format!(
            "generic fibre must be ({})_1, got {}",
            profile.generic_kind(),
            rec.generic
        ));
    }
    for l in &rec.special {
        if !profile.allowed().contains(&l.kind()) {
            out.push(format!("{l} does not occur with {profile}"));
        }
    }
    let branch = branch_count(rec, profile);
    if branch % 2 == 1 {
        out.push(format!("odd number {branch} of branch points"));
    }
    match horizontal_euler(rec, profile, base_genus) {
        Ok(e) => {
            if profile == Profile::Bisection && e > 2 {
                out.push(format!("bisection with Euler number {e} is disconnected"));
            }
            let deg = horizontal_degree(rec, profile);
            if deg != qi(e) {
                out.push(format!(
                    "different has degree {} but the horizontal curve has Euler number {e}",
                    crate::base::fmt_q(&deg)
                ));
            }
        }
        Err(e) => out.push(e.to_string()),
    }
    out
}

pub fn check_typ_over(rec: &TypRecord, profile: Profile, base_genus: u32) -> bool {
    typ_violations(rec, profile, base_genus).is_empty()
}

/// [`check_typ_over`] with a rational base.
pub fn check_typ(rec: &TypRecord, profile: Profile) -> bool {
    check_typ_over(rec, profile, 0)
}

/// Normal form of a fibre type under S-elementary transformations. The
/// catalog labels are already the normal forms, so this validates and
/// returns its input.
pub fn s_elementary_rewrite(
    kind: FibreKind,
    b: StandardCoeff,
    k: Option<u32>,
) -> Result<FibreTypeLabel> {
    FibreTypeLabel::new(kind, b, k)
}

/// A named configuration from the classification lists.
#[derive(Debug, Clone)]
pub struct NamedTyp {
    pub name: &'static str,
    pub record: TypRecord,
    pub profile: Profile,
    pub base_genus: u32,
}

fn lbl(kind: FibreKind, b: u64) -> FibreTypeLabel {
    FibreTypeLabel::of(kind, b).expect("valid label")
}

fn rec_of(kinds: &[(usize, FibreKind, u64)], generic: FibreKind) -> TypRecord {
    let mut special = Vec::new();
    for &(n, kind, b) in kinds {
        special.extend(std::iter::repeat_n(lbl(kind, b), n));
    }
    TypRecord::new(special, lbl(generic, 1))
}

/// The fibre multisets `{1/2 x4}, {2/3 x3}, {1/2, 3/4 x2}, {1/2, 2/3, 5/6}`
/// as lists of `b`.
pub fn type_ii_b_lists() -> [&'static [u64]; 4] {
    [&[2, 2, 2, 2], &[3, 3, 3], &[2, 4, 4], &[2, 3, 6]]
}

/// The twenty-two configurations with vanishing orbifold Euler number of
/// the complement.
pub fn type_ii_catalog() -> Vec<NamedTyp> {
    use FibreKind::*;
    let mut out = Vec::new();
    let empty = |g| rec_of(&[], g);
    let elliptic = [
        ("a-1", Profile::Bisection, II1),
        ("a-2", Profile::TwoSections, II1),
        ("a-3", Profile::SectionOnly, I1),
        ("a-4", Profile::SectionOnly, I1),
    ];
    for (name, profile, g) in elliptic {
        out.push(NamedTyp {
            name,
            record: empty(g),
            profile,
            base_genus: 1,
        });
    }
    let names_b = ["b-1", "b-2", "b-3", "b-4"];
    let names_c = ["c-1", "c-2", "c-3", "c-4"];
    for (i, bs) in type_ii_b_lists().iter().enumerate() {
        let sec: Vec<FibreTypeLabel> = bs.iter().map(|&b| lbl(I1, b)).collect();
        out.push(NamedTyp {
            name: names_b[i],
            record: TypRecord::new(sec, lbl(I1, 1)),
            profile: Profile::SectionOnly,
            base_genus: 0,
        });
        let two: Vec<FibreTypeLabel> = bs.iter().map(|&b| lbl(II1, b)).collect();
        out.push(NamedTyp {
            name: names_c[i],
            record: TypRecord::new(two, lbl(II1, 1)),
            profile: Profile::TwoSections,
            base_genus: 0,
        });
    }
    let rational = [
        ("d-1", Profile::Bisection, rec_of(&[(4, I2, 1)], II1)),
        ("d-2", Profile::SectionOnly, rec_of(&[(4, I3, 1)], I1)),
        (
            "d-3",
            Profile::SectionOnly,
            rec_of(&[(2, I1, 2), (2, I3, 1)], I1),
        ),
        (
            "d-4",
            Profile::SectionOnly,
            rec_of(&[(1, I1, 4), (1, I3, 2), (1, I3, 1)], I1),
        ),
        (
            "d-5",
            Profile::SectionOnly,
            rec_of(&[(2, I3, 2), (1, I1, 2)], I1),
        ),
        (
            "d-6",
            Profile::SectionOnly,
            rec_of(&[(1, I1, 3), (1, I3, 1), (1, I3, 3)], I1),
        ),
        (
            "e-1",
            Profile::Bisection,
            rec_of(&[(2, I2, 2), (1, II1, 2)], II1),
        ),
        (
            "e-2",
            Profile::Bisection,
            rec_of(&[(2, I2, 1), (2, II1, 2)], II1),
        ),
        (
            "e-3",
            Profile::Bisection,
            rec_of(&[(1, I2, 1), (1, I2, 3), (1, II1, 3)], II1),
        ),
        (
            "e-4",
            Profile::Bisection,
            rec_of(&[(1, I2, 1), (1, I2, 2), (1, II1, 4)], II1),
        ),
    ];
    for (name, profile, record) in rational {
        out.push(NamedTyp {
            name,
            record,
            profile,
            base_genus: 0,
        });
    }
    out.sort_by_key(|t| t.name);
    out
}

/// The two fibred configurations of Cartier index one with a reduced
/// boundary fibre.
pub fn type_iii_fibred() -> Vec<NamedTyp> {
    let inf = |kind| FibreTypeLabel::new(kind, StandardCoeff::Infinity, None).expect("valid");
    vec![
        NamedTyp {
            name: "a",
            record: TypRecord::new(vec![inf(FibreKind::II1); 2], lbl(FibreKind::II1, 1)),
            profile: Profile::TwoSections,
            base_genus: 0,
        },
        NamedTyp {
            name: "c",
            record: TypRecord::new(
                vec![
                    lbl(FibreKind::I2, 1),
                    lbl(FibreKind::I2, 1),
                    inf(FibreKind::II1),
                ],
                lbl(FibreKind::II1, 1),
            ),
            profile: Profile::Bisection,
            base_genus: 0,
        },
    ]
}
