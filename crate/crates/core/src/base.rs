//! Exact rationals, standard boundary coefficients, different multiplicities
//! and the small enumerators the other modules lean on.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{invalid, Error, Result};

/// Reduced fraction of big integers. Normalisation is done by `num-rational`
/// on every construction, so structural equality is value equality.
pub type Rational = BigRational;

pub fn q(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qbig(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Parses `"p/q"`, `"-p/q"` or a bare integer.
pub fn parse_q(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational numerator in {s:?}")))?;
    let d: BigInt = d
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational denominator in {s:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Renders as `p/q`, or `p` when the denominator is one.
pub fn fmt_q(x: &Rational) -> String {
    x.to_string()
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod serde_q {
    use super::{fmt_q, parse_q, Rational};
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Str(String),
            Int(i64),
        }
        match Raw::deserialize(d)? {
            Raw::Str(s) => parse_q(&s).map_err(de::Error::custom),
            Raw::Int(n) => Ok(super::qi(n)),
        }
    }
}

/// Same as [`serde_q`] for lists.
pub mod serde_q_vec {
    use super::{fmt_q, parse_q, Rational};
    use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        xs.iter().map(fmt_q).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Str(String),
            Int(i64),
        }
        Vec::<Raw>::deserialize(d)?
            .into_iter()
            .map(|r| match r {
                Raw::Str(s) => parse_q(&s).map_err(de::Error::custom),
                Raw::Int(n) => Ok(super::qi(n)),
            })
            .collect()
    }
}

/// Standard coefficient `(b-1)/b` with `b` a positive integer or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StandardCoeff {
    Finite(u64),
    Infinity,
}

impl StandardCoeff {
    pub fn new(b: u64) -> Result<Self> {
        if b == 0 {
            return invalid("standard coefficient needs b >= 1");
        }
        Ok(StandardCoeff::Finite(b))
    }

    pub fn value(&self) -> Rational {
        match *self {
            StandardCoeff::Finite(b) => q(b as i64 - 1, b as i64),
            StandardCoeff::Infinity => Rational::one(),
        }
    }

    /// Inverse of [`value`](Self::value); `None` when `c` is not standard.
    pub fn from_value(c: &Rational) -> Option<Self> {
        if c.is_negative() || c > &Rational::one() {
            return None;
        }
        if c.is_one() {
            return Some(StandardCoeff::Infinity);
        }
        let b = (Rational::one() - c).recip();
        if b.is_integer() {
            b.to_integer().to_u64().map(StandardCoeff::Finite)
        } else {
            None
        }
    }

    /// `(2b-1)/(2b)`, the coefficient of the double exceptional curve in the
    /// (I-3) fibre; infinity maps to 1.
    pub fn half_shift(&self) -> Rational {
        match *self {
            StandardCoeff::Finite(b) => q(2 * b as i64 - 1, 2 * b as i64),
            StandardCoeff::Infinity => Rational::one(),
        }
    }

    /// `(b-1)/(2b)`; infinity maps to 1/2.
    pub fn half(&self) -> Rational {
        match *self {
            StandardCoeff::Finite(b) => q(b as i64 - 1, 2 * b as i64),
            StandardCoeff::Infinity => q(1, 2),
        }
    }
}

impl fmt::Display for StandardCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StandardCoeff::Finite(b) => write!(f, "{b}"),
            StandardCoeff::Infinity => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for StandardCoeff {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(StandardCoeff::Infinity),
            t => {
                let b: u64 = t
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad b parameter {t:?}")))?;
                StandardCoeff::new(b)
            }
        }
    }
}

/// Germ of a boundary curve through a cyclic quotient point: the order `n`
/// and the number `k_b` of other boundary branches with coefficient `(b-1)/b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermBoundaryData {
    n: u64,
    k: BTreeMap<u64, u64>,
}

impl GermBoundaryData {
    pub fn new(n: u64, k: impl IntoIterator<Item = (u64, u64)>) -> Result<Self> {
        if n == 0 {
            return invalid("germ order n must be >= 1");
        }
        let mut map = BTreeMap::new();
        for (b, kb) in k {
            if b < 2 {
                return invalid(format!("k_b is indexed by b >= 2, got b = {b}"));
            }
            if kb > 0 {
                *map.entry(b).or_insert(0) += kb;
            }
        }
        Ok(GermBoundaryData { n, k: map })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn k(&self) -> &BTreeMap<u64, u64> {
        &self.k
    }

    pub fn branch_count(&self) -> u64 {
        self.k.values().sum()
    }

    /// True when the sum of k_b is at most 2.
    pub fn in_lc_regime(&self) -> bool {
        self.branch_count() <= 2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MpCase {
    Case1,
    Case2,
    Case3,
    NotLc,
}

impl fmt::Display for MpCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MpCase::Case1 => "CASE1",
            MpCase::Case2 => "CASE2",
            MpCase::Case3 => "CASE3",
            MpCase::NotLc => "NOT_LC",
        })
    }
}

/// Different multiplicity `m_p = (n-1)/n + sum_b ((b-1)/b) k_b / n` and its case.
///
/// Values above 1 are labelled `NotLc`. Every input with value at most 1 falls
/// in one of the three cases, since two branches other than `k_2 = 2` already
/// push the sum past 1.
pub fn m_p(data: &GermBoundaryData) -> (Rational, MpCase) {
    let n = data.n as i64;
    let mut value = q(n - 1, n);
    for (&b, &kb) in &data.k {
        value += q(b as i64 - 1, b as i64) * q(kb as i64, n);
    }
    let label = if value > Rational::one() {
        MpCase::NotLc
    } else if data.k.is_empty() {
        MpCase::Case1
    } else if data.branch_count() == 1 {
        MpCase::Case2
    } else if data.k.get(&2) == Some(&2) && data.k.len() == 1 {
        MpCase::Case3
    } else {
        MpCase::NotLc
    };
    (value, label)
}

/// Coefficient of the exceptional curve extracted over `p`.
///
/// Cases 1 and 2 return `m_p`; case 3 returns `1 - strict_local_intersection`,
/// which has to be 0, 1/2 or 1.
pub fn s_extraction_coeff(
    data: &GermBoundaryData,
    strict_local_intersection: &Rational,
) -> Result<Rational> {
    let (value, case) = m_p(data);
    match case {
        MpCase::Case1 | MpCase::Case2 => Ok(value),
        MpCase::Case3 => {
            let two = qi(2);
            if !(strict_local_intersection * &two).is_integer() {
                return invalid("case 3 intersection must be a half-integer");
            }
            let m = Rational::one() - strict_local_intersection;
            if m == Rational::zero() || m == q(1, 2) || m.is_one() {
                Ok(m)
            } else {
                Err(Error::Inconsistent(format!(
                    "case 3 extraction coefficient {m} is not 0, 1/2 or 1"
                )))
            }
        }
        MpCase::NotLc => Err(Error::Inconsistent("germ is not log canonical".to_string())),
    }
}

fn desc_key(a: &Rational, b: &Rational) -> std::cmp::Ordering {
    b.cmp(a).then_with(|| a.denom().cmp(b.denom()))
}

/// All multisets from `allowed` of length at most `max_len` summing to `target`.
///
/// Each multiset is sorted descending (ties by denominator); the list is
/// ordered by length, then lexicographically on that descending sequence.
pub fn enumerate_boundary_multisets(
    allowed: &[Rational],
    target: &Rational,
    max_len: usize,
) -> Result<Vec<Vec<Rational>>> {
    if allowed.iter().any(|a| !a.is_positive()) {
        return invalid("allowed values must be positive");
    }
    let mut vals: Vec<Rational> = allowed.to_vec();
    vals.sort_by(desc_key);
    vals.dedup();

    fn go(
        vals: &[Rational],
        start: usize,
        remaining: &Rational,
        left: usize,
        cur: &mut Vec<Rational>,
        out: &mut Vec<Vec<Rational>>,
    ) {
        if remaining.is_zero() {
            out.push(cur.clone());
            return;
        }
        if left == 0 {
            return;
        }
        for i in start..vals.len() {
            let v = &vals[i];
            if v > remaining {
                continue;
            }
            // the largest remaining value times the slots left must still reach the target
            if v * qi(left as i64) < *remaining {
                break;
            }
            cur.push(v.clone());
            go(vals, i, &(remaining - v), left - 1, cur, out);
            cur.pop();
        }
    }

    let mut out = Vec::new();
    if target.is_negative() {
        return Ok(out);
    }
    go(&vals, 0, target, max_len, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| {
        a.len().cmp(&b.len()).then_with(|| {
            for (x, y) in a.iter().zip(b) {
                let c = desc_key(x, y);
                if c != std::cmp::Ordering::Equal {
                    return c;
                }
            }
            std::cmp::Ordering::Equal
        })
    });
    Ok(out)
}

/// Least common multiple of the reduced denominators (1 for the empty list).
pub fn index_lcm(coeffs: &[Rational]) -> BigUint {
    coeffs.iter().fold(BigUint::one(), |acc, c| {
        let d = c.denom().magnitude().clone();
        acc.lcm(&d)
    })
}

/// Euler number of a double cover of the projective line with `branch_count`
/// simple branch points: `4 - branch_count`.
pub fn hurwitz_double_cover_euler(branch_count: u64) -> Result<i64> {
    if branch_count % 2 == 1 {
        return Err(Error::Inconsistent(format!(
            "a double cover cannot have {branch_count} branch points"
        )));
    }
    Ok(4 - branch_count as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn germ(n: u64, k: &[(u64, u64)]) -> GermBoundaryData {
        GermBoundaryData::new(n, k.iter().copied()).unwrap()
    }

    #[test]
    fn parse_and_render() {
        assert_eq!(parse_q("6/8").unwrap(), q(3, 4));
        assert_eq!(parse_q("-3").unwrap(), qi(-3));
        assert_eq!(fmt_q(&q(-2, 8)), "-1/4");
        assert_eq!(fmt_q(&q(4, 2)), "2");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn standard_coeff_roundtrip() {
        for b in 1..20 {
            let c = StandardCoeff::new(b).unwrap();
            assert_eq!(StandardCoeff::from_value(&c.value()), Some(c));
        }
        assert_eq!(StandardCoeff::Infinity.value(), qi(1));
        assert_eq!(StandardCoeff::from_value(&q(2, 5)), None);
        assert!(StandardCoeff::new(0).is_err());
    }

    #[test]
    fn m_p_examples() {
        assert_eq!(m_p(&germ(1, &[])), (qi(0), MpCase::Case1));
        assert_eq!(m_p(&germ(1, &[(2, 1)])), (q(1, 2), MpCase::Case2));
        assert_eq!(m_p(&germ(2, &[(2, 2)])), (qi(1), MpCase::Case3));
        assert_eq!(m_p(&germ(3, &[(3, 1)])).0, q(8, 9));
        assert_eq!(m_p(&germ(1, &[(2, 1), (3, 1)])).1, MpCase::NotLc);
        assert_eq!(m_p(&germ(1, &[(2, 3)])).1, MpCase::NotLc);
    }

    #[test]
    fn extraction_examples() {
        let z = qi(0);
        assert_eq!(
            s_extraction_coeff(&germ(1, &[(3, 1)]), &z).unwrap(),
            q(2, 3)
        );
        let c3 = germ(2, &[(2, 2)]);
        assert_eq!(s_extraction_coeff(&c3, &q(1, 2)).unwrap(), q(1, 2));
        assert_eq!(s_extraction_coeff(&c3, &qi(1)).unwrap(), qi(0));
        assert!(s_extraction_coeff(&c3, &qi(3)).is_err());
        assert!(s_extraction_coeff(&c3, &q(1, 3)).is_err());
    }

    #[test]
    fn multisets_examples() {
        let allowed = [q(1, 2), q(2, 3), q(3, 4), q(5, 6)];
        let got = enumerate_boundary_multisets(&allowed, &qi(2), 4).unwrap();
        let want = vec![
            vec![q(5, 6), q(2, 3), q(1, 2)],
            vec![q(3, 4), q(3, 4), q(1, 2)],
            vec![q(2, 3), q(2, 3), q(2, 3)],
            vec![q(1, 2), q(1, 2), q(1, 2), q(1, 2)],
        ];
        assert_eq!(got, want);
        assert_eq!(
            enumerate_boundary_multisets(&[q(1, 2)], &qi(1), 4).unwrap(),
            vec![vec![q(1, 2), q(1, 2)]]
        );
        assert!(enumerate_boundary_multisets(&[q(2, 3)], &qi(1), 4)
            .unwrap()
            .is_empty());
        assert!(enumerate_boundary_multisets(&[qi(0)], &qi(1), 4).is_err());
    }

    #[test]
    fn lcm_and_hurwitz() {
        assert_eq!(index_lcm(&[q(1, 2), q(3, 4), q(3, 4)]), BigUint::from(4u32));
        assert_eq!(index_lcm(&[q(1, 2), q(2, 3), q(5, 6)]), BigUint::from(6u32));
        assert_eq!(index_lcm(&[]), BigUint::from(1u32));
        assert_eq!(hurwitz_double_cover_euler(4).unwrap(), 0);
        assert_eq!(hurwitz_double_cover_euler(2).unwrap(), 2);
        assert_eq!(hurwitz_double_cover_euler(0).unwrap(), 4);
        assert!(hurwitz_double_cover_euler(3).is_err());
    }
}
