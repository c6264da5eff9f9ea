//! Canonical bundle formula invariants of degenerate fibres, the
//! totient lcm `N(x)`, symplectic group orders and the singular fibre bound.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::base::{fmt_q, parse_q, q, qi, Rational};
use crate::dualgraph::KodairaLabel;
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibreInvariants {
    pub ell: u64,
    pub mu: Rational,
    pub b: u64,
    pub s: Rational,
}

impl FibreInvariants {
    /// Builds the record with `s` derived from the other fields.
    pub fn new(ell: u64, mu: Rational, b: u64) -> Result<Self> {
        let s = s_star(b, ell, &mu)?;
        Ok(FibreInvariants { ell, mu, b, s })
    }
}

/// `b((ell-1)/ell - mu)`.
pub fn s_star(b: u64, ell: u64, mu: &Rational) -> Result<Rational> {
    if b == 0 || ell == 0 {
        return invalid("b and ell must be positive");
    }
    if mu.is_negative() {
        return invalid("mu must be non-negative");
    }
    Ok(qi(b as i64) * (q(ell as i64 - 1, ell as i64) - mu))
}

/// `(ell*, mu*, s*)` of an elliptic fibre; `m` is the multiplicity of a
/// multiple fibre `mI_b` and is ignored otherwise.
pub fn elliptic_table(kodaira: KodairaLabel, m: u64) -> Result<FibreInvariants> {
    let (ell, mu) = match kodaira {
        KodairaLabel::Smooth | KodairaLabel::I(_) => {
            if m == 0 {
                return invalid("multiplicity must be positive");
            }
            (m, qi(0))
        }
        KodairaLabel::IStar(_) => (2, qi(0)),
        KodairaLabel::II => (6, q(2, 3)),
        KodairaLabel::IIStar => (6, qi(0)),
        KodairaLabel::III => (4, q(1, 2)),
        KodairaLabel::IIIStar => (4, qi(0)),
        KodairaLabel::IV => (3, q(1, 3)),
        KodairaLabel::IVStar => (3, qi(0)),
    };
    FibreInvariants::new(ell, mu, 1)
}

/// One literal entry of the elliptic fibre table; `None` for `ell` marks
/// the parametric multiple fibre column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableVEntry {
    pub fibre: String,
    pub ell: Option<u64>,
    pub mu: Rational,
    pub s: String,
}

const TABLE_V: &str = include_str!("../data/table_v.tsv");

pub fn table_v_literal() -> Result<Vec<TableVEntry>> {
    let mut out = Vec::new();
    for line in TABLE_V
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
    {
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != 4 {
            return Err(Error::Parse(format!("bad table line {line:?}")));
        }
        let ell = if f[1] == "m" {
            None
        } else {
            Some(f[1].parse().map_err(|_| Error::Parse(line.to_string()))?)
        };
        out.push(TableVEntry {
            fibre: f[0].to_string(),
            ell,
            mu: parse_q(f[2])?,
            s: f[3].to_string(),
        });
    }
    Ok(out)
}

/// Column of the elliptic fibre table recomputed at multiplicity `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegeneratedTableV {
    pub fibre: String,
    pub inv: FibreInvariants,
    pub matches: bool,
}

/// Recomputes every column, substituting `m` in the multiple fibre column.
pub fn regenerate_table_v(m: u64) -> Result<Vec<RegeneratedTableV>> {
    let mut out = Vec::new();
    for e in table_v_literal()? {
        let inv = elliptic_table(table_v_label(&e.fibre)?, m)?;
        let (ell, s) = match e.ell {
            Some(ell) => (ell, parse_q(&e.s)?),
            None => (m, q(m as i64 - 1, m as i64)),
        };
        let matches = inv.ell == ell && inv.mu == e.mu && inv.s == s;
        let fibre = match e.ell {
            Some(_) => e.fibre,
            None => e.fibre.replacen('m', &m.to_string(), 1),
        };
        out.push(RegeneratedTableV {
            fibre,
            inv,
            matches,
        });
    }
    Ok(out)
}

/// Kodaira label for a column name of the elliptic fibre table.
pub fn table_v_label(fibre: &str) -> Result<KodairaLabel> {
    match fibre {
        "mI_b" => Ok(KodairaLabel::I(1)),
        "I*_b" => Ok(KodairaLabel::IStar(0)),
        other => other.parse(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum VKind {
    V1,
    V2,
}

impl fmt::Display for VKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VKind::V1 => "V1",
            VKind::V2 => "V2",
        })
    }
}

impl FromStr for VKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "V1" => Ok(VKind::V1),
            "V2" => Ok(VKind::V2),
            _ => Err(Error::Parse(format!("unknown kind {s:?}"))),
        }
    }
}

/// Quotient datum `V_i(r; a0, a1, a2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimitiveVector {
    kind: VKind,
    r: u64,
    a: [u64; 3],
}

impl PrimitiveVector {
    pub fn new(kind: VKind, r: u64, a: [u64; 3]) -> Result<Self> {
        if r == 0 {
            return invalid("r must be positive");
        }
        if a.iter().any(|&x| x >= r) {
            return invalid("weights must lie in [0, r)");
        }
        if kind == VKind::V1 && r.gcd(&a[2]) != 1 {
            return invalid(format!("gcd({r}, {}) != 1", a[2]));
        }
        if a.iter().sum::<u64>() >= r {
            return invalid("weights must sum to less than r");
        }
        Ok(PrimitiveVector { kind, r, a })
    }

    pub fn kind(&self) -> VKind {
        self.kind
    }
    pub fn r(&self) -> u64 {
        self.r
    }
    pub fn a(&self) -> [u64; 3] {
        self.a
    }

    /// The weight (V1) or weight sum (V2) in the denominator of `mu*`.
    fn denominator_weight(&self) -> u64 {
        match self.kind {
            VKind::V1 => self.a[2],
            VKind::V2 => self.a[0] + self.a[1],
        }
    }

    /// `c* = ell* mu*`, independent of `ell*`.
    pub fn c_star(&self) -> Result<Rational> {
        let w = self.denominator_weight();
        if w == 0 {
            return invalid("zero denominator in mu*");
        }
        let s: u64 = self.a.iter().sum();
        Ok(q((self.r - s) as i64, w as i64))
    }

    /// Least `d` with `d | ell*` forced by integrality: `r / gcd(r, w)`.
    pub fn divisibility(&self) -> u64 {
        self.r / self.r.gcd(&self.denominator_weight())
    }
}

impl fmt::Display for PrimitiveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}(1/{})({},{},{})",
            self.kind, self.r, self.a[0], self.a[1], self.a[2]
        )
    }
}

/// `mu*` at multiplicity `ell`.
pub fn mu_star(v: &PrimitiveVector, ell: u64) -> Result<Rational> {
    if ell == 0 {
        return invalid("ell must be positive");
    }
    Ok(v.c_star()? / qi(ell as i64))
}

/// Literal row of the V1/V2 tables: `mu = mu_num/(mu_coef l)`,
/// `s = (mu_coef l - s_sub)/(mu_coef l)`, and `divisor | l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableViViiRow {
    pub row: u32,
    pub vector: PrimitiveVector,
    pub mu_num: i64,
    pub mu_coef: i64,
    pub s_sub: i64,
    pub divisor: u64,
}

impl TableViViiRow {
    pub fn mu_formula(&self, ell: u64) -> Rational {
        q(self.mu_num, self.mu_coef * ell as i64)
    }

    pub fn s_formula(&self, ell: u64) -> Rational {
        let den = self.mu_coef * ell as i64;
        q(den - self.s_sub, den)
    }
}

const TABLE_VI_VII: &str = include_str!("../data/table_vi_vii.tsv");

pub fn table_vi_vii_literal() -> Result<Vec<TableViViiRow>> {
    let mut out = Vec::new();
    for line in TABLE_VI_VII
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
    {
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != 10 {
            return Err(Error::Parse(format!("bad table line {line:?}")));
        }
        let n = |i: usize| -> Result<i64> {
            f[i].parse()
                .map_err(|_| Error::Parse(format!("bad number {:?}", f[i])))
        };
        let vector = PrimitiveVector::new(
            f[1].parse()?,
            n(2)? as u64,
            [n(3)? as u64, n(4)? as u64, n(5)? as u64],
        )?;
        out.push(TableViViiRow {
            row: n(0)? as u32,
            vector,
            mu_num: n(6)?,
            mu_coef: n(7)?,
            s_sub: n(8)?,
            divisor: n(9)? as u64,
        });
    }
    Ok(out)
}

/// Row recomputed from its vector at the sample multiplicities `r` and `2r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegeneratedRow {
    pub row: u32,
    pub kind: VKind,
    pub vector: String,
    #[serde(serialize_with = "ser_q")]
    pub c_star: Rational,
    #[serde(serialize_with = "ser_qs")]
    pub mu: Vec<Rational>,
    #[serde(serialize_with = "ser_qs")]
    pub s: Vec<Rational>,
    pub divisor: u64,
    pub matches: bool,
}

fn ser_q<S: serde::Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(x))
}

fn ser_qs<S: serde::Serializer>(xs: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(fmt_q))
}

/// Recomputes every V1/V2 row and compares it with the tabulated formulas.
pub fn regenerate_table_vi_vii() -> Result<Vec<RegeneratedRow>> {
    let mut out = Vec::new();
    for row in table_vi_vii_literal()? {
        let v = row.vector;
        let ells = [v.r(), 2 * v.r()];
        let mut mu = Vec::new();
        let mut s = Vec::new();
        let mut matches = v.divisibility() == row.divisor;
        for &l in &ells {
            let m = mu_star(&v, l)?;
            let sv = s_star(1, l, &m)?;
            matches &= m == row.mu_formula(l) && sv == row.s_formula(l);
            mu.push(m);
            s.push(sv);
        }
        out.push(RegeneratedRow {
            row: row.row,
            kind: v.kind(),
            vector: v.to_string(),
            c_star: v.c_star()?,
            mu,
            s,
            divisor: v.divisibility(),
            matches,
        });
    }
    Ok(out)
}

/// The thirteen possible values of `c*`.
pub fn c_star_values() -> Vec<Rational> {
    [
        (1, 5),
        (1, 4),
        (1, 3),
        (2, 5),
        (1, 2),
        (2, 3),
        (1, 1),
        (3, 2),
        (2, 1),
        (3, 1),
        (4, 1),
        (5, 1),
        (6, 1),
    ]
    .iter()
    .map(|&(a, b)| q(a, b))
    .collect()
}

fn totients(n: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    for p in 2..=n {
        if phi[p] == p as u64 {
            for k in (p..=n).step_by(p) {
                phi[k] -= phi[k] / p as u64;
            }
        }
    }
    phi
}

/// `N(x) = lcm{n : phi(n) <= x}`.
pub fn n_of_x(x: u64) -> Result<BigUint> {
    if x == 0 {
        return invalid("x must be positive");
    }
    // phi(n) >= sqrt(n/2), so n <= 2x^2 covers every candidate
    let bound = (2 * x * x + 4) as usize;
    let phi = totients(bound);
    if ((2 * x * x) as usize + 1..=bound).any(|n| phi[n] <= x) {
        return Err(Error::Inconsistent(format!(
            "totient search bound {bound} too small for x = {x}"
        )));
    }
    let mut l = BigUint::one();
    for n in 1..=bound {
        if phi[n] <= x {
            l = l.lcm(&BigUint::from(n));
        }
    }
    Ok(l)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// `|Sp(2g, F_q)| = q^{g^2} prod_{i=1..g} (q^{2i} - 1)`.
pub fn sp_order(g: u32, q: u64) -> Result<BigInt> {
    if !is_prime(q) {
        return invalid(format!("{q} is not prime"));
    }
    let qb = BigInt::from(q);
    let mut out = num_traits::pow(qb.clone(), (g * g) as usize);
    for i in 1..=g {
        out *= num_traits::pow(qb.clone(), 2 * i as usize) - 1;
    }
    Ok(out)
}

/// `16 d n_va |Sp(32, F_3)|`; `n_va` is the very ampleness multiple, which
/// has to be supplied.
pub fn fibre_bound(d: u64, n_va: u64) -> Result<BigInt> {
    if d == 0 || n_va == 0 {
        return invalid("d and n_va must be positive");
    }
    Ok(BigInt::from(16u64) * d * n_va * sp_order(16, 3)?)
}

/// Smallest `u >= 1` with an integer `v`, `0 < v <= bN`, such that
/// `s = (bNu - v)/(Nu)`; `None` when no `u <= bN den(s)` works.
pub fn mori_feasible(s: &Rational, b: u64, n: u64) -> Result<Option<(u64, u64)>> {
    if b == 0 || n == 0 {
        return invalid("b and N must be positive");
    }
    if s.is_negative() || *s >= qi(b as i64) {
        return invalid("s must lie in [0, b)");
    }
    let limit = b * n * s.denom().to_u64().unwrap_or(u64::MAX);
    let bn = b * n;
    for u in 1..=limit {
        // v = N u (b - s)
        let v = qi((n * u) as i64) * (qi(b as i64) - s);
        if v.is_integer() {
            let v = v.to_integer();
            if v.is_positive() && v <= BigInt::from(bn) {
                return Ok(Some((u, v.to_u64().expect("fits"))));
            }
        }
    }
    Ok(None)
}

/// Consistency of a record: `s` matches its formula, `s >= 0`, and `s = 0`
/// exactly when `ell = 1`.
pub fn validate_fibre_invariants(inv: &FibreInvariants) -> bool {
    match s_star(inv.b, inv.ell, &inv.mu) {
        Ok(s) => s == inv.s && !s.is_negative() && (s.is_zero() == (inv.ell == 1)),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn table_v_regenerates() {
        for m in [1, 2, 3, 5] {
            let rows = regenerate_table_v(m).unwrap();
            assert_eq!(rows.len(), 8);
            assert!(rows.iter().all(|r| r.matches), "m = {m}");
            assert_eq!(rows[0].fibre, format!("{m}I_b"));
            assert_eq!(rows[0].inv.s, q(m as i64 - 1, m as i64));
        }
    }

    #[test]
    fn s_star_examples() {
        assert_eq!(s_star(1, 1, &qi(0)).unwrap(), qi(0));
        assert_eq!(s_star(1, 6, &q(2, 3)).unwrap(), q(1, 6));
        for m in 1..8 {
            assert_eq!(s_star(1, m, &qi(0)).unwrap(), q(m as i64 - 1, m as i64));
        }
        assert!(s_star(1, 2, &q(-1, 2)).is_err());
    }

    #[test]
    fn elliptic_examples() {
        let t = elliptic_table(KodairaLabel::IIStar, 1).unwrap();
        assert_eq!((t.ell, t.mu, t.s), (6, qi(0), q(5, 6)));
        let t = elliptic_table(KodairaLabel::III, 1).unwrap();
        assert_eq!((t.ell, t.mu, t.s), (4, q(1, 2), q(1, 4)));
        let t = elliptic_table(KodairaLabel::I(4), 3).unwrap();
        assert_eq!((t.ell, t.mu, t.s), (3, qi(0), q(2, 3)));
    }

    #[test]
    fn mu_examples() {
        let v = PrimitiveVector::new(VKind::V1, 8, [3, 1, 3]).unwrap();
        let w = PrimitiveVector::new(VKind::V2, 4, [1, 1, 1]).unwrap();
        let x = PrimitiveVector::new(VKind::V1, 3, [1, 0, 1]).unwrap();
        for l in 1..10 {
            assert_eq!(mu_star(&v, l).unwrap(), q(1, 3 * l as i64));
            assert_eq!(mu_star(&w, l).unwrap(), q(1, 2 * l as i64));
            assert_eq!(mu_star(&x, l).unwrap(), q(1, l as i64));
        }
        assert!(PrimitiveVector::new(VKind::V1, 4, [1, 1, 2]).is_err());
        assert!(PrimitiveVector::new(VKind::V1, 4, [2, 1, 1]).is_err());
        let z = PrimitiveVector::new(VKind::V2, 4, [0, 0, 1]).unwrap();
        assert!(mu_star(&z, 1).is_err());
    }

    #[test]
    fn table_rows() {
        let rows = table_vi_vii_literal().unwrap();
        assert_eq!(rows.len(), 27);
        let r20 = &rows[19];
        assert_eq!(r20.vector.to_string(), "V1(1/12)(3,2,5)");
        assert_eq!(mu_star(&r20.vector, 7).unwrap(), q(2, 35));
        assert_eq!(r20.s_formula(7), q(28, 35));
        let r26 = &rows[25];
        assert_eq!(mu_star(&r26.vector, 5).unwrap(), q(2, 15));
        let regen = regenerate_table_vi_vii().unwrap();
        assert!(regen.iter().all(|r| r.matches));
        assert_eq!(regen[0].mu[0], q(1, 3));
        assert_eq!(regen[0].s[0], q(1, 3));
        let cs = c_star_values();
        assert!(regen.iter().all(|r| cs.contains(&r.c_star)));
    }

    #[test]
    fn n_of_x_examples() {
        assert_eq!(n_of_x(1).unwrap(), BigUint::from(2u32));
        assert_eq!(n_of_x(2).unwrap(), BigUint::from(12u32));
        let n21 = n_of_x(21).unwrap();
        for d in [2u32, 3, 4, 6, 8, 12] {
            assert!((&n21 % d).is_zero());
        }
    }

    fn sp_brute(g: usize, q: u64) -> u64 {
        let n = 2 * g;
        let mut j = vec![vec![0i64; n]; n];
        for i in 0..g {
            j[i][g + i] = 1;
            j[g + i][i] = -1;
        }
        let qi = q as i64;
        let total = q.pow((n * n) as u32);
        let mut count = 0;
        let mut m = vec![vec![0i64; n]; n];
        for code in 0..total {
            let mut c = code;
            for row in m.iter_mut() {
                for x in row.iter_mut() {
                    *x = (c % q) as i64;
                    c /= q;
                }
            }
            // M^T J M == J
            let ok = (0..n).all(|a| {
                (0..n).all(|b| {
                    let mut s = 0i64;
                    for k in 0..n {
                        for l in 0..n {
                            s += m[k][a] * j[k][l] * m[l][b];
                        }
                    }
                    (s - j[a][b]).rem_euclid(qi) == 0
                })
            });
            if ok {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn sp_order_matches_brute_force() {
        for (g, p) in [(1u32, 2u64), (1, 3), (1, 5), (2, 2)] {
            assert_eq!(
                sp_order(g, p).unwrap(),
                BigInt::from(sp_brute(g as usize, p)),
                "({g},{p})"
            );
        }
        assert_eq!(sp_order(1, 2).unwrap(), BigInt::from(6));
        assert_eq!(sp_order(1, 3).unwrap(), BigInt::from(24));
        assert_eq!(sp_order(2, 2).unwrap(), BigInt::from(720));
        assert!(sp_order(1, 4).is_err());
    }

    #[test]
    fn fibre_bound_examples() {
        let one = fibre_bound(1, 1).unwrap();
        let mut want = BigInt::from(16) * num_traits::pow(BigInt::from(3), 256);
        for i in 1..=16 {
            want *= num_traits::pow(BigInt::from(3), 2 * i) - 1;
        }
        assert_eq!(one, want);
        assert_eq!(fibre_bound(2, 1).unwrap(), &one * 2);
        assert_eq!(fibre_bound(1, 5).unwrap(), &one * 5);
        assert!(fibre_bound(0, 1).is_err());
    }

    #[test]
    fn mori_examples() {
        assert_eq!(mori_feasible(&q(1, 2), 1, 12).unwrap(), Some((1, 6)));
        assert_eq!(mori_feasible(&q(4, 5), 1, 12).unwrap(), Some((5, 12)));
        assert_eq!(mori_feasible(&qi(0), 1, 12).unwrap(), Some((1, 12)));
        assert!(mori_feasible(&qi(1), 1, 12).is_err());
    }

    #[test]
    fn validate_examples() {
        let ok = FibreInvariants {
            ell: 1,
            mu: qi(0),
            b: 1,
            s: qi(0),
        };
        assert!(validate_fibre_invariants(&ok));
        let bad = FibreInvariants {
            ell: 2,
            mu: q(1, 2),
            b: 1,
            s: qi(0),
        };
        assert!(!validate_fibre_invariants(&bad));
        let ii = FibreInvariants {
            ell: 6,
            mu: q(2, 3),
            b: 1,
            s: q(1, 6),
        };
        assert!(validate_fibre_invariants(&ii));
    }

    proptest! {
        #[test]
        fn n_of_x_divisibility_chain(y in 1u64..15, dx in 0u64..10) {
            let small = n_of_x(y).unwrap();
            let big = n_of_x(y + dx).unwrap();
            prop_assert!(big >= small);
            prop_assert!((big % small).is_zero());
        }

        #[test]
        fn mori_v_in_range(num in 0i64..40, den in 1i64..13, b in 1u64..4, n in 1u64..25) {
            let s = q(num, den);
            prop_assume!(s < qi(b as i64));
            if let Some((u, v)) = mori_feasible(&s, b, n).unwrap() {
                prop_assert!(v > 0 && v <= b * n);
                prop_assert_eq!(q((b * n * u) as i64 - v as i64, (n * u) as i64), s);
            }
        }

        #[test]
        fn elliptic_records_validate(m in 1u64..20, b in 0u32..6) {
            let inv = elliptic_table(KodairaLabel::I(b.max(1)), m).unwrap();
            prop_assert!(validate_fibre_invariants(&inv));
        }
    }
}
