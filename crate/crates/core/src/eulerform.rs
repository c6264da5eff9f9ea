//! Orbifold Euler numbers, Riemann-Roch corrections for cyclic quotient
//! points, the chi formula for divisors with normal crossing support and the
//! Euler number of a degenerate fibre.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::Zero;

use crate::base::{q, qi, Rational};
use crate::error::{invalid, Error, Result};

/// `e_top - sum(1 - 1/o)`.
pub fn orbifold_euler(e_top: i64, orders: &[u64]) -> Result<Rational> {
    let mut e = qi(e_top);
    for &o in orders {
        if o == 0 {
            return invalid("orders must be positive");
        }
        e -= qi(1) - q(1, o as i64);
    }
    Ok(e)
}

/// Correction term `-a'(r-a')/(2r)` with `a' = a*l mod r`.
pub fn rr_correction_cyclic(r: u64, a: i64, l: i64) -> Result<Rational> {
    if r == 0 {
        return invalid("r must be positive");
    }
    let r = r as i64;
    if a.gcd(&r) != 1 {
        return invalid(format!("gcd({a}, {r}) != 1"));
    }
    let ab = (a as i128 * l as i128).rem_euclid(r as i128) as i64;
    Ok(q(-ab * (r - ab), 2 * r))
}

/// Brute-force sum of the corrections for `l = 1..m-1`.
pub fn rr_correction_sum(r: u64, a: i64, m: u64) -> Result<Rational> {
    if r == 0 || m == 0 {
        return invalid("r and m must be positive");
    }
    if !m.is_multiple_of(r) {
        return invalid(format!("{r} does not divide {m}"));
    }
    let mut s = Rational::zero();
    for l in 1..m as i64 {
        s += rr_correction_cyclic(r, a, l)?;
    }
    Ok(s)
}

/// Closed form `-m(r^2-1)/(12r)` of [`rr_correction_sum`].
pub fn rr_correction_closed_form(r: u64, m: u64) -> Rational {
    let (r, m) = (r as i64, m as i64);
    q(-m * (r * r - 1), 12 * r)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiComponent {
    pub m: u64,
    pub chi: Rational,
    pub d_cubed: Rational,
    pub d_sq_k: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiInput {
    pub components: Vec<ChiComponent>,
    pub total_d_cubed: Rational,
    pub total_d_sq_k: Rational,
    /// Per component multiplicity, the `c_p` values at its singular points.
    pub corrections: Vec<(u64, Vec<Rational>)>,
}

/// `chi(O_D)` for `D = sum m_i D_i`; with `generalized` the quotient-point
/// corrections `-(1/12) sum m_i sum c_p` are added.
pub fn chi_structure_sheaf(input: &ChiInput, generalized: bool) -> Result<Rational> {
    if input.components.is_empty() {
        return invalid("at least one component is required");
    }
    let mut chi = Rational::zero();
    let mut cubes = input.total_d_cubed.clone();
    let mut sq_k = input.total_d_sq_k.clone();
    for c in &input.components {
        let m = qi(c.m as i64);
        chi += &m * &c.chi;
        cubes -= &m * &c.d_cubed;
        sq_k -= &m * &c.d_sq_k;
    }
    chi += cubes * q(1, 6) + sq_k * q(1, 4);
    if generalized {
        for (m, cps) in &input.corrections {
            let s: Rational = cps.iter().sum();
            chi -= qi(*m as i64) * s * q(1, 12);
        }
    }
    Ok(chi)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibreComponentData {
    pub m: u64,
    pub e_orb: Rational,
    pub deltas: Vec<Rational>,
}

impl FibreComponentData {
    pub fn new(m: u64, e_orb: Rational, deltas: Vec<Rational>) -> Result<Self> {
        if m == 0 {
            return invalid("multiplicity must be positive");
        }
        if deltas.iter().any(|d| d < &Rational::zero()) {
            return invalid("delta values must be non-negative");
        }
        Ok(FibreComponentData { m, e_orb, deltas })
    }
}

/// `sum m_i (e_orb_i + sum delta_p)`.
pub fn euler_degenerate_fibre(components: &[FibreComponentData]) -> Rational {
    components
        .iter()
        .map(|c| {
            let d: Rational = c.deltas.iter().sum();
            qi(c.m as i64) * (&c.e_orb + d)
        })
        .sum()
}

/// Noether: `12 chi - K^2 - sum(e_p - 1)`.
pub fn noether_e_top(chi: &Rational, k_sq: &Rational, e_p: &[i64]) -> Rational {
    let s: i64 = e_p.iter().map(|e| e - 1).sum();
    qi(12) * chi - k_sq - qi(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Type3Sing {
    FourA1,
    ThreeA2,
    A1TwoA3,
    A1A2A5,
}

impl Type3Sing {
    fn offset(&self) -> i64 {
        match self {
            Type3Sing::FourA1 => 8,
            Type3Sing::ThreeA2 => 6,
            Type3Sing::A1TwoA3 => 5,
            Type3Sing::A1A2A5 => 4,
        }
    }
}

impl fmt::Display for Type3Sing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Type3Sing::FourA1 => "4A1",
            Type3Sing::ThreeA2 => "3A2",
            Type3Sing::A1TwoA3 => "A1+2A3",
            Type3Sing::A1A2A5 => "A1+A2+A5",
        })
    }
}

impl FromStr for Type3Sing {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '_')
            .collect();
        Ok(match t.as_str() {
            "4A1" => Type3Sing::FourA1,
            "3A2" => Type3Sing::ThreeA2,
            "A1+2A3" | "2A3+A1" => Type3Sing::A1TwoA3,
            "A1+A2+A5" | "A5+A2+A1" => Type3Sing::A1A2A5,
            _ => return Err(Error::Parse(format!("unknown singularity set {s:?}"))),
        })
    }
}

/// `d = -2 rho - s + c` with `c` fixed by the singularity set.
pub fn type3_numerology(sing: Type3Sing, rho: u32, s: u32) -> Result<i64> {
    if rho == 0 {
        return invalid("rho must be positive");
    }
    if s > 2 {
        return invalid("s must lie in 0..=2");
    }
    Ok(-2 * rho as i64 - s as i64 + sing.offset())
}

/// `D^2 = (2/d) (Gamma . D)^2` on a Picard rank one model.
pub fn rank_one_square(d: i64, gamma_dot_d: &Rational) -> Result<Rational> {
    if d == 0 {
        return invalid("d must be non-zero");
    }
    Ok(q(2, d) * gamma_dot_d * gamma_dot_d)
}

/// The difference `delta K^2 - delta rho` between the two Noether counts on
/// the threefold: `d/2 + (Gamma . Xi) + Xi^2/4 + rho - 10`.
/// It must vanish for a consistent configuration.
pub fn type3_balance(d: i64, gamma_xi: &Rational, xi_sq: &Rational, rho: u32) -> Rational {
    q(d, 2) + gamma_xi + xi_sq * q(1, 4) + qi(rho as i64 - 10)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duval::{delpezzo_catalog, exceptional_euler};
    use proptest::prelude::*;

    #[test]
    fn orbifold_examples() {
        assert_eq!(orbifold_euler(3, &[2]).unwrap(), q(5, 2));
        assert_eq!(orbifold_euler(0, &[]).unwrap(), qi(0));
        assert_eq!(orbifold_euler(3, &[3, 3, 3]).unwrap(), qi(1));
        assert!(orbifold_euler(1, &[0]).is_err());
    }

    #[test]
    fn rr_examples() {
        assert_eq!(rr_correction_cyclic(5, 2, 1).unwrap(), q(-3, 5));
        assert_eq!(rr_correction_cyclic(2, 1, 1).unwrap(), q(-1, 4));
        assert_eq!(rr_correction_cyclic(3, 1, 3).unwrap(), qi(0));
        assert!(rr_correction_cyclic(4, 2, 1).is_err());
        assert_eq!(rr_correction_sum(5, 2, 5).unwrap(), qi(-2));
        assert_eq!(rr_correction_sum(2, 1, 2).unwrap(), q(-1, 4));
        assert_eq!(rr_correction_sum(1, 1, 3).unwrap(), qi(0));
        assert!(rr_correction_sum(3, 1, 4).is_err());
    }

    fn comp(m: u64, chi: i64, c: i64, k: i64) -> ChiComponent {
        ChiComponent {
            m,
            chi: qi(chi),
            d_cubed: qi(c),
            d_sq_k: qi(k),
        }
    }

    #[test]
    fn chi_examples() {
        let single = ChiInput {
            components: vec![comp(1, 2, 0, 0)],
            total_d_cubed: qi(0),
            total_d_sq_k: qi(0),
            corrections: vec![],
        };
        assert_eq!(chi_structure_sheaf(&single, false).unwrap(), qi(2));
        let two = ChiInput {
            components: vec![comp(2, 1, 3, -1), comp(1, 3, -2, 4)],
            total_d_cubed: qi(4),
            total_d_sq_k: qi(2),
            corrections: vec![],
        };
        let base = chi_structure_sheaf(&two, false).unwrap();
        assert_eq!(base, qi(5));
        let mut gen = two.clone();
        gen.corrections = vec![(2, vec![q(-3, 4)])];
        assert_eq!(chi_structure_sheaf(&gen, true).unwrap(), base + q(1, 8));
        let empty = ChiInput {
            components: vec![],
            total_d_cubed: qi(0),
            total_d_sq_k: qi(0),
            corrections: vec![],
        };
        assert!(chi_structure_sheaf(&empty, true).is_err());
    }

    #[test]
    fn degenerate_fibre_examples() {
        let f = |m, e: Rational, d: Vec<Rational>| FibreComponentData::new(m, e, d).unwrap();
        assert_eq!(euler_degenerate_fibre(&[f(1, qi(0), vec![])]), qi(0));
        assert_eq!(
            euler_degenerate_fibre(&[f(2, qi(3), vec![q(1, 2)]), f(1, qi(0), vec![])]),
            qi(7)
        );
        assert!(FibreComponentData::new(1, qi(0), vec![q(-1, 2)]).is_err());
    }

    #[test]
    fn noether_examples() {
        assert_eq!(noether_e_top(&qi(2), &qi(0), &[]), qi(24));
        assert_eq!(noether_e_top(&qi(0), &qi(0), &[]), qi(0));
        assert_eq!(noether_e_top(&qi(1), &qi(8), &[2]), qi(3));
    }

    #[test]
    fn noether_agrees_with_delpezzo_rows() {
        for row in delpezzo_catalog() {
            let e_p: Vec<i64> = row
                .singularities
                .iter()
                .map(|t| exceptional_euler(*t) as i64)
                .collect();
            let curves: i64 = row
                .singularities
                .iter()
                .map(|t| t.curve_count() as i64)
                .sum();
            let got = noether_e_top(&qi(1), &qi(row.degree as i64), &e_p);
            assert_eq!(got, qi(12 - row.degree as i64 - curves));
        }
    }

    #[test]
    fn type3_examples() {
        assert_eq!(type3_numerology(Type3Sing::ThreeA2, 1, 1).unwrap(), 3);
        assert_eq!(type3_numerology(Type3Sing::FourA1, 1, 2).unwrap(), 4);
        assert_eq!(type3_numerology(Type3Sing::A1TwoA3, 2, 0).unwrap(), 1);
        assert!(type3_numerology(Type3Sing::A1TwoA3, 0, 0).is_err());
        assert!(type3_numerology(Type3Sing::A1TwoA3, 1, 3).is_err());
        assert_eq!(rank_one_square(2, &qi(2)).unwrap(), qi(4));
        assert_eq!(rank_one_square(4, &qi(2)).unwrap(), qi(2));
        assert_eq!(rank_one_square(7, &qi(0)).unwrap(), qi(0));
        assert!(rank_one_square(0, &qi(1)).is_err());
        assert_eq!("2A3+A1".parse::<Type3Sing>().unwrap(), Type3Sing::A1TwoA3);
    }

    #[test]
    fn type3_balance_for_three_a2() {
        // s = 2: d = 2, (Gamma, Xi) = 4, Xi^2 = 16 is consistent
        let d = type3_numerology(Type3Sing::ThreeA2, 1, 2).unwrap();
        let xi_sq = rank_one_square(d, &qi(4)).unwrap();
        assert_eq!(xi_sq, qi(16));
        assert_eq!(type3_balance(d, &qi(4), &xi_sq, 1), qi(0));
        // s = 1: d = 3, (Gamma, Xi) = 3 gives Xi^2 = 6 and fails
        let d = type3_numerology(Type3Sing::ThreeA2, 1, 1).unwrap();
        let xi_sq = rank_one_square(d, &qi(3)).unwrap();
        assert_eq!(type3_balance(d, &qi(3), &xi_sq, 1), qi(-3));
    }

    proptest! {
        #[test]
        fn rr_sum_matches_closed_form(r in 1u64..=30, a in 1i64..30, k in 1u64..=3) {
            prop_assume!(a.gcd(&(r as i64)) == 1);
            let m = k * r;
            prop_assert_eq!(rr_correction_sum(r, a, m).unwrap(), rr_correction_closed_form(r, m));
        }

        #[test]
        fn rr_cyclic_periodic_and_reindexable(r in 2u64..=40, a in 1i64..40) {
            let ri = r as i64;
            prop_assume!(a.gcd(&ri) == 1);
            for l in 0..ri {
                prop_assert_eq!(
                    rr_correction_cyclic(r, a, l).unwrap(),
                    rr_correction_cyclic(r, a + ri, l).unwrap()
                );
            }
            let mut xs: Vec<Rational> = (1..ri).map(|l| rr_correction_cyclic(r, a, l).unwrap()).collect();
            let mut ys: Vec<Rational> = (1..ri).map(|l| rr_correction_cyclic(r, 1, l).unwrap()).collect();
            xs.sort();
            ys.sort();
            prop_assert_eq!(xs, ys);
        }

        #[test]
        fn degenerate_fibre_linear_and_zero(
            data in proptest::collection::vec((1u64..5, 0i64..10, 1i64..5, proptest::collection::vec((0i64..6, 1i64..6), 0..3)), 1..5),
            scale in 1u64..4,
        ) {
            let comps: Vec<FibreComponentData> = data
                .iter()
                .map(|(m, en, ed, ds)| {
                    FibreComponentData::new(*m, q(*en, *ed), ds.iter().map(|(a, b)| q(*a, *b)).collect()).unwrap()
                })
                .collect();
            let total = euler_degenerate_fibre(&comps);
            let scaled: Vec<FibreComponentData> = comps
                .iter()
                .map(|c| FibreComponentData::new(c.m * scale, c.e_orb.clone(), c.deltas.clone()).unwrap())
                .collect();
            prop_assert_eq!(euler_degenerate_fibre(&scaled), qi(scale as i64) * &total);
            let all_zero = comps.iter().all(|c| c.e_orb.is_zero() && c.deltas.iter().all(|d| d.is_zero()));
            prop_assert_eq!(total.is_zero(), all_zero);
        }

        #[test]
        fn chi_generalized_without_corrections(c3 in -5i64..5, k in -5i64..5, chi in -3i64..4, m in 1u64..4) {
            let input = ChiInput {
                components: vec![comp(m, chi, c3, k)],
                total_d_cubed: qi(c3 + 1),
                total_d_sq_k: qi(k - 2),
                corrections: vec![],
            };
            prop_assert_eq!(chi_structure_sheaf(&input, false).unwrap(), chi_structure_sheaf(&input, true).unwrap());
        }
    }
}
