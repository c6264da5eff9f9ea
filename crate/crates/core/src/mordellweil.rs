//! Height pairing of sections of an elliptic surface and a brute-force search
//! for the fibre components a section of given height can meet.
//!
//! Component indices follow [`kodaira_graph`](crate::dualgraph::catalog::kodaira_graph):
//! index 0 meets the zero section, and for `I*_m` components 2 and 3 are the
//! far simple components.

use serde::Serialize;

use crate::base::{q, qi, Rational};
use crate::dualgraph::KodairaLabel;
use crate::error::{Error, Result};

fn unsupported<T>(fibre: KodairaLabel, what: &str) -> Result<T> {
    Err(Error::Unsupported(format!(
        "{what} on a fibre of type {fibre}"
    )))
}

/// Local contribution `contr_v(P)` of a section meeting component `i`.
pub fn contribution(fibre: KodairaLabel, i: usize) -> Result<Rational> {
    if i == 0 {
        return Ok(qi(0));
    }
    match fibre {
        KodairaLabel::I(n) if i < n as usize => {
            let (n, i) = (n as i64, i as i64);
            Ok(q(i * (n - i), n))
        }
        KodairaLabel::IStar(m @ (1 | 2)) => match i {
            1 => Ok(qi(1)),
            2 | 3 => Ok(if m == 1 { q(5, 4) } else { q(3, 2) }),
            _ => unsupported(fibre, &format!("component {i}")),
        },
        _ => unsupported(fibre, &format!("component {i}")),
    }
}

/// Local contribution `contr_v(P, Q)` of two sections meeting components
/// `i` and `j`. Only `I*_1` on its far components is tabulated.
pub fn pair_contribution(fibre: KodairaLabel, i: usize, j: usize) -> Result<Rational> {
    if i == 0 || j == 0 {
        return Ok(qi(0));
    }
    match fibre {
        KodairaLabel::IStar(1) if (2..=3).contains(&i) && (2..=3).contains(&j) => {
            Ok(if i == j { q(5, 4) } else { q(3, 4) })
        }
        _ => unsupported(fibre, &format!("pair ({i}, {j})")),
    }
}

/// `<P, P> = 2 chi + 2 (PO) - sum contr`.
pub fn height_self(chi: u64, po: i64, contribs: &[Rational]) -> Rational {
    let s: Rational = contribs.iter().sum();
    qi(2 * chi as i64 + 2 * po) - s
}

/// `<P, Q> = chi + (PO) + (QO) - (PQ) - sum contr`.
pub fn height_pair(chi: u64, po: i64, qo: i64, pq: i64, contribs: &[Rational]) -> Rational {
    let s: Rational = contribs.iter().sum();
    qi(chi as i64 + po + qo - pq) - s
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SectionConfig {
    pub po: i64,
    /// Component met on each singular fibre, in input order.
    pub hits: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pq: Option<i64>,
}

/// All `(PO) <= po_max` and choices of simple components with
/// `<P, P> = target`, sorted by `(PO)` then by hits.
pub fn solve_section_config(
    target: &Rational,
    fibres: &[(KodairaLabel, usize)],
    chi: u64,
    po_max: i64,
) -> Result<Vec<SectionConfig>> {
    let mut choices: Vec<Vec<(usize, Rational)>> = Vec::new();
    for &(label, count) in fibres {
        if count != label.component_count() {
            return Err(Error::InvalidInput(format!(
                "{label} has {} components, not {count}",
                label.component_count()
            )));
        }
        let opts = label
            .simple_components()
            .into_iter()
            .map(|i| contribution(label, i).map(|c| (i, c)))
            .collect::<Result<Vec<_>>>()?;
        choices.push(opts);
    }
    let mut out = Vec::new();
    let mut hits = Vec::with_capacity(fibres.len());
    let mut contribs = Vec::with_capacity(fibres.len());
    for po in 0..=po_max {
        walk(&choices, 0, &mut hits, &mut contribs, &mut |h, c| {
            if height_self(chi, po, c) == *target {
                out.push(SectionConfig {
                    po,
                    hits: h.to_vec(),
                    pq: None,
                });
            }
        });
    }
    out.sort();
    Ok(out)
}

fn walk(
    choices: &[Vec<(usize, Rational)>],
    depth: usize,
    hits: &mut Vec<usize>,
    contribs: &mut Vec<Rational>,
    visit: &mut impl FnMut(&[usize], &[Rational]),
) {
    if depth == choices.len() {
        visit(hits, contribs);
        return;
    }
    for (i, c) in &choices[depth] {
        hits.push(*i);
        contribs.push(c.clone());
        walk(choices, depth + 1, hits, contribs, visit);
        hits.pop();
        contribs.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ex1_fibres() -> Vec<(KodairaLabel, usize)> {
        vec![
            (KodairaLabel::IStar(1), 6),
            (KodairaLabel::II, 1),
            (KodairaLabel::I(3), 3),
        ]
    }

    #[test]
    fn contribution_examples() {
        assert_eq!(contribution(KodairaLabel::I(3), 1).unwrap(), q(2, 3));
        assert_eq!(contribution(KodairaLabel::IStar(1), 2).unwrap(), q(5, 4));
        assert_eq!(contribution(KodairaLabel::IStar(1), 3).unwrap(), q(5, 4));
        assert_eq!(contribution(KodairaLabel::IStar(1), 1).unwrap(), qi(1));
        assert_eq!(contribution(KodairaLabel::I(2), 1).unwrap(), q(1, 2));
        assert_eq!(contribution(KodairaLabel::IStar(2), 3).unwrap(), q(3, 2));
        assert_eq!(contribution(KodairaLabel::II, 0).unwrap(), qi(0));
        assert!(contribution(KodairaLabel::IStar(3), 1).is_err());
        assert!(contribution(KodairaLabel::IV, 1).is_err());
        assert!(contribution(KodairaLabel::I(3), 3).is_err());
    }

    #[test]
    fn pair_examples() {
        let t = KodairaLabel::IStar(1);
        assert_eq!(pair_contribution(t, 2, 2).unwrap(), q(5, 4));
        assert_eq!(pair_contribution(t, 2, 3).unwrap(), q(3, 4));
        assert_eq!(pair_contribution(t, 0, 3).unwrap(), qi(0));
        assert!(pair_contribution(t, 1, 2).is_err());
        assert!(pair_contribution(KodairaLabel::I(3), 1, 2).is_err());
    }

    #[test]
    fn height_examples() {
        assert_eq!(height_self(1, 0, &[q(5, 4)]), q(3, 4));
        assert_eq!(height_self(1, 0, &[q(5, 4), q(2, 3)]), q(1, 12));
        assert_eq!(height_self(1, 0, &[]), qi(2));
        assert_eq!(height_pair(1, 0, 0, 0, &[q(5, 4)]), q(-1, 4));
        assert_eq!(height_pair(1, 0, 0, 1, &[]), qi(0));
        assert_eq!(height_pair(1, 0, 0, 0, &[q(3, 4)]), q(1, 4));
    }

    #[test]
    fn solver_examples() {
        let got = solve_section_config(&q(3, 4), &ex1_fibres(), 1, 2).unwrap();
        let hits: Vec<Vec<usize>> = got.iter().map(|c| c.hits.clone()).collect();
        assert_eq!(hits, vec![vec![2, 0, 0], vec![3, 0, 0]]);
        assert!(got.iter().all(|c| c.po == 0));

        let got = solve_section_config(&q(1, 12), &ex1_fibres(), 1, 2).unwrap();
        let hits: Vec<Vec<usize>> = got.iter().map(|c| c.hits.clone()).collect();
        assert_eq!(
            hits,
            vec![vec![2, 0, 1], vec![2, 0, 2], vec![3, 0, 1], vec![3, 0, 2]]
        );

        let empty = solve_section_config(&qi(2), &[], 1, 0).unwrap();
        assert_eq!(
            empty,
            vec![SectionConfig {
                po: 0,
                hits: vec![],
                pq: None
            }]
        );

        assert!(solve_section_config(&qi(0), &[(KodairaLabel::IStar(1), 5)], 1, 0).is_err());
    }

    #[test]
    fn torsion_sections_on_istar2_2i2() {
        let fibres = [
            (KodairaLabel::IStar(2), 7),
            (KodairaLabel::I(2), 2),
            (KodairaLabel::I(2), 2),
        ];
        let got = solve_section_config(&qi(0), &fibres, 1, 3).unwrap();
        let hits: Vec<Vec<usize>> = got.iter().map(|c| c.hits.clone()).collect();
        assert_eq!(
            hits,
            vec![
                vec![1, 1, 1],
                vec![2, 0, 1],
                vec![2, 1, 0],
                vec![3, 0, 1],
                vec![3, 1, 0]
            ]
        );
        // two sections of the first type would need (PQ) = -1
        let pq = qi(1) - [qi(1), q(1, 2), q(1, 2)].iter().sum::<Rational>();
        assert_eq!(pq, qi(-1));
        assert_eq!(height_pair(1, 0, 0, -1, &[qi(1), q(1, 2), q(1, 2)]), qi(0));
    }

    fn brute(
        target: &Rational,
        fibres: &[(KodairaLabel, usize)],
        po_max: i64,
    ) -> Vec<SectionConfig> {
        let mut out = Vec::new();
        let sizes: Vec<usize> = fibres.iter().map(|(l, _)| l.component_count()).collect();
        let total: usize = sizes.iter().product();
        for po in 0..=po_max {
            for code in 0..total {
                let mut c = code;
                let mut hits = Vec::new();
                let mut contribs = Vec::new();
                let mut ok = true;
                for (k, (l, _)) in fibres.iter().enumerate() {
                    let i = c % sizes[k];
                    c /= sizes[k];
                    if !l.simple_components().contains(&i) {
                        ok = false;
                        break;
                    }
                    hits.push(i);
                    contribs.push(contribution(*l, i).unwrap());
                }
                if ok && height_self(1, po, &contribs) == *target {
                    out.push(SectionConfig { po, hits, pq: None });
                }
            }
        }
        out.sort();
        out
    }

    proptest! {
        #[test]
        fn i_n_symmetry(n in 2u32..30, i in 1usize..30) {
            prop_assume!(i < n as usize);
            let l = KodairaLabel::I(n);
            prop_assert_eq!(contribution(l, i).unwrap(), contribution(l, n as usize - i).unwrap());
        }

        #[test]
        fn zero_contributions(chi in 1u64..5, k in 0usize..5) {
            prop_assert_eq!(height_self(chi, 0, &vec![qi(0); k]), qi(2 * chi as i64));
        }

        #[test]
        fn solver_is_complete(
            sel in proptest::collection::vec(0usize..6, 0..4),
            num in 0i64..30,
            po_max in 0i64..3,
        ) {
            let menu = [
                KodairaLabel::I(2),
                KodairaLabel::I(3),
                KodairaLabel::I(4),
                KodairaLabel::IStar(1),
                KodairaLabel::IStar(2),
                KodairaLabel::II,
            ];
            let fibres: Vec<(KodairaLabel, usize)> =
                sel.iter().map(|&k| (menu[k], menu[k].component_count())).collect();
            let target = q(num, 12);
            prop_assert_eq!(
                solve_section_config(&target, &fibres, 1, po_max).unwrap(),
                brute(&target, &fibres, po_max)
            );
        }
    }
}
