//! Labels and standard graphs: Du Val trees, Kodaira fibres, the index-two
//! plt catalog and the six conic-fibre types.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use super::{CurveVertex, DualGraph, Role};
use crate::base::{q, qi, Rational, StandardCoeff};
use crate::duval::{DuValType, Family};
use crate::error::{invalid, Error, Result};

struct Builder {
    g: DualGraph,
    next: usize,
}

impl Builder {
    fn new() -> Self {
        Builder {
            g: DualGraph::new(),
            next: 0,
        }
    }

    fn vertex(&mut self, prefix: &str, v: CurveVertex) -> String {
        let id = format!("{prefix}{}", self.next);
        self.next += 1;
        let mut v = v;
        v.id = id.clone();
        self.g.add_vertex(v);
        id
    }

    fn exc(&mut self, self_int: i64) -> String {
        self.vertex("E", CurveVertex::new("", self_int, Role::Exceptional))
    }

    fn exc_c(&mut self, self_int: i64, c: Rational) -> String {
        self.vertex(
            "E",
            CurveVertex::new("", self_int, Role::Exceptional).with_boundary(c),
        )
    }

    fn strict(&mut self, c: Rational) -> String {
        self.vertex("S", CurveVertex::new("", 0, Role::Strict).with_boundary(c))
    }

    fn fibre(&mut self, self_int: i64, mult: u32) -> String {
        self.vertex(
            "F",
            CurveVertex::new("", self_int, Role::Fibre).with_mult(mult),
        )
    }

    fn edge(&mut self, a: &str, b: &str) {
        self.g.add_edge(a, b, 1);
    }

    /// Chain of `k` curves of self-intersection `s`, joined in order.
    fn chain(&mut self, k: u32, s: i64) -> Vec<String> {
        let ids: Vec<String> = (0..k).map(|_| self.exc(s)).collect();
        for w in ids.windows(2) {
            self.edge(&w[0], &w[1]);
        }
        ids
    }

    /// Joins `a`, then the chain, then `b`; with an empty chain `a` meets `b`.
    fn link(&mut self, a: &str, chain: &[String], b: &str) {
        match (chain.first(), chain.last()) {
            (Some(f), Some(l)) => {
                let (f, l) = (f.clone(), l.clone());
                self.edge(a, &f);
                self.edge(&l, b);
            }
            _ => self.edge(a, b),
        }
    }

    fn done(self) -> DualGraph {
        self.g
    }
}

/// Minimal resolution graph of a Du Val singularity: a tree of (-2)-curves.
pub fn duval_graph(t: DuValType) -> DualGraph {
    let mut b = Builder::new();
    let n = t.index();
    match t.family() {
        Family::A => {
            b.chain(n, -2);
        }
        Family::D | Family::E => {
            // centre with arms of lengths (1,1,n-3) or (1,2,n-4)
            let arms: [u32; 3] = if t.family() == Family::D {
                [1, 1, n - 3]
            } else {
                [1, 2, n - 4]
            };
            let centre = b.exc(-2);
            for len in arms {
                let arm = b.chain(len, -2);
                b.edge(&centre, &arm[0]);
            }
        }
    }
    b.done()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KodairaLabel {
    Smooth,
    I(u32),
    IStar(u32),
    II,
    III,
    IV,
    IIStar,
    IIIStar,
    IVStar,
}

impl KodairaLabel {
    /// Euler number of the singular fibre.
    pub fn euler_number(&self) -> i64 {
        match *self {
            KodairaLabel::Smooth => 0,
            KodairaLabel::I(b) => b as i64,
            KodairaLabel::IStar(b) => b as i64 + 6,
            KodairaLabel::II => 2,
            KodairaLabel::III => 3,
            KodairaLabel::IV => 4,
            KodairaLabel::IVStar => 8,
            KodairaLabel::IIIStar => 9,
            KodairaLabel::IIStar => 10,
        }
    }

    /// Number of irreducible components.
    pub fn component_count(&self) -> usize {
        match *self {
            KodairaLabel::Smooth | KodairaLabel::II => 1,
            KodairaLabel::I(b) => b as usize,
            KodairaLabel::IStar(b) => b as usize + 5,
            KodairaLabel::III => 2,
            KodairaLabel::IV => 3,
            KodairaLabel::IVStar => 7,
            KodairaLabel::IIIStar => 8,
            KodairaLabel::IIStar => 9,
        }
    }

    /// Indices of the multiplicity-one components in [`kodaira_graph`] order.
    pub fn simple_components(&self) -> Vec<usize> {
        match *self {
            KodairaLabel::Smooth | KodairaLabel::II | KodairaLabel::IIStar => vec![0],
            KodairaLabel::I(b) => (0..b as usize).collect(),
            KodairaLabel::IStar(_) => vec![0, 1, 2, 3],
            KodairaLabel::III | KodairaLabel::IIIStar => vec![0, 1],
            KodairaLabel::IV | KodairaLabel::IVStar => vec![0, 1, 2],
        }
    }

    /// Every label whose standard graph has `n` components.
    pub fn with_component_count(n: usize) -> Vec<KodairaLabel> {
        let mut out = Vec::new();
        match n {
            0 => {}
            1 => out.extend([KodairaLabel::Smooth, KodairaLabel::I(1), KodairaLabel::II]),
            2 => out.extend([KodairaLabel::I(2), KodairaLabel::III]),
            3 => out.extend([KodairaLabel::I(3), KodairaLabel::IV]),
            _ => out.push(KodairaLabel::I(n as u32)),
        }
        if n >= 5 {
            out.push(KodairaLabel::IStar(n as u32 - 5));
        }
        match n {
            7 => out.push(KodairaLabel::IVStar),
            8 => out.push(KodairaLabel::IIIStar),
            9 => out.push(KodairaLabel::IIStar),
            _ => {}
        }
        out
    }
}

impl fmt::Display for KodairaLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaLabel::Smooth => write!(f, "SMOOTH"),
            KodairaLabel::I(b) => write!(f, "I_{b}"),
            KodairaLabel::IStar(b) => write!(f, "I*_{b}"),
            KodairaLabel::II => write!(f, "II"),
            KodairaLabel::III => write!(f, "III"),
            KodairaLabel::IV => write!(f, "IV"),
            KodairaLabel::IIStar => write!(f, "II*"),
            KodairaLabel::IIIStar => write!(f, "III*"),
            KodairaLabel::IVStar => write!(f, "IV*"),
        }
    }
}

impl FromStr for KodairaLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let num = |x: &str| -> Result<u32> {
            x.parse()
                .map_err(|_| Error::Parse(format!("bad Kodaira label {s:?}")))
        };
        Ok(match t {
            "SMOOTH" | "smooth" | "I_0" | "I0" => KodairaLabel::Smooth,
            "II" => KodairaLabel::II,
            "III" => KodairaLabel::III,
            "IV" => KodairaLabel::IV,
            "II*" => KodairaLabel::IIStar,
            "III*" => KodairaLabel::IIIStar,
            "IV*" => KodairaLabel::IVStar,
            _ => {
                if let Some(r) = t.strip_prefix("I*_").or_else(|| t.strip_prefix("I*")) {
                    KodairaLabel::IStar(num(r)?)
                } else if let Some(r) = t.strip_prefix("I_").or_else(|| t.strip_prefix('I')) {
                    let b = num(r)?;
                    if b == 0 {
                        KodairaLabel::Smooth
                    } else {
                        KodairaLabel::I(b)
                    }
                } else {
                    return Err(Error::Parse(format!("bad Kodaira label {s:?}")));
                }
            }
        })
    }
}

impl Serialize for KodairaLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for KodairaLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(de::Error::custom)
    }
}

/// Standard configuration of a Kodaira fibre, components `F0, F1, ...`.
///
/// For `I*_b` the four simple components come first: `F0, F1` on one end of
/// the double chain, `F2, F3` on the other.
pub fn kodaira_graph(label: KodairaLabel) -> DualGraph {
    let mut b = Builder::new();
    match label {
        KodairaLabel::Smooth => {
            let v = b.fibre(0, 1);
            b.g.vertices[0].genus = 1;
            let _ = v;
        }
        KodairaLabel::I(1) => {
            let v = b.fibre(0, 1);
            b.g.tangency.insert(v, 1);
        }
        KodairaLabel::II => {
            let v = b.fibre(0, 1);
            b.g.cusps.insert(v, 1);
        }
        KodairaLabel::I(n) => {
            let ids: Vec<String> = (0..n).map(|_| b.fibre(-2, 1)).collect();
            for i in 0..n as usize {
                let j = (i + 1) % n as usize;
                b.edge(&ids[i], &ids[j]);
            }
        }
        KodairaLabel::III => {
            let x = b.fibre(-2, 1);
            let y = b.fibre(-2, 1);
            b.g.add_edge(&x, &y, 2);
        }
        KodairaLabel::IV => {
            let ids: Vec<String> = (0..3).map(|_| b.fibre(-2, 1)).collect();
            b.edge(&ids[0], &ids[1]);
            b.edge(&ids[1], &ids[2]);
            b.edge(&ids[0], &ids[2]);
            b.g.concurrent.push(ids);
        }
        KodairaLabel::IStar(n) => {
            let leaves: Vec<String> = (0..4).map(|_| b.fibre(-2, 1)).collect();
            let chain: Vec<String> = (0..=n).map(|_| b.fibre(-2, 2)).collect();
            for w in chain.windows(2) {
                b.edge(&w[0], &w[1]);
            }
            let last = chain.len() - 1;
            b.edge(&leaves[0], &chain[0]);
            b.edge(&leaves[1], &chain[0]);
            b.edge(&leaves[2], &chain[last]);
            b.edge(&leaves[3], &chain[last]);
        }
        KodairaLabel::IVStar | KodairaLabel::IIIStar | KodairaLabel::IIStar => {
            // simple components first, then the rest; arms listed tip last
            let (centre, arms): (u32, Vec<Vec<u32>>) = match label {
                KodairaLabel::IVStar => (3, vec![vec![2, 1], vec![2, 1], vec![2, 1]]),
                KodairaLabel::IIIStar => (4, vec![vec![2], vec![3, 2, 1], vec![3, 2, 1]]),
                _ => (6, vec![vec![3], vec![4, 2], vec![5, 4, 3, 2, 1]]),
            };
            let mut pending: Vec<(usize, usize, u32)> = Vec::new();
            for (ai, arm) in arms.iter().enumerate() {
                for (pi, &m) in arm.iter().enumerate() {
                    if m == 1 {
                        pending.push((ai, pi, m));
                    }
                }
            }
            let mut ids: std::collections::BTreeMap<(usize, usize), String> = Default::default();
            for &(ai, pi, m) in &pending {
                ids.insert((ai, pi), b.fibre(-2, m));
            }
            let c = b.fibre(-2, centre);
            for (ai, arm) in arms.iter().enumerate() {
                for (pi, &m) in arm.iter().enumerate() {
                    if m != 1 {
                        ids.insert((ai, pi), b.fibre(-2, m));
                    }
                }
            }
            for (ai, arm) in arms.iter().enumerate() {
                b.edge(&c, &ids[&(ai, 0)]);
                for pi in 1..arm.len() {
                    let (x, y) = (ids[&(ai, pi - 1)].clone(), ids[&(ai, pi)].clone());
                    b.edge(&x, &y);
                }
            }
        }
    }
    b.done()
}

/// Entries of the catalog of plt germs `(S, Delta)` with reduced part zero
/// and `K_S + Delta` of index two. `k` is the number of (-2)-curves in the
/// variable chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HalfCatalogLabel {
    A0,
    AAlpha(u32),
    ABeta(u32),
    DAlpha(u32),
    DBeta(u32),
    E6,
    E7,
    E8,
    A1Gamma,
    ADelta(u32),
    AEpsilon(u32),
    AZeta(u32),
    D4Gamma,
    DDelta(u32),
    DEpsilon(u32),
}

impl HalfCatalogLabel {
    /// Every entry with chain length at most `k_max` (zeta starts at 1).
    pub fn all(k_max: u32) -> Vec<HalfCatalogLabel> {
        use HalfCatalogLabel::*;
        let mut out = vec![A0, E6, E7, E8, A1Gamma, D4Gamma];
        for k in 0..=k_max {
            out.extend([
                AAlpha(k),
                ABeta(k),
                DAlpha(k),
                DBeta(k),
                ADelta(k),
                AEpsilon(k),
            ]);
            out.extend([DDelta(k), DEpsilon(k)]);
            if k >= 1 {
                out.push(AZeta(k));
            }
        }
        out.sort();
        out
    }

    /// True for the entries where the surface is smooth at the point.
    pub fn smooth_point(&self) -> bool {
        use HalfCatalogLabel::*;
        matches!(
            self,
            A0 | AAlpha(_) | ABeta(_) | DAlpha(_) | DBeta(_) | E6 | E7 | E8
        )
    }

    pub fn k(&self) -> Option<u32> {
        use HalfCatalogLabel::*;
        match *self {
            AAlpha(k) | ABeta(k) | DAlpha(k) | DBeta(k) | ADelta(k) | AEpsilon(k) | AZeta(k)
            | DDelta(k) | DEpsilon(k) => Some(k),
            _ => None,
        }
    }
}

impl fmt::Display for HalfCatalogLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use HalfCatalogLabel::*;
        match *self {
            A0 => write!(f, "A_0/2"),
            AAlpha(k) => write!(f, "A_{}/2-alpha", 2 * k + 1),
            ABeta(k) => write!(f, "A_{}/2-beta", 2 * k + 2),
            DAlpha(k) => write!(f, "D_{}/2-alpha", 2 * k + 5),
            DBeta(k) => write!(f, "D_{}/2-beta", 2 * k + 4),
            E6 => write!(f, "E_6/2"),
            E7 => write!(f, "E_7/2"),
            E8 => write!(f, "E_8/2"),
            A1Gamma => write!(f, "A_1/2-gamma"),
            ADelta(k) => write!(f, "A_{}/2-delta", 2 * k + 3),
            AEpsilon(k) => write!(f, "A_{}/2-epsilon", 2 * k + 2),
            AZeta(k) => write!(f, "A_{}/2-zeta", 2 * k + 1),
            D4Gamma => write!(f, "D_4/2-gamma"),
            DDelta(k) => write!(f, "D_{}/2-delta", 2 * k + 5),
            DEpsilon(k) => write!(f, "D_{}/2-epsilon", 2 * k + 6),
        }
    }
}

/// Log resolution graph of a catalog entry. Strict transforms of the
/// boundary carry coefficient 1/2.
pub fn half_catalog_graph(label: HalfCatalogLabel) -> DualGraph {
    use HalfCatalogLabel::*;
    let half = q(1, 2);
    let mut b = Builder::new();
    match label {
        A0 => {
            b.strict(half);
        }
        AAlpha(k) => {
            let ch = b.chain(k, -2);
            let x = b.exc(-1);
            if let Some(l) = ch.last() {
                let l = l.clone();
                b.edge(&l, &x);
            }
            for _ in 0..2 {
                let s = b.strict(half.clone());
                b.edge(&x, &s);
            }
        }
        ABeta(k) => {
            let ch = b.chain(k, -2);
            let t = b.exc(-3);
            if let Some(l) = ch.last() {
                let l = l.clone();
                b.edge(&l, &t);
            }
            tail_with_leaf(&mut b, &t, half);
        }
        DAlpha(k) => {
            let s = b.strict(half.clone());
            let ch = b.chain(k, -2);
            let t = b.exc(-3);
            b.link(&s, &ch, &t);
            tail_with_leaf(&mut b, &t, half);
        }
        DBeta(k) => {
            let s = b.strict(half.clone());
            let ch = b.chain(k, -2);
            let x = b.exc(-1);
            b.link(&s, &ch, &x);
            for _ in 0..2 {
                let s = b.strict(half.clone());
                b.edge(&x, &s);
            }
        }
        E6 => {
            let ch = b.chain(2, -2);
            let x = b.exc(-1);
            b.edge(&ch[1], &x);
            let f = b.exc(-4);
            b.edge(&x, &f);
            let s = b.strict(half);
            b.edge(&x, &s);
        }
        E7 => {
            let s = b.strict(half.clone());
            let e = b.exc(-2);
            b.edge(&s, &e);
            let x = b.exc(-1);
            b.edge(&e, &x);
            let t = b.exc(-3);
            b.edge(&x, &t);
            let s2 = b.strict(half);
            b.edge(&x, &s2);
        }
        E8 => {
            let t = b.exc(-3);
            let e = b.exc(-2);
            b.edge(&t, &e);
            let x = b.exc(-1);
            b.edge(&e, &x);
            let t2 = b.exc(-3);
            b.edge(&x, &t2);
            let s = b.strict(half);
            b.edge(&x, &s);
        }
        A1Gamma => {
            b.exc(-4);
        }
        ADelta(k) => {
            let a = b.exc(-3);
            let ch = b.chain(k, -2);
            let z = b.exc(-3);
            b.link(&a, &ch, &z);
        }
        AEpsilon(k) => {
            let s = b.strict(half);
            let ch = b.chain(k, -2);
            let t = b.exc(-3);
            b.link(&s, &ch, &t);
        }
        AZeta(k) => {
            let s = b.strict(half.clone());
            let ch = b.chain(k, -2);
            let s2 = b.strict(half);
            b.link(&s, &ch, &s2);
        }
        D4Gamma => {
            let s = b.strict(half);
            let x = b.exc(-1);
            b.edge(&s, &x);
            let f = b.exc(-4);
            b.edge(&x, &f);
            let t = b.exc(-2);
            b.edge(&x, &t);
        }
        DDelta(k) => {
            let t = b.exc(-3);
            let ch = b.chain(k, -2);
            let x = b.exc(-1);
            b.link(&t, &ch, &x);
            for _ in 0..2 {
                let s = b.strict(half.clone());
                b.edge(&x, &s);
            }
        }
        DEpsilon(k) => {
            let t = b.exc(-3);
            let ch = b.chain(k, -2);
            let t2 = b.exc(-3);
            b.link(&t, &ch, &t2);
            tail_with_leaf(&mut b, &t2, half);
        }
    }
    b.done()
}

/// Attaches a (-1)-curve to `at`, carrying a (-2) leaf and one strict curve.
fn tail_with_leaf(b: &mut Builder, at: &str, half: Rational) {
    let x = b.exc(-1);
    b.edge(at, &x);
    let leaf = b.exc(-2);
    b.edge(&x, &leaf);
    let s = b.strict(half);
    b.edge(&x, &s);
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FibreKind {
    I1,
    I2,
    I3,
    II1,
    II2,
    II3,
}

impl fmt::Display for FibreKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FibreKind::I1 => "I-1",
            FibreKind::I2 => "I-2",
            FibreKind::I3 => "I-3",
            FibreKind::II1 => "II-1",
            FibreKind::II2 => "II-2",
            FibreKind::II3 => "II-3",
        })
    }
}

impl FromStr for FibreKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s
            .trim()
            .trim_start_matches('(')
            .chars()
            .filter(|c| *c != '-' && *c != ')')
            .collect();
        let t = t.trim_end_matches("_bk").trim_end_matches("_b");
        Ok(match t {
            "I1" => FibreKind::I1,
            "I2" => FibreKind::I2,
            "I3" => FibreKind::I3,
            "II1" => FibreKind::II1,
            "II2" => FibreKind::II2,
            "II3" => FibreKind::II3,
            _ => return Err(Error::Parse(format!("bad fibre kind {s:?}"))),
        })
    }
}

/// Fibre of a conic fibration over a germ of curve, with its boundary
/// parameter `b` and (for II-3) the length `k` of the (-2)-chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FibreTypeLabel {
    kind: FibreKind,
    b: StandardCoeff,
    k: Option<u32>,
}

impl FibreTypeLabel {
    pub fn new(kind: FibreKind, b: StandardCoeff, k: Option<u32>) -> Result<Self> {
        match (kind, k) {
            (FibreKind::II3, Some(k)) if k >= 1 => {}
            (FibreKind::II3, Some(_)) => return invalid("(II-3) needs k >= 1"),
            (FibreKind::II3, None) => return invalid("(II-3) needs a parameter k"),
            (_, Some(_)) => return invalid(format!("({kind}) takes no k")),
            (_, None) => {}
        }
        Ok(FibreTypeLabel { kind, b, k })
    }

    /// Shorthand with a finite `b`.
    pub fn of(kind: FibreKind, b: u64) -> Result<Self> {
        Self::new(kind, StandardCoeff::new(b)?, None)
    }

    pub fn kind(&self) -> FibreKind {
        self.kind
    }
    pub fn b(&self) -> StandardCoeff {
        self.b
    }
    pub fn k(&self) -> Option<u32> {
        self.k
    }
}

impl fmt::Display for FibreTypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k {
            Some(k) => write!(f, "({})_{{{},{}}}", self.kind, self.b, k),
            None => write!(f, "({})_{}", self.kind, self.b),
        }
    }
}

/// Parses `(I-2)_1`, `(II-1)_inf` or `(II-3)_{2,1}`.
impl FromStr for FibreTypeLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad fibre type {s:?}"));
        let t = s.trim();
        let close = t.find(')').ok_or_else(bad)?;
        let kind: FibreKind = t[..=close].parse()?;
        let rest = t[close + 1..].strip_prefix('_').ok_or_else(bad)?;
        let rest = rest.trim_start_matches('{').trim_end_matches('}');
        let mut parts = rest.split(',');
        let b: StandardCoeff = parts.next().ok_or_else(bad)?.parse()?;
        let k = match parts.next() {
            Some(k) => Some(k.trim().parse().map_err(|_| bad())?),
            None => None,
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        FibreTypeLabel::new(kind, b, k)
    }
}

#[derive(Serialize, Deserialize)]
struct FibreTypeJson {
    kind: String,
    #[serde(with = "b_param")]
    b: StandardCoeff,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    k: Option<u32>,
}

mod b_param {
    use crate::base::StandardCoeff;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(b: &StandardCoeff, s: S) -> Result<S::Ok, S::Error> {
        match b {
            StandardCoeff::Finite(n) => s.serialize_u64(*n),
            StandardCoeff::Infinity => s.serialize_str("inf"),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<StandardCoeff, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => StandardCoeff::new(n).map_err(de::Error::custom),
            Raw::S(s) => s.parse().map_err(de::Error::custom),
        }
    }
}

impl Serialize for FibreTypeLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FibreTypeJson {
            kind: self.kind.to_string(),
            b: self.b,
            k: self.k,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FibreTypeLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = FibreTypeJson::deserialize(d)?;
        let kind: FibreKind = raw.kind.parse().map_err(de::Error::custom)?;
        FibreTypeLabel::new(kind, raw.b, raw.k).map_err(de::Error::custom)
    }
}

/// Local graph of a fibre type. Horizontal curves are `STRICT` (coefficient
/// 1 or 1/2), the fibre component `C` is `FIBRE` and the curves contracted
/// to points are `EXCEPTIONAL`; every vertex is annotated with its
/// multiplicity in the boundary.
pub fn fibre_type_graph(label: FibreTypeLabel) -> DualGraph {
    let c = label.b.value();
    let half = q(1, 2);
    let one = qi(1);
    let mut b = Builder::new();
    let fibre = |b: &mut Builder, s: i64| {
        b.vertex(
            "C",
            CurveVertex::new("", s, Role::Fibre).with_boundary(c.clone()),
        )
    };
    match label.kind {
        FibreKind::I1 => {
            let g = b.strict(one);
            let x = fibre(&mut b, 0);
            b.edge(&g, &x);
            for _ in 0..2 {
                let s = b.strict(half.clone());
                b.edge(&x, &s);
            }
        }
        FibreKind::I2 => {
            let g = b.strict(one);
            let x = fibre(&mut b, -1);
            b.edge(&g, &x);
            for _ in 0..2 {
                let e = b.exc_c(-2, label.b.half());
                b.edge(&x, &e);
            }
        }
        FibreKind::I3 => {
            let g = b.strict(one);
            let e1 = b.exc_c(-2, label.b.half_shift());
            b.edge(&g, &e1);
            let x = fibre(&mut b, -1);
            b.edge(&e1, &x);
            let s = b.strict(half);
            b.edge(&x, &s);
            let e2 = b.exc_c(-2, label.b.half());
            b.edge(&x, &e2);
        }
        FibreKind::II1 => {
            let g1 = b.strict(one.clone());
            let x = fibre(&mut b, 0);
            let g2 = b.strict(one);
            b.edge(&g1, &x);
            b.edge(&x, &g2);
        }
        FibreKind::II2 => {
            let g = b.strict(one);
            let x = fibre(&mut b, 0);
            b.edge(&g, &x);
            let s = b.strict(half);
            b.g.add_edge(&x, &s, 2);
        }
        FibreKind::II3 => {
            let k = label.k.expect("II-3 carries k");
            let g = b.strict(one);
            let x = fibre(&mut b, -1);
            b.edge(&g, &x);
            let ch: Vec<String> = (0..k).map(|_| b.exc_c(-2, c.clone())).collect();
            for w in ch.windows(2) {
                b.edge(&w[0], &w[1]);
            }
            b.edge(&x, &ch[0]);
            let last = ch[ch.len() - 1].clone();
            for _ in 0..2 {
                let e = b.exc_c(-2, label.b.half());
                b.edge(&last, &e);
            }
        }
    }
    let g = b.done();
    debug_assert!(g
        .vertices
        .iter()
        .all(|v| !v.boundary.is_zero() || v.role != Role::Strict));
    g
}
