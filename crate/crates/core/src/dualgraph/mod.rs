//! Weighted dual graphs of curve configurations on a smooth surface.
//!
//! An edge `(a, b, w)` is one intersection point of local intersection number
//! `w`, so two transverse points are two edges and a tangency is one edge of
//! weight 2. Nodes and cusps of a single curve are per-vertex counters, and
//! `concurrent` lists triples of curves passing through one common point.

pub mod catalog;
mod iso;
pub mod recognize;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::base::{fmt_q, qi, Rational};
use crate::error::{invalid, Error, Result};

pub use catalog::{FibreKind, FibreTypeLabel, HalfCatalogLabel, KodairaLabel};
pub use recognize::{
    recognize_duval, recognize_fibre_type, recognize_half_catalog, recognize_kodaira,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Role {
    Exceptional,
    Strict,
    Fibre,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Exceptional => "EXCEPTIONAL",
            Role::Strict => "STRICT",
            Role::Fibre => "FIBRE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveVertex {
    #[serde(with = "id_str")]
    pub id: String,
    #[serde(default)]
    pub self_int: i64,
    #[serde(default)]
    pub genus: u32,
    #[serde(default = "one_u32")]
    pub mult: u32,
    #[serde(default = "Rational::zero", with = "crate::base::serde_q")]
    pub boundary: Rational,
    #[serde(default = "default_role")]
    pub role: Role,
}

fn one_u32() -> u32 {
    1
}

fn default_role() -> Role {
    Role::Exceptional
}

impl CurveVertex {
    pub fn new(id: impl Into<String>, self_int: i64, role: Role) -> Self {
        CurveVertex {
            id: id.into(),
            self_int,
            genus: 0,
            mult: 1,
            boundary: Rational::zero(),
            role,
        }
    }

    pub fn with_boundary(mut self, c: Rational) -> Self {
        self.boundary = c;
        self
    }

    pub fn with_mult(mut self, m: u32) -> Self {
        self.mult = m;
        self
    }

    pub fn with_genus(mut self, g: u32) -> Self {
        self.genus = g;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    #[serde(with = "id_str")]
    pub a: String,
    #[serde(with = "id_str")]
    pub b: String,
    #[serde(default = "one_u32")]
    pub w: u32,
}

/// Ids may be written as JSON strings or integers.
mod id_str {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(id: &str, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(id)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<String, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            S(String),
            I(i64),
        }
        Ok(match Raw::deserialize(d)? {
            Raw::S(s) => s,
            Raw::I(i) => i.to_string(),
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualGraph {
    pub vertices: Vec<CurveVertex>,
    #[serde(default)]
    pub edges: Vec<Edge>,
    /// Number of nodes on each curve.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tangency: BTreeMap<String, u32>,
    /// Number of ordinary cusps on each curve.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub cusps: BTreeMap<String, u32>,
    /// Triples of curves through a single point.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub concurrent: Vec<Vec<String>>,
}

pub type Matrix = Vec<Vec<i64>>;

impl DualGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let g: DualGraph = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        g.validate()?;
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serialises")
    }

    pub fn add_vertex(&mut self, v: CurveVertex) -> &mut Self {
        self.vertices.push(v);
        self
    }

    pub fn add_edge(&mut self, a: &str, b: &str, w: u32) -> &mut Self {
        self.edges.push(Edge {
            a: a.to_string(),
            b: b.to_string(),
            w,
        });
        self
    }

    pub fn validate(&self) -> Result<()> {
        let mut ids = BTreeSet::new();
        for v in &self.vertices {
            if !ids.insert(v.id.as_str()) {
                return invalid(format!("duplicate vertex id {:?}", v.id));
            }
            if v.boundary.is_negative() || v.boundary > Rational::one() {
                return invalid(format!("boundary coefficient of {:?} outside [0,1]", v.id));
            }
            if v.mult == 0 {
                return invalid(format!("multiplicity of {:?} must be positive", v.id));
            }
        }
        for e in &self.edges {
            if e.a == e.b {
                return invalid(format!("loop edge at {:?}; use the tangency counter", e.a));
            }
            if e.w == 0 {
                return invalid("edge weights must be >= 1");
            }
            for id in [&e.a, &e.b] {
                if !ids.contains(id.as_str()) {
                    return invalid(format!("edge refers to unknown vertex {id:?}"));
                }
            }
        }
        for id in self.tangency.keys().chain(self.cusps.keys()) {
            if !ids.contains(id.as_str()) {
                return invalid(format!("unknown vertex {id:?} in node/cusp counts"));
            }
        }
        for t in &self.concurrent {
            if t.len() != 3 || t.iter().any(|id| !ids.contains(id.as_str())) {
                return invalid("concurrent entries must name three known vertices");
            }
        }
        Ok(())
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn vertex(&self, id: &str) -> Option<&CurveVertex> {
        self.vertices.iter().find(|v| v.id == id)
    }

    pub fn ids_with_role(&self, role: Role) -> Vec<String> {
        self.vertices
            .iter()
            .filter(|v| v.role == role)
            .map(|v| v.id.clone())
            .collect()
    }

    pub fn nodes(&self, id: &str) -> u32 {
        self.tangency.get(id).copied().unwrap_or(0)
    }

    pub fn cusp_count(&self, id: &str) -> u32 {
        self.cusps.get(id).copied().unwrap_or(0)
    }

    /// Total intersection number of two distinct curves.
    pub fn dot(&self, a: &str, b: &str) -> i64 {
        self.edges
            .iter()
            .filter(|e| (e.a == a && e.b == b) || (e.a == b && e.b == a))
            .map(|e| e.w as i64)
            .sum()
    }

    /// Neighbours of `id` with the total weight towards each.
    pub fn neighbours(&self, id: &str) -> BTreeMap<String, i64> {
        let mut out = BTreeMap::new();
        for e in &self.edges {
            if e.a == id {
                *out.entry(e.b.clone()).or_insert(0) += e.w as i64;
            } else if e.b == id {
                *out.entry(e.a.clone()).or_insert(0) += e.w as i64;
            }
        }
        out
    }

    /// Arithmetic genus: geometric genus plus nodes and cusps.
    pub fn arithmetic_genus(&self, id: &str) -> i64 {
        let g = self.vertex(id).map_or(0, |v| v.genus as i64);
        g + self.nodes(id) as i64 + self.cusp_count(id) as i64
    }

    /// Topological Euler number of the union of all curves.
    ///
    /// Each curve contributes `2 - 2g - nodes`; each edge is one point;
    /// a concurrent triple merges its three pairwise points into one.
    pub fn topological_euler(&self) -> i64 {
        let curves: i64 = self
            .vertices
            .iter()
            .map(|v| 2 - 2 * v.genus as i64 - self.nodes(&v.id) as i64)
            .sum();
        curves - self.edges.len() as i64 + self.concurrent.len() as i64
    }
}

/// Intersection matrix on `subset`, in the given order.
pub fn intersection_matrix(g: &DualGraph, subset: &[String]) -> Result<Matrix> {
    for id in subset {
        if g.vertex(id).is_none() {
            return invalid(format!("unknown vertex {id:?}"));
        }
    }
    let n = subset.len();
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        m[i][i] = g.vertex(&subset[i]).map(|v| v.self_int).unwrap_or(0);
        for j in (i + 1)..n {
            let d = g.dot(&subset[i], &subset[j]);
            m[i][j] = d;
            m[j][i] = d;
        }
    }
    Ok(m)
}

fn check_symmetric(m: &Matrix) -> Result<()> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return invalid("matrix is not square");
        }
    }
    for i in 0..n {
        for j in 0..i {
            if m[i][j] != m[j][i] {
                return invalid("matrix is not symmetric");
            }
        }
    }
    Ok(())
}

/// Leading principal minors of `m`, computed by fraction-free elimination.
///
/// Stops early when a minor vanishes, since later pivots are then undefined;
/// the returned vector is shorter than `m` in that case.
pub fn leading_minors(m: &Matrix) -> Vec<BigInt> {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut minors = Vec::with_capacity(n);
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = a[k][k].clone();
        minors.push(pivot.clone());
        if pivot.is_zero() {
            break;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = (&pivot * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = pivot;
    }
    minors
}

pub fn determinant(m: &Matrix) -> BigInt {
    if m.is_empty() {
        return BigInt::one();
    }
    // full Bareiss with row pivoting
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match ((k + 1)..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * prev
}

/// True iff every leading principal minor of `-m` is positive.
pub fn is_negative_definite(m: &Matrix) -> Result<bool> {
    check_symmetric(m)?;
    let neg: Matrix = m.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
    let minors = leading_minors(&neg);
    Ok(minors.len() == m.len() && minors.iter().all(|d| d.is_positive()))
}

/// Solves `A x = b` over the rationals; `None` if `A` is singular.
pub(crate) fn solve_rational(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(pivot_row.iter()) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

/// Coefficients `a_i` with `K + sum_C coeff_C C + sum_i a_i E_i` numerically
/// trivial on every exceptional curve `E_j`.
///
/// The boundary values stored on exceptional vertices are ignored; those are
/// what this function computes. `K.E = 2p_a(E) - 2 - E^2`.
pub fn pullback_coefficients(g: &DualGraph) -> Result<BTreeMap<String, Rational>> {
    let exc = g.ids_with_role(Role::Exceptional);
    if exc.is_empty() {
        return Ok(BTreeMap::new());
    }
    let m = intersection_matrix(g, &exc)?;
    if !is_negative_definite(&m)? {
        return Err(Error::NotNegativeDefinite);
    }
    let a: Vec<Vec<Rational>> = m
        .iter()
        .map(|r| r.iter().map(|&x| qi(x)).collect())
        .collect();
    let mut rhs = Vec::with_capacity(exc.len());
    for (j, e) in exc.iter().enumerate() {
        let k_dot = 2 * g.arithmetic_genus(e) - 2 - m[j][j];
        let mut s = qi(k_dot);
        for v in g.vertices.iter().filter(|v| v.role != Role::Exceptional) {
            if !v.boundary.is_zero() {
                s += &v.boundary * qi(g.dot(&v.id, e));
            }
        }
        rhs.push(-s);
    }
    let x = solve_rational(&a, &rhs).ok_or(Error::NotNegativeDefinite)?;
    Ok(exc.into_iter().zip(x).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PairClass {
    Terminal,
    Canonical,
    Plt,
    Lt,
    Lc,
    NotLc,
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairClass::Terminal => "TERMINAL",
            PairClass::Canonical => "CANONICAL",
            PairClass::Plt => "PLT",
            PairClass::Lt => "LT",
            PairClass::Lc => "LC",
            PairClass::NotLc => "NOT_LC",
        })
    }
}

/// Singularity class of the pair read off the supplied resolution graph.
///
/// With `a_i` from [`pullback_coefficients`] (discrepancy `-a_i`):
/// some `a_i > 1` gives NOT_LC and `max a_i = 1` gives LC. Below that, a graph
/// with no boundary on non-exceptional curves is TERMINAL if every `a_i < 0`
/// and CANONICAL if every `a_i <= 0`. Otherwise the pair is PLT when the
/// coefficient-one curves are nonempty and pairwise separated, LC when two of
/// them are joined (directly or through exceptional curves), and LT when there
/// are none.
pub fn classify_pair(g: &DualGraph) -> Result<PairClass> {
    g.validate()?;
    let a = pullback_coefficients(g)?;
    let one = Rational::one();
    if a.values().any(|x| x > &one) {
        return Ok(PairClass::NotLc);
    }
    if a.values().any(|x| x == &one) {
        return Ok(PairClass::Lc);
    }
    let boundary: Vec<&CurveVertex> = g
        .vertices
        .iter()
        .filter(|v| v.role != Role::Exceptional && !v.boundary.is_zero())
        .collect();
    if boundary.is_empty() {
        if a.values().all(|x| x.is_negative()) {
            return Ok(PairClass::Terminal);
        }
        if a.values().all(|x| !x.is_positive()) {
            return Ok(PairClass::Canonical);
        }
        return Ok(PairClass::Lt);
    }
    let reduced: Vec<&str> = boundary
        .iter()
        .filter(|v| v.boundary.is_one())
        .map(|v| v.id.as_str())
        .collect();
    if reduced.is_empty() {
        return Ok(PairClass::Lt);
    }
    if reduced_components_separated(g, &reduced) {
        Ok(PairClass::Plt)
    } else {
        Ok(PairClass::Lc)
    }
}

/// No two reduced curves meet, nor are they linked by a path whose interior
/// is exceptional (which would make them meet on the contracted surface).
fn reduced_components_separated(g: &DualGraph, reduced: &[&str]) -> bool {
    for (i, &start) in reduced.iter().enumerate() {
        let mut seen: BTreeSet<String> = BTreeSet::new();
        let mut stack = vec![start.to_string()];
        seen.insert(start.to_string());
        while let Some(cur) = stack.pop() {
            for nb in g.neighbours(&cur).keys() {
                if reduced[i + 1..].contains(&nb.as_str()) {
                    return false;
                }
                let is_exc = g.vertex(nb).is_some_and(|v| v.role == Role::Exceptional);
                if is_exc && seen.insert(nb.clone()) {
                    stack.push(nb.clone());
                }
            }
        }
    }
    true
}

/// Contracts the exceptional (-1)-curve `v` (genus 0, transverse contacts).
///
/// Neighbours gain +1 self-intersection and every pair of former neighbours
/// gains a contact point at the image point.
pub fn blow_down(g: &DualGraph, v: &str) -> Result<DualGraph> {
    let vert = g
        .vertex(v)
        .ok_or_else(|| Error::InvalidInput(format!("unknown vertex {v:?}")))?;
    if vert.role != Role::Exceptional || vert.genus != 0 || vert.self_int != -1 {
        return invalid(format!("{v:?} is not an exceptional (-1)-curve"));
    }
    if g.nodes(v) > 0 || g.cusp_count(v) > 0 {
        return invalid(format!("{v:?} is singular"));
    }
    let incident: Vec<&Edge> = g.edges.iter().filter(|e| e.a == v || e.b == v).collect();
    if incident.iter().any(|e| e.w != 1) {
        return invalid(format!("{v:?} has a tangential contact"));
    }
    // one entry per contact point, so a neighbour met twice appears twice
    let points: Vec<String> = incident
        .iter()
        .map(|e| if e.a == v { e.b.clone() } else { e.a.clone() })
        .collect();
    let mut out = g.clone();
    out.vertices.retain(|x| x.id != v);
    out.edges.retain(|e| e.a != v && e.b != v);
    out.tangency.remove(v);
    out.cusps.remove(v);
    out.concurrent.retain(|t| !t.iter().any(|x| x == v));
    for p in &points {
        if let Some(x) = out.vertices.iter_mut().find(|x| &x.id == p) {
            x.self_int += 1;
        }
    }
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if points[i] == points[j] {
                // two branches of one curve now cross: a node
                *out.tangency.entry(points[i].clone()).or_insert(0) += 1;
            } else {
                out.add_edge(&points[i], &points[j], 1);
            }
        }
    }
    Ok(out)
}

/// Blows down exceptional (-1)-curves until none is left, always taking the
/// first one in vertex order. Stops early at a singular (-1)-curve.
pub fn contract_minus_one_curves(g: &DualGraph) -> Result<DualGraph> {
    let mut g = g.clone();
    loop {
        let next = g.vertices.iter().find(|v| {
            v.role == Role::Exceptional
                && v.self_int == -1
                && v.genus == 0
                && g.nodes(&v.id) == 0
                && g.cusp_count(&v.id) == 0
        });
        match next {
            Some(v) => {
                let id = v.id.clone();
                g = blow_down(&g, &id)?;
            }
            None => return Ok(g),
        }
    }
}

/// Renders a coefficient map as `id -> "p/q"`.
pub fn render_coefficients(a: &BTreeMap<String, Rational>) -> BTreeMap<String, String> {
    a.iter().map(|(k, v)| (k.clone(), fmt_q(v))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::q;

    fn chain(selfs: &[i64]) -> DualGraph {
        let mut g = DualGraph::new();
        for (i, &s) in selfs.iter().enumerate() {
            g.add_vertex(CurveVertex::new(format!("E{i}"), s, Role::Exceptional));
            if i > 0 {
                g.add_edge(&format!("E{}", i - 1), &format!("E{i}"), 1);
            }
        }
        g
    }

    fn ids(g: &DualGraph) -> Vec<String> {
        g.vertices.iter().map(|v| v.id.clone()).collect()
    }

    #[test]
    fn matrix_examples() {
        let g = chain(&[-2, -2]);
        assert_eq!(
            intersection_matrix(&g, &ids(&g)).unwrap(),
            vec![vec![-2, 1], vec![1, -2]]
        );
        let g = chain(&[-4]);
        assert_eq!(intersection_matrix(&g, &ids(&g)).unwrap(), vec![vec![-4]]);
        let mut g = chain(&[-2, -2]);
        g.add_edge("E0", "E1", 1);
        assert_eq!(
            intersection_matrix(&g, &ids(&g)).unwrap(),
            vec![vec![-2, 2], vec![2, -2]]
        );
        assert!(intersection_matrix(&g, &["nope".to_string()]).is_err());
    }

    #[test]
    fn definiteness_examples() {
        assert!(is_negative_definite(&vec![vec![-2, 1], vec![1, -2]]).unwrap());
        assert!(!is_negative_definite(&vec![vec![-2, 2], vec![2, -2]]).unwrap());
        assert!(is_negative_definite(&vec![vec![-1]]).unwrap());
        assert!(!is_negative_definite(&vec![vec![0]]).unwrap());
        assert!(is_negative_definite(&vec![vec![-2, 1], vec![0, -2]]).is_err());
    }

    #[test]
    fn determinant_matches_minors() {
        let m = intersection_matrix(
            &chain(&[-2, -3, -2]),
            &["E0".into(), "E1".into(), "E2".into()],
        )
        .unwrap();
        assert_eq!(determinant(&m), BigInt::from(-8));
        assert_eq!(determinant(&vec![vec![0, 1], vec![1, 0]]), BigInt::from(-1));
    }

    #[test]
    fn pullback_examples() {
        let a = pullback_coefficients(&chain(&[-4])).unwrap();
        assert_eq!(a["E0"], q(1, 2));
        let a = pullback_coefficients(&chain(&[-2, -2])).unwrap();
        assert!(a.values().all(|x| x.is_zero()));
        let mut g = chain(&[-2]);
        g.add_vertex(CurveVertex::new("C", 0, Role::Strict).with_boundary(qi(1)));
        g.add_edge("C", "E0", 1);
        assert_eq!(pullback_coefficients(&g).unwrap()["E0"], q(1, 2));
        let mut g = chain(&[-2, -2]);
        g.add_edge("E0", "E1", 1);
        assert_eq!(pullback_coefficients(&g), Err(Error::NotNegativeDefinite));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify_pair(&chain(&[-2, -2, -2])).unwrap(),
            PairClass::Canonical
        );
        assert_eq!(classify_pair(&chain(&[-4])).unwrap(), PairClass::Lt);
        assert_eq!(classify_pair(&chain(&[-1])).unwrap(), PairClass::Terminal);
        // (-2)-chain closed up by a reduced curve through both ends
        let mut g = chain(&[-2, -2, -2]);
        g.add_vertex(CurveVertex::new("C", 0, Role::Strict).with_boundary(qi(1)));
        g.add_edge("C", "E0", 1).add_edge("C", "E2", 1);
        assert!(pullback_coefficients(&g)
            .unwrap()
            .values()
            .all(|x| x.is_one()));
        assert_eq!(classify_pair(&g).unwrap(), PairClass::Lc);
        // one reduced curve through the end of an A_2 chain
        let mut g = chain(&[-2, -2]);
        g.add_vertex(CurveVertex::new("C", 0, Role::Strict).with_boundary(qi(1)));
        g.add_edge("C", "E0", 1);
        assert_eq!(classify_pair(&g).unwrap(), PairClass::Plt);
        // two reduced curves through the two ends of a chain meet on S
        g.add_vertex(CurveVertex::new("D", 0, Role::Strict).with_boundary(qi(1)));
        g.add_edge("D", "E1", 1);
        assert_eq!(classify_pair(&g).unwrap(), PairClass::Lc);
        // a (-1) curve through three reduced curves
        let mut g = chain(&[-1]);
        for c in ["C", "D", "F"] {
            g.add_vertex(CurveVertex::new(c, 0, Role::Strict).with_boundary(qi(1)));
            g.add_edge(c, "E0", 1);
        }
        assert_eq!(classify_pair(&g).unwrap(), PairClass::NotLc);
    }

    #[test]
    fn contraction_reaches_minimal_model() {
        // (-1) between two (-2): the cascade stops at a single 0-curve
        let g = chain(&[-2, -1, -2]);
        let h = contract_minus_one_curves(&g).unwrap();
        assert_eq!(h.vertices.len(), 1);
        assert_eq!(h.vertices[0].self_int, 0);
        let g = chain(&[-2, -2, -1]);
        assert!(contract_minus_one_curves(&g).unwrap().vertices.is_empty());
        let g = chain(&[-3, -1, -3]);
        let h = contract_minus_one_curves(&g).unwrap();
        assert_eq!(h.vertices.len(), 2);
        assert!(h.vertices.iter().all(|v| v.self_int == -2));
        assert_eq!(h.dot("E0", "E2"), 1);
    }

    #[test]
    fn blow_down_examples() {
        let mut g = chain(&[-2, -1, -2]);
        let h = blow_down(&g, "E1").unwrap();
        assert_eq!(h.vertex("E0").unwrap().self_int, -1);
        assert_eq!(h.vertex("E2").unwrap().self_int, -1);
        assert_eq!(h.dot("E0", "E2"), 1);
        let single = chain(&[-1]);
        assert!(blow_down(&single, "E0").unwrap().vertices.is_empty());
        g.edges[0].w = 2;
        assert!(blow_down(&g, "E1").is_err());
        assert!(blow_down(&chain(&[-2]), "E0").is_err());
    }

    #[test]
    fn json_roundtrip() {
        let text = r#"{"vertices":[{"id":"E","self_int":-4,"role":"EXCEPTIONAL"},
            {"id":1,"self_int":0,"boundary":"1/2","role":"STRICT"}],
            "edges":[{"a":"E","b":1}],"tangency":{"1":1}}"#;
        let g = DualGraph::from_json(text).unwrap();
        assert_eq!(g.vertex("1").unwrap().boundary, q(1, 2));
        assert_eq!(g.nodes("1"), 1);
        assert_eq!(g.edges[0].w, 1);
        let back = DualGraph::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        let err = DualGraph::from_json("{\"vertices\": [").unwrap_err();
        assert!(matches!(err, Error::Parse(ref m) if m.contains("line")));
        assert!(DualGraph::from_json(r#"{"vertices":[{"id":"a"},{"id":"a"}]}"#).is_err());
    }
}
