//! Recognition of dual graphs against the standard catalogs.
//!
//! Each recognizer builds the candidate templates of the right size and
//! tests for a labelled isomorphism. Nothing is inferred: a graph that is
//! not exactly one of the templates is reported as unrecognized.

use num_traits::Zero;

use super::catalog::{
    duval_graph, fibre_type_graph, half_catalog_graph, kodaira_graph, FibreKind, FibreTypeLabel,
    HalfCatalogLabel, KodairaLabel,
};
use super::iso::Shape;
use super::{DualGraph, Role};
use crate::base::{Rational, StandardCoeff};
use crate::duval::DuValType;

type CurveKey = (i64, u32, u32, u32);

fn curve_key(g: &DualGraph, i: usize) -> CurveKey {
    let v = &g.vertices[i];
    (v.self_int, v.genus, g.nodes(&v.id), g.cusp_count(&v.id))
}

fn subgraph(g: &DualGraph, keep: impl Fn(Role) -> bool) -> DualGraph {
    let mut out = DualGraph::new();
    for v in &g.vertices {
        if keep(v.role) {
            out.add_vertex(v.clone());
        }
    }
    let kept = |id: &str| out.index_of(id).is_some();
    let edges: Vec<_> = g
        .edges
        .iter()
        .filter(|e| kept(&e.a) && kept(&e.b))
        .cloned()
        .collect();
    let tangency = g
        .tangency
        .iter()
        .filter(|(k, _)| kept(k))
        .map(|(k, v)| (k.clone(), *v))
        .collect();
    let cusps = g
        .cusps
        .iter()
        .filter(|(k, _)| kept(k))
        .map(|(k, v)| (k.clone(), *v))
        .collect();
    let concurrent = g
        .concurrent
        .iter()
        .filter(|t| t.iter().all(|id| kept(id)))
        .cloned()
        .collect();
    out.edges = edges;
    out.tangency = tangency;
    out.cusps = cusps;
    out.concurrent = concurrent;
    out
}

fn same<L: Ord + Clone>(
    a: &DualGraph,
    b: &DualGraph,
    label: impl Fn(&DualGraph, usize) -> L,
) -> bool {
    let sa = Shape::of(a, &label);
    let sb = Shape::of(b, &label);
    sa.isomorphism(&sb).is_some()
}

/// Du Val type of the exceptional part of `g`, if it is a (-2)-tree of ADE
/// shape.
pub fn recognize_duval(g: &DualGraph) -> Option<DuValType> {
    let exc = subgraph(g, |r| r == Role::Exceptional);
    let n = exc.vertices.len() as u32;
    if n == 0 {
        return None;
    }
    let mut cands = vec![DuValType::a(n).ok()?];
    if n >= 4 {
        cands.push(DuValType::d(n).ok()?);
    }
    if (6..=8).contains(&n) {
        cands.push(DuValType::e(n).ok()?);
    }
    cands
        .into_iter()
        .find(|t| same(&exc, &duval_graph(*t), curve_key))
}

/// Kodaira type of the non-horizontal curves of `g`, multiplicities
/// included.
pub fn recognize_kodaira(g: &DualGraph) -> Option<KodairaLabel> {
    let f = subgraph(g, |r| r != Role::Strict);
    let label = |g: &DualGraph, i: usize| (curve_key(g, i), g.vertices[i].mult);
    KodairaLabel::with_component_count(f.vertices.len())
        .into_iter()
        .find(|l| same(&f, &kodaira_graph(*l), label))
}

fn annotated_key(g: &DualGraph, i: usize) -> (Role, CurveKey, Rational) {
    let v = &g.vertices[i];
    let key = if v.role == Role::Strict {
        (0, v.genus, g.nodes(&v.id), g.cusp_count(&v.id))
    } else {
        curve_key(g, i)
    };
    (v.role, key, v.boundary.clone())
}

/// Entry of the index-two catalog matching `g`. Exceptional vertices are
/// compared by self-intersection only; strict vertices must carry 1/2.
pub fn recognize_half_catalog(g: &DualGraph) -> Option<HalfCatalogLabel> {
    let n = g.vertices.len() as u32;
    let label = |g: &DualGraph, i: usize| {
        let (role, key, c) = annotated_key(g, i);
        if role == Role::Exceptional {
            (role, key, Rational::zero())
        } else {
            (role, key, c)
        }
    };
    HalfCatalogLabel::all(n)
        .into_iter()
        .filter(|l| half_catalog_graph(*l).vertices.len() as u32 == n)
        .find(|l| same(g, &half_catalog_graph(*l), label))
}

/// Fibre type of `g`. The unique `FIBRE` vertex fixes `b` through its
/// coefficient `(b-1)/b`; every annotation must then agree with the
/// template.
pub fn recognize_fibre_type(g: &DualGraph) -> Option<FibreTypeLabel> {
    let fibres = g.ids_with_role(Role::Fibre);
    if fibres.len() != 1 {
        return None;
    }
    let b = StandardCoeff::from_value(&g.vertex(&fibres[0])?.boundary)?;
    let exc = g.ids_with_role(Role::Exceptional).len() as u32;
    let mut cands = Vec::new();
    for kind in [
        FibreKind::I1,
        FibreKind::I2,
        FibreKind::I3,
        FibreKind::II1,
        FibreKind::II2,
    ] {
        cands.extend(FibreTypeLabel::new(kind, b, None));
    }
    if exc >= 3 {
        cands.extend(FibreTypeLabel::new(FibreKind::II3, b, Some(exc - 2)));
    }
    cands
        .into_iter()
        .find(|l| same(g, &fibre_type_graph(*l), annotated_key))
}
