//! Backtracking isomorphism test for small vertex-labelled multigraphs.

use std::collections::BTreeMap;

use super::DualGraph;

/// Graph in matching form: one label per vertex and, per unordered pair,
/// the sorted list of contact weights (so a tangency differs from two
/// transverse points).
pub(crate) struct Shape<L> {
    labels: Vec<L>,
    adj: Vec<Vec<Vec<u32>>>,
    concurrent: Vec<[usize; 3]>,
}

impl<L: Ord + Clone> Shape<L> {
    pub(crate) fn of(g: &DualGraph, label: impl Fn(&DualGraph, usize) -> L) -> Self {
        let n = g.vertices.len();
        let mut adj = vec![vec![Vec::new(); n]; n];
        let idx: BTreeMap<&str, usize> = g
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id.as_str(), i))
            .collect();
        for e in &g.edges {
            let (a, b) = (idx[e.a.as_str()], idx[e.b.as_str()]);
            adj[a][b].push(e.w);
            adj[b][a].push(e.w);
        }
        for row in adj.iter_mut() {
            for ws in row.iter_mut() {
                ws.sort_unstable();
            }
        }
        let concurrent = g
            .concurrent
            .iter()
            .map(|t| {
                let mut x = [idx[t[0].as_str()], idx[t[1].as_str()], idx[t[2].as_str()]];
                x.sort_unstable();
                x
            })
            .collect();
        Shape {
            labels: (0..n).map(|i| label(g, i)).collect(),
            adj,
            concurrent,
        }
    }

    fn degree_key(&self, i: usize) -> (L, Vec<Vec<u32>>) {
        let mut ws: Vec<Vec<u32>> = self.adj[i]
            .iter()
            .filter(|w| !w.is_empty())
            .cloned()
            .collect();
        ws.sort();
        (self.labels[i].clone(), ws)
    }

    /// A bijection `self -> other` preserving labels and contacts, if any.
    pub(crate) fn isomorphism(&self, other: &Shape<L>) -> Option<Vec<usize>> {
        let n = self.labels.len();
        if n != other.labels.len() || self.concurrent.len() != other.concurrent.len() {
            return None;
        }
        let mut ka: Vec<_> = (0..n).map(|i| self.degree_key(i)).collect();
        let mut kb: Vec<_> = (0..n).map(|i| other.degree_key(i)).collect();
        let keys_a = ka.clone();
        let keys_b = kb.clone();
        ka.sort();
        kb.sort();
        if ka != kb {
            return None;
        }
        // visit vertices in BFS order so each new vertex is constrained early
        let mut order = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        for s in 0..n {
            if placed[s] {
                continue;
            }
            placed[s] = true;
            order.push(s);
            let mut head = order.len() - 1;
            while head < order.len() {
                let u = order[head];
                head += 1;
                for v in 0..n {
                    if !placed[v] && !self.adj[u][v].is_empty() {
                        placed[v] = true;
                        order.push(v);
                    }
                }
            }
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        if self.extend(other, &order, 0, &keys_a, &keys_b, &mut map, &mut used) {
            Some(map)
        } else {
            None
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        &self,
        other: &Shape<L>,
        order: &[usize],
        depth: usize,
        keys_a: &[(L, Vec<Vec<u32>>)],
        keys_b: &[(L, Vec<Vec<u32>>)],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if depth == order.len() {
            return self.concurrent_match(other, map);
        }
        let u = order[depth];
        for cand in 0..other.labels.len() {
            if used[cand] || keys_a[u] != keys_b[cand] {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&w| self.adj[u][w] == other.adj[cand][map[w]]);
            if !consistent {
                continue;
            }
            map[u] = cand;
            used[cand] = true;
            if self.extend(other, order, depth + 1, keys_a, keys_b, map, used) {
                return true;
            }
            used[cand] = false;
            map[u] = usize::MAX;
        }
        false
    }

    fn concurrent_match(&self, other: &Shape<L>, map: &[usize]) -> bool {
        let mut mapped: Vec<[usize; 3]> = self
            .concurrent
            .iter()
            .map(|t| {
                let mut x = [map[t[0]], map[t[1]], map[t[2]]];
                x.sort_unstable();
                x
            })
            .collect();
        let mut theirs = other.concurrent.clone();
        mapped.sort_unstable();
        theirs.sort_unstable();
        mapped == theirs
    }
}
