//! Window-scale checks of the comparability-graph complement observations:
//! simple graphs on window elements, complements, and a backtracking
//! isomorphism search for small orders.

use crate::order::{ElementId, Family, Window};

/// Simple undirected graph on the elements of a window.
#[derive(Debug, Clone)]
pub struct SimpleGraph {
    pub vertices: Vec<ElementId>,
    adj: Vec<bool>,
}

impl SimpleGraph {
    pub fn new(vertices: Vec<ElementId>, edges: impl Fn(usize, usize) -> bool) -> Self {
        let n = vertices.len();
        let mut adj = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j && edges(i, j) {
                    adj[i * n + j] = true;
                    adj[j * n + i] = true;
                }
            }
        }
        SimpleGraph { vertices, adj }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.len() + j]
    }

    pub fn degree(&self, i: usize) -> usize {
        (0..self.len()).filter(|&j| self.has_edge(i, j)).count()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.len())
            .map(|i| (i + 1..self.len()).filter(|&j| self.has_edge(i, j)).count())
            .sum()
    }
}

/// Edges join comparable distinct window elements.
pub fn comparability_graph(w: &Window) -> SimpleGraph {
    SimpleGraph::new(w.elements().to_vec(), |i, j| {
        w.leq_idx(i, j) || w.leq_idx(j, i)
    })
}

/// Complement over all vertex pairs.
pub fn graph_complement(g: &SimpleGraph) -> SimpleGraph {
    let n = g.len();
    let mut adj = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j && !g.has_edge(i, j) {
                adj[i * n + j] = true;
            }
        }
    }
    SimpleGraph {
        vertices: g.vertices.clone(),
        adj,
    }
}

/// Complement only across a bipartition (edges within a part are left
/// untouched; the usual use leaves parts edgeless).
pub fn bipartite_complement(g: &SimpleGraph, in_first_part: impl Fn(&ElementId) -> bool) -> SimpleGraph {
    let part: Vec<bool> = g.vertices.iter().map(in_first_part).collect();
    let n = g.len();
    let mut adj = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let cross = part[i] != part[j];
            let edge = if cross { !g.has_edge(i, j) } else { g.has_edge(i, j) };
            if edge {
                adj[i * n + j] = true;
            }
        }
    }
    SimpleGraph {
        vertices: g.vertices.clone(),
        adj,
    }
}

/// Backtracking isomorphism search with degree pruning; intended for small
/// windows. Returns an explicit vertex bijection (indices of `h` per vertex
/// of `g`).
pub fn graphs_isomorphic(g: &SimpleGraph, h: &SimpleGraph) -> Option<Vec<usize>> {
    if g.len() != h.len() || g.edge_count() != h.edge_count() {
        return None;
    }
    let n = g.len();
    let mut deg_g: Vec<usize> = (0..n).map(|i| g.degree(i)).collect();
    let mut deg_h: Vec<usize> = (0..n).map(|i| h.degree(i)).collect();
    {
        let mut a = deg_g.clone();
        let mut b = deg_h.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return None;
        }
    }
    deg_g.truncate(n);
    deg_h.truncate(n);
    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        g: &SimpleGraph,
        h: &SimpleGraph,
        deg_g: &[usize],
        deg_h: &[usize],
        mapping: &mut Vec<usize>,
        used: &mut Vec<bool>,
        v: usize,
    ) -> bool {
        let n = g.len();
        if v == n {
            return true;
        }
        'cands: for c in 0..n {
            if used[c] || deg_g[v] != deg_h[c] {
                continue;
            }
            for prev in 0..v {
                if g.has_edge(v, prev) != h.has_edge(c, mapping[prev]) {
                    continue 'cands;
                }
            }
            mapping[v] = c;
            used[c] = true;
            if extend(g, h, deg_g, deg_h, mapping, used, v + 1) {
                return true;
            }
            used[c] = false;
            mapping[v] = usize::MAX;
        }
        false
    }
    if extend(g, h, &deg_g, &deg_h, &mut mapping, &mut used, 0) {
        Some(mapping)
    } else {
        None
    }
}

/// Verify an explicitly shipped bijection between two graphs.
pub fn check_bijection(g: &SimpleGraph, h: &SimpleGraph, mapping: &[usize]) -> bool {
    if g.len() != h.len() || mapping.len() != g.len() {
        return false;
    }
    let mut seen = vec![false; g.len()];
    for &m in mapping {
        if m >= g.len() || seen[m] {
            return false;
        }
        seen[m] = true;
    }
    for i in 0..g.len() {
        for j in 0..g.len() {
            if i != j && g.has_edge(i, j) != h.has_edge(mapping[i], mapping[j]) {
                return false;
            }
        }
    }
    true
}

/// Whether a window element sits in the `A` family of the two-level grid.
pub fn in_grid_lower_family(x: &ElementId) -> bool {
    x.family == Some(Family::A)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{forbidden, ForbiddenKind};
    use crate::order::{Presentation, Window};

    #[test]
    fn antichain_has_no_comparability_edges() {
        let w = Window::new(&Presentation::dinf(), 5);
        let g = comparability_graph(&w);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn complement_of_chain_window() {
        let w = Window::new(&Presentation::omega(), 4);
        let g = comparability_graph(&w);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(graph_complement(&g).edge_count(), 0);
    }

    #[test]
    fn f1_complement_matches_f4() {
        let kf1: ForbiddenKind = "F1".parse().unwrap();
        let kf4: ForbiddenKind = "F4".parse().unwrap();
        for n in [8u64, 10, 12] {
            let g = graph_complement(&comparability_graph(&Window::new(&forbidden(kf1), n)));
            let h = comparability_graph(&Window::new(&forbidden(kf4), n));
            let iso = graphs_isomorphic(&g, &h);
            assert!(iso.is_some(), "no isomorphism at window {n}");
            assert!(check_bijection(&g, &h, &iso.unwrap()));
        }
    }

    #[test]
    fn isomorphism_rejects_different_graphs() {
        let w1 = Window::new(&Presentation::omega(), 4);
        let w2 = Window::new(&Presentation::dinf(), 4);
        let g = comparability_graph(&w1);
        let h = comparability_graph(&w2);
        assert!(graphs_isomorphic(&g, &h).is_none());
    }
}
