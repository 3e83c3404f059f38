//! Exact maximum clique by bitset branch and bound with a greedy-coloring
//! bound (the MCQ scheme).

use crate::graph::{Graph, VertexSet};

/// `ω(G)`; zero for the empty graph.
pub fn max_clique_size(g: &Graph) -> usize {
    max_clique(g).len()
}

/// A maximum clique of `g`.
pub fn max_clique(g: &Graph) -> VertexSet {
    max_clique_within(g, &g.vertices())
}

/// A maximum clique of `G[within]`.
pub fn max_clique_within(g: &Graph, within: &VertexSet) -> VertexSet {
    let mut search = Search {
        g,
        current: Vec::new(),
        best: VertexSet::new(),
        best_len: 0,
    };
    search.expand(*within);
    search.best
}

struct Search<'a> {
    g: &'a Graph,
    current: Vec<usize>,
    best: VertexSet,
    best_len: usize,
}

impl Search<'_> {
    fn expand(&mut self, mut candidates: VertexSet) {
        let (order, bounds) = self.color_sort(candidates);
        for idx in (0..order.len()).rev() {
            if self.current.len() + bounds[idx] <= self.best_len {
                return;
            }
            let v = order[idx];
            self.current.push(v);
            let next = candidates & *self.g.neighbors(v);
            if next.is_empty() {
                if self.current.len() > self.best_len {
                    self.best_len = self.current.len();
                    self.best = self.current.iter().collect();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            candidates.remove(v);
        }
    }

    /// Greedy sequential coloring of the candidates; returns vertices in
    /// nondecreasing color order with the color (an upper bound on the
    /// clique size among the prefix) of each.
    fn color_sort(&self, candidates: VertexSet) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(candidates.len());
        let mut bounds = Vec::with_capacity(candidates.len());
        let mut uncolored = candidates;
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut available = uncolored;
            while let Some(v) = available.first() {
                available.remove(v);
                available -= *self.g.neighbors(v);
                uncolored.remove(v);
                order.push(v);
                bounds.push(color);
            }
        }
        (order, bounds)
    }
}
