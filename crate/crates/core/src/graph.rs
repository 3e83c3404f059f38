//! Immutable simple graphs over `0..n` with bit-matrix adjacency.

use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Not, Sub, SubAssign};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::GraphError;

/// Largest vertex count a [`Graph`] may have.
pub const MAX_VERTICES: usize = 512;
const WORDS: usize = MAX_VERTICES / 64;

/// A set of vertex indices, stored as a fixed-width bitset.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet {
    words: [u64; WORDS],
}

impl VertexSet {
    pub const fn new() -> Self {
        VertexSet { words: [0; WORDS] }
    }

    pub fn singleton(v: usize) -> Self {
        let mut s = Self::new();
        s.insert(v);
        s
    }

    /// The set `{0, .., n-1}`.
    pub fn prefix(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        let mut s = Self::new();
        for (w, word) in s.words.iter_mut().enumerate() {
            let lo = w * 64;
            if n >= lo + 64 {
                *word = u64::MAX;
            } else if n > lo {
                *word = (1u64 << (n - lo)) - 1;
            }
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.words[v >> 6] |= 1u64 << (v & 63);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.words[v >> 6] &= !(1u64 << (v & 63));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < MAX_VERTICES && self.words[v >> 6] & (1u64 << (v & 63)) != 0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    #[inline]
    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .any(|(a, b)| a & b != 0)
    }

    /// Smallest member.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> Iter {
        Iter {
            words: self.words,
            word: 0,
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for v in self.iter() {
            seq.serialize_element(&v)?;
        }
        seq.end()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl<'a> FromIterator<&'a usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = &'a usize>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

pub struct Iter {
    words: [u64; WORDS],
    word: usize,
}

impl Iterator for Iter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        while self.word < WORDS {
            let w = self.words[self.word];
            if w != 0 {
                let bit = w.trailing_zeros() as usize;
                self.words[self.word] = w & (w - 1);
                return Some(self.word * 64 + bit);
            }
            self.word += 1;
        }
        None
    }
}

impl IntoIterator for &VertexSet {
    type Item = usize;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

macro_rules! set_op {
    ($tr:ident, $method:ident, $assign_tr:ident, $assign_method:ident, |$a:ident, $b:ident| $e:expr) => {
        impl $tr for VertexSet {
            type Output = VertexSet;
            #[inline]
            fn $method(mut self, rhs: VertexSet) -> VertexSet {
                self.$assign_method(rhs);
                self
            }
        }
        impl $assign_tr for VertexSet {
            #[inline]
            fn $assign_method(&mut self, rhs: VertexSet) {
                for ($a, $b) in self.words.iter_mut().zip(rhs.words.iter()) {
                    *$a = $e;
                }
            }
        }
    };
}

set_op!(BitAnd, bitand, BitAndAssign, bitand_assign, |a, b| *a & b);
set_op!(BitOr, bitor, BitOrAssign, bitor_assign, |a, b| *a | b);
set_op!(Sub, sub, SubAssign, sub_assign, |a, b| *a & !b);

impl Not for VertexSet {
    type Output = VertexSet;
    /// Complement within the full `MAX_VERTICES` universe; intersect with a
    /// vertex set before use.
    fn not(mut self) -> VertexSet {
        for w in self.words.iter_mut() {
            *w = !*w;
        }
        self
    }
}

/// A finite simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<VertexSet>,
}

/// An induced subgraph together with the map from its vertices back to the
/// parent graph (`map[i]` is the parent index of local vertex `i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub map: Vec<usize>,
}

/// A clique blowup together with the class of each base vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blowup {
    pub graph: Graph,
    pub classes: Vec<VertexSet>,
}

/// Summary numbers of a graph. `chi` is only filled in by the exact oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub omega: usize,
    pub chi: Option<usize>,
    pub delta: usize,
    pub connected: bool,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices {
                n,
                max: MAX_VERTICES,
            });
        }
        Ok(Graph {
            n,
            rows: vec![VertexSet::new(); n],
        })
    }

    /// Builds the simple graph with exactly the given edges. Duplicates (in
    /// either orientation) are merged; self-loops are rejected.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::EndpointOutOfRange {
                    vertex: u.max(v),
                    n,
                });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n).expect("size within limit");
        for v in 0..n {
            g.rows[v] = VertexSet::prefix(n);
            g.rows[v].remove(v);
        }
        g
    }

    /// The cycle `0-1-..-(n-1)-0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &edges).expect("valid cycle")
    }

    /// The path `0-1-..-(n-1)`.
    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edge_list(n, &edges).expect("valid path")
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u].remove(v);
        self.rows[v].remove(u);
    }

    /// Returns a copy with the edge `uv` added.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        if u >= self.n || v >= self.n {
            return Err(GraphError::EndpointOutOfRange {
                vertex: u.max(v),
                n: self.n,
            });
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let mut g = self.clone();
        g.add_edge(u, v);
        Ok(g)
    }

    /// Returns a copy with the edge `uv` removed (no-op if absent).
    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        if u < self.n && v < self.n {
            g.remove_edge(u, v);
        }
        g
    }

    /// Number of vertices.
    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.rows.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    /// `N[v]`.
    #[inline]
    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        let mut s = self.rows[v];
        s.insert(v);
        s
    }

    /// `M(v) = V \ N[v]`.
    pub fn non_neighbors(&self, v: usize) -> VertexSet {
        self.vertices() - self.closed_neighbors(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].len()
    }

    /// All vertices as a set.
    pub fn vertices(&self) -> VertexSet {
        VertexSet::prefix(self.n)
    }

    /// `δ(G)`; zero for the empty graph.
    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<_> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for u in 0..self.n {
            for v in self.rows[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    /// `N(X)`: vertices outside `X` with a neighbor in `X`.
    pub fn neighborhood_of_set(&self, set: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new();
        for v in set.iter() {
            out |= self.rows[v];
        }
        out - *set
    }

    /// `M(X) = V \ (X ∪ N(X))`.
    pub fn non_neighborhood_of_set(&self, set: &VertexSet) -> VertexSet {
        self.vertices() - *set - self.neighborhood_of_set(set)
    }

    pub fn is_clique(&self, set: &VertexSet) -> bool {
        set.iter().all(|v| {
            let mut rest = *set;
            rest.remove(v);
            rest.is_subset(&self.rows[v])
        })
    }

    pub fn is_stable(&self, set: &VertexSet) -> bool {
        set.iter().all(|v| !self.rows[v].intersects(set))
    }

    /// Every vertex of `x` is adjacent to every vertex of `y`.
    pub fn is_complete_to(&self, x: &VertexSet, y: &VertexSet) -> bool {
        x.iter().all(|v| (*y - VertexSet::singleton(v)).is_subset(&self.rows[v]))
    }

    /// No edge between `x` and `y`.
    pub fn is_anticomplete_to(&self, x: &VertexSet, y: &VertexSet) -> bool {
        x.iter().all(|v| !self.rows[v].intersects(y))
    }

    /// Connected components of `G[within]`, each as a vertex set, ordered by
    /// smallest member.
    pub fn components_within(&self, within: &VertexSet) -> Vec<VertexSet> {
        let mut left = *within;
        let mut out = Vec::new();
        while let Some(start) = left.first() {
            let mut comp = VertexSet::singleton(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = VertexSet::new();
                for v in frontier.iter() {
                    next |= self.rows[v];
                }
                next &= *within;
                next -= comp;
                comp |= next;
                frontier = next;
            }
            left -= comp;
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(&self.vertices())
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// `G[set]`, relabelled to `0..|set|` in increasing order of parent index.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Result<InducedSubgraph, GraphError> {
        if set.is_empty() {
            return Err(GraphError::EmptyVertexSet);
        }
        if let Some(bad) = set.iter().find(|&v| v >= self.n) {
            return Err(GraphError::EndpointOutOfRange {
                vertex: bad,
                n: self.n,
            });
        }
        let map = set.to_vec();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let mut graph = Graph::empty(map.len())?;
        for (i, &v) in map.iter().enumerate() {
            for w in (self.rows[v] & *set).iter() {
                graph.rows[i].insert(index[w]);
            }
        }
        Ok(InducedSubgraph { graph, map })
    }

    /// `G - v`.
    pub fn delete_vertex(&self, v: usize) -> InducedSubgraph {
        let mut keep = self.vertices();
        keep.remove(v);
        if keep.is_empty() {
            return InducedSubgraph {
                graph: Graph::empty(0).expect("empty graph"),
                map: Vec::new(),
            };
        }
        self.induced_subgraph(&keep).expect("nonempty subset")
    }

    /// `K_ell + G`: the new clique occupies indices `n..n+ell`.
    pub fn join_with_clique(&self, ell: usize) -> Result<Graph, GraphError> {
        let total = self.n + ell;
        let mut g = Graph::empty(total)?;
        for v in 0..self.n {
            g.rows[v] = self.rows[v];
        }
        for u in self.n..total {
            for v in 0..total {
                if u != v {
                    g.add_edge(u, v);
                }
            }
        }
        Ok(g)
    }

    /// The clique blowup replacing base vertex `i` by a clique of
    /// `sizes[i]` vertices. Classes are laid out consecutively in base order.
    pub fn clique_blowup(&self, sizes: &[usize]) -> Result<Blowup, GraphError> {
        if sizes.len() != self.n {
            return Err(GraphError::SizeMismatch {
                expected: self.n,
                got: sizes.len(),
            });
        }
        if let Some(i) = sizes.iter().position(|&s| s == 0) {
            return Err(GraphError::ZeroBlowupSize(i));
        }
        let total: usize = sizes.iter().sum();
        let mut g = Graph::empty(total)?;
        let mut classes = Vec::with_capacity(self.n);
        let mut start = 0;
        for &s in sizes {
            classes.push((start..start + s).collect::<VertexSet>());
            start += s;
        }
        for i in 0..self.n {
            for a in classes[i].iter() {
                let mut row = classes[i];
                for j in self.rows[i].iter() {
                    row |= classes[j];
                }
                row.remove(a);
                g.rows[a] = row;
            }
        }
        Ok(Blowup { graph: g, classes })
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n).expect("same size");
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n).expect("same size");
        let all = self.vertices();
        for v in 0..self.n {
            let mut row = all - self.rows[v];
            row.remove(v);
            g.rows[v] = row;
        }
        g
    }

    /// Adds one vertex (index `n`) adjacent to `nbrs`.
    pub fn extend_with_vertex(&self, nbrs: &VertexSet) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(self.n + 1)?;
        for v in 0..self.n {
            g.rows[v] = self.rows[v];
        }
        for u in nbrs.iter() {
            if u >= self.n {
                return Err(GraphError::EndpointOutOfRange { vertex: u, n: self.n });
            }
            g.add_edge(u, self.n);
        }
        Ok(g)
    }

    /// Exact `ω`, `δ` and connectivity; `chi` is left empty.
    pub fn stats(&self) -> GraphStats {
        GraphStats {
            n: self.n,
            m: self.size(),
            omega: crate::clique::max_clique_size(self),
            chi: None,
            delta: self.min_degree(),
            connected: self.is_connected(),
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_from_edges() {
        let g = Graph::from_edge_list(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(g, Graph::complete(3));
    }

    #[test]
    fn seven_cycle_degrees() {
        let edges: Vec<_> = (0..7).map(|i| (i, (i + 1) % 7)).collect();
        let g = Graph::from_edge_list(7, &edges).unwrap();
        assert!((0..7).all(|v| g.degree(v) == 2));
        assert_eq!(g.size(), 7);
    }

    #[test]
    fn diamond_misses_only_zero_three() {
        let g = Graph::from_edge_list(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(g, Graph::complete(4).without_edge(0, 3));
    }

    #[test]
    fn edge_list_errors() {
        assert_eq!(
            Graph::from_edge_list(3, &[(0, 3)]),
            Err(GraphError::EndpointOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(Graph::from_edge_list(3, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert!(Graph::empty(MAX_VERTICES + 1).is_err());
    }

    #[test]
    fn duplicate_edges_merge() {
        let g = Graph::from_edge_list(2, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.size(), 1);
    }

    #[test]
    fn induced_consecutive_cycle_vertices_is_path() {
        let c7 = Graph::cycle(7);
        let sub = c7.induced_subgraph(&[0, 1, 2].iter().collect()).unwrap();
        assert_eq!(sub.graph, Graph::path(3));
        assert_eq!(sub.map, vec![0, 1, 2]);
        assert_eq!(
            c7.induced_subgraph(&VertexSet::new()),
            Err(GraphError::EmptyVertexSet)
        );
    }

    #[test]
    fn induced_on_everything_is_identity() {
        let g = Graph::complete(4).without_edge(0, 3);
        assert_eq!(g.induced_subgraph(&g.vertices()).unwrap().graph, g);
    }

    #[test]
    fn join_basics() {
        let k1 = Graph::complete(1);
        assert_eq!(k1.join_with_clique(0).unwrap(), k1);
        assert_eq!(k1.join_with_clique(1).unwrap(), Graph::complete(2));
    }

    #[test]
    fn blowup_of_seven_cycle() {
        let b = Graph::cycle(7).clique_blowup(&[2; 7]).unwrap();
        assert_eq!(b.graph.order(), 14);
        assert_eq!(b.graph.min_degree(), 5);
        assert_eq!(crate::clique::max_clique_size(&b.graph), 4);
        assert!(b.classes.iter().all(|c| b.graph.is_clique(c)));
        assert_eq!(
            Graph::cycle(3).clique_blowup(&[1, 0, 1]).unwrap_err(),
            GraphError::ZeroBlowupSize(1)
        );
    }

    #[test]
    fn trivial_blowup_is_identity() {
        let g = Graph::cycle(5);
        assert_eq!(g.clique_blowup(&[1; 5]).unwrap().graph, g);
    }

    #[test]
    fn components_and_sets() {
        let g = Graph::from_edge_list(5, &[(0, 1), (3, 4)]).unwrap();
        let comps = g.components();
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[1].to_vec(), vec![2]);
        assert!(!g.is_connected());
        let x: VertexSet = [0].iter().collect();
        assert_eq!(g.neighborhood_of_set(&x).to_vec(), vec![1]);
        assert_eq!(g.non_neighborhood_of_set(&x).to_vec(), vec![2, 3, 4]);
    }

    #[test]
    fn vertex_set_ops() {
        let a: VertexSet = [1, 5, 70, 300].iter().collect();
        let b: VertexSet = [5, 300, 511].iter().collect();
        assert_eq!((a & b).to_vec(), vec![5, 300]);
        assert_eq!((a - b).to_vec(), vec![1, 70]);
        assert_eq!((a | b).len(), 5);
        assert_eq!(VertexSet::prefix(130).len(), 130);
        assert_eq!(b.first(), Some(5));
        assert!(!a.contains(600));
    }
}
