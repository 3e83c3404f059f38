//! Exhaustive generation of small graphs up to isomorphism.
//!
//! Graphs on `n + 1` vertices are produced by attaching a new vertex to every
//! subset of each graph on `n` vertices, and duplicates are rejected by
//! canonical form. Every graph arises this way (delete any vertex), so the
//! output contains exactly one representative per isomorphism class. For a
//! hereditary property the same extension restricted to members yields all
//! members, which is how the larger class-restricted corpora are built.

use std::collections::HashSet;

use crate::graph::{Graph, VertexSet};
use crate::iso::{canonical_form, CANONICAL_MAX};

/// Largest `n` for which [`all_graphs`] is offered (12346 graphs at n = 8).
pub const EXHAUSTIVE_MAX: usize = 8;

/// One graph per isomorphism class on exactly `n` vertices.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= EXHAUSTIVE_MAX, "exhaustive enumeration is limited to n <= {EXHAUSTIVE_MAX}");
    hereditary_members(n, |_| true).pop().expect("level n present")
}

/// Connected graphs on exactly `n` vertices, one per isomorphism class.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n).into_iter().filter(Graph::is_connected).collect()
}

/// All graphs on `0..=max_n` vertices satisfying a hereditary predicate,
/// grouped by order: `result[k]` holds the members on `k` vertices.
///
/// The predicate must be closed under vertex deletion; otherwise members
/// whose every one-vertex-deleted subgraph fails it are missed.
pub fn hereditary_members<P>(max_n: usize, member: P) -> Vec<Vec<Graph>>
where
    P: Fn(&Graph) -> bool,
{
    assert!(max_n <= CANONICAL_MAX);
    let empty = Graph::empty(0).expect("empty graph");
    let mut levels = vec![if member(&empty) { vec![empty] } else { Vec::new() }];
    for _ in 0..max_n {
        let next = extend_level(levels.last().expect("level"), &member);
        levels.push(next);
    }
    levels
}

/// One-vertex extensions of `graphs` that satisfy `member`, deduplicated up
/// to isomorphism, in order of first discovery.
pub fn extend_level<P>(graphs: &[Graph], member: P) -> Vec<Graph>
where
    P: Fn(&Graph) -> bool,
{
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in graphs {
        let n = g.order();
        for mask in 0u32..1 << n {
            let nbrs: VertexSet = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let h = g.extend_with_vertex(&nbrs).expect("within size limit");
            if !member(&h) {
                continue;
            }
            if seen.insert(canonical_form(&h)) {
                out.push(h);
            }
        }
    }
    out
}
