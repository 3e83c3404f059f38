//! Exact chromatic number. Only used to validate the constructive colorings,
//! so it refuses graphs above a small size limit.

use thiserror::Error;

use crate::clique::max_clique;
use crate::graph::Graph;

pub const DEFAULT_ORACLE_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("graph has {n} vertices, oracle limit is {limit}")]
pub struct OracleLimitExceeded {
    pub n: usize,
    pub limit: usize,
}

pub fn exact_chromatic_number(g: &Graph) -> Result<usize, OracleLimitExceeded> {
    exact_chromatic_number_with_limit(g, DEFAULT_ORACLE_LIMIT)
}

pub fn exact_chromatic_number_with_limit(
    g: &Graph,
    limit: usize,
) -> Result<usize, OracleLimitExceeded> {
    Ok(optimal_coloring(g, limit)?
        .iter()
        .copied()
        .max()
        .unwrap_or(0) as usize)
}

/// A minimum proper coloring with colors `1..=χ`, found by trying
/// `k = ω, ω+1, ..` with DSATUR-ordered backtracking.
pub fn optimal_coloring(g: &Graph, limit: usize) -> Result<Vec<u32>, OracleLimitExceeded> {
    let n = g.order();
    // colors are tracked in a u64 mask
    if n > limit || n > 63 {
        return Err(OracleLimitExceeded { n, limit: limit.min(63) });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let clique = max_clique(g);
    for k in clique.len()..=n {
        let mut colors = vec![0u32; n];
        // the clique gets 1..=|K| up front; this loses no generality
        for (c, v) in clique.iter().enumerate() {
            colors[v] = c as u32 + 1;
        }
        if backtrack(g, &mut colors, k as u32, clique.len() as u32) {
            return Ok(colors);
        }
    }
    unreachable!("n colors always suffice")
}

fn backtrack(g: &Graph, colors: &mut [u32], k: u32, used: u32) -> bool {
    let Some(v) = pick_vertex(g, colors) else {
        return true;
    };
    let mut forbidden = 0u64;
    for w in g.neighbors(v).iter() {
        if colors[w] != 0 {
            forbidden |= 1 << colors[w];
        }
    }
    let top = (used + 1).min(k);
    for c in 1..=top {
        if forbidden >> c & 1 == 1 {
            continue;
        }
        colors[v] = c;
        if backtrack(g, colors, k, used.max(c)) {
            return true;
        }
    }
    colors[v] = 0;
    false
}

/// Uncolored vertex of maximum saturation, then maximum uncolored degree,
/// then lowest index.
fn pick_vertex(g: &Graph, colors: &[u32]) -> Option<usize> {
    let mut best: Option<(u32, usize, usize)> = None;
    for v in (0..g.order()).filter(|&v| colors[v] == 0) {
        let mut seen = 0u64;
        let mut free_degree = 0;
        for w in g.neighbors(v).iter() {
            if colors[w] == 0 {
                free_degree += 1;
            } else {
                seen |= 1 << colors[w];
            }
        }
        let key = (seen.count_ones(), free_degree, v);
        if best.is_none_or(|(s, d, _)| (key.0, key.1) > (s, d)) {
            best = Some(key);
        }
    }
    best.map(|(_, _, v)| v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_and_cliques() {
        assert_eq!(exact_chromatic_number(&Graph::cycle(7)), Ok(3));
        assert_eq!(exact_chromatic_number(&Graph::cycle(6)), Ok(2));
        assert_eq!(exact_chromatic_number(&Graph::complete(5)), Ok(5));
        assert_eq!(exact_chromatic_number(&Graph::empty(4).unwrap()), Ok(1));
        assert_eq!(exact_chromatic_number(&Graph::empty(0).unwrap()), Ok(0));
    }

    #[test]
    fn limit_enforced() {
        assert_eq!(
            exact_chromatic_number(&Graph::cycle(17)),
            Err(OracleLimitExceeded { n: 17, limit: 16 })
        );
        assert_eq!(exact_chromatic_number_with_limit(&Graph::cycle(17), 20), Ok(3));
    }

    #[test]
    fn optimal_coloring_is_proper() {
        let g = Graph::cycle(5).join_with_clique(2).unwrap();
        let c = optimal_coloring(&g, 16).unwrap();
        assert!(g.edges().iter().all(|&(u, v)| c[u] != c[v]));
        assert_eq!(c.iter().max(), Some(&5));
    }
}
