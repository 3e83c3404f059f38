//! Induced-subgraph detection for the forbidden patterns and class
//! membership certificates.
//!
//! Patterns on at most five vertices are embedded by backtracking against a
//! stored adjacency matrix. Paths and holes use a dedicated extension search
//! that keeps the partial path induced. Both searches try candidates in
//! increasing vertex order, so the witness returned is the lexicographically
//! least vertex sequence in the pattern's canonical labelling.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ForbiddenPattern {
    P7,
    C4,
    C7,
    Diamond,
    Kite,
    Gem,
    Bull,
    Hole(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("hole length must be at least 4, got {0}")]
    HoleTooShort(usize),
    #[error("unknown pattern {0:?}")]
    Unknown(String),
}

// Canonical labellings. Diamond: 0 and 3 are the two degree-2 vertices.
// Kite: diamond plus 4 ~ 0. Gem: path 0-1-2-3 plus 4 ~ all. Bull: triangle
// 0,1,2 with pendants 3 ~ 0 and 4 ~ 1. C4: cycle 0-1-2-3.
const C4_EDGES: &[(usize, usize)] = &[(0, 1), (1, 2), (2, 3), (0, 3)];
const DIAMOND_EDGES: &[(usize, usize)] = &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)];
const KITE_EDGES: &[(usize, usize)] = &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (0, 4)];
const GEM_EDGES: &[(usize, usize)] =
    &[(0, 1), (1, 2), (2, 3), (0, 4), (1, 4), (2, 4), (3, 4)];
const BULL_EDGES: &[(usize, usize)] = &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 4)];

impl ForbiddenPattern {
    pub fn order(&self) -> usize {
        match self {
            ForbiddenPattern::P7 | ForbiddenPattern::C7 => 7,
            ForbiddenPattern::C4 | ForbiddenPattern::Diamond => 4,
            ForbiddenPattern::Kite | ForbiddenPattern::Gem | ForbiddenPattern::Bull => 5,
            ForbiddenPattern::Hole(k) => *k,
        }
    }

    /// The pattern as a graph in its canonical labelling.
    pub fn graph(&self) -> Graph {
        let small = |n, edges| Graph::from_edge_list(n, edges).expect("valid pattern");
        match self {
            ForbiddenPattern::P7 => Graph::path(7),
            ForbiddenPattern::C7 => Graph::cycle(7),
            ForbiddenPattern::Hole(k) => Graph::cycle(*k),
            ForbiddenPattern::C4 => small(4, C4_EDGES),
            ForbiddenPattern::Diamond => small(4, DIAMOND_EDGES),
            ForbiddenPattern::Kite => small(5, KITE_EDGES),
            ForbiddenPattern::Gem => small(5, GEM_EDGES),
            ForbiddenPattern::Bull => small(5, BULL_EDGES),
        }
    }

    fn small_edges(&self) -> Option<&'static [(usize, usize)]> {
        match self {
            ForbiddenPattern::C4 => Some(C4_EDGES),
            ForbiddenPattern::Diamond => Some(DIAMOND_EDGES),
            ForbiddenPattern::Kite => Some(KITE_EDGES),
            ForbiddenPattern::Gem => Some(GEM_EDGES),
            ForbiddenPattern::Bull => Some(BULL_EDGES),
            _ => None,
        }
    }
}

impl fmt::Display for ForbiddenPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ForbiddenPattern::P7 => f.write_str("P7"),
            ForbiddenPattern::C4 => f.write_str("C4"),
            ForbiddenPattern::C7 => f.write_str("C7"),
            ForbiddenPattern::Diamond => f.write_str("diamond"),
            ForbiddenPattern::Kite => f.write_str("kite"),
            ForbiddenPattern::Gem => f.write_str("gem"),
            ForbiddenPattern::Bull => f.write_str("bull"),
            ForbiddenPattern::Hole(k) => write!(f, "hole({k})"),
        }
    }
}

impl Serialize for ForbiddenPattern {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for ForbiddenPattern {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, PatternError> {
        let lower = s.to_ascii_lowercase();
        Ok(match lower.as_str() {
            "p7" => ForbiddenPattern::P7,
            "c4" => ForbiddenPattern::C4,
            "c7" => ForbiddenPattern::C7,
            "diamond" => ForbiddenPattern::Diamond,
            "kite" => ForbiddenPattern::Kite,
            "gem" => ForbiddenPattern::Gem,
            "bull" => ForbiddenPattern::Bull,
            _ => {
                let k = lower
                    .strip_prefix("hole(")
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|k| k.parse().ok())
                    .ok_or_else(|| PatternError::Unknown(s.to_string()))?;
                if k < 4 {
                    return Err(PatternError::HoleTooShort(k));
                }
                ForbiddenPattern::Hole(k)
            }
        })
    }
}

/// An induced copy of `pattern`: `vertices[i]` plays pattern vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternWitness {
    pub pattern: ForbiddenPattern,
    pub vertices: Vec<usize>,
}

impl PatternWitness {
    /// Checks that the listed vertices induce the pattern in the stated
    /// order.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let p = self.pattern.graph();
        let k = p.order();
        if self.vertices.len() != k || self.vertices.iter().any(|&v| v >= g.order()) {
            return false;
        }
        let distinct: VertexSet = self.vertices.iter().collect();
        if distinct.len() != k {
            return false;
        }
        (0..k).all(|i| {
            (i + 1..k).all(|j| p.has_edge(i, j) == g.has_edge(self.vertices[i], self.vertices[j]))
        })
    }
}

/// Finds an induced copy of `p`, or proves there is none.
pub fn find_induced_pattern(g: &Graph, p: ForbiddenPattern) -> Option<PatternWitness> {
    let vertices = match p {
        ForbiddenPattern::P7 => find_induced_path(g, 7),
        ForbiddenPattern::C7 => find_cycle(g, 7),
        ForbiddenPattern::Hole(k) => find_cycle(g, k),
        _ => embed_small(g, p.small_edges().expect("small pattern"), p.order()),
    }?;
    Some(PatternWitness {
        pattern: p,
        vertices,
    })
}

pub fn contains_pattern(g: &Graph, p: ForbiddenPattern) -> bool {
    find_induced_pattern(g, p).is_some()
}

/// A `k`-hole listed in cycle order.
pub fn find_hole(g: &Graph, k: usize) -> Result<Option<PatternWitness>, PatternError> {
    if k < 4 {
        return Err(PatternError::HoleTooShort(k));
    }
    Ok(find_cycle(g, k).map(|vertices| PatternWitness {
        pattern: ForbiddenPattern::Hole(k),
        vertices,
    }))
}

fn embed_small(g: &Graph, edges: &[(usize, usize)], k: usize) -> Option<Vec<usize>> {
    let mut adj = [[false; 5]; 5];
    for &(a, b) in edges {
        adj[a][b] = true;
        adj[b][a] = true;
    }
    let mut image = Vec::with_capacity(k);
    let all = g.vertices();
    if embed_rec(g, &adj, k, all, &mut image) {
        Some(image)
    } else {
        None
    }
}

fn embed_rec(
    g: &Graph,
    adj: &[[bool; 5]; 5],
    k: usize,
    all: VertexSet,
    image: &mut Vec<usize>,
) -> bool {
    let i = image.len();
    if i == k {
        return true;
    }
    let mut cand = all;
    for (j, &w) in image.iter().enumerate() {
        if adj[i][j] {
            cand &= *g.neighbors(w);
        } else {
            cand -= g.closed_neighbors(w);
        }
    }
    for v in cand.iter() {
        image.push(v);
        if embed_rec(g, adj, k, all, image) {
            return true;
        }
        image.pop();
    }
    false
}

/// An induced path on `k` vertices, in path order.
pub fn find_induced_path(g: &Graph, k: usize) -> Option<Vec<usize>> {
    if k == 0 {
        return Some(Vec::new());
    }
    let mut path = Vec::with_capacity(k);
    for start in 0..g.order() {
        path.push(start);
        // `blocked` is the union of closed neighborhoods of every path
        // vertex except the last one.
        if extend_path(g, k, &mut path, VertexSet::new()) {
            return Some(path);
        }
        path.pop();
    }
    None
}

fn extend_path(g: &Graph, k: usize, path: &mut Vec<usize>, blocked: VertexSet) -> bool {
    if path.len() == k {
        return true;
    }
    let last = *path.last().expect("nonempty path");
    let cand = *g.neighbors(last) - blocked - path.iter().collect::<VertexSet>();
    let next_blocked = blocked | g.closed_neighbors(last);
    for v in cand.iter() {
        path.push(v);
        if extend_path(g, k, path, next_blocked) {
            return true;
        }
        path.pop();
    }
    false
}

/// An induced cycle of length `k >= 4` in cycle order. The first vertex is
/// the minimum of the hole and the second is smaller than the last, which is
/// exactly the lexicographically least listing.
fn find_cycle(g: &Graph, k: usize) -> Option<Vec<usize>> {
    let mut found = None;
    visit_holes(g, k, &mut |cyc| {
        found = Some(cyc.to_vec());
        true
    });
    found
}

/// Every `k`-hole exactly once, each in its lexicographically least
/// listing, in increasing lexicographic order.
pub fn all_holes(g: &Graph, k: usize) -> Result<Vec<Vec<usize>>, PatternError> {
    if k < 4 {
        return Err(PatternError::HoleTooShort(k));
    }
    let mut out = Vec::new();
    visit_holes(g, k, &mut |cyc| {
        out.push(cyc.to_vec());
        false
    });
    Ok(out)
}

/// Calls `visit` on each canonical listing until it returns `true`.
fn visit_holes(g: &Graph, k: usize, visit: &mut dyn FnMut(&[usize]) -> bool) {
    debug_assert!(k >= 4);
    let n = g.order();
    if k > n {
        return;
    }
    let mut cyc = Vec::with_capacity(k);
    for v0 in 0..n {
        let above: VertexSet = g.vertices() - VertexSet::prefix(v0 + 1);
        cyc.push(v0);
        for v1 in (*g.neighbors(v0) & above).iter() {
            cyc.push(v1);
            // interior vertices must avoid N[v0]; the closing vertex must hit it
            if close_cycle(g, k, &mut cyc, g.closed_neighbors(v0), above, visit) {
                return;
            }
            cyc.pop();
        }
        cyc.pop();
    }
}

fn close_cycle(
    g: &Graph,
    k: usize,
    cyc: &mut Vec<usize>,
    blocked: VertexSet,
    above: VertexSet,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let len = cyc.len();
    let last = cyc[len - 1];
    let v0 = cyc[0];
    if len == k - 1 {
        // closing vertex: adjacent to last and v0, not to anything between,
        // and larger than v1 for the canonical orientation
        let mut cand = *g.neighbors(last) & *g.neighbors(v0) & above;
        for &w in &cyc[1..len - 1] {
            cand -= g.closed_neighbors(w);
        }
        cand -= VertexSet::prefix(cyc[1] + 1);
        for v in cand.iter() {
            cyc.push(v);
            let stop = visit(cyc);
            cyc.pop();
            if stop {
                return true;
            }
        }
        return false;
    }
    let cand = *g.neighbors(last) & (above - blocked);
    let next_blocked = blocked | g.closed_neighbors(last);
    for v in cand.iter() {
        cyc.push(v);
        if close_cycle(g, k, cyc, next_blocked, above, visit) {
            return true;
        }
        cyc.pop();
    }
    false
}

/// The three hereditary classes studied: `(P7, C4, X)`-free graphs for
/// `X` a diamond, kite or gem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphClass {
    Diamond,
    Kite,
    Gem,
}

impl GraphClass {
    pub const ALL: [GraphClass; 3] = [GraphClass::Diamond, GraphClass::Kite, GraphClass::Gem];

    pub fn third_pattern(&self) -> ForbiddenPattern {
        match self {
            GraphClass::Diamond => ForbiddenPattern::Diamond,
            GraphClass::Kite => ForbiddenPattern::Kite,
            GraphClass::Gem => ForbiddenPattern::Gem,
        }
    }

    /// Patterns in the order they are checked.
    pub fn patterns(&self) -> [ForbiddenPattern; 3] {
        [ForbiddenPattern::P7, ForbiddenPattern::C4, self.third_pattern()]
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphClass::Diamond => "diamond",
            GraphClass::Kite => "kite",
            GraphClass::Gem => "gem",
        })
    }
}

impl FromStr for GraphClass {
    type Err = PatternError;
    fn from_str(s: &str) -> Result<Self, PatternError> {
        match s.to_ascii_lowercase().as_str() {
            "diamond" => Ok(GraphClass::Diamond),
            "kite" => Ok(GraphClass::Kite),
            "gem" => Ok(GraphClass::Gem),
            _ => Err(PatternError::Unknown(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassCertificate {
    pub class: GraphClass,
    pub free: bool,
    pub witness: Option<PatternWitness>,
}

/// Checks P7, then C4, then the class's third pattern; the first witness
/// found refutes membership.
pub fn class_membership(g: &Graph, class: GraphClass) -> ClassCertificate {
    let witness = class
        .patterns()
        .into_iter()
        .find_map(|p| find_induced_pattern(g, p));
    ClassCertificate {
        class,
        free: witness.is_none(),
        witness,
    }
}

/// Membership only, checking the cheap patterns first.
pub fn is_member(g: &Graph, class: GraphClass) -> bool {
    !contains_pattern(g, ForbiddenPattern::C4)
        && !contains_pattern(g, class.third_pattern())
        && !contains_pattern(g, ForbiddenPattern::P7)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{g1, g4, graph_f, petersen};

    #[test]
    fn k4_has_no_diamond() {
        assert_eq!(find_induced_pattern(&Graph::complete(4), ForbiddenPattern::Diamond), None);
    }

    #[test]
    fn paths_in_cycles_and_paths() {
        assert_eq!(find_induced_pattern(&Graph::cycle(7), ForbiddenPattern::P7), None);
        let w = find_induced_pattern(&Graph::path(7), ForbiddenPattern::P7).unwrap();
        assert_eq!(w.vertices, (0..7).collect::<Vec<_>>());
    }

    #[test]
    fn diamond_in_g1() {
        let b = g1(2).unwrap();
        let w = find_induced_pattern(&b.graph, ForbiddenPattern::Diamond).unwrap();
        assert!(w.is_valid_in(&b.graph));
        // the shared edge lies in one class, the two tips in its neighbours
        let class_of = |v: usize| b.classes.iter().position(|c| c.contains(v)).unwrap();
        let (tip_a, mid1, mid2, tip_b) = (w.vertices[0], w.vertices[1], w.vertices[2], w.vertices[3]);
        assert_eq!(class_of(mid1), class_of(mid2));
        let m = class_of(mid1);
        let mut tips = [class_of(tip_a), class_of(tip_b)];
        tips.sort_unstable();
        let mut expect = [(m + 1) % 7, (m + 6) % 7];
        expect.sort_unstable();
        assert_eq!(tips, expect);
    }

    #[test]
    fn holes() {
        let w = find_hole(&Graph::cycle(7), 7).unwrap().unwrap();
        assert_eq!(w.vertices, (0..7).collect::<Vec<_>>());
        let p = petersen();
        assert_eq!(find_hole(&p, 4).unwrap(), None);
        let w5 = find_hole(&p, 5).unwrap().unwrap();
        assert!(w5.is_valid_in(&p));
        let wf = find_hole(&graph_f(), 7).unwrap().unwrap();
        assert_eq!(wf.vertices, (0..7).collect::<Vec<_>>());
        assert_eq!(find_hole(&p, 3), Err(PatternError::HoleTooShort(3)));
    }

    #[test]
    fn c4_matrix_and_cycle_search_agree() {
        let g = crate::families::g2(&[2; 7]).unwrap();
        let a = find_induced_pattern(&g, ForbiddenPattern::C4).unwrap();
        let b = find_hole(&g, 4).unwrap().unwrap();
        assert_eq!(a.vertices, b.vertices);
    }

    #[test]
    fn class_examples() {
        // F has no C4, diamond, kite or gem, but v1 v7 y3 v3 v4 v5 y2 is an induced P7
        let f = graph_f();
        for p in [ForbiddenPattern::C4, ForbiddenPattern::Diamond, ForbiddenPattern::Kite, ForbiddenPattern::Gem] {
            assert!(!contains_pattern(&f, p), "{p}");
        }
        let cf = class_membership(&f, GraphClass::Diamond);
        assert_eq!(cf.witness.unwrap().vertices, vec![0, 6, 9, 2, 3, 4, 8]);
        let g1 = g1(2).unwrap().graph;
        let c = class_membership(&g1, GraphClass::Diamond);
        assert!(!c.free);
        assert_eq!(c.witness.unwrap().pattern, ForbiddenPattern::Diamond);
        let k = class_membership(&g1, GraphClass::Kite);
        assert_eq!(k.witness.unwrap().pattern, ForbiddenPattern::Kite);
        let c = class_membership(&g4(), GraphClass::Kite);
        assert_eq!(c.witness.unwrap().pattern, ForbiddenPattern::P7);
    }

    #[test]
    fn parse_patterns() {
        assert_eq!("hole(6)".parse::<ForbiddenPattern>(), Ok(ForbiddenPattern::Hole(6)));
        assert_eq!("Gem".parse::<ForbiddenPattern>(), Ok(ForbiddenPattern::Gem));
        assert!("hole(3)".parse::<ForbiddenPattern>().is_err());
        assert_eq!(ForbiddenPattern::Hole(5).to_string(), "hole(5)");
    }

    #[test]
    fn pattern_orders() {
        for p in [
            ForbiddenPattern::P7,
            ForbiddenPattern::C4,
            ForbiddenPattern::C7,
            ForbiddenPattern::Diamond,
            ForbiddenPattern::Kite,
            ForbiddenPattern::Gem,
            ForbiddenPattern::Bull,
            ForbiddenPattern::Hole(9),
        ] {
            assert_eq!(p.graph().order(), p.order());
            let w = find_induced_pattern(&p.graph(), p).unwrap();
            assert!(w.is_valid_in(&p.graph()));
        }
    }
}
