//! Clique cutsets and atoms, bisimplicial vertices, universal-clique
//! peeling, clique-blowup recognition and the two exceptional graphs.

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::families::{graph_f, petersen};
use crate::graph::{Graph, VertexSet};
use crate::iso::find_isomorphism;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("input graph is disconnected")]
    Disconnected,
    #[error("invalid clique cutset split: {0}")]
    InvalidSplit(&'static str),
    #[error("blowup base has true twins {0} and {1}")]
    BaseHasTwins(usize, usize),
}

/// A clique `cutset` whose removal leaves `side_a` and `side_b` with no
/// edges between them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueCutsetSplit {
    pub cutset: VertexSet,
    pub side_a: VertexSet,
    pub side_b: VertexSet,
}

impl CliqueCutsetSplit {
    pub fn new(
        g: &Graph,
        cutset: VertexSet,
        side_a: VertexSet,
        side_b: VertexSet,
    ) -> Result<Self, StructureError> {
        if !g.is_clique(&cutset) {
            return Err(StructureError::InvalidSplit("cutset is not a clique"));
        }
        if side_a.is_empty() || side_b.is_empty() {
            return Err(StructureError::InvalidSplit("empty side"));
        }
        if cutset.intersects(&side_a) || cutset.intersects(&side_b) || side_a.intersects(&side_b) {
            return Err(StructureError::InvalidSplit("parts overlap"));
        }
        if (cutset | side_a | side_b) != g.vertices() {
            return Err(StructureError::InvalidSplit("parts do not cover the graph"));
        }
        if !g.is_anticomplete_to(&side_a, &side_b) {
            return Err(StructureError::InvalidSplit("edge between the two sides"));
        }
        Ok(CliqueCutsetSplit {
            cutset,
            side_a,
            side_b,
        })
    }

    pub fn block_a(&self) -> VertexSet {
        self.side_a | self.cutset
    }

    pub fn block_b(&self) -> VertexSet {
        self.side_b | self.cutset
    }
}

/// Minimal elimination ordering and its minimal triangulation, by MCS-M.
/// `order[i]` is the `i`-th vertex eliminated; `madj[v]` holds the
/// neighbours of `v` in the triangulation that are eliminated after `v`.
struct MinimalElimination {
    order: Vec<usize>,
    madj: Vec<VertexSet>,
}

fn mcs_m(g: &Graph) -> MinimalElimination {
    let n = g.order();
    let mut weight = vec![0usize; n];
    let mut numbered = VertexSet::new();
    let mut picked = Vec::with_capacity(n);
    let mut tri_nbrs = vec![VertexSet::new(); n];
    for _ in 0..n {
        // unnumbered vertex of maximum weight, lowest index on ties
        let v = (0..n)
            .filter(|&v| !numbered.contains(v))
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .expect("unnumbered vertex");
        // every unnumbered u reachable from v through unnumbered vertices of
        // weight < w(u) gains a (possibly fill) edge to v
        let mut reached = numbered;
        reached.insert(v);
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        let mut gain = VertexSet::new();
        for u in (*g.neighbors(v) - numbered).iter() {
            reached.insert(u);
            buckets[weight[u]].push(u);
            gain.insert(u);
        }
        for j in 0..=n {
            while let Some(y) = buckets[j].pop() {
                for z in (*g.neighbors(y) - reached).iter() {
                    reached.insert(z);
                    if weight[z] > j {
                        buckets[weight[z]].push(z);
                        gain.insert(z);
                    } else {
                        buckets[j].push(z);
                    }
                }
            }
        }
        for z in gain.iter() {
            weight[z] += 1;
            tri_nbrs[z].insert(v);
            tri_nbrs[v].insert(z);
        }
        numbered.insert(v);
        picked.push(v);
    }
    // the vertex numbered last (picked first) is eliminated last
    let order: Vec<usize> = picked.into_iter().rev().collect();
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let madj = (0..n)
        .map(|v| {
            tri_nbrs[v]
                .iter()
                .filter(|&w| position[w] > position[v])
                .collect()
        })
        .collect();
    MinimalElimination { order, madj }
}

/// A clique cutset of a connected graph, if one exists.
///
/// The clique minimal separators of `G` are exactly the minimal separators
/// of a minimal triangulation that are cliques in `G`, and each of those is
/// `madj(x)` for some vertex `x` of the minimal elimination ordering. Any
/// clique cutset contains a clique minimal separator, so testing those
/// candidates is complete. Other `madj` sets are discarded even when they
/// separate, and the lexicographically least clique minimal separator is
/// returned; `side_a` is the component of `G - K` holding
/// the lowest-index vertex outside `K`.
pub fn find_clique_cutset(g: &Graph) -> Result<Option<CliqueCutsetSplit>, StructureError> {
    if !g.is_connected() {
        return Err(StructureError::Disconnected);
    }
    let meo = mcs_m(g);
    let mut best: Option<Vec<usize>> = None;
    for &x in &meo.order {
        let s = meo.madj[x];
        if s.is_empty() || !g.is_clique(&s) {
            continue;
        }
        if !is_minimal_separator(g, &s) {
            continue;
        }
        let key = s.to_vec();
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    }
    Ok(best.map(|k| split_at(g, k.iter().collect())))
}

/// `s` is a minimal separator iff `G - S` has two components in which every
/// vertex of `S` has a neighbour.
fn is_minimal_separator(g: &Graph, s: &VertexSet) -> bool {
    g.components_within(&(g.vertices() - *s))
        .iter()
        .filter(|c| s.iter().all(|v| g.neighbors(v).intersects(c)))
        .count()
        >= 2
}

fn split_at(g: &Graph, cutset: VertexSet) -> CliqueCutsetSplit {
    let rest = g.vertices() - cutset;
    let comps = g.components_within(&rest);
    let side_a = comps[0];
    CliqueCutsetSplit::new(g, cutset, side_a, rest - side_a).expect("valid clique cutset split")
}

pub fn has_clique_cutset(g: &Graph) -> bool {
    if !g.is_connected() {
        // the empty clique already separates
        return g.order() > 0;
    }
    matches!(find_clique_cutset(g), Ok(Some(_)))
}

/// Binary tree of clique-cutset splits. Vertex sets refer to the input
/// graph's indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AtomDecomposition {
    Atom {
        vertices: VertexSet,
    },
    Split {
        split: CliqueCutsetSplit,
        left: Box<AtomDecomposition>,
        right: Box<AtomDecomposition>,
    },
}

impl AtomDecomposition {
    /// Leaf vertex sets, left to right.
    pub fn atoms(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut Vec<VertexSet>) {
        match self {
            AtomDecomposition::Atom { vertices } => out.push(*vertices),
            AtomDecomposition::Split { left, right, .. } => {
                left.collect_atoms(out);
                right.collect_atoms(out);
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            AtomDecomposition::Atom { .. } => 0,
            AtomDecomposition::Split { left, right, .. } => 1 + left.depth().max(right.depth()),
        }
    }
}

/// Recursively splits along clique cutsets; children are
/// `G[side_a ∪ K]` and `G[side_b ∪ K]`.
pub fn decompose_into_atoms(g: &Graph) -> Result<AtomDecomposition, StructureError> {
    if !g.is_connected() {
        return Err(StructureError::Disconnected);
    }
    if g.order() == 0 {
        return Ok(AtomDecomposition::Atom {
            vertices: VertexSet::new(),
        });
    }
    Ok(decompose_rec(g, &(0..g.order()).collect::<Vec<_>>()))
}

fn decompose_rec(g: &Graph, map: &[usize]) -> AtomDecomposition {
    let lift = |s: &VertexSet| s.iter().map(|v| map[v]).collect::<VertexSet>();
    match find_clique_cutset(g).expect("blocks of a connected graph are connected") {
        None => AtomDecomposition::Atom {
            vertices: lift(&g.vertices()),
        },
        Some(split) => {
            let child = |block: VertexSet| {
                let sub = g.induced_subgraph(&block).expect("nonempty block");
                let sub_map: Vec<usize> = sub.map.iter().map(|&v| map[v]).collect();
                decompose_rec(&sub.graph, &sub_map)
            };
            let left = child(split.block_a());
            let right = child(split.block_b());
            AtomDecomposition::Split {
                split: CliqueCutsetSplit {
                    cutset: lift(&split.cutset),
                    side_a: lift(&split.side_a),
                    side_b: lift(&split.side_b),
                },
                left: Box::new(left),
                right: Box::new(right),
            }
        }
    }
}

/// `N(vertex) = clique1 ∪ clique2`, both cliques. `clique2` may be empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BisimplicialCertificate {
    pub vertex: usize,
    pub clique1: VertexSet,
    pub clique2: VertexSet,
}

impl BisimplicialCertificate {
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        (self.clique1 | self.clique2) == *g.neighbors(self.vertex)
            && g.is_clique(&self.clique1)
            && g.is_clique(&self.clique2)
    }
}

/// Splits `N(v)` into two cliques if possible: that is a proper 2-coloring
/// of the complement of `G[N(v)]`.
pub fn bisimplicial_split(g: &Graph, v: usize) -> Option<BisimplicialCertificate> {
    let nbhd = *g.neighbors(v);
    let mut side = [VertexSet::new(), VertexSet::new()];
    let mut left = nbhd;
    while let Some(start) = left.first() {
        side[0].insert(start);
        left.remove(start);
        let mut frontier = vec![(start, 0usize)];
        while let Some((u, s)) = frontier.pop() {
            // non-neighbours of u inside N(v) must go to the other clique
            let anti = nbhd - g.closed_neighbors(u);
            if anti.intersects(&side[s]) {
                return None;
            }
            for w in (anti & left).iter() {
                side[1 - s].insert(w);
                left.remove(w);
                frontier.push((w, 1 - s));
            }
        }
    }
    Some(BisimplicialCertificate {
        vertex: v,
        clique1: side[0],
        clique2: side[1],
    })
}

/// The lowest-index bisimplicial vertex.
pub fn find_bisimplicial(g: &Graph) -> Option<BisimplicialCertificate> {
    (0..g.order()).find_map(|v| bisimplicial_split(g, v))
}

/// `G = K_ell + G[remainder]` with every universal vertex peeled.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeelResult {
    pub ell: usize,
    pub peeled: VertexSet,
    pub remainder: VertexSet,
}

pub fn peel_universal_clique(g: &Graph) -> PeelResult {
    let n = g.order();
    let peeled: VertexSet = (0..n).filter(|&v| g.degree(v) + 1 == n).collect();
    PeelResult {
        ell: peeled.len(),
        peeled,
        remainder: g.vertices() - peeled,
    }
}

/// `classes[i]` is the clique replacing base vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlowupCertificate {
    #[serde(skip)]
    pub base: Graph,
    pub classes: Vec<VertexSet>,
}

impl BlowupCertificate {
    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(VertexSet::len).collect()
    }

    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let k = self.base.order();
        if self.classes.len() != k || self.classes.iter().any(VertexSet::is_empty) {
            return false;
        }
        let mut union = VertexSet::new();
        for c in &self.classes {
            if union.intersects(c) || !g.is_clique(c) {
                return false;
            }
            union |= *c;
        }
        union == g.vertices()
            && (0..k).all(|i| {
                (i + 1..k).all(|j| {
                    if self.base.has_edge(i, j) {
                        g.is_complete_to(&self.classes[i], &self.classes[j])
                    } else {
                        g.is_anticomplete_to(&self.classes[i], &self.classes[j])
                    }
                })
            })
    }
}

/// True twins: `N[u] = N[v]`.
pub fn true_twin_classes(g: &Graph) -> Vec<VertexSet> {
    let mut classes: Vec<(VertexSet, VertexSet)> = Vec::new();
    for v in 0..g.order() {
        let closed = g.closed_neighbors(v);
        match classes.iter_mut().find(|(key, _)| *key == closed) {
            Some((_, members)) => members.insert(v),
            None => classes.push((closed, VertexSet::singleton(v))),
        }
    }
    classes.into_iter().map(|(_, m)| m).collect()
}

/// Recognises `g` as a clique blowup of a twin-free `base`. For a twin-free
/// base the blowup classes are exactly the true-twin classes of `g`.
pub fn recognize_clique_blowup(
    g: &Graph,
    base: &Graph,
) -> Result<Option<BlowupCertificate>, StructureError> {
    if let Some(twins) = true_twin_classes(base).iter().find(|c| c.len() > 1) {
        let v = twins.to_vec();
        return Err(StructureError::BaseHasTwins(v[0], v[1]));
    }
    let classes = true_twin_classes(g);
    if classes.len() != base.order() {
        return Ok(None);
    }
    let reps: VertexSet = classes.iter().map(|c| c.first().expect("nonempty")).collect();
    let quotient = g.induced_subgraph(&reps).expect("nonempty");
    // quotient vertex i is reps in increasing order; find its class
    let class_of_rep: Vec<VertexSet> = quotient
        .map
        .iter()
        .map(|&r| *classes.iter().find(|c| c.contains(r)).expect("class"))
        .collect();
    let Some(f) = find_isomorphism(base, &quotient.graph) else {
        return Ok(None);
    };
    let cert = BlowupCertificate {
        base: base.clone(),
        classes: (0..base.order()).map(|i| class_of_rep[f[i]]).collect(),
    };
    debug_assert!(cert.is_valid_in(g));
    Ok(Some(cert))
}

pub fn recognize_petersen_blowup(g: &Graph) -> Option<BlowupCertificate> {
    if g.order() < 10 {
        return None;
    }
    recognize_clique_blowup(g, reference_petersen()).expect("Petersen graph is twin-free")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FixedGraph {
    Petersen,
    F,
}

impl fmt::Display for FixedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FixedGraph::Petersen => "Petersen",
            FixedGraph::F => "F",
        })
    }
}

impl FixedGraph {
    pub fn reference(&self) -> &'static Graph {
        match self {
            FixedGraph::Petersen => reference_petersen(),
            FixedGraph::F => reference_f(),
        }
    }
}

fn reference_petersen() -> &'static Graph {
    static CELL: OnceLock<Graph> = OnceLock::new();
    CELL.get_or_init(petersen)
}

fn reference_f() -> &'static Graph {
    static CELL: OnceLock<Graph> = OnceLock::new();
    CELL.get_or_init(graph_f)
}

/// Whether `g` is the Petersen graph or `F`, with the isomorphism from the
/// reference copy into `g`.
pub fn recognize_fixed_with_map(g: &Graph) -> Option<(FixedGraph, Vec<usize>)> {
    if g.order() != 10 {
        return None;
    }
    [FixedGraph::Petersen, FixedGraph::F]
        .into_iter()
        .find_map(|name| find_isomorphism(name.reference(), g).map(|f| (name, f)))
}

pub fn recognize_fixed(g: &Graph) -> Option<FixedGraph> {
    recognize_fixed_with_map(g).map(|(name, _)| name)
}
