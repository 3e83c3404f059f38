//! Certified colorings for the three classes.
//!
//! Each coloring is built recursively (components, clique cutsets, the
//! exceptional graphs, then one vertex elimination or a Petersen blowup) and
//! the recursion is recorded as a post-order trace. [`replay`] runs the trace
//! as a stack machine against the graph and must reproduce the assignment.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::clique::{max_clique_size, max_clique_within};
use crate::graph::{Graph, VertexSet};
use crate::io::write_graph6;
use crate::iso::find_isomorphism;
use crate::patterns::{class_membership, GraphClass, PatternWitness};
use crate::structure::{
    find_bisimplicial, find_clique_cutset, recognize_fixed_with_map, recognize_petersen_blowup,
    BlowupCertificate, CliqueCutsetSplit, FixedGraph, StructureError,
};

/// Which bound a certificate claims.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ColoringScope {
    /// `max{3, ω}`
    Diamond,
    /// `ω + 1`
    Kite,
    /// `2ω - 1`
    Gem,
    /// `⌈5ω/4⌉`
    PetersenBlowup,
}

impl ColoringScope {
    pub fn bound(&self, omega: usize) -> usize {
        match self {
            ColoringScope::Diamond => omega.max(3),
            ColoringScope::Kite => omega + 1,
            ColoringScope::Gem => (2 * omega).saturating_sub(1),
            ColoringScope::PetersenBlowup => (5 * omega).div_ceil(4),
        }
    }

    pub fn class(&self) -> Option<GraphClass> {
        match self {
            ColoringScope::Diamond => Some(GraphClass::Diamond),
            ColoringScope::Kite => Some(GraphClass::Kite),
            ColoringScope::Gem => Some(GraphClass::Gem),
            ColoringScope::PetersenBlowup => None,
        }
    }
}

impl From<GraphClass> for ColoringScope {
    fn from(c: GraphClass) -> Self {
        match c {
            GraphClass::Diamond => ColoringScope::Diamond,
            GraphClass::Kite => ColoringScope::Kite,
            GraphClass::Gem => ColoringScope::Gem,
        }
    }
}

impl fmt::Display for ColoringScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ColoringScope::Diamond => "diamond",
            ColoringScope::Kite => "kite",
            ColoringScope::Gem => "gem",
            ColoringScope::PetersenBlowup => "petersen-blowup",
        })
    }
}

/// One derivation step. Steps that combine colorings pop their operands
/// from the replay stack; all vertex indices refer to the input graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "kebab-case")]
pub enum TraceStep {
    /// Push a single vertex with color 1.
    Vertex { vertex: usize },
    /// Pop `count` colorings of disjoint components and push their union.
    Components { count: usize },
    /// Pop the colorings of `side_b ∪ K` and `side_a ∪ K`, recolor the first
    /// by `permutation` (old, new) and push the union.
    Merge {
        cutset: Vec<usize>,
        permutation: Vec<(u32, u32)>,
    },
    /// Push the stored coloring of an exceptional graph: reference vertex
    /// `i` is `vertices[i]` and gets `colors[i]`.
    Exceptional {
        graph: FixedGraph,
        vertices: Vec<usize>,
        colors: Vec<u32>,
    },
    /// Pop a coloring and give each peeled universal vertex a fresh color,
    /// starting at `first_color`.
    Peel { vertices: Vec<usize>, first_color: u32 },
    /// Pop a coloring and give `vertex` the least color missing from its
    /// neighbourhood.
    Eliminate { vertex: usize, color: u32, budget: usize },
    /// Push a blowup coloring: color `c` is the base independent set
    /// `cover[c - 1]`, taking the next unused vertex of each listed class.
    BlowupColor {
        classes: Vec<Vec<usize>>,
        cover: Vec<Vec<usize>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColoringCertificate {
    pub scope: ColoringScope,
    /// `assignment[v]` in `1..=colors_used`.
    pub assignment: Vec<u32>,
    pub colors_used: usize,
    #[serde(rename = "bound")]
    pub claimed_bound: usize,
    pub omega: usize,
    pub trace: Vec<TraceStep>,
}

impl ColoringCertificate {
    /// Checks properness, the bound and that the trace replays to the same
    /// assignment.
    pub fn verify(&self, g: &Graph) -> Result<(), ColoringError> {
        check_proper(g, &self.assignment)?;
        let used = self.assignment.iter().copied().max().unwrap_or(0) as usize;
        if used != self.colors_used {
            return Err(ColoringError::Replay(format!(
                "colors_used is {} but the assignment uses {used}",
                self.colors_used
            )));
        }
        let omega = max_clique_size(g);
        if omega != self.omega || self.claimed_bound != self.scope.bound(omega) {
            return Err(ColoringError::Replay("recorded ω or bound is wrong".into()));
        }
        if used > self.claimed_bound {
            return Err(ColoringError::BoundViolated {
                used,
                bound: self.claimed_bound,
                graph6: write_graph6(g),
            });
        }
        if replay(g, &self.trace)? != self.assignment {
            return Err(ColoringError::Replay("trace replays to a different assignment".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("graph is not in the {class} class: contains {}", .witness.pattern)]
    NotMember {
        class: GraphClass,
        witness: PatternWitness,
    },
    #[error("structural contradiction in the {class} class on {graph6}: {reason}")]
    StructuralContradiction {
        class: GraphClass,
        graph6: String,
        subgraph: Vec<usize>,
        reason: String,
        trace: Vec<TraceStep>,
    },
    #[error("{used} colors exceed the bound {bound} on {graph6}")]
    BoundViolated {
        used: usize,
        bound: usize,
        graph6: String,
    },
    #[error("adjacent vertices {0} and {1} share a color")]
    Improper(usize, usize),
    #[error("vertex {0} is uncolored")]
    Uncolored(usize),
    #[error("vertex {vertex} has degree {degree}, budget {budget} requires fewer")]
    DegreeBudget {
        vertex: usize,
        degree: usize,
        budget: usize,
    },
    #[error("invalid blowup certificate: {0}")]
    InvalidBlowup(&'static str),
    #[error("trace replay failed: {0}")]
    Replay(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// Proper 3-colorings of the reference Petersen graph and `F`, found once by
/// exhaustive search.
pub const PETERSEN_COLORING: [u32; 10] = [1, 2, 1, 3, 2, 3, 1, 2, 2, 3];
pub const F_COLORING: [u32; 10] = [3, 1, 2, 3, 2, 1, 2, 1, 3, 3];

pub fn stored_coloring(name: FixedGraph) -> &'static [u32; 10] {
    match name {
        FixedGraph::Petersen => &PETERSEN_COLORING,
        FixedGraph::F => &F_COLORING,
    }
}

fn check_proper(g: &Graph, assignment: &[u32]) -> Result<(), ColoringError> {
    if assignment.len() != g.order() {
        return Err(ColoringError::Replay("assignment has the wrong length".into()));
    }
    if let Some(v) = assignment.iter().position(|&c| c == 0) {
        return Err(ColoringError::Uncolored(v));
    }
    match g.edges().into_iter().find(|&(u, v)| assignment[u] == assignment[v]) {
        Some((u, v)) => Err(ColoringError::Improper(u, v)),
        None => Ok(()),
    }
}

/// Colors `v` with the least color absent from its colored neighbours.
/// `coloring` uses 0 for uncolored vertices and must leave `v` uncolored.
pub fn greedy_extend(
    g: &Graph,
    coloring: &mut [u32],
    v: usize,
    budget: usize,
) -> Result<u32, ColoringError> {
    let colored: Vec<usize> = g.neighbors(v).iter().filter(|&w| coloring[w] != 0).collect();
    if colored.len() >= budget {
        return Err(ColoringError::DegreeBudget {
            vertex: v,
            degree: colored.len(),
            budget,
        });
    }
    let taken: HashSet<u32> = colored.iter().map(|&w| coloring[w]).collect();
    let color = (1..).find(|c| !taken.contains(c)).expect("finite");
    coloring[v] = color;
    Ok(color)
}

/// `(old, new)` color pairs.
pub type Recoloring = Vec<(u32, u32)>;

/// Combines colorings of the two blocks of a clique cutset split. `cb` is
/// recolored so that it agrees with `ca` on the cutset; colors of `cb` that
/// do not appear on the cutset move to the least colors unused there, in
/// order. Returns the union and the recoloring of `cb` as (old, new) pairs.
pub fn merge_across_cutset(
    g: &Graph,
    split: &CliqueCutsetSplit,
    ca: &[u32],
    cb: &[u32],
) -> Result<(Vec<u32>, Recoloring), ColoringError> {
    for (coloring, block) in [(ca, split.block_a()), (cb, split.block_b())] {
        for v in block.iter() {
            if coloring[v] == 0 {
                return Err(ColoringError::Uncolored(v));
            }
            if let Some(w) = (*g.neighbors(v) & block).iter().find(|&w| coloring[w] == coloring[v]) {
                return Err(ColoringError::Improper(v.min(w), v.max(w)));
            }
        }
    }
    let mut b_colors: Vec<u32> = split.block_b().iter().map(|v| cb[v]).collect();
    b_colors.sort_unstable();
    b_colors.dedup();
    let on_cut: Vec<(u32, u32)> = split.cutset.iter().map(|v| (cb[v], ca[v])).collect();
    let fixed_targets: HashSet<u32> = on_cut.iter().map(|&(_, t)| t).collect();
    let mut free = (1..).filter(|c| !fixed_targets.contains(c));
    let permutation: Vec<(u32, u32)> = b_colors
        .iter()
        .map(|&c| match on_cut.iter().find(|&&(old, _)| old == c) {
            Some(&(_, t)) => (c, t),
            None => (c, free.next().expect("infinite")),
        })
        .collect();
    let mut merged = ca.to_vec();
    for v in split.side_b.iter() {
        let old = cb[v];
        merged[v] = permutation.iter().find(|&&(o, _)| o == old).expect("mapped").1;
    }
    Ok((merged, permutation))
}

struct Engine<'a> {
    g: &'a Graph,
    class: GraphClass,
    trace: Vec<TraceStep>,
}

impl Engine<'_> {
    fn contradiction(&self, s: VertexSet, reason: String) -> ColoringError {
        ColoringError::StructuralContradiction {
            class: self.class,
            graph6: write_graph6(self.g),
            subgraph: s.to_vec(),
            reason,
            trace: self.trace.clone(),
        }
    }

    fn rec(&mut self, s: VertexSet) -> Result<Vec<u32>, ColoringError> {
        let g = self.g;
        let n = g.order();
        let comps = g.components_within(&s);
        if comps.len() > 1 {
            let mut acc = vec![0; n];
            for c in &comps {
                let part = self.rec(*c)?;
                for v in c.iter() {
                    acc[v] = part[v];
                }
            }
            self.trace.push(TraceStep::Components { count: comps.len() });
            return Ok(acc);
        }
        if s.len() == 1 {
            let v = s.first().expect("one vertex");
            let mut acc = vec![0; n];
            acc[v] = 1;
            self.trace.push(TraceStep::Vertex { vertex: v });
            return Ok(acc);
        }
        let sub = g.induced_subgraph(&s).expect("nonempty");
        let lift = |x: &VertexSet| x.iter().map(|v| sub.map[v]).collect::<VertexSet>();
        if let Some(local) = find_clique_cutset(&sub.graph)? {
            let split = CliqueCutsetSplit {
                cutset: lift(&local.cutset),
                side_a: lift(&local.side_a),
                side_b: lift(&local.side_b),
            };
            let ca = self.rec(split.block_a())?;
            let cb = self.rec(split.block_b())?;
            let (merged, permutation) = merge_across_cutset(g, &split, &ca, &cb)?;
            self.trace.push(TraceStep::Merge {
                cutset: split.cutset.to_vec(),
                permutation,
            });
            return Ok(merged);
        }
        match self.class {
            GraphClass::Diamond => self.diamond_atom(s, &sub.graph, &sub.map),
            GraphClass::Kite => self.kite_atom(s),
            GraphClass::Gem => self.gem_atom(s, &sub.graph, &sub.map),
        }
    }

    fn exceptional(&mut self, sub: &Graph, map: &[usize]) -> Option<Vec<u32>> {
        let (name, f) = recognize_fixed_with_map(sub)?;
        let vertices: Vec<usize> = f.iter().map(|&x| map[x]).collect();
        let colors = stored_coloring(name).to_vec();
        let mut acc = vec![0; self.g.order()];
        for (&v, &c) in vertices.iter().zip(&colors) {
            acc[v] = c;
        }
        self.trace.push(TraceStep::Exceptional {
            graph: name,
            vertices,
            colors,
        });
        Some(acc)
    }

    fn eliminate(&mut self, s: VertexSet, v: usize, budget: usize) -> Result<Vec<u32>, ColoringError> {
        let mut rest = s;
        rest.remove(v);
        let mut acc = self.rec(rest)?;
        let color = greedy_extend(self.g, &mut acc, v, budget)?;
        self.trace.push(TraceStep::Eliminate {
            vertex: v,
            color,
            budget,
        });
        Ok(acc)
    }

    fn min_degree_vertex(&self, s: VertexSet) -> (usize, usize) {
        s.iter()
            .map(|v| (v, (*self.g.neighbors(v) & s).len()))
            .min_by_key(|&(v, d)| (d, v))
            .expect("nonempty")
    }

    fn diamond_atom(&mut self, s: VertexSet, sub: &Graph, map: &[usize]) -> Result<Vec<u32>, ColoringError> {
        if let Some(acc) = self.exceptional(sub, map) {
            return Ok(acc);
        }
        let omega = max_clique_within(self.g, &s).len();
        let (v, d) = self.min_degree_vertex(s);
        let allowed = 2.max(omega.saturating_sub(1));
        if d > allowed {
            return Err(self.contradiction(
                s,
                format!("atom with minimum degree {d} > max{{2, ω - 1}} = {allowed}, not Petersen or F"),
            ));
        }
        self.eliminate(s, v, ColoringScope::Diamond.bound(omega))
    }

    fn kite_atom(&mut self, s: VertexSet) -> Result<Vec<u32>, ColoringError> {
        let g = self.g;
        let peeled: VertexSet = s.iter().filter(|&v| (s - *g.neighbors(v)).len() == 1).collect();
        let remainder = s - peeled;
        if !remainder.is_empty() {
            let rem = g.induced_subgraph(&remainder).expect("nonempty");
            if let Some(mut acc) = self.exceptional(&rem.graph, &rem.map) {
                if !peeled.is_empty() {
                    let first = acc.iter().copied().max().unwrap_or(0) + 1;
                    for (k, v) in peeled.iter().enumerate() {
                        acc[v] = first + k as u32;
                    }
                    self.trace.push(TraceStep::Peel {
                        vertices: peeled.to_vec(),
                        first_color: first,
                    });
                }
                return Ok(acc);
            }
        }
        let omega = max_clique_within(g, &s).len();
        let (v, d) = self.min_degree_vertex(s);
        if d > omega {
            return Err(self.contradiction(
                s,
                format!("atom with δ = {d} > ω = {omega} whose peeled remainder is neither Petersen nor F"),
            ));
        }
        self.eliminate(s, v, ColoringScope::Kite.bound(omega))
    }

    fn gem_atom(&mut self, s: VertexSet, sub: &Graph, map: &[usize]) -> Result<Vec<u32>, ColoringError> {
        if let Some(cert) = recognize_petersen_blowup(sub) {
            let classes: Vec<VertexSet> = cert
                .classes
                .iter()
                .map(|c| c.iter().map(|v| map[v]).collect())
                .collect();
            let sizes: [usize; 10] = std::array::from_fn(|i| classes[i].len());
            let cover = petersen_cover(&sizes);
            let acc = assign_cover(self.g.order(), &classes, &cover);
            self.trace.push(TraceStep::BlowupColor {
                classes: classes.iter().map(VertexSet::to_vec).collect(),
                cover: cover.iter().map(|&m| mask_members(m)).collect(),
            });
            return Ok(acc);
        }
        let Some(b) = find_bisimplicial(sub) else {
            return Err(self.contradiction(
                s,
                "atom with no bisimplicial vertex that is not a Petersen blowup".into(),
            ));
        };
        let omega = max_clique_within(self.g, &s).len();
        self.eliminate(s, map[b.vertex], ColoringScope::Gem.bound(omega))
    }
}

fn run_engine(g: &Graph, class: GraphClass) -> Result<ColoringCertificate, ColoringError> {
    let membership = class_membership(g, class);
    if let Some(witness) = membership.witness {
        return Err(ColoringError::NotMember { class, witness });
    }
    let mut engine = Engine {
        g,
        class,
        trace: Vec::new(),
    };
    let assignment = if g.order() == 0 {
        Vec::new()
    } else {
        engine.rec(g.vertices())?
    };
    finish(g, class.into(), assignment, engine.trace)
}

fn finish(
    g: &Graph,
    scope: ColoringScope,
    assignment: Vec<u32>,
    trace: Vec<TraceStep>,
) -> Result<ColoringCertificate, ColoringError> {
    check_proper(g, &assignment)?;
    let omega = max_clique_size(g);
    let claimed_bound = scope.bound(omega);
    let colors_used = assignment.iter().copied().max().unwrap_or(0) as usize;
    if colors_used > claimed_bound {
        return Err(ColoringError::BoundViolated {
            used: colors_used,
            bound: claimed_bound,
            graph6: write_graph6(g),
        });
    }
    Ok(ColoringCertificate {
        scope,
        assignment,
        colors_used,
        claimed_bound,
        omega,
        trace,
    })
}

/// At most `max{3, ω}` colors for a `(P7, C4, diamond)`-free graph.
pub fn color_diamond_class(g: &Graph) -> Result<ColoringCertificate, ColoringError> {
    run_engine(g, GraphClass::Diamond)
}

/// At most `ω + 1` colors for a `(P7, C4, kite)`-free graph.
pub fn color_kite_class(g: &Graph) -> Result<ColoringCertificate, ColoringError> {
    run_engine(g, GraphClass::Kite)
}

/// At most `2ω - 1` colors for a `(P7, C4, gem)`-free graph.
pub fn color_gem_class(g: &Graph) -> Result<ColoringCertificate, ColoringError> {
    run_engine(g, GraphClass::Gem)
}

pub fn color_class(g: &Graph, class: GraphClass) -> Result<ColoringCertificate, ColoringError> {
    run_engine(g, class)
}

fn petersen_ref() -> &'static Graph {
    FixedGraph::Petersen.reference()
}

/// Maximal independent sets of the reference Petersen graph as bitmasks,
/// largest first.
fn petersen_independent_sets() -> &'static [u16] {
    static CELL: OnceLock<Vec<u16>> = OnceLock::new();
    CELL.get_or_init(|| {
        let p = petersen_ref();
        let independent = |m: u16| p.edges().iter().all(|&(u, v)| m >> u & 1 == 0 || m >> v & 1 == 0);
        let mut sets: Vec<u16> = (1..1u16 << 10)
            .filter(|&m| independent(m))
            .filter(|&m| (0..10).all(|v| m >> v & 1 == 1 || !independent(m | 1 << v)))
            .collect();
        sets.sort_by_key(|&m| (std::cmp::Reverse(m.count_ones()), m));
        sets
    })
}

fn mask_members(m: u16) -> Vec<usize> {
    (0..10).filter(|&v| m >> v & 1 == 1).collect()
}

/// A minimum multiset of independent sets of the Petersen graph covering
/// base vertex `i` at least `sizes[i]` times, found by iterative deepening
/// from a lower bound. This is the chromatic number of the blowup: each
/// color class of a blowup projects to an independent set of the base.
pub fn petersen_cover(sizes: &[usize; 10]) -> Vec<u16> {
    let p = petersen_ref();
    let edges = p.edges();
    let total: usize = sizes.iter().sum();
    let lower = [
        sizes.iter().copied().max().unwrap_or(0),
        edges.iter().map(|&(u, v)| sizes[u] + sizes[v]).max().unwrap_or(0),
        total.div_ceil(4),
    ]
    .into_iter()
    .max()
    .expect("nonempty");
    let deficit: [u16; 10] = std::array::from_fn(|i| sizes[i] as u16);
    for t in lower.. {
        let mut chosen = Vec::with_capacity(t);
        let mut failed = HashSet::new();
        if cover_search(deficit, t, &edges, &mut chosen, &mut failed) {
            return chosen;
        }
    }
    unreachable!("10 singleton-containing sets per round always suffice")
}

fn cover_search(
    deficit: [u16; 10],
    left: usize,
    edges: &[(usize, usize)],
    chosen: &mut Vec<u16>,
    failed: &mut HashSet<([u16; 10], usize)>,
) -> bool {
    let Some(i) = (0..10).find(|&i| deficit[i] > 0) else {
        return true;
    };
    let r = left as u16;
    let sum: u16 = deficit.iter().sum();
    if left == 0
        || deficit.iter().any(|&d| d > r)
        || edges.iter().any(|&(u, v)| deficit[u] + deficit[v] > r)
        || sum > 4 * r
        || failed.contains(&(deficit, left))
    {
        return false;
    }
    for &m in petersen_independent_sets().iter().filter(|&&m| m >> i & 1 == 1) {
        let next: [u16; 10] = std::array::from_fn(|v| {
            if m >> v & 1 == 1 {
                deficit[v].saturating_sub(1)
            } else {
                deficit[v]
            }
        });
        chosen.push(m);
        if cover_search(next, left - 1, edges, chosen, failed) {
            return true;
        }
        chosen.pop();
    }
    failed.insert((deficit, left));
    false
}

fn assign_cover(n: usize, classes: &[VertexSet], cover: &[u16]) -> Vec<u32> {
    let mut remaining: Vec<Vec<usize>> = classes
        .iter()
        .map(|c| {
            let mut v = c.to_vec();
            v.reverse();
            v
        })
        .collect();
    let mut acc = vec![0; n];
    for (c, &m) in cover.iter().enumerate() {
        for i in mask_members(m) {
            if let Some(v) = remaining[i].pop() {
                acc[v] = c as u32 + 1;
            }
        }
    }
    acc
}

/// Minimum coloring of a clique blowup of the Petersen graph, with
/// `ω = max over base edges uv of |class u| + |class v|`.
pub fn color_petersen_blowup(
    g: &Graph,
    cert: &BlowupCertificate,
) -> Result<ColoringCertificate, ColoringError> {
    if !cert.is_valid_in(g) {
        return Err(ColoringError::InvalidBlowup("classes do not realise the base in g"));
    }
    let Some(f) = find_isomorphism(petersen_ref(), &cert.base) else {
        return Err(ColoringError::InvalidBlowup("base is not the Petersen graph"));
    };
    let classes: Vec<VertexSet> = (0..10).map(|i| cert.classes[f[i]]).collect();
    let sizes: [usize; 10] = std::array::from_fn(|i| classes[i].len());
    let cover = petersen_cover(&sizes);
    let assignment = assign_cover(g.order(), &classes, &cover);
    let trace = vec![TraceStep::BlowupColor {
        classes: classes.iter().map(VertexSet::to_vec).collect(),
        cover: cover.iter().map(|&m| mask_members(m)).collect(),
    }];
    finish(g, ColoringScope::PetersenBlowup, assignment, trace)
}

/// Re-executes a trace against `g`, recomputing every derived color.
pub fn replay(g: &Graph, trace: &[TraceStep]) -> Result<Vec<u32>, ColoringError> {
    let n = g.order();
    let bad = |msg: String| ColoringError::Replay(msg);
    let in_range = |v: usize| if v < n { Ok(v) } else { Err(bad(format!("vertex {v} out of range"))) };
    let mut stack: Vec<Vec<u32>> = Vec::new();
    for (k, step) in trace.iter().enumerate() {
        let underflow = || bad(format!("step {k} pops an empty stack"));
        match step {
            TraceStep::Vertex { vertex } => {
                let mut acc = vec![0; n];
                acc[in_range(*vertex)?] = 1;
                stack.push(acc);
            }
            TraceStep::Components { count } => {
                if *count > stack.len() {
                    return Err(underflow());
                }
                let parts = stack.split_off(stack.len() - count);
                let mut acc = vec![0; n];
                for part in parts {
                    for v in 0..n {
                        if part[v] != 0 {
                            if acc[v] != 0 {
                                return Err(bad(format!("step {k}: components overlap at {v}")));
                            }
                            acc[v] = part[v];
                        }
                    }
                }
                stack.push(acc);
            }
            TraceStep::Merge { cutset, permutation } => {
                let cb = stack.pop().ok_or_else(underflow)?;
                let ca = stack.pop().ok_or_else(underflow)?;
                let k_set: VertexSet = cutset.iter().map(|&v| in_range(v)).collect::<Result<_, _>>()?;
                let block_a: VertexSet = (0..n).filter(|&v| ca[v] != 0).collect();
                let block_b: VertexSet = (0..n).filter(|&v| cb[v] != 0).collect();
                let split = CliqueCutsetSplit {
                    cutset: k_set,
                    side_a: block_a - k_set,
                    side_b: block_b - k_set,
                };
                if (block_a & block_b) != k_set || !g.is_clique(&k_set) || !g.is_anticomplete_to(&split.side_a, &split.side_b) {
                    return Err(bad(format!("step {k}: blocks do not meet in a clique cutset")));
                }
                let (merged, perm) = merge_across_cutset(g, &split, &ca, &cb)?;
                if perm != *permutation {
                    return Err(bad(format!("step {k}: recoloring differs from the recorded one")));
                }
                stack.push(merged);
            }
            TraceStep::Exceptional { graph, vertices, colors } => {
                let reference = graph.reference();
                if vertices.len() != 10 || colors.len() != 10 {
                    return Err(bad(format!("step {k}: exceptional graph needs 10 vertices")));
                }
                let embeds = (0..10).all(|i| {
                    (i + 1..10).all(|j| reference.has_edge(i, j) == g.has_edge(vertices[i], vertices[j]))
                });
                if vertices.iter().any(|&v| v >= n) || !embeds {
                    return Err(bad(format!("step {k}: vertices do not induce {graph}")));
                }
                let mut acc = vec![0; n];
                for (&v, &c) in vertices.iter().zip(colors) {
                    acc[v] = c;
                }
                stack.push(acc);
            }
            TraceStep::Peel { vertices, first_color } => {
                let mut acc = stack.pop().ok_or_else(underflow)?;
                let first = acc.iter().copied().max().unwrap_or(0) + 1;
                if first != *first_color {
                    return Err(bad(format!("step {k}: peel starts at {first}, recorded {first_color}")));
                }
                for (i, &v) in vertices.iter().enumerate() {
                    acc[in_range(v)?] = first + i as u32;
                }
                stack.push(acc);
            }
            TraceStep::Eliminate { vertex, color, budget } => {
                let mut acc = stack.pop().ok_or_else(underflow)?;
                let v = in_range(*vertex)?;
                if acc[v] != 0 {
                    return Err(bad(format!("step {k}: vertex {v} already colored")));
                }
                let c = greedy_extend(g, &mut acc, v, *budget)?;
                if c != *color {
                    return Err(bad(format!("step {k}: vertex {v} gets {c}, recorded {color}")));
                }
                stack.push(acc);
            }
            TraceStep::BlowupColor { classes, cover } => {
                if classes.len() != 10 || cover.iter().flatten().any(|&i| i >= 10) {
                    return Err(bad(format!("step {k}: malformed blowup step")));
                }
                let sets: Vec<VertexSet> = classes
                    .iter()
                    .map(|c| c.iter().map(|&v| in_range(v)).collect())
                    .collect::<Result<_, _>>()?;
                let masks: Vec<u16> = cover.iter().map(|s| s.iter().fold(0u16, |m, &i| m | 1 << i)).collect();
                let acc = assign_cover(n, &sets, &masks);
                if sets.iter().any(|c| c.iter().any(|v| acc[v] == 0)) {
                    return Err(bad(format!("step {k}: cover leaves a vertex uncolored")));
                }
                stack.push(acc);
            }
        }
    }
    match (stack.pop(), stack.is_empty()) {
        (Some(acc), true) => Ok(acc),
        (None, _) if n == 0 => Ok(Vec::new()),
        _ => Err(bad("trace does not reduce to a single coloring".into())),
    }
}
