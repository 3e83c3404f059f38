//! Partition of a graph around a 7-hole `A = v1..v7` and the structural
//! properties of that partition for the diamond and gem classes.
//!
//! Hole positions are 0-based here: `v1` is position 0 and all index
//! arithmetic is modulo 7. With that convention
//!
//! * `X_i`: attachment `{i, i+3}`
//! * `Y_i` (diamond mode): `{i, i+3, i+4}`
//! * `Y_i` (gem mode): `{i, i+1, i+2}`
//! * `Z_i` (gem mode only): `{i, i+3, i+4}`
//!
//! and `R` is the set of vertices with no neighbour in `A`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::patterns::all_holes;
use crate::structure::bisimplicial_split;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HoleMode {
    Diamond,
    Gem,
}

impl fmt::Display for HoleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HoleMode::Diamond => "diamond",
            HoleMode::Gem => "gem",
        })
    }
}

impl FromStr for HoleMode {
    type Err = SevenHoleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "diamond" => Ok(HoleMode::Diamond),
            "gem" => Ok(HoleMode::Gem),
            _ => Err(SevenHoleError::UnknownMode(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SevenHoleError {
    #[error("{0:?} is not an induced 7-hole in cycle order")]
    NotAHole(Vec<usize>),
    #[error("partition was built in {got} mode, {expected} mode required")]
    ModeMismatch { expected: HoleMode, got: HoleMode },
    #[error("unknown hole mode {0:?}")]
    UnknownMode(String),
}

/// Attachment offsets, relative to `i`, defining each family.
const X_SHAPE: [usize; 2] = [0, 3];
const WIDE_SHAPE: [usize; 3] = [0, 3, 4];
const RUN_SHAPE: [usize; 3] = [0, 1, 2];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SevenHolePartition {
    pub hole: [usize; 7],
    pub mode: HoleMode,
    pub x: [VertexSet; 7],
    pub y: [VertexSet; 7],
    pub z: [VertexSet; 7],
    pub r: VertexSet,
    pub unclassified: VertexSet,
}

/// One of the set families `X`, `Y`, `Z` of a partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetFamily {
    X,
    Y,
    Z,
}

impl SevenHolePartition {
    pub fn family(&self, f: SetFamily) -> &[VertexSet; 7] {
        match f {
            SetFamily::X => &self.x,
            SetFamily::Y => &self.y,
            SetFamily::Z => &self.z,
        }
    }

    pub fn union(&self, f: SetFamily) -> VertexSet {
        self.family(f).iter().fold(VertexSet::new(), |acc, s| acc | *s)
    }

    pub fn hole_set(&self) -> VertexSet {
        self.hole.iter().collect()
    }

    /// `N(A)`: every vertex outside the hole with a neighbour on it.
    pub fn attached(&self) -> VertexSet {
        self.union(SetFamily::X) | self.union(SetFamily::Y) | self.union(SetFamily::Z) | self.unclassified
    }
}

fn shape_set(hole: &[usize; 7], i: usize, shape: &[usize]) -> VertexSet {
    shape.iter().map(|&o| hole[(i + o) % 7]).collect()
}

pub fn is_seven_hole(g: &Graph, hole: &[usize]) -> bool {
    hole.len() == 7
        && hole.iter().all(|&v| v < g.order())
        && hole.iter().collect::<VertexSet>().len() == 7
        && (0..7).all(|i| {
            (i + 1..7).all(|j| {
                let consecutive = j == i + 1 || (i == 0 && j == 6);
                g.has_edge(hole[i], hole[j]) == consecutive
            })
        })
}

pub fn partition_around_hole(
    g: &Graph,
    hole: &[usize],
    mode: HoleMode,
) -> Result<SevenHolePartition, SevenHoleError> {
    if !is_seven_hole(g, hole) {
        return Err(SevenHoleError::NotAHole(hole.to_vec()));
    }
    let hole: [usize; 7] = hole.try_into().expect("length checked");
    let a: VertexSet = hole.iter().collect();
    let mut part = SevenHolePartition {
        hole,
        mode,
        x: [VertexSet::new(); 7],
        y: [VertexSet::new(); 7],
        z: [VertexSet::new(); 7],
        r: VertexSet::new(),
        unclassified: VertexSet::new(),
    };
    let y_shape: &[usize] = match mode {
        HoleMode::Diamond => &WIDE_SHAPE,
        HoleMode::Gem => &RUN_SHAPE,
    };
    for v in (g.vertices() - a).iter() {
        let on_hole = *g.neighbors(v) & a;
        if on_hole.is_empty() {
            part.r.insert(v);
            continue;
        }
        let slot = (0..7).find_map(|i| {
            if on_hole == shape_set(&hole, i, &X_SHAPE) {
                Some((SetFamily::X, i))
            } else if on_hole == shape_set(&hole, i, y_shape) {
                Some((SetFamily::Y, i))
            } else if mode == HoleMode::Gem && on_hole == shape_set(&hole, i, &WIDE_SHAPE) {
                Some((SetFamily::Z, i))
            } else {
                None
            }
        });
        match slot {
            Some((SetFamily::X, i)) => part.x[i].insert(v),
            Some((SetFamily::Y, i)) => part.y[i].insert(v),
            Some((SetFamily::Z, i)) => part.z[i].insert(v),
            None => part.unclassified.insert(v),
        }
    }
    Ok(part)
}

/// Every 7-hole of `g` once, as a cycle-ordered tuple.
pub fn seven_holes(g: &Graph) -> Vec<[usize; 7]> {
    all_holes(g, 7)
        .expect("7 is a valid hole length")
        .into_iter()
        .map(|h| h.try_into().expect("seven vertices"))
        .collect()
}

/// A property statement as a finite predicate over the partition. For the
/// pairwise rules, `A_i` is related to `B_{i+o}` for each offset `o`.
#[derive(Debug, Clone, Copy)]
enum Rule {
    /// No attached vertex is unclassified.
    Coverage,
    /// `|S_i| <= 1` for every listed family.
    AtMostOne(&'static [SetFamily]),
    /// `N(A)` is stable.
    AttachedStable,
    /// For every `i`, the union over the listed families of `S_i` is a clique.
    Clique(&'static [SetFamily]),
    /// `A_i` empty or every `B_{i+o}` empty.
    Exclusive(SetFamily, SetFamily, &'static [usize]),
    Complete(SetFamily, SetFamily, &'static [usize]),
    Anticomplete(SetFamily, SetFamily, &'static [usize]),
}

struct Property {
    id: &'static str,
    statement: &'static str,
    rules: &'static [Rule],
}

use SetFamily::{X, Y, Z};

const DIAMOND_PROPERTIES: [Property; 6] = [
    Property {
        id: "NA-1",
        statement: "N(A) = X ∪ Y",
        rules: &[Rule::Coverage],
    },
    Property {
        id: "NA-2",
        statement: "|X_i| <= 1 and |Y_i| <= 1",
        rules: &[Rule::AtMostOne(&[X, Y])],
    },
    Property {
        id: "NA-3",
        statement: "N(A) is stable",
        rules: &[Rule::AttachedStable],
    },
    Property {
        id: "NA-4",
        statement: "X_i = ∅ or X_{i+2} ∪ X_{i+5} = ∅",
        rules: &[Rule::Exclusive(X, X, &[2, 5])],
    },
    Property {
        id: "NA-5",
        statement: "Y_i = ∅ or Y_{i+3} ∪ Y_{i+4} = ∅",
        rules: &[Rule::Exclusive(Y, Y, &[3, 4])],
    },
    Property {
        id: "NA-6",
        statement: "X_i = ∅ or Y_i ∪ Y_{i+1} ∪ Y_{i+2} ∪ Y_{i+3} = ∅",
        rules: &[Rule::Exclusive(X, Y, &[0, 1, 2, 3])],
    },
];

const GEM_PROPERTIES: [Property; 14] = [
    Property {
        id: "M1",
        statement: "N(A) = X ∪ Y ∪ Z",
        rules: &[Rule::Coverage],
    },
    Property {
        id: "M2",
        statement: "X_i ∪ Z_i and Y_i are cliques",
        rules: &[Rule::Clique(&[X, Z]), Rule::Clique(&[Y])],
    },
    Property {
        id: "M3",
        statement: "Y_i complete to Y_{i+1} ∪ Y_{i+6}",
        rules: &[Rule::Complete(Y, Y, &[1, 6])],
    },
    Property {
        id: "M4",
        statement: "Y_i anticomplete to Y_{i+2} ∪ Y_{i+3} ∪ Y_{i+4} ∪ Y_{i+5}",
        rules: &[Rule::Anticomplete(Y, Y, &[2, 3, 4, 5])],
    },
    Property {
        id: "M5",
        statement: "X_i = ∅ or X_{i+2} ∪ X_{i+5} = ∅",
        rules: &[Rule::Exclusive(X, X, &[2, 5])],
    },
    Property {
        id: "M6",
        statement: "X_i anticomplete to X_{i+1} ∪ X_{i+3} ∪ X_{i+4} ∪ X_{i+6}",
        rules: &[Rule::Anticomplete(X, X, &[1, 3, 4, 6])],
    },
    Property {
        id: "M7",
        statement: "X_i complete to Y_{i+2} ∪ Y_{i+6}",
        rules: &[Rule::Complete(X, Y, &[2, 6])],
    },
    Property {
        id: "M8",
        statement: "X_i anticomplete to Y_i ∪ Y_{i+1} ∪ Y_{i+3} ∪ Y_{i+4} ∪ Y_{i+5}",
        rules: &[Rule::Anticomplete(X, Y, &[0, 1, 3, 4, 5])],
    },
    Property {
        id: "M9",
        statement: "Z_i = ∅ or Z_{i+3} ∪ Z_{i+4} = ∅",
        rules: &[Rule::Exclusive(Z, Z, &[3, 4])],
    },
    Property {
        id: "M10",
        statement: "Z_i anticomplete to Z_{i+1} ∪ Z_{i+2} ∪ Z_{i+5} ∪ Z_{i+6}",
        rules: &[Rule::Anticomplete(Z, Z, &[1, 2, 5, 6])],
    },
    Property {
        id: "M11",
        statement: "Z_i = ∅ or X_i ∪ X_{i+4} ∪ X_{i+6} = ∅",
        rules: &[Rule::Exclusive(Z, X, &[0, 4, 6])],
    },
    Property {
        id: "M12",
        statement: "Z_i anticomplete to X_{i+1} ∪ X_{i+2} ∪ X_{i+3} ∪ X_{i+5}",
        rules: &[Rule::Anticomplete(Z, X, &[1, 2, 3, 5])],
    },
    Property {
        id: "M13",
        statement: "Z_i complete to Y_{i+2} ∪ Y_{i+3} ∪ Y_{i+6}",
        rules: &[Rule::Complete(Z, Y, &[2, 3, 6])],
    },
    Property {
        id: "M14",
        statement: "Z_i anticomplete to Y_i ∪ Y_{i+1} ∪ Y_{i+4} ∪ Y_{i+5}",
        rules: &[Rule::Anticomplete(Z, Y, &[0, 1, 4, 5])],
    },
];

fn properties(mode: HoleMode) -> &'static [Property] {
    match mode {
        HoleMode::Diamond => &DIAMOND_PROPERTIES,
        HoleMode::Gem => &GEM_PROPERTIES,
    }
}

/// Property ids in reporting order.
pub fn property_ids(mode: HoleMode) -> Vec<&'static str> {
    properties(mode).iter().map(|p| p.id).collect()
}

pub fn property_statement(id: &str) -> Option<&'static str> {
    DIAMOND_PROPERTIES
        .iter()
        .chain(GEM_PROPERTIES.iter())
        .find(|p| p.id == id)
        .map(|p| p.statement)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub id: &'static str,
    pub holds: bool,
    /// A single vertex for coverage, otherwise the offending pair.
    pub counterexample: Option<Vec<usize>>,
}

fn first_violation(g: &Graph, part: &SevenHolePartition, rule: Rule) -> Option<Vec<usize>> {
    match rule {
        Rule::Coverage => part.unclassified.first().map(|v| vec![v]),
        Rule::AtMostOne(fams) => fams.iter().find_map(|&f| {
            part.family(f)
                .iter()
                .find(|s| s.len() > 1)
                .map(|s| s.iter().take(2).collect())
        }),
        Rule::AttachedStable => {
            let all = part.attached();
            all.iter().find_map(|u| {
                (*g.neighbors(u) & all)
                    .iter()
                    .find(|&w| w > u)
                    .map(|w| vec![u, w])
            })
        }
        Rule::Clique(fams) => (0..7).find_map(|i| {
            let s = fams.iter().fold(VertexSet::new(), |acc, &f| acc | part.family(f)[i]);
            s.iter().find_map(|u| {
                (s - g.closed_neighbors(u))
                    .iter()
                    .find(|&w| w > u)
                    .map(|w| vec![u, w])
            })
        }),
        Rule::Exclusive(a, b, offsets) => pairs(part, a, b, offsets).next(),
        Rule::Complete(a, b, offsets) => {
            pairs(part, a, b, offsets).find(|p| p[0] != p[1] && !g.has_edge(p[0], p[1]))
        }
        Rule::Anticomplete(a, b, offsets) => {
            pairs(part, a, b, offsets).find(|p| g.has_edge(p[0], p[1]))
        }
    }
}

/// All `(u, w)` with `u ∈ A_i` and `w ∈ B_{i+o}`.
fn pairs<'a>(
    part: &'a SevenHolePartition,
    a: SetFamily,
    b: SetFamily,
    offsets: &'static [usize],
) -> impl Iterator<Item = Vec<usize>> + 'a {
    (0..7).flat_map(move |i| {
        offsets.iter().flat_map(move |&o| {
            let left = part.family(a)[i];
            let right = part.family(b)[(i + o) % 7];
            left.iter()
                .flat_map(move |u| right.iter().map(move |w| vec![u, w]))
        })
    })
}

fn evaluate(g: &Graph, part: &SevenHolePartition, p: &Property) -> PropertyReport {
    let counterexample = p.rules.iter().find_map(|&r| first_violation(g, part, r));
    PropertyReport {
        id: p.id,
        holds: counterexample.is_none(),
        counterexample,
    }
}

fn check(
    g: &Graph,
    part: &SevenHolePartition,
    mode: HoleMode,
) -> Result<Vec<PropertyReport>, SevenHoleError> {
    if part.mode != mode {
        return Err(SevenHoleError::ModeMismatch {
            expected: mode,
            got: part.mode,
        });
    }
    Ok(properties(mode).iter().map(|p| evaluate(g, part, p)).collect())
}

/// Reports for NA-1 through NA-6.
pub fn check_diamond_properties(
    g: &Graph,
    part: &SevenHolePartition,
) -> Result<Vec<PropertyReport>, SevenHoleError> {
    check(g, part, HoleMode::Diamond)
}

/// Reports for M1 through M14.
pub fn check_gem_properties(
    g: &Graph,
    part: &SevenHolePartition,
) -> Result<Vec<PropertyReport>, SevenHoleError> {
    check(g, part, HoleMode::Gem)
}

pub fn check_properties(
    g: &Graph,
    part: &SevenHolePartition,
) -> Vec<PropertyReport> {
    check(g, part, part.mode).expect("mode matches itself")
}

/// Whether the report's counterexample really violates its property.
/// Reports that hold are confirmed by re-evaluating the property.
pub fn recheck(g: &Graph, part: &SevenHolePartition, report: &PropertyReport) -> bool {
    let Some(p) = properties(part.mode).iter().find(|p| p.id == report.id) else {
        return false;
    };
    let Some(tuple) = &report.counterexample else {
        return report.holds && evaluate(g, part, p).holds;
    };
    !report.holds && p.rules.iter().any(|&r| violates(g, part, r, tuple))
}

fn violates(g: &Graph, part: &SevenHolePartition, rule: Rule, t: &[usize]) -> bool {
    let in_fam = |f: SetFamily, i: usize, v: usize| part.family(f)[i % 7].contains(v);
    let related = |a: SetFamily, b: SetFamily, offsets: &[usize], u: usize, w: usize| {
        (0..7).any(|i| in_fam(a, i, u) && offsets.iter().any(|&o| in_fam(b, i + o, w)))
    };
    match (rule, t) {
        (Rule::Coverage, &[v]) => {
            let a = part.hole_set();
            !a.contains(v) && g.neighbors(v).intersects(&a) && part.unclassified.contains(v)
        }
        (Rule::AtMostOne(fams), &[u, w]) => {
            u != w && fams.iter().any(|&f| (0..7).any(|i| in_fam(f, i, u) && in_fam(f, i, w)))
        }
        (Rule::AttachedStable, &[u, w]) => {
            let all = part.attached();
            all.contains(u) && all.contains(w) && g.has_edge(u, w)
        }
        (Rule::Clique(fams), &[u, w]) => {
            u != w
                && !g.has_edge(u, w)
                && (0..7).any(|i| {
                    fams.iter().any(|&f| in_fam(f, i, u)) && fams.iter().any(|&f| in_fam(f, i, w))
                })
        }
        (Rule::Exclusive(a, b, offsets), &[u, w]) => related(a, b, offsets, u, w),
        (Rule::Complete(a, b, offsets), &[u, w]) => {
            u != w && !g.has_edge(u, w) && related(a, b, offsets, u, w)
        }
        (Rule::Anticomplete(a, b, offsets), &[u, w]) => {
            g.has_edge(u, w) && related(a, b, offsets, u, w)
        }
        _ => false,
    }
}

/// Hole vertices that are bisimplicial in `g`.
pub fn bisimplicial_hole_vertices(g: &Graph, part: &SevenHolePartition) -> Vec<usize> {
    part.hole
        .iter()
        .copied()
        .filter(|&v| bisimplicial_split(g, v).is_some())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HoleAnalysis {
    pub partition: SevenHolePartition,
    pub reports: Vec<PropertyReport>,
}

/// Partitions and checks around every 7-hole (or only the first).
pub fn analyze_holes(g: &Graph, mode: HoleMode, first_only: bool) -> Vec<HoleAnalysis> {
    let holes = seven_holes(g);
    let take = if first_only { holes.len().min(1) } else { holes.len() };
    holes[..take]
        .iter()
        .map(|h| {
            let partition = partition_around_hole(g, h, mode).expect("enumerated hole");
            let reports = check_properties(g, &partition);
            HoleAnalysis { partition, reports }
        })
        .collect()
}

/// A graph built to break one property, for checking that the checker can
/// fail.
#[derive(Debug, Clone)]
pub struct NegativeControl {
    pub property: &'static str,
    pub mode: HoleMode,
    pub graph: Graph,
}

impl NegativeControl {
    pub fn hole(&self) -> [usize; 7] {
        [0, 1, 2, 3, 4, 5, 6]
    }
}

/// `C7` on `0..7` plus one vertex per attachment (hole offsets relative to
/// `i`), with extra edges among the added vertices (numbered from 0).
fn hole_with(attach: &[(usize, &[usize])], extra: &[(usize, usize)]) -> Graph {
    let n = 7 + attach.len();
    let mut edges: Vec<(usize, usize)> = (0..7).map(|i| (i, (i + 1) % 7)).collect();
    for (k, &(i, shape)) in attach.iter().enumerate() {
        edges.extend(shape.iter().map(|&o| (7 + k, (i + o) % 7)));
    }
    edges.extend(extra.iter().map(|&(a, b)| (7 + a, 7 + b)));
    Graph::from_edge_list(n, &edges).expect("fixture")
}

pub fn negative_controls() -> Vec<NegativeControl> {
    let d = |property, graph| NegativeControl {
        property,
        mode: HoleMode::Diamond,
        graph,
    };
    let m = |property, graph| NegativeControl {
        property,
        mode: HoleMode::Gem,
        graph,
    };
    let (xs, wide, run): (&[usize], &[usize], &[usize]) = (&X_SHAPE, &WIDE_SHAPE, &RUN_SHAPE);
    vec![
        d("NA-1", hole_with(&[(0, &[0])], &[])),
        d("NA-2", hole_with(&[(0, xs), (0, xs)], &[])),
        d("NA-3", crate::families::graph_f().with_edge(7, 8).expect("fixture")),
        d("NA-4", hole_with(&[(0, xs), (2, xs)], &[])),
        d("NA-5", hole_with(&[(0, wide), (3, wide)], &[])),
        d("NA-6", hole_with(&[(0, xs), (1, wide)], &[])),
        m("M1", hole_with(&[(0, &[0])], &[])),
        m("M2", hole_with(&[(0, xs), (0, wide)], &[])),
        m("M3", hole_with(&[(0, run), (1, run)], &[])),
        m("M4", hole_with(&[(0, run), (2, run)], &[(0, 1)])),
        m("M5", hole_with(&[(0, xs), (2, xs)], &[])),
        m("M6", hole_with(&[(0, xs), (1, xs)], &[(0, 1)])),
        m("M7", hole_with(&[(0, xs), (2, run)], &[])),
        m("M8", hole_with(&[(0, xs), (0, run)], &[(0, 1)])),
        m("M9", hole_with(&[(0, wide), (3, wide)], &[])),
        m("M10", hole_with(&[(0, wide), (1, wide)], &[(0, 1)])),
        m("M11", hole_with(&[(0, wide), (0, xs)], &[(0, 1)])),
        m("M12", hole_with(&[(0, wide), (1, xs)], &[(0, 1)])),
        m("M13", hole_with(&[(0, wide), (2, run)], &[])),
        m("M14", hole_with(&[(0, wide), (0, run)], &[(0, 1)])),
    ]
}
