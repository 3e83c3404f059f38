//! Generators for the named graphs: the Petersen graph, `F`, the necessity
//! examples `G1`..`G6`, clique blowups, cycles and paths.
//!
//! Vertex layouts (0-based):
//! - Petersen: outer cycle `0..5`, spokes `i ~ i+5`, inner pentagram
//!   `5+i ~ 5+(i+2)%5`.
//! - F: hole `v1..v7 = 0..7`, then `y1, y2, y3 = 7, 8, 9`.
//! - G3: hole `x1..x7 = 0..7`, then `a, b, c, d, g1, g2 = 7..13`.
//! - G4: 8-cycle `y1..y8 = 0..8`, 6-cycle `u1..u6 = 8..14`, `t1, t2 = 14, 15`.
//! - G5: hole `z1..z7 = 0..7`, then `a1..a7 = 7..14`.
//! - G2: stable sets `S1, S2, ..` laid out consecutively.

use serde::Serialize;
use thiserror::Error;

use crate::error::GraphError;
use crate::graph::{Blowup, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Base graphs a [`Family::Blowup`] may refer to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum BlowupBase {
    Petersen,
    F,
    G3,
    G5,
    Cycle(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Family {
    Petersen,
    F,
    /// `t`-size clique blowup of `C7`, `t >= 2`.
    G1(usize),
    /// Seven stable sets in a cyclic complete/anticomplete pattern, each of
    /// size at least 2.
    G2(Vec<usize>),
    G3,
    G4,
    G5,
    /// `t`-size clique blowup of `G3`, `t >= 1`.
    G6(usize),
    Blowup(BlowupBase, Vec<usize>),
    /// `K_ell + H` for a named `H`.
    Join(usize, Box<Family>),
    Cycle(usize),
    Path(usize),
    Complete(usize),
}

pub fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edge_list(10, &edges).expect("valid Petersen graph")
}

pub fn graph_f() -> Graph {
    let mut edges: Vec<_> = (0..7).map(|i| (i, (i + 1) % 7)).collect();
    // N(y1) = {v1, v4, v5}, N(y2) = {v2, v5, v6}, N(y3) = {v3, v6, v7}
    for (y, hole) in [(7, [0, 3, 4]), (8, [1, 4, 5]), (9, [2, 5, 6])] {
        edges.extend(hole.iter().map(|&v| (y, v)));
    }
    Graph::from_edge_list(10, &edges).expect("valid F")
}

pub fn g1(t: usize) -> Result<Blowup, FamilyError> {
    if t < 2 {
        return Err(FamilyError::InvalidParameter(format!("G1 needs t >= 2, got {t}")));
    }
    Ok(Graph::cycle(7).clique_blowup(&[t; 7])?)
}

pub fn g2(sizes: &[usize]) -> Result<Graph, FamilyError> {
    if sizes.len() != 7 || sizes.iter().any(|&s| s < 2) {
        return Err(FamilyError::InvalidParameter(format!(
            "G2 needs seven stable sets of size >= 2, got {sizes:?}"
        )));
    }
    let mut start = Vec::with_capacity(7);
    let mut total = 0;
    for &s in sizes {
        start.push(total);
        total += s;
    }
    let mut edges = Vec::new();
    for i in 0..7 {
        let j = (i + 1) % 7;
        for a in start[i]..start[i] + sizes[i] {
            for b in start[j]..start[j] + sizes[j] {
                edges.push((a, b));
            }
        }
    }
    Ok(Graph::from_edge_list(total, &edges)?)
}

pub fn g3() -> Graph {
    let (a, b, c, d, g1, g2) = (7, 8, 9, 10, 11, 12);
    let mut edges: Vec<_> = (0..7).map(|i| (i, (i + 1) % 7)).collect();
    edges.extend([(a, g2), (b, g1), (c, g2), (d, g1), (g1, g2)]);
    // N(a) = {x2, x6}, N(b) = {x3, x7}, N(c) = {x1, x4}, N(d) = {x1, x5}
    edges.extend([(a, 1), (a, 5), (b, 2), (b, 6), (c, 0), (c, 3), (d, 0), (d, 4)]);
    Graph::from_edge_list(13, &edges).expect("valid G3")
}

pub fn g4() -> Graph {
    let y = |i: usize| i - 1;
    let u = |i: usize| 7 + i;
    let (t1, t2) = (14, 15);
    let mut edges = Vec::new();
    for i in 1..=8 {
        edges.push((y(i), y(i % 8 + 1)));
    }
    for i in 1..=6 {
        edges.push((u(i), u(i % 6 + 1)));
    }
    edges.extend([(y(1), u(1)), (y(4), u(2)), (y(5), u(4)), (y(6), u(6))]);
    edges.extend([(t1, y(2)), (t1, y(7)), (t1, u(5))]);
    edges.extend([(t2, y(3)), (t2, y(8)), (t2, u(3))]);
    Graph::from_edge_list(16, &edges).expect("valid G4")
}

pub fn g5() -> Graph {
    let a = |i: usize| 7 + i % 7;
    let mut edges: Vec<_> = (0..7).map(|i| (i, (i + 1) % 7)).collect();
    for i in 0..7 {
        edges.extend([(a(i), i), (a(i), (i + 3) % 7), (a(i), (i + 4) % 7)]);
        edges.extend([(a(i), a(i + 3)), (a(i), a(i + 4))]);
    }
    Graph::from_edge_list(14, &edges).expect("valid G5")
}

pub fn g6(t: usize) -> Result<Blowup, FamilyError> {
    if t < 1 {
        return Err(FamilyError::InvalidParameter("G6 needs t >= 1".into()));
    }
    Ok(g3().clique_blowup(&[t; 13])?)
}

impl BlowupBase {
    pub fn graph(&self) -> Graph {
        match self {
            BlowupBase::Petersen => petersen(),
            BlowupBase::F => graph_f(),
            BlowupBase::G3 => g3(),
            BlowupBase::G5 => g5(),
            BlowupBase::Cycle(k) => Graph::cycle(*k),
        }
    }
}

impl Family {
    pub fn generate(&self) -> Result<Graph, FamilyError> {
        Ok(match self {
            Family::Petersen => petersen(),
            Family::F => graph_f(),
            Family::G1(t) => g1(*t)?.graph,
            Family::G2(sizes) => g2(sizes)?,
            Family::G3 => g3(),
            Family::G4 => g4(),
            Family::G5 => g5(),
            Family::G6(t) => g6(*t)?.graph,
            Family::Blowup(base, sizes) => {
                if let BlowupBase::Cycle(k) = base {
                    if *k < 3 {
                        return Err(FamilyError::InvalidParameter("cycle needs k >= 3".into()));
                    }
                }
                base.graph().clique_blowup(sizes)?.graph
            }
            Family::Join(ell, inner) => inner.generate()?.join_with_clique(*ell)?,
            Family::Cycle(k) => {
                if *k < 3 {
                    return Err(FamilyError::InvalidParameter("C_k needs k >= 3".into()));
                }
                Graph::cycle(*k)
            }
            Family::Path(k) => {
                if *k < 1 {
                    return Err(FamilyError::InvalidParameter("P_k needs k >= 1".into()));
                }
                Graph::path(*k)
            }
            Family::Complete(k) => Graph::complete(*k),
        })
    }

    /// Human-readable name, e.g. `G6(2)` or `blowup(Petersen,[2,1,..])`.
    pub fn label(&self) -> String {
        match self {
            Family::Petersen => "Petersen".into(),
            Family::F => "F".into(),
            Family::G1(t) => format!("G1({t})"),
            Family::G2(s) => format!("G2({s:?})"),
            Family::G3 => "G3".into(),
            Family::G4 => "G4".into(),
            Family::G5 => "G5".into(),
            Family::G6(t) => format!("G6({t})"),
            Family::Blowup(b, s) => format!("blowup({b:?},{s:?})"),
            Family::Join(l, h) => format!("K{l}+{}", h.label()),
            Family::Cycle(k) => format!("C{k}"),
            Family::Path(k) => format!("P{k}"),
            Family::Complete(k) => format!("K{k}"),
        }
    }

    /// Parses a family name plus `key=value` parameters, as used on the
    /// command line. Recognised names (case-insensitive): `petersen`, `f`,
    /// `g1 t=`, `g2 sizes=`, `g3`, `g4`, `g5`, `g6 t=`,
    /// `blowup base= sizes=`, `join ell= base=`, `cycle k=`, `path k=`,
    /// `complete k=`.
    pub fn parse(name: &str, params: &[(String, String)]) -> Result<Family, FamilyError> {
        let get = |key: &str| params.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str());
        let num = |key: &str| -> Result<usize, FamilyError> {
            let raw = get(key)
                .ok_or_else(|| FamilyError::InvalidParameter(format!("missing parameter {key}")))?;
            raw.parse()
                .map_err(|_| FamilyError::InvalidParameter(format!("{key}={raw} is not a count")))
        };
        let list = |key: &str| -> Result<Vec<usize>, FamilyError> {
            let raw = get(key)
                .ok_or_else(|| FamilyError::InvalidParameter(format!("missing parameter {key}")))?;
            raw.split(',')
                .map(|s| {
                    s.trim().parse().map_err(|_| {
                        FamilyError::InvalidParameter(format!("{key}={raw} is not a count list"))
                    })
                })
                .collect()
        };
        let base = |key: &str| -> Result<Family, FamilyError> {
            let raw = get(key).unwrap_or("petersen");
            Family::parse(raw, &[])
        };
        Ok(match name.to_ascii_lowercase().as_str() {
            "petersen" => Family::Petersen,
            "f" => Family::F,
            "g1" => Family::G1(num("t")?),
            "g2" => Family::G2(list("sizes")?),
            "g3" => Family::G3,
            "g4" => Family::G4,
            "g5" => Family::G5,
            "g6" => Family::G6(num("t")?),
            "cycle" | "c" => Family::Cycle(num("k")?),
            "path" | "p" => Family::Path(num("k")?),
            "complete" | "k" => Family::Complete(num("k")?),
            "join" => Family::Join(num("ell")?, Box::new(base("base")?)),
            "blowup" => {
                let b = match get("base").unwrap_or("petersen").to_ascii_lowercase().as_str() {
                    "petersen" => BlowupBase::Petersen,
                    "f" => BlowupBase::F,
                    "g3" => BlowupBase::G3,
                    "g5" => BlowupBase::G5,
                    "cycle" => BlowupBase::Cycle(num("k")?),
                    other => {
                        return Err(FamilyError::InvalidParameter(format!(
                            "unsupported blowup base {other:?}"
                        )))
                    }
                };
                Family::Blowup(b, list("sizes")?)
            }
            other => return Err(FamilyError::UnknownFamily(other.to_string())),
        })
    }
}
