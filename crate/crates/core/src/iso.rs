//! Isomorphism testing and canonical forms for small graphs.

use std::collections::BTreeMap;

use crate::graph::Graph;

/// Largest order [`canonical_form`] accepts (the code is a `u128`).
pub const CANONICAL_MAX: usize = 16;

pub fn isomorphic(g: &Graph, h: &Graph) -> bool {
    find_isomorphism(g, h).is_some()
}

/// An adjacency-preserving bijection `f` with `f[v]` the image in `h` of
/// vertex `v` of `g`.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    let n = g.order();
    if n != h.order() || g.size() != h.size() || g.degree_sequence() != h.degree_sequence() {
        return None;
    }
    if n == 0 {
        return Some(Vec::new());
    }
    let (cg, ch) = joint_refinement(g, h);
    let mut hist_g = cg.clone();
    let mut hist_h = ch.clone();
    hist_g.sort_unstable();
    hist_h.sort_unstable();
    if hist_g != hist_h {
        return None;
    }

    // rarest colors first, then stay adjacent to what is already placed
    let mut class_size = BTreeMap::new();
    for &c in &cg {
        *class_size.entry(c).or_insert(0usize) += 1;
    }
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| {
                let attached = order.iter().any(|&w| g.has_edge(v, w));
                (!attached, class_size[&cg[v]], v)
            })
            .expect("unplaced vertex remains");
        placed[next] = true;
        order.push(next);
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(g, h, &cg, &ch, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    h: &Graph,
    cg: &[usize],
    ch: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let u = order[depth];
    for x in 0..h.order() {
        if used[x] || ch[x] != cg[u] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&w| g.has_edge(u, w) == h.has_edge(x, map[w]));
        if !consistent {
            continue;
        }
        map[u] = x;
        used[x] = true;
        if extend(g, h, cg, ch, order, depth + 1, map, used) {
            return true;
        }
        used[x] = false;
    }
    map[u] = usize::MAX;
    false
}

/// Color refinement run on both graphs with a shared signature table, so
/// equal colors mean equal refined degree profiles. Starts from degrees.
fn joint_refinement(g: &Graph, h: &Graph) -> (Vec<usize>, Vec<usize>) {
    let mut cg: Vec<usize> = (0..g.order()).map(|v| g.degree(v)).collect();
    let mut ch: Vec<usize> = (0..h.order()).map(|v| h.degree(v)).collect();
    let mut classes = distinct(&cg, &ch);
    loop {
        let sig = |graph: &Graph, colors: &[usize], v: usize| {
            let mut nb: Vec<usize> = graph.neighbors(v).iter().map(|w| colors[w]).collect();
            nb.sort_unstable();
            (colors[v], nb)
        };
        let sg: Vec<_> = (0..g.order()).map(|v| sig(g, &cg, v)).collect();
        let sh: Vec<_> = (0..h.order()).map(|v| sig(h, &ch, v)).collect();
        let mut table = BTreeMap::new();
        for s in sg.iter().chain(sh.iter()) {
            let next = table.len();
            table.entry(s.clone()).or_insert(next);
        }
        cg = sg.iter().map(|s| table[s]).collect();
        ch = sh.iter().map(|s| table[s]).collect();
        let now = distinct(&cg, &ch);
        if now == classes {
            return (cg, ch);
        }
        classes = now;
    }
}

fn distinct(a: &[usize], b: &[usize]) -> usize {
    let mut all: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

/// A labelling-independent code: two graphs of the same order are isomorphic
/// iff their codes are equal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: usize,
    pub code: u128,
}

/// Canonical form by individualization and refinement, taking the maximum
/// upper-triangle code over all leaves. Branches on twins of an already
/// explored vertex are skipped: swapping two twins is an automorphism that
/// fixes the current partition, so their subtrees give the same codes.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let n = g.order();
    assert!(n <= CANONICAL_MAX, "canonical form supports n <= {CANONICAL_MAX}");
    if n <= 1 {
        return CanonicalForm { n, code: 0 };
    }
    let mut cells = vec![(0..n).collect::<Vec<_>>()];
    refine(g, &mut cells);
    let mut best = None;
    search(g, cells, &mut best);
    CanonicalForm {
        n,
        code: best.expect("at least one leaf"),
    }
}

/// The relabelling realising the canonical form is not needed by callers,
/// so only the code is kept.
fn search(g: &Graph, cells: Vec<Vec<usize>>, best: &mut Option<u128>) {
    let n = g.order();
    if cells.len() == n {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let mut code = 0u128;
        for j in 1..n {
            for i in 0..j {
                code = code << 1 | g.has_edge(order[i], order[j]) as u128;
            }
        }
        if best.is_none_or(|b| code > b) {
            *best = Some(code);
        }
        return;
    }
    let target = cells.iter().position(|c| c.len() > 1).expect("non-discrete");
    let mut tried: Vec<usize> = Vec::new();
    for &v in &cells[target] {
        if tried.iter().any(|&u| are_twins(g, u, v)) {
            continue;
        }
        tried.push(v);
        let mut next = Vec::with_capacity(cells.len() + 1);
        next.extend_from_slice(&cells[..target]);
        next.push(vec![v]);
        next.push(cells[target].iter().copied().filter(|&w| w != v).collect());
        next.extend_from_slice(&cells[target + 1..]);
        refine(g, &mut next);
        search(g, next, best);
    }
}

fn are_twins(g: &Graph, u: usize, v: usize) -> bool {
    let mut nu = *g.neighbors(u);
    let mut nv = *g.neighbors(v);
    nu.remove(v);
    nv.remove(u);
    nu == nv
}

/// Splits cells by neighbor counts into each splitter cell until the
/// ordered partition is equitable. Sub-cells are ordered by count, so the
/// result depends only on the graph and the input partition.
fn refine(g: &Graph, cells: &mut Vec<Vec<usize>>) {
    'outer: loop {
        for s in 0..cells.len() {
            let splitter: crate::graph::VertexSet = cells[s].iter().collect();
            for c in 0..cells.len() {
                if cells[c].len() == 1 {
                    continue;
                }
                let mut keyed: Vec<(usize, usize)> = cells[c]
                    .iter()
                    .map(|&v| ((*g.neighbors(v) & splitter).len(), v))
                    .collect();
                if keyed.iter().all(|&(k, _)| k == keyed[0].0) {
                    continue;
                }
                keyed.sort_unstable();
                let mut pieces: Vec<Vec<usize>> = Vec::new();
                let mut last = usize::MAX;
                for (k, v) in keyed {
                    if k != last {
                        pieces.push(Vec::new());
                        last = k;
                    }
                    pieces.last_mut().expect("piece").push(v);
                }
                cells.splice(c..=c, pieces);
                continue 'outer;
            }
        }
        return;
    }
}
