use p7c4_core::enumerate::{all_graphs, connected_graphs};
use p7c4_core::families::petersen;
use p7c4_core::structure::*;
use p7c4_core::{Graph, VertexSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn subsets(n: usize) -> impl Iterator<Item = VertexSet> {
    (0u32..1 << n).map(move |m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
}

fn separates(g: &Graph, s: &VertexSet) -> bool {
    g.components_within(&(g.vertices() - *s)).len() >= 2
}

fn brute_clique_cutset(g: &Graph) -> bool {
    subsets(g.order()).any(|s| g.is_clique(&s) && separates(g, &s))
}

fn is_minimal_separator(g: &Graph, s: &VertexSet) -> bool {
    // two full components: each vertex of S has neighbours in both
    let comps = g.components_within(&(g.vertices() - *s));
    comps
        .iter()
        .filter(|c| s.iter().all(|v| g.neighbors(v).intersects(c)))
        .count()
        >= 2
}

fn brute_bisimplicial(g: &Graph, v: usize) -> bool {
    let nb = g.neighbors(v).to_vec();
    (0u32..1 << nb.len()).any(|m| {
        let a: VertexSet = nb.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &w)| w).collect();
        let b = *g.neighbors(v) - a;
        g.is_clique(&a) && g.is_clique(&b)
    })
}

#[test]
fn cutsets_match_brute_force_up_to_eight_vertices() {
    for n in 1..=8 {
        for g in connected_graphs(n) {
            let found = find_clique_cutset(&g).unwrap();
            assert_eq!(found.is_some(), brute_clique_cutset(&g), "{:?}", g.edges());
            if let Some(split) = found {
                assert!(CliqueCutsetSplit::new(&g, split.cutset, split.side_a, split.side_b).is_ok());
                assert!(is_minimal_separator(&g, &split.cutset));
                assert_eq!(split.side_a.first(), (g.vertices() - split.cutset).first());
            }
        }
    }
}

#[test]
fn atoms_cover_every_edge_and_are_cutset_free() {
    for n in 1..=7 {
        for g in connected_graphs(n) {
            let d = decompose_into_atoms(&g).unwrap();
            let atoms = d.atoms();
            let union = atoms.iter().fold(VertexSet::new(), |acc, a| acc | *a);
            assert_eq!(union, g.vertices());
            for (u, v) in g.edges() {
                assert!(atoms.iter().any(|a| a.contains(u) && a.contains(v)));
            }
            for a in &atoms {
                let sub = g.induced_subgraph(a).unwrap().graph;
                assert!(sub.is_connected());
                assert!(!brute_clique_cutset(&sub));
            }
            assert_eq!(atoms.len() == 1, !brute_clique_cutset(&g));
        }
    }
}

#[test]
fn bisimplicial_matches_brute_force() {
    for n in 1..=7 {
        for g in all_graphs(n) {
            for v in 0..n {
                let cert = bisimplicial_split(&g, v);
                assert_eq!(cert.is_some(), brute_bisimplicial(&g, v));
                if let Some(c) = cert {
                    assert!(c.is_valid_in(&g));
                }
            }
            let first = (0..n).find(|&v| brute_bisimplicial(&g, v));
            assert_eq!(find_bisimplicial(&g).map(|c| c.vertex), first);
        }
    }
}

#[test]
fn peel_matches_universal_vertices() {
    for n in 1..=6 {
        for g in all_graphs(n) {
            let p = peel_universal_clique(&g);
            for v in 0..n {
                let universal = (0..n).all(|w| w == v || g.has_edge(v, w));
                assert_eq!(p.peeled.contains(v), universal);
            }
            assert!(g.is_clique(&p.peeled));
            assert!(g.is_complete_to(&p.peeled, &p.remainder));
        }
    }
}

#[test]
fn shuffled_blowups_are_recognised() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let bases: Vec<Graph> = vec![petersen(), Graph::cycle(5), Graph::cycle(7), Graph::path(4)];
    for _ in 0..40 {
        let base = bases.choose(&mut rng).unwrap();
        let sizes: Vec<usize> = (0..base.order()).map(|_| rng.gen_range(1..=3)).collect();
        let b = base.clique_blowup(&sizes).unwrap();
        let mut perm: Vec<usize> = (0..b.graph.order()).collect();
        perm.shuffle(&mut rng);
        let g = b.graph.permute(&perm);
        let cert = recognize_clique_blowup(&g, base).unwrap().expect("blowup");
        assert!(cert.is_valid_in(&g));
        let mut got = cert.sizes();
        let mut want = sizes.clone();
        got.sort_unstable();
        want.sort_unstable();
        assert_eq!(got, want);
        // an extra pendant vertex breaks the blowup structure
        let extra = g.extend_with_vertex(&VertexSet::singleton(0)).unwrap();
        assert!(recognize_clique_blowup(&extra, base).unwrap().is_none());
    }
}
