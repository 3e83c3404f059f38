use p7c4_core::chromatic::exact_chromatic_number;
use p7c4_core::coloring::*;
use p7c4_core::enumerate::all_graphs;
use p7c4_core::families::petersen;
use p7c4_core::patterns::{is_member, GraphClass};
use p7c4_core::structure::recognize_clique_blowup;
use p7c4_core::{Graph, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn check(g: &Graph, class: GraphClass) -> usize {
    let cert = color_class(g, class).unwrap_or_else(|e| panic!("{e}"));
    cert.verify(g).unwrap();
    let chi = exact_chromatic_number(g).unwrap();
    assert!(chi <= cert.colors_used && cert.colors_used <= cert.claimed_bound);
    cert.colors_used
}

#[test]
fn certificates_on_all_small_members() {
    for n in 0..=8 {
        for g in all_graphs(n) {
            for class in GraphClass::ALL {
                if is_member(&g, class) {
                    check(&g, class);
                } else {
                    assert!(matches!(color_class(&g, class), Err(ColoringError::NotMember { .. })));
                }
            }
        }
    }
}

/// Grows a class member one vertex at a time, retrying neighbourhoods that
/// would leave the class.
fn random_member(class: GraphClass, n: usize, density: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::empty(0).unwrap();
    while g.order() < n {
        let nbrs: VertexSet = (0..g.order()).filter(|_| rng.gen_bool(density)).collect();
        let h = g.extend_with_vertex(&nbrs).unwrap();
        if is_member(&h, class) {
            g = h;
        }
    }
    g
}

#[test]
fn certificates_on_random_members() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for class in GraphClass::ALL {
        for _ in 0..60 {
            let n = rng.gen_range(9..=14);
            let density = rng.gen_range(0.2..0.7);
            let g = random_member(class, n, density, &mut rng);
            check(&g, class);
        }
    }
}

#[test]
fn petersen_blowup_is_exact_up_to_fourteen_vertices() {
    let p = petersen();
    let mut count = 0;
    let mut sizes = [1usize; 10];
    // every size vector with at most four extra vertices
    fn visit(i: usize, extra: usize, sizes: &mut [usize; 10], f: &mut dyn FnMut(&[usize; 10])) {
        if i == 10 {
            f(sizes);
            return;
        }
        for e in 0..=extra {
            sizes[i] = 1 + e;
            visit(i + 1, extra - e, sizes, f);
        }
        sizes[i] = 1;
    }
    visit(0, 4, &mut sizes, &mut |s| {
        count += 1;
        let b = p.clique_blowup(s).unwrap();
        let cert = recognize_clique_blowup(&b.graph, &p).unwrap().unwrap();
        let c = color_petersen_blowup(&b.graph, &cert).unwrap();
        c.verify(&b.graph).unwrap();
        assert_eq!(c.colors_used, exact_chromatic_number(&b.graph).unwrap(), "{s:?}");
    });
    assert_eq!(count, 1001);
}

#[test]
fn join_identity_with_petersen() {
    let base = color_kite_class(&petersen()).unwrap().colors_used;
    assert_eq!(base, 3);
    for ell in 0..5 {
        let g = petersen().join_with_clique(ell).unwrap();
        let c = color_kite_class(&g).unwrap();
        c.verify(&g).unwrap();
        assert_eq!(c.colors_used, ell + base);
    }
}
