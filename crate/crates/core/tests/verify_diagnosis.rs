use p7c4_core::enumerate::all_graphs;
use p7c4_core::families::{g1, g2, g3, g4, g6, graph_f, petersen};
use p7c4_core::verify::{
    diagnose, exhaustive_corpus, family_corpus, verify_corpus, Outcome, Theorem,
};
use p7c4_core::Graph;

fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    (0u32..1 << items.len())
        .map(|m| {
            (0..items.len())
                .filter(|i| m >> i & 1 == 1)
                .map(|i| items[i])
                .collect()
        })
        .collect()
}

fn is_clique(g: &Graph, s: &[usize]) -> bool {
    s.iter()
        .enumerate()
        .all(|(i, &u)| s[i + 1..].iter().all(|&v| g.has_edge(u, v)))
}

fn components(g: &Graph, removed: &[usize]) -> usize {
    let n = g.order();
    let mut seen: Vec<bool> = (0..n).map(|v| removed.contains(&v)).collect();
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(u) = stack.pop() {
            for v in 0..n {
                if !seen[v] && g.has_edge(u, v) {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    count
}

fn brute_omega(g: &Graph) -> usize {
    let all: Vec<usize> = (0..g.order()).collect();
    subsets(&all).into_iter().filter(|s| is_clique(g, s)).map(|s| s.len()).max().unwrap_or(0)
}

fn brute_cutset(g: &Graph) -> bool {
    let all: Vec<usize> = (0..g.order()).collect();
    let base = components(g, &[]);
    subsets(&all).into_iter().any(|s| is_clique(g, &s) && components(g, &s) > base)
}

fn brute_bisimplicial(g: &Graph) -> bool {
    (0..g.order()).any(|v| {
        let nb: Vec<usize> = (0..g.order()).filter(|&u| g.has_edge(u, v)).collect();
        subsets(&nb).into_iter().any(|a| {
            let b: Vec<usize> = nb.iter().copied().filter(|u| !a.contains(u)).collect();
            is_clique(g, &a) && is_clique(g, &b)
        })
    })
}

#[test]
fn diagnosis_fields_match_brute_force() {
    for n in 1..=7 {
        for g in all_graphs(n) {
            let d1 = diagnose(&g, Theorem::T1);
            assert_eq!(d1.omega, brute_omega(&g));
            assert_eq!(d1.delta, (0..n).map(|v| g.degree(v)).min().unwrap());
            assert_eq!(d1.connected, components(&g, &[]) == 1);
            if d1.connected {
                assert_eq!(d1.clique_cutset, Some(brute_cutset(&g)));
            }
            let d3 = diagnose(&g, Theorem::T3);
            assert_eq!(d3.conclusion_holds, Some(brute_bisimplicial(&g)));
        }
    }
}

#[test]
fn no_violations_on_small_graphs() {
    let graphs = exhaustive_corpus(7, false);
    for theorem in Theorem::ALL {
        let run = verify_corpus("n <= 7", theorem, graphs.iter().map(|g| (String::new(), g)));
        assert_eq!(run.total, 1252);
        assert_eq!(run.violated, 0, "{theorem}: {:?}", run.violations.first());
        assert_eq!(run.total, run.vacuous + run.verified);
        if theorem.is_coloring_bound() {
            assert_eq!(run.verified, run.members);
        }
    }
}

#[test]
fn exceptional_graphs_are_vacuous_for_t1() {
    let p = diagnose(&petersen(), Theorem::T1);
    assert_eq!(p.exemption.as_deref(), Some("Petersen"));
    assert_eq!(p.outcome(), Outcome::Vacuous);
    // F is exempt too, though it already fails P7-freeness
    let f = diagnose(&graph_f(), Theorem::T1);
    assert_eq!(f.exemption.as_deref(), Some("F"));
    assert_eq!(f.outcome(), Outcome::Vacuous);
}

#[test]
fn necessity_examples_fail_their_conclusions() {
    let cases = [
        (g1(2).unwrap().graph, Theorem::T1),
        (g1(2).unwrap().graph, Theorem::T2),
        (g2(&[2; 7]).unwrap(), Theorem::T3),
        (g3(), Theorem::T1),
        (g4(), Theorem::T2),
        (g6(1).unwrap().graph, Theorem::T3),
        (g6(2).unwrap().graph, Theorem::T3),
    ];
    for (g, theorem) in cases {
        let d = diagnose(&g, theorem);
        assert_eq!(d.conclusion_holds, Some(false), "{theorem} {}", d.detail);
        assert_eq!(d.present_patterns.len(), 1);
        assert_eq!(d.outcome(), Outcome::Vacuous);
    }
    let d = diagnose(&g1(2).unwrap().graph, Theorem::T1);
    assert_eq!((d.delta, d.omega, d.clique_cutset), (5, 4, Some(false)));
}

#[test]
fn joins_with_petersen_satisfy_t2() {
    for l in 0..=4 {
        let g = petersen().join_with_clique(l).unwrap();
        let d = diagnose(&g, Theorem::T2);
        assert_eq!(d.outcome(), Outcome::Verified, "{}", d.detail);
        assert_eq!(d.omega, l + 2);
    }
}

#[test]
fn family_corpus_colorings_hold() {
    let corpus = family_corpus(20);
    for theorem in [Theorem::C1, Theorem::C2, Theorem::C3] {
        let run = verify_corpus("families", theorem, corpus.iter().map(|(l, g)| (l.clone(), g)));
        assert!(run.passed(), "{theorem}: {:?}", run.violations.first());
        assert!(run.verified > 0);
    }
}
