//! Per-graph diagnosis of the three structure theorems and the three
//! coloring bounds, and aggregation over corpora.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chromatic::{exact_chromatic_number, DEFAULT_ORACLE_LIMIT};
use crate::clique::max_clique_size;
use crate::coloring::{color_class, ColoringError};
use crate::enumerate::{all_graphs, hereditary_members};
use crate::families::{BlowupBase, Family};
use crate::graph::{Graph, VertexSet};
use crate::io::write_graph6;
use crate::patterns::{contains_pattern, ForbiddenPattern, GraphClass};
use crate::structure::{
    find_bisimplicial, find_clique_cutset, peel_universal_clique, recognize_fixed,
    recognize_petersen_blowup,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Theorem {
    T1,
    T2,
    T3,
    C1,
    C2,
    C3,
}

impl Theorem {
    pub const ALL: [Theorem; 6] = [
        Theorem::T1,
        Theorem::T2,
        Theorem::T3,
        Theorem::C1,
        Theorem::C2,
        Theorem::C3,
    ];

    pub fn class(&self) -> GraphClass {
        match self {
            Theorem::T1 | Theorem::C1 => GraphClass::Diamond,
            Theorem::T2 | Theorem::C2 => GraphClass::Kite,
            Theorem::T3 | Theorem::C3 => GraphClass::Gem,
        }
    }

    pub fn is_coloring_bound(&self) -> bool {
        matches!(self, Theorem::C1 | Theorem::C2 | Theorem::C3)
    }

    pub fn statement(&self) -> &'static str {
        match self {
            Theorem::T1 => "connected, (P7, C4, diamond)-free, no clique cutset, not Petersen or F => δ <= max{2, ω-1}",
            Theorem::T2 => "connected, (P7, C4, kite)-free, δ >= ω+1, no clique cutset => G = K_ℓ + H, H Petersen or F",
            Theorem::T3 => "connected, (P7, C4, gem)-free, no clique cutset, not a Petersen blowup => bisimplicial vertex",
            Theorem::C1 => "(P7, C4, diamond)-free => χ <= max{3, ω}",
            Theorem::C2 => "(P7, C4, kite)-free => χ <= ω+1",
            Theorem::C3 => "(P7, C4, gem)-free => χ <= 2ω-1",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown theorem {0:?}, expected one of T1 T2 T3 C1 C2 C3")]
pub struct UnknownTheorem(pub String);

impl FromStr for Theorem {
    type Err = UnknownTheorem;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| UnknownTheorem(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    /// Some hypothesis fails.
    Vacuous,
    Verified,
    Violated,
}

/// Every hypothesis and the conclusion of one theorem on one graph. The
/// conclusion of a structure theorem is evaluated even when hypotheses fail,
/// which is what the necessity examples need.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnosis {
    pub theorem: Theorem,
    pub n: usize,
    pub omega: usize,
    pub delta: usize,
    pub connected: bool,
    /// Those of `P7`, `C4` and the class pattern that occur.
    pub present_patterns: Vec<ForbiddenPattern>,
    /// `None` when the graph is disconnected or the theorem does not ask.
    pub clique_cutset: Option<bool>,
    /// Petersen, F or a Petersen blowup, when the theorem exempts it.
    pub exemption: Option<String>,
    /// `δ >= ω + 1` for T2.
    pub degree_condition: Option<bool>,
    pub hypotheses_hold: bool,
    /// `None` for a coloring bound on a non-member.
    pub conclusion_holds: Option<bool>,
    pub colors_used: Option<usize>,
    pub bound: Option<usize>,
    pub oracle_chi: Option<usize>,
    pub detail: String,
}

impl Diagnosis {
    pub fn outcome(&self) -> Outcome {
        match (self.hypotheses_hold, self.conclusion_holds) {
            (false, _) => Outcome::Vacuous,
            (true, Some(true)) => Outcome::Verified,
            _ => Outcome::Violated,
        }
    }

    pub fn is_member(&self) -> bool {
        self.present_patterns.is_empty()
    }
}

pub fn diagnose(g: &Graph, theorem: Theorem) -> Diagnosis {
    let class = theorem.class();
    let omega = max_clique_size(g);
    let delta = g.min_degree();
    let connected = g.is_connected() && g.order() > 0;
    let present_patterns: Vec<ForbiddenPattern> = class
        .patterns()
        .into_iter()
        .filter(|&p| contains_pattern(g, p))
        .collect();
    let member = present_patterns.is_empty();
    let mut d = Diagnosis {
        theorem,
        n: g.order(),
        omega,
        delta,
        connected,
        present_patterns,
        clique_cutset: None,
        exemption: None,
        degree_condition: None,
        hypotheses_hold: false,
        conclusion_holds: None,
        colors_used: None,
        bound: None,
        oracle_chi: None,
        detail: String::new(),
    };
    if theorem.is_coloring_bound() {
        diagnose_coloring(g, &mut d);
        return d;
    }
    if connected {
        d.clique_cutset = Some(matches!(find_clique_cutset(g), Ok(Some(_))));
    }
    let no_cutset = d.clique_cutset == Some(false);
    match theorem {
        Theorem::T1 => {
            d.exemption = recognize_fixed(g).map(|h| h.to_string());
            let allowed = 2.max(omega.saturating_sub(1));
            d.conclusion_holds = Some(delta <= allowed);
            d.hypotheses_hold = connected && member && no_cutset && d.exemption.is_none();
            d.detail = format!("δ = {delta}, max{{2, ω-1}} = {allowed}");
        }
        Theorem::T2 => {
            let degree = delta > omega;
            d.degree_condition = Some(degree);
            let peel = peel_universal_clique(g);
            let remainder = if peel.remainder.is_empty() {
                None
            } else {
                recognize_fixed(&g.induced_subgraph(&peel.remainder).expect("nonempty").graph)
            };
            d.conclusion_holds = Some(remainder.is_some());
            d.hypotheses_hold = connected && member && no_cutset && degree;
            d.detail = match remainder {
                Some(h) => format!("G = K_{} + {h}", peel.ell),
                None => format!(
                    "peeling {} universal vertices leaves neither Petersen nor F",
                    peel.ell
                ),
            };
        }
        Theorem::T3 => {
            if recognize_petersen_blowup(g).is_some() {
                d.exemption = Some("Petersen blowup".into());
            }
            let b = find_bisimplicial(g);
            d.conclusion_holds = Some(b.is_some());
            d.hypotheses_hold = connected && member && no_cutset && d.exemption.is_none();
            d.detail = match b {
                Some(c) => format!("vertex {} is bisimplicial", c.vertex),
                None => "no bisimplicial vertex".into(),
            };
        }
        _ => unreachable!("coloring bounds handled above"),
    }
    d
}

fn diagnose_coloring(g: &Graph, d: &mut Diagnosis) {
    d.hypotheses_hold = d.is_member();
    if !d.hypotheses_hold {
        d.detail = "not a class member".into();
        return;
    }
    match color_class(g, d.theorem.class()) {
        Ok(cert) => {
            d.colors_used = Some(cert.colors_used);
            d.bound = Some(cert.claimed_bound);
            let mut ok = cert.verify(g).is_ok();
            if g.order() <= DEFAULT_ORACLE_LIMIT {
                let chi = exact_chromatic_number(g).expect("within oracle limit");
                d.oracle_chi = Some(chi);
                ok &= chi <= cert.colors_used;
            }
            d.conclusion_holds = Some(ok);
            d.detail = format!("{} colors, bound {}", cert.colors_used, cert.claimed_bound);
        }
        Err(e) => {
            d.conclusion_holds = Some(false);
            d.detail = e.to_string();
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub index: usize,
    pub label: String,
    pub graph6: String,
    pub diagnosis: Diagnosis,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkippedEntry {
    pub index: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationRun {
    pub corpus: String,
    pub theorem: Theorem,
    pub total: usize,
    pub members: usize,
    pub vacuous: usize,
    pub verified: usize,
    pub violated: usize,
    pub violations: Vec<Violation>,
    pub skipped: Vec<SkippedEntry>,
}

impl VerificationRun {
    pub fn new(corpus: impl Into<String>, theorem: Theorem) -> Self {
        VerificationRun {
            corpus: corpus.into(),
            theorem,
            total: 0,
            members: 0,
            vacuous: 0,
            verified: 0,
            violated: 0,
            violations: Vec::new(),
            skipped: Vec::new(),
        }
    }

    pub fn record(&mut self, label: &str, g: &Graph) -> Diagnosis {
        let d = diagnose(g, self.theorem);
        let index = self.total + self.skipped.len();
        self.total += 1;
        self.members += d.is_member() as usize;
        match d.outcome() {
            Outcome::Vacuous => self.vacuous += 1,
            Outcome::Verified => self.verified += 1,
            Outcome::Violated => {
                self.violated += 1;
                self.violations.push(Violation {
                    index,
                    label: label.to_string(),
                    graph6: write_graph6(g),
                    diagnosis: d.clone(),
                });
            }
        }
        d
    }

    pub fn skip(&mut self, reason: impl Into<String>) {
        let index = self.total + self.skipped.len();
        self.skipped.push(SkippedEntry {
            index,
            reason: reason.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.violated == 0
    }
}

pub fn verify_corpus<'a, I>(corpus: &str, theorem: Theorem, graphs: I) -> VerificationRun
where
    I: IntoIterator<Item = (String, &'a Graph)>,
{
    let mut run = VerificationRun::new(corpus, theorem);
    for (label, g) in graphs {
        run.record(&label, g);
    }
    run
}

/// All graphs on `1..=max_n` vertices (connected ones only if asked), one
/// per isomorphism class.
pub fn exhaustive_corpus(max_n: usize, connected_only: bool) -> Vec<Graph> {
    (1..=max_n)
        .flat_map(all_graphs)
        .filter(|g| !connected_only || g.is_connected())
        .collect()
}

/// All members of `class` on `1..=max_n` vertices, by hereditary
/// extension; reaches one order past the exhaustive limit cheaply.
pub fn class_members(class: GraphClass, max_n: usize) -> Vec<Vec<Graph>> {
    let (p7, c4, third) = (ForbiddenPattern::P7, ForbiddenPattern::C4, class.third_pattern());
    hereditary_members(max_n, |g| {
        !contains_pattern(g, third) && !contains_pattern(g, c4) && !contains_pattern(g, p7)
    })
}

/// Named constructions up to `max_n` vertices, labelled.
pub fn family_corpus(max_n: usize) -> Vec<(String, Graph)> {
    let mut fams = vec![Family::Petersen, Family::F, Family::G3, Family::G4, Family::G5];
    fams.extend((2..=4).map(Family::G1));
    fams.extend((1..=2).map(Family::G6));
    fams.extend([vec![2; 7], vec![3; 7], vec![4; 7], vec![2, 3, 2, 3, 2, 3, 2]].into_iter().map(Family::G2));
    fams.extend((3..=max_n).map(Family::Cycle));
    fams.extend((1..=12).map(Family::Path));
    fams.extend((1..=8).map(Family::Complete));
    for ell in 0..=4 {
        fams.push(Family::Join(ell, Box::new(Family::Petersen)));
        fams.push(Family::Join(ell, Box::new(Family::F)));
    }
    for t in 1..=3 {
        fams.push(Family::Blowup(BlowupBase::Petersen, vec![t; 10]));
        fams.push(Family::Blowup(BlowupBase::Cycle(7), vec![t; 7]));
    }
    fams.push(Family::Blowup(BlowupBase::Petersen, vec![1, 2, 3, 1, 2, 3, 1, 2, 3, 1]));
    fams.push(Family::Blowup(BlowupBase::Petersen, vec![4, 1, 1, 1, 1, 1, 1, 1, 1, 1]));
    fams.push(Family::Blowup(BlowupBase::G5, vec![2; 14]));
    fams.push(Family::Blowup(BlowupBase::F, vec![2; 10]));
    fams.into_iter()
        .filter_map(|f| f.generate().ok().map(|g| (f.label(), g)))
        .filter(|(_, g)| g.order() <= max_n)
        .collect()
}

/// Blowups of a `k`-vertex base with total size at most `max_total`: every
/// vector with at most two enlarged classes, the uniform vectors, and
/// `random` further vectors drawn from `seed`.
pub fn blowup_size_vectors(k: usize, max_total: usize, random: usize, seed: u64) -> Vec<Vec<usize>> {
    let spare = max_total.saturating_sub(k);
    let mut out: Vec<Vec<usize>> = vec![vec![1; k]];
    for i in 0..k {
        for a in 1..=spare {
            let mut v = vec![1; k];
            v[i] += a;
            out.push(v.clone());
            for j in i + 1..k {
                for b in 1..=spare - a {
                    let mut w = v.clone();
                    w[j] += b;
                    out.push(w);
                }
            }
        }
    }
    for t in 2..=max_total / k {
        out.push(vec![t; k]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random {
        let mut v = vec![1; k];
        for _ in 0..rng.gen_range(0..=spare) {
            v[rng.gen_range(0..k)] += 1;
        }
        out.push(v);
    }
    out.sort();
    out.dedup();
    out
}

/// Grows members of `class` by random one-vertex extensions, rejecting
/// extensions that leave the class. Deterministic in `seed`.
pub fn random_members(
    class: GraphClass,
    count: usize,
    min_n: usize,
    max_n: usize,
    seed: u64,
) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(min_n..=max_n);
            let density = rng.gen_range(0.15..0.75);
            let mut g = Graph::empty(0).expect("empty graph");
            let mut attempts = 0;
            while g.order() < n && attempts < 50 * n {
                attempts += 1;
                let nbrs: VertexSet = (0..g.order()).filter(|_| rng.gen_bool(density)).collect();
                let h = g.extend_with_vertex(&nbrs).expect("within size limit");
                let (p7, c4) = (ForbiddenPattern::P7, ForbiddenPattern::C4);
                if !contains_pattern(&h, class.third_pattern())
                    && !contains_pattern(&h, c4)
                    && !contains_pattern(&h, p7)
                {
                    g = h;
                }
            }
            g
        })
        .collect()
}

/// Whether a coloring error signals a falsified statement rather than a
/// refused input.
pub fn is_theorem_violation(e: &ColoringError) -> bool {
    !matches!(e, ColoringError::NotMember { .. })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{g1, g2, g3, petersen};

    #[test]
    fn g1_is_vacuous_for_t1_but_breaks_its_conclusion() {
        let g = g1(2).unwrap().graph;
        let d = diagnose(&g, Theorem::T1);
        assert_eq!(d.outcome(), Outcome::Vacuous);
        assert_eq!(d.present_patterns, vec![ForbiddenPattern::Diamond]);
        assert_eq!(d.clique_cutset, Some(false));
        assert_eq!((d.delta, d.omega), (5, 4));
        assert_eq!(d.conclusion_holds, Some(false));
    }

    #[test]
    fn exemptions() {
        let d = diagnose(&petersen(), Theorem::T1);
        assert_eq!(d.exemption.as_deref(), Some("Petersen"));
        assert_eq!(d.outcome(), Outcome::Vacuous);
        let d = diagnose(&petersen(), Theorem::T3);
        assert_eq!(d.exemption.as_deref(), Some("Petersen blowup"));
        let d = diagnose(&petersen().join_with_clique(1).unwrap(), Theorem::T2);
        assert_eq!(d.outcome(), Outcome::Verified);
    }

    #[test]
    fn run_counts() {
        let corpus = [Graph::cycle(7), g3(), g2(&[2; 7]).unwrap()];
        let run = verify_corpus(
            "sample",
            Theorem::T1,
            corpus.iter().enumerate().map(|(i, g)| (i.to_string(), g)),
        );
        assert_eq!((run.total, run.members, run.verified, run.vacuous, run.violated), (3, 1, 1, 2, 0));
    }

    #[test]
    fn theorem_parsing() {
        assert_eq!("t2".parse::<Theorem>().unwrap(), Theorem::T2);
        assert!("T4".parse::<Theorem>().is_err());
    }

    #[test]
    fn size_vectors() {
        let v = blowup_size_vectors(10, 12, 0, 1);
        // one base vector, 10 * 2 singles, 45 pairs of +1
        assert_eq!(v.len(), 1 + 20 + 45);
        assert!(v.iter().all(|s| s.iter().sum::<usize>() <= 12));
    }

    #[test]
    fn random_members_are_members() {
        for g in random_members(GraphClass::Gem, 5, 6, 10, 3) {
            assert!(crate::patterns::is_member(&g, GraphClass::Gem));
        }
    }
}
