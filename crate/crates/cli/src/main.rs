//! `p7c4`: command-line front end.
//!
//! Every subcommand prints JSON objects of the form
//! `{"input": .., "command": .., "result": ..}`, one per input graph.
//! Exit status: 0 on success, 1 when a violation or failed property is
//! found, 2 on usage errors, unreadable input or a refused (non-member) graph.

use std::fs;
use std::io::{self, BufReader, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use p7c4_core::chromatic::exact_chromatic_number;
use p7c4_core::coloring::{color_class, ColoringError};
use p7c4_core::enumerate::EXHAUSTIVE_MAX;
use p7c4_core::families::Family;
use p7c4_core::io::{looks_like_edge_list, parse_edge_list, parse_graph6, read_graph6_lines, write_graph6};
use p7c4_core::patterns::{class_membership, find_induced_pattern, ForbiddenPattern, GraphClass};
use p7c4_core::seven_hole::{analyze_holes, HoleMode};
use p7c4_core::structure::{
    decompose_into_atoms, find_bisimplicial, find_clique_cutset, peel_universal_clique,
    recognize_fixed, recognize_petersen_blowup,
};
use p7c4_core::verify::{exhaustive_corpus, random_members, Theorem, VerificationRun};
use p7c4_core::Graph;

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "p7c4", version, about = "Recognition, decomposition and coloring of (P7, C4, diamond/kite/gem)-free graphs")]
struct Cli {
    /// Read graphs from this file instead of standard input.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Input format; `auto` treats text whose first line is `n m` as an edge list.
    #[arg(long, global = true, value_enum, default_value_t = Format::Auto)]
    format: Format,
    /// Emit JSON (the default and only output format; kept for scripts).
    #[arg(long, global = true)]
    json: bool,
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Auto,
    Graph6,
    Edges,
}

#[derive(Subcommand)]
enum Command {
    /// Test membership in the (P7, C4, X)-free classes and report a witness.
    Classify {
        #[arg(long)]
        class: Option<GraphClass>,
    },
    /// Color a class member within its bound and print the certificate.
    Color {
        #[arg(long)]
        class: GraphClass,
    },
    /// Clique cutset tree, universal peel, bisimplicial vertex and blowup structure.
    Decompose,
    /// Partition around 7-holes and check the hole properties.
    AnalyzeHole {
        #[arg(long, default_value = "gem")]
        mode: HoleMode,
        /// Analyze every 7-hole rather than only the first.
        #[arg(long)]
        all_holes: bool,
    },
    /// Verify a theorem or corollary over a corpus.
    Verify {
        /// T1, T2, T3 (structure) or C1, C2, C3 (coloring bounds).
        #[arg(long)]
        theorem: Theorem,
        /// All graphs on up to N vertices.
        #[arg(long, value_name = "N", conflicts_with_all = ["corpus", "family", "random"])]
        exhaustive: Option<usize>,
        /// Restrict --exhaustive to connected graphs.
        #[arg(long, requires = "exhaustive")]
        connected: bool,
        /// graph6 lines.
        #[arg(long, value_name = "FILE", conflicts_with_all = ["family", "random"])]
        corpus: Option<PathBuf>,
        /// A single named graph, as for `generate`.
        #[arg(long, value_name = "NAME", conflicts_with = "random")]
        family: Option<String>,
        /// Family parameters, e.g. `--param t=2` or `--param sizes=2,2,2,2,2,2,2`.
        #[arg(long, value_name = "K=V", value_parser = parse_param)]
        param: Vec<(String, String)>,
        /// Random members of the theorem's class.
        #[arg(long, value_name = "COUNT")]
        random: Option<usize>,
        #[arg(long, default_value_t = 8)]
        min_n: usize,
        #[arg(long, default_value_t = 14)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Build a named graph.
    Generate {
        /// petersen, f, g1, g2, g3, g4, g5, g6, blowup, join, cycle, path or complete.
        #[arg(long, value_name = "NAME")]
        family: String,
        #[arg(long, value_name = "K=V", value_parser = parse_param)]
        param: Vec<(String, String)>,
    },
    /// Compare ω, χ and the class colorings against the exact oracle.
    OracleCheck,
}

fn parse_param(s: &str) -> Result<(String, String), String> {
    s.split_once('=')
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .ok_or_else(|| format!("expected key=value, got {s:?}"))
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

struct Out {
    pretty: bool,
    code: u8,
}

impl Out {
    fn emit(&mut self, input: Value, command: &str, result: Value) {
        let v = json!({"input": input, "command": command, "result": result});
        let text = if self.pretty {
            serde_json::to_string_pretty(&v)
        } else {
            serde_json::to_string(&v)
        };
        println!("{}", text.expect("serializable"));
    }

    fn raise(&mut self, code: u8) {
        self.code = self.code.max(code);
    }
}

fn read_text(path: &Option<PathBuf>) -> Result<String, Failure> {
    match path {
        Some(p) => fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| usage(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn read_graphs(cli: &Cli) -> Result<Vec<Graph>, Failure> {
    let text = read_text(&cli.input)?;
    let edges = match cli.format {
        Format::Edges => true,
        Format::Graph6 => false,
        Format::Auto => looks_like_edge_list(&text),
    };
    let graphs = if edges {
        vec![parse_edge_list(&text).map_err(|e| usage(format!("edge list: {e}")))?]
    } else {
        text.lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| parse_graph6(l).map_err(|e| usage(format!("line {}: {e}", i + 1))))
            .collect::<Result<_, _>>()?
    };
    if graphs.is_empty() {
        return Err(usage("no input graph"));
    }
    Ok(graphs)
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn classify(g: &Graph, class: Option<GraphClass>) -> Value {
    match class {
        Some(c) => to_value(&class_membership(g, c)),
        None => {
            let patterns: Vec<Value> = [
                ForbiddenPattern::P7,
                ForbiddenPattern::C4,
                ForbiddenPattern::Diamond,
                ForbiddenPattern::Kite,
                ForbiddenPattern::Gem,
            ]
            .into_iter()
            .map(|p| json!({"pattern": p, "witness": find_induced_pattern(g, p)}))
            .collect();
            let classes: Vec<Value> = [GraphClass::Diamond, GraphClass::Kite, GraphClass::Gem]
                .into_iter()
                .map(|c| to_value(&class_membership(g, c)))
                .collect();
            json!({"stats": g.stats(), "patterns": patterns, "classes": classes})
        }
    }
}

fn color(g: &Graph, class: GraphClass, out: &mut Out) -> Value {
    match color_class(g, class) {
        Ok(cert) => match cert.verify(g) {
            Ok(()) => to_value(&cert),
            Err(e) => {
                out.raise(EXIT_VIOLATION);
                json!({"error": e.to_string(), "certificate": cert})
            }
        },
        Err(e) => {
            out.raise(if matches!(e, ColoringError::NotMember { .. }) {
                EXIT_USAGE
            } else {
                EXIT_VIOLATION
            });
            coloring_error(&e)
        }
    }
}

fn coloring_error(e: &ColoringError) -> Value {
    let mut v = json!({"error": e.to_string()});
    match e {
        ColoringError::NotMember { class, witness } => {
            v["refused"] = json!(true);
            v["class"] = to_value(class);
            v["witness"] = to_value(witness);
        }
        ColoringError::StructuralContradiction { subgraph, trace, .. } => {
            v["subgraph"] = to_value(subgraph);
            v["trace"] = to_value(trace);
        }
        _ => {}
    }
    v
}

fn decompose(g: &Graph) -> Value {
    let (cutset, atoms) = if g.is_connected() {
        (
            to_value(&find_clique_cutset(g).ok().flatten()),
            to_value(&decompose_into_atoms(g).ok()),
        )
    } else {
        (Value::Null, Value::Null)
    };
    json!({
        "stats": g.stats(),
        "connected": g.is_connected(),
        "clique_cutset": cutset,
        "atoms": atoms,
        "peel": peel_universal_clique(g),
        "bisimplicial": find_bisimplicial(g),
        "fixed_graph": recognize_fixed(g),
        "petersen_blowup": recognize_petersen_blowup(g),
    })
}

fn analyze(g: &Graph, mode: HoleMode, all: bool, out: &mut Out) -> Value {
    let analyses = analyze_holes(g, mode, !all);
    if analyses.iter().any(|a| a.reports.iter().any(|r| !r.holds)) {
        out.raise(EXIT_VIOLATION);
    }
    json!({"mode": mode, "holes": analyses.len(), "analyses": analyses})
}

fn oracle_check(g: &Graph, out: &mut Out) -> Result<Value, Failure> {
    let chi = exact_chromatic_number(g).map_err(|e| usage(e.to_string()))?;
    let mut classes = Vec::new();
    for class in [GraphClass::Diamond, GraphClass::Kite, GraphClass::Gem] {
        let entry = match color_class(g, class) {
            Ok(cert) => {
                let ok = cert.verify(g).is_ok() && chi <= cert.colors_used;
                if !ok {
                    out.raise(EXIT_VIOLATION);
                }
                json!({"class": class, "member": true, "colors_used": cert.colors_used,
                       "bound": cert.claimed_bound, "consistent": ok})
            }
            Err(ColoringError::NotMember { .. }) => json!({"class": class, "member": false}),
            Err(e) => {
                out.raise(EXIT_VIOLATION);
                json!({"class": class, "member": true, "error": coloring_error(&e)})
            }
        };
        classes.push(entry);
    }
    let stats = g.stats();
    Ok(json!({"omega": stats.omega, "chi": chi, "classes": classes}))
}

fn verify(cli: &Cli, out: &mut Out) -> Result<(), Failure> {
    let Command::Verify {
        theorem,
        exhaustive,
        connected,
        corpus,
        family,
        param,
        random,
        min_n,
        max_n,
        seed,
    } = &cli.command
    else {
        unreachable!()
    };
    let theorem = *theorem;
    let run = if let Some(n) = *exhaustive {
        if n > EXHAUSTIVE_MAX {
            return Err(usage(format!("--exhaustive is limited to n <= {EXHAUSTIVE_MAX}")));
        }
        let graphs = exhaustive_corpus(n, *connected);
        let label = format!("exhaustive n <= {n}{}", if *connected { ", connected" } else { "" });
        collect(label, theorem, graphs.iter().map(|g| (String::new(), g)))
    } else if let Some(path) = corpus {
        let file = fs::File::open(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        let mut run = VerificationRun::new(format!("corpus {}", path.display()), theorem);
        for (line, text, parsed) in read_graph6_lines(BufReader::new(file)) {
            match parsed {
                Ok(g) => {
                    run.record(&format!("line {line}"), &g);
                }
                Err(e) => run.skip(format!("line {line} {text:?}: {e}")),
            }
        }
        run
    } else if let Some(name) = family {
        let fam = Family::parse(name, param).map_err(|e| usage(e.to_string()))?;
        let g = fam.generate().map_err(|e| usage(e.to_string()))?;
        collect(format!("family {}", fam.label()), theorem, [(fam.label(), &g)])
    } else if let Some(count) = *random {
        if min_n > max_n {
            return Err(usage("--min-n exceeds --max-n"));
        }
        let graphs = random_members(theorem.class(), count, *min_n, *max_n, *seed);
        let label = format!("{count} random {} members, n in {min_n}..={max_n}, seed {seed}", theorem.class());
        collect(label, theorem, graphs.iter().map(|g| (String::new(), g)))
    } else {
        let graphs = read_graphs(cli)?;
        collect("input".into(), theorem, graphs.iter().map(|g| (write_graph6(g), g)))
    };
    if !run.passed() {
        out.raise(EXIT_VIOLATION);
    }
    out.emit(json!(run.corpus), "verify", to_value(&run));
    Ok(())
}

fn collect<'a>(label: String, theorem: Theorem, graphs: impl IntoIterator<Item = (String, &'a Graph)>) -> VerificationRun {
    let mut run = VerificationRun::new(label, theorem);
    for (name, g) in graphs {
        run.record(&name, g);
    }
    run
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let mut out = Out {
        pretty: cli.pretty,
        code: 0,
    };
    let name = match &cli.command {
        Command::Classify { .. } => "classify",
        Command::Color { .. } => "color",
        Command::Decompose => "decompose",
        Command::AnalyzeHole { .. } => "analyze-hole",
        Command::OracleCheck => "oracle-check",
        Command::Verify { .. } => return verify(cli, &mut out).map(|()| out.code),
        Command::Generate { family, param } => {
            let fam = Family::parse(family, param).map_err(|e| usage(e.to_string()))?;
            let g = fam.generate().map_err(|e| usage(e.to_string()))?;
            let g6 = write_graph6(&g);
            let result = json!({"family": fam.label(), "graph6": g6, "stats": g.stats(), "edges": g.edges()});
            out.emit(json!(g6), "generate", result);
            return Ok(out.code);
        }
    };
    for g in read_graphs(cli)? {
        let result = match &cli.command {
            Command::Classify { class } => classify(&g, *class),
            Command::Color { class } => color(&g, *class, &mut out),
            Command::Decompose => decompose(&g),
            Command::AnalyzeHole { mode, all_holes } => analyze(&g, *mode, *all_holes, &mut out),
            Command::OracleCheck => oracle_check(&g, &mut out)?,
            Command::Verify { .. } | Command::Generate { .. } => unreachable!(),
        };
        out.emit(json!(write_graph6(&g)), name, result);
    }
    Ok(out.code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("p7c4: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
