use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use prodstab::factor::{
    cartesian_prime_factorization, direct_factor_search, has_cycle_direct_factor, DirectDecomposition,
};
use prodstab::io::{emit_edge_list, parse_graph};
use prodstab::report::{Witness, SCHEMA_VERSION};
use prodstab::search::automorphism_group;
use prodstab::skeleton::{cartesian_skeleton, dispensable_edges};
use prodstab::stability::{
    is_nontrivial_pair, is_nontrivially_unstable, is_stable_graph, is_stable_pair, StabilityReport,
};
use prodstab::tfa::tfa_group;
use prodstab::verify::{search_conjecture, verify_claim, Outcome, Report};
use prodstab::{Error, Graph};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "prodstab", version, about = "Stability of graphs under the direct product")]
struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Json, global = true)]
    format: OutputFormat,
    /// Refuse input graphs with more vertices than this.
    #[arg(long, global = true)]
    max_order: Option<usize>,
    /// Worker threads for corpus runs.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Include permutation images in reports.
    #[arg(long, global = true)]
    witness: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FactorMode {
    Cartesian,
    Direct,
    Cycle,
}

#[derive(Subcommand)]
enum Command {
    /// Cartesian skeleton of a graph.
    Skeleton { file: String },
    /// Automorphism group order and generators.
    Aut { file: String },
    /// Two-fold automorphism group order and a non-diagonal element if any.
    Tfa { file: String },
    /// Stability of a single graph.
    Stability { file: String },
    /// Stability of a graph pair.
    PairStability { left: String, right: String },
    /// Factor a graph under the Cartesian or direct product.
    Factor {
        #[arg(long, value_enum)]
        mode: FactorMode,
        file: String,
    },
    /// Check a claim over its built-in corpus.
    Verify {
        #[arg(long)]
        claim: String,
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Search a corpus for counterexamples to the stability conjecture.
    Search {
        #[arg(long)]
        corpus: String,
    },
}

enum Failure {
    Usage(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        if e.is_cap() {
            Failure::Cap(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

struct Output {
    json: Value,
    text: String,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
                OutputFormat::Text => print!("{}", out.text),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAILURE)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("refused: {msg}");
            ExitCode::from(EXIT_CAP)
        }
    }
}

fn read_graph(cli: &Cli, path: &str) -> Result<Graph, Failure> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?
    };
    let g = parse_graph(&text).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
    if let Some(limit) = cli.max_order {
        if g.order() > limit {
            return Err(Failure::Cap(format!(
                "{path} has {} vertices, --max-order is {limit}",
                g.order()
            )));
        }
    }
    Ok(g)
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Skeleton { file } => skeleton(&read_graph(cli, file)?),
        Command::Aut { file } => aut(cli, &read_graph(cli, file)?),
        Command::Tfa { file } => tfa(cli, &read_graph(cli, file)?),
        Command::Stability { file } => stability(cli, &read_graph(cli, file)?),
        Command::PairStability { left, right } => {
            pair_stability(cli, &read_graph(cli, left)?, &read_graph(cli, right)?)
        }
        Command::Factor { mode, file } => factor(*mode, &read_graph(cli, file)?),
        Command::Verify { claim, nmax } => Ok(report_output(cli, verify_claim(claim, *nmax)?)),
        Command::Search { corpus } => Ok(report_output(cli, search_conjecture(corpus)?)),
    }
}

fn skeleton(g: &Graph) -> Result<Output, Failure> {
    let s = cartesian_skeleton(g);
    let sizes: Vec<usize> = s.components().iter().map(Vec::len).collect();
    let dispensable = dispensable_edges(g).len();
    let edge_list = emit_edge_list(&s);
    let text = format!(
        "{edge_list}components {}\nsizes {}\ndispensable {dispensable}\n",
        sizes.len(),
        join(&sizes)
    );
    Ok(Output {
        json: json!({
            "schemaVersion": SCHEMA_VERSION,
            "skeleton": edge_list,
            "components": sizes.len(),
            "sizes": sizes,
            "dispensable_count": dispensable,
        }),
        text,
        ok: true,
    })
}

fn aut(cli: &Cli, g: &Graph) -> Result<Output, Failure> {
    let group = automorphism_group(g);
    let gens: Vec<String> = group.generators().iter().map(ToString::to_string).collect();
    let mut json = json!({ "schemaVersion": SCHEMA_VERSION, "order": group.order().to_string() });
    let mut text = format!("order {}\n", group.order());
    if cli.witness {
        json["generators"] = json!(gens);
        for p in &gens {
            text.push_str(&format!("generator {p}\n"));
        }
    }
    Ok(Output { json, text, ok: true })
}

fn tfa(cli: &Cli, g: &Graph) -> Result<Output, Failure> {
    let group = tfa_group(g)?;
    let nondiag = group.generators().into_iter().find(|p| !p.is_diagonal());
    let mut json = json!({
        "schemaVersion": SCHEMA_VERSION,
        "order": group.order().to_string(),
        "diagonal": nondiag.is_none(),
    });
    let mut text = format!("order {}\ndiagonal {}\n", group.order(), nondiag.is_none());
    if let Some(pair) = nondiag {
        let w = Witness::NondiagonalTfa {
            graph: g.clone(),
            alpha: pair.alpha.clone(),
            beta: pair.beta.clone(),
        };
        json["witness"] = witness_json(cli, &w);
        if cli.witness {
            text.push_str(&format!("alpha {}\nbeta {}\n", pair.alpha, pair.beta));
        }
    }
    Ok(Output { json, text, ok: true })
}

fn witness_json(cli: &Cli, w: &Witness) -> Value {
    if cli.witness {
        serde_json::to_value(w).expect("serializable")
    } else {
        json!({ "kind": w.kind() })
    }
}

fn stability_json(cli: &Cli, r: &StabilityReport) -> Value {
    let mut v = json!({
        "schemaVersion": SCHEMA_VERSION,
        "verdict": r.verdict,
        "method": r.method,
        "orders": {
            "autProduct": r.orders.aut_product.to_string(),
            "autLeft": r.orders.aut_left.to_string(),
            "autRight": r.orders.aut_right.to_string(),
        },
        "checks": r.checks,
        "index": r.index,
    });
    if let Some(w) = &r.witness {
        v["witness"] = witness_json(cli, w);
    }
    v
}

fn stability_text(cli: &Cli, r: &StabilityReport) -> String {
    let mut text = format!(
        "verdict {:?}\norders {} {} {}\n",
        r.verdict, r.orders.aut_product, r.orders.aut_left, r.orders.aut_right
    )
    .to_lowercase();
    if let Some(w) = &r.witness {
        text.push_str(&format!("witness {}\n", w.kind()));
        if cli.witness {
            if let Witness::RowMixer { images, .. }
            | Witness::ColMixer { images, .. }
            | Witness::NonFactorComponentwise { images, .. } = w
            {
                text.push_str(&format!("images {images}\n"));
            }
        }
    }
    text
}

fn stability(cli: &Cli, g: &Graph) -> Result<Output, Failure> {
    let r = is_stable_graph(g)?;
    let mut json = stability_json(cli, &r);
    let nontrivially_unstable = is_nontrivially_unstable(g)?;
    json["nontrivial"] = json!({
        "connected": [g.is_connected()],
        "twinFree": [g.is_twin_free()],
        "bipartite": [g.is_bipartite().is_some()],
        "nontriviallyUnstable": nontrivially_unstable,
    });
    let text = stability_text(cli, &r) + &format!("nontrivially-unstable {nontrivially_unstable}\n");
    Ok(Output { json, text, ok: true })
}

fn pair_stability(cli: &Cli, g: &Graph, h: &Graph) -> Result<Output, Failure> {
    let r = is_stable_pair(g, h)?;
    let nt = is_nontrivial_pair(g, h)?;
    let mut json = stability_json(cli, &r);
    json["nontrivial"] = serde_json::to_value(&nt).expect("serializable");
    let mut text = stability_text(cli, &r);
    text.push_str(&format!("nontrivial {}\n", nt.nontrivial));
    for reason in &nt.reasons {
        text.push_str(&format!("reason {reason}\n"));
    }
    Ok(Output { json, text, ok: true })
}

fn factor_entry(g: &Graph, multiplicity: usize) -> Value {
    json!({
        "order": g.order(),
        "edges": g.edges(),
        "multiplicity": multiplicity,
        "edgeList": emit_edge_list(g),
    })
}

fn decomposition_factors(d: &DirectDecomposition) -> Vec<(Graph, usize)> {
    vec![(d.left_factor.clone(), 1), (d.right_factor.clone(), 1)]
}

fn factor(mode: FactorMode, g: &Graph) -> Result<Output, Failure> {
    let n = g.order();
    let (name, factors, certified) = match mode {
        FactorMode::Cartesian => {
            let f = cartesian_prime_factorization(g)?;
            ("cartesian", f.factors, f.certified)
        }
        FactorMode::Direct => {
            let mut found = None;
            for d in (2..n).filter(|d| n.is_multiple_of(*d)) {
                if let Some(dec) = direct_factor_search(g, d)? {
                    found = Some(dec);
                    break;
                }
            }
            match found {
                Some(dec) => ("direct", decomposition_factors(&dec), dec.verify(g)),
                None => ("direct", vec![(g.clone(), 1)], true),
            }
        }
        FactorMode::Cycle => {
            let mut found = None;
            for k in (3..n).filter(|k| n.is_multiple_of(*k)) {
                if let Some(dec) = has_cycle_direct_factor(g, k)? {
                    found = Some(dec);
                    break;
                }
            }
            match found {
                Some(dec) => ("cycle", decomposition_factors(&dec), dec.verify(g)),
                None => ("cycle", vec![], true),
            }
        }
    };
    let mut text = format!("mode {name}\ncertified {certified}\n");
    for (f, m) in &factors {
        text.push_str(&format!("factor multiplicity {m}\n{}", emit_edge_list(f)));
    }
    Ok(Output {
        json: json!({
            "schemaVersion": SCHEMA_VERSION,
            "mode": name,
            "factors": factors.iter().map(|(f, m)| factor_entry(f, *m)).collect::<Vec<_>>(),
            "certified": certified,
        }),
        text,
        ok: true,
    })
}

fn report_output(cli: &Cli, mut report: Report) -> Output {
    let ok = report.summary.all_clear();
    if !cli.witness {
        for case in &mut report.cases {
            if case.outcome == Outcome::Pass {
                case.witness = None;
            }
        }
    }
    let mut text = String::new();
    for case in &report.cases {
        let outcome = match &case.outcome {
            Outcome::Pass => "pass".to_string(),
            Outcome::Fail => "FAIL".to_string(),
            Outcome::Finding => "FINDING".to_string(),
            Outcome::Skipped { reason } => format!("skipped ({reason})"),
        };
        text.push_str(&format!("{} {}: {outcome}\n", case.claim_id, case.instance.label));
    }
    let s = &report.summary;
    text.push_str(&format!(
        "summary pass={} fail={} skipped={} finding={}\n",
        s.pass, s.fail, s.skipped, s.finding
    ));
    Output {
        json: serde_json::to_value(&report).expect("serializable"),
        text,
        ok,
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}
