use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pivotmin::driver::{gen, strong_eh_pipeline, RunReport};
use pivotmin::graph::{edgelist_decode, edgelist_encode, graph6_decode, graph6_encode, Graph};
use pivotmin::pivot::{
    enumerate_orbit, find_ck_pivot_minor, pivot, verify_ck_witness_detail, Witness,
    DEFAULT_ORBIT_MEMBER_CAP, DEFAULT_ORBIT_N_CAP,
};
use pivotmin::sweep::Certificate;

const EXIT_OK: u8 = 0;
const EXIT_VERIFY_FAIL: u8 = 1;
const EXIT_PIPELINE_FAIL: u8 = 2;
const EXIT_USAGE: u8 = 3;

#[derive(Parser)]
#[command(name = "pivotmin", about = "Pivot-minor certificates: generation, search, verification")]
struct Cli {
    /// Accepted for compatibility; all built-in runs are sequential.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Graph6,
    Edgelist,
}

#[derive(Args)]
struct GraphInput {
    /// Graph file; use '-' for stdin.
    #[arg(long)]
    input: String,
    #[arg(long, value_enum, default_value_t = Format::Graph6)]
    format: Format,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a graph from one of the seeded families.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long, default_value_t = 20)]
        n: usize,
        /// Edge probability (gnp).
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Leaves per spine vertex (caterpillar).
        #[arg(long, default_value_t = 4)]
        max_leaf: usize,
        /// Degree bound (bounded).
        #[arg(long, default_value_t = 3)]
        d: usize,
        /// Comma-separated fan interval lengths (fan).
        #[arg(long, default_value = "3,1")]
        intervals: String,
        #[arg(long, value_enum, default_value_t = Format::Graph6)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply one pivot and print the resulting graph.
    Pivot {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(short, long)]
        u: usize,
        #[arg(short, long)]
        v: usize,
    },
    /// Enumerate the pivot orbit of a small graph.
    Orbit {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long, default_value_t = DEFAULT_ORBIT_MEMBER_CAP)]
        max_orbit: usize,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Search the orbit for a C_k pivot-minor and emit a witness.
    FindCk {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(short, long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_ORBIT_MEMBER_CAP)]
        max_orbit: usize,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Run the full pure-pair / witness pipeline.
    PurePair {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(short, long)]
        k: usize,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Verify a certificate (or bare witness) file against a graph.
    Verify {
        #[arg(long)]
        graph: String,
        #[arg(long, value_enum, default_value_t = Format::Graph6)]
        format: Format,
        #[arg(long)]
        certificate: PathBuf,
        /// Minimum accepted hole length.
        #[arg(long, default_value_t = 5)]
        min_hole: usize,
    },
    /// Run the pipeline over a generated corpus and print CSV rows.
    Bench {
        #[arg(long, default_value_t = 200)]
        n: usize,
        #[arg(short, long, default_value_t = 5)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Gnp,
    Caterpillar,
    Cycle,
    Antihole,
    Fan,
    Bounded,
}

fn read_graph(input: &str, format: Format) -> Result<Graph, String> {
    let text = if input == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| e.to_string())?;
        buf
    } else {
        std::fs::read_to_string(input).map_err(|e| format!("{input}: {e}"))?
    };
    match format {
        Format::Graph6 => graph6_decode(text.trim()).map_err(|e| e.to_string()),
        Format::Edgelist => edgelist_decode(&text).map_err(|e| e.to_string()),
    }
}

fn render_graph(g: &Graph, format: Format) -> String {
    match format {
        Format::Graph6 => graph6_encode(g),
        Format::Edgelist => edgelist_encode(g),
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // help/version are successful exits; real parse errors are usage
            // errors
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::from(EXIT_OK),
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cmd: Cmd) -> Result<u8, String> {
    match cmd {
        Cmd::Gen {
            kind,
            n,
            p,
            seed,
            max_leaf,
            d,
            intervals,
            format,
            out,
        } => {
            let g = match kind {
                GenKind::Gnp => gen::gnp(n, p, seed),
                GenKind::Caterpillar => gen::caterpillar(n, max_leaf, seed),
                GenKind::Cycle => gen::long_cycle(n),
                GenKind::Antihole => gen::anti_hole(n),
                GenKind::Fan => {
                    let iv: Result<Vec<usize>, _> =
                        intervals.split(',').map(|s| s.trim().parse()).collect();
                    let iv = iv.map_err(|e| format!("bad intervals: {e}"))?;
                    gen::fan(&iv)
                }
                GenKind::Bounded => gen::bounded_degree(n, d, seed),
            }
            .map_err(|e| e.to_string())?;
            emit(&render_graph(&g, format), out.as_ref())?;
            Ok(EXIT_OK)
        }
        Cmd::Pivot { graph, u, v } => {
            let g = read_graph(&graph.input, graph.format)?;
            match pivot(&g, u, v) {
                Ok(h) => {
                    println!("{}", render_graph(&h, graph.format));
                    Ok(EXIT_OK)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    Ok(EXIT_VERIFY_FAIL)
                }
            }
        }
        Cmd::Orbit {
            graph,
            max_orbit,
            json_out,
        } => {
            let g = read_graph(&graph.input, graph.format)?;
            match enumerate_orbit(&g, max_orbit, DEFAULT_ORBIT_N_CAP) {
                Ok(orbit) => {
                    let j = serde_json::json!({
                        "size": orbit.len(),
                        "complete": orbit.is_complete(),
                    });
                    emit(&serde_json::to_string_pretty(&j).unwrap(), json_out.as_ref())?;
                    Ok(EXIT_OK)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    Ok(EXIT_PIPELINE_FAIL)
                }
            }
        }
        Cmd::FindCk {
            graph,
            k,
            max_orbit,
            json_out,
        } => {
            let g = read_graph(&graph.input, graph.format)?;
            match find_ck_pivot_minor(&g, k, max_orbit, DEFAULT_ORBIT_N_CAP) {
                Ok(Some(w)) => {
                    verify_ck_witness_detail(&g, &w).map_err(|e| e.to_string())?;
                    emit(&w.to_json(), json_out.as_ref())?;
                    Ok(EXIT_OK)
                }
                Ok(None) => {
                    let j = serde_json::json!({ "found": false, "k": k });
                    emit(&serde_json::to_string_pretty(&j).unwrap(), json_out.as_ref())?;
                    Ok(EXIT_OK)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    Ok(EXIT_PIPELINE_FAIL)
                }
            }
        }
        Cmd::PurePair { graph, k, json_out } => {
            let g = read_graph(&graph.input, graph.format)?;
            let report = strong_eh_pipeline(&g, k).map_err(|e| e.to_string())?;
            emit(&report.to_json(), json_out.as_ref())?;
            if report.verified() {
                Ok(EXIT_OK)
            } else {
                Ok(EXIT_PIPELINE_FAIL)
            }
        }
        Cmd::Verify {
            graph,
            format,
            certificate,
            min_hole,
        } => {
            let g = read_graph(&graph, format)?;
            let text = std::fs::read_to_string(&certificate)
                .map_err(|e| format!("{}: {e}", certificate.display()))?;
            let outcome = match Certificate::from_json(&g, &text) {
                Ok(cert) => {
                    let k = match &cert {
                        Certificate::Witness(w) => w.target_k,
                        _ => 0,
                    };
                    cert.verify(&g, k, min_hole)
                }
                // fall back to a bare witness file
                Err(_) => match Witness::from_json(&text) {
                    Ok(w) => verify_ck_witness_detail(&g, &w),
                    Err(e) => {
                        eprintln!("error: unrecognized certificate schema: {e}");
                        return Ok(EXIT_VERIFY_FAIL);
                    }
                },
            };
            match outcome {
                Ok(()) => {
                    println!("verified");
                    Ok(EXIT_OK)
                }
                Err(e) => {
                    eprintln!("verification failed: {e}");
                    Ok(EXIT_VERIFY_FAIL)
                }
            }
        }
        Cmd::Bench { n, k, seed, count } => {
            println!("{}", RunReport::csv_header());
            let mut failures = 0usize;
            for i in 0..count {
                let s = seed + i as u64;
                let graphs = [
                    gen::caterpillar(n, 6, s).map_err(|e| e.to_string())?,
                    gen::gnp(n, 2.0 / n as f64, s).map_err(|e| e.to_string())?,
                    gen::bounded_degree(n, 3, s).map_err(|e| e.to_string())?,
                ];
                for g in graphs {
                    let report = strong_eh_pipeline(&g, k).map_err(|e| e.to_string())?;
                    println!("{}", report.csv_line());
                    if !report.verified() {
                        failures += 1;
                    }
                }
            }
            if failures == 0 {
                Ok(EXIT_OK)
            } else {
                Ok(EXIT_PIPELINE_FAIL)
            }
        }
    }
}
