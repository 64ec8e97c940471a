//! `jr`: generate instances, build join-reachability graphs and indexes,
//! query, verify and benchmark them.
//!
//! Exit codes: 0 success, 1 verification failure, 2 bad input.

mod bench;
mod class;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use jr_core::{generate, verify_join_graph, Digraph, InstanceKind, InstanceSpec, JoinGraph};

use bench::{BenchConfig, Suite};
use class::{Class, Mode};

#[derive(Parser)]
#[command(name = "jr", version, about = "Join-reachability graphs and indexes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate one or two seeded instances.
    Gen {
        /// path, utree-random, out-tree, in-tree, dag-gnp, bitrev or sp-st.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Arc probability for dag-gnp.
        #[arg(long)]
        p: Option<f64>,
        /// Parallel-step probability for sp-st.
        #[arg(long, default_value_t = 0.5)]
        parallel: f64,
        /// Output files. A second file gets a second instance (bitrev always needs two).
        #[arg(short, long, num_args = 1..=2)]
        out: Vec<PathBuf>,
    },
    /// Build an explicit join graph, or an index and report its shape.
    Build {
        #[arg(long, value_enum, default_value_t = Mode::Explicit)]
        mode: Mode,
        #[arg(long, value_enum)]
        class: Option<Class>,
        g1: PathBuf,
        g2: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Print the vertices that join-reach `b`, one id per line.
    Query {
        #[arg(long, value_enum)]
        class: Option<Class>,
        g1: PathBuf,
        g2: PathBuf,
        /// Target vertex; repeat for several, each answer is then headed by `# b`.
        #[arg(short, required = true)]
        b: Vec<usize>,
    },
    /// Check a join graph against the two input graphs.
    Verify { join: PathBuf, g1: PathBuf, g2: PathBuf },
    /// Report the size of a join graph and its ratio to the size bounds.
    Stats { join: PathBuf },
    /// Sweep sizes over powers of two and print a tab-separated table.
    Bench {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 256)]
        min_n: usize,
        #[arg(long, default_value_t = 16384)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1024)]
        verify_max_n: usize,
        /// Sampled query targets per index.
        #[arg(long, default_value_t = 256)]
        queries: usize,
        /// Print `-` instead of timings, for diffable output.
        #[arg(long)]
        no_timing: bool,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_graph(path: &Path) -> Result<Digraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Digraph::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_join(path: &Path) -> Result<JoinGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    JoinGraph::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => Ok(io::stdout().write_all(text.as_bytes())?),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Gen { kind, n, seed, p, parallel, out } => {
            let kind: InstanceKind = kind.parse()?;
            let spec = InstanceSpec { kind, n, seed, p, parallel };
            let mut graphs = generate(&spec)?;
            if graphs.len() == 1 && out.len() == 2 {
                let second = InstanceSpec { seed: seed ^ 0x9e37_79b9_7f4a_7c15, ..spec };
                graphs.extend(generate(&second)?);
            }
            match (graphs.len(), out.len()) {
                (1, 0) => emit(None, &graphs[0].to_text())?,
                (2, 2) => {
                    emit(Some(&out[0]), &graphs[0].to_text())?;
                    emit(Some(&out[1]), &graphs[1].to_text())?;
                }
                (1, 1) => emit(Some(&out[0]), &graphs[0].to_text())?,
                (k, _) => bail!("{} produces {k} graphs; pass {k} output files", kind.as_str()),
            }
        }
        Cmd::Build { mode, class, g1, g2, out } => {
            let (g1, g2) = (read_graph(&g1)?, read_graph(&g2)?);
            let class = class::resolve(mode, class, &g1, &g2)?;
            let t = Instant::now();
            match mode {
                Mode::Explicit => {
                    let j = class::build_explicit(class, &g1, &g2)?;
                    emit(out.as_deref(), &j.to_text())?;
                }
                Mode::Index => {
                    let idx = class::build_index(class, &g1, &g2)?;
                    let secs = t.elapsed().as_secs_f64();
                    let text = format!(
                        "variant {}\nn {}\nstructures {}\nbuild_ms {:.2}\n",
                        idx.variant(),
                        idx.n(),
                        idx.structure_count(),
                        secs * 1e3
                    );
                    emit(out.as_deref(), &text)?;
                }
            }
        }
        Cmd::Query { class, g1, g2, b } => {
            let (g1, g2) = (read_graph(&g1)?, read_graph(&g2)?);
            let class = class::resolve(Mode::Index, class, &g1, &g2)?;
            let idx = class::build_index(class, &g1, &g2)?;
            let mut s = String::new();
            for &v in &b {
                if b.len() > 1 {
                    s.push_str(&format!("# {v}\n"));
                }
                for a in idx.query(v)? {
                    s.push_str(&format!("{a}\n"));
                }
            }
            emit(None, &s)?;
        }
        Cmd::Verify { join, g1, g2 } => {
            let (j, g1, g2) = (read_join(&join)?, read_graph(&g1)?, read_graph(&g2)?);
            let report = verify_join_graph(&j, &g1, &g2)?;
            if let Some(v) = report.first() {
                let (want, got) = if v.expected { ("reach", "does not") } else { ("not reach", "does") };
                println!("FAIL: {} should {want} {} but {got} ({} violations)", v.a, v.b, report.violations.len());
                return Ok(ExitCode::from(1));
            }
            println!("ok: {} pairs checked", report.pairs_checked);
        }
        Cmd::Stats { join } => {
            let j = read_join(&join)?;
            let n = j.original_count();
            let l = bench::log_factor(n) as f64;
            let size = j.size() as f64;
            println!("n {n}");
            println!("steiner {}", j.steiner_count());
            println!("arcs {}", j.arc_count());
            println!("size {}", j.size());
            println!("ratio_nlog {:.4}", size / (n.max(1) as f64 * l));
            println!("ratio_nlog2 {:.4}", size / (n.max(1) as f64 * l * l));
        }
        Cmd::Bench { suite, min_n, max_n, seed, verify_max_n, queries, no_timing } => {
            let cfg = BenchConfig { suite, min_n, max_n, seed, verify_max_n, timing: !no_timing, queries };
            bench::run(&cfg, &mut io::stdout().lock())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
