//! Size and timing sweeps printed as a tab-separated table.

use std::fmt::Write as _;
use std::time::Instant;

use anyhow::Result;
use clap::ValueEnum;
use jr_core::gen::{random_banded_dag, random_path, random_rooted_tree, random_utree};
use jr_core::{gen_bitreversal, transitive_closure, verify_join_graph, Digraph, Orientation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::class::{build_explicit, build_index, Class};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Paths,
    Trees,
    Pathcover,
}

pub struct BenchConfig {
    pub suite: Suite,
    pub min_n: usize,
    pub max_n: usize,
    pub seed: u64,
    /// Explicit joins and sampled queries are checked against the oracle up to this size.
    pub verify_max_n: usize,
    pub timing: bool,
    pub queries: usize,
}

pub const HEADER: &str =
    "suite\tinstance\tclass\tmode\tn\tsteiner\tarcs\tsize\tbound\tratio\tbuild_ms\tqueries\tmean_k\tquery_us\tverified";

/// Log factor used in the size bounds: `ceil(log2 n)`, at least 1.
pub fn log_factor(n: usize) -> usize {
    (n.max(2).next_power_of_two().trailing_zeros() as usize).max(1)
}

struct Case {
    instance: &'static str,
    class: Class,
    squared: bool,
    explicit: bool,
    g1: Digraph,
    g2: Digraph,
}

fn cases(suite: Suite, n: usize, seed: u64) -> Result<Vec<Case>> {
    let mut r = ChaCha8Rng::seed_from_u64(seed ^ n as u64);
    let case = |instance, class, squared, explicit, g1, g2| Case { instance, class, squared, explicit, g1, g2 };
    Ok(match suite {
        Suite::Paths => {
            let (a, b) = gen_bitreversal(n)?;
            vec![
                case("bitrev", Class::TwoPaths, false, true, a, b),
                case("random-paths", Class::TwoPaths, false, true, random_path(n, &mut r), random_path(n, &mut r)),
            ]
        }
        Suite::Trees => {
            let out = random_rooted_tree(n, Orientation::Out, &mut r);
            let inn = random_rooted_tree(n, Orientation::In, &mut r);
            let p = random_path(n, &mut r);
            let (u1, u2) = (random_utree(n, &mut r), random_utree(n, &mut r));
            vec![
                case("out-tree+path", Class::TreePath, false, true, out.clone(), p.clone()),
                case("utree+path", Class::TreePath, false, false, u1.clone(), p),
                case("out-tree+in-tree", Class::TwoTrees, true, true, out.clone(), inn.clone()),
                case("out-tree+in-tree", Class::HpdTwoTrees, true, false, out, inn),
                case("utree+utree", Class::UnorientedTrees, true, true, u1, u2),
            ]
        }
        Suite::Pathcover => {
            let d1 = random_banded_dag(n, 4, &mut r);
            let d2 = random_banded_dag(n, 4, &mut r);
            let p = random_path(n, &mut r);
            let t = random_rooted_tree(n, Orientation::In, &mut r);
            vec![
                case("band4+path", Class::Pathcover, false, true, d1.clone(), p),
                case("band4+in-tree", Class::Pathcover, false, false, d1.clone(), t),
                case("band4+band4", Class::Pathcover, false, true, d1, d2),
            ]
        }
    })
}

fn ms(t: Instant, timing: bool) -> String {
    if timing {
        format!("{:.2}", t.elapsed().as_secs_f64() * 1e3)
    } else {
        "-".into()
    }
}

/// Runs the sweep over every power of two in `[min_n, max_n]`.
pub fn run(cfg: &BenchConfig, out: &mut impl std::io::Write) -> Result<()> {
    writeln!(out, "{HEADER}")?;
    let mut n = cfg.min_n.max(2).next_power_of_two();
    while n <= cfg.max_n {
        for c in cases(cfg.suite, n, cfg.seed)? {
            if c.explicit {
                writeln!(out, "{}", explicit_row(cfg, &c, n)?)?;
            }
            writeln!(out, "{}", index_row(cfg, &c, n)?)?;
        }
        n *= 2;
    }
    Ok(())
}

fn prefix(cfg: &BenchConfig, c: &Case, mode: &str, n: usize) -> String {
    let suite = cfg.suite.to_possible_value().expect("no skipped variants");
    format!("{}\t{}\t{}\t{mode}\t{n}", suite.get_name(), c.instance, crate::class::name(c.class))
}

fn explicit_row(cfg: &BenchConfig, c: &Case, n: usize) -> Result<String> {
    let t = Instant::now();
    let j = build_explicit(c.class, &c.g1, &c.g2)?;
    let build = ms(t, cfg.timing);
    let l = log_factor(n);
    let (bound, denom) = if c.squared { ("n*log^2", n * l * l) } else { ("n*log", n * l) };
    let verified = if n <= cfg.verify_max_n {
        if verify_join_graph(&j, &c.g1, &c.g2)?.passed() { "yes" } else { "FAIL" }
    } else {
        "skipped"
    };
    let mut s = prefix(cfg, c, "explicit", n);
    let ratio = j.size() as f64 / denom as f64;
    write!(s, "\t{}\t{}\t{}\t{bound}\t{ratio:.3}\t{build}\t-\t-\t-\t{verified}", j.steiner_count(), j.arc_count(), j.size())?;
    Ok(s)
}

fn index_row(cfg: &BenchConfig, c: &Case, n: usize) -> Result<String> {
    let t = Instant::now();
    let idx = build_index(c.class, &c.g1, &c.g2)?;
    let build = ms(t, cfg.timing);
    let step = (n / cfg.queries.max(1)).max(1);
    let sample: Vec<usize> = (0..n).step_by(step).collect();
    let t = Instant::now();
    let answers: Vec<Vec<usize>> = sample.iter().map(|&b| idx.query(b)).collect::<jr_core::Result<_>>()?;
    let query_us = if cfg.timing {
        format!("{:.2}", t.elapsed().as_secs_f64() * 1e6 / sample.len() as f64)
    } else {
        "-".into()
    };
    let mean_k = answers.iter().map(Vec::len).sum::<usize>() as f64 / sample.len() as f64;
    let verified = if n <= cfg.verify_max_n {
        let want = transitive_closure(&c.g1).and(&transitive_closure(&c.g2))?;
        if sample.iter().zip(&answers).all(|(&b, got)| *got == want.column(b)) { "yes" } else { "FAIL" }
    } else {
        "skipped"
    };
    let mut s = prefix(cfg, c, "index", n);
    write!(s, "\t-\t-\t-\t-\t-\t{build}\t{}\t{mean_k:.1}\t{query_us}\t{verified}", sample.len())?;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_factor_values() {
        assert_eq!(log_factor(1), 1);
        assert_eq!(log_factor(2), 1);
        assert_eq!(log_factor(3), 2);
        assert_eq!(log_factor(1024), 10);
        assert_eq!(log_factor(1025), 11);
    }

    #[test]
    fn small_sweeps_verify() {
        for suite in [Suite::Paths, Suite::Trees, Suite::Pathcover] {
            let cfg = BenchConfig { suite, min_n: 16, max_n: 64, seed: 3, verify_max_n: 64, timing: false, queries: 16 };
            let mut buf = Vec::new();
            run(&cfg, &mut buf).unwrap();
            let text = String::from_utf8(buf).unwrap();
            let rows: Vec<&str> = text.lines().skip(1).collect();
            assert!(!rows.is_empty());
            for row in rows {
                assert_eq!(row.split('\t').count(), HEADER.split('\t').count(), "{row}");
                assert!(row.ends_with("\tyes"), "{row}");
            }
        }
    }
}
