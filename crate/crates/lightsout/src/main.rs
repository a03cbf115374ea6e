//! Command-line interface: solvability checks and certificates, exact
//! censuses and probabilities, uniform (n, e) sampling, and Monte Carlo
//! probability tables.
//!
//! Every subcommand is deterministic given its flags and seed; randomized
//! subcommands draw a seed from system entropy when `--seed` is absent and
//! echo it on stderr so the run can be reproduced.

use std::collections::HashMap;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use lightsout::canon::canonical_form;
use lightsout::census::Catalog;
use lightsout::format::{parse_graph, to_graph6};
use lightsout::gf2::neighborhood_matrix;
use lightsout::montecarlo::{
    emit_table, run_experiment, trial_rng, ExperimentConfig, TableFormat,
};
use lightsout::sampler::{SamplerStats, WormaldSampler};
use lightsout::solver::{apply_presses, odd_dominating_set, solve_configuration};
use lightsout::stats::chi_square_goodness_of_fit;
use lightsout::{Error, Graph, Result, VertexSet};

/// Default worker count when `--workers` is absent.
const WORKERS_ENV: &str = "LIGHTSOUT_WORKERS";
/// Significance level for the sampler uniformity test.
const SIGNIFICANCE: f64 = 1e-3;

#[derive(Parser)]
#[command(
    name = "lightsout",
    version,
    about = "Lights Out on graphs: solvability, exact censuses, uniform random sampling"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether every lamp configuration on the graph is solvable.
    ///
    /// Prints the GF(2) rank of the closed-neighborhood matrix A + I and an
    /// odd dominating set. Exits 0 when universally solvable, 1 when not,
    /// 2 on a parse error.
    Check {
        /// Graph as graph6 ("Dhc") or as an edge list ("n=5; 0-1,1-2").
        #[arg(long)]
        graph: String,
    },
    /// Find a press set that turns off the given lit vertices.
    ///
    /// The press set is replayed before printing to confirm that every lamp
    /// ends up off. Exits 1 when the configuration is unsolvable.
    Solve {
        /// Graph as graph6 or as an edge list.
        #[arg(long)]
        graph: String,
        /// Lit vertices, comma separated (e.g. --on 0,2,3); empty when absent.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        on: Vec<usize>,
    },
    /// Draw uniformly random isomorphism classes with fixed (n, e) as graph6.
    Sample {
        /// Vertex count.
        #[arg(long)]
        n: usize,
        /// Edge count, between 0 and C(n,2).
        #[arg(long)]
        e: usize,
        /// Number of graphs to emit.
        #[arg(long, default_value_t = 1)]
        count: u64,
        /// RNG seed; drawn from system entropy and echoed when absent.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Monte Carlo estimate of the solvable fraction for one (n, e) cell.
    Estimate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        e: usize,
        /// Trials for the cell.
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        /// RNG seed; drawn from system entropy and echoed when absent.
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads; defaults to $LIGHTSOUT_WORKERS, then 1.
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Estimated probability table over every e from 1 to C(n,2) - 1.
    Table {
        #[arg(long)]
        n: usize,
        /// Trials per edge count.
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        /// RNG seed; drawn from system entropy and echoed when absent.
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads; defaults to $LIGHTSOUT_WORKERS, then 1.
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Emit exact rationals from complete enumeration (n <= 9) instead
        /// of sampling; ignores trials, seed, workers, and format.
        #[arg(long)]
        exact: bool,
    },
    /// Exact solvability probability from complete enumeration.
    Exact {
        #[arg(long)]
        n: usize,
        /// Edge count; omit to print every e from 0 to C(n,2).
        #[arg(long)]
        e: Option<usize>,
    },
    /// Exact censuses of solvable classes near the complete graph.
    ///
    /// With --d: classes with n vertices (default 3d) and n + d degree-excess
    /// edges whose complement is universally solvable; lists the sparse side.
    /// With --m and --n: universally solvable classes with
    /// C(n,2) - floor(n/2) - m edges; lists the solvable graphs.
    Census {
        /// Excess degree for the complement census.
        #[arg(long, conflicts_with = "m")]
        d: Option<usize>,
        /// Margin below the maximum unsolvable-side edge count.
        #[arg(long, requires = "n")]
        m: Option<usize>,
        /// Vertex count (defaults to 3d for --d; required for --m).
        #[arg(long)]
        n: Option<usize>,
    },
    /// Chi-square uniformity check of the sampler against full enumeration.
    ///
    /// Exits 0 on pass, 1 on fail at significance 0.001.
    ValidateSampler {
        /// Vertex count (enumeration backs the expected counts; n <= 9).
        #[arg(long)]
        n: usize,
        #[arg(long)]
        e: usize,
        /// Number of graphs to draw.
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        /// RNG seed; drawn from system entropy and echoed when absent.
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Text,
    Plot,
}

impl From<Format> for TableFormat {
    fn from(f: Format) -> TableFormat {
        match f {
            Format::Csv => TableFormat::Csv,
            Format::Text => TableFormat::Text,
            Format::Plot => TableFormat::Plot,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Result<ExitCode> {
    match cmd {
        Command::Check { graph } => check(&graph),
        Command::Solve { graph, on } => solve(&graph, &on),
        Command::Sample { n, e, count, seed } => sample(n, e, count, seed),
        Command::Estimate {
            n,
            e,
            trials,
            seed,
            workers,
        } => estimate(n, e, trials, seed, workers),
        Command::Table {
            n,
            trials,
            seed,
            workers,
            format,
            exact,
        } => table(n, trials, seed, workers, format, exact),
        Command::Exact { n, e } => exact(n, e),
        Command::Census { d, m, n } => census(d, m, n),
        Command::ValidateSampler {
            n,
            e,
            samples,
            seed,
        } => validate_sampler(n, e, samples, seed),
    }
}

/// Use the given seed, or draw one from system entropy and echo it so the
/// run can be reproduced.
fn resolve_seed(seed: Option<u64>) -> u64 {
    match seed {
        Some(s) => s,
        None => {
            let s: u64 = rand::random();
            eprintln!("seed: {s} (from system entropy; pass --seed {s} to reproduce)");
            s
        }
    }
}

fn resolve_workers(workers: Option<usize>) -> Result<usize> {
    if let Some(w) = workers {
        return Ok(w);
    }
    match std::env::var(WORKERS_ENV) {
        Ok(raw) => raw.trim().parse().map_err(|_| {
            Error::range(
                "worker count",
                format!("{WORKERS_ENV}={raw:?} is not a positive integer"),
            )
        }),
        Err(_) => Ok(1),
    }
}

fn vertex_list(set: VertexSet) -> String {
    if set.is_empty() {
        return "(none)".into();
    }
    set.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn parse_graph_arg(text: &str) -> std::result::Result<Graph, ExitCode> {
    parse_graph(text).map_err(|err| {
        eprintln!("error: {err}");
        ExitCode::from(2)
    })
}

fn check(text: &str) -> Result<ExitCode> {
    let g = match parse_graph_arg(text) {
        Ok(g) => g,
        Err(code) => return Ok(code),
    };
    let rank = neighborhood_matrix(&g).rank();
    let solvable = rank == g.n();
    println!("n: {}", g.n());
    println!("edges: {}", g.edge_count());
    println!("neighborhood rank: {rank} / {}", g.n());
    println!(
        "universally solvable: {}",
        if solvable { "yes" } else { "no" }
    );
    if let Some(ods) = odd_dominating_set(&g) {
        println!(
            "odd dominating set: {} (size {}, {})",
            vertex_list(ods),
            ods.len(),
            if ods.len() % 2 == 0 { "even" } else { "odd" }
        );
    }
    Ok(if solvable {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn solve(text: &str, on: &[usize]) -> Result<ExitCode> {
    let g = match parse_graph_arg(text) {
        Ok(g) => g,
        Err(code) => return Ok(code),
    };
    for &v in on {
        if v >= g.n() {
            eprintln!("error: lit vertex {v} is out of range for n={}", g.n());
            return Ok(ExitCode::from(2));
        }
    }
    let lit = VertexSet::from_iter(on.iter().copied());
    match solve_configuration(&g, lit) {
        Some(presses) => {
            println!("lit: {}", vertex_list(lit));
            println!("presses: {}", vertex_list(presses));
            let after = apply_presses(&g, lit, presses);
            assert!(
                after.is_empty(),
                "replay left lamps on: {}",
                vertex_list(after)
            );
            println!("replay: all lamps off after {} presses", presses.len());
            Ok(ExitCode::SUCCESS)
        }
        None => {
            eprintln!(
                "no press set clears this configuration: it lies outside the \
                 column space of A + I over GF(2)"
            );
            Ok(ExitCode::from(1))
        }
    }
}

fn sample(n: usize, e: usize, count: u64, seed: Option<u64>) -> Result<ExitCode> {
    let seed = resolve_seed(seed);
    let sampler = WormaldSampler::new(n, e)?;
    let mut stats = SamplerStats::default();
    let mut lines = Vec::with_capacity(count as usize);
    for draw in 0..count {
        let mut rng = trial_rng(seed, n, e, draw);
        lines.push(to_graph6(&sampler.sample_with_stats(&mut rng, &mut stats).graph));
    }
    println!("# uniform isomorphism classes, n={n} e={e} count={count} seed={seed}");
    println!("# generator=chacha8, one substream per draw keyed by splitmix64 over (seed, n, e, index)");
    println!(
        "# attempts={} edge_misses={} thinning_rejections={} derangement_retries={}",
        stats.attempts, stats.edge_misses, stats.thinning_rejections, stats.derangement_retries
    );
    for line in lines {
        println!("{line}");
    }
    Ok(ExitCode::SUCCESS)
}

fn estimate(
    n: usize,
    e: usize,
    trials: u64,
    seed: Option<u64>,
    workers: Option<usize>,
) -> Result<ExitCode> {
    let seed = resolve_seed(seed);
    let config = ExperimentConfig {
        n,
        edges: vec![e],
        trials,
        seed,
        workers: resolve_workers(workers)?,
        quiet: false,
    };
    print!("{}", emit_table(&run_experiment(&config)?, TableFormat::Csv));
    Ok(ExitCode::SUCCESS)
}

fn table(
    n: usize,
    trials: u64,
    seed: Option<u64>,
    workers: Option<usize>,
    format: Format,
    exact: bool,
) -> Result<ExitCode> {
    if exact {
        return exact_table(n);
    }
    let seed = resolve_seed(seed);
    let config = ExperimentConfig::full_sweep(n, trials, seed, resolve_workers(workers)?);
    print!("{}", emit_table(&run_experiment(&config)?, format.into()));
    Ok(ExitCode::SUCCESS)
}

fn exact_table(n: usize) -> Result<ExitCode> {
    if n > 9 {
        return Err(Error::range(
            "exact table",
            format!("full exact tables require n <= 9, got n={n}"),
        ));
    }
    let catalog = Catalog::new();
    let npairs = n * n.saturating_sub(1) / 2;
    println!("n,e,p_exact,p_decimal");
    for e in 1..npairs {
        let p = catalog.exact_probability(n, e)?;
        println!("{n},{e},{p},{:.6}", rational_to_f64(&p));
    }
    Ok(ExitCode::SUCCESS)
}

fn rational_to_f64(p: &BigRational) -> f64 {
    p.to_f64().expect("probability fits in f64")
}

fn exact(n: usize, e: Option<usize>) -> Result<ExitCode> {
    let catalog = Catalog::new();
    match e {
        Some(e) => {
            let p = catalog.exact_probability(n, e)?;
            let classes = catalog.count_graphs(n, e)?;
            let solvable =
                (&p * BigRational::from_integer(BigInt::from(classes.clone()))).to_integer();
            println!("n: {n}");
            println!("e: {e}");
            println!("classes: {classes}");
            println!("solvable classes: {solvable}");
            println!("probability: {p}");
            println!("decimal: {:.6}", rational_to_f64(&p));
        }
        None => {
            let npairs = n * n.saturating_sub(1) / 2;
            println!("e,p_exact,p_decimal");
            for e in 0..=npairs {
                let p = catalog.exact_probability(n, e)?;
                println!("{e},{p},{:.6}", rational_to_f64(&p));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn census(d: Option<usize>, m: Option<usize>, n: Option<usize>) -> Result<ExitCode> {
    let catalog = Catalog::new();
    match (d, m) {
        (Some(d), None) => {
            let n = n.unwrap_or(3 * d);
            let graphs = catalog.compute_e(n, d)?;
            println!(
                "# excess-degree census: n={n} d={d} (sparse side, {} edges each)",
                (n + d) / 2
            );
            println!("# count={}", graphs.len());
            for g in &graphs {
                println!("{}", to_graph6(g));
            }
        }
        (None, Some(m)) => {
            let n = n.expect("clap enforces --m requires --n");
            let graphs = catalog.compute_u(n, m)?;
            println!(
                "# solvable census: n={n} m={m} (e = C(n,2) - floor(n/2) - m = {})",
                n * n.saturating_sub(1) / 2 - n / 2 - m
            );
            println!("# count={}", graphs.len());
            for g in &graphs {
                println!("{}", to_graph6(g));
            }
        }
        _ => {
            return Err(Error::range(
                "census arguments",
                "pass exactly one of --d (complement census) or --m (solvable census)",
            ))
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn validate_sampler(n: usize, e: usize, samples: u64, seed: Option<u64>) -> Result<ExitCode> {
    if samples == 0 {
        return Err(Error::range("sample count", "samples must be >= 1"));
    }
    let seed = resolve_seed(seed);
    let catalog = Catalog::new();
    let classes: Vec<Graph> = catalog
        .classes_by_vertices(n)?
        .iter()
        .filter(|g| g.edge_count() == e)
        .cloned()
        .collect();
    if classes.is_empty() {
        return Err(Error::range(
            "edge count",
            format!("no graphs with n={n}, e={e}"),
        ));
    }
    let mut index = HashMap::new();
    for (slot, g) in classes.iter().enumerate() {
        index.insert(canonical_form(g)?, slot);
    }
    let sampler = WormaldSampler::new(n, e)?;
    let mut observed = vec![0u64; classes.len()];
    let mut stats = SamplerStats::default();
    for draw in 0..samples {
        let mut rng = trial_rng(seed, n, e, draw);
        let outcome = sampler.sample_with_stats(&mut rng, &mut stats);
        let slot = index
            .get(&canonical_form(&outcome.graph)?)
            .expect("sampled graph must be one of the enumerated classes");
        observed[*slot] += 1;
    }
    println!("classes: {}", classes.len());
    println!("samples: {samples}");
    println!(
        "attempts per sample: {:.2}",
        stats.attempts as f64 / samples as f64
    );
    if classes.len() < 2 {
        println!("result: pass (a single class is trivially uniform)");
        return Ok(ExitCode::SUCCESS);
    }
    let expected = vec![samples as f64 / classes.len() as f64; classes.len()];
    let test = chi_square_goodness_of_fit(&observed, &expected);
    println!("chi-square: {:.4}", test.stat);
    println!("dof: {}", test.dof);
    println!("p-value: {:.6}", test.p_value);
    let pass = test.passes(SIGNIFICANCE);
    println!(
        "result: {} (significance {SIGNIFICANCE})",
        if pass { "pass" } else { "fail" }
    );
    Ok(if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
