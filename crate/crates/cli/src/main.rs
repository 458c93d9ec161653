//! Batch front end: construct, count, verify, brute-force, sweep.
//!
//! Exit status: 0 when every check holds, 1 when a check is violated (the
//! report carries the witnesses), 2 for invalid input or configuration.
//! `RAYON_NUM_THREADS` caps the worker count of the parallel searches.

mod render;

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use mindeg_cliques::campaign::{run_sweep, standard_suite, SweepConfig};
use mindeg_cliques::cliques::count_cliques;
use mindeg_cliques::construction::build_extremal;
use mindeg_cliques::formulas::{
    check_identity_g, epsilon_p_lower_bound, g_r, p_from_beta, GIdentity,
};
use mindeg_cliques::graph::Graph;
use mindeg_cliques::graph6::{parse_graph6, serialize_graph6};
use mindeg_cliques::oracle::{
    brute_force_k_r, check_extremal_uniqueness, BruteForceOptions, DegreeMode,
};
use mindeg_cliques::rational::{parse_rational, Rational};
use mindeg_cliques::verify::{
    verify_eta_aggregate, verify_p2_chain, verify_p3_strengthened, verify_phi,
    verify_ratio_chain, verify_subclique_degree_sum, verify_tilde_nonneg, verify_tilde_sum_upper,
    ChainTheorem, DegreeVariant, VerifyContext,
};

use render::{envelope, render, violated, OutputFormat, Payload};

#[derive(Parser)]
#[command(name = "mindeg", version, about = "Exact clique counts, extremal constructions and inequality verification for minimum-degree graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format for the emitted report
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    output: OutputFormat,
    /// Write the report to this path instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Graph6,
    EdgeList,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exactly,
    AtLeast,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    /// every check applicable at this beta
    All,
    /// the p = 2 chain
    P2,
    /// the strengthened p = 3 statements, eta aggregate, and the p = 3 ratio chain
    P3,
    /// ratio chain for K_{p+2}-free graphs
    Kpfree,
    /// ratio chain against the largest guaranteed clique order
    Largest,
    /// tilde slack nonnegativity and its aggregate upper bound
    Tilde,
    /// subclique degree sums, both variants
    Subclique,
    /// the iterated subclique sums
    Phi,
    /// eta aggregate and bad-clique diagnostics
    Eta,
}

#[derive(Subcommand)]
enum Command {
    /// Build a member of the extremal family and report its clique counts
    Construct {
        #[arg(long)]
        n: usize,
        /// exact fraction, e.g. 1/3
        #[arg(long)]
        beta: String,
        /// where to write the constructed graph (stdout report always carries graph6)
        #[arg(long)]
        graph_out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = GraphFormat::Graph6)]
        format: GraphFormat,
    },
    /// Clique-count table for a graph file (graph6 or "n m" edge list)
    Count {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 6)]
        r_max: usize,
    },
    /// g_r table for a beta, with the exact identity checks
    Gr {
        #[arg(long)]
        beta: String,
        /// table rows r = 2..=r_max; 0 means p + 2
        #[arg(long, default_value_t = 0)]
        r_max: usize,
        /// also run the three g identities over the valid t range
        #[arg(long)]
        identities: bool,
    },
    /// Run a named verification suite against a graph
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        beta: String,
        /// graph file to verify
        #[arg(long, conflicts_with = "construct")]
        input: Option<PathBuf>,
        /// verify the constructed member for (n, beta) instead of a file
        #[arg(long, requires = "n")]
        construct: bool,
        #[arg(long)]
        n: Option<usize>,
        /// ratio-chain pairs as "t:s,t:s"; defaults to every valid pair
        #[arg(long)]
        pairs: Option<String>,
    },
    /// Exhaustive minimum r-clique search over small graphs
    Brute {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Exactly)]
        mode: ModeArg,
        /// search refusal threshold (hard cap 10)
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
    /// Check that the search minimum matches g_r(beta) n^r exactly when feasible
    Uniqueness {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
    /// Random-graph verification campaign
    Sweep {
        /// orders, comma separated
        #[arg(long, value_delimiter = ',')]
        n: Vec<usize>,
        /// betas, comma separated fractions
        #[arg(long, value_delimiter = ',')]
        beta: Vec<String>,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Certified lower bound on the epsilon constant of the near-Turan regime
    Epsilon {
        #[arg(long)]
        p: usize,
        #[arg(long, default_value = "1/10000")]
        resolution: String,
    },
}

fn load_graph(path: &PathBuf) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    if first.split_whitespace().count() >= 2 {
        Ok(Graph::from_edge_list_text(&text)?)
    } else {
        Ok(parse_graph6(first)?)
    }
}

fn parse_beta(s: &str) -> Result<Rational> {
    let beta = parse_rational(s)?;
    p_from_beta(&beta)?; // range check
    Ok(beta)
}

fn parse_pairs(s: &str) -> Result<Vec<(usize, usize)>> {
    s.split(',')
        .map(|p| {
            let (t, s) = p
                .split_once(':')
                .ok_or_else(|| anyhow!("pair {p:?} is not of the form t:s"))?;
            Ok((t.trim().parse()?, s.trim().parse()?))
        })
        .collect()
}

fn count_table(g: &Graph, r_max: usize) -> Result<BTreeMap<usize, u64>> {
    let stats = count_cliques(g, r_max.max(1))?;
    Ok((1..=stats.r_max()).map(|t| (t, stats.k(t))).collect())
}

fn run(cli: &Cli) -> Result<Payload> {
    Ok(match &cli.command {
        Command::Construct { n, beta, graph_out, format } => {
            let beta = parse_beta(beta)?;
            let g = build_extremal(*n, &beta)?;
            let p = p_from_beta(&beta)?;
            if let Some(path) = graph_out {
                let body = match format {
                    GraphFormat::Graph6 => serialize_graph6(&g) + "\n",
                    GraphFormat::EdgeList => g.to_edge_list_text(),
                };
                fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;
            }
            Payload::Graph {
                graph6: serialize_graph6(&g),
                n: g.n(),
                min_degree: g.min_degree(),
                counts: count_table(&g, p + 2)?,
            }
        }
        Command::Count { input, r_max } => {
            let g = load_graph(input)?;
            Payload::Counts {
                n: g.n(),
                min_degree: g.min_degree(),
                counts: count_table(&g, *r_max)?,
            }
        }
        Command::Gr { beta, r_max, identities } => {
            let beta = parse_beta(beta)?;
            let p = p_from_beta(&beta)?;
            let hi = if *r_max == 0 { p + 2 } else { *r_max };
            let values: BTreeMap<usize, String> =
                (2..=hi).map(|r| Ok((r, g_r(&beta, r)?.to_string()))).collect::<Result<_>>()?;
            let mut reports = Vec::new();
            if *identities {
                for t in 2..=p {
                    reports.push(check_identity_g(&beta, t, GIdentity::Step)?);
                    reports.push(check_identity_g(&beta, t, GIdentity::ThreeTerm)?);
                }
                if p >= 2 {
                    reports.push(check_identity_g(&beta, p, GIdentity::Reduction)?);
                }
            }
            Payload::GrTable {
                beta: beta.to_string(),
                p,
                values,
                reports,
            }
        }
        Command::Verify { suite, beta, input, construct, n, pairs } => {
            let beta = parse_beta(beta)?;
            let g = match (input, construct) {
                (Some(path), _) => load_graph(path)?,
                (None, true) => {
                    build_extremal(n.ok_or_else(|| anyhow!("--construct needs --n"))?, &beta)?
                }
                (None, false) => bail!("verify needs --input or --construct"),
            };
            let pairs = pairs.as_deref().map(parse_pairs).transpose()?;
            Payload::Reports(run_suite(&g, &beta, *suite, pairs)?)
        }
        Command::Brute { n, delta, r, mode, max_n } => {
            let opts = BruteForceOptions { max_n: *max_n, ..Default::default() };
            let mode = match mode {
                ModeArg::Exactly => DegreeMode::Exactly,
                ModeArg::AtLeast => DegreeMode::AtLeast,
            };
            Payload::Search(brute_force_k_r(*n, *delta, *r, mode, &opts)?)
        }
        Command::Uniqueness { n, beta, r, max_n } => {
            let beta = parse_beta(beta)?;
            let opts = BruteForceOptions { max_n: *max_n, ..Default::default() };
            Payload::Reports(vec![check_extremal_uniqueness(*n, &beta, *r, &opts)?])
        }
        Command::Sweep { n, beta, trials, seed } => {
            let mut configs = Vec::new();
            for &order in n {
                for b in beta {
                    configs.push(SweepConfig {
                        n: order,
                        beta: parse_beta(b)?,
                        trials: *trials,
                        seed: *seed,
                    });
                }
            }
            Payload::Sweep(run_sweep(&configs)?)
        }
        Command::Epsilon { p, resolution } => {
            let res = parse_rational(resolution)?;
            let bound = epsilon_p_lower_bound(*p, &res)?;
            Payload::Epsilon {
                p: *p,
                resolution: res.to_string(),
                lower_bound: bound.to_string(),
            }
        }
    })
}

fn run_suite(
    g: &Graph,
    beta: &Rational,
    suite: Suite,
    pairs: Option<Vec<(usize, usize)>>,
) -> Result<Vec<mindeg_cliques::report::VerificationReport>> {
    if suite == Suite::All {
        return Ok(standard_suite(g, beta)?);
    }
    let ctx = VerifyContext::new(g, beta)?;
    let p = ctx.p;
    let all_pairs = || -> Vec<(usize, usize)> {
        (2..=p)
            .flat_map(|t| ((t + 1)..=(p + 1)).map(move |s| (t, s)))
            .collect()
    };
    let mut reports = Vec::new();
    match suite {
        Suite::All => unreachable!(),
        Suite::P2 => reports.push(verify_p2_chain(&ctx)?),
        Suite::P3 => {
            reports.extend(verify_p3_strengthened(&ctx)?);
            reports.push(verify_eta_aggregate(&ctx)?);
            let chain = pairs.unwrap_or_else(|| vec![(2, 3), (3, 4), (2, 4)]);
            reports.push(verify_ratio_chain(&ctx, ChainTheorem::PEqualsThree, &chain)?);
        }
        Suite::Kpfree => {
            let chain = pairs.unwrap_or_else(all_pairs);
            reports.push(verify_ratio_chain(&ctx, ChainTheorem::KpPlus2Free, &chain)?);
        }
        Suite::Largest => {
            let chain = pairs.unwrap_or_else(|| (2..=p).map(|t| (t, p + 1)).collect());
            reports.push(verify_ratio_chain(&ctx, ChainTheorem::LargestGuaranteed, &chain)?);
        }
        Suite::Tilde => {
            for t in 2..=p {
                reports.push(verify_tilde_nonneg(&ctx, t)?);
                reports.push(verify_tilde_sum_upper(&ctx, t)?);
            }
        }
        Suite::Subclique => {
            for (t, s) in pairs.unwrap_or_else(all_pairs) {
                reports.push(verify_subclique_degree_sum(&ctx, s, t, DegreeVariant::Full)?);
                reports.push(verify_subclique_degree_sum(&ctx, s, t, DegreeVariant::Capped)?);
            }
        }
        Suite::Phi => {
            for (t, s) in pairs.unwrap_or_else(all_pairs) {
                reports.extend(verify_phi(&ctx, t, s)?);
            }
        }
        Suite::Eta => reports.push(verify_eta_aggregate(&ctx)?),
    }
    Ok(reports)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    match run(&cli) {
        Ok(payload) => {
            let bad = violated(&payload);
            let env = envelope(argv, payload);
            let rendered = match render(&env, cli.output) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let write_result = match &cli.out {
                Some(path) => fs::write(path, rendered).map_err(|e| anyhow!(e)),
                None => {
                    print!("{rendered}");
                    Ok(())
                }
            };
            if let Err(e) = write_result {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if bad {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            // anything that prevents a check from running is an input problem
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
