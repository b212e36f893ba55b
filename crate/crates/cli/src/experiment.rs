//! The four experiment families, each deterministic under its master seed:
//! single-auction mechanism comparison, two-platform re-selection
//! competition, selection/pricing exponent sweep, and greedy-versus-optimal
//! oracle comparison.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::Context;
use rayon::prelude::*;

use eswm::market::{
    run_competition, CompetitionConfig, LearningRule, MechanismKind, PlatformSpec,
    PunctualityKnowledge,
};
use eswm::mechanism::{
    match_winners, run_benchmark, run_benchmark_fixed_price, run_eswm, select_winning_requesters,
    select_winning_workers, MechanismParams, PricingMode,
};
use eswm::model::{expected_valuation, RequesterProfile, WorkerProfile};
use eswm::oracle::{full_assignment_top_k_scores, hungarian_optimal_scores, score_matrix};
use eswm::population::{sample_requesters, sample_workers, PopulationDistributions};
use eswm::report::{compute_metrics, csv_string, format_sig6, MetricsRecord, CSV_HEADER};
use eswm::seed;

use crate::config::{ExperimentConfig, ExperimentKind};
use crate::stats;

const TAG_SINGLE: u64 = 1;
const TAG_RESELECTION: u64 = 2;
const TAG_SWEEP: u64 = 3;
const TAG_ORACLE: u64 = 4;

/// Paths written and the human-readable summary printed to standard output.
pub struct ExperimentOutput {
    pub csv_files: Vec<PathBuf>,
    pub summary: String,
}

/// Runs the configured experiment, writes its CSV artifacts under
/// `output_dir`, and returns the summary.
pub fn run_experiment(cfg: &ExperimentConfig) -> anyhow::Result<ExperimentOutput> {
    fs::create_dir_all(&cfg.output_dir)
        .with_context(|| format!("creating output dir {}", cfg.output_dir.display()))?;
    match cfg.experiment {
        ExperimentKind::SingleAuction => single_auction(cfg),
        ExperimentKind::Reselection => reselection(cfg),
        ExperimentKind::BetaSweep => beta_sweep(cfg),
        ExperimentKind::OracleCompare => oracle_compare(cfg),
    }
}

fn write(path: &Path, contents: &str) -> anyhow::Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

/// The exponent cells an experiment sweeps: the cartesian product of the two
/// grids, or the diagonal of the alpha grid when the betas are coupled.
fn beta_cells(cfg: &ExperimentConfig) -> Vec<(f64, f64)> {
    if cfg.couple_betas {
        cfg.beta_alpha_grid.iter().map(|&b| (b, b)).collect()
    } else {
        cfg.beta_alpha_grid
            .iter()
            .flat_map(|&ba| cfg.beta_lambda_grid.iter().map(move |&bl| (ba, bl)))
            .collect()
    }
}

fn draw_instance(
    cfg: &ExperimentConfig,
    tag: u64,
    run: usize,
) -> (Vec<RequesterProfile<f64>>, Vec<WorkerProfile<f64>>) {
    let dist: PopulationDistributions<f64> =
        cfg.distributions.build().expect("config was validated");
    let mut rng = seed::stream(cfg.master_seed, &[tag, run as u64, 0]);
    (
        sample_requesters(cfg.n_requesters, &dist, &mut rng),
        sample_workers(cfg.n_workers, &dist, &mut rng),
    )
}

// ---------------------------------------------------------------------------
// Single auction: both mechanisms on identical instances.
// ---------------------------------------------------------------------------

pub struct SingleAuctionRecords {
    pub eswm: Vec<MetricsRecord<f64>>,
    pub benchmark: Vec<MetricsRecord<f64>>,
}

/// One record per (run, capacity, exponent cell) and mechanism, in that
/// order. Paired entries share the instance.
pub fn single_auction_records(cfg: &ExperimentConfig) -> SingleAuctionRecords {
    type MechanismPair = (Vec<MetricsRecord<f64>>, Vec<MetricsRecord<f64>>);
    let cells = beta_cells(cfg);
    let per_run: Vec<MechanismPair> = (0..cfg.n_runs)
        .into_par_iter()
        .map(|run| {
            let (rs, ws) = draw_instance(cfg, TAG_SINGLE, run);
            let run_seed = seed::derive_seed(cfg.master_seed, &[TAG_SINGLE, run as u64]);
            let mut eswm_records = Vec::with_capacity(cfg.capacity_grid.len() * cells.len());
            let mut bench_records = Vec::with_capacity(eswm_records.capacity());
            for (ki, &k) in cfg.capacity_grid.iter().enumerate() {
                for (ci, &(ba, bl)) in cells.iter().enumerate() {
                    let params = MechanismParams::new(k, ba, bl).expect("validated grid");
                    let tags = [TAG_SINGLE, run as u64, ki as u64, ci as u64];

                    let mut rng = seed::stream(cfg.master_seed, &[&tags[..], &[1]].concat());
                    let out = run_eswm(&rs, &ws, &params, &mut rng);
                    eswm_records.push(compute_metrics(&out, &rs, &ws, &params, run_seed));

                    let mut rng = seed::stream(cfg.master_seed, &[&tags[..], &[2]].concat());
                    let out = if cfg.benchmark_scaled_pricing {
                        run_benchmark(&rs, &ws, &params, &mut rng)
                    } else {
                        run_benchmark_fixed_price(&rs, &ws, &params, &mut rng)
                    };
                    bench_records.push(compute_metrics(
                        &out,
                        &rs,
                        &ws,
                        &params.zero_beta(),
                        run_seed,
                    ));
                }
            }
            (eswm_records, bench_records)
        })
        .collect();

    let mut records = SingleAuctionRecords {
        eswm: Vec::new(),
        benchmark: Vec::new(),
    };
    for (e, b) in per_run {
        records.eswm.extend(e);
        records.benchmark.extend(b);
    }
    records
}

fn metric_columns(records: &[MetricsRecord<f64>]) -> [(&'static str, Vec<f64>); 6] {
    [
        ("nsw", records.iter().map(|r| r.nsw).collect()),
        ("esw", records.iter().map(|r| r.esw).collect()),
        (
            "platform_utility_pre",
            records.iter().map(|r| r.platform_utility_pre).collect(),
        ),
        (
            "platform_utility_post",
            records.iter().map(|r| r.platform_utility_post).collect(),
        ),
        (
            "avg_requester_utility",
            records.iter().map(|r| r.avg_requester_utility).collect(),
        ),
        (
            "avg_worker_utility",
            records.iter().map(|r| r.avg_worker_utility).collect(),
        ),
    ]
}

fn single_auction(cfg: &ExperimentConfig) -> anyhow::Result<ExperimentOutput> {
    let records = single_auction_records(cfg);
    let eswm_path = cfg
        .output_dir
        .join(format!("single_auction_eswm_{}.csv", cfg.master_seed));
    let bench_path = cfg
        .output_dir
        .join(format!("single_auction_benchmark_{}.csv", cfg.master_seed));
    write(&eswm_path, &csv_string(&records.eswm))?;
    write(&bench_path, &csv_string(&records.benchmark))?;

    let mut summary = format!(
        "single_auction: {} requesters, {} workers, {} runs, seed {}\n",
        cfg.n_requesters, cfg.n_workers, cfg.n_runs, cfg.master_seed
    );
    for (name, records) in [("eswm", &records.eswm), ("benchmark", &records.benchmark)] {
        summary.push_str(&format!("  {name} (mean ± 95% CI over all records)\n"));
        for (metric, values) in metric_columns(records) {
            summary.push_str(&format!("    {metric}: {}\n", stats::summarize(&values)));
        }
    }
    Ok(ExperimentOutput {
        csv_files: vec![eswm_path, bench_path],
        summary,
    })
}

// ---------------------------------------------------------------------------
// Re-selection competition.
// ---------------------------------------------------------------------------

/// One CSV row of the competition time series: a metrics record plus its
/// round, platform, and roster sizes.
#[derive(Debug, Clone, Copy)]
pub struct CompetitionRow {
    pub record: MetricsRecord<f64>,
    pub round: u32,
    pub platform: char,
    pub roster_requesters: usize,
    pub roster_workers: usize,
}

/// Runs `n_runs` seeded competitions (ESWM as platform A, the benchmark as
/// platform B) for every capacity in the grid.
pub fn reselection_rows(cfg: &ExperimentConfig) -> Vec<CompetitionRow> {
    let dist: PopulationDistributions<f64> =
        cfg.distributions.build().expect("config was validated");
    let ba = cfg.beta_alpha_grid[0];
    let bl = cfg.beta_lambda_grid[0];
    let pricing = if cfg.benchmark_scaled_pricing {
        PricingMode::Scaled
    } else {
        PricingMode::Fixed
    };

    let mut jobs: Vec<(usize, usize)> = Vec::new();
    for ki in 0..cfg.capacity_grid.len() {
        for run in 0..cfg.n_runs {
            jobs.push((ki, run));
        }
    }
    let rows: Vec<Vec<CompetitionRow>> = jobs
        .par_iter()
        .map(|&(ki, run)| {
            let k = cfg.capacity_grid[ki];
            let params = MechanismParams::new(k, ba, bl).expect("validated grid");
            let comp = CompetitionConfig {
                n_requesters: cfg.n_requesters,
                n_workers: cfg.n_workers,
                spec_a: PlatformSpec::eswm(params),
                spec_b: PlatformSpec {
                    mechanism: MechanismKind::Benchmark,
                    params,
                    pricing,
                },
                rounds: cfg.rounds,
                seed: seed::derive_seed(cfg.master_seed, &[TAG_RESELECTION, ki as u64, run as u64]),
                distributions: dist,
                learning: LearningRule::RunningMean,
                knowledge: if cfg.punctuality_from_logs {
                    PunctualityKnowledge::FromLogs
                } else {
                    PunctualityKnowledge::Cold
                },
            };
            run_competition(&comp)
                .into_iter()
                .flat_map(|r| {
                    [
                        CompetitionRow {
                            record: r.a,
                            round: r.round,
                            platform: 'A',
                            roster_requesters: r.roster_a.requesters,
                            roster_workers: r.roster_a.workers,
                        },
                        CompetitionRow {
                            record: r.b,
                            round: r.round,
                            platform: 'B',
                            roster_requesters: r.roster_b.requesters,
                            roster_workers: r.roster_b.workers,
                        },
                    ]
                })
                .collect()
        })
        .collect();
    rows.into_iter().flatten().collect()
}

fn competition_csv(rows: &[CompetitionRow]) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push_str(",round,platform,roster_requesters,roster_workers\n");
    for row in rows {
        let base = csv_string(std::slice::from_ref(&row.record));
        let line = base.lines().nth(1).expect("one record row");
        out.push_str(&format!(
            "{line},{},{},{},{}\n",
            row.round, row.platform, row.roster_requesters, row.roster_workers
        ));
    }
    out
}

fn reselection(cfg: &ExperimentConfig) -> anyhow::Result<ExperimentOutput> {
    let rows = reselection_rows(cfg);
    let path = cfg
        .output_dir
        .join(format!("reselection_{}.csv", cfg.master_seed));
    write(&path, &competition_csv(&rows))?;

    let last_round = cfg.rounds;
    let mut summary = format!(
        "reselection: {} requesters, {} workers, {} rounds, {} competitions, seed {}\n",
        cfg.n_requesters, cfg.n_workers, cfg.rounds, cfg.n_runs, cfg.master_seed
    );
    if last_round >= 1 {
        let final_a: Vec<&CompetitionRow> = rows
            .iter()
            .filter(|r| r.round == last_round && r.platform == 'A')
            .collect();
        let final_b: Vec<&CompetitionRow> = rows
            .iter()
            .filter(|r| r.round == last_round && r.platform == 'B')
            .collect();
        let shares: Vec<f64> = final_a
            .iter()
            .map(|r| {
                (r.roster_requesters + r.roster_workers) as f64
                    / (cfg.n_requesters + cfg.n_workers) as f64
            })
            .collect();
        summary.push_str(&format!(
            "  final-round ESWM roster share: {}\n",
            stats::summarize(&shares)
        ));
        for (label, rows) in [("eswm (A)", final_a), ("benchmark (B)", final_b)] {
            let records: Vec<MetricsRecord<f64>> = rows.iter().map(|r| r.record).collect();
            summary.push_str(&format!("  {label} final round\n"));
            for (metric, values) in metric_columns(&records) {
                summary.push_str(&format!("    {metric}: {}\n", stats::summarize(&values)));
            }
        }
    }
    Ok(ExperimentOutput {
        csv_files: vec![path],
        summary,
    })
}

// ---------------------------------------------------------------------------
// Exponent sweep.
// ---------------------------------------------------------------------------

/// One record per (run, capacity, exponent cell) for the main mechanism.
pub fn beta_sweep_records(cfg: &ExperimentConfig) -> Vec<MetricsRecord<f64>> {
    let cells = beta_cells(cfg);
    let per_run: Vec<Vec<MetricsRecord<f64>>> = (0..cfg.n_runs)
        .into_par_iter()
        .map(|run| {
            let (rs, ws) = draw_instance(cfg, TAG_SWEEP, run);
            let run_seed = seed::derive_seed(cfg.master_seed, &[TAG_SWEEP, run as u64]);
            let mut records = Vec::with_capacity(cfg.capacity_grid.len() * cells.len());
            for (ki, &k) in cfg.capacity_grid.iter().enumerate() {
                for (ci, &(ba, bl)) in cells.iter().enumerate() {
                    let params = MechanismParams::new(k, ba, bl).expect("validated grid");
                    let mut rng = seed::stream(
                        cfg.master_seed,
                        &[TAG_SWEEP, run as u64, ki as u64, ci as u64, 1],
                    );
                    let out = run_eswm(&rs, &ws, &params, &mut rng);
                    records.push(compute_metrics(&out, &rs, &ws, &params, run_seed));
                }
            }
            records
        })
        .collect();
    per_run.into_iter().flatten().collect()
}

fn beta_sweep(cfg: &ExperimentConfig) -> anyhow::Result<ExperimentOutput> {
    let records = beta_sweep_records(cfg);
    let path = cfg
        .output_dir
        .join(format!("beta_sweep_{}.csv", cfg.master_seed));
    write(&path, &csv_string(&records))?;

    let cells = beta_cells(cfg);
    let mut summary = format!(
        "beta_sweep: {} cells x {} runs, capacity {:?}, seed {}\n",
        cells.len(),
        cfg.n_runs,
        cfg.capacity_grid,
        cfg.master_seed
    );
    summary.push_str("  beta_alpha beta_lambda | platform_utility_post avg_requester_utility avg_worker_utility esw\n");
    for &(ba, bl) in &cells {
        let cell: Vec<&MetricsRecord<f64>> = records
            .iter()
            .filter(|r| r.beta_alpha == ba && r.beta_lambda == bl)
            .collect();
        let col = |f: fn(&MetricsRecord<f64>) -> f64| -> f64 {
            stats::mean(&cell.iter().map(|r| f(r)).collect::<Vec<_>>())
        };
        summary.push_str(&format!(
            "  {:10.2} {:11.2} | {:21.4} {:21.4} {:18.4} {:10.4}\n",
            ba,
            bl,
            col(|r| r.platform_utility_post),
            col(|r| r.avg_requester_utility),
            col(|r| r.avg_worker_utility),
            col(|r| r.esw),
        ));
    }
    Ok(ExperimentOutput {
        csv_files: vec![path],
        summary,
    })
}

// ---------------------------------------------------------------------------
// Oracle comparison: greedy mechanism vs exact assignment optimum.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
pub struct OracleRow {
    pub size: usize,
    pub run: usize,
    pub esw_greedy: f64,
    pub esw_optimal: f64,
    pub esw_full_top_k: f64,
    pub relative_gap: f64,
    /// Wall time of greedy selection plus matching (not in the CSV).
    pub greedy_seconds: f64,
    /// Wall time of score-matrix construction plus the exact solve
    /// (not in the CSV).
    pub hungarian_seconds: f64,
}

/// Greedy expected welfare and wall time on one instance.
pub fn greedy_esw(
    rs: &[RequesterProfile<f64>],
    ws: &[WorkerProfile<f64>],
    params: &MechanismParams<f64>,
) -> (f64, f64) {
    let start = Instant::now();
    let matched = match_winners(
        select_winning_requesters(rs, params),
        select_winning_workers(ws, params),
        params,
    );
    let elapsed = start.elapsed().as_secs_f64();
    let esw = matched
        .priced
        .winners_r
        .iter()
        .zip(matched.priced.winners_w.iter())
        .map(|(r, w)| expected_valuation(r, w) - w.cost)
        .sum();
    (esw, elapsed)
}

pub fn oracle_compare_rows(cfg: &ExperimentConfig) -> Vec<OracleRow> {
    let dist: PopulationDistributions<f64> =
        cfg.distributions.build().expect("config was validated");
    let k = cfg.oracle_capacity;
    let params = MechanismParams::new(k, cfg.beta_alpha_grid[0], cfg.beta_lambda_grid[0])
        .expect("validated grid");
    let mut rows = Vec::new();
    for &size in &cfg.size_grid {
        for run in 0..cfg.n_runs {
            let mut rng = seed::stream(cfg.master_seed, &[TAG_ORACLE, size as u64, run as u64]);
            let rs = sample_requesters(size, &dist, &mut rng);
            let ws = sample_workers(2 * size, &dist, &mut rng);

            let (esw_greedy, greedy_seconds) = greedy_esw(&rs, &ws, &params);

            let start = Instant::now();
            let scores = score_matrix(&rs, &ws);
            let (_, esw_optimal) = hungarian_optimal_scores(&scores, k);
            let hungarian_seconds = start.elapsed().as_secs_f64();
            let (_, esw_full_top_k) = full_assignment_top_k_scores(&scores, k);

            rows.push(OracleRow {
                size,
                run,
                esw_greedy,
                esw_optimal,
                esw_full_top_k,
                relative_gap: if esw_optimal > 0.0 {
                    (esw_optimal - esw_greedy) / esw_optimal
                } else {
                    0.0
                },
                greedy_seconds,
                hungarian_seconds,
            });
        }
    }
    rows
}

fn oracle_compare(cfg: &ExperimentConfig) -> anyhow::Result<ExperimentOutput> {
    let rows = oracle_compare_rows(cfg);
    let path = cfg
        .output_dir
        .join(format!("oracle_compare_{}.csv", cfg.master_seed));
    // Wall times stay out of the CSV so reruns are byte-identical.
    let mut csv = String::from("size,run,esw_greedy,esw_optimal,esw_full_top_k,relative_gap\n");
    for r in &rows {
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.size,
            r.run,
            format_sig6(r.esw_greedy),
            format_sig6(r.esw_optimal),
            format_sig6(r.esw_full_top_k),
            format_sig6(r.relative_gap),
        ));
    }
    write(&path, &csv)?;

    let mut summary = format!(
        "oracle_compare: capacity {}, {} runs per size, seed {}\n",
        cfg.oracle_capacity, cfg.n_runs, cfg.master_seed
    );
    summary.push_str("  size | esw_greedy esw_optimal rel_gap | greedy_s hungarian_s\n");
    for &size in &cfg.size_grid {
        let at: Vec<&OracleRow> = rows.iter().filter(|r| r.size == size).collect();
        let m =
            |f: fn(&OracleRow) -> f64| stats::mean(&at.iter().map(|r| f(r)).collect::<Vec<_>>());
        summary.push_str(&format!(
            "  {size:4} | {:10.2} {:11.2} {:7.4} | {:8.4} {:11.4}\n",
            m(|r| r.esw_greedy),
            m(|r| r.esw_optimal),
            m(|r| r.relative_gap),
            m(|r| r.greedy_seconds),
            m(|r| r.hungarian_seconds),
        ));
    }
    Ok(ExperimentOutput {
        csv_files: vec![path],
        summary,
    })
}
