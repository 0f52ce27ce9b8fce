//! Monte Carlo orchestration: one realization draws (or reuses) a graph,
//! seeds states and zealots, runs the dynamics and measures polarization;
//! a sweep repeats this over a zealot-fraction grid with summary statistics.
//!
//! Realization seeds are derived by counter-based mixing from the master
//! seed and the grid indices, so results are independent of worker count
//! and scheduling order.

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::PathBuf;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{run_to_equilibrium, RunOutcome};
use crate::error::{Error, Result};
use crate::graph::{
    configuration_model, fix_parity, largest_component, load_edge_list, sample_poisson_degrees,
    sample_powerlaw_degrees, Graph,
};
use crate::metrics::{correlated_polarization, PolarizationSummary};
use crate::seeding::{
    degree_zealots, random_initial, seed_initial, seed_initial_with_pair, uniform_zealots,
};

/// Graph source for a sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Substrate {
    /// Configuration model with Poisson degrees of the given mean.
    Poisson { mean_degree: f64 },
    /// Configuration model with power-law degrees `p(k) ~ k^-alpha`,
    /// truncated below at `k_min`.
    Powerlaw { alpha: f64, k_min: usize },
    /// A fixed graph read from an edge-list file.
    EdgeList { path: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialCondition {
    /// Every vertex starts at +1 or -1 uniformly at random.
    Random,
    /// All vertices neutral except one opposite-state pair.
    Seed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZealotryKind {
    /// Independent Bernoulli(p_z) per vertex.
    Uniform,
    /// The round(p_z * n) highest-degree vertices.
    Degree,
}

fn default_histogram_bins() -> usize {
    50
}

/// Full description of one sweep; serializable for provenance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub substrate: Substrate,
    /// Target graph size for generated substrates; ignored for edge lists.
    #[serde(default)]
    pub n: usize,
    pub ic: InitialCondition,
    pub zealotry: ZealotryKind,
    /// Zealot fractions to sweep, strictly increasing, each in [0, 1].
    pub pz_grid: Vec<f64>,
    /// Realizations per grid point.
    pub realizations: usize,
    pub master_seed: u64,
    /// Cap on dynamics steps per run; defaults to 10x the component size.
    #[serde(default)]
    pub max_steps: Option<usize>,
    #[serde(default = "default_histogram_bins")]
    pub histogram_bins: usize,
    /// Explicit (+1, -1) seed vertices for seed initial conditions;
    /// chosen uniformly at random when absent.
    #[serde(default)]
    pub seed_pair: Option<(usize, usize)>,
}

impl SweepConfig {
    /// Validates every field, naming the offending one in the error.
    pub fn validate(&self) -> Result<()> {
        match &self.substrate {
            Substrate::Poisson { mean_degree } => {
                if *mean_degree <= 0.0 || !mean_degree.is_finite() {
                    return Err(Error::invalid(
                        "substrate.mean_degree",
                        format!("must be positive and finite, got {mean_degree}"),
                    ));
                }
            }
            Substrate::Powerlaw { alpha, k_min } => {
                if *alpha <= 1.0 || !alpha.is_finite() {
                    return Err(Error::invalid(
                        "substrate.alpha",
                        format!("must be greater than 1, got {alpha}"),
                    ));
                }
                if *k_min == 0 {
                    return Err(Error::invalid("substrate.k_min", "must be at least 1"));
                }
            }
            Substrate::EdgeList { path } => {
                if path.as_os_str().is_empty() {
                    return Err(Error::invalid("substrate.path", "must not be empty"));
                }
            }
        }
        if !matches!(self.substrate, Substrate::EdgeList { .. }) {
            let minimum = if self.ic == InitialCondition::Seed { 2 } else { 1 };
            if self.n < minimum {
                return Err(Error::invalid(
                    "n",
                    format!("must be at least {minimum} for this configuration, got {}", self.n),
                ));
            }
        }
        if self.pz_grid.is_empty() {
            return Err(Error::invalid("pz_grid", "must not be empty"));
        }
        for (i, &pz) in self.pz_grid.iter().enumerate() {
            if !(0.0..=1.0).contains(&pz) || !pz.is_finite() {
                return Err(Error::invalid(
                    "pz_grid",
                    format!("entry {i} = {pz} is outside [0, 1]"),
                ));
            }
            if i > 0 && pz <= self.pz_grid[i - 1] {
                return Err(Error::invalid(
                    "pz_grid",
                    format!("entries must be strictly increasing, violated at index {i}"),
                ));
            }
        }
        if self.realizations == 0 {
            return Err(Error::invalid("realizations", "must be at least 1"));
        }
        if self.max_steps == Some(0) {
            return Err(Error::invalid("max_steps", "must be at least 1"));
        }
        if self.histogram_bins == 0 {
            return Err(Error::invalid("histogram_bins", "must be at least 1"));
        }
        if let Some((plus, minus)) = self.seed_pair {
            if plus == minus {
                return Err(Error::invalid("seed_pair", "vertices must be distinct"));
            }
        }
        Ok(())
    }

    /// Resolves the substrate: edge-list graphs are parsed and reduced to
    /// their largest component once, then shared read-only by all runs.
    pub fn prepare_substrate(&self) -> Result<PreparedSubstrate> {
        let fixed = match &self.substrate {
            Substrate::EdgeList { path } => {
                let file = File::open(path)?;
                let labeled = load_edge_list(BufReader::new(file))?;
                let (component, _) = largest_component(&labeled.graph);
                Some(Arc::new(component))
            }
            _ => None,
        };
        Ok(PreparedSubstrate { fixed })
    }
}

/// A substrate ready for realization draws.
#[derive(Clone, Debug)]
pub struct PreparedSubstrate {
    fixed: Option<Arc<Graph>>,
}

/// Derives the rng seed for one realization from the master seed and the
/// grid position, with splitmix-style avalanche mixing.
pub fn stream_seed(master_seed: u64, pz_index: usize, realization_index: usize) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
    let a = mix(master_seed ^ 0x9e37_79b9_7f4a_7c15);
    let b = mix(a ^ (pz_index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    mix(b ^ (realization_index as u64).wrapping_mul(0xd1b5_4a32_d192_ed03))
}

/// Everything recorded about one realization.
#[derive(Clone, Debug, PartialEq)]
pub struct RealizationResult {
    pub summary: PolarizationSummary,
    pub outcome: RunOutcome,
    pub component_vertices: usize,
    pub component_edges: usize,
}

/// Runs one realization: draw or reuse the substrate, reduce to the largest
/// component, seed states and zealots, iterate to equilibrium, measure.
pub fn run_realization(
    cfg: &SweepConfig,
    substrate: &PreparedSubstrate,
    p_z: f64,
    stream_seed: u64,
) -> Result<RealizationResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(stream_seed);

    let generated;
    let component: &Graph = match &substrate.fixed {
        Some(shared) => shared,
        None => {
            let seq = match &cfg.substrate {
                Substrate::Poisson { mean_degree } => {
                    sample_poisson_degrees(cfg.n, *mean_degree, &mut rng)?
                }
                Substrate::Powerlaw { alpha, k_min } => {
                    sample_powerlaw_degrees(cfg.n, *alpha, *k_min, &mut rng)?
                }
                Substrate::EdgeList { .. } => unreachable!("fixed substrate handled above"),
            };
            let seq = fix_parity(seq, &mut rng);
            let graph = configuration_model(&seq, &mut rng)?;
            let (component, _) = largest_component(&graph);
            generated = component;
            &generated
        }
    };

    let n = component.vertex_count();
    let initial = match cfg.ic {
        InitialCondition::Random => random_initial(n, &mut rng),
        InitialCondition::Seed => match cfg.seed_pair {
            Some((plus, minus)) => seed_initial_with_pair(n, plus, minus)?,
            None => seed_initial(n, &mut rng)?,
        },
    };
    let zealots = match cfg.zealotry {
        ZealotryKind::Uniform => uniform_zealots(n, p_z, &mut rng)?,
        ZealotryKind::Degree => degree_zealots(component, p_z, &mut rng)?,
    };

    let max_steps = cfg.max_steps.unwrap_or(10 * n.max(1));
    let outcome = run_to_equilibrium(component, &initial, &zealots, max_steps);
    let summary = correlated_polarization(component, &outcome.final_states)?;

    Ok(RealizationResult {
        summary,
        outcome,
        component_vertices: n,
        component_edges: component.edge_count(),
    })
}

/// Mean and middle-90% bracket of a sample.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SummaryStats {
    pub mean: f64,
    pub p5: f64,
    pub p95: f64,
}

fn summarize(values: &[f64]) -> SummaryStats {
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    SummaryStats {
        mean,
        p5: percentile(values, 0.05).expect("non-empty sample"),
        p95: percentile(values, 0.95).expect("non-empty sample"),
    }
}

/// Linear-interpolation percentile: rank `q * (len - 1)` on the sorted
/// sample, interpolating between the bracketing order statistics.
pub fn percentile(values: &[f64], q: f64) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::invalid("values", "percentile of an empty sample"));
    }
    if !(0.0..=1.0).contains(&q) || !q.is_finite() {
        return Err(Error::invalid("q", format!("must lie in [0, 1], got {q}")));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("no NaN in sample"));
    let rank = q * (sorted.len() - 1) as f64;
    let below = rank.floor() as usize;
    let above = rank.ceil() as usize;
    let fraction = rank - below as f64;
    Ok(sorted[below] + fraction * (sorted[above] - sorted[below]))
}

/// Equal-width histogram over `[lo, hi]`; out-of-range values are clamped
/// into the boundary bins. Bins are right-open except the last.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Histogram {
    pub lo: f64,
    pub hi: f64,
    pub counts: Vec<u64>,
}

impl Histogram {
    /// The `bins + 1` bin boundaries.
    pub fn edges(&self) -> Vec<f64> {
        let bins = self.counts.len();
        let width = (self.hi - self.lo) / bins as f64;
        (0..=bins).map(|i| self.lo + i as f64 * width).collect()
    }
}

pub fn histogram(values: &[f64], bins: usize, lo: f64, hi: f64) -> Histogram {
    assert!(bins >= 1, "at least one bin");
    assert!(lo < hi, "empty histogram range");
    let mut counts = vec![0u64; bins];
    let scale = bins as f64 / (hi - lo);
    for &v in values {
        let idx = ((v - lo) * scale).floor();
        let idx = if idx < 0.0 {
            0
        } else {
            (idx as usize).min(bins - 1)
        };
        counts[idx] += 1;
    }
    Histogram { lo, hi, counts }
}

/// Raw per-realization scalars, one row of the optional raw CSV.
#[derive(Clone, Debug, PartialEq)]
pub struct RealizationRecord {
    pub pz: f64,
    pub realization: usize,
    pub summary: PolarizationSummary,
    pub converged: bool,
    pub period_two: bool,
    pub steps: usize,
    pub total_flips: u64,
    pub component_vertices: usize,
    pub component_edges: usize,
}

/// Summary row for one grid point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PzSummary {
    pub pz: f64,
    pub phi: SummaryStats,
    pub balance: SummaryStats,
    pub assortativity: SummaryStats,
    pub flips: SummaryStats,
    pub nonconverged_frac: f64,
    pub phi_histogram: Histogram,
}

/// Aggregated sweep output; `raw` holds the per-realization records in
/// deterministic (grid, realization) order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepResult {
    pub config: SweepConfig,
    pub rows: Vec<PzSummary>,
    #[serde(skip)]
    pub raw: Vec<RealizationRecord>,
}

/// Runs the full grid. `workers` sizes the thread pool (0 = default);
/// results are identical for every worker count.
pub fn sweep(cfg: &SweepConfig, workers: usize) -> Result<SweepResult> {
    cfg.validate()?;
    let prepared = cfg.prepare_substrate()?;
    let m = cfg.realizations;
    let total = cfg.pz_grid.len() * m;

    let run_one = |flat: usize| -> Result<RealizationRecord> {
        let pz_index = flat / m;
        let realization = flat % m;
        let pz = cfg.pz_grid[pz_index];
        let seed = stream_seed(cfg.master_seed, pz_index, realization);
        let result =
            run_realization(cfg, &prepared, pz, seed).map_err(|e| Error::Realization {
                pz,
                index: realization,
                source: Box::new(e),
            })?;
        Ok(RealizationRecord {
            pz,
            realization,
            summary: result.summary,
            converged: result.outcome.converged,
            period_two: result.outcome.period_two,
            steps: result.outcome.steps,
            total_flips: result.outcome.total_flips,
            component_vertices: result.component_vertices,
            component_edges: result.component_edges,
        })
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::invalid("workers", e.to_string()))?;
    let raw: Vec<RealizationRecord> =
        pool.install(|| (0..total).into_par_iter().map(run_one).collect::<Result<_>>())?;

    let rows = cfg
        .pz_grid
        .iter()
        .enumerate()
        .map(|(pz_index, &pz)| {
            let slice = &raw[pz_index * m..(pz_index + 1) * m];
            let phi: Vec<f64> = slice.iter().map(|r| r.summary.phi).collect();
            let balance: Vec<f64> = slice.iter().map(|r| r.summary.balance).collect();
            let assort: Vec<f64> = slice.iter().map(|r| r.summary.assortativity).collect();
            let flips: Vec<f64> = slice.iter().map(|r| r.total_flips as f64).collect();
            let nonconverged =
                slice.iter().filter(|r| !r.converged).count() as f64 / m as f64;
            PzSummary {
                pz,
                phi: summarize(&phi),
                balance: summarize(&balance),
                assortativity: summarize(&assort),
                flips: summarize(&flips),
                nonconverged_frac: nonconverged,
                phi_histogram: histogram(&phi, cfg.histogram_bins, -1.0, 1.0),
            }
        })
        .collect();

    Ok(SweepResult {
        config: cfg.clone(),
        rows,
        raw,
    })
}

/// Fixed column order consumed by the plotting scripts.
pub const SUMMARY_CSV_HEADER: &str = "pz,phi_mean,phi_p5,phi_p95,R_mean,R_p5,R_p95,r_mean,r_p5,r_p95,flips_mean,flips_p5,flips_p95,nonconverged_frac";

/// One row per grid point, columns as in [`SUMMARY_CSV_HEADER`].
pub fn write_summary_csv<W: Write>(result: &SweepResult, mut writer: W) -> Result<()> {
    writeln!(writer, "{SUMMARY_CSV_HEADER}")?;
    for row in &result.rows {
        writeln!(
            writer,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            row.pz,
            row.phi.mean,
            row.phi.p5,
            row.phi.p95,
            row.balance.mean,
            row.balance.p5,
            row.balance.p95,
            row.assortativity.mean,
            row.assortativity.p5,
            row.assortativity.p95,
            row.flips.mean,
            row.flips.p5,
            row.flips.p95,
            row.nonconverged_frac
        )?;
    }
    Ok(())
}

/// The full result (config embedded for provenance) as pretty JSON.
pub fn write_json<W: Write>(result: &SweepResult, mut writer: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut writer, result)?;
    writeln!(writer)?;
    Ok(())
}

/// Per-realization values, one row each.
pub fn write_raw_csv<W: Write>(result: &SweepResult, mut writer: W) -> Result<()> {
    writeln!(
        writer,
        "pz,realization,phi,R,r,n_minus,n_plus,n_zero,flips,converged,period_two,steps,component_vertices,component_edges"
    )?;
    for rec in &result.raw {
        writeln!(
            writer,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            rec.pz,
            rec.realization,
            rec.summary.phi,
            rec.summary.balance,
            rec.summary.assortativity,
            rec.summary.n_minus,
            rec.summary.n_plus,
            rec.summary.n_zero,
            rec.total_flips,
            rec.converged,
            rec.period_two,
            rec.steps,
            rec.component_vertices,
            rec.component_edges
        )?;
    }
    Ok(())
}

/// Histogram rows as `bin_lo,bin_hi,count`.
pub fn write_histogram_csv<W: Write>(hist: &Histogram, mut writer: W) -> Result<()> {
    writeln!(writer, "bin_lo,bin_hi,count")?;
    let edges = hist.edges();
    for (i, &count) in hist.counts.iter().enumerate() {
        writeln!(writer, "{},{},{}", edges[i], edges[i + 1], count)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{StateVector, ZealotMask};

    fn poisson_cfg() -> SweepConfig {
        SweepConfig {
            substrate: Substrate::Poisson { mean_degree: 4.0 },
            n: 300,
            ic: InitialCondition::Seed,
            zealotry: ZealotryKind::Uniform,
            pz_grid: vec![0.0, 0.5, 1.0],
            realizations: 5,
            master_seed: 42,
            max_steps: None,
            histogram_bins: 10,
            seed_pair: None,
        }
    }

    #[test]
    fn percentile_examples() {
        let values = [1.0, 2.0, 3.0, 4.0, 5.0];
        assert_eq!(percentile(&values, 0.5).unwrap(), 3.0);
        assert!((percentile(&values, 0.05).unwrap() - 1.2).abs() < 1e-12);
        assert_eq!(percentile(&[7.0], 0.31).unwrap(), 7.0);
        assert!(percentile(&[], 0.5).is_err());
        assert!(percentile(&values, 1.5).is_err());
    }

    #[test]
    fn percentile_ignores_input_order() {
        let shuffled = [4.0, 1.0, 5.0, 2.0, 3.0];
        assert!((percentile(&shuffled, 0.05).unwrap() - 1.2).abs() < 1e-12);
    }

    #[test]
    fn histogram_examples() {
        let h = histogram(&[0.0, 0.5, 1.0], 2, 0.0, 1.0);
        assert_eq!(h.counts, vec![1, 2]);

        let empty = histogram(&[], 3, 0.0, 1.0);
        assert_eq!(empty.counts, vec![0, 0, 0]);

        let at_lo = histogram(&[0.0, 0.0], 4, 0.0, 1.0);
        assert_eq!(at_lo.counts, vec![2, 0, 0, 0]);

        let clamped = histogram(&[-5.0, 5.0], 2, 0.0, 1.0);
        assert_eq!(clamped.counts, vec![1, 1]);
    }

    #[test]
    fn histogram_edges_cover_the_range() {
        let h = histogram(&[0.25], 4, 0.0, 1.0);
        assert_eq!(h.edges(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn stream_seed_varies_with_every_index() {
        let base = stream_seed(1, 0, 0);
        assert_ne!(base, stream_seed(2, 0, 0));
        assert_ne!(base, stream_seed(1, 1, 0));
        assert_ne!(base, stream_seed(1, 0, 1));
        assert_eq!(base, stream_seed(1, 0, 0));
    }

    #[test]
    fn validate_names_offending_fields() {
        let mut cfg = poisson_cfg();
        cfg.pz_grid = vec![0.0, 1.5];
        let err = cfg.validate().unwrap_err().to_string();
        assert!(err.contains("pz_grid"), "got: {err}");

        let mut cfg = poisson_cfg();
        cfg.pz_grid = vec![0.5, 0.5];
        assert!(cfg.validate().unwrap_err().to_string().contains("pz_grid"));

        let mut cfg = poisson_cfg();
        cfg.realizations = 0;
        assert!(cfg
            .validate()
            .unwrap_err()
            .to_string()
            .contains("realizations"));

        let mut cfg = poisson_cfg();
        cfg.substrate = Substrate::Poisson { mean_degree: -1.0 };
        assert!(cfg
            .validate()
            .unwrap_err()
            .to_string()
            .contains("mean_degree"));

        let mut cfg = poisson_cfg();
        cfg.substrate = Substrate::Powerlaw { alpha: 0.9, k_min: 2 };
        assert!(cfg.validate().unwrap_err().to_string().contains("alpha"));

        assert!(poisson_cfg().validate().is_ok());
    }

    #[test]
    fn run_realization_is_deterministic() {
        let cfg = poisson_cfg();
        let prepared = cfg.prepare_substrate().unwrap();
        let a = run_realization(&cfg, &prepared, 0.0, 99).unwrap();
        let b = run_realization(&cfg, &prepared, 0.0, 99).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn all_zealots_with_random_start_freeze_instantly() {
        let mut cfg = poisson_cfg();
        cfg.ic = InitialCondition::Random;
        let prepared = cfg.prepare_substrate().unwrap();
        for seed in [5u64, 6, 7] {
            let r = run_realization(&cfg, &prepared, 1.0, seed).unwrap();
            assert_eq!(r.outcome.total_flips, 0);
            assert!(r.outcome.converged);
        }
    }

    #[test]
    fn triangle_random_start_phi_is_in_the_enumerated_set() {
        // Exhaustively run all 8 +1/-1 assignments on the triangle and
        // collect the attainable phi values; a sampled realization on the
        // same substrate must land in that set.
        let triangle = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        let mut attainable = Vec::new();
        for bits in 0..8u8 {
            let values: Vec<i8> = (0..3)
                .map(|i| if bits & (1 << i) != 0 { 1 } else { -1 })
                .collect();
            let s0 = StateVector::from_values(values).unwrap();
            let outcome = run_to_equilibrium(&triangle, &s0, &ZealotMask::none(3), 30);
            assert!(outcome.converged);
            let phi = correlated_polarization(&triangle, &outcome.final_states)
                .unwrap()
                .phi;
            attainable.push(phi);
        }

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("triangle.txt");
        let mut file = File::create(&path).unwrap();
        file.write_all(b"0 1\n1 2\n0 2\n").unwrap();

        let cfg = SweepConfig {
            substrate: Substrate::EdgeList { path },
            n: 0,
            ic: InitialCondition::Random,
            zealotry: ZealotryKind::Uniform,
            pz_grid: vec![0.0],
            realizations: 1,
            master_seed: 1,
            max_steps: None,
            histogram_bins: 4,
            seed_pair: None,
        };
        let prepared = cfg.prepare_substrate().unwrap();
        for seed in 0..10 {
            let r = run_realization(&cfg, &prepared, 0.0, seed).unwrap();
            assert!(r.outcome.converged);
            assert!(
                attainable
                    .iter()
                    .any(|&phi| (phi - r.summary.phi).abs() < 1e-12),
                "phi {} not attainable on the triangle",
                r.summary.phi
            );
        }
    }

    #[test]
    fn sweep_single_realization_collapses_stats() {
        let mut cfg = poisson_cfg();
        cfg.realizations = 1;
        let result = sweep(&cfg, 1).unwrap();
        for row in &result.rows {
            assert_eq!(row.phi.mean, row.phi.p5);
            assert_eq!(row.phi.mean, row.phi.p95);
        }
    }

    #[test]
    fn sweep_is_deterministic_per_master_seed() {
        let cfg = poisson_cfg();
        let a = sweep(&cfg, 1).unwrap();
        let b = sweep(&cfg, 1).unwrap();
        assert_eq!(a, b);

        let mut alt = cfg.clone();
        alt.master_seed = 43;
        let c = sweep(&alt, 1).unwrap();
        assert_ne!(a.rows, c.rows, "different master seeds should differ");
    }

    #[test]
    fn sweep_is_independent_of_worker_count() {
        let cfg = poisson_cfg();
        let serial = sweep(&cfg, 1).unwrap();
        let parallel = sweep(&cfg, 4).unwrap();
        assert_eq!(serial, parallel);
    }

    #[test]
    fn zealotry_kinds_agree_when_no_zealots_exist() {
        // The zealot mask is drawn after graph and states, so at p_z = 0 the
        // two assignment schemes run literally identical realizations.
        let mut uniform_cfg = poisson_cfg();
        uniform_cfg.pz_grid = vec![0.0];
        let mut degree_cfg = uniform_cfg.clone();
        degree_cfg.zealotry = ZealotryKind::Degree;

        let a = sweep(&uniform_cfg, 1).unwrap();
        let b = sweep(&degree_cfg, 1).unwrap();
        assert_eq!(a.rows, b.rows);
        assert_eq!(a.raw, b.raw);
    }

    #[test]
    fn disjoint_seed_streams_are_statistically_indistinguishable() {
        // Two-sample Kolmogorov-Smirnov on phi samples from two master
        // seeds, at significance 0.001: D < c(a) * sqrt((n+m)/(n*m)) with
        // c(0.001) = 1.9495.
        let mut cfg = poisson_cfg();
        cfg.n = 500;
        cfg.ic = InitialCondition::Random;
        cfg.pz_grid = vec![0.3];
        cfg.realizations = 250;

        let sample = |seed: u64| -> Vec<f64> {
            let mut c = cfg.clone();
            c.master_seed = seed;
            let mut phis: Vec<f64> = sweep(&c, 0)
                .unwrap()
                .raw
                .iter()
                .map(|r| r.summary.phi)
                .collect();
            phis.sort_by(|a, b| a.partial_cmp(b).unwrap());
            phis
        };
        let a = sample(1234);
        let b = sample(987_654_321);

        let mut d_max: f64 = 0.0;
        let (mut i, mut j) = (0usize, 0usize);
        while i < a.len() && j < b.len() {
            if a[i] <= b[j] {
                i += 1;
            } else {
                j += 1;
            }
            let cdf_a = i as f64 / a.len() as f64;
            let cdf_b = j as f64 / b.len() as f64;
            d_max = d_max.max((cdf_a - cdf_b).abs());
        }
        let critical =
            1.9495 * ((a.len() + b.len()) as f64 / (a.len() * b.len()) as f64).sqrt();
        assert!(
            d_max < critical,
            "KS statistic {d_max} exceeds the 0.001 critical value {critical}"
        );
    }

    #[test]
    fn summary_csv_has_one_row_per_grid_point() {
        let cfg = poisson_cfg();
        let result = sweep(&cfg, 1).unwrap();
        let mut buf = Vec::new();
        write_summary_csv(&result, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], SUMMARY_CSV_HEADER);
        assert_eq!(lines.len(), 1 + cfg.pz_grid.len());
    }

    #[test]
    fn raw_csv_has_one_row_per_realization() {
        let cfg = poisson_cfg();
        let result = sweep(&cfg, 1).unwrap();
        let mut buf = Vec::new();
        write_raw_csv(&result, &mut buf).unwrap();
        let lines = String::from_utf8(buf).unwrap().lines().count();
        assert_eq!(lines, 1 + cfg.pz_grid.len() * cfg.realizations);
    }

    #[test]
    fn json_round_trips_the_config() {
        let cfg = poisson_cfg();
        let result = sweep(&cfg, 1).unwrap();
        let mut buf = Vec::new();
        write_json(&result, &mut buf).unwrap();
        let value: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        let parsed: SweepConfig =
            serde_json::from_value(value.get("config").unwrap().clone()).unwrap();
        assert_eq!(parsed, cfg);
        assert_eq!(
            value.get("rows").unwrap().as_array().unwrap().len(),
            cfg.pz_grid.len()
        );
    }

    #[test]
    fn histogram_csv_lists_every_bin() {
        let h = histogram(&[0.1, 0.2, 0.9], 4, 0.0, 1.0);
        let mut buf = Vec::new();
        write_histogram_csv(&h, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 5);
        assert!(text.starts_with("bin_lo,bin_hi,count\n"));
    }
}
