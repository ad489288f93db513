//! Scenario definitions: parameter schemas, row evaluation, and dataset
//! assembly for every sweep the CLI can run.
//!
//! Each scenario turns its `params` block into a column layout and a
//! per-row evaluation function. Rows are computed in parallel but always
//! emitted in sweep order, and Monte Carlo rows draw from a per-row RNG
//! stream, so a given configuration and seed produce byte-identical output.

use std::fmt::Write as _;

use ensemble_link::channel::{ChannelParams, SymmetricParams};
use ensemble_link::herald::{self, Detector};
use ensemble_link::mitnu::{
    mitnu_metrics, phase_averaged_mitnu, throughput_comparison, DlczLinkConfig, LinkGeometry,
    MitNuLinkConfig, MitNuParams,
};
use ensemble_link::oracle::{oracle_distribution, oracle_swap, oracle_teleport};
use ensemble_link::protocols::{repeater_metrics, teleport_metrics, MeasurementModule};
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Deserialize;

use crate::config::{CliError, Config, ScenarioKind, SchemeName, SCHEMA_VERSION};
use crate::dataset::{Cell, Dataset, Range, ResidualSample, ResidualSummary};

/// Numerical slack added to every truncation-derived residual bound.
const RESIDUAL_SLACK: f64 = 1e-10;

/// Default residual bound where both routes are exact up to rounding.
const EXACT_BOUND: f64 = 1e-10;

/// Default Monte Carlo pull bound, in standard errors.
const DEFAULT_PULL_BOUND: f64 = 3.0;

/// Result of evaluating one scenario: the dataset plus the verification
/// record behind the exit status.
#[derive(Debug)]
pub struct Evaluation {
    pub dataset: Dataset,
    pub residuals: ResidualSummary,
    pub checks: Vec<Check>,
}

impl Evaluation {
    /// Residual-bound violations plus invariant-check failures.
    pub fn breaches(&self) -> usize {
        self.residuals.breaches() + self.checks.iter().map(|c| c.failures).sum::<usize>()
    }
}

/// Outcome of one built-in invariant check, counted over the whole sweep.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub rows: usize,
    pub failures: usize,
}

/// Evaluates the scenario a configuration describes.
pub fn evaluate(config: &Config) -> Result<Evaluation, CliError> {
    match config.scenario {
        ScenarioKind::Distribution => distribution(config),
        ScenarioKind::AsymmetricMap => asymmetric_map(config),
        ScenarioKind::PhaseNoise => phase_noise(config),
        ScenarioKind::Repeater | ScenarioKind::Teleport => protocol(config),
        ScenarioKind::MitnuCompare => mitnu_compare(config),
    }
}

/// Output of one sweep row: its cells plus any residual comparisons.
struct RowOutput {
    cells: Vec<Cell>,
    samples: Vec<ResidualSample>,
}

/// Deserializes the scenario's `params` block.
fn parse_params<T: serde::de::DeserializeOwned>(config: &Config) -> Result<T, CliError> {
    serde_json::from_value(config.params.clone())
        .map_err(|e| CliError::Config(format!("params: {e}")))
}

/// Leading `key=value` metadata shared by every scenario.
fn metadata_line(config: &Config, extra: &str) -> String {
    let mut line = format!(
        "scenario={} version={SCHEMA_VERSION} seed={}",
        config.scenario.label(),
        config.seed
    );
    match config.oracle() {
        Some(o) => {
            let _ = write!(line, " oracle=on n_max={}", o.n_max);
            match o.tolerance {
                Some(t) => {
                    let _ = write!(line, " tolerance={t}");
                }
                None => line.push_str(" tolerance=default"),
            }
        }
        None => line.push_str(" oracle=off"),
    }
    if !extra.is_empty() {
        line.push(' ');
        line.push_str(extra);
    }
    line
}

/// Evaluates all rows in parallel, keeps them in sweep order, and folds
/// their residual samples in that same order.
fn assemble<F>(
    metadata: String,
    columns: Vec<String>,
    rows: usize,
    row_fn: F,
) -> Result<(Dataset, ResidualSummary), CliError>
where
    F: Fn(usize) -> Result<RowOutput, CliError> + Send + Sync,
{
    let outputs: Vec<RowOutput> = (0..rows)
        .into_par_iter()
        .map(row_fn)
        .collect::<Result<_, _>>()?;
    let mut summary = ResidualSummary::default();
    let mut data = Vec::with_capacity(outputs.len());
    for output in outputs {
        debug_assert_eq!(output.cells.len(), columns.len());
        for sample in &output.samples {
            summary.record(sample);
        }
        data.push(output.cells);
    }
    Ok((Dataset { metadata, columns, rows: data }, summary))
}

/// Residual between two routes that may each be undefined: matching absence
/// is a zero residual, one-sided absence an unconditional breach.
fn option_residual(a: Option<f64>, b: Option<f64>) -> f64 {
    match (a, b) {
        (Some(a), Some(b)) => (a - b).abs(),
        (None, None) => 0.0,
        _ => f64::INFINITY,
    }
}

/// One closed-form-versus-oracle column group.
struct Comparison {
    oracle_cell: Cell,
    residual_cell: Cell,
    sample: ResidualSample,
}

fn compare(metric: String, closed: Option<f64>, oracle: Option<f64>, bound: f64) -> Comparison {
    let residual = option_residual(closed, oracle);
    Comparison {
        oracle_cell: Cell::optional(oracle),
        residual_cell: Cell::value(residual),
        sample: ResidualSample { metric, residual, bound },
    }
}

/// Appends the oracle columns, then the residual columns, then keeps the
/// samples for the summary.
fn push_comparisons(
    cells: &mut Vec<Cell>,
    samples: &mut Vec<ResidualSample>,
    comparisons: Vec<Comparison>,
) {
    for c in &comparisons {
        cells.push(c.oracle_cell);
    }
    for c in &comparisons {
        cells.push(c.residual_cell);
    }
    samples.extend(comparisons.into_iter().map(|c| c.sample));
}

fn validate_schemes(schemes: &[SchemeName]) -> Result<(), CliError> {
    match schemes {
        [] => Err(CliError::Config("schemes must name at least one scheme".into())),
        [_] => Ok(()),
        [a, b] if a != b => Ok(()),
        _ => Err(CliError::Config("schemes repeats a scheme".into())),
    }
}

fn both_schemes() -> Vec<SchemeName> {
    vec![SchemeName::Pnrd, SchemeName::Nrpd]
}

fn pnrd() -> SchemeName {
    SchemeName::Pnrd
}

fn unit() -> f64 {
    1.0
}

/// Standard normal deviate via the Box-Muller transform.
fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    let u: f64 = 1.0 - rng.gen::<f64>();
    let v: f64 = rng.gen();
    (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos()
}

/// Sample mean and standard error of `draw` over `n` samples.
fn monte_carlo<F>(n: usize, rng: &mut ChaCha8Rng, mut draw: F) -> Result<(f64, f64), CliError>
where
    F: FnMut(&mut ChaCha8Rng) -> Result<f64, ensemble_link::Error>,
{
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..n {
        let f = draw(rng)?;
        sum += f;
        sum_sq += f * f;
    }
    let mean = sum / n as f64;
    let var = (sum_sq / n as f64 - mean * mean).max(0.0);
    Ok((mean, (var / n as f64).sqrt()))
}

/// Monte Carlo pull `|mean - closed| / se`, with the standard error floored
/// at the worst-case rounding of an `n`-term mean so that zero-variance rows
/// compare exactly instead of dividing by zero.
fn pull(mean: f64, closed: f64, se: f64, n: usize) -> f64 {
    let rounding_floor = f64::EPSILON * n as f64 * closed.abs().max(1.0);
    (mean - closed).abs() / se.max(rounding_floor)
}

/// Which variable a `distribution` scenario sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
enum SweepVariable {
    #[serde(rename = "eta_s")]
    EtaS,
    #[serde(rename = "p_c")]
    ExcitationProbability,
}

/// Parameters of the `distribution` scenario.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DistributionParams {
    /// Swept variable; the one not named here takes `fixed`.
    sweep: SweepVariable,
    range: Range,
    /// Value of the variable not being swept.
    fixed: f64,
    #[serde(default = "both_schemes")]
    schemes: Vec<SchemeName>,
}

/// Symmetric-link heralding metrics over `eta_s` or `p_c`, with an optional
/// truncated number-basis cross-check.
fn distribution(config: &Config) -> Result<Evaluation, CliError> {
    let params: DistributionParams = parse_params(config)?;
    params.range.validate("range").map_err(CliError::Config)?;
    validate_schemes(&params.schemes)?;
    let oracle = config.oracle();

    let mut columns: Vec<String> = vec!["p_c".into(), "eta_s".into()];
    for scheme in &params.schemes {
        let label = scheme.label();
        for name in ["p_herald", "p_success", "fidelity"] {
            columns.push(format!("{label}_{name}"));
        }
        if oracle.is_some() {
            for name in [
                "oracle_p_herald",
                "oracle_p_success",
                "oracle_fidelity",
                "residual_p_herald",
                "residual_p_success",
                "residual_fidelity",
            ] {
                columns.push(format!("{label}_{name}"));
            }
        }
    }
    if oracle.is_some() {
        columns.push("within_tolerance".into());
    }

    let row = |index: usize| -> Result<RowOutput, CliError> {
        let swept = params.range.value(index);
        let (p_c, eta_s) = match params.sweep {
            SweepVariable::ExcitationProbability => (swept, params.fixed),
            SweepVariable::EtaS => (params.fixed, swept),
        };
        let sp = SymmetricParams { p_c, eta_s };
        let mut cells = vec![Cell::value(p_c), Cell::value(eta_s)];
        let mut samples = Vec::new();
        for scheme_name in &params.schemes {
            let scheme = scheme_name.scheme();
            let p_herald = 2.0 * herald::symmetric_heralding_probability(&sp, scheme)?;
            let p_success = herald::symmetric_success_probability(&sp)?;
            let fidelity = if p_herald > 0.0 {
                Some(herald::symmetric_fidelity(&sp, scheme)?)
            } else {
                None
            };
            cells.push(Cell::value(p_herald));
            cells.push(Cell::value(p_success));
            cells.push(Cell::optional(fidelity));

            if let Some(o) = &oracle {
                let enumerated = oracle_distribution(&sp.expand()?, scheme, o.n_max)?;
                let p1 = enumerated.heralding_probability(Detector::D1);
                let prob_bound = o.tolerance.unwrap_or(enumerated.tail() + RESIDUAL_SLACK);
                let fid_bound = o.tolerance.unwrap_or(if p1 > 0.0 {
                    enumerated.tail() / p1 + RESIDUAL_SLACK
                } else {
                    RESIDUAL_SLACK
                });
                let label = scheme_name.label();
                push_comparisons(
                    &mut cells,
                    &mut samples,
                    vec![
                        compare(
                            format!("{label}_p_herald"),
                            Some(p_herald),
                            Some(enumerated.p_herald()),
                            prob_bound,
                        ),
                        compare(
                            format!("{label}_p_success"),
                            Some(p_success),
                            Some(enumerated.p_success()),
                            prob_bound,
                        ),
                        compare(
                            format!("{label}_fidelity"),
                            fidelity,
                            enumerated.fidelity_singlet_triplet(Detector::D1).ok(),
                            fid_bound,
                        ),
                    ],
                );
            }
        }
        if oracle.is_some() {
            cells.push(Cell::flag(samples.iter().all(ResidualSample::within)));
        }
        Ok(RowOutput { cells, samples })
    };

    let (dataset, residuals) =
        assemble(metadata_line(config, ""), columns, params.range.points(), row)?;
    Ok(Evaluation { dataset, residuals, checks: Vec::new() })
}

/// Parameters of the `asymmetric-map` scenario.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AsymmetricMapParams {
    eta_l: Range,
    p_c: f64,
    eta_r: f64,
    #[serde(default = "unit")]
    eta_1: f64,
    #[serde(default = "unit")]
    eta_2: f64,
    #[serde(default)]
    theta_l: f64,
    #[serde(default)]
    theta_r: f64,
    #[serde(default = "pnrd")]
    scheme: SchemeName,
}

/// Asymmetric-link metrics over the left path transmissivity, charting how
/// Bell-state and optimal-target fidelities separate as the link skews.
fn asymmetric_map(config: &Config) -> Result<Evaluation, CliError> {
    let params: AsymmetricMapParams = parse_params(config)?;
    params.eta_l.validate("eta_l").map_err(CliError::Config)?;
    let oracle = config.oracle();
    let scheme = params.scheme.scheme();

    let mut columns: Vec<String> = [
        "eta_l",
        "p1",
        "p2",
        "p_herald",
        "p_success",
        "f1",
        "f2",
        "f_opt1",
        "f_opt2",
        "opt_weight_l",
    ]
    .map(String::from)
    .to_vec();
    if oracle.is_some() {
        for name in [
            "oracle_p1",
            "oracle_f1",
            "oracle_f_opt1",
            "residual_p1",
            "residual_f1",
            "residual_f_opt1",
            "within_tolerance",
        ] {
            columns.push(name.into());
        }
    }

    let row = |index: usize| -> Result<RowOutput, CliError> {
        let eta_l = params.eta_l.value(index);
        let cp = ChannelParams {
            p_c_l: params.p_c,
            p_c_r: params.p_c,
            theta_l: params.theta_l,
            theta_r: params.theta_r,
            eta_l,
            eta_r: params.eta_r,
            eta_1: params.eta_1,
            eta_2: params.eta_2,
        };
        let report = herald::herald_report(&cp, scheme)?;
        let mut cells = vec![
            Cell::value(eta_l),
            Cell::value(report.p1),
            Cell::value(report.p2),
            Cell::value(report.p_herald),
            Cell::value(report.p_success),
            Cell::optional(report.f1),
            Cell::optional(report.f2),
            Cell::optional(report.f_opt1),
            Cell::optional(report.f_opt2),
            Cell::optional(report.opt_coeffs.map(|(d_l, _)| d_l.norm_sqr())),
        ];
        let mut samples = Vec::new();
        if let Some(o) = &oracle {
            let enumerated = oracle_distribution(&cp, scheme, o.n_max)?;
            let p1 = enumerated.heralding_probability(Detector::D1);
            let prob_bound = o.tolerance.unwrap_or(enumerated.tail() + RESIDUAL_SLACK);
            let fid_bound = o.tolerance.unwrap_or(if p1 > 0.0 {
                enumerated.tail() / p1 + RESIDUAL_SLACK
            } else {
                RESIDUAL_SLACK
            });
            push_comparisons(
                &mut cells,
                &mut samples,
                vec![
                    compare("p1".into(), Some(report.p1), Some(p1), prob_bound),
                    compare(
                        "f1".into(),
                        report.f1,
                        enumerated.fidelity_singlet_triplet(Detector::D1).ok(),
                        fid_bound,
                    ),
                    compare(
                        "f_opt1".into(),
                        report.f_opt1,
                        enumerated.optimal_fidelity(Detector::D1).ok(),
                        fid_bound,
                    ),
                ],
            );
            cells.push(Cell::flag(samples.iter().all(ResidualSample::within)));
        }
        Ok(RowOutput { cells, samples })
    };

    let (dataset, residuals) =
        assemble(metadata_line(config, ""), columns, params.eta_l.points(), row)?;
    Ok(Evaluation { dataset, residuals, checks: Vec::new() })
}

/// MIT/NU side of a `phase-noise` scenario.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
struct MitnuNoiseParams {
    gain_sq: f64,
    eta_f: f64,
    coupling_ratio: f64,
    linewidth_ratio: f64,
}

/// Parameters of the `phase-noise` scenario.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PhaseNoiseParams {
    sigma_sq: Range,
    p_c: f64,
    eta_s: f64,
    #[serde(default = "pnrd")]
    scheme: SchemeName,
    #[serde(default = "default_samples")]
    samples: usize,
    /// When present, the same jitter sweep also runs on the trapped-atom
    /// architecture.
    #[serde(default)]
    mitnu: Option<MitnuNoiseParams>,
}

fn default_samples() -> usize {
    100_000
}

/// Dephasing-averaged fidelity versus per-pump phase-jitter variance, with
/// the closed-form average checked against a per-row Monte Carlo estimate.
fn phase_noise(config: &Config) -> Result<Evaluation, CliError> {
    let params: PhaseNoiseParams = parse_params(config)?;
    params.sigma_sq.validate("sigma_sq").map_err(CliError::Config)?;
    if params.samples == 0 {
        return Err(CliError::Config("samples must be at least 1".into()));
    }
    let scheme = params.scheme.scheme();
    let nominal = SymmetricParams { p_c: params.p_c, eta_s: params.eta_s }.expand()?;
    let pull_bound = config
        .oracle()
        .and_then(|o| o.tolerance)
        .unwrap_or(DEFAULT_PULL_BOUND);

    let mut columns: Vec<String> =
        ["sigma_sq", "fidelity_closed", "fidelity_mc", "mc_std_error", "pull"]
            .map(String::from)
            .to_vec();
    if params.mitnu.is_some() {
        for name in [
            "mitnu_fidelity_closed",
            "mitnu_fidelity_mc",
            "mitnu_mc_std_error",
            "mitnu_pull",
        ] {
            columns.push(name.into());
        }
    }
    columns.push("within_tolerance".into());

    let row = |index: usize| -> Result<RowOutput, CliError> {
        let sigma_sq = params.sigma_sq.value(index);
        let sigma = sigma_sq.sqrt();
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(index as u64);

        let closed = herald::phase_averaged_fidelity(&nominal, scheme, sigma_sq)?;
        let (mean, se) = monte_carlo(params.samples, &mut rng, |rng| {
            let jittered = ChannelParams {
                theta_l: sigma * standard_normal(rng),
                theta_r: sigma * standard_normal(rng),
                ..nominal
            };
            herald::fidelity_singlet_triplet(&jittered, scheme, Detector::D1)
        })?;
        let link_pull = pull(mean, closed, se, params.samples);

        let mut cells = vec![
            Cell::value(sigma_sq),
            Cell::value(closed),
            Cell::value(mean),
            Cell::value(se),
            Cell::value(link_pull),
        ];
        let mut samples = vec![ResidualSample {
            metric: "pull".into(),
            residual: link_pull,
            bound: pull_bound,
        }];

        if let Some(m) = &params.mitnu {
            let base = MitNuParams {
                gain_sq: m.gain_sq,
                eta_f: m.eta_f,
                coupling_ratio: m.coupling_ratio,
                linewidth_ratio: m.linewidth_ratio,
                theta_1: 0.0,
                theta_2: 0.0,
            };
            let closed_m = phase_averaged_mitnu(&base, sigma_sq)?;
            let (mean_m, se_m) = monte_carlo(params.samples, &mut rng, |rng| {
                let jittered = MitNuParams {
                    theta_1: sigma * standard_normal(rng),
                    theta_2: sigma * standard_normal(rng),
                    ..base
                };
                mitnu_metrics(&jittered)?
                    .fidelity
                    .ok_or(ensemble_link::Error::HeraldImpossible)
            })?;
            let mitnu_pull = pull(mean_m, closed_m, se_m, params.samples);
            cells.push(Cell::value(closed_m));
            cells.push(Cell::value(mean_m));
            cells.push(Cell::value(se_m));
            cells.push(Cell::value(mitnu_pull));
            samples.push(ResidualSample {
                metric: "mitnu_pull".into(),
                residual: mitnu_pull,
                bound: pull_bound,
            });
        }

        cells.push(Cell::flag(samples.iter().all(ResidualSample::within)));
        Ok(RowOutput { cells, samples })
    };

    let extra = format!("samples={}", params.samples);
    let (dataset, residuals) = assemble(
        metadata_line(config, &extra),
        columns,
        params.sigma_sq.points(),
        row,
    )?;
    Ok(Evaluation { dataset, residuals, checks: Vec::new() })
}

/// Parameters of the `repeater` and `teleport` scenarios.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProtocolParams {
    eta_m: Range,
    #[serde(default = "both_schemes")]
    schemes: Vec<SchemeName>,
}

/// Connection or teleportation metrics over the measurement efficiency,
/// optionally checked against the explicit lossy-circuit simulation.
fn protocol(config: &Config) -> Result<Evaluation, CliError> {
    let params: ProtocolParams = parse_params(config)?;
    params.eta_m.validate("eta_m").map_err(CliError::Config)?;
    validate_schemes(&params.schemes)?;
    let oracle = config.oracle();
    let teleport = config.scenario == ScenarioKind::Teleport;

    let mut columns: Vec<String> = vec!["eta_m".into()];
    for scheme in &params.schemes {
        let label = scheme.label();
        for name in ["p_herald", "p_success", "fidelity"] {
            columns.push(format!("{label}_{name}"));
        }
        if oracle.is_some() {
            for name in [
                "oracle_p_herald",
                "oracle_p_success",
                "oracle_fidelity",
                "residual_p_herald",
                "residual_p_success",
                "residual_fidelity",
            ] {
                columns.push(format!("{label}_{name}"));
            }
        }
    }
    if oracle.is_some() {
        columns.push("within_tolerance".into());
    }

    let row = |index: usize| -> Result<RowOutput, CliError> {
        let eta_m = params.eta_m.value(index);
        let mut cells = vec![Cell::value(eta_m)];
        let mut samples = Vec::new();
        for scheme_name in &params.schemes {
            // Only the product of the chain efficiencies matters, so the
            // sweep folds it all into the pre-detector stage.
            let module = MeasurementModule {
                eta_c: eta_m,
                eta_d: 1.0,
                scheme: scheme_name.scheme(),
            };
            let closed = if teleport {
                teleport_metrics(&module)?
            } else {
                repeater_metrics(&module)?
            };
            cells.push(Cell::value(closed.p_herald));
            cells.push(Cell::value(closed.p_success));
            cells.push(Cell::optional(closed.fidelity));

            if let Some(o) = &oracle {
                let circuit = if teleport {
                    oracle_teleport(&module, C64::new(1.0, 0.0), C64::new(0.0, 0.0))?
                } else {
                    oracle_swap(&module)?
                };
                let bound = o.tolerance.unwrap_or(EXACT_BOUND);
                let label = scheme_name.label();
                push_comparisons(
                    &mut cells,
                    &mut samples,
                    vec![
                        compare(
                            format!("{label}_p_herald"),
                            Some(closed.p_herald),
                            Some(circuit.p_herald),
                            bound,
                        ),
                        compare(
                            format!("{label}_p_success"),
                            Some(closed.p_success),
                            Some(circuit.p_success),
                            bound,
                        ),
                        compare(
                            format!("{label}_fidelity"),
                            closed.fidelity,
                            circuit.fidelity,
                            bound,
                        ),
                    ],
                );
            }
        }
        if oracle.is_some() {
            cells.push(Cell::flag(samples.iter().all(ResidualSample::within)));
        }
        Ok(RowOutput { cells, samples })
    };

    let (dataset, residuals) =
        assemble(metadata_line(config, ""), columns, params.eta_m.points(), row)?;
    Ok(Evaluation { dataset, residuals, checks: Vec::new() })
}

/// Ensemble-link side of a `mitnu-compare` scenario.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
struct DlczSideParams {
    p_c: f64,
    detector_efficiency: f64,
    #[serde(default = "pnrd")]
    scheme: SchemeName,
}

/// Trapped-atom side of a `mitnu-compare` scenario.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
struct MitnuSideParams {
    gain_sq: f64,
    coupling_ratio: f64,
    linewidth_ratio: f64,
    #[serde(default = "default_fixed_loss")]
    fixed_loss_db_per_path: f64,
}

/// Fiber and clock shared by both sides of a `mitnu-compare` scenario.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeometryParams {
    #[serde(default = "default_fiber_loss")]
    loss_db_per_km: f64,
    #[serde(default = "default_trial_rate")]
    trial_rate_hz: f64,
}

impl Default for GeometryParams {
    fn default() -> Self {
        GeometryParams {
            loss_db_per_km: default_fiber_loss(),
            trial_rate_hz: default_trial_rate(),
        }
    }
}

/// Parameters of the `mitnu-compare` scenario.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MitnuCompareParams {
    #[serde(default = "default_distance_range")]
    total_distance_km: Range,
    dlcz: DlczSideParams,
    mitnu: MitnuSideParams,
    #[serde(default)]
    geometry: GeometryParams,
}

fn default_distance_range() -> Range {
    Range { start: 0.0, stop: 100.0, steps: 101 }
}

fn default_fixed_loss() -> f64 {
    5.0
}

fn default_fiber_loss() -> f64 {
    0.2
}

fn default_trial_rate() -> f64 {
    5.0e5
}

/// Head-to-head throughput and fidelity of both architectures versus
/// memory-to-memory distance, verified by built-in invariant checks rather
/// than an oracle.
fn mitnu_compare(config: &Config) -> Result<Evaluation, CliError> {
    let params: MitnuCompareParams = parse_params(config)?;
    params
        .total_distance_km
        .validate("total_distance_km")
        .map_err(CliError::Config)?;
    let geometry = LinkGeometry {
        half_distance_km: 0.0,
        loss_db_per_km: params.geometry.loss_db_per_km,
        trial_rate_hz: params.geometry.trial_rate_hz,
    };
    let dlcz = DlczLinkConfig {
        p_c: params.dlcz.p_c,
        detector_efficiency: params.dlcz.detector_efficiency,
        scheme: params.dlcz.scheme.scheme(),
        geometry,
    };
    let mitnu = MitNuLinkConfig {
        gain_sq: params.mitnu.gain_sq,
        coupling_ratio: params.mitnu.coupling_ratio,
        linewidth_ratio: params.mitnu.linewidth_ratio,
        fixed_loss_db_per_path: params.mitnu.fixed_loss_db_per_path,
        geometry,
    };
    let rows = throughput_comparison(&dlcz, &mitnu, &params.total_distance_km.values())?;

    let zero_gain = params.mitnu.gain_sq == 0.0;
    let in_unit = |f: f64| (-1e-12..=1.0 + 1e-12).contains(&f);
    let mut throughput_failures = 0;
    let mut fidelity_failures = 0;
    let mut dark_failures = 0;
    let mut data = Vec::with_capacity(rows.len());
    for row in &rows {
        let rates_fine = row.dlcz_throughput_hz.is_finite()
            && row.dlcz_throughput_hz >= 0.0
            && row.mitnu_throughput_hz.is_finite()
            && row.mitnu_throughput_hz >= 0.0;
        if !rates_fine {
            throughput_failures += 1;
        }
        if !in_unit(row.dlcz_fidelity) || row.mitnu_fidelity.is_some_and(|f| !in_unit(f)) {
            fidelity_failures += 1;
        }
        if zero_gain && !(row.mitnu_throughput_hz == 0.0 && row.mitnu_fidelity.is_none()) {
            dark_failures += 1;
        }
        data.push(vec![
            Cell::value(row.total_distance_km),
            Cell::value(row.dlcz_throughput_hz),
            Cell::value(row.dlcz_fidelity),
            Cell::value(row.mitnu_throughput_hz),
            Cell::optional(row.mitnu_fidelity),
        ]);
    }

    let mut checks = vec![
        Check {
            name: "throughput finite and nonnegative",
            rows: rows.len(),
            failures: throughput_failures,
        },
        Check {
            name: "fidelity within the unit interval",
            rows: rows.len(),
            failures: fidelity_failures,
        },
    ];
    if zero_gain {
        checks.push(Check {
            name: "zero gain yields exactly zero throughput",
            rows: rows.len(),
            failures: dark_failures,
        });
    }

    let columns = [
        "total_distance_km",
        "dlcz_throughput_hz",
        "dlcz_fidelity",
        "mitnu_throughput_hz",
        "mitnu_fidelity",
    ]
    .map(String::from)
    .to_vec();
    Ok(Evaluation {
        dataset: Dataset {
            metadata: metadata_line(config, ""),
            columns,
            rows: data,
        },
        residuals: ResidualSummary::default(),
        checks,
    })
}
