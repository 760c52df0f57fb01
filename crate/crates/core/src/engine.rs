//! Amplified-state preparation and the non-variational parameter search.
//!
//! A run starts from the equal superposition and alternates the diagonal
//! phase-separation unitary with the mixing walk for `p` iterations, with
//! linearly increasing phase strengths and decreasing walk times. Parameter
//! search is a local gradient method over `(gamma, t, beta)`, optionally
//! extended with tunable penalty coefficients whose phase kernel is rebuilt
//! per candidate.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mixers::Mixer;
use crate::problems::{self, PenaltyVector, ProblemInstance, Sense};
use crate::space::SpaceSpec;
use crate::state::Statevector;

/// User parameters of an amplified-state preparation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunParams {
    pub gamma: f64,
    pub t: f64,
    pub beta: f64,
    pub p: usize,
    pub sense: Sense,
    /// Objective standard deviation normalising the phase strength.
    pub sigma: f64,
    /// Penalty coefficients behind the phase kernel, echoed into traces.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lambda_t: Option<PenaltyVector>,
}

impl RunParams {
    pub fn new(gamma: f64, t: f64, beta: f64, p: usize, sense: Sense, sigma: f64) -> Result<Self> {
        let params = RunParams { gamma, t, beta, p, sense, sigma, lambda_t: None };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma > 0.0) || !(self.t > 0.0) || !(self.sigma > 0.0) {
            return Err(Error::Config("gamma, t and sigma must be positive".into()));
        }
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return Err(Error::Config("beta must lie in (0, 1)".into()));
        }
        if self.p == 0 {
            return Err(Error::Config("iteration count must be >= 1".into()));
        }
        Ok(())
    }

    /// Phase strength and walk time of iteration `i`: strengths rise
    /// linearly from `beta * gamma` to `gamma` while walk times fall from
    /// `t` to `beta * t`. A single iteration uses `(gamma, t)` unscaled.
    pub fn schedule(&self, i: usize) -> (f64, f64) {
        debug_assert!(i < self.p);
        if self.p == 1 {
            return (self.gamma, self.t);
        }
        let frac = i as f64 / (self.p - 1) as f64;
        let gamma_i = (self.beta + (1.0 - self.beta) * frac) * self.gamma;
        let t_i = (1.0 - (1.0 - self.beta) * frac) * self.t;
        (gamma_i, t_i)
    }
}

/// Uniform superposition over a space.
pub fn equal_superposition(space: &SpaceSpec) -> Statevector {
    Statevector::equal_superposition(space.cardinality())
}

/// Applies the diagonal phase unitary: each amplitude is rotated by
/// `-sign * gamma_eff * f(x)`, with the sign positive for maximisation.
pub fn phase_separate(state: &mut Statevector, values: &[f64], gamma_eff: f64, sense: Sense) {
    assert_eq!(state.len(), values.len(), "value table length mismatch");
    let pre = -sense.phase_sign() * gamma_eff;
    state
        .amplitudes_mut()
        .par_iter_mut()
        .zip(values.par_iter())
        .for_each(|(a, &f)| {
            *a *= Complex64::from_polar(1.0, pre * f);
        });
}

/// Per-iteration measurement summaries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IterationMetrics {
    pub iter: usize,
    pub optimal_probability: f64,
    pub expectation: f64,
    pub cvar: f64,
}

/// Outcome of an amplified-state preparation.
#[derive(Debug, Clone)]
pub struct RunTrace {
    pub params: RunParams,
    pub per_iteration: Vec<IterationMetrics>,
    /// Populated when requested in the options.
    pub final_state: Option<Statevector>,
}

/// One row of the final-state summary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TopSolution {
    pub index: usize,
    pub objective: f64,
    pub amplification: f64,
}

impl RunTrace {
    /// Serialises to the trace interchange schema:
    /// `{"params", "trace", "final": {"top": [...]}}`.
    pub fn to_json(&self, measure_values: &[f64], top: usize) -> serde_json::Value {
        let top_list: Vec<TopSolution> = match &self.final_state {
            Some(state) => top_solutions(state, measure_values, top),
            None => Vec::new(),
        };
        serde_json::json!({
            "params": self.params,
            "trace": self.per_iteration,
            "final": { "top": top_list },
        })
    }

    pub fn final_metrics(&self) -> Option<&IterationMetrics> {
        self.per_iteration.last()
    }
}

/// The `top` most amplified solutions, ties broken by ascending index.
pub fn top_solutions(state: &Statevector, values: &[f64], top: usize) -> Vec<TopSolution> {
    let mut order: Vec<usize> = (0..state.len()).collect();
    order.sort_by(|&a, &b| {
        state
            .probability(b)
            .partial_cmp(&state.probability(a))
            .unwrap()
            .then(a.cmp(&b))
    });
    order
        .into_iter()
        .take(top)
        .map(|index| TopSolution {
            index,
            objective: values[index],
            amplification: state.amplification(index),
        })
        .collect()
}

/// Options of a single amplified-state preparation.
#[derive(Debug, Clone)]
pub struct RunOptions<'a> {
    /// Indices whose total probability the trace reports.
    pub optima: &'a [usize],
    /// Tail mass of the conditional-value-at-risk column.
    pub cvar_alpha: f64,
    /// Objective used for metrics when it differs from the phase kernel.
    pub measure_values: Option<&'a [f64]>,
    pub retain_final_state: bool,
}

impl<'a> RunOptions<'a> {
    pub fn new(optima: &'a [usize]) -> Self {
        RunOptions {
            optima,
            cvar_alpha: DEFAULT_CVAR_ALPHA,
            measure_values: None,
            retain_final_state: false,
        }
    }
}

pub const DEFAULT_CVAR_ALPHA: f64 = 0.1;

/// Prepares the amplified state, recording metrics after every iteration and
/// invoking `hook` with the state so analyses can observe intermediates
/// without the engine retaining them.
pub fn prepare_amplified<H>(
    mixer: &Mixer,
    phase_values: &[f64],
    params: &RunParams,
    opts: &RunOptions,
    mut hook: H,
) -> Result<RunTrace>
where
    H: FnMut(usize, &Statevector),
{
    params.validate()?;
    let space = mixer.spec().space;
    let n = space.cardinality();
    if phase_values.len() != n {
        return Err(Error::Config("phase value table length mismatch".into()));
    }
    let measure_values = opts.measure_values.unwrap_or(phase_values);
    if measure_values.len() != n {
        return Err(Error::Config("measure value table length mismatch".into()));
    }
    let order = desirability_order(measure_values, params.sense);
    let mut state = equal_superposition(&space);
    let mut per_iteration = Vec::with_capacity(params.p);
    for i in 0..params.p {
        let (gamma_i, t_i) = params.schedule(i);
        phase_separate(&mut state, phase_values, gamma_i / params.sigma, params.sense);
        mixer.apply(t_i, &mut state)?;
        per_iteration.push(IterationMetrics {
            iter: i,
            optimal_probability: opts.optima.iter().map(|&x| state.probability(x)).sum(),
            expectation: expectation(&state, measure_values),
            cvar: cvar_with_order(&state, measure_values, &order, opts.cvar_alpha)?,
        });
        hook(i, &state);
    }
    Ok(RunTrace {
        params: params.clone(),
        per_iteration,
        final_state: opts.retain_final_state.then_some(state),
    })
}

/// Prepares the amplified state without per-iteration metrics; the fast path
/// behind the parameter search.
pub fn prepare_state(mixer: &Mixer, phase_values: &[f64], params: &RunParams) -> Result<Statevector> {
    params.validate()?;
    let space = mixer.spec().space;
    if phase_values.len() != space.cardinality() {
        return Err(Error::Config("phase value table length mismatch".into()));
    }
    let mut state = equal_superposition(&space);
    for i in 0..params.p {
        let (gamma_i, t_i) = params.schedule(i);
        phase_separate(&mut state, phase_values, gamma_i / params.sigma, params.sense);
        mixer.apply(t_i, &mut state)?;
    }
    Ok(state)
}

/// Probability-weighted mean objective, summed over fixed-size blocks so the
/// result does not depend on the thread count.
pub fn expectation(state: &Statevector, values: &[f64]) -> f64 {
    const BLOCK: usize = 1 << 16;
    let amps = state.amplitudes();
    let partials: Vec<f64> = (0..amps.len().div_ceil(BLOCK))
        .into_par_iter()
        .map(|b| {
            let range = b * BLOCK..((b + 1) * BLOCK).min(amps.len());
            let mut acc = 0.0;
            for i in range {
                acc += amps[i].norm_sqr() * values[i];
            }
            acc
        })
        .collect();
    partials.iter().sum()
}

/// Measurement summaries of a prepared state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureStats {
    pub expectation: f64,
    pub cvar: f64,
    pub optimal_probability: f64,
}

/// Expectation, tail conditional value, and total probability on the optima.
/// The tail keeps the best `cvar_alpha` of probability mass, best-first by
/// the problem sense.
pub fn measure_stats(
    state: &Statevector,
    values: &[f64],
    optima: &[usize],
    cvar_alpha: f64,
    sense: Sense,
) -> Result<MeasureStats> {
    let order = desirability_order(values, sense);
    Ok(MeasureStats {
        expectation: expectation(state, values),
        cvar: cvar_with_order(state, values, &order, cvar_alpha)?,
        optimal_probability: optima.iter().map(|&x| state.probability(x)).sum(),
    })
}

fn desirability_order(values: &[f64], sense: Sense) -> Vec<u32> {
    let mut order: Vec<u32> = (0..values.len() as u32).collect();
    match sense {
        Sense::Maximize => order.sort_by(|&a, &b| {
            values[b as usize].partial_cmp(&values[a as usize]).unwrap().then(a.cmp(&b))
        }),
        Sense::Minimize => order.sort_by(|&a, &b| {
            values[a as usize].partial_cmp(&values[b as usize]).unwrap().then(a.cmp(&b))
        }),
    }
    order
}

fn cvar_with_order(
    state: &Statevector,
    values: &[f64],
    order: &[u32],
    alpha: f64,
) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Config(format!("cvar alpha {alpha} outside (0, 1]")));
    }
    let mut remaining = alpha;
    let mut acc = 0.0;
    for &idx in order {
        let p = state.probability(idx as usize);
        let w = p.min(remaining);
        acc += w * values[idx as usize];
        remaining -= w;
        if remaining <= 1e-15 {
            break;
        }
    }
    Ok(acc / alpha)
}

/// Figure of merit for the parameter search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "metric")]
pub enum Metric {
    Expectation,
    Cvar { alpha: f64 },
}

impl Metric {
    fn evaluate(
        &self,
        state: &Statevector,
        values: &[f64],
        order: &[u32],
    ) -> Result<f64> {
        match *self {
            Metric::Expectation => Ok(expectation(state, values)),
            Metric::Cvar { alpha } => cvar_with_order(state, values, order, alpha),
        }
    }
}

/// Search controls. The defaults implement a plain local ascent/descent:
/// central finite differences with a relative step, a backtracking line
/// search halving a unit step along the normalised gradient, and a hard
/// evaluation budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizeOptions {
    pub metric: Metric,
    pub max_evals: usize,
    pub grad_tolerance: f64,
    pub fd_relative_step: f64,
}

impl Default for OptimizeOptions {
    fn default() -> Self {
        OptimizeOptions {
            metric: Metric::Expectation,
            max_evals: 500,
            grad_tolerance: 1e-6,
            fd_relative_step: 1e-3,
        }
    }
}

/// Result of a parameter search.
#[derive(Debug, Clone)]
pub struct OptimizeOutcome {
    pub params: RunParams,
    pub metric_value: f64,
    pub converged: bool,
    pub evaluations: usize,
    /// Accepted iterates: parameter vector and metric value.
    pub trajectory: Vec<(Vec<f64>, f64)>,
}

const PARAM_FLOOR: f64 = 1e-4;
const BETA_CEIL: f64 = 1.0 - 1e-4;

/// Local gradient search over `(gamma, t, beta)` from `init`, improving the
/// metric of the final amplified state. The first stationary point reached
/// is accepted; exhausting the budget returns the best iterate so far with
/// `converged = false`.
pub fn optimize_params(
    mixer: &Mixer,
    phase_values: &[f64],
    measure_values: &[f64],
    init: &RunParams,
    opts: &OptimizeOptions,
) -> Result<OptimizeOutcome> {
    init.validate()?;
    let order = desirability_order(measure_values, init.sense);
    let lower = vec![PARAM_FLOOR; 3];
    let upper = vec![f64::INFINITY, f64::INFINITY, BETA_CEIL];
    let template = init.clone();
    let mut eval = |theta: &[f64]| -> Result<f64> {
        let mut params = template.clone();
        params.gamma = theta[0];
        params.t = theta[1];
        params.beta = theta[2];
        let state = prepare_state(mixer, phase_values, &params)?;
        opts.metric.evaluate(&state, measure_values, &order)
    };
    let search = local_search(
        &mut eval,
        vec![init.gamma, init.t, init.beta],
        &lower,
        &upper,
        init.sense.phase_sign(),
        opts,
    )?;
    let mut params = init.clone();
    params.gamma = search.best[0];
    params.t = search.best[1];
    params.beta = search.best[2];
    Ok(OptimizeOutcome {
        params,
        metric_value: search.best_value,
        converged: search.converged,
        evaluations: search.evaluations,
        trajectory: search.trajectory,
    })
}

/// Joint search over `(gamma, t, beta)` and the penalty coefficients used in
/// the phase kernel. The state is prepared under the candidate coefficients
/// (with the phase normalisation recomputed for each candidate kernel) while
/// the metric is always evaluated against the fixed-penalty objective.
pub fn tune_penalty(
    mixer: &Mixer,
    problem: &ProblemInstance,
    lambda_f: &PenaltyVector,
    init: &RunParams,
    opts: &OptimizeOptions,
) -> Result<OptimizeOutcome> {
    init.validate()?;
    lambda_f.validate()?;
    let space = problem.space();
    if mixer.spec().space != space {
        return Err(Error::Config("mixer space does not match the problem".into()));
    }
    let measure_values = penalty_table(problem, lambda_f)?;
    let order = desirability_order(&measure_values, init.sense);

    let dims = 3 + lambda_f.lambda.len();
    let mut lower = vec![PARAM_FLOOR; 3];
    let mut upper = vec![f64::INFINITY, f64::INFINITY, BETA_CEIL];
    lower.extend(std::iter::repeat(0.0).take(lambda_f.lambda.len()));
    upper.extend(std::iter::repeat(f64::INFINITY).take(lambda_f.lambda.len()));

    let template = init.clone();
    let mut eval = |theta: &[f64]| -> Result<f64> {
        let lambda_t = PenaltyVector {
            lambda: theta[3..].to_vec(),
            reference: lambda_f.reference.clone(),
        };
        let phase_values = penalty_table(problem, &lambda_t)?;
        let (_, sigma) = problems::stats_of_table(&phase_values);
        if !(sigma > 0.0) {
            return Err(Error::Numeric("phase kernel has zero spread".into()));
        }
        let mut params = template.clone();
        params.gamma = theta[0];
        params.t = theta[1];
        params.beta = theta[2];
        params.sigma = sigma;
        let state = prepare_state(mixer, &phase_values, &params)?;
        opts.metric.evaluate(&state, &measure_values, &order)
    };

    let mut theta0 = vec![init.gamma, init.t, init.beta];
    theta0.extend_from_slice(&lambda_f.lambda);
    debug_assert_eq!(theta0.len(), dims);
    let search = local_search(&mut eval, theta0, &lower, &upper, init.sense.phase_sign(), opts)?;

    let lambda_t = PenaltyVector {
        lambda: search.best[3..].to_vec(),
        reference: lambda_f.reference.clone(),
    };
    let phase_values = penalty_table(problem, &lambda_t)?;
    let (_, sigma) = problems::stats_of_table(&phase_values);
    let mut params = init.clone();
    params.gamma = search.best[0];
    params.t = search.best[1];
    params.beta = search.best[2];
    params.sigma = sigma;
    params.lambda_t = Some(lambda_t);
    Ok(OptimizeOutcome {
        params,
        metric_value: search.best_value,
        converged: search.converged,
        evaluations: search.evaluations,
        trajectory: search.trajectory,
    })
}

/// Builds the penalised objective table for a constrained problem.
pub fn penalty_table(problem: &ProblemInstance, penalty: &PenaltyVector) -> Result<Vec<f64>> {
    match problem {
        ProblemInstance::Mis(inst) => {
            penalty.validate()?;
            Ok(problems::build_objective_table(&inst.space(), |s| inst.objective(s, penalty)))
        }
        ProblemInstance::Cflp(inst) => {
            let objective = inst.penalized(penalty)?;
            Ok(problems::build_objective_table(&inst.space(), |s| objective.value(s)))
        }
        other => Err(Error::Unsupported(format!(
            "penalty tuning applies to constrained problems, not {}",
            other.kind()
        ))),
    }
}

struct SearchResult {
    best: Vec<f64>,
    best_value: f64,
    converged: bool,
    evaluations: usize,
    trajectory: Vec<(Vec<f64>, f64)>,
}

fn clamp_vec(theta: &mut [f64], lower: &[f64], upper: &[f64]) {
    for ((x, &lo), &hi) in theta.iter_mut().zip(lower).zip(upper) {
        *x = x.clamp(lo, hi);
    }
}

/// Plain gradient ascent on `direction * f`: central differences with a
/// relative step (one-sided at the clamping bounds), then a backtracking
/// line search halving from a unit step along the normalised gradient.
fn local_search<F>(
    eval: &mut F,
    mut theta: Vec<f64>,
    lower: &[f64],
    upper: &[f64],
    direction: f64,
    opts: &OptimizeOptions,
) -> Result<SearchResult>
where
    F: FnMut(&[f64]) -> Result<f64>,
{
    let dims = theta.len();
    clamp_vec(&mut theta, lower, upper);
    let mut evaluations = 0usize;
    let mut run = |x: &[f64], evals: &mut usize| -> Result<f64> {
        *evals += 1;
        eval(x)
    };
    let mut value = run(&theta, &mut evaluations)?;
    let mut trajectory = vec![(theta.clone(), value)];
    let mut converged = false;

    'outer: while evaluations < opts.max_evals {
        // Gradient by central differences; shrink or one-side the stencil
        // where a bound is closer than the step.
        let mut grad = vec![0.0f64; dims];
        for i in 0..dims {
            let step = opts.fd_relative_step * theta[i].abs().max(1e-3);
            let room_up = upper[i] - theta[i];
            let room_dn = theta[i] - lower[i];
            let (f_hi, f_lo, denom) = if room_up >= step && room_dn >= step {
                let mut hi = theta.clone();
                hi[i] += step;
                let mut lo = theta.clone();
                lo[i] -= step;
                let f_hi = run(&hi, &mut evaluations)?;
                let f_lo = run(&lo, &mut evaluations)?;
                (f_hi, f_lo, 2.0 * step)
            } else if room_up >= step {
                let mut hi = theta.clone();
                hi[i] += step;
                (run(&hi, &mut evaluations)?, value, step)
            } else if room_dn >= step {
                let mut lo = theta.clone();
                lo[i] -= step;
                (value, run(&lo, &mut evaluations)?, step)
            } else {
                (value, value, 1.0)
            };
            grad[i] = direction * (f_hi - f_lo) / denom;
            if evaluations >= opts.max_evals {
                break 'outer;
            }
        }
        let grad_inf = grad.iter().fold(0.0f64, |m, g| m.max(g.abs()));
        if grad_inf < opts.grad_tolerance {
            converged = true;
            break;
        }
        let grad_norm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        let dir: Vec<f64> = grad.iter().map(|g| g / grad_norm).collect();

        // Backtracking from a unit step.
        let mut step = 1.0f64;
        let mut accepted = false;
        while step > 1e-10 && evaluations < opts.max_evals {
            let mut cand: Vec<f64> = theta
                .iter()
                .zip(&dir)
                .map(|(x, d)| x + step * d)
                .collect();
            clamp_vec(&mut cand, lower, upper);
            if cand == theta {
                step *= 0.5;
                continue;
            }
            let cand_value = run(&cand, &mut evaluations)?;
            if direction * (cand_value - value) > 0.0 {
                theta = cand;
                value = cand_value;
                trajectory.push((theta.clone(), value));
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            // No improving step at line-search resolution.
            break;
        }
    }

    Ok(SearchResult {
        best: theta,
        best_value: value,
        converged,
        evaluations,
        trajectory,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::build_objective_table;

    fn toy_maxcut() -> (crate::problems::MaxcutInstance, SpaceSpec) {
        let inst = crate::problems::MaxcutInstance::new(
            6,
            vec![
                (0, 1, 0.9),
                (0, 3, 0.4),
                (1, 2, 0.7),
                (2, 4, 0.6),
                (3, 4, 0.8),
                (3, 5, 0.3),
                (4, 5, 0.5),
            ],
        )
        .unwrap();
        let space = inst.space();
        (inst, space)
    }

    #[test]
    fn equal_superposition_amplitudes() {
        let s = equal_superposition(&SpaceSpec::Binary { n: 2 });
        for a in s.amplitudes() {
            assert!((a.re - 0.5).abs() < 1e-15 && a.im == 0.0);
        }
        let s = equal_superposition(&SpaceSpec::Permutation { n: 3 });
        for a in s.amplitudes() {
            assert!((a.re - 1.0 / 6.0f64.sqrt()).abs() < 1e-15);
        }
    }

    #[test]
    fn schedule_endpoints_and_reference_value() {
        let params =
            RunParams::new(2.4340, 0.4517, 0.2844, 10, Sense::Maximize, 1.0).unwrap();
        let (g0, t0) = params.schedule(0);
        assert!((g0 - 0.69223).abs() < 1e-5);
        assert!((t0 - 0.4517).abs() < 1e-12);
        let (g_last, t_last) = params.schedule(9);
        assert!((g_last - 2.4340).abs() < 1e-12);
        assert!((t_last - 0.2844 * 0.4517).abs() < 1e-12);

        let two = RunParams::new(1.5, 0.4, 0.25, 2, Sense::Maximize, 1.0).unwrap();
        assert_eq!(two.schedule(0), (0.25 * 1.5, 0.4));
        assert_eq!(two.schedule(1), (1.5, 0.25 * 0.4));

        let one = RunParams::new(1.5, 0.4, 0.25, 1, Sense::Maximize, 1.0).unwrap();
        assert_eq!(one.schedule(0), (1.5, 0.4));
    }

    #[test]
    fn schedule_is_monotone_for_beta_below_one() {
        let params = RunParams::new(2.0, 0.5, 0.3, 7, Sense::Minimize, 1.0).unwrap();
        for i in 1..7 {
            let (g_prev, t_prev) = params.schedule(i - 1);
            let (g, t) = params.schedule(i);
            assert!(g > g_prev && t < t_prev);
        }
    }

    #[test]
    fn phase_separation_leaves_probabilities_alone() {
        let (inst, space) = toy_maxcut();
        let values = build_objective_table(&space, |s| inst.objective(s));
        let mut state = equal_superposition(&space);
        phase_separate(&mut state, &values, 0.8, Sense::Maximize);
        for i in 0..state.len() {
            assert!((state.probability(i) - 1.0 / state.len() as f64).abs() < 1e-14);
        }
        // Zero strength is the identity.
        let mut state2 = equal_superposition(&space);
        phase_separate(&mut state2, &values, 0.0, Sense::Maximize);
        assert!(state2.max_amp_diff(&equal_superposition(&space)) == 0.0);
    }

    #[test]
    fn minimize_equals_maximize_of_negated_objective() {
        let (inst, space) = toy_maxcut();
        let values = build_objective_table(&space, |s| inst.objective(s));
        let negated: Vec<f64> = values.iter().map(|v| -v).collect();
        let mixer = Mixer::for_space(space).unwrap();
        let params = RunParams::new(1.1, 0.3, 0.4, 6, Sense::Minimize, 2.0).unwrap();
        let mut max_params = params.clone();
        max_params.sense = Sense::Maximize;
        let a = prepare_state(&mixer, &values, &params).unwrap();
        let b = prepare_state(&mixer, &negated, &max_params).unwrap();
        assert_eq!(a.max_amp_diff(&b), 0.0);
    }

    #[test]
    fn zero_phase_strength_cannot_amplify() {
        let (_, space) = toy_maxcut();
        let mixer = Mixer::for_space(space).unwrap();
        let values = vec![0.0; space.cardinality()];
        let params = RunParams::new(1.0, 0.4, 0.5, 8, Sense::Maximize, 1.0).unwrap();
        // A constant objective is the gamma = 0 limit: phases are global.
        let state = prepare_state(&mixer, &values, &params).unwrap();
        let uniform = 1.0 / space.cardinality() as f64;
        for i in 0..state.len() {
            assert!((state.probability(i) - uniform).abs() < 1e-12);
        }
    }

    #[test]
    fn normalization_survives_a_full_run() {
        let (inst, space) = toy_maxcut();
        let values = build_objective_table(&space, |s| inst.objective(s));
        let (_, sigma) = problems::stats_of_table(&values);
        let mixer = Mixer::for_space(space).unwrap();
        let params = RunParams::new(1.3, 0.5, 0.2, 12, Sense::Maximize, sigma).unwrap();
        let trace = prepare_amplified(
            &mixer,
            &values,
            &params,
            &RunOptions { retain_final_state: true, ..RunOptions::new(&[]) },
            |_, _| {},
        )
        .unwrap();
        let state = trace.final_state.unwrap();
        assert!((state.norm_sqr() - 1.0).abs() <= 1e-10 * params.p as f64);
        assert_eq!(trace.per_iteration.len(), params.p);
    }

    #[test]
    fn measure_stats_on_equal_superposition() {
        let (inst, space) = toy_maxcut();
        let values = build_objective_table(&space, |s| inst.objective(s));
        let state = equal_superposition(&space);
        let stats = measure_stats(&state, &values, &[3], 1.0, Sense::Maximize).unwrap();
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        assert!((stats.expectation - mean).abs() < 1e-12);
        // Full-mass tail equals the expectation.
        assert!((stats.cvar - stats.expectation).abs() < 1e-12);
        assert!((stats.optimal_probability - 1.0 / values.len() as f64).abs() < 1e-15);
        for i in 0..state.len() {
            assert!((state.amplification(i) - 1.0).abs() < 1e-12);
        }
        assert!(measure_stats(&state, &values, &[], 0.0, Sense::Maximize).is_err());
        assert!(measure_stats(&state, &values, &[], 1.2, Sense::Maximize).is_err());
    }

    #[test]
    fn cvar_takes_the_best_tail_by_sense() {
        let values = vec![1.0, 2.0, 3.0, 4.0];
        let state = Statevector::equal_superposition(4);
        let max = measure_stats(&state, &values, &[], 0.25, Sense::Maximize).unwrap();
        assert!((max.cvar - 4.0).abs() < 1e-12);
        let min = measure_stats(&state, &values, &[], 0.25, Sense::Minimize).unwrap();
        assert!((min.cvar - 1.0).abs() < 1e-12);
        // Fractional tail blends the boundary state.
        let max2 = measure_stats(&state, &values, &[], 0.375, Sense::Maximize).unwrap();
        let expected = (0.25 * 4.0 + 0.125 * 3.0) / 0.375;
        assert!((max2.cvar - expected).abs() < 1e-12);
    }

    #[test]
    fn optimizer_returns_stationary_init_unchanged() {
        let (_, space) = toy_maxcut();
        let mixer = Mixer::for_space(space).unwrap();
        // Constant objective: every parameter choice scores the same.
        let values = vec![1.0; space.cardinality()];
        let init = RunParams::new(1.0, 0.1, 0.1, 3, Sense::Maximize, 1.0).unwrap();
        let out = optimize_params(&mixer, &values, &values, &init, &OptimizeOptions::default())
            .unwrap();
        assert!(out.converged);
        assert_eq!(out.params.gamma, 1.0);
        assert_eq!(out.params.t, 0.1);
        assert_eq!(out.params.beta, 0.1);
    }

    #[test]
    fn optimizer_improves_the_metric_from_a_rough_start() {
        let (inst, space) = toy_maxcut();
        let values = build_objective_table(&space, |s| inst.objective(s));
        let (_, sigma) = problems::stats_of_table(&values);
        let mixer = Mixer::for_space(space).unwrap();
        let init = RunParams::new(1.0, 0.1, 0.2, 5, Sense::Maximize, sigma).unwrap();
        let opts = OptimizeOptions { max_evals: 120, ..OptimizeOptions::default() };
        let out = optimize_params(&mixer, &values, &values, &init, &opts).unwrap();
        let init_state = prepare_state(&mixer, &values, &init).unwrap();
        let init_metric = expectation(&init_state, &values);
        assert!(out.metric_value >= init_metric);
        assert!(out.trajectory.len() >= 1);
        // The trajectory's metric column is monotone.
        for w in out.trajectory.windows(2) {
            assert!(w[1].1 >= w[0].1);
        }
    }

    #[test]
    fn trace_json_has_the_interchange_shape() {
        let (inst, space) = toy_maxcut();
        let values = build_objective_table(&space, |s| inst.objective(s));
        let (_, sigma) = problems::stats_of_table(&values);
        let mixer = Mixer::for_space(space).unwrap();
        let params = RunParams::new(1.0, 0.3, 0.5, 2, Sense::Maximize, sigma).unwrap();
        let trace = prepare_amplified(
            &mixer,
            &values,
            &params,
            &RunOptions { retain_final_state: true, ..RunOptions::new(&[0]) },
            |_, _| {},
        )
        .unwrap();
        let json = trace.to_json(&values, 5);
        assert!(json["params"]["gamma"].is_number());
        assert_eq!(json["trace"].as_array().unwrap().len(), 2);
        let row = &json["trace"][0];
        for key in ["iter", "optimal_probability", "expectation", "cvar"] {
            assert!(!row[key].is_null(), "{key}");
        }
        assert_eq!(json["final"]["top"].as_array().unwrap().len(), 5);
        for key in ["index", "objective", "amplification"] {
            assert!(!json["final"]["top"][0][key].is_null());
        }
    }
}
