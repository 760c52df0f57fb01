//! Continuous-time quantum-walk mixing unitaries.
//!
//! Each solution space carries one mixing graph: the hypercube for binary
//! variables, the Hamming graph (Cartesian product of complete graphs) for
//! integer variables, and the transposition graph for permutations. The
//! mixer is the walk `exp(-i t A)` on that graph. The first two factor into
//! independent per-variable passes with closed-form coefficients; the
//! transposition walk is evaluated by an adaptively truncated power series
//! applied through precomputed single-swap index tables. No dense `N x N`
//! matrix is ever materialised; dense exponentials exist only in test
//! oracles.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{Solution, SpaceSpec};
use crate::state::Statevector;

/// Which mixing graph a mixer walks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MixerKind {
    Hypercube,
    Hamming,
    Transposition,
}

/// A mixing graph bound to its solution space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MixerSpec {
    pub kind: MixerKind,
    pub space: SpaceSpec,
}

impl MixerSpec {
    pub fn new(kind: MixerKind, space: SpaceSpec) -> Result<Self> {
        let ok = matches!(
            (kind, space),
            (MixerKind::Hypercube, SpaceSpec::Binary { .. })
                | (MixerKind::Hamming, SpaceSpec::Integer { .. })
                | (MixerKind::Transposition, SpaceSpec::Permutation { .. })
        );
        if !ok {
            return Err(Error::Config(format!(
                "mixer {kind:?} does not match space {space:?}"
            )));
        }
        Ok(MixerSpec { kind, space })
    }

    /// The canonical mixer for a space.
    pub fn for_space(space: SpaceSpec) -> Self {
        let kind = match space {
            SpaceSpec::Binary { .. } => MixerKind::Hypercube,
            SpaceSpec::Integer { .. } => MixerKind::Hamming,
            SpaceSpec::Permutation { .. } => MixerKind::Transposition,
        };
        MixerSpec { kind, space }
    }

    /// Per-distance phase decrement applied by the walk.
    pub fn phase_step(&self, t: f64) -> Result<f64> {
        match self.kind {
            MixerKind::Hypercube | MixerKind::Transposition => Ok(std::f64::consts::FRAC_PI_2),
            MixerKind::Hamming => Ok(polar_factors(self.space.radix(), t)?.phi),
        }
    }
}

/// Maximum power-series length before the transposition walk reports a
/// non-convergent time.
pub const MAX_SERIES_TERMS: usize = 500;

const SERIES_TOLERANCE: f64 = 1e-14;
const RENORM_TOLERANCE: f64 = 1e-12;

/// A mixer ready to apply. For the transposition graph, construction
/// precomputes one neighbour-index table per swap move.
#[derive(Debug, Clone)]
pub struct Mixer {
    spec: MixerSpec,
    /// Neighbour indices, `degree` entries per solution index.
    move_table: Vec<u32>,
}

impl Mixer {
    pub fn new(spec: MixerSpec) -> Result<Self> {
        MixerSpec::new(spec.kind, spec.space)?;
        let move_table = match spec.kind {
            MixerKind::Transposition => build_transposition_table(&spec.space)?,
            _ => Vec::new(),
        };
        Ok(Mixer { spec, move_table })
    }

    pub fn for_space(space: SpaceSpec) -> Result<Self> {
        Mixer::new(MixerSpec::for_space(space))
    }

    pub fn spec(&self) -> &MixerSpec {
        &self.spec
    }

    /// Walks the state for time `t`, in place.
    ///
    /// Returns the global factor folded into the emitted state relative to
    /// the exact walk: the emitted state equals `factor * exp(-i t A) psi`.
    /// The Hamming mixer is emitted in its phase-adjusted form with
    /// `factor = exp(-i n t)`; the other mixers return 1.
    pub fn apply(&self, t: f64, state: &mut Statevector) -> Result<Complex64> {
        let n_states = self.spec.space.cardinality();
        if state.len() != n_states {
            return Err(Error::Config(format!(
                "state length {} does not match space size {n_states}",
                state.len()
            )));
        }
        if !(t >= 0.0) {
            return Err(Error::Config("walk time must be >= 0".into()));
        }
        match self.spec.kind {
            MixerKind::Hypercube => {
                apply_hypercube(self.spec.space.num_vars(), t, state);
                Ok(Complex64::new(1.0, 0.0))
            }
            MixerKind::Hamming => {
                let n = self.spec.space.num_vars();
                let k = self.spec.space.radix();
                apply_hamming(n, k, t, state);
                Ok(Complex64::from_polar(1.0, -(n as f64) * t))
            }
            MixerKind::Transposition => {
                self.apply_transposition(t, state)?;
                Ok(Complex64::new(1.0, 0.0))
            }
        }
    }

    fn apply_transposition(&self, t: f64, state: &mut Statevector) -> Result<()> {
        let degree = self.spec.space.degree();
        let input_norm = state.norm();
        if input_norm == 0.0 {
            return Ok(());
        }
        let mut term = state.amplitudes().to_vec();
        let mut scratch = vec![Complex64::new(0.0, 0.0); term.len()];
        let mut converged = false;
        for m in 1..=MAX_SERIES_TERMS {
            // term <- (-i t / m) * A * term, accumulated onto the state.
            adjacency_gather(&self.move_table, degree, &term, &mut scratch);
            let scale = Complex64::new(0.0, -t / m as f64);
            term.par_iter_mut()
                .zip(scratch.par_iter())
                .for_each(|(dst, src)| *dst = scale * src);
            let amps = state.amplitudes_mut();
            amps.par_iter_mut()
                .zip(term.par_iter())
                .for_each(|(acc, inc)| *acc += inc);
            let term_norm: f64 = term.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            if term_norm <= SERIES_TOLERANCE * input_norm {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Numeric(format!(
                "transposition walk series did not converge within {MAX_SERIES_TERMS} terms \
                 (walk time {t} too large)"
            )));
        }
        let factor = input_norm / state.norm();
        if (factor - 1.0).abs() >= RENORM_TOLERANCE {
            return Err(Error::Numeric(format!(
                "transposition walk lost unitarity: renormalisation factor {factor}"
            )));
        }
        for a in state.amplitudes_mut() {
            *a *= factor;
        }
        Ok(())
    }

    /// Applies the adjacency operator: each amplitude becomes the sum over
    /// its `degree` neighbours. No matrix is materialised.
    pub fn adjacency_apply(&self, state: &Statevector) -> Statevector {
        let n_states = self.spec.space.cardinality();
        assert_eq!(state.len(), n_states, "state length mismatch");
        let amps = state.amplitudes();
        let mut out = vec![Complex64::new(0.0, 0.0); n_states];
        match self.spec.kind {
            MixerKind::Hypercube => {
                let n = self.spec.space.num_vars();
                out.par_iter_mut().enumerate().for_each(|(i, dst)| {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for j in 0..n {
                        acc += amps[i ^ (1 << j)];
                    }
                    *dst = acc;
                });
            }
            MixerKind::Hamming => {
                let n = self.spec.space.num_vars();
                let k = self.spec.space.radix();
                out.par_iter_mut().enumerate().for_each(|(i, dst)| {
                    let mut acc = Complex64::new(0.0, 0.0);
                    let mut stride = 1usize;
                    for _ in 0..n {
                        let digit = (i / stride) % k;
                        let base = i - digit * stride;
                        for v in 0..k {
                            if v != digit {
                                acc += amps[base + v * stride];
                            }
                        }
                        stride *= k;
                    }
                    *dst = acc;
                });
            }
            MixerKind::Transposition => {
                adjacency_gather(&self.move_table, self.spec.space.degree(), amps, &mut out);
            }
        }
        Statevector::from_amplitudes(out)
    }

    /// Applies the mixer to the basis state of `u`, groups amplitudes by
    /// distance from `u`, and reports how far their phases sit from the
    /// distance-proportional law, together with the smallest magnitude.
    pub fn verify_phase_condition(&self, t: f64, u: &Solution) -> Result<PhaseConditionReport> {
        let space = self.spec.space;
        space.validate_solution(u)?;
        let idx_u = space.encode_unchecked(u);
        let n_states = space.cardinality();
        let mut state = Statevector::basis_state(n_states, idx_u);
        self.apply(t, &mut state)?;
        let phase_step = self.spec.phase_step(t)?;

        let amps = state.amplitudes();
        // Undo the distance-proportional rotation, then read the common
        // phase off the largest corrected amplitude.
        let mut reference = Complex64::new(0.0, 0.0);
        let mut corrected = Vec::with_capacity(n_states);
        for idx in 0..n_states {
            let x = space.decode_unchecked(idx);
            let h = space.distance_unchecked(u, &x) as f64;
            let c = amps[idx] * Complex64::from_polar(1.0, h * phase_step);
            if c.norm_sqr() > reference.norm_sqr() {
                reference = c;
            }
            corrected.push(c);
        }
        let global_phase = reference.arg();
        let mut max_phase_deviation = 0.0f64;
        let mut min_magnitude = f64::INFINITY;
        for c in corrected {
            max_phase_deviation = max_phase_deviation.max(wrap_angle(c.arg() - global_phase).abs());
            min_magnitude = min_magnitude.min(c.norm());
        }
        let holds = match self.spec.kind {
            MixerKind::Hypercube | MixerKind::Hamming => max_phase_deviation < 1e-8,
            MixerKind::Transposition => max_phase_deviation < 1e-6 && min_magnitude > 0.0,
        };
        Ok(PhaseConditionReport {
            phase_step,
            global_phase,
            max_phase_deviation,
            min_magnitude,
            holds,
        })
    }
}

/// Diagnostic output of [`Mixer::verify_phase_condition`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseConditionReport {
    /// Per-distance phase decrement the law was checked against.
    pub phase_step: f64,
    pub global_phase: f64,
    pub max_phase_deviation: f64,
    pub min_magnitude: f64,
    pub holds: bool,
}

/// One-shot convenience wrapper; builds the mixer (including move tables for
/// permutation spaces) and applies it.
pub fn apply_mixer(spec: &MixerSpec, t: f64, state: &mut Statevector) -> Result<Complex64> {
    Mixer::new(*spec)?.apply(t, state)
}

/// Polar decomposition of the two per-register walk coefficients for a
/// complete graph over `k` values, and the per-distance phase decrement
/// `phi = phi1 - phi2` they induce.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarFactors {
    pub r1: f64,
    pub phi1: f64,
    pub r2: f64,
    pub phi2: f64,
    /// Phase decrement per unit distance; lies in `(pi/2, pi)` for `k > 2`.
    pub phi: f64,
    /// Set when `t = 0`, where the moving coefficient vanishes and its phase
    /// is defined only as a limit.
    pub degenerate: bool,
}

pub fn polar_factors(k: usize, t: f64) -> Result<PolarFactors> {
    if k < 2 {
        return Err(Error::Config("polar factors require k >= 2".into()));
    }
    if !(0.0..=std::f64::consts::PI / k as f64 + 1e-12).contains(&t) {
        return Err(Error::Config(format!(
            "walk time {t} outside the admissible window (0, pi/{k}]"
        )));
    }
    let kf = k as f64;
    let kt = kf * t;
    let (sin_kt, cos_kt) = kt.sin_cos();
    if 1.0 - cos_kt < 1e-30 {
        return Ok(PolarFactors {
            r1: kf,
            phi1: 0.0,
            r2: 0.0,
            phi2: -std::f64::consts::FRAC_PI_2,
            phi: std::f64::consts::FRAC_PI_2,
            degenerate: true,
        });
    }
    let r1 = (kf * kf - 2.0 * (kf - 1.0) * (1.0 - cos_kt)).sqrt();
    let phi1 = (-sin_kt / (kf + cos_kt - 1.0)).atan();
    let r2 = (2.0 * (1.0 - cos_kt)).sqrt();
    let phi2 = (sin_kt / (1.0 - cos_kt)).atan() - std::f64::consts::PI;
    Ok(PolarFactors { r1, phi1, r2, phi2, phi: phi1 - phi2, degenerate: false })
}

/// Magnitude of the amplitude the closed-form mixers place on each solution
/// at distance `h`, starting from a basis state.
pub fn closed_form_magnitude(spec: &MixerSpec, t: f64, h: usize) -> Result<f64> {
    let n = spec.space.num_vars();
    match spec.kind {
        MixerKind::Hypercube => Ok(t.cos().powi((n - h) as i32) * t.sin().powi(h as i32)),
        MixerKind::Hamming => {
            let k = spec.space.radix() as f64;
            let f = polar_factors(spec.space.radix(), t)?;
            Ok(f.r1.powi((n - h) as i32) * f.r2.powi(h as i32) / k.powi(n as i32))
        }
        MixerKind::Transposition => Err(Error::Unsupported(
            "the transposition walk has no closed-form magnitudes".into(),
        )),
    }
}

pub(crate) fn wrap_angle(a: f64) -> f64 {
    let mut a = a % std::f64::consts::TAU;
    if a > std::f64::consts::PI {
        a -= std::f64::consts::TAU;
    } else if a < -std::f64::consts::PI {
        a += std::f64::consts::TAU;
    }
    a
}

/// One two-point butterfly per variable.
fn apply_hypercube(n: usize, t: f64, state: &mut Statevector) {
    let (sin_t, cos_t) = t.sin_cos();
    let hop = Complex64::new(0.0, -sin_t);
    let amps = state.amplitudes_mut();
    for j in 0..n {
        let stride = 1usize << j;
        amps.par_chunks_mut(2 * stride).for_each(|chunk| {
            let (lo, hi) = chunk.split_at_mut(stride);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = cos_t * x + hop * y;
                *b = hop * x + cos_t * y;
            }
        });
    }
}

/// One complete-graph pass per variable, in the phase-adjusted form: the
/// held value keeps coefficient `(e^{-ikt} + k - 1)/k` and every move gets
/// `(e^{-ikt} - 1)/k`, so each amplitude gains `c_move` times its group sum.
fn apply_hamming(n: usize, k: usize, t: f64, state: &mut Statevector) {
    let phase = Complex64::from_polar(1.0, -(k as f64) * t);
    let c_move = (phase - 1.0) / k as f64;
    let amps = state.amplitudes_mut();
    let mut stride = 1usize;
    for _ in 0..n {
        let group = k * stride;
        amps.par_chunks_mut(group).for_each(|chunk| {
            for off in 0..stride {
                let mut sum = Complex64::new(0.0, 0.0);
                let mut pos = off;
                while pos < chunk.len() {
                    sum += chunk[pos];
                    pos += stride;
                }
                let inc = c_move * sum;
                let mut pos = off;
                while pos < chunk.len() {
                    chunk[pos] += inc;
                    pos += stride;
                }
            }
        });
        stride = group;
    }
}

/// `out[i] =` sum of `v` over the `degree` neighbours of `i`.
fn adjacency_gather(table: &[u32], degree: usize, v: &[Complex64], out: &mut [Complex64]) {
    out.par_iter_mut().enumerate().for_each(|(i, dst)| {
        let nb = &table[i * degree..(i + 1) * degree];
        let mut acc = Complex64::new(0.0, 0.0);
        for &j in nb {
            acc += v[j as usize];
        }
        *dst = acc;
    });
}

/// Neighbour table of the transposition graph: for each solution index, the
/// indices reached by each of the `n(n-1)/2` position swaps.
fn build_transposition_table(space: &SpaceSpec) -> Result<Vec<u32>> {
    let n_states = space.cardinality();
    if n_states > u32::MAX as usize {
        return Err(Error::Unsupported(
            "transposition walk limited to spaces addressable by u32".into(),
        ));
    }
    let n = space.num_vars();
    let degree = space.degree();
    let moves: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let mut table = vec![0u32; n_states * degree];
    const BLOCK: usize = 1 << 12;
    table
        .par_chunks_mut(BLOCK * degree)
        .enumerate()
        .for_each(|(chunk, slot)| {
            let start = chunk * BLOCK;
            let end = (start + BLOCK).min(n_states);
            for idx in start..end {
                let mut sol = space.decode_unchecked(idx);
                let row = &mut slot[(idx - start) * degree..(idx - start + 1) * degree];
                for (m, &(a, b)) in moves.iter().enumerate() {
                    sol.vars.swap(a, b);
                    row[m] = space.encode_unchecked(&sol) as u32;
                    sol.vars.swap(a, b);
                }
            }
        });
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use nalgebra::{Complex, DMatrix, DVector, SymmetricEigen};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_state(n: usize, seed: u64) -> Statevector {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut amps: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let norm: f64 = amps.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        for a in &mut amps {
            *a /= norm;
        }
        Statevector::from_amplitudes(amps)
    }

    /// Dense adjacency by brute-force distance-1 pairs.
    fn dense_adjacency(space: &SpaceSpec) -> DMatrix<f64> {
        let n = space.cardinality();
        DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                return 0.0;
            }
            let u = space.index_to_solution(i).unwrap();
            let v = space.index_to_solution(j).unwrap();
            if space.distance_unchecked(&u, &v) == 1 {
                1.0
            } else {
                0.0
            }
        })
    }

    /// exp(-i t A) psi through an eigendecomposition of the real symmetric
    /// adjacency: independent of the production series/butterfly paths.
    fn dense_walk(space: &SpaceSpec, t: f64, state: &Statevector) -> Statevector {
        let a = dense_adjacency(space);
        let eig = SymmetricEigen::new(a);
        let v = DVector::from_iterator(state.len(), state.amplitudes().iter().copied());
        let q = eig.eigenvectors.map(|x| Complex::new(x, 0.0));
        let rotated = q.adjoint() * &v;
        let phased = DVector::from_iterator(
            state.len(),
            rotated
                .iter()
                .zip(eig.eigenvalues.iter())
                .map(|(c, &lam)| c * Complex64::from_polar(1.0, -t * lam)),
        );
        let back = q * phased;
        Statevector::from_amplitudes(back.iter().copied().collect())
    }

    fn oracle_spaces() -> Vec<SpaceSpec> {
        vec![
            SpaceSpec::Binary { n: 4 },
            SpaceSpec::Binary { n: 8 },
            SpaceSpec::Integer { n: 3, k: 3 },
            SpaceSpec::Integer { n: 2, k: 5 },
            SpaceSpec::Integer { n: 3, k: 4 },
            SpaceSpec::Permutation { n: 4 },
            SpaceSpec::Permutation { n: 5 },
            SpaceSpec::Permutation { n: 6 },
        ]
    }

    #[test]
    fn zero_time_is_identity() {
        for space in oracle_spaces() {
            let mixer = Mixer::for_space(space).unwrap();
            let state0 = random_state(space.cardinality(), 1);
            let mut state = state0.clone();
            let factor = mixer.apply(0.0, &mut state).unwrap();
            assert_abs_diff_eq!((factor - Complex64::new(1.0, 0.0)).norm(), 0.0, epsilon = 1e-15);
            assert!(state.max_amp_diff(&state0) < 1e-12);
        }
    }

    #[test]
    fn matches_dense_exponential_oracle() {
        for space in oracle_spaces() {
            let t = 0.8 * space.max_walk_time().min(0.4);
            let mixer = Mixer::for_space(space).unwrap();
            let input = random_state(space.cardinality(), 2);
            let mut ours = input.clone();
            let factor = mixer.apply(t, &mut ours).unwrap();
            let exact = dense_walk(&space, t, &input);
            let mut worst = 0.0f64;
            for (a, b) in ours.amplitudes().iter().zip(exact.amplitudes()) {
                worst = worst.max((a - factor * b).norm());
            }
            assert!(worst < 1e-9, "{space:?}: worst diff {worst}");
        }
    }

    #[test]
    fn equal_superposition_is_an_eigenstate() {
        for space in oracle_spaces() {
            let t = 0.31_f64.min(0.8 * space.max_walk_time());
            let mixer = Mixer::for_space(space).unwrap();
            let n = space.cardinality();
            let mut state = Statevector::equal_superposition(n);
            let factor = mixer.apply(t, &mut state).unwrap();
            let expected =
                factor * Complex64::from_polar(1.0, -(space.degree() as f64) * t) / (n as f64).sqrt();
            for a in state.amplitudes() {
                assert!((a - expected).norm() < 1e-10, "{space:?}");
            }
        }
    }

    #[test]
    fn unitarity_and_composition() {
        for space in oracle_spaces() {
            let mixer = Mixer::for_space(space).unwrap();
            let tmax = space.max_walk_time();
            let (t1, t2) = (0.23 * tmax, 0.41 * tmax);
            let input = random_state(space.cardinality(), 3);

            let mut walked = input.clone();
            mixer.apply(t1, &mut walked).unwrap();
            assert!((walked.norm() - 1.0).abs() < 1e-12, "{space:?}");
            mixer.apply(t2, &mut walked).unwrap();

            let mut direct = input.clone();
            mixer.apply(t1 + t2, &mut direct).unwrap();
            assert!(walked.max_amp_diff(&direct) < 1e-10, "{space:?}");
        }
    }

    #[test]
    fn hamming_with_two_values_equals_hypercube() {
        let n = 6;
        let binary = SpaceSpec::Binary { n };
        let integer = SpaceSpec::Integer { n, k: 2 };
        let hyper = Mixer::for_space(binary).unwrap();
        let hamming = Mixer::for_space(integer).unwrap();
        let input = random_state(binary.cardinality(), 4);
        let t = 0.37;

        let mut a = input.clone();
        hyper.apply(t, &mut a).unwrap();
        let mut b = input.clone();
        let factor = hamming.apply(t, &mut b).unwrap();
        // Remove the phase-adjusted convention before comparing.
        for amp in b.amplitudes_mut() {
            *amp /= factor;
        }
        assert!(a.max_amp_diff(&b) < 1e-12);
    }

    #[test]
    fn distance_phase_law_and_flat_magnitudes_for_closed_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for space in [SpaceSpec::Binary { n: 7 }, SpaceSpec::Integer { n: 4, k: 3 }] {
            let spec = MixerSpec::for_space(space);
            let mixer = Mixer::new(spec).unwrap();
            let u = space.sample_uniform(&mut rng);
            let t = 0.7 * space.max_walk_time();
            let report = mixer.verify_phase_condition(t, &u).unwrap();
            assert!(report.holds, "{space:?}: {report:?}");
            assert!(report.max_phase_deviation < 1e-10);

            // Magnitudes constant within each distance class.
            let idx_u = space.solution_to_index(&u).unwrap();
            let mut state = Statevector::basis_state(space.cardinality(), idx_u);
            mixer.apply(t, &mut state).unwrap();
            for (idx, amp) in state.amplitudes().iter().enumerate() {
                let x = space.index_to_solution(idx).unwrap();
                let h = space.distance_unchecked(&u, &x);
                let expected = closed_form_magnitude(&spec, t, h).unwrap();
                assert!((amp.norm() - expected).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn hypercube_phase_step_is_quarter_turn() {
        let space = SpaceSpec::Binary { n: 6 };
        let mixer = Mixer::for_space(space).unwrap();
        let u = Solution::new(vec![1, 0, 0, 1, 1, 0]);
        for t in [0.2, 0.7, 1.2] {
            let report = mixer.verify_phase_condition(t, &u).unwrap();
            assert!(report.max_phase_deviation <= 1e-10);
            assert_abs_diff_eq!(report.phase_step, std::f64::consts::FRAC_PI_2);
        }
    }

    #[test]
    fn transposition_phase_condition_within_time_window() {
        let space = SpaceSpec::Permutation { n: 5 };
        let mixer = Mixer::for_space(space).unwrap();
        let u = Solution::new(vec![0, 1, 2, 3, 4]);
        let report = mixer.verify_phase_condition(0.15, &u).unwrap();
        assert!(report.holds, "{report:?}");
        assert!(report.min_magnitude > 0.0);
    }

    #[test]
    fn transposition_self_amplitude_stays_positive_inside_bound_then_flips() {
        // The self-amplitude series is real; its first zero marks where the
        // distance-phase law starts to fail, and must lie beyond the
        // guaranteed-positive window.
        let space = SpaceSpec::Permutation { n: 4 };
        let mixer = Mixer::for_space(space).unwrap();
        let bound = 2.0 / 4.0;
        let idx_u = 0usize;
        let self_amp = |t: f64| {
            let mut state = Statevector::basis_state(space.cardinality(), idx_u);
            mixer.apply(t, &mut state).unwrap();
            let a = state.amplitudes()[idx_u];
            assert!(a.im.abs() < 1e-10);
            a.re
        };
        let mut first_zero = None;
        let mut prev = self_amp(0.05);
        assert!(prev > 0.0);
        let mut t = 0.05;
        while t < 1.2 {
            t += 0.01;
            let cur = self_amp(t);
            if prev > 0.0 && cur <= 0.0 {
                first_zero = Some(t);
                break;
            }
            prev = cur;
        }
        let zero = first_zero.expect("self-amplitude never flipped sign");
        assert!(zero >= bound, "sign flip at {zero} inside the bound {bound}");
        assert!(zero < 2.0 * bound, "sign flip at {zero} far beyond the bound {bound}");
    }

    #[test]
    fn series_reports_nonconvergence_for_excessive_times() {
        let space = SpaceSpec::Permutation { n: 6 };
        let mixer = Mixer::for_space(space).unwrap();
        let mut state = Statevector::equal_superposition(space.cardinality());
        let err = mixer.apply(60.0, &mut state);
        assert!(matches!(err, Err(Error::Numeric(_))));
    }

    #[test]
    fn adjacency_rows_touch_every_neighbour_once() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for space in [
            SpaceSpec::Binary { n: 5 },
            SpaceSpec::Integer { n: 3, k: 3 },
            SpaceSpec::Permutation { n: 4 },
        ] {
            let mixer = Mixer::for_space(space).unwrap();
            let u = space.sample_uniform(&mut rng);
            let idx_u = space.solution_to_index(&u).unwrap();
            let basis = Statevector::basis_state(space.cardinality(), idx_u);
            let row = mixer.adjacency_apply(&basis);
            for (idx, amp) in row.amplitudes().iter().enumerate() {
                let x = space.index_to_solution(idx).unwrap();
                let expected = if space.distance_unchecked(&u, &x) == 1 { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(amp.re, expected, epsilon = 1e-12);
                assert_abs_diff_eq!(amp.im, 0.0, epsilon = 1e-12);
            }

            // <s|A|s> equals the degree, and A is symmetric on random pairs.
            let s = Statevector::equal_superposition(space.cardinality());
            let asym = mixer.adjacency_apply(&s);
            let quad = s.inner(&asym);
            assert_abs_diff_eq!(quad.re, space.degree() as f64, epsilon = 1e-9);

            let x = random_state(space.cardinality(), 7);
            let y = random_state(space.cardinality(), 8);
            let xy = x.inner(&mixer.adjacency_apply(&y));
            let yx = mixer.adjacency_apply(&x).inner(&y);
            assert!((xy - yx).norm() < 1e-10);
        }
    }

    #[test]
    fn polar_factors_match_reference_points() {
        // k = 3 at the end of the window: a full half-turn phase decrement.
        let f = polar_factors(3, std::f64::consts::PI / 3.0).unwrap();
        assert_abs_diff_eq!(f.phi, std::f64::consts::PI, epsilon = 1e-12);

        // k = 2 behaves like the hypercube at any admissible time.
        for t in [0.1, 0.5, 1.0, 1.5] {
            let f = polar_factors(2, t).unwrap();
            assert_abs_diff_eq!(f.phi, std::f64::consts::FRAC_PI_2, epsilon = 1e-12);
        }

        // Small times approach a quarter turn.
        let f = polar_factors(5, 1e-6).unwrap();
        assert!(!f.degenerate);
        assert_abs_diff_eq!(f.phi, std::f64::consts::FRAC_PI_2, epsilon = 1e-4);

        let f = polar_factors(4, 0.0).unwrap();
        assert!(f.degenerate);
        assert_abs_diff_eq!(f.phi, std::f64::consts::FRAC_PI_2);
    }

    #[test]
    fn polar_phase_increases_monotonically_over_the_window() {
        for k in [3usize, 4, 5, 7] {
            let kf = k as f64;
            let mut prev = std::f64::consts::FRAC_PI_2;
            for step in 1..=100 {
                let t = std::f64::consts::PI / kf * step as f64 / 100.0;
                let f = polar_factors(k, t).unwrap();
                assert!(f.phi > std::f64::consts::FRAC_PI_2 - 1e-12);
                assert!(f.phi <= std::f64::consts::PI + 1e-12);
                assert!(f.phi >= prev - 1e-12, "k={k} t={t}");
                prev = f.phi;

                // Closed-form cross-check for k > 2.
                let kt = kf * t;
                if (kt.cos() - 1.0).abs() > 1e-12 && k > 2 {
                    let closed = std::f64::consts::PI
                        - (-kf * kt.sin() / ((kf - 2.0) * (kt.cos() - 1.0))).atan();
                    assert_abs_diff_eq!(f.phi, closed, epsilon = 1e-10);
                }
            }
        }
    }

    #[test]
    fn mixer_spec_rejects_mismatched_pairs() {
        assert!(MixerSpec::new(MixerKind::Hypercube, SpaceSpec::Integer { n: 2, k: 3 }).is_err());
        assert!(MixerSpec::new(MixerKind::Transposition, SpaceSpec::Binary { n: 3 }).is_err());
        assert!(MixerSpec::new(MixerKind::Hamming, SpaceSpec::Integer { n: 2, k: 3 }).is_ok());
    }
}
