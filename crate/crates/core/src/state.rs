//! Dense complex statevector over solution indices.

use num_complex::Complex64;

/// The one mutable simulation object: amplitude `amps[i]` belongs to the
/// solution with index `i` in its space's codec order.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    amps: Vec<Complex64>,
}

impl Statevector {
    /// Uniform amplitudes `1/sqrt(N)` over `n` basis states.
    pub fn equal_superposition(n: usize) -> Self {
        let a = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
        Statevector { amps: vec![a; n] }
    }

    /// All weight on a single basis state.
    pub fn basis_state(n: usize, idx: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); n];
        amps[idx] = Complex64::new(1.0, 0.0);
        Statevector { amps }
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Self {
        Statevector { amps }
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Measurement probability of basis state `idx`.
    pub fn probability(&self, idx: usize) -> f64 {
        self.amps[idx].norm_sqr()
    }

    /// Amplification `a^2 = N |c|^2`: measurement probability relative to the
    /// equal superposition.
    pub fn amplification(&self, idx: usize) -> f64 {
        self.amps.len() as f64 * self.probability(idx)
    }

    /// Rescales to unit norm and returns the factor that was applied.
    pub fn renormalize(&mut self) -> f64 {
        let factor = 1.0 / self.norm();
        for a in &mut self.amps {
            *a *= factor;
        }
        factor
    }

    pub fn inner(&self, other: &Statevector) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Largest absolute amplitude difference against `other`.
    pub fn max_amp_diff(&self, other: &Statevector) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}
