use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{Solution, SpaceSpec};

/// Quadratic assignment: place `n` facilities at `n` locations minimising
/// total flow-weighted transport cost.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QapInstance {
    n: usize,
    /// Location-to-location transport costs; symmetric, zero diagonal.
    distances: Vec<Vec<f64>>,
    /// Facility-to-facility material flows.
    flows: Vec<Vec<f64>>,
}

impl QapInstance {
    pub fn new(distances: Vec<Vec<f64>>, flows: Vec<Vec<f64>>) -> Result<Self> {
        let n = distances.len();
        let inst = QapInstance { n, distances, flows };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        if self.distances.len() != n
            || self.flows.len() != n
            || self.distances.iter().any(|r| r.len() != n)
            || self.flows.iter().any(|r| r.len() != n)
        {
            return Err(Error::Config("distance/flow matrices must be n x n".into()));
        }
        for i in 0..n {
            if self.distances[i][i] != 0.0 {
                return Err(Error::Config("distance matrix must have a zero diagonal".into()));
            }
            for j in 0..n {
                if (self.distances[i][j] - self.distances[j][i]).abs() > 1e-9 {
                    return Err(Error::Config("distance matrix must be symmetric".into()));
                }
                if self.flows[i][j] < 0.0 {
                    return Err(Error::Config("flows must be non-negative".into()));
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn distances(&self) -> &[Vec<f64>] {
        &self.distances
    }

    pub fn flows(&self) -> &[Vec<f64>] {
        &self.flows
    }

    pub fn space(&self) -> SpaceSpec {
        SpaceSpec::Permutation { n: self.n }
    }

    /// Flow-weighted transport cost summed over all ordered facility pairs.
    pub fn objective(&self, sol: &Solution) -> f64 {
        let mut total = 0.0;
        for i in 0..self.n {
            let li = &self.distances[sol.vars[i]];
            for j in 0..self.n {
                total += self.flows[i][j] * li[sol.vars[j]];
            }
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_flows_score_zero() {
        let l = vec![vec![0.0, 2.0], vec![2.0, 0.0]];
        let f = vec![vec![0.0, 0.0], vec![0.0, 0.0]];
        let inst = QapInstance::new(l, f).unwrap();
        assert_eq!(inst.objective(&Solution::new(vec![0, 1])), 0.0);
    }

    #[test]
    fn hand_expanded_two_facility_case() {
        let l = vec![vec![0.0, 3.0], vec![3.0, 0.0]];
        let f = vec![vec![0.0, 1.0], vec![1.0, 0.0]];
        let inst = QapInstance::new(l, f).unwrap();
        assert_eq!(inst.objective(&Solution::new(vec![0, 1])), 6.0);
    }

    #[test]
    fn transposing_both_matrices_preserves_objective() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let n = 5;
        let mut l = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let d = rng.gen_range(0.1..10.0);
                l[i][j] = d;
                l[j][i] = d;
            }
        }
        let f: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 0.0 } else { rng.gen_range(0.0..5.0) }).collect())
            .collect();
        let inst = QapInstance::new(l.clone(), f.clone()).unwrap();
        let lt: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| l[j][i]).collect()).collect();
        let ft: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| f[j][i]).collect()).collect();
        let transposed = QapInstance::new(lt, ft).unwrap();
        let space = inst.space();
        for _ in 0..100 {
            let sol = space.sample_uniform(&mut rng);
            assert!((inst.objective(&sol) - transposed.objective(&sol)).abs() < 1e-9);
        }
    }
}
