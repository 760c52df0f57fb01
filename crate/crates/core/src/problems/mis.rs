use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problems::PenaltyVector;
use crate::space::{Solution, SpaceSpec};

/// Maximum independent set: pick the largest vertex subset containing no
/// edge, expressed as subset size minus penalty terms for adjacent pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MisInstance {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl MisInstance {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let inst = MisInstance { n, edges };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = std::collections::HashSet::new();
        for &(i, j) in &self.edges {
            if i == j || i >= self.n || j >= self.n {
                return Err(Error::Config(format!("bad edge ({i}, {j}) for n = {}", self.n)));
            }
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(Error::Config(format!("duplicate edge ({i}, {j})")));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn space(&self) -> SpaceSpec {
        SpaceSpec::Binary { n: self.n }
    }

    /// Number of edges with both endpoints selected.
    pub fn violation_count(&self, sol: &Solution) -> usize {
        self.edges
            .iter()
            .filter(|&&(i, j)| sol.vars[i] == 1 && sol.vars[j] == 1)
            .count()
    }

    pub fn is_independent(&self, sol: &Solution) -> bool {
        self.violation_count(sol) == 0
    }

    /// Subset size, minus `lambda[0]` per selected adjacent pair, minus
    /// `lambda[1]` once if any pair is selected.
    pub fn objective(&self, sol: &Solution, penalty: &PenaltyVector) -> f64 {
        let size: usize = sol.vars.iter().sum();
        let violations = self.violation_count(sol);
        let flag = if violations > 0 { 1.0 } else { 0.0 };
        size as f64 - penalty.get(0) * violations as f64 - penalty.get(1) * flag
    }
}
