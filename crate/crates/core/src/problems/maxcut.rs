use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{Solution, SpaceSpec};

/// Weighted maxcut: partition `n` vertices into two subsets maximising the
/// total weight of edges crossing the partition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaxcutInstance {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
}

impl MaxcutInstance {
    pub fn new(n: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        let inst = MaxcutInstance { n, edges };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        for &(i, j, w) in &self.edges {
            if i >= j || j >= self.n {
                return Err(Error::Config(format!("bad edge ({i}, {j}) for n = {}", self.n)));
            }
            if !(w > 0.0) {
                return Err(Error::Config(format!("edge ({i}, {j}) has non-positive weight {w}")));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|&(_, _, w)| w).sum()
    }

    pub fn space(&self) -> SpaceSpec {
        SpaceSpec::Binary { n: self.n }
    }

    /// Total weight of edges whose endpoints sit in different subsets.
    pub fn objective(&self, sol: &Solution) -> f64 {
        self.edges
            .iter()
            .filter(|&&(i, j, _)| sol.vars[i] != sol.vars[j])
            .map(|&(_, _, w)| w)
            .sum()
    }
}
