use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problems::PenaltyVector;
use crate::space::{Solution, SpaceSpec};

/// Capacitated facility location: assign each customer to one of `k`
/// candidate facilities, paying per-resource transport plus opening costs,
/// under per-facility capacity constraints embedded as penalty terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CflpInstance {
    n: usize,
    k: usize,
    /// Resources required by each customer.
    demands: Vec<u64>,
    /// Capacity of each candidate facility.
    capacities: Vec<u64>,
    /// Transport cost per resource unit, customer-by-facility.
    transport: Vec<Vec<f64>>,
    /// Opening cost of each candidate facility.
    opening: Vec<f64>,
}

/// A fully-parameterised penalised objective with the reference-solution
/// cost folded in, cheap to evaluate per solution.
#[derive(Debug, Clone, Copy)]
pub struct CflpObjective<'a> {
    inst: &'a CflpInstance,
    l1: f64,
    l2: f64,
    l3: f64,
    reference_cost: f64,
    mean_transport: f64,
    mean_opening: f64,
}

impl CflpInstance {
    pub fn new(
        demands: Vec<u64>,
        capacities: Vec<u64>,
        transport: Vec<Vec<f64>>,
        opening: Vec<f64>,
    ) -> Result<Self> {
        let inst = CflpInstance {
            n: demands.len(),
            k: capacities.len(),
            demands,
            capacities,
            transport,
            opening,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.k < 2 {
            return Err(Error::Config("CFLP requires n >= 1 customers and k >= 2 locations".into()));
        }
        if self.transport.len() != self.n
            || self.transport.iter().any(|r| r.len() != self.k)
            || self.opening.len() != self.k
        {
            return Err(Error::Config("transport must be n x k and opening costs length k".into()));
        }
        if self
            .transport
            .iter()
            .flatten()
            .chain(self.opening.iter())
            .any(|&v| v < 0.0)
        {
            return Err(Error::Config("costs must be non-negative".into()));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn demands(&self) -> &[u64] {
        &self.demands
    }

    pub fn capacities(&self) -> &[u64] {
        &self.capacities
    }

    pub fn space(&self) -> SpaceSpec {
        SpaceSpec::Integer { n: self.n, k: self.k }
    }

    fn loads(&self, sol: &Solution) -> Vec<u64> {
        let mut loads = vec![0u64; self.k];
        for (j, &c) in sol.vars.iter().enumerate() {
            loads[c] += self.demands[j];
        }
        loads
    }

    /// True when no facility's assigned demand exceeds its capacity.
    pub fn is_valid(&self, sol: &Solution) -> bool {
        self.loads(sol)
            .iter()
            .zip(&self.capacities)
            .all(|(&l, &c)| l <= c)
    }

    /// Transport plus opening costs, capacity ignored.
    pub fn base_objective(&self, sol: &Solution) -> f64 {
        let mut total = 0.0;
        let mut used = vec![false; self.k];
        for (j, &c) in sol.vars.iter().enumerate() {
            total += self.demands[j] as f64 * self.transport[j][c];
            used[c] = true;
        }
        for (i, &u) in used.iter().enumerate() {
            if u {
                total += self.opening[i];
            }
        }
        total
    }

    pub fn mean_transport_cost(&self) -> f64 {
        self.transport.iter().flatten().sum::<f64>() / (self.n * self.k) as f64
    }

    pub fn mean_opening_cost(&self) -> f64 {
        self.opening.iter().sum::<f64>() / self.k as f64
    }

    /// Binds a penalty vector, precomputing the reference-solution cost.
    /// A positive third coefficient requires the reference solution.
    pub fn penalized<'a>(&'a self, penalty: &PenaltyVector) -> Result<CflpObjective<'a>> {
        penalty.validate()?;
        let l1 = penalty.get(0);
        let l2 = penalty.get(1);
        let l3 = penalty.get(2);
        let mut obj = CflpObjective {
            inst: self,
            l1,
            l2,
            l3,
            reference_cost: 0.0,
            mean_transport: self.mean_transport_cost(),
            mean_opening: self.mean_opening_cost(),
        };
        if let Some(reference) = &penalty.reference {
            self.space().validate_solution(reference)?;
            obj.reference_cost = obj.capacity_penalized(reference);
        } else if l3 > 0.0 {
            return Err(Error::Config(
                "third CFLP penalty term requires a reference solution".into(),
            ));
        }
        Ok(obj)
    }
}

impl CflpObjective<'_> {
    /// Base cost plus per-facility over-capacity terms: a variable term
    /// scaling with the excess at the average per-unit transport cost, and a
    /// stepped term charging the average opening cost per capacity multiple
    /// exceeded (exact integer ceiling).
    pub fn capacity_penalized(&self, sol: &Solution) -> f64 {
        let inst = self.inst;
        let mut total = inst.base_objective(sol);
        for (i, (&load, &cap)) in inst.loads(sol).iter().zip(&inst.capacities).enumerate() {
            let _ = i;
            if load > cap {
                let excess = load - cap;
                total += self.l1 * self.mean_transport * excess as f64;
                total += self.l2 * self.mean_opening * excess.div_ceil(cap) as f64;
            }
        }
        total
    }

    /// Full penalised objective: invalid solutions are additionally pulled
    /// toward the reference solution's penalised cost by the third term.
    pub fn value(&self, sol: &Solution) -> f64 {
        let g = self.capacity_penalized(sol);
        if self.l3 > 0.0 && !self.inst.is_valid(sol) {
            g - self.l3 * (g - self.reference_cost)
        } else {
            g
        }
    }
}
