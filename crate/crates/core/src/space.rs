//! Solution spaces for the three supported problem structures.
//!
//! A [`SpaceSpec`] describes the feasible set: all length-`n` bit-strings,
//! all length-`n` strings over an alphabet of size `k`, or all permutations
//! of `{0..n-1}`. Solutions are addressed by dense indices through a fixed
//! bijection (positional code for binary/integer variables, Lehmer code for
//! permutations) so that statevectors can live in flat arrays. The module
//! also provides the mixing-graph distance, the size of the distance-`h`
//! subset around any solution, and uniform sampling within that subset.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Descriptor of a feasible solution set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SpaceSpec {
    /// All bit-strings of length `n`; `N = 2^n`.
    Binary { n: usize },
    /// All strings of length `n` over `{0..k-1}`; `N = k^n`.
    Integer { n: usize, k: usize },
    /// All permutations of `{0..n-1}`; `N = n!`.
    Permutation { n: usize },
}

/// One feasible solution: `vars[j]` is the value of decision variable `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Solution {
    pub vars: Vec<usize>,
}

impl Solution {
    pub fn new(vars: Vec<usize>) -> Self {
        Solution { vars }
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }
}

/// Mixing-graph facts that depend only on the space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistanceProfile {
    /// Vertex degree of the mixing graph.
    pub degree: usize,
    /// Graph diameter.
    pub diameter: usize,
    /// Upper end of the walk-time window inside which every distributed
    /// amplitude keeps a positive magnitude factor.
    pub max_walk_time: f64,
}

impl SpaceSpec {
    pub fn binary(n: usize) -> Result<Self> {
        let spec = SpaceSpec::Binary { n };
        spec.validate()?;
        Ok(spec)
    }

    pub fn integer(n: usize, k: usize) -> Result<Self> {
        let spec = SpaceSpec::Integer { n, k };
        spec.validate()?;
        Ok(spec)
    }

    pub fn permutation(n: usize) -> Result<Self> {
        let spec = SpaceSpec::Permutation { n };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if n == 0 {
            return Err(Error::Config("space requires n >= 1".into()));
        }
        if let SpaceSpec::Integer { k, .. } = self {
            if *k < 2 {
                return Err(Error::Config("integer space requires k >= 2".into()));
            }
        }
        self.checked_cardinality().ok_or_else(|| {
            Error::Config(format!("cardinality of {self:?} overflows the address space"))
        })?;
        Ok(())
    }

    /// Number of decision variables `n`.
    pub fn num_vars(&self) -> usize {
        match *self {
            SpaceSpec::Binary { n } | SpaceSpec::Integer { n, .. } | SpaceSpec::Permutation { n } => n,
        }
    }

    /// Number of values a single variable ranges over.
    pub fn radix(&self) -> usize {
        match *self {
            SpaceSpec::Binary { .. } => 2,
            SpaceSpec::Integer { k, .. } => k,
            SpaceSpec::Permutation { n } => n,
        }
    }

    fn checked_cardinality(&self) -> Option<usize> {
        match *self {
            SpaceSpec::Binary { n } => 1usize.checked_shl(u32::try_from(n).ok()?),
            SpaceSpec::Integer { n, k } => {
                let mut acc = 1usize;
                for _ in 0..n {
                    acc = acc.checked_mul(k)?;
                }
                Some(acc)
            }
            SpaceSpec::Permutation { n } => {
                let mut acc = 1usize;
                for m in 2..=n {
                    acc = acc.checked_mul(m)?;
                }
                Some(acc)
            }
        }
    }

    /// Count of feasible solutions `N`.
    pub fn cardinality(&self) -> usize {
        self.checked_cardinality()
            .expect("space cardinality overflows the address space")
    }

    /// Mixing-graph degree `d`: the number of available single moves.
    pub fn degree(&self) -> usize {
        match *self {
            SpaceSpec::Binary { n } => n,
            SpaceSpec::Integer { n, k } => n * (k - 1),
            SpaceSpec::Permutation { n } => n * (n - 1) / 2,
        }
    }

    /// Mixing-graph diameter `D`.
    pub fn diameter(&self) -> usize {
        match *self {
            SpaceSpec::Binary { n } | SpaceSpec::Integer { n, .. } => n,
            SpaceSpec::Permutation { n } => n - 1,
        }
    }

    /// Walk-time window upper bound (see the mixers module).
    pub fn max_walk_time(&self) -> f64 {
        match *self {
            SpaceSpec::Binary { .. } => std::f64::consts::FRAC_PI_2,
            SpaceSpec::Integer { k, .. } => std::f64::consts::PI / k as f64,
            SpaceSpec::Permutation { n } => 2.0 / n as f64,
        }
    }

    pub fn profile(&self) -> DistanceProfile {
        DistanceProfile {
            degree: self.degree(),
            diameter: self.diameter(),
            max_walk_time: self.max_walk_time(),
        }
    }

    pub fn validate_solution(&self, sol: &Solution) -> Result<()> {
        let n = self.num_vars();
        if sol.vars.len() != n {
            return Err(Error::InvalidSolution(format!(
                "expected {n} variables, got {}",
                sol.vars.len()
            )));
        }
        let k = self.radix();
        for (j, &v) in sol.vars.iter().enumerate() {
            if v >= k {
                return Err(Error::InvalidSolution(format!(
                    "variable {j} has value {v}, outside [0, {k})"
                )));
            }
        }
        if matches!(self, SpaceSpec::Permutation { .. }) {
            let mut seen = vec![false; n];
            for &v in &sol.vars {
                if seen[v] {
                    return Err(Error::InvalidSolution(format!("repeated value {v}")));
                }
                seen[v] = true;
            }
        }
        Ok(())
    }

    /// Decodes a dense index into the solution it addresses.
    ///
    /// Binary/integer spaces use the base-`k` positional code with `vars[0]`
    /// least significant; permutations use the factorial-base Lehmer code,
    /// which enumerates them in lexicographic order.
    pub fn index_to_solution(&self, idx: usize) -> Result<Solution> {
        let n_total = self.cardinality();
        if idx >= n_total {
            return Err(Error::IndexOutOfRange { idx, n: n_total });
        }
        Ok(self.decode_unchecked(idx))
    }

    pub(crate) fn decode_unchecked(&self, idx: usize) -> Solution {
        match *self {
            SpaceSpec::Binary { n } => {
                let vars = (0..n).map(|j| (idx >> j) & 1).collect();
                Solution { vars }
            }
            SpaceSpec::Integer { n, k } => {
                let mut rem = idx;
                let mut vars = Vec::with_capacity(n);
                for _ in 0..n {
                    vars.push(rem % k);
                    rem /= k;
                }
                Solution { vars }
            }
            SpaceSpec::Permutation { n } => {
                // Factorial-base digits, most significant first.
                let mut digits = vec![0usize; n];
                let mut rem = idx;
                for j in (0..n).rev() {
                    let f = factorial(j);
                    digits[n - 1 - j] = rem / f;
                    rem %= f;
                }
                let mut avail: Vec<usize> = (0..n).collect();
                let vars = digits.iter().map(|&d| avail.remove(d)).collect();
                Solution { vars }
            }
        }
    }

    /// Inverse of [`SpaceSpec::index_to_solution`].
    pub fn solution_to_index(&self, sol: &Solution) -> Result<usize> {
        self.validate_solution(sol)?;
        Ok(self.encode_unchecked(sol))
    }

    pub(crate) fn encode_unchecked(&self, sol: &Solution) -> usize {
        match *self {
            SpaceSpec::Binary { .. } => sol
                .vars
                .iter()
                .enumerate()
                .fold(0usize, |acc, (j, &v)| acc | (v << j)),
            SpaceSpec::Integer { k, .. } => sol
                .vars
                .iter()
                .rev()
                .fold(0usize, |acc, &v| acc * k + v),
            SpaceSpec::Permutation { n } => {
                let mut idx = 0usize;
                for j in 0..n {
                    let digit = sol.vars[j + 1..]
                        .iter()
                        .filter(|&&m| m < sol.vars[j])
                        .count();
                    idx += digit * factorial(n - 1 - j);
                }
                idx
            }
        }
    }

    /// Mixing-graph distance between two solutions: the Hamming distance for
    /// binary/integer spaces, the minimum transposition count (`n` minus the
    /// cycle count of the relative permutation) for permutation spaces.
    pub fn distance(&self, u: &Solution, v: &Solution) -> Result<usize> {
        self.validate_solution(u)?;
        self.validate_solution(v)?;
        Ok(self.distance_unchecked(u, v))
    }

    pub(crate) fn distance_unchecked(&self, u: &Solution, v: &Solution) -> usize {
        match *self {
            SpaceSpec::Binary { .. } | SpaceSpec::Integer { .. } => u
                .vars
                .iter()
                .zip(&v.vars)
                .filter(|(a, b)| a != b)
                .count(),
            SpaceSpec::Permutation { n } => {
                // Relative permutation pi = v o u^-1, distance = n - #cycles(pi).
                let mut pi = vec![0usize; n];
                for j in 0..n {
                    pi[u.vars[j]] = v.vars[j];
                }
                let mut seen = vec![false; n];
                let mut cycles = 0;
                for start in 0..n {
                    if seen[start] {
                        continue;
                    }
                    cycles += 1;
                    let mut cur = start;
                    while !seen[cur] {
                        seen[cur] = true;
                        cur = pi[cur];
                    }
                }
                n - cycles
            }
        }
    }

    /// Size of the distance-`h` subset around any solution. Independent of
    /// the anchor because the mixing graphs are vertex transitive.
    pub fn subset_size(&self, h: usize) -> Result<u64> {
        let diameter = self.diameter();
        if h > diameter {
            return Err(Error::DistanceOutOfRange { h, diameter });
        }
        let count = match *self {
            SpaceSpec::Binary { n } => binomial(n, h),
            SpaceSpec::Integer { n, k } => {
                let mut acc = binomial(n, h);
                for _ in 0..h {
                    acc = acc.and_then(|a| a.checked_mul(k as u64 - 1));
                }
                acc
            }
            SpaceSpec::Permutation { n } => stirling_first_unsigned(n, n - h),
            }
        .ok_or_else(|| Error::Numeric("subset size overflows u64".into()))?;
        Ok(count)
    }

    /// Draws a uniform sample from the distance-`h` subset around `u`.
    ///
    /// Binary/integer: `h` positions chosen without replacement, each moved
    /// to a uniformly random different value. Permutations: a uniform
    /// relative permutation with exactly `n - h` cycles is sampled via the
    /// Stirling-number insertion recurrence and composed onto `u`. (A
    /// rejection scheme that replays `h` random transpositions is *not*
    /// uniform over the subset: it weights each target by its count of
    /// minimal transposition factorizations, which varies with cycle type.)
    pub fn sample_at_distance<R: Rng + ?Sized>(
        &self,
        u: &Solution,
        h: usize,
        rng: &mut R,
    ) -> Result<Solution> {
        let diameter = self.diameter();
        if h > diameter {
            return Err(Error::DistanceOutOfRange { h, diameter });
        }
        if h == 0 {
            return Ok(u.clone());
        }
        let n = self.num_vars();
        match *self {
            SpaceSpec::Binary { .. } | SpaceSpec::Integer { .. } => {
                let k = self.radix();
                let mut sol = u.clone();
                for j in rand::seq::index::sample(rng, n, h) {
                    let shift = rng.gen_range(1..k);
                    sol.vars[j] = (sol.vars[j] + shift) % k;
                }
                Ok(sol)
            }
            SpaceSpec::Permutation { .. } => {
                let rel = sample_perm_with_cycles(n, n - h, rng);
                let vars = u.vars.iter().map(|&v| rel[v]).collect();
                Ok(Solution { vars })
            }
        }
    }

    /// Draws a uniform sample from the whole space.
    pub fn sample_uniform<R: Rng + ?Sized>(&self, rng: &mut R) -> Solution {
        match *self {
            SpaceSpec::Binary { n } => Solution {
                vars: (0..n).map(|_| rng.gen_range(0..2usize)).collect(),
            },
            SpaceSpec::Integer { n, k } => Solution {
                vars: (0..n).map(|_| rng.gen_range(0..k)).collect(),
            },
            SpaceSpec::Permutation { n } => {
                use rand::seq::SliceRandom;
                let mut vars: Vec<usize> = (0..n).collect();
                vars.shuffle(rng);
                Solution { vars }
            }
        }
    }
}

pub(crate) fn factorial(n: usize) -> usize {
    (2..=n).product::<usize>().max(1)
}

fn binomial(n: usize, h: usize) -> Option<u64> {
    if h > n {
        return Some(0);
    }
    let h = h.min(n - h);
    let mut acc = 1u64;
    for i in 0..h {
        acc = acc.checked_mul((n - i) as u64)?;
        acc /= (i + 1) as u64;
    }
    Some(acc)
}

/// Uniform permutation of `{0..n-1}` with exactly `m` cycles, built by the
/// insertion construction behind `c(n, m) = c(n-1, m-1) + (n-1) c(n-1, m)`:
/// the last element either opens a new cycle or splices after a uniformly
/// chosen earlier element, with odds given by the two recurrence terms.
fn sample_perm_with_cycles<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Vec<usize> {
    debug_assert!(m >= 1 && m <= n);
    // Stirling table in f64; only probability ratios are needed.
    let mut table = vec![vec![0.0f64; n + 1]; n + 1];
    table[0][0] = 1.0;
    for i in 1..=n {
        for c in 1..=i {
            table[i][c] = table[i - 1][c - 1] + (i - 1) as f64 * table[i - 1][c];
        }
    }
    let mut new_cycle = vec![false; n];
    let mut cycles_left = m;
    for i in (1..=n).rev() {
        let w_new = if cycles_left >= 1 { table[i - 1][cycles_left - 1] } else { 0.0 };
        let w_ins = (i - 1) as f64 * table[i - 1][cycles_left];
        if rng.gen_range(0.0..w_new + w_ins) < w_new {
            new_cycle[i - 1] = true;
            cycles_left -= 1;
        }
    }
    let mut perm = vec![0usize; n];
    for i in 0..n {
        if new_cycle[i] {
            perm[i] = i;
        } else {
            let j = rng.gen_range(0..i);
            perm[i] = perm[j];
            perm[j] = i;
        }
    }
    perm
}

/// Unsigned Stirling numbers of the first kind: permutations of `n` elements
/// with exactly `m` cycles.
fn stirling_first_unsigned(n: usize, m: usize) -> Option<u64> {
    if m > n {
        return Some(0);
    }
    let mut row = vec![0u64; n + 1];
    row[0] = 1;
    for i in 0..n {
        let mut next = vec![0u64; n + 1];
        for c in 0..=i {
            if row[c] == 0 {
                continue;
            }
            next[c + 1] = next[c + 1].checked_add(row[c])?;
            next[c] = next[c].checked_add(row[c].checked_mul(i as u64)?)?;
        }
        row = next;
    }
    Some(row[m])
}
