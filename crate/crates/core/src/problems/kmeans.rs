use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problems::{StatsMode, EXACT_STATS_LIMIT};
use crate::space::{Solution, SpaceSpec};

/// k-means clustering: allocate `n` data points to `k` clusters minimising
/// within-cluster squared spread.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "KMeansRaw")]
pub struct KMeansInstance {
    n: usize,
    k: usize,
    points: Vec<Vec<f64>>,
    #[serde(skip)]
    sq_norms: Vec<f64>,
}

#[derive(Deserialize)]
struct KMeansRaw {
    n: usize,
    k: usize,
    points: Vec<Vec<f64>>,
}

impl TryFrom<KMeansRaw> for KMeansInstance {
    type Error = Error;

    fn try_from(raw: KMeansRaw) -> Result<Self> {
        KMeansInstance::new(raw.n, raw.k, raw.points)
    }
}

/// Per-cluster-count mean objective values, used by the objective transform
/// that aligns solutions with different numbers of non-empty clusters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterMeans {
    /// `means[j - 1]` is the mean objective over solutions with exactly `j`
    /// distinct clusters.
    pub means: Vec<f64>,
    pub method: StatsMode,
    /// Cluster counts (1-based) whose sample bucket fell short of the target;
    /// their entries are partial estimates.
    pub starved: Vec<usize>,
}

impl KMeansInstance {
    pub fn new(n: usize, k: usize, points: Vec<Vec<f64>>) -> Result<Self> {
        let mut inst = KMeansInstance { n, k, points, sq_norms: Vec::new() };
        inst.validate()?;
        inst.cache_norms();
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 2 || self.n < self.k {
            return Err(Error::Config("k-means requires n >= k >= 2".into()));
        }
        if self.points.len() != self.n {
            return Err(Error::Config("point count does not match n".into()));
        }
        let dim = self.points[0].len();
        if self.points.iter().any(|p| p.len() != dim) {
            return Err(Error::Config("points have mixed dimensions".into()));
        }
        Ok(())
    }

    fn cache_norms(&mut self) {
        self.sq_norms = self
            .points
            .iter()
            .map(|p| p.iter().map(|x| x * x).sum())
            .collect();
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn space(&self) -> SpaceSpec {
        SpaceSpec::Integer { n: self.n, k: self.k }
    }

    /// Sum over clusters of the mean pairwise squared distance, ordered
    /// pairs; equals twice the squared deviation from the centroid. Empty
    /// clusters contribute zero.
    pub fn objective(&self, sol: &Solution) -> f64 {
        if self.sq_norms.is_empty() {
            return self.objective_pairwise(sol);
        }
        let dim = self.points[0].len();
        let mut counts = vec![0usize; self.k];
        let mut sums = vec![0.0f64; self.k * dim];
        let mut sq = vec![0.0f64; self.k];
        for (j, &c) in sol.vars.iter().enumerate() {
            counts[c] += 1;
            sq[c] += self.sq_norms[j];
            let slot = &mut sums[c * dim..(c + 1) * dim];
            for (acc, &x) in slot.iter_mut().zip(&self.points[j]) {
                *acc += x;
            }
        }
        let mut total = 0.0;
        for c in 0..self.k {
            if counts[c] == 0 {
                continue;
            }
            let centroid_sq: f64 = sums[c * dim..(c + 1) * dim].iter().map(|x| x * x).sum();
            total += 2.0 * (sq[c] - centroid_sq / counts[c] as f64);
        }
        total
    }

    /// The definitional form: per cluster, the sum of squared distances over
    /// ordered point pairs divided by the cluster size.
    pub fn objective_pairwise(&self, sol: &Solution) -> f64 {
        let mut total = 0.0;
        for c in 0..self.k {
            let members: Vec<usize> = (0..self.n).filter(|&j| sol.vars[j] == c).collect();
            if members.is_empty() {
                continue;
            }
            let mut cluster = 0.0;
            for &a in &members {
                for &b in &members {
                    cluster += self
                        .points[a]
                        .iter()
                        .zip(&self.points[b])
                        .map(|(x, y)| (x - y) * (x - y))
                        .sum::<f64>();
                }
            }
            total += cluster / members.len() as f64;
        }
        total
    }

    /// Number of distinct clusters used by a solution.
    pub fn cluster_count(&self, sol: &Solution) -> usize {
        let mut used = vec![false; self.k];
        for &c in &sol.vars {
            used[c] = true;
        }
        used.iter().filter(|&&u| u).count()
    }

    /// Objective shifted so that solutions with any cluster count share the
    /// mean of the full-`k` stratum: `f(x) - (means[c(x)] - means[k])`.
    pub fn transformed_objective(&self, sol: &Solution, means: &[f64]) -> f64 {
        let c = self.cluster_count(sol);
        self.objective(sol) - (means[c - 1] - means[self.k - 1])
    }

    /// Per-cluster-count mean objective values.
    ///
    /// Exact mode enumerates the space; sampled mode draws uniform solutions
    /// and buckets them by cluster count until every bucket reaches
    /// `target_per_bucket` or the draw budget runs out, flagging buckets that
    /// fell short.
    pub fn cluster_means(&self, mode: StatsMode) -> Result<ClusterMeans> {
        let space = self.space();
        match mode {
            StatsMode::Exact => {
                let n = space.cardinality();
                if n > EXACT_STATS_LIMIT {
                    return Err(Error::Unsupported(format!(
                        "exact cluster means require N <= {EXACT_STATS_LIMIT}, got {n}"
                    )));
                }
                let mut sums = vec![0.0f64; self.k];
                let mut counts = vec![0u64; self.k];
                crate::problems::for_each_solution_in_range(&space, 0..n, |_, sol| {
                    let c = self.cluster_count(sol);
                    sums[c - 1] += self.objective(sol);
                    counts[c - 1] += 1;
                });
                let means = sums
                    .iter()
                    .zip(&counts)
                    .map(|(&s, &c)| if c > 0 { s / c as f64 } else { 0.0 })
                    .collect();
                Ok(ClusterMeans { means, method: StatsMode::Exact, starved: Vec::new() })
            }
            StatsMode::Sampled { count: target, seed } => {
                use rand::SeedableRng;
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                let max_draws = target.saturating_mul(200);
                let mut sums = vec![0.0f64; self.k];
                let mut counts = vec![0u64; self.k];
                let mut draws = 0usize;
                while draws < max_draws && counts.iter().any(|&c| (c as usize) < target) {
                    let sol = space.sample_uniform(&mut rng);
                    let c = self.cluster_count(&sol);
                    if (counts[c - 1] as usize) < target {
                        sums[c - 1] += self.objective(&sol);
                        counts[c - 1] += 1;
                    }
                    draws += 1;
                }
                let means = sums
                    .iter()
                    .zip(&counts)
                    .map(|(&s, &c)| if c > 0 { s / c as f64 } else { 0.0 })
                    .collect();
                let starved = counts
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| (c as usize) < target)
                    .map(|(i, _)| i + 1)
                    .collect();
                Ok(ClusterMeans { means, method: mode, starved })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn toy(points: Vec<Vec<f64>>, k: usize) -> KMeansInstance {
        let n = points.len();
        KMeansInstance::new(n, k, points).unwrap()
    }

    #[test]
    fn identical_points_in_one_cluster_score_zero() {
        let inst = toy(vec![vec![1.0, 2.0], vec![1.0, 2.0]], 2);
        assert_eq!(inst.objective(&Solution::new(vec![0, 0])), 0.0);
    }

    #[test]
    fn two_point_cluster_scores_squared_distance() {
        let inst = toy(vec![vec![0.0, 0.0], vec![3.0, 4.0], vec![9.0, 9.0]], 2);
        // Points 0 and 1 share a cluster, point 2 is alone.
        let v = inst.objective(&Solution::new(vec![0, 0, 1]));
        assert!((v - 25.0).abs() < 1e-12);
    }

    #[test]
    fn pairwise_form_matches_centroid_form() {
        // Fix the ordered-pair convention on a 3-point case, then spot-check
        // random instances.
        let inst = toy(vec![vec![0.0], vec![1.0], vec![5.0]], 2);
        for assign in [[0, 0, 0], [0, 0, 1], [0, 1, 0], [0, 1, 1]] {
            let sol = Solution::new(assign.to_vec());
            assert!((inst.objective(&sol) - inst.objective_pairwise(&sol)).abs() < 1e-9);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let points: Vec<Vec<f64>> = (0..7)
            .map(|_| (0..3).map(|_| rng.gen_range(0.0..10.0)).collect())
            .collect();
        let inst = toy(points, 3);
        let space = inst.space();
        for _ in 0..50 {
            let sol = space.sample_uniform(&mut rng);
            let a = inst.objective(&sol);
            let b = inst.objective_pairwise(&sol);
            assert!((a - b).abs() <= 1e-9 * b.abs().max(1.0));
        }
    }

    #[test]
    fn relabeling_clusters_preserves_objective() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let points: Vec<Vec<f64>> = (0..8)
            .map(|_| (0..4).map(|_| rng.gen_range(0.0..10.0)).collect())
            .collect();
        let inst = toy(points, 3);
        let space = inst.space();
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        for _ in 0..1000 {
            let sol = space.sample_uniform(&mut rng);
            let base = inst.objective(&sol);
            for p in &perms {
                let relabeled = Solution::new(sol.vars.iter().map(|&c| p[c]).collect());
                assert!((inst.objective(&relabeled) - base).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn transform_is_identity_on_full_k_solutions() {
        let inst = toy(vec![vec![0.0], vec![2.0], vec![5.0], vec![6.0]], 3);
        let means = inst.cluster_means(StatsMode::Exact).unwrap().means;
        let sol = Solution::new(vec![0, 1, 2, 2]);
        assert_eq!(inst.cluster_count(&sol), 3);
        assert!((inst.transformed_objective(&sol, &means) - inst.objective(&sol)).abs() < 1e-12);
    }

    #[test]
    fn transform_aligns_stratum_means() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let points: Vec<Vec<f64>> = (0..6)
            .map(|_| (0..2).map(|_| rng.gen_range(0.0..10.0)).collect())
            .collect();
        let inst = toy(points, 3);
        let means = inst.cluster_means(StatsMode::Exact).unwrap().means;
        let space = inst.space();
        let mut sums = vec![0.0f64; 3];
        let mut counts = vec![0u64; 3];
        for idx in 0..space.cardinality() {
            let sol = space.index_to_solution(idx).unwrap();
            let c = inst.cluster_count(&sol);
            sums[c - 1] += inst.transformed_objective(&sol, &means);
            counts[c - 1] += 1;
        }
        for c in 0..3 {
            let stratum_mean = sums[c] / counts[c] as f64;
            assert!(
                (stratum_mean - means[2]).abs() < 1e-9,
                "stratum {} mean {} vs {}",
                c + 1,
                stratum_mean,
                means[2]
            );
        }
    }

    #[test]
    fn cluster_means_trivial_two_points() {
        let inst = toy(vec![vec![0.0], vec![4.0]], 2);
        let cm = inst.cluster_means(StatsMode::Exact).unwrap();
        // Single-cluster solutions are (0,0) and (1,1), each scoring 2*d^2/... :
        // two points in one cluster give squared distance 16.
        assert!((cm.means[0] - 16.0).abs() < 1e-12);
        assert!((cm.means[1] - 0.0).abs() < 1e-12);
    }

    #[test]
    fn bucket_recombination_recovers_population_mean() {
        let inst = toy(vec![vec![0.0], vec![1.0], vec![7.0]], 2);
        let cm = inst.cluster_means(StatsMode::Exact).unwrap();
        let space = inst.space();
        let n = space.cardinality() as f64;
        // Bucket sizes: 2 single-cluster, 6 two-cluster solutions.
        let recombined = (2.0 * cm.means[0] + 6.0 * cm.means[1]) / n;
        let stats = crate::problems::objective_stats(
            &space,
            |s| inst.objective(s),
            StatsMode::Exact,
        )
        .unwrap();
        assert!((recombined - stats.mean).abs() < 1e-12);
    }

    #[test]
    fn sampled_cluster_means_agree_with_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let points: Vec<Vec<f64>> = (0..7)
            .map(|_| (0..3).map(|_| rng.gen_range(0.0..10.0)).collect())
            .collect();
        let inst = toy(points, 3);
        let exact = inst.cluster_means(StatsMode::Exact).unwrap();
        let sampled = inst
            .cluster_means(StatsMode::Sampled { count: 4000, seed: 3 })
            .unwrap();
        for j in 1..=3 {
            if sampled.starved.contains(&j) {
                continue;
            }
            // Crude 3-standard-error budget using the population spread.
            let stats = crate::problems::objective_stats(&inst.space(), |s| inst.objective(s), StatsMode::Exact)
                .unwrap();
            let tol = 3.0 * stats.stddev / (4000.0f64).sqrt();
            assert!(
                (exact.means[j - 1] - sampled.means[j - 1]).abs() < tol,
                "bucket {j}: exact {} sampled {}",
                exact.means[j - 1],
                sampled.means[j - 1]
            );
        }
    }
}
