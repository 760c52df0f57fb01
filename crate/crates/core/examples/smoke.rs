//! Quick end-to-end reproduction checks while developing.

use qwoa::engine::{self, RunOptions, RunParams};
use qwoa::instances;
use qwoa::mixers::Mixer;
use qwoa::problems::{self, PenaltyVector, ProblemInstance, Sense, StatsMode};

fn main() {
    let t0 = std::time::Instant::now();

    // Unconstrained CFLP, p = 20: expect final optimal probability ~ 0.30.
    let ProblemInstance::Cflp(cflp) = instances::builtin("cflp-n12k3").unwrap() else {
        panic!()
    };
    let space = cflp.space();
    let values = problems::build_objective_table(&space, |s| cflp.base_objective(s));
    let (mean, sigma) = problems::stats_of_table(&values);
    println!("cflp: N={} mean={mean:.3} sigma={sigma:.3}", space.cardinality());
    let optimum =
        instances::brute_force_optimum(&space, |s| cflp.base_objective(s), Sense::Minimize)
            .unwrap();
    println!("cflp optimum {} at {:?}", optimum.value, optimum.solutions);
    let mixer = Mixer::for_space(space).unwrap();
    let rp = instances::reference_params("cflp-n12k3-unconstrained-p20").unwrap();
    let params = RunParams::new(rp.gamma, rp.t, rp.beta, rp.p, Sense::Minimize, sigma).unwrap();
    let trace = engine::prepare_amplified(
        &mixer,
        &values,
        &params,
        &RunOptions::new(&optimum.solutions),
        |_, _| {},
    )
    .unwrap();
    for m in &trace.per_iteration {
        if m.iter % 5 == 4 || m.iter == 0 || m.iter + 1 == rp.p {
            println!(
                "  iter {:>2}: P(opt) = {:.4}  E = {:.2}",
                m.iter, m.optimal_probability, m.expectation
            );
        }
    }
    println!("cflp done in {:?}\n", t0.elapsed());

    // Maxcut, p = 10 and p = 100 with the reference parameters: expect a
    // strictly increasing optimal-pair probability.
    let ProblemInstance::Maxcut(mc) = instances::builtin("maxcut-n18").unwrap() else {
        panic!()
    };
    let space = mc.space();
    let values = problems::build_objective_table(&space, |s| mc.objective(s));
    let stats = problems::objective_stats(&space, |s| mc.objective(s), StatsMode::Exact).unwrap();
    println!("maxcut: mean={:.4} sigma={:.4}", stats.mean, stats.stddev);
    let optimum = instances::brute_force_optimum(&space, |s| mc.objective(s), Sense::Maximize).unwrap();
    println!("maxcut optimum {:.6} at {:?}", optimum.value, optimum.solutions);
    let mixer = Mixer::for_space(space).unwrap();
    for name in ["maxcut-n18-p10", "maxcut-n18-p100"] {
        let rp = instances::reference_params(name).unwrap();
        let params =
            RunParams::new(rp.gamma, rp.t, rp.beta, rp.p, Sense::Maximize, stats.stddev).unwrap();
        let trace = engine::prepare_amplified(
            &mixer,
            &values,
            &params,
            &RunOptions::new(&optimum.solutions),
            |_, _| {},
        )
        .unwrap();
        let probs: Vec<f64> = trace.per_iteration.iter().map(|m| m.optimal_probability).collect();
        let monotone = probs.windows(2).all(|w| w[1] > w[0]);
        println!(
            "{name}: final P(opt) = {:.4}, strictly increasing = {monotone}",
            probs.last().unwrap()
        );
        if !monotone {
            for (i, p) in probs.iter().enumerate() {
                println!("   iter {i}: {p:.6}");
            }
        }
    }
    println!("total {:?}", t0.elapsed());

    // MIS quick check with fixed penalty.
    let ProblemInstance::Mis(mis) = instances::builtin("mis-n18").unwrap() else { panic!() };
    let space = mis.space();
    let pen = PenaltyVector::new(vec![1.5, 0.0]);
    let values = problems::build_objective_table(&space, |s| mis.objective(s, &pen));
    let (_, sigma) = problems::stats_of_table(&values);
    let optimum = instances::brute_force_optimum(&space, |s| mis.objective(s, &pen), Sense::Maximize).unwrap();
    let mixer = Mixer::for_space(space).unwrap();
    let rp = instances::reference_params("mis-n18-fixed-p10").unwrap();
    let params = RunParams::new(rp.gamma, rp.t, rp.beta, rp.p, Sense::Maximize, sigma).unwrap();
    let trace = engine::prepare_amplified(&mixer, &values, &params, &RunOptions::new(&optimum.solutions), |_, _| {}).unwrap();
    println!(
        "mis fixed-penalty reference run: final P(opt) = {:.4}",
        trace.final_metrics().unwrap().optimal_probability
    );
    println!("total {:?}", t0.elapsed());
}
