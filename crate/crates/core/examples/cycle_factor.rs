//! Hamilton cycles, two-cycle splits, and prescribed-length cycle factors.

use tournament_partition::connectivity::is_strongly_k_connected;
use tournament_partition::cycles::{
    adjust_lengths, complete_cycle_factor, cycle_factor, hamilton_cycle, two_cycles,
    CycleFactorParams, DEFAULT_SPLIT_BUDGET,
};
use tournament_partition::partitioner::{partition_robust, PipelineParams};
use tournament_partition::verify::audit_cycle_plan;
use tournament_partition::Tournament;

fn main() {
    // every strongly connected tournament closes into a Hamilton cycle
    let t = Tournament::random(60, 3);
    let cycle = hamilton_cycle(&t).unwrap();
    println!("hamilton cycle on n=60 starts {:?}...", &cycle[..8]);

    // strongly 2-connected tournaments split into two cycles of any
    // admissible lengths; the 7-point quadratic-residue tournament is the
    // lone exception
    let mut seed = 0;
    let t9 = loop {
        let cand = Tournament::random(9, seed);
        if is_strongly_k_connected(&cand, 2) {
            break cand;
        }
        seed += 1;
    };
    for l in 3..=6 {
        let (a, b) = two_cycles(&t9, l).unwrap();
        println!("n=9 split into lengths {} + {}: {:?} / {:?}", l, 9 - l, a, b);
    }
    let q7 = Tournament::paley(7).unwrap();
    println!("paley(7) split attempt: {}", two_cycles(&q7, 3).unwrap_err());

    // length adjustment: short prescriptions borrow from the largest class
    let plan = adjust_lengths(100, 3, &[90, 7, 3]).unwrap();
    println!(
        "adjusting (90, 7, 3) for t=3: raised positions {:?}, adjusted {:?}",
        plan.j_tilde, plan.adjusted
    );

    // the full pipeline gates on a robust 2-connected partition, which needs
    // far more room than desk-scale instances offer; the failure names the
    // stage rather than guessing
    let t600 = Tournament::random(600, 4);
    match cycle_factor(&t600, &[300, 300], &CycleFactorParams::default()) {
        Ok(_) => println!("n=600 cycle factor succeeded"),
        Err(e) => println!("n=600 cycle factor: {}", e),
    }

    // with a robust partition injected (k=1 fits at n=2000), the rest of the
    // construction runs: extension, split, merge, and Hamilton closure
    let n = 2000;
    let big = Tournament::random(n, 13);
    let mut pp = PipelineParams::new(1, 2, 8);
    pp.seed = 13;
    let cert = partition_robust(&big, &pp).unwrap();
    let plan = adjust_lengths(n, 2, &[1900, 100]).unwrap();
    let out = complete_cycle_factor(&big, plan, cert, DEFAULT_SPLIT_BUDGET).unwrap();
    println!(
        "injected completion: cycle lengths {:?}, helper cycle of {} merged through vertex {}",
        out.cycles.iter().map(|c| c.len()).collect::<Vec<_>>(),
        out.helper_cycles[0].1.len(),
        out.merge_vertices[0].1
    );
    let audit = audit_cycle_plan(&big, &out);
    println!("cycle plan audit: {}", if audit.passed() { "pass" } else { "FAIL" });
}
