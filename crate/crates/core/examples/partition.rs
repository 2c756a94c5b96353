//! The full robust-partition pipeline on a random tournament, followed by
//! every layer of independent verification.

use tournament_partition::partitioner::{
    complete_partition, partition_robust, CompletionRule, PipelineParams,
};
use tournament_partition::verify::{
    audit_certificate_ledger, audit_safety_direct, check_partition,
};
use tournament_partition::{Tournament, VertexSet};

fn main() {
    let n = 800;
    let t = Tournament::random(n, 26);
    let mut params = PipelineParams::new(1, 2, 2);
    params.seed = 26;

    let cert = match partition_robust(&t, &params) {
        Ok(cert) => cert,
        Err(f) => {
            // instances without room fail with a named stage and witness
            println!("pipeline failed at {}: {}", f.stage, f.reason);
            return;
        }
    };
    println!(
        "classes: {:?} (n/m cap {})",
        cert.classes.iter().map(|c| c.len()).collect::<Vec<_>>(),
        n / cert.m
    );
    println!(
        "coloured per stage: family {}, securing {}, short paths {} + {}, long {}, exceptional {}",
        cert.counts.domination,
        cert.counts.claim3 - cert.counts.domination,
        cert.counts.claim4_short,
        cert.counts.claim4_1,
        cert.counts.claim4_3,
        cert.counts.claim5,
    );
    println!("exceptional-case tallies: {:?}", cert.counts.claim5_cases);

    // the robustness property: every class stays strongly k-connected under
    // any augmentation from the leftover vertices (sampled)
    let audit = check_partition(&t, &cert, 64, 26);
    println!(
        "partition audit: {} ({} R-sets sampled)",
        if audit.passed() { "pass" } else { "FAIL" },
        audit.samples_drawn
    );

    // the recorded safety certificates, re-validated bottom-up
    let ledger = audit_certificate_ledger(&t, &cert);
    println!("ledger audit: {}", if ledger.passed() { "pass" } else { "FAIL" });

    // definition-level safety, no certificates trusted
    let direct = audit_safety_direct(&t, &cert, 8, 26);
    println!("direct safety audit: {}", if direct.passed() { "pass" } else { "FAIL" });

    // distributing the leftovers keeps every completed class connected
    let full = complete_partition(&cert, CompletionRule::RoundRobin);
    for (j, class) in full.iter().enumerate() {
        let set = VertexSet::from_iter(n, class.iter().copied());
        println!(
            "completed class {}: {} vertices, strongly connected = {}",
            j + 1,
            class.len(),
            t.strongly_connected_within(&set)
        );
    }
}
