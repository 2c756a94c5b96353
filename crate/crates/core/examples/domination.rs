//! Greedy transitive dominating sets and the repeated extraction into a
//! disjoint family, with the independent lemma audit.

use tournament_partition::domination::{
    build_domination_family, in_dominating_set, out_dominating_set,
};
use tournament_partition::verify::{audit_dom_set, audit_domination_family};
use tournament_partition::{Tournament, VertexSet};

fn main() {
    let t = Tournament::random(200, 5);
    let empty = VertexSet::new(200);

    // one extraction: a transitive chain with the anchor at its sink, a
    // shrinking common in-neighbourhood, and a halving trace
    let set = out_dominating_set(&t, 17, 6, &empty);
    println!("out-dominating chain (source to sink): {:?}", set.chain);
    println!("exceptional set: {:?}", set.exceptional.to_vec());
    println!("common-in-neighbourhood trace: {:?}", set.trace);
    let audit = audit_dom_set(&t, &set, 6);
    println!("lemma audit: {}", if audit.passed() { "pass" } else { "FAIL" });

    // the mirror extraction anchors a source instead
    let set = in_dominating_set(&t, 17, 6, &empty);
    println!("in-dominating chain: {:?}", set.chain);
    assert!(audit_dom_set(&t, &set, 6).passed());

    // the full family: disjoint out- and in-dominating sets anchored at the
    // extreme-degree seeds, normalised so |E_A| <= |E_B|
    let big = Tournament::random(800, 26);
    let fam = build_domination_family(&big, 1, 2, 2).unwrap();
    println!(
        "family: c = {}, x-seeds {:?}, y-seeds {:?}, swapped = {}",
        fam.c, fam.x_seeds, fam.y_seeds, fam.swapped
    );
    for (i, s) in fam.a_sets.iter().enumerate() {
        println!("  A_{}: chain {:?}, |E| = {}", i + 1, s.chain, s.exceptional.len());
    }
    for (i, s) in fam.b_sets.iter().enumerate() {
        println!("  B_{}: chain {:?}, |E| = {}", i + 1, s.chain, s.exceptional.len());
    }
    let frame = if fam.swapped { big.reverse() } else { big };
    let audit = audit_domination_family(&frame, &fam);
    println!(
        "family audit over {} checks: {}",
        audit.checks.len(),
        if audit.passed() { "pass" } else { "FAIL" }
    );
}
