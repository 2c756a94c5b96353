//! Backwards-transitive reduction and robust reach sets, with the exhaustive
//! deletion-set audit.

use tournament_partition::linkage::{
    bt_fixture, reach_sets, reduce_to_backwards_transitive, BtPath,
};
use tournament_partition::tournament::DirPath;
use tournament_partition::verify::audit_reach_sets;
use tournament_partition::Tournament;

fn main() {
    // a path through a transitive stretch collapses along its chords
    let t = Tournament::transitive(6);
    let p = DirPath::new(&t, vec![0, 1, 2, 3, 4, 5]).unwrap();
    let reduced = reduce_to_backwards_transitive(&t, &p);
    println!("reducing 0..5 in a transitive tournament: {:?}", reduced.vertices());

    // a fixture of three backwards-transitive paths with random cross edges
    let (t, raw) = bt_fixture(&[4, 5, 4], 8);
    let paths: Vec<BtPath> = raw
        .iter()
        .map(|p| BtPath::new(&t, p.clone()).unwrap())
        .collect();
    println!("fixture paths: {:?}", raw);

    let k = 2;
    let rs = reach_sets(&t, &paths, k).unwrap();
    println!("U  = {:?}", rs.u.to_vec());
    println!("U' = {:?}", rs.u_prime.to_vec());
    println!("W  = {:?}", rs.w.to_vec());
    println!("W' = {:?}", rs.w_prime.to_vec());
    println!(
        "sizes: |U| <= 2k(k+1) = {}, |U'| = l(k+1) = {}",
        2 * k * (k + 1),
        paths.len() * (k + 1)
    );

    // exhaustive audit: every deletion of fewer than k vertices leaves every
    // survivor a path into U inside U', and one back from W inside W'
    let audit = audit_reach_sets(&t, &paths, k, &rs).unwrap();
    println!(
        "reach audit over {} (S, v) cases: {}",
        audit.samples_drawn,
        if audit.passed() { "pass" } else { "FAIL" }
    );
}
