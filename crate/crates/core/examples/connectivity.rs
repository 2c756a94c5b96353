//! Strong k-connectivity two ways: vertex-split max-flow against literal
//! subset removal, plus local pair connectivity.

use tournament_partition::connectivity::{
    is_strongly_k_connected, pair_connectivity, strong_connectivity,
};
use tournament_partition::verify::brute_strong_k_connectivity;
use tournament_partition::Tournament;

fn main() {
    let q7 = Tournament::paley(7).unwrap();
    println!("paley(7) strong connectivity: {}", strong_connectivity(&q7));
    for k in 1..=4 {
        let flow = is_strongly_k_connected(&q7, k);
        let removal = brute_strong_k_connectivity(&q7, k).unwrap();
        println!("  k = {}: flow says {}, subset removal says {}", k, flow, removal);
        assert_eq!(flow, removal);
    }

    // every ordered pair of paley(7) carries at least 3 disjoint paths
    let min_pair = (0..7)
        .flat_map(|x| (0..7).filter(move |&y| y != x).map(move |y| (x, y)))
        .map(|(x, y)| pair_connectivity(&q7, x, y).unwrap())
        .min()
        .unwrap();
    println!("minimum pair connectivity over all 42 ordered pairs: {}", min_pair);

    // agreement on every 5-vertex tournament, all 1024 of them
    let mut checked = 0;
    for t in tournament_partition::verify::all_tournaments(5) {
        for k in 1..=3 {
            assert_eq!(
                is_strongly_k_connected(&t, k),
                brute_strong_k_connectivity(&t, k).unwrap()
            );
            checked += 1;
        }
    }
    println!("flow vs removal agreement on {} exhaustive cases", checked);

    // a transitive tournament is not even strongly connected
    let tr = Tournament::transitive(6);
    println!(
        "transitive T6: strongly connected = {}, source->sink pairs = {}",
        strong_connectivity(&tr) > 0,
        pair_connectivity(&tr, 0, 5).unwrap()
    );
}
