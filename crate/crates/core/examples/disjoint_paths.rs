//! Packing internally vertex-disjoint paths: plain requests, repeated pairs,
//! forbidden regions, interior budgets, and linkedness by brute force.

use tournament_partition::paths::{
    find_disjoint_paths, find_short_path_family, is_k_linked_bruteforce, PathRequest,
};
use tournament_partition::{Tournament, VertexSet};

fn main() {
    let q7 = Tournament::paley(7).unwrap();

    // three pairs at once; interiors come out pairwise disjoint and avoid
    // every endpoint
    let req = PathRequest::new(7, vec![(0, 1), (2, 3), (4, 5)]);
    let res = find_disjoint_paths(&q7, &req).unwrap();
    for (pair, path) in req.pairs.iter().zip(&res.paths) {
        println!("{:?} -> {:?}", pair, path.vertices());
    }
    println!("total interior: {}", res.total_interior);

    // the same pair twice forces two distinct routes
    let req = PathRequest::new(7, vec![(0, 1), (0, 1)]);
    let res = find_disjoint_paths(&q7, &req).unwrap();
    println!(
        "two copies of (0, 1): {:?} and {:?}",
        res.paths[0].vertices(),
        res.paths[1].vertices()
    );

    // a forbidden vertex reroutes the search
    let req = PathRequest::new(7, vec![(3, 0)])
        .with_forbidden(VertexSet::from_iter(7, [2]));
    println!("(3, 0) avoiding vertex 2: {:?}", find_disjoint_paths(&q7, &req).unwrap().paths[0].vertices());

    // short families cap the union of interiors at |T| / s
    let req = PathRequest::new(7, vec![(0, 3)]);
    let res = find_short_path_family(&q7, &req, 7).unwrap();
    println!("(0, 3) with interior cap 1: {:?}", res.paths[0].vertices());

    // infeasible requests are reported as exhausted, not as budget hits
    let tr = Tournament::transitive(4);
    let req = PathRequest::new(4, vec![(3, 0)]);
    let err = find_disjoint_paths(&tr, &req).unwrap_err();
    println!("backwards in a transitive tournament: {}", err);

    // linkedness by exhausting all terminal choices
    for k in 1..=2 {
        println!(
            "paley(7) is {}-linked: {}",
            k,
            is_k_linked_bruteforce(&q7, k, 10).unwrap()
        );
    }
}
