//! Building tournaments: explicit edge lists, seeded random orientations,
//! quadratic-residue tournaments, and the text format.

use tournament_partition::io;
use tournament_partition::{Tournament, VertexSet};

fn main() {
    // explicit construction from directed pairs, one per unordered pair
    let cycle = Tournament::build(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
    println!("3-cycle out-degrees: {:?}", degrees(&cycle));

    // a seeded generator is the only source of randomness anywhere
    let t = Tournament::random(10, 42);
    let again = Tournament::random(10, 42);
    assert_eq!(t, again);
    println!("random n=10 seed=42 out-degrees: {:?}", degrees(&t));

    // the quadratic-residue tournament on 7 points is 3-regular
    let q7 = Tournament::paley(7).unwrap();
    println!("paley(7) out-degrees: {:?}", degrees(&q7));

    // canonical text format round-trips bit-exactly
    let text = io::to_canonical_string(&q7);
    println!("paley(7) canonical form:\n{}", text);
    let back = io::from_str(&text).unwrap();
    assert_eq!(back, q7);

    // induced subtournaments carry a map back to the host ids
    let (sub, map) = q7.induced(&VertexSet::from_iter(7, [1, 3, 4, 6])).unwrap();
    println!("induced on {{1,3,4,6}}: n={} host ids {:?}", sub.n(), map);

    // reversal swaps in- and out-degrees
    let rev = q7.reverse();
    assert!((0..7).all(|v| rev.out_degree(v) == q7.in_degree(v)));
    println!("reversal swaps degrees, and reverse(reverse(T)) == T: {}", rev.reverse() == q7);
}

fn degrees(t: &Tournament) -> Vec<usize> {
    (0..t.n() as u32).map(|v| t.out_degree(v)).collect()
}
