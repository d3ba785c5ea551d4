//! Membership signatures and the pigeonhole pair: any family with fewer
//! than log2(k) sets assigns two elements the same signature, and that pair
//! is hit by no member of the family.
//!
//! ```bash
//! cargo run --example pigeonhole_pair
//! ```

use radiohit::families::{
    all_pairs_family, find_unhit_pair, min_hitting_family_size, signature, SetFamily,
};

fn main() {
    let k = 8;
    let family = SetFamily::new(
        k,
        vec![
            [1, 2, 3, 4].into_iter().collect(),
            [1, 2, 5, 6].into_iter().collect(),
        ],
    )
    .unwrap();
    println!("family over [{k}]: {:?}", family.sets());
    for element in 1..=k {
        println!("  signature({element}) = {}", signature(&family, element));
    }
    let (i, j) = find_unhit_pair(&family, k).unwrap();
    println!("equal signatures at {{{i}, {j}}} — no member hits that pair\n");

    // Consequence: hitting every pair of [k] takes at least log2(k) sets.
    let pairs = all_pairs_family(k).unwrap();
    let certificate = min_hitting_family_size(&pairs, None).unwrap();
    println!(
        "minimum family hitting all {} pairs of [{k}]: {:?}",
        pairs.len(),
        certificate.kind
    );
}
