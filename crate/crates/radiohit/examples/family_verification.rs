//! Sampling candidate set families and certifying their hit-fraction
//! property by exhausting all 2^l - 1 subsets of the universe.
//!
//! ```bash
//! cargo run --example family_verification
//! ```

use radiohit::families::{
    count_hit_members, min_hitting_family_size, sample_candidate_family, verify_hit_fraction,
};

fn main() {
    let universe = 8;
    let family = sample_candidate_family(universe, 200, None, 42).unwrap();
    println!(
        "sampled family over [{universe}]: {} members, duplicates: {}",
        family.len(),
        family.has_duplicates()
    );

    let certificate = verify_hit_fraction(&family).unwrap();
    println!(
        "certificate: {}",
        serde_json::to_string_pretty(&certificate).unwrap()
    );
    let witness = certificate.witness().unwrap();
    println!(
        "independent recount of the witness: {} of {} members hit",
        count_hit_members(&family, witness),
        family.len()
    );

    // How many sets does it take to hit every member of a small family?
    let small = sample_candidate_family(6, 20, None, 1).unwrap();
    let minimum = min_hitting_family_size(&small, None).unwrap();
    println!(
        "\nexact minimum hitting family size for a 20-member family over [6]: {:?}",
        minimum.kind
    );
}
