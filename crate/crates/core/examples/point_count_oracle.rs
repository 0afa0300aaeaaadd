//! Independent level-1 check: the zeta function from raw point counts.
//!
//! ```bash
//! cargo run --example point_count_oracle
//! ```

use aswtower::tower::TowerSpec;
use aswtower::zeta::{oracle_zeta, point_count_oracle, zeta_level};

fn main() -> aswtower::Result<()> {
    let towers = [
        include_str!("towers/x3_p2.json"),
        include_str!("towers/x3_plus_x_p2.json"),
        include_str!("towers/x3_plus_inv_x_p2.json"),
        include_str!("towers/x2_p3.json"),
    ];
    for file in towers {
        let spec = TowerSpec::from_json(file)?;
        let counts: Vec<u64> = (1..=3).map(|m| point_count_oracle(&spec, m)).collect::<Result<_, _>>()?;
        let oracle = oracle_zeta(&spec)?;
        let chars = zeta_level(&spec, 1)?.poly.expect("level 1 is small");
        let verdict = if oracle == chars { "match" } else { "MISMATCH" };
        println!("p={} f={}: N_1..N_3 = {counts:?}, P(K_1,s) = {oracle} ({verdict})", spec.p, spec.file.coords[0][0]);
    }
    Ok(())
}
