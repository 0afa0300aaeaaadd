//! Characters of a tower, their ramification loci, Swan conductors and the genus.
//!
//! ```bash
//! cargo run --example tower_ramification
//! ```

use aswtower::tower::{characters, galois_orbits, genus, l_degree, swan_conductor, TowerSpec};

fn main() -> aswtower::Result<()> {
    let spec = TowerSpec::from_json(include_str!("towers/d2_x3_inv_x_p2.json"))?;
    let places = spec.ramified_places();
    println!("ramified places: {}", places.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "));
    for n in 1..=3 {
        let part = characters(&spec, n)?;
        println!("\nlevel {n}: {} characters, genus {}", part.total(), genus(&spec, n)?);
        for (locus, block) in &part.blocks {
            let label = locus.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",");
            let orbits = galois_orbits(block, spec.p, n)?;
            println!("  locus {{{label}}}: {} characters in {} orbits", block.len(), orbits.len());
        }
    }
    println!("\nlevel-2 interior characters:");
    let part = characters(&spec, 2)?;
    for chi in part.interior(&spec).iter().take(6) {
        let swans: Vec<u64> = places.iter().map(|p| swan_conductor(&spec, chi, p)).collect::<Result<_, _>>()?;
        println!("  {:?}: Swan {:?}, deg L = {}", chi.exponents, swans, l_degree(&spec, chi)?);
    }
    Ok(())
}
