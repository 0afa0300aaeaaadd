//! Zeta polynomials, class numbers and p-ranks of the layers of a tower.
//!
//! ```bash
//! cargo run --example zeta_levels
//! ```

use aswtower::tower::TowerSpec;
use aswtower::zeta::zeta_level;

fn main() -> aswtower::Result<()> {
    for file in [include_str!("towers/x3_p2.json"), include_str!("towers/x3_plus_inv_x_p2.json")] {
        let spec = TowerSpec::from_json(file)?;
        println!("tower {}", spec.file.coords[0][0]);
        for n in 1..=3 {
            let z = zeta_level(&spec, n)?;
            let h = z.class_number.as_ref().map_or("-".to_string(), |h| h.to_string());
            println!("  n={n}: g={} h={} v_2(h)={} p-rank={}", z.genus, h, z.vp_class_number, z.p_rank);
            if n == 1 {
                println!("       P(K_1, s) = {}", z.poly.as_ref().map(|p| p.to_string()).unwrap_or_default());
            }
        }
    }
    Ok(())
}
