//! Adams operations and the constant-field extension tower.
//!
//! ```bash
//! cargo run --example adams_operations
//! ```

use aswtower::algebra::IntPoly;
use aswtower::tower::TowerSpec;
use aswtower::zeta::{adams, constant_tower_valuation, root_of_unity_product, zeta_level};

fn main() -> aswtower::Result<()> {
    let h = IntPoly::from_i64(&[1, 0, 2]);
    for e in [2, 3, 4] {
        println!("Phi^{e}({h}) = {}, product over e-th roots of unity = {}", adams(&h, e)?, root_of_unity_product(&h, e));
    }
    println!("Phi^2(1-3s)(1) = {}", adams(&IntPoly::from_i64(&[1, -3]), 2)?.eval(&1.into()));

    let spec = TowerSpec::from_json(include_str!("towers/constant_x3_p2.json"))?;
    println!("\nx^3 tower composed with the constant Z_2-extension:");
    for n in 1..=3 {
        let z = zeta_level(&spec, n)?;
        let deg = z.poly.as_ref().map_or(0, |p| p.degree());
        println!("  n={n}: v_2(h) = {} (via resultants {}), deg P = {deg} in t = s^{}", z.vp_class_number, constant_tower_valuation(&spec, n)?, 1 << n);
        if n == 1 {
            println!("       P = {}", z.poly.map(|p| p.to_string()).unwrap_or_default());
        }
    }
    Ok(())
}
