//! L-polynomials of individual characters: coefficients, Newton slopes, unit roots.
//!
//! ```bash
//! cargo run --example l_polynomials
//! ```

use aswtower::lfunction::{l_polynomial, l_value_valuation, unit_root_count};
use aswtower::tower::{characters, TowerSpec};

fn main() -> aswtower::Result<()> {
    let spec = TowerSpec::from_json(include_str!("towers/x3_plus_inv_x_p2.json"))?;
    for n in 1..=2 {
        for chi in characters(&spec, n)?.all().filter(|c| !c.is_trivial() && c.order_exp == n) {
            let l = l_polynomial(&spec, chi)?;
            let coeffs: Vec<String> = l.coeffs.iter().map(|c| c.to_string()).collect();
            let slopes: Vec<String> = l.slopes().iter().map(|s| s.to_string()).collect();
            println!("chi = {:?} of order {}", chi.exponents, chi.order(spec.p));
            println!("  L(chi, s) coefficients: [{}]", coeffs.join(", "));
            println!("  slopes {}, unit roots {}, v_p(L(chi,1)) = {}", slopes.join(" "), unit_root_count(&l), l_value_valuation(&l)?);
            println!("  orbit product: {}", l.orbit_product()?);
        }
    }
    Ok(())
}
