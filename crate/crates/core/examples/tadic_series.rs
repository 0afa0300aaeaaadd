//! The universal T-adic L-series, its mod-T reduction and classical specializations.
//!
//! ```bash
//! cargo run --example tadic_series
//! ```

use aswtower::tadic::{mod_t_congruence_check, specialize_check, tadic_l_series, TadicPrecision};
use aswtower::tower::{characters, TowerSpec};

fn main() -> aswtower::Result<()> {
    let spec = TowerSpec::from_json(include_str!("towers/x3_p2.json"))?;
    let prec = TadicPrecision::default();
    let series = tadic_l_series(&spec, &prec)?;
    println!("L(T, s) mod (2^{}, deg T >= {}), s^0..s^{}", prec.digits, prec.t_degree, prec.s_max);
    for (i, c) in series.coefficients.iter().enumerate().take(4) {
        println!("  s^{i}: {c:?}");
    }
    let cong = mod_t_congruence_check(&series, &spec);
    println!("T = 0 gives the zeta function of the affine line: {}", cong.passed);
    for n in 1..=2 {
        for chi in characters(&spec, n)?.all().filter(|c| c.order_exp == n && !c.is_trivial()) {
            let r = specialize_check(&series, &spec, chi)?;
            println!("  chi {:?} (order {}): {} digits retained, passed {}", chi.exponents, chi.order(spec.p), r.retained_digits, r.passed);
        }
    }
    Ok(())
}
