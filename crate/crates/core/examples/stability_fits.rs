//! Exact stability laws for class-number valuations, p-ranks and genera.
//!
//! ```bash
//! cargo run --example stability_fits
//! ```

use aswtower::iwasawa::{fit_stability, slope_statistics};
use aswtower::tower::TowerSpec;
use aswtower::zeta::zeta_level;
use num_bigint::BigInt;

fn main() -> aswtower::Result<()> {
    let spec = TowerSpec::from_json(include_str!("towers/x3_plus_inv_x_p2.json"))?;
    let levels: Vec<_> = (1..=4).map(|n| zeta_level(&spec, n)).collect::<Result<_, _>>()?;
    let column = |f: &dyn Fn(&aswtower::zeta::ZetaLevel) -> u64| -> Vec<(u32, BigInt)> {
        levels.iter().map(|l| (l.n, BigInt::from(f(l)))).collect()
    };
    println!("v_2(h_n): {}", fit_stability(&column(&|l| l.vp_class_number), 2, 1, 1)?);
    println!("p-rank:   {}", fit_stability(&column(&|l| l.p_rank), 2, 1, 0)?);
    println!("genus:    {}", fit_stability(&column(&|l| l.genus), 2, 2, 0)?);
    for l in &levels {
        let s = slope_statistics(&l.slopes, 8)?;
        println!("n={}: {} slopes, KS = {}, histogram {:?}", l.n, s.count, s.ks, s.histogram);
    }
    Ok(())
}
