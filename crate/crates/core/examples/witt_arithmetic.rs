//! Truncated Witt vectors over finite fields and their images in Z/p^n.
//!
//! ```bash
//! cargo run --example witt_arithmetic
//! ```

use aswtower::algebra::Gf;
use aswtower::witt::{witt_frobenius_trace, witt_residue, TraceTable, WittRing, WittVec};

fn main() -> aswtower::Result<()> {
    let f2 = Gf::get(2, 1)?;
    let w = WittRing::new(&*f2, 3)?;
    let one = w.one();
    let mut acc = w.zero();
    for k in 1..=8 {
        acc = w.add(&acc, &one)?;
        let r = witt_residue(&acc.comps, 2)?;
        println!("{k} * 1 = {:?} in W_3(F_2), residue {} mod 2^{}", acc.comps, r.value, r.modulus_exponent);
    }

    let f4 = Gf::get(2, 2)?;
    let w4 = WittRing::new(&*f4, 2)?;
    let a = WittVec::new(vec![f4.generator(), 1]);
    let b = WittVec::new(vec![f4.generator(), 0]);
    println!("\nover F_4 with generator g = {}:", f4.generator());
    println!("(g,1) + (g,0) = {:?}", w4.add(&a, &b)?.comps);
    println!("(g,1) * (g,0) = {:?}", w4.mul(&a, &b)?.comps);
    println!("F(g,1)        = {:?}", w4.frobenius(&a).comps);
    println!("Tr (g,1)      = {}", witt_frobenius_trace(&f4, &a)?.value);

    let table = TraceTable::get(&f4, 3)?;
    println!("\ntraces of Teichmuller lifts from GR(8, 2):");
    for x in 0..f4.size() {
        println!("  Tr T({x}) = {} mod {}", table.teichmuller(&f4, x), table.modulus());
    }
    Ok(())
}
