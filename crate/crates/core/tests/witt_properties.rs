use aswtower::algebra::gf::Embedding;
use aswtower::algebra::Gf;
use aswtower::witt::{witt_frobenius_trace, witt_residue, TraceTable, WittRing, WittVec};
use proptest::prelude::*;

/// The Witt vector of F_p-components whose residue is `v` mod p^n.
fn witt_of(v: u64, p: u32, n: usize) -> WittVec<u32> {
    let f = Gf::get(p, 1).unwrap();
    let w = WittRing::new(&*f, n).unwrap();
    let mut acc = w.zero();
    for _ in 0..v % (p as u64).pow(n as u32) {
        acc = w.add(&acc, &w.one()).unwrap();
    }
    acc
}

fn prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 5])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn residue_map_is_a_ring_isomorphism(p in prime(), n in 1usize..4, a in 0u64..10_000, b in 0u64..10_000) {
        let f = Gf::get(p, 1).unwrap();
        let w = WittRing::new(&*f, n).unwrap();
        let m = (p as u64).pow(n as u32);
        let (wa, wb) = (witt_of(a, p, n), witt_of(b, p, n));
        let res = |x: &WittVec<u32>| witt_residue(&x.comps, p).unwrap().value;
        prop_assert_eq!(res(&wa), a % m);
        prop_assert_eq!(res(&w.add(&wa, &wb).unwrap()), (a + b) % m);
        prop_assert_eq!(res(&w.mul(&wa, &wb).unwrap()), (a * b) % m);
        prop_assert_eq!(res(&w.neg(&wa).unwrap()), (m - a % m) % m);
        prop_assert_eq!(res(&w.scalar(b, &wa).unwrap()), (a * b) % m);
    }

    #[test]
    fn witt_ring_axioms_over_extensions(p in prime(), k in 1u32..3, n in 1usize..4, seed in any::<[u32; 9]>()) {
        let f = Gf::get(p, k).unwrap();
        let w = WittRing::new(&*f, n).unwrap();
        let vec_of = |s: &[u32]| WittVec::new(s[..n].iter().map(|x| x % f.size()).collect());
        let (a, b, c) = (vec_of(&seed[0..3]), vec_of(&seed[3..6]), vec_of(&seed[6..9]));
        let lhs = w.mul(&a, &w.add(&b, &c).unwrap()).unwrap();
        let rhs = w.add(&w.mul(&a, &b).unwrap(), &w.mul(&a, &c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(w.add(&a, &w.neg(&a).unwrap()).unwrap(), w.zero());
        prop_assert_eq!(w.add(&w.add(&a, &b).unwrap(), &c).unwrap(), w.add(&a, &w.add(&b, &c).unwrap()).unwrap());
        // Frobenius is a ring endomorphism
        prop_assert_eq!(w.frobenius(&w.mul(&a, &b).unwrap()), w.mul(&w.frobenius(&a), &w.frobenius(&b)).unwrap());
        // Teichmüller lifts are multiplicative
        let (x, y) = (seed[0] % f.size(), seed[1] % f.size());
        prop_assert_eq!(w.mul(&w.teichmuller(x), &w.teichmuller(y)).unwrap(), w.teichmuller(f.mul(x, y)));
    }

    #[test]
    fn trace_is_additive_and_frobenius_invariant(p in prime(), k in 1u32..4, n in 1usize..4, seed in any::<[u32; 6]>()) {
        let f = Gf::get(p, k).unwrap();
        let w = WittRing::new(&*f, n).unwrap();
        let m = (p as u64).pow(n as u32);
        let a = WittVec::new(seed[..n].iter().map(|x| x % f.size()).collect());
        let b = WittVec::new(seed[3..3 + n].iter().map(|x| x % f.size()).collect());
        let tr = |x: &WittVec<u32>| witt_frobenius_trace(&f, x).unwrap().value;
        prop_assert_eq!(tr(&w.add(&a, &b).unwrap()), (tr(&a) + tr(&b)) % m);
        prop_assert_eq!(tr(&w.frobenius(&a)), tr(&a));
        let mut fa = a.clone();
        for _ in 0..k {
            fa = w.frobenius(&fa);
        }
        prop_assert_eq!(fa, a.clone());
        let table = TraceTable::get(&f, n as u32).unwrap();
        prop_assert_eq!(table.witt(&f, &a.comps), tr(&a));
    }

    #[test]
    fn trace_is_transitive(p in prime(), k in 1u32..3, a in any::<u32>(), n in 1u32..4) {
        let base = Gf::get(p, k).unwrap();
        let ext = Gf::get(p, 2 * k).unwrap();
        let emb = Embedding::new(&base, &ext).unwrap();
        let a = a % base.size();
        let m = (p as u64).pow(n);
        let small = TraceTable::get(&base, n).unwrap().teichmuller(&base, a);
        let big = TraceTable::get(&ext, n).unwrap().teichmuller(&ext, emb.apply(&ext, a));
        prop_assert_eq!(big, 2 * small % m);
    }
}

#[test]
fn residue_digits_roundtrip() {
    for p in [2u32, 3, 5] {
        for v in 0..(p as u64).pow(3) {
            assert_eq!(witt_residue(&witt_of(v, p, 3).comps, p).unwrap().value, v);
        }
    }
}
