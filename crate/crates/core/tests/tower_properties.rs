use aswtower::tower::{characters, galois_orbits, genus, l_degree, swan_conductor, units, TowerSpec};
use aswtower::zeta::{oracle_zeta, zeta_level};
use proptest::prelude::*;

/// f = c x^m + (lower terms) + optional e / x^j, with m, j prime to p.
fn tower_json(p: u32, m: u32, lower: &[u32], inv: Option<u32>) -> String {
    let mut terms = vec![format!("x^{m}")];
    for (i, c) in lower.iter().enumerate() {
        let c = c % p;
        if c != 0 && i + 1 < m as usize {
            terms.push(format!("{c}*x^{}", i + 1));
        }
    }
    if let Some(j) = inv {
        terms.push(format!("1/x^{j}"));
    }
    format!(r#"{{"p": {p}, "d": 1, "coords": [["{}"]], "n_max": 3}}"#, terms.join(" + "))
}

fn small_tower() -> impl Strategy<Value = TowerSpec> {
    (prop::sample::select(vec![2u32, 3]), 1u32..6, prop::collection::vec(any::<u32>(), 4), prop::option::of(1u32..3))
        .prop_filter_map("pole orders prime to p", |(p, m, lower, inv)| {
            if m % p == 0 || inv.is_some_and(|j| j % p == 0) {
                return None;
            }
            TowerSpec::from_json(&tower_json(p, m, &lower, inv)).ok()
        })
}

fn d2_tower() -> impl Strategy<Value = TowerSpec> {
    (1u32..6, 1u32..4).prop_filter_map("odd pole orders", |(a, b)| {
        if a % 2 == 0 || b % 2 == 0 {
            return None;
        }
        TowerSpec::from_json(&format!(r#"{{"p": 2, "d": 2, "coords": [["x^{a}"], ["1/x^{b}"]], "n_max": 3}}"#)).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn partition_covers_all_characters(spec in d2_tower(), n in 1u32..3) {
        let part = characters(&spec, n).unwrap();
        let total = (spec.p as usize).pow(n * spec.d as u32);
        prop_assert_eq!(part.total(), total);
        prop_assert_eq!(part.all().count(), total);
        for (locus, block) in &part.blocks {
            prop_assert!(block.iter().all(|c| &c.locus == locus));
            let orbits = galois_orbits(block, spec.p, n).unwrap();
            prop_assert_eq!(orbits.iter().map(|o| o.size()).sum::<usize>(), block.len());
        }
        let pn = (spec.p as usize).pow(n);
        let interior = part.interior(&spec).len();
        // union rule: interior characters are nontrivial on both coordinates
        prop_assert_eq!(interior, (pn - 1) * (pn - 1));
    }

    #[test]
    fn swan_conductors_are_galois_invariant(spec in d2_tower(), n in 1u32..4) {
        let part = characters(&spec, n).unwrap();
        for chi in part.all().filter(|c| !c.is_trivial()).take(24) {
            for u in units(spec.p, n) {
                let tw = chi.twist(u, spec.p);
                for place in spec.ramified_places() {
                    prop_assert_eq!(swan_conductor(&spec, &tw, &place).unwrap(), swan_conductor(&spec, chi, &place).unwrap());
                }
                prop_assert_eq!(l_degree(&spec, &tw).unwrap(), l_degree(&spec, chi).unwrap());
            }
        }
    }

    #[test]
    fn level_one_genus_is_riemann_hurwitz(spec in small_tower()) {
        // Artin–Schreier: 2g = (p - 1) Σ (d_x + 1) over poles, minus 2(p - 1)
        let p = spec.p as u64;
        let f = &spec.coords[0].comps[0];
        let sum: u64 = spec.ramified_places().iter().map(|pl| f.pole_order(pl, spec.p) + 1).sum();
        prop_assert_eq!(2 * genus(&spec, 1).unwrap(), (p - 1) * (sum - 2));
    }

    #[test]
    fn level_one_zeta_matches_point_counts(spec in small_tower()) {
        let g = genus(&spec, 1).unwrap();
        prop_assume!(spec.q().pow(2 * g as u32) <= 1 << 16);
        let z = zeta_level(&spec, 1).unwrap();
        prop_assert_eq!(z.poly.unwrap(), oracle_zeta(&spec).unwrap());
    }

    #[test]
    fn degree_is_twice_genus(spec in small_tower(), n in 1u32..3) {
        let z = zeta_level(&spec, n).unwrap();
        prop_assert_eq!(z.poly.unwrap().degree() as u64, 2 * z.genus);
    }
}
