#![allow(dead_code)]

use std::path::PathBuf;

use aswtower::lfunction::LPolynomial;
use aswtower::tower::TowerSpec;
use num_complex::Complex64;
use num_traits::ToPrimitive;

pub fn tower_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join("towers").join(format!("{name}.json"))
}

pub fn tower(name: &str) -> TowerSpec {
    TowerSpec::load(&tower_path(name)).unwrap()
}

/// All complex roots by Aberth iteration; `c` ascending.
pub fn roots(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let lead = c[n];
    let monic: Vec<Complex64> = c.iter().map(|x| x / lead).collect();
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for &a in monic.iter().rev() {
            d = d * z + v;
            v = v * z + a;
        }
        (v, d)
    };
    let radius = monic[0].norm().powf(1.0 / n as f64).max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    for _ in 0..2000 {
        let mut worst = 0.0f64;
        for i in 0..n {
            let (v, d) = eval(z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            z[i] -= step;
            worst = worst.max(step.norm() / z[i].norm().max(1e-300));
        }
        if worst < 1e-15 {
            break;
        }
    }
    z
}

/// Largest | |ρ|·sqrt(q) − 1 | over the roots ρ of L(χ^u, s), all units u.
/// Roots are grouped into clusters first; a cluster's centroid is
/// well-conditioned even when the root is repeated.
pub fn weil_defect(l: &LPolynomial, q: f64) -> f64 {
    if l.degree() == 0 {
        return 0.0;
    }
    let n = (l.p as u64).pow(l.order_exp);
    let mut worst = 0.0f64;
    for u in (1..=n.max(1)).filter(|u| u % l.p as u64 != 0 || n == 1) {
        let zeta = Complex64::from_polar(1.0, std::f64::consts::TAU * u as f64 / n as f64);
        let coeffs: Vec<Complex64> = l
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let v: Complex64 = c.coeffs().iter().enumerate().map(|(k, a)| a.to_f64().unwrap() * zeta.powu(k as u32)).sum();
                v / q.powf(i as f64 / 2.0)
            })
            .collect();
        for centre in clusters(&roots(&coeffs), 1e-3) {
            worst = worst.max((centre.norm() - 1.0).abs());
        }
    }
    worst
}

fn clusters(points: &[Complex64], tol: f64) -> Vec<Complex64> {
    let mut label: Vec<usize> = (0..points.len()).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while label[r] != r {
            r = label[r];
        }
        label[i] = r;
        r
    }
    for i in 0..points.len() {
        for j in 0..i {
            if (points[i] - points[j]).norm() < tol {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                label[a] = b;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<Complex64>> = Default::default();
    for i in 0..points.len() {
        let r = find(&mut label, i);
        groups.entry(r).or_default().push(points[i]);
    }
    groups.values().map(|g| g.iter().sum::<Complex64>() / g.len() as f64).collect()
}
