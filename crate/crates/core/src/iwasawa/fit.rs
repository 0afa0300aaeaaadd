//! Exact polynomial laws v(n) = F(p^n, n) fitted on the tail of the data.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Monomial x^a y^b with x = p^n and y = n.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub x_deg: u32,
    pub y_deg: u32,
    /// Exact rational, printed as "a" or "a/b".
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitResult {
    pub p: u32,
    pub x_deg_bound: u32,
    pub y_deg_bound: u32,
    /// Nonzero terms, by descending x-degree then y-degree.
    pub terms: Vec<Term>,
    /// First n of the exact tail.
    pub onset: u32,
    /// The tail holds more points than the family has unknowns.
    pub verified: bool,
    /// value − F(p^n, n) for every input point.
    pub residuals: Vec<(u32, String)>,
    pub formula: String,
}

fn parse_q(s: &str) -> BigRational {
    match s.split_once('/') {
        Some((a, b)) => BigRational::new(a.parse().unwrap(), b.parse().unwrap()),
        None => BigRational::from_integer(s.parse().unwrap()),
    }
}

impl FitResult {
    pub fn coefficients(&self) -> Vec<(u32, u32, BigRational)> {
        self.terms.iter().map(|t| (t.x_deg, t.y_deg, parse_q(&t.coeff))).collect()
    }

    pub fn eval(&self, n: u32) -> BigRational {
        let x = BigInt::from(self.p).pow(n);
        self.coefficients()
            .into_iter()
            .map(|(a, b, c)| c * BigRational::from_integer(x.pow(a) * BigInt::from(n).pow(b)))
            .fold(BigRational::zero(), |acc, t| acc + t)
    }
}

fn monomial_label(a: u32, b: u32) -> String {
    let part = |v: &str, e: u32| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    let s = [part("x", a), part("y", b)].into_iter().filter(|s| !s.is_empty()).collect::<Vec<_>>().join("*");
    s
}

/// Human-readable form, e.g. "1/2*x^2 - 1/2*x".
pub fn format_poly(terms: &[(u32, u32, BigRational)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (a, b, c)) in terms.iter().enumerate() {
        let mag = c.abs();
        if i == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let label = monomial_label(*a, *b);
        if label.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&label);
        } else {
            out.push_str(&format!("{mag}*{label}"));
        }
    }
    out
}

/// Solve A c = v exactly; `None` if inconsistent or rank-deficient.
fn solve_unique(rows: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let k = rows.first()?.len();
    let mut m: Vec<Vec<BigRational>> =
        rows.iter().zip(rhs).map(|(r, v)| r.iter().cloned().chain(std::iter::once(v.clone())).collect()).collect();
    let mut pivot_row = 0;
    for col in 0..k {
        let sel = (pivot_row..m.len()).find(|&r| !m[r][col].is_zero())?;
        m.swap(pivot_row, sel);
        let inv = BigRational::one() / &m[pivot_row][col];
        for x in m[pivot_row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..m.len() {
            if r != pivot_row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let prow = m[pivot_row].clone();
                for (x, y) in m[r].iter_mut().zip(&prow) {
                    *x = &*x - &f * y;
                }
            }
        }
        pivot_row += 1;
    }
    if m[k..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    Some(m[..k].iter().map(|r| r[k].clone()).collect())
}

fn family(t: u32, yb: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for a in (0..=t).rev() {
        for b in (0..=yb.min(t - a)).rev() {
            out.push((a, b));
        }
    }
    out
}

/// Fit v(n) = F(p^n, n) with total degree ≤ `x_deg_bound` and y-degree ≤
/// `y_deg_bound`. Among monomial families the one whose exact tail starts
/// earliest wins; ties go to lower total degree, then lower y-degree.
pub fn fit_stability(points: &[(u32, BigInt)], p: u32, x_deg_bound: u32, y_deg_bound: u32) -> Result<FitResult> {
    if points.is_empty() {
        return Err(Error::Input("no data points to fit".into()));
    }
    let mut pts = points.to_vec();
    pts.sort_by_key(|x| x.0);
    if pts.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::Input("duplicate level in fit data".into()));
    }
    let rhs: Vec<BigRational> = pts.iter().map(|(_, v)| BigRational::from_integer(v.clone())).collect();
    let eval_row = |fam: &[(u32, u32)], n: u32| -> Vec<BigRational> {
        let x = BigInt::from(p).pow(n);
        fam.iter().map(|&(a, b)| BigRational::from_integer(x.pow(a) * BigInt::from(n).pow(b))).collect()
    };
    let mut best: Option<(usize, Vec<(u32, u32)>, Vec<BigRational>)> = None;
    for t in 0..=x_deg_bound {
        for yb in 0..=y_deg_bound.min(t) {
            let fam = family(t, yb);
            let k = fam.len();
            if k > pts.len() {
                continue;
            }
            let rows: Vec<Vec<BigRational>> = pts.iter().map(|(n, _)| eval_row(&fam, *n)).collect();
            let mut start = None;
            for s in (0..=pts.len() - k).rev() {
                match solve_unique(&rows[s..], &rhs[s..]) {
                    Some(c) => start = Some((s, c)),
                    None => break,
                }
            }
            if let Some((s, c)) = start {
                if best.as_ref().map_or(true, |b| s < b.0) {
                    best = Some((s, fam, c));
                }
            }
        }
    }
    let (s, fam, c) =
        best.ok_or_else(|| Error::Input("no monomial family is determined by the data".into()))?;
    let terms: Vec<(u32, u32, BigRational)> =
        fam.iter().zip(&c).filter(|(_, c)| !c.is_zero()).map(|(&(a, b), c)| (a, b, c.clone())).collect();
    let residuals = pts
        .iter()
        .zip(&rhs)
        .map(|((n, _), v)| {
            let row = eval_row(&fam, *n);
            let f: BigRational = row.iter().zip(&c).map(|(r, c)| r * c).fold(BigRational::zero(), |a, b| a + b);
            (*n, (v - f).to_string())
        })
        .collect();
    Ok(FitResult {
        p,
        x_deg_bound,
        y_deg_bound,
        formula: format_poly(&terms),
        terms: terms.iter().map(|(a, b, c)| Term { x_deg: *a, y_deg: *b, coeff: c.to_string() }).collect(),
        onset: pts[s].0,
        verified: pts.len() - s > fam.len(),
        residuals,
    })
}

impl fmt::Display for FitResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (exact for n >= {}", self.formula, self.onset)?;
        if !self.verified {
            write!(f, ", tail only determines the fit")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(u32, i64)]) -> Vec<(u32, BigInt)> {
        v.iter().map(|&(n, x)| (n, BigInt::from(x))).collect()
    }

    #[test]
    fn examples() {
        let f = fit_stability(&pts(&[(1, 3), (2, 6), (3, 11)]), 2, 1, 1).unwrap();
        assert_eq!(f.formula, "x + y");
        assert_eq!(f.onset, 1);
        let f = fit_stability(&pts(&[(1, 1), (2, 3), (3, 7)]), 2, 1, 0).unwrap();
        assert_eq!(f.formula, "x - 1");
        assert_eq!(f.onset, 1);
        assert!(f.verified);
        let f = fit_stability(&pts(&[(1, 1), (2, 6), (3, 28)]), 2, 2, 0).unwrap();
        assert_eq!(f.formula, "1/2*x^2 - 1/2*x");
        assert_eq!(f.onset, 1);
        let f = fit_stability(&pts(&[(1, 0), (2, 0), (3, 0)]), 3, 1, 1).unwrap();
        assert_eq!(f.formula, "0");
        assert_eq!(f.onset, 1);
        assert!(f.residuals.iter().all(|r| r.1 == "0"));
    }

    #[test]
    fn late_onset() {
        // v = x for n >= 2 only
        let f = fit_stability(&pts(&[(1, 5), (2, 4), (3, 8), (4, 16)]), 2, 1, 0).unwrap();
        assert_eq!(f.formula, "x");
        assert_eq!(f.onset, 2);
        assert!(f.verified);
        assert_eq!(f.residuals[0], (1, "3".to_string()));
    }

    #[test]
    fn idempotent() {
        let f = fit_stability(&pts(&[(1, 1), (2, 6), (3, 28), (4, 120)]), 2, 2, 0).unwrap();
        let again: Vec<(u32, BigInt)> = (1..=4).map(|n| (n, f.eval(n).to_integer())).collect();
        assert_eq!(fit_stability(&again, 2, 2, 0).unwrap(), f);
    }
}
