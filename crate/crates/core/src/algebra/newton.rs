//! Newton polygons of polynomials with p-adic coefficient valuations.

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient valuation; `None` is +∞ (a zero coefficient).
pub type Valuation = Option<Rational64>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPolygon {
    pub points: Vec<(usize, Valuation)>,
    pub vertices: Vec<(usize, Rational64)>,
    /// (slope, multiplicity), slopes strictly increasing.
    pub segments: Vec<(Rational64, usize)>,
}

impl NewtonPolygon {
    /// Slope multiset, ascending, with repetition.
    pub fn slopes(&self) -> Vec<Rational64> {
        self.segments.iter().flat_map(|&(s, m)| std::iter::repeat(s).take(m)).collect()
    }

    pub fn degree(&self) -> usize {
        self.segments.iter().map(|s| s.1).sum()
    }

    /// Multiplicity of slope 0: the number of unit reciprocal roots.
    pub fn unit_roots(&self) -> usize {
        self.segments.iter().filter(|s| s.0.is_zero()).map(|s| s.1).sum()
    }
}

/// Lower convex hull of the points (i, v_i / q_normalizer).
///
/// Index 0 must carry valuation 0 and the largest index a finite valuation.
pub fn newton_polygon(valuations: &[(usize, Valuation)], q_normalizer: Rational64) -> Result<NewtonPolygon> {
    if q_normalizer <= Rational64::zero() {
        return Err(Error::Input("q normalizer must be positive".into()));
    }
    let mut pts: Vec<(usize, Valuation)> = valuations.to_vec();
    pts.sort_by_key(|p| p.0);
    match pts.first() {
        Some(&(0, Some(v))) if v.is_zero() => {}
        _ => return Err(Error::Input("constant term must have index 0 and valuation 0".into())),
    }
    match pts.last() {
        Some(&(_, Some(_))) => {}
        _ => return Err(Error::Input("missing finite endpoint".into())),
    }
    if pts.iter().any(|p| p.1.is_some_and(|v| v.is_negative())) {
        return Err(Error::Input("negative valuation".into()));
    }
    let finite: Vec<(usize, Rational64)> =
        pts.iter().filter_map(|&(i, v)| v.map(|v| (i, v / q_normalizer))).collect();
    let mut hull: Vec<(usize, Rational64)> = Vec::new();
    for &pt in &finite {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b if it lies on or above segment a -> pt
            let lhs = (b.1 - a.1) * Rational64::from((pt.0 - a.0) as i64);
            let rhs = (pt.1 - a.1) * Rational64::from((b.0 - a.0) as i64);
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut segments: Vec<(Rational64, usize)> = Vec::new();
    for w in hull.windows(2) {
        let len = w[1].0 - w[0].0;
        let slope = (w[1].1 - w[0].1) / Rational64::from(len as i64);
        match segments.last_mut() {
            Some(last) if last.0 == slope => last.1 += len,
            _ => segments.push((slope, len)),
        }
    }
    Ok(NewtonPolygon { points: pts, vertices: hull, segments })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    #[test]
    fn spec_examples() {
        let np = newton_polygon(&[(0, Some(r(0, 1))), (1, None), (2, Some(r(1, 1)))], r(1, 1)).unwrap();
        assert_eq!(np.slopes(), vec![r(1, 2), r(1, 2)]);
        let np = newton_polygon(&[(0, Some(r(0, 1)))], r(1, 1)).unwrap();
        assert!(np.slopes().is_empty());
        let np = newton_polygon(&[(0, Some(r(0, 1))), (1, Some(r(0, 1))), (2, Some(r(1, 1)))], r(1, 1)).unwrap();
        assert_eq!(np.slopes(), vec![r(0, 1), r(1, 1)]);
        assert_eq!(np.unit_roots(), 1);
    }

    #[test]
    fn q_normalization() {
        // valuations over q = p^2 are halved
        let np = newton_polygon(&[(0, Some(r(0, 1))), (1, Some(r(1, 1))), (2, Some(r(2, 1)))], r(2, 1)).unwrap();
        assert_eq!(np.slopes(), vec![r(1, 2), r(1, 2)]);
    }

    #[test]
    fn errors() {
        assert!(newton_polygon(&[(0, Some(r(0, 1))), (1, None)], r(1, 1)).is_err());
        assert!(newton_polygon(&[(1, Some(r(0, 1)))], r(1, 1)).is_err());
        assert!(newton_polygon(&[(0, Some(r(0, 1))), (1, Some(r(-1, 1)))], r(1, 1)).is_err());
    }
}
