//! Variety descriptors, Hilbert series and Gorenstein symmetry.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::exactpoly::{Denominator, LaurentPoly, RationalFn};
use crate::orbterms::{CurveType, PointType};
use crate::{Error, Rational, Result};

/// Where the Hilbert series comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesSource {
    /// A weighted complete intersection `X_{d_1,…,d_c} ⊂ P(a_0,…,a_m)`.
    CompleteIntersection {
        weights: Vec<u32>,
        degrees: Vec<u32>,
    },
    /// A series given directly, e.g. a Pfaffian candidate.
    Explicit(RationalFn),
}

/// Normal bundle data of an orbifold curve: `deg K_C` and the degrees
/// `γ_j` of the normal summands, all in the convention where degrees are
/// multiplied by the curve order `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalData {
    pub deg_k: Rational,
    pub gammas: Vec<Rational>,
}

/// An orbifold curve `1/r(a_1,…,a_(n-1))` in the basket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveLocus {
    pub curve: CurveType,
    /// `deg H|_C`, the intersection number `rH·C`.
    pub deg_h: Rational,
    pub normal: Option<NormalData>,
    /// Labels of the dissident basket points lying on the curve.
    pub dissidents: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasketPoint {
    pub label: String,
    pub point: PointType,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasketCurve {
    pub label: String,
    pub locus: CurveLocus,
}

/// A polarized variety with its orbifold basket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyDescriptor {
    pub name: String,
    pub source: SeriesSource,
    pub dimension: i64,
    pub canonical_weight: i64,
    pub points: Vec<BasketPoint>,
    pub curves: Vec<BasketCurve>,
}

impl VarietyDescriptor {
    /// A weighted complete intersection with an empty basket. Dimension and
    /// canonical weight are derived from the weights and degrees.
    pub fn complete_intersection(
        name: impl Into<String>,
        weights: Vec<u32>,
        degrees: Vec<u32>,
    ) -> Result<Self> {
        if weights.is_empty() || weights.iter().chain(&degrees).any(|&w| w == 0) {
            return Err(Error::InvalidDescriptor(
                "weights and degrees must be positive".into(),
            ));
        }
        let dimension = weights.len() as i64 - 1 - degrees.len() as i64;
        if dimension < 0 {
            return Err(Error::InvalidDescriptor(format!(
                "{} equations in a {}-dimensional space",
                degrees.len(),
                weights.len() - 1
            )));
        }
        let canonical_weight = sum(&degrees) - sum(&weights);
        Ok(Self {
            name: name.into(),
            source: SeriesSource::CompleteIntersection { weights, degrees },
            dimension,
            canonical_weight,
            points: Vec::new(),
            curves: Vec::new(),
        })
    }

    /// A variety given by an explicit Hilbert series; dimension and
    /// canonical weight are supplied by the caller.
    pub fn explicit(
        name: impl Into<String>,
        series: RationalFn,
        dimension: i64,
        canonical_weight: i64,
    ) -> Result<Self> {
        if dimension < 0 {
            return Err(Error::InvalidDescriptor("negative dimension".into()));
        }
        Ok(Self {
            name: name.into(),
            source: SeriesSource::Explicit(series),
            dimension,
            canonical_weight,
            points: Vec::new(),
            curves: Vec::new(),
        })
    }

    /// Adds a basket point `1/s(b)`.
    pub fn with_point(mut self, label: impl Into<String>, s: u32, b: Vec<u32>) -> Result<Self> {
        let point = PointType::new(s, b, self.canonical_weight)?;
        self.points.push(BasketPoint {
            label: label.into(),
            point,
        });
        Ok(self)
    }

    /// Adds a basket curve `1/r(a)` with `deg H|_C` and its dissident points.
    pub fn with_curve(
        mut self,
        label: impl Into<String>,
        r: u32,
        a: Vec<u32>,
        deg_h: Rational,
        dissidents: &[&str],
        normal: Option<NormalData>,
    ) -> Result<Self> {
        let curve = CurveType::new(r, a)?;
        let dissidents = dissidents.iter().map(|s| String::from(*s)).collect();
        self.curves.push(BasketCurve {
            label: label.into(),
            locus: CurveLocus {
                curve,
                deg_h,
                normal,
                dissidents,
            },
        });
        Ok(self)
    }

    pub fn coindex(&self) -> i64 {
        self.canonical_weight + self.dimension + 1
    }

    pub fn point(&self, label: &str) -> Option<&PointType> {
        self.points
            .iter()
            .find(|p| p.label == label)
            .map(|p| &p.point)
    }

    /// Checks the structural invariants that make the other operations
    /// well defined: dimension and canonical weight of a complete
    /// intersection, point and curve types matching the dimension and
    /// canonical weight, dissident labels that resolve.
    pub fn validate(&self) -> Result<()> {
        if let SeriesSource::CompleteIntersection { weights, degrees } = &self.source {
            let dim = weights.len() as i64 - 1 - degrees.len() as i64;
            if dim != self.dimension {
                return Err(Error::InvalidDescriptor(format!(
                    "dimension {} but the equations give {dim}",
                    self.dimension
                )));
            }
            let k = sum(degrees) - sum(weights);
            if k != self.canonical_weight {
                return Err(Error::InvalidDescriptor(format!(
                    "canonical weight {} but the equations give {k}",
                    self.canonical_weight
                )));
            }
        }
        for p in &self.points {
            if p.point.dimension() as i64 != self.dimension {
                return Err(Error::InvalidDescriptor(format!(
                    "point {} has {} weights",
                    p.label,
                    p.point.weights().len()
                )));
            }
            if p.point.canonical_weight() != self.canonical_weight {
                return Err(Error::InvalidDescriptor(format!(
                    "point {} built for another canonical weight",
                    p.label
                )));
            }
        }
        for c in &self.curves {
            let ty = &c.locus.curve;
            if ty.weights().len() as i64 + 1 != self.dimension {
                return Err(Error::InvalidDescriptor(format!(
                    "curve {} has {} weights",
                    c.label,
                    ty.weights().len()
                )));
            }
            ty.check_canonical_weight(self.canonical_weight)?;
            if let Some(nd) = &c.locus.normal {
                if nd.gammas.len() != ty.weights().len() {
                    return Err(Error::InvalidDescriptor(format!(
                        "curve {} needs one γ per transverse weight",
                        c.label
                    )));
                }
            }
            for d in &c.locus.dissidents {
                if self.point(d).is_none() {
                    return Err(Error::InvalidDescriptor(format!(
                        "curve {} lists unknown point {d}",
                        c.label
                    )));
                }
            }
        }
        Ok(())
    }

    /// Problems with dissident attachment: every point with `w_i ≠ 1` must
    /// lie on exactly one curve of order `w_i` whose type is the one the
    /// point induces, and every listed dissident must have such a direction.
    pub fn attachment_issues(&self) -> Vec<String> {
        let mut issues = Vec::new();
        for p in &self.points {
            for (w, residues) in p.point.dissident_curve_types() {
                let hosts: Vec<&BasketCurve> = self
                    .curves
                    .iter()
                    .filter(|c| c.locus.curve.order() == w && c.locus.dissidents.contains(&p.label))
                    .collect();
                match hosts.as_slice() {
                    [] => issues.push(format!(
                        "point {} ({}) is not attached to a curve of order {w}",
                        p.label, p.point
                    )),
                    [c] if !c.locus.curve.same_type(w, &residues) => issues.push(format!(
                        "point {} induces 1/{w}{:?} but curve {} is {}",
                        p.label, residues, c.label, c.locus.curve
                    )),
                    [_] => {}
                    _ => issues.push(format!(
                        "point {} is attached to several curves of order {w}",
                        p.label
                    )),
                }
            }
        }
        for c in &self.curves {
            for d in &c.locus.dissidents {
                let Some(p) = self.point(d) else { continue };
                if !p.gcds().contains(&c.locus.curve.order()) {
                    issues.push(format!(
                        "point {d} ({p}) cannot lie on curve {} of order {}",
                        c.label,
                        c.locus.curve.order()
                    ));
                }
            }
        }
        issues
    }

    /// Dissident points of curve `idx`, resolved to their types.
    pub fn dissidents_of(&self, idx: usize) -> Result<Vec<&PointType>> {
        self.curves[idx]
            .locus
            .dissidents
            .iter()
            .map(|d| {
                self.point(d)
                    .ok_or_else(|| Error::InvalidDescriptor(format!("unknown point {d}")))
            })
            .collect()
    }
}

fn sum(v: &[u32]) -> i64 {
    v.iter().map(|&x| i64::from(x)).sum()
}

/// `∏(1 - t^(d_j)) / ∏(1 - t^(a_i))`, or the explicit series.
pub fn series_of(v: &VarietyDescriptor) -> RationalFn {
    match &v.source {
        SeriesSource::CompleteIntersection { weights, degrees } => {
            let num = Denominator::from_exponents(degrees.iter().copied()).expand();
            RationalFn::new(num, Denominator::from_exponents(weights.iter().copied()))
        }
        SeriesSource::Explicit(f) => f.clone(),
    }
}

/// Power series coefficients `p_0..=p_N`.
pub fn expand(f: &RationalFn, n: usize) -> Result<Vec<Rational>> {
    f.series(n)
}

/// `f(1/t) = (-1)^(n+1) t^(-k) f(t)`.
pub fn gorenstein_check(f: &RationalFn, k: i64, n: i64) -> bool {
    f.is_gorenstein_symmetric(k, n)
}

pub fn canonical_weight(v: &VarietyDescriptor) -> i64 {
    v.canonical_weight
}

pub fn coindex(v: &VarietyDescriptor) -> i64 {
    v.coindex()
}

/// The first `count` plurigenera as integers, if they are integral.
pub fn plurigenera(f: &RationalFn, count: usize) -> Result<Vec<Rational>> {
    if count == 0 {
        return Ok(Vec::new());
    }
    f.series(count - 1)
}

/// `Σ p_i t^i` for a coefficient list.
pub fn series_prefix(coeffs: &[Rational]) -> LaurentPoly {
    LaurentPoly::from_dense(0, coeffs.iter().cloned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn x12_series_and_weights() {
        let v =
            VarietyDescriptor::complete_intersection("X12", vec![1, 2, 2, 3, 4], vec![12]).unwrap();
        assert_eq!((v.canonical_weight, v.coindex()), (0, 4));
        let p = series_of(&v);
        assert_eq!(p.to_string(), "(1 - t^12)/((1-t)(1-t^2)^2(1-t^3)(1-t^4))");
        let ints: Vec<Rational> = [1, 1, 3, 4].iter().map(|&x| ratio(x, 1)).collect();
        assert_eq!(expand(&p, 3).unwrap(), ints);
        assert!(gorenstein_check(&p, 0, 3));
    }

    #[test]
    fn x10_and_x36_weights() {
        let v = VarietyDescriptor::complete_intersection("X10", vec![1, 1, 1, 2, 2, 2], vec![10])
            .unwrap();
        assert_eq!((v.canonical_weight, v.coindex()), (1, 6));
        let v = VarietyDescriptor::complete_intersection("X36", vec![1, 4, 5, 6, 9, 10], vec![36])
            .unwrap();
        assert_eq!(v.canonical_weight, 1);
        assert!(gorenstein_check(&series_of(&v), 1, 4));
        assert!(!gorenstein_check(&series_of(&v), 0, 4));
    }

    #[test]
    fn projective_line() {
        let v = VarietyDescriptor::complete_intersection("P1", vec![1], vec![]).unwrap();
        assert_eq!(series_of(&v).to_string(), "(1)/((1-t))");
        assert_eq!(v.dimension, 0);
    }

    #[test]
    fn rejects_overdetermined() {
        assert!(VarietyDescriptor::complete_intersection("bad", vec![1, 1], vec![2, 2]).is_err());
    }
}
