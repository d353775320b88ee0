//! Orbifold Riemann–Roch for `O_X(d)`.
//!
//! `χ(O_X(d)) = [ch(O(d)) td(X)]_n + Σ_P M_P(d) + Σ_C M_C(d)` where the
//! point and curve contributions are generalized Dedekind sums.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::dedekind::{sigma_all, SigmaVector};
use crate::hilbert::{NormalData, SeriesSource, VarietyDescriptor};
use crate::orbterms::{CurveType, PointType};
use crate::{Error, Rational, Result};

/// Chern classes of the tangent bundle as multiples `c_i` of `H^i`, with the
/// top self-intersection `H^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernData {
    pub hn: Rational,
    /// `c_1, …, c_n`.
    pub c: Vec<Rational>,
}

impl ChernData {
    pub fn dimension(&self) -> usize {
        self.c.len()
    }

    /// `c_i` as a multiple of `H^i`, with `c_0 = 1` and `c_i = 0` past `n`.
    pub fn c(&self, i: usize) -> Rational {
        match i {
            0 => Rational::one(),
            _ => self.c.get(i - 1).cloned().unwrap_or_else(Rational::zero),
        }
    }

    /// `c_i · H^(n-i)`, the intersection number.
    pub fn chern_number(&self, i: usize) -> Rational {
        self.c(i) * &self.hn
    }

    /// Todd classes `td_0, …, td_n` as multiples of `H^i`.
    pub fn todd(&self) -> Result<Vec<Rational>> {
        let n = self.dimension();
        if n > 4 {
            return Err(Error::DimensionUnsupported(n as i64));
        }
        let (c1, c2, c3, c4) = (self.c(1), self.c(2), self.c(3), self.c(4));
        let q = |num: Rational, den: i64| num / Rational::from_integer(den.into());
        let c1sq = &c1 * &c1;
        let all = [
            Rational::one(),
            q(c1.clone(), 2),
            q(&c1sq + &c2, 12),
            q(&c1 * &c2, 24),
            q(
                -(&c1sq * &c1sq)
                    + Rational::from_integer(4.into()) * &c1sq * &c2
                    + Rational::from_integer(3.into()) * &c2 * &c2
                    + &c1 * &c3
                    - c4,
                720,
            ),
        ];
        Ok(all[..=n].to_vec())
    }
}

/// Chern data of a weighted complete intersection from
/// `c(T_X) = ∏(1 + a_i H) / ∏(1 + d_j H)`.
pub fn chern_data(v: &VarietyDescriptor) -> Result<ChernData> {
    let SeriesSource::CompleteIntersection { weights, degrees } = &v.source else {
        return Err(Error::NotCompleteIntersection("Chern data"));
    };
    let n = v.dimension as usize;
    if n > 4 {
        return Err(Error::DimensionUnsupported(v.dimension));
    }
    let mut series = alloc::vec![Rational::zero(); n + 1];
    series[0] = Rational::one();
    let mul_linear = |s: &mut Vec<Rational>, a: i64| {
        for i in (1..s.len()).rev() {
            let prev = s[i - 1].clone();
            s[i] += prev * Rational::from_integer(a.into());
        }
    };
    for &a in weights {
        mul_linear(&mut series, i64::from(a));
    }
    for &d in degrees {
        // divide by 1 + d x
        for i in 1..series.len() {
            let prev = series[i - 1].clone();
            series[i] -= prev * Rational::from_integer(i64::from(d).into());
        }
    }
    let num: BigInt = degrees.iter().map(|&d| BigInt::from(d)).product();
    let den: BigInt = weights.iter().map(|&a| BigInt::from(a)).product();
    Ok(ChernData {
        hn: Rational::new(num, den),
        c: series[1..].to_vec(),
    })
}

fn factorial(n: usize) -> Rational {
    Rational::from_integer((1..=n).map(BigInt::from).product())
}

/// `[ch(O(d)) td(X)]_n = Σ_i d^(n-i)/(n-i)! · td_i · H^n`.
pub fn smooth_term(cd: &ChernData, d: i64) -> Result<Rational> {
    let n = cd.dimension();
    let td = cd.todd()?;
    let d = Rational::from_integer(d.into());
    let total: Rational = td
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let e = n - i;
            let pow = (0..e).fold(Rational::one(), |acc, _| acc * &d);
            pow / factorial(e) * t
        })
        .sum();
    Ok(total * &cd.hn)
}

/// `M_P(d) = σ_(d mod s)(1/s(b))`.
pub fn point_term(p: &PointType, d: i64) -> Result<Rational> {
    Ok(sigma_all(&p.dedekind_spec())?.get(d).clone())
}

/// Which form of the curve contribution to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CurveVariant {
    /// Sums over the inertia stack: uses `deg K_C` and `σ_(d - a_j)` of the
    /// doubled weights.
    #[default]
    Stack,
    /// Sums with `(ε^d - 1)` numerators in terms of `K_X|_C = K_C - Σ γ_j`;
    /// differs from the stack form by a constant absorbed into `td_n`.
    Moduli,
}

/// Dedekind data of one curve, computed once and evaluated at many `d`.
#[derive(Clone, Debug)]
pub struct CurveSums {
    curve: CurveType,
    sigma: SigmaVector,
    doubled: Vec<SigmaVector>,
}

impl CurveSums {
    pub fn new(curve: &CurveType) -> Result<Self> {
        let spec = curve.dedekind_spec();
        let sigma = sigma_all(&spec)?;
        let doubled = (0..curve.weights().len())
            .map(|j| sigma_all(&spec.doubled(j)?))
            .collect::<Result<_>>()?;
        Ok(Self {
            curve: curve.clone(),
            sigma,
            doubled,
        })
    }

    fn delta(&self, j: usize, i: i64) -> Rational {
        let a = i64::from(self.curve.weights()[j]);
        self.doubled[j].get(i) + self.doubled[j].get(i - a)
    }

    /// `M_C(d)`.
    pub fn term(
        &self,
        deg_h: &Rational,
        normal: &NormalData,
        d: i64,
        variant: CurveVariant,
    ) -> Result<Rational> {
        let a = self.curve.weights();
        if normal.gammas.len() != a.len() {
            return Err(Error::InvalidDescriptor(format!(
                "curve {} needs {} normal degrees, got {}",
                self.curve,
                a.len(),
                normal.gammas.len()
            )));
        }
        let half = Rational::new(1.into(), 2.into());
        let sd = self.sigma.get(d);
        let dd = Rational::from_integer(d.into());
        let mut m = sd * &dd * deg_h;
        match variant {
            CurveVariant::Stack => {
                m -= &half * sd * &normal.deg_k;
                for (j, g) in normal.gammas.iter().enumerate() {
                    m -= self.doubled[j].get(d - i64::from(a[j])) * g;
                }
            }
            CurveVariant::Moduli => {
                let kx: Rational = normal
                    .gammas
                    .iter()
                    .fold(normal.deg_k.clone(), |acc, g| acc - g);
                m -= &half * (sd - self.sigma.get(0)) * kx;
                for (j, g) in normal.gammas.iter().enumerate() {
                    m -= &half * (self.delta(j, d) - self.delta(j, 0)) * g;
                }
            }
        }
        Ok(m)
    }
}

/// `M_C(d)` for a curve with the given `deg H|_C`, `deg K_C` and `γ_j`.
pub fn curve_term(
    c: &CurveType,
    deg_h: &Rational,
    normal: &NormalData,
    d: i64,
    variant: CurveVariant,
) -> Result<Rational> {
    CurveSums::new(c)?.term(deg_h, normal, d, variant)
}

/// Riemann–Roch evaluator for one descriptor, caching all Dedekind sums.
#[derive(Clone, Debug)]
pub struct RiemannRoch {
    chern: ChernData,
    points: Vec<SigmaVector>,
    curves: Vec<(CurveSums, Rational, NormalData)>,
}

impl RiemannRoch {
    /// `extras` supplies or overrides normal data per curve label.
    pub fn new(v: &VarietyDescriptor, extras: &BTreeMap<String, NormalData>) -> Result<Self> {
        v.validate()?;
        let chern = chern_data(v)?;
        let points = v
            .points
            .iter()
            .map(|p| sigma_all(&p.point.dedekind_spec()))
            .collect::<Result<_>>()?;
        let curves = v
            .curves
            .iter()
            .map(|c| {
                let normal = extras
                    .get(&c.label)
                    .or(c.locus.normal.as_ref())
                    .cloned()
                    .ok_or_else(|| Error::MissingNormalData(c.label.clone()))?;
                Ok((
                    CurveSums::new(&c.locus.curve)?,
                    c.locus.deg_h.clone(),
                    normal,
                ))
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            chern,
            points,
            curves,
        })
    }

    pub fn chern(&self) -> &ChernData {
        &self.chern
    }

    /// `χ(O(d))` as a rational, before the integrality check.
    pub fn chi_rational(&self, d: i64) -> Result<Rational> {
        let mut total = smooth_term(&self.chern, d)?;
        for s in &self.points {
            total += s.get(d);
        }
        for (sums, deg_h, normal) in &self.curves {
            total += sums.term(deg_h, normal, d, CurveVariant::Stack)?;
        }
        Ok(total)
    }

    /// `χ(O(d))`; a non-integer value means the basket is inconsistent.
    pub fn chi(&self, d: i64) -> Result<BigInt> {
        let x = self.chi_rational(d)?;
        if x.is_integer() {
            Ok(x.to_integer())
        } else {
            Err(Error::NonIntegerChi {
                d,
                value: format!("{x}"),
            })
        }
    }
}

/// `χ(O_X(d))`.
pub fn chi(v: &VarietyDescriptor, extras: &BTreeMap<String, NormalData>, d: i64) -> Result<BigInt> {
    RiemannRoch::new(v, extras)?.chi(d)
}

/// `χ(O_X(d))` for every `d` in the range.
pub fn chi_range<I>(
    v: &VarietyDescriptor,
    extras: &BTreeMap<String, NormalData>,
    ds: I,
) -> Result<Vec<BigInt>>
where
    I: IntoIterator<Item = i64>,
{
    let rr = RiemannRoch::new(v, extras)?;
    ds.into_iter().map(|d| rr.chi(d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;
    use alloc::vec;

    fn x11() -> VarietyDescriptor {
        VarietyDescriptor::complete_intersection("X11", vec![1, 2, 3, 5], vec![11])
            .and_then(|v| v.with_point("P1", 2, vec![1, 1]))
            .and_then(|v| v.with_point("P2", 3, vec![1, 2]))
            .and_then(|v| v.with_point("P3", 5, vec![2, 3]))
            .unwrap()
    }

    #[test]
    fn x11_chern_and_smooth() {
        let cd = chern_data(&x11()).unwrap();
        assert_eq!(cd.c, vec![ratio(0, 1), ratio(41, 1)]);
        assert_eq!(cd.hn, ratio(11, 30));
        assert_eq!(cd.chern_number(2), ratio(451, 30));
        for d in -3..4 {
            let expected = ratio(451, 360) + ratio(d * d, 2) * ratio(11, 30);
            assert_eq!(smooth_term(&cd, d).unwrap(), expected);
        }
    }

    #[test]
    fn x11_plurigenera() {
        let got = chi_range(&x11(), &BTreeMap::new(), 1..=10).unwrap();
        let expected: Vec<BigInt> = [1, 2, 3, 4, 6, 8, 10, 13, 16, 20]
            .iter()
            .map(|&x| BigInt::from(x))
            .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn half_point_term() {
        let p = PointType::new(2, vec![1, 1], 0).unwrap();
        assert_eq!(point_term(&p, 0).unwrap(), ratio(1, 8));
    }

    #[test]
    fn degenerate_curve_term() {
        let c = CurveType::new(5, vec![2, 3]).unwrap();
        let nd = NormalData {
            deg_k: ratio(0, 1),
            gammas: vec![ratio(0, 1); 2],
        };
        assert!(curve_term(&c, &ratio(0, 1), &nd, 4, CurveVariant::Stack)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn rejects_five_folds() {
        let v = VarietyDescriptor::complete_intersection("P5", vec![1; 6], vec![]).unwrap();
        assert_eq!(chern_data(&v), Err(Error::DimensionUnsupported(5)));
    }
}
