use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::LaurentPoly;
use crate::{Error, Rational, Result};

/// A product `∏ (1 - t^a)^m`, kept factored.
///
/// Factors are keyed by `a ≥ 1`; the empty product is `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Denominator {
    factors: BTreeMap<u32, u32>,
}

impl Denominator {
    pub fn one() -> Self {
        Self::default()
    }

    /// The single factor `1 - t^a`.
    ///
    /// # Panics
    /// If `a` is zero.
    pub fn factor(a: u32) -> Self {
        Self::one().with(a, 1)
    }

    /// `∏ (1 - t^a)` over the given exponents, repetition allowed.
    pub fn from_exponents<I: IntoIterator<Item = u32>>(exps: I) -> Self {
        exps.into_iter().fold(Self::one(), |d, a| d.with(a, 1))
    }

    /// Multiplies by `(1 - t^a)^mult`.
    ///
    /// # Panics
    /// If `a` is zero.
    pub fn with(mut self, a: u32, mult: u32) -> Self {
        assert!(a > 0, "denominator factor 1 - t^0 is zero");
        if mult > 0 {
            *self.factors.entry(a).or_insert(0) += mult;
        }
        self
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// `(a, multiplicity)` pairs, ascending in `a`.
    pub fn factors(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.factors.iter().map(|(&a, &m)| (a, m))
    }

    /// Every exponent repeated by its multiplicity.
    pub fn exponents(&self) -> impl Iterator<Item = u32> + '_ {
        self.factors()
            .flat_map(|(a, m)| core::iter::repeat_n(a, m as usize))
    }

    pub fn multiplicity(&self, a: u32) -> u32 {
        self.factors.get(&a).copied().unwrap_or(0)
    }

    /// Degree of the expanded product, `Σ a·m`.
    pub fn degree(&self) -> i64 {
        self.factors()
            .map(|(a, m)| i64::from(a) * i64::from(m))
            .sum()
    }

    /// Number of factors counted with multiplicity.
    pub fn count(&self) -> u32 {
        self.factors.values().sum()
    }

    pub fn times(&self, other: &Self) -> Self {
        other.factors().fold(self.clone(), |d, (a, m)| d.with(a, m))
    }

    /// Least common multiple as multisets (maximum multiplicity per factor).
    pub fn lcm(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, m) in other.factors() {
            let slot = out.factors.entry(a).or_insert(0);
            *slot = (*slot).max(m);
        }
        out
    }

    /// Multiset intersection.
    pub fn common(&self, other: &Self) -> Self {
        let factors = self
            .factors()
            .filter_map(|(a, m)| {
                let k = m.min(other.multiplicity(a));
                (k > 0).then_some((a, k))
            })
            .collect();
        Self { factors }
    }

    /// Multiset difference `self - other`, `None` unless `other ⊆ self`.
    pub fn checked_quotient(&self, other: &Self) -> Option<Self> {
        let mut out = self.clone();
        for (a, m) in other.factors() {
            let slot = out.factors.get_mut(&a)?;
            if *slot < m {
                return None;
            }
            *slot -= m;
            if *slot == 0 {
                out.factors.remove(&a);
            }
        }
        Some(out)
    }

    /// Multiplies `p` in place by the expanded product.
    pub fn multiply_into(&self, p: &mut LaurentPoly) {
        for a in self.exponents() {
            p.mul_one_minus_t_pow(a);
        }
    }

    pub fn expand(&self) -> LaurentPoly {
        let mut p = LaurentPoly::one();
        self.multiply_into(&mut p);
        p
    }
}

/// A rational function `numerator / ∏ (1 - t^a)^m` with a factored
/// denominator.
///
/// Equality is equality of rational functions: two values are equal iff the
/// numerators agree after cross-multiplication, so `(1-t^2)/((1-t)(1-t^2))`
/// equals `1/(1-t)`.
#[derive(Clone, Debug, Default)]
pub struct RationalFn {
    num: LaurentPoly,
    den: Denominator,
}

impl RationalFn {
    pub fn new(num: LaurentPoly, den: Denominator) -> Self {
        Self { num, den }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::polynomial(LaurentPoly::one())
    }

    pub fn polynomial(num: LaurentPoly) -> Self {
        Self::new(num, Denominator::one())
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &Denominator {
        &self.den
    }

    pub fn into_parts(self) -> (LaurentPoly, Denominator) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.num.scale(c), self.den.clone())
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        Self::new(&self.num * p, self.den.clone())
    }

    /// Numerator of `self` written over `target`, if that is a Laurent
    /// polynomial.
    pub fn numerator_over(&self, target: &Denominator) -> Option<LaurentPoly> {
        let common = self.den.common(target);
        let extra_target = target.checked_quotient(&common)?;
        let extra_den = self.den.checked_quotient(&common)?;
        let mut p = self.num.clone();
        extra_target.multiply_into(&mut p);
        for a in extra_den.exponents() {
            p = p.div_one_minus_t_pow(a)?;
        }
        Some(p)
    }

    /// The same function written over `target`, if possible.
    pub fn rewritten_over(&self, target: &Denominator) -> Option<Self> {
        self.numerator_over(target)
            .map(|num| Self::new(num, target.clone()))
    }

    /// Cancels denominator factors `(1 - t^a)` that divide the numerator.
    pub fn reduced(&self) -> Self {
        if self.num.is_zero() {
            return Self::zero();
        }
        let mut num = self.num.clone();
        let mut den = Denominator::one();
        let exps: Vec<u32> = self.den.exponents().collect();
        for a in exps.into_iter().rev() {
            match num.div_one_minus_t_pow(a) {
                Some(q) => num = q,
                None => den = den.with(a, 1),
            }
        }
        Self::new(num, den)
    }

    /// Substitutes `t -> 1/t`, keeping the same factored denominator:
    /// `1 - t^-a = -t^-a (1 - t^a)`.
    pub fn substitute_inverse(&self) -> Self {
        let sign = if self.den.count().is_multiple_of(2) {
            Rational::one()
        } else {
            -Rational::one()
        };
        let num = self.num.reflect().shift(self.den.degree()).scale(&sign);
        Self::new(num, self.den.clone())
    }

    /// Tests `f(1/t) = (-1)^(n+1) t^(-k) f(t)` as an identity.
    pub fn is_gorenstein_symmetric(&self, k: i64, n: i64) -> bool {
        let sign = if (n + 1).rem_euclid(2) == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        let rhs = Self::new(self.num.shift(-k).scale(&sign), self.den.clone());
        self.substitute_inverse() == rhs
    }

    /// Power series coefficients `p_0, …, p_N` at `t = 0`.
    pub fn series(&self, n: usize) -> Result<Vec<Rational>> {
        if self.num.has_negative_degrees() {
            return Err(Error::NegativeDegree);
        }
        let mut c = vec![Rational::zero(); n + 1];
        for (d, v) in self.num.terms() {
            if let Some(slot) = c.get_mut(d as usize) {
                *slot = v.clone();
            }
        }
        for a in self.den.exponents() {
            let a = a as usize;
            for i in a..=n {
                let prev = c[i - a].clone();
                c[i] += prev;
            }
        }
        Ok(c)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let den = self.den.lcm(&other.den);
        let mut a = self.num.clone();
        den.checked_quotient(&self.den)
            .expect("lcm contains factor")
            .multiply_into(&mut a);
        let mut b = other.num.clone();
        den.checked_quotient(&other.den)
            .expect("lcm contains factor")
            .multiply_into(&mut b);
        let num = if negate { a - b } else { a + b };
        if num.is_zero() {
            Self::zero()
        } else {
            Self::new(num, den)
        }
    }
}

impl PartialEq for RationalFn {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        let lcm = self.den.lcm(&other.den);
        let mut a = self.num.clone();
        lcm.checked_quotient(&self.den)
            .expect("lcm contains factor")
            .multiply_into(&mut a);
        let mut b = other.num.clone();
        lcm.checked_quotient(&other.den)
            .expect("lcm contains factor")
            .multiply_into(&mut b);
        a == b
    }
}

impl Eq for RationalFn {}

impl From<LaurentPoly> for RationalFn {
    fn from(p: LaurentPoly) -> Self {
        Self::polynomial(p)
    }
}

impl Add<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        self.combine(rhs, false)
    }
}

impl Sub<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &RationalFn) -> RationalFn {
        self.combine(rhs, true)
    }
}

impl Add for RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: RationalFn) -> RationalFn {
        &self + &rhs
    }
}

impl Sub for RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: RationalFn) -> RationalFn {
        &self - &rhs
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn::new(-&self.num, self.den.clone())
    }
}

impl Neg for RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        -&self
    }
}

impl Mul<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        RationalFn::new(&self.num * &rhs.num, self.den.times(&rhs.den))
    }
}

impl Mul for RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: RationalFn) -> RationalFn {
        &self * &rhs
    }
}

impl core::iter::Sum for RationalFn {
    fn sum<I: Iterator<Item = RationalFn>>(iter: I) -> Self {
        iter.fold(RationalFn::zero(), |acc, f| &acc + &f)
    }
}

impl<'a> core::iter::Sum<&'a RationalFn> for RationalFn {
    fn sum<I: Iterator<Item = &'a RationalFn>>(iter: I) -> Self {
        iter.fold(RationalFn::zero(), |acc, f| &acc + f)
    }
}
