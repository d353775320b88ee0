use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{Error, Rational, Result};

/// A Laurent polynomial in `t` with exact rational coefficients.
///
/// Stored sparsely as a map from degree to coefficient; zero coefficients
/// are never stored, so the zero polynomial is the empty map and derived
/// equality is mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c·t^deg`.
    pub fn monomial(c: Rational, deg: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(deg, c);
        }
        Self { coeffs }
    }

    /// `t^deg`.
    pub fn t_pow(deg: i64) -> Self {
        Self::monomial(Rational::one(), deg)
    }

    /// Builds `Σ c_j t^(offset + j)` from a dense coefficient sequence.
    pub fn from_dense<I>(offset: i64, coeffs: I) -> Self
    where
        I: IntoIterator<Item = Rational>,
    {
        let coeffs = coeffs
            .into_iter()
            .zip(offset..)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, d)| (d, c))
            .collect();
        Self { coeffs }
    }

    /// Integer-coefficient convenience form of [`LaurentPoly::from_dense`].
    pub fn from_ints(offset: i64, coeffs: &[i64]) -> Self {
        Self::from_dense(
            offset,
            coeffs.iter().map(|&c| Rational::from_integer(c.into())),
        )
    }

    /// Collects `(degree, coefficient)` pairs, summing repeated degrees.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut p = Self::zero();
        for (d, c) in terms {
            p.add_term(d, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest degree with a nonzero coefficient.
    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn lowest_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Degrees carrying nonzero coefficients, ascending.
    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.coeffs.keys().copied()
    }

    /// Nonzero terms `(degree, coefficient)`, ascending in degree.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Rational)> + '_ {
        self.coeffs.iter().map(|(&d, c)| (d, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, deg: i64) -> Rational {
        self.coeffs
            .get(&deg)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.values().next_back()
    }

    pub fn trailing_coeff(&self) -> Option<&Rational> {
        self.coeffs.values().next()
    }

    /// True when every degree lies in `[lo, hi]`.
    pub fn supported_in(&self, lo: i64, hi: i64) -> bool {
        match (self.lowest_degree(), self.degree()) {
            (Some(a), Some(b)) => a >= lo && b <= hi,
            _ => true,
        }
    }

    /// Dense coefficients for degrees `lo..=hi`.
    pub fn to_dense(&self, lo: i64, hi: i64) -> Vec<Rational> {
        (lo..=hi).map(|d| self.coeff(d)).collect()
    }

    pub fn add_term(&mut self, deg: i64, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(deg).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&deg);
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&d, c)| (d + k, c.clone()))
            .collect();
        Self { coeffs }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let coeffs = self.coeffs.iter().map(|(&d, v)| (d, v * c)).collect();
        Self { coeffs }
    }

    /// Substitutes `t -> 1/t`.
    pub fn reflect(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|(&d, c)| (-d, c.clone())).collect();
        Self { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    /// Degrees whose coefficient is not an integer.
    pub fn non_integral_terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.terms().filter(|(_, c)| !c.is_integer())
    }

    /// Midpoint `(lo + hi) / 2` of the support, `None` for zero.
    pub fn center(&self) -> Option<Rational> {
        let lo = self.lowest_degree()?;
        let hi = self.degree()?;
        Some(Rational::new((lo + hi).into(), 2.into()))
    }

    /// True when the coefficient at `lo + hi - i` equals that at `i`.
    /// The zero polynomial counts as palindromic.
    pub fn is_palindromic(&self) -> bool {
        let (Some(lo), Some(hi)) = (self.lowest_degree(), self.degree()) else {
            return true;
        };
        self.terms()
            .all(|(d, c)| self.coeffs.get(&(lo + hi - d)) == Some(c))
    }

    /// True when the coefficient at `2·center - i` equals that at `i` for the
    /// given center, which may be a half integer passed as `twice_center`.
    pub fn is_symmetric_about(&self, twice_center: i64) -> bool {
        self.terms()
            .all(|(d, c)| self.coeffs.get(&(twice_center - d)) == Some(c))
    }

    /// Multiplies in place by `1 - t^a`.
    pub fn mul_one_minus_t_pow(&mut self, a: u32) {
        let shifted: Vec<(i64, Rational)> = self
            .coeffs
            .iter()
            .map(|(&d, c)| (d + i64::from(a), c.clone()))
            .collect();
        for (d, c) in shifted {
            self.add_term(d, &-c);
        }
    }

    /// Exact division by `1 - t^a`; `None` when it does not divide.
    pub fn div_one_minus_t_pow(&self, a: u32) -> Option<Self> {
        let (Some(lo), Some(hi)) = (self.lowest_degree(), self.degree()) else {
            return Some(Self::zero());
        };
        let a = a as usize;
        let p = self.to_dense(lo, hi);
        if p.len() <= a {
            return None;
        }
        let len = p.len() - a;
        let mut q: Vec<Rational> = Vec::with_capacity(len);
        for i in 0..len {
            let mut v = p[i].clone();
            if i >= a {
                v += &q[i - a];
            }
            q.push(v);
        }
        // the top `a` coefficients must be reproduced exactly by -q
        let exact = (len..p.len()).all(|i| {
            let below = if i >= a {
                -q[i - a].clone()
            } else {
                Rational::zero()
            };
            let above = if i < len {
                q[i].clone()
            } else {
                Rational::zero()
            };
            p[i] == above + below
        });
        exact.then(|| Self::from_dense(lo, q))
    }

    /// Euclidean division of ordinary polynomials: `self = q·d + r`, `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::ZeroPolynomial)?;
        if self.has_negative_degrees() || d.has_negative_degrees() {
            return Err(Error::NegativeDegree);
        }
        let Some(hi) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if hi < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut r = self.to_dense(0, hi);
        let dv = d.to_dense(0, dd);
        let lead = &dv[dd as usize];
        let mut q = vec![Rational::zero(); (hi - dd + 1) as usize];
        for i in (0..q.len()).rev() {
            let top = &r[i + dd as usize];
            if top.is_zero() {
                continue;
            }
            let c = top / lead;
            for (j, dj) in dv.iter().enumerate() {
                if !dj.is_zero() {
                    r[i + j] -= &c * dj;
                }
            }
            q[i] = c;
        }
        r.truncate(dd as usize);
        Ok((Self::from_dense(0, q), Self::from_dense(0, r)))
    }

    /// Exact quotient `self / d` for Laurent inputs, `None` if `d` does not
    /// divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let dlo = d.lowest_degree()?;
        let Some(lo) = self.lowest_degree() else {
            return Some(Self::zero());
        };
        let (q, r) = self.shift(-lo).div_rem(&d.shift(-dlo)).ok()?;
        r.is_zero().then(|| q.shift(lo - dlo))
    }

    /// Monic rescaling; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(c) => self.scale(&c.recip()),
            None => Self::zero(),
        }
    }

    pub(crate) fn has_negative_degrees(&self) -> bool {
        self.lowest_degree().is_some_and(|d| d < 0)
    }

    /// Common denominator of the coefficients.
    pub fn coeff_lcm_denominator(&self) -> num_bigint::BigInt {
        self.coeffs
            .values()
            .fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

impl From<Rational> for LaurentPoly {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&d, c) in &rhs.coeffs {
            self.add_term(d, c);
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (&d, c) in &rhs.coeffs {
            self.add_term(d, &-c);
        }
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let coeffs = self.coeffs.iter().map(|(&d, c)| (d, -c)).collect();
        LaurentPoly { coeffs }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (Some(alo), Some(ahi), Some(blo), Some(bhi)) = (
            self.lowest_degree(),
            self.degree(),
            rhs.lowest_degree(),
            rhs.degree(),
        ) else {
            return LaurentPoly::zero();
        };
        if self.num_terms() == 1 || rhs.num_terms() == 1 {
            let (mono, other) = if self.num_terms() == 1 {
                (self, rhs)
            } else {
                (rhs, self)
            };
            let (d, c) = mono.terms().next().expect("one term");
            return other.scale(c).shift(d);
        }
        let mut acc = vec![Rational::zero(); ((ahi - alo) + (bhi - blo) + 1) as usize];
        for (da, ca) in self.terms() {
            for (db, cb) in rhs.terms() {
                acc[(da - alo + db - blo) as usize] += ca * cb;
            }
        }
        LaurentPoly::from_dense(alo + blo, acc)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Mul<&LaurentPoly> for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        &self * rhs
    }
}
