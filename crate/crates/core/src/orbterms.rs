//! Closed-form orbifold terms: point terms, the two curve parts, bites and
//! the initial term.

use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::dedekind::{sigma_all, DedekindSpec};
use crate::exactpoly::{
    cyclo_quotient, inverse_mod, reduce_support, Denominator, LaurentPoly, RationalFn,
};
use crate::{floor_half, Error, Rational, Result};

/// A cyclic quotient singularity `1/s(b_1,…,b_n)` on a variety of
/// canonical weight `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointType {
    s: u32,
    b: Vec<u32>,
    k: i64,
}

impl PointType {
    /// Validates `b_i ≢ 0 (mod s)`, `k + Σ b_i ≡ 0 (mod s)` and that no two
    /// weights share a factor with `s` (orbifold loci of dimension ≤ 1).
    pub fn new(s: u32, b: Vec<u32>, k: i64) -> Result<Self> {
        if s < 2 {
            return Err(Error::ModulusTooSmall(s));
        }
        if b.is_empty() {
            return Err(Error::EmptyWeights);
        }
        if let Some(&w) = b.iter().find(|&&w| w % s == 0) {
            return Err(Error::WeightDivisibleByModulus {
                modulus: s,
                weight: w,
            });
        }
        let total: i64 = b.iter().map(|&x| i64::from(x)).sum();
        if (k + total).rem_euclid(i64::from(s)) != 0 {
            return Err(Error::IncompatibleCanonicalWeight {
                order: s,
                weights: b,
                k,
            });
        }
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                if s.gcd(&b[i]).gcd(&b[j]) != 1 {
                    return Err(Error::HigherDimensionalLocus {
                        order: s,
                        weights: b,
                    });
                }
            }
        }
        Ok(Self { s, b, k })
    }

    pub fn order(&self) -> u32 {
        self.s
    }

    pub fn weights(&self) -> &[u32] {
        &self.b
    }

    pub fn canonical_weight(&self) -> i64 {
        self.k
    }

    pub fn dimension(&self) -> usize {
        self.b.len()
    }

    pub fn coindex(&self) -> i64 {
        self.k + self.b.len() as i64 + 1
    }

    /// `w_i = gcd(s, b_i)`.
    pub fn gcds(&self) -> Vec<u32> {
        self.b.iter().map(|&x| self.s.gcd(&x)).collect()
    }

    /// `h = ∏_(w_i ≠ 1) (1 - t^(w_i))/(1 - t)`.
    pub fn h(&self) -> LaurentPoly {
        self.gcds()
            .into_iter()
            .filter(|&w| w != 1)
            .fold(LaurentPoly::one(), |acc, w| &acc * &cyclo_quotient(w))
    }

    /// `α_i`, the least positive integer with `α_i b_i ≡ w_i (mod s)`.
    pub fn alphas(&self) -> Vec<u32> {
        self.b
            .iter()
            .zip(self.gcds())
            .map(|(&b, w)| {
                (1..=self.s)
                    .find(|&a| {
                        (u64::from(a) * u64::from(b)) % u64::from(self.s) == u64::from(w % self.s)
                    })
                    .expect("w_i is a multiple of b_i mod s")
            })
            .collect()
    }

    pub fn dedekind_spec(&self) -> DedekindSpec {
        DedekindSpec::new(self.s, self.b.clone()).expect("validated point type")
    }

    /// `∏ (1 - t^(b_i))/(1 - t^(w_i))`.
    fn unit(&self) -> LaurentPoly {
        self.b
            .iter()
            .zip(self.gcds())
            .fold(LaurentPoly::one(), |acc, (&b, w)| {
                let geometric = LaurentPoly::from_dense(
                    0,
                    (0..b).map(|e| {
                        if e % w == 0 {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    }),
                );
                &acc * &geometric
            })
    }

    /// `(1 - t^s)/((1 - t) h)`.
    fn modulus(&self) -> LaurentPoly {
        cyclo_quotient(self.s)
            .exact_div(&self.h())
            .expect("h divides (1-t^s)/(1-t)")
    }

    /// Support window `[⌊c/2⌋ + 1 + deg h, ⌊c/2⌋ + s - 1]` of the point term numerator.
    pub fn window(&self) -> (i64, i64) {
        let base = floor_half(self.coindex());
        (
            base + 1 + self.h().degree().unwrap_or(0),
            base + i64::from(self.s) - 1,
        )
    }

    /// Denominator `(1 - t)^(n - #{w_i ≠ 1}) ∏_(w_i ≠ 1)(1 - t^(w_i)) (1 - t^s)`.
    pub fn term_denominator(&self) -> Denominator {
        let gcds = self.gcds();
        let special = gcds.iter().filter(|&&w| w != 1).count() as u32;
        gcds.iter()
            .filter(|&&w| w != 1)
            .fold(
                Denominator::one().with(1, self.b.len() as u32 - special),
                |d, &w| d.with(w, 1),
            )
            .with(self.s, 1)
    }

    /// For each `w_i ≠ 1`, the curve type `1/w_i(b_j mod w_i, j ≠ i)` through the point.
    pub fn dissident_curve_types(&self) -> Vec<(u32, Vec<u32>)> {
        self.gcds()
            .into_iter()
            .enumerate()
            .filter(|&(_, w)| w != 1)
            .map(|(i, w)| {
                let residues = self
                    .b
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &x)| x % w)
                    .collect();
                (w, residues)
            })
            .collect()
    }
}

impl fmt::Display for PointType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_type(f, self.s, &self.b)
    }
}

fn write_type(f: &mut fmt::Formatter<'_>, r: u32, a: &[u32]) -> fmt::Result {
    write!(f, "1/{r}(")?;
    for (i, x) in a.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str(")")
}

/// The transverse type `1/r(a_1,…,a_(n-1))` of an orbifold curve; every
/// `a_j` is coprime to `r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveType {
    r: u32,
    a: Vec<u32>,
}

impl CurveType {
    pub fn new(r: u32, a: Vec<u32>) -> Result<Self> {
        if r < 2 {
            return Err(Error::ModulusTooSmall(r));
        }
        if a.is_empty() {
            return Err(Error::EmptyWeights);
        }
        if a.iter().any(|&x| r.gcd(&x) != 1) {
            return Err(Error::CurveWeightNotCoprime {
                order: r,
                weights: a,
            });
        }
        Ok(Self { r, a })
    }

    pub fn order(&self) -> u32 {
        self.r
    }

    pub fn weights(&self) -> &[u32] {
        &self.a
    }

    /// Dimension of the ambient variety, `n = #a + 1`.
    pub fn dimension(&self) -> usize {
        self.a.len() + 1
    }

    /// Requires `k + Σ a_j ≡ 0 (mod r)`.
    pub fn check_canonical_weight(&self, k: i64) -> Result<()> {
        let total: i64 = self.a.iter().map(|&x| i64::from(x)).sum();
        if (k + total).rem_euclid(i64::from(self.r)) == 0 {
            Ok(())
        } else {
            Err(Error::IncompatibleCanonicalWeight {
                order: self.r,
                weights: self.a.clone(),
                k,
            })
        }
    }

    /// True when `1/order(residues)` is this type, up to reordering.
    pub fn same_type(&self, order: u32, residues: &[u32]) -> bool {
        let mut mine: Vec<u32> = self.a.iter().map(|&x| x % self.r).collect();
        let mut theirs: Vec<u32> = residues.iter().map(|&x| x % order).collect();
        mine.sort_unstable();
        theirs.sort_unstable();
        order == self.r && mine == theirs
    }

    pub fn dedekind_spec(&self) -> DedekindSpec {
        DedekindSpec::new(self.r, self.a.clone()).expect("weights coprime to r")
    }

    /// `∏ (1 - t^(a_j))/(1 - t)`.
    fn unit(&self) -> LaurentPoly {
        self.a
            .iter()
            .fold(LaurentPoly::one(), |acc, &x| &acc * &cyclo_quotient(x))
    }
}

impl fmt::Display for CurveType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_type(f, self.r, &self.a)
    }
}

/// The point term `Q(t)/((1 - t)^n h (1 - t^s))`.
///
/// `Q` is the inverse of `∏(1 - t^(b_i))/(1 - t^(w_i))` modulo
/// `(1 - t^s)/((1 - t) h)`, placed in [`PointType::window`].
pub fn qorb(p: &PointType) -> Result<RationalFn> {
    let modulus = p.modulus();
    let inv = inverse_mod(&p.unit(), &modulus)?;
    let q = reduce_support(&inv, &modulus, p.window().0)?;
    Ok(RationalFn::new(q, p.term_denominator()))
}

/// The initial term `I(t)/(1 - t)^(n+1)`: `I` is the palindromic
/// polynomial of degree `c = k + n + 1` whose expansion starts with the
/// given plurigenera `P_0, …, P_⌊c/2⌋`.
///
/// For negative coindex the list must be empty and the term is zero.
pub fn initial_term(plurigenera: &[Rational], k: i64, n: i64) -> Result<RationalFn> {
    if n < 0 {
        return Err(Error::InvalidDescriptor("negative dimension".into()));
    }
    let c = k + n + 1;
    let expected = if c < 0 { 0 } else { floor_half(c) as usize + 1 };
    if plurigenera.len() != expected {
        return Err(Error::WrongPlurigeneraLength {
            expected,
            got: plurigenera.len(),
        });
    }
    let den = Denominator::one().with(1, n as u32 + 1);
    if c < 0 {
        return Ok(RationalFn::new(LaurentPoly::zero(), den));
    }
    let mut a = LaurentPoly::from_dense(0, plurigenera.iter().cloned());
    den.multiply_into(&mut a);
    let half = floor_half(c);
    let mut num = LaurentPoly::zero();
    for i in 0..=half {
        let ai = a.coeff(i);
        num.add_term(i, &ai);
        if c - i != i {
            num.add_term(c - i, &ai);
        }
    }
    Ok(RationalFn::new(num, den))
}

/// First curve part `S_1(t)/((1 - t)^(n-1)(1 - t^r)^2)`.
///
/// `S_1` is the inverse of `∏(1 - t^(a_j))/(1 - t)` modulo
/// `(1 - t^r)/(1 - t)` placed in `[⌊(c+r-1)/2⌋ + 1, ⌊(c+r-1)/2⌋ + r - 1]`,
/// which is the point term of `1/r(a)` at canonical weight `k + r`
/// divided by `1 - t^r`.
pub fn curve_s1(c: &CurveType, k: i64) -> Result<RationalFn> {
    c.check_canonical_weight(k)?;
    let shifted = PointType::new(c.r, c.a.clone(), k + i64::from(c.r))?;
    let (num, den) = qorb(&shifted)?.into_parts();
    Ok(RationalFn::new(num, den.with(c.r, 1)))
}

/// Window `[⌊(c+r-1)/2⌋ + 1, ⌊(c+r-1)/2⌋ + r - 1]` of the first curve part.
pub fn s1_window(c: &CurveType, k: i64) -> (i64, i64) {
    let base = floor_half(k + c.dimension() as i64 + 1 + i64::from(c.r) - 1);
    (base + 1, base + i64::from(c.r) - 1)
}

/// Window `[⌊c/2⌋ + 1, ⌊c/2⌋ + r - 1]` of `N_j` and of second curve parts.
pub fn second_part_window(r: u32, coindex: i64) -> (i64, i64) {
    let base = floor_half(coindex);
    (base + 1, base + i64::from(r) - 1)
}

/// `N_j(t)/((1 - t)^n (1 - t^r))` with
/// `N_j · ∏_i (1-t^(a_i))/(1-t) · (1-t^(a_j))/(1-t) ≡ 1 + t^(a_j)` modulo
/// `(1 - t^r)/(1 - t)`, in the window `[⌊c/2⌋ + 1, ⌊c/2⌋ + r - 1]`.
/// `j` is a 0-based index into the weights.
pub fn curve_nj(c: &CurveType, j: usize, k: i64) -> Result<RationalFn> {
    c.check_canonical_weight(k)?;
    let aj = *c.a.get(j).ok_or(Error::IndexOutOfRange {
        index: j,
        len: c.a.len(),
    })?;
    let modulus = cyclo_quotient(c.r);
    let unit = &c.unit() * &cyclo_quotient(aj);
    let target = &LaurentPoly::one() + &LaurentPoly::t_pow(i64::from(aj));
    let inv = inverse_mod(&unit, &modulus)?;
    let n = c.dimension() as i64;
    let start = second_part_window(c.r, k + n + 1).0;
    let num = reduce_support(&(&inv * &target), &modulus, start)?;
    Ok(RationalFn::new(
        num,
        Denominator::one().with(1, n as u32).with(c.r, 1),
    ))
}

/// `X(t) = Σ (i - k/2) σ_i t^i + Σ (r - i + k/2) σ_i t^(r+i)`, so that
/// `X/(1 - t^r)^2 = Σ_(d ≥ 0) (d - k/2) σ_d t^d`.
pub fn periodic_numerator(c: &CurveType, k: i64) -> Result<LaurentPoly> {
    let sigma = sigma_all(&c.dedekind_spec())?;
    let half_k = Rational::new(k.into(), 2.into());
    let r = i64::from(c.r);
    let mut x = LaurentPoly::zero();
    for (i, s) in sigma.values().iter().enumerate() {
        let i = i as i64;
        let i_r = Rational::from_integer(i.into());
        x.add_term(i, &((&i_r - &half_k) * s));
        x.add_term(
            r + i,
            &((Rational::from_integer(r.into()) - i_r + &half_k) * s),
        );
    }
    Ok(x)
}

/// Main curve part `N(t)/((1 - t)^(n-1)(1 - t^r)^2)`: `X(t)(1 - t)^(n-1)`
/// reduced modulo `((1 - t^r)/(1 - t))^2` into
/// `[⌊c/2⌋ + 1, ⌊c/2⌋ + 2r - 2]`. It agrees with `X/(1 - t^r)^2` up to a
/// term over `(1 - t)^(n+1)`.
pub fn curve_main_part(c: &CurveType, k: i64) -> Result<RationalFn> {
    c.check_canonical_weight(k)?;
    let n = c.dimension() as i64;
    let mut x = periodic_numerator(c, k)?;
    for _ in 0..n - 1 {
        x.mul_one_minus_t_pow(1);
    }
    let a = cyclo_quotient(c.r);
    let start = floor_half(k + n + 1) + 1;
    let num = reduce_support(&x, &(&a * &a), start)?;
    Ok(RationalFn::new(
        num,
        Denominator::one().with(1, n as u32 - 1).with(c.r, 2),
    ))
}

/// Window `[-w/2 + 1, w/2 - 1]` (even `w`) or `[-(w-1)/2, (w-3)/2]` (odd `w`).
pub fn bite_window(w: u32) -> (i64, i64) {
    let w = i64::from(w);
    let start = if w % 2 == 0 { -w / 2 + 1 } else { -(w - 1) / 2 };
    (start, start + w - 2)
}

/// The contribution a dissident point bites off the curve through it in
/// direction `i` (0-based):
/// `(w_i/s) Q(t) ∏_(j≠i)(1 - t^(b_j))/(1 - t^(w_j))` modulo
/// `(1 - t^(w_i))/(1 - t)`, reduced into [`bite_window`].
pub fn bite(p: &PointType, i: usize) -> Result<LaurentPoly> {
    let gcds = p.gcds();
    let w = *gcds.get(i).ok_or(Error::IndexOutOfRange {
        index: i,
        len: gcds.len(),
    })?;
    if w == 1 {
        return Err(Error::NoCurveDirection {
            order: p.s,
            weights: p.b.clone(),
            index: i,
        });
    }
    let q = qorb(p)?;
    let mut f = q.numerator().scale(&Rational::new(w.into(), p.s.into()));
    for (j, (&b, &wj)) in p.b.iter().zip(&gcds).enumerate() {
        if j != i {
            let geometric = LaurentPoly::from_dense(
                0,
                (0..b).map(|e| {
                    if e % wj == 0 {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }),
            );
            f = &f * &geometric;
        }
    }
    reduce_support(&f, &cyclo_quotient(w), bite_window(w).0)
}

/// Direction of `p` along a curve of order `r`, if any.
pub fn direction_of(p: &PointType, r: u32) -> Option<usize> {
    p.gcds().iter().position(|&w| w == r)
}

/// `r·deg H|_C - Σ bites` over the dissident points, before the
/// integrality check.
pub fn raw_curve_coefficient(
    c: &CurveType,
    deg_h: &Rational,
    dissidents: &[&PointType],
) -> Result<LaurentPoly> {
    let mut g = LaurentPoly::constant(deg_h * Rational::from_integer(c.r.into()));
    for p in dissidents {
        let i = direction_of(p, c.r).ok_or_else(|| {
            Error::InvalidDescriptor(alloc::format!(
                "point {p} does not lie on a curve of order {}",
                c.r
            ))
        })?;
        g -= &bite(p, i)?;
    }
    Ok(g)
}

/// The curve coefficient `g_C(t)`; non-integral coefficients mean the
/// basket data is inconsistent.
pub fn curve_coefficient(
    c: &CurveType,
    deg_h: &Rational,
    dissidents: &[&PointType],
) -> Result<LaurentPoly> {
    let g = raw_curve_coefficient(c, deg_h, dissidents)?;
    if let Some((d, v)) = g.non_integral_terms().next() {
        return Err(Error::NonIntegralCoefficient {
            what: alloc::format!("g_C of {c} at t^{d}"),
            value: alloc::format!("{v}"),
        });
    }
    Ok(g)
}
