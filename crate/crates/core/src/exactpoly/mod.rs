//! Exact Laurent polynomials and factored rational functions over ℚ.

mod laurent;
mod ratfn;
mod text;

pub use laurent::LaurentPoly;
pub use ratfn::{Denominator, RationalFn};

use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Zero};

use crate::{Error, Rational, Result};

/// `1 + t + … + t^(r-1)`, i.e. `(1 - t^r)/(1 - t)`.
pub fn cyclo_quotient(r: u32) -> LaurentPoly {
    LaurentPoly::from_dense(0, (0..r).map(|_| Rational::one()))
}

/// `1 - t^a`.
pub fn one_minus_t_pow(a: u32) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    p.mul_one_minus_t_pow(a);
    p
}

/// Result of [`xgcd`]: `alpha·f + beta·g = gcd` with `gcd` monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bezout {
    pub gcd: LaurentPoly,
    pub alpha: LaurentPoly,
    pub beta: LaurentPoly,
}

/// Extended Euclidean algorithm over `ℚ[t]`.
///
/// Both inputs must be nonzero ordinary polynomials; Laurent inputs have
/// to be shifted by the caller.
pub fn xgcd(f: &LaurentPoly, g: &LaurentPoly) -> Result<Bezout> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.has_negative_degrees() || g.has_negative_degrees() {
        return Err(Error::NegativeDegree);
    }
    let (mut r0, mut r1) = (f.clone(), g.clone());
    let (mut s0, mut s1) = (LaurentPoly::one(), LaurentPoly::zero());
    let (mut t0, mut t1) = (LaurentPoly::zero(), LaurentPoly::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1)?;
        let mut s = &s0 - &(&q * &s1);
        let mut t = &t0 - &(&q * &t1);
        let r = match r.leading_coeff().map(Rational::recip) {
            Some(inv) => {
                s = s.scale(&inv);
                t = t.scale(&inv);
                r.scale(&inv)
            }
            None => r,
        };
        r0 = core::mem::replace(&mut r1, r);
        s0 = core::mem::replace(&mut s1, s);
        t0 = core::mem::replace(&mut t1, t);
    }
    let lead = r0
        .leading_coeff()
        .expect("gcd of nonzero inputs is nonzero")
        .recip();
    Ok(Bezout {
        gcd: r0.scale(&lead),
        alpha: s0.scale(&lead),
        beta: t0.scale(&lead),
    })
}

/// Monic gcd of two ordinary polynomials.
pub fn gcd(f: &LaurentPoly, g: &LaurentPoly) -> Result<LaurentPoly> {
    let (g, _) = dense_euclid(ordinary_dense(f)?, ordinary_dense(g)?, false);
    Ok(LaurentPoly::from_dense(0, g))
}

fn ordinary_dense(f: &LaurentPoly) -> Result<Vec<Rational>> {
    if f.has_negative_degrees() {
        return Err(Error::NegativeDegree);
    }
    let hi = f.degree().ok_or(Error::ZeroPolynomial)?;
    Ok(f.to_dense(0, hi))
}

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn dense_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `(q, r)` with `a = q·b + r`; `b` is monic and trimmed.
fn dense_div_monic(mut a: Vec<Rational>, b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = b.len() - 1;
    if a.len() <= db {
        return (Vec::new(), a);
    }
    let mut q = vec![Rational::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = core::mem::take(&mut a[i + db]);
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b[..db].iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            a[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    a.truncate(db);
    trim(&mut a);
    (q, a)
}

/// Euclid on dense coefficient vectors with monic remainders. Returns the
/// monic gcd and, when asked, `α` with `α·f ≡ gcd (mod g)`.
fn dense_euclid(
    f: Vec<Rational>,
    g: Vec<Rational>,
    want_alpha: bool,
) -> (Vec<Rational>, Vec<Rational>) {
    let monic = |mut p: Vec<Rational>, s: &mut Vec<Rational>| {
        if let Some(inv) = p.last().map(Rational::recip) {
            for c in p.iter_mut().chain(s.iter_mut()) {
                *c *= &inv;
            }
        }
        p
    };
    let (mut s0, mut s1) = (vec![Rational::one()], Vec::new());
    let mut r0 = monic(f, &mut s0);
    let mut r1 = monic(g, &mut s1);
    while !r1.is_empty() {
        let (q, rem) = dense_div_monic(r0, &r1);
        let mut s = Vec::new();
        if want_alpha {
            s = s0.clone();
            let qs = dense_mul(&q, &s1);
            if s.len() < qs.len() {
                s.resize(qs.len(), Rational::zero());
            }
            for (x, y) in s.iter_mut().zip(qs) {
                *x -= y;
            }
            trim(&mut s);
        }
        let r = monic(rem, &mut s);
        r0 = core::mem::replace(&mut r1, r);
        s0 = core::mem::replace(&mut s1, s);
    }
    (r0, s0)
}

/// Inverse of `f` modulo the ordinary polynomial `modulus`, reduced to
/// degrees `[0, deg modulus - 1]`.
///
/// `f` may have negative degrees as long as `t` is invertible modulo
/// `modulus`. A constant modulus gives zero, the only residue.
pub fn inverse_mod(f: &LaurentPoly, modulus: &LaurentPoly) -> Result<LaurentPoly> {
    let m = check_modulus(modulus)?;
    if m == 0 {
        return Ok(LaurentPoly::zero());
    }
    let lo = f.lowest_degree().ok_or(Error::NotInvertible)?;
    let shifted = f.shift(-lo);
    let (_, rem) = shifted.div_rem(modulus)?;
    if rem.is_zero() {
        return Err(Error::NotInvertible);
    }
    let (g, alpha) = dense_euclid(ordinary_dense(&rem)?, ordinary_dense(modulus)?, true);
    if g.len() != 1 {
        return Err(Error::NotInvertible);
    }
    reduce_support(&LaurentPoly::from_dense(0, alpha).shift(-lo), modulus, 0)
}

/// The unique `g ≡ f (mod modulus)` supported in `[start, start + m - 1]`,
/// `m = deg modulus`.
///
/// Works by trimming: multiples of the modulus are subtracted from the low
/// end until nothing lies below `start`, then from the high end until
/// nothing lies above the window. The modulus needs a nonzero constant term
/// so the low end can be cleared.
pub fn reduce_support(f: &LaurentPoly, modulus: &LaurentPoly, start: i64) -> Result<LaurentPoly> {
    let m = check_modulus(modulus)?;
    if m == 0 {
        return Ok(LaurentPoly::zero());
    }
    let (Some(lo), Some(hi)) = (f.lowest_degree(), f.degree()) else {
        return Ok(LaurentPoly::zero());
    };
    let end = start + m - 1;
    let base = lo.min(start);
    let top = hi.max(end);
    let mut a = vec![Rational::zero(); (top - base + 1) as usize];
    for (d, c) in f.terms() {
        a[(d - base) as usize] = c.clone();
    }
    let md = modulus.to_dense(0, m);
    let trailing = md[0].clone();
    let leading = md[m as usize].clone();
    for i in base..start {
        let idx = (i - base) as usize;
        if a[idx].is_zero() {
            continue;
        }
        let c = &a[idx] / &trailing;
        for (j, mj) in md.iter().enumerate() {
            if !mj.is_zero() {
                a[idx + j] -= &c * mj;
            }
        }
    }
    for i in ((end + 1)..=top).rev() {
        let idx = (i - base) as usize;
        if a[idx].is_zero() {
            continue;
        }
        let c = &a[idx] / &leading;
        let low = idx - m as usize;
        for (j, mj) in md.iter().enumerate() {
            if !mj.is_zero() {
                a[low + j] -= &c * mj;
            }
        }
    }
    let window = a[(start - base) as usize..=(end - base) as usize]
        .iter()
        .cloned();
    Ok(LaurentPoly::from_dense(start, window))
}

fn check_modulus(modulus: &LaurentPoly) -> Result<i64> {
    let m = modulus.degree().ok_or(Error::ZeroPolynomial)?;
    if modulus.has_negative_degrees() {
        return Err(Error::NegativeDegree);
    }
    if m > 0 && modulus.coeff(0).is_zero() {
        return Err(Error::NotInvertible);
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    fn p(offset: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_ints(offset, c)
    }

    #[test]
    fn cyclo_quotients() {
        assert_eq!(cyclo_quotient(1), p(0, &[1]));
        assert_eq!(cyclo_quotient(2), p(0, &[1, 1]));
        assert_eq!(cyclo_quotient(5), p(0, &[1, 1, 1, 1, 1]));
    }

    #[test]
    fn reduce_small_cases() {
        let r = reduce_support(&p(0, &[1, 0, 1]), &cyclo_quotient(3), 0).unwrap();
        assert_eq!(r, p(1, &[-1]));
        let r = reduce_support(&LaurentPoly::one(), &cyclo_quotient(2), 3).unwrap();
        assert_eq!(r, p(3, &[-1]));
        let r = reduce_support(&LaurentPoly::one(), &cyclo_quotient(2), -2).unwrap();
        assert_eq!(r, p(-2, &[1]));
        let r = reduce_support(&p(0, &[5]), &LaurentPoly::one(), 7).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn xgcd_coprime() {
        let f = p(0, &[1, 1]);
        let g = p(0, &[1, 1, 1]);
        let b = xgcd(&f, &g).unwrap();
        assert_eq!(b.gcd, LaurentPoly::one());
        assert_eq!(&(&b.alpha * &f) + &(&b.beta * &g), b.gcd);
    }

    #[test]
    fn xgcd_equal_inputs() {
        let f = p(0, &[1, 0, -1]);
        let b = xgcd(&f, &f).unwrap();
        assert_eq!(b.gcd, p(0, &[-1, 0, 1]));
        assert_eq!(&(&b.alpha * &f) + &(&b.beta * &f), b.gcd);
    }

    #[test]
    fn xgcd_rejects_laurent() {
        assert_eq!(
            xgcd(&p(-1, &[1, 1]), &p(0, &[1])),
            Err(Error::NegativeDegree)
        );
    }

    #[test]
    fn inverse_mod_laurent_input() {
        let m = cyclo_quotient(5);
        let inv = inverse_mod(&p(-1, &[1]), &m).unwrap();
        assert_eq!(
            reduce_support(&(&inv * &p(-1, &[1])), &m, 0).unwrap(),
            LaurentPoly::one()
        );
        assert_eq!(
            inverse_mod(&p(0, &[1, 1]), &cyclo_quotient(2)),
            Err(Error::NotInvertible)
        );
    }

    #[test]
    fn division_by_one_minus_t_pow() {
        let f = one_minus_t_pow(6);
        assert_eq!(f.div_one_minus_t_pow(3), Some(p(0, &[1, 0, 0, 1])));
        assert_eq!(f.div_one_minus_t_pow(4), None);
        assert_eq!(p(0, &[1, 1]).div_one_minus_t_pow(2), None);
    }

    #[test]
    fn palindromes() {
        let f = p(0, &[1, -3, 5, -3, 1]);
        assert!(f.is_palindromic());
        assert_eq!(f.center(), Some(ratio(2, 1)));
        let g = p(9, &[-1, 1, -1]);
        assert!(g.is_palindromic());
        assert_eq!(g.center(), Some(ratio(10, 1)));
        assert!(!p(0, &[1, 2]).is_palindromic());
    }

    #[test]
    fn rational_fn_identities() {
        let a = RationalFn::new(LaurentPoly::one(), Denominator::factor(1));
        let b = RationalFn::new(p(1, &[-1]), Denominator::factor(1));
        assert_eq!(&a + &b, RationalFn::one());
        let c = RationalFn::new(one_minus_t_pow(2), Denominator::from_exponents([1, 2]));
        assert_eq!(c, a);
        assert_eq!(c.reduced().denominator(), &Denominator::factor(1));
    }

    #[test]
    fn series_of_geometric() {
        let f = RationalFn::new(LaurentPoly::one(), Denominator::factor(1));
        assert_eq!(f.series(4).unwrap(), vec![ratio(1, 1); 5]);
    }

    #[test]
    fn gorenstein_of_projective_space() {
        for n in 0..5 {
            let f = RationalFn::new(LaurentPoly::one(), Denominator::one().with(1, n as u32 + 1));
            assert!(f.is_gorenstein_symmetric(-(n + 1), n));
        }
        let f = RationalFn::new(p(1, &[1]), Denominator::factor(1));
        assert!(!f.is_gorenstein_symmetric(0, 0));
    }
}
