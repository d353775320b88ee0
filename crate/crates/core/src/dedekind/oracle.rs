use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::DedekindSpec;
use crate::{Error, Rational, Result};

const GUARD_DIGITS: u32 = 20;

/// A real number `mantissa / 10^scale`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Approx {
    pub mantissa: BigInt,
    pub scale: u32,
}

impl Approx {
    /// `|self - x| < 10^(-digits)`.
    pub fn agrees_with(&self, x: &Rational, digits: u32) -> bool {
        let pow = BigInt::from(10).pow(self.scale);
        let diff = (&self.mantissa * x.denom() - x.numer() * &pow).abs();
        let bound = x.denom() * BigInt::from(10).pow(self.scale.saturating_sub(digits));
        diff < bound
    }
}

impl fmt::Display for Approx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pow = BigInt::from(10).pow(self.scale);
        let (q, r) = self.mantissa.abs().div_rem(&pow);
        let sign = if self.mantissa.sign() == Sign::Minus {
            "-"
        } else {
            ""
        };
        let frac = r.to_str_radix(10);
        let pad = self.scale as usize - frac.len();
        write!(f, "{sign}{q}.")?;
        for _ in 0..pad {
            f.write_str("0")?;
        }
        f.write_str(&frac)
    }
}

#[derive(Clone, Debug)]
struct Fixed {
    re: BigInt,
    im: BigInt,
}

struct Ctx {
    one: BigInt,
}

impl Ctx {
    fn mul(&self, a: &Fixed, b: &Fixed) -> Fixed {
        Fixed {
            re: (&a.re * &b.re - &a.im * &b.im).div_floor(&self.one),
            im: (&a.re * &b.im + &a.im * &b.re).div_floor(&self.one),
        }
    }

    fn div(&self, a: &Fixed, b: &Fixed) -> Fixed {
        let norm = &b.re * &b.re + &b.im * &b.im;
        let re = &a.re * &b.re + &a.im * &b.im;
        let im = &a.im * &b.re - &a.re * &b.im;
        Fixed {
            re: (re * &self.one).div_floor(&norm),
            im: (im * &self.one).div_floor(&norm),
        }
    }

    fn atan_inv(&self, x: i64) -> BigInt {
        let x = BigInt::from(x);
        let x2 = &x * &x;
        let mut power = &self.one / &x;
        let mut sum = BigInt::zero();
        let mut k = 0i64;
        while !power.is_zero() {
            let term = &power / BigInt::from(2 * k + 1);
            if k % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
            power /= &x2;
            k += 1;
        }
        sum
    }

    fn pi(&self) -> BigInt {
        self.atan_inv(5) * 16 - self.atan_inv(239) * 4
    }

    /// `e^(iθ)` by Taylor series, `θ` in fixed point.
    fn cis(&self, theta: &BigInt) -> Fixed {
        let mut re = BigInt::zero();
        let mut im = BigInt::zero();
        let mut term = self.one.clone();
        let mut n = 0u32;
        while !term.is_zero() {
            match n % 4 {
                0 => re += &term,
                1 => im += &term,
                2 => re -= &term,
                _ => im -= &term,
            }
            n += 1;
            term = (term * theta) / (&self.one * BigInt::from(n));
        }
        Fixed { re, im }
    }
}

/// Evaluates `σ_i` by direct summation over roots of unity at `digits`
/// significant decimal places (plus internal guard digits).
pub fn sigma_oracle(spec: &DedekindSpec, i: i64, digits: u32) -> Result<Approx> {
    if digits < 30 {
        return Err(Error::PrecisionTooLow(digits));
    }
    let scale = digits + GUARD_DIGITS;
    let ctx = Ctx {
        one: BigInt::from(10).pow(scale),
    };
    let r = i64::from(spec.modulus());
    let two_pi = ctx.pi() * 2;
    let roots: Vec<Fixed> = (0..r).map(|m| ctx.cis(&(&two_pi * m / r))).collect();
    let unit = Fixed {
        re: ctx.one.clone(),
        im: BigInt::zero(),
    };

    let mut total = Fixed {
        re: BigInt::zero(),
        im: BigInt::zero(),
    };
    for k in 0..r {
        if spec.weights().iter().any(|&a| (k * i64::from(a)) % r == 0) {
            continue;
        }
        let mut den = unit.clone();
        for &a in spec.weights() {
            let root = &roots[(-k * i64::from(a)).rem_euclid(r) as usize];
            let factor = Fixed {
                re: &ctx.one - &root.re,
                im: -&root.im,
            };
            den = ctx.mul(&den, &factor);
        }
        let num = &roots[(k * i).rem_euclid(r) as usize];
        let term = ctx.div(num, &den);
        total.re += term.re;
        total.im += term.im;
    }
    Ok(Approx {
        mantissa: total.re / r,
        scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn quarter_eighth() {
        let spec = DedekindSpec::new(2, vec![1, 1]).unwrap();
        let a = sigma_oracle(&spec, 0, 30).unwrap();
        assert!(a.agrees_with(&ratio(1, 8), 30));
        assert!(a.to_string().starts_with("0.12499999") || a.to_string().starts_with("0.125000"));
    }

    #[test]
    fn five_three() {
        let spec = DedekindSpec::new(5, vec![3]).unwrap();
        let a = sigma_oracle(&spec, 2, 40).unwrap();
        assert!(a.agrees_with(&ratio(-2, 5), 30));
        assert!(!a.agrees_with(&(ratio(-2, 5) + ratio(1, 1_000_000_000)), 30));
    }

    #[test]
    fn precision_floor() {
        let spec = DedekindSpec::new(5, vec![3]).unwrap();
        assert_eq!(sigma_oracle(&spec, 0, 10), Err(Error::PrecisionTooLow(10)));
    }

    #[test]
    fn pi_digits() {
        let ctx = Ctx {
            one: BigInt::from(10).pow(40),
        };
        let s = ctx.pi().to_string();
        assert!(s.starts_with("31415926535897932384626433832795028841"));
    }
}
