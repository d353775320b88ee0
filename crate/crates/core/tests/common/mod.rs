#![allow(dead_code)]

use std::cell::RefCell;
use std::collections::HashMap;

use num_integer::Integer;
use num_traits::Zero;
use orbirr_core::dedekind::{satisfies_congruence, satisfies_relations, sigma_all, DedekindSpec};
use orbirr_core::hilbert::VarietyDescriptor;
use orbirr_core::orbterms::{
    curve_nj, curve_s1, initial_term, qorb, s1_window, second_part_window, CurveType, PointType,
};
use orbirr_core::parser::parse;
use orbirr_core::{Denominator, LaurentPoly, Rational, RationalFn};
use proptest::prelude::*;

/// `Φ_d` by dividing `t^d - 1` by the smaller cyclotomic factors.
pub fn cyclotomic(d: u32) -> LaurentPoly {
    thread_local! {
        static CACHE: RefCell<HashMap<u32, LaurentPoly>> = RefCell::new(HashMap::new());
    }
    if let Some(p) = CACHE.with(|c| c.borrow().get(&d).cloned()) {
        return p;
    }
    let mut p = &LaurentPoly::t_pow(i64::from(d)) - &LaurentPoly::one();
    for e in (1..d).filter(|e| d.is_multiple_of(*e)) {
        p = p.exact_div(&cyclotomic(e)).expect("cyclotomic factor");
    }
    CACHE.with(|c| c.borrow_mut().insert(d, p.clone()));
    p
}

/// `∏ Φ_d` over `d | r`, `d > 1`, with `keep(d)`.
pub fn cyclotomic_product(r: u32, keep: impl Fn(u32) -> bool) -> LaurentPoly {
    (2..=r)
        .filter(|d| r.is_multiple_of(*d) && keep(*d))
        .fold(LaurentPoly::one(), |acc, d| &acc * &cyclotomic(d))
}

pub fn divides(m: &LaurentPoly, f: &LaurentPoly) -> bool {
    f.is_zero() || f.exact_div(m).is_some()
}

pub fn one_minus(a: u32) -> LaurentPoly {
    &LaurentPoly::one() - &LaurentPoly::t_pow(i64::from(a))
}

pub fn int(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

pub fn poly(max_len: usize, lo: i64, hi: i64) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(lo..=hi, 0..=max_len).prop_map(|v| LaurentPoly::from_ints(0, &v))
}

pub fn laurent(max_len: usize) -> impl Strategy<Value = LaurentPoly> {
    (poly(max_len, -9, 9), -10i64..=10).prop_map(|(p, s)| p.shift(s))
}

fn units(s: u32) -> Vec<u32> {
    (1..s).filter(|b| b.gcd(&s) == 1).collect()
}

/// Weights coprime to `s`, the last adjusted to make `k + Σ b ≡ 0`.
fn fit_weights(s: u32, k: i64, raw: &[u32]) -> Option<Vec<u32>> {
    let u = units(s);
    let mut b: Vec<u32> = raw[..raw.len() - 1]
        .iter()
        .map(|&x| u[x as usize % u.len()])
        .collect();
    let total: i64 = b.iter().map(|&x| i64::from(x)).sum();
    let last = (-k - total).rem_euclid(i64::from(s)) as u32;
    if last.gcd(&s) != 1 {
        return None;
    }
    b.push(last);
    Some(b)
}

/// A non-dissident point `1/s(b)` with `n` weights and a compatible `k`.
pub fn isolated_point(max_s: u32, max_n: usize) -> impl Strategy<Value = PointType> {
    (
        2..=max_s,
        prop::collection::vec(0u32..1000, max_n),
        1..=max_n,
        0u32..2,
    )
        .prop_filter_map("weights not coprime", |(s, raw, n, j)| {
            let u = units(s);
            let b: Vec<u32> = raw[..n].iter().map(|&x| u[x as usize % u.len()]).collect();
            let total: i64 = b.iter().map(|&x| i64::from(x)).sum();
            let k = (-total).rem_euclid(i64::from(s)) - i64::from(j * s);
            PointType::new(s, b, k).ok()
        })
}

/// A point with one weight sharing the factor `w` with `s`.
pub fn dissident_point(max_s: u32, max_n: usize) -> impl Strategy<Value = PointType> {
    (
        4..=max_s,
        prop::collection::vec(0u32..1000, max_n),
        2..=max_n,
        0u32..1000,
    )
        .prop_filter_map("no proper divisor", |(s, raw, n, pick)| {
            let divisors: Vec<u32> = (2..s).filter(|d| s % d == 0).collect();
            if divisors.is_empty() {
                return None;
            }
            let w = divisors[pick as usize % divisors.len()];
            let multiples: Vec<u32> = (1..s / w)
                .map(|m| m * w)
                .filter(|b| b.gcd(&s) == w)
                .collect();
            let u = units(s);
            let mut b = vec![multiples[pick as usize % multiples.len()]];
            b.extend(raw[1..n].iter().map(|&x| u[x as usize % u.len()]));
            let total: i64 = b.iter().map(|&x| i64::from(x)).sum();
            let k = (-total).rem_euclid(i64::from(s));
            PointType::new(s, b, k).ok()
        })
}

/// A curve `1/r(a)` with `m` transverse weights and a compatible `k`.
pub fn curve(max_r: u32, max_m: usize) -> impl Strategy<Value = (CurveType, i64)> {
    (
        2..=max_r,
        prop::collection::vec(0u32..1000, max_m),
        1..=max_m,
        0u32..2,
    )
        .prop_map(|(r, raw, m, j)| {
            let u = units(r);
            let a: Vec<u32> = raw[..m].iter().map(|&x| u[x as usize % u.len()]).collect();
            let total: i64 = a.iter().map(|&x| i64::from(x)).sum();
            let k = (-total).rem_euclid(i64::from(r)) - i64::from(j * r);
            (CurveType::new(r, a).expect("units"), k)
        })
}

/// Compatible point weights for a fixed `k`, or `None`.
pub fn point_for(s: u32, k: i64, raw: &[u32]) -> Option<PointType> {
    PointType::new(s, fit_weights(s, k, raw)?, k).ok()
}

/// Compatible curve weights for a fixed `k`, or `None`.
pub fn curve_for(r: u32, k: i64, raw: &[u32]) -> Option<CurveType> {
    let a = fit_weights(r, k, raw)?;
    CurveType::new(r, a).ok()
}

/// `1 + t + … + t^(a-1)`.
pub fn cyclo(a: u32) -> LaurentPoly {
    LaurentPoly::from_ints(0, &vec![1; a as usize])
}

/// Integral, inside the window, and palindromic as Gorenstein symmetry of
/// degree `k` forces for `n + 1` denominator factors.
pub fn check_numerator(
    f: &RationalFn,
    k: i64,
    n: i64,
    window: (i64, i64),
) -> Result<(), TestCaseError> {
    let num = f.numerator();
    let den = f.denominator();
    prop_assert_eq!(i64::from(den.count()), n + 1);
    prop_assert!(num.is_integral(), "{}", f);
    prop_assert!(
        num.supported_in(window.0, window.1),
        "{} outside {:?}",
        f,
        window
    );
    prop_assert!(num.is_symmetric_about(k + den.degree()), "{}", f);
    prop_assert!(f.is_gorenstein_symmetric(k, n));
    Ok(())
}

pub fn point_unit(p: &PointType) -> LaurentPoly {
    p.weights()
        .iter()
        .zip(p.gcds())
        .fold(LaurentPoly::one(), |acc, (&b, w)| {
            &acc * &one_minus(b).exact_div(&one_minus(w)).unwrap()
        })
}

pub fn point_modulus(p: &PointType) -> LaurentPoly {
    let gcds = p.gcds();
    cyclotomic_product(p.order(), |d| gcds.iter().all(|w| w % d != 0))
}

pub fn check_point(p: &PointType) -> Result<(), TestCaseError> {
    let f = qorb(p)?;
    let n = p.dimension() as i64;
    check_numerator(&f, p.canonical_weight(), n, p.window())?;
    let q = f.numerator();
    prop_assert!(divides(
        &point_modulus(p),
        &(&(q * &point_unit(p)) - &LaurentPoly::one())
    ));
    Ok(())
}

/// `S_1` and every `N_j` satisfy their congruences and numerator checks.
pub fn check_curve(c: &CurveType, k: i64) -> Result<(), TestCaseError> {
    let n = c.dimension() as i64;
    let unit = c
        .weights()
        .iter()
        .fold(LaurentPoly::one(), |acc, &a| &acc * &cyclo(a));
    let f = curve_s1(c, k)?;
    check_numerator(&f, k, n, s1_window(c, k))?;
    prop_assert!(divides(
        &cyclo(c.order()),
        &(&(f.numerator() * &unit) - &LaurentPoly::one())
    ));
    for (j, &aj) in c.weights().iter().enumerate() {
        let f = curve_nj(c, j, k)?;
        check_numerator(&f, k, n, second_part_window(c.order(), k + n + 1))?;
        let target = &LaurentPoly::one() + &LaurentPoly::t_pow(aj.into());
        let lhs = &(f.numerator() * &unit) * &cyclo(aj);
        prop_assert!(divides(&cyclo(c.order()), &(&lhs - &target)));
    }
    Ok(())
}

/// `σ` inverts the weight product modulo the live cyclotomic factors,
/// vanishes modulo the rest, and satisfies the defining relations.
pub fn check_sigma(spec: &DedekindSpec) -> Result<(), TestCaseError> {
    let sigma = sigma_all(spec)?;
    let r = spec.modulus();
    let a = spec.weights();
    let poly = sigma.to_poly();
    let product = a
        .iter()
        .fold(LaurentPoly::one(), |acc, &x| &acc * &one_minus(x));
    let live = cyclotomic_product(r, |d| a.iter().all(|&x| x % d != 0));
    let dead = cyclotomic_product(r, |d| a.iter().any(|&x| x % d == 0));
    prop_assert!(divides(&live, &(&(&poly * &product) - &LaurentPoly::one())));
    prop_assert!(divides(&dead, &poly));
    prop_assert!(sigma.values().iter().sum::<Rational>().is_zero());
    prop_assert!(satisfies_congruence(spec, &sigma));
    prop_assert!(satisfies_relations(spec, &sigma));
    Ok(())
}

/// A series assembled from known parts, with the descriptor that should
/// parse it back into those parts.
#[derive(Debug)]
pub struct Assembled {
    pub descriptor: VarietyDescriptor,
    pub initial: RationalFn,
    pub points: Vec<RationalFn>,
    pub curves: Vec<(i64, RationalFn, RationalFn)>,
}

pub fn assembled() -> impl Strategy<Value = Assembled> {
    (
        2i64..=5,
        0i64..=8,
        prop::collection::vec(0i64..6, 5),
        prop::collection::vec((2u32..=40, prop::collection::vec(0u32..1000, 5)), 0..=3),
        prop::collection::vec(
            (
                2u32..=12,
                prop::collection::vec(0u32..1000, 4),
                -3i64..=6,
                prop::collection::vec(-4i64..=4, 12),
            ),
            0..=2,
        ),
    )
        .prop_map(|(n, lift, plur, pts, crvs)| {
            let k = lift - n - 1;
            let c = k + n + 1;
            let len = (c / 2 + 1) as usize;
            let plurigenera: Vec<_> = plur.iter().cycle().take(len).map(|&x| int(x + 1)).collect();
            let initial = initial_term(&plurigenera, k, n).unwrap();
            let mut v = VarietyDescriptor::explicit("random", RationalFn::zero(), n, k).unwrap();
            let mut points = Vec::new();
            for (i, (s, raw)) in pts.iter().enumerate() {
                if let Some(p) = point_for(*s, k, &raw[..n as usize]) {
                    if p.gcds().iter().all(|&w| w == 1) {
                        points.push(qorb(&p).unwrap());
                        v = v
                            .with_point(format!("P{i}"), p.order(), p.weights().to_vec())
                            .unwrap();
                    }
                }
            }
            let mut curves: Vec<(i64, RationalFn, RationalFn)> = Vec::new();
            let mut orders: Vec<u32> = Vec::new();
            for (i, (r, raw, g, s2)) in crvs.iter().enumerate() {
                if orders.iter().any(|o| o.gcd(r) != 1) {
                    continue;
                }
                let Some(ty) = curve_for(*r, k, &raw[..n as usize - 1]) else {
                    continue;
                };
                let (lo, _) = second_part_window(*r, c);
                let second = RationalFn::new(
                    LaurentPoly::from_ints(lo, &s2[..*r as usize - 1]),
                    Denominator::one().with(1, n as u32).with(*r, 1),
                );
                let s1 = curve_s1(&ty, k).unwrap();
                curves.push((*g, s1.scale(&int(*g)), second));
                orders.push(*r);
                let deg_h = int(*g) / int(i64::from(*r));
                v = v
                    .with_curve(format!("C{i}"), *r, ty.weights().to_vec(), deg_h, &[], None)
                    .unwrap();
            }
            let mut total = initial.clone();
            for p in &points {
                total = &total + p;
            }
            for (_, first, second) in &curves {
                total = &(&total + first) + second;
            }
            v.source = orbirr_core::hilbert::SeriesSource::Explicit(total);
            Assembled {
                descriptor: v,
                initial,
                points,
                curves,
            }
        })
}

/// Parsing recovers every part exactly and reassembles to the input.
pub fn check_assembled(a: &Assembled) -> Result<(), TestCaseError> {
    let ps = parse(&a.descriptor)?;
    prop_assert!(ps.residual_split && ps.split_unique);
    prop_assert_eq!(&ps.initial, &a.initial);
    for (got, want) in ps.points.iter().zip(&a.points) {
        prop_assert_eq!(&got.term, want);
    }
    for (got, (g, first, second)) in ps.curves.iter().zip(&a.curves) {
        prop_assert_eq!(&got.coefficient, &LaurentPoly::constant(int(*g)));
        prop_assert_eq!(&got.first(), first);
        prop_assert_eq!(&got.second, second);
    }
    let back = ps.reassemble();
    prop_assert_eq!(&back, &ps.series);
    prop_assert_eq!(back.series(120)?, ps.series.series(120)?);
    let again = orbirr_core::parser::parse_series(&a.descriptor, back)?;
    prop_assert_eq!(again.curves, ps.curves);
    Ok(())
}
