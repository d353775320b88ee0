//! Generalized Dedekind sums
//!
//! `σ_i(1/r(a_1,…,a_n)) = (1/r) Σ ε^i / ∏(1 - ε^(-a_j))`, the sum over
//! `r`-th roots of unity with `ε^(a_j) ≠ 1` for every `j`.
//!
//! [`sigma_all`] computes them exactly from a modular inverse plus a small
//! linear correction; [`sigma_oracle`] evaluates the defining sum directly
//! with fixed-point complex arithmetic.

mod oracle;

pub use oracle::{sigma_oracle, Approx};

use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactpoly::{cyclo_quotient, gcd, inverse_mod, LaurentPoly};
use crate::linalg;
use crate::{Error, Rational, Result};

/// A modulus `r ≥ 2` with weights `a_j`, none divisible by `r`.
/// Repeated weights encode repeated factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DedekindSpec {
    r: u32,
    weights: Vec<u32>,
}

impl DedekindSpec {
    pub fn new(r: u32, weights: Vec<u32>) -> Result<Self> {
        if r < 2 {
            return Err(Error::ModulusTooSmall(r));
        }
        if weights.is_empty() {
            return Err(Error::EmptyWeights);
        }
        if let Some(&w) = weights.iter().find(|&&w| w % r == 0) {
            return Err(Error::WeightDivisibleByModulus {
                modulus: r,
                weight: w,
            });
        }
        Ok(Self { r, weights })
    }

    pub fn modulus(&self) -> u32 {
        self.r
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// The weights with `weights[j]` repeated once more.
    pub fn doubled(&self, j: usize) -> Result<Self> {
        let a = *self.weights.get(j).ok_or(Error::IndexOutOfRange {
            index: j,
            len: self.weights.len(),
        })?;
        let mut weights = self.weights.clone();
        weights.push(a);
        Ok(Self { r: self.r, weights })
    }

    /// `∏ (1 - t^(a_j))`.
    pub fn weight_product(&self) -> LaurentPoly {
        let mut p = LaurentPoly::one();
        for &a in &self.weights {
            p.mul_one_minus_t_pow(a);
        }
        p
    }

    /// `∏ (1 - t^(a_j))` with exponents reduced mod `r`; congruent to the
    /// weight product modulo `t^r - 1`.
    pub fn folded_weight_product(&self) -> LaurentPoly {
        let r = i64::from(self.r);
        let mut dense = alloc::vec![Rational::zero(); self.r as usize];
        dense[0] = Rational::one();
        for &a in &self.weights {
            let shift = i64::from(a) % r;
            let mut next = dense.clone();
            for (i, c) in dense.iter().enumerate() {
                if !c.is_zero() {
                    next[((i as i64 + shift) % r) as usize] -= c;
                }
            }
            dense = next;
        }
        LaurentPoly::from_dense(0, dense)
    }

    /// `gcd(∏(1 - t^(a_j)), (1 - t^r)/(1 - t))`.
    pub fn h(&self) -> LaurentPoly {
        gcd(&self.folded_weight_product(), &cyclo_quotient(self.r))
            .expect("nonzero ordinary polynomials")
    }

    /// `(1 - t^r)/((1 - t)·h)`, the modulus the σ polynomial inverts against.
    pub fn reduced_modulus(&self) -> LaurentPoly {
        cyclo_quotient(self.r)
            .exact_div(&self.h())
            .expect("h divides the cyclotomic quotient")
    }
}

/// The values `σ_0, …, σ_(r-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SigmaVector(Vec<Rational>);

impl SigmaVector {
    pub fn modulus(&self) -> u32 {
        self.0.len() as u32
    }

    /// `σ_i` with `i` taken modulo `r`.
    pub fn get(&self, i: i64) -> &Rational {
        &self.0[i.rem_euclid(self.0.len() as i64) as usize]
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.0
    }

    /// `δ_i = σ_i - σ_0` for `i = 1..r`.
    pub fn deltas(&self) -> Vec<Rational> {
        (1..self.0.len()).map(|i| &self.0[i] - &self.0[0]).collect()
    }

    /// `Σ σ_i t^i`.
    pub fn to_poly(&self) -> LaurentPoly {
        LaurentPoly::from_dense(0, self.0.iter().cloned())
    }
}

/// All `σ_i` for the given spec.
///
/// `Σ σ_i t^i` is the inverse of `∏(1 - t^(a_j))` modulo
/// `B = (1 - t^r)/((1 - t) h)`; it is pinned down inside that residue class
/// by the vanishing of every class sum `Σ_l σ_(wl+k)` for `w = gcd(a_j, r)`
/// together with `Σ σ_i = 0`.
pub fn sigma_all(spec: &DedekindSpec) -> Result<SigmaVector> {
    let r = spec.r as usize;
    let b = spec.reduced_modulus();
    let base = inverse_mod(&spec.folded_weight_product(), &b)?.to_dense(0, r as i64 - 1);
    let free = r - b.degree().expect("nonzero modulus") as usize;

    let columns: Vec<Vec<Rational>> = (0..free)
        .map(|m| b.shift(m as i64).to_dense(0, r as i64 - 1))
        .collect();

    let mut moduli: Vec<usize> = spec
        .weights
        .iter()
        .map(|&a| (a as usize).gcd(&r))
        .filter(|&w| w != 1)
        .collect();
    moduli.sort_unstable();
    moduli.dedup();
    moduli.push(1);

    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for &w in &moduli {
        for k in 0..w {
            let class = (k..r).step_by(w);
            rows.push(
                columns
                    .iter()
                    .map(|col| class.clone().map(|i| &col[i]).sum())
                    .collect(),
            );
            rhs.push(-class.map(|i| &base[i]).sum::<Rational>());
        }
    }
    let sol = linalg::solve(rows, rhs, free).ok_or(Error::LinearSystem("inconsistent"))?;
    if sol.rank < free {
        return Err(Error::LinearSystem("underdetermined"));
    }
    let mut values = base;
    for (f, col) in sol.values.iter().zip(&columns) {
        if f.is_zero() {
            continue;
        }
        for (v, c) in values.iter_mut().zip(col) {
            *v += f * c;
        }
    }
    Ok(SigmaVector(values))
}

fn mod_inverse(a: u32, r: u32) -> Result<i64> {
    let (a, r) = (i64::from(a), i64::from(r));
    let e = a.extended_gcd(&r);
    if e.gcd != 1 {
        return Err(Error::NotCoprime {
            modulus: r as u32,
            weight: a as u32,
        });
    }
    Ok(e.x.rem_euclid(r))
}

/// `δ_i = σ_i - σ_0` for `1/r(a)` with `gcd(a, r) = 1`, in closed form
/// `-(b·i mod r)/r` where `b·a ≡ 1 (mod r)`.
pub fn delta_closed_form(r: u32, a: u32, i: i64) -> Result<Rational> {
    if r < 2 {
        return Err(Error::ModulusTooSmall(r));
    }
    let b = mod_inverse(a, r)?;
    let r = i64::from(r);
    Ok(Rational::new(
        (-(b * i.rem_euclid(r)).rem_euclid(r)).into(),
        r.into(),
    ))
}

/// `δ_1, …, δ_(r-1)` for `1/r(a)`.
pub fn delta_vector(r: u32, a: u32) -> Result<Vec<Rational>> {
    (1..i64::from(r))
        .map(|i| delta_closed_form(r, a, i))
        .collect()
}

/// `δ_(i,j)`: the sum with `(1 + ε^(-a_j))/(1 - ε^(-a_j))^2` in place of the
/// `j`-th factor, computed as `σ_i + σ_(i - a_j)` of the weights with `a_j`
/// doubled. `j` is a 0-based index into the weights.
pub fn delta_ij(spec: &DedekindSpec, j: usize, i: i64) -> Result<Rational> {
    let doubled = spec.doubled(j)?;
    let s = sigma_all(&doubled)?;
    Ok(s.get(i) + s.get(i - i64::from(spec.weights[j])))
}

/// Checks that `(Σ σ_i t^i)·∏(1 - t^(a_j)) ≡ 1` modulo the reduced modulus.
pub fn satisfies_congruence(spec: &DedekindSpec, sigma: &SigmaVector) -> bool {
    let b = spec.reduced_modulus();
    let prod = &sigma.to_poly() * &spec.weight_product();
    let one = crate::exactpoly::reduce_support(&LaurentPoly::one(), &b, 0);
    crate::exactpoly::reduce_support(&prod, &b, 0).ok() == one.ok()
}

/// Checks `Σ σ_i = 0` and the class-sum relations for every `w = gcd(a_j, r)`.
pub fn satisfies_relations(spec: &DedekindSpec, sigma: &SigmaVector) -> bool {
    let r = spec.r as usize;
    let v = sigma.values();
    core::iter::once(1)
        .chain(spec.weights.iter().map(|&a| (a as usize).gcd(&r)))
        .all(|w| (0..w).all(|k| (k..r).step_by(w).map(|i| &v[i]).sum::<Rational>().is_zero()))
}

/// `σ_0 = (r - 1)/(2r)` for a single weight coprime to `r`.
pub fn sigma0_single(r: u32) -> Rational {
    Rational::new((i64::from(r) - 1).into(), (2 * i64::from(r)).into())
}
