//! Parsing a Hilbert series into initial, point and curve terms.
//!
//! `P(t) = P_I(t) + Σ_Q P_orb,Q(t) + Σ_C (g_C(t) S_C,1-part + S_C,2-part)`.
//! Everything except the second curve parts has a closed form; those are
//! what remains, split among the curves by the Chinese remainder theorem.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::RangeInclusive;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactpoly::{
    cyclo_quotient, inverse_mod, reduce_support, Denominator, LaurentPoly, RationalFn,
};
use crate::hilbert::{series_of, VarietyDescriptor};
use crate::orbterms::{
    bite, curve_s1, direction_of, initial_term, qorb, s1_window, second_part_window, CurveType,
    PointType,
};
use crate::{floor_half, linalg, Error, Rational, Result};

/// The point term of one basket point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointPart {
    pub label: String,
    pub point: PointType,
    pub term: RationalFn,
}

/// Both parts of the orbifold term of one basket curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvePart {
    pub label: String,
    pub curve: CurveType,
    /// `g_C(t) = r·deg H|_C - Σ bites`.
    pub coefficient: LaurentPoly,
    /// `S_1/((1-t)^(n-1)(1-t^r)^2)`.
    pub s1: RationalFn,
    /// `S_2/((1-t)^n (1-t^r))`.
    pub second: RationalFn,
}

impl CurvePart {
    /// `g_C · S_1-part`.
    pub fn first(&self) -> RationalFn {
        self.s1.mul_poly(&self.coefficient)
    }

    pub fn total(&self) -> RationalFn {
        &self.first() + &self.second
    }
}

/// One verification outcome, with the offending data in `detail` on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub subject: String,
    pub passed: bool,
    pub detail: String,
}

/// All checks run against a parse; it passes iff every check passes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> + '_ {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, name: &'static str, subject: &str, passed: bool, detail: impl Into<String>) {
        let detail = if passed { String::new() } else { detail.into() };
        self.checks.push(Check {
            name,
            subject: subject.to_string(),
            passed,
            detail,
        });
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            write!(f, "{status} {} [{}]", c.name, c.subject)?;
            if !c.detail.is_empty() {
                write!(f, ": {}", c.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A Hilbert series split into its orbifold parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedSeries {
    pub series: RationalFn,
    pub canonical_weight: i64,
    pub dimension: i64,
    pub initial: RationalFn,
    pub points: Vec<PointPart>,
    pub curves: Vec<CurvePart>,
    /// `P - P_I - Σ point terms - Σ first curve parts`.
    pub residual: RationalFn,
    /// False when the residual could not be written as second curve parts.
    pub residual_split: bool,
    /// False when curve orders share factors and the split is only one of
    /// several possible.
    pub split_unique: bool,
    pub report: VerificationReport,
}

impl ParsedSeries {
    pub fn coindex(&self) -> i64 {
        self.canonical_weight + self.dimension + 1
    }

    /// Sum of all parts.
    pub fn reassemble(&self) -> RationalFn {
        let mut total = self.initial.clone();
        for p in &self.points {
            total = &total + &p.term;
        }
        for c in &self.curves {
            total = &total + &c.total();
        }
        total
    }

    /// The parse, or the first failed check as an error.
    pub fn into_verified(self) -> Result<Self> {
        let Some(bad) = self.report.failures().next() else {
            return Ok(self);
        };
        let msg = format!("{} [{}]: {}", bad.name, bad.subject, bad.detail);
        Err(match bad.name {
            "curve coefficient integral" => Error::NonIntegralCoefficient {
                what: bad.subject.clone(),
                value: bad.detail.clone(),
            },
            "residual split" | "sum" => Error::ResidualNotExpressible(msg),
            _ => Error::InvalidDescriptor(msg),
        })
    }
}

/// The residual written as `Σ_C S_C/((1-t)^n (1-t^(r_C)))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualSplit {
    /// Numerators `S_C`, in curve order.
    pub parts: Vec<LaurentPoly>,
    pub unique: bool,
}

/// Splits `R` among curves of the given orders.
///
/// `S = R (1-t)^(n+1) ∏_C (1-t^(r_C))/(1-t)` must be a polynomial. For
/// pairwise coprime orders `S_C = S (∏_(C'≠C) Φ_C')^(-1) mod Φ_C` with
/// `Φ_r = (1-t^r)/(1-t)`, placed in `[⌊c/2⌋+1, ⌊c/2⌋+r_C-1]`; otherwise
/// the windowed coefficients are solved for directly. The parts must
/// recombine to `S` exactly.
pub fn split_residual(
    residual: &RationalFn,
    orders: &[u32],
    k: i64,
    n: i64,
) -> Result<ResidualSplit> {
    if orders.is_empty() {
        return if residual.is_zero() {
            Ok(ResidualSplit {
                parts: Vec::new(),
                unique: true,
            })
        } else {
            Err(Error::ResidualNotExpressible(format!(
                "no curves but residual {residual}"
            )))
        };
    }
    let target = orders
        .iter()
        .fold(Denominator::one().with(1, (n + 1) as u32), |d, &r| {
            d.with(r, 1)
        });
    let mut s = residual.numerator_over(&target).ok_or_else(|| {
        Error::ResidualNotExpressible(format!(
            "{residual} has poles outside the curve denominators"
        ))
    })?;
    for _ in orders {
        s = s.div_one_minus_t_pow(1).ok_or_else(|| {
            Error::ResidualNotExpressible(format!("{residual} has too high a pole at t = 1"))
        })?;
    }
    let phis: Vec<LaurentPoly> = orders.iter().map(|&r| cyclo_quotient(r)).collect();
    let cofactors: Vec<LaurentPoly> = (0..orders.len())
        .map(|i| {
            phis.iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(LaurentPoly::one(), |acc, (_, p)| &acc * p)
        })
        .collect();
    let starts: Vec<i64> = orders
        .iter()
        .map(|&r| second_part_window(r, k + n + 1).0)
        .collect();

    let coprime = orders
        .iter()
        .enumerate()
        .all(|(i, a)| orders[i + 1..].iter().all(|b| a.gcd(b) == 1));
    let (parts, unique) = if coprime {
        let parts = (0..orders.len())
            .map(|i| {
                let inv = inverse_mod(&cofactors[i], &phis[i])?;
                reduce_support(&(&s * &inv), &phis[i], starts[i])
            })
            .collect::<Result<Vec<_>>>()?;
        (parts, true)
    } else {
        split_by_linear_system(&s, orders, &cofactors, &starts)?
    };

    let recombined = parts
        .iter()
        .zip(&cofactors)
        .fold(LaurentPoly::zero(), |acc, (p, c)| &acc + &(p * c));
    if recombined != s {
        return Err(Error::ResidualNotExpressible(format!(
            "the numerator {s} does not fit the second-part windows"
        )));
    }
    Ok(ResidualSplit { parts, unique })
}

fn split_by_linear_system(
    s: &LaurentPoly,
    orders: &[u32],
    cofactors: &[LaurentPoly],
    starts: &[i64],
) -> Result<(Vec<LaurentPoly>, bool)> {
    let mut columns: Vec<(usize, i64, LaurentPoly)> = Vec::new();
    for (i, &r) in orders.iter().enumerate() {
        for e in starts[i]..starts[i] + i64::from(r) - 1 {
            columns.push((i, e, cofactors[i].shift(e)));
        }
    }
    let degrees = columns
        .iter()
        .flat_map(|(_, _, c)| c.support())
        .chain(s.support());
    let (lo, hi) = degrees.fold((i64::MAX, i64::MIN), |(lo, hi), d| (lo.min(d), hi.max(d)));
    if lo > hi {
        return Ok((orders.iter().map(|_| LaurentPoly::zero()).collect(), true));
    }
    let rows = (lo..=hi)
        .map(|d| columns.iter().map(|(_, _, c)| c.coeff(d)).collect())
        .collect();
    let rhs = (lo..=hi).map(|d| s.coeff(d)).collect();
    let sol = linalg::solve(rows, rhs, columns.len()).ok_or_else(|| {
        Error::ResidualNotExpressible(format!("no second parts in the windows give {s}"))
    })?;
    let mut parts: Vec<LaurentPoly> = orders.iter().map(|_| LaurentPoly::zero()).collect();
    for ((i, e, _), v) in columns.iter().zip(&sol.values) {
        parts[*i].add_term(*e, v);
    }
    Ok((parts, sol.rank == columns.len()))
}

/// Bites of the dissident points of a curve that genuinely lie on it.
fn coefficient_of(v: &VarietyDescriptor, idx: usize) -> Result<LaurentPoly> {
    let locus = &v.curves[idx].locus;
    let r = locus.curve.order();
    let mut g = LaurentPoly::constant(&locus.deg_h * Rational::from_integer(r.into()));
    for p in v.dissidents_of(idx)? {
        if let Some(i) = direction_of(p, r) {
            g -= &bite(p, i)?;
        }
    }
    Ok(g)
}

/// Parses the Hilbert series of `v` against its basket.
///
/// Structural problems with the descriptor are errors; an inconsistent
/// basket (non-integral `g_C`, a residual that is not a sum of second curve
/// parts, a wrong dissident attachment) yields a parse whose report fails.
pub fn parse(v: &VarietyDescriptor) -> Result<ParsedSeries> {
    v.validate()?;
    let series = series_of(v);
    parse_series(v, series)
}

/// Parses an explicit series against the basket of `v`.
pub fn parse_series(v: &VarietyDescriptor, series: RationalFn) -> Result<ParsedSeries> {
    let (k, n) = (v.canonical_weight, v.dimension);
    let c = k + n + 1;
    let prefix_len = if c < 0 { 0 } else { floor_half(c) as usize + 1 };
    let plurigenera = if prefix_len == 0 {
        Vec::new()
    } else {
        series.series(prefix_len - 1)?
    };
    let initial = initial_term(&plurigenera, k, n)?;

    let points = v
        .points
        .iter()
        .map(|p| {
            Ok(PointPart {
                label: p.label.clone(),
                point: p.point.clone(),
                term: qorb(&p.point)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut curves = Vec::with_capacity(v.curves.len());
    for (idx, bc) in v.curves.iter().enumerate() {
        let s1 = curve_s1(&bc.locus.curve, k)?;
        let coefficient = coefficient_of(v, idx)?;
        curves.push(CurvePart {
            label: bc.label.clone(),
            curve: bc.locus.curve.clone(),
            coefficient,
            s1,
            second: RationalFn::zero(),
        });
    }

    let mut residual = &series - &initial;
    for p in &points {
        residual = &residual - &p.term;
    }
    for cp in &curves {
        residual = &residual - &cp.first();
    }
    let residual = residual.reduced();

    let orders: Vec<u32> = curves.iter().map(|c| c.curve.order()).collect();
    let (residual_split, split_unique) = match split_residual(&residual, &orders, k, n) {
        Ok(split) => {
            for (cp, s) in curves.iter_mut().zip(split.parts) {
                let den = Denominator::one()
                    .with(1, n as u32)
                    .with(cp.curve.order(), 1);
                cp.second = RationalFn::new(s, den);
            }
            (true, split.unique)
        }
        Err(_) => (false, true),
    };

    let mut parsed = ParsedSeries {
        series,
        canonical_weight: k,
        dimension: n,
        initial,
        points,
        curves,
        residual,
        residual_split,
        split_unique,
        report: VerificationReport::default(),
    };
    parsed.report = verify(&parsed, v);
    Ok(parsed)
}

fn window_detail(p: &LaurentPoly, lo: i64, hi: i64) -> String {
    format!("{p} should lie in [{lo}, {hi}]")
}

fn nonintegral_detail(p: &LaurentPoly) -> String {
    match p.non_integral_terms().next() {
        Some((d, c)) => format!("{p} has coefficient {c} at t^{d}"),
        None => String::new(),
    }
}

/// Runs every guarantee of the parse: prefix agreement of the initial term,
/// integrality, windows and Gorenstein symmetry of each term, integrality
/// of `g_C`, vanishing of second parts of `1/2(1,…,1)` curves at even
/// coindex, dissident attachment and exact reassembly.
pub fn verify(ps: &ParsedSeries, v: &VarietyDescriptor) -> VerificationReport {
    let mut rep = VerificationReport::default();
    let (k, n) = (ps.canonical_weight, ps.dimension);
    let c = k + n + 1;

    let issues = v.attachment_issues();
    rep.push(
        "dissident attachment",
        &v.name,
        issues.is_empty(),
        issues.join("; "),
    );

    let half = if c < 0 {
        None
    } else {
        Some(floor_half(c) as usize)
    };
    if let Some(h) = half {
        let ok = match (ps.initial.series(h), ps.series.series(h)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        };
        rep.push(
            "initial prefix",
            "P_I",
            ok,
            if ok {
                String::new()
            } else {
                format!("{} vs {}", ps.initial, ps.series)
            },
        );
    }
    let init = ps.initial.numerator();
    let init_ok =
        init.is_integral() && init.is_symmetric_about(c) && init.supported_in(0, c.max(0));
    rep.push(
        "initial numerator",
        "P_I",
        init_ok,
        if init_ok {
            String::new()
        } else {
            format!("{init}")
        },
    );
    symmetric(&mut rep, "P_I", &ps.initial, k, n);

    for p in &ps.points {
        let q = p.term.numerator();
        rep.push(
            "point term integral",
            &p.label,
            q.is_integral(),
            nonintegral_detail(q),
        );
        let (lo, hi) = p.point.window();
        rep.push(
            "point term window",
            &p.label,
            q.supported_in(lo, hi),
            window_detail(q, lo, hi),
        );
        symmetric(&mut rep, &p.label, &p.term, k, n);
    }

    for cp in &ps.curves {
        let g = &cp.coefficient;
        rep.push(
            "curve coefficient integral",
            &cp.label,
            g.is_integral(),
            nonintegral_detail(g),
        );
        rep.push(
            "curve coefficient symmetric",
            &cp.label,
            g.is_symmetric_about(0),
            format!("g_C = {g}"),
        );
        let s1 = cp.s1.numerator();
        let (lo, hi) = s1_window(&cp.curve, k);
        rep.push(
            "first part window",
            &cp.label,
            s1.is_integral() && s1.supported_in(lo, hi),
            window_detail(s1, lo, hi),
        );
        symmetric(&mut rep, &cp.label, &cp.first(), k, n);

        let s2 = cp.second.numerator();
        let (lo, hi) = second_part_window(cp.curve.order(), c);
        rep.push(
            "second part window",
            &cp.label,
            s2.supported_in(lo, hi),
            window_detail(s2, lo, hi),
        );
        rep.push(
            "second part integral",
            &cp.label,
            s2.is_integral(),
            nonintegral_detail(s2),
        );
        symmetric(&mut rep, &cp.label, &cp.second, k, n);
        if cp.curve.order() == 2 && c.is_even() {
            rep.push(
                "second part vanishes",
                &cp.label,
                s2.is_zero(),
                format!("S_2 = {s2}"),
            );
        }
    }

    rep.push(
        "residual split",
        &v.name,
        ps.residual_split,
        if ps.residual_split {
            String::new()
        } else {
            format!("residual {}", ps.residual)
        },
    );
    let total = ps.reassemble();
    let ok = total == ps.series;
    rep.push(
        "sum",
        &v.name,
        ok,
        if ok {
            String::new()
        } else {
            format!("difference {}", (&ps.series - &total).reduced())
        },
    );
    rep
}

fn symmetric(rep: &mut VerificationReport, subject: &str, f: &RationalFn, k: i64, n: i64) {
    let ok = f.is_gorenstein_symmetric(k, n);
    rep.push(
        "Gorenstein symmetric",
        subject,
        ok,
        if ok { String::new() } else { format!("{f}") },
    );
}

/// A template for the candidate search: initial term from plurigenera,
/// fixed orbifold terms, and terms with unknown integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchTemplate {
    pub canonical_weight: i64,
    pub dimension: i64,
    pub plurigenera: Vec<Rational>,
    pub fixed: Vec<RationalFn>,
    pub free: Vec<(String, RationalFn)>,
    pub trial_denominators: Vec<Denominator>,
    pub screening: Screening,
}

/// A Hilbert series found by [`search`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub coefficients: Vec<(String, i64)>,
    pub denominator: Denominator,
    pub numerator: LaurentPoly,
}

impl Candidate {
    pub fn series(&self) -> RationalFn {
        RationalFn::new(self.numerator.clone(), self.denominator.clone())
    }
}

impl SearchTemplate {
    /// Every grid point, in lexicographic order with the last term fastest.
    pub fn grid(&self, ranges: &[(String, RangeInclusive<i64>)]) -> Result<Vec<Vec<i64>>> {
        let ordered: Vec<&RangeInclusive<i64>> = self
            .free
            .iter()
            .map(|(name, _)| {
                ranges
                    .iter()
                    .find(|(n, _)| n == name)
                    .map(|(_, r)| r)
                    .ok_or_else(|| {
                        Error::InvalidDescriptor(format!("no range for free term {name}"))
                    })
            })
            .collect::<Result<_>>()?;
        if let Some((name, _)) = ranges
            .iter()
            .find(|(n, _)| !self.free.iter().any(|(m, _)| m == n))
        {
            return Err(Error::InvalidDescriptor(format!(
                "range for unknown term {name}"
            )));
        }
        let mut points: Vec<Vec<i64>> = alloc::vec![Vec::new()];
        for r in ordered {
            points = points
                .into_iter()
                .flat_map(|p| {
                    r.clone().map(move |x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        Ok(points)
    }

    /// `P_I + Σ fixed`.
    pub fn base(&self) -> Result<RationalFn> {
        let initial = initial_term(&self.plurigenera, self.canonical_weight, self.dimension)?;
        Ok(self.fixed.iter().fold(initial, |acc, f| &acc + f))
    }

    /// Candidates at one grid point, one per plausible trial denominator.
    pub fn evaluate(&self, base: &RationalFn, point: &[i64]) -> Vec<Candidate> {
        let p = self
            .free
            .iter()
            .zip(point)
            .fold(base.clone(), |acc, ((_, f), &x)| {
                &acc + &f.scale(&Rational::from_integer(x.into()))
            });
        let c = self.canonical_weight + self.dimension + 1;
        self.trial_denominators
            .iter()
            .filter_map(|den| {
                let num = p.numerator_over(den)?;
                plausible(&num, den, c, self.screening).then(|| Candidate {
                    coefficients: self
                        .free
                        .iter()
                        .map(|(n, _)| n.clone())
                        .zip(point.iter().copied())
                        .collect(),
                    denominator: den.clone(),
                    numerator: num,
                })
            })
            .collect()
    }
}

/// How strictly [`search`] screens numerators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Screening {
    /// Polynomial with integral coefficients, degree at most
    /// `Σ exponents + c`, and a nonnegative series through that degree.
    #[default]
    Support,
    /// Additionally constant term 1 with the next term negative, so the
    /// trial denominator is not missing a generator of low degree.
    Generators,
}

fn plausible(num: &LaurentPoly, den: &Denominator, c: i64, screening: Screening) -> bool {
    if num.is_zero() || num.lowest_degree().is_some_and(|d| d < 0) || !num.is_integral() {
        return false;
    }
    if screening == Screening::Generators {
        let relation_next = num
            .terms()
            .nth(1)
            .is_none_or(|(_, x)| x.is_negative_value());
        if num.lowest_degree() != Some(0) || !num.coeff(0).is_one() || !relation_next {
            return false;
        }
    }
    let bound = den.degree() + c;
    if num.degree().is_some_and(|d| d > bound) || bound < 0 {
        return false;
    }
    RationalFn::new(num.clone(), den.clone())
        .series(bound as usize)
        .map(|s| s.iter().all(|x| !x.is_negative_value()))
        .unwrap_or(false)
}

trait NonNegative {
    fn is_negative_value(&self) -> bool;
}

impl NonNegative for Rational {
    fn is_negative_value(&self) -> bool {
        self < &Rational::zero()
    }
}

/// Enumerates the grid and returns every plausible candidate, in grid order.
pub fn search(
    template: &SearchTemplate,
    ranges: &[(String, RangeInclusive<i64>)],
) -> Result<Vec<Candidate>> {
    let base = template.base()?;
    Ok(template
        .grid(ranges)?
        .iter()
        .flat_map(|p| template.evaluate(&base, p))
        .collect())
}
