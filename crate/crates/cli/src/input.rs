//! JSON descriptors and search templates.
//!
//! Rationals may be written as integers, as strings like `"3/10"`, or as
//! `{"num": "3", "den": "10"}`.

use std::path::Path;

use anyhow::{anyhow, bail, Context};
use num_bigint::BigInt;
use orbirr_core::hilbert::{NormalData, VarietyDescriptor};
use orbirr_core::orbterms::{curve_s1, qorb, CurveType, PointType};
use orbirr_core::parser::{Screening, SearchTemplate};
use orbirr_core::{Denominator, Rational, RationalFn};
use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum IntText {
    Int(i64),
    Text(String),
}

impl IntText {
    fn to_bigint(&self) -> anyhow::Result<BigInt> {
        match self {
            Self::Int(x) => Ok(BigInt::from(*x)),
            Self::Text(s) => s
                .trim()
                .parse()
                .with_context(|| format!("bad integer {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum RationalJson {
    Int(i64),
    Text(String),
    Pair { num: IntText, den: IntText },
}

impl RationalJson {
    pub fn to_rational(&self) -> anyhow::Result<Rational> {
        match self {
            Self::Int(x) => Ok(Rational::from_integer((*x).into())),
            Self::Text(s) => parse_rational(s),
            Self::Pair { num, den } => {
                let den = den.to_bigint()?;
                if den == BigInt::from(0) {
                    bail!("zero denominator");
                }
                Ok(Rational::new(num.to_bigint()?, den))
            }
        }
    }
}

pub fn parse_rational(s: &str) -> anyhow::Result<Rational> {
    let s = s.trim().replace('\u{2212}', "-");
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n
                .trim()
                .parse()
                .with_context(|| format!("bad rational {s:?}"))?;
            let d: BigInt = d
                .trim()
                .parse()
                .with_context(|| format!("bad rational {s:?}"))?;
            if d == BigInt::from(0) {
                bail!("zero denominator in {s:?}");
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(
            s.parse().with_context(|| format!("bad rational {s:?}"))?,
        )),
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointJson {
    pub label: String,
    pub order: u32,
    pub weights: Vec<u32>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormalJson {
    pub deg_k: RationalJson,
    pub gammas: Vec<RationalJson>,
}

impl NormalJson {
    pub fn to_normal(&self) -> anyhow::Result<NormalData> {
        Ok(NormalData {
            deg_k: self.deg_k.to_rational()?,
            gammas: self
                .gammas
                .iter()
                .map(RationalJson::to_rational)
                .collect::<anyhow::Result<_>>()?,
        })
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveJson {
    pub label: String,
    pub order: u32,
    pub weights: Vec<u32>,
    pub deg_h: RationalJson,
    #[serde(default)]
    pub dissidents: Vec<String>,
    #[serde(default)]
    pub normal: Option<NormalJson>,
}

/// A variety: either `weights` and `degrees` of a weighted complete
/// intersection, or an explicit `series` with `dimension` and
/// `canonical_weight`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescriptorJson {
    pub name: String,
    #[serde(default)]
    pub weights: Option<Vec<u32>>,
    #[serde(default)]
    pub degrees: Option<Vec<u32>>,
    #[serde(default)]
    pub series: Option<String>,
    #[serde(default)]
    pub dimension: Option<i64>,
    #[serde(default)]
    pub canonical_weight: Option<i64>,
    #[serde(default)]
    pub points: Vec<PointJson>,
    #[serde(default)]
    pub curves: Vec<CurveJson>,
}

impl DescriptorJson {
    pub fn to_descriptor(&self) -> anyhow::Result<VarietyDescriptor> {
        let mut v = match (&self.weights, &self.series) {
            (Some(w), None) => {
                let v = VarietyDescriptor::complete_intersection(
                    &self.name,
                    w.clone(),
                    self.degrees.clone().unwrap_or_default(),
                )?;
                if let Some(n) = self.dimension.filter(|&n| n != v.dimension) {
                    bail!("dimension {n} given but the equations give {}", v.dimension);
                }
                if let Some(k) = self.canonical_weight.filter(|&k| k != v.canonical_weight) {
                    bail!(
                        "canonical weight {k} given but the equations give {}",
                        v.canonical_weight
                    );
                }
                v
            }
            (None, Some(s)) => {
                let series: RationalFn = s.parse()?;
                let n = self
                    .dimension
                    .ok_or_else(|| anyhow!("an explicit series needs \"dimension\""))?;
                let k = self
                    .canonical_weight
                    .ok_or_else(|| anyhow!("an explicit series needs \"canonical_weight\""))?;
                VarietyDescriptor::explicit(&self.name, series, n, k)?
            }
            _ => bail!("give exactly one of \"weights\" or \"series\""),
        };
        for p in &self.points {
            v = v
                .with_point(&p.label, p.order, p.weights.clone())
                .with_context(|| format!("point {}", p.label))?;
        }
        for c in &self.curves {
            let dissidents: Vec<&str> = c.dissidents.iter().map(String::as_str).collect();
            let normal = c.normal.as_ref().map(NormalJson::to_normal).transpose()?;
            v = v
                .with_curve(
                    &c.label,
                    c.order,
                    c.weights.clone(),
                    c.deg_h.to_rational()?,
                    &dissidents,
                    normal,
                )
                .with_context(|| format!("curve {}", c.label))?;
        }
        v.validate()?;
        Ok(v)
    }
}

pub fn descriptor_from_str(text: &str) -> anyhow::Result<VarietyDescriptor> {
    let json: DescriptorJson = serde_json::from_str(text).context("malformed descriptor")?;
    json.to_descriptor()
}

pub fn load_descriptor(path: &Path) -> anyhow::Result<VarietyDescriptor> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    descriptor_from_str(&text).with_context(|| format!("in {}", path.display()))
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypeJson {
    pub order: u32,
    pub weights: Vec<u32>,
}

/// A term of a search template.
#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TermJson {
    /// Point term of `1/s(b)`.
    Point(TypeJson),
    /// First curve part of `1/r(a)`.
    Curve(TypeJson),
    Series(String),
}

impl TermJson {
    fn to_ratfn(&self, k: i64) -> anyhow::Result<RationalFn> {
        Ok(match self {
            Self::Point(t) => qorb(&PointType::new(t.order, t.weights.clone(), k)?)?,
            Self::Curve(t) => curve_s1(&CurveType::new(t.order, t.weights.clone())?, k)?,
            Self::Series(s) => s.parse()?,
        })
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FreeTermJson {
    pub name: String,
    #[serde(flatten)]
    pub term: TermJson,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TemplateJson {
    pub canonical_weight: i64,
    pub dimension: i64,
    pub plurigenera: Vec<RationalJson>,
    #[serde(default)]
    pub fixed: Vec<TermJson>,
    #[serde(default)]
    pub free: Vec<FreeTermJson>,
    pub trial_denominators: Vec<Vec<u32>>,
}

impl TemplateJson {
    pub fn to_template(&self, screening: Screening) -> anyhow::Result<SearchTemplate> {
        let k = self.canonical_weight;
        if let Some(bad) = self.trial_denominators.iter().flatten().find(|&&a| a == 0) {
            bail!("trial denominator exponent {bad} must be positive");
        }
        Ok(SearchTemplate {
            canonical_weight: k,
            dimension: self.dimension,
            plurigenera: self
                .plurigenera
                .iter()
                .map(RationalJson::to_rational)
                .collect::<anyhow::Result<_>>()?,
            fixed: self
                .fixed
                .iter()
                .map(|t| t.to_ratfn(k))
                .collect::<anyhow::Result<_>>()?,
            free: self
                .free
                .iter()
                .map(|f| Ok((f.name.clone(), f.term.to_ratfn(k)?)))
                .collect::<anyhow::Result<_>>()?,
            trial_denominators: self
                .trial_denominators
                .iter()
                .map(|d| Denominator::from_exponents(d.iter().copied()))
                .collect(),
            screening,
        })
    }
}

pub fn template_from_str(text: &str, screening: Screening) -> anyhow::Result<SearchTemplate> {
    let json: TemplateJson = serde_json::from_str(text).context("malformed search template")?;
    json.to_template(screening)
}

pub fn load_template(path: &Path, screening: Screening) -> anyhow::Result<SearchTemplate> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    template_from_str(&text, screening).with_context(|| format!("in {}", path.display()))
}

/// `lo..hi` or `lo..=hi`, both inclusive.
pub fn parse_range(s: &str) -> anyhow::Result<std::ops::RangeInclusive<i64>> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| anyhow!("range {s:?} should look like 1..10"))?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    Ok(lo
        .trim()
        .parse::<i64>()
        .with_context(|| format!("bad range {s:?}"))?
        ..=hi
            .trim()
            .parse::<i64>()
            .with_context(|| format!("bad range {s:?}"))?)
}

/// `i=0..3,j=0..3`.
pub fn parse_named_ranges(s: &str) -> anyhow::Result<Vec<(String, std::ops::RangeInclusive<i64>)>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|part| {
            let (name, range) = part
                .split_once('=')
                .ok_or_else(|| anyhow!("expected name=lo..hi, got {part:?}"))?;
            Ok((name.trim().to_string(), parse_range(range)?))
        })
        .collect()
}
