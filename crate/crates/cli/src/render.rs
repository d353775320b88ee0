//! Text and JSON rendering. Every number is exact; JSON rationals are
//! `{"num": "p", "den": "q"}` with integer strings.

use orbirr_core::parser::{Candidate, CurvePart, ParsedSeries, VerificationReport};
use orbirr_core::{Denominator, LaurentPoly, Rational, RationalFn};
use serde_json::{json, Value};

pub fn rational(x: &Rational) -> Value {
    json!({ "num": x.numer().to_string(), "den": x.denom().to_string() })
}

pub fn rationals(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(rational).collect())
}

pub fn poly(p: &LaurentPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(d, c)| json!({ "deg": d, "coeff": rational(c) }))
        .collect();
    json!({ "text": p.to_string(), "terms": terms })
}

pub fn denominator(d: &Denominator) -> Value {
    let factors: Vec<Value> = d
        .factors()
        .map(|(a, m)| json!({ "exponent": a, "multiplicity": m }))
        .collect();
    json!({ "text": d.to_string(), "factors": factors })
}

pub fn ratfn(f: &RationalFn) -> Value {
    json!({ "text": f.to_string(), "numerator": poly(f.numerator()), "denominator": denominator(f.denominator()) })
}

pub fn joined<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// `g · S_1-part`, with the coefficient in parentheses when it has
/// several terms.
pub fn first_part_text(c: &CurvePart) -> String {
    let g = &c.coefficient;
    if g.num_terms() > 1 {
        format!("({g}) * {}", c.s1)
    } else {
        format!("{g} * {}", c.s1)
    }
}

pub fn report_json(r: &VerificationReport) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| json!({ "name": c.name, "subject": c.subject, "passed": c.passed, "detail": c.detail }))
        .collect();
    json!({ "passed": r.passed(), "checks": checks })
}

pub fn parsed_json(ps: &ParsedSeries) -> Value {
    let points: Vec<Value> = ps
        .points
        .iter()
        .map(|p| json!({ "label": p.label, "type": p.point.to_string(), "term": ratfn(&p.term) }))
        .collect();
    let curves: Vec<Value> = ps
        .curves
        .iter()
        .map(|c| {
            json!({
                "label": c.label,
                "type": c.curve.to_string(),
                "coefficient": poly(&c.coefficient),
                "s1": ratfn(&c.s1),
                "first": ratfn(&c.first()),
                "second": ratfn(&c.second),
            })
        })
        .collect();
    json!({
        "series": ratfn(&ps.series),
        "canonical_weight": ps.canonical_weight,
        "dimension": ps.dimension,
        "initial": ratfn(&ps.initial),
        "points": points,
        "curves": curves,
        "residual": ratfn(&ps.residual),
        "split_unique": ps.split_unique,
        "report": report_json(&ps.report),
    })
}

pub fn parsed_text(ps: &ParsedSeries) -> String {
    let mut out = format!("P(t) = {}\nP_I = {}\n", ps.series, ps.initial);
    for p in &ps.points {
        out += &format!("point {} {}: {}\n", p.label, p.point, p.term);
    }
    for c in &ps.curves {
        out += &format!("curve {} {}: g = {}\n", c.label, c.curve, c.coefficient);
        out += &format!("  first: {}\n", first_part_text(c));
        out += &format!("  second: {}\n", c.second);
    }
    if !ps.split_unique {
        out +=
            "note: curve orders share factors; the split of the second parts is one of several\n";
    }
    out
}

pub fn candidate_text(c: &Candidate) -> String {
    let coeffs = c
        .coefficients
        .iter()
        .map(|(n, v)| format!("{n}={v}"))
        .collect::<Vec<_>>()
        .join(" ");
    format!("{coeffs}: ({})/({})", c.numerator, c.denominator)
}

pub fn candidate_json(c: &Candidate) -> Value {
    let coeffs: serde_json::Map<String, Value> = c
        .coefficients
        .iter()
        .map(|(n, v)| (n.clone(), json!(v)))
        .collect();
    json!({ "coefficients": coeffs, "numerator": poly(&c.numerator), "denominator": denominator(&c.denominator), "text": c.series().to_string() })
}
