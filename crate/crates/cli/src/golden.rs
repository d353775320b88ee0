//! Built-in worked examples with their expected output.

use std::sync::OnceLock;

use anyhow::{anyhow, Context};
use orbirr_core::dedekind::{sigma_all, DedekindSpec};
use orbirr_core::hilbert::VarietyDescriptor;
use orbirr_core::orbterms::{bite, direction_of, qorb, PointType};
use orbirr_core::parser::{parse, CurvePart, ParsedSeries, Screening};
use orbirr_core::riemannroch::RiemannRoch;
use serde_json::json;

use crate::input::{descriptor_from_str, parse_named_ranges, template_from_str};
use crate::render::{candidate_text, joined};
use crate::Outcome;

pub const DESCRIPTORS: [(&str, &str); 7] = [
    ("x11", include_str!("../data/x11.json")),
    ("x80", include_str!("../data/x80.json")),
    ("x12", include_str!("../data/x12.json")),
    ("x10", include_str!("../data/x10.json")),
    ("x36", include_str!("../data/x36.json")),
    ("x16", include_str!("../data/x16.json")),
    ("x13", include_str!("../data/x13.json")),
];

pub const SEARCH_TEMPLATE: &str = include_str!("../data/search.json");

pub const SEARCH_RANGES: &str = "i=0..3,j=0..3,k=0..3";

/// The two candidates the search template must produce.
pub const SEARCH_HITS: [&str; 2] = [
    "i=0 j=2 k=1: (1 - t^9 - 3t^12 + 3t^18 + t^21 - t^30)/((1-t)(1-t^2)(1-t^3)^2(1-t^6)^2(1-t^9))",
    "i=1 j=0 k=1: (1 - t^10 - 2t^12 - t^13 - t^15 + t^16 + t^18 + 2t^19 + t^21 - t^31)/((1-t)(1-t^2)(1-t^3)(1-t^4)(1-t^6)^2(1-t^9))",
];

pub fn descriptor(name: &str) -> anyhow::Result<VarietyDescriptor> {
    let (_, text) = DESCRIPTORS
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| anyhow!("no built-in descriptor {name}"))?;
    descriptor_from_str(text).with_context(|| format!("built-in descriptor {name}"))
}

#[derive(Clone, Debug)]
pub struct GoldenResult {
    pub name: &'static str,
    pub expected: String,
    pub got: String,
}

impl GoldenResult {
    pub fn passed(&self) -> bool {
        self.expected == self.got
    }
}

type Case = (
    &'static str,
    &'static str,
    Box<dyn Fn() -> anyhow::Result<String>>,
);

fn parsed(name: &str) -> anyhow::Result<ParsedSeries> {
    Ok(parse(&descriptor(name)?)?)
}

fn chi_list(name: &str, ds: std::ops::RangeInclusive<i64>) -> anyhow::Result<String> {
    let rr = RiemannRoch::new(&descriptor(name)?, &Default::default())?;
    Ok(joined(
        ds.map(|d| rr.chi(d)).collect::<Result<Vec<_>, _>>()?,
    ))
}

fn point_term(name: &'static str, i: usize) -> Box<dyn Fn() -> anyhow::Result<String>> {
    Box::new(move || Ok(parsed(name)?.points[i].term.to_string()))
}

fn curve_field(
    name: &'static str,
    i: usize,
    field: fn(&CurvePart) -> String,
) -> Box<dyn Fn() -> anyhow::Result<String>> {
    Box::new(move || Ok(field(&parsed(name)?.curves[i])))
}

fn initial(name: &'static str) -> Box<dyn Fn() -> anyhow::Result<String>> {
    Box::new(move || Ok(parsed(name)?.initial.to_string()))
}

fn x36_bite(r: u32) -> anyhow::Result<String> {
    let v = descriptor("x36")?;
    let p = v.point("P1").ok_or_else(|| anyhow!("P1 missing"))?;
    let i = direction_of(p, r).ok_or_else(|| anyhow!("no direction of order {r}"))?;
    Ok(bite(p, i)?.to_string())
}

fn search_candidates() -> anyhow::Result<Vec<String>> {
    static FOUND: OnceLock<Result<Vec<String>, String>> = OnceLock::new();
    let found = FOUND.get_or_init(|| {
        let run = || -> anyhow::Result<Vec<String>> {
            let t = template_from_str(SEARCH_TEMPLATE, Screening::Support)?;
            let ranges = parse_named_ranges(SEARCH_RANGES)?;
            Ok(crate::run_search(&t, &ranges)?
                .iter()
                .map(candidate_text)
                .collect())
        };
        run().map_err(|e| format!("{e:#}"))
    });
    found.clone().map_err(|e| anyhow!(e))
}

/// The expected candidate if the search finds it, otherwise every
/// candidate with the same coefficients.
fn search_hit(expected: &'static str) -> Box<dyn Fn() -> anyhow::Result<String>> {
    Box::new(move || {
        let coefficients = expected.split(':').next().unwrap_or_default();
        let hits: Vec<String> = search_candidates()?
            .into_iter()
            .filter(|s| s.split(':').next() == Some(coefficients))
            .collect();
        if hits.iter().any(|h| h == expected) {
            Ok(expected.to_string())
        } else {
            Ok(hits.join("; "))
        }
    })
}

fn cases() -> Vec<Case> {
    let g = |c: &CurvePart| c.coefficient.to_string();
    let s1 = |c: &CurvePart| c.s1.to_string();
    let first = |c: &CurvePart| c.first().to_string();
    let second = |c: &CurvePart| c.second.to_string();
    vec![
        (
            "sigma 1/5(3)",
            "2/5 0 -2/5 1/5 -1/5",
            Box::new(|| Ok(joined(sigma_all(&DedekindSpec::new(5, vec![3])?)?.values()))),
        ),
        (
            "delta 1/5(3)",
            "-2/5 -4/5 -1/5 -3/5",
            Box::new(|| Ok(joined(sigma_all(&DedekindSpec::new(5, vec![3])?)?.deltas()))),
        ),
        (
            "X11 chi 1..10",
            "1 2 3 4 6 8 10 13 16 20",
            Box::new(|| chi_list("x11", 1..=10)),
        ),
        (
            "X80 chern data",
            "c1=0 c2=2046 c3=-143960 H^3=2/2625",
            Box::new(|| {
                let rr = RiemannRoch::new(&descriptor("x80")?, &Default::default())?;
                let cd = rr.chern();
                Ok(format!(
                    "c1={} c2={} c3={} H^3={}",
                    cd.c(1),
                    cd.c(2),
                    cd.c(3),
                    cd.hn
                ))
            }),
        ),
        (
            "X80 chi 2..10",
            "0 1 0 1 1 1 1 1 2",
            Box::new(|| chi_list("x80", 2..=10)),
        ),
        (
            "X12 initial",
            "(1 - 3t + 5t^2 - 3t^3 + t^4)/((1-t)^4)",
            initial("x12"),
        ),
        ("X12 g_C", "3", curve_field("x12", 0, g)),
        (
            "X12 S1 of C",
            "(-t^3)/((1-t)^2(1-t^2)^2)",
            curve_field("x12", 0, s1),
        ),
        ("X12 second part of C", "0", curve_field("x12", 0, second)),
        (
            "X10 initial",
            "(1 - 2t + 4t^2 - 6t^3 + 4t^4 - 2t^5 + t^6)/((1-t)^5)",
            initial("x10"),
        ),
        ("X10 g_C", "5", curve_field("x10", 0, g)),
        (
            "X10 S1 of C",
            "(t^4)/((1-t)^3(1-t^2)^2)",
            curve_field("x10", 0, s1),
        ),
        ("X10 second part of C", "0", curve_field("x10", 0, second)),
        (
            "X36 initial",
            "(1 - 4t + 6t^2 - 4t^3 + 6t^4 - 4t^5 + t^6)/((1-t)^5)",
            initial("x36"),
        ),
        (
            "X36 point 1/10(1,4,5,9)",
            "(-t^9 + t^10 - t^11)/((1-t)^2(1-t^2)(1-t^5)(1-t^10))",
            point_term("x36", 0),
        ),
        (
            "X36 point P2 1/3(1,1,1,2)",
            "(-t^4)/((1-t)^4(1-t^3))",
            point_term("x36", 1),
        ),
        (
            "X36 point P3 1/3(1,1,1,2)",
            "(-t^4)/((1-t)^4(1-t^3))",
            point_term("x36", 2),
        ),
        ("X36 g_C", "0", curve_field("x36", 0, g)),
        (
            "X36 S1 of C",
            "(t^4)/((1-t)^3(1-t^2)^2)",
            curve_field("x36", 0, s1),
        ),
        ("X36 second part of C", "0", curve_field("x36", 0, second)),
        ("X36 g_L", "t^-1 + t", curve_field("x36", 1, g)),
        (
            "X36 S1 of L",
            "(t^7)/((1-t)^3(1-t^5)^2)",
            curve_field("x36", 1, s1),
        ),
        (
            "X36 second part of L",
            "(-2t^4 - 3t^5 - 2t^6)/((1-t)^4(1-t^5))",
            curve_field("x36", 1, second),
        ),
        (
            "bite of 1/10(1,4,5,9) on C",
            "3/5",
            Box::new(|| x36_bite(2)),
        ),
        (
            "bite of 1/10(1,4,5,9) on L",
            "-t^-1 + 1/2 - t",
            Box::new(|| x36_bite(5)),
        ),
        (
            "qorb 1/3(1,1,1,2) k=1",
            "(-t^4)/((1-t)^4(1-t^3))",
            Box::new(|| Ok(qorb(&PointType::new(3, vec![1, 1, 1, 2], 1)?)?.to_string())),
        ),
        (
            "X16 initial",
            "(1 - 2t + t^2 - 2t^3 + t^4)/((1-t)^5)",
            initial("x16"),
        ),
        (
            "X16 first part of C",
            "(-t^4)/((1-t)^3(1-t^3)^2)",
            curve_field("x16", 0, first),
        ),
        (
            "X16 second part of C",
            "(4t^3)/((1-t)^4(1-t^3))",
            curve_field("x16", 0, second),
        ),
        (
            "X13 initial",
            "(1 - 2t + t^2 - 2t^3 + t^4)/((1-t)^5)",
            initial("x13"),
        ),
        (
            "X13 point 1/5(1,1,1,3)",
            "(t^3 + t^5)/((1-t)^4(1-t^5))",
            point_term("x13", 0),
        ),
        (
            "X13 first part of C",
            "(-t^4)/((1-t)^3(1-t^3)^2)",
            curve_field("x13", 0, first),
        ),
        (
            "X13 second part of C",
            "(3t^3)/((1-t)^4(1-t^3))",
            curve_field("x13", 0, second),
        ),
        (
            "search candidate i=0 j=2 k=1",
            SEARCH_HITS[0],
            search_hit(SEARCH_HITS[0]),
        ),
        (
            "search candidate i=1 j=0 k=1",
            SEARCH_HITS[1],
            search_hit(SEARCH_HITS[1]),
        ),
    ]
}

/// Runs the built-in examples whose names satisfy `keep`.
pub fn results_matching(keep: impl Fn(&str) -> bool) -> Vec<GoldenResult> {
    cases()
        .into_iter()
        .filter(|(name, _, _)| keep(name))
        .map(|(name, expected, f)| GoldenResult {
            name,
            expected: expected.to_string(),
            got: f().unwrap_or_else(|e| format!("error: {e:#}")),
        })
        .collect()
}

/// Runs every built-in example.
pub fn results() -> Vec<GoldenResult> {
    results_matching(|_| true)
}

pub fn run_all() -> Outcome {
    let results = results();
    let mut text = String::new();
    for r in &results {
        if r.passed() {
            text += &format!("ok   {}\n", r.name);
        } else {
            text += &format!(
                "FAIL {}\n  expected: {}\n  got:      {}\n",
                r.name, r.expected, r.got
            );
        }
    }
    let failed = results.iter().filter(|r| !r.passed()).count();
    text += &format!(
        "{} of {} examples reproduced\n",
        results.len() - failed,
        results.len()
    );
    let json = json!({
        "passed": failed == 0,
        "examples": results
            .iter()
            .map(|r| json!({ "name": r.name, "passed": r.passed(), "expected": r.expected, "got": r.got }))
            .collect::<Vec<_>>(),
    });
    Outcome {
        text,
        json,
        code: if failed == 0 { 0 } else { 1 },
    }
}
