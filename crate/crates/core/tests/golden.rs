use std::collections::BTreeMap;

use num_bigint::BigInt;
use orbirr_core::hilbert::{NormalData, VarietyDescriptor};
use orbirr_core::orbterms::{bite, curve_s1, direction_of, qorb, CurveType, PointType};
use orbirr_core::parser::{parse, search, Screening, SearchTemplate};
use orbirr_core::riemannroch::{chern_data, chi_range, smooth_term};
use orbirr_core::{ratio, Denominator, Rational};

fn x80() -> VarietyDescriptor {
    let normal = NormalData {
        deg_k: ratio(4, 5),
        gammas: vec![ratio(6, 25), ratio(14, 25)],
    };
    VarietyDescriptor::complete_intersection("X80", vec![3, 5, 7, 25, 40], vec![80])
        .and_then(|v| v.with_point("P3", 3, vec![1, 1, 1]))
        .and_then(|v| v.with_point("P7", 7, vec![4, 5, 5]))
        .and_then(|v| v.with_point("P25", 25, vec![3, 7, 15]))
        .and_then(|v| v.with_curve("C", 5, vec![3, 2], ratio(2, 25), &["P25"], Some(normal)))
        .unwrap()
}

#[test]
fn x80_chern_data() {
    let cd = chern_data(&x80()).unwrap();
    assert_eq!(cd.hn, ratio(2, 2625));
    assert_eq!(
        (cd.c(1), cd.c(2), cd.c(3)),
        (ratio(0, 1), ratio(2046, 1), ratio(-143960, 1))
    );
    for d in -5..=12 {
        let dd = Rational::from_integer(d.into());
        let want = (&dd * &dd * &dd / ratio(6, 1) + ratio(341, 2) * &dd) * &cd.hn;
        assert_eq!(smooth_term(&cd, d).unwrap(), want);
    }
}

#[test]
fn x80_plurigenera() {
    let got = chi_range(&x80(), &BTreeMap::new(), 2..=10).unwrap();
    let want: Vec<BigInt> = [0, 1, 0, 1, 1, 1, 1, 1, 2]
        .iter()
        .map(|&x| BigInt::from(x))
        .collect();
    assert_eq!(got, want);
}

#[test]
fn x80_parses() {
    let ps = parse(&x80()).unwrap();
    assert!(ps.report.passed(), "{}", ps.report);
}

fn x10() -> VarietyDescriptor {
    VarietyDescriptor::complete_intersection("X10", vec![1, 1, 1, 2, 2, 2], vec![10])
        .and_then(|v| v.with_curve("C", 2, vec![1, 1, 1], ratio(5, 2), &[], None))
        .unwrap()
}

fn x36() -> VarietyDescriptor {
    VarietyDescriptor::complete_intersection("X36", vec![1, 4, 5, 6, 9, 10], vec![36])
        .and_then(|v| v.with_point("P1", 10, vec![1, 4, 5, 9]))
        .and_then(|v| v.with_point("P2", 3, vec![1, 1, 1, 2]))
        .and_then(|v| v.with_point("P3", 3, vec![1, 1, 1, 2]))
        .and_then(|v| v.with_curve("C", 2, vec![1, 1, 1], ratio(3, 10), &["P1"], None))
        .and_then(|v| v.with_curve("L", 5, vec![1, 4, 4], ratio(1, 10), &["P1"], None))
        .unwrap()
}

fn x16() -> VarietyDescriptor {
    VarietyDescriptor::complete_intersection("X16", vec![1, 1, 1, 3, 3, 8], vec![16])
        .and_then(|v| v.with_curve("C", 3, vec![1, 1, 2], ratio(1, 3), &[], None))
        .unwrap()
}

fn x13() -> VarietyDescriptor {
    VarietyDescriptor::complete_intersection("X13", vec![1, 1, 1, 3, 3, 5], vec![13])
        .and_then(|v| v.with_point("Q", 5, vec![1, 1, 1, 3]))
        .and_then(|v| v.with_curve("C", 3, vec![1, 1, 2], ratio(1, 3), &[], None))
        .unwrap()
}

#[test]
fn x10_parse() {
    let ps = parse(&x10()).unwrap();
    assert!(ps.report.passed(), "{}", ps.report);
    assert_eq!(
        ps.initial.to_string(),
        "(1 - 2t + 4t^2 - 6t^3 + 4t^4 - 2t^5 + t^6)/((1-t)^5)"
    );
    let c = &ps.curves[0];
    assert_eq!(c.coefficient.to_string(), "5");
    assert_eq!(c.s1.to_string(), "(t^4)/((1-t)^3(1-t^2)^2)");
    assert!(c.second.is_zero());
}

#[test]
fn x36_parse() {
    let v = x36();
    let ps = parse(&v).unwrap();
    assert!(ps.report.passed(), "{}", ps.report);
    assert_eq!(
        ps.initial.to_string(),
        "(1 - 4t + 6t^2 - 4t^3 + 6t^4 - 4t^5 + t^6)/((1-t)^5)"
    );
    let terms: Vec<String> = ps.points.iter().map(|p| p.term.to_string()).collect();
    assert_eq!(
        terms,
        [
            "(-t^9 + t^10 - t^11)/((1-t)^2(1-t^2)(1-t^5)(1-t^10))",
            "(-t^4)/((1-t)^4(1-t^3))",
            "(-t^4)/((1-t)^4(1-t^3))",
        ]
    );
    let (c, l) = (&ps.curves[0], &ps.curves[1]);
    assert_eq!(c.coefficient.to_string(), "0");
    assert!(c.first().is_zero() && c.second.is_zero());
    assert_eq!(c.s1.to_string(), "(t^4)/((1-t)^3(1-t^2)^2)");
    assert_eq!(l.coefficient.to_string(), "t^-1 + t");
    assert_eq!(l.s1.to_string(), "(t^7)/((1-t)^3(1-t^5)^2)");
    assert_eq!(
        l.second.to_string(),
        "(-2t^4 - 3t^5 - 2t^6)/((1-t)^4(1-t^5))"
    );

    let p1 = v.point("P1").unwrap();
    assert_eq!(
        bite(p1, direction_of(p1, 2).unwrap()).unwrap().to_string(),
        "3/5"
    );
    assert_eq!(
        bite(p1, direction_of(p1, 5).unwrap()).unwrap().to_string(),
        "-t^-1 + 1/2 - t"
    );
}

#[test]
fn x16_and_x13_parse() {
    let ps = parse(&x16()).unwrap();
    assert!(ps.report.passed(), "{}", ps.report);
    assert_eq!(
        ps.initial.to_string(),
        "(1 - 2t + t^2 - 2t^3 + t^4)/((1-t)^5)"
    );
    assert_eq!(
        ps.curves[0].first().to_string(),
        "(-t^4)/((1-t)^3(1-t^3)^2)"
    );
    assert_eq!(ps.curves[0].second.to_string(), "(4t^3)/((1-t)^4(1-t^3))");

    let ps = parse(&x13()).unwrap();
    assert!(ps.report.passed(), "{}", ps.report);
    assert_eq!(
        ps.initial.to_string(),
        "(1 - 2t + t^2 - 2t^3 + t^4)/((1-t)^5)"
    );
    assert_eq!(
        ps.points[0].term.to_string(),
        "(t^3 + t^5)/((1-t)^4(1-t^5))"
    );
    assert_eq!(
        ps.curves[0].first().to_string(),
        "(-t^4)/((1-t)^3(1-t^3)^2)"
    );
    assert_eq!(ps.curves[0].second.to_string(), "(3t^3)/((1-t)^4(1-t^3))");
}

#[test]
fn corrupted_baskets_fail() {
    let mut v = x36();
    v.curves[1].locus.deg_h = ratio(1, 5);
    let report = parse(&v).unwrap().report;
    assert!(
        report
            .failures()
            .any(|c| c.name == "curve coefficient integral"),
        "{report}"
    );

    let mut v = x36();
    v.curves[1].locus.dissidents.clear();
    let report = parse(&v).unwrap().report;
    assert!(!report.passed());
    assert!(report
        .failures()
        .any(|c| c.name == "curve coefficient integral"));

    let mut v = x13();
    v.points.clear();
    let report = parse(&v).unwrap().report;
    assert!(
        report
            .failures()
            .any(|c| c.name == "residual split" || c.name == "sum"),
        "{report}"
    );
}

fn search_template() -> SearchTemplate {
    let s1 = |r, a| curve_s1(&CurveType::new(r, a).unwrap(), 0).unwrap();
    let q = |s, b| qorb(&PointType::new(s, b, 0).unwrap()).unwrap();
    SearchTemplate {
        canonical_weight: 0,
        dimension: 3,
        plurigenera: vec![ratio(1, 1), ratio(1, 1), ratio(2, 1)],
        fixed: vec![q(9, vec![1, 2, 6]), q(6, vec![1, 2, 3])],
        free: vec![
            ("i".into(), s1(2, vec![1, 1])),
            ("j".into(), s1(3, vec![1, 2])),
            ("k".into(), "t^3/((1-t)^3(1-t^3))".parse().unwrap()),
        ],
        trial_denominators: vec![
            Denominator::from_exponents([1, 2, 3, 3, 6, 6, 9]),
            Denominator::from_exponents([1, 2, 3, 4, 6, 6, 9]),
        ],
        screening: Screening::Support,
    }
}

#[test]
fn search_finds_both_series() {
    let t = search_template();
    assert_eq!(t.free[0].1.to_string(), "(-t^3)/((1-t)^2(1-t^2)^2)");
    assert_eq!(t.free[1].1.to_string(), "(-t^4)/((1-t)^2(1-t^3)^2)");
    assert_eq!(
        t.fixed[0].to_string(),
        "(t^6 - t^7 + t^8)/((1-t)^2(1-t^3)(1-t^9))"
    );
    assert_eq!(t.fixed[1].to_string(), "(t^6)/((1-t)(1-t^2)(1-t^3)(1-t^6))");
    let ranges: Vec<(String, std::ops::RangeInclusive<i64>)> = ["i", "j", "k"]
        .iter()
        .map(|n| (n.to_string(), 0..=3))
        .collect();
    let found = search(&t, &ranges).unwrap();
    let has = |c: [i64; 3], num: &str, den: &str| {
        found.iter().any(|x| {
            x.coefficients.iter().map(|(_, v)| *v).eq(c)
                && x.numerator.to_string() == num
                && x.denominator.to_string() == den
        })
    };
    assert!(has(
        [0, 2, 1],
        "1 - t^9 - 3t^12 + 3t^18 + t^21 - t^30",
        "(1-t)(1-t^2)(1-t^3)^2(1-t^6)^2(1-t^9)"
    ));
    let strict = search(
        &SearchTemplate {
            screening: Screening::Generators,
            ..t.clone()
        },
        &ranges,
    )
    .unwrap();
    assert!(strict.len() < found.len());
    assert!(strict.iter().all(|c| found.contains(c)));
    assert!(has(
        [1, 0, 1],
        "1 - t^10 - 2t^12 - t^13 - t^15 + t^16 + t^18 + 2t^19 + t^21 - t^31",
        "(1-t)(1-t^2)(1-t^3)(1-t^4)(1-t^6)^2(1-t^9)"
    ));
}
