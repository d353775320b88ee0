mod common;

use std::collections::BTreeMap;

use common::{curve, int, isolated_point};
use num_bigint::BigInt;
use orbirr_core::hilbert::{series_of, NormalData, VarietyDescriptor};
use orbirr_core::riemannroch::{chi_range, curve_term, point_term, CurveSums, CurveVariant};
use orbirr_core::Rational;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn curve_variants_differ_by_a_constant(
        (c, _k) in curve(20, 3),
        h in 1i64..=30,
        kc in -10i64..=10,
        gammas in prop::collection::vec(-10i64..=10, 3),
    ) {
        let deg_h = int(h) / int(i64::from(c.order()));
        let normal = NormalData {
            deg_k: int(kc) / int(i64::from(c.order())),
            gammas: gammas[..c.weights().len()].iter().map(|&g| int(g) / int(i64::from(c.order()))).collect(),
        };
        let sums = CurveSums::new(&c)?;
        let diff = |d| -> Rational {
            sums.term(&deg_h, &normal, d, CurveVariant::Stack).unwrap() - sums.term(&deg_h, &normal, d, CurveVariant::Moduli).unwrap()
        };
        let base = diff(0);
        let once = curve_term(&c, &deg_h, &normal, 1, CurveVariant::Stack)?;
        prop_assert_eq!(once, sums.term(&deg_h, &normal, 1, CurveVariant::Stack)?);
        for d in 1..=2 * i64::from(c.order()) {
            prop_assert_eq!(diff(d), base.clone());
        }
    }

    #[test]
    fn point_terms_are_periodic(p in isolated_point(30, 4), d in -50i64..=50) {
        let s = i64::from(p.order());
        prop_assert_eq!(point_term(&p, d)?, point_term(&p, d + s)?);
    }

    #[test]
    fn smooth_complete_intersections_match_their_series(
        n in 1usize..=4,
        degrees in prop::collection::vec(2u32..=6, 1..=2),
    ) {
        let v = VarietyDescriptor::complete_intersection("smooth", vec![1; n + 1 + degrees.len()], degrees)?;
        let k = v.canonical_weight;
        let start = (k + 1).max(0);
        let chi = chi_range(&v, &BTreeMap::new(), start..=start + 15)?;
        let series = series_of(&v).series((start + 15) as usize)?;
        let want: Vec<BigInt> = series[start as usize..].iter().map(|x| x.to_integer()).collect();
        prop_assert_eq!(chi, want);
    }
}
