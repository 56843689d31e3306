use lpsum::cremona::Outcome;
use lpsum::verify::{Check, Suite, SuiteReport};
use lpsum::PParam;
use lpsum_cli::{sig12, CurveData, PackReport, Regime, ReportRow};
use proptest::prelude::*;
use serde::{de::DeserializeOwned, Serialize};

fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(x: &T) -> Result<(), TestCaseError> {
    let text = serde_json::to_string(x).unwrap();
    let back: T = serde_json::from_str(&text).unwrap();
    prop_assert_eq!(&back, x, "{}", text);
    Ok(())
}

fn num() -> impl Strategy<Value = f64> {
    (-1e6f64..1e6).prop_map(sig12)
}

fn p_param() -> impl Strategy<Value = PParam> {
    prop_oneof![Just(PParam::Infinite), (1.0f64..1e4).prop_map(|p| PParam::Finite(sig12(p)))]
}

fn regime() -> impl Strategy<Value = Regime> {
    prop_oneof![Just(Regime::Rigid), Just(Regime::ToricallyRigid), Just(Regime::NonRigid)]
}

fn outcome() -> impl Strategy<Value = Outcome> {
    prop_oneof![Just(Outcome::Embeddable), Just(Outcome::NotEmbeddable), Just(Outcome::Inconclusive)]
}

proptest! {
    #[test]
    fn sig12_is_idempotent(x in prop::num::f64::NORMAL) {
        let y = sig12(x);
        prop_assert_eq!(sig12(y), y);
        prop_assert!((y - x).abs() <= 1e-11 * x.abs());
    }

    #[test]
    fn report_rows(p in p_param(), a in num(), b in num(), c1 in num(), c2 in num(), r in regime(), ri in regime()) {
        round_trip(&ReportRow { p, r_inner: a, r_outer: b, regime: r, regime_inner: ri, c1, c2 })?;
    }

    #[test]
    fn curves(p in p_param(), pts in prop::collection::vec((num(), num()), 0..20)) {
        round_trip(&CurveData { p, points: pts.into_iter().map(|(x, y)| [x, y]).collect() })?;
    }

    #[test]
    fn pack_reports(o in outcome(), reason in ".{0,30}", moves in 0usize..1000, padded: bool, trace in prop::option::of(prop::collection::vec("[ -~]{0,20}", 0..4))) {
        round_trip(&PackReport { outcome: o, reason, moves, padded, trace })?;
    }

    #[test]
    fn suite_reports(
        s in 0usize..4,
        checks in prop::collection::vec(("[a-z ]{1,12}", any::<bool>(), prop::option::of(num()), num(), "[ -~]{0,12}"), 0..5),
        seconds in 0.0f64..100.0,
    ) {
        let checks: Vec<Check> = checks
            .into_iter()
            .map(|(name, passed, deviation, tolerance, detail)| Check { name, passed, deviation, tolerance, detail })
            .collect();
        let passed = checks.iter().all(|c| c.passed);
        round_trip(&SuiteReport { suite: Suite::ALL[s], passed, seconds: sig12(seconds), checks })?;
    }
}

#[test]
fn exit_codes_cover_every_outcome() {
    let codes: Vec<i32> = [Outcome::Embeddable, Outcome::NotEmbeddable, Outcome::Inconclusive].iter().map(|o| o.exit_code()).collect();
    assert_eq!(codes, [0, 1, 3]);
}
