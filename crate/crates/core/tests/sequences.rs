use proptest::prelude::*;
use striphyp::{Nontriviality, SeqCondition, Status, Weight, WeightSequence};

fn catalog() -> Vec<WeightSequence> {
    vec![
        WeightSequence::factorial_power(0.5).unwrap(),
        WeightSequence::factorial_power(1.0).unwrap(),
        WeightSequence::factorial_power(2.0).unwrap(),
        WeightSequence::loglog_power(1.0, 1.0).unwrap(),
        WeightSequence::loglog_power(1.0, 2.0).unwrap(),
        WeightSequence::loglog_power(0.5, 1.0).unwrap(),
    ]
}

/// Largest `t` at which `M` is still resolved by the stored quotients.
fn range(m: &WeightSequence) -> f64 {
    Weight::assoc(m.clone()).eval_limit()
}

#[test]
fn associated_function_vanishes_up_to_first_quotient() {
    for m in catalog() {
        let m1 = m.quotient(1).unwrap();
        for i in 0..=20 {
            let t = m1 * i as f64 / 20.0;
            assert_eq!(m.associated_function(t).unwrap(), 0.0, "{} at {t}", m.label());
        }
        let mut prev = 0.0;
        let top = range(&m).min(11.0 * m1);
        for i in 1..=200 {
            let t = m1 + (top - m1) * i as f64 / 200.0;
            let v = m.associated_function(t).unwrap();
            assert!(v > prev, "{}: M not increasing at {t}", m.label());
            prev = v;
        }
    }
}

#[test]
fn factorial_associated_function_spot_values() {
    let m = WeightSequence::factorial_power(1.0).unwrap();
    // Tie between p = 2 and p = 3 at t = 3; the smaller index is reported.
    assert!((m.associated_function(3.0).unwrap() - 4.5f64.ln()).abs() < 1e-12);
    assert_eq!(m.associated_argmax(3.0).unwrap(), 2);
    assert!((m.associated_function(2.0).unwrap() - 2f64.ln()).abs() < 1e-12);
}

#[test]
fn loglog_quotients_stay_accurate_past_double_precision_integers() {
    // log m_p is the exponent (x + e) ln ln(x + e) integrated over [p - 1, p];
    // its derivative varies by ~1e-35 over the step, so the midpoint rule is exact.
    let m = WeightSequence::loglog_power(1.0, 1.0).unwrap();
    for p in [1u64 << 53, (1u64 << 54) + 3, 100_000_000_000_000_000] {
        let x = p as f64 - 0.5 + std::f64::consts::E;
        let want = x.ln().ln() + 1.0 / x.ln();
        let got = m.log_quotient(p).unwrap();
        assert!((got - want).abs() < 1e-12 * want, "p = {p}: {got} vs {want}");
    }
}

#[test]
fn classifier_labels_and_m5_verdicts() {
    let want = [
        Nontriviality::BeurlingAndRoumieu,
        Nontriviality::BeurlingAndRoumieu,
        Nontriviality::BeurlingAndRoumieu,
        Nontriviality::RoumieuOnly,
        Nontriviality::BeurlingAndRoumieu,
        Nontriviality::Trivial,
    ];
    for (m, w) in catalog().iter().zip(want) {
        assert_eq!(m.nontriviality_classify().unwrap().label, w, "{}", m.label());
    }
    let ll = WeightSequence::loglog_power(1.0, 1.0).unwrap();
    assert_eq!(ll.check_condition(SeqCondition::M5Zero).unwrap().status, Status::Fails);
    assert_ne!(ll.check_condition(SeqCondition::M5Inf).unwrap().status, Status::Fails);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quotients_are_non_decreasing(idx in 0usize..6, p in 1u64..5000) {
        let m = &catalog()[idx];
        prop_assert!(m.log_quotient(p + 1).unwrap() >= m.log_quotient(p).unwrap() - 1e-12);
    }

    #[test]
    fn associated_matches_counting_integral(idx in 0usize..6, lt in 0.0f64..12.0) {
        let m = &catalog()[idx];
        let t = lt.exp().min(m.quotient(100_000).unwrap());
        let a = m.associated_function(t).unwrap();
        let b = m.associated_via_counting(t).unwrap();
        prop_assert!((a - b).abs() <= 1e-9 * a.max(1.0));
    }

    #[test]
    fn associated_function_dominates_each_term(idx in 0usize..6, lt in 0.0f64..10.0, p in 0u64..200) {
        let m = &catalog()[idx];
        let t: f64 = lt.exp().min(range(m));
        let term = p as f64 * t.ln() - (m.log_value(p).unwrap() - m.log_value(0).unwrap());
        prop_assert!(m.associated_function(t).unwrap() >= term - 1e-9 * term.abs().max(1.0));
    }
}
