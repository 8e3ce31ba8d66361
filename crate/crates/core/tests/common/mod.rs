//! Strategies and property bodies shared by `properties` and `acceptance`.
#![allow(dead_code)]

use crinv::series::io::{parse_coeff_str, to_coeff_string};
use crinv::series::{monomials, TruncatedSeries};
use crinv::GaussianRational;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub fn q(n: i64, d: i64) -> GaussianRational {
    GaussianRational::ratio(n, d)
}

fn small_rational() -> impl Strategy<Value = (i64, i64)> {
    (-6i64..=6, 1i64..=5)
}

fn coeff() -> impl Strategy<Value = GaussianRational> {
    // mostly sparse, so products stay cheap at N = 10
    prop_oneof![
        3 => Just(GaussianRational::from_int(0)),
        2 => small_rational().prop_map(|(n, d)| q(n, d)),
        1 => (small_rational(), small_rational()).prop_map(|((a, b), (c, d))| {
            &q(a, b) + &(&GaussianRational::i() * &q(c, d))
        }),
    ]
}

pub fn series_at(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    let n = monomials(order).count();
    proptest::collection::vec(coeff(), n).prop_map(move |cs| TruncatedSeries::from_terms(order, monomials(order).zip(cs)))
}

/// Three series sharing an order in `2..=10`.
pub fn triple() -> impl Strategy<Value = (TruncatedSeries, TruncatedSeries, TruncatedSeries)> {
    (2usize..=10).prop_flat_map(|n| (series_at(n), series_at(n), series_at(n)))
}

pub fn pair() -> impl Strategy<Value = (TruncatedSeries, TruncatedSeries)> {
    (1usize..=10).prop_flat_map(|n| (series_at(n), series_at(n)))
}

/// A series with zero constant term at order `1..=8`.
pub fn nilpotent() -> impl Strategy<Value = TruncatedSeries> {
    (1usize..=8).prop_flat_map(series_at).prop_map(|s| {
        let c = s.constant_term().clone();
        &s - &TruncatedSeries::constant(c, s.order())
    })
}

pub fn ring_axioms((a, b, c): (TruncatedSeries, TruncatedSeries, TruncatedSeries)) -> Result<(), TestCaseError> {
    let n = a.order();
    prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    prop_assert_eq!(&a + &b, &b + &a);
    prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    prop_assert_eq!(&a * &b, &b * &a);
    prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    prop_assert_eq!(&a + &TruncatedSeries::zero(n), a.clone());
    prop_assert_eq!(&a * &TruncatedSeries::one(n), a.clone());
    let neg = -&a;
    prop_assert!((&a + &neg).is_zero());
    prop_assert!((&a - &a.clone()).is_zero());
    Ok(())
}

pub fn leibniz((a, b): (TruncatedSeries, TruncatedSeries)) -> Result<(), TestCaseError> {
    let ab = &a * &b;
    prop_assert_eq!(ab.d(), &(&a.d() * &b) + &(&a * &b.d()));
    prop_assert_eq!(ab.dbar(), &(&a.dbar() * &b) + &(&a * &b.dbar()));
    prop_assert_eq!(a.d().dbar(), a.dbar().d());
    Ok(())
}

pub fn conjugation((a, b): (TruncatedSeries, TruncatedSeries)) -> Result<(), TestCaseError> {
    prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
    prop_assert_eq!((&a + &b).conjugate(), &a.conjugate() + &b.conjugate());
    prop_assert_eq!(a.conjugate().conjugate(), a.clone());
    prop_assert_eq!(a.d().conjugate(), a.conjugate().dbar());
    let i = TruncatedSeries::constant(GaussianRational::i(), a.order());
    prop_assert_eq!((&i * &a).conjugate(), -&(&i * &a.conjugate()));
    prop_assert!((&a * &a.conjugate()).is_conjugate_symmetric());
    Ok(())
}

pub fn exp_log(f: TruncatedSeries) -> Result<(), TestCaseError> {
    let e = f.exp().map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(e.log().map_err(|e| TestCaseError::fail(e.to_string()))?, f.clone());
    let l = f.log1p().map_err(|e| TestCaseError::fail(e.to_string()))?;
    let back = l.exp().map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(back, &TruncatedSeries::one(f.order()) + &f);
    Ok(())
}

pub fn file_round_trip(s: TruncatedSeries) -> Result<(), TestCaseError> {
    let text = to_coeff_string(&s);
    let back = parse_coeff_str(&text).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(back, s);
    Ok(())
}

pub fn file_round_trip_strategy() -> impl Strategy<Value = TruncatedSeries> {
    (0usize..=12).prop_flat_map(series_at)
}
