//! Inputs shared by the criterion benches.

use crinv::series::TruncatedSeries;
use crinv::GaussianRational;

/// `1 + zz̄` at `order`.
pub fn one_plus_zz(order: usize) -> TruncatedSeries {
    TruncatedSeries::from_terms(
        order,
        [((0, 0), GaussianRational::from_int(1)), ((1, 1), GaussianRational::from_int(1))],
    )
}

/// A dense-ish real polynomial with small rational coefficients.
pub fn dense_real(order: usize) -> TruncatedSeries {
    let mut terms = Vec::new();
    for d in 0..=order.min(6) {
        for l in 0..=d {
            let k = d - l;
            if k < l {
                continue;
            }
            let c = GaussianRational::ratio((k * 3 + l + 1) as i64, (d + 2) as i64);
            terms.push(((k, l), c.clone()));
            if k != l {
                terms.push(((l, k), c));
            }
        }
    }
    TruncatedSeries::from_terms(order, terms)
}

/// `zz̄ + ε z⁴z̄⁴`.
pub fn rigid_a44(eps: (i64, i64), order: usize) -> TruncatedSeries {
    TruncatedSeries::from_terms(
        order,
        [((1, 1), GaussianRational::from_int(1)), ((4, 4), GaussianRational::ratio(eps.0, eps.1))],
    )
}
