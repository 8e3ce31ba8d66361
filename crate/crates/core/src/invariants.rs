//! Sphericity decisions, normal-form rigid hypersurfaces, and calibration
//! of the constant relating `Q;11` to the normal-form coefficient `A⁰₄₄`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::series::TruncatedSeries;
use crate::surface::{cartan_r, cartan_s, phi_from_rigid_defining, value_at_center, SurfaceChart};
use crate::transverse::{q11_representative, FiberPoint, PseudohermitianChart};

/// Minimum order of `F` for `q11_at_origin`.
pub const MIN_RIGID_ORDER: usize = 10;

/// Default truncation order for symbolic runs.
pub const DEFAULT_ORDER: usize = 16;

/// Default probe set for [`calibrate_c`].
pub const DEFAULT_PROBES: [(i64, i64); 3] = [(1, 10), (1, 16), (1, 25)];

#[derive(Clone, Debug, PartialEq)]
pub struct SphericityVerdict {
    pub spherical: bool,
    /// Degree through which the coefficients of `r` were inspected.
    pub verified_through: usize,
    /// First nonzero coefficient of `r`, graded order.
    pub first_nonzero: Option<((usize, usize), GaussianRational)>,
}

/// `r ≡ 0` through `order`. This is a statement about a truncation, not
/// about the full germ.
pub fn is_spherical(chart: &SurfaceChart, order: usize) -> Result<SphericityVerdict> {
    let r = cartan_r(chart)?;
    if order > r.order() {
        return Err(Error::InsufficientOrder { needed: order, available: r.order() });
    }
    let first_nonzero = r.truncate(order).leading_term();
    Ok(SphericityVerdict { spherical: first_nonzero.is_none(), verified_through: order, first_nonzero })
}

/// Sphericity through every degree where `r` is exact.
pub fn is_spherical_full(chart: &SurfaceChart) -> Result<SphericityVerdict> {
    let available = chart.order().checked_sub(4).ok_or(Error::InsufficientOrder {
        needed: 4,
        available: chart.order(),
    })?;
    is_spherical(chart, available)
}

/// A rigid hypersurface `Im w = F(z, z̄)` whose defining function is already
/// in Chern–Moser normal form (`j = 0` slice only).
#[derive(Clone, Debug)]
pub struct RigidSurface {
    f: TruncatedSeries,
    coeffs_a0: BTreeMap<(usize, usize), GaussianRational>,
}

impl RigidSurface {
    /// Accepts `F = zz̄ + Σ_{k,l≥2} A⁰_{kl} z^k z̄^l` with real `F` and
    /// `A⁰₂₂ = A⁰₂₃ = A⁰₃₂ = A⁰₃₃ = 0`. Inputs are rejected rather than
    /// normalised.
    pub fn new(f: TruncatedSeries) -> Result<Self> {
        if !f.is_conjugate_symmetric() {
            return Err(Error::MalformedDefiningFunction("F is not real".into()));
        }
        if f.coeff(1, 1) != GaussianRational::one() {
            return Err(Error::MalformedDefiningFunction("the z zb coefficient must be 1".into()));
        }
        let mut coeffs_a0 = BTreeMap::new();
        for ((k, l), c) in f.terms() {
            if (k, l) == (1, 1) {
                continue;
            }
            if k < 2 || l < 2 {
                return Err(Error::NotNormalForm(format!(
                    "term {c} z^{k} zb^{l} is not of the form z^k zb^l with k, l >= 2"
                )));
            }
            if matches!((k, l), (2, 2) | (2, 3) | (3, 2) | (3, 3)) {
                return Err(Error::NotNormalForm(format!("trace condition violated: A0_{k}{l} = {c}")));
            }
            coeffs_a0.insert((k, l), c.clone());
        }
        Ok(Self { f, coeffs_a0 })
    }

    pub fn defining_function(&self) -> &TruncatedSeries {
        &self.f
    }

    /// `A⁰_{kl}` (zero when absent).
    pub fn a0(&self, k: usize, l: usize) -> GaussianRational {
        self.coeffs_a0.get(&(k, l)).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn coeffs_a0(&self) -> &BTreeMap<(usize, usize), GaussianRational> {
        &self.coeffs_a0
    }

    pub fn chart(&self) -> Result<SurfaceChart> {
        phi_from_rigid_defining(&self.f)
    }
}

/// `Q;11[θ]` at the origin over `λ = 1`, for the Levi-normalised `θ`.
pub fn q11_at_origin(surface: &RigidSurface) -> Result<GaussianRational> {
    let order = surface.f.order();
    if order < MIN_RIGID_ORDER {
        return Err(Error::InsufficientOrder { needed: MIN_RIGID_ORDER, available: order });
    }
    let chart = PseudohermitianChart::new(surface.chart()?)?;
    Ok(q11_representative(&chart, &FiberPoint::identity())?.value_at_center())
}

/// One-parameter families `F_ε` used for calibration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeFamily {
    /// `zz̄ + ε z⁴z̄⁴`
    A44,
    /// `zz̄ + ε(z²z̄⁴ + z⁴z̄²)`, which has no weight-3 content.
    A24,
}

impl ProbeFamily {
    pub fn defining_function(self, eps: &GaussianRational, order: usize) -> TruncatedSeries {
        let one = GaussianRational::one();
        let mut terms = vec![((1, 1), one)];
        match self {
            ProbeFamily::A44 => terms.push(((4, 4), eps.clone())),
            ProbeFamily::A24 => {
                terms.push(((2, 4), eps.clone()));
                terms.push(((4, 2), eps.clone()));
            }
        }
        TruncatedSeries::from_terms(order, terms)
    }
}

impl fmt::Display for ProbeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProbeFamily::A44 => "F = z zb + eps z^4 zb^4",
            ProbeFamily::A24 => "F = z zb + eps (z^2 zb^4 + z^4 zb^2)",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CalibrationResult {
    /// Linear coefficient of `ε ↦ Q;11(0)`.
    pub c_value: GaussianRational,
    pub probe_family: ProbeFamily,
    pub epsilon_probes: Vec<GaussianRational>,
    pub samples: Vec<GaussianRational>,
    /// Interpolated polynomial, constant term first, trailing zeros removed.
    pub interpolated_polynomial: Vec<GaussianRational>,
}

/// Coefficients (constant first) of the unique polynomial of degree
/// `< points.len()` through `points`. Abscissae must be distinct.
pub fn lagrange_interpolate(points: &[(GaussianRational, GaussianRational)]) -> Result<Vec<GaussianRational>> {
    let n = points.len();
    let mut coeffs = vec![GaussianRational::zero(); n];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // basis numerator Π_{j≠i} (x − x_j), built up one factor at a time
        let mut basis = vec![GaussianRational::one()];
        let mut denom = GaussianRational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let diff = xi - xj;
            if diff.is_zero() {
                return Err(Error::InsufficientProbes(format!("duplicate probe {xi}")));
            }
            denom = &denom * &diff;
            let mut next = vec![GaussianRational::zero(); basis.len() + 1];
            for (p, c) in basis.iter().enumerate() {
                next[p + 1] += c;
                next[p] -= &(c * xj);
            }
            basis = next;
        }
        let w = yi / &denom;
        for (p, c) in basis.iter().enumerate() {
            coeffs[p] += &(c * &w);
        }
    }
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    Ok(coeffs)
}

pub fn calibrate(family: ProbeFamily, probes: &[GaussianRational], order: usize) -> Result<CalibrationResult> {
    if probes.len() < 3 {
        return Err(Error::InsufficientProbes(format!("need at least 3 probes, got {}", probes.len())));
    }
    if probes.iter().any(Zero::is_zero) {
        return Err(Error::InsufficientProbes("probes must be nonzero".into()));
    }
    let samples = probes
        .iter()
        .map(|eps| q11_at_origin(&RigidSurface::new(family.defining_function(eps, order))?))
        .collect::<Result<Vec<_>>>()?;
    let points: Vec<_> = probes.iter().cloned().zip(samples.iter().cloned()).collect();
    let poly = lagrange_interpolate(&points)?;
    // With n probes the interpolant has degree <= n − 1. Only when it comes
    // out strictly lower is the ε-polynomial pinned down by the probes.
    if poly.len() >= probes.len() {
        return Err(Error::InsufficientProbes(format!(
            "interpolant has degree {} with {} probes; add probes",
            poly.len() - 1,
            probes.len()
        )));
    }
    let constant = poly.first().cloned().unwrap_or_else(GaussianRational::zero);
    if !constant.is_zero() {
        return Err(Error::Inconsistent(format!("nonzero constant term {constant} in eps")));
    }
    let c_value = poly.get(1).cloned().unwrap_or_else(GaussianRational::zero);
    Ok(CalibrationResult {
        c_value,
        probe_family: family,
        epsilon_probes: probes.to_vec(),
        samples,
        interpolated_polynomial: poly,
    })
}

/// `Q;11[θ](0) = c · A⁰₄₄`, calibrated on `zz̄ + ε z⁴z̄⁴`.
pub fn calibrate_c(probes: &[GaussianRational]) -> Result<CalibrationResult> {
    calibrate(ProbeFamily::A44, probes, MIN_RIGID_ORDER + 2)
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightResidual {
    /// `|λ|²`
    pub t: GaussianRational,
    pub value: GaussianRational,
    /// `value · t³ − value(λ = 1)`
    pub residual: GaussianRational,
}

/// `Q;11` over `λ` with `|λ|² = t` must equal `t^{−3}` times its value over
/// `λ = 1`, for `t ∈ {1, 4, 9/4}`.
pub fn weight3_invariance_suite(surface: &RigidSurface) -> Result<Vec<WeightResidual>> {
    let chart = PseudohermitianChart::new(surface.chart()?)?;
    if surface.f.order() < MIN_RIGID_ORDER {
        return Err(Error::InsufficientOrder { needed: MIN_RIGID_ORDER, available: surface.f.order() });
    }
    let base = q11_representative(&chart, &FiberPoint::identity())?.value_at_center();
    [(1, 1), (2, 1), (3, 2)]
        .into_iter()
        .map(|(n, d)| {
            let lambda = GaussianRational::ratio(n, d);
            let t = GaussianRational::from_real(lambda.norm_sqr());
            let p = FiberPoint::new(lambda, GaussianRational::zero())?;
            let value = q11_representative(&chart, &p)?.value_at_center();
            let residual = &(&value * &t.powi(3)?) - &base;
            Ok(WeightResidual { t, value, residual })
        })
        .collect()
}

/// Value of `s` at the center of an arbitrary chart.
pub fn s_at_center(chart: &SurfaceChart) -> Result<GaussianRational> {
    Ok(value_at_center(&cartan_s(chart)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> GaussianRational {
        GaussianRational::ratio(n, d)
    }

    type Term = ((usize, usize), (i64, i64));


    fn poly(order: usize, terms: &[Term]) -> TruncatedSeries {
        TruncatedSeries::from_terms(order, terms.iter().map(|&(kl, (n, d))| (kl, q(n, d))))
    }

    fn one_plus_zz(order: usize) -> TruncatedSeries {
        poly(order, &[((0, 0), (1, 1)), ((1, 1), (1, 1))])
    }

    #[test]
    fn sphericity_examples() {
        let flat = SurfaceChart::from_conformal_factor(TruncatedSeries::one(14)).unwrap();
        let v = is_spherical_full(&flat).unwrap();
        assert!(v.spherical);
        assert_eq!(v.verified_through, 10);

        let round = SurfaceChart::from_conformal_factor(one_plus_zz(14).powi(-2).unwrap()).unwrap();
        assert!(is_spherical(&round, 10).unwrap().spherical);

        let c = SurfaceChart::from_conformal_factor(one_plus_zz(14)).unwrap();
        let v = is_spherical(&c, 10).unwrap();
        assert!(!v.spherical);
        assert_eq!(v.first_nonzero, Some(((2, 0), q(5, 2))));

        assert!(matches!(is_spherical(&c, 11), Err(Error::InsufficientOrder { .. })));
    }

    #[test]
    fn normal_form_checks() {
        assert!(RigidSurface::new(poly(10, &[((1, 1), (1, 1)), ((4, 4), (1, 3))])).is_ok());
        let s = RigidSurface::new(poly(10, &[((1, 1), (1, 1)), ((2, 4), (1, 3)), ((4, 2), (1, 3))])).unwrap();
        assert_eq!(s.a0(2, 4), q(1, 3));
        assert_eq!(s.a0(4, 4), q(0, 1));
        for bad in [
            poly(10, &[((1, 1), (1, 1)), ((2, 2), (1, 1))]),
            poly(10, &[((1, 1), (1, 1)), ((2, 3), (1, 1)), ((3, 2), (1, 1))]),
            poly(10, &[((1, 1), (1, 1)), ((3, 3), (1, 1))]),
            poly(10, &[((1, 1), (1, 1)), ((5, 0), (1, 1)), ((0, 5), (1, 1))]),
            poly(10, &[((1, 1), (1, 1)), ((1, 4), (1, 1)), ((4, 1), (1, 1))]),
        ] {
            assert!(matches!(RigidSurface::new(bad), Err(Error::NotNormalForm(_))));
        }
        assert!(matches!(
            RigidSurface::new(poly(10, &[((1, 1), (2, 1))])),
            Err(Error::MalformedDefiningFunction(_))
        ));
    }

    #[test]
    fn q11_examples() {
        let flat = RigidSurface::new(poly(10, &[((1, 1), (1, 1))])).unwrap();
        assert_eq!(q11_at_origin(&flat).unwrap(), q(0, 1));
        let f = RigidSurface::new(ProbeFamily::A44.defining_function(&q(1, 10), 12)).unwrap();
        assert_eq!(q11_at_origin(&f).unwrap(), q(48, 5));
        let g = RigidSurface::new(ProbeFamily::A24.defining_function(&q(1, 10), 12)).unwrap();
        assert_eq!(q11_at_origin(&g).unwrap(), q(0, 1));
        let short = RigidSurface::new(poly(8, &[((1, 1), (1, 1))])).unwrap();
        assert!(matches!(q11_at_origin(&short), Err(Error::InsufficientOrder { .. })));
    }

    #[test]
    fn lagrange_recovers_polynomial() {
        // 3 − x + 2x³ through 4 points.
        let f = |x: &GaussianRational| &(&q(3, 1) - x) + &(&x.powi(3).unwrap() * &q(2, 1));
        let pts: Vec<_> = [q(1, 2), q(-1, 3), q(2, 1), q(5, 7)].into_iter().map(|x| { let y = f(&x); (x, y) }).collect();
        assert_eq!(lagrange_interpolate(&pts).unwrap(), vec![q(3, 1), q(-1, 1), q(0, 1), q(2, 1)]);
    }

    #[test]
    fn calibration_default_probes() {
        let probes: Vec<_> = DEFAULT_PROBES.iter().map(|&(n, d)| q(n, d)).collect();
        let cal = calibrate_c(&probes).unwrap();
        assert_eq!(cal.c_value, q(96, 1));
        assert_eq!(cal.interpolated_polynomial, vec![q(0, 1), q(96, 1)]);
    }

    #[test]
    fn calibration_contract_errors() {
        assert!(matches!(calibrate_c(&[q(1, 10)]), Err(Error::InsufficientProbes(_))));
        assert!(matches!(calibrate_c(&[q(1, 10), q(1, 10), q(1, 3)]), Err(Error::InsufficientProbes(_))));
        assert!(matches!(calibrate_c(&[q(1, 10), q(0, 1), q(1, 3)]), Err(Error::InsufficientProbes(_))));
    }

    #[test]
    fn negative_control_family() {
        let probes: Vec<_> = DEFAULT_PROBES.iter().map(|&(n, d)| q(n, d)).collect();
        let cal = calibrate(ProbeFamily::A24, &probes, 12).unwrap();
        assert!(cal.c_value.is_zero());
    }

    #[test]
    fn weight_three() {
        let f = RigidSurface::new(ProbeFamily::A44.defining_function(&q(1, 10), 12)).unwrap();
        let res = weight3_invariance_suite(&f).unwrap();
        assert_eq!(res.len(), 3);
        assert!(res.iter().all(|r| r.residual.is_zero()));
        assert_eq!(&res[1].value / &res[0].value, q(1, 64));
        assert_eq!(&res[2].value / &res[0].value, q(64, 729));
    }
}
