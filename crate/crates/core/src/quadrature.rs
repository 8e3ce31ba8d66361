//! Double-precision integrals over rotationally symmetric metrics on the
//! sphere, used for the global statements that the exact layer cannot see.
//!
//! Metrics are `e^{2φ} = (1+zz̄)^{−2} exp(2ψ(u))` with `u = zz̄/(1+zz̄)`, so
//! one chart covers the sphere minus a point and smoothness at infinity is
//! automatic. For a radial `f(u)`, with `E = e^{−2ψ}` and `h = E f'`:
//!
//! * `f_{;z̄z̄} = z²(1−u)² h'`, so `|f_{;z̄z̄}|² = u²(1−u)² h'²`
//! * `f_{;z̄z̄zz} = E (E V')'` with `V = u²(1−u)² e^{2ψ} h'`
//! * `K = E (4 − 4 (u(1−u)ψ')')`
//! * `dA = e^{2ψ}/2 du dθ`
//!
//! Derivatives in `u` are taken on truncated Taylor jets.

use std::f64::consts::PI;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::invariants::{is_spherical, SphericityVerdict};
use crate::series::TruncatedSeries;
use crate::surface::{cartan_r, SurfaceChart};

/// Absolute scale below which an integral counts as zero when forming
/// relative residuals.
pub const ABS_FLOOR: f64 = 1e-10;
/// Default relative tolerance for identity checks.
pub const IDENTITY_TOLERANCE: f64 = 1e-6;
/// Default absolute tolerances for the sphericity classification.
pub const SPHERICITY_TOLERANCES: [f64; 2] = [1e-8, 1e-10];

// Taylor jet length. Six u-derivatives are needed for `P(K)`.
const JET: usize = 8;

/// Truncated Taylor expansion `Σ c_k (u − u₀)^k`.
#[derive(Clone, Debug)]
struct Jet(Vec<f64>);

impl Jet {
    fn constant(c: f64, n: usize) -> Self {
        let mut v = vec![0.0; n];
        v[0] = c;
        Jet(v)
    }

    fn variable(u0: f64, n: usize) -> Self {
        let mut j = Self::constant(u0, n);
        if n > 1 {
            j.0[1] = 1.0;
        }
        j
    }

    fn len(&self) -> usize {
        self.0.len()
    }

    fn value(&self) -> f64 {
        self.0[0]
    }

    fn add(&self, o: &Jet) -> Jet {
        Jet(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    fn sub(&self, o: &Jet) -> Jet {
        Jet(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    fn scale(&self, c: f64) -> Jet {
        Jet(self.0.iter().map(|a| a * c).collect())
    }

    fn mul(&self, o: &Jet) -> Jet {
        let n = self.len().min(o.len());
        Jet((0..n).map(|k| (0..=k).map(|j| self.0[j] * o.0[k - j]).sum()).collect())
    }

    fn exp(&self) -> Jet {
        // k e_k = Σ_{j=1}^{k} j a_j e_{k−j}
        let n = self.len();
        let mut e = vec![0.0; n];
        e[0] = self.0[0].exp();
        for k in 1..n {
            let s: f64 = (1..=k).map(|j| j as f64 * self.0[j] * e[k - j]).sum();
            e[k] = s / k as f64;
        }
        Jet(e)
    }

    /// d/du; the jet gets one shorter.
    fn deriv(&self) -> Jet {
        Jet((1..self.len()).map(|k| k as f64 * self.0[k]).collect())
    }

    fn poly(coeffs: &[f64], u: &Jet) -> Jet {
        let mut acc = Jet::constant(0.0, u.len());
        for c in coeffs.iter().rev() {
            acc = acc.mul(u).add(&Jet::constant(*c, u.len()));
        }
        acc
    }
}

/// `e^{2φ} = (1+zz̄)^{−2} exp(2ψ(u))` with polynomial `ψ`.
#[derive(Clone, Debug, PartialEq)]
pub struct CompactMetric {
    psi: Vec<BigRational>,
    psi_f64: Vec<f64>,
}

/// A point of the chart together with its radial coordinate.
#[derive(Clone, Copy, Debug)]
pub struct ChartPoint {
    pub z: Complex64,
    pub u: f64,
    pub theta: f64,
}

/// Radial data at one `u`.
#[derive(Clone, Debug)]
pub struct RadialSample {
    /// `e^{2φ}`
    pub e2phi: f64,
    /// `e^{2ψ}`
    pub e2psi: f64,
    pub curvature: f64,
}

impl CompactMetric {
    /// `ψ = Σ psi[k] u^k`.
    pub fn new(psi: Vec<BigRational>) -> Self {
        let psi_f64 = psi.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
        Self { psi, psi_f64 }
    }

    pub fn fubini_study() -> Self {
        Self::new(Vec::new())
    }

    pub fn from_ratios(psi: &[(i64, i64)]) -> Self {
        Self::new(psi.iter().map(|&(n, d)| BigRational::new(n.into(), d.into())).collect())
    }

    pub fn psi(&self) -> &[BigRational] {
        &self.psi
    }

    fn psi_jet(&self, u: f64, n: usize) -> Jet {
        Jet::poly(&self.psi_f64, &Jet::variable(u, n))
    }

    fn curvature_jet(&self, u: f64, n: usize) -> Jet {
        let uj = Jet::variable(u, n + 2);
        let psi = Jet::poly(&self.psi_f64, &uj);
        let e = psi.scale(-2.0).exp();
        let w = uj.mul(&Jet::constant(1.0, n + 2).sub(&uj)).mul(&psi.deriv());
        let inner = Jet::constant(4.0, n + 1).sub(&w.deriv().scale(4.0));
        e.mul(&inner)
    }

    pub fn sample(&self, u: f64) -> RadialSample {
        let psi = Jet::poly(&self.psi_f64, &Jet::variable(u, 1)).value();
        let e2psi = (2.0 * psi).exp();
        RadialSample {
            e2phi: (1.0 - u) * (1.0 - u) * e2psi,
            e2psi,
            curvature: self.curvature_jet(u, 1).value(),
        }
    }

    /// Taylor expansion of `e^{2(φ − ψ(0))}` at the chart center. The constant
    /// rescaling keeps the coefficients rational and does not change `r`.
    pub fn taylor_series(&self, order: usize) -> Result<TruncatedSeries> {
        let s = TruncatedSeries::monomial(GaussianRational::from_int(1), 1, 1, order);
        let one_plus = &TruncatedSeries::one(order) + &s;
        let u = &s * &one_plus.reciprocal()?;
        let mut psi = TruncatedSeries::zero(order);
        for c in self.psi.iter().skip(1).rev() {
            psi = &(&psi * &u) + &TruncatedSeries::constant(GaussianRational::from(c.clone()), order);
        }
        psi = &psi * &u;
        let e2psi = psi.scale_int(2).exp()?;
        Ok((&one_plus.powi(-2)? * &e2psi).with_reality_check())
    }

    pub fn chart(&self, order: usize) -> Result<SurfaceChart> {
        SurfaceChart::from_conformal_factor(self.taylor_series(order)?)
    }

    /// `f_{;z̄z̄}/z²`, `f_{;z̄z̄zz}` and `|f_{;z̄z̄}|²` for a radial `f`.
    fn fourth_order(&self, f: &TestFunction, u: f64) -> (f64, f64, f64) {
        let n = JET;
        let uj = Jet::variable(u, n);
        let psi = self.psi_jet(u, n);
        let e = psi.scale(-2.0).exp();
        let e2 = psi.scale(2.0).exp();
        let fj = match f {
            TestFunction::Curvature => self.curvature_jet(u, n),
            TestFunction::Polynomial(c) => {
                let c: Vec<f64> = c.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
                Jet::poly(&c, &uj)
            }
        };
        let one_minus = Jet::constant(1.0, n).sub(&uj);
        let h = e.mul(&fj.deriv());
        let hp = h.deriv();
        let t = one_minus.mul(&one_minus).mul(&hp);
        let uu = uj.mul(&one_minus);
        let v = uu.mul(&uu).mul(&e2).mul(&hp);
        let p = e.mul(&e.mul(&v.deriv()).deriv());
        let t2 = (uu.value() * hp.value()).powi(2);
        (t.value(), p.value(), t2)
    }

    fn value(&self, f: &TestFunction, u: f64) -> f64 {
        match f {
            TestFunction::Curvature => self.sample(u).curvature,
            TestFunction::Polynomial(c) => {
                let c: Vec<f64> = c.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
                Jet::poly(&c, &Jet::variable(u, 1)).value()
            }
        }
    }

    /// Numeric `r = −(e^{4φ}/12) K_{;z̄z̄}` at `z`.
    pub fn r_numeric(&self, z: Complex64) -> Complex64 {
        let s = z.norm_sqr();
        let u = s / (1.0 + s);
        let (t, _, _) = self.fourth_order(&TestFunction::Curvature, u);
        let g = self.sample(u).e2phi;
        z * z * (-(g * g) / 12.0 * t)
    }
}

/// Radial test functions `f(u)` for the integration-by-parts identity.
#[derive(Clone, Debug, PartialEq)]
pub enum TestFunction {
    /// `f = K` of the metric itself.
    Curvature,
    /// `f = Σ c_k u^k`.
    Polynomial(Vec<BigRational>),
}

impl TestFunction {
    pub fn poly(c: &[(i64, i64)]) -> Self {
        TestFunction::Polynomial(c.iter().map(|&(n, d)| BigRational::new(n.into(), d.into())).collect())
    }

    /// `K`, `u`, `u²(1 − u)`.
    pub fn corpus() -> Vec<TestFunction> {
        vec![
            TestFunction::Curvature,
            TestFunction::poly(&[(0, 1), (1, 1)]),
            TestFunction::poly(&[(0, 1), (0, 1), (1, 1), (-1, 1)]),
        ]
    }

    pub fn label(&self) -> String {
        match self {
            TestFunction::Curvature => "K".into(),
            TestFunction::Polynomial(c) => {
                let mut out = String::new();
                for (k, x) in c.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    let neg = x < &BigRational::zero();
                    let mag = if neg { -x.clone() } else { x.clone() };
                    out.push_str(match (out.is_empty(), neg) {
                        (true, false) => "",
                        (true, true) => "-",
                        (false, false) => " + ",
                        (false, true) => " - ",
                    });
                    let unit = mag == BigRational::from_integer(1.into());
                    match (k, unit) {
                        (0, _) => out.push_str(&mag.to_string()),
                        (1, true) => out.push('u'),
                        (1, false) => out.push_str(&format!("{mag}*u")),
                        (_, true) => out.push_str(&format!("u^{k}")),
                        (_, false) => out.push_str(&format!("{mag}*u^{k}")),
                    }
                }
                if out.is_empty() {
                    "0".into()
                } else {
                    out
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureScheme {
    /// Radial panels over `u ∈ [0, 1]`.
    pub panels: usize,
    /// Gauss–Legendre nodes per panel.
    pub nodes_per_panel: usize,
    /// Uniform trapezoid nodes in `θ`.
    pub angular_nodes: usize,
}

impl Default for QuadratureScheme {
    /// 64 radial × 128 angular nodes.
    fn default() -> Self {
        Self { panels: 8, nodes_per_panel: 8, angular_nodes: 128 }
    }
}

impl QuadratureScheme {
    pub fn new(panels: usize, nodes_per_panel: usize, angular_nodes: usize) -> Result<Self> {
        let s = Self { panels, nodes_per_panel, angular_nodes };
        if s.radial_nodes() < 16 || angular_nodes < 16 || nodes_per_panel == 0 {
            return Err(Error::Domain(format!(
                "quadrature needs >= 16 radial and angular nodes, got {} x {angular_nodes}",
                s.radial_nodes()
            )));
        }
        Ok(s)
    }

    pub fn radial_nodes(&self) -> usize {
        self.panels * self.nodes_per_panel
    }

    /// Twice the panels and twice the angular nodes.
    pub fn refined(&self) -> Self {
        Self { panels: 2 * self.panels, nodes_per_panel: self.nodes_per_panel, angular_nodes: 2 * self.angular_nodes }
    }

    fn radial_rule(&self) -> Vec<(f64, f64)> {
        let gl = GaussLegendre::new(self.nodes_per_panel).expect("nodes_per_panel >= 2");
        let h = 1.0 / self.panels as f64;
        let mut out = Vec::with_capacity(self.radial_nodes());
        for p in 0..self.panels {
            let a = p as f64 * h;
            for (x, w) in gl.nodes().zip(gl.weights()) {
                out.push((a + 0.5 * h * (x + 1.0), 0.5 * h * w));
            }
        }
        out
    }
}

/// An integral with its one-refinement error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error_estimate: f64,
}

/// Neumaier-compensated sum; also returns `Σ|x|` for the round-off floor.
fn compensated_sum(xs: impl IntoIterator<Item = f64>) -> (f64, f64) {
    let (mut sum, mut comp, mut abs) = (0.0f64, 0.0f64, 0.0f64);
    for x in xs {
        let t = sum + x;
        comp += if sum.abs() >= x.abs() { (sum - t) + x } else { (x - t) + sum };
        sum = t;
        abs += x.abs();
    }
    (sum + comp, abs)
}

fn combine(coarse: f64, (fine, abs): (f64, f64)) -> Integral {
    let floor = 64.0 * f64::EPSILON * abs;
    Integral { value: fine, error_estimate: (fine - coarse).abs() + floor }
}

fn surface_sum<F>(integrand: &F, metric: &CompactMetric, scheme: &QuadratureScheme) -> Result<(f64, f64)>
where
    F: Fn(&ChartPoint) -> f64,
{
    let dtheta = 2.0 * PI / scheme.angular_nodes as f64;
    let mut terms = Vec::with_capacity(scheme.radial_nodes() * scheme.angular_nodes);
    for (u, w) in scheme.radial_rule() {
        let sample = metric.sample(u);
        let rho = (u / (1.0 - u)).sqrt();
        for j in 0..scheme.angular_nodes {
            let theta = j as f64 * dtheta;
            if !(sample.e2phi.is_finite() && sample.e2phi > 0.0) {
                return Err(Error::NonFinite { u, theta });
            }
            let p = ChartPoint { z: Complex64::from_polar(rho, theta), u, theta };
            let v = integrand(&p);
            if !v.is_finite() {
                return Err(Error::NonFinite { u, theta });
            }
            terms.push(v * sample.e2psi * 0.5 * w * dtheta);
        }
    }
    Ok(compensated_sum(terms))
}

/// `∫_X integrand dA`, without the `2π` fiber factor.
pub fn integrate_surface<F>(integrand: F, metric: &CompactMetric, scheme: &QuadratureScheme) -> Result<Integral>
where
    F: Fn(&ChartPoint) -> f64,
{
    let coarse = surface_sum(&integrand, metric, scheme)?.0;
    let fine = surface_sum(&integrand, metric, &scheme.refined())?;
    Ok(combine(coarse, fine))
}

/// `∫ (·) θ∧dθ` for an S¹-invariant integrand: `2π` times the area integral.
pub fn integrate_circle_bundle<F>(integrand: F, metric: &CompactMetric, scheme: &QuadratureScheme) -> Result<Integral>
where
    F: Fn(&ChartPoint) -> f64,
{
    let i = integrate_surface(integrand, metric, scheme)?;
    Ok(Integral { value: 2.0 * PI * i.value, error_estimate: 2.0 * PI * i.error_estimate })
}

fn radial_sum<F: Fn(f64) -> f64>(f: &F, metric: &CompactMetric, scheme: &QuadratureScheme) -> Result<(f64, f64)> {
    let mut terms = Vec::with_capacity(scheme.radial_nodes());
    for (u, w) in scheme.radial_rule() {
        let v = f(u) * metric.sample(u).e2psi;
        if !v.is_finite() {
            return Err(Error::NonFinite { u, theta: 0.0 });
        }
        terms.push(PI * w * v);
    }
    Ok(compensated_sum(terms))
}

/// `∫_X f dA` for radial `f(u)`: the angular trapezoid is exact, so this is
/// `π ∫₀¹ f e^{2ψ} du` with the same refinement rule as
/// [`integrate_surface`].
pub fn integrate_radial<F: Fn(f64) -> f64>(f: F, metric: &CompactMetric, scheme: &QuadratureScheme) -> Result<Integral> {
    let coarse = radial_sum(&f, metric, scheme)?.0;
    let fine = radial_sum(&f, metric, &scheme.refined())?;
    Ok(combine(coarse, fine))
}

#[derive(Clone, Debug)]
pub struct CalabiCheck {
    pub function: String,
    /// `∫ |f_{;z̄z̄}|² dA`
    pub lhs: Integral,
    /// `∫ f_{;z̄z̄zz} f dA`
    pub rhs: Integral,
    pub abs_residual: f64,
    /// `|lhs − rhs| / max(|lhs|, |rhs|)`, or `0` when both are below
    /// [`ABS_FLOOR`].
    pub relative_residual: f64,
}

impl CalabiCheck {
    pub fn passes(&self, tol: f64) -> bool {
        self.lhs.value >= -tol && self.relative_residual < tol
    }
}

fn relative(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale < ABS_FLOOR {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

pub fn calabi_identity_check(f: &TestFunction, metric: &CompactMetric, scheme: &QuadratureScheme) -> Result<CalabiCheck> {
    let lhs = integrate_radial(|u| metric.fourth_order(f, u).2, metric, scheme)?;
    let rhs = integrate_radial(|u| metric.fourth_order(f, u).1 * metric.value(f, u), metric, scheme)?;
    Ok(CalabiCheck {
        function: f.label(),
        lhs,
        rhs,
        abs_residual: (lhs.value - rhs.value).abs(),
        relative_residual: relative(lhs.value, rhs.value),
    })
}

#[derive(Clone, Debug)]
pub struct RigidityReport {
    /// `∫ |K_{;z̄z̄}|² dA`
    pub i2: Integral,
    /// `∫ K_{;z̄z̄zz} K dA`
    pub i4: Integral,
    pub relative_residual: f64,
    /// `(tolerance, spherical?)`, spherical iff `I₂ < tolerance`.
    pub verdicts: Vec<(f64, bool)>,
    pub symbolic: SphericityVerdict,
}

impl RigidityReport {
    /// Every numeric verdict agrees with the symbolic one.
    pub fn consistent(&self) -> bool {
        self.verdicts.iter().all(|&(_, v)| v == self.symbolic.spherical)
    }
}

/// Symbolic order used for the cross-check in [`rigidity_demo`].
pub const RIGIDITY_SYMBOLIC_ORDER: usize = 14;

pub fn rigidity_demo(metric: &CompactMetric, scheme: &QuadratureScheme, tolerances: &[f64]) -> Result<RigidityReport> {
    let c = calabi_identity_check(&TestFunction::Curvature, metric, scheme)?;
    let verdicts = tolerances.iter().map(|&t| (t, c.lhs.value < t)).collect();
    let chart = metric.chart(RIGIDITY_SYMBOLIC_ORDER)?;
    let symbolic = is_spherical(&chart, RIGIDITY_SYMBOLIC_ORDER - 4)?;
    Ok(RigidityReport { i2: c.lhs, i4: c.rhs, relative_residual: c.relative_residual, verdicts, symbolic })
}

/// Truncation order for [`r_consistency`]; at `|z| = 1/4` the tail of the
/// `r`-series is still ~1e−6 relative at order 20.
pub const CONSISTENCY_ORDER: usize = 24;

#[derive(Clone, Debug)]
pub struct ConsistencyReport {
    pub order: usize,
    pub points: usize,
    pub max_relative_error: f64,
    pub max_abs_error: f64,
}

/// Compares the exact `r`-series of the Taylor-expanded metric with the
/// numeric `−(e^{4φ}/12)K_{;z̄z̄}` on `|z| ≤ 1/4`.
pub fn r_consistency(metric: &CompactMetric, order: usize) -> Result<ConsistencyReport> {
    let r = cartan_r(&metric.chart(order)?)?;
    let (mut rel, mut abs, mut points) = (0.0f64, 0.0f64, 0);
    for k in 1..=4 {
        let rho = 0.0625 * k as f64;
        for j in 0..8 {
            let z = Complex64::from_polar(rho, 2.0 * PI * j as f64 / 8.0 + 0.3);
            let exact = r.evaluate(z);
            let numeric = metric.r_numeric(z);
            let d = (exact - numeric).norm();
            abs = abs.max(d);
            if numeric.norm() > 1e-14 {
                rel = rel.max(d / numeric.norm());
            }
            points += 1;
        }
    }
    Ok(ConsistencyReport { order, points, max_relative_error: rel, max_abs_error: abs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bump() -> CompactMetric {
        // ψ = (1/10) u (1 − u)
        CompactMetric::from_ratios(&[(0, 1), (1, 10), (-1, 10)])
    }

    #[test]
    fn jets() {
        // exp(u) at u₀ = 0.5: all Taylor coefficients e^{0.5}/k!
        let e = Jet::variable(0.5, 5).exp();
        let mut fact = 1.0;
        for k in 0..5 {
            if k > 0 {
                fact *= k as f64;
            }
            assert!((e.0[k] - 0.5f64.exp() / fact).abs() < 1e-15);
        }
        let p = Jet::poly(&[1.0, 0.0, 3.0], &Jet::variable(2.0, 4));
        assert_eq!(p.0, vec![13.0, 12.0, 3.0, 0.0]);
        assert_eq!(p.deriv().0, vec![12.0, 6.0, 0.0]);
    }

    #[test]
    fn fubini_study_area() {
        let m = CompactMetric::fubini_study();
        let s = QuadratureScheme::default();
        let a = integrate_surface(|_| 1.0, &m, &s).unwrap();
        assert!((a.value - PI).abs() < 1e-10, "{a:?}");
        let b = integrate_circle_bundle(|_| 1.0, &m, &s).unwrap();
        assert!((b.value - 2.0 * PI * PI).abs() < 1e-9);
        assert_eq!(m.sample(0.3).curvature, 4.0);
    }

    #[test]
    fn odd_integrand_vanishes() {
        let m = bump();
        let i = integrate_surface(|p| p.z.re * (1.0 - p.u), &m, &QuadratureScheme::default()).unwrap();
        assert!(i.value.abs() < 1e-12, "{i:?}");
    }

    #[test]
    fn gauss_bonnet() {
        let i = integrate_radial(|u| bump().sample(u).curvature, &bump(), &QuadratureScheme::default()).unwrap();
        assert!((i.value - 4.0 * PI).abs() < 1e-10, "{i:?}");
    }

    #[test]
    fn calabi_corpus() {
        let s = QuadratureScheme::default();
        for f in TestFunction::corpus() {
            let c = calabi_identity_check(&f, &bump(), &s).unwrap();
            assert!(c.passes(IDENTITY_TOLERANCE), "{c:?}");
            assert!(c.lhs.value > 0.0);
        }
        let k = calabi_identity_check(&TestFunction::Curvature, &bump(), &s).unwrap();
        // regression value of ∫|K_{;z̄z̄}|² dA for ψ = u(1−u)/10
        assert!((k.lhs.value - 1.020_205_286_564_41).abs() < 1e-12, "{k:?}");
        let labels: Vec<_> = TestFunction::corpus().iter().map(TestFunction::label).collect();
        assert_eq!(labels, ["K", "u", "u^2 - u^3"]);
        let flat = calabi_identity_check(&TestFunction::Curvature, &CompactMetric::fubini_study(), &s).unwrap();
        assert!(flat.lhs.value.abs() < 1e-10 && flat.rhs.value.abs() < 1e-10);
    }

    #[test]
    fn refinement_within_estimate() {
        let s = QuadratureScheme::default();
        let m = bump();
        let a = calabi_identity_check(&TestFunction::Curvature, &m, &s).unwrap();
        let b = calabi_identity_check(&TestFunction::Curvature, &m, &s.refined()).unwrap();
        assert!((a.lhs.value - b.lhs.value).abs() <= a.lhs.error_estimate);
        assert!((a.rhs.value - b.rhs.value).abs() <= a.rhs.error_estimate);
    }

    #[test]
    fn rigidity() {
        let s = QuadratureScheme::default();
        let round = rigidity_demo(&CompactMetric::fubini_study(), &s, &SPHERICITY_TOLERANCES).unwrap();
        assert!(round.symbolic.spherical && round.consistent());
        let b = rigidity_demo(&bump(), &s, &SPHERICITY_TOLERANCES).unwrap();
        assert!(!b.symbolic.spherical && b.consistent());
        assert!(b.i2.value > 0.0);
    }

    #[test]
    fn symbolic_numeric_r() {
        let rep = r_consistency(&bump(), CONSISTENCY_ORDER).unwrap();
        assert!(rep.max_relative_error < 1e-6, "{rep:?}");
        let flat = r_consistency(&CompactMetric::fubini_study(), 12).unwrap();
        assert!(flat.max_abs_error < 1e-14);
    }

    #[test]
    fn scheme_contract() {
        assert!(QuadratureScheme::new(1, 8, 128).is_err());
        assert!(QuadratureScheme::new(4, 4, 8).is_err());
        assert_eq!(QuadratureScheme::default().radial_nodes(), 64);
    }
}
