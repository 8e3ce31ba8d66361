//! Pseudohermitian data of CR manifolds with transverse symmetry and the
//! fiber-coordinate representatives of `Q`, `Q;1`, `Q;11` on Cartan's bundle.
//!
//! In coordinates `(z, t)` with `T⁰ = ∂/∂t`, `θ₀ = dt + f dz + f̄ dz̄` and
//! `dθ₀ = i e^{2φ} dz∧dz̄`, the contact form `θ = e^{−2φ}θ₀` is Levi-normalised
//! against `θ¹ = dz`, with `b = 2Dφ`. All data is `t`-independent, so the
//! `−f ∂/∂t` part of `L₁` annihilates every function handled here and `L₁`
//! acts as `D`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::poly::{Indeterminate, Poly};
use crate::series::TruncatedSeries;
use crate::surface::{
    cartan_r, cartan_s, cartan_s_expanded, covariant_derivative_tagged, CovariantWord,
    SurfaceChart, TaggedSeries,
};

/// A transverse-symmetry pseudohermitian structure on one chart.
/// Torsion always vanishes.
#[derive(Clone, Debug)]
pub struct PseudohermitianChart {
    base: SurfaceChart,
}

impl PseudohermitianChart {
    /// Wraps a surface chart, checking the Levi normalisation
    /// `dθ = iθ¹∧θ¹̄ + bθ∧θ¹ + b̄θ∧θ¹̄`.
    pub fn new(base: SurfaceChart) -> Result<Self> {
        let chart = Self { base };
        if !chart.levi_normalization_residual().is_zero() {
            return Err(Error::Inconsistent("Levi normalisation of theta fails".into()));
        }
        Ok(chart)
    }

    pub fn base(&self) -> &SurfaceChart {
        &self.base
    }

    pub fn torsion_zero(&self) -> bool {
        true
    }

    /// `θ = e^{−2φ} θ₀`.
    pub fn contact_scale(&self) -> &'static str {
        "theta = e^(-2 phi) theta_0, theta^1 = dz, Levi form 1"
    }

    /// Recomputes `dθ` from `d(e^{−2φ}) ∧ θ₀ + e^{−2φ} dθ₀`. Its `θ∧θ¹`
    /// coefficient is `−D(e^{−2φ})·e^{2φ}`, which must equal the stored
    /// `b = D(e^{2φ})·e^{−2φ}`; the `θ¹∧θ¹̄` coefficient is `e^{−2φ}·i e^{2φ}`,
    /// which must equal `i`. Returns both residuals combined.
    pub fn levi_normalization_residual(&self) -> TruncatedSeries {
        let g = self.base.e2phi();
        let a = self.base.a();
        let theta_theta1 = -&(&a.d() * g);
        let b_res = &theta_theta1 - self.base.b();
        let levi = &(a * g) - &TruncatedSeries::one(g.order());
        &b_res + &levi
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiberPoint {
    lambda: GaussianRational,
    mu: GaussianRational,
}

impl FiberPoint {
    pub fn new(lambda: GaussianRational, mu: GaussianRational) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::InvalidFiberPoint);
        }
        Ok(Self { lambda, mu })
    }

    /// `λ = 1, μ = 0`.
    pub fn identity() -> Self {
        Self { lambda: GaussianRational::from_int(1), mu: GaussianRational::zero() }
    }

    pub fn lambda(&self) -> &GaussianRational {
        &self.lambda
    }

    pub fn mu(&self) -> &GaussianRational {
        &self.mu
    }
}

/// `series · scale`, a function on the fiber over the chart.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberRepresentative {
    pub series: TruncatedSeries,
    pub scale: GaussianRational,
}

impl FiberRepresentative {
    /// Value over the chart center.
    pub fn value_at_center(&self) -> GaussianRational {
        if self.series.is_zero() {
            return GaussianRational::zero();
        }
        self.series.constant_term() * &self.scale
    }

    pub fn scaled_series(&self) -> TruncatedSeries {
        self.series.scale(&self.scale)
    }
}

/// `R = −2 e^{−2φ} DD̄φ = −e^{−2φ} D(D̄g / g)`.
pub fn scalar_curvature(chart: &PseudohermitianChart) -> Result<TruncatedSeries> {
    let base = chart.base();
    if base.order() < 2 {
        return Err(Error::InsufficientOrder { needed: 2, available: base.order() });
    }
    let a = base.a();
    let dd_log_g = (&base.e2phi().dbar() * a).d();
    Ok((-&(a * &dd_log_g)).with_reality_check())
}

/// Connection coefficients.
#[derive(Clone, Debug)]
pub struct ConnectionForms {
    /// `ω₁¹ = 2Dφ θ¹`: the `θ¹` coefficient.
    pub omega: TruncatedSeries,
    /// `ω̂₁¹ = e^{−φ}(D̄φ θ̂¹̄ − Dφ θ̂¹)`: the `θ̂¹` coefficient without the
    /// `e^{−φ}` factor, i.e. `−Dφ`.
    pub unitary_theta1: TruncatedSeries,
    /// The `θ̂¹̄` coefficient without the `e^{−φ}` factor, `D̄φ`.
    pub unitary_theta1bar: TruncatedSeries,
    /// Power of `e^{φ}` multiplying both unitary coefficients.
    pub unitary_phi_power: i32,
}

impl ConnectionForms {
    /// `ω̂₁₁̄ + ω̂₁̄₁ = 0`, i.e. the `θ̂¹̄` coefficient is minus the conjugate
    /// of the `θ̂¹` coefficient.
    pub fn is_skew_hermitian(&self) -> bool {
        self.unitary_theta1bar == -&self.unitary_theta1.conjugate()
    }
}

pub fn connection_form_coefficients(chart: &PseudohermitianChart) -> Result<ConnectionForms> {
    let base = chart.base();
    if base.order() < 1 {
        return Err(Error::InsufficientOrder { needed: 1, available: 0 });
    }
    let half = GaussianRational::ratio(1, 2);
    let d_phi = base.b().scale(&half);
    let dbar_phi = base.b_bar().scale(&half);
    let forms = ConnectionForms {
        omega: base.b().clone(),
        unitary_theta1: -&d_phi,
        unitary_theta1bar: dbar_phi,
        unitary_phi_power: -1,
    };
    debug_assert!(forms.is_skew_hermitian());
    Ok(forms)
}

/// `Q = r / (λ λ̄³)`.
pub fn q_representative(chart: &PseudohermitianChart, p: &FiberPoint) -> Result<FiberRepresentative> {
    let r = cartan_r(chart.base())?;
    let lb = p.lambda.conj();
    let denom = &(&p.lambda * &lb) * &(&lb * &lb);
    Ok(FiberRepresentative { series: r, scale: denom.inv()? })
}

/// `Q;1 = (L₁r − r b + i r μ̄) / (λ² λ̄³)`.
pub fn q1_representative(chart: &PseudohermitianChart, p: &FiberPoint) -> Result<FiberRepresentative> {
    let base = chart.base();
    let r = cartan_r(base)?;
    let i_mu_bar = &GaussianRational::i() * &p.mu.conj();
    let series = &(&r.d() - &(&r * base.b())) + &r.scale(&i_mu_bar);
    let lb = p.lambda.conj();
    let l2 = &p.lambda * &p.lambda;
    let denom = &l2 * &(&(&lb * &lb) * &lb);
    Ok(FiberRepresentative { series, scale: denom.inv()? })
}

/// `Q;11 = s / |λ|⁶`.
pub fn q11_representative(chart: &PseudohermitianChart, p: &FiberPoint) -> Result<FiberRepresentative> {
    let s = cartan_s(chart.base())?;
    let n = GaussianRational::from_real(p.lambda.norm_sqr());
    let denom = &(&n * &n) * &n;
    Ok(FiberRepresentative { series: s, scale: denom.inv()? })
}

/// Which formula for `A` to use in the bracket check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketVariant {
    /// `A = −(b + 2iμ̄)`.
    Standard,
    /// `A = −(b + iμ̄)`, a deliberately wrong negative control.
    Perturbed,
}

#[derive(Clone, Debug)]
pub struct BracketReport {
    /// `(L₁r − rb + irμ̄)(2A + 3B̄) − irĒ`
    pub bracket_lhs: Poly,
    /// `−2(L₁r)b + 2rb² − i(L₁r)μ̄`
    pub bracket_rhs: Poly,
    /// `(L₁r − rb + irμ̄)(2A + 3B̄) − irĒ − (−2(L₁r)b + 2rb² − i(L₁r)μ̄)`
    pub bracket_residual: Poly,
    /// Full reduction of the `Q;11` numerator to `L₁²r − 3(L₁r)b + r(2b² − L₁b)`.
    pub reduction_residual: Poly,
}

impl BracketReport {
    pub fn is_zero(&self) -> bool {
        self.bracket_residual.is_zero() && self.reduction_residual.is_zero()
    }
}

/// Expands the `A, B, E` substitution in the `Q;11` computation over a
/// polynomial ring and returns the residuals.
pub fn bracket_identity(variant: BracketVariant) -> BracketReport {
    use Indeterminate::*;
    let b = Poly::var(B);
    let b_bar = Poly::var(BBar);
    let mu = Poly::var(Mu);
    let mu_bar = Poly::var(MuBar);
    let r = Poly::var(R);
    let l1r = Poly::var(L1R);
    let l1l1r = Poly::var(L1L1R);
    let l1b = Poly::var(L1B);
    let i = Poly::i();
    let two = Poly::int(2);
    let three = Poly::int(3);

    let a_coef = match variant {
        BracketVariant::Standard => -&(&b + &(&(&two * &i) * &mu_bar)),
        BracketVariant::Perturbed => -&(&b + &(&i * &mu_bar)),
    };
    let b_coef = -&(&i * &mu);
    let e_coef = -&(&mu * &(&b_bar - &(&i * &mu)));

    let ir = &i * &r;
    // L₁r − rb + irμ̄, the numerator of Q;1.
    let q1 = &(&l1r - &(&r * &b)) + &(&ir * &mu_bar);
    let bracket = &(&q1 * &(&(&two * &a_coef) + &(&three * &b_coef.conj()))) - &(&ir * &e_coef.conj());
    let bracket_rhs = &(&(&(-&two) * &(&l1r * &b)) + &(&two * &(&r * &(&b * &b))))
        - &(&i * &(&l1r * &mu_bar));

    // L₁²r − L₁(rb) + i(L₁r)μ̄ + bracket, with L₁(rb) = (L₁r)b + r L₁b.
    let l1_rb = &(&l1r * &b) + &(&r * &l1b);
    let numerator = &(&(&l1l1r - &l1_rb) + &(&(&i * &l1r) * &mu_bar)) + &bracket;
    let reduced = &(&l1l1r - &(&three * &(&l1r * &b))) + &(&r * &(&(&two * &(&b * &b)) - &l1b));

    BracketReport {
        bracket_lhs: bracket.clone(),
        bracket_rhs: bracket_rhs.clone(),
        bracket_residual: &bracket - &bracket_rhs,
        reduction_residual: &numerator - &reduced,
    }
}

pub fn verify_bracket_identity() -> BracketReport {
    bracket_identity(BracketVariant::Standard)
}

/// Residuals of `Q = −(e^{4φ}/6) R_{;1̄1̄}/(λλ̄³)` and
/// `Q;11 = −(e^{6φ}/6) R_{;1̄1̄11}/|λ|⁶`, fiber factors stripped.
#[derive(Clone, Debug)]
pub struct TransResiduals {
    /// `6r + e^{4φ} R_{;1̄1̄}`
    pub q: TruncatedSeries,
    /// `6s + e^{6φ} R_{;1̄1̄11}`
    pub q11: TruncatedSeries,
}

impl TransResiduals {
    pub fn all_zero(&self) -> bool {
        self.q.is_zero() && self.q11.is_zero()
    }
}

/// Tanaka–Webster derivatives of `t`-independent functions in the coframe
/// `e^{φ}dz` coincide with the surface covariant derivatives, so the same
/// tagged engine is used.
pub fn check_qisgauss_trans(chart: &PseudohermitianChart) -> Result<TransResiduals> {
    let base = chart.base();
    if base.order() < 6 {
        return Err(Error::InsufficientOrder { needed: 6, available: base.order() });
    }
    let r_curv = TaggedSeries::untagged(scalar_curvature(chart)?);
    let r2 = covariant_derivative_tagged(&r_curv, &CovariantWord::zbar_zbar(), base)?;
    let r4 = covariant_derivative_tagged(&r_curv, &CovariantWord::zbar_zbar_z_z(), base)?;
    let r = cartan_r(base)?;
    let s = cartan_s_expanded(base, &r);
    Ok(TransResiduals {
        q: &r.scale_int(6) + &r2.times_e_phi(4).materialize(base)?,
        q11: &s.scale_int(6) + &r4.times_e_phi(6).materialize(base)?,
    })
}
