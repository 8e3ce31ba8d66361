//! Conformal metrics `e^{2φ}|dz|²` on a coordinate chart, their Gauss
//! curvature, covariant derivatives, and Cartan's `r` and `s`.
//!
//! `φ` itself is usually not representable (`log 2` is not rational), so a
//! chart stores the conformal factor `g = e^{2φ}` and everything is phrased
//! through `g`, `1/g` and `b = 2Dφ = Dg/g`. Covariant derivatives carry an
//! integer power of `e^{φ}` as a tag; only even powers are materialised as
//! integer powers of `g`.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::series::{TruncatedSeries, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    LineBundleMetric,
    RigidDefining,
    Direct,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::LineBundleMetric => "from_line_bundle_metric",
            Provenance::RigidDefining => "from_rigid_defining",
            Provenance::Direct => "direct",
        })
    }
}

/// A chart of a Riemann surface with metric `e^{2φ}|dz|²`.
#[derive(Clone, Debug)]
pub struct SurfaceChart {
    e2phi: TruncatedSeries,
    e_minus_2phi: TruncatedSeries,
    b: TruncatedSeries,
    provenance: Provenance,
}

impl SurfaceChart {
    /// Wraps a conformal factor `e^{2φ}` directly. It must be real with a
    /// positive rational value at the chart center.
    pub fn from_conformal_factor(e2phi: TruncatedSeries) -> Result<Self> {
        Self::build(e2phi, Provenance::Direct)
    }

    fn build(e2phi: TruncatedSeries, provenance: Provenance) -> Result<Self> {
        if !e2phi.is_conjugate_symmetric() {
            return Err(Error::Domain("conformal factor is not real".into()));
        }
        if !e2phi.constant_term().is_positive_real() {
            return Err(Error::NotStrictlyPseudoconvex(format!(
                "e^(2phi) at the center is {}, not positive",
                e2phi.constant_term()
            )));
        }
        let e_minus_2phi = e2phi.reciprocal()?;
        let b = &e2phi.d() * &e_minus_2phi;
        Ok(Self { e2phi, e_minus_2phi, b, provenance })
    }

    /// Exact truncation order of `e^{2φ}`.
    pub fn order(&self) -> usize {
        self.e2phi.order()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// `e^{2φ}`, the Levi form `h_{11̄}` in the transverse picture.
    pub fn e2phi(&self) -> &TruncatedSeries {
        &self.e2phi
    }

    /// `a = e^{−2φ}`.
    pub fn a(&self) -> &TruncatedSeries {
        &self.e_minus_2phi
    }

    /// `b = 2Dφ = −D log a`, exact through order `N − 1`.
    pub fn b(&self) -> &TruncatedSeries {
        &self.b
    }

    /// `b̄ = 2D̄φ`.
    pub fn b_bar(&self) -> TruncatedSeries {
        self.b.conjugate()
    }

    /// `e^{kφ}` for even `k`, as `g^{k/2}`.
    pub fn e_phi_power(&self, k: i32) -> Result<TruncatedSeries> {
        if k % 2 == 0 {
            return self.e2phi.powi(i64::from(k / 2));
        }
        // Odd powers need √g, rational only when g(0) is a rational square.
        let root = self.e2phi.sqrt().map_err(|_| {
            Error::Representation(format!(
                "e^(phi) is irrational at the center (e^(2phi)(0) = {}); use an even word or numeric mode",
                self.e2phi.constant_term()
            ))
        })?;
        let even = self.e2phi.powi(i64::from((k - 1) / 2))?;
        Ok(&even * &root)
    }

    /// `φ` itself, only available when `e^{2φ}(0) = 1`.
    pub fn phi(&self) -> Result<TruncatedSeries> {
        let log = self.e2phi.log().map_err(|_| {
            Error::Representation("phi is only rational when e^(2phi)(0) = 1".into())
        })?;
        Ok(log.scale(&GaussianRational::ratio(1, 2)))
    }
}

/// Metric of the circle bundle of `L*` from the line-bundle metric `h`:
/// `e^{2φ} = −DD̄ log h`.
pub fn phi_from_line_bundle_metric(h: &TruncatedSeries) -> Result<SurfaceChart> {
    if h.order() < 4 {
        return Err(Error::InsufficientOrder { needed: 4, available: h.order() });
    }
    if !h.is_conjugate_symmetric() {
        return Err(Error::Domain("line bundle metric h is not real".into()));
    }
    let h0 = h.constant_term();
    if !h0.is_positive_real() {
        return Err(Error::Domain(format!("h(0) = {h0} is not a positive rational")));
    }
    // log h = log h(0) + log(h / h(0)); the constant drops out under DD̄.
    let log_h = h.scale(&h0.inv()?).log()?;
    let e2phi = -&log_h.dbar().d();
    if !e2phi.constant_term().is_positive_real() {
        return Err(Error::NotStrictlyPseudoconvex(format!(
            "-DD̄ log h at the center is {}",
            e2phi.constant_term()
        )));
    }
    SurfaceChart::build(e2phi, Provenance::LineBundleMetric)
}

/// Chart of the rigid hypersurface `Im w = F(z, z̄)`. With `f = −i DF` the
/// Levi form is `D f̄ − D̄ f = 2i F_{zz̄}`, so `e^{2φ} = 2 F_{zz̄}`.
pub fn phi_from_rigid_defining(f: &TruncatedSeries) -> Result<SurfaceChart> {
    if f.order() < 4 {
        return Err(Error::InsufficientOrder { needed: 4, available: f.order() });
    }
    if !f.is_conjugate_symmetric() {
        return Err(Error::MalformedDefiningFunction("F is not real".into()));
    }
    for ((k, l), c) in f.terms() {
        let ok = match k + l {
            0 | 1 | 3 => false,
            2 => k == 1 && l == 1 && c == &GaussianRational::from_int(1),
            _ => true,
        };
        if !ok {
            return Err(Error::MalformedDefiningFunction(format!(
                "unexpected term {c} z^{k} zb^{l}; F must be z zb + O(4)"
            )));
        }
    }
    if f.coeff(1, 1) != GaussianRational::from_int(1) {
        return Err(Error::MalformedDefiningFunction("missing z zb term".into()));
    }
    let e2phi = f.dbar().d().scale_int(2).with_reality_check();
    SurfaceChart::build(e2phi, Provenance::RigidDefining)
}

/// A sequence of covariant differentiations, applied left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CovariantWord(pub Vec<Var>);

impl CovariantWord {
    pub fn new(letters: Vec<Var>) -> Self {
        Self(letters)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(z̄, z̄)`.
    pub fn zbar_zbar() -> Self {
        Self(vec![Var::ZBar, Var::ZBar])
    }

    /// `(z̄, z̄, z, z)`.
    pub fn zbar_zbar_z_z() -> Self {
        Self(vec![Var::ZBar, Var::ZBar, Var::Z, Var::Z])
    }
}

impl FromStr for CovariantWord {
    type Err = Error;

    /// Letters `z` / `zb`, separated by commas or whitespace.
    fn from_str(s: &str) -> Result<Self> {
        s.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| match t {
                "z" => Ok(Var::Z),
                "zb" | "zbar" => Ok(Var::ZBar),
                other => Err(Error::Domain(format!("unknown covariant letter `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

/// The value `e^{phi_power · φ} · series`.
#[derive(Clone, Debug, PartialEq)]
pub struct TaggedSeries {
    pub phi_power: i32,
    pub series: TruncatedSeries,
}

impl TaggedSeries {
    pub fn untagged(series: TruncatedSeries) -> Self {
        Self { phi_power: 0, series }
    }

    /// Multiplies by `e^{kφ}` (tag bookkeeping only).
    pub fn times_e_phi(&self, k: i32) -> Self {
        Self { phi_power: self.phi_power + k, series: self.series.clone() }
    }

    /// Collapses the tag into the series.
    pub fn materialize(&self, chart: &SurfaceChart) -> Result<TruncatedSeries> {
        if self.phi_power == 0 {
            return Ok(self.series.clone());
        }
        Ok(&self.series * &chart.e_phi_power(self.phi_power)?)
    }
}

/// Covariant derivatives in the unitary coframe `e^{φ}dz`:
///
/// `f_{;w z}  = e^{(k−l−1)φ} D (e^{(l−k)φ} f_{;w})`
/// `f_{;w z̄} = e^{(l−k−1)φ} D̄(e^{(k−l)φ} f_{;w})`
///
/// where `(k, l)` counts the `z` and `z̄` letters of `w`. Writing
/// `f_{;w} = e^{mφ} S`, one letter maps `S` to `DS + ((m+l−k)/2) b S` (resp.
/// `D̄S + ((m+k−l)/2) b̄ S`) and `m` to `m − 1`, so `S` stays rational.
pub fn covariant_derivative_tagged(
    f: &TaggedSeries,
    word: &CovariantWord,
    chart: &SurfaceChart,
) -> Result<TaggedSeries> {
    let available = f.series.order().min(chart.order().saturating_sub(1));
    if word.len() > available {
        return Err(Error::InsufficientOrder { needed: word.len(), available });
    }
    let b = chart.b();
    let b_bar = chart.b_bar();
    let (mut k, mut l) = (0i64, 0i64);
    let mut m = i64::from(f.phi_power);
    let mut s = f.series.clone();
    for letter in &word.0 {
        s = match letter {
            Var::Z => {
                let c = GaussianRational::ratio(m + l - k, 2);
                let next = &s.d() + &(b * &s).scale(&c);
                k += 1;
                next
            }
            Var::ZBar => {
                let c = GaussianRational::ratio(m + k - l, 2);
                let next = &s.dbar() + &(&b_bar * &s).scale(&c);
                l += 1;
                next
            }
        };
        m -= 1;
    }
    Ok(TaggedSeries { phi_power: m as i32, series: s })
}

/// Materialised covariant derivative. Odd words only succeed when `e^{φ}`
/// is rational at the center.
pub fn covariant_derivative(
    f: &TruncatedSeries,
    word: &CovariantWord,
    chart: &SurfaceChart,
) -> Result<TruncatedSeries> {
    covariant_derivative_tagged(&TaggedSeries::untagged(f.clone()), word, chart)?.materialize(chart)
}

/// `K = −4 e^{−2φ} DD̄φ = −2 e^{−2φ} D(D̄g / g)`, exact through `N − 2`.
pub fn gauss_curvature(chart: &SurfaceChart) -> Result<TruncatedSeries> {
    require_order(chart, 2)?;
    let g_inv = chart.a();
    let dd_log_g = (&chart.e2phi().dbar() * g_inv).d();
    Ok((g_inv * &dd_log_g).scale_int(-2).with_reality_check())
}

/// `r = (1/6)(D̄²D b̄ − 3 b̄ DD̄ b̄ + 2 b̄² D b̄ − D b̄ D̄ b̄)`, exact through `N − 4`.
///
/// This is the form equal to `−(e^{4φ}/12) K_{;z̄z̄}`; the third term carries
/// `D b̄`, not `D̄ b̄`.
pub fn cartan_r(chart: &SurfaceChart) -> Result<TruncatedSeries> {
    require_order(chart, 4)?;
    let bb = chart.b_bar();
    let d_bb = bb.d();
    let db_bb = bb.dbar();
    let dbd_bb = d_bb.dbar();
    let t1 = dbd_bb.dbar();
    let t2 = (&bb * &dbd_bb).scale_int(-3);
    let t3 = (&(&bb * &bb) * &d_bb).scale_int(2);
    let t4 = -(&d_bb * &db_bb);
    let sum = &(&t1 + &t2) + &(&t3 + &t4);
    Ok(sum.scale(&GaussianRational::ratio(1, 6)))
}

/// `s = D²r − 3(Dr)b + r(2b² − Db)`, exact through `N − 6`.
pub fn cartan_s_expanded(chart: &SurfaceChart, r: &TruncatedSeries) -> TruncatedSeries {
    let b = chart.b();
    let dr = r.d();
    let t1 = dr.d();
    let t2 = (&dr * b).scale_int(-3);
    let t3 = r * &(&(b * b).scale_int(2) - &b.d());
    &(&t1 + &t2) + &t3
}

/// `s = e^{4φ} D(e^{−2φ} D(e^{−2φ} r))`.
pub fn cartan_s_divergence(chart: &SurfaceChart, r: &TruncatedSeries) -> TruncatedSeries {
    let g = chart.e2phi();
    let a = chart.a();
    let inner = (a * r).d();
    let outer = (a * &inner).d();
    &(g * g) * &outer
}

/// Cartan's `s` (the fiber-stripped `Q;11`). Both the expanded and the
/// divergence forms are computed and must agree exactly.
pub fn cartan_s(chart: &SurfaceChart) -> Result<TruncatedSeries> {
    require_order(chart, 6)?;
    let r = cartan_r(chart)?;
    let s = cartan_s_expanded(chart, &r);
    let div = cartan_s_divergence(chart, &r);
    if s != div {
        return Err(Error::Inconsistent("expanded and divergence forms of s differ".into()));
    }
    Ok(s)
}

fn require_order(chart: &SurfaceChart, needed: usize) -> Result<()> {
    if chart.order() < needed {
        return Err(Error::InsufficientOrder { needed, available: chart.order() });
    }
    Ok(())
}

/// Exact residuals of the Gauss-curvature identities on one chart.
#[derive(Clone, Debug)]
pub struct GaussIdentityResiduals {
    /// `12 r + e^{4φ} K_{;z̄z̄}`
    pub r_vs_k2: TruncatedSeries,
    /// `12 s + e^{6φ} K_{;z̄z̄zz}`
    pub s_vs_k4: TruncatedSeries,
    /// `s − e^{4φ} D(e^{−2φ} D(e^{−2φ} r))`
    pub divergence: TruncatedSeries,
}

impl GaussIdentityResiduals {
    pub fn all_zero(&self) -> bool {
        self.r_vs_k2.is_zero() && self.s_vs_k4.is_zero() && self.divergence.is_zero()
    }
}

pub fn gauss_identity_residuals(chart: &SurfaceChart) -> Result<GaussIdentityResiduals> {
    require_order(chart, 6)?;
    let k = gauss_curvature(chart)?;
    let r = cartan_r(chart)?;
    let s = cartan_s_expanded(chart, &r);
    let k_tagged = TaggedSeries::untagged(k);
    let k2 = covariant_derivative_tagged(&k_tagged, &CovariantWord::zbar_zbar(), chart)?;
    let k4 = covariant_derivative_tagged(&k_tagged, &CovariantWord::zbar_zbar_z_z(), chart)?;
    let r_vs_k2 = &r.scale_int(12) + &k2.times_e_phi(4).materialize(chart)?;
    let s_vs_k4 = &s.scale_int(12) + &k4.times_e_phi(6).materialize(chart)?;
    let divergence = &s - &cartan_s_divergence(chart, &r);
    Ok(GaussIdentityResiduals { r_vs_k2, s_vs_k4, divergence })
}

/// The constant coefficient, i.e. the value at the chart center.
pub fn value_at_center(s: &TruncatedSeries) -> GaussianRational {
    if s.is_zero() {
        GaussianRational::zero()
    } else {
        s.constant_term().clone()
    }
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

    /// 1 + z z̄ at the given order.
    fn one_plus_zz(order: usize) -> TruncatedSeries {
        poly(order, &[((0, 0), (1, 1)), ((1, 1), (1, 1))])
    }

    fn round(order: usize) -> SurfaceChart {
        SurfaceChart::from_conformal_factor(one_plus_zz(order).powi(-2).unwrap()).unwrap()
    }

    fn flat(order: usize) -> SurfaceChart {
        SurfaceChart::from_conformal_factor(TruncatedSeries::one(order)).unwrap()
    }

    #[test]
    fn line_bundle_flat_heisenberg() {
        let h = poly(8, &[((1, 1), (-1, 1))]).exp().unwrap();
        let chart = phi_from_line_bundle_metric(&h).unwrap();
        assert_eq!(*chart.e2phi(), TruncatedSeries::one(6));
        assert!(chart.phi().unwrap().is_zero());
        assert_eq!(chart.provenance(), Provenance::LineBundleMetric);
    }

    #[test]
    fn line_bundle_fubini_study() {
        let h = one_plus_zz(10).reciprocal().unwrap();
        let chart = phi_from_line_bundle_metric(&h).unwrap();
        assert_eq!(*chart.e2phi(), one_plus_zz(8).powi(-2).unwrap());
        let phi = chart.phi().unwrap();
        let expect = one_plus_zz(8).log().unwrap().scale_int(-1);
        assert_eq!(phi, expect);
    }

    #[test]
    fn line_bundle_cube_power_scales_metric() {
        let h = one_plus_zz(10).powi(-3).unwrap();
        let chart = phi_from_line_bundle_metric(&h).unwrap();
        assert_eq!(*chart.e2phi(), one_plus_zz(8).powi(-2).unwrap().scale_int(3));
    }

    #[test]
    fn line_bundle_rejects_negative_curvature() {
        let h = one_plus_zz(8);
        assert!(matches!(phi_from_line_bundle_metric(&h), Err(Error::NotStrictlyPseudoconvex(_))));
        assert!(matches!(
            phi_from_line_bundle_metric(&TruncatedSeries::one(3)),
            Err(Error::InsufficientOrder { .. })
        ));
    }

    #[test]
    fn rigid_flat() {
        let chart = phi_from_rigid_defining(&poly(10, &[((1, 1), (1, 1))])).unwrap();
        assert_eq!(*chart.e2phi(), TruncatedSeries::constant(q(2, 1), 8));
        assert!(chart.b().is_zero());
        assert!(matches!(chart.phi(), Err(Error::Representation(_))));
    }

    #[test]
    fn rigid_a44_family() {
        let f = poly(10, &[((1, 1), (1, 1)), ((4, 4), (1, 10))]);
        let chart = phi_from_rigid_defining(&f).unwrap();
        // e^{2φ} = 2(1 + 16ε z³z̄³)
        assert_eq!(*chart.e2phi(), poly(8, &[((0, 0), (2, 1)), ((3, 3), (16 * 2, 10))]));
        // b̄ = 48ε z³z̄² / (1 + 16ε z³z̄³)
        let expect = &poly(7, &[((3, 2), (48, 10))]) * &poly(7, &[((0, 0), (1, 1)), ((3, 3), (16, 10))]).reciprocal().unwrap();
        assert_eq!(chart.b_bar(), expect);
    }

    #[test]
    fn rigid_a24_family_leading_b_bar() {
        let f = poly(10, &[((1, 1), (1, 1)), ((2, 4), (1, 10)), ((4, 2), (1, 10))]);
        let chart = phi_from_rigid_defining(&f).unwrap();
        let bb = chart.b_bar();
        assert_eq!(bb.coeff(1, 2), q(24, 10));
        assert_eq!(bb.coeff(3, 0), q(8, 10));
    }

    #[test]
    fn rigid_rejects_malformed() {
        for bad in [
            poly(8, &[((1, 1), (2, 1))]),
            poly(8, &[((1, 1), (1, 1)), ((0, 0), (1, 1))]),
            poly(8, &[((1, 1), (1, 1)), ((2, 1), (1, 1)), ((1, 2), (1, 1))]),
            poly(8, &[((1, 1), (1, 1)), ((2, 0), (1, 1)), ((0, 2), (1, 1))]),
            poly(8, &[((1, 1), (1, 1)), ((4, 0), (1, 1))]),
        ] {
            assert!(phi_from_rigid_defining(&bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn curvature_examples() {
        assert!(gauss_curvature(&flat(8)).unwrap().is_zero());
        let k = gauss_curvature(&round(10)).unwrap();
        assert_eq!(k, TruncatedSeries::constant(q(4, 1), 8));
        assert!(k.real_flag());
        let chart = SurfaceChart::from_conformal_factor(one_plus_zz(10)).unwrap();
        let k = gauss_curvature(&chart).unwrap();
        assert_eq!(k, one_plus_zz(8).powi(-3).unwrap().scale_int(-2));
    }

    #[test]
    fn covariant_derivative_examples() {
        let four = TruncatedSeries::constant(q(4, 1), 8);
        let out = covariant_derivative(&four, &CovariantWord::zbar_zbar(), &round(10)).unwrap();
        assert!(out.is_zero());

        let chart = SurfaceChart::from_conformal_factor(one_plus_zz(12)).unwrap();
        let k = gauss_curvature(&chart).unwrap();
        let k2 = covariant_derivative(&k, &CovariantWord::zbar_zbar(), &chart).unwrap();
        let expect = &poly(8, &[((2, 0), (-30, 1))]) * &one_plus_zz(8).powi(-6).unwrap();
        assert_eq!(k2, expect);

        // K_{;z̄z̄zz}(0) = −12 s(0) = −60.
        let k4 = covariant_derivative(&k, &CovariantWord::zbar_zbar_z_z(), &chart).unwrap();
        assert_eq!(k4.order(), 6);
        assert_eq!(value_at_center(&k4), q(-60, 1));
        // Divergence form e^{−2φ}D(e^{−2φ}D(e^{2φ}K_{;z̄z̄})).
        let g = chart.e2phi();
        let a = chart.a();
        let via_div = a * &(a * &(g * &k2).d()).d();
        assert_eq!(k4, via_div);
    }

    #[test]
    fn odd_words_need_rational_e_phi() {
        let chart = phi_from_rigid_defining(&poly(10, &[((1, 1), (1, 1)), ((4, 4), (1, 10))])).unwrap();
        let k = gauss_curvature(&chart).unwrap();
        let word: CovariantWord = "zb".parse().unwrap();
        assert!(matches!(covariant_derivative(&k, &word, &chart), Err(Error::Representation(_))));
        // e^{2φ}(0) = 1 is a rational square: odd words are fine.
        let chart = SurfaceChart::from_conformal_factor(one_plus_zz(10)).unwrap();
        let k = gauss_curvature(&chart).unwrap();
        let kz = covariant_derivative(&k, &word, &chart).unwrap();
        // e^{−φ} D̄K
        let expect = &k.dbar() * &chart.e_phi_power(-1).unwrap();
        assert_eq!(kz, expect);
    }

    #[test]
    fn word_too_long_for_order() {
        let chart = flat(3);
        let word: CovariantWord = "zb zb z z".parse().unwrap();
        assert!(matches!(
            covariant_derivative(&TruncatedSeries::one(3), &word, &chart),
            Err(Error::InsufficientOrder { .. })
        ));
        assert!("zb q".parse::<CovariantWord>().is_err());
    }

    #[test]
    fn r_examples() {
        assert!(cartan_r(&flat(10)).unwrap().is_zero());
        assert!(cartan_r(&round(12)).unwrap().is_zero());
        let chart = SurfaceChart::from_conformal_factor(one_plus_zz(12)).unwrap();
        let r = cartan_r(&chart).unwrap();
        let expect = &poly(8, &[((2, 0), (5, 2))]) * &one_plus_zz(8).powi(-4).unwrap();
        assert_eq!(r, expect);

        let f = poly(12, &[((1, 1), (1, 1)), ((4, 4), (1, 10))]);
        let r = cartan_r(&phi_from_rigid_defining(&f).unwrap()).unwrap();
        assert_eq!(r.leading_term(), Some(((2, 0), q(48, 10))));
    }

    #[test]
    fn s_examples() {
        assert!(cartan_s(&flat(10)).unwrap().is_zero());
        let chart = SurfaceChart::from_conformal_factor(one_plus_zz(12)).unwrap();
        assert_eq!(value_at_center(&cartan_s(&chart).unwrap()), q(5, 1));
        let f = poly(12, &[((1, 1), (1, 1)), ((4, 4), (1, 10))]);
        let s = cartan_s(&phi_from_rigid_defining(&f).unwrap()).unwrap();
        assert_eq!(s.order(), 4);
        assert_eq!(value_at_center(&s), q(96, 10));
    }

    #[test]
    fn identities_on_named_charts() {
        for chart in [flat(10), round(10), SurfaceChart::from_conformal_factor(one_plus_zz(12)).unwrap()] {
            assert!(gauss_identity_residuals(&chart).unwrap().all_zero());
        }
    }

    #[test]
    fn order_accounting() {
        let chart = SurfaceChart::from_conformal_factor(one_plus_zz(12)).unwrap();
        assert_eq!(chart.b().order(), 11);
        assert_eq!(gauss_curvature(&chart).unwrap().order(), 10);
        assert_eq!(cartan_r(&chart).unwrap().order(), 8);
        assert_eq!(cartan_s(&chart).unwrap().order(), 6);
        assert!(matches!(cartan_s(&flat(5)), Err(Error::InsufficientOrder { .. })));
    }

    #[test]
    fn stable_under_order_increase() {
        let lo = SurfaceChart::from_conformal_factor(one_plus_zz(10)).unwrap();
        let hi = SurfaceChart::from_conformal_factor(one_plus_zz(14)).unwrap();
        let (s_lo, s_hi) = (cartan_s(&lo).unwrap(), cartan_s(&hi).unwrap());
        assert_eq!(s_hi.truncate(s_lo.order()), s_lo);
    }
}
