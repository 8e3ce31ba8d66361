use std::path::PathBuf;

use crinv::invariants::{calibrate, is_spherical, ProbeFamily, DEFAULT_PROBES};
use crinv::quadrature::{
    calabi_identity_check, integrate_surface, r_consistency, rigidity_demo, CompactMetric, QuadratureScheme,
    TestFunction, CONSISTENCY_ORDER, IDENTITY_TOLERANCE, SPHERICITY_TOLERANCES,
};
use crinv::series::io::read_coeff_file;
use crinv::series::TruncatedSeries;
use crinv::surface::{
    cartan_r, cartan_s, gauss_curvature, gauss_identity_residuals, phi_from_line_bundle_metric,
    phi_from_rigid_defining, value_at_center, SurfaceChart,
};
use crinv::transverse::{
    check_qisgauss_trans, q11_representative, q_representative, scalar_curvature, verify_bracket_identity,
    FiberPoint, PseudohermitianChart,
};
use crinv::GaussianRational;

use crate::parser::{parse_expression, parse_gaussian, parse_profile, parse_rational};
use crate::report::{CalibrationSection, InputEcho, Report, Residual};
use crate::{Cli, CliError, Command, InputKind, Options};

pub const DEFAULT_ORDER: usize = 16;
/// Tolerance for the symbolic–numeric comparison of `r`.
const R_CONSISTENCY_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub enum Source {
    Expr(String),
    CoeffFile(PathBuf),
}

/// What to compute on: kind, source, and truncation order.
#[derive(Clone, Debug, PartialEq)]
pub struct InputSpec {
    pub kind: InputKind,
    pub source: Source,
    pub order: usize,
    /// `--order` was given explicitly.
    explicit_order: bool,
}

impl InputSpec {
    pub fn from_options(o: &Options) -> Result<Self, CliError> {
        let kind = o.input_kind.ok_or_else(|| CliError::Usage("--input-kind is required".into()))?;
        let source = match (&o.expr, &o.coeff_file) {
            (Some(e), None) => Source::Expr(e.clone()),
            (None, Some(p)) => Source::CoeffFile(p.clone()),
            (None, None) => return Err(CliError::Usage("one of --expr or --coeff-file is required".into())),
            (Some(_), Some(_)) => return Err(CliError::Usage("--expr and --coeff-file are exclusive".into())),
        };
        if kind == InputKind::CompactProfilePsi && matches!(source, Source::CoeffFile(_)) {
            return Err(CliError::Usage("compact_profile_psi takes --expr, a polynomial in u".into()));
        }
        let order = o.order.unwrap_or(DEFAULT_ORDER);
        if order < 4 {
            return Err(CliError::Usage(format!("--order must be at least 4, got {order}")));
        }
        Ok(Self { kind, source, order, explicit_order: o.order.is_some() })
    }

    /// The input series. A coefficient file carries its own order; an
    /// explicit lower `--order` truncates it, a higher one is refused.
    pub fn series(&self) -> Result<TruncatedSeries, CliError> {
        match &self.source {
            Source::Expr(e) => parse_expression(e, self.order),
            Source::CoeffFile(p) => {
                let s = read_coeff_file(p)?;
                if !self.explicit_order || self.order == s.order() {
                    Ok(s)
                } else if self.order < s.order() {
                    Ok(s.truncate(self.order))
                } else {
                    Err(CliError::Usage(format!(
                        "--order {} exceeds the order {} recorded in {}",
                        self.order,
                        s.order(),
                        p.display()
                    )))
                }
            }
        }
    }

    pub fn profile(&self) -> Result<CompactMetric, CliError> {
        match (&self.kind, &self.source) {
            (InputKind::CompactProfilePsi, Source::Expr(e)) => Ok(CompactMetric::new(parse_profile(e)?)),
            _ => Err(CliError::Usage("expected --input-kind compact_profile_psi with --expr".into())),
        }
    }

    pub fn chart(&self) -> Result<SurfaceChart, CliError> {
        Ok(match self.kind {
            InputKind::LineBundleMetricH => phi_from_line_bundle_metric(&self.series()?)?,
            InputKind::ConformalFactorE2phi => SurfaceChart::from_conformal_factor(self.series()?)?,
            InputKind::RigidDefiningF => phi_from_rigid_defining(&self.series()?)?,
            InputKind::CompactProfilePsi => self.profile()?.chart(self.order)?,
        })
    }

    fn echo(&self, subcommand: &str, lambda: Option<&GaussianRational>) -> InputEcho {
        let (expr, coeff_file) = match &self.source {
            Source::Expr(e) => (Some(e.clone()), None),
            Source::CoeffFile(p) => (None, Some(p.display().to_string())),
        };
        InputEcho {
            subcommand: subcommand.into(),
            kind: Some(self.kind.name().into()),
            expr,
            coeff_file,
            order: Some(self.order),
            lambda: lambda.map(ToString::to_string),
        }
    }
}

fn bare_echo(subcommand: &str) -> InputEcho {
    InputEcho { subcommand: subcommand.into(), kind: None, expr: None, coeff_file: None, order: None, lambda: None }
}

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let o = &cli.opts;
    match cli.command {
        Command::Curvature => curvature(&InputSpec::from_options(o)?),
        Command::Invariants => invariants(&InputSpec::from_options(o)?, lambda(o)?),
        Command::Sphericity => sphericity(&InputSpec::from_options(o)?),
        Command::CalibrateC => calibrate_c(o),
        Command::QuadratureCheck => quadrature_check(&InputSpec::from_options(o)?, o.tolerance),
        Command::VerifyIdentities => verify_identities(&InputSpec::from_options(o)?),
    }
}

fn lambda(o: &Options) -> Result<Option<GaussianRational>, CliError> {
    o.lambda.as_deref().map(parse_gaussian).transpose()
}

fn curvature(spec: &InputSpec) -> Result<Report, CliError> {
    let chart = spec.chart()?;
    let mut rep = Report::new(spec.echo("curvature", None));
    let k = gauss_curvature(&chart)?;
    let ph = PseudohermitianChart::new(chart.clone())?;
    let r = scalar_curvature(&ph)?;
    rep.echo_series("e2phi", chart.e2phi());
    rep.echo_series("b", chart.b());
    rep.echo_series("K", &k);
    rep.echo_series("R", &r);
    rep.exact("K(0)", &value_at_center(&k));
    rep.exact("R(0)", &value_at_center(&r));
    rep.verdict("provenance", chart.provenance().to_string());
    rep.residuals.push(Residual::exact("K - 2R", &(&k - &r.scale_int(2))));
    Ok(rep)
}

/// Exact residuals shared by `invariants` and `verify-identities`.
fn identity_residuals(chart: &SurfaceChart, rep: &mut Report) -> Result<(), CliError> {
    let g = gauss_identity_residuals(chart)?;
    let ph = PseudohermitianChart::new(chart.clone())?;
    let t = check_qisgauss_trans(&ph)?;
    let k = gauss_curvature(chart)?;
    let r = scalar_curvature(&ph)?;
    let bracket = verify_bracket_identity();
    rep.residuals.extend([
        Residual::exact("12r + e^{4phi} K;zbzb", &g.r_vs_k2),
        Residual::exact("12s + e^{6phi} K;zbzbzz", &g.s_vs_k4),
        Residual::exact("6r + e^{4phi} R;1b1b", &t.q),
        Residual::exact("6s + e^{6phi} R;1b1b11", &t.q11),
        Residual::exact("s - divergence form", &g.divergence),
        Residual::exact("K - 2R", &(&k - &r.scale_int(2))),
        Residual::symbolic("bracket identity", bracket.bracket_residual.is_zero(), &bracket.bracket_residual),
        Residual::symbolic("bracket reduction", bracket.reduction_residual.is_zero(), &bracket.reduction_residual),
    ]);
    let base = q11_representative(&ph, &FiberPoint::identity())?.value_at_center();
    for (n, d) in [(2, 1), (3, 2)] {
        let lam = GaussianRational::ratio(n, d);
        let t = GaussianRational::from_real(lam.norm_sqr());
        let v = q11_representative(&ph, &FiberPoint::new(lam, GaussianRational::from_int(0))?)?.value_at_center();
        let res = &(&v * &t.powi(3)?) - &base;
        rep.residuals.push(Residual::exact_value(&format!("weight-3 scaling |lambda|^2 = {t}"), &res));
    }
    Ok(())
}

fn invariants(spec: &InputSpec, lambda: Option<GaussianRational>) -> Result<Report, CliError> {
    let chart = spec.chart()?;
    let mut rep = Report::new(spec.echo("invariants", lambda.as_ref()));
    let ph = PseudohermitianChart::new(chart.clone())?;
    let k = gauss_curvature(&chart)?;
    let rc = scalar_curvature(&ph)?;
    let r = cartan_r(&chart)?;
    let s = cartan_s(&chart)?;
    rep.echo_series("K", &k);
    rep.echo_series("R", &rc);
    rep.echo_series("b", chart.b());
    rep.echo_series("r", &r);
    rep.echo_series("s", &s);
    let one = FiberPoint::identity();
    rep.exact("q", &q_representative(&ph, &one)?.value_at_center());
    rep.exact("q11", &q11_representative(&ph, &one)?.value_at_center());
    if let Some(l) = lambda {
        let p = FiberPoint::new(l, GaussianRational::from_int(0))?;
        rep.exact("q_at_lambda", &q_representative(&ph, &p)?.value_at_center());
        rep.exact("q11_at_lambda", &q11_representative(&ph, &p)?.value_at_center());
    }
    let v = is_spherical(&chart, r.order())?;
    rep.verdict("spherical", v.spherical);
    rep.verdict("verified_through", v.verified_through);
    rep.verdict("provenance", chart.provenance().to_string());
    identity_residuals(&chart, &mut rep)?;
    Ok(rep)
}

fn sphericity(spec: &InputSpec) -> Result<Report, CliError> {
    let chart = spec.chart()?;
    let mut rep = Report::new(spec.echo("sphericity", None));
    let r = cartan_r(&chart)?;
    let v = is_spherical(&chart, r.order())?;
    rep.echo_series("r", &r);
    rep.verdict("spherical", v.spherical);
    rep.verdict("verified_through", v.verified_through);
    if let Some(((k, l), c)) = &v.first_nonzero {
        rep.verdict("first_nonzero", format!("{c} at ({k}, {l})"));
    }
    Ok(rep)
}

fn calibrate_c(o: &Options) -> Result<Report, CliError> {
    let probes = match &o.probes {
        Some(list) => list
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| parse_rational(t).map(GaussianRational::from_real))
            .collect::<Result<Vec<_>, _>>()?,
        None => DEFAULT_PROBES.iter().map(|&(n, d)| GaussianRational::ratio(n, d)).collect(),
    };
    let order = o.order.unwrap_or(crinv::invariants::MIN_RIGID_ORDER + 2);
    let mut echo = bare_echo("calibrate-c");
    echo.order = Some(order);
    let mut rep = Report::new(echo);
    let mut sections = Vec::new();
    for family in [ProbeFamily::A44, ProbeFamily::A24] {
        let cal = calibrate(family, &probes, order)?;
        let strs = |v: &[GaussianRational]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
        sections.push(CalibrationSection {
            c: cal.c_value.to_string(),
            probe_family: family.to_string(),
            probes: strs(&cal.epsilon_probes),
            samples: strs(&cal.samples),
            polynomial: strs(&cal.interpolated_polynomial),
        });
        if family == ProbeFamily::A24 {
            rep.residuals.push(Residual::exact_value("A24 control: linear coefficient", &cal.c_value));
        }
    }
    rep.calibration = Some(sections.remove(0));
    Ok(rep)
}

fn quadrature_check(spec: &InputSpec, tolerance: Option<f64>) -> Result<Report, CliError> {
    let metric = spec.profile()?;
    let tol = tolerance.unwrap_or(IDENTITY_TOLERANCE);
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CliError::Usage(format!("--tolerance must be positive, got {tol}")));
    }
    let mut echo = spec.echo("quadrature-check", None);
    echo.order = None;
    let mut rep = Report::new(echo);
    let scheme = QuadratureScheme::default();
    let area = integrate_surface(|_| 1.0, &metric, &scheme)?;
    rep.float("area", area.value);
    rep.float("area_error_estimate", area.error_estimate);
    for f in TestFunction::corpus() {
        let c = calabi_identity_check(&f, &metric, &scheme)?;
        rep.float(&format!("calabi_lhs[{}]", c.function), c.lhs.value);
        rep.float(&format!("calabi_rhs[{}]", c.function), c.rhs.value);
        rep.residuals.push(Residual::numeric(&format!("calabi relative residual, f = {}", c.function), c.relative_residual, tol));
        if c.lhs.value < -tol {
            rep.flag_violation(&format!("negative |f;zbzb|^2 integral for f = {}", c.function));
        }
    }
    let demo = rigidity_demo(&metric, &scheme, &SPHERICITY_TOLERANCES)?;
    rep.float("I2", demo.i2.value);
    rep.float("I4", demo.i4.value);
    for (t, v) in &demo.verdicts {
        rep.verdict(&format!("spherical (I2 < {t:e})"), *v);
    }
    rep.verdict("spherical (symbolic)", demo.symbolic.spherical);
    rep.verdict("symbolic verified_through", demo.symbolic.verified_through);
    rep.verdict("consistent", demo.consistent());
    if !demo.consistent() {
        rep.flag_violation("numeric and symbolic sphericity verdicts disagree");
    }
    let cons = r_consistency(&metric, CONSISTENCY_ORDER)?;
    rep.residuals.push(Residual::numeric("symbolic vs numeric r, |z| <= 1/4", cons.max_relative_error, R_CONSISTENCY_TOL));
    Ok(rep)
}

fn verify_identities(spec: &InputSpec) -> Result<Report, CliError> {
    let chart = spec.chart()?;
    let mut rep = Report::new(spec.echo("verify-identities", None));
    identity_residuals(&chart, &mut rep)?;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(kind: InputKind, expr: &str, order: usize) -> InputSpec {
        InputSpec { kind, source: Source::Expr(expr.into()), order, explicit_order: true }
    }

    #[test]
    fn rigid_invariants_report() {
        let rep = invariants(&spec(InputKind::RigidDefiningF, "z*zb + 1/10*z^4*zb^4", 12), None).unwrap();
        assert_eq!(rep.values["q11"], "48/5");
        assert_eq!(rep.values["q"], "0");
        assert_eq!(rep.exit_code(), 0);
    }

    #[test]
    fn lambda_values() {
        let l = parse_gaussian("2").unwrap();
        let rep = invariants(&spec(InputKind::RigidDefiningF, "z*zb + 1/10*z^4*zb^4", 12), Some(l)).unwrap();
        assert_eq!(rep.values["q11_at_lambda"], "3/20");
    }

    #[test]
    fn sphericity_of_round_metric() {
        let rep = sphericity(&spec(InputKind::ConformalFactorE2phi, "(1+z*zb)^-2", 14)).unwrap();
        assert_eq!(rep.verdicts["spherical"], true);
        assert_eq!(rep.verdicts["verified_through"], 10);
    }

    #[test]
    fn line_bundle_input() {
        let rep = curvature(&spec(InputKind::LineBundleMetricH, "(1+z*zb)^-1", 8)).unwrap();
        assert_eq!(rep.exit_code(), 0);
        assert_eq!(rep.values["K(0)"], "4");
    }
}
