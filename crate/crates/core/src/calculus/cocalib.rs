use serde::Serialize;

use super::{d, CalculusError, CurvatureModel};
use crate::exterior::Form;
use crate::gwistor::{hodge_closed_form, is_stable, ClosedForm, Coeffs, Convention, ExactStar, GwistorError, InvariantForms};
use crate::scalars::{exp, Gen, Poly, RadPrefactor, Ring, ScaledScalar, Surd, Sym};

/// The two polynomials governing `d *σ` for constant symbolic coefficients:
/// `d *σ = pref · θ∧(x 𝔭1 Rα1 - 𝔭2 Rα)` with `pref = f4 t^(1/2) x^(-3) D^(-3/2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CocalibrationConditions {
    pub convention: Convention,
    /// `𝔭1` expanded in `f0..f3`.
    pub p1: Poly,
    /// `𝔭2` expanded in `f0..f3`.
    pub p2: Poly,
    pub prefactor: ScaledScalar,
    /// Coefficient of `θ∧Rα1` in `d *σ`.
    pub theta_r_alpha1: ScaledScalar,
    /// Coefficient of `θ∧Rα` in `d *σ`.
    pub theta_r_alpha: ScaledScalar,
}

/// `*σ` assembled from the closed-form duals of the five basis forms.
pub fn star_sigma_closed(conv: Convention, f: &InvariantForms) -> Form<ScaledScalar> {
    let order = [ClosedForm::Alpha, ClosedForm::Alpha1, ClosedForm::Alpha2, ClosedForm::Alpha3, ClosedForm::ThetaDtheta];
    order.iter().enumerate().fold(Form::zero(4), |acc, (i, w)| {
        &acc + &hodge_closed_form(*w, conv, f).scale(&ScaledScalar::sym(Sym::f(i)))
    })
}

fn quotient_poly(num: &ScaledScalar, den: &ScaledScalar) -> Result<Poly, CalculusError> {
    let q = num.try_div(den)?.expand();
    let mut it = q.terms();
    match (it.next(), it.next()) {
        (None, _) => Ok(Poly::zero()),
        (Some((p, b)), None) if p.is_one() => Ok(b.clone()),
        _ => Err(CalculusError::Scalar(crate::scalars::ScalarError::NotDivisible)),
    }
}

pub fn cocalibration_conditions(conv: Convention, f: &InvariantForms) -> Result<CocalibrationConditions, CalculusError> {
    let star = star_sigma_closed(conv, f);
    let r = d(&star, &CurvatureModel::Generic, f)?;
    let dep = r.dependence.ok_or_else(|| CalculusError::NotInInvariantSpan { residual: "curvature terms".into() })?;
    let (d_gen, t_half) = match conv {
        Convention::Block => (Gen::H, RadPrefactor::single(Gen::T, exp(1, 2))),
        Convention::Induced => (Gen::Q, RadPrefactor::single(Gen::Q, exp(-1, 6))),
    };
    let pref = t_half.mul(&RadPrefactor::of(&[(Gen::X, exp(-3, 1)), (d_gen, exp(-3, 2))]));
    let prefactor = ScaledScalar::term(pref, Poly::var(Sym::F4));
    let x_pref = &prefactor * &ScaledScalar::sym(Sym::X);
    let p1 = quotient_poly(&dep.theta_r_alpha1, &x_pref)?;
    let p2 = -&quotient_poly(&dep.theta_r_alpha, &prefactor)?;
    Ok(CocalibrationConditions {
        convention: conv,
        p1,
        p2,
        prefactor,
        theta_r_alpha1: dep.theta_r_alpha1,
        theta_r_alpha: dep.theta_r_alpha,
    })
}

/// What `d *σ = 0` requires of the base.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CocalibrationVerdict {
    Holds,
    RequiresEinstein,
    RequiresConstantCurvature,
    Fails,
}

/// Torsion summary of a numeric structure under a curvature model.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TorsionReport {
    pub coeffs: String,
    pub model: String,
    pub calibrated: bool,
    pub cocalibrated: CocalibrationVerdict,
    /// Coefficient of `θ∧Rα1` in `d *σ`.
    pub theta_r_alpha1: String,
    /// Coefficient of `θ∧Rα` in `d *σ`.
    pub theta_r_alpha: String,
    /// `(dσ∧σ) / (7 m VolG)`.
    pub w3_scalar: String,
    pub nearly_parallel_c: Option<String>,
    pub dsigma: String,
    pub dstar_sigma: String,
}

pub fn torsion_report(c: &Coeffs, model: &CurvatureModel, f: &InvariantForms) -> Result<TorsionReport, CalculusError> {
    let st = is_stable(c)?;
    if !st.stable {
        return Err(GwistorError::Unstable(format!("q = {}", st.q.render())).into());
    }
    let sigma: Form<Surd> = f.sigma(&c.surds()?);
    let star = ExactStar::new(c, Convention::Induced)?;
    let md = crate::gwistor::metric_data(c, Convention::Induced)?;
    let ds = d(&sigma, model, f)?;
    let ss = star.apply(&sigma);
    let dss = d(&ss, model, f)?;

    let (a, b) = match &dss.dependence {
        Some(dep) => (dep.theta_r_alpha1.clone(), dep.theta_r_alpha.clone()),
        None => (Surd::zero(), Surd::zero()),
    };
    let cocalibrated = if dss.form.is_zero() {
        CocalibrationVerdict::Holds
    } else if !model.is_generic() || dss.dependence.is_none() || !dss.expr.plain.is_zero() {
        CocalibrationVerdict::Fails
    } else if b.is_zero() {
        CocalibrationVerdict::RequiresEinstein
    } else {
        CocalibrationVerdict::RequiresConstantCurvature
    };

    let top = ds.form.wedge(&sigma).top();
    let w3 = top.try_div(&md.m.scale(&crate::scalars::int(7)))?;

    let nearly_parallel_c = ss.terms().next().and_then(|(m0, s0)| {
        let cval = ds.form.coeff(*m0).try_div(s0).ok()?;
        ds.form.same_as(&ss.scale(&cval)).then(|| cval.render())
    });

    Ok(TorsionReport {
        coeffs: c.render(),
        model: model.to_string(),
        calibrated: ds.form.is_zero(),
        cocalibrated,
        theta_r_alpha1: a.render(),
        theta_r_alpha: b.render(),
        w3_scalar: w3.render(),
        nearly_parallel_c,
        dsigma: ds.form.to_string(),
        dstar_sigma: dss.form.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gwistor::{star, Frame};

    #[test]
    fn closed_form_and_frame_routes_agree() {
        let f = InvariantForms::standard();
        for conv in [Convention::Induced, Convention::Block] {
            let sigma = crate::gwistor::build_sigma(&Coeffs::Symbolic).unwrap();
            let via_frame = star(&sigma, &Frame::symbolic(conv));
            let via_closed = star_sigma_closed(conv, &f);
            assert!(via_frame.same_as(&via_closed), "{conv:?}");
            let a = d(&via_frame, &CurvatureModel::Generic, &f).unwrap().form;
            let b = d(&via_closed, &CurvatureModel::Generic, &f).unwrap().form;
            assert!(a.same_as(&b), "{conv:?}");
        }
    }

    #[test]
    fn sigma0_is_cocalibrated_exactly_on_einstein_bases() {
        let f = InvariantForms::standard();
        let r = torsion_report(&Coeffs::sigma0(), &CurvatureModel::Generic, &f).unwrap();
        assert_eq!(r.cocalibrated, CocalibrationVerdict::RequiresEinstein);
        assert!(!r.calibrated);
        let r = torsion_report(&Coeffs::sigma0(), &CurvatureModel::constant(1), &f).unwrap();
        assert_eq!(r.cocalibrated, CocalibrationVerdict::Holds);
    }

    #[test]
    fn unstable_input_is_refused() {
        let f = InvariantForms::standard();
        let e = torsion_report(&Coeffs::from_ints([1, 0, 1, 0, 1]), &CurvatureModel::Generic, &f);
        assert!(matches!(e, Err(CalculusError::Gwistor(GwistorError::Unstable(_)))));
    }
}

#[cfg(test)]
mod poly_tests {
    use super::*;
    use crate::scalars::parse_scalar;

    fn p(text: &str) -> Poly {
        parse_scalar(text).unwrap().to_symbolic_poly().unwrap().expand_derived()
    }

    #[test]
    fn block_convention_reproduces_the_displayed_polynomials() {
        let f = InvariantForms::standard();
        let cc = cocalibration_conditions(Convention::Block, &f).unwrap();
        let p1 = p("-f0*x^3*z^2+f1*x^2*(2*h*z+3*z^3)-f2*x*(h^2+4*h*z^2+3*z^4)+f3*(h^2*z+2*h*z^3+z^5)");
        let p2 = p("f0*x^3*z^3-f1*x^2*(3*h*z^2+3*z^4)+f2*x*(3*h^2*z+6*h*z^3+3*z^5)-f3*(h^3+3*h^2*z^2+3*h*z^4+z^6)");
        assert_eq!(cc.p1, p1);
        assert_eq!(cc.p2, p2);
        let p1t = p("-f0*(f1^2-f0*f2)*(-f2^2+f1*f3)^2");
        assert_eq!(cc.p1, &p("-x^2") * &p1t);
    }

    #[test]
    fn induced_metric_polynomials_factor() {
        let f = InvariantForms::standard();
        let cc = cocalibration_conditions(Convention::Induced, &f).unwrap();
        let q = p("x*y - 1/4*z^2");
        let c1 = p("f0*f1*f3 - 2*f0*f2^2 + f1^2*f2");
        let c2 = p("f0^2*f3 - 3*f0*f1*f2 + 2*f1^3");
        assert_eq!(cc.p1, &(&p("-1/2*x^2") * &c1) * &q);
        assert_eq!(cc.p2, &(&p("1/2*x^3") * &c2) * &q);
    }
}

#[cfg(test)]
mod nearly_parallel_tests {
    use super::*;
    use crate::gwistor::Coeffs;
    use crate::scalars::{rat, QuadNum};

    #[test]
    fn sigma_plus_is_nearly_parallel_on_the_unit_sphere() {
        let h = |s: i64| QuadNum::sqrt2().scale(&rat(s, 2));
        let c = Coeffs::Exact([h(-1), h(-1), h(1), h(1), QuadNum::sqrt6().scale(&rat(1, 2))]);
        let f = InvariantForms::standard();
        let r = torsion_report(&c, &CurvatureModel::constant(1), &f).unwrap();
        assert_eq!(r.cocalibrated, CocalibrationVerdict::Holds);
        let six = crate::scalars::Surd::from_quad(&QuadNum::sqrt6()).render();
        assert_eq!(r.nearly_parallel_c.as_deref(), Some(six.as_str()));
        assert_eq!(r.w3_scalar, six);
    }
}
