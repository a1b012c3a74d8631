use super::{atoms, CalculusError, CurvatureModel};
use crate::exterior::Form;
use crate::gwistor::InvariantForms;
use crate::scalars::{Rat, Ring};

/// A form in which the curvature terms are kept apart:
/// `plain + ra ∧ Rα + ra1 ∧ Rα1 + rbar · r̲`.
///
/// Because `Rα` and `Rα1` have even degree, wedging on either side only acts
/// on the coefficient forms.
#[derive(Clone, Debug, PartialEq)]
pub struct DExpr<C: Ring> {
    pub plain: Form<C>,
    pub ra: Form<C>,
    pub ra1: Form<C>,
    pub rbar: Form<C>,
}

impl<C: Ring> DExpr<C> {
    pub fn zero(degree: usize) -> Self {
        let z = |d: usize| Form::zero(d);
        DExpr { plain: z(degree), ra: z(degree.saturating_sub(4)), ra1: z(degree.saturating_sub(4)), rbar: z(degree) }
    }

    fn plain(f: Form<C>) -> Self {
        let mut e = DExpr::zero(f.degree());
        e.plain = f;
        e
    }

    fn map(&self, f: impl Fn(&Form<C>) -> Form<C>) -> Self {
        DExpr { plain: f(&self.plain), ra: f(&self.ra), ra1: f(&self.ra1), rbar: f(&self.rbar) }
    }

    fn add(&self, o: &DExpr<C>) -> Self {
        DExpr {
            plain: &self.plain + &o.plain,
            ra: &self.ra + &o.ra,
            ra1: &self.ra1 + &o.ra1,
            rbar: &self.rbar + &o.rbar,
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|f| f.scale(c))
    }

    fn wedge_right(&self, b: &Form<C>) -> Self {
        self.map(|f| f.wedge(b))
    }

    fn wedge_left(&self, a: &Form<C>) -> Self {
        self.map(|f| a.wedge(f))
    }

    /// Substitutes the curvature model and returns an ordinary form.
    pub fn inline(&self, model: &CurvatureModel) -> Form<C> {
        let at = atoms::<C>(model);
        let mut out = self.plain.clone();
        for part in [self.ra.wedge(&at.r_alpha), self.ra1.wedge(&at.r_alpha1), self.rbar.scale(&at.rbar)] {
            out = out.try_add(&part).expect("homogeneous");
        }
        out.normalized()
    }

    pub fn normalized(&self) -> Self {
        self.map(|f| f.normalized())
    }
}

/// Coefficients of `d a = plain + a·θ∧Rα + b·θ∧Rα1 + c·r̲·vol`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureDependence<C: Ring> {
    pub theta_r_alpha: C,
    pub theta_r_alpha1: C,
    pub rbar_vol: C,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DerivativeResult<C: Ring> {
    /// `d a` in the e-basis with the curvature model substituted.
    pub form: Form<C>,
    /// `d a` with the curvature terms kept formal.
    pub expr: DExpr<C>,
    /// Present when the curvature terms are multiples of `θ∧Rα`, `θ∧Rα1`, `r̲ vol`.
    pub dependence: Option<CurvatureDependence<C>>,
}

/// Wedge words over the primitives spanning the invariant forms of each degree.
pub fn span_generators() -> Vec<&'static [&'static str]> {
    vec![
        &["theta"],
        &["dtheta"],
        &["alpha"],
        &["alpha1"],
        &["alpha2"],
        &["alpha3"],
        &["theta", "dtheta"],
        &["theta", "alpha"],
        &["theta", "alpha1"],
        &["theta", "alpha2"],
        &["theta", "alpha3"],
        &["dtheta", "dtheta"],
        &["theta", "dtheta", "dtheta"],
        &["dtheta", "dtheta", "dtheta"],
        &["theta", "dtheta", "dtheta", "dtheta"],
    ]
}

fn word_form<C: Ring>(word: &[&str], f: &InvariantForms) -> Form<C> {
    word.iter().fold(Form::scalar(C::unit()), |acc, n| acc.wedge(&f.get::<C>(n).expect("primitive")))
}

/// Structure equations on the primitives.
fn d_primitive<C: Ring>(name: &str, f: &InvariantForms) -> DExpr<C> {
    let th = f.theta::<C>();
    let one = Form::scalar(C::unit());
    match name {
        "theta" => DExpr::plain(f.dtheta()),
        "dtheta" => DExpr::zero(3),
        "alpha" => DExpr { ra: one, ..DExpr::zero(4) },
        "alpha1" => DExpr {
            plain: th.wedge(&f.alpha(0)).scale_rat(&crate::scalars::int(3)),
            ra1: one,
            ..DExpr::zero(4)
        },
        "alpha2" => DExpr {
            plain: th.wedge(&f.alpha(1)).scale_rat(&crate::scalars::int(2)),
            rbar: -&f.vol::<C>(),
            ..DExpr::zero(4)
        },
        "alpha3" => DExpr::plain(th.wedge(&f.alpha(2))),
        other => panic!("no structure equation for {other}"),
    }
}

/// `d` of a wedge word by the Leibniz rule.
fn d_word<C: Ring>(word: &[&str], f: &InvariantForms) -> DExpr<C> {
    match word.split_first() {
        None => DExpr::zero(1),
        Some((first, rest)) => {
            let a = f.get::<C>(first).expect("primitive");
            let b = word_form::<C>(rest, f);
            let da = d_primitive::<C>(first, f).wedge_right(&b);
            let db = d_word::<C>(rest, f).wedge_left(&a);
            let db = if a.degree() % 2 == 1 { db.map(|x| -x) } else { db };
            da.add(&db)
        }
    }
}

/// Writes `a` on the span generators of its degree. Generators of one degree
/// have disjoint supports, so each coefficient is read at one index.
pub fn decompose<C: Ring>(a: &Form<C>, f: &InvariantForms) -> Result<Vec<(&'static [&'static str], C)>, CalculusError> {
    let mut rest = a.clone();
    let mut out = Vec::new();
    for w in span_generators() {
        let g: Form<Rat> = word_form(w, f);
        if g.degree() != a.degree() {
            continue;
        }
        let Some((m0, r0)) = g.terms().next() else { continue };
        let c = rest.coeff(*m0).scaled(&(Rat::from_integer(1.into()) / r0));
        if c.is_nil() {
            continue;
        }
        rest = &rest - &g.map(|r| C::from_rat(r.clone())).scale(&c);
        out.push((w, c));
    }
    let rest = rest.normalized();
    if !rest.is_zero() {
        return Err(CalculusError::NotInInvariantSpan { residual: rest.to_string() });
    }
    Ok(out)
}

fn theta_multiple<C: Ring>(l: &Form<C>, th: &Form<C>) -> Option<C> {
    if l.is_zero() {
        return Some(C::nil());
    }
    let (m, t) = th.terms().next()?;
    let c = l.coeff(*m).try_div(t).ok()?;
    th.scale(&c).same_as(l).then_some(c)
}

/// Exterior derivative of a constant-coefficient invariant form.
pub fn d<C: Ring>(a: &Form<C>, model: &CurvatureModel, f: &InvariantForms) -> Result<DerivativeResult<C>, CalculusError> {
    let mut expr = DExpr::zero(a.degree() + 1);
    if a.degree() > 0 {
        for (w, c) in decompose(a, f)? {
            expr = expr.add(&d_word::<C>(w, f).scale(&c));
        }
    }
    let expr = expr.normalized();
    let th = f.theta::<C>();
    let vol = f.vol::<C>();
    let dependence = (|| {
        let rbar_vol = if expr.rbar.is_zero() {
            C::nil()
        } else {
            let (m, v) = vol.terms().next()?;
            let c = expr.rbar.coeff(*m).try_div(v).ok()?;
            vol.scale(&c).same_as(&expr.rbar).then_some(c)?
        };
        Some(CurvatureDependence {
            theta_r_alpha: theta_multiple(&expr.ra, &th)?,
            theta_r_alpha1: theta_multiple(&expr.ra1, &th)?,
            rbar_vol,
        })
    })();
    Ok(DerivativeResult { form: expr.inline(model), expr, dependence })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::atoms;
    use crate::exterior::parse_form;
    use crate::scalars::{int, Poly, ScaledScalar, Sym};

    type S = ScaledScalar;

    fn f() -> InvariantForms {
        InvariantForms::standard()
    }

    #[test]
    fn vol_is_closed() {
        let r = d(&f().vol::<S>(), &CurvatureModel::Generic, &f()).unwrap();
        assert!(r.form.is_zero());
    }

    #[test]
    fn d_squared_vanishes() {
        for name in ["alpha3", "vol", "theta^dtheta", "dtheta^dtheta", "dtheta", "theta^alpha2"] {
            let a = parse_form(name).unwrap();
            for model in [CurvatureModel::Generic, CurvatureModel::symbolic_k()] {
                let once = d(&a, &model, &f()).unwrap();
                let twice = d(&once.form, &model, &f());
                match twice {
                    Ok(t) => assert!(t.form.is_zero(), "{name} {model}"),
                    Err(e) => panic!("{name} {model}: {e}"),
                }
            }
        }
    }

    #[test]
    fn out_of_span_is_rejected() {
        let a = parse_form("e12").unwrap();
        assert!(matches!(d(&a, &CurvatureModel::Generic, &f()), Err(CalculusError::NotInInvariantSpan { .. })));
    }

    #[test]
    fn structure_equations() {
        let fs = f();
        let g = CurvatureModel::Generic;
        let at = atoms::<S>(&g);
        let a1 = d(&fs.alpha::<S>(1), &g, &fs).unwrap();
        assert_eq!(a1.form, &fs.theta::<S>().wedge(&fs.alpha(0)).scale_rat(&int(3)) + &at.r_alpha1);
        let a2 = d(&fs.alpha::<S>(2), &g, &fs).unwrap();
        let want = &fs.theta::<S>().wedge(&fs.alpha(1)).scale_rat(&int(2)) - &fs.vol::<S>().scale(&at.rbar);
        assert_eq!(a2.form, want);
    }

    #[test]
    fn dependence_reassembles() {
        let fs = f();
        let a = parse_form("f0*theta^alpha + 2*theta^alpha1 - f3*theta^alpha2").unwrap();
        let r = d(&a, &CurvatureModel::Generic, &fs).unwrap();
        let dep = r.dependence.clone().unwrap();
        assert_eq!(dep.theta_r_alpha, -&S::sym(Sym::F0));
        assert_eq!(dep.theta_r_alpha1, S::from_poly(Poly::int(-2)));
        let at = atoms::<S>(&CurvatureModel::Generic);
        let th = fs.theta::<S>();
        let rebuilt = &(&r.expr.plain + &th.wedge(&at.r_alpha).scale(&dep.theta_r_alpha))
            + &th.wedge(&at.r_alpha1).scale(&dep.theta_r_alpha1);
        let rebuilt = &rebuilt + &fs.vol::<S>().scale(&(&dep.rbar_vol * &at.rbar));
        assert!(rebuilt.same_as(&r.form));
    }
}
