use std::fmt;
use std::str::FromStr;

use super::metric::Parts;
use super::{Coeffs, Convention, Frame, GwistorError, InvariantForms};
use crate::exterior::Form;
use crate::scalars::{exp, int, Gen, Poly, RadPrefactor, Ring, ScaledScalar, Surd, Sym};

/// Hodge star through an orthonormal coframe: rewrite in `ẽ`, apply the flat
/// star `ẽ^I ↦ ±ẽ^(I^c)` with `ẽ^I ∧ *ẽ^I = ẽ^0123456`, rewrite back.
pub fn star<C: Ring>(a: &Form<C>, frame: &Frame<C>) -> Form<C> {
    let tilde = frame.to_tilde(a);
    let flat = Form::from_terms(
        7 - a.degree().min(7),
        tilde.terms().map(|(m, c)| {
            let comp = m.complement();
            let s = m.wedge_sign(comp).expect("disjoint");
            (comp, if s < 0 { c.negated() } else { c.clone() })
        }),
    );
    frame.from_tilde(&flat).normalized()
}

/// `<a, a>` for the metric of the frame.
pub fn norm_sq<C: Ring>(a: &Form<C>, frame: &Frame<C>) -> C {
    frame.to_tilde(a).terms().fold(C::nil(), |acc, (_, c)| acc.plus(&c.times(c))).normalized()
}

/// Hodge star at fixed exact coefficients.
#[derive(Clone, Debug)]
pub struct ExactStar {
    pub frame: Frame<Surd>,
}

impl ExactStar {
    pub fn new(c: &Coeffs, conv: Convention) -> Result<Self, GwistorError> {
        Ok(ExactStar { frame: Frame::exact(c, conv)? })
    }

    pub fn apply(&self, a: &Form<Surd>) -> Form<Surd> {
        star(a, &self.frame)
    }

    pub fn norm_sq(&self, a: &Form<Surd>) -> Surd {
        norm_sq(a, &self.frame)
    }
}

/// The five 3-forms with closed-form Hodge duals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ClosedForm {
    ThetaDtheta,
    Alpha,
    Alpha1,
    Alpha2,
    Alpha3,
}

impl ClosedForm {
    pub const ALL: [ClosedForm; 5] =
        [ClosedForm::ThetaDtheta, ClosedForm::Alpha, ClosedForm::Alpha1, ClosedForm::Alpha2, ClosedForm::Alpha3];

    pub fn name(self) -> &'static str {
        match self {
            ClosedForm::ThetaDtheta => "theta_dtheta",
            ClosedForm::Alpha => "alpha",
            ClosedForm::Alpha1 => "alpha1",
            ClosedForm::Alpha2 => "alpha2",
            ClosedForm::Alpha3 => "alpha3",
        }
    }

    pub fn form<C: Ring>(self, f: &InvariantForms) -> Form<C> {
        match self {
            ClosedForm::ThetaDtheta => f.theta_dtheta(),
            ClosedForm::Alpha => f.alpha(0),
            ClosedForm::Alpha1 => f.alpha(1),
            ClosedForm::Alpha2 => f.alpha(2),
            ClosedForm::Alpha3 => f.alpha(3),
        }
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClosedForm {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ClosedForm::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| format!("unknown form {s:?}"))
    }
}

/// Closed-form Hodge duals of the five invariant 3-forms for symbolic
/// coefficients, written in `x`, the mixed entry `w` and the discriminant `D`
/// of the convention (`w = z/2, D = q` or `w = z, D = h`).
pub fn hodge_closed_form(which: ClosedForm, conv: Convention, f: &InvariantForms) -> Form<ScaledScalar> {
    let p = Parts::of(conv);
    let x = Poly::var(Sym::X);
    let w = p.w.clone();
    let d = Poly::var(p.d_sym);
    let xp = |n: u32| x.pow(n);
    let wp = |n: u32| w.pow(n);
    let dp = |n: u32| d.pow(n);
    let c = |n: i64| Poly::int(n);
    let sum = |ps: &[Poly]| ps.iter().fold(Poly::zero(), |a, b| &a + b);
    let prod = |ps: &[Poly]| ps.iter().fold(Poly::one(), |a, b| &a * b);

    let t_half = p.t_pow(conv, exp(1, 2));
    if which == ClosedForm::ThetaDtheta {
        let pref = t_half
            .mul(&RadPrefactor::single(p.d_gen, exp(1, 2)))
            .mul(&RadPrefactor::single(Gen::F4, exp(-1, 1)));
        let coef = ScaledScalar::term(pref, Poly::constant(crate::scalars::rat(1, 2)));
        return f.dtheta::<ScaledScalar>().power(2).scale(&coef);
    }
    // Coefficients of (α3, α2, α1, α) inside θ∧(..), the sign and the power of 1/x.
    let (sign, xinv, body): (i64, i64, [Poly; 4]) = match which {
        ClosedForm::Alpha => (1, 0, [xp(3), prod(&[xp(2), w.clone()]), prod(&[x.clone(), wp(2)]), wp(3)]),
        ClosedForm::Alpha1 => (
            -1,
            1,
            [
                prod(&[c(3), xp(3), w.clone()]),
                prod(&[xp(2), sum(&[d.clone(), prod(&[c(3), wp(2)])])]),
                prod(&[x.clone(), sum(&[prod(&[c(2), d.clone(), w.clone()]), prod(&[c(3), wp(3)])])]),
                sum(&[prod(&[c(3), d.clone(), wp(2)]), prod(&[c(3), wp(4)])]),
            ],
        ),
        ClosedForm::Alpha2 => (
            1,
            2,
            [
                prod(&[c(3), xp(3), wp(2)]),
                prod(&[xp(2), sum(&[prod(&[c(2), d.clone(), w.clone()]), prod(&[c(3), wp(3)])])]),
                prod(&[x.clone(), sum(&[dp(2), prod(&[c(4), d.clone(), wp(2)]), prod(&[c(3), wp(4)])])]),
                sum(&[prod(&[c(3), dp(2), w.clone()]), prod(&[c(6), d.clone(), wp(3)]), prod(&[c(3), wp(5)])]),
            ],
        ),
        ClosedForm::Alpha3 => (
            -1,
            3,
            [
                prod(&[xp(3), wp(3)]),
                prod(&[xp(2), sum(&[prod(&[d.clone(), wp(2)]), wp(4)])]),
                prod(&[x.clone(), sum(&[prod(&[dp(2), w.clone()]), prod(&[c(2), d.clone(), wp(3)]), wp(5)])]),
                sum(&[dp(3), prod(&[c(3), dp(2), wp(2)]), prod(&[c(3), d.clone(), wp(4)]), wp(6)]),
            ],
        ),
        ClosedForm::ThetaDtheta => unreachable!(),
    };
    let pref = t_half
        .mul(&RadPrefactor::single(p.d_gen, exp(-3, 2)))
        .mul(&RadPrefactor::single(Gen::X, exp(-xinv, 1)));
    let coef = ScaledScalar::term(pref, Poly::var(Sym::F4).scale(&int(sign)));
    let inner = [3, 2, 1, 0]
        .iter()
        .zip(body.iter())
        .fold(Form::zero(3), |acc, (i, b)| &acc + &f.alpha::<ScaledScalar>(*i).scale(&ScaledScalar::from_poly(b.clone())));
    f.theta::<ScaledScalar>().wedge(&inner).scale(&coef)
}
