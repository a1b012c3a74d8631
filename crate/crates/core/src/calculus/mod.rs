//! Exterior derivative on the invariant algebra, curvature models of the base
//! and the cocalibration condition.

mod cocalib;
mod derivative;

use std::fmt;

use thiserror::Error;

use crate::exterior::{ExteriorError, Form};
use crate::gwistor::GwistorError;
use crate::scalars::{int, Poly, Ring, ScalarError, Sym};

pub use cocalib::{
    cocalibration_conditions, star_sigma_closed, torsion_report, CocalibrationConditions, CocalibrationVerdict, TorsionReport,
};
pub use derivative::{d, decompose, span_generators, CurvatureDependence, DExpr, DerivativeResult};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CalculusError {
    #[error("curvature index out of range: ({0}, {1}, {2}, {3})")]
    IndexOutOfRange(u8, u8, u8, u8),
    #[error("form is not in the invariant span; residual {residual}")]
    NotInInvariantSpan { residual: String },
    #[error("invalid curvature model {0:?}")]
    BadModel(String),
    #[error(transparent)]
    Gwistor(#[from] GwistorError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
}

/// Riemann component `R_ijpq` of the base in canonical form.
///
/// Antisymmetry sorts each pair, pair symmetry puts the smaller pair first,
/// and the first Bianchi identity removes `R0312 = R0213 - R0123`.
pub fn canonical_r(i: u8, j: u8, p: u8, q: u8) -> Result<Poly, CalculusError> {
    if [i, j, p, q].iter().any(|&v| v > 3) {
        return Err(CalculusError::IndexOutOfRange(i, j, p, q));
    }
    if i == j || p == q {
        return Ok(Poly::zero());
    }
    let mut sign = 1;
    let (mut a, mut b) = ((i, j), (p, q));
    if a.0 > a.1 {
        a = (a.1, a.0);
        sign = -sign;
    }
    if b.0 > b.1 {
        b = (b.1, b.0);
        sign = -sign;
    }
    if a > b {
        std::mem::swap(&mut a, &mut b);
    }
    let r = |s: [u8; 4]| Poly::var(Sym::riemann(s[0], s[1], s[2], s[3]).expect("canonical"));
    let body = if (a, b) == ((0, 3), (1, 2)) { &r([0, 2, 1, 3]) - &r([0, 1, 2, 3]) } else { r([a.0, a.1, b.0, b.1]) };
    Ok(body.scale(&int(sign)))
}

/// Curvature of the base 4-manifold.
#[derive(Clone, Debug, PartialEq)]
pub enum CurvatureModel {
    /// Independent symbolic components modulo the algebraic symmetries.
    Generic,
    /// `R_ijpq = k (δ_iq δ_jp - δ_ip δ_jq)` with `k` a polynomial (a number or the symbol `k`).
    ConstantCurvature(Poly),
}

impl CurvatureModel {
    pub fn flat() -> Self {
        CurvatureModel::ConstantCurvature(Poly::zero())
    }

    pub fn symbolic_k() -> Self {
        CurvatureModel::ConstantCurvature(Poly::var(Sym::K))
    }

    pub fn constant(k: i64) -> Self {
        CurvatureModel::ConstantCurvature(Poly::int(k))
    }

    /// Parses `generic`, `flat`, `constant:K` with rational `K` or the symbol `k`.
    pub fn parse(text: &str) -> Result<Self, CalculusError> {
        match text {
            "generic" => return Ok(CurvatureModel::Generic),
            "flat" => return Ok(CurvatureModel::flat()),
            _ => {}
        }
        let k = text.strip_prefix("constant:").ok_or_else(|| CalculusError::BadModel(text.into()))?;
        if k == "k" {
            return Ok(CurvatureModel::symbolic_k());
        }
        let s = crate::scalars::parse_scalar(k).map_err(|_| CalculusError::BadModel(text.into()))?;
        match s.to_symbolic_poly().ok().and_then(|p| p.constant_value()) {
            Some(r) => Ok(CurvatureModel::ConstantCurvature(Poly::constant(r))),
            None => Err(CalculusError::BadModel(text.into())),
        }
    }

    pub fn is_generic(&self) -> bool {
        matches!(self, CurvatureModel::Generic)
    }

    /// `R_ijpq` under this model.
    pub fn r(&self, i: u8, j: u8, p: u8, q: u8) -> Poly {
        match self {
            CurvatureModel::Generic => canonical_r(i, j, p, q).expect("indices in range"),
            CurvatureModel::ConstantCurvature(k) => {
                let dl = |a: u8, b: u8| i64::from(a == b);
                k.scale(&int(dl(i, q) * dl(j, p) - dl(i, p) * dl(j, q)))
            }
        }
    }
}

impl fmt::Display for CurvatureModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvatureModel::Generic => f.write_str("generic"),
            CurvatureModel::ConstantCurvature(k) if k.is_zero() => f.write_str("flat"),
            CurvatureModel::ConstantCurvature(k) => write!(f, "constant:{}", k.render()),
        }
    }
}

/// The curvature 4-forms and scalars entering the structure equations.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureAtoms<C: Ring> {
    pub r_alpha: Form<C>,
    pub r_alpha1: Form<C>,
    /// `r(u, u)` at the unit vector `u = e_0`.
    pub rbar: C,
    /// `Σ_i r(e_i, e_0) e^(i+3)`.
    pub rho: Form<C>,
}

pub fn atoms<C: Ring>(model: &CurvatureModel) -> CurvatureAtoms<C> {
    let r = |i, j, p, q| C::from_poly(&model.r(i, j, p, q));
    let mut r_alpha = Form::zero(4);
    let mut r_alpha1 = Form::zero(4);
    let w = |idx: [u8; 4], c: &C| Form::monomial(&idx, c.clone());
    for i in 0..4u8 {
        for j in i + 1..4u8 {
            let (a, b, c) = (r(i, j, 0, 1), r(i, j, 0, 2), r(i, j, 0, 3));
            r_alpha = &r_alpha + &w([i, j, 5, 6], &a);
            r_alpha = &r_alpha + &w([i, j, 6, 4], &b);
            r_alpha = &r_alpha + &w([i, j, 4, 5], &c);
            for (idx, c) in [
                ([i, j, 2, 6], &a),
                ([i, j, 5, 3], &a),
                ([i, j, 6, 1], &b),
                ([i, j, 3, 4], &b),
                ([i, j, 1, 5], &c),
                ([i, j, 4, 2], &c),
            ] {
                r_alpha1 = &r_alpha1 + &w(idx, c);
            }
        }
    }
    let rbar = (1..4u8).fold(C::nil(), |acc, j| acc.plus(&r(0, j, j, 0)));
    let mut rho = Form::zero(1);
    for i in 1..4u8 {
        let ric = (0..4u8).fold(C::nil(), |acc, j| acc.plus(&r(i, j, j, 0)));
        rho = &rho + &Form::monomial(&[i + 3], ric);
    }
    CurvatureAtoms { r_alpha, r_alpha1, rbar: rbar.normalized(), rho: rho.normalized() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gwistor::InvariantForms;
    use crate::scalars::ScaledScalar;

    fn sym(i: u8, j: u8, p: u8, q: u8) -> Poly {
        Poly::var(Sym::riemann(i, j, p, q).unwrap())
    }

    #[test]
    fn canonical_symbols() {
        assert_eq!(canonical_r(1, 0, 0, 1).unwrap(), -&sym(0, 1, 0, 1));
        assert_eq!(canonical_r(0, 0, 1, 2).unwrap(), Poly::zero());
        assert_eq!(canonical_r(2, 3, 0, 1).unwrap(), sym(0, 1, 2, 3));
        assert!(canonical_r(0, 4, 1, 2).is_err());
        let bianchi = &(&canonical_r(2, 3, 0, 1).unwrap() + &canonical_r(3, 1, 0, 2).unwrap())
            + &canonical_r(1, 2, 0, 3).unwrap();
        assert!(bianchi.is_zero());
        // R1203 = -R2301 - R3102
        let want = &(-&canonical_r(2, 3, 0, 1).unwrap()) - &canonical_r(3, 1, 0, 2).unwrap();
        assert_eq!(canonical_r(1, 2, 0, 3).unwrap(), want);
    }

    #[test]
    fn all_symmetries_hold_on_every_quadruple() {
        for i in 0..4 {
            for j in 0..4 {
                for p in 0..4 {
                    for q in 0..4 {
                        let r = canonical_r(i, j, p, q).unwrap();
                        assert_eq!(r, -&canonical_r(j, i, p, q).unwrap());
                        assert_eq!(r, canonical_r(p, q, i, j).unwrap());
                        let cyc = &(&r + &canonical_r(j, p, i, q).unwrap()) + &canonical_r(p, i, j, q).unwrap();
                        assert!(cyc.is_zero(), "{i}{j}{p}{q}");
                    }
                }
            }
        }
    }

    #[test]
    fn constant_curvature_atoms() {
        let f = InvariantForms::standard();
        let a = atoms::<ScaledScalar>(&CurvatureModel::symbolic_k());
        let k = ScaledScalar::sym(Sym::K);
        let th: Form<ScaledScalar> = f.theta();
        assert_eq!(a.r_alpha, th.wedge(&f.alpha(1)).scale(&(-&k)));
        assert_eq!(a.r_alpha1, th.wedge(&f.alpha(2)).scale(&(-&k)).scale_rat(&int(2)));
        assert_eq!(a.rbar, k.scale(&int(3)));
        assert!(a.rho.is_zero());
        let flat = atoms::<ScaledScalar>(&CurvatureModel::flat());
        assert!(flat.r_alpha.is_zero() && flat.r_alpha1.is_zero() && flat.rbar.is_zero() && flat.rho.is_zero());
    }

    #[test]
    fn ricci_form_identity() {
        let f = InvariantForms::standard();
        let a = atoms::<ScaledScalar>(&CurvatureModel::Generic);
        let lhs = f.theta::<ScaledScalar>().wedge(&a.r_alpha1);
        let rhs = -&a.rho.wedge(&f.vol());
        assert!(!lhs.is_zero());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn parses_models() {
        assert_eq!(CurvatureModel::parse("generic").unwrap(), CurvatureModel::Generic);
        assert_eq!(CurvatureModel::parse("flat").unwrap(), CurvatureModel::flat());
        assert_eq!(CurvatureModel::parse("constant:-2").unwrap(), CurvatureModel::constant(-2));
        assert_eq!(CurvatureModel::parse("constant:k").unwrap(), CurvatureModel::symbolic_k());
        assert!(CurvatureModel::parse("constant:").is_err());
        assert!(CurvatureModel::parse("hyperbolic").is_err());
        assert_eq!(CurvatureModel::parse("constant:1/2").unwrap().to_string(), "constant:1/2");
    }
}
