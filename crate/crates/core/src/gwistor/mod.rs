//! The five invariant 3-forms, the variation `σ = f0 α + f1 α1 + f2 α2 + f3 α3
//! + f4 θ∧dθ`, its induced metric, orthonormal frames and Hodge star.

mod frame;
mod hodge;
mod metric;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::exterior::{AtomTable, ExteriorError, Form};
use crate::scalars::{int, QuadNum, Rat, Ring, ScalarError, ScaledScalar, Surd, Sym};

pub use frame::Frame;
pub use hodge::{hodge_closed_form, norm_sq, star, ClosedForm, ExactStar};
pub use metric::{is_stable, m_from_determinant, metric_data, pairing_matrix, MetricData, Stability};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GwistorError {
    #[error("coefficients do not define a G2-structure: {0}")]
    Unstable(String),
    #[error("mixed symbolic and numeric coefficients")]
    MixedCoeffs,
    #[error("expected five coefficients, found {0}")]
    CoeffCount(usize),
    #[error("operation needs {0} coefficients")]
    Mode(&'static str),
    #[error("unknown invariant form {0:?}")]
    UnknownAtom(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
}

/// How the metric data of `σ` is parametrised.
///
/// `Induced` is the metric the 3-form actually induces: the mixed entries
/// `<e_i, e_(i+3)>` carry `z/2` and the positivity discriminant is
/// `q = xy - z²/4`. `Block` keeps the block matrix with off-diagonal `z` and
/// discriminant `h = xy - z²`, as used by the classical closed formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Convention {
    Induced,
    Block,
}

impl Convention {
    pub fn name(self) -> &'static str {
        match self {
            Convention::Induced => "induced",
            Convention::Block => "block",
        }
    }
}

/// The coefficient vector `(f0, .., f4)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Coeffs {
    Symbolic,
    Exact([QuadNum; 5]),
}

impl Coeffs {
    pub fn sigma0() -> Self {
        Coeffs::from_ints([-1, 0, 1, 0, 1])
    }

    pub fn from_ints(v: [i64; 5]) -> Self {
        Coeffs::Exact(v.map(|n| QuadNum::rational(int(n))))
    }

    pub fn from_rats(v: &[Rat; 5]) -> Self {
        Coeffs::Exact(std::array::from_fn(|i| QuadNum::rational(v[i].clone())))
    }

    /// Parses `f0,f1,f2,f3,f4` (symbolic) or five exact literals such as
    /// `-1,1/2,sqrt(2)/2,0,sqrt(3/2)`.
    pub fn parse(text: &str) -> Result<Coeffs, GwistorError> {
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        if parts.len() != 5 {
            return Err(GwistorError::CoeffCount(parts.len()));
        }
        let symbolic = parts.iter().enumerate().filter(|(i, p)| **p == format!("f{i}")).count();
        match symbolic {
            5 => Ok(Coeffs::Symbolic),
            0 => {
                let mut vals = Vec::with_capacity(5);
                for p in parts {
                    vals.push(QuadNum::parse_literal(p)?);
                }
                Ok(Coeffs::Exact(vals.try_into().expect("five values")))
            }
            _ => Err(GwistorError::MixedCoeffs),
        }
    }

    pub fn values(&self) -> Result<&[QuadNum; 5], GwistorError> {
        match self {
            Coeffs::Exact(v) => Ok(v),
            Coeffs::Symbolic => Err(GwistorError::Mode("numeric")),
        }
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, Coeffs::Symbolic)
    }

    /// `s·σ` for a numeric scale.
    pub fn scaled(&self, s: &QuadNum) -> Coeffs {
        match self {
            Coeffs::Symbolic => Coeffs::Symbolic,
            Coeffs::Exact(v) => Coeffs::Exact(std::array::from_fn(|i| &v[i] * s)),
        }
    }

    /// Coefficients as formal scalars: symbols or exact constants.
    pub fn scaled_scalars(&self) -> Result<[ScaledScalar; 5], GwistorError> {
        match self {
            Coeffs::Symbolic => Ok(std::array::from_fn(|i| ScaledScalar::sym(Sym::f(i)))),
            Coeffs::Exact(v) => v
                .iter()
                .map(|q| {
                    q.as_rational()
                        .map(|r| ScaledScalar::from_rat(r.clone()))
                        .ok_or(GwistorError::Mode("rational"))
                })
                .collect::<Result<Vec<_>, _>>()
                .map(|v| v.try_into().expect("five values")),
        }
    }

    pub fn surds(&self) -> Result<[Surd; 5], GwistorError> {
        let v = self.values()?;
        Ok(std::array::from_fn(|i| Surd::from_quad(&v[i])))
    }

    /// Values of `f0..f4` and of the derived symbols `x, y, z, h, q`.
    pub fn assignment(&self) -> Result<BTreeMap<Sym, Surd>, GwistorError> {
        let v = self.values()?;
        let mut quad: BTreeMap<Sym, QuadNum> = (0..5).map(|i| (Sym::f(i), v[i].clone())).collect();
        for s in [Sym::X, Sym::Y, Sym::Z, Sym::H, Sym::Q] {
            let val = crate::scalars::Poly::derived(s).expect("derived").eval_quad(&quad)?;
            quad.insert(s, val);
        }
        Ok(quad.iter().map(|(s, q)| (*s, Surd::from_quad(q))).collect())
    }

    pub fn render(&self) -> String {
        match self {
            Coeffs::Symbolic => "f0,f1,f2,f3,f4".into(),
            Coeffs::Exact(v) => v.iter().map(|q| q.render()).collect::<Vec<_>>().join(","),
        }
    }
}

impl fmt::Display for Coeffs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// One sign flip in the table of basis words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mutation {
    pub atom: &'static str,
    pub word: usize,
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.atom, self.word)
    }
}

/// Fixed catalogue of single-sign mutations of the invariant forms.
pub fn mutation_catalogue() -> [Mutation; 10] {
    let m = |atom, word| Mutation { atom, word };
    [
        m("theta", 0),
        m("dtheta", 0),
        m("dtheta", 2),
        m("alpha", 0),
        m("alpha1", 0),
        m("alpha1", 1),
        m("alpha2", 0),
        m("alpha2", 2),
        m("alpha3", 0),
        m("vol", 0),
    ]
}

/// The invariant forms in the e-basis. Every computation that needs
/// `θ, dθ, α, .., α3` takes them from a context so that perturbed tables
/// propagate through the whole pipeline.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct InvariantForms {
    table: AtomTable,
}

impl InvariantForms {
    pub fn standard() -> Self {
        InvariantForms { table: AtomTable::standard() }
    }

    pub fn with_mutation(m: Mutation) -> Option<Self> {
        Some(InvariantForms { table: AtomTable::standard().with_flipped(m.atom, m.word)? })
    }

    pub fn table(&self) -> &AtomTable {
        &self.table
    }

    pub fn get<C: Ring>(&self, name: &str) -> Result<Form<C>, GwistorError> {
        self.table.form(name).ok_or_else(|| GwistorError::UnknownAtom(name.into()))
    }

    fn must<C: Ring>(&self, name: &str) -> Form<C> {
        self.get(name).expect("primitive atom")
    }

    pub fn theta<C: Ring>(&self) -> Form<C> {
        self.must("theta")
    }

    pub fn dtheta<C: Ring>(&self) -> Form<C> {
        self.must("dtheta")
    }

    /// `α_i` with `α_0 = α`.
    pub fn alpha<C: Ring>(&self, i: usize) -> Form<C> {
        match i {
            0 => self.must("alpha"),
            1 => self.must("alpha1"),
            2 => self.must("alpha2"),
            3 => self.must("alpha3"),
            _ => panic!("alpha index {i} out of range"),
        }
    }

    pub fn theta_dtheta<C: Ring>(&self) -> Form<C> {
        self.theta::<C>().wedge(&self.dtheta())
    }

    pub fn vol<C: Ring>(&self) -> Form<C> {
        self.must("vol")
    }

    pub fn vol_g<C: Ring>(&self) -> Form<C> {
        self.must("VolG")
    }

    pub fn sigma0<C: Ring>(&self) -> Form<C> {
        self.must("sigma0")
    }

    /// The five basis 3-forms in the order of the coefficients.
    pub fn basis3<C: Ring>(&self) -> [Form<C>; 5] {
        [self.alpha(0), self.alpha(1), self.alpha(2), self.alpha(3), self.theta_dtheta()]
    }

    pub fn sigma<C: Ring>(&self, f: &[C; 5]) -> Form<C> {
        let b = self.basis3::<C>();
        (0..5).fold(Form::zero(3), |acc, i| &acc + &b[i].scale(&f[i]))
    }
}

/// A named invariant form from the standard table.
pub fn invariant_form(name: &str) -> Result<Form<ScaledScalar>, GwistorError> {
    InvariantForms::standard().get(name)
}

/// `σ` for the given coefficients, with formal scalars.
pub fn build_sigma(c: &Coeffs) -> Result<Form<ScaledScalar>, GwistorError> {
    Ok(InvariantForms::standard().sigma(&c.scaled_scalars()?))
}

/// `σ` with exact numeric coefficients.
pub fn build_sigma_exact(c: &Coeffs) -> Result<Form<Surd>, GwistorError> {
    Ok(InvariantForms::standard().sigma(&c.surds()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::parse_form;

    #[test]
    fn sigma0_from_coefficients() {
        let s = build_sigma(&Coeffs::sigma0()).unwrap();
        assert_eq!(s, invariant_form("sigma0").unwrap());
        assert!(build_sigma(&Coeffs::from_ints([0; 5])).unwrap().is_zero());
        assert_eq!(build_sigma(&Coeffs::Symbolic).unwrap().len(), 11);
    }

    #[test]
    fn parses_coefficient_lists() {
        assert_eq!(Coeffs::parse("f0, f1,f2,f3,f4").unwrap(), Coeffs::Symbolic);
        assert_eq!(Coeffs::parse("-1,0,1,0,1").unwrap(), Coeffs::sigma0());
        assert_eq!(Coeffs::parse("f0,1,1,0,1"), Err(GwistorError::MixedCoeffs));
        assert_eq!(Coeffs::parse("1,2"), Err(GwistorError::CoeffCount(2)));
        let q = Coeffs::parse("sqrt(2)/2,sqrt(2)/2,-sqrt(2)/2,-sqrt(2)/2,sqrt(3/2)").unwrap();
        assert_eq!(q.values().unwrap()[4], QuadNum::parse_literal("sqrt(6)/2").unwrap());
    }

    #[test]
    fn vol_identities() {
        let f = InvariantForms::standard();
        let t: Form<Rat> = f.theta();
        assert_eq!(t.wedge(&f.alpha(3)), f.vol());
        assert_eq!(f.vol::<Rat>().wedge(&f.alpha(0)), f.vol_g());
        assert_eq!(f.theta_dtheta::<ScaledScalar>(), parse_form("e041 + e052 + e063").unwrap());
    }

    #[test]
    fn every_mutation_changes_the_table() {
        for m in mutation_catalogue() {
            let mutated = InvariantForms::with_mutation(m).unwrap();
            assert_ne!(mutated, InvariantForms::standard(), "{m}");
        }
    }
}
