//! Exact scalars: rationals, polynomials over a closed symbol vocabulary,
//! radical-scaled polynomials, the field Q(sqrt2, sqrt3) and general surds.

pub(crate) mod parse;
mod poly;
mod quadnum;
mod scaled;
mod surd;
mod sym;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use parse::{parse_scalar, Lexer, Token};
pub use poly::{Monomial, Poly};
pub use quadnum::QuadNum;
pub use scaled::{Gen, RadPrefactor, ScaledScalar};
pub use surd::{Radical, Surd};
pub use sym::{riemann_table, Sym, NSYM};

/// Exact rational number in lowest terms.
pub type Rat = BigRational;

/// Small rational exponent used by radical prefactors and surds.
pub type Exp = num_rational::Ratio<i64>;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn exp(n: i64, d: i64) -> Exp {
    Exp::new(n, d)
}

/// Renders a rational as `p` or `p/q`.
pub fn render_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn render_exp(e: &Exp) -> String {
    if e.is_integer() {
        e.numer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("not divisible")]
    NotDivisible,
    #[error("no value assigned to symbol {0}")]
    MissingSymbol(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
}

/// Coefficient ring used by forms. Operations are structural; `normalized`
/// returns the canonical representative used for equality tests.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn nil() -> Self;
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn from_rat(r: Rat) -> Self;
    fn from_poly(p: &Poly) -> Self;
    fn try_div(&self, d: &Self) -> Result<Self, ScalarError>;
    fn render(&self) -> String;

    fn normalized(&self) -> Self {
        self.clone()
    }
    fn is_nil_normalized(&self) -> bool {
        self.normalized().is_nil()
    }
    fn scaled(&self, r: &Rat) -> Self {
        self.times(&Self::from_rat(r.clone()))
    }
    /// True when the value is a single term whose sign can be pulled out for display.
    fn is_negative_term(&self) -> bool {
        false
    }
}

impl Ring for Rat {
    fn nil() -> Self {
        <Rat as Zero>::zero()
    }
    fn unit() -> Self {
        <Rat as One>::one()
    }
    fn is_nil(&self) -> bool {
        <Rat as Zero>::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn from_rat(r: Rat) -> Self {
        r
    }
    fn from_poly(p: &Poly) -> Self {
        p.constant_value()
            .expect("polynomial with symbols used as a rational coefficient")
    }
    fn try_div(&self, d: &Self) -> Result<Self, ScalarError> {
        if Zero::is_zero(d) {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(self / d)
        }
    }
    fn render(&self) -> String {
        render_rat(self)
    }
    fn is_negative_term(&self) -> bool {
        self.is_negative()
    }
}
