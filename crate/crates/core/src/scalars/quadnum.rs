use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{int, rat_to_f64, render_rat, Rat, ScalarError};

/// `a + b sqrt2 + c sqrt3 + d sqrt6` with rational components.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QuadNum {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub d: Rat,
}

impl QuadNum {
    pub fn new(a: Rat, b: Rat, c: Rat, d: Rat) -> Self {
        QuadNum { a, b, c, d }
    }

    pub fn zero() -> Self {
        QuadNum::rational(Rat::zero())
    }

    pub fn one() -> Self {
        QuadNum::rational(Rat::one())
    }

    pub fn rational(a: Rat) -> Self {
        QuadNum::new(a, Rat::zero(), Rat::zero(), Rat::zero())
    }

    pub fn sqrt2() -> Self {
        QuadNum::new(Rat::zero(), Rat::one(), Rat::zero(), Rat::zero())
    }

    pub fn sqrt3() -> Self {
        QuadNum::new(Rat::zero(), Rat::zero(), Rat::one(), Rat::zero())
    }

    pub fn sqrt6() -> Self {
        QuadNum::new(Rat::zero(), Rat::zero(), Rat::zero(), Rat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        (self.b.is_zero() && self.c.is_zero() && self.d.is_zero()).then_some(&self.a)
    }

    pub fn scale(&self, r: &Rat) -> Self {
        QuadNum::new(&self.a * r, &self.b * r, &self.c * r, &self.d * r)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(QuadNum::one(), |acc, _| &acc * self)
    }

    /// Image under `sqrt2 -> -sqrt2`.
    fn conj2(&self) -> Self {
        QuadNum::new(self.a.clone(), -self.b.clone(), self.c.clone(), -self.d.clone())
    }

    /// Image under `sqrt3 -> -sqrt3`.
    fn conj3(&self) -> Self {
        QuadNum::new(self.a.clone(), self.b.clone(), -self.c.clone(), -self.d.clone())
    }

    pub fn inverse(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let c2 = self.conj2();
        let n1 = self * &c2;
        let c3 = n1.conj3();
        let n = &n1 * &c3;
        let norm = n.as_rational().expect("norm is rational").clone();
        Ok((&c2 * &c3).scale(&(Rat::one() / norm)))
    }

    /// Exact sign.
    pub fn signum(&self) -> i8 {
        let u = (self.a.clone(), self.b.clone());
        let v = (self.c.clone(), self.d.clone());
        let su = sign2(&u.0, &u.1);
        let sv = sign2(&v.0, &v.1);
        if su * sv >= 0 {
            return (su + sv).signum();
        }
        // compare u^2 with 3 v^2 inside Q(sqrt2)
        let u2 = (&u.0 * &u.0 + int(2) * &u.1 * &u.1, int(2) * &u.0 * &u.1);
        let v2 = (&v.0 * &v.0 + int(2) * &v.1 * &v.1, int(2) * &v.0 * &v.1);
        let diff = sign2(&(u2.0 - int(3) * v2.0), &(u2.1 - int(3) * v2.1));
        match diff {
            1 => su,
            -1 => sv,
            _ => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.a)
            + rat_to_f64(&self.b) * 2f64.sqrt()
            + rat_to_f64(&self.c) * 3f64.sqrt()
            + rat_to_f64(&self.d) * 6f64.sqrt()
    }

    /// The square root of a rational, when it lies in the field.
    pub fn sqrt_of(r: &Rat) -> Result<Self, ScalarError> {
        if r.is_negative() {
            return Err(ScalarError::Unsupported(format!("sqrt of negative {}", render_rat(r))));
        }
        // sqrt(p/q) = sqrt(p q) / q
        let pq: BigInt = r.numer() * r.denom();
        let (s, m) = square_split(&pq)?;
        let coeff = Rat::new(s, r.denom().clone());
        let unit = match m {
            1 => QuadNum::one(),
            2 => QuadNum::sqrt2(),
            3 => QuadNum::sqrt3(),
            6 => QuadNum::sqrt6(),
            _ => {
                return Err(ScalarError::Unsupported(format!(
                    "sqrt({}) is outside Q(sqrt2, sqrt3)",
                    render_rat(r)
                )))
            }
        };
        Ok(unit.scale(&coeff))
    }

    /// Parses `p/q`, `sqrt(r)`, `c*sqrt(r)`, `sqrt(r)/n` with an optional leading minus.
    pub fn parse_literal(text: &str) -> Result<Self, ScalarError> {
        let err = |msg: &str| ScalarError::Syntax { pos: 0, msg: format!("{msg}: {text:?}") };
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t.as_str()),
        };
        let value = match body.find("sqrt(") {
            None => QuadNum::rational(parse_rat(body).ok_or_else(|| err("bad rational"))?),
            Some(pos) => {
                let coeff = match &body[..pos] {
                    "" => Rat::one(),
                    pre => parse_rat(pre.strip_suffix('*').ok_or_else(|| err("expected '*'"))?)
                        .ok_or_else(|| err("bad coefficient"))?,
                };
                let rest = &body[pos + 5..];
                let close = rest.find(')').ok_or_else(|| err("unclosed sqrt"))?;
                let inner = parse_rat(&rest[..close]).ok_or_else(|| err("bad radicand"))?;
                let tail = &rest[close + 1..];
                let div = match tail {
                    "" => Rat::one(),
                    t => parse_rat(t.strip_prefix('/').ok_or_else(|| err("trailing input"))?)
                        .ok_or_else(|| err("bad divisor"))?,
                };
                if div.is_zero() {
                    return Err(ScalarError::DivisionByZero);
                }
                QuadNum::sqrt_of(&inner)?.scale(&(coeff / div))
            }
        };
        Ok(if neg { -&value } else { value })
    }

    pub fn render(&self) -> String {
        let parts = [
            (&self.a, ""),
            (&self.b, "sqrt(2)"),
            (&self.c, "sqrt(3)"),
            (&self.d, "sqrt(6)"),
        ];
        let mut out = String::new();
        for (c, unit) in parts {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = match (unit.is_empty(), mag.is_one()) {
                (true, _) => render_rat(&mag),
                (false, true) => unit.to_string(),
                (false, false) => format!("{}*{}", render_rat(&mag), unit),
            };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

fn parse_rat(s: &str) -> Option<Rat> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    (!d.is_zero()).then(|| Rat::new(n, d))
}

/// Writes `n = s^2 m` with `m` squarefree, for `m` small enough to matter.
fn square_split(n: &BigInt) -> Result<(BigInt, u64), ScalarError> {
    let v = n
        .to_u64()
        .ok_or_else(|| ScalarError::Unsupported("radicand too large".into()))?;
    if v == 0 {
        return Ok((BigInt::zero(), 1));
    }
    let mut s = 1u64;
    let mut m = v;
    let mut p = 2u64;
    while p * p <= m {
        while m % (p * p) == 0 {
            m /= p * p;
            s *= p;
        }
        p += 1;
    }
    debug_assert_eq!(s * s * m, v);
    Ok((BigInt::from(s), m))
}

/// Exact sign of `p + q sqrt2`.
fn sign2(p: &Rat, q: &Rat) -> i8 {
    let sp = sgn(p);
    let sq = sgn(q);
    if sp * sq >= 0 {
        return (sp + sq).signum();
    }
    match (p * p).cmp(&(int(2) * q * q)) {
        Ordering::Greater => sp,
        Ordering::Less => sq,
        Ordering::Equal => 0,
    }
}

fn sgn(r: &Rat) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

impl<'a> Add<&'a QuadNum> for &'a QuadNum {
    type Output = QuadNum;
    fn add(self, o: &QuadNum) -> QuadNum {
        QuadNum::new(&self.a + &o.a, &self.b + &o.b, &self.c + &o.c, &self.d + &o.d)
    }
}

impl<'a> Sub<&'a QuadNum> for &'a QuadNum {
    type Output = QuadNum;
    fn sub(self, o: &QuadNum) -> QuadNum {
        QuadNum::new(&self.a - &o.a, &self.b - &o.b, &self.c - &o.c, &self.d - &o.d)
    }
}

impl<'a> Mul<&'a QuadNum> for &'a QuadNum {
    type Output = QuadNum;
    fn mul(self, o: &QuadNum) -> QuadNum {
        let (a1, b1, c1, d1) = (&self.a, &self.b, &self.c, &self.d);
        let (a2, b2, c2, d2) = (&o.a, &o.b, &o.c, &o.d);
        QuadNum::new(
            a1 * a2 + int(2) * b1 * b2 + int(3) * c1 * c2 + int(6) * d1 * d2,
            a1 * b2 + b1 * a2 + int(3) * (c1 * d2 + d1 * c2),
            a1 * c2 + c1 * a2 + int(2) * (b1 * d2 + d1 * b2),
            a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
        )
    }
}

impl Neg for &QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum::new(-self.a.clone(), -self.b.clone(), -self.c.clone(), -self.d.clone())
    }
}

impl fmt::Debug for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn unit_products() {
        assert_eq!(&QuadNum::sqrt2() * &QuadNum::sqrt3(), QuadNum::sqrt6());
        assert_eq!(&QuadNum::sqrt6() * &QuadNum::sqrt6(), QuadNum::rational(int(6)));
    }

    #[test]
    fn literals() {
        let h = QuadNum::parse_literal("sqrt(2)/2").unwrap();
        assert_eq!(h, QuadNum::sqrt2().scale(&rat(1, 2)));
        let f4 = QuadNum::parse_literal("sqrt(3/2)").unwrap();
        assert_eq!(f4, QuadNum::sqrt6().scale(&rat(1, 2)));
        assert_eq!(QuadNum::parse_literal("-1/2").unwrap(), QuadNum::rational(rat(-1, 2)));
        assert!(QuadNum::parse_literal("sqrt(5)").is_err());
        let r = QuadNum::parse_literal(&f4.render()).unwrap();
        assert_eq!(r, f4);
    }

    #[test]
    fn exact_sign() {
        // sqrt2 + sqrt3 - sqrt6 - 1/10 is about 0.6963
        let v = &(&QuadNum::sqrt2() + &QuadNum::sqrt3()) - &QuadNum::sqrt6();
        assert_eq!(v.signum(), 1);
        let w = &v - &QuadNum::rational(rat(7, 10));
        assert_eq!(w.signum(), -1);
        assert_eq!(QuadNum::zero().signum(), 0);
    }

    #[test]
    fn inverse_round_trip() {
        let v = QuadNum::new(int(1), int(2), rat(-1, 3), int(5));
        assert_eq!(&v * &v.inverse().unwrap(), QuadNum::one());
    }
}
