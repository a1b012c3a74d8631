use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{render_exp, Exp, Gen, Poly, QuadNum, Rat, Ring, ScalarError, ScaledScalar, Sym};

/// Product of prime powers with exponents in (0, 1), sorted by prime.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Radical(Vec<(u64, Exp)>);

impl Radical {
    pub fn one() -> Self {
        Radical::default()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(u64, Exp)] {
        &self.0
    }

    /// Product, returning the rational part that spills over integer exponents.
    fn mul(&self, o: &Radical) -> (Radical, Rat) {
        let mut map: BTreeMap<u64, Exp> = self.0.iter().cloned().collect();
        for (p, e) in o.0.iter() {
            *map.entry(*p).or_insert_with(Exp::zero) += e;
        }
        normalize(map)
    }

    fn to_f64(&self) -> f64 {
        self.0
            .iter()
            .map(|(p, e)| (*p as f64).powf(*e.numer() as f64 / *e.denom() as f64))
            .product()
    }

    fn render(&self) -> String {
        self.0
            .iter()
            .map(|(p, e)| format!("{}^({})", p, render_exp(e)))
            .collect::<Vec<_>>()
            .join("*")
    }
}

fn normalize(map: BTreeMap<u64, Exp>) -> (Radical, Rat) {
    let mut coeff = Rat::one();
    let mut out = Vec::new();
    for (p, e) in map {
        let n = e.floor();
        let frac = e - n;
        let k = *n.numer();
        let pr = Rat::from_integer(BigInt::from(p));
        if k > 0 {
            coeff *= num_traits::pow(pr, k as usize);
        } else if k < 0 {
            coeff /= num_traits::pow(pr, (-k) as usize);
        }
        if !frac.is_zero() {
            out.push((p, frac));
        }
    }
    (Radical(out), coeff)
}

fn factor(n: &BigInt) -> Result<Vec<(u64, i64)>, ScalarError> {
    let mut v = n
        .to_u64()
        .ok_or_else(|| ScalarError::Unsupported("radical base too large".into()))?;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= v && p < 2_000_000 {
        let mut k = 0;
        while v % p == 0 {
            v /= p;
            k += 1;
        }
        if k > 0 {
            out.push((p, k));
        }
        p += 1;
    }
    if v > 1 {
        out.push((v, 1));
    }
    Ok(out)
}

/// Exact real number of the form `sum c_r * r` over radicals `r`, with
/// polynomial coefficients so that symbolic curvature can ride along.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Surd {
    terms: BTreeMap<Radical, Poly>,
}

impl Surd {
    pub fn zero() -> Self {
        Surd::default()
    }

    pub fn one() -> Self {
        Surd::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert(Radical::one(), p);
        }
        Surd { terms }
    }

    pub fn from_rat(r: Rat) -> Self {
        Surd::from_poly(Poly::constant(r))
    }

    pub fn from_int(n: i64) -> Self {
        Surd::from_rat(super::int(n))
    }

    pub fn from_quad(q: &QuadNum) -> Self {
        let two = Surd::positive_power(&super::int(2), super::exp(1, 2)).unwrap();
        let three = Surd::positive_power(&super::int(3), super::exp(1, 2)).unwrap();
        let six = &two * &three;
        let mut out = Surd::from_rat(q.a.clone());
        out = &out + &two.scale(&q.b);
        out = &out + &three.scale(&q.c);
        &out + &six.scale(&q.d)
    }

    /// `r^e` for a positive rational `r`.
    pub fn positive_power(r: &Rat, e: Exp) -> Result<Surd, ScalarError> {
        if !r.is_positive() {
            return Err(ScalarError::Unsupported(format!(
                "radical of non-positive value {}",
                super::render_rat(r)
            )));
        }
        let mut map: BTreeMap<u64, Exp> = BTreeMap::new();
        for (p, k) in factor(r.numer())? {
            *map.entry(p).or_insert_with(Exp::zero) += Exp::from_integer(k) * e;
        }
        for (p, k) in factor(r.denom())? {
            *map.entry(p).or_insert_with(Exp::zero) -= Exp::from_integer(k) * e;
        }
        let (rad, c) = normalize(map);
        Ok(Surd::monomial(rad, Poly::constant(c)))
    }

    fn monomial(r: Radical, c: Poly) -> Surd {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(r, c);
        }
        Surd { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Radical, &Poly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_monomial(&self) -> Option<(&Radical, &Poly)> {
        let mut it = self.terms.iter();
        match (it.next(), it.next()) {
            (Some(t), None) => Some(t),
            _ => None,
        }
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        match self.as_monomial() {
            Some((r, p)) if r.is_one() => Some(p),
            _ if self.is_zero() => None,
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        self.as_poly().and_then(|p| p.constant_value())
    }

    fn add_term(&mut self, r: Radical, c: Poly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(r.clone()).or_default();
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&r);
        }
    }

    pub fn scale(&self, c: &Rat) -> Surd {
        let mut out = Surd::zero();
        for (r, p) in self.terms.iter() {
            out.add_term(r.clone(), p.scale(c));
        }
        out
    }

    /// Rational power of a positive monomial.
    pub fn pow(&self, e: Exp) -> Result<Surd, ScalarError> {
        if e.is_integer() && *e.numer() >= 0 {
            return Ok((0..*e.numer()).fold(Surd::one(), |acc, _| &acc * self));
        }
        let (rad, c) = self
            .as_monomial()
            .ok_or_else(|| ScalarError::Unsupported("rational power of a sum".into()))?;
        let c = c
            .constant_value()
            .ok_or_else(|| ScalarError::Unsupported("rational power of a symbolic value".into()))?;
        let mut out = Surd::positive_power(&c, e)?;
        for (p, k) in rad.0.iter() {
            let f = Surd::positive_power(&Rat::from_integer(BigInt::from(*p)), *k * e)?;
            out = &out * &f;
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Result<Surd, ScalarError> {
        self.pow(Exp::from_integer(-1))
    }

    pub fn to_f64(&self) -> Option<f64> {
        self.terms
            .iter()
            .map(|(r, c)| c.constant_value().map(|v| super::rat_to_f64(&v) * r.to_f64()))
            .sum()
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (r, c)) in self.terms.iter().enumerate() {
            let s = if r.is_one() {
                if self.terms.len() == 1 || c.len() == 1 {
                    c.render()
                } else {
                    format!("({})", c.render())
                }
            } else if c.len() == 1 && c.constant_value().is_some_and(|v| v.abs().is_one()) {
                let v = c.constant_value().unwrap();
                format!("{}{}", if v.is_negative() { "-" } else { "" }, r.render())
            } else if c.len() == 1 {
                format!("{}*{}", c.render(), r.render())
            } else {
                format!("({})*{}", c.render(), r.render())
            };
            if i == 0 {
                out.push_str(&s);
            } else if let Some(rest) = s.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&s);
            }
        }
        out
    }
}

impl Poly {
    /// Evaluates assigned symbols to surds; unassigned symbols stay symbolic.
    pub fn eval_surd(&self, assignment: &BTreeMap<Sym, Surd>) -> Surd {
        let mut out = Surd::zero();
        let mut cache: BTreeMap<(Sym, u32), Surd> = BTreeMap::new();
        for (m, c) in self.terms() {
            let mut kept = super::Monomial::one();
            let mut v = Surd::from_rat(c.clone());
            for (s, e) in m.factors() {
                match assignment.get(&s) {
                    Some(x) => {
                        let p = cache
                            .entry((s, e))
                            .or_insert_with(|| (0..e).fold(Surd::one(), |acc, _| &acc * x))
                            .clone();
                        v = &v * &p;
                    }
                    None => kept.0[s.index()] = e as u8,
                }
            }
            for (r, p) in v.terms {
                out.add_term(r, p.mul_monomial(&kept, &Rat::one()));
            }
        }
        out
    }
}

impl ScaledScalar {
    /// Evaluates with surd values for f0..f4; generators are computed from
    /// their definitions and must be positive monomials.
    pub fn eval_surd(&self, assignment: &BTreeMap<Sym, Surd>) -> Result<Surd, ScalarError> {
        let mut base: BTreeMap<Gen, Surd> = BTreeMap::new();
        for g in [Gen::X, Gen::H, Gen::Q, Gen::F4] {
            base.insert(g, g.base().unwrap().eval_surd(assignment));
        }
        let mut out = Surd::zero();
        for (pref, body) in self.terms() {
            let mut v = body.expand_derived().eval_surd(assignment);
            for g in Gen::ALL {
                let e = pref.exponent(g);
                if e.is_zero() {
                    continue;
                }
                let f = match g {
                    Gen::T => base[&Gen::H].pow(-e / Exp::from_integer(3))?,
                    _ => base[&g].pow(e)?,
                };
                v = &v * &f;
            }
            out = &out + &v;
        }
        Ok(out)
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<'a> Add<&'a Surd> for &'a Surd {
    type Output = Surd;
    fn add(self, o: &Surd) -> Surd {
        let mut out = self.clone();
        for (r, c) in o.terms.iter() {
            out.add_term(r.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Surd> for &'a Surd {
    type Output = Surd;
    fn sub(self, o: &Surd) -> Surd {
        let mut out = self.clone();
        for (r, c) in o.terms.iter() {
            out.add_term(r.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a Surd> for &'a Surd {
    type Output = Surd;
    fn mul(self, o: &Surd) -> Surd {
        let mut out = Surd::zero();
        for (r, a) in self.terms.iter() {
            for (s, b) in o.terms.iter() {
                let (rad, c) = r.mul(s);
                out.add_term(rad, (a * b).scale(&c));
            }
        }
        out
    }
}

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd {
            terms: self.terms.iter().map(|(r, c)| (r.clone(), -c)).collect(),
        }
    }
}

impl Ring for Surd {
    fn nil() -> Self {
        Surd::zero()
    }
    fn unit() -> Self {
        Surd::one()
    }
    fn is_nil(&self) -> bool {
        self.terms.is_empty()
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
        Surd::from_rat(r)
    }
    fn from_poly(p: &Poly) -> Self {
        Surd::from_poly(p.clone())
    }
    fn try_div(&self, d: &Self) -> Result<Self, ScalarError> {
        let (rad, c) = d.as_monomial().ok_or(ScalarError::DivisionByZero)?;
        let inv = Surd::monomial(rad.clone(), Poly::one()).inverse()?;
        let mut out = Surd::zero();
        for (r, p) in self.terms.iter() {
            out.add_term(r.clone(), p.exact_divide(c)?);
        }
        Ok(&out * &inv)
    }
    fn render(&self) -> String {
        Surd::render(self)
    }
    fn scaled(&self, r: &Rat) -> Self {
        self.scale(r)
    }
    fn is_negative_term(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().unwrap().is_negative_term()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{exp, int, rat};

    #[test]
    fn square_roots_multiply_out() {
        let r2 = Surd::positive_power(&int(2), exp(1, 2)).unwrap();
        assert_eq!(&r2 * &r2, Surd::from_int(2));
        let r = Surd::positive_power(&rat(3, 2), exp(1, 2)).unwrap();
        assert_eq!(&r * &r, Surd::from_rat(rat(3, 2)));
    }

    #[test]
    fn cube_roots() {
        let c = Surd::positive_power(&int(8), exp(1, 3)).unwrap();
        assert_eq!(c, Surd::from_int(2));
        let d = Surd::positive_power(&int(12), exp(1, 3)).unwrap();
        assert_eq!(d.pow(exp(3, 1)).unwrap(), Surd::from_int(12));
        assert_eq!(d.pow(exp(-3, 1)).unwrap(), Surd::from_rat(rat(1, 12)));
    }

    #[test]
    fn quad_embedding() {
        let q = QuadNum::parse_literal("sqrt(3/2)").unwrap();
        let s = Surd::from_quad(&q);
        assert_eq!(&s * &s, Surd::from_rat(rat(3, 2)));
        assert!((s.to_f64().unwrap() - 1.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn division_by_monomial() {
        let r6 = Surd::from_quad(&QuadNum::sqrt6());
        let a = &r6 * &Surd::from_int(3);
        assert_eq!(a.try_div(&r6).unwrap(), Surd::from_int(3));
    }
}
