use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{int, rat, render_rat, QuadNum, Rat, Ring, ScalarError, Sym, NSYM};

/// Exponent vector over the symbol vocabulary. The derived `Ord` is the
/// lexicographic order on the vocabulary order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub [u8; NSYM]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NSYM])
    }

    pub fn var(s: Sym) -> Self {
        let mut m = Monomial::one();
        m.0[s.index()] = 1;
        m
    }

    pub fn exponent(&self, s: Sym) -> u32 {
        self.0[s.index()] as u32
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut out = [0u8; NSYM];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.0[i].checked_add(o.0[i]).expect("exponent overflow");
        }
        Monomial(out)
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn quotient_of(&self, o: &Monomial) -> Monomial {
        let mut out = [0u8; NSYM];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = o.0[i] - self.0[i];
        }
        Monomial(out)
    }

    pub fn factors(&self) -> impl Iterator<Item = (Sym, u32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (Sym::from_index(i), e as u32))
    }

    pub fn render(&self) -> String {
        if self.is_one() {
            return "1".into();
        }
        self.factors()
            .map(|(s, e)| if e == 1 { s.name() } else { format!("{}^{}", s.name(), e) })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Multivariate polynomial with rational coefficients in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::monomial(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(int(n))
    }

    pub fn var(s: Sym) -> Self {
        Poly::monomial(Monomial::var(s), Rat::one())
    }

    pub fn monomial(m: Monomial, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_value(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Largest term in the lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, s: Sym) -> u32 {
        self.terms.keys().map(|m| m.exponent(s)).max().unwrap_or(0)
    }

    pub fn symbols(&self) -> Vec<Sym> {
        Sym::all().filter(|&s| self.degree_in(s) > 0).collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / q`, or `NotDivisible`.
    pub fn exact_divide(&self, q: &Poly) -> Result<Poly, ScalarError> {
        let (lm_q, lc_q) = q.leading().ok_or(ScalarError::DivisionByZero)?;
        let (lm_q, lc_q) = (*lm_q, lc_q.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((lm_r, lc_r)) = rem.leading() {
            if !lm_q.divides(lm_r) {
                return Err(ScalarError::NotDivisible);
            }
            let m = lm_q.quotient_of(lm_r);
            let c = lc_r / &lc_q;
            for (k, v) in q.terms.iter() {
                rem.add_term(k.mul(&m), -(v * &c));
            }
            quot.add_term(m, c);
        }
        Ok(quot)
    }

    /// Substitutes polynomials for symbols; unmapped symbols stay.
    pub fn substitute(&self, map: &BTreeMap<Sym, Poly>) -> Poly {
        let mut cache: BTreeMap<(Sym, u32), Poly> = BTreeMap::new();
        let mut out = Poly::zero();
        for (m, c) in self.terms.iter() {
            let mut kept = Monomial::one();
            let mut factor = Poly::constant(c.clone());
            for (s, e) in m.factors() {
                match map.get(&s) {
                    Some(p) => {
                        let pw = cache.entry((s, e)).or_insert_with(|| p.pow(e)).clone();
                        factor = &factor * &pw;
                    }
                    None => kept.0[s.index()] = e as u8,
                }
            }
            for (k, v) in factor.terms {
                out.add_term(k.mul(&kept), v);
            }
        }
        out
    }

    pub fn substitute_one(&self, s: Sym, p: &Poly) -> Poly {
        self.substitute(&BTreeMap::from([(s, p.clone())]))
    }

    /// Definition of a derived symbol in terms of f0..f3.
    pub fn derived(s: Sym) -> Option<Poly> {
        let f = |i| Poly::var(Sym::f(i));
        let x = &(&f(2) * &f(2)) - &(&f(1) * &f(3));
        let y = &(&f(1) * &f(1)) - &(&f(0) * &f(2));
        let z = &(&f(1) * &f(2)) - &(&f(0) * &f(3));
        match s {
            Sym::X => Some(x),
            Sym::Y => Some(y),
            Sym::Z => Some(z),
            Sym::H => Some(&(&x * &y) - &(&z * &z)),
            Sym::Q => Some(&(&x * &y) - &(&z * &z).scale(&rat(1, 4))),
            _ => None,
        }
    }

    /// Replaces x, y, z, h, q by their definitions.
    pub fn expand_derived(&self) -> Poly {
        if !self.terms.keys().any(|m| m.factors().any(|(s, _)| s.is_derived())) {
            return self.clone();
        }
        let map = [Sym::X, Sym::Y, Sym::Z, Sym::H, Sym::Q]
            .into_iter()
            .map(|s| (s, Poly::derived(s).unwrap()))
            .collect();
        self.substitute(&map)
    }

    /// Normal form modulo `f0^2 + f1^2 = 1`, by `f1^2 -> 1 - f0^2`.
    pub fn reduce_circle(&self) -> Poly {
        self.reduce_square(Sym::F1, &(&Poly::one() - &Poly::var(Sym::F0).pow(2)))
    }

    /// Normal form modulo `s^2 = rep`, where `rep` does not involve `s`.
    pub fn reduce_square(&self, s: Sym, rep: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in self.terms.iter() {
            let e = m.exponent(s);
            if e < 2 {
                out.add_term(*m, c.clone());
                continue;
            }
            let mut rest = *m;
            rest.0[s.index()] = (e % 2) as u8;
            for (k, v) in rep.pow(e / 2).terms {
                out.add_term(k.mul(&rest), v * c);
            }
        }
        out
    }

    /// Coefficients of powers of `s`, lowest first.
    pub fn coefficients_in(&self, s: Sym) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree_in(s) as usize + 1];
        for (m, c) in self.terms.iter() {
            let e = m.exponent(s) as usize;
            let mut rest = *m;
            rest.0[s.index()] = 0;
            out[e].add_term(rest, c.clone());
        }
        out
    }

    /// Exact evaluation in Q(sqrt2, sqrt3).
    pub fn eval_quad(&self, assignment: &BTreeMap<Sym, QuadNum>) -> Result<QuadNum, ScalarError> {
        let mut acc = QuadNum::zero();
        for (m, c) in self.terms.iter() {
            let mut t = QuadNum::rational(c.clone());
            for (s, e) in m.factors() {
                let v = assignment
                    .get(&s)
                    .ok_or_else(|| ScalarError::MissingSymbol(s.name()))?;
                t = &t * &v.pow(e);
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, value: impl Fn(Sym) -> f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.factors()
                    .fold(super::rat_to_f64(c), |acc, (s, e)| acc * value(s).powi(e as i32))
            })
            .sum()
    }

    /// Rational roots of a univariate polynomial in `s`, with multiplicity, and
    /// whether they account for the full degree.
    pub fn rational_roots(&self, s: Sym) -> Option<(Vec<Rat>, bool)> {
        if self.symbols().iter().any(|&t| t != s) || self.is_zero() {
            return None;
        }
        let mut p = self.clone();
        let mut roots = Vec::new();
        let candidates = rational_root_candidates(&p.coefficients_in(s));
        for r in candidates {
            let lin = &Poly::var(s) - &Poly::constant(r.clone());
            while let Ok(qt) = p.exact_divide(&lin) {
                roots.push(r.clone());
                p = qt;
            }
        }
        roots.sort();
        Some((roots, p.degree_in(s) == 0))
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            let body = if m.is_one() {
                render_rat(&a)
            } else if a.is_one() {
                m.render()
            } else {
                format!("{}*{}", render_rat(&a), m.render())
            };
            match (i, neg) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body);
                }
            }
        }
        out
    }
}

fn divisors(n: &num_bigint::BigInt) -> Vec<num_bigint::BigInt> {
    use num_traits::ToPrimitive;
    let n = n.abs();
    let Some(v) = n.to_u64() else { return vec![] };
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            out.push(d.into());
            if d != v / d {
                out.push((v / d).into());
            }
        }
        d += 1;
        if d > 1_000_000 {
            break;
        }
    }
    out
}

fn rational_root_candidates(coeffs: &[Poly]) -> Vec<Rat> {
    use num_integer::Integer;
    let cs: Vec<Rat> = coeffs.iter().map(|c| c.constant_value().unwrap()).collect();
    let lcm = cs
        .iter()
        .fold(num_bigint::BigInt::one(), |a, c| a.lcm(c.denom()));
    let ints: Vec<num_bigint::BigInt> = cs.iter().map(|c| (c * Rat::from_integer(lcm.clone())).to_integer()).collect();
    let mut out = vec![Rat::zero()];
    let Some(lead) = ints.iter().rev().find(|c| !c.is_zero()) else { return out };
    let Some(tail) = ints.iter().find(|c| !c.is_zero()) else { return out };
    for p in divisors(tail) {
        for q in divisors(lead) {
            let r = Rat::new(p.clone(), q.clone());
            out.push(r.clone());
            out.push(-r);
        }
    }
    out.sort();
    out.dedup();
    out
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in o.terms.iter() {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in o.terms.iter() {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (a, x) in self.terms.iter() {
            for (b, y) in o.terms.iter() {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! by_value {
    ($tr:ident, $f:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $f(self, o: Poly) -> Poly {
                (&self).$f(&o)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl From<Sym> for Poly {
    fn from(s: Sym) -> Poly {
        Poly::var(s)
    }
}

impl From<Rat> for Poly {
    fn from(r: Rat) -> Poly {
        Poly::constant(r)
    }
}

impl Ring for Poly {
    fn nil() -> Self {
        Poly::zero()
    }
    fn unit() -> Self {
        Poly::one()
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
        Poly::constant(r)
    }
    fn from_poly(p: &Poly) -> Self {
        p.clone()
    }
    fn try_div(&self, d: &Self) -> Result<Self, ScalarError> {
        self.exact_divide(d)
    }
    fn render(&self) -> String {
        Poly::render(self)
    }
    fn scaled(&self, r: &Rat) -> Self {
        self.scale(r)
    }
    fn is_negative_term(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().unwrap().is_negative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(i: usize) -> Poly {
        Poly::var(Sym::f(i))
    }

    #[test]
    fn quartic_from_blocks() {
        let x = Poly::derived(Sym::X).unwrap();
        let y = Poly::derived(Sym::Y).unwrap();
        let z = Poly::derived(Sym::Z).unwrap();
        let lhs = &(&x * &y) - &(&z * &z);
        let rhs = &(&(&(&f(0) * &f(1)) * &(&f(2) * &f(3))).scale(&int(3)) - &(&f(0) * &f(2).pow(3)))
            - &(&(&f(0).pow(2) * &f(3).pow(2)) + &(&f(3) * &f(1).pow(3)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&f(0) + &f(1)) * &(&f(0) - &f(1));
        assert_eq!(p, &f(0).pow(2) - &f(1).pow(2));
        assert_eq!(&p + &Poly::zero(), p);
    }

    #[test]
    fn exact_division() {
        assert_eq!(f(0).pow(2).exact_divide(&f(0)).unwrap(), f(0));
        assert_eq!(
            (&f(0) + &Poly::one()).exact_divide(&f(1)),
            Err(ScalarError::NotDivisible)
        );
        assert_eq!(f(0).exact_divide(&Poly::zero()), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn circle_reduction() {
        let p = &f(0).pow(2) + &f(1).pow(2);
        assert_eq!(p.reduce_circle(), Poly::one());
        assert_eq!(f(1).pow(3).reduce_circle(), &f(1) - &(&f(0).pow(2) * &f(1)));
    }

    #[test]
    fn roots_of_quadratic() {
        let k = Poly::var(Sym::K);
        let p = &(&k.pow(2) + &k) - &Poly::int(2);
        let (roots, complete) = p.scale(&int(12)).rational_roots(Sym::K).unwrap();
        assert_eq!(roots, vec![int(-2), int(1)]);
        assert!(complete);
    }

    #[test]
    fn render_is_leading_first() {
        let p = &(&f(0).pow(2) * &f(1)) - &f(3).scale(&rat(1, 2));
        assert_eq!(p.render(), "f0^2*f1 - 1/2*f3");
        assert_eq!(Poly::zero().render(), "0");
    }
}
