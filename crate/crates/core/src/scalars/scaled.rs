use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{render_exp, Exp, Poly, Rat, Ring, ScalarError, Sym};

/// Formal radical generators. `t` is the metric scale `f4/m = h^(-1/3)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Gen {
    T,
    X,
    H,
    Q,
    F4,
}

impl Gen {
    pub const ALL: [Gen; 5] = [Gen::T, Gen::X, Gen::H, Gen::Q, Gen::F4];

    pub fn name(self) -> &'static str {
        match self {
            Gen::T => "t",
            Gen::X => "x",
            Gen::H => "h",
            Gen::Q => "q",
            Gen::F4 => "f4",
        }
    }

    pub fn parse(s: &str) -> Option<Gen> {
        Gen::ALL.into_iter().find(|g| g.name() == s)
    }

    fn slot(self) -> usize {
        self as usize
    }

    /// The polynomial a generator stands for; `t` has none.
    pub fn base(self) -> Option<Poly> {
        match self {
            Gen::T => None,
            Gen::X => Poly::derived(Sym::X),
            Gen::H => Poly::derived(Sym::H),
            Gen::Q => Poly::derived(Sym::Q),
            Gen::F4 => Some(Poly::var(Sym::F4)),
        }
    }

    /// The body symbol with the same value.
    pub fn symbol(self) -> Option<Sym> {
        match self {
            Gen::T => None,
            Gen::X => Some(Sym::X),
            Gen::H => Some(Sym::H),
            Gen::Q => Some(Sym::Q),
            Gen::F4 => Some(Sym::F4),
        }
    }
}

/// Formal product `t^a x^b h^c q^d f4^e` with rational exponents.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RadPrefactor(pub [Exp; 5]);

impl RadPrefactor {
    pub fn one() -> Self {
        RadPrefactor::default()
    }

    pub fn single(g: Gen, e: Exp) -> Self {
        let mut p = RadPrefactor::one();
        p.0[g.slot()] = e;
        p
    }

    pub fn of(pairs: &[(Gen, Exp)]) -> Self {
        pairs.iter().fold(RadPrefactor::one(), |acc, &(g, e)| acc.mul(&RadPrefactor::single(g, e)))
    }

    pub fn exponent(&self, g: Gen) -> Exp {
        self.0[g.slot()]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|e| e.is_zero())
    }

    pub fn mul(&self, o: &RadPrefactor) -> RadPrefactor {
        let mut out = *self;
        for i in 0..5 {
            out.0[i] += o.0[i];
        }
        out
    }

    pub fn inv(&self) -> RadPrefactor {
        let mut out = *self;
        for e in out.0.iter_mut() {
            *e = -*e;
        }
        out
    }

    pub fn pow(&self, r: Exp) -> RadPrefactor {
        let mut out = *self;
        for e in out.0.iter_mut() {
            *e *= r;
        }
        out
    }

    pub fn render(&self) -> String {
        Gen::ALL
            .iter()
            .filter(|g| !self.exponent(**g).is_zero())
            .map(|g| format!("{}^({})", g.name(), render_exp(&self.exponent(*g))))
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Debug for RadPrefactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            f.write_str("1")
        } else {
            f.write_str(&self.render())
        }
    }
}

/// A finite sum of radical prefactors times polynomial bodies.
///
/// Arithmetic is structural; [`ScaledScalar::expand`] produces the canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ScaledScalar {
    terms: BTreeMap<RadPrefactor, Poly>,
}

impl ScaledScalar {
    pub fn zero() -> Self {
        ScaledScalar::default()
    }

    pub fn one() -> Self {
        ScaledScalar::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        ScaledScalar::term(RadPrefactor::one(), p)
    }

    pub fn from_rat(r: Rat) -> Self {
        ScaledScalar::from_poly(Poly::constant(r))
    }

    pub fn sym(s: Sym) -> Self {
        ScaledScalar::from_poly(Poly::var(s))
    }

    pub fn term(pref: RadPrefactor, body: Poly) -> Self {
        let mut terms = BTreeMap::new();
        if !body.is_zero() {
            terms.insert(pref, body);
        }
        ScaledScalar { terms }
    }

    pub fn gen(g: Gen, e: Exp) -> Self {
        ScaledScalar::term(RadPrefactor::single(g, e), Poly::one())
    }

    pub fn pref(p: RadPrefactor) -> Self {
        ScaledScalar::term(p, Poly::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RadPrefactor, &Poly)> {
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

    fn add_term(&mut self, p: RadPrefactor, b: Poly) {
        if b.is_zero() {
            return;
        }
        let slot = self.terms.entry(p).or_default();
        *slot = &*slot + &b;
        if slot.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        let mut out = ScaledScalar::zero();
        for (p, b) in self.terms.iter() {
            out.add_term(*p, b.scale(r));
        }
        out
    }

    pub fn mul_pref(&self, q: &RadPrefactor) -> Self {
        ScaledScalar {
            terms: self.terms.iter().map(|(p, b)| (p.mul(q), b.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(ScaledScalar::one(), |acc, _| &acc * self)
    }

    /// Canonical form: derived symbols replaced by their definitions, `t`
    /// eliminated as `h^(-1/3)`, integer prefactor powers folded into the body
    /// and negative powers cancelled against the body where they divide it.
    pub fn expand(&self) -> ScaledScalar {
        const GENS: [Gen; 4] = [Gen::X, Gen::H, Gen::Q, Gen::F4];
        let mut classes: BTreeMap<[Exp; 4], Vec<([i64; 4], Poly)>> = BTreeMap::new();
        for (pref, body) in self.terms.iter() {
            let t = pref.exponent(Gen::T);
            let mut frac = [Exp::zero(); 4];
            let mut whole = [0i64; 4];
            for (i, g) in GENS.iter().enumerate() {
                let mut e = pref.exponent(*g);
                if *g == Gen::H {
                    e -= t / Exp::from_integer(3);
                }
                let n = e.floor();
                whole[i] = *n.numer();
                frac[i] = e - n;
            }
            classes.entry(frac).or_default().push((whole, body.expand_derived()));
        }
        let bases: Vec<Poly> = GENS.iter().map(|g| g.base().unwrap()).collect();
        let mut out = ScaledScalar::zero();
        for (frac, members) in classes {
            let mut low = [0i64; 4];
            for (w, _) in members.iter() {
                for i in 0..4 {
                    low[i] = low[i].min(w[i]);
                }
            }
            let mut body = Poly::zero();
            for (w, b) in members {
                let mut t = b;
                for i in 0..4 {
                    let n = (w[i] - low[i]) as u32;
                    if n > 0 {
                        t = &t * &bases[i].pow(n);
                    }
                }
                body = &body + &t;
            }
            if body.is_zero() {
                continue;
            }
            for i in 0..4 {
                while low[i] < 0 {
                    match body.exact_divide(&bases[i]) {
                        Ok(q) => {
                            body = q;
                            low[i] += 1;
                        }
                        Err(_) => break,
                    }
                }
            }
            let mut pref = RadPrefactor::one();
            for (i, g) in GENS.iter().enumerate() {
                pref.0[g.slot()] = frac[i] + Exp::from_integer(low[i]);
            }
            out.add_term(pref, body);
        }
        out
    }

    pub fn scaled_equal(a: &ScaledScalar, b: &ScaledScalar) -> bool {
        (a - b).expand().is_zero()
    }

    /// Substitutes polynomials for body symbols and rational values for
    /// generators, without expanding. Generator values must have exact
    /// rational powers.
    pub fn substitute(
        &self,
        map: &BTreeMap<Sym, Poly>,
        gens: &BTreeMap<Gen, Rat>,
    ) -> Result<ScaledScalar, ScalarError> {
        let mut out = ScaledScalar::zero();
        for (pref, body) in self.terms.iter() {
            let mut p = *pref;
            let mut c = Rat::one();
            for (g, v) in gens.iter() {
                let e = p.exponent(*g);
                if e.is_zero() {
                    continue;
                }
                c *= rat_pow(v, e).ok_or_else(|| {
                    ScalarError::Unsupported(format!("{}^({}) is irrational", v, render_exp(&e)))
                })?;
                p.0[g.slot()] = Exp::zero();
            }
            out.add_term(p, body.substitute(map).scale(&c));
        }
        Ok(out)
    }

    /// Folds non-negative integer prefactor powers into the body as the
    /// symbols x, h, q, f4. Fails on `t`, negative or fractional powers.
    pub fn to_symbolic_poly(&self) -> Result<Poly, ScalarError> {
        let mut out = Poly::zero();
        for (pref, body) in self.terms.iter() {
            let mut t = body.clone();
            for g in Gen::ALL {
                let e = pref.exponent(g);
                if e.is_zero() {
                    continue;
                }
                let sym = g.symbol().filter(|_| e.is_integer() && e.is_positive()).ok_or_else(|| {
                    ScalarError::Unsupported(format!("prefactor {:?} is not polynomial", pref))
                })?;
                t = &t * &Poly::var(sym).pow(*e.numer() as u32);
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Divides every prefactor by `p` and folds the result into a polynomial.
    pub fn factor_out(&self, p: &RadPrefactor) -> Result<Poly, ScalarError> {
        self.mul_pref(&p.inv()).to_symbolic_poly()
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let single = self.terms.len() == 1;
        let mut out = String::new();
        for (i, (p, b)) in self.terms.iter().enumerate() {
            let s = render_term(p, b, single);
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

fn render_term(p: &RadPrefactor, b: &Poly, alone: bool) -> String {
    if p.is_one() {
        let s = b.render();
        return if alone || b.len() == 1 { s } else { format!("({s})") };
    }
    let pr = p.render();
    if b.len() == 1 {
        let (m, c) = b.terms().next().unwrap();
        if m.is_one() && c.abs().is_one() {
            return if c.is_negative() { format!("-{pr}") } else { pr };
        }
        return format!("{}*{}", b.render(), pr);
    }
    format!("({})*{}", b.render(), pr)
}

/// Exact `r^e` for rational `r > 0`, when it is rational.
pub(crate) fn rat_pow(r: &Rat, e: Exp) -> Option<Rat> {
    if r.is_one() {
        return Some(Rat::one());
    }
    let den = *e.denom() as u32;
    let num = *e.numer();
    let root = |n: &num_bigint::BigInt| -> Option<num_bigint::BigInt> {
        if n.is_negative() {
            return None;
        }
        let c = n.nth_root(den);
        (c.pow(den) == *n).then_some(c)
    };
    let base = Rat::new(root(r.numer())?, root(r.denom())?);
    if num >= 0 {
        Some(num_traits::pow(base, num as usize))
    } else if base.is_zero() {
        None
    } else {
        Some(num_traits::pow(Rat::one() / base, (-num) as usize))
    }
}

impl fmt::Debug for ScaledScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for ScaledScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<'a> Add<&'a ScaledScalar> for &'a ScaledScalar {
    type Output = ScaledScalar;
    fn add(self, o: &ScaledScalar) -> ScaledScalar {
        let mut out = self.clone();
        for (p, b) in o.terms.iter() {
            out.add_term(*p, b.clone());
        }
        out
    }
}

impl<'a> Sub<&'a ScaledScalar> for &'a ScaledScalar {
    type Output = ScaledScalar;
    fn sub(self, o: &ScaledScalar) -> ScaledScalar {
        let mut out = self.clone();
        for (p, b) in o.terms.iter() {
            out.add_term(*p, -b);
        }
        out
    }
}

impl<'a> Mul<&'a ScaledScalar> for &'a ScaledScalar {
    type Output = ScaledScalar;
    fn mul(self, o: &ScaledScalar) -> ScaledScalar {
        let mut out = ScaledScalar::zero();
        for (p, a) in self.terms.iter() {
            for (q, b) in o.terms.iter() {
                out.add_term(p.mul(q), a * b);
            }
        }
        out
    }
}

impl Neg for &ScaledScalar {
    type Output = ScaledScalar;
    fn neg(self) -> ScaledScalar {
        ScaledScalar {
            terms: self.terms.iter().map(|(p, b)| (*p, -b)).collect(),
        }
    }
}

impl From<Poly> for ScaledScalar {
    fn from(p: Poly) -> Self {
        ScaledScalar::from_poly(p)
    }
}

impl Ring for ScaledScalar {
    fn nil() -> Self {
        ScaledScalar::zero()
    }
    fn unit() -> Self {
        ScaledScalar::one()
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
        ScaledScalar::from_rat(r)
    }
    fn from_poly(p: &Poly) -> Self {
        ScaledScalar::from_poly(p.clone())
    }
    fn try_div(&self, d: &Self) -> Result<Self, ScalarError> {
        let divide = |num: &ScaledScalar, den: &ScaledScalar| -> Result<ScaledScalar, ScalarError> {
            let mut it = den.terms.iter();
            let (dp, db) = match (it.next(), it.next()) {
                (None, _) => return Err(ScalarError::DivisionByZero),
                (Some(t), None) => t,
                _ => return Err(ScalarError::Unsupported("division by a sum of radicals".into())),
            };
            let mut out = ScaledScalar::zero();
            for (p, b) in num.terms.iter() {
                out.add_term(p.mul(&dp.inv()), b.exact_divide(db)?);
            }
            Ok(out)
        };
        divide(self, d).or_else(|_| divide(&self.expand(), &d.expand()))
    }
    fn render(&self) -> String {
        ScaledScalar::render(self)
    }
    fn normalized(&self) -> Self {
        self.expand()
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
    use crate::scalars::{exp, int};

    #[test]
    fn t_is_eliminated() {
        let a = ScaledScalar::gen(Gen::T, exp(1, 2));
        let e = a.expand();
        assert_eq!(e, ScaledScalar::gen(Gen::H, exp(-1, 6)));
        assert!(ScaledScalar::scaled_equal(&a, &ScaledScalar::gen(Gen::H, exp(-1, 6))));
    }

    #[test]
    fn derived_symbols_expand() {
        let y = ScaledScalar::sym(Sym::Y).expand();
        let f = |i| Poly::var(Sym::f(i));
        assert_eq!(y, ScaledScalar::from_poly(&f(1).pow(2) - &(&f(0) * &f(2))));
    }

    #[test]
    fn integer_powers_fold() {
        let a = ScaledScalar::term(RadPrefactor::single(Gen::X, exp(1, 1)), Poly::var(Sym::F0));
        let x = Poly::derived(Sym::X).unwrap();
        assert_eq!(a.expand(), ScaledScalar::from_poly(&Poly::var(Sym::F0) * &x));
        assert!(!ScaledScalar::scaled_equal(&ScaledScalar::sym(Sym::F0), &ScaledScalar::sym(Sym::F1)));
    }

    #[test]
    fn negative_powers_cancel() {
        let a = ScaledScalar::term(RadPrefactor::single(Gen::X, exp(-2, 1)), Poly::var(Sym::X).pow(3));
        assert!(ScaledScalar::scaled_equal(&a, &ScaledScalar::sym(Sym::X)));
        let b = ScaledScalar::term(RadPrefactor::single(Gen::F4, exp(-1, 1)), Poly::var(Sym::F4));
        assert_eq!(b.expand(), ScaledScalar::one());
    }

    #[test]
    fn radicals_combine() {
        let r = ScaledScalar::gen(Gen::X, exp(1, 2));
        assert!(ScaledScalar::scaled_equal(&(&r * &r), &ScaledScalar::sym(Sym::X)));
        let h = &ScaledScalar::gen(Gen::T, exp(3, 2)) * &ScaledScalar::gen(Gen::H, exp(1, 2));
        assert_eq!(h.expand(), ScaledScalar::one());
        assert_eq!(rat_pow(&int(8), exp(-2, 3)), Some(crate::scalars::rat(1, 4)));
    }
}
