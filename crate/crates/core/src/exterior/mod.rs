//! Exterior algebra over the seven adapted coframe elements `e0..e6`.
//!
//! Forms are generic over any [`Ring`] coefficient type. Terms are kept on
//! strictly increasing multi-indices with the permutation sign folded into
//! the coefficient, so structural equality is equality of forms once the
//! coefficients are in canonical form.

mod atoms;
mod parse;
mod render;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, BitXor, Neg, Sub};

use thiserror::Error;

use crate::scalars::{Rat, Ring, ScalarError};

pub use atoms::{atom_names, named_atom, AtomTable};
pub use parse::{parse_form, parse_form_with};
pub use render::{render_form, render_json, RenderStyle};

/// Dimension of the ambient coframe.
pub const DIM: u8 = 7;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExteriorError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown atom {0:?}")]
    UnknownAtom(String),
    #[error("cannot add a {left}-form and a {right}-form")]
    DegreeMismatch { left: usize, right: usize },
    #[error("interior product of a 0-form")]
    DegreeZero,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

impl ExteriorError {
    fn lift(e: ScalarError) -> Self {
        match e {
            ScalarError::Syntax { pos, msg } => ExteriorError::Syntax { pos, msg },
            other => ExteriorError::Scalar(other),
        }
    }
}

/// A strictly increasing index set inside `{0,..,6}`, stored as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MultiIndex(u8);

impl MultiIndex {
    pub fn empty() -> Self {
        MultiIndex(0)
    }

    pub fn full() -> Self {
        MultiIndex((1 << DIM) - 1)
    }

    /// Sorts `idx` and returns the index set with the sign of the sorting
    /// permutation, or `None` when an index repeats.
    pub fn sorted(idx: &[u8]) -> Option<(MultiIndex, i8)> {
        let mut mask = 0u8;
        let mut sign = 1i8;
        for (pos, &i) in idx.iter().enumerate() {
            assert!(i < DIM, "coframe index {i} out of range");
            if mask & (1 << i) != 0 {
                return None;
            }
            let later_smaller = idx[pos + 1..].iter().filter(|&&j| j < i).count();
            if later_smaller % 2 == 1 {
                sign = -sign;
            }
            mask |= 1 << i;
        }
        Some((MultiIndex(mask), sign))
    }

    pub fn from_mask(mask: u8) -> Self {
        MultiIndex(mask & ((1 << DIM) - 1))
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: u8) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn indices(self) -> impl Iterator<Item = u8> {
        (0..DIM).filter(move |&i| self.contains(i))
    }

    pub fn complement(self) -> MultiIndex {
        MultiIndex(!self.0 & ((1 << DIM) - 1))
    }

    /// Sign of `e^self ∧ e^other`, or `None` if they overlap.
    pub fn wedge_sign(self, other: MultiIndex) -> Option<i8> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut swaps = 0u32;
        for j in other.indices() {
            swaps += (self.0 >> (j + 1)).count_ones();
        }
        Some(if swaps % 2 == 0 { 1 } else { -1 })
    }

    /// All index sets of a given degree in increasing order.
    pub fn of_degree(p: usize) -> Vec<MultiIndex> {
        let mut out: Vec<MultiIndex> =
            (0u8..(1 << DIM)).map(MultiIndex).filter(|m| m.degree() == p).collect();
        out.sort();
        out
    }

    pub fn label(self) -> String {
        self.indices().map(|i| char::from(b'0' + i)).collect()
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.indices().cmp(other.indices())
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.label())
    }
}

/// A homogeneous exterior form.
#[derive(Clone)]
pub struct Form<C: Ring> {
    degree: usize,
    terms: BTreeMap<MultiIndex, C>,
}

impl<C: Ring> Form<C> {
    pub fn zero(degree: usize) -> Self {
        Form { degree, terms: BTreeMap::new() }
    }

    pub fn scalar(c: C) -> Self {
        let mut f = Form::zero(0);
        f.add_term(MultiIndex::empty(), c);
        f
    }

    /// `c * e^{idx}` with the indices in any order.
    pub fn monomial(idx: &[u8], c: C) -> Self {
        let mut f = Form::zero(idx.len());
        if let Some((m, s)) = MultiIndex::sorted(idx) {
            f.add_term(m, if s < 0 { c.negated() } else { c });
        }
        f
    }

    pub fn basis(idx: &[u8]) -> Self {
        Form::monomial(idx, C::unit())
    }

    /// Builds a form from integer-weighted basis words.
    pub fn from_words(degree: usize, words: &[(&[u8], i64)]) -> Self {
        let mut f = Form::zero(degree);
        for (idx, w) in words {
            assert_eq!(idx.len(), degree, "word length differs from degree");
            f = &f + &Form::monomial(idx, C::from_rat(crate::scalars::int(*w)));
        }
        f
    }

    pub fn from_terms(degree: usize, it: impl IntoIterator<Item = (MultiIndex, C)>) -> Self {
        let mut f = Form::zero(degree);
        for (m, c) in it {
            assert_eq!(m.degree(), degree, "index {m:?} in a {degree}-form");
            f.add_term(m, c);
        }
        f
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Structural zero test. Use [`Form::is_zero_normalized`] when the
    /// coefficients may hide cancellations.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero_normalized(&self) -> bool {
        self.terms.values().all(|c| c.is_nil_normalized())
    }

    pub fn coeff(&self, m: MultiIndex) -> C {
        self.terms.get(&m).cloned().unwrap_or_else(C::nil)
    }

    /// Coefficient of `e^{idx}`, with the sign of reordering applied.
    pub fn coeff_of(&self, idx: &[u8]) -> C {
        match MultiIndex::sorted(idx) {
            Some((m, s)) if s < 0 => self.coeff(m).negated(),
            Some((m, _)) => self.coeff(m),
            None => C::nil(),
        }
    }

    /// The coefficient of `e0123456` in a 7-form.
    pub fn top(&self) -> C {
        self.coeff(MultiIndex::full())
    }

    fn add_term(&mut self, m: MultiIndex, c: C) {
        if c.is_nil() {
            return;
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let s = old.plus(&c);
                if !s.is_nil() {
                    self.terms.insert(m, s);
                }
            }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Form::from_terms(self.degree, self.terms.iter().map(|(m, v)| (*m, v.times(c))))
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        Form::from_terms(self.degree, self.terms.iter().map(|(m, v)| (*m, v.scaled(r))))
    }

    pub fn wedge(&self, o: &Form<C>) -> Form<C> {
        let degree = self.degree + o.degree;
        let mut out = Form::zero(degree);
        if degree > DIM as usize {
            return out;
        }
        for (a, ca) in self.terms.iter() {
            for (b, cb) in o.terms.iter() {
                if let Some(s) = a.wedge_sign(*b) {
                    let c = ca.times(cb);
                    out.add_term(MultiIndex(a.0 | b.0), if s < 0 { c.negated() } else { c });
                }
            }
        }
        out
    }

    pub fn power(&self, n: u32) -> Form<C> {
        let mut acc = Form::scalar(C::unit());
        for _ in 0..n {
            acc = acc.wedge(self);
        }
        acc
    }

    /// Contraction with the frame vector `e_k`.
    pub fn contract(&self, k: u8) -> Result<Form<C>, ExteriorError> {
        if self.degree == 0 {
            return Err(ExteriorError::DegreeZero);
        }
        let mut out = Form::zero(self.degree - 1);
        for (m, c) in self.terms.iter() {
            if !m.contains(k) {
                continue;
            }
            let before = (m.0 & ((1u8 << k) - 1)).count_ones();
            let rest = MultiIndex(m.0 & !(1 << k));
            out.add_term(rest, if before % 2 == 1 { c.negated() } else { c.clone() });
        }
        Ok(out)
    }

    pub fn interior(&self, v: &Vector<C>) -> Result<Form<C>, ExteriorError> {
        let mut out = Form::zero(self.degree.saturating_sub(1));
        if self.degree == 0 {
            return Err(ExteriorError::DegreeZero);
        }
        for (k, vk) in v.0.iter().enumerate() {
            if !vk.is_nil() {
                out = &out + &self.contract(k as u8)?.scale(vk);
            }
        }
        Ok(out)
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> Form<D> {
        Form::from_terms(self.degree, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    pub fn try_map<D: Ring, E>(&self, f: impl Fn(&C) -> Result<D, E>) -> Result<Form<D>, E> {
        let mut out = Form::zero(self.degree);
        for (m, c) in self.terms.iter() {
            out.add_term(*m, f(c)?);
        }
        Ok(out)
    }

    /// Canonical representative with normalized coefficients.
    pub fn normalized(&self) -> Self {
        self.map(|c| c.normalized())
    }

    /// Equality after normalizing coefficients.
    pub fn same_as(&self, o: &Form<C>) -> bool {
        (self - o).is_zero_normalized()
    }

    pub fn try_add(&self, o: &Form<C>) -> Result<Form<C>, ExteriorError> {
        if self.degree != o.degree && !self.is_zero() && !o.is_zero() {
            return Err(ExteriorError::DegreeMismatch { left: self.degree, right: o.degree });
        }
        let degree = if self.is_zero() { o.degree } else { self.degree };
        let mut out = Form { degree, terms: self.terms.clone() };
        for (m, c) in o.terms.iter() {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn negated(&self) -> Self {
        self.map(|c| c.negated())
    }

    /// Pulls back along the linear map sending each `e^a` to `images[a]`.
    pub fn pullback(&self, images: &[Form<C>; DIM as usize]) -> Form<C> {
        let mut out = Form::zero(self.degree());
        for (m, c) in self.terms() {
            let img = m.indices().fold(Form::scalar(c.clone()), |acc, i| acc.wedge(&images[i as usize]));
            out = &out + &img;
        }
        out
    }
}

impl<C: Ring> PartialEq for Form<C> {
    /// Zero forms compare equal whatever their degree.
    fn eq(&self, o: &Self) -> bool {
        if self.terms.is_empty() && o.terms.is_empty() {
            return true;
        }
        self.degree == o.degree && self.terms == o.terms
    }
}

impl<C: Ring> fmt::Debug for Form<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_form(self, RenderStyle::Plain))
    }
}

impl<C: Ring> fmt::Display for Form<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_form(self, RenderStyle::Plain))
    }
}

impl<'a, C: Ring> Add<&'a Form<C>> for &'a Form<C> {
    type Output = Form<C>;
    /// Panics on a degree mismatch between nonzero forms.
    fn add(self, o: &'a Form<C>) -> Form<C> {
        self.try_add(o).expect("adding forms of different degrees")
    }
}

impl<'a, C: Ring> Sub<&'a Form<C>> for &'a Form<C> {
    type Output = Form<C>;
    fn sub(self, o: &'a Form<C>) -> Form<C> {
        self.try_add(&o.negated()).expect("subtracting forms of different degrees")
    }
}

impl<C: Ring> Neg for &Form<C> {
    type Output = Form<C>;
    fn neg(self) -> Form<C> {
        self.negated()
    }
}

impl<'a, C: Ring> BitXor<&'a Form<C>> for &'a Form<C> {
    type Output = Form<C>;
    fn bitxor(self, o: &'a Form<C>) -> Form<C> {
        self.wedge(o)
    }
}

/// A tangent vector in components against the frame `e_0..e_6`.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector<C: Ring>(pub [C; 7]);

impl<C: Ring> Vector<C> {
    pub fn frame(k: u8) -> Self {
        let mut v: [C; 7] = std::array::from_fn(|_| C::nil());
        v[k as usize] = C::unit();
        Vector(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, Rat};

    type F = Form<Rat>;

    fn e(idx: &[u8]) -> F {
        F::basis(idx)
    }

    #[test]
    fn index_order_is_lexicographic() {
        let a = MultiIndex::sorted(&[0, 5, 6]).unwrap().0;
        let b = MultiIndex::sorted(&[1, 2, 3]).unwrap().0;
        assert!(a < b);
        assert_eq!(MultiIndex::of_degree(3).len(), 35);
        assert_eq!(MultiIndex::sorted(&[3, 1, 5]).unwrap().1, -1);
        assert_eq!(MultiIndex::sorted(&[4, 1]).unwrap().1, -1);
        assert!(MultiIndex::sorted(&[2, 2]).is_none());
    }

    #[test]
    fn wedge_basics() {
        assert_eq!(&e(&[1]) ^ &e(&[2]), e(&[1, 2]));
        assert_eq!(&e(&[2]) ^ &e(&[1]), -&e(&[1, 2]));
        assert!((&e(&[1, 2]) ^ &e(&[1, 2])).is_zero());
        let dtheta = &(&e(&[4, 1]) + &e(&[5, 2])) + &e(&[6, 3]);
        let cube = dtheta.power(3);
        assert_eq!(cube, e(&[1, 2, 3, 4, 5, 6]).scale_rat(&int(6)));
    }

    #[test]
    fn degree_overflow_is_zero() {
        let top = e(&[0, 1, 2, 3, 4, 5, 6]);
        let w = &top ^ &e(&[0]);
        assert!(w.is_zero());
        assert_eq!(w.degree(), 8);
    }

    #[test]
    fn contraction_signs() {
        assert_eq!(e(&[4, 1]).contract(4).unwrap(), e(&[1]));
        assert_eq!(e(&[4, 1]).contract(1).unwrap(), -&e(&[4]));
        assert_eq!(e(&[0, 1, 2, 3]).contract(0).unwrap(), e(&[1, 2, 3]));
        assert_eq!(F::scalar(int(2)).contract(0), Err(ExteriorError::DegreeZero));
    }

    #[test]
    fn zero_forms_of_any_degree_agree() {
        assert_eq!(F::zero(2), F::zero(5));
        assert_ne!(F::zero(2), e(&[1, 2]));
    }

    #[test]
    fn sums_of_mismatched_degrees_fail() {
        assert!(e(&[1]).try_add(&e(&[1, 2])).is_err());
        assert_eq!(F::zero(3).try_add(&e(&[1])).unwrap(), e(&[1]));
    }
}
