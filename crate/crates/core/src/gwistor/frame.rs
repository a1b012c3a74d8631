use super::metric::Parts;
use super::{Coeffs, Convention, GwistorError};
use crate::exterior::Form;
use crate::scalars::{exp, Exp, Gen, Poly, RadPrefactor, Ring, ScaledScalar, Surd, Sym};

/// An oriented orthonormal coframe `ẽ^a` for the metric of `σ`.
///
/// `coframe[a]` is `ẽ^a` written in the `e` basis; `inverse[a]` is `e^a`
/// written in the `ẽ` basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Frame<C: Ring> {
    pub convention: Convention,
    pub coframe: [Form<C>; 7],
    pub inverse: [Form<C>; 7],
}

fn one_form<C: Ring>(parts: &[(u8, C)]) -> Form<C> {
    parts.iter().fold(Form::zero(1), |acc, (i, c)| &acc + &Form::monomial(&[*i], c.clone()))
}

impl Frame<ScaledScalar> {
    pub fn symbolic(conv: Convention) -> Self {
        let p = Parts::of(conv);
        let d = p.d_gen;
        let pref = |t: Exp, extra: &[(Gen, Exp)]| {
            let mut r = p.t_pow(conv, t);
            for &(g, e) in extra {
                r = r.mul(&RadPrefactor::single(g, e));
            }
            r
        };
        let term = |r: RadPrefactor, body: Poly| ScaledScalar::term(r, body);
        let half = exp(1, 2);
        let one = Poly::one();

        let mut coframe: [Form<ScaledScalar>; 7] = std::array::from_fn(|_| Form::zero(1));
        let mut inverse: [Form<ScaledScalar>; 7] = std::array::from_fn(|_| Form::zero(1));
        coframe[0] = one_form(&[(0, term(pref(half, &[]), Poly::var(Sym::F4)))]);
        inverse[0] = one_form(&[(0, term(pref(-half, &[(Gen::F4, exp(-1, 1))]), one.clone()))]);
        for i in 1..4u8 {
            coframe[i as usize] = one_form(&[
                (i, term(pref(half, &[(Gen::X, half)]), one.clone())),
                (i + 3, term(pref(half, &[(Gen::X, -half)]), p.w.clone())),
            ]);
            coframe[i as usize + 3] =
                one_form(&[(i + 3, term(pref(half, &[(d, half), (Gen::X, -half)]), one.clone()))]);
            inverse[i as usize] = one_form(&[
                (i, term(pref(-half, &[(Gen::X, -half)]), one.clone())),
                (i + 3, term(pref(-half, &[(Gen::X, -half), (d, -half)]), -&p.w)),
            ]);
            inverse[i as usize + 3] =
                one_form(&[(i + 3, term(pref(-half, &[(Gen::X, half), (d, -half)]), one.clone()))]);
        }
        Frame { convention: conv, coframe, inverse }
    }

    /// The frame at exact coefficients. The caller owns stability.
    pub fn evaluate(&self, c: &Coeffs) -> Result<Frame<Surd>, GwistorError> {
        let a = c.assignment()?;
        let ev = |f: &Form<ScaledScalar>| f.try_map(|s| s.eval_surd(&a));
        let mut coframe: [Form<Surd>; 7] = std::array::from_fn(|_| Form::zero(1));
        let mut inverse: [Form<Surd>; 7] = std::array::from_fn(|_| Form::zero(1));
        for k in 0..7 {
            coframe[k] = ev(&self.coframe[k])?;
            inverse[k] = ev(&self.inverse[k])?;
        }
        Ok(Frame { convention: self.convention, coframe, inverse })
    }
}

impl Frame<Surd> {
    pub fn exact(c: &Coeffs, conv: Convention) -> Result<Self, GwistorError> {
        super::metric_data(c, conv)?;
        Frame::symbolic(conv).evaluate(c)
    }
}

impl<C: Ring> Frame<C> {
    /// Rewrites a form given in the `e` basis in the `ẽ` basis.
    pub fn to_tilde(&self, a: &Form<C>) -> Form<C> {
        a.pullback(&self.inverse)
    }

    /// Rewrites a form given in the `ẽ` basis in the `e` basis.
    pub fn from_tilde(&self, a: &Form<C>) -> Form<C> {
        a.pullback(&self.coframe)
    }

    /// `inverse ∘ coframe - id` on each `e^a`; all zero for a valid frame.
    pub fn round_trip_defects(&self) -> Vec<Form<C>> {
        (0..7u8)
            .map(|a| {
                let e = Form::<C>::basis(&[a]);
                (&self.from_tilde(&self.inverse[a as usize]) - &e).normalized()
            })
            .collect()
    }

    /// `ẽ^0 ∧ .. ∧ ẽ^6` in the `e` basis.
    pub fn volume(&self) -> Form<C> {
        self.coframe.iter().fold(Form::scalar(C::unit()), |acc, f| acc.wedge(f)).normalized()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::MultiIndex;
    use crate::gwistor::MetricData;

    #[test]
    fn symbolic_round_trip_is_identity() {
        for conv in [Convention::Induced, Convention::Block] {
            let fr = Frame::symbolic(conv);
            assert!(fr.round_trip_defects().iter().all(|d| d.is_zero()), "{conv:?}");
        }
    }

    #[test]
    fn volume_is_m_times_vol_g() {
        for conv in [Convention::Induced, Convention::Block] {
            let vol = Frame::symbolic(conv).volume();
            let m = MetricData::symbolic(conv).m;
            assert_eq!(vol.len(), 1);
            assert!(ScaledScalar::scaled_equal(&vol.coeff(MultiIndex::full()), &m));
        }
    }

    #[test]
    fn sigma0_frame_is_the_identity() {
        let fr = Frame::exact(&Coeffs::sigma0(), Convention::Induced).unwrap();
        for a in 0..7u8 {
            assert_eq!(fr.coframe[a as usize], Form::basis(&[a]));
        }
    }

    #[test]
    fn coframe_reproduces_the_metric() {
        // g(e_i, e_j) = sum_a ẽ^a(e_i) ẽ^a(e_j).
        for conv in [Convention::Induced, Convention::Block] {
            let fr = Frame::symbolic(conv);
            let md = MetricData::symbolic(conv);
            for i in 0..7u8 {
                for j in 0..7u8 {
                    let mut s = ScaledScalar::zero();
                    for a in 0..7 {
                        s = &s + &(&fr.coframe[a].coeff_of(&[i]) * &fr.coframe[a].coeff_of(&[j]));
                    }
                    assert!(ScaledScalar::scaled_equal(&s, &md.g[i as usize][j as usize]), "{conv:?} {i}{j}");
                }
            }
        }
    }
}
