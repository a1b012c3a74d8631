use std::time::Instant;

use num_traits::Zero;

use super::{Certificate, Context, Verdict};
use crate::calculus::{atoms, d, CurvatureModel};
use crate::exterior::{Form, MultiIndex};
use crate::gwistor::{Coeffs, Convention, ExactStar};
use crate::scalars::{int, Poly, Rat, ScaledScalar, Surd, Sym};

fn all_zero(c: &mut Certificate, claim: &str, forms: &[Form<Surd>]) {
    let eq = forms.iter().all(|f| f.is_zero_normalized());
    let lhs = forms.iter().map(|f| f.normalized().to_string()).collect::<Vec<_>>().join(", ");
    c.check(claim, format!("[{lhs}]"), "0", eq);
}

/// The first structure equations under the Hodge star of `σ0`.
pub fn verify_bse1(ctx: &Context) -> Verdict {
    let start = Instant::now();
    let mut c = Certificate::default();
    let f = &ctx.forms;
    let star = match ExactStar::new(&Coeffs::sigma0(), Convention::Induced) {
        Ok(s) => s,
        Err(e) => {
            c.error("sigma0 star", e);
            return c.finish("bse1", None, start);
        }
    };
    let st = |a: &Form<Surd>| star.apply(a);
    let th = f.theta::<Surd>();
    let dth = f.dtheta::<Surd>();
    let al: Vec<Form<Surd>> = (0..4).map(|i| f.alpha(i)).collect();
    let r = |n: i64, d: i64| Surd::from_rat(crate::scalars::rat(n, d));

    c.forms("*alpha = theta^alpha3", &st(&al[0]), &th.wedge(&al[3]));
    c.forms("theta^alpha3 = vol", &th.wedge(&al[3]), &f.vol());
    c.forms("*alpha1 = -theta^alpha2", &st(&al[1]), &-&th.wedge(&al[2]));
    c.forms("*alpha2 = theta^alpha1", &st(&al[2]), &th.wedge(&al[1]));
    c.forms("*dtheta = 1/2 theta^dtheta^2", &st(&dth), &th.wedge(&dth.power(2)).scale(&r(1, 2)));
    c.forms("*dtheta^2 = 2 theta^dtheta", &st(&dth.power(2)), &th.wedge(&dth).scale(&r(2, 1)));
    c.forms("*dtheta^3 = 6 theta", &st(&dth.power(3)), &th.scale(&r(6, 1)));
    let three_a3a = al[3].wedge(&al[0]).scale(&r(3, 1));
    let three_star_theta = st(&th).scale(&r(3, 1));
    c.forms("alpha1^alpha2 = 3 alpha3^alpha", &al[1].wedge(&al[2]), &three_a3a);
    c.forms("3 alpha3^alpha = 3 *theta", &three_a3a, &three_star_theta);
    c.forms("3 *theta = 1/2 dtheta^3", &three_star_theta, &dth.power(3).scale(&r(1, 2)));
    let by_i = |g: &dyn Fn(&Form<Surd>) -> Form<Surd>| (1..4).map(|i| g(&al[i])).collect::<Vec<_>>();
    all_zero(&mut c, "dtheta^alpha_i = 0", &by_i(&|a| dth.wedge(a)));
    all_zero(&mut c, "dtheta^*alpha_i = 0", &by_i(&|a| dth.wedge(&st(a))));
    all_zero(&mut c, "alpha3^alpha_i = 0", &by_i(&|a| al[3].wedge(a)));
    all_zero(
        &mut c,
        "dtheta^alpha = dtheta^*alpha = alpha^alpha1 = alpha^alpha2 = 0",
        &[dth.wedge(&al[0]), dth.wedge(&st(&al[0])), al[0].wedge(&al[1]), al[0].wedge(&al[2])],
    );
    c.finish("bse1", None, start)
}

/// Curvature atoms from the index-level tensor.
pub fn verify_curvature(ctx: &Context) -> Verdict {
    type S = ScaledScalar;
    let start = Instant::now();
    let mut c = Certificate::default();
    let f = &ctx.forms;
    let th = f.theta::<S>();
    let g = atoms::<S>(&CurvatureModel::Generic);
    c.forms("theta^R(alpha1) = -rho^vol", &th.wedge(&g.r_alpha1), &-&g.rho.wedge(&f.vol()));

    let k = S::sym(Sym::K);
    let cc = atoms::<S>(&CurvatureModel::symbolic_k());
    c.forms("constant k: R(alpha) = -k theta^alpha1", &cc.r_alpha, &th.wedge(&f.alpha(1)).scale(&-&k));
    c.forms(
        "constant k: R(alpha1) = -2k theta^alpha2",
        &cc.r_alpha1,
        &th.wedge(&f.alpha(2)).scale(&k.scale(&int(-2))),
    );
    let three_k = k.scale(&int(3));
    c.check("constant k: rbar = 3k", cc.rbar.render(), three_k.render(), ScaledScalar::scaled_equal(&cc.rbar, &three_k));
    c.forms("constant k: rho = 0", &cc.rho, &Form::zero(1));
    c.finish("curvature", None, start)
}

/// `θ∧dθ∧dσ = 6 f4 VolG` for symbolic coefficients and generic curvature.
pub fn verify_dsigma_never_vanishes(ctx: &Context) -> Verdict {
    let start = Instant::now();
    let mut c = Certificate::default();
    let f = &ctx.forms;
    let sigma = f.sigma::<ScaledScalar>(&std::array::from_fn(|i| ScaledScalar::sym(Sym::f(i))));
    c.attempt("theta^dtheta^dsigma = 6 f4 VolG", |c| {
        let ds = d(&sigma, &CurvatureModel::Generic, f)?;
        let lhs = f.theta_dtheta::<ScaledScalar>().wedge(&ds.form);
        let rhs = f.vol_g::<ScaledScalar>().scale(&ScaledScalar::from_poly(Poly::var(Sym::F4).scale(&int(6))));
        c.forms("theta^dtheta^dsigma = 6 f4 VolG", &lhs, &rhs);
        Ok::<_, crate::calculus::CalculusError>(())
    });
    c.finish("dsigma", None, start)
}

/// Rank of a rational matrix by Gaussian elimination.
pub(crate) fn rank(mut rows: Vec<Vec<Rat>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = &rows[r][col] / &pivot;
                for k in col..ncols {
                    let v = &rows[rank][k] * &factor;
                    rows[r][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `{α, α1, α2, α3, θ∧dθ}` has rank five in the 3-forms.
pub fn verify_independence(ctx: &Context) -> Verdict {
    let start = Instant::now();
    let mut c = Certificate::default();
    let basis = ctx.forms.basis3::<Rat>();
    let idx = MultiIndex::of_degree(3);
    let rows: Vec<Vec<Rat>> = basis.iter().map(|b| idx.iter().map(|m| b.coeff(*m)).collect()).collect();
    let r = rank(rows);
    c.check("rank {alpha, alpha1, alpha2, alpha3, theta^dtheta} = 5", r.to_string(), "5", r == 5);
    c.finish("independence", None, start)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn rank_of_small_matrices() {
        let m = |v: &[&[i64]]| v.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect();
        assert_eq!(rank(m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(m(&[&[0, 1], &[1, 0], &[1, 1]])), 2);
    }

    #[test]
    fn structural_suites_pass() {
        let ctx = Context::default();
        for v in [verify_bse1(&ctx), verify_curvature(&ctx), verify_dsigma_never_vanishes(&ctx), verify_independence(&ctx)] {
            assert!(v.passed, "{}: {:?}", v.name, v.failures().collect::<Vec<_>>());
        }
        assert_eq!(verify_bse1(&ctx).certificate.len(), 14);
    }
}
