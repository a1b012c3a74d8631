use std::time::Instant;

use super::{stable_samples, Certificate, Context, Verdict};
use crate::exterior::{Form, MultiIndex};
use crate::gwistor::{hodge_closed_form, star, ClosedForm, Coeffs, Convention, ExactStar, Frame, GwistorError};
use crate::scalars::{rat, QuadNum, ScaledScalar, Surd};

/// Sample at which the two metric conventions are compared numerically.
fn witness() -> Coeffs {
    Coeffs::from_rats(&[rat(-1, 1), rat(1, 2), rat(1, 1), rat(0, 1), rat(1, 1)])
}

fn evaluate(a: &Form<ScaledScalar>, c: &Coeffs) -> Result<Form<Surd>, GwistorError> {
    let asg = c.assignment()?;
    Ok(a.try_map(|s| s.eval_surd(&asg))?.normalized())
}

/// Closed formulas for `*σ` of the basis forms, `** = 1` and homogeneity of
/// degree 1/3 in `σ`.
pub fn verify_hodge_theorem(ctx: &Context) -> Verdict {
    let start = Instant::now();
    let mut c = Certificate::default();
    let f = &ctx.forms;
    let induced = Frame::symbolic(Convention::Induced);
    let block = Frame::symbolic(Convention::Block);
    let w = witness();
    let exact = ExactStar::new(&w, Convention::Induced);

    for which in ClosedForm::ALL {
        let name = which.name();
        let form = which.form::<ScaledScalar>(f);
        let closed = hodge_closed_form(which, Convention::Block, f);
        let oracle = star(&form, &induced);
        c.forms(format!("*{name}: closed formula = star of the induced metric"), &closed, &oracle);
        c.attempt(&format!("*{name}: closed formula at (-1, 1/2, 1, 0, 1)"), |c| {
            let ex = exact.as_ref().map_err(|e| e.clone())?;
            let got = evaluate(&closed, &w)?;
            let asg = w.assignment()?;
            let want = ex.apply(&form.try_map(|s| s.eval_surd(&asg))?);
            c.forms(format!("*{name}: closed formula at (-1, 1/2, 1, 0, 1)"), &got, &want);
            Ok::<_, GwistorError>(())
        });
        c.forms(
            format!("*{name}: closed formula with z/2, q = star of the induced metric"),
            &hodge_closed_form(which, Convention::Induced, f),
            &oracle,
        );
        c.forms(
            format!("*{name}: closed formula = star of the block metric"),
            &closed,
            &star(&form, &block),
        );
    }
    c.attempt("*alpha1 at sigma0 = -theta^alpha2", |c| {
        let got = evaluate(&hodge_closed_form(ClosedForm::Alpha1, Convention::Block, f), &Coeffs::sigma0())?;
        c.forms("*alpha1 at sigma0 = -theta^alpha2", &got, &-&f.theta::<Surd>().wedge(&f.alpha(2)));
        Ok::<_, GwistorError>(())
    });

    let samples = stable_samples(ctx.seed, 5, false);
    for s in &samples {
        c.attempt(&format!("** = 1 at ({s})"), |c| {
            let st = ExactStar::new(s, Convention::Induced)?;
            let bad = (0..=7)
                .flat_map(MultiIndex::of_degree)
                .find(|m| {
                    let e = Form::<Surd>::monomial(&m.indices().collect::<Vec<_>>(), Surd::one());
                    !st.apply(&st.apply(&e)).same_as(&e)
                });
            c.check(
                format!("** = 1 on all degrees at ({s})"),
                bad.map_or("identity".into(), |m| format!("fails on e{}", m.label())),
                "identity",
                bad.is_none(),
            );
            Ok::<_, GwistorError>(())
        });
        for (k, root) in [(8, 2), (27, 3)] {
            c.attempt(&format!("homogeneity s = {k} at ({s})"), |c| {
                let st = ExactStar::new(s, Convention::Induced)?;
                let sk = ExactStar::new(&s.scaled(&QuadNum::rational(rat(k, 1))), Convention::Induced)?;
                let r = Surd::from_int(root);
                let bad = MultiIndex::of_degree(3).into_iter().find(|m| {
                    let e = Form::<Surd>::monomial(&m.indices().collect::<Vec<_>>(), Surd::one());
                    !sk.apply(&e).same_as(&st.apply(&e).scale(&r))
                });
                c.check(
                    format!("*_(s sigma) = s^(1/3) *_sigma on 3-forms, s = {k}, at ({s})"),
                    bad.map_or(format!("{root} *_sigma"), |m| format!("fails on e{}", m.label())),
                    format!("{root} *_sigma"),
                    bad.is_none(),
                );
                Ok::<_, GwistorError>(())
            });
        }
    }
    c.finish("hodge", Some(ctx.seed), start)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn only_the_block_formulas_disagree_with_the_induced_star() {
        let v = verify_hodge_theorem(&Context::default());
        for e in &v.certificate {
            let block_vs_induced = e.claim.ends_with(": closed formula = star of the induced metric")
                || e.claim.ends_with("at (-1, 1/2, 1, 0, 1)");
            assert_eq!(e.equal, !block_vs_induced, "{}: {} vs {}", e.claim, e.lhs, e.rhs);
        }
    }
}
