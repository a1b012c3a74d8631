use std::time::Instant;

use super::{as_poly, Certificate, Context, Verdict};
use crate::exterior::Form;
use crate::gwistor::{pairing_matrix, InvariantForms};
use crate::scalars::{Poly, ScaledScalar, Sym};

type S = ScaledScalar;
type F = Form<S>;

/// `-a α - b α1 + a α2 + b α3 + f4 θ∧dθ` with `a = f0`, `b = f1` symbolic.
pub(crate) fn circle_sigma(f: &InvariantForms, f4: S) -> F {
    let a = S::sym(Sym::F0);
    let b = S::sym(Sym::F1);
    f.sigma(&[-&a, -&b, a, b, f4])
}

/// Applies a polynomial map to every coefficient.
pub(crate) fn map_poly(a: &F, g: impl Fn(&Poly) -> Poly) -> Result<F, crate::scalars::ScalarError> {
    a.try_map(|s| as_poly(s).map(|p| S::from_poly(g(&p))))
}

/// Complex forms as `(real, imaginary)`.
fn cwedge(x: &(F, F), y: &(F, F)) -> (F, F) {
    (&x.0.wedge(&y.0) - &x.1.wedge(&y.1), &x.0.wedge(&y.1) + &x.1.wedge(&y.0))
}

fn cscale(w: &(S, S), x: &(F, F)) -> (F, F) {
    (&x.0.scale(&w.0) - &x.1.scale(&w.1), &x.1.scale(&w.0) + &x.0.scale(&w.1))
}

/// The circle of structures inducing the Sasaki metric, and the `U(1)` action
/// producing it from `σ0`.
pub fn verify_sasaki_circle(ctx: &Context) -> Verdict {
    let start = Instant::now();
    let mut c = Certificate::default();
    let f = &ctx.forms;
    let circle = |p: &Poly| p.reduce_circle();

    let sigma = circle_sigma(f, S::one());
    let p = pairing_matrix(&sigma);
    c.attempt("circle metric = identity", |c| {
        let mut worst = None;
        for i in 0..7 {
            for j in 0..7 {
                let got = circle(&as_poly(&p[i][j])?);
                let want = if i == j { Poly::int(6) } else { Poly::zero() };
                if got != want && worst.is_none() {
                    worst = Some(format!("P{i}{j} = {}", got.render()));
                }
            }
        }
        c.check(
            "pairing matrix = 6 * identity mod f0^2 + f1^2 = 1",
            worst.clone().unwrap_or_else(|| "6 * identity".into()),
            "6 * identity",
            worst.is_none(),
        );
        Ok::<_, crate::scalars::ScalarError>(())
    });
    let on_circle = [
        (Sym::F2, -&Poly::var(Sym::F0)),
        (Sym::F3, -&Poly::var(Sym::F1)),
        (Sym::F4, Poly::one()),
    ]
    .into_iter()
    .collect();
    let q = circle(&Poly::derived(Sym::Q).expect("q").substitute(&on_circle));
    c.polys("q = 1 mod f0^2 + f1^2 = 1, hence m = f4 q^(1/3) = 1", &q, &Poly::one());

    // η = (e1 + i e4)(e2 + i e5)(e3 + i e6)
    let e = |k: u8| F::basis(&[k]);
    let eta = (1..4u8).fold((F::scalar(S::one()), F::zero(0)), |acc, j| cwedge(&acc, &(e(j), e(j + 3))));
    c.forms("Re eta = alpha3 - alpha1", &eta.0, &(&f.alpha(3) - &f.alpha(1)));
    c.forms("Im eta = alpha2 - alpha", &eta.1, &(&f.alpha(2) - &f.alpha(0)));

    let (cs, sn) = (S::sym(Sym::C), S::sym(Sym::S));
    let mut images: [F; 7] = std::array::from_fn(|k| e(k as u8));
    for j in 1..4u8 {
        images[j as usize] = &e(j).scale(&cs) - &e(j + 3).scale(&sn);
        images[j as usize + 3] = &e(j).scale(&sn) + &e(j + 3).scale(&cs);
    }
    let moved = (eta.0.pullback(&images).normalized(), eta.1.pullback(&images).normalized());
    let g3 = (0..3).fold((S::one(), S::zero()), |w, _| (&(&w.0 * &cs) - &(&w.1 * &sn), &(&w.0 * &sn) + &(&w.1 * &cs)));
    let want = cscale(&g3, &eta);
    c.forms("g.eta = g^3 eta (real part)", &moved.0, &want.0);
    c.forms("g.eta = g^3 eta (imaginary part)", &moved.1, &want.1);
    c.attempt("g fixes theta^dtheta", |c| {
        let tdt = map_poly(&f.theta_dtheta::<S>().pullback(&images), |p| {
            p.reduce_square(Sym::S, &(&Poly::one() - &Poly::var(Sym::C).pow(2)))
        })?;
        c.forms("g fixes theta^dtheta mod c^2 + s^2 = 1", &tdt, &f.theta_dtheta());
        Ok::<_, crate::scalars::ScalarError>(())
    });

    let (a, b) = (S::sym(Sym::F0), S::sym(Sym::F1));
    let w = (a, b);
    let acted = &cscale(&w, &eta).1 + &f.theta_dtheta();
    c.forms("Im((f0 + i f1) eta) + theta^dtheta = sigma(f0, f1)", &acted, &sigma);

    let at = |x: i64, y: i64| {
        let m = [(Sym::F0, Poly::int(x)), (Sym::F1, Poly::int(y))].into_iter().collect();
        map_poly(&sigma, |p| p.substitute(&m))
    };
    c.attempt("circle points", |c| {
        c.forms("(f0, f1) = (1, 0) gives sigma0", &at(1, 0)?, &f.sigma0());
        let want = &(&f.alpha::<S>(3) - &f.alpha(1)) + &f.theta_dtheta();
        c.forms("(f0, f1) = (0, 1) gives -alpha1 + alpha3 + theta^dtheta", &at(0, 1)?, &want);
        Ok::<_, crate::scalars::ScalarError>(())
    });
    c.finish("circle", None, start)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_suite_passes() {
        let v = verify_sasaki_circle(&Context::default());
        assert!(v.passed, "{:?}", v.failures().collect::<Vec<_>>());
    }
}
