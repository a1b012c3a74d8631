use std::collections::BTreeMap;
use std::time::Instant;

use super::circle::circle_sigma;
use super::cocalibration::literal;
use super::sweep::{sweep_cached, SweepConfig, SweepReport};
use super::{as_poly, Certificate, Context, Verdict};
use crate::calculus::{d, decompose, star_sigma_closed, torsion_report, CalculusError, CurvatureModel};
use crate::exterior::Form;
use crate::gwistor::{Coeffs, Convention, ExactStar, InvariantForms};
use crate::scalars::{int, rat, Gen, Poly, QuadNum, Rat, ScaledScalar, Surd, Sym};

type S = ScaledScalar;

/// Component names of the degree-4 invariant forms, in span order.
const COMPONENTS: [&str; 5] = ["theta^alpha", "theta^alpha1", "theta^alpha2", "theta^alpha3", "dtheta^2"];

/// `σ±` in the basis `(α, α1, α2, α3, θ∧dθ)`.
pub fn sigma_pm(sign: i64) -> Coeffs {
    let h = |s: i64| QuadNum::sqrt2().scale(&rat(s * sign, 2));
    Coeffs::Exact([h(-1), h(-1), h(1), h(1), QuadNum::sqrt6().scale(&rat(1, 2))])
}

/// `dσ - c *σ = 0` on the family `σ = -a α - b α1 + a α2 + b α3 + f4 θ∧dθ`
/// with `(a, b) = (f0, f1)` on the unit circle and constant curvature `k`,
/// one polynomial per invariant 4-form, reduced modulo `f0² + f1² = 1`.
pub fn regenerated_system(f: &InvariantForms) -> Result<Vec<(String, Poly)>, CalculusError> {
    let sigma = circle_sigma(f, S::sym(Sym::F4));
    let ds = d(&sigma, &CurvatureModel::symbolic_k(), f)?.form;

    // On the circle x = y = 1 and z = 0, so q = h = 1 and t = 1.
    let syms: BTreeMap<Sym, Poly> = [
        (Sym::X, Poly::one()),
        (Sym::Y, Poly::one()),
        (Sym::Z, Poly::zero()),
        (Sym::Q, Poly::one()),
        (Sym::H, Poly::one()),
    ]
    .into_iter()
    .collect();
    let gens: BTreeMap<Gen, Rat> = [(Gen::X, int(1)), (Gen::Q, int(1))].into_iter().collect();
    let coef = |i: usize| -> S {
        let a = S::sym(Sym::F0);
        let b = S::sym(Sym::F1);
        [-&a, -&b, a, b, S::sym(Sym::F4)][i].clone()
    };
    // The closed-form star uses f0..f4 as the coefficients of σ; rename them.
    let rename: BTreeMap<Sym, Poly> = (0..5).map(|i| (Sym::f(i), as_poly(&coef(i)).expect("polynomial"))).collect();
    let star = star_sigma_closed(Convention::Induced, f)
        .try_map(|s| s.substitute(&syms, &gens).and_then(|s| s.substitute(&rename, &BTreeMap::new())))?;
    let e = &ds - &star.scale(&S::sym(Sym::C));
    let parts = decompose(&e, f)?;
    COMPONENTS
        .iter()
        .map(|name| {
            let words: Vec<&str> = match *name {
                "dtheta^2" => vec!["dtheta", "dtheta"],
                other => other.split('^').collect(),
            };
            let p = match parts.iter().find(|(w, _)| *w == words.as_slice()) {
                Some((_, s)) => as_poly(s)?.reduce_circle(),
                None => Poly::zero(),
            };
            Ok((name.to_string(), p))
        })
        .collect()
}

/// The five equations as stated with the known solutions, in `f0, f1, f4, k, c`.
pub fn displayed_system() -> Vec<(String, Poly)> {
    [
        "c - 2*f4",
        "f0*f1 - k*f0^2",
        "2*f0*f1*k + f0*f1 - 3*f1^2",
        "3*f1 - 2*f0*f4^2",
        "2*f0 + k*f0 - 2*f0*f4^2",
    ]
    .iter()
    .map(|t| (t.to_string(), literal(t)))
    .collect()
}

fn at_solution(sign: i64) -> BTreeMap<Sym, QuadNum> {
    let r2 = QuadNum::sqrt2().scale(&rat(sign, 2));
    [
        (Sym::F0, r2.clone()),
        (Sym::F1, r2),
        (Sym::F4, QuadNum::sqrt6().scale(&rat(1, 2))),
        (Sym::K, QuadNum::rational(int(1))),
        (Sym::C, QuadNum::sqrt6()),
    ]
    .into_iter()
    .collect()
}

fn describe(r: &SweepReport) -> String {
    let mut s = format!(
        "{} solutions off the known ones ({} grid points, {} seeds, {} known found{})",
        r.unknown.len(),
        r.grid_points,
        r.seeds,
        r.known,
        if r.truncated { ", refinements truncated" } else { "" }
    );
    for x in r.unknown.iter().take(4) {
        s += &format!("; (phi, k, f4, c) = ({:.6}, {:.6}, {:.6}, {:.6})", x.phi, x.k, x.f4, x.c);
    }
    s
}

/// The nearly-parallel structures over the circle family with `z = 0`.
pub fn verify_nearly_parallel(ctx: &Context) -> Verdict {
    let start = Instant::now();
    let mut c = Certificate::default();
    let f = &ctx.forms;
    let sqrt6 = Surd::from_quad(&QuadNum::sqrt6());

    for (sign, label) in [(1, "+"), (-1, "-")] {
        let claim = format!("d sigma{label} = sqrt6 *sigma{label} at k = 1");
        c.attempt(&claim.clone(), |c| {
            let co = sigma_pm(sign);
            let sigma: Form<Surd> = f.sigma(&co.surds()?);
            let st = ExactStar::new(&co, Convention::Induced)?;
            let ds = d(&sigma, &CurvatureModel::constant(1), f)?.form;
            c.forms(claim, &ds, &st.apply(&sigma).scale(&sqrt6));
            Ok::<_, CalculusError>(())
        });
    }

    let system = match regenerated_system(f) {
        Ok(s) => s,
        Err(e) => {
            c.error("component system of d sigma = c *sigma", e);
            return c.finish("np", None, start);
        }
    };
    c.fact(
        "component system of d sigma = c *sigma (recorded)",
        system.iter().map(|(n, p)| format!("{n}: {}", p.render())).collect::<Vec<_>>().join("; "),
        "stated: ".to_string()
            + &displayed_system().iter().map(|(t, _)| t.as_str()).collect::<Vec<_>>().join("; "),
    );
    for (sign, label) in [(1, "+"), (-1, "-")] {
        let at = at_solution(sign);
        for (what, sys) in [("component", &system), ("stated", &displayed_system())] {
            let vals: Vec<String> = sys
                .iter()
                .map(|(_, p)| p.eval_quad(&at).map(|v| v.render()).unwrap_or_else(|e| e.to_string()))
                .collect();
            let ok = vals.iter().all(|v| v == "0");
            c.check(format!("sigma{label} solves the {what} system"), vals.join(", "), "0, 0, 0, 0, 0", ok);
        }
    }
    let circle_check: Vec<Poly> = system
        .iter()
        .map(|(_, p)| {
            let m = [(Sym::K, Poly::one()), (Sym::C, Poly::var(Sym::F4).scale(&int(2)))].into_iter().collect();
            p.substitute(&m).reduce_square(Sym::F4, &Poly::constant(rat(3, 2))).reduce_circle()
        })
        .collect();
    c.check(
        "the whole circle solves the component system at k = 1, f4^2 = 3/2, c = 2 f4",
        circle_check.iter().map(|p| p.render()).collect::<Vec<_>>().join(", "),
        "0, 0, 0, 0, 0",
        circle_check.iter().all(|p| p.is_zero()),
    );

    let cfg = SweepConfig::default();
    let polys: Vec<Poly> = system.iter().map(|(_, p)| p.clone()).collect();
    match sweep_cached(&polys, &cfg) {
        Ok(r) => c.check(
            "grid sweep of the component system: no solutions off sigma+-",
            describe(&r),
            "0 solutions off the known ones",
            r.unknown.is_empty() && !r.truncated && r.known == 2,
        ),
        Err(e) => c.error("grid sweep of the component system: no solutions off sigma+-", e),
    }
    let shown: Vec<Poly> = displayed_system().into_iter().map(|(_, p)| p).collect();
    match sweep_cached(&shown, &cfg) {
        Ok(r) => c.check(
            "grid sweep of the stated system: no solutions off sigma+-",
            describe(&r),
            "0 solutions off the known ones",
            r.unknown.is_empty() && !r.truncated && r.known == 2,
        ),
        Err(e) => c.error("grid sweep of the stated system: no solutions off sigma+-", e),
    }

    let phi0 = Coeffs::Exact([
        QuadNum::rational(int(-1)),
        QuadNum::zero(),
        QuadNum::rational(int(1)),
        QuadNum::zero(),
        QuadNum::sqrt6().scale(&rat(1, 2)),
    ]);
    c.attempt("phi = 0 witness", |c| {
        let r = torsion_report(&phi0, &CurvatureModel::constant(1), f)?;
        c.check(
            "sigma = -alpha + alpha2 + sqrt(3/2) theta^dtheta is not nearly-parallel at k = 1",
            format!("d sigma = c *sigma with c = {}", r.nearly_parallel_c.as_deref().unwrap_or("none")),
            "no such c",
            r.nearly_parallel_c.is_none(),
        );
        Ok::<_, CalculusError>(())
    });

    c.attempt("scaling line", |c| {
        let s = QuadNum::rational(int(8));
        let co = sigma_pm(1).scaled(&s);
        let sigma: Form<Surd> = f.sigma(&co.surds()?);
        let ds = d(&sigma, &CurvatureModel::constant(1), f)?.form;
        let rhs = ExactStar::new(&co, Convention::Induced)?.apply(&sigma).scale(&sqrt6).scale(&Surd::from_rat(rat(1, 2)));
        let diff = &ds - &rhs;
        let dev = diff.terms().map(|(_, v)| v.to_f64().map_or(f64::INFINITY, f64::abs)).fold(0.0, f64::max);
        let nonzero = ds.terms().count();
        c.check(
            "d(8 sigma+) = sqrt6 8^(-1/3) *_(8 sigma+)(8 sigma+) to 1e-12",
            format!("max deviation {dev:.3e} over {nonzero} components"),
            "< 1e-12",
            dev < 1e-12 && nonzero > 0,
        );
        Ok::<_, CalculusError>(())
    });
    c.finish("np", None, start)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn component_system_is_the_circle_system() {
        let sys = regenerated_system(&InvariantForms::standard()).unwrap();
        let want = [
            "f1*f4*c - 3*f1",
            "-f0*f4*c + f0*k + 2*f0",
            "-f1*f4*c + 2*f1*k + f1",
            "f0*f4*c - 3*f0*k",
            "f4 - 1/2*c",
        ];
        for ((name, got), (n, w)) in sys.iter().zip(COMPONENTS.iter().zip(want)) {
            assert_eq!(name, n);
            assert_eq!(got, &literal(w), "{name}");
        }
    }
}
