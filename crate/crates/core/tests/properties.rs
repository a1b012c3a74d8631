use proptest::prelude::*;

use gwistor::exterior::{parse_form, render_form, Form, MultiIndex, RenderStyle};
use gwistor::gwistor::{Coeffs, Convention, ExactStar};
use gwistor::scalars::{parse_scalar, rat, Poly, QuadNum, Rat, Surd, Sym};

fn small_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

/// Polynomials in f0..f3 with a handful of small terms.
fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((small_rat(), prop::collection::vec(0usize..4, 0..4)), 0..5).prop_map(|terms| {
        terms.into_iter().fold(Poly::zero(), |acc, (c, vars)| {
            let m = vars.into_iter().fold(Poly::constant(c), |p, v| &p * &Poly::var(Sym::f(v)));
            &acc + &m
        })
    })
}

fn quad() -> impl Strategy<Value = QuadNum> {
    (small_rat(), small_rat(), small_rat(), small_rat()).prop_map(|(a, b, c, d)| QuadNum::new(a, b, c, d))
}

fn form(p: usize) -> impl Strategy<Value = Form<Rat>> {
    let n = MultiIndex::of_degree(p).len();
    prop::collection::vec((0..n, small_rat()), 0..4).prop_map(move |terms| {
        let basis = MultiIndex::of_degree(p);
        Form::from_terms(p, terms.into_iter().map(|(i, c)| (basis[i], c)))
    })
}

fn stable_coeffs() -> impl Strategy<Value = Coeffs> {
    (small_rat(), small_rat(), small_rat(), small_rat(), 1i64..=4)
        .prop_map(|(a, b, c, d, e)| Coeffs::from_rats(&[a, b, c, d, rat(e, 1)]))
        .prop_filter("stable", |c| gwistor::gwistor::is_stable(c).map(|s| s.stable).unwrap_or(false))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn poly_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &Poly::zero(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn poly_division_inverts_multiplication(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_divide(&b).unwrap(), a);
    }

    #[test]
    fn poly_render_round_trips(a in poly()) {
        let back = parse_scalar(&a.render()).unwrap().to_symbolic_poly().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn quadratic_field_axioms(a in quad(), b in quad(), c in quad()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inverse().unwrap(), QuadNum::one());
        }
        let approx = (a.to_f64() * b.to_f64() - (&a * &b).to_f64()).abs();
        prop_assert!(approx < 1e-9 * (1.0 + a.to_f64().abs() * b.to_f64().abs()));
    }

    #[test]
    fn wedge_is_associative_and_graded(a in form(1), b in form(2), c in form(3)) {
        prop_assert_eq!(a.wedge(&b).wedge(&c), a.wedge(&b.wedge(&c)));
        prop_assert_eq!(a.wedge(&c), c.wedge(&a).negated());
        prop_assert_eq!(a.wedge(&b), b.wedge(&a));
        prop_assert!(a.wedge(&a).is_zero());
    }

    #[test]
    fn form_render_round_trips(a in form(3)) {
        let text = render_form(&a, RenderStyle::Plain);
        let back = parse_form(&text).unwrap();
        prop_assert_eq!(render_form(&back, RenderStyle::Plain), text);
    }

    #[test]
    fn star_is_an_involution_with_unit_norm_volume(c in stable_coeffs(), a in form(3)) {
        let s = ExactStar::new(&c, Convention::Induced).unwrap();
        let a: Form<Surd> = a.map(|r| Surd::from_rat(r.clone()));
        prop_assert!(s.apply(&s.apply(&a)).same_as(&a));
        let one: Form<Surd> = Form::scalar(Surd::one());
        let vol = s.apply(&one);
        prop_assert_eq!(s.norm_sq(&vol), Surd::one());
    }
}
