//! Fixed reference values checked through the public API.

use std::collections::BTreeMap;

use gwistor::calculus::{atoms, canonical_r, d, CurvatureModel};
use gwistor::exterior::{parse_form, Form};
use gwistor::gwistor::{
    build_sigma_exact, hodge_closed_form, is_stable, m_from_determinant, metric_data, pairing_matrix, star,
    ClosedForm, Coeffs, Convention, ExactStar, Frame, InvariantForms,
};
use gwistor::scalars::{parse_scalar, rat, Poly, ScaledScalar, Surd, Sym};
use gwistor::theorems::{stable_samples, verify_bse1, Context};

fn exact(text: &str) -> Form<Surd> {
    parse_form(text).unwrap().try_map(|s| s.eval_surd(&BTreeMap::new())).unwrap()
}

fn form(text: &str) -> Form<ScaledScalar> {
    parse_form(text).unwrap()
}

fn floats(p: &[[Surd; 7]; 7]) -> [[f64; 7]; 7] {
    std::array::from_fn(|i| std::array::from_fn(|j| p[i][j].to_f64().unwrap()))
}

fn skew() -> Coeffs {
    Coeffs::parse("-1,1/2,1,0,1").unwrap()
}

#[test]
fn gram_determinant_recovers_the_volume_factor() {
    let mut cases = vec![Coeffs::sigma0(), skew()];
    cases.extend(stable_samples(11, 20, false));
    for c in cases {
        let p = floats(&pairing_matrix(&build_sigma_exact(&c).unwrap()));
        let md = metric_data(&c, Convention::Induced).unwrap();
        let m = md.m.to_f64().unwrap();
        let m_det = m_from_determinant(&p);
        assert!((m - m_det).abs() < 1e-9 * m.abs().max(1.0), "{c}: {m} vs {m_det}");
        let g = floats(&md.g);
        for i in 0..7 {
            for j in 0..7 {
                let want = p[i][j] / (6.0 * m);
                assert!((g[i][j] - want).abs() < 1e-9 * want.abs().max(1.0), "{c}: g[{i}][{j}]");
            }
        }
    }
}

/// The mixed entries come out as `3 f4 z`, half of the block-matrix value `6 f4 z`.
#[test]
fn pairing_at_a_skew_point() {
    let p = pairing_matrix(&build_sigma_exact(&skew()).unwrap());
    let r = |n, d| Surd::from_rat(rat(n, d));
    for i in 0..7 {
        for j in 0..7 {
            let want = match (i, j) {
                (i, j) if i == j && i < 4 => r(6, 1),
                (i, j) if i == j => r(15, 2),
                (i, j) if i + 3 == j && i > 0 || j + 3 == i && j > 0 => r(3, 2),
                _ => Surd::zero(),
            };
            assert_eq!(p[i][j], want, "P[{i}][{j}]");
        }
    }
}

#[test]
fn skew_point_volume_depends_on_the_convention() {
    let st = is_stable(&skew()).unwrap();
    assert_eq!((st.x.render(), st.y.render(), st.z.render(), st.h.render()), ("1".into(), "5/4".into(), "1/2".into(), "1".into()));
    let block = metric_data(&skew(), Convention::Block).unwrap();
    assert_eq!((block.m.render(), block.t.render()), ("1".into(), "1".into()));
    let induced = metric_data(&skew(), Convention::Induced).unwrap();
    let m = induced.m.to_f64().unwrap();
    assert!((m - (19.0f64 / 16.0).cbrt()).abs() < 1e-12);
}

#[test]
fn sigma0_is_the_sasaki_structure() {
    let md = metric_data(&Coeffs::sigma0(), Convention::Induced).unwrap();
    for i in 0..7 {
        for j in 0..7 {
            assert_eq!(md.g[i][j], Surd::from_int(i64::from(i == j)));
        }
    }
    assert_eq!(md.m, Surd::one());
    assert!(!is_stable(&Coeffs::parse("1,0,1,0,1").unwrap()).unwrap().stable);
}

#[test]
fn sasaki_star_of_the_basic_forms() {
    let s = ExactStar::new(&Coeffs::sigma0(), Convention::Induced).unwrap();
    for (a, b) in [
        ("alpha", "theta^alpha3"),
        ("alpha1", "-theta^alpha2"),
        ("alpha2", "theta^alpha1"),
        ("dtheta", "1/2*theta^dtheta^dtheta"),
        ("dtheta^dtheta", "2*theta^dtheta"),
        ("theta", "1/6*dtheta^dtheta^dtheta"),
    ] {
        assert_eq!(s.apply(&exact(a)), exact(b), "*{a}");
    }
    assert_eq!(s.norm_sq(&exact("theta^dtheta")), Surd::from_int(3));
    assert_eq!(s.norm_sq(&exact("dtheta^dtheta")), Surd::from_int(12));
    assert_eq!(s.norm_sq(&Form::zero(3)), Surd::zero());
}

#[test]
fn wedge_identities() {
    assert_eq!(form("dtheta^dtheta^dtheta"), form("6*e123456"));
    assert_eq!(form("alpha1^alpha2"), form("3*alpha3^alpha"));
    assert_eq!(form("theta^alpha3"), form("vol"));
    assert_eq!(form("vol^alpha"), form("VolG"));
    assert!(form("dtheta^alpha").is_zero());
    assert!(form("e12^e12").is_zero());
    assert_eq!(form("theta^dtheta"), form("e041 + e052 + e063"));
    assert_eq!(form("alpha1"), form("e156 + e264 + e345"));
}

#[test]
fn symbolic_star_matches_closed_forms() {
    let f = InvariantForms::standard();
    for conv in [Convention::Induced, Convention::Block] {
        let frame = Frame::<ScaledScalar>::symbolic(conv);
        for which in ClosedForm::ALL {
            let a: Form<ScaledScalar> = which.form(&f);
            assert!(star(&a, &frame).same_as(&hodge_closed_form(which, conv, &f)), "{conv:?} {which:?}");
        }
    }
    let want = form("t^(1/2)*h^(1/2)*f4^(-1)*1/2*dtheta^dtheta");
    assert!(hodge_closed_form(ClosedForm::ThetaDtheta, Convention::Block, &f).same_as(&want));
}

#[test]
fn derivatives_of_closed_forms_vanish() {
    let f = InvariantForms::standard();
    let g = CurvatureModel::Generic;
    assert!(d(&form("vol"), &g, &f).unwrap().form.is_zero());
    let d_alpha3 = d(&form("alpha3"), &g, &f).unwrap().form;
    assert!(d_alpha3.same_as(&form("theta^alpha2")));
    let dd = d(&d_alpha3, &g, &f).unwrap().form;
    assert!(dd.is_zero_normalized());
}

#[test]
fn sasaki_circle_derivatives_under_constant_curvature() {
    let f = InvariantForms::standard();
    let k = CurvatureModel::symbolic_k();
    let d_of = |text: &str| d(&form(text), &k, &f).unwrap().form;
    let want = form("theta^(-3*alpha + (2*k + 1)*alpha2) + dtheta^dtheta");
    assert!(d_of("-alpha1 + alpha3 + theta^dtheta").same_as(&want));
    let want = form("theta^((k + 2)*alpha1 - 3*k*alpha3) + dtheta^dtheta");
    assert!(d_of("-alpha + alpha2 + theta^dtheta").same_as(&want));
}

#[test]
fn curvature_conventions() {
    let r = |i, j, p, q| Poly::var(Sym::riemann(i, j, p, q).unwrap());
    assert_eq!(canonical_r(1, 0, 0, 1).unwrap(), -&r(0, 1, 0, 1));
    assert!(canonical_r(0, 0, 1, 2).unwrap().is_zero());
    let bianchi = &(&canonical_r(2, 3, 0, 1).unwrap() + &canonical_r(3, 1, 0, 2).unwrap()) + &canonical_r(1, 2, 0, 3).unwrap();
    assert!(bianchi.is_zero());
    assert!(canonical_r(4, 0, 0, 1).is_err());

    let at = atoms::<ScaledScalar>(&CurvatureModel::symbolic_k());
    assert!(at.r_alpha.same_as(&form("-k*theta^alpha1")));
    assert!(at.r_alpha1.same_as(&form("-2*k*theta^alpha2")));
    assert_eq!(at.rbar, parse_scalar("3*k").unwrap());
    let flat = atoms::<ScaledScalar>(&CurvatureModel::flat());
    assert!(flat.r_alpha.is_zero() && flat.r_alpha1.is_zero() && flat.rbar == ScaledScalar::zero());
}

#[test]
fn a_sign_error_in_alpha2_breaks_the_structure_equations() {
    let m = gwistor::gwistor::mutation_catalogue().into_iter().find(|m| m.atom == "alpha2").unwrap();
    let v = verify_bse1(&Context::default().mutated(m).unwrap());
    assert!(!v.passed);
    assert!(v.failures().next().is_some());
}
