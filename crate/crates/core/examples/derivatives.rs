//! Exterior derivatives of the invariant forms with the curvature terms kept
//! formal, and the torsion report of the Sasaki structure.

use gwistor::calculus::{d, torsion_report, CurvatureModel};
use gwistor::exterior::parse_form;
use gwistor::gwistor::{Coeffs, InvariantForms};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = InvariantForms::standard();
    let generic = CurvatureModel::Generic;
    for text in ["theta", "alpha", "alpha1", "alpha2", "alpha3", "theta^dtheta"] {
        let e = d(&parse_form(text)?, &generic, &f)?.expr;
        let mut parts = Vec::new();
        if !e.plain.is_zero() {
            parts.push(e.plain.to_string());
        }
        for (coeff, atom) in [(&e.ra, "R(alpha)"), (&e.ra1, "R(alpha1)")] {
            if !coeff.is_zero() {
                parts.push(format!("({coeff}) {atom}"));
            }
        }
        if !e.rbar.is_zero() {
            parts.push(format!("rbar ({})", e.rbar));
        }
        let rhs = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        println!("d {text:<13} = {rhs}");
    }

    let k = CurvatureModel::symbolic_k();
    let circle = parse_form("-alpha1 + alpha3 + theta^dtheta")?;
    println!("\nconstant curvature k:\n  d(-alpha1 + alpha3 + theta^dtheta) = {}", d(&circle, &k, &f)?.form);

    for model in [CurvatureModel::Generic, CurvatureModel::constant(1), CurvatureModel::symbolic_k()] {
        let r = torsion_report(&Coeffs::sigma0(), &model, &f)?;
        println!("\nsigma0 under {}:", r.model);
        println!("  cocalibrated: {:?}", r.cocalibrated);
        println!("  d *sigma = {}", r.dstar_sigma);
        println!("  w3 scalar = {}", r.w3_scalar);
    }
    Ok(())
}
