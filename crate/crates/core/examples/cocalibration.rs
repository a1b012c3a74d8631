//! The polynomials governing d *sigma = 0 and their factorizations.

use gwistor::calculus::{cocalibration_conditions, torsion_report, CurvatureModel};
use gwistor::gwistor::{Convention, InvariantForms};
use gwistor::scalars::parse_scalar;
use gwistor::theorems::stable_samples;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = InvariantForms::standard();
    for conv in [Convention::Block, Convention::Induced] {
        let cc = cocalibration_conditions(conv, &f)?;
        println!("{} metric, d *sigma = pref (p1 theta^R(alpha1) + p2 theta^R(alpha))", conv.name());
        println!("  pref = {}", cc.prefactor);
        println!("  p1 has {} terms, p2 has {} terms", cc.p1.len(), cc.p2.len());
        let x2 = parse_scalar("f2^2 - f1*f3")?.to_symbolic_poly()?.pow(2);
        println!("  p1 / x^2 = {}", cc.p1.exact_divide(&x2)?);
    }

    println!("\nverdicts on seeded samples (generic base):");
    for c in stable_samples(3, 6, false) {
        let r = torsion_report(&c, &CurvatureModel::Generic, &f)?;
        println!("  ({c}): {:?}", r.cocalibrated);
    }
    Ok(())
}
