//! Hodge star: exact values at the Sasaki structure, then the symbolic star
//! of theta^dtheta for the induced metric and for the block matrix.

use std::collections::BTreeMap;

use gwistor::exterior::{parse_form, render_form, RenderStyle};
use gwistor::gwistor::{star, Coeffs, Convention, ExactStar, Frame};
use gwistor::scalars::ScaledScalar;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s0 = ExactStar::new(&Coeffs::sigma0(), Convention::Induced)?;
    for text in ["theta", "dtheta", "alpha", "alpha1", "alpha2", "alpha3", "theta^dtheta"] {
        let a = parse_form(text)?.try_map(|s| s.eval_surd(&BTreeMap::new()))?;
        println!("*{text:<13} = {}", s0.apply(&a));
    }

    let td = parse_form("theta^dtheta")?;
    for conv in [Convention::Induced, Convention::Block] {
        let s = star(&td, &Frame::<ScaledScalar>::symbolic(conv));
        println!("\n{} metric:\n  *(theta^dtheta) = {}", conv.name(), s);
        println!("  latex: {}", render_form(&s, RenderStyle::Latex));
    }

    let skew = Coeffs::parse("-1,1/2,1,0,1")?;
    let a = parse_form("alpha")?.try_map(|s| s.eval_surd(&BTreeMap::new()))?;
    for conv in [Convention::Induced, Convention::Block] {
        println!("\n*alpha at ({skew}), {}:\n  {}", conv.name(), ExactStar::new(&skew, conv)?.apply(&a));
    }
    Ok(())
}
