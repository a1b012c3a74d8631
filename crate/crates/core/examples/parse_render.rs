//! Parsing and rendering of scalars and forms.

use gwistor::exterior::{parse_form, render_form, RenderStyle};
use gwistor::scalars::{parse_scalar, QuadNum};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = parse_scalar("3/2*f0^2*t^(1/2)*h^(-3/2) - f1*f2")?;
    println!("scalar: {s}");
    println!("  round trip: {}", parse_scalar(&s.render())? == s);

    let h = parse_scalar("(f2^2 - f1*f3)*(f1^2 - f0*f2) - (f1*f2 - f0*f3)^2")?;
    println!("h expanded: {h}");

    let q = QuadNum::parse_literal("sqrt(3/2)")?;
    println!("sqrt(3/2) = {}, squared {}", q.render(), (&q * &q).render());

    for text in ["theta^dtheta", "alpha1^alpha2", "dtheta^dtheta^dtheta", "2*e12 - e21 + e3^e4"] {
        let a = parse_form(text)?;
        println!("\n{text}");
        println!("  plain: {}", render_form(&a, RenderStyle::Plain));
        println!("  latex: {}", render_form(&a, RenderStyle::Latex));
        println!("  json:  {}", render_form(&a, RenderStyle::Json));
    }
    Ok(())
}
