//! Nearly-parallel structures at constant curvature 1: the exact check for
//! sigma+, the component system of d sigma = c *sigma, and a numeric sweep.
//!
//! `cargo run --release --example nearly_parallel -- 0.05` sets the grid step.

use gwistor::calculus::{torsion_report, CurvatureModel};
use gwistor::gwistor::{Coeffs, InvariantForms};
use gwistor::theorems::sweep::{sweep, SweepConfig};
use gwistor::theorems::{displayed_system, regenerated_system};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = InvariantForms::standard();
    let one = CurvatureModel::constant(1);
    for text in ["-sqrt(2)/2,-sqrt(2)/2,sqrt(2)/2,sqrt(2)/2,sqrt(3/2)", "-1,0,1,0,sqrt(3/2)", "0,-1,0,1,sqrt(3/2)"] {
        let r = torsion_report(&Coeffs::parse(text)?, &one, &f)?;
        println!("({text}): c = {}", r.nearly_parallel_c.as_deref().unwrap_or("none"));
    }

    let system = regenerated_system(&f)?;
    println!("\ncomponents of d sigma - c *sigma on the Sasaki circle (f0, f1) = (a, b):");
    for (name, p) in &system {
        println!("  {name:<13} {p}");
    }
    println!("stated system:");
    for (_, p) in displayed_system() {
        println!("  {p}");
    }

    let step = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(0.05);
    let cfg = SweepConfig { step, ..SweepConfig::default() };
    for (label, polys) in [
        ("component", system.iter().map(|(_, p)| p.clone()).collect::<Vec<_>>()),
        ("stated", displayed_system().into_iter().map(|(_, p)| p).collect()),
    ] {
        let r = sweep(&polys, &cfg)?;
        println!(
            "\n{label} system, step {step}: {} grid points, {} known solutions, {} others",
            r.grid_points,
            r.known,
            r.unknown.len()
        );
        for s in r.unknown.iter().take(3) {
            println!("  phi = {:.4}, k = {:.6}, f4 = {:.6}, c = {:.6}", s.phi, s.k, s.f4, s.c);
        }
    }
    Ok(())
}
