//! Runs every verification suite and prints the summary table. Pass a path to
//! also write the JSON report.

use gwistor::theorems::{render_json, render_table, verify_all, Context};

fn main() -> std::io::Result<()> {
    let verdicts = verify_all(&Context::default());
    print!("{}", render_table(&verdicts));
    for v in &verdicts {
        println!("{:<13} {:>8.2?}", v.name, v.elapsed);
    }
    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(path, render_json(&verdicts))?;
    }
    Ok(())
}
