//! Stability and induced metric of a few coefficient vectors, with the volume
//! factor cross-checked against the Gram determinant of the pairing.

use gwistor::gwistor::{
    build_sigma_exact, is_stable, m_from_determinant, metric_data, pairing_matrix, Coeffs, Convention,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for text in ["-1,0,1,0,1", "1,0,1,0,1", "-1,1/2,1,0,1", "-sqrt(2)/2,-sqrt(2)/2,sqrt(2)/2,sqrt(2)/2,sqrt(3/2)"] {
        let c = Coeffs::parse(text)?;
        let st = is_stable(&c)?;
        println!("sigma = ({c})");
        println!("  x = {}  y = {}  z = {}  h = {}  q = {}", st.x.render(), st.y.render(), st.z.render(), st.h.render(), st.q.render());
        if !st.stable {
            println!("  not a G2-structure\n");
            continue;
        }
        let induced = metric_data(&c, Convention::Induced)?;
        println!("  m = {}  t = {}", induced.m.render(), induced.t.render());

        let p = pairing_matrix(&build_sigma_exact(&c)?);
        let pf: [[f64; 7]; 7] = std::array::from_fn(|i| std::array::from_fn(|j| p[i][j].to_f64().unwrap_or(f64::NAN)));
        println!("  m from det(P/6)^(1/9) = {:.12}", m_from_determinant(&pf));
        if st.block_region {
            let block = metric_data(&c, Convention::Block)?;
            println!("  block-matrix volume factor: {}", block.m.render());
        }
        println!("  <e1, e4> = {}\n", induced.g[1][4].render());
    }
    Ok(())
}
