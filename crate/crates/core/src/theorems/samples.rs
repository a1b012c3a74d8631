use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gwistor::{is_stable, Coeffs};
use crate::scalars::rat;

/// `n` stable rational coefficient vectors drawn from a seeded generator.
/// With `block` set, the samples also satisfy `h > 0`.
pub fn stable_samples(seed: u64, n: usize, block: bool) -> Vec<Coeffs> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let mut v = std::array::from_fn(|_| rat(rng.gen_range(-6..=6), rng.gen_range(1..=3)));
        v[4] = rat(rng.gen_range(1..=6), rng.gen_range(1..=3));
        let c = Coeffs::from_rats(&v);
        let st = is_stable(&c).expect("numeric coefficients");
        if st.stable && (!block || st.block_region) {
            out.push(c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_reproducible_and_stable() {
        let a = stable_samples(7, 10, true);
        assert_eq!(a, stable_samples(7, 10, true));
        assert_ne!(a, stable_samples(8, 10, true));
        assert!(a.iter().all(|c| is_stable(c).unwrap().block_region));
    }
}
