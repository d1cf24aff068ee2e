//! Shared test strategies: seeded random instances small enough to
//! enumerate exhaustively.
#![allow(dead_code)] // each test target uses a different subset

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use scanlab_core::generators;
use scanlab_core::WeightedComplex;

/// A random small partite complex (n in 2..=3, sides in 2..=3).
pub fn small_complex() -> impl Strategy<Value = WeightedComplex> {
    (2usize..=3, any::<u64>(), 60u32..=95u32).prop_filter_map(
        "generable instance",
        |(n, seed, density)| {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(2..=3)).collect();
            generators::random_partite(n, &sizes, density as f64 / 100.0, seed).ok()
        },
    )
}

/// Like [`small_complex`] but restricted to link-connected instances.
pub fn connected_complex() -> impl Strategy<Value = WeightedComplex> {
    small_complex().prop_filter("link-connected", |x| x.is_link_connected())
}

/// A random distribution over the facets of a complex, strictly positive.
pub fn random_facet_distribution(
    x: &WeightedComplex,
    rng: &mut impl Rng,
) -> scanlab_core::Distribution {
    let m = x.facet_count();
    let mut mass: Vec<f64> = (0..m).map(|_| -(rng.gen::<f64>().max(1e-12)).ln()).collect();
    let total: f64 = mass.iter().sum();
    mass.iter_mut().for_each(|w| *w /= total);
    scanlab_core::Distribution::new(x.facets().to_vec(), mass).unwrap()
}
