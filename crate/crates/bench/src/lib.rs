//! Shared fixtures for the benchmarks.

use implodekit::numgeom::{check_rng, random_chamber_point};
use implodekit::su::{random_su, CMatrix};
use implodekit::{Isogeny, RootDatum, Weight};

pub fn simply_connected(series: &str, rank: usize) -> RootDatum {
    RootDatum::build(series, rank, Isogeny::SimplyConnected).expect("valid series")
}

/// `k·ρ`, a regular weight with every pairing equal to `k`.
pub fn scaled_rho(d: &RootDatum, k: i64) -> Weight {
    d.rho().scale(k)
}

/// Seeded points `(k, λ)` of `T*SU(n)` over the closed chamber.
pub fn chamber_samples(n: usize, count: usize, seed: u64) -> Vec<(CMatrix, Vec<f64>)> {
    let mut rng = check_rng(seed, 0);
    (0..count)
        .map(|_| (random_su(n, &mut rng), random_chamber_point(n - 1, 0.2, &mut rng)))
        .collect()
}
