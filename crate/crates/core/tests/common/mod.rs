//! Shared oracles for integration tests.

use beamsynth::nn::{LayerSizes, Mlp, Sample};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn random_set(sizes: LayerSizes, count: usize, seed: u64) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            Sample::new(
                (0..sizes.input).map(|_| rng.random_range(-1.0..=1.0)).collect(),
                (0..sizes.output).map(|_| rng.random_range(-0.9..=0.9)).collect(),
            )
        })
        .collect()
}

/// Central difference of the loss for parameter `i`. The loss difference is
/// accumulated per output as `(y+ - y-)(y+ + y- - 2d) / 2` so it does not
/// cancel against the full loss value, and the realised step is used.
pub fn central_difference(mlp: &Mlp, set: &[Sample], i: usize, h: f64) -> f64 {
    let mut p = mlp.params();
    let x = p[i];
    let (hi, lo) = (x + h, x - h);
    let mut plus = mlp.clone();
    p[i] = hi;
    plus.set_params(&p).unwrap();
    let mut minus = mlp.clone();
    p[i] = lo;
    minus.set_params(&p).unwrap();
    let mut diff = 0.0;
    for s in set {
        let yp = plus.forward(&s.input).unwrap();
        let ym = minus.forward(&s.input).unwrap();
        for k in 0..yp.len() {
            diff += 0.5 * (yp[k] - ym[k]) * (yp[k] + ym[k] - 2.0 * s.target[k]);
        }
    }
    diff / set.len() as f64 / (hi - lo)
}

/// Largest elementwise relative error between the analytic gradient and
/// central differences with h = 1e-6. The denominator is floored at 1e-4 of
/// the largest gradient component: below that, f64 central differences at
/// this step carry no significant digits.
pub fn max_relative_error(mlp: &Mlp, set: &[Sample]) -> f64 {
    let analytic = mlp.gradient(set).unwrap().flatten();
    let floor = 1e-4 * analytic.iter().fold(0.0f64, |m, g| m.max(g.abs()));
    let mut worst = 0.0f64;
    for (i, g) in analytic.iter().enumerate() {
        let numeric = central_difference(mlp, set, i, 1e-6);
        let denom = g.abs().max(numeric.abs()).max(floor);
        if denom > 0.0 {
            worst = worst.max((g - numeric).abs() / denom);
        }
    }
    worst
}
