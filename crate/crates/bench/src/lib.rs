//! Shared fixtures for the criterion benches.

use bisphere_core::{rational::rat, Model, ModelParams};

/// The model with `mu = (1/2, 1/3, ..., 1/(n+1))`.
pub fn harmonic_model(n: usize) -> Model {
    let mu = (0..n).map(|i| rat(1, i as i64 + 2)).collect();
    Model::new(ModelParams::new(mu).expect("harmonic parameters are valid"))
}
