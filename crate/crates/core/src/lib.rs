pub mod airy;
pub mod error;
pub mod model;
pub mod poles;
pub mod quad;
pub mod scaled;
pub mod survival;

pub use error::{Error, Result};
pub use model::{Binding, ComplexEnergy, Dimension, ModelConfig, RunningCoupling};
pub use poles::{enumerate_poles, PoleSet, Resonance, SeedSource};
pub use survival::{GamowMode, SurvivalRecord, SurvivalSource, Truncation};

pub use num_complex::Complex64;
