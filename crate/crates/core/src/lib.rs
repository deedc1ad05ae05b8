//! Interaction-free measurement with ballistic electrons in a two-dimensional electron gas.
//!
//! A chain of `N` quantum-point-contact beam splitters at angle `θ = π/(2N)` with a tunnelling-tip
//! absorber on one path. The crate provides
//!
//! * exact transfer-matrix propagation and the Elitzur–Vaidman baseline ([`analytic`]),
//! * the WKB map from tip barrier `ΔW` to absorber transparency `η` ([`wkb`]),
//! * 2DEG transport scales ([`material`]),
//! * zero-frequency shot noise at the success port ([`shotnoise`]),
//! * a seeded, thread-count independent Monte Carlo oracle ([`trajectory`]),
//! * surfaces and inverse design queries ([`sweep`]).
//!
//! The physics kernels are generic over [`Real`] (`f32` or `f64`); the aliases below fix `f64`.

pub mod analytic;
pub mod constants;
pub mod error;
pub mod material;
pub mod model;
pub mod scalar;
pub mod shotnoise;
pub mod sweep;
pub mod trajectory;
pub mod wkb;

pub use error::{IfmError, Result};
pub use model::{make_interferometer, Mode};
pub use scalar::Real;
pub use sweep::SurfaceGrid;
pub use trajectory::{McEstimate, PartitionNoiseEstimate, TrajectoryOutcome};

pub type InterferometerSpec = model::InterferometerSpec<f64>;
pub type TransferMatrix = model::TransferMatrix<f64>;
pub type ModeState = model::ModeState<f64>;
pub type AbsorberModel = model::AbsorberModel<f64>;
pub type MaterialParams = model::MaterialParams<f64>;
pub type PortProbabilities = analytic::PortProbabilities<f64>;
pub type NoiseResult = shotnoise::NoiseResult<f64>;

pub type InterferometerSpecF32 = model::InterferometerSpec<f32>;
pub type TransferMatrixF32 = model::TransferMatrix<f32>;
pub type AbsorberModelF32 = model::AbsorberModel<f32>;
pub type MaterialParamsF32 = model::MaterialParams<f32>;
