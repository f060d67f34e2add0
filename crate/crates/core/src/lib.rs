//! Exact free-fermion toolkit for the periodic generalized cluster chain
//!
//! ```text
//! H = J Σ_j σˣ_j σᶻ_{j+1} ⋯ σᶻ_{j+m−1} σˣ_{j+m}  −  h Σ_j σᶻ_j
//! ```
//!
//! Spectra, ground-state manifolds, Majorana correlation matrices, block and
//! disconnected entanglement entropies, and critical scaling fits.
//!
//! ```
//! use clusterchain::{block_entropy, ground_state, ModelParamsF64};
//!
//! let params = ModelParamsF64::new(101, 4, 1.0, 0.0).unwrap();
//! let gs = ground_state(&params);
//! let s = block_entropy(&params, &gs, 30, 0).unwrap();
//! assert!((s.value - 4.0).abs() < 1e-9);
//! ```

pub mod analytics;
pub mod correlations;
pub mod entanglement;
pub mod error;
pub mod freefermion;
pub mod model;
pub mod scalar;

pub use analytics::{
    closed_form_entropy_oddodd, entropy_bounds_check, scaling_fit, BoundsReport, ClosedFormEntropy, ScalingFit,
};
pub use correlations::{
    correlation_matrix, gr_closed_form_oddodd, gr_closed_form_other, reduced_gamma, CorrelationSource,
    MajoranaCorrelation,
};
pub use entanglement::{
    block_entropy, cmi, entropy_from_gamma, make_partition, Arc, EntropyResult, Partition, Remainder,
};
pub use error::{Error, Result};
pub use freefermion::{
    degeneracy_count, diagonalize, ground_state, low_spectrum, sector_ground, vacuum_parity, BdgSolution,
    GroundStateInfo, SectorModes,
};
pub use model::{build_quadratic_form, momentum_grid, ModelParams, Parity, QuadraticForm, Sector};
pub use scalar::{binary_entropy, Real};

pub type ModelParamsF64 = ModelParams<f64>;
pub type ModelParamsF32 = ModelParams<f32>;
pub type MajoranaCorrelationF64 = MajoranaCorrelation<f64>;
pub type MajoranaCorrelationF32 = MajoranaCorrelation<f32>;
pub type GroundStateInfoF64 = GroundStateInfo<f64>;
pub type GroundStateInfoF32 = GroundStateInfo<f32>;
pub type EntropyResultF64 = EntropyResult<f64>;
pub type EntropyResultF32 = EntropyResult<f32>;
