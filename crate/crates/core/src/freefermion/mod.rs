//! Exact solution of the two parity sectors, ground-state selection under the
//! parity constraint, and the low-lying many-body spectrum.

mod bdg;
mod ground;
mod modes;
mod spectrum;

pub use bdg::{diagonalize, vacuum_parity, BdgSolution};
pub use ground::{ground_state, sector_ground, GroundStateInfo};
pub use modes::{ModeKind, MomentumMode, SectorModes, ZERO_MODE_TOL};
pub use spectrum::{
    degeneracy_count, ground_manifold, low_levels, low_spectrum, lowest_subsets, sector_levels, ManyBodyLevel,
};
