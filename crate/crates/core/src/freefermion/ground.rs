use crate::model::{ModelParams, Parity, Sector};
use crate::scalar::Real;

use super::modes::SectorModes;
use super::spectrum::{ground_manifold, sector_levels};

/// A parity-allowed lowest state and the size of its degenerate manifold.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundStateInfo<T = f64> {
    pub energy: T,
    pub sector: Sector,
    /// Indices into the sector's [`SectorModes::modes`] of the quasiparticles
    /// added on top of the vacuum.
    pub occupied_modes: Vec<usize>,
    pub state_label: String,
    pub degeneracy: usize,
    pub n_sites: usize,
}

impl<T: Real> GroundStateInfo<T> {
    pub fn parity(&self, modes: &SectorModes<T>) -> Parity {
        modes.parity_with(&self.occupied_modes)
    }
}

/// Lowest state of `sector` that carries the sector's required parity: the
/// vacuum if its parity already matches, otherwise the vacuum plus the single
/// cheapest quasiparticle (self-conjugate modes win ties).
///
/// `degeneracy` counts parity-allowed states of this sector only.
pub fn sector_ground<T: Real>(params: &ModelParams<T>, sector: Sector) -> GroundStateInfo<T> {
    let modes = SectorModes::solve(params, sector);
    sector_ground_from(params, &modes)
}

pub(crate) fn sector_ground_from<T: Real>(params: &ModelParams<T>, modes: &SectorModes<T>) -> GroundStateInfo<T> {
    let occupied_modes = if modes.vacuum_parity == modes.sector.required_parity() {
        Vec::new()
    } else {
        vec![modes.lowest_mode(params.degeneracy_tol)]
    };
    let energy = modes.vacuum_energy + modes.excitation_energy(&occupied_modes);
    let degeneracy = sector_levels(modes, usize::MAX, Some(energy + params.degeneracy_tol)).len();
    GroundStateInfo {
        energy,
        sector: modes.sector,
        state_label: modes.state_label(&occupied_modes),
        occupied_modes,
        degeneracy,
        n_sites: params.n_sites,
    }
}

/// Global ground state. On an energy tie the PLUS representative is returned;
/// `degeneracy` counts the full manifold across both sectors.
pub fn ground_state<T: Real>(params: &ModelParams<T>) -> GroundStateInfo<T> {
    let plus = sector_ground(params, Sector::Plus);
    let minus = sector_ground(params, Sector::Minus);
    let mut best = if plus.energy <= minus.energy + params.degeneracy_tol {
        plus
    } else {
        minus
    };
    best.degeneracy = ground_manifold(params).len();
    best
}
