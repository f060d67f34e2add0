//! Momentum-space solution of one parity sector.
//!
//! With the twist `c_{N+1} = ±c_1` each sector is translation invariant, so
//! Fourier modes `q = π p / N` decouple into `(q, −q)` pairs plus at most two
//! self-conjugate modes (`q = 0`, `q = π`). For a pair,
//!
//! ```text
//! H_q = ξ_q (n_q + n_{−q}) + (i Δ_q c†_q c†_{−q} + h.c.),
//! ξ_q = 2(J(−1)^(m−1) cos mq − h),   Δ_q = 2 J(−1)^(m−1) sin mq,
//! ```
//!
//! with quasiparticle energy `ε_q = √(ξ_q² + Δ_q²)` for both members. A
//! self-conjugate mode has no pairing partner and energy `|ξ_q|`.

use crate::model::{cos_sin_pi_over, momentum_integers, momentum_value, ModelParams, Parity, Sector};
use crate::scalar::Real;

/// Energies below this are treated as exact zero modes.
pub const ZERO_MODE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeKind {
    /// `q = 0` or `q = π`: a bare fermion, occupied in the vacuum iff `ξ < 0`.
    SelfConjugate,
    /// Member of a `(q, −q)` Bogoliubov pair.
    Paired,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumMode<T = f64> {
    /// `q = π · label / N`.
    pub label: i64,
    pub kind: ModeKind,
    /// Single-quasiparticle energy, `≥ 0`.
    pub energy: T,
    pub xi: T,
    pub delta: T,
}

impl<T: Real> MomentumMode<T> {
    pub fn momentum(&self, n_sites: usize) -> T {
        momentum_value(self.label, n_sites)
    }

    pub fn is_self_conjugate(&self) -> bool {
        self.kind == ModeKind::SelfConjugate
    }

    /// Bare occupation of a self-conjugate mode in the quasiparticle vacuum.
    pub fn vacuum_occupied(&self) -> bool {
        self.is_self_conjugate() && self.xi < T::zero()
    }

    pub fn is_zero_mode(&self) -> bool {
        self.energy < T::lit(ZERO_MODE_TOL)
    }
}

/// Quasiparticle content of one sector.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorModes<T = f64> {
    pub sector: Sector,
    pub n_sites: usize,
    /// Ordered by momentum label, ascending.
    pub modes: Vec<MomentumMode<T>>,
    pub vacuum_energy: T,
    pub vacuum_parity: Parity,
}

impl<T: Real> SectorModes<T> {
    pub fn solve(params: &ModelParams<T>, sector: Sector) -> Self {
        let n = params.n_sites;
        let m = params.range as i64;
        let w = params.bond_amplitude();
        let two = T::lit(2.0);
        let h = params.field;

        let mut vacuum_energy = h * T::of(n);
        let mut occupied_self = 0usize;
        let modes: Vec<MomentumMode<T>> = momentum_integers(n, sector)
            .into_iter()
            .map(|p| {
                // evaluate at |q| so that the ±q members agree bit for bit
                let (c, s_abs) = cos_sin_pi_over::<T>(p.abs() * m, n);
                let s = if p < 0 { -s_abs } else { s_abs };
                let xi = two * (w * c - h);
                let self_conjugate = p == 0 || p == n as i64;
                if self_conjugate {
                    if xi < T::zero() {
                        vacuum_energy += xi;
                        occupied_self += 1;
                    }
                    MomentumMode {
                        label: p,
                        kind: ModeKind::SelfConjugate,
                        energy: xi.abs(),
                        xi,
                        delta: T::zero(),
                    }
                } else {
                    let delta = two * w * s;
                    let mut energy = xi.hypot(delta);
                    if energy < T::lit(ZERO_MODE_TOL) {
                        energy = T::zero();
                    }
                    if p > 0 {
                        vacuum_energy += xi - energy;
                    }
                    MomentumMode {
                        label: p,
                        kind: ModeKind::Paired,
                        energy,
                        xi,
                        delta,
                    }
                }
            })
            .collect();

        Self {
            sector,
            n_sites: n,
            modes,
            vacuum_energy,
            vacuum_parity: Parity::from_count(occupied_self),
        }
    }

    pub fn energies(&self) -> Vec<T> {
        self.modes.iter().map(|m| m.energy).collect()
    }

    pub fn index_of(&self, label: i64) -> Option<usize> {
        self.modes.iter().position(|m| m.label == label)
    }

    /// Index of the `−q` partner of a paired mode.
    pub fn partner(&self, index: usize) -> Option<usize> {
        let mode = &self.modes[index];
        match mode.kind {
            ModeKind::SelfConjugate => None,
            ModeKind::Paired => self.index_of(-mode.label),
        }
    }

    /// The lowest single quasiparticle. Modes within `tie_tol` of the minimum
    /// are ranked self-conjugate first, then by `|q|`, then `q > 0` first, so
    /// the choice is a real, translation-invariant state whenever possible.
    pub fn lowest_mode(&self, tie_tol: T) -> usize {
        let min = self
            .modes
            .iter()
            .map(|m| m.energy)
            .fold(T::max_value().expect("bounded scalar"), |a, b| a.min(b));
        let rank = |m: &MomentumMode<T>| (!m.is_self_conjugate(), m.label.abs(), m.label < 0);
        self.modes
            .iter()
            .enumerate()
            .filter(|(_, m)| m.energy <= min + tie_tol)
            .min_by_key(|(_, m)| rank(m))
            .map(|(i, _)| i)
            .expect("at least one mode")
    }

    pub fn excitation_energy(&self, excited: &[usize]) -> T {
        excited.iter().fold(T::zero(), |acc, &i| acc + self.modes[i].energy)
    }

    pub fn parity_with(&self, excited: &[usize]) -> Parity {
        self.vacuum_parity.after(excited.len())
    }

    /// Human-readable label in terms of the bare self-conjugate fermions and
    /// the paired quasiparticles acting on `|φ±⟩`.
    pub fn state_label(&self, excited: &[usize]) -> String {
        let mut ops = Vec::new();
        for (i, mode) in self.modes.iter().enumerate() {
            let flipped = excited.contains(&i);
            match mode.kind {
                ModeKind::SelfConjugate => {
                    if mode.vacuum_occupied() != flipped {
                        ops.push(if mode.label == 0 {
                            "c₀†".to_string()
                        } else {
                            "c_π†".to_string()
                        });
                    }
                }
                ModeKind::Paired => {
                    if flipped {
                        ops.push(format!("η({}π/{})†", mode.label, self.n_sites));
                    }
                }
            }
        }
        let ket = match self.sector {
            Sector::Plus => "|φ⁺⟩",
            Sector::Minus => "|φ⁻⟩",
        };
        ops.push(ket.to_string());
        ops.concat()
    }
}
