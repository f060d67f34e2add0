//! Model instance and its fermionic representations.
//!
//! The spin chain is
//!
//! ```text
//! H = J Σ_j σˣ_j σᶻ_{j+1} ⋯ σᶻ_{j+m-1} σˣ_{j+m}  −  h Σ_j σᶻ_j        (periodic)
//! ```
//!
//! After a Jordan–Wigner transformation with `σᶻ = 2n − 1` it splits into two
//! fermion-parity sectors, each of which is an exactly quadratic Hamiltonian
//! once the parity operator in the boundary bonds is replaced by the sector's
//! eigenvalue:
//!
//! * [`Sector::Plus`]: odd fermion number, periodic fermions `c_{N+1} = c_1`;
//! * [`Sector::Minus`]: even fermion number, antiperiodic fermions `c_{N+1} = −c_1`.
//!
//! Every bond `(j, j+m)` contributes `J (−1)^(m−1) (c†_j − c_j)(c†_{j+m} + c_{j+m})`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Fermion-number parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_count(n: usize) -> Self {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn from_sign(sign: i32) -> Self {
        if sign >= 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `+1` for even, `−1` for odd.
    pub fn sign(self) -> i32 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    /// Parity after adding `count` fermions.
    pub fn after(self, count: usize) -> Self {
        if count % 2 == 0 {
            self
        } else {
            self.flipped()
        }
    }
}

/// Fermion-parity sector of the Jordan–Wigner decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sector {
    /// Periodic fermions, odd fermion number.
    Plus,
    /// Antiperiodic fermions, even fermion number.
    Minus,
}

impl Sector {
    pub const ALL: [Sector; 2] = [Sector::Plus, Sector::Minus];

    /// Parity the physical states of this sector must carry.
    pub fn required_parity(self) -> Parity {
        match self {
            Sector::Plus => Parity::Odd,
            Sector::Minus => Parity::Even,
        }
    }

    /// `c_{N+1} = twist · c_1`.
    pub fn twist(self) -> i32 {
        match self {
            Sector::Plus => 1,
            Sector::Minus => -1,
        }
    }

    /// Momenta are `q = π p / N` with `p ≡ offset (mod 2)`.
    pub(crate) fn momentum_offset(self) -> i64 {
        match self {
            Sector::Plus => 0,
            Sector::Minus => 1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sector::Plus => "+",
            Sector::Minus => "-",
        }
    }
}

impl std::fmt::Display for Sector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sector::Plus => f.write_str("PLUS"),
            Sector::Minus => f.write_str("MINUS"),
        }
    }
}

/// A physical instance `(N, m, J, h)` plus the numerical tolerances used
/// downstream.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams<T = f64> {
    pub n_sites: usize,
    pub range: usize,
    pub coupling: T,
    pub field: T,
    /// Energy window for counting degenerate many-body levels.
    pub degeneracy_tol: T,
    /// Accepted overshoot of correlation eigenvalues beyond `±1`.
    pub entropy_clip: T,
}

impl<T: Real> ModelParams<T> {
    /// Builds and validates an instance with default tolerances.
    pub fn new(n_sites: usize, range: usize, coupling: T, field: T) -> Result<Self> {
        let params = Self {
            n_sites,
            range,
            coupling,
            field,
            degeneracy_tol: Self::default_degeneracy_tol(n_sites, coupling, field),
            entropy_clip: T::tol(1e-9, 1e4),
        };
        params.validate()?;
        Ok(params)
    }

    /// `1e−8 · max(|J|, h) · N` in `f64`, widened to the precision floor for
    /// narrower scalars.
    pub fn default_degeneracy_tol(n_sites: usize, coupling: T, field: T) -> T {
        T::tol(1e-8, 1e3) * coupling.abs().max(field.abs()) * T::of(n_sites)
    }

    pub fn with_degeneracy_tol(mut self, tol: T) -> Self {
        self.degeneracy_tol = tol;
        self
    }

    pub fn with_entropy_clip(mut self, clip: T) -> Self {
        self.entropy_clip = clip;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_sites < 2 {
            return Err(Error::InvalidParams(format!(
                "need at least two sites, got N = {}",
                self.n_sites
            )));
        }
        if self.range == 0 || self.range >= self.n_sites {
            return Err(Error::RangeOutOfBounds {
                range: self.range,
                n_sites: self.n_sites,
            });
        }
        if self.coupling == T::zero() || !self.coupling.is_finite() {
            return Err(Error::InvalidParams("coupling J must be finite and nonzero".into()));
        }
        if self.field < T::zero() || !self.field.is_finite() {
            return Err(Error::InvalidParams("field h must be finite and >= 0".into()));
        }
        if self.degeneracy_tol <= T::zero() || self.entropy_clip <= T::zero() {
            return Err(Error::InvalidParams("tolerances must be positive".into()));
        }
        Ok(())
    }

    pub fn n_parity(&self) -> Parity {
        Parity::from_count(self.n_sites)
    }

    pub fn m_parity(&self) -> Parity {
        Parity::from_count(self.range)
    }

    /// Both `N` and `m` odd: the regime with the `2N`-fold manifold at `h = 0`.
    pub fn is_odd_odd(&self) -> bool {
        self.n_parity() == Parity::Odd && self.m_parity() == Parity::Odd
    }

    /// Bond amplitude `J (−1)^(m−1)`.
    pub fn bond_amplitude(&self) -> T {
        if self.range % 2 == 1 {
            self.coupling
        } else {
            -self.coupling
        }
    }
}

/// Real-space quadratic form
///
/// ```text
/// H = Σ_ij A_ij c†_i c_j + ½ Σ_ij (B_ij c†_i c†_j + h.c.) + constant
/// ```
///
/// with `A = hopping` symmetric and `B = pairing` antisymmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticForm<T = f64> {
    pub hopping: DMatrix<T>,
    pub pairing: DMatrix<T>,
    pub sector: Sector,
    pub constant: T,
}

impl<T: Real> QuadraticForm<T> {
    pub fn n_modes(&self) -> usize {
        self.hopping.nrows()
    }

    /// Adds `w (c†_x − c_x)(c†_y + c_y)` for `x ≠ y`.
    fn add_bond(&mut self, x: usize, y: usize, w: T) {
        self.hopping[(x, y)] += w;
        self.hopping[(y, x)] += w;
        self.pairing[(x, y)] += w;
        self.pairing[(y, x)] -= w;
    }

    /// Largest entry of `A − Aᵀ` and `B + Bᵀ`.
    pub fn symmetry_defect(&self) -> T {
        let a = &self.hopping - self.hopping.transpose();
        let b = &self.pairing + self.pairing.transpose();
        a.amax().max(b.amax())
    }
}

/// Real-space quadratic form of one parity sector, including the transverse
/// field `−h Σ σᶻ = −2h Σ n_j + hN`.
pub fn build_quadratic_form<T: Real>(params: &ModelParams<T>, sector: Sector) -> Result<QuadraticForm<T>> {
    params.validate()?;
    let n = params.n_sites;
    let m = params.range;
    let w = params.bond_amplitude();
    let boundary = if sector.twist() > 0 { w } else { -w };

    let mut form = QuadraticForm {
        hopping: DMatrix::zeros(n, n),
        pairing: DMatrix::zeros(n, n),
        sector,
        constant: params.field * T::of(n),
    };
    for j in 0..n {
        let k = j + m;
        if k < n {
            form.add_bond(j, k, w);
        } else {
            form.add_bond(j, k - n, boundary);
        }
    }
    let diag = -(params.field + params.field);
    for j in 0..n {
        form.hopping[(j, j)] += diag;
    }
    Ok(form)
}

/// Integer labels `p` of the sector momenta `q = π p / N`, ascending, with
/// `q ∈ (−π, π]`.
pub fn momentum_integers(n_sites: usize, sector: Sector) -> Vec<i64> {
    let n = n_sites as i64;
    let offset = sector.momentum_offset();
    ((-n + 1)..=n).filter(|p| (p - offset).rem_euclid(2) == 0).collect()
}

/// The `N` allowed momenta of a sector, ascending in `(−π, π]`.
pub fn momentum_grid<T: Real>(n_sites: usize, sector: Sector) -> Vec<T> {
    momentum_integers(n_sites, sector)
        .into_iter()
        .map(|p| momentum_value(p, n_sites))
        .collect()
}

pub(crate) fn momentum_value<T: Real>(p: i64, n_sites: usize) -> T {
    T::pi() * T::from_i64(p).expect("momentum label") / T::of(n_sites)
}

/// `(cos, sin)` of `π k / N`, reducing `k` modulo `2N` in integers first.
pub(crate) fn cos_sin_pi_over<T: Real>(k: i64, n_sites: usize) -> (T, T) {
    let period = 2 * n_sites as i64;
    let reduced = k.rem_euclid(period);
    let angle = T::pi() * T::from_i64(reduced).expect("angle label") / T::of(n_sites);
    (angle.cos(), angle.sin())
}

/// Bogoliubov coefficients of the `h = 0` momentum-space solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BogoliubovCoefficients<T = f64> {
    pub u_sq: T,
    pub v_sq: T,
    pub uv: T,
}

/// `u² = ½(1 − (−1)^m cos mq)`, `v² = ½(1 + (−1)^m cos mq)`,
/// `uv = −½ (−1)^m sin mq`.
pub fn bogoliubov_coefficients<T: Real>(q: T, m: usize) -> BogoliubovCoefficients<T> {
    let sign = if m % 2 == 0 { T::one() } else { -T::one() };
    let mq = q * T::of(m);
    let half = T::lit(0.5);
    BogoliubovCoefficients {
        u_sq: half * (T::one() - sign * mq.cos()),
        v_sq: half * (T::one() + sign * mq.cos()),
        uv: -half * sign * mq.sin(),
    }
}
