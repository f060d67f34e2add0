//! Majorana correlation matrices of Gaussian eigenstates.
//!
//! With `A_j = c†_j + c_j` and `B_j = c†_j − c_j` the basis is site-major,
//! `(A_0, B_0, A_1, B_1, …)`, and the `2×2` block between sites `i` and `j` of
//! a state with vanishing `⟨A A⟩`, `⟨B B⟩` correlators is
//!
//! ```text
//! Π_{ij} = |   0      −g_{j−i} |
//!          | g_{i−j}     0     |,      g_r = ⟨B_{j+r} A_j⟩.
//! ```
//!
//! States with currents (a single member of a `±q` pair excited) also fill
//! the diagonal entries of off-diagonal blocks; the matrix stays real and
//! antisymmetric either way.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::freefermion::{BdgSolution, GroundStateInfo, ModeKind, SectorModes};
use crate::model::{ModelParams, Sector};
use crate::scalar::Real;

/// How a correlation matrix was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrelationSource {
    ClosedFormOddOdd,
    ClosedFormOther,
    NumericBdg,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MajoranaCorrelation<T = f64> {
    pub matrix: DMatrix<T>,
    pub n_sites: usize,
    pub source: CorrelationSource,
}

fn zero_field_closed_form_check<T: Real>(params: &ModelParams<T>, odd_odd: bool) -> Result<()> {
    params.validate()?;
    if params.field != T::zero() {
        return Err(Error::Precondition("closed-form correlators need h = 0".into()));
    }
    if params.is_odd_odd() != odd_odd {
        let want = if odd_odd { "both" } else { "not both" };
        return Err(Error::Precondition(format!(
            "closed form requires N and m to be {want} odd (N = {}, m = {})",
            params.n_sites, params.range
        )));
    }
    Ok(())
}

fn wraps_to_minus_m(n: usize, m: usize, r: i64) -> bool {
    (r + m as i64).rem_euclid(n as i64) == 0
}

/// `g_r = (−1)^m δ_{−r,m} + 2/N` of `c₀†|φ⁺⟩` at `h = 0`, `N` and `m` odd.
/// The displacement is taken modulo `N`.
pub fn gr_closed_form_oddodd<T: Real>(params: &ModelParams<T>, r: i64) -> Result<T> {
    zero_field_closed_form_check(params, true)?;
    let n = params.n_sites;
    let delta = if wraps_to_minus_m(n, params.range, r) {
        -T::one()
    } else {
        T::zero()
    };
    Ok(delta + T::lit(2.0) / T::of(n))
}

/// `g_r = (−1)^m δ_{−r,m}` of the `h = 0` ground state when `N` and `m` are
/// not both odd. The displacement is taken modulo `N`.
pub fn gr_closed_form_other<T: Real>(params: &ModelParams<T>, r: i64) -> Result<T> {
    zero_field_closed_form_check(params, false)?;
    if !wraps_to_minus_m(params.n_sites, params.range, r) {
        return Ok(T::zero());
    }
    Ok(if params.range % 2 == 0 { T::one() } else { -T::one() })
}

/// Translation-invariant correlators on displacements `r ∈ (−N, N)`, stored
/// at index `r + N − 1`.
struct Toeplitz<T> {
    n: usize,
    ab: Vec<T>,
    aa: Vec<T>,
    bb: Vec<T>,
}

impl<T: Real> Toeplitz<T> {
    fn at(v: &[T], n: usize, r: i64) -> T {
        v[(r + n as i64 - 1) as usize]
    }

    fn assemble(&self) -> DMatrix<T> {
        let n = self.n;
        let mut mat = DMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                let r = j as i64 - i as i64;
                mat[(2 * i, 2 * j + 1)] = -Self::at(&self.ab, n, r);
                if i != j {
                    mat[(2 * i, 2 * j)] = -Self::at(&self.aa, n, r);
                    mat[(2 * i + 1, 2 * j + 1)] = -Self::at(&self.bb, n, r);
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                mat[(2 * i + 1, 2 * j)] = -mat[(2 * j, 2 * i + 1)];
            }
        }
        mat
    }
}

impl<T: Real> MajoranaCorrelation<T> {
    /// Correlation matrix of `modes`' vacuum with the listed quasiparticles
    /// added, from the momentum-space occupations
    /// `C(r) = ⟨c†_j c_{j+r}⟩` and `F(r) = ⟨c_j c_{j+r}⟩`.
    pub fn from_modes(modes: &SectorModes<T>, excited: &[usize]) -> Result<Self> {
        let n = modes.n_sites;
        let count = modes.modes.len();
        if let Some(&bad) = excited.iter().find(|&&k| k >= count) {
            return Err(Error::InvalidSites(format!(
                "mode index {bad} out of range for {count} modes"
            )));
        }
        let mut is_excited = vec![false; count];
        for &k in excited {
            is_excited[k] = true;
        }

        // per-mode occupation N_q and imaginary anomalous part F_q = i·f_q
        let half = T::lit(0.5);
        let mut occ = vec![T::zero(); count];
        let mut anom = vec![T::zero(); count];
        for (k, mode) in modes.modes.iter().enumerate() {
            match mode.kind {
                ModeKind::SelfConjugate => {
                    if mode.vacuum_occupied() != is_excited[k] {
                        occ[k] = T::one();
                    }
                }
                ModeKind::Paired => {
                    let partner = modes.partner(k).expect("paired mode has a partner");
                    if is_excited[k] != is_excited[partner] {
                        occ[k] = if is_excited[k] { T::one() } else { T::zero() };
                        continue;
                    }
                    let s = if is_excited[k] { -T::one() } else { T::one() };
                    let (xi_over, delta_over) = if mode.is_zero_mode() {
                        (T::one(), T::zero())
                    } else {
                        (mode.xi / mode.energy, mode.delta / mode.energy)
                    };
                    occ[k] = half * (T::one() - s * xi_over);
                    anom[k] = -half * s * delta_over;
                }
            }
        }

        let period = 2 * n;
        let (cos_table, sin_table): (Vec<T>, Vec<T>) = (0..period)
            .map(|k| {
                let angle = T::pi() * T::of(k) / T::of(n);
                (angle.cos(), angle.sin())
            })
            .unzip();
        let labels: Vec<i64> = modes.modes.iter().map(|m| m.label).collect();

        let inv_n = T::one() / T::of(n);
        let two = T::lit(2.0);
        let len = 2 * n - 1;
        let mut tp = Toeplitz {
            n,
            ab: vec![T::zero(); len],
            aa: vec![T::zero(); len],
            bb: vec![T::zero(); len],
        };
        for idx in 0..len {
            let r = idx as i64 - (n as i64 - 1);
            let (mut re_c, mut im_c, mut re_f, mut im_f) = (T::zero(), T::zero(), T::zero(), T::zero());
            for k in 0..count {
                let phase = (labels[k] * r).rem_euclid(period as i64) as usize;
                let (c, s) = (cos_table[phase], sin_table[phase]);
                re_c += c * occ[k];
                im_c += s * occ[k];
                re_f -= s * anom[k];
                im_f -= c * anom[k];
            }
            let (re_c, im_c, re_f, im_f) = (re_c * inv_n, im_c * inv_n, re_f * inv_n, im_f * inv_n);
            let kron = if r == 0 { T::one() } else { T::zero() };
            tp.ab[idx] = two * (re_c + re_f) - kron;
            tp.aa[idx] = -two * (im_f + im_c);
            tp.bb[idx] = two * (im_f - im_c);
        }

        Ok(Self {
            matrix: tp.assemble(),
            n_sites: n,
            source: CorrelationSource::NumericBdg,
        })
    }

    /// Correlation matrix of a real-space BdG eigenstate; `excited` indexes
    /// [`BdgSolution::energies`].
    pub fn from_bdg(solution: &BdgSolution<T>, excited: &[usize]) -> Self {
        let n = solution.n_modes();
        let k = solution.correlation_block(excited);
        let mut matrix = DMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                matrix[(2 * i, 2 * j + 1)] = k[(i, j)];
                matrix[(2 * j + 1, 2 * i)] = -k[(i, j)];
            }
        }
        Self {
            matrix,
            n_sites: n,
            source: CorrelationSource::NumericBdg,
        }
    }

    /// Matrix assembled from the `h = 0` closed-form `g_r` for the sector's
    /// representative state. Displacements that cross the boundary pick up
    /// the sector twist.
    pub fn closed_form(params: &ModelParams<T>, sector: Sector) -> Result<Self> {
        let odd_odd = params.is_odd_odd();
        let (source, g): (CorrelationSource, Box<dyn Fn(i64) -> Result<T>>) = if odd_odd {
            if sector != Sector::Plus {
                return Err(Error::Precondition(
                    "odd-odd closed form describes the PLUS representative".into(),
                ));
            }
            (
                CorrelationSource::ClosedFormOddOdd,
                Box::new(|r| gr_closed_form_oddodd(params, r)),
            )
        } else {
            (
                CorrelationSource::ClosedFormOther,
                Box::new(|r| gr_closed_form_other(params, r)),
            )
        };
        let n = params.n_sites;
        let twist = if sector.twist() > 0 { T::one() } else { -T::one() };
        let len = 2 * n - 1;
        let mut ab = Vec::with_capacity(len);
        for idx in 0..len {
            let r = idx as i64 - (n as i64 - 1);
            // g is quoted on (−N, 0]; positive displacements wrap with the twist
            let value = if r > 0 { twist * g(r - n as i64)? } else { g(r)? };
            ab.push(value);
        }
        let tp = Toeplitz {
            n,
            ab,
            aa: vec![T::zero(); len],
            bb: vec![T::zero(); len],
        };
        Ok(Self {
            matrix: tp.assemble(),
            n_sites: n,
            source,
        })
    }

    /// `(A_i, B_j)` block, `N × N`.
    pub fn ab_block(&self) -> DMatrix<T> {
        let n = self.n_sites;
        DMatrix::from_fn(n, n, |i, j| self.matrix[(2 * i, 2 * j + 1)])
    }

    /// `g_r = ⟨B_r A_0⟩` read off the matrix, `r ∈ (−N, N)`.
    pub fn g(&self, r: i64) -> T {
        let n = self.n_sites as i64;
        assert!(r.abs() < n, "displacement {r} outside (−N, N)");
        if r >= 0 {
            -self.matrix[(0, 2 * r as usize + 1)]
        } else {
            -self.matrix[(2 * (-r) as usize, 1)]
        }
    }

    /// Largest `⟨A A⟩` or `⟨B B⟩` entry. Nonzero only for current-carrying
    /// states whose wavefunction cannot be chosen real.
    pub fn off_block_magnitude(&self) -> T {
        let n = self.n_sites;
        let mut worst = T::zero();
        for i in 0..n {
            for j in 0..n {
                worst = worst
                    .max(self.matrix[(2 * i, 2 * j)].abs())
                    .max(self.matrix[(2 * i + 1, 2 * j + 1)].abs());
            }
        }
        worst
    }

    /// `max |M + Mᵀ|`.
    pub fn antisymmetry_defect(&self) -> T {
        (&self.matrix + self.matrix.transpose()).amax()
    }

    /// Largest gap between `M Mᵀ` and the identity; zero for a pure state.
    pub fn purity_defect(&self) -> T {
        let n = self.matrix.nrows();
        (&self.matrix * self.matrix.transpose() - DMatrix::identity(n, n)).amax()
    }

    /// Restriction to `sites`, keeping the per-site `(A, B)` layout.
    pub fn reduced(&self, sites: &[usize]) -> Result<DMatrix<T>> {
        reduced_gamma(self, sites)
    }
}

/// Correlation matrix of a state returned by `freefermion` for `params`.
pub fn correlation_matrix<T: Real>(
    params: &ModelParams<T>,
    state: &GroundStateInfo<T>,
) -> Result<MajoranaCorrelation<T>> {
    if state.n_sites != params.n_sites {
        return Err(Error::InvalidParams(format!(
            "state has N = {} but parameters have N = {}",
            state.n_sites, params.n_sites
        )));
    }
    params.validate()?;
    let modes = SectorModes::solve(params, state.sector);
    MajoranaCorrelation::from_modes(&modes, &state.occupied_modes)
}

/// `2k × 2k` submatrix for the `k` listed sites, in the given order.
pub fn reduced_gamma<T: Real>(corr: &MajoranaCorrelation<T>, sites: &[usize]) -> Result<DMatrix<T>> {
    let n = corr.n_sites;
    if sites.is_empty() {
        return Err(Error::InvalidSites("empty site set".into()));
    }
    let mut seen = vec![false; n];
    for &s in sites {
        if s >= n {
            return Err(Error::InvalidSites(format!("site {s} outside 0..{n}")));
        }
        if std::mem::replace(&mut seen[s], true) {
            return Err(Error::InvalidSites(format!("site {s} listed twice")));
        }
    }
    let idx: Vec<usize> = sites.iter().flat_map(|&s| [2 * s, 2 * s + 1]).collect();
    let k = idx.len();
    Ok(DMatrix::from_fn(k, k, |a, b| corr.matrix[(idx[a], idx[b])]))
}
