//! Real-space Bogoliubov–de Gennes diagonalization.
//!
//! For real `A = Aᵀ`, `B = −Bᵀ` the quadratic form only depends on
//! `M = A − B`. Writing `a_i = c†_i + c_i`, `b_i = i(c†_i − c_i)`,
//!
//! ```text
//! H = (i/2) Σ_ij M_ij a_i b_j + constant + ½ tr A,
//! ```
//!
//! and the singular value decomposition `M = U S Vᵀ` rotates this into
//! `Σ_k s_k (d†_k d_k − ½)` with `a'_k = Σ_i U_ik a_i`, `b'_k = Σ_j V_jk b_j`.

use nalgebra::{DMatrix, SVD};

use crate::error::{Error, Result};
use crate::model::{Parity, QuadraticForm, Sector};
use crate::scalar::Real;

use super::modes::ZERO_MODE_TOL;

#[derive(Debug, Clone, PartialEq)]
pub struct BdgSolution<T = f64> {
    /// Quasiparticle energies, ascending.
    pub energies: Vec<T>,
    /// Orthogonal `2N × 2N` map from site Majoranas `(a_0, b_0, a_1, …)` to
    /// quasiparticle Majoranas `(a'_0, b'_0, …)`: `x'_k = Σ_i O_ki x_i`.
    pub transform: DMatrix<T>,
    pub vacuum_energy: T,
    pub vacuum_parity: Parity,
    pub sector: Sector,
    left: DMatrix<T>,
    right: DMatrix<T>,
}

/// Diagonalizes one sector's quadratic form.
pub fn diagonalize<T: Real>(form: &QuadraticForm<T>) -> Result<BdgSolution<T>> {
    let n = form.n_modes();
    let m = &form.hopping - &form.pairing;
    let svd = SVD::try_new(m, true, true, T::default_epsilon(), 0)
        .ok_or_else(|| Error::Decomposition(format!("SVD of {n}x{n} BdG block")))?;
    let u = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested Vᵀ");
    let s = svd.singular_values;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| s[i].partial_cmp(&s[j]).expect("finite singular values"));

    let mut left = DMatrix::zeros(n, n);
    let mut right = DMatrix::zeros(n, n);
    let mut energies = Vec::with_capacity(n);
    for (k, &src) in order.iter().enumerate() {
        left.set_column(k, &u.column(src));
        right.set_column(k, &v_t.row(src).transpose());
        let e = s[src];
        energies.push(if e < T::lit(ZERO_MODE_TOL) { T::zero() } else { e });
    }

    let half = T::lit(0.5);
    let sum_s = s.iter().fold(T::zero(), |acc, &x| acc + x);
    let vacuum_energy = form.constant + half * form.hopping.trace() - half * sum_s;

    let mut transform = DMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        for i in 0..n {
            transform[(2 * k, 2 * i)] = left[(i, k)];
            transform[(2 * k + 1, 2 * i + 1)] = right[(i, k)];
        }
    }
    let det = left.determinant() * right.determinant();

    Ok(BdgSolution {
        energies,
        transform,
        vacuum_energy,
        vacuum_parity: Parity::from_sign(if det < T::zero() { -1 } else { 1 }),
        sector: form.sector,
        left,
        right,
    })
}

/// Fermion parity of the quasiparticle vacuum: `sign det O`.
pub fn vacuum_parity<T: Real>(solution: &BdgSolution<T>) -> Parity {
    solution.vacuum_parity
}

impl<T: Real> BdgSolution<T> {
    pub fn n_modes(&self) -> usize {
        self.energies.len()
    }

    /// Hopping and pairing matrices rebuilt from the decomposition.
    pub fn reconstruct(&self) -> (DMatrix<T>, DMatrix<T>) {
        let s = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(self.energies.clone()));
        let m = &self.left * s * self.right.transpose();
        let half = T::lit(0.5);
        let mt = m.transpose();
        let a = (&m + &mt) * half;
        let b = (&mt - &m) * half;
        (a, b)
    }

    /// `U D Vᵀ` with `D_kk = −1` for excited quasiparticles and `+1`
    /// otherwise. This is the `(a_i, b_j)` block of the correlation matrix.
    pub fn correlation_block(&self, excited: &[usize]) -> DMatrix<T> {
        let mut scaled = self.left.clone();
        for &k in excited {
            let mut col = scaled.column_mut(k);
            col.neg_mut();
        }
        scaled * self.right.transpose()
    }

    /// Energy of the vacuum with the given quasiparticles excited.
    pub fn energy_with(&self, excited: &[usize]) -> T {
        excited
            .iter()
            .fold(self.vacuum_energy, |acc, &k| acc + self.energies[k])
    }
}
