use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::operator::Hamiltonian;
use crate::{EdError, FermionParity};

/// Chains up to this size are solved densely, one parity block at a time.
pub const DENSE_MAX_SITES: usize = 10;
/// Largest `k` accepted by the iterative solver.
pub const MAX_ITERATIVE_K: usize = 64;

const RESIDUAL_TOL: f64 = 1e-11;
const MAX_KRYLOV: usize = 400;
const MAX_RESTARTS: usize = 30;

/// Lowest eigenpairs, ascending, each with definite fermion parity.
#[derive(Debug, Clone)]
pub struct EdSpectrum {
    pub values: Vec<f64>,
    pub vectors: Vec<DVector<f64>>,
    pub parities: Vec<FermionParity>,
}

impl EdSpectrum {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn sorted_truncated(mut entries: Vec<(f64, DVector<f64>, FermionParity)>, k: usize) -> Self {
        entries.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite eigenvalues"));
        entries.truncate(k);
        let mut out = EdSpectrum {
            values: Vec::with_capacity(k),
            vectors: Vec::with_capacity(k),
            parities: Vec::with_capacity(k),
        };
        for (v, x, p) in entries {
            out.values.push(v);
            out.vectors.push(x);
            out.parities.push(p);
        }
        out
    }
}

/// Basis states with the given number parity of set bits.
pub fn parity_basis(n_sites: usize, parity: FermionParity) -> Vec<usize> {
    (0..1usize << n_sites)
        .filter(|s| FermionParity::of_state(*s) == parity)
        .collect()
}

/// The `k` lowest eigenvalues and eigenvectors. Dense per parity block for
/// `N ≤ 10`, otherwise Lanczos with full reorthogonalization and deflation
/// of converged vectors.
pub fn ed_spectrum(h: &Hamiltonian, k: usize) -> Result<EdSpectrum, EdError> {
    if k == 0 {
        return Err(EdError::InvalidRequest("k must be positive".into()));
    }
    if h.n_sites() <= DENSE_MAX_SITES {
        return Ok(dense_spectrum(h, k));
    }
    if k > MAX_ITERATIVE_K {
        return Err(EdError::InvalidRequest(format!(
            "iterative solver supports k <= {MAX_ITERATIVE_K}, got {k}"
        )));
    }
    let mut entries = Vec::new();
    for parity in [FermionParity::Even, FermionParity::Odd] {
        let sector_dim = 1usize << (h.n_sites() - 1);
        let want = k.min(sector_dim);
        for (value, vector) in lanczos_lowest(h, parity, want)? {
            entries.push((value, vector, parity));
        }
    }
    Ok(EdSpectrum::sorted_truncated(entries, k))
}

/// Full spectrum of every parity block, then the `k` lowest overall.
pub fn dense_spectrum(h: &Hamiltonian, k: usize) -> EdSpectrum {
    let dim = h.dim();
    let mut entries = Vec::new();
    for parity in [FermionParity::Even, FermionParity::Odd] {
        let basis = parity_basis(h.n_sites(), parity);
        let eig = SymmetricEigen::new(h.dense_block(&basis));
        let mut order: Vec<usize> = (0..basis.len()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
        for &c in order.iter().take(k) {
            let mut full = DVector::zeros(dim);
            for (i, &s) in basis.iter().enumerate() {
                full[s] = eig.eigenvectors[(i, c)];
            }
            entries.push((eig.eigenvalues[c], full, parity));
        }
    }
    EdSpectrum::sorted_truncated(entries, k)
}

/// All eigenpairs within `tol` of the ground energy, growing `k` until the
/// manifold is closed.
pub fn ed_ground_manifold(h: &Hamiltonian, tol: f64) -> Result<EdSpectrum, EdError> {
    let dim = h.dim();
    let cap = if h.n_sites() <= DENSE_MAX_SITES {
        dim
    } else {
        MAX_ITERATIVE_K
    };
    let mut k = 8.min(cap);
    loop {
        let spec = ed_spectrum(h, k)?;
        let e0 = spec.values[0];
        let inside = spec.values.iter().filter(|&&v| v <= e0 + tol).count();
        if inside < spec.len() || k >= cap {
            return Ok(EdSpectrum::sorted_truncated(
                spec.values
                    .into_iter()
                    .zip(spec.vectors)
                    .zip(spec.parities)
                    .map(|((v, x), p)| (v, x, p))
                    .take(inside)
                    .collect(),
                inside,
            ));
        }
        k = (2 * k).min(cap);
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    y.iter_mut().zip(x).for_each(|(yi, xi)| *yi += alpha * xi);
}

fn normalize(x: &mut [f64]) -> f64 {
    let norm = dot(x, x).sqrt();
    if norm > 0.0 {
        x.iter_mut().for_each(|v| *v /= norm);
    }
    norm
}

fn orthogonalize(x: &mut [f64], against: &[Vec<f64>]) {
    for _ in 0..2 {
        for v in against {
            let c = dot(v, x);
            axpy(-c, v, x);
        }
    }
}

/// Lowest `count` eigenpairs in one parity sector, found one at a time.
fn lanczos_lowest(h: &Hamiltonian, parity: FermionParity, count: usize) -> Result<Vec<(f64, DVector<f64>)>, EdError> {
    let dim = h.dim();
    let seed = 0x5eed_0000 + h.n_sites() as u64 * 2 + (parity == FermionParity::Odd) as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut locked: Vec<Vec<f64>> = Vec::new();
    let mut out = Vec::new();

    for _ in 0..count {
        let mut start: Vec<f64> = (0..dim)
            .map(|s| {
                if FermionParity::of_state(s) == parity {
                    rng.gen_range(-1.0..1.0)
                } else {
                    0.0
                }
            })
            .collect();
        let mut last = (f64::NAN, f64::INFINITY);
        let mut converged = None;
        for _ in 0..MAX_RESTARTS {
            orthogonalize(&mut start, &locked);
            if normalize(&mut start) < 1e-12 {
                return Err(EdError::NoConvergence {
                    iterations: 0,
                    residual: f64::NAN,
                    detail: "start vector vanished after deflation".into(),
                });
            }
            let (theta, ritz) = lanczos_run(h, &start, &locked);
            let hv = h.apply_vec(&ritz);
            let residual = hv
                .iter()
                .zip(&ritz)
                .map(|(a, b)| (a - theta * b).powi(2))
                .sum::<f64>()
                .sqrt();
            last = (theta, residual);
            if residual < RESIDUAL_TOL * theta.abs().max(1.0) {
                converged = Some((theta, ritz));
                break;
            }
            start = ritz;
        }
        let Some((theta, ritz)) = converged else {
            return Err(EdError::NoConvergence {
                iterations: MAX_RESTARTS * MAX_KRYLOV,
                residual: last.1,
                detail: format!("eigenvalue estimate {} after {} restarts", last.0, MAX_RESTARTS),
            });
        };
        out.push((theta, DVector::from_vec(ritz.clone())));
        locked.push(ritz);
    }
    Ok(out)
}

/// One Lanczos pass from `start`, deflated against `locked`; returns the
/// lowest Ritz pair.
fn lanczos_run(h: &Hamiltonian, start: &[f64], locked: &[Vec<f64>]) -> (f64, Vec<f64>) {
    let mut basis: Vec<Vec<f64>> = vec![start.to_vec()];
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut w = vec![0.0; h.dim()];
    loop {
        let j = basis.len() - 1;
        h.apply(&basis[j], &mut w);
        orthogonalize(&mut w, locked);
        let alpha = dot(&basis[j], &w);
        alphas.push(alpha);
        axpy(-alpha, &basis[j], &mut w);
        if j > 0 {
            axpy(-betas[j - 1], &basis[j - 1], &mut w);
        }
        orthogonalize(&mut w, &basis);
        orthogonalize(&mut w, locked);
        let beta = dot(&w, &w).sqrt();

        let size = alphas.len();
        let check = size % 4 == 0 || beta < 1e-12 || size >= MAX_KRYLOV;
        if check {
            let t = DMatrix::from_fn(size, size, |a, b| {
                if a == b {
                    alphas[a]
                } else if a + 1 == b || b + 1 == a {
                    betas[a.min(b)]
                } else {
                    0.0
                }
            });
            let eig = SymmetricEigen::new(t);
            let low = (0..size)
                .min_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap())
                .unwrap();
            let tail = eig.eigenvectors[(size - 1, low)].abs();
            if beta * tail < 0.1 * RESIDUAL_TOL || beta < 1e-12 || size >= MAX_KRYLOV {
                let mut ritz = vec![0.0; h.dim()];
                for (i, v) in basis.iter().enumerate() {
                    axpy(eig.eigenvectors[(i, low)], v, &mut ritz);
                }
                orthogonalize(&mut ritz, locked);
                normalize(&mut ritz);
                let theta = h.expectation(&ritz);
                return (theta, ritz);
            }
        }
        betas.push(beta);
        let next: Vec<f64> = w.iter().map(|v| v / beta).collect();
        basis.push(next);
    }
}
