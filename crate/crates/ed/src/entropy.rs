use nalgebra::{DMatrix, SymmetricEigen};

use crate::EdError;

pub const MAX_SUBSET: usize = 12;

fn validate(state: &[f64], im: &[f64], sites: &[usize]) -> Result<usize, EdError> {
    if !state.len().is_power_of_two() {
        return Err(EdError::InvalidRequest("state length must be a power of two".into()));
    }
    if !im.is_empty() && im.len() != state.len() {
        return Err(EdError::InvalidRequest(
            "real and imaginary parts differ in length".into(),
        ));
    }
    let n = state.len().trailing_zeros() as usize;
    let norm: f64 = state.iter().chain(im).map(|x| x * x).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(EdError::Unnormalized { norm });
    }
    if sites.len() > MAX_SUBSET {
        return Err(EdError::InvalidRequest(format!(
            "subset of {} sites exceeds {MAX_SUBSET}",
            sites.len()
        )));
    }
    let mut seen = 0usize;
    for &s in sites {
        if s >= n || seen >> s & 1 == 1 {
            return Err(EdError::InvalidRequest(format!("bad or repeated site {s}")));
        }
        seen |= 1 << s;
    }
    Ok(n)
}

/// `Ψ[a, b]` with `a` running over configurations of `sites` and `b` over
/// the rest.
fn split(state: &[f64], n: usize, sites: &[usize], signed: bool) -> DMatrix<f64> {
    let inside: usize = sites.iter().map(|&s| 1 << s).sum();
    let rest: Vec<usize> = (0..n).filter(|s| inside >> s & 1 == 0).collect();
    let mut psi = DMatrix::zeros(1 << sites.len(), 1 << rest.len());
    for (s, &amp) in state.iter().enumerate() {
        if amp == 0.0 {
            continue;
        }
        let a = sites
            .iter()
            .enumerate()
            .fold(0usize, |acc, (k, &site)| acc | ((s >> site & 1) << k));
        let b = rest
            .iter()
            .enumerate()
            .fold(0usize, |acc, (k, &site)| acc | ((s >> site & 1) << k));
        let sign = if signed && reorder_is_odd(s, inside) { -1.0 } else { 1.0 };
        psi[(a, b)] = sign * amp;
    }
    psi
}

/// Parity of the permutation that moves occupied modes of the subset in
/// front of the occupied modes outside it.
fn reorder_is_odd(s: usize, inside: usize) -> bool {
    let mut outside_seen = 0u32;
    let mut swaps = 0u32;
    let mut bits = s;
    let mut j = 0;
    while bits != 0 {
        if bits & 1 == 1 {
            if inside >> j & 1 == 1 {
                swaps += outside_seen;
            } else {
                outside_seen += 1;
            }
        }
        bits >>= 1;
        j += 1;
    }
    swaps % 2 == 1
}

fn von_neumann(rho: DMatrix<f64>) -> f64 {
    SymmetricEigen::new(rho)
        .eigenvalues
        .iter()
        .filter(|&&p| p > 1e-300)
        .map(|&p| -p * p.log2())
        .sum::<f64>()
        .max(0.0)
}

fn entropy_of(psi: &DMatrix<f64>) -> f64 {
    von_neumann(if psi.nrows() <= psi.ncols() {
        psi * psi.transpose()
    } else {
        psi.transpose() * psi
    })
}

/// `Ψ = X + iY`: `ΨΨ† = (XXᵀ + YYᵀ) + i(YXᵀ − XYᵀ)`, embedded as a real
/// symmetric matrix of twice the size, which doubles every eigenvalue.
fn entropy_of_complex(x: &DMatrix<f64>, y: &DMatrix<f64>) -> f64 {
    let (x, y) = if x.nrows() <= x.ncols() {
        (x.clone(), y.clone())
    } else {
        // Ψ†Ψ has the same nonzero spectrum
        (x.transpose(), -y.transpose())
    };
    let re = &x * x.transpose() + &y * y.transpose();
    let im = &y * x.transpose() - &x * y.transpose();
    let d = re.nrows();
    let mut big = DMatrix::zeros(2 * d, 2 * d);
    big.view_mut((0, 0), (d, d)).copy_from(&re);
    big.view_mut((d, d), (d, d)).copy_from(&re);
    big.view_mut((d, 0), (d, d)).copy_from(&im);
    big.view_mut((0, d), (d, d)).copy_from(&(-&im));
    0.5 * von_neumann(big)
}

/// Von Neumann entropy in bits of the spin reduced density matrix on `sites`.
pub fn ed_subset_entropy(state: &[f64], sites: &[usize]) -> Result<f64, EdError> {
    let n = validate(state, &[], sites)?;
    if sites.is_empty() || sites.len() == n {
        return Ok(0.0);
    }
    Ok(entropy_of(&split(state, n, sites, false)))
}

/// Entropy of the Jordan–Wigner fermion modes on `sites`: the mode ordering
/// is permuted so the subset comes first before the partial trace. Equal to
/// [`ed_subset_entropy`] for contiguous blocks of parity-definite states.
pub fn ed_fermionic_subset_entropy(state: &[f64], sites: &[usize]) -> Result<f64, EdError> {
    let n = validate(state, &[], sites)?;
    if sites.is_empty() || sites.len() == n {
        return Ok(0.0);
    }
    Ok(entropy_of(&split(state, n, sites, true)))
}

/// [`ed_subset_entropy`] for `ψ = re + i·im`.
pub fn ed_subset_entropy_complex(re: &[f64], im: &[f64], sites: &[usize]) -> Result<f64, EdError> {
    complex_entropy(re, im, sites, false)
}

/// [`ed_fermionic_subset_entropy`] for `ψ = re + i·im`.
pub fn ed_fermionic_subset_entropy_complex(re: &[f64], im: &[f64], sites: &[usize]) -> Result<f64, EdError> {
    complex_entropy(re, im, sites, true)
}

fn complex_entropy(re: &[f64], im: &[f64], sites: &[usize], signed: bool) -> Result<f64, EdError> {
    if im.len() != re.len() {
        return Err(EdError::InvalidRequest(
            "real and imaginary parts differ in length".into(),
        ));
    }
    let n = validate(re, im, sites)?;
    if sites.is_empty() || sites.len() == n {
        return Ok(0.0);
    }
    Ok(entropy_of_complex(
        &split(re, n, sites, signed),
        &split(im, n, sites, signed),
    ))
}
