//! Jordan–Wigner fermions on the spin basis, `c_j = Π_{k<j} (−σᶻ_k) σ⁻_j`.
//!
//! Both Majorana-type combinations `A_j = c†_j + c_j` and `B_j = c†_j − c_j`
//! are real operators. The Hermitian Majoranas are `χ_{2j} = A_j` and
//! `χ_{2j+1} = i B_j`; complex states are carried as `(re, im)` pairs.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::EdError;

fn string_sign(s: usize, j: usize) -> f64 {
    let below = s & ((1usize << j) - 1);
    if below.count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `y = A_j x`.
pub fn apply_a(j: usize, x: &[f64]) -> Vec<f64> {
    let mut y = vec![0.0; x.len()];
    for (s, &amp) in x.iter().enumerate() {
        if amp != 0.0 {
            y[s ^ (1 << j)] += string_sign(s, j) * amp;
        }
    }
    y
}

/// `y = B_j x`.
pub fn apply_b(j: usize, x: &[f64]) -> Vec<f64> {
    let mut y = vec![0.0; x.len()];
    for (s, &amp) in x.iter().enumerate() {
        if amp != 0.0 {
            let occupied = s >> j & 1 == 1;
            let sign = string_sign(s, j) * if occupied { -1.0 } else { 1.0 };
            y[s ^ (1 << j)] += sign * amp;
        }
    }
    y
}

fn n_sites_of(dim: usize) -> usize {
    assert!(dim.is_power_of_two(), "state length must be a power of two");
    dim.trailing_zeros() as usize
}

fn overlap(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `K_ij = ⟨ψ|A_i B_j|ψ⟩`.
pub fn ab_correlations(state: &[f64]) -> DMatrix<f64> {
    let n = n_sites_of(state.len());
    let b_psi: Vec<Vec<f64>> = (0..n).map(|j| apply_b(j, state)).collect();
    let a_psi: Vec<Vec<f64>> = (0..n).map(|i| apply_a(i, state)).collect();
    // ⟨ψ|A_i B_j|ψ⟩ = (A_i ψ)·(B_j ψ) since A_i is symmetric
    DMatrix::from_fn(n, n, |i, j| overlap(&a_psi[i], &b_psi[j]))
}

/// Applies `Σ_ij K_ij A_i B_j` to `x`.
pub fn apply_bilinear(k: &DMatrix<f64>, x: &[f64]) -> Vec<f64> {
    let n = k.nrows();
    let mut y = vec![0.0; x.len()];
    for j in 0..n {
        let bx = apply_b(j, x);
        for i in 0..n {
            let c = k[(i, j)];
            if c != 0.0 {
                let abx = apply_a(i, &bx);
                y.iter_mut().zip(&abx).for_each(|(yi, v)| *yi += c * v);
            }
        }
    }
    y
}

/// Picks the state in `span(manifold)` closest to the Gaussian state whose
/// `(A, B)` correlation block is `k`, by minimizing the parent operator
/// `−Σ K_ij A_i B_j` inside the span. Returns the state and the minimum; the
/// minimum equals `−N` exactly when the Gaussian state lies in the span.
pub fn select_gaussian_state(manifold: &[DVector<f64>], k: &DMatrix<f64>) -> Result<(DVector<f64>, f64), EdError> {
    if manifold.is_empty() {
        return Err(EdError::InvalidRequest("empty manifold".into()));
    }
    let d = manifold.len();
    let images: Vec<Vec<f64>> = manifold
        .iter()
        .map(|v| apply_bilinear(k, v.as_slice()).into_iter().map(|x| -x).collect())
        .collect();
    let q = DMatrix::from_fn(d, d, |a, b| {
        let ab = overlap(manifold[a].as_slice(), &images[b]);
        let ba = overlap(manifold[b].as_slice(), &images[a]);
        0.5 * (ab + ba)
    });
    let eig = SymmetricEigen::new(q);
    let low = (0..d)
        .min_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap())
        .unwrap();
    let mut state = DVector::zeros(manifold[0].len());
    for (c, v) in manifold.iter().enumerate() {
        state += v * eig.eigenvectors[(c, low)];
    }
    let norm = state.norm();
    Ok((state / norm, eig.eigenvalues[low]))
}

/// `O_{2j} = A_j`, `O_{2j+1} = B_j`, so that `χ_a = i^{[a odd]} O_a`.
fn apply_op(a: usize, x: &[f64]) -> Vec<f64> {
    if a % 2 == 0 {
        apply_a(a / 2, x)
    } else {
        apply_b(a / 2, x)
    }
}

/// `Γ_ab = Im ⟨ψ|χ_a χ_b|ψ⟩` for `a ≠ b`, zero on the diagonal, for
/// `ψ = re + i·im`.
pub fn majorana_correlations(re: &[f64], im: &[f64]) -> DMatrix<f64> {
    let n = n_sites_of(re.len());
    assert_eq!(re.len(), im.len(), "real and imaginary parts differ in length");
    let phi: Vec<(Vec<f64>, Vec<f64>)> = (0..2 * n).map(|a| (apply_op(a, re), apply_op(a, im))).collect();
    DMatrix::from_fn(2 * n, 2 * n, |a, b| {
        if a == b {
            return 0.0;
        }
        // ⟨ψ|O_a O_b|ψ⟩ = s_a ⟨O_a ψ|O_b ψ⟩ with A† = A, B† = −B
        let (ar, ai) = &phi[a];
        let (br, bi) = &phi[b];
        let s_a = if a % 2 == 0 { 1.0 } else { -1.0 };
        let re_part = s_a * (overlap(ar, br) + overlap(ai, bi));
        let im_part = s_a * (overlap(ar, bi) - overlap(ai, br));
        // multiply by i^{n_B}
        match a % 2 + b % 2 {
            0 => im_part,
            1 => re_part,
            _ => -im_part,
        }
    })
}

/// `P x = R x + i I x` for real `x`, with `P = (i/2) Σ_{a≠b} Γ_ab χ_a χ_b`.
fn apply_parent(gamma: &DMatrix<f64>, x: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let k = gamma.nrows();
    let y: Vec<Vec<f64>> = (0..k).map(|b| apply_op(b, x)).collect();
    let mut r = vec![0.0; x.len()];
    let mut i_part = vec![0.0; x.len()];
    for a in 0..k {
        let mut tr = vec![0.0; x.len()];
        let mut ti = vec![0.0; x.len()];
        for (b, yb) in y.iter().enumerate() {
            let g = gamma[(a, b)];
            if a == b || g == 0.0 {
                continue;
            }
            // (i/2) Γ i^{n_B}: n_B = 0 → i/2, 1 → −1/2, 2 → −i/2
            let (target, c) = match a % 2 + b % 2 {
                0 => (&mut ti, 0.5 * g),
                1 => (&mut tr, -0.5 * g),
                _ => (&mut ti, -0.5 * g),
            };
            target.iter_mut().zip(yb).for_each(|(t, v)| *t += c * v);
        }
        for (acc, t) in [(&mut r, tr), (&mut i_part, ti)] {
            if t.iter().any(|v| *v != 0.0) {
                acc.iter_mut().zip(apply_op(a, &t)).for_each(|(u, v)| *u += v);
            }
        }
    }
    (r, i_part)
}

/// Complex generalization of [`select_gaussian_state`] for an arbitrary
/// Majorana correlation matrix `Γ` (layout `(A_0, B_0, A_1, …)`). Returns
/// `(re, im, min)`; the minimum of the parent operator over unit vectors of
/// the complex span is `−N` exactly when the Gaussian state lies in it.
pub fn select_gaussian_state_complex(
    manifold: &[DVector<f64>],
    gamma: &DMatrix<f64>,
) -> Result<(Vec<f64>, Vec<f64>, f64), EdError> {
    if manifold.is_empty() {
        return Err(EdError::InvalidRequest("empty manifold".into()));
    }
    let dim = manifold[0].len();
    if gamma.nrows() != 2 * n_sites_of(dim) || gamma.ncols() != gamma.nrows() {
        return Err(EdError::InvalidRequest(
            "correlation matrix does not match the state size".into(),
        ));
    }
    let d = manifold.len();
    let images: Vec<(Vec<f64>, Vec<f64>)> = manifold.iter().map(|v| apply_parent(gamma, v.as_slice())).collect();
    // Hermitian Q = Qr + i Qi embedded as [[Qr, −Qi], [Qi, Qr]]
    let mut big = DMatrix::zeros(2 * d, 2 * d);
    for k in 0..d {
        for l in 0..d {
            let v = manifold[k].as_slice();
            let qr = 0.5 * (overlap(v, &images[l].0) + overlap(manifold[l].as_slice(), &images[k].0));
            let qi = 0.5 * (overlap(v, &images[l].1) - overlap(manifold[l].as_slice(), &images[k].1));
            big[(k, l)] = qr;
            big[(k + d, l + d)] = qr;
            big[(k + d, l)] = qi;
            big[(k, l + d)] = -qi;
        }
    }
    let eig = SymmetricEigen::new(big);
    let low = (0..2 * d)
        .min_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap())
        .unwrap();
    let mut re = vec![0.0; dim];
    let mut im = vec![0.0; dim];
    for (k, v) in manifold.iter().enumerate() {
        let (x, y) = (eig.eigenvectors[(k, low)], eig.eigenvectors[(k + d, low)]);
        for (s, &amp) in v.iter().enumerate() {
            re[s] += x * amp;
            im[s] += y * amp;
        }
    }
    let norm = (overlap(&re, &re) + overlap(&im, &im)).sqrt();
    re.iter_mut().chain(im.iter_mut()).for_each(|v| *v /= norm);
    Ok((re, im, eig.eigenvalues[low]))
}
