//! Closed-form block entropies of the zero-field odd-odd ground state, the
//! plateau bounds they obey, and logarithmic finite-size scaling fits.

use crate::entanglement::EntropyResult;
use crate::error::{Error, Result};
use crate::scalar::{binary_entropy, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormEntropy<T = f64> {
    pub alpha: T,
    pub beta: T,
    pub x: T,
    pub v1: T,
    pub v2: T,
    /// Bits.
    pub entropy: T,
}

/// Block entropy of `c₀†|φ⁺⟩` at `h = 0` for odd `N`, odd `m` and
/// `m ≤ l ≤ (N − 1)/2`. With `α = l/N`, `β = m/N`:
///
/// ```text
/// x   = √(4(α² + 2β − α) + 1)
/// v₁,₂ = (√2/2) √(4(α² + β − α) + 1 ± (1 − 2α) x)
/// S   = m − 1 + H₂((1 + v₁)/2) + H₂((1 + v₂)/2)
/// ```
pub fn closed_form_entropy_oddodd<T: Real>(n_sites: usize, l: usize, m: usize) -> Result<ClosedFormEntropy<T>> {
    if n_sites % 2 == 0 || m % 2 == 0 {
        return Err(Error::Precondition(format!(
            "closed form needs odd N and odd m, got N = {n_sites}, m = {m}"
        )));
    }
    if m == 0 || l < m || 2 * l > n_sites - 1 {
        return Err(Error::Precondition(format!(
            "closed form needs m <= l <= (N-1)/2, got N = {n_sites}, m = {m}, l = {l}"
        )));
    }
    let alpha = T::of(l) / T::of(n_sites);
    let beta = T::of(m) / T::of(n_sites);
    let one = T::one();
    let four = T::lit(4.0);
    let x = (four * (alpha * alpha + beta + beta - alpha) + one).sqrt();
    let base = four * (alpha * alpha + beta - alpha) + one;
    let spread = (one - alpha - alpha) * x;
    let scale = T::lit(0.5) * T::lit(2.0).sqrt();
    let root = |r: T| scale * r.max(T::zero()).sqrt();
    let v1 = root(base + spread).min(one);
    let v2 = root(base - spread).min(one);
    let half = T::lit(0.5);
    let entropy = T::of(m - 1) + binary_entropy(half * (one + v1)) + binary_entropy(half * (one + v2));
    Ok(ClosedFormEntropy {
        alpha,
        beta,
        x,
        v1,
        v2,
        entropy,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsEntry<T = f64> {
    pub l: usize,
    pub entropy: T,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport<T = f64> {
    pub entries: Vec<BoundsEntry<T>>,
}

impl<T> BoundsReport<T> {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &BoundsEntry<T>> {
        self.entries.iter().filter(|e| !e.pass)
    }
}

/// Checks `m − 1e−9 ≤ S_l ≤ m + 1 + 1e−9` for each block result; `l` is read
/// from the region size.
pub fn entropy_bounds_check<T: Real>(results: &[EntropyResult<T>], m: usize) -> BoundsReport<T> {
    let tol = T::lit(1e-9);
    let lo = T::of(m) - tol;
    let hi = T::of(m + 1) + tol;
    BoundsReport {
        entries: results
            .iter()
            .map(|r| BoundsEntry {
                l: r.region.len(),
                entropy: r.value,
                pass: r.value >= lo && r.value <= hi,
            })
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingFit<T = f64> {
    /// Coefficient of `log₂ N`.
    pub slope: T,
    pub intercept: T,
    /// Root mean square of the fit residuals.
    pub residual: T,
    pub points: Vec<(usize, T)>,
    /// `3 × slope`.
    pub central_charge: T,
}

/// Ordinary least squares of `S` against `log₂ N`.
pub fn scaling_fit<T: Real>(points: &[(usize, T)]) -> Result<ScalingFit<T>> {
    if points.len() < 4 {
        return Err(Error::DegenerateFit(format!(
            "need at least 4 points, got {}",
            points.len()
        )));
    }
    let mut sizes: Vec<usize> = points.iter().map(|p| p.0).collect();
    sizes.sort_unstable();
    sizes.dedup();
    if sizes.len() != points.len() {
        return Err(Error::DegenerateFit("system sizes must be distinct".into()));
    }
    if sizes[0] == 0 {
        return Err(Error::DegenerateFit("system sizes must be positive".into()));
    }

    let k = T::of(points.len());
    let xs: Vec<T> = points.iter().map(|p| T::of(p.0).log2()).collect();
    let ys: Vec<T> = points.iter().map(|p| p.1).collect();
    let mean = |v: &[T]| v.iter().fold(T::zero(), |a, &b| a + b) / k;
    let (mx, my) = (mean(&xs), mean(&ys));
    let mut sxx = T::zero();
    let mut sxy = T::zero();
    for (&x, &y) in xs.iter().zip(&ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sq = xs.iter().zip(&ys).fold(T::zero(), |acc, (&x, &y)| {
        let e = y - (slope * x + intercept);
        acc + e * e
    });
    Ok(ScalingFit {
        slope,
        intercept,
        residual: (sq / k).sqrt(),
        points: points.to_vec(),
        central_charge: T::lit(3.0) * slope,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_equal_to_range() {
        for (n, m) in [(1001, 3), (101, 5), (9, 3)] {
            let c = closed_form_entropy_oddodd::<f64>(n, m, m).unwrap();
            let alpha = m as f64 / n as f64;
            assert!((c.x - (2.0 * alpha + 1.0)).abs() < 1e-14);
            assert!((c.v1 - 1.0).abs() < 1e-12);
            assert!((c.v2 - 2.0 * alpha).abs() < 1e-12);
            let want = (m - 1) as f64 + binary_entropy(0.5 + alpha);
            assert!((c.entropy - want).abs() < 1e-12);
        }
    }

    #[test]
    fn half_chain_approaches_m_plus_one() {
        let c = closed_form_entropy_oddodd::<f64>(100_001, 50_000, 3).unwrap();
        assert!(c.x < 2e-2);
        assert!((c.entropy - 4.0).abs() < 1e-3);
    }

    #[test]
    fn squared_sum_identity() {
        for l in 3..=50 {
            let c = closed_form_entropy_oddodd::<f64>(101, l, 3).unwrap();
            let lhs = c.v1 * c.v1 + c.v2 * c.v2;
            let rhs = 4.0 * (c.alpha * c.alpha + c.beta - c.alpha) + 1.0;
            assert!((lhs - rhs).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_out_of_domain() {
        assert!(closed_form_entropy_oddodd::<f64>(100, 10, 3).is_err());
        assert!(closed_form_entropy_oddodd::<f64>(101, 10, 4).is_err());
        assert!(closed_form_entropy_oddodd::<f64>(101, 2, 3).is_err());
        assert!(closed_form_entropy_oddodd::<f64>(101, 51, 3).is_err());
    }

    #[test]
    fn bounds_flag_corruption() {
        let mk = |l: usize, v: f64| EntropyResult {
            value: v,
            nu_spectrum: vec![],
            region: (0..l).collect(),
        };
        let good = entropy_bounds_check(&[mk(4, 3.2), mk(5, 4.0)], 3);
        assert!(good.all_pass());
        let bad = entropy_bounds_check(&[mk(4, 3.2), mk(5, 4.5)], 3);
        assert!(!bad.all_pass());
        assert_eq!(bad.failures().next().unwrap().l, 5);
    }

    #[test]
    fn exact_linear_data() {
        let pts: Vec<(usize, f64)> = [64usize, 128, 256, 1024, 4096]
            .iter()
            .map(|&n| (n, 0.5 * (n as f64).log2() + 1.0))
            .collect();
        let fit = scaling_fit(&pts).unwrap();
        assert!((fit.slope - 0.5).abs() < 1e-12);
        assert!((fit.intercept - 1.0).abs() < 1e-12);
        assert!(fit.residual < 1e-12);
        assert!((fit.central_charge - 1.5).abs() < 1e-12);
    }

    #[test]
    fn degenerate_designs_rejected() {
        assert!(scaling_fit(&[(5, 1.0), (5, 1.1), (5, 1.2), (5, 1.3)]).is_err());
        assert!(scaling_fit(&[(5, 1.0), (7, 1.1), (9, 1.2)]).is_err());
    }
}
