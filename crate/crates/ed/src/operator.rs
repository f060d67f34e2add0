use nalgebra::DMatrix;

use crate::EdError;

/// Largest chain the oracle accepts; `2^14` amplitudes per vector.
pub const MAX_SITES: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// `coefficient · Π σ^{axis}_{site}` over distinct sites.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinTerm {
    pub coefficient: f64,
    pub factors: Vec<(usize, Axis)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpinOperatorSpec {
    pub n_sites: usize,
    pub terms: Vec<SpinTerm>,
}

/// `J Σ_j σˣ_j σᶻ_{j+1} ⋯ σᶻ_{j+m−1} σˣ_{j+m} − h Σ_j σᶻ_j` on a ring of
/// `n` sites (0-based, indices mod `n`).
pub fn cluster_model(n: usize, m: usize, coupling: f64, field: f64) -> SpinOperatorSpec {
    let mut terms = Vec::with_capacity(2 * n);
    for j in 0..n {
        let mut factors = vec![(j, Axis::X)];
        factors.extend((1..m).map(|d| ((j + d) % n, Axis::Z)));
        factors.push(((j + m) % n, Axis::X));
        terms.push(SpinTerm {
            coefficient: coupling,
            factors,
        });
    }
    if field != 0.0 {
        for j in 0..n {
            terms.push(SpinTerm {
                coefficient: -field,
                factors: vec![(j, Axis::Z)],
            });
        }
    }
    SpinOperatorSpec { n_sites: n, terms }
}

/// A Pauli string acting on a basis state `s` (bit `j` set means `σᶻ_j = +1`):
/// `P|s⟩ = coefficient · (−1)^{popcount(!s & sign_mask)} |s ^ flip⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct CompiledTerm {
    coefficient: f64,
    flip: u32,
    sign_mask: u32,
}

/// Matrix-free Hamiltonian on the full `2^N` space.
#[derive(Debug, Clone)]
pub struct Hamiltonian {
    n_sites: usize,
    terms: Vec<CompiledTerm>,
}

pub fn build_hamiltonian(spec: &SpinOperatorSpec) -> Result<Hamiltonian, EdError> {
    let n = spec.n_sites;
    if n == 0 || n > MAX_SITES {
        return Err(EdError::TooLarge { n_sites: n });
    }
    let mut terms = Vec::with_capacity(spec.terms.len());
    for term in &spec.terms {
        let mut used = 0u32;
        let mut flip = 0u32;
        let mut sign_mask = 0u32;
        let mut n_y = 0;
        for &(site, axis) in &term.factors {
            if site >= n {
                return Err(EdError::InvalidOperator(format!("site {site} outside 0..{n}")));
            }
            let bit = 1u32 << site;
            if used & bit != 0 {
                return Err(EdError::InvalidOperator(format!("site {site} repeated in one term")));
            }
            used |= bit;
            match axis {
                Axis::X => flip |= bit,
                Axis::Z => sign_mask |= bit,
                Axis::Y => {
                    // σʸ|1⟩ = i|0⟩, σʸ|0⟩ = −i|1⟩
                    flip |= bit;
                    sign_mask |= bit;
                    n_y += 1;
                }
            }
        }
        if n_y % 2 == 1 {
            return Err(EdError::InvalidOperator(
                "terms with an odd number of σʸ factors are not real".into(),
            ));
        }
        let coefficient = if n_y % 4 == 2 {
            -term.coefficient
        } else {
            term.coefficient
        };
        terms.push(CompiledTerm {
            coefficient,
            flip,
            sign_mask,
        });
    }
    Ok(Hamiltonian { n_sites: n, terms })
}

impl Hamiltonian {
    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn dim(&self) -> usize {
        1 << self.n_sites
    }

    /// `y = H x`.
    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        let dim = self.dim();
        assert_eq!(x.len(), dim);
        assert_eq!(y.len(), dim);
        y.iter_mut().for_each(|v| *v = 0.0);
        let full = (dim - 1) as u32;
        for (s, &amp) in x.iter().enumerate() {
            if amp == 0.0 {
                continue;
            }
            let s = s as u32;
            for t in &self.terms {
                let negative = ((!s & full) & t.sign_mask).count_ones() % 2 == 1;
                let c = if negative { -t.coefficient } else { t.coefficient };
                y[(s ^ t.flip) as usize] += c * amp;
            }
        }
    }

    pub fn apply_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.dim()];
        self.apply(x, &mut y);
        y
    }

    /// `⟨x|H|x⟩`.
    pub fn expectation(&self, x: &[f64]) -> f64 {
        let y = self.apply_vec(x);
        x.iter().zip(&y).map(|(a, b)| a * b).sum()
    }

    /// Matrix of `H` restricted to the listed basis states.
    pub fn dense_block(&self, basis: &[usize]) -> DMatrix<f64> {
        let mut position = vec![usize::MAX; self.dim()];
        for (i, &s) in basis.iter().enumerate() {
            position[s] = i;
        }
        let full = (self.dim() - 1) as u32;
        let mut mat = DMatrix::zeros(basis.len(), basis.len());
        for (col, &s) in basis.iter().enumerate() {
            let s32 = s as u32;
            for t in &self.terms {
                let negative = ((!s32 & full) & t.sign_mask).count_ones() % 2 == 1;
                let c = if negative { -t.coefficient } else { t.coefficient };
                let row = position[(s32 ^ t.flip) as usize];
                assert!(row != usize::MAX, "operator leaves the requested block");
                mat[(row, col)] += c;
            }
        }
        mat
    }

    /// Full dense matrix; only sensible for small `N`.
    pub fn dense(&self) -> DMatrix<f64> {
        let basis: Vec<usize> = (0..self.dim()).collect();
        self.dense_block(&basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_oversized_chain() {
        assert!(matches!(
            build_hamiltonian(&cluster_model(15, 3, 1.0, 0.0)),
            Err(EdError::TooLarge { n_sites: 15 })
        ));
    }

    #[test]
    fn pauli_y_pair_matches_xx_plus_yy_structure() {
        // σʸσʸ = −σˣσˣ on |00⟩ ↔ |11⟩ and +σˣσˣ on |01⟩ ↔ |10⟩
        let spec = SpinOperatorSpec {
            n_sites: 2,
            terms: vec![SpinTerm {
                coefficient: 1.0,
                factors: vec![(0, Axis::Y), (1, Axis::Y)],
            }],
        };
        let d = build_hamiltonian(&spec).unwrap().dense();
        assert_eq!(d[(3, 0)], -1.0);
        assert_eq!(d[(0, 3)], -1.0);
        assert_eq!(d[(1, 2)], 1.0);
        assert_eq!(d[(2, 1)], 1.0);
    }

    #[test]
    fn field_term_sign() {
        let h = build_hamiltonian(&SpinOperatorSpec {
            n_sites: 1,
            terms: vec![SpinTerm {
                coefficient: -0.5,
                factors: vec![(0, Axis::Z)],
            }],
        })
        .unwrap()
        .dense();
        // bit 1 is spin up: −h σᶻ = −h there
        assert_eq!(h[(1, 1)], -0.5);
        assert_eq!(h[(0, 0)], 0.5);
    }
}
