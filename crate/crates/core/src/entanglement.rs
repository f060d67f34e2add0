//! Von Neumann entropies of Gaussian states and the conditional mutual
//! information `S_AB + S_BC − S_B − S_ABC` on ring partitions.
//!
//! For a region with reduced correlation matrix `Γ` whose eigenvalues are
//! `±iν_k`, the entropy in bits is `Σ_k H₂((1 + ν_k)/2)`.

use nalgebra::DMatrix;

use crate::correlations::{correlation_matrix, reduced_gamma, MajoranaCorrelation};
use crate::error::{Error, Result};
use crate::freefermion::GroundStateInfo;
use crate::model::ModelParams;
use crate::scalar::{binary_entropy, Real};

/// Off-block entries below this are treated as exactly zero, which lets the
/// spectrum come from the `l × l` `(A, B)` block alone.
const BLOCK_STRUCTURE_TOL: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq)]
pub struct EntropyResult<T = f64> {
    /// Entropy in bits.
    pub value: T,
    /// One `ν ∈ [0, 1]` per `±iν` eigenvalue pair, descending.
    pub nu_spectrum: Vec<T>,
    /// Sites of the region, as passed in.
    pub region: Vec<usize>,
}

fn nu_values<T: Real>(gamma: &DMatrix<T>) -> Vec<T> {
    let k = gamma.nrows() / 2;
    let mut off_block = T::zero();
    for i in 0..k {
        for j in 0..k {
            off_block = off_block
                .max(gamma[(2 * i, 2 * j)].abs())
                .max(gamma[(2 * i + 1, 2 * j + 1)].abs());
        }
    }
    let mut nu: Vec<T> = if off_block < T::lit(BLOCK_STRUCTURE_TOL) {
        let ab = DMatrix::from_fn(k, k, |i, j| gamma[(2 * i, 2 * j + 1)]);
        ab.singular_values().iter().copied().collect()
    } else {
        let mut s: Vec<T> = gamma.singular_values().iter().copied().collect();
        s.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
        s.into_iter().step_by(2).collect()
    };
    nu.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
    nu
}

/// Entropy of a reduced correlation matrix. Values of `ν` in `(1, 1 + clip]`
/// are clamped to 1; anything further above 1 is rejected. Values just below
/// 1 are kept, since `H₂((1 + ν)/2)` is finite there and snapping them would
/// discard up to `½ clip log₂(2/clip)` bits per pair.
pub fn entropy_from_gamma<T: Real>(gamma: &DMatrix<T>, clip: T) -> Result<EntropyResult<T>> {
    if gamma.nrows() != gamma.ncols() || gamma.nrows() % 2 != 0 {
        return Err(Error::InvalidSites(format!(
            "correlation matrix must be square with even size, got {}x{}",
            gamma.nrows(),
            gamma.ncols()
        )));
    }
    let mut nu = nu_values(gamma);
    let half = T::lit(0.5);
    let mut value = T::zero();
    for v in nu.iter_mut() {
        if *v > T::one() + clip {
            return Err(Error::UnphysicalCorrelation { nu: v.as_f64() });
        }
        *v = v.min(T::one());
        value += binary_entropy(half * (T::one() + *v));
    }
    Ok(EntropyResult {
        value,
        nu_spectrum: nu,
        region: Vec::new(),
    })
}

/// Entropy of an arbitrary site set of a correlation matrix.
pub fn region_entropy<T: Real>(corr: &MajoranaCorrelation<T>, sites: &[usize], clip: T) -> Result<EntropyResult<T>> {
    let gamma = reduced_gamma(corr, sites)?;
    let mut result = entropy_from_gamma(&gamma, clip)?;
    result.region = sites.to_vec();
    Ok(result)
}

/// Sites `offset, offset + 1, …, offset + l − 1` on the ring.
pub fn block_sites(n_sites: usize, l: usize, offset: usize) -> Vec<usize> {
    (0..l).map(|k| (offset + k) % n_sites).collect()
}

/// Entropy of the contiguous block of `l` sites starting at `offset`,
/// for `m ≤ l ≤ N − 1`.
pub fn block_entropy<T: Real>(
    params: &ModelParams<T>,
    state: &GroundStateInfo<T>,
    l: usize,
    offset: usize,
) -> Result<EntropyResult<T>> {
    let corr = correlation_matrix(params, state)?;
    block_entropy_from(&corr, params, l, offset)
}

/// [`block_entropy`] reusing an existing correlation matrix.
pub fn block_entropy_from<T: Real>(
    corr: &MajoranaCorrelation<T>,
    params: &ModelParams<T>,
    l: usize,
    offset: usize,
) -> Result<EntropyResult<T>> {
    let n = params.n_sites;
    if l < params.range || l >= n {
        return Err(Error::Precondition(format!(
            "block length l = {l} must satisfy m = {} <= l <= N - 1 = {}",
            params.range,
            n - 1
        )));
    }
    if offset >= n {
        return Err(Error::InvalidSites(format!("offset {offset} outside 0..{n}")));
    }
    region_entropy(corr, &block_sites(n, l, offset), params.entropy_clip)
}

/// A contiguous stretch of the ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub start: usize,
    pub len: usize,
}

/// Which arcs absorb `N mod p` when the ring does not divide evenly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Remainder {
    /// The last arcs each take one extra site: 25 → (8, 8, 9).
    Back,
    /// The first arcs each take one extra site: 25 → (9, 8, 8).
    Front,
}

/// Three or four consecutive arcs `A, B, C[, D]` covering the ring once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub n_sites: usize,
    pub blocks: Vec<Arc>,
}

pub const PART_LABELS: [&str; 4] = ["A", "B", "C", "D"];

/// Near-equal arcs anchored at site 0, remainder on the last arcs.
pub fn make_partition(n_sites: usize, n_parts: usize) -> Result<Partition> {
    make_partition_with(n_sites, n_parts, Remainder::Back)
}

pub fn make_partition_with(n_sites: usize, n_parts: usize, remainder: Remainder) -> Result<Partition> {
    if n_parts != 3 && n_parts != 4 {
        return Err(Error::InvalidParams(format!(
            "partitions have 3 or 4 parts, got {n_parts}"
        )));
    }
    if n_sites < n_parts {
        return Err(Error::InvalidParams(format!(
            "cannot split {n_sites} sites into {n_parts} nonempty arcs"
        )));
    }
    let base = n_sites / n_parts;
    let extra = n_sites % n_parts;
    let mut start = 0;
    let blocks = (0..n_parts)
        .map(|i| {
            let bonus = match remainder {
                Remainder::Back => i >= n_parts - extra,
                Remainder::Front => i < extra,
            };
            let arc = Arc {
                start,
                len: base + usize::from(bonus),
            };
            start += arc.len;
            arc
        })
        .collect();
    Ok(Partition { n_sites, blocks })
}

impl Partition {
    pub fn n_parts(&self) -> usize {
        self.blocks.len()
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.len).collect()
    }

    /// Ring sites of the listed arcs, in order.
    pub fn sites(&self, arcs: &[usize]) -> Vec<usize> {
        arcs.iter()
            .flat_map(|&a| {
                let b = self.blocks[a];
                block_sites(self.n_sites, b.len, b.start)
            })
            .collect()
    }

    /// The same arcs shifted by `shift` sites around the ring.
    pub fn rotated(&self, shift: usize) -> Partition {
        Partition {
            n_sites: self.n_sites,
            blocks: self
                .blocks
                .iter()
                .map(|b| Arc {
                    start: (b.start + shift) % self.n_sites,
                    len: b.len,
                })
                .collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n_sites;
        if !(3..=4).contains(&self.blocks.len()) {
            return Err(Error::InvalidParams("partitions have 3 or 4 parts".into()));
        }
        if self.blocks.iter().any(|b| b.len == 0 || b.start >= n) {
            return Err(Error::InvalidParams(
                "arcs must be nonempty and start on the ring".into(),
            ));
        }
        for w in 0..self.blocks.len() {
            let here = self.blocks[w];
            let next = self.blocks[(w + 1) % self.blocks.len()];
            if (here.start + here.len) % n != next.start {
                return Err(Error::InvalidParams("arcs must be consecutive".into()));
            }
        }
        if self.blocks.iter().map(|b| b.len).sum::<usize>() != n {
            return Err(Error::InvalidParams("arc lengths must sum to N".into()));
        }
        Ok(())
    }
}

/// The four entropies entering the conditional mutual information.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CmiTerms<T = f64> {
    pub s_ab: T,
    pub s_bc: T,
    pub s_b: T,
    pub s_abc: T,
}

impl<T: Real> CmiTerms<T> {
    pub fn value(&self) -> T {
        self.s_ab + self.s_bc - self.s_b - self.s_abc
    }
}

pub fn cmi_terms<T: Real>(corr: &MajoranaCorrelation<T>, partition: &Partition, clip: T) -> Result<CmiTerms<T>> {
    if partition.n_sites != corr.n_sites {
        return Err(Error::InvalidParams(format!(
            "partition is for N = {} but the state has N = {}",
            partition.n_sites, corr.n_sites
        )));
    }
    partition.validate()?;
    let s = |arcs: &[usize]| region_entropy(corr, &partition.sites(arcs), clip).map(|r| r.value);
    Ok(CmiTerms {
        s_ab: s(&[0, 1])?,
        s_bc: s(&[1, 2])?,
        s_b: s(&[1])?,
        s_abc: s(&[0, 1, 2])?,
    })
}

/// `S_AB + S_BC − S_B − S_ABC` for an existing correlation matrix.
pub fn cmi_from<T: Real>(corr: &MajoranaCorrelation<T>, partition: &Partition, clip: T) -> Result<T> {
    Ok(cmi_terms(corr, partition, clip)?.value())
}

/// Conditional mutual information of `state`. With three arcs `A ∪ B ∪ C` is
/// the whole ring; with four, `D` separates `A` from `C`.
pub fn cmi<T: Real>(params: &ModelParams<T>, state: &GroundStateInfo<T>, partition: &Partition) -> Result<T> {
    let corr = correlation_matrix(params, state)?;
    cmi_from(&corr, partition, params.entropy_clip)
}
