use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::model::{ModelParams, Parity, Sector};
use crate::scalar::Real;

use super::modes::SectorModes;

/// One many-body eigenstate: a sector vacuum with some quasiparticles added.
#[derive(Debug, Clone, PartialEq)]
pub struct ManyBodyLevel<T = f64> {
    pub energy: T,
    pub sector: Sector,
    /// Indices into [`SectorModes::modes`].
    pub excited: Vec<usize>,
}

struct Frontier<T> {
    sum: T,
    // positions in the energy-sorted order
    members: Vec<usize>,
}

impl<T: Real> PartialEq for Frontier<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<T: Real> Eq for Frontier<T> {}

impl<T: Real> PartialOrd for Frontier<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Real> Ord for Frontier<T> {
    // reversed so that `BinaryHeap` pops the smallest sum first
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .sum
            .partial_cmp(&self.sum)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.members.cmp(&self.members))
    }
}

/// Subsets of non-negative `energies` in ascending total, keeping only those
/// whose size has the requested parity. Stops after `limit` accepted subsets
/// or once the running total exceeds `cutoff`.
///
/// Each subset is reached exactly once: from a subset whose largest sorted
/// position is `i`, the children either append `i + 1` or replace `i` by
/// `i + 1`, both of which never decrease the total.
pub fn lowest_subsets<T: Real>(
    energies: &[T],
    size_parity: Parity,
    limit: usize,
    cutoff: Option<T>,
) -> Vec<(T, Vec<usize>)> {
    let n = energies.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        energies[a]
            .partial_cmp(&energies[b])
            .unwrap_or(Ordering::Equal)
            .then(a.cmp(&b))
    });
    let sorted: Vec<T> = order.iter().map(|&i| energies[i]).collect();

    let mut out = Vec::new();
    let beyond = |x: T| cutoff.is_some_and(|c| x > c);
    if limit == 0 {
        return out;
    }
    if size_parity == Parity::Even {
        if beyond(T::zero()) {
            return out;
        }
        out.push((T::zero(), Vec::new()));
    }
    let mut heap = BinaryHeap::new();
    if n > 0 {
        heap.push(Frontier {
            sum: sorted[0],
            members: vec![0],
        });
    }
    while out.len() < limit {
        let Some(Frontier { sum, members }) = heap.pop() else {
            break;
        };
        if beyond(sum) {
            break;
        }
        let last = *members.last().expect("nonempty frontier subset");
        if last + 1 < n {
            let mut grown = members.clone();
            grown.push(last + 1);
            heap.push(Frontier {
                sum: sum + sorted[last + 1],
                members: grown,
            });
            let mut shifted = members.clone();
            *shifted.last_mut().expect("nonempty") = last + 1;
            heap.push(Frontier {
                sum: sum - sorted[last] + sorted[last + 1],
                members: shifted,
            });
        }
        if Parity::from_count(members.len()) == size_parity {
            let mut original: Vec<usize> = members.iter().map(|&p| order[p]).collect();
            original.sort_unstable();
            out.push((sum, original));
        }
    }
    out
}

/// Parity-allowed levels of one sector, ascending.
pub fn sector_levels<T: Real>(modes: &SectorModes<T>, limit: usize, cutoff: Option<T>) -> Vec<ManyBodyLevel<T>> {
    let need = if modes.vacuum_parity == modes.sector.required_parity() {
        Parity::Even
    } else {
        Parity::Odd
    };
    let energies = modes.energies();
    let shifted_cutoff = cutoff.map(|c| c - modes.vacuum_energy);
    lowest_subsets(&energies, need, limit, shifted_cutoff)
        .into_iter()
        .map(|(e, excited)| ManyBodyLevel {
            energy: modes.vacuum_energy + e,
            sector: modes.sector,
            excited,
        })
        .collect()
}

/// The `k` lowest levels of the spin chain, merged over both sectors.
pub fn low_levels<T: Real>(params: &ModelParams<T>, k: usize) -> Result<Vec<ManyBodyLevel<T>>> {
    if k == 0 {
        return Err(Error::InvalidParams("k must be positive".into()));
    }
    params.validate()?;
    let mut all: Vec<ManyBodyLevel<T>> = Sector::ALL
        .iter()
        .flat_map(|&s| sector_levels(&SectorModes::solve(params, s), k, None))
        .collect();
    all.sort_by(|a, b| {
        a.energy
            .partial_cmp(&b.energy)
            .unwrap_or(Ordering::Equal)
            .then_with(|| (a.sector == Sector::Minus).cmp(&(b.sector == Sector::Minus)))
    });
    all.truncate(k);
    Ok(all)
}

/// The `k` lowest many-body energies, ascending.
pub fn low_spectrum<T: Real>(params: &ModelParams<T>, k: usize) -> Result<Vec<T>> {
    Ok(low_levels(params, k)?.into_iter().map(|l| l.energy).collect())
}

/// Every level within `degeneracy_tol` of the global minimum.
pub fn ground_manifold<T: Real>(params: &ModelParams<T>) -> Vec<ManyBodyLevel<T>> {
    let sectors: Vec<SectorModes<T>> = Sector::ALL.iter().map(|&s| SectorModes::solve(params, s)).collect();
    let e0 = sectors
        .iter()
        .flat_map(|m| sector_levels(m, 1, None))
        .map(|l| l.energy)
        .fold(T::max_value().expect("bounded scalar"), |a, b| a.min(b));
    let cutoff = e0 + params.degeneracy_tol;
    sectors
        .iter()
        .flat_map(|m| sector_levels(m, usize::MAX, Some(cutoff)))
        .collect()
}

/// Number of many-body states within `degeneracy_tol` of the ground energy.
pub fn degeneracy_count<T: Real>(params: &ModelParams<T>) -> usize {
    ground_manifold(params).len()
}
