use rayon::prelude::*;
use serde_json::{json, Value};

use clusterchain::entanglement::{block_entropy_from, make_partition_with, region_entropy, Remainder};
use clusterchain::{
    cmi, correlation_matrix, degeneracy_count, ground_state, low_spectrum, scaling_fit, ModelParamsF64,
};

use crate::error::CliError;
use crate::table::{Cell, Table};

/// A rectangular sweep over `(N, m, h)` at fixed coupling.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub n: Vec<usize>,
    pub m: Vec<usize>,
    pub h: Vec<f64>,
    pub j: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub n: usize,
    pub m: usize,
    pub h: f64,
    pub j: f64,
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "N={} m={} h={} J={}", self.n, self.m, self.h, self.j)
    }
}

impl Point {
    pub fn params(&self) -> Result<ModelParamsF64, CliError> {
        ModelParamsF64::new(self.n, self.m, self.j, self.h).map_err(|e| CliError::Usage(format!("{self}: {e}")))
    }

    fn lead(&self) -> Vec<Cell> {
        vec![self.n.into(), self.m.into(), self.h.into()]
    }
}

impl Grid {
    /// `N` outermost, then `m`, then `h`.
    pub fn points(&self) -> Vec<Point> {
        let mut out = Vec::new();
        for &n in &self.n {
            for &m in &self.m {
                for &h in &self.h {
                    out.push(Point { n, m, h, j: self.j });
                }
            }
        }
        out
    }

    /// Checks every point up front so a bad sweep fails before any work.
    pub fn validate(&self) -> Result<(), CliError> {
        for p in self.points() {
            p.params()?;
        }
        Ok(())
    }

    pub fn describe(&self) -> Value {
        json!({ "N": self.n, "m": self.m, "h": self.h, "J": self.j })
    }
}

pub(crate) fn numerical(point: &Point, e: impl std::fmt::Display) -> CliError {
    CliError::Numerical {
        point: point.to_string(),
        message: e.to_string(),
    }
}

/// Runs `f` over the points in parallel, concatenating rows in input order.
pub(crate) fn gather<F>(points: &[Point], f: F) -> Result<Vec<Vec<Cell>>, CliError>
where
    F: Fn(&Point) -> Result<Vec<Vec<Cell>>, CliError> + Sync + Send,
{
    let chunks: Vec<Result<Vec<Vec<Cell>>, CliError>> = points.par_iter().map(f).collect();
    let mut rows = Vec::new();
    for c in chunks {
        rows.extend(c?);
    }
    Ok(rows)
}

pub fn half_block(n: usize) -> usize {
    if n % 2 == 1 {
        (n - 1) / 2
    } else {
        n / 2
    }
}

pub fn entropy_profile(grid: &Grid, l_range: Option<(usize, usize)>) -> Result<Table, CliError> {
    grid.validate()?;
    let points = grid.points();
    for p in &points {
        let (lo, hi) = l_range.unwrap_or((p.m, p.n / 2));
        if lo < p.m || hi >= p.n || lo > hi {
            return Err(CliError::Usage(format!(
                "{p}: l-range {lo}:{hi} must lie within m..=N-1 = {}..={}",
                p.m,
                p.n - 1
            )));
        }
    }
    let mut table = Table::new(&["N", "m", "h", "l", "S"]);
    table.rows = gather(&points, |p| {
        let params = p.params()?;
        let corr = correlation_matrix(&params, &ground_state(&params)).map_err(|e| numerical(p, e))?;
        let (lo, hi) = l_range.unwrap_or((p.m, p.n / 2));
        (lo..=hi)
            .into_par_iter()
            .map(|l| {
                let s = block_entropy_from(&corr, &params, l, 0).map_err(|e| numerical(p, format!("l={l}: {e}")))?;
                let mut row = p.lead();
                row.extend([l.into(), s.value.into()]);
                Ok(row)
            })
            .collect()
    })?;
    Ok(table)
}

pub fn cmi_sweep(grid: &Grid, parts: &[usize], remainder: Remainder) -> Result<Table, CliError> {
    grid.validate()?;
    let points = grid.points();
    for p in &points {
        for &k in parts {
            make_partition_with(p.n, k, remainder).map_err(|e| CliError::Usage(format!("{p}: {e}")))?;
        }
    }
    let mut table = Table::new(&["N", "m", "h", "parts", "S_cmi"]);
    table.rows = gather(&points, |p| {
        let params = p.params()?;
        let gs = ground_state(&params);
        parts
            .iter()
            .map(|&k| {
                let partition = make_partition_with(p.n, k, remainder).map_err(|e| numerical(p, e))?;
                let v = cmi(&params, &gs, &partition).map_err(|e| numerical(p, format!("parts={k}: {e}")))?;
                let mut row = p.lead();
                row.extend([k.into(), v.into()]);
                Ok(row)
            })
            .collect()
    })?;
    Ok(table)
}

pub fn spectrum(grid: &Grid, k: usize) -> Result<Table, CliError> {
    if k == 0 {
        return Err(CliError::Usage("--k must be positive".into()));
    }
    grid.validate()?;
    let mut table = Table::new(&["N", "m", "h", "k_index", "E_minus_E0"]);
    table.rows = gather(&grid.points(), |p| {
        let levels = low_spectrum(&p.params()?, k).map_err(|e| numerical(p, e))?;
        let e0 = levels[0];
        Ok(levels
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let mut row = p.lead();
                row.extend([i.into(), (e - e0).into()]);
                row
            })
            .collect())
    })?;
    Ok(table)
}

pub fn degeneracy(grid: &Grid) -> Result<Table, CliError> {
    grid.validate()?;
    let mut table = Table::new(&["N", "m", "h", "degeneracy"]);
    table.rows = gather(&grid.points(), |p| {
        let d = degeneracy_count(&p.params()?);
        let mut row = p.lead();
        row.push(d.into());
        Ok(vec![row])
    })?;
    Ok(table)
}

/// Half-chain entropies `(m, N, S_half)` and one logarithmic fit per `m`.
pub fn critical_scaling(grid: &Grid) -> Result<(Table, Value), CliError> {
    if grid.h.len() != 1 {
        return Err(CliError::Usage("critical-scaling takes a single field value".into()));
    }
    let mut sizes = grid.n.clone();
    sizes.sort_unstable();
    sizes.dedup();
    if sizes.len() < 4 || sizes.len() != grid.n.len() {
        return Err(CliError::Usage(
            "critical-scaling needs at least 4 distinct sizes".into(),
        ));
    }
    grid.validate()?;
    let h = grid.h[0];
    let mut points = Vec::new();
    for &m in &grid.m {
        for &n in &grid.n {
            points.push(Point { n, m, h, j: grid.j });
        }
    }
    let mut table = Table::new(&["m", "N", "S_half"]);
    table.rows = gather(&points, |p| {
        let params = p.params()?;
        let corr = correlation_matrix(&params, &ground_state(&params)).map_err(|e| numerical(p, e))?;
        let sites: Vec<usize> = (0..half_block(p.n)).collect();
        let s = region_entropy(&corr, &sites, params.entropy_clip).map_err(|e| numerical(p, e))?;
        Ok(vec![vec![p.m.into(), p.n.into(), s.value.into()]])
    })?;

    let mut fits = Vec::new();
    for (i, &m) in grid.m.iter().enumerate() {
        let pts: Vec<(usize, f64)> = table.rows[i * grid.n.len()..(i + 1) * grid.n.len()]
            .iter()
            .map(|row| match (&row[1], &row[2]) {
                (Cell::Int(n), Cell::Float(s)) => (*n as usize, *s),
                _ => unreachable!("critical-scaling rows are (m, N, S_half)"),
            })
            .collect();
        let fit = scaling_fit(&pts).map_err(|e| CliError::Usage(format!("m={m}: {e}")))?;
        fits.push(json!({
            "m": m,
            "h": h,
            "J": grid.j,
            "slope": fit.slope,
            "intercept": fit.intercept,
            "residual": fit.residual,
            "central_charge": fit.central_charge,
            "N": pts.iter().map(|p| p.0).collect::<Vec<_>>(),
        }));
    }
    let summary = json!({
        "model": "S_half = slope * log2(N) + intercept",
        "block": "l = (N-1)/2 for odd N, l = N/2 for even N, starting at site 0",
        "fits": fits,
    });
    Ok((table, summary))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: &[usize], m: &[usize], h: &[f64]) -> Grid {
        Grid {
            n: n.to_vec(),
            m: m.to_vec(),
            h: h.to_vec(),
            j: 1.0,
        }
    }

    #[test]
    fn point_order() {
        let g = grid(&[5, 7], &[1, 2], &[0.0, 0.5]);
        let pts = g.points();
        assert_eq!(pts.len(), 8);
        assert_eq!((pts[1].n, pts[1].m, pts[1].h), (5, 1, 0.5));
        assert_eq!((pts[2].n, pts[2].m), (5, 2));
        assert_eq!(pts[4].n, 7);
    }

    #[test]
    fn invalid_point_is_usage_error() {
        let g = grid(&[4], &[4], &[0.0]);
        assert!(matches!(degeneracy(&g), Err(CliError::Usage(_))));
    }

    #[test]
    fn flat_profile() {
        let t = entropy_profile(&grid(&[20], &[4], &[0.0]), None).unwrap();
        assert_eq!(t.rows.len(), 7);
        for row in &t.rows {
            let Cell::Float(s) = row[4] else { panic!() };
            assert!((s - 4.0).abs() < 1e-9);
        }
    }

    #[test]
    fn spectrum_starts_at_zero() {
        let t = spectrum(&grid(&[9], &[3], &[0.0]), 20).unwrap();
        assert_eq!(t.rows.len(), 20);
        let zeros = t
            .rows
            .iter()
            .filter(|r| matches!(r[4], Cell::Float(e) if e.abs() < 1e-9))
            .count();
        assert_eq!(zeros, 18);
    }

    #[test]
    fn scaling_needs_four_sizes() {
        let g = grid(&[21, 31, 41], &[2], &[1.0]);
        assert!(matches!(critical_scaling(&g), Err(CliError::Usage(_))));
        let g = grid(&[21, 31, 41, 51], &[2], &[1.0]);
        let (t, fit) = critical_scaling(&g).unwrap();
        assert_eq!(t.rows.len(), 4);
        assert!(fit["fits"][0]["slope"].as_f64().unwrap() > 0.2);
    }
}
