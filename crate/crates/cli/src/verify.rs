//! Cross-check of the free-fermion path against exact diagonalization.
//!
//! Per point: ground energy, ground-state degeneracy, every block entropy
//! `S_l` for `1 ≤ l ≤ N − 1`, and the 3- and 4-part conditional mutual
//! information. The entropy checks run on the free-fermion representative
//! picked out of the ED ground manifold by its parent operator, which may be
//! complex when the representative carries momentum.

use clusterchain::entanglement::{cmi_from, make_partition, region_entropy};
use clusterchain::{correlation_matrix, degeneracy_count, ground_state};
use clusterchain_ed::fermions::select_gaussian_state_complex;
use clusterchain_ed::{
    build_hamiltonian, cluster_model, ed_fermionic_subset_entropy_complex, ed_ground_manifold,
    ed_subset_entropy_complex, MAX_SITES,
};

use crate::error::CliError;
use crate::table::{Cell, Table};
use crate::tasks::{gather, numerical, Grid, Point};

pub const ENERGY_TOL: f64 = 1e-10;
pub const ENTROPY_TOL: f64 = 1e-8;
const PARENT_TOL: f64 = 1e-8;

pub const COLUMNS: [&str; 8] = ["N", "m", "h", "check", "free_fermion", "oracle", "abs_diff", "status"];

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub table: Table,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        let mut s = format!("verify: {} checks, {} failed", self.checks, self.failures.len());
        for f in &self.failures {
            s.push_str(&format!("\n  FAIL {f}"));
        }
        s
    }
}

fn row(p: &Point, check: String, ff: f64, ed: f64, tol: f64) -> Vec<Cell> {
    let diff = (ff - ed).abs();
    let status = if diff <= tol { "pass" } else { "FAIL" };
    vec![
        p.n.into(),
        p.m.into(),
        p.h.into(),
        check.into(),
        ff.into(),
        ed.into(),
        diff.into(),
        status.into(),
    ]
}

fn check_point(p: &Point) -> Result<Vec<Vec<Cell>>, CliError> {
    let params = p.params()?;
    let ham = build_hamiltonian(&cluster_model(p.n, p.m, p.j, p.h)).map_err(|e| numerical(p, e))?;
    let manifold = ed_ground_manifold(&ham, params.degeneracy_tol).map_err(|e| numerical(p, e))?;
    let gs = ground_state(&params);

    let mut rows = vec![
        row(p, "ground_energy".into(), gs.energy, manifold.values[0], ENERGY_TOL),
        row(
            p,
            "degeneracy".into(),
            degeneracy_count(&params) as f64,
            manifold.len() as f64,
            0.0,
        ),
    ];

    let corr = correlation_matrix(&params, &gs).map_err(|e| numerical(p, e))?;
    let (re, im, parent_min) =
        select_gaussian_state_complex(&manifold.vectors, &corr.matrix).map_err(|e| numerical(p, e))?;
    rows.push(row(p, "parent_minimum".into(), parent_min, -(p.n as f64), PARENT_TOL));
    let clip = params.entropy_clip;

    for l in 1..p.n {
        let sites: Vec<usize> = (0..l).collect();
        let ff = region_entropy(&corr, &sites, clip).map_err(|e| numerical(p, e))?.value;
        let ed = ed_subset_entropy_complex(&re, &im, &sites).map_err(|e| numerical(p, e))?;
        rows.push(row(p, format!("S_l={l}"), ff, ed, ENTROPY_TOL));
    }
    for parts in [3, 4] {
        if p.n < parts {
            continue;
        }
        let partition = make_partition(p.n, parts).map_err(|e| numerical(p, e))?;
        let ff = cmi_from(&corr, &partition, clip).map_err(|e| numerical(p, e))?;
        let s = |arcs: &[usize]| {
            ed_fermionic_subset_entropy_complex(&re, &im, &partition.sites(arcs)).map_err(|e| numerical(p, e))
        };
        let ed = s(&[0, 1])? + s(&[1, 2])? - s(&[1])? - s(&[0, 1, 2])?;
        rows.push(row(p, format!("cmi_parts={parts}"), ff, ed, ENTROPY_TOL));
    }
    Ok(rows)
}

pub fn verify(grid: &Grid) -> Result<VerifyReport, CliError> {
    grid.validate()?;
    let points = grid.points();
    if let Some(p) = points.iter().find(|p| p.n > MAX_SITES) {
        return Err(CliError::Usage(format!(
            "{p}: exact diagonalization supports N <= {MAX_SITES}"
        )));
    }
    let mut table = Table::new(&COLUMNS);
    table.rows = gather(&points, check_point)?;

    let mut failures = Vec::new();
    for r in &table.rows {
        let (Cell::Int(n), Cell::Int(m), Cell::Float(h), Cell::Text(check), Cell::Text(status)) =
            (&r[0], &r[1], &r[2], &r[3], &r[7])
        else {
            unreachable!("verify rows follow COLUMNS");
        };
        if status == "FAIL" {
            failures.push(format!("N={n} m={m} h={h} {check}"));
        }
    }
    Ok(VerifyReport {
        checks: table.rows.len(),
        table,
        failures,
    })
}
