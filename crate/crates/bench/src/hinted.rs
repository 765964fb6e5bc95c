//! Serializable rows for the hinted matrix-vector sweep.

use lazy_kron::hinted_mv::{sweep_with_kernel, SweepGrid};
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::Result;

/// Wall columns are integer nanoseconds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseRow {
    pub n: usize,
    pub k: usize,
    pub s: usize,
    pub tau: f64,
    pub d: usize,
    pub m: usize,
    #[serde(rename = "K")]
    pub capacity: usize,
    pub flushes: u64,
    pub phase2_mul_count: u64,
    pub phase3_mul_count: u64,
    pub phase2_wall: u64,
    pub phase3_wall: u64,
}

pub fn run(cfg: &RunConfig) -> Result<Vec<PhaseRow>> {
    let grid = SweepGrid {
        ns: cfg.n.clone(),
        ks: cfg.k.clone(),
        ss: if cfg.s.is_empty() {
            vec![1]
        } else {
            cfg.s.clone()
        },
        taus: cfg.a.clone(),
        seed: cfg.seed,
    };
    Ok(sweep_with_kernel(&grid, cfg.kernel)?
        .into_iter()
        .map(|p| PhaseRow {
            n: p.n,
            k: p.k,
            s: p.s,
            tau: p.tau,
            d: p.d,
            m: p.m,
            capacity: p.capacity,
            flushes: p.report.flushes,
            phase2_mul_count: p.report.phase2_mul_count,
            phase3_mul_count: p.report.phase3_mul_count,
            phase2_wall: p.report.phase2_wall.as_nanos() as u64,
            phase3_wall: p.report.phase3_wall.as_nanos() as u64,
        })
        .collect())
}
