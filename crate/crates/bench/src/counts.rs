//! Exact multiplication-count audits on counting scalars and the naive
//! kernel.
//!
//! Per grid point `(n, k, s, K)`:
//! - two full buffer cycles (`T = 2K` updates) meter the update path; each
//!   flush multiply must cost `n^k · K` and the amortized update cost must
//!   equal the closed form below exactly,
//! - `K - 1` further updates leave the buffers at `fill = K - 1`, and a
//!   query fixing `s` modes must spend `n^(k-s) · fill` in its multiply and
//!   nothing while slicing the dense part,
//! - one eager oracle update must cost `n^k · (k - 1)`.
//!
//! With `h = ⌈k/2⌉` and `fs(m) = n^m · K · (m - 1)` for `m ≥ 1` (zero for
//! the empty group), one flush costs `fs(h) + fs(k - h) + n^k · K`, so the
//! amortized update cost is that sum divided by `K`.

use lazy_kron::sampling::{self, random_query};
use lazy_kron::{
    CountScope, CountingScalar, LazyKron, LazyParams, OracleState, Shape, UpdateEvent,
};
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::Result;

/// Buffer cycles driven before the amortized count is read.
pub const CYCLES: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub n: usize,
    pub k: usize,
    pub s: usize,
    #[serde(rename = "K")]
    pub capacity: usize,
    pub fill: usize,
    pub flush_face_split_mul: u64,
    pub flush_multiply_mul: u64,
    pub expected_flush_multiply_mul: u64,
    pub query_lowrank_multiply_mul: u64,
    pub expected_query_lowrank_multiply_mul: u64,
    pub slice_mul: u64,
    pub eager_update_mul: u64,
    pub expected_eager_update_mul: u64,
    pub amortized_update_mul: u64,
    pub expected_amortized_update_mul: u64,
    pub ok: bool,
}

fn pow(n: usize, e: usize) -> u64 {
    (n as u64).pow(e as u32)
}

/// Face-split cost of one group of `m` buffers with `cols` columns.
pub fn face_split_cost(n: usize, m: usize, cols: usize) -> u64 {
    if m == 0 {
        0
    } else {
        pow(n, m) * cols as u64 * (m as u64 - 1)
    }
}

/// Full update-path cost of one flush of `cols` columns with split `h`.
pub fn flush_cost(n: usize, k: usize, cols: usize) -> u64 {
    let h = k.div_ceil(2);
    face_split_cost(n, h, cols) + face_split_cost(n, k - h, cols) + pow(n, k) * cols as u64
}

pub fn audit_point(
    n: usize,
    k: usize,
    s: usize,
    capacity: usize,
    seed: u64,
    point: u64,
) -> Result<CountRow> {
    let mut rng = sampling::stream_rng(seed, point);
    let mut state = LazyKron::<CountingScalar>::new(LazyParams::new(k, n, capacity)?);

    let updates = CYCLES * capacity;
    let scope = CountScope::start();
    let mut flush_multiply = Vec::new();
    let mut flush_face_split = 0;
    for _ in 0..updates {
        let event: UpdateEvent<CountingScalar> = sampling::random_event(&mut rng, k, n);
        if let Some(profile) = state.update(&event)? {
            flush_multiply.push(profile.multiply_muls);
            flush_face_split = profile.face_split_muls;
        }
    }
    let update_path = scope.muls();
    let expected_flush = pow(n, k) * capacity as u64;
    let flush_ok =
        flush_multiply.len() == CYCLES && flush_multiply.iter().all(|&m| m == expected_flush);
    let amortized_exact = update_path.is_multiple_of(updates as u64);

    for _ in 0..capacity - 1 {
        state.update(&sampling::random_event(&mut rng, k, n))?;
    }
    let fill = state.fill();
    let q = random_query(&mut rng, k, n, s);
    let (_, profile) = state.query_profiled(&q)?;
    let expected_query = pow(n, k - s) * fill as u64;

    let mut oracle = OracleState::<CountingScalar>::new(Shape::new(k, n)?);
    let scope = CountScope::start();
    oracle.update(&sampling::random_event(&mut rng, k, n))?;
    let eager = scope.muls();
    let expected_eager = pow(n, k) * (k as u64 - 1);

    let expected_amortized = flush_cost(n, k, capacity) / capacity as u64;
    let amortized = update_path / updates as u64;
    let ok = flush_ok
        && amortized_exact
        && amortized == expected_amortized
        && fill == capacity - 1
        && profile.multiply_muls == expected_query
        && profile.full_part_muls == 0
        && eager == expected_eager;

    Ok(CountRow {
        n,
        k,
        s,
        capacity,
        fill,
        flush_face_split_mul: flush_face_split,
        flush_multiply_mul: flush_multiply.first().copied().unwrap_or(0),
        expected_flush_multiply_mul: expected_flush,
        query_lowrank_multiply_mul: profile.multiply_muls,
        expected_query_lowrank_multiply_mul: expected_query,
        slice_mul: profile.full_part_muls,
        eager_update_mul: eager,
        expected_eager_update_mul: expected_eager,
        amortized_update_mul: amortized,
        expected_amortized_update_mul: expected_amortized,
        ok,
    })
}

/// One row per `(n, k, s, K)`, `n`-major.
pub fn run(cfg: &RunConfig) -> Result<Vec<CountRow>> {
    let mut rows = Vec::new();
    let mut point = 0;
    for &n in &cfg.n {
        for &k in &cfg.k {
            for s in cfg.s_values(k) {
                for cap in &cfg.capacities {
                    let capacity = cap.resolve(n)?;
                    rows.push(audit_point(n, k, s, capacity, cfg.seed, point)?);
                    point += 1;
                }
            }
        }
    }
    Ok(rows)
}
