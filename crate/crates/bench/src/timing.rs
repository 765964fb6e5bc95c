//! Benchmark rows: amortized update cost and worst-case query cost, in
//! exact multiplications and in wall-clock time.
//!
//! Each point replays one seeded stream of `T` iterations; an iteration is
//! an update followed by a query fixing `s` random modes. Counts come from
//! a pass on counting scalars; wall times from `trials` passes on the
//! configured scalar (the minimum is kept). Stream entries are unit-normal.

use std::time::{Duration, Instant};

use lazy_kron::sampling::{self, random_query};
use lazy_kron::{
    CountScope, CountingScalar, LazyKron, LazyParams, MatmulKernel, QuerySpec, Semiring,
    UpdateEvent,
};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::config::{RunConfig, ScalarKind};
use crate::error::Result;

/// Wall columns are integer nanoseconds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub k: usize,
    pub s: usize,
    #[serde(rename = "K")]
    pub capacity: usize,
    #[serde(rename = "T")]
    pub t: usize,
    pub amortized_update_mul: f64,
    pub worst_query_mul: u64,
    pub amortized_update_wall: u64,
    pub worst_query_wall: u64,
    pub baseline_eager_update_mul: u64,
    pub flushes: u64,
}

impl BenchRow {
    /// Columns that must be identical across runs with the same seed.
    pub fn count_columns(&self) -> (usize, usize, usize, usize, usize, u64, u64, u64, u64) {
        (
            self.n,
            self.k,
            self.s,
            self.capacity,
            self.t,
            self.amortized_update_mul.to_bits(),
            self.worst_query_mul,
            self.baseline_eager_update_mul,
            self.flushes,
        )
    }
}

fn normal_event<S: Semiring, R: Rng>(rng: &mut R, k: usize, n: usize) -> UpdateEvent<S> {
    UpdateEvent::new(
        (0..k)
            .map(|_| {
                (0..n)
                    .map(|_| S::from_f64(rng.sample(StandardNormal)))
                    .collect()
            })
            .collect(),
    )
}

fn stream<S: Semiring>(
    seed: u64,
    point: u64,
    k: usize,
    n: usize,
    s: usize,
    t: usize,
) -> Vec<(UpdateEvent<S>, QuerySpec)> {
    let mut rng = sampling::stream_rng(seed, point);
    (0..t)
        .map(|_| {
            let e = normal_event(&mut rng, k, n);
            (e, random_query(&mut rng, k, n, s))
        })
        .collect()
}

struct Counts {
    update_muls: u64,
    worst_query_muls: u64,
    flushes: u64,
}

fn count_pass(
    params: LazyParams,
    events: &[(UpdateEvent<CountingScalar>, QuerySpec)],
) -> Result<Counts> {
    let mut state = LazyKron::new(params);
    let mut update_muls = 0;
    let mut worst_query_muls = 0;
    for (e, q) in events {
        let scope = CountScope::start();
        state.update(e)?;
        update_muls += scope.muls();
        let scope = CountScope::start();
        state.query(q)?;
        worst_query_muls = worst_query_muls.max(scope.muls());
    }
    Ok(Counts {
        update_muls,
        worst_query_muls,
        flushes: state.stats().flushes,
    })
}

fn wall_pass<S: Semiring>(
    params: LazyParams,
    events: &[(UpdateEvent<S>, QuerySpec)],
) -> Result<(Duration, Duration)> {
    let mut state = LazyKron::new(params);
    let mut update_total = Duration::ZERO;
    let mut worst_query = Duration::ZERO;
    for (e, q) in events {
        let clock = Instant::now();
        state.update(e)?;
        update_total += clock.elapsed();
        let clock = Instant::now();
        std::hint::black_box(state.query(q)?);
        worst_query = worst_query.max(clock.elapsed());
    }
    Ok((update_total, worst_query))
}

fn best_walls<S: Semiring>(
    params: LazyParams,
    trials: usize,
    seed: u64,
    point: u64,
    s: usize,
    t: usize,
) -> Result<(Duration, Duration)> {
    let events = stream::<S>(seed, point, params.order(), params.n(), s, t);
    let mut best = (Duration::MAX, Duration::MAX);
    for _ in 0..trials.max(1) {
        let (u, q) = wall_pass(params, &events)?;
        best = (best.0.min(u), best.1.min(q));
    }
    Ok(best)
}

#[allow(clippy::too_many_arguments)]
pub fn bench_point(
    n: usize,
    k: usize,
    s: usize,
    capacity: usize,
    t: usize,
    cfg_scalar: ScalarKind,
    kernel: MatmulKernel,
    trials: usize,
    seed: u64,
    point: u64,
) -> Result<BenchRow> {
    let params = LazyParams::new(k, n, capacity)?.with_kernel(kernel);
    let counts = count_pass(params, &stream(seed, point, k, n, s, t))?;
    let (update_wall, query_wall) = match cfg_scalar {
        ScalarKind::Real => best_walls::<f64>(params, trials, seed, point, s, t)?,
        ScalarKind::Bool => best_walls::<bool>(params, trials, seed, point, s, t)?,
        ScalarKind::Counting => best_walls::<CountingScalar>(params, trials, seed, point, s, t)?,
    };
    Ok(BenchRow {
        n,
        k,
        s,
        capacity,
        t,
        amortized_update_mul: counts.update_muls as f64 / t as f64,
        worst_query_mul: counts.worst_query_muls,
        amortized_update_wall: (update_wall.as_nanos() / t as u128) as u64,
        worst_query_wall: query_wall.as_nanos() as u64,
        baseline_eager_update_mul: (n as u64).pow(k as u32) * (k as u64 - 1),
        flushes: counts.flushes,
    })
}

/// One row per `(n, k, s, K, T)`, `n`-major.
pub fn run(cfg: &RunConfig) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    let mut point = 0;
    for &n in &cfg.n {
        for &k in &cfg.k {
            for s in cfg.s_values(k) {
                for cap in &cfg.capacities {
                    let capacity = cap.resolve(n)?;
                    for &t in &cfg.t {
                        rows.push(bench_point(
                            n, k, s, capacity, t, cfg.scalar, cfg.kernel, cfg.trials, cfg.seed,
                            point,
                        )?);
                        point += 1;
                    }
                }
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{Capacity, Command};

    fn cfg() -> RunConfig {
        RunConfig {
            n: vec![3, 4],
            k: vec![2, 3],
            s: vec![1, 2],
            capacities: vec![Capacity::Fixed(4), Capacity::Fixed(8)],
            t: vec![40],
            trials: 1,
            seed: 17,
            ..RunConfig::defaults(Command::Bench)
        }
    }

    #[test]
    fn count_columns_are_deterministic() {
        let a = run(&cfg()).unwrap();
        let b = run(&cfg()).unwrap();
        assert_eq!(a.len(), 2 * 2 * 2 * 2);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.count_columns(), y.count_columns());
        }
    }

    #[test]
    fn doubling_capacity_halves_flushes() {
        for r in run(&cfg()).unwrap() {
            assert_eq!(r.flushes, (r.t / r.capacity) as u64);
        }
        let rows = run(&cfg()).unwrap();
        for pair in rows.chunks(2) {
            let (k4, k8) = (&pair[0], &pair[1]);
            assert_eq!(k8.capacity, 2 * k4.capacity);
            assert!(k8.flushes * 2 <= k4.flushes + 1 && k4.flushes <= k8.flushes * 2 + 1);
        }
    }

    #[test]
    fn eager_baseline_formula() {
        for r in run(&cfg()).unwrap() {
            assert_eq!(
                r.baseline_eager_update_mul,
                (r.n as u64).pow(r.k as u32) * (r.k as u64 - 1)
            );
        }
    }
}
