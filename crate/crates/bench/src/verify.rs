//! Randomized equivalence between a dynamic structure and the eager oracle.

use std::fmt::{self, Write as _};

use lazy_kron::sampling::{self, index_tuples, mode_subsets};
use lazy_kron::{
    CountingScalar, DenseTensor, DynamicKron, LazyKron, LazyParams, OracleState, QuerySpec,
    Semiring, Shape, UpdateEvent,
};

use crate::config::{Capacity, RunConfig, ScalarKind};
use crate::error::Result;

/// Index tuples checked per mode subset; exhaustive whenever `n^s` fits.
pub const TUPLES_PER_SUBSET: usize = 9;

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyGrid {
    pub ns: Vec<usize>,
    pub ks: Vec<usize>,
    pub capacities: Vec<Capacity>,
    /// Updates per stream; answers are checked after every one of them.
    pub stream_len: usize,
    pub trials: usize,
    pub seed: u64,
    /// Allowed `s` values; empty allows all.
    pub s_filter: Vec<usize>,
    pub tuples_per_subset: usize,
}

impl VerifyGrid {
    pub fn from_config(cfg: &RunConfig) -> Self {
        VerifyGrid {
            ns: cfg.n.clone(),
            ks: cfg.k.clone(),
            capacities: cfg.capacities.clone(),
            stream_len: cfg.t.iter().copied().max().unwrap_or(1),
            trials: cfg.trials,
            seed: cfg.seed,
            s_filter: cfg.s.clone(),
            tuples_per_subset: TUPLES_PER_SUBSET,
        }
    }
}

/// First disagreement found, rendered so the stream can be replayed.
#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub k: usize,
    pub n: usize,
    pub capacity: usize,
    pub stream_index: u64,
    /// Updates applied, in order, each as `k` vectors.
    pub stream: Vec<Vec<Vec<String>>>,
    pub modes: Vec<usize>,
    pub indices: Vec<usize>,
    pub expected: Vec<String>,
    pub got: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "counterexample: k={} n={} K={} stream={} after {} updates",
            self.k,
            self.n,
            self.capacity,
            self.stream_index,
            self.stream.len()
        )?;
        for (t, vectors) in self.stream.iter().enumerate() {
            let vs: Vec<String> = vectors
                .iter()
                .map(|v| format!("[{}]", v.join(", ")))
                .collect();
            writeln!(f, "  update {}: {}", t + 1, vs.join(" "))?;
        }
        writeln!(
            f,
            "  query modes={:?} indices={:?}",
            self.modes, self.indices
        )?;
        writeln!(f, "  expected: [{}]", self.expected.join(", "))?;
        write!(f, "  got:      {}", self.got)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerifyOutcome {
    pub streams: u64,
    pub checks: u64,
    pub counterexample: Option<Counterexample>,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn exit_code(&self) -> u8 {
        if self.passed() {
            crate::EXIT_OK
        } else {
            crate::EXIT_CHECK_FAILED
        }
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "verify: {} checks over {} streams, {} mismatches",
            self.checks,
            self.streams,
            u8::from(!self.passed())
        );
        if let Some(cx) = &self.counterexample {
            let _ = write!(s, "\n{cx}");
        }
        s
    }
}

fn render<S: Semiring>(xs: &[S]) -> Vec<String> {
    xs.iter().map(|x| format!("{x:?}")).collect()
}

/// Drives `make(params)` and the oracle through identical seeded streams
/// and compares every query answer exactly. Stops at the first mismatch.
pub fn verify_with<S, D, F>(grid: &VerifyGrid, make: F) -> Result<VerifyOutcome>
where
    S: Semiring,
    D: DynamicKron<S>,
    F: Fn(LazyParams) -> D,
{
    let mut outcome = VerifyOutcome::default();
    let mut stream_index = 0u64;
    for &k in &grid.ks {
        let subsets: Vec<Vec<usize>> = mode_subsets(k)
            .into_iter()
            .filter(|m| grid.s_filter.is_empty() || grid.s_filter.contains(&m.len()))
            .collect();
        for &n in &grid.ns {
            let shape = Shape::new(k, n)?;
            for cap in &grid.capacities {
                let capacity = cap.resolve(n)?;
                let params = LazyParams::new(k, n, capacity)?;
                for _ in 0..grid.trials {
                    let mut rng = sampling::stream_rng(grid.seed, stream_index);
                    let mut subject = make(params);
                    let mut oracle = OracleState::<S>::new(shape);
                    let mut applied: Vec<UpdateEvent<S>> = Vec::new();
                    outcome.streams += 1;
                    for _ in 0..grid.stream_len {
                        let event: UpdateEvent<S> = sampling::random_event(&mut rng, k, n);
                        oracle.update(&event)?;
                        let applied_ok = subject.apply(&event);
                        applied.push(event);
                        for modes in &subsets {
                            for idx in
                                index_tuples(&mut rng, n, modes.len(), grid.tuples_per_subset)
                            {
                                let q = QuerySpec::new(modes.clone(), idx)?;
                                let want = oracle.query(&q)?;
                                let got = applied_ok.clone().and_then(|_| subject.answer(&q));
                                outcome.checks += 1;
                                if got.as_ref() != Ok(&want) {
                                    outcome.counterexample = Some(counterexample(
                                        (k, n, capacity, stream_index),
                                        &applied,
                                        &q,
                                        &want,
                                        got,
                                    ));
                                    return Ok(outcome);
                                }
                            }
                        }
                    }
                    stream_index += 1;
                }
            }
        }
    }
    Ok(outcome)
}

fn counterexample<S: Semiring>(
    (k, n, capacity, stream_index): (usize, usize, usize, u64),
    applied: &[UpdateEvent<S>],
    q: &QuerySpec,
    want: &DenseTensor<S>,
    got: lazy_kron::Result<DenseTensor<S>>,
) -> Counterexample {
    Counterexample {
        k,
        n,
        capacity,
        stream_index,
        stream: applied
            .iter()
            .map(|e| e.vectors().iter().map(|v| render(v)).collect())
            .collect(),
        modes: q.modes().to_vec(),
        indices: q.indices().to_vec(),
        expected: render(want.as_slice()),
        got: match got {
            Ok(t) => format!("[{}]", render(t.as_slice()).join(", ")),
            Err(e) => format!("error: {e}"),
        },
    }
}

/// Verifies [`LazyKron`] under the configured scalar and kernel.
pub fn run(cfg: &RunConfig) -> Result<VerifyOutcome> {
    let grid = VerifyGrid::from_config(cfg);
    let kernel = cfg.kernel;
    match cfg.scalar {
        ScalarKind::Real => {
            verify_with::<f64, _, _>(&grid, |p| LazyKron::new(p.with_kernel(kernel)))
        }
        ScalarKind::Bool => {
            verify_with::<bool, _, _>(&grid, |p| LazyKron::new(p.with_kernel(kernel)))
        }
        ScalarKind::Counting => {
            verify_with::<CountingScalar, _, _>(&grid, |p| LazyKron::new(p.with_kernel(kernel)))
        }
    }
}
