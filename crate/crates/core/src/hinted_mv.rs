//! Tensor hinted matrix-vector problem, solved through [`LazyKron`].
//!
//! Phase 1 receives `k` factor matrices `V_1..V_k` (`n x d`); phase 2 a
//! sparse diagonal hint `P` (at most `⌈n^τ⌉` nonzeros `P[j,..,j] = p_j`);
//! phase 3 a sub-tensor query on `P(V_1, .., V_k) = Σ_j p_j ⊗_t V_t[:, j]`.
//!
//! Phase 1 only allocates the structure. Phase 2 turns every hint entry
//! into one rank-1 update built from column `j` of each factor, with `p_j`
//! folded into one mode's vector. Phase 3 is a single query.

use std::time::{Duration, Instant};

use rand::seq::index;
use rand::Rng;

use crate::error::{KronError, Result};
use crate::kron::MatmulKernel;
use crate::lazy::{capacity_for_exponent, LazyKron, LazyParams, UpdateEvent};
use crate::matrix::Matrix;
use crate::sampling;
use crate::semiring::{CountScope, CountingScalar, Semiring};
use crate::tensor::{DenseTensor, QuerySpec, Shape};

#[derive(Debug, Clone, PartialEq)]
pub struct HintedMvInstance<S> {
    factors: Vec<Matrix<S>>,
    tau: f64,
    hints: Vec<(usize, S)>,
}

impl<S: Semiring> HintedMvInstance<S> {
    /// `factors` are the `k` matrices `V_t`, `hints` the nonzero diagonal
    /// entries `(j, p_j)` of `P`.
    pub fn new(factors: Vec<Matrix<S>>, tau: f64, hints: Vec<(usize, S)>) -> Result<Self> {
        let first = factors
            .first()
            .ok_or_else(|| KronError::DimensionMismatch("no factor matrices".into()))?;
        let (n, d) = (first.rows(), first.cols());
        if n == 0 {
            return Err(KronError::InvalidShape {
                order: factors.len(),
                n,
            });
        }
        if let Some(f) = factors.iter().find(|f| f.rows() != n || f.cols() != d) {
            return Err(KronError::DimensionMismatch(format!(
                "factor is {}x{}, expected {n}x{d}",
                f.rows(),
                f.cols()
            )));
        }
        let budget = capacity_for_exponent(n, tau)?;
        if hints.len() > budget {
            return Err(KronError::InvalidParameter(format!(
                "{} hint entries exceed the budget ceil(n^tau) = {budget}",
                hints.len()
            )));
        }
        let mut seen = vec![false; d];
        for &(j, _) in &hints {
            if j >= d {
                return Err(KronError::IndexOutOfRange { index: j, n: d });
            }
            if std::mem::replace(&mut seen[j], true) {
                return Err(KronError::InvalidParameter(format!(
                    "diagonal position {j} given twice"
                )));
            }
        }
        Shape::new(factors.len(), n)?;
        Ok(HintedMvInstance {
            factors,
            tau,
            hints,
        })
    }

    pub fn order(&self) -> usize {
        self.factors.len()
    }

    pub fn n(&self) -> usize {
        self.factors[0].rows()
    }

    pub fn d(&self) -> usize {
        self.factors[0].cols()
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn factors(&self) -> &[Matrix<S>] {
        &self.factors
    }

    pub fn hints(&self) -> &[(usize, S)] {
        &self.hints
    }

    pub fn shape(&self) -> Shape {
        Shape::new(self.order(), self.n()).expect("validated at construction")
    }

    /// Evaluates `Σ_j p_j ∏_t V_t[p_t, j]` entry by entry and slices it.
    pub fn evaluate_direct(&self, q: &QuerySpec) -> Result<DenseTensor<S>> {
        let full = DenseTensor::from_fn(self.shape(), |p| {
            self.hints.iter().fold(S::zero(), |acc, &(j, pj)| {
                let term = self
                    .factors
                    .iter()
                    .zip(p)
                    .fold(pj, |prod, (v, &pt)| prod.sr_mul(v.get(pt, j)));
                acc.sr_add(term)
            })
        });
        full.slice(q)
    }
}

/// Per-phase cost of one run. Counts are nonzero only for counting scalars.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PhaseReport {
    pub phase2_mul_count: u64,
    pub phase3_mul_count: u64,
    pub phase2_wall: Duration,
    pub phase3_wall: Duration,
    pub flushes: u64,
}

/// Knobs for [`run_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub capacity: usize,
    /// Mode whose update vector absorbs `p_j`.
    pub fold_mode: usize,
    pub kernel: MatmulKernel,
}

impl RunOptions {
    pub fn new(capacity: usize) -> Self {
        RunOptions {
            capacity,
            fold_mode: 0,
            kernel: MatmulKernel::Naive,
        }
    }
}

/// Runs the three phases with buffer capacity `capacity`, folding `p_j`
/// into the first mode.
pub fn run<S: Semiring>(
    inst: &HintedMvInstance<S>,
    q: &QuerySpec,
    capacity: usize,
) -> Result<(DenseTensor<S>, PhaseReport)> {
    run_with(inst, q, RunOptions::new(capacity))
}

pub fn run_with<S: Semiring>(
    inst: &HintedMvInstance<S>,
    q: &QuerySpec,
    opts: RunOptions,
) -> Result<(DenseTensor<S>, PhaseReport)> {
    let shape = inst.shape();
    q.validate(shape)?;
    if opts.fold_mode >= shape.order() {
        return Err(KronError::ModeOutOfRange {
            mode: opts.fold_mode,
            order: shape.order(),
        });
    }

    // phase 1
    let params = LazyParams::new(shape.order(), shape.n(), opts.capacity)?.with_kernel(opts.kernel);
    let mut state = LazyKron::new(params);

    // phase 2
    let scope = CountScope::start();
    let clock = Instant::now();
    for &(j, pj) in inst.hints() {
        let vectors = inst
            .factors()
            .iter()
            .enumerate()
            .map(|(t, v)| {
                let col = v.column(j);
                if t == opts.fold_mode {
                    col.into_iter().map(|x| pj.sr_mul(x)).collect()
                } else {
                    col
                }
            })
            .collect();
        state.update(&UpdateEvent::new(vectors))?;
    }
    let phase2_wall = clock.elapsed();
    let phase2_mul_count = scope.muls();

    // phase 3
    let scope = CountScope::start();
    let clock = Instant::now();
    let answer = state.query(q)?;
    let phase3_wall = clock.elapsed();
    let phase3_mul_count = scope.muls();

    Ok((
        answer,
        PhaseReport {
            phase2_mul_count,
            phase3_mul_count,
            phase2_wall,
            phase3_wall,
            flushes: state.stats().flushes,
        },
    ))
}

/// Grid for [`sweep`]; points are visited `n`-major, then `k`, `s`, `tau`.
/// Combinations with `s > k` are skipped.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub ns: Vec<usize>,
    pub ks: Vec<usize>,
    pub ss: Vec<usize>,
    pub taus: Vec<f64>,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub n: usize,
    pub k: usize,
    pub s: usize,
    pub tau: f64,
    pub d: usize,
    /// Number of hint entries `|P|`.
    pub m: usize,
    /// Buffer capacity, `⌈n^τ⌉`.
    pub capacity: usize,
    pub report: PhaseReport,
}

/// Random instance for one grid point: `m = ⌈n^τ⌉` hints over
/// `d = max(m, n)` diagonal positions, integer entries in `-2..=2`
/// (nonzero for hint values), one query fixing `s` random modes.
pub fn random_instance<S: Semiring, R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    k: usize,
    s: usize,
    tau: f64,
) -> Result<(HintedMvInstance<S>, QuerySpec)> {
    if s == 0 || s > k {
        return Err(KronError::InvalidQuery(format!(
            "cannot fix {s} of {k} modes"
        )));
    }
    let m = capacity_for_exponent(n, tau)?;
    let d = m.max(n);
    let factors = (0..k)
        .map(|_| Matrix::from_vec(n, d, sampling::random_vector(rng, n * d)))
        .collect::<Result<Vec<_>>>()?;
    let mut positions = index::sample(rng, d, m).into_vec();
    positions.sort_unstable();
    let hints = positions
        .into_iter()
        .map(|j| {
            let v = if rng.random_bool(0.5) { 1 } else { -1 } * rng.random_range(1..=2);
            (j, S::from_i64(v))
        })
        .collect();
    let inst = HintedMvInstance::new(factors, tau, hints)?;
    let q = sampling::random_query(rng, k, n, s);
    Ok((inst, q))
}

/// Runs every grid point on counting scalars with `K = ⌈n^τ⌉`. Point `i`
/// draws from sub-stream `i` of the seed, so rows are reproducible
/// independently of each other.
pub fn sweep(grid: &SweepGrid) -> Result<Vec<SweepPoint>> {
    sweep_with_kernel(grid, MatmulKernel::Naive)
}

pub fn sweep_with_kernel(grid: &SweepGrid, kernel: MatmulKernel) -> Result<Vec<SweepPoint>> {
    if grid.ns.is_empty() || grid.ks.is_empty() || grid.ss.is_empty() || grid.taus.is_empty() {
        return Err(KronError::InvalidParameter(
            "sweep grid has an empty axis".into(),
        ));
    }
    let mut rows = Vec::new();
    let mut point = 0u64;
    for &n in &grid.ns {
        for &k in &grid.ks {
            for &s in &grid.ss {
                for &tau in &grid.taus {
                    if s > k {
                        continue;
                    }
                    let mut rng = sampling::stream_rng(grid.seed, point);
                    point += 1;
                    let (inst, q) = random_instance::<CountingScalar, _>(&mut rng, n, k, s, tau)?;
                    let capacity = capacity_for_exponent(n, tau)?;
                    let opts = RunOptions {
                        kernel,
                        ..RunOptions::new(capacity)
                    };
                    let (_, report) = run_with(&inst, &q, opts)?;
                    rows.push(SweepPoint {
                        n,
                        k,
                        s,
                        tau,
                        d: inst.d(),
                        m: inst.hints().len(),
                        capacity,
                        report,
                    });
                }
            }
        }
    }
    Ok(rows)
}
