//! Dynamic maintenance of `Σ_t u_1(t) ⊗ .. ⊗ u_k(t)` under rank-1 updates
//! and sub-tensor queries.
//!
//! Updates are appended as columns of `k` factor buffers `U_1..U_k`
//! (`n x K` each). When `K` updates are buffered they are folded into the
//! dense tensor `A` in one batch:
//!
//! ```text
//! A ⊕= fold( (U_1 ⊘ .. ⊘ U_h) · (U_{h+1} ⊘ .. ⊘ U_k)ᵀ ),   h = ⌈k/2⌉
//! ```
//!
//! A query fixing modes `ℓ_1..ℓ_s` at indices `i_1..i_s` returns the slice
//! of `A` plus the same slice of the buffered part. For the latter the
//! fixed buffers collapse to rows, whose Hadamard product `w'` scales one
//! of the remaining factors; the `k - s` remaining factors are then split
//! in two face-split groups and multiplied, exactly as in the flush.
//!
//! Between operations the structure always satisfies
//! `A ⊕ Σ_{q < fill} ⊗_j U_j[:, q] = Σ_{t ≤ updates} ⊗_j u_j(t)`.

use crate::error::{KronError, Result};
use crate::kron::{face_split, hadamard_rows, matmul_bt, scale_columns, MatmulKernel};
use crate::matrix::MatView;
use crate::semiring::{CountScope, Semiring};
use crate::tensor::{DenseTensor, QuerySpec, Shape};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LazyParams {
    shape: Shape,
    capacity: usize,
    exponent: Option<f64>,
    split: usize,
    kernel: MatmulKernel,
}

impl LazyParams {
    /// Order `k`, mode size `n`, buffer capacity `K`.
    pub fn new(order: usize, n: usize, capacity: usize) -> Result<Self> {
        let shape = Shape::new(order, n)?;
        if capacity == 0 {
            return Err(KronError::InvalidParameter(
                "buffer capacity must be at least 1".into(),
            ));
        }
        Ok(LazyParams {
            shape,
            capacity,
            exponent: None,
            split: order.div_ceil(2),
            kernel: MatmulKernel::Naive,
        })
    }

    /// Capacity `K = ⌈n^a⌉` (at least 1).
    pub fn from_exponent(order: usize, n: usize, a: f64) -> Result<Self> {
        let capacity = capacity_for_exponent(n, a)?;
        let mut p = Self::new(order, n, capacity)?;
        p.exponent = Some(a);
        Ok(p)
    }

    /// Number of leading modes grouped on the row side of the flush
    /// product. Defaults to `⌈k/2⌉`.
    pub fn with_split(mut self, split: usize) -> Result<Self> {
        if split == 0 || split > self.shape.order() {
            return Err(KronError::InvalidSplit {
                split,
                order: self.shape.order(),
            });
        }
        self.split = split;
        Ok(self)
    }

    pub fn with_kernel(mut self, kernel: MatmulKernel) -> Self {
        self.kernel = kernel;
        self
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn order(&self) -> usize {
        self.shape.order()
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// The exponent `a` this capacity was derived from, if any.
    pub fn exponent(&self) -> Option<f64> {
        self.exponent
    }

    pub fn split(&self) -> usize {
        self.split
    }

    pub fn kernel(&self) -> MatmulKernel {
        self.kernel
    }
}

/// `⌈n^a⌉`, clamped to at least 1. Powers that land within rounding error
/// of an integer are taken as that integer.
pub fn capacity_for_exponent(n: usize, a: f64) -> Result<usize> {
    if !a.is_finite() || a < 0.0 {
        return Err(KronError::InvalidParameter(format!(
            "exponent must be finite and non-negative, got {a}"
        )));
    }
    let x = (n as f64).powf(a);
    let r = x.round();
    let k = if (x - r).abs() <= 1e-9 * r.max(1.0) {
        r
    } else {
        x.ceil()
    };
    if k > (1u64 << 40) as f64 {
        return Err(KronError::InvalidParameter(format!(
            "capacity n^a = {x} is too large"
        )));
    }
    Ok((k as usize).max(1))
}

/// One rank-1 update: `k` vectors of length `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct UpdateEvent<S> {
    vectors: Vec<Vec<S>>,
}

impl<S: Semiring> UpdateEvent<S> {
    pub fn new(vectors: Vec<Vec<S>>) -> Self {
        UpdateEvent { vectors }
    }

    pub fn vectors(&self) -> &[Vec<S>] {
        &self.vectors
    }

    pub fn validate(&self, shape: Shape) -> Result<()> {
        if self.vectors.len() != shape.order() {
            return Err(KronError::DimensionMismatch(format!(
                "update carries {} vectors for order {}",
                self.vectors.len(),
                shape.order()
            )));
        }
        if let Some(v) = self.vectors.iter().find(|v| v.len() != shape.n()) {
            return Err(KronError::DimensionMismatch(format!(
                "update vector of length {} for mode size {}",
                v.len(),
                shape.n()
            )));
        }
        Ok(())
    }
}

/// Multiplication counts of one flush. Zero for non-counting scalars.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FlushProfile {
    pub columns: usize,
    pub face_split_muls: u64,
    pub multiply_muls: u64,
}

/// Multiplication counts of one query. Zero for non-counting scalars.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QueryProfile {
    pub fill: usize,
    /// Slicing `A`; always zero.
    pub full_part_muls: u64,
    /// Hadamard product of the fixed rows plus column scaling.
    pub scaling_muls: u64,
    pub face_split_muls: u64,
    /// The `B · Cᵀ` step.
    pub multiply_muls: u64,
}

impl QueryProfile {
    pub fn total_muls(&self) -> u64 {
        self.full_part_muls + self.scaling_muls + self.face_split_muls + self.multiply_muls
    }
}

/// Running totals over the lifetime of a structure.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LazyStats {
    pub updates: u64,
    pub flushes: u64,
    pub flushed_columns: u64,
    pub face_split_muls: u64,
    pub multiply_muls: u64,
}

/// Anything that maintains a sum of rank-1 tensors and answers sub-tensor
/// queries on it.
pub trait DynamicKron<S: Semiring> {
    fn shape(&self) -> Shape;
    fn apply(&mut self, event: &UpdateEvent<S>) -> Result<()>;
    fn answer(&self, q: &QuerySpec) -> Result<DenseTensor<S>>;
}

#[derive(Debug, Clone)]
pub struct LazyKron<S> {
    params: LazyParams,
    dense: DenseTensor<S>,
    /// Column-major `n x K` buffers: column `q` occupies `[q*n, (q+1)*n)`.
    buffers: Vec<Vec<S>>,
    fill: usize,
    stats: LazyStats,
}

impl<S: Semiring> LazyKron<S> {
    pub fn new(params: LazyParams) -> Self {
        let shape = params.shape();
        let buf_len = shape.n() * params.capacity();
        LazyKron {
            params,
            dense: DenseTensor::zeros(shape),
            buffers: vec![vec![S::zero(); buf_len]; shape.order()],
            fill: 0,
            stats: LazyStats::default(),
        }
    }

    pub fn params(&self) -> &LazyParams {
        &self.params
    }

    /// Number of buffered, not yet flushed, updates.
    pub fn fill(&self) -> usize {
        self.fill
    }

    /// Total updates absorbed.
    pub fn updates(&self) -> u64 {
        self.stats.updates
    }

    pub fn stats(&self) -> &LazyStats {
        &self.stats
    }

    /// The dense part `A`, excluding buffered updates.
    pub fn dense_part(&self) -> &DenseTensor<S> {
        &self.dense
    }

    fn buffer_view(&self, mode: usize) -> MatView<'_, S> {
        let n = self.params.n();
        MatView::new(&self.buffers[mode], n, self.fill, 1, n)
    }

    fn buffer_row(&self, mode: usize, index: usize) -> Vec<S> {
        let n = self.params.n();
        (0..self.fill)
            .map(|q| self.buffers[mode][q * n + index])
            .collect()
    }

    /// Buffers one rank-1 update, flushing when the buffers become full.
    /// Returns the flush profile if a flush ran.
    pub fn update(&mut self, event: &UpdateEvent<S>) -> Result<Option<FlushProfile>> {
        event.validate(self.params.shape())?;
        let n = self.params.n();
        let at = self.fill * n;
        for (buf, v) in self.buffers.iter_mut().zip(event.vectors()) {
            buf[at..at + n].copy_from_slice(v);
        }
        self.fill += 1;
        self.stats.updates += 1;
        if self.fill == self.params.capacity() {
            Ok(Some(self.flush()))
        } else {
            Ok(None)
        }
    }

    /// Folds all buffered columns into `A` and empties the buffers.
    pub fn flush(&mut self) -> FlushProfile {
        if self.fill == 0 {
            return FlushProfile::default();
        }
        let fill = self.fill;
        let split = self.params.split();
        let views: Vec<MatView<'_, S>> = (0..self.params.order())
            .map(|j| self.buffer_view(j))
            .collect();

        let scope = CountScope::start();
        let rows = face_split(&views[..split], fill).expect("buffers share n x fill");
        let cols = face_split(&views[split..], fill).expect("buffers share n x fill");
        let face_split_muls = scope.muls();

        let scope = CountScope::start();
        let product = matmul_bt(self.params.kernel(), rows.view(), cols.view())
            .expect("inner dimension is fill");
        let multiply_muls = scope.muls();

        // the n^split x n^(k-split) product shares A's row-major layout
        self.dense.add_flat(product.as_slice());
        self.fill = 0;

        self.stats.flushes += 1;
        self.stats.flushed_columns += fill as u64;
        self.stats.face_split_muls += face_split_muls;
        self.stats.multiply_muls += multiply_muls;
        FlushProfile {
            columns: fill,
            face_split_muls,
            multiply_muls,
        }
    }

    /// Sub-tensor of the maintained sum. Does not modify the structure.
    pub fn query(&self, q: &QuerySpec) -> Result<DenseTensor<S>> {
        self.query_profiled(q).map(|(t, _)| t)
    }

    pub fn query_profiled(&self, q: &QuerySpec) -> Result<(DenseTensor<S>, QueryProfile)> {
        self.query_scaling_at(q, 0)
    }

    /// Like [`LazyKron::query_profiled`], but `w'` scales the `position`-th
    /// free mode's factor instead of the first. Every choice gives the same
    /// answer; `position` is ignored when no mode is free.
    pub fn query_scaling_at(
        &self,
        q: &QuerySpec,
        position: usize,
    ) -> Result<(DenseTensor<S>, QueryProfile)> {
        let shape = self.params.shape();
        q.validate(shape)?;
        let order = shape.order();
        let free = q.free_modes(order);
        if !free.is_empty() && position >= free.len() {
            return Err(KronError::InvalidParameter(format!(
                "scaling position {position} with {} free modes",
                free.len()
            )));
        }

        let mut profile = QueryProfile {
            fill: self.fill,
            ..QueryProfile::default()
        };
        let scope = CountScope::start();
        let mut answer = self.dense.slice(q)?;
        profile.full_part_muls = scope.muls();

        if self.fill == 0 {
            return Ok((answer, profile));
        }
        let fill = self.fill;

        let scope = CountScope::start();
        let fixed_rows: Vec<Vec<S>> = q
            .modes()
            .iter()
            .zip(q.indices())
            .map(|(&mode, &index)| self.buffer_row(mode, index))
            .collect();
        let w_prime = hadamard_rows(&fixed_rows)?;

        let (rows, cols) = if free.is_empty() {
            // every mode fixed: Σ_q w'[q] as a 1 x fill by 1 x fill product
            profile.scaling_muls = scope.muls();
            let ones = face_split::<S>(&[], fill)?;
            (MatView::row_vector(&w_prime).to_matrix(), ones)
        } else {
            let scaled = scale_columns(self.buffer_view(free[position]), &w_prime)?;
            profile.scaling_muls = scope.muls();
            let factors: Vec<MatView<'_, S>> = free
                .iter()
                .enumerate()
                .map(|(p, &mode)| {
                    if p == position {
                        scaled.view()
                    } else {
                        self.buffer_view(mode)
                    }
                })
                .collect();
            let half = free.len().div_ceil(2);
            let scope = CountScope::start();
            let rows = face_split(&factors[..half], fill)?;
            let cols = face_split(&factors[half..], fill)?;
            profile.face_split_muls = scope.muls();
            (rows, cols)
        };

        let scope = CountScope::start();
        let low_rank = matmul_bt(self.params.kernel(), rows.view(), cols.view())?;
        profile.multiply_muls = scope.muls();

        answer.add_flat(low_rank.as_slice());
        Ok((answer, profile))
    }

    /// `A` plus the buffered updates, materialized eagerly. Does not flush.
    pub fn total_tensor(&self) -> DenseTensor<S> {
        let mut total = self.dense.clone();
        let n = self.params.n();
        for q in 0..self.fill {
            let cols: Vec<&[S]> = self
                .buffers
                .iter()
                .map(|b| &b[q * n..(q + 1) * n])
                .collect();
            total
                .outer_accumulate(&cols)
                .expect("buffers match the tensor shape");
        }
        total
    }
}

impl<S: Semiring> DynamicKron<S> for LazyKron<S> {
    fn shape(&self) -> Shape {
        self.params.shape()
    }

    fn apply(&mut self, event: &UpdateEvent<S>) -> Result<()> {
        self.update(event).map(|_| ())
    }

    fn answer(&self, q: &QuerySpec) -> Result<DenseTensor<S>> {
        self.query(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::OracleState;
    use crate::sampling;
    use crate::semiring::Counted;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ev(vs: &[&[f64]]) -> UpdateEvent<f64> {
        UpdateEvent::new(vs.iter().map(|v| v.to_vec()).collect())
    }

    fn q(modes: &[usize], idx: &[usize]) -> QuerySpec {
        QuerySpec::new(modes.to_vec(), idx.to_vec()).unwrap()
    }

    #[test]
    fn new_states() {
        let s = LazyKron::<f64>::new(LazyParams::new(2, 2, 1).unwrap());
        assert_eq!(s.query(&q(&[0], &[1])).unwrap().as_slice(), &[0.0, 0.0]);
        assert_eq!((s.fill(), s.updates()), (0, 0));

        assert_eq!(LazyParams::from_exponent(3, 3, 1.0).unwrap().capacity(), 3);

        let s = LazyKron::<f64>::new(LazyParams::new(4, 2, 5).unwrap());
        assert_eq!(s.buffers.len(), 4);
        assert!(s.buffers.iter().all(|b| b.len() == 2 * 5));
    }

    #[test]
    fn params_validation() {
        assert!(LazyParams::new(2, 2, 0).is_err());
        assert!(LazyParams::new(0, 2, 1).is_err());
        assert!(LazyParams::from_exponent(2, 2, -1.0).is_err());
        assert!(LazyParams::from_exponent(2, 2, f64::NAN).is_err());
        assert!(LazyParams::new(3, 2, 1).unwrap().with_split(0).is_err());
        assert!(LazyParams::new(3, 2, 1).unwrap().with_split(4).is_err());
        assert_eq!(LazyParams::new(3, 2, 1).unwrap().split(), 2);
    }

    #[test]
    fn capacity_rounding() {
        assert_eq!(capacity_for_exponent(8, 1.0 / 3.0).unwrap(), 2);
        assert_eq!(capacity_for_exponent(4, 0.5).unwrap(), 2);
        assert_eq!(capacity_for_exponent(5, 0.5).unwrap(), 3);
        assert_eq!(capacity_for_exponent(7, 0.0).unwrap(), 1);
        assert_eq!(capacity_for_exponent(10, 2.0).unwrap(), 100);
    }

    #[test]
    fn capacity_one_flushes_every_update() {
        let mut s = LazyKron::new(LazyParams::new(2, 2, 1).unwrap());
        let flushed = s.update(&ev(&[&[1.0, 2.0], &[3.0, 4.0]])).unwrap();
        assert!(flushed.is_some());
        assert_eq!(s.dense_part().as_slice(), &[3.0, 4.0, 6.0, 8.0]);
        assert_eq!(s.fill(), 0);
    }

    #[test]
    fn updates_are_lazy() {
        let mut s = LazyKron::new(LazyParams::new(2, 2, 2).unwrap());
        assert!(s
            .update(&ev(&[&[1.0, 2.0], &[3.0, 4.0]]))
            .unwrap()
            .is_none());
        assert_eq!(s.dense_part().as_slice(), &[0.0; 4]);
        assert_eq!(s.fill(), 1);
        // but visible to queries
        assert_eq!(s.query(&q(&[0], &[1])).unwrap().as_slice(), &[6.0, 8.0]);
    }

    #[test]
    fn zero_update_changes_nothing() {
        let mut s = LazyKron::new(LazyParams::new(3, 2, 3).unwrap());
        s.update(&ev(&[&[1.0, 2.0], &[3.0, 4.0], &[5.0, 6.0]]))
            .unwrap();
        let before = s.total_tensor();
        s.update(&ev(&[&[1.0, 2.0], &[0.0, 0.0], &[5.0, 6.0]]))
            .unwrap();
        assert_eq!(s.total_tensor(), before);
        for (m, i) in [(0, 0), (1, 1), (2, 0)] {
            let want = before.slice(&q(&[m], &[i])).unwrap();
            assert_eq!(s.query(&q(&[m], &[i])).unwrap(), want);
        }
    }

    #[test]
    fn update_rejects_bad_shapes() {
        let mut s = LazyKron::new(LazyParams::new(2, 2, 2).unwrap());
        assert!(s.update(&ev(&[&[1.0, 2.0]])).is_err());
        assert!(s.update(&ev(&[&[1.0, 2.0], &[1.0]])).is_err());
        assert_eq!(s.updates(), 0);
    }

    #[test]
    fn flush_examples() {
        let mut s = LazyKron::new(LazyParams::new(2, 2, 3).unwrap());
        assert_eq!(s.flush(), FlushProfile::default());
        assert_eq!(s.dense_part().as_slice(), &[0.0; 4]);

        s.update(&ev(&[&[1.0, 0.0], &[0.0, 1.0]])).unwrap();
        s.update(&ev(&[&[0.0, 1.0], &[1.0, 0.0]])).unwrap();
        let prof = s.flush();
        assert_eq!(prof.columns, 2);
        assert_eq!(s.dense_part().as_slice(), &[0.0, 1.0, 1.0, 0.0]);
        assert_eq!(s.fill(), 0);
    }

    #[test]
    fn flush_matches_oracle_order_three() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut s = LazyKron::new(LazyParams::new(3, 3, 8).unwrap());
        let mut o = OracleState::new(Shape::new(3, 3).unwrap());
        for _ in 0..5 {
            let e: UpdateEvent<f64> = sampling::random_event(&mut rng, 3, 3);
            s.update(&e).unwrap();
            o.update(&e).unwrap();
        }
        s.flush();
        assert_eq!(s.dense_part(), o.tensor());
    }

    #[test]
    fn query_examples() {
        let mut s = LazyKron::new(LazyParams::new(3, 2, 2).unwrap());
        assert_eq!(s.query(&q(&[1], &[0])).unwrap().as_slice(), &[0.0; 4]);
        s.update(&ev(&[&[1.0, 2.0], &[3.0, 4.0], &[5.0, 6.0]]))
            .unwrap();
        assert_eq!(s.fill(), 1);
        assert_eq!(
            s.query(&q(&[1], &[0])).unwrap().as_slice(),
            &[15.0, 18.0, 30.0, 36.0]
        );
        let scalar = s.query(&q(&[0, 1, 2], &[0, 0, 0])).unwrap();
        assert_eq!(scalar.order(), 0);
        assert_eq!(scalar.as_scalar(), Some(15.0));
    }

    #[test]
    fn query_errors() {
        let s = LazyKron::<f64>::new(LazyParams::new(2, 3, 2).unwrap());
        assert_eq!(
            s.query(&q(&[2], &[0])),
            Err(KronError::ModeOutOfRange { mode: 2, order: 2 })
        );
        assert_eq!(
            s.query(&q(&[1], &[3])),
            Err(KronError::IndexOutOfRange { index: 3, n: 3 })
        );
    }

    #[test]
    fn total_tensor_is_idempotent() {
        let mut s = LazyKron::new(LazyParams::new(2, 2, 4).unwrap());
        assert_eq!(s.total_tensor().as_slice(), &[0.0; 4]);
        s.update(&ev(&[&[1.0, 2.0], &[3.0, 4.0]])).unwrap();
        assert_eq!(s.total_tensor(), s.total_tensor());
        assert_eq!(s.fill(), 1);
    }

    #[test]
    fn flush_and_query_counts() {
        for (k, n, cap) in [(1usize, 3usize, 2usize), (2, 2, 3), (3, 2, 3), (4, 3, 2)] {
            let mut rng = ChaCha8Rng::seed_from_u64(k as u64);
            let mut s = LazyKron::<Counted<f64>>::new(LazyParams::new(k, n, cap).unwrap());
            let mut flush = None;
            for _ in 0..cap {
                flush = s.update(&sampling::random_event(&mut rng, k, n)).unwrap();
            }
            let flush = flush.expect("K-th update flushes");
            assert_eq!(flush.multiply_muls, (n.pow(k as u32) * cap) as u64);

            for _ in 0..cap - 1 {
                s.update(&sampling::random_event(&mut rng, k, n)).unwrap();
            }
            let fill = s.fill();
            assert_eq!(fill, cap - 1);
            for modes in sampling::mode_subsets(k) {
                let q = QuerySpec::new(modes.clone(), vec![0; modes.len()]).unwrap();
                let (_, prof) = s.query_profiled(&q).unwrap();
                assert_eq!(prof.full_part_muls, 0);
                let free = k - modes.len();
                let want = if fill == 0 {
                    0
                } else {
                    n.pow(free as u32) * fill
                };
                assert_eq!(prof.multiply_muls, want as u64);
            }
        }
    }

    proptest! {
        #[test]
        fn oracle_equivalence(k in 1usize..=4, n in 2usize..=3, cap in prop::sample::select(vec![1usize, 2, 3, 5]), seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let shape = Shape::new(k, n).unwrap();
            let mut s = LazyKron::new(LazyParams::new(k, n, cap).unwrap());
            let mut o = OracleState::new(shape);
            for _ in 0..12 {
                let e: UpdateEvent<f64> = sampling::random_event(&mut rng, k, n);
                s.update(&e).unwrap();
                o.update(&e).unwrap();
                for q in sampling::queries(&mut rng, k, n, 4) {
                    prop_assert_eq!(s.query(&q).unwrap(), o.query(&q).unwrap());
                }
                prop_assert_eq!(s.total_tensor(), o.tensor().clone());
            }
        }

        #[test]
        fn scaling_position_is_irrelevant(k in 2usize..=4, n in 2usize..=3, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut s = LazyKron::new(LazyParams::new(k, n, 9).unwrap());
            for _ in 0..5 {
                s.update(&sampling::random_event::<f64, _>(&mut rng, k, n)).unwrap();
            }
            for q in sampling::queries(&mut rng, k, n, 2) {
                let free = k - q.s();
                let (base, _) = s.query_scaling_at(&q, 0).unwrap();
                for p in 1..free {
                    prop_assert_eq!(&s.query_scaling_at(&q, p).unwrap().0, &base);
                }
            }
        }

        #[test]
        fn split_choice_is_irrelevant(k in 1usize..=4, n in 2usize..=3, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let events: Vec<UpdateEvent<f64>> = (0..7).map(|_| sampling::random_event(&mut rng, k, n)).collect();
            let mut reference = None;
            for split in 1..=k {
                let mut s = LazyKron::new(LazyParams::new(k, n, 3).unwrap().with_split(split).unwrap());
                for e in &events {
                    s.update(e).unwrap();
                }
                s.flush();
                let t = s.dense_part().clone();
                match &reference {
                    None => reference = Some(t),
                    Some(r) => prop_assert_eq!(&t, r),
                }
            }
        }
    }
}
