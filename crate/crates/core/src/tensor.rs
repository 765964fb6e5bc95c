//! Dense order-k tensors with equal mode size `n`, stored flat in row-major
//! order (mode 0 most significant).
//!
//! Element `(p_0, .., p_{k-1})` lives at offset `Σ_j p_j · n^(k-1-j)`. Because
//! a face-split product orders its rows the same way, an `n^m x n^(k-m)`
//! matrix and an order-k tensor share one flat buffer: matricizing is a
//! reinterpretation, not a permutation.

use crate::error::{KronError, Result};
use crate::matrix::Matrix;
use crate::semiring::Semiring;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Shape {
    order: usize,
    n: usize,
}

impl Shape {
    /// Order-k shape with every mode of size `n`. Fails when `n^k` elements
    /// would not be addressable.
    pub fn new(order: usize, n: usize) -> Result<Self> {
        if order == 0 || n == 0 {
            return Err(KronError::InvalidShape { order, n });
        }
        let shape = Shape { order, n };
        shape
            .checked_len()
            .ok_or(KronError::CapacityExceeded { order, n })?;
        Ok(shape)
    }

    /// Order-0 shape holding a single scalar.
    pub fn scalar(n: usize) -> Self {
        Shape { order: 0, n }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.n.pow(self.order as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn checked_len(&self) -> Option<usize> {
        let len = self.n.checked_pow(u32::try_from(self.order).ok()?)?;
        // Vec<S> may hold at most isize::MAX bytes; keep headroom for 16-byte scalars.
        (len <= isize::MAX as usize / 16).then_some(len)
    }

    /// Stride of mode `j` in the flat layout.
    pub fn stride(&self, mode: usize) -> usize {
        self.n.pow((self.order - 1 - mode) as u32)
    }

    pub fn offset(&self, index: &[usize]) -> usize {
        debug_assert_eq!(index.len(), self.order);
        index.iter().fold(0, |acc, &p| acc * self.n + p)
    }
}

/// A sub-tensor query: fix mode `modes[t]` at index `indices[t]`.
///
/// Modes are 0-based, distinct and strictly increasing. Index values may
/// repeat across modes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuerySpec {
    modes: Vec<usize>,
    indices: Vec<usize>,
}

impl QuerySpec {
    pub fn new(modes: Vec<usize>, indices: Vec<usize>) -> Result<Self> {
        if modes.is_empty() {
            return Err(KronError::InvalidQuery(
                "at least one mode must be fixed".into(),
            ));
        }
        if modes.len() != indices.len() {
            return Err(KronError::InvalidQuery(format!(
                "{} modes but {} indices",
                modes.len(),
                indices.len()
            )));
        }
        if modes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(KronError::InvalidQuery(format!(
                "modes must be strictly increasing, got {modes:?}"
            )));
        }
        Ok(QuerySpec { modes, indices })
    }

    pub fn modes(&self) -> &[usize] {
        &self.modes
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// Number of fixed modes.
    pub fn s(&self) -> usize {
        self.modes.len()
    }

    pub fn validate(&self, shape: Shape) -> Result<()> {
        for (&mode, &index) in self.modes.iter().zip(&self.indices) {
            if mode >= shape.order() {
                return Err(KronError::ModeOutOfRange {
                    mode,
                    order: shape.order(),
                });
            }
            if index >= shape.n() {
                return Err(KronError::IndexOutOfRange {
                    index,
                    n: shape.n(),
                });
            }
        }
        Ok(())
    }

    /// Modes not fixed by the query, ascending.
    pub fn free_modes(&self, order: usize) -> Vec<usize> {
        (0..order).filter(|m| !self.modes.contains(m)).collect()
    }

    /// Index fixed for `mode`, if any.
    pub fn index_for(&self, mode: usize) -> Option<usize> {
        self.modes
            .iter()
            .position(|&m| m == mode)
            .map(|t| self.indices[t])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseTensor<S> {
    shape: Shape,
    data: Vec<S>,
}

impl<S: Semiring> DenseTensor<S> {
    pub fn zeros(shape: Shape) -> Self {
        DenseTensor {
            shape,
            data: vec![S::zero(); shape.len()],
        }
    }

    pub fn from_vec(shape: Shape, data: Vec<S>) -> Result<Self> {
        if data.len() != shape.len() {
            return Err(KronError::DimensionMismatch(format!(
                "{} elements for a tensor of order {} and mode size {}",
                data.len(),
                shape.order(),
                shape.n()
            )));
        }
        Ok(DenseTensor { shape, data })
    }

    /// Evaluates `f` at every multi-index, in storage order.
    pub fn from_fn(shape: Shape, mut f: impl FnMut(&[usize]) -> S) -> Self {
        let mut data = Vec::with_capacity(shape.len());
        for_each_index(shape, |idx| data.push(f(idx)));
        DenseTensor { shape, data }
    }

    pub fn scalar(n: usize, value: S) -> Self {
        DenseTensor {
            shape: Shape::scalar(n),
            data: vec![value],
        }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn order(&self) -> usize {
        self.shape.order
    }

    pub fn as_slice(&self) -> &[S] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<S> {
        self.data
    }

    pub fn get(&self, index: &[usize]) -> S {
        self.data[self.shape.offset(index)]
    }

    pub fn set(&mut self, index: &[usize], v: S) {
        let off = self.shape.offset(index);
        self.data[off] = v;
    }

    /// The single entry of an order-0 tensor.
    pub fn as_scalar(&self) -> Option<S> {
        (self.shape.order == 0).then(|| self.data[0])
    }

    /// Fixes mode `modes[t]` at `indices[t]` and returns the remaining
    /// order `k - s` sub-tensor, free modes in their original order. Reads
    /// exactly `n^(k-s)` elements and performs no scalar arithmetic.
    pub fn slice(&self, q: &QuerySpec) -> Result<DenseTensor<S>> {
        q.validate(self.shape)?;
        let shape = self.shape;
        let base: usize = q
            .modes()
            .iter()
            .zip(q.indices())
            .map(|(&m, &i)| i * shape.stride(m))
            .sum();
        let free = q.free_modes(shape.order);
        let out_shape = Shape {
            order: free.len(),
            n: shape.n,
        };
        let strides: Vec<usize> = free.iter().map(|&m| shape.stride(m)).collect();
        let mut data = Vec::with_capacity(out_shape.len());
        let mut counter = vec![0usize; free.len()];
        let mut offset = base;
        loop {
            data.push(self.data[offset]);
            // odometer over the free modes, last fastest
            let mut j = free.len();
            loop {
                if j == 0 {
                    return Ok(DenseTensor {
                        shape: out_shape,
                        data,
                    });
                }
                j -= 1;
                counter[j] += 1;
                offset += strides[j];
                if counter[j] < shape.n {
                    break;
                }
                offset -= strides[j] * shape.n;
                counter[j] = 0;
            }
        }
    }

    /// Elementwise `self ⊕= other`.
    pub fn add_assign(&mut self, other: &DenseTensor<S>) -> Result<()> {
        if self.shape != other.shape {
            return Err(KronError::DimensionMismatch(format!(
                "cannot add a tensor of shape {:?} into {:?}",
                other.shape, self.shape
            )));
        }
        self.add_flat(&other.data);
        Ok(())
    }

    /// Elementwise `⊕=` of a buffer laid out like `self`.
    pub(crate) fn add_flat(&mut self, other: &[S]) {
        debug_assert_eq!(self.data.len(), other.len());
        for (a, &b) in self.data.iter_mut().zip(other) {
            *a = a.sr_add(b);
        }
    }

    /// Adds the outer product `v_0 ⊗ .. ⊗ v_{k-1}` into `self`.
    ///
    /// Each entry's product is formed independently, so this costs exactly
    /// `n^k · (k - 1)` multiplications.
    pub fn outer_accumulate<V: AsRef<[S]>>(&mut self, vectors: &[V]) -> Result<()> {
        let shape = self.shape;
        if vectors.len() != shape.order {
            return Err(KronError::DimensionMismatch(format!(
                "{} vectors for a tensor of order {}",
                vectors.len(),
                shape.order
            )));
        }
        if let Some(v) = vectors.iter().find(|v| v.as_ref().len() != shape.n) {
            return Err(KronError::DimensionMismatch(format!(
                "vector of length {} for mode size {}",
                v.as_ref().len(),
                shape.n
            )));
        }
        let data = &mut self.data;
        let mut off = 0;
        for_each_index(shape, |idx| {
            let mut prod = vectors[0].as_ref()[idx[0]];
            for (v, &p) in vectors[1..].iter().zip(&idx[1..]) {
                prod = prod.sr_mul(v.as_ref()[p]);
            }
            data[off] = data[off].sr_add(prod);
            off += 1;
        });
        Ok(())
    }

    /// Views the tensor as an `n^split x n^(k - split)` matrix. Row index is
    /// the row-major rank of the first `split` coordinates, column index the
    /// rank of the rest.
    pub fn matricize(&self, split: usize) -> Result<Matrix<S>> {
        let k = self.shape.order;
        if split == 0 || split >= k {
            return Err(KronError::InvalidSplit { split, order: k });
        }
        let rows = self.shape.n.pow(split as u32);
        let cols = self.shape.n.pow((k - split) as u32);
        Matrix::from_vec(rows, cols, self.data.clone())
    }

    /// Inverse of [`DenseTensor::matricize`].
    pub fn dematricize(m: Matrix<S>, shape: Shape, split: usize) -> Result<Self> {
        let k = shape.order;
        if split == 0 || split >= k {
            return Err(KronError::InvalidSplit { split, order: k });
        }
        let rows = shape.n.pow(split as u32);
        let cols = shape.n.pow((k - split) as u32);
        if m.rows() != rows || m.cols() != cols {
            return Err(KronError::DimensionMismatch(format!(
                "{}x{} matrix cannot fold into order {k} with split {split}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(DenseTensor {
            shape,
            data: m.into_vec(),
        })
    }
}

/// Calls `f` with every multi-index of `shape` in row-major order.
pub fn for_each_index(shape: Shape, mut f: impl FnMut(&[usize])) {
    let k = shape.order();
    let n = shape.n();
    let mut idx = vec![0usize; k];
    loop {
        f(&idx);
        let mut j = k;
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < n {
                break;
            }
            idx[j] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{CountScope, Counted};
    use proptest::prelude::*;

    fn uvw() -> DenseTensor<f64> {
        let (u, v, w) = ([1.0, 2.0], [3.0, 4.0], [5.0, 6.0]);
        DenseTensor::from_fn(Shape::new(3, 2).unwrap(), |p| u[p[0]] * v[p[1]] * w[p[2]])
    }

    #[test]
    fn zeros_have_expected_lengths() {
        let t = DenseTensor::<f64>::zeros(Shape::new(2, 2).unwrap());
        assert_eq!(t.as_slice(), &[0.0; 4]);
        assert_eq!(
            DenseTensor::<f64>::zeros(Shape::new(1, 3).unwrap()).as_slice(),
            &[0.0; 3]
        );
        assert_eq!(
            DenseTensor::<bool>::zeros(Shape::new(3, 2).unwrap()).as_slice(),
            &[false; 8]
        );
    }

    #[test]
    fn shape_rejects_degenerate_and_oversized() {
        assert!(matches!(
            Shape::new(0, 3),
            Err(KronError::InvalidShape { .. })
        ));
        assert!(matches!(
            Shape::new(2, 0),
            Err(KronError::InvalidShape { .. })
        ));
        assert!(matches!(
            Shape::new(64, 2),
            Err(KronError::CapacityExceeded { .. })
        ));
        assert!(matches!(
            Shape::new(5, 1 << 20),
            Err(KronError::CapacityExceeded { .. })
        ));
    }

    #[test]
    fn slice_identity_row() {
        let id = DenseTensor::from_fn(Shape::new(2, 2).unwrap(), |p| (p[0] == p[1]) as i64 as f64);
        let q = QuerySpec::new(vec![0], vec![0]).unwrap();
        assert_eq!(id.slice(&q).unwrap().as_slice(), &[1.0, 0.0]);
    }

    #[test]
    fn slice_middle_mode_of_rank_one() {
        let a = uvw();
        let q = QuerySpec::new(vec![1], vec![0]).unwrap();
        let s = a.slice(&q).unwrap();
        assert_eq!(s.order(), 2);
        assert_eq!(s.as_slice(), &[15.0, 18.0, 30.0, 36.0]);
    }

    #[test]
    fn slice_all_modes_is_scalar() {
        let q = QuerySpec::new(vec![0, 1, 2], vec![0, 0, 0]).unwrap();
        let s = uvw().slice(&q).unwrap();
        assert_eq!(s.order(), 0);
        assert_eq!(s.as_scalar(), Some(15.0));
    }

    #[test]
    fn slice_errors() {
        let a = uvw();
        let q = QuerySpec::new(vec![3], vec![0]).unwrap();
        assert_eq!(
            a.slice(&q),
            Err(KronError::ModeOutOfRange { mode: 3, order: 3 })
        );
        let q = QuerySpec::new(vec![0], vec![2]).unwrap();
        assert_eq!(
            a.slice(&q),
            Err(KronError::IndexOutOfRange { index: 2, n: 2 })
        );
        assert!(QuerySpec::new(vec![1, 0], vec![0, 0]).is_err());
        assert!(QuerySpec::new(vec![1, 1], vec![0, 0]).is_err());
        assert!(QuerySpec::new(vec![0], vec![0, 1]).is_err());
        assert!(QuerySpec::new(vec![], vec![]).is_err());
    }

    #[test]
    fn slice_performs_no_multiplications() {
        let a = DenseTensor::from_fn(Shape::new(3, 3).unwrap(), |p| {
            Counted((p[0] + p[1] * p[2]) as f64)
        });
        let scope = CountScope::start();
        let q = QuerySpec::new(vec![0, 2], vec![1, 2]).unwrap();
        let _ = a.slice(&q).unwrap();
        assert_eq!(scope.muls(), 0);
        assert_eq!(scope.adds(), 0);
    }

    #[test]
    fn add_assign_identities() {
        let b = uvw();
        let mut z = DenseTensor::zeros(b.shape());
        z.add_assign(&b).unwrap();
        assert_eq!(z, b);
        let mut b2 = b.clone();
        b2.add_assign(&DenseTensor::zeros(b.shape())).unwrap();
        assert_eq!(b2, b);

        let bools = DenseTensor::from_fn(Shape::new(2, 3).unwrap(), |p| p[0] <= p[1]);
        let mut twice = bools.clone();
        twice.add_assign(&bools).unwrap();
        assert_eq!(twice, bools);

        let other = DenseTensor::<f64>::zeros(Shape::new(2, 2).unwrap());
        assert!(matches!(
            z.add_assign(&other),
            Err(KronError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn outer_accumulate_examples() {
        let mut a = DenseTensor::zeros(Shape::new(2, 2).unwrap());
        a.outer_accumulate(&[[1.0, 2.0], [3.0, 4.0]]).unwrap();
        assert_eq!(a.as_slice(), &[3.0, 4.0, 6.0, 8.0]);

        let mut a = DenseTensor::zeros(Shape::new(3, 2).unwrap());
        a.outer_accumulate(&[[1.0, 2.0], [3.0, 4.0], [5.0, 6.0]])
            .unwrap();
        assert_eq!(a.get(&[1, 1, 1]), 48.0);

        let before = a.clone();
        a.outer_accumulate(&[[1.0, 2.0], [0.0, 0.0], [5.0, 6.0]])
            .unwrap();
        assert_eq!(a, before);

        assert!(a.outer_accumulate(&[[1.0, 2.0]]).is_err());
        assert!(a
            .outer_accumulate(&[vec![1.0], vec![1.0], vec![1.0]])
            .is_err());
    }

    #[test]
    fn outer_accumulate_counts() {
        for (k, n) in [(1, 3), (2, 2), (3, 3), (4, 2)] {
            let mut a = DenseTensor::zeros(Shape::new(k, n).unwrap());
            let vs: Vec<Vec<Counted<f64>>> = (0..k)
                .map(|j| (0..n).map(|p| Counted((j + p) as f64)).collect())
                .collect();
            let scope = CountScope::start();
            a.outer_accumulate(&vs).unwrap();
            assert_eq!(scope.muls(), (n.pow(k as u32) * (k - 1)) as u64);
        }
    }

    #[test]
    fn matricize_layout() {
        let a = DenseTensor::from_fn(Shape::new(2, 3).unwrap(), |p| (p[0] * 3 + p[1]) as f64);
        let m = a.matricize(1).unwrap();
        assert_eq!(m.as_slice(), a.as_slice());
        assert_eq!((m.rows(), m.cols()), (3, 3));

        let b = DenseTensor::from_fn(Shape::new(3, 2).unwrap(), |p| {
            (100 * p[0] + 10 * p[1] + p[2]) as f64
        });
        let m = b.matricize(2).unwrap();
        assert_eq!((m.rows(), m.cols()), (4, 2));
        assert_eq!(m.get(2, 1), b.get(&[1, 0, 1]));

        assert_eq!(
            b.matricize(0),
            Err(KronError::InvalidSplit { split: 0, order: 3 })
        );
        assert_eq!(
            b.matricize(3),
            Err(KronError::InvalidSplit { split: 3, order: 3 })
        );
        let short = Matrix::zeros(2, 2);
        assert!(DenseTensor::<f64>::dematricize(short, Shape::new(3, 2).unwrap(), 2).is_err());
    }

    fn tensor_strategy() -> impl Strategy<Value = DenseTensor<f64>> {
        (1usize..=4, 1usize..=3).prop_flat_map(|(k, n)| {
            let shape = Shape::new(k, n).unwrap();
            proptest::collection::vec(-5i64..=5, shape.len()).prop_map(move |v| {
                DenseTensor::from_vec(shape, v.into_iter().map(|x| x as f64).collect()).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn matricize_round_trip(a in tensor_strategy()) {
            for m in 1..a.order() {
                let back = DenseTensor::dematricize(a.matricize(m).unwrap(), a.shape(), m).unwrap();
                prop_assert_eq!(&back, &a);
            }
        }

        #[test]
        fn matricize_entry_formula(a in tensor_strategy()) {
            let shape = a.shape();
            for m in 1..a.order() {
                let mat = a.matricize(m).unwrap();
                for_each_index(shape, |p| {
                    let r = p[..m].iter().fold(0, |acc, &x| acc * shape.n() + x);
                    let c = p[m..].iter().fold(0, |acc, &x| acc * shape.n() + x);
                    assert_eq!(mat.get(r, c), a.get(p));
                });
            }
        }

        #[test]
        fn outer_accumulate_matches_pointwise(
            (k, n, vs) in (1usize..=4, 1usize..=3).prop_flat_map(|(k, n)| {
                (Just(k), Just(n), proptest::collection::vec(proptest::collection::vec(-3i64..=3, n), k))
            })
        ) {
            let shape = Shape::new(k, n).unwrap();
            let vs: Vec<Vec<f64>> = vs.into_iter().map(|v| v.into_iter().map(|x| x as f64).collect()).collect();
            let mut a = DenseTensor::zeros(shape);
            a.outer_accumulate(&vs).unwrap();
            for_each_index(shape, |p| {
                let mut want = 1.0;
                for (j, &pj) in p.iter().enumerate() {
                    want *= vs[j][pj];
                }
                assert_eq!(a.get(p), want);
            });
        }

        #[test]
        fn nested_slices_compose(a in tensor_strategy(), seed in any::<u64>()) {
            let k = a.order();
            let n = a.shape().n();
            // first fix a subset of modes, then fix a subset of what remains
            let mask1 = (seed as usize) % (1 << k);
            let modes1: Vec<usize> = (0..k).filter(|m| mask1 & (1 << m) != 0).collect();
            prop_assume!(!modes1.is_empty() && modes1.len() < k);
            let idx1: Vec<usize> = modes1.iter().map(|m| (seed as usize >> (8 + m)) % n).collect();
            let q1 = QuerySpec::new(modes1.clone(), idx1.clone()).unwrap();
            let inner = a.slice(&q1).unwrap();
            let free = q1.free_modes(k);
            let mask2 = ((seed >> 32) as usize) % (1 << free.len());
            let pos2: Vec<usize> = (0..free.len()).filter(|m| mask2 & (1 << m) != 0).collect();
            prop_assume!(!pos2.is_empty());
            let idx2: Vec<usize> = pos2.iter().map(|p| (seed as usize >> (16 + p)) % n).collect();
            let twice = inner.slice(&QuerySpec::new(pos2.clone(), idx2.clone()).unwrap()).unwrap();

            let mut merged: Vec<(usize, usize)> = modes1.into_iter().zip(idx1).collect();
            merged.extend(pos2.iter().map(|&p| free[p]).zip(idx2));
            merged.sort();
            let (ms, is): (Vec<_>, Vec<_>) = merged.into_iter().unzip();
            let once = a.slice(&QuerySpec::new(ms, is).unwrap()).unwrap();
            prop_assert_eq!(twice, once);
        }
    }
}
