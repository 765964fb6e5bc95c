//! Lazily maintained sums of Kronecker (outer) products.
//!
//! [`LazyKron`] absorbs rank-1 updates `u_1 ⊗ .. ⊗ u_k` into factor
//! buffers and folds them into a dense order-k tensor once every `K`
//! updates, using a face-split product and one matrix multiply. Sub-tensor
//! queries combine a slice of the dense part with a low-rank contraction of
//! the buffers. [`OracleState`] is the eager reference it is checked
//! against, and [`hinted_mv`] drives it through the three phases of the
//! tensor hinted matrix-vector problem.
//!
//! Everything is generic over a commutative [`Semiring`]; the aliases below
//! fix the common instantiations. [`CountingScalar`] meters every
//! multiplication so costs can be audited exactly.
//!
//! All indices and mode identifiers are 0-based.

pub mod error;
pub mod hinted_mv;
pub mod kron;
pub mod lazy;
pub mod matrix;
pub mod oracle;
pub mod sampling;
pub mod semiring;
pub mod tensor;

pub use error::{KronError, Result};
pub use hinted_mv::{HintedMvInstance, PhaseReport};
pub use kron::{face_split, hadamard_rows, matmul_bt, scale_columns, MatmulKernel};
pub use lazy::{
    DynamicKron, FlushProfile, LazyKron, LazyParams, LazyStats, QueryProfile, UpdateEvent,
};
pub use matrix::{MatView, Matrix};
pub use oracle::OracleState;
pub use semiring::{CountScope, Counted, CountingScalar, OpCounts, Semiring};
pub use tensor::{DenseTensor, QuerySpec, Shape};

pub type RealScalar = f64;
pub type BoolScalar = bool;

pub type RealTensor = DenseTensor<f64>;
pub type BoolTensor = DenseTensor<bool>;
pub type CountingTensor = DenseTensor<CountingScalar>;

pub type RealLazyKron = LazyKron<f64>;
pub type BoolLazyKron = LazyKron<bool>;
pub type CountingLazyKron = LazyKron<CountingScalar>;

pub type RealOracle = OracleState<f64>;
pub type BoolOracle = OracleState<bool>;
