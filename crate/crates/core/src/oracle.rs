//! Brute-force reference: keeps the running sum fully materialized and
//! answers queries by slicing it. Shares only the tensor primitives with
//! the lazy structure, none of the product kernels.

use crate::error::Result;
use crate::lazy::{DynamicKron, UpdateEvent};
use crate::semiring::Semiring;
use crate::tensor::{DenseTensor, QuerySpec, Shape};

#[derive(Debug, Clone, PartialEq)]
pub struct OracleState<S> {
    tensor: DenseTensor<S>,
    updates: u64,
}

impl<S: Semiring> OracleState<S> {
    pub fn new(shape: Shape) -> Self {
        OracleState {
            tensor: DenseTensor::zeros(shape),
            updates: 0,
        }
    }

    /// Eagerly adds the outer product: `n^k · (k - 1)` multiplications.
    pub fn update(&mut self, event: &UpdateEvent<S>) -> Result<()> {
        event.validate(self.tensor.shape())?;
        self.tensor.outer_accumulate(event.vectors())?;
        self.updates += 1;
        Ok(())
    }

    pub fn query(&self, q: &QuerySpec) -> Result<DenseTensor<S>> {
        self.tensor.slice(q)
    }

    pub fn tensor(&self) -> &DenseTensor<S> {
        &self.tensor
    }

    pub fn updates(&self) -> u64 {
        self.updates
    }
}

impl<S: Semiring> DynamicKron<S> for OracleState<S> {
    fn shape(&self) -> Shape {
        self.tensor.shape()
    }

    fn apply(&mut self, event: &UpdateEvent<S>) -> Result<()> {
        self.update(event)
    }

    fn answer(&self, q: &QuerySpec) -> Result<DenseTensor<S>> {
        self.query(q)
    }
}
