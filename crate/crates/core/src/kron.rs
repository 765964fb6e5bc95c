//! Product kernels behind the lazy flush and the low-rank query path:
//! face-splitting products, row Hadamard products, column scaling and
//! `B · Cᵀ` multiplication.
//!
//! Every kernel forms each output entry from scratch, so multiplication
//! counts are closed-form in the input dimensions.

use std::fmt;
use std::str::FromStr;

use crate::error::{KronError, Result};
use crate::matrix::{MatView, Matrix};
use crate::semiring::Semiring;

/// Tile edge of the blocked kernel.
pub const BLOCK_TILE: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MatmulKernel {
    /// Triple loop, one dot product per output entry.
    #[default]
    Naive,
    /// Packs both operands and tiles all three loops by [`BLOCK_TILE`].
    Blocked,
}

impl fmt::Display for MatmulKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatmulKernel::Naive => "naive",
            MatmulKernel::Blocked => "blocked",
        })
    }
}

impl FromStr for MatmulKernel {
    type Err = KronError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(MatmulKernel::Naive),
            "blocked" => Ok(MatmulKernel::Blocked),
            other => Err(KronError::InvalidParameter(format!(
                "unknown kernel {other:?}"
            ))),
        }
    }
}

/// Face-splitting product (transposed Khatri-Rao) of `n x cols` factors.
///
/// Row `(p_1, .., p_m)` (row-major rank, `p_1` most significant), column
/// `q` holds `∏_j factors[j][p_j, q]`. An empty factor list yields the
/// `1 x cols` row of ones. Costs `n^m · cols · (m - 1)` multiplications
/// for `m ≥ 1`.
pub fn face_split<S: Semiring>(factors: &[MatView<'_, S>], cols: usize) -> Result<Matrix<S>> {
    let Some(first) = factors.first() else {
        return Matrix::from_vec(1, cols, vec![S::one(); cols]);
    };
    let n = first.rows();
    for f in factors {
        if f.rows() != n || f.cols() != cols {
            return Err(KronError::DimensionMismatch(format!(
                "face-split factor is {}x{}, expected {n}x{cols}",
                f.rows(),
                f.cols()
            )));
        }
    }
    let m = factors.len();
    let rows = n
        .checked_pow(m as u32)
        .ok_or_else(|| KronError::DimensionMismatch("face-split row count overflows".into()))?;
    let mut data = Vec::with_capacity(rows * cols);
    if rows == 0 {
        return Matrix::from_vec(0, cols, data);
    }
    let mut digits = vec![0usize; m];
    loop {
        for q in 0..cols {
            let mut prod = first.get(digits[0], q);
            for (f, &p) in factors[1..].iter().zip(&digits[1..]) {
                prod = prod.sr_mul(f.get(p, q));
            }
            data.push(prod);
        }
        let mut j = m;
        loop {
            if j == 0 {
                return Matrix::from_vec(rows, cols, data);
            }
            j -= 1;
            digits[j] += 1;
            if digits[j] < n {
                break;
            }
            digits[j] = 0;
        }
    }
}

/// Entrywise product across equal-length rows.
pub fn hadamard_rows<S: Semiring, R: AsRef<[S]>>(rows: &[R]) -> Result<Vec<S>> {
    let (first, rest) = rows
        .split_first()
        .ok_or_else(|| KronError::DimensionMismatch("hadamard product of no rows".into()))?;
    let mut out = first.as_ref().to_vec();
    for r in rest {
        let r = r.as_ref();
        if r.len() != out.len() {
            return Err(KronError::DimensionMismatch(format!(
                "hadamard rows of length {} and {}",
                out.len(),
                r.len()
            )));
        }
        for (o, &x) in out.iter_mut().zip(r) {
            *o = o.sr_mul(x);
        }
    }
    Ok(out)
}

/// `W · diag(weights)`: column `q` of `w` scaled by `weights[q]`.
pub fn scale_columns<S: Semiring>(w: MatView<'_, S>, weights: &[S]) -> Result<Matrix<S>> {
    if weights.len() != w.cols() {
        return Err(KronError::DimensionMismatch(format!(
            "{} weights for a matrix with {} columns",
            weights.len(),
            w.cols()
        )));
    }
    let mut data = Vec::with_capacity(w.rows() * w.cols());
    for r in 0..w.rows() {
        data.extend(
            weights
                .iter()
                .enumerate()
                .map(|(q, &s)| s.sr_mul(w.get(r, q))),
        );
    }
    Matrix::from_vec(w.rows(), w.cols(), data)
}

/// `B · Cᵀ` for `B: a x c`, `C: b x c`. Both kernels sum each entry over
/// `q` in ascending order starting from zero, so they agree exactly on any
/// scalar type and perform `a · b · c` multiplications.
pub fn matmul_bt<S: Semiring>(
    kernel: MatmulKernel,
    b: MatView<'_, S>,
    c: MatView<'_, S>,
) -> Result<Matrix<S>> {
    if b.cols() != c.cols() {
        return Err(KronError::DimensionMismatch(format!(
            "inner dimensions {} and {} differ",
            b.cols(),
            c.cols()
        )));
    }
    match kernel {
        MatmulKernel::Naive => Ok(matmul_bt_naive(b, c)),
        MatmulKernel::Blocked => Ok(matmul_bt_blocked(b, c)),
    }
}

fn matmul_bt_naive<S: Semiring>(b: MatView<'_, S>, c: MatView<'_, S>) -> Matrix<S> {
    let (rows, cols, inner) = (b.rows(), c.rows(), b.cols());
    let mut data = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for s in 0..cols {
            let mut acc = S::zero();
            for q in 0..inner {
                acc = acc.sr_add(b.get(r, q).sr_mul(c.get(s, q)));
            }
            data.push(acc);
        }
    }
    Matrix::from_vec(rows, cols, data).expect("dimensions fixed above")
}

fn matmul_bt_blocked<S: Semiring>(b: MatView<'_, S>, c: MatView<'_, S>) -> Matrix<S> {
    let (rows, cols, inner) = (b.rows(), c.rows(), b.cols());
    let bp = b.to_matrix();
    let cp = c.to_matrix();
    let (bp, cp) = (bp.as_slice(), cp.as_slice());
    let mut out = vec![S::zero(); rows * cols];
    for r0 in (0..rows).step_by(BLOCK_TILE) {
        let r1 = (r0 + BLOCK_TILE).min(rows);
        for s0 in (0..cols).step_by(BLOCK_TILE) {
            let s1 = (s0 + BLOCK_TILE).min(cols);
            for q0 in (0..inner).step_by(BLOCK_TILE) {
                let q1 = (q0 + BLOCK_TILE).min(inner);
                for r in r0..r1 {
                    let brow = &bp[r * inner + q0..r * inner + q1];
                    for s in s0..s1 {
                        let crow = &cp[s * inner + q0..s * inner + q1];
                        let cell = &mut out[r * cols + s];
                        let mut acc = *cell;
                        for (&x, &y) in brow.iter().zip(crow) {
                            acc = acc.sr_add(x.sr_mul(y));
                        }
                        *cell = acc;
                    }
                }
            }
        }
    }
    Matrix::from_vec(rows, cols, out).expect("dimensions fixed above")
}
