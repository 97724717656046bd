//! Block-shift n-ary matrices: the polyadization of a binary structure.
//!
//! An arity-`n` block-shift matrix carries `n - 1` blocks `B_1..B_{n-1}`,
//! block `B_i` of shape `d_i x d_{i+1}` (indices cyclic). In the dense
//! `d x d` embedding, `d = d_1 + ... + d_{n-1}`, block `B_i` sits in block
//! row `i` and block column `i + 1`, with `B_{n-1}` wrapping around to block
//! column 1. Only products of `n` such matrices land back on this pattern,
//! which makes the `n`-fold product a nonderived n-ary multiplication.
//!
//! Blocks are 0-indexed in code.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Debug)]
pub struct BlockShiftMatrix<S> {
    arity: usize,
    blocks: Vec<Matrix<S>>,
}

fn check_arity(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::Arity(n))
    } else {
        Ok(())
    }
}

impl<S: Scalar> BlockShiftMatrix<S> {
    /// Validates block count and the cyclic shape chain.
    pub fn from_blocks(arity: usize, blocks: Vec<Matrix<S>>) -> Result<Self> {
        check_arity(arity)?;
        if blocks.len() != arity - 1 {
            return Err(Error::Count {
                what: "blocks",
                expected: arity - 1,
                got: blocks.len(),
            });
        }
        let m = blocks.len();
        for i in 0..m {
            let next = &blocks[(i + 1) % m];
            if blocks[i].cols() != next.rows() {
                return Err(Error::Dimension(format!(
                    "block {} is {}x{} but block {} has {} rows",
                    i + 1,
                    blocks[i].rows(),
                    blocks[i].cols(),
                    (i + 1) % m + 1,
                    next.rows()
                )));
            }
        }
        Ok(Self { arity, blocks })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn blocks(&self) -> &[Matrix<S>] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<Matrix<S>> {
        self.blocks
    }

    /// `d_1..d_{n-1}`.
    pub fn dims(&self) -> Vec<usize> {
        self.blocks.iter().map(Matrix::rows).collect()
    }

    /// Side of the dense embedding.
    pub fn size(&self) -> usize {
        self.blocks.iter().map(Matrix::rows).sum()
    }

    pub fn to_dense(&self) -> Matrix<S> {
        let dims = self.dims();
        let offsets = offsets(&dims);
        let m = self.blocks.len();
        let mut dense = Matrix::zeros(self.size(), self.size());
        for (i, b) in self.blocks.iter().enumerate() {
            dense.set_block(offsets[i], offsets[(i + 1) % m], b);
        }
        dense
    }

    /// Reads blocks back out of a dense matrix, rejecting any nonzero entry
    /// off the block-shift pattern.
    pub fn from_dense(arity: usize, dims: &[usize], dense: &Matrix<S>) -> Result<Self> {
        check_arity(arity)?;
        if dims.len() != arity - 1 {
            return Err(Error::Count {
                what: "dims",
                expected: arity - 1,
                got: dims.len(),
            });
        }
        let d: usize = dims.iter().sum();
        if dense.shape() != (d, d) {
            return Err(Error::Dimension(format!(
                "dims {dims:?} need a {d}x{d} matrix, got {}x{}",
                dense.rows(),
                dense.cols()
            )));
        }
        if !on_pattern(arity, dims, dense) {
            return Err(Error::Dimension(
                "matrix has nonzero entries off the block-shift pattern".into(),
            ));
        }
        let offsets = offsets(dims);
        let m = dims.len();
        let blocks = (0..m)
            .map(|i| {
                let j = (i + 1) % m;
                dense.block(offsets[i], offsets[j], dims[i], dims[j])
            })
            .collect();
        Self::from_blocks(arity, blocks)
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::Dimension(format!(
                "arity {} vs {}",
                self.arity, other.arity
            )));
        }
        if self.dims() != other.dims() || self.blocks.iter().zip(&other.blocks).any(|(a, b)| a.shape() != b.shape()) {
            return Err(Error::Dimension(format!(
                "dims {:?} vs {:?}",
                self.dims(),
                other.dims()
            )));
        }
        Ok(())
    }

    /// Binary addition of the `[2,n]`-ring, blockwise.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(Self {
            arity: self.arity,
            blocks,
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            arity: self.arity,
            blocks: self.blocks.iter().map(Matrix::neg).collect(),
        }
    }

    /// Blocks of the querelement: block `i` is the product of inverses
    /// `B_{i-1}^-1 B_{i-2}^-1 ... B_{i+1}^-1`, walking backwards cyclically
    /// over the other `n - 2` blocks. For `n = 2` it is the identity.
    pub fn querelement(&self) -> Result<Self> {
        let inverses = self
            .blocks
            .iter()
            .enumerate()
            .map(|(i, b)| {
                b.inverse().map_err(|_| {
                    Error::NotInvertible(format!("block {} of the querelement input", i + 1))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let m = inverses.len();
        let blocks = (0..m)
            .map(|i| {
                let mut acc = Matrix::identity(self.blocks[i].rows());
                for step in 1..m {
                    let j = (i + m - step) % m;
                    acc = acc.mul(&inverses[j])?;
                }
                Ok(acc)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_blocks(self.arity, blocks)
    }

    /// Whether the n-fold product of `self` with itself is `self`.
    pub fn is_nary_idempotent(&self) -> bool {
        let copies = vec![self.clone(); self.arity];
        nary_product(&copies).is_ok_and(|p| p == *self)
    }

    /// The `(-1)^n chi(B_1)...chi(B_{n-1})` character built from a binary
    /// multiplicative character `chi` on the blocks.
    pub fn polyadized_character(
        &self,
        chi: impl Fn(&Matrix<S>) -> Result<S>,
    ) -> Result<S> {
        if !S::COMMUTATIVE {
            return Err(Error::Unsupported(
                "polyadized character over noncommutative scalars".into(),
            ));
        }
        let mut acc = if self.arity % 2 == 0 { S::one() } else { -S::one() };
        for b in &self.blocks {
            acc = acc * chi(b)?;
        }
        Ok(acc)
    }

    /// `(det of the dense embedding, (-1)^n det(B_1)...det(B_{n-1}))`.
    ///
    /// The two agree only for some `(n, p)`; this is reported, not asserted.
    pub fn dense_determinant_comparison(&self) -> Result<(S, S)> {
        let dense = self.to_dense().determinant()?;
        let character = self.polyadized_character(Matrix::determinant)?;
        Ok((dense, character))
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }
}

/// `offsets[i] = d_1 + ... + d_i` (0-based, exclusive).
pub fn offsets(dims: &[usize]) -> Vec<usize> {
    dims.iter()
        .scan(0, |acc, &d| {
            let o = *acc;
            *acc += d;
            Some(o)
        })
        .collect()
}

/// Whether every nonzero entry of `dense` lies in a designated block of the
/// arity-`n` pattern with the given `dims`.
pub fn on_pattern<S: Scalar>(arity: usize, dims: &[usize], dense: &Matrix<S>) -> bool {
    let allowed = pattern_mask(arity, dims);
    let d = allowed.len();
    dense.shape() == (d, d)
        && (0..d).all(|r| (0..d).all(|c| allowed[r][c] || dense.get(r, c).is_zero()))
}

/// Entry-level mask of the block-shift support.
pub fn pattern_mask(arity: usize, dims: &[usize]) -> Vec<Vec<bool>> {
    let _ = arity;
    let d: usize = dims.iter().sum();
    let offsets = offsets(dims);
    let m = dims.len();
    let mut mask = vec![vec![false; d]; d];
    for i in 0..m {
        let j = (i + 1) % m;
        for row in mask.iter_mut().skip(offsets[i]).take(dims[i]) {
            for cell in row.iter_mut().skip(offsets[j]).take(dims[j]) {
                *cell = true;
            }
        }
    }
    mask
}

/// The n-ary product, computed blockwise: result block `i` is the cyclic
/// chain `B'_i B''_{i+1} ... B^{(n)}_{i+n-1}` with indices mod `n - 1`.
pub fn nary_product<S: Scalar>(factors: &[BlockShiftMatrix<S>]) -> Result<BlockShiftMatrix<S>> {
    let first = factors.first().ok_or(Error::Count {
        what: "factors",
        expected: 2,
        got: 0,
    })?;
    let n = first.arity;
    if factors.len() != n {
        return Err(Error::Count {
            what: "factors",
            expected: n,
            got: factors.len(),
        });
    }
    for f in &factors[1..] {
        first.compatible(f)?;
    }
    let m = n - 1;
    let blocks = (0..m)
        .map(|i| {
            let mut acc = factors[0].blocks[i].clone();
            for (k, f) in factors.iter().enumerate().skip(1) {
                acc = acc.mul(&f.blocks[(i + k) % m])?;
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    BlockShiftMatrix::from_blocks(n, blocks)
}

/// Ordinary matrix product of the dense embeddings.
pub fn dense_product<S: Scalar>(factors: &[BlockShiftMatrix<S>]) -> Result<Matrix<S>> {
    let dense: Vec<Matrix<S>> = factors.iter().map(BlockShiftMatrix::to_dense).collect();
    Matrix::product(&dense)
}

/// The n-ary product through the dense embedding, re-extracted into block
/// form. Serves as the oracle for [`nary_product`].
pub fn nary_product_dense<S: Scalar>(
    factors: &[BlockShiftMatrix<S>],
) -> Result<BlockShiftMatrix<S>> {
    let first = factors.first().ok_or(Error::Count {
        what: "factors",
        expected: 2,
        got: 0,
    })?;
    if factors.len() != first.arity {
        return Err(Error::Count {
            what: "factors",
            expected: first.arity,
            got: factors.len(),
        });
    }
    let dense = dense_product(factors)?;
    BlockShiftMatrix::from_dense(first.arity, &first.dims(), &dense).map_err(|e| {
        Error::Internal(format!("dense n-fold product left the pattern: {e}"))
    })
}

/// Whether a `k`-fold product of arity-`n` block-shift matrices is again
/// block-shift: `k = 1 (mod n - 1)`.
pub fn product_pattern(k: usize, n: usize) -> bool {
    k >= 1 && n >= 2 && (k - 1) % (n - 1) == 0
}

/// Places `n - 1` square `p x p` representatives into a block-shift matrix.
pub fn polyadize<S: Scalar>(n: usize, reps: Vec<Matrix<S>>) -> Result<BlockShiftMatrix<S>> {
    check_arity(n)?;
    let p = reps.first().map(Matrix::rows).unwrap_or(0);
    for (i, b) in reps.iter().enumerate() {
        if b.shape() != (p, p) {
            return Err(Error::Dimension(format!(
                "representative {} is {}x{}, expected {p}x{p}",
                i + 1,
                b.rows(),
                b.cols()
            )));
        }
    }
    BlockShiftMatrix::from_blocks(n, reps)
}

/// Polyadization with all blocks equal to `b`.
pub fn unique_polyadize<S: Scalar>(n: usize, b: &Matrix<S>) -> Result<BlockShiftMatrix<S>> {
    check_arity(n)?;
    if !b.is_square() {
        return Err(Error::Dimension(format!(
            "unique polyadization needs a square block, got {}x{}",
            b.rows(),
            b.cols()
        )));
    }
    polyadize(n, vec![b.clone(); n - 1])
}

/// All blocks `I_p`.
pub fn nary_identity<S: Scalar>(n: usize, p: usize) -> Result<BlockShiftMatrix<S>> {
    if p == 0 {
        return Err(Error::Dimension("block size must be positive".into()));
    }
    unique_polyadize(n, &Matrix::identity(p))
}

/// Completes `n - 2` invertible blocks with `B_{n-1} = (B_1 ... B_{n-2})^-1`,
/// so that `B_1 ... B_{n-1} = I` and the result is an n-ary idempotent.
pub fn make_idempotent<S: Scalar>(
    n: usize,
    free_blocks: Vec<Matrix<S>>,
) -> Result<BlockShiftMatrix<S>> {
    check_arity(n)?;
    if n < 3 {
        return Err(Error::Count {
            what: "free blocks (n >= 3 required)",
            expected: 1,
            got: 0,
        });
    }
    if free_blocks.len() != n - 2 {
        return Err(Error::Count {
            what: "free blocks",
            expected: n - 2,
            got: free_blocks.len(),
        });
    }
    let p = free_blocks[0].rows();
    for (i, b) in free_blocks.iter().enumerate() {
        if b.shape() != (p, p) {
            return Err(Error::Dimension(format!(
                "free block {} is {}x{}, expected {p}x{p}",
                i + 1,
                b.rows(),
                b.cols()
            )));
        }
        b.inverse()
            .map_err(|_| Error::NotInvertible(format!("free block {}", i + 1)))?;
    }
    let last = Matrix::product(&free_blocks)?.inverse()?;
    let mut blocks = free_blocks;
    blocks.push(last);
    polyadize(n, blocks)
}

/// The querelement law: placing `quer` at each of the `n` positions among
/// `n - 1` copies of `q` returns `q`. Returns the failing positions.
pub fn querelement_law_failures<S: Scalar>(
    q: &BlockShiftMatrix<S>,
    quer: &BlockShiftMatrix<S>,
) -> Result<Vec<usize>> {
    let n = q.arity;
    let mut failures = Vec::new();
    for pos in 0..n {
        let mut args = vec![q.clone(); n];
        args[pos] = quer.clone();
        if nary_product(&args)? != *q {
            failures.push(pos);
        }
    }
    Ok(failures)
}
