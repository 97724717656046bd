//! Semisimple double decompositions.
//!
//! First kind ([`ShiftDiag`]): an outer block-shift matrix whose square
//! blocks are themselves block-diagonal with `k` components of sizes `q^(j)`.
//! Second kind ([`DiagShift`]): an outer block-diagonal matrix whose `k`
//! components are block-shift matrices with their own (possibly nonsquare)
//! shift blocks. Both are closed under the ordinary product of `n` matrices,
//! and that product acts independently on each component.
//!
//! [`PMatrix`] is the sum of the ternary two-component forms of both kinds.

use crate::blockshift::{self, BlockShiftMatrix};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Shift-diagonal matrix. `blocks[i][j]` is `A_i^(j)`, the `j`-th diagonal
/// component of the `i`-th shift block, of size `q^(j) x q^(j)`.
#[derive(Clone, PartialEq, Debug)]
pub struct ShiftDiag<S> {
    arity: usize,
    sizes: Vec<usize>,
    blocks: Vec<Vec<Matrix<S>>>,
}

impl<S: Scalar> ShiftDiag<S> {
    pub fn new(arity: usize, blocks: Vec<Vec<Matrix<S>>>) -> Result<Self> {
        if arity < 2 {
            return Err(Error::Arity(arity));
        }
        if blocks.len() != arity - 1 {
            return Err(Error::Count {
                what: "shift positions",
                expected: arity - 1,
                got: blocks.len(),
            });
        }
        let sizes: Vec<usize> = blocks[0].iter().map(Matrix::rows).collect();
        if sizes.is_empty() {
            return Err(Error::Count {
                what: "components",
                expected: 1,
                got: 0,
            });
        }
        for (i, row) in blocks.iter().enumerate() {
            if row.len() != sizes.len() {
                return Err(Error::Count {
                    what: "components",
                    expected: sizes.len(),
                    got: row.len(),
                });
            }
            for (j, a) in row.iter().enumerate() {
                if a.shape() != (sizes[j], sizes[j]) {
                    return Err(Error::Dimension(format!(
                        "block A_{}^({}) is {}x{}, expected {q}x{q}",
                        i + 1,
                        j + 1,
                        a.rows(),
                        a.cols(),
                        q = sizes[j]
                    )));
                }
            }
        }
        Ok(Self {
            arity,
            sizes,
            blocks,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Component sizes `q^(1)..q^(k)`.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn num_components(&self) -> usize {
        self.sizes.len()
    }

    pub fn blocks(&self) -> &[Vec<Matrix<S>>] {
        &self.blocks
    }

    /// `A_i^(j)` with 0-based `i`, `j`.
    pub fn block(&self, i: usize, j: usize) -> &Matrix<S> {
        &self.blocks[i][j]
    }

    /// Outer block-shift form with block-diagonal blocks.
    pub fn outer(&self) -> BlockShiftMatrix<S> {
        let blocks = self
            .blocks
            .iter()
            .map(|row| Matrix::block_diag(row).expect("components are nonempty"))
            .collect();
        BlockShiftMatrix::from_blocks(self.arity, blocks).expect("validated shapes")
    }

    /// Component `j` as a block-shift matrix of its own.
    pub fn component(&self, j: usize) -> BlockShiftMatrix<S> {
        let blocks = self.blocks.iter().map(|row| row[j].clone()).collect();
        BlockShiftMatrix::from_blocks(self.arity, blocks).expect("validated shapes")
    }

    pub fn to_dense(&self) -> Matrix<S> {
        self.outer().to_dense()
    }

    /// Extracts the components of a dense matrix, rejecting any nonzero entry
    /// off the shift-diagonal support.
    pub fn from_dense(arity: usize, sizes: &[usize], dense: &Matrix<S>) -> Result<Self> {
        let mask = shiftdiag_mask(arity, sizes)?;
        check_support(&mask, dense, "shift-diagonal")?;
        let p: usize = sizes.iter().sum();
        let outer = BlockShiftMatrix::from_dense(arity, &vec![p; arity - 1], dense)?;
        let offsets = blockshift::offsets(sizes);
        let blocks = outer
            .blocks()
            .iter()
            .map(|b| {
                sizes
                    .iter()
                    .zip(&offsets)
                    .map(|(&q, &o)| b.block(o, o, q, q))
                    .collect()
            })
            .collect();
        Self::new(arity, blocks)
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.arity != other.arity || self.sizes != other.sizes {
            return Err(Error::Dimension(format!(
                "shift-diagonal shapes differ: (n={}, q={:?}) vs (n={}, q={:?})",
                self.arity, self.sizes, other.arity, other.sizes
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| a.add(b)).collect())
            .collect::<Result<_>>()?;
        Self::new(self.arity, blocks)
    }
}

/// The n-ary product of shift-diagonal matrices, computed per component.
pub fn shiftdiag_nary_product<S: Scalar>(factors: &[ShiftDiag<S>]) -> Result<ShiftDiag<S>> {
    let first = nary_check(factors, ShiftDiag::arity)?;
    for f in &factors[1..] {
        first.compatible(f)?;
    }
    let n = first.arity;
    let mut blocks = vec![Vec::with_capacity(first.sizes.len()); n - 1];
    for j in 0..first.sizes.len() {
        let comps: Vec<_> = factors.iter().map(|f| f.component(j)).collect();
        let prod = blockshift::nary_product(&comps)?;
        for (i, b) in prod.into_blocks().into_iter().enumerate() {
            blocks[i].push(b);
        }
    }
    ShiftDiag::new(n, blocks)
}

/// Diagonal-shift matrix: one block-shift matrix per component.
#[derive(Clone, PartialEq, Debug)]
pub struct DiagShift<S> {
    arity: usize,
    components: Vec<BlockShiftMatrix<S>>,
}

impl<S: Scalar> DiagShift<S> {
    pub fn new(components: Vec<BlockShiftMatrix<S>>) -> Result<Self> {
        let arity = components
            .first()
            .ok_or(Error::Count {
                what: "components",
                expected: 1,
                got: 0,
            })?
            .arity();
        if let Some(c) = components.iter().find(|c| c.arity() != arity) {
            return Err(Error::Dimension(format!(
                "component arity {} differs from {arity}",
                c.arity()
            )));
        }
        Ok(Self { arity, components })
    }

    /// From a `k x (n-1)` grid of shift blocks `B̂_i^(j)`.
    pub fn from_blocks(arity: usize, blocks: Vec<Vec<Matrix<S>>>) -> Result<Self> {
        let components = blocks
            .into_iter()
            .map(|row| BlockShiftMatrix::from_blocks(arity, row))
            .collect::<Result<Vec<_>>>()?;
        Self::new(components)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[BlockShiftMatrix<S>] {
        &self.components
    }

    /// Shift sizes `p_i^(j)` per component.
    pub fn shift_sizes(&self) -> Vec<Vec<usize>> {
        self.components.iter().map(BlockShiftMatrix::dims).collect()
    }

    /// `q^(j)` per component.
    pub fn sizes(&self) -> Vec<usize> {
        self.components.iter().map(BlockShiftMatrix::size).collect()
    }

    pub fn to_dense(&self) -> Matrix<S> {
        let dense: Vec<_> = self.components.iter().map(BlockShiftMatrix::to_dense).collect();
        Matrix::block_diag(&dense).expect("components are nonempty")
    }

    pub fn from_dense(arity: usize, shift_sizes: &[Vec<usize>], dense: &Matrix<S>) -> Result<Self> {
        let mask = diagshift_mask(arity, shift_sizes)?;
        check_support(&mask, dense, "diagonal-shift")?;
        let qs: Vec<usize> = shift_sizes.iter().map(|p| p.iter().sum()).collect();
        let offsets = blockshift::offsets(&qs);
        let components = shift_sizes
            .iter()
            .zip(qs.iter().zip(&offsets))
            .map(|(p, (&q, &o))| BlockShiftMatrix::from_dense(arity, p, &dense.block(o, o, q, q)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(components)
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.arity != other.arity || self.shift_sizes() != other.shift_sizes() {
            return Err(Error::Dimension(format!(
                "diagonal-shift shapes differ: (n={}, p={:?}) vs (n={}, p={:?})",
                self.arity,
                self.shift_sizes(),
                other.arity,
                other.shift_sizes()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Self::new(components)
    }
}

/// The n-ary product of diagonal-shift matrices, componentwise.
pub fn diagshift_nary_product<S: Scalar>(factors: &[DiagShift<S>]) -> Result<DiagShift<S>> {
    let first = nary_check(factors, DiagShift::arity)?;
    for f in &factors[1..] {
        first.compatible(f)?;
    }
    let components = (0..first.components.len())
        .map(|j| {
            let comps: Vec<_> = factors.iter().map(|f| f.components[j].clone()).collect();
            blockshift::nary_product(&comps)
        })
        .collect::<Result<_>>()?;
    DiagShift::new(components)
}

fn nary_check<T>(factors: &[T], arity: impl Fn(&T) -> usize) -> Result<&T> {
    let first = factors.first().ok_or(Error::Count {
        what: "factors",
        expected: 2,
        got: 0,
    })?;
    let n = arity(first);
    if factors.len() != n {
        return Err(Error::Count {
            what: "factors",
            expected: n,
            got: factors.len(),
        });
    }
    Ok(first)
}

fn check_support<S: Scalar>(mask: &[Vec<bool>], dense: &Matrix<S>, name: &str) -> Result<()> {
    let d = mask.len();
    if dense.shape() != (d, d) {
        return Err(Error::Dimension(format!(
            "{name} shape needs a {d}x{d} matrix, got {}x{}",
            dense.rows(),
            dense.cols()
        )));
    }
    if let Some((r, c)) = dense.support().into_iter().find(|&(r, c)| !mask[r][c]) {
        return Err(Error::Dimension(format!(
            "nonzero entry at ({}, {}) lies off the {name} support",
            r + 1,
            c + 1
        )));
    }
    Ok(())
}

/// Entry mask of the shift-diagonal support for component sizes `q^(j)`.
pub fn shiftdiag_mask(arity: usize, sizes: &[usize]) -> Result<Vec<Vec<bool>>> {
    check_shape(arity, sizes)?;
    let blocks = (0..arity - 1)
        .map(|_| sizes.iter().map(|&q| ones(q, q)).collect())
        .collect();
    Ok(support_mask(&ShiftDiag::new(arity, blocks)?.to_dense()))
}

/// Entry mask of the diagonal-shift support for shift sizes `p_i^(j)`.
pub fn diagshift_mask(arity: usize, shift_sizes: &[Vec<usize>]) -> Result<Vec<Vec<bool>>> {
    if arity < 2 {
        return Err(Error::Arity(arity));
    }
    if shift_sizes.is_empty() {
        return Err(Error::Count {
            what: "components",
            expected: 1,
            got: 0,
        });
    }
    let blocks = shift_sizes
        .iter()
        .map(|p| {
            check_shape(arity, p)?;
            if p.len() != arity - 1 {
                return Err(Error::Count {
                    what: "shift sizes",
                    expected: arity - 1,
                    got: p.len(),
                });
            }
            let m = p.len();
            Ok((0..m).map(|i| ones(p[i], p[(i + 1) % m])).collect())
        })
        .collect::<Result<Vec<Vec<Matrix<f64>>>>>()?;
    Ok(support_mask(&DiagShift::from_blocks(arity, blocks)?.to_dense()))
}

fn check_shape(arity: usize, sizes: &[usize]) -> Result<()> {
    if arity < 2 {
        return Err(Error::Arity(arity));
    }
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(Error::Dimension(format!(
            "sizes {sizes:?} must be nonempty and positive"
        )));
    }
    Ok(())
}

// Structural masks only need zero/nonzero, so all-ones f64 blocks suffice.
fn ones(r: usize, c: usize) -> Matrix<f64> {
    Matrix::new(r, c, vec![1.0; r * c]).expect("positive shape")
}

fn support_mask<S: Scalar>(m: &Matrix<S>) -> Vec<Vec<bool>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| !m.get(r, c).is_zero()).collect())
        .collect()
}

/// Structural comparison of the two kinds: whether the dense supports of a
/// shift-diagonal matrix with component sizes `q^(j)` and a diagonal-shift
/// matrix with every shift size `p_i^(j) = q^(j)` differ. Both live on the
/// same `d x d` grid, `d = (n - 1) * sum q^(j)`.
pub fn patterns_distinct(arity: usize, sizes: &[usize]) -> Result<bool> {
    let first = shiftdiag_mask(arity, sizes)?;
    let shift_sizes: Vec<Vec<usize>> = sizes.iter().map(|&q| vec![q; arity - 1]).collect();
    let second = diagshift_mask(arity, &shift_sizes)?;
    Ok(first != second)
}

/// The two-component ternary sum of both kinds, all blocks `q x q`.
#[derive(Clone, PartialEq, Debug)]
pub struct PMatrix<S> {
    pub a1: Matrix<S>,
    pub a2: Matrix<S>,
    pub b1: Matrix<S>,
    pub b2: Matrix<S>,
    pub a1_hat: Matrix<S>,
    pub a2_hat: Matrix<S>,
    pub b1_hat: Matrix<S>,
    pub b2_hat: Matrix<S>,
}

/// 0-based block-grid positions of the P support, in field order
/// `a1, a2, b1, b2, a1_hat, a2_hat, b1_hat, b2_hat`.
pub const PMATRIX_POSITIONS: [(usize, usize); 8] = [
    (0, 2),
    (1, 3),
    (2, 0),
    (3, 1),
    (0, 1),
    (1, 0),
    (2, 3),
    (3, 2),
];

impl<S: Scalar> PMatrix<S> {
    /// Blocks in field order; all must share one square size.
    pub fn from_blocks(blocks: [Matrix<S>; 8]) -> Result<Self> {
        let q = blocks[0].rows();
        if let Some(b) = blocks.iter().find(|b| b.shape() != (q, q)) {
            return Err(Error::Dimension(format!(
                "P blocks must all be {q}x{q}, found {}x{}",
                b.rows(),
                b.cols()
            )));
        }
        let [a1, a2, b1, b2, a1_hat, a2_hat, b1_hat, b2_hat] = blocks;
        Ok(Self {
            a1,
            a2,
            b1,
            b2,
            a1_hat,
            a2_hat,
            b1_hat,
            b2_hat,
        })
    }

    /// Sum of a shift-diagonal and a diagonal-shift element with `n = 3`,
    /// `k = 2` and equal component sizes.
    pub fn from_parts(first: &ShiftDiag<S>, second: &DiagShift<S>) -> Result<Self> {
        let q = first.sizes().first().copied().unwrap_or(0);
        if first.arity() != 3
            || first.sizes() != [q, q]
            || second.arity() != 3
            || second.shift_sizes() != vec![vec![q, q]; 2]
        {
            return Err(Error::Unsupported(
                "P matrices need n = 3, k = 2 and one common block size".into(),
            ));
        }
        let hat = |j: usize, i: usize| second.components()[j].blocks()[i].clone();
        Self::from_blocks([
            first.block(0, 0).clone(),
            first.block(0, 1).clone(),
            first.block(1, 0).clone(),
            first.block(1, 1).clone(),
            hat(0, 0),
            hat(0, 1),
            hat(1, 0),
            hat(1, 1),
        ])
    }

    pub fn q(&self) -> usize {
        self.a1.rows()
    }

    pub fn blocks(&self) -> [&Matrix<S>; 8] {
        [
            &self.a1,
            &self.a2,
            &self.b1,
            &self.b2,
            &self.a1_hat,
            &self.a2_hat,
            &self.b1_hat,
            &self.b2_hat,
        ]
    }

    pub fn to_dense(&self) -> Matrix<S> {
        let q = self.q();
        let mut dense = Matrix::zeros(4 * q, 4 * q);
        for (b, &(r, c)) in self.blocks().into_iter().zip(&PMATRIX_POSITIONS) {
            dense.set_block(r * q, c * q, b);
        }
        dense
    }

    pub fn from_dense(q: usize, dense: &Matrix<S>) -> Result<Self> {
        if q == 0 {
            return Err(Error::Dimension("block size must be positive".into()));
        }
        check_support(&pmatrix_mask(q), dense, "P-matrix")?;
        let blocks = PMATRIX_POSITIONS.map(|(r, c)| dense.block(r * q, c * q, q, q));
        Self::from_blocks(blocks)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let [a, b, c, d, e, f, g, h] = self.blocks();
        let [a2, b2, c2, d2, e2, f2, g2, h2] = other.blocks();
        Self::from_blocks([
            a.add(a2)?,
            b.add(b2)?,
            c.add(c2)?,
            d.add(d2)?,
            e.add(e2)?,
            f.add(f2)?,
            g.add(g2)?,
            h.add(h2)?,
        ])
    }
}

pub fn pmatrix_mask(q: usize) -> Vec<Vec<bool>> {
    let mut mask = vec![vec![false; 4 * q]; 4 * q];
    for &(r, c) in &PMATRIX_POSITIONS {
        for row in mask.iter_mut().skip(r * q).take(q) {
            for cell in row.iter_mut().skip(c * q).take(q) {
                *cell = true;
            }
        }
    }
    mask
}

/// Ordinary product of three P matrices. A result off the P support would
/// mean the ring is not closed and is reported as an internal error.
pub fn pmatrix_ternary_product<S: Scalar>(
    a: &PMatrix<S>,
    b: &PMatrix<S>,
    c: &PMatrix<S>,
) -> Result<PMatrix<S>> {
    let q = a.q();
    if b.q() != q || c.q() != q {
        return Err(Error::Dimension(format!(
            "P block sizes differ: {q}, {}, {}",
            b.q(),
            c.q()
        )));
    }
    let dense = Matrix::product(&[a.to_dense(), b.to_dense(), c.to_dense()])?;
    PMatrix::from_dense(q, &dense)
        .map_err(|e| Error::Internal(format!("ternary P product left the support: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ComplexRational as C;

    fn s(v: i64) -> Matrix<C> {
        Matrix::new(1, 1, vec![C::from(v)]).unwrap()
    }

    fn val(m: &Matrix<C>) -> C {
        m.get(0, 0).clone()
    }

    #[test]
    fn ternary_two_component_layouts() {
        // A1=1, A2=2, B1=3, B2=4 at the displayed positions
        let sd = ShiftDiag::new(3, vec![vec![s(1), s(2)], vec![s(3), s(4)]]).unwrap();
        let d = sd.to_dense();
        let support: Vec<_> = d.support();
        assert_eq!(support, vec![(0, 2), (1, 3), (2, 0), (3, 1)]);
        assert_eq!(val(&d.block(0, 2, 1, 1)), C::from(1));
        assert_eq!(val(&d.block(1, 3, 1, 1)), C::from(2));
        assert_eq!(val(&d.block(2, 0, 1, 1)), C::from(3));
        assert_eq!(val(&d.block(3, 1, 1, 1)), C::from(4));
        assert_eq!(ShiftDiag::from_dense(3, &[1, 1], &d).unwrap(), sd);

        let ds = DiagShift::from_blocks(3, vec![vec![s(5), s(6)], vec![s(7), s(8)]]).unwrap();
        let d = ds.to_dense();
        assert_eq!(d.support(), vec![(0, 1), (1, 0), (2, 3), (3, 2)]);
        assert_eq!(DiagShift::from_dense(3, &[vec![1, 1], vec![1, 1]], &d).unwrap(), ds);
    }

    #[test]
    fn kind_one_relations() {
        let f = |a1, a2, b1, b2| ShiftDiag::new(3, vec![vec![s(a1), s(a2)], vec![s(b1), s(b2)]]).unwrap();
        let (x, y, z) = (f(2, 3, 5, 7), f(11, 13, 17, 19), f(23, 29, 31, 37));
        let p = shiftdiag_nary_product(&[x.clone(), y.clone(), z.clone()]).unwrap();
        // A1'B1''A1''', A2'B2''A2''', B1'A1''B1''', B2'A2''B2'''
        assert_eq!(val(p.block(0, 0)), C::from(2 * 17 * 23));
        assert_eq!(val(p.block(0, 1)), C::from(3 * 19 * 29));
        assert_eq!(val(p.block(1, 0)), C::from(5 * 11 * 31));
        assert_eq!(val(p.block(1, 1)), C::from(7 * 13 * 37));
        let dense = Matrix::product(&[x.to_dense(), y.to_dense(), z.to_dense()]).unwrap();
        assert_eq!(ShiftDiag::from_dense(3, &[1, 1], &dense).unwrap(), p);
    }

    #[test]
    fn kind_two_relations() {
        let f = |a1, a2, b1, b2| DiagShift::from_blocks(3, vec![vec![s(a1), s(a2)], vec![s(b1), s(b2)]]).unwrap();
        let (x, y, z) = (f(2, 3, 5, 7), f(11, 13, 17, 19), f(23, 29, 31, 37));
        let p = diagshift_nary_product(&[x.clone(), y.clone(), z.clone()]).unwrap();
        let c = p.components();
        // Â1'Â2''Â1''', Â2'Â1''Â2''', B̂1'B̂2''B̂1''', B̂2'B̂1''B̂2'''
        assert_eq!(val(&c[0].blocks()[0]), C::from(2 * 13 * 23));
        assert_eq!(val(&c[0].blocks()[1]), C::from(3 * 11 * 29));
        assert_eq!(val(&c[1].blocks()[0]), C::from(5 * 19 * 31));
        assert_eq!(val(&c[1].blocks()[1]), C::from(7 * 17 * 37));
        let dense = Matrix::product(&[x.to_dense(), y.to_dense(), z.to_dense()]).unwrap();
        assert_eq!(DiagShift::from_dense(3, &[vec![1, 1], vec![1, 1]], &dense).unwrap(), p);
    }

    #[test]
    fn nonsquare_inner_shift_blocks_close() {
        let comp = |v: i64| {
            let b1 = Matrix::new(1, 2, vec![C::from(v), C::from(v + 1)]).unwrap();
            let b2 = Matrix::new(2, 1, vec![C::from(v + 2), C::from(-v)]).unwrap();
            BlockShiftMatrix::from_blocks(3, vec![b1, b2]).unwrap()
        };
        let f = |v| DiagShift::new(vec![comp(v), comp(v + 10)]).unwrap();
        let (x, y, z) = (f(1), f(2), f(3));
        let p = diagshift_nary_product(&[x.clone(), y.clone(), z.clone()]).unwrap();
        let dense = Matrix::product(&[x.to_dense(), y.to_dense(), z.to_dense()]).unwrap();
        assert_eq!(DiagShift::from_dense(3, &x.shift_sizes(), &dense).unwrap(), p);
    }

    #[test]
    fn identity_analogs() {
        let id = ShiftDiag::new(3, vec![vec![Matrix::<C>::identity(2), Matrix::identity(1)]; 2]).unwrap();
        assert_eq!(shiftdiag_nary_product(&[id.clone(), id.clone(), id.clone()]).unwrap(), id);
        let id2 = DiagShift::new(vec![blockshift::nary_identity::<C>(3, 2).unwrap(); 2]).unwrap();
        assert_eq!(diagshift_nary_product(&[id2.clone(), id2.clone(), id2.clone()]).unwrap(), id2);
    }

    #[test]
    fn distinct_patterns() {
        assert!(patterns_distinct(3, &[1, 1]).unwrap());
        assert!(!patterns_distinct(2, &[1]).unwrap());
        assert!(!patterns_distinct(2, &[2, 3]).unwrap());
        assert!(!patterns_distinct(3, &[2]).unwrap());
        assert!(patterns_distinct(4, &[1, 2]).unwrap());
        assert!(patterns_distinct(1, &[1]).is_err());
    }

    #[test]
    fn pmatrix_closure() {
        let p = |base: i64| PMatrix::from_blocks(std::array::from_fn(|i| s(base + i as i64))).unwrap();
        let (a, b, c) = (p(1), p(9), p(-4));
        let r = pmatrix_ternary_product(&a, &b, &c).unwrap();
        let dense = Matrix::product(&[a.to_dense(), b.to_dense(), c.to_dense()]).unwrap();
        assert_eq!(r.to_dense(), dense);
        assert!(a.add(&b).is_ok());
        let zero = PMatrix::from_blocks(std::array::from_fn(|_| Matrix::<C>::zeros(2, 2))).unwrap();
        assert_eq!(pmatrix_ternary_product(&zero, &zero, &zero).unwrap(), zero);
        let sd = ShiftDiag::new(3, vec![vec![s(1), s(2)], vec![s(3), s(4)]]).unwrap();
        let ds = DiagShift::from_blocks(3, vec![vec![s(5), s(6)], vec![s(7), s(8)]]).unwrap();
        let sum = PMatrix::from_parts(&sd, &ds).unwrap();
        assert_eq!(sum.to_dense(), sd.to_dense().add(&ds.to_dense()).unwrap());
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(ShiftDiag::new(3, vec![vec![s(1)], vec![Matrix::<C>::identity(2)]]).is_err());
        assert!(ShiftDiag::<C>::new(3, vec![vec![s(1)]]).is_err());
        let bad = Matrix::<C>::identity(2);
        assert!(ShiftDiag::from_dense(3, &[1], &bad).is_err());
    }
}
