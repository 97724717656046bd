//! Dense row-major matrices over any [`Scalar`] ring, and parity-graded
//! supermatrices over the Grassmann algebra.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{GrassmannElement, Scalar};

#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    entries: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn new(rows: usize, cols: usize, entries: Vec<S>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!(
                "matrix shape {rows}x{cols} must be positive"
            )));
        }
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.entries[k * n + k] = S::one();
        }
        m
    }

    pub fn diagonal(values: Vec<S>) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (k, v) in values.into_iter().enumerate() {
            m.entries[k * n + k] = v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<S> {
        self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(S::is_zero)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Exact product; entry products keep the left-to-right order, so this
    /// is correct over noncommutative scalars.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.entries[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.entries[k * rhs.cols + j];
                    if b.is_zero() {
                        continue;
                    }
                    let slot = &mut out.entries[i * rhs.cols + j];
                    *slot = slot.clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    /// Product without the zero-skipping shortcut; the dense baseline.
    pub fn mul_dense(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.entries[i * self.cols + k];
                for j in 0..rhs.cols {
                    let slot = &mut out.entries[i * rhs.cols + j];
                    *slot = slot.clone() + a.clone() * rhs.entries[k * rhs.cols + j].clone();
                }
            }
        }
        Ok(out)
    }

    /// Left-to-right product of a nonempty chain.
    pub fn product<'a>(chain: impl IntoIterator<Item = &'a Self>) -> Result<Self>
    where
        S: 'a,
    {
        let mut it = chain.into_iter();
        let first = it
            .next()
            .ok_or_else(|| Error::Dimension("empty product".into()))?;
        it.try_fold(first.clone(), |acc, m| acc.mul(m))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, |a, b| a - b)
    }

    fn zip(&self, rhs: &Self, f: impl Fn(S, S) -> S) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(Error::Dimension(format!(
                "shape {}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| f(a.clone(), b.clone()))
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|x| c.clone() * x.clone())
    }

    /// The `h x w` block whose top-left corner is `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Self {
        let mut out = Vec::with_capacity(h * w);
        for r in r0..r0 + h {
            out.extend_from_slice(&self.entries[r * self.cols + c0..r * self.cols + c0 + w]);
        }
        Self {
            rows: h,
            cols: w,
            entries: out,
        }
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self.entries[(r0 + r) * self.cols + c0 + c] = b.entries[r * b.cols + c].clone();
            }
        }
    }

    /// Whether every entry of the `h x w` block at `(r0, c0)` is zero.
    pub fn block_is_zero(&self, r0: usize, c0: usize, h: usize, w: usize) -> bool {
        (r0..r0 + h).all(|r| (c0..c0 + w).all(|c| self.get(r, c).is_zero()))
    }

    pub fn block_diag(blocks: &[Self]) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::Dimension("block_diag of nothing".into()));
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        Ok(out)
    }

    /// Positions of nonzero entries, row-major.
    pub fn support(&self) -> Vec<(usize, usize)> {
        (0..self.rows)
            .flat_map(|r| (0..self.cols).map(move |c| (r, c)))
            .filter(|&(r, c)| !self.get(r, c).is_zero())
            .collect()
    }

    fn require_square(&self, op: &str) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "{op} needs a square matrix, got {}x{}",
                self.rows, self.cols
            )))
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination with row pivoting.
    ///
    /// Refused over noncommutative scalars. When an intermediate pivot is
    /// not a unit (a ring without exact division), matrices up to 4x4 fall
    /// back to cofactor expansion.
    pub fn determinant(&self) -> Result<S> {
        self.require_square("determinant")?;
        if !S::COMMUTATIVE {
            return Err(Error::Unsupported(
                "determinant over noncommutative scalars".into(),
            ));
        }
        match self.bareiss() {
            Ok(d) => Ok(d),
            Err(e) if self.rows <= 4 => self.determinant_laplace().map_err(|_| e),
            Err(e) => Err(e),
        }
    }

    fn bareiss(&self) -> Result<S> {
        let n = self.rows;
        let mut m = self.entries.clone();
        let mut negate = false;
        let mut prev_inv = S::one();
        for k in 0..n.saturating_sub(1) {
            let Some(p) = (k..n).find(|&r| !m[r * n + k].is_zero()) else {
                return Ok(S::zero());
            };
            if p != k {
                for c in 0..n {
                    m.swap(k * n + c, p * n + c);
                }
                negate = !negate;
            }
            let pivot = m[k * n + k].clone();
            for i in k + 1..n {
                let lead = m[i * n + k].clone();
                for j in k + 1..n {
                    let v = m[i * n + j].clone() * pivot.clone() - lead.clone() * m[k * n + j].clone();
                    m[i * n + j] = v * prev_inv.clone();
                }
                m[i * n + k] = S::zero();
            }
            prev_inv = pivot.try_inverse().ok_or_else(|| {
                Error::Unsupported("fraction-free pivot is not a unit".into())
            })?;
        }
        let d = m[n * n - 1].clone();
        Ok(if negate { -d } else { d })
    }

    /// Cofactor expansion along the first row. Exponential; intended for
    /// small matrices and as an independent check of [`Self::determinant`].
    pub fn determinant_laplace(&self) -> Result<S> {
        self.require_square("determinant")?;
        if !S::COMMUTATIVE {
            return Err(Error::Unsupported(
                "determinant over noncommutative scalars".into(),
            ));
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.laplace(&idx, 0))
    }

    fn laplace(&self, cols: &[usize], row: usize) -> S {
        if cols.len() == 1 {
            return self.get(row, cols[0]).clone();
        }
        let mut acc = S::zero();
        for (k, &c) in cols.iter().enumerate() {
            let a = self.get(row, c);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = a.clone() * self.laplace(&rest, row + 1);
            acc = if k % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    /// Exact two-sided inverse by Gauss-Jordan elimination.
    ///
    /// Row operations multiply from the left and pivots are chosen among
    /// units, so the same routine serves fields and the Grassmann algebra
    /// (where a pivot is usable iff its body is nonzero).
    pub fn inverse(&self) -> Result<Self> {
        self.require_square("inverse")?;
        let n = self.rows;
        let mut a = self.entries.clone();
        let mut inv = Self::identity(n).entries;
        for k in 0..n {
            let found = (k..n).find_map(|r| a[r * n + k].try_inverse().map(|i| (r, i)));
            let Some((p, pivot_inv)) = found else {
                return Err(Error::NotInvertible(format!(
                    "no invertible pivot in column {k}"
                )));
            };
            if p != k {
                for c in 0..n {
                    a.swap(k * n + c, p * n + c);
                    inv.swap(k * n + c, p * n + c);
                }
            }
            for c in 0..n {
                a[k * n + c] = pivot_inv.clone() * a[k * n + c].clone();
                inv[k * n + c] = pivot_inv.clone() * inv[k * n + c].clone();
            }
            for r in 0..n {
                if r == k {
                    continue;
                }
                let f = a[r * n + k].clone();
                if f.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let ak = a[k * n + c].clone();
                    let ik = inv[k * n + c].clone();
                    a[r * n + c] = a[r * n + c].clone() - f.clone() * ak;
                    inv[r * n + c] = inv[r * n + c].clone() - f.clone() * ik;
                }
            }
        }
        Self::new(n, n, inv)
    }
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str("; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{:?}", self.entries[r * self.cols + c])?;
            }
        }
        f.write_str("]")
    }
}

/// Square matrix over the Grassmann algebra with a `(p_even | p_odd)` grading.
#[derive(Clone, PartialEq, Debug)]
pub struct SuperMatrix {
    even_dim: usize,
    odd_dim: usize,
    matrix: Matrix<GrassmannElement>,
}

impl SuperMatrix {
    pub fn new(even_dim: usize, odd_dim: usize, matrix: Matrix<GrassmannElement>) -> Result<Self> {
        let d = even_dim + odd_dim;
        if matrix.shape() != (d, d) {
            return Err(Error::Dimension(format!(
                "({even_dim}|{odd_dim}) grading needs a {d}x{d} matrix, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(Self {
            even_dim,
            odd_dim,
            matrix,
        })
    }

    pub fn even_dim(&self) -> usize {
        self.even_dim
    }

    pub fn odd_dim(&self) -> usize {
        self.odd_dim
    }

    pub fn matrix(&self) -> &Matrix<GrassmannElement> {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix<GrassmannElement> {
        self.matrix
    }

    /// Standard form: even entries in the diagonal blocks, odd entries in
    /// the off-diagonal blocks.
    pub fn is_standard(&self) -> bool {
        let d = self.even_dim + self.odd_dim;
        (0..d).all(|r| {
            (0..d).all(|c| {
                let x = self.matrix.get(r, c);
                if (r < self.even_dim) == (c < self.even_dim) {
                    x.is_even()
                } else {
                    x.is_odd()
                }
            })
        })
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.same_grading(rhs)?;
        Self::new(self.even_dim, self.odd_dim, self.matrix.mul(&rhs.matrix)?)
    }

    pub fn inverse(&self) -> Result<Self> {
        Self::new(self.even_dim, self.odd_dim, self.matrix.inverse()?)
    }

    fn same_grading(&self, rhs: &Self) -> Result<()> {
        if (self.even_dim, self.odd_dim) != (rhs.even_dim, rhs.odd_dim) {
            return Err(Error::Dimension(format!(
                "grading ({}|{}) vs ({}|{})",
                self.even_dim, self.odd_dim, rhs.even_dim, rhs.odd_dim
            )));
        }
        Ok(())
    }
}

pub fn supermatrix_check_standard(sm: &SuperMatrix) -> bool {
    sm.is_standard()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ComplexRational as C;

    fn m(rows: &[&[i64]]) -> Matrix<C> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| C::from(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn g(s: &str) -> GrassmannElement {
        GrassmannElement::parse(s, 4).unwrap()
    }

    #[test]
    fn identity_and_swap() {
        let a = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(Matrix::identity(2).mul(&a).unwrap(), a);
        let swap = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(swap.mul(&swap).unwrap(), Matrix::identity(2));
        assert_eq!(swap.inverse().unwrap(), swap);
        assert!(a.mul(&m(&[&[1, 2, 3]])).is_err());
    }

    #[test]
    fn determinants() {
        let a = m(&[&[5, 7], &[2, 3]]);
        assert_eq!(a.determinant().unwrap(), C::from(5 * 3 - 7 * 2));
        assert_eq!(Matrix::<C>::identity(4).determinant().unwrap(), C::from(1));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).determinant().unwrap(), C::from(0));
        let b = m(&[&[0, 2, 1], &[3, 0, 4], &[1, 1, 0]]);
        assert_eq!(b.determinant().unwrap(), b.determinant_laplace().unwrap());
    }

    #[test]
    fn determinant_refused_over_grassmann() {
        let a = Matrix::<GrassmannElement>::identity(2);
        assert!(matches!(a.determinant(), Err(Error::Unsupported(_))));
    }

    #[test]
    fn diagonal_inverse() {
        let d = Matrix::diagonal(vec![C::from(2), C::from(3)]);
        assert_eq!(
            d.inverse().unwrap(),
            Matrix::diagonal(vec![C::ratio(1, 2), C::ratio(1, 3)])
        );
        assert!(matches!(
            m(&[&[1, 2], &[2, 4]]).inverse(),
            Err(Error::NotInvertible(_))
        ));
    }

    #[test]
    fn supermatrix_inverse_multiplies_back() {
        let b = Matrix::from_rows(vec![vec![g("2"), g("t1")], vec![g("t2"), g("3")]]).unwrap();
        let inv = b.inverse().unwrap();
        assert_eq!(b.mul(&inv).unwrap(), Matrix::identity(2));
        assert_eq!(inv.mul(&b).unwrap(), Matrix::identity(2));
    }

    #[test]
    fn standard_form() {
        let good = Matrix::from_rows(vec![vec![g("2"), g("t1")], vec![g("t2"), g("3")]]).unwrap();
        assert!(SuperMatrix::new(1, 1, good).unwrap().is_standard());
        let bad = Matrix::from_rows(vec![vec![g("t1"), g("2")], vec![g("3"), g("t2")]]).unwrap();
        assert!(!supermatrix_check_standard(&SuperMatrix::new(1, 1, bad).unwrap()));
        let zero = Matrix::<GrassmannElement>::zeros(3, 3);
        assert!(SuperMatrix::new(2, 1, zero).unwrap().is_standard());
        assert!(SuperMatrix::new(2, 2, Matrix::zeros(3, 3)).is_err());
    }
}
