//! JSON forms of matrices, block-shift matrices, decompositions and tuples.
//!
//! Scalars are stored as their canonical text, so every form round-trips
//! exactly.

use serde::{Deserialize, Serialize};

use crate::blockshift::BlockShiftMatrix;
use crate::decomposition::{DiagShift, PMatrix, ShiftDiag};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, SuperMatrix};
use crate::scalar::{Domain, GrassmannElement, TextScalar};
use crate::shiftdeform::{AdditiveGroup, ShiftTuple};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<[usize; 2]>,
}

impl MatrixJson {
    pub fn from_matrix<S: TextScalar>(m: &Matrix<S>) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries().iter().map(TextScalar::to_text).collect(),
            grading: None,
        }
    }

    pub fn from_supermatrix(sm: &SuperMatrix) -> Self {
        Self {
            grading: Some([sm.even_dim(), sm.odd_dim()]),
            ..Self::from_matrix(sm.matrix())
        }
    }

    pub fn to_matrix<S: TextScalar>(&self, domain: &Domain) -> Result<Matrix<S>> {
        if self.entries.len() != self.rows * self.cols {
            return Err(Error::Dimension(format!(
                "{}x{} matrix needs {} entries, found {}",
                self.rows,
                self.cols,
                self.rows * self.cols,
                self.entries.len()
            )));
        }
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(k, t)| {
                S::parse_text(t, domain).map_err(|e| {
                    Error::Parse(format!(
                        "entry ({}, {}): {e}",
                        k / self.cols.max(1) + 1,
                        k % self.cols.max(1) + 1
                    ))
                })
            })
            .collect::<Result<_>>()?;
        Matrix::new(self.rows, self.cols, entries)
    }

    pub fn to_supermatrix(&self, generators: u8) -> Result<SuperMatrix> {
        let [even, odd] = self
            .grading
            .ok_or_else(|| Error::Parse("supermatrix is missing \"grading\"".into()))?;
        let m = self.to_matrix::<GrassmannElement>(&Domain::Grassmann(generators))?;
        SuperMatrix::new(even, odd, m)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockShiftJson {
    pub arity: usize,
    pub dims: Vec<usize>,
    pub blocks: Vec<MatrixJson>,
}

impl BlockShiftJson {
    pub fn from_blockshift<S: TextScalar>(q: &BlockShiftMatrix<S>) -> Self {
        Self {
            arity: q.arity(),
            dims: q.dims(),
            blocks: q.blocks().iter().map(MatrixJson::from_matrix).collect(),
        }
    }

    pub fn to_blockshift<S: TextScalar>(&self, domain: &Domain) -> Result<BlockShiftMatrix<S>> {
        let blocks = self
            .blocks
            .iter()
            .enumerate()
            .map(|(i, b)| {
                b.to_matrix(domain)
                    .map_err(|e| Error::Parse(format!("block {}: {e}", i + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        let q = BlockShiftMatrix::from_blocks(self.arity, blocks)?;
        if q.dims() != self.dims {
            return Err(Error::Dimension(format!(
                "declared dims {:?} contradict block shapes {:?}",
                self.dims,
                q.dims()
            )));
        }
        Ok(q)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShiftDiagJson {
    pub arity: usize,
    pub sizes: Vec<usize>,
    /// `blocks[i][j]` is the `j`-th diagonal component of shift block `i`.
    pub blocks: Vec<Vec<MatrixJson>>,
}

impl ShiftDiagJson {
    pub fn from_value<S: TextScalar>(x: &ShiftDiag<S>) -> Self {
        Self {
            arity: x.arity(),
            sizes: x.sizes().to_vec(),
            blocks: x
                .blocks()
                .iter()
                .map(|row| row.iter().map(MatrixJson::from_matrix).collect())
                .collect(),
        }
    }

    pub fn to_value<S: TextScalar>(&self, domain: &Domain) -> Result<ShiftDiag<S>> {
        let blocks = self
            .blocks
            .iter()
            .map(|row| row.iter().map(|b| b.to_matrix(domain)).collect())
            .collect::<Result<_>>()?;
        let x = ShiftDiag::new(self.arity, blocks)?;
        if x.sizes() != self.sizes {
            return Err(Error::Dimension(format!(
                "declared sizes {:?} contradict block shapes {:?}",
                self.sizes,
                x.sizes()
            )));
        }
        Ok(x)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagShiftJson {
    pub arity: usize,
    pub components: Vec<BlockShiftJson>,
}

impl DiagShiftJson {
    pub fn from_value<S: TextScalar>(x: &DiagShift<S>) -> Self {
        Self {
            arity: x.arity(),
            components: x.components().iter().map(BlockShiftJson::from_blockshift).collect(),
        }
    }

    pub fn to_value<S: TextScalar>(&self, domain: &Domain) -> Result<DiagShift<S>> {
        let components = self
            .components
            .iter()
            .map(|c| c.to_blockshift(domain))
            .collect::<Result<Vec<_>>>()?;
        let x = DiagShift::new(components)?;
        if x.arity() != self.arity {
            return Err(Error::Dimension(format!(
                "declared arity {} contradicts component arity {}",
                self.arity,
                x.arity()
            )));
        }
        Ok(x)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PMatrixJson {
    pub a1: MatrixJson,
    pub a2: MatrixJson,
    pub b1: MatrixJson,
    pub b2: MatrixJson,
    pub a1_hat: MatrixJson,
    pub a2_hat: MatrixJson,
    pub b1_hat: MatrixJson,
    pub b2_hat: MatrixJson,
}

impl PMatrixJson {
    pub fn from_value<S: TextScalar>(p: &PMatrix<S>) -> Self {
        let m = MatrixJson::from_matrix;
        Self {
            a1: m(&p.a1),
            a2: m(&p.a2),
            b1: m(&p.b1),
            b2: m(&p.b2),
            a1_hat: m(&p.a1_hat),
            a2_hat: m(&p.a2_hat),
            b1_hat: m(&p.b1_hat),
            b2_hat: m(&p.b2_hat),
        }
    }

    pub fn to_value<S: TextScalar>(&self, domain: &Domain) -> Result<PMatrix<S>> {
        PMatrix::from_blocks([
            self.a1.to_matrix(domain)?,
            self.a2.to_matrix(domain)?,
            self.b1.to_matrix(domain)?,
            self.b2.to_matrix(domain)?,
            self.a1_hat.to_matrix(domain)?,
            self.a2_hat.to_matrix(domain)?,
            self.b1_hat.to_matrix(domain)?,
            self.b2_hat.to_matrix(domain)?,
        ])
    }
}

pub fn tuple_to_json<A: AdditiveGroup>(t: &ShiftTuple<A>) -> Vec<String> {
    t.to_texts()
}

pub fn tuples_from_json<A: AdditiveGroup>(items: &[Vec<String>]) -> Result<Vec<ShiftTuple<A>>> {
    items
        .iter()
        .enumerate()
        .map(|(i, t)| ShiftTuple::parse(t).map_err(|e| Error::Parse(format!("tuple {}: {e}", i + 1))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blockshift::polyadize;
    use crate::scalar::ComplexRational as C;

    #[test]
    fn blockshift_round_trip() {
        let b = |v: &[&str]| {
            Matrix::new(2, 2, v.iter().map(|t| t.parse::<C>().unwrap()).collect()).unwrap()
        };
        let q = polyadize(3, vec![b(&["1/2", "i", "-3", "0"]), b(&["2+1/3*i", "0", "0", "7"])]).unwrap();
        let json = serde_json::to_string(&BlockShiftJson::from_blockshift(&q)).unwrap();
        let back: BlockShiftJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_blockshift::<C>(&Domain::ComplexRational).unwrap(), q);
        assert!(back.to_blockshift::<C>(&Domain::Rational).is_err());
    }

    #[test]
    fn rejects_contradictions() {
        let bad = r#"{"arity":3,"dims":[1,2],"blocks":[{"rows":1,"cols":1,"entries":["1"]},{"rows":1,"cols":1,"entries":["2"]}]}"#;
        let j: BlockShiftJson = serde_json::from_str(bad).unwrap();
        assert!(j.to_blockshift::<C>(&Domain::Rational).is_err());
        let unknown = r#"{"rows":1,"cols":1,"entries":["1"],"extra":0}"#;
        assert!(serde_json::from_str::<MatrixJson>(unknown).is_err());
        let short = MatrixJson {
            rows: 2,
            cols: 2,
            entries: vec!["1".into()],
            grading: None,
        };
        assert!(short.to_matrix::<C>(&Domain::Rational).is_err());
    }

    #[test]
    fn supermatrix_round_trip() {
        let g = |t: &str| GrassmannElement::parse(t, 4).unwrap();
        let m = Matrix::new(2, 2, vec![g("2"), g("t1"), g("t2"), g("3")]).unwrap();
        let sm = SuperMatrix::new(1, 1, m).unwrap();
        let j = MatrixJson::from_supermatrix(&sm);
        assert_eq!(j.grading, Some([1, 1]));
        assert_eq!(j.to_supermatrix(4).unwrap(), sm);
    }
}
