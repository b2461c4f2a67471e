//! Dense vectors and matrices over a [`FieldSpec`].

use std::fmt;

use super::field::{FieldSpec, GfElement};
use crate::error::{Error, Result};

/// A vector over GF(q).
#[derive(Clone, PartialEq, Eq)]
pub struct GfVector {
    field: FieldSpec,
    entries: Vec<GfElement>,
}

impl GfVector {
    pub fn new(field: &FieldSpec, entries: Vec<GfElement>) -> Result<Self> {
        if let Some(bad) = entries.iter().find(|&&x| !field.contains(x)) {
            return Err(Error::InvalidElement {
                value: bad.value(),
                q: field.q(),
            });
        }
        Ok(GfVector {
            field: field.clone(),
            entries,
        })
    }

    pub fn from_values(field: &FieldSpec, values: &[u32]) -> Result<Self> {
        let entries = values.iter().map(|&v| field.element(v)).collect::<Result<Vec<_>>>()?;
        Ok(GfVector {
            field: field.clone(),
            entries,
        })
    }

    pub fn zero(field: &FieldSpec, len: usize) -> Self {
        GfVector {
            field: field.clone(),
            entries: vec![GfElement::ZERO; len],
        }
    }

    /// The unit vector e_j (0-based `j`).
    pub fn unit(field: &FieldSpec, len: usize, j: usize) -> Self {
        let mut entries = vec![GfElement::ZERO; len];
        entries[j] = GfElement::ONE;
        GfVector {
            field: field.clone(),
            entries,
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[GfElement] {
        &self.entries
    }

    pub fn values(&self) -> Vec<u32> {
        self.entries.iter().map(|x| x.value()).collect()
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.entries.iter().filter(|x| !x.is_zero()).count()
    }

    /// Hamming distance to another vector of the same length.
    pub fn distance(&self, other: &GfVector) -> Result<usize> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(self.entries.iter().zip(&other.entries).filter(|(a, b)| a != b).count())
    }
}

impl fmt::Debug for GfVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.values())
    }
}

/// A k x n matrix over GF(q), row-major. Columns are storage positions.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<GfElement>,
}

/// Reduced row-echelon form of a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    /// 0-based pivot columns, increasing.
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn new(field: &FieldSpec, rows: usize, cols: usize, entries: Vec<GfElement>) -> Result<Self> {
        if rows == 0 {
            return Err(Error::NoRows);
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        if let Some(bad) = entries.iter().find(|&&x| !field.contains(x)) {
            return Err(Error::InvalidElement {
                value: bad.value(),
                q: field.q(),
            });
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from rows of encoded element values.
    pub fn from_rows<R: AsRef<[u32]>>(field: &FieldSpec, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            for &v in r {
                entries.push(field.element(v)?);
            }
        }
        Matrix::new(field, rows.len(), cols, entries)
    }

    /// Builds a `k x columns.len()` matrix from column vectors.
    pub fn from_columns<C: AsRef<[GfElement]>>(field: &FieldSpec, k: usize, columns: &[C]) -> Result<Self> {
        let n = columns.len();
        let mut entries = vec![GfElement::ZERO; k * n];
        for (j, c) in columns.iter().enumerate() {
            let c = c.as_ref();
            if c.len() != k {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    found: c.len(),
                });
            }
            for (i, &x) in c.iter().enumerate() {
                entries[i * n + j] = x;
            }
        }
        Matrix::new(field, k, n, entries)
    }

    pub fn identity(field: &FieldSpec, k: usize) -> Result<Self> {
        let mut entries = vec![GfElement::ZERO; k * k];
        for i in 0..k {
            entries[i * k + i] = GfElement::ONE;
        }
        Matrix::new(field, k, k, entries)
    }

    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Result<Self> {
        Matrix::new(field, rows, cols, vec![GfElement::ZERO; rows * cols])
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> GfElement {
        self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[GfElement] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<GfElement> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<GfElement>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    /// Rows as encoded values, for display and serialization.
    pub fn row_values(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|x| x.value()).collect())
            .collect()
    }

    /// A new matrix whose row `i` is row `order[i]` of `self`.
    pub fn permute_rows(&self, order: &[usize]) -> Result<Matrix> {
        if order.len() != self.rows {
            return Err(Error::LengthMismatch {
                left: order.len(),
                right: self.rows,
            });
        }
        let mut entries = Vec::with_capacity(self.entries.len());
        for &r in order {
            if r >= self.rows {
                return Err(Error::IndexOutOfRange {
                    index: r,
                    limit: self.rows,
                });
            }
            entries.extend_from_slice(self.row(r));
        }
        Matrix::new(&self.field, self.rows, self.cols, entries)
    }

    /// A new matrix with `column` appended on the right.
    pub fn with_column(&self, column: &[GfElement]) -> Result<Matrix> {
        let mut cols = self.columns();
        cols.push(column.to_vec());
        Matrix::from_columns(&self.field, self.rows, &cols)
    }

    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut a = self.entries.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    a.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(a[r * cols + c]).expect("pivot is nonzero");
            for j in 0..cols {
                a[r * cols + j] = f.mul(a[r * cols + j], inv);
            }
            for i in 0..rows {
                let factor = a[i * cols + c];
                if i == r || factor.is_zero() {
                    continue;
                }
                for j in 0..cols {
                    let t = f.mul(factor, a[r * cols + j]);
                    a[i * cols + j] = f.sub(a[i * cols + j], t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: Matrix {
                field: f.clone(),
                rows,
                cols,
                entries: a,
            },
            rank: pivots.len(),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        rank_of_columns(&self.field, self.rows, &self.columns())
    }

    pub fn has_full_row_rank(&self) -> bool {
        self.rank() == self.rows
    }

    /// Errors with [`Error::RankDeficient`] unless the rows are independent.
    pub fn require_full_rank(&self) -> Result<()> {
        let rank = self.rank();
        if rank == self.rows {
            Ok(())
        } else {
            Err(Error::RankDeficient { rank, k: self.rows })
        }
    }

    /// Whether `target` lies in the span of the selected columns.
    pub fn span_contains(&self, columns: &[usize], target: &GfVector) -> Result<bool> {
        if target.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: target.len(),
            });
        }
        if target.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        let mut cols = Vec::with_capacity(columns.len());
        for &c in columns {
            if c >= self.cols {
                return Err(Error::IndexOutOfRange {
                    index: c,
                    limit: self.cols,
                });
            }
            cols.push(self.column(c));
        }
        Ok(span_contains_raw(&self.field, &cols, target.entries()))
    }

    /// The codeword h^T M and its Hamming weight.
    pub fn row_combination(&self, h: &GfVector) -> Result<(GfVector, usize)> {
        if h.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: h.len(),
            });
        }
        if h.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        let c = combine_rows(&self.field, self, h.entries());
        let word = GfVector {
            field: self.field.clone(),
            entries: c,
        };
        let w = word.weight();
        Ok((word, w))
    }
}

/// h^T M without validation.
pub(crate) fn combine_rows(f: &FieldSpec, m: &Matrix, h: &[GfElement]) -> Vec<GfElement> {
    let mut out = vec![GfElement::ZERO; m.cols];
    for (r, &coef) in h.iter().enumerate() {
        if coef.is_zero() {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(m.row(r)) {
            *o = f.add(*o, f.mul(coef, x));
        }
    }
    out
}

/// Rank of the k x |columns| matrix with the given columns.
pub(crate) fn rank_of_columns<C: AsRef<[GfElement]>>(f: &FieldSpec, k: usize, columns: &[C]) -> usize {
    // eliminate with columns as rows; rank is transpose-invariant
    let mut basis: Vec<(usize, Vec<GfElement>)> = Vec::new();
    for c in columns {
        if let Some(v) = reduce_against(f, &basis, c.as_ref()) {
            insert_basis(f, &mut basis, v);
            if basis.len() == k {
                break;
            }
        }
    }
    basis.len()
}

/// Reduces `v` against an echelon basis of (pivot, normalized row) pairs and
/// returns the residue if it is nonzero.
fn reduce_against(f: &FieldSpec, basis: &[(usize, Vec<GfElement>)], v: &[GfElement]) -> Option<Vec<GfElement>> {
    let mut v = v.to_vec();
    for (p, b) in basis {
        let factor = v[*p];
        if !factor.is_zero() {
            for (x, &y) in v.iter_mut().zip(b) {
                *x = f.sub(*x, f.mul(factor, y));
            }
        }
    }
    v.iter().any(|x| !x.is_zero()).then_some(v)
}

fn insert_basis(f: &FieldSpec, basis: &mut Vec<(usize, Vec<GfElement>)>, mut v: Vec<GfElement>) -> bool {
    let Some(p) = v.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    let inv = f.inv(v[p]).expect("nonzero");
    for x in v.iter_mut() {
        *x = f.mul(*x, inv);
    }
    basis.push((p, v));
    true
}

/// Whether `target` is in the span of `columns` (each of length k).
pub(crate) fn span_contains_raw<C: AsRef<[GfElement]>>(f: &FieldSpec, columns: &[C], target: &[GfElement]) -> bool {
    let mut basis: Vec<(usize, Vec<GfElement>)> = Vec::new();
    for c in columns {
        if let Some(v) = reduce_against(f, &basis, c.as_ref()) {
            insert_basis(f, &mut basis, v);
        }
    }
    reduce_against(f, &basis, target).is_none()
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix over {} ({}x{})", self.field, self.rows, self.cols)?;
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", line.join(" "))?;
        }
        Ok(())
    }
}
