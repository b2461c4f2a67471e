//! Linear-code analysis: minimum distance, separation vectors, and the greedy
//! optimal generator matrix of a UEP code.

use crate::algebra::{combine_rows, span_contains_raw, FieldSpec, GfElement, Matrix};
use crate::error::{Error, Result};

/// A linear code given by a full-row-rank generator matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    generator: Matrix,
}

/// Per-data-symbol separation s_1..s_k of an encoder.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeparationVector(pub Vec<u64>);

impl SeparationVector {
    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Componentwise `self >= demand`.
    pub fn meets(&self, demand: &[u64]) -> bool {
        self.0.len() == demand.len() && self.0.iter().zip(demand).all(|(s, t)| s >= t)
    }

    /// Values sorted nonincreasingly.
    pub fn sorted(&self) -> Vec<u64> {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }
}

impl LinearCode {
    pub fn new(generator: Matrix) -> Result<Self> {
        generator.require_full_rank()?;
        Ok(LinearCode { generator })
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn field(&self) -> &FieldSpec {
        self.generator.field()
    }

    pub fn dimension(&self) -> usize {
        self.generator.rows()
    }

    pub fn length(&self) -> usize {
        self.generator.cols()
    }

    /// All q^k - 1 nonzero codewords, in canonical message order.
    pub fn nonzero_codewords(&self) -> Vec<Vec<GfElement>> {
        let f = self.field();
        f.nonzero_vectors(self.dimension())
            .map(|h| combine_rows(f, &self.generator, &h))
            .collect()
    }

    /// Minimum Hamming weight over the nonzero codewords.
    pub fn min_distance(&self) -> u64 {
        self.nonzero_codewords().iter().map(|c| weight(c)).min().unwrap_or(0)
    }

    pub fn separation_vector(&self) -> SeparationVector {
        separation_of_matrix(&self.generator)
    }

    /// Greedy optimal generator: a minimum-weight codeword, then repeatedly a
    /// minimum-weight codeword outside the span of the rows chosen so far.
    /// Ties go to the lexicographically smallest word. The rows are returned in
    /// reverse order of selection so the separation vector is nonincreasing.
    pub fn optimal_generator(&self) -> Matrix {
        let f = self.field();
        let k = self.dimension();
        let mut words = self.nonzero_codewords();
        words.sort_by(|a, b| weight(a).cmp(&weight(b)).then_with(|| a.cmp(b)));

        let mut chosen: Vec<Vec<GfElement>> = Vec::with_capacity(k);
        for w in words {
            if chosen.len() == k {
                break;
            }
            if !span_contains_raw(f, &chosen, &w) {
                chosen.push(w);
            }
        }
        chosen.reverse();
        let entries = chosen.into_iter().flatten().collect();
        Matrix::new(f, k, self.length(), entries).expect("rows are codewords of the same length")
    }
}

fn weight(c: &[GfElement]) -> u64 {
    c.iter().filter(|x| !x.is_zero()).count() as u64
}

/// s_j = min { w(h^T G) : h_j != 0 } for every row j of `g`.
///
/// No rank condition is imposed: for a rank-deficient matrix some entries may
/// be 0. For a full-rank generator this is the separation vector of the encoder.
pub fn separation_of_matrix(g: &Matrix) -> SeparationVector {
    let f = g.field();
    let k = g.rows();
    let mut s = vec![u64::MAX; k];
    for h in f.nonzero_vectors(k) {
        let w = weight(&combine_rows(f, g, &h));
        for (sj, hj) in s.iter_mut().zip(&h) {
            if !hj.is_zero() && w < *sj {
                *sj = w;
            }
        }
    }
    SeparationVector(s)
}

/// True iff, after sorting both nonincreasingly, `a` is componentwise >= `b`.
pub fn sorted_dominates(a: &SeparationVector, b: &SeparationVector) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(a.sorted().iter().zip(b.sorted()).all(|(x, y)| *x >= y))
}
