//! Exhaustive constructions at desk scale.
//!
//! Candidates are multisets of nonzero columns, enumerated as nondecreasing
//! sequences of canonical column indices in lexicographic order. Column order
//! and zero columns do not affect recovery sets or weights, so this covers
//! every matrix up to those symmetries. Lengths are scanned upward from the
//! Griesmer floor and the first accepting multiset is reported.

use rayon::prelude::*;

use crate::algebra::{FieldSpec, GfElement, Matrix};
use crate::bounds::griesmer_sum;
use crate::error::{Error, Result};
use crate::pir::{verify_t_pir, DemandVector};

/// Candidates are checked in parallel in blocks of this many.
const CHUNK: usize = 2048;

/// Limits for [`shortest_uep_code`].
pub const UEP_MAX_SPACE: usize = 16;
pub const UEP_MAX_LENGTH: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchStatus {
    Found,
    NoneWithinBound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub status: SearchStatus,
    pub length: Option<usize>,
    pub witness: Option<Matrix>,
    /// Candidates examined, counting every multiset of every shorter length and
    /// those up to and including the witness at the final length.
    pub examined: u64,
}

/// Nondecreasing sequences of length `len` over `0..symbols`, lexicographically.
#[derive(Clone, Debug)]
pub struct Multisets {
    symbols: usize,
    next: Option<Vec<usize>>,
}

impl Multisets {
    pub fn new(symbols: usize, len: usize) -> Self {
        let next = (len == 0 || symbols > 0).then(|| vec![0; len]);
        Multisets { symbols, next }
    }
}

impl Iterator for Multisets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        if let Some(i) = succ.iter().rposition(|&x| x + 1 < self.symbols) {
            let v = succ[i] + 1;
            succ[i..].iter_mut().for_each(|x| *x = v);
            self.next = Some(succ);
        }
        Some(cur)
    }
}

fn columns_matrix(columns: &[Vec<GfElement>], k: usize, field: &FieldSpec, picks: &[usize]) -> Matrix {
    let cols: Vec<&[GfElement]> = picks.iter().map(|&i| columns[i].as_slice()).collect();
    Matrix::from_columns(field, k, &cols).expect("columns have length k")
}

/// Scans `Multisets` of each length in `lengths` and returns the first accepted
/// candidate (lexicographically, independent of scheduling) with its length and
/// the running examined count.
fn first_accepted<F>(
    symbols: usize,
    lengths: impl Iterator<Item = usize>,
    accept: F,
) -> (Option<(usize, Vec<usize>)>, u64)
where
    F: Fn(&[usize]) -> bool + Sync,
{
    let mut examined = 0u64;
    for n in lengths {
        let mut it = Multisets::new(symbols, n);
        loop {
            let chunk: Vec<Vec<usize>> = it.by_ref().take(CHUNK).collect();
            if chunk.is_empty() {
                break;
            }
            if let Some(pos) = chunk.par_iter().position_first(|c| accept(c)) {
                examined += pos as u64 + 1;
                return (Some((n, chunk[pos].clone())), examined);
            }
            examined += chunk.len() as u64;
        }
    }
    (None, examined)
}

/// Shortest k x n matrix that is T-PIR, searching n from the Griesmer floor up
/// to `n_max`.
pub fn shortest_udd_pir(demand: &DemandVector, field: &FieldSpec, n_max: usize) -> Result<SearchResult> {
    let k = demand.len();
    let floor = griesmer_sum(demand, field.q());
    if (n_max as u64) < floor {
        return Err(Error::BoundBelowFloor { n_max, floor });
    }
    let columns: Vec<Vec<GfElement>> = field.nonzero_vectors(k).collect();
    // an encoder must be injective, so n >= k as well
    let start = (floor as usize).max(k);
    let accept = |picks: &[usize]| {
        let g = columns_matrix(&columns, k, field, picks);
        g.has_full_row_rank() && verify_t_pir(&g, demand).is_ok_and(|c| c.is_satisfied())
    };
    let (hit, examined) = first_accepted(columns.len(), start..=n_max, accept);
    Ok(match hit {
        Some((n, picks)) => SearchResult {
            status: SearchStatus::Found,
            length: Some(n),
            witness: Some(columns_matrix(&columns, k, field, &picks)),
            examined,
        },
        None => SearchResult {
            status: SearchStatus::NoneWithinBound,
            length: None,
            witness: None,
            examined,
        },
    })
}

/// Block-diagonal stack of repetition codes, block j of length t_j.
pub fn concatenation_baseline(demand: &DemandVector, field: &FieldSpec) -> Result<(usize, Matrix)> {
    let k = demand.len();
    let mut columns = Vec::new();
    for (j, &t) in demand.values().iter().enumerate() {
        let mut e = vec![GfElement::ZERO; k];
        e[j] = GfElement::ONE;
        for _ in 0..t {
            columns.push(e.clone());
        }
    }
    let g = Matrix::from_columns(field, k, &columns)?;
    Ok((columns.len(), g))
}

/// Shortest k x n matrix, n <= `n_max`, whose separation
/// min { w(h^T G) : h_j != 0 } is at least t_j for every j. Separations are
/// evaluated from column multiplicities directly, without the ILP machinery.
/// No rank condition is imposed, so the witness may be rank deficient when
/// some t_j = 0.
pub fn shortest_uep_code(demand: &DemandVector, field: &FieldSpec, n_max: usize) -> Result<SearchResult> {
    let k = demand.len();
    let space = field.space_size(k);
    if space > UEP_MAX_SPACE || n_max > UEP_MAX_LENGTH {
        return Err(Error::ScaleExceeded {
            what: format!("q^k = {space}, n_max = {n_max}"),
        });
    }
    let columns: Vec<Vec<GfElement>> = field.nonzero_vectors(k).collect();
    // hits[m][c]: message m has a nonzero inner product with column c
    let hits: Vec<Vec<bool>> = columns
        .iter()
        .map(|h| columns.iter().map(|c| !field.dot(h, c).is_zero()).collect())
        .collect();
    let t = demand.values();
    let accept = |picks: &[usize]| {
        let mut sep = vec![u64::MAX; k];
        for (h, row) in columns.iter().zip(&hits) {
            let w = picks.iter().filter(|&&c| row[c]).count() as u64;
            for (s, x) in sep.iter_mut().zip(h) {
                if !x.is_zero() && w < *s {
                    *s = w;
                }
            }
        }
        sep.iter().zip(t).all(|(s, t)| s >= t)
    };
    let (hit, examined) = first_accepted(columns.len(), 0..=n_max, accept);
    Ok(match hit {
        Some((n, picks)) => SearchResult {
            status: SearchStatus::Found,
            length: Some(n),
            witness: Some(columns_matrix(&columns, k, field, &picks)),
            examined,
        },
        None => SearchResult {
            status: SearchStatus::NoneWithinBound,
            length: None,
            witness: None,
            examined,
        },
    })
}

/// Length of [`shortest_uep_code`], or `BoundExceeded`.
pub fn shortest_uep_bruteforce(demand: &DemandVector, field: &FieldSpec, n_max: usize) -> Result<usize> {
    match shortest_uep_code(demand, field, n_max)?.length {
        Some(n) => Ok(n),
        None => Err(Error::BoundExceeded { n_max }),
    }
}
