//! Recovery sets, exact maximum disjoint packings, and T-PIR certification for
//! linear encoders.
//!
//! A position set I recovers data symbol j exactly when the unit vector e_j lies
//! in the span of the generator columns indexed by I. Packings are searched
//! over inclusion-minimal recovery sets only; any disjoint family of recovery
//! sets shrinks to a disjoint family of minimal ones, so the optimum is the same.

use rayon::prelude::*;

use crate::algebra::{span_contains_raw, GfElement, Matrix};
use crate::error::{Error, Result};

/// Position sets are bitmasks internally.
pub const MAX_COLUMNS: usize = 64;

/// Per-symbol demands t_1 >= t_2 >= ... >= t_k >= 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DemandVector(Vec<u64>);

impl DemandVector {
    pub fn new(values: Vec<u64>) -> Result<Self> {
        if let Some(i) = values.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::DemandNotSorted { position: i + 2 });
        }
        Ok(DemandVector(values))
    }

    /// Sorts arbitrary per-symbol levels nonincreasingly. Returns the demand and
    /// the order in which the original symbols appear (stable for ties), so that
    /// `Matrix::permute_rows(&order)` brings a matrix into matching row order.
    pub fn sorted_from(levels: &[u64]) -> (DemandVector, Vec<usize>) {
        let mut order: Vec<usize> = (0..levels.len()).collect();
        order.sort_by(|&a, &b| levels[b].cmp(&levels[a]));
        let values = order.iter().map(|&i| levels[i]).collect();
        (DemandVector(values), order)
    }

    pub fn zeros(k: usize) -> Self {
        DemandVector(vec![0; k])
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// t_1, or 0 for an empty vector.
    pub fn max(&self) -> u64 {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

/// A set of storage positions (0-based) from which data symbol `symbol`
/// (0-based) can be recomputed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RecoverySet {
    pub symbol: usize,
    pub positions: Vec<usize>,
    /// No proper subset is a recovery set.
    pub minimal: bool,
}

impl RecoverySet {
    fn mask(&self) -> u64 {
        self.positions.iter().fold(0, |m, &p| m | 1 << p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Satisfied,
    /// The first symbol (0-based) whose demand is not met, with its exact
    /// maximum number of disjoint recovery sets.
    Refuted {
        symbol: usize,
        maximum: u64,
    },
}

/// Witness object for a T-PIR claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PirCertificate {
    /// Disjoint recovery sets found per symbol. Symbols after a refuted one are
    /// left empty.
    pub witnesses: Vec<Vec<RecoverySet>>,
    pub verdict: Verdict,
}

impl PirCertificate {
    pub fn is_satisfied(&self) -> bool {
        self.verdict == Verdict::Satisfied
    }
}

fn check_input(g: &Matrix, j: Option<usize>) -> Result<()> {
    if g.cols() > MAX_COLUMNS {
        return Err(Error::TooManyColumns { limit: MAX_COLUMNS });
    }
    if let Some(j) = j {
        if j >= g.rows() {
            return Err(Error::IndexOutOfRange {
                index: j,
                limit: g.rows(),
            });
        }
    }
    g.require_full_rank()
}

/// Calls `visit` on every `size`-subset of `pool` in lexicographic order.
fn for_each_combination(pool: &[usize], size: usize, mut visit: impl FnMut(&[usize])) {
    if size > pool.len() {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    let mut picked = vec![0; size];
    loop {
        for (p, &i) in picked.iter_mut().zip(&idx) {
            *p = pool[i];
        }
        visit(&picked);
        // advance to the next combination
        let mut i = size;
        while i > 0 && idx[i - 1] == i - 1 + pool.len() - size {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for t in i..size {
            idx[t] = idx[t - 1] + 1;
        }
    }
}

fn minimal_sets_unchecked(g: &Matrix, columns: &[Vec<GfElement>], j: usize) -> Vec<RecoverySet> {
    let f = g.field();
    let k = g.rows();
    let mut target = vec![GfElement::ZERO; k];
    target[j] = GfElement::ONE;

    // zero columns never belong to a minimal recovery set
    let pool: Vec<usize> = (0..g.cols())
        .filter(|&c| columns[c].iter().any(|x| !x.is_zero()))
        .collect();
    let mut found: Vec<RecoverySet> = Vec::new();
    let mut masks: Vec<u64> = Vec::new();
    // a minimal recovery set consists of independent columns, so at most k of them
    for size in 1..=k.min(pool.len()) {
        for_each_combination(&pool, size, |subset| {
            let mask = subset.iter().fold(0u64, |m, &p| m | 1 << p);
            if masks.iter().any(|&m| m & !mask == 0) {
                return;
            }
            let cols: Vec<&[GfElement]> = subset.iter().map(|&c| columns[c].as_slice()).collect();
            if span_contains_raw(f, &cols, &target) {
                masks.push(mask);
                found.push(RecoverySet {
                    symbol: j,
                    positions: subset.to_vec(),
                    minimal: true,
                });
            }
        });
    }
    found
}

/// All inclusion-minimal recovery sets for symbol `j` (0-based), by increasing
/// size and then lexicographically.
pub fn minimal_recovery_sets(g: &Matrix, j: usize) -> Result<Vec<RecoverySet>> {
    check_input(g, Some(j))?;
    Ok(minimal_sets_unchecked(g, &g.columns(), j))
}

struct Packer<'a> {
    sets: &'a [u64],
    target: usize,
    chosen: Vec<usize>,
    best: Vec<usize>,
}

impl Packer<'_> {
    fn search(&mut self, candidates: &[usize]) {
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        if self.best.len() >= self.target || candidates.is_empty() {
            return;
        }
        let union = candidates.iter().fold(0u64, |u, &c| u | self.sets[c]);
        let smallest = candidates.iter().map(|&c| self.sets[c].count_ones()).min().unwrap_or(1);
        let room = (union.count_ones() / smallest) as usize;
        if self.chosen.len() + room.min(candidates.len()) <= self.best.len() {
            return;
        }

        // branch on the lowest position still usable by some candidate
        let p = union.trailing_zeros();
        let bit = 1u64 << p;
        for &c in candidates.iter().filter(|&&c| self.sets[c] & bit != 0) {
            let s = self.sets[c];
            let rest: Vec<usize> = candidates.iter().copied().filter(|&d| self.sets[d] & s == 0).collect();
            self.chosen.push(c);
            self.search(&rest);
            self.chosen.pop();
            if self.best.len() >= self.target {
                return;
            }
        }
        let rest: Vec<usize> = candidates
            .iter()
            .copied()
            .filter(|&d| self.sets[d] & bit == 0)
            .collect();
        self.search(&rest);
    }
}

/// Largest disjoint subfamily of `sets`, stopping early once `target` sets are
/// found. Returns indices into `sets`, increasing.
fn pack(sets: &[u64], target: usize) -> Vec<usize> {
    let mut packer = Packer {
        sets,
        target,
        chosen: Vec::new(),
        best: Vec::new(),
    };
    let all: Vec<usize> = (0..sets.len()).collect();
    packer.search(&all);
    let mut best = packer.best;
    best.sort_unstable();
    best
}

fn packing_for_symbol(g: &Matrix, columns: &[Vec<GfElement>], j: usize, target: usize) -> Vec<RecoverySet> {
    let minimal = minimal_sets_unchecked(g, columns, j);
    let masks: Vec<u64> = minimal.iter().map(RecoverySet::mask).collect();
    pack(&masks, target).into_iter().map(|i| minimal[i].clone()).collect()
}

/// Exact maximum number of pairwise disjoint recovery sets for symbol `j`,
/// together with a family attaining it.
pub fn max_disjoint_recovery_sets(g: &Matrix, j: usize) -> Result<(u64, Vec<RecoverySet>)> {
    check_input(g, Some(j))?;
    let witness = packing_for_symbol(g, &g.columns(), j, usize::MAX);
    Ok((witness.len() as u64, witness))
}

/// Per-symbol maximum disjoint recovery-set counts, in data-symbol order.
pub fn pir_level(g: &Matrix) -> Result<Vec<u64>> {
    check_input(g, None)?;
    let columns = g.columns();
    Ok((0..g.rows())
        .into_par_iter()
        .map(|j| packing_for_symbol(g, &columns, j, usize::MAX).len() as u64)
        .collect())
}

/// Checks that symbol j has at least t_j disjoint recovery sets for every j.
pub fn verify_t_pir(g: &Matrix, demand: &DemandVector) -> Result<PirCertificate> {
    if demand.len() != g.rows() {
        return Err(Error::LengthMismatch {
            left: demand.len(),
            right: g.rows(),
        });
    }
    check_input(g, None)?;
    let columns = g.columns();
    let packings: Vec<Vec<RecoverySet>> = demand
        .values()
        .par_iter()
        .enumerate()
        .map(|(j, &t)| {
            if t == 0 {
                Vec::new()
            } else {
                packing_for_symbol(g, &columns, j, t as usize)
            }
        })
        .collect();

    let mut witnesses = Vec::with_capacity(g.rows());
    for (j, (sets, &t)) in packings.into_iter().zip(demand.values()).enumerate() {
        let got = sets.len() as u64;
        witnesses.push(sets);
        if got < t {
            witnesses.resize(g.rows(), Vec::new());
            return Ok(PirCertificate {
                witnesses,
                verdict: Verdict::Refuted {
                    symbol: j,
                    maximum: got,
                },
            });
        }
    }
    Ok(PirCertificate {
        witnesses,
        verdict: Verdict::Satisfied,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldSpec, GfVector};

    fn gf2() -> FieldSpec {
        FieldSpec::new(2, 1, None).unwrap()
    }

    fn eq1() -> Matrix {
        Matrix::from_rows(&gf2(), &[[1, 0, 1, 1], [0, 1, 1, 0]]).unwrap()
    }

    fn positions(sets: &[RecoverySet]) -> Vec<Vec<usize>> {
        sets.iter().map(|s| s.positions.clone()).collect()
    }

    #[test]
    fn demand_vector_validation() {
        assert!(DemandVector::new(vec![3, 2, 2, 0]).is_ok());
        assert_eq!(
            DemandVector::new(vec![3, 2, 4]).unwrap_err(),
            Error::DemandNotSorted { position: 3 }
        );
        let (d, order) = DemandVector::sorted_from(&[1, 3, 2, 3]);
        assert_eq!(d.values(), &[3, 3, 2, 1]);
        assert_eq!(order, vec![1, 3, 2, 0]);
    }

    #[test]
    fn combinations_in_lex_order() {
        let mut seen = Vec::new();
        for_each_combination(&[0, 2, 5, 7], 2, |c| seen.push(c.to_vec()));
        assert_eq!(
            seen,
            vec![vec![0, 2], vec![0, 5], vec![0, 7], vec![2, 5], vec![2, 7], vec![5, 7]]
        );
        let mut count = 0;
        for_each_combination(&[1, 2, 3], 3, |_| count += 1);
        assert_eq!(count, 1);
    }

    #[test]
    fn minimal_sets_of_example() {
        let g = eq1();
        assert_eq!(
            positions(&minimal_recovery_sets(&g, 0).unwrap()),
            vec![vec![0], vec![3], vec![1, 2]]
        );
        assert_eq!(
            positions(&minimal_recovery_sets(&g, 1).unwrap()),
            vec![vec![1], vec![0, 2], vec![2, 3]]
        );
        let i2 = Matrix::identity(&gf2(), 2).unwrap();
        assert_eq!(positions(&minimal_recovery_sets(&i2, 0).unwrap()), vec![vec![0]]);
    }

    #[test]
    fn input_errors() {
        let g = eq1();
        assert_eq!(
            minimal_recovery_sets(&g, 2).unwrap_err(),
            Error::IndexOutOfRange { index: 2, limit: 2 }
        );
        let deficient = Matrix::from_rows(&gf2(), &[[1, 1], [0, 0]]).unwrap();
        assert_eq!(
            pir_level(&deficient).unwrap_err(),
            Error::RankDeficient { rank: 1, k: 2 }
        );
        assert!(matches!(
            verify_t_pir(&g, &DemandVector::new(vec![1]).unwrap()),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn packing_examples() {
        let g = eq1();
        let (n, w) = max_disjoint_recovery_sets(&g, 0).unwrap();
        assert_eq!(n, 3);
        assert_eq!(positions(&w), vec![vec![0], vec![3], vec![1, 2]]);
        assert_eq!(max_disjoint_recovery_sets(&g, 1).unwrap().0, 2);
        let i2 = Matrix::identity(&gf2(), 2).unwrap();
        assert_eq!(max_disjoint_recovery_sets(&i2, 1).unwrap().0, 1);
    }

    #[test]
    fn levels() {
        let f = gf2();
        assert_eq!(pir_level(&eq1()).unwrap(), vec![3, 2]);
        assert_eq!(pir_level(&Matrix::identity(&f, 3).unwrap()).unwrap(), vec![1, 1, 1]);
        let g = Matrix::from_rows(&f, &[[1, 1, 0], [0, 0, 1]]).unwrap();
        assert_eq!(pir_level(&g).unwrap(), vec![2, 1]);
    }

    #[test]
    fn certificates() {
        let g = eq1();
        let ok = verify_t_pir(&g, &DemandVector::new(vec![3, 2]).unwrap()).unwrap();
        assert!(ok.is_satisfied());
        assert_eq!(ok.witnesses[0].len(), 3);
        assert_eq!(ok.witnesses[1].len(), 2);

        let bad = verify_t_pir(&g, &DemandVector::new(vec![3, 3]).unwrap()).unwrap();
        assert_eq!(bad.verdict, Verdict::Refuted { symbol: 1, maximum: 2 });

        let zero = verify_t_pir(&g, &DemandVector::zeros(2)).unwrap();
        assert!(zero.is_satisfied());
        assert!(zero.witnesses.iter().all(Vec::is_empty));
    }

    #[test]
    fn witnesses_are_valid_disjoint_recovery_sets() {
        let f = FieldSpec::new(3, 1, None).unwrap();
        let g = Matrix::from_rows(&f, &[[1, 0, 1, 2, 1, 0, 1], [0, 1, 1, 1, 2, 1, 0]]).unwrap();
        let levels = pir_level(&g).unwrap();
        let (demand, order) = DemandVector::sorted_from(&levels);
        let gp = g.permute_rows(&order).unwrap();
        let cert = verify_t_pir(&gp, &demand).unwrap();
        assert!(cert.is_satisfied());
        for (j, sets) in cert.witnesses.iter().enumerate() {
            let e = GfVector::unit(&f, 2, j);
            let mut used = 0u64;
            for s in sets {
                assert!(gp.span_contains(&s.positions, &e).unwrap());
                assert_eq!(used & s.mask(), 0);
                used |= s.mask();
            }
        }
    }
}
