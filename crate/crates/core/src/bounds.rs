//! Hyperplane normals P_k, column multiplicities, and the Griesmer-type length
//! bounds for demand vectors.

use std::fmt;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::Zero;

use crate::algebra::{FieldSpec, GfElement, GfVector, Matrix};
use crate::error::{Error, Result};
use crate::pir::DemandVector;

/// Exact nonnegative rational.
pub type Rational = Ratio<BigUint>;

/// A nonzero vector whose first nonzero entry is 1. Each one is the normal of
/// a distinct hyperplane of F_q^k.
#[derive(Clone, PartialEq, Eq)]
pub struct ProjectivePoint {
    h: GfVector,
    leading: usize,
}

impl ProjectivePoint {
    pub fn vector(&self) -> &GfVector {
        &self.h
    }

    pub fn entries(&self) -> &[GfElement] {
        self.h.entries()
    }

    /// 0-based index of the first nonzero entry; the demand that the hyperplane
    /// constrains is t at this index.
    pub fn leading(&self) -> usize {
        self.leading
    }

    pub fn label(&self) -> String {
        self.h.field().vector_label(self.h.entries())
    }
}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Representatives of the points of PG(k-1, q), ordered by leading index and
/// then lexicographically on the remaining coordinates.
pub fn projective_points(k: usize, field: &FieldSpec) -> Vec<ProjectivePoint> {
    let q = field.q() as usize;
    let mut out = Vec::with_capacity((q.pow(k as u32) - 1) / (q - 1));
    for lead in 0..k {
        let free = k - lead - 1;
        for t in 0..q.pow(free as u32) {
            let mut entries = vec![GfElement::ZERO; k];
            entries[lead] = GfElement::ONE;
            // big-endian digits so later coordinates vary fastest
            let mut x = t;
            for pos in (lead + 1..k).rev() {
                entries[pos] = field.element((x % q) as u32).expect("digit below q");
                x /= q;
            }
            out.push(ProjectivePoint {
                h: GfVector::new(field, entries).expect("valid entries"),
                leading: lead,
            });
        }
    }
    out
}

/// Multiplicity of every column vector of a k-row matrix, indexed by the
/// canonical vector index (entry 0 counts zero columns).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnCounts {
    field: FieldSpec,
    k: usize,
    counts: Vec<u64>,
}

impl ColumnCounts {
    pub fn zeros(field: &FieldSpec, k: usize) -> Self {
        ColumnCounts {
            field: field.clone(),
            k,
            counts: vec![0; field.space_size(k)],
        }
    }

    /// Builds counts from `(canonical index, multiplicity)` pairs.
    pub fn from_indexed(field: &FieldSpec, k: usize, pairs: impl IntoIterator<Item = (usize, u64)>) -> Result<Self> {
        let mut c = Self::zeros(field, k);
        for (i, n) in pairs {
            let limit = c.counts.len();
            *c.counts.get_mut(i).ok_or(Error::IndexOutOfRange { index: i, limit })? += n;
        }
        Ok(c)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, v: &[GfElement]) -> u64 {
        self.counts[self.field.vector_index(v)]
    }

    pub fn get_index(&self, index: usize) -> u64 {
        self.counts[index]
    }

    /// Zero columns.
    pub fn n0(&self) -> u64 {
        self.counts[0]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Total over nonzero columns only.
    pub fn nonzero_total(&self) -> u64 {
        self.counts[1..].iter().sum()
    }

    /// Raw counts by canonical index, entry 0 being the zero vector.
    pub fn as_slice(&self) -> &[u64] {
        &self.counts
    }

    /// Nonzero vectors with positive multiplicity, in canonical order.
    pub fn support(&self) -> impl Iterator<Item = (Vec<GfElement>, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &n)| n > 0)
            .map(|(i, &n)| (self.field.index_vector(i, self.k), n))
    }

    /// Number of columns outside the hyperplane with normal `h`.
    pub fn outside(&self, h: &[GfElement]) -> u64 {
        self.counts
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &n)| n > 0)
            .filter(|(i, _)| !self.field.dot(&self.field.index_vector(*i, self.k), h).is_zero())
            .map(|(_, &n)| n)
            .sum()
    }
}

/// Tallies the columns of `g`.
pub fn column_counts(g: &Matrix) -> ColumnCounts {
    let mut c = ColumnCounts::zeros(g.field(), g.rows());
    for col in g.columns() {
        c.counts[g.field().vector_index(&col)] += 1;
    }
    c
}

/// Sum of ceil(t_j / q^(j-1)) over j.
pub fn griesmer_sum(demand: &DemandVector, q: u32) -> u64 {
    let mut power: Option<u64> = Some(1);
    let mut total = 0;
    for &t in demand.values() {
        total += match power {
            Some(p) => t.div_ceil(p),
            // q^(j-1) beyond u64 exceeds any t
            None => u64::from(t > 0),
        };
        power = power.and_then(|p| p.checked_mul(q as u64));
    }
    total
}

/// The exact rational sum of t_j / q^(j-1).
pub fn fractional_bound(demand: &DemandVector, q: u32) -> Rational {
    let q = BigUint::from(q);
    let mut power = BigUint::from(1u32);
    let mut total = Rational::zero();
    for &t in demand.values() {
        total += Rational::new(BigUint::from(t), power.clone());
        power *= &q;
    }
    total
}

/// Ceiling of a nonnegative rational as u64.
pub fn ceil_u64(r: &Rational) -> u64 {
    let c = r.ceil().to_integer();
    u64::try_from(c).unwrap_or(u64::MAX)
}

/// A hyperplane with too few columns outside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub point: ProjectivePoint,
    pub outside: u64,
    pub required: u64,
}

impl Violation {
    pub fn deficit(&self) -> u64 {
        self.required - self.outside
    }
}

/// Evaluates, for each h in P_k, whether at least t at h's leading index
/// columns lie outside the hyperplane h^perp. Returns every violation.
pub fn check_demand_inequalities(counts: &ColumnCounts, demand: &DemandVector) -> Result<Vec<Violation>> {
    if demand.len() != counts.k {
        return Err(Error::LengthMismatch {
            left: demand.len(),
            right: counts.k,
        });
    }
    Ok(projective_points(counts.k, &counts.field)
        .into_iter()
        .filter_map(|point| {
            let outside = counts.outside(point.entries());
            let required = demand.values()[point.leading];
            (outside < required).then_some(Violation {
                point,
                outside,
                required,
            })
        })
        .collect())
}
