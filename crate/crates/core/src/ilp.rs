//! The column-multiplicity integer program for a demand vector T:
//!
//! ```text
//! minimize   sum_i n_i                    over nonzero i in F_q^k, n_i >= 0 integer
//! subject to sum_{<i,h> != 0} n_i >= t_lead(h)   for every h in P_k
//! ```
//!
//! Its optimum mu(T) lower-bounds the length of any linear T-PIR code and is
//! exactly the shortest length of a linear code with separation vector >= T.
//! The solver is an exact depth-first branch and bound written for the small
//! instances this crate targets (q^k up to a few dozen variables).

use std::fmt::Write as _;

use crate::algebra::{FieldSpec, GfElement, Matrix};
use crate::bounds::{ceil_u64, fractional_bound, griesmer_sum, projective_points, ColumnCounts, ProjectivePoint};
use crate::error::{Error, Result};
use crate::pir::DemandVector;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub point: ProjectivePoint,
    pub rhs: u64,
    /// Indices into [`IlpModel::variables`] with coefficient 1.
    pub vars: Vec<usize>,
}

/// ILP(T) with variables in canonical vector order and one constraint per
/// point of P_k, in `projective_points` order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IlpModel {
    field: FieldSpec,
    demand: DemandVector,
    variables: Vec<Vec<GfElement>>,
    constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IlpSolution {
    /// Optimal multiplicities; the zero column count is always 0.
    pub assignment: ColumnCounts,
    pub objective: u64,
    pub optimal: bool,
    /// Branch-and-bound nodes visited, both phases together.
    pub nodes: u64,
}

impl IlpSolution {
    /// Multiplicities in variable order.
    pub fn values(&self) -> Vec<u64> {
        self.assignment.as_slice()[1..].to_vec()
    }
}

impl IlpModel {
    pub fn new(demand: &DemandVector, field: &FieldSpec) -> Result<Self> {
        let k = demand.len();
        if k == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        let variables: Vec<Vec<GfElement>> = field.nonzero_vectors(k).collect();
        let constraints = projective_points(k, field)
            .into_iter()
            .map(|point| {
                let vars = variables
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !field.dot(v, point.entries()).is_zero())
                    .map(|(i, _)| i)
                    .collect();
                Constraint {
                    rhs: demand.values()[point.leading()],
                    point,
                    vars,
                }
            })
            .collect();
        Ok(IlpModel {
            field: field.clone(),
            demand: demand.clone(),
            variables,
            constraints,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn demand(&self) -> &DemandVector {
        &self.demand
    }

    pub fn k(&self) -> usize {
        self.demand.len()
    }

    pub fn variables(&self) -> &[Vec<GfElement>] {
        &self.variables
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn variable_name(&self, i: usize) -> String {
        format!("n_{}", self.field.vector_label(&self.variables[i]))
    }

    /// First violated constraint of an assignment given in variable order.
    pub fn first_violation(&self, values: &[u64]) -> Option<&Constraint> {
        self.constraints
            .iter()
            .find(|c| c.vars.iter().map(|&i| values[i]).sum::<u64>() < c.rhs)
    }

    /// LP-style text: an objective line, then one `lhs >= rhs` line per constraint.
    pub fn dump(&self) -> String {
        let names: Vec<String> = (0..self.variables.len()).map(|i| self.variable_name(i)).collect();
        let mut out = String::new();
        let _ = writeln!(out, "minimize {}", names.join(" + "));
        for c in &self.constraints {
            let lhs: Vec<&str> = c.vars.iter().map(|&i| names[i].as_str()).collect();
            let _ = writeln!(out, "{} >= {}", lhs.join(" + "), c.rhs);
        }
        out
    }

    /// Exact optimum with the lexicographically smallest optimal assignment.
    pub fn solve(&self) -> IlpSolution {
        let mut s = Solver::new(self);
        let mu = s.minimize();
        let values = s.smallest_assignment(mu);
        let assignment = ColumnCounts::from_indexed(
            &self.field,
            self.k(),
            values.iter().enumerate().map(|(i, &n)| (i + 1, n)),
        )
        .expect("variable indices are canonical");
        IlpSolution {
            assignment,
            objective: mu,
            optimal: true,
            nodes: s.nodes,
        }
    }

    /// The k x n matrix with n_i copies of each column i, columns in canonical
    /// order.
    pub fn solution_to_matrix(&self, sol: &IlpSolution) -> Result<Matrix> {
        let values = sol.values();
        if values.len() != self.variables.len() {
            return Err(Error::LengthMismatch {
                left: values.len(),
                right: self.variables.len(),
            });
        }
        if let Some(c) = self.first_violation(&values) {
            return Err(Error::InfeasibleAssignment { point: c.point.label() });
        }
        let mut columns = Vec::new();
        for (v, &n) in self.variables.iter().zip(&values) {
            for _ in 0..n {
                columns.push(v.clone());
            }
        }
        Matrix::from_columns(&self.field, self.k(), &columns)
    }
}

/// Builds ILP(T) over `field`.
pub fn build_model(demand: &DemandVector, field: &FieldSpec) -> Result<IlpModel> {
    IlpModel::new(demand, field)
}

pub fn solve(model: &IlpModel) -> IlpSolution {
    model.solve()
}

pub fn solution_to_matrix(sol: &IlpSolution, model: &IlpModel) -> Result<Matrix> {
    model.solution_to_matrix(sol)
}

struct Solver {
    nvars: usize,
    var_cons: Vec<Vec<usize>>,
    rhs: Vec<u64>,
    /// Largest variable index appearing in each constraint.
    last_var: Vec<usize>,
    lower: u64,
    baseline: u64,
    lhs: Vec<u64>,
    assign: Vec<u64>,
    nodes: u64,
}

impl Solver {
    fn new(model: &IlpModel) -> Self {
        let nvars = model.variables.len();
        let mut var_cons = vec![Vec::new(); nvars];
        for (h, c) in model.constraints.iter().enumerate() {
            for &i in &c.vars {
                var_cons[i].push(h);
            }
        }
        let q = model.field.q();
        let lower = griesmer_sum(&model.demand, q).max(ceil_u64(&fractional_bound(&model.demand, q)));
        Solver {
            nvars,
            var_cons,
            rhs: model.constraints.iter().map(|c| c.rhs).collect(),
            last_var: model
                .constraints
                .iter()
                .map(|c| c.vars.iter().copied().max().unwrap_or(0))
                .collect(),
            lower,
            baseline: model.demand.total(),
            lhs: vec![0; model.constraints.len()],
            assign: vec![0; nvars],
            nodes: 0,
        }
    }

    /// Admissible bound on what variables `v..` must still add, or `None` if
    /// some constraint can no longer be met. Each unit of a variable reduces at
    /// most as many deficits as it has constraints still short, which gives the
    /// double-counting bound sum(deficit) / max coverage.
    fn residual_bound(&self, v: usize) -> Option<u64> {
        let mut total = 0;
        let mut largest = 0;
        for (h, (&r, &l)) in self.rhs.iter().zip(&self.lhs).enumerate() {
            let d = r.saturating_sub(l);
            if d > 0 {
                if v >= self.nvars || self.last_var[h] < v {
                    return None;
                }
                total += d;
                largest = largest.max(d);
            }
        }
        if total == 0 {
            return Some(0);
        }
        let cover = (v..self.nvars)
            .map(|u| self.var_cons[u].iter().filter(|&&h| self.rhs[h] > self.lhs[h]).count() as u64)
            .max()
            .unwrap_or(0);
        Some(largest.max(total.div_ceil(cover)))
    }

    /// No optimal solution gives variable `v` more than the largest deficit among
    /// its constraints; anything above can be lowered without losing feasibility.
    fn cap(&self, v: usize) -> u64 {
        self.var_cons[v]
            .iter()
            .map(|&h| self.rhs[h].saturating_sub(self.lhs[h]))
            .max()
            .unwrap_or(0)
    }

    fn set(&mut self, v: usize, x: u64) {
        let old = self.assign[v];
        for &h in &self.var_cons[v] {
            self.lhs[h] = self.lhs[h] - old + x;
        }
        self.assign[v] = x;
    }

    fn minimize(&mut self) -> u64 {
        // every unit vector e_j taken t_j times is feasible
        let mut best = self.baseline;
        if best > self.lower {
            self.descend(0, 0, &mut best);
        }
        best
    }

    fn descend(&mut self, v: usize, sum: u64, best: &mut u64) -> bool {
        self.nodes += 1;
        let Some(lb) = self.residual_bound(v) else {
            return false;
        };
        if sum + lb >= *best {
            return false;
        }
        if lb == 0 {
            *best = sum;
            return *best <= self.lower;
        }
        let cap = self.cap(v).min(*best - 1 - sum);
        for x in (0..=cap).rev() {
            self.set(v, x);
            let done = self.descend(v + 1, sum + x, best);
            if done {
                self.set(v, 0);
                return true;
            }
        }
        self.set(v, 0);
        false
    }

    /// Lexicographically smallest assignment with objective `mu`.
    fn smallest_assignment(&mut self, mu: u64) -> Vec<u64> {
        self.assign.iter_mut().for_each(|x| *x = 0);
        self.lhs.iter_mut().for_each(|x| *x = 0);
        let found = self.ascend(0, 0, mu);
        debug_assert!(found, "an assignment of value mu exists");
        self.assign.clone()
    }

    fn ascend(&mut self, v: usize, sum: u64, mu: u64) -> bool {
        self.nodes += 1;
        let Some(lb) = self.residual_bound(v) else {
            return false;
        };
        if sum + lb > mu {
            return false;
        }
        if lb == 0 {
            // remaining variables stay 0
            return true;
        }
        let cap = self.cap(v).min(mu - sum);
        for x in 0..=cap {
            self.set(v, x);
            if self.ascend(v + 1, sum + x, mu) {
                return true;
            }
        }
        self.set(v, 0);
        false
    }
}
