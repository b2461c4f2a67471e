//! Independent brute-force oracles for binary instances. Columns and messages
//! are bitmasks with coordinate j in bit j, so nothing here touches the
//! library's field or matrix code.

#![allow(dead_code)]

use std::collections::HashMap;

use rand::Rng;
use uddpir::{FieldSpec, Matrix};

pub fn gf(q: u32) -> FieldSpec {
    FieldSpec::from_order(q, None).unwrap()
}

/// Binary matrix from column masks.
pub fn binary_matrix(k: usize, cols: &[u32]) -> Matrix {
    let rows: Vec<Vec<u32>> = (0..k).map(|j| cols.iter().map(|c| (c >> j) & 1).collect()).collect();
    Matrix::from_rows(&gf(2), &rows).unwrap()
}

/// Column masks of a binary matrix.
pub fn column_masks(g: &Matrix) -> Vec<u32> {
    let rows = g.row_values();
    (0..g.cols())
        .map(|c| (0..g.rows()).fold(0, |m, j| m | rows[j][c] << j))
        .collect()
}

/// Rank of a set of GF(2) vectors by xor elimination.
pub fn rank_gf2(vectors: &[u32]) -> usize {
    let mut basis: Vec<u32> = Vec::new();
    for &v in vectors {
        let r = basis.iter().fold(v, |x, &b| x.min(x ^ b));
        if r != 0 {
            basis.push(r);
        }
    }
    basis.len()
}

/// Random binary k x n column masks of full rank k (requires n >= k).
pub fn random_full_rank<R: Rng>(rng: &mut R, k: usize, n: usize) -> Vec<u32> {
    loop {
        let cols: Vec<u32> = (0..n).map(|_| rng.gen_range(0..1u32 << k)).collect();
        if rank_gf2(&cols) == k {
            return cols;
        }
    }
}

/// rec[mask]: the positions in `mask` recover symbol j, i.e. some subset of
/// those columns sums to e_j.
pub fn recovering_masks(cols: &[u32], j: usize) -> Vec<bool> {
    let n = cols.len();
    let mut xor = vec![0u32; 1 << n];
    for mask in 1..1usize << n {
        let low = mask.trailing_zeros() as usize;
        xor[mask] = xor[mask & (mask - 1)] ^ cols[low];
    }
    let mut rec: Vec<bool> = xor.iter().map(|&x| x == 1 << j).collect();
    for bit in 0..n {
        for mask in 0..1usize << n {
            if mask >> bit & 1 == 1 && rec[mask ^ (1 << bit)] {
                rec[mask] = true;
            }
        }
    }
    rec
}

/// Largest number of pairwise disjoint recovery sets for symbol j, over all
/// families of position sets.
pub fn max_disjoint_bruteforce(cols: &[u32], j: usize) -> u64 {
    let rec = recovering_masks(cols, j);
    let n = cols.len();
    let mut best = vec![0u64; 1 << n];
    for avail in 1..1usize << n {
        let low = avail & avail.wrapping_neg();
        let mut b = best[avail ^ low];
        let rest = avail ^ low;
        let mut sub = rest;
        loop {
            let set = sub | low;
            if rec[set] {
                b = b.max(1 + best[avail ^ set]);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        best[avail] = b;
    }
    best[(1 << n) - 1]
}

/// Per-symbol separation min { w(h G) : h_j = 1 }.
pub fn separation_bruteforce(k: usize, cols: &[u32]) -> Vec<u64> {
    let mut s = vec![u64::MAX; k];
    for h in 1..1u32 << k {
        let w = cols.iter().filter(|&&c| (h & c).count_ones() % 2 == 1).count() as u64;
        for (j, sj) in s.iter_mut().enumerate() {
            if h >> j & 1 == 1 {
                *sj = (*sj).min(w);
            }
        }
    }
    s
}

/// Binary ILP(T) by enumeration: multiplicities n_1..n_{2^k-1} (variable i is
/// the column with mask i) of increasing total, each hyperplane h requiring
/// t at h's lowest set bit columns c with h.c = 1. Returns the optimum and the
/// lexicographically smallest optimal vector.
pub fn ilp_bruteforce(t: &[u64]) -> (u64, Vec<u64>) {
    let k = t.len();
    let vars = (1usize << k) - 1;
    let feasible = |n: &[u64]| {
        (1..1u32 << k).all(|h| {
            let outside: u64 = (1..1u32 << k)
                .filter(|&c| (h & c).count_ones() % 2 == 1)
                .map(|c| n[c as usize - 1])
                .sum();
            outside >= t[h.trailing_zeros() as usize]
        })
    };
    let cap: u64 = t.iter().sum();
    for total in 0..=cap {
        // compositions of `total` into `vars` parts, lexicographically increasing
        let mut best: Option<Vec<u64>> = None;
        let mut n = vec![0u64; vars];
        compositions(&mut n, 0, total, &mut |n| {
            if best.is_none() && feasible(n) {
                best = Some(n.to_vec());
            }
        });
        if let Some(b) = best {
            return (total, b);
        }
    }
    unreachable!("the concatenation assignment is feasible")
}

fn compositions(n: &mut [u64], i: usize, left: u64, visit: &mut impl FnMut(&[u64])) {
    if i + 1 == n.len() {
        n[i] = left;
        visit(n);
        n[i] = 0;
        return;
    }
    for v in 0..=left {
        n[i] = v;
        compositions(n, i + 1, left - v, visit);
    }
    n[i] = 0;
}

/// Every nonincreasing vector of length `k` with entries at most `top` and
/// sum at most `sum`.
pub fn demand_grid(k: usize, top: u64, sum: u64) -> Vec<Vec<u64>> {
    fn rec(prefix: &mut Vec<u64>, k: usize, top: u64, sum: u64, out: &mut Vec<Vec<u64>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for v in 0..=top.min(sum) {
            prefix.push(v);
            rec(prefix, k, v, sum - v, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), k, top, sum, &mut out);
    out
}

/// Multiplicity of each column mask.
pub fn counts_of(cols: &[u32]) -> HashMap<u32, usize> {
    let mut m = HashMap::new();
    for &c in cols {
        *m.entry(c).or_insert(0) += 1;
    }
    m
}
