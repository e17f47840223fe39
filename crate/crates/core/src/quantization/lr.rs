//! Littlewood–Richardson coefficients by direct tableau enumeration.
//!
//! A Littlewood–Richardson tableau of shape `ν/λ` and content `μ` is encoded
//! by `a[r][i]`, the number of entries `i` in row `r`. Rows are weakly
//! increasing automatically; the column-strict and lattice-word conditions
//! become linear inequalities on the partial row sums.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

fn validate(n: usize, p: &[i64]) -> Result<Vec<i64>> {
    let trimmed: Vec<i64> = {
        let mut v = p.to_vec();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    };
    let decreasing = trimmed.windows(2).all(|w| w[0] >= w[1]);
    if trimmed.iter().any(|&x| x < 0) || !decreasing || trimmed.len() > n {
        return Err(Error::MalformedPartition(p.to_vec()));
    }
    Ok(trimmed)
}

/// `c^ν_{λμ}` for all `ν` with at most `n` rows.
pub fn lr_coefficients_type_a(n: usize, lambda: &[i64], mu: &[i64]) -> Result<BTreeMap<Vec<i64>, u64>> {
    let lambda = validate(n, lambda)?;
    let mu = validate(n, mu)?;
    let mut lam = lambda.clone();
    lam.resize(n, 0);

    let mut search = Search {
        n,
        lam,
        mu: mu.clone(),
        a: vec![vec![0; mu.len()]; n],
        out: BTreeMap::new(),
    };
    search.row(0);
    Ok(search.out)
}

struct Search {
    n: usize,
    lam: Vec<i64>,
    mu: Vec<i64>,
    a: Vec<Vec<i64>>,
    out: BTreeMap<Vec<i64>, u64>,
}

impl Search {
    fn used(&self, upto_row: usize, letter: usize) -> i64 {
        self.a[..upto_row].iter().map(|row| row[letter]).sum()
    }

    fn row(&mut self, r: usize) {
        if r == self.n {
            let complete = (0..self.mu.len()).all(|i| self.used(self.n, i) == self.mu[i]);
            if complete {
                let mut nu: Vec<i64> = (0..self.n)
                    .map(|s| self.lam[s] + self.a[s].iter().sum::<i64>())
                    .collect();
                while nu.last() == Some(&0) {
                    nu.pop();
                }
                *self.out.entry(nu).or_insert(0) += 1;
            }
            return;
        }
        self.letter(r, 0, 0);
    }

    /// Chooses `a[r][i]`; `filled` is `Σ_{j<i} a[r][j]`.
    fn letter(&mut self, r: usize, i: usize, filled: i64) {
        if i == self.mu.len() || i > r {
            self.row(r + 1);
            return;
        }
        let remaining = self.mu[i] - self.used(r, i);
        let mut bound = remaining;
        if i > 0 {
            // lattice word: #i in rows <= r stays below #(i-1) in rows < r
            bound = bound.min(self.used(r, i - 1) - self.used(r, i));
        }
        if r > 0 {
            // column strictness against row r - 1
            let above: i64 = self.a[r - 1][..i].iter().sum();
            bound = bound.min(self.lam[r - 1] + above - self.lam[r] - filled);
        }
        for k in 0..=bound.max(-1) {
            self.a[r][i] = k;
            self.letter(r, i + 1, filled + k);
        }
        self.a[r][i] = 0;
    }
}

/// Partition of a dominant SU(n) weight: `λ_j = Σ_{k >= j} a_k`.
pub fn weight_to_partition(weight: &[i64]) -> Vec<i64> {
    let mut out: Vec<i64> = (0..weight.len()).map(|j| weight[j..].iter().sum()).collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Dominant SU(n) weight of a partition with at most `n` rows; full columns
/// drop out.
pub fn partition_to_weight(n: usize, partition: &[i64]) -> Result<Vec<i64>> {
    let mut p = validate(n, partition)?;
    p.resize(n, 0);
    Ok((0..n - 1).map(|k| p[k] - p[k + 1]).collect())
}
