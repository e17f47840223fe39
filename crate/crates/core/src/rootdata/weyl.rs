//! Weyl group action on weights in fundamental-weight coordinates.
//!
//! Elements are never stored as matrices; they are applied as words in the
//! simple reflections, and every enumeration is bounded by a [`WeylCap`].

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};

use super::RootDatum;

/// Upper bound on the number of Weyl group elements (or orbit points) any
/// single enumeration may produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeylCap(pub usize);

impl Default for WeylCap {
    fn default() -> Self {
        WeylCap(1_000_000)
    }
}

impl RootDatum {
    /// Simple reflection `s_i` applied to `lambda`.
    pub fn reflect(&self, lambda: &[i64], i: usize) -> Vec<i64> {
        let li = lambda[i];
        lambda
            .iter()
            .enumerate()
            .map(|(k, &x)| x - li * self.cartan()[k][i])
            .collect()
    }

    /// Moves `lambda` into the closed dominant chamber. Returns the dominant
    /// representative and the parity of the reflection word used.
    pub fn to_dominant(&self, lambda: &[i64], cap: WeylCap) -> Result<(Vec<i64>, bool)> {
        let mut x = lambda.to_vec();
        let mut odd = false;
        let mut steps = 0usize;
        while let Some(i) = x.iter().position(|&c| c < 0) {
            x = self.reflect(&x, i);
            odd = !odd;
            steps += 1;
            if steps > cap.0 {
                return Err(Error::WeylCapExceeded { cap: cap.0 });
            }
        }
        Ok((x, odd))
    }

    /// Dot action `w . lambda = w(lambda + rho) - rho` with `w` chosen so the
    /// result is dominant. `None` when `lambda + rho` lies on a wall.
    /// The sign is `(-1)^{length(w)}`.
    pub fn dot_to_dominant(&self, lambda: &[i64], cap: WeylCap) -> Result<Option<(i64, Vec<i64>)>> {
        let shifted: Vec<i64> = lambda.iter().map(|&x| x + 1).collect();
        let (dom, odd) = self.to_dominant(&shifted, cap)?;
        if dom.contains(&0) {
            return Ok(None);
        }
        let sign = if odd { -1 } else { 1 };
        Ok(Some((sign, dom.iter().map(|&x| x - 1).collect())))
    }

    /// Weyl orbit of `lambda`, breadth-first from `lambda`.
    pub fn weyl_orbit(&self, lambda: &[i64], cap: WeylCap) -> Result<Vec<Vec<i64>>> {
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(lambda.to_vec());
        queue.push_back(lambda.to_vec());
        while let Some(x) = queue.pop_front() {
            for i in 0..self.rank_ss() {
                if x[i] == 0 {
                    continue;
                }
                let y = self.reflect(&x, i);
                if seen.insert(y.clone()) {
                    if seen.len() > cap.0 {
                        return Err(Error::WeylCapExceeded { cap: cap.0 });
                    }
                    queue.push_back(y);
                }
            }
            out.push(x);
        }
        Ok(out)
    }

    /// Order of the Weyl group, computed as the size of the (free) orbit of rho.
    pub fn weyl_group_order(&self, cap: WeylCap) -> Result<usize> {
        let rho = vec![1; self.rank_ss()];
        Ok(self.weyl_orbit(&rho, cap)?.len())
    }
}
