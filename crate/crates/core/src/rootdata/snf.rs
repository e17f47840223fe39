//! Smith normal form over the integers.
//!
//! Only the invariant factors are needed here: they give the order of the
//! torsion of a lattice quotient `Z^m / span(columns)`.

use crate::error::{Error, Result};

/// Invariant factors `d_1 | d_2 | ... | d_k` of an integer matrix (nonzero
/// factors only, so `k` is the rank).
pub fn invariant_factors(matrix: &[Vec<i64>]) -> Result<Vec<i64>> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    if matrix.iter().any(|r| r.len() != cols) {
        return Err(Error::InvalidMatrix("ragged rows".into()));
    }
    let mut a: Vec<Vec<i128>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();

    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero |entry| in the remaining block
        let Some((pi, pj)) = smallest_entry(&a, t) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }

        loop {
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_euclid(a[t][t]);
                if q != 0 {
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = a[t][j].div_euclid(a[t][t]);
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                // divisibility: fold any row not divisible by the pivot back in
                let p = a[t][t];
                let offender = (t + 1..rows)
                    .find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
                match offender {
                    Some(i) => {
                        for j in t..cols {
                            a[t][j] += a[i][j];
                        }
                    }
                    None => break,
                }
            } else if let Some((pi, pj)) = smallest_entry(&a, t) {
                a.swap(t, pi);
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
            }
            if a[t][t].abs() > i64::MAX as i128 {
                return Err(Error::Overflow("Smith normal form"));
            }
        }
        factors.push(a[t][t].abs() as i64);
        t += 1;
    }
    Ok(factors)
}

fn smallest_entry(a: &[Vec<i128>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, i128)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, &x) in row.iter().enumerate().skip(t) {
            if x != 0 && best.is_none_or(|(_, _, b)| x.abs() < b) {
                best = Some((i, j, x.abs()));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Order of the torsion subgroup of `Z^m / span(vectors)`, i.e. the index of
/// the span inside its rational saturation. Vectors must be independent.
pub fn saturation_index(vectors: &[Vec<i64>]) -> Result<i64> {
    if vectors.is_empty() {
        return Ok(1);
    }
    let m = vectors[0].len();
    // columns are the given vectors
    let matrix: Vec<Vec<i64>> = (0..m)
        .map(|i| vectors.iter().map(|v| v[i]).collect())
        .collect();
    let factors = invariant_factors(&matrix)?;
    if factors.len() < vectors.len() {
        return Err(Error::InvalidDatum("vectors are linearly dependent".into()));
    }
    factors
        .iter()
        .try_fold(1i64, |acc, &d| acc.checked_mul(d))
        .ok_or(Error::Overflow("lattice index"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonalizes_known_matrices() {
        assert_eq!(invariant_factors(&[vec![2]]).unwrap(), vec![2]);
        assert_eq!(
            invariant_factors(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).unwrap(),
            vec![2, 6, 12]
        );
        assert_eq!(invariant_factors(&[vec![2, 0], vec![0, 3]]).unwrap(), vec![1, 6]);
        assert_eq!(invariant_factors(&[vec![0, 0], vec![0, 0]]).unwrap(), Vec::<i64>::new());
    }

    #[test]
    fn cartan_determinants() {
        // |det| of the Cartan matrix is the index of the root lattice in the
        // weight lattice
        let a2 = [vec![2, -1], vec![-1, 2]];
        assert_eq!(saturation_index(&a2).unwrap(), 3);
        let b2 = [vec![2, -1], vec![-2, 2]];
        assert_eq!(saturation_index(&b2).unwrap(), 2);
        let g2 = [vec![2, -3], vec![-1, 2]];
        assert_eq!(saturation_index(&g2).unwrap(), 1);
    }

    #[test]
    fn saturated_sublattice() {
        assert_eq!(saturation_index(&[vec![1, -1]]).unwrap(), 1);
        assert_eq!(saturation_index(&[vec![2, -2]]).unwrap(), 2);
        assert!(saturation_index(&[vec![1, 2], vec![2, 4]]).is_err());
    }
}
