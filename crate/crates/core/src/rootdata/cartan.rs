//! Cartan matrices of the simple root systems, Bourbaki numbering.
//!
//! Entry `[i][j]` is `<alpha_j, alpha_i^vee>`, i.e. row `i` is indexed by the
//! coroot and column `j` by the root.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl FromStr for Series {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Series::A),
            "B" => Ok(Series::B),
            "C" => Ok(Series::C),
            "D" => Ok(Series::D),
            "E" => Ok(Series::E),
            "F" => Ok(Series::F),
            "G" => Ok(Series::G),
            other => Err(Error::UnknownSeries(other.to_string())),
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        };
        write!(f, "{c}")
    }
}

pub fn cartan_matrix(series: Series, rank: usize) -> Result<Vec<Vec<i64>>> {
    let bad = || Error::InvalidRank {
        series: series.to_string(),
        rank,
    };
    let valid = match series {
        Series::A => rank >= 1,
        Series::B => rank >= 2,
        Series::C => rank >= 2,
        Series::D => rank >= 4,
        Series::E => (6..=8).contains(&rank),
        Series::F => rank == 4,
        Series::G => rank == 2,
    };
    if !valid {
        return Err(bad());
    }

    let mut a = vec![vec![0i64; rank]; rank];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };

    match series {
        Series::A | Series::B | Series::C => {
            for i in 0..rank - 1 {
                link(i, i + 1);
            }
        }
        Series::D => {
            for i in 0..rank - 2 {
                link(i, i + 1);
            }
            link(rank - 3, rank - 1);
        }
        Series::E => {
            // 1-3-4-5-6(-7-8) with 2 attached to 4
            link(0, 2);
            link(1, 3);
            for i in 2..rank - 1 {
                link(i, i + 1);
            }
        }
        Series::F => {
            link(0, 1);
            link(1, 2);
            link(2, 3);
        }
        Series::G => link(0, 1),
    }

    match series {
        // alpha_n short
        Series::B => a[rank - 1][rank - 2] = -2,
        // alpha_n long
        Series::C => a[rank - 2][rank - 1] = -2,
        // alpha_3 short, alpha_2 long
        Series::F => a[2][1] = -2,
        // alpha_1 short, alpha_2 long
        Series::G => a[0][1] = -3,
        _ => {}
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_tables() {
        assert_eq!(cartan_matrix(Series::A, 1).unwrap(), vec![vec![2]]);
        assert_eq!(
            cartan_matrix(Series::A, 2).unwrap(),
            vec![vec![2, -1], vec![-1, 2]]
        );
        assert_eq!(
            cartan_matrix(Series::B, 2).unwrap(),
            vec![vec![2, -1], vec![-2, 2]]
        );
        assert_eq!(
            cartan_matrix(Series::G, 2).unwrap(),
            vec![vec![2, -3], vec![-1, 2]]
        );
    }

    #[test]
    fn rejects_bad_ranks() {
        assert!(cartan_matrix(Series::A, 0).is_err());
        assert!(cartan_matrix(Series::D, 3).is_err());
        assert!(cartan_matrix(Series::E, 9).is_err());
        assert!(cartan_matrix(Series::G, 3).is_err());
        assert!("Q".parse::<Series>().is_err());
    }
}
