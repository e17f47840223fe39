//! Open faces of the fundamental Weyl chamber.
//!
//! A face is identified with its vanishing set `S`: the simple roots whose
//! coroots pair to zero with every point of the face.
//! `sigma <= tau` means `sigma` lies in the closure of `tau`, which happens
//! exactly when `S_tau` is a subset of `S_sigma`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootdata::{RootDatum, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Face {
    /// Sorted, zero-based simple-root indices.
    pub vanishing: Vec<usize>,
    pub dim: usize,
}

impl Face {
    pub fn new(d: &RootDatum, mut vanishing: Vec<usize>) -> Result<Face> {
        vanishing.sort_unstable();
        vanishing.dedup();
        if vanishing.iter().any(|&i| i >= d.rank_ss()) {
            return Err(Error::InvalidFace(vanishing));
        }
        let dim = d.rank_ss() - vanishing.len() + d.central_rank();
        Ok(Face { vanishing, dim })
    }

    pub fn interior(d: &RootDatum) -> Face {
        Face {
            vanishing: Vec::new(),
            dim: d.rank_ss() + d.central_rank(),
        }
    }

    pub fn vertex(d: &RootDatum) -> Face {
        Face {
            vanishing: (0..d.rank_ss()).collect(),
            dim: d.central_rank(),
        }
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.vanishing.binary_search(&i).is_ok()
    }

    /// `self <= other`: `other`'s closure contains `self`.
    pub fn leq(&self, other: &Face) -> bool {
        other.vanishing.iter().all(|i| self.contains_index(*i))
    }

    pub fn lt(&self, other: &Face) -> bool {
        self.leq(other) && self != other
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.vanishing.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// All `2^r` faces, sorted lexicographically by vanishing set.
pub fn enumerate_faces(d: &RootDatum) -> Vec<Face> {
    let r = d.rank_ss();
    let mut faces: Vec<Face> = (0u64..1 << r)
        .map(|mask| {
            let vanishing: Vec<usize> = (0..r).filter(|i| mask >> i & 1 == 1).collect();
            Face {
                dim: r - vanishing.len() + d.central_rank(),
                vanishing,
            }
        })
        .collect();
    faces.sort();
    faces
}

/// The face containing a dominant weight.
pub fn face_of(d: &RootDatum, lambda: &Weight) -> Result<Face> {
    d.check_weight(lambda)?;
    face_of_pairings(d, &lambda.coeffs)
}

/// The face containing a chamber point given by its coroot pairings.
pub fn face_of_pairings<T>(d: &RootDatum, pairings: &[T]) -> Result<Face>
where
    T: PartialOrd + Default + fmt::Display,
{
    let zero = T::default();
    if pairings.iter().any(|p| *p < zero) {
        return Err(Error::NotInChamber(
            pairings.iter().map(ToString::to_string).collect(),
        ));
    }
    let vanishing = (0..pairings.len()).filter(|&i| pairings[i] == zero).collect();
    Face::new(d, vanishing)
}

#[derive(Debug, Clone)]
pub struct FaceOrder {
    pub faces: Vec<Face>,
    /// All pairs `(i, j)` of indices into `faces` with `faces[i] <= faces[j]`.
    pub leq: Vec<(usize, usize)>,
}

impl FaceOrder {
    /// Faces `tau >= faces[i]`.
    pub fn star(&self, i: usize) -> Vec<&Face> {
        self.leq
            .iter()
            .filter(|(a, _)| *a == i)
            .map(|&(_, b)| &self.faces[b])
            .collect()
    }

    /// Faces `sigma <= faces[j]`, i.e. those in the closure of `faces[j]`.
    pub fn closure(&self, j: usize) -> Vec<&Face> {
        self.leq
            .iter()
            .filter(|(_, b)| *b == j)
            .map(|&(a, _)| &self.faces[a])
            .collect()
    }
}

pub fn face_relations(d: &RootDatum) -> FaceOrder {
    let faces = enumerate_faces(d);
    let mut leq = Vec::new();
    for (i, a) in faces.iter().enumerate() {
        for (j, b) in faces.iter().enumerate() {
            if a.leq(b) {
                leq.push((i, j));
            }
        }
    }
    FaceOrder { faces, leq }
}

/// Open star of a face: every `tau >= sigma`.
pub fn star(d: &RootDatum, sigma: &Face) -> Vec<Face> {
    enumerate_faces(d)
        .into_iter()
        .filter(|t| sigma.leq(t))
        .collect()
}

/// Positive roots of the Levi subsystem `R_sigma`, in simple-root coordinates.
pub fn levi_positive_roots(d: &RootDatum, sigma: &Face) -> Vec<Vec<i64>> {
    d.positive_roots()
        .iter()
        .filter(|b| {
            b.iter()
                .enumerate()
                .all(|(i, &c)| c == 0 || sigma.contains_index(i))
        })
        .cloned()
        .collect()
}

/// The full Levi subsystem `R_sigma` (both signs).
pub fn levi_roots(d: &RootDatum, sigma: &Face) -> Vec<Vec<i64>> {
    let pos = levi_positive_roots(d, sigma);
    let neg: Vec<Vec<i64>> = pos
        .iter()
        .map(|b| b.iter().map(|c| -c).collect())
        .collect();
    pos.into_iter().chain(neg).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StarMembership {
    InStar,
    InSubchamberOnly,
    Outside,
}

/// Sign test: `lambda` is in the subchamber of `sigma` when it pairs
/// nonnegatively with `S_sigma`, and in the star when it moreover pairs
/// positively with every other simple coroot.
pub fn star_membership(sigma: &Face, pairings: &[i64]) -> StarMembership {
    let on_s = |i: usize| sigma.contains_index(i);
    if (0..pairings.len()).any(|i| on_s(i) && pairings[i] < 0) {
        return StarMembership::Outside;
    }
    if (0..pairings.len()).all(|i| on_s(i) || pairings[i] > 0) {
        StarMembership::InStar
    } else {
        StarMembership::InSubchamberOnly
    }
}
