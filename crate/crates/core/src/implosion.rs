//! Strata of the universal imploded cross-section and point-level implosion
//! equivalence for SU(n).
//!
//! The stratum of a face `σ` is `K/[K_σ,K_σ] × σ`; its complexification is
//! the orbit `G/[P_σ,P_σ]`.

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::chamber::{enumerate_faces, face_of, levi_positive_roots, Face};
use crate::error::{Error, Result};
use crate::rootdata::{RootDatum, Weight};
use crate::su::{check_special_unitary, levi_blocks, CMatrix, C64, UNITARY_TOL};

pub const EQUIVALENCE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", content = "value", rename_all = "kebab-case")]
pub enum Smoothness {
    /// Smooth point; the transverse slice is `(C^2)^k`.
    Smooth(usize),
    /// Quotient of a smooth model by a finite group of this order.
    OrbifoldOnly(i64),
    Singular,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitType {
    pub label: String,
    /// Complex dimension of `[P_σ,P_σ]`.
    pub derived_parabolic_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratum {
    pub face: Face,
    pub real_dim: usize,
    pub orbit_type: OrbitType,
    pub smoothness: Smoothness,
    pub closure_preds: Vec<Face>,
}

/// `dim [K_σ,K_σ] = |R_σ| + |S_σ|`.
pub fn derived_levi_dim(d: &RootDatum, sigma: &Face) -> usize {
    2 * levi_positive_roots(d, sigma).len() + sigma.vanishing.len()
}

/// `dim_C [P_σ,P_σ] = dim [K_σ,K_σ] + |R_+ ∖ R_{+,σ}|`.
pub fn derived_parabolic_dim(d: &RootDatum, sigma: &Face) -> usize {
    let levi_pos = levi_positive_roots(d, sigma).len();
    derived_levi_dim(d, sigma) + d.positive_roots().len() - levi_pos
}

pub fn stratum_dim(d: &RootDatum, sigma: &Face) -> usize {
    d.dim_group() - derived_levi_dim(d, sigma) + sigma.dim
}

pub fn universal_strata(d: &RootDatum) -> Result<Vec<Stratum>> {
    let faces = enumerate_faces(d);
    faces
        .iter()
        .map(|f| {
            Ok(Stratum {
                face: f.clone(),
                real_dim: stratum_dim(d, f),
                orbit_type: OrbitType {
                    label: "G/[P_σ,P_σ]".to_string(),
                    derived_parabolic_dim: derived_parabolic_dim(d, f),
                },
                smoothness: classify_smoothness(d, f)?,
                closure_preds: faces.iter().filter(|g| g.leq(f)).cloned().collect(),
            })
        })
        .collect()
}

/// A point of the universal space is smooth exactly when the derived Levi
/// group is a product of copies of SL(2), i.e. `S_σ` is pairwise orthogonal
/// and the derived group is simply connected.
pub fn classify_smoothness(d: &RootDatum, sigma: &Face) -> Result<Smoothness> {
    let s = &sigma.vanishing;
    let a = d.cartan();
    let orthogonal = s
        .iter()
        .all(|&i| s.iter().all(|&j| i == j || a[i][j] == 0));
    if !orthogonal {
        return Ok(Smoothness::Singular);
    }
    match d.levi_fundamental_group_order(s)? {
        1 => Ok(Smoothness::Smooth(s.len())),
        m => Ok(Smoothness::OrbifoldOnly(m)),
    }
}

/// `φ(λ) = λ(Ξ)` with `Ξ = -Σ_p α∨_p`.
pub fn cone_height(d: &RootDatum, lambda: &Weight) -> Result<Rational64> {
    if d.central_rank() > 0 {
        return Err(Error::Unsupported(format!(
            "{} has a nontrivial centre; the height function is not proper",
            d.name()
        )));
    }
    d.check_dominant(lambda)?;
    Ok(Rational64::from_integer(-lambda.coeffs.iter().sum::<i64>()))
}

/// A point `(k, λ)` of `T*SU(n)` over the chamber.
#[derive(Debug, Clone)]
pub struct GroupPointSUn {
    pub k: CMatrix,
    pub lambda: Weight,
}

impl GroupPointSUn {
    pub fn new(k: CMatrix, lambda: Weight) -> Result<Self> {
        check_special_unitary(&k, UNITARY_TOL)?;
        if k.nrows() < 2 || lambda.coeffs.len() != k.nrows() - 1 {
            return Err(Error::WeightLength {
                expected: k.nrows().saturating_sub(1),
                got: lambda.coeffs.len(),
            });
        }
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.coeffs));
        }
        Ok(GroupPointSUn { k, lambda })
    }

    pub fn n(&self) -> usize {
        self.k.nrows()
    }
}

/// Whether `h` lies in `[K_σ,K_σ]`: block diagonal along the Levi blocks,
/// each block special unitary and singleton blocks equal to 1.
pub fn in_derived_levi(h: &CMatrix, vanishing: &[usize], tol: f64) -> bool {
    let n = h.nrows();
    let blocks = levi_blocks(n, vanishing);
    let block_of = |i: usize| blocks.iter().position(|b| b.contains(&i)).unwrap();
    for i in 0..n {
        for j in 0..n {
            if block_of(i) != block_of(j) && h[(i, j)].norm() > tol {
                return false;
            }
        }
    }
    blocks.into_iter().all(|b| {
        let m = h.view((b.start, b.start), (b.len(), b.len())).into_owned();
        check_special_unitary(&m, tol).is_ok()
    })
}

/// Implosion equivalence on `Φ^{-1}(t*_+)`: the right moment maps agree and
/// the points differ by an element of `[K_λ,K_λ]`. The implosion quotient
/// acts on the right, so the test is on `k1^{-1} k2`.
pub fn implode_equivalent_su_n(m1: &GroupPointSUn, m2: &GroupPointSUn) -> Result<bool> {
    for m in [m1, m2] {
        if !m.lambda.is_dominant() {
            return Err(Error::NotDominant(m.lambda.coeffs.clone()));
        }
    }
    if m1.n() != m2.n() || m1.lambda != m2.lambda {
        return Ok(false);
    }
    let face = face_of_su(&m1.lambda)?;
    let h = m1.k.adjoint() * &m2.k;
    Ok(in_derived_levi(&h, &face, EQUIVALENCE_TOL))
}

fn face_of_su(lambda: &Weight) -> Result<Vec<usize>> {
    let d = RootDatum::build("A", lambda.coeffs.len(), crate::rootdata::Isogeny::SimplyConnected)?;
    Ok(face_of(&d, lambda)?.vanishing)
}

/// Principal-stratum test for the `U(n)` action on `n × p` matrices: rows
/// pairwise orthogonal with strictly decreasing norms.
pub fn principal_stratum_membership_unp(rows: &[Vec<C64>]) -> bool {
    const ORTHO_TOL: f64 = 1e-9;
    const STRICT_MARGIN: f64 = 1e-12;
    let norm = |v: &[C64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for j in 0..rows.len() {
        for k in j + 1..rows.len() {
            let ip: C64 = rows[j].iter().zip(&rows[k]).map(|(a, b)| a * b.conj()).sum();
            if ip.norm() > ORTHO_TOL {
                return false;
            }
        }
    }
    rows.windows(2)
        .all(|w| norm(&w[0]) - norm(&w[1]) > STRICT_MARGIN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::Isogeny;

    fn sc(s: &str, r: usize) -> RootDatum {
        RootDatum::build(s, r, Isogeny::SimplyConnected).unwrap()
    }

    fn dims(d: &RootDatum) -> Vec<usize> {
        let mut v: Vec<usize> = universal_strata(d).unwrap().iter().map(|s| s.real_dim).collect();
        v.sort();
        v
    }

    #[test]
    fn strata_dimensions() {
        assert_eq!(dims(&sc("A", 1)), vec![0, 4]);
        assert_eq!(dims(&sc("A", 2)), vec![0, 6, 6, 10]);
        assert_eq!(dims(&RootDatum::unitary(2).unwrap()), vec![2, 6]);
    }

    #[test]
    fn open_stratum_has_full_dimension() {
        for d in [sc("A", 3), sc("B", 2), sc("G", 2)] {
            let s = universal_strata(&d).unwrap();
            let open = &s[0];
            assert!(open.face.vanishing.is_empty());
            assert_eq!(open.real_dim, d.dim_group() + d.rank_ss() + d.central_rank());
        }
    }

    #[test]
    fn smoothness_classes() {
        let a1 = sc("A", 1);
        assert_eq!(classify_smoothness(&a1, &Face::vertex(&a1)).unwrap(), Smoothness::Smooth(1));
        let a2 = sc("A", 2);
        assert_eq!(classify_smoothness(&a2, &Face::vertex(&a2)).unwrap(), Smoothness::Singular);
        let so3 = RootDatum::build("A", 1, Isogeny::Adjoint).unwrap();
        assert_eq!(
            classify_smoothness(&so3, &Face::vertex(&so3)).unwrap(),
            Smoothness::OrbifoldOnly(2)
        );
        let d4 = sc("D", 4);
        let f = Face::new(&d4, vec![0, 2, 3]).unwrap();
        assert_eq!(classify_smoothness(&d4, &f).unwrap(), Smoothness::Smooth(3));
    }

    #[test]
    fn heights() {
        let a1 = sc("A", 1);
        assert_eq!(cone_height(&a1, &Weight::new(vec![0])).unwrap(), Rational64::from_integer(0));
        assert_eq!(cone_height(&a1, &Weight::new(vec![3])).unwrap(), Rational64::from_integer(-3));
        let a2 = sc("A", 2);
        assert_eq!(cone_height(&a2, &Weight::new(vec![1, 1])).unwrap(), Rational64::from_integer(-2));
        assert!(cone_height(&RootDatum::unitary(2).unwrap(), &Weight::new(vec![1])).is_err());
    }

    #[test]
    fn su2_equivalence_examples() {
        let id = CMatrix::identity(2, 2);
        let minus = -CMatrix::identity(2, 2);
        let vertex = |k: &CMatrix| GroupPointSUn::new(k.clone(), Weight::new(vec![0])).unwrap();
        let inner = |k: &CMatrix| GroupPointSUn::new(k.clone(), Weight::new(vec![2])).unwrap();
        assert!(implode_equivalent_su_n(&inner(&id), &inner(&id)).unwrap());
        assert!(implode_equivalent_su_n(&vertex(&id), &vertex(&minus)).unwrap());
        assert!(!implode_equivalent_su_n(&inner(&id), &inner(&minus)).unwrap());
        assert!(!implode_equivalent_su_n(&vertex(&id), &inner(&id)).unwrap());
    }

    #[test]
    fn unp_principal_stratum() {
        let c = |x: f64| C64::new(x, 0.0);
        assert!(principal_stratum_membership_unp(&[vec![c(1.0), c(0.0)], vec![c(0.0), c(0.5)]]));
        assert!(!principal_stratum_membership_unp(&[vec![c(1.0), c(0.0)], vec![c(0.0), c(1.0)]]));
        assert!(!principal_stratum_membership_unp(&[vec![c(1.0), c(0.0)], vec![c(1.0), c(1.0)]]));
    }
}
