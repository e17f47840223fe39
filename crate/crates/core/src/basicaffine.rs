//! The affine model of the universal imploded cross-section: the module
//! `E = ⊕ V_ϖ`, the section `s`, the SU(n) embedding `F(k, λ) = k·s(λ)`
//! and the algebraic checks that go with it.

use std::f64::consts::PI;

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::chamber::{face_of_pairings, Face};
use crate::error::{Error, Result};
use crate::implosion::derived_parabolic_dim;
use crate::rootdata::{Isogeny, RootDatum, Weight};
use crate::su::{
    check_special_unitary, compound, coroot, derived, hermitian, lie_action, CMatrix, CVector,
    C64, UNITARY_TOL,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleESpec {
    /// Highest weights of the summands with their dimensions.
    pub generators: Vec<(Weight, u64)>,
}

/// Generators of `C[G]^N`: the fundamental weights for a simply connected
/// semisimple group, `±κ_i` for a torus.
pub fn module_e_spec(d: &RootDatum) -> Result<ModuleESpec> {
    if d.rank_ss() == 0 {
        let k = d.central_rank();
        let mut generators = Vec::with_capacity(2 * k);
        for i in 0..k {
            for sign in [1, -1] {
                let mut c = vec![Rational64::zero(); k];
                c[i] = Rational64::from_integer(sign);
                generators.push((Weight::with_central(Vec::new(), c), 1));
            }
        }
        return Ok(ModuleESpec { generators });
    }
    if !d.is_semisimple() || !d.is_simply_connected() {
        return Err(Error::Unsupported(format!(
            "{} is not simply connected semisimple or a torus",
            d.name()
        )));
    }
    let generators = (0..d.rank_ss())
        .map(|p| {
            let w = d.fundamental_weight(p);
            let dim = d.weyl_dimension(&w)?;
            Ok((w, dim))
        })
        .collect::<Result<_>>()?;
    Ok(ModuleESpec { generators })
}

/// A real point of the closed chamber, given by its coroot pairings and its
/// central coordinates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChamberPoint {
    pub pairings: Vec<f64>,
    pub central: Vec<f64>,
}

impl ChamberPoint {
    pub fn new(pairings: Vec<f64>) -> Self {
        ChamberPoint {
            pairings,
            central: Vec::new(),
        }
    }

    pub fn from_weight(lambda: &Weight) -> Self {
        ChamberPoint {
            pairings: lambda.coeffs.iter().map(|&c| c as f64).collect(),
            central: lambda
                .central
                .iter()
                .map(|c| c.to_f64().unwrap_or(f64::NAN))
                .collect(),
        }
    }

    pub fn face(&self, d: &RootDatum) -> Result<Face> {
        face_of_pairings(d, &self.pairings)
    }
}

/// `χ(t) = sqrt(t + sqrt(t^2 + 1))`, so that `χ^2 - χ^{-2} = 2t`.
pub fn chi(t: f64) -> f64 {
    // t + hypot(t, 1) loses precision for large negative t
    if t >= 0.0 {
        (t + t.hypot(1.0)).sqrt()
    } else {
        1.0 / (-t + t.hypot(1.0)).sqrt()
    }
}

/// Coefficients of `s(λ)` on the highest weight vectors. Semisimple part:
/// `sqrt(⟨λ,α∨_p⟩/π)` on `v_p`. Central part: the pair
/// `(χ(t), 1/χ(t))/sqrt(2π)` on `(v_{+κ}, v_{-κ})` for each coordinate `t`.
pub fn section_s(d: &RootDatum, lambda: &ChamberPoint) -> Result<Vec<f64>> {
    if lambda.pairings.len() != d.rank_ss() {
        return Err(Error::WeightLength {
            expected: d.rank_ss(),
            got: lambda.pairings.len(),
        });
    }
    if d.rank_ss() > 0 {
        lambda.face(d)?;
    }
    let mut out: Vec<f64> = lambda.pairings.iter().map(|l| (l / PI).sqrt()).collect();
    let scale = 1.0 / (2.0 * PI).sqrt();
    for &t in &lambda.central {
        let c = chi(t);
        out.push(scale * c);
        out.push(scale / c);
    }
    Ok(out)
}

/// A point of `E = ⊕_{p=1}^{n-1} Λ^p C^n`, one coefficient vector per summand.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedPoint {
    pub modules: Vec<CVector>,
}

impl EmbeddedPoint {
    pub fn zero(n: usize) -> Self {
        let modules = (1..n)
            .map(|p| CVector::zeros(crate::su::subsets(n, p).len()))
            .collect();
        EmbeddedPoint { modules }
    }

    pub fn flatten(&self) -> Vec<C64> {
        self.modules.iter().flat_map(|m| m.iter().copied()).collect()
    }

    pub fn norm(&self) -> f64 {
        self.modules.iter().map(|m| m.norm_squared()).sum::<f64>().sqrt()
    }

    pub fn sub(&self, other: &EmbeddedPoint) -> EmbeddedPoint {
        EmbeddedPoint {
            modules: self
                .modules
                .iter()
                .zip(&other.modules)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Applies `k` through its exterior powers.
    pub fn act(&self, k: &CMatrix) -> EmbeddedPoint {
        EmbeddedPoint {
            modules: self
                .modules
                .iter()
                .enumerate()
                .map(|(i, m)| compound(k, i + 1) * m)
                .collect(),
        }
    }

    /// Infinitesimal action `ξ_E`.
    pub fn lie(&self, x: &CMatrix) -> EmbeddedPoint {
        EmbeddedPoint {
            modules: self
                .modules
                .iter()
                .enumerate()
                .map(|(i, m)| lie_action(x, i + 1) * m)
                .collect(),
        }
    }

    pub fn inner(&self, other: &EmbeddedPoint) -> C64 {
        hermitian(&self.flatten(), &other.flatten())
    }
}

/// `s(λ)` for SU(n) as a vector in `E`.
pub fn section_point(pairings: &[f64]) -> Result<EmbeddedPoint> {
    let n = pairings.len() + 1;
    let d = RootDatum::build("A", n - 1, Isogeny::SimplyConnected)?;
    let coeffs = section_s(&d, &ChamberPoint::new(pairings.to_vec()))?;
    let mut v = EmbeddedPoint::zero(n);
    for (m, c) in v.modules.iter_mut().zip(coeffs) {
        m[0] = C64::new(c, 0.0);
    }
    Ok(v)
}

/// `F(k, λ) = k·s(λ)`.
pub fn embed_su_n(k: &CMatrix, pairings: &[f64]) -> Result<EmbeddedPoint> {
    check_special_unitary(k, UNITARY_TOL)?;
    if k.nrows() != pairings.len() + 1 {
        return Err(Error::WeightLength {
            expected: k.nrows().saturating_sub(1),
            got: pairings.len(),
        });
    }
    Ok(section_point(pairings)?.act(k))
}

/// Moments of a point of `E`: `Φ^ξ(v) = -½ Im⟨ξ_E v, v⟩` for the given `ξ`,
/// and the torus moment as coroot pairings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AmbientMoments {
    pub k_moment: f64,
    pub t_moment: Vec<f64>,
}

pub fn k_moment(v: &EmbeddedPoint, x: &CMatrix) -> f64 {
    -0.5 * v.lie(x).inner(v).im
}

pub fn ambient_moments(v: &EmbeddedPoint, x: &CMatrix) -> AmbientMoments {
    let n = v.modules.len() + 1;
    AmbientMoments {
        k_moment: k_moment(v, x),
        t_moment: (0..n - 1).map(|q| k_moment(v, &coroot(n, q))).collect(),
    }
}

/// Coordinates `(w, z)` of a point of `C^3 ⊕ Λ^2 C^3`, with
/// `z = (e2∧e3, -e1∧e3, e1∧e2)` coefficients.
pub fn su3_coordinates(v: &EmbeddedPoint) -> Result<([C64; 3], [C64; 3])> {
    if v.modules.len() != 2 || v.modules[0].len() != 3 || v.modules[1].len() != 3 {
        return Err(Error::InvalidInput("expected a point of C^3 ⊕ Λ^2 C^3".into()));
    }
    let w = [v.modules[0][0], v.modules[0][1], v.modules[0][2]];
    // Λ^2 basis order: e1∧e2, e1∧e3, e2∧e3
    let l = &v.modules[1];
    let z = [l[2], -l[1], l[0]];
    Ok((w, z))
}

/// `|Σ_k w_k z_k|`.
pub fn su3_quadric_residual(w: &[C64; 3], z: &[C64; 3]) -> f64 {
    w.iter().zip(z).map(|(a, b)| a * b).sum::<C64>().norm()
}

pub fn su3_point_residual(v: &EmbeddedPoint) -> Result<f64> {
    let (w, z) = su3_coordinates(v)?;
    Ok(su3_quadric_residual(&w, &z))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StabilizerDims {
    pub computed: usize,
    pub expected: usize,
    pub equal: bool,
}

/// Complex dimension of the stabilizer of `v_σ = Σ_{p ∉ S_σ} v_p` in
/// `sl(n, C)`, computed as an exact nullity, against `dim [P_σ,P_σ]`.
pub fn v_sigma_stabilizer_dim(n: usize, sigma: &Face) -> Result<StabilizerDims> {
    if n < 2 {
        return Err(Error::InvalidInput("need n >= 2".into()));
    }
    let d = RootDatum::build("A", n - 1, Isogeny::SimplyConnected)?;
    let sigma = Face::new(&d, sigma.vanishing.clone())?;

    // sl(n, C) basis with integer entries
    let mut basis: Vec<CMatrix> = Vec::new();
    for j in 0..n - 1 {
        let mut m = CMatrix::zeros(n, n);
        m[(j, j)] = C64::new(1.0, 0.0);
        m[(j + 1, j + 1)] = C64::new(-1.0, 0.0);
        basis.push(m);
    }
    for j in 0..n {
        for k in 0..n {
            if j != k {
                let mut m = CMatrix::zeros(n, n);
                m[(j, k)] = C64::new(1.0, 0.0);
                basis.push(m);
            }
        }
    }

    // columns: images ξ·v_σ, stacked over the summands Λ^p
    let mut columns: Vec<Vec<i64>> = Vec::with_capacity(basis.len());
    for x in &basis {
        let mut col = Vec::new();
        for p in 1..n {
            let a = derived(x, p);
            let included = !sigma.contains_index(p - 1);
            for row in 0..a.nrows() {
                let entry = if included { a[(row, 0)].re } else { 0.0 };
                col.push(entry.round() as i64);
            }
        }
        columns.push(col);
    }
    let rank = exact_rank(&columns);
    let computed = basis.len() - rank;
    let expected = derived_parabolic_dim(&d, &sigma);
    Ok(StabilizerDims {
        computed,
        expected,
        equal: computed == expected,
    })
}

fn exact_rank(columns: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Rational64>> = columns
        .iter()
        .map(|c| c.iter().map(|&x| Rational64::from_integer(x)).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c];
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = m[i][c] / pivot;
                for j in c..cols {
                    let v = m[rank][j];
                    m[i][j] -= f * v;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HilbertCheck {
    pub hilbert: u64,
    pub weyl: u64,
    pub equal: bool,
}

/// Bigraded Hilbert function of `C[w, z]/(Σ w_k z_k)` in degree `(a, b)`
/// against `dim V_{(a,b)}` for SU(3).
pub fn hilbert_vs_weyl(a: u64, b: u64) -> Result<HilbertCheck> {
    let sym = |k: u64| (k + 1) * (k + 2) / 2;
    let lower = if a > 0 && b > 0 { sym(a - 1) * sym(b - 1) } else { 0 };
    let hilbert = sym(a) * sym(b) - lower;
    let d = RootDatum::build("A", 2, Isogeny::SimplyConnected)?;
    let to_i = |x: u64| i64::try_from(x).map_err(|_| Error::Overflow("weight"));
    let weyl = d.weyl_dimension(&Weight::new(vec![to_i(a)?, to_i(b)?]))?;
    Ok(HilbertCheck {
        hilbert,
        weyl,
        equal: hilbert == weyl,
    })
}
