//! Floating-point checks of the symplectic identities on `T*SU(n)` and its
//! embedding into `E`, all from closed-form expressions.
//!
//! Tangent vectors at `(k, λ)` are pairs `(ξ, μ)` meaning the velocity of
//! `t ↦ (exp(tξ)k, λ + tμ)`. Both `λ` and `μ` are given by coroot pairings.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::basicaffine::{embed_su_n, k_moment, section_point, EmbeddedPoint};
use crate::error::{Error, Result};
use crate::su::{
    ad_inverse, coroot, fundamental_pairing, hermitian, lie_bracket, random_su,
    random_su_algebra, su_basis, weight_pairing, CMatrix, CVector, C64,
};

pub const PULLBACK_TOL: f64 = 1e-9;
pub const MOMENT_TOL: f64 = 1e-9;
pub const TORUS_MOMENT_TOL: f64 = 1e-12;
pub const PRODUCT_FORM_TOL: f64 = 1e-8;
pub const CONTACT_CN_TOL: f64 = 1e-10;
pub const CONTACT_COTANGENT_TOL: f64 = 1e-9;
pub const S1_MARGIN: f64 = 1e-6;
pub const FATNESS_MARGIN: f64 = 1e-8;

/// Outcome of one seeded check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verification {
    pub check_name: String,
    pub seed: u64,
    pub count: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Smallest observed value for checks that also need a lower bound.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
}

impl Verification {
    pub fn residual(name: &str, seed: u64, count: usize, max_residual: f64, tolerance: f64) -> Self {
        Verification {
            check_name: name.to_string(),
            seed,
            count,
            max_residual,
            tolerance,
            pass: max_residual.is_finite() && max_residual <= tolerance,
            min_value: None,
            threshold: None,
        }
    }

    /// Adds a lower bound `min_value > threshold` to the pass condition.
    pub fn with_lower_bound(mut self, min_value: f64, threshold: f64) -> Self {
        self.pass &= min_value > threshold;
        self.min_value = Some(min_value);
        self.threshold = Some(threshold);
        self
    }
}

/// Independent random stream for one check.
pub fn check_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Debug, Clone)]
pub struct TangentSample {
    pub k: CMatrix,
    pub lambda: Vec<f64>,
    pub xi: CMatrix,
    pub mu: Vec<f64>,
}

impl TangentSample {
    pub fn n(&self) -> usize {
        self.k.nrows()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if self.lambda.len() + 1 != n || self.mu.len() + 1 != n {
            return Err(Error::InvalidSample("dimension mismatch".into()));
        }
        if (self.xi.adjoint() + &self.xi).norm() > 1e-12 {
            return Err(Error::InvalidSample("ξ is not anti-Hermitian".into()));
        }
        for (p, (&l, &m)) in self.lambda.iter().zip(&self.mu).enumerate() {
            if l < 0.0 {
                return Err(Error::InvalidSample(format!("λ has negative pairing at {p}")));
            }
            if l == 0.0 && m != 0.0 {
                return Err(Error::InvalidSample(format!(
                    "μ has a component along the vanishing direction {p}"
                )));
            }
        }
        Ok(())
    }
}

/// Dominant pairings in `[1/4, 4]`, with each coordinate set to zero with
/// probability `wall_prob`.
pub fn random_chamber_point<R: Rng + ?Sized>(r: usize, wall_prob: f64, rng: &mut R) -> Vec<f64> {
    (0..r)
        .map(|_| {
            let on_wall = rng.random::<f64>() < wall_prob;
            let v = rng.random_range(0.25..=4.0);
            if on_wall {
                0.0
            } else {
                v
            }
        })
        .collect()
}

fn random_mu<R: Rng + ?Sized>(lambda: &[f64], rng: &mut R) -> Vec<f64> {
    lambda
        .iter()
        .map(|&l| {
            let m: f64 = rng.sample(StandardNormal);
            if l == 0.0 {
                0.0
            } else {
                m
            }
        })
        .collect()
}

pub fn random_sample<R: Rng + ?Sized>(n: usize, wall_prob: f64, rng: &mut R) -> TangentSample {
    let k = random_su(n, rng);
    let lambda = random_chamber_point(n - 1, wall_prob, rng);
    let xi = random_su_algebra(n, rng);
    let mu = random_mu(&lambda, rng);
    TangentSample { k, lambda, xi, mu }
}

/// `β_{(k,λ)}(ξ, μ) = λ(Ad(k^{-1})ξ)`.
pub fn beta_eval(s: &TangentSample) -> f64 {
    weight_pairing(&s.lambda, &ad_inverse(&s.k, &s.xi))
}

/// `β_E(v)(w) = -½ Im⟨v, w⟩`.
pub fn beta_e(v: &EmbeddedPoint, w: &EmbeddedPoint) -> f64 {
    -0.5 * v.inner(w).im
}

/// `ω_E(a, b) = -Im⟨a, b⟩`.
pub fn omega_e(a: &EmbeddedPoint, b: &EmbeddedPoint) -> f64 {
    -a.inner(b).im
}

/// `F_*(ξ, μ) = ξ_E(F(k,λ)) + k·Σ_p μ_p/(2 sqrt(π λ_p)) v_p`.
pub fn pushforward(s: &TangentSample) -> Result<EmbeddedPoint> {
    s.validate()?;
    let f = embed_su_n(&s.k, &s.lambda)?;
    let mut radial = EmbeddedPoint::zero(s.n());
    for (p, (&l, &m)) in s.lambda.iter().zip(&s.mu).enumerate() {
        if l > 0.0 {
            radial.modules[p][0] = C64::new(m / (2.0 * (PI * l).sqrt()), 0.0);
        }
    }
    let moved = f.lie(&s.xi);
    let radial = radial.act(&s.k);
    Ok(EmbeddedPoint {
        modules: moved
            .modules
            .iter()
            .zip(&radial.modules)
            .map(|(a, b)| a + b)
            .collect(),
    })
}

/// `μ1(η2) - μ2(η1) - λ([η1, η2])` with `η_i = Ad(k^{-1})ξ_i`.
pub fn product_form(lambda: &[f64], s1: &TangentSample, s2: &TangentSample) -> f64 {
    let e1 = ad_inverse(&s1.k, &s1.xi);
    let e2 = ad_inverse(&s2.k, &s2.xi);
    weight_pairing(&s1.mu, &e2) - weight_pairing(&s2.mu, &e1)
        - weight_pairing(lambda, &lie_bracket(&e1, &e2))
}

fn require_small_n(n: usize) -> Result<()> {
    if !(2..=3).contains(&n) {
        return Err(Error::Unsupported(format!("numerical checks need SU(2) or SU(3), got SU({n})")));
    }
    Ok(())
}

/// `f^*β_E = β` on random samples, faces included.
pub fn check_pullback_one_form(n: usize, seed: u64, count: usize) -> Result<f64> {
    require_small_n(n)?;
    let mut rng = check_rng(seed, 1);
    let mut worst = 0.0f64;
    for _ in 0..count {
        let s = random_sample(n, 0.3, &mut rng);
        let f = embed_su_n(&s.k, &s.lambda)?;
        let lhs = beta_e(&f, &pushforward(&s)?);
        worst = worst.max((lhs - beta_eval(&s)).abs());
    }
    Ok(worst)
}

/// `Φ_E^ξ(F(k,λ)) = -(Ad*(k)λ)(ξ)` over a basis of `su(n)`.
pub fn check_moment_compatibility(n: usize, seed: u64, count: usize) -> Result<f64> {
    require_small_n(n)?;
    let mut rng = check_rng(seed, 2);
    let basis = su_basis(n);
    let mut worst = 0.0f64;
    for _ in 0..count {
        let s = random_sample(n, 0.3, &mut rng);
        let f = embed_su_n(&s.k, &s.lambda)?;
        for x in &basis {
            let expected = -weight_pairing(&s.lambda, &ad_inverse(&s.k, x));
            worst = worst.max((k_moment(&f, x) - expected).abs());
        }
    }
    Ok(worst)
}

/// Torus moment of `s(λ)` is `-λ`.
pub fn check_torus_moment(n: usize, seed: u64, count: usize) -> Result<f64> {
    require_small_n(n)?;
    let mut rng = check_rng(seed, 3);
    let mut worst = 0.0f64;
    for _ in 0..count {
        let lambda = random_chamber_point(n - 1, 0.3, &mut rng);
        let v = section_point(&lambda)?;
        for (q, l) in lambda.iter().enumerate() {
            worst = worst.max((k_moment(&v, &coroot(n, q)) + l).abs());
        }
    }
    Ok(worst)
}

/// `ω_E(F_*u1, F_*u2) - λ0([η1,η2])` against the product form at
/// `λ = λ0 + λ'`, where `F` is evaluated at `λ'`.
pub fn check_omega_product_form(n: usize, seed: u64, count: usize, lambda0: &[f64]) -> Result<f64> {
    require_small_n(n)?;
    if lambda0.len() + 1 != n || lambda0.iter().any(|&x| x < 0.0) {
        return Err(Error::InvalidInput("λ0 must be a chamber point of matching rank".into()));
    }
    let mut rng = check_rng(seed, 4);
    let mut worst = 0.0f64;
    for _ in 0..count {
        let s1 = random_sample(n, 0.3, &mut rng);
        let xi2 = random_su_algebra(n, &mut rng);
        let mu2 = random_mu(&s1.lambda, &mut rng);
        let s2 = TangentSample {
            xi: xi2,
            mu: mu2,
            ..s1.clone()
        };
        let lhs = omega_e(&pushforward(&s1)?, &pushforward(&s2)?);
        let orbit = -weight_pairing(
            lambda0,
            &lie_bracket(&ad_inverse(&s1.k, &s1.xi), &ad_inverse(&s2.k, &s2.xi)),
        );
        let lambda: Vec<f64> = s1.lambda.iter().zip(lambda0).map(|(a, b)| a + b).collect();
        worst = worst.max((lhs + orbit - product_form(&lambda, &s1, &s2)).abs());
    }
    Ok(worst)
}

/// Smallest singular value of the product form on the basis
/// `(su(n) × 0) ∪ (0 × t*)` of the open-stratum tangent space at `(1, λ)`.
pub fn product_form_min_singular_value(lambda: &[f64]) -> f64 {
    let n = lambda.len() + 1;
    let id = CMatrix::identity(n, n);
    let zero_mu = vec![0.0; n - 1];
    let mut basis: Vec<TangentSample> = su_basis(n)
        .into_iter()
        .map(|xi| TangentSample {
            k: id.clone(),
            lambda: lambda.to_vec(),
            xi,
            mu: zero_mu.clone(),
        })
        .collect();
    for p in 0..n - 1 {
        let mut mu = zero_mu.clone();
        mu[p] = 1.0;
        basis.push(TangentSample {
            k: id.clone(),
            lambda: lambda.to_vec(),
            xi: CMatrix::zeros(n, n),
            mu,
        });
    }
    let m = DMatrix::from_fn(basis.len(), basis.len(), |a, b| {
        product_form(lambda, &basis[a], &basis[b])
    });
    m.singular_values().min()
}

/// Fatness: full rank at interior points, rank drop on walls. Returns the
/// smallest singular value over interior samples and the largest smallest
/// singular value over wall samples.
pub fn fatness_check(n: usize, seed: u64, count: usize) -> Result<(f64, f64)> {
    require_small_n(n)?;
    let mut rng = check_rng(seed, 5);
    let mut interior_min = f64::INFINITY;
    let mut wall_max = 0.0f64;
    for _ in 0..count {
        let mut lambda = random_chamber_point(n - 1, 0.0, &mut rng);
        interior_min = interior_min.min(product_form_min_singular_value(&lambda));
        let p = rng.random_range(0..n - 1);
        lambda[p] = 0.0;
        wall_max = wall_max.max(product_form_min_singular_value(&lambda));
    }
    Ok((interior_min, wall_max))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContactResiduals {
    pub residual_dnu: f64,
    pub residual_nu: f64,
    /// `|dh(R)|` for the Hopf map `h`, only on `C^2`.
    pub hopf: Option<f64>,
}

fn random_cvec<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CVector {
    CVector::from_fn(dim, |_, _| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
}

/// Contact structure on the level `φ = c` of `C^dim`, where
/// `β = -½ Im⟨z, ·⟩`, `Ξ(z) = iz` and `φ(z) = -½|z|^2`.
pub fn contact_reeb_check_cn(dim: usize, c: f64, seed: u64, count: usize) -> Result<ContactResiduals> {
    if c == 0.0 {
        return Err(Error::InvalidInput("c = 0 is not a regular value".into()));
    }
    if c > 0.0 {
        return Err(Error::InvalidInput(format!("level {c} of -|z|^2/2 is empty")));
    }
    if dim == 0 {
        return Err(Error::InvalidInput("dimension must be positive".into()));
    }
    let mut rng = check_rng(seed, 6);
    let radius = (-2.0 * c).sqrt();
    let i = C64::new(0.0, 1.0);
    let ip = |a: &CVector, b: &CVector| hermitian(a.as_slice(), b.as_slice());
    let (mut dnu, mut nu, mut hopf) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..count {
        let g = random_cvec(dim, &mut rng);
        let z = &g * C64::new(radius / g.norm(), 0.0);
        let w = random_cvec(dim, &mut rng);
        // project onto the level set tangent: Re⟨z, v⟩ = 0
        let v = &w - &z * C64::new(ip(&w, &z).re / z.norm_squared(), 0.0);
        let xi = &z * i;
        dnu = dnu.max((-ip(&xi, &v).im).abs());
        let reeb = &xi * C64::new(-1.0 / c, 0.0);
        let beta = -0.5 * ip(&z, &reeb).im;
        nu = nu.max((beta - 1.0).abs());
        if dim == 2 {
            hopf = hopf.max(hopf_differential(&z, &reeb));
        }
    }
    Ok(ContactResiduals {
        residual_dnu: dnu,
        residual_nu: nu,
        hopf: (dim == 2).then_some(hopf),
    })
}

/// `|dh_z(v)|` for `h(z) = (2 z1 conj(z2), |z1|^2 - |z2|^2)`.
fn hopf_differential(z: &CVector, v: &CVector) -> f64 {
    let d12 = v[0] * z[1].conj() + z[0] * v[1].conj();
    let d3 = 2.0 * (z[0].conj() * v[0]).re - 2.0 * (z[1].conj() * v[1]).re;
    (4.0 * d12.norm_sqr() + d3 * d3).sqrt()
}

/// Contact structure on the level `λ(Ξ) = c` of `T^×SU(2)` in the left
/// trivialization. `λ ∈ k*` is a traceless Hermitian `L` with
/// `λ(X) = Im tr(L X)`; `Ξ = -α∨` acts by `(η, ν) = (-Ξ, ad*_Ξ λ)`.
pub fn contact_reeb_check_cotangent_su2(c: f64, seed: u64, count: usize) -> Result<ContactResiduals> {
    if c == 0.0 {
        return Err(Error::InvalidInput("c = 0 is not a regular value".into()));
    }
    let n = 2;
    let mut rng = check_rng(seed, 7);
    let xi = -coroot(n, 0);
    let diag = CMatrix::from_diagonal(&CVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(-1.0, 0.0)]));
    let pair = |l: &CMatrix, x: &CMatrix| (l * x).trace().im;
    let d_xi = pair(&diag, &xi);
    let random_dual = |rng: &mut ChaCha8Rng| {
        let x = random_su_algebra(n, rng);
        x * C64::new(0.0, 1.0)
    };
    // ω((η1,ν1),(η2,ν2)) = ν1(η2) - ν2(η1) - λ([η1,η2])
    let omega = |l: &CMatrix, a: (&CMatrix, &CMatrix), b: (&CMatrix, &CMatrix)| {
        pair(a.1, b.0) - pair(b.1, a.0) - pair(l, &lie_bracket(a.0, b.0))
    };
    let (mut dnu, mut nu) = (0.0f64, 0.0f64);
    for _ in 0..count {
        let mut l = random_dual(&mut rng);
        l += &diag * C64::new((c - pair(&l, &xi)) / d_xi, 0.0);
        let eta = random_su_algebra(n, &mut rng);
        let mut dl = random_dual(&mut rng);
        dl -= &diag * C64::new(pair(&dl, &xi) / d_xi, 0.0);
        // Ξ_M in the left trivialization; ad*_Ξ λ ↔ 2π[Ξ, L]
        let gen_eta = -xi.clone();
        let gen_nu = (&xi * &l - &l * &xi) * C64::new(2.0 * PI, 0.0);
        dnu = dnu.max(omega(&l, (&gen_eta, &gen_nu), (&eta, &dl)).abs());
        let beta_reeb = pair(&l, &gen_eta) * (-1.0 / c);
        nu = nu.max((beta_reeb - 1.0).abs());
    }
    Ok(ContactResiduals {
        residual_dnu: dnu,
        residual_nu: nu,
        hopf: None,
    })
}

/// Speed of the circle generated by `Ξ = -Σ α∨_p` at random embedded points
/// off the vertex, with its closed form `2π|v|` as a residual.
pub fn s1_locally_free_check(n: usize, seed: u64, count: usize) -> Result<(f64, f64)> {
    require_small_n(n)?;
    let mut rng = check_rng(seed, 8);
    let xi: CMatrix = (0..n - 1).fold(CMatrix::zeros(n, n), |acc, p| acc - coroot(n, p));
    let mut min_speed = f64::INFINITY;
    let mut residual = 0.0f64;
    for _ in 0..count {
        let k = random_su(n, &mut rng);
        let mut lambda = random_chamber_point(n - 1, 0.3, &mut rng);
        if lambda.iter().all(|&x| x == 0.0) {
            lambda[rng.random_range(0..n - 1)] = rng.random_range(0.25..=4.0);
        }
        let v = embed_su_n(&k, &lambda)?;
        let speed = circle_speed(&v, &xi)?;
        min_speed = min_speed.min(speed);
        residual = residual.max((speed - 2.0 * PI * v.norm()).abs());
    }
    Ok((min_speed, residual))
}

/// `|Ξ_E v|` where `Ξ` acts on the summand `Λ^p` by `2πi(-ϖ_p(Ξ))`.
pub fn circle_speed(v: &EmbeddedPoint, xi: &CMatrix) -> Result<f64> {
    if v.norm() == 0.0 {
        return Err(Error::InvalidSample("the vertex is fixed by the circle".into()));
    }
    let sq: f64 = v
        .modules
        .iter()
        .enumerate()
        .map(|(p, m)| {
            let w = -fundamental_pairing(xi, p);
            (2.0 * PI * w).powi(2) * m.norm_squared()
        })
        .sum();
    Ok(sq.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_on_torus_directions() {
        let n = 3;
        let lambda = vec![1.5, 0.5];
        let id = CMatrix::identity(n, n);
        let s = TangentSample {
            k: id.clone(),
            lambda: lambda.clone(),
            xi: coroot(n, 1),
            mu: vec![0.0, 0.0],
        };
        assert!((beta_eval(&s) - 0.5).abs() < 1e-15);
        let off = TangentSample {
            xi: su_basis(n)[2].clone(),
            ..s.clone()
        };
        assert_eq!(beta_eval(&off), 0.0);
        let scaled = TangentSample {
            lambda: vec![3.0, 1.0],
            ..s.clone()
        };
        assert!((beta_eval(&scaled) - 2.0 * beta_eval(&s)).abs() < 1e-15);
    }

    #[test]
    fn zero_vector_has_zero_residual() {
        let mut rng = check_rng(1, 0);
        let mut s = random_sample(2, 0.0, &mut rng);
        s.xi = CMatrix::zeros(2, 2);
        s.mu = vec![0.0];
        let f = embed_su_n(&s.k, &s.lambda).unwrap();
        assert_eq!(beta_e(&f, &pushforward(&s).unwrap()), 0.0);
        assert_eq!(beta_eval(&s), 0.0);
    }

    #[test]
    fn mu_along_a_wall_is_rejected() {
        let s = TangentSample {
            k: CMatrix::identity(2, 2),
            lambda: vec![0.0],
            xi: CMatrix::zeros(2, 2),
            mu: vec![1.0],
        };
        assert!(matches!(pushforward(&s), Err(Error::InvalidSample(_))));
    }

    #[test]
    fn identities_hold_on_small_samples() {
        for n in [2, 3] {
            assert!(check_pullback_one_form(n, 5, 30).unwrap() < PULLBACK_TOL);
            assert!(check_moment_compatibility(n, 5, 30).unwrap() < MOMENT_TOL);
            assert!(check_torus_moment(n, 5, 30).unwrap() < TORUS_MOMENT_TOL);
            let zero = vec![0.0; n - 1];
            let rho = vec![1.0; n - 1];
            assert!(check_omega_product_form(n, 5, 30, &zero).unwrap() < PRODUCT_FORM_TOL);
            assert!(check_omega_product_form(n, 5, 30, &rho).unwrap() < PRODUCT_FORM_TOL);
        }
    }

    #[test]
    fn antisymmetry_of_the_embedded_form() {
        let mut rng = check_rng(9, 0);
        let s = random_sample(3, 0.0, &mut rng);
        let u = pushforward(&s).unwrap();
        assert_eq!(omega_e(&u, &u), 0.0);
    }

    #[test]
    fn contact_examples() {
        let r = contact_reeb_check_cn(1, -0.5, 1, 50).unwrap();
        assert!(r.residual_dnu < CONTACT_CN_TOL && r.residual_nu < CONTACT_CN_TOL);
        let r = contact_reeb_check_cn(2, -1.0, 1, 50).unwrap();
        assert!(r.hopf.unwrap() < CONTACT_CN_TOL);
        let r = contact_reeb_check_cotangent_su2(-1.0, 1, 50).unwrap();
        assert!(r.residual_dnu < CONTACT_COTANGENT_TOL && r.residual_nu < CONTACT_COTANGENT_TOL);
        assert!(contact_reeb_check_cn(2, 0.0, 1, 1).is_err());
        assert!(contact_reeb_check_cotangent_su2(0.0, 1, 1).is_err());
    }

    #[test]
    fn circle_acts_locally_freely() {
        let (speed, res) = s1_locally_free_check(3, 2, 40).unwrap();
        assert!(speed > S1_MARGIN);
        assert!(res < 1e-12);
        let xi = -coroot(2, 0);
        assert!(circle_speed(&EmbeddedPoint::zero(2), &xi).is_err());
    }

    #[test]
    fn fat_exactly_off_the_walls() {
        for n in [2, 3] {
            let (inside, wall) = fatness_check(n, 4, 20).unwrap();
            assert!(inside > FATNESS_MARGIN);
            assert!(wall < 1e-12);
        }
    }
}
