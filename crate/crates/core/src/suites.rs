//! Seeded verification suites. Each check draws from its own random stream,
//! so a suite is a pure function of `(group, seed, count)`.

use std::f64::consts::PI;
use std::str::FromStr;

use crate::basicaffine::{embed_su_n, hilbert_vs_weyl, section_point, su3_point_residual};
use crate::error::{Error, Result};
use crate::implosion::in_derived_levi;
use crate::numgeom::{self, check_rng, random_chamber_point, Verification};
use crate::rootdata::{cartan_matrix, RootDatum, Series};
use crate::su::{levi_blocks, random_su, CMatrix};

pub const SECTION_NORM_TOL: f64 = 1e-12;
pub const EQUIVARIANCE_TOL: f64 = 1e-10;
pub const INJECTIVITY_MARGIN: f64 = 1e-6;
pub const DESCENT_TOL: f64 = 1e-10;
pub const QUADRIC_TOL: f64 = 1e-12;
pub const S1_RESIDUAL_TOL: f64 = 1e-10;
pub const WALL_RANK_TOL: f64 = 1e-10;
pub const HILBERT_BOUND: u64 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Geometry,
    Contact,
    Embedding,
    Quadric,
    Hilbert,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Geometry,
        Suite::Contact,
        Suite::Embedding,
        Suite::Quadric,
        Suite::Hilbert,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Geometry => "geometry",
            Suite::Contact => "contact",
            Suite::Embedding => "embedding",
            Suite::Quadric => "quadric",
            Suite::Hilbert => "hilbert",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown suite `{s}`")))
    }
}

/// `n` when the datum is simply connected `SU(n)`.
pub fn special_unitary_size(d: &RootDatum) -> Option<usize> {
    let r = d.rank_ss();
    if r == 0 || d.central_rank() != 0 || !d.is_simply_connected() {
        return None;
    }
    let a = cartan_matrix(Series::A, r).ok()?;
    (d.cartan() == a.as_slice()).then_some(r + 1)
}

fn require_su(d: &RootDatum, allowed: &[usize]) -> Result<usize> {
    match special_unitary_size(d) {
        Some(n) if allowed.contains(&n) => Ok(n),
        _ => Err(Error::Unsupported(format!(
            "{} (need SU(n) with n in {allowed:?})",
            d.name()
        ))),
    }
}

pub fn run_suite(
    suite: Suite,
    d: &RootDatum,
    seed: u64,
    count: usize,
    tolerance: Option<f64>,
) -> Result<Vec<Verification>> {
    if count == 0 {
        return Err(Error::InvalidInput("count must be at least 1".into()));
    }
    if let Some(t) = tolerance {
        if t.is_nan() || t <= 0.0 {
            return Err(Error::InvalidInput("tolerance must be positive".into()));
        }
    }
    let tol = |default: f64| tolerance.unwrap_or(default);
    let check = |name: &str, residual: f64, default: f64| {
        Verification::residual(name, seed, count, residual, tol(default))
    };
    match suite {
        Suite::Geometry => {
            let n = require_su(d, &[2, 3])?;
            let zero = vec![0.0; n - 1];
            let rho = vec![1.0; n - 1];
            let (inside, wall) = numgeom::fatness_check(n, seed, count)?;
            let (speed, speed_res) = numgeom::s1_locally_free_check(n, seed, count)?;
            Ok(vec![
                check(
                    "pullback_one_form",
                    numgeom::check_pullback_one_form(n, seed, count)?,
                    numgeom::PULLBACK_TOL,
                ),
                check(
                    "moment_compatibility",
                    numgeom::check_moment_compatibility(n, seed, count)?,
                    numgeom::MOMENT_TOL,
                ),
                check(
                    "torus_moment_of_section",
                    numgeom::check_torus_moment(n, seed, count)?,
                    numgeom::TORUS_MOMENT_TOL,
                ),
                check(
                    "product_form_lambda0_zero",
                    numgeom::check_omega_product_form(n, seed, count, &zero)?,
                    numgeom::PRODUCT_FORM_TOL,
                ),
                check(
                    "product_form_lambda0_rho",
                    numgeom::check_omega_product_form(n, seed, count, &rho)?,
                    numgeom::PRODUCT_FORM_TOL,
                ),
                check("fatness", wall, WALL_RANK_TOL)
                    .with_lower_bound(inside, numgeom::FATNESS_MARGIN),
                check("circle_locally_free", speed_res, S1_RESIDUAL_TOL)
                    .with_lower_bound(speed, numgeom::S1_MARGIN),
            ])
        }
        Suite::Contact => {
            let c1 = numgeom::contact_reeb_check_cn(1, -0.5, seed, count)?;
            let c2 = numgeom::contact_reeb_check_cn(2, -1.0, seed, count)?;
            let cot = numgeom::contact_reeb_check_cotangent_su2(-1.0, seed, count)?;
            Ok(vec![
                check(
                    "contact_c1_level_-0.5",
                    c1.residual_dnu.max(c1.residual_nu),
                    numgeom::CONTACT_CN_TOL,
                ),
                check(
                    "contact_c2_level_-1",
                    c2.residual_dnu.max(c2.residual_nu),
                    numgeom::CONTACT_CN_TOL,
                ),
                check(
                    "reeb_hopf_tangency_c2",
                    c2.hopf.unwrap_or(f64::NAN),
                    numgeom::CONTACT_CN_TOL,
                ),
                check(
                    "contact_cotangent_su2_level_-1",
                    cot.residual_dnu.max(cot.residual_nu),
                    numgeom::CONTACT_COTANGENT_TOL,
                ),
            ])
        }
        Suite::Embedding => {
            let n = require_su(d, &[2, 3])?;
            let (inj_min, descent) = injectivity_check(n, seed, count)?;
            Ok(vec![
                check("section_norm", section_norm_check(n, seed, count)?, SECTION_NORM_TOL),
                check("equivariance", equivariance_check(n, seed, count)?, EQUIVARIANCE_TOL),
                check("injectivity_on_strata", descent, DESCENT_TOL)
                    .with_lower_bound(inj_min, INJECTIVITY_MARGIN),
            ])
        }
        Suite::Quadric => {
            require_su(d, &[3])?;
            Ok(vec![check("su3_quadric", quadric_check(seed, count)?, QUADRIC_TOL)])
        }
        Suite::Hilbert => {
            require_su(d, &[3])?;
            let mut worst = 0u64;
            for a in 0..=HILBERT_BOUND {
                for b in 0..=HILBERT_BOUND {
                    let h = hilbert_vs_weyl(a, b)?;
                    worst = worst.max(h.hilbert.abs_diff(h.weyl));
                }
            }
            let pairs = ((HILBERT_BOUND + 1) * (HILBERT_BOUND + 1)) as usize;
            Ok(vec![Verification::residual(
                "hilbert_vs_weyl",
                seed,
                pairs,
                worst as f64,
                tolerance.unwrap_or(0.0),
            )])
        }
    }
}

/// `|‖s(λ)‖^2 - Σ_p λ_p/π|`.
pub fn section_norm_check(n: usize, seed: u64, count: usize) -> Result<f64> {
    let mut rng = check_rng(seed, 20);
    let mut worst = 0.0f64;
    for _ in 0..count {
        let lambda = random_chamber_point(n - 1, 0.3, &mut rng);
        let v = section_point(&lambda)?;
        let expected: f64 = lambda.iter().sum::<f64>() / PI;
        worst = worst.max((v.norm().powi(2) - expected).abs());
    }
    Ok(worst)
}

/// `|F(k1 k2, λ) - k1·F(k2, λ)|`.
pub fn equivariance_check(n: usize, seed: u64, count: usize) -> Result<f64> {
    let mut rng = check_rng(seed, 21);
    let mut worst = 0.0f64;
    for _ in 0..count {
        let k1 = random_su(n, &mut rng);
        let k2 = random_su(n, &mut rng);
        let lambda = random_chamber_point(n - 1, 0.3, &mut rng);
        let lhs = embed_su_n(&(&k1 * &k2), &lambda)?;
        let rhs = embed_su_n(&k2, &lambda)?.act(&k1);
        worst = worst.max(lhs.sub(&rhs).norm());
    }
    Ok(worst)
}

/// Random element of `[K_σ,K_σ]` for the face with the given vanishing set.
pub fn random_derived_levi<R: rand::Rng + ?Sized>(n: usize, vanishing: &[usize], rng: &mut R) -> CMatrix {
    let mut h = CMatrix::zeros(n, n);
    for b in levi_blocks(n, vanishing) {
        let block = random_su(b.len(), rng);
        h.view_mut((b.start, b.start), (b.len(), b.len())).copy_from(&block);
    }
    h
}

/// Distinct classes map to distinct points, and equivalent points map to the
/// same point. Returns the smallest distance over inequivalent pairs and the
/// largest distance over equivalent pairs.
pub fn injectivity_check(n: usize, seed: u64, count: usize) -> Result<(f64, f64)> {
    let mut rng = check_rng(seed, 22);
    let mut min_apart = f64::INFINITY;
    let mut max_together = 0.0f64;
    for _ in 0..count {
        let k1 = random_su(n, &mut rng);
        let mut lambda = random_chamber_point(n - 1, 0.3, &mut rng);
        if lambda.iter().all(|&x| x == 0.0) {
            lambda[0] = 1.0;
        }
        let vanishing: Vec<usize> = (0..n - 1).filter(|&p| lambda[p] == 0.0).collect();
        let f1 = embed_su_n(&k1, &lambda)?;

        let k2 = random_su(n, &mut rng);
        if !in_derived_levi(&(k1.adjoint() * &k2), &vanishing, 1e-9) {
            min_apart = min_apart.min(f1.sub(&embed_su_n(&k2, &lambda)?).norm());
        }
        let h = random_derived_levi(n, &vanishing, &mut rng);
        let k3 = &k1 * h;
        max_together = max_together.max(f1.sub(&embed_su_n(&k3, &lambda)?).norm());
    }
    Ok((min_apart, max_together))
}

/// Largest quadric residual over random embedded points of SU(3).
pub fn quadric_check(seed: u64, count: usize) -> Result<f64> {
    let mut rng = check_rng(seed, 23);
    let mut worst = 0.0f64;
    for _ in 0..count {
        let k = random_su(3, &mut rng);
        let lambda = random_chamber_point(2, 0.3, &mut rng);
        worst = worst.max(su3_point_residual(&embed_su_n(&k, &lambda)?)?);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{parse_group, Isogeny};

    #[test]
    fn recognizes_special_unitary_data() {
        assert_eq!(special_unitary_size(&parse_group("A2").unwrap()), Some(3));
        assert_eq!(special_unitary_size(&parse_group("A1:adjoint").unwrap()), None);
        assert_eq!(special_unitary_size(&parse_group("B2").unwrap()), None);
        assert_eq!(special_unitary_size(&parse_group("U2").unwrap()), None);
        let d = RootDatum::build("A", 3, Isogeny::SimplyConnected).unwrap();
        assert_eq!(special_unitary_size(&d), Some(4));
    }

    #[test]
    fn all_suites_pass_at_small_counts() {
        let a1 = parse_group("A1").unwrap();
        let a2 = parse_group("A2").unwrap();
        for (suite, d) in [
            (Suite::Geometry, &a1),
            (Suite::Geometry, &a2),
            (Suite::Contact, &a1),
            (Suite::Embedding, &a1),
            (Suite::Embedding, &a2),
            (Suite::Quadric, &a2),
            (Suite::Hilbert, &a2),
        ] {
            for v in run_suite(suite, d, 17, 25, None).unwrap() {
                assert!(v.pass, "{v:?}");
            }
        }
    }

    #[test]
    fn rejects_unsupported_groups() {
        let b2 = parse_group("B2").unwrap();
        assert!(run_suite(Suite::Geometry, &b2, 1, 5, None).is_err());
        assert!(run_suite(Suite::Quadric, &parse_group("A1").unwrap(), 1, 5, None).is_err());
        assert!(run_suite(Suite::Hilbert, &parse_group("A2").unwrap(), 1, 0, None).is_err());
    }

    #[test]
    fn random_levi_elements_are_in_the_levi() {
        let mut rng = check_rng(3, 99);
        for s in [vec![], vec![0], vec![1], vec![0, 1]] {
            let h = random_derived_levi(3, &s, &mut rng);
            assert!(in_derived_levi(&h, &s, 1e-10));
        }
    }
}
