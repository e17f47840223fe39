//! Character-level quantization: tensor products, N-invariants, holomorphic
//! induction and the symplectic cut of a moment image.
//!
//! Characters are keyed by semisimple fundamental coordinates.

mod lr;

use std::collections::btree_map::{BTreeMap, Entry};

use num_rational::Rational64;
use num_traits::Zero;

use crate::chamber::Face;
use crate::error::{Error, Result};
use crate::rootdata::{RootDatum, Weight, WeylCap};

pub use lr::{lr_coefficients_type_a, partition_to_weight, weight_to_partition};

macro_rules! int_map {
    ($(#[$m:meta])* $name:ident) => {
        $(#[$m])*
        #[derive(Debug, Clone, PartialEq, Eq, Default)]
        pub struct $name(BTreeMap<Vec<i64>, i64>);

        impl $name {
            pub fn new() -> Self {
                Self::default()
            }

            /// Adds `m` to the multiplicity of `w`, dropping zero entries.
            pub fn add(&mut self, w: Vec<i64>, m: i64) {
                if m == 0 {
                    return;
                }
                match self.0.entry(w) {
                    Entry::Occupied(mut e) => {
                        *e.get_mut() += m;
                        if *e.get() == 0 {
                            e.remove();
                        }
                    }
                    Entry::Vacant(e) => {
                        e.insert(m);
                    }
                }
            }

            pub fn get(&self, w: &[i64]) -> i64 {
                self.0.get(w).copied().unwrap_or(0)
            }

            pub fn iter(&self) -> impl Iterator<Item = (&Vec<i64>, &i64)> {
                self.0.iter()
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn as_map(&self) -> &BTreeMap<Vec<i64>, i64> {
                &self.0
            }
        }

        impl FromIterator<(Vec<i64>, i64)> for $name {
            fn from_iter<I: IntoIterator<Item = (Vec<i64>, i64)>>(iter: I) -> Self {
                let mut out = Self::new();
                for (w, m) in iter {
                    out.add(w, m);
                }
                out
            }
        }
    };
}

int_map!(
    /// Virtual representation: dominant weight to (possibly negative) multiplicity.
    VirtualRep
);
int_map!(
    /// Character of a torus: weight to multiplicity.
    TCharacter
);

/// Klimyk's formula: `V_λ ⊗ V_μ = Σ_ν mult_μ(ν) · sign(w) V_{w·(λ+ν)}`.
pub fn tensor_decompose(d: &RootDatum, lambda: &Weight, mu: &Weight) -> Result<VirtualRep> {
    d.check_dominant(lambda)?;
    d.check_dominant(mu)?;
    // iterate over the weights of the smaller factor
    let (big, small) = if d.weyl_dimension(lambda)? >= d.weyl_dimension(mu)? {
        (lambda, mu)
    } else {
        (mu, lambda)
    };
    let mut out = VirtualRep::new();
    for (nu, m) in d.weight_multiplicities(small)? {
        let shifted: Vec<i64> = big.coeffs.iter().zip(&nu).map(|(a, b)| a + b).collect();
        if let Some((sign, dom)) = d.dot_to_dominant(&shifted, WeylCap::default())? {
            out.add(dom, sign * m as i64);
        }
    }
    Ok(out)
}

/// `V^N`: each irreducible contributes its highest weight line.
pub fn n_invariants(v: &VirtualRep) -> TCharacter {
    v.iter().map(|(w, &m)| (w.clone(), m)).collect()
}

/// Borel–Weil–Bott: `C_λ` induces to `sign(w) V_{w(λ+ρ)-ρ}`, or zero when
/// `λ + ρ` is singular.
pub fn holomorphic_induct(d: &RootDatum, t: &TCharacter) -> Result<VirtualRep> {
    let mut out = VirtualRep::new();
    for (w, &m) in t.iter() {
        if w.len() != d.rank_ss() {
            return Err(Error::WeightLength {
                expected: d.rank_ss(),
                got: w.len(),
            });
        }
        if let Some((sign, dom)) = d.dot_to_dominant(w, WeylCap::default())? {
            out.add(dom, sign * m);
        }
    }
    Ok(out)
}

/// Quantization of the implosion of a product of coadjoint orbits
/// `K·λ_1 × ... × K·λ_m`.
pub fn rr_implosion(d: &RootDatum, orbits: &[Weight]) -> Result<TCharacter> {
    let mut acc = VirtualRep::new();
    acc.add(vec![0; d.rank_ss()], 1);
    for lambda in orbits {
        d.check_dominant(lambda)?;
        let mut next = VirtualRep::new();
        for (nu, &m) in acc.iter() {
            for (kappa, &c) in tensor_decompose(d, &Weight::new(nu.clone()), lambda)?.iter() {
                next.add(kappa.clone(), m * c);
            }
        }
        acc = next;
    }
    Ok(n_invariants(&acc))
}

/// Keeps the points of `λ0 + τ̄`: pairings with `S_τ` equal to those of
/// `λ0`, all other pairings at least those of `λ0`.
pub fn cut_polytope(
    points: &[Vec<Rational64>],
    lambda0: &[Rational64],
    tau: &Face,
) -> Result<Vec<Vec<Rational64>>> {
    let r = lambda0.len();
    let in_closure = lambda0
        .iter()
        .enumerate()
        .all(|(i, x)| if tau.contains_index(i) { x.is_zero() } else { *x >= Rational64::zero() });
    if tau.vanishing.iter().any(|&i| i >= r) || !in_closure {
        return Err(Error::NotInChamber(lambda0.iter().map(ToString::to_string).collect()));
    }
    let mut out = Vec::new();
    for p in points {
        if p.len() != r {
            return Err(Error::WeightLength {
                expected: r,
                got: p.len(),
            });
        }
        let keep = (0..r).all(|i| {
            let x = p[i] - lambda0[i];
            if tau.contains_index(i) {
                x.is_zero()
            } else {
                x >= Rational64::zero()
            }
        });
        if keep {
            out.push(p.clone());
        }
    }
    Ok(out)
}
