//! Exact root-datum arithmetic.
//!
//! Weights live in fundamental-weight coordinates: the `i`-th coordinate of
//! `lambda` is the integer `<lambda, alpha_i^vee>`. Roots are stored in
//! simple-root coordinates. Nothing in this module touches floating point.

mod cartan;
mod multiplicity;
pub mod snf;
mod weyl;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use cartan::{cartan_matrix, Series};
pub use weyl::WeylCap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Isogeny {
    SimplyConnected,
    Adjoint,
}

impl std::str::FromStr for Isogeny {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "simply-connected" | "sc" => Ok(Isogeny::SimplyConnected),
            "adjoint" | "ad" => Ok(Isogeny::Adjoint),
            other => Err(Error::InvalidInput(format!("unknown isogeny tag `{other}`"))),
        }
    }
}

/// A weight: integer fundamental-weight coordinates for the semisimple part
/// and an exact rational component along the centre.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub coeffs: Vec<i64>,
    pub central: Vec<Rational64>,
}

impl Weight {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Weight {
            coeffs,
            central: Vec::new(),
        }
    }

    pub fn with_central(coeffs: Vec<i64>, central: Vec<Rational64>) -> Self {
        Weight { coeffs, central }
    }

    pub fn zero(rank: usize) -> Self {
        Weight::new(vec![0; rank])
    }

    pub fn is_dominant(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0) && self.central.iter().all(Zero::is_zero)
    }

    /// Coordinate-wise sum; central parts add when both are present.
    pub fn add(&self, other: &Weight) -> Weight {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        let central = match (self.central.is_empty(), other.central.is_empty()) {
            (true, _) => other.central.clone(),
            (_, true) => self.central.clone(),
            _ => self
                .central
                .iter()
                .zip(&other.central)
                .map(|(a, b)| a + b)
                .collect(),
        };
        Weight { coeffs, central }
    }

    pub fn scale(&self, t: i64) -> Weight {
        Weight {
            coeffs: self.coeffs.iter().map(|c| c * t).collect(),
            central: self.central.iter().map(|c| c * t).collect(),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        if !self.central.is_empty() {
            write!(f, ";")?;
            for (i, c) in self.central.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
        }
        write!(f, ")")
    }
}

/// A root datum of a compact connected group, up to the choice of maximal
/// torus and chamber.
#[derive(Debug, Clone)]
pub struct RootDatum {
    name: String,
    cartan: Vec<Vec<i64>>,
    central_rank: usize,
    coroot_coords: Vec<Vec<i64>>,
    weight_coords: Vec<Vec<Rational64>>,
    symmetrizer: Vec<i64>,
    /// Gram matrix of the fundamental weights, scaled to integers.
    fund_gram: Vec<Vec<i64>>,
    positive_roots: Vec<Vec<i64>>,
    positive_coroots: Vec<Vec<i64>>,
}

impl RootDatum {
    /// Builds a simple datum from its series letter and rank.
    pub fn build(series: &str, rank: usize, isogeny: Isogeny) -> Result<Self> {
        let (letter, digits) = series.trim().split_at(series.trim().len().min(1));
        if !digits.is_empty() && digits.parse::<usize>().ok() != Some(rank) {
            return Err(Error::InvalidRank {
                series: series.to_string(),
                rank,
            });
        }
        let s: Series = letter.parse()?;
        let a = cartan_matrix(s, rank)?;
        let r = rank;

        let identity: Vec<Vec<i64>> = (0..r)
            .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
            .collect();
        let (coroots, weights) = match isogeny {
            Isogeny::SimplyConnected => (
                identity.clone(),
                identity
                    .iter()
                    .map(|row| row.iter().map(|&x| Rational64::from_integer(x)).collect())
                    .collect(),
            ),
            Isogeny::Adjoint => {
                // X_* = coweight lattice, X^* = root lattice
                let coroots = a.clone();
                let inv_t = rational_inverse(&transpose(&a))?;
                (coroots, inv_t)
            }
        };
        let name = group_name(s, r, isogeny);
        Self::assemble(name, a, 0, coroots, weights)
    }

    /// The unitary group U(n): semisimple rank n-1 plus a one-dimensional centre.
    pub fn unitary(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidRank {
                series: "U".into(),
                rank: n,
            });
        }
        let a = if n >= 2 {
            cartan_matrix(Series::A, n - 1)?
        } else {
            Vec::new()
        };
        let coroots: Vec<Vec<i64>> = (0..n - 1)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v[i + 1] = -1;
                v
            })
            .collect();
        let weights: Vec<Vec<Rational64>> = (0..n - 1)
            .map(|i| {
                (0..n)
                    .map(|j| Rational64::from_integer(i64::from(j <= i)))
                    .collect()
            })
            .collect();
        Self::assemble(format!("U({n})"), a, 1, coroots, weights)
    }

    /// A torus of dimension `k`.
    pub fn torus(k: usize) -> Result<Self> {
        Self::assemble(format!("T^{k}"), Vec::new(), k, Vec::new(), Vec::new())
    }

    /// A datum given by explicit lattices. All invariants are checked.
    pub fn custom(
        name: impl Into<String>,
        cartan: Vec<Vec<i64>>,
        coroot_coords: Vec<Vec<i64>>,
        weight_coords: Vec<Vec<i64>>,
        central_rank: usize,
    ) -> Result<Self> {
        let weights = weight_coords
            .into_iter()
            .map(|row| row.into_iter().map(Rational64::from_integer).collect())
            .collect();
        Self::assemble(name.into(), cartan, central_rank, coroot_coords, weights)
    }

    fn assemble(
        name: String,
        cartan: Vec<Vec<i64>>,
        central_rank: usize,
        coroot_coords: Vec<Vec<i64>>,
        weight_coords: Vec<Vec<Rational64>>,
    ) -> Result<Self> {
        let r = cartan.len();
        let dim = r + central_rank;
        let bad = |m: &str| Err(Error::InvalidDatum(m.to_string()));

        if cartan.iter().any(|row| row.len() != r) {
            return bad("Cartan matrix is not square");
        }
        for i in 0..r {
            if cartan[i][i] != 2 {
                return bad("Cartan matrix must have 2 on the diagonal");
            }
            for j in 0..r {
                if i != j && cartan[i][j] > 0 {
                    return bad("off-diagonal Cartan entries must be nonpositive");
                }
                if i != j && (cartan[i][j] == 0) != (cartan[j][i] == 0) {
                    return bad("Cartan matrix zero pattern is not symmetric");
                }
            }
        }
        let symmetrizer = symmetrizer(&cartan).ok_or_else(|| {
            Error::InvalidDatum("Cartan matrix is not symmetrizable".to_string())
        })?;
        let sym: Vec<Vec<i64>> = (0..r)
            .map(|i| (0..r).map(|j| symmetrizer[i] * cartan[i][j]).collect())
            .collect();
        if !positive_definite(&sym) {
            return bad("Cartan matrix is not of finite type");
        }

        if coroot_coords.len() != r || weight_coords.len() != r {
            return bad("need one coroot and one fundamental weight per simple root");
        }
        if coroot_coords.iter().any(|v| v.len() != dim)
            || weight_coords.iter().any(|v| v.len() != dim)
        {
            return bad("lattice vectors must have length rank_ss + central_rank");
        }
        for i in 0..r {
            for j in 0..r {
                let p: Rational64 = weight_coords[i]
                    .iter()
                    .zip(&coroot_coords[j])
                    .map(|(w, &c)| *w * c)
                    .sum();
                if p != Rational64::from_integer(i64::from(i == j)) {
                    return Err(Error::InvalidDatum(format!(
                        "integrality of pairings violated: <w_{i}, coroot_{j}> = {p}"
                    )));
                }
            }
        }
        if r > 0 {
            let rank = snf::invariant_factors(&transpose(&coroot_coords))?.len();
            if rank != r {
                return bad("coroots are linearly dependent");
            }
        }

        let fund_gram = if r == 0 {
            Vec::new()
        } else {
            let inv = rational_inverse(&cartan)?;
            let rat: Vec<Vec<Rational64>> = (0..r)
                .map(|i| (0..r).map(|j| inv[i][j] * symmetrizer[i]).collect())
                .collect();
            let l = rat
                .iter()
                .flatten()
                .fold(1i64, |acc, q| acc.lcm(q.denom()));
            rat.iter()
                .map(|row| row.iter().map(|q| (q * l).to_integer()).collect())
                .collect()
        };

        let positive_roots = positive_roots_of(&cartan);
        let positive_coroots = positive_roots_of(&transpose(&cartan));

        Ok(RootDatum {
            name,
            cartan,
            central_rank,
            coroot_coords,
            weight_coords,
            symmetrizer,
            fund_gram,
            positive_roots,
            positive_coroots,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank_ss(&self) -> usize {
        self.cartan.len()
    }

    pub fn central_rank(&self) -> usize {
        self.central_rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn coroot_coords(&self) -> &[Vec<i64>] {
        &self.coroot_coords
    }

    pub fn weight_coords(&self) -> &[Vec<Rational64>] {
        &self.weight_coords
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    /// Positive roots in simple-root coordinates, ordered by height.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// Positive coroots in simple-coroot coordinates, ordered by height.
    pub fn positive_coroots(&self) -> &[Vec<i64>] {
        &self.positive_coroots
    }

    /// `dim K = |R| + rank_ss + central_rank`.
    pub fn dim_group(&self) -> usize {
        2 * self.positive_roots.len() + self.rank_ss() + self.central_rank
    }

    /// Fundamental-weight coordinates of a root given in simple-root coordinates.
    pub fn root_to_weight(&self, root: &[i64]) -> Vec<i64> {
        let r = self.rank_ss();
        (0..r)
            .map(|k| (0..r).map(|j| root[j] * self.cartan[k][j]).sum())
            .collect()
    }

    pub fn rho(&self) -> Weight {
        Weight::new(vec![1; self.rank_ss()])
    }

    pub fn fundamental_weight(&self, p: usize) -> Weight {
        let mut c = vec![0; self.rank_ss()];
        c[p] = 1;
        Weight::new(c)
    }

    /// True when the coroots form a basis of the cocharacter lattice.
    pub fn is_simply_connected(&self) -> bool {
        self.central_rank == 0
            && snf::invariant_factors(&self.coroot_coords)
                .map(|f| f.len() == self.rank_ss() && f.iter().all(|&d| d == 1))
                .unwrap_or(false)
    }

    pub fn is_semisimple(&self) -> bool {
        self.central_rank == 0
    }

    pub fn check_weight(&self, lambda: &Weight) -> Result<()> {
        if lambda.coeffs.len() != self.rank_ss() {
            return Err(Error::WeightLength {
                expected: self.rank_ss(),
                got: lambda.coeffs.len(),
            });
        }
        if !lambda.central.is_empty() && lambda.central.len() != self.central_rank {
            return Err(Error::WeightLength {
                expected: self.rank_ss() + self.central_rank,
                got: lambda.coeffs.len() + lambda.central.len(),
            });
        }
        Ok(())
    }

    pub fn check_dominant(&self, lambda: &Weight) -> Result<()> {
        self.check_weight(lambda)?;
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.coeffs.clone()));
        }
        Ok(())
    }

    /// Invariant form `(x, y)` on fundamental coordinates, scaled by a fixed
    /// positive integer so that it is integral.
    pub fn scaled_form(&self, x: &[i64], y: &[i64]) -> i128 {
        let mut s = 0i128;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                s += xi as i128 * self.fund_gram[i][j] as i128 * yj as i128;
            }
        }
        s
    }

    /// `<lambda, rho^vee>`, half the sum of pairings with positive coroots.
    pub fn rho_vee_pairing(&self, lambda: &Weight) -> Rational64 {
        let twice: i64 = self
            .positive_coroots
            .iter()
            .map(|c| c.iter().zip(&lambda.coeffs).map(|(a, b)| a * b).sum::<i64>())
            .sum();
        Rational64::new(twice, 2)
    }

    /// Weyl dimension formula, exact.
    pub fn weyl_dimension(&self, lambda: &Weight) -> Result<u64> {
        self.check_dominant(lambda)?;
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for c in &self.positive_coroots {
            let top: i64 = c.iter().zip(&lambda.coeffs).map(|(a, b)| a * (b + 1)).sum();
            let bottom: i64 = c.iter().sum();
            num *= top;
            den *= bottom;
        }
        let q = BigRational::new(num, den);
        if !q.is_integer() {
            return Err(Error::InvalidDatum("Weyl dimension is not an integer".into()));
        }
        q.to_integer().to_u64().ok_or(Error::Overflow("Weyl dimension"))
    }

    /// Order of `[X_* ∩ span_Q(S^vee) : Z-span(S^vee)]` for a set of simple roots;
    /// 1 exactly when the derived group of the Levi subgroup is simply connected.
    pub fn levi_fundamental_group_order(&self, subset: &[usize]) -> Result<i64> {
        let mut vectors = Vec::with_capacity(subset.len());
        for &i in subset {
            let v = self
                .coroot_coords
                .get(i)
                .ok_or_else(|| Error::InvalidFace(subset.to_vec()))?;
            vectors.push(v.clone());
        }
        snf::saturation_index(&vectors)
    }

    /// Parses the root-datum JSON schema.
    pub fn from_json(text: &str) -> Result<Self> {
        let parsed: DatumSpec = serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("root datum JSON: {e}")))?;
        parsed.build()
    }
}

/// Root-datum JSON: either a named series or explicit lattices.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DatumSpec {
    Series(SeriesSpec),
    Custom(CustomSpec),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesSpec {
    pub name: String,
    pub series: String,
    pub rank: usize,
    pub isogeny: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomSpec {
    pub name: String,
    pub cartan: Vec<Vec<i64>>,
    pub coroot_coords: Vec<Vec<i64>>,
    pub weight_coords: Vec<Vec<i64>>,
    pub central_rank: usize,
}

impl DatumSpec {
    pub fn build(self) -> Result<RootDatum> {
        match self {
            DatumSpec::Series(s) => {
                let mut d = RootDatum::build(&s.series, s.rank, s.isogeny.parse()?)?;
                d.name = s.name;
                Ok(d)
            }
            DatumSpec::Custom(c) => RootDatum::custom(
                c.name,
                c.cartan,
                c.coroot_coords,
                c.weight_coords,
                c.central_rank,
            ),
        }
    }
}

/// Parses a compact group label: `A2`, `B3:adjoint`, `G2`, `U2`, `T1`,
/// `SU3`, `SO3`.
pub fn parse_group(label: &str) -> Result<RootDatum> {
    let label = label.trim();
    let (body, tag) = match label.split_once(':') {
        Some((b, t)) => (b, t.parse::<Isogeny>()?),
        None => (label, Isogeny::SimplyConnected),
    };
    let upper = body.to_ascii_uppercase();
    let number = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| Error::InvalidInput(format!("cannot parse group label `{label}`")))
    };
    if let Some(n) = upper.strip_prefix("SU") {
        return RootDatum::build("A", number(n)?.saturating_sub(1), tag);
    }
    if upper == "SO3" {
        return RootDatum::build("A", 1, Isogeny::Adjoint);
    }
    if let Some(n) = upper.strip_prefix('U') {
        return RootDatum::unitary(number(n)?);
    }
    if let Some(k) = upper.strip_prefix('T') {
        return RootDatum::torus(number(k)?);
    }
    if upper.len() < 2 {
        return Err(Error::InvalidInput(format!("cannot parse group label `{label}`")));
    }
    let (letter, rank) = upper.split_at(1);
    RootDatum::build(letter, number(rank)?, tag)
}

fn group_name(s: Series, r: usize, iso: Isogeny) -> String {
    use Isogeny::*;
    match (s, iso) {
        (Series::A, SimplyConnected) => format!("SU({})", r + 1),
        (Series::A, Adjoint) if r == 1 => "SO(3)".to_string(),
        (Series::A, Adjoint) => format!("PSU({})", r + 1),
        (Series::B, SimplyConnected) => format!("Spin({})", 2 * r + 1),
        (Series::B, Adjoint) => format!("SO({})", 2 * r + 1),
        (Series::C, SimplyConnected) => format!("Sp({r})"),
        (Series::C, Adjoint) => format!("PSp({r})"),
        (Series::D, SimplyConnected) => format!("Spin({})", 2 * r),
        (Series::D, Adjoint) => format!("PSO({})", 2 * r),
        (_, SimplyConnected) => format!("{s}{r}"),
        (_, Adjoint) => format!("{s}{r} (adjoint)"),
    }
}

pub(crate) fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

fn rational_inverse(m: &[Vec<i64>]) -> Result<Vec<Vec<Rational64>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational64> = row.iter().map(|&x| Rational64::from_integer(x)).collect();
            r.extend((0..n).map(|j| Rational64::from_integer(i64::from(i == j))));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&i| !a[i][col].is_zero())
            .ok_or_else(|| Error::InvalidMatrix("singular matrix".into()))?;
        a.swap(col, pivot);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col];
                for j in 0..2 * n {
                    let v = a[col][j];
                    a[i][j] -= f * v;
                }
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Positive integers `d_i` with `d_i a_ij = d_j a_ji`, smallest possible.
fn symmetrizer(a: &[Vec<i64>]) -> Option<Vec<i64>> {
    let n = a.len();
    let mut d: Vec<Option<Rational64>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Rational64::one());
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let di = d[i].unwrap();
            for j in 0..n {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                let dj = di * Rational64::new(a[i][j], a[j][i]);
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                    Some(existing) if existing != dj => return None,
                    _ => {}
                }
            }
        }
    }
    let d: Vec<Rational64> = d.into_iter().map(Option::unwrap).collect();
    if d.iter().any(|x| !x.is_positive()) {
        return None;
    }
    let l = d.iter().fold(1i64, |acc, q| acc.lcm(q.denom()));
    let ints: Vec<i64> = d.iter().map(|q| (q * l).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, &x| acc.gcd(&x)).max(1);
    Some(ints.into_iter().map(|x| x / g).collect())
}

/// Sylvester's criterion with exact fraction-free elimination.
fn positive_definite(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut prev = 1i128;
    for k in 0..n {
        // a[k][k] is now the ratio of consecutive leading minors times prev
        if a[k][k] <= 0 {
            return false;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    true
}

/// Positive roots by the root-string closure: `beta + alpha_i` is a root iff
/// `p > 0` where `p - q = -<beta, alpha_i^vee>`.
fn positive_roots_of(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = a.len();
    let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut roots: Vec<Vec<i64>> = Vec::new();
    for i in 0..r {
        let mut e = vec![0; r];
        e[i] = 1;
        index.insert(e.clone(), roots.len());
        roots.push(e);
    }
    let mut level_start = 0;
    while level_start < roots.len() {
        let level_end = roots.len();
        for b in level_start..level_end {
            let beta = roots[b].clone();
            for i in 0..r {
                let pairing: i64 = (0..r).map(|j| beta[j] * a[i][j]).sum();
                let mut q = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if index.contains_key(&down) {
                        q += 1;
                    } else {
                        break;
                    }
                }
                let p = q - pairing;
                if p > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !index.contains_key(&up) {
                        index.insert(up.clone(), roots.len());
                        roots.push(up);
                    }
                }
            }
        }
        level_start = level_end;
    }
    roots
}
