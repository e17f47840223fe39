//! Matrix realization of SU(n): random unitaries, the Lie algebra basis and
//! the exterior powers `Λ^p C^n`.
//!
//! A Lie algebra element `ξ` is carried as an anti-Hermitian traceless matrix
//! `X` with `exp(ξ) = e^{2πX}`. The factor `2π` enters only through
//! [`lie_action`] and [`lie_bracket`].

use std::f64::consts::PI;
use std::ops::Range;

use nalgebra::{Complex, DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub const UNITARY_TOL: f64 = 1e-10;

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-distributed element of SU(n) via QR of a complex Gaussian matrix.
pub fn random_su<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let g = CMatrix::from_fn(n, n, |_, _| gaussian(rng));
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    let det = q.determinant();
    let fix = det.conj() / det.norm();
    for i in 0..n {
        q[(i, 0)] *= fix;
    }
    q
}

/// Random element of `su(n)` with Gaussian coefficients in [`su_basis`].
pub fn random_su_algebra<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let mut x = CMatrix::zeros(n, n);
    for b in su_basis(n) {
        let c: f64 = rng.sample(StandardNormal);
        x += b * C64::new(c, 0.0);
    }
    x
}

pub fn unitarity_defect(k: &CMatrix) -> f64 {
    let n = k.nrows();
    (k.adjoint() * k - CMatrix::identity(n, n)).norm()
}

pub fn check_special_unitary(k: &CMatrix, tol: f64) -> Result<()> {
    if !k.is_square() {
        return Err(Error::InvalidMatrix("not square".into()));
    }
    let u = unitarity_defect(k);
    if u > tol {
        return Err(Error::InvalidMatrix(format!("not unitary (defect {u:.3e})")));
    }
    let d = (k.determinant() - C64::new(1.0, 0.0)).norm();
    if d > tol {
        return Err(Error::InvalidMatrix(format!("determinant differs from 1 by {d:.3e}")));
    }
    Ok(())
}

/// Basis of `su(n)`: `i(E_jj - E_{j+1,j+1})`, then `E_jk - E_kj` and
/// `i(E_jk + E_kj)` for `j < k`. The first `n-1` elements are the simple
/// coroots.
pub fn su_basis(n: usize) -> Vec<CMatrix> {
    let i = C64::new(0.0, 1.0);
    let one = C64::new(1.0, 0.0);
    let mut out = Vec::with_capacity(n * n - 1);
    for j in 0..n.saturating_sub(1) {
        let mut m = CMatrix::zeros(n, n);
        m[(j, j)] = i;
        m[(j + 1, j + 1)] = -i;
        out.push(m);
    }
    for j in 0..n {
        for k in j + 1..n {
            let mut m = CMatrix::zeros(n, n);
            m[(j, k)] = one;
            m[(k, j)] = -one;
            out.push(m);
            let mut m = CMatrix::zeros(n, n);
            m[(j, k)] = i;
            m[(k, j)] = i;
            out.push(m);
        }
    }
    out
}

/// Simple coroot `α∨_p = i(E_pp - E_{p+1,p+1})`.
pub fn coroot(n: usize, p: usize) -> CMatrix {
    su_basis(n).swap_remove(p)
}

/// `ϖ_p(X) = Σ_{j<=p} Im X_jj`, the fundamental weight evaluated on the
/// torus part of `X` (zero-based `p`).
pub fn fundamental_pairing(x: &CMatrix, p: usize) -> f64 {
    (0..=p).map(|j| x[(j, j)].im).sum()
}

/// `λ(X)` for `λ` given by its coroot pairings.
pub fn weight_pairing(pairings: &[f64], x: &CMatrix) -> f64 {
    pairings
        .iter()
        .enumerate()
        .map(|(p, l)| l * fundamental_pairing(x, p))
        .sum()
}

/// Lie bracket of `k` in the matrix realization.
pub fn lie_bracket(x: &CMatrix, y: &CMatrix) -> CMatrix {
    (x * y - y * x) * C64::new(2.0 * PI, 0.0)
}

/// `Ad(k^{-1}) X = k^* X k`.
pub fn ad_inverse(k: &CMatrix, x: &CMatrix) -> CMatrix {
    k.adjoint() * x * k
}

/// Index ranges of the diagonal blocks of the Levi subgroup: simple root
/// `i` glues coordinates `i` and `i + 1`.
pub fn levi_blocks(n: usize, vanishing: &[usize]) -> Vec<Range<usize>> {
    let mut blocks = Vec::new();
    let mut start = 0;
    for j in 0..n {
        let glued = j + 1 < n && vanishing.contains(&j);
        if !glued {
            blocks.push(start..j + 1);
            start = j + 1;
        }
    }
    blocks
}

/// Increasing `p`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for j in start..n {
            cur.push(j);
            rec(j + 1, n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, p, &mut Vec::with_capacity(p), &mut out);
    out
}

fn subset_index(all: &[Vec<usize>], s: &[usize]) -> usize {
    all.binary_search_by(|x| x.as_slice().cmp(s)).expect("subset in basis")
}

/// `p`-th compound matrix: the action of `k` on `Λ^p C^n` in the basis
/// `e_I`, `I` increasing. Entry `(I, J)` is the minor `det k[I, J]`.
pub fn compound(k: &CMatrix, p: usize) -> CMatrix {
    let n = k.nrows();
    let basis = subsets(n, p);
    let m = basis.len();
    let mut out = CMatrix::zeros(m, m);
    for (a, rows) in basis.iter().enumerate() {
        for (b, cols) in basis.iter().enumerate() {
            let sub = CMatrix::from_fn(p, p, |i, j| k[(rows[i], cols[j])]);
            out[(a, b)] = sub.determinant();
        }
    }
    out
}

/// Derived action of a matrix `X` on `Λ^p C^n`, without any normalization.
pub fn derived(x: &CMatrix, p: usize) -> CMatrix {
    let n = x.nrows();
    let basis = subsets(n, p);
    let m = basis.len();
    let mut out = CMatrix::zeros(m, m);
    for (b, cols) in basis.iter().enumerate() {
        for slot in 0..p {
            for i in 0..n {
                let coef = x[(i, cols[slot])];
                if coef == C64::new(0.0, 0.0) {
                    continue;
                }
                if cols.iter().enumerate().any(|(s, &c)| s != slot && c == i) {
                    continue;
                }
                let mut idx = cols.clone();
                idx[slot] = i;
                let sign = sort_with_sign(&mut idx);
                let a = subset_index(&basis, &idx);
                out[(a, b)] += coef * sign;
            }
        }
    }
    out
}

fn sort_with_sign(v: &mut [usize]) -> f64 {
    let mut sign = 1.0;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    sign
}

/// Infinitesimal action `ξ_E` on `Λ^p C^n` of the Lie algebra element
/// carried by `X`. This is the single place where the `2π` of the weight
/// normalization enters the module action.
pub fn lie_action(x: &CMatrix, p: usize) -> CMatrix {
    derived(x, p) * C64::new(2.0 * PI, 0.0)
}

/// `⟨v, w⟩ = Σ v_i conj(w_i)`, linear in the first argument.
pub fn hermitian(v: &[C64], w: &[C64]) -> C64 {
    v.iter().zip(w).map(|(a, b)| a * b.conj()).sum()
}
