//! Phase-space geometry: the symplectic form, orthogonal-symplectic matrices,
//! the real-to-complex mode isomorphism, and Haar-random passive transformations.
//!
//! An `m`-mode bosonic system has a `2m`-dimensional real phase space with
//! quadratures ordered `(q1, p1, q2, p2, ..., qm, pm)`. Units are chosen so
//! that the vacuum covariance matrix is the identity. The canonical
//! commutation relations are encoded by the symplectic form
//!
//! ```text
//! Omega = diag([[0, 1], [-1, 0]], ..., [[0, 1], [-1, 0]])
//! ```
//!
//! A passive linear unitary (any circuit of beam splitters and phase
//! shifters) acts on phase space as a matrix that is simultaneously
//! orthogonal and symplectic. Such matrices commute with `Omega` and are
//! exactly the real `2n x 2n` representations of `n x n` unitaries under the
//! mode isomorphism
//!
//! ```text
//! (r_{1,x}, r_{1,p}, r_{2,x}, r_{2,p}, ...)  <->  (r_{1,x} + i r_{1,p}, r_{2,x} + i r_{2,p}, ...)
//! ```
//!
//! which this module implements for vectors and for block-structured
//! matrices. Haar sampling of orthogonal-symplectic matrices goes through
//! the isomorphism: a Haar unitary is drawn by QR-decomposing a complex
//! Ginibre matrix and fixing the phases of the R diagonal, then mapped to
//! its real representation.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::{Error, Result};

/// Default tolerance for algebraic structure checks (orthogonality,
/// symplecticity, block structure).
pub const STRUCTURE_TOL: f64 = 1e-10;

/// The symplectic form on `n` modes in interleaved quadrature ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticForm {
    n: usize,
    entries: DMatrix<f64>,
}

impl SymplecticForm {
    /// Build the canonical block-diagonal form; errors on `n = 0`.
    pub fn new(n: usize) -> Result<Self> {
        Ok(Self {
            n,
            entries: symplectic_form(n)?,
        })
    }

    pub fn modes(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }
}

/// The canonical symplectic form `Omega` on `n` modes as a dense matrix.
pub fn symplectic_form(n: usize) -> Result<DMatrix<f64>> {
    if n == 0 {
        return Err(Error::InvalidDimension(
            "symplectic form needs at least one mode".into(),
        ));
    }
    let mut omega = DMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        omega[(2 * k, 2 * k + 1)] = 1.0;
        omega[(2 * k + 1, 2 * k)] = -1.0;
    }
    Ok(omega)
}

/// Applies `Omega` to a vector without materializing the matrix.
pub(crate) fn omega_times(v: &DVector<f64>) -> DVector<f64> {
    let mut out = DVector::zeros(v.len());
    for k in 0..v.len() / 2 {
        out[2 * k] = v[2 * k + 1];
        out[2 * k + 1] = -v[2 * k];
    }
    out
}

/// A real `2n x 2n` matrix that is simultaneously orthogonal and symplectic:
/// the phase-space action of a passive linear unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalSymplecticMatrix {
    n: usize,
    entries: DMatrix<f64>,
}

impl OrthogonalSymplecticMatrix {
    /// Validate both defining properties and wrap the matrix.
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        Self::with_tol(entries, STRUCTURE_TOL)
    }

    /// As [`OrthogonalSymplecticMatrix::new`] with an explicit tolerance.
    pub fn with_tol(entries: DMatrix<f64>, tol: f64) -> Result<Self> {
        let (r, c) = entries.shape();
        if r != c || r == 0 || r % 2 != 0 {
            return Err(Error::InvalidDimension(format!(
                "orthogonal-symplectic matrix must be square of even size, got {r}x{c}"
            )));
        }
        let n = r / 2;
        let id = DMatrix::<f64>::identity(r, r);
        let ortho_defect = (entries.transpose() * &entries - &id).amax();
        if ortho_defect > tol {
            return Err(Error::Structure(format!(
                "matrix is not orthogonal (defect {ortho_defect:.3e} > {tol:.3e})"
            )));
        }
        let omega = symplectic_form(n)?;
        let symp_defect = (entries.transpose() * &omega * &entries - &omega).amax();
        if symp_defect > tol {
            return Err(Error::Structure(format!(
                "matrix is not symplectic (defect {symp_defect:.3e} > {tol:.3e})"
            )));
        }
        Ok(Self { n, entries })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n,
            entries: DMatrix::identity(2 * n, 2 * n),
        }
    }

    pub fn modes(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.entries
    }

    /// The `n x n` unitary this matrix represents under the mode isomorphism.
    pub fn to_unitary(&self) -> DMatrix<Complex64> {
        complex_rep(&self.entries)
            .expect("validated orthogonal-symplectic matrix has exact block structure")
    }

    /// Build the real representation of an `n x n` unitary.
    pub fn from_unitary(u: &DMatrix<Complex64>) -> Result<Self> {
        let (r, c) = u.shape();
        if r != c || r == 0 {
            return Err(Error::InvalidDimension(format!(
                "unitary must be square and nonempty, got {r}x{c}"
            )));
        }
        Self::new(real_rep(u))
    }

    /// Matrix product; the result is again orthogonal symplectic.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::ShapeMismatch(format!(
                "cannot compose on {} vs {} modes",
                self.n, other.n
            )));
        }
        Ok(Self {
            n: self.n,
            entries: &self.entries * &other.entries,
        })
    }

    /// Embed into `total` modes, acting as given on the listed modes (in
    /// order) and as the identity elsewhere. Used to lift a small passive
    /// transformation onto a larger register.
    pub fn embed(&self, total: usize, modes: &[usize]) -> Result<Self> {
        if modes.len() != self.n {
            return Err(Error::ShapeMismatch(format!(
                "embedding needs {} target modes, got {}",
                self.n,
                modes.len()
            )));
        }
        let mut seen = vec![false; total];
        for &m in modes {
            if m >= total {
                return Err(Error::IndexOutOfRange {
                    index: m,
                    modes: total,
                });
            }
            if seen[m] {
                return Err(Error::Structure(format!("duplicate mode index {m}")));
            }
            seen[m] = true;
        }
        let mut out = DMatrix::<f64>::identity(2 * total, 2 * total);
        for (a, &ma) in modes.iter().enumerate() {
            for (b, &mb) in modes.iter().enumerate() {
                for r in 0..2 {
                    for c in 0..2 {
                        out[(2 * ma + r, 2 * mb + c)] = self.entries[(2 * a + r, 2 * b + c)];
                    }
                }
            }
        }
        Ok(Self {
            n: total,
            entries: out,
        })
    }
}

/// Complex embedding of a real phase-space vector:
/// `(q1, p1, q2, p2, ...)` maps to `(q1 + i p1, q2 + i p2, ...)`.
pub fn embed_vector(r: &DVector<f64>) -> Result<DVector<Complex64>> {
    if r.len() % 2 != 0 {
        return Err(Error::InvalidDimension(format!(
            "phase-space vector length must be even, got {}",
            r.len()
        )));
    }
    let n = r.len() / 2;
    Ok(DVector::from_fn(n, |k, _| {
        Complex64::new(r[2 * k], r[2 * k + 1])
    }))
}

/// Inverse of [`embed_vector`].
pub fn unembed_vector(z: &DVector<Complex64>) -> DVector<f64> {
    let n = z.len();
    DVector::from_fn(2 * n, |j, _| {
        if j % 2 == 0 {
            z[j / 2].re
        } else {
            z[j / 2].im
        }
    })
}

/// Complex embedding of a block-structured real matrix whose `2 x 2` blocks
/// have the form `[[a, -b], [b, a]]` with vanishing `b` on the diagonal
/// blocks. Symmetric matrices of this form map to Hermitian matrices, and
/// the embedding preserves quadratic forms: `z^dag W~ z = r^T W r` for
/// `z = embed_vector(r)`.
pub fn embed_w_matrix(w: &DMatrix<f64>, tol: f64) -> Result<DMatrix<Complex64>> {
    let wt = complex_rep_with_tol(w, tol)?;
    let n = wt.nrows();
    for i in 0..n {
        if wt[(i, i)].im.abs() > tol {
            return Err(Error::Structure(format!(
                "diagonal block {i} has antisymmetric part {:.3e} > {tol:.3e}",
                wt[(i, i)].im.abs()
            )));
        }
    }
    Ok(wt)
}

/// Inverse of [`embed_w_matrix`] / [`complex_rep`]: the real representation
/// with blocks `[[Re, -Im], [Im, Re]]`.
pub fn real_rep(u: &DMatrix<Complex64>) -> DMatrix<f64> {
    let n = u.nrows();
    let mut out = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = u[(i, j)];
            out[(2 * i, 2 * j)] = z.re;
            out[(2 * i, 2 * j + 1)] = -z.im;
            out[(2 * i + 1, 2 * j)] = z.im;
            out[(2 * i + 1, 2 * j + 1)] = z.re;
        }
    }
    out
}

fn complex_rep(m: &DMatrix<f64>) -> Result<DMatrix<Complex64>> {
    complex_rep_with_tol(m, STRUCTURE_TOL)
}

/// Extract the complex matrix from a real block-structured one, checking
/// internal consistency of the blocks.
fn complex_rep_with_tol(m: &DMatrix<f64>, tol: f64) -> Result<DMatrix<Complex64>> {
    let (r, c) = m.shape();
    if r != c || r % 2 != 0 || r == 0 {
        return Err(Error::InvalidDimension(format!(
            "block-structured matrix must be square of even size, got {r}x{c}"
        )));
    }
    let n = r / 2;
    let mut out = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let a = m[(2 * i, 2 * j)];
            let a2 = m[(2 * i + 1, 2 * j + 1)];
            let b = m[(2 * i + 1, 2 * j)];
            let b2 = -m[(2 * i, 2 * j + 1)];
            let defect = (a - a2).abs().max((b - b2).abs());
            if defect > tol {
                return Err(Error::Structure(format!(
                    "block ({i},{j}) is not of the form [[a,-b],[b,a]] (defect {defect:.3e})"
                )));
            }
            out[(i, j)] = Complex64::new(0.5 * (a + a2), 0.5 * (b + b2));
        }
    }
    Ok(out)
}

/// Draw an `n x n` Haar-distributed unitary: QR of a complex Ginibre matrix
/// with the R diagonal phases fixed.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<Complex64> {
    let g = DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) / 2.0_f64.sqrt()
    });
    let qr = g.qr();
    let q = qr.q();
    let r = qr.r();
    let phases = DVector::from_fn(n, |i, _| {
        let d = r[(i, i)];
        if d.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            d / d.norm()
        }
    });
    let mut out = q;
    for j in 0..n {
        for i in 0..n {
            out[(i, j)] *= phases[j];
        }
    }
    out
}

/// Haar-random orthogonal-symplectic matrix on `n` modes, as the real
/// representation of a Haar unitary.
pub fn haar_orthogonal_symplectic<R: Rng + ?Sized>(
    n: usize,
    rng: &mut R,
) -> OrthogonalSymplecticMatrix {
    let u = haar_unitary(n, rng);
    OrthogonalSymplecticMatrix {
        n,
        entries: real_rep(&u),
    }
}

/// Seeded variant of [`haar_orthogonal_symplectic`]; a fixed seed reproduces
/// the same matrix on every run.
pub fn random_orthogonal_symplectic(n: usize, seed: u64) -> Result<OrthogonalSymplecticMatrix> {
    if n == 0 {
        return Err(Error::InvalidDimension(
            "need at least one mode".into(),
        ));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    Ok(haar_orthogonal_symplectic(n, &mut rng))
}

/// Derive an independent per-index seed from a base seed (splitmix64 step),
/// so that parallel workloads stay deterministic regardless of scheduling.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base
        .wrapping_add(0x9e3779b97f4a7c15_u64.wrapping_mul(index.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}
