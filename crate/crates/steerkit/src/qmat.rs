//! Minimal complex linear algebra for two-qubit states: 4x4 complex
//! matrices, Pauli operators, Kronecker products, partial transposition,
//! and a fixed-size Hermitian eigensolver.
//!
//! The eigensolver runs cyclic Jacobi sweeps on the 8x8 real symmetric
//! embedding `[[Re(H), -Im(H)], [Im(H), Re(H)]]` of a Hermitian 4x4 matrix
//! and folds the doubled spectrum back down to four eigenvalues. Jacobi is
//! unconditionally convergent on symmetric input, which keeps this crate
//! free of external linear-algebra dependencies.

use std::ops::{Add, Index, Mul, Sub};

use num_complex::Complex64;

use crate::{Error, Result};

/// Complex scalar used throughout the crate.
pub type Complex = Complex64;

/// 2x2 complex matrix; single-qubit operators and Kronecker factors.
pub type Matrix2 = [[Complex; 2]; 2];

/// Entrywise Hermiticity tolerance for [`DensityMatrix::new`].
pub const STATE_HERMITICITY_TOL: f64 = 1e-12;
/// Tolerance on `|tr(rho) - 1|` for [`DensityMatrix::new`].
pub const STATE_TRACE_TOL: f64 = 1e-12;
/// Eigenvalues of a density matrix may undershoot zero by at most this
/// much; the slack absorbs eigensolver roundoff, nothing more.
pub const STATE_PSD_TOL: f64 = 1e-10;
/// Hermiticity tolerance accepted by [`eig_hermitian4`].
pub const EIG_HERMITICITY_TOL: f64 = 1e-10;

const JACOBI_OFF_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 50;

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);

/// Pauli axis selector for [`pauli`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// The standard Pauli matrix along `axis`.
pub fn pauli(axis: Axis) -> Matrix2 {
    let i = Complex::new(0.0, 1.0);
    match axis {
        Axis::X => [[ZERO, ONE], [ONE, ZERO]],
        Axis::Y => [[ZERO, -i], [i, ZERO]],
        Axis::Z => [[ONE, ZERO], [ZERO, -ONE]],
    }
}

/// 2x2 identity.
pub fn identity2() -> Matrix2 {
    [[ONE, ZERO], [ZERO, ONE]]
}

/// Which subsystem the partial transpose acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

/// Dense 4x4 complex matrix in row-major order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix4 {
    e: [[Complex; 4]; 4],
}

impl Matrix4 {
    pub fn zeros() -> Self {
        Self { e: [[ZERO; 4]; 4] }
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { ONE } else { ZERO })
    }

    pub fn from_rows(e: [[Complex; 4]; 4]) -> Self {
        Self { e }
    }

    /// Builds a matrix with purely real entries.
    pub fn from_real(r: [[f64; 4]; 4]) -> Self {
        Self::from_fn(|i, j| Complex::new(r[i][j], 0.0))
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Complex) -> Self {
        let mut e = [[ZERO; 4]; 4];
        for (i, row) in e.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = f(i, j);
            }
        }
        Self { e }
    }

    /// Rank-1 projector `|psi><psi|`.
    pub fn projector(psi: &[Complex; 4]) -> Self {
        Self::from_fn(|i, j| psi[i] * psi[j].conj())
    }

    pub fn trace(&self) -> Complex {
        (0..4).map(|i| self.e[i][i]).sum()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.e[j][i])
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(|i, j| self.e[i][j].conj())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(|i, j| self.e[j][i].conj())
    }

    /// Largest entrywise deviation from the adjoint.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                dev = dev.max((self.e[i][j] - self.e[j][i].conj()).norm());
            }
        }
        dev
    }

    /// `(M + M^dagger) / 2`; exactly Hermitian output.
    pub fn symmetrized(&self) -> Self {
        Self::from_fn(|i, j| (self.e[i][j] + self.e[j][i].conj()) * 0.5)
    }

    /// Transposes the indices of one subsystem only. Writing row = 2i + k
    /// and column = 2j + l with block indices (i, j) and within-block
    /// indices (k, l): side B swaps k and l (transpose inside each 2x2
    /// block), side A swaps i and j (transpose across blocks).
    pub fn partial_transpose(&self, side: Side) -> Self {
        Self::from_fn(|r, c| match side {
            Side::B => self.e[(r & !1) | (c & 1)][(c & !1) | (r & 1)],
            Side::A => self.e[(c & !1) | (r & 1)][(r & !1) | (c & 1)],
        })
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                dev = dev.max((self.e[i][j] - other.e[i][j]).norm());
            }
        }
        dev
    }
}

impl Index<(usize, usize)> for Matrix4 {
    type Output = Complex;

    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        &self.e[i][j]
    }
}

impl Add for Matrix4 {
    type Output = Matrix4;

    fn add(self, rhs: Matrix4) -> Matrix4 {
        Matrix4::from_fn(|i, j| self.e[i][j] + rhs.e[i][j])
    }
}

impl Sub for Matrix4 {
    type Output = Matrix4;

    fn sub(self, rhs: Matrix4) -> Matrix4 {
        Matrix4::from_fn(|i, j| self.e[i][j] - rhs.e[i][j])
    }
}

impl Mul<f64> for Matrix4 {
    type Output = Matrix4;

    fn mul(self, rhs: f64) -> Matrix4 {
        Matrix4::from_fn(|i, j| self.e[i][j] * rhs)
    }
}

impl Mul<Complex> for Matrix4 {
    type Output = Matrix4;

    fn mul(self, rhs: Complex) -> Matrix4 {
        Matrix4::from_fn(|i, j| self.e[i][j] * rhs)
    }
}

impl Mul for Matrix4 {
    type Output = Matrix4;

    fn mul(self, rhs: Matrix4) -> Matrix4 {
        Matrix4::from_fn(|i, j| (0..4).map(|k| self.e[i][k] * rhs.e[k][j]).sum())
    }
}

/// Kronecker product of two single-qubit operators:
/// `out[2i+k][2j+l] = a[i][j] * b[k][l]`.
pub fn kron(a: &Matrix2, b: &Matrix2) -> Matrix4 {
    Matrix4::from_fn(|r, c| a[r / 2][c / 2] * b[r % 2][c % 2])
}

/// Four real eigenvalues of a Hermitian 4x4 matrix, ascending.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Spectrum {
    lam: [f64; 4],
}

impl Spectrum {
    /// Wraps four values, sorting them ascending.
    pub fn from_values(mut lam: [f64; 4]) -> Self {
        lam.sort_by(f64::total_cmp);
        Self { lam }
    }

    pub fn values(&self) -> [f64; 4] {
        self.lam
    }

    /// Smallest eigenvalue.
    pub fn min(&self) -> f64 {
        self.lam[0]
    }

    pub fn sum(&self) -> f64 {
        self.lam.iter().sum()
    }
}

impl Index<usize> for Spectrum {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.lam[i]
    }
}

/// Two-qubit state: Hermitian, unit-trace, positive semidefinite 4x4
/// matrix (all within the `STATE_*` tolerances). The stored matrix is
/// symmetrized on construction so downstream partial transposes stay
/// Hermitian to machine precision.
#[derive(Clone, Copy, Debug)]
pub struct DensityMatrix {
    m: Matrix4,
}

impl DensityMatrix {
    pub fn new(m: Matrix4) -> Result<Self> {
        let deviation = m.hermiticity_deviation();
        if deviation > STATE_HERMITICITY_TOL {
            return Err(Error::NonHermitian { deviation });
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > STATE_TRACE_TOL || tr.im.abs() > STATE_TRACE_TOL {
            return Err(Error::InvalidState(format!(
                "trace = {} + {}i, expected 1",
                tr.re, tr.im
            )));
        }
        let m = m.symmetrized();
        let spectrum = eig_hermitian4(&m).expect("symmetrized matrix is Hermitian");
        if spectrum.min() < -STATE_PSD_TOL {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {:.3e}",
                spectrum.min()
            )));
        }
        Ok(Self { m })
    }

    pub fn matrix(&self) -> &Matrix4 {
        &self.m
    }

    pub fn eigenvalues(&self) -> Spectrum {
        eig_hermitian4(&self.m).expect("stored matrix is Hermitian")
    }

    /// Spectrum of the partial transpose on side B. The PT spectra of the
    /// two sides coincide, so this is the spectrum every criterion uses.
    pub fn pt_spectrum(&self) -> Spectrum {
        eig_hermitian4(&self.m.partial_transpose(Side::B))
            .expect("partial transpose of a Hermitian matrix is Hermitian")
    }

    /// Number of eigenvalues above `tol`.
    pub fn numerical_rank(&self, tol: f64) -> usize {
        self.eigenvalues()
            .values()
            .iter()
            .filter(|&&x| x > tol)
            .count()
    }
}

/// Partial transpose of a state; Hermitian with the same trace.
pub fn partial_transpose(rho: &DensityMatrix, side: Side) -> Matrix4 {
    rho.m.partial_transpose(side)
}

/// Eigenvalues of a Hermitian 4x4 matrix, ascending.
///
/// Rejects input whose Hermiticity deviation exceeds
/// [`EIG_HERMITICITY_TOL`]; anything below is symmetrized away before
/// solving.
pub fn eig_hermitian4(h: &Matrix4) -> Result<Spectrum> {
    let deviation = h.hermiticity_deviation();
    if deviation > EIG_HERMITICITY_TOL {
        return Err(Error::NonHermitian { deviation });
    }
    let hs = h.symmetrized();

    // Real symmetric embedding; each eigenvalue of H appears twice.
    let mut a = [[0.0f64; 8]; 8];
    for i in 0..4 {
        for j in 0..4 {
            let z = hs.e[i][j];
            a[i][j] = z.re;
            a[i][j + 4] = -z.im;
            a[i + 4][j] = z.im;
            a[i + 4][j + 4] = z.re;
        }
    }
    let mut d = jacobi_eigenvalues8(&mut a);
    d.sort_by(f64::total_cmp);

    // Collapse the doubled spectrum by averaging nearest pairs.
    Ok(Spectrum {
        lam: [
            0.5 * (d[0] + d[1]),
            0.5 * (d[2] + d[3]),
            0.5 * (d[4] + d[5]),
            0.5 * (d[6] + d[7]),
        ],
    })
}

#[allow(clippy::needless_range_loop)] // in-place plane rotations read clearer indexed
fn jacobi_eigenvalues8(a: &mut [[f64; 8]; 8]) -> [f64; 8] {
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..8 {
            for q in (p + 1)..8 {
                off += 2.0 * a[p][q] * a[p][q];
            }
        }
        if off.sqrt() < JACOBI_OFF_TOL {
            break;
        }
        for p in 0..7 {
            for q in (p + 1)..8 {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let tau = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for r in 0..8 {
                    let arp = a[r][p];
                    let arq = a[r][q];
                    a[r][p] = c * arp - s * arq;
                    a[r][q] = s * arp + c * arq;
                }
                for r in 0..8 {
                    let apr = a[p][r];
                    let aqr = a[q][r];
                    a[p][r] = c * apr - s * aqr;
                    a[q][r] = s * apr + c * aqr;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
            }
        }
    }
    let mut d = [0.0; 8];
    for (i, di) in d.iter_mut().enumerate() {
        *di = a[i][i];
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    /// Deterministic pseudo-random Hermitian matrix for oracle tests.
    fn random_hermitian(seed: u64) -> Matrix4 {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let g = Matrix4::from_fn(|_, _| c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
        (g + g.adjoint()) * 0.5
    }

    #[test]
    fn pauli_entries() {
        let sx = pauli(Axis::X);
        assert_eq!(sx[0][1], c(1.0, 0.0));
        assert_eq!(sx[1][0], c(1.0, 0.0));
        assert_eq!(sx[0][0], c(0.0, 0.0));

        let sz = pauli(Axis::Z);
        assert_eq!(sz[0][0], c(1.0, 0.0));
        assert_eq!(sz[1][1], c(-1.0, 0.0));

        // sigma_y transposed is -sigma_y.
        let sy = pauli(Axis::Y);
        for (i, row) in sy.iter().enumerate() {
            for (j, z) in row.iter().enumerate() {
                assert_eq!(sy[j][i], -z);
            }
        }
    }

    #[test]
    fn kron_identity_and_diagonal() {
        let i4 = kron(&identity2(), &identity2());
        assert_eq!(i4.max_abs_diff(&Matrix4::identity()), 0.0);

        let zz = kron(&pauli(Axis::Z), &pauli(Axis::Z));
        let expect = Matrix4::from_real([
            [1.0, 0.0, 0.0, 0.0],
            [0.0, -1.0, 0.0, 0.0],
            [0.0, 0.0, -1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]);
        assert_eq!(zz.max_abs_diff(&expect), 0.0);
    }

    #[test]
    fn kron_reconstructs_random_state_from_pauli_expansion() {
        // Independent oracle for both kron and the Pauli set: expand a
        // random state in the Pauli basis via correlation traces and
        // rebuild it as (1/4) (I + sum_i u_i s_i x I + sum_j v_j I x s_j
        // + sum_ij beta_ij s_i x s_j).
        let rho = states::random_density(4, 42).unwrap();
        let id = identity2();
        let sigmas = [pauli(Axis::X), pauli(Axis::Y), pauli(Axis::Z)];

        let mut acc = Matrix4::identity();
        for (i, si) in sigmas.iter().enumerate() {
            let u = (*rho.matrix() * kron(si, &id)).trace().re;
            acc = acc + kron(si, &id) * u;
            let v = (*rho.matrix() * kron(&id, si)).trace().re;
            acc = acc + kron(&id, si) * v;
            for sj in &sigmas {
                let beta = (*rho.matrix() * kron(si, sj)).trace().re;
                acc = acc + kron(si, sj) * beta;
            }
            let _ = i;
        }
        let rebuilt = acc * 0.25;
        assert!(rebuilt.max_abs_diff(rho.matrix()) < 1e-12);
    }

    #[test]
    fn partial_transpose_matches_werner_form() {
        let v = 0.7;
        let rho = states::werner(v).unwrap();
        let pt = rho.matrix().partial_transpose(Side::B);
        let expect = Matrix4::from_real([
            [(1.0 + v) / 4.0, 0.0, 0.0, 0.0],
            [0.0, (1.0 - v) / 4.0, v / 2.0, 0.0],
            [0.0, v / 2.0, (1.0 - v) / 4.0, 0.0],
            [0.0, 0.0, 0.0, (1.0 + v) / 4.0],
        ]);
        assert!(pt.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn partial_transpose_fixes_diagonal_matrices() {
        let d = Matrix4::from_real([
            [0.1, 0.0, 0.0, 0.0],
            [0.0, 0.2, 0.0, 0.0],
            [0.0, 0.0, 0.3, 0.0],
            [0.0, 0.0, 0.0, 0.4],
        ]);
        assert_eq!(d.partial_transpose(Side::B).max_abs_diff(&d), 0.0);
        assert_eq!(d.partial_transpose(Side::A).max_abs_diff(&d), 0.0);
    }

    #[test]
    fn eig_werner_half_spectrum() {
        let rho = states::werner(0.5).unwrap();
        let s = rho.pt_spectrum().values();
        let expect = [-0.125, 0.375, 0.375, 0.375];
        for (got, want) in s.iter().zip(expect) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
    }

    #[test]
    fn eig_scalar_matrix() {
        let s = eig_hermitian4(&(Matrix4::identity() * 0.25)).unwrap();
        for lam in s.values() {
            assert!((lam - 0.25).abs() < 1e-15);
        }
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let mut e = [[ZERO; 4]; 4];
        e[0][1] = c(0.3, 0.0);
        e[1][0] = c(0.1, 0.0);
        let err = eig_hermitian4(&Matrix4::from_rows(e)).unwrap_err();
        assert!(matches!(err, Error::NonHermitian { .. }));
    }

    /// Degree-4 polynomial with complex coefficients; just enough
    /// arithmetic to expand det(lambda I - H) by cofactors.
    #[derive(Clone)]
    struct Poly(Vec<Complex>);

    impl Poly {
        fn constant(z: Complex) -> Self {
            Poly(vec![z])
        }

        fn mul(&self, other: &Poly) -> Poly {
            let mut out = vec![ZERO; self.0.len() + other.0.len() - 1];
            for (i, a) in self.0.iter().enumerate() {
                for (j, b) in other.0.iter().enumerate() {
                    out[i + j] += a * b;
                }
            }
            Poly(out)
        }

        fn add(&self, other: &Poly) -> Poly {
            let n = self.0.len().max(other.0.len());
            let mut out = vec![ZERO; n];
            for (i, o) in out.iter_mut().enumerate() {
                if i < self.0.len() {
                    *o += self.0[i];
                }
                if i < other.0.len() {
                    *o += other.0[i];
                }
            }
            Poly(out)
        }

        fn neg(&self) -> Poly {
            Poly(self.0.iter().map(|z| -z).collect())
        }
    }

    /// det of a matrix of polynomials by cofactor expansion on row 0.
    fn poly_det(m: &[Vec<Poly>]) -> Poly {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut det = Poly::constant(ZERO);
        for j in 0..n {
            let minor: Vec<Vec<Poly>> = (1..n)
                .map(|r| {
                    (0..n)
                        .filter(|&col| col != j)
                        .map(|col| m[r][col].clone())
                        .collect()
                })
                .collect();
            let term = m[0][j].mul(&poly_det(&minor));
            det = if j % 2 == 0 {
                det.add(&term)
            } else {
                det.add(&term.neg())
            };
        }
        det
    }

    /// Characteristic polynomial coefficients of det(lambda I - H) via
    /// cofactor expansion: returns [c0, c1, c2, c3, 1] with
    /// p(lambda) = lambda^4 + c3 lambda^3 + c2 lambda^2 + c1 lambda + c0.
    fn charpoly_by_cofactors(h: &Matrix4) -> Vec<Complex> {
        let m: Vec<Vec<Poly>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| {
                        let lead = if i == j { ONE } else { ZERO };
                        Poly(vec![-h[(i, j)], lead])
                    })
                    .collect()
            })
            .collect();
        poly_det(&m).0
    }

    #[test]
    fn eig_matches_cofactor_charpoly_oracle() {
        for seed in 0..32u64 {
            let h = random_hermitian(seed);
            let s = eig_hermitian4(&h).unwrap().values();
            let coeffs = charpoly_by_cofactors(&h);

            // Elementary symmetric functions of the computed spectrum.
            let e1: f64 = s.iter().sum();
            let mut e2 = 0.0;
            let mut e3 = 0.0;
            for i in 0..4 {
                for j in (i + 1)..4 {
                    e2 += s[i] * s[j];
                    for k in (j + 1)..4 {
                        e3 += s[i] * s[j] * s[k];
                    }
                }
            }
            let e4: f64 = s.iter().product();

            // p(lambda) = l^4 - e1 l^3 + e2 l^2 - e3 l + e4.
            assert!((coeffs[3].re + e1).abs() < 1e-10);
            assert!((coeffs[2].re - e2).abs() < 1e-10);
            assert!((coeffs[1].re + e3).abs() < 1e-10);
            assert!((coeffs[0].re - e4).abs() < 1e-10);
            for coeff in &coeffs {
                assert!(coeff.im.abs() < 1e-10);
            }
        }
    }

    #[test]
    fn eig_trace_identities_over_thousand_matrices() {
        for seed in 0..1000u64 {
            let h = random_hermitian(seed);
            let s = eig_hermitian4(&h).unwrap();
            let sum: f64 = s.values().iter().sum();
            let sum_sq: f64 = s.values().iter().map(|x| x * x).sum();
            let tr = h.trace().re;
            let tr_sq = (h * h).trace().re;
            assert!((sum - tr).abs() < 1e-10);
            assert!((sum_sq - tr_sq).abs() < 1e-9);
        }
    }

    #[test]
    fn density_matrix_rejects_bad_input() {
        // Trace 2.
        let m = Matrix4::identity() * 0.5;
        assert!(matches!(DensityMatrix::new(m), Err(Error::InvalidState(_))));

        // Not PSD.
        let m = Matrix4::from_real([
            [1.5, 0.0, 0.0, 0.0],
            [0.0, -0.5, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
        ]);
        assert!(matches!(DensityMatrix::new(m), Err(Error::InvalidState(_))));

        // Not Hermitian.
        let mut e = [[ZERO; 4]; 4];
        for (i, row) in e.iter_mut().enumerate() {
            row[i] = c(0.25, 0.0);
        }
        e[0][3] = c(0.1, 0.0);
        e[3][0] = c(0.2, 0.0);
        assert!(matches!(
            DensityMatrix::new(Matrix4::from_rows(e)),
            Err(Error::NonHermitian { .. })
        ));
    }

    proptest! {
        #[test]
        fn pt_is_an_involution_and_preserves_trace(seed in 0u64..500) {
            let rho = states::random_density(1 + (seed % 4) as usize, seed).unwrap();
            for side in [Side::A, Side::B] {
                let pt = rho.matrix().partial_transpose(side);
                prop_assert!(pt.partial_transpose(side).max_abs_diff(rho.matrix()) <= 1e-14);
                prop_assert!((pt.trace() - rho.matrix().trace()).norm() == 0.0);
            }
        }

        #[test]
        fn pt_sides_share_a_spectrum(seed in 0u64..200) {
            let rho = states::random_density(1 + (seed % 4) as usize, seed).unwrap();
            let sa = eig_hermitian4(&rho.matrix().partial_transpose(Side::A)).unwrap();
            let sb = eig_hermitian4(&rho.matrix().partial_transpose(Side::B)).unwrap();
            for (a, b) in sa.values().iter().zip(sb.values()) {
                prop_assert!((a - b).abs() < 1e-10);
            }
        }
    }
}
