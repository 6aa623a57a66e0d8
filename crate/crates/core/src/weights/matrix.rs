//! Hermitian matrices, fractional powers and the spectral norm.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative threshold below which an eigenvalue is treated as zero.
pub const PD_GUARD: f64 = 1e-12;

/// Absolute tolerance of the symmetry check, scaled by `max(1, max |a_ij|)`.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// A complex Hermitian `N x N` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    inner: DMatrix<Complex64>,
}

impl HermitianMatrix {
    /// Wraps `m` after checking that it is square, finite and Hermitian.
    pub fn new(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                found: m.ncols(),
            });
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let scale = m.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let asymmetry = asymmetry(&m);
        if asymmetry > HERMITIAN_TOL * scale {
            return Err(Error::NonHermitian { asymmetry });
        }
        Ok(Self { inner: m })
    }

    /// Builds a Hermitian matrix by averaging `m` with its adjoint.
    ///
    /// Used for products like `U D U*` that are Hermitian in exact arithmetic.
    pub fn symmetrized(m: DMatrix<Complex64>) -> Self {
        let adj = m.adjoint();
        Self {
            inner: (m + adj) * Complex64::new(0.5, 0.0),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            inner: DMatrix::identity(dim, dim),
        }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = DMatrix::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        Self { inner: m }
    }

    pub fn dim(&self) -> usize {
        self.inner.nrows()
    }

    pub fn as_matrix(&self) -> &DMatrix<Complex64> {
        &self.inner
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.inner
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.inner[(i, j)]
    }

    /// True when every off-diagonal entry is exactly zero.
    pub fn is_diagonal(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| i == j || self.inner[(i, j)] == Complex64::new(0.0, 0.0)))
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = if self.is_diagonal() {
            (0..self.dim()).map(|i| self.inner[(i, i)].re).collect()
        } else {
            SymmetricEigen::new(self.inner.clone())
                .eigenvalues
                .iter()
                .copied()
                .collect()
        };
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| self.inner[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn power(&self, alpha: f64) -> Result<Self> {
        hermitian_power(self, alpha)
    }
}

fn asymmetry(m: &DMatrix<Complex64>) -> f64 {
    let n = m.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Checks that the eigenvalues `ev` clear the relative positive-definiteness guard.
pub(crate) fn check_positive(ev: &[f64]) -> Result<()> {
    let top = ev.iter().fold(0.0_f64, |a, &l| a.max(l.abs()));
    let min = ev.iter().copied().fold(f64::INFINITY, f64::min);
    let guard = PD_GUARD * top;
    if !min.is_finite() || !top.is_finite() || min <= guard || top == 0.0 {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: min,
            guard,
        });
    }
    Ok(())
}

/// `A^alpha = U diag(lambda_i^alpha) U*` for a positive-definite Hermitian `A`.
///
/// Exactly diagonal inputs skip the eigensolver, so power weights evaluated
/// through this path agree bit for bit with their closed forms.
pub fn hermitian_power(a: &HermitianMatrix, alpha: f64) -> Result<HermitianMatrix> {
    let check = HermitianMatrix::new(a.inner.clone())?;
    if check.is_diagonal() {
        let ev: Vec<f64> = (0..a.dim()).map(|i| a.inner[(i, i)].re).collect();
        check_positive(&ev)?;
        let powered: Vec<f64> = ev.iter().map(|l| l.powf(alpha)).collect();
        return Ok(HermitianMatrix::from_real_diagonal(&powered));
    }
    let eig = SymmetricEigen::new(a.inner.clone());
    let ev: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    check_positive(&ev)?;
    let u = &eig.eigenvectors;
    let n = a.dim();
    let mut scaled = u.clone();
    for (j, l) in ev.iter().enumerate() {
        let f = Complex64::new(l.powf(alpha), 0.0);
        for i in 0..n {
            scaled[(i, j)] *= f;
        }
    }
    Ok(HermitianMatrix::symmetrized(scaled * u.adjoint()))
}

/// Largest singular value of an arbitrary square or rectangular matrix.
pub fn spectral_norm(a: &DMatrix<Complex64>) -> Result<f64> {
    if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    if a.is_empty() {
        return Ok(0.0);
    }
    let sv = a.clone().svd(false, false).singular_values;
    Ok(sv.iter().copied().fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{complex_gaussian, substream};

    pub(crate) fn random_pd(dim: usize, seed: u64) -> HermitianMatrix {
        let mut rng = substream(seed, "random-pd");
        let g = DMatrix::from_fn(dim, dim, |_, _| complex_gaussian(&mut rng));
        let m = &g * g.adjoint() + DMatrix::identity(dim, dim) * Complex64::new(0.5, 0.0);
        HermitianMatrix::symmetrized(m)
    }

    fn dist(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
        spectral_norm(&(a - b)).unwrap()
    }

    #[test]
    fn identity_is_fixed_by_powers() {
        let i2 = HermitianMatrix::identity(2);
        assert_eq!(hermitian_power(&i2, 0.5).unwrap(), i2);
        assert_eq!(hermitian_power(&i2, -3.0).unwrap(), i2);
    }

    #[test]
    fn diagonal_square_root() {
        let a = HermitianMatrix::from_real_diagonal(&[4.0, 9.0]);
        let r = hermitian_power(&a, 0.5).unwrap();
        assert_eq!(r, HermitianMatrix::from_real_diagonal(&[2.0, 3.0]));
    }

    #[test]
    fn cube_root_of_random_pd_matrix() {
        let a = random_pd(3, 7);
        let b = hermitian_power(&a, 1.0 / 3.0).unwrap();
        let bbb = b.as_matrix() * b.as_matrix() * b.as_matrix();
        assert!(dist(&bbb, a.as_matrix()) < 1e-10 * spectral_norm(a.as_matrix()).unwrap());
    }

    #[test]
    fn power_and_inverse_power_cancel() {
        for seed in 0..10 {
            let a = random_pd(3, seed);
            let p = hermitian_power(&a, 0.7).unwrap();
            let q = hermitian_power(&a, -0.7).unwrap();
            let prod = p.as_matrix() * q.as_matrix();
            assert!(dist(&prod, &DMatrix::identity(3, 3)) < 1e-10);
        }
    }

    #[test]
    fn rejects_non_hermitian_and_indefinite() {
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(1.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
            ],
        );
        assert!(matches!(
            HermitianMatrix::new(m),
            Err(Error::NonHermitian { .. })
        ));
        let indefinite = HermitianMatrix::from_real_diagonal(&[1.0, -1.0]);
        assert!(matches!(
            hermitian_power(&indefinite, 0.5),
            Err(Error::NotPositiveDefinite { .. })
        ));
        let tiny = HermitianMatrix::from_real_diagonal(&[1.0, 1e-14]);
        assert!(matches!(
            hermitian_power(&tiny, 0.5),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }

    #[test]
    fn spectral_norm_examples() {
        let c = |x: f64| Complex64::new(x, 0.0);
        assert_eq!(spectral_norm(&DMatrix::identity(3, 3)).unwrap(), 1.0);
        let d = DMatrix::from_row_slice(2, 2, &[c(3.0), c(0.0), c(0.0), c(1.0)]);
        assert!((spectral_norm(&d).unwrap() - 3.0).abs() < 1e-15);
        // For [[a, b], [c, d]] the largest singular value is
        // sqrt((s + sqrt(s^2 - 4 det^2)) / 2) with s the squared Frobenius norm.
        let nil = DMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(0.0), c(0.0)]);
        let s: f64 = 1.0;
        let det: f64 = 0.0;
        let oracle = ((s + (s * s - 4.0 * det * det).sqrt()) / 2.0).sqrt();
        assert!((spectral_norm(&nil).unwrap() - oracle).abs() < 1e-15);
        let bad = DMatrix::from_element(2, 2, c(f64::NAN));
        assert_eq!(spectral_norm(&bad), Err(Error::NonFinite));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn powers_compose(seed in 0u64..10_000, dim in 1usize..4, a in -1.5f64..1.5, b in -1.5f64..1.5) {
                let m = random_pd(dim, seed);
                let lhs = hermitian_power(&hermitian_power(&m, a).unwrap(), b).unwrap();
                let rhs = hermitian_power(&m, a * b).unwrap();
                let scale = spectral_norm(rhs.as_matrix()).unwrap();
                prop_assert!(dist(lhs.as_matrix(), rhs.as_matrix()) <= 1e-9 * scale);
            }

            #[test]
            fn spectral_norm_is_submultiplicative(seed in 0u64..10_000, dim in 1usize..5) {
                let mut rng = substream(seed, "submult");
                let a = DMatrix::from_fn(dim, dim, |_, _| complex_gaussian(&mut rng));
                let b = DMatrix::from_fn(dim, dim, |_, _| complex_gaussian(&mut rng));
                let ab = spectral_norm(&(&a * &b)).unwrap();
                prop_assert!(ab <= spectral_norm(&a).unwrap() * spectral_norm(&b).unwrap() + 1e-12);
            }
        }
    }
}
