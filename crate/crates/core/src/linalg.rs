//! Small dense linear-algebra helpers shared across the crate.
//!
//! Everything here operates on `nalgebra` dynamic matrices at desk scale
//! (dimensions of a few dozen), so plain eigendecompositions and SVDs are
//! always affordable.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMat = DMatrix<Complex64>;
pub type RMat = DMatrix<f64>;
pub type RVec = DVector<f64>;

/// Largest absolute entry of a real matrix.
pub fn max_abs(m: &RMat) -> f64 {
    m.iter().fold(0.0f64, |acc, x| acc.max(x.abs()))
}

/// Largest absolute entry of a complex matrix.
pub fn max_abs_c(m: &CMat) -> f64 {
    m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

/// Deviation of `m` from its own conjugate transpose (max entry).
pub fn hermitian_deviation(m: &CMat) -> f64 {
    max_abs_c(&(m - m.adjoint()))
}

/// (m + m*)/2.
pub fn hermitian_part(m: &CMat) -> CMat {
    (m + m.adjoint()).map(|z| z * 0.5)
}

/// True if every entry is finite.
pub fn all_finite_c(m: &CMat) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Eigendecomposition of a real symmetric matrix, eigenvalues descending.
///
/// The input is symmetrized first so callers may pass matrices that are
/// symmetric only up to rounding.
pub fn sym_eigen_desc(m: &RMat) -> (Vec<f64>, Vec<RVec>) {
    let sym = (m + m.transpose()).scale(0.5);
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[j]
            .partial_cmp(&eig.eigenvalues[i])
            .expect("eigenvalues are finite")
    });
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = order
        .iter()
        .map(|&i| eig.eigenvectors.column(i).into_owned())
        .collect();
    (values, vectors)
}

/// Largest-magnitude eigenvalue of a complex Hermitian matrix.
pub fn spectral_radius_hermitian(m: &CMat) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    let eig = hermitian_part(m).symmetric_eigen();
    eig.eigenvalues
        .iter()
        .fold(0.0f64, |acc, x| acc.max(x.abs()))
}

/// Largest singular value of a complex matrix.
pub fn operator_norm(m: &CMat) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    let sv = m.clone().singular_values();
    sv.iter().fold(0.0f64, |acc, x| acc.max(*x))
}

/// Square root and inverse square root of a symmetric positive-definite matrix.
pub fn spd_sqrt_inv_sqrt(m: &RMat) -> Result<(RMat, RMat)> {
    let (values, vectors) = sym_eigen_desc(m);
    let n = m.nrows();
    if values.iter().any(|&l| l <= 0.0) {
        return Err(Error::NumericalFailure(
            "matrix is not positive-definite".into(),
        ));
    }
    let mut sqrt = RMat::zeros(n, n);
    let mut inv_sqrt = RMat::zeros(n, n);
    for (l, v) in values.iter().zip(vectors.iter()) {
        let outer = v * v.transpose();
        sqrt += outer.scale(l.sqrt());
        inv_sqrt += outer.scale(1.0 / l.sqrt());
    }
    Ok((sqrt, inv_sqrt))
}

/// Number of singular values above `rel_cutoff` times the largest.
pub fn numerical_rank(m: &RMat, rel_cutoff: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().singular_values();
    let max = sv.iter().fold(0.0f64, |acc, x| acc.max(*x));
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_cutoff * max).count()
}

/// Smallest singular value of a real matrix.
pub fn min_singular_value(m: &RMat) -> f64 {
    let sv = m.clone().singular_values();
    sv.iter().fold(f64::INFINITY, |acc, x| acc.min(*x))
}

/// exp(scale * h) for Hermitian `h`, via eigendecomposition.
///
/// Exact up to the eigensolver, which is what the unitary evolution
/// oracle needs; `scale` is typically -i*t.
pub fn expm_hermitian(h: &CMat, scale: Complex64) -> CMat {
    let n = h.nrows();
    if n == 0 {
        return CMat::zeros(0, 0);
    }
    let eig = hermitian_part(h).symmetric_eigen();
    let mut out = CMat::zeros(n, n);
    for k in 0..n {
        let v = eig.eigenvectors.column(k);
        let phase = (scale * eig.eigenvalues[k]).exp();
        out += (v * v.adjoint()).map(|z| z * phase);
    }
    out
}

/// Least-squares solve of `a * x = b` via SVD, returning `(x, residual)`
/// where the residual is the largest entry of `a*x - b`.
pub fn lstsq(a: &RMat, b: &RMat) -> Result<(RMat, f64)> {
    let svd = a.clone().svd(true, true);
    let x = svd
        .solve(b, 0.0)
        .map_err(|e| Error::NumericalFailure(format!("least-squares solve failed: {e}")))?;
    let residual = max_abs(&(a * &x - b));
    Ok((x, residual))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sym_eigen_orders_descending() {
        let m = RMat::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 3.0]);
        let (values, _) = sym_eigen_desc(&m);
        assert!(values[0] >= values[1]);
        assert!((values[0] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn spd_sqrt_squares_back() {
        let m = RMat::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 2.0]);
        let (s, si) = spd_sqrt_inv_sqrt(&m).unwrap();
        assert!(max_abs(&(&s * &s - &m)) < 1e-12);
        assert!(max_abs(&(&s * &si - RMat::identity(2, 2))) < 1e-12);
    }

    #[test]
    fn expm_hermitian_is_unitary() {
        let h = CMat::from_row_slice(
            2,
            2,
            &[
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, -1.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(-1.0, 0.0),
            ],
        );
        let u = expm_hermitian(&h, Complex64::new(0.0, -0.7));
        let id = CMat::identity(2, 2);
        assert!(max_abs_c(&(&u * u.adjoint() - id)) < 1e-12);
    }
}
