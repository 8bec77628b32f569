//! States realized as block density matrices.
//!
//! A state is a positive normalized real-linear functional on the
//! self-adjoint part of the algebra; on a finite direct sum of matrix
//! blocks every such functional is `a ↦ Σ_i tr(ρ_i a_i)` for positive
//! semidefinite blocks `ρ_i` with total trace one, so no generality is
//! lost by this representation.

use std::sync::Arc;

use nalgebra::DVector;
use num_complex::Complex64;

use crate::algebra::{jordan_block, lie_block, CstarElement, JlbElement, MatrixAlgebra};
use crate::correspondence::sa_decompose;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_deviation, hermitian_part, sym_eigen_desc, CMat, RMat};

/// Minimum eigenvalue a density block may have.
pub const PSD_TOL: f64 = 1e-12;
/// Allowed deviation of the total trace from one.
pub const TRACE_TOL: f64 = 1e-12;
/// Default relative singular-value cutoff for rank decisions.
pub const DEFAULT_RANK_CUTOFF: f64 = 1e-9;

/// A state on the algebra, held as one density matrix per block.
#[derive(Clone, Debug)]
pub struct StateFunctional {
    algebra: Arc<MatrixAlgebra>,
    density_blocks: Vec<CMat>,
}

impl StateFunctional {
    /// Wraps density blocks after validating Hermiticity, positivity, and
    /// normalization.
    pub fn new(algebra: &Arc<MatrixAlgebra>, density_blocks: Vec<CMat>) -> Result<Self> {
        if density_blocks.len() != algebra.num_blocks() {
            return Err(Error::InvalidState(format!(
                "expected {} density blocks, got {}",
                algebra.num_blocks(),
                density_blocks.len()
            )));
        }
        let mut trace = 0.0;
        for (rho, &d) in density_blocks.iter().zip(algebra.block_dims().iter()) {
            if rho.nrows() != d || rho.ncols() != d {
                return Err(Error::InvalidState(format!(
                    "density block is {}x{}, expected {d}x{d}",
                    rho.nrows(),
                    rho.ncols()
                )));
            }
            let dev = hermitian_deviation(rho);
            if dev > 1e-10 {
                return Err(Error::InvalidState(format!(
                    "density block is not Hermitian (deviation {dev:.3e})"
                )));
            }
            let eig = hermitian_part(rho).symmetric_eigen();
            if let Some(min) = eig.eigenvalues.iter().cloned().reduce(f64::min) {
                if min < -PSD_TOL {
                    return Err(Error::InvalidState(format!(
                        "density block has negative eigenvalue {min:.3e}"
                    )));
                }
            }
            trace += rho.trace().re;
        }
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!(
                "normalization: total trace is {trace}, expected 1"
            )));
        }
        Ok(StateFunctional {
            algebra: Arc::clone(algebra),
            density_blocks,
        })
    }

    /// Rank-one state from one unit vector per block.
    ///
    /// The concatenated vector must have norm one; each block contributes
    /// the outer product of its piece.
    pub fn pure(algebra: &Arc<MatrixAlgebra>, vectors: &[Vec<Complex64>]) -> Result<Self> {
        if vectors.len() != algebra.num_blocks() {
            return Err(Error::InvalidState(format!(
                "expected {} block vectors, got {}",
                algebra.num_blocks(),
                vectors.len()
            )));
        }
        let mut norm_sq = 0.0;
        for (v, &d) in vectors.iter().zip(algebra.block_dims().iter()) {
            if v.len() != d {
                return Err(Error::InvalidState(format!(
                    "block vector has length {}, expected {d}",
                    v.len()
                )));
            }
            norm_sq += v.iter().map(|z| z.norm_sqr()).sum::<f64>();
        }
        if (norm_sq.sqrt() - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidState(format!(
                "pure state vector has norm {}, expected 1",
                norm_sq.sqrt()
            )));
        }
        let scale = 1.0 / norm_sq;
        let blocks = vectors
            .iter()
            .zip(algebra.block_dims().iter())
            .map(|(v, &d)| {
                let mut rho = CMat::zeros(d, d);
                for r in 0..d {
                    for c in 0..d {
                        rho[(r, c)] = v[r] * v[c].conj() * scale;
                    }
                }
                rho
            })
            .collect();
        StateFunctional::new(algebra, blocks)
    }

    /// The maximally mixed state `ρ = I / Σ n_i`.
    pub fn maximally_mixed(algebra: &Arc<MatrixAlgebra>) -> Self {
        let total: usize = algebra.block_dims().iter().sum();
        let blocks = algebra
            .block_dims()
            .iter()
            .map(|&d| CMat::identity(d, d).map(|z| z / total as f64))
            .collect();
        StateFunctional {
            algebra: Arc::clone(algebra),
            density_blocks: blocks,
        }
    }

    pub fn algebra(&self) -> &Arc<MatrixAlgebra> {
        &self.algebra
    }

    pub fn density_blocks(&self) -> &[CMat] {
        &self.density_blocks
    }

    /// `φ(a) = Σ_i tr(ρ_i a_i)`, a real number for Hermitian `a`.
    pub fn evaluate(&self, a: &JlbElement) -> Result<f64> {
        if !self.algebra.same_shape(a.algebra()) {
            return Err(Error::AlgebraMismatch(
                "state applied to foreign element".into(),
            ));
        }
        let mut value = Complex64::new(0.0, 0.0);
        for (rho, blk) in self.density_blocks.iter().zip(a.blocks().iter()) {
            value += (rho * blk).trace();
        }
        debug_assert!(
            value.im.abs() < 1e-10,
            "trace pairing grew an imaginary part"
        );
        Ok(value.re)
    }

    /// Complex-linear extension: `φ(c) = φ(a) + i φ(b)` for `c = a + ib`.
    pub fn evaluate_cstar(&self, c: &CstarElement) -> Result<Complex64> {
        if !self.algebra.same_shape(c.algebra()) {
            return Err(Error::AlgebraMismatch(
                "state applied to foreign element".into(),
            ));
        }
        let (a, b) = sa_decompose(c);
        Ok(Complex64::new(self.evaluate(&a)?, self.evaluate(&b)?))
    }

    /// Both Cauchy-Schwarz slacks for the state:
    /// `(φ(a∘b)² - φ(a∘a)φ(b∘b), φ({a,b})² - φ(a∘a)φ(b∘b))`.
    ///
    /// Positivity of the state forces both to be nonpositive up to rounding.
    pub fn check_cauchy_schwarz(&self, a: &JlbElement, b: &JlbElement) -> Result<(f64, f64)> {
        let aa = self.evaluate(&a.jordan(a)?)?;
        let bb = self.evaluate(&b.jordan(b)?)?;
        let ab = self.evaluate(&a.jordan(b)?)?;
        let lab = self.evaluate(&a.lie(b)?)?;
        Ok((ab * ab - aa * bb, lab * lab - aa * bb))
    }

    /// Real Gram matrix `G1[i][j] = φ(e_i ∘ e_j)` over the Hermitian basis.
    pub fn jordan_gram(&self) -> RMat {
        let n = self.algebra.herm_dim();
        let basis: Vec<_> = (0..n).map(|i| self.algebra.basis_element(i)).collect();
        let mut g = RMat::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut v = 0.0;
                for ((rho, x), y) in self
                    .density_blocks
                    .iter()
                    .zip(basis[i].blocks().iter())
                    .zip(basis[j].blocks().iter())
                {
                    v += (rho * jordan_block(x, y)).trace().re;
                }
                g[(i, j)] = v;
                g[(j, i)] = v;
            }
        }
        g
    }

    /// Real antisymmetric matrix `W1[i][j] = φ({e_i, e_j})`.
    pub fn lie_gram(&self) -> RMat {
        let n = self.algebra.herm_dim();
        let basis: Vec<_> = (0..n).map(|i| self.algebra.basis_element(i)).collect();
        let mut w = RMat::zeros(n, n);
        for i in 0..n {
            for j in (i + 1)..n {
                let mut v = 0.0;
                for ((rho, x), y) in self
                    .density_blocks
                    .iter()
                    .zip(basis[i].blocks().iter())
                    .zip(basis[j].blocks().iter())
                {
                    v += (rho * lie_block(x, y)).trace().re;
                }
                w[(i, j)] = v;
                w[(j, i)] = -v;
            }
        }
        w
    }

    /// Real basis of the null set `N = {a : φ(a∘a) = 0}`.
    ///
    /// Computed as the null space of the Jordan Gram matrix, treating
    /// eigenvalues below `rank_cutoff` times the largest as zero.
    pub fn null_set_basis(&self, rank_cutoff: f64) -> Vec<JlbElement> {
        let gram = self.jordan_gram();
        let (values, vectors) = sym_eigen_desc(&gram);
        let max = values.first().copied().unwrap_or(0.0).max(0.0);
        let cutoff = rank_cutoff * max;
        values
            .iter()
            .zip(vectors.iter())
            .filter(|(&l, _)| l <= cutoff)
            .map(|(_, v)| {
                self.algebra
                    .element_from_coords(&DVector::from_column_slice(v.as_slice()))
                    .expect("basis coordinates are valid")
            })
            .collect()
    }
}
