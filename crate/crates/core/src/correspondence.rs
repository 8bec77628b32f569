//! Passing between the C* picture and the JLB picture.
//!
//! Every element `c` of the C* algebra splits uniquely into self-adjoint
//! parts, `c = a + ib` with `a = (c + c*)/2` and `b = (c - c*)/(2i)`, and
//! the associative product is recovered from the Jordan and Lie operations
//! by `ab = a∘b + i{a,b}`. JLB homomorphisms transport to *-homomorphisms
//! by acting on the parts separately.

use std::sync::Arc;

use nalgebra::DVector;
use num_complex::Complex64;

use crate::algebra::{sample_cstar, seeded_rng};
use crate::algebra::{CstarElement, JlbElement, MatrixAlgebra};
use crate::error::{Error, Result};
use crate::linalg::RMat;

/// Splits `c = a + ib` into its unique self-adjoint parts.
pub fn sa_decompose(c: &CstarElement) -> (JlbElement, JlbElement) {
    let algebra = c.algebra();
    let a_blocks = c
        .blocks()
        .iter()
        .map(|m| (m + m.adjoint()).map(|z| z * 0.5))
        .collect();
    let b_blocks = c
        .blocks()
        .iter()
        // 1/(2i) = -i/2
        .map(|m| (m - m.adjoint()).map(|z| z * Complex64::new(0.0, -0.5)))
        .collect();
    let a = algebra
        .element_from_blocks(a_blocks)
        .expect("(c+c*)/2 is Hermitian by construction");
    let b = algebra
        .element_from_blocks(b_blocks)
        .expect("(c-c*)/2i is Hermitian by construction");
    (a, b)
}

/// Rebuilds `a + ib`; inverse of [`sa_decompose`].
pub fn complexify(a: &JlbElement, b: &JlbElement) -> Result<CstarElement> {
    a.to_cstar()
        .add(&b.to_cstar().scale_complex(Complex64::new(0.0, 1.0)))
}

/// Residual of `ab - (a∘b + i{a,b})` in the operator norm.
pub fn product_transport_check(a: &JlbElement, b: &JlbElement) -> Result<f64> {
    let direct = a.to_cstar().product(&b.to_cstar())?;
    let rebuilt = complexify(&a.jordan(b)?, &a.lie(b)?)?;
    Ok(direct.sub(&rebuilt)?.norm())
}

/// A JLB homomorphism, stored extensionally as a real matrix on the source
/// Hermitian basis: column `i` holds the target coordinates of the image
/// of source basis element `i`.
#[derive(Clone, Debug)]
pub struct HomomorphismTable {
    source: Arc<MatrixAlgebra>,
    target: Arc<MatrixAlgebra>,
    matrix: RMat,
}

/// Tolerance for the homomorphism invariants (product preservation, unit).
pub const HOM_TOL: f64 = 1e-10;

impl HomomorphismTable {
    /// Validates that the table preserves the Jordan and Lie products on
    /// all basis pairs and maps unit to unit, then wraps it.
    pub fn new(
        source: &Arc<MatrixAlgebra>,
        target: &Arc<MatrixAlgebra>,
        matrix: RMat,
    ) -> Result<Self> {
        if matrix.nrows() != target.herm_dim() || matrix.ncols() != source.herm_dim() {
            return Err(Error::ShapeMismatch(format!(
                "homomorphism table is {}x{}, expected {}x{}",
                matrix.nrows(),
                matrix.ncols(),
                target.herm_dim(),
                source.herm_dim()
            )));
        }
        let table = HomomorphismTable {
            source: Arc::clone(source),
            target: Arc::clone(target),
            matrix,
        };
        let unit_residual = table.apply_jlb(&source.unit())?.sub(&target.unit())?.norm();
        if unit_residual > HOM_TOL {
            return Err(Error::InvalidInput(format!(
                "homomorphism does not preserve the unit (residual {unit_residual:.3e})"
            )));
        }
        let basis = source.basis_elements();
        for (i, ei) in basis.iter().enumerate() {
            for ej in basis.iter().skip(i) {
                let jordan_res = table
                    .apply_jlb(&ei.jordan(ej)?)?
                    .sub(&table.apply_jlb(ei)?.jordan(&table.apply_jlb(ej)?)?)?
                    .norm();
                let lie_res = table
                    .apply_jlb(&ei.lie(ej)?)?
                    .sub(&table.apply_jlb(ei)?.lie(&table.apply_jlb(ej)?)?)?
                    .norm();
                if jordan_res > HOM_TOL || lie_res > HOM_TOL {
                    return Err(Error::InvalidInput(format!(
                        "table is not a JLB homomorphism (jordan residual {jordan_res:.3e}, \
                         lie residual {lie_res:.3e})"
                    )));
                }
            }
        }
        Ok(table)
    }

    /// Builds the table from an arbitrary action on elements by evaluating
    /// it on the basis; the action must be a JLB homomorphism.
    pub fn from_action<F>(
        source: &Arc<MatrixAlgebra>,
        target: &Arc<MatrixAlgebra>,
        action: F,
    ) -> Result<Self>
    where
        F: Fn(&JlbElement) -> Result<JlbElement>,
    {
        let n = source.herm_dim();
        let mut matrix = RMat::zeros(target.herm_dim(), n);
        for i in 0..n {
            let image = action(&source.basis_element(i))?;
            matrix.set_column(i, &image.coords());
        }
        HomomorphismTable::new(source, target, matrix)
    }

    pub fn identity(algebra: &Arc<MatrixAlgebra>) -> Self {
        HomomorphismTable {
            source: Arc::clone(algebra),
            target: Arc::clone(algebra),
            matrix: RMat::identity(algebra.herm_dim(), algebra.herm_dim()),
        }
    }

    pub fn matrix(&self) -> &RMat {
        &self.matrix
    }

    pub fn source(&self) -> &Arc<MatrixAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<MatrixAlgebra> {
        &self.target
    }

    /// Applies the table to a Hermitian element via coordinates.
    pub fn apply_jlb(&self, a: &JlbElement) -> Result<JlbElement> {
        if !self.source.same_shape(a.algebra()) {
            return Err(Error::AlgebraMismatch(
                "homomorphism applied to foreign element".into(),
            ));
        }
        let coords = &self.matrix * a.coords();
        self.target
            .element_from_coords(&DVector::from_column_slice(coords.as_slice()))
    }
}

/// The transported *-homomorphism `c = a + ib ↦ f(a) + i f(b)`.
#[derive(Clone, Debug)]
pub struct TransportedHom {
    table: HomomorphismTable,
}

/// Residuals of the *-homomorphism laws checked on random samples.
#[derive(Clone, Debug)]
pub struct StarHomResiduals {
    pub multiplicativity: f64,
    pub involution: f64,
    pub unit: f64,
}

/// Lifts a JLB homomorphism to the C* algebras.
pub fn transport_hom(table: &HomomorphismTable) -> TransportedHom {
    TransportedHom {
        table: table.clone(),
    }
}

impl TransportedHom {
    pub fn table(&self) -> &HomomorphismTable {
        &self.table
    }

    pub fn apply(&self, c: &CstarElement) -> Result<CstarElement> {
        let (a, b) = sa_decompose(c);
        complexify(&self.table.apply_jlb(&a)?, &self.table.apply_jlb(&b)?)
    }

    /// Checks `F(f)(cd) = F(f)(c) F(f)(d)` and `F(f)(c*) = F(f)(c)*` on
    /// seeded random samples, returning worst-case residuals.
    pub fn verify_star_properties(&self, samples: usize, seed: u64) -> Result<StarHomResiduals> {
        let mut rng = seeded_rng(seed);
        let mut mult = 0.0f64;
        let mut invol = 0.0f64;
        for _ in 0..samples {
            let c = sample_cstar(&self.table.source, &mut rng);
            let d = sample_cstar(&self.table.source, &mut rng);
            let lhs = self.apply(&c.product(&d)?)?;
            let rhs = self.apply(&c)?.product(&self.apply(&d)?)?;
            mult = mult.max(lhs.sub(&rhs)?.norm() / (1.0 + c.norm() * d.norm()));
            let lhs = self.apply(&c.involution())?;
            let rhs = self.apply(&c)?.involution();
            invol = invol.max(lhs.sub(&rhs)?.norm() / (1.0 + c.norm()));
        }
        let unit_src = self.table.source.unit().to_cstar();
        let unit_tgt = self.table.target.unit().to_cstar();
        let unit = self.apply(&unit_src)?.sub(&unit_tgt)?.norm();
        Ok(StarHomResiduals {
            multiplicativity: mult,
            involution: invol,
            unit,
        })
    }
}

/// True if the two transported evaluators agree on every Hermitian basis
/// element and its i-multiple; by real-linearity of the parts this pins
/// the action on the whole algebra.
pub fn evaluators_agree_on_generators(
    f: &TransportedHom,
    g: &TransportedHom,
    tol: f64,
) -> Result<bool> {
    let source = &f.table.source;
    for i in 0..source.herm_dim() {
        let e = source.basis_element(i).to_cstar();
        let ie = e.scale_complex(Complex64::new(0.0, 1.0));
        for c in [&e, &ie] {
            if f.apply(c)?.sub(&g.apply(c)?)?.norm() > tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
