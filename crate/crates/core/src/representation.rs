//! Algebra elements as quadratic functions on the quotient manifold.
//!
//! Each Hermitian element `a` acts linearly on pairs by
//! `(b, c) ↦ (a∘b - {a,c}, {a,b} + a∘c)`; projected to quotient
//! coordinates this gives a matrix `A` that commutes with the complex
//! structure and is self-adjoint for the metric (`AᵀG = GA`). The
//! represented function is the quadratic form
//!
//! ```text
//! f_a(p) = ½ pᵀ G A p,
//! ```
//!
//! whose Hamiltonian vector field (solving `Ω(X, ·) = df_a`) coincides with
//! the Schrödinger field `-Jm·A·p`. The metric and symplectic form induce
//! binary operations on represented functions, `½ g(X_a, X_b)` and
//! `½ Ω(X_a, X_b)`, which reproduce the Jordan product and Lie bracket of
//! the algebra; the function sup-norm over the sphere `{g(p,p) = 2}`
//! through the cyclic point is bounded by the element norm.

use nalgebra::DVector;
use rand::Rng;

use crate::algebra::{sample_hermitian, seeded_rng, JlbElement};
use crate::error::{Error, Result};
use crate::kahler::{KahlerPoint, KahlerStructure, PairVector};
use crate::linalg::{max_abs, spd_sqrt_inv_sqrt, sym_eigen_desc, RMat, RVec};

/// An algebra element together with its induced linear action on quotient
/// coordinates.
#[derive(Clone, Debug)]
pub struct RepresentedObservable {
    element: JlbElement,
    matrix: RMat,
}

/// A tangent vector at a point; on this linear manifold tangent vectors are
/// identified with coordinate vectors.
#[derive(Clone, Debug)]
pub struct TangentVector {
    pub base: KahlerPoint,
    pub coords: RVec,
}

/// The pair `(a∘b, {a,b})` whose class is the special point `ξ_ab`.
pub fn xi_product_pair(a: &JlbElement, b: &JlbElement) -> Result<PairVector> {
    PairVector::new(a.jordan(b)?, a.lie(b)?)
}

/// The special point `ξ_ab`, the class of `(a∘b, {a,b})`.
pub fn xi_ab(k: &KahlerStructure, a: &JlbElement, b: &JlbElement) -> Result<KahlerPoint> {
    k.project(&xi_product_pair(a, b)?)
}

/// Builds the action matrix of `a` on quotient coordinates.
pub fn action_matrix(k: &KahlerStructure, a: &JlbElement) -> Result<RepresentedObservable> {
    if !k.algebra().same_shape(a.algebra()) {
        return Err(Error::AlgebraMismatch(
            "element from a different algebra".into(),
        ));
    }
    let algebra = k.algebra();
    let n = algebra.herm_dim();
    // action on the doubled basis: (e_j, 0) ↦ (a∘e_j, {a,e_j}),
    //                              (0, e_j) ↦ (-{a,e_j}, a∘e_j)
    let mut apair = RMat::zeros(2 * n, 2 * n);
    for j in 0..n {
        let e = algebra.basis_element(j);
        let jordan = a.jordan(&e)?.coords();
        let lie = a.lie(&e)?.coords();
        for i in 0..n {
            apair[(i, j)] = jordan[i];
            apair[(n + i, j)] = lie[i];
            apair[(i, n + j)] = -lie[i];
            apair[(n + i, n + j)] = jordan[i];
        }
    }
    let matrix = k.basis_matrix().transpose() * apair * k.basis_matrix();
    Ok(RepresentedObservable {
        element: a.clone(),
        matrix,
    })
}

impl RepresentedObservable {
    pub fn element(&self) -> &JlbElement {
        &self.element
    }

    pub fn matrix(&self) -> &RMat {
        &self.matrix
    }

    /// `f_a(p) = ½ pᵀ G A p`.
    pub fn eval_f(&self, k: &KahlerStructure, p: &KahlerPoint) -> Result<f64> {
        k.check_point(p)?;
        let c = p.coords();
        Ok(0.5 * (c.transpose() * k.metric() * &self.matrix * c)[(0, 0)])
    }

    /// Hamiltonian field of `f_a` at `p`, obtained by solving
    /// `Ω(X, ·) = df_a|_p` through the stored symplectic inverse.
    ///
    /// With the orientation `W = JmᵀG` this evaluates to `-Winv·G·A·p`.
    pub fn hamiltonian_field(&self, k: &KahlerStructure, p: &KahlerPoint) -> Result<TangentVector> {
        k.check_point(p)?;
        let df = k.metric() * &self.matrix * p.coords();
        Ok(TangentVector {
            base: p.clone(),
            coords: -(k.symplectic_inverse() * df),
        })
    }

    /// Schrödinger field `-Jm·A·p`, computed without the symplectic form;
    /// serves as the independent route for the Hamiltonian field.
    pub fn schrodinger_field(&self, k: &KahlerStructure, p: &KahlerPoint) -> Result<TangentVector> {
        k.check_point(p)?;
        Ok(TangentVector {
            base: p.clone(),
            coords: -(k.complex_structure() * &self.matrix * p.coords()),
        })
    }

    /// Sup of `|f_a|` over the sphere `{g(p,p) = 2}`, computed exactly as
    /// the largest absolute eigenvalue of the metric-symmetrized action.
    pub fn sup_norm(&self, k: &KahlerStructure) -> Result<f64> {
        let (sqrt, inv_sqrt) = spd_sqrt_inv_sqrt(k.metric())?;
        let sym = sqrt * &self.matrix * inv_sqrt;
        let (values, _) = sym_eigen_desc(&sym);
        Ok(values.iter().fold(0.0f64, |acc, l| acc.max(l.abs())))
    }

    /// Residual of the metric self-adjointness `AᵀG = GA`.
    pub fn metric_selfadjoint_residual(&self, k: &KahlerStructure) -> f64 {
        max_abs(&(self.matrix.transpose() * k.metric() - k.metric() * &self.matrix))
    }

    /// Residual of commutation with the complex structure.
    pub fn j_commutation_residual(&self, k: &KahlerStructure) -> f64 {
        max_abs(&(&self.matrix * k.complex_structure() - k.complex_structure() * &self.matrix))
    }
}

/// `f_a(p)` for a bare element; builds the action matrix on the fly.
pub fn eval_f(k: &KahlerStructure, a: &JlbElement, p: &KahlerPoint) -> Result<f64> {
    action_matrix(k, a)?.eval_f(k, p)
}

pub fn hamiltonian_field(
    k: &KahlerStructure,
    a: &JlbElement,
    p: &KahlerPoint,
) -> Result<TangentVector> {
    action_matrix(k, a)?.hamiltonian_field(k, p)
}

pub fn schrodinger_field(
    k: &KahlerStructure,
    a: &JlbElement,
    p: &KahlerPoint,
) -> Result<TangentVector> {
    action_matrix(k, a)?.schrodinger_field(k, p)
}

/// Metric-induced operation on represented functions at `p`:
/// `½ g(X_a, X_b)`.
pub fn fn_jordan(
    k: &KahlerStructure,
    a: &JlbElement,
    b: &JlbElement,
    p: &KahlerPoint,
) -> Result<f64> {
    let xa = hamiltonian_field(k, a, p)?;
    let xb = hamiltonian_field(k, b, p)?;
    Ok(0.5 * (xa.coords.transpose() * k.metric() * &xb.coords)[(0, 0)])
}

/// Symplectic-induced operation on represented functions at `p`:
/// `½ Ω(X_a, X_b)`.
pub fn fn_poisson(
    k: &KahlerStructure,
    a: &JlbElement,
    b: &JlbElement,
    p: &KahlerPoint,
) -> Result<f64> {
    let xa = hamiltonian_field(k, a, p)?;
    let xb = hamiltonian_field(k, b, p)?;
    Ok(0.5 * (xa.coords.transpose() * k.symplectic() * &xb.coords)[(0, 0)])
}

/// The preferred point `ν`, the class of `(1, 1)`; evaluation of any
/// represented function there recovers the state.
pub fn cyclic_point(k: &KahlerStructure) -> KahlerPoint {
    let unit = k.algebra().unit();
    k.project_elements(&unit, &unit)
        .expect("unit pair always projects")
}

/// Numerical rank of the span of Hamiltonian fields over the Hermitian
/// basis at `p`. The fields are tangent to the metric sphere through `p`,
/// so the expected value at a generic point is `2m - 1`.
pub fn span_rank(k: &KahlerStructure, p: &KahlerPoint) -> Result<usize> {
    k.check_point(p)?;
    if p.coords().norm() == 0.0 {
        return Err(Error::InvalidInput(
            "span rank is undefined at the zero point".into(),
        ));
    }
    let n = k.algebra().herm_dim();
    let mut fields = RMat::zeros(k.real_dim(), n);
    for i in 0..n {
        let e = k.algebra().basis_element(i);
        let x = hamiltonian_field(k, &e, p)?;
        fields.set_column(i, &x.coords);
    }
    Ok(crate::linalg::numerical_rank(&fields, 1e-9))
}

/// Random sample point with coordinates uniform in `[-1, 1]`.
pub(crate) fn sample_point<R: Rng>(k: &KahlerStructure, rng: &mut R) -> KahlerPoint {
    let coords = DVector::from_fn(k.real_dim(), |_, _| rng.gen_range(-1.0..1.0));
    k.point(coords)
}

/// Worst-case residuals of the representation laws over random samples.
#[derive(Clone, Debug)]
pub struct RepresentationReport {
    /// worst `|½g(X_a,X_b) - f_{a∘b}|` over samples
    pub jordan_residual: f64,
    /// worst `|½Ω(X_a,X_b) - f_{{a,b}}|` over samples
    pub poisson_residual: f64,
    /// worst `max(0, |f_a| - |a|)` over samples
    pub norm_excess: f64,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
}

impl RepresentationReport {
    pub fn all_pass(&self) -> bool {
        self.jordan_residual < self.tol
            && self.poisson_residual < self.tol
            && self.norm_excess <= self.tol
    }
}

/// Checks the representation laws on seeded random elements and points.
pub fn verify_representation(
    k: &KahlerStructure,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<RepresentationReport> {
    let mut rng = seeded_rng(seed);
    let mut jordan_res = 0.0f64;
    let mut poisson_res = 0.0f64;
    let mut norm_excess = 0.0f64;
    for _ in 0..samples {
        let a = sample_hermitian(k.algebra(), &mut rng);
        let b = sample_hermitian(k.algebra(), &mut rng);
        let p = sample_point(k, &mut rng);
        let lhs_j = fn_jordan(k, &a, &b, &p)?;
        let rhs_j = eval_f(k, &a.jordan(&b)?, &p)?;
        jordan_res = jordan_res.max((lhs_j - rhs_j).abs());
        let lhs_p = fn_poisson(k, &a, &b, &p)?;
        let rhs_p = eval_f(k, &a.lie(&b)?, &p)?;
        poisson_res = poisson_res.max((lhs_p - rhs_p).abs());
        let sup = action_matrix(k, &a)?.sup_norm(k)?;
        norm_excess = norm_excess.max((sup - a.norm()).max(0.0));
    }
    Ok(RepresentationReport {
        jordan_residual: jordan_res,
        poisson_residual: poisson_res,
        norm_excess,
        samples,
        seed,
        tol,
    })
}
