//! The Kähler manifold attached to a state.
//!
//! Points of the manifold are classes of element pairs `(a, b)`, thought of
//! as `ξ_a + Jξ_b`. The state induces a bilinear pair Gram form and a pair
//! symplectic form on the doubled coordinate space; quotienting by the null
//! space of the Gram form leaves a linear space of real dimension `2m` on
//! which the metric `G` is positive-definite, the symplectic form `W` is
//! nondegenerate, and the pair swap `(a, b) ↦ (-b, a)` descends to a
//! complex structure `Jm`. The orientation convention is `W = Jmᵀ·G`.
//!
//! The quotient is taken with respect to the full null space of the pair
//! Gram form `φ(a∘a) + φ(b∘b) - 2φ({a,b})`, which coincides with the
//! realified null ideal of the state; quotienting by the smaller set where
//! `φ(a∘a) = φ(b∘b) = φ({a,b}) = 0` individually would leave the metric
//! degenerate (witness: the pair `(σ_x/2, σ_y/2)` for the pure state on the
//! first basis vector of a qubit is null for the Gram form but not in that
//! smaller set).

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use nalgebra::DVector;

use crate::algebra::{JlbElement, MatrixAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{max_abs, min_singular_value, sym_eigen_desc, RMat, RVec};
use crate::states::StateFunctional;

static NEXT_STRUCTURE_ID: AtomicU64 = AtomicU64::new(1);

/// A pair `(a, b)` of Hermitian elements, representing `ξ_a + Jξ_b`.
#[derive(Clone, Debug)]
pub struct PairVector {
    first: JlbElement,
    second: JlbElement,
}

impl PairVector {
    pub fn new(first: JlbElement, second: JlbElement) -> Result<Self> {
        if !first.algebra().same_shape(second.algebra()) {
            return Err(Error::AlgebraMismatch(
                "pair components from different algebras".into(),
            ));
        }
        Ok(PairVector { first, second })
    }

    pub fn first(&self) -> &JlbElement {
        &self.first
    }

    pub fn second(&self) -> &JlbElement {
        &self.second
    }

    /// Doubled coordinate vector `[coords(first); coords(second)]`.
    pub fn coords(&self) -> RVec {
        let a = self.first.coords();
        let b = self.second.coords();
        let n = a.len();
        RVec::from_fn(2 * n, |i, _| if i < n { a[i] } else { b[i - n] })
    }

    /// The pair-level complex structure `(a, b) ↦ (-b, a)`.
    pub fn apply_j(&self) -> PairVector {
        PairVector {
            first: self.second.scale(-1.0),
            second: self.first.clone(),
        }
    }
}

/// Pair-level Gram form on the doubled Hermitian basis:
/// `Gpair((a,b),(c,d)) = φ(a∘c) - φ({a,d}) + φ({b,c}) + φ(b∘d)`.
pub fn pair_gram(state: &StateFunctional) -> RMat {
    let g1 = state.jordan_gram();
    let w1 = state.lie_gram();
    assemble_blocks(&g1, &(-&w1), &w1, &g1)
}

/// Pair-level symplectic form:
/// `Wpair((a,b),(c,d)) = φ({a,c}) + φ(a∘d) - φ(b∘c) + φ({b,d})`.
pub fn pair_symplectic(state: &StateFunctional) -> RMat {
    let g1 = state.jordan_gram();
    let w1 = state.lie_gram();
    assemble_blocks(&w1, &g1, &(-&g1), &w1)
}

/// Pair-level complex structure `[[0, -I], [I, 0]]` on 2n coordinates.
pub fn pair_complex_structure(n: usize) -> RMat {
    let id = RMat::identity(n, n);
    assemble_blocks(&RMat::zeros(n, n), &(-&id), &id, &RMat::zeros(n, n))
}

fn assemble_blocks(tl: &RMat, tr: &RMat, bl: &RMat, br: &RMat) -> RMat {
    let n = tl.nrows();
    let mut out = RMat::zeros(2 * n, 2 * n);
    out.view_mut((0, 0), (n, n)).copy_from(tl);
    out.view_mut((0, n), (n, n)).copy_from(tr);
    out.view_mut((n, 0), (n, n)).copy_from(bl);
    out.view_mut((n, n), (n, n)).copy_from(br);
    out
}

/// A point of the quotient manifold, held as coordinates in the quotient
/// basis of the structure that produced it.
#[derive(Clone, Debug)]
pub struct KahlerPoint {
    structure_id: u64,
    coords: RVec,
}

impl KahlerPoint {
    pub fn coords(&self) -> &RVec {
        &self.coords
    }

    pub fn structure_id(&self) -> u64 {
        self.structure_id
    }

    pub fn scale(&self, factor: f64) -> KahlerPoint {
        KahlerPoint {
            structure_id: self.structure_id,
            coords: self.coords.scale(factor),
        }
    }

    pub(crate) fn from_coords(structure_id: u64, coords: RVec) -> KahlerPoint {
        KahlerPoint {
            structure_id,
            coords,
        }
    }
}

/// The quotient manifold with its metric `G`, symplectic form `W`, complex
/// structure `Jm`, and the lifts of the quotient basis back to pairs.
pub struct KahlerStructure {
    id: u64,
    algebra: Arc<MatrixAlgebra>,
    state: StateFunctional,
    rank_cutoff: f64,
    /// 2n x 2m matrix whose orthonormal columns span the non-null directions;
    /// columns are ordered `v_1..v_m, Jv_1..Jv_m`.
    basis: RMat,
    g: RMat,
    w: RMat,
    jm: RMat,
    winv: RMat,
}

impl fmt::Debug for KahlerStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "KahlerStructure(id={}, algebra={:?}, 2m={})",
            self.id,
            self.algebra.block_dims(),
            self.real_dim()
        )
    }
}

/// Ordering of the quotient eigenbasis before J-adaptation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum EigenOrder {
    Descending,
    Ascending,
}

/// Builds the quotient Kähler structure for a state.
///
/// Directions of the pair Gram form with eigenvalue at most `rank_cutoff`
/// times the largest are treated as null and quotiented away.
pub fn build_kahler(state: &StateFunctional, rank_cutoff: f64) -> Result<KahlerStructure> {
    build_kahler_ordered(state, rank_cutoff, EigenOrder::Descending)
}

pub(crate) fn build_kahler_ordered(
    state: &StateFunctional,
    rank_cutoff: f64,
    order: EigenOrder,
) -> Result<KahlerStructure> {
    let algebra = Arc::clone(state.algebra());
    let n = algebra.herm_dim();
    let gpair = pair_gram(state);
    let wpair = pair_symplectic(state);
    let jpair = pair_complex_structure(n);

    let (values, vectors) = sym_eigen_desc(&gpair);
    let max = values.first().copied().unwrap_or(0.0);
    if max <= 0.0 {
        return Err(Error::DegenerateQuotient);
    }
    let cutoff = rank_cutoff * max;
    let mut kept: Vec<RVec> = values
        .iter()
        .zip(vectors)
        .filter(|(&l, _)| l > cutoff)
        .map(|(_, v)| v)
        .collect();
    if kept.is_empty() {
        return Err(Error::DegenerateQuotient);
    }
    if order == EigenOrder::Ascending {
        kept.reverse();
    }

    // Greedy J-adapted orthonormalization with pivoting: repeatedly take the
    // kept eigenvector with the largest component outside the accepted span,
    // then accept it together with its J-image. The accepted span stays
    // J-invariant, so the J-image is automatically orthonormal to it.
    let target = kept.len();
    let mut half: Vec<RVec> = Vec::new();
    let mut accepted: Vec<RVec> = Vec::new();
    while accepted.len() < target {
        let mut best: Option<(f64, RVec)> = None;
        for u in &kept {
            let mut r = u.clone();
            for acc in &accepted {
                let c = acc.dot(&r);
                r -= acc.scale(c);
            }
            let norm = r.norm();
            if best.as_ref().is_none_or(|(bn, _)| norm > *bn) {
                best = Some((norm, r));
            }
        }
        let (norm, r) = best.expect("kept set is nonempty");
        if norm < 1e-3 {
            // remaining candidates lie inside the accepted span
            break;
        }
        let v = r.scale(1.0 / norm);
        let jv = &jpair * &v;
        half.push(v.clone());
        accepted.push(v);
        accepted.push(jv);
    }
    let m = half.len();
    if m == 0 {
        return Err(Error::DegenerateQuotient);
    }

    let mut basis = RMat::zeros(2 * n, 2 * m);
    for (i, v) in half.iter().enumerate() {
        basis.set_column(i, v);
        basis.set_column(m + i, &(&jpair * v));
    }

    let g = basis.transpose() * &gpair * &basis;
    let w = basis.transpose() * &wpair * &basis;
    let jm = basis.transpose() * &jpair * &basis;
    let winv = w
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::NumericalFailure("symplectic form is numerically singular".into()))?;

    let structure = KahlerStructure {
        id: NEXT_STRUCTURE_ID.fetch_add(1, Ordering::Relaxed),
        algebra,
        state: state.clone(),
        rank_cutoff,
        basis,
        g,
        w,
        jm,
        winv,
    };
    let report = structure.verify();
    if report.j_squared > 1e-8 || report.kahler_property > 1e-8 {
        return Err(Error::NumericalFailure(format!(
            "constructed structure violates its own invariants: J²+I = {:.3e}, W - JᵀG = {:.3e}",
            report.j_squared, report.kahler_property
        )));
    }
    Ok(structure)
}

impl KahlerStructure {
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn algebra(&self) -> &Arc<MatrixAlgebra> {
        &self.algebra
    }

    pub fn state(&self) -> &StateFunctional {
        &self.state
    }

    pub fn rank_cutoff(&self) -> f64 {
        self.rank_cutoff
    }

    /// Complex dimension `m` of the quotient.
    pub fn complex_dim(&self) -> usize {
        self.g.nrows() / 2
    }

    /// Real dimension `2m` of the quotient.
    pub fn real_dim(&self) -> usize {
        self.g.nrows()
    }

    pub fn metric(&self) -> &RMat {
        &self.g
    }

    pub fn symplectic(&self) -> &RMat {
        &self.w
    }

    pub fn complex_structure(&self) -> &RMat {
        &self.jm
    }

    pub fn symplectic_inverse(&self) -> &RMat {
        &self.winv
    }

    /// The orthonormal lift basis as a `2n x 2m` matrix.
    pub fn basis_matrix(&self) -> &RMat {
        &self.basis
    }

    /// Quotient basis lifted back to element pairs.
    pub fn lifts(&self) -> Vec<PairVector> {
        let n = self.algebra.herm_dim();
        (0..self.real_dim())
            .map(|c| {
                let col = self.basis.column(c);
                let first = self
                    .algebra
                    .element_from_coords(&DVector::from_iterator(n, (0..n).map(|i| col[i])))
                    .expect("basis coordinates are valid");
                let second = self
                    .algebra
                    .element_from_coords(&DVector::from_iterator(n, (0..n).map(|i| col[n + i])))
                    .expect("basis coordinates are valid");
                PairVector { first, second }
            })
            .collect()
    }

    /// Class of a pair in quotient coordinates; null pairs map to zero.
    pub fn project(&self, pair: &PairVector) -> Result<KahlerPoint> {
        if !self.algebra.same_shape(pair.first.algebra()) {
            return Err(Error::AlgebraMismatch(
                "pair from a different algebra".into(),
            ));
        }
        Ok(KahlerPoint {
            structure_id: self.id,
            coords: self.basis.transpose() * pair.coords(),
        })
    }

    /// Convenience wrapper for `project((a, b))`.
    pub fn project_elements(&self, a: &JlbElement, b: &JlbElement) -> Result<KahlerPoint> {
        self.project(&PairVector::new(a.clone(), b.clone())?)
    }

    pub fn zero_point(&self) -> KahlerPoint {
        KahlerPoint {
            structure_id: self.id,
            coords: RVec::zeros(self.real_dim()),
        }
    }

    pub(crate) fn check_point(&self, p: &KahlerPoint) -> Result<()> {
        if p.structure_id != self.id || p.coords.len() != self.real_dim() {
            return Err(Error::StructureMismatch);
        }
        Ok(())
    }

    pub(crate) fn point(&self, coords: RVec) -> KahlerPoint {
        KahlerPoint {
            structure_id: self.id,
            coords,
        }
    }

    /// `J` applied in quotient coordinates; applying it twice negates.
    pub fn apply_j(&self, p: &KahlerPoint) -> Result<KahlerPoint> {
        self.check_point(p)?;
        Ok(KahlerPoint {
            structure_id: self.id,
            coords: &self.jm * &p.coords,
        })
    }

    /// Metric pairing `g(p, q)`.
    pub fn metric_inner(&self, p: &KahlerPoint, q: &KahlerPoint) -> Result<f64> {
        self.check_point(p)?;
        self.check_point(q)?;
        Ok((p.coords.transpose() * &self.g * &q.coords)[(0, 0)])
    }

    /// Symplectic pairing `Ω(p, q)`.
    pub fn symplectic_inner(&self, p: &KahlerPoint, q: &KahlerPoint) -> Result<f64> {
        self.check_point(p)?;
        self.check_point(q)?;
        Ok((p.coords.transpose() * &self.w * &q.coords)[(0, 0)])
    }

    /// Residuals of all structure invariants.
    pub fn verify(&self) -> KahlerReport {
        verify_kahler_matrices(&self.g, &self.w, &self.jm)
    }

    /// Rebuilds the structure over the same state on a different lift
    /// basis. The new columns must be orthonormal and span the same
    /// non-null subspace; all tensors are recomputed from the pair forms.
    pub(crate) fn rebased(&self, new_basis: RMat) -> Result<KahlerStructure> {
        if new_basis.nrows() != self.basis.nrows() || new_basis.ncols() != self.basis.ncols() {
            return Err(Error::ShapeMismatch(format!(
                "rebased lift basis is {}x{}, expected {}x{}",
                new_basis.nrows(),
                new_basis.ncols(),
                self.basis.nrows(),
                self.basis.ncols()
            )));
        }
        let ortho = max_abs(
            &(new_basis.transpose() * &new_basis
                - RMat::identity(new_basis.ncols(), new_basis.ncols())),
        );
        if ortho > 1e-10 {
            return Err(Error::InvalidInput(format!(
                "rebased lift basis is not orthonormal (residual {ortho:.3e})"
            )));
        }
        let n = self.algebra.herm_dim();
        let gpair = pair_gram(&self.state);
        let wpair = pair_symplectic(&self.state);
        let jpair = pair_complex_structure(n);
        let g = new_basis.transpose() * &gpair * &new_basis;
        let w = new_basis.transpose() * &wpair * &new_basis;
        let jm = new_basis.transpose() * &jpair * &new_basis;
        let winv = w
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::NumericalFailure("rebased symplectic form is singular".into()))?;
        let structure = KahlerStructure {
            id: NEXT_STRUCTURE_ID.fetch_add(1, Ordering::Relaxed),
            algebra: Arc::clone(&self.algebra),
            state: self.state.clone(),
            rank_cutoff: self.rank_cutoff,
            basis: new_basis,
            g,
            w,
            jm,
            winv,
        };
        let report = structure.verify();
        if report.j_squared > 1e-8 || report.kahler_property > 1e-8 {
            return Err(Error::InvalidInput(
                "rebased basis does not span a J-invariant non-null subspace".into(),
            ));
        }
        Ok(structure)
    }
}

/// Residuals of the Kähler axioms for a `(G, W, Jm)` triple. Margins are
/// relative (smallest over largest); everything else is a max-entry residual.
#[derive(Clone, Debug)]
pub struct KahlerReport {
    /// `max |G - Gᵀ|`.
    pub g_symmetry: f64,
    /// Smallest over largest eigenvalue of `G`; positive for SPD.
    pub g_spd_margin: f64,
    /// `max |W + Wᵀ|`.
    pub w_antisymmetry: f64,
    /// Smallest over largest singular value of `W`; positive when nondegenerate.
    pub w_nondegeneracy: f64,
    /// `max |Jm² + I|`.
    pub j_squared: f64,
    /// `max |Jmᵀ G Jm - G|`.
    pub compatibility_g: f64,
    /// `max |Jmᵀ W Jm - W|`.
    pub compatibility_w: f64,
    /// `max |W - Jmᵀ G|`, the defining orientation.
    pub kahler_property: f64,
    /// `max |W Jm - G|`, from `Ω(X, JY) = g(X, Y)`.
    pub derived_positive: f64,
    /// `max |Jmᵀ W + G|`, from `Ω(JX, Y) = -g(X, Y)`.
    pub derived_negative: f64,
}

impl KahlerReport {
    /// Worst residual among the equality checks (margins excluded).
    pub fn worst_residual(&self) -> f64 {
        [
            self.g_symmetry,
            self.w_antisymmetry,
            self.j_squared,
            self.compatibility_g,
            self.compatibility_w,
            self.kahler_property,
            self.derived_positive,
            self.derived_negative,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    /// All equality residuals below `tol` and both margins above `margin_cutoff`.
    pub fn passes(&self, tol: f64, margin_cutoff: f64) -> bool {
        self.worst_residual() < tol
            && self.g_spd_margin > margin_cutoff
            && self.w_nondegeneracy > margin_cutoff
    }
}

/// Evaluates the Kähler axioms on raw matrices; used both for constructed
/// structures and for diagnosing hand-built or corrupted triples.
pub fn verify_kahler_matrices(g: &RMat, w: &RMat, jm: &RMat) -> KahlerReport {
    let dim = g.nrows();
    let id = RMat::identity(dim, dim);
    let (eigs, _) = sym_eigen_desc(g);
    let g_max = eigs.first().copied().unwrap_or(0.0);
    let g_min = eigs.last().copied().unwrap_or(0.0);
    let sv_max = if dim > 0 {
        w.clone()
            .singular_values()
            .iter()
            .fold(0.0f64, |a, x| a.max(*x))
    } else {
        0.0
    };
    KahlerReport {
        g_symmetry: max_abs(&(g - g.transpose())),
        g_spd_margin: if g_max > 0.0 { g_min / g_max } else { 0.0 },
        w_antisymmetry: max_abs(&(w + w.transpose())),
        w_nondegeneracy: if sv_max > 0.0 {
            min_singular_value(w) / sv_max
        } else {
            0.0
        },
        j_squared: max_abs(&(jm * jm + &id)),
        compatibility_g: max_abs(&(jm.transpose() * g * jm - g)),
        compatibility_w: max_abs(&(jm.transpose() * w * jm - w)),
        kahler_property: max_abs(&(w - jm.transpose() * g)),
        derived_positive: max_abs(&(w * jm - g)),
        derived_negative: max_abs(&(jm.transpose() * w + g)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{sample_hermitian, seeded_rng};
    use crate::states::DEFAULT_RANK_CUTOFF;
    use num_complex::Complex64;

    fn qubit() -> Arc<MatrixAlgebra> {
        MatrixAlgebra::new(&[2]).unwrap()
    }

    fn pure_e1(alg: &Arc<MatrixAlgebra>) -> StateFunctional {
        let mut vectors = Vec::new();
        for (i, &d) in alg.block_dims().iter().enumerate() {
            let mut v = vec![Complex64::new(0.0, 0.0); d];
            if i == 0 {
                v[0] = Complex64::new(1.0, 0.0);
            }
            vectors.push(v);
        }
        StateFunctional::pure(alg, &vectors).unwrap()
    }

    #[test]
    fn pair_gram_restricts_to_jordan_gram() {
        let alg = qubit();
        let phi = pure_e1(&alg);
        let gp = pair_gram(&phi);
        let g1 = phi.jordan_gram();
        let n = alg.herm_dim();
        for i in 0..n {
            for j in 0..n {
                assert!((gp[(i, j)] - g1[(i, j)]).abs() < 1e-15);
            }
        }
        // symmetric
        assert!(max_abs(&(&gp - gp.transpose())) < 1e-14);
    }

    #[test]
    fn pair_symplectic_restricts_to_lie_gram_and_g() {
        let alg = qubit();
        let phi = pure_e1(&alg);
        let wp = pair_symplectic(&phi);
        let w1 = phi.lie_gram();
        let g1 = phi.jordan_gram();
        let n = alg.herm_dim();
        for i in 0..n {
            for j in 0..n {
                assert!((wp[(i, j)] - w1[(i, j)]).abs() < 1e-15);
                // Ω(ξ_a, Jξ_b) = g(ξ_a, ξ_b) ≥ 0 on the diagonal
                assert!((wp[(i, n + j)] - g1[(i, j)]).abs() < 1e-15);
            }
        }
        assert!(max_abs(&(&wp + wp.transpose())) < 1e-14);
    }

    #[test]
    fn pair_forms_satisfy_orientation() {
        // Wpair = Jpairᵀ · Gpair
        let alg = MatrixAlgebra::new(&[2, 1]).unwrap();
        let phi = StateFunctional::maximally_mixed(&alg);
        let gp = pair_gram(&phi);
        let wp = pair_symplectic(&phi);
        let jp = pair_complex_structure(alg.herm_dim());
        assert!(max_abs(&(&wp - jp.transpose() * &gp)) < 1e-13);
    }

    #[test]
    fn pair_gram_diagonal_matches_gns_norm() {
        // Gpair((a,b),(a,b)) = φ(c*c) for c = a + ib
        let alg = MatrixAlgebra::new(&[3]).unwrap();
        let phi = pure_e1(&alg);
        let gp = pair_gram(&phi);
        let mut rng = seeded_rng(19);
        for _ in 0..50 {
            let a = sample_hermitian(&alg, &mut rng);
            let b = sample_hermitian(&alg, &mut rng);
            let pair = PairVector::new(a.clone(), b.clone()).unwrap();
            let x = pair.coords();
            let quad = (x.transpose() * &gp * &x)[(0, 0)];
            let c = crate::correspondence::complexify(&a, &b).unwrap();
            let expected = phi
                .evaluate_cstar(&c.involution().product(&c).unwrap())
                .unwrap()
                .re;
            assert!((quad - expected).abs() < 1e-11, "{quad} vs {expected}");
        }
    }

    #[test]
    fn pair_of_units_has_norm_two() {
        for dims in [vec![2], vec![3], vec![2, 1]] {
            let alg = MatrixAlgebra::new(&dims).unwrap();
            for phi in [pure_e1(&alg), StateFunctional::maximally_mixed(&alg)] {
                let gp = pair_gram(&phi);
                let unit = alg.unit();
                let pair = PairVector::new(unit.clone(), unit.clone()).unwrap();
                let x = pair.coords();
                let quad = (x.transpose() * &gp * &x)[(0, 0)];
                assert!((quad - 2.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn quotient_dimensions() {
        let alg = qubit();
        let k = build_kahler(&pure_e1(&alg), DEFAULT_RANK_CUTOFF).unwrap();
        assert_eq!(k.real_dim(), 4);
        let k = build_kahler(&StateFunctional::maximally_mixed(&alg), DEFAULT_RANK_CUTOFF).unwrap();
        assert_eq!(k.real_dim(), 8);
        // 1-dimensional algebra by hand: 2m = 2, G = I, W a rotation generator
        let alg1 = MatrixAlgebra::new(&[1]).unwrap();
        let phi1 = StateFunctional::maximally_mixed(&alg1);
        let k1 = build_kahler(&phi1, DEFAULT_RANK_CUTOFF).unwrap();
        assert_eq!(k1.real_dim(), 2);
        assert!(max_abs(&(k1.metric() - RMat::identity(2, 2))) < 1e-12);
        assert!(max_abs(&(k1.symplectic() - k1.complex_structure().transpose())) < 1e-12);
    }

    #[test]
    fn structure_invariants_hold() {
        for dims in [vec![2], vec![3], vec![2, 1]] {
            let alg = MatrixAlgebra::new(&dims).unwrap();
            for phi in [pure_e1(&alg), StateFunctional::maximally_mixed(&alg)] {
                let k = build_kahler(&phi, DEFAULT_RANK_CUTOFF).unwrap();
                let report = k.verify();
                assert!(report.passes(1e-10, 1e-9), "{report:?}");
            }
        }
    }

    #[test]
    fn hand_built_plane_passes() {
        // canonical Kähler plane: G = I, J the rotation generator, W = Jᵀ G
        let g = RMat::identity(2, 2);
        let jm = RMat::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        let w = jm.transpose() * &g;
        let report = verify_kahler_matrices(&g, &w, &jm);
        assert!(report.passes(1e-12, 0.5), "{report:?}");
    }

    #[test]
    fn corrupted_symplectic_form_fails() {
        let alg = qubit();
        let k = build_kahler(&pure_e1(&alg), DEFAULT_RANK_CUTOFF).unwrap();
        let mut w = k.symplectic().clone();
        w[(0, 1)] += 1e-3;
        let report = verify_kahler_matrices(k.metric(), &w, k.complex_structure());
        assert!(report.kahler_property > 5e-4, "{report:?}");
        assert!(!report.passes(1e-10, 1e-9));
    }

    #[test]
    fn null_pairs_project_to_zero() {
        let alg = qubit();
        let phi = pure_e1(&alg);
        let k = build_kahler(&phi, DEFAULT_RANK_CUTOFF).unwrap();
        for n in phi.null_set_basis(DEFAULT_RANK_CUTOFF) {
            let p = k.project_elements(&n, &alg.zero()).unwrap();
            assert!(p.coords().norm() < 1e-9);
            let p = k.project_elements(&alg.zero(), &n).unwrap();
            assert!(p.coords().norm() < 1e-9);
        }
    }

    #[test]
    fn project_lift_roundtrip() {
        let alg = MatrixAlgebra::new(&[2, 1]).unwrap();
        let phi = pure_e1(&alg);
        let k = build_kahler(&phi, DEFAULT_RANK_CUTOFF).unwrap();
        for (i, lift) in k.lifts().iter().enumerate() {
            let p = k.project(lift).unwrap();
            for j in 0..k.real_dim() {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((p.coords()[j] - expected).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn unit_pair_projection_has_metric_norm_two() {
        for dims in [vec![2], vec![3], vec![2, 1]] {
            let alg = MatrixAlgebra::new(&dims).unwrap();
            for phi in [pure_e1(&alg), StateFunctional::maximally_mixed(&alg)] {
                let k = build_kahler(&phi, DEFAULT_RANK_CUTOFF).unwrap();
                let nu = k.project_elements(&alg.unit(), &alg.unit()).unwrap();
                let norm = k.metric_inner(&nu, &nu).unwrap();
                assert!((norm - 2.0).abs() < 1e-12, "{norm}");
            }
        }
    }

    #[test]
    fn apply_j_examples() {
        let alg = qubit();
        let phi = pure_e1(&alg);
        let k = build_kahler(&phi, DEFAULT_RANK_CUTOFF).unwrap();
        let mut rng = seeded_rng(41);
        let a = sample_hermitian(&alg, &mut rng);
        let b = sample_hermitian(&alg, &mut rng);
        let p = k.project_elements(&a, &b).unwrap();
        // J² = -1
        let jjp = k.apply_j(&k.apply_j(&p).unwrap()).unwrap();
        assert!((jjp.coords() + p.coords()).norm() < 1e-12);
        // J preserves the metric norm
        let jp = k.apply_j(&p).unwrap();
        let gp = k.metric_inner(&p, &p).unwrap();
        let gjp = k.metric_inner(&jp, &jp).unwrap();
        assert!((gp - gjp).abs() < 1e-10);
        // commuting square: project(a,b) under J equals project(-b,a)
        let pair_j = PairVector::new(a.clone(), b.clone()).unwrap().apply_j();
        let direct = k.project(&pair_j).unwrap();
        assert!((direct.coords() - jp.coords()).norm() < 1e-12);
    }

    #[test]
    fn well_definedness_of_pair_forms() {
        // adding a state-null element to either slot changes nothing
        let alg = qubit();
        let phi = pure_e1(&alg);
        let gp = pair_gram(&phi);
        let wp = pair_symplectic(&phi);
        let n = alg.herm_dim();
        for null in phi.null_set_basis(DEFAULT_RANK_CUTOFF) {
            let c = null.coords();
            for (shift, name) in [(0, "first"), (n, "second")] {
                let mut x = RVec::zeros(2 * n);
                for i in 0..n {
                    x[shift + i] = c[i];
                }
                assert!((&gp * &x).norm() < 1e-9, "Gpair not null on {name} slot");
                assert!((&wp * &x).norm() < 1e-9, "Wpair not null on {name} slot");
            }
        }
    }

    #[test]
    fn degenerate_witness_pair_is_quotiented_away() {
        // (σ_x/2, σ_y/2) with the pure e1 state: Gpair-null but each
        // component has nonzero square expectation
        let alg = qubit();
        let phi = pure_e1(&alg);
        let sx = alg
            .element_from_blocks(vec![crate::linalg::CMat::from_row_slice(
                2,
                2,
                &[
                    Complex64::new(0.0, 0.0),
                    Complex64::new(0.5, 0.0),
                    Complex64::new(0.5, 0.0),
                    Complex64::new(0.0, 0.0),
                ],
            )])
            .unwrap();
        let sy = alg
            .element_from_blocks(vec![crate::linalg::CMat::from_row_slice(
                2,
                2,
                &[
                    Complex64::new(0.0, 0.0),
                    Complex64::new(0.0, -0.5),
                    Complex64::new(0.0, 0.5),
                    Complex64::new(0.0, 0.0),
                ],
            )])
            .unwrap();
        let pair = PairVector::new(sx.clone(), sy.clone()).unwrap();
        let gp = pair_gram(&phi);
        let x = pair.coords();
        let quad = (x.transpose() * &gp * &x)[(0, 0)];
        assert!(quad.abs() < 1e-12, "witness pair is not Gram-null: {quad}");
        // not in the componentwise kernel
        assert!(phi.evaluate(&sx.jordan(&sx).unwrap()).unwrap() > 0.2);
        // quotiented away, and the metric stays positive-definite
        let k = build_kahler(&phi, DEFAULT_RANK_CUTOFF).unwrap();
        let p = k.project(&pair).unwrap();
        assert!(p.coords().norm() < 1e-10);
        assert!(k.verify().g_spd_margin > 1e-9);
    }

    #[test]
    fn mismatched_points_rejected() {
        let alg = qubit();
        let phi = pure_e1(&alg);
        let k1 = build_kahler(&phi, DEFAULT_RANK_CUTOFF).unwrap();
        let k2 = build_kahler(&phi, DEFAULT_RANK_CUTOFF).unwrap();
        let p = k1.project_elements(&alg.unit(), &alg.unit()).unwrap();
        assert!(matches!(k2.apply_j(&p), Err(Error::StructureMismatch)));
    }
}
