//! Uniqueness of the construction up to Kähler isomorphism.
//!
//! Two structures built from the same state differ only by the choice of
//! quotient basis. Because everything here is linear and the Hamiltonian
//! fields together with their J-images span the quotient at the cyclic
//! point, the connecting map is found directly as the unique linear
//! intertwiner `U` sending the spanning set of one structure to the other;
//! it is then checked to be an isometry, a symplectomorphism, to commute
//! with the complex structures, to match the cyclic points, and to
//! transport every represented function.

use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{sample_hermitian, seeded_rng};
use crate::error::{Error, Result};
use crate::kahler::{build_kahler_ordered, EigenOrder, KahlerPoint, KahlerStructure};
use crate::linalg::{lstsq, max_abs, max_abs_c, numerical_rank, RMat};
use crate::representation::{action_matrix, cyclic_point, eval_f, sample_point};

/// How to produce a structurally distinct structure over the same state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RebaseRecipe {
    /// Randomly permute the quotient basis columns.
    Permute,
    /// Mix the columns by a random orthogonal matrix.
    OrthogonalMix,
    /// Rebuild from scratch with the eigenbasis in ascending order.
    ReorderEigenbasis,
}

impl FromStr for RebaseRecipe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "permute" => Ok(RebaseRecipe::Permute),
            "orthogonal-mix" => Ok(RebaseRecipe::OrthogonalMix),
            "reorder-eigenbasis" => Ok(RebaseRecipe::ReorderEigenbasis),
            other => Err(Error::InvalidInput(format!(
                "unknown rebase recipe '{other}' (expected permute, orthogonal-mix, or \
                 reorder-eigenbasis)"
            ))),
        }
    }
}

/// Produces a state-equivalent structure with different quotient lifts.
pub fn rebase(k: &KahlerStructure, recipe: RebaseRecipe, seed: u64) -> Result<KahlerStructure> {
    let dim = k.real_dim();
    match recipe {
        RebaseRecipe::Permute => {
            let mut rng = seeded_rng(seed);
            let mut perm: Vec<usize> = (0..dim).collect();
            perm.shuffle(&mut rng);
            let mut q = RMat::zeros(dim, dim);
            for (col, &row) in perm.iter().enumerate() {
                q[(row, col)] = 1.0;
            }
            rebase_by_orthogonal(k, &q)
        }
        RebaseRecipe::OrthogonalMix => {
            let mut rng = seeded_rng(seed);
            let q = random_orthogonal(dim, &mut rng);
            rebase_by_orthogonal(k, &q)
        }
        RebaseRecipe::ReorderEigenbasis => {
            build_kahler_ordered(k.state(), k.rank_cutoff(), EigenOrder::Ascending)
        }
    }
}

/// Rebases by an explicit orthogonal change of quotient basis.
pub fn rebase_by_orthogonal(k: &KahlerStructure, q: &RMat) -> Result<KahlerStructure> {
    let dim = k.real_dim();
    if q.nrows() != dim || q.ncols() != dim {
        return Err(Error::ShapeMismatch(format!(
            "rebase matrix is {}x{}, expected {dim}x{dim}",
            q.nrows(),
            q.ncols()
        )));
    }
    let ortho = max_abs(&(q.transpose() * q - RMat::identity(dim, dim)));
    if ortho > 1e-10 {
        return Err(Error::InvalidInput(format!(
            "rebase matrix is not orthogonal (residual {ortho:.3e})"
        )));
    }
    k.rebased(k.basis_matrix() * q)
}

fn random_orthogonal<R: Rng>(dim: usize, rng: &mut R) -> RMat {
    let raw = RMat::from_fn(dim, dim, |_, _| rng.gen_range(-1.0..1.0));
    let qr = raw.qr();
    let r = qr.r();
    let mut q = qr.q();
    // fix column signs so the factorization is unique
    for i in 0..dim {
        if r[(i, i)] < 0.0 {
            let col = -q.column(i);
            q.set_column(i, &col);
        }
    }
    q
}

/// A linear Kähler isomorphism between two structures over the same state.
#[derive(Clone, Debug)]
pub struct KahlerIso {
    source_id: u64,
    target_id: u64,
    matrix: RMat,
    solve_residual: f64,
}

/// Residuals of the isomorphism laws.
#[derive(Clone, Debug)]
pub struct IsoResiduals {
    /// `max |Uᵀ G' U - G|`
    pub isometry: f64,
    /// `max |Uᵀ W' U - W|`
    pub symplectomorphism: f64,
    /// `max |U Jm - Jm' U|`
    pub j_intertwine: f64,
    /// `max |U ν - ν'|`
    pub nu_match: f64,
    /// residual of the defining linear solve
    pub solve: f64,
}

impl IsoResiduals {
    pub fn worst(&self) -> f64 {
        [
            self.isometry,
            self.symplectomorphism,
            self.j_intertwine,
            self.nu_match,
            self.solve,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

impl KahlerIso {
    pub fn matrix(&self) -> &RMat {
        &self.matrix
    }

    pub fn solve_residual(&self) -> f64 {
        self.solve_residual
    }

    /// Maps a source point to the target structure.
    pub fn apply(&self, source: &KahlerStructure, p: &KahlerPoint) -> Result<KahlerPoint> {
        source.check_point(p)?;
        if source.id() != self.source_id {
            return Err(Error::StructureMismatch);
        }
        Ok(KahlerPoint::from_coords(
            self.target_id,
            &self.matrix * p.coords(),
        ))
    }

    /// Evaluates all isomorphism laws against the two structures.
    pub fn residuals(&self, k: &KahlerStructure, k2: &KahlerStructure) -> Result<IsoResiduals> {
        if k.id() != self.source_id || k2.id() != self.target_id {
            return Err(Error::StructureMismatch);
        }
        let u = &self.matrix;
        let nu = cyclic_point(k);
        let nu2 = cyclic_point(k2);
        Ok(IsoResiduals {
            isometry: max_abs(&(u.transpose() * k2.metric() * u - k.metric())),
            symplectomorphism: max_abs(&(u.transpose() * k2.symplectic() * u - k.symplectic())),
            j_intertwine: max_abs(&(u * k.complex_structure() - k2.complex_structure() * u)),
            nu_match: (u * nu.coords() - nu2.coords()).abs().max(),
            solve: self.solve_residual,
        })
    }
}

/// Solves for the linear map sending the spanning set
/// `{A_{e_i}·ν, Jm·A_{e_i}·ν}` of one structure to the other's.
///
/// Fails with a cyclicity error when the spanning set does not reach the
/// full quotient dimension.
pub fn find_iso(k: &KahlerStructure, k2: &KahlerStructure) -> Result<KahlerIso> {
    if !k.algebra().same_shape(k2.algebra()) {
        return Err(Error::AlgebraMismatch(
            "structures over different algebras".into(),
        ));
    }
    let same_state = k
        .state()
        .density_blocks()
        .iter()
        .zip(k2.state().density_blocks().iter())
        .all(|(a, b)| max_abs_c(&(a - b)) < 1e-10);
    if !same_state {
        return Err(Error::InvalidInput(
            "structures built from different states".into(),
        ));
    }
    let dim = k.real_dim();
    if k2.real_dim() != dim {
        return Err(Error::ShapeMismatch(format!(
            "quotient dimensions differ: {dim} vs {}",
            k2.real_dim()
        )));
    }
    let n = k.algebra().herm_dim();
    let nu = cyclic_point(k);
    let nu2 = cyclic_point(k2);
    let mut source = RMat::zeros(dim, 2 * n);
    let mut target = RMat::zeros(dim, 2 * n);
    for i in 0..n {
        let e = k.algebra().basis_element(i);
        let a = action_matrix(k, &e)?;
        let a2 = action_matrix(k2, &e)?;
        let s = a.matrix() * nu.coords();
        let t = a2.matrix() * nu2.coords();
        source.set_column(i, &s);
        target.set_column(i, &t);
        source.set_column(n + i, &(k.complex_structure() * s));
        target.set_column(n + i, &(k2.complex_structure() * t));
    }
    let rank = numerical_rank(&source, 1e-9);
    if rank < dim {
        return Err(Error::CyclicityFailure { rank, need: dim });
    }
    // U · source = target, transposed into a least-squares solve
    let (ut, solve_residual) = lstsq(&source.transpose(), &target.transpose())?;
    Ok(KahlerIso {
        source_id: k.id(),
        target_id: k2.id(),
        matrix: ut.transpose(),
        solve_residual,
    })
}

/// Sup over sampled elements and points of `|f'_a(U·p) - f_a(p)|`.
pub fn verify_iso_representation(
    iso: &KahlerIso,
    k: &KahlerStructure,
    k2: &KahlerStructure,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    let mut rng = seeded_rng(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let a = sample_hermitian(k.algebra(), &mut rng);
        let p = sample_point(k, &mut rng);
        let up = iso.apply(k, &p)?;
        let lhs = eval_f(k2, &a, &up)?;
        let rhs = eval_f(k, &a, &p)?;
        worst = worst.max((lhs - rhs).abs());
    }
    Ok(worst)
}
