//! The named check registry behind `verify`.
//!
//! Each unit produces one or more report rows; units are independent and
//! may run concurrently (`JLBK_THREADS` caps the pool, 0 or unset means
//! the library default). Generic identity checks use the configurable
//! `check_tol`; intrinsically tighter or looser criteria (round-trips,
//! isomorphism transport, the evolution diagram) carry their own fixed
//! thresholds.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use jlbk_core::algebra::{sample_hermitian, AppendixIdentity};
use jlbk_core::correspondence::{
    complexify, product_transport_check, sa_decompose, transport_hom, HomomorphismTable,
};
use jlbk_core::dynamics::{
    expectation_trajectory, flow, flow_operator, hilbert_expectation_trajectory, time_grid,
};
use jlbk_core::kahler::{pair_gram, pair_symplectic, PairVector};
use jlbk_core::linalg::{expm_hermitian, max_abs, RMat};
use jlbk_core::representation::{
    action_matrix, cyclic_point, eval_f, fn_poisson, span_rank, verify_representation,
    xi_product_pair,
};
use jlbk_core::uniqueness::{find_iso, rebase, verify_iso_representation, RebaseRecipe};
use jlbk_core::{
    check_appendix_identity, check_jlb_axioms, sample_cstar, Error, KahlerStructure,
    StateFunctional,
};

use crate::report::CheckResult;

/// Inputs shared by every check unit.
pub struct CheckContext<'a> {
    pub state: &'a StateFunctional,
    pub kahler: &'a KahlerStructure,
    pub check_tol: f64,
    pub rank_cutoff: f64,
    pub seed: u64,
}

/// Fixed thresholds for the intrinsically scaled criteria.
const ROUNDTRIP_TOL: f64 = 1e-14;
const TRANSPORT_TOL: f64 = 1e-12;
const NU_NORM_TOL: f64 = 1e-12;
const ISO_TOL: f64 = 1e-8;
const DIAGRAM_TOL: f64 = 1e-8;
const FLOW_FORM_TOL: f64 = 1e-10;

type CheckFn = fn(&CheckContext) -> Result<Vec<CheckResult>, Error>;

pub struct CheckDef {
    pub name: &'static str,
    run: CheckFn,
}

/// Every addressable check unit, in report order.
pub fn registry() -> Vec<CheckDef> {
    vec![
        CheckDef {
            name: "jlb-axioms",
            run: jlb_axioms,
        },
        CheckDef {
            name: "appendix-jlb2",
            run: appendix_jlb2,
        },
        CheckDef {
            name: "appendix-jlb3",
            run: appendix_jlb3,
        },
        CheckDef {
            name: "appendix-jlb4",
            run: appendix_jlb4,
        },
        CheckDef {
            name: "state-cauchy-schwarz",
            run: state_cauchy_schwarz,
        },
        CheckDef {
            name: "correspondence",
            run: correspondence,
        },
        CheckDef {
            name: "kahler-structure",
            run: kahler_structure,
        },
        CheckDef {
            name: "quotient-dimension",
            run: quotient_dimension,
        },
        CheckDef {
            name: "degeneracy-regression",
            run: degeneracy_regression,
        },
        CheckDef {
            name: "action-selfadjoint",
            run: action_selfadjoint,
        },
        CheckDef {
            name: "field-equivalence",
            run: field_equivalence,
        },
        CheckDef {
            name: "product-identities",
            run: product_identities,
        },
        CheckDef {
            name: "cyclic-point",
            run: cyclic_point_conditions,
        },
        CheckDef {
            name: "norm-bound",
            run: norm_bound,
        },
        CheckDef {
            name: "representation",
            run: representation,
        },
        CheckDef {
            name: "representation-jacobi",
            run: representation_jacobi,
        },
        CheckDef {
            name: "flow-conservation",
            run: flow_conservation,
        },
        CheckDef {
            name: "commuting-diagram",
            run: commuting_diagram,
        },
        CheckDef {
            name: "uniqueness",
            run: uniqueness,
        },
    ]
}

/// Runs the selected units, optionally in parallel, and flattens the rows.
pub fn run_checks(ctx: &CheckContext, only: Option<&str>) -> Result<Vec<CheckResult>, Error> {
    let defs: Vec<CheckDef> = registry()
        .into_iter()
        .filter(|d| only.is_none_or(|name| d.name == name))
        .collect();
    if defs.is_empty() {
        return Err(Error::InvalidInput(format!(
            "unknown check name '{}' (see the registry in the README)",
            only.unwrap_or("")
        )));
    }
    let threads = std::env::var("JLBK_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::NumericalFailure(format!("thread pool: {e}")))?;
    let results: Vec<Result<Vec<CheckResult>, Error>> = pool.install(|| {
        use rayon::prelude::*;
        defs.par_iter().map(|d| (d.run)(ctx)).collect()
    });
    let mut rows = Vec::new();
    for r in results {
        rows.extend(r?);
    }
    Ok(rows)
}

fn jlb_axioms(ctx: &CheckContext) -> Result<Vec<CheckResult>, Error> {
    let report = check_jlb_axioms(ctx.kahler.algebra(), 200, ctx.seed, ctx.check_tol);
    Ok(report
        .checks
        .iter()
        .map(|c| {
            CheckResult::residual(
                format!("jlb-axioms/{}", c.name),
                c.worst_residual,
                ctx.check_tol,
            )
        })
        .collect())
}

fn appendix(
    ctx: &CheckContext,
    which: AppendixIdentity,
    name: &str,
) -> Result<Vec<CheckResult>, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let a = sample_hermitian(ctx.kahler.algebra(), &mut rng);
        let b = sample_hermitian(ctx.kahler.algebra(), &mut rng);
        let c = sample_hermitian(ctx.kahler.algebra(), &mut rng);
        let scale = 1.0 + a.norm() * b.norm() * c.norm();
        worst = worst.max(check_appendix_identity(which, &a, &b, &c)? / scale);
    }
    Ok(vec![CheckResult::residual(name, worst, ctx.check_tol)])
}

fn appendix_jlb2(ctx: &CheckContext) -> Result<Vec<CheckResult>, Error> {
    appendix(ctx, AppendixIdentity::Jlb2, "appendix-jlb2")
}

fn appendix_jlb3(ctx: &CheckContext) -> Result<Vec<CheckResult>, Error> {
    appendix(ctx, AppendixIdentity::Jlb3, "appendix-jlb3")
}

fn appendix_jlb4(ctx: &CheckContext) -> Result<Vec<CheckResult>, Error> {
    appendix(ctx, AppendixIdentity::Jlb4, "appendix-jlb4")
}

fn state_cauchy_schwarz(ctx: &CheckContext) -> Result<Vec<CheckResult>, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut worst_jordan = f64::NEG_INFINITY;
    let mut worst_lie = f64::NEG_INFINITY;
    for _ in 0..1000 {
        let a = sample_hermitian(ctx.kahler.algebra(), &mut rng);
        let b = sample_hermitian(ctx.kahler.algebra(), &mut rng);
        let (ra, rb) = ctx.state.check_cauchy_schwarz(&a, &b)?;
        worst_jordan = worst_jordan.max(ra);
        worst_lie = worst_lie.max(rb);
    }
    Ok(vec![
        CheckResult {
            name: "state-cauchy-schwarz/jordan".into(),
            residual: worst_jordan,
            threshold: ctx.check_tol,
            pass: worst_jordan <= ctx.check_tol,
        },
        CheckResult {
            name: "state-cauchy-schwarz/lie".into(),
            residual: worst_lie,
            threshold: ctx.check_tol,
            pass: worst_lie <= ctx.check_tol,
        },
    ])
}

fn correspondence(ctx: &CheckContext) -> Result<Vec<CheckResult>, Error> {
    let algebra = ctx.kahler.algebra();
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut roundtrip = 0.0f64;
    let mut transport = 0.0f64;
    for _ in 0..200 {
        let c = sample_cstar(algebra, &mut rng);
        let (a, b) = sa_decompose(&c);
        roundtrip = roundtrip.max(complexify(&a, &b)?.sub(&c)?.max_entry_norm());
        let x = sample_hermitian(algebra, &mut rng);
        let y = sample_hermitian(algebra, &mut rng);
        transport = transport.max(product_transport_check(&x, &y)?);
    }
    let h = sample_hermitian(algebra, &mut rng);
    let unitaries: Vec<_> = h
        .blocks()
        .iter()
        .map(|blk| expm_hermitian(blk, Complex64::new(0.0, 1.0)))
        .collect();
    let table = HomomorphismTable::from_action(algebra, algebra, |a| {
        let blocks = a
            .blocks()
            .iter()
            .zip(unitaries.iter())
            .map(|(blk, u)| u.adjoint() * blk * u)
            .collect();
        algebra.element_from_blocks(blocks)
    })?;
    let star = transport_hom(&table).verify_star_properties(200, ctx.seed)?;
    Ok(vec![
        CheckResult::residual("correspondence/roundtrip", roundtrip, ROUNDTRIP_TOL),
        CheckResult::residual("correspondence/product-transport", transport, TRANSPORT_TOL),
        CheckResult::residual(
            "correspondence/star-hom-multiplicativity",
            star.multiplicativity,
            ctx.check_tol,
        ),
        CheckResult::residual(
            "correspondence/star-hom-involution",
            star.involution,
            ctx.check_tol,
        ),
        CheckResult::residual("correspondence/star-hom-unit", star.unit, ctx.check_tol),
    ])
}

fn kahler_structure(ctx: &CheckContext) -> Result<Vec<CheckResult>, Error> {
    let rep = ctx.kahler.verify();
    Ok(vec![
        CheckResult::residual("kahler-structure/g-symmetry", rep.g_symmetry, ctx.check_tol),
        CheckResult::margin(
            "kahler-structure/g-spd-margin",
            rep.g_spd_margin,
            ctx.rank_cutoff,
        ),
        CheckResult::residual(
            "kahler-structure/w-antisymmetry",
            rep.w_antisymmetry,
            ctx.check_tol,
        ),
        CheckResult::margin(
            "kahler-structure/w-nondegeneracy",
            rep.w_nondegeneracy,
            ctx.rank_cutoff,
        ),
        CheckResult::residual("kahler-structure/j-squared", rep.j_squared, ctx.check_tol),
        CheckResult::residual(
            "kahler-structure/compatibility-g",
            rep.compatibility_g,
            ctx.check_tol,
        ),
        CheckResult::residual(
            "kahler-structure/compatibility-w",
            rep.compatibility_w,
            ctx.check_tol,
        ),
        CheckResult::residual(
            "kahler-structure/kahler-property",
            rep.kahler_property,
            ctx.check_tol,
        ),
        CheckResult::residual(
            "kahler-structure/derived-positive",
            rep.derived_positive,
            ctx.check_tol,
        ),
        CheckResult::residual(
            "kahler-structure/derived-negative",
            rep.derived_negative,
            ctx.check_tol,
        ),
    ])
}

/// Independent quotient-dimension oracle: twice the complex rank of the
/// sesquilinear Gram matrix over the matrix-unit basis.
fn quotient_dimension(ctx: &CheckContext) -> Result<Vec<CheckResult>, Error> {
    let algebra = ctx.kahler.algebra();
    let mut units = Vec::new();
    for (bi, &d) in algebra.block_dims().iter().enumerate() {
        for r in 0..d {
            for c in 0..d {
                let blocks: Vec<_> = algebra
                    .block_dims()
                    .iter()
                    .enumerate()
                    .map(|(i, &dd)| {
                        let mut m = jlbk_core::linalg::CMat::zeros(dd, dd);
                        if i == bi {
                            m[(r, c)] = Complex64::new(1.0, 0.0);
                        }
                        m
                    })
                    .collect();
                units.push(algebra.cstar_from_blocks(blocks)?);
            }
        }
    }
    let dim = units.len();
    let mut gram = jlbk_core::linalg::CMat::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            gram[(i, j)] = ctx
                .state
                .evaluate_cstar(&units[i].involution().product(&units[j])?)?;
        }
    }
    let eig = gram.symmetric_eigen();
    let max = eig.eigenvalues.iter().fold(0.0f64, |a, x| a.max(*x));
    let rank = eig
        .eigenvalues
        .iter()
        .filter(|&&l| l > ctx.rank_cutoff * max)
        .count();
    Ok(vec![CheckResult::exact_count(
        "quotient-dimension/vs-gns-rank",
        ctx.kahler.real_dim(),
        2 * rank,
    )])
}

/// Every null direction of the pair Gram form must project to the zero
/// point, and the quotient metric must stay positive-definite.
fn degeneracy_regression(ctx: &CheckContext) -> Result<Vec<CheckResult>, Error> {
    let gp = pair_gram(ctx.state);
    let (values, vectors) = jlbk_core::linalg::sym_eigen_desc(&gp);
    let max = values.first().copied().unwrap_or(0.0);
    let mut worst_projection = 0.0f64;
    for (l, v) in values.iter().zip(vectors.iter()) {
        if *l <= ctx.rank_cutoff * max {
            let coords = ctx.kahler.basis_matrix().transpose() * v;
            worst_projection = worst_projection.max(coords.norm());
        }
    }
    // degeneracy propagation: state-null elements kill both products
    let mut worst_propagation = 0.0f64;
    for n in ctx.state.null_set_basis(ctx.rank_cutoff) {
        for b in ctx.kahler.algebra().basis_elements() {
            worst_propagation = worst_propagation
                .max(ctx.state.evaluate(&n.jordan(&b)?)?.abs())
                .max(ctx.state.evaluate(&n.lie(&b)?)?.abs());
        }
    }
    let rep = ctx.kahler.verify();
    Ok(vec![
        CheckResult::residual(
            "degeneracy-regression/null-projection",
            worst_projection,
            1e-8,
        ),
        CheckResult::residual(
            "degeneracy-regression/null-propagation",
            worst_propagation,
            1e-8,
        ),
        CheckResult::margin(
            "degeneracy-regression/g-spd-margin",
            rep.g_spd_margin,
            ctx.rank_cutoff,
        ),
    ])
}

fn action_selfadjoint(ctx: &CheckContext) -> Result<Vec<CheckResult>, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let a = sample_hermitian(ctx.kahler.algebra(), &mut rng);
        let obs = action_matrix(ctx.kahler, &a)?;
        worst = worst.max(obs.metric_selfadjoint_residual(ctx.kahler));
    }
    Ok(vec![CheckResult::residual(
        "action-selfadjoint/metric",
        worst,
        ctx.check_tol,
    )])
}

fn field_equivalence(ctx: &CheckContext) -> Result<Vec<CheckResult>, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let a = sample_hermitian(ctx.kahler.algebra(), &mut rng);
        let b = sample_hermitian(ctx.kahler.algebra(), &mut rng);
        let p = ctx.kahler.project_elements(&a, &b)?;
        let obs = action_matrix(ctx.kahler, &a)?;
        let x = obs.hamiltonian_field(ctx.kahler, &p)?;
        let y = obs.schrodinger_field(ctx.kahler, &p)?;
        worst = worst.max((x.coords - y.coords).abs().max());
    }
    Ok(vec![CheckResult::residual(
        "field-equivalence/hamiltonian-vs-schrodinger",
        worst,
        ctx.check_tol,
    )])
}

fn product_identities(ctx: &CheckContext) -> Result<Vec<CheckResult>, Error> {
    let algebra = ctx.kahler.algebra();
    let gp = pair_gram(ctx.state);
    let wp = pair_symplectic(ctx.state);
    let zero = algebra.zero();
    let ip = |m: &RMat, x: &PairVector, y: &PairVector| {
        (x.coords().transpose() * m * y.coords())[(0, 0)]
    };
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut worst_a = 0.0f64;
    let mut worst_b = 0.0f64;
    for _ in 0..200 {
        let a = sample_hermitian(algebra, &mut rng);
        let b = sample_hermitian(algebra, &mut rng);
        let c = sample_hermitian(algebra, &mut rng);
        let xi_c = PairVector::new(c.clone(), zero.clone())?;
        let xi_ac = xi_product_pair(&a, &c)?;
        let xi_bc = xi_product_pair(&b, &c)?;
        let xi_jab_c = xi_product_pair(&a.jordan(&b)?, &c)?;
        let xi_lab_c = xi_product_pair(&a.lie(&b)?, &c)?;
        worst_a = worst_a.max((ip(&gp, &xi_c, &xi_jab_c) - ip(&gp, &xi_ac, &xi_bc)).abs());
        worst_b = worst_b.max((ip(&gp, &xi_c, &xi_lab_c) - ip(&wp, &xi_ac, &xi_bc)).abs());
    }
    Ok(vec![
        CheckResult::residual("product-identities/jordan", worst_a, ctx.check_tol),
        CheckResult::residual("product-identities/lie", worst_b, ctx.check_tol),
    ])
}

fn cyclic_point_conditions(ctx: &CheckContext) -> Result<Vec<CheckResult>, Error> {
    let k = ctx.kahler;
    let nu = cyclic_point(k);
    let mut worst_value = 0.0f64;
    for a in k.algebra().basis_elements() {
        let lhs = eval_f(k, &a, &nu)?;
        let rhs = ctx.state.evaluate(&a)?;
        worst_value = worst_value.max((lhs - rhs).abs());
    }
    let nu_norm = k.metric_inner(&nu, &nu)?;
    let rank = span_rank(k, &nu)?;
    // 2m-1 holds for rank-one states; faithful states reach exactly m
    // directions (flows preserve the density spectrum). In between, only
    // the sphere-tangency bound rank <= 2m-1 is asserted.
    let density_rank: usize = ctx
        .state
        .density_blocks()
        .iter()
        .map(|rho| {
            let eig = rho.clone().symmetric_eigen();
            let max = eig.eigenvalues.iter().fold(0.0f64, |a, x| a.max(*x));
            eig.eigenvalues
                .iter()
                .filter(|&&l| l > ctx.rank_cutoff * max.max(1.0))
                .count()
        })
        .sum();
    let hilbert_dim: usize = k.algebra().block_dims().iter().sum();
    let span_row = if density_rank == 1 {
        CheckResult::exact_count("cyclic-point/span-rank", rank, k.real_dim() - 1)
    } else if density_rank == hilbert_dim {
        CheckResult::exact_count("cyclic-point/span-rank", rank, k.real_dim() / 2)
    } else {
        CheckResult {
            name: "cyclic-point/span-rank".into(),
            residual: rank as f64,
            threshold: (k.real_dim() - 1) as f64,
            pass: rank < k.real_dim() && rank >= 1,
        }
    };
    Ok(vec![
        CheckResult::residual("cyclic-point/evaluation", worst_value, ctx.check_tol),
        CheckResult::residual("cyclic-point/norm", (nu_norm - 2.0).abs(), NU_NORM_TOL),
        span_row,
    ])
}

fn norm_bound(ctx: &CheckContext) -> Result<Vec<CheckResult>, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let a = sample_hermitian(ctx.kahler.algebra(), &mut rng);
        let sup = action_matrix(ctx.kahler, &a)?.sup_norm(ctx.kahler)?;
        worst = worst.max(sup - a.norm());
    }
    Ok(vec![CheckResult {
        name: "norm-bound/excess".into(),
        residual: worst,
        threshold: ctx.check_tol,
        pass: worst <= ctx.check_tol,
    }])
}

fn representation(ctx: &CheckContext) -> Result<Vec<CheckResult>, Error> {
    let rep = verify_representation(ctx.kahler, 200, ctx.seed, ctx.check_tol)?;
    Ok(vec![
        CheckResult::residual(
            "representation/jordan-homomorphism",
            rep.jordan_residual,
            ctx.check_tol,
        ),
        CheckResult::residual(
            "representation/poisson-homomorphism",
            rep.poisson_residual,
            ctx.check_tol,
        ),
    ])
}

fn representation_jacobi(ctx: &CheckContext) -> Result<Vec<CheckResult>, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let a = sample_hermitian(ctx.kahler.algebra(), &mut rng);
        let b = sample_hermitian(ctx.kahler.algebra(), &mut rng);
        let c = sample_hermitian(ctx.kahler.algebra(), &mut rng);
        let p = ctx.kahler.project_elements(&a, &c)?;
        let cycle = fn_poisson(ctx.kahler, &a, &b.lie(&c)?, &p)?
            + fn_poisson(ctx.kahler, &b, &c.lie(&a)?, &p)?
            + fn_poisson(ctx.kahler, &c, &a.lie(&b)?, &p)?;
        worst = worst.max(cycle.abs());
    }
    Ok(vec![CheckResult::residual(
        "representation-jacobi/cycle",
        worst,
        ctx.check_tol,
    )])
}

fn flow_conservation(ctx: &CheckContext) -> Result<Vec<CheckResult>, Error> {
    let k = ctx.kahler;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let h = sample_hermitian(k.algebra(), &mut rng);
    let nu = cyclic_point(k);
    let f_h0 = eval_f(k, &h, &nu)?;
    let unit = k.algebra().unit();
    let f_u0 = eval_f(k, &unit, &nu)?;
    let mut conservation = 0.0f64;
    for &t in &time_grid(0.0, 8.0, 32) {
        let p = flow(k, &h, &nu, t)?;
        conservation = conservation
            .max((eval_f(k, &h, &p)? - f_h0).abs())
            .max((eval_f(k, &unit, &p)? - f_u0).abs());
    }
    let mut form_residual = 0.0f64;
    for t in [-10.0, 0.7, 10.0] {
        let f = flow_operator(k, &h, t)?;
        form_residual = form_residual
            .max(max_abs(&(f.transpose() * k.metric() * &f - k.metric())))
            .max(max_abs(
                &(f.transpose() * k.symplectic() * &f - k.symplectic()),
            ));
    }
    Ok(vec![
        CheckResult::residual(
            "flow-conservation/energy-and-norm",
            conservation,
            ctx.check_tol,
        ),
        CheckResult::residual(
            "flow-conservation/form-preservation",
            form_residual,
            FLOW_FORM_TOL,
        ),
    ])
}

fn commuting_diagram(ctx: &CheckContext) -> Result<Vec<CheckResult>, Error> {
    let k = ctx.kahler;
    let algebra = k.algebra();
    // deterministic generator/observable: two seeded Hermitian elements
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let h = sample_hermitian(algebra, &mut rng);
    let b = sample_hermitian(algebra, &mut rng);
    let times = time_grid(0.0, 2.0 * std::f64::consts::PI, 100);
    let nu = cyclic_point(k);
    let geometric = expectation_trajectory(k, &h, &b, &nu, &times)?;
    let oracle = hilbert_expectation_trajectory(ctx.state, &h, &b, &times)?;
    let residual = geometric
        .iter()
        .zip(oracle.iter())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    Ok(vec![CheckResult::residual(
        "commuting-diagram/flow-vs-oracle",
        residual,
        DIAGRAM_TOL,
    )])
}

fn uniqueness(ctx: &CheckContext) -> Result<Vec<CheckResult>, Error> {
    let k = ctx.kahler;
    let k2 = rebase(k, RebaseRecipe::OrthogonalMix, ctx.seed)?;
    let iso = find_iso(k, &k2)?;
    let res = iso.residuals(k, &k2)?;
    let transport = verify_iso_representation(&iso, k, &k2, 100, ctx.seed)?;
    Ok(vec![
        CheckResult::residual("uniqueness/isometry", res.isometry, ISO_TOL),
        CheckResult::residual(
            "uniqueness/symplectomorphism",
            res.symplectomorphism,
            ISO_TOL,
        ),
        CheckResult::residual("uniqueness/j-intertwine", res.j_intertwine, ISO_TOL),
        CheckResult::residual("uniqueness/nu-match", res.nu_match, ISO_TOL),
        CheckResult::residual("uniqueness/solve", res.solve, ISO_TOL),
        CheckResult::residual("uniqueness/f-transport", transport, ISO_TOL),
    ])
}
