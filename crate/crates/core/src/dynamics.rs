//! Exact Hamiltonian flows and the evolution cross-check.
//!
//! The Hamiltonian field of a represented element is linear, so its flow is
//! the matrix exponential `exp(t·(-Jm·A_h))`, a metric isometry and
//! symplectomorphism; no integrator is involved. The independent oracle
//! evolves the density matrix by conjugation with blockwise unitaries
//! `exp(-i·t·h)` and pairs it against the observable, and starting the flow
//! at the cyclic point the two expectation curves must coincide.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::algebra::JlbElement;
use crate::error::{Error, Result};
use crate::kahler::{build_kahler, KahlerPoint, KahlerStructure};
use crate::linalg::{expm_hermitian, RMat};
use crate::representation::{action_matrix, cyclic_point, RepresentedObservable};
use crate::states::StateFunctional;

/// A trajectory with observable expectations sampled along it.
#[derive(Clone, Debug)]
pub struct FlowResult {
    pub times: Vec<f64>,
    pub points: Vec<KahlerPoint>,
    /// observable label -> f_b along the trajectory
    pub observables: BTreeMap<String, Vec<f64>>,
}

/// The flow map `exp(t·(-Jm·A_h))` for generator `h`.
pub fn flow_operator(k: &KahlerStructure, h: &JlbElement, t: f64) -> Result<RMat> {
    let a = action_matrix(k, h)?;
    flow_operator_from_action(k, &a, t)
}

fn flow_operator_from_action(
    k: &KahlerStructure,
    h: &RepresentedObservable,
    t: f64,
) -> Result<RMat> {
    let generator = -(k.complex_structure() * h.matrix());
    Ok((generator * t).exp())
}

/// Flows `p0` for time `t` along the Hamiltonian field of `h`.
pub fn flow(k: &KahlerStructure, h: &JlbElement, p0: &KahlerPoint, t: f64) -> Result<KahlerPoint> {
    k.check_point(p0)?;
    let op = flow_operator(k, h, t)?;
    Ok(k.point(op * p0.coords()))
}

/// Samples points and observable expectations along the flow of `h`.
pub fn flow_trajectory(
    k: &KahlerStructure,
    h: &JlbElement,
    p0: &KahlerPoint,
    times: &[f64],
    observables: &[(String, JlbElement)],
) -> Result<FlowResult> {
    k.check_point(p0)?;
    let a_h = action_matrix(k, h)?;
    let obs: Vec<(String, RepresentedObservable)> = observables
        .iter()
        .map(|(label, b)| Ok((label.clone(), action_matrix(k, b)?)))
        .collect::<Result<_>>()?;
    let mut points = Vec::with_capacity(times.len());
    let mut values: BTreeMap<String, Vec<f64>> =
        obs.iter().map(|(l, _)| (l.clone(), Vec::new())).collect();
    for &t in times {
        let op = flow_operator_from_action(k, &a_h, t)?;
        let p = k.point(op * p0.coords());
        for (label, b) in &obs {
            values
                .get_mut(label)
                .expect("label registered above")
                .push(b.eval_f(k, &p)?);
        }
        points.push(p);
    }
    Ok(FlowResult {
        times: times.to_vec(),
        points,
        observables: values,
    })
}

/// `f_b` along the flow of `h` started at `p0`.
///
/// With `p0` the cyclic point this matches the density-matrix evolution
/// oracle of [`hilbert_expectation_trajectory`].
pub fn expectation_trajectory(
    k: &KahlerStructure,
    h: &JlbElement,
    b: &JlbElement,
    p0: &KahlerPoint,
    times: &[f64],
) -> Result<Vec<f64>> {
    let result = flow_trajectory(k, h, p0, times, &[("b".to_string(), b.clone())])?;
    Ok(result
        .observables
        .into_values()
        .next()
        .expect("one observable"))
}

/// Evolution oracle on the algebra side: `tr(ρ(t)·b)` with
/// `ρ(t) = exp(-i t h) ρ exp(i t h)` blockwise.
pub fn hilbert_expectation_trajectory(
    state: &StateFunctional,
    h: &JlbElement,
    b: &JlbElement,
    times: &[f64],
) -> Result<Vec<f64>> {
    if !state.algebra().same_shape(h.algebra()) || !state.algebra().same_shape(b.algebra()) {
        return Err(Error::AlgebraMismatch(
            "oracle inputs from different algebras".into(),
        ));
    }
    let mut out = Vec::with_capacity(times.len());
    for &t in times {
        let mut value = 0.0;
        for ((rho, hb), bb) in state
            .density_blocks()
            .iter()
            .zip(h.blocks().iter())
            .zip(b.blocks().iter())
        {
            let u = expm_hermitian(hb, Complex64::new(0.0, -t));
            let evolved = &u * rho * u.adjoint();
            value += (evolved * bb).trace().re;
        }
        out.push(value);
    }
    Ok(out)
}

/// Builds the structure for `state`, flows the cyclic point along `h`, and
/// returns the sup over `times` of the gap to the density-matrix oracle.
pub fn check_commuting_diagram(
    state: &StateFunctional,
    h: &JlbElement,
    b: &JlbElement,
    times: &[f64],
    rank_cutoff: f64,
) -> Result<f64> {
    let k = build_kahler(state, rank_cutoff)?;
    let nu = cyclic_point(&k);
    let geometric = expectation_trajectory(&k, h, b, &nu, times)?;
    let oracle = hilbert_expectation_trajectory(state, h, b, times)?;
    Ok(geometric
        .iter()
        .zip(oracle.iter())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max))
}

/// Uniform grid of `steps + 1` points covering `[t0, t1]`.
pub fn time_grid(t0: f64, t1: f64, steps: usize) -> Vec<f64> {
    (0..=steps)
        .map(|i| t0 + (t1 - t0) * i as f64 / steps.max(1) as f64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{sample_hermitian, seeded_rng, MatrixAlgebra};
    use crate::linalg::max_abs;
    use crate::representation::{eval_f, sample_point};
    use crate::states::DEFAULT_RANK_CUTOFF;
    use std::sync::Arc;

    fn qubit() -> Arc<MatrixAlgebra> {
        MatrixAlgebra::new(&[2]).unwrap()
    }

    fn plus_state(alg: &Arc<MatrixAlgebra>) -> StateFunctional {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        StateFunctional::pure(alg, &[vec![Complex64::new(s, 0.0), Complex64::new(s, 0.0)]]).unwrap()
    }

    fn pauli(alg: &Arc<MatrixAlgebra>, which: char) -> JlbElement {
        let m = match which {
            'x' => crate::linalg::CMat::from_row_slice(
                2,
                2,
                &[
                    Complex64::new(0.0, 0.0),
                    Complex64::new(1.0, 0.0),
                    Complex64::new(1.0, 0.0),
                    Complex64::new(0.0, 0.0),
                ],
            ),
            'y' => crate::linalg::CMat::from_row_slice(
                2,
                2,
                &[
                    Complex64::new(0.0, 0.0),
                    Complex64::new(0.0, -1.0),
                    Complex64::new(0.0, 1.0),
                    Complex64::new(0.0, 0.0),
                ],
            ),
            'z' => crate::linalg::CMat::from_row_slice(
                2,
                2,
                &[
                    Complex64::new(1.0, 0.0),
                    Complex64::new(0.0, 0.0),
                    Complex64::new(0.0, 0.0),
                    Complex64::new(-1.0, 0.0),
                ],
            ),
            _ => panic!(),
        };
        alg.element_from_blocks(vec![m]).unwrap()
    }

    #[test]
    fn flow_at_zero_time_is_identity() {
        let alg = qubit();
        let k = build_kahler(&plus_state(&alg), DEFAULT_RANK_CUTOFF).unwrap();
        let mut rng = seeded_rng(3);
        let h = sample_hermitian(&alg, &mut rng);
        let p = sample_point(&k, &mut rng);
        let q = flow(&k, &h, &p, 0.0).unwrap();
        assert!((q.coords() - p.coords()).norm() < 1e-13);
    }

    #[test]
    fn flow_is_a_one_parameter_group() {
        let alg = qubit();
        let k = build_kahler(&plus_state(&alg), DEFAULT_RANK_CUTOFF).unwrap();
        let mut rng = seeded_rng(5);
        let h = sample_hermitian(&alg, &mut rng);
        let p = sample_point(&k, &mut rng);
        let s = 0.63;
        let t = 1.81;
        let a = flow(&k, &h, &flow(&k, &h, &p, t).unwrap(), s).unwrap();
        let b = flow(&k, &h, &p, s + t).unwrap();
        assert!((a.coords() - b.coords()).norm() < 1e-11);
    }

    #[test]
    fn flow_preserves_metric_and_symplectic_form() {
        let alg = MatrixAlgebra::new(&[2, 1]).unwrap();
        let phi = StateFunctional::maximally_mixed(&alg);
        let k = build_kahler(&phi, DEFAULT_RANK_CUTOFF).unwrap();
        let mut rng = seeded_rng(7);
        let h = sample_hermitian(&alg, &mut rng);
        for t in [-10.0, -1.0, 0.5, 3.0, 10.0] {
            let f = flow_operator(&k, &h, t).unwrap();
            assert!(max_abs(&(f.transpose() * k.metric() * &f - k.metric())) < 1e-10);
            assert!(max_abs(&(f.transpose() * k.symplectic() * &f - k.symplectic())) < 1e-10);
        }
        // metric norm conserved along the flow
        let p = sample_point(&k, &mut rng);
        let g0 = k.metric_inner(&p, &p).unwrap();
        for t in [0.3, 2.2, 7.9] {
            let q = flow(&k, &h, &p, t).unwrap();
            let gt = k.metric_inner(&q, &q).unwrap();
            assert!((gt - g0).abs() < 1e-10 * (1.0 + g0.abs()));
        }
    }

    #[test]
    fn generator_and_unit_functions_are_conserved() {
        let alg = qubit();
        let phi = plus_state(&alg);
        let k = build_kahler(&phi, DEFAULT_RANK_CUTOFF).unwrap();
        let mut rng = seeded_rng(11);
        let h = sample_hermitian(&alg, &mut rng);
        let nu = cyclic_point(&k);
        let f_h = eval_f(&k, &h, &nu).unwrap();
        let f_unit = eval_f(&k, &alg.unit(), &nu).unwrap();
        for &t in &time_grid(0.0, 8.0, 40) {
            let p = flow(&k, &h, &nu, t).unwrap();
            assert!((eval_f(&k, &h, &p).unwrap() - f_h).abs() < 1e-9);
            assert!((eval_f(&k, &alg.unit(), &p).unwrap() - f_unit).abs() < 1e-9);
        }
    }

    #[test]
    fn qubit_rotation_matches_closed_forms() {
        // ψ = (e1+e2)/√2, generator σ_z: ⟨σ_x⟩(t) = cos 2t, ⟨σ_y⟩(t) = sin 2t.
        // The sine curve pins the flow direction, not just its speed.
        let alg = qubit();
        let phi = plus_state(&alg);
        let k = build_kahler(&phi, DEFAULT_RANK_CUTOFF).unwrap();
        let nu = cyclic_point(&k);
        let times = time_grid(0.0, 2.0 * std::f64::consts::PI, 200);
        let sx =
            expectation_trajectory(&k, &pauli(&alg, 'z'), &pauli(&alg, 'x'), &nu, &times).unwrap();
        let sy =
            expectation_trajectory(&k, &pauli(&alg, 'z'), &pauli(&alg, 'y'), &nu, &times).unwrap();
        for (i, &t) in times.iter().enumerate() {
            assert!(
                (sx[i] - (2.0 * t).cos()).abs() < 1e-8,
                "cos mismatch at t={t}"
            );
            assert!(
                (sy[i] - (2.0 * t).sin()).abs() < 1e-8,
                "sin mismatch at t={t}"
            );
        }
    }

    #[test]
    fn central_generator_freezes_observables() {
        let alg = qubit();
        let phi = plus_state(&alg);
        let k = build_kahler(&phi, DEFAULT_RANK_CUTOFF).unwrap();
        let nu = cyclic_point(&k);
        let times = time_grid(0.0, 5.0, 50);
        let traj = expectation_trajectory(&k, &alg.unit(), &pauli(&alg, 'x'), &nu, &times).unwrap();
        for v in &traj {
            assert!((v - traj[0]).abs() < 1e-10);
        }
        // b = h: energy conservation
        let h = pauli(&alg, 'z');
        let traj = expectation_trajectory(&k, &h, &h, &nu, &times).unwrap();
        let expected = phi.evaluate(&h).unwrap();
        for v in &traj {
            assert!((v - expected).abs() < 1e-9);
        }
    }

    #[test]
    fn commuting_diagram_on_qubit() {
        let alg = qubit();
        let phi = plus_state(&alg);
        let times = time_grid(0.0, 2.0 * std::f64::consts::PI, 200);
        let residual = check_commuting_diagram(
            &phi,
            &pauli(&alg, 'z'),
            &pauli(&alg, 'x'),
            &times,
            DEFAULT_RANK_CUTOFF,
        )
        .unwrap();
        assert!(residual < 1e-8, "diagram residual {residual}");
    }

    #[test]
    fn commuting_diagram_trivial_observable() {
        let alg = qubit();
        let phi = plus_state(&alg);
        let times = time_grid(0.0, 3.0, 30);
        let residual = check_commuting_diagram(
            &phi,
            &pauli(&alg, 'z'),
            &alg.unit(),
            &times,
            DEFAULT_RANK_CUTOFF,
        )
        .unwrap();
        assert!(residual < 1e-12);
    }

    #[test]
    fn commuting_diagram_mixed_state_direct_sum() {
        let alg = MatrixAlgebra::new(&[2, 1]).unwrap();
        let phi = StateFunctional::maximally_mixed(&alg);
        let mut rng = seeded_rng(13);
        let h = sample_hermitian(&alg, &mut rng);
        let b = sample_hermitian(&alg, &mut rng);
        let times = time_grid(0.0, 4.0, 80);
        let residual = check_commuting_diagram(&phi, &h, &b, &times, DEFAULT_RANK_CUTOFF).unwrap();
        assert!(residual < 1e-8, "diagram residual {residual}");
    }

    #[test]
    fn trajectory_result_is_consistent() {
        let alg = qubit();
        let phi = plus_state(&alg);
        let k = build_kahler(&phi, DEFAULT_RANK_CUTOFF).unwrap();
        let h = pauli(&alg, 'z');
        let nu = cyclic_point(&k);
        let times = time_grid(0.0, 3.0, 30);
        let observables = vec![
            ("h".to_string(), h.clone()),
            ("x".to_string(), pauli(&alg, 'x')),
        ];
        let result = flow_trajectory(&k, &h, &nu, &times, &observables).unwrap();
        assert_eq!(result.times.len(), result.points.len());
        for values in result.observables.values() {
            assert_eq!(values.len(), result.times.len());
        }
        // the generator's own function is constant along the trajectory
        let f_h = &result.observables["h"];
        for v in f_h {
            assert!((v - f_h[0]).abs() < 1e-9);
        }
    }

    #[test]
    fn poisson_leibniz_consistency() {
        // d/dt f_b along the flow of h equals 2·f_{{b,h}} at the point,
        // by centered finite differences
        let alg = qubit();
        let phi = plus_state(&alg);
        let k = build_kahler(&phi, DEFAULT_RANK_CUTOFF).unwrap();
        let mut rng = seeded_rng(17);
        let h = sample_hermitian(&alg, &mut rng);
        let b = sample_hermitian(&alg, &mut rng);
        let nu = cyclic_point(&k);
        let step = 1e-5;
        for &t in &[0.0, 0.4, 1.3, 2.9] {
            let p = flow(&k, &h, &nu, t).unwrap();
            let fwd = eval_f(&k, &b, &flow(&k, &h, &nu, t + step).unwrap()).unwrap();
            let bwd = eval_f(&k, &b, &flow(&k, &h, &nu, t - step).unwrap()).unwrap();
            let derivative = (fwd - bwd) / (2.0 * step);
            let bracket = 2.0 * eval_f(&k, &b.lie(&h).unwrap(), &p).unwrap();
            assert!(
                (derivative - bracket).abs() < 1e-6,
                "d/dt = {derivative}, bracket = {bracket}"
            );
        }
    }
}
