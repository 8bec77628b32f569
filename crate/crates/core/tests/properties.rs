//! Property tests over seeded random algebra elements.

use std::sync::Arc;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use jlbk_core::algebra::{sample_cstar, sample_hermitian};
use jlbk_core::correspondence::{complexify, sa_decompose};
use jlbk_core::states::DEFAULT_RANK_CUTOFF;
use jlbk_core::{build_kahler, MatrixAlgebra, StateFunctional};

fn algebra(choice: u8) -> Arc<MatrixAlgebra> {
    let dims: &[usize] = match choice % 3 {
        0 => &[2],
        1 => &[3],
        _ => &[2, 1],
    };
    MatrixAlgebra::new(dims).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn involution_is_antimultiplicative(seed in any::<u64>(), choice in any::<u8>()) {
        let alg = algebra(choice);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = sample_cstar(&alg, &mut rng);
        let b = sample_cstar(&alg, &mut rng);
        let lhs = a.product(&b).unwrap().involution();
        let rhs = b.involution().product(&a.involution()).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().max_entry_norm() < 1e-12);
    }

    #[test]
    fn decompose_complexify_roundtrip(seed in any::<u64>(), choice in any::<u8>()) {
        let alg = algebra(choice);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = sample_cstar(&alg, &mut rng);
        let (a, b) = sa_decompose(&c);
        let back = complexify(&a, &b).unwrap();
        prop_assert!(back.sub(&c).unwrap().max_entry_norm() < 1e-14);
    }

    #[test]
    fn product_reconstruction(seed in any::<u64>(), choice in any::<u8>()) {
        let alg = algebra(choice);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = sample_hermitian(&alg, &mut rng);
        let b = sample_hermitian(&alg, &mut rng);
        let direct = a.to_cstar().product(&b.to_cstar()).unwrap();
        let rebuilt = complexify(&a.jordan(&b).unwrap(), &a.lie(&b).unwrap()).unwrap();
        prop_assert!(direct.sub(&rebuilt).unwrap().max_entry_norm() < 1e-12);
    }

    #[test]
    fn jordan_lie_symmetries(seed in any::<u64>(), choice in any::<u8>()) {
        let alg = algebra(choice);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = sample_hermitian(&alg, &mut rng);
        let b = sample_hermitian(&alg, &mut rng);
        let ab = a.jordan(&b).unwrap();
        let ba = b.jordan(&a).unwrap();
        prop_assert!(ab.sub(&ba).unwrap().norm() == 0.0);
        let lab = a.lie(&b).unwrap();
        let lba = b.lie(&a).unwrap();
        prop_assert!(lab.add(&lba).unwrap().norm() < 1e-14);
    }

    #[test]
    fn cstar_property(seed in any::<u64>(), choice in any::<u8>()) {
        let alg = algebra(choice);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = sample_cstar(&alg, &mut rng);
        let astar_a = a.involution().product(&a).unwrap();
        let rel = (astar_a.norm() - a.norm() * a.norm()).abs() / (1.0 + a.norm() * a.norm());
        prop_assert!(rel < 1e-10);
    }

    #[test]
    fn state_positivity_and_cauchy_schwarz(seed in any::<u64>(), choice in any::<u8>()) {
        let alg = algebra(choice);
        let phi = StateFunctional::maximally_mixed(&alg);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = sample_hermitian(&alg, &mut rng);
        let b = sample_hermitian(&alg, &mut rng);
        prop_assert!(phi.evaluate(&a.jordan(&a).unwrap()).unwrap() >= -1e-12);
        let (ra, rb) = phi.check_cauchy_schwarz(&a, &b).unwrap();
        prop_assert!(ra <= 1e-10 && rb <= 1e-10);
    }

    #[test]
    fn complex_structure_is_isometric_involution(seed in any::<u64>(), choice in any::<u8>()) {
        let alg = algebra(choice);
        let mut vectors = Vec::new();
        for (i, &d) in alg.block_dims().iter().enumerate() {
            let mut v = vec![Complex64::new(0.0, 0.0); d];
            if i == 0 {
                v[0] = Complex64::new(1.0, 0.0);
            }
            vectors.push(v);
        }
        let phi = StateFunctional::pure(&alg, &vectors).unwrap();
        let k = build_kahler(&phi, DEFAULT_RANK_CUTOFF).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = sample_hermitian(&alg, &mut rng);
        let b = sample_hermitian(&alg, &mut rng);
        let p = k.project_elements(&a, &b).unwrap();
        let jp = k.apply_j(&p).unwrap();
        let jjp = k.apply_j(&jp).unwrap();
        prop_assert!((jjp.coords() + p.coords()).norm() < 1e-12);
        let gp = k.metric_inner(&p, &p).unwrap();
        let gjp = k.metric_inner(&jp, &jp).unwrap();
        prop_assert!((gp - gjp).abs() < 1e-10 * (1.0 + gp.abs()));
    }
}
