use lifted_walk::boundary::BoundarySpec;
use lifted_walk::coin::{self, CoinPopulation, LiftMode, QubitState};
use lifted_walk::oracle::{self, System};
use lifted_walk::walk::{self, Lattice, LiftedState, Scaling, WaveState};
use nalgebra::Matrix4;
use num_complex::Complex64;
use proptest::prelude::*;

fn complex() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn qubit() -> impl Strategy<Value = QubitState> {
    (complex(), complex()).prop_map(|(a, b)| QubitState::new(a, b))
}

fn real_qubit() -> impl Strategy<Value = QubitState> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(a, b)| QubitState::real(a, b))
}

fn population() -> impl Strategy<Value = CoinPopulation> {
    proptest::array::uniform4(complex()).prop_map(CoinPopulation)
}

fn boundary() -> impl Strategy<Value = BoundarySpec> {
    prop_oneof![
        Just(BoundarySpec::none()),
        Just(BoundarySpec::cyclic()),
        Just(BoundarySpec::reflect1()),
        Just(BoundarySpec::reflect2()),
        Just(BoundarySpec::reflect1().with_cyclic_closure(true)),
        Just(BoundarySpec::trap()),
    ]
}

proptest! {
    #[test]
    fn lift_then_project_round_trips(q in qubit(), raw in any::<bool>()) {
        let mode = if raw { LiftMode::Raw } else { LiftMode::SignSplit };
        let back = coin::project(&coin::lift(q, mode), 0);
        prop_assert_eq!(back, q);
    }

    #[test]
    fn sign_split_of_real_state_is_nonnegative(q in real_qubit()) {
        let p = coin::lift(q, LiftMode::SignSplit);
        prop_assert!(p.0.iter().all(|z| z.im == 0.0 && z.re >= 0.0));
        let sum: f64 = p.0.iter().map(|z| z.re).sum();
        prop_assert!((sum - (q.a0.re.abs() + q.a1.re.abs())).abs() < 1e-15);
    }

    #[test]
    fn transition_powers_conserve_population(v in proptest::array::uniform4(-1.0..1.0f64), n in 0usize..=1000) {
        let a = coin::make_transition_matrix();
        let mut p = CoinPopulation::real(v);
        let before = p.total().re;
        for _ in 0..n {
            p = a.apply(&p);
        }
        prop_assert!((p.total().re - before).abs() <= 1e-9 * n.max(1) as f64);
    }

    #[test]
    fn folded_norm_is_preserved(p in population(), n in 0i32..=40) {
        let b = coin::make_interference_matrix();
        let a = coin::make_transition_matrix();
        let norm = |p: &CoinPopulation| { let (x, y) = b.apply(p); x.norm_sqr() + y.norm_sqr() };
        let initial = norm(&p);
        prop_assume!(initial > 1e-6);
        let mut cur = p;
        for _ in 0..n {
            cur = a.apply(&cur);
        }
        let scaled = 2f64.powi(n) * norm(&cur);
        prop_assert!((scaled - initial).abs() <= 1e-8 * initial);
    }

    #[test]
    fn lifted_coin_matrices_commute_with_reversal(which in 0usize..6) {
        let r = lifted_walk::boundary::make_reflectors();
        let m = [
            coin::make_transition_matrix(),
            coin::zero_state(),
            coin::one_state(),
            r.lifted_r1,
            r.lifted_r2,
            lifted_walk::boundary::make_trap(),
        ][which];
        let j: Matrix4<f64> = coin::reversal_matrix().map(|x| x as f64);
        prop_assert_eq!(j * m.matrix(), m.matrix() * j);
    }

    #[test]
    fn layout_round_trips(seed in any::<u64>(), m in 2usize..12) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let lattice = Lattice::new(m).unwrap();
        let v = oracle::random_complex(&mut rng, lattice.lifted_dim());
        let s = LiftedState::from_populations(lattice, v.clone(), Scaling::Unscaled).unwrap();
        prop_assert_eq!(s.unfold().interleave(), v);
    }

    #[test]
    fn structural_step_matches_dense(seed in any::<u64>(), m in 3usize..=64, spec in boundary()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let lattice = Lattice::new(m).unwrap();

        let dense = oracle::dense_assemble(&lattice, &spec, System::Lifted).unwrap();
        let op = walk::make_markov_step(lattice, spec).unwrap();
        let v = oracle::random_complex(&mut rng, lattice.lifted_dim());
        prop_assert!(walk::max_abs_diff(&dense.apply(&v).unwrap(), &op.apply(&v).unwrap()) < 1e-14);

        let dense = oracle::dense_assemble(&lattice, &spec, System::Unitary).unwrap();
        let op = walk::make_unitary_step(lattice, spec).unwrap();
        let w = oracle::random_complex(&mut rng, lattice.wave_dim());
        prop_assert!(walk::max_abs_diff(&dense.apply(&w).unwrap(), &op.apply(&w).unwrap()) < 1e-14);
    }

    #[test]
    fn lifted_projection_tracks_unitary_walk(q in qubit(), spec in boundary(), n in 0usize..40) {
        let lattice = Lattice::new(11).unwrap();
        let mut lifted = LiftedState::point(lattice, 5, q, LiftMode::SignSplit, Scaling::PerStepSqrt2).unwrap();
        let mut wave = WaveState::point(lattice, 5, q).unwrap();
        lifted.evolve(&walk::make_markov_step(lattice, spec).unwrap(), n).unwrap();
        wave.evolve(&walk::make_unitary_step(lattice, spec).unwrap(), n).unwrap();
        prop_assert!(walk::max_abs_diff(lifted.project().unwrap().amplitudes(), wave.amplitudes()) < 1e-12);
    }

    #[test]
    fn scaled_mode_is_unscaled_times_power(q in qubit(), n in 0usize..60) {
        let (lattice, center) = Lattice::centered(60);
        let op = walk::make_markov_step(lattice, BoundarySpec::none()).unwrap();
        let mut plain = LiftedState::point(lattice, center, q, LiftMode::SignSplit, Scaling::Unscaled).unwrap();
        let mut scaled = LiftedState::point(lattice, center, q, LiftMode::SignSplit, Scaling::PerStepSqrt2).unwrap();
        plain.evolve(&op, n).unwrap();
        scaled.evolve(&op, n).unwrap();
        let factor = std::f64::consts::SQRT_2.powi(n as i32);
        let peak = scaled.populations().iter().map(|z| z.norm()).fold(0.0, f64::max);
        for (a, b) in plain.populations().iter().zip(scaled.populations()) {
            prop_assert!((a * factor - b).norm() <= 1e-12 * peak.max(1e-300));
        }
    }
}

#[test]
fn dense_and_structural_agree_on_every_basis_vector() {
    for m in 2..=16 {
        let lattice = Lattice::new(m).unwrap();
        let mut specs = vec![BoundarySpec::none(), BoundarySpec::cyclic()];
        if m >= 3 {
            specs.extend([
                BoundarySpec::reflect1(),
                BoundarySpec::reflect2(),
                BoundarySpec::trap().with_cyclic_closure(true),
            ]);
        }
        for spec in specs {
            let dense = oracle::dense_assemble(&lattice, &spec, System::Lifted).unwrap();
            let op = walk::make_markov_step(lattice, spec).unwrap();
            for i in 0..lattice.lifted_dim() {
                let mut e = vec![Complex64::new(0.0, 0.0); lattice.lifted_dim()];
                e[i] = Complex64::new(1.0, 0.0);
                assert_eq!(
                    dense.apply(&e).unwrap(),
                    op.apply(&e).unwrap(),
                    "m={m} {spec:?} col {i}"
                );
            }
        }
    }
}

#[test]
fn dense_and_structural_agree_on_random_vectors() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
    for m in [4, 16, 33, 64] {
        let lattice = Lattice::new(m).unwrap();
        let dense =
            oracle::dense_assemble(&lattice, &BoundarySpec::none(), System::Lifted).unwrap();
        let op = walk::make_markov_step(lattice, BoundarySpec::none()).unwrap();
        for _ in 0..100 {
            let v = oracle::random_complex(&mut rng, lattice.lifted_dim());
            assert!(walk::max_abs_diff(&dense.apply(&v).unwrap(), &op.apply(&v).unwrap()) < 1e-14);
        }
    }
}

#[test]
fn lift_equivalence_random_starts() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    for m in [4, 8, 16] {
        let lattice = Lattice::new(m).unwrap();
        for n in 1..=10 {
            let v = oracle::random_complex(&mut rng, lattice.lifted_dim());
            let s = LiftedState::from_populations(lattice, v, Scaling::Unscaled).unwrap();
            let r = walk::lift_equivalence_residual(&s, n, BoundarySpec::none()).unwrap();
            assert!(r < 1e-9, "m={m} n={n} residual {r}");
        }
    }
}
