use bcqt_core::qstate::{Basis, BellOutcome, Gate, OneQubitGate, QubitLabel, StateVector, C64};
use proptest::prelude::*;

fn labels(n: usize) -> Vec<QubitLabel> {
    (0..n as u8).map(QubitLabel::Generic).collect()
}

fn state(n: usize) -> impl Strategy<Value = StateVector> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n)
        .prop_filter("nonzero", |v| {
            v.iter().map(|(a, b)| a * a + b * b).sum::<f64>() > 1e-3
        })
        .prop_map(move |v| {
            let amps = v.into_iter().map(|(re, im)| C64::new(re, im)).collect();
            StateVector::normalized(labels(n), amps).unwrap()
        })
}

fn any_state() -> impl Strategy<Value = StateVector> {
    (2usize..=5).prop_flat_map(state)
}

fn one_qubit_gate() -> impl Strategy<Value = OneQubitGate> {
    prop_oneof![
        Just(OneQubitGate::I),
        Just(OneQubitGate::X),
        Just(OneQubitGate::IY),
        Just(OneQubitGate::Z),
        Just(OneQubitGate::H),
    ]
}

fn close(a: &StateVector, b: &StateVector, tol: f64) -> bool {
    a.labels() == b.labels()
        && a.amplitudes()
            .iter()
            .zip(b.amplitudes())
            .all(|(x, y)| (x - y).norm() <= tol)
}

proptest! {
    #[test]
    fn gates_preserve_norm(s in any_state(), g in one_qubit_gate(), q in 0u8..5) {
        let q = QubitLabel::Generic(q % s.num_qubits() as u8);
        let out = s.apply(&Gate::single(g, q)).unwrap();
        prop_assert!((out.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn involutions(s in any_state(), g in one_qubit_gate(), q in 0u8..5) {
        let q = QubitLabel::Generic(q % s.num_qubits() as u8);
        let twice = s.apply(&Gate::single(g, q)).unwrap().apply(&Gate::single(g, q)).unwrap();
        if g == OneQubitGate::IY {
            let neg = StateVector::new(
                s.labels().to_vec(),
                s.amplitudes().iter().map(|a| -a).collect(),
            ).unwrap();
            prop_assert!(close(&twice, &neg, 1e-12));
        } else {
            prop_assert!(close(&twice, &s, 1e-12));
        }
    }

    #[test]
    fn cnot_is_involution(s in any_state(), c in 0u8..5, t in 1u8..5) {
        let n = s.num_qubits() as u8;
        let c = c % n;
        let t = (c + t % (n - 1).max(1)) % n;
        prop_assume!(c != t);
        let g = Gate::cnot(QubitLabel::Generic(c), QubitLabel::Generic(t));
        let twice = s.apply(&g).unwrap().apply(&g).unwrap();
        prop_assert!(close(&twice, &s, 1e-12));
    }

    #[test]
    fn born_completeness(s in any_state(), q in 0u8..5) {
        let n = s.num_qubits() as u8;
        let (q, q2) = (QubitLabel::Generic(q % n), QubitLabel::Generic((q + 1) % n));
        for basis in [Basis::Z, Basis::X] {
            let p = s.probability(q, basis, 0).unwrap() + s.probability(q, basis, 1).unwrap();
            prop_assert!((p - 1.0).abs() < 1e-12);
        }
        let total: f64 = s.bell_probabilities(q, q2).unwrap().iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sampling_matches_postselection(s in any_state(), q in 0u8..5, seed in any::<u64>()) {
        let q = QubitLabel::Generic(q % s.num_qubits() as u8);
        let mut rng = bcqt_core::rng::seeded(seed);
        let (o, p, post) = s.measure(q, Basis::X, &mut rng).unwrap();
        let (pf, forced) = s.postselect(q, Basis::X, o).unwrap();
        prop_assert_eq!(p, pf);
        prop_assert_eq!(post, forced);

        let q2 = QubitLabel::Generic(0);
        let q1 = QubitLabel::Generic(1);
        let (bo, bp, bpost) = s.measure_bell(q1, q2, &mut rng).unwrap();
        let (bpf, bforced) = s.postselect_bell(q1, q2, bo).unwrap();
        prop_assert_eq!(bp, bpf);
        prop_assert_eq!(bpost, bforced);
    }

    #[test]
    fn product_factor_is_pure(a in state(1), b in state(2)) {
        let b = b.relabeled(vec![QubitLabel::Generic(5), QubitLabel::Generic(6)]).unwrap();
        let rho = a.tensor(&b).unwrap().partial_trace(&[QubitLabel::Generic(0)]).unwrap();
        let ev = rho.eigenvalues();
        prop_assert!((ev[ev.len() - 1] - 1.0).abs() < 1e-10);
        prop_assert!((rho.trace().re - 1.0).abs() < 1e-12);
        prop_assert!(rho.is_hermitian(1e-12));
    }

    #[test]
    fn permuting_labels_leaves_probabilities(s in any_state(), rot in 0usize..5, q in 0u8..5) {
        let n = s.num_qubits();
        let mut order = s.labels().to_vec();
        order.rotate_left(rot % n);
        let p = s.reordered(&order).unwrap();
        let q = QubitLabel::Generic(q % n as u8);
        for basis in [Basis::Z, Basis::X] {
            let direct = s.probability(q, basis, 0).unwrap();
            let permuted = p.probability(q, basis, 0).unwrap();
            prop_assert!((direct - permuted).abs() < 1e-12);
        }
        prop_assert!(s.equal_up_to_phase(&p, 1e-12).unwrap());
    }

    #[test]
    fn reduced_states_are_valid(s in any_state(), q in 0u8..5) {
        let q = QubitLabel::Generic(q % s.num_qubits() as u8);
        let rho = s.partial_trace(&[q]).unwrap();
        prop_assert!(rho.is_hermitian(1e-12));
        prop_assert!((rho.trace().re - 1.0).abs() < 1e-12);
        prop_assert!(rho.eigenvalues().iter().all(|&l| l >= -1e-10));
    }
}

#[test]
fn bell_measurement_on_its_own_state() {
    let (q1, q2) = (QubitLabel::Generic(0), QubitLabel::Generic(1));
    for o in BellOutcome::ALL {
        let p = o.state(q1, q2).bell_probabilities(q1, q2).unwrap();
        assert!((p[o.index()] - 1.0).abs() < 1e-15);
    }
}
