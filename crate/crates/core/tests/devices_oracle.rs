mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use common::*;
use fconv_core::devices::*;
use fconv_core::fock::{fidelity, make_fock, make_vacuum, FockState, ModeRegistry};
use fconv_core::{Backend, C64};
use nalgebra::DMatrix;

fn reg2(cutoff: usize) -> ModeRegistry {
    ModeRegistry::from_triples([("p", 2.0, cutoff), ("i", 1.0, cutoff)]).unwrap()
}

fn reg3(cp: usize, cs: usize, ci: usize) -> ModeRegistry {
    ModeRegistry::from_triples([("p", 2.0, cp), ("s", 1.0, cs), ("i", 1.0, ci)]).unwrap()
}

#[test]
fn converter_matches_dense_exponential() {
    let reg = reg2(4);
    for (theta, phi) in [(FRAC_PI_4, 0.0), (0.3, 1.2), (2.0, -0.7)] {
        let blocked = converter_unitary(&reg, &Device::converter("p", "i", theta, phi)).unwrap();
        let dense = dense_converter(&reg, 0, 1, theta, phi);
        assert!(max_abs(&(&blocked - &dense)) < 1e-12, "theta {theta}");
    }
    let u = converter_unitary(&reg, &Device::converter("p", "i", FRAC_PI_4, 0.0)).unwrap();
    let out = make_fock(&reg, &[1, 0]).unwrap().apply_unitary(&u).unwrap();
    assert!((out.amplitude(&[0, 1]).unwrap().norm_sqr() - 0.5).abs() < 1e-12);
}

#[test]
fn amplifier_matches_dense_exponential() {
    let reg = reg2(12);
    let blocked = amplifier_unitary(&reg, &Device::amplifier("p", "i", 0.2, 0.9)).unwrap();
    let dense = dense_amplifier(&reg, 0, 1, 0.2, 0.9);
    assert!(max_abs(&(&blocked - &dense)) < 1e-12);
}

#[test]
fn trilinear_two_photon_block_matches_dense() {
    let reg = reg3(2, 2, 2);
    let et = 0.8;
    let blocked = trilinear_unitary(&reg, &Device::trilinear("p", "s", "i", et, 0.4)).unwrap();
    let dense = dense_trilinear(&reg, et, 0.4);
    assert!(max_abs(&(&blocked - &dense)) < 1e-12);
    let err = (blocked.adjoint() * &blocked - DMatrix::<C64>::identity(27, 27))
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    assert!(err < 1e-9);

    let out = make_fock(&reg, &[2, 0, 0])
        .unwrap()
        .apply_unitary(&blocked)
        .unwrap();
    let probs: Vec<f64> = [[2, 0, 0], [1, 1, 1], [0, 2, 2]]
        .iter()
        .map(|o| out.amplitude(o).unwrap().norm_sqr())
        .collect();
    assert!((probs.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    // 3x3 block oracle: couplings sqrt(2) and 2 (|2,0,0> -> |1,1,1> -> |0,2,2>)
    let b = DMatrix::from_row_slice(
        3,
        3,
        &[0.0, 2f64.sqrt(), 0.0, 2f64.sqrt(), 0.0, 2.0, 0.0, 2.0, 0.0],
    );
    let eig = b.symmetric_eigen();
    let mut amp = [0.0f64; 3];
    for (k, a) in amp.iter_mut().enumerate() {
        // |<k| e^{-i B et} |0>|: with real symmetric B the phases are separable
        let mut z = C64::new(0.0, 0.0);
        for m in 0..3 {
            z += C64::from_polar(1.0, -eig.eigenvalues[m] * et)
                * eig.eigenvectors[(k, m)]
                * eig.eigenvectors[(0, m)];
        }
        *a = z.norm_sqr();
    }
    for k in 0..3 {
        assert!((probs[k] - amp[k]).abs() < 1e-12, "{probs:?} vs {amp:?}");
    }
}

#[test]
fn trilinear_rabi_law() {
    let reg = reg3(1, 2, 2);
    for k in 0..10 {
        let et = 0.17 * k as f64;
        let u = trilinear_unitary(&reg, &Device::trilinear("p", "s", "i", et, -0.3)).unwrap();
        let out = make_fock(&reg, &[1, 0, 0])
            .unwrap()
            .apply_unitary(&u)
            .unwrap();
        let p = out.amplitude(&[0, 1, 1]).unwrap().norm_sqr();
        assert!((p - et.sin().powi(2)).abs() < 1e-9);
    }
}

/// `U^dag a U` against `sum_k A a_k + B a_k^dag`, compared on basis states
/// from `subspace`.
fn heisenberg_deviation(
    reg: &ModeRegistry,
    u: &DMatrix<C64>,
    map: &Bogoliubov,
    subspace: impl Fn(&[usize]) -> bool,
) -> f64 {
    let keep: Vec<usize> = (0..reg.dim())
        .filter(|&j| subspace(&reg.occupations(j)))
        .collect();
    let mut worst = 0.0f64;
    for (lj, &j) in map.modes.iter().enumerate() {
        let evolved = u.adjoint() * lowering_on(reg, j) * u;
        let mut expected = DMatrix::<C64>::zeros(reg.dim(), reg.dim());
        for (lk, &k) in map.modes.iter().enumerate() {
            let ak = lowering_on(reg, k);
            expected += &ak * map.a[(lj, lk)] + ak.adjoint() * map.b[(lj, lk)];
        }
        for &r in &keep {
            for &c in &keep {
                worst = worst.max((evolved[(r, c)] - expected[(r, c)]).norm());
            }
        }
    }
    worst
}

#[test]
fn converter_heisenberg_action() {
    let cutoff = 6;
    let reg = reg2(cutoff);
    for (theta, phi) in [(0.4, 0.0), (1.1, 2.3), (FRAC_PI_2, -1.0)] {
        let d = Device::converter("p", "i", theta, phi);
        let u = converter_unitary(&reg, &d).unwrap();
        let map = d.bogoliubov(&reg).unwrap();
        // number-conserving: blocks of total photon number <= cutoff - 2 are complete
        let dev = heisenberg_deviation(&reg, &u, &map, |n| n.iter().sum::<usize>() + 2 <= cutoff);
        assert!(dev < 1e-8, "{dev}");
    }
}

#[test]
fn amplifier_heisenberg_action() {
    let cutoff = 26;
    let reg = reg2(cutoff);
    for (r, phi) in [(0.15, 0.0), (0.2, 1.4)] {
        let d = Device::amplifier("p", "i", r, phi);
        let u = amplifier_unitary(&reg, &d).unwrap();
        let map = d.bogoliubov(&reg).unwrap();
        let dev = heisenberg_deviation(&reg, &u, &map, |n| n.iter().all(|&k| k <= 3));
        assert!(dev < 1e-8, "{dev}");
    }
}

#[test]
fn phase_shift_heisenberg_action() {
    let reg = reg2(4);
    let d = Device::phase_shift("i", 0.9);
    let u = d.dense_unitary(&reg).unwrap();
    let map = d.bogoliubov(&reg).unwrap();
    assert!(heisenberg_deviation(&reg, &u, &map, |n| n[1] < 4) < 1e-12);
}

#[test]
fn conserved_charges() {
    let reg = reg3(3, 3, 3);
    let u = trilinear_unitary(&reg, &Device::trilinear("p", "s", "i", 0.7, 0.2)).unwrap();
    let (np, ns, ni) = (number_on(&reg, 0), number_on(&reg, 1), number_on(&reg, 2));
    let c1 = &np + &ns;
    let c2 = &ns - &ni;
    for seed in 0..5 {
        let psi = random_state(&reg, seed);
        let out = psi.apply_unitary(&u).unwrap();
        for q in [&c1, &c2] {
            assert!((expect(&psi, q) - expect(&out, q)).norm() < 1e-9);
        }
    }

    let reg = reg2(8);
    let amp = amplifier_unitary(&reg, &Device::amplifier("p", "i", 0.1, 0.5)).unwrap();
    let q = number_on(&reg, 0) - number_on(&reg, 1);
    for seed in 10..15 {
        let psi = random_state(&reg, seed);
        let out = psi.apply_unitary(&amp).unwrap();
        assert!((expect(&psi, &q) - expect(&out, &q)).norm() < 1e-9);
    }
}

#[test]
fn amplifier_vacuum_statistics() {
    let r = 0.5f64;
    let reg = reg2(tmsv_required_cutoff(r, 1e-15));
    let out: FockState = Device::amplifier("p", "i", r, 0.0)
        .blocked_unitary(&reg)
        .unwrap()
        .apply_pure(&make_vacuum(&reg), &[0, 1])
        .unwrap()
        .into();
    let g2 = r.sinh().powi(2);
    assert!((out.mean_photon("i").unwrap() - g2).abs() < 1e-8);
    for phi in [0.0, 0.4, 1.3] {
        let v = out.quadrature_variance("i", phi).unwrap();
        assert!((v - (2.0 * g2 + 1.0) / 4.0).abs() < 1e-8);
    }
    // reduced idler state is thermal: p_n = (1 - l) l^n, l = tanh^2 r
    let reduced = out.partial_trace(&["i"]).unwrap();
    let l = r.tanh().powi(2);
    for n in 0..10 {
        let p = reduced.matrix()[(n, n)].re;
        assert!((p - (1.0 - l) * l.powi(n as i32)).abs() < 1e-12);
    }
}

#[test]
fn attenuator_then_converter() {
    let alpha = C64::new(1.2, 0.4);
    let (t, theta) = (0.3, 0.9f64);
    let reg = reg2(20);
    let circuit = Circuit::new(
        reg.clone(),
        vec![
            Device::attenuator("p", t),
            Device::converter("p", "i", theta, 0.2),
        ],
    )
    .unwrap();
    let program = compile_circuit(&circuit, Backend::Fock).unwrap();
    let input: FockState = coherent(&reg, &[alpha, C64::new(0.0, 0.0)]).into();
    let out = program.as_fock().unwrap().run(&input).unwrap();
    let expected = t * alpha.norm_sqr() * theta.sin().powi(2);
    assert!((out.mean_photon("i").unwrap() - expected).abs() < 1e-10);
    assert!((out.trace() - 1.0).abs() < 1e-10);
}

#[test]
fn unit_conversion_transfers_any_pump_state() {
    let cutoff = 5;
    let reg = reg2(cutoff);
    let single = ModeRegistry::from_triples([("p", 2.0, cutoff)]).unwrap();
    let phi_s = 0.8;
    let u = converter_unitary(&reg, &Device::converter("p", "i", FRAC_PI_2, phi_s)).unwrap();
    for seed in 0..5 {
        let psi = random_state(&single, seed);
        let vac = make_vacuum(&ModeRegistry::from_triples([("i", 1.0, cutoff)]).unwrap());
        let out = psi.tensor(&vac).unwrap().apply_unitary(&u).unwrap();
        // a_p^dag -> -e^{-i phi_s} a_i^dag: photon n picks up (-e^{-i phi_s})^n
        let vac_p = make_vacuum(&single);
        let moved = vac_p
            .tensor(
                &fconv_core::fock::PureState::from_amplitudes(
                    &ModeRegistry::from_triples([("i", 1.0, cutoff)]).unwrap(),
                    psi.amplitudes().map_with_location(|n, _, a| {
                        a * (-C64::from_polar(1.0, -phi_s)).powu(n as u32)
                    }),
                )
                .unwrap(),
            )
            .unwrap();
        assert!(fidelity(&out, &moved).unwrap() >= 1.0 - 1e-9);
    }
}
