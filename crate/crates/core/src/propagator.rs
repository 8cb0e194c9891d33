//! Exact propagation of populations under piecewise-constant generators.
//!
//! Evolution over a segment of duration `t` is `p(t) = exp(L t) p(0)`,
//! computed by scaling-and-squaring with Padé approximants (nalgebra's
//! `exp`), which is exact to machine precision for these small stiff
//! generators; accuracy is validated against a fine-step RK4 oracle in
//! the test suite.

use nalgebra::SMatrix;

use crate::error::{Error, Result};
use crate::generator::{
    build_rate_matrix, build_rate_matrix_four, FourLevelGenerator, FourLevelState, Generator,
};
use crate::params::RateParameters;
use crate::sequence::{PulseSequence, SegmentKind};
use crate::state::StateVector;

/// Propagator matrix `exp(L t)` for a segment of duration `t_ns`.
pub fn propagator_matrix<const N: usize>(
    l: &SMatrix<f64, N, N>,
    t_ns: f64,
) -> SMatrix<f64, N, N> {
    if t_ns == 0.0 {
        return SMatrix::identity();
    }
    (l * t_ns).exp()
}

/// Evolve a state under a fixed generator for `t_ns` nanoseconds.
pub fn propagate(state: &StateVector, l: &Generator, t_ns: f64) -> Result<StateVector> {
    state.check()?;
    if !t_ns.is_finite() || t_ns < 0.0 {
        return Err(Error::InvalidSequence(format!(
            "propagation time must be >= 0 ns, got {t_ns}"
        )));
    }
    Ok(StateVector::from_vector_unchecked(
        propagator_matrix(l, t_ns) * state.0,
    ))
}

/// Four-level counterpart of [`propagate`].
pub fn propagate_four(state: &FourLevelState, l: &FourLevelGenerator, t_ns: f64) -> FourLevelState {
    propagator_matrix(l, t_ns) * state
}

/// Run a pulse sequence segment by segment, returning the state at each
/// segment boundary (starting with the input state at t = 0). Microwave
/// π segments swap the NV- spin populations instantaneously.
pub fn run_sequence(
    state: &StateVector,
    seq: &PulseSequence,
    params: &RateParameters,
) -> Result<Vec<(f64, StateVector)>> {
    state.check()?;
    seq.validate()?;
    let mut t = 0.0;
    let mut current = state.clone();
    let mut trajectory = vec![(t, current.clone())];
    for seg in &seq.segments {
        current = match seg.kind {
            SegmentKind::MwPi => current.mw_pi(),
            kind => {
                let l = build_rate_matrix(params, kind, seg.power_uw)?;
                t += seg.duration_ns();
                propagate(&current, &l, seg.duration_ns())?
            }
        };
        trajectory.push((t, current.clone()));
    }
    Ok(trajectory)
}

/// Final state after a pulse sequence.
pub fn run_sequence_final(
    state: &StateVector,
    seq: &PulseSequence,
    params: &RateParameters,
) -> Result<StateVector> {
    Ok(run_sequence(state, seq, params)?
        .pop()
        .expect("trajectory contains at least the initial state")
        .1)
}

/// Fluorescence signal `alpha_minus * (e-_0 + e-_1) + alpha_zero * e0`
/// in the arbitrary units fixed by the scaling factors.
pub fn fluorescence(state: &StateVector, params: &RateParameters) -> f64 {
    params.alpha_minus * state.excited_minus()
        + params.alpha_zero * state.get(crate::state::Level::ExcitedZero)
}

/// Evolve a four-level state through the segments of a sequence
/// (microwave segments are rejected: the four-level model has no spin).
pub fn run_sequence_four(
    state: &FourLevelState,
    seq: &PulseSequence,
    params: &RateParameters,
) -> Result<FourLevelState> {
    let mut current = *state;
    for seg in &seq.segments {
        if seg.kind == SegmentKind::MwPi {
            return Err(Error::InvalidSequence(
                "four-level model has no spin: microwave segments unsupported".into(),
            ));
        }
        let l = build_rate_matrix_four(params, seg.kind, seg.power_uw)?;
        current = propagate_four(&current, &l, seg.duration_ns());
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{Level, LEVEL_COUNT};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    /// Fixed-step RK4 integrator, the brute-force oracle for `exp(L t)`.
    pub(crate) fn rk4_oracle<const N: usize>(
        l: &SMatrix<f64, N, N>,
        p0: &nalgebra::SVector<f64, N>,
        t: f64,
        dt: f64,
    ) -> nalgebra::SVector<f64, N> {
        let steps = (t / dt).round() as usize;
        let h = t / steps as f64;
        let mut p = *p0;
        for _ in 0..steps {
            let k1 = l * p;
            let k2 = l * (p + k1 * (h / 2.0));
            let k3 = l * (p + k2 * (h / 2.0));
            let k4 = l * (p + k3 * h);
            p += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        }
        p
    }

    #[test]
    fn zero_time_is_identity() {
        let p = RateParameters::reference();
        let l = build_rate_matrix(&p, SegmentKind::Green, 100.0).unwrap();
        let s = StateVector::charge_mix(0.7, 0.9);
        let out = propagate(&s, &l, 0.0).unwrap();
        assert_eq!(out, s);
    }

    #[test]
    fn two_level_decay_analytic() {
        let mut p = RateParameters::reference();
        p.beta0 = 0.0; // purely radiative m_s = 0 decay
        let l = build_rate_matrix(&p, SegmentKind::Dark, 0.0).unwrap();
        let s = StateVector::pure(Level::ExcitedMinusMs0);
        let out = propagate(&s, &l, p.gamma0_inv).unwrap();
        assert_abs_diff_eq!(
            out.get(Level::ExcitedMinusMs0),
            (-1.0_f64).exp(),
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(out.get(Level::GroundMinusMs0), 1.0 - (-1.0_f64).exp(), epsilon = 1e-12);
    }

    #[test]
    fn matches_fine_step_oracle() {
        let p = RateParameters::reference();
        let s = StateVector::from_populations([0.3, 0.1, 0.25, 0.05, 0.1, 0.15, 0.05]).unwrap();
        for (kind, power) in [
            (SegmentKind::Green, 158.0),
            (SegmentKind::Red, 350.0),
            (SegmentKind::Dark, 0.0),
        ] {
            let l = build_rate_matrix(&p, kind, power).unwrap();
            let exact = propagate(&s, &l, 0.1).unwrap();
            let oracle = rk4_oracle(&l, &s.0, 0.1, 1e-6);
            for i in 0..LEVEL_COUNT {
                assert!(
                    (exact.as_slice()[i] - oracle[i]).abs() < 1e-9,
                    "{kind:?} level {i}: {} vs {}",
                    exact.as_slice()[i],
                    oracle[i]
                );
            }
        }
    }

    #[test]
    fn four_level_matches_restricted_seven_level() {
        let p = RateParameters::reference();
        let p4 = p.four_level();
        let seq = PulseSequence::pair(p.pulse_width, 158.0, 592.0, 350.0);
        let seven = run_sequence_final(&StateVector::charge_mix(0.8, 1.0), &seq, &p4).unwrap();
        let four = run_sequence_four(
            &FourLevelState::new(0.8, 0.0, 0.2, 0.0),
            &seq,
            &p4,
        )
        .unwrap();
        assert_abs_diff_eq!(seven.get(Level::GroundMinusMs0), four[0], epsilon = 1e-12);
        assert_abs_diff_eq!(seven.get(Level::ExcitedMinusMs0), four[1], epsilon = 1e-12);
        assert_abs_diff_eq!(seven.get(Level::GroundZero), four[2], epsilon = 1e-12);
        assert_abs_diff_eq!(seven.get(Level::ExcitedZero), four[3], epsilon = 1e-12);
        assert!(seven.get(Level::Singlet).abs() < 1e-15);
        assert!(seven.ms1().abs() < 1e-15);
    }

    #[test]
    fn mw_pair_is_identity_and_composition_matches() {
        let p = RateParameters::reference();
        let s = StateVector::charge_mix(0.7, 0.9);
        let seq = PulseSequence {
            segments: vec![crate::sequence::Segment::mw_pi(), crate::sequence::Segment::mw_pi()],
        };
        assert_eq!(run_sequence_final(&s, &seq, &p).unwrap(), s);

        let seq = PulseSequence::pair(100.0, 95.0, 592.0, 82.0);
        let composed = run_sequence_final(&StateVector::ground_minus(p.spin_polarization), &seq, &p).unwrap();
        let mut manual = StateVector::ground_minus(p.spin_polarization);
        for seg in &seq.segments {
            let l = build_rate_matrix(&p, seg.kind, seg.power_uw).unwrap();
            manual = propagate(&manual, &l, seg.duration_ns()).unwrap();
        }
        for i in 0..LEVEL_COUNT {
            assert_abs_diff_eq!(composed.as_slice()[i], manual.as_slice()[i], epsilon = 1e-15);
        }
    }

    #[test]
    fn empty_sequence_returns_input() {
        let p = RateParameters::reference();
        let s = StateVector::charge_mix(0.4, 0.8);
        let out = run_sequence(&s, &PulseSequence::default(), &p).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].1, s);
    }

    #[test]
    fn ms1_initialization_shelves_more() {
        let p = RateParameters::reference();
        let seq = PulseSequence {
            segments: vec![
                crate::sequence::Segment::green(100.0, 158.0),
                crate::sequence::Segment::dark(100_000.0),
            ],
        };
        // compare singlet population reached along the way at 20 ns
        let probe = PulseSequence {
            segments: vec![
                crate::sequence::Segment::green(100.0, 158.0),
                crate::sequence::Segment::dark(20_000.0),
            ],
        };
        let ms0 = run_sequence_final(&StateVector::pure(Level::GroundMinusMs0), &probe, &p).unwrap();
        let ms1 = run_sequence_final(&StateVector::pure(Level::GroundMinusMs1), &probe, &p).unwrap();
        assert!(
            ms1.get(Level::Singlet) > ms0.get(Level::Singlet),
            "m_s=±1 should shelve more: {} vs {}",
            ms1.get(Level::Singlet),
            ms0.get(Level::Singlet)
        );
        let _ = seq;
    }

    #[test]
    fn fluorescence_weights_excited_levels() {
        let p = RateParameters::reference();
        assert_eq!(fluorescence(&StateVector::charge_mix(0.6, 0.9), &p), 0.0);
        let mut e0 = RateParameters::reference();
        e0.alpha_zero = 1.0;
        assert_eq!(fluorescence(&StateVector::pure(Level::ExcitedZero), &e0), 1.0);
        let s = StateVector::from_populations([0.0, 0.0, 0.3, 0.2, 0.0, 0.0, 0.5]).unwrap();
        assert_abs_diff_eq!(
            fluorescence(&s, &p),
            p.alpha_minus * 0.5 + p.alpha_zero * 0.5,
            epsilon = 1e-15
        );
    }

    #[test]
    fn excited_target_with_instant_nv0_decay_matches_ground_target() {
        // with η → ∞ the excited-target variant collapses onto the
        // ground-target variant for charge marginals
        let mut ground = RateParameters::reference();
        ground.eta_inv = 1e-7;
        let mut excited = ground.clone();
        excited.ionization_target = crate::params::IonizationTarget::Excited;
        let seq = PulseSequence::pair(100.0, 158.0, 592.0, 350.0);
        let init = StateVector::ground_minus(0.9);
        let a = run_sequence_final(&init, &seq, &ground).unwrap();
        let b = run_sequence_final(&init, &seq, &excited).unwrap();
        assert_abs_diff_eq!(a.nv_zero(), b.nv_zero(), epsilon = 1e-6);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn conservation_and_positivity(
            kind_idx in 0usize..3,
            power in 0.0_f64..400.0,
            t in 0.0_f64..1000.0,
            n_minus in 0.0_f64..=1.0,
            pol in 0.0_f64..=1.0,
        ) {
            let p = RateParameters::reference();
            let kind = [SegmentKind::Green, SegmentKind::Red, SegmentKind::Dark][kind_idx];
            let l = build_rate_matrix(&p, kind, power).unwrap();
            let s = StateVector::charge_mix(n_minus, pol);
            let out = propagate(&s, &l, t).unwrap();
            prop_assert!((out.total() - 1.0).abs() < 1e-12);
            for &v in out.as_slice() {
                prop_assert!(v > -1e-12, "negative population {v}");
            }
        }

        #[test]
        fn semigroup_property(
            power in 0.0_f64..400.0,
            t1 in 0.0_f64..5.0,
            t2 in 0.0_f64..5.0,
        ) {
            let p = RateParameters::reference();
            let l = build_rate_matrix(&p, SegmentKind::Green, power).unwrap();
            let s = StateVector::charge_mix(0.7, 0.9);
            let two_step = propagate(&propagate(&s, &l, t1).unwrap(), &l, t2).unwrap();
            let one_step = propagate(&s, &l, t1 + t2).unwrap();
            for i in 0..LEVEL_COUNT {
                prop_assert!((two_step.as_slice()[i] - one_step.as_slice()[i]).abs() < 1e-12);
            }
        }
    }
}
