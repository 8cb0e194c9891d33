//! Power-dependent rate matrices (generators) for the level system.
//!
//! A generator `L` defines the linear master equation `dp/dt = L p` with
//! time in ns and rates in GHz. Columns of `L` sum to zero, so the total
//! population is conserved exactly.
//!
//! Green illumination drives NV- excitation (`G`, spin-preserving),
//! ionization out of the NV- excited state (`a G`, spin-independent),
//! recombination out of the NV0 ground state (`b G`) and NV0 excitation
//! (`c G`). Red illumination drives stimulated emission (`R`,
//! spin-preserving), ionization (`d R`), recombination (`e R`), NV0
//! stimulated emission (`f R`) and singlet ionization (`I_s`).
//! Spontaneous decay, spin-dependent shelving, deshelving and NV0 decay
//! are present in every segment, illuminated or dark.
//!
//! Recombination populates the two NV- ground spin states with equal
//! weight (the data do not constrain the spin distribution after an
//! ionization/recombination cycle); deshelving populates the m_s=0
//! ground state only.

use nalgebra::{SMatrix, SVector};

use crate::error::{Error, Result};
use crate::params::{IonizationTarget, RateParameters};
use crate::sequence::SegmentKind;
use crate::state::{Level, LEVEL_COUNT};

pub type Generator = SMatrix<f64, LEVEL_COUNT, LEVEL_COUNT>;

/// Four-level restriction (no singlet, no spin split): `[g-, e-, g0, e0]`.
pub type FourLevelGenerator = SMatrix<f64, 4, 4>;
pub type FourLevelState = SVector<f64, 4>;

/// Add a transition `from -> to` at `rate`, keeping columns zero-sum.
fn flow<const N: usize>(m: &mut SMatrix<f64, N, N>, from: usize, to: usize, rate: f64) {
    m[(to, from)] += rate;
    m[(from, from)] -= rate;
}

/// Build the 7x7 generator for one segment kind at the given average power.
pub fn build_rate_matrix(
    params: &RateParameters,
    kind: SegmentKind,
    power_uw: f64,
) -> Result<Generator> {
    params.validate()?;
    if !power_uw.is_finite() || power_uw < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "power must be >= 0 µW, got {power_uw}"
        )));
    }
    if kind == SegmentKind::MwPi {
        return Err(Error::InvalidSequence(
            "microwave π pulses are instantaneous and have no generator".into(),
        ));
    }

    let g_m0 = Level::GroundMinusMs0.index();
    let g_m1 = Level::GroundMinusMs1.index();
    let e_m0 = Level::ExcitedMinusMs0.index();
    let e_m1 = Level::ExcitedMinusMs1.index();
    let s = Level::Singlet.index();
    let g_0 = Level::GroundZero.index();
    let e_0 = Level::ExcitedZero.index();
    let ion_target = match params.ionization_target {
        IonizationTarget::Ground => g_0,
        IonizationTarget::Excited => e_0,
    };

    let mut l = Generator::zeros();

    // relaxation, present in every segment
    flow(&mut l, e_m0, g_m0, params.radiative0());
    flow(&mut l, e_m0, s, params.shelving0());
    flow(&mut l, e_m1, g_m1, params.radiative1());
    flow(&mut l, e_m1, s, params.shelving1());
    flow(&mut l, s, g_m0, params.deshelving());
    flow(&mut l, e_0, g_0, params.eta());

    match kind {
        SegmentKind::Green => {
            let g = params.green_rate(power_uw);
            flow(&mut l, g_m0, e_m0, g);
            flow(&mut l, g_m1, e_m1, g);
            flow(&mut l, e_m0, ion_target, params.a * g);
            flow(&mut l, e_m1, ion_target, params.a * g);
            flow(&mut l, g_0, g_m0, 0.5 * params.b * g);
            flow(&mut l, g_0, g_m1, 0.5 * params.b * g);
            flow(&mut l, g_0, e_0, params.c * g);
        }
        SegmentKind::Red => {
            let r = params.red_rate(power_uw);
            flow(&mut l, e_m0, g_m0, r);
            flow(&mut l, e_m1, g_m1, r);
            flow(&mut l, e_m0, ion_target, params.d * r);
            flow(&mut l, e_m1, ion_target, params.d * r);
            flow(&mut l, g_0, g_m0, 0.5 * params.e * r);
            flow(&mut l, g_0, g_m1, 0.5 * params.e * r);
            flow(&mut l, e_0, g_0, params.f * r);
            flow(&mut l, s, ion_target, params.singlet_ionization_rate(power_uw));
        }
        SegmentKind::Dark => {}
        SegmentKind::MwPi => unreachable!(),
    }

    Ok(l)
}

/// Build the 4x4 four-level generator (`[g-, e-, g0, e0]`), the reduced
/// model used for single-pulse and pulse-pair work where the singlet and
/// spin structure are irrelevant. The NV- decay uses the m_s=0 lifetime.
pub fn build_rate_matrix_four(
    params: &RateParameters,
    kind: SegmentKind,
    power_uw: f64,
) -> Result<FourLevelGenerator> {
    params.validate()?;
    if !power_uw.is_finite() || power_uw < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "power must be >= 0 µW, got {power_uw}"
        )));
    }
    let (g_m, e_m, g_0, e_0) = (0, 1, 2, 3);
    let ion_target = match params.ionization_target {
        IonizationTarget::Ground => g_0,
        IonizationTarget::Excited => e_0,
    };

    let mut l = FourLevelGenerator::zeros();
    flow(&mut l, e_m, g_m, params.gamma0());
    flow(&mut l, e_0, g_0, params.eta());

    match kind {
        SegmentKind::Green => {
            let g = params.green_rate(power_uw);
            flow(&mut l, g_m, e_m, g);
            flow(&mut l, e_m, ion_target, params.a * g);
            flow(&mut l, g_0, g_m, params.b * g);
            flow(&mut l, g_0, e_0, params.c * g);
        }
        SegmentKind::Red => {
            let r = params.red_rate(power_uw);
            flow(&mut l, e_m, g_m, r);
            flow(&mut l, e_m, ion_target, params.d * r);
            flow(&mut l, g_0, g_m, params.e * r);
            flow(&mut l, e_0, g_0, params.f * r);
        }
        SegmentKind::Dark => {}
        SegmentKind::MwPi => {
            return Err(Error::InvalidSequence(
                "microwave π pulses are instantaneous and have no generator".into(),
            ))
        }
    }

    Ok(l)
}

/// Remove the NV0 -> NV- return flows (recombination) from a 7x7
/// generator, making the NV0 charge state absorbing. Used to compute
/// never-ionized pathway probabilities.
pub fn make_nv0_absorbing(l: &mut Generator) {
    let g_0 = Level::GroundZero.index();
    for to in [Level::GroundMinusMs0.index(), Level::GroundMinusMs1.index()] {
        let rate = l[(to, g_0)];
        l[(to, g_0)] = 0.0;
        l[(g_0, g_0)] += rate;
    }
}

/// Four-level counterpart of [`make_nv0_absorbing`].
pub fn make_nv0_absorbing_four(l: &mut FourLevelGenerator) {
    let (g_m, g_0) = (0, 2);
    let rate = l[(g_m, g_0)];
    l[(g_m, g_0)] = 0.0;
    l[(g_0, g_0)] += rate;
}
