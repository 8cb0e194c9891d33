//! Population state over the seven kinetic levels.

use nalgebra::SVector;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const LEVEL_COUNT: usize = 7;

/// The seven kinetic levels: NV- ground/excited split by spin, the NV-
/// metastable singlet, and NV0 ground/excited.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    GroundMinusMs0 = 0,
    GroundMinusMs1 = 1,
    ExcitedMinusMs0 = 2,
    ExcitedMinusMs1 = 3,
    Singlet = 4,
    GroundZero = 5,
    ExcitedZero = 6,
}

impl Level {
    pub const ALL: [Level; LEVEL_COUNT] = [
        Level::GroundMinusMs0,
        Level::GroundMinusMs1,
        Level::ExcitedMinusMs0,
        Level::ExcitedMinusMs1,
        Level::Singlet,
        Level::GroundZero,
        Level::ExcitedZero,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Level> {
        Level::ALL.get(i).copied()
    }

    /// True for NV- levels (including the singlet).
    pub fn is_nv_minus(self) -> bool {
        !matches!(self, Level::GroundZero | Level::ExcitedZero)
    }

    /// Level occupied after a microwave π pulse (swaps the spin label
    /// within the NV- ground and excited manifolds).
    pub fn after_mw_pi(self) -> Level {
        match self {
            Level::GroundMinusMs0 => Level::GroundMinusMs1,
            Level::GroundMinusMs1 => Level::GroundMinusMs0,
            Level::ExcitedMinusMs0 => Level::ExcitedMinusMs1,
            Level::ExcitedMinusMs1 => Level::ExcitedMinusMs0,
            other => other,
        }
    }
}

/// Probability distribution over the seven levels.
///
/// Components are probabilities in [0, 1] summing to 1 within 1e-12.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector(pub(crate) SVector<f64, LEVEL_COUNT>);

pub const NORMALIZATION_TOL: f64 = 1e-12;

impl StateVector {
    pub fn from_populations(p: [f64; LEVEL_COUNT]) -> Result<Self> {
        let v = SVector::from(p);
        let s = Self(v);
        s.check()?;
        Ok(s)
    }

    pub(crate) fn from_vector_unchecked(v: SVector<f64, LEVEL_COUNT>) -> Self {
        Self(v)
    }

    /// All population in a single level.
    pub fn pure(level: Level) -> Self {
        let mut v = SVector::zeros();
        v[level.index()] = 1.0;
        Self(v)
    }

    /// NV- ground state with m_s=0 fraction `polarization`.
    pub fn ground_minus(polarization: f64) -> Self {
        let mut v = SVector::zeros();
        v[Level::GroundMinusMs0.index()] = polarization;
        v[Level::GroundMinusMs1.index()] = 1.0 - polarization;
        Self(v)
    }

    /// NV0 ground state.
    pub fn ground_zero() -> Self {
        Self::pure(Level::GroundZero)
    }

    /// Ground-state charge mixture: NV- fraction `n_minus` with the given
    /// spin polarization, remainder in the NV0 ground state.
    pub fn charge_mix(n_minus: f64, polarization: f64) -> Self {
        let mut v = SVector::zeros();
        v[Level::GroundMinusMs0.index()] = n_minus * polarization;
        v[Level::GroundMinusMs1.index()] = n_minus * (1.0 - polarization);
        v[Level::GroundZero.index()] = 1.0 - n_minus;
        Self(v)
    }

    pub fn check(&self) -> Result<()> {
        for (i, &p) in self.0.iter().enumerate() {
            if !p.is_finite() || !(-NORMALIZATION_TOL..=1.0 + NORMALIZATION_TOL).contains(&p) {
                return Err(Error::InvalidState(format!(
                    "population {i} out of [0, 1]: {p}"
                )));
            }
        }
        let sum: f64 = self.0.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidState(format!(
                "populations sum to {sum}, expected 1"
            )));
        }
        Ok(())
    }

    pub fn get(&self, level: Level) -> f64 {
        self.0[level.index()]
    }

    pub fn as_slice(&self) -> &[f64] {
        self.0.as_slice()
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Total NV- population (ground + excited + singlet).
    pub fn nv_minus(&self) -> f64 {
        self.get(Level::GroundMinusMs0)
            + self.get(Level::GroundMinusMs1)
            + self.get(Level::ExcitedMinusMs0)
            + self.get(Level::ExcitedMinusMs1)
            + self.get(Level::Singlet)
    }

    /// Total NV0 population.
    pub fn nv_zero(&self) -> f64 {
        self.get(Level::GroundZero) + self.get(Level::ExcitedZero)
    }

    /// NV- excited population over both spin projections.
    pub fn excited_minus(&self) -> f64 {
        self.get(Level::ExcitedMinusMs0) + self.get(Level::ExcitedMinusMs1)
    }

    /// Population with m_s=0 character (NV- ground plus excited).
    pub fn ms0(&self) -> f64 {
        self.get(Level::GroundMinusMs0) + self.get(Level::ExcitedMinusMs0)
    }

    pub fn ms1(&self) -> f64 {
        self.get(Level::GroundMinusMs1) + self.get(Level::ExcitedMinusMs1)
    }

    /// State after a microwave π pulse: swaps m_s=0 and m_s=±1 populations
    /// within both the NV- ground and excited manifolds.
    pub fn mw_pi(&self) -> Self {
        let mut v = self.0;
        v.swap_rows(Level::GroundMinusMs0.index(), Level::GroundMinusMs1.index());
        v.swap_rows(Level::ExcitedMinusMs0.index(), Level::ExcitedMinusMs1.index());
        Self(v)
    }
}
