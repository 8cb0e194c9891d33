//! Pulse sequences: ordered illumination, dark and microwave segments.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SegmentKind {
    Green,
    Red,
    Dark,
    /// Instantaneous microwave π pulse on the NV- spin; duration and power
    /// are ignored.
    MwPi,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub kind: SegmentKind,
    /// Segment duration in ps (ignored for `MwPi`).
    #[serde(default)]
    pub duration_ps: f64,
    /// Average optical power in µW at 1 MHz repetition (0 for dark/mw).
    #[serde(default)]
    pub power_uw: f64,
}

impl Segment {
    pub fn green(duration_ps: f64, power_uw: f64) -> Self {
        Segment { kind: SegmentKind::Green, duration_ps, power_uw }
    }

    pub fn red(duration_ps: f64, power_uw: f64) -> Self {
        Segment { kind: SegmentKind::Red, duration_ps, power_uw }
    }

    pub fn dark(duration_ps: f64) -> Self {
        Segment { kind: SegmentKind::Dark, duration_ps, power_uw: 0.0 }
    }

    pub fn mw_pi() -> Self {
        Segment { kind: SegmentKind::MwPi, duration_ps: 0.0, power_uw: 0.0 }
    }

    pub fn duration_ns(&self) -> f64 {
        match self.kind {
            SegmentKind::MwPi => 0.0,
            _ => self.duration_ps * 1e-3,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.duration_ps.is_finite() || self.duration_ps < 0.0 {
            return Err(Error::InvalidSequence(format!(
                "segment duration must be >= 0 ps, got {}",
                self.duration_ps
            )));
        }
        if !self.power_uw.is_finite() || self.power_uw < 0.0 {
            return Err(Error::InvalidSequence(format!(
                "segment power must be >= 0 µW, got {}",
                self.power_uw
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PulseSequence {
    pub segments: Vec<Segment>,
}

impl PulseSequence {
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        let seq = PulseSequence { segments };
        seq.validate()?;
        Ok(seq)
    }

    /// Green pulse, dark delay, red pulse — the standard pulse pair.
    pub fn pair(
        pulse_width_ps: f64,
        green_uw: f64,
        delay_ps: f64,
        red_uw: f64,
    ) -> Self {
        PulseSequence {
            segments: vec![
                Segment::green(pulse_width_ps, green_uw),
                Segment::dark(delay_ps),
                Segment::red(pulse_width_ps, red_uw),
            ],
        }
    }

    pub fn validate(&self) -> Result<()> {
        for seg in &self.segments {
            seg.validate()?;
        }
        Ok(())
    }

    pub fn total_duration_ns(&self) -> f64 {
        self.segments.iter().map(|s| s.duration_ns()).sum()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let seq: PulseSequence = serde_json::from_str(text)?;
        seq.validate()?;
        Ok(seq)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_structure() {
        let seq = PulseSequence::pair(100.0, 95.0, 592.0, 82.0);
        assert_eq!(seq.segments.len(), 3);
        assert!((seq.total_duration_ns() - 0.792).abs() < 1e-12);
    }

    #[test]
    fn negative_duration_rejected() {
        let seq = PulseSequence {
            segments: vec![Segment::dark(-1.0)],
        };
        assert!(seq.validate().is_err());
    }

    #[test]
    fn json_round_trip() {
        let seq = PulseSequence::pair(100.0, 95.0, 592.0, 82.0);
        let text = seq.to_json().unwrap();
        assert_eq!(PulseSequence::from_json(&text).unwrap(), seq);
    }

    #[test]
    fn mw_duration_ignored() {
        let mut seg = Segment::mw_pi();
        seg.duration_ps = 50.0;
        assert_eq!(seg.duration_ns(), 0.0);
    }
}
