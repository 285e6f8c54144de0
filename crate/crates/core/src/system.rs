use std::fmt;

use crate::{Error, Result};

/// Name of one oscillator mode in a [`CompositeSystem`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModeId(pub &'static str);

impl ModeId {
    /// The driven, damped charger oscillator.
    pub const CHARGER: ModeId = ModeId("A");
    /// The battery oscillator.
    pub const BATTERY: ModeId = ModeId("B");
}

impl fmt::Display for ModeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

/// Ordered list of Fock-truncated modes.
///
/// The first mode is the most significant tensor factor, so a composite basis
/// index is `n_A · d_B + n_B` for the charger ⊗ battery ordering used
/// everywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositeSystem {
    modes: Vec<(ModeId, usize)>,
}

impl CompositeSystem {
    pub fn new(modes: Vec<(ModeId, usize)>) -> Result<Self> {
        if modes.is_empty() {
            return Err(Error::InvalidSystem("no modes".into()));
        }
        for (i, (id, d)) in modes.iter().enumerate() {
            if *d < 2 {
                return Err(Error::InvalidSystem(format!(
                    "mode {id} has truncation {d}, need at least 2"
                )));
            }
            if modes[..i].iter().any(|(other, _)| other == id) {
                return Err(Error::InvalidSystem(format!("duplicate mode id {id}")));
            }
        }
        Ok(Self { modes })
    }

    /// Charger (A) ⊗ battery (B).
    pub fn two_mode(d_charger: usize, d_battery: usize) -> Result<Self> {
        Self::new(vec![(ModeId::CHARGER, d_charger), (ModeId::BATTERY, d_battery)])
    }

    /// A lone oscillator, labelled as the charger mode.
    pub fn single_mode(d: usize) -> Result<Self> {
        Self::new(vec![(ModeId::CHARGER, d)])
    }

    pub fn modes(&self) -> &[(ModeId, usize)] {
        &self.modes
    }

    pub fn n_modes(&self) -> usize {
        self.modes.len()
    }

    pub fn dim(&self) -> usize {
        self.modes.iter().map(|(_, d)| d).product()
    }

    pub fn position(&self, mode: ModeId) -> Result<usize> {
        self.modes
            .iter()
            .position(|(id, _)| *id == mode)
            .ok_or(Error::UnknownMode(mode.0))
    }

    pub fn contains(&self, mode: ModeId) -> bool {
        self.modes.iter().any(|(id, _)| *id == mode)
    }

    pub fn mode_dim(&self, mode: ModeId) -> Result<usize> {
        Ok(self.modes[self.position(mode)?].1)
    }

    /// Product of the dimensions before and after position `k`.
    pub(crate) fn split_at(&self, k: usize) -> (usize, usize, usize) {
        let before = self.modes[..k].iter().map(|(_, d)| d).product();
        let after = self.modes[k + 1..].iter().map(|(_, d)| d).product();
        (before, self.modes[k].1, after)
    }

    /// Fock number of `mode` in composite basis state `index`.
    pub fn occupation(&self, index: usize, mode: ModeId) -> Result<usize> {
        let (_, d, after) = self.split_at(self.position(mode)?);
        Ok((index / after) % d)
    }
}
