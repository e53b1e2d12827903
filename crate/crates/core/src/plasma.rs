//! Electron-impact pump rates from plasma conditions.
//!
//! For a Maxwell-Boltzmann electron gas the rate on channel `i` is
//! `r_i = 2 N k_i sqrt(2 kT / (pi M)) exp(-E_i / kT)`, i.e. density times the
//! rate coefficient `k_i`. Energies and `kT` are in eV, the mass in eV/c^2 and
//! cross-sections in cm^2, so rates come out in 1/s for `N` in cm^-3.

use std::f64::consts::PI;
use std::fmt;

use crate::emission::branching_ratio_maxcoh;
use crate::error::{Error, Result};
use crate::model::RateSet;

pub const SPEED_OF_LIGHT_CM_PER_S: f64 = 2.997_924_58e10;
pub const ELECTRON_MASS_EV: f64 = 510_998.950_69;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Channel {
    /// `c <-> a` and `c <-> b`.
    Vis,
    /// `c <-> e`.
    E,
    /// `c <-> d`.
    Uv,
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Channel::Vis => "vis",
            Channel::E => "e",
            Channel::Uv => "uv",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelData {
    pub channel: Channel,
    /// Effective cross-section, cm^2.
    pub cross_section: f64,
    /// Excitation threshold, eV.
    pub energy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlasmaConditions {
    /// Electron density, cm^-3.
    pub n_e: f64,
    /// Electron temperature `kT`, eV.
    pub temperature: f64,
    /// Electron mass, eV/c^2.
    pub mass: f64,
    pub channels: Vec<ChannelData>,
}

impl PlasmaConditions {
    pub fn new(n_e: f64, temperature: f64, mass: f64, channels: Vec<ChannelData>) -> Result<Self> {
        let check = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidPlasma(format!(
                    "{name} = {v} must be positive and finite"
                )))
            }
        };
        check("n_e", n_e)?;
        check("temperature", temperature)?;
        check("mass", mass)?;
        for ch in &channels {
            if !(ch.cross_section.is_finite() && ch.cross_section >= 0.0) {
                return Err(Error::InvalidPlasma(format!(
                    "cross-section of {} is negative",
                    ch.channel
                )));
            }
            if !(ch.energy.is_finite() && ch.energy >= 0.0) {
                return Err(Error::InvalidPlasma(format!(
                    "energy of {} is negative",
                    ch.channel
                )));
            }
        }
        Ok(PlasmaConditions {
            n_e,
            temperature,
            mass,
            channels,
        })
    }

    pub fn with_density(&self, n_e: f64) -> Result<Self> {
        PlasmaConditions::new(n_e, self.temperature, self.mass, self.channels.clone())
    }

    pub fn with_temperature(&self, temperature: f64) -> Result<Self> {
        PlasmaConditions::new(self.n_e, temperature, self.mass, self.channels.clone())
    }

    pub fn channel(&self, channel: Channel) -> Result<&ChannelData> {
        self.channels
            .iter()
            .find(|c| c.channel == channel)
            .ok_or_else(|| Error::UnknownChannel(channel.to_string()))
    }

    /// `sqrt(2 kT / (pi M))` in cm/s.
    pub fn velocity_scale(&self) -> f64 {
        SPEED_OF_LIGHT_CM_PER_S * (2.0 * self.temperature / (PI * self.mass)).sqrt()
    }
}

/// Rate coefficient `k_i = 2 kbar_i sqrt(2 kT/(pi M)) exp(-E_i/kT)`, cm^3/s.
pub fn rate_coefficient(cond: &PlasmaConditions, channel: Channel) -> Result<f64> {
    let ch = cond.channel(channel)?;
    Ok(2.0 * ch.cross_section * cond.velocity_scale() * (-ch.energy / cond.temperature).exp())
}

/// Collisional pump rate `r_i = N k_i`, 1/s.
pub fn collision_rate(cond: &PlasmaConditions, channel: Channel) -> Result<f64> {
    Ok(cond.n_e * rate_coefficient(cond, channel)?)
}

/// Cross-section that yields the rate coefficient `k` at the given conditions.
pub fn cross_section_for_coefficient(k: f64, temperature: f64, mass: f64, energy: f64) -> f64 {
    let v = SPEED_OF_LIGHT_CM_PER_S * (2.0 * temperature / (PI * mass)).sqrt();
    k / (2.0 * v * (-energy / temperature).exp())
}

/// Maximal-coherence branching ratio with thermal pump rates:
/// `gamma_vis (4 / r_e(N, T) + 1 / r_vis(N, T))`.
pub fn thermal_branching_ratio(cond: &PlasmaConditions, gamma_vis: f64) -> Result<f64> {
    let r_vis = collision_rate(cond, Channel::Vis)?;
    let r_e = collision_rate(cond, Channel::E)?;
    let rates = RateSet::simplified(gamma_vis, 0.0, r_vis, r_e, 0.0, 1.0)?;
    branching_ratio_maxcoh(&rates)
}

/// Symmetric rate set with every pump rate taken from the plasma conditions.
/// A missing `uv` channel gives `r_uv = 0`.
pub fn rates_from_plasma(
    cond: &PlasmaConditions,
    gamma_vis: f64,
    gamma_uv: f64,
    p: f64,
) -> Result<RateSet> {
    let r_uv = match cond.channel(Channel::Uv) {
        Ok(_) => collision_rate(cond, Channel::Uv)?,
        Err(_) => 0.0,
    };
    RateSet::simplified(
        gamma_vis,
        gamma_uv,
        collision_rate(cond, Channel::Vis)?,
        collision_rate(cond, Channel::E)?,
        r_uv,
        p,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn conditions(n_e: f64, t: f64, e_vis: f64, e_e: f64) -> PlasmaConditions {
        PlasmaConditions::new(
            n_e,
            t,
            ELECTRON_MASS_EV,
            vec![
                ChannelData {
                    channel: Channel::Vis,
                    cross_section: 1e-16,
                    energy: e_vis,
                },
                ChannelData {
                    channel: Channel::E,
                    cross_section: 4e-16,
                    energy: e_e,
                },
            ],
        )
        .unwrap()
    }

    #[test]
    fn zero_threshold() {
        let c = conditions(1e18, 5.0, 0.0, 0.0);
        let r = collision_rate(&c, Channel::Vis).unwrap();
        let expected = 2.0 * 1e18 * 1e-16 * c.velocity_scale();
        assert!((r - expected).abs() / expected < 1e-15);
    }

    #[test]
    fn factorization_and_linearity() {
        let c = conditions(3e18, 7.0, 10.0, 20.0);
        let k = rate_coefficient(&c, Channel::E).unwrap();
        let r = collision_rate(&c, Channel::E).unwrap();
        assert!((r / c.n_e - k).abs() / k < 1e-15);
        let r2 = collision_rate(&c.with_density(6e18).unwrap(), Channel::E).unwrap();
        assert!((r2 / r - 2.0).abs() < 1e-15);
    }

    #[test]
    fn frozen_channel() {
        let c = conditions(1e18, 1.0, 1e4, 0.0);
        assert_eq!(rate_coefficient(&c, Channel::Vis).unwrap(), 0.0);
    }

    #[test]
    fn unknown_channel() {
        let c = conditions(1e18, 1.0, 0.0, 0.0);
        assert!(matches!(
            collision_rate(&c, Channel::Uv),
            Err(Error::UnknownChannel(_))
        ));
    }

    #[test]
    fn invalid_conditions() {
        assert!(PlasmaConditions::new(0.0, 1.0, 1.0, vec![]).is_err());
        assert!(PlasmaConditions::new(1.0, -1.0, 1.0, vec![]).is_err());
        assert!(PlasmaConditions::new(1.0, 1.0, 0.0, vec![]).is_err());
        let neg = ChannelData {
            channel: Channel::Vis,
            cross_section: -1.0,
            energy: 0.0,
        };
        assert!(PlasmaConditions::new(1.0, 1.0, 1.0, vec![neg]).is_err());
    }

    #[test]
    fn recipe_coefficients_reproduced() {
        for (k, e) in [(0.3, 3.0), (0.1, 12.0), (0.001, 30.0)] {
            let kbar = cross_section_for_coefficient(k, 5.0, ELECTRON_MASS_EV, e);
            let c = PlasmaConditions::new(
                1.0,
                5.0,
                ELECTRON_MASS_EV,
                vec![ChannelData {
                    channel: Channel::Vis,
                    cross_section: kbar,
                    energy: e,
                }],
            )
            .unwrap();
            let got = rate_coefficient(&c, Channel::Vis).unwrap();
            assert!((got - k).abs() / k < 1e-14);
        }
    }

    #[test]
    fn thermal_ratio() {
        // equal thresholds at zero, kbar_e = 4 kbar_vis: R = 2 gamma / r_vis
        let c = conditions(1e18, 5.0, 0.0, 0.0);
        let r_vis = collision_rate(&c, Channel::Vis).unwrap();
        let r = thermal_branching_ratio(&c, 1e8).unwrap();
        assert!((r - 2.0 * 1e8 / r_vis).abs() / r < 1e-14);

        let c = conditions(1e18, 5.0, 12.0, 15.0);
        let r1 = thermal_branching_ratio(&c, 1e8).unwrap();
        let r2 = thermal_branching_ratio(&c.with_density(1e19).unwrap(), 1e8).unwrap();
        assert!((r1 / r2 - 10.0).abs() < 1e-12);
        let hot = thermal_branching_ratio(&c.with_temperature(9.0).unwrap(), 1e8).unwrap();
        assert!(hot < r1);
    }

    #[test]
    fn monotone_in_temperature() {
        let base = conditions(1e18, 1.0, 10.0, 25.0);
        let mut prev = 0.0;
        for t in [1.0, 2.0, 4.0, 8.0, 16.0, 20.0] {
            let r = collision_rate(&base.with_temperature(t).unwrap(), Channel::Vis).unwrap();
            assert!(r > prev);
            prev = r;
        }
    }
}
