//! Helium ground state with an unscreened `1s²` product wavefunction.
//!
//! The two nuclear terms are evaluated in closed form. The electron-electron
//! term carries the direction `û = (r₁ − r₂)/|r₁ − r₂|` and is integrated by
//! Monte Carlo over the exact `1s²` density.

use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{mc_integrate, MCEstimate};
use crate::perturbation::{Method, ShiftResult, ShiftTerm};
use crate::tensor::{KappaMatrix, KfTensor};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HeliumConfig {
    pub z: f64,
    pub mc_samples: u64,
    pub seed: u64,
    /// Evaluate every draw with both electron labels and average.
    pub label_swap: bool,
}

impl Default for HeliumConfig {
    fn default() -> Self {
        Self {
            z: 2.0,
            mc_samples: 1_000_000,
            seed: 20_210_726,
            label_swap: true,
        }
    }
}

impl HeliumConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.z > 0.0 && self.z.is_finite()) {
            return Err(Error::InvalidConfig(format!("nuclear charge {} must be positive", self.z)));
        }
        if self.mc_samples < 2 {
            return Err(Error::InvalidConfig("mc_samples must be at least 2".into()));
        }
        Ok(())
    }
}

/// Positions of both electrons, bohr.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElectronPair {
    pub r1: [f64; 3],
    pub r2: [f64; 3],
}

impl ElectronPair {
    pub fn swapped(&self) -> Self {
        Self { r1: self.r2, r2: self.r1 }
    }

    /// `(û, |r₁ − r₂|)`
    pub fn separation(&self) -> ([f64; 3], f64) {
        let d = [self.r1[0] - self.r2[0], self.r1[1] - self.r2[1], self.r1[2] - self.r2[2]];
        let len = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
        ([d[0] / len, d[1] / len, d[2] / len], len)
    }
}

/// One electron from the hydrogenic 1s density: `r ~ Gamma(3, 1/(2Z))`,
/// direction uniform on the sphere.
pub fn sample_1s(rng: &mut ChaCha8Rng, z: f64) -> [f64; 3] {
    // 1 − U keeps the argument of ln in (0, 1]
    let u: f64 = (1.0 - rng.random::<f64>()) * (1.0 - rng.random::<f64>()) * (1.0 - rng.random::<f64>());
    let r = -u.ln() / (2.0 * z);
    let cos_t = 2.0 * rng.random::<f64>() - 1.0;
    let phi = 2.0 * PI * rng.random::<f64>();
    let sin_t = (1.0 - cos_t * cos_t).max(0.0).sqrt();
    [r * sin_t * phi.cos(), r * sin_t * phi.sin(), r * cos_t]
}

pub fn sample_pair(rng: &mut ChaCha8Rng, z: f64) -> ElectronPair {
    ElectronPair {
        r1: sample_1s(rng, z),
        r2: sample_1s(rng, z),
    }
}

/// Averages `f` over a pair and its label-swapped image when enabled.
fn symmetrized<F: Fn(&ElectronPair) -> f64>(f: F, swap: bool) -> impl Fn(&ElectronPair) -> f64 {
    move |p| if swap { 0.5 * (f(p) + f(&p.swapped())) } else { f(p) }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EeIntegral {
    pub estimate: MCEstimate,
    /// `5Z/8`
    pub analytic: f64,
}

/// `⟨1/r₁₂⟩` over the `1s²` density.
pub fn ee_coulomb_integral(cfg: &HeliumConfig) -> Result<EeIntegral> {
    cfg.validate()?;
    let z = cfg.z;
    let estimate = mc_integrate(
        |rng| sample_pair(rng, z),
        symmetrized(|p: &ElectronPair| 1.0 / p.separation().1, cfg.label_swap),
        cfg.mc_samples,
        cfg.seed,
    );
    Ok(EeIntegral {
        estimate,
        analytic: 5.0 * z / 8.0,
    })
}

/// Monte Carlo estimate of `⟨(1/r₁₂)·κ_{jk}û^jû^k⟩`.
pub fn ee_kappa_term(cfg: &HeliumConfig, kappa: &KappaMatrix) -> Result<MCEstimate> {
    cfg.validate()?;
    let z = cfg.z;
    let kappa = *kappa;
    Ok(mc_integrate(
        |rng| sample_pair(rng, z),
        symmetrized(
            move |p: &ElectronPair| {
                let (u, len) = p.separation();
                kappa.quadratic_form(u) / len
            },
            cfg.label_swap,
        ),
        cfg.mc_samples,
        cfg.seed,
    ))
}

/// First-order shift of the helium ground state:
/// `Σ_i ⟨(Z/r_i)κ_{jk}x̂_i^jx̂_i^k⟩ − ⟨(1/r₁₂)κ_{jk}û^jû^k⟩`.
///
/// Fails with `MonteCarloNotConverged` when the standard error exceeds
/// `1e-3` of the shift. For tensors whose shift is (close to) zero, the budget
/// is taken relative to `(5Z/8)·‖κ‖_F`, the natural size of the e-e term.
pub fn helium_ground_shift(cfg: &HeliumConfig, t: &KfTensor) -> Result<ShiftResult> {
    cfg.validate()?;
    let z = cfg.z;
    let kappa = t.kappa();
    // ⟨1/r⟩_{1s} = Z and the s-state average of κ_{jk}x̂^jx̂^k is tr κ / 3
    let per_electron = z * z * (kappa.trace() / 3.0);
    let ee = if kappa == KappaMatrix::default() {
        MCEstimate {
            value: 0.0,
            std_error: 0.0,
            samples: 0,
            seed: cfg.seed,
            chunk_size: crate::numerics::MC_CHUNK,
        }
    } else {
        ee_kappa_term(cfg, &kappa)?
    };
    let value = 2.0 * per_electron - ee.value;

    let frobenius = kappa.rows().iter().flatten().map(|v| v * v).sum::<f64>().sqrt();
    let budget = 1e-3 * value.abs().max(5.0 * z / 8.0 * frobenius);
    if ee.std_error > budget {
        return Err(Error::MonteCarloNotConverged {
            std_error: ee.std_error,
            budget,
        });
    }

    let reference = t.uniform_value().map(|k| 0.75 * k);
    let mut result = ShiftResult::new(
        value,
        vec![
            ShiftTerm {
                name: "nucleus_electron_1".into(),
                value_hartree: per_electron,
            },
            ShiftTerm {
                name: "nucleus_electron_2".into(),
                value_hartree: per_electron,
            },
            ShiftTerm {
                name: "electron_electron".into(),
                value_hartree: -ee.value,
            },
        ],
        Method::MonteCarlo,
        ee.std_error,
        reference,
    );
    result.notes.push(format!(
        "electron-electron term: {} samples, seed {}",
        ee.samples, ee.seed
    ));
    Ok(result)
}
