//! Coefficient bounds from measurement accuracy.
//!
//! Every shift is linear in `K`, so the slope `dΔE/dK` is read off a single
//! evaluation at a probe value. The probe is a power of two, which makes
//! `shift(K_probe)/K_probe` bit-identical to the shift at `K = 1`.

use serde::Serialize;

use crate::config::Constants;
use crate::error::{Error, Result};
use crate::helium::{helium_ground_shift, HeliumConfig};
use crate::hydrogenic::{HydrogenicState, QuantumNumbers};
use crate::perturbation::{hydrogen_shift_diagonal, permanent_stark_shift, spin_orbit_shift, ShiftResult};
use crate::tensor::KfTensor;

/// Uniform coefficient used to measure slopes.
pub const PROBE_K: f64 = 0.0625;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum System {
    Hydrogen,
    PermanentStark,
    SpinOrbit,
    Helium,
}

impl System {
    /// Row label of the published bound table.
    pub fn label(self) -> &'static str {
        match self {
            System::Hydrogen => "Hydrogen atom",
            System::Helium => "Helium atom",
            System::PermanentStark => "Stark effect",
            System::SpinOrbit => "spin-orbit interaction",
        }
    }

    /// Published upper bound for this system.
    pub fn paper_bound(self) -> f64 {
        match self {
            System::Hydrogen => 2.8e-17,
            System::Helium => 3.8e-17,
            System::PermanentStark => 4.1e-18,
            System::SpinOrbit => 8.7e-13,
        }
    }
}

/// Which slope to invert.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    #[default]
    Computed,
    ClosedForm,
}

/// A system together with the level whose shift is bounded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SystemState {
    Hydrogen(HydrogenicState),
    PermanentStark(HydrogenicState),
    SpinOrbit(HydrogenicState),
    Helium(HeliumConfig),
}

impl SystemState {
    pub fn system(&self) -> System {
        match self {
            SystemState::Hydrogen(_) => System::Hydrogen,
            SystemState::PermanentStark(_) => System::PermanentStark,
            SystemState::SpinOrbit(_) => System::SpinOrbit,
            SystemState::Helium(_) => System::Helium,
        }
    }

    /// Default level for each system: ground states, and `2p_{3/2}` for spin-orbit.
    pub fn default_for(system: System, helium: HeliumConfig) -> Self {
        let ground = HydrogenicState::nlm(1.0, 1, 0, 0).expect("1s is valid");
        match system {
            System::Hydrogen => SystemState::Hydrogen(ground),
            System::PermanentStark => SystemState::PermanentStark(ground),
            System::SpinOrbit => {
                let qn = QuantumNumbers::new(2, 1, 0)
                    .and_then(|q| q.with_twice_j(3))
                    .expect("2p3/2 is valid");
                SystemState::SpinOrbit(HydrogenicState::new(1.0, qn).expect("Z = 1 is valid"))
            }
            System::Helium => SystemState::Helium(helium),
        }
    }

    pub fn shift(&self, t: &KfTensor) -> Result<ShiftResult> {
        match self {
            SystemState::Hydrogen(s) => hydrogen_shift_diagonal(s, t),
            SystemState::PermanentStark(s) => permanent_stark_shift(s, t),
            SystemState::SpinOrbit(s) => spin_orbit_shift(s, t),
            SystemState::Helium(cfg) => helium_ground_shift(cfg, t),
        }
    }

    fn describe(&self) -> String {
        match self {
            SystemState::Hydrogen(s) | SystemState::PermanentStark(s) | SystemState::SpinOrbit(s) => {
                let mut d = format!("Z={} n={} l={} m={}", s.z, s.qn.n, s.qn.l, s.qn.m);
                if let Some(tj) = s.qn.twice_j {
                    d.push_str(&format!(" j={tj}/2"));
                }
                d
            }
            SystemState::Helium(c) => format!("Z={} 1s^2", c.z),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AccuracyRecord {
    pub value_ev: f64,
    pub source: String,
}

impl AccuracyRecord {
    pub fn new(value_ev: f64, source: impl Into<String>) -> Result<Self> {
        if !(value_ev > 0.0 && value_ev.is_finite()) {
            return Err(Error::InvalidAccuracy(value_ev));
        }
        Ok(Self {
            value_ev,
            source: source.into(),
        })
    }

    /// Absolute accuracy of a single-level energy measurement.
    pub fn hydrogen_maser(value_ev: f64) -> Result<Self> {
        Self::new(value_ev, "hydrogen maser frequency standard")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundResult {
    pub system: System,
    pub label: String,
    pub state: String,
    pub model: Model,
    pub slope_ev_per_k: f64,
    pub accuracy_ev: f64,
    pub bound: f64,
    pub paper_bound: f64,
    pub ratio: f64,
}

/// `K ≤ accuracy / |dΔE/dK|` for one system and level.
pub fn bound_from_accuracy(
    state: &SystemState,
    acc: &AccuracyRecord,
    model: Model,
    constants: &Constants,
) -> Result<BoundResult> {
    bound_with_probe(state, acc, model, constants, PROBE_K)
}

/// As [`bound_from_accuracy`], measuring the slope at uniform `K = probe`.
pub fn bound_with_probe(
    state: &SystemState,
    acc: &AccuracyRecord,
    model: Model,
    constants: &Constants,
    probe: f64,
) -> Result<BoundResult> {
    if !(acc.value_ev > 0.0 && acc.value_ev.is_finite()) {
        return Err(Error::InvalidAccuracy(acc.value_ev));
    }
    if probe == 0.0 {
        return Err(Error::ZeroSlope("probe coefficient is zero".into()));
    }
    let shift = state.shift(&KfTensor::uniform(probe)?)?;
    let at_probe = match model {
        Model::Computed => shift.value_hartree,
        Model::ClosedForm => shift.paper_formula_value_hartree.unwrap_or(0.0),
    };
    let slope_ev_per_k = (at_probe / probe).abs() * constants.hartree_ev;
    let system = state.system();
    if slope_ev_per_k == 0.0 {
        return Err(Error::ZeroSlope(format!("{} at {}", system.label(), state.describe())));
    }
    let bound = acc.value_ev / slope_ev_per_k;
    let paper_bound = system.paper_bound();
    Ok(BoundResult {
        system,
        label: system.label().to_owned(),
        state: state.describe(),
        model,
        slope_ev_per_k,
        accuracy_ev: acc.value_ev,
        bound,
        paper_bound,
        ratio: bound / paper_bound,
    })
}

/// Rows in the order hydrogen, permanent Stark, spin-orbit, helium.
pub const TABLE_ORDER: [System; 4] = [
    System::Hydrogen,
    System::PermanentStark,
    System::SpinOrbit,
    System::Helium,
];

/// One bound per system at its default level.
pub fn bound_table(
    acc: &AccuracyRecord,
    model: Model,
    constants: &Constants,
    helium: HeliumConfig,
) -> Result<Vec<BoundResult>> {
    TABLE_ORDER
        .iter()
        .map(|&sys| bound_from_accuracy(&SystemState::default_for(sys, helium), acc, model, constants))
        .collect()
}

/// Plain-text rendering with the published row labels.
pub fn format_table(rows: &[BoundResult]) -> String {
    let label_w = rows.iter().map(|r| r.label.len()).max().unwrap_or(0).max("Quantum system or effect".len());
    let mut out = format!(
        "{:<label_w$}  {:>14}  {:>12}  {:>12}  {:>12}\n",
        "Quantum system or effect", "slope [eV/K]", "bound", "published", "ratio"
    );
    for r in rows {
        out.push_str(&format!(
            "{:<label_w$}  {:>14.6e}  {:>12.4e}  {:>12}  {:>12.4e}\n",
            r.label,
            r.slope_ev_per_k,
            r.bound,
            format!("{:e}", r.paper_bound),
            r.ratio
        ));
    }
    out
}
