//! Green function, potentials and electric field of static sources in the
//! presence of `K_F`.
//!
//! Lengths are in bohr and charges in units of the elementary charge. The
//! `1/(4π)` of the Heaviside-Lorentz form is kept explicitly, so a unit charge
//! at distance `r` has `A₀ = 1/(4πr)` when `K_F = 0`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{KfTensor, MetricSignature};

pub type Vec3 = [f64; 3];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointCharge {
    pub q: f64,
    pub position: Vec3,
}

impl PointCharge {
    pub fn new(q: f64, position: Vec3) -> Self {
        Self { q, position }
    }

    pub fn at_origin(q: f64) -> Self {
        Self::new(q, [0.0; 3])
    }
}

/// One quadrature sample of a charge-current distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceSample {
    pub pos: Vec3,
    /// Four-current `j^μ` at the sample.
    pub j: [f64; 4],
    /// Volume element, bohr³.
    pub w: f64,
}

/// A charge-current density sampled at caller-chosen points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiscretizedSource {
    pub samples: Vec<SourceSample>,
}

impl DiscretizedSource {
    pub fn new(samples: Vec<SourceSample>) -> Result<Self> {
        for (i, s) in samples.iter().enumerate() {
            if !(s.w > 0.0 && s.w.is_finite()) {
                return Err(Error::InvalidSource(format!("sample {i}: weight {} must be positive", s.w)));
            }
            if !s.pos.iter().chain(s.j.iter()).all(|v| v.is_finite()) {
                return Err(Error::InvalidSource(format!("sample {i}: non-finite value")));
            }
        }
        Ok(Self { samples })
    }

    /// Parses and validates the `{"samples": [...]}` form.
    pub fn from_json(text: &str) -> std::result::Result<Self, String> {
        let raw: DiscretizedSource = serde_json::from_str(text).map_err(|e| e.to_string())?;
        Self::new(raw.samples).map_err(|e| e.to_string())
    }

    /// A point charge represented by a single unit-volume sample.
    pub fn point(c: &PointCharge) -> Self {
        Self {
            samples: vec![SourceSample {
                pos: c.position,
                j: [c.q, 0.0, 0.0, 0.0],
                w: 1.0,
            }],
        }
    }
}

/// Potentials and field at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldSample {
    pub a0: f64,
    pub a: Vec3,
    pub e: Vec3,
}

/// Unit direction and length of `x − origin`.
fn separation(x: &Vec3, origin: &Vec3) -> Result<(Vec3, f64)> {
    let d = [x[0] - origin[0], x[1] - origin[1], x[2] - origin[2]];
    let len = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
    if len == 0.0 {
        return Err(Error::CoincidentPoints);
    }
    Ok(([d[0] / len, d[1] / len, d[2] / len], len))
}

/// Static Green function `G_{μλ}(x, x_src)` of the modified Maxwell operator.
pub fn green_point(x: &Vec3, x_src: &Vec3, t: &KfTensor) -> Result<[[f64; 4]; 4]> {
    let (n, len) = separation(x, x_src)?;
    let inv = 1.0 / (4.0 * PI * len);
    let mut g = [[0.0; 4]; 4];
    for (mu, row) in g.iter_mut().enumerate() {
        for (lam, entry) in row.iter_mut().enumerate() {
            let mut trace = 0.0;
            let mut directional = 0.0;
            for j in 1..=3 {
                trace += t.get([mu, j, lam, j]);
                for k in 1..=3 {
                    directional += t.get([mu, j, lam, k]) * n[j - 1] * n[k - 1];
                }
            }
            *entry = (MetricSignature::eta(mu, lam) + trace) * inv - directional * inv;
        }
    }
    Ok(g)
}

/// Modified Coulomb potential `q/(4π|X|)·(1 − κ_{jk}X̂^jX̂^k)`.
pub fn scalar_potential(x: &Vec3, c: &PointCharge, t: &KfTensor) -> Result<f64> {
    let (n, len) = separation(x, &c.position)?;
    let kappa = t.kappa();
    Ok(c.q / (4.0 * PI * len) * (1.0 - kappa.quadratic_form(n)))
}

/// `A_j = q/(4π|X|)·((K_F)_{0kjk} − (K_F)_{jk0l}X̂^kX̂^l)`.
pub fn vector_potential(x: &Vec3, c: &PointCharge, t: &KfTensor) -> Result<Vec3> {
    let (n, len) = separation(x, &c.position)?;
    let pre = c.q / (4.0 * PI * len);
    let mut a = [0.0; 3];
    for (jj, out) in a.iter_mut().enumerate() {
        let j = jj + 1;
        let mut s = 0.0;
        for k in 1..=3 {
            s += t.get([0, k, j, k]);
            for l in 1..=3 {
                s -= t.get([j, k, 0, l]) * n[k - 1] * n[l - 1];
            }
        }
        *out = pre * s;
    }
    Ok(a)
}

/// `E^j = q/(4π|X|²)·(X̂^j + 2κ_{jk}X̂^k − 3κ_{kl}X̂^kX̂^l X̂^j)`; this is `−∇A₀`.
pub fn electric_field(x: &Vec3, c: &PointCharge, t: &KfTensor) -> Result<Vec3> {
    let (n, len) = separation(x, &c.position)?;
    let kappa = t.kappa();
    let kn = kappa.apply(n);
    let nkn = n[0] * kn[0] + n[1] * kn[1] + n[2] * kn[2];
    let pre = c.q / (4.0 * PI * len * len);
    Ok([
        pre * (n[0] + 2.0 * kn[0] - 3.0 * nkn * n[0]),
        pre * (n[1] + 2.0 * kn[1] - 3.0 * nkn * n[1]),
        pre * (n[2] + 2.0 * kn[2] - 3.0 * nkn * n[2]),
    ])
}

/// All three point-charge quantities at `x`.
pub fn field_sample(x: &Vec3, c: &PointCharge, t: &KfTensor) -> Result<FieldSample> {
    Ok(FieldSample {
        a0: scalar_potential(x, c, t)?,
        a: vector_potential(x, c, t)?,
        e: electric_field(x, c, t)?,
    })
}

/// `A_λ(x) = Σ_i w_i G_{μλ}(x, x_i) j^μ_i`.
pub fn potential_from_source(x: &Vec3, s: &DiscretizedSource, t: &KfTensor) -> Result<[f64; 4]> {
    let mut a = [0.0; 4];
    for sample in &s.samples {
        let g = green_point(x, &sample.pos, t)?;
        for (lam, out) in a.iter_mut().enumerate() {
            let acc: f64 = g.iter().zip(&sample.j).map(|(row, j)| row[lam] * j).sum();
            *out += sample.w * acc;
        }
    }
    Ok(a)
}

/// Whether the Green-function route and the modified Coulomb potential agree
/// for point charges.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConsistencyReport {
    /// `Σ_j (K_F)_{0j0j}`
    pub kappa_trace: f64,
    pub consistent: bool,
    /// Coefficient `c` in `A₀(Green) − A₀(Coulomb) = c·q/(4π|X|)`.
    pub potential_offset_coefficient: f64,
}

pub fn consistency_report(t: &KfTensor) -> ConsistencyReport {
    let trace = t.kappa_trace();
    ConsistencyReport {
        kappa_trace: trace,
        consistent: trace == 0.0,
        potential_offset_coefficient: trace,
    }
}
