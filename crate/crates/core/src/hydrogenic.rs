//! Hydrogen-like bound states in atomic units (electron mass 1, no reduced-mass
//! correction) and the matrix elements the perturbation module is built from.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::gauss_laguerre;
use crate::special::{assoc_laguerre, factorial, ylm_matrix_element};
use crate::tensor::KappaMatrix;

/// `(n, l, m)` plus an optional total angular momentum stored as `2j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuantumNumbers {
    pub n: u32,
    pub l: u32,
    pub m: i32,
    pub twice_j: Option<u32>,
}

impl QuantumNumbers {
    pub fn new(n: u32, l: u32, m: i32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidQuantumNumbers("n must be at least 1".into()));
        }
        if l >= n {
            return Err(Error::InvalidQuantumNumbers(format!("l = {l} must be below n = {n}")));
        }
        if m.unsigned_abs() > l {
            return Err(Error::InvalidQuantumNumbers(format!("|m| = {} exceeds l = {l}", m.abs())));
        }
        Ok(Self { n, l, m, twice_j: None })
    }

    /// Attaches `j = twice_j / 2`, which must be `l ± 1/2` and positive.
    pub fn with_twice_j(self, twice_j: u32) -> Result<Self> {
        let two_l = 2 * self.l;
        if twice_j == 0 || !(twice_j == two_l + 1 || twice_j + 1 == two_l) {
            return Err(Error::InvalidQuantumNumbers(format!(
                "j = {}/2 is not l ± 1/2 for l = {}",
                twice_j, self.l
            )));
        }
        Ok(Self {
            twice_j: Some(twice_j),
            ..self
        })
    }

    pub fn j(&self) -> Option<f64> {
        self.twice_j.map(|t| t as f64 / 2.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HydrogenicState {
    pub z: f64,
    pub qn: QuantumNumbers,
}

impl HydrogenicState {
    pub fn new(z: f64, qn: QuantumNumbers) -> Result<Self> {
        if !(z > 0.0 && z.is_finite()) {
            return Err(Error::InvalidQuantumNumbers(format!("nuclear charge {z} must be positive")));
        }
        Ok(Self { z, qn })
    }

    /// Shorthand for `new(z, QuantumNumbers::new(n, l, m)?)`.
    pub fn nlm(z: f64, n: u32, l: u32, m: i32) -> Result<Self> {
        Self::new(z, QuantumNumbers::new(n, l, m)?)
    }
}

fn normalization(z: f64, n: u32, l: u32) -> f64 {
    let nf = n as f64;
    ((2.0 * z / nf).powi(3) * factorial((n - l - 1) as usize) / (2.0 * nf * factorial((n + l) as usize))).sqrt()
}

/// `R_{nl}(r)·e^{x/2}` as a function of `x = 2Zr/n`, i.e. the normalized radial
/// function with its exponential stripped.
pub fn radial_polynomial(s: &HydrogenicState, x: f64) -> f64 {
    let (n, l) = (s.qn.n, s.qn.l);
    normalization(s.z, n, l) * x.powi(l as i32) * assoc_laguerre(n - l - 1, (2 * l + 1) as f64, x)
}

/// Normalized `R_{nl}(r; Z)`; `r` in bohr, must be non-negative.
pub fn radial_wavefunction(s: &HydrogenicState, r: f64) -> f64 {
    debug_assert!(r >= 0.0, "radius must be non-negative");
    let x = 2.0 * s.z * r / s.qn.n as f64;
    radial_polynomial(s, x) * (-0.5 * x).exp()
}

/// Closed-form `⟨r^{−k}⟩` for `k ∈ {1, 2, 3}`, in bohr^{−k}.
pub fn expect_inv_power(s: &HydrogenicState, k: u32) -> Result<f64> {
    let z = s.z;
    let n = s.qn.n as f64;
    let l = s.qn.l as f64;
    match k {
        1 => Ok(z / (n * n)),
        2 => Ok(z * z / (n.powi(3) * (l + 0.5))),
        3 if s.qn.l == 0 => Err(Error::DivergentExpectation { k, l: 0 }),
        3 => Ok(z.powi(3) / (n.powi(3) * l * (l + 0.5) * (l + 1.0))),
        _ => Err(Error::InvalidQuantumNumbers(format!("inverse power k = {k} not in 1..=3"))),
    }
}

/// Default Gauss-Laguerre order for radial integrals; doubled for the check.
pub const RADIAL_ORDER: usize = 200;

fn radial_integral(z: f64, n: u32, l: u32, lp: u32, k: u32, order: usize) -> f64 {
    let rule = gauss_laguerre(order);
    let a = HydrogenicState { z, qn: QuantumNumbers { n, l, m: 0, twice_j: None } };
    let b = HydrogenicState { z, qn: QuantumNumbers { n, l: lp, m: 0, twice_j: None } };
    let scale = n as f64 / (2.0 * z);
    let power = 2 - k as i32;
    // ∫ R R' r^{2−k} dr with r = scale·x; e^{−x} is the rule's weight.
    let sum = rule.integrate(|x| radial_polynomial(&a, *x) * radial_polynomial(&b, *x) * x.powi(power));
    sum * scale.powi(power + 1)
}

/// `⟨R_{nl}| r^{−k} |R_{nl'}⟩` by Gauss-Laguerre quadrature, checked against a
/// rule of twice the order.
pub fn radial_matrix_element(z: f64, n: u32, l: u32, lp: u32, k: u32) -> Result<f64> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::InvalidQuantumNumbers(format!("nuclear charge {z} must be positive")));
    }
    if n == 0 || l >= n || lp >= n {
        return Err(Error::InvalidQuantumNumbers(format!("need l, l' < n (n = {n}, l = {l}, l' = {lp})")));
    }
    if !(1..=3).contains(&k) {
        return Err(Error::InvalidQuantumNumbers(format!("inverse power k = {k} not in 1..=3")));
    }
    if l + lp + 2 < k {
        return Err(Error::DivergentExpectation { k, l: l.min(lp) });
    }
    let coarse = radial_integral(z, n, l, lp, k, RADIAL_ORDER);
    let fine = radial_integral(z, n, l, lp, k, 2 * RADIAL_ORDER);
    let scale = z.powi(k as i32).max(coarse.abs()).max(fine.abs());
    if (coarse - fine).abs() > 1e-10 * scale {
        return Err(Error::QuadratureNotConverged(format!(
            "radial <{n}{l}|r^-{k}|{n}{lp}>: {coarse:e} vs {fine:e}"
        )));
    }
    Ok(fine)
}

/// Coefficients `U[j][μ+1]` with `x̂^j = √(4π/3) Σ_μ U[j][μ] Y_{1μ}(x̂)`.
fn cartesian_to_spherical() -> [[Complex64; 3]; 3] {
    let s = FRAC_1_SQRT_2;
    let zero = Complex64::new(0.0, 0.0);
    [
        [Complex64::new(s, 0.0), zero, Complex64::new(-s, 0.0)],
        [Complex64::new(0.0, s), zero, Complex64::new(0.0, s)],
        [zero, Complex64::new(1.0, 0.0), zero],
    ]
}

fn check_lm(l: u32, m: i32) -> Result<()> {
    if m.unsigned_abs() > l {
        return Err(Error::InvalidQuantumNumbers(format!("|m| = {} exceeds l = {l}", m.abs())));
    }
    Ok(())
}

/// The 3×3 array `T_{jk} = ⟨Y_{l'm'}| x̂^j x̂^k |Y_{lm}⟩`.
///
/// Each `x̂^j` is a combination of `Y_{1μ}`; inserting the complete set of
/// intermediate `Y_{l''m''}` (only `l'' = l ± 1` contribute) reduces the product
/// to two Gaunt coefficients.
fn direction_dyadic_element(l: u32, m: i32, lp: u32, mp: i32) -> [[Complex64; 3]; 3] {
    let zero = Complex64::new(0.0, 0.0);
    let mut out = [[zero; 3]; 3];
    let dl = l.abs_diff(lp);
    if !(dl == 0 || dl == 2) || (m - mp).abs() > 2 {
        return out;
    }
    let u = cartesian_to_spherical();
    let (l, m, lp, mp) = (l as i64, m as i64, lp as i64, mp as i64);
    // ⟨l'm'| Y_{1μ1} Y_{1μ2} |lm⟩ for μ1 = m' − m'', μ2 = m'' − m
    let mut pair = [[0.0f64; 3]; 3];
    for (i2, mu2) in (-1..=1i64).enumerate() {
        let mid_m = m + mu2;
        let mu1 = mp - mid_m;
        if mu1.abs() > 1 {
            continue;
        }
        let i1 = (mu1 + 1) as usize;
        let mut acc = 0.0;
        for mid_l in [l - 1, l + 1] {
            if mid_l < 0 || mid_m.abs() > mid_l {
                continue;
            }
            acc += ylm_matrix_element(lp, mp, 1, mu1, mid_l, mid_m) * ylm_matrix_element(mid_l, mid_m, 1, mu2, l, m);
        }
        pair[i1][i2] = acc;
    }
    let norm = 4.0 * PI / 3.0;
    for j in 0..3 {
        for k in 0..3 {
            let mut s = zero;
            for i1 in 0..3 {
                for i2 in 0..3 {
                    if pair[i1][i2] != 0.0 {
                        s += u[j][i1] * u[k][i2] * pair[i1][i2];
                    }
                }
            }
            out[j][k] = s * norm;
        }
    }
    out
}

/// `⟨Y_{l'm'}| κ_{jk} x̂^j x̂^k |Y_{lm}⟩` for complex harmonics with the
/// Condon-Shortley phase.
///
/// The result is complex in general (the operator is Hermitian, so swapping
/// the two states conjugates it); diagonal elements are real. Elements with
/// `|l − l'| ∉ {0, 2}` or `|m − m'| > 2` are exactly zero.
pub fn angular_quadratic_element(l: u32, m: i32, lp: u32, mp: i32, kappa: &KappaMatrix) -> Result<Complex64> {
    check_lm(l, m)?;
    check_lm(lp, mp)?;
    let t = direction_dyadic_element(l, m, lp, mp);
    let mut s = Complex64::new(0.0, 0.0);
    for (j, row) in t.iter().enumerate() {
        for (k, tjk) in row.iter().enumerate() {
            let c = kappa.get(j, k);
            if c != 0.0 {
                s += tjk * c;
            }
        }
    }
    Ok(s)
}
