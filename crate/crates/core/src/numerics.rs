//! Brute-force numerical machinery: Gaussian rules, direct spherical-harmonic
//! evaluation, product-quadrature expectation values and seeded Monte Carlo.
//!
//! Nothing here uses the Gaunt/3j algebra of the analytic path, so these
//! routines serve as independent oracles for it.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hydrogenic::{radial_polynomial, HydrogenicState};
use crate::special::factorial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum RuleKind {
    GaussLaguerre { order: usize },
    GaussLegendre { order: usize },
    AngularProduct { n_theta: usize, n_phi: usize },
}

/// A point on the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    pub cos_theta: f64,
    pub phi: f64,
    pub unit: [f64; 3],
}

impl Direction {
    pub fn new(cos_theta: f64, phi: f64) -> Self {
        let sin_theta = (1.0 - cos_theta * cos_theta).max(0.0).sqrt();
        Self {
            cos_theta,
            phi,
            unit: [sin_theta * phi.cos(), sin_theta * phi.sin(), cos_theta],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule<N> {
    pub nodes: Vec<N>,
    pub weights: Vec<f64>,
    pub kind: RuleKind,
}

impl<N> QuadratureRule<N> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: FnMut(&N) -> f64>(&self, mut f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(x, w)| w * f(x)).sum()
    }
}

/// `L_n(x)` and `L_{n-1}(x)`, both divided by a common power of two to stay in
/// range, together with the log2 of that divisor.
fn laguerre_scaled(n: usize, x: f64) -> (f64, f64, i32) {
    let mut prev = 1.0;
    let mut cur = 1.0 - x;
    let mut shift = 0;
    for i in 1..n {
        let fi = i as f64;
        let next = ((2.0 * fi + 1.0 - x) * cur - fi * prev) / (fi + 1.0);
        prev = cur;
        cur = next;
        if cur.abs() > 1e100 {
            prev *= 1e-100_f64;
            cur *= 1e-100_f64;
            shift += 1;
        }
    }
    if n == 0 {
        return (1.0, 0.0, 0);
    }
    (cur, prev, shift)
}

/// `1/Σ_{k<n} L_k(x)²`. Summing squares of the orthonormal Laguerre
/// polynomials avoids the cancellation that `1/(x L_n'(x)²)` suffers at small
/// nodes.
fn christoffel_weight(n: usize, x: f64) -> f64 {
    let mut prev = 1.0;
    let mut cur = 1.0 - x;
    let mut sum = 1.0;
    let mut shift = 0;
    for i in 1..n {
        sum += cur * cur;
        let fi = i as f64;
        let next = ((2.0 * fi + 1.0 - x) * cur - fi * prev) / (fi + 1.0);
        prev = cur;
        cur = next;
        if cur.abs() > 1e100 {
            prev *= 1e-100_f64;
            cur *= 1e-100_f64;
            sum *= 1e-200_f64;
            shift += 1;
        }
    }
    if shift == 0 {
        1.0 / sum
    } else {
        (-(sum.ln() + shift as f64 * 200.0 * std::f64::consts::LN_10)).exp()
    }
}

fn gauss_laguerre_uncached(order: usize) -> QuadratureRule<f64> {
    // Golub-Welsch eigenvalues as starting points, then Newton polish.
    let mut jacobi = DMatrix::<f64>::zeros(order, order);
    for i in 0..order {
        jacobi[(i, i)] = (2 * i + 1) as f64;
        if i + 1 < order {
            let off = (i + 1) as f64;
            jacobi[(i, i + 1)] = off;
            jacobi[(i + 1, i)] = off;
        }
    }
    let mut guesses: Vec<f64> = jacobi.symmetric_eigenvalues().iter().copied().collect();
    guesses.sort_by(|a, b| a.total_cmp(b));

    let n = order as f64;
    let mut nodes = Vec::with_capacity(order);
    let mut weights = Vec::with_capacity(order);
    for mut x in guesses {
        for _ in 0..8 {
            let (ln, lnm1, _) = laguerre_scaled(order, x);
            // L_n'(x) = n (L_n − L_{n−1}) / x
            let dl = n * (ln - lnm1) / x;
            let dx = ln / dl;
            x -= dx;
            if dx.abs() <= 1e-16 * x.abs() {
                break;
            }
        }
        nodes.push(x);
        weights.push(christoffel_weight(order, x));
    }
    QuadratureRule {
        nodes,
        weights,
        kind: RuleKind::GaussLaguerre { order },
    }
}

static LAGUERRE_CACHE: OnceLock<Mutex<HashMap<usize, Arc<QuadratureRule<f64>>>>> = OnceLock::new();

/// Rule for `∫₀^∞ e^{−x} f(x) dx`, exact for polynomials of degree `2·order − 1`.
///
/// Rules are cached per order, so repeated calls are cheap.
pub fn gauss_laguerre(order: usize) -> Arc<QuadratureRule<f64>> {
    assert!(order >= 1, "Gauss-Laguerre order must be at least 1");
    let cache = LAGUERRE_CACHE.get_or_init(Default::default);
    if let Some(rule) = cache.lock().unwrap().get(&order) {
        return Arc::clone(rule);
    }
    let rule = Arc::new(gauss_laguerre_uncached(order));
    cache
        .lock()
        .unwrap()
        .entry(order)
        .or_insert_with(|| Arc::clone(&rule))
        .clone()
}

/// Rule for `∫_{−1}^{1} f(x) dx`.
pub fn gauss_legendre(order: usize) -> QuadratureRule<f64> {
    assert!(order >= 1, "Gauss-Legendre order must be at least 1");
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 1 { x } else { p1 };
            let pm1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * p - pm1) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    QuadratureRule {
        nodes,
        weights,
        kind: RuleKind::GaussLegendre { order },
    }
}

/// Gauss-Legendre in `cos θ` times the uniform trapezoid in `φ`.
pub fn angular_quadrature(n_theta: usize, n_phi: usize) -> QuadratureRule<Direction> {
    assert!(n_theta >= 2 && n_phi >= 2, "angular rule needs at least 2x2 points");
    let gl = gauss_legendre(n_theta);
    let dphi = 2.0 * PI / n_phi as f64;
    let mut nodes = Vec::with_capacity(n_theta * n_phi);
    let mut weights = Vec::with_capacity(n_theta * n_phi);
    for (c, w) in gl.nodes.iter().zip(&gl.weights) {
        for k in 0..n_phi {
            nodes.push(Direction::new(*c, k as f64 * dphi));
            weights.push(w * dphi);
        }
    }
    QuadratureRule {
        nodes,
        weights,
        kind: RuleKind::AngularProduct { n_theta, n_phi },
    }
}

/// Associated Legendre `P_l^m(x)` for `m ≥ 0`, Condon-Shortley phase included.
fn legendre_p(l: u32, m: u32, x: f64) -> f64 {
    let mut pmm = 1.0;
    if m > 0 {
        let s = ((1.0 - x) * (1.0 + x)).max(0.0).sqrt();
        let mut odd = 1.0;
        for _ in 0..m {
            pmm *= -odd * s;
            odd += 2.0;
        }
    }
    if l == m {
        return pmm;
    }
    let mut pmmp1 = x * (2 * m + 1) as f64 * pmm;
    for ll in (m + 2)..=l {
        let pll = (x * (2 * ll - 1) as f64 * pmmp1 - (ll + m - 1) as f64 * pmm) / (ll - m) as f64;
        pmm = pmmp1;
        pmmp1 = pll;
    }
    pmmp1
}

/// Complex spherical harmonic `Y_l^m` evaluated directly.
pub fn spherical_harmonic(l: u32, m: i32, dir: &Direction) -> Complex64 {
    let am = m.unsigned_abs();
    assert!(am <= l, "|m| must not exceed l");
    let norm = ((2 * l + 1) as f64 / (4.0 * PI) * factorial((l - am) as usize)
        / factorial((l + am) as usize))
    .sqrt();
    let y = Complex64::from_polar(norm * legendre_p(l, am, dir.cos_theta), am as f64 * dir.phi);
    if m >= 0 {
        y
    } else if am.is_multiple_of(2) {
        y.conj()
    } else {
        -y.conj()
    }
}

/// `∫ conj(Y_{l'm'}) f(x̂) Y_{lm} dΩ` by product quadrature.
pub fn angular_element_numeric<F>(l: u32, m: i32, lp: u32, mp: i32, rule: &QuadratureRule<Direction>, f: F) -> Complex64
where
    F: Fn(&Direction) -> f64,
{
    rule.nodes
        .iter()
        .zip(&rule.weights)
        .map(|(d, w)| spherical_harmonic(lp, mp, d).conj() * spherical_harmonic(l, m, d) * (w * f(d)))
        .sum()
}

/// Rule sizes for [`expectation_numeric_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpectationGrid {
    pub radial_order: usize,
    pub n_theta: usize,
    pub n_phi: usize,
}

impl ExpectationGrid {
    /// Coarse grid for a state; integrands that are polynomial in `x = 2Zr/n`
    /// times low-order angular functions are integrated exactly.
    pub fn for_state(s: &HydrogenicState) -> Self {
        let l = s.qn.l as usize;
        Self {
            radial_order: 2 * s.qn.n as usize + 24,
            n_theta: l + 6,
            n_phi: 2 * l + 8,
        }
    }

    pub fn refined(&self) -> Self {
        Self {
            radial_order: 2 * self.radial_order,
            n_theta: 2 * self.n_theta,
            n_phi: 2 * self.n_phi,
        }
    }
}

/// `⟨ψ|op|ψ⟩` on one fixed grid. `op` receives `r` (bohr) and the direction.
pub fn expectation_numeric_with<F>(s: &HydrogenicState, grid: ExpectationGrid, op: &F) -> f64
where
    F: Fn(f64, &Direction) -> f64,
{
    let radial = gauss_laguerre(grid.radial_order);
    let angular = angular_quadrature(grid.n_theta, grid.n_phi);
    let (l, m) = (s.qn.l, s.qn.m);
    let density: Vec<f64> = angular
        .nodes
        .iter()
        .map(|d| spherical_harmonic(l, m, d).norm_sqr())
        .collect();
    let scale = s.qn.n as f64 / (2.0 * s.z);
    let mut total = 0.0;
    for (x, wx) in radial.nodes.iter().zip(&radial.weights) {
        let r = scale * x;
        // R(r)² r² with the e^{−x} factor carried by the rule
        let p = radial_polynomial(s, *x);
        let radial_weight = wx * p * p * r * r * scale;
        if radial_weight == 0.0 {
            continue;
        }
        let mut ang = 0.0;
        for ((d, w), rho) in angular.nodes.iter().zip(&angular.weights).zip(&density) {
            ang += w * rho * op(r, d);
        }
        total += radial_weight * ang;
    }
    total
}

/// `⟨ψ|op|ψ⟩` with a convergence check: a coarse and a doubled grid must agree
/// to 1e-9 relative.
pub fn expectation_numeric<F>(s: &HydrogenicState, op: F) -> Result<f64>
where
    F: Fn(f64, &Direction) -> f64,
{
    let grid = ExpectationGrid::for_state(s);
    let coarse = expectation_numeric_with(s, grid, &op);
    let fine = expectation_numeric_with(s, grid.refined(), &op);
    let tol = 1e-9 * coarse.abs().max(fine.abs());
    if (coarse - fine).abs() > tol && (coarse - fine).abs() > 1e-300 {
        return Err(Error::QuadratureNotConverged(format!(
            "expectation: {coarse:e} vs {fine:e} on refined grid"
        )));
    }
    Ok(fine)
}

/// Number of draws per independently seeded chunk.
pub const MC_CHUNK: u64 = 1 << 16;

/// Name of the generator behind [`mc_integrate`].
pub const MC_ALGORITHM: &str = "ChaCha8 (stream = chunk index)";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MCEstimate {
    pub value: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
    pub chunk_size: u64,
}

#[derive(Clone, Copy, Default)]
struct Moments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, v: f64) {
        self.count += 1;
        let d = v - self.mean;
        self.mean += d / self.count as f64;
        self.m2 += d * (v - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let n = self.count + other.count;
        let d = other.mean - self.mean;
        let nf = n as f64;
        Moments {
            count: n,
            mean: self.mean + d * other.count as f64 / nf,
            m2: self.m2 + other.m2 + d * d * self.count as f64 * other.count as f64 / nf,
        }
    }
}

/// Mean and standard error of `integrand(sampler(rng))` over `samples` draws.
///
/// Draws are split into chunks of [`MC_CHUNK`]; chunk `i` uses a ChaCha8
/// generator seeded with `seed` on stream `i`. Chunks may run in parallel but
/// are merged in index order, so the result depends only on `(seed, samples)`.
///
/// Panics if `samples < 2`.
pub fn mc_integrate<S, D, F>(sampler: D, integrand: F, samples: u64, seed: u64) -> MCEstimate
where
    D: Fn(&mut ChaCha8Rng) -> S + Sync,
    F: Fn(&S) -> f64 + Sync,
{
    assert!(samples >= 2, "Monte Carlo needs at least two samples");
    let chunks = samples.div_ceil(MC_CHUNK);
    let parts: Vec<Moments> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c);
            let len = MC_CHUNK.min(samples - c * MC_CHUNK);
            let mut m = Moments::default();
            for _ in 0..len {
                m.push(integrand(&sampler(&mut rng)));
            }
            m
        })
        .collect();
    let total = parts.into_iter().fold(Moments::default(), Moments::merge);
    let n = total.count as f64;
    let variance = total.m2 / (n - 1.0);
    MCEstimate {
        value: total.mean,
        std_error: (variance / n).max(0.0).sqrt(),
        samples,
        seed,
        chunk_size: MC_CHUNK,
    }
}
