//! Storage for the CPT-even photon-sector coefficient `(K_F)_{κλμν}`.
//!
//! Only one representative per symmetry orbit is stored. The tensor is
//! antisymmetric within each index pair and symmetric under exchange of the
//! two pairs, so every one of the 256 index tuples either reads zero or maps
//! onto a canonical slot with a sign:
//!
//! * within each pair the smaller index goes first (one sign flip per swap);
//! * the lexicographically smaller pair goes first (no sign change).
//!
//! Double-tracelessness is deliberately not imposed; see
//! [`KfTensor::kappa_trace`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Components at or above this magnitude are rejected.
pub const MAGNITUDE_LIMIT: f64 = 0.1;

/// A 4-index tuple `(μ, ν, ρ, σ)` with each entry in `0..=3`.
pub type Index4 = [usize; 4];

/// Flat-space metric with signature `(+, −, −, −)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MetricSignature;

impl MetricSignature {
    pub const DIAG: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

    #[inline]
    pub fn eta(mu: usize, nu: usize) -> f64 {
        if mu == nu {
            Self::DIAG[mu]
        } else {
            0.0
        }
    }
}

/// Maps an index tuple to its canonical slot and the sign relating the two.
///
/// Returns `None` when a pair repeats an index, in which case the component is
/// identically zero.
pub fn canonicalize(idx: Index4) -> Option<(Index4, f64)> {
    let [mut a, mut b, mut c, mut d] = idx;
    if a == b || c == d {
        return None;
    }
    let mut sign = 1.0;
    if a > b {
        std::mem::swap(&mut a, &mut b);
        sign = -sign;
    }
    if c > d {
        std::mem::swap(&mut c, &mut d);
        sign = -sign;
    }
    if (a, b) > (c, d) {
        Some(([c, d, a, b], sign))
    } else {
        Some(([a, b, c, d], sign))
    }
}

fn check_index(idx: Index4) -> Result<()> {
    if idx.iter().any(|&i| i > 3) {
        return Err(Error::IndexOutOfRange(idx));
    }
    Ok(())
}

fn check_value(v: f64) -> Result<()> {
    if !v.is_finite() {
        return Err(Error::NonFinite(v));
    }
    if v.abs() >= MAGNITUDE_LIMIT {
        return Err(Error::MagnitudeTooLarge(v));
    }
    Ok(())
}

/// Symmetry-reduced `(K_F)_{κλμν}`; immutable once built.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct KfTensor {
    canonical: BTreeMap<Index4, f64>,
}

impl KfTensor {
    /// The Lorentz-symmetric tensor: every component reads zero.
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds a tensor from arbitrary (not necessarily canonical) entries.
    ///
    /// Entries whose pairs repeat an index must be zero. Two entries that land
    /// on the same canonical slot must agree after sign adjustment.
    pub fn from_components<I>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Index4, f64)>,
    {
        let mut canonical = BTreeMap::new();
        for (idx, value) in entries {
            check_index(idx)?;
            check_value(value)?;
            let Some((key, sign)) = canonicalize(idx) else {
                if value != 0.0 {
                    return Err(Error::SymmetryConflict {
                        index: idx,
                        existing: 0.0,
                        incoming: value,
                    });
                }
                continue;
            };
            let v = sign * value;
            match canonical.get(&key) {
                Some(&existing) if existing != v => {
                    return Err(Error::SymmetryConflict {
                        index: idx,
                        existing: sign * existing,
                        incoming: value,
                    });
                }
                _ => {
                    canonical.insert(key, v);
                }
            }
        }
        canonical.retain(|_, v| *v != 0.0);
        Ok(Self { canonical })
    }

    /// `(K_F)_{0j0k} = k` for every spatial `j, k`; all other orbits zero.
    pub fn uniform(k: f64) -> Result<Self> {
        check_value(k)?;
        Ok(Self::from_kappa(&KappaMatrix::from_rows_unchecked([[k; 3]; 3])))
    }

    /// The tensor whose only nonzero orbits are `(0j0k)`, set from `kappa`.
    pub fn from_kappa(kappa: &KappaMatrix) -> Self {
        let mut canonical = BTreeMap::new();
        for j in 0..3 {
            for k in j..3 {
                let v = kappa.get(j, k);
                if v != 0.0 {
                    canonical.insert([0, j + 1, 0, k + 1], v);
                }
            }
        }
        Self { canonical }
    }

    /// Reads one component. Panics if any index exceeds 3.
    #[inline]
    pub fn get(&self, idx: Index4) -> f64 {
        assert!(idx.iter().all(|&i| i <= 3), "tensor index {idx:?} out of range");
        match canonicalize(idx) {
            Some((key, sign)) => self.canonical.get(&key).map_or(0.0, |v| sign * v),
            None => 0.0,
        }
    }

    pub fn try_get(&self, idx: Index4) -> Result<f64> {
        check_index(idx)?;
        Ok(self.get(idx))
    }

    /// Stored canonical components, in canonical order.
    pub fn components(&self) -> impl Iterator<Item = (Index4, f64)> + '_ {
        self.canonical.iter().map(|(k, v)| (*k, *v))
    }

    pub fn is_zero(&self) -> bool {
        self.canonical.is_empty()
    }

    /// The spatial slice `κ_{jk} = (K_F)_{0j0k}`.
    pub fn kappa(&self) -> KappaMatrix {
        let mut rows = [[0.0; 3]; 3];
        for (j, row) in rows.iter_mut().enumerate() {
            for (k, entry) in row.iter_mut().enumerate() {
                *entry = self.get([0, j + 1, 0, k + 1]);
            }
        }
        KappaMatrix { rows }
    }

    /// `Σ_j (K_F)_{0j0j}`. Nonzero means the point-charge Green function and the
    /// modified Coulomb potential disagree by `trace·q/(4π|X|)`.
    pub fn kappa_trace(&self) -> f64 {
        (1..=3).map(|j| self.get([0, j, 0, j])).sum()
    }

    /// `Some(k)` when this tensor equals `KfTensor::uniform(k)`.
    pub fn uniform_value(&self) -> Option<f64> {
        if self.is_zero() {
            return Some(0.0);
        }
        let k = self.get([0, 1, 0, 1]);
        let matches = self.canonical.len() == 6
            && self
                .canonical
                .iter()
                .all(|(idx, v)| idx[0] == 0 && idx[2] == 0 && *v == k);
        matches.then_some(k)
    }

    /// Multiplies every component by `alpha`, re-checking the magnitude guard.
    pub fn scaled(&self, alpha: f64) -> Result<Self> {
        let mut canonical = BTreeMap::new();
        for (k, v) in &self.canonical {
            let s = alpha * v;
            check_value(s)?;
            if s != 0.0 {
                canonical.insert(*k, s);
            }
        }
        Ok(Self { canonical })
    }
}

/// The symmetric 3×3 slice `κ_{jk} = (K_F)_{0j0k}` (spatial indices 0-based).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct KappaMatrix {
    rows: [[f64; 3]; 3],
}

impl KappaMatrix {
    /// Validates exact symmetry and the magnitude guard.
    #[allow(clippy::needless_range_loop)]
    pub fn new(rows: [[f64; 3]; 3]) -> Result<Self> {
        for j in 0..3 {
            for k in 0..3 {
                check_value(rows[j][k])?;
                if rows[j][k] != rows[k][j] {
                    return Err(Error::AsymmetricKappa(j + 1, k + 1));
                }
            }
        }
        Ok(Self { rows })
    }

    /// Averages `m` with its transpose before validating; for matrices that are
    /// symmetric up to rounding (e.g. after a rotation).
    pub fn symmetrized(m: [[f64; 3]; 3]) -> Result<Self> {
        let mut rows = [[0.0; 3]; 3];
        for j in 0..3 {
            for k in 0..3 {
                rows[j][k] = 0.5 * (m[j][k] + m[k][j]);
            }
        }
        Self::new(rows)
    }

    pub(crate) fn from_rows_unchecked(rows: [[f64; 3]; 3]) -> Self {
        Self { rows }
    }

    pub fn diagonal(d: [f64; 3]) -> Result<Self> {
        Self::new([[d[0], 0.0, 0.0], [0.0, d[1], 0.0], [0.0, 0.0, d[2]]])
    }

    #[inline]
    pub fn get(&self, j: usize, k: usize) -> f64 {
        self.rows[j][k]
    }

    pub fn rows(&self) -> [[f64; 3]; 3] {
        self.rows
    }

    pub fn trace(&self) -> f64 {
        self.rows[0][0] + self.rows[1][1] + self.rows[2][2]
    }

    /// `κ·v`
    #[inline]
    pub fn apply(&self, v: [f64; 3]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (j, o) in out.iter_mut().enumerate() {
            *o = self.rows[j][0] * v[0] + self.rows[j][1] * v[1] + self.rows[j][2] * v[2];
        }
        out
    }

    /// `κ_{jk} v^j v^k`
    #[inline]
    pub fn quadratic_form(&self, v: [f64; 3]) -> f64 {
        let kv = self.apply(v);
        v[0] * kv[0] + v[1] * kv[1] + v[2] * kv[2]
    }

    /// `R κ Rᵀ`, re-symmetrized.
    pub fn rotated(&self, r: [[f64; 3]; 3]) -> Result<Self> {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                let mut s = 0.0;
                for a in 0..3 {
                    for b in 0..3 {
                        s += r[i][a] * self.rows[a][b] * r[j][b];
                    }
                }
                *entry = s;
            }
        }
        Self::symmetrized(out)
    }
}

/// One entry of the `"components"` tensor-file form.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ComponentEntry {
    pub indices: [usize; 4],
    pub value: f64,
}

/// On-disk tensor description. Exactly one of the three keys may appear.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum TensorFile {
    Uniform(f64),
    Kappa([[f64; 3]; 3]),
    Components(Vec<ComponentEntry>),
}

impl TensorFile {
    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn build(&self) -> Result<KfTensor> {
        match self {
            TensorFile::Uniform(k) => KfTensor::uniform(*k),
            TensorFile::Kappa(rows) => Ok(KfTensor::from_kappa(&KappaMatrix::new(*rows)?)),
            TensorFile::Components(entries) => {
                KfTensor::from_components(entries.iter().map(|e| (e.indices, e.value)))
            }
        }
    }
}
