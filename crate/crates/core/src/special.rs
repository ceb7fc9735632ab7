//! Special functions shared by the analytic code paths.

use std::f64::consts::PI;
use std::sync::LazyLock;

const FACTORIAL_MAX: usize = 170;

static FACTORIALS: LazyLock<[f64; FACTORIAL_MAX + 1]> = LazyLock::new(|| {
    let mut t = [1.0; FACTORIAL_MAX + 1];
    for i in 1..=FACTORIAL_MAX {
        t[i] = t[i - 1] * i as f64;
    }
    t
});

/// `n!` as a double. Panics above 170!.
#[inline]
pub fn factorial(n: usize) -> f64 {
    FACTORIALS[n]
}

#[inline]
fn fact_i(n: i64) -> f64 {
    debug_assert!(n >= 0);
    factorial(n as usize)
}

/// Generalized Laguerre polynomial `L_k^{(α)}(x)` by three-term recurrence.
pub fn assoc_laguerre(k: u32, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if k == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for i in 1..k {
        let i = i as f64;
        let next = ((2.0 * i + 1.0 + alpha - x) * cur - (i + alpha) * prev) / (i + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Wigner 3j symbol for integer angular momenta (Racah formula).
pub fn wigner_3j(j1: i64, j2: i64, j3: i64, m1: i64, m2: i64, m3: i64) -> f64 {
    if m1 + m2 + m3 != 0
        || m1.abs() > j1
        || m2.abs() > j2
        || m3.abs() > j3
        || j3 < (j1 - j2).abs()
        || j3 > j1 + j2
    {
        return 0.0;
    }
    let triangle = fact_i(j1 + j2 - j3) * fact_i(j1 - j2 + j3) * fact_i(-j1 + j2 + j3)
        / fact_i(j1 + j2 + j3 + 1);
    let pre = (triangle
        * fact_i(j1 + m1)
        * fact_i(j1 - m1)
        * fact_i(j2 + m2)
        * fact_i(j2 - m2)
        * fact_i(j3 + m3)
        * fact_i(j3 - m3))
    .sqrt();

    let k_min = 0.max(j2 - j3 - m1).max(j1 - j3 + m2);
    let k_max = (j1 + j2 - j3).min(j1 - m1).min(j2 + m2);
    let mut sum = 0.0;
    for k in k_min..=k_max {
        let denom = fact_i(k)
            * fact_i(j3 - j2 + k + m1)
            * fact_i(j3 - j1 + k - m2)
            * fact_i(j1 + j2 - j3 - k)
            * fact_i(j1 - k - m1)
            * fact_i(j2 - k + m2);
        let term = 1.0 / denom;
        sum += if k % 2 == 0 { term } else { -term };
    }
    let phase = if (j1 - j2 - m3).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    phase * pre * sum
}

/// `∫ Y_{l1 m1} Y_{l2 m2} Y_{l3 m3} dΩ`.
pub fn gaunt(l1: i64, m1: i64, l2: i64, m2: i64, l3: i64, m3: i64) -> f64 {
    if (l1 + l2 + l3) % 2 != 0 || m1 + m2 + m3 != 0 {
        return 0.0;
    }
    let norm = ((2 * l1 + 1) as f64 * (2 * l2 + 1) as f64 * (2 * l3 + 1) as f64 / (4.0 * PI)).sqrt();
    norm * wigner_3j(l1, l2, l3, 0, 0, 0) * wigner_3j(l1, l2, l3, m1, m2, m3)
}

/// `⟨Y_{l' m'}| Y_{L M} |Y_{l m}⟩ = ∫ conj(Y_{l'm'}) Y_{LM} Y_{lm} dΩ`.
pub fn ylm_matrix_element(lp: i64, mp: i64, big_l: i64, big_m: i64, l: i64, m: i64) -> f64 {
    let phase = if mp.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    phase * gaunt(lp, -mp, big_l, big_m, l, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn laguerre_low_orders() {
        let x = 0.7;
        assert_eq!(assoc_laguerre(0, 3.0, x), 1.0);
        assert_relative_eq!(assoc_laguerre(1, 3.0, x), 4.0 - x, max_relative = 1e-15);
        // L_2^{(1)}(x) = (x² − 6x + 6)/2
        assert_relative_eq!(assoc_laguerre(2, 1.0, x), (x * x - 6.0 * x + 6.0) / 2.0, max_relative = 1e-14);
    }

    #[test]
    fn known_3j_values() {
        // (1 1 0; 0 0 0) = −1/√3
        assert_relative_eq!(wigner_3j(1, 1, 0, 0, 0, 0), -1.0 / 3f64.sqrt(), max_relative = 1e-14);
        // (1 1 2; 0 0 0) = √(2/15)
        assert_relative_eq!(wigner_3j(1, 1, 2, 0, 0, 0), (2.0 / 15.0f64).sqrt(), max_relative = 1e-14);
        // (2 1 1; 1 −1 0) = −√(1/10)
        assert_relative_eq!(wigner_3j(2, 1, 1, 1, -1, 0), -(0.1f64).sqrt(), max_relative = 1e-14);
        assert_eq!(wigner_3j(1, 1, 3, 0, 0, 0), 0.0);
        assert_eq!(wigner_3j(1, 1, 1, 0, 0, 0), 0.0);
    }

    #[test]
    fn three_j_orthogonality() {
        // Σ_{m1,m2} (j1 j2 j3; m1 m2 m3)(j1 j2 j3'; m1 m2 m3) = δ/(2j3+1)
        let (j1, j2) = (3, 2);
        for j3 in 1..=5 {
            let m3 = 1;
            let mut s = 0.0;
            for m1 in -j1..=j1 {
                let m2 = -m3 - m1;
                s += wigner_3j(j1, j2, j3, m1, m2, m3).powi(2);
            }
            assert_relative_eq!(s, 1.0 / (2 * j3 + 1) as f64, max_relative = 1e-13);
        }
    }

    #[test]
    fn gaunt_with_y00_is_orthonormality() {
        let y00 = 1.0 / (4.0 * PI).sqrt();
        for l in 0..5 {
            for m in -l..=l {
                let v = ylm_matrix_element(l, m, 0, 0, l, m);
                assert_relative_eq!(v, y00, max_relative = 1e-13);
            }
        }
    }
}
