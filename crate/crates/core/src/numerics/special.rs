//! Bessel functions of orders 0..3, spherical Bessel j0 and j1, and Gamma.

use std::f64::consts::PI;

use crate::error::{invalid, Result};

/// Below this argument the power series is used.
const SERIES_LIMIT: f64 = 2.0;
/// Above this argument the Hankel expansion is used for J0 and J1.
const ASYMPTOTIC_LIMIT: f64 = 25.0;

/// `J_n(x)` for `n` in `0..=3` and `x >= 0`.
pub fn bessel_j(n: usize, x: f64) -> Result<f64> {
    if n > 3 {
        return Err(invalid(format!("Bessel order {n} outside 0..=3")));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(invalid(format!("Bessel argument must be finite and non-negative, got {x}")));
    }
    Ok(bessel_j0123(x)[n])
}

/// `[J0(x), J1(x), J2(x), J3(x)]` for `x >= 0`.
pub fn bessel_j0123(x: f64) -> [f64; 4] {
    if x == 0.0 {
        [1.0, 0.0, 0.0, 0.0]
    } else if x < SERIES_LIMIT {
        std::array::from_fn(|n| series(n, x))
    } else if x <= ASYMPTOTIC_LIMIT {
        miller(x)
    } else {
        let j0 = hankel(0, x);
        let j1 = hankel(1, x);
        let j2 = 2.0 / x * j1 - j0;
        let j3 = 4.0 / x * j2 - j1;
        [j0, j1, j2, j3]
    }
}

fn series(n: usize, x: f64) -> f64 {
    let h = 0.5 * x;
    let mut term = h.powi(n as i32) / (1..=n).map(|k| k as f64).product::<f64>();
    let q = h * h;
    let mut sum = term;
    for m in 1..60 {
        term *= -q / (m as f64 * (m + n) as f64);
        sum += term;
        if term.abs() <= 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// Backward recurrence normalized with `J0 + 2 sum J_{2k} = 1`.
fn miller(x: f64) -> [f64; 4] {
    let start = (x + 30.0 + 6.0 * x.sqrt()) as usize;
    let start = start + start % 2;
    let mut out = [0.0; 4];
    let (mut jp, mut j) = (0.0f64, 1e-30f64);
    let mut norm = 0.0;
    for k in (1..=start).rev() {
        let jm = 2.0 * k as f64 / x * j - jp;
        jp = j;
        j = jm;
        let idx = k - 1;
        if idx < 4 {
            out[idx] = j;
        }
        if idx % 2 == 0 {
            norm += if idx == 0 { j } else { 2.0 * j };
        }
        if j.abs() > 1e250 {
            j *= 1e-250;
            jp *= 1e-250;
            norm *= 1e-250;
            for o in out.iter_mut() {
                *o *= 1e-250;
            }
        }
    }
    out.map(|v| v / norm)
}

fn hankel(n: usize, x: f64) -> f64 {
    let mu = 4.0 * (n * n) as f64;
    let (mut p, mut q) = (1.0, 0.0);
    let mut term = 1.0f64;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        let next = term * (mu - odd * odd) / (8.0 * k as f64 * x);
        if next.abs() >= term.abs() && k > 2 {
            break;
        }
        term = next;
        // Signs follow the pattern +P0 +Q1 -P2 -Q3 +P4 ...
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 1 {
            q += sign * term;
        } else {
            p += sign * term;
        }
        if term.abs() < 1e-17 {
            break;
        }
    }
    let chi = x - (0.5 * n as f64 + 0.25) * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// `J1(x) / x`, equal to 1/2 at the origin.
pub fn j1_over_x(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        0.5 - x * x / 16.0
    } else {
        bessel_j0123(x.abs())[1] / x.abs()
    }
}

/// `J2(x) / x`, vanishing at the origin.
pub fn j2_over_x(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        x / 8.0 - x * x * x / 96.0
    } else {
        bessel_j0123(x)[2] / x
    }
}

/// Spherical Bessel `j_n(x)` for `n` in `0..=1`.
pub fn spherical_j(n: usize, x: f64) -> Result<f64> {
    if n > 1 {
        return Err(invalid(format!("spherical Bessel order {n} outside 0..=1")));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(invalid(format!("spherical Bessel argument must be finite and non-negative, got {x}")));
    }
    let [j0, j1] = spherical_j01(x);
    Ok(if n == 0 { j0 } else { j1 })
}

/// `[j0(x), j1(x)]`; series below `1e-3`.
pub fn spherical_j01(x: f64) -> [f64; 2] {
    if x.abs() < 1e-3 {
        let x2 = x * x;
        [1.0 - x2 / 6.0 + x2 * x2 / 120.0, x / 3.0 - x * x2 / 30.0 + x * x2 * x2 / 840.0]
    } else {
        let (s, c) = x.sin_cos();
        [s / x, s / (x * x) - c / x]
    }
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `Gamma(x)` for `x > 0` (Lanczos, g = 7, nine terms).
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(invalid(format!("Gamma argument must be positive and finite, got {x}")));
    }
    Ok(lanczos(x))
}

fn lanczos(x: f64) -> f64 {
    if x < 0.5 {
        return PI / ((PI * x).sin() * lanczos(1.0 - x));
    }
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Plain power series with a fixed number of terms.
    fn series_oracle(n: i32, x: f64, terms: i32) -> f64 {
        let mut sum = 0.0;
        let mut fact_m = 1.0;
        for m in 0..terms {
            if m > 0 {
                fact_m *= m as f64;
            }
            let fact_mn: f64 = (1..=(m + n)).map(|k| k as f64).product();
            sum += (-1f64).powi(m) * (0.5 * x).powi(2 * m + n) / (fact_m * fact_mn);
        }
        sum
    }

    /// Bessel's integral `(1/pi) int_0^pi cos(n t - x sin t) dt` by the
    /// trapezoid rule on the full period, which converges geometrically.
    fn integral_oracle(n: usize, x: f64) -> f64 {
        let m = 4096;
        let h = 2.0 * PI / m as f64;
        let s: f64 = (0..m).map(|i| {
            let t = i as f64 * h;
            (n as f64 * t - x * t.sin()).cos()
        }).sum();
        s * h / (2.0 * PI)
    }

    fn stirling_gamma(x: f64) -> f64 {
        let mut shift = 1.0;
        let mut z = x;
        while z < 40.0 {
            shift *= z;
            z += 1.0;
        }
        let lg = (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + 1.0 / (12.0 * z) - 1.0 / (360.0 * z.powi(3))
            + 1.0 / (1260.0 * z.powi(5))
            - 1.0 / (1680.0 * z.powi(7));
        lg.exp() / shift
    }

    #[test]
    fn values_at_origin() {
        assert_eq!(bessel_j0123(0.0), [1.0, 0.0, 0.0, 0.0]);
        assert_eq!(j1_over_x(0.0), 0.5);
        assert_eq!(j2_over_x(0.0), 0.0);
        assert_eq!(spherical_j(0, 0.0).unwrap(), 1.0);
        assert_eq!(spherical_j(1, 0.0).unwrap(), 0.0);
        assert!(spherical_j(0, PI).unwrap().abs() < 1e-15);
        assert!(bessel_j(4, 1.0).is_err());
        assert!(bessel_j(0, -1.0).is_err());
        assert!(spherical_j(2, 1.0).is_err());
    }

    #[test]
    fn j1_at_one() {
        let oracle = series_oracle(1, 1.0, 40);
        assert!((oracle - 0.440_050_585_744_933_5).abs() < 1e-16);
        let v = bessel_j(1, 1.0).unwrap();
        assert!((v - 0.440_050_585_744_933_5).abs() < 1e-12 * 0.44);
    }

    #[test]
    fn agrees_with_bessel_integral() {
        let mut x = 0.05;
        while x < 220.0 {
            let j = bessel_j0123(x);
            for (n, v) in j.iter().enumerate() {
                let o = integral_oracle(n, x);
                assert!((v - o).abs() < 2e-14, "n={n} x={x}: {v} vs {o}");
            }
            x *= 1.07;
        }
    }

    #[test]
    fn relative_accuracy_away_from_zeros() {
        // Series oracle is exact to rounding for moderate x.
        for &x in &[0.3, 1.0, 2.5, 4.0, 7.5, 9.0] {
            let j = bessel_j0123(x);
            for (n, jn) in j.iter().enumerate() {
                let o = series_oracle(n as i32, x, 60);
                assert!((jn - o).abs() <= 1e-12 * o.abs().max(1e-3), "n={n} x={x}");
            }
        }
    }

    #[test]
    fn continuity_at_branch_points() {
        for &b in &[SERIES_LIMIT, ASYMPTOTIC_LIMIT] {
            let lo = bessel_j0123(b * (1.0 - 1e-15));
            let hi = bessel_j0123(b * (1.0 + 1e-15));
            for n in 0..4 {
                assert!((lo[n] - hi[n]).abs() < 1e-13, "n={n} at {b}: {lo:?} {hi:?}");
            }
        }
    }

    #[test]
    fn spherical_matches_half_integer_relation() {
        for &x in &[1e-4, 1e-3, 0.5, 3.0, 17.0] {
            let [j0, j1] = spherical_j01(x);
            assert!((j0 - x.sin() / x).abs() < 1e-15);
            assert!((j1 - (x.sin() / (x * x) - x.cos() / x)).abs() < 1e-9 * (1.0 + 1.0 / x));
        }
    }

    #[test]
    fn gamma_values() {
        assert!((gamma_fn(1.0).unwrap() - 1.0).abs() < 1e-14);
        assert!((gamma_fn(2.0).unwrap() - 1.0).abs() < 1e-14);
        assert!((gamma_fn(0.5).unwrap() - PI.sqrt()).abs() < 1e-12 * PI.sqrt());
        let g74 = gamma_fn(1.75).unwrap();
        assert!((stirling_gamma(1.75) - 0.919_062_526_848_883_2).abs() < 1e-13);
        assert!((g74 - 0.919_062_526_848_883_2).abs() < 1e-12);
        assert!(gamma_fn(0.0).is_err());
        assert!(gamma_fn(-1.5).is_err());
    }

    proptest! {
        #[test]
        fn recurrence(x in 0.1f64..40.0) {
            let j = bessel_j0123(x);
            for n in 1..3 {
                let lhs = j[n - 1] + j[n + 1];
                let rhs = 2.0 * n as f64 / x * j[n];
                let scale = lhs.abs().max(rhs.abs()).max(j[n - 1].abs()).max(j[n + 1].abs());
                prop_assert!((lhs - rhs).abs() <= 1e-10 * scale);
            }
        }

        #[test]
        fn gamma_against_stirling(x in 0.05f64..30.0) {
            let g = gamma_fn(x).unwrap();
            let o = stirling_gamma(x);
            prop_assert!((g - o).abs() <= 1e-12 * o);
        }
    }
}
