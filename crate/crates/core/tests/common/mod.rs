//! Reference implementations used only by the tests.
//!
//! They share no code with the library: `J_m` comes from the ascending
//! series in exact fixed-point integer arithmetic, and the determinant oracle
//! from the integral representations of `J_m` and `Y_m`.

#![allow(dead_code)]

pub mod frozen;

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Float, Signed, ToPrimitive, Zero};

const FIXED_BITS: u32 = 320;

fn fixed_from_f64(x: f64) -> BigInt {
    let (mantissa, exponent, sign) = Float::integer_decode(x);
    let m = BigInt::from(mantissa) * sign;
    let shift = FIXED_BITS as i32 + exponent as i32;
    if shift >= 0 {
        m << shift as u32
    } else {
        m >> (-shift) as u32
    }
}

/// `2^FIXED_BITS * J_m(x)` from the ascending series
/// `sum_k (-1)^k (x/2)^(2k+m) / (k! (k+m)!)`.
pub fn j_series_fixed(m: u32, x: f64) -> BigInt {
    let half = fixed_from_f64(0.5 * x);
    let y = (&half * &half) >> FIXED_BITS;
    let mut term = BigInt::from(1) << FIXED_BITS;
    for i in 1..=m {
        term = (term * &half) >> FIXED_BITS;
        term /= i;
    }
    let mut sum = term.clone();
    let mut k: u64 = 1;
    loop {
        term = -((term * &y) >> FIXED_BITS) / (k * (k + m as u64));
        if term.is_zero() {
            break;
        }
        sum += &term;
        k += 1;
    }
    sum
}

pub fn j_series(m: u32, x: f64) -> f64 {
    let v = j_series_fixed(m, x);
    v.to_f64().unwrap() * 2f64.powi(-(FIXED_BITS as i32))
}

fn j_series_sign(m: u32, x: f64) -> Ordering {
    let v = j_series_fixed(m, x);
    if v.is_positive() {
        Ordering::Greater
    } else if v.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

/// Bisects a sign change of `sign` on `[lo, hi]` down to width `tol`.
pub fn bisect(mut sign: impl FnMut(f64) -> Ordering, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let s_lo = sign(lo);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let s = sign(mid);
        if s == Ordering::Equal {
            return mid;
        }
        if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// First `count` positive zeros of `J_m`: sign scan with step 0.1 from 0.1,
/// each change bisected to 1e-13.
pub fn oracle_bessel_zeros(m: u32, count: usize) -> Vec<f64> {
    let mut zeros = Vec::with_capacity(count);
    let mut i = 1u32;
    let mut prev = j_series_sign(m, 0.1);
    while zeros.len() < count {
        let (lo, hi) = (i as f64 * 0.1, (i + 1) as f64 * 0.1);
        let s = j_series_sign(m, hi);
        if s != prev {
            zeros.push(bisect(|x| j_series_sign(m, x), lo, hi, 1e-13));
        }
        prev = s;
        i += 1;
    }
    zeros
}

fn gauss_legendre_20() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = 20usize;
        let mut rule = Vec::with_capacity(n);
        for i in 0..n {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            rule.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
        }
        rule
    })
}

fn composite_gl(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let w = (b - a) / panels as f64;
    let mut sum = 0.0;
    for p in 0..panels {
        let c = a + (p as f64 + 0.5) * w;
        for &(x, wt) in gauss_legendre_20() {
            sum += wt * f(c + 0.5 * w * x);
        }
    }
    0.5 * w * sum
}

/// `J_m(x) = (1/2pi) int_0^{2pi} cos(m t - x sin t) dt` by the trapezoid rule,
/// which converges geometrically for this periodic integrand.
pub fn j_integral(m: u32, x: f64) -> f64 {
    let n = 2 * (x.ceil() as usize) + m as usize + 64;
    let mf = m as f64;
    let mut sum = 0.0;
    for j in 0..n {
        let t = 2.0 * PI * j as f64 / n as f64;
        sum += (mf * t - x * t.sin()).cos();
    }
    sum / n as f64
}

/// `Y_m(x) = (1/pi) int_0^pi sin(x sin t - m t) dt
///         - (1/pi) int_0^inf (e^{mt} + (-1)^m e^{-mt}) e^{-x sinh t} dt`.
pub fn y_integral(m: u32, x: f64) -> f64 {
    let mf = m as f64;
    let first = composite_gl(
        |t| (x * t.sin() - mf * t).sin(),
        0.0,
        PI,
        (x / 2.0).ceil() as usize + 4,
    );
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    // Upper limit where the integrand has dropped below e^-45 of its scale.
    let mut upper = 1.0;
    while x * upper.sinh() - mf * upper < 45.0 + mf.max(1.0).ln() {
        upper += 0.5;
    }
    let panels = (upper * 8.0).ceil() as usize;
    let second = composite_gl(
        |t| ((mf * t - x * t.sinh()).exp()) + sign * ((-mf * t - x * t.sinh()).exp()),
        0.0,
        upper,
        panels,
    );
    (first - second) / PI
}

pub fn cross_product_oracle(m: u32, a: f64, b: f64, gamma: f64) -> f64 {
    j_integral(m, gamma * b) * y_integral(m, gamma * a)
        - j_integral(m, gamma * a) * y_integral(m, gamma * b)
}

fn sign_of(v: f64) -> Ordering {
    v.partial_cmp(&0.0).unwrap_or(Ordering::Equal)
}

/// First `count` roots of the annulus determinant: sign scan with step 1e-3
/// in `gamma` from 1e-3, each change bisected to 1e-12.
pub fn oracle_cross_zeros(m: u32, a: f64, b: f64, count: usize) -> Vec<f64> {
    let step = 1e-3;
    let d = |g: f64| cross_product_oracle(m, a, b, g);
    let mut roots = Vec::with_capacity(count);
    let mut i = 1u64;
    let mut prev = sign_of(d(step));
    while roots.len() < count {
        let (lo, hi) = (i as f64 * step, (i + 1) as f64 * step);
        let s = sign_of(d(hi));
        if s != prev {
            roots.push(bisect(|g| sign_of(d(g)), lo, hi, 1e-12));
        }
        prev = s;
        i += 1;
    }
    roots
}
