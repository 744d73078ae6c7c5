//! Globally adaptive Gauss-Kronrod (7/15) quadrature.
//!
//! The panel with the largest error estimate is bisected until the summed
//! estimate drops below the requested absolute tolerance.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the odd-indexed Kronrod nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod_panel<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for (i, (&x, &w)) in XGK[..7].iter().zip(&WGK[..7]).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kronrod += w * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    Panel {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// Integrates `f` over `[a, b]` to absolute tolerance `abs_tol`.
///
/// Fails with [`Error::Quadrature`] carrying the achieved error estimate when
/// `max_panels` bisections do not reach the tolerance.
pub fn integrate<F>(mut f: F, a: f64, b: f64, abs_tol: f64, max_panels: usize) -> Result<QuadResult>
where
    F: FnMut(f64) -> f64,
{
    if !(a.is_finite() && b.is_finite() && a <= b) {
        return Err(Error::InvalidParameter(format!(
            "integration interval [{a}, {b}] is not a finite ordered pair"
        )));
    }
    if !(abs_tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tolerance {abs_tol} must be positive"
        )));
    }
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
        });
    }
    let mut evaluations = 15;
    let first = kronrod_panel(&mut f, a, b);
    let mut total_error = first.error;
    let mut heap = BinaryHeap::from([first]);
    while total_error > abs_tol {
        if heap.len() >= max_panels {
            return Err(Error::Quadrature {
                achieved: total_error,
                requested: abs_tol,
            });
        }
        let worst = heap.pop().expect("heap holds at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // Panel already at floating-point resolution.
            return Err(Error::Quadrature {
                achieved: total_error,
                requested: abs_tol,
            });
        }
        let left = kronrod_panel(&mut f, worst.a, mid);
        let right = kronrod_panel(&mut f, mid, worst.b);
        evaluations += 30;
        heap.push(left);
        heap.push(right);
        // Re-summing avoids drift from repeated subtraction.
        total_error = heap.iter().map(|p| p.error).sum();
    }
    // Sum in interval order so the result does not depend on heap layout.
    let mut panels = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value = panels.iter().map(|p| p.value).sum();
    Ok(QuadResult {
        value,
        error: total_error,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_interval_length() {
        let k: f64 = WGK[7] + 2.0 * WGK[..7].iter().sum::<f64>();
        let g: f64 = WG[3] + 2.0 * WG[..3].iter().sum::<f64>();
        assert!((k - 2.0).abs() < 1e-15);
        assert!((g - 2.0).abs() < 1e-15);
    }

    #[test]
    fn single_panel_is_exact_for_low_degree_polynomials() {
        // Kronrod 15 is exact through degree 22, Gauss 7 through degree 13.
        for deg in 0..=22 {
            let mut f = |x: f64| x.powi(deg);
            let p = kronrod_panel(&mut f, -1.0, 1.0);
            let exact = if deg % 2 == 1 {
                0.0
            } else {
                2.0 / (deg as f64 + 1.0)
            };
            assert!((p.value - exact).abs() < 1e-14, "degree {deg}");
            if deg <= 13 {
                assert!(p.error < 1e-14, "degree {deg}");
            }
        }
    }

    #[test]
    fn oscillatory_integral() {
        let r = integrate(|x| (10.0 * x).sin(), 0.0, 3.0, 1e-12, 1000).unwrap();
        let exact = (1.0 - 30f64.cos()) / 10.0;
        assert!((r.value - exact).abs() < 1e-12);
    }

    #[test]
    fn reports_non_convergence() {
        let r = integrate(|x| (1.0 / x).sin(), 1e-8, 1.0, 1e-14, 4);
        assert!(matches!(r, Err(Error::Quadrature { .. })));
    }

    #[test]
    fn rejects_bad_intervals() {
        assert!(integrate(|x| x, 1.0, 0.0, 1e-10, 10).is_err());
        assert!(integrate(|x| x, 0.0, 1.0, 0.0, 10).is_err());
        assert_eq!(integrate(|x| x, 1.0, 1.0, 1e-10, 10).unwrap().value, 0.0);
    }
}
