//! Self-checks of the library invariants, grouped by module.
//!
//! Every check reduces to one measured quantity compared against a
//! tolerance. Random samples come from a fixed seed, so reports are
//! reproducible.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cavity::{enumerate_modes_below, tm_frequency, Geometry, ModeIndex, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::fields::{
    boundary_residual, helmholtz_residual, orthogonality_check, random_interior_points,
};
use crate::roots::{bessel_zeros, cross_product, cross_product_zeros};
use crate::specfun::{bessel_j, evaluate, neumann_n, Family};

const SEED: u64 = 0x636f_6178;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Module {
    Specfun,
    Roots,
    Cavity,
    Fields,
}

impl Module {
    pub const ALL: [Module; 4] = [
        Module::Specfun,
        Module::Roots,
        Module::Cavity,
        Module::Fields,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Module::Specfun => "specfun",
            Module::Roots => "roots",
            Module::Cavity => "cavity",
            Module::Fields => "fields",
        }
    }
}

impl fmt::Display for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Module {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Module::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown module {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub module: Module,
    pub name: &'static str,
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Set when the check could not be evaluated.
    pub error: Option<String>,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {}::{} measured {:e} tolerance {:e}",
            self.module, self.name, self.measured, self.tolerance
        )?;
        if let Some(e) = &self.error {
            write!(f, " ({e})")?;
        }
        Ok(())
    }
}

/// `|X_{m-1} + X_{m+1} - (2m/x) X_m|` relative to the largest of the three terms.
pub fn recursion_residual(family: Family, m: i32, x: f64) -> Result<f64> {
    let lo = evaluate(family, m - 1, x)?.value;
    let mid = evaluate(family, m, x)?.value;
    let hi = evaluate(family, m + 1, x)?.value;
    let t = mid * (2.0 * m as f64 / x);
    let scale = lo.norm().max(hi.norm()).max(t.norm());
    Ok((lo + hi - t).norm() / scale)
}

/// Recursion-based derivative against a five-point central difference with
/// step `1e-3 min(x, 1)`, relative to `(|X_{m-1}| + |X_{m+1}|) / 2`.
pub fn derivative_residual(family: Family, m: i32, x: f64) -> Result<f64> {
    let h = 1.0e-3 * x.min(1.0);
    let f = |t: f64| evaluate(family, m, t).map(|r| r.value);
    let fd = (f(x - 2.0 * h)? - f(x - h)? * 8.0 + f(x + h)? * 8.0 - f(x + 2.0 * h)?) / (12.0 * h);
    let lo = evaluate(family, m - 1, x)?.value;
    let hi = evaluate(family, m + 1, x)?.value;
    let d: Complex64 = (lo - hi) * 0.5;
    let scale = 0.5 * (lo.norm() + hi.norm());
    Ok((fd - d).norm() / scale)
}

/// Brute-force spectrum below `omega_max` over `m, n, p <= cap`.
pub fn brute_force_modes(
    geometry: &Geometry,
    omega_max: f64,
    cap: u32,
) -> Result<BTreeSet<ModeIndex>> {
    let mut set = BTreeSet::new();
    for m in 0..=cap {
        for n in 1..=cap {
            for p in 0..=cap {
                let e = tm_frequency(geometry, ModeIndex::new(m, n, p)?)?;
                if e.omega <= omega_max {
                    set.insert(e.index);
                }
            }
        }
    }
    Ok(set)
}

struct Suite {
    results: Vec<CheckResult>,
    tolerance_override: Option<f64>,
}

impl Suite {
    fn check(
        &mut self,
        module: Module,
        name: &'static str,
        tolerance: f64,
        measure: impl FnOnce() -> Result<f64>,
    ) {
        let tolerance = self.tolerance_override.unwrap_or(tolerance);
        let (measured, error) = match measure() {
            Ok(v) => (v, None),
            Err(e) => (f64::NAN, Some(e.to_string())),
        };
        self.results.push(CheckResult {
            module,
            name,
            measured,
            tolerance,
            passed: measured <= tolerance,
            error,
        });
    }
}

fn max_of(values: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    let mut worst = 0.0f64;
    for v in values {
        let v = v?;
        if v.is_nan() {
            return Ok(f64::NAN);
        }
        worst = worst.max(v);
    }
    Ok(worst)
}

fn specfun_checks(s: &mut Suite) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let samples: Vec<(Family, i32, f64)> = (0..2000)
        .map(|_| {
            (
                Family::ALL[rng.gen_range(0..4)],
                rng.gen_range(0..20),
                rng.gen_range(0.1..50.0),
            )
        })
        .collect();
    s.check(Module::Specfun, "three_term_recursion", 1e-10, || {
        max_of(samples.iter().map(|&(f, m, x)| recursion_residual(f, m, x)))
    });
    s.check(
        Module::Specfun,
        "derivative_vs_finite_difference",
        1e-6,
        || {
            max_of(
                samples
                    .iter()
                    .map(|&(f, m, x)| derivative_residual(f, m, x)),
            )
        },
    );
    s.check(Module::Specfun, "wronskian", 1e-12, || {
        max_of(samples.iter().map(|&(_, m, x)| {
            let w = bessel_j(m + 1, x)?.value * neumann_n(m, x)?.value
                - bessel_j(m, x)?.value * neumann_n(m + 1, x)?.value;
            let expected = 2.0 / (PI * x);
            Ok((w - expected).abs() / expected)
        }))
    });
    s.check(Module::Specfun, "negative_order_reflection", 0.0, || {
        max_of(samples.iter().map(|&(f, m, x)| {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            Ok((evaluate(f, -m, x)?.value - evaluate(f, m, x)?.value * sign).norm())
        }))
    });
}

fn roots_checks(s: &mut Suite) {
    s.check(Module::Roots, "bessel_zero_residual", 1e-13, || {
        max_of((0..=5).map(|m| {
            let t = bessel_zeros(m, 20)?;
            max_of(
                t.zeros
                    .iter()
                    .map(|z| Ok(bessel_j(m, z.value)?.value.abs())),
            )
        }))
    });
    s.check(Module::Roots, "bessel_zero_interlacing", 0.0, || {
        // Count of violated inequalities x_mn < x_{m+1,n} < x_{m,n+1}.
        let tables = (0..=6)
            .map(|m| bessel_zeros(m, 21).map(|t| t.values()))
            .collect::<Result<Vec<_>>>()?;
        let mut bad = 0;
        for m in 0..6 {
            for n in 0..20 {
                if !(tables[m][n] < tables[m + 1][n] && tables[m + 1][n] < tables[m][n + 1]) {
                    bad += 1;
                }
            }
        }
        Ok(bad as f64)
    });
    s.check(Module::Roots, "cross_product_residual", 1e-10, || {
        let mut all = Vec::new();
        for m in 0..=2 {
            for (a, b) in [(1.0, 2.0), (1.0, 1.1), (0.5, 3.0)] {
                let t = cross_product_zeros(m, a, b, 10)?;
                all.push(max_of(t.zeros.iter().map(|z| Ok(z.residual))));
                // Direct evaluation relative to the local scale of J and N.
                all.push(max_of(t.zeros.iter().map(|z| {
                    let d = cross_product(m as u32, a, b, z.value)?;
                    let g = z.value;
                    let scale = (bessel_j(m, g * b)?.value * neumann_n(m, g * a)?.value).abs()
                        + (bessel_j(m, g * a)?.value * neumann_n(m, g * b)?.value).abs();
                    Ok(d.abs() / scale)
                })));
            }
        }
        max_of(all)
    });
}

fn cavity_checks(s: &mut Suite) {
    s.check(
        Module::Cavity,
        "enumeration_matches_brute_force",
        0.0,
        || {
            let mut mismatches = 0usize;
            for g in [
                Geometry::cylinder(1.0, 1.0)?,
                Geometry::annulus(1.0, 2.0, 1.0)?,
            ] {
                let cutoff = SPEED_OF_LIGHT * 8.0 / g.outer_radius();
                let fast: BTreeSet<ModeIndex> = enumerate_modes_below(&g, cutoff)?
                    .into_iter()
                    .map(|e| e.index)
                    .collect();
                let slow = brute_force_modes(&g, cutoff, 12)?;
                mismatches += fast.symmetric_difference(&slow).count();
            }
            Ok(mismatches as f64)
        },
    );
    s.check(Module::Cavity, "frequency_scaling", 1e-10, || {
        let g = Geometry::annulus(1.0, 2.0, 1.0)?;
        let base = enumerate_modes_below(&g, SPEED_OF_LIGHT * 6.0)?;
        let mut worst = 0.0f64;
        for scale in [0.5, 2.0, 10.0] {
            let gs = g.scaled(scale)?;
            for e in &base {
                let w = tm_frequency(&gs, e.index)?.omega;
                worst = worst.max((w * scale - e.omega).abs() / e.omega);
            }
        }
        Ok(worst)
    });
}

fn fields_checks(s: &mut Suite) {
    s.check(Module::Fields, "wall_residual", 1e-9, || {
        let mut all = Vec::new();
        for g in [
            Geometry::cylinder(1.0, 1.0)?,
            Geometry::annulus(1.0, 2.0, 1.0)?,
        ] {
            for e in enumerate_modes_below(&g, SPEED_OF_LIGHT * 8.0 / g.outer_radius())? {
                all.push(boundary_residual(&g, e.index));
            }
        }
        max_of(all)
    });
    s.check(Module::Fields, "orthogonality", 1e-8, || {
        let mut all = Vec::new();
        for nu in 0..=3 {
            for n in 1..=5 {
                for k in 1..=5 {
                    all.push(
                        orthogonality_check(nu, n, k, 1.0).map(|o| (o.integral - o.expected).abs()),
                    );
                }
            }
        }
        max_of(all)
    });
    s.check(Module::Fields, "helmholtz_residual", 1e-4, || {
        let mut all = Vec::new();
        for (i, g) in [
            Geometry::cylinder(1.0, 1.0)?,
            Geometry::annulus(1.0, 2.0, 1.0)?,
        ]
        .iter()
        .enumerate()
        {
            let pts = random_interior_points(g, 100, SEED + i as u64);
            for idx in [(0, 1, 1), (1, 2, 0), (3, 1, 2)] {
                all.push(helmholtz_residual(
                    g,
                    ModeIndex::new(idx.0, idx.1, idx.2)?,
                    &pts,
                ));
            }
        }
        max_of(all)
    });
}

/// Runs the checks of `modules` (all modules when empty).
///
/// `tolerance_override` replaces every tolerance; it exists to exercise the
/// failure path.
pub fn run_checks(modules: &[Module], tolerance_override: Option<f64>) -> Vec<CheckResult> {
    let mut suite = Suite {
        results: Vec::new(),
        tolerance_override,
    };
    for m in Module::ALL {
        if !modules.is_empty() && !modules.contains(&m) {
            continue;
        }
        match m {
            Module::Specfun => specfun_checks(&mut suite),
            Module::Roots => roots_checks(&mut suite),
            Module::Cavity => cavity_checks(&mut suite),
            Module::Fields => fields_checks(&mut suite),
        }
    }
    suite.results
}
