//! Radial eigenvalues: positive zeros `x_mn` of `J_m` for the solid cylinder
//! and roots `gamma_mn` of the cross product
//! `D(gamma) = J_m(gamma b) N_m(gamma a) - J_m(gamma a) N_m(gamma b)` for the
//! annulus.
//!
//! Both searches march a sign scan forward from a certified lower bound and
//! polish each isolated sign change with [`refine_root`]. Zeros are produced
//! in order, so the `n`-th value only depends on the `n - 1` before it and
//! tables of different lengths agree bit for bit on their common prefix.

use std::collections::{HashMap, VecDeque};
use std::f64::consts::PI;
use std::sync::{Arc, OnceLock, RwLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::{j_nonneg, y_nonneg, Order, MAX_ARGUMENT};

/// Upper bound on the number of zeros per table.
pub const MAX_ZERO_COUNT: usize = 1000;
/// Smallest accepted inner/outer radius ratio for the annulus.
pub const MIN_RADIUS_RATIO: f64 = 1.0e-3;
/// Abscissa tolerance of the refinement stage.
pub const ABSCISSA_TOLERANCE: f64 = 1.0e-14;

// Consecutive zeros of J_m are more than 3.11 apart for every m >= 0, so a
// 0.5 step brackets at most one zero and nothing lies within 2.5 of the last.
const BESSEL_SCAN_STEP: f64 = 0.5;
const BESSEL_MIN_GAP: f64 = 2.5;
const MAX_REFINE_ITERATIONS: usize = 200;
const MAX_SPLIT_DEPTH: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ZeroKind {
    Cylinder,
    Annulus,
}

/// A sign-change bracket `[lo, hi]` with the function values at both ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    fn has_sign_change(&self) -> bool {
        sign_change(self.f_lo, self.f_hi)
    }
}

#[inline]
fn sign_change(a: f64, b: f64) -> bool {
    (a <= 0.0 && b >= 0.0) || (a >= 0.0 && b <= 0.0)
}

/// One refined zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Zero {
    pub value: f64,
    /// `|J_m(x)|` for cylinder zeros, `|D(gamma)| / max |D|` over the
    /// bracketing window for annulus zeros.
    pub residual: f64,
    /// Residual-based bound on the distance to the exact zero.
    pub error_bound: f64,
    /// The sign-change bracket the zero was refined from.
    pub bracket: (f64, f64),
}

/// An ordered table of radial eigenvalues for one order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroTable {
    pub m: Order,
    pub kind: ZeroKind,
    /// `(a, b)` in meters for annulus tables.
    pub geometry: Option<(f64, f64)>,
    pub zeros: Vec<Zero>,
}

impl ZeroTable {
    pub fn values(&self) -> Vec<f64> {
        self.zeros.iter().map(|z| z.value).collect()
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    /// The `n`-th zero, one-based.
    pub fn nth(&self, n: usize) -> Option<&Zero> {
        n.checked_sub(1).and_then(|i| self.zeros.get(i))
    }
}

/// Polishes a bracketed root with a bisection-safeguarded secant iteration.
///
/// Secant steps use the Illinois weighting once the same end has been kept
/// twice; whenever a step fails to halve the bracket the next one bisects.
/// Stops once the bracket is narrower than `max(abs_tol, 4 eps |x|)` and
/// returns the end with the smaller residual as `(x, f(x))`.
pub fn refine_root<F>(
    mut f: F,
    bracket: Bracket,
    abs_tol: f64,
    seed: Option<f64>,
) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let Bracket {
        lo: mut a,
        hi: mut b,
        f_lo: mut fa,
        f_hi: mut fb,
    } = bracket;
    if !(a < b) || !sign_change(fa, fb) {
        return Err(Error::Bracket(format!(
            "[{a}, {b}] does not bracket a sign change"
        )));
    }
    if fa == 0.0 {
        return Ok((a, 0.0));
    }
    if fb == 0.0 {
        return Ok((b, 0.0));
    }

    let mut bisect_next = false;
    let mut kept: i8 = 0;
    let mut trial = seed.filter(|s| *s > a && *s < b);
    for _ in 0..MAX_REFINE_ITERATIONS {
        let width = b - a;
        let tol = abs_tol.max(4.0 * f64::EPSILON * a.abs().max(b.abs()));
        if width <= tol {
            break;
        }
        let mid = a + 0.5 * width;
        let mut x = match trial.take() {
            Some(s) => s,
            None if bisect_next => mid,
            None => {
                let (wa, wb) = match kept {
                    k if k <= -2 => (fa * 0.5, fb),
                    k if k >= 2 => (fa, fb * 0.5),
                    _ => (fa, fb),
                };
                b - wb * (b - a) / (wb - wa)
            }
        };
        if !(x > a + 0.5 * tol && x < b - 0.5 * tol) {
            x = mid;
        }
        let fx = f(x)?;
        if fx == 0.0 {
            return Ok((x, 0.0));
        }
        if sign_change(fa, fx) {
            b = x;
            fb = fx;
            kept = if kept < 0 { kept - 1 } else { -1 };
        } else {
            a = x;
            fa = fx;
            kept = if kept > 0 { kept + 1 } else { 1 };
        }
        bisect_next = !bisect_next && (b - a) > 0.5 * width;
    }
    Ok(if fa.abs() <= fb.abs() {
        (a, fa)
    } else {
        (b, fb)
    })
}

fn eval_j(m: u32, x: f64) -> Result<f64> {
    if x > MAX_ARGUMENT {
        return Err(Error::Domain {
            x,
            domain: "0 < x <= 1e4",
        });
    }
    Ok(j_nonneg(m, x).0)
}

/// McMahon's large-zero expansion of `x_mn`.
pub fn mcmahon_estimate(m: u32, n: usize) -> f64 {
    let mu = 4.0 * (m as f64) * (m as f64);
    let beta = (n as f64 + 0.5 * m as f64 - 0.25) * PI;
    let e = 8.0 * beta;
    let e2 = e * e;
    beta - (mu - 1.0) / e
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e * e2)
        - 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * e * e2 * e2)
}

/// Successive positive zeros of `J_m`.
#[derive(Debug, Clone)]
pub struct BesselZeros {
    m: u32,
    last: Option<f64>,
    found: usize,
    failed: bool,
}

impl BesselZeros {
    /// Zeros of `J_m`; negative orders share the zeros of `J_{|m|}`.
    pub fn new(m: i32) -> Result<Self> {
        let m = Order::new(m)?.unsigned_abs();
        Ok(BesselZeros {
            m,
            last: None,
            found: 0,
            failed: false,
        })
    }

    fn next_zero(&mut self) -> Result<Zero> {
        let m = self.m;
        // J_m > 0 on (0, m], so the first zero lies beyond max(m, 0).
        let mut lo = match self.last {
            Some(z) => z + BESSEL_MIN_GAP,
            None => m as f64,
        };
        let mut f_lo = eval_j(m, lo)?;
        let bracket = loop {
            let hi = lo + BESSEL_SCAN_STEP;
            let f_hi = eval_j(m, hi)?;
            if sign_change(f_lo, f_hi) {
                break Bracket { lo, hi, f_lo, f_hi };
            }
            lo = hi;
            f_lo = f_hi;
        };
        let guess = mcmahon_estimate(m, self.found + 1);
        let (x, fx) = refine_root(|x| eval_j(m, x), bracket, ABSCISSA_TOLERANCE, Some(guess))?;
        let slope = 0.5 * (j_nonneg(m.saturating_sub(1), x).0 - j_nonneg(m + 1, x).0);
        let slope = if m == 0 { -j_nonneg(1, x).0 } else { slope };
        let step_bound = 4.0 * f64::EPSILON * x.abs();
        Ok(Zero {
            value: x,
            residual: fx.abs(),
            error_bound: fx.abs() / slope.abs().max(f64::MIN_POSITIVE) + step_bound,
            bracket: (bracket.lo, bracket.hi),
        })
    }
}

impl Iterator for BesselZeros {
    type Item = Result<Zero>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        match self.next_zero() {
            Ok(z) => {
                self.last = Some(z.value);
                self.found += 1;
                Some(Ok(z))
            }
            Err(e) => {
                self.failed = true;
                Some(Err(e))
            }
        }
    }
}

fn check_count(count: usize) -> Result<()> {
    if count == 0 || count > MAX_ZERO_COUNT {
        return Err(Error::CountRange {
            count,
            max: MAX_ZERO_COUNT,
        });
    }
    Ok(())
}

/// First `count` positive zeros of `J_m`.
pub fn bessel_zeros(m: i32, count: usize) -> Result<ZeroTable> {
    check_count(count)?;
    let order = Order::new(m.abs())?;
    let zeros = BesselZeros::new(m)?
        .take(count)
        .collect::<Result<Vec<_>>>()?;
    Ok(ZeroTable {
        m: order,
        kind: ZeroKind::Cylinder,
        geometry: None,
        zeros,
    })
}

/// Validates an annulus cross-section.
pub fn check_annulus(a: f64, b: f64) -> Result<()> {
    if !(a.is_finite() && b.is_finite()) || a <= 0.0 {
        return Err(Error::Geometry(format!(
            "radii must be finite and positive (a = {a}, b = {b})"
        )));
    }
    if a >= b {
        return Err(Error::Geometry(format!(
            "inner radius a = {a} must be smaller than outer radius b = {b} (a < b required)"
        )));
    }
    if a / b < MIN_RADIUS_RATIO {
        return Err(Error::Geometry(format!(
            "a/b = {} is below {MIN_RADIUS_RATIO}; use the solid cylinder instead",
            a / b
        )));
    }
    Ok(())
}

/// The annulus determinant `J_m(gamma b) N_m(gamma a) - J_m(gamma a) N_m(gamma b)`.
pub fn cross_product(m: u32, a: f64, b: f64, gamma: f64) -> Result<f64> {
    let (xa, xb) = (gamma * a, gamma * b);
    if !(xa > 0.0) || xb > MAX_ARGUMENT {
        return Err(Error::Domain {
            x: if xa > 0.0 { xb } else { xa },
            domain: "0 < x <= 1e4",
        });
    }
    let ja = j_nonneg(m, xa).0;
    let jb = j_nonneg(m, xb).0;
    let na = y_nonneg(m, xa)?.0;
    let nb = y_nonneg(m, xb)?.0;
    Ok(jb * na - ja * nb)
}

/// Successive positive roots of the annulus cross product.
#[derive(Debug, Clone)]
pub struct CrossProductZeros {
    m: u32,
    a: f64,
    b: f64,
    step: f64,
    cursor: f64,
    f_cursor: f64,
    pending: VecDeque<(Bracket, f64)>,
    failed: bool,
}

impl CrossProductZeros {
    pub fn new(m: i32, a: f64, b: f64) -> Result<Self> {
        check_annulus(a, b)?;
        let m = Order::new(m)?.unsigned_abs();
        // The annulus lies inside the disk of radius b, so by domain
        // monotonicity every root exceeds x_m1 / b.
        let first_disk_zero = BesselZeros::new(m as i32)?
            .next()
            .expect("zero iterator yields at least one item")?;
        let cursor = first_disk_zero.value / b;
        let f_cursor = cross_product(m, a, b, cursor)?;
        Ok(CrossProductZeros {
            m,
            a,
            b,
            step: (PI / (b - a)).min(0.5) / 4.0,
            cursor,
            f_cursor,
            pending: VecDeque::new(),
            failed: false,
        })
    }

    fn d(&self, gamma: f64) -> Result<f64> {
        cross_product(self.m, self.a, self.b, gamma)
    }

    /// Splits a window until every piece holds exactly one sign change.
    /// Returns each piece with the largest `|D|` seen on it.
    fn isolate(&self, window: Bracket, depth: u32, out: &mut Vec<(Bracket, f64)>) -> Result<()> {
        const PIECES: usize = 4;
        let mut pts = Vec::with_capacity(PIECES + 1);
        pts.push((window.lo, window.f_lo));
        for i in 1..PIECES {
            let g = window.lo + (window.hi - window.lo) * i as f64 / PIECES as f64;
            pts.push((g, self.d(g)?));
        }
        pts.push((window.hi, window.f_hi));
        let window_max = pts.iter().fold(0.0_f64, |acc, p| acc.max(p.1.abs()));

        let changes: Vec<usize> = (0..PIECES)
            .filter(|&i| sign_change(pts[i].1, pts[i + 1].1))
            .collect();
        if changes.len() <= 1 || depth >= MAX_SPLIT_DEPTH {
            if changes.len() > 1 {
                return Err(Error::Bracket(format!(
                    "could not separate roots near gamma = {}",
                    window.lo
                )));
            }
            out.push((window, window_max));
            return Ok(());
        }
        for i in changes {
            let piece = Bracket {
                lo: pts[i].0,
                hi: pts[i + 1].0,
                f_lo: pts[i].1,
                f_hi: pts[i + 1].1,
            };
            self.isolate(piece, depth + 1, out)?;
        }
        Ok(())
    }

    fn next_zero(&mut self) -> Result<Zero> {
        while self.pending.is_empty() {
            let hi = self.cursor + self.step;
            let f_hi = self.d(hi)?;
            let window = Bracket {
                lo: self.cursor,
                hi,
                f_lo: self.f_cursor,
                f_hi,
            };
            self.cursor = hi;
            self.f_cursor = f_hi;
            if window.has_sign_change() {
                let mut pieces = Vec::new();
                self.isolate(window, 0, &mut pieces)?;
                self.pending.extend(pieces);
            }
        }
        let (bracket, window_max) = self.pending.pop_front().expect("pending is non-empty");
        let (m, a, b) = (self.m, self.a, self.b);
        let (gamma, d) = refine_root(
            |g| cross_product(m, a, b, g),
            bracket,
            ABSCISSA_TOLERANCE,
            None,
        )?;
        let scale = window_max.max(bracket.f_lo.abs()).max(bracket.f_hi.abs());
        let slope = (bracket.f_hi - bracket.f_lo) / (bracket.hi - bracket.lo);
        Ok(Zero {
            value: gamma,
            residual: if scale > 0.0 { d.abs() / scale } else { 0.0 },
            error_bound: d.abs() / slope.abs().max(f64::MIN_POSITIVE) + 4.0 * f64::EPSILON * gamma,
            bracket: (bracket.lo, bracket.hi),
        })
    }
}

impl Iterator for CrossProductZeros {
    type Item = Result<Zero>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        let item = self.next_zero();
        self.failed = item.is_err();
        Some(item)
    }
}

/// First `count` positive roots of the annulus cross product, in rad/m.
pub fn cross_product_zeros(m: i32, a: f64, b: f64, count: usize) -> Result<ZeroTable> {
    check_count(count)?;
    let zeros = CrossProductZeros::new(m, a, b)?
        .take(count)
        .collect::<Result<Vec<_>>>()?;
    Ok(ZeroTable {
        m: Order::new(m.abs())?,
        kind: ZeroKind::Annulus,
        geometry: Some((a, b)),
        zeros,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum CacheKey {
    Bessel(u32),
    Cross(u32, u64, u64),
}

/// Completed zero tables shared across threads; readers never block each
/// other and a table is only replaced by a longer one.
#[derive(Debug, Default)]
pub struct ZeroCache {
    tables: RwLock<HashMap<CacheKey, Arc<ZeroTable>>>,
}

impl ZeroCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// The process-wide cache.
    pub fn global() -> &'static ZeroCache {
        static CACHE: OnceLock<ZeroCache> = OnceLock::new();
        CACHE.get_or_init(ZeroCache::new)
    }

    /// A table holding at least the first `count` zeros of `J_m`.
    pub fn bessel(&self, m: i32, count: usize) -> Result<Arc<ZeroTable>> {
        let key = CacheKey::Bessel(m.unsigned_abs());
        self.get_or_compute(key, count, |n| bessel_zeros(m, n))
    }

    /// A table holding at least the first `count` annulus roots.
    pub fn cross(&self, m: i32, a: f64, b: f64, count: usize) -> Result<Arc<ZeroTable>> {
        let key = CacheKey::Cross(m.unsigned_abs(), a.to_bits(), b.to_bits());
        self.get_or_compute(key, count, |n| cross_product_zeros(m, a, b, n))
    }

    fn get_or_compute<F>(&self, key: CacheKey, count: usize, compute: F) -> Result<Arc<ZeroTable>>
    where
        F: Fn(usize) -> Result<ZeroTable>,
    {
        check_count(count)?;
        let cached_len = {
            let tables = self.tables.read().unwrap_or_else(|e| e.into_inner());
            match tables.get(&key) {
                Some(t) if t.len() >= count => return Ok(Arc::clone(t)),
                Some(t) => t.len(),
                None => 0,
            }
        };
        // Grow geometrically so repeated lookups of rising n stay cheap.
        let target = count.max(2 * cached_len).max(8).min(MAX_ZERO_COUNT);
        let table = match compute(target) {
            Ok(t) => t,
            Err(_) if target > count => compute(count)?,
            Err(e) => return Err(e),
        };
        let table = Arc::new(table);
        let mut tables = self.tables.write().unwrap_or_else(|e| e.into_inner());
        let entry = tables.entry(key).or_insert_with(|| Arc::clone(&table));
        if entry.len() < table.len() {
            *entry = Arc::clone(&table);
        }
        Ok(Arc::clone(entry))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn refine_finds_simple_root() {
        let f = |x: f64| Ok(x * x - 2.0);
        let br = Bracket {
            lo: 1.0,
            hi: 2.0,
            f_lo: -1.0,
            f_hi: 2.0,
        };
        let (x, _) = refine_root(f, br, 1e-14, None).unwrap();
        assert!((x - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn refine_rejects_non_bracket() {
        let br = Bracket {
            lo: 1.0,
            hi: 2.0,
            f_lo: 1.0,
            f_hi: 2.0,
        };
        assert!(matches!(
            refine_root(|x| Ok(x), br, 1e-14, None),
            Err(Error::Bracket(_))
        ));
    }

    #[test]
    fn refine_handles_flat_one_sided_functions() {
        // Regula falsi alone stalls on this one.
        let f = |x: f64| Ok(x.powi(9) - 1e-9);
        let br = Bracket {
            lo: -1.0,
            hi: 4.0,
            f_lo: -1.0 - 1e-9,
            f_hi: 4f64.powi(9) - 1e-9,
        };
        let mut calls = 0;
        let (x, _) = refine_root(
            |x| {
                calls += 1;
                f(x)
            },
            br,
            1e-14,
            None,
        )
        .unwrap();
        assert!((x - 0.1).abs() < 1e-13, "{x}");
        assert!(calls < 150, "{calls}");
    }

    #[test]
    fn first_zeros_of_j0_and_j1() {
        let t = bessel_zeros(0, 3).unwrap();
        let expected = [
            2.404_825_557_695_773,
            5.520_078_110_286_311,
            8.653_727_912_911_013,
        ];
        for (z, e) in t.values().iter().zip(expected) {
            assert!((z - e).abs() < 1e-10);
        }
        let t = bessel_zeros(1, 1).unwrap();
        assert!((t.values()[0] - 3.831_705_970_207_512).abs() < 1e-10);
    }

    #[test]
    fn interlacing() {
        let z0 = bessel_zeros(0, 2).unwrap().values();
        let z1 = bessel_zeros(1, 1).unwrap().values();
        assert!(z0[0] < z1[0] && z1[0] < z0[1]);
    }

    #[test]
    fn negative_order_shares_zeros() {
        assert_eq!(bessel_zeros(-1, 4).unwrap(), bessel_zeros(1, 4).unwrap());
    }

    #[test]
    fn zeros_lie_in_their_brackets() {
        for m in [0, 7, 50] {
            for z in bessel_zeros(m, 12).unwrap().zeros {
                assert!(z.bracket.0 <= z.value && z.value <= z.bracket.1);
                assert!(z.residual <= 1e-12);
                assert!(z.error_bound <= 1e-10);
            }
        }
    }

    #[test]
    fn count_and_order_validation() {
        assert!(matches!(bessel_zeros(0, 0), Err(Error::CountRange { .. })));
        assert!(matches!(
            bessel_zeros(0, 1001),
            Err(Error::CountRange { .. })
        ));
        assert!(matches!(bessel_zeros(51, 1), Err(Error::OrderRange { .. })));
        assert!(matches!(
            cross_product_zeros(0, 2.0, 1.0, 1),
            Err(Error::Geometry(_))
        ));
        assert!(matches!(
            cross_product_zeros(0, 1e-4, 1.0, 1),
            Err(Error::Geometry(_))
        ));
        assert!(matches!(
            cross_product_zeros(0, 0.0, 1.0, 1),
            Err(Error::Geometry(_))
        ));
    }

    #[test]
    fn annulus_first_root_near_thin_shell_limit() {
        let t = cross_product_zeros(0, 1.0, 2.0, 1).unwrap();
        let g = t.values()[0];
        assert!((g - PI).abs() < 0.1 * PI, "{g}");
        assert!(t.zeros[0].residual < 1e-10);

        let t = cross_product_zeros(0, 0.99, 1.0, 1).unwrap();
        let g = t.values()[0];
        let thin = PI / 0.01;
        assert!((g - thin).abs() < 0.05 * thin, "{g}");
    }

    #[test]
    fn cross_product_scale_covariance() {
        let base = cross_product_zeros(0, 1.0, 2.0, 5).unwrap().values();
        let scaled = cross_product_zeros(0, 2.0, 4.0, 5).unwrap().values();
        for (g, s) in base.iter().zip(&scaled) {
            assert!((g / 2.0 - s).abs() <= 1e-10 * s);
        }
    }

    #[test]
    fn cache_returns_prefix_consistent_tables() {
        let cache = ZeroCache::new();
        let short = cache.bessel(3, 2).unwrap();
        let long = cache.bessel(3, 40).unwrap();
        assert!(long.len() >= 40);
        assert_eq!(short.zeros[..2], long.zeros[..2]);
        let direct = bessel_zeros(3, 40).unwrap();
        assert_eq!(direct.zeros[..], long.zeros[..40]);
    }
}
