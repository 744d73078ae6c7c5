//! TM mode fields of cylindrical and annular cavities.
//!
//! A mode `(m, n, p)` with azimuthal sign `s` has axial field
//! `E_z = A R(rho) exp(i s m phi) cos(kz z)`, with transverse parts
//! `E_t = grad_t(dE_z/dz) / gamma^2` and
//! `B_t = i omega / (c^2 gamma^2) z_hat x grad_t E_z`.

use std::f64::consts::TAU;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;

use crate::cavity::{axial_wavenumber, Geometry, ModeIndex, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::quad::{integrate, QuadResult};
use crate::roots::ZeroCache;
use crate::specfun::{bessel_j, neumann_n, Order};

/// Samples per wall direction in [`boundary_residual`].
pub const WALL_GRID: usize = 64;
/// Radial/axial step of the Helmholtz stencil, as a fraction of the outer radius.
pub const HELMHOLTZ_STEP: f64 = 1.0e-3;

const CONDITIONING_FLOOR: f64 = 1.0e-300;
const MAX_QUAD_PANELS: usize = 20_000;

/// Radial profile `R(rho) = coeff_j J_m(gamma rho) + coeff_n N_m(gamma rho)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialSolution {
    pub m: u32,
    /// Radial eigenvalue, rad/m.
    pub gamma: f64,
    pub coeff_j: f64,
    pub coeff_n: f64,
}

/// `R`, `dR/drho` and `R/rho` at one radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialValues {
    pub r: f64,
    pub dr: f64,
    /// `R/rho`, replaced by its limit at `rho = 0`.
    pub r_over_rho: f64,
}

impl RadialSolution {
    /// Profile for an explicit `gamma`, normalized so that `coeff_j = 1`.
    ///
    /// For the annulus `coeff_n = -J_m(gamma a) / N_m(gamma a)`, which makes
    /// `R(a) = 0` for any `gamma`.
    pub fn with_gamma(geometry: &Geometry, m: u32, gamma: f64) -> Result<Self> {
        Order::new(m as i32)?;
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "gamma = {gamma} must be finite and positive"
            )));
        }
        let coeff_n = match geometry.inner_radius() {
            None => 0.0,
            Some(a) => {
                let order = m as i32;
                let n = neumann_n(order, gamma * a)?.value;
                if n.abs() < CONDITIONING_FLOOR {
                    return Err(Error::Conditioning(format!(
                        "N_{m}({}) = {n:e} is too small to fix the inner-wall coefficient",
                        gamma * a
                    )));
                }
                -bessel_j(order, gamma * a)?.value / n
            }
        };
        Ok(RadialSolution {
            m,
            gamma,
            coeff_j: 1.0,
            coeff_n,
        })
    }

    pub fn value(&self, rho: f64) -> Result<f64> {
        let order = self.m as i32;
        let x = self.gamma * rho;
        let mut v = self.coeff_j * bessel_j(order, x)?.value;
        if self.coeff_n != 0.0 {
            v += self.coeff_n * neumann_n(order, x)?.value;
        }
        Ok(v)
    }

    pub fn values(&self, rho: f64) -> Result<RadialValues> {
        let order = self.m as i32;
        let x = self.gamma * rho;
        let combo = |k: i32| -> Result<f64> {
            let mut v = self.coeff_j * bessel_j(k, x)?.value;
            if self.coeff_n != 0.0 {
                v += self.coeff_n * neumann_n(k, x)?.value;
            }
            Ok(v)
        };
        let r = combo(order)?;
        let lower = combo(order - 1)?;
        let upper = combo(order + 1)?;
        let dr = 0.5 * self.gamma * (lower - upper);
        let r_over_rho = if rho > 0.0 {
            r / rho
        } else if self.m == 1 {
            // J_1(x) ~ x/2
            0.5 * self.coeff_j * self.gamma
        } else {
            0.0
        };
        Ok(RadialValues { r, dr, r_over_rho })
    }
}

/// Radial profile of mode `(m, n)` in `geometry`.
pub fn radial_solution(geometry: &Geometry, m: u32, n: u32) -> Result<RadialSolution> {
    if n == 0 {
        return Err(Error::ModeIndex("radial index n starts at 1".into()));
    }
    let gamma = geometry.radial_eigenvalue(m, n)?;
    RadialSolution::with_gamma(geometry, m, gamma)
}

/// Sign of the azimuthal exponent `exp(+- i m phi)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Azimuthal dependence of a sampled mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Azimuth {
    Exp(Sign),
    /// `cos(m phi)`, the half-sum of the two exponentials.
    Cos,
    /// `sin(m phi)`, the half-difference divided by `i`.
    Sin,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldPoint {
    pub rho: f64,
    pub phi: f64,
    pub z: f64,
}

impl FieldPoint {
    pub fn new(rho: f64, phi: f64, z: f64) -> Self {
        FieldPoint { rho, phi, z }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FieldSample {
    pub e_z: Complex64,
    pub e_rho: Complex64,
    pub e_phi: Complex64,
    pub b_rho: Complex64,
    pub b_phi: Complex64,
}

impl FieldSample {
    pub fn components(&self) -> [Complex64; 5] {
        [self.e_z, self.e_rho, self.e_phi, self.b_rho, self.b_phi]
    }

    /// `|E|`, the Euclidean norm of the three electric components.
    pub fn electric_norm(&self) -> f64 {
        (self.e_z.norm_sqr() + self.e_rho.norm_sqr() + self.e_phi.norm_sqr()).sqrt()
    }

    fn map(self, f: impl Fn(Complex64) -> Complex64) -> Self {
        FieldSample {
            e_z: f(self.e_z),
            e_rho: f(self.e_rho),
            e_phi: f(self.e_phi),
            b_rho: f(self.b_rho),
            b_phi: f(self.b_phi),
        }
    }

    fn zip(self, o: Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        FieldSample {
            e_z: f(self.e_z, o.e_z),
            e_rho: f(self.e_rho, o.e_rho),
            e_phi: f(self.e_phi, o.e_phi),
            b_rho: f(self.b_rho, o.b_rho),
            b_phi: f(self.b_phi, o.b_phi),
        }
    }
}

impl Add for FieldSample {
    type Output = FieldSample;
    fn add(self, o: Self) -> Self {
        self.zip(o, |x, y| x + y)
    }
}

impl Sub for FieldSample {
    type Output = FieldSample;
    fn sub(self, o: Self) -> Self {
        self.zip(o, |x, y| x - y)
    }
}

impl Mul<Complex64> for FieldSample {
    type Output = FieldSample;
    fn mul(self, k: Complex64) -> Self {
        self.map(|x| x * k)
    }
}

/// `cos(m phi)` and `sin(m phi)` samples from the `exp(+i m phi)` and
/// `exp(-i m phi)` samples of one mode.
pub fn real_basis(plus: FieldSample, minus: FieldSample) -> (FieldSample, FieldSample) {
    let cos = (plus + minus) * Complex64::new(0.5, 0.0);
    let sin = (plus - minus) * Complex64::new(0.0, -0.5);
    (cos, sin)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeAmplitude {
    pub index: ModeIndex,
    pub sign: Sign,
    pub amplitude: Complex64,
}

pub type ModeAmplitudeSet = Vec<ModeAmplitude>;

/// Rejects points outside the closed cavity.
pub fn check_point(geometry: &Geometry, point: FieldPoint) -> Result<()> {
    let FieldPoint { rho, phi, z } = point;
    let b = geometry.outer_radius();
    let a = geometry.inner_radius().unwrap_or(0.0);
    let l = geometry.height();
    if !(rho.is_finite() && phi.is_finite() && z.is_finite()) {
        return Err(Error::OutsideCavity(format!(
            "({rho}, {phi}, {z}) is not finite"
        )));
    }
    if rho < a || rho > b {
        return Err(Error::OutsideCavity(format!(
            "rho = {rho} not in [{a}, {b}]"
        )));
    }
    if z < 0.0 || z > l {
        return Err(Error::OutsideCavity(format!("z = {z} not in [0, {l}]")));
    }
    Ok(())
}

/// One TM mode prepared for repeated sampling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeField {
    pub geometry: Geometry,
    pub index: ModeIndex,
    pub azimuth: Azimuth,
    pub amplitude: Complex64,
    pub radial: RadialSolution,
    pub kz: f64,
    pub omega: f64,
}

impl ModeField {
    pub fn new(
        geometry: &Geometry,
        index: ModeIndex,
        azimuth: Azimuth,
        amplitude: Complex64,
    ) -> Result<Self> {
        let index = ModeIndex::new(index.m, index.n, index.p)?;
        let radial = radial_solution(geometry, index.m, index.n)?;
        Self::from_radial(geometry, index, azimuth, amplitude, radial)
    }

    /// Mode built on an arbitrary radial profile, e.g. one with a perturbed `gamma`.
    pub fn from_radial(
        geometry: &Geometry,
        index: ModeIndex,
        azimuth: Azimuth,
        amplitude: Complex64,
        radial: RadialSolution,
    ) -> Result<Self> {
        if !(amplitude.re.is_finite() && amplitude.im.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "amplitude {amplitude} is not finite"
            )));
        }
        let kz = axial_wavenumber(index.p, geometry.height());
        let omega = SPEED_OF_LIGHT * (radial.gamma * radial.gamma + kz * kz).sqrt();
        Ok(ModeField {
            geometry: *geometry,
            index,
            azimuth,
            amplitude,
            radial,
            kz,
            omega,
        })
    }

    /// `exp(i s m phi)` (or its cos/sin combination) and its `phi`-derivative.
    fn angular(&self, phi: f64) -> (Complex64, Complex64) {
        let m = self.index.m as f64;
        let t = m * phi.rem_euclid(TAU);
        let (s, c) = t.sin_cos();
        match self.azimuth {
            Azimuth::Exp(sign) => {
                let v = Complex64::new(c, sign.factor() * s);
                (v, v * Complex64::new(0.0, sign.factor() * m))
            }
            Azimuth::Cos => (Complex64::new(c, 0.0), Complex64::new(-m * s, 0.0)),
            Azimuth::Sin => (Complex64::new(s, 0.0), Complex64::new(m * c, 0.0)),
        }
    }

    /// Field from precomputed radial values; no domain check.
    pub fn combine(&self, rv: RadialValues, phi: f64, z: f64) -> FieldSample {
        let (ang, dang) = self.angular(phi);
        let (sz, cz) = (self.kz * z).sin_cos();
        let g2 = self.radial.gamma * self.radial.gamma;
        let a = self.amplitude;
        let e_z = a * ang * (rv.r * cz);
        let e_pref = -self.kz * sz / g2;
        let e_rho = a * ang * (e_pref * rv.dr);
        let e_phi = a * dang * (e_pref * rv.r_over_rho);
        let b_pref = Complex64::new(0.0, self.omega / (SPEED_OF_LIGHT * SPEED_OF_LIGHT * g2)) * cz;
        let b_rho = -(a * dang * rv.r_over_rho) * b_pref;
        let b_phi = a * ang * rv.dr * b_pref;
        FieldSample {
            e_z,
            e_rho,
            e_phi,
            b_rho,
            b_phi,
        }
    }

    pub fn ez(&self, point: FieldPoint) -> Result<Complex64> {
        check_point(&self.geometry, point)?;
        let (ang, _) = self.angular(point.phi);
        let r = self.radial.value(point.rho)?;
        Ok(self.amplitude * ang * (r * (self.kz * point.z).cos()))
    }

    pub fn sample(&self, point: FieldPoint) -> Result<FieldSample> {
        check_point(&self.geometry, point)?;
        let rv = self.radial.values(point.rho)?;
        Ok(self.combine(rv, point.phi, point.z))
    }
}

fn exp_mode(
    geometry: &Geometry,
    index: ModeIndex,
    sign: Sign,
    amplitude: Complex64,
) -> Result<ModeField> {
    ModeField::new(geometry, index, Azimuth::Exp(sign), amplitude)
}

/// Axial electric field of one mode.
pub fn ez_mode(
    geometry: &Geometry,
    index: ModeIndex,
    sign: Sign,
    amplitude: Complex64,
    point: FieldPoint,
) -> Result<Complex64> {
    exp_mode(geometry, index, sign, amplitude)?.ez(point)
}

/// All field components of one mode.
pub fn transverse_fields(
    geometry: &Geometry,
    index: ModeIndex,
    sign: Sign,
    amplitude: Complex64,
    point: FieldPoint,
) -> Result<FieldSample> {
    exp_mode(geometry, index, sign, amplitude)?.sample(point)
}

/// Sum of the listed modes, accumulated in list order.
pub fn superpose(
    geometry: &Geometry,
    amplitudes: &[ModeAmplitude],
    point: FieldPoint,
) -> Result<FieldSample> {
    check_point(geometry, point)?;
    let mut total = FieldSample::default();
    for ma in amplitudes {
        total = total + exp_mode(geometry, ma.index, ma.sign, ma.amplitude)?.sample(point)?;
    }
    Ok(total)
}

/// Samples every point of a `rho x phi x z` grid, `rho` slowest and `z` fastest.
///
/// Radial functions are evaluated once per `rho`.
pub fn sample_grid(
    mode: &ModeField,
    rho: &[f64],
    phi: &[f64],
    z: &[f64],
) -> Result<Vec<FieldSample>> {
    for &r in rho {
        check_point(&mode.geometry, FieldPoint::new(r, 0.0, 0.0))?;
    }
    for &zz in z {
        check_point(
            &mode.geometry,
            FieldPoint::new(mode.geometry.outer_radius(), 0.0, zz),
        )?;
    }
    if let Some(p) = phi.iter().find(|p| !p.is_finite()) {
        return Err(Error::OutsideCavity(format!("phi = {p} is not finite")));
    }
    let block = |r: f64| -> Result<Vec<FieldSample>> {
        let rv = mode.radial.values(r)?;
        let mut out = Vec::with_capacity(phi.len() * z.len());
        for &p in phi {
            for &zz in z {
                out.push(mode.combine(rv, p, zz));
            }
        }
        Ok(out)
    };
    #[cfg(feature = "parallel")]
    let blocks: Vec<Result<Vec<FieldSample>>> = rho.par_iter().map(|&r| block(r)).collect();
    #[cfg(not(feature = "parallel"))]
    let blocks: Vec<Result<Vec<FieldSample>>> = rho.iter().map(|&r| block(r)).collect();
    let mut out = Vec::with_capacity(rho.len() * phi.len() * z.len());
    for b in blocks {
        out.extend(b?);
    }
    Ok(out)
}

/// `n` evenly spaced values from `start` to `end`, both endpoints exact.
pub fn linspace(start: f64, end: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (end - start) / (n - 1) as f64;
            let mut v: Vec<f64> = (0..n).map(|i| start + step * i as f64).collect();
            v[n - 1] = end;
            v
        }
    }
}

/// Computed and closed-form values of
/// `int_0^a rho J_nu(x_nu,n rho/a) J_nu(x_nu,k rho/a) drho`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Orthogonality {
    pub integral: f64,
    pub expected: f64,
    pub quad_error: f64,
}

pub const MAX_ORTHOGONALITY_ORDER: u32 = 10;
pub const MAX_ORTHOGONALITY_INDEX: u32 = 20;

pub fn orthogonality_check(nu: i32, n: u32, k: u32, a: f64) -> Result<Orthogonality> {
    let order = Order::new(nu)?.unsigned_abs();
    if order > MAX_ORTHOGONALITY_ORDER {
        return Err(Error::OrderRange {
            m: nu as i64,
            max: MAX_ORTHOGONALITY_ORDER as i32,
        });
    }
    for idx in [n, k] {
        if idx == 0 || idx > MAX_ORTHOGONALITY_INDEX {
            return Err(Error::ModeIndex(format!(
                "zero index {idx} outside 1..={MAX_ORTHOGONALITY_INDEX}"
            )));
        }
    }
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "radius a = {a} must be finite and positive"
        )));
    }
    let table = ZeroCache::global().bessel(order as i32, n.max(k) as usize)?;
    let xn = table.zeros[n as usize - 1].value;
    let xk = table.zeros[k as usize - 1].value;
    let m = order as i32;
    // J_m is bounded by 1 on the real axis and the arguments stay below 1e4,
    // so evaluation cannot fail inside the integrand.
    let j = |x: f64| bessel_j(m, x).map(|r| r.value).unwrap_or(f64::NAN);
    let QuadResult { value, error, .. } = integrate(
        |rho| rho * j(xn * rho / a) * j(xk * rho / a),
        0.0,
        a,
        1.0e-10 * a * a,
        MAX_QUAD_PANELS,
    )?;
    let expected = if n == k {
        let jp = bessel_j(m + 1, xn)?.value;
        0.5 * a * a * jp * jp
    } else {
        0.0
    };
    Ok(Orthogonality {
        integral: value,
        expected,
        quad_error: error,
    })
}

/// Normalized tangential electric field on each wall.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WallResiduals {
    /// `E_z`, `E_phi` on `rho = b`.
    pub outer: f64,
    /// `E_z`, `E_phi` on `rho = a` (annulus only).
    pub inner: Option<f64>,
    /// `E_rho`, `E_phi` on `z = 0` and `z = l`.
    pub caps: f64,
}

impl WallResiduals {
    pub fn max(&self) -> f64 {
        self.outer.max(self.inner.unwrap_or(0.0)).max(self.caps)
    }
}

fn grid_points(lo: f64, hi: f64) -> Vec<f64> {
    linspace(lo, hi, WALL_GRID)
}

/// Wall residuals of a prepared mode: maximum tangential `|E|` over a
/// `64 x 64` grid on each wall, divided by the maximum interior `|E|` over a
/// `64 x 64` `(rho, z)` grid at `phi = 0`.
pub fn wall_residuals(mode: &ModeField) -> Result<WallResiduals> {
    let g = mode.geometry;
    let b = g.outer_radius();
    let a = g.inner_radius().unwrap_or(0.0);
    let l = g.height();
    let rhos = grid_points(a, b);
    let zs = grid_points(0.0, l);
    let phis = linspace(0.0, TAU, WALL_GRID);

    let mut scale = 0.0f64;
    for &r in &rhos {
        let rv = mode.radial.values(r)?;
        for &z in &zs {
            scale = scale.max(mode.combine(rv, 0.0, z).electric_norm());
        }
    }
    if !(scale > 0.0) {
        return Err(Error::Conditioning(
            "mode field vanishes on the interior grid".into(),
        ));
    }

    let radial_wall = |r: f64| -> Result<f64> {
        let rv = mode.radial.values(r)?;
        let mut worst = 0.0f64;
        for &p in &phis {
            for &z in &zs {
                let s = mode.combine(rv, p, z);
                worst = worst.max(s.e_z.norm()).max(s.e_phi.norm());
            }
        }
        Ok(worst / scale)
    };
    let outer = radial_wall(b)?;
    let inner = match g.inner_radius() {
        Some(a) => Some(radial_wall(a)?),
        None => None,
    };

    let mut caps = 0.0f64;
    for &r in &rhos {
        let rv = mode.radial.values(r)?;
        for &p in &phis {
            for z in [0.0, l] {
                let s = mode.combine(rv, p, z);
                caps = caps.max(s.e_rho.norm()).max(s.e_phi.norm());
            }
        }
    }
    Ok(WallResiduals {
        outer,
        inner,
        caps: caps / scale,
    })
}

/// Largest normalized tangential wall field of the mode.
pub fn boundary_residual(geometry: &Geometry, index: ModeIndex) -> Result<f64> {
    let mode = exp_mode(geometry, index, Sign::Plus, Complex64::new(1.0, 0.0))?;
    Ok(wall_residuals(&mode)?.max())
}

/// [`boundary_residual`] with the radial eigenvalue replaced by `gamma`.
pub fn boundary_residual_with_gamma(
    geometry: &Geometry,
    index: ModeIndex,
    gamma: f64,
) -> Result<f64> {
    let index = ModeIndex::new(index.m, index.n, index.p)?;
    let radial = RadialSolution::with_gamma(geometry, index.m, gamma)?;
    let mode = ModeField::from_radial(
        geometry,
        index,
        Azimuth::Exp(Sign::Plus),
        Complex64::new(1.0, 0.0),
        radial,
    )?;
    Ok(wall_residuals(&mode)?.max())
}

/// `count` reproducible interior points, at least two Helmholtz steps from every wall.
pub fn random_interior_points(geometry: &Geometry, count: usize, seed: u64) -> Vec<FieldPoint> {
    let h = HELMHOLTZ_STEP * geometry.outer_radius();
    let lo = geometry.inner_radius().unwrap_or(0.0) + 2.0 * h;
    let hi = geometry.outer_radius() - 2.0 * h;
    let l = geometry.height();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            FieldPoint::new(
                rng.gen_range(lo..hi),
                rng.gen_range(0.0..TAU),
                rng.gen_range(2.0 * h..l - 2.0 * h),
            )
        })
        .collect()
}

/// Largest `|(lap + omega^2/c^2) E_z| / (k^2 max|E_z|)` over `points`.
///
/// The transverse Laplacian is the Cartesian five-point stencil around
/// `(rho cos phi, rho sin phi)` and the axial term a central difference,
/// both with step `HELMHOLTZ_STEP * b`.
pub fn helmholtz_residual(
    geometry: &Geometry,
    index: ModeIndex,
    points: &[FieldPoint],
) -> Result<f64> {
    let mode = exp_mode(geometry, index, Sign::Plus, Complex64::new(1.0, 0.0))?;
    let h = HELMHOLTZ_STEP * geometry.outer_radius();
    let k2 = (mode.omega / SPEED_OF_LIGHT).powi(2);

    let lo = geometry.inner_radius().unwrap_or(0.0);
    let mut r_max = 0.0f64;
    for r in linspace(lo, geometry.outer_radius(), 257) {
        r_max = r_max.max(mode.radial.value(r)?.abs());
    }
    let scale = k2 * r_max;

    let mut worst = 0.0f64;
    for &pt in points {
        check_point(geometry, pt)?;
        let FieldPoint { rho, phi, z } = pt;
        if rho - h < lo
            || rho + h > geometry.outer_radius()
            || z - h < 0.0
            || z + h > geometry.height()
        {
            return Err(Error::OutsideCavity(format!(
                "stencil around ({rho}, {z}) leaves the cavity"
            )));
        }
        let (x, y) = (rho * phi.cos(), rho * phi.sin());
        let at = |x: f64, y: f64, z: f64| mode.ez(FieldPoint::new(x.hypot(y), y.atan2(x), z));
        let c = mode.ez(pt)?;
        let transverse =
            at(x + h, y, z)? + at(x - h, y, z)? + at(x, y + h, z)? + at(x, y - h, z)? - c * 4.0;
        let axial = at(x, y, z + h)? + at(x, y, z - h)? - c * 2.0;
        let lap = (transverse + axial) / (h * h);
        worst = worst.max((lap + c * k2).norm() / scale);
    }
    Ok(worst)
}
