//! TM resonance spectra of closed cylindrical and annular cavities.
//!
//! A TM mode `(m, n, p)` resonates at `omega = c sqrt(gamma_mn^2 + (p pi / l)^2)`
//! where `gamma_mn` is `x_mn / b` for the cylinder and the `n`-th annulus
//! cross-product root otherwise.

use std::cmp::Ordering;
use std::f64::consts::PI;

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::roots::{check_annulus, BesselZeros, CrossProductZeros, ZeroCache};
use crate::specfun::MAX_ORDER;

/// Speed of light in vacuum, m/s (exact SI value).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Largest spectrum `enumerate_modes_below` will build.
pub const MAX_MODES: usize = 10_000_000;
/// Largest histogram bin count.
pub const MAX_BINS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CylinderGeometry {
    /// Wall radius, m.
    pub b: f64,
    /// Height, m.
    pub l: f64,
}

impl CylinderGeometry {
    pub fn new(b: f64, l: f64) -> Result<Self> {
        check_positive("b", b)?;
        check_positive("l", l)?;
        Ok(CylinderGeometry { b, l })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnnulusGeometry {
    /// Inner radius, m.
    pub a: f64,
    /// Outer radius, m.
    pub b: f64,
    /// Height, m.
    pub l: f64,
}

impl AnnulusGeometry {
    pub fn new(a: f64, b: f64, l: f64) -> Result<Self> {
        check_annulus(a, b)?;
        check_positive("l", l)?;
        Ok(AnnulusGeometry { a, b, l })
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if !(v.is_finite() && v > 0.0) {
        return Err(Error::Geometry(format!(
            "{name} = {v} must be finite and positive"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Geometry {
    Cylinder(CylinderGeometry),
    Annulus(AnnulusGeometry),
}

impl From<CylinderGeometry> for Geometry {
    fn from(g: CylinderGeometry) -> Self {
        Geometry::Cylinder(g)
    }
}

impl From<AnnulusGeometry> for Geometry {
    fn from(g: AnnulusGeometry) -> Self {
        Geometry::Annulus(g)
    }
}

impl Geometry {
    pub fn cylinder(b: f64, l: f64) -> Result<Self> {
        CylinderGeometry::new(b, l).map(Geometry::Cylinder)
    }

    pub fn annulus(a: f64, b: f64, l: f64) -> Result<Self> {
        AnnulusGeometry::new(a, b, l).map(Geometry::Annulus)
    }

    pub fn outer_radius(&self) -> f64 {
        match self {
            Geometry::Cylinder(g) => g.b,
            Geometry::Annulus(g) => g.b,
        }
    }

    /// `a` for the annulus, `None` for the solid cylinder.
    pub fn inner_radius(&self) -> Option<f64> {
        match self {
            Geometry::Cylinder(_) => None,
            Geometry::Annulus(g) => Some(g.a),
        }
    }

    pub fn height(&self) -> f64 {
        match self {
            Geometry::Cylinder(g) => g.l,
            Geometry::Annulus(g) => g.l,
        }
    }

    /// All lengths multiplied by `s`.
    pub fn scaled(&self, s: f64) -> Result<Self> {
        match self {
            Geometry::Cylinder(g) => Geometry::cylinder(g.b * s, g.l * s),
            Geometry::Annulus(g) => Geometry::annulus(g.a * s, g.b * s, g.l * s),
        }
    }

    /// The `n`-th radial eigenvalue `gamma_mn` (rad/m), one-based `n`.
    pub fn radial_eigenvalue(&self, m: u32, n: u32) -> Result<f64> {
        let order = m as i32;
        match self {
            Geometry::Cylinder(g) => {
                let table = ZeroCache::global().bessel(order, n as usize)?;
                Ok(table.zeros[n as usize - 1].value / g.b)
            }
            Geometry::Annulus(g) => {
                let table = ZeroCache::global().cross(order, g.a, g.b, n as usize)?;
                Ok(table.zeros[n as usize - 1].value)
            }
        }
    }

    /// Radial eigenvalues of order `m` in increasing order.
    pub fn radial_eigenvalues(&self, m: u32) -> Result<Box<dyn Iterator<Item = Result<f64>>>> {
        let order = m as i32;
        Ok(match *self {
            Geometry::Cylinder(g) => {
                Box::new(BesselZeros::new(order)?.map(move |z| z.map(|z| z.value / g.b)))
            }
            Geometry::Annulus(g) => {
                Box::new(CrossProductZeros::new(order, g.a, g.b)?.map(|z| z.map(|z| z.value)))
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ModeIndex {
    pub m: u32,
    pub n: u32,
    pub p: u32,
}

impl ModeIndex {
    pub fn new(m: u32, n: u32, p: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::ModeIndex("radial index n starts at 1".into()));
        }
        if m > MAX_ORDER as u32 {
            return Err(Error::ModeIndex(format!(
                "azimuthal index m = {m} exceeds the supported order {MAX_ORDER}"
            )));
        }
        Ok(ModeIndex { m, n, p })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModeEntry {
    pub index: ModeIndex,
    /// Radial eigenvalue, rad/m.
    pub gamma: f64,
    /// Angular frequency, rad/s.
    pub omega: f64,
    /// Number of azimuthal orientations: 1 for m = 0, 2 otherwise.
    pub degeneracy: u8,
}

/// Axial wavenumber `p pi / l`.
pub fn axial_wavenumber(p: u32, l: f64) -> f64 {
    p as f64 * PI / l
}

/// `c sqrt(gamma^2 + (p pi / l)^2)`; exactly `c gamma` for `p = 0`.
pub fn angular_frequency(gamma: f64, p: u32, l: f64) -> f64 {
    if p == 0 {
        return SPEED_OF_LIGHT * gamma;
    }
    let kz = axial_wavenumber(p, l);
    SPEED_OF_LIGHT * (gamma * gamma + kz * kz).sqrt()
}

fn entry(index: ModeIndex, gamma: f64, l: f64) -> ModeEntry {
    ModeEntry {
        index,
        gamma,
        omega: angular_frequency(gamma, index.p, l),
        degeneracy: if index.m == 0 { 1 } else { 2 },
    }
}

/// Resonance of a single TM mode.
pub fn tm_frequency(geometry: &Geometry, index: ModeIndex) -> Result<ModeEntry> {
    let index = ModeIndex::new(index.m, index.n, index.p)?;
    let gamma = geometry.radial_eigenvalue(index.m, index.n)?;
    Ok(entry(index, gamma, geometry.height()))
}

fn check_cutoff(omega_max: f64) -> Result<()> {
    if !(omega_max.is_finite() && omega_max > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "omega_max = {omega_max} must be finite and positive"
        )));
    }
    Ok(())
}

/// Ascending spectrum order: by frequency, then by `(m, n, p)`.
pub fn spectrum_order(a: &ModeEntry, b: &ModeEntry) -> Ordering {
    a.omega
        .total_cmp(&b.omega)
        .then_with(|| a.index.cmp(&b.index))
}

/// Radial eigenvalues of order `m` whose `p = 0` frequency is within the cutoff.
fn gammas_below(geometry: &Geometry, m: u32, omega_max: f64) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for gamma in geometry.radial_eigenvalues(m)? {
        let gamma = gamma?;
        if angular_frequency(gamma, 0, geometry.height()) > omega_max {
            break;
        }
        out.push(gamma);
        if out.len() > MAX_MODES {
            return Err(Error::TooManyModes { limit: MAX_MODES });
        }
    }
    Ok(out)
}

/// Number of axial indices `p` with `angular_frequency(gamma, p, l) <= omega_max`.
fn axial_count(gamma: f64, l: f64, omega_max: f64) -> u64 {
    if angular_frequency(gamma, 0, l) > omega_max {
        return 0;
    }
    let k = omega_max / SPEED_OF_LIGHT;
    let kz = (k * k - gamma * gamma).max(0.0).sqrt();
    let mut p = (kz * l / PI).floor().min(u32::MAX as f64 - 1.0) as u32;
    while p > 0 && angular_frequency(gamma, p, l) > omega_max {
        p -= 1;
    }
    while angular_frequency(gamma, p + 1, l) <= omega_max {
        p += 1;
    }
    p as u64 + 1
}

fn modes_for_order(
    geometry: &Geometry,
    m: u32,
    gammas: &[f64],
    omega_max: f64,
) -> Result<Vec<ModeEntry>> {
    let l = geometry.height();
    let mut out = Vec::new();
    for (i, &gamma) in gammas.iter().enumerate() {
        let n = i as u32 + 1;
        for p in 0u32.. {
            let e = entry(ModeIndex { m, n, p }, gamma, l);
            if e.omega > omega_max {
                break;
            }
            out.push(e);
            if out.len() > MAX_MODES {
                return Err(Error::TooManyModes { limit: MAX_MODES });
            }
        }
    }
    Ok(out)
}

/// Every TM mode with `omega <= omega_max`, sorted by [`spectrum_order`].
///
/// Completeness follows from monotonicity: `omega` increases with `p` and
/// with `n`, and the lowest radial eigenvalue increases with `m`, so the scan
/// over `m` stops at the first order whose lowest mode is above the cutoff.
pub fn enumerate_modes_below(geometry: &Geometry, omega_max: f64) -> Result<Vec<ModeEntry>> {
    check_cutoff(omega_max)?;

    let mut per_order: Vec<(u32, Vec<f64>)> = Vec::new();
    for m in 0u32.. {
        let gammas = match gammas_below(geometry, m, omega_max) {
            Err(Error::OrderRange { .. }) => {
                return Err(Error::InvalidParameter(format!(
                    "cutoff {omega_max} rad/s needs azimuthal orders beyond {MAX_ORDER}"
                )))
            }
            other => other?,
        };
        if gammas.is_empty() {
            break;
        }
        per_order.push((m, gammas));
    }

    let total: u64 = per_order
        .iter()
        .flat_map(|(_, gammas)| gammas.iter())
        .map(|&g| axial_count(g, geometry.height(), omega_max))
        .sum();
    if total > MAX_MODES as u64 {
        return Err(Error::TooManyModes { limit: MAX_MODES });
    }

    #[cfg(feature = "parallel")]
    let iter = per_order.par_iter();
    #[cfg(not(feature = "parallel"))]
    let iter = per_order.iter();
    let chunks = iter
        .map(|(m, gammas)| modes_for_order(geometry, *m, gammas, omega_max))
        .collect::<Result<Vec<_>>>()?;

    let mut modes: Vec<ModeEntry> = chunks.into_iter().flatten().collect();
    modes.sort_by(spectrum_order);
    Ok(modes)
}

/// One histogram bin: upper edge and cumulative mode count up to it,
/// weighted by degeneracy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HistogramBin {
    /// Upper bin edge, rad/s.
    pub omega_bin_edge: f64,
    pub cumulative_count: u64,
}

/// Cumulative, degeneracy-weighted mode counts on `bins` equal-width bins of
/// `(0, omega_max]`.
pub fn mode_count_histogram(
    geometry: &Geometry,
    omega_max: f64,
    bins: usize,
) -> Result<Vec<HistogramBin>> {
    if bins == 0 || bins > MAX_BINS {
        return Err(Error::InvalidParameter(format!(
            "bins = {bins} must lie in 1..={MAX_BINS}"
        )));
    }
    let modes = enumerate_modes_below(geometry, omega_max)?;
    Ok(histogram_of(&modes, omega_max, bins))
}

/// Bins an already sorted spectrum.
pub fn histogram_of(modes: &[ModeEntry], omega_max: f64, bins: usize) -> Vec<HistogramBin> {
    let mut out = Vec::with_capacity(bins);
    let mut idx = 0;
    let mut count = 0u64;
    for i in 1..=bins {
        let edge = if i == bins {
            omega_max
        } else {
            omega_max * i as f64 / bins as f64
        };
        while idx < modes.len() && modes[idx].omega <= edge {
            count += modes[idx].degeneracy as u64;
            idx += 1;
        }
        out.push(HistogramBin {
            omega_bin_edge: edge,
            cumulative_count: count,
        });
    }
    out
}
