//! Browser bindings for the `coaxmode` demo page.

use coaxmode::cavity::{enumerate_modes_below, Geometry, ModeIndex};
use coaxmode::fields::{Azimuth, FieldPoint, ModeField};
use coaxmode::roots::{cross_product, cross_product_zeros};
use num_complex::Complex64;
use serde_json::json;
use wasm_bindgen::prelude::*;

const MAX_MAP_SIZE: usize = 512;
const MAX_CURVE_SAMPLES: usize = 20_000;
const MAX_SPECTRUM_ROWS: usize = 2_000;

fn geometry(a: f64, b: f64, l: f64) -> Result<Geometry, String> {
    if a == 0.0 {
        Geometry::cylinder(b, l)
    } else {
        Geometry::annulus(a, b, l)
    }
    .map_err(|e| e.to_string())
}

/// Lowest modes below `omega_max` as JSON rows `{m, n, p, gamma, omega, degeneracy}`.
pub fn spectrum(a: f64, b: f64, l: f64, omega_max: f64) -> Result<String, String> {
    let g = geometry(a, b, l)?;
    let modes = enumerate_modes_below(&g, omega_max).map_err(|e| e.to_string())?;
    let rows: Vec<_> = modes
        .iter()
        .take(MAX_SPECTRUM_ROWS)
        .map(|e| {
            json!({
                "m": e.index.m,
                "n": e.index.n,
                "p": e.index.p,
                "gamma": e.gamma,
                "omega": e.omega,
                "degeneracy": e.degeneracy,
            })
        })
        .collect();
    Ok(json!({ "total": modes.len(), "rows": rows }).to_string())
}

/// `Re E_z` of the `cos(m phi)` mode on a `size x size` raster of the
/// cross-section at height `z`, row-major from the top left; `NaN` outside
/// the conductor walls.
pub fn field_map(
    a: f64,
    b: f64,
    l: f64,
    m: u32,
    n: u32,
    p: u32,
    z: f64,
    size: usize,
) -> Result<Vec<f64>, String> {
    if !(2..=MAX_MAP_SIZE).contains(&size) {
        return Err(format!("size must be in 2..={MAX_MAP_SIZE}"));
    }
    let g = geometry(a, b, l)?;
    let index = ModeIndex::new(m, n, p).map_err(|e| e.to_string())?;
    let mode = ModeField::new(&g, index, Azimuth::Cos, Complex64::new(1.0, 0.0))
        .map_err(|e| e.to_string())?;
    let step = 2.0 * b / (size - 1) as f64;
    let mut out = Vec::with_capacity(size * size);
    for row in 0..size {
        let y = b - row as f64 * step;
        for col in 0..size {
            let x = -b + col as f64 * step;
            let rho = x.hypot(y);
            if rho < a || rho > b {
                out.push(f64::NAN);
                continue;
            }
            let ez = mode
                .ez(FieldPoint::new(rho, y.atan2(x), z))
                .map_err(|e| e.to_string())?;
            out.push(ez.re);
        }
    }
    Ok(out)
}

/// The annular determinant sampled on `(0, gamma_max]` with its roots, as
/// JSON `{gamma, value, roots}`.
pub fn determinant_curve(
    m: u32,
    a: f64,
    b: f64,
    gamma_max: f64,
    samples: usize,
) -> Result<String, String> {
    if !(2..=MAX_CURVE_SAMPLES).contains(&samples) {
        return Err(format!("samples must be in 2..={MAX_CURVE_SAMPLES}"));
    }
    if !(gamma_max.is_finite() && gamma_max > 0.0) {
        return Err("gamma_max must be finite and positive".into());
    }
    let mut gamma = Vec::with_capacity(samples);
    let mut value = Vec::with_capacity(samples);
    for i in 1..=samples {
        let g = gamma_max * i as f64 / samples as f64;
        gamma.push(g);
        value.push(cross_product(m, a, b, g).map_err(|e| e.to_string())?);
    }
    let order = i32::try_from(m).map_err(|e| e.to_string())?;
    let mut roots = Vec::new();
    let mut count = 4;
    loop {
        let table = cross_product_zeros(order, a, b, count).map_err(|e| e.to_string())?;
        let values = table.values();
        if values.last().is_some_and(|&g| g > gamma_max) || count >= 1000 {
            roots.extend(values.into_iter().filter(|&g| g <= gamma_max));
            break;
        }
        count = (count * 2).min(1000);
    }
    Ok(json!({ "gamma": gamma, "value": value, "roots": roots }).to_string())
}

#[wasm_bindgen(js_name = spectrum)]
pub fn spectrum_js(a: f64, b: f64, l: f64, omega_max: f64) -> Result<String, JsError> {
    spectrum(a, b, l, omega_max).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = fieldMap)]
#[allow(clippy::too_many_arguments)]
pub fn field_map_js(
    a: f64,
    b: f64,
    l: f64,
    m: u32,
    n: u32,
    p: u32,
    z: f64,
    size: usize,
) -> Result<Vec<f64>, JsError> {
    field_map(a, b, l, m, n, p, z, size).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = determinantCurve)]
pub fn determinant_curve_js(
    m: u32,
    a: f64,
    b: f64,
    gamma_max: f64,
    samples: usize,
) -> Result<String, JsError> {
    determinant_curve(m, a, b, gamma_max, samples).map_err(|e| JsError::new(&e))
}
