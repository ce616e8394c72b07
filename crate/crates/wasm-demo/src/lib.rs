//! Browser bindings: delivery-time curves, topological holes and symmetric
//! multicast GDoF. Every export returns a JSON string.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use mixcache::gdof_region::{max_symmetric_gdof, symmetric_projection, ChannelStrengths};
use mixcache::gndt::{
    bottleneck_user, gndt_joint_two_set, gndt_lower_bound, gndt_memory_sharing, gndt_ub, rational_grid,
    topological_hole_region, SystemConfig, TradeoffQuery,
};
use mixcache::rational::{format_exact, parse_rational_list, ratio, to_f64};
use mixcache::{Extended, Rational};

const POWER: f64 = 1024.0;

#[derive(Serialize)]
struct CurvePoint {
    mu: f64,
    ub: Option<f64>,
    joint: Option<f64>,
    memory_sharing: Option<f64>,
    lower_bound: Option<f64>,
    ub_exact: String,
}

#[derive(Serialize)]
struct Curve {
    points: Vec<CurvePoint>,
    /// Largest finite value on the curve, for axis scaling.
    y_max: f64,
}

#[derive(Serialize)]
struct Vertex {
    r: Vec<f64>,
    r_exact: Vec<String>,
    tau_exact: String,
    unchanged: bool,
}

#[derive(Serialize)]
struct Holes {
    k_star: usize,
    tau_exact: String,
    inequalities: Vec<String>,
    vertices: Vec<Vertex>,
}

#[derive(Serialize)]
struct SymmetricGdof {
    value: f64,
    value_exact: String,
    /// `(weight on r_sym, rhs)` of every row of the projection.
    rows: Vec<(String, String)>,
}

fn finite(x: &Extended) -> Option<f64> {
    x.finite().map(to_f64)
}

fn strengths(alpha: &str) -> Result<ChannelStrengths, String> {
    let a = parse_rational_list(alpha).map_err(|e| e.to_string())?;
    ChannelStrengths::new(a).map_err(|e| format!("{e}; need 0 < α_1 ≤ … ≤ α_K = 1"))
}

fn unicast(r: &str, k: usize) -> Result<Vec<Rational>, String> {
    if r.trim().is_empty() {
        return Ok(vec![ratio(0, 1); k]);
    }
    let r = parse_rational_list(r).map_err(|e| e.to_string())?;
    if r.len() != k {
        return Err(format!("{} non-content GDoF for {k} users", r.len()));
    }
    Ok(r)
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable")
}

/// Delivery times over `mu = 0, 1/steps, ..., 1`.
pub fn curve_json(n_files: usize, alpha: &str, r: &str, steps: u32) -> Result<String, String> {
    let alpha = strengths(alpha)?;
    let k = alpha.users();
    let r = unicast(r, k)?;
    if steps == 0 {
        return Err("need at least one grid step".into());
    }
    let grid = rational_grid(&ratio(0, 1), &ratio(1, 1), &ratio(1, steps as i64)).map_err(|e| e.to_string())?;
    let base = SystemConfig::new(k, n_files, ratio(0, 1), alpha, POWER).map_err(|e| e.to_string())?;
    let mut points = Vec::with_capacity(grid.len());
    for mu in grid {
        let q = TradeoffQuery::new(base.with_mu(mu.clone()).map_err(|e| e.to_string())?, r.clone())
            .map_err(|e| e.to_string())?;
        let ub = gndt_ub(&q);
        let joint = gndt_joint_two_set(&q).unwrap_or_else(|_| ub.clone());
        points.push(CurvePoint {
            mu: to_f64(&mu),
            ub: finite(&ub),
            joint: finite(&joint),
            memory_sharing: finite(&gndt_memory_sharing(&q)),
            lower_bound: finite(&gndt_lower_bound(&q)),
            ub_exact: ub.to_exact(),
        });
    }
    let y_max = points
        .iter()
        .flat_map(|p| [p.ub, p.memory_sharing])
        .flatten()
        .fold(0.0, f64::max);
    Ok(to_json(&Curve { points, y_max }))
}

/// Bottleneck user and hole region at integer `K mu`.
pub fn holes_json(n_files: usize, kmu: usize, alpha: &str) -> Result<String, String> {
    let alpha = strengths(alpha)?;
    let k = alpha.users();
    if kmu > k {
        return Err(format!("K mu = {kmu} exceeds K = {k}"));
    }
    let config = SystemConfig::new(k, n_files, ratio(kmu as i64, k as i64), alpha, POWER).map_err(|e| e.to_string())?;
    let k_star = bottleneck_user(&config).map_err(|e| e.to_string())?;
    let region = topological_hole_region(&config).map_err(|e| e.to_string())?;
    let tau = gndt_ub(&TradeoffQuery::without_unicast(config.clone()));
    let vertices = region
        .vertices()
        .into_iter()
        .map(|v| {
            let t = gndt_ub(&TradeoffQuery::new(config.clone(), v.clone()).expect("nonnegative vertex"));
            Vertex {
                r: v.iter().map(to_f64).collect(),
                r_exact: v.iter().map(format_exact).collect(),
                tau_exact: t.to_exact(),
                unchanged: t == tau,
            }
        })
        .collect();
    Ok(to_json(&Holes {
        k_star,
        tau_exact: tau.to_exact(),
        inequalities: region.to_string().lines().map(str::to_string).collect(),
        vertices,
    }))
}

/// Largest shared multicast GDoF next to the unicast tuple `r`.
pub fn symmetric_json(sigma: usize, s: usize, alpha: &str, r: &str) -> Result<String, String> {
    let alpha = strengths(alpha)?;
    let r = unicast(r, alpha.users())?;
    let value = max_symmetric_gdof(sigma, &alpha, s, &r).map_err(|e| e.to_string())?;
    let projection = symmetric_projection(sigma, &alpha, s).map_err(|e| e.to_string())?;
    let rows = projection
        .rows()
        .iter()
        .map(|row| (format_exact(row.coeffs.last().unwrap()), format_exact(&row.rhs)))
        .collect();
    Ok(to_json(&SymmetricGdof { value: to_f64(&value), value_exact: format_exact(&value), rows }))
}

#[wasm_bindgen(js_name = gndtCurve)]
pub fn gndt_curve(n_files: usize, alpha: &str, r: &str, steps: u32) -> Result<String, JsError> {
    curve_json(n_files, alpha, r, steps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = topologicalHoles)]
pub fn topological_holes(n_files: usize, kmu: usize, alpha: &str) -> Result<String, JsError> {
    holes_json(n_files, kmu, alpha).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = symmetricGdof)]
pub fn symmetric_gdof(sigma: usize, s: usize, alpha: &str, r: &str) -> Result<String, JsError> {
    symmetric_json(sigma, s, alpha, r).map_err(|e| JsError::new(&e))
}
