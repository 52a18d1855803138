//! WebAssembly entry points for the static page in `www/`.
//!
//! Every export takes plain strings and numbers and returns JSON text, so the
//! same functions run natively under `cargo test`.

use std::f64::consts::PI;

use serde::Serialize;
use wasm_bindgen::prelude::*;

use koornwinder::branching::{askey_wilson, branching_coeffs, branching_poly_from};
use koornwinder::{FieldElement, LaurentPoly, MkBuilder, ParameterPoint, Partition};

const MAX_DEGREE: usize = 8;
const MAX_SAMPLES: usize = 2048;

fn parse_params(s: &str) -> Result<ParameterPoint, String> {
    s.parse().map_err(|e: koornwinder::Error| e.to_string())
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse().map_err(|e: koornwinder::Error| e.to_string())
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

/// Real part of `f` at `(e^{iθ₁}, …)`; symmetric polynomials with rational
/// coefficients are real on the torus.
fn on_torus(terms: &[(Vec<i32>, f64)], thetas: &[f64]) -> f64 {
    terms
        .iter()
        .map(|(e, c)| c * e.iter().zip(thetas).map(|(&k, th)| k as f64 * th).sum::<f64>().cos())
        .sum()
}

fn float_terms(p: &LaurentPoly) -> Vec<(Vec<i32>, f64)> {
    p.terms()
        .iter()
        .map(|(e, c)| (e.clone(), c.to_f64().unwrap_or(f64::NAN)))
        .collect()
}

#[derive(Serialize)]
struct Curve {
    poly: LaurentPoly,
    theta: Vec<f64>,
    value: Vec<f64>,
}

/// `P_m(e^{iθ})` for `θ ∈ [0, π]` together with the exact polynomial.
#[wasm_bindgen]
pub fn askey_wilson_curve(params: &str, m: usize, samples: usize) -> Result<String, String> {
    if m > MAX_DEGREE {
        return Err(format!("degree is capped at {MAX_DEGREE} in the demo"));
    }
    let samples = samples.clamp(2, MAX_SAMPLES);
    let params = parse_params(params)?;
    let poly = askey_wilson(m, &params).map_err(|e| e.to_string())?;
    let terms = float_terms(&poly);
    let theta: Vec<f64> = (0..samples).map(|i| PI * i as f64 / (samples - 1) as f64).collect();
    let value = theta.iter().map(|&th| on_torus(&terms, &[th])).collect();
    to_json(&Curve { poly, theta, value })
}

#[derive(Serialize)]
struct Row {
    k: usize,
    exact: FieldElement,
    approx: f64,
}

#[derive(Serialize)]
struct Table {
    lambda: Partition,
    mu: Partition,
    m: usize,
    d: usize,
    rows: Vec<Row>,
    poly: LaurentPoly,
}

/// Branching coefficients `B^k` of `P_{λ/μ}` with decimal approximations and
/// the expanded one-variable polynomial.
#[wasm_bindgen]
pub fn branching_table(params: &str, lambda: &str, mu: &str) -> Result<String, String> {
    let params = parse_params(params)?;
    let lambda = parse_partition(lambda)?;
    let mu = parse_partition(mu)?;
    if lambda.first() > MAX_DEGREE || lambda.len() > 4 {
        return Err("λ is too large for the demo (λ₁ ≤ 8, at most 4 parts)".into());
    }
    let c = branching_coeffs(&lambda, &mu, lambda.first(), &params).map_err(|e| e.to_string())?;
    let poly = branching_poly_from(&c, &params).map_err(|e| e.to_string())?;
    let rows =
        c.b.iter()
            .enumerate()
            .map(|(k, b)| Row {
                k,
                exact: b.clone(),
                approx: b.to_f64().unwrap_or(f64::NAN),
            })
            .collect();
    to_json(&Table {
        lambda: c.lambda,
        mu: c.mu,
        m: c.m,
        d: c.d,
        rows,
        poly,
    })
}

#[derive(Serialize)]
struct Heatmap {
    size: usize,
    min: f64,
    max: f64,
    /// Row-major, `θ₁` along rows, both angles over `[0, π]`.
    values: Vec<f64>,
    terms: usize,
}

/// `P_λ(e^{iθ₁}, e^{iθ₂})` on a `size × size` grid for `λ ∈ Λ₂`.
#[wasm_bindgen]
pub fn heatmap(params: &str, lambda: &str, size: usize) -> Result<String, String> {
    let params = parse_params(params)?;
    let lambda = parse_partition(lambda)?.padded(2).map_err(|e| e.to_string())?;
    if lambda.len() != 2 || lambda.first() > 4 {
        return Err("heatmap takes λ with two parts, each at most 4".into());
    }
    let size = size.clamp(2, 256);
    let poly = MkBuilder::new(params).polynomial(&lambda).map_err(|e| e.to_string())?;
    let terms = float_terms(&poly);
    let step = PI / (size - 1) as f64;
    let mut values = Vec::with_capacity(size * size);
    for i in 0..size {
        for j in 0..size {
            values.push(on_torus(&terms, &[i as f64 * step, j as f64 * step]));
        }
    }
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    to_json(&Heatmap {
        size,
        min,
        max,
        values,
        terms: terms.len(),
    })
}
