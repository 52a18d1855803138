use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::IdentityReport;
use crate::branching::MkBuilder;
use crate::error::{Error, Result};
use crate::field::ParameterPoint;
use crate::laurent::LaurentPoly;
use crate::partitions::Partition;

/// Uniform torus grid and truncation depth of the infinite products.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadratureConfig {
    /// Points per circle.
    pub grid_points: usize,
    /// `(a;q)_∞` is replaced by `(a;q)_M`.
    pub truncation: usize,
    pub tolerance: f64,
}

impl QuadratureConfig {
    /// N = 512 for one variable, 128 per circle otherwise; M = 200; 1e−8.
    pub fn for_dimension(n: usize) -> Self {
        Self {
            grid_points: if n <= 1 { 512 } else { 128 },
            truncation: 200,
            tolerance: 1e-8,
        }
    }

    /// At least 64 points per circle and truncation depth 100.
    pub fn is_acceptance_grade(&self) -> bool {
        self.grid_points >= 64 && self.truncation >= 100
    }
}

fn pochhammer(a: Complex64, q: f64, m: usize) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    let mut x = a;
    for _ in 0..m {
        acc *= 1.0 - x;
        x *= q;
    }
    acc
}

/// Bound on the relative error of the truncated density.
///
/// Every argument `a` has `|a| ≤ 1` on the torus. For the tail
/// `T = ∏_{k≥M}(1−aq^k)` both `|T − 1|` and `|1/T − 1|` are at most
/// `exp(q^M/((1−q)(1−q^M))) − 1 =: ε`. The density has `F = 10n + 8·n(n−1)/2`
/// such factors, so the relative error is at most `(1+ε)^F − 1`.
pub fn density_truncation_bound(n: usize, q: f64, m: usize) -> f64 {
    let qm = q.powi(m as i32);
    let eps = (qm / ((1.0 - q) * (1.0 - qm))).exp_m1();
    let factors = (10 * n + 4 * n * n.saturating_sub(1)) as f64;
    (factors * eps.ln_1p()).exp_m1()
}

fn check_domain(params: &ParameterPoint) -> Result<(f64, f64, [f64; 4])> {
    if !params.in_orthogonality_domain() {
        return Err(Error::invalid(format!(
            "orthogonality oracle needs 0 < q < 1 and |t|, |t_l| < 1, got {params}"
        )));
    }
    Ok(params.to_f64())
}

/// Gustafson's density at `zs` with every `(·;q)_∞` truncated to `M` factors.
pub fn density(zs: &[Complex64], params: &ParameterPoint, m: usize) -> Result<Complex64> {
    let (q, t, tl) = check_domain(params)?;
    Ok(density_f64(zs, q, t, &tl, m))
}

fn density_f64(zs: &[Complex64], q: f64, t: f64, tl: &[f64; 4], m: usize) -> Complex64 {
    let mut num = Complex64::new(1.0, 0.0);
    let mut den = Complex64::new(1.0, 0.0);
    for (j, &z) in zs.iter().enumerate() {
        let zi = z.inv();
        num *= pochhammer(z * z, q, m) * pochhammer(zi * zi, q, m);
        for &a in tl {
            den *= pochhammer(a * z, q, m) * pochhammer(a * zi, q, m);
        }
        for &w in &zs[j + 1..] {
            let wi = w.inv();
            for p in [z * w, z * wi, zi * w, zi * wi] {
                num *= pochhammer(p, q, m);
                den *= pochhammer(t * p, q, m);
            }
        }
    }
    num / den
}

/// Density values on the uniform grid, reusable for many inner products.
#[derive(Clone, Debug)]
pub struct TorusQuadrature {
    n: usize,
    cfg: QuadratureConfig,
    /// `e^{2πik/N}` for `k = 0..N`.
    roots: Vec<Complex64>,
    /// Density at grid point with multi-index `(k_1,…,k_n)` in row-major order.
    weights: Vec<Complex64>,
}

fn grid_index(mut idx: usize, n: usize, nn: usize) -> Vec<usize> {
    let mut ks = vec![0; n];
    for k in ks.iter_mut().rev() {
        *k = idx % nn;
        idx /= nn;
    }
    ks
}

impl TorusQuadrature {
    pub fn new(n: usize, params: &ParameterPoint, cfg: QuadratureConfig) -> Result<Self> {
        let (q, t, tl) = check_domain(params)?;
        if cfg.grid_points == 0 {
            return Err(Error::invalid("quadrature needs at least one grid point"));
        }
        let nn = cfg.grid_points;
        let roots: Vec<Complex64> = (0..nn)
            .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / nn as f64))
            .collect();
        let total = nn
            .checked_pow(n as u32)
            .ok_or_else(|| Error::invalid("grid too large"))?;
        let weight = |idx: usize| {
            let zs: Vec<Complex64> = grid_index(idx, n, nn).into_iter().map(|k| roots[k]).collect();
            density_f64(&zs, q, t, &tl, cfg.truncation)
        };
        #[cfg(feature = "parallel")]
        let weights = {
            use rayon::prelude::*;
            (0..total).into_par_iter().map(weight).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let weights = (0..total).map(weight).collect();
        Ok(Self { n, cfg, roots, weights })
    }

    pub fn config(&self) -> &QuadratureConfig {
        &self.cfg
    }

    fn float_terms(&self, f: &LaurentPoly) -> Result<Vec<(Vec<i64>, f64)>> {
        if f.nvars() != self.n {
            return Err(Error::invalid(format!(
                "polynomial has {} variables, grid has {}",
                f.nvars(),
                self.n
            )));
        }
        f.terms()
            .iter()
            .map(|(e, c)| {
                let v = c
                    .to_f64()
                    .ok_or_else(|| Error::invalid("coefficient has no real value"))?;
                Ok((e.iter().map(|&x| x as i64).collect(), v))
            })
            .collect()
    }

    fn eval(&self, terms: &[(Vec<i64>, f64)], ks: &[usize]) -> Complex64 {
        let nn = self.cfg.grid_points as i64;
        terms
            .iter()
            .map(|(e, c)| {
                let phase: i64 = e.iter().zip(ks).map(|(&a, &k)| a * k as i64).sum();
                self.roots[phase.rem_euclid(nn) as usize] * *c
            })
            .sum()
    }

    /// `N^{−n} Σ_grid f(z)·conj(g(z))·Δ(z)`.
    pub fn inner_product(&self, f: &LaurentPoly, g: &LaurentPoly) -> Result<Complex64> {
        let (ft, gt) = (self.float_terms(f)?, self.float_terms(g)?);
        let nn = self.cfg.grid_points;
        let term = |(idx, w): (usize, &Complex64)| {
            let ks = grid_index(idx, self.n, nn);
            self.eval(&ft, &ks) * self.eval(&gt, &ks).conj() * w
        };
        #[cfg(feature = "parallel")]
        let sum: Complex64 = {
            use rayon::prelude::*;
            self.weights.par_iter().enumerate().map(term).sum()
        };
        #[cfg(not(feature = "parallel"))]
        let sum: Complex64 = self.weights.iter().enumerate().map(term).sum();
        Ok(sum / self.weights.len() as f64)
    }
}

pub fn inner_product(
    f: &LaurentPoly,
    g: &LaurentPoly,
    params: &ParameterPoint,
    cfg: QuadratureConfig,
) -> Result<Complex64> {
    TorusQuadrature::new(f.nvars(), params, cfg)?.inner_product(f, g)
}

/// Normalized overlaps `|⟨P_λ,P_μ⟩| / (‖P_λ‖‖P_μ‖)` for all distinct pairs of
/// `family` (all in `n` variables), plus positivity of every norm.
pub fn verify_orthogonality(
    family: &[Partition],
    params: &ParameterPoint,
    cfg: QuadratureConfig,
) -> Result<Vec<IdentityReport>> {
    let n = family.first().map_or(0, Partition::len);
    if family.iter().any(|p| p.len() != n) {
        return Err(Error::invalid("orthogonality family must share one length"));
    }
    let quad = TorusQuadrature::new(n, params, cfg)?;
    let mut builder = MkBuilder::new(params.clone());
    let polys = family
        .iter()
        .map(|l| builder.polynomial(l))
        .collect::<Result<Vec<_>>>()?;
    let norms = polys
        .iter()
        .map(|p| quad.inner_product(p, p))
        .collect::<Result<Vec<_>>>()?;
    let bound = density_truncation_bound(n, params.to_f64().0, cfg.truncation);
    let mut out = Vec::new();
    for (i, li) in family.iter().enumerate() {
        let ni = norms[i];
        let mut rep = IdentityReport::new("orthogonality", format!("norm lambda={li}"), Some(params));
        rep.value = Some(ni.re);
        out.push(rep.require(
            ni.re > 0.0 && ni.im.abs() <= cfg.tolerance * ni.re,
            "norm is not positive",
        ));
        for (j, lj) in family.iter().enumerate().skip(i + 1) {
            let v = quad.inner_product(&polys[i], &polys[j])?;
            let rel = v.norm() / (ni.re * norms[j].re).sqrt();
            let mut rep = IdentityReport::new("orthogonality", format!("lambda={li} mu={lj}"), Some(params));
            rep.value = Some(rel);
            rep.note = Some(format!(
                "N={} M={} truncation bound {bound:.1e}",
                cfg.grid_points, cfg.truncation
            ));
            out.push(rep.require(
                rel < cfg.tolerance,
                &format!("overlap {rel:.3e} above {:.0e}", cfg.tolerance),
            ));
        }
    }
    Ok(out)
}
