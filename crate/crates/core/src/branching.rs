//! Construction of Macdonald-Koornwinder polynomials by branching.
//!
//! `P_λ(z₁,…,z_n,x) = Σ_{μ⪯λ} P_μ(z₁,…,z_n) P_{λ/μ}(x)`, where the
//! one-variable branching polynomial is expanded in the interpolation basis,
//! `P_{λ/μ}(x) = Σ_{k≤d} B^k ⟨x;t₀⟩_{q,k}`, and its coefficients are Pieri
//! coefficients in `m ≥ λ₁` variables with `q` and `t` exchanged:
//! `B^k = (−1)^{k+|λ|−|μ|} C^{(n+1)^m−λ′, m}_{n^m−μ′, m−k}(t, q, 𝐭)`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, ParameterPoint};
use crate::interp::one_var_basis_upto;
use crate::laurent::LaurentPoly;
use crate::partitions::{double_strip_leq, enumerate_branch_sources, enumerate_chains, strip_degree, Partition};
use crate::pieri::PieriCache;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchingCoeffs {
    pub lambda: Partition,
    pub mu: Partition,
    pub m: usize,
    pub d: usize,
    #[serde(rename = "B")]
    pub b: Vec<FieldElement>,
}

fn sign(k: usize) -> bool {
    k % 2 == 1
}

/// `B^k_{λ/μ}` for `k = 0..=d`, with `λ ∈ Λ_{n+1}`, `μ ∈ Λ_n` and `m ≥ λ₁`.
pub fn branching_coeffs(
    lambda: &Partition,
    mu: &Partition,
    m: usize,
    params: &ParameterPoint,
) -> Result<BranchingCoeffs> {
    branching_coeffs_cached(lambda, mu, m, params, &PieriCache::new())
}

pub fn branching_coeffs_cached(
    lambda: &Partition,
    mu: &Partition,
    m: usize,
    params: &ParameterPoint,
    cache: &PieriCache,
) -> Result<BranchingCoeffs> {
    if lambda.is_empty() {
        return Err(Error::invalid("λ must have at least one part"));
    }
    let n = lambda.len() - 1;
    let mu = mu.padded(n)?;
    if m < lambda.first() {
        return Err(Error::invalid(format!("m={m} is smaller than λ₁={}", lambda.first())));
    }
    if !double_strip_leq(&mu, lambda) {
        return Err(Error::invalid(format!("{mu} ⪯ {lambda} does not hold")));
    }
    let d = strip_degree(lambda, &mu, m)?;
    // Pieri slots: λ-slot n^m − μ′, μ-slot (n+1)^m − λ′, both in Λ_m.
    let from = mu.conjugate(m)?.complement(n)?;
    let to = lambda.conjugate(m)?.complement(n + 1)?;
    let swapped = params.swapped();
    let base_sign = lambda.weight() - mu.weight();
    let b = (0..=d)
        .map(|k| {
            let c = cache.get_or_compute(&from, &to, m - k, m, &swapped)?;
            Ok(if sign(k + base_sign) { -c } else { c })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BranchingCoeffs {
        lambda: lambda.clone(),
        mu,
        m,
        d,
        b,
    })
}

/// `Σ_k B^k ⟨x;t₀⟩_{q,k}` as a one-variable polynomial.
pub fn branching_poly_from(coeffs: &BranchingCoeffs, params: &ParameterPoint) -> Result<LaurentPoly> {
    let basis = one_var_basis_upto(coeffs.d, params.q(), params.t0())?;
    let mut acc = LaurentPoly::zero(1);
    for (bk, pk) in coeffs.b.iter().zip(&basis) {
        acc.add_scaled(bk, pk)?;
    }
    Ok(acc)
}

/// `P_{λ/μ}(x)` with the minimal choice `m = λ₁`.
pub fn branching_poly(lambda: &Partition, mu: &Partition, params: &ParameterPoint) -> Result<LaurentPoly> {
    let coeffs = branching_coeffs(lambda, mu, lambda.first(), params)?;
    branching_poly_from(&coeffs, params)
}

/// Monic Askey-Wilson polynomial of degree `m`: the `n = 0` branching
/// `P_{(m)/∅}`.
pub fn askey_wilson(m: usize, params: &ParameterPoint) -> Result<LaurentPoly> {
    branching_poly(&Partition::new(vec![m])?, &Partition::default(), params)
}

/// One branching step from a table of `n`-variable polynomials to
/// `P_λ` in `n+1` variables.
pub fn branch_step(
    expansions: &HashMap<Partition, LaurentPoly>,
    lambda: &Partition,
    params: &ParameterPoint,
) -> Result<LaurentPoly> {
    if lambda.is_empty() {
        return Ok(LaurentPoly::one(0));
    }
    let n = lambda.len() - 1;
    let cache = PieriCache::new();
    let mut acc = LaurentPoly::zero(n + 1);
    for mu in enumerate_branch_sources(lambda)? {
        let p_mu = expansions
            .get(&mu)
            .ok_or_else(|| Error::invalid(format!("missing source polynomial P_{mu}")))?;
        let coeffs = branching_coeffs_cached(lambda, &mu, lambda.first(), params, &cache)?;
        let bp = branching_poly_from(&coeffs, params)?;
        acc = &acc + &tensor(p_mu, &bp)?;
    }
    Ok(acc)
}

/// `f(z₁..z_n)·g(x)` in `n+1` variables.
fn tensor(f: &LaurentPoly, g: &LaurentPoly) -> Result<LaurentPoly> {
    let n = f.nvars();
    let positions: Vec<usize> = (0..n).collect();
    let fe = f.embed(n + 1, &positions)?;
    let ge = g.embed(n + 1, &[n])?;
    fe.checked_mul(&ge)
}

/// Memoizing builder: every `P_μ` below the target is built once and shared
/// between all branching steps.
#[derive(Debug)]
pub struct MkBuilder {
    params: ParameterPoint,
    min_m: usize,
    cache: Arc<PieriCache>,
    polys: HashMap<Partition, Arc<LaurentPoly>>,
    coeffs: HashMap<(Partition, Partition), BranchingCoeffs>,
    branch_polys: HashMap<(Partition, Partition), Arc<LaurentPoly>>,
}

impl MkBuilder {
    pub fn new(params: ParameterPoint) -> Self {
        Self {
            params,
            min_m: 0,
            cache: Arc::new(PieriCache::new()),
            polys: HashMap::new(),
            coeffs: HashMap::new(),
            branch_polys: HashMap::new(),
        }
    }

    /// Use `m = max(min_m, λ₁)` in every branching step instead of `λ₁`.
    pub fn with_min_m(mut self, min_m: usize) -> Self {
        self.min_m = min_m;
        self
    }

    pub fn params(&self) -> &ParameterPoint {
        &self.params
    }

    pub fn cache(&self) -> &PieriCache {
        &self.cache
    }

    /// Every branching coefficient computed so far.
    pub fn branching_coeffs_seen(&self) -> impl Iterator<Item = &BranchingCoeffs> {
        self.coeffs.values()
    }

    pub fn branching_coeffs(&mut self, lambda: &Partition, mu: &Partition) -> Result<&BranchingCoeffs> {
        let key = (lambda.clone(), mu.clone());
        if !self.coeffs.contains_key(&key) {
            let m = lambda.first().max(self.min_m);
            let c = branching_coeffs_cached(lambda, mu, m, &self.params, &self.cache)?;
            self.coeffs.insert(key.clone(), c);
        }
        Ok(&self.coeffs[&key])
    }

    pub fn branching_poly(&mut self, lambda: &Partition, mu: &Partition) -> Result<Arc<LaurentPoly>> {
        let key = (lambda.clone(), mu.clone());
        if let Some(p) = self.branch_polys.get(&key) {
            return Ok(p.clone());
        }
        let params = self.params.clone();
        let coeffs = self.branching_coeffs(lambda, mu)?;
        let p = Arc::new(branching_poly_from(coeffs, &params)?);
        self.branch_polys.insert(key, p.clone());
        Ok(p)
    }

    /// `P_λ` in `len(λ)` variables.
    pub fn polynomial(&mut self, lambda: &Partition) -> Result<Arc<LaurentPoly>> {
        if let Some(p) = self.polys.get(lambda) {
            return Ok(p.clone());
        }
        let p = if lambda.is_empty() {
            LaurentPoly::one(0)
        } else {
            let mut acc = LaurentPoly::zero(lambda.len());
            for mu in enumerate_branch_sources(lambda)? {
                let p_mu = self.polynomial(&mu)?;
                let bp = self.branching_poly(lambda, &mu)?;
                acc = &acc + &tensor(&p_mu, &bp)?;
            }
            acc
        };
        let p = Arc::new(p);
        self.polys.insert(lambda.clone(), p.clone());
        Ok(p)
    }
}

/// `P_λ(z₁,…,z_n; q,t,𝐭)` for `λ ∈ Λ_n`.
pub fn compute_mk(lambda: &Partition, params: &ParameterPoint) -> Result<LaurentPoly> {
    let mut builder = MkBuilder::new(params.clone());
    Ok(builder.polynomial(lambda)?.as_ref().clone())
}

/// `P_λ` as the explicit sum over chains `μ⁽¹⁾ ⪯ ⋯ ⪯ μ⁽ⁿ⁾ = λ` of products
/// of one-variable branching polynomials, with `P_{μ⁽¹⁾/∅}` the Askey-Wilson
/// polynomial. Slower than [`compute_mk`]; kept as an independent route.
pub fn compute_mk_via_chains(lambda: &Partition, params: &ParameterPoint) -> Result<LaurentPoly> {
    let n = lambda.len();
    if n == 0 {
        return Ok(LaurentPoly::one(0));
    }
    let mut memo: HashMap<(Partition, Partition), LaurentPoly> = HashMap::new();
    let mut total = LaurentPoly::zero(n);
    for chain in enumerate_chains(lambda) {
        let mut prod = LaurentPoly::one(n);
        let mut below = Partition::default();
        for (i, step) in chain.iter().enumerate() {
            let key = (step.clone(), below.clone());
            if !memo.contains_key(&key) {
                memo.insert(key.clone(), branching_poly(step, &below, params)?);
            }
            let factor = memo[&key].embed(n, &[i])?;
            prod = &prod * &factor;
            below = step.clone();
        }
        total = &total + &prod;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use crate::partitions::partitions_in_box;
    use num_traits::{One, Zero};

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn point() -> ParameterPoint {
        ParameterPoint::new(rat(1, 3), rat(1, 2), [rat(1, 5), rat(2, 7), rat(1, 4), rat(3, 8)]).unwrap()
    }

    #[test]
    fn constant_branching() {
        let c = branching_coeffs(&p(&[0, 0]), &p(&[0]), 0, &point()).unwrap();
        assert_eq!(c.d, 0);
        assert_eq!(c.b, vec![FieldElement::one()]);
        assert_eq!(compute_mk(&p(&[0, 0, 0]), &point()).unwrap(), LaurentPoly::one(3));
        assert_eq!(
            compute_mk(&Partition::default(), &point()).unwrap(),
            LaurentPoly::one(0)
        );
    }

    #[test]
    fn degree_one_askey_wilson_is_monic() {
        let c = branching_coeffs(&p(&[1]), &Partition::default(), 1, &point()).unwrap();
        assert_eq!(c.d, 1);
        assert_eq!(c.b[1], FieldElement::one());
        let aw = askey_wilson(1, &point()).unwrap();
        assert_eq!(aw.coefficient(&[1]), FieldElement::one());
        assert_eq!(aw.coefficient(&[-1]), FieldElement::one());
        assert_eq!(aw.len(), 3);
    }

    #[test]
    fn non_source_is_rejected() {
        assert!(branching_coeffs(&p(&[1, 1, 1]), &p(&[0, 0]), 1, &point()).is_err());
        assert!(branching_coeffs(&p(&[2, 1]), &p(&[1]), 1, &point()).is_err());
    }

    #[test]
    fn branching_poly_degree_and_leading_coefficient() {
        let params = point();
        for lambda in partitions_in_box(3, 3) {
            for mu in enumerate_branch_sources(&lambda).unwrap() {
                let c = branching_coeffs(&lambda, &mu, lambda.first(), &params).unwrap();
                let bp = branching_poly_from(&c, &params).unwrap();
                assert_eq!(bp.degree_in(0), Some(c.d as i32), "{lambda}/{mu}");
                assert!(!c.b[c.d].is_zero());
                assert!(bp.is_hyperoctahedral_symmetric());
            }
        }
    }

    #[test]
    fn single_row_reduces_to_askey_wilson() {
        let params = point();
        for m in 0..4 {
            assert_eq!(
                compute_mk(&p(&[m]), &params).unwrap(),
                askey_wilson(m, &params).unwrap()
            );
        }
    }

    #[test]
    fn branch_step_matches_builder() {
        let params = point();
        let lambda = p(&[2, 1, 0]);
        let mut builder = MkBuilder::new(params.clone());
        let mut table = HashMap::new();
        for mu in enumerate_branch_sources(&lambda).unwrap() {
            table.insert(mu.clone(), builder.polynomial(&mu).unwrap().as_ref().clone());
        }
        let stepped = branch_step(&table, &lambda, &params).unwrap();
        assert_eq!(&stepped, builder.polynomial(&lambda).unwrap().as_ref());
        assert!(stepped.is_hyperoctahedral_symmetric());
        assert_eq!(stepped.leading_coefficient(&lambda), FieldElement::one());
        table.remove(&p(&[1, 0]));
        assert!(branch_step(&table, &lambda, &params).is_err());
    }

    #[test]
    fn larger_m_gives_the_same_polynomial() {
        let params = point();
        let lambda = p(&[2, 1]);
        let a = compute_mk(&lambda, &params).unwrap();
        let mut builder = MkBuilder::new(params).with_min_m(4);
        assert_eq!(builder.polynomial(&lambda).unwrap().as_ref(), &a);
    }
}
