use num_traits::{One, Zero};

use super::IdentityReport;
use crate::branching::{branching_coeffs_cached, branching_poly_from, compute_mk_via_chains, MkBuilder};
use crate::error::{Error, Result};
use crate::field::{pow_rat, FieldElement, ParameterPoint, Rational};
use crate::interp::{cauchy_kernel, e_r, interp_basis_in, one_var_basis_upto};
use crate::laurent::LaurentPoly;
use crate::partitions::{
    double_strip_leq, enumerate_pieri_targets, partitions_in_box, proximity, strip_degree, Partition,
};
use crate::pieri::{pieri_coeff, PieriCache};

fn embed_block(p: &LaurentPoly, nvars: usize, offset: usize) -> Result<LaurentPoly> {
    let positions: Vec<usize> = (offset..offset + p.nvars()).collect();
    p.embed(nvars, &positions)
}

/// `E_r·P_λ − Σ_{μ∼_rλ} C^{μ,n}_{λ,r} P_μ = 0`, with every `P` taken from
/// `builder`.
pub fn verify_pieri_with(builder: &mut MkBuilder, lambda: &Partition, n: usize, r: usize) -> Result<IdentityReport> {
    let lambda = lambda.padded(n)?;
    let params = builder.params().clone();
    let report = IdentityReport::new("pieri", format!("n={n} lambda={lambda} r={r}"), Some(&params));
    let p_lambda = builder.polynomial(&lambda)?;
    let mut diff = &e_r(n, r, params.t(), params.t0())? * p_lambda.as_ref();
    let mut coeffs = Vec::new();
    for mu in enumerate_pieri_targets(&lambda, n, r)? {
        let c = pieri_coeff(&lambda, &mu, r, n, &params)?;
        diff.add_scaled(&-&c, builder.polynomial(&mu)?.as_ref())?;
        coeffs.push(c);
    }
    Ok(report.residual(&diff).audit(&coeffs))
}

pub fn verify_pieri(lambda: &Partition, n: usize, r: usize, params: &ParameterPoint) -> Result<IdentityReport> {
    verify_pieri_with(&mut MkBuilder::new(params.clone()), lambda, n, r)
}

/// `∏⟨x_i;z_j⟩ = Σ_{λ⊂n^m} (−1)^{mn−|λ|} P_λ(x;q,t) P_{m^n−λ′}(z;t,q)`.
///
/// `dual` must be built at the point with `q` and `t` exchanged.
pub fn verify_mimachi_cauchy_with(
    builder: &mut MkBuilder,
    dual: &mut MkBuilder,
    m: usize,
    n: usize,
) -> Result<IdentityReport> {
    if dual.params() != &builder.params().swapped() {
        return Err(Error::invalid(
            "dual builder must use the parameters with q and t exchanged",
        ));
    }
    let params = builder.params().clone();
    let report = IdentityReport::new("cauchy-mimachi", format!("m={m} n={n}"), Some(&params));
    let nv = m + n;
    let mut diff = cauchy_kernel(m, n)?;
    for lambda in partitions_in_box(n, m) {
        let partner = lambda.conjugate(n)?.complement(m)?;
        let left = embed_block(builder.polynomial(&lambda)?.as_ref(), nv, 0)?;
        let right = embed_block(dual.polynomial(&partner)?.as_ref(), nv, m)?;
        let term = &left * &right;
        let sign = if (m * n - lambda.weight()).is_multiple_of(2) {
            -FieldElement::one()
        } else {
            FieldElement::one()
        };
        diff.add_scaled(&sign, &term)?;
    }
    let coeffs: Vec<_> = builder
        .cache()
        .values()
        .into_iter()
        .chain(dual.cache().values())
        .collect();
    Ok(report.residual(&diff).audit(&coeffs))
}

pub fn verify_mimachi_cauchy(m: usize, n: usize, params: &ParameterPoint) -> Result<IdentityReport> {
    let mut b = MkBuilder::new(params.clone());
    let mut d = MkBuilder::new(params.swapped());
    verify_mimachi_cauchy_with(&mut b, &mut d, m, n)
}

/// `∏_i⟨x_i;z⟩ = Σ_r (−1)^{m−r} E_r(x;t,t₀)⟨z;t₀⟩_{t,m−r}`; the
/// one-variable basis runs in base `t`.
pub fn verify_okounkov_column_row(m: usize, params: &ParameterPoint) -> Result<IdentityReport> {
    let report = IdentityReport::new("cauchy-okounkov", format!("m={m}"), Some(params));
    let (t, t0) = (params.t(), params.t0());
    let nv = m + 1;
    let mut diff = cauchy_kernel(m, 1)?;
    for r in 0..=m {
        let e = embed_block(&e_r(m, r, t, t0)?, nv, 0)?;
        let basis = interp_basis_in(nv, m, m - r, t, t0)?;
        let sign = if (m - r).is_multiple_of(2) {
            -FieldElement::one()
        } else {
            FieldElement::one()
        };
        diff.add_scaled(&sign, &(&e * &basis))?;
    }
    Ok(report.residual(&diff))
}

/// Branching coefficients agree for `m = λ₁, λ₁+1, λ₁+2`.
pub fn verify_m_independence(
    lambda: &Partition,
    mu: &Partition,
    params: &ParameterPoint,
    cache: &PieriCache,
) -> Result<IdentityReport> {
    let mut report = IdentityReport::new("m-indep", format!("lambda={lambda} mu={mu}"), Some(params));
    let m0 = lambda.first();
    let base = branching_coeffs_cached(lambda, mu, m0, params, cache)?;
    report = report.audit(&base.b);
    for m in m0 + 1..=m0 + 2 {
        let other = branching_coeffs_cached(lambda, mu, m, params, cache).map_err(|e| match e {
            Error::Resonant { factor } => Error::resonant(format!("{factor} (at m={m})")),
            e => e,
        })?;
        report = report.audit(&other.b).require(
            other.d == base.d && other.b == base.b,
            &format!("coefficients at m={m} differ from m={m0}"),
        );
    }
    Ok(report)
}

/// The step-by-step construction equals the explicit chain sum, and the
/// result is symmetric, monic at `z^λ` and dominance-triangular.
pub fn verify_branching_consistency(builder: &mut MkBuilder, lambda: &Partition) -> Result<IdentityReport> {
    let params = builder.params().clone();
    let report = IdentityReport::new("branching", format!("lambda={lambda}"), Some(&params));
    let built = builder.polynomial(lambda)?;
    let chains = compute_mk_via_chains(lambda, &params)?;
    let coeffs: Vec<_> = builder
        .branching_coeffs_seen()
        .flat_map(|c| c.b.iter().cloned())
        .collect();
    Ok(report
        .residual(&(built.as_ref() - &chains))
        .require(built.is_hyperoctahedral_symmetric(), "not hyperoctahedral symmetric")
        .require(
            built.leading_coefficient(lambda).is_one(),
            "leading coefficient is not 1",
        )
        .require(
            built.is_dominance_triangular(lambda),
            "monomial above λ in dominance order",
        )
        .audit(&coeffs))
}

/// `askey_wilson(m)` is the same at `t` and `t_alt`, and monic of degree `m`.
pub fn verify_askey_wilson_t_independence(
    m: usize,
    params: &ParameterPoint,
    t_alt: &Rational,
) -> Result<IdentityReport> {
    let report = IdentityReport::new("askey-wilson", format!("m={m} t'={t_alt}"), Some(params));
    let other = params.with_t(t_alt.clone())?;
    let cache = PieriCache::new();
    let lambda = Partition::new(vec![m])?;
    let empty = Partition::default();
    let c1 = branching_coeffs_cached(&lambda, &empty, m, params, &cache)?;
    let c2 = branching_coeffs_cached(&lambda, &empty, m, &other, &cache)?;
    let p1 = branching_poly_from(&c1, params)?;
    let p2 = branching_poly_from(&c2, &other)?;
    Ok(report
        .residual(&(&p1 - &p2))
        .require(p1.degree_in(0) == Some(m as i32), "degree differs from m")
        .require(p1.leading_coefficient(&lambda).is_one(), "not monic")
        .audit(c1.b.iter().chain(&c2.b)))
}

/// `P_{λ/μ}(t₀) = B⁰`, and at `x = t₀q^h` the basis terms with `k > h`
/// vanish, so `P_{λ/μ}(t₀q^h) = Σ_{k≤h} B^k⟨t₀q^h;t₀⟩_{q,k}`. Checked for
/// `h = 0..=d+1`.
pub fn verify_special_values(
    lambda: &Partition,
    mu: &Partition,
    params: &ParameterPoint,
    cache: &PieriCache,
) -> Result<IdentityReport> {
    let mut report = IdentityReport::new("special-values", format!("lambda={lambda} mu={mu}"), Some(params));
    let coeffs = branching_coeffs_cached(lambda, mu, lambda.first(), params, cache)?;
    let poly = branching_poly_from(&coeffs, params)?;
    let basis = one_var_basis_upto(coeffs.d, params.q(), params.t0())?;
    let t0 = FieldElement::rational(params.t0().clone());
    report = report.require(
        poly.evaluate(std::slice::from_ref(&t0))? == coeffs.b[0],
        "value at t0 differs from B^0",
    );
    for h in 0..=coeffs.d + 1 {
        let x = [FieldElement::rational(pow_rat(params.q(), h as i64) * params.t0())];
        let mut truncated = FieldElement::zero();
        for (k, (bk, pk)) in coeffs.b.iter().zip(&basis).enumerate() {
            let v = pk.evaluate(&x)?;
            if k > h {
                report = report.require(v.is_zero(), &format!("basis k={k} does not vanish at t0 q^{h}"));
            } else {
                truncated += &(bk * &v);
            }
        }
        report = report.require(
            poly.evaluate(&x)? == truncated,
            &format!("truncated sum differs at t0 q^{h}"),
        );
    }
    Ok(report.audit(&coeffs.b))
}

/// `(n^m−μ′) ∼_r ((n+1)^m−λ′)` iff `μ ⪯ λ` and `m−d ≤ r ≤ m`, for every
/// `λ ⊂ m^{n+1}`, `μ ⊂ m^n` and `0 ≤ r ≤ m`.
pub fn verify_strip_lemma(m: usize, n: usize) -> Result<IdentityReport> {
    let mut report = IdentityReport::new("strip-lemma", format!("m={m} n={n}"), None);
    let mut mismatches = 0usize;
    let mut checked = 0usize;
    for lambda in partitions_in_box(m, n + 1) {
        let to = lambda.conjugate(m)?.complement(n + 1)?;
        for mu in partitions_in_box(m, n) {
            let from = mu.conjugate(m)?.complement(n)?;
            let leq = double_strip_leq(&mu, &lambda);
            let d = if leq { strip_degree(&lambda, &mu, m)? } else { 0 };
            for r in 0..=m {
                checked += 1;
                let lhs = proximity(&to, &from, r);
                let rhs = leq && m - d <= r;
                if lhs != rhs {
                    mismatches += 1;
                    if mismatches == 1 {
                        report.note = Some(format!("first mismatch: lambda={lambda} mu={mu} r={r}"));
                    }
                }
            }
        }
    }
    report.passed = mismatches == 0;
    report.value = Some(mismatches as f64);
    report.instance = format!("m={m} n={n} ({checked} triples)");
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    fn params() -> ParameterPoint {
        ParameterPoint::new(rat(1, 3), rat(1, 2), [rat(1, 5), rat(2, 7), rat(1, 4), rat(3, 8)]).unwrap()
    }

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn pieri_small() {
        let pp = params();
        assert!(verify_pieri(&p(&[0]), 1, 0, &pp).unwrap().passed);
        assert!(verify_pieri(&p(&[0]), 1, 1, &pp).unwrap().passed);
        let rep = verify_pieri(&p(&[2, 1]), 2, 2, &pp).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert!(rep.coefficients_checked > 0);
    }

    #[test]
    fn cauchy_small() {
        let pp = params();
        for (m, n) in [(1, 1), (2, 1), (1, 2)] {
            let rep = verify_mimachi_cauchy(m, n, &pp).unwrap();
            assert!(rep.passed, "{rep:?}");
        }
        for m in 1..=3 {
            assert!(verify_okounkov_column_row(m, &pp).unwrap().passed);
        }
    }

    #[test]
    fn failing_report_lists_monomials() {
        let rep = IdentityReport::new("x", String::new(), None).residual(&cauchy_kernel(2, 2).unwrap());
        assert!(!rep.passed);
        assert_eq!(rep.offending.len(), super::super::MAX_OFFENDING);
        assert!(rep.residual_terms > 10);
    }

    #[test]
    fn dual_builder_must_be_swapped() {
        let pp = params();
        let mut b = MkBuilder::new(pp.clone());
        let mut d = MkBuilder::new(pp.clone());
        assert!(verify_mimachi_cauchy_with(&mut b, &mut d, 1, 1).is_err());
    }

    #[test]
    fn branching_and_m_independence() {
        let pp = params();
        let cache = PieriCache::new();
        for (l, m) in [(p(&[0, 0]), p(&[0])), (p(&[1, 0]), p(&[1])), (p(&[2, 1]), p(&[1]))] {
            assert!(verify_m_independence(&l, &m, &pp, &cache).unwrap().passed);
            assert!(verify_special_values(&l, &m, &pp, &cache).unwrap().passed);
        }
        let mut b = MkBuilder::new(pp.clone());
        assert!(verify_branching_consistency(&mut b, &p(&[2, 1])).unwrap().passed);
        assert!(verify_askey_wilson_t_independence(3, &pp, &rat(2, 9)).unwrap().passed);
    }

    #[test]
    fn strip_lemma_small() {
        for m in 1..=2 {
            for n in 0..=2 {
                let rep = verify_strip_lemma(m, n).unwrap();
                assert!(rep.passed, "{rep:?}");
            }
        }
    }
}
