//! Explicit Pieri coefficients `C^{μ,n}_{λ,r}` for multiplication by the
//! one-column interpolation polynomials `E_r`.
//!
//! Every hatted quantity is computed in `ℚ(√s)` exactly as it appears in the
//! closed formulas; hatted symbols only ever occur in pairs, so each factor
//! and each final coefficient must collapse to ℚ. That collapse is checked,
//! not assumed.

use std::collections::HashMap;
use std::sync::RwLock;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{pow_rat, qpochhammer, FieldElement, ParameterPoint, Rational};
use crate::partitions::{enumerate_pieri_targets, proximity, Partition};

/// The rows where `λ` and `μ` differ, with the sign of the change.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedSupport {
    /// `(j, ε_j)` for `j ∈ J` (1-based, increasing), `ε_j = μ_j − λ_j ∈ {±1}`.
    pub moved: Vec<(usize, i64)>,
    /// `J^c`, increasing.
    pub fixed: Vec<usize>,
}

impl SignedSupport {
    /// `None` unless every row changes by at most one box.
    pub fn between(lambda: &Partition, mu: &Partition, n: usize) -> Option<Self> {
        let mut moved = Vec::new();
        let mut fixed = Vec::new();
        for j in 1..=n {
            let (l, m) = (lambda.part(j) as i64, mu.part(j) as i64);
            match m - l {
                0 => fixed.push(j),
                e @ (1 | -1) => moved.push((j, e)),
                _ => return None,
            }
        }
        Some(Self { moved, fixed })
    }

    pub fn size(&self) -> usize {
        self.moved.len()
    }
}

/// Numerator and denominator accumulated factor by factor so that a
/// vanishing denominator can be named.
struct Fraction {
    num: FieldElement,
    den: FieldElement,
}

impl Fraction {
    fn new() -> Self {
        Self {
            num: FieldElement::one(),
            den: FieldElement::one(),
        }
    }

    fn mul_num(&mut self, f: &FieldElement) {
        self.num *= f;
    }

    fn mul_den(&mut self, f: &FieldElement, label: impl FnOnce() -> String) -> Result<()> {
        if f.is_zero() {
            return Err(Error::resonant(label()));
        }
        self.den *= f;
        Ok(())
    }

    fn value(self, what: &str) -> Result<FieldElement> {
        let inv = self
            .den
            .inv()
            .ok_or_else(|| Error::resonant(format!("denominator of {what} is a zero divisor in ℚ(√s)")))?;
        Ok(&self.num * &inv)
    }
}

fn one_minus(x: &FieldElement) -> FieldElement {
    &FieldElement::one() - x
}

/// Evaluation context for one `(λ, n, parameters)` triple.
struct Ctx<'a> {
    params: &'a ParameterPoint,
    lambda: &'a Partition,
    t: FieldElement,
    t_inv: FieldElement,
    t0: FieldElement,
    tau_hat: Vec<FieldElement>,
    tau_hat_inv: Vec<FieldElement>,
    t_hat: [FieldElement; 4],
}

impl<'a> Ctx<'a> {
    fn new(lambda: &'a Partition, n: usize, params: &'a ParameterPoint) -> Self {
        let tau_hat: Vec<_> = (1..=n).map(|j| params.tau_hat(n, j)).collect();
        let tau_hat_inv = tau_hat
            .iter()
            .map(|x| x.inv().expect("τ̂_j is nonzero for nonzero parameters"))
            .collect();
        Self {
            params,
            lambda,
            t: FieldElement::rational(params.t().clone()),
            t_inv: FieldElement::rational(params.t().recip()),
            t0: FieldElement::rational(params.t0().clone()),
            tau_hat,
            tau_hat_inv,
            t_hat: [params.t_hat(0), params.t_hat(1), params.t_hat(2), params.t_hat(3)],
        }
    }

    fn lam(&self, j: usize) -> i64 {
        self.lambda.part(j) as i64
    }

    fn qpow(&self, e: i64) -> Rational {
        pow_rat(self.params.q(), e)
    }

    /// `τ̂_j^ε`.
    fn th(&self, j: usize, eps: i64) -> &FieldElement {
        if eps >= 0 {
            &self.tau_hat[j - 1]
        } else {
            &self.tau_hat_inv[j - 1]
        }
    }

    /// `∏_l (1 − t̂_l τ̂_j^ε q^{ελ_j}) / (t₀ (1 − τ̂_j^{2ε} q^{2ελ_j})(1 − τ̂_j^{2ε} q^{2ελ_j+1}))`
    fn single(&self, frac: &mut Fraction, j: usize, eps: i64) -> Result<()> {
        let th = self.th(j, eps);
        let ql = self.qpow(eps * self.lam(j));
        for l in 0..4 {
            let x = (&self.t_hat[l] * th).scale(&ql);
            frac.mul_num(&one_minus(&x));
        }
        let th2 = th * th;
        frac.mul_den(&self.t0, || "t0".into())?;
        let a = th2.scale(&self.qpow(2 * eps * self.lam(j)));
        frac.mul_den(&one_minus(&a), || {
            format!("1 - tau_hat_{j}^(2*{eps}) q^(2*{eps}*lambda_{j})")
        })?;
        let b = th2.scale(&self.qpow(2 * eps * self.lam(j) + 1));
        frac.mul_den(&one_minus(&b), || {
            format!("1 - tau_hat_{j}^(2*{eps}) q^(2*{eps}*lambda_{j}+1)")
        })
    }

    /// Pair block shared by `V` (`u_style = false`) and `U` (`u_style = true`):
    /// with `y = τ̂_j^ε τ̂_k^δ q^{ελ_j + δλ_k}`,
    /// `V`: `(1 − ty)(1 − tyq) / (t(1 − y)(1 − yq))`,
    /// `U`: `(1 − ty)(1 − t⁻¹yq) / ((1 − y)(1 − yq))`.
    fn pair(&self, frac: &mut Fraction, (j, e): (usize, i64), (k, d): (usize, i64), u_style: bool) -> Result<()> {
        let y = (self.th(j, e) * self.th(k, d)).scale(&self.qpow(e * self.lam(j) + d * self.lam(k)));
        let yq = y.scale(self.params.q());
        frac.mul_num(&one_minus(&(&self.t * &y)));
        if u_style {
            frac.mul_num(&one_minus(&(&self.t_inv * &yq)));
        } else {
            frac.mul_num(&one_minus(&(&self.t * &yq)));
            frac.mul_den(&self.t, || "t".into())?;
        }
        frac.mul_den(&one_minus(&y), || {
            format!("1 - tau_hat_{j}^{e} tau_hat_{k}^{d} q^(...) [rows {j},{k}]")
        })?;
        frac.mul_den(&one_minus(&yq), || {
            format!("1 - tau_hat_{j}^{e} tau_hat_{k}^{d} q^(...+1) [rows {j},{k}]")
        })
    }

    /// Cross block between a moved row `j` and an unmoved row `k`:
    /// `(1 − tτ̂_j^ε τ̂_k q^{ελ_j+λ_k})(1 − tτ̂_j^ε τ̂_k⁻¹ q^{ελ_j−λ_k}) / (t(1 − …)(1 − …))`.
    fn cross(&self, frac: &mut Fraction, (j, e): (usize, i64), k: usize) -> Result<()> {
        frac.mul_den(&self.t, || "t".into())?;
        for d in [1i64, -1] {
            let y = (self.th(j, e) * self.th(k, d)).scale(&self.qpow(e * self.lam(j) + d * self.lam(k)));
            frac.mul_num(&one_minus(&(&self.t * &y)));
            frac.mul_den(&one_minus(&y), || {
                format!("1 - tau_hat_{j}^{e} tau_hat_{k}^{d} q^(...) [rows {j},{k}]")
            })?;
        }
        Ok(())
    }
}

fn check_collapse(x: FieldElement, what: &str) -> Result<FieldElement> {
    if !x.is_rational() {
        // Hatted symbols always pair up; a surviving √s means a transcription error.
        return Err(Error::invalid(format!("{what} did not collapse to a rational: {x}")));
    }
    Ok(x)
}

fn padded(lambda: &Partition, n: usize) -> Result<Partition> {
    lambda.padded(n)
}

/// `P_λ(τ̂₁,…,τ̂_n; q,t,𝐭)` through its product formula.
///
/// The value coincides with evaluating `P_λ` at the unhatted spectral point
/// `(τ₁,…,τ_n)`, `τ_j = t^{n−j}t₀`.
pub fn principal_specialization(lambda: &Partition, n: usize, params: &ParameterPoint) -> Result<FieldElement> {
    let lambda = padded(lambda, n)?;
    let ctx = Ctx::new(&lambda, n, params);
    let q = params.q();
    let mut frac = Fraction::new();
    for j in 1..=n {
        let lj = ctx.lam(j);
        for l in 0..4 {
            frac.mul_num(&qpochhammer(&(&ctx.t_hat[l] * &ctx.tau_hat[j - 1]), q, lj)?);
        }
        let tau_pow = FieldElement::rational(pow_rat(&params.tau(n, j), lj));
        frac.mul_den(&tau_pow, || format!("tau_{j}^lambda_{j}"))?;
        let th2 = &ctx.tau_hat[j - 1] * &ctx.tau_hat[j - 1];
        for i in 0..2 * lj {
            let f = one_minus(&th2.scale(&pow_rat(q, i)));
            frac.mul_den(&f, || format!("(tau_hat_{j}^2; q)_{{2 lambda_{j}}} factor q^{i}"))?;
        }
    }
    for j in 1..=n {
        for k in j + 1..=n {
            let (lj, lk) = (ctx.lam(j), ctx.lam(k));
            let prod = &ctx.tau_hat[j - 1] * &ctx.tau_hat[k - 1];
            let ratio = &ctx.tau_hat[j - 1] * &ctx.tau_hat_inv[k - 1];
            frac.mul_num(&qpochhammer(&(&ctx.t * &prod), q, lj + lk)?);
            frac.mul_num(&qpochhammer(&(&ctx.t * &ratio), q, lj - lk)?);
            for i in 0..lj + lk {
                let f = one_minus(&prod.scale(&pow_rat(q, i)));
                frac.mul_den(&f, || format!("(tau_hat_{j} tau_hat_{k}; q) factor q^{i}"))?;
            }
            for i in 0..lj - lk {
                let f = one_minus(&ratio.scale(&pow_rat(q, i)));
                frac.mul_den(&f, || format!("(tau_hat_{j}/tau_hat_{k}; q) factor q^{i}"))?;
            }
        }
    }
    check_collapse(frac.value("principal specialization")?, "principal specialization")
}

/// `V^n_{εJ}(λ)`: one single block per moved row, one pair block per pair of
/// moved rows, one cross block per (moved, unmoved) pair. Equals 1 for `J = ∅`.
pub fn v_factor(
    lambda: &Partition,
    support: &SignedSupport,
    n: usize,
    params: &ParameterPoint,
) -> Result<FieldElement> {
    let lambda = padded(lambda, n)?;
    let ctx = Ctx::new(&lambda, n, params);
    let mut frac = Fraction::new();
    for (a, &(j, e)) in support.moved.iter().enumerate() {
        ctx.single(&mut frac, j, e)?;
        for &other in &support.moved[a + 1..] {
            ctx.pair(&mut frac, (j, e), other, false)?;
        }
        for &k in &support.fixed {
            ctx.cross(&mut frac, (j, e), k)?;
        }
    }
    check_collapse(frac.value("V factor")?, "V factor")
}

/// All `(I, ε)` with `I ⊂ K`, `|I| = p` and `ε ∈ {±1}^I`: the index set of the
/// `U` sum, `C(|K|, p)·2^p` entries.
pub fn signed_subsets(k: &[usize], p: usize) -> Vec<Vec<(usize, i64)>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(p);
    fn rec(k: &[usize], p: usize, start: usize, current: &mut Vec<(usize, i64)>, out: &mut Vec<Vec<(usize, i64)>>) {
        if current.len() == p {
            out.push(current.clone());
            return;
        }
        for idx in start..k.len() {
            if k.len() - idx < p - current.len() {
                break;
            }
            for e in [1, -1] {
                current.push((k[idx], e));
                rec(k, p, idx + 1, current, out);
                current.pop();
            }
        }
    }
    rec(k, p, 0, &mut current, &mut out);
    out
}

/// `U^n_{K,p}(λ) = (−1)^p Σ_{I⊂K,|I|=p, ε} (singles · U-pairs · crosses over K∖I)`.
/// Equals 1 for `p = 0`.
pub fn u_factor(lambda: &Partition, k: &[usize], p: usize, n: usize, params: &ParameterPoint) -> Result<FieldElement> {
    if p > k.len() {
        return Err(Error::invalid(format!(
            "U factor needs p ≤ |K|, got p={p}, |K|={}",
            k.len()
        )));
    }
    if let Some(&bad) = k.iter().find(|&&j| j == 0 || j > n) {
        return Err(Error::invalid(format!("index {bad} outside 1..={n}")));
    }
    let lambda = padded(lambda, n)?;
    let ctx = Ctx::new(&lambda, n, params);
    let mut sum = FieldElement::zero();
    for subset in signed_subsets(k, p) {
        let mut frac = Fraction::new();
        for (a, &(i, e)) in subset.iter().enumerate() {
            ctx.single(&mut frac, i, e)?;
            for &other in &subset[a + 1..] {
                ctx.pair(&mut frac, (i, e), other, true)?;
            }
            for &kk in k.iter().filter(|kk| !subset.iter().any(|(i2, _)| i2 == *kk)) {
                ctx.cross(&mut frac, (i, e), kk)?;
            }
        }
        sum += &frac.value("U summand")?;
    }
    if p % 2 == 1 {
        sum = -sum;
    }
    check_collapse(sum, "U factor")
}

/// `C^{μ,n}_{λ,r}`, the coefficient of `P_μ` in `E_r·P_λ`.
///
/// Exact zero when `μ ≁_r λ`; for `r = 0` it is `δ_{λμ}`.
pub fn pieri_coeff(
    lambda: &Partition,
    mu: &Partition,
    r: usize,
    n: usize,
    params: &ParameterPoint,
) -> Result<FieldElement> {
    if r > n {
        return Err(Error::invalid(format!("Pieri index r={r} exceeds n={n}")));
    }
    let lambda = padded(lambda, n)?;
    let mu = padded(mu, n)?;
    if r == 0 {
        return Ok(if lambda == mu {
            FieldElement::one()
        } else {
            FieldElement::zero()
        });
    }
    if !proximity(&mu, &lambda, r) {
        return Ok(FieldElement::zero());
    }
    let support = SignedSupport::between(&lambda, &mu, n).expect("proximity bounds every row change by one");
    let ps_lambda = principal_specialization(&lambda, n, params)?;
    let ps_mu = principal_specialization(&mu, n, params)?;
    let ratio = ps_lambda
        .checked_div(&ps_mu)
        .ok_or_else(|| Error::resonant(format!("principal specialization of {mu} vanishes")))?;
    let v = v_factor(&lambda, &support, n, params)?;
    let u = u_factor(&lambda, &support.fixed, r - support.size(), n, params)?;
    check_collapse(&(&ratio * &v) * &u, "Pieri coefficient")
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct PieriKey {
    lambda: Partition,
    mu: Partition,
    r: usize,
    n: usize,
    params: ParameterPoint,
}

/// Write-once memo for Pieri coefficients. Concurrent computations of the
/// same key may race; both store the same value and readers only ever see
/// complete entries.
#[derive(Debug, Default)]
pub struct PieriCache {
    map: RwLock<HashMap<PieriKey, FieldElement>>,
}

impl PieriCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Snapshot of every stored coefficient.
    pub fn values(&self) -> Vec<FieldElement> {
        self.map.read().expect("cache lock").values().cloned().collect()
    }

    pub fn get_or_compute(
        &self,
        lambda: &Partition,
        mu: &Partition,
        r: usize,
        n: usize,
        params: &ParameterPoint,
    ) -> Result<FieldElement> {
        let key = PieriKey {
            lambda: padded(lambda, n)?,
            mu: padded(mu, n)?,
            r,
            n,
            params: params.clone(),
        };
        if let Some(v) = self.map.read().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let v = pieri_coeff(&key.lambda, &key.mu, r, n, params)?;
        self.map
            .write()
            .expect("cache lock")
            .entry(key)
            .or_insert_with(|| v.clone());
        Ok(v)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PieriEntry {
    pub lambda: Partition,
    pub mu: Partition,
    pub r: usize,
    pub n: usize,
    #[serde(rename = "C")]
    pub c: FieldElement,
}

/// Every nonzero-support coefficient of `E_r·P_λ` in graded-lex order of `μ`.
pub fn pieri_table(lambda: &Partition, n: usize, r: usize, params: &ParameterPoint) -> Result<Vec<PieriEntry>> {
    let lambda = padded(lambda, n)?;
    enumerate_pieri_targets(&lambda, n, r)?
        .into_iter()
        .map(|mu| {
            let c = pieri_coeff(&lambda, &mu, r, n, params)?;
            Ok(PieriEntry {
                lambda: lambda.clone(),
                mu,
                r,
                n,
                c,
            })
        })
        .collect()
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

    fn r(x: &FieldElement) -> Rational {
        x.to_rational().expect("rational").clone()
    }

    // E₁·P_λ for Askey-Wilson P_λ, solved independently from the ₄φ₃ form
    #[test]
    fn one_variable_coefficients_match_oracle() {
        let pp = params();
        let cases: [(usize, usize, Rational); 8] = [
            (0, 1, rat(1, 1)),
            (0, 0, rat(-23199, 5570)),
            (1, 2, rat(1, 1)),
            (1, 1, rat(-134369233, 28056090)),
            (1, 0, rat(5606425, 13340707)),
            (2, 3, rat(1, 1)),
            (2, 2, rat(-98693599, 19526770)),
            (2, 1, Rational::new(464636943252i64.into(), 610821346757i64.into())),
        ];
        for (l, m, want) in cases {
            let c = pieri_coeff(&p(&[l]), &p(&[m]), 1, 1, &pp).unwrap();
            assert_eq!(r(&c), want, "λ=({l}) μ=({m})");
        }
    }

    #[test]
    fn trivial_cases() {
        let pp = params();
        let l = p(&[2, 1]);
        assert_eq!(pieri_coeff(&l, &l, 0, 2, &pp).unwrap(), FieldElement::one());
        assert!(pieri_coeff(&l, &p(&[1, 1]), 0, 2, &pp).unwrap().is_zero());
        // not proximate
        assert!(pieri_coeff(&l, &p(&[3, 2]), 1, 2, &pp).unwrap().is_zero());
        assert!(pieri_coeff(&l, &l, 3, 2, &pp).is_err());
        assert_eq!(
            principal_specialization(&p(&[0, 0]), 2, &pp).unwrap(),
            FieldElement::one()
        );
    }

    #[test]
    fn single_row_factors() {
        let pp = params();
        let (q, s, t0) = (pp.q().clone(), pp.s().clone(), pp.t0().clone());
        let one = Rational::one();
        let mut num = &one - &s;
        for l in 1..4 {
            num *= &one - &(&t0 * pp.tl(l));
        }
        let expect = num / (&t0 * (&one - &s) * (&one - &s * &q));
        let supp = SignedSupport::between(&p(&[0]), &p(&[1]), 1).unwrap();
        assert_eq!(r(&v_factor(&p(&[0]), &supp, 1, &pp).unwrap()), expect);
        assert_eq!(r(&principal_specialization(&p(&[1]), 1, &pp).unwrap()), expect);
        // at λ = 0 the ε = −1 summand carries the factor 1 − t̂₀/t̂₀ = 0
        assert_eq!(r(&u_factor(&p(&[0]), &[1], 1, 1, &pp).unwrap()), -expect);
        assert_eq!(u_factor(&p(&[1, 0]), &[1, 2], 0, 2, &pp).unwrap(), FieldElement::one());
        let empty = SignedSupport::between(&p(&[1, 0]), &p(&[1, 0]), 2).unwrap();
        assert_eq!(v_factor(&p(&[1, 0]), &empty, 2, &pp).unwrap(), FieldElement::one());
    }

    #[test]
    fn signed_subset_counts() {
        let k = [1, 3, 4, 6];
        for p in 0..=4 {
            let subsets = signed_subsets(&k, p);
            let binom = [1, 4, 6, 4, 1][p];
            assert_eq!(subsets.len(), binom << p);
            let mut dedup = subsets.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), subsets.len());
        }
    }

    #[test]
    fn support_rejects_two_box_rows() {
        assert!(SignedSupport::between(&p(&[2, 0]), &p(&[0, 0]), 2).is_none());
        let s = SignedSupport::between(&p(&[2, 1, 0]), &p(&[1, 1, 1]), 3);
        let s = s.unwrap();
        assert_eq!(s.moved, vec![(1, -1), (3, 1)]);
        assert_eq!(s.fixed, vec![2]);
    }

    #[test]
    fn cache_matches_direct() {
        let pp = params();
        let cache = PieriCache::new();
        for lam in crate::partitions::partitions_in_box(2, 2) {
            for mu in enumerate_pieri_targets(&lam, 2, 2).unwrap() {
                let direct = pieri_coeff(&lam, &mu, 2, 2, &pp).unwrap();
                assert_eq!(cache.get_or_compute(&lam, &mu, 2, 2, &pp).unwrap(), direct);
                assert_eq!(cache.get_or_compute(&lam, &mu, 2, 2, &pp).unwrap(), direct);
            }
        }
        assert!(!cache.is_empty());
    }

    #[test]
    fn resonance_is_reported() {
        // t = q makes 1 − τ̂₁⁻¹τ̂₂q vanish in a U pair block at λ = 0
        let pp = ParameterPoint::new(rat(1, 3), rat(1, 3), [rat(1, 5), rat(2, 7), rat(1, 4), rat(3, 8)]).unwrap();
        let got = (0..3)
            .flat_map(|a| (0..=a).map(move |b| p(&[a, b])))
            .flat_map(|l| {
                let pp = pp.clone();
                enumerate_pieri_targets(&l, 2, 2)
                    .unwrap()
                    .into_iter()
                    .map(move |m| pieri_coeff(&l, &m, 2, 2, &pp))
            })
            .any(|res| matches!(res, Err(Error::Resonant { .. })));
        assert!(got);
    }

    #[test]
    fn table_is_graded_lex() {
        let t = pieri_table(&p(&[1, 1]), 2, 1, &params()).unwrap();
        let mus: Vec<_> = t.iter().map(|e| e.mu.to_string()).collect();
        assert_eq!(mus, ["(1,0)", "(1,1)", "(2,1)"]);
        let json = serde_json::to_value(&t[2]).unwrap();
        assert_eq!(json["C"]["b"], "0");
        assert_eq!(json["mu"], serde_json::json!([2, 1]));
    }
}
