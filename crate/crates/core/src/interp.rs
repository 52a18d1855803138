//! One-column interpolation polynomials `E_r`, the one-variable
//! interpolation basis `⟨x;t₀⟩_{b,k}` and the Cauchy kernel.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{pow_rat, FieldElement, Rational};
use crate::laurent::{bracket, LaurentPoly};

/// `E_r(z₁,…,z_n; t, t₀) = Σ_{j₁<⋯<j_r} ∏_l ⟨z_{j_l}; t^{j_l−l}t₀⟩`, with
/// `E₀ = 1`.
///
/// The shift of the `l`-th chosen variable depends on its position `l`
/// within the subset. Only this choice gives a hyperoctahedral-symmetric
/// polynomial for `r ≥ 2` and satisfies the column-row Cauchy identity.
pub fn e_r(n: usize, r: usize, t: &Rational, t0: &Rational) -> Result<LaurentPoly> {
    if r > n {
        return Err(Error::invalid(format!("E_r needs 0 ≤ r ≤ n, got r={r}, n={n}")));
    }
    Ok(e_all(n, t, t0)?.swap_remove(r))
}

/// `[E₀, E₁, …, E_n]`, built with the recurrence over the last variable
/// `E_r^{(j)} = E_r^{(j−1)} + ⟨z_j; t^{j−r}t₀⟩·E_{r−1}^{(j−1)}`.
pub fn e_all(n: usize, t: &Rational, t0: &Rational) -> Result<Vec<LaurentPoly>> {
    if t.is_zero() || t0.is_zero() {
        return Err(Error::invalid("E_r needs nonzero t and t0"));
    }
    let mut layer: Vec<LaurentPoly> = vec![LaurentPoly::one(n)];
    for j in 1..=n {
        let mut next = Vec::with_capacity(j + 1);
        for r in 0..=j {
            let mut acc = layer.get(r).cloned().unwrap_or_else(|| LaurentPoly::zero(n));
            if r > 0 {
                let shift = FieldElement::rational(pow_rat(t, j as i64 - r as i64) * t0);
                let br = bracket(n, j - 1, &shift)?;
                acc = &acc + &(&br * &layer[r - 1]);
            }
            next.push(acc);
        }
        layer = next;
    }
    Ok(layer)
}

/// `⟨x; t₀⟩_{b,k} = ⟨x;t₀⟩⟨x;bt₀⟩⋯⟨x;b^{k−1}t₀⟩` in variable `var` of an
/// `nvars`-variable ring. The base `b` is `q` in the branching expansion and
/// `t` in the column-row Cauchy identity.
pub fn interp_basis_in(nvars: usize, var: usize, k: usize, base: &Rational, t0: &Rational) -> Result<LaurentPoly> {
    let mut acc = LaurentPoly::one(nvars);
    let mut shift = FieldElement::rational(t0.clone());
    for _ in 0..k {
        acc = &acc * &bracket(nvars, var, &shift)?;
        shift = shift.scale(base);
    }
    Ok(acc)
}

/// One-variable `⟨x; t₀⟩_{b,k}`.
pub fn one_var_basis(k: usize, base: &Rational, t0: &Rational) -> Result<LaurentPoly> {
    interp_basis_in(1, 0, k, base, t0)
}

/// All `⟨x; t₀⟩_{b,k}` for `k = 0..=kmax`, sharing the partial products.
pub fn one_var_basis_upto(kmax: usize, base: &Rational, t0: &Rational) -> Result<Vec<LaurentPoly>> {
    let mut out = Vec::with_capacity(kmax + 1);
    let mut acc = LaurentPoly::one(1);
    let mut shift = FieldElement::rational(t0.clone());
    out.push(acc.clone());
    for _ in 0..kmax {
        acc = &acc * &bracket(1, 0, &shift)?;
        shift = shift.scale(base);
        out.push(acc.clone());
    }
    Ok(out)
}

/// `∏_{i≤m, j≤n} ⟨x_i; z_j⟩` with `⟨x;z⟩ = x + x⁻¹ − z − z⁻¹`, in variables
/// `x₁..x_m, z₁..z_n` (in that order).
pub fn cauchy_kernel(m: usize, n: usize) -> Result<LaurentPoly> {
    if m == 0 || n == 0 {
        return Err(Error::invalid("Cauchy kernel needs m, n ≥ 1"));
    }
    let nv = m + n;
    let sym = |v: usize| &LaurentPoly::monomial(nv, v, 1) + &LaurentPoly::monomial(nv, v, -1);
    let mut acc = LaurentPoly::one(nv);
    for i in 0..m {
        let xi = sym(i);
        for j in 0..n {
            acc = &acc * &(&xi - &sym(m + j));
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use num_traits::One;

    #[test]
    fn e_r_examples() {
        let (t, t0) = (rat(1, 2), rat(1, 5));
        assert_eq!(e_r(3, 0, &t, &t0).unwrap(), LaurentPoly::one(3));
        let t0f = FieldElement::rational(t0.clone());
        assert_eq!(e_r(1, 1, &t, &t0).unwrap(), bracket(1, 0, &t0f).unwrap());
        let expect = &bracket(2, 0, &t0f).unwrap() + &bracket(2, 1, &t0f.scale(&t)).unwrap();
        assert_eq!(e_r(2, 1, &t, &t0).unwrap(), expect);
        assert!(e_r(2, 3, &t, &t0).is_err());
    }

    #[test]
    fn e_r_matches_subset_sum() {
        let (t, t0) = (rat(2, 3), rat(3, 7));
        let n = 4;
        for r in 0..=n {
            let mut expect = LaurentPoly::zero(n);
            for mask in 0u32..(1 << n) {
                if mask.count_ones() as usize != r {
                    continue;
                }
                let mut prod = LaurentPoly::one(n);
                let mut l = 0i64;
                for j in 0..n {
                    if mask & (1 << j) != 0 {
                        // j is 0-based, l counts chosen variables so far
                        let x = FieldElement::rational(pow_rat(&t, j as i64 - l) * &t0);
                        prod = &prod * &bracket(n, j, &x).unwrap();
                        l += 1;
                    }
                }
                expect = &expect + &prod;
            }
            let got = e_r(n, r, &t, &t0).unwrap();
            assert_eq!(got, expect, "r={r}");
            assert!(got.is_hyperoctahedral_symmetric(), "E_{r} not symmetric");
        }
    }

    #[test]
    fn basis_examples() {
        let (q, t0) = (rat(1, 3), rat(1, 5));
        assert_eq!(one_var_basis(0, &q, &t0).unwrap(), LaurentPoly::one(1));
        let t0f = FieldElement::rational(t0.clone());
        assert_eq!(one_var_basis(1, &q, &t0).unwrap(), bracket(1, 0, &t0f).unwrap());
        // vanishes at x = q^h t₀ once k > h
        for h in 0..3 {
            let x = FieldElement::rational(pow_rat(&q, h) * &t0);
            for k in 0..5usize {
                let v = one_var_basis(k, &q, &t0)
                    .unwrap()
                    .evaluate(std::slice::from_ref(&x))
                    .unwrap();
                assert_eq!(v.is_zero(), k as i64 > h, "h={h} k={k}");
            }
        }
        let upto = one_var_basis_upto(4, &q, &t0).unwrap();
        for (k, b) in upto.iter().enumerate() {
            assert_eq!(b, &one_var_basis(k, &q, &t0).unwrap());
        }
    }

    #[test]
    fn kernel_examples() {
        let k = cauchy_kernel(1, 1).unwrap();
        assert_eq!(k.len(), 4);
        assert_eq!(k.coefficient(&[1, 0]), FieldElement::one());
        assert_eq!(k.coefficient(&[0, -1]), FieldElement::from_int(-1));
        // swapping the roles of the two variable sets flips the sign (−1)^{mn}
        let k23 = cauchy_kernel(2, 3).unwrap();
        let k32 = cauchy_kernel(3, 2).unwrap().embed(5, &[2, 3, 4, 0, 1]).unwrap();
        assert_eq!(k23, k32);
        let k12 = cauchy_kernel(1, 2).unwrap();
        let k21 = cauchy_kernel(2, 1).unwrap().embed(3, &[1, 2, 0]).unwrap();
        assert_eq!(k12, k21);
        let k11 = cauchy_kernel(1, 1).unwrap();
        assert_eq!(k11.embed(2, &[1, 0]).unwrap(), -&k11);
    }
}
