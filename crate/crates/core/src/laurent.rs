//! Sparse multivariate Laurent polynomials over [`FieldElement`].

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::partitions::Partition;

pub type Exponent = Vec<i32>;

/// A Laurent polynomial in `nvars` variables. Terms are keyed by exponent
/// vector; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, FieldElement>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: FieldElement) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, FieldElement::one())
    }

    /// `z_i^e` with 0-based `var`.
    pub fn monomial(nvars: usize, var: usize, e: i32) -> Self {
        let mut exp = vec![0; nvars];
        exp[var] = e;
        let mut p = Self::zero(nvars);
        p.terms.insert(exp, FieldElement::one());
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// repeated exponents.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, FieldElement)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (exp, c) in terms {
            if exp.len() != nvars {
                return Err(Error::invalid(format!(
                    "exponent {exp:?} has length {} but polynomial has {nvars} variables",
                    exp.len()
                )));
            }
            p.add_term(exp, &c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, FieldElement> {
        &self.terms
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp: &[i32]) -> FieldElement {
        self.terms.get(exp).cloned().unwrap_or_else(FieldElement::zero)
    }

    fn add_term(&mut self, exp: Exponent, c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_nvars(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::invalid(format!(
                "variable count mismatch: {} vs {}",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_nvars(other)?;
        let mut acc: HashMap<Exponent, FieldElement> = HashMap::with_capacity(self.len() * other.len());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let prod = c1 * c2;
                match acc.entry(e) {
                    Entry::Vacant(v) => {
                        v.insert(prod);
                    }
                    Entry::Occupied(mut o) => {
                        *o.get_mut() += &prod;
                    }
                }
            }
        }
        Ok(Self {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, c: &FieldElement, other: &Self) -> Result<()> {
        self.check_nvars(other)?;
        if c.is_zero() {
            return Ok(());
        }
        for (e, x) in &other.terms {
            self.add_term(e.clone(), &(c * x));
        }
        Ok(())
    }

    pub fn scalar_mul(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Re-embeds into `nvars` variables, sending variable `i` of `self` to
    /// variable `positions[i]` of the result.
    pub fn embed(&self, nvars: usize, positions: &[usize]) -> Result<Self> {
        if positions.len() != self.nvars || positions.iter().any(|&p| p >= nvars) {
            return Err(Error::invalid(format!(
                "cannot embed {} variables at {positions:?} into {nvars}",
                self.nvars
            )));
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut exp = vec![0; nvars];
                for (i, &p) in positions.iter().enumerate() {
                    exp[p] += e[i];
                }
                (exp, c.clone())
            })
            .collect::<Vec<_>>();
        Self::from_terms(nvars, terms)
    }

    /// Exact evaluation at a point with nonzero coordinates.
    pub fn evaluate(&self, point: &[FieldElement]) -> Result<FieldElement> {
        if point.len() != self.nvars {
            return Err(Error::invalid(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.nvars
            )));
        }
        if point.iter().any(Zero::is_zero) {
            return Err(Error::invalid(
                "Laurent polynomials cannot be evaluated at a zero coordinate",
            ));
        }
        // Cache powers per variable.
        let mut powers: Vec<HashMap<i32, FieldElement>> = vec![HashMap::new(); self.nvars];
        let mut total = FieldElement::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let pw = powers[i]
                    .entry(k)
                    .or_insert_with(|| point[i].pow(k as i64).expect("nonzero coordinate"));
                term = &term * pw;
            }
            total += &term;
        }
        Ok(total)
    }

    /// Invariance under permutations and inversions of the variables.
    ///
    /// Each exponent is mapped to its orbit representative (absolute values
    /// sorted decreasingly). The polynomial is symmetric iff every term
    /// carries the representative's coefficient and every orbit is fully
    /// populated.
    pub fn is_hyperoctahedral_symmetric(&self) -> bool {
        let mut orbit_counts: HashMap<Exponent, usize> = HashMap::new();
        for (e, c) in &self.terms {
            let rep = orbit_representative(e);
            match self.terms.get(&rep) {
                Some(rc) if rc == c => {}
                _ => return false,
            }
            *orbit_counts.entry(rep).or_insert(0) += 1;
        }
        orbit_counts.iter().all(|(rep, &count)| count == orbit_size(rep))
    }

    /// Coefficient of `z^λ`, with `λ` padded to the variable count.
    pub fn leading_coefficient(&self, lambda: &Partition) -> FieldElement {
        let exp: Exponent = (1..=self.nvars).map(|j| lambda.part(j) as i32).collect();
        self.coefficient(&exp)
    }

    /// Every monomial `z^ν` satisfies `ν⁺ ≤ λ` in dominance order, where `ν⁺`
    /// is the decreasingly sorted vector of absolute exponents.
    pub fn is_dominance_triangular(&self, lambda: &Partition) -> bool {
        self.terms.keys().all(|e| {
            let rep = orbit_representative(e);
            let mut lhs = 0i64;
            let mut rhs = 0i64;
            rep.iter().enumerate().all(|(j, &x)| {
                lhs += x as i64;
                rhs += lambda.part(j + 1) as i64;
                lhs <= rhs
            })
        })
    }

    /// Highest exponent of variable `var` (0-based); `None` for zero.
    pub fn degree_in(&self, var: usize) -> Option<i32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// Whether every coefficient lies in ℚ.
    pub fn is_rational(&self) -> bool {
        self.terms.values().all(FieldElement::is_rational)
    }
}

pub fn orbit_representative(e: &[i32]) -> Exponent {
    let mut rep: Exponent = e.iter().map(|x| x.abs()).collect();
    rep.sort_unstable_by(|a, b| b.cmp(a));
    rep
}

/// Size of the hyperoctahedral orbit of a sorted nonnegative exponent:
/// distinct permutations times one sign choice per nonzero entry.
fn orbit_size(rep: &[i32]) -> usize {
    let n = rep.len();
    let mut perms = factorial(n);
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j < n && rep[j] == rep[i] {
            j += 1;
        }
        perms /= factorial(j - i);
        i = j;
    }
    perms << rep.iter().filter(|&&x| x != 0).count()
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// `⟨z_i; x⟩ = z_i + z_i⁻¹ − x − x⁻¹`.
pub fn bracket(nvars: usize, var: usize, x: &FieldElement) -> Result<LaurentPoly> {
    if var >= nvars {
        return Err(Error::invalid(format!(
            "variable index {var} out of range for {nvars} variables"
        )));
    }
    let inv = x.inv().ok_or_else(|| Error::invalid("bracket ⟨z;x⟩ needs x ≠ 0"))?;
    let mut p = LaurentPoly::monomial(nvars, var, 1);
    p.add_term(
        {
            let mut e = vec![0; nvars];
            e[var] = -1;
            e
        },
        &FieldElement::one(),
    );
    p.add_term(vec![0; nvars], &-(x + &inv));
    Ok(p)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    /// Panics on a variable-count mismatch; see [`LaurentPoly::checked_add`].
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("matching variable counts")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("matching variable counts")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("matching variable counts")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (j, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "·z{}", j + 1)?,
                    _ => write!(f, "·z{}^{k}", j + 1)?,
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exp: Exponent,
    coef: FieldElement,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    nvars: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermRepr {
                    exp: e.clone(),
                    coef: c.clone(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(deserializer)?;
        LaurentPoly::from_terms(repr.nvars, repr.terms.into_iter().map(|t| (t.exp, t.coef))).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, rat};
    use proptest::prelude::*;

    fn c(n: i64, d: i64) -> FieldElement {
        FieldElement::rational(rat(n, d))
    }

    #[test]
    fn ring_examples() {
        let f = &bracket(2, 0, &c(1, 3)).unwrap() * &LaurentPoly::monomial(2, 1, 2);
        assert!((&f + &(-&f)).is_zero());
        assert_eq!(&f * &LaurentPoly::one(2), f);
        let z = LaurentPoly::monomial(1, 0, 1);
        let zi = LaurentPoly::monomial(1, 0, -1);
        assert_eq!(&z * &zi, LaurentPoly::one(1));
        assert!(LaurentPoly::one(1).checked_add(&LaurentPoly::one(2)).is_err());
    }

    #[test]
    fn bracket_examples() {
        let b = bracket(1, 0, &FieldElement::one()).unwrap();
        assert_eq!(b.coefficient(&[0]), FieldElement::from_int(-2));
        assert_eq!(b.coefficient(&[1]), FieldElement::one());
        assert_eq!(b.coefficient(&[-1]), FieldElement::one());
        let x = c(2, 7);
        let bx = bracket(1, 0, &x).unwrap();
        assert!(bx.evaluate(std::slice::from_ref(&x)).unwrap().is_zero());
        assert_eq!(bx, bracket(1, 0, &x.inv().unwrap()).unwrap());
        assert!(bracket(1, 0, &FieldElement::zero()).is_err());
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(
            LaurentPoly::one(2).evaluate(&[c(1, 2), c(3, 1)]).unwrap(),
            FieldElement::one()
        );
        let p = &LaurentPoly::monomial(1, 0, 1) + &LaurentPoly::monomial(1, 0, -1);
        assert_eq!(p.evaluate(&[FieldElement::from_int(2)]).unwrap(), c(5, 2));
        assert!(p.evaluate(&[FieldElement::zero()]).is_err());
    }

    #[test]
    fn symmetry_examples() {
        assert!(LaurentPoly::constant(3, c(2, 5)).is_hyperoctahedral_symmetric());
        let p = &LaurentPoly::monomial(1, 0, 1) + &LaurentPoly::monomial(1, 0, -1);
        assert!(p.is_hyperoctahedral_symmetric());
        let zz = &LaurentPoly::monomial(2, 0, 1) * &LaurentPoly::monomial(2, 1, 1);
        assert!(!zz.is_hyperoctahedral_symmetric());
        // full orbit of z₁z₂ is symmetric
        let mut orbit = LaurentPoly::zero(2);
        for a in [-1, 1] {
            for b in [-1, 1] {
                orbit = &orbit + &LaurentPoly::from_terms(2, [(vec![a, b], FieldElement::one())]).unwrap();
            }
        }
        assert!(orbit.is_hyperoctahedral_symmetric());
        // orbit with unequal coefficients is not
        let skew = &orbit + &LaurentPoly::from_terms(2, [(vec![1, -1], FieldElement::one())]).unwrap();
        assert!(!skew.is_hyperoctahedral_symmetric());
    }

    #[test]
    fn leading_coefficient_examples() {
        assert_eq!(
            LaurentPoly::one(0).leading_coefficient(&Partition::default()),
            FieldElement::one()
        );
        let b = bracket(1, 0, &c(1, 5)).unwrap();
        let lam = Partition::new(vec![1]).unwrap();
        assert_eq!(b.leading_coefficient(&lam), FieldElement::one());
        assert!(b.is_dominance_triangular(&lam));
        assert!(!b.is_dominance_triangular(&Partition::new(vec![0]).unwrap()));
    }

    #[test]
    fn embedding() {
        let b = bracket(1, 0, &c(1, 5)).unwrap();
        let e = b.embed(3, &[2]).unwrap();
        assert_eq!(e.coefficient(&[0, 0, 1]), FieldElement::one());
        assert_eq!(e.degree_in(2), Some(1));
        assert_eq!(e.degree_in(0), Some(0));
        assert!(b.embed(3, &[3]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = &bracket(2, 0, &c(1, 5)).unwrap() * &bracket(2, 1, &c(-3, 4)).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.starts_with(r#"{"nvars":2,"terms":[{"exp":[-1,-1],"coef":{"a":"1","b":"0"}}"#));
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    fn poly(nvars: usize) -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((prop::collection::vec(-2i32..=2, nvars), -5i64..=5, 1i64..=4), 0..6).prop_map(
            move |ts| {
                LaurentPoly::from_terms(
                    nvars,
                    ts.into_iter().map(|(e, n, d)| (e, FieldElement::rational(rat(n, d)))),
                )
                .unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn ring_laws(f in poly(2), g in poly(2), h in poly(2)) {
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            prop_assert_eq!(&f * &g, &g * &f);
            prop_assert_eq!(&(&f - &g) + &g, f.clone());
            prop_assert!(f.terms().values().all(|c| !c.is_zero()));
        }

        #[test]
        fn evaluation_is_a_ring_homomorphism(f in poly(2), g in poly(2), x in 1i64..7, y in 1i64..7) {
            let pt = [FieldElement::rational(rat(x, 3)), FieldElement::rational(int(-y))];
            let lhs = (&f * &g).evaluate(&pt).unwrap();
            let rhs = f.evaluate(&pt).unwrap() * g.evaluate(&pt).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn json_round_trips(f in poly(3)) {
            let back: LaurentPoly = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
            prop_assert_eq!(back, f);
        }
    }
}
