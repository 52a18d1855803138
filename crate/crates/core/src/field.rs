//! Exact coefficient arithmetic.
//!
//! Parameter values are arbitrary-precision rationals. The hatted parameters
//! involve `t̂₀ = √s` with `s = q⁻¹t₀t₁t₂t₃`, so every coefficient is computed
//! in the quadratic extension `ℚ(√s)`. [`FieldElement`] stores `a + b·√s`;
//! purely rational elements (`b = 0`) carry no reference to `s`, which lets
//! values coming from different parameter points mix as long as at most one
//! irrational extension is involved in any single operation.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Canonical string form: `"p/q"` in lowest terms, `"p"` for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Parses `"p/q"` or `"p"`. Floating-point notation is rejected so that every
/// run stays exact.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int =
        |x: &str| BigInt::from_str(x.trim()).map_err(|_| Error::Parse(format!("`{s}` is not a rational p/q")));
    match s.split_once('/') {
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("`{s}` has zero denominator")));
            }
            Ok(Rational::new(parse_int(p)?, den))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// An element `a + b·√s` of `ℚ(√s)`.
#[derive(Clone, Debug)]
pub struct FieldElement {
    a: Rational,
    b: Rational,
    s: Option<Arc<Rational>>,
}

impl FieldElement {
    pub fn rational(a: Rational) -> Self {
        Self {
            a,
            b: Rational::zero(),
            s: None,
        }
    }

    /// `a + b·√s`. The extension is dropped when `b = 0`.
    pub fn new(a: Rational, b: Rational, s: Arc<Rational>) -> Self {
        let s = if b.is_zero() { None } else { Some(s) };
        Self { a, b, s }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(int(n))
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> Option<&Rational> {
        self.s.as_deref()
    }

    /// True when the `√s` component is exactly zero.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    /// `a² − b²s`; zero exactly when the element is not invertible.
    pub fn norm(&self) -> Rational {
        match &self.s {
            None => &self.a * &self.a,
            Some(s) => &self.a * &self.a - &self.b * &self.b * s.as_ref(),
        }
    }

    pub fn conjugate(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: -&self.b,
            s: self.s.clone(),
        }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_rational() {
            if self.a.is_zero() {
                return None;
            }
            return Some(Self::rational(self.a.recip()));
        }
        let norm = self.norm();
        if norm.is_zero() {
            return None;
        }
        Some(Self {
            a: &self.a / &norm,
            b: -&self.b / &norm,
            s: self.s.clone(),
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self * &r)
    }

    pub fn pow(&self, exp: i64) -> Option<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Some(acc)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let b = &self.b * r;
        let s = if b.is_zero() { None } else { self.s.clone() };
        Self { a: &self.a * r, b, s }
    }

    /// Approximate value; `None` if `s < 0` with a nonzero extension part.
    pub fn to_f64(&self) -> Option<f64> {
        let a = self.a.to_f64()?;
        if self.is_rational() {
            return Some(a);
        }
        let s = self.s.as_deref()?.to_f64()?;
        if s < 0.0 {
            return None;
        }
        Some(a + self.b.to_f64()? * s.sqrt())
    }

    fn join(x: &Self, y: &Self) -> Option<Arc<Rational>> {
        match (&x.s, &y.s) {
            (None, s) | (s, None) => s.clone(),
            (Some(s1), Some(s2)) => {
                assert!(
                    Arc::ptr_eq(s1, s2) || s1 == s2,
                    "mixing elements of different quadratic extensions ({s1} vs {s2})"
                );
                Some(s1.clone())
            }
        }
    }

    fn normalized(mut self) -> Self {
        if self.b.is_zero() {
            self.s = None;
        }
        self
    }
}

impl Zero for FieldElement {
    fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for FieldElement {
    fn one() -> Self {
        Self::rational(Rational::one())
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || Self::join(self, other).is_some())
    }
}

impl Eq for FieldElement {}

impl From<Rational> for FieldElement {
    fn from(r: Rational) -> Self {
        Self::rational(r)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.a)
        } else {
            let s = self.s.as_deref().map(|s| s.to_string()).unwrap_or_default();
            write!(f, "{} + ({})·√({})", self.a, self.b, s)
        }
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: &'a FieldElement) -> FieldElement {
        FieldElement {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            s: FieldElement::join(self, rhs),
        }
        .normalized()
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    fn sub(self, rhs: &'a FieldElement) -> FieldElement {
        FieldElement {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            s: FieldElement::join(self, rhs),
        }
        .normalized()
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: &'a FieldElement) -> FieldElement {
        if rhs.is_rational() {
            return self.scale(&rhs.a);
        }
        if self.is_rational() {
            return rhs.scale(&self.a);
        }
        let s = FieldElement::join(self, rhs);
        let radicand = s.as_deref().expect("irrational operands carry s");
        FieldElement {
            a: &self.a * &rhs.a + &self.b * &rhs.b * radicand,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            s,
        }
        .normalized()
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        FieldElement {
            a: -&self.a,
            b: -&self.b,
            s: self.s.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&FieldElement> for FieldElement {
    fn mul_assign(&mut self, rhs: &FieldElement) {
        *self = &*self * rhs;
    }
}

#[derive(Serialize, Deserialize)]
struct FieldElementRepr {
    a: String,
    b: String,
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        FieldElementRepr {
            a: format_rational(&self.a),
            b: format_rational(&self.b),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FieldElement {
    /// Only rational elements (`b = 0`) can be read back: the radicand is not
    /// part of the wire format.
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = FieldElementRepr::deserialize(deserializer)?;
        let a = parse_rational(&repr.a).map_err(D::Error::custom)?;
        let b = parse_rational(&repr.b).map_err(D::Error::custom)?;
        if !b.is_zero() {
            return Err(D::Error::custom(
                "cannot deserialize an irrational field element without its radicand",
            ));
        }
        Ok(FieldElement::rational(a))
    }
}

/// `(a;q)_k = (1−a)(1−aq)⋯(1−aq^{k−1})`, with `(a;q)_0 = 1`.
pub fn qpochhammer(a: &FieldElement, q: &Rational, k: i64) -> Result<FieldElement> {
    if k < 0 {
        return Err(Error::invalid(format!(
            "q-Pochhammer length must be nonnegative, got {k}"
        )));
    }
    let one = FieldElement::one();
    let mut acc = FieldElement::one();
    let mut x = a.clone();
    for _ in 0..k {
        acc = acc * (&one - &x);
        x = x.scale(q);
    }
    Ok(acc)
}

/// A point `(q, t, t₀, t₁, t₂, t₃)` of exact nonzero rationals together with
/// the radicand `s = q⁻¹t₀t₁t₂t₃` of the hatted parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParameterPoint {
    q: Rational,
    t: Rational,
    tl: [Rational; 4],
    s: Arc<Rational>,
}

impl ParameterPoint {
    pub fn new(q: Rational, t: Rational, tl: [Rational; 4]) -> Result<Self> {
        if q.is_zero() || t.is_zero() || tl.iter().any(Zero::is_zero) {
            return Err(Error::invalid("all parameters q, t, t0..t3 must be nonzero"));
        }
        let s = tl.iter().fold(q.recip(), |acc, x| acc * x);
        Ok(Self {
            q,
            t,
            tl,
            s: Arc::new(s),
        })
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn t(&self) -> &Rational {
        &self.t
    }

    pub fn t0(&self) -> &Rational {
        &self.tl[0]
    }

    /// `t_l` for `l = 0..=3`.
    pub fn tl(&self, l: usize) -> &Rational {
        &self.tl[l]
    }

    pub fn s(&self) -> &Rational {
        &self.s
    }

    pub fn s_arc(&self) -> Arc<Rational> {
        self.s.clone()
    }

    /// `t̂₀ = √s`.
    pub fn t0_hat(&self) -> FieldElement {
        FieldElement::new(Rational::zero(), Rational::one(), self.s.clone())
    }

    /// `t̂_l`, determined by `t̂₀t̂_l = t₀t_l` for `l = 1, 2, 3`.
    pub fn t_hat(&self, l: usize) -> FieldElement {
        if l == 0 {
            return self.t0_hat();
        }
        // t₀t_l/√s = (t₀t_l/s)·√s
        let b = &self.tl[0] * &self.tl[l] / self.s.as_ref();
        FieldElement::new(Rational::zero(), b, self.s.clone())
    }

    /// `τ_j = t^{n−j}t₀`.
    pub fn tau(&self, n: usize, j: usize) -> Rational {
        debug_assert!(1 <= j && j <= n);
        pow_rat(&self.t, (n - j) as i64) * &self.tl[0]
    }

    /// `τ̂_j = t^{n−j}t̂₀`.
    pub fn tau_hat(&self, n: usize, j: usize) -> FieldElement {
        debug_assert!(1 <= j && j <= n);
        FieldElement::new(Rational::zero(), pow_rat(&self.t, (n - j) as i64), self.s.clone())
    }

    /// The point with `q` and `t` exchanged.
    pub fn swapped(&self) -> Self {
        Self::new(self.t.clone(), self.q.clone(), self.tl.clone()).expect("nonzero parameters")
    }

    pub fn with_t(&self, t: Rational) -> Result<Self> {
        Self::new(self.q.clone(), t, self.tl.clone())
    }

    /// `0 < q < 1`, `0 < |t| < 1` and `0 < |t_l| < 1`: where the torus
    /// density defines a positive measure.
    pub fn in_orthogonality_domain(&self) -> bool {
        let one = Rational::one();
        self.q.is_positive() && self.q < one && self.t.abs() < one && self.tl.iter().all(|x| x.abs() < one)
    }

    pub fn to_f64(&self) -> (f64, f64, [f64; 4]) {
        let f = |x: &Rational| x.to_f64().unwrap_or(f64::NAN);
        (
            f(&self.q),
            f(&self.t),
            [f(&self.tl[0]), f(&self.tl[1]), f(&self.tl[2]), f(&self.tl[3])],
        )
    }
}

impl fmt::Display for ParameterPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "q={},t={},t0={},t1={},t2={},t3={}",
            self.q, self.t, self.tl[0], self.tl[1], self.tl[2], self.tl[3]
        )
    }
}

impl FromStr for ParameterPoint {
    type Err = Error;

    /// Parses `q=1/3,t=1/2,t0=1/5,t1=2/7,t2=1/4,t3=3/8` (any order, all six keys).
    fn from_str(s: &str) -> Result<Self> {
        let mut vals: [Option<Rational>; 6] = Default::default();
        for item in s.split(',').filter(|x| !x.trim().is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got `{item}`")))?;
            let slot = match key.trim() {
                "q" => 0,
                "t" => 1,
                "t0" => 2,
                "t1" => 3,
                "t2" => 4,
                "t3" => 5,
                other => return Err(Error::Parse(format!("unknown parameter `{other}`"))),
            };
            vals[slot] = Some(parse_rational(value)?);
        }
        let names = ["q", "t", "t0", "t1", "t2", "t3"];
        let mut it = vals
            .into_iter()
            .zip(names)
            .map(|(v, name)| v.ok_or_else(|| Error::Parse(format!("missing parameter `{name}`"))));
        let mut next = || it.next().expect("six slots");
        let q = next()?;
        let t = next()?;
        let tl = [next()?, next()?, next()?, next()?];
        Self::new(q, t, tl)
    }
}

impl Serialize for ParameterPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("ParameterPoint", 6)?;
        st.serialize_field("q", &format_rational(&self.q))?;
        st.serialize_field("t", &format_rational(&self.t))?;
        st.serialize_field("t0", &format_rational(&self.tl[0]))?;
        st.serialize_field("t1", &format_rational(&self.tl[1]))?;
        st.serialize_field("t2", &format_rational(&self.tl[2]))?;
        st.serialize_field("t3", &format_rational(&self.tl[3]))?;
        st.end()
    }
}

/// `(τ_j, τ̂_j)` for the given number of variables.
pub fn hatted(params: &ParameterPoint, n: usize, j: usize) -> Result<(Rational, FieldElement)> {
    if j == 0 || j > n {
        return Err(Error::invalid(format!("index j={j} outside 1..={n}")));
    }
    Ok((params.tau(n, j), params.tau_hat(n, j)))
}

pub(crate) fn pow_rat(x: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), e.unsigned_abs() as usize)
    }
}
