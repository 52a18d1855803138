//! Partition and Young-diagram combinatorics.
//!
//! A [`Partition`] carries its declared length: `(1,0)` and `(1)` are
//! different elements (of `Λ₂` and `Λ₁`). The strip predicates and the two
//! relations `∼_r` and `⪯` compare after padding with zero parts, which is
//! the natural embedding `Λ_n ⊂ Λ_{n+1}`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Self { parts })
    }

    /// The zero partition in `Λ_n`.
    pub fn zero(n: usize) -> Self {
        Self { parts: vec![0; n] }
    }

    /// The rectangle `m^n`.
    pub fn rectangle(m: usize, n: usize) -> Self {
        Self { parts: vec![m; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Declared length `n` (the `Λ_n` this partition lives in).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `λ_j` with 1-based `j`; zero beyond the declared length.
    pub fn part(&self, j: usize) -> usize {
        self.parts.get(j.wrapping_sub(1)).copied().unwrap_or(0)
    }

    pub fn first(&self) -> usize {
        self.part(1)
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.parts.iter().take_while(|&&p| p > 0).count()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|&p| p == 0)
    }

    /// Re-declare the length; fails if nonzero parts would be dropped.
    pub fn padded(&self, n: usize) -> Result<Self> {
        if self.length() > n {
            return Err(Error::invalid(format!("{self} has more than {n} nonzero parts")));
        }
        let mut parts = self.parts.clone();
        parts.resize(n, 0);
        Ok(Self { parts })
    }

    /// `self ⊂ other`, comparing after zero padding.
    pub fn is_contained_in(&self, other: &Partition) -> bool {
        let n = self.len().max(other.len());
        (1..=n).all(|j| self.part(j) <= other.part(j))
    }

    /// Conjugate partition in `Λ_m`: `λ′_i = |{j : λ_j ≥ i}|`.
    pub fn conjugate(&self, m: usize) -> Result<Self> {
        if self.first() > m {
            return Err(Error::invalid(format!(
                "conjugate of {self} needs m ≥ {}, got {m}",
                self.first()
            )));
        }
        let parts = (1..=m)
            .map(|i| self.parts.iter().filter(|&&p| p >= i).count())
            .collect();
        Ok(Self { parts })
    }

    /// `m^n − μ` with `(m^n − μ)_j = m − μ_{n+1−j}`, `n` the declared length.
    pub fn complement(&self, m: usize) -> Result<Self> {
        if self.first() > m {
            return Err(Error::invalid(format!(
                "{self} is not contained in the rectangle {m}^{}",
                self.len()
            )));
        }
        Ok(Self {
            parts: self.parts.iter().rev().map(|&p| m - p).collect(),
        })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Comma-separated parts, e.g. `2,1,0`; the empty string is `Λ₀`'s zero.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.trim().is_empty() {
            return Ok(Self::default());
        }
        let parts = s
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("`{x}` is not a nonnegative integer part")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

fn common_len(a: &Partition, b: &Partition) -> usize {
    a.len().max(b.len())
}

/// `λ/μ` is a horizontal strip: `λ₁ ≥ μ₁ ≥ λ₂ ≥ μ₂ ≥ ⋯ ≥ λ_n ≥ μ_n`.
pub fn is_horizontal_strip(lambda: &Partition, mu: &Partition) -> bool {
    let n = common_len(lambda, mu);
    (1..=n).all(|j| lambda.part(j) >= mu.part(j) && mu.part(j) >= lambda.part(j + 1))
}

/// `λ/ν` is a vertical strip: `ν_j ≤ λ_j ≤ ν_j + 1`.
pub fn is_vertical_strip(lambda: &Partition, nu: &Partition) -> bool {
    let n = common_len(lambda, nu);
    (1..=n).all(|j| nu.part(j) <= lambda.part(j) && lambda.part(j) <= nu.part(j) + 1)
}

/// `μ ∼_r λ`: some `ν ⊂ λ, μ` makes `λ/ν` and `μ/ν` vertical strips with
/// `|λ/ν| + |μ/ν| ≤ r`.
///
/// The optimal witness is `ν = min(λ, μ)` componentwise, so the relation
/// holds iff every part differs by at most one and the total difference is
/// at most `r`.
pub fn proximity(mu: &Partition, lambda: &Partition, r: usize) -> bool {
    let n = common_len(lambda, mu);
    let mut total = 0;
    for j in 1..=n {
        let d = lambda.part(j).abs_diff(mu.part(j));
        if d > 1 {
            return false;
        }
        total += d;
    }
    total <= r
}

/// `μ ⪯ λ`: `λ` arises from `μ` by adding two successive horizontal strips.
///
/// The intermediate `ν` must satisfy `max(λ_{j+1}, μ_j) ≤ ν_j ≤ min(λ_j, μ_{j−1})`
/// for every row independently, so existence reduces to these bounds.
pub fn double_strip_leq(mu: &Partition, lambda: &Partition) -> bool {
    double_strip_witness(mu, lambda).is_some()
}

/// The smallest `ν` with `μ ⊂ ν ⊂ λ` and both skew diagrams horizontal
/// strips, if one exists. Length is `max(len λ, len μ)`.
pub fn double_strip_witness(mu: &Partition, lambda: &Partition) -> Option<Partition> {
    let n = common_len(lambda, mu);
    let mut nu = Vec::with_capacity(n);
    for j in 1..=n {
        let lo = lambda.part(j + 1).max(mu.part(j));
        let hi = if j == 1 {
            lambda.part(1)
        } else {
            lambda.part(j).min(mu.part(j - 1))
        };
        if lo > hi {
            return None;
        }
        nu.push(lo);
    }
    Some(Partition { parts: nu })
}

/// `d = |{1 ≤ j ≤ m : λ′_j = μ′_j + 1}|`, the degree of the branching
/// polynomial `P_{λ/μ}`.
pub fn strip_degree(lambda: &Partition, mu: &Partition, m: usize) -> Result<usize> {
    let lc = lambda.conjugate(m)?;
    let mc = mu.conjugate(m)?;
    Ok((1..=m).filter(|&j| lc.part(j) == mc.part(j) + 1).count())
}

fn graded_lex(a: &Partition, b: &Partition) -> std::cmp::Ordering {
    a.weight().cmp(&b.weight()).then_with(|| a.parts.cmp(&b.parts))
}

/// All `μ ∈ Λ_n` with `μ ∼_r λ`, ordered by weight and then
/// lexicographically.
pub fn enumerate_pieri_targets(lambda: &Partition, n: usize, r: usize) -> Result<Vec<Partition>> {
    let lambda = lambda.padded(n)?;
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fn rec(lambda: &Partition, j: usize, budget: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
        let n = lambda.len();
        if j > n {
            out.push(Partition { parts: current.clone() });
            return;
        }
        let lj = lambda.part(j);
        let upper = if j == 1 { usize::MAX } else { current[j - 2] };
        for cand in [lj.wrapping_sub(1), lj, lj + 1] {
            if cand == usize::MAX || cand > upper {
                continue;
            }
            let cost = cand.abs_diff(lj);
            if cost > budget {
                continue;
            }
            current.push(cand);
            rec(lambda, j + 1, budget - cost, current, out);
            current.pop();
        }
    }
    rec(&lambda, 1, r, &mut current, &mut out);
    out.sort_by(graded_lex);
    Ok(out)
}

/// All `μ ∈ Λ_n` with `μ ⪯ λ`, where `λ ∈ Λ_{n+1}`.
pub fn enumerate_branch_sources(lambda: &Partition) -> Result<Vec<Partition>> {
    if lambda.is_empty() {
        return Err(Error::invalid("branching needs λ with at least one part"));
    }
    let n = lambda.len() - 1;
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fn rec(lambda: &Partition, n: usize, j: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if j > n {
            let mu = Partition { parts: current.clone() };
            if double_strip_leq(&mu, lambda) {
                out.push(mu);
            }
            return;
        }
        let hi = if j == 1 {
            lambda.part(1)
        } else {
            lambda.part(j).min(current[j - 2])
        };
        let lo = lambda.part(j + 2);
        for v in lo..=hi {
            current.push(v);
            rec(lambda, n, j + 1, current, out);
            current.pop();
        }
    }
    rec(lambda, n, 1, &mut current, &mut out);
    out.sort_by(graded_lex);
    Ok(out)
}

/// Lazily enumerates the chains `μ⁽¹⁾ ⪯ μ⁽²⁾ ⪯ ⋯ ⪯ μ⁽ⁿ⁾ = λ` with
/// `μ⁽ⁱ⁾ ∈ Λ_i`. Each chain is returned bottom-up and ends with `λ`.
/// For `λ ∈ Λ₀` the single chain is `[λ]`.
pub fn enumerate_chains(lambda: &Partition) -> Box<dyn Iterator<Item = Vec<Partition>>> {
    if lambda.len() <= 1 {
        return Box::new(std::iter::once(vec![lambda.clone()]));
    }
    let top = lambda.clone();
    let sources = enumerate_branch_sources(lambda).expect("nonempty partition");
    Box::new(sources.into_iter().flat_map(move |mu| {
        let top = top.clone();
        enumerate_chains(&mu).map(move |mut chain| {
            chain.push(top.clone());
            chain
        })
    }))
}

/// Every partition in `Λ_n` contained in the rectangle `m^n`, graded-lex
/// ordered.
pub fn partitions_in_box(m: usize, n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fn rec(m: usize, n: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if current.len() == n {
            out.push(Partition { parts: current.clone() });
            return;
        }
        let hi = current.last().copied().unwrap_or(m);
        for v in 0..=hi {
            current.push(v);
            rec(m, n, current, out);
            current.pop();
        }
    }
    rec(m, n, &mut current, &mut out);
    out.sort_by(graded_lex);
    out
}
