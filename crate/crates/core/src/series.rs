//! Hilbert series of local cohomology modules.
//!
//! These modules live in nonpositive degrees, so everything is written in
//! `u = t⁻¹`. A `ℤ`-graded series is a rational function `N(u) / (1 − u)^D`
//! with integer numerator; a `ℤⁿ`-graded series is kept as a closed-form
//! sum of products of per-clique factors and expanded on demand.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::SeriesError;
use crate::graph::VertexSet;

/// `N(u) / (1 − u)^D` in canonical form: the numerator has no trailing zero
/// coefficients and is not divisible by `1 − u` unless `D = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalSeries {
    num: Vec<BigInt>,
    denom_power: u32,
}

impl RationalSeries {
    pub fn new<T: Into<BigInt>>(num: impl IntoIterator<Item = T>, denom_power: u32) -> Self {
        let mut s = RationalSeries { num: num.into_iter().map(Into::into).collect(), denom_power };
        s.canonicalize();
        s
    }

    pub fn zero() -> Self {
        RationalSeries { num: Vec::new(), denom_power: 0 }
    }

    pub fn one() -> Self {
        RationalSeries::new([1], 0)
    }

    /// `u^k / (1 − u)^d`.
    pub fn monomial(k: usize, d: u32) -> Self {
        let mut num = vec![BigInt::zero(); k + 1];
        num[k] = BigInt::one();
        RationalSeries::new(num, d)
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denom_power(&self) -> u32 {
        self.denom_power
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    fn canonicalize(&mut self) {
        while self.num.last().is_some_and(Zero::is_zero) {
            self.num.pop();
        }
        if self.num.is_empty() {
            self.denom_power = 0;
            return;
        }
        while self.denom_power > 0 && self.num.iter().sum::<BigInt>().is_zero() {
            // N = (1 − u)·Q  ⇒  q_k = a_k + q_{k−1}
            let mut q = Vec::with_capacity(self.num.len() - 1);
            let mut acc = BigInt::zero();
            for a in &self.num[..self.num.len() - 1] {
                acc += a;
                q.push(acc.clone());
            }
            self.num = q;
            self.denom_power -= 1;
            while self.num.last().is_some_and(Zero::is_zero) {
                self.num.pop();
            }
        }
    }

    /// Numerator rewritten over `(1 − u)^d` for `d ≥ denom_power`.
    fn numerator_over(&self, d: u32) -> Vec<BigInt> {
        let mut num = self.num.clone();
        for _ in self.denom_power..d {
            let mut next = vec![BigInt::zero(); num.len() + 1];
            for (k, a) in num.iter().enumerate() {
                next[k] += a;
                next[k + 1] -= a;
            }
            num = next;
        }
        num
    }

    pub fn scale(&self, k: &BigInt) -> RationalSeries {
        RationalSeries::new(self.num.iter().map(|a| a * k), self.denom_power)
    }

    /// Taylor coefficients of `u^0..=u^max_degree` at `u = 0`.
    pub fn expand(&self, max_degree: usize) -> Vec<BigInt> {
        let d = self.denom_power as usize;
        (0..=max_degree)
            .map(|k| {
                self.num
                    .iter()
                    .enumerate()
                    .take(k + 1)
                    .map(|(j, a)| {
                        if d == 0 {
                            if j == k {
                                a.clone()
                            } else {
                                BigInt::zero()
                            }
                        } else {
                            a * binomial(k - j + d - 1, d - 1)
                        }
                    })
                    .sum()
            })
            .collect()
    }

    /// Lowest power of `u` with a nonzero coefficient; for a module this is
    /// minus its top nonvanishing degree.
    pub fn valuation(&self) -> Option<usize> {
        self.num.iter().position(|a| !a.is_zero())
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl Add for &RationalSeries {
    type Output = RationalSeries;

    fn add(self, rhs: &RationalSeries) -> RationalSeries {
        let d = self.denom_power.max(rhs.denom_power);
        let a = self.numerator_over(d);
        let b = rhs.numerator_over(d);
        let len = a.len().max(b.len());
        let num = (0..len).map(|k| a.get(k).cloned().unwrap_or_default() + b.get(k).cloned().unwrap_or_default());
        RationalSeries::new(num.collect::<Vec<_>>(), d)
    }
}

impl Neg for &RationalSeries {
    type Output = RationalSeries;

    fn neg(self) -> RationalSeries {
        RationalSeries { num: self.num.iter().map(|a| -a).collect(), denom_power: self.denom_power }
    }
}

impl Sub for &RationalSeries {
    type Output = RationalSeries;

    fn sub(self, rhs: &RationalSeries) -> RationalSeries {
        self + &(-rhs)
    }
}

impl Mul for &RationalSeries {
    type Output = RationalSeries;

    fn mul(self, rhs: &RationalSeries) -> RationalSeries {
        if self.is_zero() || rhs.is_zero() {
            return RationalSeries::zero();
        }
        let mut num = vec![BigInt::zero(); self.num.len() + rhs.num.len() - 1];
        for (i, a) in self.num.iter().enumerate() {
            for (j, b) in rhs.num.iter().enumerate() {
                num[i + j] += a * b;
            }
        }
        RationalSeries::new(num, self.denom_power + rhs.denom_power)
    }
}

impl std::iter::Sum for RationalSeries {
    fn sum<I: Iterator<Item = RationalSeries>>(iter: I) -> Self {
        iter.fold(RationalSeries::zero(), |acc, x| &acc + &x)
    }
}

/// Renders in `t`, e.g. `(2t^-3 + t^-4)/(1-t^-1)^4`.
impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut num = String::new();
        let mut terms = 0;
        for (k, a) in self.num.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            let sign = if a.is_negative() { "-" } else { "+" };
            if terms == 0 {
                if a.is_negative() {
                    num.push('-');
                }
            } else {
                num.push_str(&format!(" {sign} "));
            }
            let mag = a.abs();
            match (k, mag.is_one()) {
                (0, _) => num.push_str(&mag.to_string()),
                (_, true) => num.push_str(&format!("t^-{k}")),
                (_, false) => num.push_str(&format!("{mag}t^-{k}")),
            }
            terms += 1;
        }
        let num = if terms > 1 { format!("({num})") } else { num };
        match self.denom_power {
            0 => f.write_str(&num),
            1 => write!(f, "{num}/(1-t^-1)"),
            d => write!(f, "{num}/(1-t^-1)^{d}"),
        }
    }
}

impl fmt::Debug for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalSeries({self})")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffJson {
    Small(i64),
    Big(String),
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    num_coeffs: Vec<CoeffJson>,
    denom_power: u32,
}

impl Serialize for RationalSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let num_coeffs = self
            .num
            .iter()
            .map(|a| a.to_i64().map_or_else(|| CoeffJson::Big(a.to_string()), CoeffJson::Small))
            .collect();
        SeriesJson { num_coeffs, denom_power: self.denom_power }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let j = SeriesJson::deserialize(deserializer)?;
        let num = j
            .num_coeffs
            .into_iter()
            .map(|c| match c {
                CoeffJson::Small(v) => Ok(BigInt::from(v)),
                CoeffJson::Big(s) => s.parse::<BigInt>().map_err(serde::de::Error::custom),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RationalSeries::new(num, j.denom_power))
    }
}

/// Hilbert series of the top local cohomology of `K[x_C, y_C]/J(K_m)` for a
/// clique of size `m`: `((m − 1)u^m + u^{m+1}) / (1 − u)^{m+1}`.
pub fn factor_series(m: usize) -> Result<RationalSeries, SeriesError> {
    if m == 0 {
        return Err(SeriesError::EmptyClique);
    }
    let mut num = vec![BigInt::zero(); m + 2];
    num[m] = BigInt::from(m - 1);
    num[m + 1] = BigInt::one();
    Ok(RationalSeries::new(num, m as u32 + 1))
}

/// The `ℤⁿ`-graded factor of one clique `C`:
/// `Π_{j∈C} u_j/(1−u_j) · ((|C| − 1) + Σ_{j∈C} u_j/(1−u_j))`.
///
/// Its coefficient at `Π u_j^{k_j}` is `Σ_j k_j − 1` when every `k_j ≥ 1`
/// and zero otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CliqueFactor {
    clique: VertexSet,
}

impl CliqueFactor {
    pub fn new(clique: VertexSet) -> Result<Self, SeriesError> {
        if clique.is_empty() {
            return Err(SeriesError::EmptyClique);
        }
        Ok(CliqueFactor { clique })
    }

    pub fn clique(&self) -> VertexSet {
        self.clique
    }

    /// Coefficient at the degree with `u`-exponents `depth[v - 1]` (i.e. `a_v = −depth[v − 1]`).
    pub fn coefficient(&self, depth: &[u64]) -> u64 {
        let mut total = 0u64;
        for v in self.clique {
            match depth[v - 1] {
                0 => return 0,
                k => total += k,
            }
        }
        total - 1
    }

    /// Nonzero coefficients over `ℤⁿ` with every exponent in `[−truncation, 0]`.
    pub fn expand(&self, n: usize, truncation: usize) -> MultiSeries {
        let form = MultigradedSeries {
            n,
            terms: vec![MultiTerm {
                multiplicity: 1,
                zero_block: VertexSet::full(n).difference(self.clique),
                cliques: vec![self.clique],
            }],
        };
        // the other coordinates are free in a single factor, but as a
        // standalone factor they carry degree zero
        form.expand(truncation)
    }
}

/// `multiplicity · Π_C CliqueFactor(C)`, vanishing unless the variables in
/// `zero_block` have degree zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiTerm {
    pub multiplicity: u64,
    pub zero_block: VertexSet,
    pub cliques: Vec<VertexSet>,
}

impl MultiTerm {
    /// Coefficient at `u`-exponents `depth`; `None` on `u128` overflow.
    pub fn coefficient(&self, depth: &[u64]) -> Option<u128> {
        if self.zero_block.iter().any(|v| depth[v - 1] != 0) {
            return Some(0);
        }
        let mut acc = self.multiplicity as u128;
        for &c in &self.cliques {
            let f = CliqueFactor { clique: c }.coefficient(depth);
            if f == 0 {
                return Some(0);
            }
            acc = acc.checked_mul(f as u128)?;
        }
        Some(acc)
    }

    /// Vertices whose degree must be strictly negative for the term to be nonzero.
    pub fn support(&self) -> VertexSet {
        self.cliques.iter().fold(VertexSet::empty(), |acc, &c| acc.union(c))
    }
}

/// A closed-form `ℤⁿ`-graded Hilbert series: a sum of [`MultiTerm`]s.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultigradedSeries {
    pub n: usize,
    pub terms: Vec<MultiTerm>,
}

impl MultigradedSeries {
    /// `dim M_a` for `a ∈ ℤⁿ`.
    pub fn coefficient(&self, degree: &[i64]) -> u128 {
        assert_eq!(degree.len(), self.n);
        if degree.iter().any(|&a| a > 0) {
            return 0;
        }
        let depth: Vec<u64> = degree.iter().map(|&a| a.unsigned_abs()).collect();
        self.coefficient_at_depth(&depth)
    }

    pub fn coefficient_at_depth(&self, depth: &[u64]) -> u128 {
        self.terms.iter().map(|t| t.coefficient(depth).expect("multigraded coefficient overflows u128")).sum()
    }

    /// Every nonzero coefficient with all exponents in `[−truncation, 0]`.
    pub fn expand(&self, truncation: usize) -> MultiSeries {
        let mut coeffs = BTreeMap::new();
        let supports: Vec<VertexSet> = {
            let mut s: Vec<VertexSet> = self.terms.iter().map(MultiTerm::support).collect();
            s.sort();
            s.dedup();
            s
        };
        for support in supports {
            let verts = support.to_vec();
            let mut depth = vec![0u64; self.n];
            for_each_point(&verts, truncation as u64, &mut depth, &mut |depth| {
                let c = self.coefficient_at_depth(depth);
                if c != 0 {
                    coeffs.insert(depth.iter().map(|&k| -(k as i64)).collect(), c);
                }
            });
        }
        MultiSeries { n: self.n, truncation, coeffs }
    }

    /// Substitutes `t_i = t` for every `i`, giving the `ℤ`-graded series.
    pub fn specialize(&self) -> RationalSeries {
        self.terms
            .iter()
            .map(|t| {
                let prod = t
                    .cliques
                    .iter()
                    .map(|c| factor_series(c.len()).expect("cliques are nonempty"))
                    .fold(RationalSeries::one(), |acc, f| &acc * &f);
                prod.scale(&BigInt::from(t.multiplicity))
            })
            .sum()
    }
}

/// Calls `f` on every point of `[1, bound]^verts` (other coordinates untouched).
pub(crate) fn for_each_point(verts: &[usize], bound: u64, depth: &mut [u64], f: &mut impl FnMut(&[u64])) {
    match verts.split_first() {
        None => f(depth),
        Some((&v, rest)) => {
            for k in 1..=bound {
                depth[v - 1] = k;
                for_each_point(rest, bound, depth, f);
            }
            depth[v - 1] = 0;
        }
    }
}

/// A truncated `ℤⁿ`-graded Hilbert series: nonzero coefficients at degrees
/// `a` with `−truncation ≤ a_i ≤ 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiSeries {
    pub n: usize,
    pub truncation: usize,
    pub coeffs: BTreeMap<Vec<i64>, u128>,
}

impl MultiSeries {
    pub fn get(&self, degree: &[i64]) -> u128 {
        self.coeffs.get(degree).copied().unwrap_or(0)
    }

    /// Coefficients aggregated by total degree `0, −1, ..., −truncation`
    /// (entry `k` is total degree `−k`); complete because every coordinate
    /// of a degree with total `−k ≥ −truncation` is itself in range.
    pub fn total_degree_profile(&self) -> Vec<u128> {
        let mut out = vec![0u128; self.truncation + 1];
        for (deg, &c) in &self.coeffs {
            let k = deg.iter().map(|a| a.unsigned_abs() as usize).sum::<usize>();
            if k <= self.truncation {
                out[k] += c;
            }
        }
        out
    }
}
