//! Truncated Chow ring Z[x_1..x_k]/(x_i^{2^{n_i}}) of a Segre product of
//! projective spaces, and the Nash CI invariants read off from it.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::Partition;
use crate::spohnci::expected_nash_ci_dimension;

/// Integer class with exponents of x_i below 2^{n_i}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowClass {
    sizes: Vec<usize>,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl ChowClass {
    pub fn zero(sizes: &[usize]) -> Self {
        ChowClass { sizes: sizes.to_vec(), terms: BTreeMap::new() }
    }

    pub fn one(sizes: &[usize]) -> Self {
        Self::from_terms(sizes, [(vec![0; sizes.len()], BigInt::one())])
    }

    /// x_i (0-based).
    pub fn generator(sizes: &[usize], i: usize) -> Self {
        let mut e = vec![0; sizes.len()];
        e[i] = 1;
        Self::from_terms(sizes, [(e, BigInt::one())])
    }

    /// Σ x_i, the hyperplane class of the Segre embedding.
    pub fn hyperplane(sizes: &[usize]) -> Self {
        (0..sizes.len()).fold(Self::zero(sizes), |acc, i| acc.add(&Self::generator(sizes, i)).expect("same sizes"))
    }

    /// Terms outside the truncation are dropped.
    pub fn from_terms(sizes: &[usize], terms: impl IntoIterator<Item = (Vec<u32>, BigInt)>) -> Self {
        let mut out = Self::zero(sizes);
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    fn bound(&self, i: usize) -> u32 {
        1u32 << self.sizes[i]
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() || e.iter().enumerate().any(|(i, &x)| x >= self.bound(i)) {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[u32]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.sizes == other.sizes {
            Ok(())
        } else {
            Err(Error::InvalidPartition(format!("classes over {:?} and {:?}", self.sizes, other.sizes)))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_terms(&self.sizes, self.terms.iter().map(|(e, x)| (e.clone(), x * c)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.sizes);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    /// Binary powering inside the truncated ring.
    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.sizes);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same sizes");
            }
            base = base.mul(&base).expect("same sizes");
            k >>= 1;
        }
        acc
    }

    /// Coefficient of the point class ∏ x_i^{2^{n_i}−1}.
    pub fn top_coefficient(&self) -> BigInt {
        let top: Vec<u32> = (0..self.sizes.len()).map(|i| self.bound(i) - 1).collect();
        self.coefficient(&top)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self.terms.iter().rev().map(|(e, c)| json!({"exponents": e, "coefficient": c.to_string()})).collect();
        json!({"sizes": self.sizes, "terms": terms})
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| if x == 1 { format!("x{}", i + 1) } else { format!("x{}^{x}", i + 1) })
                .collect();
            let a = c.abs();
            match (mono.is_empty(), a.is_one()) {
                (true, _) => write!(f, "{a}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{a}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

/// The class [N]·H^d whose top coefficient is the degree.
pub fn nash_ci_degree_class(part: &Partition) -> Result<ChowClass> {
    let sizes = part.sizes();
    let h = ChowClass::hyperplane(&sizes);
    let d = expected_nash_ci_dimension(part) as u32;
    let mut acc = h.pow(d);
    for (b, &nb) in sizes.iter().enumerate() {
        let sign = if nb == 1 { -BigInt::one() } else { BigInt::one() };
        let divisor = h.add(&ChowClass::generator(&sizes, b).scale(&sign))?;
        acc = acc.mul(&divisor.pow(nb as u32))?;
    }
    Ok(acc)
}

/// Degree of the Nash CI variety of a generic game.
pub fn nash_ci_degree(part: &Partition) -> Result<BigInt> {
    Ok(nash_ci_degree_class(part)?.top_coefficient())
}

/// (n + n_i(1 − 2δ_{1,n_i}) − 2^{n_i})_i.
pub fn canonical_multidegree(part: &Partition) -> Vec<i64> {
    let n = part.players() as i64;
    part.sizes()
        .iter()
        .map(|&s| {
            let s = s as i64;
            let delta = i64::from(s == 1);
            n + s * (1 - 2 * delta) - (1i64 << s)
        })
        .collect()
}

/// Ampleness of the canonical bundle for a Nash CI surface.
pub fn is_general_type_surface(part: &Partition) -> Result<bool> {
    let d = expected_nash_ci_dimension(part);
    if d != 2 {
        return Err(Error::InvalidPartition(format!("expected dimension is {d}, not a surface")));
    }
    Ok(canonical_multidegree(part).iter().all(|&x| x > 0))
}
