//! Exact sparse multivariate polynomials over the rationals.
//!
//! Every polynomial carries a [`VarTable`]; arithmetic between polynomials over
//! different tables is an error. Terms are kept in graded-lex order, largest
//! first when printed.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact text form `n` or `n/d`.
pub fn rational_to_string(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `n`, `n/d` or a finite decimal such as `-1.25` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: `{s}`"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(k) => (&s[..k], s[k + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    if neg {
        num = -num;
    }
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let q = if scale >= 0 {
        BigRational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(q)
}

#[derive(Debug)]
struct VarTableInner {
    names: Vec<String>,
    blocks: Option<Vec<usize>>,
    num_blocks: usize,
    index: HashMap<String, usize>,
}

/// Ordered variable names with an optional block index per variable.
#[derive(Clone, Debug)]
pub struct VarTable {
    inner: Arc<VarTableInner>,
}

impl PartialEq for VarTable {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.names == other.inner.names && self.inner.blocks == other.inner.blocks)
    }
}

impl Eq for VarTable {}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VarTable {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        Self::build(names.into_iter().map(Into::into).collect(), None)
    }

    /// `blocks[v]` is the block of variable `v`; every index in `0..max` must occur.
    pub fn with_blocks<S: Into<String>>(names: impl IntoIterator<Item = S>, blocks: Vec<usize>) -> Result<Self> {
        Self::build(names.into_iter().map(Into::into).collect(), Some(blocks))
    }

    fn build(names: Vec<String>, blocks: Option<Vec<usize>>) -> Result<Self> {
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if !valid_name(n) {
                return Err(Error::InvalidVarTable(format!("bad variable name `{n}`")));
            }
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::InvalidVarTable(format!("duplicate variable `{n}`")));
            }
        }
        let mut num_blocks = 0;
        if let Some(b) = &blocks {
            if b.len() != names.len() {
                return Err(Error::InvalidVarTable("block list length differs from variable count".into()));
            }
            num_blocks = b.iter().max().map_or(0, |m| m + 1);
            let mut seen = vec![false; num_blocks];
            for &k in b {
                seen[k] = true;
            }
            if seen.iter().any(|s| !s) {
                return Err(Error::InvalidVarTable("block indices are not contiguous".into()));
            }
        }
        Ok(VarTable { inner: Arc::new(VarTableInner { names, blocks, num_blocks, index }) })
    }

    pub fn len(&self) -> usize {
        self.inner.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.inner.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.inner.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.inner.index.get(name).copied()
    }

    pub fn has_blocks(&self) -> bool {
        self.inner.blocks.is_some()
    }

    pub fn num_blocks(&self) -> usize {
        self.inner.num_blocks
    }

    pub fn block_of(&self, i: usize) -> Option<usize> {
        self.inner.blocks.as_ref().map(|b| b[i])
    }

    pub fn block_vars(&self, block: usize) -> Vec<usize> {
        match &self.inner.blocks {
            Some(b) => (0..b.len()).filter(|&v| b[v] == block).collect(),
            None => Vec::new(),
        }
    }

    /// Macaulay2-style declaration line.
    pub fn declaration(&self) -> String {
        format!("vars {}", self.inner.names.join(" "))
    }
}

/// Sparse exponent vector: `(variable, exponent)` pairs sorted by variable,
/// exponents strictly positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: usize) -> Self {
        Monomial(vec![(v as u32, 1)])
    }

    /// From a dense exponent vector.
    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(v, &e)| (v as u32, e)).collect())
    }

    pub fn from_pairs(mut pairs: Vec<(usize, u32)>) -> Self {
        pairs.sort_unstable();
        let mut out: Vec<(u32, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.0 == v as u32 => last.1 += e,
                _ => out.push((v as u32, e)),
            }
        }
        Monomial(out)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|&(v, e)| (v as usize, e))
    }

    pub fn exponent(&self, v: usize) -> u32 {
        match self.0.binary_search_by_key(&(v as u32), |p| p.0) {
            Ok(k) => self.0[k].1,
            Err(_) => 0,
        }
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_dense(&self, n: usize) -> Vec<u32> {
        let mut d = vec![0; n];
        for &(v, e) in &self.0 {
            d[v as usize] = e;
        }
        d
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                let f = other.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => continue,
                    Ordering::Greater => out.push((v, e - f)),
                }
            } else {
                out.push((v, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    pub fn pow(&self, k: u32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(v, e)| (v, e * k)).collect())
    }
}

impl Ord for Monomial {
    /// Graded lexicographic, earlier variables heavier.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            if a.0 != b.0 {
                // the one carrying the earlier variable is larger
                return if a.0 < b.0 { Ordering::Greater } else { Ordering::Less };
            }
            if a.1 != b.1 {
                return a.1.cmp(&b.1);
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    vars: VarTable,
    terms: BTreeMap<Monomial, Rational>,
}

fn add_term(terms: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl Polynomial {
    pub fn zero(vars: &VarTable) -> Self {
        Polynomial { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &VarTable, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        add_term(&mut p.terms, Monomial::one(), c);
        p
    }

    pub fn one(vars: &VarTable) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn var(vars: &VarTable, v: usize) -> Self {
        assert!(v < vars.len(), "variable index {v} out of range");
        Self::monomial(vars, Monomial::var(v), Rational::one())
    }

    pub fn var_named(vars: &VarTable, name: &str) -> Result<Self> {
        let v = vars.index_of(name).ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
        Ok(Self::var(vars, v))
    }

    pub fn monomial(vars: &VarTable, m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        add_term(&mut p.terms, m, c);
        p
    }

    pub fn from_terms(vars: &VarTable, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            add_term(&mut p.terms, m, c);
        }
        p
    }

    /// Sum of the given variables, each with coefficient one.
    pub fn sum_of_vars(vars: &VarTable, idx: impl IntoIterator<Item = usize>) -> Self {
        Self::from_terms(vars, idx.into_iter().map(|v| (Monomial::var(v), Rational::one())))
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order, leading term first.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Indices of variables that occur in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        let mut seen = std::collections::BTreeSet::new();
        for m in self.terms.keys() {
            for (v, _) in m.pairs() {
                seen.insert(v);
            }
        }
        seen.into_iter().collect()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VarTableMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            add_term(&mut out.terms, m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            add_term(&mut out.terms, m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                add_term(&mut out.terms, m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Polynomial { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Polynomial { vars: self.vars.clone(), terms: self.terms.iter().map(|(k, d)| (k.mul(m), d * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(&self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Evaluates at a map from variable names to numbers. The result is exact
    /// when every used value is exact, a double otherwise.
    pub fn evaluate(&self, point: &HashMap<String, Number>) -> Result<Number> {
        let used = self.support_vars();
        let mut values = Vec::with_capacity(self.vars.len());
        let mut exact = true;
        for v in 0..self.vars.len() {
            match point.get(self.vars.name(v)) {
                Some(x) => {
                    if matches!(x, Number::Float(_)) {
                        exact = false;
                    }
                    values.push(Some(x.clone()));
                }
                None => {
                    if used.binary_search(&v).is_ok() {
                        return Err(Error::MissingAssignment(self.vars.name(v).to_string()));
                    }
                    values.push(None);
                }
            }
        }
        if exact {
            let vals: Vec<Rational> = values
                .into_iter()
                .map(|x| match x {
                    Some(Number::Exact(q)) => q,
                    _ => Rational::zero(),
                })
                .collect();
            Ok(Number::Exact(self.eval_exact(&vals)))
        } else {
            let vals: Vec<f64> = values.into_iter().map(|x| x.map_or(0.0, |n| n.to_f64())).collect();
            Ok(Number::Float(self.eval_f64(&vals)))
        }
    }

    /// Exact evaluation at a positional point (one value per table variable).
    pub fn eval_exact(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.pairs() {
                t *= num_traits::pow(point[v].clone(), e as usize);
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = c.to_f64().unwrap_or(f64::NAN);
            for (v, e) in m.pairs() {
                t *= point[v].powi(e as i32);
            }
            acc += t;
        }
        acc
    }

    /// Composes with `images[v]` for each variable `v`; all images share `target`.
    pub fn substitute(&self, target: &VarTable, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.vars.len() {
            return Err(Error::Shape(format!("{} images for {} variables", images.len(), self.vars.len())));
        }
        if images.iter().any(|p| p.vars != *target) {
            return Err(Error::VarTableMismatch);
        }
        let mut cache: HashMap<(usize, u32), Polynomial> = HashMap::new();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (v, e) in m.pairs() {
                let pw = cache.entry((v, e)).or_insert_with(|| images[v].pow(e));
                t = &t * pw;
            }
            for (mm, cc) in t.terms {
                add_term(&mut out.terms, mm, cc);
            }
        }
        Ok(out)
    }

    /// Substitution by name; only variables that occur must be assigned.
    pub fn substitute_map(&self, target: &VarTable, assignment: &HashMap<String, Polynomial>) -> Result<Polynomial> {
        let used = self.support_vars();
        let mut images = Vec::with_capacity(self.vars.len());
        for v in 0..self.vars.len() {
            match assignment.get(self.vars.name(v)) {
                Some(p) => images.push(p.clone()),
                None if used.binary_search(&v).is_err() => images.push(Polynomial::zero(target)),
                None => return Err(Error::MissingAssignment(self.vars.name(v).to_string())),
            }
        }
        self.substitute(target, &images)
    }

    /// Fast path for substitutions where every variable maps to a monomial.
    pub fn substitute_monomials(&self, target: &VarTable, images: &[Monomial]) -> Polynomial {
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut img = Monomial::one();
            for (v, e) in m.pairs() {
                img = img.mul(&images[v].pow(e));
            }
            add_term(&mut out.terms, img, c.clone());
        }
        out
    }

    /// Exact division. `Ok(None)` when `q` does not divide `self`.
    pub fn divide_exact(&self, q: &Polynomial) -> Result<Option<Polynomial>> {
        self.check(q)?;
        let (lm_q, lc_q) = match q.leading_term() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(Error::DivisionByZero),
        };
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(&self.vars);
        while let Some((lm, lc)) = rem.leading_term() {
            let Some(m) = lm.div(&lm_q) else {
                return Ok(None);
            };
            let c = lc / &lc_q;
            let sub = q.mul_monomial(&m, &c);
            add_term(&mut quot.terms, m, c);
            for (mm, cc) in sub.terms {
                add_term(&mut rem.terms, mm, -cc);
            }
        }
        Ok(Some(quot))
    }

    /// Degree per block of the variable table.
    pub fn multidegree(&self) -> Result<Vec<u32>> {
        if !self.vars.has_blocks() {
            return Err(Error::NoBlocks);
        }
        let k = self.vars.num_blocks();
        let mut result: Option<Vec<u32>> = None;
        for m in self.terms.keys() {
            let mut d = vec![0u32; k];
            for (v, e) in m.pairs() {
                d[self.vars.block_of(v).expect("blocks present")] += e;
            }
            match &result {
                None => result = Some(d),
                Some(r) => {
                    if let Some(b) = (0..k).find(|&b| r[b] != d[b]) {
                        return Err(Error::NotHomogeneous(b));
                    }
                }
            }
        }
        result.ok_or(Error::ZeroPolynomial)
    }

    pub fn derivative(&self, v: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let nm = m.div(&Monomial::var(v)).expect("exponent positive");
            add_term(&mut out.terms, nm, c * rat(e as i64));
        }
        out
    }

    /// Replaces the listed variables by constants, keeping the table.
    pub fn specialize(&self, fixes: &[(usize, Rational)]) -> Polynomial {
        let mut out = Polynomial::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut c = c.clone();
            let mut rest = Vec::new();
            for (v, e) in m.pairs() {
                match fixes.iter().find(|f| f.0 == v) {
                    Some((_, val)) => c *= num_traits::pow(val.clone(), e as usize),
                    None => rest.push((v, e)),
                }
            }
            add_term(&mut out.terms, Monomial::from_pairs(rest), c);
        }
        out
    }

    /// Moves to another table by variable name; `map` renames, `None` keeps the name.
    pub fn rename(&self, target: &VarTable, map: impl Fn(&str) -> Option<String>) -> Result<Polynomial> {
        let mut idx = HashMap::new();
        for v in self.support_vars() {
            let old = self.vars.name(v);
            let new = map(old).unwrap_or_else(|| old.to_string());
            let j = target.index_of(&new).ok_or_else(|| Error::MissingAssignment(new.clone()))?;
            idx.insert(v, j);
        }
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let nm = Monomial::from_pairs(m.pairs().map(|(v, e)| (idx[&v], e)).collect());
            add_term(&mut out.terms, nm, c.clone());
        }
        Ok(out)
    }

    /// Content-one integer form with positive leading coefficient.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
        let mut factor = BigRational::new(den_lcm, num_gcd);
        if self.leading_term().expect("nonzero").1.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    pub fn is_proportional(&self, other: &Polynomial) -> bool {
        self.vars == other.vars && self.primitive().terms == other.primitive().terms
    }

    /// `c*v1^e1*v2^e2` terms joined by ` + `, leading term first.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms() {
            let mut s = rational_to_string(c);
            for (v, e) in m.pairs() {
                s.push('*');
                s.push_str(self.vars.name(v));
                if e > 1 {
                    s.push('^');
                    s.push_str(&e.to_string());
                }
            }
            parts.push(s);
        }
        parts.join(" + ")
    }

    /// Inverse of [`Polynomial::to_text`]; also accepts omitted unit coefficients
    /// and ` - ` separators.
    pub fn parse(vars: &VarTable, text: &str) -> Result<Polynomial> {
        let text = text.trim();
        if text == "0" {
            return Ok(Polynomial::zero(vars));
        }
        let normalized = text.replace(" - ", " + -");
        let mut out = Polynomial::zero(vars);
        for raw in normalized.split(" + ") {
            let term = raw.trim();
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in `{text}`")));
            }
            let mut coeff = Rational::one();
            let mut pairs = Vec::new();
            for (k, factor) in term.split('*').enumerate() {
                let factor = factor.trim();
                let (body, neg) = match factor.strip_prefix('-') {
                    Some(rest) if k == 0 && rest.starts_with(|c: char| c.is_ascii_alphabetic()) => (rest, true),
                    _ => (factor, false),
                };
                if neg {
                    coeff = -coeff;
                }
                if body.starts_with(|c: char| c.is_ascii_alphabetic()) {
                    let (name, e) = match body.split_once('^') {
                        Some((n, e)) => (n, e.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?),
                        None => (body, 1),
                    };
                    let v = vars.index_of(name).ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
                    pairs.push((v, e));
                } else {
                    coeff *= parse_rational(body)?;
                }
            }
            add_term(&mut out.terms, Monomial::from_pairs(pairs), coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    /// Panics on mismatched tables; use [`Polynomial::add`] for a checked sum.
    fn add(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::add(self, rhs).expect("variable tables differ")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::sub(self, rhs).expect("variable tables differ")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::mul(self, rhs).expect("variable tables differ")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

/// Evaluation input/output: exact rational or IEEE double.
#[derive(Clone, Debug, PartialEq)]
pub enum Number {
    Exact(Rational),
    Float(f64),
}

impl Number {
    pub fn to_f64(&self) -> f64 {
        match self {
            Number::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            Number::Float(x) => *x,
        }
    }
}

/// Row-major 2×2 matrix of polynomials over one table.
#[derive(Clone, Debug)]
pub struct Matrix2x2 {
    entries: [Polynomial; 4],
}

impl Matrix2x2 {
    pub fn new(a: Polynomial, b: Polynomial, c: Polynomial, d: Polynomial) -> Result<Self> {
        if a.vars != b.vars || a.vars != c.vars || a.vars != d.vars {
            return Err(Error::VarTableMismatch);
        }
        Ok(Matrix2x2 { entries: [a, b, c, d] })
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[2 * r + c]
    }

    pub fn swap_rows(&self) -> Matrix2x2 {
        let [a, b, c, d] = self.entries.clone();
        Matrix2x2 { entries: [c, d, a, b] }
    }
}

pub fn det2(m: &Matrix2x2) -> Polynomial {
    &(m.get(0, 0) * m.get(1, 1)) - &(m.get(0, 1) * m.get(1, 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> VarTable {
        VarTable::new(["x", "y"]).unwrap()
    }

    fn p(vars: &VarTable, s: &str) -> Polynomial {
        Polynomial::parse(vars, s).unwrap()
    }

    #[test]
    fn add_cancels_and_sums_exactly() {
        let v = xy();
        assert_eq!(p(&v, "x + y").add(&p(&v, "-1*x")).unwrap(), p(&v, "y"));
        assert_eq!(p(&v, "x + y").add(&Polynomial::zero(&v)).unwrap(), p(&v, "x + y"));
        assert_eq!(p(&v, "1/2*x").add(&p(&v, "1/3*x")).unwrap(), p(&v, "5/6*x"));
    }

    #[test]
    fn mul_examples() {
        let v = xy();
        assert_eq!(&p(&v, "x + y") * &p(&v, "x - y"), p(&v, "x^2 - y^2"));
        assert_eq!(&p(&v, "2*x") * &p(&v, "3/2*y"), p(&v, "3*x*y"));
        assert_eq!(&p(&v, "x + 7") * &Polynomial::one(&v), p(&v, "x + 7"));
    }

    #[test]
    fn mismatched_tables_are_rejected() {
        let a = Polynomial::var(&xy(), 0);
        let b = Polynomial::var(&VarTable::new(["u"]).unwrap(), 0);
        assert!(matches!(a.add(&b), Err(Error::VarTableMismatch)));
        assert!(matches!(a.mul(&b), Err(Error::VarTableMismatch)));
    }

    #[test]
    fn det2_examples() {
        let v = VarTable::new(["x", "y", "a", "b"]).unwrap();
        let one = Polynomial::one(&v);
        let zero = Polynomial::zero(&v);
        assert_eq!(det2(&Matrix2x2::new(one.clone(), zero.clone(), zero, one).unwrap()), Polynomial::one(&v));
        let (a, b) = (p(&v, "a"), p(&v, "b"));
        assert!(det2(&Matrix2x2::new(a.clone(), b.clone(), a, b).unwrap()).is_zero());
        let (x, y) = (p(&v, "x"), p(&v, "y"));
        assert_eq!(det2(&Matrix2x2::new(x.clone(), y.clone(), y, x).unwrap()), p(&v, "x^2 - y^2"));
    }

    #[test]
    fn evaluate_exact_float_and_missing() {
        let v = xy();
        let f = p(&v, "x^2 - y^2");
        let mut pt = HashMap::new();
        pt.insert("x".to_string(), Number::Exact(rat(3)));
        pt.insert("y".to_string(), Number::Exact(rat(2)));
        assert_eq!(f.evaluate(&pt).unwrap(), Number::Exact(rat(5)));
        pt.insert("y".to_string(), Number::Float(2.0));
        assert_eq!(f.evaluate(&pt).unwrap(), Number::Float(5.0));
        pt.remove("y");
        assert!(matches!(f.evaluate(&pt), Err(Error::MissingAssignment(_))));
        let g = p(&v, "x*y + 4");
        assert_eq!(g.eval_exact(&[rat(0), rat(0)]), rat(4));
    }

    #[test]
    fn segre_quadric_on_sample_point() {
        let v = VarTable::new(["z0", "z1", "z2", "z3"]).unwrap();
        let q = p(&v, "z0*z3 - z1*z2");
        let pt = [ratio(3, 72), ratio(3, 72), ratio(1, 72), ratio(1, 72)];
        assert!(q.eval_exact(&pt).is_zero());
    }

    #[test]
    fn substitute_examples() {
        let src = VarTable::new(["x"]).unwrap();
        let dst = VarTable::new(["u", "v"]).unwrap();
        let img = vec![p(&dst, "u*v")];
        assert_eq!(p(&src, "x^2").substitute(&dst, &img).unwrap(), p(&dst, "u^2*v^2"));
        let v = xy();
        let id = vec![Polynomial::var(&v, 0), Polynomial::var(&v, 1)];
        let f = p(&v, "3*x^2*y + -1/2*y + 1");
        assert_eq!(f.substitute(&v, &id).unwrap(), f);
    }

    #[test]
    fn segre_parametrization_kills_segre_quadric() {
        let pv = VarTable::new(["p11", "p12", "p21", "p22"]).unwrap();
        let sv = VarTable::new(["a1", "a2", "b1", "b2"]).unwrap();
        let q = p(&pv, "p11*p22 - p12*p21");
        let imgs: Vec<Monomial> = [(0, 2), (0, 3), (1, 2), (1, 3)]
            .iter()
            .map(|&(i, j)| Monomial::from_pairs(vec![(i, 1), (j, 1)]))
            .collect();
        assert!(q.substitute_monomials(&sv, &imgs).is_zero());
        let polys: Vec<Polynomial> = imgs.iter().map(|m| Polynomial::monomial(&sv, m.clone(), rat(1))).collect();
        assert!(q.substitute(&sv, &polys).unwrap().is_zero());
    }

    #[test]
    fn divide_exact_examples() {
        let v = xy();
        assert_eq!(p(&v, "x^2 - y^2").divide_exact(&p(&v, "x - y")).unwrap(), Some(p(&v, "x + y")));
        let f = p(&v, "2/3*x*y + 5");
        assert_eq!(f.divide_exact(&Polynomial::one(&v)).unwrap(), Some(f.clone()));
        assert_eq!(p(&v, "x").divide_exact(&p(&v, "y")).unwrap(), None);
        assert!(matches!(f.divide_exact(&Polynomial::zero(&v)), Err(Error::DivisionByZero)));
    }

    #[test]
    fn multidegree_examples() {
        let v = VarTable::with_blocks(["s1_1", "s1_2", "s2_1", "s2_2"], vec![0, 0, 1, 1]).unwrap();
        assert_eq!(p(&v, "s1_1*s2_2").multidegree().unwrap(), vec![1, 1]);
        assert!(matches!(p(&v, "s1_1*s2_2 + s1_1").multidegree(), Err(Error::NotHomogeneous(1))));
        assert!(matches!(p(&xy(), "x").multidegree(), Err(Error::NoBlocks)));
    }

    #[test]
    fn grlex_order() {
        let v = VarTable::new(["x", "y", "z"]).unwrap();
        let f = p(&v, "z + y^2 + x*z + x + 1");
        let order: Vec<String> = f.terms().map(|(m, _)| format!("{:?}", m.to_dense(3))).collect();
        assert_eq!(order, ["[1, 0, 1]", "[0, 2, 0]", "[1, 0, 0]", "[0, 0, 1]", "[0, 0, 0]"]);
    }

    #[test]
    fn text_round_trip() {
        let v = VarTable::new(["p11", "p12", "s12_21"]).unwrap();
        let f = p(&v, "-3/7*p11^2*s12_21 + 5*p12 + -1 + 1/2*p11*p12");
        let txt = f.to_text();
        assert_eq!(Polynomial::parse(&v, &txt).unwrap(), f);
        assert_eq!(txt, "-3/7*p11^2*s12_21 + 1/2*p11*p12 + 5*p12 + -1");
    }

    #[test]
    fn primitive_form() {
        let v = xy();
        let f = p(&v, "-2/3*x + 4/9*y");
        assert_eq!(f.primitive(), p(&v, "3*x - 2*y"));
        assert!(f.is_proportional(&p(&v, "-6*x + 4*y")));
    }

    #[test]
    fn decimal_parsing() {
        assert_eq!(parse_rational("-1.25").unwrap(), ratio(-5, 4));
        assert_eq!(parse_rational("3e2").unwrap(), rat(300));
        assert_eq!(parse_rational("7/14").unwrap(), ratio(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn derivative_and_specialize() {
        let v = xy();
        let f = p(&v, "x^3*y + 2*y");
        assert_eq!(f.derivative(0), p(&v, "3*x^2*y"));
        assert_eq!(f.specialize(&[(1, rat(2))]), p(&v, "2*x^3 + 4"));
    }
}
