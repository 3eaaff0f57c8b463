//! Normal-form games, expected payoffs and the Spohn matrices.
//!
//! Tensors are flattened with player 1 varying slowest; strategies are
//! 0-based in the API and 1-based in variable names and files.

use std::ops::{Add, Div, Mul, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::polyring::{det2, parse_rational, rat, rational_to_string, Matrix2x2, Polynomial, Rational, VarTable};

/// Number types that distributions and payoffs can be evaluated in.
pub trait Scalar:
    Clone + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self>
{
    fn from_rational(q: &Rational) -> Self;
    fn is_negative(&self) -> bool;
    fn is_zero_marginal(&self) -> bool;
    fn sums_to_one(&self) -> bool;
}

impl Scalar for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn is_zero_marginal(&self) -> bool {
        self.is_zero()
    }
    fn sums_to_one(&self) -> bool {
        self.is_one()
    }
}

impl Scalar for f64 {
    fn from_rational(q: &Rational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }
    fn is_negative(&self) -> bool {
        *self < 0.0
    }
    fn is_zero_marginal(&self) -> bool {
        self.abs() < 1e-300
    }
    fn sums_to_one(&self) -> bool {
        (self - 1.0).abs() <= 1e-9
    }
}

/// Joint distribution over pure-strategy profiles, same flattening as [`Game`].
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution<T> {
    probs: Vec<T>,
}

impl<T: Scalar> Distribution<T> {
    pub fn new(probs: Vec<T>) -> Result<Self> {
        if probs.iter().any(Scalar::is_negative) {
            return Err(Error::Invalid("negative probability".into()));
        }
        let total = probs.iter().cloned().fold(T::zero(), |a, b| a + b);
        if !total.sums_to_one() {
            return Err(Error::Invalid("probabilities do not sum to one".into()));
        }
        Ok(Distribution { probs })
    }

    /// Scales a non-negative vector with positive sum onto the simplex.
    pub fn normalized(weights: Vec<T>) -> Result<Self> {
        let total = weights.iter().cloned().fold(T::zero(), |a, b| a + b);
        if total.is_zero_marginal() {
            return Err(Error::Invalid("weights sum to zero".into()));
        }
        Self::new(weights.into_iter().map(|w| w / total.clone()).collect())
    }

}

impl<T> Distribution<T> {
    pub fn probs(&self) -> &[T] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

impl Distribution<f64> {
    pub fn is_totally_mixed(&self) -> bool {
        self.probs.iter().all(|&p| p > 0.0)
    }
}

impl Distribution<Rational> {
    pub fn is_totally_mixed(&self) -> bool {
        self.probs.iter().all(Signed::is_positive)
    }

    pub fn to_f64(&self) -> Distribution<f64> {
        Distribution { probs: self.probs.iter().map(<f64 as Scalar>::from_rational).collect() }
    }
}

/// An n-player game with one dense rational payoff tensor per player.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Game {
    choices: Vec<usize>,
    payoffs: Vec<Vec<Rational>>,
}

impl Game {
    pub fn new(choices: Vec<usize>, payoffs: Vec<Vec<Rational>>) -> Result<Self> {
        if choices.len() < 2 {
            return Err(Error::InvalidGame("a game needs at least two players".into()));
        }
        if let Some(i) = choices.iter().position(|&d| d < 2) {
            return Err(Error::InvalidGame(format!("player {} has fewer than two strategies", i + 1)));
        }
        if payoffs.len() != choices.len() {
            return Err(Error::InvalidGame(format!("{} payoff tensors for {} players", payoffs.len(), choices.len())));
        }
        let size: usize = choices.iter().product();
        if let Some(i) = payoffs.iter().position(|t| t.len() != size) {
            return Err(Error::InvalidGame(format!("tensor of player {} has {} entries, expected {size}", i + 1, payoffs[i].len())));
        }
        Ok(Game { choices, payoffs })
    }

    pub fn zero(choices: Vec<usize>) -> Result<Self> {
        let size = choices.iter().product();
        let n = choices.len();
        Self::new(choices, vec![vec![Rational::zero(); size]; n])
    }

    /// Builds every tensor from `f(player, profile)`.
    pub fn from_fn(choices: Vec<usize>, mut f: impl FnMut(usize, &[usize]) -> Rational) -> Result<Self> {
        let shape = Shape::new(&choices);
        let payoffs = (0..choices.len())
            .map(|i| (0..shape.size()).map(|k| f(i, &shape.profile(k))).collect())
            .collect();
        Self::new(choices, payoffs)
    }

    /// Integer payoffs uniform on [-10, 10].
    pub fn random_binary<R: Rng>(n: usize, rng: &mut R) -> Self {
        Self::random_binary_in(n, 10, rng)
    }

    /// Integer payoffs uniform on [-bound, bound]. Small bounds make payoff
    /// coincidences (non-generic games) common for two or three players.
    pub fn random_binary_in<R: Rng>(n: usize, bound: i64, rng: &mut R) -> Self {
        Self::from_fn(vec![2; n], |_, _| rat(rng.random_range(-bound..=bound))).expect("valid shape")
    }

    pub fn players(&self) -> usize {
        self.choices.len()
    }

    pub fn choices(&self) -> &[usize] {
        &self.choices
    }

    pub fn shape(&self) -> Shape {
        Shape::new(&self.choices)
    }

    pub fn is_binary(&self) -> bool {
        self.choices.iter().all(|&d| d == 2)
    }

    pub fn require_binary(&self) -> Result<()> {
        match self.choices.iter().position(|&d| d != 2) {
            Some(i) => Err(Error::NotBinary(i + 1, self.choices[i])),
            None => Ok(()),
        }
    }

    pub fn tensor(&self, i: usize) -> &[Rational] {
        &self.payoffs[i]
    }

    pub fn payoff(&self, i: usize, profile: &[usize]) -> &Rational {
        &self.payoffs[i][self.shape().index(profile)]
    }

    fn check_len<T>(&self, p: &Distribution<T>) -> Result<()> {
        let size = self.shape().size();
        if p.len() != size {
            return Err(Error::Shape(format!("distribution has {} entries, game has {size} profiles", p.len())));
        }
        Ok(())
    }

    fn check_player(&self, i: usize) -> Result<()> {
        if i >= self.players() {
            return Err(Error::Shape(format!("player {} out of range", i + 1)));
        }
        Ok(())
    }

    pub fn expected_payoff<T: Scalar>(&self, p: &Distribution<T>, i: usize) -> Result<T> {
        self.check_len(p)?;
        self.check_player(i)?;
        Ok(self.payoffs[i]
            .iter()
            .zip(p.probs())
            .fold(T::zero(), |acc, (x, q)| acc + T::from_rational(x) * q.clone()))
    }

    /// Expected payoff of player `i` conditioned on playing strategy `k`.
    pub fn conditional_expected_payoff<T: Scalar>(&self, p: &Distribution<T>, i: usize, k: usize) -> Result<T> {
        self.check_len(p)?;
        self.check_player(i)?;
        if k >= self.choices[i] {
            return Err(Error::Shape(format!("strategy {} out of range for player {}", k + 1, i + 1)));
        }
        let shape = self.shape();
        let mut marginal = T::zero();
        let mut weighted = T::zero();
        for (idx, q) in p.probs().iter().enumerate() {
            if shape.strategy_of(idx, i) == k {
                marginal = marginal + q.clone();
                weighted = weighted + T::from_rational(&self.payoffs[i][idx]) * q.clone();
            }
        }
        if marginal.is_zero_marginal() {
            return Err(Error::BoundaryDistribution { player: i + 1, strategy: k + 1 });
        }
        Ok(weighted / marginal)
    }

    pub fn payoff_map<T: Scalar>(&self, p: &Distribution<T>) -> Result<Vec<T>> {
        (0..self.players()).map(|i| self.expected_payoff(p, i)).collect()
    }

    /// Variable table `p<j1>…<jn>` of the probability coordinates.
    pub fn p_vars(&self) -> VarTable {
        self.shape().p_vars()
    }

    /// Rows `k`: (marginal p_{+..k..+}, payoff-weighted sum).
    pub fn spohn_matrix(&self, vars: &VarTable, i: usize) -> Result<Vec<[Polynomial; 2]>> {
        self.check_player(i)?;
        let shape = self.shape();
        if vars.len() != shape.size() {
            return Err(Error::Shape(format!("variable table has {} entries, expected {}", vars.len(), shape.size())));
        }
        let mut rows = Vec::with_capacity(self.choices[i]);
        for k in 0..self.choices[i] {
            let mut marg = Vec::new();
            let mut weighted = Vec::new();
            for idx in 0..shape.size() {
                if shape.strategy_of(idx, i) == k {
                    marg.push((crate::polyring::Monomial::var(idx), Rational::one()));
                    weighted.push((crate::polyring::Monomial::var(idx), self.payoffs[i][idx].clone()));
                }
            }
            rows.push([Polynomial::from_terms(vars, marg), Polynomial::from_terms(vars, weighted)]);
        }
        Ok(rows)
    }

    /// All 2×2 minors of every M_i, player by player.
    pub fn spohn_minors(&self) -> Vec<Polynomial> {
        let vars = self.p_vars();
        let mut out = Vec::new();
        for i in 0..self.players() {
            let rows = self.spohn_matrix(&vars, i).expect("shape matches");
            for a in 0..rows.len() {
                for b in a + 1..rows.len() {
                    let m = Matrix2x2::new(rows[a][0].clone(), rows[a][1].clone(), rows[b][0].clone(), rows[b][1].clone())
                        .expect("shared table");
                    out.push(det2(&m));
                }
            }
        }
        out
    }

    /// Game with players reordered: new player `t` is old player `perm[t]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Game> {
        let n = self.players();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&q| q >= n || std::mem::replace(&mut seen[q], true)) {
            return Err(Error::Invalid("not a permutation of the players".into()));
        }
        let choices: Vec<usize> = perm.iter().map(|&q| self.choices[q]).collect();
        let old = self.shape();
        Game::from_fn(choices, |t, prof| {
            let mut old_prof = vec![0; n];
            for (s, &q) in perm.iter().enumerate() {
                old_prof[q] = prof[s];
            }
            self.payoffs[perm[t]][old.index(&old_prof)].clone()
        })
    }

    pub fn from_json(v: &Value) -> Result<Game> {
        let obj = v.as_object().ok_or_else(|| Error::InvalidGame("expected a JSON object".into()))?;
        let players = obj
            .get("players")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::InvalidGame("missing integer field `players`".into()))? as usize;
        let choices: Vec<usize> = obj
            .get("choices")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidGame("missing array field `choices`".into()))?
            .iter()
            .enumerate()
            .map(|(k, d)| d.as_u64().map(|d| d as usize).ok_or_else(|| Error::InvalidGame(format!("choices[{k}] is not an integer"))))
            .collect::<Result<_>>()?;
        if choices.len() != players {
            return Err(Error::InvalidGame(format!("`players` is {players} but `choices` has {} entries", choices.len())));
        }
        let tensors = obj
            .get("payoffs")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidGame("missing array field `payoffs`".into()))?;
        let mut payoffs = Vec::with_capacity(tensors.len());
        for (i, t) in tensors.iter().enumerate() {
            let arr = t.as_array().ok_or_else(|| Error::InvalidGame(format!("payoffs[{i}] is not an array")))?;
            let mut entries = Vec::with_capacity(arr.len());
            for (k, x) in arr.iter().enumerate() {
                let text = match x {
                    Value::String(s) => s.clone(),
                    Value::Number(n) => n.to_string(),
                    _ => return Err(Error::InvalidGame(format!("payoffs[{i}][{k}] is not a number"))),
                };
                entries.push(parse_rational(&text).map_err(|e| Error::InvalidGame(format!("payoffs[{i}][{k}]: {e}")))?);
            }
            payoffs.push(entries);
        }
        Game::new(choices, payoffs)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "players": self.players(),
            "choices": self.choices,
            "payoffs": self.payoffs.iter().map(|t| t.iter().map(rational_to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }

    /// Named built-in games.
    pub fn builtin(name: &str) -> Option<Game> {
        match name {
            "example-4player" => Some(example_game(EXAMPLE_4PLAYER)),
            "example-4player-printed" => Some(example_game(EXAMPLE_4PLAYER_PRINTED)),
            _ => None,
        }
    }

    pub fn builtin_names() -> &'static [&'static str] {
        &["example-4player", "example-4player-printed"]
    }
}

/// `(player, profile, value)` with 1-based labels.
type Entry = (usize, &'static str, i64);

/// The 4-player worked example. Differs from the printed listing in four
/// entries (see `EXAMPLE_4PLAYER_PRINTED`): X1_1122 = 6, X1_1222 = 4 and
/// X3_2211 = 6, X3_2212 = 4, with X2_1222 and X4_2212 dropped.
const EXAMPLE_4PLAYER: &[Entry] = &[
    (1, "1111", 1), (1, "1122", 6), (1, "1211", 2), (1, "1222", 4), (1, "2111", 3), (1, "2122", 2), (1, "2211", 4),
    (2, "1112", 1), (2, "1121", -10), (2, "1212", 3), (2, "1221", -14), (2, "2112", 2), (2, "2121", -12), (2, "2212", 4), (2, "2221", -16),
    (3, "1111", 1), (3, "1112", 2), (3, "1121", 3), (3, "1122", 4), (3, "2211", 6), (3, "2212", 4), (3, "2221", 2),
    (4, "1211", 1), (4, "1212", 3), (4, "1221", 2), (4, "1222", 4), (4, "2111", -10), (4, "2112", -14), (4, "2121", -12), (4, "2122", -16),
];

/// The nonzero entries exactly as listed in the original write-up of the example.
const EXAMPLE_4PLAYER_PRINTED: &[Entry] = &[
    (1, "1111", 1), (2, "1112", 1), (3, "1111", 1), (4, "1211", 1),
    (2, "1121", -10), (4, "2111", -10), (2, "2221", -16), (4, "2122", -16),
    (1, "2111", 3), (2, "1212", 3), (3, "1121", 3), (4, "1212", 3),
    (2, "1221", -14), (4, "2112", -14), (2, "2121", -12), (4, "2121", -12),
    (1, "1211", 2), (2, "2112", 2), (3, "1112", 2), (4, "1221", 2), (1, "2122", 2), (3, "2221", 2),
    (1, "2211", 4), (2, "2212", 4), (3, "1122", 4), (4, "1222", 4), (2, "1222", 4), (4, "2212", 4),
];

fn example_game(entries: &[Entry]) -> Game {
    let mut g = Game::zero(vec![2; 4]).expect("valid shape");
    let shape = g.shape();
    for &(i, prof, v) in entries {
        let profile: Vec<usize> = prof.bytes().map(|b| (b - b'1') as usize).collect();
        g.payoffs[i - 1][shape.index(&profile)] = rat(v);
    }
    g
}

/// Index arithmetic for the flattened tensors.
#[derive(Clone, Debug)]
pub struct Shape {
    choices: Vec<usize>,
    strides: Vec<usize>,
    size: usize,
}

impl Shape {
    pub fn new(choices: &[usize]) -> Self {
        let mut strides = vec![1; choices.len()];
        for i in (0..choices.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * choices[i + 1];
        }
        Shape { choices: choices.to_vec(), strides, size: choices.iter().product() }
    }

    pub fn binary(n: usize) -> Self {
        Self::new(&vec![2; n])
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn players(&self) -> usize {
        self.choices.len()
    }

    pub fn index(&self, profile: &[usize]) -> usize {
        profile.iter().zip(&self.strides).map(|(j, s)| j * s).sum()
    }

    pub fn profile(&self, idx: usize) -> Vec<usize> {
        (0..self.choices.len()).map(|i| self.strategy_of(idx, i)).collect()
    }

    pub fn strategy_of(&self, idx: usize, i: usize) -> usize {
        (idx / self.strides[i]) % self.choices[i]
    }

    /// `p1212`-style name; a `_` separates labels once some player has ≥ 10 strategies.
    pub fn p_name(&self, idx: usize) -> String {
        let wide = self.choices.iter().any(|&d| d >= 10);
        let labels: Vec<String> = self.profile(idx).iter().map(|j| (j + 1).to_string()).collect();
        format!("p{}", labels.join(if wide { "_" } else { "" }))
    }

    pub fn p_vars(&self) -> VarTable {
        VarTable::new((0..self.size).map(|k| self.p_name(k))).expect("names are unique")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::ratio;

    fn uniform(n: usize) -> Distribution<Rational> {
        let size = 1usize << n;
        Distribution::new(vec![ratio(1, size as i64); size]).unwrap()
    }

    #[test]
    fn zero_and_constant_payoffs() {
        let g = Game::zero(vec![2, 2, 2]).unwrap();
        assert!(g.expected_payoff(&uniform(3), 0).unwrap().is_zero());
        assert!(g.payoff_map(&uniform(3)).unwrap().iter().all(Zero::is_zero));
        let c = Game::from_fn(vec![2, 2], |_, _| ratio(7, 3)).unwrap();
        let p = Distribution::new(vec![ratio(1, 10), ratio(2, 10), ratio(3, 10), ratio(4, 10)]).unwrap();
        assert_eq!(c.expected_payoff(&p, 1).unwrap(), ratio(7, 3));
        assert_eq!(c.conditional_expected_payoff(&p, 0, 0).unwrap(), ratio(7, 3));
        assert_eq!(c.conditional_expected_payoff(&p, 0, 1).unwrap(), ratio(7, 3));
    }

    #[test]
    fn boundary_distribution_is_refused() {
        let g = Game::zero(vec![2, 2]).unwrap();
        let p = Distribution::new(vec![ratio(1, 2), ratio(1, 2), rat(0), rat(0)]).unwrap();
        assert!(matches!(g.conditional_expected_payoff(&p, 0, 1), Err(Error::BoundaryDistribution { player: 1, strategy: 2 })));
    }

    #[test]
    fn shape_mismatch() {
        let g = Game::zero(vec![2, 2]).unwrap();
        assert!(matches!(g.expected_payoff(&uniform(3), 0), Err(Error::Shape(_))));
    }

    #[test]
    fn flattening_is_player_one_slowest() {
        let s = Shape::binary(3);
        assert_eq!(s.profile(1), vec![0, 0, 1]);
        assert_eq!(s.profile(4), vec![1, 0, 0]);
        assert_eq!(s.p_name(6), "p221");
    }

    #[test]
    fn spohn_matrix_structure() {
        let g = Game::zero(vec![2, 2]).unwrap();
        let v = g.p_vars();
        let m = g.spohn_matrix(&v, 0).unwrap();
        assert!(m[0][1].is_zero() && m[1][1].is_zero());
        let g3 = Game::random_binary(3, &mut rand_chacha::ChaCha8Rng::seed_from_u64(1));
        let v3 = g3.p_vars();
        for i in 0..3 {
            for row in g3.spohn_matrix(&v3, i).unwrap() {
                assert_eq!(row[0].num_terms(), 4);
            }
        }
        assert_eq!(g3.spohn_minors().len(), 3);
        assert!(Game::zero(vec![2, 2, 2]).unwrap().spohn_minors().iter().all(Polynomial::is_zero));
    }

    #[test]
    fn nonbinary_minor_count() {
        let g = Game::zero(vec![3, 2, 4]).unwrap();
        assert_eq!(g.spohn_minors().len(), 3 + 1 + 6);
    }

    #[test]
    fn json_round_trip_with_decimals() {
        let v: Value = serde_json::from_str(r#"{"players":2,"choices":[2,2],"payoffs":[[1,"1/3",0.1,-2],[0,0,0,"5"]]}"#).unwrap();
        let g = Game::from_json(&v).unwrap();
        assert_eq!(g.tensor(0)[2], ratio(1, 10));
        assert_eq!(Game::from_json(&g.to_json()).unwrap(), g);
        let bad: Value = serde_json::from_str(r#"{"players":2,"choices":[2,2],"payoffs":[[1,2,3],[0,0,0,0]]}"#).unwrap();
        assert!(Game::from_json(&bad).is_err());
    }

    #[test]
    fn builtin_example_counts() {
        let g = Game::builtin("example-4player").unwrap();
        let nz: Vec<usize> = (0..4).map(|i| g.tensor(i).iter().filter(|x| !x.is_zero()).count()).collect();
        assert_eq!(nz, vec![7, 8, 7, 8]);
        let p = Game::builtin("example-4player-printed").unwrap();
        let nz: Vec<usize> = (0..4).map(|i| p.tensor(i).iter().filter(|x| !x.is_zero()).count()).collect();
        assert_eq!(nz, vec![5, 9, 5, 9]);
    }

    use rand::SeedableRng;
}
