//! Universality lifts: append clique-paired players to a base game so that the
//! Nash CI set of the lifted game is the base solution set times affine space.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::cimodel::{param_map, sigma_name, ParamMap};
use crate::error::{Error, Result};
use crate::game::{Game, Shape};
use crate::graph::{Partition, VertexSet};
use crate::polyring::{rat, Polynomial, Rational};
use crate::spohnci::{nash_ci_system, solve_payoff_preimage};

/// Outcome of recomputing the Nash CI system of a lifted game.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    /// The first equations equal the base system under the renaming.
    pub base_equations_match: bool,
    /// The appended players' equations equal the target forms exactly.
    pub targets_match: bool,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.base_equations_match && self.targets_match
    }
}

#[derive(Clone, Debug)]
pub struct LiftResult {
    pub game: Game,
    pub partition: Partition,
    /// Two forms per appended clique, player order.
    pub targets: Vec<Polynomial>,
    pub report: VerificationReport,
}

impl LiftResult {
    pub fn to_json(&self) -> Value {
        json!({
            "game": self.game.to_json(),
            "partition": self.partition.sizes(),
            "targets": self.targets.iter().map(Polynomial::to_text).collect::<Vec<_>>(),
            "verification": {
                "base_equations_match": self.report.base_equations_match,
                "targets_match": self.report.targets_match,
            },
        })
    }
}

fn block_index(part: &Partition, set: VertexSet) -> usize {
    part.blocks().iter().position(|b| *b == set).expect("block exists")
}

/// σ_{22}(σ_{11} + σ_{12}) for position 1 and σ_{22}(σ_{11} + σ_{21}) for position 2,
/// times σ_{2…2} of every other block.
fn pair_targets(pm: &ParamMap, pair: VertexSet) -> Vec<Polynomial> {
    let torus = pm.torus();
    let c = pm.cliques().iter().position(|k| *k == pair).expect("pair is a clique");
    let var = |local: &[usize]| Polynomial::var(torus, pm.sigma(c, local));
    let mut others = Polynomial::one(torus);
    for (d, &v) in pm.chart_vars().iter().enumerate() {
        if d != c {
            others = &others * &Polynomial::var(torus, v);
        }
    }
    let s22 = var(&[1, 1]);
    let first = &(&s22 * &(&var(&[0, 0]) + &var(&[0, 1]))) * &others;
    let second = &(&s22 * &(&var(&[0, 0]) + &var(&[1, 0]))) * &others;
    vec![first, second]
}

fn appended_tensors(part: &Partition, pm: &ParamMap, pairs: &[VertexSet]) -> Result<(Vec<Vec<Rational>>, Vec<Polynomial>)> {
    let mut tensors = Vec::new();
    let mut targets = Vec::new();
    for &pair in pairs {
        let b = block_index(part, pair);
        for (pos, target) in pair_targets(pm, pair).into_iter().enumerate() {
            let x = solve_payoff_preimage(part, b, pos, &target)
                .map_err(|e| Error::Internal(format!("target form has no payoff preimage: {e}")))?;
            tensors.push(x);
            targets.push(target);
        }
    }
    Ok((tensors, targets))
}

/// Compares the lifted system against the base system and the targets.
fn verify(
    lifted: &Game,
    part: &Partition,
    base: &Game,
    kept: usize,
    targets: &[Polynomial],
    unit: &[usize],
    rename: impl Fn(&str) -> Option<String> + Copy,
) -> Result<VerificationReport> {
    let sys = nash_ci_system(part, lifted)?;
    let ones: Vec<(usize, Rational)> = unit.iter().map(|&v| (v, rat(1))).collect();
    let base_part = Partition::from_sizes(&vec![1; base.players()])?;
    let base_sys = nash_ci_system(&base_part, base)?;
    let torus = sys.torus();
    let mut base_ok = true;
    for i in 0..kept {
        let expect = base_sys.polys()[i].rename(torus, &rename)?.primitive();
        let got = sys.polys()[i].specialize(&ones).primitive();
        base_ok &= got == expect && got.support_vars().iter().all(|v| !unit.contains(v));
    }
    let targets_ok = targets.iter().enumerate().all(|(t, target)| sys.polys()[kept + t] == target.primitive());
    Ok(VerificationReport { base_equations_match: base_ok, targets_match: targets_ok })
}

fn finish(game: Game, partition: Partition, targets: Vec<Polynomial>, report: VerificationReport) -> Result<LiftResult> {
    if !report.passed() {
        return Err(Error::Internal(format!("lift verification failed: {report:?}")));
    }
    Ok(LiftResult { game, partition, targets, report })
}

/// Appends `l` pairs to an n-player binary game. Base payoffs are copied onto the
/// profiles where every appended player plays strategy 2 and are zero elsewhere.
/// On the chart σ_{22} = 1 of each pair the first n equations are the base ones.
pub fn lift_game(base: &Game, l: usize) -> Result<LiftResult> {
    base.require_binary()?;
    let n = base.players();
    let total = n + 2 * l;
    let mut sizes = vec![1; n];
    sizes.extend(std::iter::repeat_n(2, l));
    let part = Partition::from_sizes(&sizes)?;
    let pm = param_map(&part.graph());
    let shape = Shape::binary(total);
    let base_shape = base.shape();

    let mut tensors: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..shape.size())
                .map(|k| {
                    let prof = shape.profile(k);
                    if prof[n..].iter().all(|&j| j == 1) {
                        base.tensor(i)[base_shape.index(&prof[..n])].clone()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let pairs: Vec<VertexSet> = (0..l).map(|t| VertexSet::from_vertices([n + 2 * t, n + 2 * t + 1])).collect();
    let (extra, targets) = appended_tensors(&part, &pm, &pairs)?;
    tensors.extend(extra);
    let game = Game::new(vec![2; total], tensors)?;
    let unit: Vec<usize> = pm.chart_vars()[n..].to_vec();
    let report = verify(&game, &part, base, n, &targets, &unit, |_| None)?;
    finish(game, part, targets, report)
}

/// Replaces the last `l` players of a base game on δ+n players by `l` pairs.
///
/// `n` and `m` are the variable and equation counts of the realized set: the last
/// n − m payoff tables of `base` must vanish and n − m ≥ l. Base player
/// δ+n−l+t playing `a` corresponds to pair t playing (a, a).
pub fn embed_variety(base: &Game, n: usize, m: usize, l: usize) -> Result<LiftResult> {
    base.require_binary()?;
    let total_base = base.players();
    if n > total_base || m > n {
        return Err(Error::Invalid(format!("need m ≤ n ≤ {total_base}, got n = {n}, m = {m}")));
    }
    if n - m < l {
        return Err(Error::Invalid(format!("hypothesis m ≤ n − l violated: n = {n}, m = {m}, l = {l}")));
    }
    if let Some(i) = (total_base - (n - m)..total_base).find(|&i| base.tensor(i).iter().any(|x| !x.is_zero())) {
        return Err(Error::Invalid(format!("payoff table of player {} must vanish", i + 1)));
    }
    let kept = total_base - l;
    let total = kept + 2 * l;
    let mut sizes = vec![1; kept];
    sizes.extend(std::iter::repeat_n(2, l));
    let part = Partition::from_sizes(&sizes)?;
    let pm = param_map(&part.graph());
    let shape = Shape::binary(total);
    let base_shape = base.shape();

    let mut tensors: Vec<Vec<Rational>> = (0..kept)
        .map(|i| {
            (0..shape.size())
                .map(|k| {
                    let prof = shape.profile(k);
                    let diagonal = (0..l).all(|t| prof[kept + 2 * t] == prof[kept + 2 * t + 1]);
                    if !diagonal {
                        return Rational::zero();
                    }
                    let mut base_prof = prof[..kept].to_vec();
                    base_prof.extend((0..l).map(|t| prof[kept + 2 * t]));
                    base.tensor(i)[base_shape.index(&base_prof)].clone()
                })
                .collect()
        })
        .collect();
    let pairs: Vec<VertexSet> = (0..l).map(|t| VertexSet::from_vertices([kept + 2 * t, kept + 2 * t + 1])).collect();
    let (extra, targets) = appended_tensors(&part, &pm, &pairs)?;
    tensors.extend(extra);
    let game = Game::new(vec![2; total], tensors)?;

    let renames: Vec<(String, String)> = (0..l)
        .flat_map(|t| {
            let (old, pair) = (VertexSet::singleton(kept + t), pairs[t]);
            (0..2).map(move |a| (sigma_name(old, &[a]), sigma_name(pair, &[a, a])))
        })
        .collect();
    let report = verify(&game, &part, base, kept, &targets, &[], |name| {
        renames.iter().find(|(o, _)| o == name).map(|(_, nw)| nw.clone())
    })?;
    finish(game, part, targets, report)
}

/// Integer game with the given nonzero entries; handy for building bases.
pub fn sparse_game(players: usize, entries: &[(usize, &[usize], i64)]) -> Result<Game> {
    let shape = Shape::binary(players);
    let mut tensors = vec![vec![Rational::zero(); shape.size()]; players];
    for &(i, prof, x) in entries {
        let prof: Vec<usize> = prof.iter().map(|j| j - 1).collect();
        tensors[i - 1][shape.index(&prof)] = rat(x);
    }
    Game::new(vec![2; players], tensors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn lift_by_zero_is_identity() {
        let base = Game::random_binary(3, &mut ChaCha8Rng::seed_from_u64(4));
        let r = lift_game(&base, 0).unwrap();
        assert_eq!(r.game, base);
        assert!(r.targets.is_empty());
    }

    #[test]
    fn lift_by_one_and_two() {
        let base = Game::random_binary(2, &mut ChaCha8Rng::seed_from_u64(5));
        for l in 1..=2 {
            let r = lift_game(&base, l).unwrap();
            assert_eq!(r.game.players(), 2 + 2 * l);
            assert_eq!(r.targets.len(), 2 * l);
            assert!(r.report.passed());
        }
    }

    #[test]
    fn embed_checks_the_hypothesis() {
        let base = sparse_game(2, &[(1, &[1, 1], 3), (1, &[2, 2], -1)]).unwrap();
        assert!(embed_variety(&base, 2, 2, 1).is_err());
        let r = embed_variety(&base, 2, 1, 1).unwrap();
        assert_eq!(r.game.players(), 3);
        assert_eq!(r.partition.sizes(), vec![1, 2]);
        let same = embed_variety(&base, 2, 1, 0).unwrap();
        assert_eq!(same.game, base);
        let nonzero = sparse_game(2, &[(2, &[1, 1], 1)]).unwrap();
        assert!(embed_variety(&nonzero, 2, 1, 1).is_err());
    }

    fn probe(part: &Partition, game: &Game) -> i64 {
        let sys = nash_ci_system(part, game).unwrap();
        crate::numeric::chart_dimension_probe(sys.param(), sys.polys(), &crate::numeric::SolveConfig::new(11)).unwrap().dimension
    }

    #[test]
    fn lifting_adds_affine_directions() {
        let base = Game::random_binary(3, &mut ChaCha8Rng::seed_from_u64(9));
        let d0 = probe(&Partition::from_sizes(&[1, 1, 1]).unwrap(), &base);
        assert_eq!(d0, 0);
        for l in 1..=2 {
            let r = lift_game(&base, l).unwrap();
            assert_eq!(probe(&r.partition, &r.game), d0 + l as i64);
        }
    }

    #[test]
    fn embedded_curve_keeps_its_dimension() {
        let base = sparse_game(2, &[(1, &[1, 1], 2), (1, &[1, 2], -1), (1, &[2, 1], 5), (1, &[2, 2], 1)]).unwrap();
        let d0 = probe(&Partition::from_sizes(&[1, 1]).unwrap(), &base);
        let r = embed_variety(&base, 2, 1, 1).unwrap();
        assert_eq!(d0, 1);
        assert_eq!(probe(&r.partition, &r.game), 1);
    }
}
